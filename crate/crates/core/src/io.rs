//! JSON formats. Rationals are strings `"p/q"` or `"p"`; polynomials are term lists.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::detrep::{AdjugateMatrix, BasisChange, PolyMat, SymLdr};
use crate::error::{Error, Result};
use crate::exactalg::{fmt_rat, parse_rat, Poly, Rat};
use crate::plane::RatPoint;
use crate::polycon::Polycon;

pub const COUNTEREXAMPLE_JSON: &str = include_str!("../data/counterexample.json");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    Affine,
    #[default]
    Projective,
}

impl std::str::FromStr for Chart {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "affine" => Ok(Chart::Affine),
            "projective" => Ok(Chart::Projective),
            _ => Err(Error::parse("chart", format!("unknown chart {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub coords: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyconJson {
    #[serde(default)]
    pub chart: Chart,
    pub components: Vec<PolyJson>,
    pub vertices: Vec<PointJson>,
}

fn rat_at(s: &str, loc: &str) -> Result<Rat> {
    parse_rat(s).map_err(|e| Error::parse(loc, e.to_string()))
}

/// Reads a form. Affine term lists are homogenized to `degree` (or their total degree).
pub fn poly_from_json(j: &PolyJson, chart: Chart, loc: &str) -> Result<Poly> {
    let nvars = if chart == Chart::Affine { 2 } else { 3 };
    let mut terms = vec![];
    for (k, t) in j.terms.iter().enumerate() {
        let here = format!("{loc}.terms[{k}]");
        if t.exponents.len() != nvars {
            return Err(Error::parse(&here, format!("expected {nvars} exponents, found {}", t.exponents.len())));
        }
        let mut e = [0u32; 3];
        e[..nvars].copy_from_slice(&t.exponents);
        terms.push((e, rat_at(&t.coeff, &format!("{here}.coeff"))?));
    }
    let p = Poly::from_terms(terms);
    let p = match chart {
        Chart::Affine => {
            let d = j.degree.unwrap_or(p.degree());
            if p.degree() > d {
                return Err(Error::parse(loc, format!("terms exceed the declared degree {d}")));
            }
            p.homogenize(d)
        }
        Chart::Projective => {
            if !p.is_homogeneous() {
                return Err(Error::parse(loc, "projective form is not homogeneous"));
            }
            if let Some(d) = j.degree {
                if !p.is_zero() && d != p.degree() {
                    return Err(Error::parse(loc, format!("declared degree {d} but terms have degree {}", p.degree())));
                }
            }
            p
        }
    };
    Ok(p)
}

pub fn poly_to_json(p: &Poly, chart: Chart) -> PolyJson {
    let mut ts: Vec<_> = p.terms().collect();
    ts.sort_by_key(|(e, _)| std::cmp::Reverse((e.iter().sum::<u32>(), **e)));
    let terms = ts
        .into_iter()
        .map(|(e, c)| TermJson {
            exponents: if chart == Chart::Affine { e[..2].to_vec() } else { e.to_vec() },
            coeff: fmt_rat(c),
        })
        .collect();
    PolyJson { degree: Some(p.degree()), terms }
}

pub fn point_from_json(j: &PointJson, chart: Chart, loc: &str) -> Result<RatPoint> {
    let c: Vec<Rat> = j
        .coords
        .iter()
        .enumerate()
        .map(|(k, s)| rat_at(s, &format!("{loc}.coords[{k}]")))
        .collect::<Result<_>>()?;
    match (chart, c.len()) {
        (Chart::Affine, 2) => Ok(RatPoint::affine(c[0].clone(), c[1].clone())),
        (Chart::Projective, 3) => RatPoint::new([c[0].clone(), c[1].clone(), c[2].clone()])
            .map_err(|e| Error::parse(loc, e.to_string())),
        (_, n) => Err(Error::parse(loc, format!("wrong number of coordinates: {n}"))),
    }
}

pub fn point_to_json(p: &RatPoint, chart: Chart) -> PointJson {
    let coords = match (chart, p.xy()) {
        (Chart::Affine, Some((x, y))) => vec![fmt_rat(&x), fmt_rat(&y)],
        _ => p.coords().iter().map(fmt_rat).collect(),
    };
    PointJson { coords }
}

pub fn polycon_from_json(j: &PolyconJson) -> Result<Polycon> {
    let comps = j
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| poly_from_json(c, j.chart, &format!("components[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let verts = j
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| point_from_json(v, j.chart, &format!("vertices[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Polycon::new(comps, verts)
}

/// Serializes in the requested chart; falls back to projective when a vertex is at
/// infinity.
pub fn polycon_to_json(p: &Polycon, chart: Chart) -> PolyconJson {
    let chart = if p.vertices.iter().all(RatPoint::is_finite) { chart } else { Chart::Projective };
    PolyconJson {
        chart,
        components: p
            .components
            .iter()
            .map(|c| {
                let d = c.degree();
                let view = if chart == Chart::Affine { c.dehomogenize() } else { c.clone() };
                PolyJson { degree: Some(d), ..poly_to_json(&view, chart) }
            })
            .collect(),
        vertices: p.vertices.iter().map(|v| point_to_json(v, chart)).collect(),
    }
}

/// Parses JSON text, reporting syntax errors with line and column.
pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

pub fn polycon_from_str(text: &str) -> Result<Polycon> {
    polycon_from_json(&parse_json(text)?)
}

/// A 3x3 grid of forms, always projective.
pub type GridJson = Vec<Vec<PolyJson>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LdrJson {
    pub entries: GridJson,
    #[serde(default, rename = "det-scale", skip_serializing_if = "Option::is_none")]
    pub det_scale: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cubic: Option<PolyJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjugateJson {
    pub entries: GridJson,
}

/// A basis change, either bare or wrapped as `{"matrix": ...}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixJson {
    Wrapped { matrix: Vec<Vec<String>> },
    Bare(Vec<Vec<String>>),
}

pub fn grid_to_json(m: &PolyMat) -> GridJson {
    m.iter().map(|r| r.iter().map(|e| poly_to_json(e, Chart::Projective)).collect()).collect()
}

pub fn grid_from_json(g: &GridJson, loc: &str) -> Result<PolyMat> {
    if g.len() != 3 || g.iter().any(|r| r.len() != 3) {
        return Err(Error::parse(loc, "expected a 3x3 grid"));
    }
    let mut out: PolyMat = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = poly_from_json(&g[i][j], Chart::Projective, &format!("{loc}[{i}][{j}]"))?;
        }
    }
    Ok(out)
}

pub fn ldr_to_json(m: &SymLdr) -> LdrJson {
    LdrJson {
        entries: grid_to_json(&m.entries),
        det_scale: Some(fmt_rat(&m.det_scale)),
        cubic: Some(poly_to_json(&m.cubic, Chart::Projective)),
    }
}

pub fn ldr_from_json(j: &LdrJson) -> Result<SymLdr> {
    let entries = grid_from_json(&j.entries, "entries")?;
    let m = match &j.cubic {
        Some(c) => SymLdr::new(entries, &poly_from_json(c, Chart::Projective, "cubic")?)?,
        None => SymLdr::from_entries(entries)?,
    };
    if let Some(d) = &j.det_scale {
        if rat_at(d, "det-scale")? != m.det_scale {
            return Err(Error::parse("det-scale", "does not match det(M) over the cubic"));
        }
    }
    Ok(m)
}

pub fn adjugate_to_json(n: &AdjugateMatrix) -> AdjugateJson {
    AdjugateJson { entries: grid_to_json(&n.entries) }
}

pub fn basis_change_from_json(j: &MatrixJson) -> Result<BasisChange> {
    let rows = match j {
        MatrixJson::Wrapped { matrix } => matrix,
        MatrixJson::Bare(m) => m,
    };
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
        return Err(Error::parse("matrix", "expected a 3x3 grid of rationals"));
    }
    let mut m: [[Rat; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = rat_at(&rows[i][j], &format!("matrix[{i}][{j}]"))?;
        }
    }
    BasisChange::new(m)
}

pub fn basis_change_to_json(t: &BasisChange) -> MatrixJson {
    MatrixJson::Wrapped { matrix: t.matrix.iter().map(|r| r.iter().map(fmt_rat).collect()).collect() }
}

/// SHA-256 of the projective JSON form, in hex.
pub fn polycon_hash(p: &Polycon) -> String {
    let text = serde_json::to_string(&polycon_to_json(p, Chart::Projective)).expect("serializable");
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

/// The adjoint of the bundled counterexample as published, in the affine chart.
pub const COUNTEREXAMPLE_ADJOINT: &str =
    "3440x^3 - 8400x^2y - 762xy^2 + 1971y^3 + 20720x^2 + 51168xy - 1620y^2 - 193248x - 96336y + 342144";

/// The bundled counterexample polycon.
pub fn counterexample() -> Polycon {
    polycon_from_str(COUNTEREXAMPLE_JSON).expect("bundled fixture parses")
}
