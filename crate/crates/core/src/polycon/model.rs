//! The polycon data model and its validation.

use crate::error::{Error, Result};
use crate::exactalg::Poly;
use crate::plane::conic::{classify_conic, ConicClass};
use crate::plane::{intersect_curves, intersection_multiplicity, RatPoint};

/// Boundary components (lines and conics, as homogeneous forms) in cyclic order, with
/// `vertices[i]` the designated vertex between `components[i]` and `components[i + 1]`.
#[derive(Clone, Debug)]
pub struct Polycon {
    pub components: Vec<Poly>,
    pub vertices: Vec<RatPoint>,
}

impl Polycon {
    pub fn new(components: Vec<Poly>, vertices: Vec<RatPoint>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::InvalidPolycon("a polycon needs at least two components".into()));
        }
        if components.len() != vertices.len() {
            return Err(Error::InvalidPolycon(format!(
                "{} components but {} vertices",
                components.len(),
                vertices.len()
            )));
        }
        for (i, c) in components.iter().enumerate() {
            if !c.is_homogeneous() || !(1..=2).contains(&c.degree()) {
                return Err(Error::InvalidPolycon(format!(
                    "component {} must be a homogeneous form of degree 1 or 2",
                    i + 1
                )));
            }
        }
        Ok(Polycon { components, vertices })
    }

    /// Builds from affine equations, homogenizing each to its own degree.
    pub fn from_affine(components: &[Poly], vertices: Vec<RatPoint>) -> Result<Self> {
        Self::new(components.iter().map(|c| c.homogenize(c.degree())).collect(), vertices)
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> usize {
        self.components.iter().map(Poly::degree).sum()
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.n()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.n() - 1) % self.n()
    }

    /// The two vertices of component `i`: `(v_{i-1,i}, v_{i,i+1})`.
    pub fn vertices_of(&self, i: usize) -> (&RatPoint, &RatPoint) {
        (&self.vertices[self.prev(i)], &self.vertices[i])
    }

    /// Pairs of components meeting at `p` as a designated vertex.
    pub fn vertex_pairs_at(&self, p: &RatPoint) -> Vec<(usize, usize)> {
        (0..self.n()).filter(|&i| &self.vertices[i] == p).map(|i| (i, self.next(i))).collect()
    }

    pub fn is_vertex(&self, p: &RatPoint) -> bool {
        self.vertices.contains(p)
    }

    /// Product of all component forms.
    pub fn boundary(&self) -> Poly {
        self.components.iter().fold(Poly::one(), |acc, c| &acc * c)
    }

    /// Applies `p -> A p` to the vertices and `c -> c(A^{-1} x)` to the components.
    pub fn transform(&self, a: &[[crate::exactalg::Rat; 3]; 3]) -> Result<Polycon> {
        let m = crate::exactalg::RatMatrix::from_3x3(a);
        let inv = m.inverse().ok_or_else(|| Error::PreconditionViolation("singular transform".into()))?.to_3x3();
        let comps = self.components.iter().map(|c| c.transform(&inv)).collect();
        let verts = self.vertices.iter().map(|v| v.transform(a)).collect::<Result<Vec<_>>>()?;
        Polycon::new(comps, verts)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub valid: bool,
    pub nodal: bool,
    pub issues: Vec<String>,
    /// Degenerate vertex configurations accepted in permissive mode.
    pub relaxations: Vec<String>,
    /// Implicit vertices: singular points of line-pair components.
    pub implicit_vertices: Vec<RatPoint>,
}

/// Checks the polycon invariants. Never fails; problems are reported.
pub fn validate(p: &Polycon, permissive: bool) -> ValidationReport {
    let mut rep = ValidationReport { valid: true, nodal: true, ..Default::default() };
    let n = p.n();
    let issue = |rep: &mut ValidationReport, relaxable: bool, msg: String| {
        if relaxable && permissive {
            rep.relaxations.push(msg);
        } else {
            rep.valid = false;
            rep.issues.push(msg);
        }
    };
    for (i, c) in p.components.iter().enumerate() {
        if c.degree() == 2 {
            match classify_conic(c) {
                Ok(ConicClass::DoubleLine { .. }) => {
                    issue(&mut rep, false, format!("component {} is a double line", i + 1));
                }
                Ok(ConicClass::RealLinePair { singular } | ConicClass::ConjugateLinePair { singular }) => {
                    rep.implicit_vertices.push(singular);
                }
                Ok(_) => {}
                Err(e) => issue(&mut rep, false, format!("component {}: {e}", i + 1)),
            }
        }
    }
    for i in 0..n {
        let j = p.next(i);
        let v = &p.vertices[i];
        let (ci, cj) = (&p.components[i], &p.components[j]);
        if !v.on(ci) || !v.on(cj) {
            issue(&mut rep, false, format!("vertex {} = {v} is not on components {} and {}", i + 1, i + 1, j + 1));
            continue;
        }
        match intersection_multiplicity(ci, cj, v) {
            Ok(1) => {}
            Ok(m) => {
                rep.nodal = false;
                issue(&mut rep, true, format!("components {} and {} meet with multiplicity {m} at vertex {v}", i + 1, j + 1));
            }
            Err(e) => issue(&mut rep, false, format!("vertex {v}: {e}")),
        }
        for k in (0..n).filter(|&k| k != i && k != j) {
            if v.on(&p.components[k]) {
                rep.nodal = false;
                issue(&mut rep, true, format!("vertex {v} also lies on component {}", k + 1));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let inter = match intersect_curves(&p.components[i], &p.components[j], &[]) {
                Ok(s) => s,
                Err(e) => {
                    issue(&mut rep, false, format!("components {} and {}: {e}", i + 1, j + 1));
                    continue;
                }
            };
            if inter.rational.iter().any(|(_, m)| *m > 1) || inter.blocks.iter().any(|(_, m)| *m > 1) {
                rep.nodal = false;
            }
            for k in (0..n).filter(|&k| k != i && k != j) {
                let ck = &p.components[k];
                if inter.rational.iter().any(|(q, _)| q.on(ck)) || inter.blocks.iter().any(|(b, _)| !coprime_on_block(b, ck)) {
                    rep.nodal = false;
                }
            }
        }
    }
    for s in &rep.implicit_vertices.clone() {
        if p.components.iter().filter(|c| s.on(c)).count() > 1 {
            rep.nodal = false;
        }
    }
    rep
}

/// Whether `f` vanishes at no point of the block.
fn coprime_on_block(b: &crate::plane::Block, f: &Poly) -> bool {
    let v = b.eval(f);
    crate::exactalg::UPoly::gcd(&v, &b.shape).deg() == 0 && !v.is_zero()
}

/// Replaces the conic `i` by the line through its two vertices.
pub fn reduce_component(p: &Polycon, i: usize) -> Result<Polycon> {
    if i >= p.n() {
        return Err(Error::PreconditionViolation(format!("no component {}", i + 1)));
    }
    if p.components[i].degree() != 2 {
        return Err(Error::ComponentIsLine(i + 1));
    }
    let (a, b) = p.vertices_of(i);
    let line = a.line_through(b).ok_or(Error::AdjacentVerticesEqual(i + 1))?;
    let mut comps = p.components.clone();
    comps[i] = line.normalized();
    Polycon::new(comps, p.vertices.clone())
}
