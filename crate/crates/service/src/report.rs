//! Exact reports. Every number is a rational string; a report carries `verified`, the
//! conjunction of the certificates it contains.

use adjugate_core::adjoint::{
    compute_adjoint, contact_check, triangulation_identity, verify_off_boundary, wachspress_witness, AdjointCurve,
};
use adjugate_core::detrep::{
    check_res_preserv, deform_adjugate, divisor_bookkeeping, dixon, ldr_from_polycon, polycon_from_ldr, AdjugateMatrix,
    BasisChange, SymLdr,
};
use adjugate_core::exactalg::{fmt_rat, parse_poly, rat, Poly};
use adjugate_core::io::{
    adjugate_to_json, basis_change_to_json, ldr_to_json, point_to_json, poly_to_json, polycon_hash, polycon_to_json,
    Chart, COUNTEREXAMPLE_ADJOINT,
};
use adjugate_core::plane::{PointSet, RatPoint};
use adjugate_core::polycon::{
    check_regularity, reduce_component, residual_arrangement, validate, Polycon, RegularityReport, Verdict,
};
use adjugate_core::{Error, Result};
use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct Report {
    pub body: Value,
    pub verified: bool,
}

impl Report {
    fn new(verified: bool, mut body: Value) -> Self {
        body["precision"] = json!("exact");
        body["verified"] = json!(verified);
        Report { body, verified }
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("serializable")
    }
}

pub fn poly_value(p: &Poly, chart: Chart) -> Value {
    let view = if chart == Chart::Affine { p.dehomogenize() } else { p.clone() };
    let mut v = serde_json::to_value(poly_to_json(&view, chart)).expect("serializable");
    v["degree"] = json!(p.degree());
    v["text"] = json!(if chart == Chart::Affine { view.display_affine() } else { p.display_projective() });
    v
}

fn point_value(q: &RatPoint, chart: Chart) -> Value {
    let chart = if q.is_finite() { chart } else { Chart::Projective };
    serde_json::to_value(point_to_json(q, chart)).expect("serializable")
}

pub fn polycon_value(p: &Polycon, chart: Chart) -> Value {
    serde_json::to_value(polycon_to_json(p, chart)).expect("serializable")
}

fn point_set_value(s: &PointSet, chart: Chart) -> Value {
    json!({
        "rational": s.rational.iter().map(|(q, m)| json!({"point": point_value(q, chart), "multiplicity": m})).collect::<Vec<_>>(),
        "blocks": s.blocks.iter().map(|(b, m)| json!({"block": b.describe(), "degree": b.degree(), "multiplicity": m})).collect::<Vec<_>>(),
    })
}

/// The adjoint as a curve with its provenance.
pub fn adjoint_value(p: &Polycon, a: &AdjointCurve, chart: Chart) -> Value {
    let mut v = poly_value(&a.poly, chart);
    v["provenance"] = json!({
        "polycon-hash": polycon_hash(p),
        "condition-count": a.condition_count,
        "kernel-dim": a.kernel_dim,
    });
    v
}

pub fn adjoint(p: &Polycon, chart: Chart, permissive: bool) -> Result<Report> {
    let v = validate(p, permissive);
    if !v.valid {
        return Err(Error::InvalidPolycon(v.issues.join("; ")));
    }
    let a = compute_adjoint(p, permissive)?;
    Ok(Report::new(true, json!({ "adjoint": adjoint_value(p, &a, chart), "relaxations": v.relaxations })))
}

fn regularity_value(r: &RegularityReport, chart: Chart) -> Value {
    json!({
        "verdict": r.verdict,
        "nodal": r.nodal,
        "sides-found": r.sides_found,
        "sign-vector": r.sign_vector,
        "region": r.describe_s(),
        "samples": r.samples,
        "sample-points": r.sample_points.iter().map(|q| point_value(q, chart)).collect::<Vec<_>>(),
        "vertices": r.vertices,
        "reasons": r.reasons,
    })
}

fn witness_value(p: &Polycon, reg: &RegularityReport, alpha: &Poly, chart: Chart) -> (bool, Value) {
    match wachspress_witness(p, reg, alpha) {
        Some(w) => (
            true,
            json!({
                "p": point_value(&w.p, chart),
                "q": point_value(&w.q, chart),
                "alpha-p": fmt_rat(&w.alpha_p),
                "alpha-q": fmt_rat(&w.alpha_q),
                "product-negative": true,
                "segment-in-region": true,
            }),
        ),
        None => (false, Value::Null),
    }
}

fn published_adjoint() -> Poly {
    parse_poly(COUNTEREXAMPLE_ADJOINT).expect("constant parses").homogenize(3)
}

/// The bundled counterexample: nodal, regular, with the published adjoint, and with a
/// certified segment in the region along which the adjoint changes sign.
pub fn verify_counterexample(p: &Polycon, chart: Chart) -> Result<Report> {
    let v = validate(p, false);
    let reg = check_regularity(p, None, None)?;
    let a = compute_adjoint(p, false)?;
    let matches = a.poly.is_proportional(&published_adjoint());
    let arr = residual_arrangement(p)?;
    let (found, witness) = witness_value(p, &reg, &a.poly, chart);

    // The pair printed with the example, reported as computed.
    let (pp, qq) = (RatPoint::affine_i(0, 4), RatPoint::affine(rat(2) / rat(5), rat(2) / rat(5)));
    let (ap, aq) = (a.poly.eval(pp.coords()), a.poly.eval(qq.coords()));
    let published_pair = json!({
        "p": point_value(&pp, chart),
        "q": point_value(&qq, chart),
        "alpha-p": fmt_rat(&ap),
        "alpha-q": fmt_rat(&aq),
        "product-negative": &ap * &aq < rat(0),
    });

    let verified = v.valid && v.nodal && reg.verdict == Verdict::Regular && matches && found;
    Ok(Report::new(
        verified,
        json!({
            "polycon": polycon_value(p, chart),
            "polycon-hash": polycon_hash(p),
            "valid": v.valid,
            "nodal": v.nodal,
            "residual-points": arr.count(),
            "residual": arr.points.iter().map(|rp| json!({"locus": rp.locus.describe(), "components": rp.components})).collect::<Vec<_>>(),
            "regularity": regularity_value(&reg, chart),
            "adjoint": adjoint_value(p, &a, chart),
            "adjoint-matches-published": matches,
            "witness": witness,
            "published-pair": published_pair,
        }),
    ))
}

pub fn reduce(p: &Polycon, i: usize, chart: Chart, permissive: bool) -> Result<Report> {
    let red = reduce_component(p, i)?;
    let a = compute_adjoint(&red, permissive)?;
    Ok(Report::new(
        true,
        json!({
            "component": i + 1,
            "line": poly_value(&red.components[i], chart),
            "polycon": polycon_value(&red, chart),
            "adjoint": adjoint_value(&red, &a, chart),
        }),
    ))
}

fn residual_off(p: &Polycon, i: usize) -> Result<PointSet> {
    let arr = residual_arrangement(p)?;
    let mut s = PointSet::default();
    for rp in arr.points.iter().filter(|rp| !rp.components.contains(&i)) {
        s.extend(rp.locus.as_point_set());
    }
    Ok(s)
}

pub fn contact(p: &Polycon, i: usize, chart: Chart, permissive: bool) -> Result<Report> {
    let a = compute_adjoint(p, permissive)?;
    let red = reduce_component(p, i)?;
    let a1 = compute_adjoint(&red, permissive)?;
    let cert = contact_check(&a.poly, &a1.poly, &residual_off(p, i)?)?;
    let tri = triangulation_identity(p, i, &red.components[i], &a.poly, &a1.poly);
    let verified = cert.verified && tri.is_some();
    Ok(Report::new(
        verified,
        json!({
            "component": i + 1,
            "adjoint": adjoint_value(p, &a, chart),
            "reduced-adjoint": adjoint_value(&red, &a1, chart),
            "line": poly_value(&red.components[i], chart),
            "contact": {
                "points": cert.contact_points.iter().map(|c| json!({"locus": c.locus, "points": c.points, "multiplicity": c.multiplicity})).collect::<Vec<_>>(),
                "count": cert.count,
                "total": cert.total,
                "expected-total": cert.expected_total,
                "all-even": cert.all_even,
                "support-matches": cert.support_matches,
                "smooth": cert.smooth,
                "verified": cert.verified,
                "note": cert.note,
            },
            "triangulation": tri.map(|c| c.iter().map(fmt_rat).collect::<Vec<_>>()),
        }),
    ))
}

pub fn dixon_report(cubic: &Poly, conic: &Poly, chart: Chart) -> Result<Report> {
    let d = dixon(cubic, conic, None)?;
    let det_ok = d.ldr.determinant().is_proportional(cubic);
    let corner_ok = d.adjugate.entries[0][0].is_proportional(conic);
    let book = divisor_bookkeeping(cubic, &d.adjugate, &d.divisor)?;
    Ok(Report::new(
        det_ok && corner_ok && book.holds && d.ldr.adjugate_consistent(&d.adjugate),
        json!({
            "ldr": ldr_to_json(&d.ldr),
            "adjugate": adjugate_to_json(&d.adjugate),
            "divisor": point_set_value(&d.divisor, chart),
            "determinant-proportional": det_ok,
            "corner-is-contact-conic": corner_ok,
            "divisor-bookkeeping": {"first-row": book.first_row, "lower-block": book.lower_block, "holds": book.holds},
        }),
    ))
}

pub fn ldr(p: &Polycon, chart: Chart) -> Result<Report> {
    let r = ldr_from_polycon(p)?;
    let det_ok = r.ldr.determinant().is_proportional(&r.alpha);
    let consistent = r.ldr.adjugate_consistent(&r.adjugate);
    Ok(Report::new(
        det_ok && consistent,
        json!({
            "ldr": ldr_to_json(&r.ldr),
            "adjugate": adjugate_to_json(&r.adjugate),
            "adjoint": poly_value(&r.alpha, chart),
            "reduced-adjoints": r.reduced.iter().map(|a| poly_value(a, chart)).collect::<Vec<_>>(),
            "lambdas": r.lambdas.iter().map(fmt_rat).collect::<Vec<_>>(),
            "kappa": fmt_rat(&r.kappa),
            "determinant-proportional": det_ok,
            "adjugate-consistent": consistent,
        }),
    ))
}

pub fn polycon_from_ldr_report(m: &SymLdr, chart: Chart) -> Result<Report> {
    let p = polycon_from_ldr(m)?;
    let v = validate(&p, false);
    Ok(Report::new(
        v.valid,
        json!({
            "polycon": polycon_value(&p, chart),
            "valid": v.valid,
            "nodal": v.nodal,
            "issues": v.issues,
        }),
    ))
}

pub struct Deformed {
    pub report: Report,
    pub adjugate: AdjugateMatrix,
    pub polycon: Polycon,
    pub verdict: Verdict,
}

/// Applies `t` to `before` and reports the new polycon, its regularity, whether the adjoint
/// is still `alpha` up to scale, and for a shear the preserved objects.
pub fn deformation(
    before: &AdjugateMatrix,
    t: &BasisChange,
    alpha: &Poly,
    check_fiber: bool,
    chart: Chart,
) -> Result<Deformed> {
    let (after, q) = deform_adjugate(before, t)?;
    let reg = check_regularity(&q, None, None)?;
    let a2 = compute_adjoint(&q, true)?.poly;
    let ratio = a2.proportionality(alpha);
    let unchanged = json!({
        "holds": ratio.is_some(),
        "scale": ratio.as_ref().map(fmt_rat),
        "adjoint": poly_value(&a2, chart),
    });
    let mut verified = ratio.is_some();
    let preserved = match &t.gamma {
        Some(g) if check_fiber => {
            let r = check_res_preserv(before, &after, g)?;
            verified &= r.verified;
            serde_json::to_value(&r).expect("serializable")
        }
        _ => Value::Null,
    };
    let report = Report::new(
        verified,
        json!({
            "basis-change": basis_change_to_json(t),
            "polycon": polycon_value(&q, chart),
            "adjugate": adjugate_to_json(&after),
            "regularity": {"verdict": reg.verdict, "region": reg.describe_s(), "reasons": reg.reasons},
            "adjoint-unchanged": unchanged,
            "preserved": preserved,
        }),
    );
    Ok(Deformed { report, adjugate: after, polycon: q, verdict: reg.verdict })
}

pub fn deform(p: &Polycon, t: &BasisChange, check_fiber: bool, chart: Chart) -> Result<Report> {
    let r = ldr_from_polycon(p)?;
    Ok(deformation(&r.adjugate, t, &r.alpha, check_fiber, chart)?.report)
}

fn section<T>(r: Result<T>, f: impl FnOnce(T) -> Value) -> Value {
    match r {
        Ok(x) => f(x),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

/// Everything that applies to `p`; failures of optional parts are recorded, not raised.
pub fn full(p: &Polycon, chart: Chart, permissive: bool) -> Result<Report> {
    let v = validate(p, permissive);
    let mut body = json!({
        "polycon": polycon_value(p, chart),
        "polycon-hash": polycon_hash(p),
        "validation": {"valid": v.valid, "nodal": v.nodal, "issues": v.issues, "relaxations": v.relaxations},
    });
    if !v.valid {
        return Ok(Report::new(false, body));
    }
    let a = compute_adjoint(p, permissive)?;
    let arr = residual_arrangement(p)?;
    let reg = check_regularity(p, None, None)?;
    let mut verified = true;
    body["adjoint"] = adjoint_value(p, &a, chart);
    body["residual"] = json!({
        "count": arr.count(),
        "nodal": arr.nodal,
        "points": arr.points.iter().map(|rp| json!({"locus": rp.locus.describe(), "components": rp.components})).collect::<Vec<_>>(),
    });
    body["regularity"] = regularity_value(&reg, chart);
    if reg.verdict == Verdict::Regular {
        let off = verify_off_boundary(p, &a.poly)?;
        verified &= off.passed;
        body["off-boundary"] = json!({
            "multiplicity-one": off.multiplicity_one,
            "off-boundary": off.off_boundary,
            "smooth-at-residual": off.smooth_at_residual,
            "passed": off.passed,
        });
        let (found, w) = witness_value(p, &reg, &a.poly, chart);
        body["sign-change"] = json!({ "found": found, "witness": w });
    }
    if p.n() == 3 && p.degree() == 6 {
        let mut contacts = vec![];
        for i in 0..3 {
            let c = contact(p, i, chart, permissive);
            if let Ok(r) = &c {
                verified &= r.verified;
            }
            contacts.push(section(c, |r| r.body["contact"].clone()));
        }
        body["contact"] = json!(contacts);
        body["ldr"] = section(ldr(p, chart), |r| {
            verified &= r.verified;
            json!({ "ldr": r.body["ldr"], "adjugate": r.body["adjugate"] })
        });
    }
    Ok(Report::new(verified, body))
}

