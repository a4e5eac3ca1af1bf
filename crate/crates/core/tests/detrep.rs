use adjugate_core::adjoint::compute_adjoint;
use adjugate_core::detrep::{
    check_res_preserv, deform, deform_adjugate, divisor_bookkeeping, dixon, ldr_from_polycon, polycon_from_ldr,
    scaling_rigidity, AdjugateMatrix, BasisChange, PolyMat, Rigidity, SymLdr,
};
use adjugate_core::exactalg::{parse_poly, rat, ratio};
use adjugate_core::io::counterexample;
use adjugate_core::plane::{intersection_multiplicity, local_length, RatPoint};
use adjugate_core::polycon::{reduce_component, residual_arrangement, Locus};
use adjugate_core::Error;

fn pm(rows: [[&str; 3]; 3]) -> PolyMat {
    rows.map(|r| r.map(|s| parse_poly(s).unwrap()))
}

fn triple_line_adjugate() -> AdjugateMatrix {
    AdjugateMatrix { entries: pm([["0", "0", "x0^2"], ["0", "-x0^2", "x0*x1"], ["x0^2", "x0*x1", "-x1^2 - x0*x2"]]) }
}

fn shear() -> BasisChange {
    BasisChange::new([[1, 0, 1], [0, 1, 1], [0, 0, 1]].map(|r| r.map(rat))).unwrap()
}

#[test]
fn triple_line_shear_matches_displayed_matrix() {
    let (n, p) = deform_adjugate(&triple_line_adjugate(), &shear()).unwrap();
    let want = pm([
        ["2x0^2 - x1^2 - x0*x2", "x0^2 + x0*x1 - x1^2 - x0*x2", "x0^2 - x1^2 - x0*x2"],
        ["x0^2 + x0*x1 - x1^2 - x0*x2", "-x0^2 + 2x0*x1 - x1^2 - x0*x2", "x0*x1 - x1^2 - x0*x2"],
        ["x0^2 - x1^2 - x0*x2", "x0*x1 - x1^2 - x0*x2", "-x1^2 - x0*x2"],
    ]);
    assert_eq!(n.entries, want);

    let origin = RatPoint::new([rat(0), rat(0), rat(1)]).unwrap();
    let arr = residual_arrangement(&p).unwrap();
    assert_eq!(arr.points.len(), 1);
    assert!(matches!(&arr.points[0].locus, Locus::Rational(q) if *q == origin));
    // C1 and C3 meet only at the origin; there the vertex v31 absorbs one unit of the
    // intersection and each pair keeps three at the residual point.
    let raw = [((0, 1), 3), ((1, 2), 3), ((0, 2), 4)];
    for ((i, j), m) in raw {
        let (ci, cj) = (&p.components[i], &p.components[j]);
        assert_eq!(intersection_multiplicity(ci, cj, &origin).unwrap(), m);
        let k = 3 - i - j;
        assert_eq!(local_length(&[ci, cj, n.alpha(k)], &origin, m), 3);
    }
    let pt = |a: i64, b: i64, c: i64| RatPoint::new([rat(a), rat(b), rat(c)]).unwrap();
    assert_eq!(p.vertices, vec![pt(1, 1, 0), pt(1, 0, 1), origin.clone()]);
    // Strict validation refuses the non-transverse vertex; the permissive adjoint is the
    // determinant of the representation.
    assert!(compute_adjoint(&p, false).is_err());
    let a = compute_adjoint(&p, true).unwrap();
    assert!(a.poly.is_proportional(&parse_poly("x0^3").unwrap()), "{}", a.poly);
}

#[test]
fn triple_line_ldr_deforms_consistently() {
    let m = SymLdr::from_entries(pm([["x2", "x1", "x0"], ["x1", "-x0", "0"], ["x0", "0", "0"]])).unwrap();
    assert_eq!(m.adjugate(), triple_line_adjugate());
    let d = deform(&m, &shear()).unwrap();
    assert_eq!(d.adjugate, triple_line_adjugate().transform(&shear()));
    assert!(d.ldr.adjugate_consistent(&d.adjugate));
}

#[test]
fn common_zero_of_entries_is_rejected() {
    let m = SymLdr::from_entries(pm([["x0", "2x0", "0"], ["2x0", "x0", "0"], ["0", "0", "-x0"]])).unwrap();
    assert!(matches!(polycon_from_ldr(&m), Err(Error::RankZeroPoint)));
}

#[test]
fn counterexample_dictionary_round_trip() {
    let p = counterexample();
    let r = ldr_from_polycon(&p).unwrap();
    let alpha = compute_adjoint(&p, false).unwrap().poly;
    assert!(r.ldr.determinant().is_proportional(&alpha));
    assert!(r.ldr.adjugate_consistent(&r.adjugate));
    assert!(r.adjugate.minors_divisible_by(&alpha));
    for k in 0..3 {
        assert!(r.adjugate.conic(k).is_proportional(&p.components[k]));
        let red = compute_adjoint(&reduce_component(&p, k).unwrap(), false).unwrap().poly;
        assert!(r.adjugate.alpha(k).is_proportional(&red));
    }
    let q = polycon_from_ldr(&r.ldr).unwrap();
    assert_eq!(q.vertices, p.vertices);
    for k in 0..3 {
        assert!(q.components[k].is_proportional(&p.components[k]));
    }
}

#[test]
fn dixon_on_counterexample_adjoint() {
    let p = counterexample();
    let alpha = compute_adjoint(&p, false).unwrap().poly;
    let contact = compute_adjoint(&reduce_component(&p, 0).unwrap(), false).unwrap().poly;
    let out = dixon(&alpha, &contact, None).unwrap();
    assert!(out.ldr.determinant().is_proportional(&alpha));
    assert!(out.adjugate.entries[0][0].is_proportional(&contact));
    assert!(out.ldr.adjugate_consistent(&out.adjugate));
    assert_eq!(out.divisor.total_multiplicity(), 3);
    let b = divisor_bookkeeping(&alpha, &out.adjugate, &out.divisor).unwrap();
    assert!(b.holds, "{b:?}");
}

#[test]
fn dixon_rejects_collinear_contact() {
    let p = counterexample();
    let alpha = compute_adjoint(&p, false).unwrap().poly;
    let l = parse_poly("x0 + 2x1 - 7x2").unwrap();
    let r = dixon(&alpha, &(&l * &l), None);
    assert!(matches!(r, Err(Error::PreconditionViolation(_))), "{r:?}");
}

#[test]
fn shear_preserves_lemma_objects() {
    let p = counterexample();
    let r = ldr_from_polycon(&p).unwrap();
    let alpha = compute_adjoint(&p, false).unwrap().poly;
    let t = BasisChange::t_gamma(ratio(1, 10));
    let d = deform(&r.ldr, &t).unwrap();
    let a = compute_adjoint(&d.polycon, false).unwrap().poly;
    assert!(a.is_proportional(&alpha));
    assert!(d.polycon.components[0].is_proportional(&p.components[0]));
    let rep = check_res_preserv(&r.adjugate, &d.adjugate, &ratio(1, 10)).unwrap();
    assert!(rep.verified, "{rep:?}");

    let mut bad = d.adjugate.clone();
    let extra = parse_poly("x0*x2").unwrap();
    bad.entries[0][2] = &bad.entries[0][2] + &extra;
    bad.entries[2][0] = bad.entries[0][2].clone();
    let rep = check_res_preserv(&r.adjugate, &bad, &ratio(1, 10)).unwrap();
    assert!(!rep.claim2);
}

#[test]
fn zero_shear_is_identity() {
    let r = ldr_from_polycon(&counterexample()).unwrap();
    let d = deform(&r.ldr, &BasisChange::t_gamma(rat(0))).unwrap();
    assert_eq!(d.adjugate, r.adjugate);
    assert!(check_res_preserv(&r.adjugate, &d.adjugate, &rat(0)).unwrap().verified);
}

#[test]
fn scaling_rigidity_verdicts() {
    let r = ldr_from_polycon(&counterexample()).unwrap();
    let n = &r.adjugate;
    assert_eq!(scaling_rigidity(n, n, &r.alpha).unwrap(), Rigidity::Identical { negative: false });
    let diag = BasisChange::new([[1, 0, 0], [0, 2, 0], [0, 0, 1]].map(|r| r.map(rat))).unwrap();
    assert_eq!(scaling_rigidity(n, &n.transform(&diag), &r.alpha).unwrap(), Rigidity::DiagonalConjugation);
    let mut m2 = n.clone();
    m2.entries[1][1] = m2.entries[1][1].scale(&rat(2));
    assert!(matches!(scaling_rigidity(n, &m2, &r.alpha).unwrap(), Rigidity::MinorIdentityFails { .. }));
}
