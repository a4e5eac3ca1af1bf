use adjugate_core::exactalg::{parse_poly, rat, ratio, Poly};
use adjugate_core::io::counterexample;
use adjugate_core::plane::{ConicParam, RatPoint};
use adjugate_core::Error;
use adjugate_core::polycon::{
    check_regularity, reduce_component, residual_arrangement, select_sides, validate, Polycon, Verdict,
};

fn affine(cs: &[&str], vs: &[(i64, i64)]) -> Polycon {
    let c: Vec<Poly> = cs.iter().map(|s| parse_poly(s).unwrap()).collect();
    Polycon::from_affine(&c, vs.iter().map(|&(x, y)| RatPoint::affine_i(x, y)).collect()).unwrap()
}

fn square() -> Polycon {
    affine(&["x - 1", "y - 1", "x + 1", "y + 1"], &[(1, 1), (-1, 1), (-1, -1), (1, -1)])
}

fn paper_samples() -> Vec<RatPoint> {
    vec![
        RatPoint::affine_i(0, 4),
        RatPoint::affine(ratio(1, 5), rat(2)),
        RatPoint::affine(ratio(-10, 7), ratio(-16, 7)),
    ]
}

#[test]
fn counterexample_is_valid_and_nodal() {
    let r = validate(&counterexample(), false);
    assert!(r.valid, "{:?}", r.issues);
    assert!(r.nodal);
}

#[test]
fn concentric_circles_with_false_vertex_are_invalid() {
    let p = affine(&["x^2 + y^2 - 1", "x^2 + y^2 - 4"], &[(1, 0), (2, 0)]);
    let r = validate(&p, false);
    assert!(!r.valid);
}

#[test]
fn vertex_on_third_component_is_rejected_unless_permissive() {
    // Three conics through the origin, the origin declared as every vertex.
    let p = affine(&["x^2 + y^2 - 2x", "x^2 + y^2 - 2y", "x^2 + y^2 + 2x"], &[(0, 0), (0, 0), (0, 0)]);
    let strict = validate(&p, false);
    assert!(!strict.valid);
    let loose = validate(&p, true);
    assert!(loose.valid, "{:?}", loose.issues);
    assert!(!loose.relaxations.is_empty());
    assert!(!loose.nodal);
}

#[test]
fn counterexample_residual_arrangement() {
    let arr = residual_arrangement(&counterexample()).unwrap();
    assert_eq!(arr.count(), 9);
    let mut got = arr.rational_points();
    got.sort_by_key(|p| p.to_string());
    let mut want = vec![RatPoint::affine_i(6, -8), RatPoint::affine_i(2, -4), RatPoint::affine_i(0, -8)];
    want.sort_by_key(|p| p.to_string());
    assert_eq!(got, want);
    let blocks = arr.blocks();
    assert_eq!(blocks.len(), 3);
    for b in blocks {
        assert_eq!(b.degree(), 2);
        assert_eq!(b.real_count(), 0);
    }
}

#[test]
fn triangle_and_square_sides() {
    let sq = square();
    let arr = residual_arrangement(&sq).unwrap();
    let sel = select_sides(&sq, &arr).unwrap();
    for s in &sel.sides {
        // The finite edge: its midpoint is inside the arc.
        let (a, b) = sq.vertices_of(s.component);
        let (ax, ay) = a.xy().unwrap();
        let (bx, by) = b.xy().unwrap();
        let mid = RatPoint::affine((ax + bx) / rat(2), (ay + by) / rat(2));
        assert!(s.contains(&mid).unwrap());
    }
}

#[test]
fn counterexample_is_regular_with_paper_samples() {
    let p = counterexample();
    let rep = check_regularity(&p, Some(&paper_samples()), None).unwrap();
    assert_eq!(rep.verdict, Verdict::Regular, "{:?}", rep.reasons);
    assert_eq!(rep.sign_vector, Some(vec![-1, 1, 1]));
    assert_eq!(rep.describe_s().unwrap(), "{c1 <= 0, c2 >= 0, c3 >= 0}");
    let auto = check_regularity(&p, None, None).unwrap();
    assert_eq!(auto.verdict, Verdict::Regular);
    assert_eq!(auto.sign_vector, Some(vec![-1, 1, 1]));
}

#[test]
fn flipped_sign_on_c1_is_not_regular() {
    let rep = check_regularity(&counterexample(), Some(&paper_samples()), Some(&[1, 1, 1])).unwrap();
    assert_eq!(rep.verdict, Verdict::NotRegular);
}

#[test]
fn sample_off_its_side_is_an_error() {
    let mut s = paper_samples();
    s[0] = RatPoint::affine_i(6, -8);
    assert!(check_regularity(&counterexample(), Some(&s), None).is_err());
}

#[test]
fn square_is_regular() {
    let rep = check_regularity(&square(), None, None).unwrap();
    assert_eq!(rep.verdict, Verdict::Regular, "{:?}", rep.reasons);
}

#[test]
fn reduction_lines() {
    let p = counterexample();
    let r1 = reduce_component(&p, 0).unwrap();
    assert_eq!(r1.components[0].dehomogenize(), parse_poly("y + 6").unwrap());
    let r2 = reduce_component(&p, 1).unwrap();
    assert_eq!(r2.components[1].dehomogenize(), parse_poly("2x + 3y").unwrap());
    assert!(reduce_component(&r1, 0).is_err());
}

fn same(a: &[adjugate_core::exactalg::Rat; 2], b: (i64, i64)) -> bool {
    &a[0] * rat(b.1) == &a[1] * rat(b.0)
}

fn paper_params(p: &Polycon) -> [ConicParam; 3] {
    let (v23, v31) = (&p.vertices[1], &p.vertices[2]);
    [
        ConicParam::new(&p.components[0], v31).unwrap(),
        ConicParam::new(&p.components[1], v23).unwrap(),
        ConicParam::new(&p.components[2], v23).unwrap(),
    ]
}

#[test]
fn parameter_table_of_the_counterexample() {
    let p = counterexample();
    let [pi1, pi2, pi3] = paper_params(&p);
    let (v12, v23, v31) = (&p.vertices[0], &p.vertices[1], &p.vertices[2]);
    let r12 = RatPoint::affine_i(6, -8);
    let r23 = RatPoint::affine_i(2, -4);
    let r31 = RatPoint::affine_i(0, -8);
    let table: Vec<(&ConicParam, &RatPoint, (i64, i64))> = vec![
        (&pi1, &r31, (2, 3)),
        (&pi1, &r12, (2, 9)),
        (&pi1, v12, (0, 1)),
        (&pi2, &r12, (4, 3)),
        (&pi2, &r23, (2, 1)),
        // The printed table attaches (2:3) to v23, the base point of pi2; it is the
        // value at v12.
        (&pi2, v12, (2, 3)),
        (&pi3, &r23, (2, 1)),
        (&pi3, &r31, (1, 0)),
        (&pi3, v31, (2, -1)),
    ];
    for (pi, q, want) in table {
        let got = pi.forward(q).unwrap();
        assert!(same(&got, want), "{q}: got {got:?}, want {want:?}");
    }
    // Tangent directions at the base points.
    assert!(same(&pi1.forward(v31).unwrap(), (10, 9)));
    assert!(same(&pi2.forward(v23).unwrap(), (25, 6)));
    assert!(same(&pi3.forward(v23).unwrap(), (4, -3)));
}

#[test]
fn selected_sides_match_the_published_arcs() {
    let p = counterexample();
    let pis = paper_params(&p);
    let arr = residual_arrangement(&p).unwrap();
    let sel = select_sides(&p, &arr).unwrap();
    assert_eq!(sel.sides.len(), 3);
    for side in &sel.sides {
        let pi = &pis[side.component];
        let a = side.points_along(&[1, 2, 3, 5, 8, 13]).unwrap();
        assert!(!a.is_empty());
        for q in a {
            let s = pi.forward(&q).unwrap();
            match side.component {
                // outside {(s : 9) : 0 < s < 10}
                0 => {
                    let t = &s[0] * rat(9) / &s[1];
                    assert!(s[1] == rat(0) || t <= rat(0) || t >= rat(10), "{q}");
                }
                // outside {(50 : t) : 12 < t < 75}, the lower end being the tangent at v23
                1 => {
                    let t = &s[1] * rat(50) / &s[0];
                    assert!(s[0] == rat(0) || t <= rat(12) || t >= rat(75), "{q}");
                }
                // inside {(4 : t) : -3 < t < -2}
                _ => {
                    let t = &s[1] * rat(4) / &s[0];
                    assert!(t > rat(-3) && t < rat(-2), "{q}");
                }
            }
        }
    }
}

#[test]
fn ellipses_with_residual_points_on_both_arcs() {
    let p = affine(&["x^2 + 2y^2 - 3", "2x^2 + y^2 - 3"], &[(1, 1), (-1, -1)]);
    let arr = residual_arrangement(&p).unwrap();
    assert!(matches!(select_sides(&p, &arr), Err(Error::NoResidualFreeArc(_))));
    let rep = check_regularity(&p, None, None).unwrap();
    assert_eq!(rep.verdict, Verdict::NotRegular);
}
