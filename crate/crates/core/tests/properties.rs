mod common;

use adjugate_core::adjoint::compute_adjoint;
use adjugate_core::exactalg::{rat, Rat, RatMatrix};
use adjugate_core::io::counterexample;
use adjugate_core::polycon::{Polycon, Verdict};
use proptest::prelude::*;

use common::*;

#[test]
fn generator_yields_twenty_instances() {
    assert!(instances(20).len() >= 21);
}

#[test]
fn contact_is_three_double_points_everywhere() {
    for (n, p) in instances(20).iter().enumerate() {
        for i in 0..3 {
            let o = contact_outcome(p, i).unwrap_or_else(|e| panic!("instance {n}, component {i}: {e}"));
            assert!(contact_ok(&o), "instance {n}, component {i}: count {} total {}", o.count, o.total);
            assert!(o.triangulation, "instance {n}, component {i}: no triangulation identity");
        }
    }
}

#[test]
fn dictionary_and_dixon_round_trips() {
    for (n, p) in instances(20).iter().enumerate() {
        round_trip(p).unwrap_or_else(|e| panic!("instance {n}: {e}"));
    }
}

#[test]
fn residual_counts_and_bezout() {
    for (n, p) in instances(20).iter().enumerate() {
        counting(p).unwrap_or_else(|e| panic!("instance {n}: {e}"));
    }
}

#[test]
fn adjoint_meets_boundary_only_at_residual_points() {
    let inst = regular_instances();
    assert!(inst.len() >= 21);
    for (n, p) in inst.iter().enumerate() {
        let r = lemma_suite(p).unwrap_or_else(|e| panic!("instance {n}: {e}"));
        assert!(r.is_some(), "instance {n} is not regular");
    }
}

#[test]
fn perturbed_family_keeps_contact() {
    for (n, p) in regular_instances().iter().enumerate().step_by(5) {
        let o = contact_outcome(p, 1).unwrap_or_else(|e| panic!("instance {n}: {e}"));
        assert!(contact_ok(&o) && o.triangulation, "instance {n}");
    }
}

#[test]
fn fiber_keeps_the_adjoint() {
    let p = counterexample();
    for g in shears() {
        let t = adjugate_core::detrep::BasisChange::t_gamma(g.clone());
        fiber_check(&p, &t).unwrap_or_else(|e| panic!("gamma {g}: {e}"));
    }
    let ts = random_valid_changes(&p, 5, SEED);
    assert_eq!(ts.len(), 5);
    for t in ts {
        fiber_check(&p, &t).unwrap_or_else(|e| panic!("{:?}: {e}", t.matrix));
    }
}

fn scaled(p: &Polycon, s: &[i64; 3]) -> Polycon {
    let comps = p.components.iter().zip(s).map(|(c, k)| c.scale(&rat(*k))).collect();
    Polycon::new(comps, p.vertices.clone()).unwrap()
}

fn small_matrix() -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(-2i64..=2))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn adjoint_ignores_component_scaling(k in prop::array::uniform3(prop_oneof![-5i64..=-1, 1i64..=5]), idx in 0usize..6) {
        let p = instances(5).swap_remove(idx);
        let a = compute_adjoint(&p, false).unwrap().poly;
        let b = compute_adjoint(&scaled(&p, &k), false).unwrap().poly;
        prop_assert!(a.is_proportional(&b));
    }

    #[test]
    fn adjoint_is_projectively_equivariant(m in small_matrix(), idx in 0usize..6) {
        let a: [[Rat; 3]; 3] = m.map(|r| r.map(rat));
        prop_assume!(!num_traits::Zero::is_zero(&RatMatrix::from_3x3(&a).det()));
        let p = instances(5).swap_remove(idx);
        let q = p.transform(&a).unwrap();
        let alpha = compute_adjoint(&p, false).unwrap().poly;
        let beta = compute_adjoint(&q, false).unwrap().poly;
        let inv = RatMatrix::from_3x3(&a).inverse().unwrap().to_3x3();
        prop_assert!(beta.is_proportional(&alpha.transform(&inv)));
    }

    #[test]
    fn regularity_is_chart_independent_for_translations(dx in -3i64..=3, dy in -3i64..=3) {
        let p = counterexample();
        let a = [[rat(1), rat(0), rat(dx)], [rat(0), rat(1), rat(dy)], [rat(0), rat(0), rat(1)]];
        let q = p.transform(&a).unwrap();
        let r = adjugate_core::polycon::check_regularity(&q, None, None).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Regular);
    }
}
