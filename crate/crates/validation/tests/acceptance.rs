//! One line per acceptance criterion. Runs without the libtest harness so the lines are
//! always printed; exits non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::{Duration, Instant};

use adjugate_core::adjoint::{certify_segment, compute_adjoint, wachspress_witness};
use adjugate_core::detrep::{deform_adjugate, polycon_from_ldr, AdjugateMatrix, BasisChange, SymLdr};
use adjugate_core::exactalg::{parse_poly, rat, Poly, Rat, UPoly};
use adjugate_core::io::counterexample;
use adjugate_core::plane::{intersect_curves, intersection_multiplicity, local_length, ConicParam, RatPoint};
use adjugate_core::polycon::{check_regularity, residual_arrangement, Locus, Verdict};

use common::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn published_alpha() -> Poly {
    parse_poly(
        "3440x^3 - 8400x^2y - 762xy^2 + 1971y^3 + 20720x^2 + 51168xy - 1620y^2 - 193248x - 96336y + 342144",
    )
    .unwrap()
    .homogenize(3)
}

fn disc(q: &UPoly) -> Rat {
    let c = q.coeffs();
    &c[1] * &c[1] - rat(4) * &c[0] * &c[2]
}

fn counterexample_reproduction() -> Outcome {
    let p = counterexample();
    let mut notes = vec![];
    let alpha = match compute_adjoint(&p, false) {
        Ok(a) => a.poly,
        Err(e) => return ok(false, format!("adjoint: {e}")),
    };
    let adjoint_ok = alpha.is_proportional(&published_alpha());
    notes.push(format!("adjoint matches: {adjoint_ok}"));

    let arr = residual_arrangement(&p).unwrap();
    let mut got = arr.rational_points();
    got.sort_by_key(|q| q.to_string());
    let mut want = vec![RatPoint::affine_i(6, -8), RatPoint::affine_i(2, -4), RatPoint::affine_i(0, -8)];
    want.sort_by_key(|q| q.to_string());
    let rational_ok = got == want;
    notes.push(format!("rational residual points: {rational_ok}"));

    let mut pairs_ok = true;
    for ((i, j), s) in &arr.pairs {
        let blocks: Vec<_> = s.blocks.iter().collect();
        let conj = blocks.len() == 1
            && blocks[0].0.degree() == 2
            && blocks[0].1 == 1
            && disc(&blocks[0].0.shape) < rat(0)
            && intersect_curves(&p.components[*i], &p.components[*j], &[]).is_ok();
        pairs_ok &= conj;
    }
    notes.push(format!("conjugate pairs with negative discriminant: {pairs_ok}"));

    let reg = check_regularity(&p, None, None).unwrap();
    let reg_ok = reg.verdict == Verdict::Regular && reg.sign_vector == Some(vec![-1, 1, 1]);
    notes.push(format!("regular with S = {}: {reg_ok}", reg.describe_s().unwrap_or_default()));

    // The published pair of points.
    let pp = RatPoint::affine_i(0, 4);
    let qq = RatPoint::affine(rat(2) / rat(5), rat(2) / rat(5));
    let (ap, aq) = (alpha.eval(pp.coords()), alpha.eval(qq.coords()));
    let literal = &ap * &aq < rat(0);
    notes.push(format!("alpha(0,4) alpha(2/5,2/5) < 0: {literal} (alpha(0,4) = {ap}, alpha(2/5,2/5) = {aq})"));
    let eps = reg.sign_vector.clone().unwrap_or_default();
    let fixed = RatPoint::affine(rat(5) / rat(2), rat(5) / rat(2));
    let seg = certify_segment(&p, &eps, &alpha, &pp, &fixed).is_some();
    notes.push(format!("segment (0,4)-(5/2,5/2) certified: {seg}"));
    let searched = wachspress_witness(&p, &reg, &alpha).is_some();
    notes.push(format!("witness search succeeds: {searched}"));

    ok(adjoint_ok && rational_ok && pairs_ok && reg_ok && literal, notes.join("; "))
}

fn param_table() -> Outcome {
    let p = counterexample();
    let (v12, v23, v31) = (&p.vertices[0], &p.vertices[1], &p.vertices[2]);
    let pi1 = ConicParam::new(&p.components[0], v31).unwrap();
    let pi2 = ConicParam::new(&p.components[1], v23).unwrap();
    let pi3 = ConicParam::new(&p.components[2], v23).unwrap();
    let (r12, r23, r31) = (RatPoint::affine_i(6, -8), RatPoint::affine_i(2, -4), RatPoint::affine_i(0, -8));
    let table: Vec<(&str, &ConicParam, &RatPoint, (i64, i64))> = vec![
        ("pi1(R31)", &pi1, &r31, (2, 3)),
        ("pi1(R12)", &pi1, &r12, (2, 9)),
        ("pi1(v12)", &pi1, v12, (0, 1)),
        ("pi2(R12)", &pi2, &r12, (4, 3)),
        ("pi2(R23)", &pi2, &r23, (2, 1)),
        ("pi2(v23)", &pi2, v23, (2, 3)),
        ("pi3(R23)", &pi3, &r23, (2, 1)),
        ("pi3(R31)", &pi3, &r31, (1, 0)),
        ("pi3(v31)", &pi3, v31, (2, -1)),
    ];
    let mut bad = vec![];
    for (name, pi, q, (a, b)) in table {
        let s = pi.forward(q).unwrap();
        if &s[0] * rat(b) != &s[1] * rat(a) {
            bad.push(format!("{name} = ({} : {}) not ({a} : {b})", s[0], s[1]));
        }
    }
    let s = pi2.forward(v12).unwrap();
    let note = format!("pi2(v12) = ({} : {})", s[0], s[1]);
    ok(bad.is_empty(), format!("{} of 9 entries match; {}; {note}", 9 - bad.len(), bad.join(", ")))
}

fn contact_and_triangulation() -> (Outcome, Outcome, Duration) {
    let t0 = Instant::now();
    let inst = instances(20);
    let (mut cfail, mut tfail, mut runs) = (vec![], vec![], 0);
    for (n, p) in inst.iter().enumerate() {
        for i in 0..3 {
            runs += 1;
            match contact_outcome(p, i) {
                Ok(o) => {
                    if !contact_ok(&o) {
                        cfail.push(format!("{n}/{i}: count {} total {}", o.count, o.total));
                    }
                    if !o.triangulation {
                        tfail.push(format!("{n}/{i}"));
                    }
                }
                Err(e) => {
                    cfail.push(format!("{n}/{i}: {e}"));
                    tfail.push(format!("{n}/{i}"));
                }
            }
        }
    }
    let el = t0.elapsed();
    let within = el < Duration::from_secs(120);
    let c = ok(
        cfail.is_empty() && within && inst.len() >= 21,
        format!("{} polycons, {runs} reductions, failures {:?}, {:.1}s (limit 120s)", inst.len(), cfail, el.as_secs_f64()),
    );
    let t = ok(tfail.is_empty() && inst.len() >= 21, format!("{runs} identities, failures {tfail:?}"));
    (c, t, el)
}

fn round_trips() -> Outcome {
    let inst = instances(20);
    let fails: Vec<String> =
        inst.iter().enumerate().filter_map(|(n, p)| round_trip(p).err().map(|e| format!("{n}: {e}"))).collect();
    ok(fails.is_empty() && inst.len() >= 21, format!("{} polycons, failures {fails:?}", inst.len()))
}

fn triple_line() -> Outcome {
    let pm = |rows: [[&str; 3]; 3]| rows.map(|r| r.map(|s| parse_poly(s).unwrap()));
    let n = AdjugateMatrix { entries: pm([["0", "0", "x0^2"], ["0", "-x0^2", "x0*x1"], ["x0^2", "x0*x1", "-x1^2 - x0*x2"]]) };
    let m = SymLdr::from_entries(pm([["x2", "x1", "x0"], ["x1", "-x0", "0"], ["x0", "0", "0"]])).unwrap();
    if m.adjugate() != n {
        return ok(false, "starting matrix is not the adjugate of the representation");
    }
    let t = BasisChange::new([[1, 0, 1], [0, 1, 1], [0, 0, 1]].map(|r| r.map(rat))).unwrap();
    let (n2, p) = match deform_adjugate(&n, &t) {
        Ok(x) => x,
        Err(e) => return ok(false, e.to_string()),
    };
    let want = pm([
        ["2x0^2 - x1^2 - x0*x2", "x0^2 + x0*x1 - x1^2 - x0*x2", "x0^2 - x1^2 - x0*x2"],
        ["x0^2 + x0*x1 - x1^2 - x0*x2", "-x0^2 + 2x0*x1 - x1^2 - x0*x2", "x0*x1 - x1^2 - x0*x2"],
        ["x0^2 - x1^2 - x0*x2", "x0*x1 - x1^2 - x0*x2", "-x1^2 - x0*x2"],
    ]);
    let matrix_ok = n2.entries == want;
    let m2 = SymLdr::from_entries(t.act_on_ldr(&m.entries)).unwrap();
    let via_ldr = polycon_from_ldr(&m2).map(|q| q.vertices == p.vertices).unwrap_or(false);
    let origin = RatPoint::new([rat(0), rat(0), rat(1)]).unwrap();
    let arr = residual_arrangement(&p).unwrap();
    let single = arr.points.len() == 1 && matches!(&arr.points[0].locus, Locus::Rational(q) if *q == origin);
    let mut mults = vec![];
    let mut residual = vec![];
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        let (ci, cj) = (&p.components[i], &p.components[j]);
        let m = intersection_multiplicity(ci, cj, &origin).unwrap();
        mults.push(m);
        residual.push(local_length(&[ci, cj, n2.alpha(3 - i - j)], &origin, m));
    }
    let three = residual.iter().all(|&r| r == 3)
        && arr.points.first().map(|rp| rp.pairs.iter().all(|t| t.2 == 3)).unwrap_or(false);
    ok(
        matrix_ok && via_ldr && single && three,
        format!(
            "displayed matrix: {matrix_ok}; polycon_from_ldr agrees: {via_ldr}; single residual point (0:0:1): {single}; \
             residual multiplicity per pair {residual:?} (raw {mults:?}, v31 at the same point)"
        ),
    )
}

fn fiber() -> Outcome {
    let t0 = Instant::now();
    let p = counterexample();
    let mut ts: Vec<BasisChange> = shears().into_iter().map(BasisChange::t_gamma).collect();
    ts.extend(random_valid_changes(&p, 5, SEED));
    let count = ts.len();
    let fails: Vec<String> = ts
        .iter()
        .filter_map(|t| fiber_check(&p, t).err().map(|e| format!("{:?}: {e}", t.gamma.as_ref().map(|g| g.to_string()))))
        .collect();
    let el = t0.elapsed();
    ok(
        fails.is_empty() && count == 10 && el < Duration::from_secs(60),
        format!("{count} basis changes, failures {fails:?}, {:.1}s (limit 60s)", el.as_secs_f64()),
    )
}

fn counting_all() -> Outcome {
    let inst = instances(20);
    let fails: Vec<String> =
        inst.iter().enumerate().filter_map(|(n, p)| counting(p).err().map(|e| format!("{n}: {e}"))).collect();
    ok(fails.is_empty(), format!("{} polycons, failures {fails:?}", inst.len()))
}

fn lemma_all() -> Outcome {
    let inst = regular_instances();
    let mut fails = vec![];
    for (n, p) in inst.iter().enumerate() {
        match lemma_suite(p) {
            Ok(Some(())) => {}
            Ok(None) => fails.push(format!("{n}: not regular")),
            Err(e) => fails.push(format!("{n}: {e}")),
        }
    }
    ok(fails.is_empty() && inst.len() >= 21, format!("{} regular polycons, failures {fails:?}", inst.len()))
}

fn main() {
    let mut results: Vec<(&str, Outcome, Duration)> = vec![];
    let timed = |name: &'static str, f: &dyn Fn() -> Outcome, results: &mut Vec<(&str, Outcome, Duration)>| {
        let t = Instant::now();
        let o = f();
        results.push((name, o, t.elapsed()));
    };
    timed("counterexample reproduction", &|| {
        let t = Instant::now();
        let mut o = counterexample_reproduction();
        let el = t.elapsed();
        o.pass &= el < Duration::from_secs(5);
        o.detail = format!("{}; {:.2}s (limit 5s)", o.detail, el.as_secs_f64());
        o
    }, &mut results);
    timed("parameter table", &param_table, &mut results);
    let (c, t, el) = contact_and_triangulation();
    results.push(("contact theorem", c, el));
    results.push(("triangulation identity", t, Duration::ZERO));
    timed("dixon and dictionary round trips", &round_trips, &mut results);
    timed("triple-line golden matrix", &triple_line, &mut results);
    timed("fiber invariance", &fiber, &mut results);
    timed("counting invariants", &counting_all, &mut results);
    timed("adjoint off the boundary", &lemma_all, &mut results);

    let mut failed = 0;
    for (k, (name, o, d)) in results.iter().enumerate() {
        println!(
            "[{}] criterion {}: {name} ({:.1}s) -- {}",
            if o.pass { "PASS" } else { "FAIL" },
            k + 1,
            d.as_secs_f64(),
            o.detail
        );
        failed += (!o.pass) as usize;
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
