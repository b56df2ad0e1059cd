//! End-to-end acceptance checks. Each test covers one criterion, prints a
//! single pass/fail line with its runtime, and enforces a time budget.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use strongb::constants::{
    circle_lemma_bound, circle_strong_b, cstar_group_constant, hyperref_bound,
    unitization_constant,
};
use strongb::findim::algebra::{AlgebraSpec, BimoduleSpec};
use strongb::findim::cocycle::cochain_check;
use strongb::findim::dist::hyperref_ratio;
use strongb::findim::group::{commutant_hyperref_check, CayleyTable};
use strongb::findim::norms::MatP;
use strongb::findim::strongb::strong_b_estimate;
use strongb::report::Status;
use strongb::tensor::{transport, TensorElement};
use strongb::witness::{verify, WitnessParams};
use strongb::{Cx, FourierElement64, TensorElement64};

/// Prints the per-criterion verdict line and enforces result plus budget.
fn finish(name: &str, budget_s: f64, started: Instant, ok: bool, detail: &str) {
    let secs = started.elapsed().as_secs_f64();
    let in_time = secs < budget_s;
    let verdict = if ok && in_time { "pass" } else { "fail" };
    println!("acceptance {name}: {verdict} ({secs:.2}s of {budget_s}s) {detail}");
    assert!(ok, "{name}: {detail}");
    assert!(in_time, "{name} exceeded its time budget: {secs:.2}s >= {budget_s}s");
}

#[test]
fn closed_form_constants() {
    let t0 = Instant::now();
    let lemma = circle_lemma_bound(1.0f64).value;
    let cstar = cstar_group_constant::<f64>().value;
    let unitized = unitization_constant(1.0f64, 2184.329).value;
    let hyperref = hyperref_bound(1, 1.0f64, 2184.329, 1.0).value;
    let mut halves = true;
    for alpha in [0.25f64, 0.5, 1.0, 2.0, 10.0] {
        let (restricted, general) = circle_strong_b(alpha);
        halves &= restricted.value / general.value == 0.5;
    }
    let ok = (lemma - 33.0479).abs() <= 1e-3
        && (cstar - 2184.329).abs() <= 1e-2
        && (unitized - 2188.329).abs() <= 1e-2
        && (hyperref - 4.78878e6).abs() <= 1e2
        && halves;
    finish(
        "closed-form constants",
        1.0,
        t0,
        ok,
        &format!("lemma={lemma} cstar={cstar} unitized={unitized} hyperref={hyperref}"),
    );
}

#[test]
fn witness_inequalities_across_epsilon_grid() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    for eps in [0.1f64, 0.3, 0.6, 1.0, 2.0, 2.9] {
        let params = WitnessParams::new(eps, eps / 100.0, 100_000, 256).unwrap();
        let report = verify(params).unwrap();
        let all_pass = report.all_pass();
        let none_open = report.count(Status::Inconclusive) == 0;
        let mean = report.checks.iter().find(|c| c.name == "u_mean").unwrap();
        let mean_ok = mean.bracket.0 - 1e-6 <= 1.0 && 1.0 <= mean.bracket.1 + 1e-6;
        let approx = report.checks.iter().find(|c| c.name == "approximation_error").unwrap();
        let approx_ok = approx.bracket.1 < 3.0 * eps - 0.01 * eps;
        ok &= all_pass && none_open && mean_ok && approx_ok;
        detail.push_str(&format!(
            "eps={eps}: pass={}/{} approx_hi={:.4} ",
            report.count(Status::Pass),
            report.checks.len(),
            approx.bracket.1
        ));
    }
    finish("witness inequality chain", 60.0, t0, ok, detail.trim_end());
}

fn random_poly(rng: &mut ChaCha8Rng) -> FourierElement64 {
    use std::collections::BTreeMap;
    let mut acc: BTreeMap<i64, Cx<f64>> = BTreeMap::new();
    for _ in 0..rng.gen_range(1..=6) {
        let n = rng.gen_range(-8..=8i64);
        let c = Cx::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let e = acc.entry(n).or_insert(Cx::new(0.0, 0.0));
        *e += c;
    }
    FourierElement64::from_pairs(acc.into_iter().collect()).unwrap()
}

#[test]
fn tensor_transport_identity_and_coefficient_law() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let shift =
        FourierElement64::from_pairs(vec![(0, Cx::new(-1.0, 0.0)), (1, Cx::new(1.0, 0.0))])
            .unwrap();
    let mut max_identity = 0.0f64;
    let mut max_law = 0.0f64;
    for _ in 0..100 {
        let f = random_poly(&mut rng);
        let h = random_poly(&mut rng);
        let lhs = transport(&shift, &f, &h);
        let rhs = TensorElement64::elementary(&f.mul_by_char(1), &h)
            .sub(&TensorElement::elementary(&f, &h.mul_by_char(1)));
        max_identity = max_identity.max(lhs.sub(&rhs).max_coeff_norm());

        let x = random_poly(&mut rng);
        let y = random_poly(&mut rng);
        let lifted = TensorElement64::diag_lift(&x.convolve(&y.reflect()));
        for n in -8..=8i64 {
            let want = x.coeff(n) * y.coeff(-n);
            max_law = max_law.max((lifted.coeff(n, -n) - want).norm());
        }
    }
    let ok = max_identity <= 1e-12 && max_law <= 1e-12;
    finish(
        "tensor transport identity",
        10.0,
        t0,
        ok,
        &format!("identity_residual={max_identity:.2e} coefficient_residual={max_law:.2e}"),
    );
}

#[test]
fn cochain_calculus_on_reference_algebras() {
    let t0 = Instant::now();
    let algebras: Vec<(&str, AlgebraSpec<f64>)> = vec![
        ("ck:2", AlgebraSpec::ck(2).unwrap()),
        ("ck:3", AlgebraSpec::ck(3).unwrap()),
        ("m2", AlgebraSpec::m2().unwrap()),
        ("l1z:3", AlgebraSpec::l1_cyclic(3).unwrap()),
    ];
    let mut max_dd = 0.0f64;
    let mut max_lambda = 0.0f64;
    let mut instances = 0usize;
    let mut dims = std::collections::BTreeMap::new();
    for (name, a) in &algebras {
        let x = BimoduleSpec::over_self(a).unwrap();
        for degree in 1..=3usize {
            let rep = cochain_check(a, &x, degree, 5, 0xacce11).unwrap();
            max_dd = max_dd.max(rep.max_coboundary_sq);
            max_lambda = max_lambda.max(rep.max_lambda_defect);
            instances += rep.samples;
            if degree == 1 {
                dims.insert(*name, rep.cocycle_dim);
            }
        }
    }
    let ok = instances >= 50
        && max_dd <= 1e-10
        && max_lambda <= 1e-10
        && dims["m2"] == 3
        && dims["ck:2"] == 0;
    finish(
        "cochain calculus",
        30.0,
        t0,
        ok,
        &format!(
            "instances={instances} dd={max_dd:.2e} lambda={max_lambda:.2e} dim(m2)={} dim(ck2)={}",
            dims["m2"], dims["ck:2"]
        ),
    );
}

#[test]
fn strong_b_ratio_estimates() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut detail = String::new();

    let witness_run = strong_b_estimate(&AlgebraSpec::<f64>::ck(2).unwrap(), 32, 42).unwrap();
    let rerun = strong_b_estimate(&AlgebraSpec::<f64>::ck(2).unwrap(), 32, 42).unwrap();
    ok &= witness_run.r_hat >= 2.0;
    ok &= witness_run.r_hat == rerun.r_hat && witness_run.best_defect == rerun.best_defect;
    detail.push_str(&format!("ck2_r_hat={:.4} ", witness_run.r_hat));

    for k in 1..=4usize {
        for (label, algebra) in [
            ("ck", AlgebraSpec::<f64>::ck(k).unwrap()),
            ("l1z", AlgebraSpec::<f64>::l1_cyclic(k).unwrap()),
        ] {
            let est = strong_b_estimate(&algebra, 32, 42).unwrap();
            ok &= est.r_hat <= 2184.33;
            detail.push_str(&format!("{label}{k}={:.3} ", est.r_hat));
        }
    }
    finish("strong property (B) ratios", 300.0, t0, ok, detail.trim_end());
}

#[test]
fn hyperreflexivity_ratio_suite() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    let cases: Vec<(&str, AlgebraSpec<f64>, usize)> = vec![
        ("ck:2", AlgebraSpec::ck(2).unwrap(), 1),
        ("m2", AlgebraSpec::m2().unwrap(), 1),
        ("ck:3", AlgebraSpec::ck(3).unwrap(), 2),
    ];
    for (name, a, degree) in &cases {
        let x = BimoduleSpec::over_self(a).unwrap();
        let rep = hyperref_ratio(a, &x, *degree, 200, 7).unwrap();
        let bound = hyperref_bound(*degree as u32, 1.0f64, 2184.329, 1.0).value;
        let conclusive_bounded = rep
            .samples
            .iter()
            .all(|s| s.status != Status::Pass || s.ratio.is_some_and(|r| r <= bound));
        let rate = rep.inconclusive as f64 / rep.samples.len() as f64;
        ok &= conclusive_bounded && rep.max_conclusive_ratio <= bound && rate < 0.2;
        detail.push_str(&format!(
            "{name}/deg{degree}: max_ratio={:.3} inconclusive={:.1}% ",
            rep.max_conclusive_ratio,
            100.0 * rate
        ));
    }
    finish("hyperreflexivity ratios", 600.0, t0, ok, detail.trim_end());
}

#[test]
fn commutant_distance_suite() {
    let t0 = Instant::now();
    let group = CayleyTable::cyclic(3).unwrap();
    let rep = commutant_hyperref_check::<f64>(&group, MatP::Two, 200, 11).unwrap();
    let conclusive_bounded = rep
        .samples
        .iter()
        .all(|s| s.status != Status::Pass || s.ratio.is_some_and(|r| r <= 2184.33));
    let ok = rep.commutant_dim == 3
        && conclusive_bounded
        && rep.max_conclusive_ratio <= 2184.33
        && rep.intermediate_consistent
        && rep.intermediate_pairs > 0;
    finish(
        "commutant distance ratios",
        300.0,
        t0,
        ok,
        &format!(
            "dim={} max_ratio={:.3} conclusive={} inconclusive={} pairs={}",
            rep.commutant_dim,
            rep.max_conclusive_ratio,
            rep.conclusive,
            rep.inconclusive,
            rep.intermediate_pairs
        ),
    );
}
