//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//! Run with `cargo test -p orlicz-cli --test acceptance -- --nocapture` to
//! see every line.

use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use orlicz::counterexample::{build_rho, verify_counterexample, BuildPolicy};
use orlicz::criteria::{
    condition_curvature_limit, decreasing_quotient, lp_threshold, operator_algebra_certificate,
    splitting_bound, splitting_u, Verdict,
};
use orlicz::function::DiscreteFunction;
use orlicz::lattice::{
    coboundary, cocycle_identity_residual, heisenberg_cocycle, normalization_residual,
    random_point, Cocycle, LatticePoint, Weight,
};
use orlicz::norms::{luxemburg_norm, orlicz_norm};
use orlicz::series::{radial_series, summability, SummabilityPolicy};
use orlicz::twist::twisted_convolve;
use orlicz::young::{
    biconjugate_residual, conjugate, entropy, exp as exp_young, l_exponent, pair_for,
    parse_young_spec, power,
};

fn pass(n: u32, msg: &str) {
    println!("criterion {n:02}: PASS - {msg}");
}

fn fail(n: u32, msg: &str) -> ! {
    println!("criterion {n:02}: FAIL - {msg}");
    panic!("criterion {n:02} failed: {msg}");
}

const SANDWICH_PHIS: [&str; 5] = ["power:2", "power:3", "xlog", "exp", "entropy"];

#[test]
fn criterion_01_norm_sandwich() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for spec in SANDWICH_PHIS {
        let phi = parse_young_spec(spec).unwrap();
        for dim in [1usize, 2] {
            for _ in 0..100 {
                let f = DiscreteFunction::random(&mut rng, dim, 10, 6);
                let n = luxemburg_norm(&phi, &f).unwrap();
                let o = orlicz_norm(&phi, &f).unwrap();
                if o < n * (1.0 - 1e-6) || o > 2.0 * n * (1.0 + 1e-6) {
                    fail(
                        1,
                        &format!("{spec} d={dim}: N={n}, ||.||={o} breaks N <= ||.|| <= 2N"),
                    );
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 60.0 {
        fail(1, &format!("sandwich sweep took {secs:.1}s >= 60s"));
    }
    pass(1, &format!(
        "N <= ||.|| <= 2N on 200 random functions for each of 5 Young functions, d in {{1,2}} ({secs:.1}s)"
    ));
}

#[test]
fn criterion_02_power_case_exactness() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for p in [1.5f64, 2.0, 3.0] {
        let phi = power(p).unwrap();
        for _ in 0..100 {
            let f = DiscreteFunction::random(&mut rng, 1, 12, 7);
            let oracle = f.lp_norm(p) * p.powf(-1.0 / p);
            let got = luxemburg_norm(&phi, &f).unwrap();
            if (got - oracle).abs() > 1e-9 * oracle {
                fail(
                    2,
                    &format!("p={p}: luxemburg {got} vs closed form {oracle}"),
                );
            }
        }
    }
    pass(
        2,
        "luxemburg norm matches ||f||_p * p^(-1/p) to 1e-9 for p in {1.5, 2, 3}",
    );
}

#[test]
fn criterion_03_conjugate_fidelity() {
    // numeric conjugate of the power family matches the dual power
    for p in [1.5f64, 2.0, 3.0] {
        let q = p / (p - 1.0);
        let psi = conjugate(&power(p).unwrap());
        for i in 0..=100 {
            let y = 0.1 * i as f64;
            let expect = y.powf(q) / q;
            if (psi.evaluate(y) - expect).abs() > 1e-6 * (1.0 + expect) {
                fail(
                    3,
                    &format!("conj(power:{p}) at y={y}: {} vs {expect}", psi.evaluate(y)),
                );
            }
        }
    }
    // biconjugation returns to the original on the whole catalog
    let grid: Vec<f64> = (0..=40).map(|i| 0.25 * i as f64).collect();
    for spec in [
        "power:1.5",
        "power:2",
        "power:3",
        "xlog",
        "exp",
        "cosh",
        "entropy",
        "square_compose:xlog",
        "sum:power:2+power:3",
    ] {
        let phi = parse_young_spec(spec).unwrap();
        let res = biconjugate_residual(&phi, &grid).unwrap();
        if res >= 1e-5 {
            fail(3, &format!("{spec}: biconjugate residual {res}"));
        }
    }
    // the exponential pair matches its closed form both ways
    let num = conjugate(&exp_young());
    let ent = entropy();
    for i in 0..=100 {
        let y = 0.1 * i as f64;
        if (num.evaluate(y) - ent.evaluate(y)).abs() > 1e-6 * (1.0 + ent.evaluate(y)) {
            fail(3, &format!("conj(exp) differs from entropy at {y}"));
        }
    }
    pass(3, "power conjugates to 1e-6, biconjugate residual < 1e-5 on the catalog, exp <-> entropy pair");
}

fn acceptance_cocycles() -> Vec<Cocycle> {
    vec![
        coboundary(Weight::poly(0.5).unwrap()),
        coboundary(Weight::poly(1.0).unwrap()),
        coboundary(Weight::poly(2.0).unwrap()),
        coboundary(Weight::subexp_pow(0.5, 1.0).unwrap()),
        coboundary(Weight::subexp_pow(0.75, 2.0).unwrap()),
        heisenberg_cocycle(2, 0.3).unwrap(),
        coboundary(Weight::poly(1.0).unwrap()).product(heisenberg_cocycle(2, 0.3).unwrap()),
        coboundary(Weight::poly(1.0).unwrap())
            .product(coboundary(Weight::subexp_pow(0.5, 1.0).unwrap())),
    ]
}

#[test]
fn criterion_04_cocycle_identity_and_normalization() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for c in acceptance_cocycles() {
        let ident = cocycle_identity_residual(&c, 2, 50, 1000, &mut rng);
        let norm = normalization_residual(&c, 2, 50, 200, &mut rng);
        if ident >= 1e-12 || norm >= 1e-12 {
            fail(
                4,
                &format!("{}: identity {ident}, normalization {norm}", c.label()),
            );
        }
    }
    pass(
        4,
        "cocycle identity and normalization < 1e-12 over 1000 radius-50 triples per cocycle",
    );
}

#[test]
fn criterion_05_associativity_and_unit() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cocycles = acceptance_cocycles();
    cocycles.push(Cocycle::Product { factors: vec![] });
    for c in &cocycles {
        let delta = DiscreteFunction::delta(LatticePoint::zero(2));
        for _ in 0..100 {
            let f = DiscreteFunction::random(&mut rng, 2, 6, 5);
            let g = DiscreteFunction::random(&mut rng, 2, 6, 5);
            let h = DiscreteFunction::random(&mut rng, 2, 6, 5);
            let res = orlicz::twist::associativity_residual(c, &f, &g, &h).unwrap();
            if res >= 1e-10 {
                fail(5, &format!("{}: associativity residual {res}", c.label()));
            }
            let left = twisted_convolve(c, &delta, &f).unwrap().result;
            let right = twisted_convolve(c, &f, &delta).unwrap().result;
            let unit_gap = left
                .sub(&f)
                .unwrap()
                .sup_norm()
                .max(right.sub(&f).unwrap().sup_norm());
            if unit_gap > 1e-14 {
                fail(5, &format!("{}: delta identity gap {unit_gap}", c.label()));
            }
        }
    }
    pass(5, "associativity residual < 1e-10 (100 triples per cocycle); delta is a two-sided unit to 1e-14");
}

#[test]
fn criterion_06_splitting_bound() {
    let weights = [
        Weight::poly(0.5).unwrap(),
        Weight::poly(1.0).unwrap(),
        Weight::poly(2.0).unwrap(),
        Weight::subexp_pow(0.5, 1.0).unwrap(),
        Weight::subexp_pow(0.75, 2.0).unwrap(),
        Weight::subexp_log(1.0, 1.0).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for w in &weights {
        // exact radial scan over all length pairs up to 200
        let rep = splitting_bound(w, 200).unwrap();
        if rep.verdict != Verdict::Holds || rep.max_violation > 1e-12 {
            fail(
                6,
                &format!(
                    "{}: radial violation {} at {:?}",
                    w.label(),
                    rep.max_violation,
                    rep.argmax
                ),
            );
        }
        // and on sampled concrete lattice pairs in d = 1 and d = 2
        let u = splitting_u(w);
        let c = coboundary(w.clone());
        for dim in [1usize, 2] {
            for _ in 0..1000 {
                let s = random_point(&mut rng, dim, 200);
                let t = random_point(&mut rng, dim, 200);
                let lhs = c.evaluate(&s, &t).re;
                let rhs = u(orlicz::lattice::word_length(&s)) + u(orlicz::lattice::word_length(&t));
                if lhs > rhs + 1e-12 {
                    fail(
                        6,
                        &format!("{} d={dim}: {lhs} > {rhs} at ({s}, {t})", w.label()),
                    );
                }
            }
        }
    }
    pass(6, "w(s+t)/(w(s)w(t)) <= u(tau s)+u(tau t): zero violations, all pairs tau <= 200, six profiles");
}

#[test]
fn criterion_07_quotient_inequality() {
    for w in [
        Weight::poly(0.5).unwrap(),
        Weight::poly(1.0).unwrap(),
        Weight::poly(2.0).unwrap(),
        Weight::subexp_pow(0.5, 1.0).unwrap(),
        Weight::subexp_pow(0.75, 2.0).unwrap(),
        Weight::subexp_log(1.0, 1.0).unwrap(),
    ] {
        let profile = w.clone();
        let rep = decreasing_quotient(move |n| profile.log_at_radius(n), 500);
        if rep.verdict != Verdict::Holds {
            fail(7, &format!("{}: {:?}", w.label(), rep.verdict));
        }
    }
    let convex = decreasing_quotient(|n| (n as f64) * (n as f64), 100);
    if convex.quotients_decreasing {
        fail(7, "exp(n^2) should fail the decreasing-quotient hypothesis");
    }
    pass(
        7,
        "splitting inequality brute-forced to N=500 for concave profiles; exp(n^2) rejected",
    );
}

#[test]
fn criterion_08_threshold_series() {
    let policy = SummabilityPolicy::default();
    for d in [1u32, 2] {
        for (offset, expect_converges) in [(-0.5, false), (0.0, false), (0.5, true)] {
            let two_beta = d as f64 + offset;
            let rt = radial_series(d, move |n| (1.0 + n as f64).powf(-two_beta));
            let v = summability(&rt, &policy);
            if v.inconclusive() {
                fail(8, &format!("d={d}, 2b={two_beta}: inconclusive"));
            }
            if v.converges() != expect_converges {
                fail(8, &format!("d={d}, 2b={two_beta}: {:?}", v.outcome));
            }
        }
    }
    pass(8, "sum sphere(d,n) w_b(n)^-2 diverges at 2b in {d-1/2, d}, converges at d+1/2, never inconclusive");
}

#[test]
fn criterion_09_operator_algebra_certificate() {
    let policy = SummabilityPolicy::default();
    let phi = power(2.0).unwrap();
    let cases = [
        (Weight::poly(0.75).unwrap(), Verdict::Holds),
        (Weight::poly(0.25).unwrap(), Verdict::Fails),
        (Weight::subexp_pow(0.5, 1.0).unwrap(), Verdict::Holds),
        (Weight::subexp_log(1.0, 1.0).unwrap(), Verdict::Holds),
    ];
    for (w, expect) in cases {
        let cert = operator_algebra_certificate(&phi, &w, 1, &policy).unwrap();
        if cert.verdict != expect {
            fail(
                9,
                &format!("{}: {:?}, expected {:?}", w.label(), cert.verdict, expect),
            );
        }
    }
    // 20-point grid agreement with the closed-form threshold, avoiding the
    // +-0.05 band around d/2 = 0.5
    let mut grid = Vec::new();
    for i in 0..10 {
        grid.push(0.1 + (0.44 - 0.1) * i as f64 / 9.0);
        grid.push(0.56 + (1.5 - 0.56) * i as f64 / 9.0);
    }
    for beta in grid {
        let cert =
            operator_algebra_certificate(&phi, &Weight::poly(beta).unwrap(), 1, &policy).unwrap();
        let th = lp_threshold(1, 2.0, beta).unwrap();
        if (cert.verdict == Verdict::Holds) != th.operator_algebra_claimed
            || cert.verdict == Verdict::Inconclusive
        {
            fail(
                9,
                &format!(
                    "beta={beta}: certificate {:?} vs threshold {}",
                    cert.verdict, th.operator_algebra_claimed
                ),
            );
        }
    }
    pass(9, "certificate granted/denied as the thresholds demand (p=2, d=1; poly, subexp, log-damped weights)");
}

#[test]
fn criterion_10_curvature_limit_evaluator() {
    // the estimated limit of x^2 rho'' is -beta within 1%
    let psi2 = power(2.0).unwrap().analytic_conjugate().unwrap().clone();
    for beta in [0.5f64, 1.0, 2.0] {
        let rep = condition_curvature_limit(&Weight::poly(beta).unwrap(), &psi2, 1).unwrap();
        let est = rep.limit.unwrap();
        if (est + beta).abs() > 0.01 * beta {
            fail(10, &format!("beta={beta}: limit estimate {est}"));
        }
    }
    // the measured low-order exponent of y^q/q is q within 0.01
    for p in [2.0f64, 3.0] {
        let pair = pair_for(&power(p).unwrap());
        let q = p / (p - 1.0);
        let (l, _) = l_exponent(&pair.psi).unwrap();
        if (l - q).abs() > 0.01 {
            fail(10, &format!("p={p}: l estimate {l} vs q={q}"));
        }
    }
    // verdicts flip exactly at beta = d/l
    let cases = [
        (1u32, 2.0f64, 0.30, Verdict::Fails),
        (1, 2.0, 0.48, Verdict::Fails),
        (1, 2.0, 0.52, Verdict::Holds),
        (1, 2.0, 0.75, Verdict::Holds),
        (1, 2.0, 1.00, Verdict::Holds),
        (1, 3.0, 0.60, Verdict::Fails),
        (1, 3.0, 0.73, Verdict::Holds),
        (2, 2.0, 0.90, Verdict::Fails),
        (2, 2.0, 1.10, Verdict::Holds),
    ];
    for (d, p, beta, expect) in cases {
        let pair = pair_for(&power(p).unwrap());
        let rep = condition_curvature_limit(&Weight::poly(beta).unwrap(), &pair.psi, d).unwrap();
        if rep.verdict != expect {
            fail(
                10,
                &format!(
                    "d={d}, p={p}, beta={beta}: {:?}, expected {:?}",
                    rep.verdict, expect
                ),
            );
        }
    }
    pass(
        10,
        "lim x^2 rho'' = -beta within 1%; holds iff beta > d/l with l measured to 0.01",
    );
}

#[test]
fn criterion_11_counterexample_end_to_end() {
    // As stated: build(n1=10, K=5), then verify the five properties up to
    // 2 n_5. The anchor admissibility forces n_{k+1} ~ n_k exp((4/e) sqrt(n_k)):
    // from n1 = 10 the anchors run 10, 566, ~9.1e17, and the fourth anchor
    // already exceeds every fixed-width integer (about 10^(6e8)), so the
    // build cannot complete at these parameters. The builder reports the
    // exhaustion; the machinery itself is demonstrated below at the largest
    // feasible parameters before this criterion is recorded as failed.
    let start = Instant::now();
    let policy = BuildPolicy::default();
    let attempt = build_rho(10, 5, &policy);

    // demonstrate the full pipeline at feasible parameters
    let (rho10, _) = build_rho(10, 3, &policy).expect("three blocks from 10 are feasible");
    verify_counterexample(&rho10, 2 * rho10.last_anchor(), 100_000)
        .expect("three-block profile verifies");
    let (rho3, _) = build_rho(3, 4, &policy).expect("four blocks from 3 are feasible");
    let report = verify_counterexample(&rho3, 2 * rho3.last_anchor(), 100_000)
        .expect("four-block profile verifies");
    for w in rho3.anchors.windows(2) {
        assert!(w[1] > 2 * w[0], "anchors must grow faster than doubling");
    }
    assert!(report.max_anchor_identity_residual <= 1e-9);
    assert!(report.min_gap_above_double_log >= -1e-9);
    assert!(report.max_integer_second_difference <= 1e-12);
    let mut tampered = rho3.clone();
    tampered.pieces[1].slope += 1e-3;
    assert!(
        verify_counterexample(&tampered, 2 * rho3.last_anchor(), 50_000).is_err(),
        "tamper must be caught"
    );
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 30.0, "runtime budget exceeded: {secs:.1}s");

    match attempt {
        Err(orlicz::Error::SearchExhausted { cap, .. }) => {
            println!(
                "criterion 11 detail: five-part verification, anchor identities to 1e-9, \
                 concavity to 1e-12 and the tamper check all pass at the feasible parameters \
                 (n1=10, K=3) and (n1=3, K=4) in {secs:.1}s"
            );
            fail(
                11,
                &format!(
                    "build(n1=10, K=5) is unattainable: the junction constraint 2 n_k < t_k < n_(k+1) \
                     forces n_(k+1) >= n_k exp((4/e) sqrt(n_k)) (anchors 10, 566, 905361851692735553, \
                     then ~10^(6e8)), which exceeds the anchor cap {cap} and every fixed-width \
                     integer type; the builder reports SearchExhausted as designed"
                ),
            );
        }
        Err(e) => fail(11, &format!("unexpected error from build(10, 5): {e}")),
        Ok(_) => {
            // would be a miracle given the growth analysis; verify honestly
            pass(11, "build(10, 5) completed and verified");
        }
    }
}

#[test]
fn criterion_12_intertwining_identity() {
    // coboundary(w) telescopes against division by the weight:
    // (f x_w g) / w = (f/w) * (g/w)
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let trivial = Cocycle::Product { factors: vec![] };
    for w in [
        Weight::poly(1.0).unwrap(),
        Weight::subexp_pow(0.5, 1.0).unwrap(),
    ] {
        let c = coboundary(w.clone());
        for _ in 0..100 {
            let f = DiscreteFunction::random(&mut rng, 1, 10, 6);
            let g = DiscreteFunction::random(&mut rng, 1, 10, 6);
            let twisted = twisted_convolve(&c, &f, &g)
                .unwrap()
                .result
                .mul_inverse_weight(&w);
            let plain = twisted_convolve(
                &trivial,
                &f.mul_inverse_weight(&w),
                &g.mul_inverse_weight(&w),
            )
            .unwrap()
            .result;
            let rel = twisted.sub(&plain).unwrap().sup_norm() / plain.sup_norm().max(1e-300);
            if rel >= 1e-12 {
                fail(12, &format!("{}: intertwining residual {rel}", w.label()));
            }
        }
    }
    pass(12, "weight division intertwines the twisted and plain convolutions to 1e-12 (100 pairs per weight)");
}

#[test]
fn criterion_13_deterministic_reports() {
    use std::process::Command;
    let dir = tempfile::tempdir().unwrap();
    let f_path = dir.path().join("f.json");
    std::fs::write(
        &f_path,
        serde_json::to_string(&{
            let mut f = DiscreteFunction::new(1);
            f.set(LatticePoint(vec![2]), Complex64::new(0.3, -1.7))
                .unwrap();
            f.set(LatticePoint(vec![-1]), Complex64::new(1.0, 0.25))
                .unwrap();
            f
        })
        .unwrap(),
    )
    .unwrap();

    let run_all = |tag: &str| -> Vec<Vec<u8>> {
        let bin = env!("CARGO_BIN_EXE_orlicz");
        let mut outputs = Vec::new();
        let checks: Vec<Vec<String>> = vec![
            vec![
                "check",
                "thm33",
                "--weight",
                "poly:2",
                "--phi",
                "power:2",
                "--condition",
                "any",
            ]
            .into_iter()
            .map(String::from)
            .collect(),
            vec![
                "check",
                "operator-algebra",
                "--phi",
                "power:2",
                "--weight",
                "subexp:0.5,1",
            ]
            .into_iter()
            .map(String::from)
            .collect(),
            vec![
                "norm",
                "--phi",
                "entropy",
                "--input",
                f_path.to_str().unwrap(),
            ]
            .into_iter()
            .map(String::from)
            .collect(),
        ];
        for args in checks {
            let out = Command::new(bin).args(&args).output().unwrap();
            outputs.push(out.stdout);
        }
        // sweep with an explicit seed, output compared as files
        let sweep_path = dir.path().join(format!("sweep-{tag}.csv"));
        let out = Command::new(bin)
            .args([
                "sweep",
                "--target",
                "thm33-iii",
                "--beta-from",
                "0.2",
                "--beta-to",
                "1.0",
                "--beta-step",
                "0.2",
                "--seed",
                "42",
                "-o",
                sweep_path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
        outputs.push(std::fs::read(&sweep_path).unwrap());
        // counterexample build, output compared as files
        let rho_path = dir.path().join(format!("rho-{tag}.json"));
        let out = Command::new(bin)
            .args([
                "counterexample",
                "build",
                "--n1",
                "3",
                "--segments",
                "3",
                "-o",
                rho_path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
        outputs.push(std::fs::read(&rho_path).unwrap());
        outputs.push(out.stdout);
        outputs
    };

    let a = run_all("a");
    let b = run_all("b");
    if a != b {
        fail(13, "reports differ between identical runs");
    }
    pass(
        13,
        "check, norm, sweep and build outputs are byte-identical across runs with the same seed",
    );
}
