//! Acceptance gate: ten end-to-end checks covering the estimators, the
//! frozen reference values, the sweep artifacts, calibration, binary
//! reproducibility, and the structural invariants of both models.
//!
//! Each test prints a single `ACCEPT <name>: PASS|FAIL (<detail>)` line
//! before asserting, so `cargo test --test acceptance -- --nocapture`
//! reads as a checklist even when everything passes.

use std::fs;
use std::process::Command;
use std::time::Instant;

use claimcheck::grid::{
    default_delta_values, default_n_values, DEFAULT_BASELINE, DEFAULT_THRESHOLD,
};
use claimcheck::{
    calibrate_s, clf_false_claim_exact, clf_false_claim_mc, clf_false_claim_underspec_stats,
    compare_grids, impute_table, run_grid, seg_asymptotic_floor, seg_false_claim_prob,
    student_t_cdf, CalibrationSpec, ClfComparison, ClfParams, ContingencyTable, FixedParams,
    GridSpec, ModelParams, Probability, ReferencePoint, Rng, SegComparison, SegParams, Task,
};

/// Base seed shared by every stochastic check in this suite.
const SEED: u64 = 42;

/// Canonical segmentation spread and correlation used throughout.
const SPREAD: f64 = 0.197;
const CORR: f64 = 0.67;

/// Canonical classification congruence.
const CONGRUENCE: f64 = 0.67;

const FLAT_PRIOR: [f64; 4] = [1.0; 4];

fn report(name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("ACCEPT {name}: {verdict} ({detail})");
}

fn uniform_in(rng: &mut Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.uniform()
}

fn uniform_u32(rng: &mut Rng, lo: u32, hi: u32) -> u32 {
    lo + (f64::from(hi - lo + 1) * rng.uniform()) as u32
}

fn seg_prob(mu_a: f64, mu_b: f64, n: u32, params: &SegParams) -> f64 {
    let cmp = SegComparison {
        mu_hat_a: mu_a,
        mu_hat_b: mu_b,
        n,
    };
    seg_false_claim_prob(&cmp, params)
        .expect("valid segmentation comparison")
        .prob
        .value()
}

/// Exact-count lattice: accuracies i/n with congruence 0 impute to the
/// integer table (0, a, b, n−a−b) with no rounding ambiguity, so the
/// classification checks below see the posterior math, not remainder
/// tie-breaking.
fn lattice_table(a: u32, b: u32, n: u32) -> ContingencyTable {
    let p_a = f64::from(a) / f64::from(n);
    let p_b = f64::from(b) / f64::from(n);
    let table = impute_table(p_a, p_b, 0.0, n).expect("feasible lattice point");
    let expected = ContingencyTable {
        n11: 0,
        n10: a,
        n01: b,
        n00: n - a - b,
    };
    assert_eq!(
        table, expected,
        "lattice imputation drifted at a = {a}, b = {b}, n = {n}"
    );
    table
}

fn lattice_prob(a: u32, b: u32, n: u32) -> f64 {
    clf_false_claim_exact(&lattice_table(a, b, n), &FLAT_PRIOR)
        .expect("exact posterior")
        .value()
}

/// The Monte Carlo posterior estimator must agree with the closed-form
/// incomplete-beta posterior within 0.01 at 10^5 draws, across 50 random
/// configurations, in under 30 seconds.
#[test]
fn mc_estimator_agrees_with_exact_posterior() {
    let start = Instant::now();
    let mut sampler = Rng::with_stream(SEED, 901);
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    for case in 0..50u64 {
        let n = uniform_u32(&mut sampler, 30, 2000);
        let p_b = uniform_in(&mut sampler, 0.40, 0.90);
        let p_a = (p_b + uniform_in(&mut sampler, 0.0, 0.08)).min(1.0);
        let congruence = sampler.uniform();
        let prior = if case % 2 == 0 { FLAT_PRIOR } else { [0.5; 4] };
        let table = impute_table(p_a, p_b, congruence, n).expect("feasible table");
        let exact = clf_false_claim_exact(&table, &prior)
            .expect("exact posterior")
            .value();
        let mut mc_rng = Rng::with_stream(SEED, 1000 + case);
        let mc = clf_false_claim_mc(&table, &prior, 100_000, &mut mc_rng)
            .expect("mc posterior")
            .value();
        let err = (mc - exact).abs();
        if err > worst {
            worst = err;
            worst_at = format!("n = {n}, p_a = {p_a:.3}, p_b = {p_b:.3}");
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = worst < 0.01 && elapsed < 30.0;
    report(
        "mc_estimator_agrees_with_exact_posterior",
        pass,
        &format!(
            "50 configs at 100000 draws, max |mc - exact| = {worst:.5} (at {worst_at}), {elapsed:.1}s"
        ),
    );
    assert!(worst < 0.01, "max MC/exact gap {worst} at {worst_at}");
    assert!(elapsed < 30.0, "runtime {elapsed:.1}s exceeds the 30s budget");
}

/// P(Bin(a + b − 1, ½) ≥ a) as an exact dyadic rational from one row of
/// Pascal's triangle, which equals I_½(a, b) for integer a, b. The row
/// sums fit u128 comfortably for a + b − 1 ≤ 120.
fn binomial_tail_half(a: u32, b: u32) -> f64 {
    let m = (a + b - 1) as usize;
    let mut row = vec![0u128; m + 1];
    row[0] = 1;
    for i in 1..=m {
        for j in (1..=i).rev() {
            row[j] += row[j - 1];
        }
    }
    let tail: u128 = row[a as usize..].iter().sum();
    tail as f64 / 2f64.powi(m as i32)
}

/// Frozen reference value: the table (67, 13, 8, 12) under a flat prior
/// has exact false-claim probability I_½(14, 9) = 600370/2^22, checked
/// against an independent integer binomial-tail oracle to 1e-10.
#[test]
fn exact_posterior_reference_value() {
    let table = ContingencyTable {
        n11: 67,
        n10: 13,
        n01: 8,
        n00: 12,
    };
    let p = clf_false_claim_exact(&table, &FLAT_PRIOR)
        .expect("exact posterior")
        .value();
    let oracle = binomial_tail_half(14, 9);
    let dyadic = 600_370.0 / f64::from(1u32 << 22);
    let err = (p - oracle).abs();
    let pass = err < 1e-10 && oracle == dyadic && format!("{p:.4}") == "0.1431";
    report(
        "exact_posterior_reference_value",
        pass,
        &format!("I_half(14, 9) = {p:.16} vs 600370/2^22 = {dyadic:.16}, |err| = {err:.1e}"),
    );
    assert_eq!(oracle, dyadic, "binomial-tail oracle is not 600370/2^22");
    assert!(err < 1e-10, "posterior {p} differs from oracle {oracle}");
    assert_eq!(format!("{p:.4}"), "0.1431");
}

/// Setting δ = 0 must reproduce the baseline models bit-for-bit: the
/// segmentation path equals a hand-written paired-t evaluation with no
/// seed-variance terms, and the classification underspecification path
/// collapses to the exact posterior of the imputed table with zero
/// Monte Carlo error.
#[test]
fn zero_seed_variance_reduces_to_baselines() {
    let mut sampler = Rng::with_stream(SEED, 902);
    let mut seg_matches = 0u32;
    let mut clf_matches = 0u32;
    let mut first_miss = String::new();

    for _ in 0..100 {
        let s_a = uniform_in(&mut sampler, 0.05, 0.40);
        let s_b = uniform_in(&mut sampler, 0.05, 0.40);
        let r_ab = uniform_in(&mut sampler, -0.50, 0.95);
        let n = uniform_u32(&mut sampler, 5, 5000);
        let mu_b = uniform_in(&mut sampler, 0.50, 0.90);
        let mu_a = mu_b + uniform_in(&mut sampler, 0.0, 0.08);
        let params = SegParams {
            s_a,
            s_b,
            r_ab,
            delta_a: 0.0,
            delta_b: 0.0,
        };
        let model = seg_prob(mu_a, mu_b, n, &params);
        // Baseline paired-t model, written out with no δ terms at all.
        let paired = (s_a * s_a + s_b * s_b - 2.0 * s_a * s_b * r_ab) / f64::from(n);
        let se = paired.max(0.0).sqrt();
        let baseline = student_t_cdf(-(mu_a - mu_b) / se, f64::from(n - 1))
            .expect("t cdf")
            .value();
        if model.to_bits() == baseline.to_bits() {
            seg_matches += 1;
        } else if first_miss.is_empty() {
            first_miss = format!("seg {model:.17} != {baseline:.17}");
        }
    }

    for _ in 0..100 {
        let n = uniform_u32(&mut sampler, 30, 3000);
        let p_b = uniform_in(&mut sampler, 0.40, 0.90);
        let p_a = (p_b + uniform_in(&mut sampler, 0.0, 0.08)).min(1.0);
        let congruence = sampler.uniform();
        let cmp = ClfComparison {
            p_hat_a: p_a,
            p_hat_b: p_b,
            n,
        };
        let params = ClfParams {
            congruence_p11: congruence,
            ..ClfParams::default()
        };
        let estimate = clf_false_claim_underspec_stats(&cmp, &params).expect("underspec path");
        let table = impute_table(p_a, p_b, congruence, n).expect("feasible table");
        let exact = clf_false_claim_exact(&table, &params.prior_alphas)
            .expect("exact posterior")
            .value();
        if estimate.prob.value().to_bits() == exact.to_bits() && estimate.mc_se == 0.0 {
            clf_matches += 1;
        } else if first_miss.is_empty() {
            first_miss = format!(
                "clf {:.17} != {exact:.17} (mc_se {})",
                estimate.prob.value(),
                estimate.mc_se
            );
        }
    }

    let pass = seg_matches == 100 && clf_matches == 100;
    let detail = if pass {
        "seg 100/100 bitwise vs paired t, clf 100/100 bitwise vs exact posterior with mc_se = 0"
            .to_string()
    } else {
        format!("seg {seg_matches}/100, clf {clf_matches}/100; first miss: {first_miss}")
    };
    report("zero_seed_variance_reduces_to_baselines", pass, &detail);
    assert!(pass, "{detail}");
}

/// With Δ = 0.01 and δ = 0.01 the false-claim probability must stay above
/// 0.05 for every test-set size up to 10^6 and approach the analytic floor
/// Φ(−Δ/√(2δ²)) ≈ 0.2398 within 1e-3, in under a second.
#[test]
fn seed_variance_floor_for_small_differences() {
    let start = Instant::now();
    let params = SegParams {
        s_a: SPREAD,
        s_b: SPREAD,
        r_ab: CORR,
        delta_a: 0.01,
        delta_b: 0.01,
    };
    let floor = seg_asymptotic_floor(0.01, 0.01, 0.01)
        .expect("floor")
        .value();
    let sizes: [u32; 5] = [10, 100, 1000, 10_000, 1_000_000];
    let probs: Vec<f64> = sizes
        .iter()
        .map(|&n| seg_prob(0.01, 0.0, n, &params))
        .collect();
    let all_above = probs.iter().all(|&p| p > 0.05);
    let gap = (probs[4] - floor).abs();
    let elapsed = start.elapsed().as_secs_f64();
    let pass = all_above && gap < 1e-3 && elapsed < 1.0;
    report(
        "seed_variance_floor_for_small_differences",
        pass,
        &format!(
            "p(n) = {:.4}..{:.4} all > 0.05, |p(10^6) - floor {floor:.4}| = {gap:.1e}, {elapsed:.2}s",
            probs[0], probs[4]
        ),
    );
    assert!(all_above, "probabilities {probs:?} dip to 0.05 or below");
    assert!(gap < 1e-3, "p(10^6) = {} vs floor {floor}", probs[4]);
    assert!(elapsed < 1.0, "runtime {elapsed:.2}s exceeds the 1s budget");
}

/// The segmentation Δ-contour at p = 0.05 for n = 100 (δ = 0.01) must fall
/// in [0.03, 0.05].
#[test]
fn seg_decision_threshold_at_n_100() {
    let spec = GridSpec::new(
        Task::Segmentation,
        vec![100],
        default_delta_values(),
        DEFAULT_BASELINE,
        ModelParams::Seg(SegParams {
            s_a: SPREAD,
            s_b: SPREAD,
            r_ab: CORR,
            delta_a: 0.01,
            delta_b: 0.01,
        }),
        DEFAULT_THRESHOLD,
    )
    .expect("valid spec");
    let result = run_grid(&spec).expect("sweep");
    let contour = result.contour[0];
    let pass = contour.is_some_and(|d| (0.03..=0.05).contains(&d));
    report(
        "seg_decision_threshold_at_n_100",
        pass,
        &format!("contour at n = 100 is {contour:?}, expected within [0.03, 0.05]"),
    );
    let d = contour.expect("contour crossing at n = 100");
    assert!((0.03..=0.05).contains(&d), "contour {d} outside [0.03, 0.05]");
}

/// The classification Δ-contour at p = 0.05 for n = 300 (δ = 0.01,
/// congruence 0.67, baseline 0.737) must fall in [0.045, 0.075]. Run at
/// 10^5 outer draws so Monte Carlo noise is well inside the band.
#[test]
fn clf_decision_threshold_at_n_300() {
    let spec = GridSpec::new(
        Task::Classification,
        vec![300],
        default_delta_values(),
        DEFAULT_BASELINE,
        ModelParams::Clf(ClfParams {
            congruence_p11: CONGRUENCE,
            delta_a: 0.01,
            delta_b: 0.01,
            outer_samples: 100_000,
            seed: SEED,
            ..ClfParams::default()
        }),
        DEFAULT_THRESHOLD,
    )
    .expect("valid spec");
    let result = run_grid(&spec).expect("sweep");
    let contour = result.contour[0];
    let pass = contour.is_some_and(|d| (0.045..=0.075).contains(&d));
    report(
        "clf_decision_threshold_at_n_300",
        pass,
        &format!("contour at n = 300 is {contour:?}, expected within [0.045, 0.075]"),
    );
    let d = contour.expect("contour crossing at n = 300");
    assert!(
        (0.045..=0.075).contains(&d),
        "contour {d} outside [0.045, 0.075]"
    );
}

/// The four default panels (seg/clf × δ = 0/δ = 0.01) must sweep in under
/// five minutes, and at every n the δ = 0.01 contour must sit at or above
/// the δ = 0 contour, strictly above for n ≥ 100.
#[test]
fn four_panel_sweep_contour_ordering() {
    let start = Instant::now();
    let mut violations: Vec<String> = Vec::new();

    for task in [Task::Segmentation, Task::Classification] {
        let panel = |delta: f64| -> claimcheck::GridResult {
            let params = match task {
                Task::Segmentation => ModelParams::Seg(SegParams {
                    s_a: SPREAD,
                    s_b: SPREAD,
                    r_ab: CORR,
                    delta_a: delta,
                    delta_b: delta,
                }),
                Task::Classification => ModelParams::Clf(ClfParams {
                    congruence_p11: CONGRUENCE,
                    delta_a: delta,
                    delta_b: delta,
                    seed: SEED,
                    ..ClfParams::default()
                }),
            };
            let spec = GridSpec::with_defaults(task, params).expect("valid spec");
            run_grid(&spec).expect("sweep")
        };
        let baseline = panel(0.0);
        let underspec = panel(0.01);
        // A missing contour means the crossing sits above the top of the
        // Δ range, so None compares as "> every in-range value": both
        // missing is vacuous, a missing underspec contour satisfies the
        // ordering, and a missing baseline contour can only violate it.
        for shift in compare_grids(&baseline, &underspec).expect("aligned grids") {
            match (shift.baseline, shift.underspec) {
                (Some(b), Some(u)) => {
                    if u < b {
                        violations.push(format!(
                            "{task} n = {}: underspec contour {u:.6} < baseline {b:.6}",
                            shift.n
                        ));
                    } else if shift.n >= 100 && u <= b {
                        violations.push(format!(
                            "{task} n = {}: no strict shift ({u:.6} vs {b:.6})",
                            shift.n
                        ));
                    }
                }
                (None, Some(u)) => violations.push(format!(
                    "{task} n = {}: underspec contour {u:.6} below an out-of-range baseline",
                    shift.n
                )),
                (_, None) => {}
            }
        }
    }

    let elapsed = start.elapsed().as_secs_f64();
    let pass = violations.is_empty() && elapsed < 300.0;
    let detail = if violations.is_empty() {
        format!("4 default panels in {elapsed:.0}s; shift >= 0 everywhere, strict for n >= 100")
    } else {
        format!(
            "{} violation(s) in {elapsed:.0}s: {}",
            violations.len(),
            violations.join("; ")
        )
    };
    report("four_panel_sweep_contour_ordering", pass, &detail);
    assert!(elapsed < 300.0, "runtime {elapsed:.0}s exceeds the 5min budget");
    assert!(violations.is_empty(), "{detail}");
}

/// Grid-search calibration against 20 reference points generated at
/// s* = 0.197 must recover the planted value within one grid step with
/// SSE below 1e-10, in under 10 seconds.
#[test]
fn calibration_round_trip_recovery() {
    let start = Instant::now();
    let planted = SPREAD;
    let params = SegParams {
        s_a: planted,
        s_b: planted,
        r_ab: CORR,
        delta_a: 0.0,
        delta_b: 0.0,
    };
    let mut refs = Vec::new();
    for &n in &[20u32, 50, 100, 200, 500] {
        for &delta in &[0.005f64, 0.01, 0.02, 0.04] {
            refs.push(ReferencePoint {
                n,
                delta_obs: delta,
                target_prob: Probability::new(seg_prob(delta, 0.0, n, &params))
                    .expect("probability"),
            });
        }
    }
    let spec = CalibrationSpec {
        task: Task::Segmentation,
        s_min: 0.05,
        s_max: 0.50,
        steps: 451,
        fixed: FixedParams::Seg {
            r_ab: CORR,
            delta_a: 0.0,
            delta_b: 0.0,
        },
        refine: false,
    };
    let (s_best, sse) = calibrate_s(&spec, &refs).expect("calibration");
    let step = (spec.s_max - spec.s_min) / f64::from(spec.steps - 1);
    let miss = (s_best - planted).abs();
    let elapsed = start.elapsed().as_secs_f64();
    let pass = miss <= step + 1e-12 && sse < 1e-10 && elapsed < 10.0;
    report(
        "calibration_round_trip_recovery",
        pass,
        &format!(
            "s_best = {s_best:.4} vs planted {planted} (|miss| = {miss:.1e}, step {step:.0e}), sse = {sse:.1e}, {elapsed:.1}s"
        ),
    );
    assert!(miss <= step + 1e-12, "s_best {s_best} misses {planted} by {miss}");
    assert!(sse < 1e-10, "sse {sse} not below 1e-10");
    assert!(elapsed < 10.0, "runtime {elapsed:.1}s exceeds the 10s budget");
}

/// Every artifact of a stochastic sweep and of a batch audit must be
/// byte-identical across --workers 1/2/4 and across repeated runs.
#[test]
fn byte_identical_output_across_worker_counts() {
    let bin = env!("CARGO_BIN_EXE_claimcheck");
    let dir = tempfile::tempdir().expect("tempdir");
    let path = |name: &str| dir.path().join(name);

    let run_grid_cmd = |workers: u32, tag: &str| {
        let status = Command::new(bin)
            .args(["--seed", "42", "--workers", &workers.to_string()])
            .args(["grid", "--task", "clf", "--delta", "0.01"])
            .args(["--out", path(&format!("grid_{tag}.csv")).to_str().unwrap()])
            .args([
                "--contour-out",
                path(&format!("contour_{tag}.csv")).to_str().unwrap(),
            ])
            .args(["--svg", path(&format!("heat_{tag}.svg")).to_str().unwrap()])
            .status()
            .expect("spawn grid run");
        assert!(status.success(), "grid run {tag} failed");
    };
    run_grid_cmd(1, "w1");
    run_grid_cmd(2, "w2");
    run_grid_cmd(4, "w4");
    run_grid_cmd(4, "w4_repeat");

    let audit_input = path("claims.csv");
    fs::write(
        &audit_input,
        "task,mu_a,mu_b,n,spread_or_congruence,delta_a,delta_b\n\
         seg,0.85,0.84,100,0.197,0.01,0.01\n\
         seg,0.91,0.88,500,0.25,0,0\n\
         clf,0.77,0.737,300,0.67,0.01,0.01\n\
         clf,0.8,0.75,150,0.6,0.02,0.01\n\
         clf,0.74,0.73,2000,0.67,0,0\n",
    )
    .expect("write audit input");
    let run_audit_cmd = |workers: u32, tag: &str| {
        let status = Command::new(bin)
            .args(["--seed", "42", "--workers", &workers.to_string()])
            .args(["audit", "--input", audit_input.to_str().unwrap()])
            .args([
                "--output",
                path(&format!("audited_{tag}.csv")).to_str().unwrap(),
            ])
            .status()
            .expect("spawn audit run");
        assert!(status.success(), "audit run {tag} failed");
    };
    run_audit_cmd(1, "w1");
    run_audit_cmd(2, "w2");
    run_audit_cmd(4, "w4");

    let bytes = |name: &str| fs::read(path(name)).expect("read artifact");
    let mut mismatches: Vec<String> = Vec::new();
    for (kind, reference, others) in [
        ("grid csv", "grid_w1.csv", vec!["grid_w2.csv", "grid_w4.csv", "grid_w4_repeat.csv"]),
        (
            "contour csv",
            "contour_w1.csv",
            vec!["contour_w2.csv", "contour_w4.csv", "contour_w4_repeat.csv"],
        ),
        ("svg", "heat_w1.svg", vec!["heat_w2.svg", "heat_w4.svg", "heat_w4_repeat.svg"]),
        ("audit csv", "audited_w1.csv", vec!["audited_w2.csv", "audited_w4.csv"]),
    ] {
        let want = bytes(reference);
        for other in others {
            if bytes(other) != want {
                mismatches.push(format!("{kind}: {other} differs from {reference}"));
            }
        }
    }

    let pass = mismatches.is_empty();
    let detail = if pass {
        "grid/contour/svg identical across --workers 1/2/4 and a repeat run; audit identical across 1/2/4"
            .to_string()
    } else {
        mismatches.join("; ")
    };
    report("byte_identical_output_across_worker_counts", pass, &detail);
    assert!(pass, "{detail}");
}

/// Structural invariants, each over at least 100 sampled configurations:
/// the false-claim probability is strictly decreasing in Δ for both
/// models, non-increasing in n when δ = 0, and swapping the two methods
/// maps p to 1 − p.
#[test]
fn monotonicity_and_symmetry_sweep() {
    let mut violations: Vec<String> = Vec::new();
    let mut max_symmetry_residual = 0.0f64;

    // Strictly decreasing in Δ: 50 segmentation configs...
    let mut rng = Rng::with_stream(SEED, 903);
    for case in 0..50 {
        let params = SegParams {
            s_a: uniform_in(&mut rng, 0.05, 0.40),
            s_b: uniform_in(&mut rng, 0.05, 0.40),
            r_ab: uniform_in(&mut rng, -0.50, 0.95),
            delta_a: if case % 2 == 0 { 0.0 } else { uniform_in(&mut rng, 0.001, 0.03) },
            delta_b: if case % 2 == 0 { 0.0 } else { uniform_in(&mut rng, 0.001, 0.03) },
        };
        let n = uniform_u32(&mut rng, 5, 2000);
        let mut delta = 0.0;
        let mut prev = f64::INFINITY;
        for _ in 0..8 {
            let p = seg_prob(delta, 0.0, n, &params);
            if p >= prev {
                violations.push(format!(
                    "seg case {case}: p not strictly decreasing at delta = {delta:.4} (n = {n})"
                ));
                break;
            }
            prev = p;
            delta += uniform_in(&mut rng, 0.002, 0.01);
        }
    }
    // ...and 50 classification configs on exact-count lattices, where one
    // extra exclusively-correct case is exactly one Δ step of 1/n.
    for case in 0..50 {
        let n = uniform_u32(&mut rng, 60, 600);
        let b = uniform_u32(&mut rng, (n / 20).max(3), 2 * n / 5);
        let mut prev = f64::INFINITY;
        for step in 1..=6 {
            let p = lattice_prob(b + step, b, n);
            if p >= prev {
                violations.push(format!(
                    "clf case {case}: p not strictly decreasing at a = {}, b = {b}, n = {n}",
                    b + step
                ));
                break;
            }
            prev = p;
        }
    }

    // Non-increasing in n at δ = 0: 50 segmentation ladders...
    for case in 0..50 {
        let params = SegParams {
            s_a: uniform_in(&mut rng, 0.05, 0.40),
            s_b: uniform_in(&mut rng, 0.05, 0.40),
            r_ab: uniform_in(&mut rng, -0.50, 0.95),
            delta_a: 0.0,
            delta_b: 0.0,
        };
        let delta = uniform_in(&mut rng, 0.005, 0.05);
        let mut n = uniform_u32(&mut rng, 5, 50);
        let mut prev = f64::INFINITY;
        for _ in 0..6 {
            let p = seg_prob(delta, 0.0, n, &params);
            if p > prev {
                violations.push(format!(
                    "seg case {case}: p increases with n at n = {n} (delta = {delta:.3})"
                ));
                break;
            }
            prev = p;
            n *= 2;
        }
    }
    // ...and 50 classification ladders scaling an exact-count table by
    // t = 1..4, which multiplies every cell while fixing the accuracies.
    for case in 0..50 {
        let n0 = uniform_u32(&mut rng, 50, 200);
        let b = uniform_u32(&mut rng, (n0 / 10).max(3), n0 / 3);
        let a = b + uniform_u32(&mut rng, 1, 6);
        let mut prev = f64::INFINITY;
        for t in 1..=4 {
            let p = lattice_prob(a * t, b * t, n0 * t);
            if p > prev {
                violations.push(format!(
                    "clf case {case}: p increases with n at t = {t} (a = {a}, b = {b}, n0 = {n0})"
                ));
                break;
            }
            prev = p;
        }
    }

    // Swap symmetry p ↔ 1 − p: 50 segmentation configs...
    for case in 0..50 {
        let (s_a, s_b) = (
            uniform_in(&mut rng, 0.05, 0.40),
            uniform_in(&mut rng, 0.05, 0.40),
        );
        let r_ab = uniform_in(&mut rng, -0.50, 0.95);
        let (d_a, d_b) = (
            uniform_in(&mut rng, 0.0, 0.03),
            uniform_in(&mut rng, 0.0, 0.03),
        );
        let n = uniform_u32(&mut rng, 5, 2000);
        let mu_b = uniform_in(&mut rng, 0.50, 0.90);
        let mu_a = mu_b + uniform_in(&mut rng, 0.0, 0.08);
        let forward = seg_prob(
            mu_a,
            mu_b,
            n,
            &SegParams { s_a, s_b, r_ab, delta_a: d_a, delta_b: d_b },
        );
        let swapped = seg_prob(
            mu_b,
            mu_a,
            n,
            &SegParams { s_a: s_b, s_b: s_a, r_ab, delta_a: d_b, delta_b: d_a },
        );
        let residual = (forward + swapped - 1.0).abs();
        max_symmetry_residual = max_symmetry_residual.max(residual);
        if residual > 1e-12 {
            violations.push(format!(
                "seg case {case}: swap residual {residual:.2e} (p = {forward:.6})"
            ));
        }
    }
    // ...and 50 classification configs on lattices, where swapping the
    // accuracies mirrors the imputed table.
    for case in 0..50 {
        let n = uniform_u32(&mut rng, 60, 600);
        let b = uniform_u32(&mut rng, (n / 20).max(3), n / 3);
        let a = b + uniform_u32(&mut rng, 1, 10);
        let forward = lattice_prob(a, b, n);
        let swapped = lattice_prob(b, a, n);
        let residual = (forward + swapped - 1.0).abs();
        max_symmetry_residual = max_symmetry_residual.max(residual);
        if residual > 1e-12 {
            violations.push(format!(
                "clf case {case}: swap residual {residual:.2e} (a = {a}, b = {b}, n = {n})"
            ));
        }
    }

    let pass = violations.is_empty();
    let detail = if pass {
        format!(
            "delta-monotonicity 50 seg + 50 clf, n-monotonicity 50 + 50, swap symmetry 50 + 50 (max residual {max_symmetry_residual:.1e})"
        )
    } else {
        format!("{} violation(s); first: {}", violations.len(), violations[0])
    };
    report("monotonicity_and_symmetry_sweep", pass, &detail);
    assert!(pass, "{detail}");
}
