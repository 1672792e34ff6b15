//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any failed.

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use qutrit_maps::choi::{choi_of, is_completely_positive, least_choi_eigenvalue};
use qutrit_maps::detection::{
    cmc_check, decompose_in_gellmann, map_detects, minor_root, ppt_spectrum, product_expectation,
    weak_optimality_check, witness_value, WitnessOperator,
};
use qutrit_maps::maps::{apply_depolarizing, apply_lambda_alpha, apply_spa, QutritMapSpec};
use qutrit_maps::matrix::{hermitian_eigenvalues, hs_inner, min_eigenvalue};
use qutrit_maps::sampling::{
    random_complex_matrix, random_hermitian, random_product_density, random_pure_state,
};
use qutrit_maps::states::{spa_choi_state, tau_x, DensityMatrix};
use qutrit_maps::{choi::spa_parameters, Complex64, ComplexMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// α_k = k/50, k = 1..=50.
fn alpha_grid() -> Vec<f64> {
    (1..=50).map(|k| k as f64 / 50.0).collect()
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

fn c_lambda(alpha: f64) -> WitnessOperator {
    WitnessOperator::from_choi(&choi_of(&QutritMapSpec::lambda_alpha(alpha).unwrap()).unwrap())
        .unwrap()
}

fn positivity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let alphas = [0.1, 0.25, 0.5, 0.75, 1.0];
    let mut worst = f64::INFINITY;
    for _ in 0..10_000 {
        let p = ComplexMatrix::projector(&random_pure_state(&mut rng, 3));
        for &alpha in &alphas {
            worst = worst.min(min_eigenvalue(&apply_lambda_alpha(alpha, &p).unwrap()).unwrap());
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst >= -1e-12 && elapsed < Duration::from_secs(10),
        format!(
            "min eig {worst:.3e} over 5e4 images, {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn non_complete_positivity() -> Outcome {
    let formula = |a: f64| (1.0 - (1.0 + 4.0 * a * a).sqrt()) / (6.0 + 6.0 * a * a);
    let worst = alpha_grid()
        .into_iter()
        .map(|a| (least_choi_eigenvalue(a).unwrap() - formula(a)).abs())
        .fold(0.0, f64::max);
    let at_one = least_choi_eigenvalue(1.0).unwrap();
    let exact = (1.0 - 5f64.sqrt()) / 12.0;
    outcome(
        worst < 1e-10 && (at_one - exact).abs() < 1e-10 && (at_one + 0.103006).abs() < 1e-6,
        format!("max |λ_min − λ'| = {worst:.2e}; α=1: {at_one:.9}"),
    )
}

fn detection_thresholds() -> Outcome {
    let expected = [
        (0.25, 0.154, 1e-3),
        (0.5, 0.269, 1e-3),
        (1.0, 2f64.sqrt() - 1.0, 1e-9),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (alpha, target, tol) in expected {
        let root = minor_root(alpha).unwrap();
        let map = QutritMapSpec::lambda_alpha(alpha).unwrap();
        let below = map_detects(&map, &tau_x(root - 0.01).unwrap()).unwrap().0;
        let above = map_detects(&map, &tau_x(root + 0.01).unwrap()).unwrap().0;
        pass &= (root - target).abs() <= tol && below && !above;
        parts.push(format!(
            "α={alpha}: root {root:.10}, detects below {below}, above {above}"
        ));
    }
    outcome(pass, parts.join("; "))
}

fn dual_map() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for &alpha in &[0.1, 0.25, 0.5, 0.75, 1.0] {
        let map = QutritMapSpec::lambda_alpha(alpha).unwrap();
        let dual = QutritMapSpec::lambda_alpha_dual(alpha).unwrap();
        for _ in 0..100 {
            let x = random_hermitian(&mut rng, 3);
            let y = random_hermitian(&mut rng, 3);
            let lhs = hs_inner(&dual.apply(&x).unwrap(), &y).unwrap();
            let rhs = hs_inner(&x, &map.apply(&y).unwrap()).unwrap();
            worst = worst.max((lhs - rhs).norm());
        }
    }
    let dual = QutritMapSpec::lambda_alpha_dual(1.0).unwrap();
    let verdict = |x: f64| map_detects(&dual, &tau_x(x).unwrap()).unwrap();
    let detected: Vec<(f64, bool, f64)> = [2.0, 2.5, 3.0, 10.0]
        .into_iter()
        .map(|x| {
            let (d, m) = verdict(x);
            (x, d, m)
        })
        .collect();
    let pass = worst < 1e-12 && !detected[0].1 && detected[1..].iter().all(|d| d.1);
    let shown: Vec<String> = detected
        .iter()
        .map(|(x, d, m)| format!("x={x}: {d} ({m:.2e})"))
        .collect();
    outcome(
        pass,
        format!("duality residual {worst:.2e}; {}", shown.join(", ")),
    )
}

fn witness() -> Outcome {
    let w = c_lambda(1.0);
    let mut worst: f64 = 0.0;
    let mut signs_ok = true;
    for x in linspace(0.1, 10.0, 50) {
        let value = witness_value(&w, &tau_x(x).unwrap()).unwrap();
        let closed = (3.0 - x) / (18.0 * (x * x + x + 1.0));
        worst = worst.max((value - closed).abs());
        signs_ok &= (value < 0.0) == (x > 3.0);
    }
    let at_three = witness_value(&w, &tau_x(3.0).unwrap()).unwrap();
    let eps = 1e-6;
    signs_ok &= witness_value(&w, &tau_x(3.0 - eps).unwrap()).unwrap() > 0.0;
    signs_ok &= witness_value(&w, &tau_x(3.0 + eps).unwrap()).unwrap() < 0.0;
    let u = vec![Complex64::new(1.0 / 3f64.sqrt(), 0.0); 3];
    let at_uniform = product_expectation(&w.matrix, &u, &u);
    let search = weak_optimality_check(&w);
    outcome(
        worst < 1e-12 && signs_ok && at_three.abs() < 1e-12 && at_uniform.abs() < 1e-12 && search.found,
        format!(
            "max residual {worst:.2e}; Tr[Wτ_3] = {at_three:.1e}; ⟨γδ|W|γδ⟩ at uniform = {at_uniform:.1e}; search min {:.1e}",
            search.value
        ),
    )
}

fn gell_mann() -> Outcome {
    let c1 = c_lambda(1.0).matrix;
    let coeffs = decompose_in_gellmann(&c1).unwrap();
    let residual = coeffs.reconstruct().max_abs_diff(&c1);
    let r3 = 4.0 * 3f64.sqrt();
    let reference: [(usize, usize, f64); 10] = [
        (1, 1, 1.0 / 3.0),
        (2, 2, -1.0 / 6.0),
        (3, 3, 1.0 / 6.0),
        (4, 9, -1.0 / r3),
        (5, 5, -1.0 / 6.0),
        (6, 6, 1.0 / 6.0),
        (7, 7, -1.0 / 6.0),
        (8, 8, -1.0 / 6.0),
        (9, 4, 1.0 / r3),
        (9, 9, 1.0 / 12.0),
    ];
    println!("    G_i ⊗ G_j coefficients of C_Λ1 (computed vs reference):");
    let mut mismatches = 0;
    let mut keys: Vec<(usize, usize)> = coeffs
        .nonzero_terms(1e-14)
        .iter()
        .map(|t| (t.0, t.1))
        .collect();
    keys.extend(reference.iter().map(|t| (t.0, t.1)));
    keys.sort_unstable();
    keys.dedup();
    for (i, j) in keys {
        let ours = coeffs.c[i - 1][j - 1];
        let theirs = reference
            .iter()
            .find(|t| (t.0, t.1) == (i, j))
            .map_or(0.0, |t| t.2);
        let flag = if (ours - theirs).abs() > 1e-12 {
            mismatches += 1;
            "differs"
        } else {
            "ok"
        };
        println!("    c[{i},{j}] = {ours:+.12}  reference {theirs:+.12}  {flag}");
    }
    outcome(
        residual < 1e-12,
        format!("reconstruction residual {residual:.2e}; {mismatches} coefficient(s) differ from the reference table (reported only)"),
    )
}

fn spa() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut mixture: f64 = 0.0;
    let mut choi_gap: f64 = 0.0;
    let mut all_cp = true;
    for alpha in alpha_grid() {
        let p = spa_parameters(alpha).unwrap().p_star;
        for _ in 0..20 {
            let x = random_complex_matrix(&mut rng, 3);
            let expected = &apply_depolarizing(3, &x).unwrap().scale(p)
                + &apply_lambda_alpha(alpha, &x).unwrap().scale(1.0 - p);
            mixture = mixture.max((&apply_spa(alpha, &x).unwrap() - &expected).frobenius_norm());
        }
        let spec = QutritMapSpec::spa(alpha).unwrap();
        let choi = choi_of(&spec).unwrap().matrix;
        choi_gap = choi_gap.max(choi.max_abs_diff(spa_choi_state(alpha).unwrap().matrix()));
        all_cp &= is_completely_positive(&spec).unwrap().0;
    }
    outcome(
        mixture < 1e-12 && choi_gap < 1e-12 && all_cp,
        format!("mixture residual {mixture:.2e}; Choi entrywise gap {choi_gap:.2e}; CP on all 50 α: {all_cp}"),
    )
}

fn ppt_boundary() -> Outcome {
    let bad: Vec<(f64, usize)> = linspace(0.02, 0.99, 50)
        .into_iter()
        .map(|a| {
            (
                a,
                ppt_spectrum(&spa_choi_state(a).unwrap())
                    .unwrap()
                    .count_below(-1e-10),
            )
        })
        .filter(|&(_, n)| n != 1)
        .collect();
    let at_one = ppt_spectrum(&spa_choi_state(1.0).unwrap()).unwrap().min();
    outcome(
        bad.is_empty() && at_one >= -1e-10,
        format!("α with ≠1 negative eigenvalue: {bad:?}; min at α=1: {at_one:.2e}"),
    )
}

fn cmc() -> Outcome {
    let reports: Vec<(f64, f64)> = alpha_grid()
        .into_iter()
        .map(|a| (a, cmc_check(&spa_choi_state(a).unwrap()).unwrap().margin()))
        .collect();
    let missed: Vec<f64> = reports
        .iter()
        .filter(|r| r.1 <= 1e-12)
        .map(|r| r.0)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let false_alarms = (0..1000)
        .filter(|_| {
            let rho = DensityMatrix::two_qutrit(random_product_density(&mut rng, 3, 3)).unwrap();
            cmc_check(&rho).unwrap().violated
        })
        .count();
    let margin_at = |a: f64| reports.iter().find(|r| (r.0 - a).abs() < 1e-12).unwrap().1;
    outcome(
        missed.is_empty() && false_alarms == 0,
        format!(
            "not violated at {} of 50 α (largest {:?}); margin at α=0.02 {:+.4}, α=1 {:+.4}; {false_alarms} false alarms on 1000 product states",
            missed.len(),
            missed.last(),
            margin_at(0.02),
            margin_at(1.0)
        ),
    )
}

fn baseline_non_detection() -> Outcome {
    let choi = QutritMapSpec::choi_map();
    let mo = QutritMapSpec::miller_olkiewicz();
    let mut min_choi = f64::INFINITY;
    let mut min_mo = f64::INFINITY;
    let mut any = false;
    for alpha in alpha_grid() {
        let rho = spa_choi_state(alpha).unwrap();
        let (d1, m1) = map_detects(&choi, &rho).unwrap();
        let (d2, m2) = map_detects(&mo, &rho).unwrap();
        any |= d1 || d2;
        min_choi = min_choi.min(m1);
        min_mo = min_mo.min(m2);
    }
    outcome(
        !any,
        format!("min eig under Choi map {min_choi:.3e}, under Miller-Olkiewicz {min_mo:.3e}"),
    )
}

/// Eigenvalues through nalgebra's symmetric QR solver on the real embedding
/// [[Re, −Im], [Im, Re]], which doubles each eigenvalue of H.
fn qr_oracle(h: &ComplexMatrix) -> Vec<f64> {
    let n = h.dim();
    let m = DMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let z = h[(r % n, c % n)];
        match (r < n, c < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let h = random_hermitian(&mut rng, 9);
        let ours = hermitian_eigenvalues(&h).unwrap();
        for (a, b) in ours.eigenvalues().iter().zip(qr_oracle(&h)) {
            worst = worst.max((a - b).abs());
        }
    }
    outcome(
        worst < 1e-8,
        format!("max eigenvalue gap {worst:.2e} on 100 random 9×9"),
    )
}

fn cli(args: &[&str]) -> std::process::Output {
    let out = Command::new(env!("CARGO_BIN_EXE_qutrit-maps"))
        .args(args)
        .output()
        .expect("spawn cli");
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn cli_determinism() -> Outcome {
    let mut identical = true;
    for cmd in ["scan-minor", "spa-spectrum", "cmc-scan"] {
        for format in ["csv", "json"] {
            let a = cli(&[cmd, "--format", format]).stdout;
            let b = cli(&[cmd, "--format", format]).stdout;
            identical &= !a.is_empty() && a == b;
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tau4.json");
    cli(&[
        "export",
        "--family",
        "tau-x",
        "--parameter",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    let report: Value =
        serde_json::from_slice(&cli(&["detect", path.to_str().unwrap()]).stdout).unwrap();
    let value = report["witness_values"][0]["value"].as_f64().unwrap();
    let ppt_min = report["ppt_min_eig"].as_f64().unwrap();
    outcome(
        identical && value < 0.0 && ppt_min >= -1e-10 && report["npt"] == false,
        format!(
            "byte-identical reruns: {identical}; τ_4 witness {value:.6e}, PT min eig {ppt_min:.2e}"
        ),
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("positivity", positivity),
        ("non-complete-positivity", non_complete_positivity),
        ("detection thresholds", detection_thresholds),
        ("dual map", dual_map),
        ("witness", witness),
        ("gell-mann decomposition", gell_mann),
        ("spa", spa),
        ("ppt boundary", ppt_boundary),
        ("covariance matrix criterion", cmc),
        ("baseline non-detection", baseline_non_detection),
        ("eigen oracle equivalence", oracle_equivalence),
        ("cli", cli_determinism),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let n = k + 1;
        let result = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| outcome(false, "panicked"));
        let status = if result.pass { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {status} {name}: {}", result.detail);
        if !result.pass {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 12 criteria pass");
    } else {
        println!(
            "acceptance: {} of 12 criteria fail: {failed:?}",
            failed.len()
        );
        std::process::exit(1);
    }
}
