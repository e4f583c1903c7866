//! Acceptance criteria. Each criterion prints one PASS/FAIL line with its
//! worst observed residual-to-tolerance ratio and runtime; any failure
//! makes the process exit non-zero.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use phasemask_core::engine::BenchConfig;
use phasemask_core::random::{rng_for, uniform_angle_matrix, well_conditioned};
use phasemask_core::{
    det_lu, det_structured, gram_hadamard_factorization, inverse_adjugate_structured, inverse_lu,
    inverse_structured, inverse_structured_transposed, penrose_check, pinv_full_rank, pinv_structured,
    run_benchmark, AngleMatrix, Complex64, DenseMatrix, GramSide, ToleranceConfig, DEFAULT_ADJUGATE_CAP,
};
use rand::Rng;

/// Worst `residual / tolerance` across a criterion, plus free-form notes.
struct Outcome {
    worst_ratio: f64,
    ok: bool,
    note: String,
}

impl Outcome {
    fn new() -> Self {
        Self {
            worst_ratio: 0.0,
            ok: true,
            note: String::new(),
        }
    }

    fn check(&mut self, residual: f64, tolerance: f64) {
        let ratio = residual / tolerance;
        // NaN residuals fail.
        self.ok &= residual <= tolerance;
        if ratio.is_nan() || ratio > self.worst_ratio {
            self.worst_ratio = ratio;
        }
    }

    fn require(&mut self, cond: bool, what: &str) {
        if !cond {
            self.ok = false;
            self.note.push_str(what);
            self.note.push_str("; ");
        }
    }
}

type Criterion = fn(&ToleranceConfig) -> Outcome;

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn rng(criterion: u64, trial: usize) -> rand_chacha::ChaCha8Rng {
    rng_for(0xACCE_0000 + criterion, trial as u64)
}

fn ac1_lemma1(_: &ToleranceConfig) -> Outcome {
    let mut out = Outcome::new();
    for trial in 0..100 {
        let mut r = rng(1, trial);
        let (m, n) = (r.random_range(1..=16), r.random_range(1..=16));
        let t = uniform_angle_matrix(&mut r, m, n).unwrap();
        let dev = t.hadamard_inverse_transpose().max_abs_diff(&t.hermitian().materialize()).unwrap();
        out.check(dev, 1e-14);
    }
    out
}

fn ac2_lemma2(tol: &ToleranceConfig) -> Outcome {
    let mut out = Outcome::new();
    for trial in 0..100 {
        let mut r = rng(2, trial);
        let n = r.random_range(1..=16);
        let (a, _) = well_conditioned(&mut r, n, n, tol).unwrap();
        let t = uniform_angle_matrix(&mut r, n, n).unwrap();
        let s = det_structured(&a, &t).unwrap();
        let d = det_lu(&a.hadamard_product(&t.materialize()).unwrap()).unwrap();
        out.check((s - d).norm(), 1e-10 * (1.0 + det_lu(&a).unwrap().norm()));
    }
    out
}

fn ac3_lemma3(_: &ToleranceConfig) -> Outcome {
    let mut out = Outcome::new();
    for trial in 0..100 {
        let mut r = rng(3, trial);
        let (m, n) = (r.random_range(1..=64), r.random_range(1..=64));
        let t = uniform_angle_matrix(&mut r, m, n).unwrap();
        let d = t.materialize();
        let dh = d.conjugate_transpose();
        let left = dh.matmul(&d).unwrap();
        let right = d.matmul(&dh).unwrap();
        let (sl, gl) = t.gram(GramSide::Left);
        let (sr, gr) = t.gram(GramSide::Right);
        let scaled = |g: &AngleMatrix, s: usize| g.materialize().scale(Complex64::new(s as f64, 0.0));
        out.check(left.max_abs_diff(&scaled(&gl, sl)).unwrap(), sl as f64 * 1e-13);
        out.check(right.max_abs_diff(&scaled(&gr, sr)).unwrap(), sr as f64 * 1e-13);
        let mn = (m * n) as f64;
        let triple = left.matmul(&dh).unwrap();
        let expect = t.hermitian().materialize().scale(Complex64::new(mn, 0.0));
        out.check(triple.max_abs_diff(&expect).unwrap(), mn * 1e-13);
    }
    // Θ^HΘ = [[2, 2e^{j(φ2−φ1)}], [2e^{j(φ1−φ2)}, 2]]: every entry has modulus 2.
    let t = AngleMatrix::new(vec![0.0, FRAC_PI_2], vec![0.0, PI]).unwrap();
    let d = t.materialize();
    let g = d.conjugate_transpose().matmul(&d).unwrap();
    let ulp_scale = 4.0 * f64::EPSILON * 2.0;
    for z in g.data() {
        out.check((z.norm() - 2.0).abs(), ulp_scale);
    }
    let phase = |p: f64| Complex64::from_polar(2.0, p);
    out.check((g.get(0, 1) - phase(PI - 0.0)).norm(), ulp_scale);
    out.check((g.get(1, 0) - phase(0.0 - PI)).norm(), ulp_scale);
    out.check((g.get(0, 0) - 2.0).norm(), ulp_scale);
    out
}

fn ac4_thm1(tol: &ToleranceConfig) -> Outcome {
    let mut out = Outcome::new();
    for trial in 0..200 {
        let mut r = rng(4, trial);
        let n = r.random_range(1..=32);
        let (a, proxy) = well_conditioned(&mut r, n, n, tol).unwrap();
        out.require(proxy <= 1e6, "condition proxy above 1e6");
        let t = uniform_angle_matrix(&mut r, n, n).unwrap();
        let masked = a.hadamard_product(&t.materialize()).unwrap();
        let x = inverse_structured(&a, &t, tol).unwrap();
        let bound = 1e-8 * n as f64;
        out.check(x.matmul(&masked).unwrap().identity_residual().unwrap(), bound);
        out.check(masked.matmul(&x).unwrap().identity_residual().unwrap(), bound);
        let oracle = inverse_lu(&masked, tol).unwrap();
        out.check(x.frobenius_distance(&oracle).unwrap(), bound);
    }
    out
}

fn ac5_adjugate(tol: &ToleranceConfig) -> Outcome {
    let mut out = Outcome::new();
    for n in 1..=4 {
        for trial in 0..50 {
            let mut r = rng(50 + n as u64, trial);
            let (a, _) = well_conditioned(&mut r, n, n, tol).unwrap();
            let t = uniform_angle_matrix(&mut r, n, n).unwrap();
            let adj = inverse_adjugate_structured(&a, &t, tol, DEFAULT_ADJUGATE_CAP).unwrap();
            let x = inverse_structured(&a, &t, tol).unwrap();
            out.check(adj.max_abs_diff(&x).unwrap(), 1e-10);
        }
    }
    out
}

fn ac6_corollary(tol: &ToleranceConfig) -> Outcome {
    let mut out = Outcome::new();
    for trial in 0..100 {
        let mut r = rng(6, trial);
        let n = r.random_range(1..=16);
        let (a, _) = well_conditioned(&mut r, n, n, tol).unwrap();
        let t = uniform_angle_matrix(&mut r, n, n).unwrap();
        let s = inverse_structured_transposed(&a, &t, tol).unwrap();
        let oracle = inverse_lu(&a.hadamard_product(&t.materialize().transpose()).unwrap(), tol).unwrap();
        out.check(s.frobenius_distance(&oracle).unwrap(), 1e-8 * n as f64);
    }
    out
}

fn ac7_thm2(tol: &ToleranceConfig) -> Outcome {
    let mut out = Outcome::new();
    let mut shapes = [0usize; 3];
    for trial in 0..200 {
        let mut r = rng(7, trial);
        let class = trial % 3;
        let (m, n) = match class {
            0 => {
                let m = r.random_range(2..=24);
                (m, r.random_range(1..m))
            }
            1 => {
                let n = r.random_range(1..=24);
                (n, n)
            }
            _ => {
                let n = r.random_range(2..=24);
                (r.random_range(1..n), n)
            }
        };
        shapes[match m.cmp(&n) {
            std::cmp::Ordering::Greater => 0,
            std::cmp::Ordering::Equal => 1,
            std::cmp::Ordering::Less => 2,
        }] += 1;
        let (a, proxy) = well_conditioned(&mut r, m, n, tol).unwrap();
        out.require(proxy <= 1e6, "condition proxy above 1e6");
        let t = uniform_angle_matrix(&mut r, m, n).unwrap();
        let masked = a.hadamard_product(&t.materialize()).unwrap();
        let x = pinv_structured(&a, &t, tol).unwrap();

        let report = penrose_check(&masked, &x, tol).unwrap();
        let penrose_bound = 1e-8 * (1.0 + a.frobenius_norm());
        for res in [report.r1, report.r2, report.r3, report.r4] {
            out.check(res, penrose_bound);
        }
        let a_pinv = pinv_full_rank(&a, tol).unwrap();
        let oracle = pinv_full_rank(&masked, tol).unwrap();
        out.check(x.frobenius_distance(&oracle).unwrap(), 1e-8 * (1.0 + a_pinv.frobenius_norm()));

        let f = gram_hadamard_factorization(&a, &t).unwrap();
        let dense_gram = masked.conjugate_transpose().matmul(&masked).unwrap();
        out.check(dense_gram.max_abs_diff(&f.product()).unwrap(), 1e-12 * (m * n) as f64);
    }
    out.require(shapes.iter().all(|&c| c > 0), "not every shape class was exercised");
    out.note.push_str(&format!("tall/square/wide = {}/{}/{}", shapes[0], shapes[1], shapes[2]));
    out
}

fn ac8_engine(tol: &ToleranceConfig) -> Outcome {
    let mut out = Outcome::new();
    let mut config = BenchConfig::new(256, 256, 100, 8);
    config.tol = *tol;
    let record = run_benchmark(&config).unwrap();
    out.check(record.max_residual, 1e-8 * 256.0);
    out.require(record.pass, "benchmark cross-check failed");
    out.require(
        record.structured_ns_per_update < record.naive_ns_per_update,
        "structured update not faster than naive",
    );
    out.note = format!(
        "structured {:.0} ns, naive {:.0} ns, speedup {:.1}x",
        record.structured_ns_per_update,
        record.naive_ns_per_update,
        record.speedup()
    );
    out
}

fn ac9_counterexample(tol: &ToleranceConfig) -> Outcome {
    let mut out = Outcome::new();
    // M has modulus-2 entries and rank two.
    let a = DenseMatrix::from_real_rows(&[[2.0, 1.0], [1.0, 1.0]]).unwrap();
    let mask = DenseMatrix::from_real_rows(&[[1.0, 1.0], [1.0, 2.0]]).unwrap();
    let direct = inverse_lu(&a.hadamard_product(&mask).unwrap(), tol).unwrap();
    let guess = inverse_lu(&a, tol)
        .unwrap()
        .hadamard_product(&mask.hadamard_inverse(tol.entry_eps).unwrap().transpose())
        .unwrap();
    let gap = direct.frobenius_distance(&guess).unwrap();
    out.require(gap > 1e-2, "mask counterexample unexpectedly satisfied the identity");
    out.worst_ratio = 1e-2 / gap;
    out.note = format!("residual {gap:.6}");
    out
}

fn strip_wall_time(report: &[u8]) -> String {
    String::from_utf8_lossy(report)
        .lines()
        .filter(|l| !l.contains("\"wall_time_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn ac10_cli_determinism(_: &ToleranceConfig) -> Outcome {
    let mut out = Outcome::new();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_phasemask"))
            .args(["verify", "--suite", "all", "--seed", "7"])
            .output()
            .expect("phasemask runs")
    };
    let (first, second) = (run(), run());
    out.require(first.status.code() == Some(0), "first run exit code not 0");
    out.require(second.status.code() == Some(0), "second run exit code not 0");
    out.require(!first.stdout.is_empty(), "empty report");
    out.require(
        strip_wall_time(&first.stdout) == strip_wall_time(&second.stdout),
        "reports differ beyond wall-time fields",
    );
    out
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion, Duration); 10] = [
        ("AC1  angle inverse-transpose equals Hermitian", ac1_lemma1, Duration::from_secs(1)),
        ("AC2  determinant identity", ac2_lemma2, Duration::from_secs(2)),
        ("AC3  Gram and triple products", ac3_lemma3, Duration::from_secs(5)),
        ("AC4  structured inverse", ac4_thm1, Duration::from_secs(10)),
        ("AC5  cofactor oracle equivalence", ac5_adjugate, Duration::from_secs(1)),
        ("AC6  transposed-mask inverse", ac6_corollary, Duration::from_secs(2)),
        ("AC7  structured pseudoinverse", ac7_thm2, Duration::from_secs(15)),
        ("AC8  phase-update engine n=256", ac8_engine, Duration::from_secs(60)),
        ("AC9  non-angle mask counterexample", ac9_counterexample, Duration::from_secs(1)),
        ("AC10 CLI verify determinism", ac10_cli_determinism, Duration::from_secs(60)),
    ];
    let tol = tol();
    let mut failures = 0;
    println!("\nrunning {} acceptance criteria", criteria.len());
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let mut outcome = f(&tol);
        let elapsed = start.elapsed();
        outcome.require(elapsed < limit, &format!("runtime limit {limit:?} exceeded"));
        let verdict = if outcome.ok { "PASS" } else { "FAIL" };
        if !outcome.ok {
            failures += 1;
        }
        println!(
            "[{verdict}] {name}: worst ratio {:.3e}, {:.3}s / {}s{}{}",
            outcome.worst_ratio,
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if outcome.note.is_empty() { "" } else { ", " },
            outcome.note
        );
    }
    println!("acceptance: {} passed, {} failed\n", criteria.len() - failures, failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
