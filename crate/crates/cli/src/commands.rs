use std::fmt;
use std::fs::OpenOptions;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use phasemask_core::io::{format_matrix, read_matrix, write_matrix, FileError, MatrixFile};
use phasemask_core::random::{complex_normal_matrix, rng_for, uniform_angle_matrix};
use phasemask_core::{
    det_lu, det_structured, inverse_lu, inverse_structured, penrose_check, pinv_full_rank, pinv_structured,
    run_benchmark, run_verification, AngleMatrix, BenchConfig, Complex64, DenseMatrix, Error, SuiteSelection,
    ToleranceConfig,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Verification(m) | CliError::Numerical(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        match e {
            FileError::Matrix(inner) => inner.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// `1+0j`, `0.5-2j`: shortest round-trip decimals.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}j", z.re, sign, z.im.abs())
}

/// `0` for exact zero, scientific notation otherwise.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:e}")
    }
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub fn generate(rows: usize, cols: usize, seed: u64, angle: bool, out: Option<&Path>) -> Result<(), CliError> {
    let mut rng = rng_for(seed, 0);
    let value = if angle {
        MatrixFile::Angle(uniform_angle_matrix(&mut rng, rows, cols)?)
    } else {
        MatrixFile::Dense(complex_normal_matrix(&mut rng, rows, cols)?)
    };
    write_or_print(out, &format_matrix(&value))
}

fn load_pair(matrix: &Path, angle: &Path) -> Result<(DenseMatrix, AngleMatrix), CliError> {
    let a = read_matrix(matrix)?.into_dense()?;
    let t = read_matrix(angle)?.into_angle()?;
    Ok((a, t))
}

pub fn determinant(matrix: &Path, angle: &Path) -> Result<(), CliError> {
    let (a, t) = load_pair(matrix, angle)?;
    let structured = det_structured(&a, &t)?;
    let oracle = det_lu(&a.hadamard_product(&t.materialize())?)?;
    println!("structured: {}", format_complex(structured));
    println!("lu_oracle: {}", format_complex(oracle));
    println!("difference: {}", format_real((structured - oracle).norm()));
    Ok(())
}

#[derive(Debug, Clone, Copy)]
pub enum SolveKind {
    Inverse,
    Pseudoinverse,
}

/// `<dir>/<stem>.oracle.json` unless given explicitly.
pub fn oracle_path(out: &Path, explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.oracle.json"))
}

pub fn solve(
    kind: SolveKind,
    matrix: &Path,
    angle: &Path,
    out: &Path,
    oracle_out: Option<PathBuf>,
) -> Result<(), CliError> {
    let tol = ToleranceConfig::default();
    let (a, t) = load_pair(matrix, angle)?;
    let structured = match kind {
        SolveKind::Inverse => inverse_structured(&a, &t, &tol)?,
        SolveKind::Pseudoinverse => pinv_structured(&a, &t, &tol)?,
    };
    write_matrix(out, &MatrixFile::Dense(structured.clone()))?;
    println!("structured: {}", out.display());

    let Some(oracle_out) = oracle_out else {
        return Ok(());
    };
    let masked = a.hadamard_product(&t.materialize())?;
    let naive = match kind {
        SolveKind::Inverse => inverse_lu(&masked, &tol)?,
        SolveKind::Pseudoinverse => pinv_full_rank(&masked, &tol)?,
    };
    write_matrix(&oracle_out, &MatrixFile::Dense(naive.clone()))?;
    println!("oracle: {}", oracle_out.display());
    println!("difference_fro: {:e}", structured.frobenius_distance(&naive)?);
    println!("difference_max: {:e}", structured.max_abs_diff(&naive)?);
    let penrose = penrose_check(&masked, &structured, &tol)?;
    println!(
        "penrose: r1={:e} r2={:e} r3={:e} r4={:e} threshold={:e} pass={}",
        penrose.r1, penrose.r2, penrose.r3, penrose.r4, penrose.threshold, penrose.pass
    );
    if !penrose.pass {
        return Err(CliError::Verification("structured result fails the Penrose conditions".into()));
    }
    Ok(())
}

pub fn verify(suite: &str, trials: Option<usize>, seed: u64, out: Option<&Path>) -> Result<(), CliError> {
    let selection: SuiteSelection = suite.parse().map_err(|e: Error| CliError::Usage(e.to_string()))?;
    let command = format!(
        "verify --suite {selection} --trials {} --seed {seed}",
        trials.map_or_else(|| "default".to_string(), |t| t.to_string())
    );
    let tol = ToleranceConfig::default();
    let report = run_verification(selection, trials, seed, &tol, command);
    for s in &report.suites {
        eprintln!("{} {} ({} trials)", if s.pass { "PASS" } else { "FAIL" }, s.suite, s.trials);
        for c in s.checks.iter().filter(|c| !c.pass) {
            eprintln!(
                "  {}: {} of {} failed, worst residual {:e} vs {:e}",
                c.name, c.failures, c.evaluations, c.worst_residual, c.worst_tolerance
            );
        }
    }
    write_or_print(out, &report.to_json())?;
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Verification("verification failed".into()))
    }
}

pub fn bench(
    rows: usize,
    cols: usize,
    updates: usize,
    seed: u64,
    cap: usize,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let mut config = BenchConfig::new(rows, cols, updates, seed);
    config.dimension_cap = cap;
    let record = run_benchmark(&config).map_err(|e| match e {
        Error::Config(m) => CliError::Usage(m),
        e => e.into(),
    })?;
    let row = record.csv_row();
    match out {
        Some(path) => {
            let mut file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            if file.metadata()?.len() == 0 {
                writeln!(file, "{}", phasemask_core::BenchRecord::CSV_HEADER)?;
            }
            writeln!(file, "{row}")?;
        }
        None => {
            println!("{}", phasemask_core::BenchRecord::CSV_HEADER);
            println!("{row}");
        }
    }
    eprintln!(
        "structured {:.0} ns/update, naive {:.0} ns/update, speedup {:.1}x, max residual {:e} (tolerance {:e})",
        record.structured_ns_per_update,
        record.naive_ns_per_update,
        record.speedup(),
        record.max_residual,
        record.residual_tolerance
    );
    if record.pass {
        Ok(())
    } else {
        Err(CliError::Verification("cross-check residual exceeded tolerance".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_formatting() {
        assert_eq!(format_complex(Complex64::new(1.0, 0.0)), "1+0j");
        assert_eq!(format_complex(Complex64::new(0.5, -2.0)), "0.5-2j");
        assert_eq!(format_complex(Complex64::new(-6.0, 0.0)), "-6+0j");
        assert_eq!(format_real(0.0), "0");
        assert_eq!(format_real(1.5e-14), "1.5e-14");
    }

    #[test]
    fn oracle_path_default() {
        assert_eq!(oracle_path(Path::new("/tmp/x/inv.json"), None), PathBuf::from("/tmp/x/inv.oracle.json"));
        assert_eq!(oracle_path(Path::new("a.json"), Some(Path::new("b.json"))), PathBuf::from("b.json"));
    }

    #[test]
    fn error_exit_codes() {
        let singular: CliError = Error::Singular { pivot: 0.0, threshold: 1.0 }.into();
        assert_eq!(singular.exit_code(), 3);
        let shape: CliError = Error::NotSquare { op: "x", rows: 1, cols: 2 }.into();
        assert_eq!(shape.exit_code(), 2);
        assert_eq!(CliError::Verification(String::new()).exit_code(), 1);
    }
}
