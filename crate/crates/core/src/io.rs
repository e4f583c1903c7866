//! Text file format for dense and angle matrices.
//!
//! Files are JSON objects tagged by `kind`:
//!
//! ```text
//! {"kind": "dense", "rows": 2, "cols": 1, "data": [[1.0, 0.0], [0.0, -1.5]]}
//! {"kind": "angle", "theta": [0.0, 1.5707963267948966], "phi": [0.0]}
//! ```
//!
//! `data` is row-major `[re, im]` pairs. Numbers are written in the
//! shortest decimal form that parses back to the same `f64`, so a
//! write/read cycle is bit-exact (including the sign of zero).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::angle::AngleMatrix;
use crate::error::Error as MatrixError;
use crate::matrix::DenseMatrix;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("field `{field}`: {message}")]
    Field { field: &'static str, message: String },

    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Contents of a matrix file.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixFile {
    Dense(DenseMatrix),
    Angle(AngleMatrix),
}

impl MatrixFile {
    pub fn kind(&self) -> &'static str {
        match self {
            MatrixFile::Dense(_) => "dense",
            MatrixFile::Angle(_) => "angle",
        }
    }

    pub fn into_dense(self) -> Result<DenseMatrix, FileError> {
        match self {
            MatrixFile::Dense(m) => Ok(m),
            MatrixFile::Angle(_) => Err(FileError::Field {
                field: "kind",
                message: "expected `dense`, found `angle`".into(),
            }),
        }
    }

    pub fn into_angle(self) -> Result<AngleMatrix, FileError> {
        match self {
            MatrixFile::Angle(t) => Ok(t),
            MatrixFile::Dense(_) => Err(FileError::Field {
                field: "kind",
                message: "expected `angle`, found `dense`".into(),
            }),
        }
    }
}

impl From<DenseMatrix> for MatrixFile {
    fn from(m: DenseMatrix) -> Self {
        MatrixFile::Dense(m)
    }
}

impl From<AngleMatrix> for MatrixFile {
    fn from(t: AngleMatrix) -> Self {
        MatrixFile::Angle(t)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    kind: Option<String>,
    rows: Option<usize>,
    cols: Option<usize>,
    data: Option<Vec<[f64; 2]>>,
    theta: Option<Vec<f64>>,
    phi: Option<Vec<f64>>,
}

fn missing(field: &'static str) -> FileError {
    FileError::Field {
        field,
        message: "missing".into(),
    }
}

fn unexpected(field: &'static str, kind: &str) -> FileError {
    FileError::Field {
        field,
        message: format!("not allowed for kind `{kind}`"),
    }
}

/// Parses file contents.
pub fn parse_matrix(text: &str) -> Result<MatrixFile, FileError> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| FileError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let kind = raw.kind.ok_or_else(|| missing("kind"))?;
    match kind.as_str() {
        "dense" => {
            if raw.theta.is_some() {
                return Err(unexpected("theta", &kind));
            }
            if raw.phi.is_some() {
                return Err(unexpected("phi", &kind));
            }
            let rows = raw.rows.ok_or_else(|| missing("rows"))?;
            let cols = raw.cols.ok_or_else(|| missing("cols"))?;
            let data = raw.data.ok_or_else(|| missing("data"))?;
            if rows == 0 || cols == 0 {
                return Err(FileError::Field {
                    field: if rows == 0 { "rows" } else { "cols" },
                    message: "must be positive".into(),
                });
            }
            if data.len() != rows * cols {
                return Err(FileError::Field {
                    field: "data",
                    message: format!("{} entries, expected rows*cols = {}", data.len(), rows * cols),
                });
            }
            let data = data.into_iter().map(|[re, im]| Complex64::new(re, im)).collect();
            Ok(MatrixFile::Dense(DenseMatrix::from_vec(rows, cols, data)?))
        }
        "angle" => {
            for (field, present) in [("rows", raw.rows.is_some()), ("cols", raw.cols.is_some()), ("data", raw.data.is_some())] {
                if present {
                    return Err(unexpected(field, &kind));
                }
            }
            let theta = raw.theta.ok_or_else(|| missing("theta"))?;
            let phi = raw.phi.ok_or_else(|| missing("phi"))?;
            if theta.is_empty() {
                return Err(FileError::Field {
                    field: "theta",
                    message: "must be non-empty".into(),
                });
            }
            if phi.is_empty() {
                return Err(FileError::Field {
                    field: "phi",
                    message: "must be non-empty".into(),
                });
            }
            Ok(MatrixFile::Angle(AngleMatrix::new(theta, phi)?))
        }
        other => Err(FileError::Field {
            field: "kind",
            message: format!("unknown kind `{other}`, expected `dense` or `angle`"),
        }),
    }
}

fn num(x: f64) -> String {
    serde_json::to_string(&x).expect("finite f64 serializes")
}

fn num_list(xs: &[f64]) -> String {
    xs.iter().map(|&x| num(x)).collect::<Vec<_>>().join(", ")
}

/// Serializes to the documented text form.
pub fn format_matrix(value: &MatrixFile) -> String {
    let mut out = String::new();
    match value {
        MatrixFile::Dense(m) => {
            out.push_str("{\n  \"kind\": \"dense\",\n");
            let _ = writeln!(out, "  \"rows\": {},\n  \"cols\": {},", m.rows(), m.cols());
            out.push_str("  \"data\": [\n");
            let last = m.data().len() - 1;
            for (idx, z) in m.data().iter().enumerate() {
                let sep = if idx == last { "" } else { "," };
                let _ = writeln!(out, "    [{}, {}]{sep}", num(z.re), num(z.im));
            }
            out.push_str("  ]\n}\n");
        }
        MatrixFile::Angle(t) => {
            out.push_str("{\n  \"kind\": \"angle\",\n");
            let _ = writeln!(out, "  \"theta\": [{}],", num_list(t.theta()));
            let _ = writeln!(out, "  \"phi\": [{}]", num_list(t.phi()));
            out.push_str("}\n");
        }
    }
    out
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<MatrixFile, FileError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix(&text)
}

pub fn write_matrix(path: impl AsRef<Path>, value: &MatrixFile) -> Result<(), FileError> {
    let path = path.as_ref();
    fs::write(path, format_matrix(value)).map_err(|source| FileError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_round_trip_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("i2.json");
        let i2 = MatrixFile::Dense(DenseMatrix::identity(2).unwrap());
        write_matrix(&path, &i2).unwrap();
        let back = read_matrix(&path).unwrap();
        assert_eq!(back, i2);
    }

    #[test]
    fn parses_angle_file() {
        let t = parse_matrix(r#"{"kind":"angle","theta":[0, 1.5707963267948966],"phi":[0]}"#)
            .unwrap()
            .into_angle()
            .unwrap();
        assert_eq!(t.shape(), (2, 1));
        assert_eq!(t.theta()[1], std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn malformed_kind_names_field() {
        let err = parse_matrix(r#"{"kind":"sparse","rows":1,"cols":1,"data":[[1,0]]}"#).unwrap_err();
        assert!(matches!(err, FileError::Field { field: "kind", .. }));
        assert!(err.to_string().contains("kind"));
        let err = parse_matrix(r#"{"rows":1}"#).unwrap_err();
        assert!(matches!(err, FileError::Field { field: "kind", .. }));
    }

    #[test]
    fn structural_errors() {
        let err = parse_matrix("{\n  \"kind\": \"dense\",\n  \"rows\": 1,,\n}").unwrap_err();
        match err {
            FileError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let err = parse_matrix(r#"{"kind":"dense","rows":2,"cols":2,"data":[[1,0]]}"#).unwrap_err();
        assert!(matches!(err, FileError::Field { field: "data", .. }));
        let err = parse_matrix(r#"{"kind":"dense","rows":0,"cols":2,"data":[]}"#).unwrap_err();
        assert!(matches!(err, FileError::Field { field: "rows", .. }));
        let err = parse_matrix(r#"{"kind":"angle","theta":[],"phi":[0]}"#).unwrap_err();
        assert!(matches!(err, FileError::Field { field: "theta", .. }));
        let err = parse_matrix(r#"{"kind":"angle","theta":[1],"phi":[0],"rows":1}"#).unwrap_err();
        assert!(matches!(err, FileError::Field { field: "rows", .. }));
        let err = parse_matrix(r#"{"kind":"angle","theta":[1],"phi":[0],"extra":1}"#).unwrap_err();
        assert!(matches!(err, FileError::Syntax { .. }));
        // Overflowing literal is rejected rather than turned into infinity.
        assert!(parse_matrix(r#"{"kind":"angle","theta":[1e400],"phi":[0]}"#).is_err());
        assert!(parse_matrix(r#"{"kind":"dense","rows":1,"cols":1,"data":[[null,0]]}"#).is_err());
    }

    #[test]
    fn kind_conversions() {
        let dense = MatrixFile::from(DenseMatrix::identity(1).unwrap());
        assert_eq!(dense.kind(), "dense");
        assert!(dense.clone().into_angle().is_err());
        assert!(dense.into_dense().is_ok());
        let angle = MatrixFile::from(AngleMatrix::zeros(1, 1).unwrap());
        assert_eq!(angle.kind(), "angle");
        assert!(angle.into_dense().is_err());
    }

    fn finite() -> impl Strategy<Value = f64> {
        prop_oneof![
            proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO,
            -1e3f64..1e3,
        ]
    }

    proptest! {
        #[test]
        fn dense_round_trip_bit_exact(
            (rows, cols, data) in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
                (Just(r), Just(c), proptest::collection::vec((finite(), finite()), r * c))
            })
        ) {
            let m = DenseMatrix::from_vec(rows, cols, data.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap();
            let back = parse_matrix(&format_matrix(&MatrixFile::Dense(m.clone()))).unwrap().into_dense().unwrap();
            for (x, y) in m.data().iter().zip(back.data()) {
                prop_assert_eq!(x.re.to_bits(), y.re.to_bits());
                prop_assert_eq!(x.im.to_bits(), y.im.to_bits());
            }
        }

        #[test]
        fn angle_round_trip_bit_exact(
            theta in proptest::collection::vec(finite(), 1..6),
            phi in proptest::collection::vec(finite(), 1..6),
        ) {
            let t = AngleMatrix::new(theta, phi).unwrap();
            let back = parse_matrix(&format_matrix(&MatrixFile::Angle(t.clone()))).unwrap().into_angle().unwrap();
            for (x, y) in t.theta().iter().chain(t.phi()).zip(back.theta().iter().chain(back.phi())) {
                prop_assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }
}
