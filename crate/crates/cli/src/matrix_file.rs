//! JSON matrix files: `{"n": 2, "entries": [[[re, im], ...], ...]}`.
//!
//! Floats are written in shortest round-trip form, so reading back a written
//! file reproduces every entry bit for bit.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::CliError;
use semiop::{Complex, ComplexMatrix};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let entries = (0..m.rows())
            .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        Self { n: m.rows(), entries }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, CliError> {
        if self.entries.len() != self.n {
            return Err(CliError::usage(format!(
                "matrix file declares n={} but has {} rows",
                self.n,
                self.entries.len()
            )));
        }
        let mut data = Vec::with_capacity(self.n * self.n);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.n {
                return Err(CliError::usage(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    self.n
                )));
            }
            data.extend(row.iter().map(|&[re, im]| Complex::new(re, im)));
        }
        let m = ComplexMatrix::from_vec(self.n, self.n, data)?;
        m.validate_finite()?;
        Ok(m)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::usage(format!("malformed matrix file: {e}")))
    }

    pub fn render(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
    MatrixFile::parse(&text)
        .and_then(|f| f.to_matrix())
        .map_err(|e| CliError {
            exit: e.exit,
            message: format!("{}: {}", path.display(), e.message),
        })
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> Result<(), CliError> {
    fs::write(path, MatrixFile::from_matrix(m).render() + "\n")
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Exit;

    #[test]
    fn parses_example() {
        let f = MatrixFile::parse(r#"{"n":2,"entries":[[[0,0],[1,0]],[[0,0],[0,0]]]}"#).unwrap();
        let m = f.to_matrix().unwrap();
        assert_eq!(m[(0, 1)], Complex::new(1.0, 0.0));
        assert_eq!(m[(1, 0)], Complex::new(0.0, 0.0));
    }

    #[test]
    fn rejects_bad_shapes() {
        let f = MatrixFile::parse(r#"{"n":2,"entries":[[[0,0],[1,0]]]}"#).unwrap();
        assert_eq!(f.to_matrix().unwrap_err().exit, Exit::Usage);
        let f = MatrixFile::parse(r#"{"n":2,"entries":[[[0,0]],[[0,0],[0,0]]]}"#).unwrap();
        assert_eq!(f.to_matrix().unwrap_err().exit, Exit::Usage);
        assert!(MatrixFile::parse(r#"{"n":1,"entries":[[[0]]]}"#).is_err());
        assert!(MatrixFile::parse("not json").is_err());
    }

    #[test]
    fn awkward_floats_round_trip() {
        let values = [0.1, 1.0 / 3.0, -2.0e-308, 5e-324, f64::MAX, -0.0, 1.0 + f64::EPSILON];
        let m = ComplexMatrix::from_fn(3, 3, |i, j| {
            Complex::new(values[(i + j) % values.len()], -values[(2 * i + j) % values.len()])
        });
        let back = MatrixFile::parse(&MatrixFile::from_matrix(&m).render())
            .unwrap()
            .to_matrix()
            .unwrap();
        for (a, b) in m.as_slice().iter().zip(back.as_slice()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }
}
