//! Matrix files: one row per line, whitespace-separated integers, `#`
//! comments and blank lines ignored.

use std::fmt;

use milnor_core::linkforms::{FormError, SymIntMatrix};
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixFileError {
    BadInteger {
        line: usize,
        column: usize,
        token: String,
    },
    Ragged {
        line: usize,
        expected: usize,
        got: usize,
    },
    Empty,
    Form(FormError),
}

impl fmt::Display for MatrixFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixFileError::BadInteger {
                line,
                column,
                token,
            } => {
                write!(
                    f,
                    "line {line}, column {column}: `{token}` is not an integer"
                )
            }
            MatrixFileError::Ragged {
                line,
                expected,
                got,
            } => {
                write!(f, "line {line}: expected {expected} entries, got {got}")
            }
            MatrixFileError::Empty => f.write_str("matrix file has no rows"),
            MatrixFileError::Form(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for MatrixFileError {}

pub fn parse_matrix_file(text: &str) -> Result<SymIntMatrix, MatrixFileError> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        let mut offset = 0;
        for token in line.split_whitespace() {
            let at = offset + line[offset..].find(token).expect("token comes from line");
            offset = at + token.len();
            let v = token
                .parse::<BigInt>()
                .map_err(|_| MatrixFileError::BadInteger {
                    line: idx + 1,
                    column: line[..at].chars().count() + 1,
                    token: token.to_string(),
                })?;
            row.push(v);
        }
        if row.is_empty() {
            continue;
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(MatrixFileError::Ragged {
                    line: idx + 1,
                    expected: first.len(),
                    got: row.len(),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(MatrixFileError::Empty);
    }
    SymIntMatrix::new(rows).map_err(MatrixFileError::Form)
}
