//! Textual names for classical codes: `hamming-7-4`, `rep(n)`, `cyclic-rep(n)`,
//! `transpose-of(spec)`, `alist:path` and `matrix:101,011`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::alist::parse_alist;
use crate::complex::{cyclic_repetition, hamming_7_4, repetition};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeSpec {
    Hamming74,
    Rep(usize),
    CyclicRep(usize),
    TransposeOf(Box<CodeSpec>),
    Alist(PathBuf),
    Matrix(BitMatrix),
}

impl CodeSpec {
    /// The parity-check matrix.
    pub fn resolve(&self) -> Result<BitMatrix> {
        Ok(match self {
            CodeSpec::Hamming74 => hamming_7_4(),
            CodeSpec::Rep(n) => repetition(*n),
            CodeSpec::CyclicRep(n) => cyclic_repetition(*n),
            CodeSpec::TransposeOf(inner) => inner.resolve()?.transpose(),
            CodeSpec::Alist(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                parse_alist(&text)?
            }
            CodeSpec::Matrix(m) => m.clone(),
        })
    }
}

fn size_arg(s: &str, name: &str) -> Result<usize> {
    let n: usize = s.trim().parse().map_err(|_| Error::Config(format!("{name}: bad size {s:?}")))?;
    if n < 2 {
        return Err(Error::Config(format!("{name}: size must be at least 2")));
    }
    Ok(n)
}

impl FromStr for CodeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let call = |name: &str| s.strip_prefix(name).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')'));
        if s == "hamming-7-4" {
            Ok(CodeSpec::Hamming74)
        } else if let Some(arg) = call("rep") {
            Ok(CodeSpec::Rep(size_arg(arg, "rep")?))
        } else if let Some(arg) = call("cyclic-rep") {
            Ok(CodeSpec::CyclicRep(size_arg(arg, "cyclic-rep")?))
        } else if let Some(arg) = call("transpose-of") {
            Ok(CodeSpec::TransposeOf(Box::new(arg.parse()?)))
        } else if let Some(path) = s.strip_prefix("alist:") {
            Ok(CodeSpec::Alist(PathBuf::from(path.trim())))
        } else if let Some(rows) = s.strip_prefix("matrix:") {
            let rows: Vec<&str> = rows.split([',', ';']).map(str::trim).collect();
            Ok(CodeSpec::Matrix(BitMatrix::from_bitstrings(&rows).map_err(|e| Error::Config(format!("matrix: {e}")))?))
        } else {
            Err(Error::Config(format!("unknown code spec {s:?}")))
        }
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSpec::Hamming74 => f.write_str("hamming-7-4"),
            CodeSpec::Rep(n) => write!(f, "rep({n})"),
            CodeSpec::CyclicRep(n) => write!(f, "cyclic-rep({n})"),
            CodeSpec::TransposeOf(inner) => write!(f, "transpose-of({inner})"),
            CodeSpec::Alist(p) => write!(f, "alist:{}", p.display()),
            CodeSpec::Matrix(m) => {
                let rows: Vec<String> = (0..m.rows()).map(|r| m.row(r).to_bitstring()).collect();
                write!(f, "matrix:{}", rows.join(","))
            }
        }
    }
}
