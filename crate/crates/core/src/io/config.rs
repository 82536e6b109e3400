//! `key = value` run configuration. `#` starts a comment.
//!
//! | key             | value                                              |
//! |-----------------|----------------------------------------------------|
//! | `c`, `d`        | code specs of the two classical factors            |
//! | `toric`         | side length; replaces `c` and `d`                  |
//! | `blocks`        | number of toric blocks (default 1)                 |
//! | `selectors`     | toric block selectors `b`, e.g. `11, 10`           |
//! | `codewords`     | explicit codewords, e.g. `1110000, 0001111`        |
//! | `codeword-rows` | indices into the reduced kernel basis of the factor|
//! | `family`        | `path`, `cycle`, `complete`, `check-graph`         |
//! | `orientation`   | `on-c` or `on-d`                                   |
//! | `mode`          | `strict` or `relative:t`                           |
//! | `faces`         | `true` or `false`                                  |
//! | `budget`        | distance-search budget                             |
//! | `output-dir`    | directory for emitted alist matrices               |

use std::path::PathBuf;

use super::spec::CodeSpec;
use crate::distance::DEFAULT_BUDGET;
use crate::error::{Error, Result};
use crate::gadget::{Family, Mode};
use crate::gf2::BitVec;
use crate::surgery::Orientation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Codeword {
    Explicit(BitVec),
    /// Row of the reduced kernel basis.
    Row(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    Hgp { c: CodeSpec, d: CodeSpec },
    Toric { d: usize, blocks: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub base: Base,
    pub codewords: Vec<Codeword>,
    pub selectors: Vec<BitVec>,
    pub family: Family,
    pub orientation: Orientation,
    pub mode: Mode,
    pub faces: bool,
    pub budget: u64,
    pub output_dir: Option<PathBuf>,
}

impl Config {
    pub fn hgp(c: CodeSpec, d: CodeSpec) -> Self {
        Self {
            base: Base::Hgp { c, d },
            codewords: vec![],
            selectors: vec![],
            family: Family::Complete,
            orientation: Orientation::OnC,
            mode: Mode::Strict,
            faces: true,
            budget: DEFAULT_BUDGET,
            output_dir: None,
        }
    }

    pub fn toric(d: usize, blocks: usize, selectors: Vec<BitVec>) -> Self {
        Self { base: Base::Toric { d, blocks }, selectors, family: Family::CheckGraph, ..Self::hgp(CodeSpec::Hamming74, CodeSpec::Hamming74) }
    }

    /// Hamming `[7,4,3]` with the transposed 3-bit repetition code, path gadget on `1110000`.
    pub fn hamming_demo() -> Self {
        Self {
            codewords: vec![Codeword::Explicit(BitVec::from_bitstring("1110000").expect("literal"))],
            family: Family::Path,
            ..Self::hgp(CodeSpec::Hamming74, CodeSpec::TransposeOf(Box::new(CodeSpec::Rep(3))))
        }
    }

    /// Number of gadgets the configuration asks for.
    pub fn measurements(&self) -> usize {
        match self.base {
            Base::Hgp { .. } => self.codewords.len(),
            Base::Toric { .. } => self.selectors.len(),
        }
    }
}

fn bits_list(v: &str, line: usize) -> Result<Vec<BitVec>> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| BitVec::from_bitstring(s).map_err(|_| Error::Parse { line, msg: format!("bad bit string {s:?}") }))
        .collect()
}

fn number<T: std::str::FromStr>(v: &str, line: usize, key: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Parse { line, msg: format!("{key}: bad number {v:?}") })
}

pub fn parse_config(text: &str) -> Result<Config> {
    let (mut c, mut d, mut toric, mut blocks) = (None, None, None, 1usize);
    let mut cfg = Config::hgp(CodeSpec::Hamming74, CodeSpec::Hamming74);
    let mut family = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::Parse { line, msg: format!("expected key = value, got {content:?}") });
        };
        let (key, value) = (key.trim(), value.trim());
        let wrap = |e: Error| match e {
            Error::Config(msg) => Error::Parse { line, msg },
            other => other,
        };
        match key {
            "c" => c = Some(value.parse::<CodeSpec>().map_err(wrap)?),
            "d" => d = Some(value.parse::<CodeSpec>().map_err(wrap)?),
            "toric" => toric = Some(number::<usize>(value, line, key)?),
            "blocks" => blocks = number(value, line, key)?,
            "selectors" => cfg.selectors = bits_list(value, line)?,
            "codewords" => cfg.codewords.extend(bits_list(value, line)?.into_iter().map(Codeword::Explicit)),
            "codeword-rows" => {
                for s in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    cfg.codewords.push(Codeword::Row(number(s, line, key)?));
                }
            }
            "family" => family = Some(value.parse::<Family>().map_err(wrap)?),
            "orientation" => cfg.orientation = value.parse().map_err(wrap)?,
            "mode" => {
                cfg.mode = match value {
                    "strict" => Mode::Strict,
                    _ => match value.strip_prefix("relative:") {
                        Some(t) => Mode::Relative { t: number(t, line, key)? },
                        None => return Err(Error::Parse { line, msg: format!("unknown mode {value:?}") }),
                    },
                }
            }
            "faces" => cfg.faces = number(value, line, key)?,
            "budget" => cfg.budget = number(value, line, key)?,
            "output-dir" => cfg.output_dir = Some(PathBuf::from(value)),
            other => return Err(Error::Parse { line, msg: format!("unknown key {other:?}") }),
        }
    }
    cfg.base = match (toric, c, d) {
        (Some(d), None, None) => {
            cfg.family = Family::CheckGraph;
            Base::Toric { d, blocks }
        }
        (None, Some(c), Some(d)) => Base::Hgp { c, d },
        (Some(_), _, _) => return Err(Error::Config("toric replaces c and d; give one or the other".into())),
        _ => return Err(Error::Config("both c and d are required".into())),
    };
    if let Some(f) = family {
        cfg.family = f;
    }
    Ok(cfg)
}
