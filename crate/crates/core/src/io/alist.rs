//! MacKay alist format: `n m`, max column/row weights, the column and row
//! weights, then 1-based row lists per column and column lists per row.
//! Zero entries are padding; an empty list is written as a single `0`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next non-blank line as numbers, with its 1-based line number.
    fn next_numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        for (i, line) in self.inner.by_ref() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse { line: i + 1, msg: format!("bad number {t:?} in {what}") }))
                .collect::<Result<Vec<_>>>()?;
            return Ok((i + 1, nums));
        }
        Err(Error::Parse { line: 0, msg: format!("unexpected end of input, expected {what}") })
    }
}

fn expect_len(line: usize, nums: &[usize], n: usize, what: &str) -> Result<()> {
    if nums.len() != n {
        return Err(Error::Parse { line, msg: format!("{what}: expected {n} entries, found {}", nums.len()) });
    }
    Ok(())
}

pub fn parse_alist(text: &str) -> Result<BitMatrix> {
    let mut lines = Lines { inner: text.lines().enumerate() };
    let (l, head) = lines.next_numbers("header")?;
    expect_len(l, &head, 2, "header")?;
    let (n, m) = (head[0], head[1]);
    let (l, maxw) = lines.next_numbers("maximum weights")?;
    expect_len(l, &maxw, 2, "maximum weights")?;
    let mut weights = |count: usize, what: &str| -> Result<Vec<usize>> {
        if count == 0 {
            return Ok(vec![]);
        }
        let (l, w) = lines.next_numbers(what)?;
        expect_len(l, &w, count, what)?;
        Ok(w)
    };
    let col_w = weights(n, "column weights")?;
    let row_w = weights(m, "row weights")?;
    let mut h = BitMatrix::zeros(m, n);
    for (c, &w) in col_w.iter().enumerate() {
        let (l, idx) = lines.next_numbers("column list")?;
        let idx: Vec<usize> = idx.into_iter().filter(|&r| r != 0).collect();
        if idx.len() != w || w > maxw[0] {
            return Err(Error::Parse { line: l, msg: format!("column {} lists {} rows, weight line says {w}", c + 1, idx.len()) });
        }
        for r in idx {
            if r > m {
                return Err(Error::Parse { line: l, msg: format!("row index {r} out of range 1..={m}") });
            }
            if h.get(r - 1, c) {
                return Err(Error::Parse { line: l, msg: format!("row {r} repeated in column {}", c + 1) });
            }
            h.set(r - 1, c, true);
        }
    }
    for (r, &w) in row_w.iter().enumerate() {
        let (l, idx) = lines.next_numbers("row list")?;
        let idx: Vec<usize> = idx.into_iter().filter(|&c| c != 0).collect();
        if idx.len() != w || w > maxw[1] {
            return Err(Error::Parse { line: l, msg: format!("row {} lists {} columns, weight line says {w}", r + 1, idx.len()) });
        }
        for c in &idx {
            if *c > n || !h.get(r, c - 1) {
                return Err(Error::Parse { line: l, msg: format!("row {} and column lists disagree at column {c}", r + 1) });
            }
        }
    }
    Ok(h)
}

pub fn emit_alist(h: &BitMatrix) -> String {
    let (m, n) = h.shape();
    let ht = h.transpose();
    let join = |v: &[usize]| match v {
        [] => "0".to_string(),
        _ => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
    };
    let mut out = String::new();
    let _ = writeln!(out, "{n} {m}");
    let _ = writeln!(out, "{} {}", h.max_col_weight(), h.max_row_weight());
    if n > 0 {
        let _ = writeln!(out, "{}", join(&(0..n).map(|c| ht.row_weight(c)).collect::<Vec<_>>()));
    }
    if m > 0 {
        let _ = writeln!(out, "{}", join(&(0..m).map(|r| h.row_weight(r)).collect::<Vec<_>>()));
    }
    for c in 0..n {
        let _ = writeln!(out, "{}", join(&ht.row(c).support().iter().map(|r| r + 1).collect::<Vec<_>>()));
    }
    for r in 0..m {
        let _ = writeln!(out, "{}", join(&h.row(r).support().iter().map(|c| c + 1).collect::<Vec<_>>()));
    }
    out
}
