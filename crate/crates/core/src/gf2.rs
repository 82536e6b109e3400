//! Dense bit-packed vectors and matrices over GF(2).
//!
//! Bit `i` of a vector lives in word `i / 64` at position `i % 64`. Padding
//! bits past `len` (or past `cols` in a matrix row) are always zero.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => !0,
        r => (1u64 << r) - 1,
    }
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; words_for(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self { len, words: vec![!0; words_for(len)] };
        v.clear_padding();
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Builds a vector from explicit set positions.
    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in idx {
            v.set(i, true);
        }
        v
    }

    /// Parses a string of `0`/`1` characters; whitespace is ignored.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let bits: Vec<bool> = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse { line: 0, msg: format!("bad bit character {other:?}") }),
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_bools(&bits))
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i))
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Self { len, words };
        v.clear_padding();
        v
    }

    fn clear_padding(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.len);
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let m = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= m;
        } else {
            self.words[i / WORD] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn overlap(&self, other: &BitVec) -> usize {
        assert_eq!(self.len, other.len, "length mismatch in overlap");
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Positions of the set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * WORD + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.support() {
            out.set(i, true);
        }
        for i in other.support() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Copy of the bits in `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(start + len <= self.len, "slice out of range");
        BitVec::from_indices(len, (0..len).filter(|&i| self.get(start + i)))
    }

    /// Writes `src` into positions `start..start + src.len()`.
    pub fn place(&mut self, start: usize, src: &BitVec) {
        assert!(start + src.len <= self.len, "place out of range");
        for i in 0..src.len {
            self.set(start + i, src.get(i));
        }
    }

    /// Kronecker product; bit `(a, b)` lands at `a * other.len() + b`.
    pub fn kron(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len * other.len);
        let sb = other.support();
        for a in self.support() {
            for &b in &sb {
                out.set(a * other.len + b, true);
            }
        }
        out
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({})", self.to_bitstring())
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

/// A dense matrix over GF(2), row-major, each row padded to whole words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Row-reduced echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows given as `0`/`1` slices.
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &b) in r.iter().enumerate() {
                if b != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Parses rows written as bit strings, e.g. `["101", "011"]`.
    pub fn from_bitstrings(rows: &[&str]) -> Result<Self> {
        let vecs: Vec<BitVec> = rows.iter().map(|r| BitVec::from_bitstring(r)).collect::<Result<_>>()?;
        let cols = vecs.first().map_or(0, |v| v.len());
        if vecs.iter().any(|v| v.len() != cols) {
            return Err(Error::Parse { line: 0, msg: "rows of unequal length".into() });
        }
        Ok(Self::from_row_vecs(cols, &vecs))
    }

    /// Stacks vectors of length `cols` as rows.
    pub fn from_row_vecs(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    /// Places vectors of length `rows` as columns.
    pub fn from_col_vecs(rows: usize, cols: &[BitVec]) -> Self {
        Self::from_row_vecs(rows, cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        let m = 1u64 << (c % WORD);
        let w = &mut self.data[r * self.stride + c / WORD];
        if value {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        let v = self.get(r, c);
        self.set(r, c, !v);
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn col(&self, c: usize) -> BitVec {
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    /// `row[dst] ^= row[src]`.
    fn xor_rows(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    pub fn max_row_weight(&self) -> usize {
        (0..self.rows).map(|r| self.row_weight(r)).max().unwrap_or(0)
    }

    pub fn max_col_weight(&self) -> usize {
        let mut counts = vec![0usize; self.cols];
        for r in 0..self.rows {
            for c in self.row(r).support() {
                counts[c] += 1;
            }
        }
        counts.into_iter().max().unwrap_or(0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for (wi, &w) in self.row_words(r).iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let c = wi * WORD + w.trailing_zeros() as usize;
                    t.set(c, r, true);
                    w &= w - 1;
                }
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let (lo, hi) = (r * out.stride, (r + 1) * out.stride);
            for (wi, &w) in self.row_words(r).iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let k = wi * WORD + w.trailing_zeros() as usize;
                    for (x, y) in out.data[lo..hi].iter_mut().zip(other.row_words(k)) {
                        *x ^= y;
                    }
                    w &= w - 1;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(v.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x ^= y;
        }
        Ok(out)
    }

    /// Leftmost-pivot reduced row echelon form; pivot rows are moved to the top.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        Rref { matrix: m, pivots }
    }

    /// Reduces in place using only the first `limit` columns as pivot candidates.
    fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..limit {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(row, p);
            for r in 0..self.rows {
                if r != row && self.get(r, c) {
                    self.xor_rows(r, row);
                }
            }
            pivots.push(c);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(rank, p);
            for r in rank + 1..m.rows {
                if m.get(r, c) {
                    m.xor_rows(r, rank);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of `{v : Mv = 0}`, one vector per free column of the RREF in
    /// ascending column order.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        (0..self.cols)
            .filter(|&f| is_pivot[f].is_none())
            .map(|f| {
                let mut v = BitVec::zeros(self.cols);
                v.set(f, true);
                for (r, &p) in pivots.iter().enumerate() {
                    if matrix.get(r, f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `Mx = b`, or `None` when `b` is outside the image.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { context: "solve", expected: self.rows, found: b.len() });
        }
        let mut aug = self.hstack(&BitMatrix::from_col_vecs(self.rows, std::slice::from_ref(b)))?;
        let pivots = aug.rref_in_place(self.cols);
        for r in pivots.len()..aug.rows {
            if aug.get(r, self.cols) {
                return Ok(None);
            }
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            if aug.get(r, self.cols) {
                x.set(c, true);
            }
        }
        Ok(Some(x))
    }

    /// Kronecker product; entry `((a, b), (c, d))` lands at
    /// `(a * other.rows + b, c * other.cols + d)`.
    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for a in 0..self.rows {
            for c in self.row(a).support() {
                for b in 0..other.rows {
                    for d in other.row(b).support() {
                        out.set(a * other.rows + b, c * other.cols + d, true);
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal `[[A, 0], [0, B]]`.
    pub fn direct_sum(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        out
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`, XOR-ing into existing entries.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &BitMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block does not fit");
        for r in 0..block.rows {
            for c in block.row(r).support() {
                self.flip(r0 + r, c0 + c);
            }
        }
    }

    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { context: "hstack", expected: self.rows, found: other.rows });
        }
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(0, self.cols, other);
        Ok(out)
    }

    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { context: "vstack", expected: self.cols, found: other.cols });
        }
        let mut out = BitMatrix::zeros(self.rows + other.rows, self.cols);
        out.data[..self.data.len()].copy_from_slice(&self.data);
        out.data[self.data.len()..].copy_from_slice(&other.data);
        Ok(out)
    }

    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.row_words_mut(i).copy_from_slice(self.row_words(r));
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, j, true);
                }
            }
        }
        out
    }

    /// Copy of the sub-block `rows x cols` starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> BitMatrix {
        let rs: Vec<usize> = (r0..r0 + rows).collect();
        let cs: Vec<usize> = (c0..c0 + cols).collect();
        self.select_rows(&rs).select_cols(&cs)
    }

    /// Rows as vectors.
    pub fn row_vecs(&self) -> Vec<BitVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        Ok(())
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

/// Rank of a list of equal-length vectors.
pub fn rank_of(len: usize, vecs: &[BitVec]) -> usize {
    BitMatrix::from_row_vecs(len, vecs).rank()
}

/// Greedily picks the vectors of `candidates` that are independent modulo
/// `span` and of each other, preserving order.
pub fn independent_modulo(len: usize, span: &[BitVec], candidates: &[BitVec]) -> Vec<BitVec> {
    let mut basis = Reducer::new(len);
    for s in span {
        basis.insert(s.clone());
    }
    candidates.iter().filter(|c| basis.insert((*c).clone())).cloned().collect()
}

/// Incremental echelon basis used to test span membership.
#[derive(Clone, Debug)]
pub struct Reducer {
    len: usize,
    rows: Vec<(usize, BitVec)>,
}

impl Reducer {
    pub fn new(len: usize) -> Self {
        Self { len, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.len, "length mismatch in reducer");
        let mut v = v.clone();
        for (p, r) in &self.rows {
            if v.get(*p) {
                v.xor_assign(r);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` if it is independent; returns whether it was added.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let v = self.reduce(&v);
        let Some(&p) = v.support().first() else {
            return false;
        };
        for (_, r) in self.rows.iter_mut() {
            if r.get(p) {
                r.xor_assign(&v);
            }
        }
        self.rows.push((p, v));
        true
    }
}
