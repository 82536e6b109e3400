//! Bounded chain complexes over GF(2).
//!
//! Degrees run over a contiguous range `lo..=hi`; `∂_i` maps degree `i` to
//! degree `i - 1` and has shape `dim(i - 1) x dim(i)`. Outside the range every
//! space is zero and every boundary is the zero map of the right shape.

use std::fmt;

use crate::distance::{self, Distance, DistanceBound, SearchConfig};
use crate::error::{Error, Result};
use crate::gf2::{independent_modulo, BitMatrix, BitVec};

/// A labelled contiguous range of coordinates inside one degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub label: String,
    pub offset: usize,
    pub len: usize,
}

impl Block {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.len
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct ChainComplex {
    name: String,
    lo: i32,
    dims: Vec<usize>,
    /// `bd[k]` is `∂_{lo + k + 1}`.
    bd: Vec<BitMatrix>,
    blocks: Vec<Vec<Block>>,
}

/// Reason a complex or chain map is invalid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Boundary shape disagrees with the adjacent dimensions.
    Shape { degree: i32 },
    /// `∂_degree ∘ ∂_{degree + 1} ≠ 0`.
    NonZeroComposition { degree: i32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { degree } => write!(f, "boundary shape mismatch at degree {degree}"),
            Violation::NonZeroComposition { degree } => write!(f, "nonzero composition at degree {degree}"),
        }
    }
}

fn default_blocks(name: &str, lo: i32, dims: &[usize]) -> Vec<Vec<Block>> {
    dims.iter()
        .enumerate()
        .map(|(k, &d)| vec![Block { label: format!("{name}{}", lo + k as i32), offset: 0, len: d }])
        .collect()
}

impl ChainComplex {
    /// Complex with `dims[k]` at degree `lo + k` and `boundaries[k] = ∂_{lo + k + 1}`.
    pub fn new(name: &str, lo: i32, dims: Vec<usize>, boundaries: Vec<BitMatrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Shape("a complex needs at least one degree".into()));
        }
        if boundaries.len() + 1 != dims.len() {
            return Err(Error::Shape(format!(
                "{} degrees need {} boundaries, got {}",
                dims.len(),
                dims.len() - 1,
                boundaries.len()
            )));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.shape() != (dims[k], dims[k + 1]) {
                return Err(Error::Shape(format!(
                    "boundary at degree {} is {}x{}, expected {}x{}",
                    lo + k as i32 + 1,
                    b.rows(),
                    b.cols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        let blocks = default_blocks(name, lo, &dims);
        Ok(Self { name: name.to_string(), lo, dims, bd: boundaries, blocks })
    }

    /// Builds a complex from boundaries alone: `∂_{lo+1}, ∂_{lo+2}, ...`.
    pub fn from_boundaries(name: &str, lo: i32, boundaries: Vec<BitMatrix>) -> Result<Self> {
        let Some(first) = boundaries.first() else {
            return Err(Error::Shape("at least one boundary is required".into()));
        };
        let mut dims = vec![first.rows()];
        dims.extend(boundaries.iter().map(|b| b.cols()));
        Self::new(name, lo, dims, boundaries)
    }

    /// Two-term complex `C_1 --H--> C_0` of a classical code with parity-check `H`.
    pub fn classical(name: &str, h: &BitMatrix) -> Self {
        Self::new(name, 0, vec![h.rows(), h.cols()], vec![h.clone()]).expect("shape is consistent")
    }

    /// A single space of dimension `dim` at `degree`.
    pub fn single(name: &str, degree: i32, dim: usize) -> Self {
        Self::new(name, degree, vec![dim], vec![]).expect("shape is consistent")
    }

    /// Unchecked constructor used by assembling operations.
    pub(crate) fn from_parts(
        name: String,
        lo: i32,
        dims: Vec<usize>,
        bd: Vec<BitMatrix>,
        blocks: Vec<Vec<Block>>,
    ) -> Self {
        debug_assert_eq!(bd.len() + 1, dims.len());
        debug_assert_eq!(blocks.len(), dims.len());
        Self { name, lo, dims, bd, blocks }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: &str) -> Self {
        let relabel = self.blocks.len() == self.dims.len()
            && self.blocks.iter().enumerate().all(|(k, b)| {
                b.len() == 1 && b[0].label == format!("{}{}", self.name, self.lo + k as i32)
            });
        self.name = name.to_string();
        if relabel {
            self.blocks = default_blocks(name, self.lo, &self.dims);
        }
        self
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn dim(&self, i: i32) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.dims[(i - self.lo) as usize]
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `∂_i : degree i -> degree i - 1`, zero outside the stored range.
    pub fn boundary(&self, i: i32) -> BitMatrix {
        if i > self.lo && i <= self.hi() {
            self.bd[(i - self.lo - 1) as usize].clone()
        } else {
            BitMatrix::zeros(self.dim(i - 1), self.dim(i))
        }
    }

    pub(crate) fn boundary_ref(&self, i: i32) -> Option<&BitMatrix> {
        if i > self.lo && i <= self.hi() {
            Some(&self.bd[(i - self.lo - 1) as usize])
        } else {
            None
        }
    }

    pub fn blocks(&self, i: i32) -> &[Block] {
        if i < self.lo || i > self.hi() {
            &[]
        } else {
            &self.blocks[(i - self.lo) as usize]
        }
    }

    /// The block with the given label at degree `i`.
    pub fn block(&self, i: i32, label: &str) -> Option<&Block> {
        self.blocks(i).iter().find(|b| b.label == label)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Checks shapes and `∂_{i} ∘ ∂_{i+1} = 0`.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for (k, b) in self.bd.iter().enumerate() {
            if b.shape() != (self.dims[k], self.dims[k + 1]) {
                return Err(Violation::Shape { degree: self.lo + k as i32 + 1 });
            }
        }
        for k in 1..self.bd.len() {
            let prod = self.bd[k - 1].mul(&self.bd[k]).expect("shapes checked");
            if !prod.is_zero() {
                return Err(Violation::NonZeroComposition { degree: self.lo + k as i32 });
            }
        }
        Ok(())
    }

    /// Dual complex: degree `i` becomes degree `-i` and `∂'_j = ∂_{1-j}ᵀ`.
    pub fn cochain(&self) -> ChainComplex {
        let lo = -self.hi();
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        let bd: Vec<BitMatrix> = self.bd.iter().rev().map(|b| b.transpose()).collect();
        let blocks: Vec<Vec<Block>> = self.blocks.iter().rev().cloned().collect();
        let name = match self.name.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{}*", self.name),
        };
        ChainComplex::from_parts(name, lo, dims, bd, blocks)
    }

    /// Same complex with every degree moved up by `by`.
    pub fn shifted(&self, by: i32) -> ChainComplex {
        let mut out = self.clone();
        out.lo += by;
        out
    }

    /// `dim H_i = dim ker ∂_i - rank ∂_{i+1}`.
    pub fn homology_dim(&self, i: i32) -> usize {
        let n = self.dim(i);
        let ker = n - self.boundary(i).rank();
        ker - self.boundary(i + 1).rank()
    }

    /// Representatives of a basis of `H_i`.
    pub fn homology_representatives(&self, i: i32) -> Vec<BitVec> {
        let n = self.dim(i);
        let image: Vec<BitVec> = self.boundary(i + 1).transpose().row_vecs();
        independent_modulo(n, &image, &self.boundary(i).kernel_basis())
    }

    /// Representatives of a basis of `H^i`: cocycles independent modulo coboundaries.
    pub fn cohomology_representatives(&self, i: i32) -> Vec<BitVec> {
        let n = self.dim(i);
        let coboundaries = self.boundary(i).row_vecs();
        independent_modulo(n, &coboundaries, &self.boundary(i + 1).transpose().kernel_basis())
    }

    /// Whether a cycle `x` of degree `i` represents a nonzero class.
    pub fn is_nontrivial_cycle(&self, i: i32, x: &BitVec) -> bool {
        self.cohomology_representatives(i).iter().any(|y| y.dot(x))
    }

    /// Systolic distance `d_i`.
    pub fn systolic_distance(&self, i: i32, cfg: &SearchConfig) -> DistanceBound {
        let duals = self.cohomology_representatives(i);
        distance::min_weight(&self.boundary(i), &duals, cfg)
    }

    /// Cosystolic distance `d^i`.
    pub fn cosystolic_distance(&self, i: i32, cfg: &SearchConfig) -> DistanceBound {
        self.cochain().systolic_distance(-i, cfg)
    }

    /// Full homology report; fails if either distance search runs out of budget.
    pub fn homology(&self, i: i32, cfg: &SearchConfig) -> Result<HomologyReport> {
        let report = self.homology_bounded(i, cfg);
        for d in [report.systolic_distance, report.cosystolic_distance] {
            if let DistanceBound::AtLeast(w) = d {
                return Err(Error::SearchBudgetExceeded { lower_bound: w, budget: cfg.budget });
            }
        }
        Ok(report)
    }

    /// Like [`homology`](Self::homology) but keeps lower bounds instead of failing.
    pub fn homology_bounded(&self, i: i32, cfg: &SearchConfig) -> HomologyReport {
        let representatives = self.homology_representatives(i);
        HomologyReport {
            degree: i,
            dim: representatives.len(),
            representatives,
            systolic_distance: self.systolic_distance(i, cfg),
            cosystolic_distance: self.cosystolic_distance(i, cfg),
        }
    }

    /// Tensor product. Degree `k` holds the blocks `C_p ⊗ D_q` (`p + q = k`)
    /// in descending `p`; inside a block, `(a, b)` sits at `a * dim D_q + b`.
    pub fn tensor(&self, other: &ChainComplex) -> ChainComplex {
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();
        let layout: Vec<TensorLayout> = (lo..=hi).map(|k| TensorLayout::new(self, other, k)).collect();
        let dims: Vec<usize> = layout.iter().map(|l| l.dim).collect();
        let mut bd = Vec::with_capacity(dims.len().saturating_sub(1));
        for k in lo + 1..=hi {
            let src = &layout[(k - lo) as usize];
            let dst = &layout[(k - 1 - lo) as usize];
            let mut m = BitMatrix::zeros(dst.dim, src.dim);
            for &(p, q, off) in &src.parts {
                if let (Some(dc), Some(&(_, _, to))) = (self.boundary_ref(p), dst.find(p - 1, q)) {
                    m.paste(to, off, &dc.kron(&BitMatrix::identity(other.dim(q))));
                }
                if let (Some(dd), Some(&(_, _, to))) = (other.boundary_ref(q), dst.find(p, q - 1)) {
                    m.paste(to, off, &BitMatrix::identity(self.dim(p)).kron(dd));
                }
            }
            bd.push(m);
        }
        let blocks = layout
            .iter()
            .map(|l| {
                let mut out = Vec::new();
                for &(p, q, off) in &l.parts {
                    let dq = other.dim(q);
                    let dlabel = match other.blocks(q) {
                        [single] => single.label.clone(),
                        _ => format!("{}{q}", other.name),
                    };
                    for b in self.blocks(p) {
                        out.push(Block { label: format!("{}x{}", b.label, dlabel), offset: off + b.offset * dq, len: b.len * dq });
                    }
                }
                out
            })
            .collect();
        ChainComplex::from_parts(format!("({}x{})", self.name, other.name), lo, dims, bd, blocks)
    }

    /// Direct sum degree by degree; blocks of `self` come first.
    pub fn direct_sum(&self, other: &ChainComplex, name: &str) -> ChainComplex {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let dims: Vec<usize> = (lo..=hi).map(|i| self.dim(i) + other.dim(i)).collect();
        let bd = (lo + 1..=hi).map(|i| self.boundary(i).direct_sum(&other.boundary(i))).collect();
        let blocks = (lo..=hi)
            .map(|i| {
                let mut out: Vec<Block> = self.blocks(i).to_vec();
                let off = self.dim(i);
                out.extend(other.blocks(i).iter().map(|b| Block { offset: b.offset + off, ..b.clone() }));
                out
            })
            .collect();
        ChainComplex::from_parts(name.to_string(), lo, dims, bd, blocks)
    }

    /// `dim H_k(self ⊗ other)` against the Künneth sum.
    pub fn kunneth_check(&self, other: &ChainComplex, k: i32) -> std::result::Result<(), KunnethMismatch> {
        let lhs = self.tensor(other).homology_dim(k);
        let rhs: usize = self
            .degrees()
            .map(|p| self.homology_dim(p) * other.homology_dim(k - p))
            .sum();
        if lhs == rhs {
            Ok(())
        } else {
            Err(KunnethMismatch { degree: k, tensor: lhs, formula: rhs })
        }
    }

    /// Exhaustive `d_k(self ⊗ other)` against
    /// `min(d_{k-q-1}(C) d_{q+1}(D), d_{k-q}(C) d_q(D))` for a two-term `other`
    /// living in degrees `q, q + 1`.
    pub fn product_distance_check(
        &self,
        other: &ChainComplex,
        k: i32,
        cfg: &SearchConfig,
    ) -> Result<std::result::Result<Distance, ProductDistanceMismatch>> {
        if other.dims.len() != 2 {
            return Err(Error::Shape("second factor must have exactly two terms".into()));
        }
        let q = other.lo;
        let exact = |b: DistanceBound| {
            b.exact().ok_or(Error::SearchBudgetExceeded { lower_bound: b.lower().finite().unwrap_or(0), budget: cfg.budget })
        };
        let term = |a: Distance, b: Distance| -> Result<Distance> {
            a.checked_mul(b).ok_or_else(|| Error::Shape("distance product of infinity and zero".into()))
        };
        let a = term(exact(self.systolic_distance(k - q - 1, cfg))?, exact(other.systolic_distance(q + 1, cfg))?)?;
        let b = term(exact(self.systolic_distance(k - q, cfg))?, exact(other.systolic_distance(q, cfg))?)?;
        let formula = a.min(b);
        let direct = exact(self.tensor(other).systolic_distance(k, cfg))?;
        if direct == formula {
            Ok(Ok(direct))
        } else {
            Ok(Err(ProductDistanceMismatch { degree: k, direct, formula }))
        }
    }
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainComplex {} degrees {}..={} dims {:?}", self.name, self.lo, self.hi(), self.dims)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethMismatch {
    pub degree: i32,
    pub tensor: usize,
    pub formula: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductDistanceMismatch {
    pub degree: i32,
    pub direct: Distance,
    pub formula: Distance,
}

/// Offsets of the `C_p ⊗ D_q` blocks inside one tensor degree.
pub(crate) struct TensorLayout {
    pub parts: Vec<(i32, i32, usize)>,
    pub dim: usize,
}

impl TensorLayout {
    pub fn new(c: &ChainComplex, d: &ChainComplex, k: i32) -> Self {
        let mut parts = Vec::new();
        let mut off = 0;
        for p in c.degrees().rev() {
            let q = k - p;
            if q < d.lo || q > d.hi() {
                continue;
            }
            parts.push((p, q, off));
            off += c.dim(p) * d.dim(q);
        }
        Self { parts, dim: off }
    }

    pub fn find(&self, p: i32, q: i32) -> Option<&(i32, i32, usize)> {
        self.parts.iter().find(|&&(a, b, _)| a == p && b == q)
    }
}

/// Dimension, representatives and distances of `H_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub degree: i32,
    pub dim: usize,
    pub representatives: Vec<BitVec>,
    pub systolic_distance: DistanceBound,
    pub cosystolic_distance: DistanceBound,
}

/// Parity-check matrix of the `[7,4,3]` Hamming code: column `j` is `j + 1` in binary.
pub fn hamming_7_4() -> BitMatrix {
    let mut h = BitMatrix::zeros(3, 7);
    for j in 0..7 {
        for r in 0..3 {
            if ((j + 1) >> r) & 1 == 1 {
                h.set(r, j, true);
            }
        }
    }
    h
}

/// `(n-1) x n` path repetition code.
pub fn repetition(n: usize) -> BitMatrix {
    let mut h = BitMatrix::zeros(n.saturating_sub(1), n);
    for r in 0..n.saturating_sub(1) {
        h.set(r, r, true);
        h.set(r, r + 1, true);
    }
    h
}

/// `n x n` cyclic repetition code; `n = 2` gives two identical checks.
pub fn cyclic_repetition(n: usize) -> BitMatrix {
    let mut h = BitMatrix::zeros(n, n);
    for r in 0..n {
        h.flip(r, r);
        h.flip(r, (r + 1) % n);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::Distance::*;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    fn toric(d: usize) -> ChainComplex {
        let c = ChainComplex::classical("C", &cyclic_repetition(d));
        c.tensor(&ChainComplex::classical("D", &cyclic_repetition(d)))
    }

    #[test]
    fn validate_examples() {
        assert_eq!(ChainComplex::classical("C", &hamming_7_4()).validate(), Ok(()));
        let t = toric(3);
        assert_eq!(t.validate(), Ok(()));
        let hx = t.boundary(1);
        let hz = t.boundary(2).transpose();
        assert!(hx.mul(&hz.transpose()).unwrap().is_zero());
        let bad = ChainComplex::from_boundaries("B", 0, vec![BitMatrix::identity(2), BitMatrix::identity(2)]).unwrap();
        assert_eq!(bad.validate(), Err(Violation::NonZeroComposition { degree: 1 }));
    }

    #[test]
    fn cochain_examples() {
        let h = ChainComplex::classical("C", &hamming_7_4());
        let co = h.cochain();
        assert_eq!(co.boundary(co.lo() + 1), hamming_7_4().transpose());
        assert_eq!(co.boundary(co.lo() + 1).shape(), (7, 3));
        assert_eq!(co.cochain(), h);
        let t = toric(3);
        let ct = t.cochain();
        assert_eq!(ct.boundary(-1), t.boundary(2).transpose());
        assert_eq!(ct.boundary(0), t.boundary(1).transpose());
        assert_eq!(ct.validate(), Ok(()));
    }

    #[test]
    fn homology_examples() {
        let h = ChainComplex::classical("C", &hamming_7_4());
        let r = h.homology(1, &cfg()).unwrap();
        assert_eq!(r.dim, 4);
        assert_eq!(r.systolic_distance, DistanceBound::Exact(Finite(3)));
        for d in 2..7 {
            let rep = ChainComplex::classical("R", &cyclic_repetition(d));
            let r = rep.homology(1, &cfg()).unwrap();
            assert_eq!((r.dim, r.systolic_distance), (1, DistanceBound::Exact(Finite(d))));
            assert_eq!(r.representatives, vec![BitVec::ones(d)]);
        }
        let zero = ChainComplex::classical("Z", &BitMatrix::zeros(0, 3));
        let r = zero.homology(1, &cfg()).unwrap();
        assert_eq!((r.dim, r.systolic_distance), (3, DistanceBound::Exact(Finite(1))));
        let full = ChainComplex::classical("F", &BitMatrix::identity(3));
        assert_eq!(full.homology(1, &cfg()).unwrap().systolic_distance, DistanceBound::Exact(Infinite));
    }

    #[test]
    fn representatives_are_nontrivial_cycles() {
        let t = toric(3);
        for x in t.homology_representatives(1) {
            assert!(t.boundary(1).mul_vec(&x).unwrap().is_zero());
            assert!(t.is_nontrivial_cycle(1, &x));
        }
        let stabilizer = t.boundary(2).col(0);
        assert!(!t.is_nontrivial_cycle(1, &stabilizer));
    }

    #[test]
    fn tensor_examples() {
        let c = ChainComplex::classical("C", &hamming_7_4());
        let d = ChainComplex::classical("D", &repetition(3).transpose());
        let cd = c.tensor(&d);
        assert_eq!(cd.validate(), Ok(()));
        assert_eq!(cd.dim(1), 27);
        assert_eq!(cd.homology_dim(1), 4);
        let labels: Vec<&str> = cd.blocks(1).iter().map(|b| b.label.as_str()).collect();
        assert_eq!(labels, ["C1xD0", "C0xD1"]);
        for d in 2..5 {
            let t = toric(d);
            assert_eq!(t.dims(), &[d * d, 2 * d * d, d * d]);
        }
        let unit = ChainComplex::single("U", 0, 1);
        let cu = c.tensor(&unit);
        assert_eq!(cu.dims(), c.dims());
        assert_eq!(cu.boundary(1), c.boundary(1));
    }

    #[test]
    fn kunneth_examples() {
        let c = ChainComplex::classical("C", &hamming_7_4());
        let d = ChainComplex::classical("D", &repetition(3).transpose());
        assert_eq!(c.kunneth_check(&d, 1), Ok(()));
        assert_eq!(c.homology_dim(1) * d.homology_dim(0) + c.homology_dim(0) * d.homology_dim(1), 4);
        let r = ChainComplex::classical("R", &cyclic_repetition(3));
        assert_eq!(r.kunneth_check(&r, 1), Ok(()));
        assert_eq!(r.tensor(&r).homology_dim(1), 2);
    }

    #[test]
    fn product_distance_examples() {
        let r = ChainComplex::classical("R", &cyclic_repetition(3));
        assert_eq!(r.product_distance_check(&r, 1, &cfg()).unwrap(), Ok(Finite(3)));
        let c = ChainComplex::classical("C", &hamming_7_4());
        let d = ChainComplex::classical("D", &repetition(3).transpose());
        assert_eq!(c.product_distance_check(&d, 1, &cfg()).unwrap(), Ok(Finite(3)));
        // full-rank second factor: H_1(D) = 0
        let f = ChainComplex::classical("F", &repetition(3));
        let res = c.product_distance_check(&f, 1, &cfg()).unwrap();
        assert!(res.is_ok(), "{res:?}");
    }

    #[test]
    fn blocks_cover_each_degree() {
        let t = toric(3);
        for i in t.degrees() {
            let total: usize = t.blocks(i).iter().map(|b| b.len).sum();
            assert_eq!(total, t.dim(i));
        }
    }
}
