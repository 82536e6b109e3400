//! Exhaustive minimum-weight search for nontrivial (co)homology classes.
//!
//! A candidate `x` is accepted when `check * x = 0` and `<y, x> = 1` for at
//! least one `y` in a list of dual vectors. With `check = ∂_i` and the duals a
//! basis of `H^i`, this is exactly a nontrivial class of `H_i`.

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;

use crate::gf2::{BitMatrix, BitVec};

/// A distance value; `Infinite` sorts above every finite count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    /// Product with `∞ · a = ∞` for `a > 0`. Returns `None` for `∞ · 0`.
    pub fn checked_mul(self, other: Distance) -> Option<Distance> {
        use Distance::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Some(Finite(a * b)),
            (Infinite, Finite(0)) | (Finite(0), Infinite) => None,
            _ => Some(Infinite),
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// Result of a budgeted search: exact, or a proven lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistanceBound {
    Exact(Distance),
    AtLeast(usize),
}

impl DistanceBound {
    pub fn exact(self) -> Option<Distance> {
        match self {
            DistanceBound::Exact(d) => Some(d),
            DistanceBound::AtLeast(_) => None,
        }
    }

    /// Smallest value consistent with the result.
    pub fn lower(self) -> Distance {
        match self {
            DistanceBound::Exact(d) => d,
            DistanceBound::AtLeast(w) => Distance::Finite(w),
        }
    }

    /// Whether the result certifies a distance of at least `d`.
    pub fn at_least(self, d: usize) -> Verdict {
        match self {
            DistanceBound::Exact(x) => Verdict::from_bool(x >= Distance::Finite(d)),
            DistanceBound::AtLeast(w) if w >= d => Verdict::Pass,
            DistanceBound::AtLeast(_) => Verdict::Inconclusive,
        }
    }

    pub fn min(self, other: DistanceBound) -> DistanceBound {
        use DistanceBound::*;
        match (self, other) {
            (Exact(a), Exact(b)) => Exact(a.min(b)),
            (Exact(Distance::Finite(a)), AtLeast(w)) | (AtLeast(w), Exact(Distance::Finite(a))) if a <= w => {
                Exact(Distance::Finite(a))
            }
            (a, b) => AtLeast(a.lower().min(b.lower()).finite().unwrap_or(usize::MAX)),
        }
    }
}

impl fmt::Display for DistanceBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceBound::Exact(d) => write!(f, "{d} (exact)"),
            DistanceBound::AtLeast(w) => write!(f, ">={w} (lower-bound)"),
        }
    }
}

/// Three-valued outcome of a checked condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Combined verdict: any failure fails, else any inconclusive is inconclusive.
    pub fn and(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    pub fn all(items: impl IntoIterator<Item = Verdict>) -> Verdict {
        items.into_iter().fold(Verdict::Pass, Verdict::and)
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Kernel walk when the kernel has dimension at most 20, otherwise weight order.
    Auto,
    /// Supports of increasing weight; stops at the first nontrivial one.
    WeightOrder,
    /// Gray-code walk over every element of the kernel.
    KernelWalk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of candidate vectors examined.
    pub budget: u64,
    pub strategy: Strategy,
}

pub const DEFAULT_BUDGET: u64 = 1 << 26;

impl Default for SearchConfig {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, strategy: Strategy::Auto }
    }
}

impl SearchConfig {
    pub fn with_budget(budget: u64) -> Self {
        Self { budget, ..Self::default() }
    }

    pub fn with_strategy(self, strategy: Strategy) -> Self {
        Self { strategy, ..self }
    }
}

/// Minimum weight of `x` with `check * x = 0` and `<y, x> = 1` for some dual `y`.
pub fn min_weight(check: &BitMatrix, duals: &[BitVec], cfg: &SearchConfig) -> DistanceBound {
    if duals.is_empty() {
        return DistanceBound::Exact(Distance::Infinite);
    }
    match cfg.strategy {
        Strategy::WeightOrder => weight_order(check, duals, cfg.budget),
        Strategy::KernelWalk => kernel_walk(check, duals, cfg.budget),
        Strategy::Auto => {
            let dim_ker = check.cols() - check.rank();
            if dim_ker <= 20 {
                kernel_walk(check, duals, cfg.budget)
            } else {
                weight_order(check, duals, cfg.budget)
            }
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

struct Packed {
    n: usize,
    width: usize,
    syn: usize,
    data: Vec<u64>,
}

impl Packed {
    fn new(check: &BitMatrix, duals: &[BitVec]) -> Self {
        let n = check.cols();
        let syn = check.rows().div_ceil(64);
        let sig = duals.len().div_ceil(64);
        let width = syn + sig;
        let mut data = vec![0u64; n * width];
        for r in 0..check.rows() {
            for c in check.row(r).support() {
                data[c * width + r / 64] |= 1 << (r % 64);
            }
        }
        for (k, y) in duals.iter().enumerate() {
            for c in y.support() {
                data[c * width + syn + k / 64] |= 1 << (k % 64);
            }
        }
        Self { n, width, syn, data }
    }

    #[inline]
    fn col(&self, j: usize) -> &[u64] {
        &self.data[j * self.width..(j + 1) * self.width]
    }

    #[inline]
    fn accepts(&self, acc: &[u64]) -> bool {
        acc[..self.syn].iter().all(|&w| w == 0) && acc[self.syn..].iter().any(|&w| w != 0)
    }

    /// Depth-first over increasing index tuples; `acc` holds `depth` stacked accumulators.
    fn dfs(&self, acc: &mut [u64], level: usize, start: usize, remaining: usize, stop: &AtomicBool) -> bool {
        let w = self.width;
        for j in start..=self.n - remaining {
            if stop.load(Ordering::Relaxed) {
                return false;
            }
            let (prev, next) = acc.split_at_mut((level + 1) * w);
            let cur = &mut next[..w];
            for ((c, p), x) in cur.iter_mut().zip(&prev[level * w..]).zip(self.col(j)) {
                *c = p ^ x;
            }
            if remaining == 1 {
                if self.accepts(cur) {
                    return true;
                }
            } else if self.dfs(acc, level + 1, j + 1, remaining - 1, stop) {
                return true;
            }
        }
        false
    }

    fn exists_of_weight(&self, wt: usize) -> bool {
        let stop = AtomicBool::new(false);
        (0..=self.n - wt).into_par_iter().any(|first| {
            let mut acc = vec![0u64; (wt + 1) * self.width];
            acc[self.width..2 * self.width].copy_from_slice(self.col(first));
            let found = if wt == 1 {
                self.accepts(&acc[self.width..2 * self.width])
            } else {
                self.dfs(&mut acc, 1, first + 1, wt - 1, &stop)
            };
            if found {
                stop.store(true, Ordering::Relaxed);
            }
            found
        })
    }
}

fn weight_order(check: &BitMatrix, duals: &[BitVec], budget: u64) -> DistanceBound {
    let packed = Packed::new(check, duals);
    let n = packed.n;
    let mut examined: u128 = 0;
    for wt in 1..=n {
        let count = binomial(n, wt);
        if examined + count > budget as u128 {
            return DistanceBound::AtLeast(wt);
        }
        examined += count;
        if packed.exists_of_weight(wt) {
            return DistanceBound::Exact(Distance::Finite(wt));
        }
    }
    DistanceBound::Exact(Distance::Infinite)
}

fn kernel_walk(check: &BitMatrix, duals: &[BitVec], budget: u64) -> DistanceBound {
    let ker = check.kernel_basis();
    let k = ker.len();
    if k == 0 {
        return DistanceBound::Exact(Distance::Infinite);
    }
    if k >= 63 || (1u64 << k) > budget {
        return DistanceBound::AtLeast(1);
    }
    let sig_words = duals.len().div_ceil(64);
    let sigs: Vec<Vec<u64>> = ker
        .iter()
        .map(|v| {
            let mut s = vec![0u64; sig_words];
            for (i, y) in duals.iter().enumerate() {
                if y.dot(v) {
                    s[i / 64] |= 1 << (i % 64);
                }
            }
            s
        })
        .collect();
    let top = k.min(8);
    let low = k - top;
    let best = (0u64..1 << top)
        .into_par_iter()
        .map(|prefix| {
            let mut x = BitVec::zeros(check.cols());
            let mut s = vec![0u64; sig_words];
            for b in 0..top {
                if (prefix >> b) & 1 == 1 {
                    x.xor_assign(&ker[low + b]);
                    for (a, t) in s.iter_mut().zip(&sigs[low + b]) {
                        *a ^= t;
                    }
                }
            }
            let mut best = usize::MAX;
            let mut visit = |x: &BitVec, s: &[u64]| {
                if s.iter().any(|&w| w != 0) {
                    best = best.min(x.weight());
                }
            };
            visit(&x, &s);
            for i in 1u64..1 << low {
                let b = i.trailing_zeros() as usize;
                x.xor_assign(&ker[b]);
                for (a, t) in s.iter_mut().zip(&sigs[b]) {
                    *a ^= t;
                }
                visit(&x, &s);
            }
            best
        })
        .min()
        .unwrap_or(usize::MAX);
    if best == usize::MAX {
        DistanceBound::Exact(Distance::Infinite)
    } else {
        DistanceBound::Exact(Distance::Finite(best))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_rep(d: usize) -> BitMatrix {
        let mut h = BitMatrix::zeros(d, d);
        for r in 0..d {
            h.set(r, r, true);
            h.flip(r, (r + 1) % d);
        }
        h
    }

    #[test]
    fn strategies_agree_on_repetition_code() {
        for d in 2..8 {
            let h = cyclic_rep(d);
            let duals = vec![BitVec::unit(d, 0)];
            for s in [Strategy::WeightOrder, Strategy::KernelWalk, Strategy::Auto] {
                let cfg = SearchConfig::default().with_strategy(s);
                assert_eq!(min_weight(&h, &duals, &cfg), DistanceBound::Exact(Distance::Finite(d)));
            }
        }
    }

    #[test]
    fn no_duals_means_infinite() {
        let h = BitMatrix::identity(3);
        assert_eq!(min_weight(&h, &[], &SearchConfig::default()), DistanceBound::Exact(Distance::Infinite));
    }

    #[test]
    fn budget_gives_lower_bound() {
        let h = cyclic_rep(6);
        let duals = vec![BitVec::unit(6, 0)];
        let cfg = SearchConfig::with_budget(20).with_strategy(Strategy::WeightOrder);
        // weights 1 and 2 cost 6 + 15 = 21 > 20
        assert_eq!(min_weight(&h, &duals, &cfg), DistanceBound::AtLeast(2));
    }

    #[test]
    fn distance_arithmetic() {
        use Distance::*;
        assert!(Infinite > Finite(usize::MAX));
        assert_eq!(Infinite.checked_mul(Finite(3)), Some(Infinite));
        assert_eq!(Finite(2).checked_mul(Finite(3)), Some(Finite(6)));
        assert_eq!(Infinite.checked_mul(Finite(0)), None);
        assert_eq!(Infinite.min(Finite(4)), Finite(4));
        assert_eq!(DistanceBound::AtLeast(3).at_least(3), Verdict::Pass);
        assert_eq!(DistanceBound::AtLeast(2).at_least(3), Verdict::Inconclusive);
        assert_eq!(DistanceBound::Exact(Finite(2)).at_least(3), Verdict::Fail);
        assert_eq!(Verdict::all([Verdict::Pass, Verdict::Inconclusive]), Verdict::Inconclusive);
        assert_eq!(Verdict::all([Verdict::Fail, Verdict::Inconclusive]), Verdict::Fail);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(60, 3), 34220);
        assert_eq!(binomial(3, 4), 0);
    }
}
