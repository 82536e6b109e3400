//! Exact boundary Cheeger constants by exhaustive enumeration.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

/// Default column limit for exhaustive enumeration.
pub const CHEEGER_LIMIT: usize = 22;

/// An exact expansion ratio, or `Infinite` when no subset constrains it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expansion {
    Ratio(Ratio<u64>),
    Infinite,
}

impl Expansion {
    pub fn ratio(num: u64, den: u64) -> Self {
        Expansion::Ratio(Ratio::new(num, den))
    }

    pub fn at_least_one(self) -> bool {
        self >= Expansion::ratio(1, 1)
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expansion::Ratio(r) => write!(f, "{r}"),
            Expansion::Infinite => f.write_str("inf"),
        }
    }
}

/// `β(M) = min |Mv| / min(|v|, n - |v|)` over all `v` with a nonzero denominator.
pub fn cheeger_constant(m: &BitMatrix) -> Result<Expansion> {
    cheeger_constant_with_limit(m, CHEEGER_LIMIT)
}

pub fn cheeger_constant_with_limit(m: &BitMatrix, limit: usize) -> Result<Expansion> {
    let n = m.cols() as u64;
    scan(m, limit, None, move |w, _| w.min(n - w))
}

/// `β_t(M, P)`: the denominator is `min(t, |S ∩ P|, |P \ S|)`; zero terms are skipped.
pub fn relative_cheeger(m: &BitMatrix, p: &[usize], t: usize) -> Result<Expansion> {
    relative_cheeger_with_limit(m, p, t, CHEEGER_LIMIT)
}

pub fn relative_cheeger_with_limit(m: &BitMatrix, p: &[usize], t: usize, limit: usize) -> Result<Expansion> {
    let mask = BitVec::from_indices(m.cols(), p.iter().copied());
    let psize = mask.weight() as u64;
    let t = t as u64;
    scan(m, limit, Some(mask), move |_, inside| t.min(inside).min(psize - inside))
}

fn scan<F>(m: &BitMatrix, limit: usize, mask: Option<BitVec>, denom: F) -> Result<Expansion>
where
    F: Fn(u64, u64) -> u64 + Sync,
{
    let n = m.cols();
    if !m.mul_vec(&BitVec::ones(n))?.is_zero() {
        return Err(Error::KernelViolation);
    }
    if n > limit || n >= 63 {
        return Err(Error::CheegerBudgetExceeded { cols: n, limit });
    }
    let cols: Vec<BitVec> = (0..n).map(|j| m.col(j)).collect();
    let in_p: Vec<bool> = (0..n).map(|j| mask.as_ref().is_none_or(|p| p.get(j))).collect();
    let top = n.min(6);
    let low = n - top;
    let best = (0u64..1 << top)
        .into_par_iter()
        .filter_map(|prefix| {
            let mut mv = BitVec::zeros(m.rows());
            let mut size = 0u64;
            let mut inside = 0u64;
            let mut on = vec![false; n];
            for b in 0..top {
                if (prefix >> b) & 1 == 1 {
                    let j = low + b;
                    mv.xor_assign(&cols[j]);
                    on[j] = true;
                    size += 1;
                    inside += in_p[j] as u64;
                }
            }
            let mut best: Option<(u64, u64)> = None;
            let mut visit = |mv: &BitVec, size: u64, inside: u64| {
                let den = denom(size, inside);
                if den == 0 {
                    return;
                }
                let num = mv.weight() as u64;
                if best.is_none_or(|(bn, bd)| num * bd < bn * den) {
                    best = Some((num, den));
                }
            };
            visit(&mv, size, inside);
            for i in 1u64..1 << low {
                let j = i.trailing_zeros() as usize;
                mv.xor_assign(&cols[j]);
                on[j] = !on[j];
                if on[j] {
                    size += 1;
                    inside += in_p[j] as u64;
                } else {
                    size -= 1;
                    inside -= in_p[j] as u64;
                }
                visit(&mv, size, inside);
            }
            best
        })
        .min_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    Ok(match best {
        Some((num, den)) => Expansion::ratio(num, den),
        None => Expansion::Infinite,
    })
}

/// Vertex-edge incidence (edges x vertices) of a multigraph.
pub fn incidence(n: usize, edges: &[(usize, usize)]) -> BitMatrix {
    let mut m = BitMatrix::zeros(edges.len(), n);
    for (e, &(a, b)) in edges.iter().enumerate() {
        m.flip(e, a);
        m.flip(e, b);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> BitMatrix {
        incidence(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    fn cycle(n: usize) -> BitMatrix {
        incidence(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn complete(n: usize) -> BitMatrix {
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        incidence(n, &edges)
    }

    #[test]
    fn graph_examples() {
        assert_eq!(cheeger_constant(&path(3)).unwrap(), Expansion::ratio(1, 1));
        assert_eq!(cheeger_constant(&cycle(6)).unwrap(), Expansion::ratio(2, 3));
        assert_eq!(cheeger_constant(&complete(4)).unwrap(), Expansion::ratio(2, 1));
    }

    #[test]
    fn path_expansion_is_one_over_half_length() {
        for n in 2..12 {
            assert_eq!(cheeger_constant(&path(n)).unwrap(), Expansion::ratio(1, (n / 2) as u64));
        }
    }

    #[test]
    fn relative_examples() {
        let all: Vec<usize> = (0..6).collect();
        let c6 = cycle(6);
        assert_eq!(relative_cheeger(&c6, &all, 3).unwrap(), cheeger_constant(&c6).unwrap());
        assert_eq!(relative_cheeger(&c6, &all, 2).unwrap(), Expansion::ratio(1, 1));
        assert_eq!(relative_cheeger(&c6, &[], 2).unwrap(), Expansion::Infinite);
    }

    #[test]
    fn rejects_bad_inputs() {
        let m = BitMatrix::from_rows(&[&[1, 0, 0]]);
        assert_eq!(cheeger_constant(&m), Err(Error::KernelViolation));
        assert!(matches!(
            cheeger_constant_with_limit(&cycle(10), 8),
            Err(Error::CheegerBudgetExceeded { cols: 10, limit: 8 })
        ));
    }
}
