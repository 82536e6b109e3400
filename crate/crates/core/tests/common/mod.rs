//! Independent reference computations shared by the integration and acceptance targets.
#![allow(dead_code)]

use hgp_surgery::complex::{cyclic_repetition, hamming_7_4, repetition};
use hgp_surgery::gadget::{self, Family, GadgetOptions, SurgeryGadget};
use hgp_surgery::{BitMatrix, BitVec, ChainComplex, ChainMap};
use rand::rngs::StdRng;
use rand::Rng;

/// Rows of `m` as `u128` masks; needs at most 128 columns.
pub fn row_masks(m: &BitMatrix) -> Vec<u128> {
    assert!(m.cols() <= 128, "oracle limited to 128 columns");
    (0..m.rows())
        .map(|r| (0..m.cols()).filter(|&c| m.get(r, c)).fold(0u128, |acc, c| acc | 1 << c))
        .collect()
}

/// Columns of `m` as `u128` masks; needs at most 128 rows.
pub fn col_masks(m: &BitMatrix) -> Vec<u128> {
    row_masks(&m.transpose())
}

/// XOR basis keyed by highest set bit.
#[derive(Default)]
pub struct XorBasis {
    slots: Vec<(u32, u128)>,
}

impl XorBasis {
    pub fn reduce(&self, mut v: u128) -> u128 {
        for &(bit, b) in &self.slots {
            if v >> bit & 1 == 1 {
                v ^= b;
            }
        }
        v
    }

    pub fn insert(&mut self, v: u128) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let bit = 127 - v.leading_zeros();
        self.slots.push((bit, v));
        self.slots.sort_by_key(|s| std::cmp::Reverse(s.0));
        true
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }
}

pub fn rank(m: &BitMatrix) -> usize {
    let masks = if m.cols() <= 128 { row_masks(m) } else { col_masks(m) };
    let mut b = XorBasis::default();
    masks.into_iter().filter(|&v| b.insert(v)).count()
}

pub fn homology_dim(cx: &ChainComplex, i: i32) -> usize {
    cx.dim(i) - rank(&cx.boundary(i)) - rank(&cx.boundary(i + 1))
}

/// `∂_i ∘ ∂_{i+1} = 0` by explicit row-column parity.
pub fn boundaries_compose_to_zero(cx: &ChainComplex) -> bool {
    cx.degrees().all(|i| {
        let a = cx.boundary(i);
        let b = cx.boundary(i + 1);
        (0..a.rows()).all(|r| (0..b.cols()).all(|c| (0..a.cols()).filter(|&k| a.get(r, k) && b.get(k, c)).count() % 2 == 0))
    })
}

fn min_nontrivial(n: usize, checks: &[u128], trivial: &[u128]) -> Option<usize> {
    assert!(n <= 22, "brute force limited to 22 bits");
    let mut span = XorBasis::default();
    for &t in trivial {
        span.insert(t);
    }
    let mut best: Option<usize> = None;
    for x in 1u128..1 << n {
        let w = x.count_ones() as usize;
        if best.is_some_and(|b| w >= b) {
            continue;
        }
        let syndrome = (0..n).filter(|&j| x >> j & 1 == 1).fold(0u128, |acc, j| acc ^ checks[j]);
        if syndrome == 0 && span.reduce(x) != 0 {
            best = Some(w);
        }
    }
    best
}

/// `d_i` by enumerating every vector of `C_i`; `None` for empty homology.
pub fn brute_systolic(cx: &ChainComplex, i: i32) -> Option<usize> {
    let checks = col_masks(&cx.boundary(i));
    let trivial = col_masks(&cx.boundary(i + 1));
    min_nontrivial(cx.dim(i), &checks, &trivial)
}

/// `d^i` by enumerating every vector of `C_i`.
pub fn brute_cosystolic(cx: &ChainComplex, i: i32) -> Option<usize> {
    let checks = row_masks(&cx.boundary(i + 1));
    let trivial = row_masks(&cx.boundary(i));
    min_nontrivial(cx.dim(i), &checks, &trivial)
}

/// Some `x` with `m x = b`, by trying all `2^cols` vectors.
pub fn brute_solve(m: &BitMatrix, b: &BitVec) -> Option<u32> {
    assert!(m.cols() <= 16);
    let cols = col_masks(m);
    let target = (0..b.len()).filter(|&i| b.get(i)).fold(0u128, |a, i| a | 1 << i);
    (0u32..1 << m.cols()).find(|&x| (0..m.cols()).filter(|&j| x >> j & 1 == 1).fold(0u128, |a, j| a ^ cols[j]) == target)
}

/// Edge expansion of a multigraph by walking subsets in order of size, as a reduced `(num, den)`.
pub fn cheeger_by_size(n: usize, edges: &[(usize, usize)]) -> Option<(u64, u64)> {
    fn walk(start: usize, left: usize, n: usize, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if left == 0 {
            visit(chosen);
            return;
        }
        for v in start..=n - left {
            chosen.push(v);
            walk(v + 1, left - 1, n, chosen, visit);
            chosen.pop();
        }
    }
    let mut best: Option<(u64, u64)> = None;
    for size in 1..n {
        let den = size.min(n - size) as u64;
        walk(0, size, n, &mut Vec::new(), &mut |s: &[usize]| {
            let cut = edges.iter().filter(|(a, b)| s.contains(a) != s.contains(b)).count() as u64;
            if best.is_none_or(|(bn, bd)| cut * bd < bn * den) {
                best = Some((cut, den));
            }
        });
    }
    best.map(|(a, b)| {
        let g = gcd(a, b);
        (a / g, b / g)
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a.max(1) } else { gcd(b, a % b) }
}

pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(0.5) {
                m.set(r, c, true);
            }
        }
    }
    m
}

pub fn random_classical(rng: &mut StdRng, name: &str, max: usize) -> ChainComplex {
    let rows = rng.gen_range(1..=max);
    let cols = rng.gen_range(1..=max);
    ChainComplex::classical(name, &random_matrix(rng, rows, cols))
}

pub fn random_graph(rng: &mut StdRng, n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.35) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// A gadget on a random classical code, or `None` when the code has no codewords.
pub fn random_gadget(rng: &mut StdRng) -> Option<SurgeryGadget> {
    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(3..=7);
    let h = random_matrix(rng, rows, cols);
    let ker = h.kernel_basis();
    if ker.is_empty() {
        return None;
    }
    let mut c = BitVec::zeros(cols);
    while c.is_zero() {
        for k in &ker {
            if rng.gen_bool(0.5) {
                c.xor_assign(k);
            }
        }
    }
    let family = [Family::Path, Family::Cycle, Family::Complete][rng.gen_range(0..3)];
    let opts = GadgetOptions { faces: rng.gen_bool(0.7), ..GadgetOptions::default() };
    gadget::synthesize(&ChainComplex::classical("C", &h), &c, family, &opts).ok()
}

/// Named quantum products `(C, D)`; every `D` is two-term.
pub fn corpus() -> Vec<(&'static str, ChainComplex, ChainComplex)> {
    let c = |name: &str, h: BitMatrix| ChainComplex::classical(name, &h);
    vec![
        ("hamming x rep3^T", c("C", hamming_7_4()), c("D", repetition(3).transpose())),
        ("rep3 x rep3", c("C", repetition(3)), c("D", repetition(3))),
        ("hamming x rep3", c("C", hamming_7_4()), c("D", repetition(3))),
        ("toric 2", c("C", cyclic_repetition(2)), c("D", cyclic_repetition(2))),
        ("toric 3", c("C", cyclic_repetition(3)), c("D", cyclic_repetition(3))),
        ("toric 4", c("C", cyclic_repetition(4)), c("D", cyclic_repetition(4))),
    ]
}

fn bits(s: &str) -> BitVec {
    BitVec::from_bitstring(s).unwrap()
}

/// Named gadget sequences on classical codes: `(name, code, codewords, family)`.
pub fn gadget_corpus() -> Vec<(&'static str, ChainComplex, Vec<BitVec>, Family)> {
    let c = |h: BitMatrix| ChainComplex::classical("C", &h);
    let two_tori = cyclic_repetition(3).direct_sum(&cyclic_repetition(3));
    vec![
        ("hamming path", c(hamming_7_4()), vec![bits("1110000")], Family::Path),
        ("hamming complete pair", c(hamming_7_4()), vec![bits("1110000"), bits("1101001")], Family::Complete),
        ("hamming cycle", c(hamming_7_4()), vec![bits("1111111")], Family::Cycle),
        ("cyclic rep3 cycle", c(cyclic_repetition(3)), vec![bits("111")], Family::Cycle),
        ("cyclic rep6 cycle", c(cyclic_repetition(6)), vec![bits("111111")], Family::Cycle),
        ("rep4 path", c(repetition(4)), vec![bits("1111")], Family::Path),
        ("two tori check-graph", c(two_tori), vec![bits("111111"), bits("111000")], Family::CheckGraph),
    ]
}

pub fn build_gadgets(code: &ChainComplex, words: &[BitVec], family: Family) -> Vec<SurgeryGadget> {
    words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            gadget::synthesize_named(code, w, family, &GadgetOptions::default(), &format!("G{}", i + 1)).unwrap()
        })
        .collect()
}

/// `dim H_1` drops by `t` and `dim H_0` is unchanged across `cone(Σ g[i])`.
pub fn coned_homology_holds(code: &ChainComplex, gadgets: &[SurgeryGadget]) -> Result<(), String> {
    let maps: Vec<ChainMap> = gadgets.iter().map(|g| g.map.clone()).collect();
    let sum = ChainMap::sum(&maps, "Gbar").map_err(|e| e.to_string())?;
    let cone = sum.cone().complex;
    let (h1, h0) = (homology_dim(code, 1), homology_dim(code, 0));
    let (c1, c0) = (homology_dim(&cone, 1), homology_dim(&cone, 0));
    if c1 + gadgets.len() != h1 || c0 != h0 {
        return Err(format!("H1 {h1} -> {c1}, H0 {h0} -> {c0}, t = {}", gadgets.len()));
    }
    if !boundaries_compose_to_zero(&cone) {
        return Err("cone boundaries do not compose to zero".into());
    }
    Ok(())
}

/// Künneth identity on a random pair, with ranks from the oracle.
pub fn kunneth_instance(rng: &mut StdRng) -> Result<(), String> {
    let c = random_classical(rng, "C", 6);
    let d = random_classical(rng, "D", 6);
    let t = c.tensor(&d);
    if !boundaries_compose_to_zero(&t) {
        return Err("tensor boundaries do not compose to zero".into());
    }
    for k in t.degrees() {
        let lhs = homology_dim(&t, k);
        let rhs: usize = c.degrees().map(|p| homology_dim(&c, p) * if d.degrees().contains(&(k - p)) { homology_dim(&d, k - p) } else { 0 }).sum();
        if lhs != rhs || c.kunneth_check(&d, k).is_err() {
            return Err(format!("degree {k}: tensor {lhs}, formula {rhs}"));
        }
    }
    Ok(())
}

/// Cone of `g ⊗ id_D` against `cone(g) ⊗ D` on a random gadget.
pub fn cone_iso_instance(rng: &mut StdRng) -> Result<bool, String> {
    let Some(g) = random_gadget(rng) else { return Ok(false) };
    let d = random_classical(rng, "D", 4);
    hgp_surgery::chainmap::cone_product_isomorphism_check(&g.map, &d).map_err(|e| format!("{e:?}"))?;
    let lifted = g.map.tensor_identity(&d).cone().complex;
    let product = g.map.cone().complex.tensor(&d);
    let lhs: Vec<usize> = lifted.degrees().map(|k| homology_dim(&lifted, k)).collect();
    let rhs: Vec<usize> = product.degrees().map(|k| homology_dim(&product, k)).collect();
    let (mut l, mut r) = (lhs.clone(), rhs.clone());
    while l.first() == Some(&0) { l.remove(0); }
    while r.first() == Some(&0) { r.remove(0); }
    while l.last() == Some(&0) { l.pop(); }
    while r.last() == Some(&0) { r.pop(); }
    if l != r || lifted.total_dim() != product.total_dim() {
        return Err(format!("homology {lhs:?} vs {rhs:?}"));
    }
    Ok(true)
}

/// Library Cheeger constant against the size-ordered oracle on a random graph.
pub fn cheeger_instance(rng: &mut StdRng, n: usize) -> Result<(), String> {
    use hgp_surgery::cheeger::{cheeger_constant, incidence, Expansion};
    let edges = random_graph(rng, n);
    let lib = cheeger_constant(&incidence(n, &edges)).map_err(|e| e.to_string())?;
    let oracle = match cheeger_by_size(n, &edges) {
        Some((a, b)) => Expansion::ratio(a, b),
        None => Expansion::Infinite,
    };
    if lib != oracle {
        return Err(format!("n = {n}, edges {edges:?}: library {lib}, oracle {oracle}"));
    }
    Ok(())
}
