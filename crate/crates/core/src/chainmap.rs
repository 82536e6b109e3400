//! Chain maps, mapping cones and the CSS code read off a cone.

use std::collections::BTreeMap;

use crate::complex::{Block, ChainComplex, TensorLayout};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Degree-indexed linear maps `f_i : source_i -> target_i`; missing degrees are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    maps: BTreeMap<i32, BitMatrix>,
}

/// A square `f_{i-1} ∂_i = ∂_i f_i` that fails to commute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapViolation {
    pub degree: i32,
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, maps: BTreeMap<i32, BitMatrix>) -> Result<Self> {
        for (&i, m) in &maps {
            if m.shape() != (target.dim(i), source.dim(i)) {
                return Err(Error::Shape(format!(
                    "map at degree {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim(i),
                    source.dim(i)
                )));
            }
        }
        Ok(Self { source, target, maps })
    }

    pub fn identity(cx: &ChainComplex) -> Self {
        let maps = cx.degrees().map(|i| (i, BitMatrix::identity(cx.dim(i)))).collect();
        Self { source: cx.clone(), target: cx.clone(), maps }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        Self { source: source.clone(), target: target.clone(), maps: BTreeMap::new() }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    /// `f_i`, or the zero map of the right shape.
    pub fn map(&self, i: i32) -> BitMatrix {
        self.maps
            .get(&i)
            .cloned()
            .unwrap_or_else(|| BitMatrix::zeros(self.target.dim(i), self.source.dim(i)))
    }

    /// Mutable access to `f_i`; nothing is rechecked until `validate`.
    pub fn map_mut(&mut self, i: i32) -> &mut BitMatrix {
        let (r, c) = (self.target.dim(i), self.source.dim(i));
        self.maps.entry(i).or_insert_with(|| BitMatrix::zeros(r, c))
    }

    fn degree_span(&self) -> std::ops::RangeInclusive<i32> {
        self.source.lo().min(self.target.lo())..=self.source.hi().max(self.target.hi())
    }

    /// Checks every commuting square; reports the lowest failing degree.
    pub fn validate(&self) -> std::result::Result<(), MapViolation> {
        let span = self.degree_span();
        for i in *span.start() + 1..=*span.end() {
            let lhs = self.map(i - 1).mul(&self.source.boundary(i)).expect("shapes agree");
            let rhs = self.target.boundary(i).mul(&self.map(i)).expect("shapes agree");
            if lhs != rhs {
                return Err(MapViolation { degree: i });
            }
        }
        Ok(())
    }

    /// `f ⊗ id_D : source ⊗ D -> target ⊗ D`.
    pub fn tensor_identity(&self, dx: &ChainComplex) -> ChainMap {
        let source = self.source.tensor(dx);
        let target = self.target.tensor(dx);
        let mut maps = BTreeMap::new();
        for k in source.degrees() {
            let sl = TensorLayout::new(&self.source, dx, k);
            let tl = TensorLayout::new(&self.target, dx, k);
            let mut m = BitMatrix::zeros(target.dim(k), source.dim(k));
            for &(p, q, off) in &sl.parts {
                if let (Some(&(_, _, to)), Some(g)) = (tl.find(p, q), self.maps.get(&p)) {
                    m.paste(to, off, &g.kron(&BitMatrix::identity(dx.dim(q))));
                }
            }
            maps.insert(k, m);
        }
        ChainMap { source, target, maps }
    }

    /// `id_C ⊗ f : C ⊗ source -> C ⊗ target`.
    pub fn identity_tensor(&self, cx: &ChainComplex) -> ChainMap {
        let source = cx.tensor(&self.source);
        let target = cx.tensor(&self.target);
        let mut maps = BTreeMap::new();
        for k in source.degrees() {
            let sl = TensorLayout::new(cx, &self.source, k);
            let tl = TensorLayout::new(cx, &self.target, k);
            let mut m = BitMatrix::zeros(target.dim(k), source.dim(k));
            for &(p, q, off) in &sl.parts {
                if let (Some(&(_, _, to)), Some(g)) = (tl.find(p, q), self.maps.get(&q)) {
                    m.paste(to, off, &BitMatrix::identity(cx.dim(p)).kron(g));
                }
            }
            maps.insert(k, m);
        }
        ChainMap { source, target, maps }
    }

    /// `Σ f[i]` from the direct sum of the sources into the common target.
    pub fn sum(maps: &[ChainMap], name: &str) -> Result<ChainMap> {
        let Some(first) = maps.first() else {
            return Err(Error::Shape("sum of an empty list of chain maps".into()));
        };
        if maps.iter().any(|m| m.target != first.target) {
            return Err(Error::Shape("summed chain maps must share a target".into()));
        }
        let mut source = first.source.clone();
        for m in &maps[1..] {
            source = source.direct_sum(&m.source, name);
        }
        let source = source.renamed(name);
        let mut out = ChainMap::zero(&source, &first.target);
        for i in source.degrees() {
            let mut col = 0;
            let mut m = BitMatrix::zeros(first.target.dim(i), source.dim(i));
            for f in maps {
                m.paste(0, col, &f.map(i));
                col += f.source.dim(i);
            }
            out.maps.insert(i, m);
        }
        Ok(out)
    }

    /// Mapping cone: degree `k` is `source_{k-1} ⊕ target_k` with boundary
    /// `[[∂_src, 0], [f, ∂_tgt]]`; ancilla coordinates come first.
    pub fn cone(&self) -> ConeComplex {
        let (s, t) = (&self.source, &self.target);
        let lo = (s.lo() + 1).min(t.lo());
        let hi = (s.hi() + 1).max(t.hi());
        let dims: Vec<usize> = (lo..=hi).map(|k| s.dim(k - 1) + t.dim(k)).collect();
        let bd = (lo + 1..=hi)
            .map(|k| {
                let mut m = BitMatrix::zeros(s.dim(k - 2) + t.dim(k - 1), s.dim(k - 1) + t.dim(k));
                m.paste(0, 0, &s.boundary(k - 1));
                m.paste(s.dim(k - 2), 0, &self.map(k - 1));
                m.paste(s.dim(k - 2), s.dim(k - 1), &t.boundary(k));
                m
            })
            .collect();
        let blocks = (lo..=hi)
            .map(|k| {
                let mut out: Vec<Block> = s.blocks(k - 1).to_vec();
                let off = s.dim(k - 1);
                out.extend(t.blocks(k).iter().map(|b| Block { offset: b.offset + off, ..b.clone() }));
                out
            })
            .collect();
        let ancilla = (lo..=hi).map(|k| s.dim(k - 1)).collect();
        let complex =
            ChainComplex::from_parts(format!("cone({}->{})", s.name(), t.name()), lo, dims, bd, blocks);
        ConeComplex { complex, ancilla }
    }
}

/// A mapping cone with the number of leading ancilla coordinates per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeComplex {
    pub complex: ChainComplex,
    ancilla: Vec<usize>,
}

impl ConeComplex {
    pub fn ancilla_dim(&self, k: i32) -> usize {
        let lo = self.complex.lo();
        if k < lo || k > self.complex.hi() {
            0
        } else {
            self.ancilla[(k - lo) as usize]
        }
    }

    pub fn base_dim(&self, k: i32) -> usize {
        self.complex.dim(k) - self.ancilla_dim(k)
    }

    /// CSS code with qubits at `q`: `M_Z = ∂_{q+2}ᵀ`, `H_Z = ∂_{q+1}ᵀ`, `H_X = ∂_q`.
    pub fn extract_css(&self, q: i32) -> Result<DeformedCssCode> {
        let cx = &self.complex;
        if q - 1 < cx.lo() || q + 1 > cx.hi() {
            return Err(Error::DegreeOutOfRange(q));
        }
        Ok(DeformedCssCode {
            qubit_degree: q,
            meta: cx.boundary(q + 2).transpose(),
            hz: cx.boundary(q + 1).transpose(),
            hx: cx.boundary(q),
            meta_blocks: cx.blocks(q + 2).to_vec(),
            z_blocks: cx.blocks(q + 1).to_vec(),
            qubit_blocks: cx.blocks(q).to_vec(),
            x_blocks: cx.blocks(q - 1).to_vec(),
            ancilla_meta: self.ancilla_dim(q + 2),
            ancilla_z: self.ancilla_dim(q + 1),
            ancilla_qubits: self.ancilla_dim(q),
            ancilla_x: self.ancilla_dim(q - 1),
        })
    }
}

/// The deformed CSS code: meta-checks, Z checks, qubits and X checks with block labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformedCssCode {
    pub qubit_degree: i32,
    /// One row per meta-check, one column per Z check.
    pub meta: BitMatrix,
    /// One row per Z check.
    pub hz: BitMatrix,
    /// One row per X check.
    pub hx: BitMatrix,
    pub meta_blocks: Vec<Block>,
    pub z_blocks: Vec<Block>,
    pub qubit_blocks: Vec<Block>,
    pub x_blocks: Vec<Block>,
    pub ancilla_meta: usize,
    pub ancilla_z: usize,
    pub ancilla_qubits: usize,
    pub ancilla_x: usize,
}

impl DeformedCssCode {
    pub fn num_qubits(&self) -> usize {
        self.hz.cols()
    }

    /// `H_X H_Zᵀ = 0` and `M_Z H_Z = 0` as literal products.
    pub fn is_consistent(&self) -> bool {
        let xz = self.hx.mul(&self.hz.transpose()).map(|m| m.is_zero()).unwrap_or(false);
        let mz = self.meta.mul(&self.hz).map(|m| m.is_zero()).unwrap_or(false);
        xz && mz
    }

    pub fn qubit_block(&self, label: &str) -> Option<&Block> {
        self.qubit_blocks.iter().find(|b| b.label == label)
    }

    pub fn z_block(&self, label: &str) -> Option<&Block> {
        self.z_blocks.iter().find(|b| b.label == label)
    }

    pub fn meta_block(&self, label: &str) -> Option<&Block> {
        self.meta_blocks.iter().find(|b| b.label == label)
    }
}

/// Degree at which `cone(g ⊗ id_D)` and `cone(g) ⊗ D` differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeIsoMismatch {
    pub degree: i32,
}

/// Coordinate permutation sending `cone(g) ⊗ D` at degree `k` onto `cone(g ⊗ id_D)`.
fn cone_tensor_permutation(g: &ChainMap, dx: &ChainComplex, k: i32) -> Vec<usize> {
    let (s, t) = (g.source(), g.target());
    let src_layout = TensorLayout::new(s, dx, k - 1);
    let tgt_layout = TensorLayout::new(t, dx, k);
    let anc = src_layout.dim;
    let cone_lo = (s.lo() + 1).min(t.lo());
    let cone_hi = (s.hi() + 1).max(t.hi());
    let mut perm = Vec::new();
    for p in (cone_lo..=cone_hi).rev() {
        let q = k - p;
        if q < dx.lo() || q > dx.hi() {
            continue;
        }
        let dq = dx.dim(q);
        let gs = s.dim(p - 1);
        for a in 0..gs + t.dim(p) {
            for b in 0..dq {
                let idx = if a < gs {
                    let &(_, _, off) = src_layout.find(p - 1, q).expect("block exists");
                    off + a * dq + b
                } else {
                    let &(_, _, off) = tgt_layout.find(p, q).expect("block exists");
                    anc + off + (a - gs) * dq + b
                };
                perm.push(idx);
            }
        }
    }
    perm
}

/// Builds both `cone(g ⊗ id_D)` and `cone(g) ⊗ D` and compares their
/// boundaries after the canonical coordinate permutation.
pub fn cone_product_isomorphism_check(g: &ChainMap, dx: &ChainComplex) -> std::result::Result<(), ConeIsoMismatch> {
    let direct = g.tensor_identity(dx).cone().complex;
    let product = g.cone().complex.tensor(dx);
    let lo = direct.lo().min(product.lo());
    let hi = direct.hi().max(product.hi());
    for k in lo..=hi {
        if direct.dim(k) != product.dim(k) {
            return Err(ConeIsoMismatch { degree: k });
        }
    }
    for k in lo + 1..=hi {
        let pc = cone_tensor_permutation(g, dx, k);
        let pr = cone_tensor_permutation(g, dx, k - 1);
        let b2 = product.boundary(k);
        let mut permuted = BitMatrix::zeros(b2.rows(), b2.cols());
        for (r, &to) in pr.iter().enumerate().take(b2.rows()) {
            for c in b2.row(r).support() {
                permuted.set(to, pc[c], true);
            }
        }
        if permuted != direct.boundary(k) {
            return Err(ConeIsoMismatch { degree: k });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cyclic_repetition, hamming_7_4, repetition};
    use crate::gf2::BitVec;

    fn hamming_path_gadget() -> ChainMap {
        // path 0 - 2 - 1 on the support {0,1,2} of 1110000
        let c = ChainComplex::classical("C", &hamming_7_4());
        let d1 = BitMatrix::from_rows(&[&[1, 0, 1], &[0, 1, 1]]);
        let g_cx = ChainComplex::new("G", -1, vec![0, 2, 3], vec![BitMatrix::zeros(0, 2), d1]).unwrap();
        let mut g1 = BitMatrix::zeros(7, 3);
        for v in 0..3 {
            g1.set(v, v, true);
        }
        let g0 = BitMatrix::from_rows(&[&[1, 0], &[0, 1], &[0, 0]]);
        ChainMap::new(g_cx, c, BTreeMap::from([(1, g1), (0, g0)])).unwrap()
    }

    #[test]
    fn validate_map_examples() {
        let t = ChainComplex::classical("R", &cyclic_repetition(3)).tensor(&ChainComplex::classical("R", &cyclic_repetition(3)));
        assert_eq!(ChainMap::identity(&t).validate(), Ok(()));
        let g = hamming_path_gadget();
        assert_eq!(g.validate(), Ok(()));
        let mut bad = g.clone();
        bad.map_mut(0).flip(0, 0);
        assert_eq!(bad.validate(), Err(MapViolation { degree: 1 }));
    }

    #[test]
    fn cone_examples() {
        let c = ChainComplex::classical("C", &hamming_7_4());
        let empty = ChainComplex::single("E", 0, 0);
        let cone = ChainMap::zero(&empty, &c).cone();
        for k in c.degrees() {
            assert_eq!(cone.complex.dim(k), c.dim(k));
            assert_eq!(cone.complex.boundary(k), c.boundary(k));
        }
        let g = hamming_path_gadget();
        let cg = g.cone();
        assert_eq!(cg.complex.validate(), Ok(()));
        assert_eq!(cg.complex.dim(1), 9);
        assert_eq!(cg.ancilla_dim(1), 2);
        assert_eq!(cg.complex.dim(2), 3);
        let d = ChainComplex::classical("D", &repetition(3).transpose());
        let def = g.tensor_identity(&d).cone();
        assert_eq!(def.complex.validate(), Ok(()));
        assert_eq!(def.complex.dim(1), 33);
        assert_eq!(def.complex.dim(3), 6);
        assert_eq!(def.complex.dim(2), 9 + 4 + 14);
    }

    #[test]
    fn tensor_identity_examples() {
        let d = ChainComplex::classical("D", &repetition(3).transpose());
        let c = ChainComplex::classical("C", &hamming_7_4());
        let id = ChainMap::identity(&c).tensor_identity(&d);
        assert_eq!(id, ChainMap::identity(&c.tensor(&d)));
        let f = hamming_path_gadget().tensor_identity(&d);
        assert_eq!(f.validate(), Ok(()));
        let z = ChainMap::zero(hamming_path_gadget().source(), &c).tensor_identity(&d);
        for k in z.source().degrees() {
            assert!(z.map(k).is_zero());
        }
    }

    #[test]
    fn cone_iso_examples() {
        let d = ChainComplex::classical("D", &repetition(3).transpose());
        assert_eq!(cone_product_isomorphism_check(&hamming_path_gadget(), &d), Ok(()));
        let c = ChainComplex::classical("C", &hamming_7_4());
        assert_eq!(cone_product_isomorphism_check(&ChainMap::identity(&c), &d), Ok(()));
        let acyclic = ChainMap::identity(&c).cone().complex;
        for k in acyclic.degrees() {
            assert_eq!(acyclic.homology_dim(k), 0);
        }
    }

    #[test]
    fn extract_css_examples() {
        let d = ChainComplex::classical("D", &repetition(3).transpose());
        let def = hamming_path_gadget().tensor_identity(&d).cone().extract_css(1).unwrap();
        assert_eq!(def.meta.rows(), 6);
        assert_eq!(def.num_qubits(), 33);
        assert_eq!(def.ancilla_qubits, 6);
        assert!(def.is_consistent());
        let labels: Vec<&str> = def.qubit_blocks.iter().map(|b| b.label.as_str()).collect();
        assert_eq!(labels, ["G0xD0", "G-1xD1", "C1xD0", "C0xD1"]);
        let base = ChainComplex::classical("C", &hamming_7_4()).tensor(&d);
        let trivial = ChainMap::zero(&ChainComplex::single("E", 0, 0), &base).cone();
        let css = trivial.extract_css(1).unwrap();
        assert_eq!(css.meta.rows(), 0);
        assert_eq!(css.hx, base.boundary(1));
        assert_eq!(css.hz, base.boundary(2).transpose());
        assert!(trivial.extract_css(0).is_err());
    }

    #[test]
    fn sum_of_maps_stacks_columns() {
        let g = hamming_path_gadget();
        let s = ChainMap::sum(&[g.clone(), g.clone()], "Gs").unwrap();
        assert_eq!(s.source().dim(1), 6);
        assert_eq!(s.validate(), Ok(()));
        let ones = BitVec::ones(6);
        assert!(s.map(1).mul_vec(&ones).unwrap().is_zero());
    }
}
