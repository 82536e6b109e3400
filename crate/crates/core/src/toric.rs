//! Cycle-gadget surgery on one or several toric codes.

use crate::complex::{cyclic_repetition, ChainComplex};
use crate::distance::{self, DistanceBound, SearchConfig, Verdict};
use crate::error::{Error, Result};
use crate::gadget::{self, Family, GadgetOptions, SurgeryGadget};
use crate::gf2::{BitMatrix, BitVec};
use crate::surgery::{
    build_compacted, build_deformed, build_hgp, canonical_basis, direct_sum_classical, DeformedCode, HgpCode,
    Orientation, SurgerySequence, QUBIT_DEGREE,
};

/// `M` toric blocks of side `d`, the HGP of `⊕ cyclic-rep-d` with `cyclic-rep-d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricInstance {
    pub d: usize,
    pub blocks: usize,
    pub code: HgpCode,
}

pub fn build_toric(d: usize, blocks: usize, cfg: &SearchConfig) -> Result<ToricInstance> {
    if d < 2 || blocks < 1 {
        return Err(Error::Config(format!("toric instance needs d >= 2 and M >= 1, got d={d} M={blocks}")));
    }
    let rep = ChainComplex::classical("C", &cyclic_repetition(d));
    let c = direct_sum_classical("C", &vec![rep; blocks])?;
    let dd = ChainComplex::classical("D", &cyclic_repetition(d));
    let code = build_hgp(&c, &dd, cfg)?;
    Ok(ToricInstance { d, blocks, code })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ToricVariant {
    /// One face per independent cycle; no gauge qubits.
    Faced,
    /// No faces in `G_{-1}`.
    FaceFree,
}

impl ToricInstance {
    /// `b ⊗ 1_d` in `C'_1`.
    pub fn codeword(&self, b: &BitVec) -> Result<BitVec> {
        if b.len() != self.blocks {
            return Err(Error::DimensionMismatch { context: "block selector", expected: self.blocks, found: b.len() });
        }
        if b.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(b.kron(&BitVec::ones(self.d)))
    }

    /// `Z̄^v_b = (b ⊗ 1_d) ⊗ e_l` on the base qubits.
    pub fn z_vertical(&self, b: &BitVec, l: usize) -> Result<BitVec> {
        let c = self.codeword(b)?;
        let mut out = BitVec::zeros(self.code.n);
        for a in c.support() {
            out.set(a * self.d + l, true);
        }
        Ok(out)
    }

    /// `X̄^v = (b⊥ ⊗ e_g) ⊗ 1_d` on the base qubits.
    pub fn x_vertical(&self, bperp: &BitVec, g: usize) -> BitVec {
        let mut out = BitVec::zeros(self.code.n);
        for blk in bperp.support() {
            let a = blk * self.d + g;
            for r in 0..self.d {
                out.set(a * self.d + r, true);
            }
        }
        out
    }
}

pub fn toric_gadget(inst: &ToricInstance, b: &BitVec, variant: ToricVariant) -> Result<SurgeryGadget> {
    let c = inst.codeword(b)?;
    let opts = GadgetOptions { faces: variant == ToricVariant::Faced, ..GadgetOptions::default() };
    gadget::synthesize(&inst.code.c, &c, Family::CheckGraph, &opts)
}

/// A basis of `B⊥ ⊂ F_2^M`.
pub fn b_perp(bs: &[BitVec], m: usize) -> Vec<BitVec> {
    if bs.is_empty() {
        return (0..m).map(|i| BitVec::unit(m, i)).collect();
    }
    BitMatrix::from_row_vecs(m, bs).kernel_basis()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G1Condition {
    pub perp_dim: usize,
    /// `(b⊥ index, g)` pairs whose vector has a nonempty preimage.
    pub violations: Vec<(usize, usize)>,
}

impl G1Condition {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `g_1ᵀ (b⊥ ⊗ e_g) = 0` for every basis vector of `B⊥` and every `g`.
pub fn g1_condition(inst: &ToricInstance, gadget: &SurgeryGadget, bs: &[BitVec]) -> G1Condition {
    let perp = b_perp(bs, inst.blocks);
    let g1t = gadget.g(1).transpose();
    let mut violations = Vec::new();
    for (i, v) in perp.iter().enumerate() {
        for g in 0..inst.d {
            let e = v.kron(&BitVec::unit(inst.d, g));
            if !g1t.mul_vec(&e).expect("shapes agree").is_zero() {
                violations.push((i, g));
            }
        }
    }
    G1Condition { perp_dim: perp.len(), violations }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// A `G_1 ⊗ D_0` check, running along `D`.
    Vertical,
    /// A `G_0 ⊗ D_1` check, running along the gadget graph.
    Horizontal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaEdge {
    pub check: usize,
    pub ends: Vec<usize>,
    pub kind: EdgeKind,
}

/// Decoding graph of the meta-checks: vertices are meta-checks, edges are ancilla Z checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaCheckGraph {
    /// `(gadget vertices, dim D_1)`; vertex `(v, q)` sits at `v * shape.1 + q`.
    pub shape: (usize, usize),
    pub vertices: usize,
    pub edges: Vec<MetaEdge>,
    pub vertex_degrees: Vec<usize>,
    pub periodic_vertical: bool,
    pub periodic_horizontal: bool,
    /// Base Z checks touched by some meta-check.
    pub base_support: usize,
    /// Smallest ancilla Z-check error that no meta-check sees and that flips the measured outcome.
    pub min_undetected: DistanceBound,
}

impl MetaCheckGraph {
    pub fn edges_join_at_most_two(&self) -> bool {
        self.edges.iter().all(|e| e.ends.len() <= 2)
    }

    pub fn periodic_directions(&self) -> usize {
        self.periodic_vertical as usize + self.periodic_horizontal as usize
    }

    pub fn is_lattice_with_one_periodic_direction(&self) -> bool {
        self.edges_join_at_most_two() && self.periodic_directions() == 1
    }
}

fn cycle_rank(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut merged = 0;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            merged += 1;
        }
    }
    edges.len() - merged
}

pub fn metacheck_graph(
    inst: &ToricInstance,
    gadget: &SurgeryGadget,
    def: &DeformedCode,
    cfg: &SearchConfig,
) -> Result<MetaCheckGraph> {
    let css = &def.css;
    let wrong = || Error::WrongShape("expected a toric deformed code with two ancilla Z blocks".into());
    if def.orientation != Orientation::OnC || css.z_blocks.len() != 3 || css.meta_blocks.len() != 1 {
        return Err(wrong());
    }
    let (vert, horiz) = (&css.z_blocks[0], &css.z_blocks[1]);
    let n_g1 = gadget.complex().dim(1);
    let n_g0 = gadget.complex().dim(0);
    let (d0, d1) = (inst.code.d.dim(0), inst.code.d.dim(1));
    if vert.len != n_g1 * d0 || horiz.len != n_g0 * d1 || css.meta.rows() != n_g1 * d1 || css.ancilla_meta != css.meta.rows() {
        return Err(wrong());
    }
    let vertices = css.meta.rows();
    let mut edges = Vec::with_capacity(css.ancilla_z);
    let mut vertex_degrees = vec![0; vertices];
    for check in 0..css.ancilla_z {
        let ends = css.meta.col(check).support();
        for &v in &ends {
            vertex_degrees[v] += 1;
        }
        let kind = if check < vert.len { EdgeKind::Vertical } else { EdgeKind::Horizontal };
        edges.push(MetaEdge { check, ends, kind });
    }
    let along = |kind: EdgeKind, fixed: usize| -> Vec<(usize, usize)> {
        edges
            .iter()
            .filter(|e| e.kind == kind && e.ends.len() == 2)
            .filter_map(|e| {
                let (a, b) = ((e.ends[0] / d1, e.ends[0] % d1), (e.ends[1] / d1, e.ends[1] % d1));
                match kind {
                    EdgeKind::Vertical if a.0 == fixed && b.0 == fixed => Some((a.1, b.1)),
                    EdgeKind::Horizontal if a.1 == fixed && b.1 == fixed => Some((a.0, b.0)),
                    _ => None,
                }
            })
            .collect()
    };
    let periodic_vertical = cycle_rank(d1, &along(EdgeKind::Vertical, 0)) > 0;
    let periodic_horizontal = cycle_rank(n_g1, &along(EdgeKind::Horizontal, 0)) > 0;
    let base_support = (css.ancilla_z..css.meta.cols()).filter(|&c| css.meta.col_weight(c) > 0).count();
    let anc = css.meta.block(0, 0, vertices, css.ancilla_z);
    let dual = BitVec::from_indices(css.ancilla_z, (0..n_g1).map(|v| vert.offset + v * d0));
    let min_undetected = distance::min_weight(&anc, &[dual], cfg);
    Ok(MetaCheckGraph {
        shape: (n_g1, d1),
        vertices,
        edges,
        vertex_degrees,
        periodic_vertical,
        periodic_horizontal,
        base_support,
        min_undetected,
    })
}

/// An `X̄^h` representative extended into `G_{-1} ⊗ D_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XhWitness {
    pub k: usize,
    /// Extension from solving `∂_{G,0}ᵀ z = g_0ᵀ c̄`; `None` if unsolvable.
    pub solved: Option<BitVec>,
    pub solved_in_kernel: bool,
    /// Extension `∂_{G,0} g_0ᵀ c̄`.
    pub formula: BitVec,
    pub formula_in_kernel: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricDistanceReport {
    /// `(d_1, d^1)` of each deformed code.
    pub deformed: Vec<(DistanceBound, DistanceBound)>,
    pub compacted_d1: DistanceBound,
    pub compacted_d1co: DistanceBound,
    pub witnesses: Vec<XhWitness>,
    pub witnesses_disjoint: bool,
    /// `X̄^v` extensions checked against every prefix cone `cone(f̄[τ])`.
    pub xv_checked: usize,
    pub xv_in_kernel: bool,
    pub commutation_even: bool,
    pub verdict: Verdict,
}

/// Full cone vector `(0, z ⊗ e_k, 0, c̄ ⊗ e_k)` at the qubit degree.
fn xh_vector(def: &DeformedCode, d1: usize, z: &BitVec, cbar: &BitVec, k: usize, right_offset: usize) -> BitVec {
    let anc = def.cone.ancilla_dim(QUBIT_DEGREE);
    let g00 = &def.css.qubit_blocks[0];
    let mut out = BitVec::zeros(def.css.num_qubits());
    for a in z.support() {
        out.set(g00.offset + g00.len + a * d1 + k, true);
    }
    for a in cbar.support() {
        out.set(anc + right_offset + a * d1 + k, true);
    }
    out
}

fn in_cocycle_kernel(hz: &BitMatrix, x: &BitVec) -> bool {
    hz.mul_vec(x).map(|v| v.is_zero()).unwrap_or(false)
}

pub fn verify_toric_distances(inst: &ToricInstance, seq: &SurgerySequence, cfg: &SearchConfig) -> Result<ToricDistanceReport> {
    let d = inst.d;
    let mut deformed = Vec::new();
    for i in 0..seq.gadgets.len() {
        let def = seq.deformed(i)?;
        let cx = &def.cone.complex;
        deformed.push((cx.systolic_distance(QUBIT_DEGREE, cfg), cx.cosystolic_distance(QUBIT_DEGREE, cfg)));
    }
    let compacted = build_compacted(seq)?;
    let compacted_d1 = compacted.cone.complex.systolic_distance(QUBIT_DEGREE, cfg);
    let compacted_d1co = compacted.cone.complex.cosystolic_distance(QUBIT_DEGREE, cfg);

    let def = seq.deformed(0)?;
    let g = &seq.gadgets[0];
    let d_g0 = g.complex().boundary(0);
    let g0 = g.g(0);
    let basis = canonical_basis(&inst.code);
    let right = inst.code.right_offset();
    let d1 = inst.code.d.dim(1);
    let cbar = basis.x_right.first().and_then(|row| row.first()).map(|x| {
        let mut c = BitVec::zeros(inst.code.c.dim(0));
        for i in 0..c.len() {
            if x.get(right + i * d1 + basis.pivots[3][0]) {
                c.set(i, true);
            }
        }
        c
    });
    let mut witnesses = Vec::new();
    if let Some(cbar) = cbar {
        let rhs = g0.transpose().mul_vec(&cbar)?;
        let formula = d_g0.mul_vec(&rhs)?;
        let solved = d_g0.transpose().solve(&rhs)?;
        for k in 0..d1 {
            let fv = xh_vector(&def, d1, &formula, &cbar, k, right);
            let sv = solved.as_ref().map(|z| xh_vector(&def, d1, z, &cbar, k, right));
            witnesses.push(XhWitness {
                k,
                solved_in_kernel: sv.as_ref().is_some_and(|v| in_cocycle_kernel(&def.css.hz, v)),
                solved: sv,
                formula_in_kernel: in_cocycle_kernel(&def.css.hz, &fv),
                formula: fv,
            });
        }
    }
    let witnesses_disjoint = witnesses.iter().enumerate().all(|(i, a)| {
        witnesses[i + 1..].iter().all(|b| match (&a.solved, &b.solved) {
            (Some(x), Some(y)) => x.overlap(y) == 0,
            _ => true,
        })
    });

    let bs: Vec<BitVec> = seq
        .gadgets
        .iter()
        .map(|g| {
            let w = &g.codeword;
            BitVec::from_bools(&(0..inst.blocks).map(|blk| w.get(blk * d)).collect::<Vec<_>>())
        })
        .collect();
    let perp = b_perp(&bs, inst.blocks);
    let mut xv_checked = 0;
    let mut xv_in_kernel = true;
    for tau in 1..=seq.gadgets.len() {
        let prefix = SurgerySequence { gadgets: seq.gadgets[..tau].to_vec(), ..seq.clone() };
        let cone = build_compacted(&prefix)?.cone;
        let hz = cone.complex.boundary(QUBIT_DEGREE + 1).transpose();
        let anc = cone.ancilla_dim(QUBIT_DEGREE);
        for v in &perp {
            for gi in 0..d {
                let x = BitVec::zeros(anc).concat(&inst.x_vertical(v, gi));
                xv_checked += 1;
                xv_in_kernel &= in_cocycle_kernel(&hz, &x);
            }
        }
    }
    let mut commutation_even = true;
    for b in &bs {
        let z = inst.z_vertical(b, 0)?;
        for v in &perp {
            for gi in 0..d {
                commutation_even &= z.overlap(&inst.x_vertical(v, gi)) % 2 == 0;
            }
        }
    }
    let verdict = Verdict::all(
        deformed
            .iter()
            .flat_map(|&(a, b)| [a.at_least(d), b.at_least(d)])
            .chain([compacted_d1.at_least(d), compacted_d1co.at_least(d)])
            .chain([
                Verdict::from_bool(witnesses.iter().all(|w| w.solved_in_kernel)),
                Verdict::from_bool(witnesses_disjoint && xv_in_kernel && commutation_even),
            ]),
    );
    Ok(ToricDistanceReport {
        deformed,
        compacted_d1,
        compacted_d1co,
        witnesses,
        witnesses_disjoint,
        xv_checked,
        xv_in_kernel,
        commutation_even,
        verdict,
    })
}

/// Sequence of toric gadgets on `C'`, one per selector.
pub fn toric_sequence(inst: &ToricInstance, bs: &[BitVec], variant: ToricVariant) -> Result<SurgerySequence> {
    let gadgets = bs.iter().map(|b| toric_gadget(inst, b, variant)).collect::<Result<Vec<_>>>()?;
    SurgerySequence::new(inst.code.clone(), gadgets, Orientation::OnC)
}

/// Deformed code of a single toric gadget.
pub fn toric_deformed(inst: &ToricInstance, gadget: &SurgeryGadget) -> Result<DeformedCode> {
    build_deformed(&inst.code, gadget, Orientation::OnC)
}
