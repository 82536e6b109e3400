//! Hypergraph product codes, deformed codes `cone(g ⊗ id_D)`, compacted codes
//! and the fast-surgery conditions.

use std::fmt;
use std::str::FromStr;

use crate::chainmap::{cone_product_isomorphism_check, ChainMap, ConeComplex, DeformedCssCode};
use crate::complex::ChainComplex;
use crate::distance::{Distance, DistanceBound, SearchConfig, Verdict};
use crate::error::{Error, Result};
use crate::gadget::{self, Family, GadgetOptions, SurgeryGadget};
use crate::gf2::{rank_of, BitMatrix, BitVec};

/// Qubit degree of the product and of every deformed code.
pub const QUBIT_DEGREE: i32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HgpCode {
    pub c: ChainComplex,
    pub d: ChainComplex,
    pub product: ChainComplex,
    pub hx: BitMatrix,
    pub hz: BitMatrix,
    pub n: usize,
    pub k: usize,
    /// Z distance `d_1`.
    pub dz: DistanceBound,
    /// X distance `d^1`.
    pub dx: DistanceBound,
}

impl HgpCode {
    pub fn distance(&self) -> DistanceBound {
        self.dz.min(self.dx)
    }

    /// `[[n,k,d]]`, with `>=d` when the search stopped early.
    pub fn params(&self) -> String {
        match self.distance() {
            DistanceBound::Exact(d) => format!("[[{},{},{}]]", self.n, self.k, d),
            DistanceBound::AtLeast(d) => format!("[[{},{},>={}]]", self.n, self.k, d),
        }
    }

    pub fn left_offset(&self) -> usize {
        0
    }

    /// Start of the `C_0 ⊗ D_1` qubit block.
    pub fn right_offset(&self) -> usize {
        self.c.dim(1) * self.d.dim(0)
    }
}

fn require_two_term(cx: &ChainComplex) -> Result<()> {
    if cx.lo() != 0 || cx.hi() != 1 {
        return Err(Error::WrongShape(format!("{} must be a two-term complex in degrees 1, 0", cx.name())));
    }
    Ok(())
}

pub fn build_hgp(c: &ChainComplex, d: &ChainComplex, cfg: &SearchConfig) -> Result<HgpCode> {
    require_two_term(c)?;
    require_two_term(d)?;
    let product = c.tensor(d);
    let hz = product.boundary(2).transpose();
    let hx = product.boundary(1);
    Ok(HgpCode {
        n: product.dim(1),
        k: product.homology_dim(1),
        dz: product.systolic_distance(1, cfg),
        dx: product.cosystolic_distance(1, cfg),
        c: c.clone(),
        d: d.clone(),
        product,
        hx,
        hz,
    })
}

/// Rows of a kernel basis in reduced echelon form with their pivot positions.
pub fn systematic_kernel(m: &BitMatrix) -> (Vec<BitVec>, Vec<usize>) {
    let ker = m.kernel_basis();
    if ker.is_empty() {
        return (vec![], vec![]);
    }
    let r = BitMatrix::from_row_vecs(m.cols(), &ker).rref();
    let rows = (0..r.pivots.len()).map(|i| r.matrix.row(i)).collect();
    (rows, r.pivots)
}

/// Canonical logical operators: `z_left[i][j]` pairs with `x_left[i][j]` and so on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBasis {
    pub z_left: Vec<Vec<BitVec>>,
    pub x_left: Vec<Vec<BitVec>>,
    pub z_right: Vec<Vec<BitVec>>,
    pub x_right: Vec<Vec<BitVec>>,
    /// Information sets of `ker ∂_C`, `ker ∂_Dᵀ`, `ker ∂_Cᵀ`, `ker ∂_D`.
    pub pivots: [Vec<usize>; 4],
}

impl CanonicalBasis {
    pub fn z_logicals(&self) -> Vec<BitVec> {
        self.z_left.iter().chain(&self.z_right).flatten().cloned().collect()
    }

    pub fn x_logicals(&self) -> Vec<BitVec> {
        self.x_left.iter().chain(&self.x_right).flatten().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.z_logicals().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `⟨x_a, z_b⟩` over all pairs.
    pub fn pairing(&self) -> BitMatrix {
        let (zs, xs) = (self.z_logicals(), self.x_logicals());
        let mut m = BitMatrix::zeros(xs.len(), zs.len());
        for (a, x) in xs.iter().enumerate() {
            for (b, z) in zs.iter().enumerate() {
                m.set(a, b, x.dot(z));
            }
        }
        m
    }

    /// Coefficients of a Z logical in the canonical basis.
    pub fn z_coefficients(&self, z: &BitVec) -> BitVec {
        BitVec::from_bools(&self.x_logicals().iter().map(|x| x.dot(z)).collect::<Vec<_>>())
    }
}

pub fn canonical_basis(code: &HgpCode) -> CanonicalBasis {
    let hc = code.c.boundary(1);
    let hd = code.d.boundary(1);
    let (lc, ic) = systematic_kernel(&hc);
    let (ldt, jdt) = systematic_kernel(&hd.transpose());
    let (lct, ict) = systematic_kernel(&hc.transpose());
    let (ld, id) = systematic_kernel(&hd);
    let n = code.n;
    let (n_c, m_c) = (hc.cols(), hc.rows());
    let (n_d, m_d) = (hd.cols(), hd.rows());
    let place = |offset: usize, v: BitVec| {
        let mut out = BitVec::zeros(n);
        out.place(offset, &v);
        out
    };
    let left = code.left_offset();
    let right = code.right_offset();
    let z_left = (0..lc.len())
        .map(|i| (0..ldt.len()).map(|j| place(left, lc[i].kron(&BitVec::unit(m_d, jdt[j])))).collect())
        .collect();
    let x_left = (0..lc.len())
        .map(|i| (0..ldt.len()).map(|j| place(left, BitVec::unit(n_c, ic[i]).kron(&ldt[j]))).collect())
        .collect();
    let z_right = (0..lct.len())
        .map(|p| (0..ld.len()).map(|q| place(right, BitVec::unit(m_c, ict[p]).kron(&ld[q]))).collect())
        .collect();
    let x_right = (0..lct.len())
        .map(|p| (0..ld.len()).map(|q| place(right, lct[p].kron(&BitVec::unit(n_d, id[q])))).collect())
        .collect();
    CanonicalBasis { z_left, x_left, z_right, x_right, pivots: [ic, jdt, ict, id] }
}

/// Which classical factor the gadget is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `g ⊗ id_D`; measures rows.
    OnC,
    /// `id_C ⊗ g`; measures columns.
    OnD,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::OnC => "on-c",
            Orientation::OnD => "on-d",
        })
    }
}

impl FromStr for Orientation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "on-c" | "c" | "rows" => Ok(Orientation::OnC),
            "on-d" | "d" | "columns" => Ok(Orientation::OnD),
            other => Err(Error::Config(format!("unknown orientation {other:?}"))),
        }
    }
}

impl Orientation {
    fn factor<'a>(&self, code: &'a HgpCode) -> &'a ChainComplex {
        match self {
            Orientation::OnC => &code.c,
            Orientation::OnD => &code.d,
        }
    }

    fn check_target(&self, code: &HgpCode, target: &ChainComplex) -> Result<()> {
        let factor = self.factor(code);
        if factor.dims() != target.dims() || factor.boundary(1) != target.boundary(1) {
            return Err(Error::OrientationMismatch);
        }
        Ok(())
    }

    /// `f = g ⊗ id_D` or `id_C ⊗ g`.
    fn lift(&self, code: &HgpCode, g: &ChainMap) -> ChainMap {
        match self {
            Orientation::OnC => g.tensor_identity(&code.d),
            Orientation::OnD => g.identity_tensor(&code.c),
        }
    }

    /// Number of unit vectors `e_j` that pair with a codeword.
    fn partner_dim(&self, code: &HgpCode) -> usize {
        match self {
            Orientation::OnC => code.d.dim(0),
            Orientation::OnD => code.c.dim(0),
        }
    }

    /// `c ⊗ e_j` in `C_1 ⊗ D_0`, or `e_j ⊗ c` in `C_0 ⊗ D_1`.
    fn representative(&self, code: &HgpCode, c: &BitVec, j: usize) -> BitVec {
        let mut out = BitVec::zeros(code.n);
        match self {
            Orientation::OnC => {
                let m_d = code.d.dim(0);
                for a in c.support() {
                    out.set(code.left_offset() + a * m_d + j, true);
                }
            }
            Orientation::OnD => {
                let n_d = code.d.dim(1);
                for a in c.support() {
                    out.set(code.right_offset() + j * n_d + a, true);
                }
            }
        }
        out
    }
}

/// A deformed code together with the cone it is read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformedCode {
    pub orientation: Orientation,
    pub map: ChainMap,
    pub cone: ConeComplex,
    pub css: DeformedCssCode,
}

pub fn build_deformed(code: &HgpCode, gadget: &SurgeryGadget, orientation: Orientation) -> Result<DeformedCode> {
    orientation.check_target(code, gadget.map.target())?;
    let map = orientation.lift(code, &gadget.map);
    let cone = map.cone();
    let css = cone.extract_css(QUBIT_DEGREE)?;
    Ok(DeformedCode { orientation, map, cone, css })
}

/// One representative of a measured class with the ancilla Z checks whose product equals it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasuredRepresentative {
    pub gadget: usize,
    /// Index of the partner unit vector `e_j`.
    pub partner: usize,
    /// Support in the base code's qubits.
    pub operator: BitVec,
    /// Ancilla Z-check indices; `None` if the operator is not such a product.
    pub certificate: Option<BitVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasuredClass {
    /// Coefficients over the canonical Z logicals.
    pub coefficients: BitVec,
    pub representatives: Vec<MeasuredRepresentative>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasuredLogicals {
    pub classes: Vec<MeasuredClass>,
    /// Representatives that are stabilizers of the base code.
    pub trivial: Vec<MeasuredRepresentative>,
    pub independent: usize,
    pub k_before: usize,
    /// `dim H_1` of the cone, computed directly.
    pub k_after: usize,
}

impl MeasuredLogicals {
    pub fn all_certified(&self) -> bool {
        self.classes.iter().flat_map(|c| &c.representatives).chain(&self.trivial).all(|r| r.certificate.is_some())
    }

    pub fn bookkeeping_holds(&self) -> bool {
        self.k_after + self.independent == self.k_before
    }
}

fn measured_in_cone(
    code: &HgpCode,
    codewords: &[BitVec],
    orientation: Orientation,
    cone: &ConeComplex,
) -> MeasuredLogicals {
    let basis = canonical_basis(code);
    let anc_q = cone.ancilla_dim(QUBIT_DEGREE);
    let anc_z = cone.ancilla_dim(QUBIT_DEGREE + 1);
    let ancilla_checks = cone.complex.boundary(QUBIT_DEGREE + 1).block(0, 0, anc_q + code.n, anc_z);
    let mut classes: Vec<MeasuredClass> = Vec::new();
    let mut trivial = Vec::new();
    for (g, c) in codewords.iter().enumerate() {
        for j in 0..orientation.partner_dim(code) {
            let operator = orientation.representative(code, c, j);
            let mut lifted = BitVec::zeros(anc_q);
            lifted = lifted.concat(&operator);
            let certificate = ancilla_checks.solve(&lifted).ok().flatten();
            let rep = MeasuredRepresentative { gadget: g, partner: j, operator, certificate };
            let coefficients = basis.z_coefficients(&rep.operator);
            if coefficients.is_zero() {
                trivial.push(rep);
            } else if let Some(class) = classes.iter_mut().find(|cl| cl.coefficients == coefficients) {
                class.representatives.push(rep);
            } else {
                classes.push(MeasuredClass { coefficients, representatives: vec![rep] });
            }
        }
    }
    let coeffs: Vec<BitVec> = classes.iter().map(|c| c.coefficients.clone()).collect();
    MeasuredLogicals {
        independent: rank_of(code.k, &coeffs),
        classes,
        trivial,
        k_before: code.k,
        k_after: cone.complex.homology_dim(QUBIT_DEGREE),
    }
}

pub fn measured_logicals(code: &HgpCode, gadget: &SurgeryGadget, deformed: &DeformedCode) -> MeasuredLogicals {
    measured_in_cone(code, std::slice::from_ref(&gadget.codeword), deformed.orientation, &deformed.cone)
}

/// Base code plus `t` gadgets on the same classical factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgerySequence {
    pub base: HgpCode,
    pub gadgets: Vec<SurgeryGadget>,
    pub orientation: Orientation,
}

impl SurgerySequence {
    pub fn new(base: HgpCode, gadgets: Vec<SurgeryGadget>, orientation: Orientation) -> Result<Self> {
        if gadgets.is_empty() {
            return Err(Error::Config("a surgery sequence needs at least one gadget".into()));
        }
        for g in &gadgets {
            orientation.check_target(&base, g.map.target())?;
        }
        let words: Vec<BitVec> = gadgets.iter().map(|g| g.codeword.clone()).collect();
        if rank_of(words[0].len(), &words) < words.len() {
            return Err(Error::DependentCodewords);
        }
        let target = orientation.factor(&base).clone();
        let gadgets = gadgets
            .into_iter()
            .enumerate()
            .map(|(i, g)| {
                let g = g.renamed(&format!("G[{}]", i + 1));
                let maps = [1, 0, -1].into_iter().map(|d| (d, g.map.map(d))).collect();
                let map = ChainMap::new(g.complex().clone(), target.clone(), maps).expect("same shapes");
                SurgeryGadget { map, code: target.clone(), ..g }
            })
            .collect();
        Ok(Self { base, gadgets, orientation })
    }

    /// Synthesizes one gadget per codeword.
    pub fn synthesize(
        base: HgpCode,
        codewords: &[BitVec],
        family: Family,
        orientation: Orientation,
        opts: &GadgetOptions,
    ) -> Result<Self> {
        let target = orientation.factor(&base).clone();
        let gadgets = codewords
            .iter()
            .map(|c| gadget::synthesize(&target, c, family, opts))
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, gadgets, orientation)
    }

    pub fn codewords(&self) -> Vec<BitVec> {
        self.gadgets.iter().map(|g| g.codeword.clone()).collect()
    }

    pub fn deformed(&self, i: usize) -> Result<DeformedCode> {
        build_deformed(&self.base, &self.gadgets[i], self.orientation)
    }
}

/// `cone(f̄)` for `f̄ = Σ f[i]`, with the result of comparing it to `cone(ḡ) ⊗ D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactedCode {
    pub gbar: ChainMap,
    pub fbar: ChainMap,
    pub cone: ConeComplex,
    pub routes_agree: bool,
}

pub fn build_compacted(seq: &SurgerySequence) -> Result<CompactedCode> {
    let maps: Vec<ChainMap> = seq.gadgets.iter().map(|g| g.map.clone()).collect();
    let gbar = ChainMap::sum(&maps, "Gbar")?;
    let fbar = seq.orientation.lift(&seq.base, &gbar);
    let cone = fbar.cone();
    let other = match seq.orientation {
        Orientation::OnC => &seq.base.d,
        Orientation::OnD => &seq.base.c,
    };
    let routes_agree = cone_product_isomorphism_check(&gbar, other).is_ok();
    Ok(CompactedCode { gbar, fbar, cone, routes_agree })
}

/// The three code-level conditions for fault distance `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FastSurgeryReport {
    pub base_distance: DistanceBound,
    pub compacted_d1: DistanceBound,
    pub compacted_d1co: DistanceBound,
    pub compacted_d0co: DistanceBound,
    /// `d^1(G[i] ⊗ D)` per gadget.
    pub metacheck_d1co: Vec<DistanceBound>,
    /// Largest row weight of `f[i]_1` per gadget.
    pub f1_max_row_weight: Vec<usize>,
    pub disjoint: bool,
    pub routes_agree: bool,
    pub measured: MeasuredLogicals,
    pub conditions: [Verdict; 3],
}

impl FastSurgeryReport {
    pub fn verdict(&self) -> Verdict {
        Verdict::all(self.conditions).and(Verdict::from_bool(self.routes_agree))
    }
}

fn meets(bound: DistanceBound, target: DistanceBound) -> Verdict {
    match target {
        DistanceBound::Exact(Distance::Finite(d)) => bound.at_least(d),
        DistanceBound::Exact(Distance::Infinite) => Verdict::from_bool(bound == target),
        DistanceBound::AtLeast(_) => Verdict::Inconclusive,
    }
}

pub fn verify_fast_conditions(seq: &SurgerySequence, cfg: &SearchConfig) -> Result<FastSurgeryReport> {
    let compacted = build_compacted(seq)?;
    let cx = &compacted.cone.complex;
    let base_distance = seq.base.distance();
    let compacted_d1 = cx.systolic_distance(QUBIT_DEGREE, cfg);
    let compacted_d1co = cx.cosystolic_distance(QUBIT_DEGREE, cfg);
    let compacted_d0co = cx.cosystolic_distance(0, cfg);
    let other = match seq.orientation {
        Orientation::OnC => &seq.base.d,
        Orientation::OnD => &seq.base.c,
    };
    let metacheck_d1co: Vec<DistanceBound> = seq
        .gadgets
        .iter()
        .map(|g| {
            let a = match seq.orientation {
                Orientation::OnC => g.complex().tensor(other),
                Orientation::OnD => other.tensor(g.complex()),
            };
            a.cosystolic_distance(QUBIT_DEGREE, cfg)
        })
        .collect();
    let f1_max_row_weight: Vec<usize> = seq
        .gadgets
        .iter()
        .map(|g| seq.orientation.lift(&seq.base, &g.map).map(QUBIT_DEGREE).max_row_weight())
        .collect();
    let disjoint = f1_max_row_weight.iter().all(|&w| w <= 1);
    let measured = measured_in_cone(&seq.base, &seq.codewords(), seq.orientation, &compacted.cone);
    let conditions = [
        meets(compacted_d1, base_distance).and(meets(compacted_d1co, base_distance)),
        Verdict::all(metacheck_d1co.iter().map(|&m| meets(m, base_distance))),
        Verdict::from_bool(disjoint),
    ];
    Ok(FastSurgeryReport {
        base_distance,
        compacted_d1,
        compacted_d1co,
        compacted_d0co,
        metacheck_d1co,
        f1_max_row_weight,
        disjoint,
        routes_agree: compacted.routes_agree,
        measured,
        conditions,
    })
}

/// Block-diagonal direct sum of two-term complexes.
pub fn direct_sum_classical(name: &str, parts: &[ChainComplex]) -> Result<ChainComplex> {
    let mut h = BitMatrix::zeros(0, 0);
    for p in parts {
        require_two_term(p)?;
        h = h.direct_sum(&p.boundary(1));
    }
    Ok(ChainComplex::classical(name, &h))
}

/// Joins blocks sharing `D` into `C' = ⊕ C^(j)` and attaches one gadget per
/// measurement; `joint[i][j]` is the codeword of block `j` in measurement `i`.
pub fn multi_block(
    codes: &[HgpCode],
    joint: &[Vec<BitVec>],
    family: Family,
    opts: &GadgetOptions,
    cfg: &SearchConfig,
) -> Result<SurgerySequence> {
    let Some(first) = codes.first() else {
        return Err(Error::Config("multi-block surgery needs at least one block".into()));
    };
    if codes.iter().any(|c| c.d.dims() != first.d.dims() || c.d.boundary(1) != first.d.boundary(1)) {
        return Err(Error::MismatchedD);
    }
    let cs: Vec<ChainComplex> = codes.iter().map(|c| c.c.clone()).collect();
    let c = direct_sum_classical(first.c.name(), &cs)?;
    let base = build_hgp(&c, &first.d, cfg)?;
    let mut words = Vec::with_capacity(joint.len());
    for per_block in joint {
        if per_block.len() != codes.len() {
            return Err(Error::DimensionMismatch { context: "joint codeword blocks", expected: codes.len(), found: per_block.len() });
        }
        let mut w = BitVec::zeros(0);
        for (code, part) in codes.iter().zip(per_block) {
            if part.len() != code.c.dim(1) {
                return Err(Error::DimensionMismatch { context: "block codeword", expected: code.c.dim(1), found: part.len() });
            }
            w = w.concat(part);
        }
        words.push(w);
    }
    SurgerySequence::synthesize(base, &words, family, Orientation::OnC, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cyclic_repetition, hamming_7_4, repetition};

    fn hamming_rep3() -> HgpCode {
        let c = ChainComplex::classical("C", &hamming_7_4());
        let d = ChainComplex::classical("D", &repetition(3).transpose());
        build_hgp(&c, &d, &SearchConfig::default()).unwrap()
    }

    fn bits(s: &str) -> BitVec {
        BitVec::from_bitstring(s).unwrap()
    }

    #[test]
    fn hgp_parameters() {
        let code = hamming_rep3();
        assert_eq!(code.params(), "[[27,4,3]]");
        let t = ChainComplex::classical("C", &cyclic_repetition(3));
        let toric = build_hgp(&t, &t.clone().renamed("D"), &SearchConfig::default()).unwrap();
        assert_eq!(toric.params(), "[[18,2,3]]");
        assert!(toric.hx.mul(&toric.hz.transpose()).unwrap().is_zero());
    }

    #[test]
    fn canonical_basis_pairs_up() {
        for code in [hamming_rep3(), {
            let t = ChainComplex::classical("C", &cyclic_repetition(3));
            build_hgp(&t, &t.clone().renamed("D"), &SearchConfig::default()).unwrap()
        }] {
            let b = canonical_basis(&code);
            assert_eq!(b.len(), code.k);
            assert_eq!(b.pairing(), BitMatrix::identity(code.k));
            for z in b.z_logicals() {
                assert!(code.hx.mul_vec(&z).unwrap().is_zero());
            }
            for x in b.x_logicals() {
                assert!(code.hz.mul_vec(&x).unwrap().is_zero());
            }
        }
        let b = canonical_basis(&hamming_rep3());
        assert!(b.z_right.is_empty());
        assert_eq!(b.z_left.len(), 4);
    }

    #[test]
    fn hamming_path_measures_one_class() {
        let code = hamming_rep3();
        let g = gadget::synthesize(&code.c, &bits("1110000"), Family::Path, &GadgetOptions::default()).unwrap();
        let def = build_deformed(&code, &g, Orientation::OnC).unwrap();
        assert_eq!(def.css.num_qubits(), 33);
        assert!(def.css.is_consistent());
        let m = measured_logicals(&code, &g, &def);
        assert_eq!(m.classes.len(), 1);
        assert_eq!(m.classes[0].representatives.len(), 3);
        assert!(m.all_certified());
        assert_eq!((m.k_before, m.k_after, m.independent), (4, 3, 1));
    }

    #[test]
    fn orientation_mismatch() {
        let code = hamming_rep3();
        let g = gadget::synthesize(&code.c, &bits("1110000"), Family::Path, &GadgetOptions::default()).unwrap();
        assert_eq!(build_deformed(&code, &g, Orientation::OnD).unwrap_err(), Error::OrientationMismatch);
    }

    #[test]
    fn column_measurement_on_d() {
        let t = ChainComplex::classical("C", &cyclic_repetition(3));
        let code = build_hgp(&t, &t.clone().renamed("D"), &SearchConfig::default()).unwrap();
        let g = gadget::synthesize(&code.d, &BitVec::ones(3), Family::Cycle, &GadgetOptions::default()).unwrap();
        let def = build_deformed(&code, &g, Orientation::OnD).unwrap();
        assert!(def.css.is_consistent());
        let m = measured_logicals(&code, &g, &def);
        assert_eq!(m.classes.len(), 1);
        assert!(m.all_certified());
        assert_eq!((m.k_before, m.k_after), (2, 1));
    }

    #[test]
    fn single_gadget_compacted_equals_deformed() {
        let code = hamming_rep3();
        let seq = SurgerySequence::synthesize(code, &[bits("1110000")], Family::Path, Orientation::OnC, &GadgetOptions::default())
            .unwrap();
        let compacted = build_compacted(&seq).unwrap();
        let def = seq.deformed(0).unwrap();
        assert!(compacted.routes_agree);
        assert_eq!(compacted.cone.complex.dims(), def.cone.complex.dims());
        for k in compacted.cone.complex.degrees() {
            assert_eq!(compacted.cone.complex.boundary(k), def.cone.complex.boundary(k));
        }
    }

    #[test]
    fn dependent_codewords_rejected() {
        let code = hamming_rep3();
        let err = SurgerySequence::synthesize(
            code,
            &[bits("1110000"), bits("1110000")],
            Family::Path,
            Orientation::OnC,
            &GadgetOptions::default(),
        );
        assert_eq!(err.unwrap_err(), Error::DependentCodewords);
    }

    #[test]
    fn mismatched_d_rejected() {
        let cfg = SearchConfig::default();
        let t = ChainComplex::classical("C", &cyclic_repetition(3));
        let a = build_hgp(&t, &t.clone().renamed("D"), &cfg).unwrap();
        let b = hamming_rep3();
        let err = multi_block(&[a, b], &[vec![BitVec::ones(3), bits("1110000")]], Family::Path, &GadgetOptions::default(), &cfg);
        assert_eq!(err.unwrap_err(), Error::MismatchedD);
    }
}
