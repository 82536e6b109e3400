//! Runs a configuration through the build, gadget, deform, compact and verify stages.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use super::alist::emit_alist;
use super::config::{Base, Codeword, Config};
use super::report::{distance_field, RunReport, Section, Table};
use crate::chainmap::DeformedCssCode;
use crate::complex::ChainComplex;
use crate::distance::{DistanceBound, SearchConfig, Verdict};
use crate::error::{Error, Result};
use crate::gadget::{self, GadgetOptions, Mode, SurgeryGadget};
use crate::gf2::{BitMatrix, BitVec};
use crate::surgery::{
    build_compacted, build_hgp, measured_logicals, systematic_kernel, verify_fast_conditions, HgpCode, MeasuredLogicals,
    Orientation, SurgerySequence, QUBIT_DEGREE,
};
use crate::toric::{build_toric, toric_gadget, verify_toric_distances, ToricInstance, ToricVariant};

/// Last stage to run; each stage includes the ones before it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Build,
    Gadget,
    Deform,
    Compact,
    Verify,
}

struct Emitter<'a> {
    dir: Option<&'a Path>,
    written: Vec<PathBuf>,
}

impl Emitter<'_> {
    fn emit(&mut self, stem: &str, name: &str, h: &BitMatrix) -> Result<()> {
        let Some(dir) = self.dir else { return Ok(()) };
        fs::create_dir_all(dir)?;
        let path = dir.join(format!("{stem}.{name}.alist"));
        fs::write(&path, emit_alist(h))?;
        self.written.push(path);
        Ok(())
    }

    fn emit_css(&mut self, stem: &str, css: &DeformedCssCode) -> Result<()> {
        self.emit(stem, "hx", &css.hx)?;
        self.emit(stem, "hz", &css.hz)?;
        self.emit(stem, "meta", &css.meta)
    }
}

fn exactness(d: DistanceBound) -> Verdict {
    match d {
        DistanceBound::Exact(_) => Verdict::Pass,
        DistanceBound::AtLeast(_) => Verdict::Inconclusive,
    }
}

fn bits(v: &BitVec) -> String {
    v.to_string()
}

fn build_base(config: &Config, search: &SearchConfig) -> Result<(HgpCode, Option<ToricInstance>)> {
    match &config.base {
        Base::Hgp { c, d } => {
            let c = ChainComplex::classical("C", &c.resolve()?);
            let d = ChainComplex::classical("D", &d.resolve()?);
            Ok((build_hgp(&c, &d, search)?, None))
        }
        Base::Toric { d, blocks } => {
            let inst = build_toric(*d, *blocks, search)?;
            Ok((inst.code.clone(), Some(inst)))
        }
    }
}

fn factor(code: &HgpCode, orientation: Orientation) -> &ChainComplex {
    match orientation {
        Orientation::OnC => &code.c,
        Orientation::OnD => &code.d,
    }
}

fn resolve_codewords(config: &Config, code: &HgpCode) -> Result<Vec<BitVec>> {
    let h = factor(code, config.orientation).boundary(1);
    let (rows, _) = systematic_kernel(&h);
    config
        .codewords
        .iter()
        .map(|c| match c {
            Codeword::Explicit(v) => Ok(v.clone()),
            Codeword::Row(i) => rows.get(*i).cloned().ok_or_else(|| {
                Error::Config(format!("codeword row {i} out of range; the factor has {} kernel rows", rows.len()))
            }),
        })
        .collect()
}

fn build_gadgets(config: &Config, code: &HgpCode, toric: Option<&ToricInstance>) -> Result<Vec<SurgeryGadget>> {
    if config.measurements() == 0 {
        return Err(Error::Config("no codewords or selectors to measure".into()));
    }
    match toric {
        Some(inst) => {
            let variant = if config.faces { ToricVariant::Faced } else { ToricVariant::FaceFree };
            config.selectors.iter().map(|b| toric_gadget(inst, b, variant)).collect()
        }
        None => {
            let opts = GadgetOptions { faces: config.faces, ..GadgetOptions::default() };
            let target = factor(code, config.orientation);
            resolve_codewords(config, code)?
                .iter()
                .map(|c| gadget::synthesize(target, c, config.family, &opts))
                .collect()
        }
    }
}

fn gadget_section(i: usize, g: &SurgeryGadget, mode: Mode, report: &mut RunReport) {
    let r = if mode == g.report.mode { g.report.clone() } else { gadget::verify_conditions(g, mode) };
    let mut s = Section::new(format!("gadget {}", i + 1));
    s.put("codeword", bits(&g.codeword))
        .put("family", g.family)
        .put("mode", r.mode)
        .put("vertices", g.support.len())
        .put("edges", g.edges.len())
        .put("faces", g.faces.len())
        .put("homology", format!("{} {} {}", r.dim_h1, r.dim_h0, r.dim_hm1))
        .put("cheeger", r.cheeger.map_or("not computed".to_string(), |b| b.to_string()))
        .put("max_row_weight", r.max_row_weight)
        .put("max_col_weight", r.max_col_weight)
        .put("size", r.size)
        .put("size_bound_log3", r.size_bound_log3);
    let mut t = Table { header: vec!["condition".into(), "verdict".into()], rows: vec![] };
    for (k, v) in r.conditions.iter().enumerate() {
        t.rows.push(vec![(k + 1).to_string(), v.to_string()]);
    }
    s.table = Some(t);
    report.sections.push(s);
    for (k, v) in r.conditions.iter().take(4).enumerate() {
        report.require(format!("gadget {} condition {}", i + 1, k + 1), *v);
    }
}

fn measured_table(m: &MeasuredLogicals) -> Table {
    let mut t = Table { header: vec!["class".into(), "representatives".into(), "certified".into()], rows: vec![] };
    for c in &m.classes {
        let certified = c.representatives.iter().filter(|r| r.certificate.is_some()).count();
        t.rows.push(vec![bits(&c.coefficients), c.representatives.len().to_string(), certified.to_string()]);
    }
    t
}

fn css_entries(s: &mut Section, css: &DeformedCssCode) {
    s.put("qubits", css.num_qubits())
        .put("z_checks", css.hz.rows())
        .put("x_checks", css.hx.rows())
        .put("meta_checks", css.meta.rows())
        .put("ancilla_qubits", css.ancilla_qubits)
        .put("consistent", css.is_consistent());
}

pub fn run_pipeline(config: &Config, stage: Stage) -> Result<RunReport> {
    let search = SearchConfig::with_budget(config.budget);
    let budget = config.budget;
    let mut report = RunReport::default();
    let mut out = Emitter { dir: config.output_dir.as_deref(), written: vec![] };

    let mut s = Section::new("search");
    s.put("budget", budget);
    report.sections.push(s);

    let t0 = Instant::now();
    let (code, toric) = build_base(config, &search)?;
    let mut s = Section::new("base");
    s.put("kind", if toric.is_some() { "toric" } else { "hgp" })
        .put("params", code.params())
        .put("n", code.n)
        .put("k", code.k)
        .put("d_z", distance_field(code.dz, budget))
        .put("d_x", distance_field(code.dx, budget))
        .put("x_checks", code.hx.rows())
        .put("z_checks", code.hz.rows());
    report.sections.push(s);
    report.require("base distance", exactness(code.dz).and(exactness(code.dx)));
    out.emit("base", "hx", &code.hx)?;
    out.emit("base", "hz", &code.hz)?;
    report.timings.push(("build".into(), t0.elapsed()));
    if stage == Stage::Build {
        return Ok(finish(report, out));
    }

    let t0 = Instant::now();
    let gadgets = build_gadgets(config, &code, toric.as_ref())?;
    let orientation = if toric.is_some() { Orientation::OnC } else { config.orientation };
    let seq = SurgerySequence::new(code.clone(), gadgets, orientation)?;
    for (i, g) in seq.gadgets.iter().enumerate() {
        gadget_section(i, g, config.mode, &mut report);
    }
    report.timings.push(("gadget".into(), t0.elapsed()));
    if stage == Stage::Gadget {
        return Ok(finish(report, out));
    }

    let t0 = Instant::now();
    for (i, g) in seq.gadgets.iter().enumerate() {
        let def = seq.deformed(i)?;
        let m = measured_logicals(&seq.base, g, &def);
        let mut s = Section::new(format!("deformed {}", i + 1));
        css_entries(&mut s, &def.css);
        s.put("orientation", orientation)
            .put("k_before", m.k_before)
            .put("k_after", m.k_after)
            .put("measured", m.independent)
            .put("trivial_representatives", m.trivial.len());
        s.table = Some(measured_table(&m));
        report.sections.push(s);
        report.require(format!("deformed {} consistent", i + 1), Verdict::from_bool(def.css.is_consistent()));
        report.require(format!("deformed {} certificates", i + 1), Verdict::from_bool(m.all_certified()));
        report.require(format!("deformed {} bookkeeping", i + 1), Verdict::from_bool(m.bookkeeping_holds()));
        out.emit_css(&format!("deformed-{}", i + 1), &def.css)?;
    }
    report.timings.push(("deform".into(), t0.elapsed()));
    if stage == Stage::Deform {
        return Ok(finish(report, out));
    }

    let t0 = Instant::now();
    let compacted = build_compacted(&seq)?;
    let css = compacted.cone.extract_css(QUBIT_DEGREE)?;
    let mut s = Section::new("compacted");
    css_entries(&mut s, &css);
    s.put("routes_agree", compacted.routes_agree);
    report.sections.push(s);
    report.require("compacted consistent", Verdict::from_bool(css.is_consistent()));
    report.require("routes agree", Verdict::from_bool(compacted.routes_agree));
    out.emit_css("compacted", &css)?;
    report.timings.push(("compact".into(), t0.elapsed()));
    if stage == Stage::Compact {
        return Ok(finish(report, out));
    }

    let t0 = Instant::now();
    let fast = verify_fast_conditions(&seq, &search)?;
    let mut s = Section::new("fast-surgery");
    let list = |v: &[DistanceBound]| v.iter().map(|d| distance_field(*d, budget)).collect::<Vec<_>>().join(", ");
    s.put("base_distance", distance_field(fast.base_distance, budget))
        .put("compacted_d_z", distance_field(fast.compacted_d1, budget))
        .put("compacted_d_x", distance_field(fast.compacted_d1co, budget))
        .put("compacted_meta_distance", distance_field(fast.compacted_d0co, budget))
        .put("gadget_meta_distances", list(&fast.metacheck_d1co))
        .put("f1_max_row_weight", fast.f1_max_row_weight.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", "))
        .put("k_before", fast.measured.k_before)
        .put("k_after", fast.measured.k_after)
        .put("measured", fast.measured.independent);
    let mut t = Table { header: vec!["condition".into(), "verdict".into()], rows: vec![] };
    for (k, v) in fast.conditions.iter().enumerate() {
        t.rows.push(vec![(k + 1).to_string(), v.to_string()]);
        report.require(format!("fast condition {}", k + 1), *v);
    }
    s.table = Some(t);
    report.sections.push(s);
    report.require("compacted certificates", Verdict::from_bool(fast.measured.all_certified()));
    report.require("compacted bookkeeping", Verdict::from_bool(fast.measured.bookkeeping_holds()));

    if let Some(inst) = &toric {
        let tr = verify_toric_distances(inst, &seq, &search)?;
        let mut s = Section::new("toric");
        for (i, (dz, dx)) in tr.deformed.iter().enumerate() {
            s.put(format!("deformed_{}_d_z", i + 1), distance_field(*dz, budget));
            s.put(format!("deformed_{}_d_x", i + 1), distance_field(*dx, budget));
        }
        s.put("xh_witnesses", tr.witnesses.len())
            .put("xh_witnesses_in_kernel", tr.witnesses.iter().filter(|w| w.solved_in_kernel).count())
            .put("xh_witnesses_disjoint", tr.witnesses_disjoint)
            .put("xv_checked", tr.xv_checked)
            .put("xv_in_kernel", tr.xv_in_kernel)
            .put("commutation_even", tr.commutation_even)
            .put("verdict", tr.verdict);
        report.sections.push(s);
        report.require("toric distances", tr.verdict);
    }
    report.timings.push(("verify".into(), t0.elapsed()));
    Ok(finish(report, out))
}

fn finish(mut report: RunReport, out: Emitter<'_>) -> RunReport {
    if !out.written.is_empty() {
        let mut s = Section::new("artifacts");
        for (i, p) in out.written.iter().enumerate() {
            s.put(format!("file_{}", i + 1), p.file_name().map_or(String::new(), |f| f.to_string_lossy().into_owned()));
        }
        report.sections.push(s);
    }
    report
}
