//! Ancilla complexes `G: G_1 -> G_0 -> G_{-1}` with chain maps into a classical
//! code, built from explicit graph families.
//!
//! Vertices of the graph are the support bits of the measured codeword, edges
//! are `G_0` and faces (a cycle basis) are `G_{-1}`. `g_1` is the support
//! inclusion. `g_0` sends each edge to the checks routed through it: the
//! touched vertices of every check are paired and joined by shortest paths,
//! which makes `g_0 ∂_{G,1} = ∂_C g_1` hold by construction.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::chainmap::ChainMap;
use crate::cheeger::{self, incidence, Expansion, CHEEGER_LIMIT};
use crate::complex::ChainComplex;
use crate::distance::Verdict;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Path,
    Cycle,
    /// Complete graph with the triangles `{0, a, b}` as faces.
    Complete,
    /// One edge per paired check; consecutive components joined by a matching.
    CheckGraph,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::CheckGraph => "check-graph",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(Family::Path),
            "cycle" => Ok(Family::Cycle),
            "complete" | "complete-triangulated" => Ok(Family::Complete),
            "check-graph" => Ok(Family::CheckGraph),
            other => Err(Error::Config(format!("unknown gadget family {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetOptions {
    /// Keep a cycle basis as faces in `G_{-1}`. Dropping it leaves gauge qubits.
    pub faces: bool,
    /// Permutation search over vertex orders for path and cycle up to this support size.
    pub order_search_limit: usize,
    /// Column limit for the exhaustive Cheeger computation.
    pub cheeger_limit: usize,
}

impl Default for GadgetOptions {
    fn default() -> Self {
        Self { faces: true, order_search_limit: 8, cheeger_limit: CHEEGER_LIMIT }
    }
}

/// Which expansion requirement condition 1 uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Strict,
    /// Relative expansion with cap `t` over the vertices mapped onto the codeword.
    Relative { t: usize },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Strict => f.write_str("strict"),
            Mode::Relative { t } => write!(f, "relative:{t}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryGadget {
    pub code: ChainComplex,
    pub codeword: BitVec,
    pub family: Family,
    /// `support[v]` is the code bit of vertex `v`.
    pub support: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    /// Edge indices of each face.
    pub faces: Vec<Vec<usize>>,
    pub map: ChainMap,
    pub report: GadgetReport,
}

/// The five gadget conditions plus the quantities behind them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetReport {
    pub mode: Mode,
    /// `None` when the exhaustive search exceeds its column limit.
    pub cheeger: Option<Expansion>,
    pub dim_h1: usize,
    pub dim_h0: usize,
    pub dim_hm1: usize,
    pub kernel_is_all_ones: bool,
    pub image_is_codeword: bool,
    pub g1_one_sparse: bool,
    pub chain_map_valid: bool,
    pub max_row_weight: usize,
    pub max_col_weight: usize,
    pub size: usize,
    pub size_bound_log3: usize,
    pub conditions: [Verdict; 5],
}

impl GadgetReport {
    pub fn all_pass(&self) -> Verdict {
        Verdict::all(self.conditions)
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn order_edges(family: Family, order: &[usize]) -> Vec<(usize, usize)> {
    let n = order.len();
    match family {
        Family::Path => (0..n.saturating_sub(1)).map(|i| (order[i], order[i + 1])).collect(),
        Family::Cycle => match n {
            0 | 1 => vec![],
            2 => vec![(order[0], order[1]), (order[1], order[0])],
            _ => (0..n).map(|i| (order[i], order[(i + 1) % n])).collect(),
        },
        Family::Complete => (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect(),
        Family::CheckGraph => unreachable!("check graph edges come from the checks"),
    }
}

fn check_graph_edges(n: usize, touched: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for t in touched {
        for pair in t.chunks(2) {
            edges.push((pair[0], pair[1]));
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut x = x;
        while p[x] != r {
            let nx = p[x];
            p[x] = r;
            x = nx;
        }
        r
    }
    for &(a, b) in &edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        comps.entry(find(&mut parent, v)).or_default().push(v);
    }
    let comps: Vec<Vec<usize>> = comps.into_values().collect();
    for w in comps.windows(2) {
        edges.extend(w[0].iter().zip(&w[1]).map(|(&a, &b)| (a, b)));
    }
    edges
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); n];
    for (e, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    adj
}

fn bfs_path(adj: &[Vec<(usize, usize)>], from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &(y, _) in &adj[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    if prev[to] == usize::MAX {
        return None;
    }
    let mut path = vec![to];
    let mut x = to;
    while x != from {
        x = prev[x];
        path.push(x);
    }
    path.reverse();
    Some(path)
}

/// Routes every check's touched vertices pairwise along shortest paths.
/// Returns `g_0` as checks x edges.
fn route(n: usize, edges: &[(usize, usize)], touched: &[Vec<usize>]) -> Option<BitMatrix> {
    let adj = adjacency(n, edges);
    let mut usage = vec![0usize; edges.len()];
    let mut g0 = BitMatrix::zeros(touched.len(), edges.len());
    for (r, t) in touched.iter().enumerate() {
        for pair in t.chunks(2) {
            let path = bfs_path(&adj, pair[0], pair[1])?;
            for step in path.windows(2) {
                let (x, y) = (step[0], step[1]);
                let e = adj[x]
                    .iter()
                    .filter(|&&(z, _)| z == y)
                    .map(|&(_, e)| e)
                    .min_by_key(|&e| (usage[e], e))
                    .expect("path step is an edge");
                usage[e] += 1;
                g0.flip(r, e);
            }
        }
    }
    Some(g0)
}

/// Total `g_0` weight, then its largest row weight.
type Score = (usize, usize);

type Candidate = (Score, Vec<(usize, usize)>, BitMatrix);

fn route_cost(g0: &BitMatrix) -> Score {
    (g0.count_ones(), g0.max_row_weight())
}

/// Fundamental cycles of the BFS spanning tree rooted at vertex 0, one per non-tree edge.
fn cycle_basis(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![];
    }
    let adj = adjacency(n, edges);
    let mut parent_edge = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree = vec![false; edges.len()];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x] {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent_edge[y] = e;
                    tree[e] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    let parent = |v: usize| {
        let (a, b) = edges[parent_edge[v]];
        if a == v {
            b
        } else {
            a
        }
    };
    let mut faces = Vec::new();
    for (e, &(a, b)) in edges.iter().enumerate() {
        if tree[e] {
            continue;
        }
        let mut face = vec![e];
        let (mut x, mut y) = (a, b);
        while x != y {
            if depth[x] >= depth[y] {
                face.push(parent_edge[x]);
                x = parent(x);
            } else {
                face.push(parent_edge[y]);
                y = parent(y);
            }
        }
        face.sort_unstable();
        faces.push(face);
    }
    faces
}

fn size_bound_log3(w: usize) -> usize {
    let l = (w.max(2) as f64).log2().max(1.0);
    (w as f64 * l.powi(3)).ceil() as usize
}

/// Builds a gadget measuring codeword `c` of the two-term complex `code`.
pub fn synthesize(code: &ChainComplex, c: &BitVec, family: Family, opts: &GadgetOptions) -> Result<SurgeryGadget> {
    synthesize_named(code, c, family, opts, "G")
}

pub fn synthesize_named(
    code: &ChainComplex,
    c: &BitVec,
    family: Family,
    opts: &GadgetOptions,
    name: &str,
) -> Result<SurgeryGadget> {
    if code.lo() != 0 || code.hi() != 1 {
        return Err(Error::WrongShape("gadget target must be a two-term complex in degrees 1, 0".into()));
    }
    let h = code.boundary(1);
    if c.len() != h.cols() {
        return Err(Error::DimensionMismatch { context: "codeword", expected: h.cols(), found: c.len() });
    }
    if c.is_zero() {
        return Err(Error::EmptyCodeword);
    }
    if !h.mul_vec(c)?.is_zero() {
        return Err(Error::NotACodeword);
    }
    let support = c.support();
    let n = support.len();
    let touched_by = |pos: &[usize]| -> Vec<Vec<usize>> {
        (0..h.rows())
            .map(|r| {
                let mut t: Vec<usize> = (0..n).filter(|&v| h.get(r, support[v])).collect();
                t.sort_by_key(|&v| pos[v]);
                t
            })
            .collect()
    };
    let identity: Vec<usize> = (0..n).collect();
    let (edges, g0) = match family {
        Family::Path | Family::Cycle => {
            let mut best: Option<Candidate> = None;
            let mut order = identity.clone();
            loop {
                let mut pos = vec![0; n];
                for (i, &v) in order.iter().enumerate() {
                    pos[v] = i;
                }
                let edges = order_edges(family, &order);
                let g0 = route(n, &edges, &touched_by(&pos)).expect("path and cycle are connected");
                let cost = route_cost(&g0);
                if best.as_ref().is_none_or(|(c, _, _)| cost < *c) {
                    best = Some((cost, edges, g0));
                }
                if n > opts.order_search_limit || !next_permutation(&mut order) {
                    break;
                }
            }
            let (_, edges, g0) = best.expect("at least one order");
            (edges, g0)
        }
        Family::Complete => {
            let edges = order_edges(family, &identity);
            let g0 = route(n, &edges, &touched_by(&identity)).expect("complete graph is connected");
            (edges, g0)
        }
        Family::CheckGraph => {
            let touched = touched_by(&identity);
            let edges = check_graph_edges(n, &touched);
            let g0 = route(n, &edges, &touched).expect("bridged graph is connected");
            (edges, g0)
        }
    };
    let faces = if opts.faces { cycle_basis(n, &edges) } else { vec![] };
    let d1 = incidence(n, &edges);
    let mut d0 = BitMatrix::zeros(faces.len(), edges.len());
    for (f, face) in faces.iter().enumerate() {
        for &e in face {
            d0.flip(f, e);
        }
    }
    let g_cx = ChainComplex::new(name, -1, vec![faces.len(), edges.len(), n], vec![d0, d1])?;
    let mut g1 = BitMatrix::zeros(h.cols(), n);
    for (v, &bit) in support.iter().enumerate() {
        g1.set(bit, v, true);
    }
    let map = ChainMap::new(g_cx, code.clone(), BTreeMap::from([(1, g1), (0, g0)]))?;
    if let Err(v) = map.validate() {
        return Err(Error::InvalidChainMap(v.degree));
    }
    let mut gadget = SurgeryGadget {
        code: code.clone(),
        codeword: c.clone(),
        family,
        support,
        edges,
        faces,
        map,
        report: GadgetReport {
            mode: Mode::Strict,
            cheeger: None,
            dim_h1: 0,
            dim_h0: 0,
            dim_hm1: 0,
            kernel_is_all_ones: false,
            image_is_codeword: false,
            g1_one_sparse: false,
            chain_map_valid: false,
            max_row_weight: 0,
            max_col_weight: 0,
            size: 0,
            size_bound_log3: 0,
            conditions: [Verdict::Inconclusive; 5],
        },
    };
    gadget.report = verify_conditions_with_limit(&gadget, Mode::Strict, opts.cheeger_limit);
    Ok(gadget)
}

impl SurgeryGadget {
    /// The ancilla complex `G`.
    pub fn complex(&self) -> &ChainComplex {
        self.map.source()
    }

    pub fn g(&self, i: i32) -> BitMatrix {
        self.map.map(i)
    }

    /// Copy with the ancilla complex renamed, keeping the map.
    pub fn renamed(&self, name: &str) -> SurgeryGadget {
        let mut maps = BTreeMap::new();
        for i in [1, 0, -1] {
            maps.insert(i, self.map.map(i));
        }
        let source = self.complex().clone().renamed(name);
        let map = ChainMap::new(source, self.map.target().clone(), maps).expect("same shapes");
        SurgeryGadget { map, ..self.clone() }
    }
}

/// Recomputes the five conditions in the given mode.
pub fn verify_conditions(gadget: &SurgeryGadget, mode: Mode) -> GadgetReport {
    verify_conditions_with_limit(gadget, mode, CHEEGER_LIMIT)
}

pub fn verify_conditions_with_limit(gadget: &SurgeryGadget, mode: Mode, limit: usize) -> GadgetReport {
    let g = gadget.complex();
    let d1 = g.boundary(1);
    let d0 = g.boundary(0);
    let n = g.dim(1);
    let cheeger = match mode {
        Mode::Strict => cheeger::cheeger_constant_with_limit(&d1, limit).ok(),
        Mode::Relative { t } => {
            let g1 = gadget.g(1);
            let p: Vec<usize> = (0..n).filter(|&v| g1.col_weight(v) == 1).collect();
            cheeger::relative_cheeger_with_limit(&d1, &p, t, limit).ok()
        }
    };
    let dim_h1 = g.homology_dim(1);
    let dim_h0 = g.homology_dim(0);
    let dim_hm1 = g.homology_dim(-1);
    let ker = d1.kernel_basis();
    let kernel_is_all_ones = ker.len() == 1 && ker[0] == BitVec::ones(n);
    let g1 = gadget.g(1);
    let g0 = gadget.g(0);
    let image_is_codeword = g1.mul_vec(&BitVec::ones(n)).map(|v| v == gadget.codeword).unwrap_or(false);
    let g1_one_sparse = g1.max_row_weight() <= 1 && g1.max_col_weight() <= 1;
    let chain_map_valid = gadget.map.validate().is_ok();
    let mats = [&d1, &d0, &g0];
    let max_row_weight = mats.iter().map(|m| m.max_row_weight()).max().unwrap_or(0);
    let max_col_weight = mats.iter().map(|m| m.max_col_weight()).max().unwrap_or(0);
    let size = g.total_dim();
    let size_bound_log3 = size_bound_log3(gadget.codeword.weight());
    let c1 = match cheeger {
        Some(e) => Verdict::from_bool(e.at_least_one()),
        None => Verdict::Inconclusive,
    };
    let conditions = [
        c1,
        Verdict::from_bool(dim_h0 == 0 && dim_hm1 == 0),
        Verdict::from_bool(dim_h1 == 1 && kernel_is_all_ones && image_is_codeword && chain_map_valid),
        Verdict::from_bool(g1_one_sparse),
        Verdict::from_bool(size <= size_bound_log3),
    ];
    GadgetReport {
        mode,
        cheeger,
        dim_h1,
        dim_h0,
        dim_hm1,
        kernel_is_all_ones,
        image_is_codeword,
        g1_one_sparse,
        chain_map_valid,
        max_row_weight,
        max_col_weight,
        size,
        size_bound_log3,
        conditions,
    }
}
