//! Matching collections on half-edges, routings, and edge partitions.
//!
//! A pair edge `i` owns darts `2i` and `2i + 1`. Routing follows two
//! involutions: `d ^ 1` crosses an edge, and the matching pairs darts at a
//! vertex. Maximal alternating walks become routed edges; closed ones are
//! counted as cycles.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graphs::{Edge, Graph, Vertex};

const NONE: usize = usize::MAX;

/// Which operand an edge came from in a two-graph dart structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    G,
    H,
}

/// Half-edge view of one graph, or of `G ∪ H` with edges of `G` first.
#[derive(Clone, Debug)]
pub struct Darts {
    vertices: Vec<Vertex>,
    ends: Vec<[usize; 2]>,
    colors: Vec<Color>,
    at: Vec<Vec<usize>>,
}

impl Darts {
    pub fn new(g: &Graph) -> Result<Darts> {
        Self::build(g.vertices(), &[(g, Color::G)])
    }

    /// Darts of `G ∪ H`; edges of `g` are colored [`Color::G`].
    pub fn pair(g: &Graph, h: &Graph) -> Result<Darts> {
        if g.setting() != h.setting() {
            return Err(Error::SettingMismatch);
        }
        if g.vertices() != h.vertices() {
            return Err(Error::VertexSetMismatch);
        }
        Self::build(g.vertices(), &[(g, Color::G), (h, Color::H)])
    }

    fn build(vertices: &[Vertex], parts: &[(&Graph, Color)]) -> Result<Darts> {
        let mut ends = Vec::new();
        let mut colors = Vec::new();
        for (g, c) in parts {
            for e in g.edges() {
                if e.len() != 2 {
                    return Err(Error::InvalidGraph("darts need pair edges".into()));
                }
                let i = |v: Vertex| vertices.binary_search(&v).unwrap();
                ends.push([i(e.vertices()[0]), i(e.vertices()[1])]);
                colors.push(*c);
            }
        }
        let mut at = vec![Vec::new(); vertices.len()];
        for (ei, e) in ends.iter().enumerate() {
            at[e[0]].push(2 * ei);
            at[e[1]].push(2 * ei + 1);
        }
        Ok(Darts { vertices: vertices.to_vec(), ends, colors, at })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn num_darts(&self) -> usize {
        2 * self.ends.len()
    }

    pub fn num_edges(&self) -> usize {
        self.ends.len()
    }

    /// Index into [`Darts::vertices`] of the vertex holding dart `d`.
    pub fn vertex_of(&self, d: usize) -> usize {
        self.ends[d / 2][d % 2]
    }

    pub fn edge_of(&self, d: usize) -> usize {
        d / 2
    }

    pub fn color_of(&self, d: usize) -> Color {
        self.colors[d / 2]
    }

    pub fn darts_at(&self, vi: usize) -> &[usize] {
        &self.at[vi]
    }

    pub fn degree(&self, vi: usize, color: Color) -> usize {
        self.at[vi].iter().filter(|&&d| self.color_of(d) == color).count()
    }

    fn index_of(&self, v: Vertex) -> Result<usize> {
        self.vertices
            .binary_search(&v)
            .map_err(|_| Error::Precondition(format!("vertex {v} is not in the graph")))
    }
}

/// Partial or perfect matchings of darts, one per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatchingCollection {
    mate: Vec<usize>,
}

impl MatchingCollection {
    pub fn empty(darts: &Darts) -> Self {
        MatchingCollection { mate: vec![NONE; darts.num_darts()] }
    }

    /// Builds a collection from dart pairs, checking that each pair sits at
    /// one vertex and no dart is used twice.
    pub fn from_pairs(darts: &Darts, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut m = Self::empty(darts);
        for &(a, b) in pairs {
            if a == b || a >= m.mate.len() || b >= m.mate.len() {
                return Err(Error::Precondition(format!("bad dart pair ({a}, {b})")));
            }
            if darts.vertex_of(a) != darts.vertex_of(b) {
                return Err(Error::Precondition(format!("darts {a}, {b} sit at different vertices")));
            }
            if m.mate[a] != NONE || m.mate[b] != NONE {
                return Err(Error::Precondition(format!("dart matched twice in ({a}, {b})")));
            }
            m.mate[a] = b;
            m.mate[b] = a;
        }
        Ok(m)
    }

    pub fn mate(&self, d: usize) -> Option<usize> {
        (self.mate[d] != NONE).then_some(self.mate[d])
    }

    /// Matched pairs `(a, b)` with `a < b`, in dart order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.mate.len())
            .filter(|&d| self.mate[d] != NONE && d < self.mate[d])
            .map(|d| (d, self.mate[d]))
            .collect()
    }

    /// Total number of matched pairs.
    pub fn size(&self) -> usize {
        self.mate.iter().filter(|&&m| m != NONE).count() / 2
    }

    pub fn pairs_at(&self, darts: &Darts, vi: usize) -> Vec<(usize, usize)> {
        darts.at[vi]
            .iter()
            .filter(|&&d| self.mate[d] != NONE && d < self.mate[d])
            .map(|&d| (d, self.mate[d]))
            .collect()
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(|&m| m != NONE)
    }

    /// Stable per-vertex listing such as `1: (0 2) | 2: (1 3)`.
    pub fn dump(&self, darts: &Darts) -> String {
        let mut parts = Vec::new();
        for (vi, v) in darts.vertices.iter().enumerate() {
            let pairs = self.pairs_at(darts, vi);
            let body: Vec<String> = pairs.iter().map(|(a, b)| format!("({a} {b})")).collect();
            parts.push(format!("{v}: {}", body.join(" ")));
        }
        parts.join(" | ")
    }
}

// ---------------------------------------------------------------------------
// Enumeration.

type LocalMatching = Vec<(usize, usize)>;

fn perfect_local(ds: &[usize]) -> Vec<LocalMatching> {
    if ds.is_empty() {
        return vec![Vec::new()];
    }
    if ds.len() % 2 == 1 {
        return Vec::new();
    }
    let first = ds[0];
    let mut out = Vec::new();
    for k in 1..ds.len() {
        let rest: Vec<usize> =
            ds[1..].iter().enumerate().filter(|&(i, _)| i + 1 != k).map(|(_, &d)| d).collect();
        for mut m in perfect_local(&rest) {
            m.insert(0, (first, ds[k]));
            out.push(m);
        }
    }
    out
}

fn partial_local(ds: &[usize]) -> Vec<LocalMatching> {
    if ds.is_empty() {
        return vec![Vec::new()];
    }
    let first = ds[0];
    let mut out = partial_local(&ds[1..]);
    for k in 1..ds.len() {
        let rest: Vec<usize> =
            ds[1..].iter().enumerate().filter(|&(i, _)| i + 1 != k).map(|(_, &d)| d).collect();
        for mut m in partial_local(&rest) {
            m.insert(0, (first, ds[k]));
            out.push(m);
        }
    }
    out
}

fn cross_local(gs: &[usize], hs: &[usize]) -> Vec<LocalMatching> {
    if gs.len() != hs.len() {
        return Vec::new();
    }
    if gs.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 0..hs.len() {
        let rest: Vec<usize> = hs.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &d)| d).collect();
        for mut m in cross_local(&gs[1..], &rest) {
            m.insert(0, (gs[0], hs[k]));
            out.push(m);
        }
    }
    out
}

fn visit_product<F: FnMut(&MatchingCollection)>(
    options: &[Vec<LocalMatching>],
    m: &mut MatchingCollection,
    vi: usize,
    f: &mut F,
) {
    if vi == options.len() {
        f(m);
        return;
    }
    for local in &options[vi] {
        for &(a, b) in local {
            m.mate[a] = b;
            m.mate[b] = a;
        }
        visit_product(options, m, vi + 1, f);
        for &(a, b) in local {
            m.mate[a] = NONE;
            m.mate[b] = NONE;
        }
    }
}

fn visit_with<F: FnMut(&MatchingCollection)>(
    darts: &Darts,
    options: Vec<Vec<LocalMatching>>,
    mut f: F,
) {
    if options.iter().any(Vec::is_empty) {
        return;
    }
    let mut m = MatchingCollection::empty(darts);
    visit_product(&options, &mut m, 0, &mut f);
}

/// Visits every perfect matching collection in lexicographic dart order.
/// Nothing is visited when some vertex has odd degree.
pub fn for_each_pm<F: FnMut(&MatchingCollection)>(darts: &Darts, f: F) {
    let options = darts.at.iter().map(|ds| perfect_local(ds)).collect();
    visit_with(darts, options, f);
}

/// Visits every collection of partial matchings, the empty one first.
pub fn for_each_partial<F: FnMut(&MatchingCollection)>(darts: &Darts, f: F) {
    let options = darts.at.iter().map(|ds| partial_local(ds)).collect();
    visit_with(darts, options, f);
}

/// Visits the perfect collections in which every pair joins a `G` dart
/// with an `H` dart.
pub fn for_each_pm_cross<F: FnMut(&MatchingCollection)>(darts: &Darts, f: F) {
    let options = darts
        .at
        .iter()
        .map(|ds| {
            let gs: Vec<usize> = ds.iter().copied().filter(|&d| darts.color_of(d) == Color::G).collect();
            let hs: Vec<usize> = ds.iter().copied().filter(|&d| darts.color_of(d) == Color::H).collect();
            cross_local(&gs, &hs)
        })
        .collect();
    visit_with(darts, options, f);
}

pub fn collect_pm(darts: &Darts) -> Vec<MatchingCollection> {
    let mut out = Vec::new();
    for_each_pm(darts, |m| out.push(m.clone()));
    out
}

pub fn collect_partial(darts: &Darts) -> Vec<MatchingCollection> {
    let mut out = Vec::new();
    for_each_partial(darts, |m| out.push(m.clone()));
    out
}

pub fn collect_pm_cross(darts: &Darts) -> Vec<MatchingCollection> {
    let mut out = Vec::new();
    for_each_pm_cross(darts, |m| out.push(m.clone()));
    out
}

/// `prod_v (deg(v) - 1)!!`, or zero if some degree is odd.
pub fn pm_count(g: &Graph) -> u128 {
    g.degrees()
        .into_iter()
        .map(|d| if d % 2 == 1 { 0 } else { (1..d as u128).step_by(2).product::<u128>() })
        .product()
}

// ---------------------------------------------------------------------------
// Routing.

/// One pass of a closed cycle through a vertex, via the matched dart pair
/// `(in, out)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Visit {
    pub vertex: usize,
    pub darts: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Routing {
    /// Routed edges as vertex-index pairs.
    pub edges: Vec<[usize; 2]>,
    pub cycles: usize,
    /// Visit sequences of closed cycles, when requested.
    pub traces: Vec<Vec<Visit>>,
}

impl Routing {
    /// The routed multigraph on the vertex set of `template`. Paths that
    /// return to their start become self-loops.
    pub fn graph(&self, darts: &Darts, template: &Graph) -> Graph {
        let edges = self
            .edges
            .iter()
            .map(|[a, b]| Edge::pair(darts.vertices[*a], darts.vertices[*b]))
            .collect();
        template.with_edges(edges)
    }
}

fn walk_to_free(m: &MatchingCollection, start: usize, seen: &mut [bool]) -> usize {
    let mut d = start;
    loop {
        seen[d] = true;
        d ^= 1;
        seen[d] = true;
        match m.mate[d] {
            NONE => return d,
            next => d = next,
        }
    }
}

fn route_impl(darts: &Darts, m: &MatchingCollection, traced: bool) -> Routing {
    let nd = darts.num_darts();
    let mut seen = vec![false; nd];
    let mut edges = Vec::new();
    for d in 0..nd {
        if seen[d] || m.mate[d] != NONE {
            continue;
        }
        let end = walk_to_free(m, d, &mut seen);
        let (a, b) = (darts.vertex_of(d), darts.vertex_of(end));
        edges.push([a.min(b), a.max(b)]);
    }
    let mut cycles = 0;
    let mut traces = Vec::new();
    for d in 0..nd {
        if seen[d] {
            continue;
        }
        cycles += 1;
        let mut trace = Vec::new();
        let mut x = d;
        loop {
            seen[x] = true;
            let y = x ^ 1;
            seen[y] = true;
            let z = m.mate[y];
            if traced {
                trace.push(Visit { vertex: darts.vertex_of(y), darts: (y, z) });
            }
            seen[z] = true;
            x = z;
            if x == d {
                break;
            }
        }
        if traced {
            traces.push(trace);
        }
    }
    Routing { edges, cycles, traces }
}

/// Contracts matched paths into single edges and deletes closed cycles.
pub fn route(darts: &Darts, m: &MatchingCollection) -> Routing {
    route_impl(darts, m, false)
}

/// Like [`route`], also recording the visit order of every closed cycle.
pub fn route_traced(darts: &Darts, m: &MatchingCollection) -> Routing {
    route_impl(darts, m, true)
}

/// Number of closed cycles of a perfect collection.
pub fn cycle_count(darts: &Darts, m: &MatchingCollection) -> usize {
    let nd = darts.num_darts();
    let mut seen = vec![false; nd];
    let mut cycles = 0;
    for d in 0..nd {
        if seen[d] {
            continue;
        }
        cycles += 1;
        let mut x = d;
        loop {
            seen[x] = true;
            let y = x ^ 1;
            seen[y] = true;
            let z = m.mate[y];
            if z == NONE {
                break;
            }
            x = z;
            if x == d {
                break;
            }
        }
    }
    cycles
}

/// Every cycle of a perfect collection visits each vertex at most once.
pub fn is_simple(darts: &Darts, m: &MatchingCollection) -> bool {
    route_traced(darts, m).traces.iter().all(|t| {
        let mut vs: Vec<usize> = t.iter().map(|v| v.vertex).collect();
        vs.sort_unstable();
        vs.windows(2).all(|w| w[0] != w[1])
    })
}

// ---------------------------------------------------------------------------
// Two-graph analysis (G-pairs, gloop, re-matching, crossings).

/// Number of pairs at each vertex whose darts both come from `G`.
pub fn g_pairs(darts: &Darts, m: &MatchingCollection) -> Vec<usize> {
    (0..darts.vertices.len())
        .map(|vi| {
            m.pairs_at(darts, vi)
                .iter()
                .filter(|(a, b)| darts.color_of(*a) == Color::G && darts.color_of(*b) == Color::G)
                .count()
        })
        .collect()
}

fn check_max_degree_two(darts: &Darts) -> Result<()> {
    for vi in 0..darts.vertices.len() {
        if darts.degree(vi, Color::G) > 2 || darts.degree(vi, Color::H) > 2 {
            return Err(Error::DegreePrecondition);
        }
    }
    Ok(())
}

fn check_cross(darts: &Darts, m: &MatchingCollection) -> Result<()> {
    if !m.is_perfect() || m.pairs().iter().any(|(a, b)| darts.color_of(*a) == darts.color_of(*b)) {
        return Err(Error::Precondition("matching is not a perfect (G,H) matching".into()));
    }
    Ok(())
}

/// Vertices of degree 2 in both graphs.
pub fn v4(darts: &Darts) -> Vec<Vertex> {
    (0..darts.vertices.len())
        .filter(|&vi| darts.degree(vi, Color::G) == 2 && darts.degree(vi, Color::H) == 2)
        .map(|vi| darts.vertices[vi])
        .collect()
}

/// The pairing of the darts at `vi` obtained by following `m` everywhere
/// except at `vi`.
pub fn induced_matching(darts: &Darts, m: &MatchingCollection, vi: usize) -> Vec<(usize, usize)> {
    let mut cut = m.clone();
    for &d in &darts.at[vi] {
        cut.mate[d] = NONE;
    }
    let mut seen = vec![false; darts.num_darts()];
    let mut out = Vec::new();
    for &d in &darts.at[vi] {
        if seen[d] {
            continue;
        }
        let end = walk_to_free(&cut, d, &mut seen);
        out.push((d.min(end), d.max(end)));
    }
    out
}

/// Vertices visited twice by one cycle of `m` whose induced matching has a
/// `G`-pair. Requires maximum degree 2 in each graph and `m ∈ PM(G, H)`.
pub fn gloop(darts: &Darts, m: &MatchingCollection) -> Result<BTreeSet<Vertex>> {
    gloop_colored(darts, m, Color::G)
}

/// [`gloop`] with the roles of the two graphs exchanged.
pub fn hloop(darts: &Darts, m: &MatchingCollection) -> Result<BTreeSet<Vertex>> {
    gloop_colored(darts, m, Color::H)
}

fn gloop_colored(darts: &Darts, m: &MatchingCollection, color: Color) -> Result<BTreeSet<Vertex>> {
    check_max_degree_two(darts)?;
    check_cross(darts, m)?;
    let r = route_traced(darts, m);
    let mut out = BTreeSet::new();
    for trace in &r.traces {
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for v in trace {
            *count.entry(v.vertex).or_default() += 1;
        }
        for (&vi, &c) in &count {
            if c < 2 {
                continue;
            }
            let same = induced_matching(darts, m, vi)
                .iter()
                .any(|(a, b)| darts.color_of(*a) == color && darts.color_of(*b) == color);
            if same {
                out.insert(darts.vertices[vi]);
            }
        }
    }
    Ok(out)
}

/// Re-matches every vertex of `s` into one `G`-pair and one `H`-pair.
pub fn rematch(darts: &Darts, m: &MatchingCollection, s: &[Vertex]) -> Result<MatchingCollection> {
    check_max_degree_two(darts)?;
    let mut out = m.clone();
    for &v in s {
        let vi = darts.index_of(v)?;
        let gs: Vec<usize> =
            darts.at[vi].iter().copied().filter(|&d| darts.color_of(d) == Color::G).collect();
        let hs: Vec<usize> =
            darts.at[vi].iter().copied().filter(|&d| darts.color_of(d) == Color::H).collect();
        if gs.len() != 2 || hs.len() != 2 {
            return Err(Error::Precondition(format!("vertex {v} is not in V4")));
        }
        for &d in &darts.at[vi] {
            out.mate[d] = NONE;
        }
        for pair in [gs, hs] {
            out.mate[pair[0]] = pair[1];
            out.mate[pair[1]] = pair[0];
        }
    }
    Ok(out)
}

/// `cycles(m ⊕ S) = cycles(m) + |S|`.
pub fn is_dominant(darts: &Darts, m: &MatchingCollection, s: &[Vertex]) -> Result<bool> {
    let r = rematch(darts, m, s)?;
    Ok(cycle_count(darts, &r) == cycle_count(darts, m) + s.len())
}

/// Whether the chords joining the two visits of each vertex of `s`, drawn
/// inside the circle of each cycle, are pairwise non-crossing.
pub fn is_noncrossing(darts: &Darts, m: &MatchingCollection, s: &[Vertex]) -> Result<bool> {
    let r = route_traced(darts, m);
    let wanted: Result<BTreeSet<usize>> = s.iter().map(|&v| darts.index_of(v)).collect();
    let wanted = wanted?;
    for trace in &r.traces {
        let mut chords: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (pos, visit) in trace.iter().enumerate() {
            if wanted.contains(&visit.vertex) {
                chords.entry(visit.vertex).or_default().push(pos);
            }
        }
        let chords: Vec<(usize, usize)> =
            chords.values().filter(|p| p.len() == 2).map(|p| (p[0], p[1])).collect();
        for (i, &(a, b)) in chords.iter().enumerate() {
            for &(c, d) in &chords[i + 1..] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// All non-crossing subsets of `candidates`, in subset-mask order.
pub fn noncrossing_subsets(
    darts: &Darts,
    m: &MatchingCollection,
    candidates: &[Vertex],
) -> Result<Vec<Vec<Vertex>>> {
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << candidates.len()) {
        let s: Vec<Vertex> = candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        if is_noncrossing(darts, m, &s)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// Signed count of non-crossing subsets of `gloop(m)`.
pub fn s_coefficient(darts: &Darts, m: &MatchingCollection) -> Result<i64> {
    let gl: Vec<Vertex> = gloop(darts, m)?.into_iter().collect();
    Ok(noncrossing_subsets(darts, m, &gl)?
        .iter()
        .map(|s| if s.len() % 2 == 0 { 1 } else { -1 })
        .sum())
}

// ---------------------------------------------------------------------------
// Edge partitions (Boolean setting).

/// Set partition of edge indices as a restricted growth string: `labels[i]`
/// is the block of edge `i`, and blocks are numbered by first appearance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgePartition {
    labels: Vec<usize>,
    blocks: usize,
}

impl EdgePartition {
    /// Normalizes arbitrary block labels.
    pub fn from_labels(raw: &[usize]) -> EdgePartition {
        let mut map = BTreeMap::new();
        let mut labels = Vec::with_capacity(raw.len());
        for &r in raw {
            let next = map.len();
            labels.push(*map.entry(r).or_insert(next));
        }
        EdgePartition { labels, blocks: map.len() }
    }

    pub fn from_blocks(num_edges: usize, blocks: &[&[usize]]) -> Result<EdgePartition> {
        let mut raw = vec![NONE; num_edges];
        for (b, block) in blocks.iter().enumerate() {
            for &e in *block {
                if e >= num_edges || raw[e] != NONE {
                    return Err(Error::Precondition("blocks do not partition the edges".into()));
                }
                raw[e] = b;
            }
        }
        if raw.contains(&NONE) {
            return Err(Error::Precondition("blocks do not cover the edges".into()));
        }
        Ok(Self::from_labels(&raw))
    }

    pub fn discrete(num_edges: usize) -> EdgePartition {
        EdgePartition { labels: (0..num_edges).collect(), blocks: num_edges }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks == self.labels.len()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (e, &b) in self.labels.iter().enumerate() {
            out[b].push(e);
        }
        out
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &EdgePartition) -> bool {
        let mut image = vec![NONE; self.blocks];
        for (e, &b) in self.labels.iter().enumerate() {
            let c = coarser.labels[e];
            if image[b] == NONE {
                image[b] = c;
            } else if image[b] != c {
                return false;
            }
        }
        true
    }
}

/// Visits all set partitions of `0..k` in restricted-growth order.
pub fn for_each_partition<F: FnMut(&EdgePartition)>(k: usize, mut f: F) {
    fn rec<F: FnMut(&EdgePartition)>(p: &mut EdgePartition, i: usize, f: &mut F) {
        if i == p.labels.len() {
            f(p);
            return;
        }
        let blocks = p.blocks;
        for b in 0..=blocks {
            p.labels[i] = b;
            if b == blocks {
                p.blocks += 1;
            }
            rec(p, i + 1, f);
            if b == blocks {
                p.blocks -= 1;
            }
        }
    }
    let mut p = EdgePartition { labels: vec![0; k], blocks: 0 };
    rec(&mut p, 0, &mut f);
}

pub fn enumerate_partitions(g: &Graph) -> Vec<EdgePartition> {
    let mut out = Vec::new();
    for_each_partition(g.num_edges(), |p| out.push(p.clone()));
    out
}

fn block_incidence(g: &Graph, block: &[usize]) -> BTreeMap<Vertex, usize> {
    let mut count = BTreeMap::new();
    for &e in block {
        for &v in g.edges()[e].vertices() {
            *count.entry(v).or_insert(0) += 1;
        }
    }
    count
}

/// Every vertex meets an even number of the block's edges.
pub fn is_closed_block(g: &Graph, block: &[usize]) -> bool {
    block_incidence(g, block).values().all(|c| c % 2 == 0)
}

/// Replaces each block by the hyperedge of its odd-incidence vertices;
/// closed blocks are deleted and counted as cycles.
pub fn route_partition(g: &Graph, p: &EdgePartition) -> (Graph, usize) {
    let mut edges = Vec::new();
    let mut cycles = 0;
    for block in p.blocks() {
        let odd: Vec<Vertex> = block_incidence(g, &block)
            .into_iter()
            .filter(|(_, c)| c % 2 == 1)
            .map(|(v, _)| v)
            .collect();
        if odd.is_empty() {
            cycles += 1;
        } else {
            edges.push(Edge::new(odd));
        }
    }
    (g.with_edges(edges), cycles)
}

/// Partitions in which every block is closed.
pub fn is_perfect_partition(g: &Graph, p: &EdgePartition) -> bool {
    p.blocks().iter().all(|b| is_closed_block(g, b))
}

/// Membership in the sub-poset made of the discrete partition and all
/// partitions having a block with two edges through a common vertex.
pub fn in_lambda_c(g: &Graph, p: &EdgePartition) -> bool {
    p.is_discrete() || p.blocks().iter().any(|b| block_incidence(g, b).values().any(|&c| c >= 2))
}

/// Möbius values `μ(∅, p)` for every `p` of the sub-poset described in
/// [`in_lambda_c`], ordered finest first.
pub fn mobius_table(g: &Graph) -> Vec<(EdgePartition, i64)> {
    let mut members: Vec<EdgePartition> = Vec::new();
    for_each_partition(g.num_edges(), |p| {
        if in_lambda_c(g, p) {
            members.push(p.clone());
        }
    });
    members.sort_by_key(|p| core::cmp::Reverse(p.num_blocks()));
    let mut out: Vec<(EdgePartition, i64)> = Vec::with_capacity(members.len());
    for p in members {
        let mu = if p.is_discrete() {
            1
        } else {
            -out
                .iter()
                .filter(|(q, _)| q.num_blocks() > p.num_blocks() && q.refines(&p))
                .map(|(_, m)| *m)
                .sum::<i64>()
        };
        out.push((p, mu));
    }
    out
}

/// `μ(∅, p)` in the sub-poset described in [`in_lambda_c`].
pub fn mobius_lambda_c(g: &Graph, p: &EdgePartition) -> Result<i64> {
    if p.labels.len() != g.num_edges() || !in_lambda_c(g, p) {
        return Err(Error::NotInPoset);
    }
    Ok(mobius_table(g)
        .into_iter()
        .find(|(q, _)| q == p)
        .map(|(_, m)| m)
        .expect("members are enumerated"))
}

/// A partition of `E(G) ∪ E(H)` (edges of `g` first) together with its
/// simplicity flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossPartition {
    pub partition: EdgePartition,
    pub simple: bool,
}

/// Partitions of `E(G) ∪ E(H)` in which every block meets every vertex in
/// as many `G` edges as `H` edges.
pub fn pm_bool_cross(g: &Graph, h: &Graph) -> Result<Vec<CrossPartition>> {
    if g.setting() != h.setting() {
        return Err(Error::SettingMismatch);
    }
    if g.vertices() != h.vertices() {
        return Err(Error::VertexSetMismatch);
    }
    let ng = g.num_edges();
    let all: Vec<&Edge> = g.edges().iter().chain(h.edges()).collect();
    let mut out = Vec::new();
    if !g.degree_equivalent(h)? {
        return Ok(out);
    }
    for_each_partition(all.len(), |p| {
        let mut simple = true;
        for block in p.blocks() {
            let mut bal: BTreeMap<Vertex, (usize, usize)> = BTreeMap::new();
            for &e in &block {
                for &v in all[e].vertices() {
                    let c = bal.entry(v).or_default();
                    if e < ng {
                        c.0 += 1;
                    } else {
                        c.1 += 1;
                    }
                }
            }
            if bal.values().any(|(a, b)| a != b) {
                return;
            }
            if bal.values().any(|(a, b)| a + b > 2) {
                simple = false;
            }
        }
        out.push(CrossPartition { partition: p.clone(), simple });
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Setting;

    fn sph(pairs: &[(u32, u32)]) -> Graph {
        Graph::from_pairs(Setting::Spherical, pairs).unwrap()
    }

    #[test]
    fn counts_match_double_factorials() {
        let c4 = sph(&[(1, 2), (2, 3), (3, 4), (1, 4)]);
        assert_eq!(collect_pm(&Darts::new(&c4).unwrap()).len(), 1);
        let k5: Vec<(u32, u32)> = (1..=5).flat_map(|u| (u + 1..=5).map(move |v| (u, v))).collect();
        let k5 = sph(&k5);
        assert_eq!(collect_pm(&Darts::new(&k5).unwrap()).len(), 243);
        assert_eq!(pm_count(&k5), 243);
        let path = sph(&[(1, 2), (2, 3)]);
        assert!(collect_pm(&Darts::new(&path).unwrap()).is_empty());
    }

    #[test]
    fn partial_counts() {
        let edge = sph(&[(1, 2)]);
        assert_eq!(collect_partial(&Darts::new(&edge).unwrap()).len(), 1);
        let star = sph(&[(1, 2), (1, 3), (1, 4)]);
        assert_eq!(collect_partial(&Darts::new(&star).unwrap()).len(), 4);
        let double = sph(&[(1, 2), (1, 2)]);
        assert_eq!(collect_partial(&Darts::new(&double).unwrap()).len(), 4);
    }

    #[test]
    fn routing_examples() {
        let c4 = sph(&[(1, 2), (2, 3), (3, 4), (1, 4)]);
        let d = Darts::new(&c4).unwrap();
        let m = &collect_pm(&d)[0];
        let r = route(&d, m);
        assert_eq!(r.cycles, 1);
        assert!(r.edges.is_empty());

        let star = sph(&[(1, 2), (1, 3), (1, 4)]);
        let d = Darts::new(&star).unwrap();
        // Darts 0, 2, 4 sit at the center; match edges {1,2} and {1,3}.
        let m = MatchingCollection::from_pairs(&d, &[(0, 2)]).unwrap();
        let r = route(&d, &m);
        let routed = r.graph(&d, &star);
        assert_eq!(routed.edges(), &[Edge::pair(1, 4), Edge::pair(2, 3)]);
        assert_eq!(r.cycles, 0);
        assert_eq!(route(&d, &MatchingCollection::empty(&d)).graph(&d, &star), star);
    }

    #[test]
    fn gloop_matches_single_vertex_dominance() {
        let vs = [1, 2, 3, 4, 5];
        let g = Graph::on_vertices(Setting::Spherical, &vs, &[(1, 2), (1, 3), (4, 5)]).unwrap();
        let h = Graph::on_vertices(Setting::Spherical, &vs, &[(1, 4), (1, 5), (2, 3)]).unwrap();
        let d = Darts::pair(&g, &h).unwrap();
        let ms = collect_pm_cross(&d);
        assert_eq!(ms.len(), 2);
        let mut nonempty = 0;
        for m in &ms {
            let gl = gloop(&d, m).unwrap();
            for v in v4(&d) {
                assert_eq!(gl.contains(&v), is_dominant(&d, m, &[v]).unwrap());
            }
            assert_eq!(gl, hloop(&d, m).unwrap());
            nonempty += usize::from(!gl.is_empty());
        }
        assert!(nonempty > 0);
    }

    #[test]
    fn mobius_on_parallel_edges() {
        let g = Graph::from_pairs(Setting::Boolean, &[(1, 2); 4]).unwrap();
        let top = EdgePartition::from_labels(&[0, 0, 0, 0]);
        assert_eq!(mobius_lambda_c(&g, &top).unwrap(), -6);
        let pp = EdgePartition::from_labels(&[0, 0, 1, 1]);
        assert_eq!(mobius_lambda_c(&g, &pp).unwrap(), 1);
        assert_eq!(mobius_lambda_c(&g, &EdgePartition::discrete(4)).unwrap(), 1);
        assert_eq!(enumerate_partitions(&g).len(), 15);
    }

    #[test]
    fn bool_cross_partitions() {
        let g = Graph::from_pairs(Setting::Boolean, &[(1, 2), (2, 3)]).unwrap();
        let parts = pm_bool_cross(&g, &g).unwrap();
        assert!(parts.iter().any(|p| p.simple && p.partition.num_blocks() == 2));
        assert!(parts.iter().any(|p| !p.simple && p.partition.num_blocks() == 1));
    }
}
