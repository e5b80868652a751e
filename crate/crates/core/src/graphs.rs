//! Multigraphs and even hypergraphs on a fixed, ordered vertex set.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::symnum::Style;

pub type Vertex = u32;

/// Distribution of the random vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Setting {
    /// i.i.d. standard Gaussian coordinates.
    Gaussian,
    /// Uniform on the unit sphere.
    Spherical,
    /// Uniform on the hypercube `{-1, +1}^n`.
    Boolean,
}

impl Setting {
    pub const ALL: [Setting; 3] = [Setting::Gaussian, Setting::Spherical, Setting::Boolean];

    pub fn name(self) -> &'static str {
        match self {
            Setting::Gaussian => "gaussian",
            Setting::Spherical => "spherical",
            Setting::Boolean => "boolean",
        }
    }

    pub fn from_name(s: &str) -> Option<Setting> {
        Setting::ALL.into_iter().find(|t| t.name().eq_ignore_ascii_case(s))
    }

    pub fn allows_loops(self) -> bool {
        self == Setting::Gaussian
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An edge as a sorted list of endpoints: `[u, v]` for a pair (`[u, u]` is a
/// self-loop) or an even-size vertex set for a hyperedge.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(SmallVec<[Vertex; 4]>);

impl Edge {
    pub fn pair(u: Vertex, v: Vertex) -> Edge {
        Edge(if u <= v { smallvec::smallvec![u, v] } else { smallvec::smallvec![v, u] })
    }

    pub fn new<I: IntoIterator<Item = Vertex>>(vs: I) -> Edge {
        let mut v: SmallVec<[Vertex; 4]> = vs.into_iter().collect();
        v.sort_unstable();
        Edge(v)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_loop(&self) -> bool {
        self.0.len() == 2 && self.0[0] == self.0[1]
    }

    /// Number of endpoint slots at `v` (2 for a self-loop at `v`).
    pub fn count(&self, v: Vertex) -> usize {
        self.0.iter().filter(|&&w| w == v).count()
    }

    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Edge {
        Edge::new(self.0.iter().map(|&v| f(v)))
    }

    fn symbol(&self, style: Style) -> String {
        let wide = self.0.iter().any(|&v| v > 9);
        let mut label = String::new();
        for (i, v) in self.0.iter().enumerate() {
            if wide && i > 0 {
                label.push(',');
            }
            label.push_str(&format!("{v}"));
        }
        match style {
            Style::Latex => format!("x_{{{label}}}"),
            _ if wide => format!("x{{{label}}}"),
            _ => format!("x{label}"),
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// A multigraph (Gaussian / spherical) or even hypergraph (Boolean) on an
/// explicit vertex set. Edges are kept sorted, so derived equality and
/// ordering compare labeled edge multisets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    setting: Setting,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

/// Isomorphism-invariant encoding of a (possibly edge-colored) graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoKey(Vec<u32>);

impl Graph {
    pub fn new<V, E>(setting: Setting, vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = Edge>,
    {
        let mut vertices: Vec<Vertex> = vertices.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        let g = Graph { setting, vertices, edges };
        g.validate()?;
        Ok(g)
    }

    /// Graph whose vertex set is exactly the set of edge endpoints.
    pub fn from_pairs(setting: Setting, pairs: &[(Vertex, Vertex)]) -> Result<Graph> {
        let vs = pairs.iter().flat_map(|&(u, v)| [u, v]);
        Graph::new(setting, vs, pairs.iter().map(|&(u, v)| Edge::pair(u, v)))
    }

    pub fn on_vertices(
        setting: Setting,
        vertices: &[Vertex],
        pairs: &[(Vertex, Vertex)],
    ) -> Result<Graph> {
        Graph::new(
            setting,
            vertices.iter().copied(),
            pairs.iter().map(|&(u, v)| Edge::pair(u, v)),
        )
    }

    /// Hypergraph whose vertex set is the union of its hyperedges.
    pub fn from_hyperedges(setting: Setting, edges: &[&[Vertex]]) -> Result<Graph> {
        let vs = edges.iter().flat_map(|e| e.iter().copied());
        Graph::new(setting, vs, edges.iter().map(|e| Edge::new(e.iter().copied())))
    }

    pub fn empty(setting: Setting, vertices: &[Vertex]) -> Graph {
        Graph::new(setting, vertices.iter().copied(), []).expect("edgeless graph is valid")
    }

    fn validate(&self) -> Result<()> {
        for e in &self.edges {
            for v in e.vertices() {
                if self.vertices.binary_search(v).is_err() {
                    return Err(Error::InvalidGraph(format!("endpoint {v} is not a vertex")));
                }
            }
            match self.setting {
                Setting::Gaussian | Setting::Spherical => {
                    if e.len() != 2 {
                        return Err(Error::InvalidGraph(format!(
                            "{} edges join exactly two endpoints",
                            self.setting
                        )));
                    }
                    if e.is_loop() && !self.setting.allows_loops() {
                        return Err(Error::InvalidGraph("self-loops are not allowed".into()));
                    }
                }
                Setting::Boolean => {
                    if e.len() < 2 || e.len() % 2 != 0 {
                        return Err(Error::InvalidGraph("hyperedges must have even size".into()));
                    }
                    if e.vertices().windows(2).any(|w| w[0] == w[1]) {
                        return Err(Error::InvalidGraph(
                            "a vertex repeats inside a hyperedge".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Same vertex set and setting with a new edge multiset. Edges are not
    /// validated against the setting rules.
    pub fn with_edges(&self, mut edges: Vec<Edge>) -> Graph {
        edges.sort_unstable();
        Graph { setting: self.setting, vertices: self.vertices.clone(), edges }
    }

    /// Same edges over a larger vertex set.
    pub fn on_vertex_set(&self, vertices: &[Vertex]) -> Result<Graph> {
        Graph::new(self.setting, vertices.iter().copied(), self.edges.iter().cloned())
    }

    pub fn with_setting(&self, setting: Setting) -> Result<Graph> {
        Graph::new(setting, self.vertices.iter().copied(), self.edges.iter().cloned())
    }

    pub fn setting(&self) -> Setting {
        self.setting
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Degree of `m_G` as a polynomial in the vector coordinates.
    pub fn poly_degree(&self) -> usize {
        self.edges.iter().map(Edge::len).sum()
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Degrees aligned with [`Graph::vertices`]; a self-loop counts twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for e in &self.edges {
            for v in e.vertices() {
                d[self.index_of(*v).unwrap()] += 1;
            }
        }
        d
    }

    pub fn degree_map(&self) -> BTreeMap<Vertex, usize> {
        self.vertices.iter().copied().zip(self.degrees()).collect()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().map(|e| e.count(v)).sum()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    fn check_compatible(&self, other: &Graph) -> Result<()> {
        if self.setting != other.setting {
            return Err(Error::SettingMismatch);
        }
        if self.vertices != other.vertices {
            return Err(Error::VertexSetMismatch);
        }
        Ok(())
    }

    /// Whether every vertex has the same degree in both graphs.
    pub fn degree_equivalent(&self, other: &Graph) -> Result<bool> {
        if self.vertices != other.vertices {
            return Err(Error::VertexSetMismatch);
        }
        Ok(self.degrees() == other.degrees())
    }

    /// Multiset sum of the edges.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        self.check_compatible(other)?;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().cloned());
        Ok(self.with_edges(edges))
    }

    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> Result<Graph> {
        Graph::new(
            self.setting,
            self.vertices.iter().map(|&v| f(v)),
            self.edges.iter().map(|e| e.map(&f)),
        )
    }

    /// Vertices with at least one incident edge.
    pub fn support(&self) -> Vec<Vertex> {
        let d = self.degrees();
        self.vertices.iter().zip(d).filter(|(_, d)| *d > 0).map(|(v, _)| *v).collect()
    }

    /// True when the non-isolated vertices form a single component.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertex sets of connected components, ignoring isolated vertices.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in &self.edges {
            let a = self.index_of(e.vertices()[0]).unwrap();
            for v in &e.vertices()[1..] {
                let b = self.index_of(*v).unwrap();
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        let mut comps: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
        for (i, d) in self.degrees().into_iter().enumerate() {
            if d > 0 {
                let r = find(&mut parent, i);
                comps.entry(r).or_default().push(self.vertices[i]);
            }
        }
        let mut out: Vec<Vec<Vertex>> = comps.into_values().collect();
        out.sort();
        out
    }

    /// Isomorphism class key: equal for two graphs iff some vertex bijection
    /// maps one edge multiset onto the other. Isolated vertices count.
    pub fn iso_key(&self) -> IsoKey {
        let colored: Vec<(u32, &Edge)> = self.edges.iter().map(|e| (0, e)).collect();
        canonical_key(self.setting, &self.vertices, &colored)
    }

    /// Key of the 2-edge-colored union of `g` (color 0) and `h` (color 1).
    /// With `swap_symmetric`, the pair and its color-swap share a key.
    pub fn pair_iso_key(g: &Graph, h: &Graph, swap_symmetric: bool) -> Result<IsoKey> {
        g.check_compatible(h)?;
        let mut colored: Vec<(u32, &Edge)> = g.edges.iter().map(|e| (0, e)).collect();
        colored.extend(h.edges.iter().map(|e| (1, e)));
        let key = canonical_key(g.setting, &g.vertices, &colored);
        if !swap_symmetric {
            return Ok(key);
        }
        for c in colored.iter_mut() {
            c.0 = 1 - c.0;
        }
        Ok(key.min(canonical_key(g.setting, &g.vertices, &colored)))
    }

    /// Planarity of the underlying simple graph. Hyperedges are not
    /// supported.
    pub fn is_planar(&self) -> Result<bool> {
        self.is_planar_with_limit(PLANARITY_VERTEX_LIMIT)
    }

    pub fn is_planar_with_limit(&self, limit: usize) -> Result<bool> {
        if self.setting == Setting::Boolean && self.edges.iter().any(|e| e.len() != 2) {
            return Err(Error::InvalidGraph("planarity is defined for pair edges only".into()));
        }
        let support = self.support();
        if support.len() > limit {
            return Err(Error::SizeLimit { what: "planarity vertex", limit, got: support.len() });
        }
        let idx = |v: Vertex| support.binary_search(&v).unwrap();
        let simple: BTreeSet<(usize, usize)> = self
            .edges
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| (idx(e.vertices()[0]), idx(e.vertices()[1])))
            .collect();
        Ok(planar_simple(support.len(), &simple))
    }

    /// `x12^2x23` style monomial; `1` for the empty graph.
    pub fn monomial_string(&self, style: Style) -> String {
        if self.edges.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.edges.len() {
            let mut j = i;
            while j < self.edges.len() && self.edges[j] == self.edges[i] {
                j += 1;
            }
            out.push_str(&style.power(&self.edges[i].symbol(style), (j - i) as u64));
            i = j;
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}{:?}", self.setting, self.vertices, self.edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.monomial_string(Style::Ascii))
    }
}

pub const PLANARITY_VERTEX_LIMIT: usize = 12;

// ---------------------------------------------------------------------------
// Canonical labeling by color refinement plus individualization.

fn canonical_key(setting: Setting, vertices: &[Vertex], edges: &[(u32, &Edge)]) -> IsoKey {
    let nv = vertices.len();
    let local: Vec<(u32, SmallVec<[usize; 4]>)> = edges
        .iter()
        .map(|(c, e)| {
            let vs = e.vertices().iter().map(|v| vertices.binary_search(v).unwrap()).collect();
            (*c, vs)
        })
        .collect();
    let mut incidence: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (ei, (_, vs)) in local.iter().enumerate() {
        for (pos, &v) in vs.iter().enumerate() {
            incidence[v].push((ei, pos));
        }
    }
    let ctx = Canon { local: &local, incidence: &incidence };
    let colors = ctx.refine(vec![0; nv]);
    let mut best: Option<Vec<u32>> = None;
    ctx.search(colors, &mut best);
    let mut key = vec![setting as u32, nv as u32, local.len() as u32];
    key.extend(best.unwrap_or_default());
    IsoKey(key)
}

struct Canon<'a> {
    local: &'a [(u32, SmallVec<[usize; 4]>)],
    incidence: &'a [Vec<(usize, usize)>],
}

type Signature = (u32, Vec<(u32, Vec<u32>)>);

impl Canon<'_> {
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let nv = colors.len();
        let mut classes = count_distinct(&colors);
        loop {
            let sigs: Vec<Signature> = (0..nv)
                .map(|v| {
                    let mut around: Vec<(u32, Vec<u32>)> = self.incidence[v]
                        .iter()
                        .map(|&(ei, pos)| {
                            let (c, vs) = &self.local[ei];
                            let mut others: Vec<u32> = vs
                                .iter()
                                .enumerate()
                                .filter(|&(p, _)| p != pos)
                                .map(|(_, &w)| colors[w])
                                .collect();
                            others.sort_unstable();
                            (*c, others)
                        })
                        .collect();
                    around.sort();
                    (colors[v], around)
                })
                .collect();
            let mut sorted: Vec<_> = sigs.iter().collect();
            sorted.sort();
            sorted.dedup();
            colors = sigs
                .iter()
                .map(|s| sorted.binary_search(&s).unwrap() as u32)
                .collect();
            let now = sorted.len();
            if now == classes {
                return colors;
            }
            classes = now;
        }
    }

    fn search(&self, colors: Vec<u32>, best: &mut Option<Vec<u32>>) {
        let nv = colors.len();
        let mut counts = vec![0usize; nv];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        let Some(cell) = (0..nv).find(|&c| counts[c] > 1) else {
            let key = self.leaf_key(&colors);
            if best.as_ref().is_none_or(|b| key < *b) {
                *best = Some(key);
            }
            return;
        };
        let cell = cell as u32;
        for v in 0..nv {
            if colors[v] != cell {
                continue;
            }
            let split: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(w, &c)| if c > cell || (c == cell && w != v) { c + 1 } else { c })
                .collect();
            self.search(self.refine(split), best);
        }
    }

    fn leaf_key(&self, rank: &[u32]) -> Vec<u32> {
        let mut edges: Vec<(u32, SmallVec<[u32; 4]>)> = self
            .local
            .iter()
            .map(|(c, vs)| {
                let mut r: SmallVec<[u32; 4]> = vs.iter().map(|&v| rank[v]).collect();
                r.sort_unstable();
                (*c, r)
            })
            .collect();
        edges.sort();
        let mut key = Vec::new();
        for (c, r) in edges {
            key.push(c);
            key.push(r.len() as u32);
            key.extend(r);
        }
        key
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let set: BTreeSet<u32> = colors.iter().copied().collect();
    set.len()
}

// ---------------------------------------------------------------------------
// Planarity: biconnected blocks, each tested by incremental path embedding.

fn planar_simple(nv: usize, edges: &BTreeSet<(usize, usize)>) -> bool {
    let mut adj = vec![Vec::new(); nv];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    blocks(nv, &adj).into_iter().all(|b| planar_block(&b))
}

/// Edge sets of the biconnected components.
fn blocks(nv: usize, adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    struct St<'a> {
        adj: &'a [Vec<usize>],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(s: &mut St<'_>, u: usize, parent: Option<usize>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for i in 0..s.adj[u].len() {
            let v = s.adj[u][i];
            if s.disc[v] == 0 {
                s.stack.push((u, v));
                dfs(s, v, Some(u));
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == (u, v) {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if Some(v) != parent && s.disc[v] < s.disc[u] {
                s.stack.push((u, v));
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }
    let mut s = St {
        adj,
        disc: vec![0; nv],
        low: vec![0; nv],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for u in 0..nv {
        if s.disc[u] == 0 {
            dfs(&mut s, u, None);
        }
    }
    s.out
}

fn planar_block(block: &[(usize, usize)]) -> bool {
    let mut verts: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    let nv = verts.len();
    let ne = block.len();
    if nv < 5 || ne < 9 {
        return true;
    }
    if ne > 3 * nv - 6 {
        return false;
    }
    let idx = |v: usize| verts.binary_search(&v).unwrap();
    let mut adj = vec![Vec::new(); nv];
    for &(u, v) in block {
        adj[idx(u)].push(idx(v));
        adj[idx(v)].push(idx(u));
    }
    let key = |u: usize, v: usize| (u.min(v), u.max(v));

    let cycle = find_cycle(&adj);
    let mut in_h = vec![false; nv];
    let mut h_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        in_h[cycle[i]] = true;
        h_edges.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];

    while h_edges.len() < ne {
        // Fragments: chords between embedded vertices, and components of the
        // unembedded vertices together with their attachments.
        let mut fragments: Vec<(Vec<usize>, Fragment)> = Vec::new();
        for u in 0..nv {
            for &v in &adj[u] {
                if u < v && in_h[u] && in_h[v] && !h_edges.contains(&(u, v)) {
                    fragments.push((vec![u, v], Fragment::Chord(u, v)));
                }
            }
        }
        let mut seen = vec![false; nv];
        for s in 0..nv {
            if in_h[s] || seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut att = BTreeSet::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(x) = queue.pop_front() {
                comp.push(x);
                for &y in &adj[x] {
                    if in_h[y] {
                        att.insert(y);
                    } else if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            fragments.push((att.into_iter().collect(), Fragment::Component(comp)));
        }

        let mut choice: Option<(usize, usize)> = None;
        for (fi, (att, _)) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| att.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("at least one fragment remains");
        let path = match &fragments[fi].1 {
            Fragment::Chord(u, v) => vec![*u, *v],
            Fragment::Component(comp) => fragment_path(&adj, &in_h, comp, &fragments[fi].0),
        };
        let face = faces.swap_remove(face_idx);
        let (a, b) = (path[0], *path.last().unwrap());
        let i = face.iter().position(|&x| x == a).unwrap();
        let j = face.iter().position(|&x| x == b).unwrap();
        let k = face.len();
        let interior = &path[1..path.len() - 1];
        let mut f1 = Vec::new();
        let mut t = i;
        loop {
            f1.push(face[t]);
            if t == j {
                break;
            }
            t = (t + 1) % k;
        }
        f1.extend(interior.iter().rev());
        let mut f2 = Vec::new();
        let mut t = j;
        loop {
            f2.push(face[t]);
            if t == i {
                break;
            }
            t = (t + 1) % k;
        }
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            h_edges.insert(key(w[0], w[1]));
        }
        for &x in &path {
            in_h[x] = true;
        }
    }
    true
}

enum Fragment {
    Chord(usize, usize),
    Component(Vec<usize>),
}

fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let nv = adj.len();
    let mut parent = vec![usize::MAX; nv];
    let mut depth = vec![usize::MAX; nv];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some((u, i)) = stack.pop() {
        if i < adj[u].len() {
            stack.push((u, i + 1));
            let v = adj[u][i];
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                parent[v] = u;
                stack.push((v, 0));
            } else if v != parent[u] && depth[v] < depth[u] {
                let mut cycle = vec![u];
                let mut x = u;
                while x != v {
                    x = parent[x];
                    cycle.push(x);
                }
                return cycle;
            }
        }
    }
    unreachable!("a biconnected block with at least three vertices has a cycle")
}

fn fragment_path(adj: &[Vec<usize>], in_h: &[bool], comp: &[usize], att: &[usize]) -> Vec<usize> {
    let a = att[0];
    let in_comp = |x: usize| comp.contains(&x);
    let mut prev = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    for &x in &adj[a] {
        if in_comp(x) && prev[x] == usize::MAX {
            prev[x] = a;
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if in_h[y] && y != a {
                let mut path = vec![y, x];
                let mut z = x;
                while prev[z] != a {
                    z = prev[z];
                    path.push(z);
                }
                path.push(a);
                path.reverse();
                return path;
            }
            if in_comp(y) && prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    unreachable!("fragments of a biconnected block have two attachments")
}

// ---------------------------------------------------------------------------
// Bounded enumeration.

/// All graphs without isolated vertices, up to isomorphism, with at most
/// `vertex_budget` vertices (labeled `1..=k`) and at most `edge_budget`
/// edges. Boolean hyperedges range over all even sizes that fit. Output is
/// ordered by edge count, then by isomorphism key.
pub fn enumerate_graphs(setting: Setting, vertex_budget: usize, edge_budget: usize) -> Vec<Graph> {
    let mut level: BTreeMap<IsoKey, Graph> = BTreeMap::new();
    let empty = Graph::empty(setting, &[]);
    level.insert(empty.iso_key(), empty);
    let mut out: Vec<Graph> = level.values().cloned().collect();
    for _ in 0..edge_budget {
        let mut next: BTreeMap<IsoKey, Graph> = BTreeMap::new();
        for g in level.values() {
            for e in extension_edges(setting, g.vertices.len(), vertex_budget) {
                let top = e.vertices().iter().copied().max().unwrap();
                let count = (g.vertices.len() as u32).max(top);
                let mut edges = g.edges.clone();
                edges.push(e);
                let h = Graph::new(setting, 1..=count, edges).expect("extension is valid");
                if h.support().len() != h.vertices.len() {
                    continue;
                }
                next.entry(h.iso_key()).or_insert(h);
            }
        }
        out.extend(next.values().cloned());
        level = next;
    }
    out
}

/// Connected members of [`enumerate_graphs`], including the empty graph.
pub fn enumerate_connected(
    setting: Setting,
    vertex_budget: usize,
    edge_budget: usize,
) -> Vec<Graph> {
    enumerate_graphs(setting, vertex_budget, edge_budget)
        .into_iter()
        .filter(Graph::is_connected)
        .collect()
}

fn extension_edges(setting: Setting, have: usize, budget: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    match setting {
        Setting::Gaussian | Setting::Spherical => {
            let limit = budget.min(have + 2) as u32;
            for u in 1..=limit {
                for v in u..=limit {
                    if u == v && !setting.allows_loops() {
                        continue;
                    }
                    // New vertices must be introduced in order.
                    if v as usize > have + 1 && u as usize != have + 1 {
                        continue;
                    }
                    out.push(Edge::pair(u, v));
                }
            }
        }
        Setting::Boolean => {
            let limit = budget.min(have + budget) as u32;
            let pool: Vec<Vertex> = (1..=limit).collect();
            for mask in 1u64..(1u64 << pool.len()) {
                let vs: Vec<Vertex> =
                    pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v).collect();
                if !vs.len().is_multiple_of(2) {
                    continue;
                }
                // New vertices must form a prefix of the unused labels.
                let fresh: Vec<Vertex> = vs.iter().copied().filter(|&v| v as usize > have).collect();
                if fresh.iter().enumerate().any(|(i, &v)| v as usize != have + 1 + i) {
                    continue;
                }
                out.push(Edge::new(vs));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(pairs: &[(u32, u32)]) -> Graph {
        Graph::from_pairs(Setting::Gaussian, pairs).unwrap()
    }

    #[test]
    fn degrees_with_loops() {
        assert_eq!(g(&[(1, 1)]).degree(1), 2);
        let c4 = g(&[(1, 2), (2, 3), (3, 4), (1, 4)]);
        assert!(c4.degrees().iter().all(|&d| d == 2));
        let h = Graph::from_hyperedges(Setting::Boolean, &[&[1, 2, 3, 4]]).unwrap();
        assert_eq!(h.degrees(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn rejects_setting_violations() {
        assert!(Graph::from_pairs(Setting::Spherical, &[(1, 1)]).is_err());
        assert!(Graph::from_hyperedges(Setting::Boolean, &[&[1, 2, 3]]).is_err());
        assert!(Graph::new(Setting::Gaussian, [1, 2], [Edge::pair(1, 3)]).is_err());
    }

    #[test]
    fn iso_key_ignores_labels() {
        let a = g(&[(1, 2), (2, 3), (3, 3)]);
        let b = g(&[(3, 1), (1, 2), (2, 2)]);
        let c = g(&[(1, 2), (2, 3), (1, 1)]);
        assert_eq!(a.iso_key(), b.iso_key());
        assert_eq!(a.iso_key(), c.iso_key());
        let d = g(&[(1, 2), (2, 3), (2, 2)]);
        assert_ne!(a.iso_key(), d.iso_key());
    }

    #[test]
    fn planarity_basics() {
        let k5: Vec<(u32, u32)> =
            (1..=5).flat_map(|u| (u + 1..=5).map(move |v| (u, v))).collect();
        assert!(!g(&k5).is_planar().unwrap());
        let k33: Vec<(u32, u32)> =
            (1..=3).flat_map(|u| (4..=6).map(move |v| (u, v))).collect();
        assert!(!g(&k33).is_planar().unwrap());
        let k4: Vec<(u32, u32)> =
            (1..=4).flat_map(|u| (u + 1..=4).map(move |v| (u, v))).collect();
        assert!(g(&k4).is_planar().unwrap());
        // Petersen graph.
        let pet = [
            (1, 2), (2, 3), (3, 4), (4, 5), (5, 1),
            (1, 6), (2, 7), (3, 8), (4, 9), (5, 10),
            (6, 8), (8, 10), (10, 7), (7, 9), (9, 6),
        ];
        assert!(!g(&pet).is_planar().unwrap());
        // Octahedron is planar and dense.
        let oct: Vec<(u32, u32)> = (1..=6)
            .flat_map(|u| (u + 1..=6).map(move |v| (u, v)))
            .filter(|&(u, v)| !(u % 2 == 1 && v == u + 1))
            .collect();
        assert!(g(&oct).is_planar().unwrap());
    }

    #[test]
    fn small_enumeration_counts() {
        let sph = enumerate_connected(Setting::Spherical, 2, 2);
        assert_eq!(sph.len(), 3);
        let gau = enumerate_graphs(Setting::Gaussian, 1, 1);
        assert!(gau.iter().any(|h| h.has_loops()));
        let per_size = |s: Setting, e: usize| {
            enumerate_connected(s, 2 * e, e).iter().filter(|h| h.num_edges() == e).count()
        };
        assert_eq!(per_size(Setting::Gaussian, 3), 11);
        assert_eq!(per_size(Setting::Spherical, 4), 12);
    }
}
