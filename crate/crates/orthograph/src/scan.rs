//! Pair enumeration and the planar sign scan.

use std::collections::{BTreeMap, BTreeSet};

use orthograph_core::graphs::{enumerate_graphs, IsoKey};
use orthograph_core::matchings::{self, Darts};
use orthograph_core::polyspace::{inner_product_within, simple_matching_sum, Budget};
use orthograph_core::symnum::Style;
use orthograph_core::{Edge, Graph, RatFunc, Result, Setting, Vertex};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::format;

/// Largest union scanned.
pub const SCAN_EDGE_LIMIT: usize = 10;
/// Vertex bound for the brute-force minor search.
pub const MINOR_VERTEX_LIMIT: usize = 12;

/// Ways to split the edges of `u` into an ordered pair `(G, H)` on the
/// vertex set of `u`, deduplicated up to joint relabeling and, with
/// `swap`, exchanging the two sides.
pub fn colorings(u: &Graph, swap: bool, keep: impl Fn(&Graph, &Graph) -> bool) -> Vec<(Graph, Graph)> {
    let m = u.num_edges();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << m) {
        let (ge, he): (Vec<_>, Vec<_>) = u.edges().iter().enumerate().partition(|(i, _)| mask >> i & 1 == 1);
        let g = u.with_edges(ge.into_iter().map(|(_, e)| e.clone()).collect());
        let h = u.with_edges(he.into_iter().map(|(_, e)| e.clone()).collect());
        if !keep(&g, &h) {
            continue;
        }
        let key = Graph::pair_iso_key(&g, &h, swap).expect("same vertex set");
        if seen.insert(key) {
            out.push((g, h));
        }
    }
    out
}

/// All pairs `(G, H)` whose union has at most `max_union_edges` edges on at
/// most `vertex_budget` vertices, with no isolated vertex in the union, up
/// to joint isomorphism and swapping.
pub fn enumerate_pairs(setting: Setting, vertex_budget: usize, max_union_edges: usize) -> Vec<(Graph, Graph)> {
    let mut seen: BTreeSet<IsoKey> = BTreeSet::new();
    let mut out = Vec::new();
    for u in enumerate_graphs(setting, vertex_budget, max_union_edges) {
        for (g, h) in colorings(&u, true, |_, _| true) {
            if seen.insert(Graph::pair_iso_key(&g, &h, true).unwrap()) {
                out.push((g, h));
            }
        }
    }
    out
}

/// Loopless multigraphs with the given degree sequence on `1..=len`,
/// labeled, possibly with repeats up to isomorphism.
fn multigraphs_with_degrees(deg: &mut [usize], edges: &mut Vec<(Vertex, Vertex)>, out: &mut Vec<Vec<(Vertex, Vertex)>>) {
    let Some(u) = deg.iter().position(|&d| d > 0) else {
        out.push(edges.clone());
        return;
    };
    for v in u + 1..deg.len() {
        if deg[v] == 0 {
            continue;
        }
        // Edges leaving the same first endpoint are emitted in order.
        if let Some(&(a, b)) = edges.last() {
            if a as usize == u + 1 && (v as Vertex + 1) < b {
                continue;
            }
        }
        deg[u] -= 1;
        deg[v] -= 1;
        edges.push((u as Vertex + 1, v as Vertex + 1));
        multigraphs_with_degrees(deg, edges, out);
        edges.pop();
        deg[u] += 1;
        deg[v] += 1;
    }
}

fn even_sequences(total: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if total == 0 {
        out.push(prefix.clone());
        return;
    }
    let mut d = max_part.min(total);
    if d % 2 == 1 {
        d -= 1;
    }
    while d >= 2 {
        prefix.push(d);
        even_sequences(total - d, d, prefix, out);
        prefix.pop();
        d -= 2;
    }
}

/// Connected loopless unions with every degree even and at most
/// `max_edges` edges, one per isomorphism class. With `max_degree`, vertex
/// degrees are capped.
pub fn balanced_unions(max_edges: usize, max_degree: Option<usize>) -> Vec<Graph> {
    let mut classes: BTreeMap<IsoKey, Graph> = BTreeMap::new();
    for m in 2..=max_edges {
        let mut seqs = Vec::new();
        even_sequences(2 * m, max_degree.unwrap_or(2 * m), &mut Vec::new(), &mut seqs);
        for degs in seqs {
            if degs.len() < 2 {
                continue;
            }
            let vs: Vec<Vertex> = (1..=degs.len() as Vertex).collect();
            let mut raw = Vec::new();
            multigraphs_with_degrees(&mut degs.clone(), &mut Vec::new(), &mut raw);
            for edges in raw {
                let u = Graph::on_vertices(Setting::Spherical, &vs, &edges).expect("loopless");
                if u.is_connected() {
                    classes.entry(u.iso_key()).or_insert(u);
                }
            }
        }
    }
    classes.into_values().collect()
}

/// Degree-equivalent loopless pairs with connected union, up to joint
/// isomorphism and swapping. With `max_degree_two`, each side has maximum
/// degree 2.
pub fn balanced_pairs(max_union_edges: usize, max_degree_two: bool) -> Vec<(Graph, Graph)> {
    let cap = max_degree_two.then_some(4);
    let mut out = Vec::new();
    for u in balanced_unions(max_union_edges, cap) {
        out.extend(colorings(&u, true, |g, h| {
            g.num_edges() == h.num_edges()
                && g.degree_equivalent(h).unwrap_or(false)
                && (!max_degree_two || (g.max_degree() <= 2 && h.max_degree() <= 2))
        }));
    }
    out
}

// ---------------------------------------------------------------------------
// Minors.

/// Whether the underlying simple graph has a K5 minor: five disjoint
/// connected vertex sets, pairwise joined by an edge.
pub fn has_k5_minor(g: &Graph) -> Result<bool> {
    let support = g.support();
    let k = support.len();
    if k > MINOR_VERTEX_LIMIT {
        return Err(orthograph_core::Error::SizeLimit { what: "minor search vertex", limit: MINOR_VERTEX_LIMIT, got: k });
    }
    if k < 5 {
        return Ok(false);
    }
    let idx = |v: Vertex| support.binary_search(&v).unwrap();
    let mut adj = vec![0u32; k];
    for e in g.edges() {
        if e.is_loop() {
            continue;
        }
        let (a, b) = (idx(e.vertices()[0]), idx(e.vertices()[1]));
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let mut label = vec![0usize; k];
    Ok(branch_sets(&adj, &mut label, 0, 0))
}

fn connected_mask(adj: &[u32], mask: u32) -> bool {
    if mask == 0 {
        return false;
    }
    let mut seen = mask & mask.wrapping_neg();
    loop {
        let mut grow = seen;
        for (v, a) in adj.iter().enumerate() {
            if seen >> v & 1 == 1 {
                grow |= a & mask;
            }
        }
        if grow == seen {
            return seen == mask;
        }
        seen = grow;
    }
}

/// Restricted-growth assignment of vertices to "unused" (0) or one of five
/// branch sets; the first vertex of each new set opens it in order.
fn branch_sets(adj: &[u32], label: &mut [usize], i: usize, opened: usize) -> bool {
    if i == adj.len() {
        if opened < 5 {
            return false;
        }
        let sets: Vec<u32> = (1..=5)
            .map(|s| label.iter().enumerate().filter(|(_, &l)| l == s).fold(0, |m, (v, _)| m | 1 << v))
            .collect();
        if !sets.iter().all(|&s| connected_mask(adj, s)) {
            return false;
        }
        let nbr = |s: u32| (0..adj.len()).filter(|v| s >> v & 1 == 1).fold(0, |m, v| m | adj[v]);
        return (0..5).all(|a| (a + 1..5).all(|b| nbr(sets[a]) & sets[b] != 0));
    }
    if adj.len() - i < 5 - opened {
        return false;
    }
    for l in 0..=(opened + 1).min(5) {
        label[i] = l;
        if branch_sets(adj, label, i + 1, opened.max(l)) {
            return true;
        }
    }
    label[i] = 0;
    false
}

// ---------------------------------------------------------------------------
// Records.

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConjectureStatus {
    Consistent,
    Counterexample,
    Vacuous,
}

impl ConjectureStatus {
    pub fn name(self) -> &'static str {
        match self {
            ConjectureStatus::Consistent => "consistent",
            ConjectureStatus::Counterexample => "counterexample",
            ConjectureStatus::Vacuous => "vacuous",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanRecord {
    pub g: Graph,
    pub h: Graph,
    pub union_planar: bool,
    pub inner_product: RatFunc,
    pub sign_at_large_n: i32,
    pub simple_matching_sum: RatFunc,
    pub conjecture_status: ConjectureStatus,
    /// Set for nonplanar unions.
    pub k5_minor: Option<bool>,
    /// For maximum-degree-2 pairs: matchings with `s_M != 0` and no simple
    /// matching with at least as many cycles.
    pub undominated: Option<usize>,
}

impl ScanRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "g": format::edges_to_json(self.g.edges()),
            "h": format::edges_to_json(self.h.edges()),
            "vertices": self.g.vertices(),
            "union_planar": self.union_planar,
            "inner_product": self.inner_product.render(Style::Ascii),
            "sign_at_large_n": self.sign_at_large_n,
            "simple_matching_sum": self.simple_matching_sum.render(Style::Ascii),
            "conjecture_status": self.conjecture_status.name(),
            "k5_minor": self.k5_minor,
            "undominated_matchings": self.undominated,
        })
    }
}

/// `inner / simple → 1` as `n → ∞`.
fn same_leading_term(a: &RatFunc, b: &RatFunc) -> bool {
    a.order() == b.order() && a.leading_coeff() == b.leading_coeff()
}

/// Matchings with nonzero `s_M` that no simple matching dominates in cycle
/// count.
pub fn undominated_matchings(g: &Graph, h: &Graph) -> Result<usize> {
    let darts = Darts::pair(g, h)?;
    let mut best_simple: Option<usize> = None;
    let mut weighted = Vec::new();
    for m in matchings::collect_pm_cross(&darts) {
        let c = matchings::cycle_count(&darts, &m);
        if matchings::is_simple(&darts, &m) {
            best_simple = best_simple.max(Some(c));
        }
        if matchings::s_coefficient(&darts, &m)? != 0 {
            weighted.push(c);
        }
    }
    Ok(weighted.into_iter().filter(|&c| best_simple.is_none_or(|b| b < c)).count())
}

pub fn scan_pair(g: &Graph, h: &Graph, budget: &Budget) -> Result<ScanRecord> {
    let u = g.union(h)?;
    let union_planar = u.is_planar()?;
    let inner = inner_product_within(g, h, budget)?;
    let simple = simple_matching_sum(g, h)?;
    let conjecture_status = if !union_planar {
        ConjectureStatus::Vacuous
    } else if simple.is_zero() {
        if inner.is_zero() { ConjectureStatus::Consistent } else { ConjectureStatus::Counterexample }
    } else if same_leading_term(&inner, &simple) {
        ConjectureStatus::Consistent
    } else {
        ConjectureStatus::Counterexample
    };
    let k5_minor = if union_planar { None } else { Some(has_k5_minor(&u)?) };
    let undominated = if g.max_degree() <= 2 && h.max_degree() <= 2 && union_planar {
        Some(undominated_matchings(g, h)?)
    } else {
        None
    };
    Ok(ScanRecord {
        g: g.clone(),
        h: h.clone(),
        union_planar,
        sign_at_large_n: inner.leading_sign(),
        inner_product: inner,
        simple_matching_sum: simple,
        conjecture_status,
        k5_minor,
        undominated,
    })
}

#[derive(Clone, Debug, Default)]
pub struct ScanSummary {
    pub pairs: usize,
    pub planar: usize,
    pub planar_negative: usize,
    pub counterexamples: usize,
    pub nonplanar_negative: usize,
    pub nonplanar_negative_without_k5_minor: usize,
    pub undominated: usize,
}

impl ScanSummary {
    pub fn of(records: &[ScanRecord]) -> Self {
        let mut s = ScanSummary { pairs: records.len(), ..Default::default() };
        for r in records {
            if r.union_planar {
                s.planar += 1;
                s.planar_negative += usize::from(r.sign_at_large_n < 0);
            } else if r.sign_at_large_n < 0 {
                s.nonplanar_negative += 1;
                s.nonplanar_negative_without_k5_minor += usize::from(r.k5_minor == Some(false));
            }
            s.counterexamples += usize::from(r.conjecture_status == ConjectureStatus::Counterexample);
            s.undominated += r.undominated.unwrap_or(0);
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pairs": self.pairs,
            "planar": self.planar,
            "planar_negative": self.planar_negative,
            "conjecture_counterexamples": self.counterexamples,
            "nonplanar_negative": self.nonplanar_negative,
            "nonplanar_negative_without_k5_minor": self.nonplanar_negative_without_k5_minor,
            "undominated_matchings": self.undominated,
        })
    }
}

/// Spherical scan over balanced pairs with at most `max_union_edges` union
/// edges. Records come back in enumeration order regardless of threads.
pub fn scan(max_union_edges: usize) -> Result<Vec<ScanRecord>> {
    if max_union_edges > SCAN_EDGE_LIMIT {
        return Err(orthograph_core::Error::Budget(format!(
            "scan budget {max_union_edges} exceeds {SCAN_EDGE_LIMIT} union edges"
        )));
    }
    let budget = Budget { max_edges: max_union_edges, max_union_edges };
    let pairs = balanced_pairs(max_union_edges, false);
    pairs.par_iter().map(|(g, h)| scan_pair(g, h, &budget)).collect()
}

/// `p(x + c)` for an integer polynomial given lowest degree first.
pub fn shifted_coefficients(coeffs: &[num_bigint::BigInt], c: i64) -> Vec<num_bigint::BigInt> {
    use num_traits::Zero;
    let mut out: Vec<num_bigint::BigInt> = Vec::new();
    for a in coeffs.iter().rev() {
        // out = out * (x + c) + a
        let mut next = vec![num_bigint::BigInt::zero(); out.len() + 1];
        for (i, b) in out.iter().enumerate() {
            next[i + 1] += b;
            next[i] += b * c;
        }
        next[0] += a;
        out = next;
    }
    out
}

pub fn edge_list(g: &Graph) -> String {
    g.edges().iter().map(|e: &Edge| e.vertices().iter().map(ToString::to_string).collect::<String>()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn k5_minor_detection() {
        let k5 = Graph::from_pairs(
            Setting::Spherical,
            &[(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)],
        )
        .unwrap();
        assert!(has_k5_minor(&k5).unwrap());
        let k33 = Graph::from_pairs(
            Setting::Spherical,
            &[(1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6)],
        )
        .unwrap();
        assert!(!has_k5_minor(&k33).unwrap());
        let a = fixtures::named("fig3a-red", Setting::Spherical).unwrap().unwrap();
        let b = fixtures::named("fig3a-blue", Setting::Spherical).unwrap().unwrap();
        assert!(has_k5_minor(&a.union(&b).unwrap()).unwrap());
    }

    #[test]
    fn shift_matches_evaluation() {
        let c: Vec<num_bigint::BigInt> = [3, -2, 1].iter().map(|&x| x.into()).collect();
        let s = shifted_coefficients(&c, 2);
        // (x+2)^2 - 2(x+2) + 3 = x^2 + 2x + 3
        assert_eq!(s, [3, 2, 1].iter().map(|&x| num_bigint::BigInt::from(x)).collect::<Vec<_>>());
    }

    #[test]
    fn four_cycle_unions() {
        let pairs = balanced_pairs(4, true);
        assert!(pairs.iter().any(|(g, h)| g.num_edges() == 2 && h.num_edges() == 2));
    }
}
