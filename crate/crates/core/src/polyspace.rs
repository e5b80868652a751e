//! Invariant polynomials `Σ c_G m_G`, their expectations, the orthogonal
//! families `p_G`, and closed forms for `E[p_G p_H]`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graphs::{Edge, Graph, Setting, Vertex};
use crate::matchings::{
    self, collect_pm_cross, for_each_partial, for_each_pm, for_each_pm_cross, Color, Darts,
};
use crate::symnum::{fall1, fall2, rise2, IntPoly, RatFunc, Style};

/// Size limits guarding the exponential enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_edges: usize,
    pub max_union_edges: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_edges: 5, max_union_edges: 10 }
    }
}

impl Budget {
    fn check_graph(&self, g: &Graph) -> Result<()> {
        if g.num_edges() > self.max_edges {
            return Err(Error::Budget(format!(
                "{} edges, at most {} per graph",
                g.num_edges(),
                self.max_edges
            )));
        }
        Ok(())
    }

    fn check_union(&self, edges: usize) -> Result<()> {
        if edges > self.max_union_edges {
            return Err(Error::Budget(format!(
                "{edges} edges in the union, at most {}",
                self.max_union_edges
            )));
        }
        Ok(())
    }
}

fn n() -> IntPoly {
    IntPoly::var()
}

fn n_plus(c: i64) -> IntPoly {
    IntPoly::affine(1, c)
}

/// `Σ_k counts[k] n^k`.
fn poly_from_counts(counts: &[i64]) -> IntPoly {
    IntPoly::from_coeffs(counts.iter().map(|&c| BigInt::from(c)).collect())
}

fn bump(counts: &mut Vec<i64>, k: usize, by: i64) {
    if counts.len() <= k {
        counts.resize(k + 1, 0);
    }
    counts[k] += by;
}

/// `Σ_k counts[k] (n)_k` with falling factorials.
fn falling_sum(counts: &[i64]) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (k, &c) in counts.iter().enumerate() {
        if c != 0 {
            acc += &fall1(&n(), k as i64).scale_int(&BigInt::from(c));
        }
    }
    acc
}

fn normalize(setting: Setting, mut edges: Vec<Edge>) -> Vec<Edge> {
    if setting == Setting::Spherical {
        edges.retain(|e| !e.is_loop());
    }
    edges.sort_unstable();
    edges
}

// ---------------------------------------------------------------------------
// The algebra.

/// A linear combination of monomials `m_G` over one vertex set, with
/// coefficients in `Q(n)`.
///
/// In the spherical setting `⟨d_u, d_u⟩ = 1`, so self-loops are erased when
/// terms are inserted.
#[derive(Clone, PartialEq, Eq)]
pub struct InvariantPoly {
    base: Graph,
    terms: BTreeMap<Vec<Edge>, RatFunc>,
}

impl InvariantPoly {
    pub fn zero(setting: Setting, vertices: &[Vertex]) -> Self {
        InvariantPoly { base: Graph::empty(setting, vertices), terms: BTreeMap::new() }
    }

    pub fn constant(setting: Setting, vertices: &[Vertex], c: RatFunc) -> Self {
        let mut p = Self::zero(setting, vertices);
        p.add_term(Vec::new(), c);
        p
    }

    pub fn monomial(g: &Graph) -> Self {
        let mut p = Self::zero(g.setting(), g.vertices());
        p.add_term(g.edges().to_vec(), RatFunc::one());
        p
    }

    pub fn setting(&self) -> Setting {
        self.base.setting()
    }

    pub fn vertices(&self) -> &[Vertex] {
        self.base.vertices()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · m_edges`.
    pub fn add_term(&mut self, edges: Vec<Edge>, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let key = normalize(self.setting(), edges);
        let slot = self.terms.entry(key.clone()).or_insert_with(RatFunc::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Terms as `(graph, coefficient)` in key order.
    pub fn terms(&self) -> impl Iterator<Item = (Graph, &RatFunc)> + '_ {
        self.terms.iter().map(move |(e, c)| (self.base.with_edges(e.clone()), c))
    }

    pub fn raw_terms(&self) -> &BTreeMap<Vec<Edge>, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, g: &Graph) -> RatFunc {
        let key = normalize(self.setting(), g.edges().to_vec());
        self.terms.get(&key).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Largest `Σ |e|` over the terms.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(Edge::len).sum()).max()
    }

    fn check_compatible(&self, other: &InvariantPoly) -> Result<()> {
        if self.setting() != other.setting() {
            return Err(Error::SettingMismatch);
        }
        if self.vertices() != other.vertices() {
            return Err(Error::VertexSetMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &InvariantPoly) -> Result<InvariantPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &InvariantPoly) -> Result<InvariantPoly> {
        self.add(&other.scale(&-RatFunc::one()))
    }

    pub fn scale(&self, c: &RatFunc) -> InvariantPoly {
        let mut out = Self::zero(self.setting(), self.vertices());
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Bilinear extension of `m_G · m_H = m_{G ∪ H}`.
    pub fn multiply(&self, other: &InvariantPoly) -> Result<InvariantPoly> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.setting(), self.vertices());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut e = a.clone();
                e.extend(b.iter().cloned());
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// Coefficients evaluated at a concrete dimension.
    pub fn eval_at(&self, n: i64) -> Result<ConcretePoly> {
        let mut out = ConcretePoly::zero(self.setting(), self.vertices());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.eval_int(n)?);
        }
        Ok(out)
    }

    pub fn render(&self, style: Style) -> String {
        render_terms(
            self.terms.iter().map(|(e, c)| {
                let neg = c.leading_sign() < 0;
                let mag = if neg { -c.clone() } else { c.clone() };
                let text = mag.render(style);
                let plain = mag.is_atomic() || (style == Style::Latex && !text.contains(' '));
                (self.base.with_edges(e.clone()), neg, mag.is_one(), text, plain)
            }),
            style,
        )
    }
}

fn term_order(g: &Graph) -> (core::cmp::Reverse<usize>, Vec<Edge>) {
    (core::cmp::Reverse(g.poly_degree()), g.edges().to_vec())
}

fn render_terms<I>(terms: I, style: Style) -> String
where
    I: Iterator<Item = (Graph, bool, bool, String, bool)>,
{
    let mut items: Vec<_> = terms.collect();
    items.sort_by_key(|(g, ..)| term_order(g));
    if items.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (g, neg, one, text, plain)) in items.into_iter().enumerate() {
        if i == 0 {
            if neg {
                out.push_str(style.minus());
            }
        } else if neg {
            out.push(' ');
            out.push_str(style.minus());
            out.push(' ');
        } else {
            out.push_str(" + ");
        }
        let mono = g.monomial_string(style);
        if g.is_empty() && (!neg || !text.contains(' ')) {
            out.push_str(&text);
        } else if g.is_empty() {
            out.push_str(&format!("({text})"));
        } else if one {
            out.push_str(&mono);
        } else if plain {
            out.push_str(&format!("{text} {mono}"));
        } else {
            out.push_str(&format!("({text}) {mono}"));
        }
    }
    out
}

impl fmt::Debug for InvariantPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.setting(), self.render(Style::Ascii))
    }
}

impl fmt::Display for InvariantPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Ascii))
    }
}

/// An invariant polynomial with rational coefficients at a fixed `n`.
#[derive(Clone, PartialEq, Eq)]
pub struct ConcretePoly {
    base: Graph,
    terms: BTreeMap<Vec<Edge>, BigRational>,
}

impl ConcretePoly {
    pub fn zero(setting: Setting, vertices: &[Vertex]) -> Self {
        ConcretePoly { base: Graph::empty(setting, vertices), terms: BTreeMap::new() }
    }

    pub fn setting(&self) -> Setting {
        self.base.setting()
    }

    pub fn vertices(&self) -> &[Vertex] {
        self.base.vertices()
    }

    pub fn add_term(&mut self, edges: Vec<Edge>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let key = normalize(self.setting(), edges);
        let slot = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Graph, &BigRational)> + '_ {
        self.terms.iter().map(move |(e, c)| (self.base.with_edges(e.clone()), c))
    }

    pub fn raw_terms(&self) -> &BTreeMap<Vec<Edge>, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, g: &Graph) -> BigRational {
        let key = normalize(self.setting(), g.edges().to_vec());
        self.terms.get(&key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn render(&self, style: Style) -> String {
        render_terms(
            self.terms.iter().map(|(e, c)| {
                let mag = c.abs();
                let plain = mag.is_integer();
                (self.base.with_edges(e.clone()), c.is_negative(), mag.is_one(), mag.to_string(), plain)
            }),
            style,
        )
    }
}

impl fmt::Debug for ConcretePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.setting(), self.render(Style::Ascii))
    }
}

impl fmt::Display for ConcretePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Ascii))
    }
}

// ---------------------------------------------------------------------------
// Expectations.

/// Counts partitions of the set `mask` into blocks accepted by `valid`,
/// indexed by the number of blocks.
fn block_partition_counts(full: u32, valid: &dyn Fn(u32) -> bool) -> Vec<i64> {
    fn rec(
        rest: u32,
        valid: &dyn Fn(u32) -> bool,
        memo: &mut BTreeMap<u32, Vec<i64>>,
    ) -> Vec<i64> {
        if rest == 0 {
            return vec![1];
        }
        if let Some(v) = memo.get(&rest) {
            return v.clone();
        }
        let low = rest & rest.wrapping_neg();
        let others = rest & !low;
        let mut out: Vec<i64> = Vec::new();
        let mut sub = others;
        loop {
            let block = sub | low;
            if valid(block) {
                let tail = rec(rest & !block, valid, memo);
                for (k, c) in tail.iter().enumerate() {
                    bump(&mut out, k + 1, *c);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
        memo.insert(rest, out.clone());
        out
    }
    let mut memo = BTreeMap::new();
    rec(full, valid, &mut memo)
}

fn full_mask(k: usize) -> Result<u32> {
    if k > 24 {
        return Err(Error::SizeLimit { what: "edges in a partition enumeration", limit: 24, got: k });
    }
    Ok(if k == 0 { 0 } else { (1u32 << k) - 1 })
}

/// `E[m_G]` for one monomial. Spherical graphs may carry self-loops.
pub fn expectation_graph(g: &Graph) -> Result<RatFunc> {
    match g.setting() {
        Setting::Gaussian | Setting::Spherical => {
            let degrees = g.degrees();
            if degrees.iter().any(|d| d % 2 == 1) {
                return Ok(RatFunc::zero());
            }
            let darts = Darts::new(g)?;
            let mut counts = Vec::new();
            for_each_pm(&darts, |m| bump(&mut counts, matchings::cycle_count(&darts, m), 1));
            let sum = RatFunc::from_poly(poly_from_counts(&counts));
            if g.setting() == Setting::Gaussian {
                return Ok(sum);
            }
            let mut scale = RatFunc::one();
            for d in degrees {
                scale = &scale * &rise2(&n(), -(d as i64) / 2);
            }
            Ok(&scale * &sum)
        }
        Setting::Boolean => {
            let parity = parity_masks(g);
            let full = full_mask(g.num_edges())?;
            let counts = block_partition_counts(full, &|block| xor_of(&parity, block) == 0);
            Ok(falling_sum(&counts))
        }
    }
}

/// Vertex-incidence bitmask of every edge; a block is closed exactly when
/// the XOR of its masks vanishes.
fn parity_masks(g: &Graph) -> Vec<u128> {
    g.edges()
        .iter()
        .map(|e| {
            e.vertices().iter().fold(0u128, |acc, v| acc ^ (1u128 << (g.index_of(*v).unwrap() % 128)))
        })
        .collect()
}

fn xor_of(masks: &[u128], block: u32) -> u128 {
    masks.iter().enumerate().filter(|(i, _)| block >> i & 1 == 1).fold(0, |a, (_, m)| a ^ m)
}

/// `E[p]`, linear over the terms.
pub fn expectation(p: &InvariantPoly) -> Result<RatFunc> {
    let mut acc = RatFunc::zero();
    for (g, c) in p.terms() {
        let e = expectation_graph(&g)?;
        if !e.is_zero() {
            acc += &(c * &e);
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Orthogonal polynomials.

/// `p_G` with the default [`Budget`].
pub fn orthopoly(g: &Graph) -> Result<InvariantPoly> {
    orthopoly_within(g, &Budget::default())
}

pub fn orthopoly_within(g: &Graph, budget: &Budget) -> Result<InvariantPoly> {
    budget.check_graph(g)?;
    match g.setting() {
        Setting::Gaussian => Ok(orthopoly_gaussian(g)),
        Setting::Spherical => Ok(orthopoly_spherical(g)),
        Setting::Boolean => orthopoly_boolean(g),
    }
}

fn routed_edges(darts: &Darts, r: &matchings::Routing) -> Vec<Edge> {
    r.edges.iter().map(|[a, b]| Edge::pair(darts.vertices()[*a], darts.vertices()[*b])).collect()
}

fn orthopoly_gaussian(g: &Graph) -> InvariantPoly {
    let darts = Darts::new(g).expect("pair edges");
    let mut acc: BTreeMap<Vec<Edge>, Vec<i64>> = BTreeMap::new();
    for_each_partial(&darts, |m| {
        let r = matchings::route(&darts, m);
        let sign = if m.size() % 2 == 0 { 1 } else { -1 };
        let key = normalize(Setting::Gaussian, routed_edges(&darts, &r));
        bump(acc.entry(key).or_default(), r.cycles, sign);
    });
    let mut p = InvariantPoly::zero(g.setting(), g.vertices());
    for (e, counts) in acc {
        p.add_term(e, RatFunc::from_poly(poly_from_counts(&counts)));
    }
    p
}

fn orthopoly_spherical(g: &Graph) -> InvariantPoly {
    let darts = Darts::new(g).expect("pair edges");
    let degrees = g.degrees();
    let nv = degrees.len();
    let mut acc: BTreeMap<(Vec<Edge>, Vec<usize>), Vec<i64>> = BTreeMap::new();
    for_each_partial(&darts, |m| {
        let r = matchings::route(&darts, m);
        let sign = if m.size() % 2 == 0 { 1 } else { -1 };
        let sizes: Vec<usize> = (0..nv).map(|vi| m.pairs_at(&darts, vi).len()).collect();
        let key = (normalize(Setting::Spherical, routed_edges(&darts, &r)), sizes);
        bump(acc.entry(key).or_default(), r.cycles, sign);
    });
    let mut factor_cache: BTreeMap<Vec<usize>, RatFunc> = BTreeMap::new();
    let mut p = InvariantPoly::zero(g.setting(), g.vertices());
    for ((e, sizes), counts) in acc {
        let factor = factor_cache
            .entry(sizes.clone())
            .or_insert_with(|| {
                let mut f = RatFunc::one();
                for (d, k) in degrees.iter().zip(&sizes) {
                    f = &f * &fall2(&n_plus(2 * *d as i64 - 4), -(*k as i64));
                }
                f
            })
            .clone();
        p.add_term(e, &factor * &RatFunc::from_poly(poly_from_counts(&counts)));
    }
    p
}

fn orthopoly_boolean(g: &Graph) -> Result<InvariantPoly> {
    let mut acc: BTreeMap<Vec<Edge>, Vec<i64>> = BTreeMap::new();
    for (part, mu) in matchings::mobius_table(g) {
        if mu == 0 {
            continue;
        }
        let (routed, cycles) = matchings::route_partition(g, &part);
        bump(acc.entry(routed.edges().to_vec()).or_default(), cycles, mu);
    }
    let mut p = InvariantPoly::zero(g.setting(), g.vertices());
    for (e, counts) in acc {
        p.add_term(e, RatFunc::from_poly(poly_from_counts(&counts)));
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// Inner products.

fn check_pair(g: &Graph, h: &Graph) -> Result<()> {
    if g.setting() != h.setting() {
        return Err(Error::SettingMismatch);
    }
    if g.vertices() != h.vertices() {
        return Err(Error::VertexSetMismatch);
    }
    Ok(())
}

/// `E[p_G p_H]` from the closed-form matching sums.
pub fn inner_product(g: &Graph, h: &Graph) -> Result<RatFunc> {
    inner_product_within(g, h, &Budget::default())
}

pub fn inner_product_within(g: &Graph, h: &Graph, budget: &Budget) -> Result<RatFunc> {
    check_pair(g, h)?;
    if !g.degree_equivalent(h)? {
        return Ok(RatFunc::zero());
    }
    budget.check_union(g.num_edges() + h.num_edges())?;
    match g.setting() {
        Setting::Gaussian => {
            let darts = Darts::pair(g, h)?;
            let mut counts = Vec::new();
            for_each_pm_cross(&darts, |m| bump(&mut counts, matchings::cycle_count(&darts, m), 1));
            Ok(RatFunc::from_poly(poly_from_counts(&counts)))
        }
        Setting::Spherical => spherical_inner_product(g, h),
        Setting::Boolean => boolean_inner_product(g, h),
    }
}

/// `∏_v (n)^{rising 2, -d(v)}` for the common degrees of a degree-equivalent pair.
fn sphere_scale(g: &Graph) -> RatFunc {
    let mut scale = RatFunc::one();
    for d in g.degrees() {
        scale = &scale * &rise2(&n(), -(d as i64));
    }
    scale
}

fn spherical_inner_product(g: &Graph, h: &Graph) -> Result<RatFunc> {
    let darts = Darts::pair(g, h)?;
    let degrees = g.degrees();
    let mut acc: BTreeMap<Vec<usize>, Vec<i64>> = BTreeMap::new();
    for_each_pm(&darts, |m| {
        let gp = matchings::g_pairs(&darts, m);
        bump(acc.entry(gp).or_default(), matchings::cycle_count(&darts, m), 1);
    });
    let mut sum = RatFunc::zero();
    for (gp, counts) in acc {
        sum += &(&c_factor(&degrees, &gp) * &RatFunc::from_poly(poly_from_counts(&counts)));
    }
    Ok(&sphere_scale(g) * &sum)
}

/// `∏_v (-2)_{g(v)} / (n + 2d(v) - 4)_{g(v)}` with falling-by-two factorials.
fn c_factor(degrees: &[usize], g_pairs: &[usize]) -> RatFunc {
    let mut f = RatFunc::one();
    for (d, &k) in degrees.iter().zip(g_pairs) {
        if k == 0 {
            continue;
        }
        let top = fall2(&IntPoly::constant(-2), k as i64);
        let bottom = fall2(&n_plus(2 * *d as i64 - 4), k as i64);
        f = &f * &top.checked_div(&bottom).expect("nonzero falling product");
    }
    f
}

/// The spherical per-matching coefficient `c_M` for `m ∈ PM(G ∪ H)`.
pub fn c_m(g: &Graph, h: &Graph, darts: &Darts, m: &matchings::MatchingCollection) -> Result<RatFunc> {
    check_pair(g, h)?;
    if !g.degree_equivalent(h)? {
        return Err(Error::Precondition("graphs are not degree-equivalent".into()));
    }
    if !m.is_perfect() || darts.num_darts() != 2 * (g.num_edges() + h.num_edges()) {
        return Err(Error::Precondition("not a perfect matching collection on G ∪ H".into()));
    }
    let gp = matchings::g_pairs(darts, m);
    let cycles = matchings::cycle_count(darts, m) as i64;
    Ok(&RatFunc::n_pow(cycles) * &c_factor(&g.degrees(), &gp))
}

fn boolean_inner_product(g: &Graph, h: &Graph) -> Result<RatFunc> {
    let edges: Vec<(&Edge, Color)> = g
        .edges()
        .iter()
        .map(|e| (e, Color::G))
        .chain(h.edges().iter().map(|e| (e, Color::H)))
        .collect();
    let full = full_mask(edges.len())?;
    let counts = block_partition_counts(full, &|block| simple_balanced(g, &edges, block));
    Ok(falling_sum(&counts))
}

/// Every vertex meets the block in no edges or in one edge of each color.
fn simple_balanced(g: &Graph, edges: &[(&Edge, Color)], block: u32) -> bool {
    let mut count = vec![(0u8, 0u8); g.vertices().len()];
    for (i, (e, c)) in edges.iter().enumerate() {
        if block >> i & 1 == 0 {
            continue;
        }
        for v in e.vertices() {
            let slot = &mut count[g.index_of(*v).unwrap()];
            match c {
                Color::G => slot.0 += 1,
                Color::H => slot.1 += 1,
            }
            if slot.0 > 1 || slot.1 > 1 {
                return false;
            }
        }
    }
    count.iter().all(|(a, b)| a == b)
}

/// `E[p_G p_H]` by expanding the product and taking expectations termwise.
pub fn inner_product_via_expectation(g: &Graph, h: &Graph) -> Result<RatFunc> {
    check_pair(g, h)?;
    let pg = orthopoly(g)?;
    let ph = orthopoly(h)?;
    expectation(&pg.multiply(&ph)?)
}

/// `∏_v (n)^{rising 2, -d(v)} Σ_{M ∈ PM(G,H)} n^{cycles(M)}` for the
/// spherical setting; zero for pairs that are not degree-equivalent.
pub fn inner_product_upper_bound(g: &Graph, h: &Graph) -> Result<RatFunc> {
    check_pair(g, h)?;
    if !g.degree_equivalent(h)? {
        return Ok(RatFunc::zero());
    }
    let darts = Darts::pair(g, h)?;
    let mut counts = Vec::new();
    for_each_pm_cross(&darts, |m| bump(&mut counts, matchings::cycle_count(&darts, m), 1));
    Ok(&sphere_scale(g) * &RatFunc::from_poly(poly_from_counts(&counts)))
}

/// Spherical `E[p_G p_H]` for maximum degree 2 in each graph, via the
/// re-matching sum over subsets of `V_4`.
pub fn degree4_inner_product(g: &Graph, h: &Graph) -> Result<RatFunc> {
    check_pair(g, h)?;
    if g.max_degree() > 2 || h.max_degree() > 2 {
        return Err(Error::DegreePrecondition);
    }
    if !g.degree_equivalent(h)? {
        return Ok(RatFunc::zero());
    }
    let darts = Darts::pair(g, h)?;
    let v4 = matchings::v4(&darts);
    // Keyed by (cycles(M ⊕ S), |S|), with sign folded into the count.
    let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for m in collect_pm_cross(&darts) {
        for mask in 0u64..(1u64 << v4.len()) {
            let s: Vec<Vertex> =
                v4.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            let re = matchings::rematch(&darts, &m, &s)?;
            let sign = if s.len().is_multiple_of(2) { 1 } else { -1 };
            *acc.entry((matchings::cycle_count(&darts, &re), s.len())).or_default() += sign;
        }
    }
    let mut sum = RatFunc::zero();
    for ((cycles, k), c) in acc {
        if c != 0 {
            sum += &RatFunc::n_pow(cycles as i64 - k as i64).scale_int(&BigInt::from(c));
        }
    }
    Ok(&sphere_scale(g) * &sum)
}

/// `n^{-|E(G)|-|E(H)|} Σ_{simple M ∈ PM(G,H)} n^{cycles(M)}`.
pub fn simple_matching_sum(g: &Graph, h: &Graph) -> Result<RatFunc> {
    check_pair(g, h)?;
    if !g.degree_equivalent(h)? {
        return Ok(RatFunc::zero());
    }
    let darts = Darts::pair(g, h)?;
    let mut counts = Vec::new();
    for_each_pm_cross(&darts, |m| {
        if matchings::is_simple(&darts, m) {
            bump(&mut counts, matchings::cycle_count(&darts, m), 1);
        }
    });
    let scale = RatFunc::n_pow(-((g.num_edges() + h.num_edges()) as i64));
    Ok(&scale * &RatFunc::from_poly(poly_from_counts(&counts)))
}

/// Some vertex `v` and some component of `(G ∪ H) - v` receive different
/// numbers of `G` edges and `H` edges from `v`.
pub fn cancellation_applies(g: &Graph, h: &Graph) -> Result<bool> {
    check_pair(g, h)?;
    let u = g.union(h)?;
    let vs = u.vertices();
    let colored: Vec<(&Edge, Color)> = g
        .edges()
        .iter()
        .map(|e| (e, Color::G))
        .chain(h.edges().iter().map(|e| (e, Color::H)))
        .collect();
    for &v in vs {
        let mut parent: Vec<usize> = (0..vs.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (e, _) in &colored {
            if e.vertices().contains(&v) {
                continue;
            }
            let ids: Vec<usize> = e.vertices().iter().map(|w| u.index_of(*w).unwrap()).collect();
            for w in &ids[1..] {
                let (a, b) = (find(&mut parent, ids[0]), find(&mut parent, *w));
                parent[a] = b;
            }
        }
        let mut balance: BTreeMap<usize, i64> = BTreeMap::new();
        for (e, c) in &colored {
            if !e.vertices().contains(&v) || e.is_loop() {
                continue;
            }
            for w in e.vertices() {
                if *w == v {
                    continue;
                }
                let root = find(&mut parent, u.index_of(*w).unwrap());
                *balance.entry(root).or_default() += if *c == Color::G { 1 } else { -1 };
            }
        }
        if balance.values().any(|&b| b != 0) {
            return Ok(true);
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Isserlis expansions.

/// Expansion of `E_v[⟨v, d_1⟩ ⋯ ⟨v, d_k⟩ ⟨v, v⟩^p]` over the fixed vectors
/// `d_1, …, d_k`, which become the vertices `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsserlisExpansion {
    pub poly: InvariantPoly,
    /// Set when `k` is odd and the expansion vanishes.
    pub odd: bool,
}

/// The moment identity per setting. Gaussian uses the factor
/// `∏_{j=1}^{p} (n + k + 2j - 2)`; spherical divides the plain expansion by
/// `n (n+2) ⋯ (n + k - 2)`; Boolean sums even partitions weighted by
/// [`boolean_lambda`] and multiplies by `n^p`.
pub fn isserlis(setting: Setting, k: usize, p: usize) -> Result<IsserlisExpansion> {
    if k > 12 {
        return Err(Error::SizeLimit { what: "Isserlis factors", limit: 12, got: k });
    }
    let vertices: Vec<Vertex> = (1..=k as Vertex).collect();
    let mut poly = InvariantPoly::zero(setting, &vertices);
    if k % 2 == 1 {
        return Ok(IsserlisExpansion { poly, odd: true });
    }
    match setting {
        Setting::Gaussian | Setting::Spherical => {
            let factor = match setting {
                Setting::Gaussian => {
                    let mut f = RatFunc::one();
                    for j in 1..=p as i64 {
                        f = &f * &RatFunc::from_poly(n_plus(k as i64 + 2 * j - 2));
                    }
                    f
                }
                _ => rise2(&n(), -(k as i64) / 2),
            };
            for pairs in pairings(&vertices) {
                let edges = pairs.iter().map(|&(a, b)| Edge::pair(a, b)).collect();
                poly.add_term(edges, factor.clone());
            }
        }
        Setting::Boolean => {
            let factor = RatFunc::n_pow(p as i64);
            let mut lambda_cache: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
            matchings::for_each_partition(k, |part| {
                let blocks = part.blocks();
                if blocks.iter().any(|b| b.len() % 2 == 1) {
                    return;
                }
                let mut shape: Vec<usize> = blocks.iter().map(Vec::len).collect();
                shape.sort_unstable();
                let lambda =
                    lambda_cache.entry(shape.clone()).or_insert_with(|| boolean_lambda(&shape)).clone();
                let edges =
                    blocks.iter().map(|b| Edge::new(b.iter().map(|&i| vertices[i]))).collect();
                poly.add_term(edges, factor.scale_int(&lambda));
            });
        }
    }
    Ok(IsserlisExpansion { poly, odd: false })
}

fn pairings(items: &[Vertex]) -> Vec<Vec<(Vertex, Vertex)>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for j in 1..items.len() {
        let rest: Vec<Vertex> =
            items[1..].iter().enumerate().filter(|(i, _)| i + 1 != j).map(|(_, &v)| v).collect();
        for mut p in pairings(&rest) {
            p.insert(0, (items[0], items[j]));
            out.push(p);
        }
    }
    out
}

/// The Boolean moment weight of an even partition with the given block
/// sizes: the unique solution of `Σ_{M' ≤ M} λ(M') = 1` over even
/// partitions, taken blockwise.
pub fn boolean_lambda(block_sizes: &[usize]) -> BigInt {
    block_sizes.iter().map(|&s| lambda_block(s)).product()
}

fn lambda_block(size: usize) -> BigInt {
    assert!(size.is_multiple_of(2) && size >= 2, "blocks of an even partition have even size");
    if size == 2 {
        return BigInt::one();
    }
    // λ(block) = 1 - Σ over proper even refinements of the block.
    let mut total = BigInt::zero();
    matchings::for_each_partition(size, |part| {
        if part.num_blocks() < 2 {
            return;
        }
        let blocks = part.blocks();
        if blocks.iter().any(|b| b.len() % 2 == 1) {
            return;
        }
        let sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
        total += boolean_lambda(&sizes);
    });
    BigInt::one() - total
}

// ---------------------------------------------------------------------------
// Symbolic Gram-Schmidt property check.

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GramSchmidtReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl GramSchmidtReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that each `p_G` is monic in `m_G` and that `E[p_G m_H] = 0` for
/// every listed `H` of strictly smaller degree on the same vertex set.
pub fn gram_schmidt_symbolic_check(graphs: &[Graph], max_degree: usize) -> Result<GramSchmidtReport> {
    let mut report = GramSchmidtReport::default();
    for g in graphs.iter().filter(|g| g.poly_degree() <= max_degree) {
        let p = orthopoly(g)?;
        report.checks += 1;
        if !p.coeff(g).is_one() {
            report.failures.push(format!("{g:?}: leading coefficient {}", p.coeff(g)));
        }
        for h in graphs {
            if h.poly_degree() >= g.poly_degree()
                || h.setting() != g.setting()
                || h.vertices() != g.vertices()
            {
                continue;
            }
            report.checks += 1;
            let e = expectation(&p.multiply(&InvariantPoly::monomial(h))?)?;
            if !e.is_zero() {
                report.failures.push(format!("{g:?} against {h:?}: {e}"));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sph(vs: &[Vertex], pairs: &[(Vertex, Vertex)]) -> Graph {
        Graph::on_vertices(Setting::Spherical, vs, pairs).unwrap()
    }

    fn gau(pairs: &[(Vertex, Vertex)]) -> Graph {
        Graph::from_pairs(Setting::Gaussian, pairs).unwrap()
    }

    #[test]
    fn gaussian_expectations() {
        let c4 = gau(&[(1, 2), (2, 3), (3, 4), (1, 4)]);
        assert_eq!(expectation_graph(&c4).unwrap(), RatFunc::var());
        let double = gau(&[(1, 2), (1, 2)]);
        assert_eq!(expectation_graph(&double).unwrap(), RatFunc::var());
        assert!(expectation_graph(&gau(&[(1, 2)])).unwrap().is_zero());
    }

    #[test]
    fn spherical_expectation_with_loops() {
        let double = sph(&[1, 2], &[(1, 2), (1, 2)]);
        assert_eq!(expectation_graph(&double).unwrap(), RatFunc::n_pow(-1));
        let looped = Graph::empty(Setting::Spherical, &[1, 2]).with_edges(vec![Edge::pair(1, 1)]);
        assert_eq!(expectation_graph(&looped).unwrap(), RatFunc::one());
    }

    #[test]
    fn boolean_expectation() {
        let g = Graph::from_pairs(Setting::Boolean, &[(1, 2), (1, 2)]).unwrap();
        assert_eq!(expectation_graph(&g).unwrap(), RatFunc::var());
        let h = Graph::from_hyperedges(Setting::Boolean, &[&[1, 2, 3, 4]]).unwrap();
        assert!(expectation_graph(&h).unwrap().is_zero());
    }

    #[test]
    fn gaussian_self_loop_row() {
        let g = gau(&[(1, 1)]);
        let p = orthopoly(&g).unwrap();
        assert_eq!(p.coeff(&g), RatFunc::one());
        assert_eq!(p.coeff(&Graph::empty(Setting::Gaussian, &[1])), -RatFunc::var());
    }

    #[test]
    fn spherical_triangle_row() {
        let t = sph(&[1, 2, 3], &[(1, 2), (2, 3), (1, 3)]);
        let p = orthopoly(&t).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.coeff(&sph(&[1, 2, 3], &[(1, 2), (1, 2)])), -RatFunc::n_pow(-1));
        assert_eq!(p.coeff(&Graph::empty(Setting::Spherical, &[1, 2, 3])), RatFunc::n_pow(-2).scale_int(&BigInt::from(2)));
    }

    #[test]
    fn boolean_four_parallel_edges() {
        let g = Graph::from_pairs(Setting::Boolean, &[(1, 2); 4]).unwrap();
        let p = orthopoly(&g).unwrap();
        let two = Graph::from_pairs(Setting::Boolean, &[(1, 2); 2]).unwrap();
        assert_eq!(p.coeff(&two), RatFunc::from_poly(IntPoly::from_i64s(&[8, -6])));
        assert_eq!(
            p.coeff(&Graph::empty(Setting::Boolean, &[1, 2])),
            RatFunc::from_poly(IntPoly::from_i64s(&[0, -6, 3]))
        );
    }

    #[test]
    fn single_edge_inner_products() {
        let e = gau(&[(1, 2)]);
        assert_eq!(inner_product(&e, &e).unwrap(), RatFunc::var());
        let s = sph(&[1, 2], &[(1, 2)]);
        assert_eq!(inner_product(&s, &s).unwrap(), RatFunc::n_pow(-1));
        assert_eq!(inner_product_upper_bound(&s, &s).unwrap(), RatFunc::n_pow(-1));
    }

    #[test]
    fn cut_vertex_pair_vanishes() {
        let vs = [1, 2, 3, 4, 5];
        let g = sph(&vs, &[(1, 2), (1, 3), (4, 5)]);
        let h = sph(&vs, &[(1, 4), (1, 5), (2, 3)]);
        assert!(cancellation_applies(&g, &h).unwrap());
        assert!(inner_product(&g, &h).unwrap().is_zero());
        assert!(!cancellation_applies(&g, &g).unwrap());
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda_block(4), BigInt::from(-2));
        assert_eq!(lambda_block(6), BigInt::from(16));
        assert_eq!(lambda_block(8), BigInt::from(-272));
        assert_eq!(boolean_lambda(&[4, 4]), BigInt::from(4));
    }

    #[test]
    fn isserlis_examples() {
        let g = isserlis(Setting::Gaussian, 0, 2).unwrap();
        assert_eq!(g.poly.len(), 1);
        assert_eq!(
            g.poly.raw_terms().values().next().unwrap(),
            &RatFunc::from_poly(IntPoly::from_i64s(&[0, 2, 1]))
        );
        let b = isserlis(Setting::Boolean, 4, 0).unwrap();
        assert_eq!(b.poly.len(), 4);
        assert!(isserlis(Setting::Gaussian, 3, 0).unwrap().odd);
    }
}
