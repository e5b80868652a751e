//! Ground truth at a concrete dimension `n`, computed from coordinates.
//!
//! Nothing here uses matchings or routings: expectations sum over coordinate
//! labelings with explicit per-coordinate moments, Gram-Schmidt solves the
//! normal equations of the monomials, and truncation expands Hermite or
//! harmonic products in the coordinates `d_{u,i}` and re-collects.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use orthograph_core::linalg;
use orthograph_core::polyspace::ConcretePoly;
use orthograph_core::{Edge, Error, Graph, InvariantPoly, Result, Setting, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// Largest number of edges summed over by the labeling enumeration.
pub const LABELING_EDGE_LIMIT: usize = 16;
/// Largest number of coordinate labelings expanded by truncation.
pub const TRUNCATION_LABELING_LIMIT: u64 = 2_000_000;
/// Largest `|V| n` for full hypercube enumeration.
pub const HYPERCUBE_BIT_LIMIT: usize = 22;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// `(k - 1)!!` for even `k`, zero for odd `k`.
fn gaussian_moment(k: u32) -> BigInt {
    if k % 2 == 1 {
        return BigInt::zero();
    }
    (1..k as i64).step_by(2).map(BigInt::from).product()
}

/// Per-coordinate moment rules of one setting at a fixed `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MomentTable {
    pub setting: Setting,
    pub n: i64,
}

impl MomentTable {
    pub fn new(setting: Setting, n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::Precondition(format!("dimension {n} < 1")));
        }
        Ok(MomentTable { setting, n })
    }

    /// `E[∏_i x_i^{c_i}]` for one random vector.
    pub fn joint_moment(&self, counts: &[u32]) -> BigRational {
        match self.setting {
            Setting::Gaussian => {
                BigRational::from_integer(counts.iter().map(|&c| gaussian_moment(c)).product())
            }
            Setting::Spherical => {
                let num: BigInt = counts.iter().map(|&c| gaussian_moment(c)).product();
                if num.is_zero() {
                    return BigRational::zero();
                }
                let total: u32 = counts.iter().sum();
                let den: BigInt =
                    (0..total as i64 / 2).map(|j| BigInt::from(self.n + 2 * j)).product();
                BigRational::new(num, den)
            }
            Setting::Boolean => {
                if counts.iter().all(|c| c % 2 == 0) {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }
        }
    }
}

fn edge_indices(g: &Graph) -> Vec<Vec<usize>> {
    g.edges()
        .iter()
        .map(|e| e.vertices().iter().map(|v| g.index_of(*v).unwrap()).collect())
        .collect()
}

/// `E[m_G]` at dimension `n`: the sum over labelings `σ : E → [n]` of the
/// product of per-vertex joint moments. Labelings are grouped by the
/// pattern of equal labels, each pattern standing for `n (n-1) ⋯` labelings.
pub fn exact_expectation_graph(g: &Graph, n: i64) -> Result<BigRational> {
    let table = MomentTable::new(g.setting(), n)?;
    let edges = edge_indices(g);
    if edges.len() > LABELING_EDGE_LIMIT {
        return Err(Error::Budget(format!(
            "{} edges exceed the labeling limit {LABELING_EDGE_LIMIT}",
            edges.len()
        )));
    }
    let nv = g.vertices().len();
    let mut counts = vec![vec![0u32; edges.len().max(1)]; nv];
    let mut total = BigRational::zero();
    let mut cache: HashMap<Vec<u32>, BigRational> = HashMap::new();
    let mut closes = vec![Vec::new(); edges.len()];
    for v in 0..nv {
        if let Some(last) = edges.iter().rposition(|e| e.contains(&v)) {
            closes[last].push(v);
        }
    }
    let walk = Walk { edges: &edges, closes: &closes, n };
    walk.run(0, 0, &mut counts, &mut |counts, used| {
        let mut weight = BigRational::one();
        for j in 0..used {
            weight *= q(n - j as i64);
        }
        for row in counts.iter() {
            let key = row[..used].to_vec();
            let m = cache.entry(key).or_insert_with_key(|k| {
                let mut sorted = k.clone();
                sorted.sort_unstable();
                table.joint_moment(&sorted)
            });
            if m.is_zero() {
                return;
            }
            weight *= &*m;
        }
        total += weight;
    });
    Ok(total)
}

/// Restricted-growth labelings of the edges. A vertex whose last edge has
/// been labeled must see every label an even number of times, otherwise
/// every moment rule vanishes and the branch is cut.
struct Walk<'a> {
    edges: &'a [Vec<usize>],
    closes: &'a [Vec<usize>],
    n: i64,
}

impl Walk<'_> {
    fn run(&self, i: usize, used: usize, counts: &mut [Vec<u32>], leaf: &mut dyn FnMut(&[Vec<u32>], usize)) {
        if i == self.edges.len() {
            leaf(counts, used);
            return;
        }
        let top = if (used as i64) < self.n { used + 1 } else { used };
        for label in 0..top {
            for &v in &self.edges[i] {
                counts[v][label] += 1;
            }
            let even = self.closes[i].iter().all(|&v| counts[v].iter().all(|c| c % 2 == 0));
            if even {
                self.run(i + 1, used.max(label + 1), counts, leaf);
            }
            for &v in &self.edges[i] {
                counts[v][label] -= 1;
            }
        }
    }
}

/// `E[p]` at dimension `n`, linear over the terms.
pub fn exact_expectation(p: &ConcretePoly, n: i64) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for (g, c) in p.terms() {
        acc += c * exact_expectation_graph(&g, n)?;
    }
    Ok(acc)
}

/// Termwise product of two polynomials over the same vertices.
pub fn concrete_product(a: &ConcretePoly, b: &ConcretePoly) -> ConcretePoly {
    let mut out = ConcretePoly::zero(a.setting(), a.vertices());
    for (ea, ca) in a.raw_terms() {
        for (eb, cb) in b.raw_terms() {
            let mut edges: Vec<Edge> = ea.iter().chain(eb).cloned().collect();
            edges.sort();
            out.add_term(edges, ca * cb);
        }
    }
    out
}

/// `E[p_G^2]` at dimension `n` from concrete Gram-Schmidt and coordinate
/// moments.
pub fn norm_squared_at_n(g: &Graph, n: i64) -> Result<BigRational> {
    let p = gram_schmidt_at_n(g, n)?;
    exact_expectation(&concrete_product(&p, &p), n)
}

pub fn exact_expectation_symbolic(p: &InvariantPoly, n: i64) -> Result<BigRational> {
    exact_expectation(&p.eval_at(n)?, n)
}

/// Values of every distinct edge at one point.
fn edge_values_exact(edges: &[Edge], point: &BTreeMap<Vertex, Vec<BigRational>>) -> Vec<BigRational> {
    edges
        .iter()
        .map(|e| {
            let n = point[&e.vertices()[0]].len();
            (0..n)
                .map(|i| e.vertices().iter().map(|v| point[v][i].clone()).product::<BigRational>())
                .sum()
        })
        .collect()
}

/// Exact value of a polynomial at fixed vectors.
pub fn evaluate_exact(p: &ConcretePoly, point: &BTreeMap<Vertex, Vec<BigRational>>) -> BigRational {
    let mut distinct: Vec<Edge> = p.raw_terms().keys().flatten().cloned().collect();
    distinct.sort_unstable();
    distinct.dedup();
    let values = edge_values_exact(&distinct, point);
    let mut acc = BigRational::zero();
    for (edges, c) in p.raw_terms() {
        let mut t = c.clone();
        for e in edges {
            t *= &values[distinct.binary_search(e).unwrap()];
        }
        acc += t;
    }
    acc
}

/// Boolean `E[p]` by visiting every point of `{±1}^{|V| n}`.
pub fn hypercube_expectation(p: &ConcretePoly, n: usize) -> Result<BigRational> {
    if p.setting() != Setting::Boolean {
        return Err(Error::SettingMismatch);
    }
    let vs = p.vertices().to_vec();
    let bits = vs.len() * n;
    if bits > HYPERCUBE_BIT_LIMIT {
        return Err(Error::Budget(format!("{bits} hypercube bits exceed {HYPERCUBE_BIT_LIMIT}")));
    }
    let mut acc = BigRational::zero();
    for mask in 0u64..(1u64 << bits) {
        let mut point = BTreeMap::new();
        for (k, v) in vs.iter().enumerate() {
            let coords = (0..n).map(|i| q(if mask >> (k * n + i) & 1 == 1 { -1 } else { 1 })).collect();
            point.insert(*v, coords);
        }
        acc += evaluate_exact(p, &point);
    }
    Ok(acc / BigRational::from_integer(BigInt::one() << bits))
}

/// `E_v[⟨v, v⟩^p ∏_i ⟨v, d_i⟩]` for fixed integer vectors, by expanding
/// every factor in coordinates. Boolean uses `⟨v, v⟩ = n` literally
/// through the same expansion.
pub fn isserlis_oracle(setting: Setting, ds: &[Vec<i64>], p: usize, n: usize) -> Result<BigRational> {
    if ds.iter().any(|d| d.len() != n) {
        return Err(Error::Precondition("vectors must have length n".into()));
    }
    let table = MomentTable::new(setting, n as i64)?;
    let factors = ds.len() + 2 * p;
    if (n as f64).powi(factors as i32) > 5e6 {
        return Err(Error::Budget(format!("{n}^{factors} coordinate terms")));
    }
    let mut acc = BigRational::zero();
    let mut counts = vec![0u32; n];
    let mut choice = vec![0usize; factors];
    loop {
        counts.iter_mut().for_each(|c| *c = 0);
        let mut coef = BigInt::one();
        for (f, &a) in choice.iter().enumerate() {
            counts[a] += 1;
            if f < ds.len() {
                coef *= ds[f][a];
            } else if (f - ds.len()) % 2 == 1 && choice[f] != choice[f - 1] {
                coef = BigInt::zero();
            }
        }
        if !coef.is_zero() {
            acc += BigRational::from_integer(coef) * table.joint_moment(&counts);
        }
        let mut f = 0;
        while f < factors {
            choice[f] += 1;
            if choice[f] < n {
                break;
            }
            choice[f] = 0;
            f += 1;
        }
        if f == factors {
            break;
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Bases of monomials.

fn candidate_edges(setting: Setting, vertices: &[Vertex]) -> Vec<Edge> {
    let mut out = Vec::new();
    match setting {
        Setting::Gaussian | Setting::Spherical => {
            for (i, &u) in vertices.iter().enumerate() {
                for &v in &vertices[i..] {
                    if u != v || setting == Setting::Gaussian {
                        out.push(Edge::pair(u, v));
                    }
                }
            }
        }
        Setting::Boolean => {
            for mask in 1u32..(1 << vertices.len()) {
                if mask.count_ones() % 2 == 0 {
                    out.push(Edge::new(
                        (0..vertices.len()).filter(|i| mask >> i & 1 == 1).map(|i| vertices[i]),
                    ));
                }
            }
        }
    }
    out.sort();
    out
}

/// Edge multisets on `template`'s vertex set whose degrees have the same
/// parity as `template` everywhere, with total size at most `max_size` and,
/// when `caps` is given, degree at most `caps[v]` at each vertex.
fn monomial_basis(template: &Graph, max_size: usize, caps: Option<&[usize]>) -> Vec<Graph> {
    let vs = template.vertices();
    let cands = candidate_edges(template.setting(), vs);
    let parity: Vec<usize> = template.degrees().iter().map(|d| d % 2).collect();
    let mut out = Vec::new();
    let mut deg = vec![0usize; vs.len()];
    let mut chosen = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        cands: &[Edge],
        start: usize,
        budget: usize,
        template: &Graph,
        caps: Option<&[usize]>,
        parity: &[usize],
        deg: &mut Vec<usize>,
        chosen: &mut Vec<Edge>,
        out: &mut Vec<Graph>,
    ) {
        if deg.iter().zip(parity).all(|(d, p)| d % 2 == *p) {
            out.push(template.with_edges(chosen.clone()));
        }
        for (k, e) in cands.iter().enumerate().skip(start) {
            if e.len() > budget {
                continue;
            }
            let idx: Vec<usize> = e.vertices().iter().map(|v| template.index_of(*v).unwrap()).collect();
            for &i in &idx {
                deg[i] += 1;
            }
            let ok = caps.is_none_or(|c| idx.iter().all(|&i| deg[i] <= c[i]));
            if ok {
                chosen.push(e.clone());
                rec(cands, k, budget - e.len(), template, caps, parity, deg, chosen, out);
                chosen.pop();
            }
            for &i in &idx {
                deg[i] -= 1;
            }
        }
    }
    rec(&cands, 0, max_size, template, caps, &parity, &mut deg, &mut chosen, &mut out);
    out
}

/// All monomials on `g`'s vertex set of strictly smaller degree whose
/// vertex-degree parities match `g`. Negating one vector flips the sign of
/// `m_H` by `(-1)^{deg_H(u)}`, so monomials of other parities are orthogonal
/// to `m_G` and to each other's blocks.
pub fn lower_basis(g: &Graph) -> Vec<Graph> {
    let d = g.poly_degree();
    if d == 0 {
        return Vec::new();
    }
    monomial_basis(g, d - 1, None)
}

// ---------------------------------------------------------------------------
// Gram-Schmidt at concrete n.

fn product_expectation(a: &Graph, b: &Graph, n: i64) -> Result<BigRational> {
    exact_expectation_graph(&a.union(b)?, n)
}

/// The degree-orthogonal Gram-Schmidt output for `m_G` at dimension `n`:
/// `m_G` minus its projection onto the lower-degree monomials, with
/// linearly dependent monomials pruned by pivoting.
pub fn gram_schmidt_at_n(g: &Graph, n: i64) -> Result<ConcretePoly> {
    let basis = lower_basis(g);
    let k = basis.len();
    let mut gram = vec![vec![BigRational::zero(); k]; k];
    let mut union_cache: HashMap<Vec<Edge>, BigRational> = HashMap::new();
    let mut expect = |a: &Graph, b: &Graph| -> Result<BigRational> {
        let u = a.union(b)?;
        if let Some(v) = union_cache.get(u.edges()) {
            return Ok(v.clone());
        }
        let v = exact_expectation_graph(&u, n)?;
        union_cache.insert(u.edges().to_vec(), v.clone());
        Ok(v)
    };
    for i in 0..k {
        for j in i..k {
            let v = expect(&basis[i], &basis[j])?;
            gram[j][i] = v.clone();
            gram[i][j] = v;
        }
    }
    let rhs: Vec<BigRational> = basis.iter().map(|h| expect(g, h)).collect::<Result<_>>()?;
    let pivots = linalg::pivot_columns(&gram);
    let sub: Vec<Vec<BigRational>> =
        pivots.iter().map(|&i| pivots.iter().map(|&j| gram[i][j].clone()).collect()).collect();
    let sub_rhs: Vec<BigRational> = pivots.iter().map(|&i| rhs[i].clone()).collect();
    let c = linalg::solve(&sub, &sub_rhs)?;
    let norm = expect(g, g)? - c.iter().zip(&sub_rhs).map(|(a, b)| a * b).sum::<BigRational>();
    if norm.is_zero() {
        return Err(Error::Singular(format!(
            "m_G lies in the span of lower-degree monomials for {g:?} at n = {n}"
        )));
    }
    let mut p = ConcretePoly::zero(g.setting(), g.vertices());
    p.add_term(g.edges().to_vec(), BigRational::one());
    for (ci, &i) in c.iter().zip(&pivots) {
        p.add_term(basis[i].edges().to_vec(), -ci.clone());
    }
    Ok(p)
}

/// Two polynomials agree as functions exactly when the second moment of
/// their difference vanishes.
pub fn equal_as_functions(a: &ConcretePoly, b: &ConcretePoly, n: i64) -> Result<bool> {
    if a == b {
        return Ok(true);
    }
    let mut diff = a.clone();
    for (e, c) in b.raw_terms() {
        diff.add_term(e.clone(), -c.clone());
    }
    let terms: Vec<(Graph, BigRational)> = diff.terms().map(|(g, c)| (g, c.clone())).collect();
    let mut second = BigRational::zero();
    for (i, (gi, ci)) in terms.iter().enumerate() {
        for (gj, cj) in &terms[i..] {
            let w = if std::ptr::eq(gi, gj) { q(1) } else { q(2) };
            second += w * ci * cj * product_expectation(gi, gj, n)?;
        }
    }
    Ok(second.is_zero())
}

// ---------------------------------------------------------------------------
// Truncation: explicit coordinate polynomials.

/// Polynomial in the coordinates `d_{u,i}`, variable `u * n + i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct CoordPoly {
    terms: BTreeMap<Vec<u8>, BigRational>,
}

impl CoordPoly {
    fn constant(c: BigRational, vars: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars], c);
        }
        CoordPoly { terms }
    }

    fn add_scaled(&mut self, other: &CoordPoly, s: &BigRational) {
        for (k, v) in &other.terms {
            let slot = self.terms.entry(k.clone()).or_insert_with(BigRational::zero);
            *slot += v * s;
            if slot.is_zero() {
                self.terms.remove(k);
            }
        }
    }

    fn mul(&self, other: &CoordPoly, reduce_squares: bool) -> CoordPoly {
        let mut out = CoordPoly::default();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let key: Vec<u8> = ka
                    .iter()
                    .zip(kb)
                    .map(|(a, b)| if reduce_squares { (a + b) % 2 } else { a + b })
                    .collect();
                let slot = out.terms.entry(key.clone()).or_insert_with(BigRational::zero);
                *slot += va * vb;
                if slot.is_zero() {
                    out.terms.remove(&key);
                }
            }
        }
        out
    }
}

/// Probabilists' Hermite polynomial coefficients, lowest degree first.
fn hermite(k: u32) -> Vec<i64> {
    let mut prev = vec![1i64];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![0i64, 1];
    for j in 1..k as usize {
        let mut next = vec![0i64; j + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= j as i64 * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `∏_i He_{c_i}(d_{u,i})` in the coordinates of vertex `u`.
fn hermite_product(u: usize, counts: &[u32], n: usize, vars: usize) -> CoordPoly {
    let mut acc = CoordPoly::constant(BigRational::one(), vars);
    for (i, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mut f = CoordPoly::default();
        for (e, coef) in hermite(c).into_iter().enumerate() {
            if coef != 0 {
                let mut key = vec![0u8; vars];
                key[u * n + i] = e as u8;
                f.terms.insert(key, q(coef));
            }
        }
        acc = acc.mul(&f, false);
    }
    acc
}

/// `|d_u|^{2k}` expanded.
fn norm_power(u: usize, k: u32, n: usize, vars: usize) -> CoordPoly {
    let mut sq = CoordPoly::default();
    for i in 0..n {
        let mut key = vec![0u8; vars];
        key[u * n + i] = 2;
        sq.terms.insert(key, q(1));
    }
    let mut acc = CoordPoly::constant(BigRational::one(), vars);
    for _ in 0..k {
        acc = acc.mul(&sq, false);
    }
    acc
}

/// Maxwell-converted harmonic `s_α(d_u)`, homogenized to degree `|α|` by
/// multiplying the degree `|α| - 2k` part with `|d_u|^{2k}`.
fn harmonic_product(u: usize, counts: &[u32], n: usize, vars: usize) -> CoordPoly {
    let h = hermite_product(u, counts, n, vars);
    let total: u32 = counts.iter().sum();
    let mut by_k: BTreeMap<u32, CoordPoly> = BTreeMap::new();
    for (key, c) in h.terms {
        let deg: u32 = key[u * n..u * n + n].iter().map(|&e| e as u32).sum();
        by_k.entry((total - deg) / 2).or_default().terms.insert(key, c);
    }
    let mut out = CoordPoly::default();
    for (k, part) in by_k {
        // (n + 2|α| - 4) falling by two, exponent -k.
        let mut scale = BigRational::one();
        for j in 0..k as i64 {
            scale /= q(n as i64 + 2 * total as i64 - 4 - 2 * j);
        }
        let lifted = part.mul(&norm_power(u, k, n, vars), false);
        out.add_scaled(&lifted, &scale);
    }
    out
}

/// `m_H` in coordinates. Spherical monomials are padded with `x_uu` factors
/// up to `pad[u]`; Boolean monomials are reduced with `d^2 = 1`.
fn monomial_coords(h: &Graph, n: usize, pad: Option<&[usize]>) -> CoordPoly {
    let vars = h.vertices().len() * n;
    let boolean = h.setting() == Setting::Boolean;
    let mut acc = CoordPoly::constant(BigRational::one(), vars);
    let mut edges = h.edges().to_vec();
    if let Some(pad) = pad {
        for (i, (d, v)) in h.degrees().iter().zip(h.vertices()).enumerate() {
            for _ in 0..(pad[i] - d) / 2 {
                edges.push(Edge::pair(*v, *v));
            }
        }
    }
    for e in &edges {
        let idx: Vec<usize> = e.vertices().iter().map(|v| h.index_of(*v).unwrap()).collect();
        let mut f = CoordPoly::default();
        for i in 0..n {
            let mut key = vec![0u8; vars];
            for &u in &idx {
                key[u * n + i] += 1;
            }
            if boolean {
                key.iter_mut().for_each(|x| *x %= 2);
            }
            f.terms.insert(key, q(1));
        }
        acc = acc.mul(&f, boolean);
    }
    acc
}

/// The truncation definition of `p_G` at dimension `n`, re-collected into
/// monomials. Gaussian: `Σ_σ ∏_u h_{α_u}(d_u)`. Spherical: the same with
/// harmonics `s_α`. Boolean: the labelings injective at every vertex.
pub fn truncation_at_n(g: &Graph, n: i64) -> Result<ConcretePoly> {
    let nn = usize::try_from(n).map_err(|_| Error::Precondition("n < 0".into()))?;
    let nv = g.vertices().len();
    let vars = nv * nn;
    let edges = edge_indices(g);
    let labelings = (nn as u64).checked_pow(edges.len() as u32).unwrap_or(u64::MAX);
    if labelings > TRUNCATION_LABELING_LIMIT {
        return Err(Error::Budget(format!("{labelings} labelings exceed {TRUNCATION_LABELING_LIMIT}")));
    }
    let mut target = CoordPoly::default();
    let mut sigma = vec![0usize; edges.len()];
    let mut cache: HashMap<(usize, Vec<u32>), CoordPoly> = HashMap::new();
    loop {
        let mut counts = vec![vec![0u32; nn]; nv];
        for (e, &s) in edges.iter().zip(&sigma) {
            for &u in e {
                counts[u][s] += 1;
            }
        }
        match g.setting() {
            Setting::Boolean => {
                if counts.iter().all(|row| row.iter().all(|&c| c <= 1)) {
                    let mut key = vec![0u8; vars];
                    for (u, row) in counts.iter().enumerate() {
                        for (i, &c) in row.iter().enumerate() {
                            key[u * nn + i] = c as u8;
                        }
                    }
                    let slot = target.terms.entry(key.clone()).or_insert_with(BigRational::zero);
                    *slot += q(1);
                }
            }
            setting => {
                let mut prod = CoordPoly::constant(BigRational::one(), vars);
                for (u, row) in counts.iter().enumerate() {
                    let f = cache.entry((u, row.clone())).or_insert_with(|| {
                        if setting == Setting::Gaussian {
                            hermite_product(u, row, nn, vars)
                        } else {
                            harmonic_product(u, row, nn, vars)
                        }
                    });
                    prod = prod.mul(f, false);
                }
                target.add_scaled(&prod, &BigRational::one());
            }
        }
        let mut k = 0;
        while k < sigma.len() {
            sigma[k] += 1;
            if sigma[k] < nn {
                break;
            }
            sigma[k] = 0;
            k += 1;
        }
        if k == sigma.len() {
            break;
        }
    }
    target.terms.retain(|_, v| !v.is_zero());
    collect_monomials(g, &target, nn)
}

/// Writes a coordinate polynomial as a combination of monomials with vertex
/// degrees bounded by those of `g` and matching parity, and checks the
/// reconstruction is exact.
fn collect_monomials(g: &Graph, target: &CoordPoly, n: usize) -> Result<ConcretePoly> {
    let caps = g.degrees();
    let basis = monomial_basis(g, g.poly_degree(), Some(&caps));
    let pad = (g.setting() == Setting::Spherical).then_some(caps.as_slice());
    let cols: Vec<CoordPoly> = basis.iter().map(|h| monomial_coords(h, n, pad)).collect();
    let dot = |a: &CoordPoly, b: &CoordPoly| -> BigRational {
        let (small, large) = if a.terms.len() <= b.terms.len() { (a, b) } else { (b, a) };
        small
            .terms
            .iter()
            .filter_map(|(k, v)| large.terms.get(k).map(|w| v * w))
            .sum()
    };
    let k = cols.len();
    let mut normal = vec![vec![BigRational::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let v = dot(&cols[i], &cols[j]);
            normal[j][i] = v.clone();
            normal[i][j] = v;
        }
    }
    let rhs: Vec<BigRational> = cols.iter().map(|c| dot(c, target)).collect();
    let pivots = linalg::pivot_columns(&normal);
    let sub: Vec<Vec<BigRational>> =
        pivots.iter().map(|&i| pivots.iter().map(|&j| normal[i][j].clone()).collect()).collect();
    let sub_rhs: Vec<BigRational> = pivots.iter().map(|&i| rhs[i].clone()).collect();
    let c = linalg::solve(&sub, &sub_rhs)?;
    let mut rebuilt = CoordPoly::default();
    for (ci, &i) in c.iter().zip(&pivots) {
        rebuilt.add_scaled(&cols[i], ci);
    }
    if &rebuilt != target {
        return Err(Error::Precondition(format!(
            "truncation of {g:?} is not spanned by degree-bounded monomials"
        )));
    }
    let mut p = ConcretePoly::zero(g.setting(), g.vertices());
    for (ci, &i) in c.iter().zip(&pivots) {
        p.add_term(basis[i].edges().to_vec(), ci.clone());
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// Sampling.

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleConfig {
    pub n: usize,
    pub sample_count: usize,
    pub rng_seed: u64,
    pub tolerance_sigmas: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
}

impl Estimate {
    pub fn within(&self, value: f64, sigmas: f64) -> bool {
        (self.mean - value).abs() <= sigmas * self.stderr.max(f64::MIN_POSITIVE)
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// One draw of `|V|` i.i.d. vectors of the setting.
pub fn sample_vectors(setting: Setting, count: usize, n: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| match setting {
            Setting::Gaussian => (0..n).map(|_| rng.sample(StandardNormal)).collect(),
            Setting::Spherical => {
                let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                v.into_iter().map(|x| x / norm).collect()
            }
            Setting::Boolean => (0..n).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect(),
        })
        .collect()
}

/// Floating-point polynomial with precomputed coefficient values.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    vertices: Vec<Vertex>,
    edges: Vec<Vec<usize>>,
    terms: Vec<(f64, Vec<usize>)>,
}

impl FloatPoly {
    pub fn new(p: &ConcretePoly) -> Self {
        let vertices = p.vertices().to_vec();
        let mut distinct: Vec<Edge> = p.raw_terms().keys().flatten().cloned().collect();
        distinct.sort_unstable();
        distinct.dedup();
        let edges = distinct
            .iter()
            .map(|e| e.vertices().iter().map(|v| vertices.binary_search(v).unwrap()).collect())
            .collect();
        let terms = p
            .raw_terms()
            .iter()
            .map(|(es, c)| {
                (c.to_f64().unwrap_or(f64::NAN), es.iter().map(|e| distinct.binary_search(e).unwrap()).collect())
            })
            .collect();
        FloatPoly { vertices, edges, terms }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Value at vectors aligned with the vertex set.
    pub fn eval(&self, d: &[Vec<f64>]) -> f64 {
        let n = d.first().map_or(0, Vec::len);
        let x: Vec<f64> = self
            .edges
            .iter()
            .map(|e| (0..n).map(|i| e.iter().map(|&u| d[u][i]).product::<f64>()).sum())
            .collect();
        self.terms.iter().map(|(c, es)| c * es.iter().map(|&k| x[k]).product::<f64>()).sum()
    }
}

/// Sample mean of `∏ polys` (one factor per polynomial, all evaluated at the
/// same draw). Trial `t` uses the ChaCha8 stream `t` of the seed, so the
/// result does not depend on the thread count.
pub fn monte_carlo_product(
    polys: &[ConcretePoly],
    setting: Setting,
    cfg: &SampleConfig,
) -> Result<Estimate> {
    let Some(first) = polys.first() else {
        return Err(Error::Precondition("nothing to estimate".into()));
    };
    if polys.iter().any(|p| p.vertices() != first.vertices() || p.setting() != setting) {
        return Err(Error::VertexSetMismatch);
    }
    let fps: Vec<FloatPoly> = polys.iter().map(FloatPoly::new).collect();
    let nv = first.vertices().len();
    let values: Vec<f64> = (0..cfg.sample_count as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.rng_seed, t);
            let d = sample_vectors(setting, nv, cfg.n, &mut rng);
            fps.iter().map(|f| f.eval(&d)).product()
        })
        .collect();
    let m = values.len() as f64;
    let mean = values.iter().sum::<f64>() / m;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1.0).max(1.0);
    Ok(Estimate { mean, stderr: (var / m).sqrt() })
}

pub fn monte_carlo_expectation(p: &ConcretePoly, cfg: &SampleConfig) -> Result<Estimate> {
    monte_carlo_product(std::slice::from_ref(p), p.setting(), cfg)
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    pub trials: usize,
    pub max_deviation: f64,
    pub passed: bool,
}

/// Random orthogonal matrix from the QR factorization of a Gaussian matrix,
/// with signs fixed so the distribution is Haar.
pub fn random_orthogonal(n: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = a.qr();
    let mut qm = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                qm[(i, j)] = -qm[(i, j)];
            }
        }
    }
    qm
}

/// Compares `p(d)` with `p(T d)` for random symmetries `T`: rotations in the
/// Gaussian and spherical settings (relative tolerance `1e-9`), coordinate
/// permutations with sign flips on the hypercube (exact).
pub fn invariance_check(p: &ConcretePoly, n: usize, trials: usize, seed: u64) -> Result<InvarianceReport> {
    let nv = p.vertices().len();
    let mut worst: f64 = 0.0;
    let mut passed = true;
    match p.setting() {
        Setting::Boolean => {
            for t in 0..trials as u64 {
                let mut rng = trial_rng(seed, t);
                let d = sample_vectors(Setting::Boolean, nv, n, &mut rng);
                let mut perm: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    perm.swap(i, rng.random_range(0..=i));
                }
                let signs: Vec<i64> = (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
                let to_point = |f: &dyn Fn(usize, usize) -> i64| -> BTreeMap<Vertex, Vec<BigRational>> {
                    p.vertices()
                        .iter()
                        .enumerate()
                        .map(|(k, v)| (*v, (0..n).map(|i| q(f(k, i))).collect()))
                        .collect()
                };
                let a = evaluate_exact(p, &to_point(&|k, i| d[k][i] as i64));
                let b = evaluate_exact(p, &to_point(&|k, i| signs[i] * d[k][perm[i]] as i64));
                if a != b {
                    passed = false;
                    worst = worst.max((&a - &b).abs().to_f64().unwrap_or(f64::INFINITY));
                }
            }
        }
        setting => {
            let f = FloatPoly::new(p);
            for t in 0..trials as u64 {
                let mut rng = trial_rng(seed, t);
                let d = sample_vectors(setting, nv, n, &mut rng);
                let qm = random_orthogonal(n, &mut rng);
                let rotated: Vec<Vec<f64>> = d
                    .iter()
                    .map(|v| (qm.clone() * nalgebra::DVector::from_vec(v.clone())).iter().copied().collect())
                    .collect();
                let a = f.eval(&d);
                let b = f.eval(&rotated);
                let dev = (a - b).abs() / a.abs().max(1.0);
                worst = worst.max(dev);
            }
            passed = worst < 1e-9;
        }
    }
    Ok(InvarianceReport { trials, max_deviation: worst, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_coefficients() {
        assert_eq!(hermite(0), vec![1]);
        assert_eq!(hermite(2), vec![-1, 0, 1]);
        assert_eq!(hermite(4), vec![3, 0, -6, 0, 1]);
    }

    #[test]
    fn spherical_fourth_moment() {
        let t = MomentTable::new(Setting::Spherical, 3).unwrap();
        assert_eq!(t.joint_moment(&[4, 0, 0]), BigRational::new(1.into(), 5.into()));
    }

    #[test]
    fn four_cycle_expectation() {
        let c4 = Graph::from_pairs(Setting::Gaussian, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        assert_eq!(exact_expectation_graph(&c4, 3).unwrap(), q(3));
    }

    #[test]
    fn boolean_double_edge_on_the_cube() {
        let g = Graph::from_pairs(Setting::Boolean, &[(1, 2), (1, 2)]).unwrap();
        let p = InvariantPoly::monomial(&g).eval_at(2).unwrap();
        assert_eq!(hypercube_expectation(&p, 2).unwrap(), q(2));
        assert_eq!(exact_expectation(&p, 2).unwrap(), q(2));
    }
}
