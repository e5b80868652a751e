//! Recovering a polynomial from prescribed inner products with the `p_G`.
//!
//! `Q[G, H] = E[p_G p_H]` vanishes unless `G` and `H` have the same degree
//! at every vertex, so `Q` splits into blocks that are inverted separately.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graphs::{Graph, Setting, Vertex};
use crate::linalg;
use crate::polyspace::{self, ConcretePoly};
use crate::symnum::RatFunc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramBlock {
    pub graphs: Vec<Graph>,
    /// `q[i][j] = E[p_{graphs[i]} p_{graphs[j]}]`.
    pub q: Vec<Vec<RatFunc>>,
}

impl GramBlock {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn eval_at(&self, n: i64) -> Result<linalg::Matrix> {
        self.q.iter().map(|row| row.iter().map(|x| x.eval_int(n)).collect()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierTarget {
    pub targets: Vec<(Graph, BigRational)>,
    pub n: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    /// Coefficient of each `p_G`.
    pub coefficients: Vec<(Graph, BigRational)>,
    /// The same polynomial in the monomial basis.
    pub poly: ConcretePoly,
    /// `Q c - f̂` per graph; all zero for an exact reconstruction.
    pub residual: Vec<(Graph, BigRational)>,
}

/// Groups the graphs by degree sequence and fills each block's Gram matrix.
pub fn build_blocks(graphs: &[Graph]) -> Result<Vec<GramBlock>> {
    let Some(first) = graphs.first() else {
        return Ok(Vec::new());
    };
    let mut groups: BTreeMap<Vec<usize>, Vec<Graph>> = BTreeMap::new();
    for g in graphs {
        if g.setting() != first.setting() {
            return Err(Error::SettingMismatch);
        }
        if g.vertices() != first.vertices() {
            return Err(Error::VertexSetMismatch);
        }
        let group = groups.entry(g.degrees()).or_default();
        if !group.contains(g) {
            group.push(g.clone());
        }
    }
    let mut blocks = Vec::new();
    for (_, members) in groups {
        let k = members.len();
        let mut q = alloc::vec![alloc::vec![RatFunc::zero(); k]; k];
        for i in 0..k {
            for j in i..k {
                let v = polyspace::inner_product(&members[i], &members[j])?;
                q[j][i] = v.clone();
                q[i][j] = v;
            }
        }
        blocks.push(GramBlock { graphs: members, q });
    }
    Ok(blocks)
}

/// Solves `Q(n) c = f̂` blockwise and expands `Σ c_G p_G`.
pub fn invert_and_reconstruct(blocks: &[GramBlock], target: &FourierTarget) -> Result<Reconstruction> {
    let Some(first) = blocks.iter().find_map(|b| b.graphs.first()) else {
        return Err(Error::Precondition("no blocks to invert".into()));
    };
    let setting: Setting = first.setting();
    let vertices: Vec<Vertex> = first.vertices().to_vec();
    for (g, _) in &target.targets {
        if !blocks.iter().any(|b| b.graphs.contains(g)) {
            return Err(Error::Precondition(format!("target graph {g:?} is in no block")));
        }
    }
    let mut coefficients = Vec::new();
    let mut residual = Vec::new();
    let mut poly = ConcretePoly::zero(setting, &vertices);
    for block in blocks {
        let rhs: Vec<BigRational> = block
            .graphs
            .iter()
            .map(|g| {
                target.targets.iter().find(|(t, _)| t == g).map_or_else(BigRational::zero, |(_, v)| v.clone())
            })
            .collect();
        if rhs.iter().all(Zero::is_zero) {
            continue;
        }
        let q = block.eval_at(target.n)?;
        let c = linalg::solve(&q, &rhs).map_err(|_| {
            Error::Singular(format!("block {:?} at n = {}", block.graphs, target.n))
        })?;
        let back = linalg::mat_vec(&q, &c);
        for (i, g) in block.graphs.iter().enumerate() {
            residual.push((g.clone(), &back[i] - &rhs[i]));
            if c[i].is_zero() {
                continue;
            }
            let p = polyspace::orthopoly(g)?.eval_at(target.n)?;
            for (e, coeff) in p.raw_terms() {
                poly.add_term(e.clone(), coeff * &c[i]);
            }
            coefficients.push((g.clone(), c[i].clone()));
        }
    }
    Ok(Reconstruction { coefficients, poly, residual })
}

/// `max |off-diagonal| / min |diagonal|` of `Q(n)` for each sampled `n`.
pub fn diagonality_report(block: &GramBlock, ns: &[i64]) -> Result<Vec<(i64, BigRational)>> {
    let mut out = Vec::new();
    for &n in ns {
        let q = block.eval_at(n)?;
        let mut off = BigRational::zero();
        let mut diag: Option<BigRational> = None;
        for (i, row) in q.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let a = x.abs();
                if i == j {
                    diag = Some(match diag {
                        Some(d) if d <= a => d,
                        _ => a,
                    });
                } else if a > off {
                    off = a;
                }
            }
        }
        let diag = diag.unwrap_or_else(BigRational::zero);
        if diag.is_zero() {
            return Err(Error::Singular(format!("zero diagonal entry at n = {n}")));
        }
        out.push((n, off / diag));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn single_edge_gaussian() {
        let e = Graph::from_pairs(Setting::Gaussian, &[(1, 2)]).unwrap();
        let blocks = build_blocks(core::slice::from_ref(&e)).unwrap();
        let target = FourierTarget { targets: vec![(e.clone(), BigRational::from_integer(1.into()))], n: 7 };
        let r = invert_and_reconstruct(&blocks, &target).unwrap();
        assert_eq!(r.coefficients, vec![(e.clone(), BigRational::new(1.into(), 7.into()))]);
        assert!(r.residual.iter().all(|(_, x)| x.is_zero()));
        assert_eq!(diagonality_report(&blocks[0], &[10]).unwrap()[0].1, BigRational::zero());
    }

    #[test]
    fn blocks_split_by_degrees() {
        let vs = [1, 2, 3];
        let a = Graph::on_vertices(Setting::Gaussian, &vs, &[(1, 2)]).unwrap();
        let b = Graph::on_vertices(Setting::Gaussian, &vs, &[(1, 3)]).unwrap();
        assert_eq!(build_blocks(&[a, b]).unwrap().len(), 2);
    }
}
