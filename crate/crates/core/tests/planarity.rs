use std::collections::{BTreeMap, BTreeSet};

use orthograph_core::{Graph, Setting, Vertex};
use proptest::prelude::*;

/// Faces of the embedding given by `rot`, counted as orbits of darts.
fn faces(rot: &BTreeMap<Vertex, Vec<Vertex>>) -> usize {
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for (&u, nbrs) in rot {
        for &v in nbrs {
            if seen.contains(&(u, v)) {
                continue;
            }
            count += 1;
            let (mut a, mut b) = (u, v);
            while seen.insert((a, b)) {
                let around = &rot[&b];
                let i = around.iter().position(|&x| x == a).unwrap();
                let next = around[(i + 1) % around.len()];
                (a, b) = (b, next);
            }
        }
    }
    count
}

/// Tries every rotation system of one connected simple graph for
/// `V - E + F = 2`.
fn component_planar(adj: &BTreeMap<Vertex, Vec<Vertex>>) -> bool {
    let vs: Vec<Vertex> = adj.keys().copied().collect();
    let edges: usize = adj.values().map(Vec::len).sum::<usize>() / 2;
    let mut rot: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    fn rec(i: usize, vs: &[Vertex], adj: &BTreeMap<Vertex, Vec<Vertex>>, rot: &mut BTreeMap<Vertex, Vec<Vertex>>, target: usize) -> bool {
        if i == vs.len() {
            return faces(rot) == target;
        }
        let nbrs = &adj[&vs[i]];
        // Fix the first neighbor; permute the rest.
        let mut rest: Vec<Vertex> = nbrs[1..].to_vec();
        let mut found = false;
        permute(&mut rest, 0, &mut |p| {
            if found {
                return;
            }
            let mut order = vec![nbrs[0]];
            order.extend_from_slice(p);
            rot.insert(vs[i], order);
            found = rec(i + 1, vs, adj, rot, target);
        });
        found
    }
    rec(0, &vs, adj, &mut rot, 2 + edges - vs.len())
}

fn permute(xs: &mut Vec<Vertex>, k: usize, f: &mut dyn FnMut(&[Vertex])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

fn brute_planar(pairs: &[(Vertex, Vertex)]) -> bool {
    let simple: BTreeSet<(Vertex, Vertex)> =
        pairs.iter().filter(|(a, b)| a != b).map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(a, b) in &simple {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut left: BTreeSet<Vertex> = adj.keys().copied().collect();
    while let Some(&start) = left.iter().next() {
        let mut comp = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &adj[&v] {
                if comp.insert(w) {
                    stack.push(w);
                }
            }
        }
        let sub: BTreeMap<Vertex, Vec<Vertex>> = comp.iter().map(|v| (*v, adj[v].clone())).collect();
        if !component_planar(&sub) {
            return false;
        }
        left = &left - &comp;
    }
    true
}

fn graph(pairs: &[(Vertex, Vertex)]) -> Graph {
    Graph::on_vertices(Setting::Spherical, &[1, 2, 3, 4, 5, 6], pairs).unwrap()
}

#[test]
fn kuratowski_graphs() {
    let k5: Vec<_> = (1..=5).flat_map(|a| (a + 1..=5).map(move |b| (a, b))).collect();
    let k33: Vec<_> = [1, 2, 3].iter().flat_map(|&a| [4, 5, 6].map(|b| (a, b))).collect();
    assert!(!brute_planar(&k5));
    assert!(!brute_planar(&k33));
    assert!(!graph(&k5).is_planar().unwrap());
    assert!(!graph(&k33).is_planar().unwrap());
    let k4: Vec<_> = (1..=4).flat_map(|a| (a + 1..=4).map(move |b| (a, b))).collect();
    assert!(brute_planar(&k4));
    assert!(graph(&k4).is_planar().unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn planarity_matches_rotation_systems(pairs in prop::collection::vec((1u32..7, 1u32..7), 0..11)) {
        let pairs: Vec<(Vertex, Vertex)> = pairs.into_iter().filter(|(a, b)| a != b).collect();
        prop_assert_eq!(graph(&pairs).is_planar().unwrap(), brute_planar(&pairs));
    }
}
