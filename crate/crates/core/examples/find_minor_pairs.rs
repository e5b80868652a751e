use std::collections::BTreeSet;

use orthograph_core::graphs::Graph;
use orthograph_core::polyspace::{inner_product_within, Budget};
use orthograph_core::symnum::Style;
use orthograph_core::{Edge, Setting};

fn multigraphs(deg: &mut Vec<usize>, edges: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
    let Some(u) = deg.iter().position(|&d| d > 0) else {
        out.push(edges.clone());
        return;
    };
    for v in u + 1..deg.len() {
        if deg[v] == 0 {
            continue;
        }
        if let Some(&(a, b)) = edges.last() {
            if a as usize == u + 1 && (v as u32 + 1) < b {
                continue;
            }
        }
        deg[u] -= 1;
        deg[v] -= 1;
        edges.push((u as u32 + 1, v as u32 + 1));
        multigraphs(deg, edges, out);
        edges.pop();
        deg[u] += 1;
        deg[v] += 1;
    }
}

fn main() {
    let targets = [
        "-16(n-1)(n-2)(n-4)/(n^11(n+2)^5)",
        "-16(n-1)(n-2)^2(n-4)/(n^11(n+2)^6)",
    ];
    let mut seqs = Vec::new();
    for k4 in 5..=7usize {
        for k2 in 0..=4usize {
            if 2 * k4 + k2 <= 14 {
                let mut d = vec![4; k4];
                d.extend(vec![2; k2]);
                seqs.push(d);
            }
        }
    }
    for degs in seqs {
        let vs: Vec<u32> = (1..=degs.len() as u32).collect();
        let mut raw = Vec::new();
        multigraphs(&mut degs.clone(), &mut Vec::new(), &mut raw);
        let mut seen = BTreeSet::new();
        let mut pairs_seen = BTreeSet::new();
        let mut values = std::collections::BTreeMap::new();
        for edges in raw {
            let u = Graph::on_vertices(Setting::Spherical, &vs, &edges).unwrap();
            if !seen.insert(u.iso_key()) || u.is_planar().unwrap() {
                continue;
            }
            let m = edges.len();
            for mask in 0u32..(1 << m) {
                if mask.count_ones() as usize != m / 2 {
                    continue;
                }
                let ge: Vec<(u32, u32)> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
                let he: Vec<(u32, u32)> = (0..m).filter(|i| mask >> i & 1 == 0).map(|i| edges[i]).collect();
                let g = Graph::on_vertices(Setting::Spherical, &vs, &ge).unwrap();
                let h = Graph::on_vertices(Setting::Spherical, &vs, &he).unwrap();
                if !g.degree_equivalent(&h).unwrap() {
                    continue;
                }
                if !pairs_seen.insert(Graph::pair_iso_key(&g, &h, true).unwrap()) {
                    continue;
                }
                let v = inner_product_within(&g, &h, &Budget { max_edges: 7, max_union_edges: 14 }).unwrap().render(Style::Ascii);
                *values.entry(v.clone()).or_insert(0usize) += 1;
                if let Some(i) = targets.iter().position(|t| *t == v) {
                    let show = |x: &Graph| x.edges().iter().map(|e: &Edge| format!("{:?}", e.vertices())).collect::<Vec<_>>().join(",");
                    println!("target {i}: G={} H={}", show(&g), show(&h));
                }
            }
        }
        println!("degrees {degs:?}: {} nonplanar unions", seen.len());
        for (v, c) in values.iter().filter(|(v, _)| v.starts_with('-')) {
            println!("  {c} x {v}");
        }
    }
}
