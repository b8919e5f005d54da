#![allow(dead_code)]

use matchpose_core::{classify_alternating_path, AltPathKind, Graph, Matching};

/// Every labelled simple graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::new(n, &edges).unwrap()
    })
}

/// Every simple path starting at `u` (including the trivial one).
pub fn simple_paths_from(g: &Graph, u: usize) -> Vec<Vec<usize>> {
    fn go(g: &Graph, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
        out.push(path.clone());
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if !on[w] {
                on[w] = true;
                path.push(w);
                go(g, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; g.n()];
    on[u] = true;
    go(g, &mut vec![u], &mut on, &mut out);
    out
}

/// Brute-force path classification from `u`: (vertices v != u with a
/// saturated u-v path, vertices v with a balanced path from v to u,
/// vertices v with a balanced path from u to v).
pub fn path_sets(g: &Graph, m: &Matching, u: usize) -> (Vec<bool>, Vec<bool>, Vec<bool>) {
    let n = g.n();
    let (mut sat, mut bal_to_u, mut bal_from_u) = (vec![false; n], vec![false; n], vec![false; n]);
    for p in simple_paths_from(g, u) {
        let v = *p.last().unwrap();
        match classify_alternating_path(g, m, &p).unwrap() {
            Some(AltPathKind::Saturated) => sat[v] = true,
            Some(AltPathKind::Balanced { source }) => {
                if source == v {
                    bal_to_u[v] = true;
                }
                if source == u {
                    bal_from_u[v] = true;
                }
            }
            _ => {}
        }
    }
    (sat, bal_to_u, bal_from_u)
}

pub fn to_set(mask: &[bool]) -> Vec<usize> {
    (0..mask.len()).filter(|&v| mask[v]).collect()
}
