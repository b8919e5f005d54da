//! Random factorizable graphs: a perfect matching is planted first and
//! further edges are drawn uniformly among the remaining vertex pairs.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{normalize, Edge, Graph};

fn planted_matching<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Edge> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order.chunks(2).map(|p| normalize(p[0], p[1])).collect()
}

/// Adds uniformly drawn pairs from `candidates` (not yet in `edges`) until
/// `edges` holds `target` edges.
fn fill<R: Rng + ?Sized>(
    edges: &mut Vec<Edge>,
    target: usize,
    candidates: impl Fn(&mut R) -> Edge,
    pool: usize,
    rng: &mut R,
) -> Result<()> {
    if target > pool {
        return Err(Error::InvalidParameters(format!(
            "{target} edges requested but only {pool} vertex pairs are available"
        )));
    }
    let mut present: HashSet<Edge> = edges.iter().copied().collect();
    while edges.len() < target {
        let e = candidates(rng);
        if present.insert(e) {
            edges.push(e);
        }
    }
    Ok(())
}

/// A factorizable graph on `n` vertices with exactly `m` edges.
pub fn random_factorizable<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    if n % 2 == 1 {
        return Err(Error::InvalidParameters(format!("vertex count {n} is odd")));
    }
    if m < n / 2 {
        return Err(Error::InvalidParameters(format!(
            "{m} edges cannot hold a perfect matching on {n} vertices"
        )));
    }
    let mut edges = planted_matching(n, rng);
    let pool = n * n.saturating_sub(1) / 2;
    if m * 2 > pool {
        // Dense request: pick from the explicit list of non-edges.
        let present: HashSet<Edge> = edges.iter().copied().collect();
        let mut rest: Vec<Edge> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|e| !present.contains(e))
            .collect();
        if m > pool {
            return Err(Error::InvalidParameters(format!(
                "{m} edges requested but only {pool} vertex pairs are available"
            )));
        }
        rest.shuffle(rng);
        edges.extend(rest.into_iter().take(m - n / 2));
    } else {
        fill(
            &mut edges,
            m,
            |rng: &mut R| loop {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                if u != v {
                    return normalize(u, v);
                }
            },
            pool,
            rng,
        )?;
    }
    Graph::new(n, &edges)
}

/// Like [`random_factorizable`], resampled until connected.
pub fn random_connected_factorizable<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    rng: &mut R,
) -> Result<Graph> {
    if n > 1 && m + 1 < n {
        return Err(Error::InvalidParameters(format!(
            "{m} edges cannot connect {n} vertices"
        )));
    }
    loop {
        let g = random_factorizable(n, m, rng)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
}

/// A bipartite factorizable graph with sides `0..half` and `half..2*half`,
/// the planted matching pairing `i` with `half + i`, and `extra` further
/// edges across.
pub fn random_bipartite_factorizable<R: Rng + ?Sized>(
    half: usize,
    extra: usize,
    rng: &mut R,
) -> Result<Graph> {
    let mut right: Vec<usize> = (half..2 * half).collect();
    right.shuffle(rng);
    let mut edges: Vec<Edge> = (0..half).map(|i| (i, right[i])).collect();
    fill(
        &mut edges,
        half + extra,
        |rng: &mut R| (rng.gen_range(0..half), half + rng.gen_range(0..half)),
        half * half,
        rng,
    )?;
    Graph::new(2 * half, &edges)
}
