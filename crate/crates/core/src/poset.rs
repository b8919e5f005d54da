//! The partial order on factor-components.
//!
//! For each component `H` the graph `G/H` carries the near-perfect matching
//! induced by `M`, exposing only the contracted vertex `h`. The root blossom
//! of the maximal blossom tree grown from `h` meets every non-refinable
//! upper bound of `H` and nothing outside the upper bounds, so arcs from `H`
//! to every component met by that blossom generate the order under
//! reflexive-transitive closure.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::decomposition::{decompose, FactorDecomposition};
use crate::error::{Error, Result};
use crate::graph::{normalize, Edge, Graph, Matching};
use crate::matching::{build_max_sbt, saturated_reach_mask};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPoset {
    arcs: Vec<(usize, usize)>,
    /// `leq[a][b]` iff component `a` lies below `b`.
    leq: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
}

impl ComponentPoset {
    /// Builds the order generated by `arcs` on `k` elements.
    pub fn from_arcs(k: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        for &(a, b) in arcs {
            for x in [a, b] {
                if x >= k {
                    return Err(Error::IndexOutOfRange { index: x, len: k });
                }
            }
        }
        let mut arcs: Vec<(usize, usize)> = arcs.iter().copied().filter(|(a, b)| a != b).collect();
        arcs.sort_unstable();
        arcs.dedup();

        let mut out: Vec<Vec<usize>> = vec![Vec::new(); k];
        for &(a, b) in &arcs {
            out[a].push(b);
        }
        let mut leq = Vec::with_capacity(k);
        let mut queue = VecDeque::new();
        for s in 0..k {
            let mut seen = FixedBitSet::with_capacity(k);
            seen.insert(s);
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &y in &out[x] {
                    if !seen.put(y) {
                        queue.push_back(y);
                    }
                }
            }
            leq.push(seen);
        }

        // a -> b covers iff b is strictly above a and not strictly above any
        // c strictly above a.
        let mut covers = Vec::new();
        for a in 0..k {
            let mut strict = leq[a].clone();
            strict.set(a, false);
            let mut implied = FixedBitSet::with_capacity(k);
            for c in strict.ones() {
                let mut above = leq[c].clone();
                above.set(c, false);
                implied.union_with(&above);
            }
            strict.difference_with(&implied);
            covers.extend(strict.ones().map(|b| (a, b)));
        }
        Ok(ComponentPoset { arcs, leq, covers })
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    /// Arcs emitted by the blossom-tree procedure, self-arcs removed.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    fn check(&self, index: usize) -> Result<()> {
        if index < self.leq.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.leq.len(),
            })
        }
    }

    pub fn is_leq(&self, a: usize, b: usize) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.leq[a].contains(b))
    }

    /// Components above `h`, ascending; `h` itself is omitted when `strict`.
    pub fn upper_bounds(&self, h: usize, strict: bool) -> Result<Vec<usize>> {
        self.check(h)?;
        Ok(self.leq[h]
            .ones()
            .filter(|&b| !(strict && b == h))
            .collect())
    }

    /// Covering pairs `(a, b)` of the strict order, ascending.
    pub fn covering_pairs(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Strictly related pairs `(a, b)`, ascending.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| {
                self.leq[a]
                    .ones()
                    .filter(move |&b| b != a)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    pub fn is_minimal(&self, h: usize) -> Result<bool> {
        self.check(h)?;
        Ok((0..self.len()).all(|c| c == h || !self.leq[c].contains(h)))
    }

    /// The order as a dense boolean matrix.
    pub fn matrix(&self) -> Vec<Vec<bool>> {
        let k = self.len();
        self.leq
            .iter()
            .map(|row| (0..k).map(|b| row.contains(b)).collect())
            .collect()
    }
}

/// Arcs `(H, I)` for every component `I != H` met by the root blossom of the
/// maximal blossom tree of `G/H` rooted at the contracted vertex.
fn arcs_from(g: &Graph, m: &Matching, d: &FactorDecomposition, h: usize) -> Result<Vec<usize>> {
    let comp = &d.components()[h];
    let contracted = g.contract(comp)?;
    let qm = contracted.project_matching(m)?;
    let tree = build_max_sbt(&contracted.quotient, &qm, contracted.contracted)?;
    let mut targets: Vec<usize> = tree
        .root_blossom
        .iter()
        .filter(|&&q| q != contracted.contracted)
        .map(|&q| d.component_of(contracted.contracted_sets[q][0]))
        .filter(|&i| i != h)
        .collect();
    targets.sort_unstable();
    targets.dedup();
    Ok(targets)
}

pub fn build_poset(g: &Graph, m: &Matching, d: &FactorDecomposition) -> Result<ComponentPoset> {
    m.require_perfect(g)?;
    d.check_against(g)?;
    let mut arcs = Vec::new();
    for h in 0..d.len() {
        arcs.extend(arcs_from(g, m, d, h)?.into_iter().map(|i| (h, i)));
    }
    ComponentPoset::from_arcs(d.len(), &arcs)
}

/// Edges added by [`augment_to_order`] and the resulting graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation {
    pub edges: Vec<Edge>,
    pub graph: Graph,
}

/// Whether `g` (a supergraph carrying the same perfect matching) keeps the
/// factor-components of `d` and puts `lower` below `upper`.
fn establishes_order(
    g: &Graph,
    m: &Matching,
    d: &FactorDecomposition,
    lower: usize,
    upper: usize,
) -> Result<bool> {
    let nd = decompose(g, m)?;
    if nd.components() != d.components() {
        return Ok(false);
    }
    build_poset(g, m, &nd)?.is_leq(lower, upper)
}

/// Adds at most two non-edges between a minimal component `g1` and a
/// component `g2` not above it so that the factor-components survive and
/// `g1` ends up below `g2`.
///
/// Candidates come from the constructive argument first: with an edge `xy`
/// across, the edge `xw` for some `w` saturated-reachable from `y` inside
/// `g2`; without one, a first edge `xy` that keeps the components followed
/// by the same step. Exhaustive search over pairs of cross non-edges runs
/// last.
pub fn augment_to_order(
    g: &Graph,
    m: &Matching,
    d: &FactorDecomposition,
    p: &ComponentPoset,
    g1: usize,
    g2: usize,
) -> Result<Augmentation> {
    m.require_perfect(g)?;
    d.check_against(g)?;
    if p.len() != d.len() {
        return Err(Error::InconsistentDecomposition(
            "poset and decomposition disagree on the number of components".into(),
        ));
    }
    if d.len() < 2 {
        return Err(Error::PreconditionViolated(
            "graph has a single factor-component".into(),
        ));
    }
    p.check(g1)?;
    p.check(g2)?;
    if g1 == g2 {
        return Err(Error::PreconditionViolated("g1 and g2 coincide".into()));
    }
    if !p.is_minimal(g1)? {
        return Err(Error::PreconditionViolated(format!(
            "component {g1} is not minimal"
        )));
    }
    if p.is_leq(g1, g2)? {
        return Err(Error::PreconditionViolated(format!(
            "component {g1} already lies below {g2}"
        )));
    }

    let (c1, c2) = (d.component(g1)?, d.component(g2)?);
    let cross_edges: Vec<Edge> = c1
        .iter()
        .flat_map(|&x| c2.iter().map(move |&y| normalize(x, y)))
        .collect();

    // With an existing cross edge xy, any w in g2 saturated-reachable from
    // y gives the completing edge xw.
    let complete = |host: &Graph, base: &[Edge]| -> Result<Option<Augmentation>> {
        for &x in c1 {
            for &y in host.neighbors(x) {
                if d.component_of(y) != g2 {
                    continue;
                }
                let reach = saturated_reach_mask(host, m.mates(), y);
                for &w in c2 {
                    if !reach[w] || host.has_edge(x, w) {
                        continue;
                    }
                    let mut edges = base.to_vec();
                    edges.push(normalize(x, w));
                    let candidate = g.with_edges(&edges)?;
                    if establishes_order(&candidate, m, d, g1, g2)? {
                        return Ok(Some(Augmentation {
                            edges,
                            graph: candidate,
                        }));
                    }
                }
            }
        }
        Ok(None)
    };

    if cross_edges.iter().any(|&(u, v)| g.has_edge(u, v)) {
        if let Some(found) = complete(g, &[])? {
            return Ok(found);
        }
    } else {
        for &e in &cross_edges {
            let host = g.with_edges(&[e])?;
            if decompose(&host, m)?.components() != d.components() {
                continue;
            }
            if establishes_order(&host, m, d, g1, g2)? {
                return Ok(Augmentation {
                    edges: vec![e],
                    graph: host,
                });
            }
            if let Some(found) = complete(&host, &[e])? {
                return Ok(found);
            }
        }
    }

    let missing: Vec<Edge> = cross_edges
        .into_iter()
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    for (i, &e) in missing.iter().enumerate() {
        for &f in &missing[i..] {
            let edges = if e == f { vec![e] } else { vec![e, f] };
            let candidate = g.with_edges(&edges)?;
            if establishes_order(&candidate, m, d, g1, g2)? {
                return Ok(Augmentation {
                    edges,
                    graph: candidate,
                });
            }
        }
    }
    Err(Error::NotFound)
}
