//! Allowed edges and factor-components of a factorizable graph.

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Matching};
use crate::matching::saturated_reach_mask;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorDecomposition {
    allowed: Vec<Edge>,
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    matching: Matching,
}

impl FactorDecomposition {
    /// Edges lying in at least one perfect matching, ascending.
    pub fn allowed(&self) -> &[Edge] {
        &self.allowed
    }

    /// Factor-components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component(&self, index: usize) -> Result<&[usize]> {
        self.components
            .get(index)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange {
                index,
                len: self.components.len(),
            })
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn component_map(&self) -> &[usize] {
        &self.component_of
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_elementary(&self) -> bool {
        self.components.len() == 1
    }

    /// Whether `set` is a union of whole factor-components.
    ///
    /// Checked two ways that must agree: by counting members per component,
    /// and by the absence of allowed edges leaving `set` (the allowed edges
    /// being the union of all perfect matchings).
    pub fn is_separating(&self, set: &[usize]) -> bool {
        let by_count = self.separating_by_components(set);
        debug_assert_eq!(by_count, self.separating_by_cut(set));
        by_count
    }

    pub(crate) fn separating_by_components(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.component_of.len()];
        for &v in set {
            inside[v] = true;
        }
        self.components
            .iter()
            .all(|c| c.iter().all(|&v| inside[v]) || c.iter().all(|&v| !inside[v]))
    }

    pub(crate) fn separating_by_cut(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.component_of.len()];
        for &v in set {
            inside[v] = true;
        }
        self.allowed.iter().all(|&(u, v)| inside[u] == inside[v])
    }

    /// Checks that this decomposition was computed on `g`.
    pub(crate) fn check_against(&self, g: &Graph) -> Result<()> {
        if self.component_of.len() != g.n() {
            return Err(Error::InconsistentDecomposition(format!(
                "decomposition covers {} vertices, graph has {}",
                self.component_of.len(),
                g.n()
            )));
        }
        if self.matching.validate(g).is_err() || !self.matching.is_perfect() {
            return Err(Error::InconsistentDecomposition(
                "stored matching is not a perfect matching of the graph".into(),
            ));
        }
        Ok(())
    }
}

/// Computes all allowed edges and the factor-components of `g` from one
/// perfect matching `m`.
pub fn decompose(g: &Graph, m: &Matching) -> Result<FactorDecomposition> {
    m.require_perfect(g)?;
    let n = g.n();
    let mut allowed = Vec::new();
    for u in 0..n {
        // Matched edges are allowed; other edges uv need a saturated u-v path.
        let needs_search = g
            .neighbors(u)
            .iter()
            .any(|&v| v > u && m.mate(u) != Some(v));
        let reach = needs_search.then(|| saturated_reach_mask(g, m.mates(), u));
        for &v in g.neighbors(u) {
            if v > u && (m.mate(u) == Some(v) || reach.as_ref().is_some_and(|r| r[v])) {
                allowed.push((u, v));
            }
        }
    }
    let allowed_graph = Graph::new(n, &allowed).expect("allowed edges are edges of g");
    let components = allowed_graph.connected_components();
    let mut component_of = vec![0; n];
    for (i, c) in components.iter().enumerate() {
        for &v in c {
            component_of[v] = i;
        }
    }
    Ok(FactorDecomposition {
        allowed,
        components,
        component_of,
        matching: m.clone(),
    })
}
