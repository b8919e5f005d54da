//! Simple undirected graphs on dense vertex ids, matchings, contraction and
//! the alternating-path vocabulary shared by the rest of the crate.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// An undirected edge, always stored with the smaller endpoint first.
pub type Edge = (usize, usize);

#[inline]
pub fn normalize(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected graph on the vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, repeated edges
    /// and out-of-range endpoints.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            edges.push(normalize(u, v));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_edges(n, edges))
    }

    /// `edges` must be normalized, sorted and free of duplicates.
    fn from_sorted_edges(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order, smaller endpoint first.
    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` in ascending order.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    fn check_set(&self, set: &[usize]) -> Result<()> {
        set.iter().try_for_each(|&v| self.check_vertex(v))
    }

    /// Returns a copy of this graph with `extra` edges added.
    pub fn with_edges(&self, extra: &[Edge]) -> Result<Graph> {
        let mut all = self.edges.clone();
        all.extend_from_slice(extra);
        Graph::new(self.n, &all)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// Subgraph induced by `set`. The second value maps new ids to old ones;
    /// new ids follow the ascending order of the old ids.
    pub fn induced_subgraph(&self, set: &[usize]) -> Result<(Graph, Vec<usize>)> {
        self.check_set(set)?;
        let keep: BTreeSet<usize> = set.iter().copied().collect();
        let old_ids: Vec<usize> = keep.into_iter().collect();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|&&(u, v)| new_id[u] != usize::MAX && new_id[v] != usize::MAX)
            .map(|&(u, v)| (new_id[u], new_id[v]))
            .collect();
        // Monotone relabeling keeps the edge list sorted.
        Ok((Graph::from_sorted_edges(old_ids.len(), edges), old_ids))
    }

    /// `G - X`.
    pub fn remove_vertices(&self, set: &[usize]) -> Result<(Graph, Vec<usize>)> {
        self.check_set(set)?;
        let mut drop = vec![false; self.n];
        for &v in set {
            drop[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !drop[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// Contracts `set` to a single vertex.
    pub fn contract(&self, set: &[usize]) -> Result<ContractedGraph<'_>> {
        ContractedGraph::new(self, set)
    }

    /// Γ(X): vertices outside `set` adjacent to some vertex of `set`.
    pub fn neighbors_of_set(&self, set: &[usize]) -> Result<Vec<usize>> {
        self.check_set(set)?;
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        let mut hit = vec![false; self.n];
        for &v in set {
            for &w in &self.adj[v] {
                if !inside[w] {
                    hit[w] = true;
                }
            }
        }
        Ok((0..self.n).filter(|&v| hit[v]).collect())
    }

    /// δ(X): edges with exactly one end in `set`.
    pub fn cut_edges(&self, set: &[usize]) -> Result<Vec<Edge>> {
        self.check_set(set)?;
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        Ok(self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| inside[u] != inside[v])
            .collect())
    }

    /// Whether the graph is bipartite.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        stack.push(w);
                    } else if color[w] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A matching stored as a mate array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            mate: vec![None; n],
        }
    }

    /// Builds a matching of `g` from its edges.
    pub fn from_edges(g: &Graph, edges: &[(usize, usize)]) -> Result<Self> {
        let mut mate = vec![None; g.n()];
        for &(u, v) in edges {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidMatching(format!("{u}-{v} is not an edge")));
            }
            if mate[u].is_some() || mate[v].is_some() {
                return Err(Error::InvalidMatching(format!(
                    "edge {u}-{v} shares an endpoint with another matched edge"
                )));
            }
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        Ok(Matching { mate })
    }

    /// Wraps a mate array; the caller guarantees it is an involution.
    pub(crate) fn from_mates(mate: Vec<Option<usize>>) -> Self {
        debug_assert!(mate
            .iter()
            .enumerate()
            .all(|(v, m)| m.is_none_or(|w| mate[w] == Some(v))));
        Matching { mate }
    }

    /// Checks the matching against `g`: same vertex count and every matched
    /// pair an edge of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.mate.len() != g.n() {
            return Err(Error::InvalidMatching(format!(
                "matching covers {} vertices, graph has {}",
                self.mate.len(),
                g.n()
            )));
        }
        for (v, m) in self.mate.iter().enumerate() {
            if let Some(w) = *m {
                if self.mate.get(w).copied().flatten() != Some(v) {
                    return Err(Error::InvalidMatching(format!(
                        "mate of {v} is not symmetric"
                    )));
                }
                if !g.has_edge(v, w) {
                    return Err(Error::InvalidMatching(format!("{v}-{w} is not an edge")));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    #[inline]
    pub fn mates(&self) -> &[Option<usize>] {
        &self.mate
    }

    #[inline]
    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.mate.get(u).copied().flatten() == Some(v)
    }

    pub fn n(&self) -> usize {
        self.mate.len()
    }

    /// Matched edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(v, m)| m.filter(|&w| v < w).map(|w| (v, w)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.mate.iter().filter(|m| m.is_some()).count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn exposed(&self) -> Vec<usize> {
        (0..self.mate.len())
            .filter(|&v| self.mate[v].is_none())
            .collect()
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(Option::is_some)
    }

    pub fn is_near_perfect(&self) -> bool {
        self.mate.iter().filter(|m| m.is_none()).count() == 1
    }

    pub(crate) fn require_perfect(&self, g: &Graph) -> Result<()> {
        self.validate(g)?;
        if self.is_perfect() {
            Ok(())
        } else {
            Err(Error::NotPerfect)
        }
    }
}

/// `G/X`: the graph obtained by collapsing a vertex set into one vertex.
///
/// Quotient vertices are numbered in ascending order of the smallest base
/// vertex they contain, so the contracted vertex takes the position of
/// `min(X)`. Parallel edges are merged and loops dropped.
#[derive(Debug, Clone)]
pub struct ContractedGraph<'g> {
    pub base: &'g Graph,
    pub quotient: Graph,
    /// Base vertex -> quotient vertex.
    pub vertex_map: Vec<usize>,
    /// Quotient vertex -> base vertices (sorted).
    pub contracted_sets: Vec<Vec<usize>>,
    /// The quotient vertex standing for the contracted set.
    pub contracted: usize,
}

impl<'g> ContractedGraph<'g> {
    pub fn new(base: &'g Graph, set: &[usize]) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        base.check_set(set)?;
        let mut inside = vec![false; base.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut vertex_map = vec![usize::MAX; base.n()];
        let mut contracted_sets: Vec<Vec<usize>> = Vec::new();
        let mut contracted = usize::MAX;
        for v in 0..base.n() {
            if inside[v] {
                if contracted == usize::MAX {
                    contracted = contracted_sets.len();
                    contracted_sets.push(Vec::new());
                }
                vertex_map[v] = contracted;
                contracted_sets[contracted].push(v);
            } else {
                vertex_map[v] = contracted_sets.len();
                contracted_sets.push(vec![v]);
            }
        }
        let mut edges: Vec<Edge> = base
            .edges()
            .iter()
            .filter_map(|&(u, v)| {
                let (a, b) = (vertex_map[u], vertex_map[v]);
                (a != b).then(|| normalize(a, b))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let quotient = Graph::from_sorted_edges(contracted_sets.len(), edges);
        Ok(ContractedGraph {
            base,
            quotient,
            vertex_map,
            contracted_sets,
            contracted,
        })
    }

    /// Image of a base matching in the quotient. Matched edges with both
    /// ends inside the contracted set disappear; the caller is expected to
    /// pass a matching with no matched edge leaving the set.
    pub fn project_matching(&self, m: &Matching) -> Result<Matching> {
        let mut mate = vec![None; self.quotient.n()];
        for (u, v) in m.edges() {
            let (a, b) = (self.vertex_map[u], self.vertex_map[v]);
            if a == b {
                continue;
            }
            if mate[a].is_some() || mate[b].is_some() {
                return Err(Error::InvalidMatching(
                    "two matched edges meet at the contracted vertex".into(),
                ));
            }
            mate[a] = Some(b);
            mate[b] = Some(a);
        }
        Ok(Matching::from_mates(mate))
    }
}

/// Kinds of alternating paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AltPathKind {
    /// Odd length, both terminal edges matched.
    Saturated,
    /// Even length, starting with a matched edge when traced from `source`.
    /// The single-vertex path is balanced from its only vertex.
    Balanced { source: usize },
    /// Odd length, both terminal edges unmatched.
    Exposed,
}

/// Classifies `path` (a vertex sequence) with respect to `m`. Returns
/// `Ok(None)` when the path is not `m`-alternating.
pub fn classify_alternating_path(
    g: &Graph,
    m: &Matching,
    path: &[usize],
) -> Result<Option<AltPathKind>> {
    let Some(&first) = path.first() else {
        return Err(Error::NotAPath("empty vertex sequence".into()));
    };
    let mut seen = BTreeSet::new();
    for &v in path {
        g.check_vertex(v)?;
        if !seen.insert(v) {
            return Err(Error::NotAPath(format!("vertex {v} repeats")));
        }
    }
    let mut matched = Vec::with_capacity(path.len() - 1);
    for w in path.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(Error::NotAPath(format!("{}-{} is not an edge", w[0], w[1])));
        }
        matched.push(m.contains(w[0], w[1]));
    }
    if matched.is_empty() {
        return Ok(Some(AltPathKind::Balanced { source: first }));
    }
    // Matched edges never touch each other; alternation fails only on two
    // consecutive unmatched edges.
    if matched.windows(2).any(|w| !w[0] && !w[1]) {
        return Ok(None);
    }
    let (head, tail) = (matched[0], matched[matched.len() - 1]);
    let kind = if matched.len() % 2 == 1 {
        if head {
            AltPathKind::Saturated
        } else {
            AltPathKind::Exposed
        }
    } else if head {
        AltPathKind::Balanced { source: first }
    } else {
        debug_assert!(tail);
        AltPathKind::Balanced {
            source: path[path.len() - 1],
        }
    };
    Ok(Some(kind))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e1() -> Graph {
        Graph::new(4, &[(0, 1), (2, 3), (0, 2), (0, 3)]).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn build_small_graphs() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.m(), 1);
        let g = e1();
        assert_eq!(g.m(), 4);
        assert_eq!(g.neighbors(0), &[1, 2, 3]);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (0, 3), (2, 3)]);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(Graph::new(3, &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn induced_subgraphs() {
        let g = e1();
        let (h, map) = g.induced_subgraph(&[2, 3]).unwrap();
        assert_eq!(h, Graph::new(2, &[(0, 1)]).unwrap());
        assert_eq!(map, vec![2, 3]);
        let (same, _) = g.induced_subgraph(&[0, 1, 2, 3]).unwrap();
        assert_eq!(same, g);
        let (path, _) = cycle(6).induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(path, Graph::new(3, &[(0, 1), (1, 2)]).unwrap());
        assert!(g.induced_subgraph(&[4]).is_err());
    }

    #[test]
    fn contraction() {
        let g = e1();
        let c = g.contract(&[0, 1]).unwrap();
        assert_eq!(c.contracted, 0);
        assert_eq!(
            c.quotient,
            Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
        );

        let c = g.contract(&[2, 3]).unwrap();
        assert_eq!(c.contracted, 2);
        assert_eq!(c.vertex_map, vec![0, 1, 2, 2]);
        assert_eq!(c.quotient, Graph::new(3, &[(0, 1), (0, 2)]).unwrap());

        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        let c = k2.contract(&[0, 1]).unwrap();
        assert_eq!(c.quotient.n(), 1);
        assert_eq!(c.quotient.m(), 0);

        assert_eq!(g.contract(&[]).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn contraction_partitions_base_vertices() {
        let g = cycle(7);
        let c = g.contract(&[1, 3, 4]).unwrap();
        for (q, set) in c.contracted_sets.iter().enumerate() {
            for &v in set {
                assert_eq!(c.vertex_map[v], q);
            }
        }
        let total: usize = c.contracted_sets.iter().map(Vec::len).sum();
        assert_eq!(total, 7);
    }

    #[test]
    fn classify_paths() {
        let g = e1();
        let m = Matching::from_edges(&g, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            classify_alternating_path(&g, &m, &[0, 1]).unwrap(),
            Some(AltPathKind::Saturated)
        );
        assert_eq!(
            classify_alternating_path(&g, &m, &[2]).unwrap(),
            Some(AltPathKind::Balanced { source: 2 })
        );
        assert_eq!(
            classify_alternating_path(&g, &m, &[1, 0, 2]).unwrap(),
            Some(AltPathKind::Balanced { source: 1 })
        );
        assert_eq!(
            classify_alternating_path(&g, &m, &[2, 0, 1]).unwrap(),
            Some(AltPathKind::Balanced { source: 1 })
        );
        assert_eq!(
            classify_alternating_path(&g, &m, &[0, 2]).unwrap(),
            Some(AltPathKind::Exposed)
        );
        assert_eq!(classify_alternating_path(&g, &m, &[3, 0, 2]).unwrap(), None);
        assert!(matches!(
            classify_alternating_path(&g, &m, &[1, 2]),
            Err(Error::NotAPath(_))
        ));
        assert!(matches!(
            classify_alternating_path(&g, &m, &[0, 2, 0]),
            Err(Error::NotAPath(_))
        ));

        let c4 = cycle(4);
        let m = Matching::from_edges(&c4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            classify_alternating_path(&c4, &m, &[0, 1, 2, 3]).unwrap(),
            Some(AltPathKind::Saturated)
        );
    }

    #[test]
    fn neighbor_sets() {
        let g = e1();
        assert_eq!(g.neighbors_of_set(&[2, 3]).unwrap(), vec![0]);
        assert_eq!(
            g.neighbors_of_set(&[0, 1, 2, 3]).unwrap(),
            Vec::<usize>::new()
        );
        assert_eq!(cycle(6).neighbors_of_set(&[0]).unwrap(), vec![1, 5]);
    }

    #[test]
    fn matching_flavors() {
        let g = e1();
        let m = Matching::from_edges(&g, &[(0, 1), (2, 3)]).unwrap();
        assert!(m.is_perfect());
        assert_eq!(m.edges(), vec![(0, 1), (2, 3)]);
        let near = Matching::from_edges(&Graph::new(3, &[(1, 2)]).unwrap(), &[(1, 2)]).unwrap();
        assert!(near.is_near_perfect());
        assert_eq!(near.exposed(), vec![0]);
        assert!(Matching::from_edges(&g, &[(0, 1), (0, 2)]).is_err());
        assert!(Matching::from_edges(&g, &[(1, 2)]).is_err());
    }
}
