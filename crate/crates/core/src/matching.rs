//! Edmonds' blossom search.
//!
//! A single alternating tree is grown from one exposed root. Blossoms are
//! shrunk with a union-find over vertices, so one full search costs
//! O(m α(n)). Augmenting paths are recovered from the tree-parent and
//! blossom-bridge records without ever expanding blossoms.
//!
//! On a near-perfect matching the search never augments, and its final
//! state is a maximal special blossom tree: the outer vertices are exactly
//! the vertices joined to the root by an even alternating path that starts
//! with a matched edge, and the blossom holding the root is the root
//! blossom.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{normalize, Edge, Graph, Matching};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    Free,
    Outer,
    Inner,
}

struct Search<'a> {
    g: &'a Graph,
    mate: &'a [Option<usize>],
    blocked: usize,
    root: usize,
    label: Vec<Label>,
    /// For inner vertices: the outer vertex that reached them.
    parent: Vec<usize>,
    /// For inner vertices that became outer inside a blossom: the
    /// non-tree edge that closed the blossom, near end first.
    bridge: Vec<(usize, usize)>,
    uf: Vec<usize>,
    /// Union-find representative -> base vertex of the blossom.
    base_of: Vec<usize>,
    mark: Vec<u32>,
    stamp: u32,
    queue: VecDeque<usize>,
}

enum Outcome {
    /// Augmenting edge from outer `v` to exposed free `w`.
    Augment(usize, usize),
    Exhausted,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, mate: &'a [Option<usize>], root: usize, blocked: usize) -> Self {
        let n = g.n();
        Search {
            g,
            mate,
            blocked,
            root,
            label: vec![Label::Free; n],
            parent: vec![NONE; n],
            bridge: vec![(NONE, NONE); n],
            uf: (0..n).collect(),
            base_of: (0..n).collect(),
            mark: vec![0; n],
            stamp: 0,
            queue: VecDeque::new(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.uf[x] != x {
            self.uf[x] = self.uf[self.uf[x]];
            x = self.uf[x];
        }
        x
    }

    #[inline]
    fn base(&mut self, v: usize) -> usize {
        let r = self.find(v);
        self.base_of[r]
    }

    fn union_into(&mut self, x: usize, base: usize) {
        let (a, b) = (self.find(x), self.find(base));
        if a != b {
            self.uf[a] = b;
            self.base_of[b] = base;
        }
    }

    fn run(&mut self) -> Outcome {
        self.label[self.root] = Label::Outer;
        self.queue.push_back(self.root);
        while let Some(v) = self.queue.pop_front() {
            let g = self.g;
            for &w in g.neighbors(v) {
                if w == self.blocked || self.mate[v] == Some(w) {
                    continue;
                }
                if self.base(v) == self.base(w) {
                    continue;
                }
                match self.label[w] {
                    Label::Free => match self.mate[w] {
                        None => return Outcome::Augment(v, w),
                        Some(x) => {
                            self.label[w] = Label::Inner;
                            self.parent[w] = v;
                            self.label[x] = Label::Outer;
                            self.queue.push_back(x);
                        }
                    },
                    Label::Outer => self.shrink(v, w),
                    Label::Inner => {}
                }
            }
        }
        Outcome::Exhausted
    }

    /// Base of the outer blossom above `b` in the tree, or `None` at the root.
    fn tree_step(&mut self, b: usize) -> Option<usize> {
        if b == self.root {
            return None;
        }
        let inner = self.mate[b].expect("non-root outer base is matched");
        let p = self.parent[inner];
        Some(self.base(p))
    }

    fn lca(&mut self, v: usize, w: usize) -> usize {
        self.stamp += 1;
        let stamp = self.stamp;
        let mut a = Some(self.base(v));
        let mut b = Some(self.base(w));
        loop {
            if let Some(x) = a {
                if self.mark[x] == stamp {
                    return x;
                }
                self.mark[x] = stamp;
                a = self.tree_step(x);
            }
            std::mem::swap(&mut a, &mut b);
        }
    }

    fn shrink(&mut self, v: usize, w: usize) {
        let top = self.lca(v, w);
        self.climb(v, w, top);
        self.climb(w, v, top);
    }

    /// Absorbs the tree path from `near`'s blossom up to `top` into the
    /// blossom based at `top`.
    fn climb(&mut self, near: usize, far: usize, top: usize) {
        let mut b = self.base(near);
        while b != top {
            let inner = self.mate[b].expect("non-root outer base is matched");
            let next = self.base(self.parent[inner]);
            self.label[inner] = Label::Outer;
            self.bridge[inner] = (near, far);
            self.queue.push_back(inner);
            self.union_into(b, top);
            self.union_into(inner, top);
            b = next;
        }
    }

    /// Appends the even alternating path from outer `x` up to `stop`
    /// (inclusive). The first edge out of `x` is matched unless `x == stop`.
    fn walk(&self, x: usize, stop: usize, out: &mut Vec<usize>) {
        out.push(x);
        if x == stop {
            return;
        }
        let y = self.mate[x].expect("outer vertex below the root is matched");
        if self.bridge[x].0 == NONE {
            out.push(y);
            self.walk(self.parent[y], stop, out);
        } else {
            let (near, far) = self.bridge[x];
            let mut seg = Vec::new();
            self.walk(near, y, &mut seg);
            debug_assert_eq!(seg.last(), Some(&y));
            out.extend(seg.into_iter().rev());
            self.walk(far, stop, out);
        }
    }

    fn augmenting_path(&self, v: usize, w: usize) -> Vec<usize> {
        let mut path = vec![w];
        self.walk(v, self.root, &mut path);
        path
    }
}

/// Result of [`maximum_matching`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingResult {
    pub matching: Matching,
    pub is_perfect: bool,
    pub exposed: Vec<usize>,
}

/// Maximum-cardinality matching: greedy start, then one blossom search per
/// remaining exposed vertex.
pub fn maximum_matching(g: &Graph) -> MatchingResult {
    let n = g.n();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    for v in 0..n {
        if mate[v].is_some() {
            continue;
        }
        if let Some(&w) = g.neighbors(v).iter().find(|&&w| mate[w].is_none()) {
            mate[v] = Some(w);
            mate[w] = Some(v);
        }
    }
    // A root with no augmenting path now never gets one later.
    for r in 0..n {
        if mate[r].is_some() {
            continue;
        }
        let path = {
            let mut s = Search::new(g, &mate, r, NONE);
            match s.run() {
                Outcome::Augment(v, w) => Some(s.augmenting_path(v, w)),
                Outcome::Exhausted => None,
            }
        };
        if let Some(path) = path {
            for pair in path.chunks(2) {
                mate[pair[0]] = Some(pair[1]);
                mate[pair[1]] = Some(pair[0]);
            }
        }
    }
    let matching = Matching::from_mates(mate);
    let exposed = matching.exposed();
    MatchingResult {
        is_perfect: exposed.is_empty(),
        exposed,
        matching,
    }
}

/// An arc of the shrunken tree: `inner` hangs below the outer blossom
/// `parent_blossom` and above `child_blossom` (blossoms named by base).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeArc {
    pub inner: usize,
    pub parent_blossom: usize,
    pub child_blossom: usize,
}

/// Maximal special blossom tree grown from the exposed vertex of a
/// near-perfect matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sbt {
    pub root: usize,
    /// Union of all outer blossoms, ascending.
    pub outer_vertices: Vec<usize>,
    /// The outer blossom containing the root, ascending.
    pub root_blossom: Vec<usize>,
    /// Outer vertex -> base vertex of its outer blossom.
    pub blossom_of: Vec<Option<usize>>,
    pub tree_arcs: Vec<TreeArc>,
}

impl Sbt {
    /// Outer blossoms as (base, sorted vertices), ordered by base.
    pub fn outer_blossoms(&self) -> Vec<(usize, Vec<usize>)> {
        let mut by_base: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, b) in self.blossom_of.iter().enumerate() {
            if let Some(b) = *b {
                by_base.entry(b).or_default().push(v);
            }
        }
        by_base.into_iter().collect()
    }
}

fn exhaust(g: &Graph, mate: &[Option<usize>], root: usize, blocked: usize) -> Sbt {
    let mut s = Search::new(g, mate, root, blocked);
    match s.run() {
        Outcome::Exhausted => {}
        Outcome::Augment(..) => unreachable!("search root is the only exposed vertex"),
    }
    let n = g.n();
    let mut blossom_of = vec![None; n];
    let mut outer_vertices = Vec::new();
    let mut root_blossom = Vec::new();
    for v in 0..n {
        if s.label[v] == Label::Outer {
            let b = s.base(v);
            blossom_of[v] = Some(b);
            outer_vertices.push(v);
            if b == root {
                root_blossom.push(v);
            }
        }
    }
    let mut tree_arcs = Vec::new();
    for v in 0..n {
        if s.label[v] == Label::Inner {
            let child = mate[v].expect("inner vertex is matched");
            let parent_blossom = s.base(s.parent[v]);
            let child_blossom = s.base(child);
            tree_arcs.push(TreeArc {
                inner: v,
                parent_blossom,
                child_blossom,
            });
        }
    }
    Sbt {
        root,
        outer_vertices,
        root_blossom,
        blossom_of,
        tree_arcs,
    }
}

/// Grows the maximal SBT of `g` rooted at the unique exposed vertex of `m`.
pub fn build_max_sbt(g: &Graph, m: &Matching, root: usize) -> Result<Sbt> {
    m.validate(g)?;
    if root >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: root,
            n: g.n(),
        });
    }
    if !m.is_near_perfect() {
        return Err(Error::NotNearPerfect);
    }
    if m.mate(root).is_some() {
        return Err(Error::RootNotExposed(root));
    }
    Ok(exhaust(g, m.mates(), root, NONE))
}

/// Vertices with an `m`-balanced path to `root`.
pub fn balanced_reachable(g: &Graph, m: &Matching, root: usize) -> Result<Vec<usize>> {
    Ok(build_max_sbt(g, m, root)?.outer_vertices)
}

/// `reach[v]` is true iff an `mate`-saturated path joins `u` and `v`.
/// `mate` must be perfect.
///
/// Such a path minus `u` is a balanced path from `v` to `u'` in `G - u`
/// under the matching without `uu'`, so one search rooted at `u'` with `u`
/// deleted answers the query.
pub(crate) fn saturated_reach_mask(g: &Graph, mate: &[Option<usize>], u: usize) -> Vec<bool> {
    let partner = mate[u].expect("perfect matching");
    let mut reduced = mate.to_vec();
    reduced[u] = None;
    reduced[partner] = None;
    let mut s = Search::new(g, &reduced, partner, u);
    match s.run() {
        Outcome::Exhausted => {}
        Outcome::Augment(..) => unreachable!("only the root is exposed in G - u"),
    }
    s.label.iter().map(|&l| l == Label::Outer).collect()
}

/// Vertices joined to `u` by an `m`-saturated path, ascending.
pub fn saturated_reachable(g: &Graph, m: &Matching, u: usize) -> Result<Vec<usize>> {
    m.require_perfect(g)?;
    if u >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: u,
            n: g.n(),
        });
    }
    let reach = saturated_reach_mask(g, m.mates(), u);
    Ok((0..g.n()).filter(|&v| reach[v]).collect())
}

/// Allowed edges at `u`: the matched edge plus every edge `uv` closing an
/// alternating circuit, i.e. with a saturated `u`-`v` path.
pub fn allowed_edges_at(g: &Graph, m: &Matching, u: usize) -> Result<Vec<Edge>> {
    m.require_perfect(g)?;
    if u >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: u,
            n: g.n(),
        });
    }
    let reach = saturated_reach_mask(g, m.mates(), u);
    let mut out: Vec<Edge> = g
        .neighbors(u)
        .iter()
        .filter(|&&v| m.mate(u) == Some(v) || reach[v])
        .map(|&v| normalize(u, v))
        .collect();
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        graph(n, &edges)
    }

    fn e1() -> Graph {
        graph(4, &[(0, 1), (2, 3), (0, 2), (0, 3)])
    }

    #[test]
    fn maximum_matching_examples() {
        let k2 = graph(2, &[(0, 1)]);
        let r = maximum_matching(&k2);
        assert!(r.is_perfect);
        assert_eq!(r.matching.edges(), vec![(0, 1)]);

        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let r = maximum_matching(&k3);
        assert!(!r.is_perfect);
        assert_eq!(r.matching.len(), 1);
        assert_eq!(r.exposed.len(), 1);

        let r = maximum_matching(&e1());
        assert!(r.is_perfect);
        assert_eq!(r.matching.edges(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn augments_through_a_blossom() {
        // Greedy matches 0-1 and 2-3 and leaves 4, 5 exposed; the only
        // augmenting path 5-1-0-2-3-4 runs through the triangle 0-1-2.
        let g = graph(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (1, 5)]);
        let r = maximum_matching(&g);
        assert!(r.is_perfect);
    }

    #[test]
    fn sbt_examples() {
        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let m = Matching::from_edges(&k3, &[(1, 2)]).unwrap();
        let t = build_max_sbt(&k3, &m, 0).unwrap();
        assert_eq!(t.root_blossom, vec![0, 1, 2]);
        assert_eq!(t.outer_vertices, vec![0, 1, 2]);

        let p3 = graph(3, &[(0, 1), (1, 2)]);
        let m = Matching::from_edges(&p3, &[(1, 2)]).unwrap();
        let t = build_max_sbt(&p3, &m, 0).unwrap();
        assert_eq!(t.root_blossom, vec![0]);
        assert_eq!(t.outer_vertices, vec![0, 2]);
        assert_eq!(balanced_reachable(&p3, &m, 0).unwrap(), vec![0, 2]);

        let c = e1();
        let c = c.contract(&[0, 1]).unwrap();
        let qm = Matching::from_edges(&c.quotient, &[(1, 2)]).unwrap();
        let t = build_max_sbt(&c.quotient, &qm, c.contracted).unwrap();
        assert_eq!(t.root_blossom, vec![0, 1, 2]);
    }

    #[test]
    fn sbt_rejects_bad_roots() {
        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let m = Matching::from_edges(&k3, &[(1, 2)]).unwrap();
        assert_eq!(build_max_sbt(&k3, &m, 1), Err(Error::RootNotExposed(1)));
        let empty = Matching::empty(3);
        assert_eq!(build_max_sbt(&k3, &empty, 0), Err(Error::NotNearPerfect));
    }

    #[test]
    fn odd_cycle_is_fully_reachable() {
        let c5 = cycle(5);
        for root in 0..5 {
            let pairs: Vec<_> = (1..5)
                .step_by(2)
                .map(|i| ((root + i) % 5, (root + i + 1) % 5))
                .collect();
            let m = Matching::from_edges(&c5, &pairs).unwrap();
            assert_eq!(
                balanced_reachable(&c5, &m, root).unwrap(),
                vec![0, 1, 2, 3, 4]
            );
        }
    }

    #[test]
    fn saturated_reachable_examples() {
        let k2 = graph(2, &[(0, 1)]);
        let m = Matching::from_edges(&k2, &[(0, 1)]).unwrap();
        assert_eq!(saturated_reachable(&k2, &m, 0).unwrap(), vec![1]);

        let c4 = cycle(4);
        let m = Matching::from_edges(&c4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(saturated_reachable(&c4, &m, 0).unwrap(), vec![1, 3]);

        let g = e1();
        let m = Matching::from_edges(&g, &[(0, 1), (2, 3)]).unwrap();
        // 2-3-0-1 is saturated as well as the edge 2-3.
        assert_eq!(saturated_reachable(&g, &m, 2).unwrap(), vec![1, 3]);

        let near = Matching::from_edges(&g, &[(2, 3)]).unwrap();
        assert_eq!(saturated_reachable(&g, &near, 2), Err(Error::NotPerfect));
    }

    #[test]
    fn allowed_edge_examples() {
        let g = e1();
        let m = Matching::from_edges(&g, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(allowed_edges_at(&g, &m, 0).unwrap(), vec![(0, 1)]);

        let c4 = cycle(4);
        let m = Matching::from_edges(&c4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(allowed_edges_at(&c4, &m, 0).unwrap(), vec![(0, 1), (0, 3)]);

        let k2 = graph(2, &[(0, 1)]);
        let m = Matching::from_edges(&k2, &[(0, 1)]).unwrap();
        assert_eq!(allowed_edges_at(&k2, &m, 0).unwrap(), vec![(0, 1)]);
    }
}
