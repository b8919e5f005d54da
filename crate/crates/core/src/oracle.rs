//! Exhaustive reference implementations.
//!
//! Every function here works straight from a definition by enumeration:
//! perfect matchings by backtracking, factor-criticality by deleting each
//! vertex, the component order by trying every union of components, and
//! barriers by trying every vertex subset. None of it calls the blossom
//! search. Bounds are explicit; oversized inputs are an error.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Matching};

pub const DEFAULT_MAX_VERTICES: usize = 16;
pub const DEFAULT_MAX_SUBSET_VERTICES: usize = 12;
pub const DEFAULT_MAX_COMPONENTS: usize = 12;

/// Size bounds for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    /// Matching enumeration and factorizability tests.
    pub max_vertices: usize,
    /// Enumeration over all vertex subsets (barriers).
    pub max_subset_vertices: usize,
    /// Enumeration over all unions of factor-components.
    pub max_components: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_vertices: DEFAULT_MAX_VERTICES,
            max_subset_vertices: DEFAULT_MAX_SUBSET_VERTICES,
            max_components: DEFAULT_MAX_COMPONENTS,
        }
    }
}

impl OracleLimits {
    /// Both vertex bounds set to `max_n`.
    pub fn with_max_vertices(max_n: usize) -> Self {
        OracleLimits {
            max_vertices: max_n,
            max_subset_vertices: max_n,
            ..Default::default()
        }
    }
}

/// One fast-vs-oracle comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub subject: String,
    pub instance: String,
    pub fast_result: String,
    pub oracle_result: String,
    pub agreed: bool,
}

impl OracleReport {
    /// Both values are rendered with `Debug`; callers pass canonically
    /// ordered values so that equal results render identically.
    pub fn compare<T: std::fmt::Debug>(
        subject: &str,
        instance: &str,
        fast: &T,
        oracle: &T,
    ) -> Self {
        let fast_result = format!("{fast:?}");
        let oracle_result = format!("{oracle:?}");
        OracleReport {
            subject: subject.to_string(),
            instance: instance.to_string(),
            agreed: fast_result == oracle_result,
            fast_result,
            oracle_result,
        }
    }
}

/// Adjacency as bit masks, for graphs on at most 64 vertices.
struct Bits {
    n: usize,
    adj: Vec<u64>,
}

impl Bits {
    fn new(g: &Graph) -> Self {
        let adj = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &w| acc | 1 << w))
            .collect();
        Bits { n: g.n(), adj }
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Whether the vertices outside `covered` admit a perfect matching.
    fn can_complete(&self, covered: u64, dead: &mut HashSet<u64>) -> bool {
        let free = self.full() & !covered;
        if free == 0 {
            return true;
        }
        if free.count_ones() % 2 == 1 || dead.contains(&covered) {
            return false;
        }
        let v = free.trailing_zeros() as usize;
        let mut options = self.adj[v] & free;
        while options != 0 {
            let w = options.trailing_zeros();
            options &= options - 1;
            if self.can_complete(covered | 1 << v | 1 << w, dead) {
                return true;
            }
        }
        dead.insert(covered);
        false
    }

    fn factorizable_without(&self, removed: u64) -> bool {
        self.can_complete(removed, &mut HashSet::new())
    }

    fn max_matching_size(&self, covered: u64) -> usize {
        let free = self.full() & !covered;
        if free == 0 {
            return 0;
        }
        let v = free.trailing_zeros() as usize;
        // Leave v unmatched, or match it to some free neighbor.
        let mut best = self.max_matching_size(covered | 1 << v);
        let mut options = self.adj[v] & free;
        while options != 0 {
            let w = options.trailing_zeros();
            options &= options - 1;
            best = best.max(1 + self.max_matching_size(covered | 1 << v | 1 << w));
        }
        best
    }

    /// Number of odd connected components of the subgraph on `alive`.
    fn odd_components(&self, alive: u64) -> usize {
        let mut left = alive;
        let mut odd = 0;
        while left != 0 {
            let s = left.trailing_zeros();
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & alive & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            left &= !comp;
            odd += (comp.count_ones() % 2) as usize;
        }
        odd
    }
}

/// Exhaustive oracle bound to a set of size limits.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Oracle {
    pub limits: OracleLimits,
}

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |acc, &v| acc | 1 << v)
}

impl Oracle {
    pub fn new(limits: OracleLimits) -> Self {
        Oracle { limits }
    }

    fn check_vertices(&self, g: &Graph) -> Result<()> {
        let bound = self.limits.max_vertices.min(64);
        if g.n() > bound {
            Err(Error::TooLarge {
                what: "vertices",
                size: g.n(),
                bound,
            })
        } else {
            Ok(())
        }
    }

    /// All perfect matchings, by always matching the smallest uncovered
    /// vertex first.
    pub fn enumerate_perfect_matchings(&self, g: &Graph) -> Result<Vec<Matching>> {
        self.check_vertices(g)?;
        let bits = Bits::new(g);
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        fn recurse(
            g: &Graph,
            bits: &Bits,
            covered: u64,
            chosen: &mut Vec<Edge>,
            out: &mut Vec<Matching>,
        ) {
            let free = bits.full() & !covered;
            if free == 0 {
                out.push(Matching::from_edges(g, chosen).expect("edges of g, disjoint"));
                return;
            }
            let v = free.trailing_zeros() as usize;
            let mut options = bits.adj[v] & free;
            while options != 0 {
                let w = options.trailing_zeros() as usize;
                options &= options - 1;
                chosen.push((v, w));
                recurse(g, bits, covered | 1 << v | 1 << w, chosen, out);
                chosen.pop();
            }
        }
        if g.n() % 2 == 0 {
            recurse(g, &bits, 0, &mut chosen, &mut out);
        }
        Ok(out)
    }

    /// Edges contained in some perfect matching.
    pub fn oracle_allowed(&self, g: &Graph) -> Result<Vec<Edge>> {
        let all = self.enumerate_perfect_matchings(g)?;
        if all.is_empty() {
            return Err(Error::NotFactorizable);
        }
        let set: BTreeSet<Edge> = all.iter().flat_map(|m| m.edges()).collect();
        Ok(set.into_iter().collect())
    }

    /// Connected components of the allowed subgraph, ordered by smallest
    /// vertex.
    pub fn oracle_components(&self, g: &Graph) -> Result<Vec<Vec<usize>>> {
        let allowed = self.oracle_allowed(g)?;
        Ok(Graph::new(g.n(), &allowed)
            .expect("allowed edges are edges of g")
            .connected_components())
    }

    pub fn oracle_factorizable(&self, g: &Graph) -> Result<bool> {
        self.check_vertices(g)?;
        Ok(Bits::new(g).factorizable_without(0))
    }

    /// Every single-vertex deletion leaves a factorizable graph.
    pub fn oracle_factor_critical(&self, g: &Graph) -> Result<bool> {
        self.check_vertices(g)?;
        let bits = Bits::new(g);
        Ok((0..g.n()).all(|v| bits.factorizable_without(1 << v)))
    }

    /// `u ~ v`: equal, or `G - u - v` has no perfect matching.
    pub fn oracle_gsim(&self, g: &Graph, u: usize, v: usize) -> Result<bool> {
        self.check_vertices(g)?;
        for w in [u, v] {
            if w >= g.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: g.n(),
                });
            }
        }
        Ok(u == v || !Bits::new(g).factorizable_without(1 << u | 1 << v))
    }

    /// Size of a maximum matching.
    pub fn max_matching_size(&self, g: &Graph) -> Result<usize> {
        self.check_vertices(g)?;
        Ok(Bits::new(g).max_matching_size(0))
    }

    /// `a ≼ b`: some union `X` of components containing both has `G[X]/a`
    /// factor-critical.
    pub fn oracle_leq(
        &self,
        g: &Graph,
        components: &[Vec<usize>],
        a: usize,
        b: usize,
    ) -> Result<bool> {
        self.check_vertices(g)?;
        let k = components.len();
        if k > self.limits.max_components {
            return Err(Error::TooLarge {
                what: "components",
                size: k,
                bound: self.limits.max_components,
            });
        }
        for x in [a, b] {
            if x >= k {
                return Err(Error::IndexOutOfRange { index: x, len: k });
            }
        }
        let required = 1u64 << a | 1u64 << b;
        for subset in 0u64..(1u64 << k) {
            if subset & required != required {
                continue;
            }
            let set: Vec<usize> = (0..k)
                .filter(|&i| subset >> i & 1 == 1)
                .flat_map(|i| components[i].iter().copied())
                .collect();
            let (sub, old_ids) = g.induced_subgraph(&set)?;
            let lower: Vec<usize> = (0..sub.n())
                .filter(|&i| components[a].binary_search(&old_ids[i]).is_ok())
                .collect();
            let quotient = sub.contract(&lower)?.quotient;
            if self.oracle_factor_critical(&quotient)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Inclusion-maximal barriers of a factorizable graph: sets `X` with
    /// `oc(G - X) = |X|`.
    pub fn oracle_maximal_barriers(&self, g: &Graph) -> Result<Vec<Vec<usize>>> {
        self.check_vertices(g)?;
        let bound = self.limits.max_subset_vertices.min(63);
        if g.n() > bound {
            return Err(Error::TooLarge {
                what: "vertices (subset enumeration)",
                size: g.n(),
                bound,
            });
        }
        let bits = Bits::new(g);
        if !bits.factorizable_without(0) {
            return Err(Error::NotFactorizable);
        }
        let full = bits.full();
        let barriers: Vec<u64> = (0..=full)
            .filter(|&x| bits.odd_components(full & !x) == x.count_ones() as usize)
            .collect();
        let mut maximal: Vec<Vec<usize>> = barriers
            .iter()
            .filter(|&&x| !barriers.iter().any(|&y| y != x && y & x == x))
            .map(|&x| (0..g.n()).filter(|&v| x >> v & 1 == 1).collect())
            .collect();
        maximal.sort();
        Ok(maximal)
    }

    /// `a ≼ b` through chains of ears: starting from `a`, a component is
    /// reached when some `M`-ear relative to an already reached component
    /// passes through it.
    pub fn oracle_ear_sequence(
        &self,
        g: &Graph,
        m: &Matching,
        components: &[Vec<usize>],
        a: usize,
        b: usize,
    ) -> Result<bool> {
        self.check_vertices(g)?;
        let k = components.len();
        for x in [a, b] {
            if x >= k {
                return Err(Error::IndexOutOfRange { index: x, len: k });
            }
        }
        if !m.is_perfect() || m.n() != g.n() {
            return Err(Error::NotPerfect);
        }
        let mut comp_of = vec![usize::MAX; g.n()];
        for (i, c) in components.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut reached = vec![false; k];
        reached[a] = true;
        let mut queue = vec![a];
        while let Some(h) = queue.pop() {
            for i in self.ear_targets(g, m, &comp_of, &components[h], h) {
                if !reached[i] {
                    reached[i] = true;
                    queue.push(i);
                }
            }
        }
        Ok(reached[b])
    }

    /// Components met by the interior of some `M`-ear relative to component
    /// `h`. An ear leaves `h` by an edge `x p`, runs along a saturated path
    /// `p ... q` outside `h`, and returns by an edge `q y` (`y` may equal `x`).
    fn ear_targets(
        &self,
        g: &Graph,
        m: &Matching,
        comp_of: &[usize],
        members: &[usize],
        h: usize,
    ) -> BTreeSet<usize> {
        let mut hits = BTreeSet::new();
        let mut on_path = vec![false; g.n()];
        let mut path = Vec::new();

        // `path` ends with a matched edge; try to close, then extend by an
        // unmatched edge followed by the next matched edge.
        fn extend(
            g: &Graph,
            m: &Matching,
            comp_of: &[usize],
            h: usize,
            on_path: &mut [bool],
            path: &mut Vec<usize>,
            hits: &mut BTreeSet<usize>,
        ) {
            let q = *path.last().expect("nonempty");
            if g.neighbors(q).iter().any(|&y| comp_of[y] == h) {
                hits.extend(path.iter().map(|&v| comp_of[v]));
            }
            for &r in g.neighbors(q) {
                if comp_of[r] == h || on_path[r] || m.contains(q, r) {
                    continue;
                }
                let r2 = m.mate(r).expect("perfect");
                if on_path[r2] || comp_of[r2] == h {
                    continue;
                }
                on_path[r] = true;
                on_path[r2] = true;
                path.push(r);
                path.push(r2);
                extend(g, m, comp_of, h, on_path, path, hits);
                path.pop();
                path.pop();
                on_path[r] = false;
                on_path[r2] = false;
            }
        }

        for &x in members {
            for &p in g.neighbors(x) {
                if comp_of[p] == h {
                    continue;
                }
                let p2 = m.mate(p).expect("perfect");
                if comp_of[p2] == h {
                    continue;
                }
                on_path[p] = true;
                on_path[p2] = true;
                path.push(p);
                path.push(p2);
                extend(g, m, comp_of, h, &mut on_path, &mut path, &mut hits);
                path.clear();
                on_path[p] = false;
                on_path[p2] = false;
            }
        }
        hits.remove(&h);
        hits
    }

    /// `~` classes within the given components, from the definition.
    pub fn oracle_classes(&self, g: &Graph, components: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
        self.check_vertices(g)?;
        let bits = Bits::new(g);
        let mut classes = Vec::new();
        for comp in components {
            let mut assigned = vec![false; comp.len()];
            for i in 0..comp.len() {
                if assigned[i] {
                    continue;
                }
                let mut class = Vec::new();
                for j in i..comp.len() {
                    if !assigned[j]
                        && (i == j || !bits.factorizable_without(mask_of(&[comp[i], comp[j]])))
                    {
                        assigned[j] = true;
                        class.push(comp[j]);
                    }
                }
                classes.push(class);
            }
        }
        Ok(classes)
    }
}
