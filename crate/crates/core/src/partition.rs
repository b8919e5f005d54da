//! Generalized canonical partition: inside each factor-component `H`, two
//! vertices are equivalent when removing both leaves no perfect matching.
//! With a perfect matching `M` fixed, `G - u - v` is factorizable exactly
//! when an `M`-saturated path joins `u` and `v`, so the class of `v` is
//! `V(H)` minus the vertices saturated-reachable from `v`.

use crate::decomposition::FactorDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::saturated_reach_mask;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionClass {
    pub component: usize,
    /// Ascending.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalPartition {
    classes: Vec<PartitionClass>,
    class_of: Vec<usize>,
}

impl CanonicalPartition {
    /// Classes grouped by component index, then by smallest vertex.
    pub fn classes(&self) -> &[PartitionClass] {
        &self.classes
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    /// Classes belonging to one component.
    pub fn classes_of_component(&self, component: usize) -> impl Iterator<Item = &PartitionClass> {
        self.classes
            .iter()
            .filter(move |c| c.component == component)
    }

    pub fn same_class(&self, u: usize, v: usize) -> bool {
        self.class_of[u] == self.class_of[v]
    }
}

pub fn generalized_partition(g: &Graph, d: &FactorDecomposition) -> Result<CanonicalPartition> {
    d.check_against(g)?;
    let n = g.n();
    let mates = d.matching().mates();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for (ci, comp) in d.components().iter().enumerate() {
        for &v in comp {
            if class_of[v] != usize::MAX {
                continue;
            }
            let reach = saturated_reach_mask(g, mates, v);
            let id = classes.len();
            let mut members = Vec::new();
            for &u in comp {
                if reach[u] {
                    continue;
                }
                if class_of[u] != usize::MAX {
                    return Err(Error::InconsistentDecomposition(format!(
                        "vertex {u} falls in two classes of component {ci}"
                    )));
                }
                class_of[u] = id;
                members.push(u);
            }
            classes.push(PartitionClass {
                component: ci,
                vertices: members,
            });
        }
    }
    Ok(CanonicalPartition { classes, class_of })
}

/// `u ~ v` inside one factor-component.
pub fn gsim(g: &Graph, d: &FactorDecomposition, u: usize, v: usize) -> Result<bool> {
    d.check_against(g)?;
    for w in [u, v] {
        if w >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: w,
                n: g.n(),
            });
        }
    }
    if d.component_of(u) != d.component_of(v) {
        return Err(Error::DifferentComponents(u, v));
    }
    if u == v {
        return Ok(true);
    }
    Ok(!saturated_reach_mask(g, d.matching().mates(), u)[v])
}
