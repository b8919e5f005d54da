//! Structure of graphs with perfect matchings.
//!
//! Given a graph with a perfect matching, this crate computes
//!
//! * its factor-components: the connected pieces of the subgraph formed by
//!   edges that lie in some perfect matching ([`decompose`]);
//! * the generalized canonical partition of each factor-component
//!   ([`generalized_partition`]);
//! * the partial order on factor-components ([`build_poset`]).
//!
//! All three reduce to Edmonds' blossom search ([`matching`]) and run in
//! O(nm) overall. The [`oracle`] module holds brute-force versions of every
//! definition for testing.

pub mod checks;
pub mod decomposition;
pub mod error;
pub mod generate;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod partition;
pub mod poset;

pub use decomposition::{decompose, FactorDecomposition};
pub use error::{Error, Result};
pub use graph::{
    classify_alternating_path, normalize, AltPathKind, ContractedGraph, Edge, Graph, Matching,
};
pub use matching::{
    allowed_edges_at, balanced_reachable, build_max_sbt, maximum_matching, saturated_reachable,
    MatchingResult, Sbt, TreeArc,
};
pub use oracle::{Oracle, OracleLimits, OracleReport};
pub use partition::{generalized_partition, gsim, CanonicalPartition, PartitionClass};
pub use poset::{augment_to_order, build_poset, Augmentation, ComponentPoset};

/// Everything computed for one factorizable graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub matching: Matching,
    pub decomposition: FactorDecomposition,
    pub partition: CanonicalPartition,
    pub poset: ComponentPoset,
}

/// Maximum matching, then decomposition, partition and order.
pub fn analyze(g: &Graph) -> Result<Analysis> {
    let found = maximum_matching(g);
    if !found.is_perfect {
        return Err(Error::NotFactorizable);
    }
    analyze_with(g, &found.matching)
}

/// As [`analyze`], starting from a given perfect matching.
pub fn analyze_with(g: &Graph, m: &Matching) -> Result<Analysis> {
    let decomposition = decompose(g, m)?;
    let partition = generalized_partition(g, &decomposition)?;
    let poset = build_poset(g, m, &decomposition)?;
    Ok(Analysis {
        matching: m.clone(),
        decomposition,
        partition,
        poset,
    })
}
