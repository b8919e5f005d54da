//! Cross-checks of the fast pipeline against the exhaustive oracle, plus
//! the structural laws relating the order to the canonical partition.

use crate::error::Result;
use crate::graph::Graph;
use crate::oracle::{Oracle, OracleReport};
use crate::poset::ComponentPoset;
use crate::{analyze, Analysis};

/// Vertices of the components listed in `indices`, ascending.
pub fn component_union(a: &Analysis, indices: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = indices
        .iter()
        .flat_map(|&i| a.decomposition.components()[i].iter().copied())
        .collect();
    out.sort_unstable();
    out
}

/// Connected components of `G[up(H)]` in base vertex ids.
pub fn upper_pieces(g: &Graph, a: &Analysis, h: usize) -> Result<Vec<Vec<usize>>> {
    let up = a.poset.upper_bounds(h, true)?;
    let verts = component_union(a, &up);
    let (sub, old) = g.induced_subgraph(&verts)?;
    Ok(sub
        .connected_components()
        .into_iter()
        .map(|c| c.into_iter().map(|i| old[i]).collect())
        .collect())
}

/// For each component `H` and each piece `K` of `G[up(H)]`: the classes of
/// `H` met by `Γ(K)`. The law says each list has at most one entry.
pub fn base_attachments(g: &Graph, a: &Analysis) -> Result<Vec<(usize, Vec<usize>)>> {
    let mut out = Vec::new();
    for h in 0..a.decomposition.len() {
        for piece in upper_pieces(g, a, h)? {
            let mut classes: Vec<usize> = g
                .neighbors_of_set(&piece)?
                .into_iter()
                .filter(|&v| a.decomposition.component_of(v) == h)
                .map(|v| a.partition.class_of(v))
                .collect();
            classes.sort_unstable();
            classes.dedup();
            out.push((h, classes));
        }
    }
    Ok(out)
}

/// `G[up*(H)] / H` for every component `H`.
pub fn ideal_quotients(g: &Graph, a: &Analysis) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for h in 0..a.decomposition.len() {
        let up = a.poset.upper_bounds(h, false)?;
        let verts = component_union(a, &up);
        let (sub, old) = g.induced_subgraph(&verts)?;
        let comp = &a.decomposition.components()[h];
        let lower: Vec<usize> = (0..sub.n())
            .filter(|&i| comp.binary_search(&old[i]).is_ok())
            .collect();
        out.push(sub.contract(&lower)?.quotient);
    }
    Ok(out)
}

/// For each component `H` and class `S` of `H`: `G[K_1 ∪ ... ∪ K_l ∪ S] / S`
/// over all pieces `K_i` of `G[up(H)]` attached only to `S` (skipped when
/// there are none).
pub fn class_block_quotients(g: &Graph, a: &Analysis) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for h in 0..a.decomposition.len() {
        let pieces = upper_pieces(g, a, h)?;
        for class in a.partition.classes_of_component(h) {
            let mut verts = class.vertices.clone();
            let mut any = false;
            for piece in &pieces {
                let attached = g
                    .neighbors_of_set(piece)?
                    .into_iter()
                    .filter(|&v| a.decomposition.component_of(v) == h)
                    .all(|v| class.vertices.binary_search(&v).is_ok());
                if attached {
                    any = true;
                    verts.extend_from_slice(piece);
                }
            }
            if !any {
                continue;
            }
            verts.sort_unstable();
            let (sub, old) = g.induced_subgraph(&verts)?;
            let s: Vec<usize> = (0..sub.n())
                .filter(|&i| class.vertices.binary_search(&old[i]).is_ok())
                .collect();
            out.push(sub.contract(&s)?.quotient);
        }
    }
    Ok(out)
}

fn oracle_matrix(
    k: usize,
    mut rel: impl FnMut(usize, usize) -> Result<bool>,
) -> Result<Vec<Vec<bool>>> {
    (0..k)
        .map(|a| (0..k).map(|b| rel(a, b)).collect())
        .collect()
}

fn sorted_sets(mut sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for s in &mut sets {
        s.sort_unstable();
    }
    sets.sort();
    sets
}

/// Whether `p` is reflexive, antisymmetric and transitive.
pub fn poset_axioms_hold(p: &ComponentPoset) -> bool {
    let m = p.matrix();
    let k = m.len();
    (0..k).all(|a| m[a][a])
        && (0..k).all(|a| (0..k).all(|b| a == b || !(m[a][b] && m[b][a])))
        && (0..k).all(|a| (0..k).all(|b| !m[a][b] || (0..k).all(|c| !m[b][c] || m[a][c])))
}

/// Runs the full comparison suite on one factorizable graph within the
/// oracle's bounds.
pub fn cross_check(g: &Graph, oracle: &Oracle, instance: &str) -> Result<Vec<OracleReport>> {
    let a = analyze(g)?;
    let mut reports = Vec::new();
    let mut push = |subject: &str, fast: String, slow: String| {
        reports.push(OracleReport::compare(subject, instance, &fast, &slow));
    };

    push(
        "matching-size",
        format!("{}", a.matching.len()),
        format!("{}", oracle.max_matching_size(g)?),
    );
    push(
        "allowed-edges",
        format!("{:?}", a.decomposition.allowed()),
        format!("{:?}", oracle.oracle_allowed(g)?),
    );
    let oracle_components = oracle.oracle_components(g)?;
    push(
        "factor-components",
        format!("{:?}", a.decomposition.components()),
        format!("{oracle_components:?}"),
    );
    let fast_classes: Vec<Vec<usize>> = a
        .partition
        .classes()
        .iter()
        .map(|c| c.vertices.clone())
        .collect();
    push(
        "canonical-partition",
        format!("{:?}", sorted_sets(fast_classes)),
        format!(
            "{:?}",
            sorted_sets(oracle.oracle_classes(g, &oracle_components)?)
        ),
    );

    let k = oracle_components.len();
    let by_sets = oracle_matrix(k, |x, y| oracle.oracle_leq(g, &oracle_components, x, y))?;
    push(
        "order",
        format!("{:?}", a.poset.matrix()),
        format!("{by_sets:?}"),
    );
    let by_ears = oracle_matrix(k, |x, y| {
        oracle.oracle_ear_sequence(g, &a.matching, &oracle_components, x, y)
    })?;
    push(
        "order-ear-sequences",
        format!("{by_ears:?}"),
        format!("{by_sets:?}"),
    );
    push(
        "poset-axioms",
        format!("{}", poset_axioms_hold(&a.poset)),
        "true".into(),
    );

    if a.decomposition.is_elementary() {
        let barriers = oracle.oracle_maximal_barriers(g)?;
        let classes: Vec<Vec<usize>> = a
            .partition
            .classes()
            .iter()
            .map(|c| c.vertices.clone())
            .collect();
        push(
            "maximal-barriers",
            format!("{:?}", sorted_sets(classes)),
            format!("{:?}", sorted_sets(barriers)),
        );
    }

    let spread: Vec<(usize, Vec<usize>)> = base_attachments(g, &a)?
        .into_iter()
        .filter(|(_, classes)| classes.len() > 1)
        .collect();
    push(
        "upper-pieces-attach-to-one-class",
        format!("{spread:?}"),
        "[]".into(),
    );

    let mut ideal_failures = Vec::new();
    for (h, q) in ideal_quotients(g, &a)?.iter().enumerate() {
        if !oracle.oracle_factor_critical(q)? {
            ideal_failures.push(h);
        }
    }
    push(
        "up-set-quotient-factor-critical",
        format!("{ideal_failures:?}"),
        "[]".into(),
    );

    let mut block_failures = 0;
    for q in class_block_quotients(g, &a)? {
        if !oracle.oracle_factor_critical(&q)? {
            block_failures += 1;
        }
    }
    push(
        "class-block-quotient-factor-critical",
        format!("{block_failures}"),
        "0".into(),
    );

    Ok(reports)
}
