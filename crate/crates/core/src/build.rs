//! The BUILD algorithm: recursive component decomposition of the Ahograph.
//! Either returns the canonical tree `A_R` displaying `R` or reports
//! inconsistency. Runtime is O(|L_R| * |R|).

use std::collections::BTreeSet;

use crate::ahograph::Ahograph;
use crate::error::{Error, Result};
use crate::label::LeafId;
use crate::tree::RootedTree;
use crate::triple::{Triple, TripleSet};

/// Run BUILD on `R` over its own leaf set `L_R`.
pub fn build_tree(r: &TripleSet) -> Result<RootedTree> {
    build_tree_over(r, r.leaf_set())
}

/// Run BUILD on `R` over an explicit leaf universe (a superset of `L_R`).
/// The empty set over `n` labels yields the star tree on those labels.
pub fn build_tree_over(r: &TripleSet, leaves: &BTreeSet<LeafId>) -> Result<RootedTree> {
    if leaves.is_empty() {
        return Err(Error::EmptyLeafSet);
    }
    for &l in r.leaf_set() {
        if !leaves.contains(&l) {
            return Err(Error::MissingLeaf(l));
        }
    }
    let triples: Vec<Triple> = r.iter().copied().collect();
    build_rec(&triples, leaves)
}

fn build_rec(triples: &[Triple], leaves: &BTreeSet<LeafId>) -> Result<RootedTree> {
    if leaves.len() == 1 {
        return Ok(RootedTree::leaf(*leaves.iter().next().unwrap()));
    }
    let g = Ahograph::from_triples(triples.iter(), leaves);
    let comps = g.components();
    if comps.len() < 2 {
        return Err(Error::Inconsistent);
    }
    // Children ordered by minimum leaf (components() already sorts), each
    // recursing on the triples fully inside its component. Leaves touched by
    // no surviving triple are singleton components and become direct
    // children here.
    let children = comps
        .into_iter()
        .map(|comp| {
            let sub: Vec<Triple> = triples
                .iter()
                .filter(|t| t.leaves().iter().all(|l| comp.contains(l)))
                .copied()
                .collect();
            build_rec(&sub, &comp)
        })
        .collect::<Result<Vec<_>>>()?;
    RootedTree::from_children(children).map_err(|_| Error::Inconsistent)
}

/// True iff some rooted tree displays every triple of `R`.
pub fn is_consistent(r: &TripleSet) -> bool {
    r.leaf_set().is_empty() || build_tree(r).is_ok()
}
