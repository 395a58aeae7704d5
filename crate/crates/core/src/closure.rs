//! Triple-closure computation, two ways.
//!
//! `closure_baseline` is the classical method: for every leaf trio, test the
//! three resolutions for consistency against `R` and keep the one that is
//! forced (O(|R| |L_R|^4)). `closure_fast` instead computes, per triple, the
//! unique maximum two-component witness of closure membership by repeatedly
//! shrinking the working leaf set to the components containing the cherry
//! pair and the apex; the closure is then the disjoint union of the cross
//! triples of the distinct witness pairs (O(|R|^2 |L_R|)).

use std::collections::BTreeSet;

use crate::ahograph::{Ahograph, ComponentPair};
use crate::build::is_consistent;
use crate::error::{Error, Result};
use crate::triple::{resolutions, Triple, TripleSet};

/// Per-triple maximum witness pairs plus the deduplicated set view.
#[derive(Debug, Clone)]
pub struct LmaxTable {
    entries: Vec<(Triple, ComponentPair)>,
    view: Vec<ComponentPair>,
}

impl LmaxTable {
    pub fn entries(&self) -> &[(Triple, ComponentPair)] {
        &self.entries
    }

    pub fn get(&self, t: &Triple) -> Option<&ComponentPair> {
        self.entries.iter().find(|(u, _)| u == t).map(|(_, p)| p)
    }

    /// Distinct witness pairs in canonical order. At most one per triple of
    /// `R`, so the view never exceeds `|R|`.
    pub fn set_view(&self) -> &[ComponentPair] {
        &self.view
    }
}

/// The unique maximum pair `{A*, B*}` witnessing `t` being in `cl(R)`: the
/// largest leaf set `A* ∪ B*` on which the Ahograph splits into exactly the
/// two components `A*` (with the cherry pair) and `B*` (with the apex).
///
/// For `t ∈ R` the shrinking loop always terminates in the witness. For
/// other triples over `L_R` it reports `NotInClosure` when the cherry pair
/// falls into different components, and `Inconsistent` when some working
/// set stays connected.
pub fn lmax(r: &TripleSet, t: Triple) -> Result<ComponentPair> {
    for l in t.leaves() {
        if !r.leaf_set().contains(&l) {
            return Err(Error::MissingLeaf(l));
        }
    }
    let mut current: BTreeSet<_> = r.leaf_set().clone();
    loop {
        let g = Ahograph::from_triples(r.iter(), &current);
        let comps = g.components();
        let comp_ab = comps
            .iter()
            .position(|c| c.contains(&t.a()))
            .expect("a is a vertex");
        if !comps[comp_ab].contains(&t.b()) {
            // No subset of `current` can reunite the cherry pair, and every
            // witness the original leaf set admits lies inside `current`.
            return Err(Error::NotInClosure);
        }
        let comp_c = comps
            .iter()
            .position(|c| c.contains(&t.c()))
            .expect("c is a vertex");
        if comp_c != comp_ab && comps.len() == 2 {
            let mut it = comps.into_iter();
            let first = it.next().unwrap();
            let second = it.next().unwrap();
            return ComponentPair::new(first, second);
        }
        let next: BTreeSet<_> = comps[comp_ab]
            .union(&comps[comp_c])
            .copied()
            .collect();
        if next.len() == current.len() {
            // The graph on `current` is connected on a set of size >= 3.
            return Err(Error::Inconsistent);
        }
        current = next;
    }
}

/// The witness table for every `t ∈ R`.
pub fn lmax_all(r: &TripleSet) -> Result<LmaxTable> {
    if !is_consistent(r) {
        return Err(Error::Inconsistent);
    }
    let mut entries = Vec::with_capacity(r.len());
    for &t in r.iter() {
        entries.push((t, lmax(r, t)?));
    }
    let mut view: Vec<ComponentPair> = entries.iter().map(|(_, p)| p.clone()).collect();
    view.sort();
    view.dedup();
    Ok(LmaxTable { entries, view })
}

/// The cross triples of `{A, B}`: all `xy|z` with the pair on one side and
/// the apex on the other. Exactly C(|A|,2)|B| + C(|B|,2)|A| triples.
pub fn triples_between(p: &ComponentPair) -> TripleSet {
    let mut out = Vec::new();
    for (pair_side, apex_side) in [(p.first(), p.second()), (p.second(), p.first())] {
        let pair: Vec<_> = pair_side.iter().copied().collect();
        for i in 0..pair.len() {
            for j in i + 1..pair.len() {
                for &z in apex_side {
                    out.push(Triple::new(pair[i], pair[j], z).expect("sides are disjoint"));
                }
            }
        }
    }
    out.sort_unstable();
    TripleSet::from_triples(out)
}

/// `cl(R)` as the disjoint union of cross triples over the witness pairs,
/// in canonical triple order.
pub fn closure_fast(r: &TripleSet) -> Result<TripleSet> {
    let table = lmax_all(r)?;
    let mut triples = Vec::new();
    for pair in table.set_view() {
        triples.extend(triples_between(pair).iter().copied());
    }
    triples.sort_unstable();
    Ok(TripleSet::from_triples(triples))
}

/// `cl(R)` by the classical route: for every trio of `L_R`, a resolution is
/// in the closure iff it is the single consistent augmentation of `R`. Each
/// test is one BUILD run; nothing is memoized, keeping the benchmark
/// comparison honest.
pub fn closure_baseline(r: &TripleSet) -> Result<TripleSet> {
    if !is_consistent(r) {
        return Err(Error::Inconsistent);
    }
    let leaves: Vec<_> = r.leaf_set().iter().copied().collect();
    let mut out = Vec::new();
    for i in 0..leaves.len() {
        for j in i + 1..leaves.len() {
            for k in j + 1..leaves.len() {
                let candidates = resolutions(leaves[i], leaves[j], leaves[k])?;
                let consistent: Vec<&Triple> = candidates
                    .iter()
                    .filter(|t| {
                        let mut augmented = r.clone();
                        augmented.insert(**t);
                        is_consistent(&augmented)
                    })
                    .collect();
                if let [single] = consistent.as_slice() {
                    out.push(**single);
                }
            }
        }
    }
    out.sort_unstable();
    Ok(TripleSet::from_triples(out))
}

/// True iff `t ∈ cl(R)`: the witness set of `t` is non-empty. Triples with
/// leaves outside `L_R` are simply not in the closure.
pub fn in_closure(r: &TripleSet, t: Triple) -> Result<bool> {
    match lmax(r, t) {
        Ok(_) => Ok(true),
        Err(Error::NotInClosure) | Err(Error::MissingLeaf(_)) => Ok(false),
        Err(e) => Err(e),
    }
}
