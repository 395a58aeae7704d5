//! Rooted triples `ab|c` and duplicate-free triple sets.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::label::{LabelTable, LeafId};

/// A rooted triple `ab|c`: the binary shape on three distinct leaves where
/// the path from `a` to `b` avoids the path from `c` to the root.
///
/// Canonical form keeps `a < b`, so `ab|c` and `ba|c` compare and hash equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    a: LeafId,
    b: LeafId,
    c: LeafId,
}

impl Triple {
    pub fn new(x: LeafId, y: LeafId, z: LeafId) -> Result<Triple> {
        if x == y || x == z || y == z {
            return Err(Error::DegenerateTriple);
        }
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        Ok(Triple { a, b, c: z })
    }

    pub fn a(&self) -> LeafId {
        self.a
    }

    pub fn b(&self) -> LeafId {
        self.b
    }

    /// The leaf on the root side of the split.
    pub fn c(&self) -> LeafId {
        self.c
    }

    pub fn leaves(&self) -> [LeafId; 3] {
        [self.a, self.b, self.c]
    }

    /// The other two resolutions of this triple's leaf trio:
    /// for `ab|c` these are `ac|b` and `bc|a`.
    pub fn alternatives(&self) -> [Triple; 2] {
        [
            Triple::new(self.a, self.c, self.b).expect("leaves stay distinct"),
            Triple::new(self.b, self.c, self.a).expect("leaves stay distinct"),
        ]
    }

    pub fn render(&self, table: &LabelTable) -> String {
        format!(
            "{} {} | {}",
            table.name(self.a),
            table.name(self.b),
            table.name(self.c)
        )
    }
}

/// All three resolutions of the leaf trio `{x, y, z}`.
pub fn resolutions(x: LeafId, y: LeafId, z: LeafId) -> Result<[Triple; 3]> {
    Ok([
        Triple::new(x, y, z)?,
        Triple::new(x, z, y)?,
        Triple::new(y, z, x)?,
    ])
}

/// A duplicate-free, insertion-ordered collection of triples with its cached
/// leaf set `L_R` and optional per-triple weights.
///
/// Insertion order is observable on purpose: the greedy basis computation
/// processes triples in set order and must be reproducible. Equality ignores
/// order and weights and compares the underlying sets.
#[derive(Debug, Clone, Default)]
pub struct TripleSet {
    triples: Vec<Triple>,
    seen: HashSet<Triple>,
    leaves: BTreeSet<LeafId>,
    weights: HashMap<Triple, f64>,
}

impl TripleSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_triples<I: IntoIterator<Item = Triple>>(triples: I) -> Self {
        let mut set = Self::new();
        for t in triples {
            set.insert(t);
        }
        set
    }

    /// Insert a triple; returns false if it was already present.
    pub fn insert(&mut self, t: Triple) -> bool {
        if !self.seen.insert(t) {
            return false;
        }
        self.triples.push(t);
        self.leaves.extend(t.leaves());
        true
    }

    /// Insert with an optional weight. Re-inserting the same triple with a
    /// different weight (or with one side weighted and the other not) is an
    /// error; an identical weight is an ordinary duplicate.
    pub fn insert_weighted(&mut self, t: Triple, weight: Option<f64>) -> Result<bool> {
        if let Some(w) = weight {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidWeight(w));
            }
        }
        if self.seen.contains(&t) {
            let old = self.weights.get(&t).copied();
            return if old == weight {
                Ok(false)
            } else {
                Err(Error::InvalidWeight(weight.or(old).unwrap_or(f64::NAN)))
            };
        }
        self.insert(t);
        if let Some(w) = weight {
            self.weights.insert(t, w);
        }
        Ok(true)
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.seen.contains(t)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> + '_ {
        self.triples.iter()
    }

    pub fn as_slice(&self) -> &[Triple] {
        &self.triples
    }

    /// The cached leaf set `L_R`.
    pub fn leaf_set(&self) -> &BTreeSet<LeafId> {
        &self.leaves
    }

    pub fn weight(&self, t: &Triple) -> Option<f64> {
        self.weights.get(t).copied()
    }

    pub fn has_weights(&self) -> bool {
        !self.weights.is_empty()
    }

    /// Subset check under canonical-form equality.
    pub fn is_subset_of(&self, other: &TripleSet) -> bool {
        self.triples.iter().all(|t| other.contains(t))
    }

    /// Set equality ignoring insertion order and weights.
    pub fn set_eq(&self, other: &TripleSet) -> bool {
        self.seen == other.seen
    }

    /// The set without `t`, preserving order and weights.
    pub fn without(&self, t: &Triple) -> TripleSet {
        self.filtered(|u| u != t)
    }

    /// The subset of triples with all three leaves inside `leaves`.
    pub fn restricted_to(&self, leaves: &BTreeSet<LeafId>) -> TripleSet {
        self.filtered(|t| t.leaves().iter().all(|l| leaves.contains(l)))
    }

    fn filtered<F: Fn(&Triple) -> bool>(&self, keep: F) -> TripleSet {
        let mut out = TripleSet::new();
        for t in &self.triples {
            if keep(t) {
                out.insert(*t);
                if let Some(w) = self.weights.get(t) {
                    out.weights.insert(*t, *w);
                }
            }
        }
        out
    }

    /// A copy sorted into canonical `(a, b, c)` order.
    pub fn canonicalized(&self) -> TripleSet {
        let mut v = self.triples.clone();
        v.sort_unstable();
        let mut out = Self::from_triples(v);
        out.weights = self.weights.clone();
        out
    }

    pub fn render_lines(&self, table: &LabelTable) -> Vec<String> {
        self.triples
            .iter()
            .map(|t| match self.weight(t) {
                Some(w) => format!("{} w={w}", t.render(table)),
                None => t.render(table),
            })
            .collect()
    }
}

impl PartialEq for TripleSet {
    fn eq(&self, other: &Self) -> bool {
        self.set_eq(other)
    }
}

impl Eq for TripleSet {}

impl FromIterator<Triple> for TripleSet {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Self::from_triples(iter)
    }
}

/// Parse the triple file format: one `<x> <y> | <z>` per line with an
/// optional trailing `w=<decimal>`, `#` comments, blank lines ignored.
pub fn parse_triple_file(text: &str, table: &mut LabelTable) -> Result<TripleSet> {
    let mut set = TripleSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if !(tokens.len() == 4 || tokens.len() == 5) || tokens[2] != "|" {
            return Err(Error::Parse {
                line,
                msg: format!("expected `<x> <y> | <z> [w=<weight>]`, got `{content}`"),
            });
        }
        let weight = match tokens.get(4) {
            None => None,
            Some(tok) => {
                let num = tok.strip_prefix("w=").ok_or_else(|| Error::Parse {
                    line,
                    msg: format!("expected `w=<decimal>`, got `{tok}`"),
                })?;
                let w: f64 = num.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad weight `{num}`"),
                })?;
                Some(w)
            }
        };
        let ctx = |e: Error| Error::Parse {
            line,
            msg: e.to_string(),
        };
        let x = table.intern(tokens[0]).map_err(ctx)?;
        let y = table.intern(tokens[1]).map_err(ctx)?;
        let z = table.intern(tokens[3]).map_err(ctx)?;
        let t = Triple::new(x, y, z).map_err(ctx)?;
        set.insert_weighted(t, weight).map_err(|_| Error::Parse {
            line,
            msg: format!("duplicate triple `{}` with conflicting weight", t.render(table)),
        })?;
    }
    Ok(set)
}
