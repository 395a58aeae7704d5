//! Leaf interning. All algorithms work on dense integer ids; labels only
//! matter at the I/O boundary.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Index into a [`LabelTable`]. Ids are dense and assigned in order of first
/// appearance, so files parse deterministically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeafId(u32);

impl LeafId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Bijection between leaf labels and [`LeafId`]s for one workspace.
///
/// Labels must be non-empty and free of whitespace and the reserved
/// characters `| ( ) , ; #` so that triple files and Newick strings stay
/// unambiguous.
#[derive(Debug, Clone, Default)]
pub struct LabelTable {
    names: Vec<String>,
    ids: HashMap<String, LeafId>,
}

fn label_ok(s: &str) -> bool {
    !s.is_empty()
        && !s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '|' | '(' | ')' | ',' | ';' | '#'))
}

impl LabelTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Return the id for `name`, minting a new one on first sight.
    pub fn intern(&mut self, name: &str) -> Result<LeafId> {
        if let Some(&id) = self.ids.get(name) {
            return Ok(id);
        }
        if !label_ok(name) {
            return Err(Error::BadLabel(name.to_string()));
        }
        let id = LeafId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), id);
        Ok(id)
    }

    /// Intern a whole batch, e.g. when seeding a leaf universe up front.
    pub fn intern_all<'a, I: IntoIterator<Item = &'a str>>(&mut self, names: I) -> Result<Vec<LeafId>> {
        names.into_iter().map(|n| self.intern(n)).collect()
    }

    pub fn get(&self, name: &str) -> Option<LeafId> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, id: LeafId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = LeafId> + '_ {
        (0..self.names.len() as u32).map(LeafId)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_idempotent() {
        let mut t = LabelTable::new();
        let a = t.intern("a").unwrap();
        let b = t.intern("b").unwrap();
        assert_ne!(a, b);
        assert_eq!(t.intern("a").unwrap(), a);
        assert_eq!(t.name(b), "b");
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn reserved_characters_rejected() {
        let mut t = LabelTable::new();
        for bad in ["", "a b", "x|y", "p(", ")q", "u,v", "w;", "z#1"] {
            assert!(t.intern(bad).is_err(), "label {bad:?} should be rejected");
        }
    }
}
