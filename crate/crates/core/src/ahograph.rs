//! The Ahograph `[R, L]`: vertices are the leaves of `L`, and each triple
//! `ab|c` of `R` with all three leaves inside `L` contributes the edge
//! `(a, b)`. Connectivity of these graphs drives everything else here:
//! consistency, closure membership, and minimality certificates.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::label::{LabelTable, LeafId};
use crate::triple::{Triple, TripleSet};

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> UnionFind {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut x = x;
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (mut xr, mut yr) = (self.find(x), self.find(y));
        if xr == yr {
            return;
        }
        if self.size[xr] < self.size[yr] {
            std::mem::swap(&mut xr, &mut yr);
        }
        self.parent[yr] = xr;
        self.size[xr] += self.size[yr];
    }
}

/// `[R, L]` with the supporting triples recorded per edge, so bridge tests
/// and exchange proofs can see when an edge is held up by more than one
/// triple.
#[derive(Debug, Clone)]
pub struct Ahograph {
    vertices: Vec<LeafId>,
    index: HashMap<LeafId, usize>,
    support: BTreeMap<(LeafId, LeafId), Vec<Triple>>,
}

impl Ahograph {
    /// Build `[R, L]` from any triple source. Triples with a leaf outside
    /// `L` are ignored per the definition. Cost is linear in `|L| + |R|`.
    pub fn from_triples<'a, I>(triples: I, leaves: &BTreeSet<LeafId>) -> Ahograph
    where
        I: IntoIterator<Item = &'a Triple>,
    {
        let vertices: Vec<LeafId> = leaves.iter().copied().collect();
        let index: HashMap<LeafId, usize> =
            vertices.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut support: BTreeMap<(LeafId, LeafId), Vec<Triple>> = BTreeMap::new();
        for t in triples {
            if t.leaves().iter().all(|l| leaves.contains(l)) {
                support.entry((t.a(), t.b())).or_default().push(*t);
            }
        }
        Ahograph {
            vertices,
            index,
            support,
        }
    }

    pub fn vertices(&self) -> &[LeafId] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.support.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (LeafId, LeafId)> + '_ {
        self.support.keys().copied()
    }

    /// The triples supporting edge `(a, b)`, empty if there is no edge.
    pub fn edge_support(&self, a: LeafId, b: LeafId) -> &[Triple] {
        let key = if a < b { (a, b) } else { (b, a) };
        self.support.get(&key).map_or(&[], Vec::as_slice)
    }

    /// Connected components as leaf sets, ordered by their minimum leaf.
    pub fn components(&self) -> Vec<BTreeSet<LeafId>> {
        let mut uf = UnionFind::new(self.vertices.len());
        for &(a, b) in self.support.keys() {
            uf.union(self.index[&a], self.index[&b]);
        }
        let mut groups: BTreeMap<usize, BTreeSet<LeafId>> = BTreeMap::new();
        for (i, &l) in self.vertices.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().insert(l);
        }
        let mut comps: Vec<BTreeSet<LeafId>> = groups.into_values().collect();
        comps.sort_by_key(|c| c.iter().next().copied());
        comps
    }

    /// The component containing `l`, if `l` is a vertex.
    pub fn component_of(&self, l: LeafId) -> Option<BTreeSet<LeafId>> {
        self.components().into_iter().find(|c| c.contains(&l))
    }

    /// True iff the simple graph contains a cycle (multi-supported edges do
    /// not count; parallel support shows up in `edge_support`).
    pub fn has_cycle(&self) -> bool {
        let mut uf = UnionFind::new(self.vertices.len());
        for &(a, b) in self.support.keys() {
            let (x, y) = (self.index[&a], self.index[&b]);
            if uf.find(x) == uf.find(y) {
                return true;
            }
            uf.union(x, y);
        }
        false
    }

    /// DOT rendering with edges labeled by the `z` leaves of their
    /// supporting triples.
    pub fn to_dot(&self, table: &LabelTable) -> String {
        let mut out = String::from("graph ahograph {\n");
        for &v in &self.vertices {
            out.push_str(&format!("  \"{}\";\n", table.name(v)));
        }
        for ((a, b), ts) in &self.support {
            let label: Vec<&str> = ts.iter().map(|t| table.name(t.c())).collect();
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
                table.name(*a),
                table.name(*b),
                label.join(",")
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Build `[R, L]`.
pub fn build_ahograph(r: &TripleSet, leaves: &BTreeSet<LeafId>) -> Ahograph {
    Ahograph::from_triples(r.iter(), leaves)
}

/// True iff removing `t` from `R` disconnects `t`'s cherry leaves within
/// `[R \ {t}, L]`.
pub fn is_bridge_triple(r: &TripleSet, leaves: &BTreeSet<LeafId>, t: Triple) -> Result<bool> {
    if !r.contains(&t) {
        return Err(Error::TripleNotInSet);
    }
    for l in t.leaves() {
        if !leaves.contains(&l) {
            return Err(Error::MissingLeaf(l));
        }
    }
    let g = Ahograph::from_triples(r.iter().filter(|u| **u != t), leaves);
    let comp_a = g.component_of(t.a()).expect("vertex present");
    Ok(!comp_a.contains(&t.b()))
}

/// An unordered pair `{A, B}` of disjoint non-empty leaf sets, stored with
/// the side holding the smaller minimum first so equality and hashing are
/// symmetric.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentPair {
    first: BTreeSet<LeafId>,
    second: BTreeSet<LeafId>,
}

impl ComponentPair {
    pub fn new(a: BTreeSet<LeafId>, b: BTreeSet<LeafId>) -> Result<ComponentPair> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptyLeafSet);
        }
        if a.intersection(&b).next().is_some() {
            return Err(Error::LeafSetMismatch);
        }
        let (first, second) = if a.iter().next() < b.iter().next() {
            (a, b)
        } else {
            (b, a)
        };
        Ok(ComponentPair { first, second })
    }

    pub fn first(&self) -> &BTreeSet<LeafId> {
        &self.first
    }

    pub fn second(&self) -> &BTreeSet<LeafId> {
        &self.second
    }

    pub fn sides(&self) -> [&BTreeSet<LeafId>; 2] {
        [&self.first, &self.second]
    }

    pub fn union(&self) -> BTreeSet<LeafId> {
        self.first.union(&self.second).copied().collect()
    }

    pub fn union_len(&self) -> usize {
        self.first.len() + self.second.len()
    }

    /// The side containing `l`, if any.
    pub fn side_of(&self, l: LeafId) -> Option<usize> {
        if self.first.contains(&l) {
            Some(0)
        } else if self.second.contains(&l) {
            Some(1)
        } else {
            None
        }
    }

    /// True iff one side holds both `a` and `b` of the triple and the other
    /// holds `c`.
    pub fn witnesses(&self, t: Triple) -> bool {
        match (self.side_of(t.a()), self.side_of(t.b()), self.side_of(t.c())) {
            (Some(x), Some(y), Some(z)) => x == y && x != z,
            _ => false,
        }
    }

    pub fn render(&self, table: &LabelTable) -> String {
        let side = |s: &BTreeSet<LeafId>| {
            s.iter()
                .map(|&l| table.name(l))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{} || {}", side(&self.first), side(&self.second))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::LabelTable;
    use crate::triple::parse_triple_file;

    fn fig1() -> (LabelTable, TripleSet) {
        let mut table = LabelTable::new();
        let r = parse_triple_file("a b | c\na c | d\nb c | d\n", &mut table).unwrap();
        (table, r)
    }

    fn comp_names(g: &Ahograph, table: &LabelTable) -> Vec<Vec<String>> {
        g.components()
            .iter()
            .map(|c| c.iter().map(|&l| table.name(l).to_string()).collect())
            .collect()
    }

    #[test]
    fn fig1_full_leaf_set() {
        let (table, r) = fig1();
        let g = build_ahograph(&r, r.leaf_set());
        assert_eq!(g.edge_count(), 3, "edges (a,b), (a,c), (b,c)");
        assert_eq!(
            comp_names(&g, &table),
            vec![vec!["a", "b", "c"], vec!["d"]]
        );
    }

    #[test]
    fn fig1_three_leaf_subset() {
        let (table, r) = fig1();
        let sub: BTreeSet<LeafId> = ["a", "b", "c"]
            .iter()
            .map(|n| table.get(n).unwrap())
            .collect();
        let g = build_ahograph(&r, &sub);
        assert_eq!(g.edge_count(), 1, "only ab|c has all leaves inside");
        assert_eq!(comp_names(&g, &table), vec![vec!["a", "b"], vec!["c"]]);
    }

    #[test]
    fn singleton_leaf_set() {
        let (table, r) = fig1();
        let sub: BTreeSet<LeafId> = BTreeSet::from([table.get("a").unwrap()]);
        let g = build_ahograph(&r, &sub);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.components().len(), 1);
    }

    #[test]
    fn empty_graph_has_no_components() {
        let r = TripleSet::new();
        let g = build_ahograph(&r, &BTreeSet::new());
        assert!(g.components().is_empty());
    }

    #[test]
    fn bridge_examples() {
        // Double-supported edge: removing one supporter leaves the other.
        let mut table = LabelTable::new();
        let r = parse_triple_file("a b | c\na b | d\n", &mut table).unwrap();
        let ab_c = *r.iter().next().unwrap();
        assert!(!is_bridge_triple(&r, r.leaf_set(), ab_c).unwrap());

        // Fig. 1 restricted to {a, b, c}: ab|c supports the only edge.
        let (table, r) = fig1();
        let sub: BTreeSet<LeafId> = ["a", "b", "c"]
            .iter()
            .map(|n| table.get(n).unwrap())
            .collect();
        let ab_c = *r.iter().next().unwrap();
        assert!(is_bridge_triple(&r, &sub, ab_c).unwrap());

        let ab_d = Triple::new(
            table.get("a").unwrap(),
            table.get("b").unwrap(),
            table.get("d").unwrap(),
        )
        .unwrap();
        assert!(matches!(
            is_bridge_triple(&r, r.leaf_set(), ab_d),
            Err(Error::TripleNotInSet)
        ));
    }

    #[test]
    fn component_pair_is_unordered() {
        let (table, _) = fig1();
        let a = table.get("a").unwrap();
        let b = table.get("b").unwrap();
        let c = table.get("c").unwrap();
        let p = ComponentPair::new(BTreeSet::from([a, b]), BTreeSet::from([c])).unwrap();
        let q = ComponentPair::new(BTreeSet::from([c]), BTreeSet::from([a, b])).unwrap();
        assert_eq!(p, q);
        assert!(ComponentPair::new(BTreeSet::new(), BTreeSet::from([c])).is_err());
        assert!(
            ComponentPair::new(BTreeSet::from([a, c]), BTreeSet::from([c])).is_err(),
            "sides must be disjoint"
        );
    }

    #[test]
    fn dot_output_carries_support_labels() {
        let (table, r) = fig1();
        let g = build_ahograph(&r, r.leaf_set());
        let dot = g.to_dot(&table);
        assert!(dot.contains("\"a\" -- \"b\" [label=\"c\"]"), "{dot}");
        assert!(dot.contains("\"a\" -- \"c\" [label=\"d\"]"), "{dot}");
    }
}
