//! Leaf-labeled rooted trees with arena storage, Newick I/O, and the
//! displayed-triple relation.
//!
//! Tree identity is hierarchy equality: two trees are considered equal iff
//! their cluster sets coincide, which for leaf-labeled rooted trees is
//! isomorphism.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::label::{LabelTable, LeafId};
use crate::triple::{Triple, TripleSet};

/// The cluster set of a rooted tree: a laminar family over the leaf set
/// containing the full leaf set and every singleton.
pub type Hierarchy = BTreeSet<BTreeSet<LeafId>>;

#[derive(Debug, Clone)]
struct Node {
    parent: Option<usize>,
    children: Vec<usize>,
    leaf: Option<LeafId>,
    depth: usize,
    cluster: BTreeSet<LeafId>,
}

/// A rooted tree in which every inner vertex other than the root has at
/// least two children (degree >= 3) and the root has at least two children
/// unless the tree is a single leaf.
#[derive(Debug, Clone)]
pub struct RootedTree {
    nodes: Vec<Node>,
    root: usize,
    leaves: BTreeSet<LeafId>,
    leaf_node: HashMap<LeafId, usize>,
}

impl RootedTree {
    /// The tree consisting of one leaf.
    pub fn leaf(id: LeafId) -> RootedTree {
        let node = Node {
            parent: None,
            children: Vec::new(),
            leaf: Some(id),
            depth: 0,
            cluster: BTreeSet::from([id]),
        };
        RootedTree {
            nodes: vec![node],
            root: 0,
            leaves: BTreeSet::from([id]),
            leaf_node: HashMap::from([(id, 0)]),
        }
    }

    /// Join subtrees under a fresh root. Needs at least two children with
    /// pairwise disjoint leaf sets.
    pub fn from_children(children: Vec<RootedTree>) -> Result<RootedTree> {
        if children.len() < 2 {
            return Err(Error::Newick(format!(
                "inner vertex with {} child(ren)",
                children.len()
            )));
        }
        let mut nodes = vec![Node {
            parent: None,
            children: Vec::new(),
            leaf: None,
            depth: 0,
            cluster: BTreeSet::new(),
        }];
        let mut leaves = BTreeSet::new();
        for sub in children {
            let offset = nodes.len();
            for mut node in sub.nodes {
                node.parent = Some(node.parent.map_or(0, |p| p + offset));
                for c in &mut node.children {
                    *c += offset;
                }
                nodes.push(node);
            }
            nodes[0].children.push(offset + sub.root);
            for l in sub.leaves {
                if !leaves.insert(l) {
                    return Err(Error::Newick(format!("duplicate leaf id {l:?}")));
                }
            }
        }
        let mut tree = RootedTree {
            nodes,
            root: 0,
            leaves,
            leaf_node: HashMap::new(),
        };
        tree.rebuild_indexes();
        tree.leaf_node = tree
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| n.leaf.map(|l| (l, i)))
            .collect();
        Ok(tree)
    }

    fn rebuild_indexes(&mut self) {
        // depths and clusters, top-down then bottom-up
        let order = self.preorder();
        for &v in &order {
            self.nodes[v].depth = match self.nodes[v].parent {
                Some(p) => self.nodes[p].depth + 1,
                None => 0,
            };
        }
        for &v in order.iter().rev() {
            let mut cluster = BTreeSet::new();
            if let Some(l) = self.nodes[v].leaf {
                cluster.insert(l);
            }
            for ci in 0..self.nodes[v].children.len() {
                let c = self.nodes[v].children[ci];
                let child_cluster = self.nodes[c].cluster.clone();
                cluster.extend(child_cluster);
            }
            self.nodes[v].cluster = cluster;
        }
    }

    fn preorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(self.nodes[v].children.iter().copied());
        }
        order
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.nodes[v].children
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.nodes[v].parent
    }

    pub fn is_leaf_node(&self, v: usize) -> bool {
        self.nodes[v].leaf.is_some()
    }

    pub fn leaf_label(&self, v: usize) -> Option<LeafId> {
        self.nodes[v].leaf
    }

    pub fn child_count(&self, v: usize) -> usize {
        self.nodes[v].children.len()
    }

    pub fn leaf_set(&self) -> &BTreeSet<LeafId> {
        &self.leaves
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    /// The leaf set of the subtree rooted at `v`.
    pub fn cluster(&self, v: usize) -> &BTreeSet<LeafId> {
        &self.nodes[v].cluster
    }

    pub fn inner_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&v| self.nodes[v].leaf.is_none())
    }

    /// Edges whose endpoints are both inner vertices, parent first.
    pub fn inner_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in self.inner_nodes() {
            if let Some(p) = self.nodes[v].parent {
                if self.nodes[p].leaf.is_none() {
                    out.push((p, v));
                }
            }
        }
        out
    }

    /// True iff every inner vertex has exactly two children (a binary
    /// rooted tree; a single leaf counts as binary).
    pub fn is_binary(&self) -> bool {
        self.inner_nodes().all(|v| self.child_count(v) == 2)
    }

    pub fn lca(&self, x: LeafId, y: LeafId) -> Result<usize> {
        let mut u = *self.leaf_node.get(&x).ok_or(Error::MissingLeaf(x))?;
        let mut v = *self.leaf_node.get(&y).ok_or(Error::MissingLeaf(y))?;
        while self.nodes[u].depth > self.nodes[v].depth {
            u = self.nodes[u].parent.expect("deeper node has a parent");
        }
        while self.nodes[v].depth > self.nodes[u].depth {
            v = self.nodes[v].parent.expect("deeper node has a parent");
        }
        while u != v {
            u = self.nodes[u].parent.expect("distinct nodes have parents");
            v = self.nodes[v].parent.expect("distinct nodes have parents");
        }
        Ok(u)
    }

    /// True iff this tree displays `ab|c`: the last common ancestor of
    /// `a, b` is a strict descendant of the last common ancestor of all
    /// three, i.e. `c` lies outside the cluster of `lca(a, b)`.
    pub fn displays(&self, t: Triple) -> Result<bool> {
        for l in t.leaves() {
            if !self.leaves.contains(&l) {
                return Err(Error::MissingLeaf(l));
            }
        }
        let u = self.lca(t.a(), t.b())?;
        Ok(!self.nodes[u].cluster.contains(&t.c()))
    }

    /// The set of all triples displayed by this tree, in canonical order.
    pub fn displayed_triples(&self) -> TripleSet {
        let leaves: Vec<LeafId> = self.leaves.iter().copied().collect();
        let mut out = Vec::new();
        for i in 0..leaves.len() {
            for j in i + 1..leaves.len() {
                let u = self.lca(leaves[i], leaves[j]).expect("own leaves");
                let cluster = &self.nodes[u].cluster;
                for &z in &leaves {
                    if !cluster.contains(&z) {
                        out.push(Triple::new(leaves[i], leaves[j], z).expect("distinct"));
                    }
                }
            }
        }
        out.sort_unstable();
        TripleSet::from_triples(out)
    }

    /// The hierarchy (cluster set) of this tree.
    pub fn hierarchy(&self) -> Hierarchy {
        self.nodes.iter().map(|n| n.cluster.clone()).collect()
    }

    /// True iff `self` refines `coarser`, i.e. every cluster of `coarser`
    /// is a cluster of `self`. Both trees must share one leaf set.
    pub fn refines(&self, coarser: &RootedTree) -> Result<bool> {
        if self.leaves != coarser.leaves {
            return Err(Error::LeafSetMismatch);
        }
        let own = self.hierarchy();
        Ok(coarser.nodes.iter().all(|n| own.contains(&n.cluster)))
    }

    /// Leaf-labeled isomorphism via hierarchy equality.
    pub fn trees_equal(&self, other: &RootedTree) -> bool {
        self.leaves == other.leaves && self.hierarchy() == other.hierarchy()
    }

    /// Serialize as Newick with children ordered by smallest leaf, so equal
    /// trees print identically.
    pub fn to_newick(&self, table: &LabelTable) -> String {
        let mut s = String::new();
        self.write_newick(self.root, table, &mut s);
        s.push(';');
        s
    }

    fn write_newick(&self, v: usize, table: &LabelTable, out: &mut String) {
        if let Some(l) = self.nodes[v].leaf {
            out.push_str(table.name(l));
            return;
        }
        let mut kids: Vec<usize> = self.nodes[v].children.clone();
        kids.sort_by_key(|&c| self.nodes[c].cluster.iter().next().copied());
        out.push('(');
        for (i, c) in kids.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            self.write_newick(*c, table, out);
        }
        out.push(')');
    }

    /// Rebuild the unique tree whose cluster set is `h`. The family must be
    /// laminar and contain its ground set and every singleton.
    pub fn from_hierarchy(h: &Hierarchy) -> Result<RootedTree> {
        if !crate::tree::is_hierarchy(h) {
            return Err(Error::NotAHierarchy);
        }
        let ground: BTreeSet<LeafId> = h.iter().flatten().copied().collect();
        if ground.is_empty() {
            return Err(Error::EmptyLeafSet);
        }
        build_from_clusters(&ground, h)
    }
}

fn build_from_clusters(cluster: &BTreeSet<LeafId>, h: &Hierarchy) -> Result<RootedTree> {
    if cluster.len() == 1 {
        return Ok(RootedTree::leaf(*cluster.iter().next().unwrap()));
    }
    // Children are the maximal members strictly below `cluster`.
    let mut children: Vec<&BTreeSet<LeafId>> = Vec::new();
    let mut covered: BTreeSet<LeafId> = BTreeSet::new();
    let mut below: Vec<&BTreeSet<LeafId>> = h
        .iter()
        .filter(|m| m.len() < cluster.len() && m.is_subset(cluster))
        .collect();
    below.sort_by_key(|m| std::cmp::Reverse(m.len()));
    for m in below {
        if m.iter().any(|l| covered.contains(l)) {
            continue;
        }
        covered.extend(m.iter().copied());
        children.push(m);
    }
    debug_assert_eq!(covered, *cluster, "singletons guarantee full cover");
    let subtrees = children
        .into_iter()
        .map(|m| build_from_clusters(m, h))
        .collect::<Result<Vec<_>>>()?;
    RootedTree::from_children(subtrees)
}

/// True iff `h` is a hierarchy: pairwise disjoint-or-nested members that
/// include the ground set and all singletons.
pub fn is_hierarchy(h: &Hierarchy) -> bool {
    let ground: BTreeSet<LeafId> = h.iter().flatten().copied().collect();
    if ground.is_empty() || !h.contains(&ground) {
        return false;
    }
    for l in &ground {
        if !h.contains(&BTreeSet::from([*l])) {
            return false;
        }
    }
    let members: Vec<&BTreeSet<LeafId>> = h.iter().collect();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let (a, b) = (members[i], members[j]);
            let inter = a.intersection(b).count();
            if inter != 0 && inter != a.len().min(b.len()) {
                return false;
            }
        }
    }
    true
}

/// Parse a Newick string: leaf labels only, `;`-terminated, no branch
/// lengths or inner labels.
pub fn parse_newick(text: &str, table: &mut LabelTable) -> Result<RootedTree> {
    let mut p = NewickParser {
        chars: text.chars().collect(),
        pos: 0,
        table,
        seen: BTreeSet::new(),
    };
    p.skip_ws();
    let tree = p.subtree()?;
    p.skip_ws();
    if !p.eat(';') {
        return Err(Error::Newick("missing terminating `;`".into()));
    }
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(Error::Newick("trailing text after `;`".into()));
    }
    Ok(tree)
}

struct NewickParser<'a> {
    chars: Vec<char>,
    pos: usize,
    table: &'a mut LabelTable,
    seen: BTreeSet<LeafId>,
}

impl NewickParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn subtree(&mut self) -> Result<RootedTree> {
        self.skip_ws();
        if self.eat('(') {
            let mut children = vec![self.subtree()?];
            loop {
                self.skip_ws();
                if self.eat(',') {
                    children.push(self.subtree()?);
                } else if self.eat(')') {
                    break;
                } else {
                    return Err(Error::Newick(match self.peek() {
                        Some(c) => format!("unexpected `{c}` at offset {}", self.pos),
                        None => "unbalanced parentheses".into(),
                    }));
                }
            }
            self.skip_ws();
            if self
                .peek()
                .is_some_and(|c| !matches!(c, '(' | ')' | ',' | ';'))
            {
                return Err(Error::Newick(format!(
                    "inner labels are not supported (offset {})",
                    self.pos
                )));
            }
            if children.len() == 1 {
                return Err(Error::Newick("inner vertex with one child".into()));
            }
            RootedTree::from_children(children)
        } else {
            let start = self.pos;
            while self
                .peek()
                .is_some_and(|c| !c.is_whitespace() && !matches!(c, '(' | ')' | ',' | ';'))
            {
                self.pos += 1;
            }
            if self.pos == start {
                return Err(Error::Newick(match self.peek() {
                    Some(c) => format!("unexpected `{c}` at offset {}", self.pos),
                    None => "unexpected end of input".into(),
                }));
            }
            let label: String = self.chars[start..self.pos].iter().collect();
            let id = self.table.intern(&label)?;
            if !self.seen.insert(id) {
                return Err(Error::Newick(format!("duplicate leaf label `{label}`")));
            }
            Ok(RootedTree::leaf(id))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::parse_triple_file;

    fn table_with(names: &[&str]) -> LabelTable {
        let mut t = LabelTable::new();
        t.intern_all(names.iter().copied()).unwrap();
        t
    }

    /// Independent displays check: scan every cluster instead of walking to
    /// the lca.
    fn displays_by_cluster_scan(t: &RootedTree, trip: Triple) -> bool {
        t.hierarchy().iter().any(|c| {
            c.contains(&trip.a()) && c.contains(&trip.b()) && !c.contains(&trip.c())
        })
    }

    #[test]
    fn parses_fig1_tree_and_round_trips() {
        let mut table = table_with(&["a", "b", "c", "d"]);
        let t = parse_newick("(((a,b),c),d);", &mut table).unwrap();
        assert_eq!(t.leaf_count(), 4);
        let rendered = t.to_newick(&table);
        let mut table2 = LabelTable::new();
        let back = parse_newick(&rendered, &mut table2).unwrap();
        // Same label universe in both tables: compare via fresh parse of the
        // original into table2's id space.
        let orig = parse_newick("(((a,b),c),d);", &mut table2).unwrap();
        assert!(back.trees_equal(&orig));
    }

    #[test]
    fn parses_multifurcating_and_single_leaf() {
        let mut table = LabelTable::new();
        let t = parse_newick("((a,b,c),d,e);", &mut table).unwrap();
        assert_eq!(t.leaf_count(), 5);
        assert_eq!(t.child_count(t.root()), 3);
        let single = parse_newick("x;", &mut table).unwrap();
        assert_eq!(single.leaf_count(), 1);
        assert_eq!(
            single.hierarchy().len(),
            1,
            "single-leaf hierarchy is {{{{x}}}}"
        );
    }

    #[test]
    fn newick_error_cases() {
        let mut table = LabelTable::new();
        assert!(matches!(
            parse_newick("((a,b);", &mut table),
            Err(Error::Newick(_))
        ));
        assert!(matches!(
            parse_newick("(a,b,a);", &mut table),
            Err(Error::Newick(_))
        ));
        assert!(matches!(
            parse_newick("((a),b);", &mut table),
            Err(Error::Newick(_))
        ));
        assert!(matches!(
            parse_newick("(a,b)", &mut table),
            Err(Error::Newick(_))
        ));
    }

    #[test]
    fn fig1_hierarchy() {
        let mut table = table_with(&["a", "b", "c", "d"]);
        let t = parse_newick("(((a,b),c),d);", &mut table).unwrap();
        let name_sets: BTreeSet<Vec<&str>> = t
            .hierarchy()
            .iter()
            .map(|c| c.iter().map(|&l| table.name(l)).collect())
            .collect();
        let expected: BTreeSet<Vec<&str>> = [
            vec!["a"],
            vec!["b"],
            vec!["c"],
            vec!["d"],
            vec!["a", "b"],
            vec!["a", "b", "c"],
            vec!["a", "b", "c", "d"],
        ]
        .into_iter()
        .collect();
        assert_eq!(name_sets, expected);
    }

    #[test]
    fn trees_equal_ignores_child_order() {
        let mut table = LabelTable::new();
        let t1 = parse_newick("(((a,b),c),d);", &mut table).unwrap();
        let t2 = parse_newick("(d,(c,(b,a)));", &mut table).unwrap();
        assert!(t1.trees_equal(&t2));
    }

    #[test]
    fn displays_fig1_cases() {
        let mut table = LabelTable::new();
        let t = parse_newick("(((a,b),c),d);", &mut table).unwrap();
        let r = parse_triple_file("a b | c\na c | b", &mut table).unwrap();
        let triples: Vec<Triple> = r.iter().copied().collect();
        assert!(t.displays(triples[0]).unwrap(), "ab|c displayed");
        assert!(!t.displays(triples[1]).unwrap(), "ac|b not displayed");

        let star = parse_newick("(a,b,c);", &mut table).unwrap();
        assert!(!star.displays(triples[0]).unwrap(), "star resolves nothing");

        let mut t2 = LabelTable::new();
        let tree = parse_newick("(a,b);", &mut t2).unwrap();
        let r2 = parse_triple_file("a b | q", &mut t2).unwrap();
        let q_triple = *r2.iter().next().unwrap();
        assert!(matches!(tree.displays(q_triple), Err(Error::MissingLeaf(_))));
    }

    #[test]
    fn displayed_triples_fig1_and_star() {
        let mut table = LabelTable::new();
        let t = parse_newick("(((a,b),c),d);", &mut table).unwrap();
        let expected = parse_triple_file("a b | c\na b | d\na c | d\nb c | d", &mut table).unwrap();
        assert_eq!(t.displayed_triples(), expected);

        let star = parse_newick("(x,y,z);", &mut table).unwrap();
        assert!(star.displayed_triples().is_empty());
    }

    #[test]
    fn displayed_triples_counts_cross_checked_by_cluster_scan() {
        let mut table = LabelTable::new();
        // Binary caterpillar on 6 leaves: all C(6,3) = 20 trios resolved.
        let bin = parse_newick("(((((a,b),c),d),e),f);", &mut table).unwrap();
        assert_eq!(bin.displayed_triples().len(), 20);
        // The tree identified by {ab|d, bc|d, cd|e, de|f}: 19 of 20.
        let t = parse_newick("((((a,b,c),d),e),f);", &mut table).unwrap();
        let displayed = t.displayed_triples();
        assert_eq!(displayed.len(), 19);
        // Every reported triple and no other passes the independent check.
        let leaves: Vec<LeafId> = t.leaf_set().iter().copied().collect();
        for i in 0..leaves.len() {
            for j in i + 1..leaves.len() {
                for k in 0..leaves.len() {
                    if k == i || k == j {
                        continue;
                    }
                    let trip = Triple::new(leaves[i], leaves[j], leaves[k]).unwrap();
                    assert_eq!(
                        displayed.contains(&trip),
                        displays_by_cluster_scan(&t, trip)
                    );
                }
            }
        }
    }

    #[test]
    fn refines_examples() {
        let mut table = LabelTable::new();
        let t = parse_newick("(((a,b),c),d);", &mut table).unwrap();
        assert!(t.refines(&t).unwrap(), "reflexive");
        // Fig. 1: T refines the less resolved tree displaying R3.
        let t3 = parse_newick("((a,b,c),d);", &mut table).unwrap();
        assert!(t.refines(&t3).unwrap());
        assert!(!t3.refines(&t).unwrap());
        // Fig. 4 stand-ins: mutual non-refinement.
        let t1 = parse_newick("((((a,b),c),d),e);", &mut table).unwrap();
        let t2 = parse_newick("((a,b),(c,d),e);", &mut table).unwrap();
        assert!(!t1.refines(&t2).unwrap());
        assert!(!t2.refines(&t1).unwrap());
        let small = parse_newick("(a,b);", &mut table).unwrap();
        assert!(matches!(t.refines(&small), Err(Error::LeafSetMismatch)));
    }

    #[test]
    fn hierarchy_round_trip() {
        let mut table = LabelTable::new();
        for nwk in ["(((a,b),c),d);", "((a,b,c),d,e);", "x;", "((a,b),(c,d),e);"] {
            let t = parse_newick(nwk, &mut table).unwrap();
            let back = RootedTree::from_hierarchy(&t.hierarchy()).unwrap();
            assert!(t.trees_equal(&back), "round trip failed for {nwk}");
        }
    }

    #[test]
    fn is_hierarchy_rejects_crossing_families() {
        let mut table = table_with(&["a", "b", "c"]);
        let a = table.get("a").unwrap();
        let b = table.get("b").unwrap();
        let c = table.get("c").unwrap();
        let mut h: Hierarchy = BTreeSet::new();
        h.insert(BTreeSet::from([a]));
        h.insert(BTreeSet::from([b]));
        h.insert(BTreeSet::from([c]));
        h.insert(BTreeSet::from([a, b]));
        h.insert(BTreeSet::from([b, c]));
        h.insert(BTreeSet::from([a, b, c]));
        assert!(!is_hierarchy(&h));
        h.remove(&BTreeSet::from([b, c]));
        assert!(is_hierarchy(&h));
    }
}
