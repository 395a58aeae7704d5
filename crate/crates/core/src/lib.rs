//! Rooted-triple machinery for supertree work: consistency checking via
//! BUILD, triple-closure computation (the classical consistency-test method
//! and a faster component-pair method), greedy minimum representative sets
//! justified by an underlying matroid, tree identification diagnostics, a
//! quartet counterexample, and a brute-force oracle that double-checks all
//! of it on small instances.
//!
//! # Example
//!
//! ```
//! use rooted_triples::{closure, parse_triple_file, representative, LabelTable};
//!
//! let mut table = LabelTable::new();
//! let r = parse_triple_file("a b | c\na c | d\nb c | d\n", &mut table).unwrap();
//!
//! // The closure adds ab|d, the one extra triple every supertree shows.
//! let cl = closure::closure_fast(&r).unwrap();
//! assert_eq!(cl.len(), 4);
//!
//! // Two of the three input triples already carry all of that information.
//! let basis = representative::greedy_min_rep(&r).unwrap();
//! assert_eq!(basis.len(), 2);
//! ```

pub mod ahograph;
pub mod build;
pub mod closure;
pub mod error;
pub mod label;
pub mod matroid;
pub mod oracle;
pub mod quartet;
pub mod random;
pub mod representative;
pub mod tree;
pub mod tree_ident;
pub mod triple;

pub use ahograph::{build_ahograph, is_bridge_triple, Ahograph, ComponentPair};
pub use error::{Error, Result};
pub use label::{LabelTable, LeafId};
pub use tree::{parse_newick, Hierarchy, RootedTree};
pub use triple::{parse_triple_file, Triple, TripleSet};
