//! Parameterized solvers for out-branching and directed-path problems on
//! sparse digraphs.

pub mod connectivity;
pub mod digraph;
pub mod dp;
pub mod error;
pub mod harness;
pub mod iob;
pub mod kpath;
pub mod lob;
pub mod oracle;
pub mod treewidth;

pub use digraph::{Digraph, OutBranching, OutTree, RootedInstance, UndirectedGraph};
pub use error::{Error, Result};
