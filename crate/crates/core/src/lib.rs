//! Graded structure of Leavitt path algebras of finite graphs.
//!
//! [`graph`] holds the combinatorics, [`io`] the file formats and the
//! built-in corpus, [`term`] exact arithmetic in `L_K(E)`, [`grading`] the
//! graded matrix decompositions, [`module`] explicit sink modules, and
//! [`classify`] the Naimark test and the socular chain.

pub mod classify;
pub mod grading;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod module;
pub mod random;
pub mod report;
pub mod selfcheck;
pub mod term;
