//! Chain invariants of matroids.
//!
//! For a matroid `M = (A, rk)` and `k >= 1`, the sums run over the `(k+1)^n`
//! chains `S_1 ⊆ S_2 ⊆ … ⊆ S_k ⊆ A`. The crate computes, exactly over the
//! rationals:
//!
//! * the chain Whitney rank generating polynomial `W^k` and the chain Tutte
//!   polynomial `T^k` (2k variables),
//! * the chain characteristic polynomial `χ^k` by three independent routes
//!   (signed chain sum, `T^k` evaluation, Möbius decomposition over the
//!   lattice of flats),
//! * the Möbius polynomial `M(s,t)` and the chain Möbius function `μ^k`,
//! * split chain Tutte polynomials and the deletion/contraction recursion,
//! * coupled multicoloring and coupled multicommodity flow polynomials of
//!   graphs, together with brute-force counting oracles they are verified
//!   against.
//!
//! Everything that enumerates an exponential space is guarded by a
//! [`Budget`] and, with the default `parallel` feature, partitioned across
//! threads with rayon. Sequential `*_seq` entry points are always available
//! and produce identical canonical polynomials.

pub mod budget;
pub mod chain;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod matroid;
pub mod poly;
pub mod report;

pub use budget::Budget;
pub use error::{Error, Result};
pub use matroid::{Matroid, Subset};
pub use poly::{MultiPoly, VarSet};
pub use report::{Check, Report, Status};
