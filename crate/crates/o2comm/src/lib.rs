//! Commutator pairs close to the identity over the Cuntz algebra O2.
//!
//! The crate provides exact arithmetic on the dense *-subalgebra of O2
//! (finite sums of words `s_mu s_nu^*` in two isometries `u`, `v`), certified
//! operator-norm enclosures, the faithful binary-shift representation on
//! square-summable sequences as an independent oracle, matrices over the
//! algebra together with the amplification isomorphisms, the weighted-norm
//! Neumann/Picard solver for the defining system of the construction, the
//! `D`/`X` assembly with certified defect norms, and an exact-rational ledger
//! of the bound chain `|D||X| = O(log^5(1/eps))`.

pub mod block;
pub mod checks;
pub mod construction;
pub mod element;
pub mod error;
pub mod ledger;
pub mod norm;
pub mod opmatrix;
pub mod parse;
pub mod random;
pub mod rep;
pub mod scalar;
pub mod solver;
pub mod word;

pub use block::Mat;
pub use element::Element;
pub use error::{Error, Result};
pub use norm::NormInterval;
pub use opmatrix::{OpMatrix, ScaleParams};
pub use scalar::{Backend, Scalar};
pub use solver::{SolverParams, Tuple, TupleKind};
pub use word::{Letter, Word};
