//! Exact computations with generalized virtual braid words.
//!
//! * [`scalar`]: Laurent polynomials over the rationals in the formal variables `q`, `t`.
//! * [`perm`]: permutations, (p,q)-shuffles and the bubble decomposition.
//! * [`word`]: words and word sums in the generalized virtual braid monoid.
//! * [`section`]: the generalized Matsumoto–Tits section and its recursion.
//! * [`braided`]: braided algebras by structure constants.
//! * [`tensor`], [`qshuffle`]: tensor powers, word actions and the quantum quasi-shuffle product.
//! * [`qthat`]: R-matrix and twist representations on tensor powers.
//! * [`verify`]: named verification groups used by the command line.
//!
//! Exhaustive sweeps run through [`Exec`]; with the default `parallel`
//! feature they use rayon, otherwise they run sequentially.

pub mod braided;
pub mod error;
pub mod exec;
pub mod perm;
pub mod qshuffle;
pub mod qthat;
pub mod report;
pub mod scalar;
pub mod section;
pub mod tensor;
pub mod verify;
pub mod word;

pub use braided::BraidedAlgebra;
pub use error::{Error, Result};
pub use exec::Exec;
pub use perm::{BubbleDecomposition, Permutation};
pub use qthat::OpMatrix;
pub use report::VerificationReport;
pub use scalar::Scalar;
pub use tensor::Tensor;
pub use word::{Generator, GvbWord, Kind, WordSum};
