//! Interaction-kernel reduction of the N-Queens problem.
//!
//! An `L x L` board is flattened row-major into an `L²` bit vector. The
//! interaction kernel `K` is the `L² x L²` boolean matrix whose row `i`
//! marks every cell a queen on cell `i` attacks. From it this crate builds:
//!
//! * the quadratic-form and power-of-two validity tests ([`classifier`]),
//! * the characteristic integer sequences `σᵢ` and the AND-decoding of
//!   solutions from complemented kernel rows ([`sigma_solver`]),
//! * the recursive operator tables of pointwise logical operations
//!   ([`fractal`]).
//!
//! Every kernel-derived identity is checked against the independent
//! backtracking enumerator in [`oracle`], which shares no code with the
//! kernel machinery.
//!
//! Indices are 0-based and row-major throughout: cell `(row, col)` is index
//! `row * L + col`.

pub mod bits;
pub mod board_codec;
pub mod classifier;
pub mod error;
pub mod export;
pub mod fractal;
pub mod kernel;
pub mod oracle;
pub mod sigma_solver;
pub mod spectrum;

pub use board_codec::{digit_sum_s2, BoardConfig, PVector, PatternSet};
pub use classifier::{ClassifierVerdict, QKernel};
pub use error::{Error, Result};
pub use fractal::{ExponentMatrix, FractalTable};
pub use kernel::{DecimatingMatrix, InteractionKernel};
pub use oracle::SolutionSet;
pub use sigma_solver::{DyadicClosure, SigmaSequence};
pub use spectrum::SpectrumReport;
