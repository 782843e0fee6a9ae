//! Orthogonal projectors onto spans of non-orthogonal waveforms.
//!
//! Given atoms `a_1, a_2, ...` sampled on a uniform grid, [`DualFamily`]
//! maintains the reciprocal family `d_1..d_k` for which
//! `P_k = sum_n |a_n><d_n|` is the orthogonal projector onto
//! `span(a_1..a_k)`. Each new atom updates the duals through its residual
//! against the current span, with no matrix inversion. Candidates whose
//! residual vanishes (relative to their own norm) are rejected as dependent.
//!
//! [`oracle`] computes the same duals from the Gram matrix spectrum and is
//! used as an independent check. [`approximation`] builds best approximations
//! and updates their coefficients as atoms are added.
//!
//! ```
//! use biortho::{DualFamily, Grid, SampledFunction};
//!
//! let grid = Grid::new(0.0, 1.0, 2)?;
//! let a1 = SampledFunction::new(grid, vec![1.0, 0.0])?;
//! let a2 = SampledFunction::new(grid, vec![1.0, 1.0])?;
//! let family = DualFamily::new(grid, 1e-12)?
//!     .insert_atom(&a1)?
//!     .family
//!     .insert_atom(&a2)?
//!     .family;
//! assert_eq!(family.duals()[0].values(), &[1.0, -1.0]);
//! assert_eq!(family.duals()[1].values(), &[0.0, 1.0]);
//! # Ok::<(), biortho::Error>(())
//! ```

pub mod approximation;
pub mod cli;
pub mod csv;
pub mod dictionary;
pub mod engine;
mod error;
pub mod grid;
pub mod oracle;
pub mod verify;

pub use approximation::{
    approximation_error_curve, project, truncated_expansion, update_coefficients, ProjectionResult,
};
pub use dictionary::{build_dictionary, mexican_hat_atom, DictionaryKind, DictionarySpec};
pub use engine::{DualFamily, InsertionOutcome, InsertionStatus, DEFAULT_DEPENDENCE_TOL};
pub use error::{Error, Result};
pub use grid::{axpy, inner, norm_sq, Grid, SampledFunction};
pub use oracle::{direct_coefficients, direct_duals, gram, spectrum, GramMatrix, GramSpectrum};
