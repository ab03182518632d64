//! Determinant tau-functions built from the generalized μ-function, the
//! birational Weyl-group action they realise, and residual checks of the
//! bilinear relations between them.
//!
//! ```
//! use mu_tau::scalar::Mp;
//! use mu_tau::special::QContext;
//! use mu_tau::xi::SolutionParams;
//!
//! let ctx = QContext::<Mp>::from_f64(0.0, 1.0, 128)?;
//! let sp = SolutionParams::new(
//!     ctx.clone(), ctx.c(0.23, 0.11), ctx.c(0.41, 0.07), ctx.c(2.0, 0.0), 2, ctx.c(0.0, 0.0),
//! )?;
//! let xi = sp.xi_at(0, 2, 0)?;
//! assert!(xi.is_finite());
//! # Ok::<(), mu_tau::Error>(())
//! ```

// Negated float comparisons deliberately treat NaN as failing.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bilinear;
pub mod cli;
pub mod config;
pub mod error;
pub mod record;
pub mod report;
pub mod scalar;
pub mod special;
pub mod verify;
pub mod weyl;
pub mod xi;

pub use error::{Error, Result};
