//! Deterministic compressed sensing matrices built from additive character
//! sequences over GF(p^m).
//!
//! The crate is organized bottom-up:
//!
//! - [`galois`]: GF(p^m) arithmetic with exp/log/trace tables, primitive
//!   polynomial search, minimal polynomials and additive character sums.
//! - [`lfsr`]: shift-register generators for trace sequences and the
//!   combined column sequences.
//! - [`sensing`]: the additive character matrix plus Gaussian and partial
//!   Fourier comparison ensembles.
//! - [`analysis`]: coherence, Welch and sparsity bounds, tight-frame check,
//!   Gram spectra and condition-number statistics.
//! - [`recovery`]: sparse signals, noise model, matching pursuit and the
//!   recovery experiment harnesses.
//! - [`cli`]: the command-line driver behind the `charsense` binary.
//!
//! ```
//! use charsense::galois::FieldContext;
//! use charsense::sensing::construction_1a;
//!
//! let matrix = construction_1a(3, 2).unwrap();
//! assert_eq!((matrix.rows(), matrix.cols()), (9, 81));
//! let field = FieldContext::new(3, 2, None).unwrap();
//! assert_eq!(field.order(), 9);
//! ```

pub mod analysis;
pub mod cli;
mod error;
pub mod galois;
pub mod lfsr;
pub mod linalg;
pub mod recovery;
pub mod rng;
pub mod sensing;

pub use error::{Error, Result};
