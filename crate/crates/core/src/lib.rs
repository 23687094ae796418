//! Distance-optimal locally recoverable codes of arbitrary length.
//!
//! Codes are built as shortenings of evaluation codes whose polynomials are
//! composed with a "good" polynomial, one that is constant on each coset of a
//! small subgroup of the field. Cosets become repair groups of size `r + 1`;
//! when `(r+1)` does not divide `n`, the last group is shortened to `s`
//! points and the removed points are forced to zero through an annihilator
//! factor.
//!
//! ```
//! use shortlrc::{build_code, validate_params};
//!
//! let params = validate_params(13, 10, 5, 3).unwrap();
//! let code = build_code(&params).unwrap();
//! let f = code.field();
//! let msg: Vec<_> = (1..=5).map(|v| f.element(v).unwrap()).collect();
//! let word = code.encode(&msg).unwrap();
//! assert_eq!(word.len(), 10);
//! ```

pub mod bounds;
pub mod cli;
pub mod codefile;
pub mod construction;
pub mod error;
pub mod field;
pub mod goodpoly;
pub mod linalg;
pub mod repair;
pub mod verify;

pub use construction::{build_code, message_layout, validate_params, CodeParams, CodeSpec, MessageLayout};
pub use error::{Error, Result};
pub use field::{Field, FieldElement, Polynomial};
