//! Exact linear algebra over Q and F_p.
//!
//! Ranks over Q use fraction-free elimination; kernels are returned as a
//! canonical basis (reduced column echelon form) so that results can be
//! compared literally.

mod field;
mod matrix;
mod quotient_space;

pub use field::{is_prime, parse_rational, render_rational, Field, FieldTag, PrimeField, Rationals};
pub use matrix::{bareiss_rank, Matrix, QMatrix};
pub use quotient_space::QuotientSpace;
