//! Exact computations for finite p-groups: subgroup lattices and subquotients,
//! Burnside rings and marks, the ring of subquotients and its linearization,
//! rational Dade and Mackey-Dade groups, and Mackey algebras and functors.
//!
//! ```
//! use mackey_dade::dade::dmu_dim;
//! use mackey_dade::lambda::lin_mu_direct;
//! use mackey_dade::pgroup::PGroup;
//!
//! let p = PGroup::from_spec("D8")?;
//! assert_eq!(lin_mu_direct(&p).nullspace().cols(), dmu_dim(&p)?);
//! # Ok::<(), mackey_dade::Error>(())
//! ```
//!
//! The guide in `book/` walks through each module; its snippets run as
//! doc-tests of this crate.

pub mod burnside;
pub mod dade;
pub mod error;
pub mod exactla;
pub mod group;
pub mod lambda;
pub mod mackey;
pub mod pgroup;
pub mod verify;

pub use error::{Error, Result};

// Book chapters, compiled so their snippets run under `cargo test --doc`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/burnside.md")]
    mod burnside {}
    #[doc = include_str!("../../../book/src/subquotients.md")]
    mod subquotients {}
    #[doc = include_str!("../../../book/src/dade.md")]
    mod dade {}
    #[doc = include_str!("../../../book/src/mackey.md")]
    mod mackey {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
