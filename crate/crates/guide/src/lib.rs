//! Book-to-doc-test bridge for the `csl-trap` guide.
//!
//! Each module below inlines one chapter of the rendered guide (`book/src/`)
//! as its documentation, so every fenced Rust block in the book is compiled
//! and executed by `cargo test --doc`. If the library's API or numbers drift,
//! the book fails CI instead of quietly going stale.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/collapse-heating.md")]
pub mod collapse_heating {}

#[doc = include_str!("../../../book/src/noise-budget.md")]
pub mod noise_budget {}

#[doc = include_str!("../../../book/src/feasibility.md")]
pub mod feasibility {}

#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
