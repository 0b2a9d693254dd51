//! Book chapters, compiled as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/symplectic.md")]
pub mod symplectic {}
#[doc = include_str!("../../../book/src/standard-form.md")]
pub mod standard_form {}
#[doc = include_str!("../../../book/src/embedding.md")]
pub mod embedding {}
#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}
#[doc = include_str!("../../../book/src/distance.md")]
pub mod distance {}
#[doc = include_str!("../../../book/src/logicals.md")]
pub mod logicals {}
#[doc = include_str!("../../../book/src/codespace.md")]
pub mod codespace {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
