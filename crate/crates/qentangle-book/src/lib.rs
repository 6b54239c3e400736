//! The guide's chapters, compiled so that their snippets run as doctests.

#[doc = include_str!("../../../book/src/overview.md")]
pub mod overview {}
#[doc = include_str!("../../../book/src/parameters.md")]
pub mod parameters {}
#[doc = include_str!("../../../book/src/special-functions.md")]
pub mod special_functions {}
#[doc = include_str!("../../../book/src/displacement.md")]
pub mod displacement {}
#[doc = include_str!("../../../book/src/entangled-state.md")]
pub mod entangled_state {}
#[doc = include_str!("../../../book/src/entropy.md")]
pub mod entropy {}
#[doc = include_str!("../../../book/src/phase.md")]
pub mod phase {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
