//! Each guide chapter becomes a module so that `cargo test --doc` runs its
//! listings and a failure names the chapter it came from.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/scalars.md")]
pub mod scalars {}
#[doc = include_str!("../../../book/src/families.md")]
pub mod families {}
#[doc = include_str!("../../../book/src/witnesses.md")]
pub mod witnesses {}
#[doc = include_str!("../../../book/src/differential-equations.md")]
pub mod differential_equations {}
#[doc = include_str!("../../../book/src/waring.md")]
pub mod waring {}
#[doc = include_str!("../../../book/src/polya.md")]
pub mod polya {}
#[doc = include_str!("../../../book/src/constructions.md")]
pub mod constructions {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
