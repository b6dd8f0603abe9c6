//! Exact equivariant `K₀` computations for Koras–Russell threefolds.
//!
//! The guide in `book/` walks through each module; its code blocks are
//! compiled as doctests of this crate.

pub mod abgroup;
pub mod arith;
pub mod fixedpoints;
pub mod json;
pub mod krmodel;
pub mod ktheory;
pub mod polyint;
pub mod quotring;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/smith.md")]
    mod smith {}
    #[doc = include_str!("../../../book/src/quotients.md")]
    mod quotients {}
    #[doc = include_str!("../../../book/src/threefolds.md")]
    mod threefolds {}
    #[doc = include_str!("../../../book/src/k0.md")]
    mod k0 {}
    #[doc = include_str!("../../../book/src/fixed-points.md")]
    mod fixed_points {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
