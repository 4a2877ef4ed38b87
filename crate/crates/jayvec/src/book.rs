//! Compiles every code block of the guide in `book/` as a doctest, so the
//! prose can promise that its examples run. Built only under `cfg(doctest)`.

#[doc = include_str!("../../../README.md")]
mod readme {}

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/jay-scalars.md")]
mod jay_scalars {}

#[doc = include_str!("../../../book/src/bivectors-and-jay-vectors.md")]
mod bivectors_and_jay_vectors {}

#[doc = include_str!("../../../book/src/conics.md")]
mod conics {}

#[doc = include_str!("../../../book/src/quadrics.md")]
mod quadrics {}

#[doc = include_str!("../../../book/src/plane-waves.md")]
mod plane_waves {}

#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
