//! Sub-Riemannian calculus on hypersurfaces of the Heisenberg group and
//! numerical certification of the monotonicity of the rescaled horizontal
//! perimeter of graphical strips.
//!
//! Layout:
//! - [`heis`]: group law, dilations, gauge, left-invariant frame, and the
//!   fields `ζ`, `f`, `ρ` attached to a center `p0`;
//! - [`surface`]: level-set surfaces, horizontal Gauss map, H-mean curvature,
//!   graphical strips and their chart;
//! - [`calculus`]: tangential horizontal calculus and identity / integration
//!   by parts verifiers;
//! - [`perimeter`]: H-perimeter of strip ∩ gauge ball, profiles, limits;
//! - [`quadrature`], [`rng`]: numerical plumbing.

// `!(x > 0.0)` is used on purpose so that NaN fails parameter checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod calculus;
pub mod error;
pub mod heis;
pub mod perimeter;
pub mod quadrature;
pub mod rng;
pub mod surface;

#[cfg(test)]
mod testing;

pub use error::{Error, Result};
