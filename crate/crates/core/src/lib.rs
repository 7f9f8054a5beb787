//! Capacitive coupling of Rydberg atoms to a superconducting transmission-line
//! resonator.
//!
//! * [`units`]: constants and the lab-unit boundary (internal units are Gaussian-CGS).
//! * [`electrostatics`]: disc/wire capacitances and the static dipole–dipole coupling.
//! * [`resonator`]: quantized wire modes, the atom–mode coupling g, Q budget, κ.
//! * [`rydberg`]: hydrogenic dipoles, surface shifts, heating and the decoherence budget.
//! * [`dynamics`]: Jaynes–Cummings evolution with Lindblad loss, transfer and entanglement.
//!
//! The guide in `book/` walks through each of these; its code listings are
//! compiled as doctests of this crate.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod electrostatics;
pub mod error;
pub mod resonator;
pub mod rydberg;
pub mod units;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/units.md")]
    mod units {}
    #[doc = include_str!("../../../book/src/electrostatics.md")]
    mod electrostatics {}
    #[doc = include_str!("../../../book/src/resonator.md")]
    mod resonator {}
    #[doc = include_str!("../../../book/src/rydberg.md")]
    mod rydberg {}
    #[doc = include_str!("../../../book/src/dynamics.md")]
    mod dynamics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
