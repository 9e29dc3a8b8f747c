//! Exact computations in the spherical Hecke module of `GL2(Qp)` relative to
//! an unramified maximal torus (split or non-split).
//!
//! The library provides, over exact arithmetic:
//! double-coset classification and enumeration ([`cosets`]), the spherical
//! Hecke rings with involution and Satake specialization ([`ring`]), the
//! convolution module of compactly supported functions on the double-coset
//! space together with universal Hecke operators ([`module`]), explicit
//! universal and local Shintani functions ([`shintani`]), zeta-integral
//! oracles that recompute the same values by brute force ([`zeta`]),
//! constructive ideal-membership certificates ([`certificates`]), and
//! per-prime integrality ideals of toric periods attached to modular
//! eigenforms ([`modform`]).

pub mod certificates;
pub mod cosets;
pub mod modform;
pub mod module;
pub mod shintani;
pub mod zeta;
pub mod error;
pub mod matrix;
pub mod ring;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use ring::TorusKind;
