//! Exact-arithmetic kernel for finite-dimensional diagonally braided
//! bialgebras presented by generators and relations.
//!
//! The crate builds such bialgebras from presentations, constructs their
//! cleft objects and bosonizations, extracts Hopf 2-cocycles from sections,
//! solves invariant Hochschild 2-cocycle spaces, exponentiates Hochschild
//! cocycles into multiplicative cocycles and decides whether a given cocycle
//! deformation is gauge-equivalent to an exponential.
//!
//! Everything is computed over exact rationals (optionally polynomial in
//! declared parameters); no floating point is used anywhere.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod scalar;
pub mod linalg;
pub mod word;
pub mod algebra;
pub mod cleft;
pub mod cocycle;
pub mod smash;
pub mod hochschild;
pub mod instances;
