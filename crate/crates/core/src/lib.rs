//! Exact and numerical engine for the rotationally invariant anisotropic oscillator
//! `H_g = H_osc + g omega p_phi`: phase-space algebra, classical orbits, truncated
//! Fock-space operators, the conformal bridge and the related parameter maps.
#![no_std]

extern crate alloc;

pub mod aniso;
pub mod bridge;
pub mod classdyn;
pub mod coupling;
pub mod error;
pub mod fockeng;
pub mod landau;
pub mod linalg;
pub mod phasealg;
pub mod report;
pub mod scalar;
pub mod suites;

pub use coupling::{Coupling, HiddenExponents, HiddenKind, Phase, Strength};
pub use error::{Error, Result};
pub use report::{Check, Report};

