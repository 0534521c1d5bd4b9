//! Locally conformal Kähler geometry of class-1 Hopf surfaces
//! `H_{α,β} = (ℂ² \ {0}) / ⟨(z1, z2) ↦ (α z1, β z2)⟩`, computed on the
//! global frame of `S¹ × S³`.

pub mod error;
pub mod fibration;
pub mod foliations;
pub mod frame;
pub mod metrics;
pub mod numerics;
pub mod sampling;

pub use error::{Error, Result};
