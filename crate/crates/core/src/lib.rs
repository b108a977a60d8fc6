//! Exact Molien series and integrity bases for finite point groups.
//!
//! Layers, bottom up: [`exact_arith`] scalars, [`polyalg`] polynomials and
//! elimination, [`groups`] representations and coupling tensors, [`molien`]
//! generating functions, [`integrity`] basis construction and enumeration.

pub mod error;
pub mod exact_arith;
pub mod groups;
pub mod integrity;
pub mod molien;
pub mod polyalg;
