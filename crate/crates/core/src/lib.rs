//! Numerical construction and certification of bounded univalent functions
//! in model spaces K_Θ = H² ⊖ ΘH² generated by singular inner functions.

pub mod circle_geometry;
pub mod cli_io;
pub mod hardy_numerics;
pub mod pipeline;
pub mod quadrature;
pub mod shortproof;
pub mod univalence;
