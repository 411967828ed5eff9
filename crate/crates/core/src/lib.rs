//! Exact truncated series engine for the loop-algebra to Yangian homomorphism.

pub mod cartan;
pub mod checker;
pub mod drinfeld;
pub mod error;
pub mod phi;
pub mod report;
pub mod series;
pub mod suite;
pub mod y0;
