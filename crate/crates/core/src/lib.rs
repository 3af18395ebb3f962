//! Equational Horn-logic prover with proof reconstruction.
//!
//! The pipeline: parse a problem ([`problem`]), refute it by superposition
//! ([`saturation`]), turn the refutation into a direct derivation of the goal
//! ([`transform`]), re-derive every step as a proof term ([`reconstruct`]) and
//! check the result ([`kernel`]).

pub mod clause;
pub mod cli;
pub mod kbo;
pub mod kernel;
pub mod problem;
pub mod random;
pub mod sexp;
pub mod term;
pub mod transform;
pub mod tstp;
pub mod reconstruct;
pub mod rules;
pub mod saturation;
