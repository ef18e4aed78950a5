//! Exact symbolic workbench for the symplectic blob algebra.
//!
//! The algebra is built twice, from independent definitions:
//!
//! * as a calculus of decorated planar diagrams — non-crossing matchings
//!   whose lines carry left/right blobs, multiplied by concatenation and
//!   straightening, with a final two-sided ideal quotient
//!   ([`diagram`]);
//! * as a presented algebra on generators E_0..E_n modulo a short list of
//!   length-reducing relations inside a partially commutative monoid
//!   ([`presented`]).
//!
//! The [`iso`] module carries the map between the two sides and certifies,
//! at desk-scale sizes and exact parameter points, that it is a
//! structure-constant-preserving bijection. Everything is computed over
//! arbitrary-precision rationals or a prime field ([`scalar`]); no floating
//! point exists anywhere in the crate.
//!
//! Start with the runnable examples (`cargo run --example ...`) or the thin
//! `symblob` binary for batch use.

pub mod algebra;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod iso;
pub mod presented;
pub mod render;
pub mod scalar;
pub mod util;

pub use algebra::{build_table, AlgebraElement, StructureTable};
pub use diagram::enumerate::{enumerate_basis, Flavor};
pub use diagram::quotient::{IdealClosure, SymplecticQuotient};
pub use diagram::{generator_diagram, Blob, Diagram, PseudoDiagram, ReducedWord};
pub use error::{Error, Result};
pub use iso::{phi_bprime, verify_isomorphism, verify_negative_control, Certificate, Context};
pub use presented::enumerate::{
    default_cap, enumerate_reduced, word_span_dimension, PresentedAlgebra,
};
pub use presented::rewrite::{Reducibility, RuleSet};
pub use presented::{commutes, CfForm, GenSet, TraceWord};
pub use scalar::{Field, Fp, ParameterSet, Rat};
