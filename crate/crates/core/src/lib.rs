//! Finite superrings and superfields: structures whose sum and product are
//! set-valued.
//!
//! The crate covers axiom checking for finite tables, the polynomial superring
//! `R[X]` with Euclid division, quotient superfields `F(p)`, algebraic
//! extensions and bounded closure towers.

pub mod axioms;
pub mod cli;
pub mod conformance;
pub mod elemset;
pub mod error;
pub mod extension;
pub mod ideals;
pub mod morphism;
pub mod poly;
pub mod quotient;
pub mod ring;
pub mod structures;

pub use axioms::{validate, ClassReport, Verdict, Witness};
pub use elemset::{ElemSet, ElementId};
pub use error::{Error, Result};
pub use ring::FiniteSuperring;
