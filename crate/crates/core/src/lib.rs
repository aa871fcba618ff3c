//! Exact cycle structure of feedback shift registers and their cascaded
//! connections.
//!
//! The crate computes, in closed form, the cycle type of the transition
//! function of a cascaded connection of a De Bruijn FSR into a linear FSR,
//! and validates the algebra against brute-force simulation. The pieces:
//!
//! - [`gf2poly`]: polynomials over F2 (arithmetic, factorization, orders);
//! - [`cycletype`]: the monomial algebra of cycle types;
//! - [`bitlinalg`]: dense F2 linear algebra used as an independent oracle;
//! - [`affine_cycles`]: closed-form cycle types of affine permutations of
//!   quotient rings F2[X]/(P);
//! - [`fsr`]: register models, transition functions and generators;
//! - [`wreath`]: the cascade engine (closed form, fast path, general
//!   block-decomposition method, and the brute-force oracle).

pub mod affine_cycles;
pub mod bitlinalg;
pub mod cycletype;
pub mod error;
pub mod fsr;
pub mod gf2poly;
pub mod wreath;

pub use cycletype::CycleType;
pub use error::{Error, Result};
pub use gf2poly::{Factorization, Poly2, Valuation};
