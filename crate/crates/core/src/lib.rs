//! Exact directed categories attached to a circuit `a` (a balanced vector of
//! nonzero integers) together with a charge vector `nu`.
//!
//! The B-side is the directed category on line bundles `R(0), ..., R(n-1)`
//! whose morphisms are monomials in the bigraded super-symmetric algebra of
//! the circuit. The A-side is built combinatorially, one dimension at a time,
//! from intersection points of lifted thimble paths. [`amodelrec::verify_iso`]
//! checks that the two agree, and [`mutation`] checks the Koszul half-twist
//! relation between `a` and `-a` on Gram matrices.
//!
//! ```
//! use circuitcat::{balgebra, circuit::validate_circuit};
//!
//! let c = validate_circuit(&[2, 3, -5], &[0, 0, 0]).unwrap();
//! let arrows = balgebra::quiver(&c, 5).unwrap();
//! assert_eq!(arrows.len(), 5);
//! ```

pub mod amodel1d;
pub mod amodelrec;
pub mod balgebra;
pub mod circuit;
pub mod cli;
pub mod directed;
pub mod error;
pub mod mutation;

pub use circuit::{validate_circuit, Circuit, CobordismKind, Kind};
pub use error::{Error, Result};
