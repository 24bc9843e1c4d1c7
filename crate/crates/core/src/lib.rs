//! Exact finite-field algebra for Lights Out! on graphs and their Cartesian
//! products.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`] and [`gfmat`]: prime fields and dense matrices over them, with a
//!   bit-packed elimination kernel for GF(2).
//! * [`gfpoly`]: univariate polynomials over GF(p), gcd and factorisation.
//! * [`snf`]: Smith normal form of the characteristic matrix `xI - A`,
//!   invariant factors and Jordan-type factor data.
//! * [`formulas`]: nullity formulas for the Kronecker-sum operator
//!   `X -> AX - XB` and the gcd lower bounds, plus the elimination oracle.
//! * [`game`]: graphs, Cartesian products and the Lights Out! game itself.

pub mod error;
pub mod field;
pub mod formulas;
pub mod game;
pub mod gfmat;
pub mod gfpoly;
pub mod snf;

pub use error::{Error, Result};
pub use field::Field;
pub use formulas::{NullityMethod, NullityReport, Partition};
pub use game::{Graph, LightsInstance, Mode, PressSolution, PressVector};
pub use gfmat::{Matrix, RankProfile};
pub use gfpoly::{Factorization, Poly};
pub use snf::{FactorData, PolyMatrix, SnfResult};
