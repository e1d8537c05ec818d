//! Syzygies, Koszul submodules, saturations and bigraded Hilbert functions
//! for bihomogeneous ideals in `R = k[s, u, t, v]`, the coordinate ring of
//! P¹×P¹.
//!
//! The algebraic layers ([`poly`], [`groebner`], [`saturation`],
//! [`hilbert`]) are generic over the coefficient [`Field`]; the aliases
//! below fix `k = ℚ`, which is what the geometric and Koszul layers use.

pub mod bundled;
pub mod error;
pub mod field;
pub mod geometry;
pub mod groebner;
pub mod hilbert;
pub mod koszul;
pub mod module;
pub mod monomial;
pub mod poly;
pub mod saturation;
pub mod textio;

pub use error::{Error, Result};
pub use field::Field;
pub use monomial::{BiDegree, Monomial, MonomialOrder, Var};

/// Exact rationals with arbitrary-precision numerator and denominator.
pub type Q = num_rational::BigRational;

/// Polynomial in `s, u, t, v` over ℚ.
pub type BiPoly = poly::Poly<Q>;
pub type FreeModuleElement = module::ModuleElement<Q>;
pub type SubmodulePresentation = module::SubmodulePresentation<Q>;
pub type GroebnerBasis = groebner::GroebnerBasis<Q>;
