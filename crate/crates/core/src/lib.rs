//! Explicit time-marching stencil schemes for the 2D acoustic wave equation.
//!
//! Schemes are derived from the spherical-means (Poisson) representation of the
//! solution: the data at each time level is interpolated on a stencil with an
//! exact-rational Lagrange basis, and the disc integrals of the resulting
//! polynomials are evaluated in closed form. Every scheme coefficient is a
//! polynomial in the Courant number `λ = cτ/h` with rational coefficients.
//!
//! The crate is organized bottom-up:
//!
//! - [`interpolation`]: monomial ordering, stencil nodes and the Lagrange basis.
//! - [`quadrature`]: closed-form disc integrals of monomials plus a numerical oracle.
//! - [`scheme`]: first-step and two-step coefficient tables, the six named schemes.
//! - [`stability`]: von Neumann symbol and the maximal stable Courant number.
//! - [`simulator`]: grid time-marching and the relative L² error benchmark.
//! - [`benchmark`]: reference error tables and row definitions for reproduction runs.

pub mod benchmark;
pub mod error;
pub mod interpolation;
pub mod poly;
pub mod quadrature;
pub mod scheme;
pub mod simulator;
pub mod stability;

pub use error::{Error, Result};
pub use interpolation::{lagrange_basis, LagrangeBasis, MonomialExponents, StencilOffset};
pub use poly::{LambdaPoly, Polynomial, Rational};
pub use scheme::{named_scheme, SchemeName, SchemeSpec};
pub use simulator::{Boundary, Grid2D, SimConfig, SimReport};
