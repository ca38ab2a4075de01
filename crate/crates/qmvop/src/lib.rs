//! Matrix-valued orthogonal polynomials of Askey-Wilson type attached to the
//! quantum pair (U_q(su(2) ⊕ su(2)), B), together with the quantum-algebra
//! objects they come from.
//!
//! The crate is organised in five modules:
//!
//! - [`qseries`]: scalar kernel — q-shifted factorials, q-binomials,
//!   continuous q-ultraspherical polynomials, q-Racah polynomials, Chebyshev
//!   polynomials and the polynomial ultraspherical weight.
//! - [`qalg`]: finite-dimensional representations of U_q(su(2)) and of the
//!   coideal subalgebra B, branching intertwiners (Clebsch-Gordan
//!   coefficients), spherical functions on powers of the group-like element A,
//!   Casimir elements and the weight's Laurent coefficients.
//! - [`mvop`]: the matrix-valued weight W, its LDU factorization, squared
//!   norms, recurrence coefficients and the polynomials P_n / Q_n / R_n with
//!   explicit and recursive constructions.
//! - [`qdiff`]: the matrix-valued q-difference operators D_1, D_2, their
//!   eigenvalue matrices, the radial Casimir operators and the decoupled
//!   operators K_1, K_2.
//! - [`verify`]: exact Gauss-Chebyshev quadrature, the orthogonality Gram
//!   computation, and a registry of named identity checks selectable by
//!   family at runtime.

mod context;
mod dd;
mod error;
mod halfint;

pub mod mvop;
pub mod qalg;
pub mod qdiff;
pub mod qseries;
pub mod verify;

pub use context::{Precision, QContext};
pub use error::{Error, Result};
pub use halfint::HalfInt;

/// Selects one of the two tensor legs / q-difference operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Which {
    One,
    Two,
}

impl Which {
    pub const BOTH: [Which; 2] = [Which::One, Which::Two];
}

impl std::fmt::Display for Which {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Which::One => write!(f, "1"),
            Which::Two => write!(f, "2"),
        }
    }
}
