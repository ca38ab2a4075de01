//! The matrix-valued weight W, its LDU factorization, squared norms, leading
//! coefficients, recurrence coefficients, and the matrix-valued orthogonal
//! polynomials P_n (explicit and recursive constructions), Q_n and R_n.

mod explicit;
mod ldu;
mod matpoly;
mod recurrence;
mod weight;

pub use explicit::{pn_explicit, rn_breve, rn_explicit, vanishing_sum};
pub use ldu::{c_coeff, l_breve, ldu_beta, ldu_factors, LduFactors};
pub use matpoly::MatPoly;
pub use recurrence::{leading_coeff, norm_g, pn_recursive, recurrence_coeffs, RecurrenceCoeffs};
pub use weight::{alpha_coeff, block_split, j_eigenbasis, weight_eval};
