//! Finite-dimensional representations of U_q(su(2)) and U_q(su(2) ⊕ su(2)),
//! the coideal subalgebra B, branching intertwiners (Clebsch-Gordan
//! coefficients), spherical functions on powers of A, Casimir elements and
//! the weight's Laurent coefficients.

mod branching;
mod coideal;
mod spherical;
mod spin;

pub use branching::{branching, cgc_bottom_sq, xi_map, Intertwiner};
pub use coideal::{bab_residual, casimir_rep, casimir_scalar, coideal_rep, lemma_cm_residual, CoidealRep};
pub use spherical::{
    full_spherical, full_spherical_at, phi_scalar, spherical_diag, spherical_diag_at, weight_laurent,
};
pub use spin::{b_coeff, spin_rep, SpinRep};

use nalgebra::DMatrix;

/// The index-reversal involution J: e_p -> e_{dim-1-p} as a matrix.
pub fn j_matrix(dim: usize) -> DMatrix<f64> {
    DMatrix::from_fn(dim, dim, |r, c| if r + c == dim - 1 { 1.0 } else { 0.0 })
}
