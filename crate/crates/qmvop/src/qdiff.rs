//! Matrix-valued q-difference operators: the Askey-Wilson-type pair D₁, D₂
//! with eigenvalue matrices Λ_n(i), the radial Casimir operators acting on
//! spherical functions, the decoupled operators K₁, K₂ obtained by
//! Lᵀ-conjugation, and the invertibility certificate for Φ̂₀.
//!
//! Conventions: D_i f̆ = M_i(z) f̆(qz) + M_i(z⁻¹) f̆(z/q) with x = μ(z) and
//! M₂(z) = J M₁(z) J. The eigenvalue normalization (q⁻¹-q)⁻² of Λ_n equals
//! the (1-q²)⁻² radial form after multiplying through by q².

use nalgebra::DMatrix;

use crate::mvop::{c_coeff, l_breve, pn_recursive};
use crate::qalg::{b_coeff, full_spherical, full_spherical_at, j_matrix, phi_scalar};
use crate::qseries::{qpoch_exp, C64};
use crate::{Error, HalfInt, QContext, Result, Which};

fn check_z(z: C64) -> Result<()> {
    if z.norm_sqr() == 0.0 {
        return Err(Error::Pole("z = 0".into()));
    }
    if (z - C64::new(1.0, 0.0)).norm() < 1e-12 || (z + C64::new(1.0, 0.0)).norm() < 1e-12 {
        return Err(Error::Pole(format!("coefficient pole at z = ±1, got z = {z}")));
    }
    Ok(())
}

/// Coefficient matrix M₁(z) of D₁: upper-bidiagonal,
/// M₁(z)_{i,i+1} = -q^{1-i}(1-q^{2i+2})/(1-q²)² · z/(1-z²),
/// M₁(z)_{i,i}   =  q^{1-i}/(1-q²)² · (1-q^{2i+2}z²)/(1-z²).
pub fn m1_matrix(ell: HalfInt, qc: &QContext, z: C64) -> Result<DMatrix<C64>> {
    ell.require_spin()?;
    check_z(z)?;
    let q = qc.q();
    let d = ell.dim();
    let one = C64::new(1.0, 0.0);
    let denom = (1.0 - q * q) * (1.0 - q * q);
    let zfac = one - z * z;
    let mut m = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
    for i in 0..d {
        let qi = q.powi(1 - i as i32);
        m[(i, i)] = (one - z * z * q.powi(2 * i as i32 + 2)) * qi / (denom * zfac);
        if i + 1 < d {
            m[(i, i + 1)] = -z * qi * (1.0 - q.powi(2 * i as i32 + 2)) / (denom * zfac);
        }
    }
    Ok(m)
}

/// M_i(z): M₁ or its J-conjugate M₂ = J M₁ J.
pub fn m_matrix(ell: HalfInt, qc: &QContext, z: C64, which: Which) -> Result<DMatrix<C64>> {
    let m = m1_matrix(ell, qc, z)?;
    Ok(match which {
        Which::One => m,
        Which::Two => {
            let j = j_matrix(ell.dim()).map(|v| C64::new(v, 0.0));
            &j * m * &j
        }
    })
}

/// Eigenvalue matrix Λ_n(i): diagonal with entries
/// (q^{-j-n-1} + q^{j+n+1})/(q⁻¹-q)², reversed for i = 2.
pub fn lambda_matrix(ell: HalfInt, n: u32, qc: &QContext, which: Which) -> DMatrix<f64> {
    let q = qc.q();
    let d = ell.dim();
    let denom = (1.0 / q - q) * (1.0 / q - q);
    DMatrix::from_fn(d, d, |r, c| {
        if r != c {
            return 0.0;
        }
        let j = match which {
            Which::One => r as i32,
            Which::Two => (d - 1 - r) as i32,
        };
        (q.powi(-j - n as i32 - 1) + q.powi(j + n as i32 + 1)) / denom
    })
}

/// Applies D_i to a z↔z⁻¹-symmetric matrix function given as its breve form
/// f̆: (D_i f)(μ(z)) = M_i(z) f̆(qz) + M_i(z⁻¹) f̆(z/q). The output is checked
/// to be invariant under z ↔ z⁻¹ (a function of x); violation beyond
/// tolerance is an error rather than being silently symmetrized.
pub fn apply_d<F>(ell: HalfInt, which: Which, breve: F, qc: &QContext, z: C64) -> Result<DMatrix<C64>>
where
    F: Fn(C64) -> DMatrix<C64>,
{
    check_z(z)?;
    let at = |w: C64| -> Result<DMatrix<C64>> {
        Ok(m_matrix(ell, qc, w, which)? * breve(w * qc.q())
            + m_matrix(ell, qc, w.inv(), which)? * breve(w / qc.q()))
    };
    let out = at(z)?;
    let mirrored = at(z.inv())?;
    let scale = out.iter().fold(1.0_f64, |a, v| a.max(v.norm()));
    let res = (&out - &mirrored).iter().fold(0.0_f64, |a, v| a.max(v.norm()));
    if res > qc.tol_abs().max(1e-9) * scale {
        return Err(Error::NumericConsistency(format!(
            "apply_d output not symmetric under z ↔ 1/z (residual {res:.3e}); input is not a function of x"
        )));
    }
    Ok(out)
}

/// Radial Casimir coefficient matrices (M_i^ℓ(z), N_i^ℓ(z)) in the 0..2ℓ
/// indexing: M tridiagonal, N diagonal, which = 2 gives the J-conjugates.
/// Poles at q²z² = 1.
pub fn radial_casimir(
    ell: HalfInt,
    qc: &QContext,
    z: C64,
    which: Which,
) -> Result<(DMatrix<C64>, DMatrix<C64>)> {
    ell.require_spin()?;
    let q = qc.q();
    let one = C64::new(1.0, 0.0);
    if (one - z * z * q * q).norm() < 1e-12 {
        return Err(Error::Pole(format!("radial coefficients have a pole at q²z² = 1, got z = {z}")));
    }
    let two_l = ell.twice();
    let d = ell.dim();
    let denom1 = (1.0 - q * q) * (1.0 - q * q);
    let qz2 = one - z * z * q * q;
    let mut m = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
    let mut n = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
    for idx in 0..d {
        let two_m = 2 * idx as i64 - two_l;
        let mm = two_m as f64 / 2.0;
        let bm = b_coeff(two_l, two_m, q);
        let bm1 = b_coeff(two_l, two_m + 2, q);
        n[(idx, idx)] = (one - z * z) * q.powf(3.0 + mm) / (denom1 * qz2);
        m[(idx, idx)] = (one - z * z * q.powi(4)) * q.powf(1.0 - mm) / (denom1 * qz2)
            - z * z * q.powf(2.0 + mm) * (bm * bm + bm1 * bm1) / (qz2 * qz2);
        if idx + 1 < d {
            m[(idx, idx + 1)] = z * q.powf(mm + 1.0) * (bm1 * bm1) / (qz2 * qz2);
        }
        if idx > 0 {
            m[(idx, idx - 1)] = z * z * z * q.powf(mm + 3.0) * (bm * bm) / (qz2 * qz2);
        }
    }
    Ok(match which {
        Which::One => (m, n),
        Which::Two => {
            let j = j_matrix(d).map(|v| C64::new(v, 0.0));
            (&j * m * &j, &j * n * &j)
        }
    })
}

/// Decoupled operator coefficients: K₁(z) diagonal, K₂(z) tridiagonal, with
/// the conjugation identity K_i(z)·L̆ᵀ(qz) = L̆ᵀ(z)·M_i(z).
pub fn decoupled_k(ell: HalfInt, qc: &QContext, z: C64, which: Which) -> Result<DMatrix<C64>> {
    ell.require_spin()?;
    check_z(z)?;
    let q = qc.q();
    let two_l = ell.twice() as i32;
    let d = ell.dim();
    let one = C64::new(1.0, 0.0);
    let denom = (1.0 - q * q) * (1.0 - q * q);
    let zfac = one - z * z;
    let mut k = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
    match which {
        Which::One => {
            for i in 0..d {
                k[(i, i)] =
                    (one - z * z * q.powi(2 * i as i32 + 2)) * q.powi(1 - i as i32) / (denom * zfac);
            }
        }
        Which::Two => {
            for i in 0..d {
                let ii = i as i32;
                let pre = q.powi(ii - two_l + 1) / denom;
                k[(i, i)] = (one - z * z * q.powi(2 * ii + 2)) * 2.0 * pre
                    * (1.0 + q.powi(2 * two_l + 2))
                    / ((1.0 + q.powi(2 * ii)) * (1.0 + q.powi(2 * ii + 2)))
                    / zfac;
                if i > 0 {
                    k[(i, i - 1)] = -z * pre * (1.0 - q.powi(2 * two_l - 2 * ii + 2)) / zfac;
                }
                if i + 1 < d {
                    k[(i, i + 1)] = -(one - z * z * q.powi(2 * ii + 2))
                        * (one - z * z * q.powi(2 * ii + 4))
                        * pre
                        * ((1.0 - q.powi(2 * two_l + 2 * ii + 4)) * (1.0 - q.powi(2 * ii + 2)).powi(2)
                            / ((1.0 - q.powi(4 * ii + 6))
                                * (1.0 - q.powi(4 * ii + 2))
                                * (1.0 + q.powi(2 * ii + 2)).powi(2)))
                        / (z * zfac);
                }
            }
        }
    }
    Ok(k)
}

/// Max-norm of Φ̂_n(A^λ) - Φ̂_0(A^λ)·P_n(μ(q^{λ+1})).
pub fn phi0_factorization_residual(ell: HalfInt, n: u32, lambda: i64, qc: &QContext) -> Result<f64> {
    let phin = full_spherical(ell, n, lambda, qc)?;
    let phi0 = full_spherical(ell, 0, lambda, qc)?;
    let pn = pn_recursive(ell, n, qc)?.eval(phi_scalar(lambda, qc));
    Ok((phin - phi0 * pn).iter().fold(0.0_f64, |a, &v| a.max(v.abs())))
}

/// Determinant certificate for Φ̂₀(A^λ): the product
/// det Φ̂₀(A^{-λ-1})·det Φ̂₀(A^{λ-1}) against Π_k 4c_k(ℓ)(q^{2+2λ}, q^{2-2λ};q²)_k,
/// which vanishes by an exact zero factor precisely for 1 <= |λ| <= 2ℓ.
#[derive(Debug, Clone)]
pub struct InvertibilityCertificate {
    /// det Φ̂₀(A^λ)
    pub det_phi0: f64,
    /// det Φ̂₀(A^{-λ-1}) · det Φ̂₀(A^{λ-1})
    pub det_product: f64,
    /// Π_k 4 c_k(ℓ) (q^{2+2λ}, q^{2-2λ}; q²)_k; exactly 0.0 in the degenerate band
    pub t_product: f64,
    /// |det_product - t_product| scaled by a Hadamard bound of the factors
    pub residual: f64,
    /// 1 <= |λ| <= 2ℓ
    pub degenerate: bool,
}

pub fn invertibility_certificate(
    ell: HalfInt,
    lambda: i64,
    qc: &QContext,
) -> Result<InvertibilityCertificate> {
    ell.require_spin()?;
    let q = qc.q();
    let two_l = ell.twice();
    let phi_lam = full_spherical(ell, 0, lambda, qc)?;
    let det_phi0 = phi_lam.determinant();
    let a = full_spherical(ell, 0, -lambda - 1, qc)?;
    let b = full_spherical(ell, 0, lambda - 1, qc)?;
    let det_product = a.determinant() * b.determinant();
    let mut t_product = 1.0;
    for k in 0..=two_l as u32 {
        t_product *= 4.0
            * c_coeff(k, ell, qc)
            * qpoch_exp::<f64>(2 + 2 * lambda, 2, q, k)
            * qpoch_exp::<f64>(2 - 2 * lambda, 2, q, k);
    }
    let scale = hadamard_bound(&a) * hadamard_bound(&b);
    let residual = (det_product - t_product).abs() / scale.max(1.0);
    Ok(InvertibilityCertificate {
        det_phi0,
        det_product,
        t_product,
        residual,
        degenerate: lambda != 0 && lambda.abs() <= two_l,
    })
}

fn hadamard_bound(m: &DMatrix<f64>) -> f64 {
    (0..m.nrows()).map(|r| m.row(r).norm()).product()
}

/// Residual of the z ↔ z⁻¹ symmetry requirement
/// Ψ(z) N₁(q⁻²z⁻¹) = M₁(z) Ψ(qz) with Ψ(q^λ) = Φ̂₀(A^λ) Φ̂₀(A^{-λ-2})⁻¹,
/// evaluated on the Laurent continuation at real z > 0 (scale-normalized).
pub fn psi_symmetry_residual(ell: HalfInt, z: f64, qc: &QContext) -> Result<f64> {
    let psi = |w: f64| -> Result<DMatrix<f64>> {
        let num = full_spherical_at(ell, 0, w, qc)?;
        let den = full_spherical_at(ell, 0, 1.0 / (qc.q() * qc.q() * w), qc)?;
        den.try_inverse()
            .map(|d| num * d)
            .ok_or_else(|| Error::InternalConsistency("Φ̂₀ not invertible at the sampled z".into()))
    };
    let q = qc.q();
    let zc = C64::new(z, 0.0);
    let (m1, _) = radial_casimir(ell, qc, zc, Which::One)?;
    let (_, n1) = radial_casimir(ell, qc, C64::new(1.0 / (q * q * z), 0.0), Which::One)?;
    let lhs = psi(z)? * n1.map(|v| v.re);
    let rhs = m1.map(|v| v.re) * psi(q * z)?;
    let scale = lhs.iter().chain(rhs.iter()).fold(1.0_f64, |a, &v| a.max(v.abs()));
    Ok((lhs - rhs).iter().fold(0.0_f64, |a, &v| a.max(v.abs())) / scale)
}
