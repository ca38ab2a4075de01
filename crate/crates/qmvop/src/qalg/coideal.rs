use nalgebra::DMatrix;

use super::spin::{spin_rep, SpinRep};
use crate::{Error, HalfInt, QContext, Result, Which};

/// Matrices of the coideal generators K^{±1/2}, B₁, B₂ and of A = K₁^{1/2}K₂^{1/2}
/// on the tensor space H^{ℓ₁} ⊗ H^{ℓ₂} (first leg major).
#[derive(Debug, Clone)]
pub struct CoidealRep {
    pub ell1: HalfInt,
    pub ell2: HalfInt,
    pub b1: DMatrix<f64>,
    pub b2: DMatrix<f64>,
    pub k_half: DMatrix<f64>,
    pub k_half_inv: DMatrix<f64>,
    pub a: DMatrix<f64>,
    pub a_inv: DMatrix<f64>,
    q: f64,
    leg2: SpinRep,
}

/// Assembles B₁ = q^{-1} K₁^{-1/2}K₂^{-1/2}E₁ + q F₂K₁^{-1/2}K₂^{1/2} and
/// B₂ = q^{-1} K₁^{-1/2}K₂^{-1/2}E₂ + q F₁K₁^{1/2}K₂^{-1/2} as Kronecker
/// products of the two spin legs, together with K = K₁K₂^{-1} and A.
pub fn coideal_rep(ell1: HalfInt, ell2: HalfInt, qc: &QContext) -> Result<CoidealRep> {
    ell1.require_spin()?;
    ell2.require_spin()?;
    let q = qc.q();
    let r1 = spin_rep(ell1, qc)?;
    let r2 = spin_rep(ell2, qc)?;
    let b1 = (r1.k_half_inv.clone() * &r1.e).kronecker(&r2.k_half_inv) / q
        + r1.k_half_inv.kronecker(&(&r2.f * &r2.k_half)) * q;
    let b2 = r1.k_half_inv.kronecker(&(r2.k_half_inv.clone() * &r2.e)) / q
        + (&r1.f * &r1.k_half).kronecker(&r2.k_half_inv) * q;
    let k_half = r1.k_half.kronecker(&r2.k_half_inv);
    let k_half_inv = r1.k_half_inv.kronecker(&r2.k_half);
    let a = r1.k_half.kronecker(&r2.k_half);
    let a_inv = r1.k_half_inv.kronecker(&r2.k_half_inv);
    Ok(CoidealRep { ell1, ell2, b1, b2, k_half, k_half_inv, a, a_inv, q, leg2: r2 })
}

impl CoidealRep {
    pub fn dim(&self) -> usize {
        self.ell1.dim() * self.ell2.dim()
    }

    /// Diagonal matrix of A^λ, entry q^{-λ(i+j)} at e_i ⊗ e_j (λ ∈ ℤ);
    /// i+j is half-integral when ℓ₁+ℓ₂ is, so powers go through √q.
    pub fn a_pow(&self, lambda: i64) -> DMatrix<f64> {
        let d1 = self.ell1.dim();
        let d2 = self.ell2.dim();
        let mut m = DMatrix::zeros(d1 * d2, d1 * d2);
        for a in 0..d1 {
            for b in 0..d2 {
                let two_ipj = (2 * a as i64 - self.ell1.twice()) + (2 * b as i64 - self.ell2.twice());
                let idx = a * d2 + b;
                m[(idx, idx)] = self.q.sqrt().powi((-lambda * two_ipj) as i32);
            }
        }
        m
    }
}

/// Matrix of the Casimir Ω_i = (q K_i^{-1} + q^{-1} K_i - 2)/(q - q^{-1})² + E_i F_i
/// on the tensor space; scalar ((q^{-1/2-ℓᵢ} - q^{1/2+ℓᵢ})/(q^{-1}-q))²·I.
pub fn casimir_rep(ell1: HalfInt, ell2: HalfInt, qc: &QContext, which: Which) -> Result<DMatrix<f64>> {
    ell1.require_spin()?;
    ell2.require_spin()?;
    let q = qc.q();
    let r1 = spin_rep(ell1, qc)?;
    let r2 = spin_rep(ell2, qc)?;
    let (i1, i2) = (DMatrix::identity(ell1.dim(), ell1.dim()), DMatrix::identity(ell2.dim(), ell2.dim()));
    let dim = ell1.dim() * ell2.dim();
    let (k, ki, ef) = match which {
        Which::One => (r1.k().kronecker(&i2), r1.k_inv().kronecker(&i2), (&r1.e * &r1.f).kronecker(&i2)),
        Which::Two => (i1.kronecker(&r2.k()), i1.kronecker(&r2.k_inv()), i1.kronecker(&(&r2.e * &r2.f))),
    };
    let denom = (q - 1.0 / q) * (q - 1.0 / q);
    Ok((ki * q + k / q - DMatrix::identity(dim, dim) * 2.0) / denom + ef)
}

pub use super::spin::casimir_scalar;

/// Max-norm of LHS - RHS of the BAB-decomposition of Ω_i A^λ evaluated in
/// t^{ℓ₁,ℓ₂}. λ = -1 is a pole of the decomposition.
pub fn bab_residual(ell1: HalfInt, ell2: HalfInt, lambda: i64, qc: &QContext, which: Which) -> Result<f64> {
    if lambda == -1 {
        return Err(Error::InvalidArgument(
            "BAB decomposition has a pole at λ = -1 (1 - q^{2λ+2} vanishes)".into(),
        ));
    }
    let q = qc.q();
    let c = coideal_rep(ell1, ell2, qc)?;
    let om = casimir_rep(ell1, ell2, qc, which)?;
    let ap = |m: i64| c.a_pow(m);
    let lhs = om * ap(lambda);

    let d2 = 1.0 - q.powi(2 * lambda as i32 + 2);
    let c1 = q * (1.0 - q.powi(2 * lambda as i32 + 4)) / ((1.0 - q * q).powi(2) * d2);
    let c2 = -2.0 * q * q / (1.0 - q * q).powi(2);
    let c3 = q.powi(3) * (1.0 - q.powi(2 * lambda as i32)) / ((1.0 - q * q).powi(2) * d2);
    let c4 = -q.powi(2 * lambda as i32 + 1) / (d2 * d2);
    let c5 = -q.powi(2 * lambda as i32 + 2) / (d2 * d2);
    let c6 = q.powi(lambda as i32) / (d2 * d2);
    let c7 = q.powi(3 * lambda as i32 + 3) / (d2 * d2);

    // for Ω₁ the decomposition uses (K^{1/2}, K^{-1/2}, B₁, B₂); for Ω₂ the
    // σ-flipped version swaps K^{1/2} ↔ K^{-1/2} and B₁ ↔ B₂
    let (kp, km, bx, by) = match which {
        Which::One => (&c.k_half, &c.k_half_inv, &c.b1, &c.b2),
        Which::Two => (&c.k_half_inv, &c.k_half, &c.b2, &c.b1),
    };
    let rhs = kp * ap(lambda + 1) * c1
        + ap(lambda) * c2
        + km * ap(lambda - 1) * c3
        + bx * km * by * ap(lambda + 1) * c4
        + ap(lambda + 1) * km * by * bx * c5
        + bx * km * ap(lambda + 1) * by * c6
        + km * by * ap(lambda + 1) * bx * c7;
    Ok(max_abs(&(lhs - rhs)))
}

/// Max-norm residual of Lemma cm: F₂A^λ = q^{-1}/(q^{1-λ} - q^{1+λ})
/// (K^{1/2}A^λB₁ - q^λ K^{1/2}B₁A^λ), valid for λ ∈ ℤ \ {0}.
pub fn lemma_cm_residual(ell1: HalfInt, ell2: HalfInt, lambda: i64, qc: &QContext) -> Result<f64> {
    if lambda == 0 {
        return Err(Error::InvalidArgument("Lemma cm requires λ != 0".into()));
    }
    let q = qc.q();
    let c = coideal_rep(ell1, ell2, qc)?;
    let i1 = DMatrix::identity(ell1.dim(), ell1.dim());
    let f2 = i1.kronecker(&c.leg2.f);
    let ap = c.a_pow(lambda);
    let lhs = f2 * &ap;
    let coef = (1.0 / q) / (q.powi(1 - lambda as i32) - q.powi(1 + lambda as i32));
    let rhs = (&c.k_half * &ap * &c.b1 - &c.k_half * &c.b1 * &ap * q.powi(lambda as i32)) * coef;
    Ok(max_abs(&(lhs - rhs)))
}

pub(crate) fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |a, &v| a.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_tensor_pair() {
        let qc = QContext::new(0.5).unwrap();
        let c = coideal_rep(HalfInt::ZERO, HalfInt::ZERO, &qc).unwrap();
        assert_eq!(c.b1[(0, 0)], 0.0);
        assert_eq!(c.b2[(0, 0)], 0.0);
        assert_eq!(c.k_half[(0, 0)], 1.0);
        assert_eq!(c.a[(0, 0)], 1.0);
    }

    #[test]
    fn coideal_relations_hold() {
        for &q in &[0.3, 0.5, 0.8] {
            let qc = QContext::new(q).unwrap();
            for two_l1 in 0..4 {
                for two_l2 in 0..4 {
                    let c = coideal_rep(HalfInt::from_twice(two_l1), HalfInt::from_twice(two_l2), &qc).unwrap();
                    let k = &c.k_half * &c.k_half;
                    let ki = &c.k_half_inv * &c.k_half_inv;
                    assert!(max_abs(&(&c.k_half * &c.b1 - &c.b1 * &c.k_half * q)) < 1e-12);
                    assert!(max_abs(&(&c.k_half * &c.b2 - &c.b2 * &c.k_half / q)) < 1e-12);
                    let comm = &c.b1 * &c.b2 - &c.b2 * &c.b1;
                    assert!(max_abs(&(comm - (k - ki) / (q - 1.0 / q))) < 1e-11);
                    // B₂ is the adjoint of B₁ in the orthonormal tensor basis
                    assert!(max_abs(&(c.b2.clone() - c.b1.transpose())) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn casimir_is_scalar_and_central() {
        let qc = QContext::new(0.5).unwrap();
        for (two_l1, two_l2) in [(1, 1), (2, 1), (2, 2)] {
            let l1 = HalfInt::from_twice(two_l1);
            let l2 = HalfInt::from_twice(two_l2);
            let c = coideal_rep(l1, l2, &qc).unwrap();
            for which in Which::BOTH {
                let om = casimir_rep(l1, l2, &qc, which).unwrap();
                let ell = if which == Which::One { l1 } else { l2 };
                let lam = casimir_scalar(ell, 0.5);
                let dim = c.dim();
                assert!(max_abs(&(om.clone() - DMatrix::identity(dim, dim) * lam)) < 1e-12);
                assert!(max_abs(&(&om * &c.b1 - &c.b1 * &om)) < 1e-12);
                assert!(max_abs(&(&om * &c.b2 - &c.b2 * &om)) < 1e-12);
            }
        }
    }

    #[test]
    fn casimir_scalar_at_ell_zero() {
        // ((q^{-1/2} - q^{1/2})/(q^{-1} - q))² computed directly
        let q: f64 = 0.5;
        let want = ((q.powf(-0.5) - q.powf(0.5)) / (1.0 / q - q)).powi(2);
        assert!((casimir_scalar(HalfInt::ZERO, q) - want).abs() < 1e-15);
    }

    #[test]
    fn bab_identity_and_pole() {
        let qc5 = QContext::new(0.5).unwrap();
        let h = HalfInt::from_twice(1);
        assert!(bab_residual(h, h, 0, &qc5, Which::One).unwrap() <= 1e-10);
        let qc8 = QContext::new(0.8).unwrap();
        let one = HalfInt::from_twice(2);
        assert!(bab_residual(one, one, 2, &qc8, Which::Two).unwrap() <= 1e-9);
        assert!(bab_residual(h, h, -1, &qc5, Which::One).is_err());
    }

    #[test]
    fn lemma_cm_holds_off_zero() {
        let qc = QContext::new(0.6).unwrap();
        for (two_l1, two_l2) in [(1, 1), (2, 1), (0, 2)] {
            for lam in [-3i64, -1, 1, 2] {
                let r = lemma_cm_residual(
                    HalfInt::from_twice(two_l1),
                    HalfInt::from_twice(two_l2),
                    lam,
                    &qc,
                )
                .unwrap();
                assert!(r < 1e-11, "(l1,l2,λ)=({two_l1},{two_l2},{lam}): {r}");
            }
        }
        assert!(lemma_cm_residual(HalfInt::from_twice(1), HalfInt::from_twice(1), 0, &qc).is_err());
    }
}
