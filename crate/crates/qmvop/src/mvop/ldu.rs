use nalgebra::DMatrix;

use crate::dd::{Dd, Real};
use crate::qseries::{cont_q_ultra_z, qpoch_t, ultra_weight_reduced, TorusPoint, C64};
use crate::{Error, HalfInt, Precision, QContext, Result};

/// Unipotent lower-triangular L, positive diagonal T and the explicit inverse
/// L⁻¹ of the LDU factorization W(x) = L(x) T(x) L(x)ᵀ.
#[derive(Debug, Clone)]
pub struct LduFactors {
    pub l: DMatrix<f64>,
    pub t: DMatrix<f64>,
    pub l_inv: DMatrix<f64>,
}

/// Diagonal constant c_k(ℓ) of T(x)_{kk} = c_k(ℓ) w(x;q^{2k+2}|q²)/(1-x²).
pub fn c_coeff(k: u32, ell: HalfInt, qc: &QContext) -> f64 {
    match qc.precision() {
        Precision::Double => c_coeff_t::<f64>(k, ell.twice(), qc.q()),
        Precision::Extended => c_coeff_t::<Dd>(k, ell.twice(), qc.q()).to_f64(),
    }
}

fn c_coeff_t<T: Real>(k: u32, two_l: i64, q: f64) -> T {
    let qt = T::from_f64(q);
    let q2 = q * q;
    let a: T = qpoch_t(q2, q2, (two_l + k as i64 + 1) as u32);
    let b: T = qpoch_t(q2, q2, (two_l - k as i64) as u32);
    let c: T = qpoch_t(q2, q2, k);
    let d: T = qpoch_t(q2, q2, 2 * k + 1);
    let e: T = qpoch_t(q2, q2, two_l as u32);
    qt.powi(-two_l) / T::from_f64(4.0) * (T::one() - qt.powi(4 * k as i64 + 2)) * a * b * c * c * c * c
        / (d * d * e * e)
}

fn l_prefactor(m: u32, k: u32, q: f64) -> f64 {
    let q2 = q * q;
    q.powi(m as i32 - k as i32) * qpoch(q2, m) * qpoch(q2, 2 * k + 1) / (qpoch(q2, m + k + 1) * qpoch(q2, k))
}

fn linv_prefactor(k: u32, n: u32, q: f64) -> f64 {
    let q2 = q * q;
    q.powi(((2 * k as i64 + 1) * (k as i64 - n as i64)) as i32) * qpoch(q2, k) * qpoch(q2, k + n)
        / (qpoch(q2, 2 * k) * qpoch(q2, n))
}

fn qpoch(q2: f64, n: u32) -> f64 {
    crate::qseries::qpoch(q2, q2, n)
}

/// LDU factors at x: L unipotent lower triangular with q-ultraspherical
/// entries, T diagonal with c_k(ℓ)·w(x;q^{2k+2}|q²)/(1-x²) (evaluated as a
/// polynomial, so x = ±1 is fine), and the closed-form L⁻¹.
pub fn ldu_factors(ell: HalfInt, qc: &QContext, x: f64) -> Result<LduFactors> {
    ell.require_spin()?;
    if x.abs() > 1.0 {
        return Err(Error::Domain(format!(
            "positivity of T holds on [-1,1] only; got x = {x} (L, L⁻¹ are polynomial — evaluate them via l_breve)"
        )));
    }
    let d = ell.dim();
    let q = qc.q();
    let q2 = q * q;
    let z = TorusPoint::from_x(x).z();
    let mut l = DMatrix::identity(d, d);
    let mut l_inv = DMatrix::identity(d, d);
    for m in 0..d as u32 {
        for k in 0..m {
            let c = cont_q_ultra_z(m - k, q2.powi(k as i32 + 1), q2, z, qc.precision()).re;
            l[(m as usize, k as usize)] = l_prefactor(m, k, q) * c;
            let ci = cont_q_ultra_z(m - k, q2.powi(-(m as i32)), q2, z, qc.precision()).re;
            l_inv[(m as usize, k as usize)] = linv_prefactor(m, k, q) * ci;
        }
    }
    let mut t = DMatrix::zeros(d, d);
    for k in 0..d as u32 {
        t[(k as usize, k as usize)] = c_coeff(k, ell, qc) * ultra_weight_reduced(k, qc, x);
    }
    Ok(LduFactors { l, t, l_inv })
}

/// L̆(z): the matrix L as a function of z with x = μ(z), valid for any
/// complex z ≠ 0 (used by the conjugated q-difference operators).
pub fn l_breve(dim: usize, qc: &QContext, z: C64) -> DMatrix<C64> {
    let q = qc.q();
    let q2 = q * q;
    let mut l = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
    for m in 0..dim as u32 {
        l[(m as usize, m as usize)] = C64::new(1.0, 0.0);
        for k in 0..m {
            let c = cont_q_ultra_z(m - k, q2.powi(k as i32 + 1), q2, z, qc.precision());
            l[(m as usize, k as usize)] = c * l_prefactor(m, k, q);
        }
    }
    l
}

/// Closed-form expansion coefficient β_k(m,n) of
/// W_{m,n} = Σ_k β_k(m,n) [w(x;q^{2k+2}|q²)/(1-x²)] C_{m-k} C_{n-k},
/// for 0 <= k <= n <= m <= 2ℓ. Equals L-prefactor(m,k)·L-prefactor(n,k)·c_k(ℓ).
pub fn ldu_beta(ell: HalfInt, m: u32, n: u32, k: u32, qc: &QContext) -> Result<f64> {
    let two_l = ell.twice();
    ell.require_spin()?;
    if !(k <= n && n <= m && (m as i64) <= two_l) {
        return Err(Error::InvalidArgument(format!(
            "ldu_beta requires 0 <= k <= n <= m <= 2ℓ, got (m,n,k)=({m},{n},{k}) at 2ℓ={two_l}"
        )));
    }
    let q = qc.q();
    let q2 = q * q;
    let v = q.powi((m + n) as i32 - 2 * k as i32) / 4.0
        * qpoch(q2, m) / qpoch(q2, m + k + 1)
        * qpoch(q2, n) / qpoch(q2, n + k + 1)
        * qpoch(q2, k).powi(2)
        * (1.0 - q.powi(4 * k as i32 + 2))
        * qpoch(q2, (two_l + k as i64 + 1) as u32)
        * qpoch(q2, (two_l - k as i64) as u32)
        / (q.powi(two_l as i32) * qpoch(q2, two_l as u32).powi(2));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mvop::weight_eval;
    use crate::qseries::chebyshev_u_ext;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn max_abs(m: &DMatrix<f64>) -> f64 {
        m.iter().fold(0.0_f64, |a, &v| a.max(v.abs()))
    }

    #[test]
    fn unit_diagonals_and_t_scalar_case() {
        let qc = QContext::new(0.5).unwrap();
        let f = ldu_factors(h(3), &qc, 0.2).unwrap();
        for i in 0..4 {
            assert_eq!(f.l[(i, i)], 1.0);
            assert_eq!(f.l_inv[(i, i)], 1.0);
        }
        // ℓ = 0: T00 = 1 (c_0(0) = 1/4 and w/(1-x²) = 4)
        let f0 = ldu_factors(h(0), &qc, 0.7).unwrap();
        assert!((f0.t[(0, 0)] - 1.0).abs() < 1e-14);
        assert!((c_coeff(0, h(0), &qc) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn factorization_and_inverse() {
        for &q in &[0.3, 0.5, 0.8] {
            let qc = QContext::new(q).unwrap();
            for tl in 0..=4i64 {
                let d = (tl + 1) as usize;
                for i in 0..=10 {
                    let x = -1.0 + 0.2 * i as f64;
                    let f = ldu_factors(h(tl), &qc, x).unwrap();
                    let w = weight_eval(h(tl), &qc, x).unwrap();
                    let scale = max_abs(&w).max(1.0);
                    assert!(
                        max_abs(&(&f.l * &f.t * f.l.transpose() - w)) < 1e-11 * scale,
                        "q={q} 2ℓ={tl} x={x}"
                    );
                    assert!(max_abs(&(&f.l * &f.l_inv - DMatrix::identity(d, d))) < 1e-11 * scale);
                }
            }
        }
        // ℓ = 3/2, q = 0.5, x = 0.2 named case
        let qc = QContext::new(0.5).unwrap();
        let f = ldu_factors(h(3), &qc, 0.2).unwrap();
        let w = weight_eval(h(3), &qc, 0.2).unwrap();
        assert!(max_abs(&(&f.l * &f.t * f.l.transpose() - w)) <= 1e-11);
        assert!(max_abs(&(&f.l * &f.l_inv - DMatrix::identity(4, 4))) <= 1e-11);
    }

    #[test]
    fn beta_preconditions_and_base_value() {
        let qc = QContext::new(0.5).unwrap();
        assert!(ldu_beta(h(2), 1, 2, 0, &qc).is_err()); // needs n <= m
        assert!(ldu_beta(h(2), 2, 1, 2, &qc).is_err()); // k > n
        // β_0(0,0) = 1/4 so that β·(w/(1-x²)) reproduces W00 = 1 at ℓ = 0
        assert!((ldu_beta(h(0), 0, 0, 0, &qc).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn beta_expansion_matches_alpha_expansion() {
        let q: f64 = 0.5;
        let qc = QContext::new(q).unwrap();
        let q2 = q * q;
        for tl in 0..=4i64 {
            for n in 0..=(tl as u32) {
                for m in n..=(tl as u32) {
                    for i in 0..21 {
                        let x = -1.0 + 0.1 * i as f64;
                        let p = TorusPoint::from_x(x);
                        let mut lhs = 0.0;
                        for t in 0..=m {
                            lhs += crate::mvop::alpha_coeff(h(tl), n, m, t, &qc).unwrap()
                                * chebyshev_u_ext((n + m) as i64 - 2 * t as i64, x);
                        }
                        let mut rhs = 0.0;
                        for k in 0..=n {
                            rhs += ldu_beta(h(tl), m, n, k, &qc).unwrap()
                                * ultra_weight_reduced(k, &qc, x)
                                * cont_q_ultra_z(m - k, q2.powi(k as i32 + 1), q2, p.z(), qc.precision()).re
                                * cont_q_ultra_z(n - k, q2.powi(k as i32 + 1), q2, p.z(), qc.precision()).re;
                        }
                        assert!(
                            (lhs - rhs).abs() < 1e-10 * lhs.abs().max(1.0),
                            "2ℓ={tl} (m,n)=({m},{n}) x={x}: {lhs} vs {rhs}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn l_breve_matches_real_axis() {
        let qc = QContext::new(0.5).unwrap();
        let x = 0.43;
        let f = ldu_factors(h(2), &qc, x).unwrap();
        let lb = l_breve(3, &qc, TorusPoint::from_x(x).z());
        for r in 0..3 {
            for c in 0..3 {
                assert!((lb[(r, c)].re - f.l[(r, c)]).abs() < 1e-13);
                assert!(lb[(r, c)].im.abs() < 1e-13);
            }
        }
    }
}
