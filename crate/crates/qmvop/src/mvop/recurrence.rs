use nalgebra::DMatrix;

use super::matpoly::MatPoly;
use crate::dd::{Dd, Real};
use crate::qseries::qpoch_exp;
use crate::{HalfInt, Precision, QContext, Result};

/// Squared-norm matrix G_n: diagonal with entries
/// q^{2n-2ℓ}(1-q^{4ℓ+2})²/((1-q^{2n+2i+2})(1-q^{4ℓ-2i+2n+2})); strictly positive.
pub fn norm_g(ell: HalfInt, n: u32, qc: &QContext) -> DMatrix<f64> {
    let q = qc.q();
    let two_l = ell.twice() as i32;
    let n = n as i32;
    let d = ell.dim();
    DMatrix::from_fn(d, d, |r, c| {
        if r != c {
            return 0.0;
        }
        let i = r as i32;
        q.powi(2 * n - two_l) * (1.0 - q.powi(2 * two_l + 2)).powi(2)
            / ((1.0 - q.powi(2 * n + 2 * i + 2)) * (1.0 - q.powi(2 * two_l - 2 * i + 2 * n + 2)))
    })
}

/// Leading coefficient of P_n: diagonal with entries
/// 2ⁿqⁿ (q^{2i+2}, q^{4ℓ-2i+2}; q²)_n / (q², q^{4ℓ+4}; q²)_n.
pub fn leading_coeff(ell: HalfInt, n: u32, qc: &QContext) -> DMatrix<f64> {
    let q = qc.q();
    let two_l = ell.twice();
    let d = ell.dim();
    let entry = |i: i64| -> f64 {
        let num = |prec_double: bool| -> f64 {
            if prec_double {
                let a: f64 = qpoch_exp(2 * i + 2, 2, q, n);
                let b: f64 = qpoch_exp(2 * two_l - 2 * i + 2, 2, q, n);
                let c: f64 = qpoch_exp(2, 2, q, n);
                let dd: f64 = qpoch_exp(2 * two_l + 4, 2, q, n);
                a * b / (c * dd)
            } else {
                let a: Dd = qpoch_exp(2 * i + 2, 2, q, n);
                let b: Dd = qpoch_exp(2 * two_l - 2 * i + 2, 2, q, n);
                let c: Dd = qpoch_exp(2, 2, q, n);
                let dd: Dd = qpoch_exp(2 * two_l + 4, 2, q, n);
                (a * b / (c * dd)).to_f64()
            }
        };
        2.0_f64.powi(n as i32) * q.powi(n as i32) * num(qc.precision() == Precision::Double)
    };
    DMatrix::from_fn(d, d, |r, c| if r == c { entry(r as i64) } else { 0.0 })
}

/// Three-term recurrence coefficients: A_n, B_n, C_n for the polynomials P_n
/// (x P_n = P_{n+1}A_n + P_nB_n + P_{n-1}C_n) and X_n, Y_n for the monic
/// family Q_n (x Q_n = Q_{n+1} + Q_nX_n + Q_{n-1}Y_n).
#[derive(Debug, Clone)]
pub struct RecurrenceCoeffs {
    pub n: u32,
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub c: DMatrix<f64>,
    pub x: DMatrix<f64>,
    pub y: DMatrix<f64>,
}

pub fn recurrence_coeffs(ell: HalfInt, n: u32, qc: &QContext) -> RecurrenceCoeffs {
    let q = qc.q();
    let two_l = ell.twice() as i32;
    let n_i = n as i32;
    let d = ell.dim();
    let mut a = DMatrix::zeros(d, d);
    let mut b = DMatrix::zeros(d, d);
    let mut c = DMatrix::zeros(d, d);
    let mut x = DMatrix::zeros(d, d);
    let mut y = DMatrix::zeros(d, d);
    for idx in 0..d {
        let i = idx as i32;
        a[(idx, idx)] = (1.0 - q.powi(2 * n_i + 2)) * (1.0 - q.powi(2 * two_l + 2 * n_i + 4))
            / (2.0 * q * (1.0 - q.powi(2 * i + 2 * n_i + 2)) * (1.0 - q.powi(2 * two_l - 2 * i + 2 * n_i + 2)));
        c[(idx, idx)] = q / 2.0 * (1.0 - q.powi(2 * n_i)) * (1.0 - q.powi(2 * two_l + 2 * n_i + 2))
            / ((1.0 - q.powi(2 * n_i + 2 * i + 2)) * (1.0 - q.powi(2 * two_l + 2 * n_i - 2 * i + 2)));
        y[(idx, idx)] = 0.25 * (1.0 - q.powi(2 * n_i)).powi(2) * (1.0 - q.powi(2 * two_l + 2 * n_i + 2)).powi(2)
            / ((1.0 - q.powi(2 * n_i + 2 * i)) * (1.0 - q.powi(2 * two_l + 2 * n_i - 2 * i))
                * (1.0 - q.powi(2 * n_i + 2 * i + 2)) * (1.0 - q.powi(2 * two_l - 2 * i + 2 * n_i + 2)));
        if idx + 1 < d {
            b[(idx, idx + 1)] = q.powi(2 * n_i + 1) / 2.0 * (1.0 - q.powi(2 * two_l - 2 * i))
                * (1.0 - q.powi(2 * i + 2))
                / ((1.0 - q.powi(2 * two_l + 2 * n_i - 2 * i)) * (1.0 - q.powi(2 * n_i + 2 * i + 4)));
            x[(idx, idx + 1)] = q.powi(2 * n_i + 1) / 2.0 * (1.0 - q.powi(2 * i + 2)).powi(2)
                / ((1.0 - q.powi(2 * n_i + 2 * i + 2)) * (1.0 - q.powi(2 * n_i + 2 * i + 4)));
        }
        if idx > 0 {
            b[(idx, idx - 1)] = q.powi(2 * n_i + 1) / 2.0 * (1.0 - q.powi(2 * i))
                * (1.0 - q.powi(2 * two_l - 2 * i + 2))
                / ((1.0 - q.powi(2 * n_i + 2 * i)) * (1.0 - q.powi(2 * two_l - 2 * i + 2 * n_i + 4)));
            x[(idx, idx - 1)] = q.powi(2 * n_i + 1) / 2.0 * (1.0 - q.powi(2 * two_l - 2 * i + 2)).powi(2)
                / ((1.0 - q.powi(2 * two_l - 2 * i + 2 * n_i + 2))
                    * (1.0 - q.powi(2 * two_l - 2 * i + 2 * n_i + 4)));
        }
    }
    // Y_0 = 0: the (1-q^{2n})² numerator and the i = 0 denominator factor both
    // vanish at n = 0, so set it exactly rather than evaluate 0/0
    if n == 0 {
        y.fill(0.0);
    }
    RecurrenceCoeffs { n, a, b, c, x, y }
}

/// P_n built by the three-term recursion
/// P_{n+1} = (x·P_n - P_nB_n - P_{n-1}C_n)·A_n⁻¹ with P_{-1} = 0, P_0 = I;
/// A_n inversion is entrywise on the diagonal (its entries never vanish).
pub fn pn_recursive(ell: HalfInt, n: u32, qc: &QContext) -> Result<MatPoly> {
    ell.require_spin()?;
    let d = ell.dim();
    let mut prev = MatPoly::zero(d);
    let mut cur = MatPoly::identity(d);
    for k in 0..n {
        let rc = recurrence_coeffs(ell, k, qc);
        let a_inv = DMatrix::from_fn(d, d, |r, c| if r == c { 1.0 / rc.a[(r, r)] } else { 0.0 });
        let next = cur
            .shift_up()
            .sub(&cur.mul_right(&rc.b))
            .sub(&prev.mul_right(&rc.c))
            .mul_right(&a_inv);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::chebyshev_u;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn max_abs(m: &DMatrix<f64>) -> f64 {
        m.iter().fold(0.0_f64, |a, &v| a.max(v.abs()))
    }

    #[test]
    fn norm_g_base_cases() {
        let q: f64 = 0.5;
        let qc = QContext::new(q).unwrap();
        assert!((norm_g(h(0), 0, &qc)[(0, 0)] - 1.0).abs() < 1e-14);
        // ℓ = 1/2, n = 0, i = 0: q^{-1}(1-q⁴)²/((1-q²)(1-q⁴)) = q + q^{-1}
        assert!((norm_g(h(1), 0, &qc)[(0, 0)] - (q + 1.0 / q)).abs() < 1e-14);
        for tl in 0..4i64 {
            for n in 0..6 {
                assert!(norm_g(h(tl), n, &qc).diagonal().iter().all(|&v| v > 0.0));
            }
        }
    }

    #[test]
    fn leading_coeff_cases() {
        let q: f64 = 0.5;
        let qc = QContext::new(q).unwrap();
        let lc0 = leading_coeff(h(2), 0, &qc);
        assert!(max_abs(&(lc0 - DMatrix::identity(3, 3))) < 1e-14);
        // ℓ = 0: 2ⁿqⁿ(1-q²)/(1-q^{2n+2}) by telescoping
        for n in 1..6u32 {
            let got = leading_coeff(h(0), n, &qc)[(0, 0)];
            let want = 2.0_f64.powi(n as i32) * q.powi(n as i32) * (1.0 - q * q)
                / (1.0 - q.powi(2 * n as i32 + 2));
            assert!((got - want).abs() < 1e-13 * want.abs());
        }
        // J-symmetry of the diagonal: entry i equals entry 2ℓ-i
        let lc = leading_coeff(h(4), 3, &qc);
        for i in 0..5 {
            assert!((lc[(i, i)] - lc[(4 - i, 4 - i)]).abs() < 1e-15);
        }
    }

    #[test]
    fn chebyshev_case_recursion() {
        // ℓ = 0: P_n(x) = qⁿ(1-q²)/(1-q^{2n+2}) U_n(x)
        let q: f64 = 0.5;
        let qc = QContext::new(q).unwrap();
        for n in 0..8u32 {
            let p = pn_recursive(h(0), n, &qc).unwrap();
            for i in 0..9 {
                let x = -1.0 + 0.25 * i as f64;
                let want = q.powi(n as i32) * (1.0 - q * q) / (1.0 - q.powi(2 * n as i32 + 2))
                    * chebyshev_u(n, x);
                assert!((p.eval(x)[(0, 0)] - want).abs() < 1e-12, "n={n} x={x}");
            }
        }
        // and the monic coefficients collapse: X_n = 0, Y_n = 1/4 scalars
        let rc = recurrence_coeffs(h(0), 3, &qc);
        assert_eq!(rc.x[(0, 0)], 0.0);
        assert!((rc.y[(0, 0)] - 0.25).abs() < 1e-12);
        let rc0 = recurrence_coeffs(h(0), 0, &qc);
        assert_eq!(rc0.y[(0, 0)], 0.0);
    }

    #[test]
    fn degree_and_leading_match() {
        let qc = QContext::new(0.5).unwrap();
        for tl in 0..=4i64 {
            for n in [0u32, 1, 4, 8] {
                let p = pn_recursive(h(tl), n, &qc).unwrap();
                assert_eq!(p.degree(), n as usize);
                let lc = leading_coeff(h(tl), n, &qc);
                assert!(max_abs(&(p.leading() - lc)) < 1e-10, "2ℓ={tl} n={n}");
            }
        }
    }

    #[test]
    fn consistency_g_a_c_and_b_symmetry() {
        for &q in &[0.3, 0.5, 0.8] {
            let qc = QContext::new(q).unwrap();
            for tl in 0..=4i64 {
                for n in 0..=8u32 {
                    let rc = recurrence_coeffs(h(tl), n, &qc);
                    let rc1 = recurrence_coeffs(h(tl), n + 1, &qc);
                    let g = norm_g(h(tl), n, &qc);
                    let g1 = norm_g(h(tl), n + 1, &qc);
                    assert!(max_abs(&(&g1 * &rc.a - rc1.c.transpose() * &g)) < 1e-11);
                    assert!(max_abs(&(&g * &rc.b - rc.b.transpose() * &g)) < 1e-11);
                }
            }
        }
    }

    #[test]
    fn monic_recurrence_from_xy() {
        let qc = QContext::new(0.5).unwrap();
        for tl in 0..=3i64 {
            let d = (tl + 1) as usize;
            for n in 1..6u32 {
                let qn = pn_recursive(h(tl), n, &qc)
                    .unwrap()
                    .mul_right(&leading_coeff(h(tl), n, &qc).try_inverse().unwrap());
                let qn1 = pn_recursive(h(tl), n + 1, &qc)
                    .unwrap()
                    .mul_right(&leading_coeff(h(tl), n + 1, &qc).try_inverse().unwrap());
                let qm1 = pn_recursive(h(tl), n - 1, &qc)
                    .unwrap()
                    .mul_right(&leading_coeff(h(tl), n - 1, &qc).try_inverse().unwrap());
                let rc = recurrence_coeffs(h(tl), n, &qc);
                for i in 0..5 {
                    let x = -0.95 + 0.475 * i as f64;
                    let lhs = qn.eval(x) * x;
                    let rhs = qn1.eval(x) + qn.eval(x) * &rc.x + qm1.eval(x) * &rc.y;
                    assert!(max_abs(&(lhs - rhs)) < 1e-10, "2ℓ={tl} n={n} x={x}");
                }
                let _ = d;
            }
        }
    }
}
