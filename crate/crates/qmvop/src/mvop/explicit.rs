use nalgebra::DMatrix;

use crate::qseries::{cont_q_ultra_z, q_racah, qpoch_exp, qpoch_t, TorusPoint, C64};
use crate::{HalfInt, QContext, Result};

/// Coefficient β_n(i,j) of R_n(x)_{ij} = β_n(i,j) C_{n+j-i}(x;q^{2i+2}|q²);
/// zero when n + j < i (negative-degree convention).
fn rn_coeff(two_l: i64, n: u32, i: u32, j: u32, qc: &QContext) -> Result<f64> {
    let q = qc.q();
    let (n_i, i_i, j_i) = (n as i64, i as i64, j as i64);
    if n_i + j_i - i_i < 0 {
        return Ok(0.0);
    }
    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
    let mut v = sign * 0.5_f64.powi(n as i32);
    v *= qpoch_t::<f64>(q * q, q * q, n) * qpoch_exp::<f64>(2 * two_l + 4, 2, q, n)
        / (qpoch_exp::<f64>(2 * j_i + 2, 2, q, n) * qpoch_exp::<f64>(2 * two_l - 2 * j_i + 2, 2, q, n));
    v *= qpoch_exp::<f64>(-2 * two_l, 2, q, i) * qpoch_exp::<f64>(-2 * j_i - 2 * n_i, 2, q, i)
        / (qpoch_t::<f64>(q * q, q * q, i) * qpoch_exp::<f64>(2 * two_l + 4, 2, q, i));
    v *= qpoch_t::<f64>(q * q, q * q, (n_i + j_i - i_i) as u32)
        / qpoch_exp::<f64>(4 * i_i + 4, 2, q, (n_i + j_i - i_i) as u32);
    v *= q.powi((j_i * (2 * i_i + 1) + 2 * i_i * (two_l + n_i + 1) - i_i * i_i) as i32);
    v *= q_racah(i, 0, 0, -2 * n_i - 2 * j_i - 2, -2 * two_l - 2, 2, qc, j)?;
    Ok(v)
}

/// R̆_n(z) = Lᵀ(μ(z))·Q_n(μ(z)) from the closed form, at complex z ≠ 0.
pub fn rn_breve(ell: HalfInt, n: u32, qc: &QContext, z: C64) -> Result<DMatrix<C64>> {
    ell.require_spin()?;
    let two_l = ell.twice();
    let d = ell.dim();
    let q2 = qc.q() * qc.q();
    let mut m = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
    for i in 0..d as u32 {
        for j in 0..d as u32 {
            let c = rn_coeff(two_l, n, i, j, qc)?;
            if c == 0.0 {
                continue;
            }
            let deg = (n + j - i) as u32;
            m[(i as usize, j as usize)] =
                cont_q_ultra_z(deg, q2.powi(i as i32 + 1), q2, z, qc.precision()) * c;
        }
    }
    Ok(m)
}

/// R_n(x) entrywise: β_n(i,j)·C_{n+j-i}(x;q^{2i+2}|q²). R_0 = Lᵀ.
pub fn rn_explicit(ell: HalfInt, n: u32, qc: &QContext, x: f64) -> Result<DMatrix<f64>> {
    let m = rn_breve(ell, n, qc, TorusPoint::from_x(x).z())?;
    Ok(m.map(|v| v.re))
}

/// P_n(x) entrywise from the explicit sum over k of q-Racah ×
/// two-q-ultraspherical products; terms with k > n + j are skipped before the
/// q-Racah factor (whose 4φ3 would be undefined there) is touched.
pub fn pn_explicit(ell: HalfInt, n: u32, qc: &QContext, x: f64) -> Result<DMatrix<f64>> {
    ell.require_spin()?;
    let two_l = ell.twice();
    let d = ell.dim();
    let q = qc.q();
    let q2 = q * q;
    let z = TorusPoint::from_x(x).z();
    let mut m = DMatrix::zeros(d, d);
    for i in 0..d as u32 {
        for j in 0..d as u32 {
            let (i_i, j_i, n_i) = (i as i64, j as i64, n as i64);
            let mut tot = 0.0;
            for k in i..=two_l as u32 {
                let k_i = k as i64;
                if k_i > n_i + j_i {
                    // (q^{-2j-2n};q²)_k = 0
                    continue;
                }
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let mut v = sign
                    * q.powi(
                        (n_i + (2 * k_i + 1) * (k_i - i_i) + j_i * (2 * k_i + 1) + 2 * k_i * (two_l + n_i + 1)
                            - k_i * k_i) as i32,
                    );
                v *= qpoch_t::<f64>(q2, q2, k) * qpoch_t::<f64>(q2, q2, k + i)
                    / (qpoch_t::<f64>(q2, q2, 2 * k) * qpoch_t::<f64>(q2, q2, i));
                v *= qpoch_exp::<f64>(-2 * two_l, 2, q, k) * qpoch_exp::<f64>(-2 * j_i - 2 * n_i, 2, q, k)
                    / (qpoch_t::<f64>(q2, q2, k) * qpoch_exp::<f64>(2 * two_l + 4, 2, q, k));
                v *= qpoch_t::<f64>(q2, q2, (n_i + j_i - k_i) as u32)
                    / qpoch_exp::<f64>(4 * k_i + 4, 2, q, (n_i + j_i - k_i) as u32);
                v *= q_racah(k, 0, 0, -2 * n_i - 2 * j_i - 2, -2 * two_l - 2, 2, qc, j)?;
                let c1 = cont_q_ultra_z(k - i, q2.powi(-(k as i32)), q2, z, qc.precision()).re;
                let c2 =
                    cont_q_ultra_z((n_i + j_i - k_i) as u32, q2.powi(k as i32 + 1), q2, z, qc.precision()).re;
                tot += v * c1 * c2;
            }
            m[(i as usize, j as usize)] = tot;
        }
    }
    Ok(m)
}

/// The sum whose vanishing expresses that P_n has degree n (entries above the
/// diagonal would otherwise contribute degree n+j-i > n): for j > i
///
/// Σ_k (-1)^k q^{...} (...)·(q^{2+2k};q²)_{n+j-k}/(q^{4k+4};q²)_{n+j-k}
///      ·(q^{-2k};q²)_{k-i}/(q²;q²)_{k-i}·R_k(μ(j);...) = 0,
///
/// the last ratio being the leading coefficient of C_{k-i}(x;q^{-2k}|q²).
pub fn vanishing_sum(ell: HalfInt, n: u32, i: u32, j: u32, qc: &QContext) -> Result<f64> {
    ell.require_spin()?;
    let two_l = ell.twice();
    let q = qc.q();
    let q2 = q * q;
    let (i_i, j_i, n_i) = (i as i64, j as i64, n as i64);
    let mut tot = 0.0;
    for k in i..=two_l as u32 {
        let k_i = k as i64;
        if k_i > n_i + j_i {
            continue;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let mut v = sign
            * q.powi(
                ((2 * k_i + 1) * (k_i - i_i) + j_i * (2 * k_i + 1) + 2 * k_i * (two_l + n_i + 1) - k_i * k_i)
                    as i32,
            );
        v *= qpoch_t::<f64>(q2, q2, k) * qpoch_t::<f64>(q2, q2, k + i) / qpoch_t::<f64>(q2, q2, 2 * k);
        v *= qpoch_exp::<f64>(-2 * two_l, 2, q, k) * qpoch_exp::<f64>(-2 * j_i - 2 * n_i, 2, q, k)
            / (qpoch_t::<f64>(q2, q2, k) * qpoch_exp::<f64>(2 * two_l + 4, 2, q, k));
        v *= qpoch_exp::<f64>(2 + 2 * k_i, 2, q, (n_i + j_i - k_i) as u32)
            / qpoch_exp::<f64>(4 * k_i + 4, 2, q, (n_i + j_i - k_i) as u32);
        v *= qpoch_exp::<f64>(-2 * k_i, 2, q, k - i) / qpoch_t::<f64>(q2, q2, k - i);
        v *= q_racah(k, 0, 0, -2 * n_i - 2 * j_i - 2, -2 * two_l - 2, 2, qc, j)?;
        tot += v;
    }
    Ok(tot)
}
