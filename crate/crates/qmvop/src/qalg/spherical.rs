use nalgebra::{DMatrix, DVector};

use super::branching::{admissible, branching, xi_map};
use crate::qseries::qbinom;
use crate::{Error, HalfInt, QContext, Result};

/// Diagonal of the spherical function Φ^ℓ_{ℓ₁,ℓ₂}(A^λ) in the basis
/// e_{-ℓ}, ..., e_ℓ, computed as βᵀ t^{ℓ₁,ℓ₂}(A^λ) β with t(A^λ) diagonal of
/// entries q^{-λ(i+j)}. Entry p equals Σ_{i,j} (C_{i,j,p})² q^{-λ(i+j)}.
pub fn spherical_diag(
    ell: HalfInt,
    ell1: HalfInt,
    ell2: HalfInt,
    lambda: i64,
    qc: &QContext,
) -> Result<DVector<f64>> {
    spherical_diag_impl(ell, ell1, ell2, qc, |two_ipj| {
        qc.q().sqrt().powi((-lambda * two_ipj) as i32)
    })
}

/// Laurent-series evaluation: q^λ replaced by an arbitrary real z > 0, so the
/// entries become functions z ↦ Σ (C_{i,j,p})² z^{-(i+j)}.
pub fn spherical_diag_at(
    ell: HalfInt,
    ell1: HalfInt,
    ell2: HalfInt,
    z: f64,
    qc: &QContext,
) -> Result<DVector<f64>> {
    if z <= 0.0 {
        return Err(Error::Domain(format!("Laurent evaluation requires z > 0, got {z}")));
    }
    spherical_diag_impl(ell, ell1, ell2, qc, |two_ipj| z.powf(-(two_ipj as f64) / 2.0))
}

fn spherical_diag_impl(
    ell: HalfInt,
    ell1: HalfInt,
    ell2: HalfInt,
    qc: &QContext,
    apow: impl Fn(i64) -> f64,
) -> Result<DVector<f64>> {
    if !admissible(ell1, ell2, ell) {
        return Err(Error::InvalidArgument(format!(
            "({ell1}, {ell2}, {ell}) is not an admissible triple"
        )));
    }
    let b = branching(ell1, ell2, ell, qc)?;
    let d2 = ell2.dim();
    let mut out = DVector::zeros(ell.dim());
    for p in 0..ell.dim() {
        let col = b.beta.column(p);
        let mut s = 0.0;
        for a in 0..ell1.dim() {
            for bb in 0..d2 {
                let c = col[a * d2 + bb];
                if c == 0.0 {
                    continue;
                }
                let two_ipj = (2 * a as i64 - ell1.twice()) + (2 * bb as i64 - ell2.twice());
                s += c * c * apow(two_ipj);
            }
        }
        out[p] = s;
    }
    Ok(out)
}

/// Full spherical function Φ̂^ℓ_n(A^λ): column j is the diagonal of
/// Φ^ℓ_{ξ(n,j)}(A^λ); satisfies J Φ̂ J = Φ̂.
pub fn full_spherical(ell: HalfInt, n: u32, lambda: i64, qc: &QContext) -> Result<DMatrix<f64>> {
    let d = ell.dim();
    let mut m = DMatrix::zeros(d, d);
    for j in 0..d {
        let (l1, l2) = xi_map(ell, n, j as u32)?;
        let col = spherical_diag(ell, l1, l2, lambda, qc)?;
        m.set_column(j, &col);
    }
    Ok(m)
}

/// Φ̂^ℓ_n with q^λ replaced by z > 0 (Laurent evaluation).
pub fn full_spherical_at(ell: HalfInt, n: u32, z: f64, qc: &QContext) -> Result<DMatrix<f64>> {
    let d = ell.dim();
    let mut m = DMatrix::zeros(d, d);
    for j in 0..d {
        let (l1, l2) = xi_map(ell, n, j as u32)?;
        let col = spherical_diag_at(ell, l1, l2, z, qc)?;
        m.set_column(j, &col);
    }
    Ok(m)
}

/// φ(A^λ) = μ(q^{λ+1}) = (q^{λ+1} + q^{-λ-1})/2. The self-adjoint generator
/// satisfies ψ(A^λ) = φ(A^{λ-1}).
pub fn phi_scalar(lambda: i64, qc: &QContext) -> f64 {
    let q = qc.q();
    (q.powi(lambda as i32 + 1) + q.powi(-(lambda as i32) - 1)) / 2.0
}

/// Laurent coefficient d_s^ℓ(k,p) of W(ψ)_{k,p}(A^λ) = Σ_s d_s q^{2sλ}:
/// the triple CGC-squared sum with the closed-form squares of the
/// ℓ₁+ℓ₂ = ℓ stratum. Returns 0 when s is outside |s| <= (k+p)/2 or off the
/// lattice s ≡ (k+p)/2 (mod 1). Symmetric: d_s = d_{-s}.
pub fn weight_laurent(ell: HalfInt, k: u32, p: u32, s: HalfInt, qc: &QContext) -> Result<f64> {
    let two_l = ell.twice();
    ell.require_spin()?;
    if k as i64 > two_l || p as i64 > two_l {
        return Err(Error::InvalidArgument(format!(
            "weight indices must satisfy 0 <= k,p <= 2ℓ, got ({k},{p}) at 2ℓ={two_l}"
        )));
    }
    let (k, p) = (k as i64, p as i64);
    let two_s = s.twice();
    if two_s.abs() > k + p || (two_s - (k + p)) % 2 != 0 {
        return Ok(0.0);
    }
    let q = qc.q();
    let q2 = q * q;
    let mut tot = 0.0;
    let mut two_i = -k;
    while two_i <= k {
        let two_j = two_i + two_s;
        if two_j.abs() <= p {
            let mut two_n = -two_l;
            while two_n <= two_l {
                let b5 = qbinom(two_l as u32, (two_l - two_n) / 2, q2);
                if b5 != 0.0 {
                    let b1 = qbinom(k as u32, (k - two_i) / 2, q2);
                    let b2 = qbinom((two_l - k) as u32, (two_l - k + two_n - two_i) / 2, q2);
                    let b3 = qbinom(p as u32, (p - two_j) / 2, q2);
                    let b4 = qbinom((two_l - p) as u32, (two_l - p + two_n - two_j) / 2, q2);
                    if b1 != 0.0 && b2 != 0.0 && b3 != 0.0 && b4 != 0.0 {
                        let expo = (two_i + two_j - two_n)
                            + (two_i + k) * (two_i - two_n + two_l - k) / 2
                            + (two_j + p) * (two_j - two_n + two_l - p) / 2;
                        tot += q.powi(expo as i32) * b1 * b2 * b3 * b4 / (b5 * b5);
                    }
                }
                two_n += 2;
            }
        }
        two_i += 2;
    }
    Ok(tot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::j_matrix;
    use crate::qseries::chebyshev_u;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn phi_at_one_is_one() {
        let qc = QContext::new(0.5).unwrap();
        assert_eq!(phi_scalar(-1, &qc), 1.0); // μ(q⁰) = 1
        let q = 0.5;
        assert!((phi_scalar(0, &qc) - (q + 1.0 / q) / 2.0).abs() < 1e-15);
        // λ ↔ -2-λ symmetry of μ(q^{λ+1})
        assert!((phi_scalar(-2, &qc) - phi_scalar(0, &qc)).abs() < 1e-15);
    }

    #[test]
    fn spherical_at_lambda_zero_is_ones() {
        let qc = QContext::new(0.4).unwrap();
        for (tl, tl1, tl2) in [(0, 2, 2), (2, 1, 1), (2, 3, 1), (4, 2, 2)] {
            let v = spherical_diag(h(tl), h(tl1), h(tl2), 0, &qc).unwrap();
            for x in v.iter() {
                assert!((x - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn spherical_ell_zero_is_chebyshev() {
        // Φ⁰_{n/2,n/2}(A^λ) = qⁿ(1-q²)/(1-q^{2n+2}) U_n(μ(q^{λ+1}))
        for &q in &[0.3, 0.5, 0.8] {
            let qc = QContext::new(q).unwrap();
            for n in 0..7i64 {
                for lam in -3..4 {
                    let got = spherical_diag(h(0), h(n), h(n), lam, &qc).unwrap()[0];
                    let want = q.powi(n as i32) * (1.0 - q * q) / (1.0 - q.powi(2 * n as i32 + 2))
                        * chebyshev_u(n as u32, phi_scalar(lam, &qc));
                    assert!((got - want).abs() < 1e-11 * want.abs().max(1.0), "q={q} n={n} λ={lam}");
                }
            }
        }
    }

    #[test]
    fn spherical_symmetry_under_leg_swap() {
        // Φ^ℓ_{ℓ₂,ℓ₁}(A^λ) is the index-reversal of Φ^ℓ_{ℓ₁,ℓ₂}(A^λ)
        let qc = QContext::new(0.5).unwrap();
        for (tl, tl1, tl2) in [(2, 3, 1), (1, 2, 1), (3, 4, 1)] {
            for lam in [-2i64, 1, 3] {
                let a = spherical_diag(h(tl), h(tl1), h(tl2), lam, &qc).unwrap();
                let b = spherical_diag(h(tl), h(tl2), h(tl1), lam, &qc).unwrap();
                let d = a.len();
                for i in 0..d {
                    assert!((a[i] - b[d - 1 - i]).abs() < 1e-11);
                }
            }
        }
    }

    #[test]
    fn spherical_diag_brute_force_cross_check() {
        // ℓ=1/2, ξ(0,1), λ=2 against the double CGC sum computed directly
        let qc = QContext::new(0.5).unwrap();
        let (l1, l2) = xi_map(h(1), 0, 1).unwrap();
        let v = spherical_diag(h(1), l1, l2, 2, &qc).unwrap();
        let b = branching(l1, l2, h(1), &qc).unwrap();
        for p in 0..2i64 {
            let mut s = 0.0;
            for ti in [-l1.twice(), l1.twice()] {
                for tj in (-l2.twice()..=l2.twice()).step_by(2) {
                    let c = b.cgc(ti, tj, 2 * p - 1);
                    s += c * c * 0.5f64.powf(-2.0 * (ti + tj) as f64 / 2.0);
                }
            }
            assert!((v[p as usize] - s).abs() < 1e-12);
        }
    }

    #[test]
    fn full_spherical_j_symmetry_and_trivial_cases() {
        let qc = QContext::new(0.5).unwrap();
        // ℓ=0 reduces to spherical_diag
        let m = full_spherical(h(0), 3, 2, &qc).unwrap();
        let v = spherical_diag(h(0), h(3), h(3), 2, &qc).unwrap();
        assert!((m[(0, 0)] - v[0]).abs() < 1e-14);
        // Φ̂_0(A⁰): every column is the all-ones vector
        let m0 = full_spherical(h(2), 0, 0, &qc).unwrap();
        for x in m0.iter() {
            assert!((x - 1.0).abs() < 1e-12);
        }
        for tl in 0..4i64 {
            let j = j_matrix((tl + 1) as usize);
            for n in [0u32, 1, 3] {
                for lam in [-3i64, 0, 4] {
                    let m = full_spherical(h(tl), n, lam, &qc).unwrap();
                    let sym = &j * &m * &j - &m;
                    let scale = m.iter().fold(1.0_f64, |a, &v| a.max(v.abs()));
                    let res = sym.iter().fold(0.0_f64, |a, &v| a.max(v.abs()));
                    assert!(res / scale < 1e-12);
                }
            }
        }
    }

    #[test]
    fn ortho_cgc1_sum_identity() {
        // Σ_{i,m₁,m₂} (C_{m₁,m₂,i})² q^{2(m₁+m₂)} = q^{-2ℓ}(1-q^{4ℓ+2})/(1-q²);
        // the left side is the trace of the Laurent evaluation at z = q^{-2}.
        let q: f64 = 0.5;
        let qc = QContext::new(q).unwrap();
        for tl in 0..=4i64 {
            for tl1 in 0..=6i64 {
                for tl2 in 0..=6i64 {
                    if !admissible(h(tl1), h(tl2), h(tl)) || tl1 + tl2 > tl + 6 {
                        continue;
                    }
                    let v = spherical_diag_at(h(tl), h(tl1), h(tl2), q.powi(-2), &qc).unwrap();
                    let got: f64 = v.iter().sum();
                    let want = q.powi(-tl as i32) * (1.0 - q.powi(2 * tl as i32 + 2)) / (1.0 - q * q);
                    assert!((got - want).abs() < 1e-10, "({tl1},{tl2},{tl})");
                }
            }
        }
    }

    #[test]
    fn weight_laurent_symmetry_and_base_case() {
        let qc = QContext::new(0.5).unwrap();
        assert_eq!(weight_laurent(h(0), 0, 0, h(0), &qc).unwrap(), 1.0);
        assert_eq!(weight_laurent(h(4), 1, 2, h(9), &qc).unwrap(), 0.0); // out of range
        assert_eq!(weight_laurent(h(4), 1, 2, h(0), &qc).unwrap(), 0.0); // off lattice
        for tl in 0..5i64 {
            for k in 0..=tl as u32 {
                for p in 0..=tl as u32 {
                    let mut two_s = -(k as i64 + p as i64);
                    while two_s <= k as i64 + p as i64 {
                        let a = weight_laurent(h(tl), k, p, h(two_s), &qc).unwrap();
                        let b = weight_laurent(h(tl), k, p, h(-two_s), &qc).unwrap();
                        assert!((a - b).abs() < 1e-12);
                        two_s += 2;
                    }
                }
            }
        }
    }

    #[test]
    fn weight_laurent_reconstructs_spherical_trace_pairing() {
        // Σ_s d_s^ℓ(k,p) q^{2sλ} = Σ_n Φ_{ξ(0,k)}(A^{λ-1})_nn Φ_{ξ(0,p)}(A^{-1-λ})_nn
        let qc = QContext::new(0.5).unwrap();
        let q: f64 = 0.5;
        for tl in 0..4i64 {
            for k in 0..=tl as u32 {
                for p in 0..=tl as u32 {
                    for lam in -2..3i64 {
                        let mut lhs = 0.0;
                        let mut two_s = -(k as i64 + p as i64);
                        while two_s <= k as i64 + p as i64 {
                            lhs += weight_laurent(h(tl), k, p, h(two_s), &qc).unwrap()
                                * q.powf(two_s as f64 * lam as f64);
                            two_s += 2;
                        }
                        let (k1, k2) = xi_map(h(tl), 0, k).unwrap();
                        let (p1, p2) = xi_map(h(tl), 0, p).unwrap();
                        let a = spherical_diag(h(tl), k1, k2, lam - 1, &qc).unwrap();
                        let b = spherical_diag(h(tl), p1, p2, -1 - lam, &qc).unwrap();
                        let rhs = a.dot(&b);
                        assert!((lhs - rhs).abs() < 1e-10 * rhs.abs().max(1.0));
                    }
                }
            }
        }
    }
}
