//! Scalar q-series kernel: q-shifted factorials, q-binomials, continuous
//! q-ultraspherical polynomials, q-Racah polynomials, Chebyshev polynomials
//! of the second kind, and the polynomial ultraspherical weight.
//!
//! All series in scope terminate; sums accumulate term-by-term with a running
//! product and no convergence heuristics. q-Racah parameters are passed as
//! integer exponents of q so that termination and vanishing factors are
//! detected exactly.

use nalgebra::Complex;

use crate::dd::{Dd, Real};
use crate::{Error, Precision, QContext, Result};

pub type C64 = Complex<f64>;

/// q-shifted factorial (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k).
pub fn qpoch(a: f64, q: f64, n: u32) -> f64 {
    qpoch_t::<f64>(a, q, n)
}

/// (a;q)_n for complex a.
pub fn qpoch_c(a: C64, q: f64, n: u32) -> C64 {
    let mut p = C64::new(1.0, 0.0);
    let mut qk = 1.0;
    for _ in 0..n {
        p *= C64::new(1.0, 0.0) - a * qk;
        qk *= q;
    }
    p
}

/// (a;q)_infty, truncated once the remaining factors are 1 to machine precision.
pub fn qpoch_inf(a: f64, q: f64) -> f64 {
    let mut p = 1.0;
    let mut aq = a;
    while aq.abs() > 1e-19 {
        p *= 1.0 - aq;
        aq *= q;
    }
    p
}

pub(crate) fn qpoch_t<T: Real>(a: f64, q: f64, n: u32) -> T {
    let a = T::from_f64(a);
    let q = T::from_f64(q);
    let mut p = T::one();
    let mut qk = T::one();
    for _ in 0..n {
        p = p * (T::one() - a * qk);
        qk = qk * q;
    }
    p
}

/// (q^e; q^base)_n with exact detection of vanishing factors: the factor
/// 1 - q^(e + base*k) is zero iff e + base*k == 0.
pub(crate) fn qpoch_exp<T: Real>(e: i64, base: i64, q: f64, n: u32) -> T {
    let q = T::from_f64(q);
    let mut p = T::one();
    for k in 0..n as i64 {
        let ee = e + base * k;
        if ee == 0 {
            return T::zero();
        }
        p = p * (T::one() - q.powi(ee));
    }
    p
}

/// (q^e; q^base)_n extended to negative n by (a;q)_{-m} = 1/((a q^{-m};q)_m).
pub(crate) fn qpoch_exp_ext(e: i64, base: i64, q: f64, n: i64) -> f64 {
    if n >= 0 {
        qpoch_exp::<f64>(e, base, q, n as u32)
    } else {
        1.0 / qpoch_exp::<f64>(e + base * n, base, q, (-n) as u32)
    }
}

/// Gaussian binomial coefficient [n k]_q; zero for k outside 0..=n.
pub fn qbinom(n: u32, k: i64, q: f64) -> f64 {
    qbinom_t::<f64>(n, k, q)
}

pub(crate) fn qbinom_t<T: Real>(n: u32, k: i64, q: f64) -> T {
    if k < 0 || k > n as i64 {
        return T::zero();
    }
    let k = k as u32;
    let num: T = qpoch_t(q, q, n);
    let d1: T = qpoch_t(q, q, k);
    let d2: T = qpoch_t(q, q, n - k);
    num / (d1 * d2)
}

/// Chebyshev polynomial of the second kind U_n(x), by the three-term
/// recurrence; valid for all real x.
pub fn chebyshev_u(n: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for _ in 1..n {
        (prev, cur) = (cur, 2.0 * x * cur - prev);
    }
    cur
}

/// U_n extended to negative degrees by U_{-1} = 0, U_{-n-2} = -U_n.
pub(crate) fn chebyshev_u_ext(n: i64, x: f64) -> f64 {
    if n >= 0 {
        chebyshev_u(n as u32, x)
    } else if n == -1 {
        0.0
    } else {
        -chebyshev_u((-n - 2) as u32, x)
    }
}

/// A point z on the torus (or its continuation off |z| = 1) with
/// x = mu(z) = (z + 1/z)/2.
///
/// Polynomial evaluation at |x| <= 1 runs on the unit circle z = e^{i arccos x};
/// for |x| > 1 the real branch with |z| > 1 is used. Both avoid catastrophic
/// cancellation near x = ±1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusPoint {
    z: C64,
}

impl TorusPoint {
    pub fn from_z(z: C64) -> Result<Self> {
        if z.norm_sqr() == 0.0 {
            return Err(Error::InvalidArgument("torus point requires z != 0".into()));
        }
        Ok(TorusPoint { z })
    }

    pub fn from_x(x: f64) -> Self {
        let z = if x.abs() <= 1.0 {
            C64::from_polar(1.0, x.acos())
        } else if x > 1.0 {
            C64::new(x + (x * x - 1.0).sqrt(), 0.0)
        } else {
            C64::new(x - (x * x - 1.0).sqrt(), 0.0)
        };
        TorusPoint { z }
    }

    pub fn z(&self) -> C64 {
        self.z
    }

    pub fn x(&self) -> C64 {
        (self.z + self.z.inv()) * 0.5
    }

    pub fn on_unit_circle(&self) -> bool {
        (self.z.norm() - 1.0).abs() < 1e-12
    }
}

/// Continuous q-ultraspherical polynomial C_n(x;β|q) evaluated as the Laurent
/// sum Σ_r c_r z^{n-2r} at p. On the unit circle the result must be real up
/// to `qc.tol_abs()` and its real part is returned.
///
/// β = q^{-k} is allowed: vanishing coefficients annihilate out-of-range
/// terms, so C_n(x;q^{-k}|q) = 0 when n - k > k.
pub fn cont_q_ultra(n: u32, beta: f64, qc: &QContext, p: TorusPoint) -> Result<C64> {
    let v = cont_q_ultra_z(n, beta, qc.q(), p.z(), qc.precision());
    if p.on_unit_circle() {
        if v.im.abs() > qc.tol_abs() * v.re.abs().max(1.0) {
            return Err(Error::NumericConsistency(format!(
                "C_{n} not real on the unit circle: imaginary part {}",
                v.im
            )));
        }
        return Ok(C64::new(v.re, 0.0));
    }
    Ok(v)
}

/// Raw Laurent evaluation of C_n(mu(z);β|base) at arbitrary z != 0.
pub(crate) fn cont_q_ultra_z(n: u32, beta: f64, base: f64, z: C64, prec: Precision) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for r in 0..=n {
        let c = match prec {
            Precision::Double => cqu_coeff::<f64>(n, r, beta, base),
            Precision::Extended => cqu_coeff::<Dd>(n, r, beta, base).to_f64(),
        };
        if c == 0.0 {
            continue;
        }
        acc += z.powi(n as i32 - 2 * r as i32) * c;
    }
    acc
}

fn cqu_coeff<T: Real>(n: u32, r: u32, beta: f64, base: f64) -> T {
    let n1: T = qpoch_t(beta, base, r);
    let n2: T = qpoch_t(beta, base, n - r);
    let d1: T = qpoch_t(base, base, r);
    let d2: T = qpoch_t(base, base, n - r);
    n1 * n2 / (d1 * d2)
}

/// Ultraspherical weight w(x; q^{2k+2} | q²) as the real polynomial
/// 4(1-x²) · Π_{j=1}^{k} (1 - 2(2x²-1)q^{2j} + q^{4j}); strictly positive on
/// (-1,1) and zero at x = ±1.
pub fn ultra_weight(k: u32, qc: &QContext, x: f64) -> Result<f64> {
    if x.abs() > 1.0 {
        return Err(Error::Domain(format!("ultra_weight requires |x| <= 1, got {x}")));
    }
    Ok((1.0 - x * x) * ultra_weight_reduced(k, qc, x))
}

/// w(x; q^{2k+2} | q²)/(1-x²), a polynomial valid for all real x (no 0/0 at
/// the endpoints).
pub fn ultra_weight_reduced(k: u32, qc: &QContext, x: f64) -> f64 {
    match qc.precision() {
        Precision::Double => ultra_weight_reduced_t::<f64>(k, qc.q(), x),
        Precision::Extended => ultra_weight_reduced_t::<Dd>(k, qc.q(), x).to_f64(),
    }
}

fn ultra_weight_reduced_t<T: Real>(k: u32, q: f64, x: f64) -> T {
    let q = T::from_f64(q);
    let x = T::from_f64(x);
    let two = T::from_f64(2.0);
    let c2t = two * x * x - T::one(); // cos(2θ)
    let mut p = T::from_f64(4.0);
    for j in 1..=k as i64 {
        p = p * (T::one() - two * c2t * q.powi(2 * j) + q.powi(4 * j));
    }
    p
}

/// Terminating q-Racah polynomial
/// R_n(mu(j); q^a, q^b, q^g, q^d; q^base) with mu(j) = q^{-base·j} + q^{g+d+base(j+1)},
/// evaluated as the 4φ3 sum. All four parameters and the base are exact
/// integer powers of a common q, so vanishing numerator factors terminate the
/// sum exactly and a vanishing denominator before termination is an error.
pub fn q_racah(n: u32, a: i64, b: i64, g: i64, d: i64, base: u32, qc: &QContext, j: u32) -> Result<f64> {
    match qc.precision() {
        Precision::Double => q_racah_t::<f64>(n, a, b, g, d, base, qc.q(), j),
        Precision::Extended => q_racah_t::<Dd>(n, a, b, g, d, base, qc.q(), j).map(Dd::to_f64),
    }
}

fn q_racah_t<T: Real>(n: u32, a: i64, b: i64, g: i64, d: i64, base: u32, q: f64, j: u32) -> Result<T> {
    let s = base as i64;
    let n_i = n as i64;
    let j_i = j as i64;
    let num_e = [-s * n_i, a + b + s * (n_i + 1), -s * j_i, g + d + s * (j_i + 1)];
    let den_e = [a + s, b + d + s, g + s, s];
    // termination: one of αq, βδq, γq must be q^{-N·base} with N >= n, and the
    // evaluation point j must lie on the resulting finite lattice
    let lattice: Vec<i64> = [a + s, b + d + s, g + s]
        .iter()
        .filter(|&&e| e <= 0 && e % s == 0)
        .map(|&e| -e / s)
        .collect();
    if !lattice.iter().any(|&cap| cap >= n_i) {
        return Err(Error::InvalidArgument(
            "q-Racah parameter set does not terminate: none of αq, βδq, γq is q^{-N} with N >= n".into(),
        ));
    }
    if lattice.iter().copied().max().is_some_and(|cap| j_i > cap) {
        return Err(Error::InvalidArgument(format!(
            "q-Racah evaluation point j={j} outside the finite lattice"
        )));
    }
    let qt = T::from_f64(q);
    let mut sum = T::zero();
    let mut term = T::one();
    let mut i: i64 = 0;
    loop {
        sum = sum + term;
        let mut fac = T::one();
        let mut terminated = false;
        for &e in &num_e {
            let ee = e + s * i;
            if ee == 0 {
                terminated = true;
                break;
            }
            fac = fac * (T::one() - qt.powi(ee));
        }
        if terminated {
            break;
        }
        for &e in &den_e {
            let ee = e + s * i;
            if ee == 0 {
                return Err(Error::InvalidArgument(format!(
                    "q-Racah denominator (q^{e};q^{s})-factor vanished at step {i} before termination"
                )));
            }
            fac = fac / (T::one() - qt.powi(ee));
        }
        term = term * fac * qt.powi(s);
        i += 1;
        if i > 200_000 {
            return Err(Error::InvalidArgument("q-Racah sum failed to terminate".into()));
        }
    }
    Ok(sum)
}

/// R_k(mu(t); 1, 1, q^{-2m-2}, q^{-2n-2}; q²), the parameter family used by
/// the LDU lemmas and the explicit polynomial formulas.
pub fn q_racah_ldu(k: u32, m: u32, n: u32, qc: &QContext, t: u32) -> Result<f64> {
    q_racah(k, 0, 0, -2 * m as i64 - 2, -2 * n as i64 - 2, 2, qc, t)
}
