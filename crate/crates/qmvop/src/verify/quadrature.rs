use nalgebra::DMatrix;

use crate::mvop::{norm_g, pn_recursive, weight_eval};
use crate::{Error, HalfInt, QContext, Result};

/// Gauss-Chebyshev rule of the second kind: nodes x_k = cos(kπ/(N+1)),
/// weights w_k = (π/(N+1))·sin²(kπ/(N+1)), exact for
/// ∫_{-1}^{1} p(x)√(1-x²)dx with deg p <= 2N-1; Σ w_k = π/2.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

pub fn gauss_chebyshev2(n: usize) -> Result<QuadratureRule> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("quadrature needs N >= 1, got {n}")));
    }
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let h = std::f64::consts::PI / (n as f64 + 1.0);
    for k in 1..=n {
        let t = k as f64 * h;
        nodes.push(t.cos());
        weights.push(h * t.sin() * t.sin());
    }
    Ok(QuadratureRule { nodes, weights })
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Σ w_k f(x_k) ≈ ∫_{-1}^{1} f(x)√(1-x²)dx.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Quadrature Gram matrix (2/π)·Σ w_k P_n(x_k)ᵀ W(x_k) P_m(x_k); equals
/// δ_{nm} G_n. Requires a conservatively exact rule: N >= n + m + 4ℓ + 2.
pub fn orthogonality_matrix(
    ell: HalfInt,
    n: u32,
    m: u32,
    qc: &QContext,
    nodes: usize,
) -> Result<DMatrix<f64>> {
    ell.require_spin()?;
    let needed = (n + m) as usize + 2 * ell.twice() as usize + 2;
    if nodes < needed {
        return Err(Error::InvalidArgument(format!(
            "insufficient quadrature nodes: got {nodes}, need at least {needed} for (n,m)=({n},{m}), 2ℓ={}",
            ell.twice()
        )));
    }
    let rule = gauss_chebyshev2(nodes)?;
    let pn = pn_recursive(ell, n, qc)?;
    let pm = pn_recursive(ell, m, qc)?;
    let d = ell.dim();
    let mut acc = DMatrix::zeros(d, d);
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        let wx = weight_eval(ell, qc, x)?;
        acc += pn.eval(x).transpose() * wx * pm.eval(x) * w;
    }
    Ok(acc * (2.0 / std::f64::consts::PI))
}
