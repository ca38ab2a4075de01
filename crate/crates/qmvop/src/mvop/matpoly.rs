use nalgebra::DMatrix;

use crate::qseries::C64;

/// A matrix-valued polynomial in the monomial basis: coeffs[k] is the matrix
/// coefficient of x^k. Degrees at desk scale stay small enough that monomial
/// conditioning is acceptable, and coefficients compare directly across
/// construction routes.
#[derive(Debug, Clone)]
pub struct MatPoly {
    size: usize,
    coeffs: Vec<DMatrix<f64>>,
}

impl MatPoly {
    pub fn new(size: usize, coeffs: Vec<DMatrix<f64>>) -> Self {
        assert!(!coeffs.is_empty(), "a matrix polynomial needs at least one coefficient");
        for c in &coeffs {
            assert_eq!(c.nrows(), size);
            assert_eq!(c.ncols(), size);
        }
        MatPoly { size, coeffs }
    }

    pub fn identity(size: usize) -> Self {
        MatPoly { size, coeffs: vec![DMatrix::identity(size, size)] }
    }

    pub fn zero(size: usize) -> Self {
        MatPoly { size, coeffs: vec![DMatrix::zeros(size, size)] }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Degree with trailing (numerically) zero coefficients trimmed.
    pub fn degree(&self) -> usize {
        for k in (0..self.coeffs.len()).rev() {
            if self.coeffs[k].iter().any(|v| v.abs() > 1e-300) {
                return k;
            }
        }
        0
    }

    pub fn coeff(&self, k: usize) -> DMatrix<f64> {
        if k < self.coeffs.len() {
            self.coeffs[k].clone()
        } else {
            DMatrix::zeros(self.size, self.size)
        }
    }

    pub fn leading(&self) -> DMatrix<f64> {
        self.coeffs[self.degree()].clone()
    }

    /// Horner evaluation at real x.
    pub fn eval(&self, x: f64) -> DMatrix<f64> {
        let mut acc = self.coeffs[self.coeffs.len() - 1].clone();
        for k in (0..self.coeffs.len() - 1).rev() {
            acc = acc * x + &self.coeffs[k];
        }
        acc
    }

    /// f̆(z) = f(μ(z)) at complex z ≠ 0; exactly symmetric under z ↔ 1/z.
    pub fn eval_breve(&self, z: C64) -> DMatrix<C64> {
        let x = (z + z.inv()) * 0.5;
        let mut acc = self.coeffs[self.coeffs.len() - 1].map(|v| C64::new(v, 0.0));
        for k in (0..self.coeffs.len() - 1).rev() {
            acc = acc * x + self.coeffs[k].map(|v| C64::new(v, 0.0));
        }
        acc
    }

    /// Multiplication by x (degree shift).
    pub fn shift_up(&self) -> MatPoly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(DMatrix::zeros(self.size, self.size));
        coeffs.extend(self.coeffs.iter().cloned());
        MatPoly { size: self.size, coeffs }
    }

    /// self·m (right multiplication of every coefficient).
    pub fn mul_right(&self, m: &DMatrix<f64>) -> MatPoly {
        MatPoly { size: self.size, coeffs: self.coeffs.iter().map(|c| c * m).collect() }
    }

    pub fn sub(&self, other: &MatPoly) -> MatPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            coeffs.push(self.coeff(k) - other.coeff(k));
        }
        MatPoly { size: self.size, coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_trims_zeros() {
        let p = MatPoly::new(
            1,
            vec![
                DMatrix::from_element(1, 1, 2.0),
                DMatrix::from_element(1, 1, 0.0),
            ],
        );
        assert_eq!(p.degree(), 0);
        assert_eq!(MatPoly::identity(3).degree(), 0);
    }

    #[test]
    fn breve_is_z_inversion_symmetric() {
        let p = MatPoly::new(
            2,
            vec![
                DMatrix::identity(2, 2),
                DMatrix::from_element(2, 2, 0.5),
                DMatrix::from_element(2, 2, -1.25),
            ],
        );
        let z = C64::new(0.3, 0.8);
        let a = p.eval_breve(z);
        let b = p.eval_breve(z.inv());
        assert!((a - b).iter().all(|v| v.norm() < 1e-13));
        // consistency with real evaluation
        let x = 0.42;
        let on_circle = p.eval_breve(crate::qseries::TorusPoint::from_x(x).z());
        let direct = p.eval(x);
        for r in 0..2 {
            for c in 0..2 {
                assert!((on_circle[(r, c)].re - direct[(r, c)]).abs() < 1e-13);
            }
        }
    }
}
