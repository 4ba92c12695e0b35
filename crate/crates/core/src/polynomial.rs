//! Multivariate polynomials in expanded monomial form.
//!
//! This is the representation the exact quadrature path consumes: a sum of
//! monomials c · x_0^{a_0} ⋯ x_{d−1}^{a_{d−1}} over the ambient coordinates.

use serde::Serialize;

use crate::error::{Error, Result};

/// One monomial c · Π x_d^{powers[d]}.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Monomial {
    pub coeff: f64,
    pub powers: Vec<u32>,
}

/// A polynomial on ℝ^dim as a list of monomials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polynomial {
    dim: usize,
    terms: Vec<Monomial>,
}

impl Polynomial {
    /// Every term must carry one exponent per coordinate and a finite
    /// coefficient.
    pub fn new(dim: usize, terms: Vec<(f64, Vec<u32>)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument {
                reason: "polynomial dimension must be at least 1".into(),
            });
        }
        let terms = terms
            .into_iter()
            .map(|(coeff, powers)| {
                if powers.len() != dim {
                    return Err(Error::DimensionMismatch {
                        left: dim,
                        right: powers.len(),
                    });
                }
                if !coeff.is_finite() {
                    return Err(Error::InvalidArgument {
                        reason: format!("non-finite coefficient {coeff}"),
                    });
                }
                Ok(Monomial { coeff, powers })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { dim, terms })
    }

    /// c·x + d as a degree-1 polynomial.
    pub fn affine(coeffs: &[f64], offset: f64) -> Result<Self> {
        let dim = coeffs.len();
        let mut terms: Vec<(f64, Vec<u32>)> = vec![(offset, vec![0; dim])];
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0.0 {
                let mut powers = vec![0; dim];
                powers[i] = 1;
                terms.push((c, powers));
            }
        }
        Self::new(dim, terms)
    }

    /// xᵀAx + b·x as a degree-2 polynomial. `matrix` is row-major n×n.
    pub fn quadratic_form(matrix: &[Vec<f64>], linear: &[f64]) -> Result<Self> {
        let dim = linear.len();
        if matrix.len() != dim || matrix.iter().any(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: matrix.len(),
            });
        }
        let mut terms = Vec::new();
        for i in 0..dim {
            for j in i..dim {
                let c = if i == j {
                    matrix[i][i]
                } else {
                    matrix[i][j] + matrix[j][i]
                };
                if c != 0.0 {
                    let mut powers = vec![0; dim];
                    powers[i] += 1;
                    powers[j] += 1;
                    terms.push((c, powers));
                }
            }
        }
        for (i, &b) in linear.iter().enumerate() {
            if b != 0.0 {
                let mut powers = vec![0; dim];
                powers[i] = 1;
                terms.push((b, powers));
            }
        }
        if terms.is_empty() {
            terms.push((0.0, vec![0; dim]));
        }
        Self::new(dim, terms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    /// Total degree, 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.powers.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        self.terms
            .iter()
            .map(|t| {
                t.coeff
                    * t.powers
                        .iter()
                        .zip(x)
                        .map(|(&p, &xi)| xi.powi(p as i32))
                        .product::<f64>()
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn affine_evaluates() {
        let p = Polynomial::affine(&[2.0, -1.0], 0.5).unwrap();
        assert_eq!(p.degree(), 1);
        assert_relative_eq!(p.eval(&[1.0, 3.0]), 2.0 - 3.0 + 0.5);
    }

    #[test]
    fn quadratic_form_evaluates() {
        // x^T A x with A = [[1, 2], [0, 3]] is x^2 + 2xy + 3y^2.
        let p = Polynomial::quadratic_form(
            &[vec![1.0, 2.0], vec![0.0, 3.0]],
            &[0.0, 1.0],
        )
        .unwrap();
        assert_eq!(p.degree(), 2);
        assert_relative_eq!(p.eval(&[2.0, -1.0]), 4.0 - 4.0 + 3.0 - 1.0);
    }

    #[test]
    fn rejects_wrong_exponent_length() {
        assert!(Polynomial::new(2, vec![(1.0, vec![1])]).is_err());
    }
}
