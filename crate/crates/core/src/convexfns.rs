//! Test functions with convexity metadata and a randomized midpoint
//! (Jensen) convexity falsifier.
//!
//! The catalog is deliberately mixed: smooth polynomial entries exercise the
//! exact quadrature path, non-smooth convex entries (max-affine, norm) and
//! log-sum-exp exercise the Monte Carlo path, and one declared non-convex
//! control exists so verification campaigns can demonstrate that the
//! inequality chain fails when the convexity hypothesis fails.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Simplex, Vector};
use crate::polynomial::Polynomial;
use crate::quadrature::sample_uniform_into;
use crate::seeding::rng_from_seed;

/// Slack factor for the midpoint check: tol = 1e-10 · (1 + max |f| observed).
pub const TOL_CONVEX_FACTOR: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionKind {
    Affine,
    PsdQuadratic,
    MaxAffine,
    NormP,
    LogSumExp,
    Custom,
}

type EvalFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Form {
    Affine { coeffs: Vec<f64>, offset: f64 },
    Quadratic { matrix: Vec<Vec<f64>>, linear: Vec<f64> },
    MaxAffine { pieces: Vec<(Vec<f64>, f64)> },
    EuclideanNorm { center: Vec<f64> },
    LogSumExp { pieces: Vec<(Vec<f64>, f64)> },
    Polynomial,
    Custom(EvalFn),
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Form::Affine { .. } => write!(f, "Affine"),
            Form::Quadratic { .. } => write!(f, "Quadratic"),
            Form::MaxAffine { .. } => write!(f, "MaxAffine"),
            Form::EuclideanNorm { .. } => write!(f, "EuclideanNorm"),
            Form::LogSumExp { .. } => write!(f, "LogSumExp"),
            Form::Polynomial => write!(f, "Polynomial"),
            Form::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// A scalar function on ℝⁿ with declared convexity and an optional expanded
/// polynomial form (present iff the function is a polynomial).
#[derive(Clone, Debug)]
pub struct TestFunction {
    name: String,
    kind: FunctionKind,
    is_convex: bool,
    dim: usize,
    polynomial: Option<Polynomial>,
    form: Form,
}

impl TestFunction {
    /// A polynomial entry; evaluation goes through the monomial form.
    pub fn from_polynomial(name: &str, polynomial: Polynomial, is_convex: bool) -> Self {
        Self {
            name: name.to_string(),
            kind: FunctionKind::Custom,
            is_convex,
            dim: polynomial.dim(),
            polynomial: Some(polynomial),
            form: Form::Polynomial,
        }
    }

    /// A black-box entry supplied through the library API.
    pub fn custom(
        name: &str,
        dim: usize,
        is_convex: bool,
        f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.to_string(),
            kind: FunctionKind::Custom,
            is_convex,
            dim,
            polynomial: None,
            form: Form::Custom(Arc::new(f)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> FunctionKind {
        self.kind
    }

    /// Declared convexity, validated by the midpoint check, not proven.
    pub fn is_convex(&self) -> bool {
        self.is_convex
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn polynomial(&self) -> Option<&Polynomial> {
        self.polynomial.as_ref()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        match &self.form {
            Form::Affine { coeffs, offset } => dot(coeffs, x) + offset,
            Form::Quadratic { matrix, linear } => {
                let mut acc = 0.0;
                for (row, &xi) in matrix.iter().zip(x) {
                    acc += xi * dot(row, x);
                }
                acc + dot(linear, x)
            }
            Form::MaxAffine { pieces } => pieces
                .iter()
                .map(|(c, d)| dot(c, x) + d)
                .fold(f64::NEG_INFINITY, f64::max),
            Form::EuclideanNorm { center } => x
                .iter()
                .zip(center)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt(),
            Form::LogSumExp { pieces } => {
                let vals: Vec<f64> = pieces.iter().map(|(c, d)| dot(c, x) + d).collect();
                let m = vals.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
                m + vals.iter().map(|v| (v - m).exp()).sum::<f64>().ln()
            }
            Form::Polynomial => self
                .polynomial
                .as_ref()
                .expect("polynomial form carries a polynomial")
                .eval(x),
            Form::Custom(f) => f(x),
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Deterministic-for-seed test functions on ℝⁿ, in a fixed order:
/// `affine`, `psd_quadratic`, `max_affine`, `euclidean_norm`,
/// `log_sum_exp`, and the non-convex control `neg_sq_norm`.
pub fn catalog(n: usize, seed: u64) -> Vec<TestFunction> {
    assert!(n >= 1, "catalog needs dimension >= 1");
    let mut rng = rng_from_seed(seed);
    let draw = |rng: &mut rand_chacha::ChaCha8Rng, count: usize| -> Vec<f64> {
        (0..count).map(|_| rng.random_range(-1.0..1.0)).collect()
    };

    let mut entries = Vec::with_capacity(6);

    let coeffs = draw(&mut rng, n);
    let offset = rng.random_range(-1.0..1.0);
    entries.push(TestFunction {
        name: "affine".into(),
        kind: FunctionKind::Affine,
        is_convex: true,
        dim: n,
        polynomial: Some(Polynomial::affine(&coeffs, offset).expect("valid affine")),
        form: Form::Affine { coeffs, offset },
    });

    let m: Vec<Vec<f64>> = (0..n).map(|_| draw(&mut rng, n)).collect();
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = (0..n).map(|r| m[r][i] * m[r][j]).sum();
        }
    }
    let linear = draw(&mut rng, n);
    entries.push(TestFunction {
        name: "psd_quadratic".into(),
        kind: FunctionKind::PsdQuadratic,
        is_convex: true,
        dim: n,
        polynomial: Some(Polynomial::quadratic_form(&a, &linear).expect("valid quadratic")),
        form: Form::Quadratic { matrix: a, linear },
    });

    let piece_count = rng.random_range(3..=6);
    let pieces: Vec<(Vec<f64>, f64)> = (0..piece_count)
        .map(|_| {
            let c = draw(&mut rng, n);
            let d = rng.random_range(-1.0..1.0);
            (c, d)
        })
        .collect();
    entries.push(TestFunction {
        name: "max_affine".into(),
        kind: FunctionKind::MaxAffine,
        is_convex: true,
        dim: n,
        polynomial: None,
        form: Form::MaxAffine { pieces },
    });

    let center: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
    entries.push(TestFunction {
        name: "euclidean_norm".into(),
        kind: FunctionKind::NormP,
        is_convex: true,
        dim: n,
        polynomial: None,
        form: Form::EuclideanNorm { center },
    });

    let lse_count = rng.random_range(3..=5);
    let lse_pieces: Vec<(Vec<f64>, f64)> = (0..lse_count)
        .map(|_| {
            let c = draw(&mut rng, n);
            let d = rng.random_range(-1.0..1.0);
            (c, d)
        })
        .collect();
    entries.push(TestFunction {
        name: "log_sum_exp".into(),
        kind: FunctionKind::LogSumExp,
        is_convex: true,
        dim: n,
        polynomial: None,
        form: Form::LogSumExp { pieces: lse_pieces },
    });

    // Non-convex control: -|x|^2 must make the verification chain fail.
    let neg_identity: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = vec![0.0; n];
            row[i] = -1.0;
            row
        })
        .collect();
    entries.push(TestFunction {
        name: "neg_sq_norm".into(),
        kind: FunctionKind::Custom,
        is_convex: false,
        dim: n,
        polynomial: Some(
            Polynomial::quadratic_form(&neg_identity, &vec![0.0; n]).expect("valid quadratic"),
        ),
        form: Form::Quadratic {
            matrix: neg_identity,
            linear: vec![0.0; n],
        },
    });

    entries
}

/// Outcome of the midpoint convexity check.
#[derive(Clone, Debug, Serialize)]
pub enum ConvexityVerdict {
    Pass,
    Fail { x: Vector, y: Vector },
}

impl ConvexityVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, ConvexityVerdict::Pass)
    }
}

/// Sample `n_pairs` uniform pairs (x, y) in `domain` and report the first
/// pair violating f((x+y)/2) ≤ (f(x)+f(y))/2 + tol, where
/// tol = [`TOL_CONVEX_FACTOR`] · (1 + max |f| observed over all evaluations).
///
/// This is a falsifier: a pass is evidence, not a proof.
pub fn midpoint_convexity_check<R: Rng + ?Sized>(
    f: &TestFunction,
    domain: &Simplex,
    n_pairs: usize,
    rng: &mut R,
) -> Result<ConvexityVerdict> {
    if n_pairs == 0 {
        return Err(Error::InvalidArgument {
            reason: "midpoint check needs at least one pair".into(),
        });
    }
    let dim = domain.dim_ambient();
    let mut weights = vec![0.0; domain.vertex_count()];
    let mut x = vec![0.0; dim];
    let mut y = vec![0.0; dim];
    let mut mid = vec![0.0; dim];

    let mut evaluations = Vec::with_capacity(n_pairs);
    let mut max_abs = 0.0f64;
    let eval_checked = |point: &[f64]| -> Result<f64> {
        let value = f.eval(point);
        if !value.is_finite() {
            return Err(Error::NonFiniteEvaluation {
                point: point.to_vec(),
                value,
            });
        }
        Ok(value)
    };

    for _ in 0..n_pairs {
        sample_uniform_into(domain, rng, &mut weights, &mut x);
        sample_uniform_into(domain, rng, &mut weights, &mut y);
        for ((m, &a), &b) in mid.iter_mut().zip(&x).zip(&y) {
            *m = 0.5 * (a + b);
        }
        let fx = eval_checked(&x)?;
        let fy = eval_checked(&y)?;
        let fm = eval_checked(&mid)?;
        max_abs = max_abs.max(fx.abs()).max(fy.abs()).max(fm.abs());
        evaluations.push((x.clone(), y.clone(), fx, fy, fm));
    }

    let tol = TOL_CONVEX_FACTOR * (1.0 + max_abs);
    for (x, y, fx, fy, fmid) in evaluations {
        if fmid > 0.5 * (fx + fy) + tol {
            return Ok(ConvexityVerdict::Fail {
                x: Vector::new(x)?,
                y: Vector::new(y)?,
            });
        }
    }
    Ok(ConvexityVerdict::Pass)
}
