//! Mean values (1/Vol)∫f over embedded k-simplices.
//!
//! Two routes are provided and kept deliberately independent:
//!
//! * an exact path for polynomials, which rewrites each monomial in the
//!   barycentric coordinates of the target simplex and applies the
//!   Dirichlet integral identity
//!   mean(λ^α) = k! · (Π α_i!) / (k + |α|)!,
//! * a seeded Monte Carlo path with a z·SE error bound, built on uniform
//!   sampling via normalized exponential spacings.
//!
//! Both return a [`MeanValueEstimate`] so downstream comparisons can apply
//! method-aware tolerances.

use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::Exp1;
use serde::Serialize;

use crate::convexfns::TestFunction;
use crate::error::{Error, Result};
use crate::geometry::{Simplex, Vector};
use crate::polynomial::Polynomial;
use crate::seeding::{derive_seed, rng_from_seed};
use crate::util::pairwise_sum;

/// Exact integration is combinatorial in the degree; 8 is ample here.
pub const DEGREE_CAP: u32 = 8;

/// How a mean value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactPolynomial,
    MonteCarlo,
    PointEvaluation,
}

/// A mean value with its method tag and error bound. Exact and point
/// evaluations carry a zero bound; Monte Carlo carries z · standard error.
#[derive(Clone, Debug, Serialize)]
pub struct MeanValueEstimate {
    pub value: f64,
    pub method: Method,
    pub error_bound: f64,
    pub sample_count: u64,
}

/// Method selection for [`mean_value`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    Auto,
    Exact,
    MonteCarlo,
}

/// Quadrature settings. `seed` is the stream seed consumed by the Monte
/// Carlo path; `workers` partitions the samples into independently seeded
/// chunks, and `workers = 1` is the bit-reproducible sequential mode.
#[derive(Clone, Debug, Serialize)]
pub struct QuadratureConfig {
    pub method: MethodChoice,
    pub mc_samples: u64,
    pub z: f64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            method: MethodChoice::Auto,
            mc_samples: 100_000,
            z: 3.0,
            seed: 0,
            workers: 1,
        }
    }
}

/// Mean of the barycentric monomial λ^alpha over a k-simplex:
/// k! · (Π alpha_i!) / (k + |alpha|)!. The factorial ratio is taken over
/// exact integers before a single floating division.
///
/// Panics if k + |alpha| > 33 (u128 factorial overflow).
pub fn barycentric_moment(k: usize, alpha: &[u32]) -> f64 {
    let total: u32 = alpha.iter().sum();
    let numerator: u128 = factorial_u128(k as u32)
        * alpha.iter().map(|&a| factorial_u128(a)).product::<u128>();
    let denominator = factorial_u128(k as u32 + total);
    numerator as f64 / denominator as f64
}

fn factorial_u128(n: u32) -> u128 {
    assert!(n <= 33, "factorial overflows u128 beyond 33!");
    (1..=n as u128).product()
}

/// Fill `point` with a uniform sample on `s`: k+1 standard exponential
/// variates normalized to barycentric weights. `weights` must have length
/// k+1 and `point` the ambient dimension. Draws exactly k+1 variates, so
/// the stream position is a pure function of the sample count.
pub fn sample_uniform_into<R: Rng + ?Sized>(
    s: &Simplex,
    rng: &mut R,
    weights: &mut [f64],
    point: &mut [f64],
) {
    debug_assert_eq!(weights.len(), s.vertex_count());
    debug_assert_eq!(point.len(), s.dim_ambient());
    let mut total = 0.0;
    for w in weights.iter_mut() {
        let e: f64 = rng.sample(Exp1);
        *w = e;
        total += e;
    }
    if total == 0.0 {
        // All variates underflowed to zero; fall back to the barycenter.
        let uniform = 1.0 / weights.len() as f64;
        weights.iter_mut().for_each(|w| *w = uniform);
        total = 1.0;
    }
    point.fill(0.0);
    for (i, w) in weights.iter_mut().enumerate() {
        *w /= total;
        for (p, &c) in point.iter_mut().zip(s.vertex(i).as_slice()) {
            *p += *w * c;
        }
    }
}

/// Uniform sample on `s` as a [`Vector`].
pub fn sample_uniform<R: Rng + ?Sized>(s: &Simplex, rng: &mut R) -> Vector {
    let mut weights = vec![0.0; s.vertex_count()];
    let mut point = vec![0.0; s.dim_ambient()];
    sample_uniform_into(s, rng, &mut weights, &mut point);
    Vector::new(point).expect("convex combination of finite vertices is finite")
}

struct Welford {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn new() -> Self {
        Self { count: 0, mean: 0.0, m2: 0.0 }
    }

    fn push(&mut self, value: f64) {
        self.count += 1;
        let delta = value - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (value - self.mean);
    }

    /// Parallel-variance merge (Chan et al.).
    fn merge(self, other: Welford) -> Welford {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let na = self.count as f64;
        let nb = other.count as f64;
        let n = na + nb;
        let delta = other.mean - self.mean;
        Welford {
            count: self.count + other.count,
            mean: self.mean + delta * nb / n,
            m2: self.m2 + other.m2 + delta * delta * na * nb / n,
        }
    }

    fn into_estimate(self, z: f64) -> MeanValueEstimate {
        let n = self.count as f64;
        let variance = if self.count > 1 { self.m2 / (n - 1.0) } else { 0.0 };
        MeanValueEstimate {
            value: self.mean,
            method: Method::MonteCarlo,
            error_bound: z * (variance / n).sqrt(),
            sample_count: self.count,
        }
    }
}

fn mc_chunk<R: Rng + ?Sized>(
    f: &TestFunction,
    s: &Simplex,
    n_samples: u64,
    rng: &mut R,
) -> Result<Welford> {
    let mut weights = vec![0.0; s.vertex_count()];
    let mut point = vec![0.0; s.dim_ambient()];
    let mut acc = Welford::new();
    for _ in 0..n_samples {
        sample_uniform_into(s, rng, &mut weights, &mut point);
        let value = f.eval(&point);
        if !value.is_finite() {
            return Err(Error::NonFiniteEvaluation {
                point: point.clone(),
                value,
            });
        }
        acc.push(value);
    }
    Ok(acc)
}

/// Monte Carlo mean of f over s from an explicit rng stream.
/// error_bound = z · (sample standard deviation) / √n.
pub fn mc_mean<R: Rng + ?Sized>(
    f: &TestFunction,
    s: &Simplex,
    n_samples: u64,
    z: f64,
    rng: &mut R,
) -> Result<MeanValueEstimate> {
    if n_samples < 2 {
        return Err(Error::InsufficientSamples { got: n_samples, min: 2 });
    }
    Ok(mc_chunk(f, s, n_samples, rng)?.into_estimate(z))
}

/// Monte Carlo mean with a seed and a worker count. The samples are
/// partitioned into `workers` chunks with sub-seeds derived from `seed`,
/// evaluated concurrently, and merged in chunk order, so the result is a
/// pure function of (seed, n_samples, workers). With `workers = 1` the
/// stream is the plain sequential one for `seed`.
pub fn mc_mean_seeded(
    f: &TestFunction,
    s: &Simplex,
    n_samples: u64,
    z: f64,
    seed: u64,
    workers: usize,
) -> Result<MeanValueEstimate> {
    if workers == 0 {
        return Err(Error::InvalidArgument {
            reason: "worker count must be at least 1".into(),
        });
    }
    if n_samples < 2 {
        return Err(Error::InsufficientSamples { got: n_samples, min: 2 });
    }
    if workers == 1 {
        return mc_mean(f, s, n_samples, z, &mut rng_from_seed(seed));
    }

    let base = n_samples / workers as u64;
    let remainder = (n_samples % workers as u64) as usize;
    let sizes: Vec<u64> = (0..workers)
        .map(|c| base + u64::from(c < remainder))
        .filter(|&sz| sz > 0)
        .collect();

    let partials: Vec<Result<Welford>> = std::thread::scope(|scope| {
        let handles: Vec<_> = sizes
            .iter()
            .enumerate()
            .map(|(chunk, &size)| {
                scope.spawn(move || {
                    let mut rng = rng_from_seed(derive_seed(seed, chunk as u64));
                    mc_chunk(f, s, size, &mut rng)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("mc worker panicked")).collect()
    });

    let mut acc = Welford::new();
    for partial in partials {
        acc = acc.merge(partial?);
    }
    Ok(acc.into_estimate(z))
}

/// Exact mean of a polynomial over a simplex of any intrinsic dimension
/// k ≤ n, including k = 0.
///
/// Each monomial x^α is rewritten through x = Σ λ_i v_i into barycentric
/// monomials λ^β by repeated multiplication with the linear forms
/// Σ_i v_i[d] λ_i, then integrated by the Dirichlet identity. Contributions
/// are accumulated with pairwise summation; the error bound is reported as
/// zero, and comparisons add the rounding allowance on top.
pub fn exact_mean_poly(poly: &Polynomial, s: &Simplex) -> Result<MeanValueEstimate> {
    if poly.degree() > DEGREE_CAP {
        return Err(Error::DegreeCapExceeded {
            degree: poly.degree(),
            cap: DEGREE_CAP,
        });
    }
    if poly.dim() != s.dim_ambient() {
        return Err(Error::DimensionMismatch {
            left: poly.dim(),
            right: s.dim_ambient(),
        });
    }
    let k = s.dim_intrinsic();
    let kp1 = k + 1;
    let mut contributions: Vec<f64> = Vec::new();
    for term in poly.terms() {
        // Barycentric expansion of this monomial, exponent vector -> coeff.
        let mut expansion: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        expansion.insert(vec![0; kp1], term.coeff);
        for (d, &power) in term.powers.iter().enumerate() {
            for _ in 0..power {
                let mut next: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
                for (beta, coeff) in &expansion {
                    for i in 0..kp1 {
                        let v = s.vertex(i).as_slice()[d];
                        if v == 0.0 {
                            continue;
                        }
                        let mut beta_next = beta.clone();
                        beta_next[i] += 1;
                        *next.entry(beta_next).or_insert(0.0) += coeff * v;
                    }
                }
                expansion = next;
            }
        }
        for (beta, coeff) in &expansion {
            contributions.push(coeff * barycentric_moment(k, beta));
        }
    }
    Ok(MeanValueEstimate {
        value: pairwise_sum(&contributions),
        method: Method::ExactPolynomial,
        error_bound: 0.0,
        sample_count: 0,
    })
}

fn point_evaluation(f: &TestFunction, s: &Simplex) -> Result<MeanValueEstimate> {
    let point = s.vertex(0).as_slice();
    let value = f.eval(point);
    if !value.is_finite() {
        return Err(Error::NonFiniteEvaluation {
            point: point.to_vec(),
            value,
        });
    }
    Ok(MeanValueEstimate {
        value,
        method: Method::PointEvaluation,
        error_bound: 0.0,
        sample_count: 0,
    })
}

/// Method dispatch: a 0-simplex is evaluated at its single vertex, `Auto`
/// picks the exact path when a polynomial form is present and Monte Carlo
/// otherwise, `Exact` requires a polynomial form.
pub fn mean_value(f: &TestFunction, s: &Simplex, cfg: &QuadratureConfig) -> Result<MeanValueEstimate> {
    if f.dim() != s.dim_ambient() {
        return Err(Error::DimensionMismatch {
            left: f.dim(),
            right: s.dim_ambient(),
        });
    }
    if s.dim_intrinsic() == 0 {
        return point_evaluation(f, s);
    }
    match cfg.method {
        MethodChoice::Exact => match f.polynomial() {
            Some(poly) => exact_mean_poly(poly, s),
            None => Err(Error::ExactRequiresPolynomial {
                name: f.name().to_string(),
            }),
        },
        MethodChoice::Auto => match f.polynomial() {
            Some(poly) => exact_mean_poly(poly, s),
            None => mc_mean_seeded(f, s, cfg.mc_samples, cfg.z, cfg.seed, cfg.workers),
        },
        MethodChoice::MonteCarlo => {
            mc_mean_seeded(f, s, cfg.mc_samples, cfg.z, cfg.seed, cfg.workers)
        }
    }
}
