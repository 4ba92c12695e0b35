//! Nested subsimplex families, barycentric subdivision, quadrature over
//! embedded simplices, and numerical verification of the mean-value
//! refinement chain for convex functions.
//!
//! For an n-simplex Δ with barycenter b and a convex f, the mean value of f
//! over the family member Δ^[K] interpolates monotonically between f(b) and
//! the mean over Δ as K shrinks. This crate builds the family
//! ([`geometry`]), runs the barycentric subdivision sequence whose
//! barycenter averages converge to the mean ([`subdivision`]), computes
//! mean values exactly for polynomials and by seeded Monte Carlo otherwise
//! ([`quadrature`]), ships a function catalog with a convexity falsifier
//! ([`convexfns`]), and turns the inequalities into pass/fail records
//! ([`verify`]).

pub mod convexfns;
pub mod error;
pub mod geometry;
pub mod polynomial;
pub mod quadrature;
pub mod seeding;
pub mod subdivision;
pub mod verify;

mod util;

pub use convexfns::{catalog, midpoint_convexity_check, ConvexityVerdict, FunctionKind, TestFunction};
pub use error::{Error, Result};
pub use geometry::{
    build_delta_k, delta_l_via_homothety, homothety_apply, random_simplex, standard_simplex,
    Simplex, SubsetIndex, Vector,
};
pub use polynomial::Polynomial;
pub use quadrature::{
    exact_mean_poly, mc_mean, mc_mean_seeded, mean_value, sample_uniform, MeanValueEstimate,
    Method, MethodChoice, QuadratureConfig,
};
pub use subdivision::{barycentric_split, barycenter_average, cone_over, dr_level, SubdivisionLevel};
pub use verify::{
    corollary_avg_k, corollary_avg_monotone, corollary_chain, dr_convergence_report,
    first_maximal_chain, hh_bounds, run_function_campaign, subset_mean, theorem_main_check,
    ChainReport, DrSeries, FunctionCampaign,
};
