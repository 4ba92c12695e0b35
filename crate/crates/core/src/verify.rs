//! Executes the mean-value inequality claims over the Δ^[K] family and the
//! subdivision sequence, producing structured pass/fail records with
//! method-aware tolerances.
//!
//! The checked claims, for a convex f on an n-simplex Δ:
//!
//! * f(b) ≤ mean(Δ) ≤ vertex average (the two-sided bound),
//! * mean(Δ^[L]) ≤ mean(Δ^[K]) for K ⊆ L ⊊ N (the refinement),
//! * the full chain along K_0 ⊂ K_1 ⊂ … ⊂ K_n with card K_i = i,
//! * cardinality averages A_k = (1/C(n+1,k)) Σ_{card K=k} mean(Δ^[K]) with
//!   A_k ≤ mean(Δ) and A_l ≤ A_k for k < l,
//! * the nondecreasing barycenter-average sequence of the subdivision.
//!
//! A comparison "a ≤ b" passes iff a ≤ b + tol where tol adds the error
//! bounds of both sides; exact and point estimates contribute a rounding
//! allowance of [`REL_EXACT_TOLERANCE`] · (1 + |value|) instead of their
//! (zero) error bound.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::convexfns::TestFunction;
use crate::error::{Error, Result};
use crate::geometry::{build_delta_k, Simplex, SubsetIndex};
use crate::quadrature::{mean_value, MeanValueEstimate, Method, QuadratureConfig};
use crate::seeding::derive_seed;
use crate::subdivision::{barycenter_average, dr_level};
use crate::util::{binomial, pairwise_sum};

/// Rounding allowance for exact-polynomial and point estimates inside
/// comparisons.
pub const REL_EXACT_TOLERANCE: f64 = 1e-9;

/// Slack permitted in the nondecreasing check of barycentric averages.
pub const DR_MONOTONE_TOLERANCE: f64 = 1e-12;

/// Tolerance contribution of one estimate to a comparison.
pub fn tolerance_contribution(e: &MeanValueEstimate) -> f64 {
    match e.method {
        Method::MonteCarlo => e.error_bound,
        Method::ExactPolynomial | Method::PointEvaluation => {
            REL_EXACT_TOLERANCE * (1.0 + e.value.abs())
        }
    }
}

/// Tolerance for "a ≤ b": both contributions added.
pub fn combined_tolerance(a: &MeanValueEstimate, b: &MeanValueEstimate) -> f64 {
    tolerance_contribution(a) + tolerance_contribution(b)
}

fn point_estimate(value: f64) -> MeanValueEstimate {
    MeanValueEstimate {
        value,
        method: Method::PointEvaluation,
        error_bound: 0.0,
        sample_count: 0,
    }
}

/// Positive part of the violation of "lhs ≤ rhs + tol", given slack = rhs − lhs.
fn violation(slack: f64, tolerance: f64) -> f64 {
    (-slack - tolerance).max(0.0)
}

/// Identifies a simplex in reports: SHA-256 over the raw vertex
/// coordinates plus the dimensions.
#[derive(Clone, Debug, Serialize)]
pub struct SimplexDigest {
    pub hash: String,
    pub intrinsic_dim: usize,
    pub ambient_dim: usize,
}

pub fn simplex_digest(s: &Simplex) -> SimplexDigest {
    let mut hasher = Sha256::new();
    for v in s.vertices() {
        for &c in v.as_slice() {
            hasher.update(c.to_le_bytes());
        }
    }
    let hash = hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    SimplexDigest {
        hash,
        intrinsic_dim: s.dim_intrinsic(),
        ambient_dim: s.dim_ambient(),
    }
}

/// One "entries[left] ≤ entries[right]" verdict inside a chain report.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub left: usize,
    pub right: usize,
    pub slack: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainEntry {
    pub k_set: SubsetIndex,
    pub estimate: MeanValueEstimate,
}

/// Mean values along a subset chain, ordered by increasing cardinality,
/// with the pairwise verdicts.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub function_id: String,
    pub simplex_digest: SimplexDigest,
    pub entries: Vec<ChainEntry>,
    pub comparisons: Vec<Comparison>,
    pub seed: u64,
    pub method_config: QuadratureConfig,
}

impl ChainReport {
    pub fn all_pass(&self) -> bool {
        self.comparisons.iter().all(|c| c.pass)
    }
}

/// The two-sided bound record: f(b), the mean estimate, and the vertex
/// average, with one verdict per side.
#[derive(Clone, Debug, Serialize)]
pub struct HhBounds {
    pub left: f64,
    pub mid: MeanValueEstimate,
    pub right: f64,
    pub lower_slack: f64,
    pub lower_tolerance: f64,
    pub lower_pass: bool,
    pub upper_slack: f64,
    pub upper_tolerance: f64,
    pub upper_pass: bool,
}

impl HhBounds {
    pub fn all_pass(&self) -> bool {
        self.lower_pass && self.upper_pass
    }
}

/// mean(Δ^[L]) ≤ mean(Δ^[K]) for one subset pair.
#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub k_set: SubsetIndex,
    pub l_set: SubsetIndex,
    pub mean_k: MeanValueEstimate,
    pub mean_l: MeanValueEstimate,
    pub slack: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// A_k over all subsets of one cardinality, with the per-subset estimates
/// it averages.
#[derive(Clone, Debug, Serialize)]
pub struct SubsetAverage {
    pub cardinality: usize,
    pub terms: Vec<ChainEntry>,
    pub average: f64,
    pub error_contribution: f64,
}

/// A_k ≤ mean(Δ).
#[derive(Clone, Debug, Serialize)]
pub struct AvgKRecord {
    pub subsets: SubsetAverage,
    pub reference: MeanValueEstimate,
    pub slack: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// A_l ≤ A_k for k < l.
#[derive(Clone, Debug, Serialize)]
pub struct AvgMonotoneRecord {
    pub avg_k: SubsetAverage,
    pub avg_l: SubsetAverage,
    pub slack: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// One level of the barycenter-average series.
#[derive(Clone, Debug, Serialize)]
pub struct DrPoint {
    pub level: u32,
    pub member_count: usize,
    pub average: f64,
    pub nondecreasing_pass: bool,
    pub below_mean_pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DrSeries {
    pub function_id: String,
    pub points: Vec<DrPoint>,
    pub reference: MeanValueEstimate,
    pub final_gap: f64,
}

impl DrSeries {
    pub fn all_pass(&self) -> bool {
        self.points.iter().all(|p| p.nondecreasing_pass && p.below_mean_pass)
    }
}

/// Mean value over Δ^[K], with the Monte Carlo stream seeded per subset:
/// the effective seed is derive_seed(cfg.seed, K.mask()).
pub fn subset_mean(
    f: &TestFunction,
    base: &Simplex,
    k_set: &SubsetIndex,
    cfg: &QuadratureConfig,
) -> Result<MeanValueEstimate> {
    let member = build_delta_k(base, k_set)?;
    let sub_cfg = QuadratureConfig {
        seed: derive_seed(cfg.seed, k_set.mask()),
        ..cfg.clone()
    };
    mean_value(f, &member, &sub_cfg)
}

/// Per-subset estimates computed once and reused across all records of a
/// campaign; repeated lookups return the identical estimate.
struct MeanCache<'a> {
    f: &'a TestFunction,
    base: &'a Simplex,
    cfg: &'a QuadratureConfig,
    map: BTreeMap<u64, MeanValueEstimate>,
}

impl<'a> MeanCache<'a> {
    fn new(f: &'a TestFunction, base: &'a Simplex, cfg: &'a QuadratureConfig) -> Self {
        Self { f, base, cfg, map: BTreeMap::new() }
    }

    fn get(&mut self, k_set: &SubsetIndex) -> Result<MeanValueEstimate> {
        if let Some(e) = self.map.get(&k_set.mask()) {
            return Ok(e.clone());
        }
        let e = subset_mean(self.f, self.base, k_set, self.cfg)?;
        self.map.insert(k_set.mask(), e.clone());
        Ok(e)
    }
}

fn assemble_hh(f: &TestFunction, s: &Simplex, mid: MeanValueEstimate) -> Result<HhBounds> {
    let b = s.barycenter();
    let left = f.eval(b.as_slice());
    if !left.is_finite() {
        return Err(Error::NonFiniteEvaluation {
            point: b.as_slice().to_vec(),
            value: left,
        });
    }
    let vertex_values = s
        .vertices()
        .iter()
        .map(|v| {
            let value = f.eval(v.as_slice());
            if !value.is_finite() {
                return Err(Error::NonFiniteEvaluation {
                    point: v.as_slice().to_vec(),
                    value,
                });
            }
            Ok(value)
        })
        .collect::<Result<Vec<_>>>()?;
    let right = pairwise_sum(&vertex_values) / vertex_values.len() as f64;

    let left_est = point_estimate(left);
    let right_est = point_estimate(right);
    let lower_tolerance = combined_tolerance(&left_est, &mid);
    let upper_tolerance = combined_tolerance(&mid, &right_est);
    let lower_slack = mid.value - left;
    let upper_slack = right - mid.value;
    Ok(HhBounds {
        left,
        right,
        lower_slack,
        lower_tolerance,
        lower_pass: lower_slack >= -lower_tolerance,
        upper_slack,
        upper_tolerance,
        upper_pass: upper_slack >= -upper_tolerance,
        mid,
    })
}

/// f(b) ≤ mean(s) ≤ vertex average, with the mean estimated per `cfg`.
pub fn hh_bounds(f: &TestFunction, s: &Simplex, cfg: &QuadratureConfig) -> Result<HhBounds> {
    let sub_cfg = QuadratureConfig {
        seed: derive_seed(cfg.seed, 0),
        ..cfg.clone()
    };
    let mid = mean_value(f, s, &sub_cfg)?;
    assemble_hh(f, s, mid)
}

fn assemble_pair(
    k_set: SubsetIndex,
    l_set: SubsetIndex,
    mean_k: MeanValueEstimate,
    mean_l: MeanValueEstimate,
) -> PairCheck {
    let slack = mean_k.value - mean_l.value;
    let tolerance = combined_tolerance(&mean_l, &mean_k);
    PairCheck {
        k_set,
        l_set,
        slack,
        tolerance,
        pass: slack >= -tolerance,
        mean_k,
        mean_l,
    }
}

/// mean(Δ^[L]) ≤ mean(Δ^[K]) for K ⊆ L ⊊ N. The record carries both
/// estimates and the slack mean_K − mean_L.
pub fn theorem_main_check(
    f: &TestFunction,
    base: &Simplex,
    k_set: &SubsetIndex,
    l_set: &SubsetIndex,
    cfg: &QuadratureConfig,
) -> Result<PairCheck> {
    if !k_set.is_subset_of(l_set) {
        return Err(Error::InvalidArgument {
            reason: format!("K={k_set} is not a subset of L={l_set}"),
        });
    }
    let mut cache = MeanCache::new(f, base, cfg);
    let mean_k = cache.get(k_set)?;
    let mean_l = cache.get(l_set)?;
    Ok(assemble_pair(k_set.clone(), l_set.clone(), mean_k, mean_l))
}

fn validate_chain(chain: &[SubsetIndex], n: usize) -> Result<()> {
    if chain.len() != n + 1 {
        return Err(Error::InvalidChain {
            reason: format!("chain has {} entries, expected {}", chain.len(), n + 1),
        });
    }
    for (i, k_set) in chain.iter().enumerate() {
        if k_set.bound() != n {
            return Err(Error::InvalidChain {
                reason: format!("entry {i} has bound {} instead of {n}", k_set.bound()),
            });
        }
        if k_set.card() != i {
            return Err(Error::InvalidChain {
                reason: format!("entry {i} has cardinality {}", k_set.card()),
            });
        }
        if i > 0 && !chain[i - 1].is_subset_of(k_set) {
            return Err(Error::InvalidChain {
                reason: format!("entry {} is not contained in entry {i}", i - 1),
            });
        }
    }
    Ok(())
}

fn assemble_chain(
    function_id: &str,
    base: &Simplex,
    chain: &[SubsetIndex],
    estimates: Vec<MeanValueEstimate>,
    cfg: &QuadratureConfig,
) -> ChainReport {
    let entries: Vec<ChainEntry> = chain
        .iter()
        .cloned()
        .zip(estimates)
        .map(|(k_set, estimate)| ChainEntry { k_set, estimate })
        .collect();
    let comparisons = (0..entries.len().saturating_sub(1))
        .map(|i| {
            let coarse = &entries[i].estimate;
            let fine = &entries[i + 1].estimate;
            let slack = coarse.value - fine.value;
            let tolerance = combined_tolerance(fine, coarse);
            Comparison {
                left: i + 1,
                right: i,
                slack,
                tolerance,
                pass: slack >= -tolerance,
            }
        })
        .collect();
    ChainReport {
        function_id: function_id.to_string(),
        simplex_digest: simplex_digest(base),
        entries,
        comparisons,
        seed: cfg.seed,
        method_config: cfg.clone(),
    }
}

/// Mean values along a chain K_0 ⊂ K_1 ⊂ … ⊂ K_n with card K_i = i,
/// asserting mean(Δ^[K_{i+1}]) ≤ mean(Δ^[K_i]) for every step.
pub fn corollary_chain(
    f: &TestFunction,
    base: &Simplex,
    chain: &[SubsetIndex],
    cfg: &QuadratureConfig,
) -> Result<ChainReport> {
    validate_chain(chain, base.dim_intrinsic())?;
    let mut cache = MeanCache::new(f, base, cfg);
    let estimates = chain
        .iter()
        .map(|k_set| cache.get(k_set))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_chain(f.name(), base, chain, estimates, cfg))
}

/// The lexicographically-first maximal chain ∅ ⊂ {0} ⊂ {0,1} ⊂ …
pub fn first_maximal_chain(n: usize) -> Vec<SubsetIndex> {
    (0..=n)
        .map(|i| SubsetIndex::new(0..i, n).expect("prefix subset is valid"))
        .collect()
}

fn cardinality_average(cache: &mut MeanCache<'_>, card: usize) -> Result<SubsetAverage> {
    let n = cache.base.dim_intrinsic();
    let subsets: Vec<SubsetIndex> = SubsetIndex::enumerate_proper(n)
        .into_iter()
        .filter(|k| k.card() == card)
        .collect();
    assert_eq!(subsets.len() as u64, binomial(n + 1, card));
    let mut terms = Vec::with_capacity(subsets.len());
    for k_set in subsets {
        let estimate = cache.get(&k_set)?;
        terms.push(ChainEntry { k_set, estimate });
    }
    let values: Vec<f64> = terms.iter().map(|t| t.estimate.value).collect();
    let contributions: Vec<f64> = terms
        .iter()
        .map(|t| tolerance_contribution(&t.estimate))
        .collect();
    Ok(SubsetAverage {
        cardinality: card,
        average: pairwise_sum(&values) / values.len() as f64,
        error_contribution: pairwise_sum(&contributions) / contributions.len() as f64,
        terms,
    })
}

fn assemble_avg_k(subsets: SubsetAverage, reference: MeanValueEstimate) -> AvgKRecord {
    let slack = reference.value - subsets.average;
    let tolerance = subsets.error_contribution + tolerance_contribution(&reference);
    AvgKRecord {
        slack,
        tolerance,
        pass: slack >= -tolerance,
        subsets,
        reference,
    }
}

/// A_k = average of mean(Δ^[K]) over all card-k subsets, checked against
/// mean(Δ). Summand tolerances combine additively scaled by the averaging
/// weight.
pub fn corollary_avg_k(
    f: &TestFunction,
    base: &Simplex,
    k: usize,
    cfg: &QuadratureConfig,
) -> Result<AvgKRecord> {
    let n = base.dim_intrinsic();
    if k > n {
        return Err(Error::InvalidArgument {
            reason: format!("cardinality {k} exceeds n = {n}"),
        });
    }
    let mut cache = MeanCache::new(f, base, cfg);
    let subsets = cardinality_average(&mut cache, k)?;
    let reference = cache.get(&SubsetIndex::empty(n))?;
    Ok(assemble_avg_k(subsets, reference))
}

fn assemble_avg_monotone(avg_k: SubsetAverage, avg_l: SubsetAverage) -> AvgMonotoneRecord {
    let slack = avg_k.average - avg_l.average;
    let tolerance = avg_k.error_contribution + avg_l.error_contribution;
    AvgMonotoneRecord {
        slack,
        tolerance,
        pass: slack >= -tolerance,
        avg_k,
        avg_l,
    }
}

/// A_l ≤ A_k for cardinalities k < l ≤ n.
pub fn corollary_avg_monotone(
    f: &TestFunction,
    base: &Simplex,
    k: usize,
    l: usize,
    cfg: &QuadratureConfig,
) -> Result<AvgMonotoneRecord> {
    let n = base.dim_intrinsic();
    if k >= l || l > n {
        return Err(Error::InvalidArgument {
            reason: format!("need k < l <= n, got k={k}, l={l}, n={n}"),
        });
    }
    let mut cache = MeanCache::new(f, base, cfg);
    let avg_k = cardinality_average(&mut cache, k)?;
    let avg_l = cardinality_average(&mut cache, l)?;
    Ok(assemble_avg_monotone(avg_k, avg_l))
}

/// Barycenter averages for levels 0..=p_max with the nondecreasing and
/// below-mean verdicts, plus the gap of the last average to the reference
/// mean.
pub fn dr_convergence_report(
    f: &TestFunction,
    root: &Simplex,
    p_max: u32,
    cfg: &QuadratureConfig,
) -> Result<DrSeries> {
    let sub_cfg = QuadratureConfig {
        seed: derive_seed(cfg.seed, 0),
        ..cfg.clone()
    };
    let reference = mean_value(f, root, &sub_cfg)?;
    let mut points = Vec::with_capacity(p_max as usize + 1);
    let mut level = dr_level(root, 0)?;
    let mut previous = f64::NEG_INFINITY;
    for p in 0..=p_max {
        let average = barycenter_average(f, &level);
        let below_tolerance = combined_tolerance(&point_estimate(average), &reference);
        points.push(DrPoint {
            level: p,
            member_count: level.member_count(),
            average,
            nondecreasing_pass: average >= previous - DR_MONOTONE_TOLERANCE,
            below_mean_pass: average <= reference.value + below_tolerance,
        });
        previous = average;
        if p < p_max {
            level = level.refine()?;
        }
    }
    let final_gap = (points.last().expect("at least level 0").average - reference.value).abs();
    Ok(DrSeries {
        function_id: f.name().to_string(),
        points,
        reference,
        final_gap,
    })
}

/// Everything `verify` runs for one (function, simplex) pair: the two-sided
/// bound, all subset pairs, the first maximal chain, and the cardinality
/// averages. Subset means are computed once and shared across records.
#[derive(Clone, Debug, Serialize)]
pub struct FunctionCampaign {
    pub function_id: String,
    pub declared_convex: bool,
    pub hh: HhBounds,
    pub theorem_pairs: Vec<PairCheck>,
    pub chain: ChainReport,
    pub avg_by_cardinality: Vec<AvgKRecord>,
    pub avg_monotone: Vec<AvgMonotoneRecord>,
    pub comparisons_pass: usize,
    pub comparisons_fail: usize,
    pub max_violation: f64,
    pub failed: Vec<String>,
}

pub fn run_function_campaign(
    f: &TestFunction,
    base: &Simplex,
    cfg: &QuadratureConfig,
) -> Result<FunctionCampaign> {
    let n = base.dim_intrinsic();
    let mut cache = MeanCache::new(f, base, cfg);
    let proper = SubsetIndex::enumerate_proper(n);
    for k_set in &proper {
        cache.get(k_set)?;
    }

    let hh = assemble_hh(f, base, cache.get(&SubsetIndex::empty(n))?)?;

    let mut theorem_pairs = Vec::new();
    for l_set in proper.iter().filter(|l| l.card() >= 1) {
        for k_set in proper.iter() {
            if k_set.card() < l_set.card() && k_set.is_subset_of(l_set) {
                let mean_k = cache.get(k_set)?;
                let mean_l = cache.get(l_set)?;
                theorem_pairs.push(assemble_pair(k_set.clone(), l_set.clone(), mean_k, mean_l));
            }
        }
    }

    let chain_sets = first_maximal_chain(n);
    let chain_estimates = chain_sets
        .iter()
        .map(|k_set| cache.get(k_set))
        .collect::<Result<Vec<_>>>()?;
    let chain = assemble_chain(f.name(), base, &chain_sets, chain_estimates, cfg);

    let reference = cache.get(&SubsetIndex::empty(n))?;
    let mut avg_by_cardinality = Vec::with_capacity(n + 1);
    let mut averages = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let avg = cardinality_average(&mut cache, k)?;
        averages.push(avg.clone());
        avg_by_cardinality.push(assemble_avg_k(avg, reference.clone()));
    }
    let mut avg_monotone = Vec::new();
    for k in 0..=n {
        for l in (k + 1)..=n {
            avg_monotone.push(assemble_avg_monotone(averages[k].clone(), averages[l].clone()));
        }
    }

    // Tally every comparison and name the failures.
    let mut pass = 0usize;
    let mut fail = 0usize;
    let mut max_violation = 0.0f64;
    let mut failed = Vec::new();
    let mut tally = |ok: bool, slack: f64, tolerance: f64, label: String| {
        if ok {
            pass += 1;
        } else {
            fail += 1;
            failed.push(label);
        }
        max_violation = max_violation.max(violation(slack, tolerance));
    };

    tally(
        hh.lower_pass,
        hh.lower_slack,
        hh.lower_tolerance,
        format!("{}: hh lower f(b) <= mean", f.name()),
    );
    tally(
        hh.upper_pass,
        hh.upper_slack,
        hh.upper_tolerance,
        format!("{}: hh upper mean <= vertex average", f.name()),
    );
    for p in &theorem_pairs {
        tally(
            p.pass,
            p.slack,
            p.tolerance,
            format!("{}: theorem K={} L={}", f.name(), p.k_set, p.l_set),
        );
    }
    for c in &chain.comparisons {
        tally(
            c.pass,
            c.slack,
            c.tolerance,
            format!(
                "{}: chain {} -> {}",
                f.name(),
                chain.entries[c.left].k_set,
                chain.entries[c.right].k_set
            ),
        );
    }
    for r in &avg_by_cardinality {
        tally(
            r.pass,
            r.slack,
            r.tolerance,
            format!("{}: avg_k k={}", f.name(), r.subsets.cardinality),
        );
    }
    for r in &avg_monotone {
        tally(
            r.pass,
            r.slack,
            r.tolerance,
            format!(
                "{}: avg_monotone k={} l={}",
                f.name(),
                r.avg_k.cardinality,
                r.avg_l.cardinality
            ),
        );
    }

    Ok(FunctionCampaign {
        function_id: f.name().to_string(),
        declared_convex: f.is_convex(),
        hh,
        theorem_pairs,
        chain,
        avg_by_cardinality,
        avg_monotone,
        comparisons_pass: pass,
        comparisons_fail: fail,
        max_violation,
        failed,
    })
}
