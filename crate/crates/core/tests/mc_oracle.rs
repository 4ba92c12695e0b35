//! Concordance of the two independent quadrature routes: seeded Monte
//! Carlo against the exact barycentric-moment path, over the catalog's
//! polynomial entries on random simplices.

use hh_core::geometry::{random_simplex, Simplex};
use hh_core::polynomial::Polynomial;
use hh_core::quadrature::{exact_mean_poly, mc_mean};
use hh_core::seeding::{derive_seed, rng_from_seed};
use hh_core::TestFunction;

#[test]
fn mc_covers_sum_of_squares_on_the_unit_triangle() {
    let triangle =
        Simplex::from_rows(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    let f = TestFunction::from_polynomial(
        "sum_of_squares",
        Polynomial::new(2, vec![(1.0, vec![2, 0]), (1.0, vec![0, 2])]).unwrap(),
        true,
    );
    let estimate = mc_mean(&f, &triangle, 1_000_000, 3.0, &mut rng_from_seed(0x715A)).unwrap();
    assert!(
        (estimate.value - 1.0 / 3.0).abs() <= estimate.error_bound,
        "{} vs 1/3 (bound {})",
        estimate.value,
        estimate.error_bound
    );
}

#[test]
fn mc_estimates_cover_the_exact_means() {
    let mut trials = 0u32;
    let mut misses = 0u32;
    for n in 1..=4usize {
        let entries = hh_core::catalog(n, 0xFEED);
        for simplex_index in 0..2u64 {
            let base = random_simplex(
                n,
                1.0,
                &mut rng_from_seed(derive_seed(0xBA5E, n as u64 * 10 + simplex_index)),
            );
            for (fn_index, f) in entries
                .iter()
                .filter(|f| f.polynomial().is_some())
                .enumerate()
            {
                let exact = exact_mean_poly(f.polynomial().unwrap(), &base).unwrap();
                for seed in 0..2u64 {
                    let stream = derive_seed(
                        0x07AC1E,
                        (n as u64) << 24
                            | simplex_index << 16
                            | (fn_index as u64) << 8
                            | seed,
                    );
                    let estimate =
                        mc_mean(f, &base, 1_000_000, 3.0, &mut rng_from_seed(stream)).unwrap();
                    trials += 1;
                    if (estimate.value - exact.value).abs() > estimate.error_bound {
                        misses += 1;
                        eprintln!(
                            "miss: {} n={n} simplex={simplex_index} seed={seed}: {} vs {} (bound {})",
                            f.name(),
                            estimate.value,
                            exact.value,
                            estimate.error_bound
                        );
                    }
                }
            }
        }
    }
    let rate = 1.0 - misses as f64 / trials as f64;
    assert!(rate >= 0.99, "coverage {rate:.4} over {trials} trials");
}
