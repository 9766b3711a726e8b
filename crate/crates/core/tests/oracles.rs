//! Library results against the independent oracles in `common`.

mod common;

use deltarig::invariants::{tutte_subset_sum, TuttePoly};
use deltarig::verify::{enumerate_even_delta_matroids, enumerate_ribbon_graphs, random_even_instance};
use deltarig::{factor_bivariate, DeltaMatroid};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Frozen regression values; the oracle recomputes them from scratch.
const EVEN_COUNTS: [usize; 5] = [1, 2, 6, 30, 294];

#[test]
fn even_delta_matroid_counts() {
    for (n, &want) in EVEN_COUNTS.iter().enumerate() {
        assert_eq!(enumerate_even_delta_matroids(n).unwrap().len(), want, "n = {n}");
        if n <= 3 {
            assert_eq!(common::count_even_delta_matroids(n), want, "oracle at n = {n}");
        }
    }
}

#[test]
fn even_count_at_four_elements_matches_oracle() {
    assert_eq!(common::count_even_delta_matroids(4), EVEN_COUNTS[4]);
}

fn corpus() -> Vec<DeltaMatroid> {
    let mut out: Vec<DeltaMatroid> = (0..=4).flat_map(|n| enumerate_even_delta_matroids(n).unwrap()).collect();
    for g in enumerate_ribbon_graphs(3, false).unwrap() {
        out.push(g.delta_matroid().unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    out.extend((0..60).map(|_| random_even_instance(&mut rng, 7)));
    out
}

#[test]
fn tutte_matches_oracle() {
    for d in corpus() {
        match (tutte_subset_sum(&d), common::tutte(&d)) {
            (TuttePoly::Integral(t), Some(o)) => assert_eq!(t, o, "{}", d.to_json()),
            (TuttePoly::HalfIntegral(_), None) => {}
            (t, o) => panic!("lattice mismatch on {}: {t} vs {o:?}", d.to_json()),
        }
    }
}

#[test]
fn sigma_matches_oracle() {
    for d in corpus() {
        let table = d.sigma2_table(deltarig::Execution::default());
        let oracle = common::sigma2_all(&d);
        assert!(table.iter().zip(&oracle).all(|(a, &b)| *a as i64 == b), "{}", d.to_json());
    }
}

#[test]
fn connectivity_matches_oracle() {
    for d in corpus() {
        assert_eq!(d.is_connected(), common::connected(&d), "{}", d.to_json());
    }
}

#[test]
fn brute_force_factor_search_agrees_on_tutte_polynomials() {
    let mut seen = std::collections::BTreeSet::new();
    for n in 1..=4 {
        for d in enumerate_even_delta_matroids(n).unwrap() {
            let t = tutte_subset_sum(&d).into_integral().unwrap();
            if t.total_degree() > 4 || !seen.insert(t.clone()) {
                continue;
            }
            let lib = common::factor_multiset(&factor_bivariate(&t).unwrap());
            assert_eq!(lib, common::brute_force_factors(&t), "T = {t}");
        }
    }
    assert!(seen.len() > 20);
}

#[test]
fn oracle_finds_known_factorizations() {
    let f: deltarig::BiPoly = "(x + y)^2 * (2*x*y - x - y)".parse().unwrap();
    let mut want: Vec<deltarig::BiPoly> =
        ["x + y", "x + y", "2*x*y - x - y"].iter().map(|s| s.parse().unwrap()).collect();
    want.sort();
    assert_eq!(common::brute_force_factors(&f), want);
}

#[test]
fn twists_of_matroids_avoid_np_minors() {
    let np = deltarig::verify::named::np();
    let mut twisted = 0;
    for n in 0..=4 {
        for d in enumerate_even_delta_matroids(n).unwrap() {
            let is_twist = (0..=d.full()).any(|a| d.twist(a).is_matroid());
            let has_np = d.has_minor_in(std::slice::from_ref(&np), true).is_some();
            assert_eq!(is_twist, !has_np, "{}", d.to_json());
            twisted += usize::from(is_twist);
        }
    }
    assert!(twisted > 0 && twisted < EVEN_COUNTS.iter().sum::<usize>());
}
