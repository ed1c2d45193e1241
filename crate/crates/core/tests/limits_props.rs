mod common;

use proptest::prelude::*;
use subspec::eigen::full_spectrum;
use subspec::graph::spider;
use subspec::limits::{
    path_charpoly_eval, path_ratio, path_ratio_limit, quotient_path_radius, spider_limit, DegreeSequence,
    PathRatioState,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ratio_matches_charpolys(t in 1usize..120, x in 2.0001f64..6.0) {
        let num = path_charpoly_eval(t - 1, x);
        let den = path_charpoly_eval(t, x);
        let direct = num.mantissa / den.mantissa * 2f64.powi(num.exponent - den.exponent);
        let rho = path_ratio(t, x).unwrap();
        prop_assert!((rho - direct).abs() <= 1e-12 * direct.abs());
    }

    #[test]
    fn ratio_stays_in_unit_interval_and_approaches_limit(x in 2.0001f64..8.0) {
        let mut s = PathRatioState::new(x).unwrap();
        let limit = path_ratio_limit(x).unwrap();
        let mut prev_gap = f64::INFINITY;
        for _ in 0..80 {
            prop_assert!(s.in_primary_regime());
            prop_assert!(s.rho > 0.0 && s.rho < 1.0);
            let gap = limit - s.rho;
            prop_assert!(gap >= -1e-15 && gap <= prev_gap);
            prev_gap = gap;
            s.advance().unwrap();
        }
    }

    #[test]
    fn ratio_decreases_in_x(t in 1usize..60, x in 2.0001f64..6.0, dx in 1e-3f64..1.0) {
        prop_assert!(path_ratio(t, x + dx).unwrap() < path_ratio(t, x).unwrap());
    }

    #[test]
    fn limit_is_fixed_point(x in 2.0001f64..50.0) {
        let rho = path_ratio_limit(x).unwrap();
        prop_assert!((rho - 1.0 / (x - rho)).abs() <= 1e-14);
    }

    #[test]
    fn spider_limit_root(d in 3usize..40) {
        let x = spider_limit(d).unwrap();
        let rhs = 0.5 * (x - (x * x - 4.0).sqrt());
        prop_assert!((x / d as f64 - rhs).abs() <= 1e-12);
    }

    #[test]
    fn quotient_matches_spider(d in 1usize..7, t in 1usize..30) {
        let q = quotient_path_radius(d, t).unwrap();
        let l = full_spectrum(&spider(d, t)).unwrap().eigenvalues[0];
        prop_assert!((q - l).abs() <= 1e-9);
    }

    #[test]
    fn degree_sequences(g in common::graph(1, 15)) {
        match DegreeSequence::from_graph(&g) {
            Ok(ds) => {
                prop_assert!(ds.degrees().windows(2).all(|w| w[0] >= w[1]));
                prop_assert!(ds.degrees().iter().all(|&d| d >= 1));
                prop_assert_eq!(ds.degrees().iter().sum::<usize>() % 2, 0);
            }
            Err(_) => prop_assert_eq!(g.edge_count(), 0),
        }
    }
}
