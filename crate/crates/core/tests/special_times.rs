use approx::assert_abs_diff_eq;
use triqubit::analysis::{
    equal_entanglement_times, find_revival, near_equal_minima, near_equal_spread, rydberg_time,
    rydberg_time_range, RydbergParams,
};
use triqubit::{
    concurrence, density_homogeneous, mutual_information, reduce_pair, CouplingConfig, Pair,
};

#[test]
fn every_equal_time_is_a_w_point() {
    for j in [0.5, 1.0, 2.0, -1.5] {
        let times = equal_entanglement_times(j, 3).unwrap();
        assert_eq!(times.len(), 7);
        assert!(times.windows(2).all(|w| w[0] < w[1]));
        for t in times {
            let rho = density_homogeneous(j, t).unwrap();
            for pair in Pair::ALL {
                let c = concurrence(&reduce_pair(&rho, pair).unwrap()).unwrap();
                assert_abs_diff_eq!(c, 2.0 / 3.0, epsilon = 1e-9);
                let mi = mutual_information(&rho, pair).unwrap();
                assert_abs_diff_eq!(mi, 0.918296, epsilon = 1e-6);
            }
        }
    }
}

#[test]
fn revival_is_deterministic_and_grid_stable() {
    let cfg = CouplingConfig::new(0.5, 0.8).unwrap();
    let coarse = find_revival(&cfg, (8.0, 11.0), 3001).unwrap();
    let again = find_revival(&cfg, (8.0, 11.0), 3001).unwrap();
    let fine = find_revival(&cfg, (8.0, 11.0), 30001).unwrap();
    assert_eq!(coarse, again);
    assert!((coarse.t_star - fine.t_star).abs() < 1e-4);
    assert!(coarse.fidelity < 1.0);
}

#[test]
fn spread_has_a_deep_local_minimum() {
    let cfg = CouplingConfig::new(0.5, 0.8).unwrap();
    assert_abs_diff_eq!(near_equal_spread(&cfg, 0.0).unwrap(), 2.0, epsilon = 1e-12);
    let minima = near_equal_minima(&cfg, (0.0, 10.0), 2001).unwrap();
    assert!(minima.iter().any(|&(_, s)| s < 0.15));
}

#[test]
fn rydberg_scaling_identities() {
    let p = RydbergParams::new(7950.0, 30.0).unwrap();
    let q = RydbergParams::new(7950.0, 60.0).unwrap();
    let tau = 0.878744;
    assert_abs_diff_eq!(
        rydberg_time(&p, 3.0 * tau),
        3.0 * rydberg_time(&p, tau),
        epsilon = 1e-12
    );
    assert_abs_diff_eq!(
        rydberg_time(&q, tau),
        8.0 * rydberg_time(&p, tau),
        epsilon = 1e-12
    );
    let (lo, hi) = rydberg_time_range(&p, 130.0, tau).unwrap();
    assert!(lo < rydberg_time(&p, tau) && rydberg_time(&p, tau) < hi);
    assert!((lo - 2.936).abs() < 1e-3 && (hi - 3.034).abs() < 1e-3);
}
