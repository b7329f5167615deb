//! Special times: equal-entanglement points, revivals, near-equal regions,
//! and conversion to Rydberg-atom laboratory units.

use std::f64::consts::PI;

use crate::bethe::CouplingConfig;
use crate::dynamics::InhomogeneousEngine;
use crate::measures::mutual_information;
use crate::qubit::{Pair, SubspaceState};
use crate::{Error, Result};

/// `(2/3) arccos(1/4)`: first equal-entanglement time at `J = 1`.
pub fn first_equal_time() -> f64 {
    2.0 / 3.0 * 0.25f64.acos()
}

/// Period of the homogeneous density matrix at `J = 1`.
pub const HOMOGENEOUS_PERIOD: f64 = 4.0 * PI / 3.0;

/// Positive solutions of `J t = ±(2/3)arccos(1/4) + (4/3)nπ`, `n = 0..=n_max`.
///
/// The negative representative of the "−" branch is dropped; its positive
/// image is the `n = 1` member of the same branch.
pub fn equal_entanglement_times(j: f64, n_max: u32) -> Result<Vec<f64>> {
    if j == 0.0 || !j.is_finite() {
        return Err(Error::TrivialEvolution(j));
    }
    let base = first_equal_time();
    let mut times: Vec<f64> = (0..=n_max)
        .flat_map(|n| {
            let shift = HOMOGENEOUS_PERIOD * f64::from(n);
            [shift + base, shift - base]
        })
        .map(|t| t / j.abs())
        .filter(|&t| t > 0.0)
        .collect();
    times.sort_by(f64::total_cmp);
    times.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * y.abs().max(1.0));
    Ok(times)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RevivalReport {
    pub t_star: f64,
    pub p_c: f64,
    /// `|P_a − P_b|` at `t_star`.
    pub population_imbalance: f64,
    /// `|⟨Φ₀|ψ(t_star)⟩|²`.
    pub fidelity: f64,
}

const GOLDEN_TOL: f64 = 1e-6;

fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let ratio = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > GOLDEN_TOL {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Uniform grid of `points` values from `lo` to `hi` inclusive.
pub fn time_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let step = (hi - lo) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else {
                lo + step * i as f64
            }
        })
        .collect()
}

/// Minimize `P_c(t)` over a window: grid argmin, then golden-section refinement.
pub fn find_revival(
    cfg: &CouplingConfig,
    window: (f64, f64),
    grid_points: usize,
) -> Result<RevivalReport> {
    let (lo, hi) = window;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::InvalidArgument(format!("empty window [{lo}, {hi}]")));
    }
    if grid_points < 100 {
        return Err(Error::InvalidArgument(format!(
            "grid_points must be at least 100 (got {grid_points})"
        )));
    }
    let engine = InhomogeneousEngine::new(cfg)?;
    let p_c = |t: f64| engine.state(t).amplitudes()[2].norm_sqr();

    let grid = time_grid(lo, hi, grid_points);
    let (best, _) = grid.iter().enumerate().map(|(i, &t)| (i, p_c(t))).fold(
        (0, f64::INFINITY),
        |acc, (i, v)| if v < acc.1 { (i, v) } else { acc },
    );
    let bracket_lo = grid[best.saturating_sub(1)];
    let bracket_hi = grid[(best + 1).min(grid_points - 1)];
    let refined = golden_section(p_c, bracket_lo, bracket_hi);
    let t_star = if p_c(refined) <= p_c(grid[best]) {
        refined
    } else {
        grid[best]
    };

    let state = engine.state(t_star);
    let probs = state.amplitudes().map(|z| z.norm_sqr());
    Ok(RevivalReport {
        t_star,
        p_c: probs[2],
        population_imbalance: (probs[0] - probs[1]).abs(),
        fidelity: SubspaceState::bell_up().inner(&state).norm_sqr(),
    })
}

/// Spread (max − min) of the three pairwise mutual informations at `t`.
pub fn near_equal_spread(cfg: &CouplingConfig, t: f64) -> Result<f64> {
    let rho = InhomogeneousEngine::new(cfg)?.density(t);
    spread_of(&rho)
}

fn spread_of(rho: &crate::qubit::SystemDensityMatrix) -> Result<f64> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for pair in Pair::ALL {
        let mi = mutual_information(rho, pair)?;
        lo = lo.min(mi);
        hi = hi.max(mi);
    }
    Ok(hi - lo)
}

/// Local minima `(t, spread)` of the spread over a uniform grid.
pub fn near_equal_minima(
    cfg: &CouplingConfig,
    window: (f64, f64),
    points: usize,
) -> Result<Vec<(f64, f64)>> {
    if window.0.is_nan() || window.1.is_nan() || window.0 >= window.1 || points < 3 {
        return Err(Error::InvalidArgument(format!(
            "need a nonempty window and at least 3 points (got [{}, {}], {points})",
            window.0, window.1
        )));
    }
    let engine = InhomogeneousEngine::new(cfg)?;
    let grid = time_grid(window.0, window.1, points);
    let values = grid
        .iter()
        .map(|&t| spread_of(&engine.density(t)))
        .collect::<Result<Vec<_>>>()?;
    Ok((1..points - 1)
        .filter(|&i| values[i] < values[i - 1] && values[i] <= values[i + 1])
        .map(|i| (grid[i], values[i]))
        .collect())
}

/// Dipolar exchange `J = C3 / R³` between Rydberg atoms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RydbergParams {
    /// MHz·μm³.
    pub c3: f64,
    /// μm.
    pub r: f64,
}

impl RydbergParams {
    pub fn new(c3: f64, r: f64) -> Result<Self> {
        if !(c3 > 0.0 && r > 0.0 && c3.is_finite() && r.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "C3 and R must be positive (got C3 = {c3}, R = {r})"
            )));
        }
        Ok(Self { c3, r })
    }

    /// Coupling in MHz.
    pub fn coupling(&self) -> f64 {
        self.c3 / self.r.powi(3)
    }
}

/// Laboratory time in μs for a dimensionless time, taking 1 MHz × 1 μs = 1.
pub fn rydberg_time(p: &RydbergParams, tau: f64) -> f64 {
    tau / p.coupling()
}

/// Interval of laboratory times when `C3` is only known to `±c3_err`.
pub fn rydberg_time_range(p: &RydbergParams, c3_err: f64, tau: f64) -> Result<(f64, f64)> {
    let hi_c3 = RydbergParams::new(p.c3 + c3_err.abs(), p.r)?;
    let lo_c3 = RydbergParams::new(p.c3 - c3_err.abs(), p.r)?;
    Ok((rydberg_time(&hi_c3, tau), rydberg_time(&lo_c3, tau)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::density_homogeneous;
    use crate::measures::concurrence;
    use crate::qubit::reduce_pair;
    use approx::assert_abs_diff_eq;

    fn reference_config() -> CouplingConfig {
        CouplingConfig::new(0.5, 0.8).unwrap()
    }

    #[test]
    fn first_equal_time_value() {
        let t = equal_entanglement_times(1.0, 0).unwrap();
        assert_eq!(t.len(), 1);
        assert_abs_diff_eq!(t[0], 0.878744, epsilon = 1e-6);
    }

    #[test]
    fn equal_times_with_one_period() {
        let t = equal_entanglement_times(1.0, 1).unwrap();
        let te = first_equal_time();
        let exact = [te, HOMOGENEOUS_PERIOD - te, HOMOGENEOUS_PERIOD + te];
        assert_eq!(t.len(), 3);
        for (x, y) in t.iter().zip(exact) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(t[1], 3.310046, epsilon = 1e-6);
        assert_abs_diff_eq!(t[2], 5.067534, epsilon = 1e-6);
    }

    #[test]
    fn equal_times_scale_inversely_with_coupling() {
        let t = equal_entanglement_times(2.0, 0).unwrap();
        assert_abs_diff_eq!(t[0], 0.439372, epsilon = 1e-6);
    }

    #[test]
    fn equal_times_reject_zero_coupling() {
        assert!(equal_entanglement_times(0.0, 3).is_err());
    }

    #[test]
    fn equal_times_have_equal_concurrences() {
        for t in equal_entanglement_times(1.0, 3).unwrap() {
            let rho = density_homogeneous(1.0, t).unwrap();
            for pair in Pair::ALL {
                let c = concurrence(&reduce_pair(&rho, pair).unwrap()).unwrap();
                assert_abs_diff_eq!(c, 2.0 / 3.0, epsilon = 1e-9);
                let mi = mutual_information(&rho, pair).unwrap();
                assert_abs_diff_eq!(mi, 0.918296, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn revival_in_default_window() {
        let r = find_revival(&reference_config(), (8.0, 11.0), 3001).unwrap();
        assert!((9.1..=9.7).contains(&r.t_star), "t* = {}", r.t_star);
        assert!(r.p_c < 0.02);
        assert!(r.population_imbalance < 0.05);
        assert!(r.fidelity < 1.0);
    }

    #[test]
    fn revival_at_initial_time() {
        let r = find_revival(&reference_config(), (-0.1, 0.1), 2001).unwrap();
        assert_abs_diff_eq!(r.t_star, 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(r.p_c, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(r.fidelity, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn revival_in_homogeneous_limit() {
        let cfg = CouplingConfig::new(0.5, 0.5 + 1e-6).unwrap();
        let r = find_revival(&cfg, (3.9, 4.5), 601).unwrap();
        assert_abs_diff_eq!(r.t_star, HOMOGENEOUS_PERIOD, epsilon = 1e-4);
        assert_abs_diff_eq!(r.fidelity, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn revival_rejects_bad_window() {
        assert!(find_revival(&reference_config(), (2.0, 2.0), 1000).is_err());
        assert!(find_revival(&reference_config(), (0.0, 1.0), 10).is_err());
    }

    #[test]
    fn revival_is_grid_stable() {
        let coarse = find_revival(&reference_config(), (8.0, 11.0), 3001).unwrap();
        let fine = find_revival(&reference_config(), (8.0, 11.0), 30001).unwrap();
        assert!((coarse.t_star - fine.t_star).abs() < 1e-4);
        let again = find_revival(&reference_config(), (8.0, 11.0), 3001).unwrap();
        assert_eq!(coarse, again);
    }

    #[test]
    fn spread_at_start_is_two() {
        for (aa, ab) in [(0.5, 0.8), (2.0, 0.1)] {
            let s = near_equal_spread(&CouplingConfig::new(aa, ab).unwrap(), 0.0).unwrap();
            assert_abs_diff_eq!(s, 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn spread_small_near_homogeneous_w_point() {
        let cfg = CouplingConfig::new(0.5, 0.5 + 1e-6).unwrap();
        let s = near_equal_spread(&cfg, first_equal_time()).unwrap();
        assert!(s < 1e-3, "spread {s}");
    }

    #[test]
    fn reference_config_has_near_equal_region() {
        let minima = near_equal_minima(&reference_config(), (0.0, 10.0), 2001).unwrap();
        assert!(minima.iter().any(|&(_, s)| s < 0.15), "{minima:?}");
    }

    #[test]
    fn rydberg_first_equal_time() {
        let p = RydbergParams::new(7950.0, 30.0).unwrap();
        assert_abs_diff_eq!(rydberg_time(&p, 0.878744), 2.9843, epsilon = 1e-3);
        assert_eq!(rydberg_time(&p, 0.0), 0.0);
    }

    #[test]
    fn rydberg_uncertainty_interval() {
        let p = RydbergParams::new(7950.0, 30.0).unwrap();
        let (lo, hi) = rydberg_time_range(&p, 130.0, 0.878744).unwrap();
        assert_abs_diff_eq!(lo, 2.936, epsilon = 1e-3);
        assert_abs_diff_eq!(hi, 3.034, epsilon = 1e-3);
    }

    #[test]
    fn rydberg_scaling() {
        let p = RydbergParams::new(7950.0, 30.0).unwrap();
        let q = RydbergParams::new(7950.0, 60.0).unwrap();
        assert_abs_diff_eq!(
            rydberg_time(&p, 2.0),
            2.0 * rydberg_time(&p, 1.0),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            rydberg_time(&q, 1.0),
            8.0 * rydberg_time(&p, 1.0),
            epsilon = 1e-12
        );
        assert!(RydbergParams::new(-1.0, 30.0).is_err());
    }
}
