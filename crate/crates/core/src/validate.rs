//! Oracle-equivalence and invariant suites over seeded random samples.
//!
//! Each check tracks the largest deviation seen and the sample that produced
//! it. The analytic engines are passed in as function pointers so a harness
//! can substitute a corrupted one and confirm the suites notice.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bethe::{spectral_decomposition, CouplingConfig};
use crate::dynamics::{
    density_homogeneous, density_inhomogeneous, evolve_homogeneous, evolve_inhomogeneous,
    homogeneous_elements,
};
use crate::linalg::hermitian_eigenvalues;
use crate::measures::{
    concurrence, homogeneous_mutual_information, mutual_information, wootters_lambdas,
};
use crate::oracle::{
    build_hamiltonian, build_homogeneous_hamiltonian, oracle_reductions, sector_eigen,
    FullHamiltonian, FullState, OracleEvolver,
};
use crate::qubit::{
    reduce_pair, reduce_single, validate_density, AsDensity, Pair, Qubit, SubspaceState,
    SystemDensityMatrix,
};
use crate::Result;

pub const ORACLE_TOL: f64 = 1e-9;
pub const SPECTRUM_TOL: f64 = 1e-9;
pub const EIGENVECTOR_TOL: f64 = 1e-8;
pub const COMPLETENESS_TOL: f64 = 1e-12;
pub const CLOSED_FORM_TOL: f64 = 1e-12;
pub const FORMULA_TOL: f64 = 1e-10;
pub const DENSITY_TOL: f64 = 1e-10;
pub const NORM_TOL: f64 = 1e-12;
pub const ENERGY_TOL: f64 = 1e-10;
pub const LEAKAGE_TOL: f64 = 1e-12;
pub const RANGE_TOL: f64 = 1e-12;

/// Coupling range sampled for random configurations.
pub const COUPLING_RANGE: (f64, f64) = (0.05, 5.0);
/// Time window sampled for random evaluations.
pub const TIME_RANGE: (f64, f64) = (0.0, 20.0);
/// Minimum `|A_a − A_b|` for sampled configurations.
const MIN_COUPLING_GAP: f64 = 1e-3;

type InhomogeneousFn = fn(&CouplingConfig, f64) -> Result<SystemDensityMatrix>;
type HomogeneousFn = fn(f64, f64) -> Result<SystemDensityMatrix>;

/// Density-matrix engines under test.
#[derive(Clone, Copy)]
pub struct Engines {
    pub inhomogeneous: InhomogeneousFn,
    pub homogeneous: HomogeneousFn,
}

impl Default for Engines {
    fn default() -> Self {
        Self {
            inhomogeneous: density_inhomogeneous,
            homogeneous: density_homogeneous,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub tolerance: f64,
    pub max_deviation: f64,
    pub worst_case: String,
}

impl Check {
    fn new(suite: &'static str, name: &'static str, tolerance: f64) -> Self {
        Self {
            suite,
            name,
            tolerance,
            max_deviation: 0.0,
            worst_case: String::new(),
        }
    }

    fn record(&mut self, deviation: f64, case: &Case) {
        let deviation = if deviation.is_nan() {
            f64::INFINITY
        } else {
            deviation
        };
        if deviation > self.max_deviation || self.worst_case.is_empty() {
            self.max_deviation = self.max_deviation.max(deviation);
            self.worst_case = case.to_string();
        }
    }

    fn record_result(&mut self, deviation: Result<f64>, case: &Case) {
        match deviation {
            Ok(d) => self.record(d, case),
            Err(e) => {
                self.max_deviation = f64::INFINITY;
                self.worst_case = format!("{case}: {e}");
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Case {
    Inhomogeneous { aa: f64, ab: f64, t: f64 },
    Homogeneous { j: f64, t: f64 },
}

impl std::fmt::Display for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Case::Inhomogeneous { aa, ab, t } => {
                write!(f, "inhomogeneous A_a={aa:.6} A_b={ab:.6} t={t:.6}")
            }
            Case::Homogeneous { j, t } => write!(f, "homogeneous J={j:.6} t={t:.6}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub seed: u64,
    pub cases: usize,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn check(&self, suite: &str, name: &str) -> Option<&Check> {
        self.checks
            .iter()
            .find(|c| c.suite == suite && c.name == name)
    }

    /// Plain-text report, deterministic for fixed inputs.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "validation seed={} cases={}", self.seed, self.cases);
        let mut suite = "";
        for c in &self.checks {
            if c.suite != suite {
                suite = c.suite;
                let ok = self
                    .checks
                    .iter()
                    .filter(|x| x.suite == suite)
                    .all(Check::passed);
                let _ = writeln!(out, "suite {suite}: {}", if ok { "PASS" } else { "FAIL" });
            }
            let _ = writeln!(
                out,
                "  {:<28} max {:>10.3e}  tol {:>8.1e}  {}",
                c.name,
                c.max_deviation,
                c.tolerance,
                if c.passed() { "PASS" } else { "FAIL" }
            );
            if !c.passed() {
                let _ = writeln!(out, "    worst case: {}", c.worst_case);
            }
        }
        let _ = writeln!(
            out,
            "result: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}

fn sample_config(rng: &mut ChaCha8Rng) -> CouplingConfig {
    loop {
        let aa = rng.random_range(COUPLING_RANGE.0..COUPLING_RANGE.1);
        let ab = rng.random_range(COUPLING_RANGE.0..COUPLING_RANGE.1);
        if (aa - ab).abs() >= MIN_COUPLING_GAP {
            return CouplingConfig::new(aa, ab).expect("sampled couplings are positive");
        }
    }
}

fn sample_case(rng: &mut ChaCha8Rng, i: usize) -> Case {
    let t = rng.random_range(TIME_RANGE.0..TIME_RANGE.1);
    if i.is_multiple_of(2) {
        let cfg = sample_config(rng);
        Case::Inhomogeneous {
            aa: cfg.coupling_a(),
            ab: cfg.coupling_b(),
            t,
        }
    } else {
        let j = rng.random_range(2.0 * COUPLING_RANGE.0..2.0 * COUPLING_RANGE.1);
        Case::Homogeneous { j, t }
    }
}

impl Case {
    fn hamiltonian(&self) -> FullHamiltonian {
        match *self {
            Case::Inhomogeneous { aa, ab, .. } => {
                build_hamiltonian(&CouplingConfig::new(aa, ab).expect("valid"))
            }
            Case::Homogeneous { j, .. } => build_homogeneous_hamiltonian(j),
        }
    }

    fn time(&self) -> f64 {
        match *self {
            Case::Inhomogeneous { t, .. } | Case::Homogeneous { t, .. } => t,
        }
    }

    fn analytic_density(&self, engines: &Engines) -> Result<SystemDensityMatrix> {
        match *self {
            Case::Inhomogeneous { aa, ab, t } => {
                (engines.inhomogeneous)(&CouplingConfig::new(aa, ab)?, t)
            }
            Case::Homogeneous { j, t } => (engines.homogeneous)(j, t),
        }
    }

    fn analytic_state(&self) -> Result<SubspaceState> {
        match *self {
            Case::Inhomogeneous { aa, ab, t } => {
                evolve_inhomogeneous(&CouplingConfig::new(aa, ab)?, t)
            }
            Case::Homogeneous { j, t } => evolve_homogeneous(j, t),
        }
    }
}

fn oracle_suite(rng: &mut ChaCha8Rng, cases: usize, engines: &Engines) -> Vec<Check> {
    const SUITE: &str = "oracle-equivalence";
    let mut rho_s = Check::new(SUITE, "system density", ORACLE_TOL);
    let mut pairs = Check::new(SUITE, "pair densities", ORACLE_TOL);
    let mut singles = Check::new(SUITE, "single densities", ORACLE_TOL);
    let mut mi = Check::new(SUITE, "mutual information", ORACLE_TOL);
    let mut conc = Check::new(SUITE, "concurrence", ORACLE_TOL);

    for i in 0..cases {
        let case = sample_case(rng, i);
        let outcome = (|| -> Result<[f64; 5]> {
            let analytic = case.analytic_density(engines)?;
            let psi =
                OracleEvolver::new(case.hamiltonian())?.evolve(&FullState::bell_up(), case.time());
            let oracle = oracle_reductions(&psi)?;
            let mut dev = [analytic.max_abs_diff(&oracle.system), 0.0, 0.0, 0.0, 0.0];
            for (pair, reference) in Pair::ALL.iter().zip(&oracle.pairs) {
                let p = reduce_pair(&analytic, *pair)?;
                dev[1] = dev[1].max(p.max_abs_diff(reference));
                let mi_oracle = oracle_mutual_information(&oracle, *pair)?;
                dev[3] = dev[3].max((mutual_information(&analytic, *pair)? - mi_oracle).abs());
                dev[4] = dev[4].max((concurrence(&p)? - concurrence(reference)?).abs());
            }
            for (q, reference) in Qubit::ALL.iter().zip(&oracle.singles) {
                dev[2] = dev[2].max(reduce_single(&analytic, *q)?.max_abs_diff(reference));
            }
            Ok(dev)
        })();
        for (k, check) in [&mut rho_s, &mut pairs, &mut singles, &mut mi, &mut conc]
            .into_iter()
            .enumerate()
        {
            check.record_result(outcome.as_ref().map(|d| d[k]).map_err(Clone::clone), &case);
        }
    }
    vec![rho_s, pairs, singles, mi, conc]
}

/// Mutual information from the oracle's own contracted matrices.
pub fn oracle_mutual_information(
    oracle: &crate::oracle::OracleReductions,
    pair: Pair,
) -> Result<f64> {
    use crate::measures::von_neumann_entropy;
    let (x, y) = pair.qubits();
    let index = Pair::ALL.iter().position(|&p| p == pair).expect("pair");
    Ok(von_neumann_entropy(&oracle.singles[x.index()])?
        + von_neumann_entropy(&oracle.singles[y.index()])?
        - von_neumann_entropy(&oracle.pairs[index])?)
}

fn spectrum_suite(rng: &mut ChaCha8Rng, cases: usize) -> Vec<Check> {
    const SUITE: &str = "spectrum";
    let mut energies = Check::new(SUITE, "bethe vs oracle energies", SPECTRUM_TOL);
    let mut vectors = Check::new(SUITE, "eigenvectors up to sign", EIGENVECTOR_TOL);
    let mut complete = Check::new(SUITE, "completeness", COMPLETENESS_TOL);
    let mut real = Check::new(SUITE, "real discriminant", 0.0);

    for _ in 0..cases {
        let cfg = sample_config(rng);
        let case = Case::Inhomogeneous {
            aa: cfg.coupling_a(),
            ab: cfg.coupling_b(),
            t: 0.0,
        };
        let outcome = (|| -> Result<[f64; 4]> {
            let spec = spectral_decomposition(&cfg)?;
            let oracle = sector_eigen(&build_hamiltonian(&cfg))?;
            let mut modes = spec.modes;
            modes.sort_by(|x, y| x.energy.total_cmp(&y.energy));
            let mut dev = [0.0f64; 4];
            for (k, mode) in modes.iter().enumerate() {
                dev[0] = dev[0].max((mode.energy - oracle.values[k]).abs());
                let col = oracle.vectors.column(k);
                let same = (0..3).fold(0.0f64, |m, j| m.max((mode.amplitudes[j] - col[j]).abs()));
                let flip = (0..3).fold(0.0f64, |m, j| m.max((mode.amplitudes[j] + col[j]).abs()));
                dev[1] = dev[1].max(same.min(flip));
            }
            for i in 0..3 {
                for j in 0..3 {
                    let sum: f64 = modes
                        .iter()
                        .map(|m| m.amplitudes[i] * m.amplitudes[j])
                        .sum();
                    let target = if i == j { 1.0 } else { 0.0 };
                    dev[2] = dev[2].max((sum - target).abs());
                }
            }
            let (ea, eb) = (cfg.epsilon(Qubit::A), cfg.epsilon(Qubit::B));
            if ea * ea + eb * eb - ea * eb <= 0.0 {
                dev[3] = f64::INFINITY;
            }
            Ok(dev)
        })();
        let checks = [&mut energies, &mut vectors, &mut complete, &mut real];
        for (k, check) in checks.into_iter().enumerate() {
            check.record_result(outcome.as_ref().map(|d| d[k]).map_err(Clone::clone), &case);
        }
    }
    vec![energies, vectors, complete, real]
}

fn closed_form_suite(rng: &mut ChaCha8Rng, cases: usize, engines: &Engines) -> Vec<Check> {
    const SUITE: &str = "closed-forms";
    let mut six = Check::new(SUITE, "six coefficients vs outer", CLOSED_FORM_TOL);
    let mut hom = Check::new(SUITE, "homogeneous vs outer", CLOSED_FORM_TOL);
    let mut hom_mi = Check::new(SUITE, "homogeneous S(a:b) formula", FORMULA_TOL);
    let mut lambda = Check::new(SUITE, "lambda squared formula", FORMULA_TOL);

    for i in 0..cases {
        let cfg = sample_config(rng);
        let t = rng.random_range(TIME_RANGE.0..TIME_RANGE.1);
        let j = rng.random_range(2.0 * COUPLING_RANGE.0..2.0 * COUPLING_RANGE.1);
        let inh = Case::Inhomogeneous {
            aa: cfg.coupling_a(),
            ab: cfg.coupling_b(),
            t,
        };
        let homc = Case::Homogeneous { j, t };

        let rho = (engines.inhomogeneous)(&cfg, t);
        six.record_result(
            rho.clone()
                .and_then(|r| Ok(r.max_abs_diff(&evolve_inhomogeneous(&cfg, t)?.density()))),
            &inh,
        );
        hom.record_result(
            (engines.homogeneous)(j, t)
                .and_then(|r| Ok(r.max_abs_diff(&evolve_homogeneous(j, t)?.density()))),
            &homc,
        );
        hom_mi.record_result(
            (|| {
                let el = homogeneous_elements(j, t)?;
                let generic = mutual_information(&(engines.homogeneous)(j, t)?, Pair::AB)?;
                Ok((homogeneous_mutual_information(el.a, el.c) - generic).abs())
            })(),
            &homc,
        );
        lambda.record_result(rho.and_then(|r| lambda_deviation(&r)), &inh);
        let _ = i;
    }
    vec![six, hom, hom_mi, lambda]
}

/// Largest gap between computed `λ₁,₂²` and `¼[(XY+|Z|²) ± √(4XY|Z|²)]`.
fn lambda_deviation(rho: &SystemDensityMatrix) -> Result<f64> {
    let cases = [
        (Pair::AB, rho.coeff_a(), rho.coeff_b(), rho.coeff_d().norm()),
        (Pair::AC, rho.coeff_a(), rho.coeff_c(), rho.coeff_e().norm()),
        (Pair::BC, rho.coeff_b(), rho.coeff_c(), rho.coeff_f().norm()),
    ];
    let mut worst = 0.0f64;
    for (pair, x, y, z) in cases {
        let l = wootters_lambdas(&reduce_pair(rho, pair)?)?;
        let base = x * y + z * z;
        let split = (4.0 * x * y * z * z).sqrt();
        worst = worst
            .max((l[0] * l[0] - 0.25 * (base + split)).abs())
            .max((l[1] * l[1] - 0.25 * (base - split)).abs());
    }
    Ok(worst)
}

fn density_defect<M: AsDensity>(m: &M) -> f64 {
    let r = validate_density(m, DENSITY_TOL);
    r.hermiticity_defect
        .max(r.trace_defect)
        .max((-r.min_eigenvalue).max(0.0))
}

fn invariant_suite(rng: &mut ChaCha8Rng, cases: usize, engines: &Engines) -> Vec<Check> {
    const SUITE: &str = "invariants";
    let mut density = Check::new(SUITE, "trace/hermitian/psd", DENSITY_TOL);
    let mut purity = Check::new(SUITE, "pure-state spectrum", DENSITY_TOL);
    let mut norm = Check::new(SUITE, "norm", NORM_TOL);
    let mut energy = Check::new(SUITE, "energy drift", ENERGY_TOL);
    let mut leakage = Check::new(SUITE, "sector leakage", LEAKAGE_TOL);
    let mut conc = Check::new(SUITE, "concurrence in [0,1]", RANGE_TOL);
    let mut mi = Check::new(SUITE, "mutual information in [0,2]", RANGE_TOL);
    let mut coherence = Check::new(SUITE, "|D| <= sqrt(AB)", DENSITY_TOL);

    for i in 0..cases {
        let case = sample_case(rng, i);
        let outcome = (|| -> Result<[f64; 8]> {
            let rho = case.analytic_density(engines)?;
            let mut dev = [0.0f64; 8];
            dev[0] = density_defect(&rho);
            for pair in Pair::ALL {
                let p = reduce_pair(&rho, pair)?;
                dev[0] = dev[0].max(density_defect(&p));
                let c = concurrence(&p)?;
                dev[5] = dev[5].max((-c).max(c - 1.0).max(0.0));
                let m = mutual_information(&rho, pair)?;
                dev[6] = dev[6].max((-m).max(m - 2.0).max(0.0));
            }
            for q in Qubit::ALL {
                dev[0] = dev[0].max(density_defect(&reduce_single(&rho, q)?));
            }
            let eig = hermitian_eigenvalues(&rho.to_dense())?;
            dev[1] = eig[0].abs().max(eig[1].abs()).max((eig[2] - 1.0).abs());

            let state = case.analytic_state()?;
            dev[2] = (state.norm_sqr() - 1.0).abs();
            let h = case.hamiltonian();
            let e0 = h.expectation(&FullState::bell_up());
            dev[3] = (h.expectation(&FullState::from_sector(&state)) - e0).abs();
            let full = OracleEvolver::new(h)?.evolve(&FullState::bell_up(), case.time());
            dev[4] = (full.norm_sqr() - full.sector_weight()).abs();

            let (a, b, cc) = (rho.coeff_a(), rho.coeff_b(), rho.coeff_c());
            dev[7] = [
                (rho.coeff_d().norm(), a * b),
                (rho.coeff_e().norm(), a * cc),
                (rho.coeff_f().norm(), b * cc),
            ]
            .iter()
            .fold(0.0f64, |m, &(z, xy)| m.max(z - xy.max(0.0).sqrt()));
            Ok(dev)
        })();
        let checks = [
            &mut density,
            &mut purity,
            &mut norm,
            &mut energy,
            &mut leakage,
            &mut conc,
            &mut mi,
            &mut coherence,
        ];
        for (k, check) in checks.into_iter().enumerate() {
            check.record_result(outcome.as_ref().map(|d| d[k]).map_err(Clone::clone), &case);
        }
    }
    vec![density, purity, norm, energy, leakage, conc, mi, coherence]
}

/// Run every suite with the library's own engines.
pub fn run_validation(seed: u64, cases: usize) -> ValidationReport {
    run_validation_with(seed, cases, &Engines::default())
}

/// Run every suite against the given engines. Each suite draws from its own
/// stream derived from `seed`, so suites are independent of each other.
pub fn run_validation_with(seed: u64, cases: usize, engines: &Engines) -> ValidationReport {
    let stream = |k: u64| ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ k);
    let mut checks = oracle_suite(&mut stream(1), cases, engines);
    checks.extend(spectrum_suite(&mut stream(2), cases));
    checks.extend(closed_form_suite(&mut stream(3), cases, engines));
    checks.extend(invariant_suite(&mut stream(4), cases, engines));
    ValidationReport {
        seed,
        cases,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let a = run_validation(1, 8);
        let b = run_validation(1, 8);
        assert!(a.passed(), "{}", a.render());
        assert_eq!(a.render(), b.render());
    }

    #[test]
    fn corrupted_engine_fails_oracle_suite() {
        fn flipped(cfg: &CouplingConfig, t: f64) -> Result<SystemDensityMatrix> {
            // Wrong sign on the evolution time.
            density_inhomogeneous(cfg, -t)
        }
        let engines = Engines {
            inhomogeneous: flipped,
            ..Engines::default()
        };
        let report = run_validation_with(1, 6, &engines);
        assert!(!report.passed());
        assert!(report
            .failures()
            .iter()
            .any(|c| c.suite == "oracle-equivalence"));
        assert!(report.render().contains("suite oracle-equivalence: FAIL"));
    }
}
