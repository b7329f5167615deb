//! Special-time report: equal-entanglement times, revival and lab units.

use serde::Serialize;
use triqubit::analysis::{
    equal_entanglement_times, find_revival, first_equal_time, rydberg_time, rydberg_time_range,
    RydbergParams,
};
use triqubit::{concurrence, density_homogeneous, mutual_information, reduce_pair, Pair};

use crate::config::Engine;

pub const CONCURRENCE_TOL: f64 = 1e-9;
pub const MUTUAL_INFORMATION_TOL: f64 = 1e-6;
pub const W_CONCURRENCE: f64 = 2.0 / 3.0;
/// `log₂3 − 2/3`.
pub const W_MUTUAL_INFORMATION: f64 = 0.918_295_834_054_489_6;

pub const DEFAULT_WINDOW: (f64, f64) = (8.0, 11.0);
pub const DEFAULT_REVIVAL_POINTS: usize = 3001;
pub const DEFAULT_N_MAX: u32 = 2;
pub const DEFAULT_C3: f64 = 7950.0;
pub const DEFAULT_C3_ERR: f64 = 130.0;
pub const DEFAULT_R: f64 = 30.0;

#[derive(Debug, Clone, Serialize)]
pub struct EqualTime {
    pub t: f64,
    pub concurrences: [f64; 3],
    pub mutual_informations: [f64; 3],
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Revival {
    pub window: [f64; 2],
    pub grid_points: usize,
    pub t_star: f64,
    pub p_c: f64,
    pub population_imbalance: f64,
    pub fidelity: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Rydberg {
    pub c3_mhz_um3: f64,
    pub c3_err: f64,
    pub r_um: f64,
    pub coupling_mhz: f64,
    pub tau: f64,
    pub time_us: f64,
    pub time_range_us: [f64; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct Tolerances {
    pub concurrence: f64,
    pub mutual_information: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Inputs {
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ab: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecialReport {
    pub inputs: Inputs,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equal_entanglement_times: Option<Vec<EqualTime>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub revival: Option<Revival>,
    pub rydberg: Rydberg,
}

impl SpecialReport {
    /// False if any equal-entanglement time failed its check.
    pub fn verified(&self) -> bool {
        self.equal_entanglement_times
            .as_ref()
            .is_none_or(|ts| ts.iter().all(|t| t.verified))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialSettings {
    pub engine: Engine,
    pub n_max: u32,
    pub window: (f64, f64),
    pub grid_points: usize,
    pub rydberg: RydbergParams,
    pub c3_err: f64,
    pub tau: Option<f64>,
}

pub fn equal_time_entry(j: f64, t: f64) -> triqubit::Result<EqualTime> {
    let rho = density_homogeneous(j, t)?;
    let mut concurrences = [0.0; 3];
    let mut mutual_informations = [0.0; 3];
    for (k, pair) in Pair::ALL.into_iter().enumerate() {
        concurrences[k] = concurrence(&reduce_pair(&rho, pair)?)?;
        mutual_informations[k] = mutual_information(&rho, pair)?;
    }
    let verified = concurrences
        .iter()
        .all(|c| (c - W_CONCURRENCE).abs() <= CONCURRENCE_TOL)
        && mutual_informations
            .iter()
            .all(|m| (m - W_MUTUAL_INFORMATION).abs() <= MUTUAL_INFORMATION_TOL);
    Ok(EqualTime {
        t,
        concurrences,
        mutual_informations,
        verified,
    })
}

pub fn rydberg_section(p: &RydbergParams, c3_err: f64, tau: f64) -> triqubit::Result<Rydberg> {
    let (lo, hi) = rydberg_time_range(p, c3_err, tau)?;
    Ok(Rydberg {
        c3_mhz_um3: p.c3,
        c3_err,
        r_um: p.r,
        coupling_mhz: p.coupling(),
        tau,
        time_us: rydberg_time(p, tau),
        time_range_us: [lo, hi],
    })
}

pub fn run_special(s: &SpecialSettings) -> triqubit::Result<SpecialReport> {
    let tau = s.tau.unwrap_or_else(first_equal_time);
    let (inputs, times, revival) = match s.engine {
        Engine::Homogeneous { j } => {
            let times = equal_entanglement_times(j, s.n_max)?
                .into_iter()
                .map(|t| equal_time_entry(j, t))
                .collect::<triqubit::Result<Vec<_>>>()?;
            let inputs = Inputs {
                mode: "homogeneous",
                aa: None,
                ab: None,
                j: Some(j),
                n_max: Some(s.n_max),
            };
            (inputs, Some(times), None)
        }
        Engine::Inhomogeneous(cfg) => {
            let r = find_revival(&cfg, s.window, s.grid_points)?;
            let inputs = Inputs {
                mode: "inhomogeneous",
                aa: Some(cfg.coupling_a()),
                ab: Some(cfg.coupling_b()),
                j: None,
                n_max: None,
            };
            let revival = Revival {
                window: [s.window.0, s.window.1],
                grid_points: s.grid_points,
                t_star: r.t_star,
                p_c: r.p_c,
                population_imbalance: r.population_imbalance,
                fidelity: r.fidelity,
            };
            (inputs, None, Some(revival))
        }
    };
    Ok(SpecialReport {
        inputs,
        tolerances: Tolerances {
            concurrence: CONCURRENCE_TOL,
            mutual_information: MUTUAL_INFORMATION_TOL,
        },
        equal_entanglement_times: times,
        revival,
        rydberg: rydberg_section(&s.rydberg, s.c3_err, tau)?,
    })
}
