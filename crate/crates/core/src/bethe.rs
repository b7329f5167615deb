//! Bethe-ansatz solution of the one-down-spin sector for unequal couplings.
//!
//! With `ε_c = 0` and `A_j = 1/(ε_c − ε_j)`, a single spectral parameter `ν`
//! solves `1/(ν−ε_a) + 1/(ν−ε_b) + 1/ν = 0`. Clearing denominators gives the
//! quadratic `3ν² − 2(ε_a+ε_b)ν + ε_a ε_b = 0`; the third eigenstate is the
//! `ν → ∞` limit, i.e. the total-spin lowering of `|↑↑↑⟩`.

use crate::qubit::Qubit;
use crate::{Error, Result};

/// Exchange strengths `A_a` (a–c) and `A_b` (b–c).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingConfig {
    aa: f64,
    ab: f64,
}

impl CouplingConfig {
    pub fn new(aa: f64, ab: f64) -> Result<Self> {
        if !(aa.is_finite() && ab.is_finite() && aa > 0.0 && ab > 0.0) {
            return Err(Error::InvalidCoupling { aa, ab });
        }
        Ok(Self { aa, ab })
    }

    pub fn coupling_a(&self) -> f64 {
        self.aa
    }

    pub fn coupling_b(&self) -> f64 {
        self.ab
    }

    /// `ε_j = −1/A_j`, with `ε_c = 0`.
    pub fn epsilon(&self, q: Qubit) -> f64 {
        match q {
            Qubit::A => -1.0 / self.aa,
            Qubit::B => -1.0 / self.ab,
            Qubit::C => 0.0,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.aa == self.ab
    }

    fn require_inhomogeneous(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateCoupling(self.aa))
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetheRoot {
    Finite(f64),
    Infinite,
}

impl BetheRoot {
    /// `1/(ν − ε_c)`, zero for the infinite root.
    pub fn inverse(self) -> f64 {
        match self {
            BetheRoot::Finite(nu) => 1.0 / nu,
            BetheRoot::Infinite => 0.0,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            BetheRoot::Finite(nu) => Some(nu),
            BetheRoot::Infinite => None,
        }
    }
}

/// Normalized eigenmode `w_j ∝ 1/(ν − ε_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenMode {
    pub root: BetheRoot,
    pub energy: f64,
    /// Real unit vector over `(a, b, c)`.
    pub amplitudes: [f64; 3],
}

impl EigenMode {
    pub fn amplitude(&self, q: Qubit) -> f64 {
        self.amplitudes[q.index()]
    }
}

/// The three sector eigenmodes, ordered "+" root, "−" root, infinite root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralDecomposition {
    pub config: CouplingConfig,
    pub modes: [EigenMode; 3],
}

impl SpectralDecomposition {
    pub fn energies(&self) -> [f64; 3] {
        self.modes.map(|m| m.energy)
    }

    /// `ω_kk' = 1/(ν_k − ε_c) − 1/(ν_k' − ε_c) = E_k − E_k'`.
    pub fn frequency(&self, k: usize, kp: usize) -> f64 {
        self.modes[k].root.inverse() - self.modes[kp].root.inverse()
    }

    pub fn frequencies(&self) -> [[f64; 3]; 3] {
        std::array::from_fn(|k| std::array::from_fn(|kp| self.frequency(k, kp)))
    }
}

/// Left-hand side of the M = 1 Bethe equation.
pub fn bethe_residual(nu: f64, cfg: &CouplingConfig) -> Result<f64> {
    let (ea, eb) = (cfg.epsilon(Qubit::A), cfg.epsilon(Qubit::B));
    if nu == ea || nu == eb || nu == 0.0 {
        return Err(Error::Pole(nu));
    }
    Ok(1.0 / (nu - ea) + 1.0 / (nu - eb) + 1.0 / nu)
}

/// Roots in the order "+" branch, "−" branch, infinity.
pub fn solve_bethe_roots(cfg: &CouplingConfig) -> Result<[BetheRoot; 3]> {
    cfg.require_inhomogeneous()?;
    let (ea, eb) = (cfg.epsilon(Qubit::A), cfg.epsilon(Qubit::B));
    let sum = ea + eb;
    let product = ea * eb;
    // ε_a² + ε_b² − ε_a ε_b = ((ε_a − ε_b)² + ε_a² + ε_b²)/2 > 0.
    let disc = 0.5 * ((ea - eb) * (ea - eb) + ea * ea + eb * eb);
    let root = disc.sqrt();
    // Take the non-cancelling branch directly, the other from ν₊ν₋ = ε_a ε_b / 3.
    let (plus, minus) = if sum <= 0.0 {
        let minus = (sum - root) / 3.0;
        (product / (3.0 * minus), minus)
    } else {
        let plus = (sum + root) / 3.0;
        (plus, product / (3.0 * plus))
    };
    Ok([
        BetheRoot::Finite(polish(plus, cfg)),
        BetheRoot::Finite(polish(minus, cfg)),
        BetheRoot::Infinite,
    ])
}

/// Nearest neighbouring double (within two ulps) with the smallest residual.
fn polish(nu: f64, cfg: &CouplingConfig) -> f64 {
    let candidates = [
        nu.next_down().next_down(),
        nu.next_down(),
        nu,
        nu.next_up(),
        nu.next_up().next_up(),
    ];
    let score = |x: f64| bethe_residual(x, cfg).map_or(f64::INFINITY, f64::abs);
    candidates
        .into_iter()
        .fold(nu, |best, x| if score(x) < score(best) { x } else { best })
}

fn mode_for(root: BetheRoot, cfg: &CouplingConfig) -> EigenMode {
    let offset = 0.5 * (cfg.aa + cfg.ab);
    let amplitudes = match root {
        BetheRoot::Finite(nu) => {
            let raw = Qubit::ALL.map(|q| 1.0 / (nu - cfg.epsilon(q)));
            let norm = raw.iter().map(|w| w * w).sum::<f64>().sqrt();
            raw.map(|w| w / norm)
        }
        BetheRoot::Infinite => [1.0 / 3.0_f64.sqrt(); 3],
    };
    EigenMode {
        root,
        energy: offset + root.inverse(),
        amplitudes,
    }
}

pub fn spectral_decomposition(cfg: &CouplingConfig) -> Result<SpectralDecomposition> {
    let roots = solve_bethe_roots(cfg)?;
    Ok(SpectralDecomposition {
        config: *cfg,
        modes: roots.map(|r| mode_for(r, cfg)),
    })
}
