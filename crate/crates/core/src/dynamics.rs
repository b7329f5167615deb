//! Time evolution of the Bell⊗up initial state.
//!
//! Time is a continuous parameter everywhere in this module; negative values
//! evolve backwards.

use nalgebra::Matrix3;

use crate::bethe::{spectral_decomposition, CouplingConfig, SpectralDecomposition};
use crate::qubit::{SubspaceState, SystemDensityMatrix};
use crate::{Error, Result, C64};

/// Evaluates states and density matrices for one unequal-coupling configuration.
///
/// The spectrum is computed once; the engine is immutable and can be shared
/// across threads evaluating different times.
#[derive(Debug, Clone, Copy)]
pub struct InhomogeneousEngine {
    spectrum: SpectralDecomposition,
    /// `w^k_a + w^k_b`: overlap of each mode with `|a⟩ + |b⟩`.
    bell_overlap: [f64; 3],
}

impl InhomogeneousEngine {
    pub fn new(cfg: &CouplingConfig) -> Result<Self> {
        let spectrum = spectral_decomposition(cfg)?;
        let bell_overlap = spectrum.modes.map(|m| m.amplitudes[0] + m.amplitudes[1]);
        Ok(Self {
            spectrum,
            bell_overlap,
        })
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    /// `c_j(t) = (1/√2) Σ_k w^k_j (w^k_a + w^k_b) e^{−i E_k t}`.
    pub fn state(&self, t: f64) -> SubspaceState {
        let mut amps = [C64::new(0.0, 0.0); 3];
        for (mode, overlap) in self.spectrum.modes.iter().zip(self.bell_overlap) {
            let phase =
                C64::from_polar(overlap * std::f64::consts::FRAC_1_SQRT_2, -mode.energy * t);
            for (amp, w) in amps.iter_mut().zip(mode.amplitudes) {
                *amp += phase * w;
            }
        }
        SubspaceState::new(amps)
    }

    /// Density matrix from the double sums over mode pairs.
    ///
    /// Each coefficient is `X_ij(t) = Σ_kk' u_k u_k' w^k_i w^k'_j e^{iω_kk' t}`
    /// with `u_k = w^k_a + w^k_b`; the diagonal ones reduce to cosines. This
    /// sum equals `2 ρ_s[j, i]`, so it is placed below the diagonal and its
    /// conjugate above.
    pub fn density(&self, t: f64) -> SystemDensityMatrix {
        let modes = &self.spectrum.modes;
        let u = &self.bell_overlap;
        let omega = self.spectrum.frequencies();

        let diagonal = |i: usize| -> f64 {
            let mut sum = 0.0;
            for k in 0..3 {
                for kp in 0..3 {
                    sum += u[k]
                        * u[kp]
                        * modes[k].amplitudes[i]
                        * modes[kp].amplitudes[i]
                        * (omega[k][kp] * t).cos();
                }
            }
            sum
        };
        let coherence = |i: usize, j: usize| -> C64 {
            let mut sum = C64::new(0.0, 0.0);
            for k in 0..3 {
                for kp in 0..3 {
                    let weight = u[k] * u[kp] * modes[k].amplitudes[i] * modes[kp].amplitudes[j];
                    sum += C64::from_polar(weight, omega[k][kp] * t);
                }
            }
            sum
        };

        let a = diagonal(0);
        let b = diagonal(1);
        let c = diagonal(2);
        let d = coherence(0, 1);
        let e = coherence(0, 2);
        let f = coherence(1, 2);
        let half = |z: C64| z * 0.5;
        let re = |x: f64| C64::new(0.5 * x, 0.0);
        SystemDensityMatrix::from_matrix(Matrix3::new(
            re(a),
            half(d.conj()),
            half(e.conj()),
            half(d),
            re(b),
            half(f.conj()),
            half(e),
            half(f),
            re(c),
        ))
    }
}

pub fn evolve_inhomogeneous(cfg: &CouplingConfig, t: f64) -> Result<SubspaceState> {
    Ok(InhomogeneousEngine::new(cfg)?.state(t))
}

pub fn density_inhomogeneous(cfg: &CouplingConfig, t: f64) -> Result<SystemDensityMatrix> {
    Ok(InhomogeneousEngine::new(cfg)?.density(t))
}

/// Sector spectrum of `J (s_a·s_c + s_b·s_c)` seen from `|c⟩`.
///
/// `Hⁿ|c⟩ = (Jα₁)ⁿ|c₁⟩ + (Jα₂)ⁿ|c₂⟩` with `|c₁⟩ + |c₂⟩ = |c⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousSpectrum {
    pub alpha: [f64; 2],
    pub components: [[f64; 3]; 2],
}

impl HomogeneousSpectrum {
    pub const fn new() -> Self {
        Self {
            alpha: [-1.0, 0.5],
            components: [
                [-1.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0],
                [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
            ],
        }
    }
}

impl Default for HomogeneousSpectrum {
    fn default() -> Self {
        Self::new()
    }
}

/// Homogeneous density-matrix elements: `ρ_s = [[A, A, B], [A, A, B], [B*, B*, C]]`.
///
/// Unlike the unequal-coupling coefficients these are the matrix entries
/// themselves, so `2A + C = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousElements {
    pub a: f64,
    pub b: C64,
    pub c: f64,
}

fn require_coupling(j: f64) -> Result<()> {
    if j == 0.0 || !j.is_finite() {
        Err(Error::TrivialEvolution(j))
    } else {
        Ok(())
    }
}

/// `|ψ(t)⟩ = (1/√2)[e^{−iJα₁t}/α₁ |c₁⟩ + e^{−iJα₂t}/α₂ |c₂⟩]`.
pub fn evolve_homogeneous(j: f64, t: f64) -> Result<SubspaceState> {
    require_coupling(j)?;
    let spec = HomogeneousSpectrum::new();
    let mut amps = [C64::new(0.0, 0.0); 3];
    for (alpha, comp) in spec.alpha.iter().zip(spec.components.iter()) {
        let coeff = C64::from_polar(std::f64::consts::FRAC_1_SQRT_2 / alpha, -j * alpha * t);
        for (amp, x) in amps.iter_mut().zip(comp) {
            *amp += coeff * *x;
        }
    }
    Ok(SubspaceState::new(amps))
}

pub fn homogeneous_elements(j: f64, t: f64) -> Result<HomogeneousElements> {
    require_coupling(j)?;
    let [a1, a2] = HomogeneousSpectrum::new().alpha;
    let beat = j * (a2 - a1) * t;
    let cross = 9.0 * a1 * a2;
    let a = 0.5 * (1.0 / (9.0 * a2 * a2) + 1.0 / (9.0 * a1 * a1) - 2.0 * beat.cos() / cross);
    let b = (C64::new(1.0 / (9.0 * a2 * a2) - 2.0 / (9.0 * a1 * a1), 0.0)
        + C64::from_polar(2.0 / cross, -beat)
        - C64::from_polar(1.0 / cross, beat))
        * 0.5;
    let c = 0.5 * (1.0 / (9.0 * a2 * a2) + 4.0 / (9.0 * a1 * a1) + 4.0 * beat.cos() / cross);
    Ok(HomogeneousElements { a, b, c })
}

pub fn density_homogeneous(j: f64, t: f64) -> Result<SystemDensityMatrix> {
    let HomogeneousElements { a, b, c } = homogeneous_elements(j, t)?;
    let a = C64::new(a, 0.0);
    let c = C64::new(c, 0.0);
    Ok(SystemDensityMatrix::from_matrix(Matrix3::new(
        a,
        a,
        b,
        a,
        a,
        b,
        b.conj(),
        b.conj(),
        c,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn reference_config() -> CouplingConfig {
        CouplingConfig::new(0.5, 0.8).unwrap()
    }

    fn t_equal() -> f64 {
        2.0 / 3.0 * (0.25f64).acos()
    }

    fn assert_state_close(s: &SubspaceState, expected: [C64; 3], tol: f64) {
        for (x, y) in s.amplitudes().iter().zip(expected) {
            assert!((x - y).norm() <= tol, "{x} vs {y}");
        }
    }

    fn bell() -> [C64; 3] {
        SubspaceState::bell_up().amplitudes()
    }

    #[test]
    fn inhomogeneous_starts_in_bell_up() {
        for (aa, ab) in [(0.5, 0.8), (3.0, 0.1), (1.0, 1.5)] {
            let s = evolve_inhomogeneous(&CouplingConfig::new(aa, ab).unwrap(), 0.0).unwrap();
            assert_state_close(&s, bell(), 1e-15);
        }
    }

    #[test]
    fn inhomogeneous_initial_density() {
        let rho = density_inhomogeneous(&reference_config(), 0.0).unwrap();
        assert_abs_diff_eq!(rho.coeff_a(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rho.coeff_b(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rho.coeff_c(), 0.0, epsilon = 1e-14);
        assert!((rho.coeff_d() - 1.0).norm() < 1e-14);
        assert!(rho.coeff_e().norm() < 1e-14);
        assert!(rho.coeff_f().norm() < 1e-14);
    }

    #[test]
    fn six_coefficients_match_outer_product() {
        let engine = InhomogeneousEngine::new(&reference_config()).unwrap();
        for t in [-3.0, 0.7, 5.0, 19.9] {
            let direct = engine.density(t);
            let outer = engine.state(t).density();
            assert!(direct.max_abs_diff(&outer) <= 1e-12, "t = {t}");
        }
    }

    #[test]
    fn near_revival_in_reference_config() {
        let s = evolve_inhomogeneous(&reference_config(), 9.4).unwrap();
        let p = s.amplitudes().map(|z| z.norm_sqr());
        assert!(p[2] < 0.02, "P_c = {}", p[2]);
        assert!((p[0] - p[1]).abs() < 0.05);
    }

    #[test]
    fn degenerate_coupling_is_rejected() {
        let cfg = CouplingConfig::new(0.5, 0.5).unwrap();
        assert_eq!(
            evolve_inhomogeneous(&cfg, 1.0),
            Err(Error::DegenerateCoupling(0.5))
        );
        assert!(density_inhomogeneous(&cfg, 1.0).is_err());
    }

    #[test]
    fn homogeneous_components() {
        let spec = HomogeneousSpectrum::new();
        for i in 0..3 {
            let sum = spec.components[0][i] + spec.components[1][i];
            assert_abs_diff_eq!(sum, if i == 2 { 1.0 } else { 0.0 }, epsilon = 1e-15);
        }
        // Sector block of J(s_a·s_c + s_b·s_c) at J = 1.
        let h = [[0.0, 0.0, 0.5], [0.0, 0.0, 0.5], [0.5, 0.5, -0.5]];
        for (alpha, comp) in spec.alpha.iter().zip(spec.components) {
            for (row, x) in h.iter().zip(comp) {
                let hx: f64 = row.iter().zip(comp).map(|(h, y)| h * y).sum();
                assert_abs_diff_eq!(hx, alpha * x, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn homogeneous_starts_in_bell_up() {
        assert_state_close(&evolve_homogeneous(1.0, 0.0).unwrap(), bell(), 1e-15);
        let el = homogeneous_elements(1.0, 0.0).unwrap();
        assert_abs_diff_eq!(el.a, 0.5, epsilon = 1e-15);
        assert!(el.b.norm() < 1e-15);
        assert_abs_diff_eq!(el.c, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn homogeneous_w_point() {
        let el = homogeneous_elements(1.0, t_equal()).unwrap();
        assert_abs_diff_eq!(el.a, 1.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(el.c, 1.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(el.b.norm(), 1.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn homogeneous_period_of_density() {
        let period = 4.0 * PI / 3.0;
        let d0 = density_homogeneous(1.0, 0.0).unwrap();
        let d1 = density_homogeneous(1.0, period).unwrap();
        assert!(d0.max_abs_diff(&d1) < 1e-14);
        let s1 = evolve_homogeneous(1.0, period).unwrap().density();
        assert!(s1.max_abs_diff(&d0) < 1e-14);
    }

    #[test]
    fn homogeneous_closed_form_matches_outer_product() {
        for (j, t) in [(1.0, 1.5), (2.5, -0.3), (-0.7, 4.0)] {
            let outer = evolve_homogeneous(j, t).unwrap().density();
            let closed = density_homogeneous(j, t).unwrap();
            assert!(outer.max_abs_diff(&closed) <= 1e-12);
        }
    }

    #[test]
    fn zero_coupling_is_rejected() {
        assert_eq!(
            evolve_homogeneous(0.0, 1.0),
            Err(Error::TrivialEvolution(0.0))
        );
        assert!(density_homogeneous(0.0, 1.0).is_err());
    }

    #[test]
    fn homogeneous_scales_with_coupling() {
        let a = density_homogeneous(2.0, 0.4).unwrap();
        let b = density_homogeneous(1.0, 0.8).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-15);
    }

    proptest! {
        #[test]
        fn norm_is_conserved(aa in 0.05f64..5.0, ab in 0.05f64..5.0, t in -50.0f64..50.0, j in 0.1f64..5.0) {
            prop_assume!(aa != ab);
            let s = evolve_inhomogeneous(&CouplingConfig::new(aa, ab).unwrap(), t).unwrap();
            prop_assert!((s.norm_sqr() - 1.0).abs() <= 1e-12);
            let h = evolve_homogeneous(j, t).unwrap();
            prop_assert!((h.norm_sqr() - 1.0).abs() <= 1e-12);
            let el = homogeneous_elements(j, t).unwrap();
            prop_assert!((2.0 * el.a + el.c - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn density_is_a_pure_state(aa in 0.05f64..5.0, ab in 0.05f64..5.0, t in 0.0f64..20.0) {
            prop_assume!(aa != ab);
            let rho = density_inhomogeneous(&CouplingConfig::new(aa, ab).unwrap(), t).unwrap();
            let eig = crate::linalg::hermitian_eigenvalues(&crate::qubit::AsDensity::to_dense(&rho)).unwrap();
            prop_assert!(eig[0].abs() <= 1e-10 && eig[1].abs() <= 1e-10);
            prop_assert!((eig[2] - 1.0).abs() <= 1e-10);
        }
    }
}
