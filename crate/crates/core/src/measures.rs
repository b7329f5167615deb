//! Entanglement and information measures. All logarithms are base 2.

use nalgebra::Matrix4;

use crate::linalg::hermitian_eigenvalues;
use crate::qubit::{
    reduce_pair, reduce_single, AsDensity, Pair, PairDensityMatrix, SystemDensityMatrix,
    DEFAULT_TOL,
};
use crate::{Error, Result, C64};

/// Eigenvalues below this are rejected as unphysical.
pub const NEGATIVE_EIGENVALUE_LIMIT: f64 = -1e-12;

/// Shannon entropy of a spectrum, with `0·log 0 = 0`.
///
/// Round-off negatives down to [`NEGATIVE_EIGENVALUE_LIMIT`] count as zero.
pub fn entropy_of_spectrum(eigenvalues: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &p in eigenvalues {
        if p < NEGATIVE_EIGENVALUE_LIMIT {
            return Err(Error::NotAState(p));
        }
        if p > 0.0 {
            s -= p * p.log2();
        }
    }
    Ok(s)
}

/// `−Tr ρ log₂ ρ` for a density matrix of any size.
pub fn von_neumann_entropy<M: AsDensity + ?Sized>(rho: &M) -> Result<f64> {
    entropy_of_spectrum(&hermitian_eigenvalues(&rho.to_dense())?)
}

/// `S(x:y) = S_x + S_y − S(x,y)` from generic eigen-decompositions.
pub fn mutual_information(rho_s: &SystemDensityMatrix, pair: Pair) -> Result<f64> {
    let (x, y) = pair.qubits();
    let s_x = von_neumann_entropy(&reduce_single(rho_s, x)?)?;
    let s_y = von_neumann_entropy(&reduce_single(rho_s, y)?)?;
    let s_xy = von_neumann_entropy(&reduce_pair(rho_s, pair)?)?;
    Ok(s_x + s_y - s_xy)
}

/// `S(a:b) = 2A + C log₂C − 2(A+C) log₂(A+C)` for homogeneous matrix elements.
pub fn homogeneous_mutual_information(a: f64, c: f64) -> f64 {
    let xlogx = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
    2.0 * a + xlogx(c) - 2.0 * xlogx(a + c)
}

/// `max(0, λ₁ − λ₂ − λ₃ − λ₄)`.
pub fn concurrence(rho_pair: &PairDensityMatrix) -> Result<f64> {
    let l = wootters_lambdas(rho_pair)?;
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// `(σ_y ⊗ σ_y) ρ* (σ_y ⊗ σ_y)`.
pub fn spin_flip(rho: &Matrix4<C64>) -> Matrix4<C64> {
    let zero = C64::new(0.0, 0.0);
    let i = C64::i();
    let sy = nalgebra::Matrix2::new(zero, -i, i, zero);
    let yy = sy.kronecker(&sy);
    yy * rho.conjugate() * yy
}

/// Checks the X shape with empty `↓↓` population; returns the worst defect.
fn sector_shape_defect(m: &Matrix4<C64>) -> f64 {
    let mut worst = m[(3, 3)].norm();
    for i in 0..4 {
        for j in 0..4 {
            let on_x = i == j || i + j == 3;
            if !on_x {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

/// Square roots of the eigenvalues of the 2×2 block `R R̃` on indices `(p, q)`.
///
/// With trace `T` and determinant `Δ = det R · det R̃ ≥ 0`, the roots satisfy
/// `λ_hi + λ_lo = √(T + 2√Δ)` and `λ_hi λ_lo = √Δ`, which avoids the
/// cancellation of the direct quadratic formula.
fn block_lambdas(rho: &Matrix4<C64>, flipped: &Matrix4<C64>, p: usize, q: usize) -> [f64; 2] {
    let prod = rho * flipped;
    let trace = (prod[(p, p)] + prod[(q, q)]).re;
    let det2 = |m: &Matrix4<C64>| m[(p, p)] * m[(q, q)] - m[(p, q)] * m[(q, p)];
    let det = (det2(rho) * det2(flipped)).re.max(0.0);
    let root_det = det.sqrt();
    let sum = (trace + 2.0 * root_det).max(0.0).sqrt();
    if sum == 0.0 {
        return [0.0, 0.0];
    }
    let diff = (trace - 2.0 * root_det).max(0.0).sqrt();
    let hi = 0.5 * (sum + diff);
    [hi, root_det / hi]
}

/// Wootters `λ_i` in decreasing order.
///
/// Only the one-down-spin X shape is supported: `ρρ̃` then splits into the
/// `{↑↑, ↓↓}` and `{↑↓, ↓↑}` blocks, each solved in closed form.
pub fn wootters_lambdas(rho_pair: &PairDensityMatrix) -> Result<[f64; 4]> {
    let rho = rho_pair.matrix();
    let defect = sector_shape_defect(rho);
    if defect > DEFAULT_TOL {
        return Err(Error::UnsupportedShape(defect));
    }
    let flipped = spin_flip(rho);
    let [l1, l2] = block_lambdas(rho, &flipped, 1, 2);
    let [l3, l4] = block_lambdas(rho, &flipped, 0, 3);
    let mut l = [l1, l2, l3, l4];
    l.sort_by(|x, y| y.total_cmp(x));
    Ok(l)
}

/// Eigenvalues of a 2×2 Hermitian block on indices `(p, q)`.
fn hermitian_block(m: &Matrix4<C64>, p: usize, q: usize) -> [f64; 2] {
    let (x, y, z) = (m[(p, p)].re, m[(q, q)].re, m[(p, q)].norm());
    let mid = 0.5 * (x + y);
    let r = (0.25 * (x - y) * (x - y) + z * z).sqrt();
    [mid + r, mid - r]
}

/// Eigenvalues of a sector-shaped pair matrix, decreasing.
pub fn pair_eigenvalues(rho_pair: &PairDensityMatrix) -> Result<[f64; 4]> {
    let rho = rho_pair.matrix();
    let defect = sector_shape_defect(rho);
    if defect > DEFAULT_TOL {
        return Err(Error::UnsupportedShape(defect));
    }
    let [g1, g2] = hermitian_block(rho, 1, 2);
    let [g3, g4] = hermitian_block(rho, 0, 3);
    let mut g = [g1, g2, g3, g4];
    g.sort_by(|x, y| y.total_cmp(x));
    Ok(g)
}

/// Everything computed for one qubit pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureBreakdown {
    pub pair: Pair,
    /// Pair eigenvalues, decreasing.
    pub gammas: [f64; 4],
    /// Wootters values, decreasing.
    pub lambdas: [f64; 4],
    pub s_pair: f64,
    pub s_left: f64,
    pub s_right: f64,
    pub mutual_information: f64,
    pub concurrence: f64,
}

/// Closed-form block route to all pair measures.
pub fn breakdown(rho_s: &SystemDensityMatrix, pair: Pair) -> Result<MeasureBreakdown> {
    let rho_pair = reduce_pair(rho_s, pair)?;
    let gammas = pair_eigenvalues(&rho_pair)?;
    let lambdas = wootters_lambdas(&rho_pair)?;
    let (x, y) = pair.qubits();
    let marginal = |q| -> Result<f64> {
        let down = rho_s.entry(q, q).re;
        entropy_of_spectrum(&[1.0 - down, down])
    };
    let s_left = marginal(x)?;
    let s_right = marginal(y)?;
    let s_pair = entropy_of_spectrum(&gammas)?;
    Ok(MeasureBreakdown {
        pair,
        gammas,
        lambdas,
        s_pair,
        s_left,
        s_right,
        mutual_information: s_left + s_right - s_pair,
        concurrence: (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probabilities {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Probabilities {
    pub fn as_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }
}

/// `P_x = Tr[ρ_s |x⟩⟨x|]`.
pub fn probabilities(rho_s: &SystemDensityMatrix) -> Result<Probabilities> {
    rho_s.check_shape(DEFAULT_TOL)?;
    let m = rho_s.matrix();
    Ok(Probabilities {
        a: m[(0, 0)].re,
        b: m[(1, 1)].re,
        c: m[(2, 2)].re,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{density_homogeneous, density_inhomogeneous, homogeneous_elements};
    use crate::qubit::{Qubit, SubspaceState};
    use crate::CouplingConfig;
    use approx::assert_abs_diff_eq;
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    fn t_equal() -> f64 {
        2.0 / 3.0 * (0.25f64).acos()
    }

    fn w_entropy() -> f64 {
        3.0f64.log2() - 2.0 / 3.0
    }

    fn initial() -> SystemDensityMatrix {
        SubspaceState::bell_up().density()
    }

    #[test]
    fn entropy_of_pure_projector_is_zero() {
        let psi = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        let m = DMatrix::from_fn(2, 2, |i, j| psi[i] * psi[j].conj());
        assert_abs_diff_eq!(von_neumann_entropy(&m).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            von_neumann_entropy(&initial()).unwrap(),
            0.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn entropy_of_maximally_mixed_qubit() {
        let m = DMatrix::from_diagonal_element(2, 2, C64::new(0.5, 0.0));
        assert_abs_diff_eq!(von_neumann_entropy(&m).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn entropy_of_w_pair_spectrum() {
        let s = entropy_of_spectrum(&[2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0]).unwrap();
        assert_abs_diff_eq!(s, 0.918296, epsilon = 1e-6);
        assert_abs_diff_eq!(s, w_entropy(), epsilon = 1e-15);
    }

    #[test]
    fn entropy_rejects_negative_spectrum() {
        assert_eq!(
            entropy_of_spectrum(&[1.1, -0.1]),
            Err(Error::NotAState(-0.1))
        );
        assert!(entropy_of_spectrum(&[1.0, -1e-13]).is_ok());
    }

    #[test]
    fn initial_mutual_information() {
        assert_abs_diff_eq!(
            mutual_information(&initial(), Pair::AB).unwrap(),
            2.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            mutual_information(&initial(), Pair::AC).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            mutual_information(&initial(), Pair::BC).unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn initial_concurrence_and_monogamy() {
        let c = |p| concurrence(&reduce_pair(&initial(), p).unwrap()).unwrap();
        assert_abs_diff_eq!(c(Pair::AB), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c(Pair::AC), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c(Pair::BC), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn diagonal_pair_has_no_concurrence() {
        let m = Matrix4::from_diagonal(&nalgebra::Vector4::new(
            C64::new(0.2, 0.0),
            C64::new(0.3, 0.0),
            C64::new(0.5, 0.0),
            C64::new(0.0, 0.0),
        ));
        let p = PairDensityMatrix::new(Qubit::A, Qubit::B, m).unwrap();
        assert_abs_diff_eq!(concurrence(&p).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn populated_down_down_is_unsupported() {
        let m = Matrix4::from_diagonal_element(C64::new(0.25, 0.0));
        let p = PairDensityMatrix::new(Qubit::A, Qubit::B, m).unwrap();
        assert!(matches!(concurrence(&p), Err(Error::UnsupportedShape(_))));
    }

    #[test]
    fn w_point_measures() {
        let rho = density_homogeneous(1.0, t_equal()).unwrap();
        for pair in Pair::ALL {
            let mi = mutual_information(&rho, pair).unwrap();
            assert_abs_diff_eq!(mi, 0.918296, epsilon = 1e-6);
            let c = concurrence(&reduce_pair(&rho, pair).unwrap()).unwrap();
            assert_abs_diff_eq!(c, 2.0 / 3.0, epsilon = 1e-9);
        }
        let p = probabilities(&rho).unwrap();
        for x in p.as_array() {
            assert_abs_diff_eq!(x, 1.0 / 3.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn initial_probabilities() {
        let p = probabilities(&initial()).unwrap();
        assert_abs_diff_eq!(p.a, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p.b, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p.c, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn revival_probabilities() {
        let rho = density_inhomogeneous(&CouplingConfig::new(0.5, 0.8).unwrap(), 9.4).unwrap();
        let p = probabilities(&rho).unwrap();
        assert!(p.c < 0.02);
        assert!((p.a - p.b).abs() < 0.05);
    }

    #[test]
    fn bell_gamma_is_one_zero() {
        // Direct diagonalization gives {1, 0} for the Bell pair.
        let g = pair_eigenvalues(&reduce_pair(&initial(), Pair::AB).unwrap()).unwrap();
        assert_abs_diff_eq!(g[0], 1.0, epsilon = 1e-15);
        for x in &g[1..] {
            assert_abs_diff_eq!(*x, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn spin_flip_of_bell_is_bell() {
        let p = reduce_pair(&initial(), Pair::AB).unwrap();
        let f = spin_flip(p.matrix());
        assert!((f - p.matrix()).camax() < 1e-15);
    }

    proptest! {
        #[test]
        fn block_route_matches_generic_route(aa in 0.05f64..5.0, ab in 0.05f64..5.0, t in 0.0f64..20.0) {
            prop_assume!(aa != ab);
            let rho = density_inhomogeneous(&CouplingConfig::new(aa, ab).unwrap(), t).unwrap();
            for pair in Pair::ALL {
                let b = breakdown(&rho, pair).unwrap();
                let generic = mutual_information(&rho, pair).unwrap();
                prop_assert!((b.mutual_information - generic).abs() <= 1e-10);
                prop_assert!(b.mutual_information >= -1e-12 && b.mutual_information <= 2.0 + 1e-12);
                prop_assert!(b.concurrence >= 0.0 && b.concurrence <= 1.0 + 1e-12);
                prop_assert!((b.gammas.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            }
        }

        #[test]
        fn lambda_closed_form(aa in 0.05f64..5.0, ab in 0.05f64..5.0, t in 0.0f64..20.0) {
            prop_assume!(aa != ab);
            let rho = density_inhomogeneous(&CouplingConfig::new(aa, ab).unwrap(), t).unwrap();
            // (pair, left diagonal coefficient, right diagonal coefficient, coherence)
            let cases = [
                (Pair::AB, rho.coeff_a(), rho.coeff_b(), rho.coeff_d().norm()),
                (Pair::AC, rho.coeff_a(), rho.coeff_c(), rho.coeff_e().norm()),
                (Pair::BC, rho.coeff_b(), rho.coeff_c(), rho.coeff_f().norm()),
            ];
            for (pair, x, y, d) in cases {
                let l = wootters_lambdas(&reduce_pair(&rho, pair).unwrap()).unwrap();
                let base = x * y + d * d;
                let split = (4.0 * x * y * d * d).sqrt();
                prop_assert!((l[0] * l[0] - 0.25 * (base + split)).abs() <= 1e-10);
                prop_assert!((l[1] * l[1] - 0.25 * (base - split)).abs() <= 1e-10);
                prop_assert!(d <= (x * y).sqrt() + 1e-10);
                let c = concurrence(&reduce_pair(&rho, pair).unwrap()).unwrap();
                prop_assert!((c - d).abs() <= 1e-10);
            }
        }

        #[test]
        fn homogeneous_closed_form_mutual_information(t in -20.0f64..20.0) {
            let rho = density_homogeneous(1.0, t).unwrap();
            let el = homogeneous_elements(1.0, t).unwrap();
            let closed = homogeneous_mutual_information(el.a, el.c);
            prop_assert!((closed - mutual_information(&rho, Pair::AB).unwrap()).abs() <= 1e-10);
            let ac = breakdown(&rho, Pair::AC).unwrap();
            let bc = breakdown(&rho, Pair::BC).unwrap();
            prop_assert!((ac.mutual_information - bc.mutual_information).abs() <= 1e-12);
            prop_assert!((ac.concurrence - bc.concurrence).abs() <= 1e-12);
        }
    }
}
