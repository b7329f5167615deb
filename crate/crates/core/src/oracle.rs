//! Brute-force reference simulator on the full 8-dimensional space.
//!
//! Nothing here touches the Bethe or closed-form code: the Hamiltonian is
//! assembled from spin-1/2 matrices by Kronecker products, evolved through a
//! Jacobi eigen-decomposition, and reduced by explicit index contraction.
//!
//! Basis index convention: `4·[a is ↓] + 2·[b is ↓] + [c is ↓]`, so the
//! sector states `|a⟩, |b⟩, |c⟩` sit at indices 4, 2, 1.

use nalgebra::{DMatrix, Matrix2, Matrix3, Matrix4};

use crate::bethe::CouplingConfig;
use crate::linalg::{jacobi_eigen, SymmetricEigen};
use crate::qubit::{
    PairDensityMatrix, Qubit, SingleDensityMatrix, SubspaceState, SystemDensityMatrix,
};
use crate::{Error, Result, C64};

pub const DIM: usize = 8;

/// Weight allowed outside the one-down-spin sector before reductions refuse.
pub const SECTOR_LEAKAGE_TOL: f64 = 1e-12;

/// Bit value of a qubit in the full basis index.
pub fn bit(q: Qubit) -> usize {
    match q {
        Qubit::A => 4,
        Qubit::B => 2,
        Qubit::C => 1,
    }
}

/// Full-space index of the sector state `|q⟩ = s_q⁻|↑↑↑⟩`.
pub fn sector_index(q: Qubit) -> usize {
    bit(q)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullState {
    amplitudes: [C64; DIM],
}

impl FullState {
    pub fn new(amplitudes: [C64; DIM]) -> Self {
        Self { amplitudes }
    }

    /// Embed a sector state.
    pub fn from_sector(state: &SubspaceState) -> Self {
        let mut amplitudes = [C64::new(0.0, 0.0); DIM];
        for q in Qubit::ALL {
            amplitudes[sector_index(q)] = state.amplitude(q);
        }
        Self { amplitudes }
    }

    /// `(|↑↓⟩ + |↓↑⟩)_ab/√2 ⊗ |↑⟩_c` built from lowering operators.
    pub fn bell_up() -> Self {
        let up = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let mut all_up = [C64::new(0.0, 0.0); DIM];
        all_up[0] = up[0];
        let lower = |q: Qubit| apply(&single_site(q, &lowering()), &all_up);
        let (la, lb) = (lower(Qubit::A), lower(Qubit::B));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amplitudes: std::array::from_fn(|i| (la[i] + lb[i]) * h),
        }
    }

    pub fn amplitudes(&self) -> &[C64; DIM] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Probability carried by the one-down-spin sector.
    pub fn sector_weight(&self) -> f64 {
        Qubit::ALL
            .iter()
            .map(|&q| self.amplitudes[sector_index(q)].norm_sqr())
            .sum()
    }

    pub fn inner(&self, other: &FullState) -> C64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(x, y)| x.conj() * y)
            .sum()
    }

    /// Sector amplitudes, without checking for leakage.
    pub fn sector_amplitudes(&self) -> [C64; 3] {
        Qubit::ALL.map(|q| self.amplitudes[sector_index(q)])
    }
}

fn apply(op: &DMatrix<C64>, v: &[C64; DIM]) -> [C64; DIM] {
    std::array::from_fn(|i| (0..DIM).map(|j| op[(i, j)] * v[j]).sum())
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Spin-1/2 operators over `(↑, ↓)`: `s = σ/2`.
fn spin_x() -> Matrix2<C64> {
    Matrix2::new(c(0.0, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0))
}

fn spin_y() -> Matrix2<C64> {
    Matrix2::new(c(0.0, 0.0), c(0.0, -0.5), c(0.0, 0.5), c(0.0, 0.0))
}

fn spin_z() -> Matrix2<C64> {
    Matrix2::new(c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0))
}

/// `s⁻|↑⟩ = |↓⟩`.
fn lowering() -> Matrix2<C64> {
    Matrix2::new(c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))
}

fn to_dynamic(m: &Matrix2<C64>) -> DMatrix<C64> {
    DMatrix::from_fn(2, 2, |i, j| m[(i, j)])
}

/// `op` acting on qubit `q`, identity elsewhere, factors ordered `a ⊗ b ⊗ c`.
fn single_site(q: Qubit, op: &Matrix2<C64>) -> DMatrix<C64> {
    let id = DMatrix::<C64>::identity(2, 2);
    let factor = |x: Qubit| if x == q { to_dynamic(op) } else { id.clone() };
    factor(Qubit::A)
        .kronecker(&factor(Qubit::B))
        .kronecker(&factor(Qubit::C))
}

/// `s_x · s_y` on the full space.
fn heisenberg(x: Qubit, y: Qubit) -> DMatrix<C64> {
    [spin_x(), spin_y(), spin_z()]
        .iter()
        .map(|s| single_site(x, s) * single_site(y, s))
        .fold(DMatrix::zeros(DIM, DIM), |acc, term| acc + term)
}

/// Total `S_z` on the full space.
pub fn total_sz() -> DMatrix<f64> {
    let sz = Qubit::ALL
        .iter()
        .map(|&q| single_site(q, &spin_z()))
        .fold(DMatrix::<C64>::zeros(DIM, DIM), |acc, t| acc + t);
    sz.map(|z| z.re)
}

/// Real symmetric 8×8 Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct FullHamiltonian {
    matrix: DMatrix<f64>,
}

impl FullHamiltonian {
    /// `w_ac s_a·s_c + w_bc s_b·s_c`; the spin-operator product is real here.
    fn from_weights(w_ac: f64, w_bc: f64) -> Self {
        let h = heisenberg(Qubit::A, Qubit::C) * c(w_ac, 0.0)
            + heisenberg(Qubit::B, Qubit::C) * c(w_bc, 0.0);
        debug_assert!(h.iter().all(|z| z.im == 0.0));
        Self {
            matrix: h.map(|z| z.re),
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `⟨x|H|y⟩` over the sector states.
    pub fn sector_block(&self) -> Matrix3<f64> {
        Matrix3::from_fn(|i, j| {
            self.matrix[(sector_index(Qubit::ALL[i]), sector_index(Qubit::ALL[j]))]
        })
    }

    /// `max |H_ij − H_ji|`.
    pub fn asymmetry(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).amax()
    }

    /// `max |[H, S_z]_ij|`.
    pub fn sz_commutator_norm(&self) -> f64 {
        let sz = total_sz();
        (&self.matrix * &sz - &sz * &self.matrix).amax()
    }

    /// `⟨ψ|H|ψ⟩`.
    pub fn expectation(&self, psi: &FullState) -> f64 {
        let v = psi.amplitudes();
        let mut e = C64::new(0.0, 0.0);
        for i in 0..DIM {
            for j in 0..DIM {
                e += v[i].conj() * self.matrix[(i, j)] * v[j];
            }
        }
        e.re
    }
}

/// `H = 2[A_a s_a·s_c + A_b s_b·s_c]`.
pub fn build_hamiltonian(cfg: &CouplingConfig) -> FullHamiltonian {
    FullHamiltonian::from_weights(2.0 * cfg.coupling_a(), 2.0 * cfg.coupling_b())
}

/// `H = J[s_a·s_c + s_b·s_c]`.
pub fn build_homogeneous_hamiltonian(j: f64) -> FullHamiltonian {
    FullHamiltonian::from_weights(j, j)
}

/// Cached eigen-decomposition of a full Hamiltonian.
#[derive(Debug, Clone)]
pub struct OracleEvolver {
    hamiltonian: FullHamiltonian,
    eigen: SymmetricEigen,
}

impl OracleEvolver {
    pub fn new(hamiltonian: FullHamiltonian) -> Result<Self> {
        let eigen = jacobi_eigen(hamiltonian.matrix())?;
        Ok(Self { hamiltonian, eigen })
    }

    pub fn hamiltonian(&self) -> &FullHamiltonian {
        &self.hamiltonian
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigen.values
    }

    /// `Σ_k |k⟩⟨k|ψ₀⟩ e^{−iE_k t}`.
    pub fn evolve(&self, psi0: &FullState, t: f64) -> FullState {
        let v = &self.eigen.vectors;
        let start = psi0.amplitudes();
        let mut out = [C64::new(0.0, 0.0); DIM];
        for (k, &energy) in self.eigen.values.iter().enumerate() {
            let overlap: C64 = (0..DIM).map(|i| start[i] * v[(i, k)]).sum();
            let coeff = overlap * C64::from_polar(1.0, -energy * t);
            for (i, amp) in out.iter_mut().enumerate() {
                *amp += coeff * v[(i, k)];
            }
        }
        FullState::new(out)
    }
}

pub fn evolve_oracle(h: &FullHamiltonian, psi0: &FullState, t: f64) -> Result<FullState> {
    Ok(OracleEvolver::new(h.clone())?.evolve(psi0, t))
}

/// Sector eigenvalues, ascending, from an independent 3×3 eigensolve.
pub fn sector_eigen(h: &FullHamiltonian) -> Result<SymmetricEigen> {
    let block = h.sector_block();
    jacobi_eigen(&DMatrix::from_fn(3, 3, |i, j| block[(i, j)]))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReductions {
    pub system: SystemDensityMatrix,
    /// Canonical pairs `ab`, `ac`, `bc`.
    pub pairs: [PairDensityMatrix; 3],
    /// Qubits `a`, `b`, `c`.
    pub singles: [SingleDensityMatrix; 3],
}

fn bit_of(index: usize, q: Qubit) -> usize {
    usize::from(index & bit(q) != 0)
}

/// Reduced matrix of `kept` qubits by summing the full `|ψ⟩⟨ψ|` over the rest.
fn contract(psi: &[C64; DIM], kept: &[Qubit]) -> DMatrix<C64> {
    let n = 1 << kept.len();
    let local = |index: usize| kept.iter().fold(0, |acc, &q| (acc << 1) | bit_of(index, q));
    let traced = |index: usize| {
        Qubit::ALL
            .iter()
            .filter(|q| !kept.contains(q))
            .fold(0, |acc, &q| (acc << 1) | bit_of(index, q))
    };
    let mut m = DMatrix::<C64>::zeros(n, n);
    for i in 0..DIM {
        for j in 0..DIM {
            if traced(i) == traced(j) {
                m[(local(i), local(j))] += psi[i] * psi[j].conj();
            }
        }
    }
    m
}

pub fn oracle_reductions(psi: &FullState) -> Result<OracleReductions> {
    let leakage = (psi.norm_sqr() - psi.sector_weight()).max(1.0 - psi.sector_weight());
    if leakage > SECTOR_LEAKAGE_TOL {
        return Err(Error::SectorLeakage(leakage));
    }
    let system = SubspaceState::new(psi.sector_amplitudes()).density();
    let amps = psi.amplitudes();
    let pairs = [
        (Qubit::A, Qubit::B),
        (Qubit::A, Qubit::C),
        (Qubit::B, Qubit::C),
    ]
    .map(|(x, y)| {
        let m = contract(amps, &[x, y]);
        PairDensityMatrix::new(x, y, Matrix4::from_fn(|i, j| m[(i, j)])).expect("distinct")
    });
    let singles = Qubit::ALL.map(|q| {
        let m = contract(amps, &[q]);
        SingleDensityMatrix::new(q, Matrix2::from_fn(|i, j| m[(i, j)]))
    });
    Ok(OracleReductions {
        system,
        pairs,
        singles,
    })
}
