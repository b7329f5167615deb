//! Basis conventions, states and density matrices of the one-down-spin sector.
//!
//! The sector basis is `|x⟩ = s_x⁻|↑↑↑⟩` for `x ∈ {a, b, c}`, always in that
//! order. Two-qubit matrices for an ordered pair `(first, second)` use the
//! basis `(↑↑, ↑↓, ↓↑, ↓↓)` with `first` as the left factor, i.e. index
//! `2·[first is ↓] + [second is ↓]`. Single-qubit matrices use `(↑, ↓)`.

use std::fmt;

use nalgebra::{DMatrix, Matrix2, Matrix3, Matrix4};

use crate::linalg::hermitian_eigenvalues;
use crate::{Error, Result, C64};

/// Default Hermiticity / trace / positivity tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Qubit {
    A,
    B,
    /// The central qubit, coupled to both others.
    C,
}

impl Qubit {
    pub const ALL: [Qubit; 3] = [Qubit::A, Qubit::B, Qubit::C];

    /// Position in the sector basis `(a, b, c)`.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Qubit::A => "a",
            Qubit::B => "b",
            Qubit::C => "c",
        }
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pair {
    AB,
    AC,
    BC,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::AB, Pair::AC, Pair::BC];

    /// Canonical ordered members.
    pub fn qubits(self) -> (Qubit, Qubit) {
        match self {
            Pair::AB => (Qubit::A, Qubit::B),
            Pair::AC => (Qubit::A, Qubit::C),
            Pair::BC => (Qubit::B, Qubit::C),
        }
    }

    /// The qubit traced out when reducing to this pair.
    pub fn complement(self) -> Qubit {
        match self {
            Pair::AB => Qubit::C,
            Pair::AC => Qubit::B,
            Pair::BC => Qubit::A,
        }
    }

    /// Unordered pair containing two distinct qubits.
    pub fn from_qubits(x: Qubit, y: Qubit) -> Option<Pair> {
        match (x.min(y), x.max(y)) {
            (Qubit::A, Qubit::B) => Some(Pair::AB),
            (Qubit::A, Qubit::C) => Some(Pair::AC),
            (Qubit::B, Qubit::C) => Some(Pair::BC),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pair::AB => "ab",
            Pair::AC => "ac",
            Pair::BC => "bc",
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Pure state in the one-down-spin sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubspaceState {
    amplitudes: [C64; 3],
}

impl SubspaceState {
    pub fn new(amplitudes: [C64; 3]) -> Self {
        Self { amplitudes }
    }

    /// `(|a⟩ + |b⟩)/√2`: the Bell pair on `ab` with `c` up.
    pub fn bell_up() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new([h, h, C64::new(0.0, 0.0)])
    }

    pub fn amplitudes(&self) -> [C64; 3] {
        self.amplitudes
    }

    pub fn amplitude(&self, q: Qubit) -> C64 {
        self.amplitudes[q.index()]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &SubspaceState) -> C64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(x, y)| x.conj() * y)
            .sum()
    }

    /// `|ψ⟩⟨ψ|`, exactly Hermitian by construction.
    pub fn density(&self) -> SystemDensityMatrix {
        let psi = &self.amplitudes;
        SystemDensityMatrix::from_matrix(Matrix3::from_fn(|i, j| psi[i] * psi[j].conj()))
    }
}

/// Anything that can be viewed as a dense square density matrix.
pub trait AsDensity {
    fn to_dense(&self) -> DMatrix<C64>;
}

impl AsDensity for DMatrix<C64> {
    fn to_dense(&self) -> DMatrix<C64> {
        self.clone()
    }
}

/// 3×3 density matrix over the sector basis `(a, b, c)`.
///
/// The coefficient accessors follow the convention in which the diagonal is
/// `(A/2, B/2, C/2)` and the upper off-diagonals are `D/2` (ab), `E/2` (ac)
/// and `F/2` (bc); each accessor is twice the stored matrix entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemDensityMatrix {
    matrix: Matrix3<C64>,
}

impl SystemDensityMatrix {
    pub fn from_matrix(matrix: Matrix3<C64>) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &Matrix3<C64> {
        &self.matrix
    }

    pub fn entry(&self, row: Qubit, col: Qubit) -> C64 {
        self.matrix[(row.index(), col.index())]
    }

    pub fn coeff_a(&self) -> f64 {
        2.0 * self.matrix[(0, 0)].re
    }

    pub fn coeff_b(&self) -> f64 {
        2.0 * self.matrix[(1, 1)].re
    }

    pub fn coeff_c(&self) -> f64 {
        2.0 * self.matrix[(2, 2)].re
    }

    pub fn coeff_d(&self) -> C64 {
        self.matrix[(0, 1)] * 2.0
    }

    pub fn coeff_e(&self) -> C64 {
        self.matrix[(0, 2)] * 2.0
    }

    pub fn coeff_f(&self) -> C64 {
        self.matrix[(1, 2)] * 2.0
    }

    /// Largest elementwise modulus of the difference to `other`.
    pub fn max_abs_diff(&self, other: &SystemDensityMatrix) -> f64 {
        (self.matrix - other.matrix)
            .iter()
            .fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn validate(&self, tol: f64) -> DensityReport {
        validate_density(self, tol)
    }

    /// Cheap structural check used by the reductions: Hermiticity and trace.
    pub(crate) fn check_shape(&self, tol: f64) -> Result<()> {
        let herm = hermiticity_defect(&self.to_dense());
        let trace = (self.matrix.trace() - C64::new(1.0, 0.0)).norm();
        if herm > tol || trace > tol {
            return Err(Error::InvalidDensity(format!(
                "hermiticity defect {herm:e}, trace defect {trace:e}"
            )));
        }
        Ok(())
    }
}

impl AsDensity for SystemDensityMatrix {
    fn to_dense(&self) -> DMatrix<C64> {
        DMatrix::from_fn(3, 3, |i, j| self.matrix[(i, j)])
    }
}

/// Reduced state of an ordered qubit pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairDensityMatrix {
    first: Qubit,
    second: Qubit,
    matrix: Matrix4<C64>,
}

impl PairDensityMatrix {
    /// `first` labels the left tensor factor. Fails if the qubits coincide.
    pub fn new(first: Qubit, second: Qubit, matrix: Matrix4<C64>) -> Result<Self> {
        if first == second {
            return Err(Error::InvalidArgument(format!(
                "pair needs two distinct qubits, got {first}{second}"
            )));
        }
        Ok(Self {
            first,
            second,
            matrix,
        })
    }

    pub fn label(&self) -> Pair {
        Pair::from_qubits(self.first, self.second).expect("distinct qubits")
    }

    pub fn first(&self) -> Qubit {
        self.first
    }

    pub fn second(&self) -> Qubit {
        self.second
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.matrix
    }

    /// Same state with the tensor factors exchanged.
    pub fn swapped(&self) -> PairDensityMatrix {
        // ↑↓ <-> ↓↑ is the index permutation (0, 2, 1, 3).
        const PERM: [usize; 4] = [0, 2, 1, 3];
        PairDensityMatrix {
            first: self.second,
            second: self.first,
            matrix: Matrix4::from_fn(|i, j| self.matrix[(PERM[i], PERM[j])]),
        }
    }

    /// Trace out one member, keeping `keep`.
    pub fn reduce_to(&self, keep: Qubit) -> Result<SingleDensityMatrix> {
        let keep_first = if keep == self.first {
            true
        } else if keep == self.second {
            false
        } else {
            return Err(Error::InvalidArgument(format!(
                "qubit {keep} is not part of pair {}{}",
                self.first, self.second
            )));
        };
        let mut m = Matrix2::<C64>::zeros();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let (r, c) = if keep_first {
                        (2 * i + k, 2 * j + k)
                    } else {
                        (2 * k + i, 2 * k + j)
                    };
                    m[(i, j)] += self.matrix[(r, c)];
                }
            }
        }
        Ok(SingleDensityMatrix::new(keep, m))
    }

    pub fn max_abs_diff(&self, other: &PairDensityMatrix) -> f64 {
        (self.matrix - other.matrix)
            .iter()
            .fold(0.0, |m, z| m.max(z.norm()))
    }
}

impl AsDensity for PairDensityMatrix {
    fn to_dense(&self) -> DMatrix<C64> {
        DMatrix::from_fn(4, 4, |i, j| self.matrix[(i, j)])
    }
}

/// Reduced state of a single qubit over `(↑, ↓)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleDensityMatrix {
    qubit: Qubit,
    matrix: Matrix2<C64>,
}

impl SingleDensityMatrix {
    pub fn new(qubit: Qubit, matrix: Matrix2<C64>) -> Self {
        Self { qubit, matrix }
    }

    pub fn qubit(&self) -> Qubit {
        self.qubit
    }

    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.matrix
    }

    pub fn max_abs_diff(&self, other: &SingleDensityMatrix) -> f64 {
        (self.matrix - other.matrix)
            .iter()
            .fold(0.0, |m, z| m.max(z.norm()))
    }
}

impl AsDensity for SingleDensityMatrix {
    fn to_dense(&self) -> DMatrix<C64> {
        DMatrix::from_fn(2, 2, |i, j| self.matrix[(i, j)])
    }
}

/// Two-qubit basis index of the sector state `|down⟩` seen from `(first, second)`.
fn pair_index(down: Qubit, first: Qubit, second: Qubit) -> usize {
    2 * usize::from(down == first) + usize::from(down == second)
}

/// Reduced state of the ordered pair `(first, second)`.
///
/// Only coherences between sector states that agree on the traced-out qubit
/// survive, so the single off-diagonal element links `|first⟩` and `|second⟩`.
pub fn reduce_pair_ordered(
    rho: &SystemDensityMatrix,
    first: Qubit,
    second: Qubit,
) -> Result<PairDensityMatrix> {
    rho.check_shape(DEFAULT_TOL)?;
    let in_pair = |q: Qubit| q == first || q == second;
    let mut m = Matrix4::<C64>::zeros();
    for x in Qubit::ALL {
        for y in Qubit::ALL {
            if x == y || (in_pair(x) && in_pair(y)) {
                m[(pair_index(x, first, second), pair_index(y, first, second))] = rho.entry(x, y);
            }
        }
    }
    PairDensityMatrix::new(first, second, m)
}

/// Reduced state of `pair` in its canonical order (`ab`, `ac`, `bc`).
pub fn reduce_pair(rho: &SystemDensityMatrix, pair: Pair) -> Result<PairDensityMatrix> {
    let (first, second) = pair.qubits();
    reduce_pair_ordered(rho, first, second)
}

/// Single-qubit marginal: diagonal, since magnetization is conserved.
pub fn reduce_single(rho: &SystemDensityMatrix, q: Qubit) -> Result<SingleDensityMatrix> {
    rho.check_shape(DEFAULT_TOL)?;
    let down = rho.entry(q, q);
    let up: C64 = Qubit::ALL
        .iter()
        .filter(|&&x| x != q)
        .map(|&x| rho.entry(x, x))
        .sum();
    let zero = C64::new(0.0, 0.0);
    Ok(SingleDensityMatrix::new(
        q,
        Matrix2::new(up, zero, zero, down),
    ))
}

/// Diagnostics for a candidate density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityReport {
    pub dim: usize,
    /// `max |ρ_ij − conj(ρ_ji)|`.
    pub hermiticity_defect: f64,
    /// `|Tr ρ − 1|`.
    pub trace_defect: f64,
    /// Smallest eigenvalue of the Hermitian part.
    pub min_eigenvalue: f64,
    pub tol: f64,
}

impl DensityReport {
    pub fn passed(&self) -> bool {
        self.hermiticity_defect <= self.tol
            && self.trace_defect <= self.tol
            && self.min_eigenvalue >= -self.tol
    }
}

fn hermiticity_defect(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Check Hermiticity, unit trace and positivity of any square density matrix.
///
/// Never fails: a matrix whose spectrum cannot be computed reports a NaN
/// eigenvalue and does not pass.
pub fn validate_density<M: AsDensity + ?Sized>(rho: &M, tol: f64) -> DensityReport {
    let m = rho.to_dense();
    let dim = m.nrows();
    let square = dim == m.ncols();
    let hermiticity_defect = if square {
        hermiticity_defect(&m)
    } else {
        f64::NAN
    };
    let trace_defect = if square {
        (m.trace() - C64::new(1.0, 0.0)).norm()
    } else {
        f64::NAN
    };
    let min_eigenvalue = if square {
        hermitian_eigenvalues(&m)
            .ok()
            .and_then(|v| v.first().copied())
            .unwrap_or(f64::NAN)
    } else {
        f64::NAN
    };
    DensityReport {
        dim,
        hermiticity_defect,
        trace_defect,
        min_eigenvalue,
        tol,
    }
}
