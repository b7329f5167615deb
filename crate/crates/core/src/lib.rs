//! Exact entanglement dynamics of three pairwise-interacting qubits.
//!
//! Two qubits `a` and `b` start in the Bell state `(|↑↓⟩ + |↓↑⟩)/√2` while the
//! central qubit `c` points up. Exchange couplings `A_a` (a–c) and `A_b` (b–c)
//! keep the evolution inside the one-down-spin sector, which is solved here
//! analytically:
//!
//! * [`bethe`] finds the Bethe roots and eigenmodes for `A_a ≠ A_b`,
//! * [`dynamics`] evolves states and system density matrices, including the
//!   closed form for equal couplings,
//! * [`measures`] computes mutual information, Wootters concurrence and
//!   basis-state probabilities,
//! * [`oracle`] is an independent brute-force 8-dimensional simulator used to
//!   certify every analytic formula,
//! * [`analysis`] locates equal-entanglement times and revivals and converts to
//!   laboratory units,
//! * [`validate`] bundles the oracle-equivalence and invariant suites.

pub mod analysis;
pub mod bethe;
pub mod dynamics;
mod error;
pub mod linalg;
pub mod measures;
pub mod oracle;
pub mod qubit;
pub mod validate;

pub use error::{Error, Result};

pub use bethe::{
    bethe_residual, solve_bethe_roots, spectral_decomposition, BetheRoot, CouplingConfig,
    EigenMode, SpectralDecomposition,
};
pub use dynamics::{
    density_homogeneous, density_inhomogeneous, evolve_homogeneous, evolve_inhomogeneous,
    HomogeneousSpectrum, InhomogeneousEngine,
};
pub use measures::{
    concurrence, mutual_information, probabilities, von_neumann_entropy, MeasureBreakdown,
    Probabilities,
};
pub use qubit::{
    reduce_pair, reduce_single, validate_density, DensityReport, Pair, PairDensityMatrix, Qubit,
    SingleDensityMatrix, SubspaceState, SystemDensityMatrix,
};

/// Complex amplitude type used throughout the crate.
pub type C64 = num_complex::Complex64;
