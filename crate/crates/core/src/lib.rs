//! Lowest eigenvalues of the one-dimensional harmonic oscillator
//! `H = ½(−d²/dx² + x²) ∓ λ e^{−x²}` perturbed by a central Gaussian.
//!
//! Three independent routes are provided and cross-check each other:
//!
//! * [`birman_schwinger`]: zeros of the Fredholm determinant of the truncated
//!   Birman–Schwinger kernel, and the scalar fixed-point equation obtained by
//!   splitting off the divergent unperturbed mode;
//! * [`perturbation`]: closed-form second-order energies built from the
//!   analytic series sums in [`series`];
//! * [`oracle`]: dense diagonalization of the Hamiltonian in the truncated
//!   Hermite basis.
//!
//! Energies are in units of `ħω`; lengths in oscillator units.
//!
//! ```
//! use gaussian_oscillator::prelude::*;
//!
//! let table = MatrixElementTable::with_default_rule(60).unwrap();
//! let coupling = Coupling::attractive(0.3).unwrap();
//! let det = det_energy(coupling, &table, Level::Ground).unwrap();
//! let oracle = oracle_energy(coupling, &table, Level::Ground).unwrap();
//! assert!((det.energy - oracle.energy).abs() < 1e-9);
//! ```

pub mod birman_schwinger;
pub mod commands;
pub mod elements;
mod error;
pub mod format;
pub mod linalg;
pub mod oracle;
pub mod perturbation;
pub mod series;
pub mod special;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::birman_schwinger::{
        det_energy, fredholm_det, fredholm_det_sector, invertibility_threshold_0,
        invertibility_threshold_1, rank_one_energy, rank_one_epsilon0, rank_one_epsilon1,
        repulsive_excited_threshold, solve_det_root, solve_det_root_scanning, trace_norm_exact, BsKernel, Coupling,
        EnergyResult, Level, Method, ScanFrom, Sector, Sign,
    };
    pub use crate::elements::{
        gaussian_element, gaussian_element_closed_0_2n, gaussian_element_closed_1_odd,
        MatrixElementTable,
    };
    pub use crate::oracle::{lowest_eigenvalues, oracle_energy, HamiltonianMatrix, Spectrum};
    pub use crate::perturbation::{
        e0_second_order, e1_second_order, epsilon0_from_series, second_order_energy,
        SecondOrderCoefficients,
    };
    pub use crate::series::{series_s0, series_s1, trace_m_half, SeriesIdentity};
    pub use crate::special::{
        gamma_fn, gauss_hermite_rule, hermite_eval, ln_gamma, psi_eval, psi_even_sq_at_zero,
        BasisIndex, Parity, QuadratureRule,
    };
    pub use crate::{Error, Result};
}
