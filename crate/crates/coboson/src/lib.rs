//! Squeezed states of two-fermion composite bosons.
//!
//! A composite boson built from n_s fermion pairs is almost, but not quite,
//! a boson: its ladder operator B satisfies [B, B+] = I - D, where the
//! deviation operator D measures how much of the available single-pair phase
//! space the state already occupies. This crate models that ladder exactly
//! on the (n_s + 1)-dimensional pair-number space ([`algebra`]), constructs
//! squeezed states as eigenstates of the Bogoliubov-transformed operator
//! cosh(r) B + e^{i phi} sinh(r) B+ ([`squeeze`]), and evaluates quadrature
//! variances against the state-dependent uncertainty bound (1 - <D>)/2.
//!
//! The truncated ladder is cross-checked against [`oracle`], a brute-force
//! realization on the full fermionic Fock space that shares no code with the
//! ladder matrices.

pub mod algebra;
pub mod linalg;
pub mod oracle;
pub mod squeeze;

mod error;

// the public API speaks these crates' types; re-export to keep versions in step
pub use nalgebra;
pub use num_complex;

pub use error::{Error, Result};

pub use algebra::{chi_normalization, f_coefficient, FockNormalization, LadderSpec, OperatorMatrix};
pub use oracle::{
    oracle_d_operator, oracle_fock_state, project_to_coboson_sector, CompositeCreator,
    FermionSpace, SparseOperator, MAX_PAIR_STATES,
};
pub use squeeze::{
    bosonic_reference, eigensolve, eigensolve_with, expectation, phase_rotate,
    quadrature_variances, quadrature_variances_of, solve_symmetrized, uncertainty_product,
    uncertainty_product_of, BogoliubovMatrix, SqueezeParams, SqueezedState, Tolerances,
};
