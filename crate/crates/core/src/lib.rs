//! Exact symbolic engine for Clifford-valued polynomial algebra.
//!
//! The crate implements, over exact rationals and with no floating point
//! anywhere:
//!
//! - the Clifford algebra `Cl_{0,n}` on basis blades ([`clifford`]);
//! - sparse Clifford-valued polynomials ([`poly`]);
//! - umbral calculus: shift, delta and raising operators for the
//!   continuum, forward-difference and central-difference families,
//!   exact Pincherle inversion, basic sequences and the Sheffer map
//!   ([`umbral`]);
//! - the vector operators `D'`, `x'`, `E'`, `Delta'`, `Gamma'`
//!   ([`dirac`]) and a seeded exact identity harness with named suites
//!   ([`verify`]);
//! - the Almansi decomposition of `ker (D')^k` into monogenic components
//!   and its Fischer specialization ([`almansi`]);
//! - the harmonic oscillator layer with locally finite operator
//!   exponentials ([`oscillator`]);
//! - bit-exact JSON forms for every boundary object ([`json`]).

pub mod almansi;
pub mod clifford;
pub mod dirac;
pub mod error;
pub mod json;
pub mod operator;
pub mod oscillator;
pub mod poly;
pub mod rational;
pub mod umbral;
pub mod verify;

pub use almansi::{
    almansi_decompose, almansi_reconstruct, apply_euler_inverse, apply_q, apply_u,
    fischer_decompose, generate_monogenic, is_polymonogenic, AlmansiResult,
};
pub use clifford::{blade_product, grade, Blade, SignedBlade, MAX_DIM};
pub use dirac::{
    apply_dirac, apply_euler, apply_gamma, apply_laplacian, apply_vector, dirac_op, euler_op,
    gamma_op, laplacian_op, vector_op,
};
pub use error::Error;
pub use operator::{BracketKind, LinearOperator, OperatorBracket};
pub use oscillator::{
    apply_hamiltonian, apply_j, apply_potential, check_fischer_pair_mapping, exp_locally_finite,
    generate_harmonic, OscillatorConfig,
};
pub use poly::{CliffordPolynomial, MultiIndex};
pub use rational::{format_rational, parse_rational, Rational};
pub use umbral::{
    apply_delta, apply_raising, apply_shift, basic_sequence, invert_degree_graded, sheffer_apply,
    sheffer_inverse_apply, CalculusConfig, Family, RaisingVariant,
};
pub use verify::{
    check_identity, check_identity_on_basis, run_suite, Counterexample, IdentityReport, SUITE_NAMES,
};
