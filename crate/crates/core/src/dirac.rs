//! Vector-valued operators on Clifford polynomials: the umbral Dirac
//! operator, vector variable, Euler operator, Laplacian and spherical
//! Dirac operator.
//!
//! Blades act by left multiplication in `D'` and `x'`; every identity in
//! the verification suites depends on that order. `E'` is defined as
//! `sum_j x'_j O_j`; its expression through the anticommutator
//! `{x', D'}` is a checked property, not a second definition. `Delta'`
//! is `sum_j O_j^2`, a scalar blade-diagonal operator.

use crate::clifford::Blade;
use crate::error::Error;
use crate::operator::LinearOperator;
use crate::poly::CliffordPolynomial;
use crate::rational::Rational;
use crate::umbral::{apply_delta, apply_raising, CalculusConfig};

fn check_poly(cfg: &CalculusConfig, f: &CliffordPolynomial) -> Result<(), Error> {
    if f.n() != cfg.n() {
        return Err(Error::DimensionMismatch {
            left: cfg.n(),
            right: f.n(),
        });
    }
    Ok(())
}

/// `D' f = sum_j e_j O_j(f)`; lowers degree by one on nonconstants.
pub fn apply_dirac(
    cfg: &CalculusConfig,
    f: &CliffordPolynomial,
) -> Result<CliffordPolynomial, Error> {
    check_poly(cfg, f)?;
    let mut result = CliffordPolynomial::zero(cfg.n());
    for axis in 1..=cfg.n() {
        let blade = Blade::generator(axis, cfg.n())?;
        result = result.add(&apply_delta(cfg, axis, f)?.mul_blade_left(blade))?;
    }
    Ok(result)
}

/// `x' f = sum_j e_j x'_j(f)`; raises degree by one.
pub fn apply_vector(
    cfg: &CalculusConfig,
    f: &CliffordPolynomial,
) -> Result<CliffordPolynomial, Error> {
    check_poly(cfg, f)?;
    let mut result = CliffordPolynomial::zero(cfg.n());
    for axis in 1..=cfg.n() {
        let blade = Blade::generator(axis, cfg.n())?;
        result = result.add(&apply_raising(cfg, axis, f)?.mul_blade_left(blade))?;
    }
    Ok(result)
}

/// `E' f = sum_j x'_j(O_j(f))`; degree preserving, grades the basic
/// sequence by total degree.
pub fn apply_euler(
    cfg: &CalculusConfig,
    f: &CliffordPolynomial,
) -> Result<CliffordPolynomial, Error> {
    check_poly(cfg, f)?;
    let mut result = CliffordPolynomial::zero(cfg.n());
    for axis in 1..=cfg.n() {
        result = result.add(&apply_raising(cfg, axis, &apply_delta(cfg, axis, f)?)?)?;
    }
    Ok(result)
}

/// `Delta' f = sum_j O_j^2(f)`.
pub fn apply_laplacian(
    cfg: &CalculusConfig,
    f: &CliffordPolynomial,
) -> Result<CliffordPolynomial, Error> {
    check_poly(cfg, f)?;
    let mut result = CliffordPolynomial::zero(cfg.n());
    for axis in 1..=cfg.n() {
        result = result.add(&apply_delta(cfg, axis, &apply_delta(cfg, axis, f)?)?)?;
    }
    Ok(result)
}

/// Spherical Dirac operator `Gamma' f = -x'(D' f) - E' f`.
pub fn apply_gamma(
    cfg: &CalculusConfig,
    f: &CliffordPolynomial,
) -> Result<CliffordPolynomial, Error> {
    check_poly(cfg, f)?;
    let lowered = apply_vector(cfg, &apply_dirac(cfg, f)?)?;
    lowered.neg().sub(&apply_euler(cfg, f)?)
}

pub fn dirac_op(cfg: &CalculusConfig) -> LinearOperator {
    let cfg = cfg.clone();
    LinearOperator::new("D'", move |f| {
        apply_dirac(&cfg, f).expect("dimension checked by caller")
    })
}

pub fn vector_op(cfg: &CalculusConfig) -> LinearOperator {
    let cfg = cfg.clone();
    LinearOperator::new("x'", move |f| {
        apply_vector(&cfg, f).expect("dimension checked by caller")
    })
}

pub fn euler_op(cfg: &CalculusConfig) -> LinearOperator {
    let cfg = cfg.clone();
    LinearOperator::new("E'", move |f| {
        apply_euler(&cfg, f).expect("dimension checked by caller")
    })
}

pub fn laplacian_op(cfg: &CalculusConfig) -> LinearOperator {
    let cfg = cfg.clone();
    LinearOperator::new("Delta'", move |f| {
        apply_laplacian(&cfg, f).expect("dimension checked by caller")
    })
}

pub fn gamma_op(cfg: &CalculusConfig) -> LinearOperator {
    let cfg = cfg.clone();
    LinearOperator::new("Gamma'", move |f| {
        apply_gamma(&cfg, f).expect("dimension checked by caller")
    })
}

/// `E' + s id` for a rational shift `s`.
pub fn shifted_euler_op(cfg: &CalculusConfig, shift: Rational) -> LinearOperator {
    euler_op(cfg).add(&LinearOperator::identity().scale(shift))
}

/// `n/2` as a rational.
pub fn half_dimension(cfg: &CalculusConfig) -> Rational {
    Rational::new((cfg.n() as i64).into(), 2.into())
}
