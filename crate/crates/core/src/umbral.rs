//! Umbral calculus layer: shift and delta operators, Pincherle derivatives
//! and their exact inversion, raising operators, basic sequences and the
//! Sheffer map.
//!
//! Three delta-operator families are built in. `continuum` is the formal
//! partial derivative, `forward` the divided forward difference on step
//! `h`, `central` the divided symmetric difference. In every family the
//! Pincherle derivative `O'_j = [O_j, x_j]` is the identity plus an
//! operator that strictly lowers degree, so its inverse is computed
//! exactly on polynomials by the terminating Neumann sum
//! `sum_m (id - O'_j)^m` instead of an infinite series.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use crate::clifford::MAX_DIM;
use crate::error::Error;
use crate::operator::LinearOperator;
use crate::poly::{CliffordPolynomial, MultiIndex};
use crate::rational::{binomial, format_rational, Rational};

/// Delta-operator family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Continuum,
    Forward,
    Central,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Continuum => "continuum",
            Family::Forward => "forward",
            Family::Central => "central",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "continuum" => Some(Family::Continuum),
            "forward" => Some(Family::Forward),
            "central" => Some(Family::Central),
            _ => None,
        }
    }
}

/// Shape of the raising operator `x'_j`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RaisingVariant {
    /// `x_j (O'_j)^{-1}`.
    Plain,
    /// `(x_j (O'_j)^{-1} + (O'_j)^{-1} x_j) / 2`.
    Symmetrized,
}

impl RaisingVariant {
    pub fn name(self) -> &'static str {
        match self {
            RaisingVariant::Plain => "plain",
            RaisingVariant::Symmetrized => "symmetrized",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "plain" => Some(RaisingVariant::Plain),
            "symmetrized" => Some(RaisingVariant::Symmetrized),
            _ => None,
        }
    }
}

/// Dimension, family, step and raising variant for one calculus.
///
/// For the continuum family the step is dropped and the variant is
/// normalized to `plain` (the two variants coincide there because the
/// Pincherle derivative is the identity).
#[derive(Clone, PartialEq, Debug)]
pub struct CalculusConfig {
    n: usize,
    family: Family,
    h: Option<Rational>,
    variant: RaisingVariant,
}

impl CalculusConfig {
    pub fn new(
        n: usize,
        family: Family,
        h: Option<Rational>,
        variant: RaisingVariant,
    ) -> Result<Self, Error> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::InvalidDimension { n, max: MAX_DIM });
        }
        match family {
            Family::Continuum => Ok(CalculusConfig {
                n,
                family,
                h: None,
                variant: RaisingVariant::Plain,
            }),
            Family::Forward | Family::Central => {
                let h = h.ok_or(Error::MissingStep {
                    family: family.name(),
                })?;
                if h.is_zero() {
                    return Err(Error::ZeroStep {
                        family: family.name(),
                    });
                }
                Ok(CalculusConfig {
                    n,
                    family,
                    h: Some(h),
                    variant,
                })
            }
        }
    }

    pub fn continuum(n: usize) -> Result<Self, Error> {
        Self::new(n, Family::Continuum, None, RaisingVariant::Plain)
    }

    pub fn forward(n: usize, h: Rational) -> Result<Self, Error> {
        Self::new(n, Family::Forward, Some(h), RaisingVariant::Plain)
    }

    pub fn central(n: usize, h: Rational) -> Result<Self, Error> {
        Self::new(n, Family::Central, Some(h), RaisingVariant::Plain)
    }

    pub fn with_variant(mut self, variant: RaisingVariant) -> Self {
        if self.family != Family::Continuum {
            self.variant = variant;
        }
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn h(&self) -> Option<&Rational> {
        self.h.as_ref()
    }

    pub fn variant(&self) -> RaisingVariant {
        self.variant
    }

    /// Short label used in reports, e.g. `forward(h=1/2, symmetrized, n=2)`.
    pub fn label(&self) -> String {
        match &self.h {
            None => format!("{}(n={})", self.family.name(), self.n),
            Some(h) => format!(
                "{}(h={}, {}, n={})",
                self.family.name(),
                format_rational(h),
                self.variant.name(),
                self.n
            ),
        }
    }

    fn check_axis(&self, axis: usize) -> Result<(), Error> {
        if axis == 0 || axis > self.n {
            return Err(Error::AxisOutOfRange { axis, n: self.n });
        }
        Ok(())
    }

    fn check_poly(&self, f: &CliffordPolynomial) -> Result<(), Error> {
        if f.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: f.n(),
            });
        }
        Ok(())
    }
}

/// Substitutes `x_j -> x_j + t` by exact binomial expansion.
pub fn apply_shift(
    f: &CliffordPolynomial,
    axis: usize,
    t: &Rational,
) -> Result<CliffordPolynomial, Error> {
    if axis == 0 || axis > f.n() {
        return Err(Error::AxisOutOfRange { axis, n: f.n() });
    }
    if t.is_zero() {
        return Ok(f.clone());
    }
    let mut result = CliffordPolynomial::zero(f.n());
    for (alpha, blade, coefficient) in f.terms() {
        let m = alpha.exponent(axis);
        if m == 0 {
            result.add_term(alpha.clone(), *blade, coefficient.clone());
            continue;
        }
        // (x + t)^m = sum_i C(m, i) t^(m - i) x^i
        for i in 0..=m {
            let weight = binomial(m, i) * t.pow((m - i) as i32);
            result.add_term(alpha.with_exponent(axis, i), *blade, coefficient * weight);
        }
    }
    Ok(result)
}

/// The delta operator of the configured family along one axis.
pub fn apply_delta(
    cfg: &CalculusConfig,
    axis: usize,
    f: &CliffordPolynomial,
) -> Result<CliffordPolynomial, Error> {
    cfg.check_axis(axis)?;
    cfg.check_poly(f)?;
    match cfg.family {
        Family::Continuum => {
            let mut result = CliffordPolynomial::zero(f.n());
            for (alpha, blade, coefficient) in f.terms() {
                let m = alpha.exponent(axis);
                if m > 0 {
                    result.add_term(
                        alpha.with_exponent(axis, m - 1),
                        *blade,
                        coefficient * Rational::from_integer(m.into()),
                    );
                }
            }
            Ok(result)
        }
        Family::Forward => {
            let h = cfg.h.as_ref().expect("forward family carries a step");
            let shifted = apply_shift(f, axis, h)?;
            Ok(shifted.sub(f)?.scale(&h.recip()))
        }
        Family::Central => {
            let h = cfg.h.as_ref().expect("central family carries a step");
            let up = apply_shift(f, axis, h)?;
            let down = apply_shift(f, axis, &-h.clone())?;
            let double = Rational::from_integer(2.into()) * h;
            Ok(up.sub(&down)?.scale(&double.recip()))
        }
    }
}

/// Delta operator as a composable value.
pub fn delta_op(cfg: &CalculusConfig, axis: usize) -> Result<LinearOperator, Error> {
    cfg.check_axis(axis)?;
    let cfg = cfg.clone();
    Ok(LinearOperator::new(format!("O_{axis}"), move |f| {
        apply_delta(&cfg, axis, f).expect("axis validated at construction")
    }))
}

/// Pincherle derivative `O'_j: f -> O_j(x_j f) - x_j O_j(f)`.
pub fn pincherle_op(cfg: &CalculusConfig, axis: usize) -> Result<LinearOperator, Error> {
    cfg.check_axis(axis)?;
    let cfg = cfg.clone();
    Ok(LinearOperator::new(format!("O'_{axis}"), move |f| {
        let lifted = apply_delta(&cfg, axis, &f.mul_variable(axis).expect("axis in range"))
            .expect("axis validated at construction");
        let dropped = apply_delta(&cfg, axis, f)
            .expect("axis validated at construction")
            .mul_variable(axis)
            .expect("axis in range");
        lifted.sub(&dropped).expect("same dimension")
    }))
}

/// Solves `op(g) = f` for a unitriangular `op = id + N` with `N` strictly
/// degree-lowering, via the terminating Neumann sum
/// `g = sum_{m=0}^{deg f} (id - op)^m f`.
///
/// The precondition is detected, not assumed: if the residual
/// `(id - op)^{deg f + 1} f` does not vanish the input operator was not
/// unitriangular and an error carrying the residual is returned.
pub fn invert_degree_graded(
    op: &LinearOperator,
    f: &CliffordPolynomial,
) -> Result<CliffordPolynomial, Error> {
    if f.is_zero() {
        return Ok(f.clone());
    }
    let bound = f.degree().expect("nonzero polynomial has a degree");
    let mut accumulated = CliffordPolynomial::zero(f.n());
    let mut residual = f.clone();
    for _ in 0..=bound {
        if residual.is_zero() {
            break;
        }
        accumulated = accumulated.add(&residual)?;
        residual = residual.sub(&op.apply(&residual))?;
    }
    if !residual.is_zero() {
        return Err(Error::NotDegreeGraded(Box::new(residual)));
    }
    Ok(accumulated)
}

/// Raising operator `x'_j` in the configured variant.
pub fn apply_raising(
    cfg: &CalculusConfig,
    axis: usize,
    f: &CliffordPolynomial,
) -> Result<CliffordPolynomial, Error> {
    cfg.check_axis(axis)?;
    cfg.check_poly(f)?;
    let pincherle = pincherle_op(cfg, axis)?;
    let plain = invert_degree_graded(&pincherle, f)?.mul_variable(axis)?;
    match cfg.variant {
        RaisingVariant::Plain => Ok(plain),
        RaisingVariant::Symmetrized => {
            let swapped = invert_degree_graded(&pincherle, &f.mul_variable(axis)?)?;
            Ok(plain
                .add(&swapped)?
                .scale(&Rational::new(1.into(), 2.into())))
        }
    }
}

/// Raising operator as a composable value.
pub fn raising_op(cfg: &CalculusConfig, axis: usize) -> Result<LinearOperator, Error> {
    cfg.check_axis(axis)?;
    let cfg = cfg.clone();
    Ok(LinearOperator::new(format!("x'_{axis}"), move |f| {
        apply_raising(&cfg, axis, f).expect("built-in Pincherle derivatives are unitriangular")
    }))
}

type BasicSequenceKey = (usize, &'static str, Option<String>, &'static str, Vec<u32>);

fn basic_sequence_cache() -> &'static Mutex<HashMap<BasicSequenceKey, CliffordPolynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<BasicSequenceKey, CliffordPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Basic sequence element `V_alpha = (x')^alpha 1`.
///
/// Memoized per configuration: the Sheffer map and every diagonal
/// operator conjugated through it evaluate `V_alpha` constantly for the
/// same few multi-indices, and the value depends only on the
/// configuration.
pub fn basic_sequence(
    cfg: &CalculusConfig,
    alpha: &MultiIndex,
) -> Result<CliffordPolynomial, Error> {
    if alpha.len() != cfg.n {
        return Err(Error::MultiIndexLengthMismatch {
            expected: cfg.n,
            actual: alpha.len(),
        });
    }
    let key: BasicSequenceKey = (
        cfg.n,
        cfg.family.name(),
        cfg.h.as_ref().map(format_rational),
        cfg.variant.name(),
        alpha.exponents().to_vec(),
    );
    if let Some(value) = basic_sequence_cache().lock().unwrap().get(&key) {
        return Ok(value.clone());
    }
    let mut value = CliffordPolynomial::one(cfg.n);
    for axis in 1..=cfg.n {
        for _ in 0..alpha.exponent(axis) {
            value = apply_raising(cfg, axis, &value)?;
        }
    }
    basic_sequence_cache()
        .lock()
        .unwrap()
        .insert(key, value.clone());
    Ok(value)
}

/// Sheffer map: the linear extension of `x^alpha -> V_alpha`, carrying
/// blades through unchanged.
pub fn sheffer_apply(
    cfg: &CalculusConfig,
    f: &CliffordPolynomial,
) -> Result<CliffordPolynomial, Error> {
    cfg.check_poly(f)?;
    let mut cache: BTreeMap<MultiIndex, CliffordPolynomial> = BTreeMap::new();
    let mut result = CliffordPolynomial::zero(cfg.n);
    for (alpha, blade, coefficient) in f.terms() {
        if !cache.contains_key(alpha) {
            let value = basic_sequence(cfg, alpha)?;
            cache.insert(alpha.clone(), value);
        }
        let basic = &cache[alpha];
        for (beta, basic_blade, weight) in basic.terms() {
            debug_assert!(basic_blade.is_scalar(), "basic sequences are scalar valued");
            result.add_term(beta.clone(), *blade, coefficient * weight);
        }
    }
    Ok(result)
}

/// Inverse Sheffer map, computed by peeling the top homogeneous layer.
///
/// `V_alpha = x^alpha + lower degree` in both variants, so subtracting
/// `sheffer_apply` of the top layer cancels it exactly and strictly lowers
/// the degree of the remainder.
pub fn sheffer_inverse_apply(
    cfg: &CalculusConfig,
    f: &CliffordPolynomial,
) -> Result<CliffordPolynomial, Error> {
    cfg.check_poly(f)?;
    let mut result = CliffordPolynomial::zero(cfg.n);
    let mut remainder = f.clone();
    while let Some(top_degree) = remainder.degree() {
        let top = remainder.homogeneous_part(top_degree);
        result = result.add(&top)?;
        remainder = remainder.sub(&sheffer_apply(cfg, &top)?)?;
        if let Some(next) = remainder.degree() {
            assert!(next < top_degree, "Sheffer map lost unitriangularity");
        }
    }
    Ok(result)
}

/// Sheffer map as a composable value.
pub fn sheffer_op(cfg: &CalculusConfig) -> LinearOperator {
    let cfg = cfg.clone();
    LinearOperator::new("Psi", move |f| {
        sheffer_apply(&cfg, f).expect("dimension checked by caller")
    })
}

/// Inverse Sheffer map as a composable value.
pub fn sheffer_inverse_op(cfg: &CalculusConfig) -> LinearOperator {
    let cfg = cfg.clone();
    LinearOperator::new("Psi^-1", move |f| {
        sheffer_inverse_apply(&cfg, f).expect("dimension checked by caller")
    })
}
