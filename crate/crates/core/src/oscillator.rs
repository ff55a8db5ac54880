//! Harmonic oscillator layer: the potential operator, its auxiliary
//! first-order companion, the Hamiltonian, locally finite operator
//! exponentials and the Fischer-pair mapping check.
//!
//! The potential is
//! `V(x') = -(1/2)(x')^2 - (hbar/2) x' + (hbar^2/8)(Gamma' - (n/2) id)`
//! and the companion is `J' = (hbar/4) D' + (1/2)(E' + (n/2) id)`. The
//! exact bracket relations these satisfy are listed in the `oscillator`
//! verification suite; the suite also carries the gauge-conjugated
//! potential `exp(-(hbar/2) D') . (-(1/2)(x')^2) . exp((hbar/2) D')`,
//! which completes the scaling triple exactly for every rational `hbar`.

use num_traits::Zero;

use crate::almansi::almansi_decompose;
use crate::dirac::{
    apply_dirac, apply_euler, apply_gamma, apply_laplacian, apply_vector, dirac_op, half_dimension,
    laplacian_op, shifted_euler_op, vector_op,
};
use crate::error::Error;
use crate::operator::LinearOperator;
use crate::poly::CliffordPolynomial;
use crate::rational::{format_rational, int, ratio, Rational};
use crate::umbral::CalculusConfig;
use crate::verify::{check_identity, sample_polynomial, trial_rng, Counterexample, IdentityReport};

/// A calculus plus a rational oscillator parameter.
#[derive(Clone, PartialEq, Debug)]
pub struct OscillatorConfig {
    pub base: CalculusConfig,
    pub hbar: Rational,
}

impl OscillatorConfig {
    pub fn new(base: CalculusConfig, hbar: Rational) -> Self {
        OscillatorConfig { base, hbar }
    }
}

fn check_poly(cfg: &CalculusConfig, f: &CliffordPolynomial) -> Result<(), Error> {
    if f.n() != cfg.n() {
        return Err(Error::DimensionMismatch {
            left: cfg.n(),
            right: f.n(),
        });
    }
    Ok(())
}

/// `V(x') f`.
pub fn apply_potential(
    ocfg: &OscillatorConfig,
    f: &CliffordPolynomial,
) -> Result<CliffordPolynomial, Error> {
    let cfg = &ocfg.base;
    check_poly(cfg, f)?;
    let hbar = &ocfg.hbar;
    let squared = apply_vector(cfg, &apply_vector(cfg, f)?)?;
    let mut value = squared.scale(&ratio(-1, 2));
    if !hbar.is_zero() {
        let linear = apply_vector(cfg, f)?.scale(&(hbar / int(2)));
        value = value.sub(&linear)?;
        let weight = hbar * hbar / int(8);
        let spherical = apply_gamma(cfg, f)?
            .sub(&f.scale(&half_dimension(cfg)))?
            .scale(&weight);
        value = value.add(&spherical)?;
    }
    Ok(value)
}

/// `J' f = (hbar/4) D' f + (1/2)(E' + (n/2) id) f`.
pub fn apply_j(
    ocfg: &OscillatorConfig,
    f: &CliffordPolynomial,
) -> Result<CliffordPolynomial, Error> {
    let cfg = &ocfg.base;
    check_poly(cfg, f)?;
    let mut value = apply_euler(cfg, f)?
        .add(&f.scale(&half_dimension(cfg)))?
        .scale(&ratio(1, 2));
    if !ocfg.hbar.is_zero() {
        value = value.add(&apply_dirac(cfg, f)?.scale(&(&ocfg.hbar / int(4))))?;
    }
    Ok(value)
}

/// Hamiltonian `H' f = -(1/2) Delta' f + V(x') f`.
pub fn apply_hamiltonian(
    ocfg: &OscillatorConfig,
    f: &CliffordPolynomial,
) -> Result<CliffordPolynomial, Error> {
    let kinetic = apply_laplacian(&ocfg.base, f)?.scale(&ratio(-1, 2));
    kinetic.add(&apply_potential(ocfg, f)?)
}

pub fn potential_op(ocfg: &OscillatorConfig) -> LinearOperator {
    let ocfg = ocfg.clone();
    LinearOperator::new("V", move |f| {
        apply_potential(&ocfg, f).expect("dimension checked by caller")
    })
}

pub fn j_op(ocfg: &OscillatorConfig) -> LinearOperator {
    let ocfg = ocfg.clone();
    LinearOperator::new("J'", move |f| {
        apply_j(&ocfg, f).expect("dimension checked by caller")
    })
}

pub fn hamiltonian_op(ocfg: &OscillatorConfig) -> LinearOperator {
    let ocfg = ocfg.clone();
    LinearOperator::new("H'", move |f| {
        apply_hamiltonian(&ocfg, f).expect("dimension checked by caller")
    })
}

/// `exp(op) f = sum_m op^m(f) / m!`, exact and finite for operators that
/// strictly lower degree. The precondition is detected: a nonvanishing
/// power beyond `deg f` is returned as an error.
pub fn exp_locally_finite(
    op: &LinearOperator,
    f: &CliffordPolynomial,
) -> Result<CliffordPolynomial, Error> {
    if f.is_zero() {
        return Ok(f.clone());
    }
    let bound = f.degree().expect("nonzero polynomial has a degree") as u32;
    let mut total = f.clone();
    let mut term = f.clone();
    let mut m = 1u32;
    loop {
        term = op
            .apply(&term)
            .scale(&Rational::new(1.into(), (m as i64).into()));
        if term.is_zero() {
            return Ok(total);
        }
        if m > bound {
            return Err(Error::NotLocallyNilpotent(Box::new(term)));
        }
        total = total.add(&term)?;
        m += 1;
    }
}

/// Exponential as a composable value. The inner operator must strictly
/// lower degree; this wrapper panics where `exp_locally_finite` would
/// error, so use it only with operators known to be nilpotent on
/// polynomials (multiples of `D'` and `Delta'`).
pub fn exp_op(inner: &LinearOperator, label: impl Into<String>) -> LinearOperator {
    let inner = inner.clone();
    LinearOperator::new(label, move |f| {
        exp_locally_finite(&inner, f).expect("exponent operator must lower degree")
    })
}

/// Gauge-conjugated potential
/// `exp(-(hbar/2) D') . (-(1/2)(x')^2) . exp((hbar/2) D')`.
pub fn gauge_potential_op(ocfg: &OscillatorConfig) -> LinearOperator {
    let cfg = &ocfg.base;
    let vector = vector_op(cfg);
    let base_potential = vector.compose(&vector).scale(ratio(-1, 2));
    let dirac = dirac_op(cfg);
    let forward = exp_op(&dirac.scale(&ocfg.hbar / int(2)), "exp(+(hbar/2) D')");
    let backward = exp_op(&dirac.scale(-(&ocfg.hbar / int(2))), "exp(-(hbar/2) D')");
    backward.compose(&base_potential).compose(&forward)
}

/// Checks that `(Delta')^k ((2 V)^k f)` is umbral harmonic for a harmonic
/// input `f`. A non-harmonic input is a precondition error.
pub fn check_fischer_pair_mapping(
    ocfg: &OscillatorConfig,
    k: u32,
    f: &CliffordPolynomial,
) -> Result<IdentityReport, Error> {
    if k == 0 {
        return Err(Error::AtLeastOne { what: "power k" });
    }
    let cfg = &ocfg.base;
    check_poly(cfg, f)?;
    let residual = apply_laplacian(cfg, f)?;
    if !residual.is_zero() {
        return Err(Error::NotHarmonic {
            witness: Box::new(residual),
        });
    }
    let mut value = f.clone();
    for _ in 0..k {
        value = apply_potential(ocfg, &value)?.scale(&int(2));
    }
    for _ in 0..k {
        value = apply_laplacian(cfg, &value)?;
    }
    let witness = apply_laplacian(cfg, &value)?;
    let passed = witness.is_zero();
    Ok(IdentityReport {
        identity_name: format!(
            "fischer pair: Delta'^{k} (2V)^{k} maps harmonics to harmonics, hbar={}",
            format_rational(&ocfg.hbar)
        ),
        config: cfg.clone(),
        trials: 1,
        max_degree: f.degree().unwrap_or(0) as u32,
        seed: 0,
        passed,
        counterexample: if passed {
            None
        } else {
            Some(Counterexample {
                input: f.clone(),
                lhs: witness,
                rhs: CliffordPolynomial::zero(cfg.n()),
            })
        },
    })
}

/// Draws a random polynomial of degree at most `d` and keeps the part of
/// its Almansi decomposition lying in `ker (D')^2 = ker Delta'`.
/// Deterministic per seed.
pub fn generate_harmonic(
    cfg: &CalculusConfig,
    d: u32,
    seed: u64,
) -> Result<CliffordPolynomial, Error> {
    let sample = sample_polynomial(cfg.n(), d, &mut trial_rng(seed, 1));
    let decomposition = almansi_decompose(cfg, &sample, d + 1)?;
    let mut harmonic = decomposition.components[0].clone();
    if decomposition.components.len() > 1 {
        harmonic = harmonic.add(&apply_vector(cfg, &decomposition.components[1])?)?;
    }
    Ok(harmonic)
}

/// The oscillator identity suite over `hbar` in `{0, 1/2, 1}`.
///
/// Relations asserted, each exact:
/// `[E', Gamma'] = 0`, `[Delta', Gamma'] = 0`,
/// `[Delta'/2, V] = (E' + n/2) - (hbar/2) D'`,
/// `[J', Delta'/2] = -Delta'/2`,
/// the same scaling pair for the gauge-conjugated potential `W` together
/// with `[J'(-hbar), W] = W`,
/// the intertwining `(1/2)(E' + n/2) . exp(-(hbar/2) D') =
/// exp(-(hbar/2) D') . J'`,
/// the graded relation `[(1/2)(E' + n/2), exp((hbar/2) D')] =
/// -(hbar/4) D' . exp((hbar/2) D')`,
/// and the Fischer-pair mapping for `k` in `{1, 2}` on generated harmonic
/// inputs.
pub fn oscillator_suite(
    cfg: &CalculusConfig,
    max_degree: u32,
    trials: u32,
    seed: u64,
) -> Result<Vec<IdentityReport>, Error> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let mut reports = crate::verify::gamma_commute_suite(cfg, max_degree, trials, seed)?;

    let dirac = dirac_op(cfg);
    let half_laplacian = laplacian_op(cfg).scale(ratio(1, 2));
    let shifted = shifted_euler_op(cfg, half_dimension(cfg));
    let half_shifted = shifted.scale(ratio(1, 2));

    for hbar in [int(0), ratio(1, 2), int(1)] {
        let label = format_rational(&hbar);
        let ocfg = OscillatorConfig::new(cfg.clone(), hbar.clone());
        let potential = potential_op(&ocfg);
        let companion = j_op(&ocfg);
        let mirrored = j_op(&OscillatorConfig::new(cfg.clone(), -hbar.clone()));
        let gauge = gauge_potential_op(&ocfg);
        let scaling = shifted.sub(&dirac.scale(&hbar / int(2)));

        reports.push(check_identity(
            &format!("hbar={label}: [Delta'/2, V] = (E' + n/2) - (hbar/2) D'"),
            &LinearOperator::commutator(&half_laplacian, &potential),
            &scaling,
            cfg,
            max_degree,
            trials,
            seed,
        )?);
        reports.push(check_identity(
            &format!("hbar={label}: [J', Delta'/2] = -Delta'/2"),
            &LinearOperator::commutator(&companion, &half_laplacian),
            &half_laplacian.scale(ratio(-1, 1)),
            cfg,
            max_degree,
            trials,
            seed,
        )?);
        reports.push(check_identity(
            &format!("hbar={label}: [Delta'/2, W] = (E' + n/2) - (hbar/2) D'"),
            &LinearOperator::commutator(&half_laplacian, &gauge),
            &scaling,
            cfg,
            max_degree,
            trials,
            seed,
        )?);
        reports.push(check_identity(
            &format!("hbar={label}: [J'(-hbar), W] = W"),
            &LinearOperator::commutator(&mirrored, &gauge),
            &gauge,
            cfg,
            max_degree,
            trials,
            seed,
        )?);

        let backward = exp_op(
            &dirac.scale(-(&hbar / int(2))),
            format!("exp(-({label}/2) D')"),
        );
        let forward = exp_op(&dirac.scale(&hbar / int(2)), format!("exp(({label}/2) D')"));
        reports.push(check_identity(
            &format!("hbar={label}: (1/2)(E' + n/2) . exp(-(hbar/2) D') = exp(-(hbar/2) D') . J'"),
            &half_shifted.compose(&backward),
            &backward.compose(&companion),
            cfg,
            max_degree,
            trials,
            seed,
        )?);
        reports.push(check_identity(
            &format!(
                "hbar={label}: [(1/2)(E' + n/2), exp((hbar/2) D')] = -(hbar/4) D' . exp((hbar/2) D')"
            ),
            &LinearOperator::commutator(&half_shifted, &forward),
            &dirac.scale(-(&hbar / int(4))).compose(&forward),
            cfg,
            max_degree,
            trials,
            seed,
        )?);

        for k in [1u32, 2] {
            reports.push(fischer_pair_report(&ocfg, k, max_degree, trials, seed)?);
        }
    }
    Ok(reports)
}

/// Aggregated Fischer-pair check over generated harmonic inputs.
fn fischer_pair_report(
    ocfg: &OscillatorConfig,
    k: u32,
    max_degree: u32,
    trials: u32,
    seed: u64,
) -> Result<IdentityReport, Error> {
    let cfg = &ocfg.base;
    // Harmonic generation runs one decomposition per trial; a small degree
    // cap keeps the suite inside its time budget without weakening the
    // exactness of each check.
    let degree = max_degree.min(3);
    let name = format!(
        "fischer pair: Delta'^{k} (2V)^{k} maps harmonics to harmonics, hbar={}",
        format_rational(&ocfg.hbar)
    );
    for trial in 0..trials {
        let input = generate_harmonic(cfg, degree, seed.wrapping_add(trial as u64))?;
        let single = check_fischer_pair_mapping(ocfg, k, &input)?;
        if !single.passed {
            return Ok(IdentityReport {
                identity_name: name,
                config: cfg.clone(),
                trials,
                max_degree: degree,
                seed,
                passed: false,
                counterexample: single.counterexample,
            });
        }
    }
    Ok(IdentityReport {
        identity_name: name,
        config: cfg.clone(),
        trials,
        max_degree: degree,
        seed,
        passed: true,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiIndex;
    use crate::umbral::basic_sequence;

    fn continuum(n: usize) -> CalculusConfig {
        CalculusConfig::continuum(n).unwrap()
    }

    fn x(n: usize, j: usize) -> CliffordPolynomial {
        CliffordPolynomial::variable(n, j).unwrap()
    }

    fn norm_squared(n: usize) -> CliffordPolynomial {
        let mut total = CliffordPolynomial::zero(n);
        for j in 1..=n {
            total = total.add(&x(n, j).mul(&x(n, j)).unwrap()).unwrap();
        }
        total
    }

    #[test]
    fn potential_examples() {
        // hbar = 0: V(1) = (x1^2 + x2^2)/2.
        let ocfg = OscillatorConfig::new(continuum(2), int(0));
        assert_eq!(
            apply_potential(&ocfg, &CliffordPolynomial::one(2)).unwrap(),
            norm_squared(2).scale(&ratio(1, 2))
        );

        // hbar = 1: V(1) = (x1^2 + x2^2)/2 - (x1 e1 + x2 e2)/2 - 1/8.
        let ocfg = OscillatorConfig::new(continuum(2), int(1));
        let vector_part = apply_vector(&ocfg.base, &CliffordPolynomial::one(2)).unwrap();
        let expected = norm_squared(2)
            .scale(&ratio(1, 2))
            .sub(&vector_part.scale(&ratio(1, 2)))
            .unwrap()
            .sub(&CliffordPolynomial::scalar(2, ratio(1, 8)))
            .unwrap();
        assert_eq!(
            apply_potential(&ocfg, &CliffordPolynomial::one(2)).unwrap(),
            expected
        );

        assert!(apply_potential(&ocfg, &CliffordPolynomial::zero(2))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn companion_and_hamiltonian_examples() {
        // J'(1) = n/4 for every hbar since D'1 = E'1 = 0.
        for hbar in [int(0), ratio(1, 2), int(1)] {
            let ocfg = OscillatorConfig::new(continuum(2), hbar);
            assert_eq!(
                apply_j(&ocfg, &CliffordPolynomial::one(2)).unwrap(),
                CliffordPolynomial::scalar(2, ratio(1, 2))
            );
        }

        // H'_0(1) = (x1^2 + x2^2)/2.
        let ocfg = OscillatorConfig::new(continuum(2), int(0));
        assert_eq!(
            apply_hamiltonian(&ocfg, &CliffordPolynomial::one(2)).unwrap(),
            norm_squared(2).scale(&ratio(1, 2))
        );

        // hbar = 0: J' V_alpha = (|alpha| + n/2)/2 V_alpha.
        let cfg = CalculusConfig::forward(2, int(1)).unwrap();
        let ocfg = OscillatorConfig::new(cfg.clone(), int(0));
        let basic = basic_sequence(&cfg, &MultiIndex::new(vec![2, 1])).unwrap();
        assert_eq!(
            apply_j(&ocfg, &basic).unwrap(),
            basic.scale(&ratio(2, 1)) // (3 + 1)/2
        );
    }

    #[test]
    fn exponential_examples() {
        let cfg = continuum(2);
        let f = x(2, 1).mul(&x(2, 1)).unwrap();

        // exp(0) = id.
        let zero_exp = exp_locally_finite(&LinearOperator::zero(), &f).unwrap();
        assert_eq!(zero_exp, f);

        // exp(-Delta'/2)(x1^2) = x1^2 - 1.
        let half_back = laplacian_op(&cfg).scale(ratio(-1, 2));
        assert_eq!(
            exp_locally_finite(&half_back, &f).unwrap(),
            f.sub(&CliffordPolynomial::one(2)).unwrap()
        );

        // exp(-D'/2)(x1) = x1 - e1/2.
        let dirac_half = dirac_op(&cfg).scale(ratio(-1, 2));
        let expected = x(2, 1)
            .sub(
                &CliffordPolynomial::generator(2, 1)
                    .unwrap()
                    .scale(&ratio(1, 2)),
            )
            .unwrap();
        assert_eq!(exp_locally_finite(&dirac_half, &x(2, 1)).unwrap(), expected);

        // A degree-preserving operator is rejected.
        assert!(matches!(
            exp_locally_finite(&LinearOperator::identity(), &f),
            Err(Error::NotLocallyNilpotent(_))
        ));
    }

    #[test]
    fn fischer_pair_worked_example() {
        // k=1, hbar=0, f=1: Delta(2 V 1) = Delta(x1^2 + x2^2) = 4, and
        // Delta(4) = 0, so the image is harmonic.
        let ocfg = OscillatorConfig::new(continuum(2), int(0));
        let report = check_fischer_pair_mapping(&ocfg, 1, &CliffordPolynomial::one(2)).unwrap();
        assert!(report.passed);

        // Non-harmonic input is a precondition error.
        let f = x(2, 1).mul(&x(2, 1)).unwrap();
        assert!(matches!(
            check_fischer_pair_mapping(&ocfg, 1, &f),
            Err(Error::NotHarmonic { .. })
        ));
    }

    #[test]
    fn harmonic_generator_output_is_harmonic() {
        for cfg in [continuum(2), CalculusConfig::forward(2, int(1)).unwrap()] {
            for seed in 0..4 {
                let f = generate_harmonic(&cfg, 3, seed).unwrap();
                assert!(
                    apply_laplacian(&cfg, &f).unwrap().is_zero(),
                    "{} seed {seed}",
                    cfg.label()
                );
            }
        }
    }

    #[test]
    fn spherical_harmonic_system_at_zero_hbar() {
        // For hbar = 0 a degree-d harmonic polynomial is a J' eigenvector
        // with eigenvalue d/2 + n/4.
        let cfg = continuum(2);
        let ocfg = OscillatorConfig::new(cfg.clone(), int(0));
        let harmonic = generate_harmonic(&cfg, 3, 11).unwrap();
        for (degree, part) in harmonic.homogeneous_components() {
            if apply_laplacian(&cfg, &part).unwrap().is_zero() {
                let eigenvalue = Rational::new((degree as i64).into(), 2.into()) + ratio(1, 2);
                assert_eq!(apply_j(&ocfg, &part).unwrap(), part.scale(&eigenvalue));
            }
        }
    }

    #[test]
    fn suite_passes_on_a_small_grid() {
        let cfg = CalculusConfig::forward(2, int(1)).unwrap();
        let reports = oscillator_suite(&cfg, 3, 4, 17).unwrap();
        for report in &reports {
            assert!(report.passed, "{}", report.identity_name);
        }
    }
}
