//! Seeded exact identity checking and the named verification suites.
//!
//! Identities are operator equalities checked on random polynomials with
//! exact equality, never a tolerance. The sampling distribution is fixed:
//! each polynomial draws one to six terms; a term picks a total degree
//! uniformly up to the cap, distributes it over the axes one unit at a
//! time, picks a blade uniformly, and a coefficient with numerator in
//! `-9..=9` and denominator in `{1, 2, 3}`. Trial `t` of seed `s` uses
//! stream `t` of a ChaCha8 generator seeded with `s`, so any failure is
//! reproducible from `(seed, trial)` alone and results do not depend on
//! scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::Blade;
use crate::dirac::{
    dirac_op, euler_op, gamma_op, half_dimension, laplacian_op, shifted_euler_op, vector_op,
};
use crate::error::Error;
use crate::operator::LinearOperator;
use crate::poly::{CliffordPolynomial, MultiIndex};
use crate::rational::{ratio, Rational};
use crate::umbral::{apply_shift, delta_op, raising_op, sheffer_op, CalculusConfig, Family};

/// Stable suite names accepted by the command line `verify` dispatch.
pub const SUITE_NAMES: [&str; 7] = [
    "weyl",
    "lemma-x-D",
    "osp12",
    "intertwining",
    "gamma-commute",
    "star-laplacian",
    "oscillator",
];

/// Deterministic generator for one trial of one seed.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws one random polynomial from the documented distribution.
pub fn sample_polynomial(n: usize, max_degree: u32, rng: &mut impl Rng) -> CliffordPolynomial {
    let mut poly = CliffordPolynomial::zero(n);
    let terms = rng.gen_range(1..=6u32);
    for _ in 0..terms {
        let degree = rng.gen_range(0..=max_degree);
        let mut exponents = vec![0u32; n];
        for _ in 0..degree {
            exponents[rng.gen_range(0..n)] += 1;
        }
        let blade = Blade::from_mask(rng.gen_range(0..(1u32 << n)));
        let numerator: i64 = rng.gen_range(-9..=9);
        let denominator: i64 = rng.gen_range(1..=3);
        poly.add_term(
            MultiIndex::new(exponents),
            blade,
            ratio(numerator, denominator),
        );
    }
    poly
}

/// Draws a rational point with the same coefficient distribution as the
/// polynomial sampler (numerators `-9..=9`, denominators `1..=3`).
pub fn sample_point(n: usize, rng: &mut impl Rng) -> Vec<Rational> {
    (0..n)
        .map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=3)))
        .collect()
}

/// Witness of a failed identity: the input and both evaluations.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub input: CliffordPolynomial,
    pub lhs: CliffordPolynomial,
    pub rhs: CliffordPolynomial,
}

/// Outcome of one identity over one configuration.
///
/// `passed` holds exactly when `counterexample` is absent.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub identity_name: String,
    pub config: CalculusConfig,
    pub trials: u32,
    pub max_degree: u32,
    pub seed: u64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

/// Checks `lhs(f) = rhs(f)` exactly on seeded random polynomials.
/// Failure is a report carrying the first counterexample, not an error.
pub fn check_identity(
    name: &str,
    lhs: &LinearOperator,
    rhs: &LinearOperator,
    cfg: &CalculusConfig,
    max_degree: u32,
    trials: u32,
    seed: u64,
) -> Result<IdentityReport, Error> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial as u64);
        let input = sample_polynomial(cfg.n(), max_degree, &mut rng);
        let left = lhs.apply(&input);
        let right = rhs.apply(&input);
        if left != right {
            return Ok(IdentityReport {
                identity_name: name.to_owned(),
                config: cfg.clone(),
                trials,
                max_degree,
                seed,
                passed: false,
                counterexample: Some(Counterexample {
                    input,
                    lhs: left,
                    rhs: right,
                }),
            });
        }
    }
    Ok(IdentityReport {
        identity_name: name.to_owned(),
        config: cfg.clone(),
        trials,
        max_degree,
        seed,
        passed: true,
        counterexample: None,
    })
}

/// Checks an identity on every monomial-times-blade input up to a degree
/// cap; `trials` in the report counts the enumerated inputs.
pub fn check_identity_on_basis(
    name: &str,
    lhs: &LinearOperator,
    rhs: &LinearOperator,
    cfg: &CalculusConfig,
    max_degree: u32,
) -> IdentityReport {
    let mut count = 0u32;
    for alpha in multi_indices_up_to(cfg.n(), max_degree) {
        for mask in 0..(1u32 << cfg.n()) {
            count += 1;
            let input = CliffordPolynomial::monomial(
                cfg.n(),
                alpha.clone(),
                Blade::from_mask(mask),
                Rational::from_integer(1.into()),
            )
            .expect("enumerated inputs are valid");
            let left = lhs.apply(&input);
            let right = rhs.apply(&input);
            if left != right {
                return IdentityReport {
                    identity_name: name.to_owned(),
                    config: cfg.clone(),
                    trials: count,
                    max_degree,
                    seed: 0,
                    passed: false,
                    counterexample: Some(Counterexample {
                        input,
                        lhs: left,
                        rhs: right,
                    }),
                };
            }
        }
    }
    IdentityReport {
        identity_name: name.to_owned(),
        config: cfg.clone(),
        trials: count,
        max_degree,
        seed: 0,
        passed: true,
        counterexample: None,
    }
}

/// All exponent vectors of length `n` with total degree at most `cap`.
pub fn multi_indices_up_to(n: usize, cap: u32) -> Vec<MultiIndex> {
    fn extend(prefix: &mut Vec<u32>, remaining: u32, axes_left: usize, out: &mut Vec<MultiIndex>) {
        if axes_left == 0 {
            out.push(MultiIndex::new(prefix.clone()));
            return;
        }
        for value in 0..=remaining {
            prefix.push(value);
            extend(prefix, remaining - value, axes_left - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), cap, n, &mut out);
    out
}

/// Runs one named suite over one configuration.
pub fn run_suite(
    name: &str,
    cfg: &CalculusConfig,
    max_degree: u32,
    trials: u32,
    seed: u64,
) -> Result<Vec<IdentityReport>, Error> {
    match name {
        "weyl" => weyl_suite(cfg, max_degree, trials, seed),
        "lemma-x-D" => anticommutator_suite(cfg, max_degree, trials, seed),
        "osp12" => osp_suite(cfg, max_degree, trials, seed),
        "intertwining" => Ok(intertwining_suite(cfg, max_degree)),
        "gamma-commute" => gamma_commute_suite(cfg, max_degree, trials, seed),
        "star-laplacian" => star_laplacian_suite(cfg, max_degree, trials, seed),
        "oscillator" => crate::oscillator::oscillator_suite(cfg, max_degree, trials, seed),
        _ => Err(Error::UnknownSuite(name.to_owned())),
    }
}

/// Weyl-Heisenberg relations: deltas commute, raisings commute, and
/// `[O_j, x'_k] = delta_jk id`.
pub fn weyl_suite(
    cfg: &CalculusConfig,
    max_degree: u32,
    trials: u32,
    seed: u64,
) -> Result<Vec<IdentityReport>, Error> {
    let mut reports = Vec::new();
    for j in 1..=cfg.n() {
        for k in 1..=cfg.n() {
            let delta_j = delta_op(cfg, j)?;
            let delta_k = delta_op(cfg, k)?;
            let raising_j = raising_op(cfg, j)?;
            let raising_k = raising_op(cfg, k)?;
            if j < k {
                reports.push(check_identity(
                    &format!("[O_{j}, O_{k}] = 0"),
                    &LinearOperator::commutator(&delta_j, &delta_k),
                    &LinearOperator::zero(),
                    cfg,
                    max_degree,
                    trials,
                    seed,
                )?);
                reports.push(check_identity(
                    &format!("[x'_{j}, x'_{k}] = 0"),
                    &LinearOperator::commutator(&raising_j, &raising_k),
                    &LinearOperator::zero(),
                    cfg,
                    max_degree,
                    trials,
                    seed,
                )?);
            }
            let rhs = if j == k {
                LinearOperator::identity()
            } else {
                LinearOperator::zero()
            };
            reports.push(check_identity(
                &format!("[O_{j}, x'_{k}] = {}", if j == k { "id" } else { "0" }),
                &LinearOperator::commutator(&delta_j, &raising_k),
                &rhs,
                cfg,
                max_degree,
                trials,
                seed,
            )?);
        }
    }
    Ok(reports)
}

/// The three anticommutation relations between `x'` and `D'`, plus the
/// derived expression of `E'` through `{x', D'}`.
pub fn anticommutator_suite(
    cfg: &CalculusConfig,
    max_degree: u32,
    trials: u32,
    seed: u64,
) -> Result<Vec<IdentityReport>, Error> {
    let vector = vector_op(cfg);
    let dirac = dirac_op(cfg);
    let n = Rational::from_integer((cfg.n() as i64).into());

    let mut sum_of_squares = LinearOperator::zero();
    for axis in 1..=cfg.n() {
        let raising = raising_op(cfg, axis)?;
        sum_of_squares = sum_of_squares.add(&raising.compose(&raising));
    }

    let mut reports = vec![check_identity(
        "{x', x'} = -2 sum_j (x'_j)^2",
        &LinearOperator::anticommutator(&vector, &vector),
        &sum_of_squares.scale(ratio(-2, 1)),
        cfg,
        max_degree,
        trials,
        seed,
    )?];
    reports.push(check_identity(
        "{D', D'} = -2 Delta'",
        &LinearOperator::anticommutator(&dirac, &dirac),
        &laplacian_op(cfg).scale(ratio(-2, 1)),
        cfg,
        max_degree,
        trials,
        seed,
    )?);
    reports.push(check_identity(
        "{x', D'} = -2 E' - n id",
        &LinearOperator::anticommutator(&vector, &dirac),
        &euler_op(cfg)
            .scale(ratio(-2, 1))
            .sub(&LinearOperator::identity().scale(n.clone())),
        cfg,
        max_degree,
        trials,
        seed,
    )?);
    reports.push(check_identity(
        "E' = -(1/2)({x', D'} + n id)",
        &euler_op(cfg),
        &LinearOperator::anticommutator(&vector, &dirac)
            .add(&LinearOperator::identity().scale(n))
            .scale(ratio(-1, 2)),
        cfg,
        max_degree,
        trials,
        seed,
    )?);
    Ok(reports)
}

/// The nine commutators generated by `x'`, `D'`, `(x')^2`, `Delta'` and
/// `E' + n/2`.
pub fn osp_suite(
    cfg: &CalculusConfig,
    max_degree: u32,
    trials: u32,
    seed: u64,
) -> Result<Vec<IdentityReport>, Error> {
    let vector = vector_op(cfg);
    let dirac = dirac_op(cfg);
    let laplacian = laplacian_op(cfg);
    let vector_sq = vector.compose(&vector);
    let shifted = shifted_euler_op(cfg, half_dimension(cfg));

    let cases: Vec<(String, LinearOperator, LinearOperator)> = vec![
        (
            "[x', (x')^2] = 0".into(),
            LinearOperator::commutator(&vector, &vector_sq),
            LinearOperator::zero(),
        ),
        (
            "[x', Delta'] = -2 D'".into(),
            LinearOperator::commutator(&vector, &laplacian),
            dirac.scale(ratio(-2, 1)),
        ),
        (
            "[E' + n/2, x'] = x'".into(),
            LinearOperator::commutator(&shifted, &vector),
            vector.clone(),
        ),
        (
            "[D', (x')^2] = -2 x'".into(),
            LinearOperator::commutator(&dirac, &vector_sq),
            vector.scale(ratio(-2, 1)),
        ),
        (
            "[D', Delta'] = 0".into(),
            LinearOperator::commutator(&dirac, &laplacian),
            LinearOperator::zero(),
        ),
        (
            "[E' + n/2, D'] = -D'".into(),
            LinearOperator::commutator(&shifted, &dirac),
            dirac.scale(ratio(-1, 1)),
        ),
        (
            "[(x')^2, Delta'] = 4 (E' + n/2)".into(),
            LinearOperator::commutator(&vector_sq, &laplacian),
            shifted.scale(ratio(4, 1)),
        ),
        (
            "[E' + n/2, -(x')^2] = -2 (x')^2".into(),
            LinearOperator::commutator(&shifted, &vector_sq.scale(ratio(-1, 1))),
            vector_sq.scale(ratio(-2, 1)),
        ),
        (
            "[E' + n/2, -Delta'] = 2 Delta'".into(),
            LinearOperator::commutator(&shifted, &laplacian.scale(ratio(-1, 1))),
            laplacian.scale(ratio(2, 1)),
        ),
    ];

    let mut reports = Vec::new();
    for (name, lhs, rhs) in cases {
        reports.push(check_identity(
            &name, &lhs, &rhs, cfg, max_degree, trials, seed,
        )?);
    }
    Ok(reports)
}

/// `Psi D = D' Psi`, `Psi x = x' Psi`, `Psi E = E' Psi`, enumerated over
/// every monomial-times-blade input up to the degree cap. The continuum
/// operators on the left live in the same dimension.
pub fn intertwining_suite(cfg: &CalculusConfig, max_degree: u32) -> Vec<IdentityReport> {
    let continuum = CalculusConfig::continuum(cfg.n()).expect("dimension already validated");
    let sheffer = sheffer_op(cfg);
    let cases = [
        ("Psi . D = D' . Psi", dirac_op(&continuum), dirac_op(cfg)),
        ("Psi . x = x' . Psi", vector_op(&continuum), vector_op(cfg)),
        ("Psi . E = E' . Psi", euler_op(&continuum), euler_op(cfg)),
    ];
    cases
        .into_iter()
        .map(|(name, classical, umbral)| {
            check_identity_on_basis(
                name,
                &sheffer.compose(&classical),
                &umbral.compose(&sheffer),
                cfg,
                max_degree,
            )
        })
        .collect()
}

/// `Gamma'` commutes with `E'` and `Delta'`.
pub fn gamma_commute_suite(
    cfg: &CalculusConfig,
    max_degree: u32,
    trials: u32,
    seed: u64,
) -> Result<Vec<IdentityReport>, Error> {
    let gamma = gamma_op(cfg);
    Ok(vec![
        check_identity(
            "[E', Gamma'] = 0",
            &LinearOperator::commutator(&euler_op(cfg), &gamma),
            &LinearOperator::zero(),
            cfg,
            max_degree,
            trials,
            seed,
        )?,
        check_identity(
            "[Delta', Gamma'] = 0",
            &LinearOperator::commutator(&laplacian_op(cfg), &gamma),
            &LinearOperator::zero(),
            cfg,
            max_degree,
            trials,
            seed,
        )?,
    ])
}

/// For the central family, `-(D')^2` equals the star Laplacian on the
/// doubled step: `sum_j (T_{2h v_j} - 2 id + T_{-2h v_j}) / (4 h^2)`.
pub fn star_laplacian_suite(
    cfg: &CalculusConfig,
    max_degree: u32,
    trials: u32,
    seed: u64,
) -> Result<Vec<IdentityReport>, Error> {
    if cfg.family() != Family::Central {
        return Err(Error::SuiteFamilyMismatch {
            suite: "star-laplacian",
            family: "central",
        });
    }
    let h = cfg.h().expect("central family carries a step").clone();
    let double = Rational::from_integer(2.into()) * &h;
    let quarter = (Rational::from_integer(4.into()) * &h * &h).recip();
    let n = cfg.n();
    let star = LinearOperator::new("star_laplacian_2h", move |f| {
        let mut result = CliffordPolynomial::zero(f.n());
        for axis in 1..=n {
            let up = apply_shift(f, axis, &double).expect("axis in range");
            let down = apply_shift(f, axis, &-double.clone()).expect("axis in range");
            let star_part = up
                .add(&down)
                .and_then(|sum| sum.sub(&f.scale(&Rational::from_integer(2.into()))))
                .expect("same dimension");
            result = result.add(&star_part).expect("same dimension");
        }
        result.scale(&quarter)
    });
    let dirac = dirac_op(cfg);
    Ok(vec![check_identity(
        "-(D')^2 = star Laplacian on step 2h",
        &dirac.compose(&dirac).scale(ratio(-1, 1)),
        &star,
        cfg,
        max_degree,
        trials,
        seed,
    )?])
}
