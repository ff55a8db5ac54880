//! Sparse Clifford-valued polynomials with exact rational coefficients.
//!
//! A polynomial is a finite sum of terms `c * x^alpha * b` where `c` is a
//! nonzero [`Rational`], `alpha` a [`MultiIndex`] of length `n` and `b` a
//! [`Blade`]. Coefficients sit to the left of blades; since the variables
//! are scalar this is a unique normal form. Terms are kept in graded
//! lexicographic order on the multi-index with the blade index list as the
//! tie break, which makes serialization and printing deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::clifford::{Blade, MAX_DIM};
use crate::error::Error;
use crate::rational::Rational;

/// Exponent vector of a monomial `x_1^{a_1} ... x_n^{a_n}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    /// Unit multi-index for one axis (1-based).
    pub fn unit(n: usize, axis: usize) -> Self {
        let mut exponents = vec![0; n];
        exponents[axis - 1] = 1;
        MultiIndex(exponents)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent on a 1-based axis.
    pub fn exponent(&self, axis: usize) -> u32 {
        self.0[axis - 1]
    }

    /// Copy with the exponent on `axis` (1-based) replaced.
    pub fn with_exponent(&self, axis: usize, value: u32) -> Self {
        let mut exponents = self.0.clone();
        exponents[axis - 1] = value;
        MultiIndex(exponents)
    }

    /// Total degree `|alpha|`.
    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }
}

// Graded lexicographic order: total degree first, then the exponent vector.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the algebra of Clifford-valued polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliffordPolynomial {
    n: usize,
    terms: BTreeMap<(MultiIndex, Blade), Rational>,
}

impl CliffordPolynomial {
    /// Zero polynomial. Panics when `n` is outside `1..=MAX_DIM`; the
    /// dimension is validated once wherever it enters from the outside.
    pub fn zero(n: usize) -> Self {
        assert!(
            (1..=MAX_DIM).contains(&n),
            "dimension {n} outside 1..={MAX_DIM}"
        );
        CliffordPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, Rational::one())
    }

    pub fn scalar(n: usize, value: Rational) -> Self {
        let mut poly = Self::zero(n);
        poly.add_term(MultiIndex::zero(n), Blade::SCALAR, value);
        poly
    }

    /// The variable `x_j` (1-based axis).
    pub fn variable(n: usize, axis: usize) -> Result<Self, Error> {
        if axis == 0 || axis > n {
            return Err(Error::AxisOutOfRange { axis, n });
        }
        let mut poly = Self::zero(n);
        poly.add_term(MultiIndex::unit(n, axis), Blade::SCALAR, Rational::one());
        Ok(poly)
    }

    /// The generator `e_j` as a polynomial.
    pub fn generator(n: usize, index: usize) -> Result<Self, Error> {
        let blade = Blade::generator(index, n)?;
        let mut poly = Self::zero(n);
        poly.add_term(MultiIndex::zero(n), blade, Rational::one());
        Ok(poly)
    }

    /// Single term `c * x^alpha * b`, validated against `n`.
    pub fn monomial(
        n: usize,
        alpha: MultiIndex,
        blade: Blade,
        coefficient: Rational,
    ) -> Result<Self, Error> {
        if alpha.len() != n {
            return Err(Error::MultiIndexLengthMismatch {
                expected: n,
                actual: alpha.len(),
            });
        }
        if !blade.fits_dimension(n) {
            let index = blade.indices().max().unwrap_or(0);
            return Err(Error::BladeIndexOutOfRange { index, n });
        }
        let mut poly = Self::zero(n);
        poly.add_term(alpha, blade, coefficient);
        Ok(poly)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|(alpha, _)| alpha.total_degree())
            .max()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Blade, &Rational)> {
        self.terms
            .iter()
            .map(|((alpha, blade), coefficient)| (alpha, blade, coefficient))
    }

    /// Merges one term, dropping the entry when the sum cancels.
    pub(crate) fn add_term(&mut self, alpha: MultiIndex, blade: Blade, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        let key = (alpha, blade);
        match self.terms.get_mut(&key) {
            Some(entry) => {
                *entry += coefficient;
                if entry.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coefficient);
            }
        }
    }

    /// Builds a polynomial from raw terms, validating each against `n`.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (MultiIndex, Blade, Rational)>,
    ) -> Result<Self, Error> {
        let mut poly = Self::zero(n);
        for (alpha, blade, coefficient) in terms {
            if alpha.len() != n {
                return Err(Error::MultiIndexLengthMismatch {
                    expected: n,
                    actual: alpha.len(),
                });
            }
            if !blade.fits_dimension(n) {
                let index = blade.indices().max().unwrap_or(0);
                return Err(Error::BladeIndexOutOfRange { index, n });
            }
            poly.add_term(alpha, blade, coefficient);
        }
        Ok(poly)
    }

    fn check_same_dimension(&self, other: &Self) -> Result<(), Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_dimension(other)?;
        let mut result = self.clone();
        for ((alpha, blade), coefficient) in &other.terms {
            result.add_term(alpha.clone(), *blade, coefficient.clone());
        }
        Ok(result)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.n);
        }
        let mut result = Self::zero(self.n);
        for ((alpha, blade), coefficient) in &self.terms {
            result
                .terms
                .insert((alpha.clone(), *blade), coefficient * factor);
        }
        result
    }

    /// Noncommutative algebra product: exponents add, blades multiply with
    /// their canonical sign, variables commute with blades.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_dimension(other)?;
        let mut result = Self::zero(self.n);
        for ((alpha_a, blade_a), coefficient_a) in &self.terms {
            for ((alpha_b, blade_b), coefficient_b) in &other.terms {
                let exponents: Vec<u32> = alpha_a
                    .exponents()
                    .iter()
                    .zip(alpha_b.exponents())
                    .map(|(a, b)| a + b)
                    .collect();
                let product = blade_a.product(*blade_b);
                let mut coefficient = coefficient_a * coefficient_b;
                if product.sign < 0 {
                    coefficient = -coefficient;
                }
                result.add_term(MultiIndex::new(exponents), product.blade, coefficient);
            }
        }
        Ok(result)
    }

    /// Left multiplication by a single blade; used by the vector-valued
    /// operators where the blade factor always sits on the left.
    pub fn mul_blade_left(&self, blade: Blade) -> Self {
        let mut result = Self::zero(self.n);
        for ((alpha, term_blade), coefficient) in &self.terms {
            let product = blade.product(*term_blade);
            let mut coefficient = coefficient.clone();
            if product.sign < 0 {
                coefficient = -coefficient;
            }
            result.add_term(alpha.clone(), product.blade, coefficient);
        }
        result
    }

    /// Multiplication by the variable `x_j` (1-based axis).
    pub fn mul_variable(&self, axis: usize) -> Result<Self, Error> {
        if axis == 0 || axis > self.n {
            return Err(Error::AxisOutOfRange { axis, n: self.n });
        }
        let mut result = Self::zero(self.n);
        for ((alpha, blade), coefficient) in &self.terms {
            let bumped = alpha.with_exponent(axis, alpha.exponent(axis) + 1);
            result.terms.insert((bumped, *blade), coefficient.clone());
        }
        Ok(result)
    }

    /// The terms of one total degree.
    pub fn homogeneous_part(&self, degree: usize) -> Self {
        let mut part = Self::zero(self.n);
        for ((alpha, blade), coefficient) in &self.terms {
            if alpha.total_degree() == degree {
                part.terms
                    .insert((alpha.clone(), *blade), coefficient.clone());
            }
        }
        part
    }

    /// Splits into homogeneous parts, ascending in degree; the zero
    /// polynomial yields an empty list.
    pub fn homogeneous_components(&self) -> Vec<(usize, Self)> {
        let mut by_degree: BTreeMap<usize, Self> = BTreeMap::new();
        for ((alpha, blade), coefficient) in &self.terms {
            by_degree
                .entry(alpha.total_degree())
                .or_insert_with(|| Self::zero(self.n))
                .add_term(alpha.clone(), *blade, coefficient.clone());
        }
        by_degree.into_iter().collect()
    }

    /// Substitutes rational values for the variables, returning the
    /// resulting Clifford number keyed by blade (zero entries pruned).
    pub fn eval(&self, point: &[Rational]) -> Result<BTreeMap<Blade, Rational>, Error> {
        if point.len() != self.n {
            return Err(Error::PointLengthMismatch {
                expected: self.n,
                actual: point.len(),
            });
        }
        let mut values: BTreeMap<Blade, Rational> = BTreeMap::new();
        for ((alpha, blade), coefficient) in &self.terms {
            let mut value = coefficient.clone();
            for (coordinate, &exponent) in point.iter().zip(alpha.exponents()) {
                if exponent > 0 {
                    value *= coordinate.pow(exponent as i32);
                }
            }
            let entry = values.entry(*blade).or_insert_with(Rational::zero);
            *entry += value;
            if entry.is_zero() {
                values.remove(blade);
            }
        }
        Ok(values)
    }
}

impl fmt::Display for CliffordPolynomial {
    /// Canonical text form, parseable back by the expression grammar:
    /// terms in canonical order, `*`-joined factors, explicit `+`/`-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (position, ((alpha, blade), coefficient)) in self.terms.iter().enumerate() {
            let negative = coefficient.is_negative();
            if position == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = coefficient.abs();
            let mut factors: Vec<String> = Vec::new();
            if !magnitude.is_one() {
                factors.push(crate::rational::format_rational(&magnitude));
            }
            for (axis, &exponent) in alpha.exponents().iter().enumerate() {
                match exponent {
                    0 => {}
                    1 => factors.push(format!("x{}", axis + 1)),
                    _ => factors.push(format!("x{}^{}", axis + 1, exponent)),
                }
            }
            if !blade.is_scalar() {
                factors.push(blade.to_string());
            }
            if factors.is_empty() {
                factors.push("1".to_owned());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn var(n: usize, j: usize) -> CliffordPolynomial {
        CliffordPolynomial::variable(n, j).unwrap()
    }

    fn gen(n: usize, j: usize) -> CliffordPolynomial {
        CliffordPolynomial::generator(n, j).unwrap()
    }

    #[test]
    fn addition_and_scaling() {
        let x1 = var(2, 1);
        let zero = CliffordPolynomial::zero(2);
        assert_eq!(x1.add(&zero).unwrap(), x1);
        assert!(x1.add(&x1.neg()).unwrap().is_zero());

        let half_x1_e1 = var(2, 1).mul(&gen(2, 1)).unwrap().scale(&ratio(1, 2));
        let scaled = half_x1_e1.scale(&int(2));
        assert_eq!(scaled, var(2, 1).mul(&gen(2, 1)).unwrap());
    }

    #[test]
    fn one_is_identity() {
        let f = var(2, 1)
            .mul(&gen(2, 2))
            .unwrap()
            .add(&CliffordPolynomial::scalar(2, ratio(-3, 2)))
            .unwrap();
        assert_eq!(CliffordPolynomial::one(2).mul(&f).unwrap(), f);
        assert_eq!(f.mul(&CliffordPolynomial::one(2)).unwrap(), f);
    }

    #[test]
    fn vector_squares_to_minus_norm() {
        // (x1 e1)^2 = -x1^2
        let x1e1 = var(2, 1).mul(&gen(2, 1)).unwrap();
        let square = x1e1.mul(&x1e1).unwrap();
        let expected = var(2, 1).mul(&var(2, 1)).unwrap().neg();
        assert_eq!(square, expected);

        // (x1 e1 + x2 e2)^2 = -(x1^2 + x2^2); the cross terms cancel.
        let vector = x1e1.add(&var(2, 2).mul(&gen(2, 2)).unwrap()).unwrap();
        let square = vector.mul(&vector).unwrap();
        let norm = var(2, 1)
            .mul(&var(2, 1))
            .unwrap()
            .add(&var(2, 2).mul(&var(2, 2)).unwrap())
            .unwrap();
        assert_eq!(square, norm.neg());
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let f = var(2, 1);
        let g = var(3, 1);
        assert!(f.add(&g).is_err());
        assert!(f.mul(&g).is_err());
    }

    #[test]
    fn homogeneous_split() {
        // x1^2 + x2 -> [(1, x2), (2, x1^2)]
        let f = var(2, 1).mul(&var(2, 1)).unwrap().add(&var(2, 2)).unwrap();
        let parts = f.homogeneous_components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, 1);
        assert_eq!(parts[0].1, var(2, 2));
        assert_eq!(parts[1].0, 2);
        assert_eq!(parts[1].1, var(2, 1).mul(&var(2, 1)).unwrap());

        assert!(CliffordPolynomial::zero(2)
            .homogeneous_components()
            .is_empty());

        // 3 + x1 x2 e1 -> degrees 0 and 2
        let g = CliffordPolynomial::scalar(2, int(3))
            .add(&var(2, 1).mul(&var(2, 2)).unwrap().mul(&gen(2, 1)).unwrap())
            .unwrap();
        let degrees: Vec<usize> = g.homogeneous_components().iter().map(|(d, _)| *d).collect();
        assert_eq!(degrees, vec![0, 2]);

        let recombined = g
            .homogeneous_components()
            .into_iter()
            .fold(CliffordPolynomial::zero(2), |acc, (_, part)| {
                acc.add(&part).unwrap()
            });
        assert_eq!(recombined, g);
    }

    #[test]
    fn degree_of_zero_is_none() {
        assert_eq!(CliffordPolynomial::zero(2).degree(), None);
        assert_eq!(CliffordPolynomial::one(2).degree(), Some(0));
        assert_eq!(var(2, 1).degree(), Some(1));
    }

    #[test]
    fn evaluation() {
        let x1sq = var(1, 1).mul(&var(1, 1)).unwrap();
        let values = x1sq.eval(&[int(3)]).unwrap();
        assert_eq!(values.len(), 1);
        assert_eq!(values[&Blade::SCALAR], int(9));

        let f = var(2, 1)
            .mul(&gen(2, 1))
            .unwrap()
            .add(&var(2, 2).mul(&gen(2, 2)).unwrap())
            .unwrap();
        let values = f.eval(&[int(1), int(-2)]).unwrap();
        assert_eq!(values[&Blade::generator(1, 2).unwrap()], int(1));
        assert_eq!(values[&Blade::generator(2, 2).unwrap()], int(-2));

        let constant = CliffordPolynomial::scalar(2, int(5));
        let values = constant.eval(&[ratio(7, 3), int(0)]).unwrap();
        assert_eq!(values[&Blade::SCALAR], int(5));

        assert!(f.eval(&[int(1)]).is_err());
    }

    #[test]
    fn display_canonical() {
        let f = var(2, 1)
            .mul(&var(2, 1))
            .unwrap()
            .sub(&gen(2, 1).mul(&gen(2, 2)).unwrap().scale(&ratio(1, 2)))
            .unwrap();
        assert_eq!(f.to_string(), "-1/2*e1*e2 + x1^2");
        assert_eq!(CliffordPolynomial::zero(2).to_string(), "0");
        assert_eq!(CliffordPolynomial::one(2).to_string(), "1");
        assert_eq!(CliffordPolynomial::one(2).neg().to_string(), "-1");
        assert_eq!(var(2, 2).neg().to_string(), "-x2");
    }

    #[test]
    fn no_zero_terms_are_stored() {
        let f = var(2, 1).sub(&var(2, 1)).unwrap();
        assert_eq!(f.num_terms(), 0);
        let g = CliffordPolynomial::scalar(2, int(0));
        assert_eq!(g.num_terms(), 0);
    }

    #[test]
    fn from_terms_validates() {
        assert!(CliffordPolynomial::from_terms(
            2,
            [(MultiIndex::new(vec![1]), Blade::SCALAR, int(1))]
        )
        .is_err());
        let wide = Blade::from_indices(&[3], 3).unwrap();
        assert!(CliffordPolynomial::from_terms(2, [(MultiIndex::zero(2), wide, int(1))]).is_err());
    }
}
