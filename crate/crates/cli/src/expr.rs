//! Expression grammar for Clifford polynomials.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := rational | 'x' nat | 'e' digits | '(' expr ')'
//! rational := nat ('/' nat)?
//! ```
//!
//! `e` followed by digits names a single generator when the digits form
//! an index within `1..=n` (so `e12` is the twelfth generator when the
//! dimension allows it); otherwise the digits must be strictly increasing
//! single-digit indices and the token is sugar for their product, e.g.
//! `e12 = e1*e2` in the plane. Output always uses the starred form.

use std::fmt;

use umbral_clifford::poly::CliffordPolynomial;
use umbral_clifford::rational::Rational;

/// Abstract syntax of one polynomial expression.
#[derive(Clone, Debug, PartialEq)]
pub enum PolyExpr {
    Rational(Rational),
    Variable(usize),
    Unit(usize),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

/// Syntax or elaboration failure with a byte position.
#[derive(Clone, Debug, PartialEq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at position {}: {}",
            self.position, self.message
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    text: &'a [u8],
    position: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, position: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position,
            message: message.into(),
        })
    }

    fn skip_whitespace(&mut self) {
        while self
            .text
            .get(self.position)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.position += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_whitespace();
        self.text.get(self.position).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let byte = self.text.get(self.position).copied();
        if byte.is_some() {
            self.position += 1;
        }
        byte
    }

    /// Digit run starting at the current byte, without whitespace skipping.
    fn digits(&mut self) -> Result<(usize, &'a str), ParseError> {
        let start = self.position;
        while self.text.get(self.position).is_some_and(u8::is_ascii_digit) {
            self.position += 1;
        }
        if self.position == start {
            return self.error(start, "expected digits");
        }
        let text = std::str::from_utf8(&self.text[start..self.position])
            .expect("digit bytes are valid UTF-8");
        Ok((start, text))
    }

    fn nat(&mut self) -> Result<(usize, u64), ParseError> {
        let (start, text) = self.digits()?;
        match text.parse::<u64>() {
            Ok(value) => Ok((start, value)),
            Err(_) => self.error(start, "integer literal too large"),
        }
    }

    fn expr(&mut self) -> Result<PolyExpr, ParseError> {
        let mut value = if self.peek() == Some(b'-') {
            self.bump();
            PolyExpr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    value = PolyExpr::Add(Box::new(value), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.bump();
                    value = PolyExpr::Sub(Box::new(value), Box::new(self.term()?));
                }
                _ => return Ok(value),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr, ParseError> {
        let mut value = self.factor()?;
        while self.peek() == Some(b'*') {
            self.bump();
            value = PolyExpr::Mul(Box::new(value), Box::new(self.factor()?));
        }
        Ok(value)
    }

    fn factor(&mut self) -> Result<PolyExpr, ParseError> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            self.skip_whitespace();
            let (start, value) = self.nat()?;
            let exponent = u32::try_from(value).map_err(|_| ParseError {
                position: start,
                message: "exponent too large".into(),
            })?;
            return Ok(PolyExpr::Pow(Box::new(atom), exponent));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<PolyExpr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.error(self.position, "expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Some(b'x') => {
                self.bump();
                let (start, index) = self.nat()?;
                let index = index as usize;
                if index == 0 || index > self.n {
                    return self.error(
                        start,
                        format!("variable index {index} out of range 1..={}", self.n),
                    );
                }
                Ok(PolyExpr::Variable(index))
            }
            Some(b'e') => {
                self.bump();
                let (start, digits) = self.digits()?;
                self.unit(start, digits)
            }
            Some(byte) if byte.is_ascii_digit() => {
                let (_, numerator) = self.nat()?;
                // A '/' directly after the integer continues the literal.
                if self.text.get(self.position) == Some(&b'/') {
                    self.position += 1;
                    let (start, denominator) = self.nat()?;
                    if denominator == 0 {
                        return self.error(start, "zero denominator");
                    }
                    return Ok(PolyExpr::Rational(Rational::new(
                        (numerator as i64).into(),
                        (denominator as i64).into(),
                    )));
                }
                Ok(PolyExpr::Rational(Rational::from_integer(
                    (numerator as i64).into(),
                )))
            }
            Some(byte) => self.error(
                self.position,
                format!("unexpected character {:?}", byte as char),
            ),
            None => self.error(self.position, "unexpected end of input"),
        }
    }

    /// Elaborates the digit run of an `e` token.
    fn unit(&mut self, start: usize, digits: &str) -> Result<PolyExpr, ParseError> {
        if let Ok(index) = digits.parse::<usize>() {
            if index >= 1 && index <= self.n {
                return Ok(PolyExpr::Unit(index));
            }
        }
        // Sugar: strictly increasing single-digit indices.
        let mut previous = 0usize;
        let mut value: Option<PolyExpr> = None;
        for (offset, ch) in digits.char_indices() {
            let index = ch.to_digit(10).expect("digit run") as usize;
            if index == 0 || index > self.n {
                return self.error(
                    start + offset,
                    format!("generator index {index} out of range 1..={}", self.n),
                );
            }
            if index <= previous {
                return self.error(
                    start + offset,
                    "generator indices must be strictly increasing",
                );
            }
            previous = index;
            value = Some(match value {
                None => PolyExpr::Unit(index),
                Some(left) => PolyExpr::Mul(Box::new(left), Box::new(PolyExpr::Unit(index))),
            });
        }
        Ok(value.expect("digit run is nonempty"))
    }
}

/// Parses an expression for dimension `n` into its syntax tree.
pub fn parse_expr(text: &str, n: usize) -> Result<PolyExpr, ParseError> {
    let mut parser = Parser {
        text: text.as_bytes(),
        position: 0,
        n,
    };
    let expr = parser.expr()?;
    parser.skip_whitespace();
    if parser.position != text.len() {
        return Err(ParseError {
            position: parser.position,
            message: "trailing input".into(),
        });
    }
    Ok(expr)
}

/// Elaborates a syntax tree into the canonical polynomial.
pub fn elaborate(expr: &PolyExpr, n: usize) -> CliffordPolynomial {
    match expr {
        PolyExpr::Rational(value) => CliffordPolynomial::scalar(n, value.clone()),
        PolyExpr::Variable(index) => {
            CliffordPolynomial::variable(n, *index).expect("index validated during parsing")
        }
        PolyExpr::Unit(index) => {
            CliffordPolynomial::generator(n, *index).expect("index validated during parsing")
        }
        PolyExpr::Neg(inner) => elaborate(inner, n).neg(),
        PolyExpr::Add(left, right) => elaborate(left, n)
            .add(&elaborate(right, n))
            .expect("same dimension"),
        PolyExpr::Sub(left, right) => elaborate(left, n)
            .sub(&elaborate(right, n))
            .expect("same dimension"),
        PolyExpr::Mul(left, right) => elaborate(left, n)
            .mul(&elaborate(right, n))
            .expect("same dimension"),
        PolyExpr::Pow(base, exponent) => {
            let base = elaborate(base, n);
            let mut value = CliffordPolynomial::one(n);
            for _ in 0..*exponent {
                value = value.mul(&base).expect("same dimension");
            }
            value
        }
    }
}

/// Parses and elaborates in one step.
pub fn parse_polynomial(text: &str, n: usize) -> Result<CliffordPolynomial, ParseError> {
    Ok(elaborate(&parse_expr(text, n)?, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use umbral_clifford::clifford::Blade;
    use umbral_clifford::poly::MultiIndex;
    use umbral_clifford::rational::{int, ratio};

    #[test]
    fn grammar_elaboration() {
        let poly = parse_polynomial("x1^2 - 1/2*e1*e2", 2).unwrap();
        let expected = CliffordPolynomial::from_terms(
            2,
            [
                (MultiIndex::new(vec![2, 0]), Blade::SCALAR, int(1)),
                (
                    MultiIndex::zero(2),
                    Blade::from_indices(&[1, 2], 2).unwrap(),
                    ratio(-1, 2),
                ),
            ],
        )
        .unwrap();
        assert_eq!(poly, expected);
    }

    #[test]
    fn products_canonicalize() {
        // e2*e1 = -e1*e2
        let poly = parse_polynomial("e2*e1", 2).unwrap();
        let expected = parse_polynomial("-e1*e2", 2).unwrap();
        assert_eq!(poly, expected);
    }

    #[test]
    fn e_digit_sugar() {
        assert_eq!(
            parse_polynomial("e12", 2).unwrap(),
            parse_polynomial("e1*e2", 2).unwrap()
        );
        assert_eq!(
            parse_polynomial("e123", 3).unwrap(),
            parse_polynomial("e1*e2*e3", 3).unwrap()
        );
        // With a large enough dimension the digits are one index.
        assert_eq!(
            parse_polynomial("e12", 12).unwrap(),
            CliffordPolynomial::generator(12, 12).unwrap()
        );
        // Non-increasing sugar digits are rejected.
        assert!(parse_polynomial("e21", 2).is_err());
    }

    #[test]
    fn out_of_range_indices() {
        let error = parse_polynomial("x3", 2).unwrap_err();
        assert!(error.message.contains("out of range"));
        assert!(parse_polynomial("e3", 2).is_err());
        assert!(parse_polynomial("x0", 2).is_err());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let error = parse_polynomial("x1 + ", 2).unwrap_err();
        assert_eq!(error.position, 5);
        let error = parse_polynomial("(x1", 2).unwrap_err();
        assert!(error.message.contains("')'"));
        assert!(parse_polynomial("x1 x2", 2).is_err());
        assert!(parse_polynomial("1/0", 2).is_err());
    }

    #[test]
    fn negation_and_powers() {
        let poly = parse_polynomial("-(x1 - 2)^2", 1).unwrap();
        let x = CliffordPolynomial::variable(1, 1).unwrap();
        let shifted = x.sub(&CliffordPolynomial::scalar(1, int(2))).unwrap();
        assert_eq!(poly, shifted.mul(&shifted).unwrap().neg());

        let squared_unit = parse_polynomial("e1^2", 2).unwrap();
        assert_eq!(squared_unit, CliffordPolynomial::one(2).neg());
    }

    #[test]
    fn printer_round_trip_on_random_polynomials() {
        use umbral_clifford::verify::{sample_polynomial, trial_rng};
        for n in 1..=3 {
            for trial in 0..70 {
                let poly = sample_polynomial(n, 4, &mut trial_rng(2024, trial + 1000 * n as u64));
                let text = poly.to_string();
                let reparsed = parse_polynomial(&text, n).unwrap_or_else(|error| {
                    panic!("failed to reparse {text:?}: {error}");
                });
                assert_eq!(reparsed, poly, "n={n} text={text:?}");
            }
        }
    }
}
