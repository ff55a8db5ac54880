//! Composable linear operators on the polynomial algebra.
//!
//! An operator is a name plus a pure function on polynomials. Linearity is
//! a contract of the constructors, not something the type can enforce. All
//! combinators follow one composition convention: `(A . B)(f) = A(B(f))`,
//! the right factor acts first.

use std::sync::Arc;

use crate::poly::CliffordPolynomial;
use crate::rational::{format_rational, Rational};

type ApplyFn = dyn Fn(&CliffordPolynomial) -> CliffordPolynomial + Send + Sync;

/// A linear endomorphism of the polynomial space.
#[derive(Clone)]
pub struct LinearOperator {
    name: String,
    apply: Arc<ApplyFn>,
}

impl LinearOperator {
    pub fn new(
        name: impl Into<String>,
        apply: impl Fn(&CliffordPolynomial) -> CliffordPolynomial + Send + Sync + 'static,
    ) -> Self {
        LinearOperator {
            name: name.into(),
            apply: Arc::new(apply),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, f: &CliffordPolynomial) -> CliffordPolynomial {
        (self.apply)(f)
    }

    pub fn identity() -> Self {
        LinearOperator::new("id", CliffordPolynomial::clone)
    }

    pub fn zero() -> Self {
        LinearOperator::new("0", |f| CliffordPolynomial::zero(f.n()))
    }

    /// `(self . other)(f) = self(other(f))`; `other` acts first.
    pub fn compose(&self, other: &Self) -> Self {
        let left = self.clone();
        let right = other.clone();
        LinearOperator::new(format!("({} . {})", left.name, right.name), move |f| {
            left.apply(&right.apply(f))
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let left = self.clone();
        let right = other.clone();
        LinearOperator::new(format!("({} + {})", left.name, right.name), move |f| {
            left.apply(f)
                .add(&right.apply(f))
                .expect("operator summands preserve the dimension")
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        let left = self.clone();
        let right = other.clone();
        LinearOperator::new(format!("({} - {})", left.name, right.name), move |f| {
            left.apply(f)
                .sub(&right.apply(f))
                .expect("operator summands preserve the dimension")
        })
    }

    pub fn scale(&self, factor: Rational) -> Self {
        let inner = self.clone();
        let label = format!("({}*{})", format_rational(&factor), inner.name);
        LinearOperator::new(label, move |f| inner.apply(f).scale(&factor))
    }

    /// `k`-fold composition; `pow(0)` is the identity.
    pub fn pow(&self, k: u32) -> Self {
        let inner = self.clone();
        LinearOperator::new(format!("{}^{}", inner.name, k), move |f| {
            let mut value = f.clone();
            for _ in 0..k {
                value = inner.apply(&value);
            }
            value
        })
    }

    /// Commutator `[A, B] = AB - BA`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        OperatorBracket::commutator(a.clone(), b.clone()).into_operator()
    }

    /// Anticommutator `{A, B} = AB + BA`.
    pub fn anticommutator(a: &Self, b: &Self) -> Self {
        OperatorBracket::anticommutator(a.clone(), b.clone()).into_operator()
    }
}

impl std::fmt::Debug for LinearOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LinearOperator")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

/// A bracket expression over two operators, evaluated compositionally.
#[derive(Clone, Debug)]
pub struct OperatorBracket {
    pub kind: BracketKind,
    pub left: LinearOperator,
    pub right: LinearOperator,
}

impl OperatorBracket {
    pub fn commutator(left: LinearOperator, right: LinearOperator) -> Self {
        OperatorBracket {
            kind: BracketKind::Commutator,
            left,
            right,
        }
    }

    pub fn anticommutator(left: LinearOperator, right: LinearOperator) -> Self {
        OperatorBracket {
            kind: BracketKind::Anticommutator,
            left,
            right,
        }
    }

    pub fn apply(&self, f: &CliffordPolynomial) -> CliffordPolynomial {
        let forward = self.left.apply(&self.right.apply(f));
        let backward = self.right.apply(&self.left.apply(f));
        match self.kind {
            BracketKind::Commutator => forward.sub(&backward),
            BracketKind::Anticommutator => forward.add(&backward),
        }
        .expect("bracket operands preserve the dimension")
    }

    pub fn into_operator(self) -> LinearOperator {
        let name = match self.kind {
            BracketKind::Commutator => format!("[{}, {}]", self.left.name, self.right.name),
            BracketKind::Anticommutator => format!("{{{}, {}}}", self.left.name, self.right.name),
        };
        LinearOperator::new(name, move |f| self.apply(f))
    }
}
