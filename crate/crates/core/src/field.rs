//! Coefficient fields.
//!
//! Elements do not carry their field; every operation goes through a field
//! value. This keeps coordinate vectors of tower elements free of per-element
//! pointers.

use std::fmt::Debug;

use crate::error::ArithError;
use crate::rational::{format_rational, Rational};

/// `from_*` constructors take `&self` because elements carry no field.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ArithError>;

    /// Image of a rational number under the canonical embedding.
    fn from_rational(&self, q: &Rational) -> Self::Elem;

    /// `Some(q)` when the element lies in the prime field.
    fn as_rational(&self, a: &Self::Elem) -> Option<Rational>;

    /// Absolute degree over the rationals.
    fn degree_over_q(&self) -> usize;

    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ArithError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_rational(&Rational::from(v))
    }

    fn scale_rational(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        self.mul(a, &self.from_rational(q))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::new()
    }
    fn one(&self) -> Rational {
        Rational::from(1)
    }
    fn is_zero(&self, a: &Rational) -> bool {
        *a.numer() == 0
    }
    fn is_one(&self, a: &Rational) -> bool {
        *a == 1
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a + b)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a - b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        Rational::from(-a)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a * b)
    }
    fn inv(&self, a: &Rational) -> Result<Rational, ArithError> {
        if self.is_zero(a) {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(Rational::from(a.recip_ref()))
        }
    }
    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }
    fn as_rational(&self, a: &Rational) -> Option<Rational> {
        Some(a.clone())
    }
    fn degree_over_q(&self) -> usize {
        1
    }
    fn format(&self, a: &Rational) -> String {
        format_rational(a)
    }
}

/// Wraps a formatted element in parentheses when it is a sum.
pub(crate) fn parenthesize(s: String) -> String {
    let body = s.strip_prefix('-').unwrap_or(&s);
    if body.contains(" + ") || body.contains(" - ") {
        format!("({s})")
    } else {
        s
    }
}
