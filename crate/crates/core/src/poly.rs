//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored in ascending degree with no trailing zeros, so the
//! zero polynomial is the empty vector. Every operation takes the coefficient
//! field explicitly.

use crate::error::ArithError;
use crate::field::{parenthesize, Field};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> UniPoly<E> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    /// Builds a polynomial from ascending coefficients, trimming zeros.
    pub fn new<F: Field<Elem = E>>(mut coeffs: Vec<E>, k: &F) -> Self {
        while coeffs.last().is_some_and(|c| k.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant<F: Field<Elem = E>>(c: E, k: &F) -> Self {
        Self::new(vec![c], k)
    }

    pub fn one<F: Field<Elem = E>>(k: &F) -> Self {
        UniPoly {
            coeffs: vec![k.one()],
        }
    }

    /// The polynomial `x`.
    pub fn x<F: Field<Elem = E>>(k: &F) -> Self {
        UniPoly {
            coeffs: vec![k.zero(), k.one()],
        }
    }

    /// `c * x^n`.
    pub fn monomial<F: Field<Elem = E>>(c: E, n: usize, k: &F) -> Self {
        if k.is_zero(&c) {
            return Self::zero();
        }
        let mut coeffs = vec![k.zero(); n + 1];
        coeffs[n] = c;
        UniPoly { coeffs }
    }

    /// `x - r`.
    pub fn linear_root<F: Field<Elem = E>>(r: &E, k: &F) -> Self {
        UniPoly {
            coeffs: vec![k.neg(r), k.one()],
        }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff<F: Field<Elem = E>>(&self, i: usize, k: &F) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as degree 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => k.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(coeffs, k)
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => k.sub(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => k.neg(b),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(coeffs, k)
    }

    pub fn neg<F: Field<Elem = E>>(&self, k: &F) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| k.neg(c)).collect(),
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if k.is_zero(b) {
                    continue;
                }
                out[i + j] = k.add(&out[i + j], &k.mul(a, b));
            }
        }
        Self::new(out, k)
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, k: &F) -> Self {
        if k.is_zero(c) {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| k.mul(a, c)).collect(), k)
    }

    /// Multiplies by `x^n`.
    pub fn shift<F: Field<Elem = E>>(&self, n: usize, k: &F) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![k.zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn pow<F: Field<Elem = E>>(&self, e: usize, k: &F) -> Self {
        let mut acc = Self::one(k);
        for _ in 0..e {
            acc = acc.mul(self, k);
        }
        acc
    }

    pub fn monic<F: Field<Elem = E>>(&self, k: &F) -> Result<Self, ArithError> {
        match self.lc() {
            None => Ok(Self::zero()),
            Some(lc) if k.is_one(lc) => Ok(self.clone()),
            Some(lc) => {
                let inv = k.inv(lc)?;
                Ok(self.scale(&inv, k))
            }
        }
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, k: &F) -> bool {
        self.lc().is_some_and(|c| k.is_one(c))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem<F: Field<Elem = E>>(
        &self,
        divisor: &Self,
        k: &F,
    ) -> Result<(Self, Self), ArithError> {
        let dd = divisor.degree().ok_or(ArithError::DivisionByZero)?;
        let Some(sd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if sd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lc_inv = k.inv(divisor.lc().unwrap())?;
        let monic_divisor = k.is_one(&lc_inv);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![k.zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let top = &rem[i + dd];
            if k.is_zero(top) {
                continue;
            }
            let q = if monic_divisor {
                top.clone()
            } else {
                k.mul(top, &lc_inv)
            };
            for (j, b) in divisor.coeffs.iter().enumerate().take(dd) {
                if !k.is_zero(b) {
                    rem[i + j] = k.sub(&rem[i + j], &k.mul(&q, b));
                }
            }
            rem[i + dd] = k.zero();
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot, k), Self::new(rem, k)))
    }

    pub fn rem<F: Field<Elem = E>>(&self, divisor: &Self, k: &F) -> Result<Self, ArithError> {
        Ok(self.div_rem(divisor, k)?.1)
    }

    /// Quotient of a division that is known to be exact.
    pub fn exact_div<F: Field<Elem = E>>(&self, divisor: &Self, k: &F) -> Result<Self, ArithError> {
        let (q, r) = self.div_rem(divisor, k)?;
        if !r.is_zero() {
            return Err(ArithError::NotInvertible(
                "inexact polynomial division".into(),
            ));
        }
        Ok(q)
    }

    /// Horner evaluation.
    pub fn eval<F: Field<Elem = E>>(&self, x: &E, k: &F) -> E {
        let mut acc = k.zero();
        for c in self.coeffs.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative<F: Field<Elem = E>>(&self, k: &F) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(c, &k.from_i64(i as i64)))
            .collect();
        Self::new(coeffs, k)
    }

    /// `self(g(x))`.
    pub fn compose<F: Field<Elem = E>>(&self, g: &Self, k: &F) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g, k).add(&Self::constant(c.clone(), k), k);
        }
        acc
    }

    /// Maps coefficients into another field through `f`.
    pub fn map<G: Field, M: FnMut(&E) -> G::Elem>(&self, target: &G, f: M) -> UniPoly<G::Elem> {
        UniPoly::new(self.coeffs.iter().map(f).collect(), target)
    }

    /// Monic greatest common divisor.
    pub fn gcd<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Result<Self, ArithError> {
        let (mut a, mut b) = (self.clone(), other.clone());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            // Keep the remainder sequence monic to slow coefficient growth.
            let r = a.rem(&b, k)?.monic(k)?;
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// Returns `(d, s, t)` with `d = s*self + t*other` and `d` the monic gcd.
    pub fn extended_gcd<F: Field<Elem = E>>(
        &self,
        other: &Self,
        k: &F,
    ) -> Result<(Self, Self, Self), ArithError> {
        if self.is_zero() && other.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(k), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1, k)?;
            let s = s0.sub(&q.mul(&s1, k), k);
            let t = t0.sub(&q.mul(&t1, k), k);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = k.inv(r0.lc().unwrap())?;
        Ok((r0.scale(&inv, k), s0.scale(&inv, k), t0.scale(&inv, k)))
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Result<E, ArithError> {
        let (Some(_), Some(_)) = (self.degree(), other.degree()) else {
            return Ok(k.zero());
        };
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = k.one();
        loop {
            let da = a.degree().unwrap();
            let db = match b.degree() {
                None => return Ok(k.zero()),
                Some(d) => d,
            };
            if db == 0 {
                // Res(a, c) = c^deg a
                return Ok(k.mul(&acc, &k.pow(b.lc().unwrap(), da as u64)));
            }
            if da == 0 {
                return Ok(k.mul(&acc, &k.pow(a.lc().unwrap(), db as u64)));
            }
            // Res(a, b) = (-1)^{da db} lc(b)^{da - dr} Res(b, r)
            let r = a.rem(&b, k)?;
            let Some(dr) = r.degree() else {
                return Ok(k.zero());
            };
            if (da * db) % 2 == 1 {
                acc = k.neg(&acc);
            }
            acc = k.mul(&acc, &k.pow(b.lc().unwrap(), (da - dr) as u64));
            a = b;
            b = r;
        }
    }

    /// Squarefree part `f / gcd(f, f')`, made monic.
    pub fn squarefree_part<F: Field<Elem = E>>(&self, k: &F) -> Result<Self, ArithError> {
        let g = self.gcd(&self.derivative(k), k)?;
        self.exact_div(&g, k)?.monic(k)
    }

    /// Yun's squarefree decomposition of a monic polynomial: pairs
    /// `(a_i, i)` with `self = prod a_i^i`, each `a_i` monic squarefree.
    pub fn squarefree_decomposition<F: Field<Elem = E>>(
        &self,
        k: &F,
    ) -> Result<Vec<(Self, usize)>, ArithError> {
        let f = self.monic(k)?;
        let mut out = Vec::new();
        if f.deg0() == 0 {
            return Ok(out);
        }
        let df = f.derivative(k);
        let a0 = f.gcd(&df, k)?;
        let mut b = f.exact_div(&a0, k)?;
        let mut c = df.exact_div(&a0, k)?;
        let mut d = c.sub(&b.derivative(k), k);
        let mut i = 1;
        loop {
            let a = b.gcd(&d, k)?;
            if a.deg0() > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a, k)?;
            if b.deg0() == 0 {
                break;
            }
            c = d.exact_div(&a, k)?;
            d = c.sub(&b.derivative(k), k);
            i += 1;
        }
        Ok(out)
    }

    /// Interpolating polynomial through `(xs[i], ys[i])`, Newton form.
    pub fn interpolate<F: Field<Elem = E>>(xs: &[E], ys: &[E], k: &F) -> Result<Self, ArithError> {
        let n = xs.len();
        let mut dd: Vec<E> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = k.sub(&dd[i], &dd[i - 1]);
                let den = k.sub(&xs[i], &xs[i - j]);
                dd[i] = k.div(&num, &den)?;
            }
        }
        let mut acc = Self::zero();
        for i in (0..n).rev() {
            acc = acc
                .mul(&Self::linear_root(&xs[i], k), k)
                .add(&Self::constant(dd[i].clone(), k), k);
        }
        Ok(acc)
    }

    pub fn format<F: Field<Elem = E>>(&self, k: &F, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let cs = k.format(c);
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else {
                format!("{}*{mono}", parenthesize(cs))
            };
            terms.push(term);
        }
        join_terms(&terms)
    }
}

pub(crate) fn join_terms(terms: &[String]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}
