//! Simple algebraic extensions `B[γ]/(m(γ))` and their towers.
//!
//! An element is its coordinate vector over the power basis `1, γ, …, γ^{n-1}`
//! with coordinates in the base field. Towers are built by nesting:
//! `NumberField<NumberField<Rationals>>` is `ℚ(α)(β)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{ArithError, Error, Result};
use crate::field::{parenthesize, Field, Rationals};
use crate::poly::{join_terms, UniPoly};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NFElement<E> {
    coords: Vec<E>,
}

impl<E> NFElement<E> {
    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<E> {
        self.coords
    }
}

struct Inner<B: Field> {
    base: B,
    name: String,
    minpoly: UniPoly<B::Elem>,
    degree: usize,
    /// Indices of nonzero low coefficients of the minimal polynomial.
    support: Vec<usize>,
    /// Power sums of the conjugates of the generator, `s_0 .. s_{n-1}`.
    power_sums: Vec<B::Elem>,
}

pub struct NumberField<B: Field> {
    inner: Arc<Inner<B>>,
}

impl<B: Field> Clone for NumberField<B> {
    fn clone(&self) -> Self {
        NumberField {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<B: Field> fmt::Debug for NumberField<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "NumberField({} : {})",
            self.inner.name,
            self.inner
                .minpoly
                .format(&self.inner.base, &self.inner.name)
        )
    }
}

/// `ℚ(α)`.
pub type AlgField = NumberField<Rationals>;
pub type AlgElem = NFElement<Rational>;
/// `ℚ(α)(β)`.
pub type RelField = NumberField<AlgField>;
pub type RelElem = NFElement<AlgElem>;

impl<B: Field> NumberField<B> {
    /// Adjoins a root of `minpoly`, which must be monic of degree ≥ 1.
    /// Irreducibility is the caller's responsibility.
    pub fn new(base: B, name: impl Into<String>, minpoly: UniPoly<B::Elem>) -> Result<Self> {
        let degree = minpoly
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::Input("minimal polynomial must have degree >= 1".into()))?;
        if !minpoly.is_monic(&base) {
            return Err(Error::Input("minimal polynomial must be monic".into()));
        }
        let support = (0..degree)
            .filter(|&i| !base.is_zero(&minpoly.coeffs()[i]))
            .collect();
        let power_sums = newton_sums(&minpoly, degree - 1, &base);
        Ok(NumberField {
            inner: Arc::new(Inner {
                base,
                name: name.into(),
                minpoly,
                degree,
                support,
                power_sums,
            }),
        })
    }

    pub fn base(&self) -> &B {
        &self.inner.base
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn minpoly(&self) -> &UniPoly<B::Elem> {
        &self.inner.minpoly
    }

    /// Degree over the immediate base.
    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn generator(&self) -> NFElement<B::Elem> {
        if self.inner.degree == 1 {
            // γ is the root of x - c
            return self.embed(&self.base().neg(&self.inner.minpoly.coeffs()[0]));
        }
        let mut coords = vec![self.base().zero(); self.inner.degree];
        coords[1] = self.base().one();
        NFElement { coords }
    }

    /// Canonical inclusion of the base field.
    pub fn embed(&self, b: &B::Elem) -> NFElement<B::Elem> {
        let mut coords = vec![self.base().zero(); self.inner.degree];
        coords[0] = b.clone();
        NFElement { coords }
    }

    pub fn element(&self, coords: Vec<B::Elem>) -> Result<NFElement<B::Elem>> {
        if coords.len() != self.inner.degree {
            return Err(Error::Input(format!(
                "coordinate vector has length {}, field degree is {}",
                coords.len(),
                self.inner.degree
            )));
        }
        Ok(NFElement { coords })
    }

    /// Residue of a base polynomial evaluated at the generator.
    pub fn from_poly(&self, p: &UniPoly<B::Elem>) -> NFElement<B::Elem> {
        let mut c = p.coeffs().to_vec();
        self.reduce_in_place(&mut c);
        NFElement { coords: c }
    }

    pub fn to_poly(&self, a: &NFElement<B::Elem>) -> UniPoly<B::Elem> {
        UniPoly::new(a.coords.clone(), self.base())
    }

    /// The base-field value when `a` lies in the base.
    pub fn as_base(&self, a: &NFElement<B::Elem>) -> Option<B::Elem> {
        let k = self.base();
        a.coords[1..]
            .iter()
            .all(|c| k.is_zero(c))
            .then(|| a.coords[0].clone())
    }

    fn reduce_in_place(&self, c: &mut Vec<B::Elem>) {
        let n = self.inner.degree;
        let k = self.base();
        let m = self.inner.minpoly.coeffs();
        while c.len() > n {
            let top = c.pop().unwrap();
            if k.is_zero(&top) {
                continue;
            }
            let shift = c.len() - n;
            for &j in &self.inner.support {
                c[shift + j] = k.sub(&c[shift + j], &k.mul(&top, &m[j]));
            }
        }
        c.resize(n, k.zero());
    }

    /// Trace to the base field, from the power sums of the minimal polynomial.
    pub fn trace(&self, a: &NFElement<B::Elem>) -> B::Elem {
        let k = self.base();
        a.coords
            .iter()
            .zip(&self.inner.power_sums)
            .filter(|(c, _)| !k.is_zero(c))
            .fold(k.zero(), |acc, (c, s)| k.add(&acc, &k.mul(c, s)))
    }

    /// Norm to the base field, `Res(m, a)` for the monic minimal polynomial `m`.
    pub fn norm(&self, a: &NFElement<B::Elem>) -> Result<B::Elem, ArithError> {
        let p = self.to_poly(a);
        if p.is_zero() {
            return Ok(self.base().zero());
        }
        self.inner.minpoly.resultant(&p, self.base())
    }

    /// Characteristic polynomial of multiplication by `a` over the base,
    /// recovered from the traces of its powers by Newton's identities.
    pub fn charpoly(&self, a: &NFElement<B::Elem>) -> UniPoly<B::Elem> {
        let k = self.base();
        let n = self.inner.degree;
        let mut traces = Vec::with_capacity(n);
        let mut power = self.one();
        for _ in 0..n {
            power = self.mul(&power, a);
            traces.push(self.trace(&power));
        }
        poly_from_power_sums(n, &traces, k)
    }

    /// Matrix of multiplication by `a`: column `j` holds the coordinates of `a·γ^j`.
    pub fn multiplication_matrix(&self, a: &NFElement<B::Elem>) -> Vec<Vec<B::Elem>> {
        let n = self.inner.degree;
        let gamma = self.generator();
        let mut cols = Vec::with_capacity(n);
        let mut col = a.clone();
        for _ in 0..n {
            cols.push(col.coords.clone());
            col = self.mul(&col, &gamma);
        }
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect()
    }
}

impl<B: Field> Field for NumberField<B> {
    type Elem = NFElement<B::Elem>;

    fn zero(&self) -> Self::Elem {
        NFElement {
            coords: vec![self.base().zero(); self.inner.degree],
        }
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.base().one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coords.iter().all(|c| self.base().is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = self.base();
        NFElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| k.add(x, y))
                .collect(),
        }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = self.base();
        NFElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| k.sub(x, y))
                .collect(),
        }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        let k = self.base();
        NFElement {
            coords: a.coords.iter().map(|x| k.neg(x)).collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = self.base();
        let n = self.inner.degree;
        let mut prod = vec![k.zero(); 2 * n - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if k.is_zero(y) {
                    continue;
                }
                prod[i + j] = k.add(&prod[i + j], &k.mul(x, y));
            }
        }
        self.reduce_in_place(&mut prod);
        NFElement { coords: prod }
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ArithError> {
        if self.is_zero(a) {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(b) = self.as_base(a) {
            return Ok(self.embed(&self.base().inv(&b)?));
        }
        let k = self.base();
        let (d, s, _) = self.to_poly(a).extended_gcd(&self.inner.minpoly, k)?;
        if d.deg0() != 0 {
            return Err(ArithError::NotInvertible(format!(
                "minimal polynomial of {} is reducible",
                self.inner.name
            )));
        }
        Ok(self.from_poly(&s))
    }

    fn from_rational(&self, q: &Rational) -> Self::Elem {
        self.embed(&self.base().from_rational(q))
    }

    fn as_rational(&self, a: &Self::Elem) -> Option<Rational> {
        self.as_base(a).and_then(|b| self.base().as_rational(&b))
    }

    fn degree_over_q(&self) -> usize {
        self.inner.degree * self.base().degree_over_q()
    }

    fn format(&self, a: &Self::Elem) -> String {
        let k = self.base();
        let mut terms = Vec::new();
        for (i, c) in a.coords.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let cs = k.format(c);
            let mono = match i {
                0 => String::new(),
                1 => self.inner.name.clone(),
                _ => format!("{}^{i}", self.inner.name),
            };
            terms.push(if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else {
                format!("{}*{mono}", parenthesize(cs))
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            join_terms(&terms)
        }
    }
}

/// Power sums `s_0 ..= s_count` of the roots of a monic polynomial, by
/// Newton's identities.
pub fn newton_sums<F: Field>(p: &UniPoly<F::Elem>, count: usize, k: &F) -> Vec<F::Elem> {
    let n = p.deg0();
    // p = x^n + c[n-1] x^{n-1} + ... + c[0]
    let c = p.coeffs();
    let mut s = Vec::with_capacity(count + 1);
    s.push(k.from_i64(n as i64));
    for j in 1..=count {
        let mut acc = k.zero();
        for i in 1..=j.min(n) {
            let ci = &c[n - i];
            if k.is_zero(ci) {
                continue;
            }
            let term = if i == j {
                k.mul(ci, &k.from_i64(j as i64))
            } else {
                k.mul(ci, &s[j - i])
            };
            acc = k.add(&acc, &term);
        }
        s.push(k.neg(&acc));
    }
    s
}

/// Monic polynomial of degree `n` whose roots have power sums `p_1..p_n`.
pub fn poly_from_power_sums<F: Field>(n: usize, sums: &[F::Elem], k: &F) -> UniPoly<F::Elem> {
    // e_j = (1/j) sum_{i=1}^{j} (-1)^{i-1} e_{j-i} p_i
    let mut e = vec![k.one()];
    for j in 1..=n {
        let mut acc = k.zero();
        for i in 1..=j {
            let term = k.mul(&e[j - i], &sums[i - 1]);
            acc = if i % 2 == 1 {
                k.add(&acc, &term)
            } else {
                k.sub(&acc, &term)
            };
        }
        e.push(
            k.div(&acc, &k.from_i64(j as i64))
                .expect("nonzero integer in characteristic zero"),
        );
    }
    // x^n - e1 x^{n-1} + e2 x^{n-2} - ...
    let coeffs = (0..=n)
        .map(|deg| {
            let j = n - deg;
            if j.is_multiple_of(2) {
                e[j].clone()
            } else {
                k.neg(&e[j])
            }
        })
        .collect();
    UniPoly::new(coeffs, k)
}

/// A class of conjugates of the generator over `K(α)`: the roots of one
/// irreducible factor `f_i` of `M(x)/(x - α)`, together with the relative
/// field `K(α)(α_i)` in which a representative root lives.
#[derive(Clone, Debug)]
pub struct ConjugacyClass<K: Field> {
    factor: UniPoly<NFElement<K::Elem>>,
    field: NumberField<NumberField<K>>,
}

impl<K: Field> ConjugacyClass<K> {
    /// `factor` must be monic and irreducible over `ext`.
    pub fn new(
        ext: &NumberField<K>,
        factor: UniPoly<NFElement<K::Elem>>,
        root_name: &str,
    ) -> Result<Self> {
        let field = NumberField::new(ext.clone(), root_name, factor.clone())?;
        Ok(ConjugacyClass { factor, field })
    }

    /// The trivial class `{α}` given by the factor `x - α`.
    pub fn identity(ext: &NumberField<K>) -> Result<Self> {
        let factor = UniPoly::linear_root(&ext.generator(), ext);
        Self::new(ext, factor, ext.name())
    }

    pub fn factor(&self) -> &UniPoly<NFElement<K::Elem>> {
        &self.factor
    }

    pub fn relative_field(&self) -> &NumberField<NumberField<K>> {
        &self.field
    }

    pub fn ext(&self) -> &NumberField<K> {
        self.field.base()
    }

    pub fn class_size(&self) -> usize {
        self.field.degree()
    }

    /// The representative root `α_i` inside the relative field.
    pub fn root(&self) -> NFElement<NFElement<K::Elem>> {
        self.field.generator()
    }

    /// Inclusion `K(α) → K(α)(α_i)`.
    pub fn lift(&self, x: &NFElement<K::Elem>) -> NFElement<NFElement<K::Elem>> {
        self.field.embed(x)
    }

    pub fn is_identity(&self) -> bool {
        let ext = self.ext();
        self.factor == UniPoly::linear_root(&ext.generator(), ext)
    }
}

/// Image of `x ∈ K(α)` under the `K`-embedding sending `α` to the class
/// representative, expressed in `K(α)(α_i)`.
pub fn nf_conjugate<K: Field>(
    x: &NFElement<K::Elem>,
    class: &ConjugacyClass<K>,
) -> NFElement<NFElement<K::Elem>> {
    let rel = class.relative_field();
    let ext = class.ext();
    let root = class.root();
    // Horner in the relative field with coefficients from K
    let mut acc = rel.zero();
    for c in x.coords().iter().rev() {
        acc = rel.add(&rel.mul(&acc, &root), &rel.embed(&ext.embed(c)));
    }
    acc
}

/// Conjugates every coefficient of a polynomial over `K(α)`.
pub fn conjugate_poly<K: Field>(
    p: &UniPoly<NFElement<K::Elem>>,
    class: &ConjugacyClass<K>,
) -> UniPoly<NFElement<NFElement<K::Elem>>> {
    p.map(class.relative_field(), |c| nf_conjugate(c, class))
}
