//! Desk-scale witness oracle: substitute `t = Σ α^i t_i` into `ψ`, split each
//! component over the power basis, and test whether a candidate `φ` lies on
//! the resulting variety.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::numfield::{AlgElem, AlgField};
use crate::poly::UniPoly;
use crate::ratfunc::Parametrization;
use crate::rational::{common_denominator, Rational};

/// Largest extension degree accepted by [`weil_substitution`].
pub const MAX_DEGREE_N: usize = 3;
/// Largest parametrization degree accepted by [`weil_substitution`].
pub const MAX_DEGREE_D: usize = 6;

/// Sparse polynomial in a fixed number of variables; no zero coefficients
/// are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<E> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, E>,
}

impl<E: Clone + PartialEq> MPoly<E> {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<F: Field<Elem = E>>(c: E, nvars: usize, k: &F) -> Self {
        let mut p = Self::zero(nvars);
        if !k.is_zero(&c) {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// `c · x_i`.
    pub fn var<F: Field<Elem = E>>(i: usize, c: E, nvars: usize, k: &F) -> Self {
        let mut p = Self::zero(nvars);
        if !k.is_zero(&c) {
            let mut e = vec![0; nvars];
            e[i] = 1;
            p.terms.insert(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &E)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0)
    }

    fn insert_add<F: Field<Elem = E>>(&mut self, e: Vec<u32>, c: E, k: &F) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !k.is_zero(&c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = k.add(o.get(), &c);
                if k.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone(), k);
        }
        out
    }

    pub fn neg<F: Field<Elem = E>>(&self, k: &F) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), k.neg(c)))
                .collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        self.add(&other.neg(k), k)
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, k: &F) -> Self {
        if k.is_zero(c) {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), k.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_add(e, k.mul(c1, c2), k);
            }
        }
        out
    }

    pub fn map<G: Field, M: FnMut(&E) -> G::Elem>(&self, target: &G, mut f: M) -> MPoly<G::Elem> {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), f(c)))
                .filter(|(_, c)| !target.is_zero(c))
                .collect(),
        }
    }

    /// Value at `point` in a field `l` that receives the coefficients through `embed`.
    pub fn eval_in<L: Field, M: Fn(&E) -> L::Elem>(
        &self,
        point: &[L::Elem],
        l: &L,
        embed: M,
    ) -> L::Elem {
        let maxdeg = self
            .terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        let powers: Vec<Vec<L::Elem>> = point
            .iter()
            .map(|x| {
                let mut v = vec![l.one()];
                for i in 1..=maxdeg {
                    v.push(l.mul(&v[i - 1], x));
                }
                v
            })
            .collect();
        self.terms.iter().fold(l.zero(), |acc, (e, c)| {
            let mono = e
                .iter()
                .enumerate()
                .fold(embed(c), |m, (i, &d)| l.mul(&m, &powers[i][d as usize]));
            l.add(&acc, &mono)
        })
    }
}

/// `F_ij` and `D` for a parametrization over `ℚ(α)`.
#[derive(Clone, Debug)]
pub struct WeilSystem {
    pub n: usize,
    /// `f_polys[j][i - 1]` is the `α^i` coordinate numerator of component
    /// `j`, for `i = 1..n-1`, over that component's own norm denominator.
    pub f_polys: Vec<Vec<MPoly<Rational>>>,
    /// Norms of the component denominators.
    pub denominators: Vec<MPoly<Rational>>,
    /// Product of the component denominators.
    pub d: MPoly<Rational>,
}

type Coords = Vec<MPoly<Rational>>;

/// Multiplication by `α` on coordinate vectors with polynomial entries.
fn times_alpha(k: &AlgField, v: &Coords) -> Coords {
    let n = v.len();
    let m = k.minpoly().coeffs();
    let top = v[n - 1].clone();
    (0..n)
        .map(|i| {
            let lower = if i == 0 {
                MPoly::zero(top.nvars)
            } else {
                v[i - 1].clone()
            };
            lower.sub(&top.scale(&m[i], &Rationals), &Rationals)
        })
        .collect()
}

fn coords_of(k: &AlgField, p: &MPoly<AlgElem>) -> Coords {
    (0..k.degree())
        .map(|i| p.map(&Rationals, |c| c.coords()[i].clone()))
        .collect()
}

/// Product in `ℚ[t_0..](α)` of two coordinate vectors.
fn times(k: &AlgField, a: &Coords, b: &Coords) -> Coords {
    let nv = a[0].nvars;
    let mut acc: Coords = vec![MPoly::zero(nv); a.len()];
    let mut shifted = a.clone();
    for bc in b {
        for (x, s) in acc.iter_mut().zip(&shifted) {
            *x = x.add(&s.mul(bc, &Rationals), &Rationals);
        }
        shifted = times_alpha(k, &shifted);
    }
    acc
}

fn det(m: &[Vec<MPoly<Rational>>]) -> MPoly<Rational> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let nv = m[0][0].nvars;
    let mut acc = MPoly::zero(nv);
    for c in 0..n {
        let term = m[0][c].mul(&det(&minor(m, 0, c)), &Rationals);
        acc = if c % 2 == 0 {
            acc.add(&term, &Rationals)
        } else {
            acc.sub(&term, &Rationals)
        };
    }
    acc
}

fn minor(m: &[Vec<MPoly<Rational>>], row: usize, col: usize) -> Vec<Vec<MPoly<Rational>>> {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|&(j, _)| j != col)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Norm `det A` and cofactor `e'` with `e · e' = det A`, where `A` is the
/// matrix of multiplication by `e`.
fn norm_and_cofactor(k: &AlgField, e: &Coords) -> (MPoly<Rational>, Coords) {
    let n = e.len();
    let mut cols = vec![e.clone()];
    for c in 1..n {
        cols.push(times_alpha(k, &cols[c - 1]));
    }
    let a: Vec<Vec<MPoly<Rational>>> = (0..n)
        .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
        .collect();
    let d = det(&a);
    if n == 1 {
        return (
            d,
            vec![MPoly::constant(Rationals.one(), e[0].nvars, &Rationals)],
        );
    }
    // first column of the adjugate: (-1)^r det(minor(A, 0, r))
    let cof = (0..n)
        .map(|r| {
            let m = det(&minor(&a, 0, r));
            if r % 2 == 0 {
                m
            } else {
                m.neg(&Rationals)
            }
        })
        .collect();
    (d, cof)
}

fn substitute(k: &AlgField, p: &UniPoly<AlgElem>, t: &MPoly<AlgElem>) -> MPoly<AlgElem> {
    let nv = t.nvars;
    p.coeffs().iter().rev().fold(MPoly::zero(nv), |acc, c| {
        acc.mul(t, k).add(&MPoly::constant(c.clone(), nv, k), k)
    })
}

/// Substitutes `t = Σ α^i t_i` into every component and rationalizes its
/// denominator by the norm.
pub fn weil_substitution(psi: &Parametrization<AlgElem>, k: &AlgField) -> Result<WeilSystem> {
    let n = k.degree();
    if n > MAX_DEGREE_N || psi.degree() > MAX_DEGREE_D {
        return Err(Error::Budget(format!(
            "witness oracle limited to n <= {MAX_DEGREE_N} and d <= {MAX_DEGREE_D}, got n = {n}, d = {}",
            psi.degree()
        )));
    }
    let alpha = k.generator();
    let mut t = MPoly::zero(n);
    let mut power = k.one();
    for i in 0..n {
        t = t.add(&MPoly::var(i, power.clone(), n, k), k);
        power = k.mul(&power, &alpha);
    }
    let mut f_polys = Vec::new();
    let mut denominators = Vec::new();
    for c in psi.components() {
        let num = coords_of(k, &substitute(k, c.num(), &t));
        let den = coords_of(k, &substitute(k, c.den(), &t));
        let (norm, cof) = norm_and_cofactor(k, &den);
        let split = times(k, &num, &cof);
        f_polys.push(split[1..].to_vec());
        denominators.push(norm);
    }
    let d = denominators
        .iter()
        .fold(MPoly::constant(Rationals.one(), n, &Rationals), |acc, x| {
            acc.mul(x, &Rationals)
        });
    Ok(WeilSystem {
        n,
        f_polys,
        denominators,
        d,
    })
}

/// Evaluates `p(φ(t))` at enough rational `t` to decide whether it vanishes
/// identically; `true` means identically zero.
///
/// With `φ_j = P_j / Q`, the value is `p_h(P(t), Q(t)) / Q(t)^e` for the
/// homogenization `p_h` of total degree `e`. `p_h(P(t), Q(t))` is a polynomial
/// of degree at most `e · max(deg P_j, deg Q)`, and it is evaluated after
/// scaling `P(t), Q(t)` to integral coordinates, which avoids inverting `Q(t)`.
fn vanishes_on(p: &MPoly<Rational>, phi: &Parametrization<AlgElem>, k: &AlgField) -> Result<bool> {
    let mut q = UniPoly::one(k);
    for c in phi.components() {
        let g = q.gcd(c.den(), k)?;
        q = q.mul(&c.den().exact_div(&g, k)?, k);
    }
    let nums: Vec<UniPoly<AlgElem>> = phi
        .components()
        .iter()
        .map(|c| Ok(c.num().mul(&q.exact_div(c.den(), k)?, k)))
        .collect::<Result<_>>()?;
    let top = nums
        .iter()
        .map(UniPoly::deg0)
        .max()
        .unwrap_or(0)
        .max(q.deg0());
    let e = p.total_degree();
    let scale = Rational::from(common_denominator(p.terms().map(|(_, c)| c)));
    let needed = e * top + 1;
    let mut seen = 0;
    let mut t = 0i64;
    while seen < needed {
        let tq = k.from_i64(t);
        t += 1;
        let qt = q.eval(&tq, k);
        if k.is_zero(&qt) {
            continue;
        }
        seen += 1;
        let mut values: Vec<AlgElem> = nums.iter().map(|n| n.eval(&tq, k)).collect();
        values.push(qt);
        let den = Rational::from(common_denominator(values.iter().flat_map(|v| v.coords())));
        let values: Vec<AlgElem> = values.iter().map(|v| k.scale_rational(v, &den)).collect();
        if !k.is_zero(&eval_homogeneous(p, &values, e, &scale, k)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `scale · p_h(x_0, …, x_{n-1}, x_n)` for the degree-`e` homogenization `p_h`.
fn eval_homogeneous(
    p: &MPoly<Rational>,
    xs: &[AlgElem],
    e: usize,
    scale: &Rational,
    k: &AlgField,
) -> AlgElem {
    let powers: Vec<Vec<AlgElem>> = xs
        .iter()
        .map(|x| {
            let mut v = vec![k.one()];
            for i in 1..=e {
                v.push(k.mul(&v[i - 1], x));
            }
            v
        })
        .collect();
    let n = xs.len() - 1;
    p.terms().fold(k.zero(), |acc, (exps, c)| {
        let deg: usize = exps.iter().map(|&d| d as usize).sum();
        let mono = exps
            .iter()
            .enumerate()
            .fold(powers[n][e - deg].clone(), |m, (i, &d)| {
                k.mul(&m, &powers[i][d as usize])
            });
        k.add(&acc, &k.scale_rational(&mono, &Rational::from(c * scale)))
    })
}

/// `φ` lies on the witness variety: every `F_ij(φ)` vanishes and no
/// denominator vanishes identically along `φ`.
pub fn check_on_witness(
    system: &WeilSystem,
    phi: &Parametrization<AlgElem>,
    k: &AlgField,
) -> Result<bool> {
    if phi.ambient_dim() != system.n {
        return Err(Error::Input(format!(
            "φ has {} components, expected {}",
            phi.ambient_dim(),
            system.n
        )));
    }
    for f in system.f_polys.iter().flatten() {
        if !vanishes_on(f, phi, k)? {
            return Ok(false);
        }
    }
    Ok(!denominator_vanishes(system, phi, k)?)
}

/// `D(φ(t)) ≡ 0`.
pub fn denominator_vanishes(
    system: &WeilSystem,
    phi: &Parametrization<AlgElem>,
    k: &AlgField,
) -> Result<bool> {
    for d in &system.denominators {
        if vanishes_on(d, phi, k)? {
            return Ok(true);
        }
    }
    Ok(false)
}
