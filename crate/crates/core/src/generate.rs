//! Seeded instance generators: curves defined over `ℚ` in disguise, twisted
//! curves that are not, and the bound-sharpness construction.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factor::FactorField;
use crate::field::{Field, Rationals};
use crate::hypercircle::{m_alpha_x, standard_parametrization};
use crate::linalg;
use crate::numfield::{AlgElem, AlgField, NumberField};
use crate::poly::UniPoly;
use crate::ratfunc::{Moebius, Parametrization, RatFunc};
use crate::rational::int;

/// Redraws allowed before a generator gives up.
pub const MAX_RETRIES: usize = 200;

/// Coefficients of random polynomials lie in `[-COEFF_BOUND, COEFF_BOUND]`.
pub const COEFF_BOUND: i64 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Defined,
    Twisted,
    Adversarial,
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "defined" => Ok(Kind::Defined),
            "twisted" => Ok(Kind::Twisted),
            "adversarial" => Ok(Kind::Adversarial),
            _ => Err(Error::Input(format!("unknown instance kind {s:?}"))),
        }
    }
}

/// `a_unknown = Σ coeff · a_free + constant` among the numerator
/// coefficients `a_0, …, a_{d-1}` of the adversarial construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub unknown: usize,
    pub free: Vec<(usize, AlgElem)>,
    pub constant: AlgElem,
}

impl Relation {
    pub fn format(&self, k: &AlgField) -> String {
        let mut rhs: Vec<String> = self
            .free
            .iter()
            .filter(|(_, c)| !k.is_zero(c))
            .map(|(j, c)| match k.as_rational(c) {
                Some(q) if q == int(1) => format!("a{j}"),
                Some(q) if q == int(-1) => format!("-a{j}"),
                Some(q) => format!("{q}*a{j}"),
                None => format!("({})*a{j}", k.format(c)),
            })
            .collect();
        if !k.is_zero(&self.constant) || rhs.is_empty() {
            rhs.push(format!("({})", k.format(&self.constant)));
        }
        format!("a{} = {}", self.unknown, rhs.join(" + "))
    }
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub psi: Parametrization<AlgElem>,
    /// Only for the adversarial construction.
    pub relations: Vec<Relation>,
}

fn small<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

fn random_poly<R: Rng>(rng: &mut R, deg: usize) -> UniPoly<crate::Rational> {
    let mut cs: Vec<_> = (0..=deg).map(|_| int(small(rng, COEFF_BOUND))).collect();
    while cs[deg] == int(0) {
        cs[deg] = int(small(rng, COEFF_BOUND));
    }
    UniPoly::new(cs, &Rationals)
}

fn random_element<R: Rng>(rng: &mut R, k: &AlgField, bound: i64) -> AlgElem {
    k.element((0..k.degree()).map(|_| int(small(rng, bound))).collect())
        .expect("length matches")
}

/// A random monic irreducible polynomial of degree `n` over `ℚ`, as a field.
pub fn random_field(n: usize, seed: u64) -> Result<AlgField> {
    if n < 2 {
        return Err(Error::Input("extension degree must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let mut cs: Vec<_> = (0..n).map(|_| int(small(&mut rng, 3))).collect();
        if cs[0] == int(0) {
            continue;
        }
        cs.push(int(1));
        let m = UniPoly::new(cs, &Rationals);
        if Rationals.is_irreducible(&m)? {
            return NumberField::new(Rationals, "a", m);
        }
    }
    Err(Error::Budget(format!(
        "no irreducible polynomial of degree {n} found"
    )))
}

/// Sufficient test for properness: at some finite `t0` the fibre polynomial
/// `gcd_j(num_j(x) den_j(t0) - num_j(t0) den_j(x))` is linear. Its degree at
/// any finite point bounds the tracing index from above.
pub fn looks_proper<F: Field>(psi: &Parametrization<F::Elem>, k: &F) -> Result<bool>
where
    F::Elem: Clone + PartialEq,
{
    for t0 in 0..8 {
        let t0 = k.from_i64(t0 * 3 - 7);
        if psi.eval(&t0, k).is_none() {
            continue;
        }
        let mut g = UniPoly::zero();
        for c in psi.components() {
            let h = c
                .num()
                .scale(&c.den().eval(&t0, k), k)
                .sub(&c.den().scale(&c.num().eval(&t0, k), k), k);
            g = g.gcd(&h, k)?;
        }
        if g.deg0() == 1 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Two components `p_1/q, p_2/q` over `ℚ` of degree exactly `d`.
fn rational_curve<R: Rng>(rng: &mut R, d: usize) -> Result<[UniPoly<crate::Rational>; 3]> {
    for _ in 0..MAX_RETRIES {
        let q = random_poly(rng, d);
        let p1 = random_poly(rng, d);
        let d2 = rng.gen_range(0..=d);
        let p2 = random_poly(rng, d2);
        if !q.gcd(&p1, &Rationals)?.is_constant() || !q.gcd(&p2, &Rationals)?.is_constant() {
            continue;
        }
        let psi = Parametrization::new(vec![
            RatFunc::new(p1.clone(), q.clone(), &Rationals)?,
            RatFunc::new(p2.clone(), q.clone(), &Rationals)?,
        ])?;
        if looks_proper(&psi, &Rationals)? {
            return Ok([p1, p2, q]);
        }
    }
    Err(Error::Budget(format!(
        "no proper rational curve of degree {d} found"
    )))
}

fn random_moebius<R: Rng>(rng: &mut R, k: &AlgField) -> Result<Moebius<AlgElem>> {
    loop {
        let [a, b, c, d] = [0; 4].map(|_| random_element(rng, k, 2));
        if k.is_zero(&k.sub(&k.mul(&a, &d), &k.mul(&b, &c))) {
            continue;
        }
        return Moebius::new(a, b, c, d, k);
    }
}

fn lift(p: &UniPoly<crate::Rational>, k: &AlgField) -> UniPoly<AlgElem> {
    p.map(k, |c| k.from_rational(c))
}

fn disguise<R: Rng>(
    rng: &mut R,
    k: &AlgField,
    [p1, p2, q]: [UniPoly<AlgElem>; 3],
) -> Result<Parametrization<AlgElem>> {
    let psi = Parametrization::new(vec![
        RatFunc::new(p1, q.clone(), k)?,
        RatFunc::new(p2, q, k)?,
    ])?;
    psi.compose_moebius(&random_moebius(rng, k)?, k)
}

fn defined<R: Rng>(rng: &mut R, d: usize, k: &AlgField) -> Result<Parametrization<AlgElem>> {
    let polys = rational_curve(rng, d)?;
    disguise(rng, k, polys.map(|p| lift(&p, k)))
}

fn twisted<R: Rng>(rng: &mut R, d: usize, k: &AlgField) -> Result<Parametrization<AlgElem>> {
    for _ in 0..MAX_RETRIES {
        let [p1, p2, q] = rational_curve(rng, d)?.map(|p| lift(&p, k));
        let i = rng.gen_range(0..=d);
        let mut cs = p1.coeffs().to_vec();
        cs[i] = k.add(&cs[i], &k.generator());
        let p1 = UniPoly::new(cs, k);
        if !p1.gcd(&q, k)?.is_constant() {
            continue;
        }
        let psi = disguise(rng, k, [p1, p2, q])?;
        if psi.degree() != d || !looks_proper(&psi, k)? {
            continue;
        }
        match standard_parametrization(&psi, k) {
            Ok(r) if !r.is_defined() => return Ok(psi),
            _ => continue,
        }
    }
    Err(Error::Budget(format!(
        "no twisted curve of degree {d} found"
    )))
}

/// Conjugates of `α` in `ℚ(α)` other than `α`, in factorization order.
pub fn conjugates(k: &AlgField) -> Result<Vec<AlgElem>> {
    let alpha = k.generator();
    let mut roots = Vec::new();
    for (f, _) in k.factor(&m_alpha_x(k))? {
        if f.deg0() != 1 {
            return Err(Error::Input(
                "adversarial construction needs a normal extension".into(),
            ));
        }
        let r = k.neg(&f.coeffs()[0]);
        if r != alpha {
            roots.push(r);
        }
    }
    Ok(roots)
}

/// Linear relations among `a_0, …, a_{d-1}` imposed by `f(i) = roots[i-1]`
/// for `f = (α t^d + Σ a_j t^j) / ((t+1)⋯(t+d))`, solved for the pivot
/// unknowns in terms of the free ones.
pub fn interpolation_relations(d: usize, k: &AlgField, roots: &[AlgElem]) -> Result<Vec<Relation>> {
    let g = denominator(d, k);
    let alpha = k.generator();
    // row i: Σ_j a_j i^j = σ_i(α) g(i) - α i^d, augmented as column d
    let mut rows: Vec<Vec<AlgElem>> = roots
        .iter()
        .enumerate()
        .map(|(idx, r)| {
            let i = k.from_i64(idx as i64 + 1);
            let mut row: Vec<AlgElem> = (0..d).map(|j| k.pow(&i, j as u64)).collect();
            row.push(k.sub(
                &k.mul(r, &g.eval(&i, k)),
                &k.mul(&alpha, &k.pow(&i, d as u64)),
            ));
            row
        })
        .collect();
    let pivots = linalg::rref(&mut rows, d + 1, k)?;
    if pivots.last() == Some(&d) {
        return Err(Error::Internal(
            "inconsistent interpolation conditions".into(),
        ));
    }
    let free: Vec<usize> = (0..d).filter(|j| !pivots.contains(j)).collect();
    Ok(pivots
        .iter()
        .zip(&rows)
        .map(|(&p, row)| Relation {
            unknown: p,
            free: free.iter().map(|&j| (j, k.neg(&row[j]))).collect(),
            constant: row[d].clone(),
        })
        .collect())
}

fn denominator(d: usize, k: &AlgField) -> UniPoly<AlgElem> {
    (1..=d as i64).fold(UniPoly::one(k), |acc, j| {
        acc.mul(&UniPoly::new(vec![k.from_i64(j), k.one()], k), k)
    })
}

/// Common denominator `(t+1)⋯(t+d)` and numerators `α t^d + Σ a_j t^j` with
/// `f(i) = σ_i(α)` for `i = 1..n-1`, conjugates in factorization order. The
/// first component sets the free unknowns to 0, the second to 1.
fn adversarial(d: usize, k: &AlgField) -> Result<Generated> {
    let n = k.degree();
    if d < n {
        return Err(Error::Input(format!(
            "adversarial construction needs d > n - 1, got d = {d}, n = {n}"
        )));
    }
    let relations = interpolation_relations(d, k, &conjugates(k)?)?;
    let g = denominator(d, k);
    let alpha = k.generator();
    let numerator = |value: &AlgElem| {
        let mut cs = vec![value.clone(); d];
        for rel in &relations {
            cs[rel.unknown] = rel.free.iter().fold(rel.constant.clone(), |acc, (_, c)| {
                k.add(&acc, &k.mul(c, value))
            });
        }
        cs.push(alpha.clone());
        UniPoly::new(cs, k)
    };
    let psi = Parametrization::new(vec![
        RatFunc::new(numerator(&k.zero()), g.clone(), k)?,
        RatFunc::new(numerator(&k.one()), g, k)?,
    ])?;
    Ok(Generated { psi, relations })
}

/// A 64-bit seed fully determines the instance.
pub fn generate(kind: Kind, d: usize, k: &AlgField, seed: u64) -> Result<Generated> {
    if d < 2 || k.degree() < 2 {
        return Err(Error::Input("generators need d >= 2 and n >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let psi = match kind {
        Kind::Defined => defined(&mut rng, d, k)?,
        Kind::Twisted => twisted(&mut rng, d, k)?,
        Kind::Adversarial => return adversarial(d, k),
    };
    Ok(Generated {
        psi,
        relations: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_field;

    fn gaussian() -> AlgField {
        parse_field(r#"{"generator":"i","minpoly":["1","0","1"]}"#).unwrap()
    }

    #[test]
    fn same_seed_same_instance() {
        let k = gaussian();
        let a = generate(Kind::Defined, 3, &k, 7).unwrap().psi;
        let b = generate(Kind::Defined, 3, &k, 7).unwrap().psi;
        let c = generate(Kind::Defined, 3, &k, 8).unwrap().psi;
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn defined_instances_have_the_requested_degree() {
        let k = gaussian();
        for seed in 0..5 {
            let psi = generate(Kind::Defined, 4, &k, seed).unwrap().psi;
            assert_eq!(psi.degree(), 4);
            assert!(looks_proper(&psi, &k).unwrap());
        }
    }

    #[test]
    fn non_proper_curve_is_rejected() {
        let k = Rationals;
        let t2 = UniPoly::new(vec![int(0), int(0), int(1)], &k);
        let psi = Parametrization::new(vec![
            RatFunc::new(
                t2.clone(),
                UniPoly::new(vec![int(1), int(0), int(1)], &k),
                &k,
            )
            .unwrap(),
            RatFunc::from_poly(t2, &k),
        ])
        .unwrap();
        assert!(!looks_proper(&psi, &k).unwrap());
    }

    #[test]
    fn random_field_is_irreducible() {
        let k = random_field(5, 3).unwrap();
        assert_eq!(k.degree(), 5);
        assert!(Rationals.is_irreducible(k.minpoly()).unwrap());
    }

    #[test]
    fn adversarial_meets_its_interpolation_conditions() {
        let k = parse_field(include_str!("../../../data/cyclotomic5.json")).unwrap();
        let gen = generate(Kind::Adversarial, 4, &k, 0).unwrap();
        assert_eq!(gen.relations.len(), 3);
        let roots = conjugates(&k).unwrap();
        for c in gen.psi.components() {
            for (i, r) in roots.iter().enumerate() {
                let v = c.eval(&k.from_i64(i as i64 + 1), &k).finite().unwrap();
                assert_eq!(&v, r);
            }
            assert_eq!(c.at_infinity(&k).finite().unwrap(), k.generator());
        }
        assert!(matches!(
            generate(Kind::Adversarial, 3, &k, 0),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn adversarial_needs_normal_field() {
        let k = parse_field(r#"{"generator":"a","minpoly":["-2","0","0","1"]}"#).unwrap();
        assert!(matches!(
            generate(Kind::Adversarial, 4, &k, 0),
            Err(Error::Input(_))
        ));
    }
}
