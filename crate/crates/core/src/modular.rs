//! Modular computation of the common divisor of polynomials over a tower
//! `ℚ(α)(β)`: Euclid modulo word-size primes, Chinese remaindering and
//! rational reconstruction, with exact verification of the answer.

use rug::Integer;

use crate::error::{ArithError, Result};
use crate::field::Field;
use crate::hypercircle::CommonDivisor;
use crate::numfield::{NFElement, NumberField, RelElem, RelField};
use crate::poly::UniPoly;
use crate::rational::Rational;

/// Primes are drawn upward from this value; products of residues fit in `u128`.
pub const PRIME_START: u64 = 1 << 62;
/// Primes examined before the exact algorithm takes over.
pub const MAX_PRIMES: usize = 4096;

/// The prime field `F_p`, `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < 1 << 63);
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Image of `q`, if its denominator is prime to `p`.
    pub fn reduce(&self, q: &Rational) -> Option<u64> {
        let num = residue(q.numer(), self.p);
        let den = residue(q.denom(), self.p);
        (den != 0).then(|| self.mul_u(num, self.pow_u(den, self.p - 2)))
    }

    fn mul_u(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn pow_u(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_u(acc, a);
            }
            a = self.mul_u(a, a);
            e >>= 1;
        }
        acc
    }
}

fn residue(n: &Integer, p: u64) -> u64 {
    Integer::from(n.modulo_ref(&Integer::from(p)))
        .to_u64()
        .expect("residue below p")
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_u(*a, *b)
    }
    fn inv(&self, a: &u64) -> std::result::Result<u64, ArithError> {
        if *a == 0 {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self.pow_u(*a, self.p - 2))
    }
    /// Panics when the denominator of `q` is divisible by `p`.
    fn from_rational(&self, q: &Rational) -> u64 {
        self.reduce(q).expect("denominator prime to p")
    }
    fn as_rational(&self, _: &u64) -> Option<Rational> {
        None
    }
    fn degree_over_q(&self) -> usize {
        1
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

type ModTower = NumberField<NumberField<PrimeField>>;
type ModElem = NFElement<NFElement<u64>>;

/// `F_p[a, b] / (m(a), f(a, b))`, if the defining polynomials are `p`-integral.
fn reduce_tower(rel: &RelField, fp: PrimeField) -> Option<ModTower> {
    let ext = rel.base();
    let m = UniPoly::new(
        ext.minpoly()
            .coeffs()
            .iter()
            .map(|c| fp.reduce(c))
            .collect::<Option<_>>()?,
        &fp,
    );
    let ext_p = NumberField::new(fp, ext.name(), m).ok()?;
    let f = rel
        .minpoly()
        .coeffs()
        .iter()
        .map(|c| reduce_ext(&ext_p, c))
        .collect::<Option<Vec<_>>>()?;
    NumberField::new(ext_p.clone(), rel.name(), UniPoly::new(f, &ext_p)).ok()
}

fn reduce_ext(ext_p: &NumberField<PrimeField>, a: &NFElement<Rational>) -> Option<NFElement<u64>> {
    let fp = ext_p.base();
    ext_p
        .element(
            a.coords()
                .iter()
                .map(|c| fp.reduce(c))
                .collect::<Option<_>>()?,
        )
        .ok()
}

fn reduce_elem(tower: &ModTower, a: &RelElem) -> Option<ModElem> {
    tower
        .element(
            a.coords()
                .iter()
                .map(|c| reduce_ext(tower.base(), c))
                .collect::<Option<_>>()?,
        )
        .ok()
}

/// Images of `polys`, if every coefficient is `p`-integral and every leading
/// coefficient is a unit modulo `p`.
fn reduce_polys(tower: &ModTower, polys: &[UniPoly<RelElem>]) -> Option<Vec<UniPoly<ModElem>>> {
    polys
        .iter()
        .map(|h| {
            let cs = h
                .coeffs()
                .iter()
                .map(|c| reduce_elem(tower, c))
                .collect::<Option<Vec<_>>>()?;
            let hp = UniPoly::new(cs, tower);
            (hp.degree() == h.degree() && tower.inv(hp.lc()?).is_ok()).then_some(hp)
        })
        .collect()
}

fn gcd_all<F: Field>(
    polys: &[UniPoly<F::Elem>],
    k: &F,
) -> std::result::Result<UniPoly<F::Elem>, ArithError> {
    polys.iter().try_fold(UniPoly::zero(), |g, h| g.gcd(h, k))
}

/// `x ≡ a (mod m)`, `x ≡ b (mod p)`, `0 ≤ x < m p`.
fn crt(a: &Integer, m: &Integer, b: u64, p: u64) -> Integer {
    let pz = Integer::from(p);
    let diff = Integer::from(b) - Integer::from(a.modulo_ref(&pz));
    let inv = Integer::from(m.modulo_ref(&pz))
        .invert(&pz)
        .expect("moduli are coprime");
    let k = (diff * inv).modulo(&pz);
    a + k * m
}

/// The rational `n/d` with `n ≡ a d (mod m)` and `|n|, d ≤ sqrt(m/2)`, if any.
pub fn rational_reconstruction(a: &Integer, m: &Integer) -> Option<Rational> {
    let bound = Integer::from(m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), Integer::from(a.modulo_ref(m)));
    let (mut s0, mut s1) = (Integer::new(), Integer::from(1));
    while r1 > bound {
        let (q, r) = r0.div_rem_floor_ref(&r1).into();
        let q: Integer = q;
        r0 = std::mem::replace(&mut r1, r);
        let s = Integer::from(&s0 - &q * &s1);
        s0 = std::mem::replace(&mut s1, s);
    }
    if s1 == 0 || Integer::from(s1.abs_ref()) > bound || Integer::from(r1.gcd_ref(&s1)) != 1 {
        return None;
    }
    Some(Rational::from((r1, s1)))
}

fn lift(rel: &RelField, coords: &[Rational]) -> RelElem {
    let ext = rel.base();
    let n = ext.degree();
    let outer = coords
        .chunks(n)
        .map(|c| {
            ext.element(c.to_vec())
                .expect("chunk length is the base degree")
        })
        .collect();
    rel.element(outer).expect("one chunk per outer coordinate")
}

fn flatten(a: &ModElem) -> impl Iterator<Item = u64> + '_ {
    a.coords().iter().flat_map(|c| c.coords().iter().copied())
}

/// Common divisor of nonzero `polys` over `rel`. `None` when the modular
/// method cannot decide (a common divisor of degree ≥ 2, or no usable prime),
/// in which case the caller falls back to exact Euclid.
///
/// Degree 0 modulo a prime certifies coprimality: a Bezout identity modulo
/// `p` contradicts a common root, which is integral at `p` because the
/// leading coefficients are units there. A linear gcd `x - s_p` whose
/// cofactor gcd is trivial certifies that the exact gcd is linear; its root
/// is reconstructed from several primes and checked exactly.
pub fn common_divisor(
    rel: &RelField,
    polys: &[UniPoly<RelElem>],
) -> Result<Option<CommonDivisor<RelElem>>> {
    let mut prime = Integer::from(PRIME_START);
    let mut residues: Vec<Integer> = Vec::new();
    let mut modulus = Integer::from(1);
    let mut certifying: Option<u64> = None;
    let mut used = 0usize;
    let mut next_attempt = 1usize;
    for _ in 0..MAX_PRIMES {
        prime.next_prime_mut();
        let p = prime.to_u64().expect("prime below 2^63");
        let Some(tower) = reduce_tower(rel, PrimeField::new(p)) else {
            continue;
        };
        let Some(images) = reduce_polys(&tower, polys) else {
            continue;
        };
        let Ok(g) = gcd_all(&images, &tower) else {
            continue;
        };
        match g.degree() {
            Some(0) => return Ok(Some(CommonDivisor::Trivial)),
            Some(1) => {}
            _ => return Ok(None),
        }
        let root = tower.neg(&g.coeffs()[0]);
        if certifying.is_none() {
            let x_minus = UniPoly::linear_root(&root, &tower);
            let Ok(cofactor) = images[0].exact_div(&x_minus, &tower) else {
                continue;
            };
            let mut rest = vec![cofactor];
            rest.extend(images[1..].iter().cloned());
            match gcd_all(&rest, &tower) {
                Ok(h) if h.deg0() == 0 => certifying = Some(p),
                Ok(_) => return Ok(None),
                Err(_) => continue,
            }
        }
        let values: Vec<u64> = flatten(&root).collect();
        residues = if used == 0 {
            values.iter().map(|&v| Integer::from(v)).collect()
        } else {
            residues
                .iter()
                .zip(&values)
                .map(|(a, &b)| crt(a, &modulus, b, p))
                .collect()
        };
        modulus *= p;
        used += 1;
        if used < next_attempt {
            continue;
        }
        next_attempt = used + used.div_ceil(4);
        let Some(coords) = residues
            .iter()
            .map(|a| rational_reconstruction(a, &modulus))
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let s = lift(rel, &coords);
        let p0 = PrimeField::new(certifying.expect("set before the first residue"));
        let integral = coords.iter().all(|c| p0.reduce(c).is_some());
        if integral && polys.iter().all(|h| rel.is_zero(&h.eval(&s, rel))) {
            return Ok(Some(CommonDivisor::Linear(s)));
        }
    }
    Ok(None)
}
