//! Rational functions in one variable, parametrizations and Möbius units.
//!
//! A [`RatFunc`] is kept in canonical form: numerator and denominator are
//! coprime and the denominator is monic, so equal functions have equal
//! representations.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::poly::UniPoly;

/// Value of a rational function at a point of the projective line.
#[derive(Clone, Debug, PartialEq)]
pub enum Value<E> {
    Finite(E),
    Pole,
}

impl<E> Value<E> {
    pub fn finite(self) -> Option<E> {
        match self {
            Value::Finite(v) => Some(v),
            Value::Pole => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<E> {
    num: UniPoly<E>,
    den: UniPoly<E>,
}

impl<E: Clone + PartialEq> RatFunc<E> {
    /// Cancels the gcd and makes the denominator monic.
    pub fn new<F: Field<Elem = E>>(num: UniPoly<E>, den: UniPoly<E>, k: &F) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: UniPoly::one(k),
            });
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den, k)?;
            if g.is_constant() {
                (num, den)
            } else {
                (num.exact_div(&g, k)?, den.exact_div(&g, k)?)
            }
        };
        let inv = k.inv(den.lc().unwrap())?;
        Ok(RatFunc {
            num: num.scale(&inv, k),
            den: den.scale(&inv, k),
        })
    }

    pub fn from_poly<F: Field<Elem = E>>(p: UniPoly<E>, k: &F) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(k),
        }
    }

    pub fn constant<F: Field<Elem = E>>(c: E, k: &F) -> Self {
        Self::from_poly(UniPoly::constant(c, k), k)
    }

    /// The identity function `t`.
    pub fn t<F: Field<Elem = E>>(k: &F) -> Self {
        Self::from_poly(UniPoly::x(k), k)
    }

    pub fn num(&self) -> &UniPoly<E> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<E> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    pub fn eval<F: Field<Elem = E>>(&self, t: &E, k: &F) -> Value<E> {
        let d = self.den.eval(t, k);
        if k.is_zero(&d) {
            return Value::Pole;
        }
        Value::Finite(
            k.div(&self.num.eval(t, k), &d)
                .expect("nonzero denominator"),
        )
    }

    /// Value at `t = ∞`: the ratio of leading coefficients when the degrees
    /// agree, zero when the denominator dominates, a pole otherwise.
    pub fn at_infinity<F: Field<Elem = E>>(&self, k: &F) -> Value<E> {
        if self.num.is_zero() || self.num.deg0() < self.den.deg0() {
            return Value::Finite(k.zero());
        }
        if self.num.deg0() > self.den.deg0() {
            return Value::Pole;
        }
        Value::Finite(
            k.div(self.num.lc().unwrap(), self.den.lc().unwrap())
                .expect("monic denominator"),
        )
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Result<Self> {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num, k), self.den.clone(), k);
        }
        let num = self
            .num
            .mul(&other.den, k)
            .add(&other.num.mul(&self.den, k), k);
        Self::new(num, self.den.mul(&other.den, k), k)
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Result<Self> {
        Self::new(self.num.mul(&other.num, k), self.den.mul(&other.den, k), k)
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, k: &F) -> Self {
        if k.is_zero(c) {
            return Self::from_poly(UniPoly::zero(), k);
        }
        RatFunc {
            num: self.num.scale(c, k),
            den: self.den.clone(),
        }
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn equals<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> bool {
        self.num.mul(&other.den, k) == other.num.mul(&self.den, k)
    }

    /// `self(u(t))`, normalized. The degree is preserved.
    pub fn compose_moebius<F: Field<Elem = E>>(&self, u: &Moebius<E>, k: &F) -> Result<Self> {
        let top = self.degree();
        let p = UniPoly::new(vec![u.b.clone(), u.a.clone()], k);
        let q = UniPoly::new(vec![u.d.clone(), u.c.clone()], k);
        let mut p_pow = vec![UniPoly::one(k)];
        let mut q_pow = vec![UniPoly::one(k)];
        for i in 1..=top {
            p_pow.push(p_pow[i - 1].mul(&p, k));
            q_pow.push(q_pow[i - 1].mul(&q, k));
        }
        let homogenize = |f: &UniPoly<E>| {
            let mut acc = UniPoly::zero();
            for (i, c) in f.coeffs().iter().enumerate() {
                if !k.is_zero(c) {
                    acc = acc.add(&p_pow[i].mul(&q_pow[top - i], k).scale(c, k), k);
                }
            }
            acc
        };
        Self::new(homogenize(&self.num), homogenize(&self.den), k)
    }

    /// Applies a field embedding to every coefficient. The result stays
    /// canonical because embeddings preserve gcds and monicity.
    pub fn map<G: Field, M: FnMut(&E) -> G::Elem>(&self, target: &G, mut f: M) -> RatFunc<G::Elem> {
        RatFunc {
            num: self.num.map(target, &mut f),
            den: self.den.map(target, &mut f),
        }
    }

    pub fn format<F: Field<Elem = E>>(&self, k: &F, var: &str) -> String {
        let num = self.num.format(k, var);
        if self.den.is_constant() {
            return num;
        }
        format!("({num})/({})", self.den.format(k, var))
    }
}

/// A tuple of rational functions over one field.
#[derive(Clone, Debug, PartialEq)]
pub struct Parametrization<E> {
    components: Vec<RatFunc<E>>,
}

impl<E: Clone + PartialEq> Parametrization<E> {
    pub fn new(components: Vec<RatFunc<E>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Input("parametrization has no components".into()));
        }
        if components.iter().all(|c| c.degree() == 0) {
            return Err(Error::Input("parametrization is constant".into()));
        }
        Ok(Parametrization { components })
    }

    pub fn components(&self) -> &[RatFunc<E>] {
        &self.components
    }

    /// Largest component degree.
    pub fn degree(&self) -> usize {
        self.components.iter().map(RatFunc::degree).max().unwrap()
    }

    pub fn ambient_dim(&self) -> usize {
        self.components.len()
    }

    /// The point at `t`, or `None` when some component has a pole there.
    pub fn eval<F: Field<Elem = E>>(&self, t: &E, k: &F) -> Option<Vec<E>> {
        self.components
            .iter()
            .map(|c| c.eval(t, k).finite())
            .collect()
    }

    pub fn at_infinity<F: Field<Elem = E>>(&self, k: &F) -> Option<Vec<E>> {
        self.components
            .iter()
            .map(|c| c.at_infinity(k).finite())
            .collect()
    }

    pub fn compose_moebius<F: Field<Elem = E>>(&self, u: &Moebius<E>, k: &F) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|c| c.compose_moebius(u, k))
            .collect::<Result<_>>()?;
        Ok(Parametrization { components })
    }

    pub fn equals<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> bool {
        self.components.len() == other.components.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.equals(b, k))
    }

    pub fn map<G: Field, M: FnMut(&E) -> G::Elem>(
        &self,
        target: &G,
        mut f: M,
    ) -> Parametrization<G::Elem> {
        Parametrization {
            components: self
                .components
                .iter()
                .map(|c| c.map(target, &mut f))
                .collect(),
        }
    }
}

/// The unit `(a t + b) / (c t + d)`, stored projectively.
#[derive(Clone, Debug, PartialEq)]
pub struct Moebius<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
}

impl<E: Clone + PartialEq> Moebius<E> {
    pub fn new<F: Field<Elem = E>>(a: E, b: E, c: E, d: E, k: &F) -> Result<Self> {
        let det = k.sub(&k.mul(&a, &d), &k.mul(&b, &c));
        if k.is_zero(&det) {
            return Err(Error::Degenerate(
                "Möbius transform with ad - bc = 0".into(),
            ));
        }
        Ok(Moebius { a, b, c, d })
    }

    pub fn identity<F: Field<Elem = E>>(k: &F) -> Self {
        Moebius {
            a: k.one(),
            b: k.zero(),
            c: k.zero(),
            d: k.one(),
        }
    }

    pub fn eval<F: Field<Elem = E>>(&self, t: &E, k: &F) -> Value<E> {
        let den = k.add(&k.mul(&self.c, t), &self.d);
        if k.is_zero(&den) {
            return Value::Pole;
        }
        Value::Finite(
            k.div(&k.add(&k.mul(&self.a, t), &self.b), &den)
                .expect("nonzero denominator"),
        )
    }

    pub fn to_ratfunc<F: Field<Elem = E>>(&self, k: &F) -> RatFunc<E> {
        let num = UniPoly::new(vec![self.b.clone(), self.a.clone()], k);
        let den = UniPoly::new(vec![self.d.clone(), self.c.clone()], k);
        RatFunc::new(num, den, k).expect("valid unit has a nonzero denominator")
    }

    /// Representative with `c = 1`, or with `d = 1` when `c = 0`.
    pub fn normalized<F: Field<Elem = E>>(&self, k: &F) -> Self {
        let s = if k.is_zero(&self.c) { &self.d } else { &self.c };
        let inv = k.inv(s).expect("unit has c or d nonzero");
        Moebius {
            a: k.mul(&self.a, &inv),
            b: k.mul(&self.b, &inv),
            c: k.mul(&self.c, &inv),
            d: k.mul(&self.d, &inv),
        }
    }

    /// Equality up to a nonzero scalar.
    pub fn projective_eq<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> bool {
        let u = [&self.a, &self.b, &self.c, &self.d];
        let v = [&other.a, &other.b, &other.c, &other.d];
        (0..4).all(|i| (i + 1..4).all(|j| k.mul(u[i], v[j]) == k.mul(u[j], v[i])))
    }

    /// The unique unit with `u(t_k) = s_k`, from the kernel of the system
    /// `s_k (c t_k + d) - (a t_k + b) = 0`.
    pub fn from_three_points<F: Field<Elem = E>>(pairs: &[(E, E); 3], k: &F) -> Result<Self> {
        for i in 0..3 {
            for j in i + 1..3 {
                if pairs[i].0 == pairs[j].0 || pairs[i].1 == pairs[j].1 {
                    return Err(Error::Degenerate(
                        "repeated sample in three-point interpolation".into(),
                    ));
                }
            }
        }
        let rows: Vec<Vec<E>> = pairs
            .iter()
            .map(|(t, s)| vec![k.neg(t), k.neg(&k.one()), k.mul(s, t), s.clone()])
            .collect();
        let ker = linalg::kernel(&rows, 4, k)?;
        let [v] = ker.as_slice() else {
            return Err(Error::Degenerate(format!(
                "kernel of dimension {}",
                ker.len()
            )));
        };
        Ok(Self::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), k)?.normalized(k))
    }

    pub fn map<G: Field, M: FnMut(&E) -> G::Elem>(
        &self,
        _target: &G,
        mut f: M,
    ) -> Moebius<G::Elem> {
        Moebius {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            d: f(&self.d),
        }
    }

    pub fn format<F: Field<Elem = E>>(&self, k: &F, var: &str) -> String {
        self.to_ratfunc(k).format(k, var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::numfield::{AlgElem, AlgField, NumberField};
    use crate::rational::{int, rat, Rational};
    use proptest::prelude::*;

    fn q(cs: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(cs.iter().map(|&c| int(c)).collect(), &Rationals)
    }

    fn quartic() -> AlgField {
        NumberField::new(Rationals, "a", q(&[-2, 0, 0, 0, 1])).unwrap()
    }

    fn el(k: &AlgField, cs: &[Rational]) -> AlgElem {
        k.element(cs.to_vec()).unwrap()
    }

    fn ip(k: &AlgField, cs: &[&[i64]]) -> UniPoly<AlgElem> {
        UniPoly::new(
            cs.iter()
                .map(|c| el(k, &c.iter().map(|&x| int(x)).collect::<Vec<_>>()))
                .collect(),
            k,
        )
    }

    #[test]
    fn normalize_cancels_and_makes_monic() {
        let f = RatFunc::new(q(&[-1, 0, 1]), q(&[-1, 1]), &Rationals).unwrap();
        assert_eq!(f.num(), &q(&[1, 1]));
        assert_eq!(f.den(), &q(&[1]));
        let g = RatFunc::new(q(&[0, 2]), q(&[2]), &Rationals).unwrap();
        assert_eq!(g, RatFunc::t(&Rationals));
        let k = quartic();
        // (a t^2 + a t) / (a t)
        let h = RatFunc::new(
            ip(&k, &[&[0, 0, 0, 0], &[0, 1, 0, 0], &[0, 1, 0, 0]]),
            ip(&k, &[&[0, 0, 0, 0], &[0, 1, 0, 0]]),
            &k,
        )
        .unwrap();
        assert_eq!(h.num(), &ip(&k, &[&[1, 0, 0, 0], &[1, 0, 0, 0]]));
        assert!(h.den().is_constant());
        assert!(matches!(
            RatFunc::new(q(&[1]), UniPoly::zero(), &Rationals),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn evaluation_and_poles() {
        let f = RatFunc::new(q(&[1, 0, 1]), q(&[0, 2]), &Rationals).unwrap();
        assert_eq!(f.eval(&int(1), &Rationals), Value::Finite(int(1)));
        assert_eq!(f.eval(&int(0), &Rationals), Value::Pole);
        assert_eq!(f.at_infinity(&Rationals), Value::Pole);
        let g = RatFunc::new(q(&[1, 3]), q(&[5, 2]), &Rationals).unwrap();
        assert_eq!(g.at_infinity(&Rationals), Value::Finite(rat(3, 2)));
    }

    #[test]
    fn circle_component_is_fixed_by_inversion() {
        let f = RatFunc::new(q(&[1, 0, 1]), q(&[0, 2]), &Rationals).unwrap();
        let inv = Moebius::new(int(0), int(1), int(1), int(0), &Rationals).unwrap();
        assert!(f
            .compose_moebius(&inv, &Rationals)
            .unwrap()
            .equals(&f, &Rationals));
        let id = Moebius::identity(&Rationals);
        assert_eq!(f.compose_moebius(&id, &Rationals).unwrap(), f);
    }

    #[test]
    fn three_points_examples() {
        let k = Rationals;
        let id =
            Moebius::from_three_points(&[(int(0), int(0)), (int(1), int(1)), (int(2), int(2))], &k)
                .unwrap();
        assert!(id.projective_eq(&Moebius::identity(&k), &k));
        let u = Moebius::from_three_points(
            &[(int(0), int(0)), (int(1), rat(1, 2)), (int(2), rat(2, 3))],
            &k,
        )
        .unwrap();
        let expected = Moebius::new(int(1), int(0), int(1), int(1), &k).unwrap();
        assert!(u.projective_eq(&expected, &k));
        assert!(Moebius::from_three_points(
            &[(int(0), int(0)), (int(0), int(1)), (int(2), int(2))],
            &k
        )
        .is_err());
    }

    #[test]
    fn three_points_quartic_unit() {
        let k = quartic();
        let s1 = el(&k, &[rat(-1, 31), rat(2, 31), rat(-4, 31), rat(8, 31)]);
        let s2 = el(
            &k,
            &[rat(-2, 511), rat(8, 511), rat(-32, 511), rat(128, 511)],
        );
        let pairs = [(k.zero(), k.zero()), (k.one(), s1), (k.from_i64(2), s2)];
        let u = Moebius::from_three_points(&pairs, &k).unwrap();
        let a3 = el(&k, &[int(0), int(0), int(0), int(1)]);
        let expected = Moebius::new(a3.clone(), k.zero(), k.from_i64(4), a3, &k).unwrap();
        assert!(u.projective_eq(&expected, &k));
    }

    proptest! {
        #[test]
        fn three_points_recover_random_unit(a in -5i64..6, b in -5i64..6, c in -5i64..6, d in -5i64..6) {
            prop_assume!(a * d - b * c != 0);
            let k = Rationals;
            let u = Moebius::new(int(a), int(b), int(c), int(d), &k).unwrap();
            let pts: Vec<(Rational, Rational)> = (0..10)
                .filter_map(|t| u.eval(&int(t), &k).finite().map(|s| (int(t), s)))
                .take(3)
                .collect();
            let v = Moebius::from_three_points(&[pts[0].clone(), pts[1].clone(), pts[2].clone()], &k).unwrap();
            prop_assert!(v.projective_eq(&u, &k));
        }

        #[test]
        fn composition_preserves_degree(
            num in proptest::collection::vec(-4i64..5, 1..5),
            den in proptest::collection::vec(-4i64..5, 1..5),
            m in (-3i64..4, -3i64..4, -3i64..4, -3i64..4),
        ) {
            let k = Rationals;
            prop_assume!(m.0 * m.3 - m.1 * m.2 != 0);
            prop_assume!(!q(&den).is_zero());
            let f = RatFunc::new(q(&num), q(&den), &k).unwrap();
            let u = Moebius::new(int(m.0), int(m.1), int(m.2), int(m.3), &k).unwrap();
            let g = f.compose_moebius(&u, &k).unwrap();
            prop_assert_eq!(g.degree(), f.degree());
            // normalizing again changes nothing
            prop_assert_eq!(RatFunc::new(g.num().clone(), g.den().clone(), &k).unwrap(), g.clone());
        }

        #[test]
        fn conjugation_commutes_with_rational_evaluation(
            cs in proptest::collection::vec(-3i64..4, 8),
            t in -5i64..6,
        ) {
            // sigma: a -> -a on Q(a), a^4 = 2
            let k = quartic();
            let sigma = |x: &AlgElem| {
                el(&k, &x.coords().iter().enumerate().map(|(i, c)| if i % 2 == 1 { Rational::from(-c) } else { c.clone() }).collect::<Vec<_>>())
            };
            let num = ip(&k, &[&cs[0..4], &cs[4..8]]);
            let den = ip(&k, &[&[1, 0, 0, 0], &[1, 1, 0, 0]]);
            let f = RatFunc::new(num, den, &k).unwrap();
            let g = f.map(&k, sigma);
            let tq = k.from_i64(t);
            match (f.eval(&tq, &k), g.eval(&tq, &k)) {
                (Value::Finite(x), Value::Finite(y)) => prop_assert_eq!(sigma(&x), y),
                (Value::Pole, Value::Pole) => {}
                _ => prop_assert!(false, "pole sets differ"),
            }
        }
    }
}
