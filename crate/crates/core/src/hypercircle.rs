//! The hypercircle of a parametrization: per-class units from good
//! parameters, exact verification, and the standard parametrization
//! assembled by Lagrange interpolation with traces.
//!
//! Notation: `K` is the ground field, `K(α)` the coefficient field of `ψ`,
//! and `K(α)(α_i)` the field of a class representative `α_i`.

use crate::error::{Error, Result};
use crate::factor::FactorField;
use crate::field::{Field, Rationals};
use crate::modular;
use crate::numfield::{nf_conjugate, ConjugacyClass, NFElement, NumberField};
use crate::poly::UniPoly;
use crate::ratfunc::{Moebius, Parametrization, RatFunc, Value};
use crate::rational::Rational;

/// Element of `K(α)`.
pub type ExtElem<K> = NFElement<<K as Field>::Elem>;
/// Element of `K(α)(α_i)`.
pub type RootElem<K> = NFElement<ExtElem<K>>;
/// The field `K(α)(α_i)`.
pub type RootField<K> = NumberField<NumberField<K>>;

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome<E> {
    /// `ψ(t_k) = ψ^σ(s)` for exactly one finite `s`.
    Good(E),
    /// `t_k` is a pole of some component of `ψ`.
    BadDenominator,
    /// `ψ(t_k)` is not a point of `ψ^σ` at any finite parameter.
    NotAttained,
    /// `ψ(t_k)` is attained more than once, possibly at infinity.
    Singular,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParameterVerdict<E> {
    pub parameter: Rational,
    pub outcome: Outcome<E>,
}

/// `ψ^σ`, the parametrization with `α` replaced by the class representative.
pub fn conjugate_parametrization<K: Field>(
    psi: &Parametrization<ExtElem<K>>,
    class: &ConjugacyClass<K>,
) -> Parametrization<RootElem<K>> {
    psi.map(class.relative_field(), |c| nf_conjugate(c, class))
}

/// Common divisor of polynomials over `K(α)(α_i)`, up to what the
/// classification needs.
#[derive(Clone, Debug, PartialEq)]
pub enum CommonDivisor<E> {
    Trivial,
    /// `x - s`.
    Linear(E),
    /// Degree at least two.
    Higher,
}

/// Ground fields `K` for the pipeline. The common divisor is computed by
/// exact Euclid unless the field supplies something faster.
pub trait GroundField: FactorField {
    fn common_divisor(
        rel: &RootField<Self>,
        polys: &[UniPoly<RootElem<Self>>],
    ) -> Result<CommonDivisor<RootElem<Self>>> {
        exact_common_divisor(rel, polys)
    }
}

impl GroundField for Rationals {
    fn common_divisor(
        rel: &RootField<Self>,
        polys: &[UniPoly<RootElem<Self>>],
    ) -> Result<CommonDivisor<RootElem<Self>>> {
        match modular::common_divisor(rel, polys)? {
            Some(c) => Ok(c),
            None => exact_common_divisor(rel, polys),
        }
    }
}

impl<B: FactorField> GroundField for NumberField<B> {}

/// Euclid over `rel`, stopping as soon as the gcd is constant.
pub fn exact_common_divisor<K: Field>(
    rel: &RootField<K>,
    polys: &[UniPoly<RootElem<K>>],
) -> Result<CommonDivisor<RootElem<K>>> {
    let mut g = UniPoly::zero();
    for p in polys {
        g = g.gcd(p, rel)?;
        if g.is_constant() {
            return Ok(CommonDivisor::Trivial);
        }
    }
    Ok(match g.degree() {
        Some(1) => CommonDivisor::Linear(rel.neg(&g.coeffs()[0])),
        Some(0) => CommonDivisor::Trivial,
        // no conditions at all, or several common roots
        _ => CommonDivisor::Higher,
    })
}

/// Classifies the rational parameter `t_k` against `ψ^σ` over the field `rel`.
pub fn classify_parameter<K: GroundField>(
    psi: &Parametrization<ExtElem<K>>,
    psi_sigma: &Parametrization<RootElem<K>>,
    rel: &RootField<K>,
    t_k: &Rational,
) -> Result<ParameterVerdict<RootElem<K>>> {
    let ext = rel.base();
    let verdict = |outcome| {
        Ok(ParameterVerdict {
            parameter: t_k.clone(),
            outcome,
        })
    };
    let Some(point) = psi.eval(&ext.from_rational(t_k), ext) else {
        return verdict(Outcome::BadDenominator);
    };
    let point: Vec<RootElem<K>> = point.iter().map(|v| rel.embed(v)).collect();
    // v d^σ(s) - n^σ(s), one per non-constant condition
    let polys: Vec<_> = point
        .iter()
        .zip(psi_sigma.components())
        .map(|(v, c)| c.den().scale(v, rel).sub(c.num(), rel))
        .filter(|p| !p.is_zero())
        .collect();
    match K::common_divisor(rel, &polys)? {
        CommonDivisor::Linear(s) => {
            if psi_sigma.at_infinity(rel).is_some_and(|inf| inf == point) {
                return verdict(Outcome::Singular);
            }
            verdict(Outcome::Good(s))
        }
        CommonDivisor::Trivial => verdict(Outcome::NotAttained),
        CommonDivisor::Higher => verdict(Outcome::Singular),
    }
}

/// Candidate parameters examined per class before declaring the input
/// non-proper: the `d² - 2d + n + 1` possible failures plus three good ones.
pub fn parameter_budget(d: usize, n: usize) -> usize {
    (d * d + n + 4).saturating_sub(2 * d)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Search<E> {
    /// Three good samples with distinct images and the unit through them.
    Unit {
        u: Moebius<E>,
        samples: [(Rational, E); 3],
    },
    /// Two well-defined parameters whose images are not on `C^σ`.
    NotAttained([Rational; 2]),
}

#[derive(Clone, Debug)]
pub struct ClassSearch<E> {
    pub verdicts: Vec<ParameterVerdict<E>>,
    pub search: Search<E>,
}

impl<E> ClassSearch<E> {
    pub fn params_tried(&self) -> usize {
        self.verdicts.len()
    }
}

/// Samples `t = 0, 1, 2, …` until three good parameters with distinct images
/// or two non-attained ones are found.
pub fn search_unit<K: GroundField>(
    psi: &Parametrization<ExtElem<K>>,
    psi_sigma: &Parametrization<RootElem<K>>,
    rel: &RootField<K>,
    n: usize,
) -> Result<ClassSearch<RootElem<K>>> {
    let budget = parameter_budget(psi.degree(), n);
    let mut verdicts = Vec::new();
    let mut good: Vec<(Rational, RootElem<K>)> = Vec::new();
    let mut missing: Vec<Rational> = Vec::new();
    for t in 0..budget {
        let t = Rational::from(t);
        let v = classify_parameter(psi, psi_sigma, rel, &t)?;
        match &v.outcome {
            Outcome::Good(s) if good.iter().all(|(_, s0)| s0 != s) => {
                good.push((t.clone(), s.clone()))
            }
            Outcome::NotAttained => missing.push(t.clone()),
            _ => {}
        }
        verdicts.push(v);
        if missing.len() == 2 {
            let search = Search::NotAttained([missing[0].clone(), missing[1].clone()]);
            return Ok(ClassSearch { verdicts, search });
        }
        if good.len() == 3 {
            let pairs: [(RootElem<K>, RootElem<K>); 3] =
                std::array::from_fn(|i| (rel.from_rational(&good[i].0), good[i].1.clone()));
            let u = Moebius::from_three_points(&pairs, rel)?;
            let samples = std::array::from_fn(|i| good[i].clone());
            return Ok(ClassSearch {
                verdicts,
                search: Search::Unit { u, samples },
            });
        }
    }
    Err(Error::NonProper { tried: budget })
}

/// [`search_unit`] for the representative of `class`. The identity class
/// has `u = t` without sampling.
pub fn compute_u_for_class<K: GroundField>(
    psi: &Parametrization<ExtElem<K>>,
    class: &ConjugacyClass<K>,
) -> Result<ClassSearch<RootElem<K>>> {
    let rel = class.relative_field();
    if class.is_identity() {
        let t = |i: i64| (Rational::from(i), rel.from_i64(i));
        let samples = [t(0), t(1), t(2)];
        return Ok(ClassSearch {
            verdicts: Vec::new(),
            search: Search::Unit {
                u: Moebius::identity(rel),
                samples,
            },
        });
    }
    let psi_sigma = conjugate_parametrization(psi, class);
    search_unit(psi, &psi_sigma, rel, class.ext().degree())
}

/// `ψ = ψ^σ ∘ u`, by symbolic composition and cross-multiplication.
pub fn verify_identity<K: Field>(
    psi: &Parametrization<ExtElem<K>>,
    psi_sigma: &Parametrization<RootElem<K>>,
    u: &Moebius<RootElem<K>>,
    rel: &RootField<K>,
) -> bool {
    psi.components()
        .iter()
        .zip(psi_sigma.components())
        .all(|(f, g)| {
            let (num, den) = compose_unnormalized(g, u, rel);
            let fn_ = f.num().map(rel, |c| rel.embed(c));
            let fd = f.den().map(rel, |c| rel.embed(c));
            num.mul(&fd, rel) == fn_.mul(&den, rel)
        })
}

/// Numerator and denominator of `g(u(t))` after clearing `(ct + d)^deg g`.
fn compose_unnormalized<F: Field>(
    g: &RatFunc<F::Elem>,
    u: &Moebius<F::Elem>,
    k: &F,
) -> (UniPoly<F::Elem>, UniPoly<F::Elem>) {
    let top = g.degree();
    let p = UniPoly::new(vec![u.b.clone(), u.a.clone()], k);
    let q = UniPoly::new(vec![u.d.clone(), u.c.clone()], k);
    let mut p_pow = vec![UniPoly::one(k)];
    let mut q_pow = vec![UniPoly::one(k)];
    for i in 1..=top {
        p_pow.push(p_pow[i - 1].mul(&p, k));
        q_pow.push(q_pow[i - 1].mul(&q, k));
    }
    let homogenize = |f: &UniPoly<F::Elem>| {
        let mut acc = UniPoly::zero();
        for (i, c) in f.coeffs().iter().enumerate() {
            if !k.is_zero(c) {
                acc = acc.add(&p_pow[i].mul(&q_pow[top - i], k).scale(c, k), k);
            }
        }
        acc
    };
    (homogenize(g.num()), homogenize(g.den()))
}

/// Candidate parameters used by [`verify_identity_by_evaluation`]: each
/// component needs `2d + 1` agreeing finite values, and at most `d + 1`
/// candidates are lost to poles of `ψ` and of `u`.
pub fn evaluation_budget(d: usize) -> usize {
    3 * d + 2
}

/// `ψ = ψ^σ ∘ u`, by comparing values at `t = 0, 1, 2, …`.
pub fn verify_identity_by_evaluation<K: Field>(
    psi: &Parametrization<ExtElem<K>>,
    psi_sigma: &Parametrization<RootElem<K>>,
    u: &Moebius<RootElem<K>>,
    rel: &RootField<K>,
) -> Result<bool> {
    let ext = rel.base();
    let d = psi.degree().max(psi_sigma.degree());
    let needed = 2 * d + 1;
    let mut agreed = vec![0usize; psi.ambient_dim()];
    for t in 0..evaluation_budget(d) {
        if agreed.iter().all(|&a| a >= needed) {
            return Ok(true);
        }
        let t = Rational::from(t);
        let s = u.eval(&rel.from_rational(&t), rel);
        for (i, (f, g)) in psi
            .components()
            .iter()
            .zip(psi_sigma.components())
            .enumerate()
        {
            let lhs = f.eval(&ext.from_rational(&t), ext);
            let rhs = match &s {
                Value::Finite(s) => g.eval(s, rel),
                Value::Pole => g.at_infinity(rel),
            };
            match (lhs, rhs) {
                (Value::Finite(a), Value::Finite(b)) if rel.embed(&a) == b => agreed[i] += 1,
                (Value::Pole, Value::Pole) => {}
                _ => return Ok(false),
            }
        }
    }
    if agreed.iter().all(|&a| a >= needed) {
        Ok(true)
    } else {
        Err(Error::Budget(format!(
            "evaluation check needs more than {} parameters",
            evaluation_budget(d)
        )))
    }
}

/// `v(t, x) = Σ_j coeffs[j](t) x^j / den(t)` with `den` monic of degree ≤ 1.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangeTerm<E> {
    pub coeffs: Vec<UniPoly<E>>,
    pub den: UniPoly<E>,
}

/// `M(x)/(x - α)` over `K(α)`.
pub fn m_alpha_x<K: Field>(ext: &NumberField<K>) -> UniPoly<ExtElem<K>> {
    let m = ext.minpoly().map(ext, |c| ext.embed(c));
    m.exact_div(&UniPoly::linear_root(&ext.generator(), ext), ext)
        .expect("the generator is a root of its minimal polynomial")
}

/// `M(x)/(x - r)` by synthetic division, for a root `r` of `M` in `rel`.
fn cofactor_at<K: Field>(rel: &RootField<K>, r: &RootElem<K>) -> Vec<RootElem<K>> {
    let ext = rel.base();
    let m: Vec<RootElem<K>> = ext
        .minpoly()
        .coeffs()
        .iter()
        .map(|c| rel.embed(&ext.embed(c)))
        .collect();
    let n = m.len() - 1;
    let mut q = vec![rel.zero(); n];
    let mut acc = m[n].clone();
    for j in (0..n).rev() {
        q[j] = acc.clone();
        acc = rel.add(&m[j], &rel.mul(&acc, r));
    }
    debug_assert!(rel.is_zero(&acc), "r is a root of M");
    q
}

/// `v = m(r, x)/m(r, r) · u(t)` for the root `r` of `M` in `rel`.
pub fn lagrange_term_at<K: Field>(
    rel: &RootField<K>,
    r: &RootElem<K>,
    u: &Moebius<RootElem<K>>,
) -> Result<LagrangeTerm<RootElem<K>>> {
    let m = cofactor_at(rel, r);
    let at_root = m
        .iter()
        .rev()
        .fold(rel.zero(), |acc, c| rel.add(&rel.mul(&acc, r), c));
    let scale = rel.inv(&at_root)?;
    let u = u.normalized(rel);
    let lin = UniPoly::new(vec![u.b.clone(), u.a.clone()], rel);
    let den = UniPoly::new(vec![u.d.clone(), u.c.clone()], rel);
    let coeffs = m
        .iter()
        .map(|c| lin.scale(&rel.mul(c, &scale), rel))
        .collect();
    Ok(LagrangeTerm { coeffs, den })
}

/// [`lagrange_term_at`] for the class representative.
pub fn lagrange_term<K: Field>(
    class: &ConjugacyClass<K>,
    u: &Moebius<RootElem<K>>,
) -> Result<LagrangeTerm<RootElem<K>>> {
    lagrange_term_at(class.relative_field(), &class.root(), u)
}

/// Trace of `v` to `K(α)(t)[x]`, as the rational-function coefficients of
/// `x^0, …, x^{n-1}`.
pub fn trace_term<K: Field>(
    rel: &RootField<K>,
    v: &LagrangeTerm<RootElem<K>>,
) -> Result<Vec<RatFunc<ExtElem<K>>>> {
    let ext = rel.base();
    let trace_poly = |p: &UniPoly<RootElem<K>>| p.map(ext, |c| rel.trace(c));
    let down = |p: &UniPoly<RootElem<K>>| {
        p.map(ext, |c| rel.as_base(c).expect("coefficient lies in K(α)"))
    };
    if v.den.coeffs().iter().all(|c| rel.as_base(c).is_some()) {
        let den = down(&v.den);
        return v
            .coeffs
            .iter()
            .map(|p| RatFunc::new(trace_poly(p), den.clone(), ext))
            .collect();
    }
    // den = t + b with b outside K(α): Σ_σ N^σ/(t + b^σ) = trace(N g₁)/g
    let b = &v.den.coeffs()[0];
    let g = rel.charpoly(&rel.neg(b));
    let g_up = g.map(rel, |c| rel.embed(c));
    let g1 = g_up.exact_div(&v.den, rel)?;
    v.coeffs
        .iter()
        .map(|p| RatFunc::new(trace_poly(&p.mul(&g1, rel)), g.clone(), ext))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate<E> {
    /// Two well-defined parameters whose images are not on `C^σ`.
    NotAttained([Rational; 2]),
    /// A unit fitted from good samples fails `ψ = ψ^σ ∘ u`.
    IdentityFailed(Moebius<E>),
}

#[derive(Clone, Debug)]
pub enum ClassOutcome<E> {
    /// `C = C^σ` with `ψ = ψ^σ ∘ u`.
    Fixed(Moebius<E>),
    NotFixed(Certificate<E>),
}

#[derive(Clone, Debug)]
pub struct ClassReport<K: Field> {
    pub class: ConjugacyClass<K>,
    pub verdicts: Vec<ParameterVerdict<RootElem<K>>>,
    pub outcome: ClassOutcome<RootElem<K>>,
}

impl<K: Field> ClassReport<K> {
    pub fn params_tried(&self) -> usize {
        self.verdicts.len()
    }

    pub fn is_fixed(&self) -> bool {
        matches!(self.outcome, ClassOutcome::Fixed(_))
    }
}

#[derive(Clone, Debug)]
pub enum Verdict<E> {
    DefinedOverK(Parametrization<E>),
    NotDefinedOverK,
}

#[derive(Clone, Debug)]
pub struct HypercircleResult<K: Field> {
    /// Identity class first, then the factors of `M(x)/(x - α)`.
    pub classes: Vec<ClassReport<K>>,
    pub verdict: Verdict<ExtElem<K>>,
}

impl<K: Field> HypercircleResult<K> {
    pub fn phi(&self) -> Option<&Parametrization<ExtElem<K>>> {
        match &self.verdict {
            Verdict::DefinedOverK(phi) => Some(phi),
            Verdict::NotDefinedOverK => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        self.phi().is_some()
    }

    /// Classes whose automorphisms map `C` to itself, identity included.
    pub fn fixing_classes(&self) -> Vec<&ConjugacyClass<K>> {
        self.classes
            .iter()
            .filter(|r| r.is_fixed())
            .map(|r| &r.class)
            .collect()
    }

    /// The first class with `C ≠ C^σ`.
    pub fn certificate(&self) -> Option<(&ClassReport<K>, &Certificate<RootElem<K>>)> {
        self.classes.iter().find_map(|r| match &r.outcome {
            ClassOutcome::NotFixed(c) => Some((r, c)),
            ClassOutcome::Fixed(_) => None,
        })
    }

    pub fn max_params_tried(&self) -> usize {
        self.classes
            .iter()
            .map(ClassReport::params_tried)
            .max()
            .unwrap_or(0)
    }
}

/// Conjugacy classes of the conjugates of `α` over `K(α)`: the identity
/// class, then one class per irreducible factor of `M(x)/(x - α)`.
pub fn conjugacy_classes<K: FactorField>(ext: &NumberField<K>) -> Result<Vec<ConjugacyClass<K>>> {
    let mut classes = vec![ConjugacyClass::identity(ext)?];
    let m = m_alpha_x(ext);
    if m.is_constant() {
        return Ok(classes);
    }
    for (i, (f, mult)) in ext.factor(&m)?.into_iter().enumerate() {
        if mult != 1 {
            return Err(Error::Internal(
                "minimal polynomial is not separable".into(),
            ));
        }
        classes.push(ConjugacyClass::new(
            ext,
            f,
            &format!("{}_{}", ext.name(), i + 1),
        )?);
    }
    Ok(classes)
}

/// Decides whether the curve of `ψ` is defined over `K` and, if so, returns
/// the standard parametrization `φ` of its hypercircle. All classes are
/// examined, so the fixing classes are complete in the negative case.
pub fn standard_parametrization<K: GroundField>(
    psi: &Parametrization<ExtElem<K>>,
    ext: &NumberField<K>,
) -> Result<HypercircleResult<K>> {
    let n = ext.degree();
    if n < 2 {
        return Err(Error::Input("extension degree must be at least 2".into()));
    }
    let mut reports = Vec::new();
    let mut f = vec![RatFunc::from_poly(UniPoly::zero(), ext); n];
    for class in conjugacy_classes(ext)? {
        let rel = class.relative_field();
        let found = compute_u_for_class(psi, &class)?;
        let outcome = match found.search {
            Search::NotAttained(ts) => ClassOutcome::NotFixed(Certificate::NotAttained(ts)),
            Search::Unit { u, .. } => {
                let holds = class.is_identity()
                    || verify_identity(psi, &conjugate_parametrization(psi, &class), &u, rel);
                if holds {
                    let w = trace_term(rel, &lagrange_term(&class, &u)?)?;
                    for (acc, wj) in f.iter_mut().zip(&w) {
                        *acc = acc.add(wj, ext)?;
                    }
                    ClassOutcome::Fixed(u)
                } else {
                    ClassOutcome::NotFixed(Certificate::IdentityFailed(u))
                }
            }
        };
        reports.push(ClassReport {
            class,
            verdicts: found.verdicts,
            outcome,
        });
    }
    if reports.iter().any(|r| !r.is_fixed()) {
        return Ok(HypercircleResult {
            classes: reports,
            verdict: Verdict::NotDefinedOverK,
        });
    }
    let phi = Parametrization::new(f)?;
    if !sums_to_t(&phi, ext)? {
        return Err(Error::Internal(
            "standard parametrization does not satisfy Σ φ_i α^i = t".into(),
        ));
    }
    Ok(HypercircleResult {
        classes: reports,
        verdict: Verdict::DefinedOverK(phi),
    })
}

/// `Σ φ_i α^i = t` as rational functions.
pub fn sums_to_t<K: Field>(
    phi: &Parametrization<ExtElem<K>>,
    ext: &NumberField<K>,
) -> Result<bool> {
    let alpha = ext.generator();
    let mut power = ext.one();
    let mut sum = RatFunc::from_poly(UniPoly::zero(), ext);
    for c in phi.components() {
        sum = sum.add(&c.scale(&power, ext), ext)?;
        power = ext.mul(&power, &alpha);
    }
    Ok(sum.equals(&RatFunc::t(ext), ext))
}
