//! The minimum field of definition: the subfield of `ℚ(α)` fixed by the
//! conjugations that map the curve to itself.

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::linalg;
use crate::numfield::{AlgElem, AlgField, ConjugacyClass, NFElement, NumberField};
use crate::poly::UniPoly;
use crate::ratfunc::Parametrization;
use crate::rational::Rational;

/// A subfield `L` of `ℚ(α)` given as a `ℚ`-subspace.
#[derive(Clone, Debug)]
pub struct FixedField {
    /// `ℚ`-basis of `L` in reduced echelon form, `1` first.
    pub basis: Vec<AlgElem>,
    /// A generator of `L` over `ℚ`.
    pub primitive: AlgElem,
    pub primitive_minpoly: UniPoly<Rational>,
    /// `[ℚ(α) : L]`.
    pub relative_degree: usize,
}

impl FixedField {
    pub fn degree(&self) -> usize {
        self.basis.len()
    }
}

/// Rows of the `ℚ`-linear conditions on `x = Σ x_j α^j` expressing
/// `σ_i(x) = x`, i.e. `Σ x_j (α_i^j - α^j) = 0` in `ℚ(α)(α_i)`, flattened to
/// rational coordinates.
pub fn invariance_system(class: &ConjugacyClass<Rationals>) -> Vec<Vec<Rational>> {
    let ext = class.ext();
    let rel = class.relative_field();
    let n = ext.degree();
    let root = class.root();
    let alpha = rel.embed(&ext.generator());
    let mut cols = Vec::with_capacity(n);
    let (mut p, mut q) = (rel.one(), rel.one());
    for _ in 0..n {
        let diff = rel.sub(&p, &q);
        cols.push(
            diff.coords()
                .iter()
                .flat_map(|c| c.coords().iter().cloned())
                .collect::<Vec<_>>(),
        );
        p = rel.mul(&p, &root);
        q = rel.mul(&q, &alpha);
    }
    let rows = cols[0].len();
    (0..rows)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect::<Vec<_>>())
        .filter(|r| r.iter().any(|x| !Rationals.is_zero(x)))
        .collect()
}

/// Intersection of the fixed spaces of `fixing_classes`, with a primitive
/// element and its minimal polynomial.
pub fn minimum_field(
    ext: &AlgField,
    fixing_classes: &[&ConjugacyClass<Rationals>],
) -> Result<FixedField> {
    let n = ext.degree();
    let system: Vec<Vec<Rational>> = fixing_classes
        .iter()
        .flat_map(|c| invariance_system(c))
        .collect();
    let mut kernel = linalg::kernel(&system, n, &Rationals)?;
    // reduced echelon basis, pivots read from the constant term upward
    for v in &mut kernel {
        v.reverse();
    }
    linalg::rref(&mut kernel, n, &Rationals)?;
    for v in &mut kernel {
        v.reverse();
    }
    kernel.reverse();
    let basis: Vec<AlgElem> = kernel
        .into_iter()
        .map(|v| ext.element(v))
        .collect::<Result<_>>()?;
    let dim = basis.len();
    if dim == 0 || !n.is_multiple_of(dim) {
        return Err(Error::Internal(format!(
            "fixed space of dimension {dim} in a field of degree {n}"
        )));
    }
    let (primitive, primitive_minpoly) = primitive_element(ext, &basis)?;
    Ok(FixedField {
        basis,
        primitive,
        primitive_minpoly,
        relative_degree: n / dim,
    })
}

/// Tries the basis elements, then integer combinations `Σ c_i b_i` with
/// growing coefficients. An element generates the span iff the squarefree
/// part of its characteristic polynomial has degree `dim`.
fn primitive_element(ext: &AlgField, basis: &[AlgElem]) -> Result<(AlgElem, UniPoly<Rational>)> {
    let dim = basis.len();
    let test = |x: &AlgElem| -> Result<Option<UniPoly<Rational>>> {
        let m = ext.charpoly(x).squarefree_part(&Rationals)?;
        Ok((m.deg0() == dim).then_some(m))
    };
    if dim == 1 {
        return Ok((
            ext.one(),
            UniPoly::new(vec![Rationals.from_i64(-1), Rationals.one()], &Rationals),
        ));
    }
    for b in basis.iter().rev() {
        if let Some(m) = test(b)? {
            return Ok((b.clone(), m));
        }
    }
    for bound in 1..=64i64 {
        let mut coeffs = vec![0i64; dim];
        loop {
            if coeffs.iter().any(|c| c.abs() == bound) {
                let x = basis.iter().zip(&coeffs).fold(ext.zero(), |acc, (b, &c)| {
                    ext.add(&acc, &ext.mul(b, &ext.from_i64(c)))
                });
                if let Some(m) = test(&x)? {
                    return Ok((x, m));
                }
            }
            // odometer over [-bound, bound]^dim
            let mut i = 0;
            while i < dim && coeffs[i] == bound {
                coeffs[i] = -bound;
                i += 1;
            }
            if i == dim {
                break;
            }
            coeffs[i] += 1;
        }
    }
    Err(Error::Internal("no primitive element found".into()))
}

/// `ℚ(α)` rewritten as `L(α) = L[x]/(μ)` with `L = ℚ(γ)`, `γ` the primitive
/// element of a fixed field and `μ` the minimal polynomial of `α` over `L`.
#[derive(Clone, Debug)]
pub struct Descent {
    pub lower: AlgField,
    pub tower: NumberField<AlgField>,
    /// `ℚ(α)`-coordinates of `γ^i α^j` as columns, index `j·[L:ℚ] + i`.
    columns: Vec<Vec<Rational>>,
}

/// Presents `ℚ(α)` over the fixed field `l`; `[ℚ(α) : L] ≥ 2` is required so
/// that the tower is a proper extension.
pub fn descend(ext: &AlgField, l: &FixedField) -> Result<Descent> {
    let r = l.relative_degree;
    if r < 2 {
        return Err(Error::Input("the fixed field is the whole field".into()));
    }
    let lower = NumberField::new(Rationals, "g", l.primitive_minpoly.monic(&Rationals)?)?;
    let alpha = ext.generator();
    let mut columns = Vec::with_capacity(ext.degree());
    let mut a_pow = ext.one();
    for _ in 0..r {
        let mut x = a_pow.clone();
        for _ in 0..lower.degree() {
            columns.push(x.coords().to_vec());
            x = ext.mul(&x, &l.primitive);
        }
        a_pow = ext.mul(&a_pow, &alpha);
    }
    // α^r = Σ_j ℓ_j α^j gives μ = x^r - Σ_j ℓ_j x^j
    let top = coordinates(&lower, &columns, &a_pow)?;
    let mut mu: Vec<AlgElem> = top.iter().map(|c| lower.neg(c)).collect();
    mu.push(lower.one());
    let tower = NumberField::new(lower.clone(), ext.name(), UniPoly::new(mu, &lower))?;
    Ok(Descent {
        lower,
        tower,
        columns,
    })
}

/// `a = Σ_j ℓ_j α^j` with `ℓ_j ∈ L`, if `a` has such an expression.
fn coordinates(lower: &AlgField, columns: &[Vec<Rational>], a: &AlgElem) -> Result<Vec<AlgElem>> {
    let n = columns.len();
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    let x = linalg::solve(&rows, a.coords(), &Rationals)?
        .ok_or_else(|| Error::Internal("powers of the primitive element do not span".into()))?;
    x.chunks(lower.degree())
        .map(|c| lower.element(c.to_vec()))
        .collect()
}

impl Descent {
    pub fn lower_elem(&self, a: &AlgElem) -> Result<NFElement<AlgElem>> {
        self.tower
            .element(coordinates(&self.lower, &self.columns, a)?)
    }

    /// `ψ` with coefficients rewritten over `L(α)`.
    pub fn lower_parametrization(
        &self,
        psi: &Parametrization<AlgElem>,
    ) -> Result<Parametrization<NFElement<AlgElem>>> {
        let mut failure = None;
        let out = psi.map(&self.tower, |c| {
            self.lower_elem(c).unwrap_or_else(|e| {
                failure.get_or_insert(e);
                self.tower.zero()
            })
        });
        failure.map_or(Ok(out), Err)
    }
}
