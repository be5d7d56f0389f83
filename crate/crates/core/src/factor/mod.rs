//! Univariate factorization over ℚ (Zassenhaus) and over number fields
//! (Trager's norm method, recursively over any factorable base).

mod modp;
mod trager;
mod zassenhaus;

use rug::Integer;

use crate::error::Result;
use crate::field::{Field, Rationals};
use crate::numfield::NumberField;
use crate::poly::UniPoly;
use crate::rational::Rational;

pub use trager::MAX_SHIFTS;

/// A field whose univariate polynomials we can factor.
pub trait FactorField: Field {
    /// Monic irreducible factors of a monic squarefree polynomial.
    fn factor_squarefree(&self, f: &UniPoly<Self::Elem>) -> Result<Vec<UniPoly<Self::Elem>>>;

    /// Monic irreducible factors with multiplicities.
    fn factor(&self, f: &UniPoly<Self::Elem>) -> Result<Vec<(UniPoly<Self::Elem>, usize)>> {
        let mut out = Vec::new();
        for (part, mult) in f.squarefree_decomposition(self)? {
            for g in self.factor_squarefree(&part)? {
                out.push((g, mult));
            }
        }
        Ok(out)
    }

    fn is_irreducible(&self, f: &UniPoly<Self::Elem>) -> Result<bool> {
        if f.deg0() == 0 {
            return Ok(false);
        }
        let fs = self.factor(f)?;
        Ok(fs.len() == 1 && fs[0].1 == 1)
    }
}

impl FactorField for Rationals {
    fn factor_squarefree(&self, f: &UniPoly<Rational>) -> Result<Vec<UniPoly<Rational>>> {
        if f.deg0() <= 1 {
            return Ok(if f.deg0() == 1 {
                vec![f.monic(self)?]
            } else {
                Vec::new()
            });
        }
        let z = zassenhaus::primitive_part(&zassenhaus::integer_multiple(f.coeffs()));
        let mut out = zassenhaus::factor_primitive_squarefree(&z)
            .into_iter()
            .map(|g| to_rational_monic(&g))
            .collect::<Result<Vec<_>>>()?;
        out.sort_by_key(|g| g.deg0());
        Ok(out)
    }
}

impl<B: FactorField> FactorField for NumberField<B> {
    fn factor_squarefree(&self, f: &UniPoly<Self::Elem>) -> Result<Vec<UniPoly<Self::Elem>>> {
        trager::factor_squarefree(f, self)
    }
}

fn to_rational_monic(g: &[Integer]) -> Result<UniPoly<Rational>> {
    let p = UniPoly::new(g.iter().map(Rational::from).collect(), &Rationals);
    Ok(p.monic(&Rationals)?)
}

/// Monic irreducible factors over ℚ with multiplicities. The input equals
/// `lc(f)` times the product of the factors raised to their multiplicities.
pub fn factor_rational(f: &UniPoly<Rational>) -> Result<Vec<(UniPoly<Rational>, usize)>> {
    Rationals.factor(f)
}
