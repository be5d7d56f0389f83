//! Trager's reduction: factor a squarefree `f` over `B(γ)` by factoring the
//! norm of a shifted copy `f(x - kγ)` over `B`.

use super::FactorField;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::numfield::{NFElement, NumberField};
use crate::poly::UniPoly;

/// Shift budget; only finitely many shifts give a non-squarefree norm.
pub const MAX_SHIFTS: usize = 64;

fn shift_sequence() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..).flat_map(|k| [k, -k]))
}

/// `N(x) = Norm_{B(γ)/B} g(x)`, recovered by evaluating at `deg N + 1`
/// integer points and interpolating over `B`.
pub(super) fn norm_poly<B: Field>(
    g: &UniPoly<NFElement<B::Elem>>,
    ext: &NumberField<B>,
) -> Result<UniPoly<B::Elem>> {
    let base = ext.base();
    let deg = g.deg0() * ext.degree();
    let xs: Vec<B::Elem> = (0..=deg as i64).map(|i| base.from_i64(i)).collect();
    let ys = xs
        .iter()
        .map(|x| ext.norm(&g.eval(&ext.embed(x), ext)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(UniPoly::interpolate(&xs, &ys, base)?)
}

pub(super) fn factor_squarefree<B: FactorField>(
    f: &UniPoly<NFElement<B::Elem>>,
    ext: &NumberField<B>,
) -> Result<Vec<UniPoly<NFElement<B::Elem>>>> {
    let f = f.monic(ext)?;
    match f.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(1) => return Ok(vec![f]),
        _ => {}
    }
    let base = ext.base();
    let gamma = ext.generator();
    for k in shift_sequence().take(MAX_SHIFTS) {
        let kg = ext.mul(&ext.from_i64(k), &gamma);
        // g(x) = f(x - kγ)
        let g = f.compose(&UniPoly::new(vec![ext.neg(&kg), ext.one()], ext), ext);
        let norm = norm_poly(&g, ext)?;
        if norm.gcd(&norm.derivative(base), base)?.deg0() != 0 {
            continue;
        }
        let back = UniPoly::new(vec![kg.clone(), ext.one()], ext);
        let mut out = Vec::new();
        for h in base.factor_squarefree(&norm)? {
            let lifted = h.map(ext, |c| ext.embed(c));
            let common = g.gcd(&lifted, ext)?;
            if common.deg0() > 0 {
                // undo the shift: x -> x + kγ
                out.push(common.compose(&back, ext).monic(ext)?);
            }
        }
        let total: usize = out.iter().map(|h| h.deg0()).sum();
        if total != f.deg0() {
            return Err(Error::Internal(
                "norm factors do not account for the input degree".into(),
            ));
        }
        out.sort_by_key(|h| h.deg0());
        return Ok(out);
    }
    Err(Error::ShiftSearchExhausted(MAX_SHIFTS))
}
