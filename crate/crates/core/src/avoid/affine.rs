use super::oracle::first_avoiding;
use super::{certify, Ambient, AvoidanceResult, Hypersurface, Mode, Outcome, Point, TraceStep};
use crate::algebra::{FieldElement, FiniteField, MultiPoly, UniPoly};
use crate::error::{Error, Result};

/// A point of `A^n(K)` off `{F = 0}`.
///
/// When `|K| > deg F` this follows the induction on the number of variables:
/// take the highest-index variable `X` occurring in `F`, write
/// `F = phi_0 + ... + phi_t X^t`, recursively make `phi_t` nonvanishing, then
/// pick the first value of `X` that is not a root of the resulting univariate
/// polynomial. Smaller fields fall back to scanning `K^n`.
pub fn avoid_affine(d: &Hypersurface, field: &FiniteField) -> Result<AvoidanceResult> {
    let Ambient::Affine { .. } = d.ambient() else {
        return Err(Error::InvalidShape("expected an affine hypersurface".into()));
    };
    let poly = d.poly().over(field)?;
    let result = if (field.cardinality() as u64) > d.degree() as u64 {
        let mut trace = Vec::new();
        let point = solve(&poly, field, &mut trace)?;
        AvoidanceResult {
            field: field.clone(),
            outcome: Outcome::Found(Point::Affine(point)),
            mode: Mode::Guaranteed,
            trace,
        }
    } else {
        AvoidanceResult {
            field: field.clone(),
            outcome: first_avoiding(d, field)?,
            mode: Mode::ExhaustiveFallback,
            trace: Vec::new(),
        }
    };
    certify(d, result)
}

pub(crate) fn solve(
    f: &MultiPoly,
    field: &FiniteField,
    trace: &mut Vec<TraceStep>,
) -> Result<Vec<FieldElement>> {
    let Some(var) = f.highest_var() else {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        return Ok(vec![FieldElement::ZERO; f.nvars()]);
    };
    let parts = f.decompose_top_variable(var)?;
    let lead = parts.last().expect("decomposition is nonempty");
    let mut point = solve(lead, field, trace)?;
    let restricted = UniPoly::new(
        field,
        parts.iter().map(|phi| phi.eval_unchecked(&point)).collect(),
    );
    let value = field
        .elements()
        .find(|&x| !restricted.eval(x).is_zero())
        .ok_or_else(|| {
            Error::InternalContradiction(format!(
                "univariate restriction of degree {:?} vanishes on all of {field}",
                restricted.degree()
            ))
        })?;
    trace.push(TraceStep::Assign { var, value });
    point.insert(var, value);
    Ok(point)
}
