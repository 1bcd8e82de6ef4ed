use super::oracle::first_avoiding;
use super::space::Space;
use super::{
    certify, Ambient, AvoidanceResult, Hypersurface, Mode, Outcome, Point, ProjectivePoint,
    TraceStep,
};
use crate::algebra::{FieldElement, FiniteField, MultiPoly};
use crate::error::{Error, Result};

/// A point of `P^n(K)` off `{F = 0}`.
///
/// When `|K| >= deg F`: on `P^1` scan the `q + 1` points; otherwise walk the
/// pencil of hyperplanes `X0 = lambda X1` (`lambda` in enumeration order) and
/// finally `X1 = 0` through the centre `X0 = X1 = 0`, restrict `F` to the
/// first member on which it does not vanish identically, and recurse on that
/// hyperplane. At most `deg F` members can be skipped.
pub fn avoid_projective(d: &Hypersurface, field: &FiniteField) -> Result<AvoidanceResult> {
    let Ambient::Projective { .. } = d.ambient() else {
        return Err(Error::InvalidShape("expected a projective hypersurface".into()));
    };
    let poly = d.poly().over(field)?;
    let result = if field.cardinality() as u64 >= d.degree() as u64 {
        let mut trace = Vec::new();
        let coords = solve(&poly, field, 0, &mut trace)?.ok_or_else(|| {
            Error::InternalContradiction("pencil search exhausted in guaranteed mode".into())
        })?;
        AvoidanceResult {
            field: field.clone(),
            outcome: Outcome::Found(Point::Projective(ProjectivePoint::new(field, coords)?)),
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

/// Homogeneous coordinates of a point with `f != 0`, if the recursion finds one.
pub(crate) fn solve(
    f: &MultiPoly,
    field: &FiniteField,
    level: usize,
    trace: &mut Vec<TraceStep>,
) -> Result<Option<Vec<FieldElement>>> {
    let n = f.nvars();
    match n {
        0 => return Err(Error::InvalidShape("empty coordinate list".into())),
        1 => {
            return Ok((!f.eval_unchecked(&[FieldElement::ONE]).is_zero())
                .then(|| vec![FieldElement::ONE]))
        }
        2 => {
            let line = Space(Ambient::Projective { n: 1 });
            return Ok(line.points(field).find_map(|p| match p {
                Point::Projective(p) if !f.eval_unchecked(p.coords()).is_zero() => {
                    Some(p.coords().to_vec())
                }
                _ => None,
            }));
        }
        _ => {}
    }
    let y = |i: usize| MultiPoly::var(field, n - 1, i);
    let members = field.elements().map(Some).chain(std::iter::once(None));
    for lambda in members {
        // images of X0..X{n-1} in terms of the hyperplane's coordinates
        let images: Vec<MultiPoly> = match lambda {
            Some(l) => std::iter::once(y(0).scale(l))
                .chain((1..n).map(|i| y(i - 1)))
                .collect(),
            None => [y(0), MultiPoly::zero(field, n - 1)]
                .into_iter()
                .chain((2..n).map(|i| y(i - 1)))
                .collect(),
        };
        let restricted = f.compose(&images)?;
        if restricted.is_zero() {
            continue;
        }
        trace.push(TraceStep::Pencil { level, lambda });
        let Some(sub) = solve(&restricted, field, level + 1, trace)? else {
            trace.pop();
            continue;
        };
        let lifted = match lambda {
            Some(l) => std::iter::once(field.mul(l, sub[0]))
                .chain(sub.iter().copied())
                .collect(),
            None => {
                let mut v = sub.clone();
                v.insert(1, FieldElement::ZERO);
                v
            }
        };
        return Ok(Some(lifted));
    }
    Ok(None)
}
