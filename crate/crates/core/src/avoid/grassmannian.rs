use super::affine;
use super::oracle::first_avoiding;
use super::plucker::cell_minors;
use super::{
    certify, Ambient, AvoidanceResult, GrassmannianPoint, Hypersurface, Mode, Outcome, Point,
};
use crate::algebra::{FieldElement, FiniteField, MultiPoly};
use crate::error::{Error, Result};

fn shape(d: &Hypersurface) -> Result<(usize, usize)> {
    match d.ambient() {
        Ambient::Grassmannian { m, n } => Ok((m, n)),
        _ => Err(Error::InvalidShape("expected a Grassmannian hypersurface".into())),
    }
}

/// Pulls `D` back along the open cell `A^{m(n-m)} -> Grass(m, n)`,
/// `(a_ij) |-> span [I_m | (a_ij)]`. Variable `i (n - m) + (j - m)` is `a_ij`.
pub fn grass_cell_pullback(d: &Hypersurface) -> Result<MultiPoly> {
    let (m, n) = shape(d)?;
    let minors = cell_minors(d.poly().field(), m, n);
    let pulled = d.poly().compose(&minors)?;
    if pulled.is_zero() {
        return Err(Error::CellContained);
    }
    Ok(pulled)
}

fn cell_matrix(m: usize, n: usize, entries: &[FieldElement]) -> Vec<Vec<FieldElement>> {
    (0..m)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if c < m {
                        if r == c {
                            FieldElement::ONE
                        } else {
                            FieldElement::ZERO
                        }
                    } else {
                        entries[r * (n - m) + (c - m)]
                    }
                })
                .collect()
        })
        .collect()
}

/// A point of `Grass(m, n)(K)` off `D`.
///
/// When `|K| > m deg D` the pullback to the open cell has degree at most
/// `m deg D`, and the affine search on it yields a cell matrix. Otherwise every
/// reduced row echelon matrix is scanned, so a negative answer covers the
/// whole Grassmannian and not just the cell.
pub fn avoid_grassmannian(d: &Hypersurface, field: &FiniteField) -> Result<AvoidanceResult> {
    let (m, n) = shape(d)?;
    let bound = m as u64 * d.degree() as u64;
    let result = if field.cardinality() as u64 > bound {
        let d_here = Hypersurface::grassmannian(d.poly().over(field)?, m, n)?;
        let pulled = grass_cell_pullback(&d_here)?;
        let mut trace = Vec::new();
        let entries = affine::solve(&pulled, field, &mut trace)?;
        let point = GrassmannianPoint::new(field, cell_matrix(m, n, &entries))?;
        AvoidanceResult {
            field: field.clone(),
            outcome: Outcome::Found(Point::Grassmannian(point)),
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_field, parse_polynomial};
    use crate::avoid::satisfies_three_term_relations;

    fn hyp(text: &str, f: &FiniteField, m: usize, n: usize) -> Hypersurface {
        let vars = crate::avoid::binomial(n, m);
        Hypersurface::grassmannian(parse_polynomial(text, f, Some(vars)).unwrap(), m, n).unwrap()
    }

    fn cell_entries(r: &AvoidanceResult, m: usize) -> Vec<Vec<u32>> {
        match r.point() {
            Some(Point::Grassmannian(g)) => g
                .matrix()
                .iter()
                .map(|row| row[m..].iter().map(|x| x.index()).collect())
                .collect(),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pullback_examples() {
        let f5 = make_field(5, 1).unwrap();
        let p = grass_cell_pullback(&hyp("x0", &f5, 2, 4)).unwrap();
        assert_eq!(p, MultiPoly::one(&f5, 4));
        let p = grass_cell_pullback(&hyp("x5", &f5, 2, 4)).unwrap();
        // a02 a13 - a03 a12 with variables (a02, a03, a12, a13)
        assert_eq!(p.to_string(), "x0*x3 + 4*x1*x2");
        assert_eq!(p.total_degree(), 2);
    }

    #[test]
    fn cell_contained_detected() {
        // the Plücker relation vanishes on all of Grass(2,4)
        let f5 = make_field(5, 1).unwrap();
        let d = hyp("x0*x5 + 4*x1*x4 + x2*x3", &f5, 2, 4);
        assert_eq!(grass_cell_pullback(&d), Err(Error::CellContained));
    }

    #[test]
    fn avoid_examples() {
        let f3 = make_field(3, 1).unwrap();
        let r = avoid_grassmannian(&hyp("x5", &f3, 2, 4), &f3).unwrap();
        assert_eq!(r.mode, Mode::Guaranteed);
        assert_eq!(cell_entries(&r, 2), vec![vec![1, 0], vec![0, 1]]);
        if let Some(Point::Grassmannian(g)) = r.point() {
            assert!(satisfies_three_term_relations(&f3, 2, 4, g.plucker()));
        }

        let f2 = make_field(2, 1).unwrap();
        let r = avoid_grassmannian(&hyp("x0", &f2, 2, 4), &f2).unwrap();
        assert_eq!(cell_entries(&r, 2), vec![vec![0, 0], vec![0, 0]]);

        let r = avoid_grassmannian(&hyp("x1", &f3, 1, 2), &f3).unwrap();
        assert_eq!(cell_entries(&r, 1), vec![vec![1]]);
    }

    #[test]
    fn small_field_scans_all_cells() {
        // p01 * p23 over F_2: m deg = 4 >= 2, so fall back; the open cell point
        // with det A != 0 still avoids D
        let f2 = make_field(2, 1).unwrap();
        let r = avoid_grassmannian(&hyp("x0*x5", &f2, 2, 4), &f2).unwrap();
        assert_eq!(r.mode, Mode::ExhaustiveFallback);
        assert!(r.point().is_some());
    }
}
