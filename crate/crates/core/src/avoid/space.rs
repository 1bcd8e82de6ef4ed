//! Canonical enumeration of the rational points of an ambient space.
//!
//! * affine tuples: lexicographic, `x0` most significant;
//! * projective points: normalized representatives in lexicographic order, so
//!   `(0:...:0:1)` comes first and `(1:0:...:0)` starts the last block;
//! * Grassmannian points: reduced row echelon matrices, grouped by pivot
//!   column set in lexicographic order (the open cell `[I | A]` first), free
//!   entries row-major and lexicographic within a group.

use super::plucker::column_sets;
use super::{Ambient, GrassmannianPoint, Point, ProjectivePoint};
use crate::algebra::{FieldElement, FiniteField};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Space(pub Ambient);

fn digits(mut idx: u128, q: u128, len: usize) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::ZERO; len];
    for slot in out.iter_mut().rev() {
        *slot = FieldElement::from_index((idx % q) as u32);
        idx /= q;
    }
    out
}

fn qpow(q: u128, e: usize) -> u128 {
    (0..e).fold(1u128, |acc, _| acc.saturating_mul(q))
}

/// Free (non-pivot, right of pivot) positions of an RREF with the given pivots.
fn free_positions(pivots: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (row, &p) in pivots.iter().enumerate() {
        for col in p + 1..n {
            if !pivots.contains(&col) {
                out.push((row, col));
            }
        }
    }
    out
}

impl Space {
    pub fn point_count(&self, q: u32) -> u128 {
        let q = q as u128;
        match self.0 {
            Ambient::Affine { n } => qpow(q, n),
            Ambient::Projective { n } => (0..=n).map(|i| qpow(q, i)).fold(0, u128::saturating_add),
            Ambient::Grassmannian { m, n } => column_sets(m, n)
                .iter()
                .map(|p| qpow(q, free_positions(p, n).len()))
                .fold(0, u128::saturating_add),
        }
    }

    /// The `idx`-th point in canonical order.
    pub fn point_at(&self, field: &FiniteField, mut idx: u128) -> Point {
        let q = field.cardinality() as u128;
        match self.0 {
            Ambient::Affine { n } => Point::Affine(digits(idx, q, n)),
            Ambient::Projective { n } => {
                for lead in (0..=n).rev() {
                    let tail = n - lead;
                    let block = qpow(q, tail);
                    if idx < block {
                        let mut c = vec![FieldElement::ZERO; lead];
                        c.push(FieldElement::ONE);
                        c.extend(digits(idx, q, tail));
                        return Point::Projective(ProjectivePoint { coords: c });
                    }
                    idx -= block;
                }
                panic!("projective index out of range")
            }
            Ambient::Grassmannian { m, n } => {
                for pivots in column_sets(m, n) {
                    let free = free_positions(&pivots, n);
                    let block = qpow(q, free.len());
                    if idx < block {
                        let vals = digits(idx, q, free.len());
                        let mut mat = vec![vec![FieldElement::ZERO; n]; m];
                        for (row, &p) in pivots.iter().enumerate() {
                            mat[row][p] = FieldElement::ONE;
                        }
                        for (&(r, c), &v) in free.iter().zip(&vals) {
                            mat[r][c] = v;
                        }
                        return Point::Grassmannian(
                            GrassmannianPoint::new(field, mat).expect("RREF has full rank"),
                        );
                    }
                    idx -= block;
                }
                panic!("grassmannian index out of range")
            }
        }
    }

    pub fn points<'a>(&'a self, field: &'a FiniteField) -> impl Iterator<Item = Point> + 'a {
        (0..self.point_count(field.cardinality())).map(move |i| self.point_at(field, i))
    }
}
