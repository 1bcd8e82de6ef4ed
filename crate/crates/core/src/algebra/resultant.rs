//! Sylvester resultants over a field and over polynomial coefficient rings.

use std::collections::HashMap;

use super::field::{FieldElement, FiniteField};
use super::poly::{MultiPoly, UniPoly};
use crate::error::{Error, Result};

/// Sylvester matrix of `f` (degree m) and `g` (degree n), coefficients in
/// descending powers: `n` shifted rows of `f` followed by `m` shifted rows of `g`.
pub fn sylvester_matrix(f: &UniPoly, g: &UniPoly) -> Vec<Vec<FieldElement>> {
    let m = f.degree().unwrap_or(0);
    let n = g.degree().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    let desc = |p: &UniPoly| -> Vec<FieldElement> { p.coeffs().iter().rev().copied().collect() };
    let (fd, gd) = (desc(f), desc(g));
    for i in 0..n {
        let mut row = vec![FieldElement::ZERO; size];
        row[i..i + fd.len()].copy_from_slice(&fd);
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![FieldElement::ZERO; size];
        row[i..i + gd.len()].copy_from_slice(&gd);
        rows.push(row);
    }
    rows
}

/// Determinant by Gaussian elimination.
pub fn determinant(field: &FiniteField, matrix: &[Vec<FieldElement>]) -> FieldElement {
    let n = matrix.len();
    let mut a: Vec<Vec<FieldElement>> = matrix.to_vec();
    let mut det = FieldElement::ONE;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return FieldElement::ZERO;
        };
        if piv != col {
            a.swap(piv, col);
            det = field.neg(det);
        }
        let pv = a[col][col];
        det = field.mul(det, pv);
        let inv = field.inv(pv).expect("pivot is nonzero");
        for r in col + 1..n {
            let factor = field.mul(a[r][col], inv);
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let t = field.mul(factor, a[col][c]);
                a[r][c] = field.sub(a[r][c], t);
            }
        }
    }
    det
}

/// Rank by Gaussian elimination.
pub fn rank(field: &FiniteField, matrix: &[Vec<FieldElement>]) -> usize {
    let mut a = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let inv = field.inv(a[r][c]).unwrap();
        for i in r + 1..rows {
            let factor = field.mul(a[i][c], inv);
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                let t = field.mul(factor, a[r][j]);
                a[i][j] = field.sub(a[i][j], t);
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Resultant of two univariate polynomials as the Sylvester determinant.
///
/// A zero polynomial against a nonzero constant gives 1 (empty matrix);
/// against anything else it gives 0.
pub fn sylvester_resultant(f: &UniPoly, g: &UniPoly) -> Result<FieldElement> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch);
    }
    match (f.degree(), g.degree()) {
        (None, None) => Err(Error::BothZero),
        (None, Some(0)) | (Some(0), None) => Ok(FieldElement::ONE),
        (None, _) | (_, None) => Ok(FieldElement::ZERO),
        _ => Ok(determinant(f.field(), &sylvester_matrix(f, g))),
    }
}

/// Resultant of `f = sum f_i u^i` and `g = sum g_i u^i` with polynomial
/// coefficients and *formal* degrees `len - 1` (leading coefficients may vanish).
///
/// The determinant is expanded row by row over subsets of used columns, which
/// needs no division in the coefficient ring.
pub fn formal_resultant(f: &[MultiPoly], g: &[MultiPoly]) -> Result<MultiPoly> {
    let lead = f.first().or(g.first()).ok_or(Error::BothZero)?;
    let (field, nvars) = (lead.field().clone(), lead.nvars());
    let m = f.len().saturating_sub(1);
    let n = g.len().saturating_sub(1);
    let size = m + n;
    if size == 0 {
        return Ok(MultiPoly::one(&field, nvars));
    }
    if size > 24 {
        return Err(Error::InvalidShape(format!(
            "Sylvester matrix of size {size} is too large"
        )));
    }
    let zero = MultiPoly::zero(&field, nvars);
    let entry = |row: usize, col: usize| -> &MultiPoly {
        let (coeffs, shift, deg) = if row < n { (f, row, m) } else { (g, row - n, n) };
        if col < shift || col > shift + deg {
            return &zero;
        }
        // descending powers
        &coeffs[deg - (col - shift)]
    };
    let mut layer: HashMap<u32, MultiPoly> = HashMap::new();
    layer.insert(0, MultiPoly::one(&field, nvars));
    for row in 0..size {
        let mut next: HashMap<u32, MultiPoly> = HashMap::new();
        for (&mask, acc) in &layer {
            for col in 0..size {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let a = entry(row, col);
                if a.is_zero() {
                    continue;
                }
                let above = (mask >> (col + 1)).count_ones();
                let mut term = acc.mul(a);
                if above % 2 == 1 {
                    term = term.neg();
                }
                let slot = next
                    .entry(mask | (1 << col))
                    .or_insert_with(|| MultiPoly::zero(&field, nvars));
                *slot = slot.add(&term);
            }
        }
        next.retain(|_, v| !v.is_zero());
        layer = next;
    }
    let full = if size == 32 { u32::MAX } else { (1u32 << size) - 1 };
    Ok(layer.remove(&full).unwrap_or(zero.clone()))
}
