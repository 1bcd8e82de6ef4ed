//! Random instances for sweeps and demos. Every generator draws from a caller
//! supplied RNG, so a seeded generator gives reproducible instances.

use rand::Rng;

use crate::algebra::{FieldElement, FiniteField, MultiPoly};
use crate::curvepoint::{CurveDivisor, PlaneCurve};

fn nonzero(rng: &mut impl Rng, field: &FiniteField) -> FieldElement {
    FieldElement::from_index(rng.gen_range(1..field.cardinality()))
}

/// Exponent vector of total degree `deg`, one unit at a time.
fn monomial(rng: &mut impl Rng, nvars: usize, deg: u32) -> Vec<u32> {
    let mut e = vec![0; nvars];
    for _ in 0..deg {
        e[rng.gen_range(0..nvars)] += 1;
    }
    e
}

/// A nonzero polynomial with total degree at most `max_deg` and at most
/// `max_terms` terms.
pub fn random_poly(
    rng: &mut impl Rng,
    field: &FiniteField,
    nvars: usize,
    max_deg: u32,
    max_terms: usize,
) -> MultiPoly {
    loop {
        let count = rng.gen_range(1..=max_terms.max(1));
        let terms: Vec<_> = (0..count)
            .map(|_| {
                let deg = rng.gen_range(0..=max_deg);
                (monomial(rng, nvars, deg), nonzero(rng, field))
            })
            .collect();
        let p = MultiPoly::from_terms(field, nvars, terms).expect("arity matches");
        if !p.is_zero() {
            return p;
        }
    }
}

/// A nonzero form of degree exactly `deg`.
pub fn random_form(
    rng: &mut impl Rng,
    field: &FiniteField,
    nvars: usize,
    deg: u32,
    max_terms: usize,
) -> MultiPoly {
    loop {
        let count = rng.gen_range(1..=max_terms.max(1));
        let terms: Vec<_> = (0..count)
            .map(|_| (monomial(rng, nvars, deg), nonzero(rng, field)))
            .collect();
        let p = MultiPoly::from_terms(field, nvars, terms).expect("arity matches");
        if !p.is_zero() {
            return p;
        }
    }
}

/// A squarefree plane curve of degree `1..=max_deg`.
pub fn random_plane_curve(rng: &mut impl Rng, field: &FiniteField, max_deg: u32) -> PlaneCurve {
    loop {
        let e = rng.gen_range(1..=max_deg);
        if let Ok(x) = PlaneCurve::new(random_form(rng, field, 3, e, 6)) {
            return x;
        }
    }
}

/// A divisor on `curve` cut by a form of degree `0..=max_deg`.
pub fn random_divisor(rng: &mut impl Rng, curve: &PlaneCurve, max_deg: u32) -> CurveDivisor {
    loop {
        let deg = rng.gen_range(0..=max_deg);
        if let Ok(d) = CurveDivisor::new(curve, random_form(rng, curve.field(), 3, deg, 6)) {
            return d;
        }
    }
}
