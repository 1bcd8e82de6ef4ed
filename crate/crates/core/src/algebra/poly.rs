//! Sparse multivariate and dense univariate polynomials over a [`FiniteField`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::embed::Embedding;
use super::field::{FieldElement, FiniteField};
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
pub type Exponents = Vec<u32>;

/// Sparse polynomial in `x0, ..., x{n-1}`.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration is in
/// lexicographic order with `x0` most significant and zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: FiniteField,
    nvars: usize,
    terms: BTreeMap<Exponents, FieldElement>,
}

impl MultiPoly {
    pub fn zero(field: &FiniteField, nvars: usize) -> Self {
        MultiPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &FiniteField, nvars: usize, c: FieldElement) -> Self {
        let mut p = Self::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(field: &FiniteField, nvars: usize) -> Self {
        Self::constant(field, nvars, FieldElement::ONE)
    }

    pub fn var(field: &FiniteField, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(field, nvars);
        p.terms.insert(e, FieldElement::ONE);
        p
    }

    /// Sums the given terms; duplicates combine and zeros are dropped.
    pub fn from_terms<I>(field: &FiniteField, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, FieldElement)>,
    {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: e.len(),
                });
            }
            if !field.contains(c) {
                return Err(Error::FieldMismatch);
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let f = &self.field;
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = f.add(*v, c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, FieldElement)> + '_ {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> FieldElement {
        self.terms.get(e).copied().unwrap_or_default()
    }

    /// Total degree; `0` for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree() == 0
    }

    /// Constant term, i.e. the value at the origin.
    pub fn constant_term(&self) -> FieldElement {
        self.coefficient(&vec![0; self.nvars])
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn occurs(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    /// Highest-index variable that actually occurs.
    pub fn highest_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.occurs(v))
    }

    fn check_same_ring(&self, other: &Self) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        assert_eq!(self.nvars, other.nvars, "polynomials in different rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_ring(other);
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        MultiPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, &c)| (e.clone(), f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field, self.nvars);
        }
        let f = &self.field;
        MultiPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, &x)| (e.clone(), f.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_ring(other);
        let f = &self.field;
        let mut out = Self::zero(f, self.nvars);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, f.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.field, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        if point.iter().any(|&x| !self.field.contains(x)) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        self.terms.iter().fold(FieldElement::ZERO, |acc, (e, &c)| {
            let m = e
                .iter()
                .zip(point)
                .filter(|(&k, _)| k > 0)
                .fold(c, |m, (&k, &x)| f.mul(m, f.pow(x, k as u64)));
            f.add(acc, m)
        })
    }

    /// Writes `self = phi_0 + phi_1 x_var + ... + phi_t x_var^t` and returns the
    /// `phi_i` as polynomials in the remaining `n - 1` variables.
    pub fn decompose_top_variable(&self, var: usize) -> Result<Vec<MultiPoly>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if var >= self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: var + 1,
            });
        }
        let t = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(&self.field, self.nvars - 1); t + 1];
        for (e, &c) in &self.terms {
            let mut rest = e.clone();
            let k = rest.remove(var) as usize;
            out[k].add_term(rest, c);
        }
        Ok(out)
    }

    /// Inverse of [`decompose_top_variable`](Self::decompose_top_variable).
    pub fn reassemble(parts: &[MultiPoly], var: usize) -> Result<Self> {
        let first = parts.first().ok_or(Error::ZeroPolynomial)?;
        let nvars = first.nvars + 1;
        let mut out = Self::zero(&first.field, nvars);
        for (k, phi) in parts.iter().enumerate() {
            for (e, &c) in &phi.terms {
                let mut full = e.clone();
                full.insert(var, k as u32);
                out.add_term(full, c);
            }
        }
        Ok(out)
    }

    /// Substitutes `x_i := images[i]`; all images must share one ring.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let (field, m) = match images.first() {
            Some(p) => (p.field.clone(), p.nvars),
            None => (self.field.clone(), 0),
        };
        if field != self.field {
            return Err(Error::FieldMismatch);
        }
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(&field, m), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(&field, m);
        for (e, &c) in &self.terms {
            let mut term = MultiPoly::constant(&field, m, c);
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if k > 0 {
                    term = term.mul(&powers[i][k]);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Fixes `x_var := value`; the variable stays in the ring but no longer occurs.
    pub fn substitute(&self, var: usize, value: FieldElement) -> MultiPoly {
        let f = &self.field;
        let mut out = Self::zero(f, self.nvars);
        for (e, &c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[var], 0);
            out.add_term(e2, f.mul(c, f.pow(value, k as u64)));
        }
        out
    }

    /// Views a polynomial in which only `var` occurs as a univariate one.
    pub fn to_univariate(&self, var: usize) -> Result<UniPoly> {
        let mut coeffs = vec![FieldElement::ZERO; self.degree_in(var) as usize + 1];
        for (e, &c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != var && k > 0) {
                return Err(Error::InvalidShape(format!(
                    "variables other than x{var} occur"
                )));
            }
            coeffs[e[var] as usize] = c;
        }
        Ok(UniPoly::new(&self.field, coeffs))
    }

    pub fn embed_into(&self, emb: &Embedding) -> Result<MultiPoly> {
        if emb.source() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Self::zero(emb.target(), self.nvars);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), emb.apply(c));
        }
        Ok(out)
    }

    /// Same polynomial over `target`, which must contain the coefficient field.
    pub fn over(&self, target: &FiniteField) -> Result<MultiPoly> {
        if &self.field == target {
            return Ok(self.clone());
        }
        self.embed_into(&Embedding::new(&self.field, target)?)
    }

    /// Leading term under lex order with `x0 > x1 > ...`.
    pub fn leading_term(&self) -> Option<(&Exponents, FieldElement)> {
        self.terms.iter().next_back().map(|(e, &c)| (e, c))
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.field.inv(c).expect("nonzero leading coefficient")),
        }
    }

    /// Multivariate division by a single polynomial under lex order. A single
    /// polynomial is a Gröbner basis of the ideal it generates, so the remainder
    /// is zero exactly when `divisor` divides `self`.
    pub fn div_rem(&self, divisor: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        self.check_same_ring(divisor);
        let (lead_e, lead_c) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let lead_e = lead_e.clone();
        let f = &self.field;
        let lc_inv = f.inv(lead_c)?;
        let mut quotient = Self::zero(f, self.nvars);
        let mut remainder = Self::zero(f, self.nvars);
        let mut rest = self.clone();
        while let Some((e, c)) = rest.leading_term().map(|(e, c)| (e.clone(), c)) {
            if e.iter().zip(&lead_e).all(|(a, b)| a >= b) {
                let qe: Exponents = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
                let qc = f.mul(c, lc_inv);
                let mut mono = Self::zero(f, self.nvars);
                mono.terms.insert(qe.clone(), qc);
                quotient.add_term(qe, qc);
                rest = rest.sub(&divisor.mul(&mono));
            } else {
                remainder.add_term(e.clone(), c);
                rest.terms.remove(&e);
            }
        }
        Ok((quotient, remainder))
    }

    pub fn is_divisible_by(&self, divisor: &MultiPoly) -> Result<bool> {
        Ok(self.div_rem(divisor)?.1.is_zero())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field)
    }
}

/// Renders in the polynomial text format, highest lex term first.
impl fmt::Display for MultiPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let mut first = true;
        for (e, &c) in self.terms.iter().rev() {
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let mut factors = Vec::new();
            let is_const = e.iter().all(|&k| k == 0);
            if c != FieldElement::ONE || is_const {
                factors.push(format_coefficient(&self.field, c));
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(format!("x{i}")),
                    k => factors.push(format!("x{i}^{k}")),
                }
            }
            write!(out, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn format_coefficient(field: &FiniteField, c: FieldElement) -> String {
    if field.is_prime_field() {
        c.index().to_string()
    } else {
        let parts: Vec<String> = field
            .coords_trimmed(c)
            .iter()
            .map(|x| x.to_string())
            .collect();
        format!("[{}]", parts.join(","))
    }
}

/// Dense univariate polynomial, coefficients low to high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    field: FiniteField,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: &FiniteField, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FiniteField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn from_ints(field: &FiniteField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).copied().unwrap_or_default(),
                    other.coeffs.get(i).copied().unwrap_or_default(),
                )
            })
            .collect();
        Self::new(f, c)
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(self.field.neg(FieldElement::ONE)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut c = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Self::new(f, c)
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = f.inv(divisor.leading_coefficient())?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut q = vec![FieldElement::ZERO; r.len() - db];
        for top in (db..r.len()).rev() {
            let c = f.mul(r[top], lc_inv);
            if c.is_zero() {
                continue;
            }
            let shift = top - db;
            q[shift] = c;
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, b));
            }
        }
        Ok((Self::new(f, q), Self::new(f, r)))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading_coefficient()).unwrap();
        self.scale(inv)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn embed_into(&self, emb: &Embedding) -> Result<UniPoly> {
        if emb.source() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::new(
            emb.target(),
            self.coeffs.iter().map(|&c| emb.apply(c)).collect(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::make_field;

    fn x0x1_sum(f: &FiniteField) -> MultiPoly {
        // x0^2 x1 + x0 x1^2
        MultiPoly::from_terms(
            f,
            2,
            [(vec![2, 1], FieldElement::ONE), (vec![1, 2], FieldElement::ONE)],
        )
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        let f4 = make_field(2, 2).unwrap();
        let p = x0x1_sum(&f4);
        assert_eq!(p.eval(&[FieldElement::ONE, f4.generator()]).unwrap(), FieldElement::ONE);
        assert_eq!(
            p.eval(&[FieldElement::ONE]),
            Err(Error::ArityMismatch { expected: 2, got: 1 })
        );
        assert_eq!(
            p.eval(&[FieldElement::ONE, FieldElement::from_index(7)]),
            Err(Error::FieldMismatch)
        );
        let c = MultiPoly::constant(&f4, 3, f4.generator()).add(&MultiPoly::var(&f4, 3, 1));
        assert_eq!(c.eval(&[FieldElement::ZERO; 3]).unwrap(), f4.generator());
        let z = MultiPoly::zero(&f4, 2);
        assert!(z.eval(&[f4.generator(), FieldElement::ONE]).unwrap().is_zero());
    }

    #[test]
    fn decompose_examples() {
        let f4 = make_field(2, 2).unwrap();
        let parts = x0x1_sum(&f4).decompose_top_variable(1).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts[0].is_zero());
        assert_eq!(parts[1], MultiPoly::var(&f4, 1, 0).pow(2));
        assert_eq!(parts[2], MultiPoly::var(&f4, 1, 0));

        let c = MultiPoly::constant(&f4, 2, f4.generator());
        let parts = c.decompose_top_variable(0).unwrap();
        assert_eq!(parts, vec![MultiPoly::constant(&f4, 1, f4.generator())]);

        let cube = MultiPoly::var(&f4, 2, 1).pow(3);
        let parts = cube.decompose_top_variable(1).unwrap();
        assert_eq!(parts.len(), 4);
        assert!(parts[..3].iter().all(|p| p.is_zero()));
        assert_eq!(parts[3], MultiPoly::one(&f4, 1));

        assert_eq!(
            MultiPoly::zero(&f4, 2).decompose_top_variable(0),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn display_format() {
        let f5 = make_field(5, 1).unwrap();
        let p = MultiPoly::from_terms(
            &f5,
            3,
            [
                (vec![3, 1, 0], f5.from_int(2)),
                (vec![0, 0, 1], FieldElement::ONE),
                (vec![0, 0, 0], FieldElement::ONE),
            ],
        )
        .unwrap();
        assert_eq!(p.to_string(), "2*x0^3*x1 + x2 + 1");
        let f9 = make_field(3, 2).unwrap();
        let q = MultiPoly::constant(&f9, 1, f9.generator()).mul(&MultiPoly::var(&f9, 1, 0));
        assert_eq!(q.to_string(), "[0,1]*x0");
    }

    #[test]
    fn divisibility() {
        let f7 = make_field(7, 1).unwrap();
        let x = MultiPoly::var(&f7, 3, 0);
        let y = MultiPoly::var(&f7, 3, 1);
        let z = MultiPoly::var(&f7, 3, 2);
        let a = x.mul(&y).sub(&z.pow(2));
        let b = x.add(&y).add(&z);
        assert!(a.mul(&b).is_divisible_by(&a).unwrap());
        assert!(!b.pow(2).add(&x).is_divisible_by(&a).unwrap());
        let (q, r) = a.mul(&b).add(&x).div_rem(&a).unwrap();
        assert_eq!(q.mul(&a).add(&r), a.mul(&b).add(&x));
    }

    #[test]
    fn univariate_basics() {
        let f3 = make_field(3, 1).unwrap();
        let f = UniPoly::from_ints(&f3, &[1, 0, 1]);
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.eval(f3.from_int(1)), f3.from_int(2));
        let g = UniPoly::from_ints(&f3, &[-1, 1]);
        let (q, r) = f.div_rem(&g).unwrap();
        assert_eq!(q.mul(&g).add(&r), f);
        assert_eq!(f.gcd(&g).degree(), Some(0));
        assert_eq!(f.mul(&g).gcd(&f), f);
        assert_eq!(f.derivative(), UniPoly::from_ints(&f3, &[0, 2]));
    }

    #[test]
    fn compose_substitutes() {
        let f5 = make_field(5, 1).unwrap();
        let p = x0x1_sum(&f5);
        // x0 := 2*y, x1 := y  ->  (4 + 2) y^3 = y^3
        let y = MultiPoly::var(&f5, 1, 0);
        let r = p.compose(&[y.scale(f5.from_int(2)), y.clone()]).unwrap();
        assert_eq!(r, y.pow(3).scale(f5.from_int(6)));
    }
}
