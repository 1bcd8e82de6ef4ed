//! Finite fields `F_{p^k}` presented as `F_p[t] / (m(t))`.
//!
//! Elements are stored as a single integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! encoding the coordinate vector over the power basis `1, g, ..., g^{k-1}`.
//! This makes enumeration order (constant coordinate varying fastest) coincide
//! with integer order, so `0..q` is the canonical element sequence.
//!
//! Multiplication goes through discrete log / exponent tables built at
//! construction from the first primitive element. Inversion uses the extended
//! Euclidean algorithm against the modulus, and [`FiniteField::mul_by_coordinates`]
//! keeps the schoolbook product around as an independent reference.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on field cardinality.
pub const DEFAULT_FIELD_LIMIT: u64 = 1 << 20;

/// An element of some [`FiniteField`]; meaningless without its field.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Position of the element in canonical enumeration order.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn from_index(i: u32) -> Self {
        FieldElement(i)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldInner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic, low to high, length `k + 1`. `None` for prime fields.
    modulus: Option<Vec<u32>>,
    /// `exp[i] = gamma^i` for the primitive element `gamma`.
    exp: Vec<u32>,
    log: Vec<u32>,
    place: Vec<u32>,
}

/// Descriptor of `F_{p^k}`. Cheap to clone; equal descriptors share tables.
#[derive(Clone)]
pub struct FiniteField(Arc<FieldInner>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.p, self.0.k)
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.k)
        }
    }
}

impl Serialize for FiniteField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FiniteField", 4)?;
        st.serialize_field("characteristic", &self.0.p)?;
        st.serialize_field("degree", &self.0.k)?;
        st.serialize_field("cardinality", &self.0.q)?;
        st.serialize_field("modulus", &self.0.modulus)?;
        st.end()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `q` as `p^k`, if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let fs = prime_factors(q);
    if fs.len() != 1 {
        return None;
    }
    let p = fs[0];
    let mut k = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        k += 1;
    }
    Some((p, k))
}

fn cache() -> &'static Mutex<HashMap<(u32, u32), FiniteField>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), FiniteField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Canonical `F_{p^k}` under the default size limit.
pub fn make_field(p: u64, k: u32) -> Result<FiniteField> {
    make_field_with_limit(p, k, DEFAULT_FIELD_LIMIT)
}

pub fn make_field_with_limit(p: u64, k: u32, limit: u64) -> Result<FiniteField> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidShape("field degree must be positive".into()));
    }
    let too_big = Error::SizeLimitExceeded { p, k, limit };
    let q = p.checked_pow(k).ok_or(too_big.clone())?;
    if q > limit || q > u32::MAX as u64 {
        return Err(too_big);
    }
    let key = (p as u32, k);
    if let Some(f) = cache().lock().unwrap().get(&key) {
        return Ok(f.clone());
    }
    let field = FiniteField(Arc::new(build(p as u32, k)));
    cache().lock().unwrap().entry(key).or_insert(field.clone());
    Ok(field)
}

/// Parses `"p^k"` or a prime power `"q"`.
pub fn parse_field(text: &str) -> Result<FiniteField> {
    let t = text.trim();
    let num = |s: &str, off: usize| -> Result<u64> {
        s.trim()
            .parse::<u64>()
            .map_err(|_| Error::parse(off, format!("expected an integer, found {s:?}")))
    };
    if let Some((a, b)) = t.split_once('^') {
        let p = num(a, 0)?;
        let k = num(b, a.len() + 1)?;
        let k = u32::try_from(k).map_err(|_| Error::parse(a.len() + 1, "exponent too large"))?;
        make_field(p, k)
    } else {
        let q = num(t, 0)?;
        match prime_power(q) {
            Some((p, k)) => make_field(p, k),
            None => Err(Error::NotPrime(q)),
        }
    }
}

fn build(p: u32, k: u32) -> FieldInner {
    let q = p.pow(k);
    let mut place = Vec::with_capacity(k as usize);
    let mut v = 1u32;
    for _ in 0..k {
        place.push(v);
        v = v.wrapping_mul(p);
    }
    let modulus = if k == 1 {
        None
    } else {
        Some(first_irreducible(p, k as usize))
    };
    let mut inner = FieldInner {
        p,
        k,
        q,
        modulus,
        exp: Vec::new(),
        log: Vec::new(),
        place,
    };
    let field = FiniteField(Arc::new(inner_clone_for_build(&inner)));
    let gamma = primitive_element(&field);
    let mut exp = vec![0u32; (q - 1) as usize];
    let mut log = vec![u32::MAX; q as usize];
    let mut cur = 1u32;
    for (i, slot) in exp.iter_mut().enumerate() {
        *slot = cur;
        log[cur as usize] = i as u32;
        cur = field.mul_by_coordinates(FieldElement(cur), gamma).0;
    }
    debug_assert_eq!(cur, 1);
    inner.exp = exp;
    inner.log = log;
    inner
}

fn inner_clone_for_build(inner: &FieldInner) -> FieldInner {
    FieldInner {
        p: inner.p,
        k: inner.k,
        q: inner.q,
        modulus: inner.modulus.clone(),
        exp: Vec::new(),
        log: Vec::new(),
        place: inner.place.clone(),
    }
}

fn primitive_element(field: &FiniteField) -> FieldElement {
    let q = field.cardinality() as u64;
    if q == 2 {
        return FieldElement::ONE;
    }
    let factors = prime_factors(q - 1);
    (2..q as u32)
        .map(FieldElement)
        .find(|&c| {
            factors
                .iter()
                .all(|&l| field.pow_by_coordinates(c, (q - 1) / l) != FieldElement::ONE)
        })
        .expect("multiplicative group of a finite field is cyclic")
}

/// First monic irreducible of degree `k` over `F_p`, coefficients enumerated with
/// the constant term varying fastest.
fn first_irreducible(p: u32, k: usize) -> Vec<u32> {
    let total = (p as u64).pow(k as u32);
    for idx in 0..total {
        let mut c = Vec::with_capacity(k + 1);
        let mut r = idx;
        for _ in 0..k {
            c.push((r % p as u64) as u32);
            r /= p as u64;
        }
        c.push(1);
        if fp::is_irreducible(&c, p) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn cardinality(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus, coefficients low to high; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Residue class of the modulus variable (equal to 1's successor `p` in encoding).
    pub fn generator(&self) -> FieldElement {
        if self.0.k == 1 {
            FieldElement::ONE
        } else {
            FieldElement(self.0.p)
        }
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.0.q
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElement> {
        if coords.len() > self.0.k as usize {
            return Err(Error::ArityMismatch {
                expected: self.0.k as usize,
                got: coords.len(),
            });
        }
        Ok(FieldElement(
            coords
                .iter()
                .zip(&self.0.place)
                .map(|(&c, &w)| (c % self.0.p) * w)
                .sum(),
        ))
    }

    /// Full coordinate vector of length `k`.
    pub fn coords(&self, a: FieldElement) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.k as usize);
        let mut r = a.0;
        for _ in 0..self.0.k {
            out.push(r % self.0.p);
            r /= self.0.p;
        }
        out
    }

    /// Coordinates with trailing zeros dropped (at least one entry kept).
    pub fn coords_trimmed(&self, a: FieldElement) -> Vec<u32> {
        let mut c = self.coords(a);
        while c.len() > 1 && *c.last().unwrap() == 0 {
            c.pop();
        }
        c
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.0.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.0.p;
        if self.0.k == 1 {
            return FieldElement((a.0 + b.0) % p);
        }
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y, mut r) = (a.0, b.0, 0);
        for &w in &self.0.place {
            r += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
        }
        FieldElement(r)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.k == 1 {
            return FieldElement((p - a.0) % p);
        }
        let (mut x, mut r) = (a.0, 0);
        for &w in &self.0.place {
            r += ((p - x % p) % p) * w;
            x /= p;
        }
        FieldElement(r)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.0.q - 1;
        let e = (self.0.log[a.0 as usize] as u64 + self.0.log[b.0 as usize] as u64) % n as u64;
        FieldElement(self.0.exp[e as usize])
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let p = self.0.p;
        match &self.0.modulus {
            None => Ok(FieldElement(fp::inv_mod_int(a.0, p))),
            Some(m) => {
                let inv = fp::inv_mod_poly(&self.coords(a), m, p);
                self.from_coords(&inv)
            }
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        let e = e % n;
        FieldElement(self.0.exp[((l as u128 * e as u128) % n as u128) as usize])
    }

    /// `a^(p^base_degree)`, the generator of `Gal(F_q / F_{p^base_degree})`.
    pub fn frobenius(&self, a: FieldElement, base_degree: u32) -> Result<FieldElement> {
        if base_degree == 0 || !self.0.k.is_multiple_of(base_degree) {
            return Err(Error::InvalidBaseDegree {
                base: base_degree,
                degree: self.0.k,
            });
        }
        Ok(self.pow(a, (self.0.p as u64).pow(base_degree)))
    }

    /// Schoolbook product of coordinate polynomials reduced by the modulus.
    /// Independent of the log tables; used to build and to cross-check them.
    pub fn mul_by_coordinates(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.0.p;
        match &self.0.modulus {
            None => FieldElement(((a.0 as u64 * b.0 as u64) % p as u64) as u32),
            Some(m) => {
                let prod = fp::mul(&self.coords(a), &self.coords(b), p);
                let r = fp::rem(&prod, m, p);
                self.from_coords(&r).expect("reduced below modulus degree")
            }
        }
    }

    fn pow_by_coordinates(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_by_coordinates(acc, base);
            }
            base = self.mul_by_coordinates(base, base);
            e >>= 1;
        }
        acc
    }

    /// Human-readable element, e.g. `2+g^2`.
    pub fn format(&self, a: FieldElement) -> String {
        if self.0.k == 1 {
            return a.0.to_string();
        }
        let c = self.coords(a);
        let parts: Vec<String> = c
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| match (i, x) {
                (0, x) => x.to_string(),
                (1, 1) => "g".into(),
                (1, x) => format!("{x}*g"),
                (i, 1) => format!("g^{i}"),
                (i, x) => format!("{x}*g^{i}"),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// Dense polynomials over `F_p` as coefficient vectors, low to high.
pub(crate) mod fp {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn inv_int(a: u32, p: u32) -> u32 {
        inv_mod_int(a, p)
    }

    pub fn inv_mod_int(a: u32, p: u32) -> u32 {
        let (mut r0, mut r1) = (p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let qt = r0 / r1;
            (r0, r1) = (r1, r0 - qt * r1);
            (t0, t1) = (t1, t0 - qt * t1);
        }
        t0.rem_euclid(p as i64) as u32
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut v: Vec<u32> = out.into_iter().map(|x| x as u32).collect();
        trim(&mut v);
        v
    }

    /// Remainder modulo an arbitrary nonzero divisor.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut m = m.to_vec();
        trim(&mut m);
        let dm = m.len() - 1;
        let lc_inv = inv_int(m[dm], p) as u64;
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] as u64 * lc_inv % p as u64;
            if c != 0 {
                let shift = top - dm;
                for (i, &mi) in m.iter().enumerate() {
                    let sub = c * mi as u64 % p as u64;
                    r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
            trim(&mut r);
        }
        r
    }

    fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    fn divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut qt = vec![0u32; r.len() - db];
        let lc_inv = inv_int(b[db], p) as u64;
        while r.len() > db {
            let top = r.len() - 1;
            let c = (r[top] as u64 * lc_inv % p as u64) as u32;
            let shift = top - db;
            qt[shift] = c;
            for (i, &bi) in b.iter().enumerate() {
                let s = c as u64 * bi as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - s) % p as u64) as u32;
            }
            trim(&mut r);
        }
        trim(&mut qt);
        (qt, r)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        if let Some(&lc) = x.last() {
            let li = inv_int(lc, p) as u64;
            for c in x.iter_mut() {
                *c = (*c as u64 * li % p as u64) as u32;
            }
        }
        x
    }

    /// Inverse of `a` modulo the irreducible `m`.
    pub fn inv_mod_poly(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        trim(&mut r1);
        let (mut t0, mut t1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (qt, r) = divrem(&r0, &r1, p);
            let t = sub(&t0, &mul(&qt, &t1, p), p);
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        // r0 is a nonzero constant
        let c = inv_int(r0[0], p) as u64;
        let mut out: Vec<u32> = t0.iter().map(|&x| (x as u64 * c % p as u64) as u32).collect();
        out = rem(&out, m, p);
        out
    }

    fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    /// `f` irreducible iff `gcd(f, x^{p^i} - x) = 1` for `i <= deg f / 2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        if k == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut h = rem(&x, f, p);
        for _ in 1..=k / 2 {
            h = powmod(&h, p as u64, f, p);
            let d = sub(&h, &x, p);
            if gcd(f, &d, p).len() > 1 {
                return false;
            }
        }
        true
    }
}
