//! Explicit bounds: the extension degree `M(n, alpha, beta)` needed to find a
//! point off a divisor, the rank threshold `ceil((r^2 + 1) / 4)` for theta
//! divisors, and the rank `R = n rbar M!` of a cohomology-free partner bundle.
//!
//! Everything is integer arithmetic; `R` is arbitrary precision.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::algebra::field::is_prime;
use crate::error::{Error, Result};

/// Which class of base fields the bound has to cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldMode {
    General,
    Infinite,
    CharP(u64),
}

impl FieldMode {
    pub fn label(&self) -> String {
        match self {
            FieldMode::General => "general".into(),
            FieldMode::Infinite => "infinite".into(),
            FieldMode::CharP(p) => format!("char_p({p})"),
        }
    }
}

/// `n`: dimension, `alpha = H^n`, `beta = D . H^{n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundInputs {
    pub n: u64,
    pub alpha: u64,
    pub beta: u64,
    pub mode: FieldMode,
}

impl BoundInputs {
    pub fn new(n: u64, alpha: u64, beta: u64, mode: FieldMode) -> Result<Self> {
        if n == 0 || alpha == 0 || beta == 0 {
            return Err(Error::InvalidShape("n, alpha and beta must be positive".into()));
        }
        if let FieldMode::CharP(p) = mode {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        Ok(BoundInputs { n, alpha, beta, mode })
    }
}

/// Smallest `e >= 0` with `base^e >= x`, by repeated multiplication.
pub fn ceil_log(base: u64, x: u64) -> u32 {
    assert!(base >= 2, "logarithm base must be at least 2");
    let mut e = 0;
    let mut acc: u128 = 1;
    while acc < x as u128 {
        acc *= base as u128;
        e += 1;
    }
    e
}

/// `alpha * ceil(log_b(max((n + 1) alpha + 1, beta)))` with `b = 2` in general,
/// `b = p` in characteristic `p`; just `alpha` over infinite fields.
pub fn bound_m(inp: &BoundInputs) -> u64 {
    let base = match inp.mode {
        FieldMode::Infinite => return inp.alpha,
        FieldMode::General => 2,
        FieldMode::CharP(p) => p,
    };
    let target = ((inp.n + 1) * inp.alpha + 1).max(inp.beta);
    inp.alpha * ceil_log(base, target) as u64
}

/// Smallest `n` with `4 n >= r^2 + 1`.
pub fn popa_n(r: u64) -> u64 {
    (r * r + 1).div_ceil(4)
}

pub fn factorial(m: u64) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn lcm_upto(m: u64) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, i| acc.lcm(&BigUint::from(i)))
}

/// Leading digits and exponent, e.g. `2.88e3`.
pub fn scientific(x: &BigUint) -> String {
    let s = x.to_str_radix(10);
    let frac = s[1..s.len().min(6)].trim_end_matches('0');
    if frac.is_empty() {
        format!("{}e{}", &s[..1], s.len() - 1)
    } else {
        format!("{}.{}e{}", &s[..1], frac, s.len() - 1)
    }
}

/// Every intermediate quantity of the rank construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub g: u64,
    pub r: u64,
    pub d: i64,
    pub h: u64,
    pub rbar: u64,
    pub dbar: i64,
    pub n_popa: u64,
    pub rank_f1: u64,
    pub moduli: BoundInputs,
    pub m: u64,
    /// `rank_f1 * M!`.
    pub rank: BigUint,
    /// `rank_f1 * lcm(1..M)`: enough over finite fields, where every extension
    /// of degree at most `M` is cyclic of its own degree.
    pub rank_finite_field: BigUint,
    /// `(rank, degree)` of the moduli space the theta divisor lives on.
    pub source_moduli: (u64, i64),
    /// `(rank, degree)` of the moduli space carrying the natural theta divisor.
    pub target_moduli: (u64, i64),
}

/// Runs the rank construction for bundles of rank `r`, degree `d` on a curve of
/// genus `g`. The dimension and intersection numbers of the moduli space fed to
/// [`bound_m`] are supplied by the caller in `moduli`.
pub fn rank_pipeline(g: u64, r: i64, d: i64, moduli: BoundInputs) -> Result<BoundReport> {
    if r < 1 {
        return Err(Error::InvalidRank(r));
    }
    let r = r as u64;
    let h = r.gcd(&d.unsigned_abs());
    let rbar = r / h;
    let dbar = d / h as i64;
    let n_popa = popa_n(r);
    let rank_f1 = n_popa * rbar;
    let m = bound_m(&moduli);
    let g1 = g as i64 - 1;
    Ok(BoundReport {
        g,
        r,
        d,
        h,
        rbar,
        dbar,
        n_popa,
        rank_f1,
        moduli,
        m,
        rank: BigUint::from(rank_f1) * factorial(m),
        rank_finite_field: BigUint::from(rank_f1) * lcm_upto(m),
        source_moduli: (rank_f1, n_popa as i64 * (rbar as i64 * g1 - dbar)),
        target_moduli: (n_popa * r * rbar, (n_popa * r * rbar) as i64 * g1),
    })
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("g", &self.g)?;
        map.serialize_entry("r", &self.r)?;
        map.serialize_entry("d", &self.d)?;
        map.serialize_entry("h", &self.h)?;
        map.serialize_entry("rbar", &self.rbar)?;
        map.serialize_entry("dbar", &self.dbar)?;
        map.serialize_entry("n_popa", &self.n_popa)?;
        map.serialize_entry("rank_F1", &self.rank_f1)?;
        map.serialize_entry("moduli_n", &self.moduli.n)?;
        map.serialize_entry("moduli_alpha", &self.moduli.alpha)?;
        map.serialize_entry("moduli_beta", &self.moduli.beta)?;
        map.serialize_entry("field_mode", &self.moduli.mode.label())?;
        map.serialize_entry("M", &self.m)?;
        map.serialize_entry("M_factorial", &factorial(self.m).to_str_radix(10))?;
        map.serialize_entry("R", &self.rank.to_str_radix(10))?;
        map.serialize_entry("R_scientific", &scientific(&self.rank))?;
        map.serialize_entry("R_finite_field", &self.rank_finite_field.to_str_radix(10))?;
        map.serialize_entry("source_moduli_rank", &self.source_moduli.0)?;
        map.serialize_entry("source_moduli_degree", &self.source_moduli.1)?;
        map.serialize_entry("target_moduli_rank", &self.target_moduli.0)?;
        map.serialize_entry("target_moduli_degree", &self.target_moduli.1)?;
        map.end()
    }
}
