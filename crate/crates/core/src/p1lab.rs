//! Vector bundles on the projective line, where every bundle splits as
//! `O(a_1) + ... + O(a_r)` and cohomology is explicit. Used to check
//! "semistable iff some `F` has `H^0(E (x) F) = H^1(E (x) F) = 0`" exhaustively
//! inside a bounded search box.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Splitting type `(a_1 >= ... >= a_r)`, `r >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingType(Vec<i64>);

impl SplittingType {
    pub fn new(mut a: Vec<i64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidRank(0));
        }
        a.sort_unstable_by(|x, y| y.cmp(x));
        Ok(SplittingType(a))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Vec::new();
        let mut offset = 0;
        for part in text.split(',') {
            let v = part.trim().parse::<i64>().map_err(|_| {
                Error::parse(offset, format!("expected an integer, found {:?}", part.trim()))
            })?;
            out.push(v);
            offset += part.len() + 1;
        }
        Self::new(out)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for SplittingType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyDims {
    pub h0: u64,
    pub h1: u64,
}

pub fn slope(t: &SplittingType) -> Rational64 {
    Rational64::new(t.degree(), t.rank() as i64)
}

/// On `P^1`, `O(a_max)` destabilizes unless all summands agree.
pub fn is_semistable(t: &SplittingType) -> bool {
    t.0.first() == t.0.last()
}

pub fn tensor(e: &SplittingType, f: &SplittingType) -> SplittingType {
    let sums = e
        .0
        .iter()
        .flat_map(|a| f.0.iter().map(move |b| a + b))
        .collect();
    SplittingType::new(sums).expect("ranks are positive")
}

/// `h^0(O(d)) = max(d + 1, 0)`, `h^1(O(d)) = max(-d - 1, 0)`, summed.
pub fn cohomology_dims(t: &SplittingType) -> CohomologyDims {
    t.0.iter().fold(CohomologyDims { h0: 0, h1: 0 }, |acc, &a| CohomologyDims {
        h0: acc.h0 + (a + 1).max(0) as u64,
        h1: acc.h1 + (-a - 1).max(0) as u64,
    })
}

/// Nonincreasing tuples of length `rank` with entries in `[-bound, bound]`,
/// lexicographically ascending.
pub fn splitting_types(rank: usize, bound: i64) -> Vec<SplittingType> {
    fn go(rank: usize, lo: i64, hi: i64, prefix: &mut Vec<i64>, out: &mut Vec<SplittingType>) {
        if prefix.len() == rank {
            out.push(SplittingType(prefix.clone()));
            return;
        }
        let cap = prefix.last().copied().unwrap_or(hi);
        for a in lo..=cap {
            prefix.push(a);
            go(rank, lo, hi, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if rank > 0 {
        go(rank, -bound, bound, &mut Vec::new(), &mut out);
    }
    out
}

/// First `F` (rank `1..=rank_bound`, entries in `[-search_bound, search_bound]`)
/// with `E (x) F` cohomology-free.
pub fn find_partner(
    e: &SplittingType,
    search_bound: i64,
    rank_bound: usize,
) -> Option<SplittingType> {
    (1..=rank_bound).find_map(|rank| {
        splitting_types(rank, search_bound)
            .into_iter()
            .find(|f| cohomology_dims(&tensor(e, f)) == CohomologyDims { h0: 0, h1: 0 })
    })
}

/// `O(-a - 1)` for `E = O(a)^r`, nothing otherwise.
pub fn analytic_partner(e: &SplittingType) -> Option<SplittingType> {
    is_semistable(e).then(|| SplittingType(vec![-e.0[0] - 1]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub splitting_type: SplittingType,
    pub semistable: bool,
    pub partner: Option<SplittingType>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub rank_max: usize,
    pub coeff_bound: i64,
    pub search_bound: i64,
    pub rank_bound: usize,
    /// Whether every analytic partner `O(-a-1)` lies inside the search box.
    pub box_contains_analytic_partners: bool,
    pub types_by_rank: BTreeMap<usize, usize>,
    pub types_checked: usize,
    pub semistable: usize,
    pub partnered: usize,
    pub counterexamples: Vec<Counterexample>,
    pub max_partner_rank: usize,
}

/// Checks `is_semistable(E) <=> find_partner(E)` for every splitting type with
/// rank `<= rank_max` and entries in `[-coeff_bound, coeff_bound]`.
pub fn verify_criterion(
    rank_max: usize,
    coeff_bound: i64,
    search_bound: i64,
    rank_bound: usize,
) -> CriterionReport {
    let mut rep = CriterionReport {
        rank_max,
        coeff_bound,
        search_bound,
        rank_bound,
        box_contains_analytic_partners: search_bound > coeff_bound && rank_bound >= 1,
        types_by_rank: BTreeMap::new(),
        types_checked: 0,
        semistable: 0,
        partnered: 0,
        counterexamples: Vec::new(),
        max_partner_rank: 0,
    };
    for rank in 1..=rank_max {
        let types = splitting_types(rank, coeff_bound);
        rep.types_by_rank.insert(rank, types.len());
        for e in types {
            rep.types_checked += 1;
            let ss = is_semistable(&e);
            let partner = find_partner(&e, search_bound, rank_bound);
            rep.semistable += ss as usize;
            if let Some(f) = &partner {
                rep.partnered += 1;
                rep.max_partner_rank = rep.max_partner_rank.max(f.rank());
            }
            if ss != partner.is_some() {
                rep.counterexamples.push(Counterexample {
                    splitting_type: e,
                    semistable: ss,
                    partner,
                });
            }
        }
    }
    rep
}
