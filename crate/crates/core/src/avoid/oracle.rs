use rayon::prelude::*;

use super::space::Space;
use super::{Hypersurface, Outcome, Point};
use crate::algebra::{FiniteField, MultiPoly};
use crate::error::{Error, Result};

pub const DEFAULT_ORACLE_LIMIT: u128 = 10_000_000;

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    /// Largest ambient point count that will be enumerated.
    pub limit: u128,
    /// Worker threads; `<= 1` scans on the calling thread.
    pub jobs: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            limit: DEFAULT_ORACLE_LIMIT,
            jobs: 1,
        }
    }
}

fn avoids(poly: &MultiPoly, point: &Point) -> bool {
    let coords = match point {
        Point::Affine(x) => x.as_slice(),
        Point::Projective(p) => p.coords(),
        Point::Grassmannian(g) => g.plucker(),
    };
    !poly.eval_unchecked(coords).is_zero()
}

/// Every `K`-point off the hypersurface, in canonical order.
pub fn exhaustive_oracle(d: &Hypersurface, field: &FiniteField) -> Result<Vec<Point>> {
    exhaustive_oracle_with(d, field, OracleConfig::default())
}

pub fn exhaustive_oracle_with(
    d: &Hypersurface,
    field: &FiniteField,
    cfg: OracleConfig,
) -> Result<Vec<Point>> {
    let space = Space(d.ambient());
    let count = space.point_count(field.cardinality());
    if count > cfg.limit {
        return Err(Error::SpaceTooLarge {
            points: count,
            limit: cfg.limit,
        });
    }
    let poly = d.poly().over(field)?;
    let scan = |idx: u128| {
        let p = space.point_at(field, idx);
        avoids(&poly, &p).then_some(p)
    };
    if cfg.jobs <= 1 {
        return Ok((0..count).filter_map(scan).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InternalContradiction(e.to_string()))?;
    let count = u64::try_from(count).expect("bounded by the limit");
    // indexed parallel iterators keep the canonical order on collect
    Ok(pool.install(|| {
        (0..count)
            .into_par_iter()
            .filter_map(|i| scan(i as u128))
            .collect()
    }))
}

/// First avoiding point in canonical order, for the small-field fallback.
pub(crate) fn first_avoiding(d: &Hypersurface, field: &FiniteField) -> Result<Outcome> {
    let space = Space(d.ambient());
    if space.point_count(field.cardinality()) > DEFAULT_ORACLE_LIMIT {
        return Ok(Outcome::Unknown);
    }
    let poly = d.poly().over(field)?;
    let found = space.points(field).find(|p| avoids(&poly, p));
    Ok(found.map_or(Outcome::NoPointExists, Outcome::Found))
}
