//! Rational points outside a hypersurface in affine space, projective space
//! and Grassmannians, plus the brute-force oracle used to validate them.

mod affine;
mod grassmannian;
mod oracle;
mod plucker;
mod projective;
mod space;

pub use affine::avoid_affine;
pub use grassmannian::{avoid_grassmannian, grass_cell_pullback};
pub use oracle::{exhaustive_oracle, exhaustive_oracle_with, OracleConfig, DEFAULT_ORACLE_LIMIT};
pub use plucker::{
    binomial, column_sets, plucker, plucker_variable_names, satisfies_three_term_relations,
};
pub use projective::avoid_projective;
pub use space::Space;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::algebra::{FieldElement, FiniteField, MultiPoly};
use crate::error::{Error, Result};

/// Ambient space of a hypersurface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Ambient {
    /// `A^n`, polynomial in `n` variables.
    Affine { n: usize },
    /// `P^n`, homogeneous polynomial in `n + 1` variables.
    Projective { n: usize },
    /// `Grass(m, n)`, homogeneous polynomial in the `C(n, m)` Plücker variables.
    Grassmannian { m: usize, n: usize },
}

/// The zero locus of a single nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    poly: MultiPoly,
    ambient: Ambient,
    degree: u32,
}

impl Hypersurface {
    pub fn affine(poly: MultiPoly) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Hypersurface {
            ambient: Ambient::Affine { n: poly.nvars() },
            degree: poly.total_degree(),
            poly,
        })
    }

    pub fn projective(poly: MultiPoly) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !poly.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        if poly.nvars() == 0 {
            return Err(Error::InvalidShape("projective space needs at least one coordinate".into()));
        }
        Ok(Hypersurface {
            ambient: Ambient::Projective { n: poly.nvars() - 1 },
            degree: poly.total_degree(),
            poly,
        })
    }

    pub fn grassmannian(poly: MultiPoly, m: usize, n: usize) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::InvalidShape(format!("Grass({m},{n}) needs 1 <= m < n")));
        }
        let vars = binomial(n, m);
        if poly.nvars() != vars {
            return Err(Error::ArityMismatch {
                expected: vars,
                got: poly.nvars(),
            });
        }
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !poly.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(Hypersurface {
            ambient: Ambient::Grassmannian { m, n },
            degree: poly.total_degree(),
            poly,
        })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Evaluates the defining polynomial at a point of the matching kind.
    pub fn eval_at(&self, field: &FiniteField, point: &Point) -> Result<FieldElement> {
        let poly = self.poly.over(field)?;
        match (self.ambient, point) {
            (Ambient::Affine { .. }, Point::Affine(x)) => poly.eval(x),
            (Ambient::Projective { .. }, Point::Projective(p)) => poly.eval(p.coords()),
            (Ambient::Grassmannian { .. }, Point::Grassmannian(g)) => poly.eval(g.plucker()),
            _ => Err(Error::InvalidShape("point kind does not match the ambient space".into())),
        }
    }
}

/// A point of `P^n`, normalized so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint {
    coords: Vec<FieldElement>,
}

impl ProjectivePoint {
    pub fn new(field: &FiniteField, coords: Vec<FieldElement>) -> Result<Self> {
        let lead = coords
            .iter()
            .copied()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidShape("all homogeneous coordinates are zero".into()))?;
        if coords.iter().any(|&c| !field.contains(c)) {
            return Err(Error::FieldMismatch);
        }
        let inv = field.inv(lead)?;
        Ok(ProjectivePoint {
            coords: coords.iter().map(|&c| field.mul(c, inv)).collect(),
        })
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// Dimension `n` of the ambient `P^n`.
    pub fn dimension(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn to_json(&self, field: &FiniteField) -> Value {
        elements_json(field, &self.coords)
    }
}

/// An `m`-dimensional subspace of `K^n`, as a spanning matrix together with
/// its Plücker vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannianPoint {
    matrix: Vec<Vec<FieldElement>>,
    plucker: Vec<FieldElement>,
}

impl GrassmannianPoint {
    pub fn new(field: &FiniteField, matrix: Vec<Vec<FieldElement>>) -> Result<Self> {
        let plucker = plucker(field, &matrix)?;
        Ok(GrassmannianPoint { matrix, plucker })
    }

    pub fn matrix(&self) -> &[Vec<FieldElement>] {
        &self.matrix
    }

    pub fn plucker(&self) -> &[FieldElement] {
        &self.plucker
    }

    pub fn to_json(&self, field: &FiniteField) -> Value {
        json!({
            "matrix": self.matrix.iter().map(|r| elements_json(field, r)).collect::<Vec<_>>(),
            "plucker": elements_json(field, &self.plucker),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Affine(Vec<FieldElement>),
    Projective(ProjectivePoint),
    Grassmannian(GrassmannianPoint),
}

impl Point {
    pub fn to_json(&self, field: &FiniteField) -> Value {
        match self {
            Point::Affine(x) => elements_json(field, x),
            Point::Projective(p) => p.to_json(field),
            Point::Grassmannian(g) => g.to_json(field),
        }
    }
}

/// Coordinates as trimmed coordinate vectors over the prime field.
pub fn elements_json(field: &FiniteField, xs: &[FieldElement]) -> Value {
    Value::Array(xs.iter().map(|&x| json!(field.coords_trimmed(x))).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// The field-size hypothesis holds and the constructive proof was run.
    #[serde(rename = "guaranteed")]
    Guaranteed,
    /// Field too small for the hypothesis; the whole space was scanned.
    #[serde(rename = "exhaustive-fallback")]
    ExhaustiveFallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found(Point),
    NoPointExists,
    /// The fallback scan would exceed its point budget.
    Unknown,
}

/// One step of the constructive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    /// Affine induction: `x_var := value`.
    Assign { var: usize, value: FieldElement },
    /// Projective induction: restrict to pencil member `X0 = lambda X1`
    /// (`None` for the member `X1 = 0`) at the given recursion level.
    Pencil { level: usize, lambda: Option<FieldElement> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidanceResult {
    pub field: FiniteField,
    pub outcome: Outcome,
    pub mode: Mode,
    pub trace: Vec<TraceStep>,
}

impl AvoidanceResult {
    pub fn point(&self) -> Option<&Point> {
        match &self.outcome {
            Outcome::Found(p) => Some(p),
            _ => None,
        }
    }

    pub fn trace_json(&self) -> Value {
        let f = &self.field;
        Value::Array(
            self.trace
                .iter()
                .map(|s| match s {
                    TraceStep::Assign { var, value } => {
                        json!({"step": "assign", "var": var, "value": f.coords_trimmed(*value)})
                    }
                    TraceStep::Pencil { level, lambda } => json!({
                        "step": "pencil",
                        "level": level,
                        "lambda": lambda.map(|l| f.coords_trimmed(l)),
                    }),
                })
                .collect(),
        )
    }
}

impl Serialize for AvoidanceResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AvoidanceResult", 5)?;
        let (outcome, point) = match &self.outcome {
            Outcome::Found(p) => ("found", p.to_json(&self.field)),
            Outcome::NoPointExists => ("no_point_exists", Value::Null),
            Outcome::Unknown => ("unknown", Value::Null),
        };
        st.serialize_field("outcome", outcome)?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("point", &point)?;
        st.serialize_field("trace", &self.trace_json())?;
        st.end()
    }
}

/// Checks the soundness invariant before a result leaves the module.
fn certify(d: &Hypersurface, result: AvoidanceResult) -> Result<AvoidanceResult> {
    if let Outcome::Found(p) = &result.outcome {
        if d.eval_at(&result.field, p)?.is_zero() {
            return Err(Error::InternalContradiction(
                "returned point lies on the hypersurface".into(),
            ));
        }
    }
    Ok(result)
}
