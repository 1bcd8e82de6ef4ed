//! Points on a plane curve `X = {F = 0}` off a divisor `D = X . {G = 0}`,
//! found over an extension `K2 / K1` of degree at most `deg F`.
//!
//! The construction projects `X` from a center `c` off the curve. Lines through
//! `c` are parameterized by a fixed coordinate line not containing `c`; the
//! resultant in the line parameter gives a binary form `R(s, t)` of degree
//! `beta = deg F deg G` vanishing exactly on the lines that meet `D`. A
//! parameter off `R` picks a line missing `D`, and any root of `F` on that line
//! is the answer.

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::algebra::{
    find_root_in_tower, formal_resultant, sylvester_resultant, Embedding, FieldElement,
    FiniteField, MultiPoly, UniPoly,
};
use crate::avoid::{
    avoid_projective, elements_json, AvoidanceResult, Hypersurface, Point, ProjectivePoint,
};
use crate::error::{Error, Result};

/// A reduced plane curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    poly: MultiPoly,
    /// `(a, b)` of the first line `x2 = a x0 + b x1` that certified squarefreeness.
    witness_line: (FieldElement, FieldElement),
}

impl PlaneCurve {
    /// Checks that `F` is a nonconstant ternary form and squarefree.
    ///
    /// Squarefreeness is certified on the canonical lines `x2 = a x0 + b x1`,
    /// `(a, b) = (i mod q, i div q)` for `i = 0, 1, ...`, parameterized as
    /// `(u : 1 : a u + b)`. Lines on which the restriction drops degree are
    /// skipped; the first `e + 1` full-degree lines are tried, and one whose
    /// restriction has nonzero discriminant suffices.
    pub fn new(poly: MultiPoly) -> Result<Self> {
        if poly.nvars() != 3 {
            return Err(Error::ArityMismatch { expected: 3, got: poly.nvars() });
        }
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !poly.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let e = poly.total_degree();
        if e == 0 {
            return Err(Error::InvalidShape("curve equation must have degree at least 1".into()));
        }
        let field = poly.field().clone();
        let q = field.cardinality();
        let budget = e as usize + 1;
        let mut tried = 0;
        for i in 0..q * q {
            let a = FieldElement::from_index(i % q);
            let b = FieldElement::from_index(i / q);
            let f = restrict_to_chart_line(&poly, a, b)?;
            if f.degree() != Some(e as usize) {
                continue;
            }
            // linear restrictions are always squarefree
            if e == 1 || !sylvester_resultant(&f, &f.derivative())?.is_zero() {
                return Ok(PlaneCurve { poly, witness_line: (a, b) });
            }
            tried += 1;
            if tried == budget {
                break;
            }
        }
        Err(Error::NotSquarefree { tried })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn field(&self) -> &FiniteField {
        self.poly.field()
    }

    pub fn degree(&self) -> u32 {
        self.poly.total_degree()
    }

    pub fn witness_line(&self) -> (FieldElement, FieldElement) {
        self.witness_line
    }
}

fn restrict_to_chart_line(f: &MultiPoly, a: FieldElement, b: FieldElement) -> Result<UniPoly> {
    let field = f.field();
    let u = MultiPoly::var(field, 1, 0);
    let images = [
        u.clone(),
        MultiPoly::one(field, 1),
        u.scale(a).add(&MultiPoly::constant(field, 1, b)),
    ];
    f.compose(&images)?.to_univariate(0)
}

/// The divisor cut on a curve by a second form `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveDivisor {
    poly: MultiPoly,
    beta: u64,
}

impl CurveDivisor {
    pub fn new(curve: &PlaneCurve, poly: MultiPoly) -> Result<Self> {
        if poly.nvars() != 3 {
            return Err(Error::ArityMismatch { expected: 3, got: poly.nvars() });
        }
        if poly.field() != curve.field() {
            return Err(Error::FieldMismatch);
        }
        if !poly.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        if poly.is_zero() || poly.is_divisible_by(curve.poly())? {
            return Err(Error::DivisorContainsCurve);
        }
        let beta = curve.degree() as u64 * poly.total_degree() as u64;
        Ok(CurveDivisor { poly, beta })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    /// `deg F * deg G`.
    pub fn beta(&self) -> u64 {
        self.beta
    }
}

/// A point of `P^2(K1)` off the curve, by the projective avoidance search.
/// Needs `|K1| > 2 deg F`.
pub fn projection_center(x: &PlaneCurve, k1: &FiniteField) -> Result<ProjectivePoint> {
    center_search(x, k1).map(|(c, _)| c)
}

fn center_search(x: &PlaneCurve, k1: &FiniteField) -> Result<(ProjectivePoint, AvoidanceResult)> {
    let needed = 2 * x.degree() as u64;
    if k1.cardinality() as u64 <= needed {
        return Err(Error::FieldTooSmall { needed, have: k1.cardinality() as u64 });
    }
    let res = avoid_projective(&Hypersurface::projective(x.poly().over(k1)?)?, k1)?;
    match res.point() {
        Some(Point::Projective(c)) => Ok((c.clone(), res)),
        _ => Err(Error::InternalContradiction("no projection center found".into())),
    }
}

/// Lines through a center `c`, indexed by their meeting point with the fixed
/// line `{x_i = 0}`, `i` the first nonzero coordinate of `c`. The other two
/// coordinates `j < k` carry `(s : t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    pub center: ProjectivePoint,
    pub fixed: usize,
    pub others: [usize; 2],
}

impl Pencil {
    pub fn new(center: ProjectivePoint) -> Self {
        let fixed = center
            .coords()
            .iter()
            .position(|c| !c.is_zero())
            .expect("projective points are nonzero");
        let mut others = [0; 2];
        for (slot, i) in others.iter_mut().zip((0..3).filter(|&i| i != fixed)) {
            *slot = i;
        }
        Pencil { center, fixed, others }
    }

    /// The point `Q(s, t)` of the fixed line.
    pub fn base_point(&self, s: FieldElement, t: FieldElement) -> [FieldElement; 3] {
        let mut q = [FieldElement::ZERO; 3];
        q[self.others[0]] = s;
        q[self.others[1]] = t;
        q
    }

    /// Images of `x0, x1, x2` under `x = u c + Q(s, t)` in the ring `K[s, t, u]`.
    fn substitution(&self, field: &FiniteField) -> Vec<MultiPoly> {
        let u = MultiPoly::var(field, 3, 2);
        (0..3)
            .map(|l| {
                let mut img = u.scale(self.center.coords()[l]);
                if l == self.others[0] {
                    img = img.add(&MultiPoly::var(field, 3, 0));
                } else if l == self.others[1] {
                    img = img.add(&MultiPoly::var(field, 3, 1));
                }
                img
            })
            .collect()
    }
}

/// `F(u c + Q(s,t))` as coefficients in `u`, padded to formal degree `deg`.
fn coefficients_in_u(f: &MultiPoly, images: &[MultiPoly], deg: u32) -> Result<Vec<MultiPoly>> {
    let mut parts = f.compose(images)?.decompose_top_variable(2)?;
    let zero = MultiPoly::zero(f.field(), 2);
    parts.resize(deg as usize + 1, zero);
    Ok(parts)
}

/// The binary form `R(s, t)` over `K1` whose zeros are the lines through
/// `center` meeting `D`, made monic. Homogeneous of degree `beta`.
pub fn fiber_resultant(
    x: &PlaneCurve,
    d: &CurveDivisor,
    center: &ProjectivePoint,
    k1: &FiniteField,
) -> Result<MultiPoly> {
    let f = x.poly().over(k1)?;
    let g = d.poly().over(k1)?;
    if center.coords().len() != 3 {
        return Err(Error::ArityMismatch { expected: 3, got: center.coords().len() });
    }
    if f.eval(center.coords())?.is_zero() {
        return Err(Error::CenterOnCurve);
    }
    let images = Pencil::new(center.clone()).substitution(k1);
    // the u^e coefficient is F(c) != 0, so the formal resultant is exact
    let fu = coefficients_in_u(&f, &images, x.degree())?;
    let gu = coefficients_in_u(&g, &images, d.poly().total_degree())?;
    let r = formal_resultant(&fu, &gu)?;
    if r.is_zero() {
        return Err(Error::CommonComponent);
    }
    Ok(r.monic())
}

/// Which of the recomputed properties hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationFlags {
    pub on_curve: bool,
    pub off_divisor: bool,
    pub degree_bound: bool,
    pub orbit_closed: bool,
}

impl VerificationFlags {
    pub fn all(&self) -> bool {
        self.on_curve && self.off_divisor && self.degree_bound && self.orbit_closed
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePointResult {
    pub k1: FiniteField,
    pub k2: FiniteField,
    pub ext_degree: u32,
    /// Over `K2`.
    pub point: ProjectivePoint,
    pub center: ProjectivePoint,
    pub pencil: Pencil,
    /// `(s0 : t0)` over `K1`.
    pub fiber_parameter: ProjectivePoint,
    pub fiber_resultant: MultiPoly,
    /// `F(u c + Q(s0, t0))` over `K1`.
    pub restricted: UniPoly,
    /// The root `u0` in `K2`.
    pub root: FieldElement,
    /// Frobenius conjugates over `K1`, sorted.
    pub orbit: Vec<ProjectivePoint>,
    pub flags: VerificationFlags,
    pub center_search: AvoidanceResult,
    pub parameter_search: AvoidanceResult,
}

/// Runs the whole construction over `K1`. Needs `|K1| > max(2e, beta - 1)`.
pub fn point_off_divisor(
    x: &PlaneCurve,
    d: &CurveDivisor,
    k1: &FiniteField,
) -> Result<CurvePointResult> {
    let e = x.degree();
    let needed = (2 * e as u64).max(d.beta().saturating_sub(1));
    if k1.cardinality() as u64 <= needed {
        return Err(Error::FieldTooSmall { needed, have: k1.cardinality() as u64 });
    }
    let (center, center_search) = center_search(x, k1)?;
    let r = fiber_resultant(x, d, &center, k1)?;
    let parameter_search = avoid_projective(&Hypersurface::projective(r.clone())?, k1)?;
    let Some(Point::Projective(param)) = parameter_search.point().cloned() else {
        return Err(Error::InternalContradiction("every pencil line meets the divisor".into()));
    };
    let pencil = Pencil::new(center.clone());
    let (s0, t0) = (param.coords()[0], param.coords()[1]);
    let q0 = pencil.base_point(s0, t0);

    let f = x.poly().over(k1)?;
    let u = MultiPoly::var(k1, 1, 0);
    let line: Vec<MultiPoly> = (0..3)
        .map(|l| u.scale(center.coords()[l]).add(&MultiPoly::constant(k1, 1, q0[l])))
        .collect();
    let restricted = f.compose(&line)?.to_univariate(0)?;
    let tower = find_root_in_tower(&restricted, e)?.ok_or_else(|| {
        Error::InternalContradiction(format!("no root of a degree {e} polynomial up to degree {e}"))
    })?;
    let k2 = tower.field;
    let emb = Embedding::new(k1, &k2)?;
    let coords = (0..3)
        .map(|l| k2.add(k2.mul(tower.root, emb.apply(center.coords()[l])), emb.apply(q0[l])))
        .collect();
    let point = ProjectivePoint::new(&k2, coords)?;
    let orbit = galois_orbit(&point, &k2, k1)?;

    let mut res = CurvePointResult {
        k1: k1.clone(),
        k2,
        ext_degree: tower.ext_degree,
        point,
        center,
        pencil,
        fiber_parameter: param,
        fiber_resultant: r,
        restricted,
        root: tower.root,
        orbit,
        flags: VerificationFlags {
            on_curve: false,
            off_divisor: false,
            degree_bound: false,
            orbit_closed: false,
        },
        center_search,
        parameter_search,
    };
    res.flags = verify_on_curve(&res, x, d);
    if !res.flags.all() {
        return Err(Error::InternalContradiction(format!(
            "verification failed: {:?}",
            res.flags
        )));
    }
    Ok(res)
}

fn frobenius_point(pt: &ProjectivePoint, k2: &FiniteField, base: u32) -> Result<ProjectivePoint> {
    let coords = pt
        .coords()
        .iter()
        .map(|&c| k2.frobenius(c, base))
        .collect::<Result<Vec<_>>>()?;
    ProjectivePoint::new(k2, coords)
}

/// Conjugates of `pt` under `x -> x^{|K1|}`, sorted.
pub fn galois_orbit(
    pt: &ProjectivePoint,
    k2: &FiniteField,
    k1: &FiniteField,
) -> Result<Vec<ProjectivePoint>> {
    Embedding::new(k1, k2)?;
    let mut orbit = vec![pt.clone()];
    let mut cur = frobenius_point(pt, k2, k1.degree())?;
    while &cur != pt {
        let next = frobenius_point(&cur, k2, k1.degree())?;
        orbit.push(cur);
        cur = next;
    }
    orbit.sort();
    Ok(orbit)
}

/// Recomputes every claimed property of `res` from scratch.
pub fn verify_on_curve(res: &CurvePointResult, x: &PlaneCurve, d: &CurveDivisor) -> VerificationFlags {
    let k2 = &res.k2;
    let eval = |p: &MultiPoly| p.over(k2).and_then(|p| p.eval(res.point.coords())).ok();
    let on_curve = eval(x.poly()).is_some_and(|v| v.is_zero());
    let off_divisor = eval(d.poly()).is_some_and(|v| !v.is_zero());
    let degree_bound = res.ext_degree >= 1
        && res.ext_degree <= x.degree()
        && k2.characteristic() == res.k1.characteristic()
        && k2.degree() == res.k1.degree() * res.ext_degree;
    let orbit_closed = res.orbit.contains(&res.point)
        && res.orbit.iter().all(|p| {
            frobenius_point(p, k2, res.k1.degree()).is_ok_and(|img| res.orbit.contains(&img))
        });
    VerificationFlags {
        on_curve,
        off_divisor,
        degree_bound,
        orbit_closed,
    }
}

impl CurvePointResult {
    pub fn to_json(&self) -> Value {
        let k1 = &self.k1;
        json!({
            "point": self.point.to_json(&self.k2),
            "k1": k1,
            "k2": self.k2,
            "ext_degree": self.ext_degree,
            "center": self.center.to_json(k1),
            "fixed_line": format!("x{} = 0", self.pencil.fixed),
            "fiber_parameter": self.fiber_parameter.to_json(k1),
            "fiber_resultant": self.fiber_resultant.to_string(),
            "restricted": elements_json(k1, self.restricted.coeffs()),
            "root": self.k2.coords_trimmed(self.root),
            "orbit": self.orbit.iter().map(|p| p.to_json(&self.k2)).collect::<Vec<_>>(),
            "flags": self.flags,
            "trace": {
                "center": self.center_search.trace_json(),
                "parameter": self.parameter_search.trace_json(),
            },
        })
    }
}

impl Serialize for CurvePointResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
