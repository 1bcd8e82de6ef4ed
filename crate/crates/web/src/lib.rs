//! wasm-bindgen entry points for the static demo in `www/`. Every function
//! takes plain strings and numbers and returns a JSON string; failures come
//! back as `{"error": ...}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use semistab::algebra::{parse_expression, parse_field};
use semistab::avoid::{avoid_affine, Hypersurface, Outcome, Point};
use semistab::curvepoint::{point_off_divisor, CurveDivisor, PlaneCurve};
use semistab::p1lab::{cohomology_dims, find_partner, is_semistable, slope, tensor, SplittingType};

/// Largest field drawn as a grid.
pub const GRID_LIMIT: u32 = 64;

fn render(r: semistab::Result<Value>) -> String {
    r.unwrap_or_else(|e| json!({"error": e.to_string()})).to_string()
}

/// Zero pattern of `f(x0, x1)` on the affine plane and the point chosen off it.
/// `zero[j][i]` refers to `(x0, x1) = (element i, element j)`.
#[wasm_bindgen]
pub fn plane_avoid(field: &str, poly: &str) -> String {
    render((|| {
        let f = parse_field(field)?;
        if f.cardinality() > GRID_LIMIT {
            return Err(semistab::Error::InvalidShape(format!("grid limited to q <= {GRID_LIMIT}")));
        }
        let d = Hypersurface::affine(parse_expression(poly, &f, Some(2))?)?;
        let mut zero = Vec::new();
        for y in f.elements() {
            let mut row = Vec::new();
            for x in f.elements() {
                row.push(d.poly().eval(&[x, y])?.is_zero());
            }
            zero.push(row);
        }
        let r = avoid_affine(&d, &f)?;
        let cell = match &r.outcome {
            Outcome::Found(Point::Affine(p)) => json!([p[0].index(), p[1].index()]),
            _ => Value::Null,
        };
        let mut out = serde_json::to_value(&r).expect("json");
        out["labels"] = json!(f.elements().map(|a| f.format(a)).collect::<Vec<_>>());
        out["zero"] = json!(zero);
        out["cell"] = cell;
        out["poly_parsed"] = json!(d.poly().to_string());
        Ok(out)
    })())
}

/// Point of the plane curve `curve = 0` off `avoid = 0`.
#[wasm_bindgen]
pub fn curve_point(field: &str, curve: &str, avoid: &str) -> String {
    render((|| {
        let f = parse_field(field)?;
        let x = PlaneCurve::new(parse_expression(curve, &f, Some(3))?)?;
        let d = CurveDivisor::new(&x, parse_expression(avoid, &f, Some(3))?)?;
        let res = point_off_divisor(&x, &d, &f)?;
        let mut out = res.to_json();
        out["point_text"] = json!(format!(
            "({})",
            res.point.coords().iter().map(|&c| res.k2.format(c)).collect::<Vec<_>>().join(" : ")
        ));
        Ok(out)
    })())
}

/// Semistability of a splitting type on P^1 and the smallest partner with
/// vanishing cohomology inside the search box.
#[wasm_bindgen]
pub fn p1_partner(splitting: &str, search_bound: i32, rank_bound: u32) -> String {
    render((|| {
        let t = SplittingType::parse(splitting)?;
        let partner = find_partner(&t, search_bound.max(1) as i64, rank_bound.max(1) as usize);
        Ok(json!({
            "type": t,
            "slope": slope(&t).to_string(),
            "semistable": is_semistable(&t),
            "cohomology": cohomology_dims(&t),
            "partner": partner,
            "tensor": partner.as_ref().map(|p| tensor(&t, p)),
        }))
    })())
}
