//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails. Set `SEMISTAB_BLESS=1` to rewrite the golden digests.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use semistab::algebra::{make_field, parse_expression, Embedding, FiniteField, MultiPoly};
use semistab::avoid::{
    avoid_affine, avoid_grassmannian, avoid_projective, binomial, exhaustive_oracle, plucker,
    satisfies_three_term_relations, Ambient, Hypersurface, Mode, Outcome, Point, Space,
};
use semistab::bounds::{bound_m, popa_n, rank_pipeline, BoundInputs, FieldMode};
use semistab::curvepoint::{point_off_divisor, CurveDivisor, CurvePointResult, PlaneCurve};
use semistab::gen::{random_divisor, random_form, random_plane_curve, random_poly};
use semistab::p1lab::{find_partner, verify_criterion, SplittingType};
use semistab::Error;

const FIELDS: [(u64, u32); 7] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)];

struct Verdict {
    id: &'static str,
    title: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    limit: Option<Duration>,
    /// Canonical JSON of every produced record, for the determinism check.
    records: Option<String>,
}

fn field(p: u64, k: u32) -> FiniteField {
    make_field(p, k).unwrap()
}

fn rng_for(tag: &str, a: u64, b: u64) -> ChaCha8Rng {
    let seed = tag.bytes().fold(a.wrapping_mul(1_000_003) ^ b, |h, c| {
        h.wrapping_mul(31).wrapping_add(c as u64)
    });
    ChaCha8Rng::seed_from_u64(seed)
}

fn timed<F>(id: &'static str, title: &'static str, limit: Option<u64>, run: F) -> Verdict
where
    F: FnOnce() -> (bool, String, Option<String>),
{
    let start = Instant::now();
    let (ok, detail, records) = run();
    let elapsed = start.elapsed();
    let limit = limit.map(Duration::from_secs);
    Verdict {
        id,
        title,
        pass: ok && limit.is_none_or(|l| elapsed < l),
        detail,
        elapsed,
        limit,
        records,
    }
}

fn record(d: &Hypersurface, r: &impl serde::Serialize) -> Value {
    json!({"poly": d.poly().to_string(), "result": r})
}

/// Independent re-check of a found point: plain evaluation, and for
/// Grassmannian points a fresh Plücker vector from the matrix.
fn witness_ok(d: &Hypersurface, f: &FiniteField, p: &Point) -> bool {
    let poly = d.poly().over(f).unwrap();
    match p {
        Point::Affine(x) => !poly.eval(x).unwrap().is_zero(),
        Point::Projective(x) => !poly.eval(x.coords()).unwrap().is_zero(),
        Point::Grassmannian(g) => {
            let (m, n) = match d.ambient() {
                Ambient::Grassmannian { m, n } => (m, n),
                _ => return false,
            };
            let fresh = plucker(f, g.matrix()).unwrap();
            fresh == g.plucker()
                && satisfies_three_term_relations(f, m, n, &fresh)
                && !poly.eval(&fresh).unwrap().is_zero()
        }
    }
}

fn affine_threshold() -> (bool, String, Option<String>) {
    let mut failures = 0;
    let mut total = 0;
    let mut recs = Vec::new();
    for &(p, k) in &FIELDS {
        let f = field(p, k);
        let q = f.cardinality();
        for n in 1..=3 {
            let mut rng = rng_for("affine", q as u64, n as u64);
            for _ in 0..300 {
                let d = Hypersurface::affine(random_poly(&mut rng, &f, n, (q - 1).min(4), 6)).unwrap();
                let r = avoid_affine(&d, &f).unwrap();
                total += 1;
                let ok = r.mode == Mode::Guaranteed
                    && r.point().is_some_and(|pt| witness_ok(&d, &f, pt));
                failures += !ok as usize;
                recs.push(record(&d, &r));
            }
        }
    }
    (
        failures == 0,
        format!("{total} instances, {failures} failures"),
        Some(Value::Array(recs).to_string()),
    )
}

fn projective_threshold() -> (bool, String, Option<String>) {
    let mut failures = 0;
    let mut total = 0;
    let mut recs = Vec::new();
    for &(p, k) in &FIELDS {
        let f = field(p, k);
        let q = f.cardinality();
        for n in 1..=3 {
            let mut rng = rng_for("projective", q as u64, n as u64);
            for _ in 0..300 {
                let deg = rng.gen_range(0..=q);
                let d = Hypersurface::projective(random_form(&mut rng, &f, n + 1, deg, 6)).unwrap();
                let r = avoid_projective(&d, &f).unwrap();
                total += 1;
                let ok = r.mode == Mode::Guaranteed
                    && r.point().is_some_and(|pt| witness_ok(&d, &f, pt));
                failures += !ok as usize;
                recs.push(record(&d, &r));
            }
        }
    }
    (
        failures == 0,
        format!("{total} instances, {failures} failures"),
        Some(Value::Array(recs).to_string()),
    )
}

fn grassmannian_threshold() -> (bool, String, Option<String>) {
    let mut failures = 0;
    let mut total = 0;
    let mut vanishing = 0;
    let mut recs = Vec::new();
    for &(p, k) in FIELDS.iter().filter(|&&(p, k)| p.pow(k) >= 3) {
        let f = field(p, k);
        let q = f.cardinality();
        let mut rng = rng_for("grass", q as u64, 0);
        for _ in 0..300 {
            let deg = rng.gen_range(1..=(q - 1) / 2);
            let d = Hypersurface::grassmannian(random_form(&mut rng, &f, binomial(4, 2), deg, 5), 2, 4)
                .unwrap();
            total += 1;
            match avoid_grassmannian(&d, &f) {
                Err(Error::CellContained) => {
                    // the form vanishes on the whole Grassmannian, so it cuts no divisor
                    vanishing += 1;
                    failures += !exhaustive_oracle(&d, &f).unwrap().is_empty() as usize;
                    recs.push(json!({"poly": d.poly().to_string(), "result": "cell_contained"}));
                }
                Ok(r) => {
                    let ok = r.mode == Mode::Guaranteed
                        && r.point().is_some_and(|pt| witness_ok(&d, &f, pt));
                    failures += !ok as usize;
                    recs.push(record(&d, &r));
                }
                Err(_) => failures += 1,
            }
        }
    }
    (
        failures == 0,
        format!("{total} instances ({vanishing} vanish on Grass(2,4)), {failures} failures"),
        Some(Value::Array(recs).to_string()),
    )
}

/// `x0^q - x0` times a random factor: vanishes on every point of the line.
fn vanishing_affine(rng: &mut ChaCha8Rng, f: &FiniteField, n: usize) -> MultiPoly {
    let q = f.cardinality();
    let x0 = MultiPoly::var(f, n, 0);
    x0.pow(q).sub(&x0).mul(&random_poly(rng, f, n, 1, 3))
}

/// `x0^q x1 - x0 x1^q` vanishes on every point of `P^1`.
fn vanishing_projective(rng: &mut ChaCha8Rng, f: &FiniteField, n: usize) -> MultiPoly {
    let q = f.cardinality();
    let (x0, x1) = (MultiPoly::var(f, n + 1, 0), MultiPoly::var(f, n + 1, 1));
    let base = x0.pow(q).mul(&x1).sub(&x0.mul(&x1.pow(q)));
    if n == 1 {
        base.mul(&random_form(rng, f, 2, 1, 2))
    } else {
        base
    }
}

fn oracle_agreement() -> (bool, String, Option<String>) {
    let mut compared = 0;
    let mut mismatches = 0;
    let mut negatives = 0;
    let mut fallback = 0;
    let mut recs = Vec::new();
    let mut check = |d: Hypersurface, f: &FiniteField, recs: &mut Vec<Value>| {
        if Space(d.ambient()).point_count(f.cardinality()) > 100_000 {
            return;
        }
        let r = match d.ambient() {
            Ambient::Affine { .. } => avoid_affine(&d, f),
            Ambient::Projective { .. } => avoid_projective(&d, f),
            Ambient::Grassmannian { .. } => avoid_grassmannian(&d, f),
        };
        let all = exhaustive_oracle(&d, f).unwrap();
        compared += 1;
        let agree = match r {
            Ok(ref r) => {
                fallback += (r.mode == Mode::ExhaustiveFallback) as usize;
                match &r.outcome {
                    Outcome::Found(p) => all.first() == Some(p) || (r.mode == Mode::Guaranteed && all.contains(p)),
                    Outcome::NoPointExists => {
                        negatives += 1;
                        all.is_empty()
                    }
                    Outcome::Unknown => false,
                }
            }
            Err(Error::CellContained) => all.is_empty(),
            Err(_) => false,
        };
        mismatches += !agree as usize;
        recs.push(json!({
            "poly": d.poly().to_string(),
            "ambient": d.ambient(),
            "result": r.as_ref().map(|r| serde_json::to_value(r).unwrap()).unwrap_or(Value::Null),
            "oracle_count": all.len(),
        }));
    };

    let f2 = field(2, 1);
    let doc = parse_expression("x0*x1*(x0+x1)", &f2, None).unwrap();
    check(Hypersurface::affine(doc.clone()).unwrap(), &f2, &mut recs);
    check(Hypersurface::projective(doc).unwrap(), &f2, &mut recs);

    for &(p, k) in &FIELDS {
        let f = field(p, k);
        let q = f.cardinality();
        let mut rng = rng_for("oracle", q as u64, 0);
        for n in 1..=3 {
            for i in 0..60 {
                // degrees on both sides of the threshold
                let deg = rng.gen_range(0..=q + 2);
                let poly = if i % 6 == 5 {
                    vanishing_affine(&mut rng, &f, n)
                } else {
                    random_poly(&mut rng, &f, n, deg, 6)
                };
                check(Hypersurface::affine(poly).unwrap(), &f, &mut recs);

                let form = if i % 6 == 5 {
                    vanishing_projective(&mut rng, &f, n)
                } else {
                    random_form(&mut rng, &f, n + 1, deg, 6)
                };
                check(Hypersurface::projective(form).unwrap(), &f, &mut recs);
            }
        }
        for _ in 0..30 {
            let deg = rng.gen_range(1..=q.max(2));
            let d = Hypersurface::grassmannian(random_form(&mut rng, &f, 6, deg, 5), 2, 4).unwrap();
            check(d, &f, &mut recs);
        }
    }
    (
        mismatches == 0 && negatives > 0 && fallback > 0,
        format!(
            "{compared} comparisons ({fallback} fallback, {negatives} with no point), {mismatches} mismatches"
        ),
        Some(Value::Array(recs).to_string()),
    )
}

fn bound_spot_values() -> (bool, String, Option<String>) {
    let inp = |n, a, b, m| BoundInputs::new(n, a, b, m).unwrap();
    let checks = [
        ("M(1,2,5)", bound_m(&inp(1, 2, 5, FieldMode::General)), 6),
        ("M(2,3,1)", bound_m(&inp(2, 3, 1, FieldMode::General)), 12),
        ("M_inf(2,3,1)", bound_m(&inp(2, 3, 1, FieldMode::Infinite)), 3),
        ("M_inf(1,7,40)", bound_m(&inp(1, 7, 40, FieldMode::Infinite)), 7),
        ("M_char5(1,2,5)", bound_m(&inp(1, 2, 5, FieldMode::CharP(5))), 2),
        ("popa_n(2)", popa_n(2), 2),
        ("popa_n(5)", popa_n(5), 7),
    ];
    let mut bad: Vec<String> = checks
        .iter()
        .filter(|(_, got, want)| got != want)
        .map(|(name, got, want)| format!("{name} = {got} != {want}"))
        .collect();
    let rep = rank_pipeline(2, 2, 1, inp(1, 2, 5, FieldMode::General)).unwrap();
    if rep.rank != BigUint::from(2880u32) {
        bad.push(format!("R = {} != 2880", rep.rank));
    }
    let detail = if bad.is_empty() {
        format!("{} values exact, R(g=2,r=2,d=1,alpha=2,beta=5) = {}", checks.len() + 1, rep.rank)
    } else {
        bad.join("; ")
    };
    (bad.is_empty(), detail, None)
}

/// Points of `X` on the chosen line over `F_{q^i}`; the line is `u c + Q0`.
fn line_roots(res: &CurvePointResult, f: &MultiPoly, i: u32) -> usize {
    let k1 = &res.k1;
    let ext = field(k1.characteristic() as u64, k1.degree() * i);
    let emb = Embedding::new(k1, &ext).unwrap();
    let fe = f.embed_into(&emb).unwrap();
    let q0 = res.pencil.base_point(res.fiber_parameter.coords()[0], res.fiber_parameter.coords()[1]);
    ext.elements()
        .filter(|&u| {
            let pt: Vec<_> = (0..3)
                .map(|l| ext.add(ext.mul(u, emb.apply(res.center.coords()[l])), emb.apply(q0[l])))
                .collect();
            fe.eval(&pt).unwrap().is_zero()
        })
        .count()
}

/// Full enumeration of `X(F_{q^j})` off `D`, if the plane is small enough.
fn enumerate_curve(res: &CurvePointResult, x: &PlaneCurve, d: &CurveDivisor) -> Option<bool> {
    let k2 = &res.k2;
    if Space(Ambient::Projective { n: 2 }).point_count(k2.cardinality()) > 400_000 {
        return None;
    }
    let f = x.poly().over(k2).unwrap();
    let g = d.poly().over(k2).unwrap();
    let found = Space(Ambient::Projective { n: 2 }).points(k2).any(|p| match p {
        Point::Projective(p) => {
            p == res.point
                && f.eval(p.coords()).unwrap().is_zero()
                && !g.eval(p.coords()).unwrap().is_zero()
        }
        _ => false,
    });
    Some(found)
}

fn curve_suite() -> (bool, String, Option<String>) {
    let fields = [(7, 1), (2, 3), (3, 2), (11, 1), (13, 1)];
    let mut rng = rng_for("curve", 0, 0);
    let mut failures = Vec::new();
    let mut regenerated = 0;
    let mut enumerated = 0;
    let mut by_degree = [0usize; 4];
    let mut recs = Vec::new();
    let mut done = 0;
    while done < 100 {
        let (p, k) = fields[rng.gen_range(0..fields.len())];
        let k1 = field(p, k);
        let x = random_plane_curve(&mut rng, &k1, 3);
        let d = random_divisor(&mut rng, &x, 2);
        let res = match point_off_divisor(&x, &d, &k1) {
            Err(Error::CommonComponent) => {
                regenerated += 1;
                continue;
            }
            Err(e) => {
                failures.push(format!("#{done}: {e}"));
                done += 1;
                continue;
            }
            Ok(r) => r,
        };
        done += 1;
        let e = x.degree();
        let j = res.ext_degree;
        by_degree[j as usize] += 1;
        let f2 = x.poly().over(&res.k2).unwrap();
        let g2 = d.poly().over(&res.k2).unwrap();
        let mut ok = f2.eval(res.point.coords()).unwrap().is_zero()
            && !g2.eval(res.point.coords()).unwrap().is_zero()
            && j <= e
            && res.flags.all();
        // the chosen line has no point of X over any smaller extension
        ok &= (1..j).all(|i| line_roots(&res, x.poly(), i) == 0);
        ok &= line_roots(&res, x.poly(), j) > 0;
        if let Some(found) = enumerate_curve(&res, &x, &d) {
            enumerated += 1;
            ok &= found;
        }
        if !ok {
            failures.push(format!("#{done}: {}", res.to_json()));
        }
        recs.push(json!({
            "curve": x.poly().to_string(),
            "divisor": d.poly().to_string(),
            "result": res.to_json(),
        }));
    }
    (
        failures.is_empty(),
        format!(
            "100 triples (ext degree 1/2/3: {}/{}/{}, {enumerated} fully enumerated, {regenerated} regenerated for a shared component), {} failures{}",
            by_degree[1],
            by_degree[2],
            by_degree[3],
            failures.len(),
            failures.first().map(|s| format!(": {s}")).unwrap_or_default()
        ),
        Some(Value::Array(recs).to_string()),
    )
}

fn genus_zero_criterion() -> (bool, String, Option<String>) {
    let rep = verify_criterion(3, 2, 3, 3);
    let st = |v: &[i64]| SplittingType::new(v.to_vec()).unwrap();
    let p00 = find_partner(&st(&[0, 0]), 2, 2);
    let p1m1 = find_partner(&st(&[1, -1]), 5, 3);
    let ok = rep.counterexamples.is_empty() && p00 == Some(st(&[-1])) && p1m1.is_none();
    let detail = format!(
        "{} types, {} counterexamples, (0,0) -> {}, (1,-1) -> {}, max partner rank {}",
        rep.types_checked,
        rep.counterexamples.len(),
        p00.map_or("none".into(), |t| t.to_string()),
        p1m1.map_or("none".into(), |t| t.to_string()),
        rep.max_partner_rank
    );
    let recs = json!({"report": rep}).to_string();
    (ok, detail, Some(recs))
}

/// FNV-1a, 64 bit: a digest that is stable across platforms and toolchains.
fn fnv64(s: &str) -> u64 {
    s.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/acceptance.json")
}

fn determinism(first: &[Verdict]) -> (bool, String, Option<String>) {
    let rerun: Vec<(&str, Option<String>)> = vec![
        ("1", affine_threshold().2),
        ("2a", projective_threshold().2),
        ("2b", grassmannian_threshold().2),
        ("3", oracle_agreement().2),
        ("5", curve_suite().2),
        ("6", genus_zero_criterion().2),
    ];
    let mut digests = serde_json::Map::new();
    let mut differing = Vec::new();
    for (id, again) in &rerun {
        let before = first.iter().find(|v| v.id == *id).and_then(|v| v.records.clone());
        if before != *again {
            differing.push(id.to_string());
        }
        let text = again.clone().unwrap_or_default();
        digests.insert(
            id.to_string(),
            json!({"bytes": text.len(), "fnv64": format!("{:016x}", fnv64(&text))}),
        );
    }
    let current = serde_json::to_string_pretty(&Value::Object(digests)).unwrap() + "\n";
    let path = golden_path();
    let bless = std::env::var_os("SEMISTAB_BLESS").is_some();
    let golden = if bless {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &current).unwrap();
        Some(current.clone())
    } else {
        std::fs::read_to_string(&path).ok()
    };
    let mut detail = String::new();
    if differing.is_empty() {
        write!(detail, "rerun byte-identical for {} suites", rerun.len()).unwrap();
    } else {
        write!(detail, "rerun differs for {}", differing.join(", ")).unwrap();
    }
    let golden_ok = golden.as_deref() == Some(current.as_str());
    match &golden {
        None => detail.push_str("; golden file missing"),
        Some(_) if golden_ok => detail.push_str("; golden digests match"),
        Some(_) => detail.push_str("; golden digests differ"),
    }
    (differing.is_empty() && golden_ok, detail, None)
}

fn main() {
    let mut verdicts = vec![
        timed("1", "affine threshold suite", Some(60), affine_threshold),
        timed("2a", "projective threshold suite", Some(60), projective_threshold),
        timed("2b", "Grass(2,4) threshold suite", Some(60), grassmannian_threshold),
        timed("3", "oracle agreement", Some(120), oracle_agreement),
        timed("4", "bound spot values", Some(1), bound_spot_values),
        timed("5", "plane-curve suite", Some(120), curve_suite),
        timed("6", "genus-0 criterion", Some(10), genus_zero_criterion),
    ];
    let det = timed("7", "determinism", None, || determinism(&verdicts));
    verdicts.push(det);

    let mut all = true;
    for v in &verdicts {
        all &= v.pass;
        let limit = v.limit.map(|l| format!(" < {} s", l.as_secs())).unwrap_or_default();
        println!(
            "[{}] {:>2} {}: {} ({:.2} s{})",
            if v.pass { "PASS" } else { "FAIL" },
            v.id,
            v.title,
            v.detail,
            v.elapsed.as_secs_f64(),
            limit
        );
    }
    if !all {
        std::process::exit(1);
    }
}
