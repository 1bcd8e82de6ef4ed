use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semistab::algebra::{make_field, Embedding, FieldElement, FiniteField, MultiPoly};
use semistab::avoid::{Ambient, Point, ProjectivePoint, Space};
use semistab::curvepoint::{
    fiber_resultant, galois_orbit, point_off_divisor, CurveDivisor, Pencil, PlaneCurve,
};
use semistab::gen::{random_divisor, random_plane_curve};
use semistab::Error;

fn plane_points(f: &FiniteField) -> Vec<ProjectivePoint> {
    Space(Ambient::Projective { n: 2 })
        .points(f)
        .map(|p| match p {
            Point::Projective(p) => p,
            _ => unreachable!(),
        })
        .collect()
}

fn random_center(rng: &mut ChaCha8Rng, x: &PlaneCurve, f: &FiniteField) -> ProjectivePoint {
    let pts = plane_points(f);
    loop {
        let c = &pts[rng.gen_range(0..pts.len())];
        if !x.poly().eval(c.coords()).unwrap().is_zero() {
            return c.clone();
        }
    }
}

/// Whether the line through `c` and `Q(s, t)` meets `F = G = 0` at a point
/// `u c + Q` with `u` in some `F_{q^j}`, `j <= e`.
fn line_meets_divisor(
    x: &PlaneCurve,
    d: &CurveDivisor,
    pencil: &Pencil,
    s: FieldElement,
    t: FieldElement,
) -> bool {
    let k1 = x.field();
    let q = pencil.base_point(s, t);
    (1..=x.degree()).any(|j| {
        let ext = make_field(k1.characteristic() as u64, k1.degree() * j).unwrap();
        let emb = Embedding::new(k1, &ext).unwrap();
        let f = x.poly().embed_into(&emb).unwrap();
        let g = d.poly().embed_into(&emb).unwrap();
        ext.elements().any(|u| {
            let pt: Vec<_> = (0..3)
                .map(|l| ext.add(ext.mul(u, emb.apply(pencil.center.coords()[l])), emb.apply(q[l])))
                .collect();
            f.eval(&pt).unwrap().is_zero() && g.eval(&pt).unwrap().is_zero()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn resultant_has_degree_beta(seed in any::<u64>()) {
        let f7 = make_field(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_plane_curve(&mut rng, &f7, 3);
        let d = random_divisor(&mut rng, &x, 2);
        let c = random_center(&mut rng, &x, &f7);
        match fiber_resultant(&x, &d, &c, &f7) {
            Err(Error::CommonComponent) => {}
            other => {
                let r = other.unwrap();
                prop_assert!(r.is_homogeneous());
                prop_assert_eq!(r.total_degree() as u64, d.beta());
            }
        }
    }

    #[test]
    fn resultant_zeros_are_lines_meeting_divisor(seed in any::<u64>(), fi in 0usize..3) {
        let f = [(5, 1), (7, 1), (2, 2)].map(|(p, k)| make_field(p, k).unwrap())[fi].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_plane_curve(&mut rng, &f, 3);
        let d = random_divisor(&mut rng, &x, 2);
        let c = random_center(&mut rng, &x, &f);
        let Ok(r) = fiber_resultant(&x, &d, &c, &f) else { return Ok(()) };
        let pencil = Pencil::new(c);
        for s in f.elements() {
            for t in f.elements() {
                if s.is_zero() && t.is_zero() {
                    continue;
                }
                prop_assert_eq!(
                    r.eval(&[s, t]).unwrap().is_zero(),
                    line_meets_divisor(&x, &d, &pencil, s, t)
                );
            }
        }
    }

    #[test]
    fn pipeline_repeats_exactly(seed in any::<u64>()) {
        let f = make_field(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_plane_curve(&mut rng, &f, 3);
        let d = random_divisor(&mut rng, &x, 2);
        let a = point_off_divisor(&x, &d, &f).map(|r| r.to_json().to_string());
        let b = point_off_divisor(&x, &d, &f).map(|r| r.to_json().to_string());
        prop_assert_eq!(a, b);
    }
}

#[test]
fn orbits_over_f3_divide_two() {
    let (f3, f9) = (make_field(3, 1).unwrap(), make_field(3, 2).unwrap());
    for p in plane_points(&f9) {
        let orbit = galois_orbit(&p, &f9, &f3).unwrap();
        assert!(orbit.len() == 1 || orbit.len() == 2);
        assert!(orbit.contains(&p));
        for member in &orbit {
            assert_eq!(&galois_orbit(member, &f9, &f3).unwrap(), &orbit);
        }
    }
}

#[test]
fn orbit_is_a_closure_operator() {
    for (p, k, base) in [(2, 3, 1), (2, 4, 2), (3, 3, 1)] {
        let (k1, k2) = (make_field(p, base).unwrap(), make_field(p, k).unwrap());
        for pt in plane_points(&k2).into_iter().step_by(7) {
            let orbit = galois_orbit(&pt, &k2, &k1).unwrap();
            assert_eq!((k / base) as usize % orbit.len(), 0);
            for member in &orbit {
                assert_eq!(&galois_orbit(member, &k2, &k1).unwrap(), &orbit);
            }
        }
    }
}

#[test]
fn empty_divisor_gives_constant() {
    let f7 = make_field(7, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let x = random_plane_curve(&mut rng, &f7, 3);
        let d = CurveDivisor::new(&x, MultiPoly::one(&f7, 3)).unwrap();
        let c = random_center(&mut rng, &x, &f7);
        assert_eq!(fiber_resultant(&x, &d, &c, &f7).unwrap(), MultiPoly::one(&f7, 2));
    }
}
