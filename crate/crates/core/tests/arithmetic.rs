mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use pvgkit::projgeom::{collinear, cross_ratio, join, meet, orient, segment_intersection};
use pvgkit::{ProjPoint, Rational, Scalar, Segment, SegmentIntersection};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

fn root5() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(a, b)| Scalar::quadratic(a, b, 5).unwrap())
}

fn point() -> impl Strategy<Value = ProjPoint> {
    (rational(), rational()).prop_map(|(x, y)| ProjPoint::affine(x.into(), y.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(a in root5(), b in root5(), c in root5()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
            prop_assert_eq!(&b * &b.checked_inv().unwrap(), Scalar::one());
        } else {
            prop_assert!(b.checked_inv().is_err());
        }
    }

    #[test]
    fn order_matches_floats(a in root5(), b in root5()) {
        let (fa, fb) = (a.to_f64(), b.to_f64());
        if (fa - fb).abs() > 1e-9 {
            prop_assert_eq!(a < b, fa < fb);
        }
        prop_assert_eq!((&a - &b).signum(), a.cmp(&b) as i32);
    }

    #[test]
    fn text_round_trip(a in root5()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn orient_alternates(p in point(), q in point(), r in point()) {
        let s = orient(&p, &q, &r).unwrap();
        prop_assert_eq!(orient(&q, &p, &r).unwrap(), -s);
        prop_assert_eq!(orient(&q, &r, &p).unwrap(), s);
        prop_assert_eq!(s == 0, collinear(&p, &q, &r));
    }

    #[test]
    fn join_meet_incidence(p in point(), q in point(), r in point(), s in point()) {
        prop_assume!(p != q && r != s);
        let (l, m) = (join(&p, &q).unwrap(), join(&r, &s).unwrap());
        prop_assert!(l.contains(&p) && l.contains(&q));
        if let Ok(x) = meet(&l, &m) {
            prop_assert!(l.contains(&x) && m.contains(&x));
        }
    }

    #[test]
    fn segment_intersection_matches_parametric(p in point(), q in point(), r in point(), s in point()) {
        prop_assume!(p != q && r != s);
        let (ax, ay, bx, by) = (p.x(), p.y(), q.x(), q.y());
        let (cx, cy, dx, dy) = (r.x(), r.y(), s.x(), s.y());
        let e = &bx.clone() - ax;
        let f = &by.clone() - ay;
        let g = &dx.clone() - cx;
        let h = &dy.clone() - cy;
        let den = &(&e * &h) - &(&f * &g);
        let got = segment_intersection(&Segment::new(p.clone(), q.clone()).unwrap(), &Segment::new(r.clone(), s.clone()).unwrap());
        if den.is_zero() {
            prop_assert!(!matches!(got, SegmentIntersection::Point(_)) || !collinear(&p, &q, &r));
        } else {
            let wx = &cx.clone() - ax;
            let wy = &cy.clone() - ay;
            let t = &(&(&wx * &h) - &(&wy * &g)) / &den;
            let u = &(&(&wx * &f) - &(&wy * &e)) / &den;
            let inside = |v: &Scalar| v.signum() >= 0 && *v <= Scalar::one();
            match got {
                SegmentIntersection::Point(x) => {
                    prop_assert!(inside(&t) && inside(&u));
                    prop_assert_eq!(x, ProjPoint::affine(ax + &(&t * &e), ay + &(&t * &f)));
                }
                SegmentIntersection::None => prop_assert!(!(inside(&t) && inside(&u))),
                SegmentIntersection::Overlap => prop_assert!(false, "overlap of non-parallel segments"),
            }
        }
    }

    #[test]
    fn cross_ratio_invariant(seed in any::<u64>(), vals in proptest::collection::btree_set(-20i64..20, 4)) {
        let mut r = rng(seed);
        let v: Vec<i64> = vals.into_iter().collect();
        let dir = (q(r.gen_range(1..=5), 1), q(r.gen_range(-5..=5), 3));
        let pts: Vec<ProjPoint> = v
            .iter()
            .map(|&t| ProjPoint::affine(Scalar::from(dir.0.clone() * q(t, 1)), Scalar::from(dir.1.clone() * q(t, 1))))
            .collect();
        let cr = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
        let expect = Scalar::from(q((v[0] - v[2]) * (v[1] - v[3]), (v[0] - v[3]) * (v[1] - v[2])));
        prop_assert_eq!(&cr, &expect);
        for _ in 0..8 {
            let m = random_map(&mut r);
            let img: Vec<ProjPoint> = pts.iter().map(|p| m.apply(p)).collect();
            prop_assert_eq!(cross_ratio(&img[0], &img[1], &img[2], &img[3]).unwrap(), cr.clone());
        }
    }
}

#[test]
fn quadratic_sign_and_decimal() {
    let phi = &(&Scalar::one() + &Scalar::sqrt(5).unwrap()) / &Scalar::from_int(2);
    assert_eq!(&(&phi * &phi) - &phi, Scalar::one());
    let dec: f64 = phi.to_decimal(12).parse().unwrap();
    assert!((dec - 1.618_033_988_75).abs() < 1e-9);
    let tiny = Scalar::quadratic(q(-2207, 1), q(987, 1), 5).unwrap();
    assert_eq!(tiny.signum(), tiny.to_f64().signum() as i32);
    assert!(Scalar::sqrt(4).is_err());
}

#[test]
#[should_panic(expected = "mixed quadratic fields")]
fn mixed_fields_panic() {
    let _ = &Scalar::sqrt(5).unwrap() + &Scalar::sqrt(2).unwrap();
}

#[test]
fn cross_ratio_errors() {
    let p = |x| ProjPoint::int(x, 0);
    assert!(cross_ratio(&p(0), &p(1), &p(2), &ProjPoint::int(3, 1)).is_err());
    assert!(cross_ratio(&p(0), &p(1), &p(0), &p(0)).is_err());
    assert_eq!(cross_ratio(&p(0), &p(1), &p(2), &p(3)).unwrap(), Scalar::from_ratio(4, 3));
}
