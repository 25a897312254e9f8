mod common;

use std::collections::BTreeSet;

use common::{euler, params, rng, sieve_oracle, small_rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use quatgeo::exact::{int, rat, Field, QuadElem, Rat};
use quatgeo::hyp3::{
    act, fixed_set, image_of_trace, FixedSet, GeodesicDesc, ItgsDesc, Point3, Proj, TraceCircle,
};
use quatgeo::itgs::{construct_halfplane, construct_sphere, halfplane_trace, pro7_necessary};
use quatgeo::quatalg::{enumerate_norm_elements, is_primitive, OrderDesc, Quaternion};
use quatgeo::separation::{
    corroborate, find_fixer, find_separating_prime, hecke_elements, point_conditions,
    separation_prime_geodesics, separation_prime_halfplanes, separation_prime_points,
    separation_prime_spheres, Condition, CorroborationStatus, ObjectKind, SepConfig, SepObject,
    SepOptions, SeparationCertificate,
};
use quatgeo::Error;
use rand::Rng;

fn f() -> Field {
    Field::new(-2).unwrap()
}

fn e(x: i64, y: i64) -> QuadElem {
    f().elem(int(x), int(y))
}

fn order() -> OrderDesc {
    OrderDesc::i0(params())
}

fn opts() -> SepOptions {
    SepOptions::default()
}

fn pt(z: QuadElem, t: i64) -> Point3 {
    Point3::new(z, int(t)).unwrap()
}

fn symbols(c: &SeparationCertificate) -> Vec<(i64, i8)> {
    c.conditions
        .iter()
        .map(|c| match c {
            Condition::Symbol(v, s) => (v.to_i64().unwrap(), *s),
            Condition::NonSquareAbove(b) => panic!("unexpected ideal-level condition {b}"),
        })
        .collect()
}

/// Re-derives the witness with the naive Euler sieve.
fn oracle_witness(c: &SeparationCertificate) -> u64 {
    let excl: Vec<u64> = c.excluded.iter().copied().collect();
    sieve_oracle(&symbols(c), &excl, 10_000).unwrap()
}

/// Squarefree part by trial division.
fn kernel(n: i64) -> i64 {
    let mut m = n.abs();
    let mut k = 1;
    let mut d = 2;
    while d * d <= m {
        while m % (d * d) == 0 {
            m /= d * d;
        }
        if m % d == 0 {
            m /= d;
            k *= d;
        }
        d += 1;
    }
    n.signum() * k * m
}

fn is_rat_square(q: &Rat) -> bool {
    let sq = |n: &BigInt| !n.is_negative() && n.sqrt().pow(2) == *n;
    sq(q.numer()) && sq(q.denom())
}

#[test]
fn point_form_examples() {
    let pf = point_conditions(&pt(f().sqrt(), 1), &order()).unwrap();
    assert_eq!(pf.eta0, f().one());
    let fm = &pf.form;
    assert_eq!(
        (&fm.kappa, &fm.alpha, &fm.beta, &fm.gamma),
        (&BigInt::from(400), &BigInt::from(100), &BigInt::zero(), &BigInt::from(187))
    );
    assert_eq!(fm.delta, BigInt::from(-74800));
    assert_eq!(kernel(-74800), -187);

    let pf = point_conditions(&pt(f().one(), 1), &order()).unwrap();
    assert_eq!(pf.eta0, f().sqrt());
    // conj(eta0) / eta0 = -conj(z1) / z1 = -1
    assert_eq!(&pf.eta0.conj() / &pf.eta0, -f().one());
    assert!(pf.form.delta.is_negative());

    assert!(matches!(point_conditions(&pt(f().zero(), 1), &order()), Err(Error::Precondition(_))));
}

/// Builds xi + m eta0 Omega from an arbitrary xi, with m solving
/// 2 Re(xi conj(eta0) z1) + m |eta0|^2 [1 + b (t1^2 + |z1|^2)] = 0.
fn fixer_through(x1: &Point3, eta0: &QuadElem, xi: QuadElem) -> Quaternion {
    let b = int(13);
    let z1 = x1.z();
    let re = (&(&xi * &eta0.conj()) * z1).x().clone();
    let k = Rat::one() + &b * (x1.t_sq() + z1.norm());
    let m = -(int(2) * re) / (eta0.norm() * k);
    params().quat(xi, eta0.scale(&m))
}

#[test]
fn point_form_is_represented_by_fixers() {
    let mut r = rng(21);
    let points = [
        pt(f().sqrt(), 1),
        pt(f().one(), 1),
        pt(e(2, 3), 2),
        Point3::new(f().elem(rat(1, 2), rat(-1, 3)), rat(3, 4)).unwrap(),
    ];
    for x1 in &points {
        let pf = point_conditions(x1, &order()).unwrap();
        let fm = &pf.form;
        let eval = |x: &Rat, y: &Rat| {
            Rat::from_integer(fm.alpha.clone()) * x * x
                + Rat::from_integer(fm.beta.clone()) * x * y
                + Rat::from_integer(fm.gamma.clone()) * y * y
        };
        for _ in 0..40 {
            let xi = f().elem(small_rat(&mut r, 30, 5), small_rat(&mut r, 30, 5));
            let alpha = fixer_through(x1, &pf.eta0, xi.clone());
            let n = alpha.norm();
            if n.is_zero() {
                continue;
            }
            assert_eq!(&act(&alpha.phi(), x1).unwrap(), x1, "alpha = {alpha}");
            // (X, Y) are the coordinates of 2 xi
            let (x, y) = (int(2) * xi.x(), int(2) * xi.y());
            assert_eq!(Rat::from_integer(fm.kappa.clone()) * &n, eval(&x, &y));
        }
    }
}

/// Top of the fixed geodesic of an elliptic alpha with eta != 0: the roots of
/// b conj(eta) z^2 + (conj(xi) - xi) z - eta = 0 have midpoint
/// (xi - conj(xi)) / (2 b conj(eta)) and half-distance^2 |D| / (4 b^2 N(eta)).
fn elliptic_top(a: &Quaternion) -> Option<Point3> {
    let (xi, eta) = (a.xi(), a.eta());
    if eta.is_zero() {
        return None;
    }
    let b = int(13);
    let diff = xi - &xi.conj();
    let disc = (&diff * &diff).x().clone() + int(4) * &b * eta.norm();
    if !disc.is_negative() {
        return None;
    }
    let center = diff.scale(&(Rat::one() / (int(2) * &b))) / eta.conj();
    let r_sq = -disc / (int(4) * &b * &b * eta.norm());
    Point3::with_t_sq(center, r_sq).ok()
}

#[test]
fn fixers_have_perpendicular_eta() {
    let mut cands = Vec::new();
    for n in [3i64, 5, 6, 7, 10, 11, 14] {
        for a in enumerate_norm_elements(&order(), &BigInt::from(n), &int(6), false).unwrap() {
            if let Some(x) = elliptic_top(&a) {
                if !x.z().is_zero() {
                    assert_eq!(act(&a.phi(), &x).unwrap(), x, "{a} should fix its own top point");
                    cands.push(x);
                }
            }
        }
    }
    assert!(!cands.is_empty());
    cands.truncate(10);
    let pool: Vec<Quaternion> = (1i64..=15)
        .flat_map(|n| enumerate_norm_elements(&order(), &BigInt::from(n), &int(12), false).unwrap())
        .collect();
    let mut seen = 0;
    for x1 in &cands {
        let z1 = x1.z();
        for a in &pool {
            if a.is_scalar() || act(&a.phi(), x1).unwrap() != *x1 {
                continue;
            }
            let eta = a.eta();
            assert!((&(&eta.conj() * z1) + &(eta * &z1.conj())).is_zero(), "{a} fixes {:?}", x1);
            seen += 1;
        }
    }
    assert!(seen >= cands.len());
}

#[test]
fn point_certificates() {
    let c = separation_prime_points(&[pt(f().sqrt(), 1)], &order(), &opts()).unwrap();
    assert_eq!(c.kind, ObjectKind::Points);
    assert_eq!(symbols(&c), vec![(-2, -1), (-187, -1)]);
    assert_eq!(c.witness, 23);
    assert_eq!(oracle_witness(&c), 23);
    assert!(c.excluded.contains(&2) && c.excluded.contains(&13));
    assert!(c.sound());
    let rep = corroborate(&c, &[], &order(), &int(50)).unwrap();
    assert_eq!(rep.status, CorroborationStatus::Pass);
    assert!(rep.hits.is_empty() && rep.inspected > 0);

    let two = [pt(f().sqrt(), 1), pt(e(0, 2), 3)];
    let c2 = separation_prime_points(&two, &order(), &opts()).unwrap();
    assert_eq!(symbols(&c2), symbols(&c));
    assert!(c2.sound());
    assert_eq!(c2.witness, oracle_witness(&c2));
    let fam = [SepObject::Point(two[1].clone())];
    assert_eq!(corroborate(&c2, &fam, &order(), &int(50)).unwrap().status, CorroborationStatus::Pass);

    assert!(separation_prime_points(&[pt(f().zero(), 1)], &order(), &opts()).is_err());
    assert!(separation_prime_points(&[], &order(), &opts()).is_err());
}

#[test]
fn halfplane_certificates() {
    let h = construct_halfplane(0, 1, params()).unwrap();
    let c = separation_prime_halfplanes(&h.surface, Some(&h.gamma), &order(), &opts()).unwrap();
    assert_eq!(c.kind, ObjectKind::HalfPlanes);
    // c = 20^2 - 4 = 396 = 36 * 11
    assert_eq!(kernel(396), 11);
    assert_eq!(symbols(&c), vec![(-2, -1), (11, -1)]);
    // 23 already meets both conditions, ahead of 29
    assert_eq!((euler(-2, 23), euler(11, 23)), (-1, -1));
    assert_eq!((euler(-2, 29), euler(11, 29)), (-1, -1));
    assert_eq!(c.witness, 23);
    assert_eq!(oracle_witness(&c), 23);
    let rep = corroborate(&c, &[], &order(), &int(50)).unwrap();
    assert_eq!((rep.status, rep.hits.len()), (CorroborationStatus::Pass, 0));

    let h10 = construct_halfplane(1, 0, params()).unwrap();
    let c = separation_prime_halfplanes(&h10.surface, Some(&h10.gamma), &order(), &opts()).unwrap();
    assert_eq!(kernel(2496), 39);
    assert_eq!(symbols(&c), vec![(-2, -1), (39, -1)]);
    assert_eq!(c.witness, oracle_witness(&c));
    assert!(c.sound());

    // a witness that does not fix the plane
    assert!(matches!(
        separation_prime_halfplanes(&h.surface, Some(&h10.gamma), &order(), &opts()),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn sphere_certificates() {
    let s = construct_sphere(&f().elem(rat(2, 3), int(1)), &int(3), params()).unwrap();
    let c = separation_prime_spheres(&s.surface, Some(&s.gamma), &order(), &opts()).unwrap();
    assert_eq!(c.kind, ObjectKind::HalfSpheres);
    assert_eq!(symbols(&c), vec![(-2, -1), (895, -1)]);
    assert_eq!(895 % 23, 21);
    assert_eq!(euler(895, 23), -1);
    assert_eq!(c.witness, 23);
    assert_eq!(oracle_witness(&c), 23);
    let rep = corroborate(&c, &[], &order(), &int(50)).unwrap();
    assert_eq!((rep.status, rep.hits.len()), (CorroborationStatus::Pass, 0));

    for (a1, r_sq) in [(e(5, 2), int(30)), (e(7, 3), int(64))] {
        let s = construct_sphere(&a1, &r_sq, params()).unwrap();
        let c = separation_prime_spheres(&s.surface, Some(&s.gamma), &order(), &opts()).unwrap();
        let lhs = pro7_necessary(s.surface.trace(), &s.gamma).unwrap().lhs.unwrap();
        let (k, _) = symbols(&c)[1];
        assert!(is_rat_square(&(lhs / int(k))), "kernel {k} does not match the pro7 value");
        assert!(c.sound());
        assert_eq!(c.witness, oracle_witness(&c));
    }

    let s0 = ItgsDesc::s0(params());
    assert!(matches!(separation_prime_spheres(&s0, None, &order(), &opts()), Err(Error::Unsupported(_))));
    let centered = ItgsDesc::HalfSphere(TraceCircle::circle(f().zero(), int(2)).unwrap());
    assert!(matches!(separation_prime_spheres(&centered, None, &order(), &opts()), Err(Error::Precondition(_))));
}

#[test]
fn geodesic_certificates() {
    let h = construct_halfplane(0, 1, params()).unwrap();
    let FixedSet::Axis(axis) = fixed_set(&h.gamma.phi()).unwrap() else { panic!("no axis") };
    let c = separation_prime_geodesics(&[axis.clone()], &order(), &opts()).unwrap();
    assert_eq!(c.kind, ObjectKind::Geodesics);
    assert!(!c.heuristic);
    assert!(c.sound());
    assert!(c.conditions.iter().all(|k| k.holds(c.witness)));
    let rep = corroborate(&c, &[], &order(), &int(50)).unwrap();
    assert_eq!(rep.status, CorroborationStatus::Pass);
    // duplicates collapse
    let c2 = separation_prime_geodesics(&[axis.clone(), axis.clone()], &order(), &opts()).unwrap();
    assert_eq!(c2.witness, c.witness);

    let vertical = GeodesicDesc::from_endpoints(&Proj::Fin(f().zero()), &Proj::Inf).unwrap();
    let c = separation_prime_geodesics(&[vertical], &order(), &opts()).unwrap();
    assert!(c.heuristic);
    let rep = corroborate(&c, &[], &order(), &int(50)).unwrap();
    assert_eq!(rep.status, CorroborationStatus::Inconclusive);
}

#[test]
fn configurations() {
    let h01 = construct_halfplane(0, 1, params()).unwrap();
    let h10 = construct_halfplane(1, 0, params()).unwrap();
    let cfg = SepConfig {
        itgs: vec![h01.surface.clone(), h10.surface.clone()],
        witness: Some(h01.gamma.clone()),
        ..Default::default()
    };
    let c = find_separating_prime(&cfg, &order(), &opts()).unwrap();
    assert_eq!(c.subject, SepObject::Itgs(h01.surface.clone()));
    assert!(c.sound());
    assert_eq!(c.witness, oracle_witness(&c));
    let fam = [SepObject::Itgs(h10.surface.clone())];
    let rep = corroborate(&c, &fam, &order(), &int(50)).unwrap();
    assert_eq!((rep.status, rep.hits.len()), (CorroborationStatus::Pass, 0));

    let cfg = SepConfig { points: vec![pt(f().sqrt(), 1)], ..Default::default() };
    let c = find_separating_prime(&cfg, &order(), &opts()).unwrap();
    assert_eq!(c, separation_prime_points(&[pt(f().sqrt(), 1)], &order(), &opts()).unwrap());

    let cfg = SepConfig { itgs: vec![ItgsDesc::s0(params())], ..Default::default() };
    assert!(matches!(find_separating_prime(&cfg, &order(), &opts()), Err(Error::Unsupported(_))));
    assert!(matches!(find_separating_prime(&SepConfig::default(), &order(), &opts()), Err(Error::Domain(_))));
}

#[test]
fn family_members_reached_at_small_primes_are_excluded() {
    // G2 is the image of G1 under an element of norm 3, so 3 must be excluded
    let h = construct_halfplane(0, 1, params()).unwrap();
    let g1 = h.surface.trace().clone();
    let a3 = enumerate_norm_elements(&order(), &BigInt::from(3), &int(20), false)
        .unwrap()
        .into_iter()
        .find(|a| !a.eta().is_zero())
        .unwrap();
    let g2 = image_of_trace(&a3, &g1).unwrap();
    assert_ne!(g2, g1);
    let cfg = SepConfig {
        itgs: vec![ItgsDesc::from_trace(g1), ItgsDesc::from_trace(g2.clone())],
        witness: Some(h.gamma.clone()),
        ..Default::default()
    };
    let c = find_separating_prime(&cfg, &order(), &opts()).unwrap();
    assert!(c.excluded.contains(&3));
    assert!(c.sound());
    let rep = corroborate(&c, &[SepObject::Itgs(ItgsDesc::from_trace(g2))], &order(), &int(50)).unwrap();
    assert_eq!(rep.status, CorroborationStatus::Pass);
}

#[test]
fn wrong_prime_is_not_a_pass() {
    let h = construct_halfplane(0, 1, params()).unwrap();
    let mut c = separation_prime_halfplanes(&h.surface, Some(&h.gamma), &order(), &opts()).unwrap();
    // (11/5) = +1
    assert_eq!(euler(11, 5), 1);
    c.witness = 5;
    assert!(!c.sound());
    let rep = corroborate(&c, &[], &order(), &int(50)).unwrap();
    assert_ne!(rep.status, CorroborationStatus::Pass);
    if rep.hits.is_empty() {
        assert_eq!(rep.status, CorroborationStatus::Inconclusive);
    }
}

#[test]
fn reduction_products_fix_the_first_surface() {
    // G1 = the plane over R, stabilized by every x + y Omega with x, y rational;
    // the family is its images under norm-3 elements
    let g1 = TraceCircle::line(f().zero(), f().one()).unwrap();
    let alphas: Vec<_> = enumerate_norm_elements(&order(), &BigInt::from(3), &int(30), false)
        .unwrap()
        .into_iter()
        .filter(|a| image_of_trace(a, &g1).unwrap() != g1)
        .collect();
    let mut checked = 0;
    for p in [17u64, 23, 29] {
        let cands = enumerate_norm_elements(&order(), &BigInt::from(p), &int(30), false).unwrap();
        for ai in &alphas {
            let gi = image_of_trace(ai, &g1).unwrap();
            for a in &cands {
                if image_of_trace(a, &g1).unwrap() != gi {
                    continue;
                }
                let prod = &ai.comatrix() * a;
                assert_eq!(prod.norm(), int(3 * p as i64));
                assert!(is_primitive(&prod, &order()).unwrap());
                assert_eq!(image_of_trace(&prod, &g1).unwrap(), g1);
                checked += 1;
            }
        }
    }
    assert!(checked > 0, "fixture family produced no pairs");
}

#[test]
fn hecke_elements_have_the_right_norms() {
    for p in [3u64, 5, 7] {
        let els = hecke_elements(&order(), p, &int(20)).unwrap();
        assert!(!els.is_empty());
        for a in &els {
            let n = a.norm();
            if n == int(p as i64) {
                continue;
            }
            assert_eq!(n, int((p * p) as i64));
            assert!(is_primitive(a, &order()).unwrap());
        }
    }
}

#[test]
fn fixer_search_finds_hyperbolic_elements() {
    let t = halfplane_trace(1, 0, params()).unwrap();
    let g = find_fixer(&t, &order(), &int(50)).unwrap().expect("fixer within bound");
    assert!(g.norm().is_one());
    assert_eq!(image_of_trace(&g, &t).unwrap(), t);
    // no hyperbolic unit with small eta fixes this line
    let far = TraceCircle::line(f().elem(int(0), rat(1, 7)), f().one()).unwrap();
    assert!(find_fixer(&far, &order(), &int(5)).unwrap().is_none());
}

#[test]
fn certificates_are_sound_on_random_points() {
    let mut r = rng(5);
    let mut n = 0;
    while n < 25 {
        let z = f().elem(small_rat(&mut r, 5, 3), small_rat(&mut r, 5, 3));
        if z.is_zero() {
            continue;
        }
        let t = Rat::new(r.gen_range(1..6).into(), r.gen_range(1..4).into());
        let x1 = Point3::new(z, t).unwrap();
        let c = separation_prime_points(&[x1], &order(), &opts()).unwrap();
        assert!(c.sound());
        assert_eq!(c.witness, oracle_witness(&c));
        let excl: BTreeSet<u64> = c.excluded.clone();
        assert!(!excl.contains(&c.witness));
        n += 1;
    }
}
