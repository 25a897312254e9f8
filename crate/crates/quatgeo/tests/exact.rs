mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use quatgeo::exact::factor::{factor_u64, is_prime_u64, is_squarefree, primes_up_to};
use quatgeo::exact::{int, ord_p, parse_rat, rat, square_analysis, Field, QuadElem, Rat};

fn f() -> Field {
    Field::new(-2).unwrap()
}

#[test]
fn conj_norm_trace_examples() {
    let e = f().elem(int(10), int(3));
    assert_eq!(e.conj(), f().elem(int(10), int(-3)));
    assert_eq!(e.norm(), int(118));
    assert_eq!(e.trace(), int(20));

    let one = f().one();
    assert_eq!((one.conj(), one.norm(), one.trace()), (f().one(), int(1), int(2)));

    let w = f().sqrt();
    assert_eq!(w.conj(), -&w);
    assert_eq!(w.norm(), int(2));
    assert_eq!(w.trace(), int(0));
}

#[test]
fn integrality() {
    assert!(f().elem(int(3), int(2)).is_integral());
    assert!(!f().elem(rat(1, 2), rat(1, 2)).is_integral());
    let g = Field::new(5).unwrap();
    assert!(g.elem(rat(1, 2), rat(1, 2)).is_integral());
    assert!(g.elem(rat(3, 2), rat(-1, 2)).is_integral());
    assert!(!g.elem(rat(1, 2), int(1)).is_integral());
}

#[test]
fn valuations() {
    assert_eq!(ord_p(&rat(9, 13), 13).unwrap(), -1);
    assert_eq!(ord_p(&int(118), 2).unwrap(), 1);
    assert_eq!(ord_p(&int(1), 7).unwrap(), 0);
    assert!(ord_p(&int(0), 7).is_err());
    assert!(ord_p(&int(5), 9).is_err());
}

#[test]
fn square_analysis_examples() {
    let s = square_analysis(&rat(895, 196)).unwrap();
    assert!(!s.is_square);
    assert_eq!(s.kernel, BigInt::from(895));
    let s = square_analysis(&int(9)).unwrap();
    assert!(s.is_square);
    assert_eq!(s.kernel, BigInt::one());
    let s = square_analysis(&int(-74800)).unwrap();
    assert!(!s.is_square);
    assert_eq!(s.kernel, BigInt::from(-187));
    assert!(square_analysis(&int(0)).is_err());
    // a negative square is not a square
    assert!(!square_analysis(&int(-4)).unwrap().is_square);
}

#[test]
fn rendering_round_trip() {
    let e = f().elem(rat(-3, 7), rat(5, 2));
    assert_eq!(e.to_string(), "-3/7 + 5/2*sqrt(-2)");
    assert_eq!(e.to_string().parse::<QuadElem>().unwrap(), e);
    let e = f().elem(int(0), int(-1));
    assert_eq!(e.to_string().parse::<QuadElem>().unwrap(), e);
    assert_eq!("-sqrt(-2)".parse::<QuadElem>().unwrap(), e);
    assert_eq!(QuadElem::parse_in("7/3", -2).unwrap(), f().elem(rat(7, 3), int(0)));
    assert!(QuadElem::parse_in("1 + sqrt(5)", -2).is_err());
    assert!("1 + 2*sqrt(4)".parse::<QuadElem>().is_err());
    assert!(parse_rat("1/0").is_err());
}

#[test]
fn cross_field_rejected() {
    let x = f().one();
    let y = Field::new(-1).unwrap().one();
    assert!(x.checked_add(&y).is_err());
    assert!(x.checked_mul(&y).is_err());
}

#[test]
fn factoring_agrees_with_trial_division() {
    for n in 2u64..3000 {
        let mut m = n;
        let mut d = 2;
        let mut expect = Vec::new();
        while m > 1 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            if e > 0 {
                expect.push((d, e));
            }
            d += 1;
        }
        assert_eq!(factor_u64(n), expect, "n = {n}");
        assert_eq!(is_prime_u64(n), common::naive_is_prime(n));
    }
    let sieve = primes_up_to(1000);
    assert_eq!(sieve, (2..=1000).filter(|&n| common::naive_is_prime(n)).collect::<Vec<_>>());
}

fn elem() -> impl Strategy<Value = QuadElem> {
    (-50i64..50, 1i64..12, -50i64..50, 1i64..12)
        .prop_map(|(xn, xd, yn, yd)| f().elem(rat(xn, xd), rat(yn, yd)))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    (-5000i64..5000, 1i64..500)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #[test]
    fn norm_is_multiplicative(x in elem(), y in elem()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn norm_and_trace_from_conjugate(x in elem()) {
        let n = &x * &x.conj();
        prop_assert!(n.is_rational());
        prop_assert_eq!(n.x().clone(), x.norm());
        prop_assert_eq!((&x + &x.conj()).x().clone(), x.trace());
        prop_assert!(!x.norm().is_negative());
    }

    #[test]
    fn division_inverts_multiplication(x in elem(), y in elem()) {
        prop_assume!(!y.is_zero());
        prop_assert_eq!(&(&x * &y) / &y, x);
    }

    #[test]
    fn kernel_round_trip(q in nonzero_rat()) {
        let s = square_analysis(&q).unwrap();
        let k = Rat::from_integer(s.kernel.clone());
        let rest = &q / &k;
        prop_assert!(rest.is_positive());
        let (n, d) = (rest.numer().sqrt(), rest.denom().sqrt());
        prop_assert_eq!(&n * &n, rest.numer().clone());
        prop_assert_eq!(&d * &d, rest.denom().clone());
        prop_assert!(is_squarefree(i64::try_from(s.kernel.clone()).unwrap()));
        prop_assert_eq!(s.is_square, s.kernel.is_one());
    }

    #[test]
    fn valuation_is_additive(x in nonzero_rat(), y in nonzero_rat(), p in prop::sample::select(vec![2u64, 3, 5, 7, 13])) {
        prop_assert_eq!(
            ord_p(&(&x * &y), p).unwrap(),
            ord_p(&x, p).unwrap() + ord_p(&y, p).unwrap()
        );
    }

    #[test]
    fn render_parse(x in elem()) {
        prop_assert_eq!(x.to_string().parse::<QuadElem>().unwrap(), x);
    }
}

#[test]
fn zero_has_no_inverse() {
    assert!(f().zero().inv().is_none());
    assert!(f().zero().is_zero());
    assert!(Rat::zero().is_zero());
}
