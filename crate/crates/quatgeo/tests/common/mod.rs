//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's number theory; everything is naive on purpose.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use quatgeo::exact::{Field, QuadElem, Rat};
use quatgeo::quatalg::{AlgebraParams, Quaternion};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn params() -> AlgebraParams {
    AlgebraParams::new(-2, 13).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn naive_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Euler's criterion on an odd prime.
pub fn euler(n: i64, p: u64) -> i8 {
    let r = n.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn euler_big(n: &BigInt, p: u64) -> i8 {
    let pb = BigInt::from(p);
    let r = ((n % &pb) + &pb) % &pb;
    euler(i64::try_from(r).unwrap(), p)
}

/// Smallest odd prime outside `exclude` with every requested symbol.
pub fn sieve_oracle(targets: &[(i64, i8)], exclude: &[u64], bound: u64) -> Option<u64> {
    (3..=bound).find(|&p| {
        naive_is_prime(p)
            && !exclude.contains(&p)
            && targets.iter().all(|&(v, s)| euler(v, p) == s)
    })
}

/// Smallest y > 0 with 1 + D y^2 a square, by trial.
pub fn brute_pell(d: u64) -> (u64, u64) {
    for y in 1u64.. {
        let x2 = 1 + d * y * y;
        let x = (x2 as f64).sqrt() as u64;
        for c in x.saturating_sub(1)..=x + 1 {
            if c * c == x2 {
                return (c, y);
            }
        }
    }
    unreachable!()
}

pub fn small_rat(r: &mut StdRng, span: i64, max_den: i64) -> Rat {
    Rat::new(r.gen_range(-span..=span).into(), r.gen_range(1..=max_den).into())
}

pub fn small_elem(r: &mut StdRng, f: Field, span: i64, max_den: i64) -> QuadElem {
    f.elem(small_rat(r, span, max_den), small_rat(r, span, max_den))
}

pub fn nonzero_elem(r: &mut StdRng, f: Field, span: i64, max_den: i64) -> QuadElem {
    loop {
        let e = small_elem(r, f, span, max_den);
        if !e.is_zero() {
            return e;
        }
    }
}

/// Random element with nonzero norm.
pub fn random_quaternion(r: &mut StdRng, p: AlgebraParams, span: i64, max_den: i64) -> Quaternion {
    let f = p.field();
    loop {
        let q = p.quat(small_elem(r, f, span, max_den), small_elem(r, f, span, max_den));
        if !q.norm().is_zero() {
            return q;
        }
    }
}

/// Random norm-one element of I0 assembled from products of known generators
/// and their conjugates.
pub fn random_norm_one(r: &mut StdRng, gens: &[Quaternion]) -> Quaternion {
    let mut acc = gens[0].params().one();
    for _ in 0..r.gen_range(1..=4) {
        let g = &gens[r.gen_range(0..gens.len())];
        let g = if r.gen_bool(0.5) { g.conj() } else { g.clone() };
        acc = &acc * &g;
    }
    assert!(acc.norm().is_one());
    acc
}

/// All x + y sqrt(a) with integer coordinates and norm exactly c, a < 0.
pub fn brute_norm_solutions(f: Field, c: i64) -> Vec<QuadElem> {
    let a = f.a();
    let mut out = Vec::new();
    if c < 0 {
        return out;
    }
    let mut y = 0i64;
    while -a * y * y <= c {
        let mut x = 0i64;
        while x * x - a * y * y <= c {
            if x * x - a * y * y == c {
                for sx in [1, -1] {
                    for sy in [1, -1] {
                        let e = f.elem(Rat::from_integer((sx * x).into()), Rat::from_integer((sy * y).into()));
                        if !out.contains(&e) {
                            out.push(e);
                        }
                    }
                }
            }
            x += 1;
        }
        y += 1;
    }
    out
}
