//! Primality and factorization for desk-scale integers.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin; deterministic below 2^64, strong-probable-prime to 12 bases above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_int(n: &BigInt) -> bool {
    n.sign() == Sign::Plus && is_prime(n.magnitude())
}

fn pollard_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn pollard_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = one.clone();
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1u32;
    }
}

fn push(out: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32) {
    if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
        slot.1 += e;
    } else {
        out.push((p, e));
    }
}

fn split_into(n: BigUint, out: &mut Vec<(BigUint, u32)>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        push(out, n, 1);
        return;
    }
    let d = match n.to_u64() {
        Some(small) => BigUint::from(pollard_u64(small)),
        None => pollard_big(&n),
    };
    let rest = &n / &d;
    split_into(d, out);
    split_into(rest, out);
}

/// Prime factorization of a positive integer, primes ascending.
pub fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "factor of zero");
    let mut out = Vec::new();
    let mut m = n.clone();
    let mut p = 2u32;
    while p < 1000 {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    split_into(m, &mut out);
    out.sort();
    out
}

pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    factor(&BigUint::from(n))
        .into_iter()
        .map(|(p, e)| (p.to_u64().unwrap(), e))
        .collect()
}

/// Squarefree part of a positive integer (fast path for the greedy scans).
pub fn squarefree_kernel_u64(mut n: u64) -> u64 {
    assert!(n > 0);
    let mut k = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e % 2 == 1 {
                k *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
        if p > 1 << 20 {
            for (q, e) in factor_u64(n) {
                if e % 2 == 1 {
                    k *= q;
                }
            }
            return k;
        }
    }
    k * n
}

/// Ascending odd and even primes up to `bound` inclusive.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

/// Distinct prime divisors of a nonzero integer.
pub fn prime_divisors(n: &BigInt) -> Vec<BigUint> {
    if n.is_zero() {
        return Vec::new();
    }
    factor(n.magnitude()).into_iter().map(|(p, _)| p).collect()
}

pub fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    factor_u64(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}
