//! Legendre symbols, prime searches, splitting, residue tests and Pell equations.

mod pell;

pub use pell::{pell_solve, pell_solve_rational, PellSolution, RationalPell};

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{bail, Error, Result};
use crate::exact::factor::{self, pow_mod};
use crate::exact::{squarefree_kernel, QuadElem, Rat};

fn reduce_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Jacobi symbol (n/m) for odd positive m.
pub fn jacobi(mut n: u64, mut m: u64) -> i8 {
    assert!(m % 2 == 1, "jacobi needs an odd modulus");
    n %= m;
    let mut t = 1i8;
    while n != 0 {
        while n % 2 == 0 {
            n /= 2;
            if matches!(m % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut n, &mut m);
        if n % 4 == 3 && m % 4 == 3 {
            t = -t;
        }
        n %= m;
    }
    if m == 1 {
        t
    } else {
        0
    }
}

fn euler(n: u64, p: u64) -> i8 {
    match pow_mod(n, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

pub fn legendre(n: &BigInt, p: u64) -> Result<i8> {
    if p % 2 == 0 || !factor::is_prime_u64(p) {
        bail!(Domain, "{p} is not an odd prime");
    }
    Ok(legendre_unchecked(reduce_mod(n, p), p))
}

pub fn legendre_i64(n: i64, p: u64) -> Result<i8> {
    legendre(&BigInt::from(n), p)
}

pub(crate) fn legendre_unchecked(n: u64, p: u64) -> i8 {
    let s = jacobi(n, p);
    debug_assert_eq!(s, euler(n, p), "jacobi/euler disagree at ({n}/{p})");
    s
}

/// Keys of the GF(2) exponent vector: -1 for the sign, primes otherwise.
fn exponent_vector(v: &BigInt) -> Result<BTreeSet<BigInt>> {
    let k = squarefree_kernel(&Rat::from_integer(v.clone()))?;
    let mut keys: BTreeSet<BigInt> = factor::prime_divisors(&k)
        .into_iter()
        .map(BigInt::from)
        .collect();
    if k.is_negative() {
        keys.insert(-BigInt::one());
    }
    Ok(keys)
}

/// Echelon insertion; returns false when the row reduces to zero.
/// The flag rides along so dependent rows expose their accumulated flag.
fn insert_row(
    basis: &mut BTreeMap<BigInt, (BTreeSet<BigInt>, bool)>,
    mut row: BTreeSet<BigInt>,
    mut flag: bool,
) -> (bool, bool) {
    while let Some(pivot) = row.iter().next_back().cloned() {
        match basis.get(&pivot) {
            Some((b, bf)) => {
                row = row.symmetric_difference(b).cloned().collect();
                flag ^= bf;
            }
            None => {
                basis.insert(pivot, (row, flag));
                return (true, flag);
            }
        }
    }
    (false, flag)
}

/// True iff no nonempty sub-product of `values` is a perfect square.
pub fn two_independent(values: &[BigInt]) -> Result<bool> {
    let mut basis = BTreeMap::new();
    for v in values {
        if v.is_zero() {
            bail!(Domain, "zero value in independence test");
        }
        if !insert_row(&mut basis, exponent_vector(v)?, false).0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that the requested symbols respect every multiplicative relation.
pub fn targets_consistent(targets: &[(BigInt, i8)]) -> Result<bool> {
    let mut basis = BTreeMap::new();
    for (v, s) in targets {
        if v.is_zero() {
            bail!(Domain, "zero value among symbol targets");
        }
        if *s != 1 && *s != -1 {
            bail!(Domain, "symbol target must be +1 or -1, got {s}");
        }
        let (independent, flag) = insert_row(&mut basis, exponent_vector(v)?, *s == -1);
        if !independent && flag {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest odd prime up to `bound`, outside `exclude`, with all symbols as requested.
pub fn find_prime_with_symbols(
    targets: &[(BigInt, i8)],
    exclude: &BTreeSet<u64>,
    bound: u64,
) -> Result<u64> {
    if !targets_consistent(targets)? {
        bail!(Domain, "symbol targets contradict a multiplicative relation");
    }
    for p in factor::primes_up_to(bound) {
        if p == 2 || exclude.contains(&p) {
            continue;
        }
        if targets
            .iter()
            .all(|(v, s)| legendre_unchecked(reduce_mod(v, p), p) == *s)
        {
            return Ok(p);
        }
    }
    Err(Error::Exhausted(format!(
        "no prime up to {bound} achieves the requested symbols"
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SplitType {
    Inert,
    Split,
    Ramified,
}

impl SplitType {
    pub fn residue_degree(self) -> u32 {
        match self {
            SplitType::Inert => 2,
            SplitType::Split | SplitType::Ramified => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SplitType::Inert => "Inert",
            SplitType::Split => "Split",
            SplitType::Ramified => "Ramified",
        }
    }
}

impl std::str::FromStr for SplitType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "inert" => Ok(SplitType::Inert),
            "split" => Ok(SplitType::Split),
            "ramified" => Ok(SplitType::Ramified),
            _ => Err(Error::Parse(format!("unknown split type {s:?}"))),
        }
    }
}

/// Decomposition of the prime p in the ring of integers of Q(sqrt a).
pub fn split_type(p: u64, a: i64) -> Result<SplitType> {
    if !factor::is_prime_u64(p) {
        bail!(Domain, "{p} is not prime");
    }
    if p == 2 {
        // minimal polynomial X^2 - X + (1-a)/4 when a = 1 mod 4, else X^2 - a
        return Ok(match a.rem_euclid(8) {
            1 => SplitType::Split,
            5 => SplitType::Inert,
            _ => SplitType::Ramified,
        });
    }
    Ok(match legendre_i64(a, p)? {
        0 => SplitType::Ramified,
        1 => SplitType::Split,
        _ => SplitType::Inert,
    })
}

/// Square root of n modulo an odd prime (Tonelli-Shanks).
pub fn sqrt_mod(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if legendre_unchecked(n, p) != 1 {
        return None;
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while legendre_unchecked(z, p) != -1 {
        z += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let (mut m, mut c, mut t, mut r) = (
        s,
        pow_mod(z, q, p),
        pow_mod(n, q, p),
        pow_mod(n, (q + 1) / 2, p),
    );
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul(tt, tt);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    Some(r.min(p - r))
}

fn rat_mod(q: &Rat, p: u64) -> u64 {
    let n = reduce_mod(q.numer(), p);
    let d = reduce_mod(q.denom(), p);
    let inv = pow_mod(d, p - 2, p);
    ((n as u128 * inv as u128) % p as u128) as u64
}

fn fp2_mul(l: (u64, u64), r: (u64, u64), a: u64, p: u64) -> (u64, u64) {
    let m = |x: u64, y: u64| (x as u128 * y as u128) % p as u128;
    let x = (m(l.0, r.0) + m(m(l.1, r.1) as u64, a)) % p as u128;
    let y = (m(l.0, r.1) + m(l.1, r.0)) % p as u128;
    (x as u64, y as u64)
}

fn fp2_pow(mut b: (u64, u64), mut e: u128, a: u64, p: u64) -> (u64, u64) {
    let mut acc = (1 % p, 0);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp2_mul(acc, b, a, p);
        }
        b = fp2_mul(b, b, a, p);
        e >>= 1;
    }
    acc
}

/// Squareness of beta modulo each prime ideal above p (one entry if inert,
/// two if split, the ideal for the smaller square root of a first).
pub fn is_square_mod_each_p(beta: &QuadElem, p: u64) -> Result<Vec<bool>> {
    if !beta.is_integral() {
        bail!(Domain, "{beta} is not an algebraic integer");
    }
    let kind = split_type(p, beta.a())?;
    if kind == SplitType::Ramified {
        bail!(Unsupported, "{p} ramifies in Q(sqrt {})", beta.a());
    }
    if p == 2 {
        // every residue is a square in characteristic 2; the test carries no information
        bail!(Unsupported, "residue squareness above 2");
    }
    let x = rat_mod(beta.x(), p);
    let y = rat_mod(beta.y(), p);
    let a = reduce_mod(&BigInt::from(beta.a()), p);
    match kind {
        SplitType::Split => {
            let r = sqrt_mod(a, p).expect("split prime has a root");
            let mut out = Vec::new();
            for root in [r, p - r] {
                let v = ((x as u128 + y as u128 * root as u128) % p as u128) as u64;
                if v == 0 {
                    bail!(Domain, "{beta} lies in a prime above {p}");
                }
                out.push(legendre_unchecked(v, p) == 1);
            }
            Ok(out)
        }
        _ => {
            if x == 0 && y == 0 {
                bail!(Domain, "{beta} lies in the prime {p}");
            }
            let e = (p as u128 * p as u128 - 1) / 2;
            let v = fp2_pow((x, y), e, a, p);
            Ok(vec![v == (1, 0)])
        }
    }
}

/// Squareness of beta in O_F/P; for split p, P is the ideal over the smaller root of a.
#[allow(non_snake_case)]
pub fn is_square_mod_P(beta: &QuadElem, p: u64) -> Result<bool> {
    Ok(is_square_mod_each_p(beta, p)?[0])
}

/// Fraction of odd primes up to `prime_bound` of the given splitting type.
pub fn density_estimate(a: i64, which: SplitType, prime_bound: u64) -> Result<Rat> {
    if prime_bound < 100 {
        bail!(Domain, "prime bound {prime_bound} below 100");
    }
    let mut total = 0u64;
    let mut hits = 0u64;
    for p in factor::primes_up_to(prime_bound) {
        if p == 2 {
            continue;
        }
        total += 1;
        if split_type(p, a)? == which {
            hits += 1;
        }
    }
    Ok(Rat::new(BigInt::from(hits), BigInt::from(total)))
}
