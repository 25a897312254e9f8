//! Exact rationals and quadratic-field elements.

pub mod factor;
mod quad;

pub use quad::{Field, QuadElem};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{bail, Error, Result};

/// Exact rational, always in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn big(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// Exponent of the prime `p` in `q`.
pub fn ord_p(q: &Rat, p: u64) -> Result<i64> {
    if q.is_zero() {
        bail!(Domain, "ord_p of zero");
    }
    if !factor::is_prime_u64(p) {
        bail!(Domain, "{p} is not prime");
    }
    Ok(ord_int(q.numer(), p) - ord_int(q.denom(), p))
}

pub(crate) fn ord_int(n: &BigInt, p: u64) -> i64 {
    let bp = BigInt::from(p);
    let mut m = n.clone();
    let mut e = 0;
    while !m.is_zero() && (&m % &bp).is_zero() {
        m /= &bp;
        e += 1;
    }
    e
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareAnalysis {
    pub is_square: bool,
    /// Squarefree integer k (sign included) with q = k times a rational square.
    pub kernel: BigInt,
}

pub fn square_analysis(q: &Rat) -> Result<SquareAnalysis> {
    if q.is_zero() {
        bail!(Domain, "square analysis of zero");
    }
    let mut k = BigUint::one();
    for part in [q.numer().magnitude(), q.denom().magnitude()] {
        if part.is_one() {
            continue;
        }
        for (p, e) in factor::factor(part) {
            if e % 2 == 1 {
                k *= p;
            }
        }
    }
    // numer and denom are coprime, so the odd-exponent primes never collide
    let kernel = BigInt::from_biguint(if q.is_negative() { Sign::Minus } else { Sign::Plus }, k);
    Ok(SquareAnalysis { is_square: kernel.is_one(), kernel })
}

pub fn squarefree_kernel(q: &Rat) -> Result<BigInt> {
    square_analysis(q).map(|s| s.kernel)
}

pub fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root in Q, when it exists.
pub fn rat_sqrt(q: &Rat) -> Option<Rat> {
    let n = isqrt_exact(q.numer())?;
    let d = isqrt_exact(q.denom())?;
    Some(Rat::new(n, d))
}

pub fn is_rat_square(q: &Rat) -> bool {
    rat_sqrt(q).is_some()
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                bail!(Parse, "zero denominator in {s:?}");
            }
            Ok(Rat::new(parse_int(n)?, d))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Integer value of a rational, or an error naming `what`.
pub fn to_integer(q: &Rat, what: &str) -> Result<BigInt> {
    if !q.is_integer() {
        bail!(Domain, "{what} = {q} is not an integer");
    }
    Ok(q.to_integer())
}

pub fn to_i64(n: &BigInt, what: &str) -> Result<i64> {
    n.to_i64()
        .ok_or_else(|| Error::Domain(format!("{what} = {n} out of machine range")))
}

pub fn lcm_denoms<'a>(qs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
