use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{bail, Result};
use crate::exact::{factor, isqrt_exact, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolution {
    pub x: BigInt,
    pub y: BigInt,
    pub d_effective: BigInt,
}

/// Fundamental solution of x^2 - D y^2 = 1 from the continued fraction of sqrt D.
pub fn pell_solve(d: &BigInt) -> Result<PellSolution> {
    if !d.is_positive() {
        bail!(Domain, "Pell parameter {d} is not positive");
    }
    if isqrt_exact(d).is_some() {
        bail!(Domain, "Pell parameter {d} is a perfect square");
    }
    let a0 = d.sqrt();
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut h1, mut h2) = (BigInt::one(), BigInt::zero());
    let (mut k1, mut k2) = (BigInt::zero(), BigInt::one());
    loop {
        let h = &a * &h1 + &h2;
        let k = &a * &k1 + &k2;
        if &h * &h - d * &k * &k == BigInt::one() {
            return Ok(PellSolution { x: h, y: k, d_effective: d.clone() });
        }
        (h2, h1) = (h1, h);
        (k2, k1) = (k1, k);
        m = &q * &a - &m;
        q = (d - &m * &m) / &q;
        a = (&a0 + &m) / &q;
    }
}

/// Solution of X^2 - d Y^2 = 1 in integers for a positive non-square rational d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPell {
    pub x: BigInt,
    pub y: BigInt,
    /// d = p/q with q = m^2 k, k squarefree; the integer equation uses p k.
    pub p: BigInt,
    pub q: BigInt,
    pub m: BigInt,
    pub k: BigInt,
    pub inner: PellSolution,
}

pub fn pell_solve_rational(d: &Rat) -> Result<RationalPell> {
    if !d.is_positive() {
        bail!(Domain, "Pell parameter {d} is not positive");
    }
    if crate::exact::is_rat_square(d) {
        bail!(Domain, "Pell parameter {d} is a rational square");
    }
    let p = d.numer().clone();
    let q = d.denom().clone();
    let (mut m, mut k) = (BigInt::one(), BigInt::one());
    if !q.is_one() {
        for (prime, e) in factor::factor(q.magnitude()) {
            let prime = BigInt::from(prime);
            m *= prime.pow(e / 2);
            if e % 2 == 1 {
                k *= prime;
            }
        }
    }
    let inner = pell_solve(&(&p * &k))?;
    let x = inner.x.clone();
    let y = &m * &k * &inner.y;
    debug_assert!({
        let (xr, yr) = (Rat::from_integer(x.clone()), Rat::from_integer(y.clone()));
        &xr * &xr - d * &yr * &yr == Rat::one()
    });
    Ok(RationalPell { x, y, p, q, m, k, inner })
}
