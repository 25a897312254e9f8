use num_bigint::BigInt;
use num_traits::Zero;

use super::{is_primitive, AlgebraParams, OrderDesc, Quaternion};
use crate::error::{bail, Result};
use crate::exact::{factor, ord_p, Rat};
use crate::numthy::legendre_i64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisionCert {
    CertifiedDivision,
    PossiblyMatrix,
}

/// One-sided: b an odd prime with (a/b) = -1 forces a division algebra.
pub fn is_division_certified(params: AlgebraParams) -> DivisionCert {
    let b = params.b() as u64;
    if b % 2 == 1 && factor::is_prime_u64(b) && legendre_i64(params.a(), b) == Ok(-1) {
        DivisionCert::CertifiedDivision
    } else {
        DivisionCert::PossiblyMatrix
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K2sReport {
    pub member: bool,
    /// (a/b), (-1/b), (-3/b); absent when b is not an odd prime.
    pub symbols: Option<(i8, i8, i8)>,
}

pub fn k2s_check(params: AlgebraParams) -> K2sReport {
    let b = params.b() as u64;
    let symbols = (b % 2 == 1 && factor::is_prime_u64(b)).then(|| {
        (
            legendre_i64(params.a(), b).unwrap(),
            legendre_i64(-1, b).unwrap(),
            legendre_i64(-3, b).unwrap(),
        )
    });
    let member = params.a() < 0 && b != 3 && symbols == Some((-1, 1, 1));
    K2sReport { member, symbols }
}

/// True when one of a, -a, -3a is a square mod b, so torsion is not excluded.
pub fn elliptic_obstruction(a: i64, b: i64) -> Result<bool> {
    if b <= 3 || !factor::is_prime_u64(b as u64) {
        bail!(Domain, "b = {b} must be an odd prime other than 3");
    }
    for v in [a, -a, -3 * a] {
        if legendre_i64(v, b as u64)? >= 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// For primitive alpha with p | N(alpha) under the admissibility hypotheses,
/// N(xi) and N(eta) are both prime to p.
pub fn prop6_check(alpha: &Quaternion, p: u64, order: &OrderDesc) -> Result<bool> {
    let params = alpha.params();
    if !is_primitive(alpha, order)? {
        bail!(Precondition, "{alpha} is not primitive");
    }
    let (d, dp) = order.conductors();
    let guard = BigInt::from(2 * params.a() * params.b()) * d * dp;
    if ord_p(&Rat::from_integer(guard), p)? != 0 {
        bail!(Precondition, "p = {p} divides 2abDD'");
    }
    if legendre_i64(params.a(), p)? != -1 {
        bail!(Precondition, "({}/{p}) is not -1", params.a());
    }
    let n = alpha.norm();
    if n.is_zero() || !n.is_integer() || ord_p(&n, p)? < 1 {
        bail!(Precondition, "p = {p} does not divide N(alpha) = {n}");
    }
    let (nx, ne) = (alpha.xi().norm(), alpha.eta().norm());
    if nx.is_zero() || ne.is_zero() {
        return Ok(false);
    }
    Ok(ord_p(&nx, p)? == 0 && ord_p(&ne, p)? == 0)
}
