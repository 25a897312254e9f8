use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{is_primitive, OrderDesc, Quaternion};
use crate::error::{bail, Result};
use crate::exact::{isqrt_exact, Field, QuadElem, Rat};

/// Integral elements of Q(sqrt a), a < 0, written as (X + Y sqrt a)/s with
/// s = 2 when a = 1 mod 4 and s = 1 otherwise, having norm exactly `c`.
pub(crate) fn integral_of_norm(f: Field, c: &BigInt) -> Vec<QuadElem> {
    let a = BigInt::from(f.a());
    let half = f.a().rem_euclid(4) == 1;
    let target = if half { c * 4 } else { c.clone() };
    let mut out = Vec::new();
    if target.is_negative() {
        return out;
    }
    let neg_a = -&a;
    let ymax = (&target / &neg_a).sqrt();
    let mut y = -ymax.clone();
    while y <= ymax {
        let rest = &target - &neg_a * &y * &y;
        if let Some(x) = isqrt_exact(&rest) {
            let xs: Vec<BigInt> = if x.is_zero() { vec![x] } else { vec![-x.clone(), x] };
            for x in xs {
                if half && (&x - &y).is_odd() {
                    continue;
                }
                let s = if half { 2 } else { 1 };
                out.push(f.elem(
                    Rat::new(x.clone(), BigInt::from(s)),
                    Rat::new(y.clone(), BigInt::from(s)),
                ));
            }
        }
        y += 1;
    }
    out
}

/// All integral elements of norm at most `bound` (a < 0).
pub(crate) fn integral_up_to_norm(f: Field, bound: &BigInt) -> Vec<QuadElem> {
    let mut out = Vec::new();
    let mut c = BigInt::zero();
    while &c <= bound {
        out.extend(integral_of_norm(f, &c));
        c += 1;
    }
    out
}

/// Every xi + eta Omega in I0 with norm n and N(eta) at most the bound.
pub fn enumerate_norm_elements(
    order: &OrderDesc,
    n: &BigInt,
    eta_norm_bound: &Rat,
    primitive_only: bool,
) -> Result<Vec<Quaternion>> {
    let params = order.params();
    if params.a() > 0 {
        bail!(Unsupported, "enumeration needs a < 0 (definite norm form on F)");
    }
    if !order.is_i0() {
        bail!(Unsupported, "enumeration is implemented for the reference order I0 only");
    }
    if n < &BigInt::one() {
        bail!(Domain, "norm {n} must be at least 1");
    }
    if eta_norm_bound.is_negative() {
        return Ok(Vec::new());
    }
    let f = params.field();
    let b = BigInt::from(params.b());
    let bound = eta_norm_bound.floor().to_integer();
    let mut out = Vec::new();
    for eta in integral_up_to_norm(f, &bound) {
        let c = n + &b * eta.norm().to_integer();
        for xi in integral_of_norm(f, &c) {
            let q = params.quat(xi, eta.clone());
            if primitive_only && !is_primitive(&q, order)? {
                continue;
            }
            out.push(q);
        }
    }
    out.sort_by(|l, r| (l.eta(), l.xi()).cmp(&(r.eta(), r.xi())));
    Ok(out)
}
