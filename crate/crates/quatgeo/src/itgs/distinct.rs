use std::collections::HashSet;

use num_bigint::BigInt;

use crate::error::{bail, Result};
use crate::exact::factor::{is_prime_int, is_prime_u64, squarefree_kernel_u64};
use crate::exact::{squarefree_kernel, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctSet {
    pub kept: Vec<u64>,
    pub excluded: Vec<u64>,
}

fn kernel_of(a: i64, t: u64) -> Result<BigInt> {
    let fast = (t as u128)
        .checked_mul(t as u128)
        .and_then(|tt| tt.checked_mul(a.unsigned_abs() as u128))
        .and_then(|v| v.checked_add(1))
        .and_then(|v| u64::try_from(v).ok());
    match fast {
        Some(v) => Ok(BigInt::from(squarefree_kernel_u64(v))),
        None => {
            let v = BigInt::from(1) - BigInt::from(a) * BigInt::from(t) * BigInt::from(t);
            squarefree_kernel(&Rat::from_integer(v))
        }
    }
}

/// Ascending scan of t = 0..=t_max, dropping t when (1 - a t^2)(1 - a t'^2)
/// is a square for an already kept t'. Two such products are squares exactly
/// when the squarefree kernels agree.
pub fn greedy_distinct_set(a: i64, t_max: u64) -> Result<DistinctSet> {
    if a >= 0 {
        bail!(Domain, "a = {a} must be negative");
    }
    let mut seen = HashSet::new();
    let (mut kept, mut excluded) = (Vec::new(), Vec::new());
    for t in 0..=t_max {
        if seen.insert(kernel_of(a, t)?) {
            kept.push(t);
        } else {
            excluded.push(t);
        }
    }
    Ok(DistinctSet { kept, excluded })
}

/// All t in 0..=bound with 1 - a t^2 prime.
pub fn prime_form_search(a: i64, bound: u64) -> Result<Vec<u64>> {
    if a >= 0 {
        bail!(Domain, "a = {a} must be negative");
    }
    let mut out = Vec::new();
    for t in 0..=bound {
        let fast = (t as u128) * (t as u128) * (a.unsigned_abs() as u128) + 1;
        let prime = match u64::try_from(fast) {
            Ok(v) => is_prime_u64(v),
            Err(_) => is_prime_int(&BigInt::from(fast)),
        };
        if prime {
            out.push(t);
        }
    }
    Ok(out)
}
