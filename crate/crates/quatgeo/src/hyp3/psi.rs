use num_traits::One;
use serde_json::{json, Value};

use super::Point3;
use crate::error::{bail, Result};
use crate::exact::{int, QuadElem, Rat};
use crate::quatalg::{Mat2, Quaternion};

/// The point of the hemisphere S0 attached to a norm-one element:
/// z = 2 xi eta / (1 + 2b N(eta)), t^2 = 1 / (b (1 + 2b N(eta))^2).
pub fn psi_map(gamma: &Quaternion) -> Result<Point3> {
    if gamma.norm() != Rat::one() {
        bail!(Domain, "psi needs norm 1, got {}", gamma.norm());
    }
    super::require_complex(gamma.params().a())?;
    let b = gamma.params().b_rat();
    let s = Rat::one() + int(2) * &b * gamma.eta().norm();
    let z = (gamma.xi() * gamma.eta()).scale(&(int(2) / &s));
    let t_sq = Rat::one() / (&b * &s * &s);
    Point3::with_t_sq(z, t_sq)
}

/// A point x + i y + t j of H^3 whose coordinates lie in a real field Q(sqrt a), a > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K1Point {
    pub x: QuadElem,
    pub y: QuadElem,
    pub t: QuadElem,
}

impl K1Point {
    pub fn new(x: QuadElem, y: QuadElem, t: QuadElem) -> Result<Self> {
        if x.a() < 0 {
            bail!(Unsupported, "real-field points need a > 0");
        }
        x.same_field(&y)?;
        x.same_field(&t)?;
        if t.real_sign() <= 0 {
            bail!(Domain, "height {t} must be positive");
        }
        Ok(K1Point { x, y, t })
    }

    pub fn to_json(&self) -> Value {
        json!({"x": self.x.to_string(), "y": self.y.to_string(), "t": self.t.to_string()})
    }
}

fn abs_real(e: &QuadElem) -> QuadElem {
    if e.real_sign() < 0 {
        -e
    } else {
        e.clone()
    }
}

/// Poincare extension for a matrix with entries in a real field.
pub fn act_k1(m: &Mat2, p: &K1Point) -> Result<K1Point> {
    if m.a.a() < 0 {
        bail!(Unsupported, "real-field action needs a > 0");
    }
    let n = m.det();
    if n.is_zero() {
        bail!(Domain, "singular matrix");
    }
    if m.c.is_zero() {
        let x = (&m.a * &p.x + &m.b) / &m.d;
        let y = &m.a * &p.y / &m.d;
        let t = abs_real(&(&m.a / &m.d)) * &p.t;
        return K1Point::new(x, y, t);
    }
    let u = &m.c * &p.x + &m.d;
    let cy = &m.c * &p.y;
    let ct = &m.c * &p.t;
    let den = &u * &u + &cy * &cy + &ct * &ct;
    let x = &m.a / &m.c - &n * &u / (&m.c * &den);
    let y = &n * &p.y / &den;
    let t = abs_real(&n) * &p.t / &den;
    K1Point::new(x, y, t)
}

/// f(x) = Im(z) / t in real-field coordinates.
pub fn f_invariant(p: &K1Point) -> Result<QuadElem> {
    if p.x.a() < 0 {
        bail!(Unsupported, "f is defined for real fields (a > 0)");
    }
    Ok(&p.y / &p.t)
}

pub fn f_check(gamma: &Quaternion, p: &K1Point) -> Result<bool> {
    if gamma.params().a() < 0 {
        bail!(Unsupported, "f is defined for real fields (a > 0)");
    }
    let image = act_k1(&gamma.phi(), p)?;
    Ok(f_invariant(&image)? == f_invariant(p)?)
}
