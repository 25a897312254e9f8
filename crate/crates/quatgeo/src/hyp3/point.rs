use num_traits::Signed;
use serde_json::{json, Value};

use super::require_complex;
use crate::error::{bail, Result};
use crate::exact::{rat_sqrt, QuadElem, Rat};
use crate::quatalg::{Mat2, Quaternion};

/// z + t j in the upper half-space, with t carried exactly as t^2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point3 {
    z: QuadElem,
    t_sq: Rat,
}

impl Point3 {
    pub fn new(z: QuadElem, t: Rat) -> Result<Self> {
        if !t.is_positive() {
            bail!(Domain, "height t = {t} must be positive");
        }
        Ok(Point3 { z, t_sq: &t * &t })
    }

    pub fn with_t_sq(z: QuadElem, t_sq: Rat) -> Result<Self> {
        if !t_sq.is_positive() {
            bail!(Domain, "t^2 = {t_sq} must be positive");
        }
        Ok(Point3 { z, t_sq })
    }

    pub fn z(&self) -> &QuadElem {
        &self.z
    }

    pub fn t_sq(&self) -> &Rat {
        &self.t_sq
    }

    /// The height, when it is rational.
    pub fn t(&self) -> Option<Rat> {
        rat_sqrt(&self.t_sq)
    }

    pub fn to_json(&self) -> Value {
        match self.t() {
            Some(t) => json!({"z": self.z.to_string(), "t": t.to_string()}),
            None => json!({"z": self.z.to_string(), "t_sq": self.t_sq.to_string()}),
        }
    }
}

/// Poincare extension of a matrix with nonzero rational determinant.
pub fn act(m: &Mat2, x: &Point3) -> Result<Point3> {
    require_complex(m.a.a())?;
    m.a.same_field(x.z())?;
    let det = m.det();
    if det.is_zero() || !det.is_rational() {
        bail!(Domain, "determinant {det} must be a nonzero rational");
    }
    let n = det.x().clone();
    if m.c.is_zero() {
        let z = (&m.a * x.z() + &m.b) / &m.d;
        let t_sq = &x.t_sq * m.a.norm() / m.d.norm();
        return Point3::with_t_sq(z, t_sq);
    }
    let w = &m.c * x.z() + &m.d;
    let den = w.norm() + m.c.norm() * &x.t_sq;
    let z = &m.a / &m.c - (w.conj() / &m.c).scale(&(&n / &den));
    let t_sq = &n * &n * &x.t_sq / (&den * &den);
    Point3::with_t_sq(z, t_sq)
}

pub fn act_q(alpha: &Quaternion, x: &Point3) -> Result<Point3> {
    act(&alpha.phi(), x)
}
