//! The quaternion algebra (a, b / Q): elements, embedding, orders, enumeration.

mod checks;
mod enumerate;
pub(crate) mod linalg;
mod order;

pub use checks::{
    elliptic_obstruction, is_division_certified, k2s_check, prop6_check, DivisionCert, K2sReport,
};
pub use enumerate::enumerate_norm_elements;
pub use order::{is_primitive, order_conductors, OrderDesc};

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{bail, Error, Result};
use crate::exact::{factor, Field, QuadElem, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraParams {
    a: i64,
    b: i64,
}

impl AlgebraParams {
    /// `a` squarefree and not 0 or 1; `b` squarefree and positive.
    pub fn new(a: i64, b: i64) -> Result<Self> {
        Field::new(a)?;
        if b <= 0 || !factor::is_squarefree(b) {
            bail!(Domain, "b = {b} must be a positive squarefree integer");
        }
        Ok(AlgebraParams { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn b_rat(&self) -> Rat {
        Rat::from_integer(BigInt::from(self.b))
    }

    pub fn field(&self) -> Field {
        Field::new(self.a).expect("validated on construction")
    }

    pub fn quat(&self, xi: QuadElem, eta: QuadElem) -> Quaternion {
        Quaternion::new(xi, eta, *self).expect("components outside Q(sqrt a)")
    }

    pub fn scalar(&self, q: Rat) -> Quaternion {
        let f = self.field();
        self.quat(f.rat(q), f.zero())
    }

    pub fn one(&self) -> Quaternion {
        self.scalar(Rat::one())
    }

    /// The generator with square b, anticommuting with sqrt(a).
    pub fn big_omega(&self) -> Quaternion {
        let f = self.field();
        self.quat(f.zero(), f.one())
    }

    pub fn small_omega(&self) -> Quaternion {
        let f = self.field();
        self.quat(f.sqrt(), f.zero())
    }
}

/// xi + eta Omega with xi, eta in Q(sqrt a).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    xi: QuadElem,
    eta: QuadElem,
    params: AlgebraParams,
}

impl Quaternion {
    pub fn new(xi: QuadElem, eta: QuadElem, params: AlgebraParams) -> Result<Self> {
        if xi.a() != params.a || eta.a() != params.a {
            bail!(
                Mismatch,
                "components in Q(sqrt {}), Q(sqrt {}) for a = {}",
                xi.a(),
                eta.a(),
                params.a
            );
        }
        Ok(Quaternion { xi, eta, params })
    }

    pub fn xi(&self) -> &QuadElem {
        &self.xi
    }

    pub fn eta(&self) -> &QuadElem {
        &self.eta
    }

    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    pub fn q_mul(&self, other: &Quaternion) -> Result<Quaternion> {
        if self.params != other.params {
            bail!(Mismatch, "algebras {:?} vs {:?}", self.params, other.params);
        }
        Ok(self * other)
    }

    pub fn conj(&self) -> Quaternion {
        Quaternion { xi: self.xi.conj(), eta: -&self.eta, params: self.params }
    }

    /// N(xi) - b N(eta).
    pub fn norm(&self) -> Rat {
        self.xi.norm() - self.params.b_rat() * self.eta.norm()
    }

    pub fn trace(&self) -> Rat {
        self.xi.trace()
    }

    /// The transposed comatrix of the embedding, which is the conjugate.
    pub fn comatrix(&self) -> Quaternion {
        self.conj()
    }

    /// Image in M(2, F): [[xi, eta], [b conj(eta), conj(xi)]].
    pub fn phi(&self) -> Mat2 {
        let b = self.params.b_rat();
        Mat2::new(
            self.xi.clone(),
            self.eta.clone(),
            self.eta.conj().scale(&b),
            self.xi.conj(),
        )
    }

    pub fn scale(&self, q: &Rat) -> Quaternion {
        Quaternion { xi: self.xi.scale(q), eta: self.eta.scale(q), params: self.params }
    }

    pub fn is_scalar(&self) -> bool {
        self.eta.is_zero() && self.xi.is_rational()
    }

    pub fn inverse(&self) -> Option<Quaternion> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.conj().scale(&(Rat::one() / n)))
    }

    /// Parse "xi ; eta" with each side a QuadElem rendering or a rational.
    pub fn parse(s: &str, params: AlgebraParams) -> Result<Quaternion> {
        let (l, r) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected \"xi ; eta\", got {s:?}")))?;
        Quaternion::new(
            QuadElem::parse_in(l, params.a)?,
            QuadElem::parse_in(r, params.a)?,
            params,
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "xi": self.xi.to_string(),
            "eta": self.eta.to_string(),
            "a": self.params.a,
            "b": self.params.b,
        })
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {}", self.xi, self.eta)
    }
}

impl Mul<&Quaternion> for &Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: &Quaternion) -> Quaternion {
        assert_eq!(self.params, rhs.params, "quaternion algebra mismatch");
        let b = self.params.b_rat();
        Quaternion {
            xi: &self.xi * &rhs.xi + (&self.eta * &rhs.eta.conj()).scale(&b),
            eta: &self.xi * &rhs.eta + &self.eta * &rhs.xi.conj(),
            params: self.params,
        }
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        &self * &rhs
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion { xi: -&self.xi, eta: -&self.eta, params: self.params }
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        -&self
    }
}

/// 2x2 matrix over Q(sqrt a), rows (a b) and (c d).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: QuadElem,
    pub b: QuadElem,
    pub c: QuadElem,
    pub d: QuadElem,
}

impl Mat2 {
    pub fn new(a: QuadElem, b: QuadElem, c: QuadElem, d: QuadElem) -> Self {
        for e in [&b, &c, &d] {
            a.same_field(e).expect("matrix entries in different fields");
        }
        Mat2 { a, b, c, d }
    }

    pub fn identity(f: Field) -> Self {
        Mat2::new(f.one(), f.zero(), f.zero(), f.one())
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn det(&self) -> QuadElem {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> QuadElem {
        &self.a + &self.d
    }

    /// Adjugate; inverse up to the determinant.
    pub fn adj(&self) -> Mat2 {
        Mat2::new(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn scale(&self, q: &QuadElem) -> Mat2 {
        Mat2::new(q * &self.a, q * &self.b, q * &self.c, q * &self.d)
    }

    pub fn to_json(&self) -> Value {
        json!([
            [self.a.to_string(), self.b.to_string()],
            [self.c.to_string(), self.d.to_string()]
        ])
    }
}

impl Mul<&Mat2> for &Mat2 {
    type Output = Mat2;
    fn mul(self, r: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a * &r.a + &self.b * &r.c,
            &self.a * &r.b + &self.b * &r.d,
            &self.c * &r.a + &self.d * &r.c,
            &self.c * &r.b + &self.d * &r.d,
        )
    }
}

/// Rational coordinates (x(xi), y(xi), x(eta), y(eta)) in the basis 1, w, W, wW.
pub(crate) fn std_coords(q: &Quaternion) -> Vec<Rat> {
    vec![q.xi.x().clone(), q.xi.y().clone(), q.eta.x().clone(), q.eta.y().clone()]
}

pub(crate) fn from_std_coords(c: &[Rat], params: AlgebraParams) -> Quaternion {
    let f = params.field();
    params.quat(f.elem(c[0].clone(), c[1].clone()), f.elem(c[2].clone(), c[3].clone()))
}
