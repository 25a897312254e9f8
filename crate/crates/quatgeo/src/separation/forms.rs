use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{bail, Result};
use crate::exact::{int, lcm_denoms, QuadElem, Rat};
use crate::hyp3::Point3;
use crate::quatalg::OrderDesc;

/// kappa N = alpha X^2 + beta X Y + gamma Y^2, with delta = beta^2 - 4 alpha gamma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFormZ {
    pub kappa: BigInt,
    pub alpha: BigInt,
    pub beta: BigInt,
    pub gamma: BigInt,
    pub delta: BigInt,
}

impl QuadraticFormZ {
    /// Clears denominators of rational coefficients and removes the content.
    pub fn from_rational(kappa: &Rat, alpha: &Rat, beta: &Rat, gamma: &Rat) -> Result<Self> {
        if kappa.is_zero() {
            bail!(Domain, "kappa = 0");
        }
        let l = Rat::from_integer(lcm_denoms([kappa, alpha, beta, gamma]));
        let mut c: Vec<BigInt> =
            [kappa, alpha, beta, gamma].iter().map(|q| (*q * &l).to_integer()).collect();
        let g = c.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        let sign = if c[0].is_negative() { -1 } else { 1 };
        for v in c.iter_mut() {
            *v = &*v / &g * sign;
        }
        let delta = &c[2] * &c[2] - BigInt::from(4) * &c[1] * &c[3];
        let [kappa, alpha, beta, gamma]: [BigInt; 4] = c.try_into().unwrap();
        Ok(QuadraticFormZ { kappa, alpha, beta, gamma, delta })
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.alpha * x * x + &self.beta * x * y + &self.gamma * y * y
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kappa": self.kappa.to_string(),
            "alpha": self.alpha.to_string(),
            "beta": self.beta.to_string(),
            "gamma": self.gamma.to_string(),
            "delta": self.delta.to_string(),
        })
    }
}

/// Primitive s + r sqrt(a) in Z[sqrt a] with Re(conj(eta) z) = 0, i.e.
/// (s, r) proportional to (a v, u) for z = u + v sqrt(a); first nonzero
/// coordinate positive.
pub fn canonical_perp(z: &QuadElem) -> Result<QuadElem> {
    if z.is_zero() {
        bail!(Domain, "no direction attached to 0");
    }
    let s = int(z.a()) * z.y();
    let r = z.x().clone();
    let l = Rat::from_integer(lcm_denoms([&s, &r]));
    let (s, r) = ((&s * &l).to_integer(), (&r * &l).to_integer());
    let g = s.gcd(&r);
    let (mut s, mut r) = (s / &g, r / &g);
    if s.is_negative() || (s.is_zero() && r.is_negative()) {
        s = -s;
        r = -r;
    }
    Ok(z.field().elem(Rat::from_integer(s), Rat::from_integer(r)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointForm {
    pub form: QuadraticFormZ,
    pub eta0: QuadElem,
}

impl PointForm {
    pub fn to_json(&self) -> Value {
        json!({"form": self.form.to_json(), "eta0": self.eta0.to_string()})
    }
}

/// The definite form that the coordinates (X, Y) of 2 xi must represent
/// (times kappa) when xi + m eta0 Omega of norm N fixes x1.
///
/// From N = |xi + b eta conj(z1)|^2 + b^2 |eta|^2 t1^2 and |xi|^2 - b|eta|^2 = N,
/// eta = m eta0 with conj(eta0) z1 imaginary, and eliminating m:
/// 4 |eta0|^2 K^2 N = |eta0|^2 K^2 (X^2 - a Y^2) - 4 b (X w_x + a Y w_y)^2,
/// where w = conj(eta0) z1 and K = 1 + b (t1^2 + N(z1)).
pub fn point_conditions(x1: &Point3, order: &OrderDesc) -> Result<PointForm> {
    let z1 = x1.z();
    if z1.is_zero() {
        bail!(Precondition, "z1 = 0: the point lies on the axis over the origin");
    }
    let params = order.params();
    if z1.a() != params.a() {
        bail!(Mismatch, "point in Q(sqrt {}), algebra has a = {}", z1.a(), params.a());
    }
    let (a, b) = (int(params.a()), params.b_rat());
    let eta0 = canonical_perp(z1)?;
    let w = eta0.conj() * z1;
    let n0 = eta0.norm();
    let k = Rat::from_integer(1.into()) + &b * (x1.t_sq() + z1.norm());
    let nk2 = &n0 * &k * &k;
    let four_b = int(4) * &b;
    let (wx, wy) = (w.x(), w.y());
    let kappa = int(4) * &nk2;
    let alpha = &nk2 - &four_b * wx * wx;
    let beta = -(int(8) * &b * &a * wx * wy);
    let gamma = -(&a * &nk2) - &four_b * &a * &a * wy * wy;
    let form = QuadraticFormZ::from_rational(&kappa, &alpha, &beta, &gamma)?;
    if !form.delta.is_negative() {
        bail!(Validation, "point form is not definite: delta = {}", form.delta);
    }
    Ok(PointForm { form, eta0 })
}
