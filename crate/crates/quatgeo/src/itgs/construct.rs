use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{halfplane_invariance, sphere_map_criterion, ClosedItgsCert, PellRecord};
use crate::error::{bail, Result};
use crate::exact::{big, int, is_rat_square, ord_p, QuadElem, Rat};
use crate::hyp3::{require_complex, ItgsDesc, TraceCircle};
use crate::numthy::{pell_solve, pell_solve_rational};
use crate::quatalg::AlgebraParams;

/// Trace of P(t, u): the line (R + u sqrt(a) / (b (1 - a t^2))) (1 + t sqrt(a)).
pub fn halfplane_trace(t: i64, u: i64, params: AlgebraParams) -> Result<TraceCircle> {
    let f = params.field();
    let (a, b) = (int(params.a()), params.b_rat());
    let (t, u) = (int(t), int(u));
    let dir = f.elem(Rat::one(), t.clone());
    let s = &b * (Rat::one() - &a * &t * &t);
    if s.is_zero() {
        bail!(Domain, "1 - a t^2 vanishes");
    }
    let point = &f.elem(Rat::zero(), &u / &s) * &dir;
    TraceCircle::line(point, dir)
}

/// Pell-built hyperbolic element (x + y u sqrt a) + y (1 + t sqrt a) Omega fixing P(t, u).
pub fn construct_halfplane(t: i64, u: i64, params: AlgebraParams) -> Result<ClosedItgsCert> {
    require_complex(params.a())?;
    let (a, b) = (BigInt::from(params.a()), BigInt::from(params.b()));
    let (tb, ub) = (BigInt::from(t), BigInt::from(u));
    let d = &a * &ub * &ub + &b * (BigInt::one() - &a * &tb * &tb);
    if !d.is_positive() {
        bail!(Construction, "d = a u^2 + b (1 - a t^2) = {d} is not positive");
    }
    let sol = pell_solve(&d).map_err(|e| crate::Error::Construction(e.to_string()))?;
    let f = params.field();
    let (x, y) = (big(sol.x.clone()), big(sol.y.clone()));
    let xi = f.elem(x, &y * int(u));
    let eta = f.elem(y.clone(), &y * int(t));
    let gamma = params.quat(xi, eta);
    let trace = halfplane_trace(t, u, params)?;
    if !halfplane_invariance(&gamma, &trace)? {
        bail!(Validation, "gamma does not preserve P({t}, {u})");
    }
    let cert = ClosedItgsCert {
        surface: ItgsDesc::HalfPlane(trace),
        gamma,
        epsilon: None,
        pell: PellRecord::Integer(sol),
    };
    cert.validate()?;
    Ok(cert)
}

/// Pell-built hyperbolic element fixing the half-sphere S(a1, r):
/// xi = X - q Y sqrt(a) / 2, eta = Y a1 sqrt(a), q = 1 + b (N(a1) - r^2).
pub fn construct_sphere(a1: &QuadElem, r_sq: &Rat, params: AlgebraParams) -> Result<ClosedItgsCert> {
    require_complex(params.a())?;
    if a1.a() != params.a() {
        bail!(Mismatch, "center lives in Q(sqrt {}), algebra has a = {}", a1.a(), params.a());
    }
    if a1.is_zero() {
        bail!(Precondition, "center a1 = 0");
    }
    if !r_sq.is_positive() {
        bail!(Domain, "r^2 = {r_sq} must be positive");
    }
    let bp = params.b() as u64;
    if ord_p(&a1.norm(), bp)? < 0 {
        bail!(Precondition, "ord_b N(a1) < 0");
    }
    if ord_p(r_sq, bp)? < 0 {
        bail!(Precondition, "ord_b r^2 < 0");
    }
    let b = params.b_rat();
    let q = Rat::one() + &b * (a1.norm() - r_sq);
    let four_b_n = int(4) * &b * a1.norm();
    if &q * &q > four_b_n {
        bail!(Precondition, "4 b N(a1) < q^2 with q = {q}");
    }
    let d = int(params.a()) / int(4) * (&q * &q - four_b_n);
    if d.is_zero() {
        bail!(Construction, "d = 0 (4 b N(a1) = q^2)");
    }
    if is_rat_square(&d) {
        bail!(Construction, "d = {d} is a rational square");
    }
    let sol = pell_solve_rational(&d).map_err(|e| crate::Error::Construction(e.to_string()))?;
    let f = params.field();
    let (x, y) = (big(sol.x.clone()), big(sol.y.clone()));
    let xi = f.elem(x, -(&q * &y) / int(2));
    let eta = &a1.scale(&y) * &f.sqrt();
    let gamma = params.quat(xi, eta);
    let trace = TraceCircle::circle(a1.clone(), r_sq.clone())?;
    let (holds, epsilon) = sphere_map_criterion(&gamma, &trace, &trace)?;
    if !holds {
        bail!(Validation, "mapping criterion fails for the constructed element");
    }
    let cert = ClosedItgsCert {
        surface: ItgsDesc::HalfSphere(trace),
        gamma,
        epsilon,
        pell: PellRecord::Rational { d, sol },
    };
    cert.validate()?;
    Ok(cert)
}
