//! Closed totally geodesic surfaces: Pell constructions, mapping criteria
//! and the distinctness scan.

mod construct;
mod distinct;

pub use construct::{construct_halfplane, construct_sphere, halfplane_trace};
pub use distinct::{greedy_distinct_set, prime_form_search, DistinctSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{bail, Result};
use crate::exact::{int, rat_sqrt, to_integer, QuadElem, Rat};
use crate::hyp3::{classify, image_of_trace, mobius, IsomTag, ItgsDesc, Proj, TraceCircle};
use crate::numthy::{PellSolution, RationalPell};
use crate::quatalg::Quaternion;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PellRecord {
    Integer(PellSolution),
    Rational { d: Rat, sol: RationalPell },
}

impl PellRecord {
    pub fn x(&self) -> &BigInt {
        match self {
            PellRecord::Integer(s) => &s.x,
            PellRecord::Rational { sol, .. } => &sol.x,
        }
    }

    pub fn y(&self) -> &BigInt {
        match self {
            PellRecord::Integer(s) => &s.y,
            PellRecord::Rational { sol, .. } => &sol.y,
        }
    }

    pub fn d(&self) -> Rat {
        match self {
            PellRecord::Integer(s) => Rat::from_integer(s.d_effective.clone()),
            PellRecord::Rational { d, .. } => d.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"x": self.x().to_string(), "y": self.y().to_string(), "d": self.d().to_string()})
    }
}

/// A surface together with a hyperbolic norm-one element preserving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedItgsCert {
    pub surface: ItgsDesc,
    pub gamma: Quaternion,
    pub epsilon: Option<i8>,
    pub pell: PellRecord,
}

impl ClosedItgsCert {
    /// Re-checks N = 1, hyperbolicity and invariance of the trace.
    pub fn validate(&self) -> Result<()> {
        if !self.gamma.norm().is_one() {
            bail!(Validation, "N(gamma) = {} instead of 1", self.gamma.norm());
        }
        let class = classify(&self.gamma)?;
        if class.tag != IsomTag::Hyperbolic {
            bail!(Validation, "gamma is {}, not hyperbolic", class.tag.name());
        }
        let t = self.surface.trace();
        if image_of_trace(&self.gamma, t)? != *t {
            bail!(Validation, "gamma moves the trace {}", t.to_json());
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "surface": self.surface.to_json(),
            "gamma": self.gamma.to_json(),
            "pell": self.pell.to_json(),
            "epsilon": self.epsilon,
        })
    }
}

/// Whether gamma preserves the vertical half-plane over `line`.
pub fn halfplane_invariance(gamma: &Quaternion, line: &TraceCircle) -> Result<bool> {
    if gamma.trace().is_zero() {
        bail!(Precondition, "Tr(gamma) = 0");
    }
    if gamma.eta().is_zero() {
        bail!(Precondition, "eta = 0 (gamma fixes infinity)");
    }
    if gamma.norm().is_zero() {
        bail!(Domain, "element {gamma} has norm zero");
    }
    if !matches!(line, TraceCircle::Line { .. }) {
        bail!(Domain, "half-plane invariance needs a line trace");
    }
    let m = gamma.phi();
    let fwd = mobius(&m, &Proj::Inf);
    let back = mobius(&m.adj(), &Proj::Inf);
    let tr = m.trace();
    let tr_sq = &tr * &tr / &m.det();
    Ok(line.contains_proj(&fwd) && line.contains_proj(&back) && tr_sq.is_rational())
}

fn sphere_parts(s: &TraceCircle) -> Result<(&QuadElem, &Rat)> {
    match s {
        TraceCircle::Circle { center, radius_sq } => Ok((center, radius_sq)),
        TraceCircle::Line { .. } => bail!(Domain, "expected a half-sphere, got a half-plane"),
    }
}

/// Whether alpha maps the half-sphere over s1 onto the one over s2, and the
/// sign epsilon (+1 iff the pole -conj(xi)/(b conj(eta)) lies inside s1).
/// Radii enter through rho = r2/r1, which must be rational for a map to exist.
pub fn sphere_map_criterion(
    alpha: &Quaternion,
    s1: &TraceCircle,
    s2: &TraceCircle,
) -> Result<(bool, Option<i8>)> {
    let (a1, r1_sq) = sphere_parts(s1)?;
    let (a2, r2_sq) = sphere_parts(s2)?;
    let (xi, eta) = (alpha.xi(), alpha.eta());
    if eta.is_zero() {
        bail!(Precondition, "eta = 0: use the rotation path of image_of_trace");
    }
    let n = alpha.norm();
    if n.is_zero() {
        bail!(Domain, "element {alpha} has norm zero");
    }
    let Some(rho) = rat_sqrt(&(r2_sq / r1_sq)) else {
        return Ok((false, None));
    };
    let b = alpha.params().b_rat();
    let lhs_base = (eta.conj() * a2).scale(&b);
    let eta_a1 = eta * &a1.conj();
    let shifted = xi + &eta_a1.scale(&b);
    let lhs2 = &b * &b * r1_sq * eta.norm() - shifted.norm();
    for eps in [-1i8, 1] {
        let er = &rho * int(eps as i64);
        let rel1 = &lhs_base - &eta_a1.scale(&(&b * &er)) == xi.scale(&(Rat::one() + &er));
        let rel2 = lhs2 == &n * int(eps as i64) / &rho;
        let rel3 = xi.norm() - &b * eta.norm() == n;
        if rel1 && rel2 && rel3 {
            return Ok((true, Some(eps)));
        }
    }
    Ok((false, None))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pro7Report {
    pub q: Rat,
    pub zeta: Option<QuadElem>,
    /// X = Tr(gamma) and Y with 2 y(xi) = 1/Y.
    pub xy: Option<(BigInt, Rat)>,
    /// a (1 - 4 b N(zeta)), when zeta exists.
    pub lhs: Option<Rat>,
    pub ok: bool,
}

impl Pro7Report {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q.to_string(),
            "zeta": self.zeta.as_ref().map(|z| z.to_string()),
            "X": self.xy.as_ref().map(|(x, _)| x.to_string()),
            "Y": self.xy.as_ref().map(|(_, y)| y.to_string()),
            "lhs": self.lhs.as_ref().map(|v| v.to_string()),
            "ok": self.ok,
        })
    }
}

/// Necessary condition a(1 - 4bN(zeta)) = (X^2 - 4) Y^2 > 0 for a closed
/// half-sphere S(a1, r) with hyperbolic witness gamma, zeta = a1 / q.
pub fn pro7_necessary(s: &TraceCircle, gamma: &Quaternion) -> Result<Pro7Report> {
    let (a1, r_sq) = sphere_parts(s)?;
    if a1.is_zero() {
        bail!(Precondition, "center a1 = 0");
    }
    let params = gamma.params();
    let b = params.b_rat();
    let q = Rat::one() + &b * (a1.norm() - r_sq);
    if q.is_zero() {
        return Ok(Pro7Report { q, zeta: None, xy: None, lhs: None, ok: true });
    }
    let zeta = a1.scale(&(Rat::one() / &q));
    let lhs = int(params.a()) * (Rat::one() - int(4) * &b * zeta.norm());
    let y_xi = gamma.xi().y();
    let tr = gamma.trace();
    let xy = if y_xi.is_zero() || !tr.is_integer() {
        None
    } else {
        Some((to_integer(&tr, "Tr(gamma)")?, Rat::one() / (int(2) * y_xi)))
    };
    let ok = match &xy {
        Some((x, y)) => {
            let x = Rat::from_integer(x.clone());
            let rhs = (&x * &x - int(4)) * y * y;
            lhs == rhs && rhs.is_positive()
        }
        None => false,
    };
    Ok(Pro7Report { q, zeta: Some(zeta), xy, lhs: Some(lhs), ok })
}
