use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{mobius, require_complex, GeodesicDesc, Proj};
use crate::error::{bail, Result};
use crate::exact::{int, QuadElem, Rat};
use crate::quatalg::{Mat2, Quaternion};

/// Boundary trace of a totally geodesic surface: a line or a circle in C.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TraceCircle {
    /// {point + s direction : s real}; `point` is the foot of the
    /// perpendicular from 0 and `direction` has first nonzero coordinate 1.
    Line { point: QuadElem, direction: QuadElem },
    Circle { center: QuadElem, radius_sq: Rat },
}

/// Real part of the product u conj(v) (a < 0).
fn re_dot(u: &QuadElem, v: &QuadElem) -> Rat {
    (u * &v.conj()).x().clone()
}

/// Imaginary coefficient of u conj(v): zero iff u, v are real-proportional.
fn im_dot(u: &QuadElem, v: &QuadElem) -> Rat {
    (u * &v.conj()).y().clone()
}

impl TraceCircle {
    pub fn line(point: QuadElem, direction: QuadElem) -> Result<Self> {
        require_complex(point.a())?;
        point.same_field(&direction)?;
        if direction.is_zero() {
            bail!(Domain, "line direction must be nonzero");
        }
        let lead = if direction.x().is_zero() { direction.y() } else { direction.x() };
        let direction = direction.scale(&(Rat::one() / lead));
        let shift = re_dot(&point, &direction) / direction.norm();
        let point = &point - &direction.scale(&shift);
        Ok(TraceCircle::Line { point, direction })
    }

    pub fn circle(center: QuadElem, radius_sq: Rat) -> Result<Self> {
        require_complex(center.a())?;
        if !radius_sq.is_positive() {
            bail!(Domain, "radius^2 = {radius_sq} must be positive");
        }
        Ok(TraceCircle::Circle { center, radius_sq })
    }

    /// Line through two distinct points.
    pub fn through(u: &QuadElem, v: &QuadElem) -> Result<Self> {
        TraceCircle::line(u.clone(), v - u)
    }

    pub fn contains(&self, z: &QuadElem) -> bool {
        match self {
            TraceCircle::Line { point, direction } => im_dot(&(z - point), direction).is_zero(),
            TraceCircle::Circle { center, radius_sq } => (z - center).norm() == *radius_sq,
        }
    }

    pub fn contains_proj(&self, z: &Proj) -> bool {
        match z {
            Proj::Inf => matches!(self, TraceCircle::Line { .. }),
            Proj::Fin(z) => self.contains(z),
        }
    }

    pub fn a(&self) -> i64 {
        match self {
            TraceCircle::Line { point, .. } => point.a(),
            TraceCircle::Circle { center, .. } => center.a(),
        }
    }

    /// Three exact points, plus infinity for lines.
    pub fn sample_points(&self) -> Vec<Proj> {
        match self {
            TraceCircle::Line { point, direction } => (0..3)
                .map(|k| Proj::Fin(point + &direction.scale(&int(k))))
                .chain([Proj::Inf])
                .collect(),
            TraceCircle::Circle { .. } => Vec::new(),
        }
    }

    pub fn hermitian(&self) -> Hermitian {
        match self {
            TraceCircle::Circle { center, radius_sq } => Hermitian {
                alpha: Rat::one(),
                beta: -center,
                delta: center.norm() - radius_sq,
            },
            TraceCircle::Line { point, direction } => {
                let beta = direction * &direction.field().sqrt();
                let delta = -(beta.conj() * point).trace();
                Hermitian { alpha: Rat::zero(), beta, delta }
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            TraceCircle::Line { point, direction } => json!({
                "kind": "Line",
                "point": point.to_string(),
                "direction": direction.to_string(),
            }),
            TraceCircle::Circle { center, radius_sq } => json!({
                "kind": "Circle",
                "center": center.to_string(),
                "radius_sq": radius_sq.to_string(),
            }),
        }
    }
}

/// The generalized circle {z : alpha N(z) + Tr(conj(beta) z) + delta = 0}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hermitian {
    pub alpha: Rat,
    pub beta: QuadElem,
    pub delta: Rat,
}

impl Hermitian {
    pub fn eval(&self, z: &QuadElem) -> Rat {
        &self.alpha * z.norm() + (self.beta.conj() * z).trace() + &self.delta
    }

    pub fn to_trace(&self) -> Result<TraceCircle> {
        if self.alpha.is_zero() {
            if self.beta.is_zero() {
                bail!(Domain, "degenerate hermitian form");
            }
            let point = self.beta.scale(&(-&self.delta / (int(2) * self.beta.norm())));
            let direction = &self.beta * &self.beta.field().sqrt();
            return TraceCircle::line(point, direction);
        }
        let center = self.beta.scale(&(-Rat::one() / &self.alpha));
        let radius_sq = center.norm() - &self.delta / &self.alpha;
        if !radius_sq.is_positive() {
            bail!(Domain, "form has no real zero locus");
        }
        TraceCircle::circle(center, radius_sq)
    }

    /// The form of the image circle under m: H o adj(m).
    pub fn transform(&self, m: &Mat2) -> Hermitian {
        let adj = m.adj();
        // entries of H = [[alpha, beta], [conj beta, delta]] applied to v = adj w
        let f = m.field();
        let (al, de) = (f.rat(self.alpha.clone()), f.rat(self.delta.clone()));
        let (be, bc) = (&self.beta, self.beta.conj());
        let (p, q, r, s) = (&adj.a, &adj.b, &adj.c, &adj.d);
        // v1 = p w1 + q w2, v2 = r w1 + s w2
        let h11 = &al * &f.rat(p.norm())
            + be * &(p.conj() * r)
            + &bc * &(r.conj() * p)
            + &de * &f.rat(r.norm());
        let h12 = &al * &(p.conj() * q) + be * &(p.conj() * s) + &bc * &(r.conj() * q)
            + &de * &(r.conj() * s);
        let h22 = &al * &f.rat(q.norm())
            + be * &(q.conj() * s)
            + &bc * &(s.conj() * q)
            + &de * &f.rat(s.norm());
        Hermitian { alpha: h11.x().clone(), beta: h12, delta: h22.x().clone() }
    }
}

/// Independent route: push the hermitian form through the adjugate.
pub fn image_of_trace_hermitian(m: &Mat2, t: &TraceCircle) -> Result<TraceCircle> {
    let det = m.det();
    if det.is_zero() {
        bail!(Domain, "singular matrix");
    }
    t.hermitian().transform(m).to_trace()
}

/// Circle or line through three distinct boundary points.
fn fit(points: &[Proj]) -> Result<TraceCircle> {
    let finite: Vec<&QuadElem> = points
        .iter()
        .filter_map(|p| match p {
            Proj::Fin(z) => Some(z),
            Proj::Inf => None,
        })
        .collect();
    if finite.len() == 2 {
        return TraceCircle::through(finite[0], finite[1]);
    }
    let (w1, w2, w3) = (finite[0], finite[1], finite[2]);
    let (u, v) = (w2 - w1, w3 - w1);
    if im_dot(&u, &v).is_zero() {
        return TraceCircle::through(w1, w2);
    }
    // 2 Re(c conj(u)) = N(w2) - N(w1), and likewise for v
    let a = int(w1.a());
    let two = int(2);
    let (r1, r2) = (w2.norm() - w1.norm(), w3.norm() - w1.norm());
    let (m11, m12) = (&two * u.x(), -&two * &a * u.y());
    let (m21, m22) = (&two * v.x(), -&two * &a * v.y());
    let det = &m11 * &m22 - &m12 * &m21;
    let cx = (&r1 * &m22 - &m12 * &r2) / &det;
    let cy = (&m11 * &r2 - &r1 * &m21) / &det;
    let center = w1.field().elem(cx, cy);
    let radius_sq = (&center - w1).norm();
    TraceCircle::circle(center, radius_sq)
}

/// Image of a trace under an invertible matrix: three-point fit for lines,
/// the same fit on sample points for circles.
pub fn image_of_trace_matrix(m: &Mat2, t: &TraceCircle) -> Result<TraceCircle> {
    require_complex(t.a())?;
    if m.det().is_zero() {
        bail!(Domain, "singular matrix");
    }
    match t {
        TraceCircle::Line { .. } => {
            let mut imgs: Vec<Proj> = Vec::new();
            let mut seen_inf = false;
            let TraceCircle::Line { point, direction } = t else { unreachable!() };
            let candidates = [Proj::Inf]
                .into_iter()
                .chain((0..4).map(|k| Proj::Fin(point + &direction.scale(&int(k)))));
            for z in candidates {
                let w = mobius(m, &z);
                if w == Proj::Inf {
                    if seen_inf {
                        continue;
                    }
                    seen_inf = true;
                }
                imgs.push(w);
                if imgs.len() == 3 {
                    break;
                }
            }
            fit(&imgs)
        }
        TraceCircle::Circle { .. } => image_of_trace_hermitian(m, t),
    }
}

/// Image of a trace under a quaternion of nonzero norm.
pub fn image_of_trace(alpha: &Quaternion, t: &TraceCircle) -> Result<TraceCircle> {
    let n = alpha.norm();
    if n.is_zero() {
        bail!(Domain, "element {alpha} has norm zero");
    }
    require_complex(t.a())?;
    let m = alpha.phi();
    let TraceCircle::Circle { center: a1, radius_sq: r1 } = t else {
        return image_of_trace_matrix(&m, t);
    };
    let (xi, eta) = (alpha.xi(), alpha.eta());
    if eta.is_zero() {
        let rot = xi / &xi.conj();
        return TraceCircle::circle(&rot * a1, r1.clone());
    }
    let b = alpha.params().b_rat();
    let b_eta_bar = eta.conj().scale(&b);
    let zeta = -(xi.conj() / &b_eta_bar);
    let gap = (a1 - &zeta).norm() - r1;
    if gap.is_zero() {
        // the pole lies on the circle: the image is a line
        return image_of_trace_hermitian(&m, t);
    }
    let k = (b_eta_bar.pow(2)).inv().unwrap().scale(&-n);
    let radius_sq = k.norm() * r1 / (&gap * &gap);
    let base = xi / &b_eta_bar;
    let center = if *a1 == zeta {
        base
    } else {
        let zeta_hat = a1 + &(zeta.conj() - a1.conj()).inv().unwrap().scale(r1);
        base + &k / &(zeta_hat - &zeta)
    };
    TraceCircle::circle(center, radius_sq)
}

/// Vertical half-plane or hemisphere, by its trace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ItgsDesc {
    HalfPlane(TraceCircle),
    HalfSphere(TraceCircle),
}

impl ItgsDesc {
    pub fn from_trace(t: TraceCircle) -> ItgsDesc {
        match t {
            TraceCircle::Line { .. } => ItgsDesc::HalfPlane(t),
            TraceCircle::Circle { .. } => ItgsDesc::HalfSphere(t),
        }
    }

    pub fn trace(&self) -> &TraceCircle {
        match self {
            ItgsDesc::HalfPlane(t) | ItgsDesc::HalfSphere(t) => t,
        }
    }

    /// The hemisphere of squared radius 1/b centred at 0.
    pub fn s0(params: crate::quatalg::AlgebraParams) -> ItgsDesc {
        let f = params.field();
        ItgsDesc::HalfSphere(TraceCircle::Circle {
            center: f.zero(),
            radius_sq: Rat::one() / params.b_rat(),
        })
    }

    pub fn to_json(&self) -> Value {
        let kind = match self {
            ItgsDesc::HalfPlane(_) => "HalfPlane",
            ItgsDesc::HalfSphere(_) => "HalfSphere",
        };
        json!({"kind": kind, "trace": self.trace().to_json()})
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    Empty,
    Geodesic(GeodesicDesc),
    Equal,
}

impl Intersection {
    pub fn to_json(&self) -> Value {
        match self {
            Intersection::Empty => json!({"kind": "Empty"}),
            Intersection::Equal => json!({"kind": "Equal"}),
            Intersection::Geodesic(g) => json!({"kind": "Geodesic", "geodesic": g.to_json()}),
        }
    }
}

/// Geodesic over the chord cut by a line on a circle, if the chord is real.
fn chord(line: &Hermitian, circle: &TraceCircle) -> Result<Intersection> {
    let TraceCircle::Line { point: p, direction: d } = line.to_trace()? else {
        unreachable!("alpha = 0 forms are lines")
    };
    let TraceCircle::Circle { center, radius_sq } = circle else { unreachable!() };
    let pc = &p - center;
    let nd = d.norm();
    let tr = (&pc * &d.conj()).trace();
    let k = pc.norm() - radius_sq;
    let disc = &tr * &tr - int(4) * &nd * &k;
    if !disc.is_positive() {
        return Ok(Intersection::Empty);
    }
    let s_sum = -&tr / &nd;
    let s_prod = &k / &nd;
    let sum = p.scale(&int(2)) + d.scale(&s_sum);
    let prod = &p * &p + (&p * &d).scale(&s_sum) + (&d * &d).scale(&s_prod);
    Ok(Intersection::Geodesic(GeodesicDesc::new(p.field().one(), -sum, prod)?))
}

pub fn itgs_intersect(s1: &ItgsDesc, s2: &ItgsDesc) -> Result<Intersection> {
    let (t1, t2) = (s1.trace(), s2.trace());
    if t1 == t2 {
        return Ok(Intersection::Equal);
    }
    match (t1, t2) {
        (
            TraceCircle::Line { point: p1, direction: d1 },
            TraceCircle::Line { point: p2, direction: d2 },
        ) => {
            let cross = im_dot(d1, d2);
            if cross.is_zero() {
                return Ok(Intersection::Empty);
            }
            // p1 + s d1 on line 2: Im((p1 - p2 + s d1) conj d2) = 0
            let s = -im_dot(&(p1 - p2), d2) / cross;
            let q = p1 + &d1.scale(&s);
            Ok(Intersection::Geodesic(GeodesicDesc::from_endpoints(
                &Proj::Fin(q),
                &Proj::Inf,
            )?))
        }
        (TraceCircle::Line { .. }, TraceCircle::Circle { .. }) => chord(&t1.hermitian(), t2),
        (TraceCircle::Circle { .. }, TraceCircle::Line { .. }) => chord(&t2.hermitian(), t1),
        (TraceCircle::Circle { .. }, TraceCircle::Circle { .. }) => {
            let (h1, h2) = (t1.hermitian(), t2.hermitian());
            let radical = Hermitian {
                alpha: Rat::zero(),
                beta: &h1.beta - &h2.beta,
                delta: &h1.delta - &h2.delta,
            };
            if radical.beta.is_zero() {
                return Ok(Intersection::Empty);
            }
            chord(&radical, t1)
        }
    }
}
