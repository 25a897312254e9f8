use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{GeodesicDesc, Proj};
use crate::error::{bail, Result};
use crate::exact::{int, QuadElem, Rat};
use crate::quatalg::{Mat2, Quaternion};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsomTag {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl IsomTag {
    pub fn name(self) -> &'static str {
        match self {
            IsomTag::Identity => "Identity",
            IsomTag::Elliptic => "Elliptic",
            IsomTag::Parabolic => "Parabolic",
            IsomTag::Hyperbolic => "Hyperbolic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomClass {
    pub tag: IsomTag,
    /// Tr^2 / N, the normalized squared trace.
    pub trace_sq: Rat,
}

fn tag_of(scalar: bool, trace_sq: &QuadElem) -> IsomTag {
    if scalar {
        return IsomTag::Identity;
    }
    if !trace_sq.is_rational() {
        return IsomTag::Hyperbolic;
    }
    let t = trace_sq.x();
    let four = int(4);
    if *t == four {
        IsomTag::Parabolic
    } else if !t.is_negative() && *t < four {
        IsomTag::Elliptic
    } else {
        IsomTag::Hyperbolic
    }
}

pub fn classify(gamma: &Quaternion) -> Result<IsomClass> {
    let n = gamma.norm();
    if n.is_zero() {
        bail!(Domain, "element {gamma} has norm zero");
    }
    let tr = gamma.trace();
    let trace_sq = &tr * &tr / &n;
    let tag = tag_of(gamma.is_scalar(), &gamma.params().field().rat(trace_sq.clone()));
    Ok(IsomClass { tag, trace_sq })
}

/// Classification of a matrix by Tr^2/det, which may be irrational.
pub fn classify_matrix(m: &Mat2) -> Result<(IsomTag, QuadElem)> {
    let det = m.det();
    if det.is_zero() {
        bail!(Domain, "singular matrix");
    }
    let tr = m.trace();
    let trace_sq = &tr * &tr / &det;
    Ok((tag_of(m.is_scalar(), &trace_sq), trace_sq))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedSet {
    /// Elliptic with c != 0: the half-circle over `center` of squared radius
    /// `radius_sq` in the vertical plane of points center + i s / c, s real;
    /// `direction` holds c.
    FixedGeodesic {
        center: QuadElem,
        radius_sq: Rat,
        direction: QuadElem,
        form: GeodesicDesc,
    },
    /// Elliptic with c = 0: the vertical half-line above `foot`.
    VerticalFixedGeodesic { foot: QuadElem, form: GeodesicDesc },
    /// Parabolic: the unique fixed boundary point.
    BoundaryPoint(Proj),
    /// Hyperbolic: the axis, through the two fixed boundary points.
    Axis(GeodesicDesc),
}

impl FixedSet {
    pub fn to_json(&self) -> Value {
        match self {
            FixedSet::FixedGeodesic { center, radius_sq, direction, form } => json!({
                "kind": "FixedGeodesic",
                "center": center.to_string(),
                "radius_sq": radius_sq.to_string(),
                "direction": direction.to_string(),
                "geodesic": form.to_json(),
            }),
            FixedSet::VerticalFixedGeodesic { foot, form } => json!({
                "kind": "VerticalFixedGeodesic",
                "foot": foot.to_string(),
                "geodesic": form.to_json(),
            }),
            FixedSet::BoundaryPoint(p) => json!({"kind": "BoundaryPoint", "point": p.render()}),
            FixedSet::Axis(g) => json!({"kind": "Axis", "geodesic": g.to_json()}),
        }
    }
}

/// The fixed form c z^2 + (d - a) z - b of a non-scalar matrix.
fn fixed_form(m: &Mat2) -> Result<GeodesicDesc> {
    GeodesicDesc::new(m.c.clone(), &m.d - &m.a, -&m.b)
}

/// Fixed set in H^3 (or on the boundary) of a determinant-one matrix.
pub fn fixed_set(m: &Mat2) -> Result<FixedSet> {
    super::require_complex(m.a.a())?;
    if m.det() != m.field().one() {
        bail!(Domain, "fixed_set expects determinant 1, got {}", m.det());
    }
    if m.is_scalar() {
        bail!(Domain, "+-identity fixes everything");
    }
    let (tag, trace_sq) = classify_matrix(m)?;
    let tr = m.trace();
    match tag {
        IsomTag::Elliptic if m.c.is_zero() => {
            let foot = &m.b / (&m.d - &m.a);
            Ok(FixedSet::VerticalFixedGeodesic { foot, form: fixed_form(m)? })
        }
        IsomTag::Elliptic => {
            let two = int(2);
            let center = (tr.scale(&(Rat::one() / &two)) - &m.d) / &m.c;
            let radius_sq = (int(4) - trace_sq.x()) / (int(4) * m.c.norm());
            Ok(FixedSet::FixedGeodesic {
                center,
                radius_sq,
                direction: m.c.clone(),
                form: fixed_form(m)?,
            })
        }
        IsomTag::Parabolic if m.c.is_zero() => Ok(FixedSet::BoundaryPoint(Proj::Inf)),
        IsomTag::Parabolic => {
            let half = Rat::new(1.into(), 2.into());
            Ok(FixedSet::BoundaryPoint(Proj::Fin((tr.scale(&half) - &m.d) / &m.c)))
        }
        _ => Ok(FixedSet::Axis(fixed_form(m)?)),
    }
}
