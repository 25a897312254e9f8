use serde_json::{json, Value};

use super::Proj;
use crate::error::{bail, Result};
use crate::exact::QuadElem;
use crate::quatalg::Mat2;

/// Geodesic of H^3 as the binary form A z1^2 + B z1 z2 + C z2^2 whose roots
/// are its endpoints; normalized so the first nonzero coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeodesicDesc {
    a: QuadElem,
    b: QuadElem,
    c: QuadElem,
}

impl GeodesicDesc {
    pub fn new(a: QuadElem, b: QuadElem, c: QuadElem) -> Result<Self> {
        a.same_field(&b)?;
        a.same_field(&c)?;
        let lead = [&a, &b, &c]
            .into_iter()
            .find(|e| !e.is_zero())
            .cloned();
        let Some(lead) = lead else {
            bail!(Domain, "zero quadratic form");
        };
        let g = GeodesicDesc { a: a / &lead, b: b / &lead, c: c / &lead };
        if g.disc().is_zero() {
            bail!(Domain, "degenerate form: discriminant zero");
        }
        Ok(g)
    }

    /// Geodesic joining two distinct boundary points of P^1(F).
    pub fn from_endpoints(e1: &Proj, e2: &Proj) -> Result<Self> {
        match (e1, e2) {
            (Proj::Fin(u), Proj::Fin(v)) => {
                let f = u.field();
                GeodesicDesc::new(f.one(), -(u + v), u * v)
            }
            (Proj::Fin(u), Proj::Inf) | (Proj::Inf, Proj::Fin(u)) => {
                let f = u.field();
                GeodesicDesc::new(f.zero(), f.one(), -u)
            }
            (Proj::Inf, Proj::Inf) => bail!(Domain, "endpoints coincide"),
        }
    }

    pub fn coeffs(&self) -> (&QuadElem, &QuadElem, &QuadElem) {
        (&self.a, &self.b, &self.c)
    }

    pub fn disc(&self) -> QuadElem {
        &self.b * &self.b - (&self.a * &self.c).scale(&crate::exact::int(4))
    }

    /// The form Q o m^-1, whose roots are the images of the endpoints under m.
    pub fn transform(&self, m: &Mat2) -> GeodesicDesc {
        let adj = m.adj();
        let (p, q, r, s) = (&adj.a, &adj.b, &adj.c, &adj.d);
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let two = crate::exact::int(2);
        let na = a * p * p + b * p * r + c * r * r;
        let nb = (a * p * q).scale(&two) + b * (p * s + q * r) + (c * r * s).scale(&two);
        let nc = a * q * q + b * q * s + c * s * s;
        GeodesicDesc::new(na, nb, nc).expect("invertible maps keep forms nondegenerate")
    }

    /// Value of the form at a boundary point; zero exactly at the endpoints.
    pub fn eval(&self, z: &Proj) -> QuadElem {
        match z {
            Proj::Inf => self.a.clone(),
            Proj::Fin(z) => &self.a * z * z + &self.b * z + &self.c,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "form": [self.a.to_string(), self.b.to_string(), self.c.to_string()],
            "disc": self.disc().to_string(),
        })
    }
}
