//! Exact geometry of hyperbolic 3-space over Q(sqrt a), a < 0.

mod classify;
mod geodesic;
mod point;
mod psi;
mod trace;

pub use classify::{classify, classify_matrix, fixed_set, FixedSet, IsomClass, IsomTag};
pub use geodesic::GeodesicDesc;
pub use point::{act, act_q, Point3};
pub use psi::{act_k1, f_check, f_invariant, psi_map, K1Point};
pub use trace::{
    image_of_trace, image_of_trace_hermitian, image_of_trace_matrix, itgs_intersect, Hermitian,
    Intersection, ItgsDesc, TraceCircle,
};

use crate::error::{bail, Result};
use crate::exact::QuadElem;
use crate::quatalg::Mat2;

/// A point of the boundary P^1(F).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Proj {
    Fin(QuadElem),
    Inf,
}

impl Proj {
    pub fn render(&self) -> String {
        match self {
            Proj::Fin(z) => z.to_string(),
            Proj::Inf => "inf".to_string(),
        }
    }
}

/// Moebius action of an invertible matrix on P^1(F).
pub fn mobius(m: &Mat2, z: &Proj) -> Proj {
    let (num, den) = match z {
        Proj::Inf => (m.a.clone(), m.c.clone()),
        Proj::Fin(z) => (&m.a * z + &m.b, &m.c * z + &m.d),
    };
    if den.is_zero() {
        Proj::Inf
    } else {
        Proj::Fin(num / den)
    }
}

pub fn require_complex(a: i64) -> Result<()> {
    if a > 0 {
        bail!(Unsupported, "this operation needs a < 0 (F inside C, not R)");
    }
    Ok(())
}
