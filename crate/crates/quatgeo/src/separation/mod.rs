//! Separation primes: residue conditions ruling out elements of norm p or
//! primitive norm p^2 that carry a first object onto a finite family.

mod forms;
mod kinds;

pub use forms::{canonical_perp, point_conditions, PointForm, QuadraticFormZ};
pub use kinds::{
    find_fixer, geodesic_invariant, separation_prime_geodesics, separation_prime_halfplanes,
    separation_prime_points, separation_prime_spheres, GeodesicInvariant,
};

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::error::{bail, Error, Result};
use crate::exact::factor::{prime_divisors, primes_up_to};
use crate::exact::{int, QuadElem, Rat};
use crate::hyp3::{act, image_of_trace, GeodesicDesc, ItgsDesc, Point3};
use crate::numthy::{find_prime_with_symbols, is_square_mod_P, legendre};
use crate::quatalg::{enumerate_norm_elements, OrderDesc, Quaternion};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectKind {
    Points,
    Geodesics,
    HalfPlanes,
    HalfSpheres,
}

impl ObjectKind {
    pub fn name(self) -> &'static str {
        match self {
            ObjectKind::Points => "Points",
            ObjectKind::Geodesics => "Geodesics",
            ObjectKind::HalfPlanes => "HalfPlanes",
            ObjectKind::HalfSpheres => "HalfSpheres",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SepObject {
    Point(Point3),
    Geodesic(GeodesicDesc),
    Itgs(ItgsDesc),
}

impl SepObject {
    pub fn to_json(&self) -> Value {
        match self {
            SepObject::Point(p) => json!({"point": p.to_json()}),
            SepObject::Geodesic(g) => json!({"geodesic": g.to_json()}),
            SepObject::Itgs(s) => json!({"itgs": s.to_json()}),
        }
    }

    fn same_type(&self, other: &SepObject) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }
}

/// Image of an object under alpha, for the brute-force checks.
pub fn apply(alpha: &Quaternion, obj: &SepObject) -> Result<SepObject> {
    Ok(match obj {
        SepObject::Point(p) => SepObject::Point(act(&alpha.phi(), p)?),
        SepObject::Geodesic(g) => SepObject::Geodesic(g.transform(&alpha.phi())),
        SepObject::Itgs(s) => {
            SepObject::Itgs(ItgsDesc::from_trace(image_of_trace(alpha, s.trace())?))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    /// (value / p) must equal the symbol.
    Symbol(BigInt, i8),
    /// beta must be a non-square modulo the chosen prime above p.
    NonSquareAbove(QuadElem),
}

impl Condition {
    pub fn holds(&self, p: u64) -> bool {
        match self {
            Condition::Symbol(v, s) => legendre(v, p).map(|l| l == *s).unwrap_or(false),
            Condition::NonSquareAbove(beta) => matches!(is_square_mod_P(beta, p), Ok(false)),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Condition::Symbol(v, s) => json!({"value": v.to_string(), "symbol": s}),
            Condition::NonSquareAbove(beta) => {
                json!({"value": beta.to_string(), "symbol": -1, "level": "prime above p"})
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorroborationStatus {
    Pass,
    Inconclusive,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorroborationReport {
    pub bound: Rat,
    pub inspected: usize,
    pub hits: Vec<Quaternion>,
    pub status: CorroborationStatus,
}

impl CorroborationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "bound": self.bound.to_string(),
            "inspected": self.inspected,
            "hits": self.hits.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            "status": format!("{:?}", self.status),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub kind: ObjectKind,
    pub subject: SepObject,
    pub conditions: Vec<Condition>,
    pub excluded: BTreeSet<u64>,
    pub witness: u64,
    /// No residue condition backs the witness; only brute force speaks for it.
    pub heuristic: bool,
    pub derivation_log: Vec<String>,
    pub corroboration: Option<CorroborationReport>,
}

impl SeparationCertificate {
    /// Every condition holds at the witness and the witness is not excluded.
    pub fn sound(&self) -> bool {
        !self.excluded.contains(&self.witness)
            && self.conditions.iter().all(|c| c.holds(self.witness))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "conditions": self.conditions.iter().map(Condition::to_json).collect::<Vec<_>>(),
            "excluded": self.excluded.iter().collect::<Vec<_>>(),
            "witness": self.witness,
            "heuristic": self.heuristic,
            "derivation_log": self.derivation_log,
            "corroboration": self.corroboration.as_ref().map(CorroborationReport::to_json),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SepOptions {
    /// Upper end of the witness sieve.
    pub prime_bound: u64,
    /// Primes up to this bound are probed for maps onto other family members.
    pub small_prime_bound: u64,
    pub eta_norm_bound: Rat,
}

impl Default for SepOptions {
    fn default() -> Self {
        SepOptions { prime_bound: 1_000_000, small_prime_bound: 30, eta_norm_bound: int(50) }
    }
}

/// Odd primes dividing 2 a b D D' (2 is never a witness anyway).
pub(crate) fn base_exclusions(order: &OrderDesc) -> BTreeSet<u64> {
    let p = order.params();
    let (d, dp) = order.conductors();
    let prod = BigInt::from(2 * p.a() * p.b()) * d * dp;
    prime_set(&prod)
}

pub(crate) fn prime_set(n: &BigInt) -> BTreeSet<u64> {
    if n.abs() <= BigInt::from(1) {
        return BTreeSet::new();
    }
    prime_divisors(n).iter().filter_map(|p| p.to_u64()).collect()
}

pub(crate) fn rat_primes(q: &Rat) -> BTreeSet<u64> {
    let mut s = prime_set(q.numer());
    s.extend(prime_set(q.denom()));
    s
}

/// Smallest odd prime outside `excluded` satisfying every condition.
pub(crate) fn sieve(conds: &[Condition], excluded: &BTreeSet<u64>, bound: u64) -> Result<u64> {
    let symbols: Option<Vec<(BigInt, i8)>> = conds
        .iter()
        .map(|c| match c {
            Condition::Symbol(v, s) => Some((v.clone(), *s)),
            Condition::NonSquareAbove(_) => None,
        })
        .collect();
    if let Some(targets) = symbols {
        return find_prime_with_symbols(&targets, excluded, bound);
    }
    primes_up_to(bound)
        .into_iter()
        .find(|&p| p != 2 && !excluded.contains(&p) && conds.iter().all(|c| c.holds(p)))
        .ok_or_else(|| Error::Exhausted(format!("no prime up to {bound} meets the conditions")))
}

/// Elements of norm p, and primitive elements of norm p^2, with N(eta) bounded.
pub fn hecke_elements(order: &OrderDesc, p: u64, eta_norm_bound: &Rat) -> Result<Vec<Quaternion>> {
    let p = BigInt::from(p);
    let mut out = enumerate_norm_elements(order, &p, eta_norm_bound, false)?;
    out.extend(enumerate_norm_elements(order, &(&p * &p), eta_norm_bound, true)?);
    Ok(out)
}

/// Small primes at which bounded search finds alpha carrying the subject onto
/// another family member.
fn family_exceptions(
    subject: &SepObject,
    others: &[SepObject],
    order: &OrderDesc,
    opts: &SepOptions,
    log: &mut Vec<String>,
) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    if others.is_empty() {
        return Ok(out);
    }
    for p in primes_up_to(opts.small_prime_bound) {
        if p == 2 {
            continue;
        }
        for alpha in hecke_elements(order, p, &opts.eta_norm_bound)? {
            let img = apply(&alpha, subject)?;
            if let Some(i) = others.iter().position(|o| *o == img) {
                log.push(format!("F: {alpha} (norm {}) maps the subject to member {}", alpha.norm(), i + 1));
                out.insert(p);
                break;
            }
        }
    }
    Ok(out)
}

/// Adds the family exceptions F to the exclusions and re-runs the sieve.
pub(crate) fn finish(
    mut cert: SeparationCertificate,
    others: &[SepObject],
    order: &OrderDesc,
    opts: &SepOptions,
) -> Result<SeparationCertificate> {
    let mut log = Vec::new();
    let f = family_exceptions(&cert.subject, others, order, opts, &mut log)?;
    if !others.is_empty() {
        log.push(format!(
            "family exceptions F = {:?} (primes up to {}, N(eta) up to {})",
            f, opts.small_prime_bound, opts.eta_norm_bound
        ));
    }
    if !f.is_empty() {
        cert.excluded.extend(f);
        cert.witness = witness_for(&cert, opts)?;
    }
    cert.derivation_log.extend(log);
    Ok(cert)
}

pub(crate) fn witness_for(cert: &SeparationCertificate, opts: &SepOptions) -> Result<u64> {
    sieve(&cert.conditions, &cert.excluded, opts.prime_bound)
}

/// Family members and options for one separation problem.
#[derive(Clone, Debug, Default)]
pub struct SepConfig {
    pub points: Vec<Point3>,
    pub geodesics: Vec<GeodesicDesc>,
    pub itgs: Vec<ItgsDesc>,
    /// Hyperbolic element fixing the first itgs, when the first object is one.
    pub witness: Option<Quaternion>,
}

/// Builds a certificate for the first object of the configuration (points,
/// then geodesics, then itgs) against every object of the same type.
pub fn find_separating_prime(
    config: &SepConfig,
    order: &OrderDesc,
    opts: &SepOptions,
) -> Result<SeparationCertificate> {
    let mut objects: Vec<SepObject> = config
        .points
        .iter()
        .cloned()
        .map(SepObject::Point)
        .chain(config.geodesics.iter().cloned().map(SepObject::Geodesic))
        .chain(config.itgs.iter().cloned().map(SepObject::Itgs))
        .collect();
    if objects.is_empty() {
        bail!(Domain, "empty configuration");
    }
    let subject = objects.remove(0);
    let mut log = Vec::new();
    let skipped = objects.iter().filter(|o| !o.same_type(&subject)).count();
    if skipped > 0 {
        log.push(format!("{skipped} object(s) of another type cannot be images; ignored"));
    }
    let mut others: Vec<SepObject> = Vec::new();
    for o in objects.into_iter().filter(|o| o.same_type(&subject) && *o != subject) {
        if !others.contains(&o) {
            others.push(o);
        }
    }
    let cert = match &subject {
        SepObject::Point(p) => kinds::point_cert(p, order, opts)?,
        SepObject::Geodesic(g) => kinds::geodesic_cert(g, order, opts)?,
        SepObject::Itgs(s) => match s {
            ItgsDesc::HalfPlane(_) => {
                kinds::halfplane_cert(s, config.witness.as_ref(), order, opts)?
            }
            ItgsDesc::HalfSphere(_) => {
                kinds::sphere_cert(s, config.witness.as_ref(), order, opts)?
            }
        },
    };
    let mut cert = finish(cert, &others, order, opts)?;
    cert.derivation_log.extend(log);
    Ok(cert)
}

/// Bounded brute force: no element of norm p or primitive norm p^2 with
/// N(eta) up to the bound may carry the subject onto a family member
/// (the subject itself included).
pub fn corroborate(
    cert: &SeparationCertificate,
    family: &[SepObject],
    order: &OrderDesc,
    eta_norm_bound: &Rat,
) -> Result<CorroborationReport> {
    let mut targets = vec![cert.subject.clone()];
    targets.extend(family.iter().filter(|o| o.same_type(&cert.subject)).cloned());
    let elements = hecke_elements(order, cert.witness, eta_norm_bound)?;
    let mut hits = Vec::new();
    for alpha in &elements {
        let img = apply(alpha, &cert.subject)?;
        if targets.contains(&img) {
            hits.push(alpha.clone());
        }
    }
    let status = if !hits.is_empty() {
        CorroborationStatus::Fail
    } else if cert.heuristic || !cert.sound() {
        CorroborationStatus::Inconclusive
    } else {
        CorroborationStatus::Pass
    };
    Ok(CorroborationReport { bound: eta_norm_bound.clone(), inspected: elements.len(), hits, status })
}
