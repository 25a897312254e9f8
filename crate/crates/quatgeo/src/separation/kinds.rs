use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::forms::{canonical_perp, point_conditions};
use super::{
    base_exclusions, finish, prime_set, rat_primes, witness_for, Condition, ObjectKind, SepObject,
    SepOptions, SeparationCertificate,
};
use crate::error::{bail, Result};
use crate::exact::{int, lcm_denoms, rat_sqrt, squarefree_kernel, QuadElem, Rat};
use crate::hyp3::{classify, image_of_trace, GeodesicDesc, IsomTag, ItgsDesc, Point3, TraceCircle};
use crate::quatalg::{enumerate_norm_elements, AlgebraParams, OrderDesc, Quaternion};

fn new_cert(
    kind: ObjectKind,
    subject: SepObject,
    conditions: Vec<Condition>,
    excluded: BTreeSet<u64>,
    heuristic: bool,
    log: Vec<String>,
    opts: &SepOptions,
) -> Result<SeparationCertificate> {
    let mut cert = SeparationCertificate {
        kind,
        subject,
        conditions,
        excluded,
        witness: 0,
        heuristic,
        derivation_log: log,
        corroboration: None,
    };
    cert.witness = witness_for(&cert, opts)?;
    Ok(cert)
}

fn dedup_others(subject: &SepObject, rest: impl IntoIterator<Item = SepObject>) -> Vec<SepObject> {
    let mut out: Vec<SepObject> = Vec::new();
    for o in rest {
        if o != *subject && !out.contains(&o) {
            out.push(o);
        }
    }
    out
}

pub(crate) fn point_cert(
    x1: &Point3,
    order: &OrderDesc,
    opts: &SepOptions,
) -> Result<SeparationCertificate> {
    let pf = point_conditions(x1, order)?;
    let a = BigInt::from(order.params().a());
    let kernel = squarefree_kernel(&Rat::from_integer(pf.form.delta.clone()))?;
    let mut excluded = base_exclusions(order);
    excluded.extend(prime_set(&pf.form.delta));
    excluded.extend(prime_set(&pf.form.kappa));
    let log = vec![
        format!("eta0 = {}", pf.eta0),
        format!(
            "{} N = {} X^2 + {} X Y + {} Y^2, delta = {}",
            pf.form.kappa, pf.form.alpha, pf.form.beta, pf.form.gamma, pf.form.delta
        ),
        format!("squarefree kernel of delta: {kernel}"),
    ];
    let conds = vec![Condition::Symbol(a, -1), Condition::Symbol(kernel, -1)];
    new_cert(ObjectKind::Points, SepObject::Point(x1.clone()), conds, excluded, false, log, opts)
}

pub fn separation_prime_points(
    points: &[Point3],
    order: &OrderDesc,
    opts: &SepOptions,
) -> Result<SeparationCertificate> {
    let Some(first) = points.first() else {
        bail!(Domain, "no points given");
    };
    let cert = point_cert(first, order, opts)?;
    let others = dedup_others(&cert.subject, points[1..].iter().cloned().map(SepObject::Point));
    finish(cert, &others, order, opts)
}

/// Square class data of a geodesic's discriminant u in F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeodesicInvariant {
    /// u is a square in F: both endpoints lie in P^1(F).
    SquareInF { u: QuadElem },
    /// Elements mu phi-fixing both endpoints exist; their fixed forms have
    /// rational discriminant mu^2 u with this squarefree kernel.
    RationalClass { u: QuadElem, mu: QuadElem, kernel: BigInt },
    /// No element of the algebra fixes both endpoints.
    NoFixer { u: QuadElem },
}

/// Square test in F for a < 0 via the norm: w = p + q sqrt a with N(w) = sqrt N(u).
fn is_square_in_f(u: &QuadElem) -> bool {
    if u.is_zero() {
        return true;
    }
    let Some(s) = rat_sqrt(&u.norm()) else {
        return false;
    };
    let a = int(u.a());
    let two = int(2);
    let (Some(p), Some(q)) = (rat_sqrt(&((u.x() + &s) / &two)), rat_sqrt(&((u.x() - &s) / (&two * &a))))
    else {
        return false;
    };
    let prod = &two * &p * &q;
    prod == *u.y() || -prod == *u.y()
}

/// Solve for mu (up to Q*) with mu B0 imaginary and mu A0 + b conj(mu C0) = 0,
/// the conditions for mu (A0, B0, C0) to be the fixed form (C, D - A, -B) of
/// some phi(xi + eta Omega).
fn fixer_scale(g: &GeodesicDesc, params: AlgebraParams) -> Option<QuadElem> {
    let (a0, b0, c0) = g.coeffs();
    let a = int(params.a());
    let b = params.b_rat();
    let rows = [
        [b0.x().clone(), &a * b0.y()],
        [a0.x() + &b * c0.x(), &a * (a0.y() + &b * c0.y())],
        [a0.y() - &b * c0.y(), a0.x() - &b * c0.x()],
    ];
    for i in 0..3 {
        for j in i + 1..3 {
            let minor = &rows[i][0] * &rows[j][1] - &rows[i][1] * &rows[j][0];
            if !minor.is_zero() {
                return None;
            }
        }
    }
    let row = rows.iter().find(|r| !r[0].is_zero() || !r[1].is_zero())?;
    Some(params.field().elem(-row[1].clone(), row[0].clone()))
}

pub fn geodesic_invariant(g: &GeodesicDesc, params: AlgebraParams) -> Result<GeodesicInvariant> {
    if g.coeffs().0.a() != params.a() {
        bail!(Mismatch, "geodesic over Q(sqrt {}), algebra has a = {}", g.coeffs().0.a(), params.a());
    }
    let disc = g.disc();
    let l = Rat::from_integer(lcm_denoms([disc.x(), disc.y()]));
    let u = disc.scale(&(&l * &l));
    if is_square_in_f(&u) {
        return Ok(GeodesicInvariant::SquareInF { u });
    }
    match fixer_scale(g, params) {
        Some(mu) => {
            let val = &mu * &mu * &u;
            debug_assert!(val.is_rational());
            let kernel = squarefree_kernel(val.x())?;
            Ok(GeodesicInvariant::RationalClass { u, mu, kernel })
        }
        None => Ok(GeodesicInvariant::NoFixer { u }),
    }
}

pub(crate) fn geodesic_cert(
    g: &GeodesicDesc,
    order: &OrderDesc,
    opts: &SepOptions,
) -> Result<SeparationCertificate> {
    let params = order.params();
    let a = BigInt::from(params.a());
    let mut excluded = base_exclusions(order);
    let mut log = vec![format!(
        "invariant: discriminant u of the normalized form, scaled into O_F (interpretation)"
    )];
    let mut conds = vec![Condition::Symbol(a, -1)];
    let mut heuristic = false;
    match geodesic_invariant(g, params)? {
        GeodesicInvariant::SquareInF { u } => {
            log.push(format!("u = {u} is a square in F: no residue certificate"));
            heuristic = true;
        }
        GeodesicInvariant::RationalClass { u, mu, kernel } => {
            log.push(format!("u = {u}; fixing elements have fixed form {mu} times the form"));
            log.push(format!(
                "centralizer ~ Q(sqrt {kernel}): norm p impossible when ({kernel}/p) = -1"
            ));
            excluded.extend(rat_primes(&u.norm()));
            conds.push(Condition::Symbol(kernel, -1));
        }
        GeodesicInvariant::NoFixer { u } => {
            log.push(format!("u = {u}: no element fixes both endpoints"));
            let n = u.norm();
            excluded.extend(rat_primes(&n));
            conds.push(Condition::NonSquareAbove(u));
        }
    }
    new_cert(ObjectKind::Geodesics, SepObject::Geodesic(g.clone()), conds, excluded, heuristic, log, opts)
}

pub fn separation_prime_geodesics(
    geodesics: &[GeodesicDesc],
    order: &OrderDesc,
    opts: &SepOptions,
) -> Result<SeparationCertificate> {
    let Some(first) = geodesics.first() else {
        bail!(Domain, "no geodesics given");
    };
    let cert = geodesic_cert(first, order, opts)?;
    let others =
        dedup_others(&cert.subject, geodesics[1..].iter().cloned().map(SepObject::Geodesic));
    finish(cert, &others, order, opts)
}

fn fixes(gamma: &Quaternion, t: &TraceCircle) -> Result<bool> {
    Ok(gamma.norm().is_one()
        && classify(gamma)?.tag == IsomTag::Hyperbolic
        && image_of_trace(gamma, t)? == *t)
}

/// A hyperbolic norm-one element of I0 fixing the trace, found by bounded search.
pub fn find_fixer(t: &TraceCircle, order: &OrderDesc, eta_norm_bound: &Rat) -> Result<Option<Quaternion>> {
    for gamma in enumerate_norm_elements(order, &BigInt::one(), eta_norm_bound, false)? {
        if fixes(&gamma, t)? {
            return Ok(Some(gamma));
        }
    }
    Ok(None)
}

fn resolve_witness(
    s: &ItgsDesc,
    witness: Option<&Quaternion>,
    order: &OrderDesc,
    opts: &SepOptions,
) -> Result<Quaternion> {
    match witness {
        Some(g) => {
            if !fixes(g, s.trace())? {
                bail!(Precondition, "witness {g} is not a hyperbolic norm-one element fixing the surface");
            }
            Ok(g.clone())
        }
        None => find_fixer(s.trace(), order, &opts.eta_norm_bound)?.ok_or_else(|| {
            crate::Error::Precondition(format!(
                "no hyperbolic fixer with N(eta) <= {}; pass a witness",
                opts.eta_norm_bound
            ))
        }),
    }
}

pub(crate) fn halfplane_cert(
    s: &ItgsDesc,
    witness: Option<&Quaternion>,
    order: &OrderDesc,
    opts: &SepOptions,
) -> Result<SeparationCertificate> {
    if !matches!(s, ItgsDesc::HalfPlane(_)) {
        bail!(Domain, "expected a half-plane");
    }
    let gamma = resolve_witness(s, witness, order, opts)?;
    let tr = gamma.trace();
    let c = &tr * &tr - int(4);
    let kernel = squarefree_kernel(&c)?;
    let a = BigInt::from(order.params().a());
    let log = vec![
        format!("witness gamma1 = {gamma}, Tr = {tr}"),
        format!("c = Tr^2 - 4 = {c}, squarefree kernel {kernel}"),
    ];
    let conds = vec![Condition::Symbol(a, -1), Condition::Symbol(kernel, -1)];
    new_cert(ObjectKind::HalfPlanes, SepObject::Itgs(s.clone()), conds, base_exclusions(order), false, log, opts)
}

pub(crate) fn sphere_cert(
    s: &ItgsDesc,
    witness: Option<&Quaternion>,
    order: &OrderDesc,
    opts: &SepOptions,
) -> Result<SeparationCertificate> {
    let params = order.params();
    if *s == ItgsDesc::s0(params) {
        bail!(Unsupported, "S0 is invariant under the whole group: type (S0) is excluded");
    }
    let ItgsDesc::HalfSphere(TraceCircle::Circle { center: a1, radius_sq: r_sq }) = s else {
        bail!(Domain, "expected a half-sphere");
    };
    if a1.is_zero() {
        bail!(Precondition, "center a1 = 0");
    }
    let mut log = Vec::new();
    if let Some(g) = witness {
        resolve_witness(s, Some(g), order, opts)?;
        log.push(format!("witness gamma1 = {g}"));
    }
    let (a, b) = (int(params.a()), params.b_rat());
    let eta1 = canonical_perp(a1)?;
    log.push(format!("eta1 = {eta1}, N(eta1) = {}", eta1.norm()));
    let q = Rat::one() + &b * (a1.norm() - r_sq);
    let mut excluded = base_exclusions(order);
    excluded.extend(rat_primes(&eta1.norm()));
    let value = if q.is_zero() {
        log.push("q = 0 branch: value b N(eta1)".to_string());
        &b * eta1.norm()
    } else {
        let zeta = a1.scale(&(Rat::one() / &q));
        let inner = Rat::one() - int(4) * &b * zeta.norm();
        log.push(format!("q = {q}, zeta = {zeta}, 1 - 4 b N(zeta) = {inner}"));
        excluded.extend(rat_primes(&inner));
        excluded.extend(rat_primes(&zeta.norm()));
        &a * inner
    };
    let kernel = squarefree_kernel(&value)?;
    log.push(format!("value {value}, squarefree kernel {kernel}"));
    let conds = vec![Condition::Symbol(BigInt::from(params.a()), -1), Condition::Symbol(kernel, -1)];
    new_cert(ObjectKind::HalfSpheres, SepObject::Itgs(s.clone()), conds, excluded, false, log, opts)
}

pub fn separation_prime_halfplanes(
    surface: &ItgsDesc,
    witness: Option<&Quaternion>,
    order: &OrderDesc,
    opts: &SepOptions,
) -> Result<SeparationCertificate> {
    halfplane_cert(surface, witness, order, opts)
}

pub fn separation_prime_spheres(
    surface: &ItgsDesc,
    witness: Option<&Quaternion>,
    order: &OrderDesc,
    opts: &SepOptions,
) -> Result<SeparationCertificate> {
    sphere_cert(surface, witness, order, opts)
}
