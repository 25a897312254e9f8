mod config;
mod fixtures;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use quatgeo::exact::{parse_rat, QuadElem};
use quatgeo::hyp3::{
    act, act_k1, classify, f_invariant, fixed_set, image_of_trace, image_of_trace_hermitian,
    GeodesicDesc, ItgsDesc, K1Point, Point3, Proj, TraceCircle,
};
use quatgeo::itgs::{
    construct_halfplane, construct_sphere, greedy_distinct_set, halfplane_trace, pro7_necessary,
};
use quatgeo::numthy::{density_estimate, pell_solve, pell_solve_rational, SplitType};
use quatgeo::quatalg::{
    elliptic_obstruction, enumerate_norm_elements, is_division_certified, k2s_check,
    AlgebraParams, OrderDesc, Quaternion,
};
use quatgeo::separation::{corroborate, find_separating_prime, SepConfig, SepObject, SepOptions};
use quatgeo::Error;
use serde_json::{json, Value};

use config::Config;

#[derive(Parser, Debug)]
#[command(name = "quatgeo", version, about = "Exact quaternion-algebra geometry on H^3, JSON out")]
#[command(allow_negative_numbers = true)]
struct Cli {
    /// Field parameter a (Q(sqrt a)); default -2.
    #[arg(long, global = true)]
    a: Option<i64>,
    /// Algebra parameter b; default 13.
    #[arg(long, global = true)]
    b: Option<i64>,
    /// key = value file with a, b, order, eta_norm_bound, prime_search_bound.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Run geometric commands outside the class (K2s).
    #[arg(long, global = true)]
    allow_non_k2s: bool,
    /// Allow a > 0 (real field, class K1s).
    #[arg(long, global = true)]
    k1s: bool,
    /// Upper bound of prime sieves (overrides config and QUATGEO_PRIME_BOUND).
    #[arg(long, global = true)]
    prime_bound: Option<u64>,
    /// Bound on N(eta) for enumerations, a rational.
    #[arg(long, global = true)]
    eta_bound: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Parameters, class membership and the reference order.
    AlgebraInfo,
    K2sCheck,
    /// Elliptic / parabolic / hyperbolic type of "xi ; eta".
    Classify {
        #[arg(long)]
        gamma: String,
    },
    FixedPoints {
        #[arg(long)]
        gamma: String,
    },
    /// Poincare extension on z + t j (or x + i y + t j with --k1s).
    Act {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        t_sq: Option<String>,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
    },
    /// Image of a circle (--center, --radius-sq) or line (--point, --direction).
    ImageTrace {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        center: Option<String>,
        #[arg(long)]
        radius_sq: Option<String>,
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        direction: Option<String>,
    },
    ConstructHalfplane {
        #[arg(long)]
        t: i64,
        #[arg(long)]
        u: i64,
    },
    ConstructSphere {
        #[arg(long)]
        center: String,
        #[arg(long)]
        radius_sq: String,
    },
    /// Fundamental solution of x^2 - d y^2 = 1 (d may be rational).
    Pell {
        #[arg(long)]
        d: String,
    },
    GreedySet {
        #[arg(long)]
        t_max: u64,
    },
    /// Separation certificate; the first object is the first --point, else
    /// the first --geodesic, else the first --plane, else the first --sphere.
    Separation {
        /// "z|t"
        #[arg(long)]
        point: Vec<String>,
        /// "u|v", endpoints, "inf" allowed
        #[arg(long)]
        geodesic: Vec<String>,
        /// "t,u" for P(t,u), or "point|direction"
        #[arg(long)]
        plane: Vec<String>,
        /// "center|r_sq"
        #[arg(long)]
        sphere: Vec<String>,
        /// Hyperbolic element fixing the first surface, "xi ; eta".
        #[arg(long)]
        witness: Option<String>,
        #[arg(long)]
        no_corroborate: bool,
    },
    /// Elements of I0 with the given norm and N(eta) bounded.
    Enumerate {
        #[arg(long)]
        norm: u64,
        #[arg(long)]
        primitive: bool,
    },
    Density {
        /// inert, split or ramified
        #[arg(long)]
        which: SplitType,
        #[arg(long)]
        bound: u64,
    },
    VerifyPaperExamples,
}

type Res<T> = std::result::Result<T, Error>;

struct Ctx {
    cfg: Config,
    allow_non_k2s: bool,
    k1s: bool,
}

impl Ctx {
    fn params(&self) -> Res<AlgebraParams> {
        AlgebraParams::new(self.cfg.a, self.cfg.b)
    }

    /// Parameters for geometric commands, behind the class gates.
    fn gated(&self) -> Res<AlgebraParams> {
        let p = self.params()?;
        if p.a() > 0 {
            if !self.k1s {
                return Err(Error::Precondition("a > 0 is class K1s; pass --k1s".into()));
            }
            return Ok(p);
        }
        if !self.allow_non_k2s && !k2s_check(p).member {
            return Err(Error::Precondition(format!(
                "(a, b) = ({}, {}) is not in class K2s; pass --allow-non-k2s",
                p.a(),
                p.b()
            )));
        }
        Ok(p)
    }

    fn sep_options(&self) -> SepOptions {
        SepOptions {
            prime_bound: self.cfg.prime_search_bound,
            eta_norm_bound: self.cfg.eta_norm_bound.clone(),
            ..SepOptions::default()
        }
    }
}

fn quad(s: &str, a: i64) -> Res<QuadElem> {
    QuadElem::parse_in(s.trim(), a)
}

fn proj(s: &str, a: i64) -> Res<Proj> {
    if s.trim().eq_ignore_ascii_case("inf") {
        Ok(Proj::Inf)
    } else {
        Ok(Proj::Fin(quad(s, a)?))
    }
}

fn split2(s: &str, sep: char) -> Res<(&str, &str)> {
    s.split_once(sep)
        .ok_or_else(|| Error::Parse(format!("expected two fields separated by {sep:?} in {s:?}")))
}

fn need<'a>(v: &'a Option<String>, name: &str) -> Res<&'a str> {
    v.as_deref().ok_or_else(|| Error::Parse(format!("--{name} is required here")))
}

fn run(cli: Cli) -> Res<Value> {
    let mut cfg = Config::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    cfg.apply_env()?;
    if let Some(a) = cli.a {
        cfg.a = a;
    }
    if let Some(b) = cli.b {
        cfg.b = b;
    }
    if let Some(pb) = cli.prime_bound {
        cfg.prime_search_bound = pb;
    }
    if let Some(e) = &cli.eta_bound {
        cfg.eta_norm_bound = parse_rat(e)?;
    }
    let ctx = Ctx { cfg, allow_non_k2s: cli.allow_non_k2s, k1s: cli.k1s };

    match cli.cmd {
        Cmd::AlgebraInfo => {
            let p = ctx.params()?;
            let order = OrderDesc::i0(p);
            let (d, dp) = order.conductors();
            Ok(json!({
                "a": p.a(),
                "b": p.b(),
                "k2s": k2s_check(p).member,
                "division": format!("{:?}", is_division_certified(p)),
                "order": {
                    "name": "I0",
                    "basis": order.basis().iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                    "conductors": [d.to_string(), dp.to_string()],
                },
            }))
        }
        Cmd::K2sCheck => {
            let p = ctx.params()?;
            let r = k2s_check(p);
            let obstruction = elliptic_obstruction(p.a(), p.b()).ok();
            Ok(json!({
                "a": p.a(),
                "b": p.b(),
                "member": r.member,
                "symbols": r.symbols.map(|(x, y, z)| vec![x, y, z]),
                "elliptic_obstruction": obstruction,
                "division": format!("{:?}", is_division_certified(p)),
            }))
        }
        Cmd::Classify { gamma } => {
            let p = ctx.gated()?;
            let g = Quaternion::parse(&gamma, p)?;
            let c = classify(&g)?;
            Ok(json!({"gamma": g.to_string(), "tag": c.tag.name(), "trace_sq": c.trace_sq.to_string()}))
        }
        Cmd::FixedPoints { gamma } => {
            let p = ctx.gated()?;
            let g = Quaternion::parse(&gamma, p)?;
            Ok(json!({"gamma": g.to_string(), "fixed_set": fixed_set(&g.phi())?.to_json()}))
        }
        Cmd::Act { gamma, z, t, t_sq, x, y } => {
            let p = ctx.gated()?;
            let g = Quaternion::parse(&gamma, p)?;
            if p.a() > 0 {
                let pt = K1Point::new(
                    quad(need(&x, "x")?, p.a())?,
                    quad(need(&y, "y")?, p.a())?,
                    quad(need(&t, "t")?, p.a())?,
                )?;
                let img = act_k1(&g.phi(), &pt)?;
                return Ok(json!({
                    "image": img.to_json(),
                    "f_before": f_invariant(&pt)?.to_string(),
                    "f_after": f_invariant(&img)?.to_string(),
                }));
            }
            let zq = quad(need(&z, "z")?, p.a())?;
            let pt = match (&t, &t_sq) {
                (Some(t), None) => Point3::new(zq, parse_rat(t)?)?,
                (None, Some(ts)) => Point3::with_t_sq(zq, parse_rat(ts)?)?,
                _ => return Err(Error::Parse("give exactly one of --t, --t-sq".into())),
            };
            Ok(json!({"image": act(&g.phi(), &pt)?.to_json()}))
        }
        Cmd::ImageTrace { gamma, center, radius_sq, point, direction } => {
            let p = ctx.gated()?;
            let g = Quaternion::parse(&gamma, p)?;
            let tr = match (&center, &point) {
                (Some(c), None) => {
                    TraceCircle::circle(quad(c, p.a())?, parse_rat(need(&radius_sq, "radius-sq")?)?)?
                }
                (None, Some(pt)) => {
                    TraceCircle::line(quad(pt, p.a())?, quad(need(&direction, "direction")?, p.a())?)?
                }
                _ => return Err(Error::Parse("give either --center or --point".into())),
            };
            let img = image_of_trace(&g, &tr)?;
            let check = image_of_trace_hermitian(&g.phi(), &tr)?;
            Ok(json!({"trace": tr.to_json(), "image": img.to_json(), "routes_agree": img == check}))
        }
        Cmd::ConstructHalfplane { t, u } => {
            let p = ctx.gated()?;
            Ok(construct_halfplane(t, u, p)?.to_json())
        }
        Cmd::ConstructSphere { center, radius_sq } => {
            let p = ctx.gated()?;
            let cert = construct_sphere(&quad(&center, p.a())?, &parse_rat(&radius_sq)?, p)?;
            let mut v = cert.to_json();
            v["pro7"] = match pro7_necessary(cert.surface.trace(), &cert.gamma) {
                Ok(r) => r.to_json(),
                Err(e) => json!({"error": e.message()}),
            };
            Ok(v)
        }
        Cmd::Pell { d } => {
            let d = parse_rat(&d)?;
            if d.is_integer() {
                let s = pell_solve(d.numer())?;
                Ok(json!({"d": d.to_string(), "x": int_json(&s.x), "y": int_json(&s.y)}))
            } else {
                let s = pell_solve_rational(&d)?;
                Ok(json!({
                    "d": d.to_string(),
                    "x": int_json(&s.x),
                    "y": int_json(&s.y),
                    "integer_equation": {
                        "d": int_json(&s.inner.d_effective),
                        "x": int_json(&s.inner.x),
                        "y": int_json(&s.inner.y),
                    },
                }))
            }
        }
        Cmd::GreedySet { t_max } => {
            let g = greedy_distinct_set(ctx.cfg.a, t_max)?;
            Ok(json!({"a": ctx.cfg.a, "t_max": t_max, "kept": g.kept.len(), "excluded": g.excluded}))
        }
        Cmd::Separation { point, geodesic, plane, sphere, witness, no_corroborate } => {
            let p = ctx.gated()?;
            separation(&ctx, p, &point, &geodesic, &plane, &sphere, witness.as_deref(), !no_corroborate)
        }
        Cmd::Enumerate { norm, primitive } => {
            let p = ctx.gated()?;
            let order = OrderDesc::i0(p);
            let els =
                enumerate_norm_elements(&order, &BigInt::from(norm), &ctx.cfg.eta_norm_bound, primitive)?;
            Ok(json!({
                "norm": norm,
                "eta_norm_bound": ctx.cfg.eta_norm_bound.to_string(),
                "count": els.len(),
                "elements": els.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            }))
        }
        Cmd::Density { which, bound } => {
            let d = density_estimate(ctx.cfg.a, which, bound)?;
            Ok(json!({"a": ctx.cfg.a, "which": which.name(), "bound": bound, "density": d.to_string()}))
        }
        Cmd::VerifyPaperExamples => {
            let outcomes = fixtures::run()?;
            let all = outcomes.iter().all(fixtures::Outcome::passed);
            let doc = json!({
                "params": {"a": -2, "b": 13},
                "examples": outcomes.iter().map(fixtures::Outcome::to_json).collect::<Vec<_>>(),
                "all_pass": all,
            });
            Ok(doc)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn separation(
    ctx: &Ctx,
    p: AlgebraParams,
    points: &[String],
    geodesics: &[String],
    planes: &[String],
    spheres: &[String],
    witness: Option<&str>,
    corroborate_it: bool,
) -> Res<Value> {
    let a = p.a();
    let mut cfg = SepConfig::default();
    for s in points {
        let (z, t) = split2(s, '|')?;
        cfg.points.push(Point3::new(quad(z, a)?, parse_rat(t.trim())?)?);
    }
    for s in geodesics {
        let (u, v) = split2(s, '|')?;
        cfg.geodesics.push(GeodesicDesc::from_endpoints(&proj(u, a)?, &proj(v, a)?)?);
    }
    let mut built_witness: Option<Quaternion> = None;
    for s in planes {
        let surface = if let Ok((t, u)) = split2(s, ',') {
            let (t, u): (i64, i64) = (
                t.trim().parse().map_err(|e| Error::Parse(format!("{s:?}: {e}")))?,
                u.trim().parse().map_err(|e| Error::Parse(format!("{s:?}: {e}")))?,
            );
            if cfg.itgs.is_empty() {
                built_witness = construct_halfplane(t, u, p).ok().map(|c| c.gamma);
            }
            ItgsDesc::HalfPlane(halfplane_trace(t, u, p)?)
        } else {
            let (pt, dir) = split2(s, '|')?;
            ItgsDesc::HalfPlane(TraceCircle::line(quad(pt, a)?, quad(dir, a)?)?)
        };
        cfg.itgs.push(surface);
    }
    for s in spheres {
        let (c, r) = split2(s, '|')?;
        let (c, r) = (quad(c, a)?, parse_rat(r.trim())?);
        if cfg.itgs.is_empty() {
            built_witness = construct_sphere(&c, &r, p).ok().map(|x| x.gamma);
        }
        cfg.itgs.push(ItgsDesc::HalfSphere(TraceCircle::circle(c, r)?));
    }
    cfg.witness = match witness {
        Some(w) => Some(Quaternion::parse(w, p)?),
        None => built_witness,
    };
    let order = OrderDesc::i0(p);
    let opts = ctx.sep_options();
    let mut cert = find_separating_prime(&cfg, &order, &opts)?;
    if corroborate_it {
        let family: Vec<SepObject> = cfg
            .points
            .iter()
            .cloned()
            .map(SepObject::Point)
            .chain(cfg.geodesics.iter().cloned().map(SepObject::Geodesic))
            .chain(cfg.itgs.iter().cloned().map(SepObject::Itgs))
            .collect();
        cert.corroboration = Some(corroborate(&cert, &family, &order, &opts.eta_norm_bound)?);
    }
    Ok(cert.to_json())
}

/// Arbitrary-size integer as a JSON number.
fn int_json(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse().expect("integer literal"))
}

fn error_doc(code: &str, message: &str) -> String {
    json!({"error": {"code": code, "message": message}}).to_string()
}

/// Writes one document; a closed pipe downstream is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            emit(&error_doc("usage", e.to_string().trim()));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(v) => {
            emit(&serde_json::to_string_pretty(&v).expect("json"));
            // a failed regression suite reports through its document
            if v.get("all_pass") == Some(&Value::Bool(false)) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            emit(&error_doc(e.code(), e.message()));
            ExitCode::from(if matches!(e, Error::Parse(_)) { 2 } else { 1 })
        }
    }
}
