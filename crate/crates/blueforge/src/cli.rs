//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use blueforge_core::arakelov::{self, ArakelovDivisor, Norm, Target};
use blueforge_core::cohomology::{equalizer, h0_twist};
use blueforge_core::hp::{Complex, Ctx, Real, DEFAULT_DIGITS};
use blueforge_core::presentation::{
    associated_ring, cyclotomic_polynomial, f1n, Axiom3, BlueprintPresentation, Bounds, FormalSum, QuotientRing, RingIso,
    Verdict,
};
use blueforge_core::rational::{format_rational, parse_rational};
use blueforge_core::spaces::{fibre_product, krull_dimension, make_speczbar_skeleton, spec_f12, SpaceSkeleton};
use blueforge_core::spectra::{spectrum_bounded, Certificate};
use blueforge_core::speczbar::{
    global_sections_with, section_member, stalk_ideals, stalk_prime_ideals, verify_ideal_descriptor, Mode,
    OpenSetDescriptor, PlacePoint, RationalSectionSet, StalkIdealDescriptor, StalkIdealViolation,
};
use blueforge_core::zeta::{Zeta, ZetaConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::factor::CachedFactorizer;
use crate::format::{divisor_json, parse_divisor, parse_presentation, presentation_json, read_presentation};
use crate::FormatError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "blueforge", version, about = "Blueprints, Spec Z-bar and its zeta function")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Working precision in decimal digits.
    #[arg(long, global = true, env = "BLUEFORGE_PRECISION", default_value_t = DEFAULT_DIGITS)]
    pub precision: usize,
    /// Closure rounds of the congruence search.
    #[arg(long, global = true, default_value_t = blueforge_core::presentation::DEFAULT_DEPTH)]
    pub depth: u32,
    /// Largest total degree of intermediate sums.
    #[arg(long, global = true, default_value_t = blueforge_core::presentation::DEFAULT_DEGREE)]
    pub degree: u32,
    /// Prime bound for Euler products.
    #[arg(long = "P", global = true, default_value_t = 100_000)]
    pub prime_bound: u64,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Analyse a blueprint presentation file.
    #[command(subcommand)]
    Blueprint(BlueprintCmd),
    /// Prime spectrum of a finite blueprint.
    Spec {
        #[arg(long)]
        input: PathBuf,
    },
    /// Queries on the compactified arithmetic curve.
    #[command(subcommand)]
    Zbar(ZbarCmd),
    /// Fibre product of truncated skeletons over F_{1^2}.
    Fibre {
        #[arg(long = "zbar-bound", default_value_t = 10)]
        zbar_bound: u64,
        /// Multiply the skeleton with itself instead of with Spec F_{1^2}.
        #[arg(long = "self")]
        with_self: bool,
    },
    #[command(subcommand)]
    Zeta(ZetaCmd),
    #[command(subcommand)]
    Divisor(DivisorCmd),
    #[command(subcommand)]
    Cohomology(CohomologyCmd),
    /// Associated ring of F_{1^n} against Z[x]/Φ_n.
    Cyclotomic {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum BlueprintCmd {
    /// Enumerate the monoid, check axiom (3) and optionally decide a relation.
    Check {
        #[arg(long)]
        input: PathBuf,
        /// Left side as a JSON sum, e.g. `[[["x",1]],"1"]`.
        #[arg(long, requires = "rhs")]
        lhs: Option<String>,
        #[arg(long, requires = "lhs")]
        rhs: Option<String>,
    },
    /// The associated ring Z[A]/I(R).
    Ring {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Blue,
    Full,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Blue => Mode::Blue,
            ModeArg::Full => Mode::Full,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum ZbarCmd {
    /// Prime ideals and ideal lattice of a stalk.
    Stalk {
        #[arg(long)]
        place: String,
        #[arg(long, value_enum, default_value = "blue")]
        mode: ModeArg,
    },
    /// Membership of rationals in the sections over an open set.
    Sections {
        /// Removed points, comma separated (`2,3,inf`).
        #[arg(long, value_delimiter = ',')]
        remove: Vec<String>,
        #[arg(long = "q", required = true, allow_hyphen_values = true)]
        q: Vec<String>,
        #[arg(long, value_enum, default_value = "blue")]
        mode: ModeArg,
    },
    /// Global sections, optionally with a relaxed archimedean bound.
    Global {
        #[arg(long, default_value = "1")]
        bound: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ZetaCmd {
    /// Local factor at a finite prime as a measure integral.
    Local {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Measure of the archimedean ideal space between bounds `b` and `c`.
    Inf {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value = "0")]
        b: String,
        #[arg(long, default_value = "1")]
        c: String,
    },
    /// Completed zeta function from the local factors up to `P`.
    Completed {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Compare the Euler product with the ideal space integral.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
}

#[derive(Args, Debug)]
pub struct DivisorInput {
    /// Divisor as JSON text.
    #[arg(long, group = "source")]
    divisor: Option<String>,
    /// Path to a divisor JSON file.
    #[arg(long, group = "source")]
    input: Option<PathBuf>,
    /// The principal divisor of a rational.
    #[arg(long, group = "source", allow_hyphen_values = true)]
    rational: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum DivisorCmd {
    Norm(DivisorInput),
    Principal(DivisorInput),
    /// Compare the class with the class of `--other`.
    Class {
        #[command(flatten)]
        d: DivisorInput,
        #[arg(long)]
        other: String,
    },
    /// A divisor from the image of Pic whose norm approximates a target.
    Dense {
        /// `pi`, `e`, a fraction or a decimal.
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "1e-6")]
        eps: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CohomologyCmd {
    /// Dimension of the global sections of O(n) on the projective line.
    H0 {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    body: Value,
    code: u8,
}

impl Report {
    fn ok(body: Value) -> Report {
        Report { body, code: EXIT_OK }
    }
}

type CmdResult = Result<Report, FormatError>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let mut body = report.body;
            if let Value::Object(map) = &mut body {
                map.insert("meta".into(), meta(&cli.global));
            }
            let stdout = if cli.global.json {
                let mut s = serde_json::to_string_pretty(&body).unwrap_or_default();
                s.push('\n');
                s
            } else {
                render_text(&body)
            };
            Outcome { code: report.code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: EXIT_ERROR, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn meta(g: &Global) -> Value {
    json!({"precision": g.precision, "depth": g.depth, "degree": g.degree, "P": g.prime_bound, "seed": g.seed})
}

fn render_text(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = v {
        for (k, x) in map {
            match x {
                Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                other => out.push_str(&format!("{k}: {other}\n")),
            }
        }
    } else {
        out.push_str(&format!("{v}\n"));
    }
    out
}

fn bounds(g: &Global) -> Bounds {
    Bounds::new(g.depth, g.degree)
}

fn ctx(g: &Global) -> Result<Ctx, FormatError> {
    Ok(Ctx::new(g.precision)?)
}

fn verdict_str<Y, N>(v: &Verdict<Y, N>) -> &'static str {
    match v {
        Verdict::Yes(_) => "yes",
        Verdict::No(_) => "no",
        Verdict::Unknown => "unknown",
    }
}

fn verdict_code<Y, N>(v: &Verdict<Y, N>) -> u8 {
    if v.is_unknown() {
        EXIT_UNKNOWN
    } else {
        EXIT_OK
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Blueprint(BlueprintCmd::Check { input, lhs, rhs }) => blueprint_check(g, input, lhs.as_deref(), rhs.as_deref()),
        Command::Blueprint(BlueprintCmd::Ring { input }) => blueprint_ring(input),
        Command::Spec { input } => spec(g, input),
        Command::Zbar(cmd) => zbar(g, cmd),
        Command::Fibre { zbar_bound, with_self } => fibre(*zbar_bound, *with_self),
        Command::Zeta(cmd) => zeta(g, cmd),
        Command::Divisor(cmd) => divisor(g, cmd),
        Command::Cohomology(CohomologyCmd::H0 { n }) => Ok(Report::ok(cohomology_json(*n))),
        Command::Cyclotomic { n } => cyclotomic(*n),
    }
}

fn parse_sum_arg(b: &BlueprintPresentation, text: &str, name: &str) -> Result<FormalSum, FormatError> {
    let doc = format!(r#"{{"generators": {}, "preaddition": [[{text}, []]]}}"#, json!(b.generators()));
    let parsed = parse_presentation(&doc).map_err(|e| match e {
        FormatError::Core(blueforge_core::Error::UndeclaredGenerator { name: g, position }) => {
            FormatError::Core(blueforge_core::Error::UndeclaredGenerator {
                name: g,
                position: position.replacen("preaddition[0][0]", name, 1),
            })
        }
        other => other,
    })?;
    Ok(parsed.preaddition()[0].0.clone())
}

fn blueprint_check(g: &Global, input: &std::path::Path, lhs: Option<&str>, rhs: Option<&str>) -> CmdResult {
    let b = read_presentation(input)?;
    let fb = b.finite()?;
    let elements: Vec<String> = (0..fb.monoid().len()).map(|e| fb.format_element(e)).collect();
    let mut code = EXIT_OK;
    let (axiom3, violation) = match fb.check_axiom3(bounds(g))? {
        Axiom3::Certified => ("certified", Value::Null),
        Axiom3::Violated(a, c) => {
            let m = b.monoid();
            ("violated", json!([m.format_word(&a), m.format_word(&c)]))
        }
        Axiom3::Unknown => {
            code = EXIT_UNKNOWN;
            ("unknown", Value::Null)
        }
    };
    let mut body = json!({
        "presentation": presentation_json(&b),
        "elements": elements,
        "axiom3": axiom3,
        "axiom3_violation": violation,
    });
    if let (Some(l), Some(r)) = (lhs, rhs) {
        let l = parse_sum_arg(&b, l, "lhs")?;
        let r = parse_sum_arg(&b, r, "rhs")?;
        let v = fb.holds(&l, &r, bounds(g))?;
        let derivation: Vec<String> = match &v {
            Verdict::Yes(steps) => steps.iter().map(|s| b.format_sum(s)).collect(),
            _ => Vec::new(),
        };
        body["holds"] = json!(verdict_str(&v));
        body["derivation"] = json!(derivation);
        code = code.max(verdict_code(&v));
    }
    Ok(Report { body, code })
}

fn blueprint_ring(input: &std::path::Path) -> CmdResult {
    let b = read_presentation(input)?;
    let fb = b.finite()?;
    let ring = associated_ring(&fb)?;
    let basis: Vec<String> = ring.basis().iter().map(|w| b.monoid().format_word(w)).collect();
    let images: Vec<Vec<i128>> = (0..ring.basis().len()).map(|i| ring.image_of_basis(i)).collect::<Result<_, _>>()?;
    Ok(Report::ok(json!({
        "rank": ring.rank(),
        "torsion": ring.torsion().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "monoid_basis": basis,
        "basis_images": images.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })))
}

fn spec(g: &Global, input: &std::path::Path) -> CmdResult {
    let b = read_presentation(input)?;
    let fb = b.finite()?;
    let s = spectrum_bounded(&fb, bounds(g))?;
    let label = |e: &usize| fb.format_element(*e);
    let points: Vec<Vec<String>> = s.points.iter().map(|p| p.iter().map(label).collect()).collect();
    let closed: serde_json::Map<String, Value> =
        (0..fb.monoid().len()).map(|a| (fb.format_element(a), json!(s.closed_set(a)))).collect();
    let localizations = (0..s.len()).map(|p| s.stalk(p).map(|st| presentation_json(&st))).collect::<Result<Vec<_>, _>>()?;
    let undecided: Vec<Vec<String>> = s.undecided.iter().map(|p| p.iter().map(label).collect()).collect();
    let (certificate, code) = match s.certificate {
        Certificate::Exact => ("EXACT", EXIT_OK),
        Certificate::Bounded(_) => ("BOUNDED", EXIT_UNKNOWN),
    };
    Ok(Report {
        body: json!({
            "points": points,
            "closed_sets": closed,
            "certificate": certificate,
            "localizations": localizations,
            "undecided": undecided,
        }),
        code,
    })
}

fn parse_place(s: &str) -> Result<PlacePoint, FormatError> {
    match s {
        "eta" => Ok(PlacePoint::Generic),
        "inf" => Ok(PlacePoint::Infinite),
        p => {
            let n: u64 = p.parse().map_err(|_| blueforge_core::Error::Malformed(format!("unknown place `{p}`")))?;
            Ok(PlacePoint::finite(n)?)
        }
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Blue => "blue",
        Mode::Full => "full",
    }
}

fn violation_json(v: &StalkIdealViolation) -> Value {
    match v {
        StalkIdealViolation::Absorption { element, factor } => {
            json!({"kind": "absorption", "element": format_rational(element), "factor": format_rational(factor)})
        }
        StalkIdealViolation::Additive { summands, total } => json!({
            "kind": "additive",
            "summands": summands.iter().map(format_rational).collect::<Vec<_>>(),
            "total": format_rational(total),
        }),
    }
}

fn zbar(g: &Global, cmd: &ZbarCmd) -> CmdResult {
    match cmd {
        ZbarCmd::Stalk { place, mode } => {
            let place = parse_place(place)?;
            let mode = Mode::from(*mode);
            let primes = stalk_prime_ideals(&place, mode)?;
            let lattice = stalk_ideals(&place)?;
            let mut body = json!({
                "place": place.to_string(),
                "mode": mode_name(mode),
                "primes": primes.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                "ideal_lattice": lattice.shape.to_string(),
            });
            if place == PlacePoint::Infinite {
                let m = StalkIdealDescriptor::m_infinity();
                let v = verify_ideal_descriptor(&place, &m, mode, g.seed)?;
                body["m_inf_is_ideal"] = json!(verdict_str(&v));
                if let Verdict::No(w) = &v {
                    body["m_inf_witness"] = violation_json(w);
                }
            }
            Ok(Report::ok(body))
        }
        ZbarCmd::Sections { remove, q, mode } => {
            let points = remove.iter().filter(|s| !s.is_empty()).map(|s| parse_place(s)).collect::<Result<Vec<_>, _>>()?;
            let open = OpenSetDescriptor::removing(points.clone())?;
            let set = RationalSectionSet::new(open, (*mode).into());
            let mut members = serde_json::Map::new();
            for x in q {
                let r = parse_rational(x)?;
                members.insert(format_rational(&r), json!(section_member(&set, &r)));
            }
            Ok(Report::ok(json!({
                "removed": points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "mode": mode_name((*mode).into()),
                "members": members,
            })))
        }
        ZbarCmd::Global { bound } => {
            let b = parse_rational(bound)?;
            let s = global_sections_with(&b);
            Ok(Report::ok(json!({
                "archimedean_bound": format_rational(&b),
                "sections": s.iter().map(format_rational).collect::<Vec<_>>(),
            })))
        }
    }
}

pub fn skeleton_json(s: &SpaceSkeleton) -> Value {
    let residues: serde_json::Map<String, Value> =
        (0..s.len()).map(|i| (s.label(i).to_string(), json!(s.residue(i).to_string()))).collect();
    json!({
        "points": s.labels(),
        "specializations": s.specializations().iter().map(|&(a, b)| json!([s.label(a), s.label(b)])).collect::<Vec<_>>(),
        "residues": residues,
    })
}

fn fibre(bound: u64, with_self: bool) -> CmdResult {
    let x = make_speczbar_skeleton(bound)?;
    let y = if with_self { x.clone() } else { spec_f12() };
    let product = fibre_product(&x, &y);
    let (dim, chain) = krull_dimension(&product.space)?;
    let mut body = skeleton_json(&product.space);
    body["point_count"] = json!(product.space.len());
    body["dimension"] = json!(dim);
    body["chain"] = json!(chain.iter().map(|&i| product.space.label(i)).collect::<Vec<_>>());
    Ok(Report::ok(body))
}

fn real_json(ctx: &Ctx, x: &Real) -> Value {
    json!(ctx.format(x))
}

fn complex_json(ctx: &Ctx, z: &Complex) -> Value {
    json!({"re": ctx.format(&z.re), "im": ctx.format(&z.im)})
}

fn zeta(g: &Global, cmd: &ZetaCmd) -> CmdResult {
    let engine = Zeta::new(ZetaConfig { digits: g.precision, prime_bound: g.prime_bound, ..ZetaConfig::default() })?;
    let ctx = engine.ctx();
    match cmd {
        ZetaCmd::Local { p, s } => {
            let s = ctx.parse_complex(s)?;
            let est = engine.zeta_p_integral(*p, &s)?;
            let closed = engine.zeta_p_closed(*p, &s)?;
            let residual = (&est.value - &closed).abs(ctx);
            Ok(Report::ok(json!({
                "s": complex_json(ctx, &s),
                "p": p,
                "value": complex_json(ctx, &est.value),
                "error": real_json(ctx, &est.error),
                "closed_form": complex_json(ctx, &closed),
                "identity_residual": real_json(ctx, &residual),
            })))
        }
        ZetaCmd::Inf { s, b, c } => {
            let s = ctx.parse_complex(s)?;
            let (b, c) = (ctx.parse(b)?, ctx.parse(c)?);
            let est = engine.mu_inf(&s, &b, &c)?;
            let mut body = json!({
                "s": complex_json(ctx, &s),
                "value": complex_json(ctx, &est.value),
                "error": real_json(ctx, &est.error),
            });
            if b.is_zero() && c == ctx.one() {
                let z = engine.zeta_inf(&s)?;
                body["closed_form"] = complex_json(ctx, &z.value);
                body["identity_residual"] = real_json(ctx, &(&est.value - &z.value).abs(ctx));
            }
            Ok(Report::ok(body))
        }
        ZetaCmd::Completed { s } => {
            let s = ctx.parse_complex(s)?;
            let (est, tail) = engine.completed_zeta(&s, g.prime_bound)?;
            Ok(Report::ok(json!({
                "s": complex_json(ctx, &s),
                "P": g.prime_bound,
                "value": complex_json(ctx, &est.value),
                "error": real_json(ctx, &est.error),
                "tail_bound": real_json(ctx, &tail),
            })))
        }
        ZetaCmd::Verify { s } => {
            let s = ctx.parse_complex(s)?;
            let (euler, tail) = engine.completed_zeta(&s, g.prime_bound)?;
            let integral = engine.ideal_space_integral(&s, g.prime_bound)?;
            let residual = (&euler.value - &integral.value).abs(ctx);
            let tolerance = (&euler.error + &integral.error) * ctx.int(2);
            let pass = residual <= tolerance;
            Ok(Report {
                body: json!({
                    "s": complex_json(ctx, &s),
                    "P": g.prime_bound,
                    "value": complex_json(ctx, &euler.value),
                    "integral": complex_json(ctx, &integral.value),
                    "tail_bound": real_json(ctx, &tail),
                    "identity_residual": real_json(ctx, &residual),
                    "tolerance": real_json(ctx, &tolerance),
                    "pass": pass,
                }),
                code: if pass { EXIT_OK } else { EXIT_ERROR },
            })
        }
    }
}

fn load_divisor(d: &DivisorInput, ctx: &Ctx, f: &CachedFactorizer) -> Result<ArakelovDivisor, FormatError> {
    if let Some(text) = &d.divisor {
        return parse_divisor(text, ctx);
    }
    if let Some(path) = &d.input {
        let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.clone(), source })?;
        return parse_divisor(&text, ctx);
    }
    if let Some(q) = &d.rational {
        return Ok(arakelov::divisor_of_rational(&parse_rational(q)?, f)?);
    }
    Err(blueforge_core::Error::Malformed("one of --divisor, --input or --rational is required".into()).into())
}

fn norm_json(n: &Norm, ctx: &Ctx) -> Value {
    match n {
        Norm::Exact(q) => json!({"kind": "exact", "value": format_rational(q)}),
        Norm::Approx { value, radius } => json!({"kind": "approx", "value": ctx.format(value), "radius": ctx.format(radius)}),
    }
}

fn divisor(g: &Global, cmd: &DivisorCmd) -> CmdResult {
    let ctx = ctx(g)?;
    let f = CachedFactorizer::new();
    match cmd {
        DivisorCmd::Norm(d) => {
            let d = load_divisor(d, &ctx, &f)?;
            Ok(Report::ok(json!({
                "divisor": divisor_json(&d, &ctx),
                "norm": norm_json(&arakelov::norm(&d, &ctx), &ctx),
                "in_pic_image": arakelov::pic_image_check(&d),
            })))
        }
        DivisorCmd::Principal(d) => {
            let d = load_divisor(d, &ctx, &f)?;
            let v = arakelov::is_principal(&d, &ctx);
            Ok(Report {
                body: json!({
                    "divisor": divisor_json(&d, &ctx),
                    "norm": norm_json(&arakelov::norm(&d, &ctx), &ctx),
                    "principal": verdict_str(&v),
                }),
                code: verdict_code(&v),
            })
        }
        DivisorCmd::Class { d, other } => {
            let a = load_divisor(d, &ctx, &f)?;
            let b = parse_divisor(other, &ctx)?;
            let (ca, cb) = (arakelov::class_of(&a, &ctx), arakelov::class_of(&b, &ctx));
            let v = ca.equals(&cb, &ctx);
            Ok(Report {
                body: json!({
                    "divisor": divisor_json(&a, &ctx),
                    "other": divisor_json(&b, &ctx),
                    "norms": [norm_json(&ca.norm, &ctx), norm_json(&cb.norm, &ctx)],
                    "same_class": verdict_str(&v),
                }),
                code: verdict_code(&v),
            })
        }
        DivisorCmd::Dense { target, eps } => {
            let t = match target.as_str() {
                "pi" => Target::Real(ctx.pi()),
                "e" => Target::Real(ctx.exp(&ctx.one())),
                x if x.contains('/') => Target::Rational(parse_rational(x)?),
                x => Target::Real(ctx.parse(x)?),
            };
            let eps = ctx.parse(eps)?;
            let d = arakelov::density_witness(&t, &eps, &ctx)?;
            let n = arakelov::norm(&d, &ctx);
            let x = match &t {
                Target::Real(r) => r.clone(),
                Target::Rational(q) => ctx.rational(q)?,
            };
            let deviation = (n.to_real(&ctx) - x).abs();
            Ok(Report::ok(json!({
                "divisor": divisor_json(&d, &ctx),
                "norm": norm_json(&n, &ctx),
                "deviation": ctx.format(&deviation),
                "eps": ctx.format(&eps),
            })))
        }
    }
}

pub fn cohomology_json(n: i64) -> Value {
    let e = equalizer(n);
    json!({"n": n, "h0": h0_twist(n), "basis": e.basis()})
}

fn polynomial_string(f: &[i128]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        let coeff = match (c.abs(), i) {
            (1, 0) => "1".to_string(),
            (1, _) => String::new(),
            (a, _) => a.to_string(),
        };
        let sign = if c < 0 { "-" } else { "+" };
        terms.push((sign, format!("{coeff}{mono}")));
    }
    let mut s = String::new();
    for (k, (sign, t)) in terms.iter().enumerate() {
        if k == 0 {
            if *sign == "-" {
                s.push('-');
            }
        } else {
            s.push_str(sign);
        }
        s.push_str(t);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn cyclotomic(n: u64) -> CmdResult {
    let fb = f1n(n)?.finite()?;
    let ring = associated_ring(&fb)?;
    let phi = cyclotomic_polynomial(n);
    let target = QuotientRing::polynomial(&phi)?;
    let iso = ring_iso_check(ring.quotient(), &target)?;
    let (status, code, detail) = match &iso {
        RingIso::Isomorphic(m) => ("isomorphic", EXIT_OK, json!(m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())),
        RingIso::Distinguished(why) => ("distinguished", EXIT_OK, json!(why)),
        RingIso::Unknown => ("unknown", EXIT_UNKNOWN, Value::Null),
    };
    let torsion = ring.torsion();
    Ok(Report {
        body: json!({
            "n": n,
            "rank": ring.rank(),
            "torsion": if torsion.is_empty() { json!("none") } else { json!(torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()) },
            "target": format!("Z[x]/({})", polynomial_string(&phi)),
            "iso": status,
            "detail": detail,
        }),
        code,
    })
}

fn ring_iso_check(a: &QuotientRing, b: &QuotientRing) -> Result<RingIso, FormatError> {
    Ok(blueforge_core::presentation::ring_iso_check(a, b, 2)?)
}
