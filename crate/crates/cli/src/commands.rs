//! Subcommands and their JSON documents.

use std::io::Read;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use milnor_core::curve::{Curve, ProjFrame};
use milnor_core::exact::Rational;
use milnor_core::fuzz::{run_fuzz, FuzzConfig, Profile};
use milnor_core::git::{hm_classify_in_frame, instability_search, validate_verdict, Certificate, StabilityVerdict};
use milnor_core::local::{milnor_at, AlgPoint, Multiplicity};
use milnor_core::ploski::{gen_doublestar, gen_even_ploski, gen_odd_ploski, gen_star};
use milnor_core::polar::{bound_report, polar_degree_components, polar_degree_milnor};
use milnor_core::singular::{singular_points, sum_of, SingularPoint};
use serde_json::{json, Value};

use crate::parse::{parse_curve, parse_rationals};

/// Environment variable holding the default fuzz seed.
pub const SEED_ENV: &str = "MILNOR_SEED";

#[derive(Parser, Debug)]
#[command(name = "milnor", version, about = "Exact invariants of projective plane curves")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Milnor,
    Components,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    EvenPloski,
    OddPloski,
    Star,
    Doublestar,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Singular points with their Milnor numbers, or the Milnor number at one point.
    Milnor {
        /// Factored curve, or `-` to read it from standard input.
        curve: String,
        /// Projective point `a,b,c` with rational coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Sum of the Milnor numbers over all singular points.
    MilnorSum { curve: String },
    /// Polar degree by the Milnor route, the component route, or both.
    Polar {
        curve: String,
        #[arg(long, value_enum, default_value_t = Route::Both)]
        route: Route,
    },
    /// Hilbert-Mumford verdict with its certificate.
    Git {
        curve: String,
        /// Frame matrix `m11,m12,...,m33`, row by row.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "search")]
        frame: Option<String>,
        /// Search candidate frames built from the singular points.
        #[arg(long)]
        search: bool,
    },
    /// Prints a member of a curve family.
    Generate {
        #[arg(value_enum)]
        family: Family,
        n: u32,
        /// Distinct rationals `c_1,...,c_n` for the even Ploski conics.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
    },
    /// Evaluates every bound whose hypotheses hold.
    Verify { curve: String },
    /// Checks the invariant and bound suites on random factored curves.
    Fuzz {
        /// Fixed degree; by default each case draws one from 5 to 9.
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, env = SEED_ENV, default_value = "0x5EED", value_parser = parse_seed)]
        seed: u64,
        #[arg(long, default_value = "general")]
        profile: Profile,
        /// Skip the per-case random frame check.
        #[arg(long)]
        no_frame_checks: bool,
    },
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

/// Failure that maps to exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

impl From<crate::parse::ParseError> for InputError {
    fn from(e: crate::parse::ParseError) -> Self {
        InputError(e.to_string())
    }
}

impl From<milnor_core::exact::Error> for InputError {
    fn from(e: milnor_core::exact::Error) -> Self {
        InputError(e.to_string())
    }
}

/// A finished command: the JSON document, its text rendering and whether a
/// checked property failed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub document: Value,
    pub text: String,
    pub violation: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.violation)
    }
}

fn read_curve(text: &str) -> Result<(String, Curve), InputError> {
    let src = if text == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| InputError(format!("cannot read standard input: {e}")))?;
        s
    } else {
        text.to_string()
    };
    let c = parse_curve(&src)?;
    Ok((src, c))
}

fn int(n: impl ToString) -> Value {
    Value::String(n.to_string())
}

fn point_json(p: &AlgPoint) -> Value {
    let coords: Vec<Value> = match p.normalized_rational() {
        Some(c) => c.iter().map(int).collect(),
        None => p.coords().iter().map(int).collect(),
    };
    json!({
        "coords": coords,
        "modulus": if p.is_rational() { Value::Null } else { int(p.modulus()) },
        "conjugates": int(p.degree()),
    })
}

fn points_json(sing: &[SingularPoint]) -> Value {
    Value::Array(
        sing.iter()
            .map(|s| json!({"point": point_json(&s.point), "mu": int(s.mu)}))
            .collect(),
    )
}

fn points_text(sing: &[SingularPoint]) -> String {
    if sing.is_empty() {
        return "no singular points\n".into();
    }
    sing.iter()
        .map(|s| {
            let each = if s.point.degree() > 1 { " each" } else { "" };
            format!("{}  mu = {}{each}\n", s.point, s.mu)
        })
        .collect()
}

fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::Separating { functional } => json!({
            "kind": "separating",
            "functional": [int(functional.0), int(functional.1)],
        }),
        Certificate::Supporting { normal, a, b } => json!({
            "kind": "supporting",
            "normal": [int(normal.0), int(normal.1)],
            "a": [int(a.u), int(a.v)],
            "b": [int(b.u), int(b.v)],
        }),
        Certificate::Enclosing { vertices } => json!({
            "kind": "enclosing",
            "vertices": vertices.iter().map(|w| json!([int(w.u), int(w.v)])).collect::<Vec<_>>(),
        }),
        Certificate::SmoothRule => json!({"kind": "smooth_rule"}),
        Certificate::DoublePointRule { max_mu } => json!({"kind": "double_point_rule", "max_mu": int(max_mu)}),
        Certificate::Empty => json!({"kind": "empty"}),
    }
}

fn frame_json(g: &ProjFrame) -> Value {
    Value::Array(g.matrix().iter().flatten().map(int).collect())
}

fn verdict_json(v: &StabilityVerdict) -> Value {
    json!({
        "class": v.class.to_string(),
        "undetermined": v.undetermined,
        "frame": frame_json(&v.frame),
        "notes": v.notes,
    })
}

fn verdict_text(v: &StabilityVerdict, validated: bool) -> String {
    let mut s = format!(
        "{}{}\nframe: {}\ncertificate: {} ({})\n",
        v.class,
        if v.undetermined { " (tied to this frame)" } else { "" },
        v.frame,
        certificate_json(&v.certificate),
        if validated { "validated" } else { "NOT validated" },
    );
    for n in &v.notes {
        s.push_str(&format!("note: {n}\n"));
    }
    s
}

fn multiplicity_str(m: Multiplicity) -> String {
    m.to_string()
}

/// Shared envelope fields; `timings` is filled in by [`run`].
fn document(
    command: &str,
    input: Option<&str>,
    curve: Option<&Curve>,
    results: Value,
    certificates: Vec<Value>,
) -> Value {
    json!({
        "command": command,
        "input": input,
        "degree": curve.map(|c| int(c.degree())),
        "results": results,
        "certificates": certificates,
        "timings": {},
    })
}

fn milnor(curve: &str, point: Option<&str>) -> Result<Outcome, InputError> {
    let (src, c) = read_curve(curve)?;
    if let Some(p) = point {
        let coords = parse_rationals(p)?;
        if coords.len() != 3 {
            return Err(InputError(format!("a point needs 3 coordinates, got {}", coords.len())));
        }
        if coords.iter().all(|v| *v == Rational::from_integer(0.into())) {
            return Err(InputError("the point [0 : 0 : 0] does not exist".into()));
        }
        let q = AlgPoint::rational(&coords);
        let mu = milnor_at(&c, &q)?
            .first()
            .map(|(_, m)| *m)
            .ok_or_else(|| InputError("no value at the point".into()))?;
        let results = json!({"point": point_json(&q), "mu": multiplicity_str(mu)});
        return Ok(Outcome {
            text: format!("{q}  mu = {mu}\n"),
            document: document("milnor", Some(&src), Some(&c), results, Vec::new()),
            violation: false,
        });
    }
    let sing = singular_points(&c)?;
    let results = json!({"points": points_json(&sing), "milnor_sum": int(sum_of(&sing))});
    Ok(Outcome {
        text: points_text(&sing),
        document: document("milnor", Some(&src), Some(&c), results, Vec::new()),
        violation: false,
    })
}

fn milnor_sum(curve: &str) -> Result<Outcome, InputError> {
    let (src, c) = read_curve(curve)?;
    let sing = singular_points(&c)?;
    let sum = sum_of(&sing);
    let results = json!({"milnor_sum": int(sum), "points": points_json(&sing)});
    Ok(Outcome {
        text: format!("{sum}\n"),
        document: document("milnor-sum", Some(&src), Some(&c), results, Vec::new()),
        violation: false,
    })
}

fn polar(curve: &str, route: Route) -> Result<Outcome, InputError> {
    let (src, c) = read_curve(curve)?;
    let by_milnor = matches!(route, Route::Milnor | Route::Both)
        .then(|| polar_degree_milnor(&c))
        .transpose()?;
    let by_components = matches!(route, Route::Components | Route::Both)
        .then(|| polar_degree_components(&c))
        .transpose()?;
    let agree = match (by_milnor, by_components) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    };
    let text = [by_milnor, by_components]
        .iter()
        .flatten()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    let results = json!({
        "route": format!("{route:?}").to_lowercase(),
        "milnor": by_milnor.map(int),
        "components": by_components.map(int),
        "agree": agree,
    });
    Ok(Outcome {
        text: if agree {
            format!("{text}\n")
        } else {
            format!("{text}\nroutes disagree\n")
        },
        document: document("polar", Some(&src), Some(&c), results, Vec::new()),
        violation: !agree,
    })
}

fn git(curve: &str, frame: Option<&str>, search: bool) -> Result<Outcome, InputError> {
    let (src, c) = read_curve(curve)?;
    let v = if search {
        instability_search(&c)
    } else {
        let g = match frame {
            Some(f) => {
                let m = parse_rationals(f)?;
                let m: [Rational; 9] = m
                    .try_into()
                    .map_err(|v: Vec<Rational>| InputError(format!("a frame needs 9 entries, got {}", v.len())))?;
                let [a, b, c, d, e, f, g, h, i] = m;
                ProjFrame::new([[a, b, c], [d, e, f], [g, h, i]])?
            }
            None => ProjFrame::identity(),
        };
        hm_classify_in_frame(&c, &g)
    };
    let validated = validate_verdict(&c, &v);
    let mut cert = certificate_json(&v.certificate);
    cert["validated"] = Value::Bool(validated);
    Ok(Outcome {
        text: verdict_text(&v, validated),
        document: document("git", Some(&src), Some(&c), verdict_json(&v), vec![cert]),
        violation: !validated && v.certificate != Certificate::Empty,
    })
}

fn generate(family: Family, n: u32, params: Option<&str>) -> Result<Outcome, InputError> {
    let params = params.map(parse_rationals).transpose()?;
    if params.is_some() && family != Family::EvenPloski {
        return Err(InputError("--params applies to even-ploski only".into()));
    }
    let c = match family {
        Family::EvenPloski => gen_even_ploski(n, params.as_deref()),
        Family::OddPloski => gen_odd_ploski(n),
        Family::Star => gen_star(n),
        Family::Doublestar => gen_doublestar(n),
    }?;
    let name = family
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let results = json!({"family": name, "n": int(n), "curve": c.to_string()});
    Ok(Outcome {
        text: format!("{c}\n"),
        document: document("generate", None, Some(&c), results, Vec::new()),
        violation: false,
    })
}

fn verify(curve: &str) -> Result<Outcome, InputError> {
    let (src, c) = read_curve(curve)?;
    let r = bound_report(&c);
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|k| json!({"name": k.name, "statement": k.statement, "holds": k.holds, "note": k.note}))
        .collect();
    let results = json!({
        "milnor_sum": r.milnor_sum.map(int),
        "polar_degree": r.polar_degree.map(int),
        "concurrent_lines": r.concurrent_lines,
        "ploski_structure": r.ploski_structure,
        "equality_attained": r.equality_attained,
        "verdict": r.verdict.as_ref().map(verdict_json),
        "checks": checks,
        "notes": r.notes,
    });
    let mut certificates = Vec::new();
    let mut text = String::new();
    if let (Some(sum), Some(pd)) = (r.milnor_sum, r.polar_degree) {
        text.push_str(&format!("milnor sum {sum}, pd = {pd} >= {}\n", r.degree / 2));
    }
    match r.equality_attained {
        Some(true) => text.push_str("equality pd = floor(d/2) attained\n"),
        Some(false) => text.push_str("equality not attained\n"),
        None => {}
    }
    if let Some(v) = &r.verdict {
        let validated = validate_verdict(&c, v);
        let mut cert = certificate_json(&v.certificate);
        cert["validated"] = Value::Bool(validated);
        certificates.push(cert);
        text.push_str(&format!("stability: {}", verdict_text(v, validated)));
    }
    for k in &r.checks {
        let status = match k.holds {
            Some(true) => "holds".to_string(),
            Some(false) => "FAILS".to_string(),
            None => format!("skipped ({})", k.note.as_deref().unwrap_or("hypotheses not met")),
        };
        text.push_str(&format!("{}: {} {status}\n", k.name, k.statement));
    }
    for n in &r.notes {
        text.push_str(&format!("note: {n}\n"));
    }
    Ok(Outcome {
        text,
        document: document("verify", Some(&src), Some(&c), results, certificates),
        violation: !r.consistent(),
    })
}

fn fuzz(
    degree: Option<u32>,
    count: usize,
    seed: u64,
    profile: Profile,
    frame_checks: bool,
) -> Result<Outcome, InputError> {
    let cfg = FuzzConfig {
        degree,
        count,
        seed,
        profile,
        frame_checks,
    };
    let report = run_fuzz(&cfg)?;
    let cases: Vec<Value> = report
        .cases
        .iter()
        .enumerate()
        .map(|(i, o)| {
            json!({
                "index": int(i),
                "curve": o.curve.to_string(),
                "degree": int(o.curve.degree()),
                "milnor_sum": o.milnor_sum.map(int),
                "polar_degree": o.polar_degree.map(int),
                "ploski": o.ploski,
                "class": o.class.map(|c| c.to_string()),
                "conclusive": o.conclusive,
                "notes": o.notes,
            })
        })
        .collect();
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|f| {
            json!({
                "index": int(f.index),
                "curve": f.curve.to_string(),
                "counterexample": f.minimized.to_string(),
                "violations": f.violations.iter().map(|v| json!({"check": v.check, "detail": v.detail})).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut text = format!(
        "{} cases, profile {profile}, seed {seed:#x}: {} failure(s)\n",
        report.cases.len(),
        report.failures.len()
    );
    for f in &report.failures {
        text.push_str(&format!(
            "case {}: {}\n  counterexample: {}\n",
            f.index, f.curve, f.minimized
        ));
        for v in &f.violations {
            text.push_str(&format!("  {}: {}\n", v.check, v.detail));
        }
    }
    let results = json!({
        "profile": profile.to_string(),
        "seed": int(seed),
        "count": int(count),
        "degree": degree.map(int),
        "cases": cases,
        "failures": failures,
    });
    Ok(Outcome {
        text,
        document: document("fuzz", None, None, results, Vec::new()),
        violation: !report.failures.is_empty(),
    })
}

/// Runs a parsed command line. Wall-clock time lands in `timings.total_us`.
pub fn run(cli: &Cli) -> Result<Outcome, InputError> {
    let start = Instant::now();
    let mut out = match &cli.command {
        Command::Milnor { curve, point } => milnor(curve, point.as_deref()),
        Command::MilnorSum { curve } => milnor_sum(curve),
        Command::Polar { curve, route } => polar(curve, *route),
        Command::Git { curve, frame, search } => git(curve, frame.as_deref(), *search),
        Command::Generate { family, n, params } => generate(*family, *n, params.as_deref()),
        Command::Verify { curve } => verify(curve),
        Command::Fuzz {
            degree,
            count,
            seed,
            profile,
            no_frame_checks,
        } => fuzz(*degree, *count, *seed, *profile, !no_frame_checks),
    }?;
    out.document["timings"] = json!({"total_us": int(start.elapsed().as_micros())});
    Ok(out)
}
