//! Seeded random corpora of reduced plane curves and the property suite run
//! over them.
//!
//! Components are irreducible by construction: lines, conics of rank 3,
//! Weierstrass cubics, forms `A(x, z) - y B(x, z)` with `gcd(A, B) = 1`, and
//! random forms kept only when smooth. Many components are built around the
//! point `P = [0, 1, 0]` with tangent `z = 0` so that high-contact
//! configurations (Płoski curves and their near misses) occur often.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::curve::{is_irreducible_conic, Curve, ProjFrame};
use crate::exact::{homogeneous_gcd, rat, Error, MultiPoly, Rational, Result};
use crate::git::{validate_verdict, StabilityClass};
use crate::ploski::{gen_doublestar, gen_star, is_ploski, ploski_conic};
use crate::polar::{bound_report_with, polar_degree_components};
use crate::singular::{singular_points, sum_of};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    /// Only irreducible conics.
    Conics,
    /// At least one line, the rest conics.
    LinesAndConics,
    /// Every component of degree at least 3.
    HighDegree,
    /// Components of degree 1 to 4 in any mix.
    General,
}

impl Profile {
    pub const ALL: [Profile; 4] = [
        Profile::Conics,
        Profile::LinesAndConics,
        Profile::HighDegree,
        Profile::General,
    ];

    fn accepts(self, d: u32) -> bool {
        match self {
            Profile::Conics => d >= 2 && d.is_multiple_of(2),
            Profile::LinesAndConics => d >= 1,
            Profile::HighDegree => d >= 3,
            Profile::General => d >= 1,
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Conics => "conics",
            Profile::LinesAndConics => "lines-and-conics",
            Profile::HighDegree => "high-degree",
            Profile::General => "general",
        })
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Profile> {
        Profile::ALL
            .into_iter()
            .find(|p| p.to_string() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown profile {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    /// Fixed degree, or `None` for a degree drawn from `5..=9` per case.
    pub degree: Option<u32>,
    pub count: usize,
    pub seed: u64,
    pub profile: Profile,
    /// Also recompute the invariants in one random frame per case.
    pub frame_checks: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            degree: None,
            count: 100,
            seed: 0x5EED,
            profile: Profile::General,
            frame_checks: true,
        }
    }
}

fn p3(terms: &[(i64, [u32; 3])]) -> MultiPoly {
    MultiPoly::from_int_terms(3, terms)
}

fn small(rng: &mut ChaCha8Rng, b: i64) -> i64 {
    rng.gen_range(-b..=b)
}

fn nonzero(rng: &mut ChaCha8Rng, b: i64) -> i64 {
    loop {
        let v = small(rng, b);
        if v != 0 {
            return v;
        }
    }
}

/// Random binary form in `x, z` of degree `k`.
fn binary_form(rng: &mut ChaCha8Rng, k: u32, b: i64) -> MultiPoly {
    let terms: Vec<(i64, [u32; 3])> = (0..=k).map(|i| (small(rng, b), [i, 0, k - i])).collect();
    p3(&terms)
}

fn random_line(rng: &mut ChaCha8Rng) -> MultiPoly {
    match rng.gen_range(0..3) {
        0 => p3(&[(1, [0, 0, 1])]),
        1 => p3(&[(nonzero(rng, 3), [1, 0, 0]), (small(rng, 3), [0, 0, 1])]),
        _ => loop {
            let l = p3(&[
                (small(rng, 3), [1, 0, 0]),
                (small(rng, 3), [0, 1, 0]),
                (small(rng, 3), [0, 0, 1]),
            ]);
            if !l.is_zero() {
                return l;
            }
        },
    }
}

fn random_conic(rng: &mut ChaCha8Rng) -> MultiPoly {
    loop {
        let q = match rng.gen_range(0..5) {
            0 | 1 => ploski_conic(&rat(nonzero(rng, 6))),
            2 => {
                let mut q = ploski_conic(&rat(small(rng, 4)));
                q.add_term([1, 0, 1], rat(nonzero(rng, 3)));
                q
            }
            3 => p3(&[
                (1, [2, 0, 0]),
                (-nonzero(rng, 4), [0, 1, 1]),
                (small(rng, 3), [1, 0, 1]),
            ]),
            _ => {
                let exps = [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]];
                let terms: Vec<(i64, [u32; 3])> = exps.iter().map(|&e| (small(rng, 3), e)).collect();
                p3(&terms)
            }
        };
        if q.homogeneous_degree() == Some(2) && is_irreducible_conic(&q) {
            return q;
        }
    }
}

/// `A(x, z) - y B(x, z)` with `deg A = k`, `deg B = k - 1`, coprime, and a
/// nonzero `x^k` term: irreducible, with a point of multiplicity `k - 1` at
/// `P`.
fn linear_in_y(rng: &mut ChaCha8Rng, k: u32) -> MultiPoly {
    loop {
        let mut a = binary_form(rng, k, 3);
        a.add_term([k, 0, 0], rat(nonzero(rng, 2)));
        let b = binary_form(rng, k - 1, 2);
        if b.is_zero() || a.coeff(&[k, 0, 0]).is_none() {
            continue;
        }
        let g = homogeneous_gcd(&a, &b).expect("arity 3");
        if g.total_degree() != Some(0) {
            continue;
        }
        let yb = b.mul_term(&[0, 1, 0], &rat(1));
        return a.sub_ref(&yb);
    }
}

/// `y^2 z - x^3 - a x^2 z - b x z^2 - c z^3`
fn weierstrass(rng: &mut ChaCha8Rng) -> MultiPoly {
    p3(&[
        (1, [0, 2, 1]),
        (-1, [3, 0, 0]),
        (small(rng, 3), [2, 0, 1]),
        (small(rng, 3), [1, 0, 2]),
        (small(rng, 3), [0, 0, 3]),
    ])
}

fn random_smooth(rng: &mut ChaCha8Rng, k: u32) -> Option<MultiPoly> {
    let mut f = MultiPoly::zero(3);
    for i in 0..=k {
        for j in 0..=k - i {
            if rng.gen_bool(0.6) {
                f.add_term([i, j, k - i - j], rat(small(rng, 2)));
            }
        }
    }
    for e in [[k, 0, 0], [0, k, 0], [0, 0, k]] {
        f.add_term(e, rat(nonzero(rng, 2)));
    }
    if f.homogeneous_degree() != Some(k) {
        return None;
    }
    let c = Curve::from_components(vec![f.clone()]).ok()?;
    matches!(singular_points(&c), Ok(s) if s.is_empty()).then_some(f)
}

fn random_high(rng: &mut ChaCha8Rng, k: u32) -> MultiPoly {
    match (k, rng.gen_range(0..4)) {
        (3, 0) => weierstrass(rng),
        (3, 1) => {
            let mut f = p3(&[(1, [3, 0, 0]), (-1, [0, 1, 2])]);
            f.add_term([0, 0, 3], rat(small(rng, 3)));
            f.add_term([1, 0, 2], rat(small(rng, 3)));
            f
        }
        (k, 2) if k <= 4 => {
            for _ in 0..4 {
                if let Some(f) = random_smooth(rng, k) {
                    return f;
                }
            }
            linear_in_y(rng, k)
        }
        _ => linear_in_y(rng, k),
    }
}

fn component(rng: &mut ChaCha8Rng, k: u32) -> MultiPoly {
    match k {
        1 => random_line(rng),
        2 => random_conic(rng),
        k => random_high(rng, k),
    }
}

/// Component degrees summing to `d` for a profile.
fn degree_pattern(rng: &mut ChaCha8Rng, profile: Profile, d: u32) -> Vec<u32> {
    match profile {
        Profile::Conics => vec![2; (d / 2) as usize],
        Profile::LinesAndConics => {
            let max_lines = if d % 2 == 1 { d.min(3) } else { d.min(4) };
            let choices: Vec<u32> = (1..=max_lines).filter(|l| (d - l).is_multiple_of(2)).collect();
            let lines = *choices.choose(rng).expect("some line count fits");
            let mut v = vec![1; lines as usize];
            v.extend(std::iter::repeat_n(2, ((d - lines) / 2) as usize));
            v
        }
        Profile::HighDegree => {
            let mut left = d;
            let mut v = Vec::new();
            while left > 0 {
                let options: Vec<u32> = (3..=5.min(left)).filter(|&k| left - k == 0 || left - k >= 3).collect();
                let k = options.choose(rng).copied().unwrap_or(left);
                v.push(k);
                left -= k;
            }
            v
        }
        Profile::General => {
            let mut left = d;
            let mut v = Vec::new();
            while left > 0 {
                let k = rng.gen_range(1..=4.min(left));
                v.push(k);
                left -= k;
            }
            v
        }
    }
}

fn random_frame(rng: &mut ChaCha8Rng, b: i64) -> ProjFrame {
    loop {
        let m: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| small(rng, b)));
        if let Ok(g) = ProjFrame::from_ints(m) {
            return g;
        }
    }
}

fn structured(rng: &mut ChaCha8Rng, profile: Profile, d: u32) -> Option<Curve> {
    if profile == Profile::Conics && rng.gen_bool(0.3) {
        let n = d / 2;
        return match rng.gen_range(0..3) {
            0 => {
                let mut cs: Vec<i64> = (-6..=6).collect();
                cs.shuffle(rng);
                Curve::from_components(cs[..n as usize].iter().map(|&c| ploski_conic(&rat(c))).collect()).ok()
            }
            1 => gen_star(n).ok(),
            _ => gen_doublestar(n).ok(),
        };
    }
    if profile == Profile::LinesAndConics && d % 2 == 1 && rng.gen_bool(0.25) {
        let mut cs: Vec<i64> = (-6..=6).collect();
        cs.shuffle(rng);
        let mut comps = vec![p3(&[(1, [0, 0, 1])])];
        comps.extend(cs[..(d / 2) as usize].iter().map(|&c| ploski_conic(&rat(c))));
        return Curve::from_components(comps).ok();
    }
    None
}

/// A random reduced curve of degree `d` in the given profile, never a pencil
/// of concurrent lines.
pub fn random_curve(rng: &mut ChaCha8Rng, profile: Profile, d: u32) -> Result<Curve> {
    if !profile.accepts(d) {
        return Err(Error::InvalidParameters(format!(
            "profile {profile} has no curves of degree {d}"
        )));
    }
    for _ in 0..64 {
        let c = match structured(rng, profile, d) {
            Some(c) => c,
            None => {
                let comps: Vec<MultiPoly> = degree_pattern(rng, profile, d)
                    .into_iter()
                    .map(|k| component(rng, k))
                    .collect();
                match Curve::from_components(comps) {
                    Ok(c) => c,
                    Err(_) => continue,
                }
            }
        };
        let c = if rng.gen_bool(0.3) {
            c.apply_frame(&random_frame(rng, 2))
        } else {
            c
        };
        if c.is_reduced() && !c.is_concurrent_lines() {
            return Ok(c);
        }
    }
    Err(Error::InvalidParameters("could not draw a reduced curve".into()))
}

fn case_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn case_degree(rng: &mut ChaCha8Rng, cfg: &FuzzConfig) -> u32 {
    match cfg.degree {
        Some(d) => d,
        None => {
            let options: Vec<u32> = (5..=9).filter(|&d| cfg.profile.accepts(d)).collect();
            *options.choose(rng).expect("profiles accept some degree in 5..=9")
        }
    }
}

/// The corpus for a configuration; case `i` depends only on the seed and `i`.
pub fn corpus(cfg: &FuzzConfig) -> Result<Vec<Curve>> {
    (0..cfg.count)
        .map(|i| {
            let mut rng = case_rng(cfg.seed, i);
            let d = case_degree(&mut rng, cfg);
            random_curve(&mut rng, cfg.profile, d)
        })
        .collect()
}

/// A property that failed on a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub detail: String,
}

/// Everything computed for one curve.
#[derive(Clone, Debug)]
pub struct CaseOutcome {
    pub curve: Curve,
    pub milnor_sum: Option<u64>,
    pub polar_degree: Option<u64>,
    pub ploski: bool,
    pub class: Option<StabilityClass>,
    pub conclusive: bool,
    pub violations: Vec<Violation>,
    /// Observations that are reported but not asserted.
    pub notes: Vec<String>,
}

fn violation(check: &'static str, detail: impl Into<String>) -> Violation {
    Violation {
        check,
        detail: detail.into(),
    }
}

/// Runs the full property suite on one curve. `frame` adds a frame
/// invariance check.
pub fn check_curve(c: &Curve, frame: Option<&ProjFrame>) -> CaseOutcome {
    let mut out = CaseOutcome {
        curve: c.clone(),
        milnor_sum: None,
        polar_degree: None,
        ploski: false,
        class: None,
        conclusive: false,
        violations: Vec::new(),
        notes: Vec::new(),
    };
    let sing = match singular_points(c) {
        Ok(s) => s,
        Err(e) => {
            out.violations.push(violation("analysis", e.to_string()));
            return out;
        }
    };
    let d = c.degree() as u64;
    let sum = sum_of(&sing);
    let report = bound_report_with(c, &sing);
    out.milnor_sum = Some(sum);
    out.polar_degree = report.polar_degree;
    out.ploski = report.ploski_structure;
    for check in &report.checks {
        if check.holds == Some(false) {
            out.violations.push(violation(check.name, check.statement.clone()));
        }
    }
    if !report.concurrent_lines && d >= 5 {
        let limit = (d - 1).pow(2) - d / 2;
        if sum > limit {
            out.violations
                .push(violation("milnor_bound", format!("sum {sum} > {limit}")));
        }
    }
    if let Some(v) = &report.verdict {
        out.class = Some(v.class);
        out.conclusive = !v.undetermined;
        if v.class != StabilityClass::Undetermined && !validate_verdict(c, v) {
            out.violations
                .push(violation("certificate", format!("{} certificate rejected", v.class)));
        }
        let has_small = c.components().any(|f| f.homogeneous_degree().is_some_and(|k| k <= 2));
        if has_small && v.undetermined && v.class == StabilityClass::StableInFrame && d >= 5 {
            let limit = (d - 1).pow(2) - (d - 2);
            if sum > limit {
                out.notes.push(format!(
                    "undetermined stableInFrame verdict with sum {sum} > {limit}; not a stable curve"
                ));
            }
        }
    }
    if c.num_factors() >= 2 {
        match polar_degree_components(c) {
            Ok(pc) if Some(pc) == report.polar_degree => {}
            Ok(pc) => out.violations.push(violation(
                "route_agreement",
                format!("components {pc} vs Milnor {:?}", report.polar_degree),
            )),
            Err(e) => out.violations.push(violation("route_agreement", e.to_string())),
        }
    }
    if let Some(g) = frame {
        let moved = c.apply_frame(g);
        match singular_points(&moved) {
            Ok(s) if sum_of(&s) == sum => {}
            Ok(s) => out.violations.push(violation(
                "frame_invariance",
                format!("sum {} in frame [{g}] vs {sum}", sum_of(&s)),
            )),
            Err(e) => out.violations.push(violation("frame_invariance", e.to_string())),
        }
        if is_ploski(&moved) != out.ploski {
            out.violations.push(violation(
                "frame_invariance",
                format!("Ploski structure changes in frame [{g}]"),
            ));
        }
    }
    out
}

/// Shrinks a failing curve while `fails` keeps holding: drops components,
/// then drops or halves coefficients.
pub fn minimize(c: &Curve, fails: impl Fn(&Curve) -> bool) -> Curve {
    let mut best = c.clone();
    loop {
        let mut improved = false;
        for i in 0..best.num_factors() {
            if best.num_factors() == 1 {
                break;
            }
            let keep: Vec<usize> = (0..best.num_factors()).filter(|&j| j != i).collect();
            if let Ok(smaller) = best.sub_curve(keep) {
                if fails(&smaller) {
                    best = smaller;
                    improved = true;
                    break;
                }
            }
        }
        if improved {
            continue;
        }
        'outer: for i in 0..best.num_factors() {
            let f = best.factors()[i].0.clone();
            for (m, coeff) in f.terms() {
                let halved: Rational = (coeff / rat(2)).trunc();
                for replacement in [rat(0), halved] {
                    if &replacement == coeff {
                        continue;
                    }
                    let mut g = f.clone();
                    g.add_term(*m, &replacement - coeff);
                    let mut factors = best.factors().to_vec();
                    factors[i].0 = g;
                    if let Ok(candidate) = Curve::from_factors(factors) {
                        if candidate.is_reduced() && fails(&candidate) {
                            best = candidate;
                            improved = true;
                            break 'outer;
                        }
                    }
                }
            }
        }
        if !improved {
            return best;
        }
    }
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub index: usize,
    pub curve: Curve,
    pub minimized: Curve,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    pub cases: Vec<CaseOutcome>,
    pub failures: Vec<Failure>,
}

/// Generates the corpus and checks every case; cases run in parallel and are
/// reported in index order.
pub fn run_fuzz(cfg: &FuzzConfig) -> Result<FuzzReport> {
    let curves = corpus(cfg)?;
    let cases: Vec<CaseOutcome> = curves
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let frame = cfg.frame_checks.then(|| {
                let mut rng = case_rng(cfg.seed ^ 0xF4A3E, i);
                random_frame(&mut rng, 2)
            });
            check_curve(c, frame.as_ref())
        })
        .collect();
    let failures = cases
        .iter()
        .enumerate()
        .filter(|(_, o)| !o.violations.is_empty())
        .map(|(i, o)| {
            let names: Vec<&'static str> = o.violations.iter().map(|v| v.check).collect();
            let minimized = minimize(&o.curve, |c| {
                check_curve(c, None).violations.iter().any(|v| names.contains(&v.check))
            });
            Failure {
                index: i,
                curve: o.curve.clone(),
                minimized,
                violations: o.violations.clone(),
            }
        })
        .collect();
    Ok(FuzzReport {
        config: cfg.clone(),
        cases,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_valid() {
        for profile in Profile::ALL {
            let cfg = FuzzConfig {
                count: 6,
                profile,
                ..FuzzConfig::default()
            };
            let a = corpus(&cfg).unwrap();
            let b = corpus(&cfg).unwrap();
            assert_eq!(a, b);
            for c in &a {
                assert!((5..=9).contains(&c.degree()));
                assert!(c.is_reduced());
            }
        }
    }

    #[test]
    fn profile_names_round_trip() {
        for p in Profile::ALL {
            assert_eq!(p.to_string().parse::<Profile>().unwrap(), p);
        }
        assert!("cubics".parse::<Profile>().is_err());
    }

    #[test]
    fn degree_patterns_respect_profiles() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 5..=9 {
            let v = degree_pattern(&mut rng, Profile::HighDegree, d);
            assert_eq!(v.iter().sum::<u32>(), d);
            assert!(v.iter().all(|&k| k >= 3));
            let v = degree_pattern(&mut rng, Profile::LinesAndConics, d);
            assert_eq!(v.iter().sum::<u32>(), d);
            assert!(v.contains(&1) && v.iter().all(|&k| k <= 2));
        }
    }

    #[test]
    fn minimizer_drops_irrelevant_components() {
        let c = gen_star(3).unwrap();
        let m = minimize(&c, |c| c.degree() >= 2);
        assert_eq!(m.degree(), 2);
    }
}
