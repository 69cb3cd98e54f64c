use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use milnor_core::curve::{Curve, ProjFrame};
use milnor_core::exact::MultiPoly;
use milnor_core::fuzz::{corpus, FuzzConfig, Profile};
use milnor_core::git::{instability_search, Certificate, StabilityClass, StabilityVerdict};
use milnor_core::local::{fulton_mult, local_algebra_dim, AlgPoint, LocalDim, Multiplicity};
use milnor_core::ploski::{gen_doublestar, gen_even_ploski, gen_odd_ploski, gen_star, is_ploski};
use milnor_core::polar::{bound_report_with, polar_degree_components, polar_degree_milnor, BoundReport};
use milnor_core::singular::{bezout_check, milnor_sum, rational_point, same_rational_point, singular_points, sum_of};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_frame(rng: &mut ChaCha8Rng) -> ProjFrame {
    loop {
        let m: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-3..=3)));
        if let Ok(g) = ProjFrame::from_ints(m) {
            return g;
        }
    }
}

fn polar_degrees_of_ploski_curves() -> Outcome {
    for n in 2..=5u32 {
        for (name, c) in [("even", gen_even_ploski(n, None)), ("odd", gen_odd_ploski(n))] {
            let c = c.map_err(|e| e.to_string())?;
            let by_milnor = polar_degree_milnor(&c).map_err(|e| e.to_string())?;
            let by_components = polar_degree_components(&c).map_err(|e| e.to_string())?;
            ensure(by_milnor == u64::from(n) && by_components == u64::from(n), || {
                format!("{name} n = {n}: Milnor route {by_milnor}, component route {by_components}")
            })?;
        }
    }
    Ok("even and odd, n = 2..5, both routes give n".into())
}

fn milnor_numbers_of_ploski_curves() -> Outcome {
    let cases = [
        ("even", 3, 22),
        ("even", 4, 45),
        ("even", 5, 76),
        ("odd", 2, 14),
        ("odd", 3, 33),
        ("odd", 4, 60),
    ];
    let apex = rational_point(0, 1, 0);
    for (name, n, want) in cases {
        let c = if name == "even" {
            gen_even_ploski(n, None)
        } else {
            gen_odd_ploski(n)
        }
        .map_err(|e| e.to_string())?;
        let s = singular_points(&c).map_err(|e| e.to_string())?;
        ensure(s.len() == 1 && same_rational_point(&s[0].point, &apex), || {
            format!(
                "{name} d = {}: expected one singular point at [0:1:0], found {}",
                c.degree(),
                s.len()
            )
        })?;
        ensure(s[0].mu == want, || {
            format!("{name} d = {}: mu {} != {want}", c.degree(), s[0].mu)
        })?;
    }
    Ok("mu = 22, 45, 76 (d = 6, 8, 10) and 14, 33, 60 (d = 5, 7, 9) at a single point".into())
}

/// Weight set of a curve in a frame, computed from the expanded product.
fn weights_in(c: &Curve, g: &ProjFrame) -> BTreeSet<(i64, i64)> {
    let moved = c.apply_frame(g);
    let f = moved.product();
    let d = i64::from(c.degree());
    f.terms()
        .map(|(m, _)| {
            let (i, j) = (i64::from(m[0]), i64::from(m[1]));
            (2 * i + j - d, 2 * j + i - d)
        })
        .collect()
}

/// Checks a Separating or Supporting certificate from scratch.
fn recheck(c: &Curve, v: &StabilityVerdict) -> bool {
    let w = weights_in(c, &v.frame);
    let dot = |p: (i64, i64), n: (i64, i64)| p.0 * n.0 + p.1 * n.1;
    match (&v.class, &v.certificate) {
        (StabilityClass::Unstable, Certificate::Separating { functional }) => {
            w.iter().all(|&p| dot(p, *functional) > 0)
        }
        (StabilityClass::StrictlySemistableInFrame, Certificate::Supporting { normal, a, b }) => {
            let (a, b) = ((a.u, a.v), (b.u, b.v));
            let collinear = a.0 * b.1 - a.1 * b.0 == 0;
            *normal != (0, 0)
                && w.iter().all(|&p| dot(p, *normal) >= 0)
                && w.contains(&a)
                && w.contains(&b)
                && dot(a, *normal) == 0
                && dot(b, *normal) == 0
                && collinear
                && dot(a, b) <= 0
        }
        _ => false,
    }
}

fn git_verdicts_of_families() -> Outcome {
    let mut checked = 0;
    for n in 2..=5u32 {
        let even = gen_even_ploski(n, None).map_err(|e| e.to_string())?;
        let v = instability_search(&even);
        ensure(
            v.class == StabilityClass::StrictlySemistableInFrame
                && matches!(v.certificate, Certificate::Supporting { .. })
                && recheck(&even, &v),
            || format!("even n = {n}: {} with {:?}", v.class, v.certificate),
        )?;
        let odd = gen_odd_ploski(n).map_err(|e| e.to_string())?;
        let v = instability_search(&odd);
        ensure(
            v.class == StabilityClass::Unstable
                && matches!(v.certificate, Certificate::Separating { .. })
                && recheck(&odd, &v),
            || format!("odd n = {n}: {} with {:?}", v.class, v.certificate),
        )?;
        checked += 2;
    }
    for n in 2..=4u32 {
        for (name, c) in [("star", gen_star(n)), ("doublestar", gen_doublestar(n))] {
            let c = c.map_err(|e| e.to_string())?;
            let v = instability_search(&c);
            ensure(
                v.class == StabilityClass::StrictlySemistableInFrame && recheck(&c, &v),
                || format!("{name} n = {n}: {} with {:?}", v.class, v.certificate),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} verdicts, certificates re-checked from raw weights"))
}

fn polar_degrees_of_star_families() -> Outcome {
    for n in 2..=4u32 {
        for (name, c) in [("star", gen_star(n)), ("doublestar", gen_doublestar(n))] {
            let c = c.map_err(|e| e.to_string())?;
            let pd = polar_degree_milnor(&c).map_err(|e| e.to_string())?;
            let pc = polar_degree_components(&c).map_err(|e| e.to_string())?;
            let want = u64::from(2 * n - 1);
            ensure(pd == want && pc == want, || {
                format!("{name} n = {n}: {pd} / {pc}, expected {want}")
            })?;
        }
    }
    Ok("pd = 2n - 1 for n = 2..4, both routes".into())
}

/// Bivariate polynomial with monomials of total degree 2 to 5.
fn singular_germ(rng: &mut ChaCha8Rng) -> MultiPoly {
    let terms: Vec<(i64, [u32; 3])> = (0..rng.gen_range(2..=7))
        .map(|_| {
            let k = rng.gen_range(2..=5);
            let i = rng.gen_range(0..=k);
            (rng.gen_range(-3..=3), [i, k - i, 0])
        })
        .collect();
    MultiPoly::from_int_terms(2, &terms)
}

fn milnor_numbers_two_ways() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE55);
    let origin = AlgPoint::from_ints(&[0, 0]);
    let (mut isolated, mut total) = (0, 0);
    while isolated < 120 {
        let f = singular_germ(&mut rng);
        if f.is_zero() {
            continue;
        }
        total += 1;
        let (fx, fy) = (f.partial(0), f.partial(1));
        let fulton = fulton_mult(&fx, &fy, &origin).map_err(|e| e.to_string())?[0].1;
        let colength = local_algebra_dim(&[fx, fy], 18);
        match (fulton, colength) {
            (Multiplicity::Finite(a), LocalDim::Dim(b)) if a == b => isolated += 1,
            (Multiplicity::Infinite, LocalDim::Exceeded) => {}
            (a, b) => return Err(format!("{f}: Fulton {a:?}, colength {b:?}")),
        }
    }
    Ok(format!(
        "{isolated} isolated germs agree ({total} drawn, the rest non-isolated in both)"
    ))
}

fn random_form(rng: &mut ChaCha8Rng, k: u32) -> MultiPoly {
    let mut terms = Vec::new();
    for i in 0..=k {
        for j in 0..=k - i {
            if rng.gen_bool(0.6) {
                terms.push((rng.gen_range(-3..=3), [i, j, k - i - j]));
            }
        }
    }
    MultiPoly::from_int_terms(3, &terms)
}

fn bezout_on_random_pairs() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB320);
    let mut pairs = Vec::new();
    while pairs.len() < 120 {
        let (a, b) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let (f, g) = (random_form(&mut rng, a), random_form(&mut rng, b));
        if f.homogeneous_degree() != Some(a) || g.homogeneous_degree() != Some(b) {
            continue;
        }
        let Ok(both) = Curve::from_components(vec![f.clone(), g.clone()]) else {
            continue;
        };
        if !both.is_reduced() {
            continue;
        }
        pairs.push((
            Curve::from_components(vec![f]).unwrap(),
            Curve::from_components(vec![g]).unwrap(),
        ));
    }
    let bad: Vec<String> = pairs
        .par_iter()
        .filter_map(|(c, d)| {
            let r = bezout_check(c, d);
            (!r.holds).then(|| format!("({c}) . ({d}): {} vs {} {:?}", r.total, r.expected, r.diagnostic))
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} coprime reduced pairs of degree <= 4", pairs.len()))
}

struct Case {
    curve: Curve,
    sum: u64,
    report: BoundReport,
}

fn fuzz_cases() -> Result<Vec<Case>, String> {
    let mut curves = Vec::new();
    for profile in Profile::ALL {
        let cfg = FuzzConfig {
            count: 50,
            profile,
            frame_checks: false,
            ..FuzzConfig::default()
        };
        curves.extend(corpus(&cfg).map_err(|e| e.to_string())?);
    }
    curves
        .into_par_iter()
        .map(|c| {
            let sing = singular_points(&c).map_err(|e| format!("{c}: {e}"))?;
            let report = bound_report_with(&c, &sing);
            Ok(Case {
                sum: sum_of(&sing),
                report,
                curve: c,
            })
        })
        .collect()
}

fn bound_suite(cases: &[Case]) -> Outcome {
    let (mut equalities, mut cubic_only) = (0, 0);
    for case in cases {
        let c = &case.curve;
        let d = u64::from(c.degree());
        ensure(
            (5..=9).contains(&d) && c.is_reduced() && !c.is_concurrent_lines(),
            || format!("corpus curve out of scope: {c}"),
        )?;
        let limit = (d - 1).pow(2) - d / 2;
        ensure(case.sum <= limit, || format!("{c}: sum {} > {limit}", case.sum))?;
        let ploski = is_ploski(c);
        ensure((case.sum == limit) == ploski, || {
            format!("{c}: sum {} vs {limit}, Ploski structure {ploski}", case.sum)
        })?;
        equalities += usize::from(ploski);
        if c.components().all(|f| f.homogeneous_degree().is_some_and(|k| k >= 3)) {
            cubic_only += 1;
            let pd = (d - 1).pow(2) - case.sum;
            let want = (2 * d).div_ceil(3);
            ensure(pd >= want, || format!("{c}: pd {pd} < {want}"))?;
        }
    }
    ensure(equalities > 0 && cubic_only > 0, || {
        "corpus misses equality or cubic-only cases".into()
    })?;
    Ok(format!(
        "{} curves, {equalities} attain equality (all Ploski), {cubic_only} with every component of degree >= 3",
        cases.len()
    ))
}

fn conditioned_bounds(cases: &[Case]) -> Outcome {
    let (mut conclusive, mut undetermined, mut would_exceed) = (0, 0, 0);
    for case in cases {
        let c = &case.curve;
        let d = u64::from(c.degree());
        if !c.components().any(|f| f.homogeneous_degree().is_some_and(|k| k <= 2)) {
            continue;
        }
        let Some(v) = &case.report.verdict else {
            return Err(format!("{c}: no verdict"));
        };
        let limit = (d - 1).pow(2) - (d - 2);
        let check = case
            .report
            .check("line_conic_stable")
            .ok_or("missing line_conic_stable check")?;
        if v.is_conclusively_stable() {
            conclusive += 1;
            ensure(case.sum <= limit && check.holds == Some(true), || {
                format!("{c}: stable with sum {} > {limit}", case.sum)
            })?;
        } else if v.is_unstable() {
            ensure(check.holds.is_none(), || {
                format!("{c}: bound evaluated on an unstable curve")
            })?;
        } else {
            undetermined += 1;
            would_exceed += usize::from(case.sum > limit);
            ensure(check.holds.is_none(), || {
                format!("{c}: bound asserted without conclusive stability")
            })?;
        }
    }
    ensure(conclusive > 0, || {
        "no conclusively stable curve with a line or conic component".into()
    })?;
    Ok(format!(
        "{conclusive} conclusively stable curves satisfy the bound; \
         {undetermined} undetermined verdicts reported, not asserted ({would_exceed} above the bound)"
    ))
}

fn frame_invariance() -> Outcome {
    let c = gen_even_ploski(3, None).map_err(|e| e.to_string())?;
    let (sum, pd) = (
        milnor_sum(&c).map_err(|e| e.to_string())?,
        polar_degree_milnor(&c).map_err(|e| e.to_string())?,
    );
    ensure(is_ploski(&c), || "even Ploski sextic not recognized".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xF2A3E);
    let frames: Vec<ProjFrame> = (0..20).map(|_| random_frame(&mut rng)).collect();
    let bad: Vec<String> = frames
        .par_iter()
        .filter_map(|g| {
            let moved = c.apply_frame(g);
            let s = milnor_sum(&moved).ok();
            let p = polar_degree_milnor(&moved).ok();
            (s != Some(sum) || p != Some(pd) || !is_ploski(&moved)).then(|| format!("frame [{g}]: sum {s:?}, pd {p:?}"))
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("20 frames keep sum {sum}, pd {pd} and the Ploski structure"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cases = fuzz_cases();
    println!("fuzz corpus analysed in {:.1?}", start.elapsed());
    let criteria: Vec<Criterion> = vec![
        (
            "polar degree of Ploski curves",
            Box::new(polar_degrees_of_ploski_curves),
        ),
        (
            "Milnor numbers of Ploski curves",
            Box::new(milnor_numbers_of_ploski_curves),
        ),
        ("GIT verdicts of the families", Box::new(git_verdicts_of_families)),
        (
            "polar degree of star families",
            Box::new(polar_degrees_of_star_families),
        ),
        ("Fulton against local algebra", Box::new(milnor_numbers_two_ways)),
        ("Bezout on random pairs", Box::new(bezout_on_random_pairs)),
        (
            "bound suite on the fuzz corpus",
            Box::new(|| cases.as_ref().map_err(Clone::clone).and_then(|c| bound_suite(c))),
        ),
        (
            "bounds conditioned on stability",
            Box::new(|| cases.as_ref().map_err(Clone::clone).and_then(|c| conditioned_bounds(c))),
        ),
        ("frame invariance", Box::new(frame_invariance)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{:.1?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
