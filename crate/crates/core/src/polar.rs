//! Polar degree of a plane curve and the inequalities it satisfies.

use rayon::prelude::*;

use crate::curve::Curve;
use crate::exact::{Error, MultiPoly, Result};
use crate::git::{instability_search_with, StabilityVerdict};
use crate::ploski::is_ploski;
use crate::singular::{count_distinct_intersections, singular_points, sum_of, SingularPoint};

/// Classical invariants of an irreducible component, supplied by the user.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ComponentAnnotation {
    pub genus: Option<u64>,
    /// `Σ (r_p - 1)` over the singular points, `r_p` the number of branches.
    pub branch_excess: Option<u64>,
}

fn from_sum(d: u32, sum: u64) -> Result<u64> {
    let top = (d as u64 - 1).pow(2);
    top.checked_sub(sum).ok_or(Error::NonIsolated)
}

/// `(d - 1)^2 - Σ μ_p`.
pub fn polar_degree_milnor(c: &Curve) -> Result<u64> {
    from_sum(c.degree(), sum_of(&singular_points(c)?))
}

/// Folds the union formula over the factor list:
/// `pd(C D) = pd(C) + pd(D) + #(C ∩ D) - 1`.
pub fn polar_degree_components(c: &Curve) -> Result<u64> {
    let leaves: Vec<Curve> = (0..c.num_factors()).map(|i| c.sub_curve([i])).collect::<Result<_>>()?;
    let pds: Vec<u64> = leaves.par_iter().map(polar_degree_milnor).collect::<Result<_>>()?;
    let mut acc = pds[0];
    for i in 1..leaves.len() {
        let head = c.sub_curve(0..i)?;
        let sharp = count_distinct_intersections(&head, &leaves[i])?;
        acc = (acc + pds[i] + sharp)
            .checked_sub(1)
            .expect("a curve pair meets in at least one point");
    }
    Ok(acc)
}

/// `d - 1 + 2 p_g + Σ (r_p - 1)` for an irreducible factor.
pub fn polar_degree_annotation(factor: &MultiPoly, ann: &ComponentAnnotation) -> Result<u64> {
    let d = factor
        .homogeneous_degree()
        .ok_or_else(|| Error::Inhomogeneous(factor.to_string()))?;
    if d == 0 {
        return Err(Error::DegenerateFactor);
    }
    let g = ann.genus.ok_or(Error::MissingAnnotation("genus"))?;
    let e = ann.branch_excess.ok_or(Error::MissingAnnotation("branch_excess"))?;
    Ok(d as u64 - 1 + 2 * g + e)
}

/// One inequality of the report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub statement: String,
    /// `None` when the hypotheses are not met or not established.
    pub holds: Option<bool>,
    pub note: Option<String>,
}

impl BoundCheck {
    fn evaluated(name: &'static str, statement: String, holds: bool) -> Self {
        BoundCheck {
            name,
            statement,
            holds: Some(holds),
            note: None,
        }
    }

    fn skipped(name: &'static str, statement: String, note: impl Into<String>) -> Self {
        BoundCheck {
            name,
            statement,
            holds: None,
            note: Some(note.into()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub degree: u32,
    pub milnor_sum: Option<u64>,
    pub polar_degree: Option<u64>,
    pub concurrent_lines: bool,
    pub ploski_structure: bool,
    /// Whether `pd = ⌊d/2⌋`, reported whenever the bounds apply.
    pub equality_attained: Option<bool>,
    pub verdict: Option<StabilityVerdict>,
    pub checks: Vec<BoundCheck>,
    pub notes: Vec<String>,
}

impl BoundReport {
    /// No evaluated check failed.
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.holds != Some(false))
    }

    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Evaluates every inequality whose hypotheses are met by `c`.
pub fn bound_report(c: &Curve) -> BoundReport {
    match singular_points(c) {
        Ok(sing) => bound_report_with(c, &sing),
        Err(e) => {
            let mut r = empty_report(c);
            r.notes.push(format!("singular analysis failed: {e}"));
            r
        }
    }
}

fn empty_report(c: &Curve) -> BoundReport {
    BoundReport {
        degree: c.degree(),
        milnor_sum: None,
        polar_degree: None,
        concurrent_lines: c.is_concurrent_lines(),
        ploski_structure: is_ploski(c),
        equality_attained: None,
        verdict: None,
        checks: Vec::new(),
        notes: Vec::new(),
    }
}

/// As [`bound_report`], reusing already computed singular points.
pub fn bound_report_with(c: &Curve, sing: &[SingularPoint]) -> BoundReport {
    let d = c.degree();
    let d64 = d as u64;
    let half = d64 / 2;
    let two_thirds = (2 * d64).div_ceil(3);
    let top = (d64.max(1) - 1).pow(2);
    let mut report = empty_report(c);
    let (concurrent, ploski) = (report.concurrent_lines, report.ploski_structure);
    let sum = sum_of(sing);
    let pd = from_sum(d, sum).ok();
    report.milnor_sum = Some(sum);
    report.polar_degree = pd;
    let verdict = instability_search_with(c, sing);
    let stable = verdict.is_conclusively_stable();
    report.verdict = Some(verdict);
    let Some(pd) = pd else {
        report.notes.push("Milnor sum exceeds (d-1)^2".into());
        return report;
    };
    if concurrent {
        report.notes.push("concurrent lines: bounds do not apply".into());
    } else {
        report.equality_attained = Some(pd == half);
    }
    let blocked = |small: bool| -> Option<&'static str> {
        if concurrent {
            Some("concurrent lines")
        } else if small {
            Some("degree below 5")
        } else {
            None
        }
    };
    let degrees: Vec<u32> = c.components().filter_map(|f| f.homogeneous_degree()).collect();
    let has_line_or_conic = degrees.iter().any(|&k| k <= 2);
    let all_at_least_cubic = degrees.iter().all(|&k| k >= 3);

    let s = format!("pd >= floor(d/2) = {half}");
    report.checks.push(match blocked(false) {
        Some(why) => BoundCheck::skipped("floor_half", s, why),
        None => BoundCheck::evaluated("floor_half", s, pd >= half),
    });

    let s = format!("pd = {half} exactly when the curve is Ploski");
    report.checks.push(match blocked(d < 5) {
        Some(why) => BoundCheck::skipped("ploski_equality", s, why),
        None => BoundCheck::evaluated("ploski_equality", s, (pd == half) == ploski),
    });

    let s = format!("pd >= ceil(2d/3) = {two_thirds}");
    report.checks.push(match blocked(d < 5) {
        Some(why) => BoundCheck::skipped("two_thirds", s, why),
        None if !all_at_least_cubic => BoundCheck::skipped("two_thirds", s, "a component has degree below 3"),
        None => BoundCheck::evaluated("two_thirds", s, pd >= two_thirds),
    });

    let limit = top.saturating_sub(half + 1);
    let s = format!("sum of Milnor numbers <= (d-1)^2 - floor(d/2) - 1 = {limit}");
    report.checks.push(match blocked(d < 5) {
        Some(why) => BoundCheck::skipped("stable_strict", s, why),
        None if !stable => BoundCheck::skipped("stable_strict", s, "stability not established"),
        None => BoundCheck::evaluated("stable_strict", s, sum <= limit),
    });

    let limit = top.saturating_sub(d64.saturating_sub(2));
    let s = format!("sum of Milnor numbers <= (d-1)^2 - (d-2) = {limit}");
    report.checks.push(match blocked(d < 5) {
        Some(why) => BoundCheck::skipped("line_conic_stable", s, why),
        None if !has_line_or_conic => BoundCheck::skipped("line_conic_stable", s, "no line or conic component"),
        None if !stable => BoundCheck::skipped("line_conic_stable", s, "stability not established"),
        None => BoundCheck::evaluated("line_conic_stable", s, sum <= limit),
    });

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ploski::{gen_even_ploski, gen_odd_ploski, gen_star};

    fn p(t: &[(i64, [u32; 3])]) -> MultiPoly {
        MultiPoly::from_int_terms(3, t)
    }

    #[test]
    fn routes_on_small_cases() {
        let quartic = Curve::from_components(vec![p(&[(1, [4, 0, 0]), (1, [0, 4, 0]), (1, [0, 0, 4])])]).unwrap();
        assert_eq!(polar_degree_milnor(&quartic).unwrap(), 9);
        let even = gen_even_ploski(2, None).unwrap();
        assert_eq!(polar_degree_milnor(&even).unwrap(), 2);
        assert_eq!(polar_degree_components(&even).unwrap(), 2);
        let odd = gen_odd_ploski(2).unwrap();
        assert_eq!(polar_degree_components(&odd).unwrap(), 2);
        let lines = Curve::from_components(vec![
            p(&[(1, [1, 0, 0])]),
            p(&[(1, [0, 1, 0])]),
            p(&[(1, [1, 0, 0]), (1, [0, 1, 0])]),
        ])
        .unwrap();
        assert_eq!(polar_degree_components(&lines).unwrap(), 0);
        assert_eq!(polar_degree_milnor(&lines).unwrap(), 0);
    }

    #[test]
    fn annotation_route() {
        let nodal = p(&[(1, [0, 2, 1]), (-1, [3, 0, 0]), (-1, [2, 0, 1])]);
        let ann = ComponentAnnotation {
            genus: Some(0),
            branch_excess: Some(1),
        };
        assert_eq!(polar_degree_annotation(&nodal, &ann).unwrap(), 3);
        let c = Curve::from_components(vec![nodal.clone()]).unwrap();
        assert_eq!(polar_degree_milnor(&c).unwrap(), 3);
        let missing = ComponentAnnotation {
            genus: Some(0),
            branch_excess: None,
        };
        assert_eq!(
            polar_degree_annotation(&nodal, &missing),
            Err(Error::MissingAnnotation("branch_excess"))
        );
    }

    #[test]
    fn reports() {
        let r = bound_report(&gen_even_ploski(3, None).unwrap());
        assert_eq!(r.polar_degree, Some(3));
        assert_eq!(r.equality_attained, Some(true));
        assert!(r.ploski_structure && r.consistent());

        let r = bound_report(&gen_star(3).unwrap());
        assert_eq!(r.polar_degree, Some(5));
        assert_eq!(r.equality_attained, Some(false));
        assert!(r.consistent());

        let lines = Curve::from_components(vec![
            p(&[(1, [1, 0, 0])]),
            p(&[(1, [0, 1, 0])]),
            p(&[(1, [1, 0, 0]), (1, [0, 1, 0])]),
        ])
        .unwrap();
        let r = bound_report(&lines);
        assert!(r.checks.iter().all(|c| c.holds.is_none()));
    }
}
