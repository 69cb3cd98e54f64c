//! Torus weights of plane curves and Hilbert–Mumford certificates.
//!
//! A monomial `x^i y^j z^k` of a degree-`d` form has weight
//! `(2i + j - d, 2j + i - d)`. In a fixed frame the curve is unstable for the
//! diagonal torus when the origin lies outside the convex hull of its
//! weights, on the boundary when it is strictly semistable for that torus,
//! and in the interior when it is stable for it. Only instability and the
//! two rule-based stability tests are conclusive; other verdicts are tied to
//! the frame they were observed in.
//!
//! The rules are: a smooth curve of degree `d >= 3` is stable, and a curve of
//! degree `d >= 4` whose singular points are all double points is stable when
//! `1/2 + 1/(k + 1) > 3/d` for the largest Milnor number `k` among them. A
//! double point with Milnor number `k` is an `A_k` singularity, whose log
//! canonical threshold is `1/2 + 1/(k + 1)`, and a log canonical threshold
//! above `3/d` forces stability.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::curve::{linear_coeffs, Curve, ProjFrame};
use crate::exact::{Error, MultiPoly, Poly, QPoly, Rational, Result};
use crate::local::{localize, point_multiplicity, AlgPoint};
use crate::singular::{singular_points, SingularPoint};

/// Weight `(u, v)` of a monomial. Valid weights satisfy
/// `u + v + 2d ≡ 0 (mod 3)` and come from nonnegative exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightPoint {
    pub u: i64,
    pub v: i64,
}

impl WeightPoint {
    pub fn from_exponents(i: u32, j: u32, d: u32) -> WeightPoint {
        let (i, j, d) = (i as i64, j as i64, d as i64);
        WeightPoint {
            u: 2 * i + j - d,
            v: 2 * j + i - d,
        }
    }

    /// Checks that `(u, v)` is the weight of some monomial of degree `d`.
    pub fn new(u: i64, v: i64, d: u32) -> Result<WeightPoint> {
        let w = WeightPoint { u, v };
        w.exponents(d)
            .map(|_| w)
            .ok_or_else(|| Error::InvalidParameters(format!("({u}, {v}) is not a weight in degree {d}")))
    }

    /// The exponents `(i, j, k)` with this weight, if any.
    pub fn exponents(&self, d: u32) -> Option<(u32, u32, u32)> {
        let d = d as i64;
        if (self.u + self.v + 2 * d).rem_euclid(3) != 0 {
            return None;
        }
        let i = (2 * self.u - self.v + d) / 3;
        let j = (2 * self.v - self.u + d) / 3;
        let k = d - i - j;
        (i >= 0 && j >= 0 && k >= 0).then_some((i as u32, j as u32, k as u32))
    }

    pub fn dot(&self, f: (i64, i64)) -> i64 {
        f.0 * self.u + f.1 * self.v
    }
}

impl fmt::Display for WeightPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// Weights of the monomials of a form.
pub fn weights_of_form(f: &MultiPoly) -> BTreeSet<WeightPoint> {
    let d = f.homogeneous_degree().unwrap_or(0);
    f.terms()
        .map(|(m, _)| WeightPoint::from_exponents(m[0], m[1], d))
        .collect()
}

/// Weights of the expanded product of a curve.
pub fn weight_set(c: &Curve) -> BTreeSet<WeightPoint> {
    weights_of_form(&c.product())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OriginPosition {
    Outside,
    Boundary,
    Interior,
}

fn cross(o: WeightPoint, a: WeightPoint, b: WeightPoint) -> i64 {
    (a.u - o.u) * (b.v - o.v) - (a.v - o.v) * (b.u - o.u)
}

const ORIGIN: WeightPoint = WeightPoint { u: 0, v: 0 };

/// Vertices of the convex hull in counter-clockwise order, without
/// collinear points (Andrew's monotone chain).
pub fn convex_hull(points: &BTreeSet<WeightPoint>) -> Vec<WeightPoint> {
    let pts: Vec<WeightPoint> = points.iter().copied().collect();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<WeightPoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<WeightPoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn on_segment(a: WeightPoint, b: WeightPoint, p: WeightPoint) -> bool {
    cross(a, b, p) == 0 && p.u >= a.u.min(b.u) && p.u <= a.u.max(b.u) && p.v >= a.v.min(b.v) && p.v <= a.v.max(b.v)
}

/// Position of the origin relative to the closed convex hull.
pub fn hull_origin_position(points: &BTreeSet<WeightPoint>) -> OriginPosition {
    classify(&convex_hull(points)).0
}

fn reduce(f: (i64, i64)) -> (i64, i64) {
    let g = f.0.gcd(&f.1);
    if g == 0 {
        f
    } else {
        (f.0 / g, f.1 / g)
    }
}

/// Classifies the origin against a hull and produces the matching
/// certificate.
fn classify(hull: &[WeightPoint]) -> (OriginPosition, Certificate) {
    match hull {
        [] => unreachable!("empty weight set"),
        [p] => {
            if *p == ORIGIN {
                let cert = Certificate::Supporting {
                    normal: (1, 0),
                    a: *p,
                    b: *p,
                };
                (OriginPosition::Boundary, cert)
            } else {
                let cert = Certificate::Separating {
                    functional: reduce((p.u, p.v)),
                };
                (OriginPosition::Outside, cert)
            }
        }
        [a, b] => {
            let (a, b) = (*a, *b);
            let normal = reduce((-(b.v - a.v), b.u - a.u));
            if on_segment(a, b, ORIGIN) {
                (OriginPosition::Boundary, Certificate::Supporting { normal, a, b })
            } else if cross(a, b, ORIGIN) != 0 {
                let n = if a.dot(normal) > 0 {
                    normal
                } else {
                    (-normal.0, -normal.1)
                };
                (OriginPosition::Outside, Certificate::Separating { functional: n })
            } else {
                (
                    OriginPosition::Outside,
                    Certificate::Separating {
                        functional: reduce((a.u, a.v)),
                    },
                )
            }
        }
        _ => {
            let n = hull.len();
            let mut boundary = None;
            for i in 0..n {
                let (a, b) = (hull[i], hull[(i + 1) % n]);
                let inward = reduce((-(b.v - a.v), b.u - a.u));
                let c = cross(a, b, ORIGIN);
                if c < 0 {
                    return (OriginPosition::Outside, Certificate::Separating { functional: inward });
                }
                if c == 0 && boundary.is_none() {
                    boundary = Some(Certificate::Supporting { normal: inward, a, b });
                }
            }
            match boundary {
                Some(cert) => (OriginPosition::Boundary, cert),
                None => (
                    OriginPosition::Interior,
                    Certificate::Enclosing {
                        vertices: hull.to_vec(),
                    },
                ),
            }
        }
    }
}

/// Evidence attached to a verdict, checkable from the curve and the frame
/// alone.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// `α u + β v > 0` on every weight.
    Separating { functional: (i64, i64) },
    /// `n · w ≥ 0` on every weight, with `a`, `b` weights on `n · w = 0` and
    /// the origin on the segment `[a, b]`.
    Supporting {
        normal: (i64, i64),
        a: WeightPoint,
        b: WeightPoint,
    },
    /// Weights forming a counter-clockwise polygon with the origin strictly
    /// inside.
    Enclosing { vertices: Vec<WeightPoint> },
    /// The curve is smooth of degree at least 3.
    SmoothRule,
    /// Every singular point is a double point, with Milnor numbers at most
    /// `max_mu` and `d (max_mu + 3) > 6 (max_mu + 1)`.
    DoublePointRule { max_mu: u64 },
    /// No certificate (the analysis could not run).
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StabilityClass {
    Unstable,
    StrictlySemistableInFrame,
    StableInFrame,
    Undetermined,
}

impl fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilityClass::Unstable => "unstable",
            StabilityClass::StrictlySemistableInFrame => "strictlySemistableInFrame",
            StabilityClass::StableInFrame => "stableInFrame",
            StabilityClass::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityVerdict {
    pub class: StabilityClass,
    /// False only for conclusive verdicts: instability, or a stability rule.
    pub undetermined: bool,
    pub frame: ProjFrame,
    pub certificate: Certificate,
    pub notes: Vec<String>,
}

impl StabilityVerdict {
    pub fn is_conclusively_stable(&self) -> bool {
        self.class == StabilityClass::StableInFrame && !self.undetermined
    }

    pub fn is_unstable(&self) -> bool {
        self.class == StabilityClass::Unstable
    }
}

fn class_of(pos: OriginPosition) -> StabilityClass {
    match pos {
        OriginPosition::Outside => StabilityClass::Unstable,
        OriginPosition::Boundary => StabilityClass::StrictlySemistableInFrame,
        OriginPosition::Interior => StabilityClass::StableInFrame,
    }
}

/// Hilbert–Mumford classification for the diagonal torus of frame `g`.
pub fn hm_classify_in_frame(c: &Curve, g: &ProjFrame) -> StabilityVerdict {
    let weights = weight_set(&c.apply_frame(g));
    let (pos, certificate) = classify(&convex_hull(&weights));
    let class = class_of(pos);
    StabilityVerdict {
        class,
        undetermined: class != StabilityClass::Unstable,
        frame: g.clone(),
        certificate,
        notes: Vec::new(),
    }
}

/// Re-checks a verdict's certificate against the curve without repeating
/// any search.
pub fn validate_verdict(c: &Curve, verdict: &StabilityVerdict) -> bool {
    let weights = weight_set(&c.apply_frame(&verdict.frame));
    match (&verdict.class, &verdict.certificate) {
        (StabilityClass::Unstable, Certificate::Separating { functional }) => {
            weights.iter().all(|w| w.dot(*functional) > 0)
        }
        (StabilityClass::StrictlySemistableInFrame, Certificate::Supporting { normal, a, b }) => {
            *normal != (0, 0)
                && weights.iter().all(|w| w.dot(*normal) >= 0)
                && weights.contains(a)
                && weights.contains(b)
                && a.dot(*normal) == 0
                && b.dot(*normal) == 0
                && on_segment(*a, *b, ORIGIN)
        }
        (StabilityClass::StableInFrame, Certificate::Enclosing { vertices }) => {
            let n = vertices.len();
            n >= 3
                && vertices.iter().all(|v| weights.contains(v))
                && (0..n).all(|i| cross(vertices[i], vertices[(i + 1) % n], ORIGIN) > 0)
        }
        (StabilityClass::StableInFrame, Certificate::SmoothRule) => {
            c.degree() >= 3 && matches!(singular_points(c), Ok(s) if s.is_empty())
        }
        (StabilityClass::StableInFrame, Certificate::DoublePointRule { max_mu }) => {
            matches!(singular_points(c), Ok(s) if double_point_rule(c, &s) == Some(*max_mu))
        }
        _ => false,
    }
}

/// Cross product of two coordinate vectors.
fn cross3(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn is_zero_vec(v: &[Rational; 3]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn unit(i: usize) -> [Rational; 3] {
    std::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() })
}

/// Frame with columns `[q, p, r]`, `q ∈ L \ {p}`, `r ∉ L`: it moves `p` to
/// `[0, 1, 0]` and the line `ℓ · X = 0` through `p` to `z = 0`.
pub fn flag_frame(p: &[Rational; 3], line: &[Rational; 3]) -> Result<ProjFrame> {
    let dot = |a: &[Rational; 3], b: &[Rational; 3]| -> Rational {
        (0..3).fold(Rational::zero(), |acc, i| acc + &a[i] * &b[i])
    };
    if !dot(p, line).is_zero() || is_zero_vec(line) {
        return Err(Error::InvalidParameters("point is not on the line".into()));
    }
    let q = (0..3)
        .map(|i| cross3(line, &unit(i)))
        .find(|q| !is_zero_vec(q) && !is_zero_vec(&cross3(q, p)))
        .ok_or(Error::SingularFrame)?;
    let r = (0..3)
        .map(unit)
        .find(|e| !dot(e, line).is_zero())
        .ok_or(Error::SingularFrame)?;
    ProjFrame::from_columns([q, p.clone(), r])
}

/// Some line through `p`.
fn default_line(p: &[Rational; 3]) -> [Rational; 3] {
    (0..3)
        .map(|i| cross3(p, &unit(i)))
        .find(|l| !is_zero_vec(l))
        .expect("nonzero point")
}

/// Rational lines of the tangent cone of `f` at a rational point, as linear
/// forms, plus the number of non-rational tangent directions.
pub fn rational_tangent_lines(f: &MultiPoly, p: &[Rational; 3]) -> (Vec<[Rational; 3]>, usize) {
    let (k, loc) = localize(&[f], p.as_slice()).expect("rational arithmetic never splits");
    let h: &Poly<Rational> = &loc[0];
    let Some(m) = h.order() else {
        return (Vec::new(), 0);
    };
    let cone = h.homogeneous_part(m);
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    // cone(u, w) with u, w the local coordinates along `others`
    let mut lines = Vec::new();
    let mut found = 0usize;
    let at_w1: Vec<Rational> = (0..=m)
        .map(|i| cone.coeff(&[i, m - i, 0]).cloned().unwrap_or_else(Rational::zero))
        .collect();
    let b = QPoly::new(at_w1);
    let deg_u = b.degree().unwrap_or(0) as u32;
    // Local form α u + β w becomes α (X_i - a_i X_k) + β (X_j - a_j X_k).
    let to_line = |alpha: Rational, beta: Rational| -> [Rational; 3] {
        let (i, j) = (others[0], others[1]);
        let mut l: [Rational; 3] = std::array::from_fn(|_| Rational::zero());
        l[i] = alpha.clone();
        l[j] = beta.clone();
        l[k] = -(alpha * &p[i] + beta * &p[j]) / &p[k];
        l
    };
    if deg_u < m {
        lines.push(to_line(Rational::zero(), Rational::one()));
        found += 1;
    }
    if let Some(roots) = b.squarefree_q().rational_roots() {
        for r in roots {
            lines.push(to_line(Rational::one(), -r));
            found += 1;
        }
    }
    let distinct = {
        let mut n = if deg_u < m { 1 } else { 0 };
        n += b.squarefree_q().degree().unwrap_or(0);
        n
    };
    (lines, distinct.saturating_sub(found))
}

fn normalized_points(points: &[SingularPoint]) -> Vec<[Rational; 3]> {
    points.iter().filter_map(|s| s.point.normalized_rational()).collect()
}

/// Enumerates candidate frames from the rational singular data.
fn candidate_frames(c: &Curve, sing: &[SingularPoint]) -> (Vec<ProjFrame>, Vec<String>) {
    let f = c.product();
    let rational = normalized_points(sing);
    let mut frames = vec![ProjFrame::identity()];
    let mut notes = Vec::new();
    for (idx, p) in rational.iter().enumerate() {
        let (mut lines, skipped) = rational_tangent_lines(&f, p);
        if skipped > 0 {
            notes.push(format!(
                "{skipped} non-rational tangent direction(s) at [{}] not searched",
                p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" : ")
            ));
        }
        for (jdx, q) in rational.iter().enumerate() {
            if idx != jdx {
                lines.push(cross3(p, q));
            }
        }
        if lines.is_empty() {
            lines.push(default_line(p));
        }
        for l in lines {
            if let Ok(g) = flag_frame(p, &l) {
                if !frames.contains(&g) {
                    frames.push(g);
                }
            }
        }
    }
    let non_rational = sing.iter().filter(|s| !s.point.is_rational()).count();
    if non_rational > 0 {
        notes.push(format!(
            "{non_rational} non-rational singular point class(es) not searched"
        ));
    }
    (frames, notes)
}

/// Searches candidate frames for a destabilizing torus.
pub fn instability_search(c: &Curve) -> StabilityVerdict {
    let sing = match singular_points(c) {
        Ok(s) => s,
        Err(e) => {
            let mut v = hm_classify_in_frame(c, &ProjFrame::identity());
            if !v.is_unstable() {
                v.class = StabilityClass::Undetermined;
                v.certificate = Certificate::Empty;
            }
            v.notes.push(format!("singular analysis unavailable: {e}"));
            return v;
        }
    };
    instability_search_with(c, &sing)
}

/// As [`instability_search`], reusing already computed singular points.
pub fn instability_search_with(c: &Curve, sing: &[SingularPoint]) -> StabilityVerdict {
    if sing.is_empty() && c.degree() >= 3 {
        return StabilityVerdict {
            class: StabilityClass::StableInFrame,
            undetermined: false,
            frame: ProjFrame::identity(),
            certificate: Certificate::SmoothRule,
            notes: vec!["smooth plane curve of degree >= 3".into()],
        };
    }
    if let Some(max_mu) = double_point_rule(c, sing) {
        return StabilityVerdict {
            class: StabilityClass::StableInFrame,
            undetermined: false,
            frame: ProjFrame::identity(),
            certificate: Certificate::DoublePointRule { max_mu },
            notes: vec![format!("only double points, largest Milnor number {max_mu}")],
        };
    }
    let (frames, notes) = candidate_frames(c, sing);
    let mut weakest: Option<StabilityVerdict> = None;
    for g in &frames {
        let v = hm_classify_in_frame(c, g);
        if v.is_unstable() {
            return StabilityVerdict { notes, ..v };
        }
        let better = match &weakest {
            None => true,
            Some(w) => w.class == StabilityClass::StableInFrame && v.class == StabilityClass::StrictlySemistableInFrame,
        };
        if better {
            weakest = Some(v);
        }
    }
    let mut v = weakest.expect("identity frame is always a candidate");
    v.notes = notes;
    v
}

/// Largest Milnor number when every singular point is a double point and the
/// threshold inequality holds for degree `d >= 4`.
fn double_point_rule(c: &Curve, sing: &[SingularPoint]) -> Option<u64> {
    let d = u64::from(c.degree());
    if d < 4 || sing.is_empty() {
        return None;
    }
    for s in sing {
        let mults = point_multiplicity(c, &s.point).ok()?;
        if mults.is_empty() || mults.iter().any(|(_, m)| *m != 2) {
            return None;
        }
    }
    let k = sing.iter().map(|s| s.mu).max()?;
    (d * (k + 3) > 6 * (k + 1)).then_some(k)
}

/// A point of multiplicity above `2d/3`, which destabilizes the curve.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicityCertificate {
    pub point: AlgPoint,
    pub multiplicity: u32,
    /// Verdict in a frame moving the point to `[0, 1, 0]`, where `(1, -2)`
    /// separates every weight from the origin.
    pub verdict: StabilityVerdict,
}

/// Looks for a singular point of multiplicity greater than `2d/3`.
pub fn multiplicity_instability(c: &Curve) -> Result<Option<MultiplicityCertificate>> {
    let sing = singular_points(c)?;
    multiplicity_instability_with(c, &sing)
}

pub fn multiplicity_instability_with(c: &Curve, sing: &[SingularPoint]) -> Result<Option<MultiplicityCertificate>> {
    let d = c.degree();
    for s in sing {
        let Some(p) = s.point.normalized_rational() else {
            continue;
        };
        let m = point_multiplicity(c, &s.point)?.first().map(|(_, m)| *m).unwrap_or(0);
        if 3 * m <= 2 * d {
            continue;
        }
        let frame = flag_frame(&p, &default_line(&p))?;
        let verdict = StabilityVerdict {
            class: StabilityClass::Unstable,
            undetermined: false,
            frame,
            certificate: Certificate::Separating { functional: (1, -2) },
            notes: vec![format!("point of multiplicity {m} > 2d/3")],
        };
        return Ok(Some(MultiplicityCertificate {
            point: AlgPoint::rational(&p),
            multiplicity: m,
            verdict,
        }));
    }
    Ok(None)
}

/// Linear forms of the line components of a curve.
pub fn line_components(c: &Curve) -> Vec<[Rational; 3]> {
    c.components()
        .filter(|f| f.homogeneous_degree() == Some(1))
        .map(linear_coeffs)
        .collect()
}
