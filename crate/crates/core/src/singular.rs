//! Global analysis: singular points, Milnor sums and intersection counts.
//!
//! Points are found in a sheared frame in which every component is monic in
//! `y` and the relevant points are affine with pairwise distinct
//! x-coordinates. Candidate x-coordinates come from resultants, one source
//! per component (its singular locus) and one per pair of components (their
//! intersection). Each factor of a gcd-free basis of the candidates is then
//! solved for `y` by dynamic evaluation over `Q[t]/(m)`. Local invariants are
//! computed back in the original coordinates.

use std::cell::OnceCell;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::curve::{is_irreducible_conic, Curve, ProjFrame};
use crate::exact::{
    evaluate_branches, homogeneous_gcd, rat, resultant_wrt, subresultant_chain_y, ChainEntry, Error, Field, Interrupt,
    Modulus, MultiPoly, QPoly, Rational, Result, Split, UniPoly,
};
use crate::local::{intersection_at, milnor_of_form, AlgPoint, Multiplicity};

/// A singular point (possibly standing for several conjugate points) and
/// its Milnor number, shared by all conjugates.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularPoint {
    pub point: AlgPoint,
    pub mu: u64,
}

/// Seed and retry budget for the genericity shears.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShearConfig {
    pub seed: u64,
    pub budget: usize,
}

impl Default for ShearConfig {
    fn default() -> Self {
        ShearConfig {
            seed: 0x5EED_0FC0DE,
            budget: 48,
        }
    }
}

/// Frames tried in order: identity, `x -> x + y`, then seeded random integer
/// matrices with entries in `[-B, B]`, `B` doubling every eight attempts.
fn shear_schedule(cfg: &ShearConfig) -> impl Iterator<Item = ProjFrame> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let fixed = [
        ProjFrame::identity(),
        ProjFrame::from_ints([[1, 1, 0], [0, 1, 0], [0, 0, 1]]).unwrap(),
    ];
    let mut attempt = 0usize;
    let random = std::iter::from_fn(move || loop {
        let bound = 1i64 << (attempt / 8).min(20);
        attempt += 1;
        let m: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-bound..=bound)));
        if let Ok(f) = ProjFrame::from_ints(m) {
            return Some(f);
        }
    });
    fixed.into_iter().chain(random).take(cfg.budget)
}

enum Retry {
    NonGeneric,
    Fatal(Error),
}

impl From<Error> for Retry {
    fn from(e: Error) -> Self {
        Retry::Fatal(e)
    }
}

fn run_sheared<T>(
    cfg: &ShearConfig,
    mut attempt: impl FnMut(&ProjFrame) -> std::result::Result<T, Retry>,
) -> Result<T> {
    let mut tried = 0;
    for frame in shear_schedule(cfg) {
        tried += 1;
        match attempt(&frame) {
            Ok(v) => return Ok(v),
            Err(Retry::NonGeneric) => continue,
            Err(Retry::Fatal(e)) => return Err(e),
        }
    }
    Err(Error::ShearBudgetExhausted(tried))
}

/// `h(0, 1, 0) != 0`: the form is monic in `y` up to a constant and misses
/// the vertical point at infinity.
fn monic_in_y(h: &MultiPoly) -> bool {
    let d = h.homogeneous_degree().unwrap_or(0);
    h.coeff(&[0, d, 0]).is_some()
}

/// `h(1, s, 0)` as a polynomial in `s`.
fn at_infinity(h: &MultiPoly) -> QPoly {
    let one = Rational::from_integer(1.into());
    let zero = Rational::from_integer(0.into());
    h.specialize(2, &zero)
        .specialize(0, &one)
        .to_univariate(0)
        .expect("one variable left")
}

fn is_constant(p: &QPoly) -> bool {
    p.degree().unwrap_or(0) == 0 && !p.is_zero()
}

/// `h(x, y, 1)`.
fn affine(h: &MultiPoly) -> MultiPoly {
    h.specialize(2, &Rational::from_integer(1.into()))
}

fn univariate_x(r: &MultiPoly) -> QPoly {
    r.to_univariate(0).expect("resultant in y depends on x only")
}

/// One family of candidate points: the common zeros of `polys`, whose
/// x-coordinates are roots of `candidate`.
struct Source {
    polys: Vec<MultiPoly>,
    candidate: QPoly,
    /// Subresultant chain of the first and last of `polys`, filled in
    /// before working over extensions.
    chain: OnceCell<Vec<ChainEntry>>,
}

impl Source {
    fn new(polys: Vec<MultiPoly>, candidate: QPoly) -> Self {
        Source {
            polys,
            candidate,
            chain: OnceCell::new(),
        }
    }

    fn prepare_chain(&self) -> Result<()> {
        if self.chain.get().is_none() {
            let chain = subresultant_chain_y(&self.polys[0], self.polys.last().unwrap())?;
            let _ = self.chain.set(chain);
        }
        Ok(())
    }
}

fn self_source(h: &MultiPoly) -> std::result::Result<Option<Source>, Retry> {
    let d = h.homogeneous_degree().unwrap_or(0);
    if d <= 1 || (d == 2 && is_irreducible_conic(h)) {
        return Ok(None);
    }
    let a = affine(h);
    let (ax, ay) = (a.partial(0), a.partial(1));
    let disc = univariate_x(&resultant_wrt(&a, &ay, 1)?);
    let mut cand = disc;
    if !ax.is_zero() {
        let r = univariate_x(&resultant_wrt(&a, &ax, 1)?);
        if !r.is_zero() {
            cand = cand.gcd_q(&r);
        }
    }
    if cand.is_zero() {
        return Err(Retry::Fatal(Error::NotReduced));
    }
    Ok(Some(Source::new(vec![a, ax, ay], cand.squarefree_q())))
}

fn pair_source(hi: &MultiPoly, hj: &MultiPoly) -> std::result::Result<Source, Retry> {
    let (a, b) = (affine(hi), affine(hj));
    let r = univariate_x(&resultant_wrt(&a, &b, 1)?);
    if r.is_zero() {
        return Err(Retry::Fatal(Error::CommonComponent));
    }
    Ok(Source::new(vec![a, b], r.squarefree_q()))
}

/// Pairwise coprime squarefree polynomials whose products recover every
/// input's squarefree part.
fn gcd_free_basis(inputs: impl IntoIterator<Item = QPoly>) -> Vec<QPoly> {
    let mut basis: Vec<QPoly> = Vec::new();
    for p in inputs {
        let mut rest = p.squarefree_q();
        if rest.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(basis.len() + 2);
        for b in basis {
            let g = b.gcd_q(&rest);
            if g.degree() == Some(0) {
                next.push(b);
                continue;
            }
            let cofactor = b.exact_div_q(&g);
            if cofactor.degree().unwrap_or(0) > 0 {
                next.push(cofactor.monic_q());
            }
            rest = rest.exact_div_q(&g);
            next.push(g);
        }
        if rest.degree().unwrap_or(0) > 0 {
            next.push(rest.monic_q());
        }
        basis = next;
    }
    basis
}

/// Irreducible-enough moduli: rational roots split off, the rest kept whole.
fn moduli_of(basis: &[QPoly]) -> Vec<Modulus> {
    let mut out = Vec::new();
    for b in basis {
        let (roots, rest) = b.split_rational_roots();
        out.extend(roots.iter().map(Modulus::rational));
        if rest.degree().unwrap_or(0) > 0 {
            out.push(Modulus::new(rest).expect("basis elements are squarefree"));
        }
    }
    out
}

/// `p(x0, y)` as a polynomial in `y`.
fn specialize_x<C: Field>(p: &MultiPoly, x0: &C) -> UniPoly<C> {
    let dy = p.degree_in(1).unwrap_or(0) as usize;
    let dx = p.degree_in(0).unwrap_or(0) as usize;
    let mut pows = vec![x0.one_like()];
    for i in 1..=dx {
        pows.push(pows[i - 1].mul(x0));
    }
    let mut v = vec![x0.zero_like(); dy + 1];
    for (m, c) in p.terms() {
        let t = x0.lift(c).mul(&pows[m[0] as usize]);
        v[m[1] as usize] = v[m[1] as usize].add(&t);
    }
    UniPoly::new(v)
}

/// The gcd of the first and last of `polys` at `x0` from the subresultant
/// chain, when its member is not degenerate there.
fn chain_gcd<C: Field>(chain: &[ChainEntry], x0: &C) -> std::result::Result<Option<UniPoly<C>>, Split> {
    for e in chain.iter().rev() {
        if !eval_q(&e.psc, x0).zero_test()? {
            let g = specialize_x(&e.poly, x0);
            return Ok((g.degree() == Some(e.degree)).then_some(g));
        }
    }
    Ok(None)
}

/// The gcd of the specializations of all of `s.polys` at `x0`.
fn common_factor<C: Field>(s: &Source, x0: &C) -> std::result::Result<UniPoly<C>, Split> {
    let n = s.polys.len();
    let from_chain = match s.chain.get() {
        Some(chain) => chain_gcd(chain, x0)?,
        None => None,
    };
    let (mut g, rest) = match from_chain {
        Some(g) => (g, &s.polys[1..n - 1]),
        None => (specialize_x(&s.polys[0], x0), &s.polys[1..]),
    };
    for p in rest {
        if g.degree().unwrap_or(0) == 0 {
            break;
        }
        g = g.gcd(&specialize_x(p, x0))?;
    }
    Ok(g)
}

/// The unique `y` with a point of some source over `x0`, if any.
fn solve_y<C: Field>(sources: &[&Source], x0: &C) -> std::result::Result<Option<C>, Interrupt<Retry>> {
    let mut found: Option<C> = None;
    for s in sources {
        let g = common_factor(s, x0)?;
        let g = g.squarefree()?;
        match g.degree() {
            None | Some(0) => continue,
            Some(1) => {
                let y = g.coeffs()[0].neg();
                match &found {
                    None => found = Some(y),
                    Some(prev) => {
                        if !prev.sub(&y).zero_test()? {
                            return Err(Interrupt::Fail(Retry::NonGeneric));
                        }
                    }
                }
            }
            Some(_) => return Err(Interrupt::Fail(Retry::NonGeneric)),
        }
    }
    Ok(found)
}

fn eval_q<C: Field>(p: &QPoly, x0: &C) -> C {
    p.coeffs()
        .iter()
        .rev()
        .fold(x0.zero_like(), |acc, c| acc.mul(x0).add(&x0.lift(c)))
}

fn order_at<C: Field>(p: &QPoly, x0: &C) -> std::result::Result<u64, Split> {
    let mut q = p.clone();
    let mut k = 0;
    while !q.is_zero() && eval_q(&q, x0).zero_test()? {
        q = q.derivative();
        k += 1;
    }
    Ok(k)
}

/// Milnor number of the only singular point over `x0` of the affine curve
/// `h`, monic in `y`. Teissier's lemma `I(h, h_y) = μ + I(h, x - x0) - 1`
/// summed over the fiber gives `ord_{x0} Res_y(h, h_y)` on the left, and the
/// fiber excess `Σ (I(h, x - x0) - 1)` is the degree of
/// `gcd(h(x0, y), h_y(x0, y))`, read off the principal subresultants `psc`
/// (the chain of `h` and `h_y`, ending with the discriminant).
fn fiber_milnor<C: Field>(chain: &[ChainEntry], x0: &C) -> std::result::Result<u64, Split> {
    let disc = &chain.last().expect("nonempty subresultant chain").psc;
    let ord = order_at(disc, x0)?;
    let mut excess = 0;
    for e in chain.iter().rev() {
        if !eval_q(&e.psc, x0).zero_test()? {
            excess = e.degree as u64;
            break;
        }
    }
    Ok(ord - excess)
}

fn to_original<C: Field>(frame: &ProjFrame, x: &C, y: &C) -> Vec<C> {
    frame
        .matrix()
        .iter()
        .map(|row| {
            x.lift(&row[0])
                .mul(x)
                .add(&x.lift(&row[1]).mul(y))
                .add(&x.lift(&row[2]))
        })
        .collect()
}

/// Solves all sources in the sheared frame and maps the points back.
/// With the sheared product `h` given, points over a non-rational modulus
/// carry their Milnor number, computed from the discriminant of `h`.
fn solve_sources(
    sources: &[Source],
    frame: &ProjFrame,
    h: Option<&MultiPoly>,
) -> std::result::Result<Vec<(AlgPoint, Option<u64>)>, Retry> {
    let basis = gcd_free_basis(sources.iter().map(|s| s.candidate.clone()));
    let mut points = Vec::new();
    let mut psc: Option<Vec<ChainEntry>> = None;
    for m in moduli_of(&basis) {
        let relevant: Vec<&Source> = sources.iter().filter(|s| m.poly().divides(&s.candidate)).collect();
        if let Some(r) = m.root() {
            if let Some(y) = solve_y(&relevant, &r).map_err(flatten)? {
                points.push((AlgPoint::rational(&to_original(frame, &r, &y)), None));
            }
            continue;
        }
        if let (Some(h), None) = (h, &psc) {
            let chain = subresultant_chain_y(h, &h.partial(1))?;
            if chain.last().is_none_or(|e| e.degree != 0) {
                return Err(Retry::Fatal(Error::NotReduced));
            }
            psc = Some(chain);
        }
        for s in &relevant {
            s.prepare_chain()?;
        }
        let branches = evaluate_branches(&m, |mm| {
            let x = mm.generator();
            let Some(y) = solve_y(&relevant, &x)? else {
                return Ok(None);
            };
            let mu = match &psc {
                Some(chain) => Some(fiber_milnor(chain, &x)?),
                None => None,
            };
            Ok(Some((to_original(frame, &x, &y), mu)))
        })?;
        for (mm, found) in branches {
            if let Some((coords, mu)) = found {
                points.push((AlgPoint::from_elems(mm, coords), mu));
            }
        }
    }
    Ok(points)
}

fn flatten(i: Interrupt<Retry>) -> Retry {
    match i {
        Interrupt::Fail(r) => r,
        Interrupt::Split(_) => unreachable!("rational arithmetic never splits"),
    }
}

fn components(c: &Curve) -> Vec<MultiPoly> {
    c.components().cloned().collect()
}

/// Checks the frame is generic for the singular locus: every component
/// monic in `y`, and no singular point of the product on `z = 0`.
fn singular_frame_ok(sheared: &[MultiPoly]) -> bool {
    if !sheared.iter().all(monic_in_y) {
        return false;
    }
    let inf: Vec<QPoly> = sheared.iter().map(at_infinity).collect();
    for (h, hi) in sheared.iter().zip(&inf) {
        let mut g = hi.clone();
        for v in 0..3 {
            g = g.gcd_q(&at_infinity(&h.partial(v)));
        }
        if !is_constant(&g) {
            return false;
        }
    }
    for i in 0..inf.len() {
        for j in i + 1..inf.len() {
            if !is_constant(&inf[i].gcd_q(&inf[j])) {
                return false;
            }
        }
    }
    true
}

/// Singular points of the affine part of a reduced curve in a given frame,
/// in original coordinates, without multiplicities.
fn singular_locus(comps: &[MultiPoly], frame: &ProjFrame) -> std::result::Result<Vec<(AlgPoint, Option<u64>)>, Retry> {
    let subs = frame.substitutions();
    let sheared: Vec<MultiPoly> = comps.iter().map(|f| f.compose(&subs)).collect();
    if !singular_frame_ok(&sheared) {
        return Err(Retry::NonGeneric);
    }
    let mut sources = Vec::new();
    for h in &sheared {
        if let Some(s) = self_source(h)? {
            sources.push(s);
        }
    }
    for i in 0..sheared.len() {
        for j in i + 1..sheared.len() {
            sources.push(pair_source(&sheared[i], &sheared[j])?);
        }
    }
    let product = sheared.iter().fold(MultiPoly::from_int(3, 1), |acc, f| acc.mul_ref(f));
    solve_sources(&sources, frame, Some(&affine(&product)))
}

/// All singular points of a reduced curve with their Milnor numbers.
pub fn singular_points(c: &Curve) -> Result<Vec<SingularPoint>> {
    singular_points_with(c, &ShearConfig::default())
}

pub fn singular_points_with(c: &Curve, cfg: &ShearConfig) -> Result<Vec<SingularPoint>> {
    if !c.is_reduced() {
        return Err(Error::NotReduced);
    }
    let comps = components(c);
    let points = run_sheared(cfg, |frame| singular_locus(&comps, frame))?;
    let f = c.product();
    let per_point: Vec<Result<Vec<SingularPoint>>> = points
        .par_iter()
        .map(|(p, known)| {
            if let Some(mu) = known {
                debug_assert!(*mu > 0, "located point is not singular: {p}");
                return Ok(vec![SingularPoint {
                    point: p.clone(),
                    mu: *mu,
                }]);
            }
            let mut out = Vec::new();
            for (m, mu) in milnor_of_form(&f, p)? {
                match mu {
                    Multiplicity::Infinite => return Err(Error::NonIsolated),
                    Multiplicity::Finite(0) => {
                        debug_assert!(false, "located point is not singular: {p}");
                    }
                    Multiplicity::Finite(n) => out.push(SingularPoint {
                        point: p.restrict(&m),
                        mu: n,
                    }),
                }
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for r in per_point {
        all.extend(r?);
    }
    Ok(all)
}

/// Sum of Milnor numbers over all singular points, conjugates included.
pub fn milnor_sum(c: &Curve) -> Result<u64> {
    Ok(sum_of(&singular_points(c)?))
}

pub fn sum_of(points: &[SingularPoint]) -> u64 {
    points.iter().map(|s| s.point.degree() as u64 * s.mu).sum()
}

fn check_coprime(c: &Curve, d: &Curve) -> Result<()> {
    for f in c.components() {
        for g in d.components() {
            if !homogeneous_gcd(f, g)?.is_constant() {
                return Err(Error::CommonComponent);
            }
        }
    }
    Ok(())
}

fn intersection_sources(cs: &[MultiPoly], ds: &[MultiPoly]) -> std::result::Result<Vec<Source>, Retry> {
    let mut sources = Vec::new();
    for a in cs {
        for b in ds {
            sources.push(pair_source(a, b)?);
        }
    }
    Ok(sources)
}

fn product_at_infinity(hs: &[MultiPoly]) -> QPoly {
    hs.iter().fold(QPoly::one(), |acc, h| acc.mul(&at_infinity(h)))
}

/// Number of distinct intersection points of two curves without common
/// components, over the algebraic closure.
pub fn count_distinct_intersections(c: &Curve, d: &Curve) -> Result<u64> {
    count_distinct_intersections_with(c, d, &ShearConfig::default())
}

pub fn count_distinct_intersections_with(c: &Curve, d: &Curve, cfg: &ShearConfig) -> Result<u64> {
    check_coprime(c, d)?;
    let (cs, ds) = (components(c), components(d));
    run_sheared(cfg, |frame| {
        let subs = frame.substitutions();
        let hc: Vec<MultiPoly> = cs.iter().map(|f| f.compose(&subs)).collect();
        let hd: Vec<MultiPoly> = ds.iter().map(|f| f.compose(&subs)).collect();
        if !hc.iter().chain(&hd).all(monic_in_y) {
            return Err(Retry::NonGeneric);
        }
        let sources = intersection_sources(&hc, &hd)?;
        let affine: u64 = solve_sources(&sources, frame, None)?
            .iter()
            .map(|(p, _)| p.degree() as u64)
            .sum();
        let at_inf = product_at_infinity(&hc)
            .gcd_q(&product_at_infinity(&hd))
            .squarefree_q()
            .degree()
            .unwrap_or(0) as u64;
        Ok(affine + at_inf)
    })
}

/// Outcome of [`bezout_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct BezoutReport {
    pub holds: bool,
    pub expected: u64,
    pub total: u64,
    /// Intersection points with their local multiplicities.
    pub points: Vec<(AlgPoint, u64)>,
    pub diagnostic: Option<String>,
}

/// Sums local intersection multiplicities over all intersection points and
/// compares with the product of the degrees.
pub fn bezout_check(c: &Curve, d: &Curve) -> BezoutReport {
    bezout_check_with(c, d, &ShearConfig::default())
}

pub fn bezout_check_with(c: &Curve, d: &Curve, cfg: &ShearConfig) -> BezoutReport {
    let expected = c.degree() as u64 * d.degree() as u64;
    let fail = |msg: String| BezoutReport {
        holds: false,
        expected,
        total: 0,
        points: Vec::new(),
        diagnostic: Some(msg),
    };
    if let Err(e) = check_coprime(c, d) {
        return fail(e.to_string());
    }
    let (cs, ds) = (components(c), components(d));
    let located = run_sheared(cfg, |frame| {
        let subs = frame.substitutions();
        let hc: Vec<MultiPoly> = cs.iter().map(|f| f.compose(&subs)).collect();
        let hd: Vec<MultiPoly> = ds.iter().map(|f| f.compose(&subs)).collect();
        if !hc.iter().chain(&hd).all(monic_in_y) {
            return Err(Retry::NonGeneric);
        }
        if !is_constant(&product_at_infinity(&hc).gcd_q(&product_at_infinity(&hd))) {
            return Err(Retry::NonGeneric);
        }
        solve_sources(&intersection_sources(&hc, &hd)?, frame, None)
    });
    let points = match located {
        Ok(p) => p,
        Err(e) => return fail(e.to_string()),
    };
    let (f, g) = (c.product(), d.product());
    let mut total = 0u64;
    let mut out = Vec::new();
    for (p, _) in &points {
        let branches = match intersection_at(&f, &g, p) {
            Ok(b) => b,
            Err(e) => return fail(format!("at {p}: {e}")),
        };
        for (m, mult) in branches {
            let Multiplicity::Finite(n) = mult else {
                return fail(format!("infinite multiplicity at {p}"));
            };
            total += n * m.degree() as u64;
            out.push((p.restrict(&m), n));
        }
    }
    let holds = total == expected;
    BezoutReport {
        holds,
        expected,
        total,
        points: out,
        diagnostic: (!holds).then(|| format!("sum of local multiplicities {total} != {expected}")),
    }
}

/// Scalar helper for tests and generators: the rational point `[a : b : c]`.
pub fn rational_point(a: i64, b: i64, c: i64) -> AlgPoint {
    AlgPoint::rational(&[rat(a), rat(b), rat(c)])
}

/// True when two projective points over Q coincide.
pub fn same_rational_point(p: &AlgPoint, q: &AlgPoint) -> bool {
    match (p.normalized_rational(), q.normalized_rational()) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: &[(i64, [u32; 3])]) -> MultiPoly {
        MultiPoly::from_int_terms(3, t)
    }

    fn conic(c: i64) -> MultiPoly {
        p(&[(1, [2, 0, 0]), (-1, [0, 1, 1]), (c, [0, 0, 2])])
    }

    fn star(i: i64) -> MultiPoly {
        p(&[(1, [2, 0, 0]), (-i, [0, 1, 1])])
    }

    fn curve(v: Vec<MultiPoly>) -> Curve {
        Curve::from_components(v).unwrap()
    }

    #[test]
    fn smooth_conic_has_no_singular_points() {
        assert!(singular_points(&curve(vec![conic(0)])).unwrap().is_empty());
    }

    #[test]
    fn tangent_conics() {
        let s = singular_points(&curve(vec![conic(0), conic(1)])).unwrap();
        assert_eq!(s.len(), 1);
        assert!(same_rational_point(&s[0].point, &rational_point(0, 1, 0)));
        assert_eq!(s[0].mu, 7);
    }

    #[test]
    fn star_pair_has_two_tacnodes() {
        let s = singular_points(&curve(vec![star(1), star(2)])).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|sp| sp.mu == 3));
        assert_eq!(sum_of(&s), 6);
    }

    #[test]
    fn even_ploski_sextic() {
        let c = curve(vec![conic(1), conic(2), conic(3)]);
        let s = singular_points(&c).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].mu, 22);
    }

    #[test]
    fn irrational_singular_points() {
        // nodal cubic y^2 z - x^2 (x + z) and the line x = y: the line meets
        // the cubic at the node and at one more point; add the conic
        // x^2 + y^2 - 2 z^2 meeting the line at x = y = ±1 (rational) and
        // the cubic at irrational points
        let cubic = p(&[(1, [0, 2, 1]), (-1, [3, 0, 0]), (-1, [2, 0, 1])]);
        let circle = p(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (-2, [0, 0, 2])]);
        let c = curve(vec![cubic.clone(), circle.clone()]);
        let s = singular_points(&c).unwrap();
        // node (mu 1) plus 6 transverse intersection points (mu 1 each)
        assert_eq!(sum_of(&s), 7);
        assert!(s.iter().all(|sp| sp.mu == 1));
        let total: usize = s.iter().map(|sp| sp.point.degree()).sum();
        assert_eq!(total, 7);
    }

    #[test]
    fn intersection_counts() {
        let x = p(&[(1, [1, 0, 0])]);
        let y = p(&[(1, [0, 1, 0])]);
        assert_eq!(
            count_distinct_intersections(&curve(vec![x]), &curve(vec![y])).unwrap(),
            1
        );
        assert_eq!(
            count_distinct_intersections(&curve(vec![conic(1)]), &curve(vec![conic(2)])).unwrap(),
            1
        );
        assert_eq!(
            count_distinct_intersections(&curve(vec![star(1)]), &curve(vec![star(2)])).unwrap(),
            2
        );
        assert_eq!(
            count_distinct_intersections(&curve(vec![conic(1)]), &curve(vec![conic(1)])),
            Err(Error::CommonComponent)
        );
    }

    #[test]
    fn bezout_examples() {
        let x = p(&[(1, [1, 0, 0])]);
        let y = p(&[(1, [0, 1, 0])]);
        assert!(bezout_check(&curve(vec![x.clone()]), &curve(vec![y])).holds);
        let r = bezout_check(&curve(vec![conic(1)]), &curve(vec![conic(2)]));
        assert!(r.holds);
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.points[0].1, 4);
        let line = p(&[(1, [1, 0, 0]), (-3, [0, 0, 1])]);
        let r = bezout_check(&curve(vec![conic(0)]), &curve(vec![line]));
        assert!(r.holds);
        assert_eq!(r.points.len(), 2);
    }
}
