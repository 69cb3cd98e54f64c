//! Local invariants at a point: intersection multiplicity, colength of an
//! ideal at the origin, Milnor numbers and orders of vanishing.

use std::collections::BTreeMap;
use std::fmt;

use crate::curve::Curve;
use crate::exact::{
    evaluate_branches, rat, resultant_wrt, Error, ExtElem, Field, Interrupt, Modulus, MultiPoly, Poly, QPoly, Rational,
    Result, Split, UniPoly,
};

/// An intersection multiplicity or Milnor number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(n) => Some(n),
            Multiplicity::Infinite => None,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => f.write_str("infinite"),
        }
    }
}

/// Outcome of [`local_algebra_dim`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalDim {
    Dim(u64),
    Exceeded,
}

/// A point with coordinates in `Q[t]/(m)`: two affine or three projective
/// coordinates. Rational points use the modulus `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgPoint {
    modulus: Modulus,
    coords: Vec<ExtElem>,
}

impl AlgPoint {
    pub fn rational(coords: &[Rational]) -> AlgPoint {
        assert!(matches!(coords.len(), 2 | 3), "points have 2 or 3 coordinates");
        let m = Modulus::trivial();
        AlgPoint {
            coords: coords.iter().map(|c| m.constant(c)).collect(),
            modulus: m,
        }
    }

    pub fn from_ints(coords: &[i64]) -> AlgPoint {
        Self::rational(&coords.iter().map(|&c| rat(c)).collect::<Vec<_>>())
    }

    /// A point over `Q[t]/(modulus)`. Projective coordinates must not vanish
    /// simultaneously on any factor of the modulus.
    pub fn new(modulus: Modulus, coords: &[QPoly]) -> Result<AlgPoint> {
        if !matches!(coords.len(), 2 | 3) {
            return Err(Error::InvalidParameters("points have 2 or 3 coordinates".into()));
        }
        if coords.len() == 3 {
            let g = coords.iter().fold(modulus.poly().clone(), |g, c| g.gcd_q(c));
            if g.degree() != Some(0) {
                return Err(Error::InvalidParameters("all coordinates vanish".into()));
            }
        }
        Ok(AlgPoint {
            coords: coords.iter().map(|c| modulus.elem(c)).collect(),
            modulus,
        })
    }

    pub(crate) fn from_elems(modulus: Modulus, coords: Vec<ExtElem>) -> AlgPoint {
        AlgPoint { modulus, coords }
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn coords(&self) -> &[ExtElem] {
        &self.coords
    }

    pub fn is_projective(&self) -> bool {
        self.coords.len() == 3
    }

    /// Number of conjugate points represented.
    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn is_rational(&self) -> bool {
        self.modulus.is_rational()
    }

    pub fn rational_coords(&self) -> Option<Vec<Rational>> {
        self.coords.iter().map(ExtElem::as_rational).collect()
    }

    /// Rational projective coordinates scaled so the last nonzero one is 1.
    pub fn normalized_rational(&self) -> Option<[Rational; 3]> {
        let c = self.rational_coords()?;
        if c.len() != 3 {
            return None;
        }
        let k = c.iter().rev().find(|v| !Field::is_zero(*v))?.clone();
        Some(std::array::from_fn(|i| &c[i] / &k))
    }

    pub fn coords_on(&self, sub: &Modulus) -> Vec<ExtElem> {
        self.coords.iter().map(|c| c.project(sub)).collect()
    }

    pub fn restrict(&self, sub: &Modulus) -> AlgPoint {
        AlgPoint {
            coords: self.coords_on(sub),
            modulus: sub.clone(),
        }
    }
}

impl fmt::Display for AlgPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = match self.normalized_rational() {
            Some(c) => c.iter().map(|v| v.to_string()).collect(),
            None => self.coords.iter().map(|c| c.to_string()).collect(),
        };
        if self.is_projective() {
            write!(f, "[{}]", parts.join(" : "))?;
        } else {
            write!(f, "({})", parts.join(", "))?;
        }
        if !self.is_rational() {
            write!(f, " where {} = 0", self.modulus)?;
        }
        Ok(())
    }
}

/// Coefficient-wise embedding of a rational polynomial.
pub fn lift_poly<C: Field>(f: &MultiPoly, sample: &C) -> Poly<C> {
    f.map_coeffs(|c| sample.lift(c))
}

/// `f(x + a, y + b, ...)`: moves the point `shift` to the origin.
pub fn translate<C: Field>(f: &Poly<C>, shift: &[C]) -> Poly<C> {
    assert_eq!(shift.len(), f.nvars());
    if f.is_zero() {
        return f.clone();
    }
    let one = shift[0].one_like();
    let subs: Vec<Poly<C>> = (0..f.nvars())
        .map(|i| {
            let mut e = [0; 3];
            e[i] = 1;
            Poly::from_terms(f.nvars(), [(e, one.clone()), ([0; 3], shift[i].clone())])
        })
        .collect();
    f.compose(&subs)
}

/// Dehomogenizes forms in a chart where the point's coordinate is a unit and
/// translates the point to the origin. Returns the chart index.
pub fn localize<C: Field>(forms: &[&MultiPoly], coords: &[C]) -> std::result::Result<(usize, Vec<Poly<C>>), Split> {
    assert_eq!(coords.len(), 3);
    let mut chart = None;
    for k in (0..3).rev() {
        if !coords[k].zero_test()? {
            chart = Some(k);
            break;
        }
    }
    let k = chart.expect("projective point with all coordinates zero");
    let inv = coords[k].inverse()?;
    let shift: Vec<C> = (0..3).filter(|&i| i != k).map(|i| coords[i].mul(&inv)).collect();
    let one = Rational::from_integer(1.into());
    let out = forms
        .iter()
        .map(|f| {
            let affine = lift_poly(&f.specialize(k, &one), &coords[k]);
            translate(&affine, &shift)
        })
        .collect();
    Ok((k, out))
}

fn constant_is_unit<C: Field>(f: &Poly<C>) -> std::result::Result<bool, Split> {
    match f.constant_term() {
        None => Ok(false),
        Some(c) => Ok(!c.zero_test()?),
    }
}

/// `f(x, 0)` as a univariate polynomial whose leading coefficient is a unit.
fn restrict_y0<C: Field>(f: &Poly<C>, sample: &C) -> std::result::Result<UniPoly<C>, Split> {
    let deg = f.degree_in(0).unwrap_or(0) as usize;
    let mut v = vec![sample.zero_like(); deg + 1];
    let mut any = false;
    for (m, c) in f.terms() {
        if m[1] == 0 {
            v[m[0] as usize] = c.clone();
            any = true;
        }
    }
    if !any {
        return Ok(UniPoly::zero());
    }
    let mut u = UniPoly::new(v);
    u.normalize()?;
    Ok(u)
}

/// Index of the first unit coefficient.
fn order_of<C: Field>(u: &UniPoly<C>) -> std::result::Result<u64, Split> {
    for (i, c) in u.coeffs().iter().enumerate() {
        if !c.zero_test()? {
            return Ok(i as u64);
        }
    }
    unreachable!("normalized nonzero polynomial has a unit coefficient")
}

/// Drops the terms of total degree above `max`.
fn truncate<C: Field>(f: &Poly<C>, max: u64) -> Poly<C> {
    if f.total_degree().is_none_or(|d| d as u64 <= max) {
        return f.clone();
    }
    Poly::from_terms(
        f.nvars(),
        f.terms()
            .filter(|(m, _)| (m[0] + m[1]) as u64 <= max)
            .map(|(m, c)| (*m, c.clone())),
    )
}

/// Intersection multiplicity at the origin of two polynomials in two
/// variables, by Fulton's algorithm.
///
/// An isolated intersection has multiplicity at most `deg f * deg g`, and
/// then the ideal contains every monomial of that degree. Terms above the
/// remaining budget are dropped at each step; overrunning the budget means
/// the intersection is not isolated.
pub fn fulton_origin<C: Field>(f: &Poly<C>, g: &Poly<C>) -> std::result::Result<Multiplicity, Split> {
    assert_eq!(f.nvars(), 2, "Fulton's algorithm works in the plane");
    let bound = f.total_degree().unwrap_or(0) as u64 * g.total_degree().unwrap_or(0) as u64;
    let (mut f, mut g) = (f.clone(), g.clone());
    let mut count = 0u64;
    loop {
        if count > bound {
            return Ok(Multiplicity::Infinite);
        }
        f = truncate(&f, bound - count);
        g = truncate(&g, bound - count);
        if f.is_zero() || g.is_zero() {
            let other = if f.is_zero() { &g } else { &f };
            return Ok(if other.is_zero() || !constant_is_unit(other)? {
                Multiplicity::Infinite
            } else {
                Multiplicity::Finite(count)
            });
        }
        if constant_is_unit(&f)? || constant_is_unit(&g)? {
            return Ok(Multiplicity::Finite(count));
        }
        let sample = f.sample_coeff().unwrap().clone();
        let mut rf = restrict_y0(&f, &sample)?;
        let mut rg = restrict_y0(&g, &sample)?;
        match (rf.degree(), rg.degree()) {
            (None, None) => return Ok(Multiplicity::Infinite),
            (None, Some(_)) => {
                count += order_of(&rg)?;
                f = f.div_var_power(1, 1);
            }
            (Some(_), None) => {
                count += order_of(&rf)?;
                g = g.div_var_power(1, 1);
            }
            (Some(r), Some(s)) => {
                let (r, s) = if r > s {
                    std::mem::swap(&mut f, &mut g);
                    std::mem::swap(&mut rf, &mut rg);
                    (s, r)
                } else {
                    (r, s)
                };
                let c = rg.lc().unwrap().mul(&rf.lc().unwrap().inverse()?);
                g = g.sub_ref(&f.mul_term(&[(s - r) as u32, 0, 0], &c));
            }
        }
    }
}

/// Intersection multiplicity at the origin as the order at `x = 0` of
/// `Res_y(f, g)`, after a shear `x -> x + t y` making the origin the only
/// common zero over `x = 0` with the leading coefficient of `f` in `y`
/// nonvanishing there. `None` when no small shear qualifies.
fn resultant_route(f: &MultiPoly, g: &MultiPoly) -> Option<Multiplicity> {
    if f.is_zero() || g.is_zero() {
        return None;
    }
    if constant_is_unit(f).ok()? || constant_is_unit(g).ok()? {
        return Some(Multiplicity::Finite(0));
    }
    let zero = rat(0);
    for t in [0, 1, -1, 2, -2, 3] {
        let subs = [
            MultiPoly::from_int_terms(2, &[(1, [1, 0, 0]), (t, [0, 1, 0])]),
            MultiPoly::var(1, 2),
        ];
        let (a, b) = (f.compose(&subs), g.compose(&subs));
        for (a, b) in [(&a, &b), (&b, &a)] {
            let lc = a.coefficients_in(1).pop()?;
            if lc.constant_term().is_none() {
                continue;
            }
            let fiber = |p: &MultiPoly| p.specialize(0, &zero).to_univariate(0).expect("one variable");
            let (a0, b0) = (fiber(a), fiber(b));
            let common = if b0.is_zero() { a0 } else { a0.gcd_q(&b0) }.squarefree_q();
            if common.degree() != Some(1) || !common.coeffs()[0].is_zero() {
                continue;
            }
            let r = resultant_wrt(a, b, 1).ok()?.to_univariate(0)?;
            if r.is_zero() {
                return Some(Multiplicity::Infinite);
            }
            let ord = r.coeffs().iter().take_while(|c| c.is_zero()).count();
            return Some(Multiplicity::Finite(ord as u64));
        }
    }
    None
}

/// Rational intersection multiplicity at the origin: the resultant route
/// when a suitable shear exists, Fulton's algorithm otherwise.
fn origin_mult_q(f: &MultiPoly, g: &MultiPoly) -> Multiplicity {
    resultant_route(f, g).unwrap_or_else(|| fulton_origin(f, g).expect("rational arithmetic never splits"))
}

type SparseRow<C> = BTreeMap<usize, C>;

/// Dimension of `k[x,y] / (I + m^n)`.
fn truncated_colength<C: Field>(gens: &[Poly<C>], n: u32) -> std::result::Result<u64, Split> {
    // monomials of degree < n, ordered by degree then x-exponent
    let index = |a: u32, b: u32| -> usize {
        let d = (a + b) as usize;
        d * (d + 1) / 2 + b as usize
    };
    let total = (n as usize) * (n as usize + 1) / 2;
    let mut pivots: BTreeMap<usize, SparseRow<C>> = BTreeMap::new();
    for g in gens {
        let ord = g.order().unwrap_or(n);
        for d in 0..n.saturating_sub(ord) {
            for b in 0..=d {
                let a = d - b;
                let mut row: SparseRow<C> = BTreeMap::new();
                for (m, c) in g.terms() {
                    let (ea, eb) = (m[0] + a, m[1] + b);
                    if ea + eb < n {
                        row.insert(index(ea, eb), c.clone());
                    }
                }
                reduce_into(&mut pivots, row)?;
            }
        }
    }
    Ok((total - pivots.len()) as u64)
}

fn reduce_into<C: Field>(
    pivots: &mut BTreeMap<usize, SparseRow<C>>,
    mut row: SparseRow<C>,
) -> std::result::Result<(), Split> {
    while let Some((&col, lead)) = row.iter().next() {
        if let Some(p) = pivots.get(&col) {
            let k = lead.clone();
            for (j, v) in p {
                let updated = match row.get(j) {
                    Some(old) => old.sub(&k.mul(v)),
                    None => k.mul(v).neg(),
                };
                if updated.is_zero() {
                    row.remove(j);
                } else {
                    row.insert(*j, updated);
                }
            }
            continue;
        }
        if lead.zero_test()? {
            row.remove(&col);
            continue;
        }
        let inv = lead.inverse()?;
        let normalized = row.into_iter().map(|(j, v)| (j, v.mul(&inv))).collect();
        pivots.insert(col, normalized);
        return Ok(());
    }
    Ok(())
}

/// Colength of the ideal generated by `gens` in the local ring at the
/// origin, by truncated Macaulay matrices of growing order. Stops when two
/// consecutive truncations agree; reports [`LocalDim::Exceeded`] once the
/// dimension passes `cap` or the order passes `cap + 2`.
pub fn local_algebra_dim_origin<C: Field>(gens: &[Poly<C>], cap: u64) -> std::result::Result<LocalDim, Split> {
    for g in gens {
        if constant_is_unit(g)? {
            return Ok(LocalDim::Dim(0));
        }
    }
    let mut prev = None;
    for n in 1..=(cap as u32 + 2) {
        let d = truncated_colength(gens, n)?;
        if d > cap {
            return Ok(LocalDim::Exceeded);
        }
        if prev == Some(d) {
            return Ok(LocalDim::Dim(d));
        }
        prev = Some(d);
    }
    Ok(LocalDim::Exceeded)
}

/// Colength at the origin of an ideal with rational generators.
pub fn local_algebra_dim(gens: &[MultiPoly], cap: u64) -> LocalDim {
    local_algebra_dim_origin(gens, cap).expect("rational arithmetic never splits")
}

fn rational_path<T>(r: std::result::Result<T, Interrupt<Error>>) -> Result<T> {
    match r {
        Ok(v) => Ok(v),
        Err(Interrupt::Fail(e)) => Err(e),
        Err(Interrupt::Split(_)) => unreachable!("rational arithmetic never splits"),
    }
}

/// Runs a local computation at every conjugate of `p`, over Q when the point
/// is rational and by dynamic evaluation otherwise.
fn at_point<T, FQ, FE>(p: &AlgPoint, on_q: FQ, on_e: FE) -> Result<Vec<(Modulus, T)>>
where
    FQ: Fn(&[Rational]) -> std::result::Result<T, Interrupt<Error>>,
    FE: Fn(&[ExtElem]) -> std::result::Result<T, Interrupt<Error>>,
{
    if let Some(q) = p.rational_coords() {
        return Ok(vec![(p.modulus().clone(), rational_path(on_q(&q))?)]);
    }
    evaluate_branches(p.modulus(), |m| on_e(&p.coords_on(m)))
}

fn fulton_affine<C: Field>(
    f: &MultiPoly,
    g: &MultiPoly,
    at: &[C],
) -> std::result::Result<Multiplicity, Interrupt<Error>> {
    let fl = translate(&lift_poly(f, &at[0]), at);
    let gl = translate(&lift_poly(g, &at[0]), at);
    Ok(fulton_origin(&fl, &gl)?)
}

fn check_affine(f: &MultiPoly, g: &MultiPoly, p: &AlgPoint) -> Result<()> {
    if f.nvars() != 2 || g.nvars() != 2 {
        return Err(Error::ArityMismatch(f.nvars().max(g.nvars()), 2));
    }
    if p.is_projective() {
        return Err(Error::InvalidParameters("expected an affine point".into()));
    }
    Ok(())
}

/// Intersection multiplicity of two affine plane curves at each conjugate of
/// an affine point.
pub fn fulton_mult(f: &MultiPoly, g: &MultiPoly, p: &AlgPoint) -> Result<Vec<(Modulus, Multiplicity)>> {
    check_affine(f, g, p)?;
    at_point(p, |q| fulton_affine(f, g, q), |e| fulton_affine(f, g, e))
}

/// Milnor number `I_p(f_x, f_y)` of an affine plane curve at each conjugate
/// of an affine point lying on it.
pub fn milnor_number(f: &MultiPoly, p: &AlgPoint) -> Result<Vec<(Modulus, Multiplicity)>> {
    check_affine(f, f, p)?;
    let (fx, fy) = (f.partial(0), f.partial(1));
    at_point(
        p,
        |q| on_affine_curve(f, &fx, &fy, q),
        |e| on_affine_curve(f, &fx, &fy, e),
    )
}

fn on_affine_curve<C: Field>(
    f: &MultiPoly,
    fx: &MultiPoly,
    fy: &MultiPoly,
    at: &[C],
) -> std::result::Result<Multiplicity, Interrupt<Error>> {
    let lf = lift_poly(f, &at[0]);
    let on = lf.eval(at).map_or(Ok(true), |v| v.zero_test())?;
    if !on {
        return Err(Interrupt::Fail(Error::NotOnCurve));
    }
    fulton_affine(fx, fy, at)
}

fn milnor_projective<C: Field>(f: &MultiPoly, at: &[C]) -> std::result::Result<Multiplicity, Interrupt<Error>> {
    let (_, loc) = localize(&[f], at)?;
    let h = &loc[0];
    if constant_is_unit(h)? {
        return Err(Interrupt::Fail(Error::NotOnCurve));
    }
    Ok(fulton_origin(&h.partial(0), &h.partial(1))?)
}

fn milnor_projective_q(f: &MultiPoly, at: &[Rational]) -> std::result::Result<Multiplicity, Interrupt<Error>> {
    let (_, loc) = localize(&[f], at)?;
    let h = &loc[0];
    if constant_is_unit(h)? {
        return Err(Interrupt::Fail(Error::NotOnCurve));
    }
    Ok(origin_mult_q(&h.partial(0), &h.partial(1)))
}

/// Milnor number of a curve at each conjugate of a projective point on it.
pub fn milnor_at(c: &Curve, p: &AlgPoint) -> Result<Vec<(Modulus, Multiplicity)>> {
    milnor_of_form(&c.product(), p)
}

/// Milnor number of the form `f` at each conjugate of a projective point.
pub fn milnor_of_form(f: &MultiPoly, p: &AlgPoint) -> Result<Vec<(Modulus, Multiplicity)>> {
    if !p.is_projective() {
        return Err(Error::InvalidParameters("expected a projective point".into()));
    }
    at_point(p, |q| milnor_projective_q(f, q), |e| milnor_projective(f, e))
}

fn intersection_projective<C: Field>(
    f: &MultiPoly,
    g: &MultiPoly,
    at: &[C],
) -> std::result::Result<Multiplicity, Interrupt<Error>> {
    let (_, loc) = localize(&[f, g], at)?;
    Ok(fulton_origin(&loc[0], &loc[1])?)
}

/// Intersection multiplicity of two forms at each conjugate of a projective
/// point.
pub fn intersection_at(f: &MultiPoly, g: &MultiPoly, p: &AlgPoint) -> Result<Vec<(Modulus, Multiplicity)>> {
    if !p.is_projective() {
        return Err(Error::InvalidParameters("expected a projective point".into()));
    }
    at_point(
        p,
        |q| {
            let (_, loc) = localize(&[f, g], q)?;
            Ok(origin_mult_q(&loc[0], &loc[1]))
        },
        |e| intersection_projective(f, g, e),
    )
}

/// Lowest degree of a term with a nonzero coefficient; `None` for zero.
pub fn order_at_origin<C: Field>(f: &Poly<C>) -> std::result::Result<Option<u32>, Split> {
    let mut by_degree: BTreeMap<u32, Vec<&C>> = BTreeMap::new();
    for (m, c) in f.terms() {
        by_degree.entry(m[0] + m[1] + m[2]).or_default().push(c);
    }
    for (d, cs) in by_degree {
        for c in cs {
            if !c.zero_test()? {
                return Ok(Some(d));
            }
        }
    }
    Ok(None)
}

fn order_projective<C: Field>(f: &MultiPoly, at: &[C]) -> std::result::Result<u32, Interrupt<Error>> {
    let (_, loc) = localize(&[f], at)?;
    Ok(order_at_origin(&loc[0])?.unwrap_or(u32::MAX))
}

/// Multiplicity of the curve (order of vanishing of its product) at each
/// conjugate of a projective point.
pub fn point_multiplicity(c: &Curve, p: &AlgPoint) -> Result<Vec<(Modulus, u32)>> {
    let f = c.product();
    at_point(p, |q| order_projective(&f, q), |e| order_projective(&f, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(t: &[(i64, [u32; 3])]) -> MultiPoly {
        MultiPoly::from_int_terms(2, t)
    }

    fn at_origin(f: &MultiPoly, g: &MultiPoly) -> Multiplicity {
        fulton_origin(f, g).unwrap()
    }

    #[test]
    fn fulton_basics() {
        let x = p2(&[(1, [1, 0, 0])]);
        let y = p2(&[(1, [0, 1, 0])]);
        assert_eq!(at_origin(&x, &y), Multiplicity::Finite(1));
        let par = p2(&[(1, [0, 1, 0]), (-1, [2, 0, 0])]);
        assert_eq!(at_origin(&par, &y), Multiplicity::Finite(2));
        // x^2 - y and x^2 - 2y
        let a = p2(&[(1, [2, 0, 0]), (-1, [0, 1, 0])]);
        let b = p2(&[(1, [2, 0, 0]), (-2, [0, 1, 0])]);
        assert_eq!(at_origin(&a, &b), Multiplicity::Finite(2));
        assert_eq!(at_origin(&a, &a.mul_ref(&x)), Multiplicity::Infinite);
        let unit = p2(&[(1, [0, 0, 0]), (1, [1, 0, 0])]);
        assert_eq!(at_origin(&unit, &x), Multiplicity::Finite(0));
    }

    #[test]
    fn ploski_conics_meet_with_multiplicity_four() {
        let q = |c: i64| MultiPoly::from_int_terms(3, &[(1, [2, 0, 0]), (-1, [0, 1, 1]), (c, [0, 0, 2])]);
        let p = AlgPoint::from_ints(&[0, 1, 0]);
        let r = intersection_at(&q(1), &q(2), &p).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].1, Multiplicity::Finite(4));
    }

    #[test]
    fn colength_examples() {
        let x = p2(&[(1, [1, 0, 0])]);
        let y = p2(&[(1, [0, 1, 0])]);
        assert_eq!(local_algebra_dim(&[x.clone(), y.clone()], 10), LocalDim::Dim(1));
        let cusp = [p2(&[(3, [2, 0, 0])]), p2(&[(2, [0, 1, 0])])];
        assert_eq!(local_algebra_dim(&cusp, 10), LocalDim::Dim(2));
        let node = [p2(&[(2, [1, 0, 0])]), p2(&[(-2, [0, 1, 0])])];
        assert_eq!(local_algebra_dim(&node, 10), LocalDim::Dim(1));
        // non-isolated: (x^2, xy)
        let bad = [p2(&[(1, [2, 0, 0])]), p2(&[(1, [1, 1, 0])])];
        assert_eq!(local_algebra_dim(&bad, 6), LocalDim::Exceeded);
    }

    #[test]
    fn milnor_numbers() {
        let node = p2(&[(1, [1, 1, 0])]);
        let origin = AlgPoint::from_ints(&[0, 0]);
        assert_eq!(milnor_number(&node, &origin).unwrap()[0].1, Multiplicity::Finite(1));
        let cusp = p2(&[(1, [3, 0, 0]), (-1, [0, 2, 0])]);
        assert_eq!(milnor_number(&cusp, &origin).unwrap()[0].1, Multiplicity::Finite(2));
        let off = AlgPoint::from_ints(&[1, 1]);
        assert_eq!(milnor_number(&node, &off), Err(Error::NotOnCurve));
        let double = p2(&[(1, [2, 0, 0])]);
        assert_eq!(milnor_number(&double, &origin).unwrap()[0].1, Multiplicity::Infinite);
    }

    #[test]
    fn tangent_conics_milnor_seven() {
        let q = |c: i64| MultiPoly::from_int_terms(3, &[(1, [2, 0, 0]), (-1, [0, 1, 1]), (c, [0, 0, 2])]);
        let c = Curve::from_components(vec![q(0), q(1)]).unwrap();
        let r = milnor_at(&c, &AlgPoint::from_ints(&[0, 1, 0])).unwrap();
        assert_eq!(r[0].1, Multiplicity::Finite(7));
    }

    #[test]
    fn conjugate_points_split_by_value() {
        // y^2 = x^2 (x + 1) has a node at the origin; evaluate at the roots of
        // t (t + 1), i.e. the node and the smooth point (-1, 0)
        let f = p2(&[(1, [0, 2, 0]), (-1, [3, 0, 0]), (-1, [2, 0, 0])]);
        let m = Modulus::new(QPoly::from_ints(&[0, 1, 1])).unwrap();
        let p = AlgPoint::new(m, &[QPoly::x(), QPoly::zero()]).unwrap();
        let mut r = milnor_number(&f, &p).unwrap();
        r.sort_by_key(|a| a.1);
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].1, Multiplicity::Finite(0));
        assert_eq!(r[1].1, Multiplicity::Finite(1));
    }

    #[test]
    fn multiplicity_of_concurrent_lines() {
        let l = |a: i64, b: i64| MultiPoly::from_int_terms(3, &[(a, [1, 0, 0]), (b, [0, 1, 0])]);
        let c = Curve::from_components(vec![l(1, 0), l(0, 1), l(1, 1)]).unwrap();
        let r = point_multiplicity(&c, &AlgPoint::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(r[0].1, 3);
    }
}
