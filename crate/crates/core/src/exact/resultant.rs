//! Resultants and GCDs by subresultant and primitive remainder sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Error, MultiPoly, QPoly, Rational, Result, ZPoly};

/// An integral domain with exact division, used as the coefficient ring of
/// the eliminated variable.
pub trait Domain: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / d`, where `d` is known to divide `self`.
    fn exact_div(&self, d: &Self) -> Self;

    fn pow(&self, e: usize) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Domain for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, d: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % d)));
        self / d
    }
}

impl Domain for ZPoly {
    fn zero_like(&self) -> Self {
        ZPoly::zero()
    }
    fn one_like(&self) -> Self {
        ZPoly::one()
    }
    fn is_zero(&self) -> bool {
        ZPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        ZPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        ZPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        ZPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        ZPoly::neg(self)
    }
    fn exact_div(&self, d: &Self) -> Self {
        ZPoly::exact_div(self, d)
    }
}

impl Domain for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        MultiPoly::constant(self.nvars(), Rational::one())
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn sub(&self, o: &Self) -> Self {
        self.sub_ref(o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn exact_div(&self, d: &Self) -> Self {
        MultiPoly::exact_div(self, d).expect("inexact multivariate division")
    }
}

/// Dense polynomial in the eliminated variable, low degree first, trimmed.
type Dense<D> = Vec<D>;

fn trim<D: Domain>(mut v: Dense<D>) -> Dense<D> {
    while v.last().is_some_and(Domain::is_zero) {
        v.pop();
    }
    v
}

fn deg<D>(v: &Dense<D>) -> usize {
    v.len() - 1
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem<D: Domain>(a: &Dense<D>, b: &Dense<D>) -> Dense<D> {
    let db = deg(b);
    let lb = b[db].clone();
    let mut r = a.clone();
    let mut e = deg(a) + 1 - db;
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (j, bc) in b.iter().enumerate() {
            let k = dr - db + j;
            r[k] = r[k].sub(&bc.mul(&lr));
        }
        r = trim(r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e);
        r = r.into_iter().map(|c| c.mul(&f)).collect();
    }
    r
}

/// Resultant of two dense polynomials of positive degree, by the
/// subresultant algorithm. `sample` supplies constants.
fn subresultant<D: Domain>(a: &Dense<D>, b: &Dense<D>, sample: &D) -> D {
    if a.is_empty() || b.is_empty() {
        return sample.zero_like();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut negate = false;
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
        negate = deg(&a) % 2 == 1 && deg(&b) % 2 == 1;
    }
    if deg(&b) == 0 {
        let r = b[0].pow(deg(&a));
        return if negate { r.neg() } else { r };
    }
    let mut g = sample.one_like();
    let mut h = sample.one_like();
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            negate = !negate;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return sample.zero_like();
        }
        let div = g.mul(&h.pow(delta));
        a = b;
        b = r.into_iter().map(|c| c.exact_div(&div)).collect();
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).exact_div(&h.pow(delta - 1))
        };
        if deg(&b) == 0 {
            let da = deg(&a);
            let res = b[0].pow(da).exact_div(&h.pow(da - 1));
            return if negate { res.neg() } else { res };
        }
    }
}

/// Subresultant chain of `a` and `b` as triples `(j, psc_j, p)` by
/// decreasing `j`, where `p` has degree `j` and is similar to the
/// subresultant `S_j`. Every other `psc_j` with `j < deg b` vanishes
/// identically. Requires `deg a >= deg b > 0`.
fn subresultant_chain<D: Domain>(a: &Dense<D>, b: &Dense<D>, sample: &D) -> Vec<(usize, D, Dense<D>)> {
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut out = Vec::new();
    let delta0 = deg(&a) - deg(&b);
    out.push((deg(&b), b[deg(&b)].pow(delta0), b.clone()));
    let mut g = sample.one_like();
    let mut h = sample.one_like();
    while deg(&b) > 0 {
        let delta = deg(&a) - deg(&b);
        let r = prem(&a, &b);
        if r.is_empty() {
            break;
        }
        let div = g.mul(&h.pow(delta));
        a = b;
        b = r.into_iter().map(|c| c.exact_div(&div)).collect();
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).exact_div(&h.pow(delta - 1))
        };
        let (da, db) = (deg(&a), deg(&b));
        let lead = b[db].pow(da - db).exact_div(&h.pow(da - db - 1));
        out.push((db, lead, b.clone()));
    }
    out
}

fn check_var(f: &MultiPoly, var: usize) -> Result<()> {
    if var >= f.nvars() {
        return Err(Error::BadVariable(var, f.nvars()));
    }
    Ok(())
}

/// Variables other than `skip` that occur in `f` or `g`.
fn other_vars(f: &MultiPoly, g: &MultiPoly, skip: usize) -> Vec<usize> {
    (0..f.nvars())
        .filter(|&i| i != skip)
        .filter(|&i| f.degree_in(i).unwrap_or(0) > 0 || g.degree_in(i).unwrap_or(0) > 0)
        .collect()
}

/// Least common multiple of the coefficient denominators.
fn denominator_lcm(f: &MultiPoly) -> BigInt {
    f.terms().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()))
}

/// Converts an integer-coefficient polynomial in `main` (and possibly
/// `coef`) to a dense vector in `main` with `Z[coef]` coefficients.
fn to_dense_z(f: &MultiPoly, main: usize, coef: Option<usize>) -> Dense<ZPoly> {
    let n = f.degree_in(main).unwrap_or(0) as usize + 1;
    let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); n];
    for (m, c) in f.terms() {
        debug_assert!(c.is_integer());
        let e = coef.map_or(0, |v| m[v] as usize);
        let row = &mut rows[m[main] as usize];
        if row.len() <= e {
            row.resize(e + 1, BigInt::zero());
        }
        row[e] = c.to_integer();
    }
    trim(rows.into_iter().map(ZPoly::new).collect())
}

fn from_zpoly(p: &ZPoly, var: usize, nvars: usize) -> MultiPoly {
    MultiPoly::from_terms(
        nvars,
        p.coeffs().iter().enumerate().map(|(i, c)| {
            let mut m = [0; 3];
            m[var] = i as u32;
            (m, Rational::from_integer(c.clone()))
        }),
    )
}

/// Resultant of `f` and `g` with respect to variable `var`.
///
/// The result has the same arity with `var` absent. Fails with
/// [`Error::ConstantInVariable`] when neither input involves `var`.
pub fn resultant_wrt(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
    if f.nvars() != g.nvars() {
        return Err(Error::ArityMismatch(f.nvars(), g.nvars()));
    }
    check_var(f, var)?;
    let n = f.nvars();
    if f.is_zero() || g.is_zero() {
        return Ok(MultiPoly::zero(n));
    }
    let df = f.degree_in(var).unwrap();
    let dg = g.degree_in(var).unwrap();
    if df == 0 && dg == 0 {
        return Err(Error::ConstantInVariable);
    }
    let others = other_vars(f, g, var);
    if others.len() <= 1 {
        let coef = others.first().copied();
        let (lf, lg) = (denominator_lcm(f), denominator_lcm(g));
        let fi = f.scale(&Rational::from_integer(lf.clone()));
        let gi = g.scale(&Rational::from_integer(lg.clone()));
        let mut a = to_dense_z(&fi, var, coef);
        let mut b = to_dense_z(&gi, var, coef);
        // strip integer content; Res(ca A, cb B) = ca^deg B cb^deg A Res(A, B)
        let ca = a.iter().fold(BigInt::zero(), |acc, p| acc.gcd(&p.content()));
        let cb = b.iter().fold(BigInt::zero(), |acc, p| acc.gcd(&p.content()));
        a = a.iter().map(|p| p.div_scalar(&ca)).collect();
        b = b.iter().map(|p| p.div_scalar(&cb)).collect();
        let r = subresultant(&a, &b, &ZPoly::one());
        let num = num_traits::pow(ca, dg as usize) * num_traits::pow(cb, df as usize);
        let den = num_traits::pow(lf, dg as usize) * num_traits::pow(lg, df as usize);
        let k = Rational::new(num, den);
        let res = from_zpoly(&r, coef.unwrap_or(0), n);
        return Ok(res.scale(&k));
    }
    let a = f.coefficients_in(var);
    let b = g.coefficients_in(var);
    Ok(subresultant(&a, &b, &MultiPoly::zero(n)))
}

/// One member of a subresultant chain in `y` over `Q[x]`.
#[derive(Clone, Debug)]
pub struct ChainEntry {
    pub degree: usize,
    /// The principal subresultant coefficient `psc_j`, up to a nonzero
    /// rational factor.
    pub psc: QPoly,
    /// A polynomial in `x, y` of degree `j` in `y`, a `Q(x)`-multiple of `S_j`.
    pub poly: MultiPoly,
}

/// Subresultant chain of two polynomials in `x, y` with respect to `y`,
/// listing the indices `j` where `psc_j` is not identically zero, by
/// decreasing `j`. Wherever the leading coefficients of `f` and `g` do not
/// vanish, the degree of the gcd of the specializations is the least `j`
/// with `psc_j` nonzero there.
pub fn subresultant_chain_y(f: &MultiPoly, g: &MultiPoly) -> Result<Vec<ChainEntry>> {
    check_var(f, 1)?;
    if f.nvars() != g.nvars() {
        return Err(Error::ArityMismatch(f.nvars(), g.nvars()));
    }
    if (2..f.nvars()).any(|v| f.degree_in(v).unwrap_or(0) > 0 || g.degree_in(v).unwrap_or(0) > 0) {
        return Err(Error::BadVariable(2, 2));
    }
    let fi = f.scale(&Rational::from_integer(denominator_lcm(f)));
    let gi = g.scale(&Rational::from_integer(denominator_lcm(g)));
    let mut a = to_dense_z(&fi, 1, Some(0));
    let mut b = to_dense_z(&gi, 1, Some(0));
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::ConstantInVariable);
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let to_q = |p: &ZPoly| QPoly::new(p.coeffs().iter().cloned().map(Rational::from_integer).collect());
    Ok(subresultant_chain(&a, &b, &ZPoly::one())
        .into_iter()
        .map(|(j, psc, p)| {
            let terms = p.iter().enumerate().flat_map(|(k, c)| {
                c.coeffs()
                    .iter()
                    .enumerate()
                    .map(move |(i, v)| ([i as u32, k as u32, 0], Rational::from_integer(v.clone())))
            });
            ChainEntry {
                degree: j,
                psc: to_q(&psc),
                poly: MultiPoly::from_terms(f.nvars(), terms),
            }
        })
        .collect())
}

/// Sylvester matrix of `f` and `g` with respect to `var`: `deg_g` shifted
/// rows of `f`'s coefficients followed by `deg_f` rows of `g`'s, leading
/// coefficient first.
pub fn sylvester_matrix(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<Vec<Vec<MultiPoly>>> {
    if f.nvars() != g.nvars() {
        return Err(Error::ArityMismatch(f.nvars(), g.nvars()));
    }
    check_var(f, var)?;
    let a = f.coefficients_in(var);
    let b = g.coefficients_in(var);
    if a.is_empty() || b.is_empty() {
        return Err(Error::DegenerateFactor);
    }
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let zero = MultiPoly::zero(f.nvars());
    let mut rows = Vec::with_capacity(size);
    for (coeffs, shifts) in [(&a, n), (&b, m)] {
        for s in 0..shifts {
            let mut row = vec![zero.clone(); size];
            for (k, c) in coeffs.iter().rev().enumerate() {
                row[s + k] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

fn dense_content(v: &Dense<ZPoly>) -> ZPoly {
    v.iter().fold(ZPoly::zero(), |acc, p| acc.gcd(p))
}

fn dense_primitive(v: &Dense<ZPoly>) -> Dense<ZPoly> {
    let c = dense_content(v);
    let mut out: Dense<ZPoly> = v.iter().map(|p| p.exact_div(&c)).collect();
    if out.last().and_then(|p| p.lc()).is_some_and(|l| l.is_negative()) {
        out = out.iter().map(ZPoly::neg).collect();
    }
    out
}

/// GCD of two polynomials in two variables, normalized to coprime integer
/// coefficients with positive lex-leading coefficient.
pub fn bivariate_gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    assert_eq!(f.nvars(), 2, "bivariate_gcd expects arity 2");
    assert_eq!(g.nvars(), 2, "bivariate_gcd expects arity 2");
    if f.is_zero() {
        return g.primitive_integer();
    }
    if g.is_zero() {
        return f.primitive_integer();
    }
    let a = to_dense_z(&f.primitive_integer(), 1, Some(0));
    let b = to_dense_z(&g.primitive_integer(), 1, Some(0));
    let c = dense_content(&a).gcd(&dense_content(&b));
    let (mut a, mut b) = (dense_primitive(&a), dense_primitive(&b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            // a nonzero polynomial free of y is a unit after removing content
            a = vec![ZPoly::one()];
            break;
        }
        let r = prem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { dense_primitive(&r) };
    }
    let a = dense_primitive(&a);
    let mut out = MultiPoly::zero(2);
    for (j, p) in a.iter().enumerate() {
        let term = from_zpoly(&p.mul(&c), 0, 2);
        out = out.add_ref(&term.mul_term(&[0, j as u32, 0], &Rational::one()));
    }
    out.primitive_integer()
}

/// GCD of two homogeneous ternary forms, normalized like [`bivariate_gcd`].
pub fn homogeneous_gcd(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    for p in [f, g] {
        if p.nvars() != 3 {
            return Err(Error::ArityMismatch(p.nvars(), 3));
        }
        if !p.is_homogeneous() {
            return Err(Error::Inhomogeneous(p.to_string()));
        }
    }
    if f.is_zero() {
        return Ok(g.primitive_integer());
    }
    if g.is_zero() {
        return Ok(f.primitive_integer());
    }
    let vz = f.var_valuation(2).min(g.var_valuation(2));
    let one = Rational::one();
    let fa = f.specialize(2, &one);
    let ga = g.specialize(2, &one);
    let h = bivariate_gcd(&fa, &ga);
    let d = h.total_degree().unwrap_or(0);
    let mut z = [0u32; 3];
    z[2] = vz;
    Ok(h.homogenize(d).mul_term(&z, &one).primitive_integer())
}
