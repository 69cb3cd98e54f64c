//! Sparse multivariate polynomials in up to three variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{rat, Error, Field, QPoly, Rational, Result};

/// Exponent vector. Slots beyond the arity are always zero.
pub type Mono = [u32; 3];

/// Sparse polynomial: exponent vector -> nonzero coefficient.
///
/// Terms are ordered lexicographically with variable 0 most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C> {
    nvars: usize,
    terms: BTreeMap<Mono, C>,
}

/// Polynomial over the rationals.
pub type MultiPoly = Poly<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub(crate) fn mono_add(a: &Mono, b: &Mono) -> Mono {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub(crate) fn mono_degree(m: &Mono) -> u32 {
    m[0] + m[1] + m[2]
}

impl<C: Field> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        assert!((1..=3).contains(&nvars), "arity must be 1, 2 or 3");
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn monomial(nvars: usize, mono: Mono, c: C) -> Self {
        Self::from_terms(nvars, [(mono, c)])
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(nvars, [0; 3], c)
    }

    /// Adds `c * mono` in place.
    pub fn add_term(&mut self, mono: Mono, c: C) {
        debug_assert!(mono[self.nvars..].iter().all(|&e| e == 0));
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &C)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn constant_term(&self) -> Option<&C> {
        self.terms.get(&[0; 3])
    }

    /// Any coefficient, used as a template for constants.
    pub fn sample_coeff(&self) -> Option<&C> {
        self.terms.values().next()
    }

    /// Exponent vector restricted to the arity.
    pub fn exponents<'a>(&self, m: &'a Mono) -> &'a [u32] {
        &m[..self.nvars]
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(mono_degree).max()
    }

    /// Lowest total degree among the terms (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(mono_degree).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[var]).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| mono_degree(m) == 0)
    }

    /// Degree if every term has the same total degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(mono_degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Terms of a given total degree.
    pub fn homogeneous_part(&self, deg: u32) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| mono_degree(m) == deg)
                .map(|(m, c)| (*m, c.clone())),
        )
    }

    pub fn arith(&self, o: &Self, op: ArithOp) -> Result<Self> {
        if self.nvars != o.nvars {
            return Err(Error::ArityMismatch(self.nvars, o.nvars));
        }
        Ok(match op {
            ArithOp::Add => self.add_ref(o),
            ArithOp::Sub => self.sub_ref(o),
            ArithOp::Mul => self.mul_ref(o),
        })
    }

    fn check_arity(&self, o: &Self) {
        assert_eq!(self.nvars, o.nvars, "polynomial arity mismatch");
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        self.check_arity(o);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.check_arity(o);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.neg());
        }
        r
    }

    pub fn neg_ref(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        self.check_arity(o);
        let mut r = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                r.add_term(mono_add(ma, mb), ca.mul(cb));
            }
        }
        r
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.mul(k))).collect(),
        }
    }

    /// Multiply by `k * mono`.
    pub fn mul_term(&self, mono: &Mono, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (mono_add(m, mono), c.mul(k))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let Some(one) = self.sample_coeff().map(Field::one_like) else {
            assert!(e > 0, "zero polynomial to the zeroth power");
            return self.clone();
        };
        let mut acc = Self::constant(self.nvars, one);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial(&self, var: usize) -> Self {
        assert!(var < self.nvars, "variable out of range");
        let mut r = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut m2 = *m;
            m2[var] -= 1;
            r.add_term(m2, c.mul_int(m[var] as i64));
        }
        r
    }

    /// Divides by `var^k`; the caller guarantees every term is divisible.
    pub fn div_var_power(&self, var: usize, k: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m2 = *m;
                    debug_assert!(m2[var] >= k);
                    m2[var] -= k;
                    (m2, c.clone())
                })
                .collect(),
        }
    }

    /// Largest `k` with `var^k` dividing every term.
    pub fn var_valuation(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m[var]).min().unwrap_or(0)
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Substitutes each variable `i` by `subs[i]`. All substitutes must share
    /// an arity, which becomes the arity of the result.
    pub fn compose(&self, subs: &[Poly<C>]) -> Poly<C> {
        assert_eq!(subs.len(), self.nvars);
        let n = subs[0].nvars;
        let mut powers: Vec<Vec<Poly<C>>> = Vec::with_capacity(self.nvars);
        for (i, s) in subs.iter().enumerate() {
            let maxe = self.degree_in(i).unwrap_or(0);
            let mut v = Vec::with_capacity(maxe as usize + 1);
            if let Some(c) = self.sample_coeff() {
                v.push(Poly::constant(n, c.one_like()));
            }
            for k in 1..=maxe as usize {
                let next = v[k - 1].mul_ref(s);
                v.push(next);
            }
            powers.push(v);
        }
        let mut r = Poly::zero(n);
        for (m, c) in &self.terms {
            let mut t = powers[0][m[0] as usize].scale(c);
            for i in 1..self.nvars {
                if m[i] > 0 {
                    t = t.mul_ref(&powers[i][m[i] as usize]);
                }
            }
            r = r.add_ref(&t);
        }
        r
    }

    /// Sets `var` to `value` and removes it, lowering the arity by one.
    pub fn specialize(&self, var: usize, value: &C) -> Poly<C> {
        assert!(self.nvars >= 2 && var < self.nvars);
        let mut r = Poly::zero(self.nvars - 1);
        let maxe = self.degree_in(var).unwrap_or(0) as usize;
        let mut pw = Vec::with_capacity(maxe + 1);
        if let Some(c) = self.sample_coeff() {
            pw.push(c.one_like());
            for k in 1..=maxe {
                let v = pw[k - 1].mul(value);
                pw.push(v);
            }
        }
        for (m, c) in &self.terms {
            let mut m2 = [0u32; 3];
            let kept = m.iter().take(self.nvars).enumerate().filter(|&(i, _)| i != var);
            for (slot, (_, e)) in m2.iter_mut().zip(kept) {
                *slot = *e;
            }
            r.add_term(m2, c.mul(&pw[m[var] as usize]));
        }
        r
    }

    /// Inserts a new variable at position `var` (exponent zero everywhere).
    pub fn insert_var(&self, var: usize) -> Poly<C> {
        assert!(self.nvars < 3 && var <= self.nvars);
        Poly::from_terms(
            self.nvars + 1,
            self.terms.iter().map(|(m, c)| {
                let mut m2 = [0u32; 3];
                let mut j = 0;
                for (i, slot) in m2.iter_mut().enumerate().take(self.nvars + 1) {
                    if i == var {
                        continue;
                    }
                    *slot = m[j];
                    j += 1;
                }
                (m2, c.clone())
            }),
        )
    }

    /// Homogenizes with a new last variable to the given degree.
    pub fn homogenize(&self, degree: u32) -> Poly<C> {
        assert!(self.nvars < 3);
        Poly::from_terms(
            self.nvars + 1,
            self.terms.iter().map(|(m, c)| {
                let mut m2 = *m;
                m2[self.nvars] = degree - mono_degree(m);
                (m2, c.clone())
            }),
        )
    }

    /// Evaluates at a point given by one value per variable.
    pub fn eval(&self, point: &[C]) -> Option<C> {
        assert_eq!(point.len(), self.nvars);
        let mut acc: Option<C> = None;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in point.iter().enumerate() {
                for _ in 0..m[i] {
                    t = t.mul(v);
                }
            }
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t),
            });
        }
        acc
    }

    /// Coefficients with respect to `var`, index = power of `var`. The
    /// coefficients keep the full arity with `var` absent.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly<C>> {
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Poly::zero(self.nvars); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let mut m2 = *m;
            m2[var] = 0;
            out[m[var] as usize].add_term(m2, c.clone());
        }
        out
    }

    /// Lex-leading term.
    pub fn leading_term(&self) -> Option<(&Mono, &C)> {
        self.terms.iter().next_back()
    }
}

impl MultiPoly {
    /// The variable `var` in arity `nvars`.
    pub fn var(var: usize, nvars: usize) -> Self {
        let mut m = [0; 3];
        m[var] = 1;
        Self::monomial(nvars, m, Rational::one())
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, rat(c))
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, [u32; 3])]) -> Self {
        Self::from_terms(nvars, terms.iter().map(|(c, m)| (*m, rat(*c))))
    }

    /// Converts a polynomial that involves only `var` into a dense
    /// univariate polynomial.
    pub fn to_univariate(&self, var: usize) -> Option<QPoly> {
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut v = vec![Rational::zero(); d + 1];
        for (m, c) in &self.terms {
            if (0..self.nvars).any(|i| i != var && m[i] != 0) {
                return None;
            }
            v[m[var] as usize] = c.clone();
        }
        Some(QPoly::new(v))
    }

    pub fn from_univariate(p: &QPoly, var: usize, nvars: usize) -> Self {
        Self::from_terms(
            nvars,
            p.coeffs().iter().enumerate().map(|(i, c)| {
                let mut m = [0; 3];
                m[var] = i as u32;
                (m, c.clone())
            }),
        )
    }

    /// The single variable a polynomial depends on, if any.
    pub fn univariate_var(&self) -> Option<usize> {
        let used: Vec<usize> = (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m[i] > 0))
            .collect();
        match used.as_slice() {
            [] => Some(0),
            [v] => Some(*v),
            _ => None,
        }
    }

    /// Scales so the coefficients are coprime integers with a positive
    /// lex-leading coefficient.
    pub fn primitive_integer(&self) -> Self {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut l = num_bigint::BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        let mut g = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(&(c * &l).to_integer());
        }
        let mut k = Rational::new(l, g);
        if self.leading_term().unwrap().1.is_negative() {
            k = -k;
        }
        self.scale(&k)
    }

    /// Divides by the lex-leading coefficient.
    pub fn monic_lex(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Exact multivariate division over Q; `None` if `d` does not divide.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d.leading_term().map(|(m, c)| (*m, c.clone()))?;
        let inv = dc.recip();
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((m, c)) = r.leading_term().map(|(m, c)| (*m, c.clone())) {
            if (0..3).any(|i| m[i] < dm[i]) {
                return None;
            }
            let qm = [m[0] - dm[0], m[1] - dm[1], m[2] - dm[2]];
            let qc = &c * &inv;
            r = r.sub_ref(&d.mul_term(&qm, &qc));
            q.add_term(qm, qc);
        }
        Some(q)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: &[&str]) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut mono = Vec::new();
            for (i, name) in names.iter().enumerate().take(self.nvars) {
                match m[i] {
                    0 => {}
                    1 => mono.push(name.to_string()),
                    e => mono.push(format!("{name}^{e}")),
                }
            }
            let coeff = a.to_string();
            if mono.is_empty() {
                f.write_str(&coeff)?;
            } else if a.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &["x", "y", "z"])
    }
}

impl<C: Field> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: &Poly<C>) -> Poly<C> {
        self.add_ref(o)
    }
}

impl<C: Field> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: &Poly<C>) -> Poly<C> {
        self.sub_ref(o)
    }
}

impl<C: Field> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, o: &Poly<C>) -> Poly<C> {
        self.mul_ref(o)
    }
}

impl<C: Field> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MultiPoly {
        MultiPoly::var(0, 3)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(1, 3)
    }
    fn z() -> MultiPoly {
        MultiPoly::var(2, 3)
    }

    #[test]
    fn cancellation_and_absorption() {
        let a = &x() + &y();
        let b = &x() - &y();
        assert_eq!(&a + &b, x().scale(&rat(2)));
        assert!((&a * &MultiPoly::zero(3)).is_zero());
    }

    #[test]
    fn conic_product_expansion() {
        let q = &(&x() * &x()) - &(&y() * &z());
        let r = &q + &(&z() * &z());
        let expected = MultiPoly::from_int_terms(
            3,
            &[
                (1, [4, 0, 0]),
                (-2, [2, 1, 1]),
                (1, [2, 0, 2]),
                (1, [0, 2, 2]),
                (-1, [0, 1, 3]),
            ],
        );
        assert_eq!(&q * &r, expected);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = MultiPoly::var(0, 2);
        assert_eq!(a.arith(&x(), ArithOp::Add), Err(Error::ArityMismatch(2, 3)));
    }

    #[test]
    fn partials_of_cusp_form() {
        // x^3 - y^2 z
        let f = MultiPoly::from_int_terms(3, &[(1, [3, 0, 0]), (-1, [0, 2, 1])]);
        assert_eq!(f.partial(0), MultiPoly::from_int_terms(3, &[(3, [2, 0, 0])]));
        assert_eq!(f.partial(2), MultiPoly::from_int_terms(3, &[(-1, [0, 2, 0])]));
        let g = MultiPoly::from_int_terms(3, &[(1, [3, 0, 0]), (5, [0, 0, 2])]);
        assert!(g.partial(1).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = &x() + &y();
        let b = &(&x() * &z()) - &(&y() * &y());
        let p = &a * &b;
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!(p.exact_div(&z()), None);
    }

    #[test]
    fn specialize_and_homogenize() {
        let q = &(&x() * &x()) - &(&y() * &z());
        let affine = q.specialize(2, &rat(1));
        assert_eq!(affine.to_string(), "x^2 - y");
        assert_eq!(affine.homogenize(2), q);
    }
}
