//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{rat, Field, Rational, Split, ZPoly};

/// Coefficients from low to high degree without trailing structural zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<C> {
    coeffs: Vec<C>,
}

/// Univariate polynomial over the rationals.
pub type QPoly = UniPoly<Rational>;

impl<C: Field> UniPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&C> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Structural degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(v)
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut v = vec![zero; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut v = vec![zero; k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &C) -> Option<C> {
        let mut it = self.coeffs.iter().rev();
        let mut acc = it.next()?.clone();
        for c in it {
            acc = acc.mul(x).add(c);
        }
        Some(acc)
    }

    /// Drops leading coefficients that test as zero, so that afterwards the
    /// leading coefficient (if any) is a unit.
    pub fn normalize(&mut self) -> Result<(), Split> {
        while let Some(c) = self.coeffs.last() {
            if c.zero_test()? {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        Ok(())
    }

    pub fn monic(&self) -> Result<Self, Split> {
        match self.lc() {
            None => Ok(Self::zero()),
            Some(l) => Ok(self.scale(&l.inverse()?)),
        }
    }

    /// Division with remainder by a divisor whose leading coefficient is a
    /// unit (call [`normalize`](Self::normalize) first).
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), Split> {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().unwrap().inverse()?;
        let mut r = self.clone();
        let Some(n) = r.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if n < dd {
            return Ok((Self::zero(), r));
        }
        let zero = inv.zero_like();
        let mut q = vec![zero.clone(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = r.coeffs.get(k + dd).cloned().unwrap_or_else(|| zero.clone());
            if top.is_zero() {
                continue;
            }
            let c = top.mul(&inv);
            for (j, dc) in d.coeffs.iter().enumerate() {
                r.coeffs[k + j] = r.coeffs[k + j].sub(&c.mul(dc));
            }
            q[k] = c;
        }
        r.coeffs.truncate(dd);
        Ok((Self::new(q), Self::new(r.coeffs)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, Split> {
        Ok(self.div_rem(d)?.1)
    }

    /// Monic GCD by the Euclidean algorithm, testing each leading coefficient.
    pub fn gcd(&self, o: &Self) -> Result<Self, Split> {
        let mut a = self.clone();
        let mut b = o.clone();
        a.normalize()?;
        b.normalize()?;
        while !b.is_zero() {
            let mut r = a.rem(&b)?;
            r.normalize()?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree(&self) -> Result<Self, Split> {
        let mut p = self.clone();
        p.normalize()?;
        if p.degree().unwrap_or(0) == 0 {
            return p.monic();
        }
        let g = p.gcd(&p.derivative())?;
        let (q, _) = p.div_rem(&g)?;
        q.monic()
    }
}

impl QPoly {
    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&c| rat(c)).collect())
    }

    /// The polynomial `t`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    /// Monic polynomial `t - a`.
    pub fn linear_root(a: &Rational) -> Self {
        Self::new(vec![-a.clone(), Rational::one()])
    }

    /// Primitive integer polynomial with the same roots (positive leading
    /// coefficient).
    pub fn to_zpoly(&self) -> ZPoly {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        ZPoly::new(self.coeffs.iter().map(|c| (c * &l).to_integer()).collect()).primitive_part()
    }

    pub fn from_zpoly(z: &ZPoly) -> Self {
        Self::new(z.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn monic_q(&self) -> Self {
        self.monic().expect("rational arithmetic never splits")
    }

    /// Monic GCD over Q computed through a primitive remainder sequence in
    /// `Z[t]`.
    pub fn gcd_q(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.monic_q();
        }
        if o.is_zero() {
            return self.monic_q();
        }
        Self::from_zpoly(&self.to_zpoly().gcd(&o.to_zpoly())).monic_q()
    }

    pub fn div_rem_q(&self, d: &Self) -> (Self, Self) {
        self.div_rem(d).expect("rational arithmetic never splits")
    }

    pub fn rem_q(&self, d: &Self) -> Self {
        self.div_rem_q(d).1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div_q(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem_q(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, p: &Self) -> bool {
        p.rem_q(self).is_zero()
    }

    /// Squarefree part, monic.
    pub fn squarefree_q(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic_q();
        }
        let g = self.gcd_q(&self.derivative());
        self.exact_div_q(&g).monic_q()
    }

    /// Extended Euclid: returns `(g, s)` with `g = gcd(self, m)` monic and
    /// `s * self ≡ g (mod m)`.
    pub fn ext_gcd_q(&self, m: &Self) -> (Self, Self) {
        let (mut r0, mut r1) = (m.clone(), self.rem_q(m));
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem_q(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        match r0.lc() {
            None => (Self::zero(), Self::zero()),
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv))
            }
        }
    }

    /// Distinct rational roots in increasing order, found by the
    /// rational-root theorem.
    ///
    /// Returns `None` when the candidate set would be too large to enumerate
    /// (huge constant or leading coefficients); callers must then fall back to
    /// working in an extension.
    pub fn rational_roots(&self) -> Option<Vec<Rational>> {
        let z = self.to_zpoly();
        let mut roots = Vec::new();
        let coeffs = z.coeffs();
        if coeffs.is_empty() {
            return Some(roots);
        }
        let low = coeffs.iter().position(|c| !c.is_zero()).unwrap();
        if low > 0 {
            roots.push(Rational::zero());
        }
        let trimmed = ZPoly::new(coeffs[low..].to_vec());
        if trimmed.degree().unwrap_or(0) == 0 {
            return Some(roots);
        }
        let a0 = trimmed.coeffs()[0].abs();
        let an = trimmed.lc().unwrap().abs();
        let num = small_divisors(&a0)?;
        let den = small_divisors(&an)?;
        if num.len() * den.len() > 40_000 {
            return None;
        }
        let n = trimmed.degree().unwrap();
        let mut found = Vec::new();
        for q in &den {
            let qq = BigInt::from(*q);
            let mut qpows = vec![BigInt::one(); n + 1];
            for i in 1..=n {
                qpows[i] = &qpows[i - 1] * &qq;
            }
            for p in &num {
                if p.gcd(q) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let pp = BigInt::from(p * sign);
                    // q^n f(p/q) = sum a_i p^i q^(n-i)
                    let mut acc = BigInt::zero();
                    let mut ppow = BigInt::one();
                    for (i, a) in trimmed.coeffs().iter().enumerate() {
                        acc += a * &ppow * &qpows[n - i];
                        ppow *= &pp;
                    }
                    if acc.is_zero() {
                        found.push(Rational::new(pp, qq.clone()));
                    }
                }
            }
        }
        roots.extend(found);
        roots.sort();
        roots.dedup();
        Some(roots)
    }

    /// Splits a squarefree polynomial into its rational roots and the monic
    /// cofactor. When root search is too expensive no roots are reported and
    /// the cofactor is the whole polynomial.
    pub fn split_rational_roots(&self) -> (Vec<Rational>, Self) {
        match self.rational_roots() {
            None => (Vec::new(), self.monic_q()),
            Some(roots) => {
                let mut rest = self.monic_q();
                for r in &roots {
                    rest = rest.exact_div_q(&QPoly::linear_root(r));
                }
                (roots, rest)
            }
        }
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("t"))
    }
}

/// Positive divisors of `n` by trial division, or `None` if `n` is too large
/// to factor quickly.
fn small_divisors(n: &BigInt) -> Option<Vec<i64>> {
    let n = n.to_i64().filter(|&v| v > 0 && v < 1_000_000_000_000)?;
    let mut primes: Vec<(i64, u32)> = Vec::new();
    let mut m = n;
    let mut p = 2i64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            primes.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs = vec![1i64];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = 1;
            for k in 0..=e {
                next.push(d * pk);
                if k < e {
                    pk *= p;
                }
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Some(divs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn squarefree_examples() {
        // (t-1)^2 (t+2) -> (t-1)(t+2)
        let a = QPoly::from_ints(&[-1, 1]);
        let b = QPoly::from_ints(&[2, 1]);
        let sq = a.mul(&a).mul(&b);
        assert_eq!(sq.squarefree_q(), a.mul(&b));
        assert_eq!(a.mul(&b).squarefree_q(), a.mul(&b));
        // t^6 -> t
        let t6 = QPoly::from_ints(&[0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(t6.squarefree_q(), QPoly::x());
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (2t - 1)^3 (t + 3)^2 (t^2 + 1)
        let a = QPoly::from_ints(&[-1, 2]);
        let b = QPoly::from_ints(&[3, 1]);
        let c = QPoly::from_ints(&[1, 0, 1]);
        let p = a.mul(&a).mul(&a).mul(&b).mul(&b).mul(&c);
        let roots = p.rational_roots().unwrap();
        assert_eq!(roots, vec![rat(-3), ratio(1, 2)]);
        let (lin, rest) = p.squarefree_q().split_rational_roots();
        assert_eq!(lin.len(), 2);
        assert_eq!(rest, c);
    }

    #[test]
    fn extended_gcd_inverse() {
        // t inverse mod t^2 - 2 is t/2
        let m = QPoly::from_ints(&[-2, 0, 1]);
        let (g, s) = QPoly::x().ext_gcd_q(&m);
        assert_eq!(g, QPoly::one());
        assert_eq!(s, QPoly::new(vec![rat(0), ratio(1, 2)]));
    }
}
