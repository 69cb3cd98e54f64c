//! Dense univariate polynomials over the integers.
//!
//! Used as the coefficient domain for bivariate resultants and GCDs, where
//! working over `Z[x]` with content stripping keeps coefficient growth in
//! check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients from low to high degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = o.coeffs.get(i);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(v)
    }

    pub fn neg(&self) -> Self {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs: v }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Nonnegative gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lc().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    pub fn div_scalar(&self, k: &BigInt) -> Self {
        ZPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % k).is_zero());
                    c / k
                })
                .collect(),
        }
    }

    /// Exact division; panics (in debug builds) when `d` does not divide.
    pub fn exact_div(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let dd = d.degree().unwrap();
        let ld = d.lc().unwrap();
        let mut r = self.coeffs.clone();
        let n = r.len();
        if n <= dd {
            debug_assert!(false, "inexact division");
            return Self::zero();
        }
        let mut q = vec![BigInt::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            debug_assert!((top % ld).is_zero(), "inexact division");
            let c = top / ld;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        debug_assert!(r.iter().all(|c| c.is_zero()), "inexact division");
        Self::new(q)
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo-division by zero");
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        if da < dd {
            return self.clone();
        }
        let ld = d.lc().unwrap().clone();
        let mut e = da - dd + 1;
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.lc().unwrap().clone();
            r = r.scale(&ld).sub(&d.scale(&lr).shift(dr - dd));
            e -= 1;
        }
        if e > 0 {
            r = r.scale(&num_traits::pow(ld, e));
        }
        r
    }

    /// Primitive GCD with positive leading coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.primitive_part();
        }
        if o.is_zero() {
            return self.primitive_part();
        }
        let cg = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&cg)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        ZPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = z(&[-2, 1, 1]);
        let b = z(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), z(&[-1, 1]));
        // content survives
        assert_eq!(a.scale(&BigInt::from(6)).gcd(&b.scale(&BigInt::from(4))), z(&[-2, 2]));
    }

    #[test]
    fn exact_division_round_trip() {
        let a = z(&[1, 2, 3]);
        let b = z(&[-5, 0, 7, 1]);
        assert_eq!(a.mul(&b).exact_div(&b), a);
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = z(&[1, 0, 0, 2]);
        let b = z(&[1, 3]);
        // lc(b)^3 * a = q*b + r with r constant; r = 27 * a(-1/3)
        let r = a.pseudo_rem(&b);
        assert_eq!(r, z(&[25]));
    }
}
