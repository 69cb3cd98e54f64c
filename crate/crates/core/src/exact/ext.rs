//! Arithmetic in `Q[t]/(m)` for squarefree `m`, with dynamic evaluation.
//!
//! The modulus need not be irreducible. When an operation needs to know
//! whether an element is zero and the answer differs between factors of the
//! modulus, the operation fails with a [`Split`]; [`evaluate_branches`] then
//! reruns the computation on each factor.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::{Error, Field, QPoly, Rational, Result, Split};

/// A monic squarefree non-constant polynomial over Q.
#[derive(Clone, Debug)]
pub struct Modulus(Arc<QPoly>);

impl PartialEq for Modulus {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Modulus {
    pub fn new(p: QPoly) -> Result<Self> {
        match p.degree() {
            None | Some(0) => return Err(Error::BadModulus),
            _ => {}
        }
        let g = p.gcd_q(&p.derivative());
        if g.degree() != Some(0) {
            return Err(Error::BadModulus);
        }
        Ok(Modulus(Arc::new(p.monic_q())))
    }

    /// `t - a`: the residue field is Q and `t` stands for `a`.
    pub fn rational(a: &Rational) -> Self {
        Modulus(Arc::new(QPoly::linear_root(a)))
    }

    /// The modulus `t`, used for points with rational coordinates.
    pub fn trivial() -> Self {
        Modulus(Arc::new(QPoly::x()))
    }

    pub fn poly(&self) -> &QPoly {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree().unwrap()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// The root when the modulus is linear.
    pub fn root(&self) -> Option<Rational> {
        self.is_rational().then(|| -self.0.coeffs()[0].clone())
    }

    pub fn elem(&self, rep: &QPoly) -> ExtElem {
        ExtElem {
            rep: rep.rem_q(&self.0),
            modulus: self.clone(),
        }
    }

    pub fn constant(&self, q: &Rational) -> ExtElem {
        self.elem(&QPoly::constant(q.clone()))
    }

    /// The class of `t`.
    pub fn generator(&self) -> ExtElem {
        self.elem(&QPoly::x())
    }

    /// Whether `sub` divides this modulus.
    pub fn is_refined_by(&self, sub: &Modulus) -> bool {
        sub.poly().divides(self.poly())
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An element of `Q[t]/(m)`, stored as its reduced representative.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtElem {
    rep: QPoly,
    modulus: Modulus,
}

/// Outcome of [`ext_invert`].
#[derive(Clone, Debug, PartialEq)]
pub enum Inversion {
    Inverse(ExtElem),
    /// `modulus = left * right` with `left = gcd(representative, modulus)`.
    Split(QPoly, QPoly),
}

/// Inverts an element, or reports the factorization of the modulus exposed
/// by a zero divisor.
pub fn ext_invert(a: &ExtElem) -> Result<Inversion> {
    if a.rep.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (g, s) = a.rep.ext_gcd_q(a.modulus.poly());
    if g.degree() == Some(0) {
        Ok(Inversion::Inverse(a.modulus.elem(&s)))
    } else {
        let other = a.modulus.poly().exact_div_q(&g);
        Ok(Inversion::Split(g, other.monic_q()))
    }
}

impl ExtElem {
    pub fn rep(&self) -> &QPoly {
        &self.rep
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// Reduces this element into a factor of its modulus.
    pub fn project(&self, sub: &Modulus) -> ExtElem {
        debug_assert!(self.modulus.is_refined_by(sub));
        sub.elem(&self.rep)
    }

    /// The rational value when the modulus is linear.
    pub fn as_rational(&self) -> Option<Rational> {
        if !self.modulus.is_rational() {
            return None;
        }
        Some(self.rep.coeff(0).cloned().unwrap_or_else(Rational::zero))
    }

    fn wrap(&self, rep: QPoly) -> ExtElem {
        ExtElem {
            rep,
            modulus: self.modulus.clone(),
        }
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{q}"),
            None => f.write_str(&self.rep.display_var("t")),
        }
    }
}

impl Field for ExtElem {
    fn zero_like(&self) -> Self {
        self.wrap(QPoly::zero())
    }

    fn one_like(&self) -> Self {
        self.wrap(QPoly::one())
    }

    fn lift(&self, q: &Rational) -> Self {
        self.wrap(QPoly::constant(q.clone()))
    }

    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        self.wrap(self.rep.add(&rhs.rep))
    }

    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        self.wrap(self.rep.sub(&rhs.rep))
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        if self.rep.is_zero() || rhs.rep.is_zero() {
            return self.zero_like();
        }
        let prod = self.rep.mul(&rhs.rep);
        if prod.degree() < self.modulus.poly().degree() {
            return self.wrap(prod);
        }
        self.wrap(prod.rem_q(self.modulus.poly()))
    }

    fn neg(&self) -> Self {
        self.wrap(self.rep.neg())
    }

    fn zero_test(&self) -> std::result::Result<bool, Split> {
        match self.rep.degree() {
            None => Ok(true),
            Some(0) => Ok(false),
            Some(_) => {
                let g = self.rep.gcd_q(self.modulus.poly());
                if g.degree() == Some(0) {
                    Ok(false)
                } else {
                    let right = self.modulus.poly().exact_div_q(&g).monic_q();
                    Err(Split { left: g, right })
                }
            }
        }
    }

    fn inverse(&self) -> std::result::Result<Self, Split> {
        if self.rep.degree() == Some(0) {
            return Ok(self.wrap(QPoly::constant(self.rep.coeffs()[0].recip())));
        }
        match ext_invert(self) {
            Ok(Inversion::Inverse(v)) => Ok(v),
            Ok(Inversion::Split(left, right)) => Err(Split { left, right }),
            Err(_) => panic!("inverse of zero in extension"),
        }
    }

    fn mul_int(&self, k: i64) -> Self {
        let k = Rational::from_integer(k.into());
        self.wrap(self.rep.scale(&k))
    }
}

/// Reason a dynamic-evaluation step stopped.
#[derive(Debug)]
pub enum Interrupt<E> {
    Split(Split),
    Fail(E),
}

impl<E> From<Split> for Interrupt<E> {
    fn from(s: Split) -> Self {
        Interrupt::Split(s)
    }
}

/// Runs `step` over `modulus`, restarting on each factor whenever it reports
/// a [`Split`]. Returns one result per final branch, in a deterministic order.
pub fn evaluate_branches<T, E>(
    modulus: &Modulus,
    mut step: impl FnMut(&Modulus) -> std::result::Result<T, Interrupt<E>>,
) -> std::result::Result<Vec<(Modulus, T)>, E> {
    let mut pending = vec![modulus.clone()];
    let mut done = Vec::new();
    while let Some(m) = pending.pop() {
        match step(&m) {
            Ok(v) => done.push((m, v)),
            Err(Interrupt::Fail(e)) => return Err(e),
            Err(Interrupt::Split(s)) => {
                debug_assert_eq!(&s.left.mul(&s.right).monic_q(), m.poly());
                // push right first so the left factor is processed first
                pending.push(Modulus(Arc::new(s.right)));
                pending.push(Modulus(Arc::new(s.left)));
            }
        }
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    #[test]
    fn invert_sqrt_two() {
        let m = Modulus::new(QPoly::from_ints(&[-2, 0, 1])).unwrap();
        let t = m.generator();
        let Inversion::Inverse(inv) = ext_invert(&t).unwrap() else {
            panic!("expected inverse");
        };
        assert_eq!(inv.rep(), &QPoly::new(vec![rat(0), ratio(1, 2)]));
        assert_eq!(t.mul(&inv), t.one_like());
    }

    #[test]
    fn invert_constant() {
        let m = Modulus::new(QPoly::from_ints(&[-2, 0, 1])).unwrap();
        let c = m.constant(&rat(5));
        let Inversion::Inverse(inv) = ext_invert(&c).unwrap() else {
            panic!("expected inverse");
        };
        assert_eq!(inv, m.constant(&ratio(1, 5)));
    }

    #[test]
    fn zero_divisor_splits() {
        // (t-1)(t-2)
        let m = Modulus::new(QPoly::from_ints(&[2, -3, 1])).unwrap();
        let a = m.generator().sub(&m.constant(&rat(1)));
        assert_eq!(
            ext_invert(&a).unwrap(),
            Inversion::Split(QPoly::from_ints(&[-1, 1]), QPoly::from_ints(&[-2, 1]))
        );
        assert_eq!(ext_invert(&m.constant(&rat(0))), Err(Error::DivisionByZero));
    }

    #[test]
    fn branches_collect_per_factor() {
        let m = Modulus::new(QPoly::from_ints(&[2, -3, 1])).unwrap();
        let out = evaluate_branches::<bool, ()>(&m, |m| {
            let a = m.generator().sub(&m.constant(&rat(1)));
            Ok(a.zero_test()?)
        })
        .unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].0.poly(), &QPoly::from_ints(&[-1, 1]));
        assert!(out[0].1);
        assert!(!out[1].1);
    }

    #[test]
    fn bad_modulus_rejected() {
        assert_eq!(Modulus::new(QPoly::from_ints(&[1, -2, 1])), Err(Error::BadModulus));
        assert_eq!(Modulus::new(QPoly::from_ints(&[3])), Err(Error::BadModulus));
    }
}
