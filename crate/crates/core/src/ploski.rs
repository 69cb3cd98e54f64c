//! Płoski curves and the (*) and (★) conic families, with a structural
//! recognizer for the Płoski configuration.

use crate::curve::{is_irreducible_conic, Curve};
use crate::exact::{rat, Error, MultiPoly, Rational, Result};
use crate::local::{intersection_at, AlgPoint, Multiplicity};
use crate::singular::bezout_check;

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("n must be at least 2, got {n}")));
    }
    Ok(())
}

/// `x^2 - yz + c z^2`
pub fn ploski_conic(c: &Rational) -> MultiPoly {
    let mut f = MultiPoly::from_int_terms(3, &[(1, [2, 0, 0]), (-1, [0, 1, 1])]);
    f.add_term([0, 0, 2], c.clone());
    f
}

/// The product of the conics `x^2 - yz + c_i z^2`, by default with
/// `c_i = i`.
pub fn gen_even_ploski(n: u32, params: Option<&[Rational]>) -> Result<Curve> {
    check_n(n)?;
    let cs: Vec<Rational> = match params {
        Some(p) => {
            if p.len() != n as usize {
                return Err(Error::InvalidParameters(format!(
                    "expected {n} parameters, got {}",
                    p.len()
                )));
            }
            p.to_vec()
        }
        None => default_params(n),
    };
    for i in 0..cs.len() {
        if cs[..i].contains(&cs[i]) {
            return Err(Error::InvalidParameters(format!("repeated parameter {}", cs[i])));
        }
    }
    Curve::from_components(cs.iter().map(ploski_conic).collect())
}

/// The line `z` times the canonical even Płoski curve of `n` conics.
pub fn gen_odd_ploski(n: u32) -> Result<Curve> {
    let even = gen_even_ploski(n, None)?;
    let mut comps = vec![MultiPoly::var(2, 3)];
    comps.extend(even.components().cloned());
    Curve::from_components(comps)
}

/// `(x^2 - yz)(x^2 - 2yz)...(x^2 - nyz)`
pub fn gen_star(n: u32) -> Result<Curve> {
    check_n(n)?;
    Curve::from_components(
        (1..=n as i64)
            .map(|i| MultiPoly::from_int_terms(3, &[(1, [2, 0, 0]), (-i, [0, 1, 1])]))
            .collect(),
    )
}

/// `(x^2 - yz + xz)(x^2 - yz + 2xz)...(x^2 - yz + nxz)`
pub fn gen_doublestar(n: u32) -> Result<Curve> {
    check_n(n)?;
    Curve::from_components(
        (1..=n as i64)
            .map(|i| MultiPoly::from_int_terms(3, &[(1, [2, 0, 0]), (-1, [0, 1, 1]), (i, [1, 0, 1])]))
            .collect(),
    )
}

/// The unique common point of two curves, when they meet in exactly one
/// rational point with the given multiplicity.
fn sole_contact(a: &MultiPoly, b: &MultiPoly, mult: u64) -> Option<AlgPoint> {
    let ca = Curve::from_components(vec![a.clone()]).ok()?;
    let cb = Curve::from_components(vec![b.clone()]).ok()?;
    let report = bezout_check(&ca, &cb);
    match report.points.as_slice() {
        [(p, m)] if report.holds && *m == mult && p.is_rational() => Some(p.clone()),
        _ => None,
    }
}

fn meets_with(a: &MultiPoly, b: &MultiPoly, p: &AlgPoint, mult: u64) -> bool {
    matches!(intersection_at(a, b, p).as_deref(), Ok([(_, Multiplicity::Finite(m))]) if *m == mult)
}

/// Recognizes the Płoski configuration: irreducible conics meeting pairwise
/// with multiplicity 4 at one point, optionally with one line tangent to all
/// of them there. A single smooth conic counts as the one-conic case.
pub fn is_ploski(c: &Curve) -> bool {
    if !c.is_reduced() {
        return false;
    }
    let mut lines = Vec::new();
    let mut conics = Vec::new();
    for f in c.components() {
        match f.homogeneous_degree() {
            Some(1) => lines.push(f),
            Some(2) if is_irreducible_conic(f) => conics.push(f),
            _ => return false,
        }
    }
    if lines.len() > 1 || conics.is_empty() {
        return false;
    }
    let p = if conics.len() >= 2 {
        sole_contact(conics[0], conics[1], 4)
    } else if let Some(l) = lines.first() {
        sole_contact(l, conics[0], 2)
    } else {
        return true;
    };
    let Some(p) = p else {
        return false;
    };
    let pairs_ok = (0..conics.len()).all(|i| (i + 1..conics.len()).all(|j| meets_with(conics[i], conics[j], &p, 4)));
    pairs_ok && lines.iter().all(|l| conics.iter().all(|q| meets_with(l, q, &p, 2)))
}

/// Default parameters `1, ..., n`.
pub fn default_params(n: u32) -> Vec<Rational> {
    (1..=n as i64).map(rat).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ProjFrame;
    use crate::exact::ratio;
    use crate::singular::milnor_sum;

    #[test]
    fn generators() {
        let c = gen_even_ploski(2, None).unwrap();
        assert_eq!(c.degree(), 4);
        assert_eq!(c.to_string(), "(x^2 - y*z + z^2)*(x^2 - y*z + 2*z^2)");
        assert_eq!(gen_odd_ploski(3).unwrap().degree(), 7);
        assert!(gen_even_ploski(1, None).is_err());
        assert!(gen_even_ploski(2, Some(&[rat(1), rat(1)])).is_err());
        assert!(gen_even_ploski(2, Some(&[ratio(1, 2), rat(-3)])).is_ok());
    }

    #[test]
    fn recognizer() {
        assert!(is_ploski(&gen_even_ploski(3, None).unwrap()));
        assert!(is_ploski(&gen_odd_ploski(2).unwrap()));
        assert!(!is_ploski(&gen_star(3).unwrap()));
        assert!(!is_ploski(&gen_doublestar(2).unwrap()));
        let moved = gen_even_ploski(3, None)
            .unwrap()
            .apply_frame(&ProjFrame::from_ints([[1, 2, 0], [0, 1, -1], [3, 0, 1]]).unwrap());
        assert!(is_ploski(&moved));
        let odd = gen_odd_ploski(2).unwrap();
        let mut comps: Vec<MultiPoly> = odd.components().cloned().collect();
        comps[0] = MultiPoly::var(0, 3);
        assert!(!is_ploski(&Curve::from_components(comps).unwrap()));
    }

    #[test]
    fn odd_quintic_sum() {
        assert_eq!(milnor_sum(&gen_odd_ploski(2).unwrap()).unwrap(), 14);
    }
}
