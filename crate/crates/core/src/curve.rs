//! Projective plane curves in factored form.

use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{homogeneous_gcd, rat, Error, MultiPoly, Rational, Result};

/// Affine chart of the projective plane, named by the coordinate set to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    X,
    Y,
    Z,
}

impl Chart {
    pub fn index(self) -> usize {
        match self {
            Chart::X => 0,
            Chart::Y => 1,
            Chart::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Chart {
        [Chart::X, Chart::Y, Chart::Z][i]
    }
}

/// Invertible 3×3 matrix acting on coordinates. Applying a frame `g` to a
/// form `F` yields `F'(v) = F(g v)`, so a point `q` of the transformed curve
/// corresponds to the point `g q` of the original one.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjFrame {
    m: [[Rational; 3]; 3],
}

fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

impl ProjFrame {
    pub fn new(m: [[Rational; 3]; 3]) -> Result<Self> {
        if det3(&m).is_zero() {
            return Err(Error::SingularFrame);
        }
        Ok(ProjFrame { m })
    }

    pub fn from_ints(m: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(m.map(|row| row.map(rat)))
    }

    /// Matrix with the given columns.
    pub fn from_columns(cols: [[Rational; 3]; 3]) -> Result<Self> {
        let m = std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()));
        Self::new(m)
    }

    pub fn identity() -> Self {
        Self::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap()
    }

    pub fn matrix(&self) -> &[[Rational; 3]; 3] {
        &self.m
    }

    pub fn det(&self) -> Rational {
        det3(&self.m)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn inverse(&self) -> ProjFrame {
        let m = &self.m;
        let d = self.det();
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0];
        // adjugate: inv[i][j] = cofactor(j, i) / det
        let adj = [
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ];
        ProjFrame {
            m: adj.map(|row| row.map(|c| c / &d)),
        }
    }

    /// Matrix product `self * o`.
    pub fn compose(&self, o: &ProjFrame) -> ProjFrame {
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).fold(Rational::zero(), |acc, k| acc + &self.m[i][k] * &o.m[k][j]))
        });
        ProjFrame { m }
    }

    pub fn apply_point(&self, p: &[Rational; 3]) -> [Rational; 3] {
        std::array::from_fn(|i| (0..3).fold(Rational::zero(), |acc, k| acc + &self.m[i][k] * &p[k]))
    }

    /// The linear forms substituted for x, y, z.
    pub fn substitutions(&self) -> Vec<MultiPoly> {
        self.m
            .iter()
            .map(|row| {
                MultiPoly::from_terms(
                    3,
                    (0..3).map(|j| {
                        let mut e = [0; 3];
                        e[j] = 1;
                        (e, row[j].clone())
                    }),
                )
            })
            .collect()
    }

    /// `F(g v)`.
    pub fn transform(&self, f: &MultiPoly) -> MultiPoly {
        f.compose(&self.substitutions())
    }
}

impl fmt::Display for ProjFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(","))
    }
}

/// A plane curve as a product of homogeneous factors with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    factors: Vec<(MultiPoly, u32)>,
    degree: u32,
}

impl Curve {
    /// Builds a curve, checking each factor is a nonzero non-constant form.
    pub fn from_factors(factors: Vec<(MultiPoly, u32)>) -> Result<Curve> {
        let mut degree = 0;
        for (f, m) in &factors {
            if f.nvars() != 3 {
                return Err(Error::ArityMismatch(f.nvars(), 3));
            }
            if *m == 0 {
                return Err(Error::DegenerateFactor);
            }
            let d = match f.homogeneous_degree() {
                None if f.is_zero() => return Err(Error::DegenerateFactor),
                None => return Err(Error::Inhomogeneous(f.to_string())),
                Some(0) => return Err(Error::DegenerateFactor),
                Some(d) => d,
            };
            degree += d * m;
        }
        if factors.is_empty() {
            return Err(Error::DegenerateFactor);
        }
        Ok(Curve { factors, degree })
    }

    /// A reduced curve from distinct factors, each with multiplicity one.
    pub fn from_components(components: Vec<MultiPoly>) -> Result<Curve> {
        Self::from_factors(components.into_iter().map(|f| (f, 1)).collect())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn factors(&self) -> &[(MultiPoly, u32)] {
        &self.factors
    }

    /// Factor polynomials, ignoring multiplicities.
    pub fn components(&self) -> impl Iterator<Item = &MultiPoly> + '_ {
        self.factors.iter().map(|(f, _)| f)
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    /// The curve made of the factors at the given indices.
    pub fn sub_curve(&self, idx: impl IntoIterator<Item = usize>) -> Result<Curve> {
        Self::from_factors(idx.into_iter().map(|i| self.factors[i].clone()).collect())
    }

    /// The expanded defining form.
    pub fn product(&self) -> MultiPoly {
        let mut acc = MultiPoly::constant(3, Rational::one());
        for (f, m) in &self.factors {
            acc = acc.mul_ref(&f.pow(*m));
        }
        acc
    }

    /// True iff all multiplicities are one, every factor is squarefree and
    /// the factors are pairwise coprime.
    pub fn is_reduced(&self) -> bool {
        if self.factors.iter().any(|(_, m)| *m != 1) {
            return false;
        }
        for (f, _) in &self.factors {
            let mut g = f.clone();
            for v in 0..3 {
                g = homogeneous_gcd(&g, &f.partial(v)).expect("forms are homogeneous");
                if g.is_constant() {
                    break;
                }
            }
            if !g.is_constant() {
                return false;
            }
        }
        for i in 0..self.factors.len() {
            for j in i + 1..self.factors.len() {
                let g = homogeneous_gcd(&self.factors[i].0, &self.factors[j].0).expect("forms are homogeneous");
                if !g.is_constant() {
                    return false;
                }
            }
        }
        true
    }

    /// Precomposes every factor with the frame.
    pub fn apply_frame(&self, g: &ProjFrame) -> Curve {
        let subs = g.substitutions();
        Curve {
            factors: self.factors.iter().map(|(f, m)| (f.compose(&subs), *m)).collect(),
            degree: self.degree,
        }
    }

    /// The defining polynomial in an affine chart, with the degree lost to
    /// the line at infinity of that chart.
    pub fn dehomogenize(&self, chart: Chart) -> (MultiPoly, u32) {
        let f = self.product().specialize(chart.index(), &Rational::one());
        let drop = self.degree - f.total_degree().unwrap_or(0);
        (f, drop)
    }

    /// True iff every factor is linear and all of them pass through a common
    /// point.
    pub fn is_concurrent_lines(&self) -> bool {
        if self.factors.iter().any(|(f, _)| f.homogeneous_degree() != Some(1)) {
            return false;
        }
        let rows: Vec<Vec<Rational>> = self.factors.iter().map(|(f, _)| linear_coeffs(f).to_vec()).collect();
        rank(rows) < 3
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, m)| {
                if *m == 1 {
                    format!("({p})")
                } else {
                    format!("({p})^{m}")
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Coefficients `[a, b, c]` of a linear form `a x + b y + c z`.
pub fn linear_coeffs(f: &MultiPoly) -> [Rational; 3] {
    std::array::from_fn(|i| {
        let mut e = [0; 3];
        e[i] = 1;
        f.coeff(&e).cloned().unwrap_or_else(Rational::zero)
    })
}

/// The symmetric matrix of a ternary quadratic form.
pub fn conic_matrix(f: &MultiPoly) -> [[Rational; 3]; 3] {
    let half = crate::exact::ratio(1, 2);
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut e = [0; 3];
            e[i] += 1;
            e[j] += 1;
            let c = f.coeff(&e).cloned().unwrap_or_else(Rational::zero);
            if i == j {
                c
            } else {
                c * &half
            }
        })
    })
}

/// True iff `f` is a quadratic form whose matrix has rank 3, i.e. a smooth
/// irreducible conic.
pub fn is_irreducible_conic(f: &MultiPoly) -> bool {
    f.homogeneous_degree() == Some(2) && det3(&conic_matrix(f)) != Rational::zero()
}

/// Rank of a rational matrix by fraction-free elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (top, rest) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest {
            if row[c].is_zero() {
                continue;
            }
            let k = &row[c] / &pivot_row[c];
            for (x, y) in row[c..ncols].iter_mut().zip(&pivot_row[c..ncols]) {
                *x -= y * &k;
            }
        }
        r += 1;
    }
    r
}

/// Euler's identity `x f_x + y f_y + z f_z = d f` for a form of degree `d`.
pub fn euler_identity_check(f: &MultiPoly) -> bool {
    let Some(d) = f.homogeneous_degree() else {
        return f.is_zero();
    };
    let mut lhs = MultiPoly::zero(3);
    for v in 0..3 {
        lhs = lhs.add_ref(&MultiPoly::var(v, 3).mul_ref(&f.partial(v)));
    }
    lhs == f.scale(&rat(d as i64))
}
