use milnor_core::exact::{rat, MultiPoly};
use milnor_core::local::{fulton_mult, local_algebra_dim, milnor_number, AlgPoint, LocalDim, Multiplicity};
use proptest::prelude::*;

/// Random bivariate polynomial with monomials of total degree in
/// `lo..=hi`.
fn poly(lo: u32, hi: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let mono = (0..=hi, 0..=hi).prop_filter_map("degree window", move |(i, j)| {
        (lo..=hi).contains(&(i + j)).then_some([i, j, 0])
    });
    prop::collection::vec((-3i64..=3, mono), 1..=max_terms)
        .prop_map(|terms| MultiPoly::from_terms(2, terms.into_iter().map(|(c, m)| (m, rat(c)))))
}

fn origin() -> AlgPoint {
    AlgPoint::from_ints(&[0, 0])
}

fn mult(f: &MultiPoly, g: &MultiPoly, p: &AlgPoint) -> Multiplicity {
    let v = fulton_mult(f, g, p).unwrap();
    assert_eq!(v.len(), 1, "rational points do not split");
    v[0].1
}

fn mu(f: &MultiPoly, p: &AlgPoint) -> Multiplicity {
    milnor_number(f, p).unwrap()[0].1
}

/// `f(a x + b y + s, c x + d y + t)`
fn substitute(f: &MultiPoly, m: [[i64; 2]; 2], shift: [i64; 2]) -> MultiPoly {
    let row =
        |r: [i64; 2], s: i64| MultiPoly::from_int_terms(2, &[(r[0], [1, 0, 0]), (r[1], [0, 1, 0]), (s, [0, 0, 0])]);
    f.compose(&[row(m[0], shift[0]), row(m[1], shift[1])])
}

fn unimodular() -> impl Strategy<Value = [[i64; 2]; 2]> {
    prop_oneof![
        (-3i64..=3).prop_map(|k| [[1, k], [0, 1]]),
        (-3i64..=3).prop_map(|k| [[1, 0], [k, 1]]),
        Just([[0, 1], [1, 0]]),
        Just([[0, -1], [1, 0]]),
    ]
    .prop_flat_map(|a| {
        (-2i64..=2).prop_map(move |k| {
            let b = [[1, k], [0, 1]];
            [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ]
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn fulton_is_symmetric(f in poly(0, 4, 5), g in poly(0, 4, 5)) {
        prop_assert_eq!(mult(&f, &g, &origin()), mult(&g, &f, &origin()));
    }

    #[test]
    fn fulton_is_additive(f in poly(1, 3, 4), g in poly(1, 3, 4), h in poly(0, 2, 3)) {
        let o = origin();
        let (a, b, c) = (mult(&f, &g, &o), mult(&f, &h, &o), mult(&f, &g.mul_ref(&h), &o));
        match (a, b) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => prop_assert_eq!(c, Multiplicity::Finite(a + b)),
            _ => prop_assert_eq!(c, Multiplicity::Infinite),
        }
    }

    #[test]
    fn fulton_agrees_with_colength(f in poly(2, 5, 7)) {
        let (fx, fy) = (f.partial(0), f.partial(1));
        let by_fulton = mult(&fx, &fy, &origin());
        let by_colength = local_algebra_dim(&[fx, fy], 18);
        match by_fulton {
            Multiplicity::Finite(n) => prop_assert_eq!(by_colength, LocalDim::Dim(n)),
            Multiplicity::Infinite => prop_assert_eq!(by_colength, LocalDim::Exceeded),
        }
    }

    #[test]
    fn milnor_number_is_invariant_under_affine_changes(
        f in poly(2, 4, 6),
        m in unimodular(),
        shift in (-2i64..=2, -2i64..=2),
    ) {
        let base = mu(&f, &origin());
        prop_assume!(base != Multiplicity::Infinite);
        // f(g(v - p)) has the same singularity at p
        let inverse_shift = [-(m[0][0] * shift.0 + m[0][1] * shift.1), -(m[1][0] * shift.0 + m[1][1] * shift.1)];
        let moved = substitute(&f, m, inverse_shift);
        let p = AlgPoint::from_ints(&[shift.0, shift.1]);
        prop_assert_eq!(mu(&moved, &p), base);
    }

    #[test]
    fn milnor_number_detects_singularity(f in poly(1, 4, 6)) {
        let has_linear = f.terms().any(|(m, _)| m[0] + m[1] == 1);
        let m = mu(&f, &origin());
        if has_linear {
            prop_assert_eq!(m, Multiplicity::Finite(0));
        } else {
            prop_assert!(m != Multiplicity::Finite(0));
        }
    }
}

#[test]
fn named_examples() {
    let o = origin();
    let p = |t: &[(i64, [u32; 3])]| MultiPoly::from_int_terms(2, t);
    assert_eq!(
        mult(&p(&[(1, [1, 0, 0])]), &p(&[(1, [0, 1, 0])]), &o),
        Multiplicity::Finite(1)
    );
    let parabola = p(&[(1, [0, 1, 0]), (-1, [2, 0, 0])]);
    assert_eq!(mult(&parabola, &p(&[(1, [0, 1, 0])]), &o), Multiplicity::Finite(2));
    let star_a = p(&[(1, [2, 0, 0]), (-1, [0, 1, 0])]);
    let star_b = p(&[(1, [2, 0, 0]), (-2, [0, 1, 0])]);
    assert_eq!(mult(&star_a, &star_b, &o), Multiplicity::Finite(2));
    assert_eq!(mu(&p(&[(1, [1, 1, 0])]), &o), Multiplicity::Finite(1));
    assert_eq!(mu(&p(&[(1, [3, 0, 0]), (-1, [0, 2, 0])]), &o), Multiplicity::Finite(2));
    assert_eq!(
        local_algebra_dim(&[p(&[(3, [2, 0, 0])]), p(&[(2, [0, 1, 0])])], 10),
        LocalDim::Dim(2)
    );
    assert_eq!(
        local_algebra_dim(&[p(&[(2, [1, 0, 0])]), p(&[(-2, [0, 1, 0])])], 10),
        LocalDim::Dim(1)
    );
    // a common factor through the origin
    let line = p(&[(1, [1, 0, 0]), (-1, [0, 1, 0])]);
    assert_eq!(mult(&line.mul_ref(&parabola), &line, &o), Multiplicity::Infinite);
}
