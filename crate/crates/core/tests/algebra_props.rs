use proptest::prelude::*;
use somos_core::algebra::{matrix_rank, rat, solve_linear_exact, MultiPoly, Rational, UniPoly};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn multipoly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0i32..3, 0i32..3), small_rat()), 0..5).prop_map(|ts| {
        MultiPoly::from_terms(
            &["x", "y"],
            false,
            ts.into_iter().map(|((a, b), c)| (vec![a, b], c)).collect(),
        )
        .unwrap()
    })
}

fn unipoly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(small_rat(), 0..7).prop_map(UniPoly::new)
}

proptest! {
    #[test]
    fn multipoly_ring_axioms(a in multipoly(), b in multipoly(), c in multipoly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multipoly_exact_division_roundtrip(a in multipoly(), b in multipoly()) {
        prop_assume!(!b.is_zero());
        let p = &a * &b;
        prop_assert_eq!(p.exact_div(&b).unwrap(), a);
    }

    #[test]
    fn rational_field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
        prop_assert_eq!((&a + &b) * &c, &a * &c + &b * &c);
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
    }

    #[test]
    fn univariate_div_rem(a in unipoly(), b in unipoly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
    }

    #[test]
    fn multipoly_div_mod_univariate(a in unipoly(), b in unipoly()) {
        prop_assume!(!b.is_zero());
        let ma = MultiPoly::from_univariate("x", &a);
        let mb = MultiPoly::from_univariate("x", &b);
        let (q, r) = ma.div_mod(&mb).unwrap();
        prop_assert_eq!(&(&q * &mb) + &r, ma);
        let rd = r.to_univariate().unwrap().degree();
        prop_assert!(rd.is_none_or(|d| d < b.degree().unwrap()));
    }

    #[test]
    fn solve_roundtrip(entries in prop::collection::vec(-9i64..=9, 16), xs in prop::collection::vec(small_rat(), 4)) {
        let m: Vec<Vec<Rational>> = entries.chunks(4)
            .map(|r| r.iter().map(|&v| rat(v, 1)).collect())
            .collect();
        prop_assume!(matrix_rank(&m) == 4);
        let rhs: Vec<Rational> = m.iter()
            .map(|row| row.iter().zip(&xs).map(|(a, x)| a * x).sum())
            .collect();
        prop_assert_eq!(solve_linear_exact(&m, &rhs).unwrap(), xs);
    }
}
