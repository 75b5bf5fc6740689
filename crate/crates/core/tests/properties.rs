use proptest::prelude::*;
use somos_core::algebra::rat;
use somos_core::henon_heiles::{bt_step, h1, h2, spectral_curve, spectral_curve_from_integrals, Branch};
use somos_core::mp::Complex;
use somos_core::solver::solve;
use somos_core::{HHParams, HHState, QuinticCurve, Rational, Somos4Problem, WeierstrassContext};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    small_rat().prop_filter("nonzero", |r| *r != rat(0, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn somos4_windows_agree(a in nonzero_rat(), b in small_rat(), s in prop::collection::vec(nonzero_rat(), 4)) {
        let p = Somos4Problem::new(a, b, s).unwrap();
        if let (Ok(wide), Ok(narrow)) = (p.run(-4, 10), p.run(0, 8)) {
            prop_assert_eq!(wide.slice(0, 8).unwrap(), narrow);
        }
    }

    #[test]
    fn gauge_preserves_the_recurrence(
        s in prop::collection::vec(nonzero_rat(), 4),
        g in nonzero_rat(),
        h in nonzero_rat(),
    ) {
        let p = Somos4Problem::new(rat(1, 1), rat(1, 1), s).unwrap();
        let Ok(w) = p.run(0, 10) else { return Ok(()); };
        let w = w.gauge(&g, &h);
        let q = Somos4Problem::new(rat(1, 1), rat(1, 1), w.slice(0, 3).unwrap().terms).unwrap();
        prop_assert_eq!(q.run(0, 10).unwrap(), w);
    }

    #[test]
    fn spectral_curve_is_written_through_the_integrals(
        a in small_rat(), c in small_rat(), m in small_rat(),
        q1 in nonzero_rat(), q2 in small_rat(), p1 in small_rat(), p2 in small_rat(),
    ) {
        let pr = HHParams::new(a, c, m);
        let st = HHState::new(q1, q2, p1, p2);
        let f = spectral_curve(&st, &pr).unwrap();
        let g = spectral_curve_from_integrals(&h1(&st, &pr).unwrap(), &h2(&st, &pr).unwrap(), &pr);
        prop_assert_eq!(f, g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn backlund_step_preserves_integrals_and_inverts(
        q1 in 0.3f64..2.0, q2 in -1.0f64..1.0, p1 in -1.0f64..1.0, p2 in -1.0f64..1.0,
        a in -0.5f64..0.5, c in -1.0f64..1.0, m in 0.0f64..0.5, lambda in -2.0f64..2.0,
    ) {
        let pr = HHParams::new(a, c, m);
        let st = HHState::new(q1, q2, p1, p2);
        let Ok((next, info)) = bt_step(&st, &pr, &lambda, 1, Branch::Continuity) else {
            return Ok(());
        };
        let scale = 1.0 + next.to_f64().iter().fold(0.0f64, |s, x| s.max(x.abs())).powi(4);
        prop_assume!(scale < 1e6);
        prop_assert!(info.lax_residual < 1e-8 * scale);
        let (e1, e2) = (h1(&st, &pr).unwrap(), h2(&st, &pr).unwrap());
        prop_assert!((h1(&next, &pr).unwrap() - e1).abs() < 1e-8 * scale * (1.0 + e1.abs()));
        prop_assert!((h2(&next, &pr).unwrap() - e2).abs() < 1e-8 * scale * (1.0 + e2.abs()));
        if let Ok((back, _)) = bt_step(&next, &pr, &lambda, -1, Branch::Continuity) {
            for (x, y) in back.to_f64().iter().zip(st.to_f64()) {
                prop_assert!((x - y).abs() < 1e-7 * scale, "{} vs {}", x, y);
            }
        }
    }
}

fn bolza() -> QuinticCurve {
    QuinticCurve::from_ints([1, -4, 0, 0, 0]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobian_group_law(n in -5i64..=5, m in -5i64..=5) {
        let c = bolza();
        let d = c
            .divisor_of_points(&[c.point(rat(0, 1), rat(1, 1)).unwrap(), c.point(rat(1, 1), rat(1, 1)).unwrap()])
            .unwrap();
        let dn = c.mul(&d, n).unwrap();
        let dm = c.mul(&d, m).unwrap();
        prop_assert_eq!(c.add(&dn, &dm).unwrap(), c.mul(&d, n + m).unwrap());
        prop_assert_eq!(c.add(&dn, &dm).unwrap(), c.add(&dm, &dn).unwrap());
        prop_assert!(c.add(&dn, &c.neg(&dn)).unwrap().is_identity());
        prop_assert!(c.check(&dn).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wp_is_even_and_periodic(a in 0.05f64..0.95, b in 0.05f64..0.95) {
        let ctx = WeierstrassContext::from_rational(&rat(4, 1), &rat(-1, 1), 25).unwrap();
        let p = ctx.bits;
        let (w1, w3) = (ctx.omega1.to_c64(), ctx.omega3.to_c64());
        let z = Complex::from_c64(2.0 * a * w1 + 2.0 * b * w3, p);
        let wp = ctx.wp(&z).unwrap();
        let minus = ctx.wp(&Complex::from_c64(-(2.0 * a * w1 + 2.0 * b * w3), p)).unwrap();
        let shifted = ctx.wp(&(&z + &Complex::from_c64(2.0 * w1, p))).unwrap();
        let scale = 1.0 + wp.abs().to_f64();
        prop_assert!((&wp - &minus).abs().to_f64() < 1e-12 * scale);
        prop_assert!((&wp - &shifted).abs().to_f64() < 1e-12 * scale);
        let ode = ctx.ode_residual(&z).unwrap().abs().to_f64();
        prop_assert!(ode < 1e-15 * (1.0 + ctx.wp_prime(&z).unwrap().abs().to_f64().powi(2)));
    }

    #[test]
    fn closed_form_reproduces_integer_sequences(
        a in 1i64..=3, b in 1i64..=3, s in prop::collection::vec(1i64..=3, 4),
    ) {
        let seeds: Vec<Rational> = s.iter().map(|&k| rat(k, 1)).collect();
        let p = Somos4Problem::new(rat(a, 1), rat(b, 1), seeds).unwrap();
        let Ok(sol) = solve(&p, 30) else { return Ok(()); };
        let w = p.run(0, 12).unwrap();
        for (n, t) in w.iter() {
            let v = sol.closed_form(n).unwrap();
            let err = somos_core::solver::relative_error(&v.value, t);
            prop_assert!(err < 1e-10, "n = {}: relative error {}", n, err);
        }
    }
}
