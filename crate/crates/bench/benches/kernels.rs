use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use somos_core::algebra::rat;
use somos_core::genus2::{bolza_seq, fit_somos8, tau_from_f};
use somos_core::henon_heiles::{bt_step, simulate, Branch};
use somos_core::mp::Complex;
use somos_core::solver::solve;
use somos_core::{HHParams, HHState, QuinticCurve, Somos4Problem, WeierstrassContext};

fn somos4() -> Somos4Problem {
    Somos4Problem::new(rat(1, 1), rat(1, 1), vec![rat(1, 1); 4]).unwrap()
}

fn recurrence(c: &mut Criterion) {
    let p = somos4();
    c.bench_function("somos4 run 0..100", |b| b.iter(|| black_box(&p).run(0, 100).unwrap()));
}

fn weierstrass(c: &mut Criterion) {
    let mut g = c.benchmark_group("weierstrass");
    for digits in [25u32, 50] {
        g.bench_function(format!("context {digits} digits"), |b| {
            b.iter(|| WeierstrassContext::from_rational(&rat(4, 1), &rat(-1, 1), black_box(digits)).unwrap())
        });
        let ctx = WeierstrassContext::from_rational(&rat(4, 1), &rat(-1, 1), digits).unwrap();
        let z = Complex::from_f64(0.37, 0.21, ctx.bits);
        g.bench_function(format!("sigma {digits} digits"), |b| {
            b.iter(|| ctx.sigma(black_box(&z)))
        });
        g.bench_function(format!("wp {digits} digits"), |b| {
            b.iter(|| ctx.wp(black_box(&z)).unwrap())
        });
    }
    g.finish();
}

fn solver(c: &mut Criterion) {
    let p = somos4();
    c.bench_function("solve somos4", |b| b.iter(|| solve(black_box(&p), 25).unwrap()));
    let sol = solve(&p, 25).unwrap();
    c.bench_function("closed form n = 40", |b| {
        b.iter(|| sol.closed_form(black_box(40)).unwrap())
    });
}

fn genus2(c: &mut Criterion) {
    let curve = QuinticCurve::from_ints([1, -4, 0, 0, 0]).unwrap();
    let d0 = curve
        .divisor_of_points(&[
            curve.point(rat(0, 1), rat(1, 1)).unwrap(),
            curve.point(rat(1, 1), rat(1, 1)).unwrap(),
        ])
        .unwrap();
    let p = curve.point(rat(-1, 1), rat(1, 1)).unwrap();
    let mut g = c.benchmark_group("genus2");
    g.sample_size(10);
    g.bench_function("divisor sequence -10..10", |b| {
        b.iter(|| curve.divisor_sequence(black_box(&d0), &p, -10, 10).unwrap())
    });
    let seq = bolza_seq(&curve, &d0, &p, -12, 12).unwrap();
    let t = tau_from_f(&seq, -12, 12).unwrap();
    g.bench_function("fit order-8 coefficients", |b| {
        b.iter(|| fit_somos8(black_box(&t)).unwrap())
    });
    g.finish();
}

fn henon_heiles(c: &mut Criterion) {
    let pr = HHParams::new(0.0, -1.0, 0.0);
    let st = HHState::new(1.25, 0.5, 0.125, -0.25);
    c.bench_function("hh bt step", |b| {
        b.iter(|| bt_step(black_box(&st), &pr, &0.5, 1, Branch::Continuity).unwrap())
    });
    c.bench_function("hh 100 steps", |b| {
        b.iter(|| simulate(black_box(&st), &pr, &0.5, 1, 100, Branch::Continuity).unwrap())
    });
}

criterion_group!(benches, recurrence, weierstrass, solver, genus2, henon_heiles);
criterion_main!(benches);
