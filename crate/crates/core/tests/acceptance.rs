//! Exit criteria. Every check is exact; runtime budgets are wall-clock limits
//! on the named computation.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use dtseries::formulas::{
    cheah_series, dt_invariant_nm1, goettsche_euler_direct, hilb_kernel, im1_euler_direct, incidence_euler_direct,
    moduli_im1_series,
};
use dtseries::geometry::{e_polynomial, euler_number, registry_lookup, REGISTRY_SURFACES};
use dtseries::local_hom::{hom_dimension, MonomialIdeal};
use dtseries::oracles::{colored_partitions_count, nested_colored_count};
use dtseries::series::{series_factor, series_product};
use dtseries::{FibrationSpec, HodgeDiamond, TruncatedSeries};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const GENERA: [u64; 3] = [0, 1, 2];

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed < budget, || format!("took {elapsed:?}, budget {budget:?}"))
}

fn fibrations() -> Vec<(String, FibrationSpec)> {
    let mut out = Vec::new();
    for name in REGISTRY_SURFACES {
        let entry = registry_lookup(name).unwrap();
        for g in GENERA {
            out.push((format!("{name}/g{g}"), FibrationSpec::over_registry(&entry, g).unwrap()));
        }
    }
    out
}

fn dt_vanishing() -> Check {
    let start = Instant::now();
    let q_max = 12;
    let mut checked = 0;
    for name in ["k3", "abelian"] {
        let x = FibrationSpec::over_registry(&registry_lookup(name).unwrap(), 1).unwrap();
        let series = moduli_im1_series(&x, q_max).map_err(|e| e.to_string())?;
        ensure(series.eval_one().iter().all(|c| *c == BigInt::from(0)), || {
            format!("{name}: chi(I_m1) not identically zero up to q^{q_max}")
        })?;
        for m in 0..=10 {
            let n = dt_invariant_nm1(&x, m).map_err(|e| e.to_string())?;
            ensure(n == BigInt::from(0), || format!("{name}: N_{{{m},1}} = {n}"))?;
            checked += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{checked} invariants are 0 in {:?}", start.elapsed()))
}

fn hodge_anchor() -> Check {
    for name in REGISTRY_SURFACES {
        let s = registry_lookup(name).unwrap().diamond;
        let cheah = cheah_series(&s, 4).map_err(|e| e.to_string())?;
        ensure(cheah.coeffs()[1] == e_polynomial(&s), || format!("{name}: incidence q^1 != e(S)"))?;
    }
    for (label, x) in fibrations() {
        let series = moduli_im1_series(&x, 4).map_err(|e| e.to_string())?;
        let expected = &e_polynomial(&HodgeDiamond::curve(x.fiber_genus())) * &e_polynomial(x.base());
        ensure(series.coeffs()[1] == expected, || {
            format!("{label}: q^1 is {}, expected {expected}", series.coeffs()[1])
        })?;
    }
    Ok(format!("{} fibrations and {} surfaces", fibrations().len(), REGISTRY_SURFACES.len()))
}

fn euler_oracles() -> Check {
    let start = Instant::now();
    let m_max = 6u32;
    for n in 1..=4usize {
        let surface = HodgeDiamond::formal_surface_with_euler(n as i64);
        let hilb = hilb_kernel(&surface, m_max as usize).map_err(|e| e.to_string())?.eval_one();
        let incidence = cheah_series(&surface, m_max as usize + 1).map_err(|e| e.to_string())?.eval_one();
        for m in 0..=m_max {
            let colored = colored_partitions_count(n, m);
            let nested = nested_colored_count(n, m);
            ensure(hilb[m as usize] == BigInt::from(colored), || {
                format!("N={n} m={m}: hilb {} vs colored {colored}", hilb[m as usize])
            })?;
            ensure(incidence[m as usize + 1] == BigInt::from(nested), || {
                format!("N={n} m={m}: incidence {} vs nested {nested}", incidence[m as usize + 1])
            })?;
        }
    }
    let p2 = hilb_kernel(&HodgeDiamond::projective_plane(), 3).unwrap().eval_one();
    let spot: Vec<BigInt> = [1, 3, 9, 22].into_iter().map(BigInt::from).collect();
    ensure(p2 == spot, || format!("chi = 3 spot values {p2:?}"))?;
    ensure(nested_colored_count(1, 1) == 2, || "nested(1,1) != 2".into())?;
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("N in 1..=4, m in 0..={m_max} in {:?}", start.elapsed()))
}

fn blow_up_euler() -> Check {
    for (label, x) in fibrations() {
        let euler = moduli_im1_series(&x, 3).map_err(|e| e.to_string())?.eval_one();
        let chi_x = BigInt::from(2 - 2 * x.fiber_genus() as i64) * euler_number(x.base());
        let expected = &chi_x * (BigInt::from(1) + euler_number(x.base()));
        ensure(euler[2] == expected, || format!("{label}: q^2 is {}, expected {expected}", euler[2]))?;
    }
    Ok(format!("{} fibrations", fibrations().len()))
}

fn specialization_consistency() -> Check {
    let q_max = 12;
    let mut series_checked = 0;
    for name in REGISTRY_SURFACES {
        let s = registry_lookup(name).unwrap().diamond;
        let chi = euler_number(&s);
        let hilb = hilb_kernel(&s, q_max).map_err(|e| e.to_string())?.eval_one();
        ensure(hilb == goettsche_euler_direct(&chi, q_max), || format!("{name}: hilb"))?;
        let incidence = cheah_series(&s, q_max).map_err(|e| e.to_string())?.eval_one();
        ensure(incidence == incidence_euler_direct(&chi, &chi, q_max), || format!("{name}: incidence"))?;
        series_checked += 2;
    }
    for (label, x) in fibrations() {
        let im1 = moduli_im1_series(&x, q_max).map_err(|e| e.to_string())?.eval_one();
        ensure(im1 == im1_euler_direct(&x, q_max), || format!("{label}: im1"))?;
        series_checked += 1;
    }
    Ok(format!("{series_checked} series agree through q^{q_max}"))
}

fn local_tangent_jump() -> Check {
    let start = Instant::now();
    let curve = MonomialIdeal::curve();
    let point = MonomialIdeal::curve_with_embedded_point();
    for d in 1..=8u32 {
        let c = hom_dimension(&curve, d).map_err(|e| e.to_string())?;
        let p = hom_dimension(&point, d).map_err(|e| e.to_string())?;
        let (cd, pd) = (2 * d as usize + 2, 10 + 2 * d as usize);
        ensure(c.dimension == cd, || format!("D={d}: curve dim {} != {cd}", c.dimension))?;
        ensure(p.dimension == pd, || format!("D={d}: point dim {} != {pd}", p.dimension))?;
        for sol in [&c, &p] {
            ensure(sol.rank + sol.dimension == sol.unknowns, || format!("D={d}: rank + nullity"))?;
            ensure(sol.first_violation().is_none(), || format!("D={d}: syzygy violated"))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("D in 1..=8 in {:?}", start.elapsed()))
}

fn run_property<S: Strategy>(name: &str, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: 64,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn invariant_suites() -> Check {
    for name in REGISTRY_SURFACES.iter().chain(["point", "curve(0)", "curve(1)", "curve(3)"].iter()) {
        let d = registry_lookup(name).map_err(|e| e.to_string())?.diamond;
        HodgeDiamond::from_json(&d.to_json()).map_err(|e| format!("{name}: {e}"))?;
    }
    for name in REGISTRY_SURFACES {
        let s = registry_lookup(name).unwrap().diamond;
        ensure(hilb_kernel(&s, 8).unwrap().is_st_symmetric(), || format!("{name}: hilb asymmetric"))?;
        ensure(cheah_series(&s, 8).unwrap().is_st_symmetric(), || format!("{name}: incidence asymmetric"))?;
    }
    for (label, x) in fibrations() {
        ensure(moduli_im1_series(&x, 8).unwrap().is_st_symmetric(), || format!("{label}: im1 asymmetric"))?;
    }
    run_property("series ring axioms", (arb_series(), arb_series(), arb_series()), |(a, b, c)| {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        Ok(())
    })?;
    run_property("poly ring axioms", (arb_poly(), arb_poly(), arb_poly()), |(a, b, c)| {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).eval_one(), a.eval_one() * b.eval_one());
        Ok(())
    })?;
    run_property("inverse factor", (arb_factor(), 0usize..10), |(f, q_max)| {
        let g = series_factor(f.s_exp, f.t_exp, f.q_exp, f.exponent, q_max);
        let h = series_factor(f.s_exp, f.t_exp, f.q_exp, -f.exponent, q_max);
        prop_assert_eq!(g.mul(&h).unwrap(), TruncatedSeries::one(q_max));
        Ok(())
    })?;
    run_property("product symmetry", prop::collection::vec(arb_factor(), 0..5), |factors| {
        let swapped: Vec<_> = factors
            .iter()
            .map(|f| dtseries::ProductFactor::new(f.t_exp, f.s_exp, f.q_exp, f.exponent))
            .collect();
        prop_assert_eq!(series_product(&swapped, 6), series_product(&factors, 6).swap_st());
        Ok(())
    })?;
    run_property("rank + nullity", (arb_bounded_ideal(), 0u32..4), |(ideal, d)| {
        let sol = hom_dimension(&ideal, d).unwrap();
        prop_assert_eq!(sol.rank + sol.dimension, sol.unknowns);
        prop_assert_eq!(sol.basis_rank(), sol.dimension);
        Ok(())
    })?;
    Ok("registry, symmetry, ring axioms, inverse factors, solver accounting".into())
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("AC1 DT vanishing N_{m,1} = 0, m <= 10", dt_vanishing),
        ("AC2 q^1 Hodge anchor of incidence and I_{m,1} series", hodge_anchor),
        ("AC3 Euler coefficients equal partition enumeration", euler_oracles),
        ("AC4 q^2 Euler coefficient chi(X)(1 + chi(S))", blow_up_euler),
        ("AC5 s = t = 1 specialization equals integer products", specialization_consistency),
        ("AC6 local tangent dimensions 2D+2 and 10+2D", local_tangent_jump),
        ("AC7 invariant suites", invariant_suites),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
