//! Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subpart_core::counting::{
    corollary2_bound, count_bridges_below, count_kchains, count_subpartitions, partition_count,
    partition_count_iterative,
};
use subpart_core::envelope::{
    decreasing_lower_convex_envelope, lower_convex_envelope, path_energy, DiscreteFunction,
    EnergySpec, Psi,
};
use subpart_core::maximizer::{find_maximizers, shape_report, SearchOptions};
use subpart_core::partition::{conjugate, Partition, Partitions};
use subpart_core::ratefn::{
    functional_F, lambda_star, legendre_numeric, verify_constants, vershik_curve, BETA_MAX, F_MAX,
};
use subpart_core::shape::Shape;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    check(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn all_upto(n: u32) -> impl Iterator<Item = Partition> {
    (0..=n).flat_map(Partitions::new)
}

fn c1_rate_function() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for i in 0..1000 {
        let x = -0.999 + 1.998 * f64::from(i) / 999.0;
        worst = worst.max((lambda_star(x) - legendre_numeric(x).unwrap()).abs());
    }
    within(start, Duration::from_secs(1))?;
    check(worst < 1e-9, || format!("max error {worst:e}"))?;
    // the bisection oracle itself agrees with a crude grid maximization
    for x in [-0.9, -0.3, 0.0, 0.5, 0.8] {
        let grid = common::legendre_grid(x);
        check((grid - legendre_numeric(x).unwrap()).abs() < 1e-7, || format!("grid oracle at {x}"))?;
    }
    Ok(format!("max |closed - numeric| = {worst:e}"))
}

fn c2_vershik_constants() -> Outcome {
    let start = Instant::now();
    let r = verify_constants(1e-10);
    let f = functional_F(&Shape::vershik()).unwrap();
    within(start, Duration::from_secs(5))?;
    check((f - PI / 3f64.sqrt()).abs() < 1e-6, || format!("F(f_max) = {f}"))?;
    check(r.area_residual < 1e-8, || format!("area residual {:e}", r.area_residual))?;
    check(r.log1p_residual < 1e-8, || format!("pi^2/24 residual {:e}", r.log1p_residual))?;
    check(r.phi_tanh_residual < 1e-8 && r.doubled_log1p_residual < 1e-8, || {
        format!("pi^2/12 residuals {:e} {:e}", r.phi_tanh_residual, r.doubled_log1p_residual)
    })?;
    check(r.euler_lagrange_residual < 1e-10, || {
        format!("Euler-Lagrange residual {:e}", r.euler_lagrange_residual)
    })?;
    // the closed form at the origin
    check((vershik_curve(0.0) - 2.0 * 3f64.sqrt() / PI * 2f64.ln()).abs() < 1e-15, || "f_max(0)".into())?;
    check((BETA_MAX - PI / (2.0 * 3f64.sqrt())).abs() < 1e-15, || "beta_max".into())?;
    Ok(format!(
        "|F - pi/sqrt3| = {:e}, area {:e}, (f) {:e}, (g) {:e}/{:e}, E-L {:e}",
        (f - F_MAX).abs(),
        r.area_residual,
        r.log1p_residual,
        r.phi_tanh_residual,
        r.doubled_log1p_residual,
        r.euler_lagrange_residual
    ))
}

fn c3_counting_oracles() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for lambda in all_upto(8) {
        let brute = common::subpartitions_by_scan(lambda.parts()).len();
        check(count_subpartitions(&lambda).value == BigUint::from(brute), || {
            format!("s({lambda}) != {brute}")
        })?;
        cases += 1;
    }
    for lambda in all_upto(10) {
        check(
            count_bridges_below(&lambda.profile()).value == count_subpartitions(&lambda).value,
            || format!("bridges under {lambda}"),
        )?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{cases} partitions by brute force, bridge bijection for n <= 10"))
}

fn c4_kchain_oracles() -> Outcome {
    let start = Instant::now();
    let square: Partition = "2,2".parse().unwrap();
    let v = count_kchains(&square, 2, false).unwrap().value;
    check(v == BigUint::from(20u32), || format!("(2,2) k=2 gave {v}"))?;
    for a in 1..=3u32 {
        for b in 1..=3u32 {
            let rect = Partition::new(vec![b; a as usize]).unwrap();
            for k in 1..=3 {
                let got = count_kchains(&rect, k, false).unwrap().value;
                check(got == common::macmahon(a, b, k), || format!("{a}x{b}x{k}: {got}"))?;
            }
        }
    }
    let mut cases = 0;
    for lambda in all_upto(6) {
        for k in 1..=3 {
            for strict in [false, true] {
                let got = count_kchains(&lambda, k, strict).unwrap().value;
                let want = common::chains_by_scan(lambda.parts(), k, strict);
                check(got == BigUint::from(want), || {
                    format!("{lambda} k={k} strict={strict}: {got} vs {want}")
                })?;
                cases += 1;
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("MacMahon 27 boxes, {cases} brute-force chain cases"))
}

fn c5_bound_dominance() -> Outcome {
    let start = Instant::now();
    let mut slack = f64::INFINITY;
    for lambda in all_upto(12) {
        let bound = corollary2_bound(&lambda.profile());
        let ln_s = count_subpartitions(&lambda).ln();
        check(ln_s <= bound.log_bound + 1e-9, || format!("{lambda}: {ln_s} > {}", bound.log_bound))?;
        slack = slack.min(bound.log_bound - ln_s);
        if lambda.n() <= 10 {
            let ln_c = count_kchains(&lambda, 2, false).unwrap().ln();
            check(ln_c <= 2.0 * bound.log_bound + 1e-9, || format!("{lambda}: 2-chains {ln_c}"))?;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("min log slack {slack:e}"))
}

fn c6_hardy_ramanujan() -> Outcome {
    for n in 0..=30u32 {
        let enumerated = common::partitions_of(n).len();
        check(partition_count(u64::from(n)).value == BigUint::from(enumerated), || format!("p({n})"))?;
    }
    for lambda in all_upto(12) {
        let ceiling = BigUint::from(lambda.n() + 1) * partition_count(lambda.n()).value;
        check(count_subpartitions(&lambda).value <= ceiling, || format!("s({lambda})"))?;
    }
    let memo = partition_count(100).value;
    let iter = partition_count_iterative(100).value;
    check(memo == iter && memo == BigUint::from(190_569_292u64), || format!("p(100) {memo} vs {iter}"))?;
    Ok("p(n) n <= 30, s <= (n+1)p(n), p(100) = 190569292 twice".into())
}

fn random_function(rng: &mut ChaCha8Rng) -> DiscreteFunction {
    let len = rng.gen_range(2..=12);
    let mut v = vec![rng.gen_range(-2.0..2.0)];
    for _ in 1..len {
        let last = *v.last().unwrap();
        v.push(last + rng.gen_range(-1.0..=1.0));
    }
    DiscreteFunction::new(0, v).unwrap()
}

fn push_down(rng: &mut ChaCha8Rng, f: &DiscreteFunction, pin_right: bool) -> DiscreteFunction {
    let n = f.values().len();
    let v = f
        .values()
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            if i == 0 || (pin_right && i == n - 1) || rng.gen_bool(0.3) {
                x
            } else {
                x - rng.gen_range(0.0..2.0)
            }
        })
        .collect();
    DiscreteFunction::new(0, v).unwrap()
}

fn c7_envelope_optimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_611);
    let spec = EnergySpec { psi: Psi::LambdaStar };
    for (variant, pin_right) in [("both", true), ("left", false)] {
        for t in 0..200 {
            let f = random_function(&mut rng);
            let h = if pin_right {
                lower_convex_envelope(&f)
            } else {
                decreasing_lower_convex_envelope(&f)
            };
            let g = push_down(&mut rng, &f, pin_right);
            let (jg, jh) = (path_energy(&g, spec), path_energy(&h, spec));
            check(jg >= jh - 1e-12, || format!("{variant} trial {t}: J(g) {jg} < J(h) {jh}"))?;
            // h is itself admissible and attains the infimum
            let admissible = h.values().iter().zip(f.values()).all(|(a, b)| *a <= b + 1e-12)
                && h.values()[0] == f.values()[0]
                && (!pin_right || h.values().last() == f.values().last());
            check(admissible, || format!("{variant} trial {t}: envelope not admissible"))?;
            check(path_energy(&h, spec) == jh, || format!("{variant} trial {t}: equality at g = h"))?;
        }
    }
    Ok("2 x 200 trials, zero violations".into())
}

fn c8_maximizer_ground_truth() -> Outcome {
    let start = Instant::now();
    let four = find_maximizers(4, 1).unwrap();
    let names: Vec<String> = four.maximizers.iter().map(ToString::to_string).collect();
    check(names == ["3,1", "2,1,1"] && four.max_count.value == BigUint::from(7u32), || {
        format!("n=4 gave {names:?}")
    })?;
    for n in 1..=20 {
        for k in [1, 2] {
            let r = find_maximizers(n, k).unwrap();
            for m in &r.maximizers {
                check(r.maximizers.contains(&conjugate(m)), || format!("n={n} k={k}: {m}"))?;
            }
        }
    }
    let mut prev = BigUint::from(0u32);
    for n in 1..=30 {
        let v = find_maximizers(n, 1).unwrap().max_count.value;
        check(v > prev, || format!("s_max not increasing at {n}"))?;
        prev = v;
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("s_max(30) = {prev}"))
}

fn c9_limit_shape_trend() -> Outcome {
    let opts = SearchOptions::default();
    let (mut early, mut late) = (f64::INFINITY, f64::INFINITY);
    for n in (1..=5).chain(25..=35) {
        let r = shape_report(n, 1, &opts).unwrap();
        check(r.f_envelope <= F_MAX + 1e-9, || format!("n={n}: F(h) = {}", r.f_envelope))?;
        let gap = subpart_core::hr_exponent(u64::from(n), 1) / f64::from(n).sqrt() - r.report.exponent;
        check(gap > 0.0, || format!("n={n}: exponent gap {gap}"))?;
        if n <= 5 {
            early = early.min(r.distance_profile);
        } else {
            late = late.min(r.distance_profile);
        }
    }
    check(late < early, || format!("{late} !< {early}"))?;
    Ok(format!("min d[25..35] = {late:.6} < min d[1..5] = {early:.6}"))
}

fn c10_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_subpart");
    let run = |jobs: &str| {
        std::process::Command::new(bin)
            .args(["maximize", "--n", "20", "--format", "csv", "--jobs", jobs])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run("1")?, run("8")?);
    check(a.status.success() && b.status.success(), || "maximize failed".into())?;
    check(a.stdout == b.stdout, || "CSV differs between --jobs 1 and --jobs 8".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("1 rate-function exactness", c1_rate_function),
        ("2 Vershik constants", c2_vershik_constants),
        ("3 counting oracle equivalence", c3_counting_oracles),
        ("4 k-chain oracles", c4_kchain_oracles),
        ("5 bound dominance", c5_bound_dominance),
        ("6 Hardy-Ramanujan shell", c6_hardy_ramanujan),
        ("7 envelope energy optimality", c7_envelope_optimality),
        ("8 maximizer ground truth", c8_maximizer_ground_truth),
        ("9 limit-shape trend", c9_limit_shape_trend),
        ("10 determinism", c10_determinism),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                println!("FAIL  {name}: {detail}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
