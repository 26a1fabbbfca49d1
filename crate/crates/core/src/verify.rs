//! Self-verification: every module invariant re-run as a named check.
//!
//! `Fast` shrinks the exhaustive ranges so the whole suite finishes in a few
//! seconds; `Full` uses the ranges the invariants are stated for.

use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting::{
    corollary2_bound, count_bridges_below, count_kchains, count_kchains_brute,
    count_kchains_memoized, count_subpartitions, count_subpartitions_brute, partition_count,
    partition_count_iterative,
};
use crate::envelope::{
    decreasing_lower_convex_envelope, lower_convex_envelope, path_energy, DiscreteFunction,
    EnergySpec, Psi,
};
use crate::io::reports_to_csv;
use crate::maximizer::{
    crude_exponent_ceiling, find_maximizers_with, shape_report, MaximizerReport, SearchOptions,
};
use crate::partition::{conjugate, is_subpartition, profile, rescale, Partition, Partitions};
use crate::ratefn::{
    artanh, functional_F, legendre_numeric, phi, verify_constants, F_MAX,
};
use crate::shape::{AnalyticCurve, PiecewiseLinearShape, Shape};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

/// Deliberate defects for checking that the suite can fail.
#[derive(Clone, Copy, Debug, Default)]
pub struct Faults {
    /// Adds one to every closed-form `lambda_star` value inside the checks.
    pub lambda_star_off_by_one: bool,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

struct Ctx {
    level: Level,
    seed: u64,
    faults: Faults,
    jobs: usize,
    tol: f64,
}

impl Ctx {
    fn pick(&self, fast: u32, full: u32) -> u32 {
        match self.level {
            Level::Fast => fast,
            Level::Full => full,
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn lambda_star(&self, x: f64) -> f64 {
        let v = crate::ratefn::lambda_star(x);
        if self.faults.lambda_star_off_by_one {
            v + 1.0
        } else {
            v
        }
    }
}

type Outcome = std::result::Result<String, String>;
type CheckFn = fn(&Ctx) -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn partitions_upto(n: u32) -> impl Iterator<Item = Partition> {
    (0..=n).flat_map(Partitions::new)
}

/// Runs every check and returns them in a fixed order.
pub fn run(level: Level, seed: u64, faults: Faults, jobs: usize, tol: f64) -> Vec<Check> {
    let ctx = Ctx {
        level,
        seed,
        faults,
        jobs,
        tol,
    };
    let checks: Vec<(&'static str, CheckFn)> = vec![
        ("legendre-oracle", legendre_oracle),
        ("phi-derivative", phi_derivative),
        ("vershik-constants", vershik_constants),
        ("scaling-law", scaling_law),
        ("envelope-improves-F", envelope_improves_f),
        ("optimality-witness", optimality_witness),
        ("profile-invariants", profile_invariants),
        ("envelope-optimal-pinned-both", envelope_optimal_pinned_both),
        ("envelope-optimal-pinned-left", envelope_optimal_pinned_left),
        ("envelope-properties", envelope_properties),
        ("counting-brute-force", counting_brute_force),
        ("bridge-bijection", bridge_bijection),
        ("conjugation-symmetry", conjugation_symmetry),
        ("bound-dominance", bound_dominance),
        ("hardy-ramanujan-shell", hardy_ramanujan_shell),
        ("box-monotonicity", box_monotonicity),
        ("macmahon-rectangles", macmahon_rectangles),
        ("maximizer-ground-truth", maximizer_ground_truth),
        ("maximizer-conjugation", maximizer_conjugation),
        ("maximizer-growth", maximizer_growth),
        ("limit-shape-trend", limit_shape_trend),
        ("kchain-exponent", kchain_exponent),
        ("csv-determinism", csv_determinism),
    ];
    checks
        .into_iter()
        .map(|(name, f)| {
            let start = Instant::now();
            let outcome = f(&ctx);
            let seconds = start.elapsed().as_secs_f64();
            match outcome {
                Ok(detail) => Check { name, passed: true, detail, seconds },
                Err(detail) => Check { name, passed: false, detail, seconds },
            }
        })
        .collect()
}

fn legendre_oracle(ctx: &Ctx) -> Outcome {
    let mut worst = (0.0_f64, 0.0_f64);
    for i in 0..1000 {
        let x = -0.999 + 1.998 * f64::from(i) / 999.0;
        let err = (ctx.lambda_star(x) - legendre_numeric(x).map_err(|e| e.to_string())?).abs();
        if err > worst.0 {
            worst = (err, x);
        }
    }
    ensure(worst.0 < 1e-9, || format!("max error {:e} at x={}", worst.0, worst.1))?;
    Ok(format!("max error {:e}", worst.0))
}

fn phi_derivative(_: &Ctx) -> Outcome {
    let h = 1e-6;
    let mut worst = 0.0_f64;
    for i in 1..=500 {
        let x = -0.99 + 1.98 * f64::from(i) / 501.0;
        let fd = (phi(x + h).unwrap() - phi(x - h).unwrap()) / (2.0 * h);
        worst = worst.max((fd + artanh(x).unwrap()).abs());
    }
    ensure(worst < 1e-9, || format!("max |phi' + artanh| = {worst:e}"))?;
    Ok(format!("max |phi' + artanh| = {worst:e}"))
}

fn vershik_constants(ctx: &Ctx) -> Outcome {
    let r = verify_constants(ctx.tol);
    ensure(r.f_residual < 1e-6, || format!("F residual {:e}", r.f_residual))?;
    ensure(r.max_integral_residual() < 1e-8, || format!("integral residuals {r:?}"))?;
    ensure(r.euler_lagrange_residual < 1e-10, || {
        format!("Euler-Lagrange residual {:e}", r.euler_lagrange_residual)
    })?;
    Ok(format!(
        "F={:.12} residual {:e}; integrals {:e}; E-L {:e}",
        r.f_vershik,
        r.f_residual,
        r.max_integral_residual(),
        r.euler_lagrange_residual
    ))
}

/// A random partition of `n` grown one uniformly chosen corner at a time.
pub fn random_partition<R: Rng>(rng: &mut R, n: u32) -> Partition {
    let mut lambda = Partition::empty();
    for _ in 0..n {
        let mut options = lambda.add_one_box();
        let pick = rng.gen_range(0..options.len());
        lambda = options.swap_remove(pick);
    }
    lambda
}

fn random_shapes(ctx: &Ctx, salt: u64, count: usize) -> Vec<PiecewiseLinearShape> {
    let mut rng = ctx.rng(salt);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=40);
            rescale(&profile(&random_partition(&mut rng, n)), u64::from(n)).unwrap()
        })
        .collect()
}

fn scaling_law(ctx: &Ctx) -> Outcome {
    let mut worst = 0.0_f64;
    for shape in random_shapes(ctx, 1, 50) {
        let base = functional_F(&shape.clone().into()).map_err(|e| e.to_string())?;
        for alpha in [0.25, 0.5, 2.0, 4.0] {
            let scaled = functional_F(&shape.dilate(alpha).into()).map_err(|e| e.to_string())?;
            worst = worst.max((scaled - base / f64::sqrt(alpha)).abs());
        }
    }
    ensure(worst < 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:e}"))
}

fn envelope_of(shape: &PiecewiseLinearShape) -> PiecewiseLinearShape {
    // hull of the kinks; the |x| tails are already convex
    let kinks = shape.kinks();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in kinks {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (p.1 - o.1) - (p.0 - o.0) * (a.1 - o.1);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    PiecewiseLinearShape::new_unchecked(hull)
}

fn envelope_improves_f(ctx: &Ctx) -> Outcome {
    let mut min_gain = f64::INFINITY;
    for shape in random_shapes(ctx, 2, 100) {
        let f = functional_F(&shape.clone().into()).map_err(|e| e.to_string())?;
        let h = functional_F(&envelope_of(&shape).into()).map_err(|e| e.to_string())?;
        min_gain = min_gain.min(h - f);
    }
    ensure(min_gain >= -1e-12, || format!("envelope lowered F by {:e}", -min_gain))?;
    Ok(format!("min F(envelope) - F(shape) = {min_gain:e}"))
}

/// Polyline samples of the Vershik curve with a small bump, rescaled to
/// excess area one.
pub fn perturbed_vershik<R: Rng>(rng: &mut R) -> PiecewiseLinearShape {
    let center = rng.gen_range(-1.0..1.0);
    let height = rng.gen_range(-0.05..0.05);
    let steps = 128;
    let kinks: Vec<(f64, f64)> = (0..=steps)
        .map(|i| -16.0 + 32.0 * f64::from(i) / f64::from(steps))
        .map(|x: f64| {
            let bump = height * (1.0 - (x - center).abs()).max(0.0);
            let y = if x.abs() == 16.0 {
                x.abs()
            } else {
                crate::ratefn::vershik_curve(x) + bump
            };
            (x, y.max(x.abs()))
        })
        .collect();
    let raw = PiecewiseLinearShape::new_unchecked(kinks);
    raw.dilate(raw.excess_area())
}

fn optimality_witness(ctx: &Ctx) -> Outcome {
    let mut shapes: Vec<Shape> = vec![
        PiecewiseLinearShape::triangle().into(),
        PiecewiseLinearShape::abs().into(),
        Shape::vershik(),
        Shape::Analytic(AnalyticCurve::ScaledVershik { alpha: 1.5 }),
    ];
    for lambda in partitions_upto(ctx.pick(8, 12)).filter(|l| !l.is_empty()) {
        let g = profile(&lambda);
        shapes.push(rescale(&g, lambda.n()).unwrap().into());
        shapes.push(crate::maximizer::envelope_shape(&g, lambda.n()).unwrap().into());
    }
    let mut rng = ctx.rng(3);
    for _ in 0..20 {
        let p = perturbed_vershik(&mut rng);
        ensure(p.is_admissible(), || "perturbed curve left the shape space".into())?;
        shapes.push(p.into());
    }
    let mut best = f64::NEG_INFINITY;
    for s in &shapes {
        best = best.max(functional_F(s).map_err(|e| e.to_string())?);
    }
    ensure(best <= F_MAX + 1e-9, || format!("F reached {best} > pi/sqrt3"))?;
    Ok(format!("{} shapes, max F = {best:.12}", shapes.len()))
}

fn profile_invariants(ctx: &Ctx) -> Outcome {
    for lambda in partitions_upto(12) {
        let g = profile(&lambda);
        ensure(g.excess_area() == 2 * lambda.n() as i64, || format!("area of {lambda}"))?;
        ensure(g.values().windows(2).all(|w| (w[1] - w[0]).abs() == 1), || {
            format!("steps of {lambda}")
        })?;
    }
    let small: Vec<Partition> = partitions_upto(ctx.pick(6, 8)).collect();
    for lambda in &small {
        let gl = profile(lambda);
        for mu in &small {
            let gm = profile(mu);
            let dominated = (-10..=10).all(|j| gm.value(j) <= gl.value(j));
            ensure(is_subpartition(mu, lambda) == dominated, || {
                format!("order mismatch {mu} vs {lambda}")
            })?;
        }
    }
    for lambda in partitions_upto(10) {
        let (g, gc) = (profile(&lambda), profile(&conjugate(&lambda)));
        ensure((-11..=11).all(|j| gc.value(j) == g.value(-j)), || {
            format!("conjugate reflection fails for {lambda}")
        })?;
    }
    for n in 0..=ctx.pick(20, 30) {
        let listed = Partitions::new(n).count();
        ensure(BigUint::from(listed) == partition_count(u64::from(n)).value, || {
            format!("enumeration count for n={n}")
        })?;
    }
    Ok("area, step, order, conjugation, enumeration".into())
}

/// A random function with increments in `[-1, 1]` on a grid of 2..=12
/// points.
pub fn random_grid_function<R: Rng>(rng: &mut R) -> DiscreteFunction {
    let len = rng.gen_range(2..=12);
    let mut values = vec![rng.gen_range(-3.0..3.0)];
    for _ in 1..len {
        let last = *values.last().unwrap();
        values.push(last + rng.gen_range(-1.0..=1.0));
    }
    DiscreteFunction::new(rng.gen_range(-5..5), values).unwrap()
}

/// `g <= f` obtained by pushing random points of `f` down; the first point
/// is always kept, the last one only when `pin_right`.
pub fn random_minorant<R: Rng>(rng: &mut R, f: &DiscreteFunction, pin_right: bool) -> DiscreteFunction {
    let len = f.values().len();
    let values = f
        .values()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let pinned = i == 0 || (pin_right && i + 1 == len);
            if pinned || rng.gen_bool(0.4) {
                v
            } else {
                v - rng.gen_range(0.0..1.5)
            }
        })
        .collect();
    DiscreteFunction::new(f.start(), values).unwrap()
}

fn energy(ctx: &Ctx, f: &DiscreteFunction, psi: Psi) -> f64 {
    match psi {
        Psi::LambdaStar => f.increments().map(|d| ctx.lambda_star(d)).sum(),
        other => path_energy(f, EnergySpec { psi: other }),
    }
}

fn envelope_optimal(ctx: &Ctx, pin_right: bool) -> Outcome {
    let mut rng = ctx.rng(if pin_right { 4 } else { 5 });
    let psis: &[Psi] = if pin_right {
        &[Psi::LambdaStar, Psi::Square, Psi::Abs]
    } else {
        &[Psi::LambdaStar, Psi::Square]
    };
    let trials = 200;
    for t in 0..trials {
        let f = random_grid_function(&mut rng);
        let h = if pin_right {
            lower_convex_envelope(&f)
        } else {
            decreasing_lower_convex_envelope(&f)
        };
        let fv = f.values();
        let hv = h.values();
        ensure(hv.iter().zip(fv).all(|(a, b)| *a <= b + 1e-12), || format!("trial {t}: envelope above f"))?;
        ensure(hv[0] == fv[0], || format!("trial {t}: left pin"))?;
        if pin_right {
            ensure(hv.last() == fv.last(), || format!("trial {t}: right pin"))?;
        }
        let g = random_minorant(&mut rng, &f, pin_right);
        for &psi in psis {
            // the decreasing variant needs psi minimized at 0, which all are
            let jh = energy(ctx, &h, psi);
            let jg = energy(ctx, &g, psi);
            ensure(jg >= jh - 1e-12, || {
                format!("trial {t}: J(g)={jg} < J(h)={jh} for {psi:?}")
            })?;
            ensure(energy(ctx, &h, psi) == jh, || format!("trial {t}: equality at g = h"))?;
        }
    }
    Ok(format!("{trials} trials, no violations"))
}

fn envelope_optimal_pinned_both(ctx: &Ctx) -> Outcome {
    envelope_optimal(ctx, true)
}

fn envelope_optimal_pinned_left(ctx: &Ctx) -> Outcome {
    envelope_optimal(ctx, false)
}

fn envelope_properties(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng(6);
    for t in 0..200 {
        let f = random_grid_function(&mut rng);
        let h = lower_convex_envelope(&f);
        let hh = lower_convex_envelope(&h);
        ensure(hh.values().iter().zip(h.values()).all(|(a, b)| (a - b).abs() < 1e-12), || {
            format!("trial {t}: not idempotent")
        })?;
        let bumped: Vec<f64> = f.values().iter().map(|v| v + rng.gen_range(0.0..1.0)).collect();
        let f_up = DiscreteFunction::new(f.start(), bumped).unwrap();
        let h_up = lower_convex_envelope(&f_up);
        ensure(h.values().iter().zip(h_up.values()).all(|(a, b)| *a <= b + 1e-12), || {
            format!("trial {t}: not monotone")
        })?;
        // Jensen on each linear stretch of h
        let verts = f.hull_vertices();
        for w in verts.windows(2) {
            let seg = |d: &DiscreteFunction| -> f64 {
                d.values()[w[0]..=w[1]].windows(2).map(|p| ctx.lambda_star(p[1] - p[0])).sum()
            };
            ensure(seg(&f) >= seg(&h) - 1e-12, || format!("trial {t}: Jensen step"))?;
        }
    }
    Ok("idempotence, monotonicity, Jensen step over 200 trials".into())
}

fn counting_brute_force(ctx: &Ctx) -> Outcome {
    let mut cases = 0;
    for lambda in partitions_upto(ctx.pick(6, 8)) {
        ensure(count_subpartitions(&lambda).value == count_subpartitions_brute(&lambda).value, || {
            format!("subpartitions of {lambda}")
        })?;
        for k in 1..=3 {
            for strict in [false, true] {
                let fast = count_kchains(&lambda, k, strict).map_err(|e| e.to_string())?.value;
                let brute = count_kchains_brute(&lambda, k, strict).map_err(|e| e.to_string())?.value;
                let memo = count_kchains_memoized(&lambda, k, strict).map_err(|e| e.to_string())?.value;
                ensure(fast == brute && fast == memo, || {
                    format!("{lambda} k={k} strict={strict}: {fast} / {brute} / {memo}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} chain cases agree"))
}

fn bridge_bijection(_: &Ctx) -> Outcome {
    for lambda in partitions_upto(10) {
        ensure(count_bridges_below(&profile(&lambda)).value == count_subpartitions(&lambda).value, || {
            format!("bridge count differs for {lambda}")
        })?;
    }
    Ok("all partitions of n <= 10".into())
}

fn conjugation_symmetry(ctx: &Ctx) -> Outcome {
    for lambda in partitions_upto(ctx.pick(8, 10)) {
        let c = conjugate(&lambda);
        ensure(count_subpartitions(&lambda).value == count_subpartitions(&c).value, || {
            format!("s({lambda}) != s({c})")
        })?;
        for strict in [false, true] {
            let a = count_kchains(&lambda, 2, strict).map_err(|e| e.to_string())?.value;
            let b = count_kchains(&c, 2, strict).map_err(|e| e.to_string())?.value;
            ensure(a == b, || format!("2-chains of {lambda} vs {c}"))?;
        }
    }
    Ok("counts invariant under conjugation".into())
}

fn bound_dominance(ctx: &Ctx) -> Outcome {
    let mut slack = f64::INFINITY;
    for lambda in partitions_upto(12) {
        let bound = corollary2_bound(&profile(&lambda));
        let s = count_subpartitions(&lambda).ln();
        ensure(s <= bound.log_bound + 1e-9, || format!("{lambda}: ln s = {s} > {}", bound.log_bound))?;
        slack = slack.min(bound.log_bound - s);
        if lambda.n() <= u64::from(ctx.pick(8, 10)) {
            let c = count_kchains(&lambda, 2, false).map_err(|e| e.to_string())?.ln();
            ensure(c <= bound.pow(2).log_bound + 1e-9, || format!("{lambda}: 2-chains exceed bound^2"))?;
        }
    }
    Ok(format!("min log slack {slack:e}"))
}

fn hardy_ramanujan_shell(_: &Ctx) -> Outcome {
    for n in 0..=30u32 {
        ensure(
            BigUint::from(Partitions::new(n).count()) == partition_count(u64::from(n)).value,
            || format!("p({n})"),
        )?;
    }
    for lambda in partitions_upto(12) {
        let ceiling = BigUint::from(lambda.n() + 1) * partition_count(lambda.n()).value;
        ensure(count_subpartitions(&lambda).value <= ceiling, || format!("s({lambda}) > (n+1)p(n)"))?;
    }
    let a = partition_count(100).value;
    let b = partition_count_iterative(100).value;
    ensure(a == b && a == BigUint::from(190_569_292u64), || format!("p(100): {a} vs {b}"))?;
    Ok("p(100) = 190569292 by both recurrences".into())
}

fn box_monotonicity(_: &Ctx) -> Outcome {
    for lambda in partitions_upto(10) {
        let s = count_subpartitions(&lambda).value;
        for bigger in lambda.add_one_box() {
            ensure(count_subpartitions(&bigger).value > s, || format!("{lambda} -> {bigger}"))?;
        }
    }
    Ok("adding a box always increases s".into())
}

/// `prod_{i,j,l} (i+j+l-1)/(i+j+l-2)` over the `a x b x c` box.
pub fn macmahon(a: u32, b: u32, c: u32) -> BigUint {
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 1..=a {
        for j in 1..=b {
            for l in 1..=c {
                num *= i + j + l - 1;
                den *= i + j + l - 2;
            }
        }
    }
    num / den
}

fn macmahon_rectangles(_: &Ctx) -> Outcome {
    for a in 1..=3u32 {
        for b in 1..=3u32 {
            let rect = Partition::new(vec![b; a as usize]).unwrap();
            for k in 1..=3u32 {
                let got = count_kchains(&rect, k, false).map_err(|e| e.to_string())?.value;
                ensure(got == macmahon(a, b, k), || format!("{a}x{b} k={k}: {got}"))?;
            }
        }
    }
    Ok("a, b, k <= 3".into())
}

fn opts(ctx: &Ctx) -> SearchOptions {
    SearchOptions {
        jobs: ctx.jobs,
        ..Default::default()
    }
}

fn maximizer_ground_truth(ctx: &Ctx) -> Outcome {
    let r = find_maximizers_with(4, 1, &opts(ctx)).map_err(|e| e.to_string())?;
    let names: Vec<String> = r.maximizers.iter().map(ToString::to_string).collect();
    ensure(names == ["3,1", "2,1,1"] && r.max_count.value == BigUint::from(7u32), || {
        format!("got {names:?} with {}", r.max_count.value)
    })?;
    Ok("n=4: {(3,1), (2,1,1)} with 7".into())
}

fn maximizer_conjugation(ctx: &Ctx) -> Outcome {
    for k in [1, 2] {
        for n in 1..=ctx.pick(12, 20) {
            let r = find_maximizers_with(n, k, &opts(ctx)).map_err(|e| e.to_string())?;
            for m in &r.maximizers {
                ensure(r.maximizers.contains(&conjugate(m)), || {
                    format!("n={n} k={k}: conjugate of {m} missing")
                })?;
            }
        }
    }
    Ok("argmax sets closed under conjugation".into())
}

fn table(ctx: &Ctx, ns: impl Iterator<Item = u32>) -> std::result::Result<Vec<MaximizerReport>, String> {
    ns.map(|n| find_maximizers_with(n, 1, &opts(ctx)).map_err(|e| e.to_string()))
        .collect()
}

fn maximizer_growth(ctx: &Ctx) -> Outcome {
    let reports = table(ctx, 1..=ctx.pick(20, 30))?;
    for w in reports.windows(2) {
        ensure(w[0].max_count.value < w[1].max_count.value, || {
            format!("s_max not increasing at n={}", w[1].n)
        })?;
    }
    for r in &reports {
        let ceiling = crude_exponent_ceiling(r.n);
        ensure(r.exponent > 0.0 && r.exponent <= ceiling + 1e-12, || {
            format!("n={}: exponent {} outside (0, {ceiling}]", r.n, r.exponent)
        })?;
        ensure(r.exponent_gap() > 0.0, || format!("n={}: nonpositive exponent gap", r.n))?;
    }
    Ok(format!("s_max increasing up to n={}", reports.len()))
}

fn limit_shape_trend(ctx: &Ctx) -> Outcome {
    let o = opts(ctx);
    let mut early = f64::INFINITY;
    let mut late = f64::INFINITY;
    for n in (1..=5).chain(25..=35) {
        let r = shape_report(n, 1, &o).map_err(|e| e.to_string())?;
        ensure(r.f_envelope <= F_MAX + 1e-9, || format!("n={n}: F(h) = {}", r.f_envelope))?;
        if n <= 5 {
            early = early.min(r.distance_profile);
        } else {
            late = late.min(r.distance_profile);
        }
    }
    ensure(late < early, || format!("late {late} !< early {early}"))?;
    Ok(format!("min d over [25,35] = {late:.6} < min d over [1,5] = {early:.6}"))
}

fn kchain_exponent(ctx: &Ctx) -> Outcome {
    let mut same = 0;
    let top = ctx.pick(14, 20);
    for n in 1..=top {
        let r2 = find_maximizers_with(n, 2, &opts(ctx)).map_err(|e| e.to_string())?;
        let ceiling = 2.0 * crude_exponent_ceiling(n);
        ensure(r2.exponent <= ceiling + 1e-12, || format!("n={n}: k=2 exponent above ceiling"))?;
        let r1 = find_maximizers_with(n, 1, &opts(ctx)).map_err(|e| e.to_string())?;
        if r1.maximizers == r2.maximizers {
            same += 1;
        }
    }
    Ok(format!("k=2 argmax equals k=1 argmax for {same}/{top} values of n (recorded only)"))
}

fn csv_determinism(_: &Ctx) -> Outcome {
    let render = |jobs| -> std::result::Result<String, String> {
        let o = SearchOptions { jobs, ..Default::default() };
        let r = find_maximizers_with(20, 1, &o).map_err(|e| e.to_string())?;
        reports_to_csv(&[r]).map_err(|e| e.to_string())
    };
    let (a, b) = (render(1)?, render(8)?);
    ensure(a == b, || "CSV differs between 1 and 8 workers".into())?;
    Ok("n=20 CSV identical for 1 and 8 workers".into())
}
