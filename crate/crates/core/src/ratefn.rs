//! Rate-function machinery of the simple symmetric random walk and the
//! shape functional built from it.
//!
//! For `+-1` steps the cumulant generating function is `log cosh t`, its
//! Legendre transform `lambda_star` has a closed form on `[-1, 1]`, and
//! `phi = log 2 - lambda_star` is the per-unit-length growth rate of lattice
//! paths with a prescribed macroscopic slope. The functional
//! `F(h) = integral of phi(h'(x)) dx` is maximized over the admissible shapes
//! by the Vershik curve, with maximum `pi / sqrt(3)`.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{adaptive_simpson, DEFAULT_TOLERANCE};
use crate::shape::{AnalyticCurve, Shape, LIPSCHITZ_SLACK};

/// Decay rate of the Vershik curve, `pi / (2 sqrt 3)`.
pub const BETA_MAX: f64 = PI / (2.0 * 1.732_050_807_568_877_2);

/// Height of the Vershik curve at the origin, `log 2 / BETA_MAX`.
pub const D_MAX: f64 = LN_2 / BETA_MAX;

/// `integral of (log(2 cosh x) - |x|) dx = pi^2 / 12`.
pub const ALPHA: f64 = PI * PI / 12.0;

/// Maximum of `F` over admissible shapes, `pi / sqrt 3`.
pub const F_MAX: f64 = PI / 1.732_050_807_568_877_2;

/// Tail cutoff (in units of `u = BETA_MAX x`) for every Vershik-curve
/// integral. The integrands decay like `u e^{-2u}`, far below any working
/// tolerance at 40.
pub const TAIL_CUTOFF: f64 = 40.0;

/// Guard band used when evaluating `artanh` near `+-1`.
pub const ARTANH_GUARD: f64 = 1e-15;

/// `log cosh t`, written as `|t| + ln((1 + e^{-2|t|}) / 2)` so that large
/// arguments do not overflow.
pub fn lambda_cgf(t: f64) -> f64 {
    let a = t.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

/// Legendre transform of [`lambda_cgf`]; `+inf` outside `[-1, 1]` and
/// `log 2` at the endpoints (`0 ln 0 = 0`).
pub fn lambda_star(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let a = x.abs();
    if a > 1.0 {
        return f64::INFINITY;
    }
    if a == 1.0 {
        return LN_2;
    }
    0.5 * (1.0 + a) * a.ln_1p() + 0.5 * (1.0 - a) * (-a).ln_1p()
}

/// `log 2 - lambda_star(x)` on `[-1, 1]`.
pub fn phi(x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() > 1.0 {
        return Err(Error::Domain(format!("phi undefined at {x}")));
    }
    Ok(LN_2 - lambda_star(x))
}

/// Inverse hyperbolic tangent, `(1/2) ln((1 + x) / (1 - x))`.
pub fn artanh(x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() >= 1.0 - ARTANH_GUARD {
        return Err(Error::Domain(format!("artanh undefined at {x}")));
    }
    Ok(0.5 * (x.ln_1p() - (-x).ln_1p()))
}

/// `phi'(x) = -artanh(x)` on the open interval.
pub fn phi_prime(x: f64) -> Result<f64> {
    artanh(x).map(|v| -v)
}

/// Independent Legendre-transform oracle: solves `tanh t = x` by bisection
/// and evaluates `t x - log cosh t`.
pub fn legendre_numeric(x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() >= 1.0 {
        return Err(Error::Domain(format!("legendre_numeric needs |x| < 1, got {x}")));
    }
    let (mut lo, mut hi) = (-40.0_f64, 40.0_f64);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if mid.tanh() < x {
            lo = mid;
        } else {
            hi = mid;
        }
        if mid == lo && mid == hi {
            break;
        }
    }
    let t = 0.5 * (lo + hi);
    Ok(t * x - lambda_cgf(t))
}

/// Vershik curve `(2 sqrt 3 / pi) log(2 cosh(pi x / (2 sqrt 3)))`, evaluated
/// as `|x| + log(1 + e^{-2 beta |x|}) / beta`.
pub fn vershik_curve(x: f64) -> f64 {
    x.abs() + vershik_excess(x)
}

/// `vershik_curve(x) - |x|`.
pub fn vershik_excess(x: f64) -> f64 {
    (-2.0 * BETA_MAX * x.abs()).exp().ln_1p() / BETA_MAX
}

/// Derivative of the Vershik curve, `tanh(BETA_MAX x)`.
pub fn vershik_slope(x: f64) -> f64 {
    (BETA_MAX * x).tanh()
}

/// `F(shape) = integral of phi(shape')`.
///
/// Piecewise-linear shapes are summed exactly over their pieces; analytic
/// shapes are integrated by adaptive Simpson on the truncated line.
#[allow(non_snake_case)]
pub fn functional_F(shape: &Shape) -> Result<f64> {
    functional_f_with_tolerance(shape, DEFAULT_TOLERANCE)
}

pub fn functional_f_with_tolerance(shape: &Shape, tol: f64) -> Result<f64> {
    match shape {
        Shape::PiecewiseLinear(pl) => {
            let mut total = 0.0;
            for seg in pl.segments() {
                let slope = seg.slope();
                if slope.abs() > 1.0 + LIPSCHITZ_SLACK {
                    return Err(Error::Domain(format!("slope {slope} exceeds 1")));
                }
                total += seg.width() * phi(slope.clamp(-1.0, 1.0))?;
            }
            Ok(total)
        }
        Shape::Analytic(AnalyticCurve::ScaledVershik { alpha }) => {
            // substitute u = BETA_MAX sqrt(alpha) x; integrand even in u
            let half = integrate_phi_tanh(tol);
            Ok(2.0 * half / (BETA_MAX * alpha.sqrt()))
        }
    }
}

fn phi_tanh(u: f64) -> f64 {
    // tanh u lies in [-1, 1] for every finite u
    LN_2 - lambda_star(u.tanh())
}

/// `integral_0^inf phi(tanh u) du`, truncated at [`TAIL_CUTOFF`].
pub fn integrate_phi_tanh(tol: f64) -> f64 {
    adaptive_simpson(phi_tanh, 0.0, TAIL_CUTOFF, tol)
}

/// `integral_0^inf log(1 + e^{-2x}) dx`, truncated at [`TAIL_CUTOFF`].
pub fn integrate_log1p_exp(tol: f64) -> f64 {
    adaptive_simpson(|x: f64| (-2.0 * x).exp().ln_1p(), 0.0, TAIL_CUTOFF, tol)
}

/// `integral of (vershik_curve(x) - |x|) dx` over the line.
pub fn vershik_area(tol: f64) -> f64 {
    let cutoff = TAIL_CUTOFF / BETA_MAX;
    2.0 * adaptive_simpson(vershik_excess, 0.0, cutoff, tol)
}

/// Five-point central difference of the closed-form Vershik curve.
pub fn vershik_slope_numeric(x: f64) -> f64 {
    const H: f64 = 1e-3;
    let f = |t: f64| vershik_curve(t);
    (-f(x + 2.0 * H) + 8.0 * f(x + H) - 8.0 * f(x - H) + f(x - 2.0 * H)) / (12.0 * H)
}

/// Residuals of the closed-form constants of the Vershik curve.
#[derive(Clone, Debug, Serialize)]
pub struct ConstantsReport {
    /// `F` of the Vershik curve by quadrature.
    pub f_vershik: f64,
    /// `|F(f_max) - pi/sqrt 3|`.
    pub f_residual: f64,
    /// `|integral (f_max - |x|) - 1|`.
    pub area_residual: f64,
    /// `|integral_0^inf log(1+e^{-2x}) dx - pi^2/24|`.
    pub log1p_residual: f64,
    /// `|integral_0^inf phi(tanh u) du - pi^2/12|`.
    pub phi_tanh_residual: f64,
    /// `|2 integral_0^inf log(1+e^{-2u}) du - pi^2/12|`.
    pub doubled_log1p_residual: f64,
    /// `max_{|x| <= 5} |f_max'(x) - tanh(BETA_MAX x)|`, with `f_max'` taken
    /// by finite differences of the closed form.
    pub euler_lagrange_residual: f64,
    /// Same check stated as `max |phi'(f_max'(x)) + BETA_MAX x|`.
    pub euler_lagrange_phi_residual: f64,
}

impl ConstantsReport {
    /// Largest residual among the integral identities (excluding `F`).
    pub fn max_integral_residual(&self) -> f64 {
        self.area_residual
            .max(self.log1p_residual)
            .max(self.phi_tanh_residual)
            .max(self.doubled_log1p_residual)
    }
}

/// Recomputes every constant attached to the Vershik curve by quadrature.
pub fn verify_constants(tol: f64) -> ConstantsReport {
    let f_vershik = functional_f_with_tolerance(&Shape::vershik(), tol)
        .expect("the Vershik curve is 1-Lipschitz");
    let pi2 = PI * PI;
    let log1p = integrate_log1p_exp(tol);

    let mut el = 0.0_f64;
    let mut el_phi = 0.0_f64;
    for i in 0..=2000 {
        let x = -5.0 + 10.0 * i as f64 / 2000.0;
        let slope = vershik_slope_numeric(x);
        el = el.max((slope - vershik_slope(x)).abs());
        if let Ok(d) = phi_prime(slope) {
            el_phi = el_phi.max((d + BETA_MAX * x).abs());
        }
    }

    ConstantsReport {
        f_vershik,
        f_residual: (f_vershik - F_MAX).abs(),
        area_residual: (vershik_area(tol) - 1.0).abs(),
        log1p_residual: (log1p - pi2 / 24.0).abs(),
        phi_tanh_residual: (integrate_phi_tanh(tol) - pi2 / 12.0).abs(),
        doubled_log1p_residual: (2.0 * log1p - pi2 / 12.0).abs(),
        euler_lagrange_residual: el,
        euler_lagrange_phi_residual: el_phi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::PiecewiseLinearShape;

    #[test]
    fn constants() {
        assert!((BETA_MAX - PI / (2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!((F_MAX - PI / 3f64.sqrt()).abs() < 1e-15);
        assert!((F_MAX - 2.0 * ALPHA.sqrt()).abs() < 1e-14);
        assert!((D_MAX - 0.764_304).abs() < 1e-6);
    }

    #[test]
    fn cgf_values() {
        assert_eq!(lambda_cgf(0.0), 0.0);
        assert!((lambda_cgf(1.0) - 1f64.cosh().ln()).abs() < 1e-15);
        assert!((lambda_cgf(1.0) - 0.433_780_830).abs() < 1e-9);
        assert_eq!(lambda_cgf(-1.0), lambda_cgf(1.0));
        assert!((lambda_cgf(800.0) - (800.0 - LN_2)).abs() < 1e-12);
    }

    #[test]
    fn lambda_star_values() {
        assert_eq!(lambda_star(0.0), 0.0);
        assert_eq!(lambda_star(1.0), LN_2);
        assert_eq!(lambda_star(-1.0), LN_2);
        assert!((lambda_star(0.5) - 0.130_812).abs() < 1e-6);
        assert!(lambda_star(1.5).is_infinite());
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(0.0).unwrap(), LN_2);
        assert_eq!(phi(1.0).unwrap(), 0.0);
        assert_eq!(phi(-1.0).unwrap(), 0.0);
        let t = 1f64.tanh();
        let expected = (2.0 * 1f64.cosh()).ln() - t;
        assert!((phi(t).unwrap() - expected).abs() < 1e-14);
        assert!((expected - 0.365_334).abs() < 1e-6);
        assert!(phi(1.0001).is_err());
    }

    #[test]
    fn legendre_oracle_examples() {
        assert!(legendre_numeric(0.0).unwrap().abs() < 1e-15);
        assert!((legendre_numeric(0.5).unwrap() - lambda_star(0.5)).abs() < 1e-10);
        assert!((legendre_numeric(0.99).unwrap() - lambda_star(0.99)).abs() < 1e-9);
        assert!(legendre_numeric(1.0).is_err());
    }

    #[test]
    fn closed_form_matches_oracle_on_grid() {
        let worst = (0..1000)
            .map(|i| -0.999 + 1.998 * i as f64 / 999.0)
            .map(|x| (lambda_star(x) - legendre_numeric(x).unwrap()).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-9, "{worst}");
    }

    #[test]
    fn phi_derivative_is_minus_artanh() {
        let h = 1e-6;
        for i in 1..=500 {
            let x = -0.99 + 1.98 * i as f64 / 501.0;
            let fd = (phi(x + h).unwrap() - phi(x - h).unwrap()) / (2.0 * h);
            assert!((fd + artanh(x).unwrap()).abs() < 1e-9, "x={x}");
        }
    }

    #[test]
    fn phi_is_concave_and_even() {
        for i in 0..200 {
            let x = -1.0 + i as f64 / 100.0;
            let y = x + 0.01;
            let mid = 0.5 * (x + y);
            assert!(phi(mid).unwrap() + 1e-15 >= 0.5 * (phi(x).unwrap() + phi(y).unwrap()));
            assert_eq!(phi(x).unwrap(), phi(-x).unwrap());
        }
    }

    #[test]
    fn vershik_curve_values() {
        assert!((vershik_curve(0.0) - 2.0 * 3f64.sqrt() / PI * LN_2).abs() < 1e-15);
        assert!((vershik_curve(0.0) - 0.764_304).abs() < 1e-6);
        let direct = |x: f64| 2.0 * 3f64.sqrt() / PI * (2.0 * (PI * x / (2.0 * 3f64.sqrt())).cosh()).ln();
        for x in [-3.0, -0.5, 0.25, 2.0, 7.0] {
            assert!((vershik_curve(x) - direct(x)).abs() < 1e-13);
        }
        assert!(vershik_excess(200.0) < 1e-100);
        assert_eq!(vershik_slope(0.0), 0.0);
        assert!((vershik_slope(100.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn functional_of_simple_shapes() {
        let flat = Shape::PiecewiseLinear(PiecewiseLinearShape::abs());
        assert_eq!(functional_F(&flat).unwrap(), 0.0);
        let triangle = Shape::PiecewiseLinear(PiecewiseLinearShape::triangle());
        assert!((functional_F(&triangle).unwrap() - 2.0 * LN_2).abs() < 1e-15);
        let v = functional_F(&Shape::vershik()).unwrap();
        assert!((v - F_MAX).abs() < 1e-8, "{v}");
    }

    #[test]
    fn steep_slopes_are_rejected() {
        let bad = PiecewiseLinearShape::new_unchecked(vec![(-1.0, 1.0), (0.0, 3.0), (1.0, 1.0)]);
        assert!(functional_F(&Shape::PiecewiseLinear(bad)).is_err());
    }

    #[test]
    fn constants_report() {
        let r = verify_constants(DEFAULT_TOLERANCE);
        assert!(r.f_residual < 1e-6, "{r:?}");
        assert!(r.max_integral_residual() < 1e-8, "{r:?}");
        assert!(r.euler_lagrange_residual < 1e-10, "{r:?}");
    }
}
