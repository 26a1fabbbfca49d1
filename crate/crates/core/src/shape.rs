//! Real-valued 1-Lipschitz shapes lying above `|x|`, and the uniform
//! distance between them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratefn::{artanh, vershik_curve, BETA_MAX, TAIL_CUTOFF};

/// Slack allowed on slope and `y >= |x|` checks; floating-point rescaling
/// of exact integer profiles drifts by a few ulps.
pub const LIPSCHITZ_SLACK: f64 = 1e-9;

/// Grid step used by [`sup_distance`] when both sides are analytic.
pub const ANALYTIC_GRID_STEP: f64 = 1e-3;

/// A polyline through its kink points, continued by `|x|` on both sides.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PiecewiseLinearShape {
    kinks: Vec<(f64, f64)>,
}

/// One linear piece of a [`PiecewiseLinearShape`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Segment {
    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn slope(&self) -> f64 {
        (self.y1 - self.y0) / (self.x1 - self.x0)
    }

    pub fn at(&self, x: f64) -> f64 {
        if x == self.x0 {
            return self.y0;
        }
        if x == self.x1 {
            return self.y1;
        }
        self.y0 + (x - self.x0) * self.slope()
    }
}

impl PiecewiseLinearShape {
    /// Validates strictly increasing abscissae, `|slope| <= 1`,
    /// `y >= |x|`, and that both end kinks lie on `|x|`.
    pub fn new(kinks: Vec<(f64, f64)>) -> Result<Self> {
        if kinks.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::Domain("kinks must be finite".into()));
        }
        if kinks.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::Domain("kink abscissae must increase".into()));
        }
        for &(x, y) in &kinks {
            if y < x.abs() - LIPSCHITZ_SLACK {
                return Err(Error::Domain(format!("kink ({x}, {y}) lies below |x|")));
            }
        }
        if let (Some(first), Some(last)) = (kinks.first(), kinks.last()) {
            for &(x, y) in [first, last] {
                if (y - x.abs()).abs() > LIPSCHITZ_SLACK {
                    return Err(Error::Domain("end kinks must lie on |x|".into()));
                }
            }
        }
        let shape = PiecewiseLinearShape { kinks };
        if let Some(seg) = shape.segments().find(|s| s.slope().abs() > 1.0 + LIPSCHITZ_SLACK) {
            return Err(Error::Domain(format!("slope {} exceeds 1", seg.slope())));
        }
        Ok(shape)
    }

    /// Skips validation; used for deliberately invalid test inputs.
    pub fn new_unchecked(kinks: Vec<(f64, f64)>) -> Self {
        PiecewiseLinearShape { kinks }
    }

    /// The shape `|x|` itself.
    pub fn abs() -> Self {
        PiecewiseLinearShape { kinks: Vec::new() }
    }

    /// `max(1, |x|)`.
    pub fn triangle() -> Self {
        PiecewiseLinearShape {
            kinks: vec![(-1.0, 1.0), (1.0, 1.0)],
        }
    }

    pub fn kinks(&self) -> &[(f64, f64)] {
        &self.kinks
    }

    /// Linear pieces between consecutive kinks. The `|x|` tails are not
    /// included (they contribute nothing to `F` or to the excess area).
    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.kinks.windows(2).map(|w| Segment {
            x0: w[0].0,
            y0: w[0].1,
            x1: w[1].0,
            y1: w[1].1,
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (Some(first), Some(last)) = (self.kinks.first(), self.kinks.last()) else {
            return x.abs();
        };
        if x <= first.0 || x >= last.0 {
            if x == first.0 {
                return first.1;
            }
            if x == last.0 {
                return last.1;
            }
            return x.abs();
        }
        let idx = self.kinks.partition_point(|&(kx, _)| kx <= x);
        let (x0, y0) = self.kinks[idx - 1];
        let (x1, y1) = self.kinks[idx];
        Segment { x0, y0, x1, y1 }.at(x)
    }

    /// `integral of (y - |x|) dx`, exact up to rounding.
    pub fn excess_area(&self) -> f64 {
        let mut area = 0.0;
        for seg in self.segments() {
            let mut pieces = vec![seg];
            if seg.x0 < 0.0 && seg.x1 > 0.0 {
                let y_mid = seg.at(0.0);
                pieces = vec![
                    Segment { x1: 0.0, y1: y_mid, ..seg },
                    Segment { x0: 0.0, y0: y_mid, ..seg },
                ];
            }
            for p in pieces {
                let e0 = p.y0 - p.x0.abs();
                let e1 = p.y1 - p.x1.abs();
                area += 0.5 * (e0 + e1) * p.width();
            }
        }
        area
    }

    /// Rescaling `x -> alpha^{-1/2} f(alpha^{1/2} x)`; divides the excess
    /// area by `alpha` and `F` by `sqrt(alpha)`.
    pub fn dilate(&self, alpha: f64) -> Self {
        let s = alpha.sqrt();
        PiecewiseLinearShape {
            kinks: self.kinks.iter().map(|&(x, y)| (x / s, y / s)).collect(),
        }
    }

    /// Membership in the admissible shape space: valid polyline with excess
    /// area at most one (plus slack).
    pub fn is_admissible(&self) -> bool {
        PiecewiseLinearShape::new(self.kinks.clone()).is_ok()
            && self.excess_area() <= 1.0 + LIPSCHITZ_SLACK
    }
}

/// Closed-form members of the shape space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum AnalyticCurve {
    /// `x -> alpha^{-1/2} f_max(alpha^{1/2} x)`; `alpha = 1` is the Vershik
    /// curve, `alpha >= 1` stays admissible.
    ScaledVershik { alpha: f64 },
}

impl AnalyticCurve {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            AnalyticCurve::ScaledVershik { alpha } => {
                let s = alpha.sqrt();
                vershik_curve(s * x) / s
            }
        }
    }

    pub fn slope(&self, x: f64) -> f64 {
        match *self {
            AnalyticCurve::ScaledVershik { alpha } => (BETA_MAX * alpha.sqrt() * x).tanh(),
        }
    }

    /// The unique `x` with `slope(x) = s`, if `|s| < 1`.
    pub fn slope_preimage(&self, s: f64) -> Option<f64> {
        match *self {
            AnalyticCurve::ScaledVershik { alpha } => {
                artanh(s).ok().map(|u| u / (BETA_MAX * alpha.sqrt()))
            }
        }
    }

    /// Half-width beyond which the curve is `|x|` to machine precision.
    pub fn support_radius(&self) -> f64 {
        match *self {
            AnalyticCurve::ScaledVershik { alpha } => TAIL_CUTOFF / (BETA_MAX * alpha.sqrt()),
        }
    }
}

/// An element of the admissible shape space: a polyline or a closed form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Shape {
    PiecewiseLinear(PiecewiseLinearShape),
    Analytic(AnalyticCurve),
}

impl Shape {
    pub fn vershik() -> Self {
        Shape::Analytic(AnalyticCurve::ScaledVershik { alpha: 1.0 })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Shape::PiecewiseLinear(p) => p.eval(x),
            Shape::Analytic(c) => c.eval(x),
        }
    }
}

impl From<PiecewiseLinearShape> for Shape {
    fn from(p: PiecewiseLinearShape) -> Self {
        Shape::PiecewiseLinear(p)
    }
}

/// `sup_x |f(x) - g(x)|`.
///
/// Exact when at least one side is piecewise linear: the difference is then
/// checked at every kink, at `0`, and at the interior points where an
/// analytic side's slope matches the polyline's. Two analytic curves are
/// compared on a grid of step [`ANALYTIC_GRID_STEP`].
pub fn sup_distance(f: &Shape, g: &Shape) -> f64 {
    match (f, g) {
        (Shape::PiecewiseLinear(a), Shape::PiecewiseLinear(b)) => {
            let mut xs: Vec<f64> = a.kinks.iter().chain(&b.kinks).map(|k| k.0).collect();
            xs.push(0.0);
            xs.iter()
                .map(|&x| (a.eval(x) - b.eval(x)).abs())
                .fold(0.0, f64::max)
        }
        (Shape::PiecewiseLinear(p), Shape::Analytic(c))
        | (Shape::Analytic(c), Shape::PiecewiseLinear(p)) => polyline_vs_curve(p, c),
        (Shape::Analytic(a), Shape::Analytic(b)) => {
            let radius = a.support_radius().max(b.support_radius());
            let steps = (radius / ANALYTIC_GRID_STEP).ceil() as i64;
            (-steps..=steps)
                .map(|i| i as f64 * ANALYTIC_GRID_STEP)
                .map(|x| (a.eval(x) - b.eval(x)).abs())
                .fold(0.0, f64::max)
        }
    }
}

fn polyline_vs_curve(p: &PiecewiseLinearShape, c: &AnalyticCurve) -> f64 {
    // breakpoints of the full polyline including the |x| corner
    let mut xs: Vec<f64> = p.kinks.iter().map(|k| k.0).collect();
    xs.push(0.0);
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let mut candidates = xs.clone();
    for w in xs.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let slope = (p.eval(x1) - p.eval(x0)) / (x1 - x0);
        // on a piece, polyline minus convex curve is concave, so its
        // interior maximum sits where the slopes agree
        if let Some(x) = c.slope_preimage(slope) {
            if x > x0 && x < x1 {
                candidates.push(x);
            }
        }
    }
    // Outside the breakpoints the polyline is |x| and the gap shrinks
    // monotonically, so the extreme breakpoints already cover the tails.
    candidates
        .into_iter()
        .map(|x| (p.eval(x) - c.eval(x)).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn pl(kinks: &[(f64, f64)]) -> Shape {
        Shape::PiecewiseLinear(PiecewiseLinearShape::new(kinks.to_vec()).unwrap())
    }

    #[test]
    fn validation() {
        assert!(PiecewiseLinearShape::new(vec![(-1.0, 1.0), (0.0, 3.0), (1.0, 1.0)]).is_err());
        assert!(PiecewiseLinearShape::new(vec![(-1.0, 1.0), (1.0, 2.0)]).is_err());
        assert!(PiecewiseLinearShape::new(vec![(1.0, 1.0), (-1.0, 1.0)]).is_err());
        assert!(PiecewiseLinearShape::new(vec![(-1.0, 1.0), (0.0, -0.5), (1.0, 1.0)]).is_err());
        assert!(PiecewiseLinearShape::new(vec![(-1.0, 1.0), (1.0, 1.0)]).is_ok());
    }

    #[test]
    fn evaluation_and_area() {
        let t = PiecewiseLinearShape::triangle();
        assert_eq!(t.eval(0.0), 1.0);
        assert_eq!(t.eval(0.5), 1.0);
        assert_eq!(t.eval(3.0), 3.0);
        assert_eq!(t.eval(-3.0), 3.0);
        assert!((t.excess_area() - 1.0).abs() < 1e-15);
        assert!((t.dilate(4.0).excess_area() - 0.25).abs() < 1e-15);
        assert_eq!(PiecewiseLinearShape::abs().excess_area(), 0.0);
        assert!(t.is_admissible());
    }

    #[test]
    fn distance_examples() {
        let abs = Shape::PiecewiseLinear(PiecewiseLinearShape::abs());
        let tri = Shape::PiecewiseLinear(PiecewiseLinearShape::triangle());
        assert_eq!(sup_distance(&tri, &tri), 0.0);
        assert_eq!(sup_distance(&abs, &tri), 1.0);
        let d = sup_distance(&abs, &Shape::vershik());
        assert!((d - 2.0 * 3f64.sqrt() / PI * LN_2).abs() < 1e-15);
        assert!((d - 0.764_304).abs() < 1e-6);
        assert_eq!(sup_distance(&Shape::vershik(), &Shape::vershik()), 0.0);
    }

    #[test]
    fn distance_to_curve_beats_dense_sampling() {
        let shape = pl(&[(-1.5, 1.5), (-0.5, 1.5), (0.0, 2.0), (1.0, 1.0)]);
        let exact = sup_distance(&shape, &Shape::vershik());
        let sampled = (0..=200_000)
            .map(|i| -10.0 + i as f64 * 1e-4)
            .map(|x| (shape.eval(x) - vershik_curve(x)).abs())
            .fold(0.0, f64::max);
        assert!(exact >= sampled - 1e-12);
        assert!(exact - sampled < 1e-7);
    }

    #[test]
    fn analytic_pair_uses_grid() {
        let a = Shape::vershik();
        let b = Shape::Analytic(AnalyticCurve::ScaledVershik { alpha: 4.0 });
        // both maxima sit at 0 by symmetry
        let expected = vershik_curve(0.0) - vershik_curve(0.0) / 2.0;
        assert!((sup_distance(&a, &b) - expected).abs() < 1e-12);
    }
}
