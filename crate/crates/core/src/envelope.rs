//! Lower convex envelopes of functions on integer intervals and the
//! increment energy `J(f) = sum psi(f(i) - f(i-1))` they minimize.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratefn::lambda_star;

/// A real-valued function on `{start, ..., start + len - 1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscreteFunction {
    start: i64,
    values: Vec<f64>,
}

impl DiscreteFunction {
    pub fn new(start: i64, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("discrete function needs a nonempty domain".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("discrete function values must be finite".into()));
        }
        Ok(DiscreteFunction { start, values })
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last point of the domain.
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, i: i64) -> f64 {
        self.values[(i - self.start) as usize]
    }

    pub fn increments(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.windows(2).map(|w| w[1] - w[0])
    }

    /// Indices (relative to `start`) of the lower hull vertices.
    pub fn hull_vertices(&self) -> Vec<usize> {
        lower_hull(&self.values)
    }
}

/// Convex `psi` used by [`path_energy`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Psi {
    /// Rate function of the `+-1` walk; `+inf` outside `[-1, 1]`.
    #[default]
    LambdaStar,
    /// `x^2`.
    Square,
    /// `|x|`; convex but not strictly, useful for tie cases.
    Abs,
}

impl Psi {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            Psi::LambdaStar => lambda_star(x),
            Psi::Square => x * x,
            Psi::Abs => x.abs(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnergySpec {
    pub psi: Psi,
}

// Monotone-chain lower hull over (i, v[i]); i is already sorted.
fn lower_hull(values: &[f64]) -> Vec<usize> {
    let mut hull: Vec<usize> = Vec::with_capacity(values.len());
    for i in 0..values.len() {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            // drop a unless it is strictly below the chord o -> i
            let cross = (a - o) as f64 * (values[i] - values[o])
                - (i - o) as f64 * (values[a] - values[o]);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    hull
}

fn interpolate_hull(values: &[f64], hull: &[usize]) -> Vec<f64> {
    let mut out = values.to_vec();
    for w in hull.windows(2) {
        let (i0, i1) = (w[0], w[1]);
        let (v0, v1) = (values[i0], values[i1]);
        let span = (i1 - i0) as f64;
        for (k, slot) in out.iter_mut().enumerate().take(i1).skip(i0 + 1) {
            let t = (k - i0) as f64 / span;
            *slot = v0 + t * (v1 - v0);
        }
    }
    out
}

/// Greatest convex minorant of `f`. It agrees with `f` at both endpoints and
/// at every hull vertex, and is linear in between.
pub fn lower_convex_envelope(f: &DiscreteFunction) -> DiscreteFunction {
    let hull = lower_hull(&f.values);
    DiscreteFunction {
        start: f.start,
        values: interpolate_hull(&f.values, &hull),
    }
}

/// Greatest weakly decreasing convex minorant of `f`: the convex envelope up
/// to the leftmost minimizer of `f`, then constant at `min f`.
pub fn decreasing_lower_convex_envelope(f: &DiscreteFunction) -> DiscreteFunction {
    let (argmin, min) = f
        .values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, v)| if v < best.1 { (i, v) } else { best });
    let head = &f.values[..=argmin];
    let mut values = interpolate_hull(head, &lower_hull(head));
    values.resize(f.values.len(), min);
    DiscreteFunction { start: f.start, values }
}

/// `J(f) = sum over increments of psi`, `+inf` if any increment is outside
/// the effective domain of `psi`.
pub fn path_energy(f: &DiscreteFunction, spec: EnergySpec) -> f64 {
    f.increments().map(|d| spec.psi.eval(d)).sum()
}
