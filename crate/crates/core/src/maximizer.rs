//! Exhaustive search for the partitions of `n` with the most subpartitions
//! (or k-chains), and the shape diagnostics of the winners.
//!
//! Counts are computed in parallel but compared as exact integers and ties
//! are sorted, so every report is identical for any worker count.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{
    count_kchains_with_cap, count_subpartitions, ln_biguint, partition_count, CountResult,
    DEFAULT_STATE_CAP,
};
use crate::envelope::DiscreteFunction;
use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, profile, rescale, LatticeProfile, Partition,
    DEFAULT_ENUMERATION_CAP};
use crate::ratefn::functional_F;
use crate::shape::{sup_distance, PiecewiseLinearShape, Shape};

/// Knobs for the exhaustive search.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Refuse to search when `p(n)` exceeds this.
    pub cap: u64,
    /// Worker threads; 0 means rayon's default.
    pub jobs: usize,
    /// Count strict rather than weak chains.
    pub strict: bool,
    /// State cap handed to the chain transfer DP.
    pub state_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            cap: DEFAULT_ENUMERATION_CAP,
            jobs: 0,
            strict: false,
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MaximizerReport {
    pub n: u32,
    pub k: u32,
    /// Every argmax, in decreasing lexicographic order.
    pub maximizers: Vec<Partition>,
    pub max_count: CountResult,
    /// `ln(max_count) / sqrt(n)`.
    pub exponent: f64,
    /// `k pi sqrt(2/3)`.
    pub hr_reference: f64,
    /// Uniform distance from the rescaled first maximizer to the Vershik
    /// curve.
    pub distance_to_vershik: f64,
}

impl MaximizerReport {
    pub fn first(&self) -> &Partition {
        &self.maximizers[0]
    }

    /// `hr_reference - exponent`.
    pub fn exponent_gap(&self) -> f64 {
        self.hr_reference - self.exponent
    }
}

fn count_for(lambda: &Partition, k: u32, opts: &SearchOptions) -> Result<CountResult> {
    if k == 1 && !opts.strict {
        Ok(count_subpartitions(lambda))
    } else {
        count_kchains_with_cap(lambda, k, opts.strict, opts.state_cap)
    }
}

fn run_in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

pub fn find_maximizers(n: u32, k: u32) -> Result<MaximizerReport> {
    find_maximizers_with(n, k, &SearchOptions::default())
}

/// Scores every partition of `n` and reports all of the best ones.
pub fn find_maximizers_with(n: u32, k: u32, opts: &SearchOptions) -> Result<MaximizerReport> {
    if n == 0 {
        return Err(Error::Domain("maximizer search needs n >= 1".into()));
    }
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let candidates = enumerate_partitions(n, opts.cap)?;
    let scored: Vec<CountResult> = run_in_pool(opts.jobs, || {
        candidates
            .par_iter()
            .map(|lambda| count_for(lambda, k, opts))
            .collect::<Result<Vec<_>>>()
    })??;

    let best: &BigUint = scored.iter().map(|c| &c.value).max().expect("n >= 1 has partitions");
    let mut maximizers: Vec<Partition> = candidates
        .iter()
        .zip(&scored)
        .filter(|(_, c)| &c.value == best)
        .map(|(p, _)| p.clone())
        .collect();
    maximizers.sort_by(|a, b| a.cmp_decreasing_lex(b));
    let first_idx = candidates.iter().position(|p| *p == maximizers[0]).unwrap();
    let max_count = scored[first_idx].clone();

    let root_n = f64::from(n).sqrt();
    let shape = rescale(&maximizers[0].profile(), u64::from(n))?;
    Ok(MaximizerReport {
        n,
        k,
        exponent: ln_biguint(&max_count.value) / root_n,
        hr_reference: f64::from(k) * std::f64::consts::PI * (2.0f64 / 3.0).sqrt(),
        distance_to_vershik: sup_distance(&shape.into(), &Shape::vershik()),
        maximizers,
        max_count,
    })
}

/// One report per requested `n`.
pub fn convergence_table(
    n_values: &[u32],
    k: u32,
    opts: &SearchOptions,
) -> Result<Vec<MaximizerReport>> {
    n_values
        .iter()
        .map(|&n| find_maximizers_with(n, k, opts))
        .collect()
}

/// The convex envelope of a profile, rescaled like [`rescale`].
pub fn envelope_shape(profile: &LatticeProfile, n: u64) -> Result<PiecewiseLinearShape> {
    if n == 0 {
        return Err(Error::Domain("rescale needs n >= 1".into()));
    }
    let (lo, _) = profile.window();
    let values: Vec<f64> = profile.values().iter().map(|&v| v as f64).collect();
    let f = DiscreteFunction::new(lo, values)?;
    let s = (2.0 * n as f64).sqrt();
    let kinks = f
        .hull_vertices()
        .into_iter()
        .map(|i| ((lo + i as i64) as f64 / s, f.values()[i] / s))
        .collect();
    PiecewiseLinearShape::new(kinks)
}

/// Limit-shape diagnostics for the first maximizer of `n`.
#[derive(Clone, Debug, Serialize)]
pub struct ShapeReport {
    pub report: MaximizerReport,
    /// Rescaled boundary of the first maximizer.
    pub profile_shape: PiecewiseLinearShape,
    /// Its lower convex envelope.
    pub envelope_shape: PiecewiseLinearShape,
    pub distance_profile: f64,
    pub distance_envelope: f64,
    pub distance_profile_envelope: f64,
    /// `F` of the envelope.
    pub f_envelope: f64,
}

pub fn shape_report(n: u32, k: u32, opts: &SearchOptions) -> Result<ShapeReport> {
    let report = find_maximizers_with(n, k, opts)?;
    let g = profile(report.first());
    let f_shape = rescale(&g, u64::from(n))?;
    let h_shape = envelope_shape(&g, u64::from(n))?;
    let vershik = Shape::vershik();
    let f = Shape::from(f_shape.clone());
    let h = Shape::from(h_shape.clone());
    Ok(ShapeReport {
        distance_profile: sup_distance(&f, &vershik),
        distance_envelope: sup_distance(&h, &vershik),
        distance_profile_envelope: sup_distance(&f, &h),
        f_envelope: functional_F(&h)?,
        profile_shape: f_shape,
        envelope_shape: h_shape,
        report,
    })
}

/// `ln((n+1) p(n)) / sqrt(n)`, the crude ceiling on the k = 1 exponent.
pub fn crude_exponent_ceiling(n: u32) -> f64 {
    let pn = partition_count(u64::from(n)).value;
    (ln_biguint(&pn) + f64::from(n + 1).ln()) / f64::from(n).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratefn::F_MAX;

    fn names(r: &MaximizerReport) -> Vec<String> {
        r.maximizers.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn ground_truth_small_n() {
        let one = find_maximizers(1, 1).unwrap();
        assert_eq!(names(&one), ["1"]);
        assert_eq!(one.max_count.value, BigUint::from(2u32));

        let four = find_maximizers(4, 1).unwrap();
        assert_eq!(names(&four), ["3,1", "2,1,1"]);
        assert_eq!(four.max_count.value, BigUint::from(7u32));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(find_maximizers(0, 1).is_err());
        assert!(find_maximizers(3, 0).is_err());
        let tight = SearchOptions { cap: 5, ..Default::default() };
        assert!(matches!(find_maximizers_with(10, 1, &tight), Err(Error::Resource { .. })));
    }

    #[test]
    fn table_is_increasing() {
        let ns: Vec<u32> = (1..=12).collect();
        let table = convergence_table(&ns, 1, &SearchOptions::default()).unwrap();
        assert!(table.windows(2).all(|w| w[0].max_count.value < w[1].max_count.value));
    }

    #[test]
    fn worker_count_does_not_change_reports() {
        let one = SearchOptions { jobs: 1, ..Default::default() };
        let many = SearchOptions { jobs: 4, ..Default::default() };
        let a = find_maximizers_with(15, 2, &one).unwrap();
        let b = find_maximizers_with(15, 2, &many).unwrap();
        assert_eq!(a.maximizers, b.maximizers);
        assert_eq!(a.max_count, b.max_count);
        assert_eq!(a.distance_to_vershik.to_bits(), b.distance_to_vershik.to_bits());
    }

    #[test]
    fn shape_report_sanity() {
        let r = shape_report(1, 1, &SearchOptions::default()).unwrap();
        assert_eq!(r.profile_shape.kinks().len(), 3);
        assert!(r.f_envelope <= F_MAX + 1e-9);
        for n in [5, 12, 20] {
            let r = shape_report(n, 1, &SearchOptions::default()).unwrap();
            assert!(r.f_envelope <= F_MAX + 1e-9);
            assert!(r.distance_envelope <= r.distance_profile + r.distance_profile_envelope + 1e-12);
            assert_eq!(r.distance_profile, r.report.distance_to_vershik);
        }
    }
}
