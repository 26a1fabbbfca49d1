//! Exact counting of subpartitions and k-chains of subpartitions, exhaustive
//! search for the partitions maximizing those counts, and the
//! large-deviations machinery (rate function, shape functional, Vershik
//! curve) that predicts their limit shape.

pub mod cli;
pub mod counting;
pub mod envelope;
pub mod maximizer;
pub mod error;
pub mod io;
pub mod partition;
pub mod quadrature;
pub mod ratefn;
pub mod shape;
pub mod verify;

pub use counting::{
    corollary2_bound, count_bridges_below, count_kchains, count_kchains_memoized,
    count_subpartitions, hr_exponent, partition_count, Bound, CountResult, Method,
};
pub use envelope::{
    decreasing_lower_convex_envelope, lower_convex_envelope, path_energy, DiscreteFunction,
    EnergySpec, Psi,
};
pub use error::{Error, Result};
pub use partition::{
    conjugate, enumerate_partitions, is_subpartition, profile, rescale, LatticeProfile,
    Partition, Partitions,
};
pub use ratefn::{
    functional_F, lambda_cgf, lambda_star, legendre_numeric, phi, verify_constants,
    vershik_curve,
};
pub use shape::{sup_distance, AnalyticCurve, PiecewiseLinearShape, Shape};
