//! Integer partitions, the subpartition order, and integer-coordinate
//! boundary profiles.
//!
//! Profiles use "diagonal" coordinates: the cell in row `i`, column `c`
//! (both 1-based) lies on diagonal `c - i`, and the boundary of the diagram
//! rotated onto the graph of `|j|` is `G(j) = |j| + 2 * D(j)` where `D(j)`
//! counts cells on diagonal `j`. Each cell is a diamond of area 2, so the
//! excess area of the profile of a partition of `n` is `2n` and rescaling by
//! `sqrt(2n)` gives a shape of excess area exactly 1.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::counting::partition_count;
use crate::error::{Error, Result};

/// Default limit on `p(n)` for anything that materializes all partitions.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
    n: u64,
}

impl Partition {
    /// Builds a partition, rejecting zero parts and increasing runs.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!(
                "parts must be weakly decreasing: {:?}",
                parts
            )));
        }
        Ok(Self::from_parts_unchecked(parts))
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        let n = parts.iter().map(|&p| u64::from(p)).sum();
        Partition { parts, n }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, 0 for the empty partition.
    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part `i` (0-based), 0 past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// True iff `self` fits inside `other` row by row.
    pub fn is_subpartition_of(&self, other: &Partition) -> bool {
        is_subpartition(self, other)
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        conjugate(self)
    }

    pub fn profile(&self) -> LatticeProfile {
        profile(self)
    }

    /// All partitions obtained by adding a single cell.
    pub fn add_one_box(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..=self.parts.len() {
            let above = if i == 0 { u32::MAX } else { self.parts[i - 1] };
            if self.part(i) < above {
                let mut parts = self.parts.clone();
                if i == parts.len() {
                    parts.push(1);
                } else {
                    parts[i] += 1;
                }
                out.push(Partition::from_parts_unchecked(parts));
            }
        }
        out
    }

    /// Comparison in decreasing lexicographic order: `(4)` comes before `(3,1)`.
    pub fn cmp_decreasing_lex(&self, other: &Partition) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"4,2,1"`; the empty (or all-whitespace) string is the empty
    /// partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad part {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

/// Iterator over the partitions of `n` in decreasing lexicographic order.
#[derive(Clone, Debug)]
pub struct Partitions {
    next: Option<Vec<u32>>,
}

impl Partitions {
    pub fn new(n: u32) -> Self {
        let first = if n == 0 { Vec::new() } else { vec![n] };
        Partitions { next: Some(first) }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(Partition::from_parts_unchecked(current))
    }
}

// Next partition in decreasing lexicographic order: strip the trailing ones,
// decrement the last part > 1 and refill with copies of it.
fn successor(parts: &[u32]) -> Option<Vec<u32>> {
    let ones = parts.iter().rev().take_while(|&&p| p == 1).count();
    if ones == parts.len() {
        return None;
    }
    let mut next = parts[..parts.len() - ones].to_vec();
    let last = next.pop().expect("non-one part exists");
    let value = last - 1;
    let mut remaining = ones as u32 + last;
    while remaining >= value {
        next.push(value);
        remaining -= value;
    }
    if remaining > 0 {
        next.push(remaining);
    }
    Some(next)
}

/// Every partition of `n`, in decreasing lexicographic order.
///
/// Fails with a resource error when `p(n)` exceeds `cap`.
pub fn enumerate_partitions(n: u32, cap: u64) -> Result<Vec<Partition>> {
    let count = partition_count(u64::from(n)).value;
    if count > cap.into() {
        return Err(Error::Resource {
            what: "partition enumeration",
            actual: count.to_string(),
            cap,
        });
    }
    Ok(Partitions::new(n).collect())
}

/// `mu` fits inside `lambda`: at most as many rows and `mu_i <= lambda_i`.
pub fn is_subpartition(mu: &Partition, lambda: &Partition) -> bool {
    mu.len() <= lambda.len() && mu.parts.iter().zip(&lambda.parts).all(|(m, l)| m <= l)
}

pub fn conjugate(lambda: &Partition) -> Partition {
    let parts = (1..=lambda.largest())
        .map(|j| lambda.parts.iter().take_while(|&&p| p >= j).count() as u32)
        .collect();
    Partition::from_parts_unchecked(parts)
}

/// Integer boundary profile `G` on the window `[-left, right]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeProfile {
    left: i64,
    values: Vec<i64>,
}

impl LatticeProfile {
    /// Validates the step, boundary and `G >= |j|` invariants.
    pub fn from_values(left: i64, values: Vec<i64>) -> Result<Self> {
        if left < 0 || values.is_empty() {
            return Err(Error::Domain("window must contain 0".into()));
        }
        let right = values.len() as i64 - 1 - left;
        if right < 0 {
            return Err(Error::Domain("window must contain 0".into()));
        }
        if values[0] != left || *values.last().unwrap() != right {
            return Err(Error::Domain("profile must meet |j| at the window ends".into()));
        }
        if values.windows(2).any(|w| (w[1] - w[0]).abs() != 1) {
            return Err(Error::Domain("profile increments must be +-1".into()));
        }
        if values
            .iter()
            .enumerate()
            .any(|(i, &g)| g < (i as i64 - left).abs())
        {
            return Err(Error::Domain("profile must stay above |j|".into()));
        }
        Ok(LatticeProfile { left, values })
    }

    /// Window `[-L, R]` as `(-L, R)`.
    pub fn window(&self) -> (i64, i64) {
        (-self.left, self.values.len() as i64 - 1 - self.left)
    }

    /// `G(j)`, extended by `|j|` outside the window.
    pub fn value(&self, j: i64) -> i64 {
        let idx = j + self.left;
        if idx < 0 || idx >= self.values.len() as i64 {
            j.abs()
        } else {
            self.values[idx as usize]
        }
    }

    /// Values over the window, left to right.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `(j, G(j))` over the window.
    pub fn points(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &g)| (i as i64 - self.left, g))
    }

    /// `sum_j (G(j) - |j|)`, twice the number of cells.
    pub fn excess_area(&self) -> i64 {
        self.points().map(|(j, g)| g - j.abs()).sum()
    }

    /// Number of cells in the underlying diagram.
    pub fn cells(&self) -> u64 {
        (self.excess_area() / 2) as u64
    }
}

/// Profile via the diagonal-count formula `G(j) = |j| + 2 D(j)`.
pub fn profile(lambda: &Partition) -> LatticeProfile {
    let left = lambda.len() as i64;
    let right = i64::from(lambda.largest());
    let mut values: Vec<i64> = (-left..=right).map(i64::abs).collect();
    for (row, &len) in lambda.parts.iter().enumerate() {
        // cells (row, c) for c in 0..len sit on diagonal c - row
        for c in 0..i64::from(len) {
            values[(c - row as i64 + left) as usize] += 2;
        }
    }
    LatticeProfile { left, values }
}

/// Real-coordinate shape `x -> G(s x) / s` with `s = sqrt(2n)`.
pub fn rescale(profile: &LatticeProfile, n: u64) -> Result<crate::shape::PiecewiseLinearShape> {
    if n == 0 {
        return Err(Error::Domain("rescale needs n >= 1".into()));
    }
    let s = (2.0 * n as f64).sqrt();
    let kinks = profile
        .points()
        .map(|(j, g)| (j as f64 / s, g as f64 / s))
        .collect();
    crate::shape::PiecewiseLinearShape::new(kinks)
}
