//! Exact counts: subpartitions, k-chains of subpartitions, bridges under a
//! profile, partition numbers, and the rate-function upper bounds on them.
//!
//! Every count is an arbitrary-precision integer. Chains are counted as
//! families of non-crossing `+-1` paths squeezed between `|j|` and the
//! profile: the weak chain `mu_k <= ... <= mu_1 <= lambda` is exactly the
//! family of profiles `|j| <= G_{mu_k} <= ... <= G_{mu_1} <= G_lambda`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::envelope::DiscreteFunction;
use crate::error::{Error, Result};
use crate::partition::{LatticeProfile, Partition};
use crate::ratefn::phi;

/// Default limit on the number of live states in the chain transfer DP.
pub const DEFAULT_STATE_CAP: usize = 5_000_000;

/// Which algorithm produced a count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    RowDp,
    BridgeDp,
    MemoizedChain,
    TransferChain,
    BruteForce,
    Pentagonal,
    PartsDp,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::RowDp => "row-dp",
            Method::BridgeDp => "bridge-dp",
            Method::MemoizedChain => "memoized-chain",
            Method::TransferChain => "transfer-chain",
            Method::BruteForce => "brute-force",
            Method::Pentagonal => "pentagonal",
            Method::PartsDp => "parts-dp",
        };
        f.write_str(s)
    }
}

/// Inputs echoed alongside a count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CountParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict: Option<bool>,
}

impl CountParams {
    fn chain(lambda: &Partition, k: u32, strict: bool) -> Self {
        CountParams {
            partition: Some(lambda.to_string()),
            k: Some(k),
            strict: Some(strict),
            ..Default::default()
        }
    }
}

/// An exact count together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountResult {
    #[serde(serialize_with = "decimal_string")]
    pub value: BigUint,
    pub method: Method,
    pub params: CountParams,
}

fn decimal_string<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

impl CountResult {
    /// Natural log of the count.
    pub fn ln(&self) -> f64 {
        ln_biguint(&self.value)
    }
}

/// `ln(v)` for arbitrarily large `v`; `-inf` for zero.
pub fn ln_biguint(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().expect("64-bit prefix fits in f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Number of subpartitions of `lambda` (including the empty one and
/// `lambda` itself) by a row-by-row prefix-sum DP.
pub fn count_subpartitions(lambda: &Partition) -> CountResult {
    // ways[v] = number of ways to fill the rows below the current one given
    // the current row has length v
    let mut ways: Vec<BigUint> = vec![BigUint::one()];
    for &bound in lambda.parts().iter().rev() {
        let bound = bound as usize;
        let mut next = Vec::with_capacity(bound + 1);
        let mut acc = BigUint::zero();
        for v in 0..=bound {
            if let Some(w) = ways.get(v) {
                acc += w;
            }
            next.push(acc.clone());
        }
        ways = next;
    }
    CountResult {
        value: ways.into_iter().sum(),
        method: Method::RowDp,
        params: CountParams {
            partition: Some(lambda.to_string()),
            ..Default::default()
        },
    }
}

/// Every subpartition of `lambda`, generated row by row.
pub fn subpartitions(lambda: &Partition) -> Vec<Partition> {
    fn extend(lambda: &Partition, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition::from_parts_unchecked(prefix.clone()));
        let row = prefix.len();
        if row >= lambda.len() {
            return;
        }
        let cap = prefix.last().copied().unwrap_or(u32::MAX).min(lambda.part(row));
        for v in 1..=cap {
            prefix.push(v);
            extend(lambda, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(lambda, &mut Vec::new(), &mut out);
    out
}

/// Subpartition count by explicit enumeration.
pub fn count_subpartitions_brute(lambda: &Partition) -> CountResult {
    CountResult {
        value: BigUint::from(subpartitions(lambda).len()),
        method: Method::BruteForce,
        params: CountParams {
            partition: Some(lambda.to_string()),
            ..Default::default()
        },
    }
}

/// Chain count by enumerating `k`-tuples over the explicit list of
/// subpartitions. Cost grows like `s(lambda)^k`.
pub fn count_kchains_brute(lambda: &Partition, k: u32, strict: bool) -> Result<CountResult> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let subs = subpartitions(lambda);
    fn walk(subs: &[Partition], above: &Partition, left: u32, strict: bool, first: bool) -> u64 {
        if left == 0 {
            return 1;
        }
        subs.iter()
            .filter(|mu| mu.is_subpartition_of(above) && (first || !strict || *mu != above))
            .map(|mu| walk(subs, mu, left - 1, strict, false))
            .sum()
    }
    Ok(CountResult {
        value: BigUint::from(walk(&subs, lambda, k, strict, true)),
        method: Method::BruteForce,
        params: CountParams::chain(lambda, k, strict),
    })
}

/// Number of staircases `gamma` with `+-1` steps and
/// `|j| <= gamma(j) <= G(j)` on the window, pinned to `|j|` at both ends.
pub fn count_bridges_below(profile: &LatticeProfile) -> CountResult {
    let (lo, _) = profile.window();
    let values = profile.values();
    // heights indexed directly; G <= window width
    let top = *values.iter().max().unwrap() as usize;
    let mut col: Vec<BigUint> = vec![BigUint::zero(); top + 2];
    col[(-lo) as usize] = BigUint::one();
    for (idx, &g) in values.iter().enumerate().skip(1) {
        let j = lo + idx as i64;
        let floor = j.unsigned_abs() as usize;
        let mut next = vec![BigUint::zero(); top + 2];
        for h in floor..=(g as usize) {
            let mut total = BigUint::zero();
            if h >= 1 {
                total += &col[h - 1];
            }
            total += &col[h + 1];
            next[h] = total;
        }
        col = next;
    }
    let end = *values.last().unwrap() as usize;
    CountResult {
        value: col[end].clone(),
        method: Method::BridgeDp,
        params: CountParams {
            n: Some(profile.cells()),
            ..Default::default()
        },
    }
}

/// Number of k-chains `mu_k <= ... <= mu_1 <= lambda` (weak), or with
/// `mu_{i+1} != mu_i` for every consecutive pair (strict; `mu_1 = lambda`
/// stays allowed). `k = 1` weak is [`count_subpartitions`].
pub fn count_kchains(lambda: &Partition, k: u32, strict: bool) -> Result<CountResult> {
    count_kchains_with_cap(lambda, k, strict, DEFAULT_STATE_CAP)
}

/// [`count_kchains`] with an explicit cap on transfer-DP states.
pub fn count_kchains_with_cap(
    lambda: &Partition,
    k: u32,
    strict: bool,
    state_cap: usize,
) -> Result<CountResult> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if k > 24 {
        return Err(Error::Resource {
            what: "chain length",
            actual: k.to_string(),
            cap: 24,
        });
    }
    let profile = lambda.profile();
    let (lo, _) = profile.window();
    let k_us = k as usize;
    let full_mask: u32 = if strict { (1u32 << (k - 1)) - 1 } else { 0 };

    type State = (Vec<i64>, u32);
    let mut states: HashMap<State, BigUint> = HashMap::new();
    states.insert((vec![-lo; k_us], 0), BigUint::one());

    let mut heights = vec![0i64; k_us];
    for (idx, &g) in profile.values().iter().enumerate().skip(1) {
        let j = lo + idx as i64;
        let floor = j.abs();
        let mut next: HashMap<State, BigUint> = HashMap::with_capacity(states.len() * 2);
        for ((hs, mask), count) in &states {
            'moves: for bits in 0u32..(1u32 << k) {
                for (i, h) in heights.iter_mut().enumerate() {
                    *h = hs[i] + if bits >> i & 1 == 1 { 1 } else { -1 };
                }
                if heights[0] > g || heights[k_us - 1] < floor {
                    continue;
                }
                let mut new_mask = *mask;
                for i in 0..k_us - 1 {
                    match heights[i].cmp(&heights[i + 1]) {
                        std::cmp::Ordering::Less => continue 'moves,
                        std::cmp::Ordering::Greater if strict => new_mask |= 1 << i,
                        _ => {}
                    }
                }
                *next.entry((heights.clone(), new_mask)).or_default() += count;
            }
        }
        if next.len() > state_cap {
            return Err(Error::Resource {
                what: "chain transfer states",
                actual: next.len().to_string(),
                cap: state_cap as u64,
            });
        }
        states = next;
    }

    let value = states
        .into_iter()
        .filter(|((_, mask), _)| *mask == full_mask)
        .map(|(_, c)| c)
        .sum();
    Ok(CountResult {
        value,
        method: Method::TransferChain,
        params: CountParams::chain(lambda, k, strict),
    })
}

/// Chain count by the recursion `c_j(nu) = sum_{mu <= nu} c_{j-1}(mu)`
/// (with `mu != nu` below the top in strict mode), memoized per partition.
/// Exponential; meant as an oracle for small diagrams.
pub fn count_kchains_memoized(lambda: &Partition, k: u32, strict: bool) -> Result<CountResult> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    struct Memo {
        strict: bool,
        table: HashMap<(Partition, u32), BigUint>,
        below: HashMap<Partition, Vec<Partition>>,
    }
    impl Memo {
        // chains of length `len` strictly/weakly below `nu`, where the
        // element directly under nu must differ from nu in strict mode
        fn chains_under(&mut self, nu: &Partition, len: u32, allow_equal: bool) -> BigUint {
            if len == 0 {
                return BigUint::one();
            }
            let key = (nu.clone(), len * 2 + u32::from(allow_equal));
            if let Some(v) = self.table.get(&key) {
                return v.clone();
            }
            let subs = self
                .below
                .entry(nu.clone())
                .or_insert_with(|| subpartitions(nu))
                .clone();
            let mut total = BigUint::zero();
            for mu in subs.iter().filter(|mu| allow_equal || *mu != nu) {
                total += self.chains_under(mu, len - 1, !self.strict);
            }
            self.table.insert(key, total.clone());
            total
        }
    }
    let mut memo = Memo {
        strict,
        table: HashMap::new(),
        below: HashMap::new(),
    };
    Ok(CountResult {
        value: memo.chains_under(lambda, k, true),
        method: Method::MemoizedChain,
        params: CountParams::chain(lambda, k, strict),
    })
}

/// An upper bound carried in log space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Bound {
    pub log_bound: f64,
    /// `exp(log_bound)`; `inf` once that overflows.
    pub bound: f64,
}

impl Bound {
    fn from_log(log_bound: f64) -> Self {
        Bound {
            log_bound,
            bound: log_bound.exp(),
        }
    }

    /// The bound raised to the power `k`, for k-chains.
    pub fn pow(&self, k: u32) -> Self {
        Bound::from_log(self.log_bound * f64::from(k))
    }
}

/// `exp(sum_j phi(h(j) - h(j-1)))` with `h` the lower convex envelope of the
/// profile on its window; bounds the number of bridges under the profile and
/// hence the number of subpartitions.
pub fn corollary2_bound(profile: &LatticeProfile) -> Bound {
    let (lo, _) = profile.window();
    let values: Vec<f64> = profile.values().iter().map(|&v| v as f64).collect();
    let f = DiscreteFunction::new(lo, values).expect("profiles are nonempty and finite");
    let vertices = f.hull_vertices();
    let log_bound = vertices
        .windows(2)
        .map(|w| {
            let width = (w[1] - w[0]) as f64;
            let slope = (f.values()[w[1]] - f.values()[w[0]]) / width;
            width * phi(slope).expect("hull slopes of a 1-Lipschitz profile lie in [-1, 1]")
        })
        .sum();
    Bound::from_log(log_bound)
}

fn pentagonal_table() -> &'static Mutex<Vec<BigInt>> {
    static TABLE: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![BigInt::one()]))
}

/// `p(n)` by Euler's pentagonal-number recurrence, memoized in a
/// process-wide table that grows on demand.
pub fn partition_count(n: u64) -> CountResult {
    let mut table = pentagonal_table().lock().unwrap_or_else(|e| e.into_inner());
    let n_us = n as usize;
    while table.len() <= n_us {
        let i = table.len() as i64;
        let mut total = BigInt::zero();
        for k in 1i64.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = table[(i - g1) as usize].clone();
            if g2 <= i {
                term += &table[(i - g2) as usize];
            }
            if k % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        table.push(total);
    }
    let value = table[n_us]
        .to_biguint()
        .expect("partition numbers are nonnegative");
    CountResult {
        value,
        method: Method::Pentagonal,
        params: CountParams {
            n: Some(n),
            ..Default::default()
        },
    }
}

/// `p(n)` by the independent bottom-up recurrence on the largest part,
/// `p(m, <= j) = p(m, <= j-1) + p(m - j, <= j)`.
pub fn partition_count_iterative(n: u64) -> CountResult {
    let n_us = n as usize;
    let mut ways = vec![BigUint::zero(); n_us + 1];
    ways[0] = BigUint::one();
    for part in 1..=n_us {
        for m in part..=n_us {
            let add = ways[m - part].clone();
            ways[m] += add;
        }
    }
    CountResult {
        value: ways.swap_remove(n_us),
        method: Method::PartsDp,
        params: CountParams {
            n: Some(n),
            ..Default::default()
        },
    }
}

/// `k pi sqrt(2n/3)`, the leading exponent of the maximal k-chain count.
pub fn hr_exponent(n: u64, k: u32) -> f64 {
    f64::from(k) * PI * (2.0 * n as f64 / 3.0).sqrt()
}
