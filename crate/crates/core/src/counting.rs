//! Exhaustive counting of `|X(F_{q^s})|`.
//!
//! Projective points are enumerated through one normalized representative
//! each: for every pivot `i`, coordinates before `i` are zero, coordinate `i`
//! is one, and the rest range over the field with the last coordinate varying
//! fastest. The stream is split into contiguous index ranges that workers
//! count independently; the per-range integers are summed, so the result does
//! not depend on scheduling.
//!
//! Cost model: one system evaluation per representative, i.e.
//! `|P^n(F_{q^s})|` evaluations for level `s`.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::ff::kernel::{KernelArith, PackedArith, TableArith, TABLE_LIMIT};
use crate::ff::{build_field, FieldDescriptor, FieldElement, FieldError};
use crate::poly::{EvaluationKernel, PolynomialSystem};
use crate::serde_big;

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("estimated cost {estimated} evaluations exceeds the budget of {budget}{}", largest_hint(.largest_feasible))]
    BudgetExceeded {
        estimated: u128,
        budget: u64,
        /// Largest tower height that fits, for tower requests.
        largest_feasible: Option<usize>,
    },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("tower height must be at least 1")]
    EmptyTower,
}

fn largest_hint(largest: &Option<usize>) -> String {
    match largest {
        Some(0) => " (not even S = 1 fits)".into(),
        Some(s) => format!(" (largest feasible S is {s})"),
        None => String::new(),
    }
}

/// Which element representation the counting loop uses. Results are
/// identical; `Tables` is faster and applies to fields of order at most
/// `2^16` (larger fields silently use `Dense`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    #[default]
    Dense,
    Tables,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountConfig {
    pub workers: usize,
    /// Cap on total kernel evaluations.
    pub budget: u64,
    pub arithmetic: Arithmetic,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            budget: DEFAULT_BUDGET,
            arithmetic: Arithmetic::Dense,
        }
    }
}

impl CountConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_arithmetic(mut self, arithmetic: Arithmetic) -> Self {
        self.arithmetic = arithmetic;
        self
    }
}

/// `|P^n(F_q)| = 1 + q + .. + q^n`.
pub fn projective_space_size(n: usize, q: &BigUint) -> BigUint {
    let mut acc = BigUint::zero();
    let mut pow = BigUint::one();
    for _ in 0..=n {
        acc += &pow;
        pow *= q;
    }
    acc
}

fn projective_size_u128(n: usize, q: u64) -> u128 {
    let mut acc: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..=n {
        acc = acc.saturating_add(pow);
        pow = pow.saturating_mul(u128::from(q));
    }
    acc
}

/// One representative per point of `P^n(field)`, in canonical order.
pub fn enumerate_projective(
    n: usize,
    field: &Arc<FieldDescriptor>,
) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
    let q = field.order();
    (0..=n).flat_map(move |pivot| {
        let tail = (n - pivot) as u32;
        (0..q.pow(tail)).map(move |mut t| {
            let mut v = vec![field.zero(); n + 1];
            v[pivot] = field.one();
            for coord in (pivot + 1..=n).rev() {
                v[coord] = field.element_at(t % q);
                t /= q;
            }
            v
        })
    })
}

/// Counts zeros of the system over `F^{len}` restricted to vectors whose
/// first `prefix.len()` coordinates equal `prefix`, for tail indices in
/// `lo..hi` (last coordinate least significant).
fn count_tail_range<A: KernelArith>(
    arith: &A,
    kernels: &[EvaluationKernel<A::Elem>],
    elems: &[A::Elem],
    prefix: &[A::Elem],
    nvars: usize,
    lo: u64,
    hi: u64,
) -> u64 {
    if lo >= hi {
        return 0;
    }
    let q = elems.len() as u64;
    let tail_len = nvars - prefix.len();
    let mut point: Vec<A::Elem> = prefix.to_vec();
    let mut digits = vec![0usize; tail_len];
    let mut t = lo;
    for d in digits.iter_mut().rev() {
        *d = (t % q) as usize;
        t /= q;
    }
    point.extend(digits.iter().map(|&d| elems[d]));
    let mut scratch: Vec<Vec<A::Elem>> = kernels.iter().map(|k| k.scratch(arith)).collect();

    let mut count = 0u64;
    let mut remaining = hi - lo;
    loop {
        let on_variety = kernels
            .iter()
            .zip(scratch.iter_mut())
            .all(|(k, s)| arith.is_zero(k.eval_with(arith, &point, s)));
        if on_variety {
            count += 1;
        }
        remaining -= 1;
        if remaining == 0 {
            break;
        }
        // odometer over the tail
        let mut j = tail_len;
        loop {
            j -= 1;
            digits[j] += 1;
            if digits[j] < elems.len() {
                point[prefix.len() + j] = elems[digits[j]];
                break;
            }
            digits[j] = 0;
            point[prefix.len() + j] = elems[0];
        }
    }
    count
}

struct Block {
    start: u64,
    len: u64,
    pivot: Option<usize>,
}

/// Splits the blocks into contiguous index ranges and sums their counts.
fn count_blocks<A: KernelArith>(
    arith: &A,
    kernels: &[EvaluationKernel<A::Elem>],
    nvars: usize,
    blocks: &[Block],
    workers: usize,
) -> Result<u64, CountError> {
    let elems = arith.all_elements();
    let total: u64 = blocks.iter().map(|b| b.len).sum();
    let pieces = (workers as u64 * 32).clamp(1, total.max(1));
    let step = total.div_ceil(pieces).max(1);
    let ranges: Vec<(u64, u64)> = (0..total)
        .step_by(step as usize)
        .map(|lo| (lo, (lo + step).min(total)))
        .collect();

    let count_range = |(lo, hi): (u64, u64)| -> u64 {
        let mut acc = 0;
        for b in blocks {
            let a = lo.max(b.start);
            let z = hi.min(b.start + b.len);
            if a >= z {
                continue;
            }
            let prefix: Vec<A::Elem> = match b.pivot {
                Some(pivot) => {
                    let mut v = vec![arith.zero(); pivot + 1];
                    v[pivot] = arith.one();
                    v
                }
                None => Vec::new(),
            };
            acc += count_tail_range(arith, kernels, &elems, &prefix, nvars, a - b.start, z - b.start);
        }
        acc
    };

    if workers <= 1 {
        return Ok(ranges.into_iter().map(count_range).sum());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CountError::Inconsistent(format!("thread pool: {e}")))?;
    Ok(pool.install(|| ranges.into_par_iter().map(count_range).sum()))
}

fn projective_blocks(n: usize, q: u64) -> Vec<Block> {
    let mut start = 0;
    (0..=n)
        .map(|pivot| {
            let len = q.pow((n - pivot) as u32);
            let b = Block {
                start,
                len,
                pivot: Some(pivot),
            };
            start += len;
            b
        })
        .collect()
}

enum Mode {
    Projective,
    Cone,
}

fn run<A: KernelArith>(
    arith: &A,
    system: &PolynomialSystem,
    mode: Mode,
    workers: usize,
) -> Result<u64, CountError> {
    let n = system.ambient_dim();
    let q = arith.order();
    // identically vanishing equations impose nothing
    let kernels: Vec<_> = system
        .polys()
        .iter()
        .map(|f| f.compile(arith))
        .filter(|k| !k.is_zero())
        .collect();
    let blocks = match mode {
        Mode::Projective => projective_blocks(n, q),
        Mode::Cone => vec![Block {
            start: 0,
            len: q.pow(n as u32 + 1),
            pivot: None,
        }],
    };
    count_blocks(arith, &kernels, n + 1, &blocks, workers)
}

fn dispatch(
    system: &PolynomialSystem,
    field: &FieldDescriptor,
    config: &CountConfig,
    mode: Mode,
) -> Result<u64, CountError> {
    if config.arithmetic == Arithmetic::Tables && field.order() <= TABLE_LIMIT {
        run(&TableArith::new(field)?, system, mode, config.workers)
    } else {
        run(&PackedArith::new(field)?, system, mode, config.workers)
    }
}

/// `|X(F)|` for `X ⊂ P^n` cut out by `system`.
pub fn count_points(
    system: &PolynomialSystem,
    field: &FieldDescriptor,
    config: &CountConfig,
) -> Result<u64, CountError> {
    let cost = projective_size_u128(system.ambient_dim(), field.order());
    if cost > u128::from(config.budget) {
        return Err(CountError::BudgetExceeded {
            estimated: cost,
            budget: config.budget,
            largest_feasible: None,
        });
    }
    dispatch(system, field, config, Mode::Projective)
}

/// Independent count through the affine cone: solutions in `F^{n+1}`,
/// origin included, give `(count - 1) / (q - 1)` projective points.
pub fn cone_count_oracle(
    system: &PolynomialSystem,
    field: &FieldDescriptor,
    config: &CountConfig,
) -> Result<u64, CountError> {
    let q = field.order();
    let cost = u128::from(q).saturating_pow(system.ambient_dim() as u32 + 1);
    if cost > u128::from(config.budget) {
        return Err(CountError::BudgetExceeded {
            estimated: cost,
            budget: config.budget,
            largest_feasible: None,
        });
    }
    let affine = dispatch(system, field, config, Mode::Cone)?;
    if affine == 0 || (affine - 1) % (q - 1) != 0 {
        return Err(CountError::Inconsistent(format!(
            "cone count {affine} is not 1 mod {}",
            q - 1
        )));
    }
    Ok((affine - 1) / (q - 1))
}

/// `N_s = |X(F_{q^s})|` for `s = 1..=S`, `q = p^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointCountSequence {
    pub p: u64,
    pub d: u32,
    /// Ambient projective dimension.
    pub n: usize,
    #[serde(serialize_with = "serde_big::ints")]
    pub counts: Vec<BigInt>,
    /// `|P^n(F_{q^s})| - N_s`, the counts of the complement `U`.
    #[serde(serialize_with = "serde_big::ints")]
    pub complement_counts: Vec<BigInt>,
}

impl PointCountSequence {
    /// Builds a sequence from known counts, deriving the complement.
    pub fn from_counts(p: u64, d: u32, n: usize, counts: Vec<BigInt>) -> Self {
        let q = BigUint::from(p).pow(d);
        let complement_counts = counts
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let total = BigInt::from(projective_space_size(n, &q.pow(i as u32 + 1)));
                total - c
            })
            .collect();
        PointCountSequence {
            p,
            d,
            n,
            counts,
            complement_counts,
        }
    }

    pub fn q(&self) -> BigInt {
        BigInt::from(self.p).pow(self.d)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Number of closed points of each degree `e`:
    /// `a_e = (1/e) Σ_{f | e} μ(e/f) N_f`. `None` where the sum is not
    /// divisible by `e`.
    pub fn closed_point_counts(&self) -> Vec<Option<BigInt>> {
        (1..=self.counts.len())
            .map(|e| {
                let mut sum = BigInt::zero();
                for f in (1..=e).filter(|f| e % f == 0) {
                    match mobius(e / f) {
                        1 => sum += &self.counts[f - 1],
                        -1 => sum -= &self.counts[f - 1],
                        _ => {}
                    }
                }
                let e = BigInt::from(e);
                if (&sum % &e).is_zero() {
                    Some(sum / e)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Every closed-point count is a non-negative integer, and
    /// `0 <= N_s <= |P^n(F_{q^s})|`.
    pub fn is_consistent(&self) -> bool {
        self.complement_counts.iter().all(|c| c >= &BigInt::zero())
            && self.counts.iter().all(|c| c >= &BigInt::zero())
            && self
                .closed_point_counts()
                .iter()
                .all(|a| matches!(a, Some(a) if a >= &BigInt::zero()))
    }
}

pub(crate) fn mobius(mut n: usize) -> i32 {
    let mut sign = 1;
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            n /= f;
            if n.is_multiple_of(f) {
                return 0;
            }
            sign = -sign;
        }
        f += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Per-level evaluation costs `|P^n(F_{p^{ds}})|` for `s = 1..=levels`.
pub fn tower_costs(n: usize, p: u64, d: u32, levels: usize) -> Vec<u128> {
    (1..=levels)
        .map(|s| {
            let q = u128::from(p)
                .checked_pow(d * s as u32)
                .filter(|&q| q <= u128::from(u64::MAX));
            match q {
                Some(q) => projective_size_u128(n, q as u64),
                None => u128::MAX,
            }
        })
        .collect()
}

/// Largest `S' <= levels` whose cumulative cost fits `budget`.
pub fn largest_feasible_height(n: usize, p: u64, d: u32, levels: usize, budget: u64) -> usize {
    let mut total: u128 = 0;
    let mut best = 0;
    for (i, c) in tower_costs(n, p, d, levels).into_iter().enumerate() {
        total = total.saturating_add(c);
        if total > u128::from(budget) {
            break;
        }
        best = i + 1;
    }
    best
}

/// Counts over `F_{p^{ds}}` for `s = 1..=levels`, each field built
/// independently.
pub fn count_tower(
    system: &PolynomialSystem,
    p: u64,
    d: u32,
    levels: usize,
    config: &CountConfig,
) -> Result<PointCountSequence, CountError> {
    if levels == 0 {
        return Err(CountError::EmptyTower);
    }
    let n = system.ambient_dim();
    let total = tower_costs(n, p, d, levels)
        .into_iter()
        .fold(0u128, u128::saturating_add);
    if total > u128::from(config.budget) {
        return Err(CountError::BudgetExceeded {
            estimated: total,
            budget: config.budget,
            largest_feasible: Some(largest_feasible_height(n, p, d, levels, config.budget)),
        });
    }
    let mut counts = Vec::with_capacity(levels);
    for s in 1..=levels {
        let field = build_field(p, d * s as u32)?;
        counts.push(BigInt::from(dispatch(system, &field, config, Mode::Projective)?));
    }
    let seq = PointCountSequence::from_counts(p, d, n, counts);
    debug_assert!(seq
        .counts
        .iter()
        .zip(&seq.complement_counts)
        .all(|(c, u)| c.to_u128().is_some() && u >= &BigInt::zero()));
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> CountConfig {
        CountConfig::default().with_workers(2)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn projective_sizes() {
        assert_eq!(projective_space_size(3, &BigUint::from(4u32)), BigUint::from(85u32));
        assert_eq!(projective_space_size(0, &BigUint::from(9u32)), BigUint::from(1u32));
        assert_eq!(projective_space_size(5, &BigUint::from(2u32)), BigUint::from(63u32));
    }

    #[test]
    fn projective_enumeration() {
        let f2 = build_field(2, 1).unwrap();
        let pts: Vec<Vec<u64>> = enumerate_projective(1, &f2)
            .map(|v| v.iter().map(|e| e.index()).collect())
            .collect();
        assert_eq!(pts, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);

        let f3 = build_field(3, 1).unwrap();
        let pts: Vec<_> = enumerate_projective(2, &f3).collect();
        assert_eq!(pts.len(), 13);
        for v in &pts {
            let first = v.iter().find(|e| !e.is_zero()).unwrap();
            assert_eq!(first.index(), 1);
        }
    }

    #[test]
    fn empty_system_counts_projective_space() {
        let sys = PolynomialSystem::parse(3, &[] as &[&str]).unwrap();
        let f4 = build_field(2, 2).unwrap();
        assert_eq!(count_points(&sys, &f4, &cfg()).unwrap(), 85);
        let f3 = build_field(3, 1).unwrap();
        let sys2 = PolynomialSystem::parse(2, &[] as &[&str]).unwrap();
        assert_eq!(cone_count_oracle(&sys2, &f3, &cfg()).unwrap(), 13);
    }

    #[test]
    fn single_coordinate_hyperplane() {
        let sys = PolynomialSystem::parse(1, &["x0"]).unwrap();
        for (p, m) in [(2, 1), (3, 1), (2, 3)] {
            let f = build_field(p, m).unwrap();
            assert_eq!(count_points(&sys, &f, &cfg()).unwrap(), 1);
            assert_eq!(cone_count_oracle(&sys, &f, &cfg()).unwrap(), 1);
        }
    }

    #[test]
    fn split_quadric_tower() {
        let sys = PolynomialSystem::parse(3, &["x0*x3 - x1*x2"]).unwrap();
        let seq = count_tower(&sys, 2, 1, 2, &cfg()).unwrap();
        assert_eq!(seq.counts, big(&[9, 25]));
        assert_eq!(seq.complement_counts, big(&[6, 60]));
        assert!(seq.is_consistent());
    }

    #[test]
    fn projective_line_tower() {
        let sys = PolynomialSystem::parse(1, &[] as &[&str]).unwrap();
        let seq = count_tower(&sys, 2, 1, 3, &cfg()).unwrap();
        assert_eq!(seq.counts, big(&[3, 5, 9]));
    }

    #[test]
    fn budget_is_checked_up_front() {
        let sys = PolynomialSystem::parse(3, &["x0*x3 - x1*x2"]).unwrap();
        let small = cfg().with_budget(100);
        // levels cost 15, 85, 585
        let err = count_tower(&sys, 2, 1, 3, &small).unwrap_err();
        assert_eq!(
            err,
            CountError::BudgetExceeded {
                estimated: 685,
                budget: 100,
                largest_feasible: Some(2)
            }
        );
        let f8 = build_field(2, 3).unwrap();
        assert!(matches!(
            count_points(&sys, &f8, &small),
            Err(CountError::BudgetExceeded { estimated: 585, .. })
        ));
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i32> = (1..=12).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn closed_points_of_projective_line() {
        // P^1 over F_2: 3 points of degree 1, 1 of degree 2, 2 of degree 3
        let seq = PointCountSequence::from_counts(2, 1, 1, big(&[3, 5, 9]));
        let a: Vec<_> = seq.closed_point_counts().into_iter().map(Option::unwrap).collect();
        assert_eq!(a, big(&[3, 1, 2]));
        let bad = PointCountSequence::from_counts(2, 1, 1, big(&[3, 4, 9]));
        assert!(!bad.is_consistent());
    }
}
