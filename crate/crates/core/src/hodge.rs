//! Hodge numbers of smooth complete intersections from holomorphic Euler
//! characteristics.
//!
//! `χ(X, Ω^p_X(k))` is computed by recursion: binomial polynomials on `P^n`,
//! the Euler sequence for `Ω^p_{P^n}`, the Koszul resolution to restrict to
//! `X`, and the conormal filtration to pass from `Ω^p_{P^n}|_X` to `Ω^p_X`.
//! Off the middle row the diamond of a complete intersection is that of
//! `P^m`, so `χ(Ω^p_X)` alone determines the middle row.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::zeta::NewtonPolygon;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("invalid complete intersection: {0}")]
    InvalidSpec(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// `X ⊂ P^n` cut out by `r = degrees.len()` forms, `m = n - r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CompleteIntersectionSpec {
    pub n: u32,
    /// Sorted descending.
    pub degrees: Vec<u32>,
}

impl CompleteIntersectionSpec {
    pub fn new(n: u32, mut degrees: Vec<u32>) -> Result<Self, HodgeError> {
        if degrees.is_empty() {
            return Err(HodgeError::InvalidSpec("at least one equation is required".into()));
        }
        if degrees.len() > n as usize {
            return Err(HodgeError::InvalidSpec(format!(
                "{} equations in P^{n} leave negative dimension",
                degrees.len()
            )));
        }
        if degrees.contains(&0) {
            return Err(HodgeError::InvalidSpec("degrees must be at least 1".into()));
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CompleteIntersectionSpec { n, degrees })
    }

    pub fn dimension(&self) -> u32 {
        self.n - self.degrees.len() as u32
    }
}

/// `binom(n + k, n)` as a polynomial in `k`, valid for every integer `k`.
pub fn binomial_polynomial(n: u32, k: i64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=i64::from(n) {
        num *= k + i;
        den *= i;
    }
    num / den
}

fn binomial(n: u32, k: u32) -> BigInt {
    binomial_polynomial(k, i64::from(n) - i64::from(k))
}

/// Memoized `χ(X, Ω^p_X(k))` for one complete intersection.
pub struct ChiTable {
    spec: CompleteIntersectionSpec,
    /// `(|S|, Σ_{i∈S} d_i)` over all subsets `S` of the equations.
    subsets: Vec<(u32, i64)>,
    ambient: HashMap<(u32, i64), BigInt>,
    on_x: HashMap<(u32, i64), BigInt>,
}

impl ChiTable {
    pub fn new(spec: &CompleteIntersectionSpec) -> Self {
        let r = spec.degrees.len();
        let subsets = (0u32..1 << r)
            .map(|mask| {
                let size = mask.count_ones();
                let sum = (0..r)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| i64::from(spec.degrees[i]))
                    .sum();
                (size, sum)
            })
            .collect();
        ChiTable {
            spec: spec.clone(),
            subsets,
            ambient: HashMap::new(),
            on_x: HashMap::new(),
        }
    }

    /// `χ(P^n, Ω^p(k))` via `0 → Ω^p → O(-p)^{binom(n+1,p)} → Ω^{p-1} → 0`.
    pub fn ambient(&mut self, p: u32, k: i64) -> BigInt {
        if let Some(v) = self.ambient.get(&(p, k)) {
            return v.clone();
        }
        let n = self.spec.n;
        let v = if p == 0 {
            binomial_polynomial(n, k)
        } else {
            binomial(n + 1, p) * binomial_polynomial(n, k - i64::from(p)) - self.ambient(p - 1, k)
        };
        self.ambient.insert((p, k), v.clone());
        v
    }

    /// `χ(Ω^p_{P^n}(k)|_X)` from the Koszul resolution of `O_X`.
    fn ambient_restricted(&mut self, p: u32, k: i64) -> BigInt {
        let subsets = self.subsets.clone();
        subsets
            .iter()
            .map(|&(size, sum)| {
                let v = self.ambient(p, k - sum);
                if size % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }

    /// `χ(X, Ω^p_X(k))`: the conormal sequence `0 → N^∨ → Ω_{P^n}|_X → Ω_X → 0`
    /// filters `Ω^p_{P^n}|_X` with graded pieces `Λ^j N^∨ ⊗ Ω^{p-j}_X`, and
    /// `N^∨ = ⊕ O(-d_i)`.
    pub fn chi(&mut self, p: u32, k: i64) -> BigInt {
        if let Some(v) = self.on_x.get(&(p, k)) {
            return v.clone();
        }
        let mut v = self.ambient_restricted(p, k);
        let subsets = self.subsets.clone();
        for &(size, sum) in &subsets {
            if size >= 1 && size <= p {
                v -= self.chi(p - size, k - sum);
            }
        }
        self.on_x.insert((p, k), v.clone());
        v
    }
}

/// `χ(X, Ω^p_X(k))`.
pub fn chi_twisted(spec: &CompleteIntersectionSpec, p: u32, k: i64) -> BigInt {
    ChiTable::new(spec).chi(p, k)
}

/// Hodge numbers `h^{p,q}`, `0 <= p, q <= m`, with the primitive middle row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HodgeDiamond {
    pub m: u32,
    /// Row-major: `h[p][q] = h^{p,q}`.
    pub h: Vec<Vec<u64>>,
    /// `h_prim[p] = h^{p,m-p}` minus the hyperplane class when `2p = m`.
    pub h_prim: Vec<u64>,
}

impl HodgeDiamond {
    /// Diamond of `P^m`.
    pub fn projective_space(m: u32) -> Self {
        let size = m as usize + 1;
        let h = (0..size)
            .map(|p| (0..size).map(|q| u64::from(p == q)).collect())
            .collect();
        HodgeDiamond {
            m,
            h,
            h_prim: vec![0; size],
        }
    }

    fn from_table(m: u32, h: Vec<Vec<u64>>) -> Self {
        let h_prim = (0..=m as usize)
            .map(|p| {
                let q = m as usize - p;
                h[p][q] - u64::from(p == q)
            })
            .collect();
        HodgeDiamond { m, h, h_prim }
    }

    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.h.get(p).and_then(|row| row.get(q)).copied().unwrap_or(0)
    }

    /// `b_m - [m even]`, the degree of the primitive middle factor.
    pub fn primitive_middle_dim(&self) -> u64 {
        self.h_prim.iter().sum()
    }

    pub fn betti(&self, k: usize) -> u64 {
        (0..=k).map(|p| self.get(p, k - p)).sum()
    }

    /// `Σ (-1)^{p+q} h^{p,q}`.
    pub fn euler_number(&self) -> i64 {
        let mut e = 0i64;
        for (p, row) in self.h.iter().enumerate() {
            for (q, &v) in row.iter().enumerate() {
                let v = v as i64;
                e += if (p + q) % 2 == 0 { v } else { -v };
            }
        }
        e
    }

    /// Hodge symmetry and Serre duality.
    pub fn is_symmetric(&self) -> bool {
        let m = self.m as usize;
        (0..=m).all(|p| (0..=m).all(|q| self.get(p, q) == self.get(q, p) && self.get(p, q) == self.get(m - p, m - q)))
    }

    /// Off the middle row, `h^{p,q} = [p = q]`.
    pub fn has_lefschetz_shape(&self) -> bool {
        let m = self.m as usize;
        (0..=m).all(|p| (0..=m).all(|q| p + q == m || self.get(p, q) == u64::from(p == q)))
    }

    /// Diamond layout: row `k` holds `h^{p,k-p}` for `p` descending, centred.
    pub fn render(&self) -> String {
        let m = self.m as usize;
        let width = self.h.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
        let rows: Vec<String> = (0..=2 * m)
            .map(|k| {
                (k.saturating_sub(m)..=k.min(m))
                    .rev()
                    .map(|p| format!("{:^width$}", self.get(p, k - p)))
                    .collect::<Vec<_>>()
                    .join(&" ".repeat(width))
            })
            .collect();
        let longest = rows.iter().map(String::len).max().unwrap_or(0);
        rows.iter()
            .map(|r| format!("{}{r}", " ".repeat((longest - r.len()) / 2)).trim_end().to_string())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn to_count(v: &BigInt, what: impl FnOnce() -> String) -> Result<u64, HodgeError> {
    if v.is_negative() {
        return Err(HodgeError::InternalInconsistency(format!("{} is negative ({v})", what())));
    }
    v.to_u64()
        .ok_or_else(|| HodgeError::InternalInconsistency(format!("{} = {v} exceeds u64", what())))
}

/// Diamond of the smooth complete intersection `spec`.
pub fn hodge_numbers(spec: &CompleteIntersectionSpec) -> Result<HodgeDiamond, HodgeError> {
    let m = spec.dimension();
    let mut table = ChiTable::new(spec);
    let mut diamond = HodgeDiamond::projective_space(m);
    for p in 0..=m {
        let chi = table.chi(p, 0);
        let sign = if (m - p).is_multiple_of(2) { 1 } else { -1 };
        let lefschetz = if p % 2 == 0 { 1 } else { -1 };
        let prim = (chi - lefschetz) * sign;
        let prim = to_count(&prim, || format!("h_prim^{{{p},{}}}", m - p))?;
        let q = (m - p) as usize;
        diamond.h_prim[p as usize] = prim;
        diamond.h[p as usize][q] = prim + u64::from(p as usize == q);
    }
    Ok(diamond)
}

/// Smallest `p` with a nonzero primitive `h^{p,m-p}`; `m + 1` with
/// `no_primitive` set when the primitive middle row vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HodgeType {
    pub value: u32,
    pub no_primitive: bool,
}

pub fn hodge_type(diamond: &HodgeDiamond) -> HodgeType {
    match diamond.h_prim.iter().position(|&h| h != 0) {
        Some(p) => HodgeType {
            value: p as u32,
            no_primitive: false,
        },
        None => HodgeType {
            value: diamond.m + 1,
            no_primitive: true,
        },
    }
}

/// `floor((n - d_2 - .. - d_r) / d_1)`, clamped at 0. `None` for an empty
/// system, whose complement in `P^n` is empty.
pub fn ax_katz_kappa(n: u32, degrees: &[u32]) -> Option<u32> {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let (&d1, rest) = sorted.split_first()?;
    let num = i64::from(n) - rest.iter().map(|&d| i64::from(d)).sum::<i64>();
    Some(Integer::div_floor(&num, &i64::from(d1)).max(0) as u32)
}

/// Slope `i` with multiplicity `h^{i,m-i}` (primitive part if requested).
pub fn hodge_polygon(diamond: &HodgeDiamond, use_primitive: bool) -> NewtonPolygon {
    let m = diamond.m as usize;
    NewtonPolygon::from_slopes((0..=m).map(|i| {
        let mult = if use_primitive {
            diamond.h_prim[i]
        } else {
            diamond.get(i, m - i)
        };
        (Rational64::from(i as i64), mult as usize)
    }))
}

/// `h^{a,b}(Y) = h^{a,b}(P^n) + Σ_{i=1}^{κ-1} h^{a-i,b-i}(X)` with `X` the
/// complete intersection of `κ` forms of degree `d` in `P^n`.
pub fn blowup_hodge(kappa: u32, d: u32, n: u32) -> Result<HodgeDiamond, HodgeError> {
    if kappa == 0 || kappa > n {
        return Err(HodgeError::InvalidSpec(format!(
            "need 1 <= kappa <= n, got kappa = {kappa}, n = {n}"
        )));
    }
    let x = hodge_numbers(&CompleteIntersectionSpec::new(n, vec![d; kappa as usize])?)?;
    let mx = x.m as usize;
    let size = n as usize + 1;
    let mut h: Vec<Vec<u64>> = (0..size)
        .map(|a| (0..size).map(|b| u64::from(a == b)).collect())
        .collect();
    for i in 1..kappa as usize {
        for a in 0..=mx {
            for b in 0..=mx {
                if a + i < size && b + i < size {
                    h[a + i][b + i] += x.get(a, b);
                }
            }
        }
    }
    Ok(HodgeDiamond::from_table(n, h))
}

/// Both clauses of the blow-up vanishing statement on a computed diamond.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowupVerdict {
    pub kappa: u32,
    pub d: u32,
    pub n: u32,
    /// `h^{q,p}(Y) = 0` for all `q != p`, `p <= κ - 1`.
    pub low_rows_vanish: bool,
    /// Some `h^{q,p}(Y) != 0` with `p >= κ`, `q != p`.
    pub off_diagonal_above: bool,
    pub kd_at_most_n: bool,
    /// `off_diagonal_above` iff `κd <= n`.
    pub equivalence_holds: bool,
    pub holds: bool,
}

pub fn verify_12a(kappa: u32, d: u32, n: u32) -> Result<BlowupVerdict, HodgeError> {
    let y = blowup_hodge(kappa, d, n)?;
    let size = n as usize + 1;
    let k = kappa as usize;
    let low_rows_vanish = (0..k.min(size)).all(|p| (0..size).all(|q| q == p || y.get(q, p) == 0));
    let off_diagonal_above = (k..size).any(|p| (0..size).any(|q| q != p && y.get(q, p) != 0));
    let kd_at_most_n = kappa * d <= n;
    let equivalence_holds = off_diagonal_above == kd_at_most_n;
    Ok(BlowupVerdict {
        kappa,
        d,
        n,
        low_rows_vanish,
        off_diagonal_above,
        kd_at_most_n,
        equivalence_holds,
        holds: low_rows_vanish && equivalence_holds,
    })
}
