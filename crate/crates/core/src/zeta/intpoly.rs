//! Dense univariate polynomials and truncated power series over `Z` and
//! `Q`, coefficients lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn trim<T: Zero>(mut v: Vec<T>) -> Vec<T> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Degree of a trimmed polynomial; the zero polynomial reports 0.
pub fn degree<T: Zero>(v: &[T]) -> usize {
    v.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

pub fn mul<T>(a: &[T], b: &[T]) -> Vec<T>
where
    T: Zero + Clone,
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
{
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x * y;
        }
    }
    out
}

/// `a * b mod t^len`.
pub fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Inverse of a series with constant term 1, through `len` coefficients.
pub fn inverse_unit_series(a: &[BigInt], len: usize) -> Vec<BigInt> {
    assert!(a.first().is_some_and(One::is_one), "constant term must be 1");
    let mut inv = vec![BigInt::zero(); len];
    if len == 0 {
        return inv;
    }
    inv[0] = BigInt::one();
    for k in 1..len {
        let mut acc = BigInt::zero();
        for j in 1..=k.min(a.len() - 1) {
            acc += &a[j] * &inv[k - j];
        }
        inv[k] = -acc;
    }
    inv
}

/// Expansion of `num / den` through `len` coefficients, `den(0) = 1`.
pub fn expand_quotient(num: &[BigInt], den: &[BigInt], len: usize) -> Vec<BigInt> {
    mul_trunc(num, &inverse_unit_series(den, len), len)
}

/// `(1 - c t)`.
pub fn linear_factor(c: &BigInt) -> Vec<BigInt> {
    vec![BigInt::one(), -c]
}

/// `Π_{j in range} (1 - q^j t)`.
pub fn trivial_factors(q: &BigInt, range: std::ops::RangeInclusive<u32>) -> Vec<BigInt> {
    range.fold(vec![BigInt::one()], |acc, j| mul(&acc, &linear_factor(&q.pow(j))))
}

/// Power sums `p_1..p_len` of the reciprocal roots `γ` of
/// `f = Π (1 - γ t)`, from Newton's identities.
pub fn reciprocal_power_sums(f: &[BigInt], len: usize) -> Vec<BigInt> {
    assert!(f.first().is_some_and(One::is_one), "constant term must be 1");
    let coeff = |j: usize| f.get(j).cloned().unwrap_or_else(BigInt::zero);
    let mut p: Vec<BigInt> = Vec::with_capacity(len);
    for s in 1..=len {
        let mut acc = -(coeff(s) * BigInt::from(s));
        for j in 1..s {
            acc -= &p[j - 1] * coeff(s - j);
        }
        p.push(acc);
    }
    p
}

/// `v_p(x)`, `None` for zero.
pub fn valuation(x: &BigInt, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

pub fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

/// Integer coefficients, or `None` if some coefficient is not integral.
pub fn to_integer(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

/// `(quotient, remainder)` over `Q`; `b` must be nonzero.
pub fn div_rem_rational(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let db = degree(&b);
    let lead = b[db].clone();
    assert!(!lead.is_zero(), "division by the zero polynomial");
    let mut r = trim(a.to_vec());
    if degree(&r) < db || r.iter().all(Zero::is_zero) {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); degree(&r) - db + 1];
    while !r.iter().all(Zero::is_zero) && degree(&r) >= db {
        let dr = degree(&r);
        let c = &r[dr] / &lead;
        for (i, bc) in b.iter().enumerate() {
            let idx = dr - db + i;
            r[idx] = &r[idx] - &c * bc;
        }
        q[dr - db] = c;
        r = trim(r);
    }
    (q, r)
}

/// Greatest common divisor over `Q`, normalized to constant term 1 when the
/// constant term is nonzero, otherwise monic.
pub fn gcd_rational(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.iter().all(Zero::is_zero) {
        let (_, r) = div_rem_rational(&x, &y);
        x = y;
        y = r;
    }
    let norm = if !x[0].is_zero() {
        x[0].clone()
    } else {
        x[degree(&x)].clone()
    };
    if norm.is_zero() {
        return x;
    }
    x.into_iter().map(|c| c / &norm).collect()
}

/// Renders `1 + 2*t - 5*t^2`.
pub fn render(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let var = match j {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{j}"),
        };
        if var.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&format!("{mag}*{var}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn small(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn fits_i64(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(ToPrimitive::to_i64).collect()
}
