//! Fraction-free Gaussian elimination over `Z`.
//!
//! Row reduction uses Bareiss' update
//! `a[i][j] <- (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev_pivot`,
//! whose division is exact because every entry stays a minor of the input.
//! Rank-deficient systems are handled by skipping pivot-free columns; those
//! unknowns are set to zero in the returned solution.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inconsistent;

/// Echelon form of an augmented integer system.
#[derive(Debug, Clone)]
pub struct Echelon {
    rows: Vec<Vec<BigInt>>,
    rhs: Vec<BigInt>,
    /// `(row, column)` of each pivot, in order.
    pivots: Vec<(usize, usize)>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn eliminate(mut a: Vec<Vec<BigInt>>, mut b: Vec<BigInt>) -> Echelon {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        b.swap(r, pr);
        for i in r + 1..nrows {
            let factor = a[i][c].clone();
            for j in c + 1..ncols {
                let v = &a[r][c] * &a[i][j] - &factor * &a[r][j];
                a[i][j] = v / &prev;
            }
            let v = &a[r][c] * &b[i] - &factor * &b[r];
            b[i] = v / &prev;
            a[i][c] = BigInt::zero();
        }
        // rows above the pivot row are untouched, rows below were scaled
        // consistently, so the previous pivot is the divisor for the next step
        prev = a[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    Echelon {
        rows: a,
        rhs: b,
        pivots,
    }
}

/// One rational solution of `a x = b`, free unknowns set to zero.
pub fn solve(a: Vec<Vec<BigInt>>, b: Vec<BigInt>) -> Result<Vec<BigRational>, Inconsistent> {
    let ncols = a.first().map_or(0, Vec::len);
    let e = eliminate(a, b);
    if e.rhs[e.rank()..].iter().any(|v| !v.is_zero()) {
        return Err(Inconsistent);
    }
    let mut x = vec![BigRational::zero(); ncols];
    for &(r, c) in e.pivots.iter().rev() {
        let mut acc = BigRational::from_integer(e.rhs[r].clone());
        for j in c + 1..ncols {
            if !e.rows[r][j].is_zero() {
                acc -= BigRational::from_integer(e.rows[r][j].clone()) * &x[j];
            }
        }
        x[c] = acc / BigRational::from_integer(e.rows[r][c].clone());
    }
    Ok(x)
}
