//! Zeta functions from point counts: the power series, its exact rational
//! reconstruction, the middle factor of a complete intersection, and Newton
//! polygons.

mod bareiss;
pub mod intpoly;
mod newton;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::counting::PointCountSequence;
use crate::serde_big;
use intpoly::{expand_quotient, inverse_unit_series, mul, mul_trunc, reciprocal_power_sums, trim};

pub use bareiss::{eliminate, solve, Echelon, Inconsistent};
pub use newton::{divisibility_check, max_divisible_kappa, newton_polygon, weil_symmetry_check, NewtonPolygon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("need at least S = {min_s} counts for the requested degrees (have {have})")]
    InsufficientCounts { min_s: usize, have: usize },
    #[error("no rational function with numerator degree <= {deg_num} and denominator degree <= {deg_den} fits the series")]
    DegreeBoundsTooSmall { deg_num: usize, deg_den: usize },
    #[error("integrality violated: {0}")]
    IntegralityViolation(String),
    #[error("series does not truncate to a degree-{degree} factor: {detail}")]
    NotCompleteIntersectionLike { degree: usize, detail: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// `Z(t) = Σ c_s t^s` with `c_0 = 1`, through order `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaSeries {
    pub q: BigInt,
    pub coeffs: Vec<BigRational>,
}

impl ZetaSeries {
    /// Solves `s c_s = Σ_{j=1}^{s} N_j c_{s-j}`.
    pub fn from_counts(q: BigInt, counts: &[BigInt]) -> Self {
        let mut coeffs = vec![BigRational::one()];
        for s in 1..=counts.len() {
            let mut acc = BigRational::zero();
            for j in 1..=s {
                acc += BigRational::from_integer(counts[j - 1].clone()) * &coeffs[s - j];
            }
            coeffs.push(acc / BigRational::from_integer(BigInt::from(s)));
        }
        ZetaSeries { q, coeffs }
    }

    /// Highest order represented.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>, ZetaError> {
        intpoly::to_integer(&self.coeffs).ok_or_else(|| {
            let s = self.coeffs.iter().position(|c| !c.is_integer()).unwrap_or(0);
            ZetaError::IntegralityViolation(format!("series coefficient c_{s} = {} is not an integer", self.coeffs[s]))
        })
    }
}

impl Serialize for ZetaSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ZetaSeries", 2)?;
        st.serialize_field("q", &self.q.to_string())?;
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// The zeta series of `X` (or of the complement `U` with `use_complement`).
pub fn series_from_counts(counts: &PointCountSequence, use_complement: bool) -> ZetaSeries {
    let source = if use_complement {
        &counts.complement_counts
    } else {
        &counts.counts
    };
    ZetaSeries::from_counts(counts.q(), source)
}

/// `numerator / denominator`, both with constant term 1 and no common factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalZeta {
    #[serde(serialize_with = "serde_big::ints")]
    pub numerator: Vec<BigInt>,
    #[serde(serialize_with = "serde_big::ints")]
    pub denominator: Vec<BigInt>,
}

impl RationalZeta {
    pub fn new(numerator: Vec<BigInt>, denominator: Vec<BigInt>) -> Self {
        RationalZeta {
            numerator: trim(numerator),
            denominator: trim(denominator),
        }
    }

    /// Series coefficients `c_0 .. c_order`.
    pub fn expand(&self, order: usize) -> Vec<BigInt> {
        expand_quotient(&self.numerator, &self.denominator, order + 1)
    }

    /// Point counts `N_1 .. N_len` from the logarithmic derivative: poles
    /// contribute `+γ^s`, zeros `-γ^s`.
    pub fn counts(&self, len: usize) -> Vec<BigInt> {
        let poles = reciprocal_power_sums(&self.denominator, len);
        let zeros = reciprocal_power_sums(&self.numerator, len);
        poles.into_iter().zip(zeros).map(|(a, b)| a - b).collect()
    }
}

/// Finds `P/Q` with `deg P <= deg_num`, `deg Q <= deg_den`, `Q(0) = 1` and
/// `Q Z ≡ P mod t^{S+1}`.
///
/// The coefficients of `Q` solve the equations at orders above `deg_num`
/// by fraction-free elimination; `P` is then read off. Common factors of
/// `P` and `Q` are cancelled over `Q`.
pub fn pade_reconstruct(series: &ZetaSeries, deg_num: usize, deg_den: usize) -> Result<RationalZeta, ZetaError> {
    let s_max = series.order();
    if s_max < deg_num + deg_den {
        return Err(ZetaError::InsufficientCounts {
            min_s: deg_num + deg_den,
            have: s_max,
        });
    }
    let z = series.integer_coeffs()?;
    // rows k = deg_num+1 ..= S:  Σ_{i=1}^{deg_den} Q_i z_{k-i} = -z_k
    let mut a = Vec::new();
    let mut b = Vec::new();
    for k in deg_num + 1..=s_max {
        a.push(
            (1..=deg_den)
                .map(|i| if i <= k { z[k - i].clone() } else { BigInt::zero() })
                .collect::<Vec<_>>(),
        );
        b.push(-z[k].clone());
    }
    let q_tail = if deg_den == 0 {
        if b.iter().any(|v| !v.is_zero()) {
            return Err(ZetaError::DegreeBoundsTooSmall { deg_num, deg_den });
        }
        Vec::new()
    } else if a.is_empty() {
        vec![BigRational::zero(); deg_den]
    } else {
        solve(a, b).map_err(|_| ZetaError::DegreeBoundsTooSmall { deg_num, deg_den })?
    };
    let mut q_poly = vec![BigRational::one()];
    q_poly.extend(q_tail);
    let zr = intpoly::to_rational(&z);
    let p_poly: Vec<BigRational> = (0..=deg_num)
        .map(|k| {
            (0..=k.min(deg_den))
                .map(|i| &q_poly[i] * &zr[k - i])
                .fold(BigRational::zero(), |x, y| x + y)
        })
        .collect();

    let g = intpoly::gcd_rational(&p_poly, &q_poly);
    let (p_red, _) = intpoly::div_rem_rational(&p_poly, &g);
    let (q_red, _) = intpoly::div_rem_rational(&q_poly, &g);
    let norm = q_red[0].clone();
    let p_red: Vec<BigRational> = p_red.into_iter().map(|c| c / &norm).collect();
    let q_red: Vec<BigRational> = q_red.into_iter().map(|c| c / &norm).collect();

    let numerator = intpoly::to_integer(&p_red).ok_or_else(|| {
        ZetaError::IntegralityViolation(format!("reconstructed numerator has non-integral coefficients: {p_red:?}"))
    })?;
    let denominator = intpoly::to_integer(&q_red).ok_or_else(|| {
        ZetaError::IntegralityViolation(format!("reconstructed denominator has non-integral coefficients: {q_red:?}"))
    })?;
    let zeta = RationalZeta::new(numerator, denominator);
    if zeta.expand(s_max) != z {
        return Err(ZetaError::DegreeBoundsTooSmall { deg_num, deg_den });
    }
    Ok(zeta)
}

/// The primitive middle factor `P_m` of a smooth complete intersection of
/// dimension `m` with `b_prim`-dimensional primitive cohomology.
///
/// `Z(t) Π_{j=0}^{m} (1 - q^j t)` equals `P_m` for odd `m` and `1/P_m` for
/// even `m`; the result must vanish beyond degree `b_prim` through order `S`.
pub fn extract_middle_factor(series: &ZetaSeries, m: u32, b_prim: usize) -> Result<Vec<BigInt>, ZetaError> {
    let s_max = series.order();
    if s_max < b_prim {
        return Err(ZetaError::InsufficientCounts {
            min_s: b_prim,
            have: s_max,
        });
    }
    let z = series.integer_coeffs()?;
    let len = s_max + 1;
    let trivial = intpoly::trivial_factors(&series.q, 0..=m);
    let mut product = mul_trunc(&z, &trivial, len);
    if m.is_multiple_of(2) {
        product = inverse_unit_series(&product, len);
    }
    if let Some(k) = (b_prim + 1..len).find(|&k| !product[k].is_zero()) {
        return Err(ZetaError::NotCompleteIntersectionLike {
            degree: b_prim,
            detail: format!("coefficient of t^{k} is {}", product[k]),
        });
    }
    product.truncate(b_prim + 1);
    Ok(product)
}

/// `ζ(X)` of a smooth complete intersection assembled from its middle
/// factor.
pub fn complete_intersection_zeta(middle: &[BigInt], q: &BigInt, m: u32) -> RationalZeta {
    let trivial = intpoly::trivial_factors(q, 0..=m);
    if m % 2 == 1 {
        RationalZeta::new(middle.to_vec(), trivial)
    } else {
        RationalZeta::new(vec![BigInt::one()], mul(&trivial, middle))
    }
}

#[cfg(test)]
mod tests {
    use super::intpoly::small;
    use super::*;

    fn ints(series: &ZetaSeries) -> Vec<BigInt> {
        series.integer_coeffs().unwrap()
    }

    #[test]
    fn series_examples() {
        let p1 = ZetaSeries::from_counts(2.into(), &small(&[3, 5, 9, 17]));
        assert_eq!(ints(&p1), small(&[1, 3, 7, 15, 31]));
        let pt = ZetaSeries::from_counts(2.into(), &small(&[1, 1, 1]));
        assert_eq!(ints(&pt), small(&[1, 1, 1, 1]));
        let empty = ZetaSeries::from_counts(2.into(), &small(&[0, 0]));
        assert_eq!(ints(&empty), small(&[1, 0, 0]));
        // counts of no scheme: c_1 = 1, c_2 = (1 + 0)/2
        let bad = ZetaSeries::from_counts(2.into(), &small(&[1, 0]));
        assert!(matches!(bad.integer_coeffs(), Err(ZetaError::IntegralityViolation(_))));
    }

    #[test]
    fn projective_line_reconstruction() {
        let series = ZetaSeries::from_counts(2.into(), &small(&[3, 5]));
        let z = pade_reconstruct(&series, 0, 2).unwrap();
        assert_eq!(z.numerator, small(&[1]));
        assert_eq!(z.denominator, small(&[1, -3, 2]));
        assert_eq!(z.counts(4), small(&[3, 5, 9, 17]));
    }

    #[test]
    fn point_reconstruction() {
        let series = ZetaSeries::from_counts(5.into(), &small(&[1, 1, 1]));
        let z = pade_reconstruct(&series, 0, 1).unwrap();
        assert_eq!(z.denominator, small(&[1, -1]));
    }

    #[test]
    fn split_quadric_reconstruction() {
        // (q+1)^2 points over F_{2^s}
        let counts: Vec<BigInt> = (1..=4).map(|s| BigInt::from((2i64.pow(s) + 1).pow(2))).collect();
        let series = ZetaSeries::from_counts(2.into(), &counts);
        let z = pade_reconstruct(&series, 0, 4).unwrap();
        let expect = mul(&mul(&small(&[1, -1]), &small(&[1, -2])), &mul(&small(&[1, -2]), &small(&[1, -4])));
        assert_eq!(z.numerator, small(&[1]));
        assert_eq!(z.denominator, expect);
        assert_eq!(extract_middle_factor(&series, 2, 1).unwrap(), small(&[1, -2]));
    }

    #[test]
    fn common_factors_cancel() {
        // generous bounds on P^1 data still give the reduced form
        let counts: Vec<BigInt> = (1..=8).map(|s| BigInt::from(3i64.pow(s) + 1)).collect();
        let series = ZetaSeries::from_counts(3.into(), &counts);
        let z = pade_reconstruct(&series, 2, 4).unwrap();
        assert_eq!(z.numerator, small(&[1]));
        assert_eq!(z.denominator, small(&[1, -4, 3]));
    }

    #[test]
    fn reconstruction_errors() {
        let series = ZetaSeries::from_counts(2.into(), &small(&[3]));
        assert_eq!(
            pade_reconstruct(&series, 0, 2),
            Err(ZetaError::InsufficientCounts { min_s: 2, have: 1 })
        );
        // P^2 over F_2 does not fit a single pole
        let series = ZetaSeries::from_counts(2.into(), &small(&[7, 21, 73]));
        assert!(matches!(
            pade_reconstruct(&series, 0, 1),
            Err(ZetaError::DegreeBoundsTooSmall { .. })
        ));
    }

    #[test]
    fn elliptic_middle_factor() {
        // y^2 z = x^3 - x z^2 over F_5: N_1 = 8, N_2 = 5^2 + 1 - (a^2 - 2*5) with a = -2
        let p1 = small(&[1, 2, 5]);
        let zeta = complete_intersection_zeta(&p1, &BigInt::from(5), 1);
        let counts = zeta.counts(4);
        assert_eq!(counts[0], BigInt::from(8));
        let series = ZetaSeries::from_counts(5.into(), &counts[..2]);
        assert_eq!(extract_middle_factor(&series, 1, 2).unwrap(), p1);
        // too few counts for the claimed degree
        let short = ZetaSeries::from_counts(5.into(), &counts[..1]);
        assert!(matches!(
            extract_middle_factor(&short, 1, 2),
            Err(ZetaError::InsufficientCounts { min_s: 2, have: 1 })
        ));
        // a degree that is too small shows up as a non-truncating product
        let long = ZetaSeries::from_counts(5.into(), &counts);
        assert!(matches!(
            extract_middle_factor(&long, 1, 1),
            Err(ZetaError::NotCompleteIntersectionLike { degree: 1, .. })
        ));
    }

    #[test]
    fn projective_space_has_trivial_middle() {
        let counts: Vec<BigInt> = (1..=3).map(|s| BigInt::from(1 + 4i64.pow(s) + 16i64.pow(s))).collect();
        let series = ZetaSeries::from_counts(4.into(), &counts);
        assert_eq!(extract_middle_factor(&series, 2, 0).unwrap(), small(&[1]));
    }
}
