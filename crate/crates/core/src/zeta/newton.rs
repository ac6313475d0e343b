//! Newton polygons of integer polynomials, coefficient divisibility, and
//! the functional-equation symmetry of a middle factor.

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::intpoly::{degree, trim, valuation};
use super::ZetaError;

/// A lower convex polygon starting at `(0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// The input points `(j, v_q(c_j))`; for polygons built from slopes
    /// these are the vertices.
    pub points: Vec<(usize, Rational64)>,
    pub hull: Vec<(usize, Rational64)>,
    /// `(slope, multiplicity)`, slopes strictly increasing.
    pub slopes: Vec<(Rational64, usize)>,
}

impl NewtonPolygon {
    /// Polygon with the given slopes and multiplicities, sorted by slope.
    pub fn from_slopes(slopes: impl IntoIterator<Item = (Rational64, usize)>) -> Self {
        let mut merged: Vec<(Rational64, usize)> = Vec::new();
        let mut input: Vec<_> = slopes.into_iter().filter(|&(_, m)| m > 0).collect();
        input.sort();
        for (s, m) in input {
            match merged.last_mut() {
                Some((last, mult)) if *last == s => *mult += m,
                _ => merged.push((s, m)),
            }
        }
        let mut hull = vec![(0, Rational64::zero())];
        for &(s, m) in &merged {
            let &(x, y) = hull.last().unwrap();
            hull.push((x + m, y + s * Rational64::from(m as i64)));
        }
        NewtonPolygon {
            points: hull.clone(),
            hull,
            slopes: merged,
        }
    }

    /// Total horizontal length, the degree of the polynomial.
    pub fn length(&self) -> usize {
        self.hull.last().map_or(0, |&(x, _)| x)
    }

    pub fn is_empty(&self) -> bool {
        self.length() == 0
    }

    /// Height of the polygon above abscissa `x`, `0 <= x <= length`.
    pub fn ordinate_at(&self, x: usize) -> Rational64 {
        for w in self.hull.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if x0 <= x && x <= x1 {
                let t = Rational64::new((x - x0) as i64, (x1 - x0) as i64);
                return y0 + (y1 - y0) * t;
            }
        }
        self.hull.last().map_or(Rational64::zero(), |&(_, y)| y)
    }

    /// Slopes listed with repetition.
    pub fn slope_multiset(&self) -> Vec<Rational64> {
        self.slopes
            .iter()
            .flat_map(|&(s, m)| std::iter::repeat_n(s, m))
            .collect()
    }

    /// True when this polygon lies on or above `other` at every vertex of
    /// either, and both share their endpoints.
    pub fn lies_above(&self, other: &NewtonPolygon) -> bool {
        if self.length() != other.length() {
            return false;
        }
        let end = self.length();
        if self.ordinate_at(end) != other.ordinate_at(end) {
            return false;
        }
        self.hull
            .iter()
            .chain(&other.hull)
            .all(|&(x, _)| self.ordinate_at(x) >= other.ordinate_at(x))
    }
}

pub(crate) fn ratio_str(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Serialize for NewtonPolygon {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pts = |v: &[(usize, Rational64)]| -> Vec<(usize, String)> {
            v.iter().map(|(x, y)| (*x, ratio_str(y))).collect()
        };
        let slopes: Vec<(String, usize)> = self.slopes.iter().map(|(r, m)| (ratio_str(r), *m)).collect();
        let mut st = s.serialize_struct("NewtonPolygon", 3)?;
        st.serialize_field("points", &pts(&self.points))?;
        st.serialize_field("hull", &pts(&self.hull))?;
        st.serialize_field("slopes", &slopes)?;
        st.end()
    }
}

/// Lower convex hull of `(j, v_p(c_j)/d)` over the nonzero coefficients.
pub fn newton_polygon(poly: &[BigInt], p: u64, d: u32) -> Result<NewtonPolygon, ZetaError> {
    let poly = trim(poly.to_vec());
    if poly.iter().all(Zero::is_zero) {
        return Err(ZetaError::InvalidInput("zero polynomial".into()));
    }
    if !poly[0].is_one() {
        return Err(ZetaError::InvalidInput("constant term must be 1".into()));
    }
    let points: Vec<(usize, Rational64)> = poly
        .iter()
        .enumerate()
        .filter_map(|(j, c)| valuation(c, p).map(|v| (j, Rational64::new(v as i64, i64::from(d)))))
        .collect();

    // monotone chain, lower hull only
    let mut hull: Vec<(usize, Rational64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            let cross = (y2 - y1) * Rational64::from((pt.0 - x1) as i64)
                - (pt.1 - y1) * Rational64::from((x2 - x1) as i64);
            // drop the middle point when it is on or above the chord
            if cross >= Rational64::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let slopes = hull
        .windows(2)
        .map(|w| {
            let run = w[1].0 - w[0].0;
            ((w[1].1 - w[0].1) / Rational64::from(run as i64), run)
        })
        .collect();
    Ok(NewtonPolygon {
        points,
        hull,
        slopes,
    })
}

/// `v_p(c_j) >= d κ j` for every nonzero coefficient with `j >= 1`.
pub fn divisibility_check(poly: &[BigInt], p: u64, d: u32, kappa: u32) -> bool {
    poly.iter()
        .enumerate()
        .skip(1)
        .all(|(j, c)| valuation(c, p).is_none_or(|v| v >= u64::from(d) * u64::from(kappa) * j as u64))
}

/// Largest `κ <= cap` passing [`divisibility_check`].
pub fn max_divisible_kappa(poly: &[BigInt], p: u64, d: u32, cap: u32) -> u32 {
    (0..=cap).take_while(|&k| divisibility_check(poly, p, d, k)).last().unwrap_or(0)
}

/// Checks `t^b q^{mb/2} P(1/(q^m t)) = ±P(t)` with `b = deg P`.
///
/// When `q^{mb}` is a perfect square the comparison is
/// `ε c_{b-j} q^{mj} = c_j q^{mb/2}` for one sign `ε`. Otherwise both sides
/// are squared, `c_{b-j}^2 q^{2mj} = c_j^2 q^{mb}`, which keeps everything in
/// integers.
pub fn weil_symmetry_check(poly: &[BigInt], q: &BigInt, m: u32) -> bool {
    let poly = trim(poly.to_vec());
    let b = degree(&poly);
    let c = |j: usize| &poly[j];
    let full = q.pow(m * b as u32);
    let half = full.sqrt();
    if &half * &half == full {
        [1i32, -1].iter().any(|&eps| {
            (0..=b).all(|j| c(b - j) * q.pow(m * j as u32) * BigInt::from(eps) == c(j) * &half)
        })
    } else {
        (0..=b).all(|j| c(b - j) * c(b - j) * q.pow(2 * m * j as u32) == c(j) * c(j) * &full)
    }
}
