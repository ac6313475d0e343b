//! Multivariate polynomials with integer coefficients in projective
//! coordinates `x0 .. xn`, and systems of them defining `X ⊂ P^n`.
//!
//! Terms are kept in a unique normal form: graded-lexicographic order with the
//! largest term first, no repeated exponent vectors and no zero coefficients.

mod compile;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ff::{FieldElement, FieldError};

pub use compile::{reduce_and_compile, EvaluationKernel};
pub use parse::{parse_poly, MAX_EXPONENT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at column {}: {message}", position + 1)]
    Syntax { position: usize, message: String },
    #[error("unknown variable x{index} at column {} (coordinates are x0..x{})", position + 1, nvars - 1)]
    UnknownVariable {
        index: usize,
        nvars: usize,
        position: usize,
    },
    #[error("exponent {exponent} at column {} exceeds the limit {MAX_EXPONENT}", position + 1)]
    ExponentTooLarge { exponent: String, position: usize },
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("equation {index} is not homogeneous")]
    NotHomogeneous { index: usize },
    #[error("equation {index} is a nonzero constant")]
    ConstantEquation { index: usize },
    #[error("equation {index} has {found} variables, expected {expected}")]
    VariableCount {
        index: usize,
        found: usize,
        expected: usize,
    },
}

/// One monomial `coeff * x0^e0 * .. * xn^en`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: BigInt,
    pub exps: Vec<u32>,
}

impl Term {
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<Term>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::from_terms(
            nvars,
            vec![Term {
                coeff: c.into(),
                exps: vec![0; nvars],
            }],
        )
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        assert!(index < nvars);
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Self::from_terms(
            nvars,
            vec![Term {
                coeff: BigInt::one(),
                exps,
            }],
        )
    }

    /// Collects like terms and sorts into normal form.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut collected: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for t in terms {
            assert_eq!(t.exps.len(), nvars, "exponent vector length");
            *collected.entry(t.exps).or_insert_with(BigInt::zero) += t.coeff;
        }
        let mut terms: Vec<Term> = collected
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exps, coeff)| Term { coeff, exps })
            .collect();
        terms.sort_by(|a, b| grlex(&b.exps, &a.exps));
        MultiPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(Term::degree).max()
    }

    /// `(true, d)` when every term has total degree `d`, `(false, None)`
    /// otherwise.
    pub fn is_homogeneous(&self) -> Result<(bool, Option<u32>), PolyError> {
        let first = self.terms.first().ok_or(PolyError::ZeroPolynomial)?.degree();
        if self.terms.iter().all(|t| t.degree() == first) {
            Ok((true, Some(first)))
        } else {
            Ok((false, None))
        }
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: -&t.coeff,
                    exps: t.exps.clone(),
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        Self::from_terms(self.nvars, self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                out.push(Term {
                    coeff: &a.coeff * &b.coeff,
                    exps: a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect(),
                });
            }
        }
        Self::from_terms(self.nvars, out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, 1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Reference evaluation through [`FieldElement`] arithmetic.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement, FieldError> {
        assert_eq!(point.len(), self.nvars, "point dimension");
        let field = point
            .first()
            .map(|x| x.field().clone())
            .ok_or_else(|| FieldError::Malformed("empty point".into()))?;
        let p = field.characteristic();
        let mut acc = field.zero();
        for t in &self.terms {
            let residue = (&t.coeff % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p);
            let c: i64 = residue.try_into().expect("residue fits");
            let mut v = field.from_int(c);
            for (x, &e) in point.iter().zip(&t.exps) {
                v = v.mul(&x.pow(u64::from(e)))?;
            }
            acc = acc.add(&v)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let negative = t.coeff.is_negative();
            let magnitude = t.coeff.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> = t
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Homogeneous equations `f_1 .. f_r` in `n + 1` variables cutting out
/// `X ⊂ P^n`. No smoothness is implied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialSystem {
    n: usize,
    polys: Vec<MultiPoly>,
    degrees: Vec<u32>,
}

impl PolynomialSystem {
    pub fn new(n: usize, polys: Vec<MultiPoly>) -> Result<Self, PolyError> {
        let mut degrees = Vec::with_capacity(polys.len());
        for (index, f) in polys.iter().enumerate() {
            if f.nvars() != n + 1 {
                return Err(PolyError::VariableCount {
                    index,
                    found: f.nvars(),
                    expected: n + 1,
                });
            }
            match f.is_homogeneous() {
                Ok((true, Some(0))) => return Err(PolyError::ConstantEquation { index }),
                Ok((true, Some(d))) => degrees.push(d),
                Ok(_) => return Err(PolyError::NotHomogeneous { index }),
                Err(e) => return Err(e),
            }
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PolynomialSystem { n, polys, degrees })
    }

    /// Parses each equation with [`parse_poly`].
    pub fn parse<S: AsRef<str>>(n: usize, equations: &[S]) -> Result<Self, PolyError> {
        let polys = equations
            .iter()
            .map(|e| parse_poly(e.as_ref(), n + 1))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, polys)
    }

    /// Ambient projective dimension.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    /// Member degrees sorted descending.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}
