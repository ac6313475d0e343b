//! Prime fields and their extensions `F_{p^m} = F_p[x]/(f)`.
//!
//! The defining polynomial `f` is the first monic irreducible of degree `m`
//! when coefficient vectors `(c_0, .., c_{m-1})` are read as base-`p` integers
//! with `c_0` least significant. Elements are reduced coefficient vectors and
//! are enumerated in the same base-`p` order, so element index `i` has
//! coefficients equal to the base-`p` digits of `i`.
//!
//! [`FieldElement`] is the reference arithmetic. The counting engine uses the
//! allocation-free representations in [`kernel`].

mod fpoly;
pub mod kernel;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

/// Largest field order this module will construct.
pub const MAX_FIELD_ORDER: u64 = 1 << 48;

/// Primality is checked by trial division; larger primes are rejected.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),
    #[error("field of order {p}^{m} exceeds the supported size")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("malformed input: {0}")]
    Malformed(String),
}

/// An immutable description of `F_{p^m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FieldDescriptor {
    p: u32,
    m: u32,
    /// Monic, lowest degree first, length `m + 1`.
    defining_poly: Vec<u32>,
}

/// Builds `F_{p^m}` with the canonical defining polynomial.
pub fn build_field(p: u64, m: u32) -> Result<Arc<FieldDescriptor>, FieldError> {
    FieldDescriptor::build(p, m)
}

/// Trial-division primality, for `p <= MAX_PRIME`.
pub fn is_prime(p: u64) -> bool {
    p <= MAX_PRIME && fpoly::is_prime(p)
}

/// Rabin's test: `f` (monic, degree `m >= 1`, lowest first) is irreducible over
/// `F_p` iff `x^{p^m} = x mod f` and `gcd(x^{p^{m/l}} - x, f) = 1` for every
/// prime `l | m`.
pub fn is_irreducible(p: u64, f: &[u32]) -> Result<bool, FieldError> {
    if !fpoly::is_prime(p) || p > MAX_PRIME {
        return Err(FieldError::InvalidPrime(p));
    }
    if f.len() < 2 {
        return Err(FieldError::Malformed("degree must be at least 1".into()));
    }
    if *f.last().unwrap() != 1 {
        return Err(FieldError::Malformed("polynomial must be monic".into()));
    }
    if f.iter().any(|&c| u64::from(c) >= p) {
        return Err(FieldError::Malformed("coefficient out of range".into()));
    }
    let f: Vec<u64> = f.iter().map(|&c| u64::from(c)).collect();
    Ok(rabin_irreducible(&f, p))
}

fn rabin_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let x = fpoly::rem(&[0, 1], f, p);
    // frob[i] = x^{p^i} mod f
    let mut frob = Vec::with_capacity(m + 1);
    frob.push(x.clone());
    for i in 1..=m {
        let next = fpoly::pow_mod(&frob[i - 1], p, f, p);
        frob.push(next);
    }
    if frob[m] != x {
        return false;
    }
    fpoly::prime_factors(m as u64).into_iter().all(|l| {
        let h = fpoly::sub(&frob[m / l as usize], &x, p);
        fpoly::gcd(&h, f, p).len() == 1
    })
}

impl FieldDescriptor {
    pub fn build(p: u64, m: u32) -> Result<Arc<Self>, FieldError> {
        if p > MAX_PRIME || !fpoly::is_prime(p) {
            return Err(FieldError::InvalidPrime(p));
        }
        if m < 1 {
            return Err(FieldError::InvalidDegree(m));
        }
        match p.checked_pow(m) {
            Some(q) if q <= MAX_FIELD_ORDER => {}
            _ => return Err(FieldError::FieldTooLarge { p, m }),
        }
        let m_us = m as usize;
        if m == 1 {
            return Ok(Arc::new(FieldDescriptor {
                p: p as u32,
                m,
                defining_poly: vec![0, 1],
            }));
        }
        let mut f = vec![0u64; m_us + 1];
        f[m_us] = 1;
        loop {
            if rabin_irreducible(&f, p) {
                break;
            }
            // next coefficient vector in base-p order
            let mut i = 0;
            loop {
                f[i] += 1;
                if f[i] < p {
                    break;
                }
                f[i] = 0;
                i += 1;
                assert!(i < m_us, "no irreducible polynomial found");
            }
        }
        Ok(Arc::new(FieldDescriptor {
            p: p as u32,
            m,
            defining_poly: f.iter().map(|&c| c as u32).collect(),
        }))
    }

    pub fn characteristic(&self) -> u64 {
        u64::from(self.p)
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.characteristic().pow(self.m)
    }

    /// Monic defining polynomial, lowest degree first.
    pub fn defining_poly(&self) -> &[u32] {
        &self.defining_poly
    }

    pub(crate) fn modulus_u64(&self) -> Vec<u64> {
        self.defining_poly.iter().map(|&c| u64::from(c)).collect()
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            field: Arc::clone(self),
            coeffs: vec![0; self.m as usize],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_int(1)
    }

    /// The class of `x`; for a prime field this is the residue 0.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        let mut e = self.zero();
        if self.m >= 2 {
            e.coeffs[1] = 1;
        }
        e
    }

    /// Image of an integer under `Z -> F_p -> F_{p^m}`.
    pub fn from_int(self: &Arc<Self>, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(i64::from(self.p)) as u32;
        e
    }

    /// Element with the given coefficients, which must already be reduced.
    pub fn element(self: &Arc<Self>, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::Malformed(format!(
                "expected {} coefficients in [0, {})",
                self.m, self.p
            )));
        }
        Ok(FieldElement {
            field: Arc::clone(self),
            coeffs: coeffs.to_vec(),
        })
    }

    /// Element number `index` in canonical order.
    pub fn element_at(self: &Arc<Self>, mut index: u64) -> FieldElement {
        assert!(index < self.order(), "element index out of range");
        let p = self.characteristic();
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = (index % p) as u32;
            index /= p;
        }
        e
    }

    /// All `p^m` elements in canonical order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}[x]/({})", self.p, self.m, render_univariate(&self.defining_poly, "x"))
        }
    }
}

pub(crate) fn render_univariate(coeffs: &[u32], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Enumerates every element of `field` in canonical order.
pub fn enumerate_elements(field: &Arc<FieldDescriptor>) -> impl Iterator<Item = FieldElement> + '_ {
    field.elements()
}

/// An element of a particular [`FieldDescriptor`], always fully reduced.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<FieldDescriptor>,
    coeffs: Vec<u32>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_univariate(&self.coeffs, "x"))
    }
}

impl FieldElement {
    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Position of this element in canonical order.
    pub fn index(&self) -> u64 {
        let p = self.field.characteristic();
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + u64::from(c))
    }

    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    fn with_coeffs(&self, coeffs: Vec<u32>) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }

    fn from_poly(&self, mut poly: Vec<u64>) -> FieldElement {
        let m = self.field.m as usize;
        poly.resize(m, 0);
        self.with_coeffs(poly.into_iter().map(|c| c as u32).collect())
    }

    fn as_poly(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.coeffs.iter().map(|&c| u64::from(c)).collect();
        fpoly::trim(&mut v);
        v
    }

    pub fn add(&self, other: &Self) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        let p = self.field.p as u64;
        Ok(self.with_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| ((u64::from(a) + u64::from(b)) % p) as u32)
                .collect(),
        ))
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.p;
        self.with_coeffs(self.coeffs.iter().map(|&a| (p - a) % p).collect())
    }

    pub fn sub(&self, other: &Self) -> Result<FieldElement, FieldError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        let p = self.field.characteristic();
        let f = self.field.modulus_u64();
        Ok(self.from_poly(fpoly::mul_mod(&self.as_poly(), &other.as_poly(), &f, p)))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let p = self.field.characteristic();
        let f = self.field.modulus_u64();
        Ok(self.from_poly(fpoly::inv_mod(&self.as_poly(), &f, p)))
    }

    /// `self^e` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, e: u64) -> FieldElement {
        let p = self.field.characteristic();
        let f = self.field.modulus_u64();
        self.from_poly(fpoly::pow_mod(&self.as_poly(), e, &f, p))
    }

    /// The Frobenius automorphism `a -> a^p`.
    pub fn frobenius(&self) -> FieldElement {
        self.pow(self.field.characteristic())
    }
}
