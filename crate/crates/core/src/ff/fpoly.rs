//! Dense univariate polynomials over a prime field, coefficients lowest first.
//!
//! Only what field construction needs: reduction, modular products and powers,
//! gcd and inversion modulo an irreducible polynomial.

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn inv_mod_p(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod_p(a, p - 2, p)
}

pub(crate) fn pow_mod_p(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Remainder of `a` by a nonzero `b`.
pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            let shift = top - db;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * bi % p) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj % p) % p;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), f, p)
}

pub(crate) fn pow_mod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], f, p);
    let mut base = rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &base, f, p);
        }
        base = mul_mod(&base, &base, f, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out: Vec<u64> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    // monic
    if let Some(&lead) = a.last() {
        let inv = inv_mod_p(lead, p);
        for c in a.iter_mut() {
            *c = *c * inv % p;
        }
    }
    a
}

/// Inverse of `a` modulo an irreducible `f`, by extended Euclid. `a` must be
/// nonzero modulo `f`.
pub(crate) fn inv_mod(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    // Invariant: s_i * a ≡ r_i (mod f)
    let mut r0 = f.to_vec();
    let mut r1 = rem(a, f, p);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    trim(&mut r0);
    while r1.len() > 1 {
        let (q, r) = div_rem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    assert!(!r1.is_empty(), "inverse of a non-unit");
    let c = inv_mod_p(r1[0], p);
    let mut out: Vec<u64> = s1.iter().map(|&x| x * c % p).collect();
    trim(&mut out);
    rem(&out, f, p)
}

fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    let mut q = vec![0u64; r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        let shift = top - db;
        q[shift] = c;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * bi % p) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}
