//! Copyable element representations for the counting hot loop.
//!
//! [`PackedArith`] keeps the dense coefficient vector, one base-`p` digit per
//! bit lane of a `u128`, and adds lane-wise without carries between lanes.
//! [`TableArith`] stores discrete logarithms and adds through a Zech table;
//! it is only available for fields of order at most `2^16`. Both map
//! canonical element indices to the same field elements, so any computation
//! round-tripped through [`KernelArith::to_index`] is bit-identical.

use super::{fpoly, FieldDescriptor, FieldError};

/// Field arithmetic over plain-data elements.
pub trait KernelArith: Send + Sync {
    type Elem: Copy + Eq + Send + Sync + std::fmt::Debug;

    fn order(&self) -> u64;
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: Self::Elem) -> bool;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Element number `index` in canonical order.
    fn from_index(&self, index: u64) -> Self::Elem;
    fn to_index(&self, a: Self::Elem) -> u64;
    /// The image of the residue `r < p`.
    fn from_residue(&self, r: u64) -> Self::Elem;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn pow(&self, a: Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Every element in canonical order.
    fn all_elements(&self) -> Vec<Self::Elem> {
        (0..self.order()).map(|i| self.from_index(i)).collect()
    }
}

const FOLD_TABLE_LIMIT: u64 = 1 << 12;
const MAX_LANES: usize = 64;

/// Dense coefficient vectors packed into `u128` bit lanes.
#[derive(Debug, Clone)]
pub struct PackedArith {
    p: u64,
    m: usize,
    width: u32,
    lane_mask: u128,
    /// Lowest bit of every lane.
    lsb: u128,
    /// `2^(width-1) - p` in every lane; pushes lanes `>= p` onto their top bit.
    corr: u128,
    /// All `m` lanes.
    full: u128,
    top_shift: u32,
    /// `fold[c]` packs `-c * f_i mod p`; empty when `p` is large.
    fold: Vec<u128>,
    /// `f_0 .. f_{m-1}`.
    modulus: Vec<u64>,
}

impl PackedArith {
    pub fn new(field: &FieldDescriptor) -> Result<Self, FieldError> {
        let p = field.characteristic();
        let m = field.degree() as usize;
        let width = 64 - (p - 1).leading_zeros() + 1;
        if m * width as usize > 128 || m > MAX_LANES {
            return Err(FieldError::FieldTooLarge { p, m: m as u32 });
        }
        let lane_mask = (1u128 << width) - 1;
        let mut lsb = 0u128;
        for j in 0..m {
            lsb |= 1u128 << (j as u32 * width);
        }
        let corr = lsb * ((1u128 << (width - 1)) - u128::from(p));
        let full = if m as u32 * width == 128 {
            u128::MAX
        } else {
            (1u128 << (m as u32 * width)) - 1
        };
        let modulus: Vec<u64> = field.modulus_u64()[..m].to_vec();
        let mut arith = PackedArith {
            p,
            m,
            width,
            lane_mask,
            lsb,
            corr,
            full,
            top_shift: (m as u32 - 1) * width,
            fold: Vec::new(),
            modulus,
        };
        if m > 1 && p <= FOLD_TABLE_LIMIT {
            arith.fold = (0..p)
                .map(|c| {
                    let digits: Vec<u64> = arith
                        .modulus
                        .iter()
                        .map(|&fi| (p - c * fi % p) % p)
                        .collect();
                    arith.pack(&digits)
                })
                .collect();
        }
        Ok(arith)
    }

    fn pack(&self, digits: &[u64]) -> u128 {
        digits
            .iter()
            .enumerate()
            .fold(0u128, |acc, (j, &d)| acc | (u128::from(d) << (j as u32 * self.width)))
    }

    #[inline(always)]
    fn lane(&self, a: u128, j: usize) -> u64 {
        ((a >> (j as u32 * self.width)) & self.lane_mask) as u64
    }

    /// Brings every lane in `[0, 2p)` back into `[0, p)`.
    #[inline(always)]
    fn reduce_lanes(&self, s: u128) -> u128 {
        let t = s + self.corr;
        let over = (t >> (self.width - 1)) & self.lsb;
        s - over * u128::from(self.p)
    }

    #[inline(always)]
    fn mul_by_x(&self, a: u128) -> u128 {
        let top = (a >> self.top_shift) as usize;
        let shifted = (a << self.width) & self.full;
        self.reduce_lanes(shifted + self.fold[top])
    }

    #[inline(always)]
    fn scale(&self, a: u128, mut k: u64) -> u128 {
        match k {
            0 => 0,
            1 => a,
            _ => {
                let mut acc = 0u128;
                let mut base = a;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = self.reduce_lanes(acc + base);
                    }
                    base = self.reduce_lanes(base + base);
                    k >>= 1;
                }
                acc
            }
        }
    }

    fn mul_schoolbook(&self, a: u128, b: u128) -> u128 {
        let (p, m) = (self.p, self.m);
        let mut prod = [0u64; 2 * MAX_LANES];
        for i in 0..m {
            let ai = self.lane(a, i);
            if ai == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + ai * self.lane(b, j)) % p;
            }
        }
        for top in (m..2 * m - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (i, &fi) in self.modulus.iter().enumerate() {
                let k = top - m + i;
                prod[k] = (prod[k] + (p - c) * fi % p) % p;
            }
        }
        self.pack(&prod[..m])
    }
}

impl KernelArith for PackedArith {
    type Elem = u128;

    fn order(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> u128 {
        0
    }

    fn one(&self) -> u128 {
        1
    }

    #[inline(always)]
    fn is_zero(&self, a: u128) -> bool {
        a == 0
    }

    #[inline(always)]
    fn add(&self, a: u128, b: u128) -> u128 {
        self.reduce_lanes(a + b)
    }

    #[inline(always)]
    fn neg(&self, a: u128) -> u128 {
        self.reduce_lanes(self.lsb * u128::from(self.p) - a)
    }

    #[inline(always)]
    fn mul(&self, a: u128, b: u128) -> u128 {
        if self.m == 1 {
            return (a * b) % u128::from(self.p);
        }
        if self.fold.is_empty() {
            return self.mul_schoolbook(a, b);
        }
        // Horner in x over the digits of b
        let mut acc = 0u128;
        for j in (0..self.m).rev() {
            if acc != 0 {
                acc = self.mul_by_x(acc);
            }
            let bj = self.lane(b, j);
            if bj != 0 {
                acc = self.reduce_lanes(acc + self.scale(a, bj));
            }
        }
        acc
    }

    fn from_index(&self, mut index: u64) -> u128 {
        let mut out = 0u128;
        for j in 0..self.m {
            out |= u128::from(index % self.p) << (j as u32 * self.width);
            index /= self.p;
        }
        out
    }

    fn to_index(&self, a: u128) -> u64 {
        (0..self.m)
            .rev()
            .fold(0u64, |acc, j| acc * self.p + self.lane(a, j))
    }

    fn from_residue(&self, r: u64) -> u128 {
        u128::from(r % self.p)
    }
}

/// Largest field order for which [`TableArith`] may be built.
pub const TABLE_LIMIT: u64 = 1 << 16;

/// Log/antilog/Zech tables; `order - 1` encodes zero.
#[derive(Debug, Clone)]
pub struct TableArith {
    p: u64,
    q: u64,
    zero: u32,
    log: Vec<u32>,
    exp: Vec<u32>,
    zech: Vec<u32>,
}

impl TableArith {
    pub fn new(field: &FieldDescriptor) -> Result<Self, FieldError> {
        let q = field.order();
        if q > TABLE_LIMIT {
            return Err(FieldError::FieldTooLarge {
                p: field.characteristic(),
                m: field.degree(),
            });
        }
        let dense = PackedArith::new(field)?;
        let group = q - 1;
        let factors = fpoly::prime_factors(group);
        let generator = (1..q)
            .map(|i| dense.from_index(i))
            .find(|&g| factors.iter().all(|&l| dense.pow(g, group / l) != dense.one()))
            .expect("multiplicative group is cyclic");

        let zero = group as u32;
        let mut exp = Vec::with_capacity(group as usize);
        let mut log = vec![zero; q as usize];
        let mut cur = dense.one();
        for k in 0..group {
            let idx = dense.to_index(cur);
            exp.push(idx as u32);
            log[idx as usize] = k as u32;
            cur = dense.mul(cur, generator);
        }
        let one = dense.one();
        let zech = (0..group)
            .map(|k| {
                let sum = dense.add(one, dense.from_index(u64::from(exp[k as usize])));
                log[dense.to_index(sum) as usize]
            })
            .collect();
        Ok(TableArith {
            p: field.characteristic(),
            q,
            zero,
            log,
            exp,
            zech,
        })
    }

    fn group(&self) -> u32 {
        self.zero
    }
}

impl KernelArith for TableArith {
    type Elem = u32;

    fn order(&self) -> u64 {
        self.q
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> u32 {
        self.zero
    }

    fn one(&self) -> u32 {
        0
    }

    #[inline(always)]
    fn is_zero(&self, a: u32) -> bool {
        a == self.zero
    }

    #[inline(always)]
    fn add(&self, a: u32, b: u32) -> u32 {
        if a == self.zero {
            return b;
        }
        if b == self.zero {
            return a;
        }
        let n = self.group();
        let d = if b >= a { b - a } else { b + n - a };
        let z = self.zech[d as usize];
        if z == self.zero {
            return self.zero;
        }
        let s = a + z;
        if s >= n {
            s - n
        } else {
            s
        }
    }

    fn neg(&self, a: u32) -> u32 {
        if a == self.zero || self.p == 2 {
            return a;
        }
        // -1 = g^{(q-1)/2} in odd characteristic
        let n = self.group();
        let s = a + n / 2;
        if s >= n {
            s - n
        } else {
            s
        }
    }

    #[inline(always)]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == self.zero || b == self.zero {
            return self.zero;
        }
        let n = self.group();
        let s = a + b;
        if s >= n {
            s - n
        } else {
            s
        }
    }

    fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 0;
        }
        if a == self.zero {
            return self.zero;
        }
        ((u64::from(a) * (e % u64::from(self.group()))) % u64::from(self.group())) as u32
    }

    fn from_index(&self, index: u64) -> u32 {
        self.log[index as usize]
    }

    fn to_index(&self, a: u32) -> u64 {
        if a == self.zero {
            0
        } else {
            u64::from(self.exp[a as usize])
        }
    }

    fn from_residue(&self, r: u64) -> u32 {
        self.log[(r % self.p) as usize]
    }
}
