use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::MultiPoly;
use crate::ff::kernel::KernelArith;

#[derive(Debug, Clone)]
struct KernelTerm<E> {
    coeff: E,
    unit: bool,
    factors: std::ops::Range<usize>,
}

/// A polynomial with coefficients reduced into one field, ready to evaluate
/// at points given as kernel elements.
///
/// Coordinate powers are computed once per point up to the largest exponent
/// each coordinate needs, then shared by all terms.
#[derive(Debug, Clone)]
pub struct EvaluationKernel<E> {
    nvars: usize,
    terms: Vec<KernelTerm<E>>,
    /// Indices into the power table, grouped per term.
    factors: Vec<usize>,
    max_exp: Vec<u32>,
    offsets: Vec<usize>,
    table_len: usize,
}

impl MultiPoly {
    /// Reduces coefficients modulo the characteristic, drops vanishing terms
    /// and compiles the rest.
    pub fn compile<A: KernelArith>(&self, arith: &A) -> EvaluationKernel<A::Elem> {
        let p = BigInt::from(arith.characteristic());
        let mut max_exp = vec![0u32; self.nvars];
        let mut reduced = Vec::new();
        for t in &self.terms {
            let r = t.coeff.mod_floor(&p).to_u64().expect("residue fits in u64");
            if r == 0 {
                continue;
            }
            for (m, &e) in max_exp.iter_mut().zip(&t.exps) {
                *m = (*m).max(e);
            }
            reduced.push((r, &t.exps));
        }
        let mut offsets = Vec::with_capacity(self.nvars);
        let mut table_len = 0;
        for &m in &max_exp {
            offsets.push(table_len);
            table_len += m as usize;
        }
        let mut terms = Vec::with_capacity(reduced.len());
        let mut factors = Vec::new();
        for (r, exps) in reduced {
            let start = factors.len();
            for (v, &e) in exps.iter().enumerate() {
                if e > 0 {
                    factors.push(offsets[v] + e as usize - 1);
                }
            }
            terms.push(KernelTerm {
                coeff: arith.from_residue(r),
                unit: r == 1,
                factors: start..factors.len(),
            });
        }
        EvaluationKernel {
            nvars: self.nvars,
            terms,
            factors,
            max_exp,
            offsets,
            table_len,
        }
    }
}

/// Compiles `f` for the field behind `arith`.
pub fn reduce_and_compile<A: KernelArith>(f: &MultiPoly, arith: &A) -> EvaluationKernel<A::Elem> {
    f.compile(arith)
}

impl<E: Copy> EvaluationKernel<E> {
    /// True when every coefficient vanished in this characteristic.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Scratch buffer for [`EvaluationKernel::eval_with`].
    pub fn scratch<A: KernelArith<Elem = E>>(&self, arith: &A) -> Vec<E> {
        vec![arith.zero(); self.table_len]
    }

    pub fn eval<A: KernelArith<Elem = E>>(&self, arith: &A, point: &[E]) -> E {
        let mut scratch = self.scratch(arith);
        self.eval_with(arith, point, &mut scratch)
    }

    #[inline]
    pub fn eval_with<A: KernelArith<Elem = E>>(&self, arith: &A, point: &[E], powers: &mut [E]) -> E {
        debug_assert_eq!(point.len(), self.nvars);
        for (v, &m) in self.max_exp.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let x = point[v];
            let off = self.offsets[v];
            powers[off] = x;
            for e in 1..m as usize {
                powers[off + e] = arith.mul(powers[off + e - 1], x);
            }
        }
        let mut acc = arith.zero();
        for t in &self.terms {
            let mut value = if t.unit { arith.one() } else { t.coeff };
            for &f in &self.factors[t.factors.clone()] {
                value = arith.mul(value, powers[f]);
            }
            acc = arith.add(acc, value);
        }
        acc
    }
}
