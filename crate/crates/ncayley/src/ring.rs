//! Small generic layer for square matrices over commutative Q-algebras.
//!
//! The same two algorithms (Faddeev-LeVerrier for principal-minor sums and
//! the signed permutation expansion for determinants) run over Q[G], over
//! Q(w_N), over Q(w_N)[x] and over plain rationals, so they are written once
//! against a minimal ring trait. Elements carry their own context (group or
//! conductor), hence `zero_like`/`one_like` derive constants from a sample.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::CyclotomicNumber;
use crate::group_algebra::GroupAlgebraElement;

pub trait RingElem: Clone + PartialEq {
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_sub(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Exact division by a nonzero integer (all our rings are Q-algebras).
    fn div_int(&self, k: i64) -> Self;
    fn is_ring_zero(&self) -> bool;
}

impl RingElem for BigRational {
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn div_int(&self, k: i64) -> Self {
        self / BigRational::from_integer(BigInt::from(k))
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
}

impl RingElem for CyclotomicNumber {
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs).expect("matrix entries share a conductor")
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self.sub(rhs).expect("matrix entries share a conductor")
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs).expect("matrix entries share a conductor")
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn zero_like(&self) -> Self {
        CyclotomicNumber::zero(self.conductor())
    }
    fn one_like(&self) -> Self {
        CyclotomicNumber::one(self.conductor())
    }
    fn div_int(&self, k: i64) -> Self {
        self.scale(&BigRational::new(BigInt::one(), BigInt::from(k)))
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
}

impl RingElem for GroupAlgebraElement {
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs).expect("matrix entries share a group")
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self.sub(rhs).expect("matrix entries share a group")
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.convolve(rhs).expect("matrix entries share a group")
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn zero_like(&self) -> Self {
        GroupAlgebraElement::zero(self.group())
    }
    fn one_like(&self) -> Self {
        let g = self.group();
        GroupAlgebraElement::delta(g, &g.identity()).expect("identity is in the group")
    }
    fn div_int(&self, k: i64) -> Self {
        self.scale(&BigRational::new(BigInt::one(), BigInt::from(k)))
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Row-major square matrix over a commutative ring.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMat<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: RingElem> SquareMat<T> {
    pub fn from_entries(n: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), n * n);
        assert!(n >= 1);
        SquareMat { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    fn sample(&self) -> &T {
        &self.entries[0]
    }

    pub fn mat_mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let zero = self.sample().zero_like();
        let mut out = vec![zero; self.n * self.n];
        for i in 0..self.n {
            for k in 0..self.n {
                let a = self.at(i, k);
                if a.is_ring_zero() {
                    continue;
                }
                for j in 0..self.n {
                    let b = rhs.at(k, j);
                    if !b.is_ring_zero() {
                        out[i * self.n + j] = out[i * self.n + j].ring_add(&a.ring_mul(b));
                    }
                }
            }
        }
        SquareMat {
            n: self.n,
            entries: out,
        }
    }

    pub fn trace(&self) -> T {
        let mut t = self.sample().zero_like();
        for i in 0..self.n {
            t = t.ring_add(self.at(i, i));
        }
        t
    }

    /// `self + s * I`.
    fn add_scalar_diag(&self, s: &T) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.entries[i * self.n + i] = out.entries[i * self.n + i].ring_add(s);
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize]) -> Self {
        let k = rows.len();
        assert!(k >= 1);
        let mut entries = Vec::with_capacity(k * k);
        for &i in rows {
            for &j in rows {
                entries.push(self.at(i, j).clone());
            }
        }
        SquareMat { n: k, entries }
    }

    /// All principal-minor sums `[beta_0 .. beta_n]` via Faddeev-LeVerrier.
    /// Only divisions by integers occur, so the result is exact over any
    /// commutative Q-algebra.
    pub fn betas(&self) -> Vec<T> {
        let n = self.n;
        let one = self.sample().one_like();
        let mut betas = Vec::with_capacity(n + 1);
        betas.push(one);
        // char poly x^n + c_1 x^{n-1} + ... + c_n with beta_k = (-1)^k c_k
        let mut m = self.clone();
        let mut c = m.trace().ring_neg(); // c_1
        betas.push(c.ring_neg());
        for k in 2..=n {
            m = self.mat_mul(&m.add_scalar_diag(&c));
            c = m.trace().ring_neg().div_int(k as i64);
            let beta = if k % 2 == 0 { c.clone() } else { c.ring_neg() };
            betas.push(beta);
        }
        betas
    }

    /// Determinant by the signed permutation expansion. Exponential in n;
    /// callers cap n before invoking.
    pub fn det_permutation(&self) -> T {
        let zero = self.sample().zero_like();
        let one = self.sample().one_like();
        let mut acc = zero;
        let mut perm: Vec<usize> = (0..self.n).collect();
        // Heap's algorithm, tracking parity: each swap flips the sign.
        let mut counters = vec![0usize; self.n];
        let mut positive = true;
        let add_term = |perm: &[usize], positive: bool, acc: &mut T| {
            let mut prod = one.clone();
            for (i, &j) in perm.iter().enumerate() {
                let e = self.at(i, j);
                if e.is_ring_zero() {
                    return;
                }
                prod = prod.ring_mul(e);
            }
            *acc = if positive {
                acc.ring_add(&prod)
            } else {
                acc.ring_sub(&prod)
            };
        };
        add_term(&perm, positive, &mut acc);
        let mut i = 1;
        while i < self.n {
            if counters[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(counters[i], i);
                }
                positive = !positive;
                add_term(&perm, positive, &mut acc);
                counters[i] += 1;
                i = 1;
            } else {
                counters[i] = 0;
                i += 1;
            }
        }
        acc
    }
}

/// All k-element subsets of 0..n in lexicographic order (test oracles).
#[cfg(test)]
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn mat(n: usize, vals: &[i64]) -> SquareMat<BigRational> {
        SquareMat::from_entries(n, vals.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn det_matches_known_values() {
        assert_eq!(mat(1, &[5]).det_permutation(), rat(5));
        assert_eq!(mat(2, &[1, 2, 3, 4]).det_permutation(), rat(-2));
        assert_eq!(
            mat(3, &[2, 0, 1, 1, 3, -1, 0, 5, 2]).det_permutation(),
            rat((2 * (6 + 5)) + 5)
        );
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn betas_match_minor_sums() {
        // brute force: beta_k = sum over k-subsets of principal minors
        let a = mat(4, &[1, 2, 0, -1, 3, 1, 4, 0, 0, -2, 2, 1, 5, 0, 1, 1]);
        let fast = a.betas();
        for k in 0..=4usize {
            let mut brute = rat(0);
            if k == 0 {
                brute = rat(1);
            } else {
                for subset in k_subsets(4, k) {
                    brute += a.submatrix(&subset).det_permutation();
                }
            }
            assert_eq!(fast[k], brute, "beta_{k}");
        }
    }

    #[test]
    fn k_subsets_counts() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(5, 0), vec![Vec::<usize>::new()]);
        assert_eq!(k_subsets(3, 3).len(), 1);
    }
}
