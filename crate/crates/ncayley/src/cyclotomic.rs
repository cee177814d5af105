//! Exact arithmetic in the cyclotomic field Q(w_N).
//!
//! Elements are held in the power basis {w_N^j : 0 <= j < phi(N)} modulo the
//! N-th cyclotomic polynomial, with rational coefficients in lowest terms.
//! The representation is a normal form, so equality is coefficient equality.
//! A value never changes conductor implicitly; `embed_in` performs the only
//! sanctioned coercion (into a field whose conductor is a multiple).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{roots_of_unity, BigComplex};
use crate::poly::{cyclotomic_polynomial, euler_phi, RatPolynomial};

/// An exact element of Q(w_N), `sum coeffs[j] * w_N^j` for j < phi(N).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicNumber {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    fn reduce(conductor: u64, raw: Vec<BigRational>) -> Self {
        let phi = euler_phi(conductor) as usize;
        let modulus = cyclotomic_polynomial(conductor).to_rational();
        let mut coeffs = RatPolynomial::new(raw).rem(&modulus).coeffs().to_vec();
        coeffs.resize(phi, BigRational::zero());
        CyclotomicNumber { conductor, coeffs }
    }

    pub fn zero(conductor: u64) -> Self {
        assert!(conductor >= 2, "conductor must be at least 2");
        let phi = euler_phi(conductor) as usize;
        CyclotomicNumber {
            conductor,
            coeffs: vec![BigRational::zero(); phi],
        }
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_rational(conductor: u64, q: BigRational) -> Self {
        assert!(conductor >= 2, "conductor must be at least 2");
        let mut v = Self::zero(conductor);
        v.coeffs[0] = q;
        v
    }

    pub fn from_integer(conductor: u64, n: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(BigInt::from(n)))
    }

    /// w_N^k (k taken mod N).
    pub fn root_power(conductor: u64, k: u64) -> Self {
        assert!(conductor >= 2, "conductor must be at least 2");
        let k = (k % conductor) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        Self::reduce(conductor, raw)
    }

    /// `sum buckets[e] * w_N^e` reduced to the power basis. The bucket
    /// vector may have any length; indices are exponents.
    pub fn from_exponent_buckets(conductor: u64, buckets: Vec<BigRational>) -> Self {
        assert!(conductor >= 2, "conductor must be at least 2");
        Self::reduce(conductor, buckets)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_same(&self, rhs: &Self) -> Result<()> {
        if self.conductor != rhs.conductor {
            return Err(Error::ConductorMismatch {
                left: self.conductor,
                right: rhs.conductor,
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        Ok(CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        Ok(CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let n = self.coeffs.len() + rhs.coeffs.len();
        let mut raw = vec![BigRational::zero(); n.max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Ok(Self::reduce(self.conductor, raw))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the (irreducible) cyclotomic polynomial.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero {
                conductor: self.conductor,
            });
        }
        let modulus = cyclotomic_polynomial(self.conductor).to_rational();
        let a = RatPolynomial::new(self.coeffs.clone());
        // extended Euclid: u*a + v*modulus = g (g a nonzero constant)
        let (mut r0, mut r1) = (a, modulus.clone());
        let (mut u0, mut u1) = (
            RatPolynomial::new(vec![BigRational::one()]),
            RatPolynomial::zero(),
        );
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let u = u0.sub(&q.mul(&u1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
        }
        if r0.degree() != 0 || r0.is_zero() {
            return Err(Error::Internal(format!(
                "gcd with cyclotomic polynomial is not constant (conductor {})",
                self.conductor
            )));
        }
        let g_inv = r0.coeff(0).recip();
        Ok(Self::reduce(self.conductor, u0.scale(&g_inv).coeffs().to_vec()))
    }

    /// The field automorphism `w_N -> w_N^l`; `l` must be a unit mod N.
    pub fn galois_apply(&self, l: u64) -> Result<Self> {
        let n = self.conductor;
        let l = l % n;
        if BigInt::from(l).gcd(&BigInt::from(n)) != BigInt::one() {
            return Err(Error::NotAUnit { l, modulus: n });
        }
        let mut buckets = vec![BigRational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = ((j as u64) * l % n) as usize;
                buckets[e] += c;
            }
        }
        Ok(Self::reduce(n, buckets))
    }

    /// Complex conjugation, i.e. the automorphism with l = N - 1.
    pub fn conjugate(&self) -> Self {
        self.galois_apply(self.conductor - 1)
            .expect("N-1 is always a unit mod N")
    }

    /// The rational value iff all basis coefficients beyond index 0 vanish.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    /// Lift into Q(w_M) for a multiple M of the conductor, via
    /// `w_N = w_M^{M/N}`.
    pub fn embed_in(&self, m: u64) -> Result<Self> {
        if !m.is_multiple_of(self.conductor) {
            return Err(Error::Precondition(format!(
                "cannot embed conductor {} into {}: not a multiple",
                self.conductor, m
            )));
        }
        if m == self.conductor {
            return Ok(self.clone());
        }
        let step = m / self.conductor;
        let mut buckets = vec![BigRational::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                buckets[(j as u64 * step % m) as usize] += c;
            }
        }
        Ok(Self::reduce(m, buckets))
    }

    /// High-precision complex embedding with `w_N -> e^{2 pi i / N}`.
    pub fn to_complex(&self, precision_bits: u32) -> BigComplex {
        self.to_complex_with(&roots_of_unity(self.conductor, precision_bits))
    }

    /// Same as `to_complex` but reusing precomputed powers of w_N.
    pub fn to_complex_with(&self, powers: &[BigComplex]) -> BigComplex {
        let scale = powers[0].scale;
        let mut acc = BigComplex::zero(scale);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = powers[j].mul(&BigComplex::from_rational(c, scale));
                acc = acc.add(&term);
            }
        }
        acc
    }
}

fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.conductor;
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if j == 0 {
                write!(f, "{}", format_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", format_rational(&mag))?;
                }
                if j == 1 {
                    write!(f, "w{n}")?;
                } else {
                    write!(f, "w{n}^{j}")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CyclotomicNumber", 2)?;
        s.serialize_field("conductor", &self.conductor)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CyclotomicNumber::root_power(4, 1);
        let sq = i.mul(&i).unwrap();
        assert_eq!(sq, CyclotomicNumber::from_integer(4, -1));
        assert_eq!(sq.to_rational(), Some(rat(-1, 1)));
    }

    #[test]
    fn nontrivial_seventh_roots_sum_to_minus_one() {
        let w = |k| CyclotomicNumber::root_power(7, k);
        let a = w(1).add(&w(2)).unwrap().add(&w(4)).unwrap();
        let b = w(3).add(&w(5)).unwrap().add(&w(6)).unwrap();
        assert_eq!(a.add(&b).unwrap(), CyclotomicNumber::from_integer(7, -1));
    }

    #[test]
    fn inverse_of_i() {
        let i = CyclotomicNumber::root_power(4, 1);
        assert_eq!(i.inverse().unwrap(), i.neg());
        let prod = i.mul(&i.inverse().unwrap()).unwrap();
        assert_eq!(prod, CyclotomicNumber::one(4));
        assert!(CyclotomicNumber::zero(4).inverse().is_err());
    }

    #[test]
    fn galois_fixes_period() {
        // sigma_2 permutes {1,2,4} so the Gauss period is fixed
        let w = |k| CyclotomicNumber::root_power(7, k);
        let period = w(1).add(&w(2)).unwrap().add(&w(4)).unwrap();
        assert_eq!(period.galois_apply(2).unwrap(), period);
        assert_ne!(w(1).galois_apply(2).unwrap(), w(1));
    }

    #[test]
    fn mixed_conductors_are_rejected() {
        let a = CyclotomicNumber::root_power(4, 1);
        let b = CyclotomicNumber::root_power(8, 2);
        assert!(matches!(
            a.add(&b),
            Err(Error::ConductorMismatch { left: 4, right: 8 })
        ));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn rational_embeds_on_the_real_axis() {
        let x = CyclotomicNumber::from_rational(4, rat(3, 2));
        let (re, im) = x.to_complex(128).to_f64s();
        assert!((re - 1.5).abs() < 1e-15);
        assert_eq!(im, 0.0);
    }

    #[test]
    fn galois_rejects_non_units() {
        let i = CyclotomicNumber::root_power(4, 1);
        assert!(matches!(
            i.galois_apply(2),
            Err(Error::NotAUnit { l: 2, modulus: 4 })
        ));
        assert_eq!(i.galois_apply(3).unwrap(), i.neg());
    }

    #[test]
    fn conjugation_and_rationality() {
        let w5 = CyclotomicNumber::root_power(5, 1);
        assert_eq!(w5.conjugate(), CyclotomicNumber::root_power(5, 4));
        // w4^2 reduces to the rational -1
        let sq = CyclotomicNumber::root_power(4, 2);
        assert_eq!(sq.to_rational(), Some(rat(-1, 1)));
        assert_eq!(CyclotomicNumber::root_power(7, 1).to_rational(), None);
    }

    #[test]
    fn galois_composition_law() {
        let x = CyclotomicNumber::root_power(12, 1)
            .add(&CyclotomicNumber::from_rational(12, rat(3, 2)))
            .unwrap();
        for l1 in [1u64, 5, 7, 11] {
            for l2 in [1u64, 5, 7, 11] {
                let a = x.galois_apply(l1).unwrap().galois_apply(l2).unwrap();
                let b = x.galois_apply(l1 * l2 % 12).unwrap();
                assert_eq!(a, b);
            }
        }
        assert_eq!(x.galois_apply(1).unwrap(), x);
    }

    #[test]
    fn rational_iff_fixed_by_all_units() {
        // full-group fixed field is Q
        let candidates = [
            CyclotomicNumber::from_rational(12, rat(7, 3)),
            CyclotomicNumber::root_power(12, 2),
            CyclotomicNumber::root_power(12, 1)
                .add(&CyclotomicNumber::root_power(12, 11))
                .unwrap(),
        ];
        for x in candidates {
            let fixed_by_all = [1u64, 5, 7, 11]
                .iter()
                .all(|&l| x.galois_apply(l).unwrap() == x);
            assert_eq!(fixed_by_all, x.is_rational(), "x = {x}");
        }
    }

    #[test]
    fn embedding_preserves_arithmetic() {
        let w4 = CyclotomicNumber::root_power(4, 1);
        let lifted = w4.embed_in(12).unwrap();
        assert_eq!(lifted, CyclotomicNumber::root_power(12, 3));
        let sq = lifted.mul(&lifted).unwrap();
        assert_eq!(sq.to_rational(), Some(rat(-1, 1)));
        assert!(w4.embed_in(6).is_err());
    }

    #[test]
    fn embedding_numeric_consistency() {
        let w5 = CyclotomicNumber::root_power(5, 2);
        let (a_re, a_im) = w5.to_complex(128).to_f64s();
        let (b_re, b_im) = w5.embed_in(10).unwrap().to_complex(128).to_f64s();
        assert!((a_re - b_re).abs() < 1e-14);
        assert!((a_im - b_im).abs() < 1e-14);
    }

    #[test]
    fn numeric_embedding_of_power_basis() {
        // reduce(w_N^k) re-expanded numerically matches e^{2 pi i k/N}
        for n in [4u64, 5, 6, 7, 12] {
            for k in 0..n {
                let x = CyclotomicNumber::root_power(n, k);
                let (re, im) = x.to_complex(128).to_f64s();
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
                assert!((re - theta.cos()).abs() < 1e-13, "n={n} k={k}");
                assert!((im - theta.sin()).abs() < 1e-13, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn random_inverses_multiply_to_one() {
        // light deterministic sweep over several conductors
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut instances = 0usize;
        for n in [4u64, 5, 7, 8, 9, 12, 15, 16, 20, 24] {
            let phi = euler_phi(n) as usize;
            for _ in 0..100 {
                let coeffs: Vec<BigRational> = (0..phi)
                    .map(|_| rat((next() % 11) as i64 - 5, (next() % 4) as i64 + 1))
                    .collect();
                let x = CyclotomicNumber::from_exponent_buckets(n, coeffs);
                if x.is_zero() {
                    continue;
                }
                let prod = x.mul(&x.inverse().unwrap()).unwrap();
                assert_eq!(prod, CyclotomicNumber::one(n), "n={n}");
                instances += 1;
            }
        }
        assert!(instances >= 990);
    }

    #[test]
    fn multiplication_distributes_over_addition() {
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for n in [5u64, 8, 12] {
            let phi = euler_phi(n) as usize;
            let random = |next: &mut dyn FnMut() -> u64| {
                let coeffs: Vec<BigRational> = (0..phi)
                    .map(|_| rat((next() % 9) as i64 - 4, (next() % 3) as i64 + 1))
                    .collect();
                CyclotomicNumber::from_exponent_buckets(n, coeffs)
            };
            for _ in 0..50 {
                let a = random(&mut next);
                let b = random(&mut next);
                let c = random(&mut next);
                let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
                let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            }
        }
    }

    #[test]
    fn serialized_shape() {
        let x = CyclotomicNumber::root_power(4, 1)
            .scale(&rat(1, 2))
            .add(&CyclotomicNumber::from_integer(4, 3))
            .unwrap();
        let json = serde_json::to_value(&x).unwrap();
        assert_eq!(json["conductor"], 4);
        assert_eq!(json["coeffs"][0], "3");
        assert_eq!(json["coeffs"][1], "1/2");
    }
}
