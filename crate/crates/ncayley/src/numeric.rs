//! Fixed-point arbitrary-precision complex arithmetic.
//!
//! A `BigComplex` stores `re/2^scale + i*im/2^scale` with `BigInt`
//! mantissas. Every value in one computation shares the same scale, which
//! keeps alignment trivial; multiplications shift back down with round-to-
//! nearest so errors stay at the ulp level. This is all the numerics the
//! crate needs: embedding roots of unity, polynomial root refinement and
//! the scaled rows of integer-relation lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Right shift with round-to-nearest (ties away from paranoid exactness:
/// half rounds up, which is fine at ulp level).
fn shr_round(x: &BigInt, k: u32) -> BigInt {
    if k == 0 {
        return x.clone();
    }
    let half = BigInt::from(1) << (k - 1);
    (x + half) >> k
}

/// Fixed-point complex number: `(re + i*im) / 2^scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigComplex {
    pub re: BigInt,
    pub im: BigInt,
    pub scale: u32,
}

impl BigComplex {
    pub fn zero(scale: u32) -> Self {
        BigComplex {
            re: BigInt::zero(),
            im: BigInt::zero(),
            scale,
        }
    }

    pub fn one(scale: u32) -> Self {
        BigComplex {
            re: BigInt::from(1) << scale,
            im: BigInt::zero(),
            scale,
        }
    }

    /// Exact conversion from an f64 pair (the 53-bit mantissa is preserved).
    pub fn from_f64s(re: f64, im: f64, scale: u32) -> Self {
        BigComplex {
            re: f64_to_scaled(re, scale),
            im: f64_to_scaled(im, scale),
            scale,
        }
    }

    pub fn from_rational(q: &BigRational, scale: u32) -> Self {
        BigComplex {
            re: rational_to_scaled(q, scale),
            im: BigInt::zero(),
            scale,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.scale, rhs.scale);
        BigComplex {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
            scale: self.scale,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.scale, rhs.scale);
        BigComplex {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
            scale: self.scale,
        }
    }

    pub fn neg(&self) -> Self {
        BigComplex {
            re: -&self.re,
            im: -&self.im,
            scale: self.scale,
        }
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: -&self.im,
            scale: self.scale,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.scale, rhs.scale);
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        BigComplex {
            re: shr_round(&re, self.scale),
            im: shr_round(&im, self.scale),
            scale: self.scale,
        }
    }

    /// Division; `None` when the divisor is (numerically) zero.
    pub fn div(&self, rhs: &Self) -> Option<Self> {
        debug_assert_eq!(self.scale, rhs.scale);
        let den = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        if den.is_zero() {
            return None;
        }
        // (a * conj(b)) << scale / |b|^2, all at 2*scale intermediates
        let num_re = (&self.re * &rhs.re + &self.im * &rhs.im) << self.scale;
        let num_im = (&self.im * &rhs.re - &self.re * &rhs.im) << self.scale;
        Some(BigComplex {
            re: num_re.div_floor(&den),
            im: num_im.div_floor(&den),
            scale: self.scale,
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = BigComplex::one(self.scale);
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

    /// `|z|^2` as a mantissa at the value's own scale.
    pub fn norm_sqr_mant(&self) -> BigInt {
        shr_round(&(&self.re * &self.re + &self.im * &self.im), self.scale)
    }

    /// True iff `|z| < 2^e` (e may be negative), decided exactly.
    pub fn below_pow2(&self, e: i64) -> bool {
        // |z|^2 < 2^{2e}  <=>  re^2 + im^2 < 2^{2e + 2*scale}
        let norm2 = &self.re * &self.re + &self.im * &self.im;
        let rhs_exp = 2 * e + 2 * self.scale as i64;
        if rhs_exp < 0 {
            norm2.is_zero()
        } else {
            norm2 < (BigInt::from(1) << (rhs_exp as u64))
        }
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        (
            scaled_to_f64(&self.re, self.scale),
            scaled_to_f64(&self.im, self.scale),
        )
    }
}

/// Exact f64 -> mantissa-at-scale conversion via the IEEE bit pattern.
fn f64_to_scaled(x: f64, scale: u32) -> BigInt {
    if x == 0.0 || !x.is_finite() {
        return BigInt::zero();
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & 0x000f_ffff_ffff_ffff;
    let (mant, exp) = if raw_exp == 0 {
        (frac, -1074i64) // subnormal
    } else {
        (frac | (1u64 << 52), raw_exp - 1075)
    };
    let m = BigInt::from(sign) * BigInt::from(mant);
    let shift = exp + scale as i64;
    if shift >= 0 {
        m << (shift as u64)
    } else if shift >= -64 {
        shr_round(&m, (-shift) as u32)
    } else {
        BigInt::zero()
    }
}

fn scaled_to_f64(m: &BigInt, scale: u32) -> f64 {
    if m.is_zero() {
        return 0.0;
    }
    let bits = m.bits();
    if bits <= 900 {
        m.to_f64().unwrap_or(0.0) / 2f64.powi(scale as i32)
    } else {
        // keep the top 64 bits and track the dropped exponent
        let drop = bits - 64;
        let top = m >> drop;
        top.to_f64().unwrap_or(0.0) * 2f64.powi(drop as i32 - scale as i32)
    }
}

fn rational_to_scaled(q: &BigRational, scale: u32) -> BigInt {
    let num = q.numer() << (scale + 1);
    let half = num.div_floor(q.denom());
    shr_round(&half, 1)
}

/// `e^{2 pi i k / n}` at the requested scale. Seeded from f64 and polished
/// by Newton iteration on z^n - 1; quadratic convergence reaches any
/// practical scale in a handful of steps.
pub fn root_of_unity(n: u64, k: u64, scale: u32) -> BigComplex {
    assert!(n >= 1);
    let k = k % n;
    if n == 1 || k == 0 {
        return BigComplex::one(scale);
    }
    let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
    let mut z = BigComplex::from_f64s(theta.cos(), theta.sin(), scale);
    let n_fixed = BigComplex::from_f64s(n as f64, 0.0, scale);
    // residual floor is about N ulps; 16 slack bits cover any desk-scale N
    let target = -(scale as i64) + 16;
    for _ in 0..64 {
        let zp = z.pow(n - 1);
        let f = zp.mul(&z).sub(&BigComplex::one(scale));
        if f.below_pow2(target) {
            break;
        }
        let df = n_fixed.mul(&zp);
        let step = f.div(&df).expect("derivative of z^n is nonzero near a root");
        z = z.sub(&step);
    }
    z
}

/// All powers `w^0 .. w^{n-1}` of the primitive n-th root of unity, by
/// repeated multiplication: the error grows linearly in the exponent and
/// stays far below the guard bits callers add on top of their precision.
pub fn roots_of_unity(n: u64, scale: u32) -> Vec<BigComplex> {
    let omega = root_of_unity(n, 1, scale);
    let mut out = Vec::with_capacity(n as usize);
    let mut acc = BigComplex::one(scale);
    for _ in 0..n {
        out.push(acc.clone());
        acc = acc.mul(&omega);
    }
    out
}
