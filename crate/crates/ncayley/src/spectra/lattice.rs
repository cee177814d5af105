//! All-integer LLL lattice reduction, used for integer-relation detection
//! between a numeric eigenvalue and the power basis of a cyclotomic field.
//!
//! This is the classical integral variant (Gram coefficients lambda_{i,j}
//! and subdeterminants d_i kept as exact integers, Lovasz constant 3/4), so
//! no floating point enters the reduction itself.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Reduce the rows of `basis` in place and return them ordered as LLL
/// leaves them (short vectors first, approximately).
#[allow(clippy::needless_range_loop)]
pub fn lll_reduce(mut basis: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = basis.len();
    if n <= 1 {
        return basis;
    }
    let dot = |a: &[BigInt], b: &[BigInt]| -> BigInt {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    };

    // lambda[k][j] for j < k; d[0..=n] with d[0] = 1
    let mut lambda = vec![vec![BigInt::zero(); n]; n];
    let mut d = vec![BigInt::zero(); n + 1];
    d[0] = BigInt::from(1);
    d[1] = dot(&basis[0], &basis[0]);
    assert!(!d[1].is_zero(), "lattice basis rows must be independent");

    let mut k = 1usize; // 0-based index of the vector being sized
    let mut k_max = 0usize;

    macro_rules! redi {
        ($k:expr, $l:expr) => {{
            let (kk, ll) = ($k, $l);
            // round(lambda / d) in exact arithmetic
            let two_lam: BigInt = &lambda[kk][ll] * 2;
            if two_lam.abs() > d[ll + 1].abs() {
                let q = nearest_quotient(&lambda[kk][ll], &d[ll + 1]);
                if !q.is_zero() {
                    let (head, tail) = basis.split_at_mut(kk);
                    for (c, b) in tail[0].iter_mut().zip(&head[ll]) {
                        *c -= &q * b;
                    }
                    let delta = &q * &d[ll + 1];
                    lambda[kk][ll] -= delta;
                    for i in 0..ll {
                        let delta = &q * &lambda[ll][i];
                        lambda[kk][i] -= delta;
                    }
                }
            }
        }};
    }

    while k < n {
        if k > k_max {
            k_max = k;
            for j in 0..=k {
                let mut u = dot(&basis[k], &basis[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lambda[k][i] * &lambda[j][i]) / &d[i];
                }
                if j < k {
                    lambda[k][j] = u;
                } else {
                    d[k + 1] = u;
                    assert!(
                        !d[k + 1].is_zero(),
                        "lattice basis rows must be independent"
                    );
                }
            }
        }
        loop {
            redi!(k, k - 1);
            // Lovasz condition with delta = 3/4:
            // swap iff 4 d_{k+1} d_{k-1} < 3 d_k^2 - 4 lambda_{k,k-1}^2
            let lhs: BigInt = 4 * (&d[k + 1] * &d[k - 1]);
            let rhs: BigInt = 3 * (&d[k] * &d[k]) - 4 * (&lambda[k][k - 1] * &lambda[k][k - 1]);
            if lhs < rhs {
                // SWAPI(k)
                basis.swap(k, k - 1);
                for j in 0..k.saturating_sub(1) {
                    let tmp = lambda[k][j].clone();
                    lambda[k][j] = lambda[k - 1][j].clone();
                    lambda[k - 1][j] = tmp;
                }
                let lam = lambda[k][k - 1].clone();
                let b_new: BigInt = (&d[k - 1] * &d[k + 1] + &lam * &lam) / &d[k];
                for i in k + 1..=k_max {
                    let t = lambda[i][k].clone();
                    lambda[i][k] = (&d[k + 1] * &lambda[i][k - 1] - &lam * &t) / &d[k];
                    lambda[i][k - 1] = (&b_new * &t + &lam * &lambda[i][k]) / &d[k + 1];
                }
                d[k] = b_new;
                k = k.max(2) - 1;
            } else {
                for l in (0..k.saturating_sub(1)).rev() {
                    redi!(k, l);
                }
                k += 1;
                break;
            }
        }
    }
    basis
}

/// round(a / b) for positive b (the d_i are Gram determinants, so always
/// positive here); any consistent nearest rounding works for size reduction.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    let num: BigInt = a * 2 + b;
    let den: BigInt = b * 2;
    num.div_floor(&den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn norm2(v: &[BigInt]) -> BigInt {
        v.iter().map(|x| x * x).sum()
    }

    #[test]
    fn reduces_a_classic_planar_basis() {
        // basis (1, 0), (4, 1): shortest vector is (0, 1) up to sign
        let basis = vec![vec![big(1), big(0)], vec![big(4), big(1)]];
        let reduced = lll_reduce(basis);
        let min = reduced.iter().map(|v| norm2(v)).min().unwrap();
        assert_eq!(min, big(1));
    }

    #[test]
    fn finds_small_integer_relation() {
        // 3 * 17 - 51 = 0: scale the values and let identities ride along
        let c = big(1) << 40;
        let vals = [big(17), big(51)];
        let mut basis = Vec::new();
        for (i, v) in vals.iter().enumerate() {
            let mut row = vec![big(0); 3];
            row[i] = big(1);
            row[2] = v * &c;
            basis.push(row);
        }
        let reduced = lll_reduce(basis);
        // the short vector should be (3, -1, 0): 3*17 = 51
        let short = reduced
            .iter()
            .min_by_key(|v| norm2(v.as_slice()))
            .unwrap();
        let (p, q, r) = (&short[0], &short[1], &short[2]);
        assert!(r.is_zero());
        assert_eq!(p * big(17) + q * big(51), big(0));
        assert!(!p.is_zero());
    }

    #[test]
    fn golden_ratio_minimal_polynomial() {
        // phi = (1+sqrt5)/2 satisfies x^2 - x - 1: find it from the numeric
        // value using columns [1, phi, phi^2]
        let scale = 60u32;
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let c = 2f64.powi(scale as i32);
        let vals = [1.0, phi, phi * phi];
        let mut basis = Vec::new();
        for (i, v) in vals.iter().enumerate() {
            let mut row = vec![big(0); 4];
            row[i] = big(1);
            row[3] = BigInt::from((v * c).round() as i128);
            basis.push(row);
        }
        let reduced = lll_reduce(basis);
        let short = reduced.iter().min_by_key(|v| norm2(v.as_slice())).unwrap();
        // expect +-(1, 1, -1, eps): 1 + phi - phi^2 = 0
        let sign = if short[2] > big(0) { 1 } else { -1 };
        assert_eq!(short[0].clone() * sign, big(-1));
        assert_eq!(short[1].clone() * sign, big(-1));
        assert_eq!(short[2].clone() * sign, big(1));
    }
}
