//! Simultaneous polynomial root finding: f64 Durand-Kerner seeds polished
//! by Aberth-Ehrlich iteration in fixed-point arithmetic. Callers pass
//! square-free polynomials, so all roots are simple and the iteration
//! converges fast; residuals are certified against the caller's target.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::BigComplex;

fn eval_f64(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Durand-Kerner in f64: cheap, good-enough seeds for the exact polish.
fn seed_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = 1.0
        + monic[..d]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let mut roots: Vec<Complex64> = (0..d)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.35) / (d as f64);
            0.9 * radius * Complex64::new(theta.cos(), theta.sin())
        })
        .collect();
    for _ in 0..400 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-290 {
                continue;
            }
            let delta = eval_f64(&monic, roots[i]) / denom;
            roots[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-14 {
            break;
        }
    }
    roots
}

fn eval_big(coeffs: &[BigComplex], z: &BigComplex) -> BigComplex {
    let scale = z.scale;
    let mut acc = BigComplex::zero(scale);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

fn derivative_coeffs(coeffs: &[BigComplex], scale: u32) -> Vec<BigComplex> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| {
            let k_fixed = BigComplex::from_f64s(k as f64, 0.0, scale);
            c.mul(&k_fixed)
        })
        .collect()
}

/// All roots of a square-free polynomial with fixed-point coefficients
/// (lowest degree first, leading coefficient nonzero, degree >= 1).
/// Iterates until every residual satisfies `|p(z)| < 2^residual_exp`.
pub fn all_roots(
    coeffs: &[BigComplex],
    scale: u32,
    residual_exp: i64,
) -> Result<Vec<BigComplex>> {
    let d = coeffs.len() - 1;
    assert!(d >= 1, "degree must be at least 1");
    if d == 1 {
        let root = coeffs[0]
            .neg()
            .div(&coeffs[1])
            .ok_or_else(|| Error::RootFindingFailed("zero leading coefficient".into()))?;
        return Ok(vec![root]);
    }

    let coeffs_f64: Vec<Complex64> = coeffs
        .iter()
        .map(|c| {
            let (re, im) = c.to_f64s();
            Complex64::new(re, im)
        })
        .collect();
    let mut roots: Vec<BigComplex> = seed_roots(&coeffs_f64)
        .into_iter()
        .map(|z| BigComplex::from_f64s(z.re, z.im, scale))
        .collect();

    let deriv = derivative_coeffs(coeffs, scale);
    for _ in 0..200 {
        let mut all_good = true;
        for i in 0..d {
            let f = eval_big(coeffs, &roots[i]);
            if f.below_pow2(residual_exp) {
                continue;
            }
            all_good = false;
            let df = eval_big(&deriv, &roots[i]);
            let Some(newton) = f.div(&df) else {
                return Err(Error::RootFindingFailed(
                    "derivative vanished at an approximant (clustered roots?)".into(),
                ));
            };
            // Aberth correction: w / (1 - w * sum_{j != i} 1/(z_i - z_j))
            let mut repulsion = BigComplex::zero(scale);
            for j in 0..d {
                if i == j {
                    continue;
                }
                let diff = roots[i].sub(&roots[j]);
                let Some(inv) = BigComplex::one(scale).div(&diff) else {
                    return Err(Error::RootFindingFailed(
                        "two approximants collided".into(),
                    ));
                };
                repulsion = repulsion.add(&inv);
            }
            let denom = BigComplex::one(scale).sub(&newton.mul(&repulsion));
            let step = match newton.div(&denom) {
                Some(s) if !denom.is_zero() => s,
                _ => newton.clone(),
            };
            roots[i] = roots[i].sub(&step);
        }
        if all_good {
            return Ok(roots);
        }
    }
    // final check: accept only if every residual meets the target
    for z in &roots {
        if !eval_big(coeffs, z).below_pow2(residual_exp) {
            return Err(Error::RootFindingFailed(format!(
                "residual above 2^{residual_exp} after iteration limit"
            )));
        }
    }
    Ok(roots)
}
