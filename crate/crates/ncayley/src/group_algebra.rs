//! The rational group algebra Q[G]: dense rational-valued functions on a
//! finite abelian group under pointwise addition and convolution, together
//! with the character-side Fourier machinery.
//!
//! Everything is exact. Fourier coefficients live in Q(w_N); they are
//! accumulated as exponent buckets and reduced once, which keeps the
//! O(N) sums cheap.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};

/// A function `G -> Q`, stored densely by canonical element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    group: FiniteAbelianGroup,
    values: Vec<BigRational>,
}

impl GroupAlgebraElement {
    pub fn zero(group: &FiniteAbelianGroup) -> Self {
        GroupAlgebraElement {
            group: group.clone(),
            values: vec![BigRational::zero(); group.order() as usize],
        }
    }

    pub fn from_values(group: &FiniteAbelianGroup, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != group.order() as usize {
            return Err(Error::Precondition(format!(
                "value vector has length {}, group has order {}",
                values.len(),
                group.order()
            )));
        }
        Ok(GroupAlgebraElement {
            group: group.clone(),
            values,
        })
    }

    /// The indicator function of a subset of G.
    pub fn indicator<'a>(
        group: &FiniteAbelianGroup,
        set: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Result<Self> {
        let mut out = Self::zero(group);
        for g in set {
            group.check_element(g)?;
            out.values[group.index_of(g)] = BigRational::one();
        }
        Ok(out)
    }

    /// `delta_{g}`, the convolution unit when g is the identity.
    pub fn delta(group: &FiniteAbelianGroup, g: &GroupElement) -> Result<Self> {
        Self::indicator(group, [g])
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value_at(&self, g: &GroupElement) -> &BigRational {
        &self.values[self.group.index_of(g)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// True iff every value is an integer (denominator 1).
    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.denom().is_one())
    }

    fn check_same(&self, rhs: &Self) -> Result<()> {
        if self.group != rhs.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        Ok(GroupAlgebraElement {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        Ok(GroupAlgebraElement {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        GroupAlgebraElement {
            group: self.group.clone(),
            values: self.values.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        GroupAlgebraElement {
            group: self.group.clone(),
            values: self.values.iter().map(|a| a * s).collect(),
        }
    }

    #[allow(clippy::needless_range_loop)]
    /// Convolution `(a*b)(g) = sum_h a(g-h) b(h)`, exact and O(N^2).
    pub fn convolve(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let g = &self.group;
        let n = g.order() as usize;
        let mut values = vec![BigRational::zero(); n];
        // precompute index differences through element arithmetic
        for h_idx in 0..n {
            if rhs.values[h_idx].is_zero() {
                continue;
            }
            let h = g.element_at(h_idx);
            for out_idx in 0..n {
                let diff = g.sub(&g.element_at(out_idx), &h)?;
                let a = &self.values[g.index_of(&diff)];
                if !a.is_zero() {
                    values[out_idx] += a * &rhs.values[h_idx];
                }
            }
        }
        Ok(GroupAlgebraElement {
            group: g.clone(),
            values,
        })
    }

    /// The Fourier coefficient `sum_g a(g) conj(chi_v(g))` in Q(w_N).
    pub fn fourier_coefficient(&self, v: &GroupElement) -> Result<CyclotomicNumber> {
        let g = &self.group;
        let n = g.order();
        let mut buckets = vec![BigRational::zero(); n as usize];
        for idx in 0..n as usize {
            if self.values[idx].is_zero() {
                continue;
            }
            let x = g.element_at(idx);
            let e = g.character_exponent(v, &x)?;
            // conj(w^e) = w^{N-e}
            buckets[((n - e) % n) as usize] += &self.values[idx];
        }
        Ok(CyclotomicNumber::from_exponent_buckets(n, buckets))
    }

    /// The function `g -> a(eta_l(g))`; used by the stabilizer search.
    pub fn compose_eta(&self, l: u64) -> Result<Self> {
        let g = &self.group;
        let mut values = vec![BigRational::zero(); g.order() as usize];
        for (idx, slot) in values.iter_mut().enumerate() {
            let mapped = g.eta_apply(l, &g.element_at(idx))?;
            *slot = self.values[g.index_of(&mapped)].clone();
        }
        Ok(GroupAlgebraElement {
            group: g.clone(),
            values,
        })
    }

    /// The support of the function, in canonical element order.
    pub fn support(&self) -> Vec<GroupElement> {
        (0..self.group.order() as usize)
            .filter(|&i| !self.values[i].is_zero())
            .map(|i| self.group.element_at(i))
            .collect()
    }
}

/// Fourier inversion: rebuild `a` from all N coefficients, indexed by the
/// canonical index of the character label v. Fails if any reconstructed
/// value is not rational, which signals inconsistent coefficient data.
pub fn fourier_inverse(
    group: &FiniteAbelianGroup,
    coefficients: &[CyclotomicNumber],
) -> Result<GroupAlgebraElement> {
    let n = group.order();
    if coefficients.len() != n as usize {
        return Err(Error::Precondition(format!(
            "need {} Fourier coefficients, got {}",
            n,
            coefficients.len()
        )));
    }
    let n_rat = BigRational::from_integer(n.into());
    let mut values = Vec::with_capacity(n as usize);
    for g_idx in 0..n as usize {
        let g = group.element_at(g_idx);
        let mut acc = CyclotomicNumber::zero(n);
        for (v_idx, coeff) in coefficients.iter().enumerate() {
            if coeff.conductor() != n {
                return Err(Error::ConductorMismatch {
                    left: n,
                    right: coeff.conductor(),
                });
            }
            let v = group.element_at(v_idx);
            let chi = group.character_value(&v, &g)?;
            acc = acc.add(&coeff.mul(&chi)?)?;
        }
        let value = acc.to_rational().ok_or_else(|| {
            Error::Precondition(format!(
                "Fourier inversion produced a non-rational value at index {g_idx}; \
                 coefficient data does not describe an element of Q[G]"
            ))
        })?;
        values.push(value / &n_rat);
    }
    GroupAlgebraElement::from_values(group, values)
}

impl fmt::Display for GroupAlgebraElement {
    /// Renders as a combination of indicator masses, e.g. `2d{1,2,4} - d{3}`
    /// groups elements by coefficient value for readability.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut groups: Vec<(BigRational, Vec<String>)> = Vec::new();
        for (idx, val) in self.values.iter().enumerate() {
            if val.is_zero() {
                continue;
            }
            let e = self.group.element_at(idx);
            let label = if self.group.rank() == 1 {
                e.residues()[0].to_string()
            } else {
                format!(
                    "({})",
                    e.residues()
                        .iter()
                        .map(|r| r.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            };
            if let Some(slot) = groups.iter_mut().find(|(c, _)| c == val) {
                slot.1.push(label);
            } else {
                groups.push((val.clone(), vec![label]));
            }
        }
        for (i, (coeff, labels)) in groups.iter().enumerate() {
            let mag = coeff.abs();
            if i == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                if mag.denom().is_one() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
            }
            write!(f, "d{{{}}}", labels.join(","))?;
        }
        Ok(())
    }
}
