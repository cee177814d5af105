//! Finite abelian groups presented as products of cyclic groups.
//!
//! Elements are reduced mixed-radix tuples with a canonical integer index
//! (mixed-radix encoding, first factor most significant), so dense vectors
//! indexed by elements are cheap. Characters are indexed by group elements;
//! the Galois action on elements is componentwise multiplication by a unit.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::poly::euler_phi;

/// `Z_{d_1} x ... x Z_{d_r}`, every factor at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
    order: u64,
}

/// A reduced residue tuple of a [`FiniteAbelianGroup`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupElement {
    pub fn new(residues: Vec<u64>) -> Self {
        GroupElement { residues }
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

impl FiniteAbelianGroup {
    /// Build a group from a non-empty list of factors, each at least 2.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        if invariant_factors.is_empty() {
            return Err(Error::InvalidGroup("factor list is empty".into()));
        }
        let mut order: u64 = 1;
        for &d in &invariant_factors {
            if d < 2 {
                return Err(Error::InvalidGroup(format!(
                    "factor {d} is below 2; trivial factors are not supported"
                )));
            }
            order = order.checked_mul(d).ok_or_else(|| {
                Error::InvalidGroup("group order overflows u64".into())
            })?;
        }
        Ok(FiniteAbelianGroup {
            invariant_factors,
            order,
        })
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(vec![0; self.rank()])
    }

    /// Validates membership: right rank, every residue reduced.
    pub fn check_element(&self, g: &GroupElement) -> Result<()> {
        if g.residues.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: g.residues.len(),
            });
        }
        for (&res, &d) in g.residues.iter().zip(&self.invariant_factors) {
            if res >= d {
                return Err(Error::ResidueOutOfRange {
                    residue: res,
                    factor: d,
                });
            }
        }
        Ok(())
    }

    /// Canonical index: mixed-radix encoding with the first factor most
    /// significant, so index order equals lexicographic order on tuples.
    pub fn index_of(&self, g: &GroupElement) -> usize {
        debug_assert!(self.check_element(g).is_ok());
        let mut idx: u64 = 0;
        for (&res, &d) in g.residues.iter().zip(&self.invariant_factors) {
            idx = idx * d + res;
        }
        idx as usize
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        debug_assert!(index < self.order as usize);
        let mut residues = vec![0u64; self.rank()];
        for i in (0..self.rank()).rev() {
            let d = self.invariant_factors[i];
            residues[i] = (index as u64) % d;
            index /= d as usize;
        }
        GroupElement::new(residues)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as usize).map(|i| self.element_at(i))
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check_element(g)?;
        self.check_element(h)?;
        Ok(GroupElement::new(
            g.residues
                .iter()
                .zip(&h.residues)
                .zip(&self.invariant_factors)
                .map(|((a, b), d)| (a + b) % d)
                .collect(),
        ))
    }

    pub fn neg(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check_element(g)?;
        Ok(GroupElement::new(
            g.residues
                .iter()
                .zip(&self.invariant_factors)
                .map(|(a, d)| (d - a) % d)
                .collect(),
        ))
    }

    pub fn sub(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        let nh = self.neg(h)?;
        self.add(g, &nh)
    }

    /// The action `eta_l`: componentwise multiplication by the unit l.
    pub fn eta_apply(&self, l: u64, g: &GroupElement) -> Result<GroupElement> {
        if !is_unit(l, self.order) {
            return Err(Error::NotAUnit {
                l: l % self.order,
                modulus: self.order,
            });
        }
        self.check_element(g)?;
        Ok(GroupElement::new(
            g.residues
                .iter()
                .zip(&self.invariant_factors)
                .map(|(a, d)| (a % d) * (l % d) % d)
                .collect(),
        ))
    }

    /// Exponent e with `chi_v(g) = w_N^e`, namely
    /// `sum_i (N/d_i) * v_i * g_i mod N`.
    pub fn character_exponent(&self, v: &GroupElement, g: &GroupElement) -> Result<u64> {
        self.check_element(v)?;
        self.check_element(g)?;
        let n = self.order;
        let mut e: u64 = 0;
        for ((&vi, &gi), &d) in v.residues.iter().zip(&g.residues).zip(&self.invariant_factors) {
            // (N/d) * v_i * g_i mod N, with u128 intermediates
            let term = ((n / d) as u128 * (vi as u128 % d as u128) % n as u128)
                * (gi as u128 % d as u128)
                % n as u128;
            e = ((e as u128 + term) % n as u128) as u64;
        }
        Ok(e)
    }

    /// The exact character value `chi_v(g)` in Q(w_N).
    pub fn character_value(&self, v: &GroupElement, g: &GroupElement) -> Result<CyclotomicNumber> {
        let e = self.character_exponent(v, g)?;
        Ok(CyclotomicNumber::root_power(self.order, e))
    }
}

pub fn is_unit(l: u64, modulus: u64) -> bool {
    (l % modulus).gcd(&modulus) == 1
}

/// A set of units modulo N; used both for the full unit group and for
/// subgroups of it (Galois groups of subfields of Q(w_N)).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitSet {
    modulus: u64,
    units: BTreeSet<u64>,
}

impl UnitSet {
    /// All of `(Z/N)^*`, represented in `[1, N]` (so N=2 yields {1}).
    pub fn full(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Precondition(format!(
                "units are only defined for modulus >= 2, got {modulus}"
            )));
        }
        let units = (1..=modulus).filter(|&l| is_unit(l, modulus)).collect();
        Ok(UnitSet { modulus, units })
    }

    /// A subgroup from an explicit member list; verifies closure.
    pub fn subgroup(modulus: u64, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut units = BTreeSet::new();
        for l in members {
            let l = l % modulus;
            let l = if l == 0 { modulus } else { l };
            if !is_unit(l, modulus) {
                return Err(Error::NotAUnit { l, modulus });
            }
            units.insert(l);
        }
        units.insert(1);
        let set = UnitSet { modulus, units };
        set.verify_closed()?;
        Ok(set)
    }

    /// The subgroup generated by the given units.
    pub fn generated_by(modulus: u64, generators: &[u64]) -> Result<Self> {
        for &g in generators {
            if !is_unit(g, modulus) {
                return Err(Error::NotAUnit {
                    l: g % modulus,
                    modulus,
                });
            }
        }
        let mut units: BTreeSet<u64> = BTreeSet::new();
        units.insert(1);
        let mut frontier: Vec<u64> = vec![1];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                let y = (x as u128 * g as u128 % modulus as u128) as u64;
                let y = if y == 0 { modulus } else { y };
                if units.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Ok(UnitSet { modulus, units })
    }

    pub fn verify_closed(&self) -> Result<()> {
        if !self.units.contains(&1) {
            return Err(Error::Internal("unit set does not contain 1".into()));
        }
        for &a in &self.units {
            for &b in &self.units {
                let c = (a as u128 * b as u128 % self.modulus as u128) as u64;
                let c = if c == 0 { self.modulus } else { c };
                if !self.units.contains(&c) {
                    return Err(Error::Internal(format!(
                        "unit set not closed: {a}*{b} = {c} mod {} is missing",
                        self.modulus
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn contains(&self, l: u64) -> bool {
        let l = l % self.modulus;
        let l = if l == 0 { self.modulus } else { l };
        self.units.contains(&l)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.units.iter().copied()
    }

    pub fn members(&self) -> Vec<u64> {
        self.units.iter().copied().collect()
    }

    pub fn is_full(&self) -> bool {
        self.units.len() as u64 == euler_phi(self.modulus)
    }
}
