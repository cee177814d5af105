//! The Galois side of the degree computation: the stabilizer subgroup of
//! the unit group determined by the principal-minor sums, the orbit
//! decomposition of the group under the transported action, the fixed field
//! with its Gauss-period generators, and the exact degree bounds.

use serde::Serialize;

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement, UnitSet};
use crate::group_algebra::GroupAlgebraElement;
use crate::poly::euler_phi;

/// The units l with `beta_k(g) = beta_k(eta_l(g))` for all k and g; always
/// a subgroup of `(Z/N)^*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerSubgroup {
    units: UnitSet,
}

impl StabilizerSubgroup {
    /// Wrap an explicit subgroup of units (e.g. the Galois group of a
    /// chosen subfield); multiplicative closure is verified.
    pub fn from_units(units: UnitSet) -> Result<Self> {
        units.verify_closed()?;
        Ok(StabilizerSubgroup { units })
    }

    pub fn units(&self) -> &UnitSet {
        &self.units
    }

    pub fn modulus(&self) -> u64 {
        self.units.modulus()
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn contains(&self, l: u64) -> bool {
        self.units.contains(l)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.units.iter()
    }

    pub fn members(&self) -> Vec<u64> {
        self.units.members()
    }
}

/// Compute the stabilizer subgroup from `beta_1 .. beta_n`. Every unit is
/// tested against all n*N equations directly; closure is then verified as a
/// runtime assertion (it is a theorem, so a failure means a bug).
pub fn stabilizer_subgroup(
    betas: &[GroupAlgebraElement],
    group: &FiniteAbelianGroup,
) -> Result<StabilizerSubgroup> {
    let n = group.order();
    for beta in betas {
        if beta.group() != group {
            return Err(Error::GroupMismatch);
        }
    }
    let mut members = Vec::new();
    for l in UnitSet::full(n)?.iter() {
        let fixes_all = betas
            .iter()
            .map(|beta| Ok(beta.compose_eta(l)? == *beta))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
        if fixes_all {
            members.push(l);
        }
    }
    let units = UnitSet::subgroup(n, members).map_err(|e| match e {
        Error::Internal(msg) => Error::Internal(format!("stabilizer closure failed: {msg}")),
        other => other,
    })?;
    Ok(StabilizerSubgroup { units })
}

/// The orbits of G under `{eta_l : l in H}`, each sorted by canonical
/// index, ordered by their (lexicographically least) representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition {
    orbits: Vec<Vec<GroupElement>>,
    representatives: Vec<GroupElement>,
}

impl OrbitDecomposition {
    pub fn orbits(&self) -> &[Vec<GroupElement>] {
        &self.orbits
    }

    pub fn representatives(&self) -> &[GroupElement] {
        &self.representatives
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }
}

pub fn orbit_decomposition(
    group: &FiniteAbelianGroup,
    h: &StabilizerSubgroup,
) -> Result<OrbitDecomposition> {
    if h.modulus() != group.order() {
        return Err(Error::Precondition(format!(
            "subgroup modulus {} does not match group order {}",
            h.modulus(),
            group.order()
        )));
    }
    let n = group.order() as usize;
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    let mut representatives = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let base = group.element_at(start);
        let mut orbit_indices: Vec<usize> = Vec::new();
        for l in h.iter() {
            let image = group.eta_apply(l, &base)?;
            let idx = group.index_of(&image);
            if !seen[idx] {
                seen[idx] = true;
                orbit_indices.push(idx);
            }
        }
        orbit_indices.sort_unstable();
        representatives.push(group.element_at(orbit_indices[0]));
        orbits.push(
            orbit_indices
                .into_iter()
                .map(|i| group.element_at(i))
                .collect(),
        );
    }
    Ok(OrbitDecomposition {
        orbits,
        representatives,
    })
}

/// Exact degree bounds: `phi(N)/|H| <= deg <= (n!)^{|J|} * phi(N)/|H|`.
pub fn degree_bounds(
    group: &FiniteAbelianGroup,
    h: &StabilizerSubgroup,
    orbit_count: usize,
    n: usize,
) -> Result<(u128, u128)> {
    let phi = euler_phi(group.order());
    if !phi.is_multiple_of(h.len() as u64) {
        return Err(Error::Internal(format!(
            "|H| = {} does not divide phi(N) = {phi}",
            h.len()
        )));
    }
    let lower = (phi / h.len() as u64) as u128;
    let mut factorial: u128 = 1;
    for k in 2..=n as u128 {
        factorial = factorial
            .checked_mul(k)
            .ok_or_else(|| Error::Precondition("n! overflows u128".into()))?;
    }
    let mut upper = lower;
    for _ in 0..orbit_count {
        upper = upper.checked_mul(factorial).ok_or_else(|| {
            Error::Precondition("degree upper bound (n!)^|J| * phi(N)/|H| overflows u128".into())
        })?;
    }
    Ok((lower, upper))
}

/// The fixed field of H inside Q(w_N), described by its degree and a
/// spanning set of Gauss periods `sum_{l in H} w_N^{l t}` over orbit
/// representatives t of the multiplication action of H on Z_N.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedFieldDescription {
    subgroup: UnitSet,
    degree: u64,
    period_generators: Vec<CyclotomicNumber>,
}

impl FixedFieldDescription {
    pub fn subgroup(&self) -> &UnitSet {
        &self.subgroup
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn period_generators(&self) -> &[CyclotomicNumber] {
        &self.period_generators
    }
}

pub fn fixed_field(
    group: &FiniteAbelianGroup,
    h: &StabilizerSubgroup,
) -> Result<FixedFieldDescription> {
    let n = group.order();
    let phi = euler_phi(n);
    if !phi.is_multiple_of(h.len() as u64) {
        return Err(Error::Internal(format!(
            "|H| = {} does not divide phi(N) = {phi}",
            h.len()
        )));
    }
    let degree = phi / h.len() as u64;

    // orbit representatives of H acting on Z_N by multiplication
    let mut seen = vec![false; n as usize];
    let mut generators = Vec::new();
    for t in 0..n {
        if seen[t as usize] {
            continue;
        }
        let mut buckets = vec![num_rational::BigRational::from_integer(0.into()); n as usize];
        for l in h.iter() {
            let e = (l as u128 * t as u128 % n as u128) as usize;
            seen[e] = true;
            buckets[e] += num_rational::BigRational::from_integer(1.into());
        }
        let period = CyclotomicNumber::from_exponent_buckets(n, buckets);
        generators.push(period);
    }

    // every generator must be H-fixed
    for gen in &generators {
        for l in h.iter() {
            if gen.galois_apply(l)? != *gen {
                return Err(Error::Internal(format!(
                    "Gauss period {gen} is not fixed by sigma_{l}"
                )));
            }
        }
    }
    // and for every unit outside H some generator must move, which
    // certifies that the fixed field of the spanning set is exactly Inv(H)
    for u in UnitSet::full(n)?.iter() {
        if h.contains(u) {
            continue;
        }
        let moves_any = generators
            .iter()
            .map(|gen| Ok(gen.galois_apply(u)? != *gen))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .any(|b| b);
        if !moves_any {
            return Err(Error::Internal(format!(
                "unit {u} outside H fixes every Gauss period; Inv(H) certificate failed"
            )));
        }
    }

    Ok(FixedFieldDescription {
        subgroup: h.units().clone(),
        degree,
        period_generators: generators,
    })
}

/// True iff x is fixed by `sigma_l` for every l in H.
pub fn in_fixed_field(x: &CyclotomicNumber, h: &StabilizerSubgroup) -> Result<bool> {
    if x.conductor() != h.modulus() {
        return Err(Error::ConductorMismatch {
            left: x.conductor(),
            right: h.modulus(),
        });
    }
    for l in h.iter() {
        if x.galois_apply(l)? != *x {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ga_matrix::{example_spec_z7, GAMatrix};
    use crate::group_algebra::GroupAlgebraElement;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn el(r: u64) -> GroupElement {
        GroupElement::new(vec![r])
    }

    fn subgroup(n: u64, members: &[u64]) -> StabilizerSubgroup {
        StabilizerSubgroup {
            units: UnitSet::subgroup(n, members.iter().copied()).unwrap(),
        }
    }

    #[test]
    fn stabilizer_of_the_worked_example() {
        let spec = example_spec_z7();
        let delta = GAMatrix::delta_matrix(&spec);
        let betas = delta.beta_all();
        let h = stabilizer_subgroup(&betas[1..], spec.group()).unwrap();
        assert_eq!(h.members(), vec![1, 2, 4]);
    }

    #[test]
    fn stabilizer_of_constants_is_everything() {
        let g = FiniteAbelianGroup::new(vec![12]).unwrap();
        let c = GroupAlgebraElement::from_values(
            &g,
            vec![BigRational::from_integer(BigInt::from(3)); 12],
        )
        .unwrap();
        let h = stabilizer_subgroup(&[c], &g).unwrap();
        assert_eq!(h.members(), vec![1, 5, 7, 11]);
    }

    #[test]
    fn stabilizer_of_single_delta() {
        // beta_1 = d_3 over Z_4: l*3 = 3 mod 4 forces l = 1
        let z4 = FiniteAbelianGroup::new(vec![4]).unwrap();
        let b1 = GroupAlgebraElement::delta(&z4, &el(3)).unwrap();
        let h = stabilizer_subgroup(&[b1], &z4).unwrap();
        assert_eq!(h.members(), vec![1]);
    }

    #[test]
    fn orbits_of_the_worked_example() {
        let z7 = FiniteAbelianGroup::new(vec![7]).unwrap();
        let h = subgroup(7, &[2, 4]);
        let dec = orbit_decomposition(&z7, &h).unwrap();
        let as_residues: Vec<Vec<u64>> = dec
            .orbits()
            .iter()
            .map(|o| o.iter().map(|e| e.residues()[0]).collect())
            .collect();
        assert_eq!(as_residues, vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]);
        let reps: Vec<u64> = dec
            .representatives()
            .iter()
            .map(|e| e.residues()[0])
            .collect();
        assert_eq!(reps, vec![0, 1, 3]);
    }

    #[test]
    fn trivial_subgroup_gives_singletons() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let h = subgroup(6, &[]);
        let dec = orbit_decomposition(&g, &h).unwrap();
        assert_eq!(dec.orbit_count(), 6);
        assert!(dec.orbits().iter().all(|o| o.len() == 1));
    }

    #[test]
    fn orbits_over_z5() {
        let z5 = FiniteAbelianGroup::new(vec![5]).unwrap();
        let h = subgroup(5, &[4]);
        let dec = orbit_decomposition(&z5, &h).unwrap();
        let as_residues: Vec<Vec<u64>> = dec
            .orbits()
            .iter()
            .map(|o| o.iter().map(|e| e.residues()[0]).collect())
            .collect();
        assert_eq!(as_residues, vec![vec![0], vec![1, 4], vec![2, 3]]);
    }

    #[test]
    fn orbit_sizes_divide_subgroup_order_and_cover() {
        let g = FiniteAbelianGroup::new(vec![16]).unwrap();
        for gens in [vec![], vec![15], vec![3], vec![7, 9]] {
            let units = UnitSet::generated_by(16, &gens).unwrap();
            let h = StabilizerSubgroup { units };
            let dec = orbit_decomposition(&g, &h).unwrap();
            let total: usize = dec.orbits().iter().map(|o| o.len()).sum();
            assert_eq!(total, 16);
            for orbit in dec.orbits() {
                assert_eq!(h.len() % orbit.len(), 0, "orbit size divides |H|");
            }
        }
    }

    #[test]
    fn degree_bound_examples() {
        let z7 = FiniteAbelianGroup::new(vec![7]).unwrap();
        let h = subgroup(7, &[2, 4]);
        assert_eq!(degree_bounds(&z7, &h, 3, 3).unwrap(), (2, 432));
        // n = 1: lower = upper
        assert_eq!(degree_bounds(&z7, &h, 3, 1).unwrap(), (2, 2));
        // full unit group, n = 1
        let full = StabilizerSubgroup {
            units: UnitSet::full(7).unwrap(),
        };
        assert_eq!(degree_bounds(&z7, &full, 2, 1).unwrap(), (1, 1));
    }

    #[test]
    fn fixed_field_of_the_worked_example() {
        let z7 = FiniteAbelianGroup::new(vec![7]).unwrap();
        let h = subgroup(7, &[2, 4]);
        let ff = fixed_field(&z7, &h).unwrap();
        assert_eq!(ff.degree(), 2);
        // the classical period w7 + w7^2 + w7^4 appears as a generator
        let w = |k| CyclotomicNumber::root_power(7, k);
        let period = w(1).add(&w(2)).unwrap().add(&w(4)).unwrap();
        assert!(ff.period_generators().contains(&period));
        assert!(in_fixed_field(&period, &h).unwrap());
        assert!(!in_fixed_field(&w(1), &h).unwrap());
        // degree * |H| = phi(N)
        assert_eq!(ff.degree() * h.len() as u64, euler_phi(7));
    }

    #[test]
    fn fixed_field_of_full_group_is_rational() {
        let z7 = FiniteAbelianGroup::new(vec![7]).unwrap();
        let full = StabilizerSubgroup {
            units: UnitSet::full(7).unwrap(),
        };
        let ff = fixed_field(&z7, &full).unwrap();
        assert_eq!(ff.degree(), 1);
        assert!(ff.period_generators().iter().all(|g| g.is_rational()));
    }

    #[test]
    fn fixed_field_over_z5() {
        let z5 = FiniteAbelianGroup::new(vec![5]).unwrap();
        let h = subgroup(5, &[4]);
        let ff = fixed_field(&z5, &h).unwrap();
        assert_eq!(ff.degree(), 2);
        let w = |k| CyclotomicNumber::root_power(5, k);
        let period = w(1).add(&w(4)).unwrap();
        assert!(ff.period_generators().contains(&period));
    }

    #[test]
    fn rationals_are_in_every_fixed_field() {
        let h = subgroup(7, &[2, 4]);
        let half = CyclotomicNumber::from_rational(
            7,
            BigRational::new(BigInt::from(1), BigInt::from(2)),
        );
        assert!(in_fixed_field(&half, &h).unwrap());
        let wrong_conductor = CyclotomicNumber::one(5);
        assert!(in_fixed_field(&wrong_conductor, &h).is_err());
    }

    #[test]
    fn fixed_field_certificate_across_moduli() {
        // exercise the Inv(H) certificate on a composite modulus where
        // distinct exponent sets can have equal sums
        let g12 = FiniteAbelianGroup::new(vec![12]).unwrap();
        for gens in [vec![], vec![5], vec![7], vec![11], vec![5, 7]] {
            let units = UnitSet::generated_by(12, &gens).unwrap();
            let h = StabilizerSubgroup { units };
            let ff = fixed_field(&g12, &h).unwrap();
            assert_eq!(ff.degree() * h.len() as u64, euler_phi(12));
        }
    }
}
