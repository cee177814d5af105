//! Matrices over the group algebra: the structure matrix of an n-Cayley
//! digraph, its principal-minor sums, determinants under convolution, and
//! the entrywise character transform.

use std::collections::BTreeSet;

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::group_algebra::GroupAlgebraElement;
use crate::ring::SquareMat;

/// Default cap on the permutation-expansion determinant (n! terms).
pub const DEFAULT_FACTORIAL_CAP: usize = 6;

/// An n-Cayley digraph over a finite abelian group: the group plus n^2
/// connection sets `S_{i,j}` (stored as canonical element indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCayleySpec {
    group: FiniteAbelianGroup,
    n: usize,
    sets: Vec<BTreeSet<usize>>, // row-major (i, j), 0-based
}

impl NCayleySpec {
    pub fn new(
        group: FiniteAbelianGroup,
        n: usize,
        connection_sets: Vec<Vec<GroupElement>>,
    ) -> Result<Self> {
        if n < 1 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        if connection_sets.len() != n * n {
            return Err(Error::Precondition(format!(
                "expected {} connection sets, got {}",
                n * n,
                connection_sets.len()
            )));
        }
        let mut sets = Vec::with_capacity(n * n);
        for set in &connection_sets {
            let mut s = BTreeSet::new();
            for g in set {
                group.check_element(g)?;
                s.insert(group.index_of(g));
            }
            sets.push(s);
        }
        Ok(NCayleySpec { group, n, sets })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The connection set `S_{i,j}` (0-based i, j) in canonical order.
    pub fn connection_set(&self, i: usize, j: usize) -> Vec<GroupElement> {
        self.sets[i * self.n + j]
            .iter()
            .map(|&idx| self.group.element_at(idx))
            .collect()
    }

    pub(crate) fn connection_indices(&self, i: usize, j: usize) -> &BTreeSet<usize> {
        &self.sets[i * self.n + j]
    }

    /// Total arc-type count `sum |S_{i,j}|`.
    pub fn total_set_size(&self) -> usize {
        self.sets.iter().map(|s| s.len()).sum()
    }
}

/// An n x n matrix over Q[G].
#[derive(Clone, Debug, PartialEq)]
pub struct GAMatrix {
    inner: SquareMat<GroupAlgebraElement>,
}

impl GAMatrix {
    pub fn from_entries(n: usize, entries: Vec<GroupAlgebraElement>) -> Result<Self> {
        if entries.len() != n * n || n < 1 {
            return Err(Error::Precondition(format!(
                "matrix of order {n} needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        let group = entries[0].group().clone();
        if entries.iter().any(|e| *e.group() != group) {
            return Err(Error::GroupMismatch);
        }
        Ok(GAMatrix {
            inner: SquareMat::from_entries(n, entries),
        })
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.inner.entries()[0].group()
    }

    pub fn at(&self, i: usize, j: usize) -> &GroupAlgebraElement {
        self.inner.at(i, j)
    }

    /// The structure matrix `Delta = [delta_{-S_{j,i}}]` of a spec; note the
    /// transpose and the negation of the sets.
    pub fn delta_matrix(spec: &NCayleySpec) -> Self {
        let group = spec.group();
        let n = spec.n();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let negated: Vec<GroupElement> = spec
                    .connection_indices(j, i)
                    .iter()
                    .map(|&idx| {
                        group
                            .neg(&group.element_at(idx))
                            .expect("indices come from the same group")
                    })
                    .collect();
                entries.push(
                    GroupAlgebraElement::indicator(group, &negated)
                        .expect("negated elements stay in the group"),
                );
            }
        }
        GAMatrix {
            inner: SquareMat::from_entries(n, entries),
        }
    }

    /// `[beta_0 .. beta_n]` over Q[G] by Faddeev-LeVerrier.
    pub fn beta_all(&self) -> Vec<GroupAlgebraElement> {
        self.inner.betas()
    }

    /// Determinant by the signed permutation expansion with convolution
    /// products, capped at [`DEFAULT_FACTORIAL_CAP`].
    pub fn det_convolution(&self) -> Result<GroupAlgebraElement> {
        self.det_convolution_with_cap(DEFAULT_FACTORIAL_CAP)
    }

    pub fn det_convolution_with_cap(&self, cap: usize) -> Result<GroupAlgebraElement> {
        if self.n() > cap {
            return Err(Error::FactorialCapExceeded { n: self.n(), cap });
        }
        Ok(self.inner.det_permutation())
    }

    pub fn submatrix(&self, rows: &[usize]) -> Self {
        GAMatrix {
            inner: self.inner.submatrix(rows),
        }
    }

    /// The entrywise Fourier transform at the character `chi_v`.
    pub fn transform(&self, v: &GroupElement) -> Result<CycloMatrix> {
        let n = self.n();
        let mut entries = Vec::with_capacity(n * n);
        for e in self.inner.entries() {
            entries.push(e.fourier_coefficient(v)?);
        }
        Ok(CycloMatrix {
            conductor: self.group().order(),
            inner: SquareMat::from_entries(n, entries),
        })
    }
}

/// An n x n matrix over Q(w_N) (the transformed structure matrix).
#[derive(Clone, Debug, PartialEq)]
pub struct CycloMatrix {
    conductor: u64,
    inner: SquareMat<CyclotomicNumber>,
}

impl CycloMatrix {
    pub fn from_entries(n: usize, entries: Vec<CyclotomicNumber>) -> Result<Self> {
        if entries.len() != n * n || n < 1 {
            return Err(Error::Precondition(format!(
                "matrix of order {n} needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        let conductor = entries[0].conductor();
        if let Some(bad) = entries.iter().find(|e| e.conductor() != conductor) {
            return Err(Error::ConductorMismatch {
                left: conductor,
                right: bad.conductor(),
            });
        }
        Ok(CycloMatrix {
            conductor,
            inner: SquareMat::from_entries(n, entries),
        })
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn at(&self, i: usize, j: usize) -> &CyclotomicNumber {
        self.inner.at(i, j)
    }

    pub fn entries(&self) -> &[CyclotomicNumber] {
        self.inner.entries()
    }

    pub fn betas(&self) -> Vec<CyclotomicNumber> {
        self.inner.betas()
    }

    pub fn det(&self) -> CyclotomicNumber {
        self.inner.det_permutation()
    }

    pub fn submatrix(&self, rows: &[usize]) -> Self {
        CycloMatrix {
            conductor: self.conductor,
            inner: self.inner.submatrix(rows),
        }
    }
}

/// The nine connection sets of the worked 21-vertex example, as an
/// `NCayleySpec` over Z_7 with n = 3. Used by tests in several modules.
#[cfg(test)]
pub(crate) fn example_spec_z7() -> NCayleySpec {
    let z7 = FiniteAbelianGroup::new(vec![7]).unwrap();
    let el = |r: u64| GroupElement::new(vec![r]);
    let set = |v: &[u64]| v.iter().map(|&r| el(r)).collect::<Vec<_>>();
    // S_{i,j} row-major, 1-based rows/cols as displayed below:
    //   S11={3,6} S12={4,6} S13={1,4}
    //   S21={2,4} S22={3,5} S23={2,3}
    //   S31={1,5} S32={1,2} S33={5,6}
    NCayleySpec::new(
        z7,
        3,
        vec![
            set(&[3, 6]),
            set(&[4, 6]),
            set(&[1, 4]),
            set(&[2, 4]),
            set(&[3, 5]),
            set(&[2, 3]),
            set(&[1, 5]),
            set(&[1, 2]),
            set(&[5, 6]),
        ],
    )
    .unwrap()
}
