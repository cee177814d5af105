//! Independent brute-force ground truth: the explicit digraph on G x [n],
//! its exact integer characteristic polynomial, and the cross-validation of
//! the character-product pipeline against it.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ga_matrix::NCayleySpec;
use crate::poly::{IntPolynomial, RatPolynomial};
use crate::ring::SquareMat;
use crate::spectra::full_char_poly;

/// Dense nonnegative integer adjacency matrix of a digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    size: usize,
    entries: Vec<u64>, // row-major, entries[u * size + v] = #arcs u -> v
}

impl AdjacencyMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn at(&self, u: usize, v: usize) -> u64 {
        self.entries[u * self.size + v]
    }

    pub fn row_sum(&self, u: usize) -> u64 {
        self.entries[u * self.size..(u + 1) * self.size]
            .iter()
            .sum()
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::Precondition("adjacency matrix must be square".into()));
        }
        Ok(AdjacencyMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }
}

/// The digraph on `G x [n]` with an arc `(g, i) -> (s + g, j)` for every
/// `s in S_{i,j}`. Vertex order is (canonical element index, block index).
pub fn build_adjacency(spec: &NCayleySpec) -> AdjacencyMatrix {
    let group = spec.group();
    let n = spec.n();
    let order = group.order() as usize;
    let size = n * order;
    let mut entries = vec![0u64; size * size];
    for i in 0..n {
        for j in 0..n {
            for &s_idx in spec.connection_indices(i, j) {
                let s = group.element_at(s_idx);
                for g_idx in 0..order {
                    let g = group.element_at(g_idx);
                    let target = group.add(&s, &g).expect("spec elements are in the group");
                    let u = g_idx * n + i;
                    let v = group.index_of(&target) * n + j;
                    entries[u * size + v] += 1;
                }
            }
        }
    }
    AdjacencyMatrix { size, entries }
}

/// Exact integer characteristic polynomial via rational Hessenberg
/// reduction (similarity transforms, O(size^3) rational operations).
pub fn char_poly_int(a: &AdjacencyMatrix) -> Result<IntPolynomial> {
    let n = a.size;
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(a.at(i, j).into()))
                .collect()
        })
        .collect();
    hessenberg_in_place(&mut m);
    let p = hessenberg_char_poly(&m);
    p.to_integer().ok_or_else(|| {
        Error::Internal("characteristic polynomial of an integer matrix came out non-integer".into())
    })
}

/// Secondary route for cross-checks: Faddeev-LeVerrier over Q.
pub fn char_poly_faddeev_leverrier(a: &AdjacencyMatrix) -> Result<IntPolynomial> {
    let n = a.size;
    let entries: Vec<BigRational> = a
        .entries
        .iter()
        .map(|&e| BigRational::from_integer(e.into()))
        .collect();
    let mat = SquareMat::from_entries(n, entries);
    let betas = mat.betas();
    // P(x) = sum_k (-1)^k beta_k x^{n-k}
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (k, beta) in betas.iter().enumerate() {
        let signed = if k % 2 == 0 { beta.clone() } else { -beta };
        coeffs[n - k] = signed;
    }
    RatPolynomial::new(coeffs).to_integer().ok_or_else(|| {
        Error::Internal("Faddeev-LeVerrier produced non-integer coefficients".into())
    })
}

/// Reduce to upper Hessenberg form by elementary similarity transforms.
#[allow(clippy::needless_range_loop)]
fn hessenberg_in_place(m: &mut [Vec<BigRational>]) {
    let n = m.len();
    if n < 3 {
        return;
    }
    for col in 0..n - 2 {
        // pivot search below the subdiagonal
        let pivot = (col + 1..n).find(|&r| !m[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        if pivot != col + 1 {
            m.swap(pivot, col + 1);
            for row in m.iter_mut() {
                row.swap(pivot, col + 1);
            }
        }
        let pivot_val = m[col + 1][col].clone();
        for r in col + 2..n {
            if m[r][col].is_zero() {
                continue;
            }
            let t = &m[r][col] / &pivot_val;
            // row_r -= t * row_{col+1}
            for c in 0..n {
                let delta = &t * &m[col + 1][c];
                m[r][c] -= delta;
            }
            // col_{col+1} += t * col_r
            for row in m.iter_mut() {
                let delta = &t * &row[r];
                row[col + 1] += delta;
            }
        }
    }
}

/// Characteristic polynomial of an upper Hessenberg matrix through the
/// leading-principal-minor recurrence.
fn hessenberg_char_poly(h: &[Vec<BigRational>]) -> RatPolynomial {
    let n = h.len();
    let x = RatPolynomial::new(vec![BigRational::zero(), BigRational::one()]);
    let mut ps: Vec<RatPolynomial> = Vec::with_capacity(n + 1);
    ps.push(RatPolynomial::new(vec![BigRational::one()]));
    for m in 1..=n {
        // p_m = (x - h[m-1][m-1]) p_{m-1}
        //       - sum_{i=1}^{m-1} h[i-1][m-1] (prod_{j=i}^{m-1} h[j][j-1]) p_{i-1}
        let head = x
            .sub(&RatPolynomial::new(vec![h[m - 1][m - 1].clone()]))
            .mul(&ps[m - 1]);
        let mut acc = head;
        let mut subdiag_prod = BigRational::one();
        for i in (1..m).rev() {
            subdiag_prod *= &h[i][i - 1];
            if subdiag_prod.is_zero() {
                break;
            }
            let factor = &h[i - 1][m - 1] * &subdiag_prod;
            if !factor.is_zero() {
                acc = acc.sub(&ps[i - 1].scale(&factor));
            }
        }
        ps.push(acc);
    }
    ps.pop().unwrap()
}

/// Master soundness check: the brute-force characteristic polynomial of the
/// explicit digraph equals the character-by-character product.
pub fn equivalence_check(spec: &NCayleySpec) -> Result<bool> {
    let direct = char_poly_int(&build_adjacency(spec))?;
    let product = full_char_poly(spec)?;
    Ok(direct == product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ga_matrix::example_spec_z7;
    use crate::group::{FiniteAbelianGroup, GroupElement};

    fn el(r: u64) -> GroupElement {
        GroupElement::new(vec![r])
    }

    fn circulant(n: u64, set: &[u64]) -> NCayleySpec {
        let g = FiniteAbelianGroup::new(vec![n]).unwrap();
        NCayleySpec::new(g, 1, vec![set.iter().map(|&r| el(r)).collect()]).unwrap()
    }

    #[test]
    fn directed_triangle() {
        let spec = circulant(3, &[1]);
        let a = build_adjacency(&spec);
        assert_eq!(a.size(), 3);
        // cyclic permutation matrix: x^3 - 1
        assert_eq!(
            char_poly_int(&a).unwrap(),
            IntPolynomial::from_i64(&[-1, 0, 0, 1])
        );
    }

    #[test]
    fn zero_matrix() {
        let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let spec = NCayleySpec::new(g, 1, vec![vec![]]).unwrap();
        let a = build_adjacency(&spec);
        assert!(a.entries.iter().all(|&e| e == 0));
        assert_eq!(
            char_poly_int(&a).unwrap(),
            IntPolynomial::from_i64(&[0, 0, 0, 0, 1])
        );
    }

    #[test]
    fn four_cycle() {
        let spec = circulant(4, &[1, 3]);
        let a = build_adjacency(&spec);
        assert_eq!(
            char_poly_int(&a).unwrap(),
            IntPolynomial::from_i64(&[0, 0, -4, 0, 1])
        );
    }

    #[test]
    fn worked_example_adjacency_shape() {
        let spec = example_spec_z7();
        let a = build_adjacency(&spec);
        assert_eq!(a.size(), 21);
        for u in 0..21 {
            assert_eq!(a.row_sum(u), 6, "every vertex has out-degree |S| = 6");
        }
    }

    #[test]
    fn equivalence_check_examples() {
        assert!(equivalence_check(&circulant(4, &[1])).unwrap());
        assert!(equivalence_check(&example_spec_z7()).unwrap());
    }

    #[test]
    fn hessenberg_agrees_with_faddeev_leverrier() {
        // dual-route cross-check on assorted adjacency matrices
        let specs = [
            circulant(5, &[1, 4]),
            circulant(6, &[1, 2, 3]),
            example_spec_z7(),
        ];
        for spec in &specs {
            let a = build_adjacency(spec);
            assert_eq!(
                char_poly_int(&a).unwrap(),
                char_poly_faddeev_leverrier(&a).unwrap()
            );
        }
    }

    #[test]
    fn loops_show_up_in_the_trace() {
        // 0 in S_{i,i} is allowed; coefficient of x^{nN-1} is -(loop count)
        let g = FiniteAbelianGroup::new(vec![3]).unwrap();
        let spec = NCayleySpec::new(
            g,
            2,
            vec![
                vec![el(0), el(1)], // S11 contains the identity: 3 loops
                vec![el(2)],
                vec![],
                vec![el(1), el(2)], // no identity here
            ],
        )
        .unwrap();
        let a = build_adjacency(&spec);
        let p = char_poly_int(&a).unwrap();
        let trace_coeff = p.coeff(a.size() - 1);
        assert_eq!(trace_coeff, (-3).into());
    }

    #[test]
    fn dense_random_matrix_char_poly_cross_check() {
        // not an n-Cayley matrix: exercises pivoting in the Hessenberg path
        let rows = vec![
            vec![0, 0, 5, 1],
            vec![2, 0, 0, 0],
            vec![0, 3, 1, 4],
            vec![7, 0, 2, 0],
        ];
        let a = AdjacencyMatrix::from_rows(rows).unwrap();
        assert_eq!(
            char_poly_int(&a).unwrap(),
            char_poly_faddeev_leverrier(&a).unwrap()
        );
    }
}
