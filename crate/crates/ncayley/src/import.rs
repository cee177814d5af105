//! Reduction of a Cayley digraph over a (possibly non-abelian) finite group
//! to an n-Cayley digraph over a designated abelian subgroup, via a left
//! transversal: `S_{i,j} = {g in G : s_j g s_i^{-1} in S}`. The reduction
//! is validated against the explicit digraph isomorphism in test builds.

use crate::error::{Error, Result};
use crate::ga_matrix::NCayleySpec;
use crate::group::{FiniteAbelianGroup, GroupElement};

/// A finite group given by its multiplication table. Identity and inverses
/// are derived from the table; identity/inverse laws are checked for every
/// element and associativity is spot-checked on seeded random triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    mult: Vec<usize>, // row-major: mult[a * order + b] = a * b
    identity: usize,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroupTable {
    pub fn from_table(rows: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::Precondition("empty multiplication table".into()));
        }
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::Precondition(
                "multiplication table must be square".into(),
            ));
        }
        let mut mult = Vec::with_capacity(order * order);
        for row in &rows {
            for &v in row {
                if v >= order {
                    return Err(Error::Precondition(format!(
                        "table entry {v} out of range for order {order}"
                    )));
                }
                mult.push(v);
            }
        }
        if let Some(ref l) = labels {
            if l.len() != order {
                return Err(Error::Precondition(
                    "label list length does not match group order".into(),
                ));
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| mult[e * order + a] == a && mult[a * order + e] == a))
            .ok_or_else(|| Error::Precondition("table has no identity element".into()))?;
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| mult[a * order + b] == identity && mult[b * order + a] == identity)
                .ok_or_else(|| {
                    Error::Precondition(format!("element {a} has no two-sided inverse"))
                })?;
            inverse[a] = inv;
        }
        let table = FiniteGroupTable {
            order,
            mult,
            identity,
            inverse,
            labels,
        };
        table.spot_check_associativity()?;
        Ok(table)
    }

    /// `Z_m x| Z_k` with twist t: `(a, x) * (b, y) = (a + t^x b mod m,
    /// x + y mod k)`. Element (a, x) has index `a + m x`. Requires
    /// `gcd(t, m) = 1` and `t^k = 1 mod m` so the twist is an action.
    pub fn semidirect_product(m: u64, k: u64, t: u64) -> Result<Self> {
        if m < 1 || k < 1 {
            return Err(Error::Precondition(
                "semidirect product needs m >= 1 and k >= 1".into(),
            ));
        }
        let t = t % m.max(1);
        if num_integer::gcd(t, m) != 1 {
            return Err(Error::Precondition(format!(
                "twist {t} is not a unit modulo {m}"
            )));
        }
        let mut tk = 1u64;
        for _ in 0..k {
            tk = tk * t % m;
        }
        if tk % m != 1 % m {
            return Err(Error::Precondition(format!(
                "twist {t} does not satisfy t^{k} = 1 mod {m}"
            )));
        }
        let order = (m * k) as usize;
        // powers of t
        let mut tpow = vec![1u64; k as usize];
        for x in 1..k as usize {
            tpow[x] = tpow[x - 1] * t % m;
        }
        let mut mult = vec![0usize; order * order];
        let mut labels = Vec::with_capacity(order);
        for x in 0..k {
            for a in 0..m {
                labels.push(format!("({a},{x})"));
            }
        }
        // labels above are in index order a + m x
        let mut by_index = vec![String::new(); order];
        for x in 0..k {
            for a in 0..m {
                by_index[(a + m * x) as usize] = format!("({a},{x})");
            }
        }
        for a in 0..m {
            for x in 0..k {
                let lhs = (a + m * x) as usize;
                for b in 0..m {
                    for y in 0..k {
                        let rhs = (b + m * y) as usize;
                        let a2 = (a + tpow[x as usize] * b) % m;
                        let x2 = (x + y) % k;
                        mult[lhs * order + rhs] = (a2 + m * x2) as usize;
                    }
                }
            }
        }
        FiniteGroupTable::from_table(
            (0..order)
                .map(|i| mult[i * order..(i + 1) * order].to_vec())
                .collect(),
            Some(by_index),
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    fn spot_check_associativity(&self) -> Result<()> {
        // deterministic splitmix64 stream
        let mut state = 0x1234_5678_9abc_def0u64;
        let mut next = move || {
            state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            z ^ (z >> 31)
        };
        let n = self.order as u64;
        let samples = if n * n * n <= 4096 { n * n * n } else { 512 };
        for i in 0..samples {
            let (a, b, c) = if n * n * n <= 4096 {
                let a = (i / (n * n)) as usize;
                let b = (i / n % n) as usize;
                let c = (i % n) as usize;
                (a, b, c)
            } else {
                (
                    (next() % n) as usize,
                    (next() % n) as usize,
                    (next() % n) as usize,
                )
            };
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::Precondition(format!(
                    "multiplication table is not associative at ({a}, {b}, {c})"
                )));
            }
        }
        Ok(())
    }
}

/// An abelian model group together with its injection into the big group
/// (canonical model index -> table index). Validated to be an injective
/// homomorphism onto a subgroup.
#[derive(Clone, Debug)]
pub struct SubgroupEmbedding {
    abelian_model: FiniteAbelianGroup,
    injection: Vec<usize>,
}

impl SubgroupEmbedding {
    pub fn new(
        abelian_model: FiniteAbelianGroup,
        injection: Vec<usize>,
        table: &FiniteGroupTable,
    ) -> Result<Self> {
        let n_model = abelian_model.order() as usize;
        if injection.len() != n_model {
            return Err(Error::Precondition(format!(
                "injection has {} entries, abelian model has order {n_model}",
                injection.len()
            )));
        }
        if injection.iter().any(|&x| x >= table.order()) {
            return Err(Error::Precondition(
                "injection maps outside the group table".into(),
            ));
        }
        let mut seen = vec![false; table.order()];
        for &x in &injection {
            if seen[x] {
                return Err(Error::Precondition(
                    "injection is not injective".into(),
                ));
            }
            seen[x] = true;
        }
        if !table.order().is_multiple_of(n_model) {
            return Err(Error::Precondition(format!(
                "subgroup order {n_model} does not divide group order {}",
                table.order()
            )));
        }
        // homomorphism on all pairs; identity-to-identity follows
        for a_idx in 0..n_model {
            for b_idx in 0..n_model {
                let a = abelian_model.element_at(a_idx);
                let b = abelian_model.element_at(b_idx);
                let sum = abelian_model.add(&a, &b)?;
                let lhs = injection[abelian_model.index_of(&sum)];
                let rhs = table.mul(injection[a_idx], injection[b_idx]);
                if lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "injection is not a homomorphism at model indices ({a_idx}, {b_idx})"
                    )));
                }
            }
        }
        Ok(SubgroupEmbedding {
            abelian_model,
            injection,
        })
    }

    pub fn abelian_model(&self) -> &FiniteAbelianGroup {
        &self.abelian_model
    }

    pub fn injection(&self) -> &[usize] {
        &self.injection
    }

    /// The index n = |G0| / |G| of the subgroup.
    pub fn subgroup_index(&self, table: &FiniteGroupTable) -> usize {
        table.order() / self.abelian_model.order() as usize
    }
}

/// Decompose every element of the big group as `s_i * g`; `None` if the
/// claimed transversal does not produce each element exactly once.
fn coset_decomposition(
    table: &FiniteGroupTable,
    emb: &SubgroupEmbedding,
    transversal: &[usize],
) -> Option<Vec<(usize, usize)>> {
    // value: (model element index, transversal position)
    let mut decomp = vec![None; table.order()];
    for (i, &s) in transversal.iter().enumerate() {
        if s >= table.order() {
            return None;
        }
        for g_idx in 0..emb.abelian_model.order() as usize {
            let x = table.mul(s, emb.injection[g_idx]);
            if decomp[x].is_some() {
                return None;
            }
            decomp[x] = Some((g_idx, i));
        }
    }
    decomp.into_iter().collect()
}

/// True iff the n products `s_i * g` are pairwise distinct and cover the
/// whole group; the transversal list must have length n.
pub fn verify_transversal(
    table: &FiniteGroupTable,
    emb: &SubgroupEmbedding,
    transversal: &[usize],
) -> Result<bool> {
    let n = emb.subgroup_index(table);
    if transversal.len() != n {
        return Err(Error::Precondition(format!(
            "transversal must list {n} coset representatives, got {}",
            transversal.len()
        )));
    }
    Ok(coset_decomposition(table, emb, transversal).is_some())
}

/// The coset-transversal reduction: `S_{i,j} = {g in G : s_j g s_i^{-1} in
/// S}`. Requires a verified transversal and a connection set without the
/// identity.
pub fn reduce_to_ncayley(
    table: &FiniteGroupTable,
    emb: &SubgroupEmbedding,
    transversal: &[usize],
    connection_set: &[usize],
) -> Result<NCayleySpec> {
    if connection_set.contains(&table.identity()) {
        return Err(Error::Precondition(
            "connection set contains the identity; Cayley digraphs exclude it".into(),
        ));
    }
    if connection_set.iter().any(|&s| s >= table.order()) {
        return Err(Error::Precondition(
            "connection set contains an out-of-range element".into(),
        ));
    }
    if !verify_transversal(table, emb, transversal)? {
        return Err(Error::Precondition(
            "the provided list is not a left transversal of the subgroup".into(),
        ));
    }
    let n = emb.subgroup_index(table);
    let model = emb.abelian_model();
    let in_s = {
        let mut mask = vec![false; table.order()];
        for &s in connection_set {
            mask[s] = true;
        }
        mask
    };
    let mut sets: Vec<Vec<GroupElement>> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut set = Vec::new();
            for g_idx in 0..model.order() as usize {
                let g = emb.injection[g_idx];
                let prod = table.mul(table.mul(transversal[j], g), table.inv(transversal[i]));
                if in_s[prod] {
                    set.push(model.element_at(g_idx));
                }
            }
            sets.push(set);
        }
    }
    let spec = NCayleySpec::new(model.clone(), n, sets)?;
    debug_assert!(
        import_isomorphism_check(table, emb, transversal, connection_set, &spec)
            .unwrap_or(false),
        "reduced spec is not isomorphic to the source Cayley digraph"
    );
    Ok(spec)
}

/// The explicit isomorphism check of the reduction: the adjacency matrix of
/// the source Cayley digraph equals the adjacency matrix the oracle builds
/// from the reduced spec, under the bijection `s_i g <-> (g, i)`.
pub fn import_isomorphism_check(
    table: &FiniteGroupTable,
    emb: &SubgroupEmbedding,
    transversal: &[usize],
    connection_set: &[usize],
    spec: &NCayleySpec,
) -> Result<bool> {
    let decomp = coset_decomposition(table, emb, transversal).ok_or_else(|| {
        Error::Precondition("the provided list is not a left transversal".into())
    })?;
    let in_s = {
        let mut mask = vec![false; table.order()];
        for &s in connection_set {
            mask[s] = true;
        }
        mask
    };
    let reduced = crate::oracle::build_adjacency(spec);
    let n = spec.n();
    for u in 0..table.order() {
        let (gu, iu) = decomp[u];
        for v in 0..table.order() {
            let (gv, iv) = decomp[v];
            // arc u -> v in Cay(G0, S) iff v * u^{-1} in S
            let direct = u64::from(in_s[table.mul(v, table.inv(u))]);
            let mapped = reduced.at(gu * n + iu, gv * n + iv);
            if direct != mapped {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
