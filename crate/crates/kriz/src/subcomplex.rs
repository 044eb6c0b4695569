//! Acyclic subcomplexes and the reduced quotient.
//!
//! The right edge of the trapezoid is isomorphic as a chain complex to the
//! one-relation exterior algebra on the generators with the degree `-1`
//! boundary sending every generator to `1`; left-multiplication by the
//! first generator is a contracting homotopy. Shifted copies of the edge,
//! indexed by a vertex subset `A` and a sequence of non-top marks on the
//! complement, fill a large acyclic summand whose quotient computes the
//! same cohomology on a much smaller space.

use std::collections::{BTreeMap, BTreeSet};

use num::Zero;

use crate::error::KrizError;
use crate::exterior::{
    bigraded_dims, enumerate_basis, rewrite_gword, CanonicalMonomial, Strategy,
};
use crate::homology::{differential_matrix_between, BigradedTable};
use crate::linalg::SparseRationalMatrix;
use crate::qnum::{q_one, sign_pow, Q};
use crate::ring::GradedRing;

// ---------------------------------------------------------------------
// the one-relation exterior algebra on the generators

/// Basis of degree `q`: monotonic forests with `q` edges.
pub fn arnold_basis(n: usize, q: usize) -> Vec<Vec<(usize, usize)>> {
    let mut basis = crate::exterior::monotonic_forests(n, q);
    basis.sort_by_key(|a| forest_key(a));
    basis
}

fn forest_key(edges: &[(usize, usize)]) -> (Vec<usize>, Vec<usize>) {
    (
        edges.iter().map(|&(_, j)| j).collect(),
        edges.iter().map(|&(i, _)| i).collect(),
    )
}

type ForestElement = BTreeMap<Vec<(usize, usize)>, Q>;

fn add_forest_term(el: &mut ForestElement, word: Vec<(usize, usize)>, c: Q) {
    if c.is_zero() {
        return;
    }
    match el.entry(word) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

/// Boundary of a basis word: alternating sum over deleted factors.
pub fn arnold_boundary(word: &[(usize, usize)]) -> ForestElement {
    let mut out = ForestElement::new();
    for a in 0..word.len() {
        let rest: Vec<(usize, usize)> = word
            .iter()
            .enumerate()
            .filter(|&(b, _)| b != a)
            .map(|(_, &e)| e)
            .collect();
        add_forest_term(&mut out, rest, sign_pow(a));
    }
    out
}

/// Matrix of the boundary from degree `q` to degree `q - 1`.
pub fn arnold_boundary_matrix(n: usize, q: usize) -> SparseRationalMatrix {
    let source = arnold_basis(n, q);
    if q == 0 {
        return SparseRationalMatrix::zero(0, source.len());
    }
    let target = arnold_basis(n, q - 1);
    let index: BTreeMap<&Vec<(usize, usize)>, usize> =
        target.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut matrix = SparseRationalMatrix::zero(target.len(), source.len());
    for (col, word) in source.iter().enumerate() {
        for (w, c) in arnold_boundary(word) {
            matrix.add(index[&w], col, c);
        }
    }
    matrix
}

/// Left multiplication by the first generator, expanded to canonical form.
pub fn arnold_homotopy(word: &[(usize, usize)]) -> ForestElement {
    let mut extended = vec![(1, 2)];
    extended.extend_from_slice(word);
    let mut out = ForestElement::new();
    for (sign, w) in rewrite_gword(extended, Strategy::Leftmost) {
        add_forest_term(&mut out, w, sign);
    }
    out
}

/// Check `boundary . homotopy + homotopy . boundary = identity` on every
/// basis word of every degree.
pub fn arnold_homotopy_check(n: usize) -> bool {
    for q in 0..n {
        for word in arnold_basis(n, q) {
            let mut total = ForestElement::new();
            for (w, c) in arnold_homotopy(&word) {
                for (w2, c2) in arnold_boundary(&w) {
                    add_forest_term(&mut total, w2, c.clone() * c2);
                }
            }
            for (w, c) in arnold_boundary(&word) {
                for (w2, c2) in arnold_homotopy(&w) {
                    add_forest_term(&mut total, w2, c.clone() * c2);
                }
            }
            let mut expected = ForestElement::new();
            add_forest_term(&mut expected, word.clone(), q_one());
            if total != expected {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------
// the right edge and its shifted copies

/// A shifted copy of the right edge: a support set `A` with at least two
/// vertices and non-top marks on the complementary positions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TopCell {
    a_set: Vec<usize>,
    beta: Vec<usize>,
}

impl TopCell {
    pub fn new(ring: &GradedRing, n: usize, a_set: Vec<usize>, beta: Vec<usize>) -> Result<Self, KrizError> {
        let mut sorted = a_set;
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() < 2 {
            return Err(KrizError::IndexError(
                "support set needs at least two vertices".into(),
            ));
        }
        if sorted.iter().any(|&v| v == 0 || v > n) {
            return Err(KrizError::IndexError("support vertex out of range".into()));
        }
        if beta.len() != n - sorted.len() {
            return Err(KrizError::SizeMismatch(format!(
                "{} complement marks for |A| = {} and n = {n}",
                beta.len(),
                sorted.len()
            )));
        }
        if beta
            .iter()
            .any(|&h| h >= ring.dim() || h == ring.fundamental_index())
        {
            return Err(KrizError::IndexError(
                "complement marks must differ from the fundamental class".into(),
            ));
        }
        Ok(TopCell {
            a_set: sorted,
            beta,
        })
    }

    pub fn support(&self) -> &[usize] {
        &self.a_set
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    /// Total degree of the slice in exterior degree `q`:
    /// `2m|A| - q + |beta|`.
    pub fn degree(&self, ring: &GradedRing, q: usize) -> usize {
        let beta_deg: usize = self.beta.iter().map(|&h| ring.degree(h)).sum();
        ring.top_degree() * self.a_set.len() - q + beta_deg
    }
}

/// Spanning monomials of one slice in exterior degree `q`: forests inside
/// `A`, the top class on the unused support vertices, the fixed marks
/// elsewhere.
pub fn top_cell_basis(
    ring: &GradedRing,
    n: usize,
    cell: &TopCell,
    q: usize,
) -> Vec<CanonicalMonomial> {
    let a = cell.a_set.len();
    if q >= a {
        return Vec::new();
    }
    let complement: Vec<usize> = (1..=n).filter(|v| !cell.a_set.contains(v)).collect();
    let w = ring.fundamental_index();
    let mut out = Vec::new();
    for local in crate::exterior::monotonic_forests(a, q) {
        let edges: Vec<(usize, usize)> = local
            .iter()
            .map(|&(i, j)| (cell.a_set[i - 1], cell.a_set[j - 1]))
            .collect();
        let mut marks = vec![0usize; n];
        let j_set: BTreeSet<usize> = edges.iter().map(|&(_, j)| j).collect();
        for &v in &cell.a_set {
            if !j_set.contains(&v) {
                marks[v - 1] = w;
            }
        }
        for (&v, &h) in complement.iter().zip(&cell.beta) {
            marks[v - 1] = h;
        }
        out.push(CanonicalMonomial::new(n, edges, marks).expect("slice monomial is canonical"));
    }
    out.sort();
    out
}

/// The unique slice containing a canonical monomial, if any: the support
/// is the top-marked vertices together with all second indices; membership
/// needs every edge inside the support and at least two support vertices.
pub fn classify(ring: &GradedRing, mono: &CanonicalMonomial) -> Option<(Vec<usize>, Vec<usize>)> {
    let w = ring.fundamental_index();
    let mut a_set: BTreeSet<usize> = (1..=mono.n())
        .filter(|&v| mono.mark_at(v) == w)
        .collect();
    for &(_, j) in mono.edges() {
        a_set.insert(j);
    }
    if a_set.len() < 2 {
        return None;
    }
    for &(i, _) in mono.edges() {
        if !a_set.contains(&i) {
            return None;
        }
    }
    let beta: Vec<usize> = (1..=mono.n())
        .filter(|v| !a_set.contains(v))
        .map(|v| mono.mark_at(v))
        .collect();
    Some((a_set.into_iter().collect(), beta))
}

/// Members of the acyclic summand inside the `(q, k)` cell, in basis order.
pub fn w_members(ring: &GradedRing, n: usize, q: usize, k: usize) -> Vec<CanonicalMonomial> {
    enumerate_basis(ring, n, q, k)
        .into_iter()
        .filter(|m| classify(ring, m).is_some())
        .collect()
}

/// All valid `(A, beta)` pairs for `n` points.
pub fn all_top_cells(ring: &GradedRing, n: usize) -> Vec<TopCell> {
    let non_top: Vec<usize> = (0..ring.dim())
        .filter(|&h| h != ring.fundamental_index())
        .collect();
    let mut out = Vec::new();
    for bits in 0u32..(1 << n) {
        let a_set: Vec<usize> = (1..=n).filter(|&v| bits & (1 << (v - 1)) != 0).collect();
        if a_set.len() < 2 {
            continue;
        }
        let b = n - a_set.len();
        let mut betas: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..b {
            let mut next = Vec::new();
            for beta in &betas {
                for &h in &non_top {
                    let mut beta2 = beta.clone();
                    beta2.push(h);
                    next.push(beta2);
                }
            }
            betas = next;
        }
        for beta in betas {
            out.push(TopCell::new(ring, n, a_set.clone(), beta).expect("valid cell"));
        }
    }
    out.sort();
    out
}

/// Verify that the slices are pairwise disjoint, that their union is the
/// classifier-defined member set, and that the classifier returns each
/// slice's own data on its monomials.
pub fn verify_classifier(ring: &GradedRing, n: usize) -> Result<(), KrizError> {
    let mut seen: BTreeMap<CanonicalMonomial, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for cell in all_top_cells(ring, n) {
        for q in 0..cell.support().len() {
            for mono in top_cell_basis(ring, n, &cell, q) {
                let data = (cell.support().to_vec(), cell.beta().to_vec());
                if let Some(previous) = seen.insert(mono.clone(), data.clone()) {
                    return Err(KrizError::ClassifierCollision(format!(
                        "monomial shared by supports {:?} and {:?}",
                        previous.0,
                        cell.support()
                    )));
                }
                if classify(ring, &mono) != Some(data) {
                    return Err(KrizError::ClassifierCollision(
                        "classifier disagrees with the slice of origin".into(),
                    ));
                }
            }
        }
    }
    // union equals the classifier-defined set, cell by cell
    let dims = bigraded_dims(ring, n);
    let mut member_count = 0usize;
    for ((q, k), _) in dims.cells() {
        member_count += w_members(ring, n, q, k).len();
    }
    if member_count != seen.len() {
        return Err(KrizError::ClassifierCollision(format!(
            "classifier finds {member_count} members, slices span {}",
            seen.len()
        )));
    }
    Ok(())
}

/// Homology dimensions of the subcomplex spanned by `basis_of(q, k)`;
/// errors if the span is not closed under the differential.
fn subcomplex_betti(
    ring: &GradedRing,
    n: usize,
    basis_of: impl Fn(usize, usize) -> Vec<CanonicalMonomial>,
) -> Result<BigradedTable, KrizError> {
    let dims = bigraded_dims(ring, n);
    let mut ranks: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut sizes: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for ((q, k), _) in dims.cells() {
        let source = basis_of(q, k);
        sizes.insert((q, k), source.len());
        if source.is_empty() || q == 0 {
            continue;
        }
        let target = basis_of(q - 1, k + 1);
        let matrix = differential_matrix_between(ring, &source, &target)?;
        ranks.insert((q, k), matrix.rank());
    }
    let rank_at = |q: usize, k: usize| ranks.get(&(q, k)).copied().unwrap_or(0);
    let mut out = BigradedTable::new(ring.name().to_string(), n);
    for (&(q, k), &dim) in &sizes {
        if dim == 0 {
            continue;
        }
        out.set(q, k, dim - rank_at(q, k) - rank_at(q + 1, k.wrapping_sub(1)));
    }
    Ok(out)
}

/// Betti table of the acyclic summand; all zero when the theory holds.
pub fn w_complex_betti(ring: &GradedRing, n: usize) -> Result<BigradedTable, KrizError> {
    subcomplex_betti(ring, n, |q, k| w_members(ring, n, q, k))
}

/// Betti table of the right edge of the trapezoid.
pub fn top_complex_betti(ring: &GradedRing, n: usize) -> Result<BigradedTable, KrizError> {
    let top_k = |q: usize| 2 * ring.m() * n - q;
    subcomplex_betti(ring, n, |q, k| {
        if k == top_k(q) {
            enumerate_basis(ring, n, q, k)
        } else {
            Vec::new()
        }
    })
}

/// Betti table of one `(A, beta)` slice.
pub fn top_cell_betti(
    ring: &GradedRing,
    n: usize,
    cell: &TopCell,
) -> Result<BigradedTable, KrizError> {
    subcomplex_betti(ring, n, |q, k| {
        if q < cell.support().len() && k == cell.degree(ring, q) {
            top_cell_basis(ring, n, cell, q)
        } else {
            Vec::new()
        }
    })
}

/// The chain map from the exterior algebra to the right edge: fill every
/// vertex outside `J` with the top class. Returns the matrices per degree
/// and checks that it intertwines the two differentials and is bijective
/// on bases.
pub fn top_iso_check(ring: &GradedRing, n: usize) -> Result<bool, KrizError> {
    let w = ring.fundamental_index();
    let top_k = |q: usize| 2 * ring.m() * n - q;
    let image_of = |word: &[(usize, usize)]| -> CanonicalMonomial {
        let j_set: BTreeSet<usize> = word.iter().map(|&(_, j)| j).collect();
        let mut marks = vec![0usize; n];
        for v in 1..=n {
            if !j_set.contains(&v) {
                marks[v - 1] = w;
            }
        }
        CanonicalMonomial::new(n, word.to_vec(), marks).expect("image is canonical")
    };
    for q in 0..n {
        let a_basis = arnold_basis(n, q);
        let e_basis = enumerate_basis(ring, n, q, top_k(q));
        // bijective on bases
        let images: BTreeSet<CanonicalMonomial> =
            a_basis.iter().map(|word| image_of(word)).collect();
        if images.len() != a_basis.len() || images != e_basis.iter().cloned().collect() {
            return Ok(false);
        }
        if q == 0 {
            continue;
        }
        // d . f = f . boundary, entrywise on basis words
        let e_target = enumerate_basis(ring, n, q - 1, top_k(q - 1));
        let target_index: BTreeMap<&CanonicalMonomial, usize> =
            e_target.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let d = differential_matrix_between(ring, &e_basis, &e_target)?;
        let e_index: BTreeMap<&CanonicalMonomial, usize> =
            e_basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        for word in &a_basis {
            let col = e_index[&image_of(word)];
            let mut expected = vec![Q::zero(); e_target.len()];
            for (sub, c) in arnold_boundary(word) {
                expected[target_index[&image_of(&sub)]] += c;
            }
            for (row, value) in expected.iter().enumerate() {
                if &d.get(row, col) != value {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Betti table of the quotient by the acyclic summand, computed from the
/// projected differentials on the complementary monomials.
pub fn se_betti(ring: &GradedRing, n: usize) -> BigradedTable {
    let dims = bigraded_dims(ring, n);
    let quotient_basis = |q: usize, k: usize| -> Vec<CanonicalMonomial> {
        enumerate_basis(ring, n, q, k)
            .into_iter()
            .filter(|m| classify(ring, m).is_none())
            .collect()
    };
    let mut ranks: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut sizes: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for ((q, k), _) in dims.cells() {
        let source = quotient_basis(q, k);
        sizes.insert((q, k), source.len());
        if source.is_empty() || q == 0 {
            continue;
        }
        let target = quotient_basis(q - 1, k + 1);
        let index: BTreeMap<&CanonicalMonomial, usize> =
            target.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut matrix = SparseRationalMatrix::zero(target.len(), source.len());
        for (col, mono) in source.iter().enumerate() {
            let image =
                crate::homology::differential(ring, &crate::exterior::Element::monomial(mono.clone()));
            for (m, c) in image.terms() {
                if let Some(&row) = index.get(m) {
                    matrix.add(row, col, c.clone());
                }
            }
        }
        ranks.insert((q, k), matrix.rank());
    }
    let rank_at = |q: usize, k: usize| ranks.get(&(q, k)).copied().unwrap_or(0);
    let mut out = BigradedTable::new(ring.name().to_string(), n);
    for (&(q, k), &dim) in &sizes {
        if dim == 0 {
            continue;
        }
        out.set(q, k, dim - rank_at(q, k) - rank_at(q + 1, k.wrapping_sub(1)));
    }
    out
}
