//! The symmetric-group action on the model and direct trace characters.
//!
//! A permutation moves the mark at vertex `v` to vertex `sigma(v)` and
//! relabels both ends of every generator; reordering the tensor word
//! contributes the Koszul sign of sorting the permuted marks, and the
//! relabelled word is brought back to canonical form by the rewriting
//! system.

use num::Zero;

use crate::chars::{partitions, Character, Partition};
use crate::error::KrizError;
use crate::exterior::{
    normalize, type_basis, type_generator, CanonicalMonomial, Element, RawExpression, RawTerm,
    Strategy, TypeSignature,
};
use crate::linalg::SparseRationalMatrix;
use crate::perm::Permutation;
use crate::qnum::{sign_pow, Q};
use crate::ring::GradedRing;

/// Apply a permutation to an element.
pub fn act(ring: &GradedRing, perm: &Permutation, el: &Element) -> Result<Element, KrizError> {
    if perm.n() != el.n() {
        return Err(KrizError::SizeMismatch(format!(
            "permutation of {} on element with n={}",
            perm.n(),
            el.n()
        )));
    }
    let n = el.n();
    let mut raw = RawExpression::new(n);
    for (mono, c) in el.terms() {
        raw.terms.push(act_raw_term(ring, perm, mono, c.clone()));
    }
    normalize(ring, &raw, Strategy::Leftmost)
}

fn act_raw_term(
    ring: &GradedRing,
    perm: &Permutation,
    mono: &CanonicalMonomial,
    coeff: Q,
) -> RawTerm {
    let n = mono.n();
    let mut marks = vec![0usize; n];
    for v in 1..=n {
        marks[perm.apply(v) - 1] = mono.mark_at(v);
    }
    // Koszul sign of sorting the permuted tensor word: one factor
    // (-1)^{|x_v| |x_u|} per inversion sigma(v) > sigma(u) with v < u.
    let mut exp = 0usize;
    for v in 1..=n {
        for u in v + 1..=n {
            if perm.apply(v) > perm.apply(u) {
                exp += ring.degree(mono.mark_at(v)) * ring.degree(mono.mark_at(u));
            }
        }
    }
    let gens = mono
        .edges()
        .iter()
        .map(|&(i, j)| (perm.apply(i), perm.apply(j)))
        .collect();
    RawTerm {
        coeff: coeff * sign_pow(exp),
        marks,
        gens,
    }
}

/// Matrix of the action on the span of `basis`, columns in basis order.
/// Errors if some image leaves the span.
pub fn action_matrix(
    ring: &GradedRing,
    perm: &Permutation,
    basis: &[CanonicalMonomial],
) -> Result<SparseRationalMatrix, KrizError> {
    let index: std::collections::HashMap<&CanonicalMonomial, usize> =
        basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut matrix = SparseRationalMatrix::zero(basis.len(), basis.len());
    for (col, mono) in basis.iter().enumerate() {
        let image = act(ring, perm, &Element::monomial(mono.clone()))?;
        for (m, c) in image.terms() {
            match index.get(m) {
                Some(&row) => matrix.add(row, col, c.clone()),
                None => {
                    return Err(KrizError::LeavesSpan(format!(
                        "image of basis column {col} contains a monomial outside the slice"
                    )))
                }
            }
        }
    }
    Ok(matrix)
}

/// Trace of the block representative of `ct` on the span of `basis`.
/// Only diagonal coefficients are needed, so no matrix is materialized.
pub fn trace_on_basis(
    ring: &GradedRing,
    ct: &Partition,
    basis: &[CanonicalMonomial],
) -> Result<Q, KrizError> {
    let n: usize = ct.weight();
    let perm = Permutation::class_representative(ct, n);
    let mut trace = Q::zero();
    for mono in basis {
        let image = act(ring, &perm, &Element::monomial(mono.clone()))?;
        trace += image.coeff(mono);
    }
    Ok(trace)
}

/// Character of the whole bigraded component `(q, k)` by direct traces,
/// one block representative per cycle type.
pub fn character_direct_cell(
    ring: &GradedRing,
    n: usize,
    q: usize,
    k: usize,
) -> Result<Character, KrizError> {
    let basis = crate::exterior::enumerate_basis(ring, n, q, k);
    character_from_traces(ring, n, &basis)
}

/// Character of a single type block by direct traces.
pub fn character_direct_type(
    ring: &GradedRing,
    sig: &TypeSignature,
) -> Result<Character, KrizError> {
    let basis = type_basis(ring, sig);
    character_from_traces(ring, sig.n(), &basis)
}

fn character_from_traces(
    ring: &GradedRing,
    n: usize,
    basis: &[CanonicalMonomial],
) -> Result<Character, KrizError> {
    let mut values = Vec::new();
    for ct in partitions(n) {
        let t = trace_on_basis(ring, &ct, basis)?;
        values.push((ct, t));
    }
    Ok(Character::from_fn(n, |ct| {
        values
            .iter()
            .find(|(c, _)| c == ct)
            .map(|(_, v)| v.clone())
            .expect("all cycle types computed")
    }))
}

/// Incrementally maintained row space for exact rank growth.
pub struct RowSpace {
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new() -> Self {
        RowSpace {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the rows; if a new direction remains, keep it
    /// and report `true`.
    pub fn insert(&mut self, mut v: Vec<Q>) -> bool {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= f.clone() * b.clone();
                }
            }
        }
        let pivot = match v.iter().position(|c| !c.is_zero()) {
            None => return false,
            Some(p) => p,
        };
        let lead = v[pivot].clone();
        for c in v.iter_mut() {
            *c /= lead.clone();
        }
        self.rows.push(v);
        self.pivots.push(pivot);
        true
    }
}

impl Default for RowSpace {
    fn default() -> Self {
        RowSpace::new()
    }
}

/// Dimension of the span of the orbit of `seed` under the group generated
/// by `generators`, inside the span of `basis`. Breadth-first closure with
/// incremental exact rank.
pub fn orbit_span_dimension(
    ring: &GradedRing,
    seed: &Element,
    generators: &[Permutation],
    basis: &[CanonicalMonomial],
) -> Result<usize, KrizError> {
    let index: std::collections::HashMap<&CanonicalMonomial, usize> =
        basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let coords = |el: &Element| -> Result<Vec<Q>, KrizError> {
        let mut v = vec![Q::zero(); basis.len()];
        for (m, c) in el.terms() {
            let &i = index
                .get(m)
                .ok_or_else(|| KrizError::LeavesSpan("orbit leaves the block".into()))?;
            v[i] = c.clone();
        }
        Ok(v)
    };
    let mut space = RowSpace::new();
    let mut queue = std::collections::VecDeque::new();
    if space.insert(coords(seed)?) {
        queue.push_back(seed.clone());
    }
    while let Some(el) = queue.pop_front() {
        for g in generators {
            let image = act(ring, g, &el)?;
            if space.insert(coords(&image)?) {
                queue.push_back(image);
            }
        }
    }
    Ok(space.rank())
}

/// Check that the type block is generated by its bamboo monomial as a
/// module over the full symmetric group. Returns the span dimension as a
/// certificate together with the verdict.
pub fn verify_monogenic(ring: &GradedRing, sig: &TypeSignature) -> Result<(bool, usize), KrizError> {
    let n = sig.n();
    let basis = type_basis(ring, sig);
    let generators: Vec<Permutation> = (1..n)
        .map(|i| Permutation::transposition(n, i))
        .collect();
    let seed = Element::monomial(type_generator(sig));
    let rank = orbit_span_dimension(ring, &seed, &generators, &basis)?;
    Ok((rank == basis.len(), rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{enumerate_basis, format_element};
    use crate::qnum::qi;
    use crate::ring::preset_ring;

    fn cp(m: usize) -> GradedRing {
        preset_ring("cp", m).unwrap()
    }

    fn curve(g: usize) -> GradedRing {
        preset_ring("curve", g).unwrap()
    }

    fn gword(ring: &GradedRing, n: usize, gens: Vec<(usize, usize)>) -> Element {
        normalize(ring, &RawExpression::gens(n, gens), Strategy::Leftmost).unwrap()
    }

    #[test]
    fn transpositions_on_three_point_trees() {
        let r = cp(1);
        let star = gword(&r, 3, vec![(1, 2), (1, 3)]);
        let bamboo = gword(&r, 3, vec![(1, 2), (2, 3)]);
        let tau1 = Permutation::transposition(3, 1);
        let tau2 = Permutation::transposition(3, 2);
        // tau1 swaps the star and the bamboo
        assert_eq!(act(&r, &tau1, &star).unwrap(), bamboo);
        assert_eq!(act(&r, &tau1, &bamboo).unwrap(), star);
        // tau2(star) = -star, tau2(bamboo) = bamboo - star
        assert_eq!(act(&r, &tau2, &star).unwrap(), star.scale(&qi(-1)));
        assert_eq!(act(&r, &tau2, &bamboo).unwrap(), bamboo.sub(&star));
    }

    #[test]
    fn unit_word_is_fixed() {
        let r = cp(2);
        let unit = Element::monomial(CanonicalMonomial::unit(4));
        for p in Permutation::all(4) {
            assert_eq!(act(&r, &p, &unit).unwrap(), unit);
        }
    }

    #[test]
    fn odd_marks_anticommute() {
        // (12) on x (x) y with x, y odd gives -(y (x) x)
        let r = curve(1);
        let a1 = r.symbol_index("a1").unwrap();
        let b1 = r.symbol_index("b1").unwrap();
        let xy = Element::monomial(CanonicalMonomial::tensor(2, vec![a1, b1]).unwrap());
        let yx = Element::monomial(CanonicalMonomial::tensor(2, vec![b1, a1]).unwrap());
        let swap = Permutation::transposition(2, 1);
        assert_eq!(act(&r, &swap, &xy).unwrap(), yx.scale(&qi(-1)));
    }

    #[test]
    fn four_cycle_on_paired_odd_marks() {
        // (1234) on a (x) a (x) 1 (x) 1 * G_13 G_24 is (-1)^{|a|+1} times itself
        let r = curve(1);
        let a1 = r.symbol_index("a1").unwrap();
        let mono =
            CanonicalMonomial::new(4, vec![(1, 3), (2, 4)], vec![a1, a1, 0, 0]).unwrap();
        let el = Element::monomial(mono);
        let four_cycle = Permutation::parse("(1 2 3 4)", 4).unwrap();
        let image = act(&r, &four_cycle, &el).unwrap();
        assert_eq!(
            image,
            el.clone(),
            "expected fixed, got {}",
            format_element(&r, &image)
        );
        // and with an even mark of positive degree it is fixed as well
        let r2 = cp(2);
        let h = r2.symbol_index("h").unwrap();
        let mono =
            CanonicalMonomial::new(4, vec![(1, 3), (2, 4)], vec![h, h, 0, 0]).unwrap();
        let el = Element::monomial(mono);
        let image = act(&r2, &four_cycle, &el).unwrap();
        assert_eq!(image, el.scale(&qi(-1)));
    }

    #[test]
    fn group_law_on_matrices() {
        let r = cp(1);
        let basis = enumerate_basis(&r, 4, 2, 2);
        let s = Permutation::parse("(1 2 3)", 4).unwrap();
        let t = Permutation::parse("(2 4)", 4).unwrap();
        let ms = action_matrix(&r, &s, &basis).unwrap();
        let mt = action_matrix(&r, &t, &basis).unwrap();
        let mst = action_matrix(&r, &s.compose(&t), &basis).unwrap();
        assert_eq!(ms.mul(&mt), mst);
        let id = action_matrix(&r, &Permutation::identity(4), &basis).unwrap();
        assert_eq!(id, SparseRationalMatrix::identity(basis.len()));
    }

    #[test]
    fn tau1_matrix_on_single_edge_slice() {
        let r = cp(2);
        let basis = enumerate_basis(&r, 3, 1, r.gen_degree());
        assert_eq!(basis.len(), 3);
        let m = action_matrix(&r, &Permutation::transposition(3, 1), &basis).unwrap();
        // a signed permutation-like matrix, invertible
        assert_eq!(m.mul(&m), SparseRationalMatrix::identity(3));
    }

    #[test]
    fn class_function_property() {
        let r = cp(1);
        let basis = enumerate_basis(&r, 4, 3, 3);
        let ct = Partition::new(vec![2, 2]);
        let reps = [
            Permutation::parse("(1 2)(3 4)", 4).unwrap(),
            Permutation::parse("(1 3)(2 4)", 4).unwrap(),
            Permutation::parse("(1 4)(2 3)", 4).unwrap(),
        ];
        let expected = trace_on_basis(&r, &ct, &basis).unwrap();
        for rep in &reps {
            let m = action_matrix(&r, rep, &basis).unwrap();
            assert_eq!(m.trace(), expected);
        }
    }

    #[test]
    fn monogenic_small_blocks() {
        let r = cp(1);
        let w = r.fundamental_index();
        // L=(3), H=(w) on n=3: span dimension 2
        let sig = TypeSignature::new(vec![(3, w)]);
        assert_eq!(verify_monogenic(&r, &sig).unwrap(), (true, 2));
        // distinct marks on singletons: the full regular representation
        let sig = TypeSignature::new(vec![(1, w), (1, 0)]);
        assert_eq!(verify_monogenic(&r, &sig).unwrap(), (true, 2));
        let r2 = cp(2);
        let h = 1;
        let sig = TypeSignature::new(vec![(1, 0), (1, h), (1, 2)]);
        assert_eq!(verify_monogenic(&r2, &sig).unwrap(), (true, 6));
    }

    #[test]
    fn type_blocks_are_stable_slices() {
        // the action matrix never leaves a type slice
        let r = cp(2);
        let n = 4;
        for q in 0..n {
            for k in 0..=(2 * r.m() * n) {
                for sig in crate::exterior::enumerate_types(&r, n, q, k) {
                    let basis = type_basis(&r, &sig);
                    for i in 1..n {
                        let tau = Permutation::transposition(n, i);
                        action_matrix(&r, &tau, &basis).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn restricted_top_type_span() {
        // the S_{n-1} orbit of the full bamboo already spans the block
        let r = cp(1);
        let w = r.fundamental_index();
        for n in [3usize, 4, 5] {
            let sig = TypeSignature::new(vec![(n, w)]);
            let basis = type_basis(&r, &sig);
            let gens: Vec<Permutation> = (1..n - 1)
                .map(|i| Permutation::transposition(n, i))
                .collect();
            let seed = Element::monomial(type_generator(&sig));
            let dim = orbit_span_dimension(&r, &seed, &gens, &basis).unwrap();
            let fact: usize = (1..n).product();
            assert_eq!(dim, fact);
            assert_eq!(basis.len(), fact);
        }
    }
}
