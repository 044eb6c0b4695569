//! The bigraded model on its canonical basis of marked monotonic forests.
//!
//! A canonical monomial is a product `x_{H} G_{I J}` where the generator
//! word has strictly increasing second indices and every mark sits on the
//! minimum vertex of its forest component. Arbitrary expressions are
//! brought to this form by a terminating rewriting system:
//!
//! * `G_ba -> G_ab` (no sign),
//! * adjacent transposition of generators costs `-1`,
//! * equal generators vanish,
//! * `G_ik G_jk -> G_ij G_jk - G_ij G_ik` for `i < j < k`,
//! * a mark at a non-minimal vertex folds along its parent edge into the
//!   component minimum, with Koszul signs from the fixed layout (tensor
//!   word to the left of the generator word).

mod basis;

pub use basis::{
    bigraded_dims, enumerate_basis, enumerate_types, mark_tuple_count, monotonic_forests,
    stirling_first, type_basis, type_dimension,
};

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::error::KrizError;
use crate::qnum::{format_q, q_one, sign_pow, Q};
use crate::ring::GradedRing;

/// One canonical-basis element: a marked monotonic forest on `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalMonomial {
    n: usize,
    /// Edges `(i, j)` with `i < j`, sorted by strictly increasing `j`.
    edges: Vec<(usize, usize)>,
    /// Ring-basis index per vertex (0-based slot `v-1` for vertex `v`).
    marks: Vec<usize>,
}

impl CanonicalMonomial {
    pub fn new(
        n: usize,
        edges: Vec<(usize, usize)>,
        marks: Vec<usize>,
    ) -> Result<Self, KrizError> {
        if marks.len() != n {
            return Err(KrizError::SizeMismatch(format!(
                "{} marks for n={n}",
                marks.len()
            )));
        }
        for &(i, j) in &edges {
            if i == 0 || i >= j || j > n {
                return Err(KrizError::IndexError(format!("edge ({i},{j}) for n={n}")));
            }
        }
        if edges.windows(2).any(|w| w[0].1 >= w[1].1) {
            return Err(KrizError::IndexError(
                "edge second indices must strictly increase".into(),
            ));
        }
        let mono = CanonicalMonomial { n, edges, marks };
        for &(_, j) in &mono.edges {
            if mono.marks[j - 1] != 0 {
                return Err(KrizError::IndexError(format!(
                    "vertex {j} is non-minimal but carries a mark"
                )));
            }
        }
        Ok(mono)
    }

    /// Pure tensor word, no generators.
    pub fn tensor(n: usize, marks: Vec<usize>) -> Result<Self, KrizError> {
        CanonicalMonomial::new(n, Vec::new(), marks)
    }

    /// The unit monomial `1 (x) ... (x) 1`.
    pub fn unit(n: usize) -> Self {
        CanonicalMonomial {
            n,
            edges: Vec::new(),
            marks: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Exterior degree: the number of generators.
    pub fn q(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn marks(&self) -> &[usize] {
        &self.marks
    }

    pub fn mark_at(&self, vertex: usize) -> usize {
        self.marks[vertex - 1]
    }

    /// Total degree `k`: mark degrees plus `q (2m-1)`.
    pub fn degree(&self, ring: &GradedRing) -> usize {
        let mark_deg: usize = self.marks.iter().map(|&h| ring.degree(h)).sum();
        mark_deg + self.q() * ring.gen_degree()
    }

    pub fn bidegree(&self, ring: &GradedRing) -> (usize, usize) {
        (self.q(), self.degree(ring))
    }

    /// The parent of a vertex, i.e. the other end of the edge in which it
    /// is the second index.
    pub fn parent(&self, vertex: usize) -> Option<usize> {
        self.edges
            .iter()
            .find(|&&(_, j)| j == vertex)
            .map(|&(i, _)| i)
    }

    /// Minimum vertex of the component containing `vertex`.
    pub fn component_min(&self, vertex: usize) -> usize {
        let mut v = vertex;
        while let Some(p) = self.parent(v) {
            v = p;
        }
        v
    }

    /// Component vertex sets, each sorted, ordered by their minima.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 1..=self.n {
            groups.entry(self.component_min(v)).or_default().push(v);
        }
        groups.into_values().collect()
    }

    fn sort_key(&self) -> (Vec<usize>, Vec<usize>, &[usize]) {
        (
            self.edges.iter().map(|&(_, j)| j).collect(),
            self.edges.iter().map(|&(i, _)| i).collect(),
            &self.marks,
        )
    }
}

impl PartialOrd for CanonicalMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalMonomial {
    /// Lexicographic on `(J, I, marks)`.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// Finite rational combination of canonical monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    n: usize,
    terms: BTreeMap<CanonicalMonomial, Q>,
}

impl Element {
    pub fn zero(n: usize) -> Self {
        Element {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(mono: CanonicalMonomial) -> Self {
        let mut el = Element::zero(mono.n());
        el.add_term(mono, q_one());
        el
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &CanonicalMonomial) -> Q {
        self.terms.get(mono).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, mono: CanonicalMonomial, c: Q) {
        assert_eq!(mono.n(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
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

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&-q_one()))
    }

    pub fn scale(&self, c: &Q) -> Element {
        if c.is_zero() {
            return Element::zero(self.n);
        }
        Element {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// The single bidegree of a homogeneous element.
    pub fn bidegree(&self, ring: &GradedRing) -> Result<Option<(usize, usize)>, KrizError> {
        let mut bd = None;
        for (m, _) in self.terms() {
            let this = m.bidegree(ring);
            match bd {
                None => bd = Some(this),
                Some(prev) if prev != this => return Err(KrizError::Inhomogeneous),
                _ => {}
            }
        }
        Ok(bd)
    }
}

/// One unnormalized term: a coefficient, a tensor word, and a generator
/// word in arbitrary order with repetitions allowed.
#[derive(Clone, Debug)]
pub struct RawTerm {
    pub coeff: Q,
    pub marks: Vec<usize>,
    pub gens: Vec<(usize, usize)>,
}

/// A formal rational combination of raw terms.
#[derive(Clone, Debug)]
pub struct RawExpression {
    pub n: usize,
    pub terms: Vec<RawTerm>,
}

impl RawExpression {
    pub fn new(n: usize) -> Self {
        RawExpression {
            n,
            terms: Vec::new(),
        }
    }

    pub fn term(mut self, coeff: Q, marks: Vec<usize>, gens: Vec<(usize, usize)>) -> Self {
        self.terms.push(RawTerm { coeff, marks, gens });
        self
    }

    /// A single generator word with unit marks.
    pub fn gens(n: usize, gens: Vec<(usize, usize)>) -> Self {
        RawExpression::new(n).term(q_one(), vec![0; n], gens)
    }

    pub fn from_monomial(mono: &CanonicalMonomial, coeff: Q) -> Self {
        RawExpression {
            n: mono.n(),
            terms: vec![RawTerm {
                coeff,
                marks: mono.marks().to_vec(),
                gens: mono.edges().to_vec(),
            }],
        }
    }
}

/// Which violation the rewriting loop resolves first. The two strategies
/// must produce identical normal forms; this is exercised by the
/// confluence tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Rewrite a raw expression to its canonical form.
pub fn normalize(
    ring: &GradedRing,
    raw: &RawExpression,
    strategy: Strategy,
) -> Result<Element, KrizError> {
    let n = raw.n;
    let mut out = Element::zero(n);
    for term in &raw.terms {
        if term.marks.len() != n {
            return Err(KrizError::SizeMismatch(format!(
                "{} marks for n={n}",
                term.marks.len()
            )));
        }
        if term.marks.iter().any(|&h| h >= ring.dim()) {
            return Err(KrizError::IndexError("mark outside the ring basis".into()));
        }
        let mut gens = Vec::with_capacity(term.gens.len());
        for &(a, b) in &term.gens {
            if a == 0 || b == 0 || a > n || b > n || a == b {
                return Err(KrizError::IndexError(format!("generator ({a},{b}) for n={n}")));
            }
            gens.push((a.min(b), a.max(b)));
        }
        for (sign, word) in rewrite_gword(gens, strategy) {
            for (c, marks) in fold_marks(ring, term.marks.clone(), &word) {
                let mono = CanonicalMonomial {
                    n,
                    edges: word.clone(),
                    marks,
                };
                out.add_term(mono, term.coeff.clone() * sign.clone() * c);
            }
        }
    }
    Ok(out)
}

/// Bring a generator word to strictly increasing second indices.
/// Returns the expansion as `(sign, canonical word)` pairs.
pub(crate) fn rewrite_gword(
    word: Vec<(usize, usize)>,
    strategy: Strategy,
) -> Vec<(Q, Vec<(usize, usize)>)> {
    let mut done = Vec::new();
    let mut work = vec![(q_one(), word)];
    while let Some((sign, word)) = work.pop() {
        let violation = {
            let mut found = None;
            for a in 0..word.len().saturating_sub(1) {
                if word[a].1 >= word[a + 1].1 {
                    found = Some(a);
                    if strategy == Strategy::Leftmost {
                        break;
                    }
                }
            }
            found
        };
        let a = match violation {
            None => {
                done.push((sign, word));
                continue;
            }
            Some(a) => a,
        };
        let (left, right) = (word[a], word[a + 1]);
        if left.1 > right.1 {
            let mut w = word;
            w.swap(a, a + 1);
            work.push((-sign, w));
        } else if left == right {
            // equal generators square to zero
        } else {
            // shared second index: G_uk G_vk with u != v
            let k = left.1;
            let (u, v) = (left.0, right.0);
            let (sign, u, v) = if u < v { (sign, u, v) } else { (-sign, v, u) };
            let mut w1 = word.clone();
            w1[a] = (u, v);
            w1[a + 1] = (v, k);
            let mut w2 = word;
            w2[a] = (u, v);
            w2[a + 1] = (u, k);
            work.push((sign.clone(), w1));
            work.push((-sign, w2));
        }
    }
    done
}

/// Fold every mark at a non-minimal vertex into its component minimum.
/// The word must already be canonical. Returns `(coefficient, marks)`
/// branches; ring multiplication may split or kill a term.
fn fold_marks(
    ring: &GradedRing,
    marks: Vec<usize>,
    word: &[(usize, usize)],
) -> Vec<(Q, Vec<usize>)> {
    let n = marks.len();
    let mut parent = vec![0usize; n + 1];
    for &(i, j) in word {
        parent[j] = i;
    }
    let mut work = vec![(q_one(), marks)];
    let mut out = Vec::new();
    while let Some((coeff, mut marks)) = work.pop() {
        let movable = (1..=n)
            .rev()
            .find(|&v| parent[v] != 0 && marks[v - 1] != 0);
        let v = match movable {
            None => {
                out.push((coeff, marks));
                continue;
            }
            Some(v) => v,
        };
        let p = parent[v];
        let x = marks[v - 1];
        marks[v - 1] = 0;
        let crossed: usize = (p + 1..v).map(|l| ring.degree(marks[l - 1])).sum();
        let sign = sign_pow(ring.degree(x) * crossed);
        for (k, c) in ring.mul_basis(marks[p - 1], x) {
            let mut next = marks.clone();
            next[p - 1] = *k;
            work.push((coeff.clone() * sign.clone() * c.clone(), next));
        }
    }
    out
}

/// Product of two elements of the algebra.
pub fn mul_elements(ring: &GradedRing, a: &Element, b: &Element) -> Result<Element, KrizError> {
    assert_eq!(a.n(), b.n());
    let n = a.n();
    let gen_deg = ring.gen_degree();
    let mut raw = RawExpression::new(n);
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            // move b's tensor word left past a's generator word
            let b_mark_deg: usize = mb.marks().iter().map(|&h| ring.degree(h)).sum();
            let mut coeff = ca.clone() * cb.clone() * sign_pow(b_mark_deg * ma.q() * gen_deg);
            // slotwise product of the tensor words with Koszul signs:
            // mark of b in slot j passes marks of a in slots > j
            let mut exp = 0usize;
            for j in 0..n {
                for i in (j + 1)..n {
                    exp += ring.degree(mb.marks()[j]) * ring.degree(ma.marks()[i]);
                }
            }
            coeff *= sign_pow(exp);
            let mut words: Vec<(Q, Vec<usize>)> = vec![(coeff, Vec::with_capacity(n))];
            for slot in 0..n {
                let mut next = Vec::new();
                for (c, prefix) in &words {
                    for (k, ck) in ring.mul_basis(ma.marks()[slot], mb.marks()[slot]) {
                        let mut w = prefix.clone();
                        w.push(*k);
                        next.push((c.clone() * ck.clone(), w));
                    }
                }
                words = next;
                if words.is_empty() {
                    break;
                }
            }
            let gens: Vec<(usize, usize)> = ma
                .edges()
                .iter()
                .chain(mb.edges().iter())
                .copied()
                .collect();
            for (c, marks) in words {
                raw.terms.push(RawTerm {
                    coeff: c,
                    marks,
                    gens: gens.clone(),
                });
            }
        }
    }
    normalize(ring, &raw, Strategy::Leftmost)
}

/// The duality map on a homogeneous element: every mark at a root is
/// replaced by its Poincare dual. Lands in bidegree
/// `(q, 2mn + 2q(m-1) - k)`.
pub fn duality_phi(ring: &GradedRing, el: &Element) -> Result<Element, KrizError> {
    el.bidegree(ring)?; // homogeneity check
    let mut out = Element::zero(el.n());
    for (mono, c) in el.terms() {
        let j_set: Vec<usize> = mono.edges().iter().map(|&(_, j)| j).collect();
        let mut branches: Vec<(Q, Vec<usize>)> = vec![(c.clone(), Vec::new())];
        for v in 1..=mono.n() {
            let h = mono.mark_at(v);
            let mut next = Vec::new();
            for (bc, prefix) in &branches {
                if j_set.contains(&v) {
                    let mut w = prefix.clone();
                    w.push(h);
                    next.push((bc.clone(), w));
                } else {
                    for (k, dk) in ring.dual_of(h) {
                        let mut w = prefix.clone();
                        w.push(*k);
                        next.push((bc.clone() * dk.clone(), w));
                    }
                }
            }
            branches = next;
        }
        for (bc, marks) in branches {
            out.add_term(
                CanonicalMonomial::new(mono.n(), mono.edges().to_vec(), marks)?,
                bc,
            );
        }
    }
    Ok(out)
}

/// The combinatorial type of a monomial: component sizes with their root
/// marks, sizes decreasing and marks decreasing within equal sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeSignature {
    /// `(component size, root mark)` pairs in canonical order.
    entries: Vec<(usize, usize)>,
}

impl TypeSignature {
    pub fn new(sizes_and_marks: Vec<(usize, usize)>) -> Self {
        let mut entries = sizes_and_marks;
        entries.sort_by(|a, b| b.cmp(a));
        TypeSignature { entries }
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn parts(&self) -> Vec<usize> {
        self.entries.iter().map(|&(l, _)| l).collect()
    }

    pub fn marks(&self) -> Vec<usize> {
        self.entries.iter().map(|&(_, h)| h).collect()
    }

    pub fn n(&self) -> usize {
        self.entries.iter().map(|&(l, _)| l).sum()
    }

    /// Exterior degree contributed by this type: `sum (lambda_i - 1)`.
    pub fn exterior_degree(&self) -> usize {
        self.entries.iter().map(|&(l, _)| l - 1).sum()
    }

    /// Total mark degree `|H|`.
    pub fn mark_degree(&self, ring: &GradedRing) -> usize {
        self.entries.iter().map(|&(_, h)| ring.degree(h)).sum()
    }

    /// Total degree of the block: `|H| + q (2m-1)`.
    pub fn total_degree(&self, ring: &GradedRing) -> usize {
        self.mark_degree(ring) + self.exterior_degree() * ring.gen_degree()
    }

    pub fn format(&self, ring: &GradedRing) -> String {
        let l: Vec<String> = self.entries.iter().map(|&(s, _)| s.to_string()).collect();
        let h: Vec<String> = self
            .entries
            .iter()
            .map(|&(_, m)| ring.symbol(m).to_string())
            .collect();
        format!("L={};H={}", l.join(","), h.join(","))
    }

    /// Parse `L=3,1,1;H=w,1,1`.
    pub fn parse(text: &str, ring: &GradedRing) -> Result<Self, KrizError> {
        let err = || KrizError::Parse {
            line: 0,
            msg: format!("bad type signature {text}"),
        };
        let (l_part, h_part) = text.split_once(';').ok_or_else(err)?;
        let l_part = l_part.trim().strip_prefix("L=").ok_or_else(err)?;
        let h_part = h_part.trim().strip_prefix("H=").ok_or_else(err)?;
        let sizes: Vec<usize> = l_part
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| err()))
            .collect::<Result<_, _>>()?;
        let marks: Vec<usize> = h_part
            .split(',')
            .map(|s| ring.symbol_index(s.trim()).ok_or_else(err))
            .collect::<Result<_, _>>()?;
        if sizes.len() != marks.len() || sizes.is_empty() || sizes.contains(&0) {
            return Err(err());
        }
        Ok(TypeSignature::new(sizes.into_iter().zip(marks).collect()))
    }
}

/// Type of a canonical monomial.
pub fn type_of(mono: &CanonicalMonomial) -> TypeSignature {
    let entries = mono
        .components()
        .into_iter()
        .map(|comp| (comp.len(), mono.mark_at(comp[0])))
        .collect();
    TypeSignature::new(entries)
}

/// The concatenated-bamboo generator of a type block: consecutive blocks
/// `[1..L_1], [L_1+1..L_2], ...` each carrying a path `G_{a,a+1}...` and
/// the block's mark on its first vertex.
pub fn type_generator(sig: &TypeSignature) -> CanonicalMonomial {
    let n = sig.n();
    let mut edges = Vec::new();
    let mut marks = vec![0usize; n];
    let mut start = 1;
    for &(len, mark) in sig.entries() {
        marks[start - 1] = mark;
        for v in start..start + len - 1 {
            edges.push((v, v + 1));
        }
        start += len;
    }
    CanonicalMonomial::new(n, edges, marks).expect("bamboo monomial is canonical")
}

/// Text form of a monomial: `w@1 G(1,2) G(2,3)`, unit marks omitted,
/// the empty monomial printed as `1`.
pub fn format_monomial(ring: &GradedRing, mono: &CanonicalMonomial) -> String {
    let mut pieces = Vec::new();
    for v in 1..=mono.n() {
        let h = mono.mark_at(v);
        if h != ring.unit_index() {
            pieces.push(format!("{}@{v}", ring.symbol(h)));
        }
    }
    for &(i, j) in mono.edges() {
        pieces.push(format!("G({i},{j})"));
    }
    if pieces.is_empty() {
        "1".into()
    } else {
        pieces.join(" ")
    }
}

/// Multi-line text form of an element, one `coeff * monomial` per line in
/// basis order; the zero element prints as `0`.
pub fn format_element(ring: &GradedRing, el: &Element) -> String {
    if el.is_zero() {
        return "0".into();
    }
    el.terms()
        .map(|(m, c)| format!("{} * {}", format_q(c), format_monomial(ring, m)))
        .collect::<Vec<_>>()
        .join("\n")
}

impl fmt::Display for TypeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.entries.iter().map(|&(s, _)| s.to_string()).collect();
        let h: Vec<String> = self.entries.iter().map(|&(_, m)| m.to_string()).collect();
        write!(f, "L=({});H=#({})", l.join(","), h.join(","))
    }
}
