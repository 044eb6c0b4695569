//! Differential matrices, exact ranks, Betti tables, and equivariant
//! cohomology characters.
//!
//! The differential sends a generator `G_ij` to the diagonal class placed
//! in slots `i, j` and vanishes on the tensor factor; on a canonical
//! monomial it expands as an alternating sum over the generator factors
//! followed by normalization.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::action::action_matrix;
use crate::chars::{partitions, Character};
use crate::error::KrizError;
use crate::exterior::{
    bigraded_dims, enumerate_basis, normalize, CanonicalMonomial, Element, RawExpression, RawTerm,
    Strategy,
};
use crate::linalg::{column_space_basis, nullspace, subspace_trace, SparseRationalMatrix};
use crate::perm::Permutation;
use crate::qnum::{sign_pow, Q};
use crate::ring::GradedRing;

/// Bigraded table of nonnegative integers: dimensions or Betti numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedTable {
    ring_name: String,
    n: usize,
    entries: BTreeMap<(usize, usize), usize>,
}

impl BigradedTable {
    pub fn new(ring_name: String, n: usize) -> Self {
        BigradedTable {
            ring_name,
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring_name(&self) -> &str {
        &self.ring_name
    }

    pub fn set(&mut self, q: usize, k: usize, dim: usize) {
        if dim == 0 {
            self.entries.remove(&(q, k));
        } else {
            self.entries.insert((q, k), dim);
        }
    }

    pub fn get(&self, q: usize, k: usize) -> usize {
        self.entries.get(&(q, k)).copied().unwrap_or(0)
    }

    /// Nonzero cells sorted by `(q, k)`.
    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.entries.iter().map(|(&qk, &d)| (qk, d))
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    /// Two-variable polynomial `sum dim * s^q t^k` as a canonical string,
    /// terms sorted by `(q, k)`.
    pub fn poincare_polynomial(&self) -> String {
        if self.entries.is_empty() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (&(q, k), &dim) in &self.entries {
            let mut parts = Vec::new();
            if dim != 1 || (q == 0 && k == 0) {
                parts.push(dim.to_string());
            }
            if q == 1 {
                parts.push("s".into());
            } else if q > 1 {
                parts.push(format!("s^{q}"));
            }
            if k == 1 {
                parts.push("t".into());
            } else if k > 1 {
                parts.push(format!("t^{k}"));
            }
            terms.push(parts.join("*"));
        }
        terms.join(" + ")
    }

    /// TSV rows `q<TAB>k<TAB>dim` for nonzero cells.
    pub fn to_tsv(&self) -> String {
        self.entries
            .iter()
            .map(|(&(q, k), &d)| format!("{q}\t{k}\t{d}"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Right-multiply the mark at `slot` (1-based) by the basis element `x`,
/// with the Koszul sign from moving `x` in from the right end of the word.
fn mul_mark_right(
    ring: &GradedRing,
    branches: &[(Q, Vec<usize>)],
    slot: usize,
    x: usize,
) -> Vec<(Q, Vec<usize>)> {
    let mut out = Vec::new();
    for (c, marks) in branches {
        let crossed: usize = marks[slot..].iter().map(|&h| ring.degree(h)).sum();
        let sign = sign_pow(ring.degree(x) * crossed);
        for (k, ck) in ring.mul_basis(marks[slot - 1], x) {
            let mut next = marks.clone();
            next[slot - 1] = *k;
            out.push((c.clone() * sign.clone() * ck.clone(), next));
        }
    }
    out
}

/// The differential of an element: bidegree `(-1, +1)`.
pub fn differential(ring: &GradedRing, el: &Element) -> Element {
    let n = el.n();
    let mut raw = RawExpression::new(n);
    for (mono, coeff) in el.terms() {
        for (a, &(i, j)) in mono.edges().iter().enumerate() {
            let rest: Vec<(usize, usize)> = mono
                .edges()
                .iter()
                .enumerate()
                .filter(|&(b, _)| b != a)
                .map(|(_, &e)| e)
                .collect();
            for (s, t, dc) in ring.diagonal() {
                let seed = vec![(coeff.clone() * dc.clone() * sign_pow(a), mono.marks().to_vec())];
                let after_i = mul_mark_right(ring, &seed, i, *s);
                let after_j = mul_mark_right(ring, &after_i, j, *t);
                for (c, marks) in after_j {
                    raw.terms.push(RawTerm {
                        coeff: c,
                        marks,
                        gens: rest.clone(),
                    });
                }
            }
        }
    }
    normalize(ring, &raw, Strategy::Leftmost).expect("differential stays in range")
}

/// Matrix of `d` between explicit bases. Errors if the image of some
/// source monomial needs a monomial outside the target list.
pub fn differential_matrix_between(
    ring: &GradedRing,
    source: &[CanonicalMonomial],
    target: &[CanonicalMonomial],
) -> Result<SparseRationalMatrix, KrizError> {
    let index: std::collections::HashMap<&CanonicalMonomial, usize> =
        target.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut matrix = SparseRationalMatrix::zero(target.len(), source.len());
    for (col, mono) in source.iter().enumerate() {
        let image = differential(ring, &Element::monomial(mono.clone()));
        for (m, c) in image.terms() {
            match index.get(m) {
                Some(&row) => matrix.add(row, col, c.clone()),
                None => {
                    return Err(KrizError::LeavesSpan(format!(
                        "differential image of source column {col} leaves the target slice"
                    )))
                }
            }
        }
    }
    Ok(matrix)
}

/// Matrix of `d : (q, k) -> (q-1, k+1)` in the canonical bases.
pub fn differential_matrix(
    ring: &GradedRing,
    n: usize,
    q: usize,
    k: usize,
) -> SparseRationalMatrix {
    let source = enumerate_basis(ring, n, q, k);
    if q == 0 {
        return SparseRationalMatrix::zero(0, source.len());
    }
    let target = enumerate_basis(ring, n, q - 1, k + 1);
    differential_matrix_between(ring, &source, &target)
        .expect("full cells are closed under the differential")
}

/// Betti table of the model: `H_q^k = dim - rank(out) - rank(in)` per cell.
pub fn betti_table(ring: &GradedRing, n: usize) -> BigradedTable {
    let dims = bigraded_dims(ring, n);
    let cells: Vec<(usize, usize)> = dims.cells().map(|(qk, _)| qk).collect();
    let ranks: BTreeMap<(usize, usize), usize> = cells
        .par_iter()
        .map(|&(q, k)| ((q, k), differential_matrix(ring, n, q, k).rank()))
        .collect();
    let rank_at = |q: usize, k: usize| ranks.get(&(q, k)).copied().unwrap_or(0);
    let mut out = BigradedTable::new(ring.name().to_string(), n);
    for ((q, k), dim) in dims.cells() {
        let h = dim - rank_at(q, k) - rank_at(q + 1, k.wrapping_sub(1));
        out.set(q, k, h);
    }
    out
}

/// Character of `H_q^k`: kernel trace minus image trace under the block
/// representative of each cycle type.
pub fn cohomology_character(
    ring: &GradedRing,
    n: usize,
    q: usize,
    k: usize,
) -> Result<Character, KrizError> {
    let basis = enumerate_basis(ring, n, q, k);
    let kernel = nullspace(&differential_matrix(ring, n, q, k));
    let image = if k == 0 {
        Vec::new()
    } else {
        column_space_basis(&differential_matrix(ring, n, q + 1, k - 1))
    };
    let mut values = Vec::new();
    for ct in partitions(n) {
        let perm = Permutation::class_representative(&ct, n);
        let matrix = action_matrix(ring, &perm, &basis)?;
        let value = subspace_trace(&kernel, &matrix)? - subspace_trace(&image, &matrix)?;
        values.push((ct, value));
    }
    Ok(Character::from_fn(n, |ct| {
        values
            .iter()
            .find(|(c, _)| c == ct)
            .map(|(_, v)| v.clone())
            .expect("all cycle types computed")
    }))
}

/// One named check of an explicit differential value.
#[derive(Clone, Debug)]
pub struct VectorCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Evaluate `d` on the distinguished degree-one vectors and on the
/// square-free cocycle, projecting as appropriate, and compare with the
/// closed forms.
pub fn differential_test_vectors(
    ring: &GradedRing,
    n: usize,
) -> Result<Vec<VectorCheck>, KrizError> {
    assert!(n >= 4, "test vectors need at least four points");
    let mut checks = Vec::new();
    let w = ring.fundamental_index();
    let unit = ring.unit_index();

    // sum of all generators
    let mut all = RawExpression::new(n);
    for i in 1..=n {
        for j in i + 1..=n {
            all.terms.push(RawTerm {
                coeff: crate::qnum::q_one(),
                marks: vec![unit; n],
                gens: vec![(i, j)],
            });
        }
    }
    let g_total = normalize(ring, &all, Strategy::Leftmost)?;
    let d_total = differential(ring, &g_total);
    let projected = project_single_mark(&d_total, w);
    let mut expected = Element::zero(n);
    for i in 1..=n {
        let mut marks = vec![unit; n];
        marks[i - 1] = w;
        expected.add_term(
            CanonicalMonomial::tensor(n, marks)?,
            crate::qnum::qi((n as i64) - 1),
        );
    }
    checks.push(VectorCheck {
        name: "total-generator projection".into(),
        pass: projected == expected,
        detail: format!("(n-1) sum p_i(w) on {} points", n),
    });

    // difference vector sum_{k>=3} (G_1k - G_2k)
    let mut diff = RawExpression::new(n);
    for k in 3..=n {
        diff.terms.push(RawTerm {
            coeff: crate::qnum::q_one(),
            marks: vec![unit; n],
            gens: vec![(1, k)],
        });
        diff.terms.push(RawTerm {
            coeff: -crate::qnum::q_one(),
            marks: vec![unit; n],
            gens: vec![(2, k)],
        });
    }
    let g_diff = normalize(ring, &diff, Strategy::Leftmost)?;
    let projected = project_single_mark(&differential(ring, &g_diff), w);
    let mut expected = Element::zero(n);
    let mut marks = vec![unit; n];
    marks[0] = w;
    expected.add_term(
        CanonicalMonomial::tensor(n, marks)?,
        crate::qnum::qi(n as i64 - 2),
    );
    let mut marks = vec![unit; n];
    marks[1] = w;
    expected.add_term(
        CanonicalMonomial::tensor(n, marks)?,
        -crate::qnum::qi(n as i64 - 2),
    );
    checks.push(VectorCheck {
        name: "two-point difference projection".into(),
        pass: projected == expected,
        detail: format!("(n-2)(p_1(w) - p_2(w)) on {} points", n),
    });

    // four-point alternating vector against a complementary pair x*y = w
    if let Some(check) = four_point_check(ring, n)? {
        checks.push(check);
    }

    // the square-free cocycle on the projective line
    if ring.m() == 1 && ring.dim() == 2 {
        let gamma = gamma_cocycle(ring, n)?;
        let d_gamma = differential(ring, &gamma);
        checks.push(VectorCheck {
            name: "degree-three cocycle".into(),
            pass: d_gamma.is_zero(),
            detail: format!("d(gamma) = 0 on {} points", n),
        });
    }
    Ok(checks)
}

fn project_single_mark(el: &Element, mark: usize) -> Element {
    let mut out = Element::zero(el.n());
    for (m, c) in el.terms() {
        if m.q() != 0 {
            continue;
        }
        let non_unit: Vec<usize> = m.marks().iter().copied().filter(|&h| h != 0).collect();
        if non_unit.len() == 1 && non_unit[0] == mark {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

fn four_point_check(ring: &GradedRing, n: usize) -> Result<Option<VectorCheck>, KrizError> {
    // first positive-degree basis element below the top degree
    let x = match (0..ring.dim())
        .find(|&i| ring.degree(i) > 0 && ring.degree(i) < ring.top_degree())
    {
        None => return Ok(None), // no complementary pair, as on the line
        Some(x) => x,
    };
    let dual = ring.dual_of(x);
    if dual.len() != 1 {
        return Ok(None);
    }
    let (y, y_coeff) = (dual[0].0, dual[0].1.clone());
    let unit = ring.unit_index();
    let mut raw = RawExpression::new(n);
    for (sign, (i, j)) in [(1i64, (1, 4)), (-1, (1, 3)), (1, (2, 3)), (-1, (2, 4))] {
        raw.terms.push(RawTerm {
            coeff: crate::qnum::qi(sign),
            marks: vec![unit; n],
            gens: vec![(i, j)],
        });
    }
    let el = normalize(ring, &raw, Strategy::Leftmost)?;
    let d_el = differential(ring, &el);
    // restrict to words with x at a lower slot and the dual mark above it
    let mut projected = Element::zero(n);
    for (m, c) in d_el.terms() {
        if m.q() != 0 {
            continue;
        }
        let occupied: Vec<usize> = (1..=n).filter(|&v| m.mark_at(v) != unit).collect();
        if occupied.len() == 2 && m.mark_at(occupied[0]) == x && m.mark_at(occupied[1]) == y {
            projected.add_term(m.clone(), c.clone());
        }
    }
    // expected: the four-term pattern p_1 x p_4 y - p_1 x p_3 y
    // + p_2 x p_3 y - p_2 x p_4 y with y the dual of x, carrying the
    // stored convention sign (-1)^{|x|} of the diagonal class
    let z = sign_pow(ring.degree(x));
    let mut expected = Element::zero(n);
    for (sign, (i, j)) in [(1i64, (1, 4)), (-1, (1, 3)), (1, (2, 3)), (-1, (2, 4))] {
        let mut marks = vec![unit; n];
        marks[i - 1] = x;
        marks[j - 1] = y;
        expected.add_term(
            CanonicalMonomial::tensor(n, marks)?,
            crate::qnum::qi(sign) * z.clone() * y_coeff.clone(),
        );
    }
    Ok(Some(VectorCheck {
        name: "four-point alternating projection".into(),
        pass: projected == expected,
        detail: format!(
            "alternating image on ({}, {}) block",
            ring.symbol(x),
            ring.symbol(y)
        ),
    }))
}

/// The cocycle `2(n-2) sum p_i(w) G_ij - sum_{k != i,j} p_k(w) G_ij` in
/// bidegree `(1, 3)` over a ring with vanishing squared fundamental class.
pub fn gamma_cocycle(ring: &GradedRing, n: usize) -> Result<Element, KrizError> {
    let w = ring.fundamental_index();
    let unit = ring.unit_index();
    let mut raw = RawExpression::new(n);
    for i in 1..=n {
        for j in i + 1..=n {
            let mut marks = vec![unit; n];
            marks[i - 1] = w;
            raw.terms.push(RawTerm {
                coeff: crate::qnum::qi(2 * (n as i64 - 2)),
                marks,
                gens: vec![(i, j)],
            });
            for k in 1..=n {
                if k == i || k == j {
                    continue;
                }
                let mut marks = vec![unit; n];
                marks[k - 1] = w;
                raw.terms.push(RawTerm {
                    coeff: crate::qnum::qi(-1),
                    marks,
                    gens: vec![(i, j)],
                });
            }
        }
    }
    normalize(ring, &raw, Strategy::Leftmost)
}
