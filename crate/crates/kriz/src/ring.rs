//! Finite graded-commutative Poincare-duality algebras.
//!
//! A [`GradedRing`] holds an ordered basis `x_1 = 1, ..., x_B = w` with
//! non-decreasing degrees, exact rational structure constants, the dual
//! basis `y^i` (defined by `x_i y^j = delta_ij w`), and the diagonal class
//! used by the differential of the model. All axioms are checked at
//! construction time; a ring that reaches the rest of the crate is valid.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::error::KrizError;
use crate::qnum::{format_q, parse_q, q_one, sign_pow, Q};

/// Sparse rational vector over the ring basis.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RingElement {
    coeffs: BTreeMap<usize, Q>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn basis(index: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(index, q_one());
        RingElement { coeffs }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut el = RingElement::zero();
        for (i, c) in terms {
            el.add_term(i, c);
        }
        el
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, index: usize) -> Q {
        self.coeffs.get(&index).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn add_term(&mut self, index: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(index).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> RingElement {
        if c.is_zero() {
            return RingElement::zero();
        }
        RingElement {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&i, v)| (i, v.clone() * c.clone()))
                .collect(),
        }
    }
}

/// Sparse rational tensor of fixed arity over the ring basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<Vec<usize>, Q>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        TensorElement {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Vec<usize>, c: Q) {
        assert_eq!(word.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[usize]) -> Q {
        self.terms.get(word).cloned().unwrap_or_else(Q::zero)
    }

    /// Graded product of tensor words: slotwise ring multiplication with
    /// the Koszul sign from moving the right factors past the left ones.
    pub fn mul(&self, other: &TensorElement, ring: &GradedRing) -> TensorElement {
        assert_eq!(self.arity, other.arity);
        let mut out = TensorElement::zero(self.arity);
        for (u, cu) in self.terms() {
            for (v, cv) in other.terms() {
                // sign: each v_j passes u_{j+1},...,u_n
                let mut exp = 0usize;
                for j in 0..self.arity {
                    for i in (j + 1)..self.arity {
                        exp += ring.degree(v[j]) * ring.degree(u[i]);
                    }
                }
                let mut words: Vec<(Vec<usize>, Q)> =
                    vec![(Vec::with_capacity(self.arity), cu.clone() * cv.clone() * sign_pow(exp))];
                for slot in 0..self.arity {
                    let mut next = Vec::new();
                    for (prefix, c) in &words {
                        for (k, ck) in ring.mul_basis(u[slot], v[slot]) {
                            let mut w = prefix.clone();
                            w.push(*k);
                            next.push((w, c.clone() * ck.clone()));
                        }
                    }
                    words = next;
                    if words.is_empty() {
                        break;
                    }
                }
                for (w, c) in words {
                    out.add_term(w, c);
                }
            }
        }
        out
    }
}

/// A validated graded-commutative Poincare-duality algebra over `Q`.
#[derive(Clone)]
pub struct GradedRing {
    name: String,
    symbols: Vec<String>,
    degrees: Vec<usize>,
    top_degree: usize,
    fundamental: usize,
    /// `products[i][j]` is the sparse expansion of `x_i * x_j`.
    products: Vec<Vec<Vec<(usize, Q)>>>,
    /// `duals[i]` is the expansion of `y^i`, with `x_i * y^i = w`.
    duals: Vec<Vec<(usize, Q)>>,
    /// Diagonal class as a list of `(s, t, c)` with `Delta = sum c * x_s (x) x_t`.
    diagonal: Vec<(usize, usize, Q)>,
}

impl fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedRing({}, B={})", self.name, self.symbols.len())
    }
}

impl GradedRing {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of basis elements.
    pub fn dim(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbol(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    pub fn symbol_index(&self, sym: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == sym)
    }

    pub fn degree(&self, index: usize) -> usize {
        self.degrees[index]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Top degree `D = 2m`.
    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    /// Complex dimension `m`.
    pub fn m(&self) -> usize {
        self.top_degree / 2
    }

    /// Degree of the exterior generators, `2m - 1`.
    pub fn gen_degree(&self) -> usize {
        self.top_degree - 1
    }

    pub fn unit_index(&self) -> usize {
        0
    }

    pub fn fundamental_index(&self) -> usize {
        self.fundamental
    }

    pub fn betti(&self, degree: usize) -> usize {
        self.degrees.iter().filter(|&&d| d == degree).count()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.products[i][j]
    }

    /// Bilinear product of two elements.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (i, ci) in a.terms() {
            for (j, cj) in b.terms() {
                for (k, ck) in self.mul_basis(i, j) {
                    out.add_term(*k, ci.clone() * cj.clone() * ck.clone());
                }
            }
        }
        out
    }

    /// Coefficient of `w` in `x_i * x_j`.
    pub fn pairing(&self, i: usize, j: usize) -> Q {
        self.products[i][j]
            .iter()
            .find(|(k, _)| *k == self.fundamental)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }

    /// The dual basis `y^1..y^B` with `x_i y^j = delta_ij w`.
    pub fn dual_basis(&self) -> Vec<RingElement> {
        self.duals
            .iter()
            .map(|d| RingElement::from_terms(d.iter().cloned()))
            .collect()
    }

    pub fn dual_of(&self, index: usize) -> &[(usize, Q)] {
        &self.duals[index]
    }

    /// Diagonal class terms `(s, t, c)`.
    pub fn diagonal(&self) -> &[(usize, usize, Q)] {
        &self.diagonal
    }

    /// `p_ij^*` of the diagonal class inside the `n`-fold tensor power:
    /// slots other than `i`, `j` carry the unit. Indices are 1-based.
    pub fn diagonal_class(&self, n: usize, i: usize, j: usize) -> Result<TensorElement, KrizError> {
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(KrizError::IndexError(format!(
                "diagonal slots ({i},{j}) for n={n}"
            )));
        }
        let mut out = TensorElement::zero(n);
        for (s, t, c) in &self.diagonal {
            let mut word = vec![self.unit_index(); n];
            if i < j {
                word[i - 1] = *s;
                word[j - 1] = *t;
            } else {
                // Delta is graded-symmetric, so swapping the two slots with
                // the Koszul sign gives the same class.
                word[j - 1] = *t;
                word[i - 1] = *s;
            }
            out.add_term(word, c.clone());
        }
        Ok(out)
    }

    /// One-line description used by `ring-check`.
    pub fn summary(&self) -> String {
        let degs: Vec<String> = self
            .symbols
            .iter()
            .zip(&self.degrees)
            .map(|(s, d)| format!("{s}:{d}"))
            .collect();
        let betti: Vec<String> = (0..=self.top_degree)
            .map(|d| self.betti(d).to_string())
            .collect();
        format!(
            "ring {} B={} D={} basis {} betti ({})",
            self.name,
            self.dim(),
            self.top_degree,
            degs.join(" "),
            betti.join(",")
        )
    }
}

/// Unvalidated ring data as read from a spec document or preset.
struct RawRing {
    name: String,
    symbols: Vec<String>,
    degrees: Vec<usize>,
    top_degree: usize,
    fundamental: String,
    muls: Vec<(usize, String, String, Vec<(Q, String)>)>,
}

impl RawRing {
    fn build(self) -> Result<GradedRing, KrizError> {
        let b = self.symbols.len();
        let viol = |msg: String| Err(KrizError::InvariantViolation(msg));

        if b == 0 {
            return viol("empty basis".into());
        }
        if self.symbols[0] != "1" || self.degrees[0] != 0 {
            return viol("first basis element must be the unit `1` of degree 0".into());
        }
        if self.degrees.iter().filter(|&&d| d == 0).count() != 1 {
            return viol("degree-0 component must be one-dimensional".into());
        }
        if self.degrees.windows(2).any(|w| w[0] > w[1]) {
            return viol("basis degrees must be non-decreasing".into());
        }
        if self.top_degree == 0 || !self.top_degree.is_multiple_of(2) {
            return viol(format!(
                "top degree must be even and positive, got {}",
                self.top_degree
            ));
        }
        let mut seen = std::collections::HashSet::new();
        for s in &self.symbols {
            if !seen.insert(s.clone()) {
                return viol(format!("duplicate basis symbol {s}"));
            }
        }
        let fundamental = self
            .symbols
            .iter()
            .position(|s| *s == self.fundamental)
            .ok_or_else(|| {
                KrizError::InvariantViolation(format!(
                    "fundamental symbol {} not in basis",
                    self.fundamental
                ))
            })?;
        if self.degrees[fundamental] != self.top_degree {
            return viol(format!(
                "fundamental class must have degree {}, got {}",
                self.top_degree, self.degrees[fundamental]
            ));
        }
        if self.degrees.iter().any(|&d| d > self.top_degree) {
            return viol("basis degree exceeds the top degree".into());
        }
        if self
            .degrees
            .iter()
            .filter(|&&d| d == self.top_degree)
            .count()
            != 1
        {
            return viol("top-degree component must be one-dimensional".into());
        }

        // Assemble the product table: listed products, then unit and
        // graded-commutative completion, then zero fill.
        let mut table: Vec<Vec<Option<Vec<(usize, Q)>>>> = vec![vec![None; b]; b];
        let index_of = |sym: &str| -> Result<usize, KrizError> {
            self.symbols.iter().position(|s| s == sym).ok_or_else(|| {
                KrizError::InvariantViolation(format!("unknown symbol {sym} in mul"))
            })
        };
        for (line, a_sym, b_sym, rhs) in &self.muls {
            let i = index_of(a_sym).map_err(|_| KrizError::Parse {
                line: *line,
                msg: format!("unknown symbol {a_sym}"),
            })?;
            let j = index_of(b_sym).map_err(|_| KrizError::Parse {
                line: *line,
                msg: format!("unknown symbol {b_sym}"),
            })?;
            let mut el = RingElement::zero();
            for (c, sym) in rhs {
                let k = index_of(sym).map_err(|_| KrizError::Parse {
                    line: *line,
                    msg: format!("unknown symbol {sym}"),
                })?;
                el.add_term(k, c.clone());
            }
            let entry: Vec<(usize, Q)> = el.terms().map(|(k, c)| (k, c.clone())).collect();
            if let Some(prev) = &table[i][j] {
                if *prev != entry {
                    return viol(format!("product {a_sym}*{b_sym} listed twice inconsistently"));
                }
            }
            table[i][j] = Some(entry);
        }
        // unit completion
        for i in 0..b {
            let unit_row = vec![(i, q_one())];
            for (a, bb) in [(0, i), (i, 0)] {
                match &table[a][bb] {
                    None => table[a][bb] = Some(unit_row.clone()),
                    Some(e) if *e == unit_row => {}
                    Some(_) => return viol(format!("unit product with {} is wrong", self.symbols[i])),
                }
            }
        }
        // graded-commutative completion and check
        for i in 0..b {
            for j in 0..b {
                let sign = sign_pow(self.degrees[i] * self.degrees[j]);
                let flipped = |e: &Vec<(usize, Q)>| -> Vec<(usize, Q)> {
                    e.iter()
                        .map(|(k, c)| (*k, c.clone() * sign.clone()))
                        .collect()
                };
                match (table[i][j].clone(), table[j][i].clone()) {
                    (Some(e), None) => table[j][i] = Some(flipped(&e)),
                    (Some(e), Some(f))
                        if flipped(&e) != f => {
                            return viol(format!(
                                "graded commutativity fails for {}*{}",
                                self.symbols[i], self.symbols[j]
                            ));
                        }
                    _ => {}
                }
            }
        }
        let products: Vec<Vec<Vec<(usize, Q)>>> = table
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.unwrap_or_default()).collect())
            .collect();

        let mut ring = GradedRing {
            name: self.name,
            symbols: self.symbols,
            degrees: self.degrees,
            top_degree: self.top_degree,
            fundamental,
            products,
            duals: Vec::new(),
            diagonal: Vec::new(),
        };
        ring.validate_axioms()?;
        ring.duals = ring.solve_duals()?;
        ring.diagonal = ring.build_diagonal();
        ring.validate_diagonal()?;
        Ok(ring)
    }
}

impl GradedRing {
    fn validate_axioms(&self) -> Result<(), KrizError> {
        let b = self.dim();
        let viol = |msg: String| Err(KrizError::InvariantViolation(msg));
        // degree additivity (products over the top degree must vanish)
        for i in 0..b {
            for j in 0..b {
                for (k, c) in &self.products[i][j] {
                    if c.is_zero() {
                        continue;
                    }
                    if self.degrees[*k] != self.degrees[i] + self.degrees[j] {
                        return viol(format!(
                            "degree additivity fails at {}*{}",
                            self.symbols[i], self.symbols[j]
                        ));
                    }
                }
            }
        }
        // odd squares vanish
        for i in 0..b {
            if self.degrees[i] % 2 == 1 && !self.products[i][i].is_empty() {
                return viol(format!("odd square {}^2 must vanish", self.symbols[i]));
            }
        }
        // associativity on all basis triples
        for i in 0..b {
            for j in 0..b {
                for k in 0..b {
                    let ij = RingElement::from_terms(self.products[i][j].iter().cloned());
                    let jk = RingElement::from_terms(self.products[j][k].iter().cloned());
                    let left = self.mul(&ij, &RingElement::basis(k));
                    let right = self.mul(&RingElement::basis(i), &jk);
                    if left != right {
                        return viol(format!(
                            "associativity fails at ({},{},{})",
                            self.symbols[i], self.symbols[j], self.symbols[k]
                        ));
                    }
                }
            }
        }
        // Poincare pairing nondegenerate in each complementary degree pair
        for e in 0..=self.top_degree {
            let rows: Vec<usize> = (0..b).filter(|&i| self.degrees[i] == e).collect();
            let cols: Vec<usize> = (0..b)
                .filter(|&i| self.degrees[i] == self.top_degree - e)
                .collect();
            if rows.len() != cols.len() {
                return viol(format!(
                    "pairing degenerate at degree {e}: betti {} vs {}",
                    rows.len(),
                    cols.len()
                ));
            }
            if rows.is_empty() {
                continue;
            }
            let mat: Vec<Vec<Q>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| self.pairing(i, j)).collect())
                .collect();
            if !is_invertible(&mat) {
                return viol(format!("pairing degenerate at degree {e}"));
            }
        }
        Ok(())
    }

    fn solve_duals(&self) -> Result<Vec<Vec<(usize, Q)>>, KrizError> {
        let b = self.dim();
        let mut duals = vec![Vec::new(); b];
        for e in 0..=self.top_degree {
            let rows: Vec<usize> = (0..b).filter(|&i| self.degrees[i] == e).collect();
            if rows.is_empty() {
                continue;
            }
            let cols: Vec<usize> = (0..b)
                .filter(|&i| self.degrees[i] == self.top_degree - e)
                .collect();
            let mat: Vec<Vec<Q>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| self.pairing(i, j)).collect())
                .collect();
            let inv = invert(&mat).ok_or(KrizError::SingularPairing(e))?;
            // column a of the inverse expresses the dual of rows[a]
            for (a, &i) in rows.iter().enumerate() {
                let mut d = Vec::new();
                for (r, &j) in cols.iter().enumerate() {
                    if !inv[r][a].is_zero() {
                        d.push((j, inv[r][a].clone()));
                    }
                }
                duals[i] = d;
            }
        }
        Ok(duals)
    }

    /// `Delta = sum_t (-1)^{deg x_t} x_t (x) y^t`, expanded over the basis.
    fn build_diagonal(&self) -> Vec<(usize, usize, Q)> {
        let mut terms: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for t in 0..self.dim() {
            let sign = sign_pow(self.degrees[t]);
            for (u, c) in &self.duals[t] {
                let entry = terms.entry((t, *u)).or_insert_with(Q::zero);
                *entry += sign.clone() * c.clone();
            }
        }
        terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((s, t), c)| (s, t, c))
            .collect()
    }

    fn validate_diagonal(&self) -> Result<(), KrizError> {
        let delta = self.diagonal_class(2, 1, 2).expect("valid slots");
        // graded symmetry: swapping the slots with Koszul signs is identity
        let mut swapped = TensorElement::zero(2);
        for (word, c) in delta.terms() {
            let sign = sign_pow(self.degree(word[0]) * self.degree(word[1]));
            swapped.add_term(vec![word[1], word[0]], c.clone() * sign);
        }
        if swapped != delta {
            return Err(KrizError::InvariantViolation(
                "diagonal class is not graded-symmetric".into(),
            ));
        }
        // absorption: (x (x) 1 - 1 (x) x) * Delta = 0 for every basis x
        for i in 0..self.dim() {
            let mut left = TensorElement::zero(2);
            left.add_term(vec![i, self.unit_index()], q_one());
            let mut right = TensorElement::zero(2);
            right.add_term(vec![self.unit_index(), i], q_one());
            if left.mul(&delta, self).add(&right.mul(&delta, self).neg()) != TensorElement::zero(2)
            {
                return Err(KrizError::InvariantViolation(format!(
                    "diagonal absorption fails for {}",
                    self.symbols[i]
                )));
            }
        }
        Ok(())
    }
}

impl TensorElement {
    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> TensorElement {
        TensorElement {
            arity: self.arity,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect(),
        }
    }
}

fn is_invertible(mat: &[Vec<Q>]) -> bool {
    invert(mat).is_some()
}

/// Dense exact inverse of a small square matrix, `None` if singular.
fn invert(mat: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = mat.len();
    let mut a: Vec<Vec<Q>> = mat.to_vec();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { q_one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= p.clone();
            inv[col][j] /= p.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let av = a[col][j].clone();
                    let iv = inv[col][j].clone();
                    a[r][j] -= f.clone() * av;
                    inv[r][j] -= f.clone() * iv;
                }
            }
        }
    }
    Some(inv)
}

/// Parse a ring-spec document.
///
/// The format is line-oriented with `#` comments:
///
/// ```text
/// ring CP2
/// topdeg 4
/// basis 1:0 h:2 w:4
/// fundamental w
/// mul h*h = w
/// ```
///
/// Products not listed default to zero; unit products and graded-commutative
/// mirrors are filled in automatically. Rationals are written `p/q` or as
/// plain integers.
pub fn parse_ring(text: &str) -> Result<GradedRing, KrizError> {
    let mut name = None;
    let mut topdeg = None;
    let mut basis: Vec<(String, usize)> = Vec::new();
    let mut fundamental = None;
    let mut muls = Vec::new();

    for (lineno, raw_line) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw_line.split_once('#') {
            Some((before, _)) => before,
            None => raw_line,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: &str| KrizError::Parse {
            line,
            msg: msg.into(),
        };
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match keyword {
            "ring" => {
                if rest.is_empty() {
                    return Err(err("missing ring name"));
                }
                name = Some(rest.to_string());
            }
            "topdeg" => {
                topdeg = Some(rest.parse::<usize>().map_err(|_| err("bad top degree"))?);
            }
            "basis" => {
                for item in rest.split_whitespace() {
                    let (sym, deg) = item.split_once(':').ok_or_else(|| err("basis items are sym:deg"))?;
                    let deg = deg.parse::<usize>().map_err(|_| err("bad basis degree"))?;
                    basis.push((sym.to_string(), deg));
                }
            }
            "fundamental" => {
                if rest.is_empty() {
                    return Err(err("missing fundamental symbol"));
                }
                fundamental = Some(rest.to_string());
            }
            "mul" => {
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err("mul needs `=`"))?;
                let (a, b) = lhs.trim().split_once('*').ok_or_else(|| err("mul lhs is a*b"))?;
                let rhs = rhs.trim();
                let mut terms = Vec::new();
                if rhs != "0" {
                    for part in rhs.split('+') {
                        let part = part.trim();
                        let (c, sym) = match part.split_once('*') {
                            Some((c, sym)) => {
                                (parse_q(c).ok_or_else(|| err("bad rational coefficient"))?, sym.trim())
                            }
                            None => (q_one(), part),
                        };
                        if sym.is_empty() {
                            return Err(err("missing symbol in mul right-hand side"));
                        }
                        terms.push((c, sym.to_string()));
                    }
                }
                muls.push((line, a.trim().to_string(), b.trim().to_string(), terms));
            }
            _ => return Err(err(&format!("unknown keyword {keyword}"))),
        }
    }

    let raw = RawRing {
        name: name.ok_or(KrizError::Parse {
            line: 0,
            msg: "missing `ring` line".into(),
        })?,
        top_degree: topdeg.ok_or(KrizError::Parse {
            line: 0,
            msg: "missing `topdeg` line".into(),
        })?,
        symbols: basis.iter().map(|(s, _)| s.clone()).collect(),
        degrees: basis.iter().map(|(_, d)| *d).collect(),
        fundamental: fundamental.ok_or(KrizError::Parse {
            line: 0,
            msg: "missing `fundamental` line".into(),
        })?,
        muls,
    };
    raw.build()
}

/// Built-in rings: `cp(m)` is the degree-truncated polynomial algebra on a
/// degree-2 class, `curve(g)` the cohomology of a genus-g curve.
pub fn preset_ring(name: &str, param: usize) -> Result<GradedRing, KrizError> {
    match name {
        "cp" => {
            if param == 0 {
                return Err(KrizError::UnknownPreset("cp:0".into()));
            }
            let m = param;
            let mut text = format!("ring cp{m}\ntopdeg {}\nbasis 1:0", 2 * m);
            for i in 1..=m {
                let sym = cp_symbol(i, m);
                text.push_str(&format!(" {sym}:{}", 2 * i));
            }
            text.push_str("\nfundamental w\n");
            for i in 1..=m {
                for j in i..=m {
                    let prod = if i + j <= m {
                        format!("1*{}", cp_symbol(i + j, m))
                    } else {
                        "0".into()
                    };
                    text.push_str(&format!("mul {}*{} = {}\n", cp_symbol(i, m), cp_symbol(j, m), prod));
                }
            }
            parse_ring(&text)
        }
        "curve" => {
            let g = param;
            if g == 0 {
                return preset_ring("cp", 1);
            }
            let mut text = String::from("ring curve");
            text.push_str(&format!("{g}\ntopdeg 2\nbasis 1:0"));
            for i in 1..=g {
                text.push_str(&format!(" a{i}:1"));
            }
            for i in 1..=g {
                text.push_str(&format!(" b{i}:1"));
            }
            text.push_str(" w:2\nfundamental w\n");
            for i in 1..=g {
                text.push_str(&format!("mul a{i}*b{i} = w\n"));
            }
            parse_ring(&text)
        }
        _ => Err(KrizError::UnknownPreset(format!("{name}:{param}"))),
    }
}

fn cp_symbol(i: usize, m: usize) -> String {
    if i == m {
        "w".into()
    } else if i == 1 {
        "h".into()
    } else {
        format!("h{i}")
    }
}

/// Resolve `cp:m` / `curve:g` preset descriptors.
pub fn ring_from_descriptor(desc: &str) -> Result<GradedRing, KrizError> {
    match desc.split_once(':') {
        Some((name, param)) => {
            let param: usize = param
                .parse()
                .map_err(|_| KrizError::UnknownPreset(desc.into()))?;
            preset_ring(name, param)
        }
        None => Err(KrizError::UnknownPreset(desc.into())),
    }
}

/// Text form of a ring element, e.g. `w + 2*h`.
pub fn format_ring_element(ring: &GradedRing, el: &RingElement) -> String {
    if el.is_zero() {
        return "0".into();
    }
    el.terms()
        .map(|(i, c)| {
            if c == &q_one() {
                ring.symbol(i).to_string()
            } else {
                format!("{}*{}", format_q(c), ring.symbol(i))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnum::qi;

    fn cp(m: usize) -> GradedRing {
        preset_ring("cp", m).unwrap()
    }

    fn curve(g: usize) -> GradedRing {
        preset_ring("curve", g).unwrap()
    }

    #[test]
    fn cp1_parses() {
        let r = cp(1);
        assert_eq!(r.dim(), 2);
        assert_eq!(r.top_degree(), 2);
        assert_eq!(r.symbol(1), "w");
        // w * w = 0
        assert!(r.mul_basis(1, 1).is_empty());
    }

    #[test]
    fn cp2_parses_and_multiplies() {
        let r = cp(2);
        assert_eq!(r.dim(), 3);
        assert_eq!(r.top_degree(), 4);
        let h = RingElement::basis(1);
        let hh = r.mul(&h, &h);
        assert_eq!(hh, RingElement::basis(2));
        // degree 6 > D: h * w = 0
        let w = RingElement::basis(2);
        assert!(r.mul(&h, &w).is_zero());
    }

    #[test]
    fn cp3_has_expected_degrees() {
        let r = cp(3);
        assert_eq!(r.dim(), 4);
        assert_eq!(r.degrees(), &[0, 2, 4, 6]);
    }

    #[test]
    fn curve2_betti_and_anticommutativity() {
        let r = curve(2);
        assert_eq!(r.dim(), 6);
        assert_eq!(r.betti(0), 1);
        assert_eq!(r.betti(1), 4);
        assert_eq!(r.betti(2), 1);
        let a1 = r.symbol_index("a1").unwrap();
        let b1 = r.symbol_index("b1").unwrap();
        let w = r.fundamental_index();
        // a1*b1 = w and b1*a1 = -w from graded-commutative completion
        assert_eq!(r.mul_basis(a1, b1), &[(w, qi(1))]);
        assert_eq!(r.mul_basis(b1, a1), &[(w, qi(-1))]);
    }

    #[test]
    fn invalid_rings_are_rejected() {
        // inconsistent with graded commutativity
        let bad = "ring bad\ntopdeg 2\nbasis 1:0 a:1 b:1 w:2\nfundamental w\n\
                   mul a*b = w\nmul b*a = w\n";
        assert!(matches!(
            parse_ring(bad),
            Err(KrizError::InvariantViolation(_))
        ));
        // degenerate pairing: a pairs with nothing
        let degen = "ring degen\ntopdeg 2\nbasis 1:0 a:1 b:1 w:2\nfundamental w\n";
        let err = parse_ring(degen).unwrap_err();
        assert!(matches!(err, KrizError::InvariantViolation(_)));
        // parse error carries a line number
        let syntax = "ring x\ntopdeg 2\nbasis 1:0 w:2\nfundamental w\nmul w w = 0\n";
        assert!(matches!(parse_ring(syntax), Err(KrizError::Parse { line: 5, .. })));
    }

    #[test]
    fn dual_basis_defining_relation() {
        for ring in [cp(1), cp(2), cp(3), curve(1), curve(2)] {
            let duals = ring.dual_basis();
            let w = RingElement::basis(ring.fundamental_index());
            for i in 0..ring.dim() {
                for (j, d) in duals.iter().enumerate() {
                    let prod = ring.mul(&RingElement::basis(i), d);
                    let w_coeff = prod.coeff(ring.fundamental_index());
                    assert_eq!(
                        w_coeff,
                        if i == j { qi(1) } else { qi(0) },
                        "pairing x_{i} y^{j} in {}",
                        ring.name()
                    );
                    // in complementary degrees the product is exactly
                    // delta_ij w
                    if ring.degree(i) == ring.degree(j) {
                        if i == j {
                            assert_eq!(prod, w, "x_i y^i = w in {}", ring.name());
                        } else {
                            assert!(prod.is_zero(), "x_i y^j = 0 in {}", ring.name());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cp_duals_are_reversed_basis() {
        let r = cp(2);
        let duals = r.dual_basis();
        assert_eq!(duals[0], RingElement::basis(2)); // dual of 1 is w
        assert_eq!(duals[1], RingElement::basis(1)); // dual of h is h
        assert_eq!(duals[2], RingElement::basis(0)); // dual of w is 1
    }

    #[test]
    fn curve_duals_have_signs() {
        let r = curve(2);
        let duals = r.dual_basis();
        let a1 = r.symbol_index("a1").unwrap();
        let b1 = r.symbol_index("b1").unwrap();
        assert_eq!(duals[a1], RingElement::basis(b1));
        assert_eq!(duals[b1], RingElement::basis(a1).scale(&qi(-1)));
    }

    #[test]
    fn dual_of_dual_recovers_basis_up_to_sign() {
        for ring in [cp(2), curve(2)] {
            let duals = ring.dual_basis();
            for i in 0..ring.dim() {
                let mut dd = RingElement::zero();
                for (j, c) in duals[i].terms() {
                    dd = dd.add(&duals[j].scale(c));
                }
                let sign = sign_pow(ring.degree(i));
                assert_eq!(dd, RingElement::basis(i).scale(&sign));
            }
        }
    }

    #[test]
    fn diagonal_term_counts() {
        for m in 1..=3 {
            assert_eq!(cp(m).diagonal().len(), m + 1);
        }
        for g in 1..=2 {
            assert_eq!(curve(g).diagonal().len(), 2 * g + 2);
        }
    }

    #[test]
    fn cp1_diagonal_matches_closed_form() {
        let r = cp(1);
        let d = r.diagonal_class(2, 1, 2).unwrap();
        let mut expected = TensorElement::zero(2);
        expected.add_term(vec![1, 0], qi(1));
        expected.add_term(vec![0, 1], qi(1));
        assert_eq!(d, expected);
    }

    #[test]
    fn cp2_diagonal_matches_closed_form() {
        let r = cp(2);
        let d = r.diagonal_class(2, 1, 2).unwrap();
        let mut expected = TensorElement::zero(2);
        expected.add_term(vec![2, 0], qi(1));
        expected.add_term(vec![1, 1], qi(1));
        expected.add_term(vec![0, 2], qi(1));
        assert_eq!(d, expected);
    }

    #[test]
    fn diagonal_slot_placement() {
        let r = cp(1);
        let d = r.diagonal_class(3, 1, 3).unwrap();
        let mut expected = TensorElement::zero(3);
        expected.add_term(vec![1, 0, 0], qi(1));
        expected.add_term(vec![0, 0, 1], qi(1));
        assert_eq!(d, expected);
        assert!(r.diagonal_class(3, 2, 2).is_err());
        assert!(r.diagonal_class(3, 0, 2).is_err());
        assert!(r.diagonal_class(3, 1, 4).is_err());
    }
}
