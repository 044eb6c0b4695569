//! Named verification suites over a ring and a point count.
//!
//! Each suite returns a list of checks; the command-line front end prints
//! one `PASS`/`FAIL` line per check and sets the exit code.

use num::Zero;
use rayon::prelude::*;

use crate::action::{act, character_direct_cell, character_direct_type, verify_monogenic};
use crate::chars::{
    decompose, inner_product, irreducible_character, partitions, type_character, Partition,
};
use crate::error::KrizError;
use crate::exterior::{bigraded_dims, duality_phi, enumerate_basis, enumerate_types, Element};
use crate::homology::{
    betti_table, cohomology_character, differential, differential_matrix,
    differential_test_vectors, BigradedTable,
};
use crate::perm::Permutation;
use crate::qnum::{qi, Q};
use crate::ring::GradedRing;
use crate::subcomplex;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Differential sanity: squares to zero, is equivariant, matches the
/// closed-form images, and satisfies the alternating-sum consistency.
pub fn suite_diffs(ring: &GradedRing, n: usize) -> Result<Vec<Check>, KrizError> {
    let mut checks = Vec::new();
    let dims = bigraded_dims(ring, n);
    let cells: Vec<(usize, usize)> = dims.cells().map(|(qk, _)| qk).collect();

    let square_fail: Vec<String> = cells
        .par_iter()
        .filter_map(|&(q, k)| {
            if q == 0 {
                return None;
            }
            let d1 = differential_matrix(ring, n, q, k);
            let d2 = differential_matrix(ring, n, q - 1, k + 1);
            (!d2.mul(&d1).is_zero()).then(|| format!("({q},{k})"))
        })
        .collect();
    checks.push(Check::new(
        format!("d-squared-zero n={n} {}", ring.name()),
        square_fail.is_empty(),
        if square_fail.is_empty() {
            format!("{} cells", cells.len())
        } else {
            format!("failing cells: {}", square_fail.join(" "))
        },
    ));

    // equivariance on deterministic sample elements
    let mut equivariant = true;
    for &(q, k) in &cells {
        if q == 0 {
            continue;
        }
        let basis = enumerate_basis(ring, n, q, k);
        let mut el = Element::zero(n);
        for (i, b) in basis.into_iter().take(4).enumerate() {
            el.add_term(b, qi(i as i64 + 1));
        }
        for i in 1..n {
            let tau = Permutation::transposition(n, i);
            let lhs = act(ring, &tau, &differential(ring, &el))?;
            let rhs = differential(ring, &act(ring, &tau, &el)?);
            if lhs != rhs {
                equivariant = false;
            }
        }
    }
    checks.push(Check::new(
        format!("d-equivariance n={n} {}", ring.name()),
        equivariant,
        "Coxeter generators on sample elements",
    ));

    if n >= 4 {
        for check in differential_test_vectors(ring, n)? {
            checks.push(Check::new(
                format!("d-vector {} n={n} {}", check.name, ring.name()),
                check.pass,
                check.detail,
            ));
        }
    }

    // alternating sums along the diagonals k + q = c agree between the
    // model and its cohomology
    let betti = betti_table(ring, n);
    let mut euler_ok = true;
    let top = 2 * ring.m() * n + n;
    for c in 0..=top {
        let mut alt_e = 0i64;
        let mut alt_h = 0i64;
        for q in 0..n {
            if c >= q {
                let sign = if q % 2 == 0 { 1 } else { -1 };
                alt_e += sign * dims.get(q, c - q) as i64;
                alt_h += sign * betti.get(q, c - q) as i64;
            }
        }
        if alt_e != alt_h {
            euler_ok = false;
        }
    }
    checks.push(Check::new(
        format!("euler-diagonals n={n} {}", ring.name()),
        euler_ok,
        "alternating sums match cohomology",
    ));
    Ok(checks)
}

/// Left-edge and top-row injectivity; on the projective line instead the
/// documented exceptional kernel.
pub fn suite_injectivity(ring: &GradedRing, n: usize) -> Result<Vec<Check>, KrizError> {
    let mut checks = Vec::new();
    let gen_deg = ring.gen_degree();
    let exceptional = ring.m() == 1 && ring.dim() == 2;

    if !exceptional {
        let mut pass = true;
        let mut detail = Vec::new();
        for q in 1..n {
            let m = differential_matrix(ring, n, q, q * gen_deg);
            let dim = m.cols();
            let rank = m.rank();
            detail.push(format!("q={q}:{rank}/{dim}"));
            if rank != dim {
                pass = false;
            }
        }
        checks.push(Check::new(
            format!("left-edge-injective n={n} {}", ring.name()),
            pass,
            detail.join(" "),
        ));
    } else {
        // the line: injective only at the last two columns of the edge
        let mut pass = true;
        for q in [n.saturating_sub(2), n - 1] {
            if q == 0 {
                continue;
            }
            let m = differential_matrix(ring, n, q, q);
            if m.rank() != m.cols() {
                pass = false;
            }
        }
        checks.push(Check::new(
            format!("line-edge-injective n={n}"),
            pass,
            "last two edge cells",
        ));
        if n >= 4 {
            let chi = cohomology_character(ring, n, 1, 1)?;
            let expected = irreducible_character(&Partition::new(vec![n - 2, 2]));
            checks.push(Check::new(
                format!("line-kernel-character n={n}"),
                chi == expected,
                format!("V({},2) in the first-edge kernel", n - 2),
            ));
        }
    }

    let mut pass = true;
    let mut detail = Vec::new();
    for k in (n - 1) * gen_deg..=n * gen_deg + 1 {
        let m = differential_matrix(ring, n, n - 1, k);
        let dim = m.cols();
        if dim == 0 {
            continue;
        }
        let rank = m.rank();
        detail.push(format!("k={k}:{rank}/{dim}"));
        if rank != dim {
            pass = false;
        }
    }
    checks.push(Check::new(
        format!("top-row-injective n={n} {}", ring.name()),
        pass,
        detail.join(" "),
    ));
    Ok(checks)
}

/// Dimension and character equality across the duality pairing.
pub fn suite_duality(ring: &GradedRing, n: usize) -> Result<Vec<Check>, KrizError> {
    let mut checks = Vec::new();
    let m = ring.m();
    let dims = bigraded_dims(ring, n);
    let mut dim_ok = true;
    for ((q, k), d) in dims.cells() {
        let dual_k = 2 * m * n + 2 * q * (m - 1) - k;
        if dims.get(q, dual_k) != d {
            dim_ok = false;
        }
    }
    checks.push(Check::new(
        format!("duality-dimensions n={n} {}", ring.name()),
        dim_ok,
        "mirror cells match",
    ));

    let cells: Vec<(usize, usize)> = dims
        .cells()
        .map(|(qk, _)| qk)
        .filter(|&(q, k)| k <= m * n + q * (m - 1)) // one side of the mirror
        .collect();
    let char_fail: Vec<String> = cells
        .par_iter()
        .filter_map(|&(q, k)| {
            let dual_k = 2 * m * n + 2 * q * (m - 1) - k;
            let a = character_direct_cell(ring, n, q, k).ok()?;
            let b = character_direct_cell(ring, n, q, dual_k).ok()?;
            (a != b).then(|| format!("({q},{k})"))
        })
        .collect();
    checks.push(Check::new(
        format!("duality-characters n={n} {}", ring.name()),
        char_fail.is_empty(),
        if char_fail.is_empty() {
            format!("{} mirror pairs", cells.len())
        } else {
            format!("failing: {}", char_fail.join(" "))
        },
    ));

    // the duality map itself is degree-correct and injective on sample
    // cells
    let mut phi_ok = true;
    for ((q, k), _) in dims.cells() {
        let basis = enumerate_basis(ring, n, q, k);
        for b in basis.into_iter().take(3) {
            let img = duality_phi(ring, &Element::monomial(b))?;
            match img.bidegree(ring)? {
                Some((iq, ik)) => {
                    if iq != q || ik != 2 * m * n + 2 * q * (m - 1) - k {
                        phi_ok = false;
                    }
                }
                None => phi_ok = false,
            }
        }
    }
    checks.push(Check::new(
        format!("duality-map-bidegree n={n} {}", ring.name()),
        phi_ok,
        "images land in the mirror cell",
    ));
    Ok(checks)
}

/// The induced-character cross-oracle: per type block the induced
/// character equals the direct trace character, cell sums match, and small
/// blocks are monogenic.
pub fn suite_characters(ring: &GradedRing, n: usize) -> Result<Vec<Check>, KrizError> {
    let mut checks = Vec::new();
    let dims = bigraded_dims(ring, n);
    let cells: Vec<(usize, usize)> = dims.cells().map(|(qk, _)| qk).collect();

    let results: Vec<Result<(usize, usize, usize, bool, bool), KrizError>> = cells
        .par_iter()
        .map(|&(q, k)| {
            let sigs = enumerate_types(ring, n, q, k);
            let mut sum = crate::chars::Character::zero(n);
            let mut types_ok = true;
            for sig in &sigs {
                let induced = type_character(ring, sig)?;
                let direct = character_direct_type(ring, sig)?;
                if induced != direct {
                    types_ok = false;
                }
                sum = sum.add(&induced);
            }
            let cell_char = character_direct_cell(ring, n, q, k)?;
            Ok((q, k, sigs.len(), types_ok, sum == cell_char))
        })
        .collect();
    let mut type_count = 0usize;
    let mut types_ok = true;
    let mut sums_ok = true;
    let mut failing = Vec::new();
    for r in results {
        let (q, k, count, t_ok, s_ok) = r?;
        type_count += count;
        if !t_ok || !s_ok {
            failing.push(format!("({q},{k})"));
        }
        types_ok &= t_ok;
        sums_ok &= s_ok;
    }
    checks.push(Check::new(
        format!("induced-vs-direct n={n} {}", ring.name()),
        types_ok,
        format!("{type_count} type blocks"),
    ));
    checks.push(Check::new(
        format!("type-sums n={n} {}", ring.name()),
        sums_ok,
        if failing.is_empty() {
            format!("{} cells", cells.len())
        } else {
            format!("failing: {}", failing.join(" "))
        },
    ));

    if n <= 5 {
        let mut monogenic_ok = true;
        let mut blocks = 0usize;
        for &(q, k) in &cells {
            for sig in enumerate_types(ring, n, q, k) {
                let (ok, _) = verify_monogenic(ring, &sig)?;
                monogenic_ok &= ok;
                blocks += 1;
            }
        }
        checks.push(Check::new(
            format!("monogenic-blocks n={n} {}", ring.name()),
            monogenic_ok,
            format!("{blocks} orbits span their blocks"),
        ));
    }

    // orthonormality of the irreducible characters at this size
    let irreducibles: Vec<_> = partitions(n)
        .iter()
        .map(irreducible_character)
        .collect();
    let mut ortho = true;
    for (i, a) in irreducibles.iter().enumerate() {
        for (j, b) in irreducibles.iter().enumerate() {
            let expected = if i == j { qi(1) } else { Q::zero() };
            if inner_product(a, b) != expected {
                ortho = false;
            }
        }
    }
    checks.push(Check::new(
        format!("character-orthonormality n={n}"),
        ortho,
        format!("{} irreducibles", irreducibles.len()),
    ));
    Ok(checks)
}

/// Acyclic subcomplexes: the one-relation algebra homotopy, the right
/// edge, the shifted slices, the summand, and the quotient.
pub fn suite_subcomplexes(ring: &GradedRing, n: usize) -> Result<Vec<Check>, KrizError> {
    let mut checks = Vec::new();
    checks.push(Check::new(
        format!("arnold-homotopy n={n}"),
        subcomplex::arnold_homotopy_check(n),
        "boundary-homotopy identity on every basis word",
    ));
    checks.push(Check::new(
        format!("top-iso n={n} {}", ring.name()),
        subcomplex::top_iso_check(ring, n)?,
        "edge map is a chain isomorphism",
    ));
    checks.push(Check::new(
        format!("top-acyclic n={n} {}", ring.name()),
        subcomplex::top_complex_betti(ring, n)?.total() == 0,
        "right edge has no cohomology",
    ));
    if n <= 4 {
        let mut slices_ok = true;
        let mut count = 0usize;
        for cell in subcomplex::all_top_cells(ring, n) {
            if subcomplex::top_cell_betti(ring, n, &cell)?.total() != 0 {
                slices_ok = false;
            }
            count += 1;
        }
        checks.push(Check::new(
            format!("slices-acyclic n={n} {}", ring.name()),
            slices_ok,
            format!("{count} shifted-edge slices"),
        ));
        checks.push(Check::new(
            format!("classifier n={n} {}", ring.name()),
            subcomplex::verify_classifier(ring, n).is_ok(),
            "slices partition the summand",
        ));
    }
    checks.push(Check::new(
        format!("summand-acyclic n={n} {}", ring.name()),
        subcomplex::w_complex_betti(ring, n)?.total() == 0,
        "acyclic summand has no cohomology",
    ));
    let quotient = subcomplex::se_betti(ring, n);
    let full = betti_table(ring, n);
    checks.push(Check::new(
        format!("quotient-betti n={n} {}", ring.name()),
        quotient == full,
        "quotient and full model agree",
    ));
    Ok(checks)
}

/// Expected Betti table of the configuration spaces of the projective
/// line: the closed product formula for four or more points, the two
/// small cases directly.
pub fn cp1_expected_betti(n: usize) -> BigradedTable {
    let mut table = BigradedTable::new("cp1".into(), n);
    if n == 1 {
        table.set(0, 0, 1);
        return table;
    }
    if n == 2 {
        table.set(0, 0, 1);
        table.set(0, 2, 1);
        return table;
    }
    // (1 + s t^3) * prod_{j=2}^{n-2} (1 + j s t)
    let mut poly: std::collections::BTreeMap<(usize, usize), usize> =
        [((0, 0), 1), ((1, 3), 1)].into_iter().collect();
    for j in 2..=n.saturating_sub(2) {
        let mut next = poly.clone();
        for (&(q, k), &c) in &poly {
            *next.entry((q + 1, k + 1)).or_default() += c * j;
        }
        poly = next;
    }
    for ((q, k), c) in poly {
        table.set(q, k, c);
    }
    table
}

/// Dimension of the second cohomology of the configuration space of the
/// line: `(n-4)(n-3)(3n^2 - n + 2)/24`.
pub fn cp1_expected_beta2(n: usize) -> usize {
    if n < 5 {
        return 0;
    }
    (n - 4) * (n - 3) * (3 * n * n - n + 2) / 24
}

/// Everything specific to the projective line: the product formula, the
/// two-diagonal support, the second cohomology, and the exceptional
/// kernel.
pub fn suite_cp1(ring: &GradedRing, n: usize) -> Result<Vec<Check>, KrizError> {
    assert_eq!(ring.m(), 1, "the suite needs the projective line");
    let mut checks = Vec::new();
    let betti = betti_table(ring, n);
    let expected = cp1_expected_betti(n);
    checks.push(Check::new(
        format!("line-poincare n={n}"),
        betti == expected,
        expected.poincare_polynomial(),
    ));

    if n >= 4 {
        let mut support_ok = true;
        for ((q, k), _) in betti.cells() {
            if !(k == q || k == q + 2 && q >= 1) {
                support_ok = false;
            }
        }
        let mut pairs = Vec::new();
        let mut pairs_ok = true;
        for q in 0..=n - 3 {
            let a = betti.get(q, q);
            let b = betti.get(q + 1, q + 3);
            pairs.push(format!("H_{q}^{q}={a}=H_{}^{}", q + 1, q + 3));
            if a == 0 || a != b {
                pairs_ok = false;
            }
        }
        checks.push(Check::new(
            format!("line-support n={n}"),
            support_ok && pairs_ok,
            pairs.join(" "),
        ));
    }

    if n >= 5 {
        let beta2 = betti.get(2, 2);
        checks.push(Check::new(
            format!("line-beta2 n={n}"),
            beta2 == cp1_expected_beta2(n),
            format!("dim H^2 = {beta2}"),
        ));
        let expected_isotypic: Vec<Partition> = match n {
            5 => vec![Partition::new(vec![3, 1, 1])],
            6 => vec![
                Partition::new(vec![4, 1, 1]),
                Partition::new(vec![3, 2, 1]),
            ],
            _ => vec![
                Partition::new(vec![n - 2, 1, 1]),
                Partition::new(vec![n - 3, 2, 1]),
                Partition::new(vec![n - 4, 3, 1]),
            ],
        };
        let chi = cohomology_character(ring, n, 2, 2)?;
        let parts = decompose(&chi)?;
        let got: Vec<Partition> = parts.iter().map(|(p, _)| p.clone()).collect();
        let mult_one = parts.iter().all(|&(_, m)| m == 1);
        checks.push(Check::new(
            format!("line-h2-isotypic n={n}"),
            got == expected_isotypic && mult_one,
            parts
                .iter()
                .map(|(p, m)| format!("{}x{}", p.v_label(), m))
                .collect::<Vec<_>>()
                .join(" "),
        ));
    }

    if n >= 4 {
        checks.extend(suite_injectivity(ring, n)?);
    }
    Ok(checks)
}
