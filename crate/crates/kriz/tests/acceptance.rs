//! Acceptance suite: every structural claim the engine is expected to
//! reproduce, one test per criterion, all comparisons exact.

use num::Zero;
use rayon::prelude::*;

use kriz::action::{character_direct_cell, character_direct_type, orbit_span_dimension};
use kriz::chars::{
    decompose, inner_product, irreducible_character, partitions, prime_multiplicity,
    type_character, Character,
};
use kriz::exterior::{
    bigraded_dims, enumerate_basis, enumerate_types, monotonic_forests, normalize, type_basis,
    type_dimension, type_generator, RawExpression, Strategy, TypeSignature,
};
use kriz::homology::{betti_table, cohomology_character, differential, differential_matrix};
use kriz::perm::Permutation;
use kriz::qnum::{qi, Q};
use kriz::ring::{preset_ring, GradedRing};
use kriz::verify::{cp1_expected_beta2, cp1_expected_betti};
use kriz::{subcomplex, Element, Partition};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cp(m: usize) -> GradedRing {
    preset_ring("cp", m).unwrap()
}

fn curve(g: usize) -> GradedRing {
    preset_ring("curve", g).unwrap()
}

fn test_rings() -> [GradedRing; 3] {
    [cp(1), cp(2), curve(2)]
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec())
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut r = 1i64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[test]
fn criterion_01_cp1_poincare_polynomials() {
    let r = cp(1);
    for n in 2..=6 {
        let betti = betti_table(&r, n);
        let expected = cp1_expected_betti(n);
        assert_eq!(betti, expected, "Betti table at n={n}");
        if n >= 4 {
            // support only on the two diagonals, with matching dimensions
            for ((q, k), _) in betti.cells() {
                assert!(k == q || (q >= 1 && k == q + 2), "cell ({q},{k}) at n={n}");
            }
            for q in 0..=n - 3 {
                let a = betti.get(q, q);
                assert!(a > 0, "H_{q}^{q} vanishes at n={n}");
                assert_eq!(a, betti.get(q + 1, q + 3), "pair at q={q}, n={n}");
            }
        }
        println!("PASS criterion 1 (n={n}): {}", betti.poincare_polynomial());
    }
}

#[test]
fn criterion_02_top_row_character_n6() {
    let r = cp(1);
    let chi = character_direct_cell(&r, 6, 5, 5).unwrap();
    let expected = Character::from_fn(6, |ct| {
        if ct == &p(&[1, 1, 1, 1, 1, 1]) {
            qi(120)
        } else if ct == &p(&[6]) {
            qi(-1)
        } else if ct == &p(&[3, 3]) {
            qi(-3)
        } else if ct == &p(&[2, 2, 2]) {
            qi(8)
        } else {
            Q::zero()
        }
    });
    assert_eq!(chi, expected, "top-row character values");
    let parts = decompose(&chi).unwrap();
    let expected_parts = vec![
        (p(&[5, 1]), 1),
        (p(&[4, 2]), 2),
        (p(&[4, 1, 1]), 1),
        (p(&[3, 2, 1]), 3),
        (p(&[3, 1, 1, 1]), 2),
        (p(&[2, 2, 2]), 1),
        (p(&[2, 2, 1, 1]), 1),
        (p(&[2, 1, 1, 1, 1]), 1),
    ];
    assert_eq!(parts, expected_parts, "top-row decomposition");
    println!("PASS criterion 2: top row at n=6 decomposes with 3*V(3,2,1)");
}

#[test]
fn criterion_03_induced_equals_direct() {
    for ring in test_rings() {
        for n in 1..=6 {
            let dims = bigraded_dims(&ring, n);
            let cells: Vec<(usize, usize)> = dims.cells().map(|(qk, _)| qk).collect();
            let all_sigs: Vec<TypeSignature> = cells
                .iter()
                .flat_map(|&(q, k)| enumerate_types(&ring, n, q, k))
                .collect();
            all_sigs.par_iter().for_each(|sig| {
                let induced = type_character(&ring, sig).unwrap();
                let direct = character_direct_type(&ring, sig).unwrap();
                assert_eq!(induced, direct, "{} n={n} type {sig}", ring.name());
                if n <= 5 {
                    // multiplicities inside a single block stay below the
                    // irreducible dimensions
                    for (lambda, mult) in decompose(&induced).unwrap() {
                        assert!(
                            qi(mult as i64) <= irreducible_character(&lambda).dim(),
                            "{} n={n} type {sig}: multiplicity of {lambda}",
                            ring.name()
                        );
                    }
                }
            });
            cells.par_iter().for_each(|&(q, k)| {
                let mut sum = Character::zero(n);
                for sig in enumerate_types(&ring, n, q, k) {
                    sum = sum.add(&type_character(&ring, &sig).unwrap());
                }
                let cell = character_direct_cell(&ring, n, q, k).unwrap();
                assert_eq!(sum, cell, "{} n={n} cell ({q},{k})", ring.name());
            });
            println!(
                "PASS criterion 3 ({} n={n}): {} type blocks",
                ring.name(),
                all_sigs.len()
            );
        }
    }
}

#[test]
fn criterion_04_closed_form_characters_and_decompositions() {
    let r = cp(1);
    // single three-point component, the rest singletons, all marks trivial
    for n in 3..=6 {
        let mut entries = vec![(3usize, 0usize)];
        entries.extend(std::iter::repeat_n((1, 0), n - 3));
        let sig = TypeSignature::new(entries);
        let direct = character_direct_type(&r, &sig).unwrap();
        let induced = type_character(&r, &sig).unwrap();
        for ct in partitions(n) {
            let i1 = ct.multiplicity(1) as i64;
            let i3 = ct.multiplicity(3) as i64;
            let expected = qi(2 * binom(i1, 3) - i3);
            assert_eq!(direct.value(&ct), &expected, "n={n} at {ct}");
        }
        assert_eq!(direct, induced);
        let parts: Vec<(Partition, usize)> = decompose(&direct).unwrap();
        // the n=5 list is forced by the block dimension
        // 5!/3/2! = 20 = 4 + 5 + 6 + 5
        let expected: Vec<(Partition, usize)> = match n {
            3 => vec![(p(&[2, 1]), 1)],
            4 => vec![(p(&[3, 1]), 1), (p(&[2, 2]), 1), (p(&[2, 1, 1]), 1)],
            5 => vec![
                (p(&[4, 1]), 1),
                (p(&[3, 2]), 1),
                (p(&[3, 1, 1]), 1),
                (p(&[2, 2, 1]), 1),
            ],
            _ => vec![
                (p(&[5, 1]), 1),
                (p(&[4, 2]), 1),
                (p(&[4, 1, 1]), 1),
                (p(&[3, 2, 1]), 1),
            ],
        };
        assert_eq!(parts, expected, "three-point block at n={n}");
    }
    // two two-point components, the rest singletons
    for n in 4..=6 {
        let mut entries = vec![(2usize, 0usize), (2, 0)];
        entries.extend(std::iter::repeat_n((1, 0), n - 4));
        let sig = TypeSignature::new(entries);
        let direct = character_direct_type(&r, &sig).unwrap();
        for ct in partitions(n) {
            let i1 = ct.multiplicity(1) as i64;
            let i2 = ct.multiplicity(2) as i64;
            let i4 = ct.multiplicity(4) as i64;
            let expected = qi(3 * binom(i1, 4) + i2 * binom(i1, 2) - binom(i2, 2) - i4);
            assert_eq!(direct.value(&ct), &expected, "n={n} at {ct}");
        }
        let parts: Vec<(Partition, usize)> = decompose(&direct).unwrap();
        // the n=5 list is forced by the block dimension
        // 5!/(2*2)/2! = 15 = 4 + 5 + 6
        let expected: Vec<(Partition, usize)> = match n {
            4 => vec![(p(&[3, 1]), 1)],
            5 => vec![(p(&[4, 1]), 1), (p(&[3, 2]), 1), (p(&[3, 1, 1]), 1)],
            _ => vec![
                (p(&[5, 1]), 1),
                (p(&[4, 2]), 1),
                (p(&[4, 1, 1]), 1),
                (p(&[3, 3]), 1),
                (p(&[3, 2, 1]), 1),
            ],
        };
        assert_eq!(parts, expected, "paired-edges block at n={n}");
    }
    println!("PASS criterion 4: closed-form characters and their decompositions");
}

#[test]
fn criterion_05_injectivity() {
    for ring in [cp(2), curve(2)] {
        let gen_deg = ring.gen_degree();
        for n in 2..=5 {
            for q in 1..n {
                let m = differential_matrix(&ring, n, q, q * gen_deg);
                assert_eq!(m.rank(), m.cols(), "{} left edge q={q} n={n}", ring.name());
            }
            for k in (n - 1) * gen_deg..=n * gen_deg + 1 {
                let m = differential_matrix(&ring, n, n - 1, k);
                assert_eq!(m.rank(), m.cols(), "{} top row k={k} n={n}", ring.name());
            }
        }
    }
    let line = cp(1);
    for n in [4usize, 5] {
        let chi = cohomology_character(&line, n, 1, 1).unwrap();
        assert_eq!(
            chi,
            irreducible_character(&p(&[n - 2, 2])),
            "line kernel at n={n}"
        );
        for q in [n - 2, n - 1] {
            let m = differential_matrix(&line, n, q, q);
            assert_eq!(m.rank(), m.cols(), "line edge q={q} n={n}");
        }
        // the top row of the line is injective as well
        for k in n - 1..=n + 1 {
            let m = differential_matrix(&line, n, n - 1, k);
            assert_eq!(m.rank(), m.cols(), "line top row k={k} n={n}");
        }
    }
    println!("PASS criterion 5: edge and top-row injectivity with the line exception");
}

#[test]
fn criterion_06_acyclic_subcomplexes() {
    for ring in [cp(1), cp(2)] {
        for n in 2..=4 {
            assert_eq!(
                subcomplex::top_complex_betti(&ring, n).unwrap().total(),
                0,
                "{} right edge n={n}",
                ring.name()
            );
            assert_eq!(
                subcomplex::w_complex_betti(&ring, n).unwrap().total(),
                0,
                "{} summand n={n}",
                ring.name()
            );
            assert_eq!(
                subcomplex::se_betti(&ring, n),
                betti_table(&ring, n),
                "{} quotient n={n}",
                ring.name()
            );
        }
    }
    for n in 2..=6 {
        assert!(
            subcomplex::arnold_homotopy_check(n),
            "homotopy identity n={n}"
        );
    }
    println!("PASS criterion 6: acyclicity and the quotient quasi-isomorphism");
}

#[test]
fn criterion_07_structural_counts() {
    for n in 2..=8 {
        let trees = monotonic_forests(n, n - 1).len();
        let expected: usize = (1..n).product();
        assert_eq!(trees, expected, "trees on {n} vertices");
    }
    // the five-point example block: 40 for distinct singleton marks,
    // 20 for equal ones
    let r = cp(2);
    let (h, w) = (1usize, 2usize);
    let distinct = TypeSignature::new(vec![(3, 0), (1, w), (1, h)]);
    assert_eq!(type_dimension(&distinct), 40);
    assert_eq!(type_basis(&r, &distinct).len(), 40);
    let equal = TypeSignature::new(vec![(3, 0), (1, w), (1, w)]);
    assert_eq!(type_dimension(&equal), 20);
    assert_eq!(type_basis(&r, &equal).len(), 20);
    // restricted top type: the point-stabilizer orbit of the full bamboo
    // already spans
    let line = cp(1);
    for n in 3..=6 {
        let sig = TypeSignature::new(vec![(n, line.fundamental_index())]);
        let basis = type_basis(&line, &sig);
        let gens: Vec<Permutation> = (1..n - 1)
            .map(|i| Permutation::transposition(n, i))
            .collect();
        let seed = Element::monomial(type_generator(&sig));
        let dim = orbit_span_dimension(&line, &seed, &gens, &basis).unwrap();
        let expected: usize = (1..n).product();
        assert_eq!(dim, expected, "restricted span at n={n}");
        assert_eq!(basis.len(), expected);
    }
    println!("PASS criterion 7: factorial tree counts and block dimensions");
}

#[test]
fn criterion_08_duality() {
    let ring = cp(2);
    let m = ring.m();
    for n in 2..=5 {
        let dims = bigraded_dims(&ring, n);
        for ((q, k), d) in dims.cells() {
            let dual_k = 2 * m * n + 2 * q * (m - 1) - k;
            assert_eq!(dims.get(q, dual_k), d, "dims at ({q},{k}) n={n}");
        }
        let cells: Vec<(usize, usize)> = dims
            .cells()
            .map(|(qk, _)| qk)
            .filter(|&(q, k)| 2 * k <= 2 * m * n + 2 * q * (m - 1))
            .collect();
        cells.par_iter().for_each(|&(q, k)| {
            let dual_k = 2 * m * n + 2 * q * (m - 1) - k;
            let a = character_direct_cell(&ring, n, q, k).unwrap();
            let b = character_direct_cell(&ring, n, q, dual_k).unwrap();
            assert_eq!(a, b, "characters at ({q},{k}) vs ({q},{dual_k}) n={n}");
        });
    }
    println!("PASS criterion 8: duality of dimensions and characters");
}

#[test]
fn criterion_09_property_suite() {
    // d squared vanishes everywhere
    for ring in test_rings() {
        for n in 2..=5 {
            let dims = bigraded_dims(&ring, n);
            let cells: Vec<(usize, usize)> = dims.cells().map(|(qk, _)| qk).collect();
            cells.par_iter().for_each(|&(q, k)| {
                if q == 0 {
                    return;
                }
                let d1 = differential_matrix(&ring, n, q, k);
                let d2 = differential_matrix(&ring, n, q - 1, k + 1);
                assert!(d2.mul(&d1).is_zero(), "{} ({q},{k}) n={n}", ring.name());
            });
        }
    }
    // equivariance of d on random elements
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for ring in test_rings() {
        for n in 2..=5 {
            for _ in 0..5 {
                let q = rng.gen_range(1..n);
                let k = q * ring.gen_degree() + rng.gen_range(0..=ring.top_degree());
                let basis = enumerate_basis(&ring, n, q, k);
                if basis.is_empty() {
                    continue;
                }
                let mut el = Element::zero(n);
                for b in &basis {
                    if rng.gen_bool(0.5) {
                        el.add_term(b.clone(), qi(rng.gen_range(-3..=3)));
                    }
                }
                for i in 1..n {
                    let tau = Permutation::transposition(n, i);
                    let lhs = kriz::action::act(&ring, &tau, &differential(&ring, &el)).unwrap();
                    let rhs = differential(&ring, &kriz::action::act(&ring, &tau, &el).unwrap());
                    assert_eq!(lhs, rhs, "{} n={n} ({q},{k})", ring.name());
                }
            }
        }
    }
    // confluence of the two rewriting strategies on 1000 expressions per
    // ring
    for ring in test_rings() {
        let mut rng = ChaCha8Rng::seed_from_u64(777);
        for _ in 0..1000 {
            let n = rng.gen_range(2..=5);
            let mut raw = RawExpression::new(n);
            for _ in 0..rng.gen_range(1..=3) {
                let marks: Vec<usize> = (0..n).map(|_| rng.gen_range(0..ring.dim())).collect();
                let gens: Vec<(usize, usize)> = (0..rng.gen_range(0..=5))
                    .map(|_| {
                        let a = rng.gen_range(1..=n);
                        let mut b = rng.gen_range(1..=n - 1);
                        if b >= a {
                            b += 1;
                        }
                        (a, b)
                    })
                    .collect();
                raw = raw.term(qi(rng.gen_range(-3..=3)), marks, gens);
            }
            let left = normalize(&ring, &raw, Strategy::Leftmost).unwrap();
            let right = normalize(&ring, &raw, Strategy::Rightmost).unwrap();
            assert_eq!(left, right, "confluence in {}", ring.name());
        }
    }
    // orthonormality of the irreducible characters up to eight points
    for n in 1..=8 {
        let chars: Vec<Character> = partitions(n).iter().map(irreducible_character).collect();
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let expected = if i == j { qi(1) } else { Q::zero() };
                assert_eq!(inner_product(a, b), expected, "n={n} ({i},{j})");
            }
        }
    }
    // the prime-multiplicity formula against the induced decomposition
    let line = cp(1);
    for prime in [5usize, 7] {
        let sig = TypeSignature::new(vec![(prime, line.fundamental_index())]);
        let chi = type_character(&line, &sig).unwrap();
        let parts = decompose(&chi).unwrap();
        for lambda in partitions(prime) {
            let expected = prime_multiplicity(&lambda, prime);
            let got = parts
                .iter()
                .find(|(l, _)| l == &lambda)
                .map(|&(_, m)| qi(m as i64))
                .unwrap_or_else(Q::zero);
            assert_eq!(got, expected, "p={prime} lambda={lambda}");
        }
    }
    println!("PASS criterion 9: differential, rewriting, and character properties");
}

#[test]
fn criterion_10_second_cohomology_of_the_line() {
    let r = cp(1);
    for n in 5..=7 {
        // H_2^2 = ker of the outgoing differential; nothing comes in
        let dim = bigraded_dims(&r, n).get(2, 2);
        let incoming = differential_matrix(&r, n, 3, 1);
        assert_eq!(incoming.cols(), 0, "nothing maps into (2,2)");
        let rank = differential_matrix(&r, n, 2, 2).rank();
        assert_eq!(dim - rank, cp1_expected_beta2(n), "beta_2 at n={n}");
    }
    let expected_isotypic = [
        (5usize, vec![p(&[3, 1, 1])]),
        (6, vec![p(&[4, 1, 1]), p(&[3, 2, 1])]),
    ];
    for (n, expected) in expected_isotypic {
        let chi = cohomology_character(&r, n, 2, 2).unwrap();
        let parts = decompose(&chi).unwrap();
        assert_eq!(
            parts.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>(),
            expected,
            "isotypic pieces at n={n}"
        );
        assert!(parts.iter().all(|&(_, m)| m == 1));
        // dimension consistency with the class sizes
        let total: Q = parts
            .iter()
            .map(|(l, _)| Q::from_integer(kriz::chars::dim_hook_length(l)))
            .sum();
        assert_eq!(total, chi.dim());
    }
    println!("PASS criterion 10: second cohomology dimensions and isotypic pieces");
}
