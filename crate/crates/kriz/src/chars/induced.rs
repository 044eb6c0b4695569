//! Induced characters of type blocks.
//!
//! For a type with block sizes `lambda_1 >= ... >= lambda_t` and marks
//! `h_1, ..., h_t`, the block stabilizer data is
//!
//! * `C`: the product of the cyclic groups generated by the block cycles,
//! * `N`: generated by the swaps of adjacent identical marked blocks,
//! * `Z = C x| N` with the one-dimensional character `xi = phi * alpha`,
//!
//! where `phi` twists each block cycle by a primitive root of unity times
//! the ambient sign character, and `alpha(v) = (-1)^{lambda+1}` on a swap
//! of blocks with an even mark and `(-1)^lambda` with an odd one. The
//! block character is `xi` induced up to the full symmetric group. Values
//! are summed as exact roots of unity and must reduce to rationals.

use std::collections::HashMap;

use crate::chars::{class_size, factorial, partitions, Character, Cyclotomic};
use crate::error::KrizError;
use crate::exterior::TypeSignature;
use crate::perm::Permutation;
use crate::qnum::Q;
use crate::ring::GradedRing;

/// Stabilizer data of one type block.
pub struct TypeGroupData {
    n: usize,
    /// `(start, len, mark)` per block, 1-based starts, consecutive.
    blocks: Vec<(usize, usize, usize)>,
    /// Maximal runs of identical `(len, mark)` blocks: `(first, count)`.
    runs: Vec<(usize, usize)>,
    /// Whether a swap inside each run carries `alpha = -1`.
    run_negates: Vec<bool>,
    /// Common order of all character values, `lcm(2, lambda_i)`.
    order: usize,
    c_generators: Vec<Permutation>,
    n_generators: Vec<Permutation>,
    /// Every element of `Z` with the exponent of its `xi` value.
    elements: Vec<(Permutation, usize)>,
}

impl TypeGroupData {
    pub fn z_order(&self) -> usize {
        self.elements.len()
    }

    pub fn value_order(&self) -> usize {
        self.order
    }

    pub fn c_generators(&self) -> &[Permutation] {
        &self.c_generators
    }

    pub fn n_generators(&self) -> &[Permutation] {
        &self.n_generators
    }

    pub fn elements(&self) -> &[(Permutation, usize)] {
        &self.elements
    }

    /// `xi` of an arbitrary member of `Z` as an exponent of the common
    /// root of unity.
    pub fn xi_exponent(&self, z: &Permutation) -> Option<usize> {
        let (exps, block_perm) = self.split(z)?;
        Some(self.exponent_of(&exps, &block_perm))
    }

    /// Split `z = c * nu` into cycle exponents and a block permutation.
    fn split(&self, z: &Permutation) -> Option<(Vec<usize>, Vec<usize>)> {
        let t = self.blocks.len();
        let mut block_perm = vec![0usize; t];
        for (i, &(start, len, mark)) in self.blocks.iter().enumerate() {
            let image = z.apply(start);
            let j = self
                .blocks
                .iter()
                .position(|&(s, l, _)| image >= s && image < s + l)?;
            let (js, jl, jmark) = self.blocks[j];
            if jl != len || jmark != mark {
                return None;
            }
            // the whole block must land in block j
            for offset in 0..len {
                let img = z.apply(start + offset);
                if img < js || img >= js + jl {
                    return None;
                }
            }
            block_perm[i] = j;
        }
        // nu: order-preserving block relabelling; c = z * nu^{-1}
        let mut nu_images = vec![0usize; self.n];
        for (i, &(start, len, _)) in self.blocks.iter().enumerate() {
            let (js, _, _) = self.blocks[block_perm[i]];
            for offset in 0..len {
                nu_images[start + offset - 1] = js + offset - 1;
            }
        }
        let nu = Permutation::from_images(nu_images).ok()?;
        let c = z.compose(&nu.inverse());
        let mut exps = vec![0usize; t];
        for (i, &(start, len, _)) in self.blocks.iter().enumerate() {
            let a = (c.apply(start) + len - start) % len;
            for offset in 0..len {
                let expect = start + (offset + a) % len;
                if c.apply(start + offset) != expect {
                    return None;
                }
            }
            exps[i] = a;
        }
        Some((exps, block_perm))
    }

    fn exponent_of(&self, exps: &[usize], block_perm: &[usize]) -> usize {
        let half = self.order / 2;
        let mut e = 0usize;
        for (i, &(_, len, _)) in self.blocks.iter().enumerate() {
            // phi: primitive root per block cycle times the ambient sign
            e += exps[i] * (self.order / len);
            e += half * (exps[i] * (len - 1));
        }
        for (r, &(first, count)) in self.runs.iter().enumerate() {
            if !self.run_negates[r] {
                continue;
            }
            // parity of the permutation induced on this run's blocks
            let mut seen = vec![false; count];
            let mut transpositions = 0usize;
            for s in 0..count {
                if seen[s] {
                    continue;
                }
                let mut len = 0;
                let mut v = s;
                while !seen[v] {
                    seen[v] = true;
                    v = block_perm[first + v] - first;
                    len += 1;
                }
                transpositions += len - 1;
            }
            e += half * transpositions;
        }
        e % self.order
    }
}

/// Build the stabilizer data of a type block, enumerating `Z` and checking
/// both its order and the multiplicativity of `xi`.
pub fn type_group_data(ring: &GradedRing, sig: &TypeSignature) -> Result<TypeGroupData, KrizError> {
    let n = sig.n();
    let entries = sig.entries();
    let t = entries.len();
    let mut blocks = Vec::with_capacity(t);
    let mut start = 1usize;
    for &(len, mark) in entries {
        blocks.push((start, len, mark));
        start += len;
    }
    let mut runs = Vec::new();
    let mut run_negates = Vec::new();
    let mut i = 0;
    while i < t {
        let mut j = i;
        while j + 1 < t && entries[j + 1] == entries[i] {
            j += 1;
        }
        runs.push((i, j - i + 1));
        let (len, mark) = entries[i];
        run_negates.push(len % 2 == ring.degree(mark) % 2);
        i = j + 1;
    }
    let mut order = 2usize;
    for &(len, _) in entries {
        order = num::integer::lcm(order, len);
    }

    let c_generators: Vec<Permutation> = blocks
        .iter()
        .filter(|&&(_, len, _)| len > 1)
        .map(|&(start, len, _)| {
            let mut images: Vec<usize> = (0..n).collect();
            for offset in 0..len {
                images[start + offset - 1] = start + (offset + 1) % len - 1;
            }
            Permutation::from_images(images).expect("block cycle")
        })
        .collect();
    let mut n_generators = Vec::new();
    for &(first, count) in &runs {
        for s in 0..count.saturating_sub(1) {
            let (sa, len, _) = blocks[first + s];
            let (sb, _, _) = blocks[first + s + 1];
            let mut images: Vec<usize> = (0..n).collect();
            for offset in 0..len {
                images[sa + offset - 1] = sb + offset - 1;
                images[sb + offset - 1] = sa + offset - 1;
            }
            n_generators.push(Permutation::from_images(images).expect("block swap"));
        }
    }

    let data = TypeGroupData {
        n,
        blocks,
        runs,
        run_negates,
        order,
        c_generators,
        n_generators,
        elements: Vec::new(),
    };

    // enumerate C x N directly
    let mut exps_list = vec![vec![0usize; t]];
    for (i, &(_, len, _)) in data.blocks.iter().enumerate() {
        let mut next = Vec::new();
        for e in &exps_list {
            for a in 0..len {
                let mut e2 = e.clone();
                e2[i] = a;
                next.push(e2);
            }
        }
        exps_list = next;
    }
    let mut block_perms = vec![(0..t).collect::<Vec<usize>>()];
    for &(first, count) in &data.runs {
        let mut next = Vec::new();
        for perm_of_run in permutations_of(count) {
            for bp in &block_perms {
                let mut bp2 = bp.clone();
                for (s, &img) in perm_of_run.iter().enumerate() {
                    bp2[first + s] = first + img;
                }
                next.push(bp2);
            }
        }
        block_perms = next;
    }

    let mut elements = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for exps in &exps_list {
        for bp in &block_perms {
            let perm = data.realize(exps, bp);
            let e = data.exponent_of(exps, bp);
            if !seen.insert(perm.clone()) {
                return Err(KrizError::ClassifierCollision(
                    "stabilizer elements repeat".into(),
                ));
            }
            elements.push((perm, e));
        }
    }
    let expected: usize = sig.parts().iter().product::<usize>() * block_perms.len();
    assert_eq!(elements.len(), expected, "stabilizer order");

    let data = TypeGroupData { elements, ..data };

    // xi must be multiplicative on all of Z
    let xi: HashMap<&Permutation, usize> = data.elements.iter().map(|(p, e)| (p, *e)).collect();
    for (z1, e1) in &data.elements {
        for (z2, e2) in &data.elements {
            let prod = z1.compose(z2);
            let expected = (e1 + e2) % data.order;
            match xi.get(&prod) {
                Some(&e) if e == expected => {}
                _ => return Err(KrizError::NonMultiplicativeCharacter),
            }
        }
    }
    Ok(data)
}

impl TypeGroupData {
    /// The permutation `c * nu` of the given exponents and block images.
    fn realize(&self, exps: &[usize], block_perm: &[usize]) -> Permutation {
        let mut images = vec![0usize; self.n];
        for (i, &(start, len, _)) in self.blocks.iter().enumerate() {
            let (js, _, _) = self.blocks[block_perm[i]];
            for offset in 0..len {
                // first rotate inside the block, then move the block
                let rotated = (offset + exps[i]) % len;
                images[start + offset - 1] = js + rotated - 1;
            }
        }
        Permutation::from_images(images).expect("stabilizer element")
    }
}

fn permutations_of(count: usize) -> Vec<Vec<usize>> {
    Permutation::all(count)
        .into_iter()
        .map(|p| (1..=count).map(|v| p.apply(v) - 1).collect())
        .collect()
}

/// The induced character of a type block.
///
/// Per cycle type the sum runs over the stabilizer elements of that type,
/// weighted by the centralizer order of the class; every value must reduce
/// to a rational number.
pub fn type_character(ring: &GradedRing, sig: &TypeSignature) -> Result<Character, KrizError> {
    let data = type_group_data(ring, sig)?;
    let n = sig.n();
    let n_fact = factorial(n);
    let z_order = Q::from_integer(num::BigInt::from(data.z_order()));
    let mut values = Vec::new();
    for ct in partitions(n) {
        let centralizer = Q::from_integer(n_fact.clone() / class_size(&ct));
        let mut sum = Cyclotomic::zero(data.order);
        for (z, e) in data.elements() {
            if z.cycle_type() == ct {
                sum.add_root(*e, crate::qnum::q_one());
            }
        }
        let rational = sum
            .to_rational()
            .ok_or_else(|| KrizError::NonRationalInduced(format!("{sig} at {ct}")))?;
        values.push((ct, rational * centralizer / z_order.clone()));
    }
    Ok(Character::from_fn(n, |ct| {
        values
            .iter()
            .find(|(c, _)| c == ct)
            .map(|(_, v)| v.clone())
            .expect("all cycle types computed")
    }))
}

/// Literal induction formula `(1/|Z|) sum_{t, t^-1 g t in Z} xi(t^-1 g t)`
/// over the whole ambient group; exponential in `n` and kept as an
/// independent oracle for the grouped sum above.
pub fn type_character_by_full_sum(
    ring: &GradedRing,
    sig: &TypeSignature,
) -> Result<Character, KrizError> {
    let data = type_group_data(ring, sig)?;
    let n = sig.n();
    let xi: HashMap<&Permutation, usize> = data.elements.iter().map(|(p, e)| (p, *e)).collect();
    let z_order = Q::from_integer(num::BigInt::from(data.z_order()));
    let all = Permutation::all(n);
    let mut values = Vec::new();
    for ct in partitions(n) {
        let g = Permutation::class_representative(&ct, n);
        let mut sum = Cyclotomic::zero(data.order);
        for t in &all {
            let conj = t.inverse().compose(&g).compose(t);
            if let Some(&e) = xi.get(&conj) {
                sum.add_root(e, crate::qnum::q_one());
            }
        }
        let rational = sum
            .to_rational()
            .ok_or_else(|| KrizError::NonRationalInduced(format!("{sig} at {ct}")))?;
        values.push((ct, rational / z_order.clone()));
    }
    Ok(Character::from_fn(n, |ct| {
        values
            .iter()
            .find(|(c, _)| c == ct)
            .map(|(_, v)| v.clone())
            .expect("all cycle types computed")
    }))
}
