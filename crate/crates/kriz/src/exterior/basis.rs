//! Enumeration of the canonical basis, bigraded dimensions, and types.
//!
//! A monotonic forest on `{1..n}` is the same thing as a choice, for every
//! vertex `v >= 2`, of either no parent or a parent `< v`; this drives all
//! enumeration here.

use std::collections::BTreeMap;

use crate::homology::BigradedTable;
use crate::ring::GradedRing;

use super::{type_of, CanonicalMonomial, TypeSignature};

/// All monotonic forests on `{1..n}` with exactly `q` edges, as canonical
/// edge lists.
pub fn monotonic_forests(n: usize, q: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut edges = Vec::new();
    fn rec(
        v: usize,
        n: usize,
        q: usize,
        edges: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if edges.len() > q {
            return;
        }
        if v > n {
            if edges.len() == q {
                out.push(edges.clone());
            }
            return;
        }
        rec(v + 1, n, q, edges, out);
        for parent in 1..v {
            edges.push((parent, v));
            rec(v + 1, n, q, edges, out);
            edges.pop();
        }
    }
    rec(2, n, q, &mut edges, &mut out);
    out
}

/// Unsigned Stirling numbers of the first kind `c(n, k)`: the number of
/// monotonic forests on `n` vertices with `k` components (equivalently,
/// permutations of `n` with `k` cycles).
pub fn stirling_first(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut row = vec![0u128; n + 1];
    row[0] = 1;
    for i in 0..n {
        let mut next = vec![0u128; n + 1];
        for (j, &v) in row.iter().enumerate() {
            if v == 0 {
                continue;
            }
            if j < n {
                next[j + 1] += v;
            }
            next[j] += v * i as u128;
        }
        row = next;
    }
    row[k]
}

/// Number of `c`-tuples of ring basis elements of total degree `e`.
pub fn mark_tuple_count(ring: &GradedRing, c: usize, e: usize) -> u128 {
    let mut counts = vec![0u128; e + 1];
    counts[0] = 1;
    for _ in 0..c {
        let mut next = vec![0u128; e + 1];
        for (d, &v) in counts.iter().enumerate() {
            if v == 0 {
                continue;
            }
            for i in 0..ring.dim() {
                let nd = d + ring.degree(i);
                if nd <= e {
                    next[nd] += v;
                }
            }
        }
        counts = next;
    }
    counts[e]
}

/// All canonical monomials of bidegree `(q, k)`, in basis order.
/// Empty when `(q, k)` is outside the trapezoid.
pub fn enumerate_basis(
    ring: &GradedRing,
    n: usize,
    q: usize,
    k: usize,
) -> Vec<CanonicalMonomial> {
    if q >= n || k < q * ring.gen_degree() {
        return Vec::new();
    }
    let target = k - q * ring.gen_degree();
    let mut out = Vec::new();
    for edges in monotonic_forests(n, q) {
        let mut is_root = vec![true; n + 1];
        for &(_, j) in &edges {
            is_root[j] = false;
        }
        let roots: Vec<usize> = (1..=n).filter(|&v| is_root[v]).collect();
        let mut assignments: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
        for _ in &roots {
            let mut next = Vec::new();
            for (deg, prefix) in &assignments {
                for h in 0..ring.dim() {
                    let nd = deg + ring.degree(h);
                    if nd <= target {
                        let mut w = prefix.clone();
                        w.push(h);
                        next.push((nd, w));
                    }
                }
            }
            assignments = next;
        }
        for (deg, root_marks) in assignments {
            if deg != target {
                continue;
            }
            let mut marks = vec![0usize; n];
            for (&root, &h) in roots.iter().zip(&root_marks) {
                marks[root - 1] = h;
            }
            out.push(CanonicalMonomial {
                n,
                edges: edges.clone(),
                marks,
            });
        }
    }
    out.sort();
    out
}

/// Dimensions of every bigraded component, computed by counting: forests
/// with `n - q` components times mark tuples of the right degree.
pub fn bigraded_dims(ring: &GradedRing, n: usize) -> BigradedTable {
    let mut table = BigradedTable::new(ring.name().to_string(), n);
    let gen_deg = ring.gen_degree();
    for q in 0..n {
        let forests = stirling_first(n, n - q);
        let max_mark_deg = ring.top_degree() * (n - q);
        for e in 0..=max_mark_deg {
            let count = forests * mark_tuple_count(ring, n - q, e);
            if count > 0 {
                table.set(q, q * gen_deg + e, count as usize);
            }
        }
    }
    table
}

/// All type signatures with `|L| = q` and `|H| = k - q(2m-1)`.
pub fn enumerate_types(ring: &GradedRing, n: usize, q: usize, k: usize) -> Vec<TypeSignature> {
    if q >= n || k < q * ring.gen_degree() {
        return Vec::new();
    }
    let target = k - q * ring.gen_degree();
    let mut out = Vec::new();
    for partition in crate::chars::partitions(n) {
        if partition.len() != n - q {
            continue;
        }
        // assign marks: within each run of equal parts the marks are
        // weakly decreasing in basis order
        let runs: Vec<(usize, usize)> = run_lengths(partition.parts());
        let mut partial: Vec<(usize, Vec<(usize, usize)>)> = vec![(0, Vec::new())];
        for &(part, count) in &runs {
            let mut next = Vec::new();
            for (deg, prefix) in &partial {
                for marks in weakly_decreasing_tuples(ring.dim(), count) {
                    let d: usize = marks.iter().map(|&h| ring.degree(h)).sum();
                    if deg + d <= target {
                        let mut w = prefix.clone();
                        w.extend(marks.iter().map(|&h| (part, h)));
                        next.push((deg + d, w));
                    }
                }
            }
            partial = next;
        }
        for (deg, entries) in partial {
            if deg == target {
                out.push(TypeSignature::new(entries));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn run_lengths(parts: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &p in parts {
        match out.last_mut() {
            Some((v, c)) if *v == p => *c += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Weakly decreasing `len`-tuples over `0..dim`.
fn weakly_decreasing_tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(len: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if len == 0 {
            out.push(current.clone());
            return;
        }
        for h in (0..=max).rev() {
            current.push(h);
            rec(len - 1, h, current, out);
            current.pop();
        }
    }
    rec(len, dim - 1, &mut Vec::new(), &mut out);
    out
}

/// All canonical monomials of the given type, in basis order.
pub fn type_basis(ring: &GradedRing, sig: &TypeSignature) -> Vec<CanonicalMonomial> {
    let n = sig.n();
    let q = sig.exterior_degree();
    let k = sig.total_degree(ring);
    enumerate_basis(ring, n, q, k)
        .into_iter()
        .filter(|m| &type_of(m) == sig)
        .collect()
}

/// Dimension of a type block: `n! / (prod lambda_i * prod m_g!)` where the
/// `m_g` count repeated `(size, mark)` pairs.
pub fn type_dimension(sig: &TypeSignature) -> u128 {
    let n = sig.n();
    let mut dim: u128 = (1..=n as u128).product();
    for &(l, _) in sig.entries() {
        dim /= l as u128;
    }
    let mut counts: BTreeMap<(usize, usize), u128> = BTreeMap::new();
    for &e in sig.entries() {
        *counts.entry(e).or_default() += 1;
    }
    for m in counts.values() {
        dim /= (1..=*m).product::<u128>();
    }
    dim
}
