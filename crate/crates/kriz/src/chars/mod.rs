//! Symmetric-group character theory over exact rationals.
//!
//! Partitions double as irreducible labels and as cycle types. Irreducible
//! characters come from the Murnaghan-Nakayama rim-hook recursion; class
//! functions are stored as one rational value per cycle type.

mod cyclotomic;
mod induced;

pub use cyclotomic::Cyclotomic;
pub use induced::{type_character, type_character_by_full_sum, type_group_data, TypeGroupData};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::bigint::BigInt;
use num::{One, Zero};

use crate::error::KrizError;
use crate::qnum::{is_nonneg_int, q_one, Q};

/// A partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts equal to `q` (the multiplicity `i_q` of a cycle type).
    pub fn multiplicity(&self, q: usize) -> usize {
        self.parts.iter().filter(|&&p| p == q).count()
    }

    /// `V(lambda)` label, e.g. `V(4,2)`.
    pub fn v_label(&self) -> String {
        format!("V({})", self.join(","))
    }

    fn join(&self, sep: &str) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.join(","))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // lexicographic on parts; shorter prefix-equal lists come first
        self.parts.cmp(&other.parts)
    }
}

/// All partitions of `n` in lexicographically decreasing order,
/// `(n), (n-1,1), ..., (1^n)`.
pub fn partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

pub fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    f
}

/// Conjugacy class size of a cycle type: `n! / prod(q^{i_q} i_q!)`.
pub fn class_size(ct: &Partition) -> BigInt {
    let n = ct.weight();
    let mut denom = BigInt::one();
    for q in 1..=n {
        let iq = ct.multiplicity(q);
        denom *= BigInt::from(q).pow(iq as u32);
        denom *= factorial(iq);
    }
    factorial(n) / denom
}

/// A class function on `S_n`, one exact rational per cycle type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    n: usize,
    values: BTreeMap<Partition, Q>,
}

impl Character {
    pub fn from_fn(n: usize, mut f: impl FnMut(&Partition) -> Q) -> Self {
        let values = partitions(n).into_iter().map(|ct| (f(&ct), ct)).map(|(v, ct)| (ct, v)).collect();
        Character { n, values }
    }

    pub fn zero(n: usize) -> Self {
        Character::from_fn(n, |_| Q::zero())
    }

    /// Character of the regular representation.
    pub fn regular(n: usize) -> Self {
        Character::from_fn(n, |ct| {
            if ct.len() == n {
                Q::from_integer(factorial(n))
            } else {
                Q::zero()
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, ct: &Partition) -> &Q {
        self.values
            .get(ct)
            .unwrap_or_else(|| panic!("cycle type {ct} not of weight {}", self.n))
    }

    pub fn values(&self) -> impl Iterator<Item = (&Partition, &Q)> {
        self.values.iter()
    }

    /// Dimension, the value at the identity.
    pub fn dim(&self) -> Q {
        self.value(&Partition::new(vec![1; self.n])).clone()
    }

    pub fn add(&self, other: &Character) -> Character {
        assert_eq!(self.n, other.n);
        Character {
            n: self.n,
            values: self
                .values
                .iter()
                .map(|(ct, v)| (ct.clone(), v.clone() + other.value(ct).clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Character) -> Character {
        assert_eq!(self.n, other.n);
        Character {
            n: self.n,
            values: self
                .values
                .iter()
                .map(|(ct, v)| (ct.clone(), v.clone() - other.value(ct).clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Character {
        Character {
            n: self.n,
            values: self
                .values
                .iter()
                .map(|(ct, v)| (ct.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| v.is_zero())
    }
}

/// `<chi1, chi2> = (1/n!) sum_ct |ct| chi1(ct) chi2(ct)`.
///
/// All characters in this crate take rational values, so no conjugation
/// is involved.
pub fn inner_product(chi1: &Character, chi2: &Character) -> Q {
    assert_eq!(chi1.n(), chi2.n());
    let mut total = Q::zero();
    for (ct, v1) in chi1.values() {
        total += Q::from_integer(class_size(ct)) * v1.clone() * chi2.value(ct).clone();
    }
    total / Q::from_integer(factorial(chi1.n()))
}

/// Irreducible character of `V(lambda)` via the Murnaghan-Nakayama rule.
pub fn irreducible_character(lambda: &Partition) -> Character {
    let n = lambda.weight();
    let mut memo = HashMap::new();
    Character::from_fn(n, |ct| {
        Q::from_integer(mn_value(lambda.parts(), ct.parts(), &mut memo))
    })
}

/// Murnaghan-Nakayama recursion on beta-sets: removing a rim hook of
/// length `l` moves one beta number down by `l`; the sign is the parity
/// of the beta numbers it jumps over.
fn mn_value(
    lambda: &[usize],
    rho: &[usize],
    memo: &mut HashMap<(Vec<usize>, Vec<usize>), BigInt>,
) -> BigInt {
    if rho.is_empty() {
        debug_assert!(lambda.is_empty());
        return BigInt::one();
    }
    let key = (lambda.to_vec(), rho.to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let l = rho[0];
    let rest = &rho[1..];
    let t = lambda.len().max(1);
    let beta: Vec<usize> = (0..t)
        .map(|i| lambda.get(i).copied().unwrap_or(0) + (t - 1 - i))
        .collect();
    let mut total = BigInt::zero();
    for (i, &b) in beta.iter().enumerate() {
        if b < l || beta.contains(&(b - l)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&c| c < b && c > b - l).count();
        let mut new_beta = beta.clone();
        new_beta[i] = b - l;
        new_beta.sort_unstable_by(|a, b| b.cmp(a));
        let new_lambda: Vec<usize> = new_beta
            .iter()
            .enumerate()
            .map(|(r, &bv)| bv - (t - 1 - r))
            .filter(|&p| p > 0)
            .collect();
        let term = mn_value(&new_lambda, rest, memo);
        if jumped % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    memo.insert(key, total.clone());
    total
}

/// Dimension of `V(lambda)` via the hook-length formula, used as an
/// independent oracle for the recursion.
pub fn dim_hook_length(lambda: &Partition) -> BigInt {
    let parts = lambda.parts();
    let mut hooks = BigInt::one();
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = parts[i + 1..].iter().filter(|&&r| r > j).count();
            hooks *= BigInt::from(arm + leg + 1);
        }
    }
    factorial(lambda.weight()) / hooks
}

/// Decompose a genuine character into irreducibles.
///
/// Returns `(lambda, multiplicity)` pairs with positive multiplicity, in
/// decreasing partition order. Errors if any inner product is negative or
/// non-integral.
pub fn decompose(chi: &Character) -> Result<Vec<(Partition, usize)>, KrizError> {
    let mut out = Vec::new();
    for lambda in partitions(chi.n()) {
        let m = inner_product(chi, &irreducible_character(&lambda));
        if m.is_zero() {
            continue;
        }
        if !is_nonneg_int(&m) {
            return Err(KrizError::NotACharacter(format!(
                "multiplicity of {} is {}",
                lambda.v_label(),
                m
            )));
        }
        let m: usize = m.numer().to_string().parse().expect("small multiplicity");
        out.push((lambda, m));
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(out)
}

/// Stable label of an irreducible: `V(lambda) = V(mu)_n` with
/// `mu = (lambda_2, lambda_3, ...)`, valid when `n - |mu| >= mu_1`.
///
/// Returns `(unstable, Some(stable))`; the stable form always exists for a
/// genuine partition since `lambda_1 >= lambda_2`.
pub fn stable_label(lambda: &Partition, n: usize) -> (String, Option<String>) {
    assert_eq!(lambda.weight(), n);
    let unstable = lambda.v_label();
    let mu: Vec<usize> = lambda.parts().iter().skip(1).copied().collect();
    let mu_weight: usize = mu.iter().sum();
    let valid = n - mu_weight >= mu.first().copied().unwrap_or(0);
    let stable = valid.then(|| {
        let inner = mu
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("V({inner})_{n}")
    });
    (unstable, stable)
}

/// Multiplicity of `V(lambda)` in the top single-tree block on a prime
/// number of points: `(dim V(lambda) - chi_lambda(c_p)) / p`.
pub fn prime_multiplicity(lambda: &Partition, p: usize) -> Q {
    assert_eq!(lambda.weight(), p);
    let chi = irreducible_character(lambda);
    let full_cycle = Partition::new(vec![p]);
    let dim = chi.dim();
    let at_cycle = chi.value(&full_cycle).clone();
    (dim - at_cycle) / Q::from_integer(BigInt::from(p))
}

/// Sign character value on a cycle type.
pub fn sign_value(ct: &Partition) -> Q {
    if (ct.weight() - ct.len()).is_multiple_of(2) {
        q_one()
    } else {
        -q_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnum::{qi, qr};

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(0).len(), 1);
        assert_eq!(partitions(3).len(), 3);
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(6).len(), 11);
        assert_eq!(partitions(8).len(), 22);
        let p3 = partitions(3);
        assert_eq!(
            p3,
            vec![
                Partition::new(vec![3]),
                Partition::new(vec![2, 1]),
                Partition::new(vec![1, 1, 1]),
            ]
        );
    }

    #[test]
    fn class_sizes_match_brute_force() {
        use crate::perm::Permutation;
        for n in [4, 6] {
            let mut counts: HashMap<Partition, usize> = HashMap::new();
            for p in Permutation::all(n) {
                *counts.entry(p.cycle_type()).or_default() += 1;
            }
            for ct in partitions(n) {
                assert_eq!(
                    BigInt::from(counts[&ct]),
                    class_size(&ct),
                    "class size of {ct}"
                );
            }
        }
        assert_eq!(class_size(&Partition::new(vec![1; 6])), BigInt::one());
        assert_eq!(class_size(&Partition::new(vec![2, 2, 2])), BigInt::from(15));
        assert_eq!(class_size(&Partition::new(vec![6])), BigInt::from(120));
    }

    #[test]
    fn trivial_and_sign_characters() {
        for n in 1..=6 {
            let triv = irreducible_character(&Partition::new(vec![n]));
            let sgn = irreducible_character(&Partition::new(vec![1; n]));
            for ct in partitions(n) {
                assert_eq!(triv.value(&ct), &qi(1));
                assert_eq!(sgn.value(&ct), &sign_value(&ct));
            }
        }
    }

    #[test]
    fn mn_identity_matches_hook_lengths() {
        for n in 1..=7 {
            let id = Partition::new(vec![1; n]);
            for lambda in partitions(n) {
                let chi = irreducible_character(&lambda);
                assert_eq!(
                    chi.value(&id),
                    &Q::from_integer(dim_hook_length(&lambda)),
                    "dim of {lambda}"
                );
            }
        }
    }

    #[test]
    fn stable_table_closed_forms() {
        // V(1)_n has character i_1 - 1; V(2,1)_n has (1/3) i_1 (i_1-2)(i_1-4) - i_3.
        for n in [7usize, 8] {
            let v1 = irreducible_character(&Partition::new(vec![n - 1, 1]));
            let v21 = irreducible_character(&Partition::new(vec![n - 3, 2, 1]));
            for ct in partitions(n) {
                let i1 = qi(ct.multiplicity(1) as i64);
                let i3 = qi(ct.multiplicity(3) as i64);
                assert_eq!(v1.value(&ct), &(i1.clone() - qi(1)));
                let expected =
                    qr(1, 3) * i1.clone() * (i1.clone() - qi(2)) * (i1.clone() - qi(4)) - i3;
                assert_eq!(v21.value(&ct), &expected, "V(2,1)_{n} at {ct}");
            }
        }
    }

    #[test]
    fn orthonormality_small() {
        for n in 1..=5 {
            let ps = partitions(n);
            let chars: Vec<Character> = ps.iter().map(irreducible_character).collect();
            for (i, a) in chars.iter().enumerate() {
                for (j, b) in chars.iter().enumerate() {
                    let ip = inner_product(a, b);
                    assert_eq!(ip, if i == j { qi(1) } else { qi(0) });
                }
            }
        }
    }

    #[test]
    fn regular_character_decomposes_with_dims() {
        let reg = Character::regular(5);
        for (lambda, m) in decompose(&reg).unwrap() {
            assert_eq!(
                Q::from_integer(BigInt::from(m)),
                irreducible_character(&lambda).dim()
            );
        }
        // sum of squared dims is n!
        let total: Q = partitions(5)
            .iter()
            .map(|l| {
                let d = irreducible_character(l).dim();
                d.clone() * d
            })
            .sum();
        assert_eq!(total, Q::from_integer(factorial(5)));
    }

    #[test]
    fn decompose_rejects_non_characters() {
        let half = Character::from_fn(3, |ct| {
            if ct.len() == 3 {
                qr(1, 2)
            } else {
                Q::zero()
            }
        });
        assert!(decompose(&half).is_err());
        let neg = irreducible_character(&Partition::new(vec![2, 1])).scale(&qi(-1));
        assert!(decompose(&neg).is_err());
    }

    #[test]
    fn stable_labels() {
        let (u, s) = stable_label(&Partition::new(vec![4, 2]), 6);
        assert_eq!(u, "V(4,2)");
        assert_eq!(s.as_deref(), Some("V(2)_6"));
        let (u, s) = stable_label(&Partition::new(vec![6]), 6);
        assert_eq!(u, "V(6)");
        assert_eq!(s.as_deref(), Some("V()_6"));
        // boundary case: (3,3) at n=6 is exactly V(3)_6
        let (_, s) = stable_label(&Partition::new(vec![3, 3]), 6);
        assert_eq!(s.as_deref(), Some("V(3)_6"));
    }

    #[test]
    fn prime_multiplicity_values() {
        assert_eq!(prime_multiplicity(&Partition::new(vec![4, 1]), 5), qi(1));
        assert_eq!(prime_multiplicity(&Partition::new(vec![5]), 5), qi(0));
    }
}
