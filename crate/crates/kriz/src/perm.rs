//! Permutations of `{1..n}` and their cycle types.

use crate::chars::Partition;
use crate::error::KrizError;

/// A permutation of `{1..n}` in one-line notation.
///
/// `images[v]` is the image of vertex `v+1`, stored 0-based internally;
/// all public text I/O is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From 0-based images; checks bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, KrizError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(KrizError::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Coxeter generator swapping `i` and `i+1` (1-based `i`).
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `v`.
    pub fn apply(&self, v: usize) -> usize {
        self.images[v - 1] + 1
    }

    /// Composition `self * other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (v, &i) in self.images.iter().enumerate() {
            images[i] = v;
        }
        Permutation { images }
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = self.images[v];
                len += 1;
            }
            parts.push(len);
        }
        Partition::new(parts)
    }

    pub fn sign(&self) -> i64 {
        let ct = self.cycle_type();
        if (self.n() - ct.parts().len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// The block representative of a cycle type: cycles on consecutive
    /// blocks, largest part first, e.g. `(3,2)` gives `(1 2 3)(4 5)`.
    pub fn class_representative(ct: &Partition, n: usize) -> Permutation {
        assert_eq!(ct.weight(), n);
        let mut images: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for &part in ct.parts() {
            for offset in 0..part {
                images[start + offset] = start + (offset + 1) % part;
            }
            start += part;
        }
        Permutation { images }
    }

    /// Every element of `S_n`, in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            if !next_permutation(&mut current) {
                break;
            }
        }
        out
    }

    /// Parses cycle notation `(1 2 3)(4 5)` (also comma-separated) or
    /// one-line notation `[2,3,1,5,4]`. Cycle notation needs `n` to fix
    /// the ambient size.
    pub fn parse(text: &str, n: usize) -> Result<Self, KrizError> {
        let text = text.trim();
        if text.starts_with('[') {
            let inner = text
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| KrizError::InvalidPermutation(text.into()))?;
            let vals: Result<Vec<usize>, _> = inner
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect();
            let vals = vals.map_err(|_| KrizError::InvalidPermutation(text.into()))?;
            if vals.len() != n || vals.iter().any(|&v| v == 0 || v > n) {
                return Err(KrizError::InvalidPermutation(text.into()));
            }
            Permutation::from_images(vals.iter().map(|&v| v - 1).collect())
        } else if text == "id" || text == "()" || text.is_empty() {
            Ok(Permutation::identity(n))
        } else if text.starts_with('(') {
            let mut images: Vec<usize> = (0..n).collect();
            for cycle in text.split(')') {
                let cycle = cycle.trim();
                if cycle.is_empty() {
                    continue;
                }
                let cycle = cycle
                    .strip_prefix('(')
                    .ok_or_else(|| KrizError::InvalidPermutation(text.into()))?;
                let vals: Result<Vec<usize>, _> = cycle
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>())
                    .collect();
                let vals = vals.map_err(|_| KrizError::InvalidPermutation(text.into()))?;
                if vals.iter().any(|&v| v == 0 || v > n) {
                    return Err(KrizError::InvalidPermutation(text.into()));
                }
                for w in 0..vals.len() {
                    let from = vals[w] - 1;
                    let to = vals[(w + 1) % vals.len()] - 1;
                    images[from] = to;
                }
            }
            Permutation::from_images(images)
        } else {
            Err(KrizError::InvalidPermutation(text.into()))
        }
    }
}

fn next_permutation(arr: &mut [usize]) -> bool {
    let n = arr.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}
