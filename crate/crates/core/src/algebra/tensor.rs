//! Sparse elements of `k[G]^{⊗r}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalars::Scalar;

/// Element of `k[G]^{⊗rank}` for a group of order `n`.
///
/// Terms are kept sorted by key with no zero coefficients, so structural
/// equality is mathematical equality. The key of `g_1 ⊗ ... ⊗ g_r` is the
/// base-`n` number with digits `g_1 ... g_r` (first leg most significant).
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    rank: usize,
    n: usize,
    terms: Vec<(u32, Scalar)>,
}

impl Tensor {
    pub fn zero(rank: usize, n: usize) -> Self {
        Tensor { rank, n, terms: Vec::new() }
    }

    /// Builds from possibly repeated, possibly zero terms.
    pub fn from_terms(rank: usize, n: usize, terms: impl IntoIterator<Item = (Vec<usize>, Scalar)>) -> Self {
        let mut map: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (idx, c) in terms {
            assert_eq!(idx.len(), rank, "index tuple length");
            assert!(idx.iter().all(|&g| g < n), "index out of range");
            let key = encode(&idx, n);
            let slot = map.entry(key).or_insert_with(Scalar::zero);
            *slot = &*slot + &c;
        }
        Self::from_sorted_map(rank, n, map)
    }

    pub(crate) fn from_sorted_map(rank: usize, n: usize, map: BTreeMap<u32, Scalar>) -> Self {
        Tensor { rank, n, terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Terms already sorted by key and free of duplicates.
    pub(crate) fn from_sorted(rank: usize, n: usize, mut terms: Vec<(u32, Scalar)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        Tensor { rank, n, terms }
    }

    pub fn basis(idx: &[usize], n: usize, coeff: Scalar) -> Self {
        Self::from_terms(idx.len(), n, [(idx.to_vec(), coeff)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Order of the underlying group.
    pub fn group_order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn raw_terms(&self) -> &[(u32, Scalar)] {
        &self.terms
    }

    pub fn decode(&self, key: u32) -> Vec<usize> {
        decode(key, self.rank, self.n)
    }

    pub fn encode(&self, idx: &[usize]) -> u32 {
        encode(idx, self.n)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> + '_ {
        self.terms.iter().map(move |(k, c)| (decode(*k, self.rank, self.n), c))
    }

    pub fn coefficient(&self, idx: &[usize]) -> Scalar {
        let key = encode(idx, self.n);
        match self.terms.binary_search_by_key(&key, |(k, _)| *k) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Tensor, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Tensor {
        assert_eq!((self.rank, self.n), (other.rank, other.n), "tensor shape mismatch");
        let zero = Scalar::zero();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ka = self.terms.get(i).map(|t| t.0);
            let kb = other.terms.get(j).map(|t| t.0);
            match (ka, kb) {
                (Some(a), Some(b)) if a == b => {
                    out.push((a, op(&self.terms[i].1, &other.terms[j].1)));
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    out.push((a, op(&self.terms[i].1, &zero)));
                    i += 1;
                }
                (Some(a), None) => {
                    out.push((a, op(&self.terms[i].1, &zero)));
                    i += 1;
                }
                (_, Some(b)) => {
                    out.push((b, op(&zero, &other.terms[j].1)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Tensor::from_sorted(self.rank, self.n, out)
    }

    pub fn scale(&self, s: &Scalar) -> Tensor {
        Tensor::from_sorted(self.rank, self.n, self.terms.iter().map(|(k, c)| (*k, c * s)).collect())
    }

    pub fn neg(&self) -> Tensor {
        Tensor::from_sorted(self.rank, self.n, self.terms.iter().map(|(k, c)| (*k, -c)).collect())
    }

    /// Re-indexes every term by `f` on index tuples (must be injective).
    pub fn map_indices(&self, rank: usize, f: impl Fn(&[usize]) -> Vec<usize>) -> Tensor {
        Tensor::from_terms(rank, self.n, self.terms().map(|(idx, c)| (f(&idx), c.clone())))
    }

    /// Image under the group map `g ↦ map[g]` into a group of order `n`.
    pub fn pushforward(&self, map: &[usize], n: usize) -> Tensor {
        assert_eq!(map.len(), self.n);
        Tensor::from_terms(self.rank, n, self.terms().map(|(idx, c)| (idx.iter().map(|&g| map[g]).collect(), c.clone())))
    }

    /// Outer product `self ⊗ other`.
    pub fn outer(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.n, other.n);
        let shift = (self.n as u32).pow(other.rank as u32);
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                terms.push((ka * shift + kb, ca * cb));
            }
        }
        Tensor::from_sorted(self.rank + other.rank, self.n, terms)
    }

    /// First index tuple where the two tensors differ, with both coefficients.
    pub fn first_difference(&self, other: &Tensor) -> Option<(Vec<usize>, Scalar, Scalar)> {
        let diff = self.sub(other);
        let (k, _) = diff.terms.first()?;
        let idx = decode(*k, self.rank, self.n);
        Some((idx.clone(), self.coefficient(&idx), other.coefficient(&idx)))
    }

    /// Coefficients as an `n x n` matrix (rank 2 only); row = first leg.
    pub fn coefficient_rows(&self) -> Vec<Vec<Scalar>> {
        assert_eq!(self.rank, 2);
        let mut rows = vec![vec![Scalar::zero(); self.n]; self.n];
        for (k, c) in &self.terms {
            let k = *k as usize;
            rows[k / self.n][k % self.n] = c.clone();
        }
        rows
    }

    /// Renders with the given element labels, e.g. `(1/2)*[a|b] + ...`.
    pub fn render(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(idx, c)| {
                let names: Vec<&str> = idx.iter().map(|&g| labels[g].as_str()).collect();
                format!("({c})*[{}]", names.join("|"))
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor<{}>{{", self.rank)?;
        for (i, (idx, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{idx:?}: {c}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn encode(idx: &[usize], n: usize) -> u32 {
    idx.iter().fold(0u32, |acc, &g| acc * n as u32 + g as u32)
}

pub(crate) fn decode(mut key: u32, rank: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; rank];
    for slot in out.iter_mut().rev() {
        *slot = (key % n as u32) as usize;
        key /= n as u32;
    }
    out
}
