//! Finite groups stored as dense multiplication tables.
//!
//! Element indices are `usize`; every constructor in this module puts the
//! identity at index 0.

mod abelian;
pub mod library;

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

pub use abelian::{AbelianGroup, GroupAction, PairingChar, SemidirectProduct};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates a row-major multiplication table: Latin square, identity
    /// at index 0, inverses and full associativity.
    pub fn from_table(name: &str, n: usize, table: Vec<usize>, labels: Vec<String>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".to_string()));
        }
        if table.len() != n * n {
            return Err(Error::InvalidGroup(format!("table has {} entries, expected {}", table.len(), n * n)));
        }
        if table.iter().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("table entry out of range".to_string()));
        }
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                row[table[i * n + j]] = true;
                col[table[j * n + i]] = true;
            }
            if row.iter().chain(col.iter()).any(|s| !s) {
                return Err(Error::InvalidGroup(format!("row or column {i} is not a permutation")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".to_string()))?;
        if identity != 0 {
            return Err(Error::InvalidGroup(format!("identity must be element 0, found at {identity}")));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == identity).expect("Latin square"))
            .collect();
        let labels = if labels.len() == n { labels } else { (0..n).map(|i| format!("g{i}")).collect() };
        Ok(FiniteGroup { name: name.to_string(), n, table, inverse, identity, labels })
    }

    /// Closure of `gens` under `mul`, identity first, breadth-first order.
    pub fn generate<T: Ord + Clone>(
        name: &str,
        identity: T,
        gens: &[T],
        mul: impl Fn(&T, &T) -> T,
        label: impl Fn(&T) -> String,
    ) -> FiniteGroup {
        let mut elems = vec![identity.clone()];
        let mut index: BTreeMap<T, usize> = BTreeMap::new();
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let y = mul(&elems[i], g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(y);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                table[i * n + j] = index[&mul(a, b)];
            }
        }
        let labels = elems.iter().map(label).collect();
        Self::unchecked(name, n, table, labels)
    }

    /// Builds a group from a table already known to be valid, identity at 0.
    pub(crate) fn unchecked(name: &str, n: usize, table: Vec<usize>, labels: Vec<String>) -> Self {
        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).unwrap()).collect();
        FiniteGroup { name: name.to_string(), n, table, inverse, identity: 0, labels }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.n
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().fold(1, |acc, g| num_integer::lcm(acc, self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_central(&self, a: usize) -> bool {
        self.elements().all(|b| self.commutes(a, b))
    }

    pub fn center(&self) -> Vec<usize> {
        self.elements().filter(|&a| self.is_central(a)).collect()
    }

    /// Sorted subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &x in set {
            member[x] = true;
        }
        member[self.identity]
            && set.iter().all(|&a| set.iter().all(|&b| member[self.mul(a, self.inv(b))]))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &x in set {
            member[x] = true;
        }
        set.iter().all(|&h| self.elements().all(|g| member[self.mul(self.mul(g, h), self.inv(g))]))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// Commutator subgroup of the subgroup `set`.
    pub fn derived_subgroup(&self, set: &[usize]) -> Vec<usize> {
        let comms: BTreeSet<usize> =
            set.iter().flat_map(|&a| set.iter().map(move |&b| (a, b))).map(|(a, b)| self.commutator(a, b)).collect();
        self.subgroup_generated(&comms.into_iter().collect::<Vec<_>>())
    }

    pub fn derived_series(&self) -> Vec<Vec<usize>> {
        let mut series = vec![self.elements().collect::<Vec<_>>()];
        loop {
            let next = self.derived_subgroup(series.last().unwrap());
            if next.len() == series.last().unwrap().len() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().map_or(true, |s| s.len() == 1)
    }

    /// The subgroup `set` as a group in its own right, with the embedding
    /// (sub index -> ambient index).
    pub fn subgroup_as_group(&self, set: &[usize], name: &str) -> (FiniteGroup, Vec<usize>) {
        let mut emb: Vec<usize> = set.to_vec();
        emb.sort_unstable();
        emb.dedup();
        // identity first
        let pos = emb.iter().position(|&x| x == self.identity).expect("subgroup contains identity");
        emb.swap(0, pos);
        emb[1..].sort_unstable();
        let mut back = vec![usize::MAX; self.n];
        for (i, &x) in emb.iter().enumerate() {
            back[x] = i;
        }
        let m = emb.len();
        let mut table = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = back[self.mul(emb[i], emb[j])];
            }
        }
        let labels = emb.iter().map(|&x| self.labels[x].clone()).collect();
        (Self::unchecked(name, m, table, labels), emb)
    }

    /// All subgroups, each sorted, ordered by (size, elements).
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<Vec<usize>> = Vec::new();
        for g in self.elements() {
            let s = self.subgroup_generated(&[g]);
            if found.insert(s.clone()) {
                frontier.push(s);
            }
        }
        let cyclic: Vec<Vec<usize>> = found.iter().cloned().collect();
        while let Some(s) = frontier.pop() {
            for c in &cyclic {
                if c.iter().all(|x| s.binary_search(x).is_ok()) {
                    continue;
                }
                let gens: Vec<usize> = s.iter().chain(c.iter()).copied().collect();
                let t = self.subgroup_generated(&gens);
                if found.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// A small generating set, chosen greedily by decreasing element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = self.elements().collect();
        by_order.sort_by_key(|&g| (core::cmp::Reverse(self.element_order(g)), g));
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for g in by_order {
            if span.len() == self.n {
                break;
            }
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    /// Extends `gens[i] -> images[i]` to a homomorphism into `target`,
    /// returning `None` if the assignment is inconsistent.
    pub fn extend_homomorphism(&self, gens: &[usize], images: &[usize], target: &FiniteGroup) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.n];
        map[self.identity] = target.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (s, &img) in gens.iter().zip(images) {
                let y = self.mul(x, *s);
                let fy = target.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        if map.contains(&usize::MAX) {
            return None;
        }
        Some(map)
    }

    fn for_each_bijective_hom(&self, target: &FiniteGroup, mut visit: impl FnMut(Vec<usize>) -> bool) {
        if self.n != target.n {
            return;
        }
        let gens = self.generators();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                target.elements().filter(|&h| target.element_order(h) == o).collect()
            })
            .collect();
        let mut choice = vec![0usize; gens.len()];
        if candidates.iter().any(|c| c.is_empty()) {
            return;
        }
        loop {
            let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
            if let Some(map) = self.extend_homomorphism(&gens, &images, target) {
                let mut hit = vec![false; self.n];
                let mut bijective = true;
                for &m in &map {
                    if hit[m] {
                        bijective = false;
                        break;
                    }
                    hit[m] = true;
                }
                if bijective && !visit(map) {
                    return;
                }
            }
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return;
                }
                choice[k] += 1;
                if choice[k] < candidates[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    /// All automorphisms as permutations of element indices.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each_bijective_hom(self, |m| {
            out.push(m);
            true
        });
        out
    }

    pub fn isomorphism_to(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        let mut found = None;
        self.for_each_bijective_hom(other, |m| {
            found = Some(m);
            false
        });
        found
    }

    /// Cheap isomorphism invariant: sorted element orders, center size,
    /// derived length profile.
    pub fn fingerprint(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = self.elements().map(|g| self.element_order(g)).collect();
        orders.sort_unstable();
        orders.push(self.center().len());
        orders.extend(self.derived_series().iter().map(|s| s.len()));
        orders
    }

    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        self.n == other.n && self.fingerprint() == other.fingerprint() && self.isomorphism_to(other).is_some()
    }

    /// Direct product, element `(i, j)` at index `i * |other| + j`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (a1, a2) = (a / n2, a % n2);
                let (b1, b2) = (b / n2, b % n2);
                table[a * n + b] = self.mul(a1, b1) * n2 + other.mul(a2, b2);
            }
        }
        let labels = (0..n).map(|a| format!("({},{})", self.labels[a / n2], other.labels[a % n2])).collect();
        let name = format!("{}x{}", self.name, other.name);
        Self::unchecked(&name, n, table, labels)
    }
}

#[cfg(test)]
mod tests {
    use super::library::*;
    use super::*;

    #[test]
    fn klein_four_has_three_involutions() {
        let v4 = cyclic(2).direct_product(&cyclic(2));
        let census: Vec<usize> = v4.elements().map(|g| v4.element_order(g)).collect();
        assert_eq!(census.iter().filter(|&&o| o == 2).count(), 3);
        assert!(v4.is_abelian());
    }

    #[test]
    fn center_of_s3_is_trivial() {
        let s3 = symmetric(3);
        // brute-force commutation census
        let central: Vec<usize> =
            s3.elements().filter(|&a| s3.elements().all(|b| s3.mul(a, b) == s3.mul(b, a))).collect();
        assert_eq!(central, vec![0]);
        assert_eq!(s3.center(), vec![0]);
    }

    #[test]
    fn subgroup_generated_by_involution() {
        let v4 = cyclic(2).direct_product(&cyclic(2));
        assert_eq!(v4.subgroup_generated(&[1]).len(), 2);
        assert_eq!(v4.subgroup_generated(&[]), vec![0]);
    }

    #[test]
    fn solvability_of_small_symmetric_groups() {
        let s3 = symmetric(3);
        let sizes: Vec<usize> = s3.derived_series().iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![6, 3, 1]);
        let s4 = symmetric(4);
        let sizes: Vec<usize> = s4.derived_series().iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![24, 12, 4, 1]);
        assert!(s4.is_solvable());
        assert!(!symmetric(5).is_solvable());
    }

    #[test]
    fn invalid_tables_are_rejected() {
        assert!(FiniteGroup::from_table("bad", 2, vec![0, 1, 1, 1], vec![]).is_err());
        // Latin square without associativity (order-5 loop)
        let loop5 = vec![0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0];
        assert!(FiniteGroup::from_table("loop", 5, loop5, vec![]).is_err());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(cyclic(2).direct_product(&cyclic(2)).automorphisms().len(), 6);
        assert_eq!(cyclic(8).automorphisms().len(), 4);
        assert_eq!(symmetric(3).automorphisms().len(), 6);
        assert_eq!(dihedral(4).automorphisms().len(), 8);
        assert_eq!(quaternion().automorphisms().len(), 24);
    }

    #[test]
    fn isomorphism_detection() {
        assert!(dihedral(3).is_isomorphic(&symmetric(3)));
        assert!(!dihedral(4).is_isomorphic(&quaternion()));
        assert!(cyclic(6).is_isomorphic(&cyclic(2).direct_product(&cyclic(3))));
    }

    #[test]
    fn subgroup_lattice_sizes() {
        assert_eq!(symmetric(3).all_subgroups().len(), 6);
        assert_eq!(cyclic(2).direct_product(&cyclic(2)).all_subgroups().len(), 5);
        assert_eq!(dihedral(4).all_subgroups().len(), 10);
        assert_eq!(symmetric(4).all_subgroups().len(), 30);
    }
}
