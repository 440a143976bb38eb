//! Finite abelian groups, actions on them, the root-of-unity pairing with
//! the dual group, and semidirect products `G ⋉ A*`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar};

/// `Z/d_1 x ... x Z/d_r`; element `(a_1, ..., a_r)` is stored at the
/// mixed-radix index with the last coordinate varying fastest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(factors: &[u32]) -> Result<Self> {
        if factors.iter().any(|&d| d == 0) {
            return Err(Error::InvalidGroup("cyclic factors must be positive".into()));
        }
        Ok(AbelianGroup { factors: factors.to_vec() })
    }

    pub fn cyclic(n: u32) -> Self {
        AbelianGroup { factors: vec![n] }
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&d| d as usize).product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1u64, |acc, &d| num_integer::lcm(acc, d as u64))
    }

    pub fn name(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("x")
    }

    pub fn tuple(&self, mut index: usize) -> Vec<u32> {
        let mut out = vec![0; self.factors.len()];
        for (slot, &d) in out.iter_mut().zip(&self.factors).rev() {
            *slot = (index % d as usize) as u32;
            index /= d as usize;
        }
        out
    }

    pub fn index(&self, tuple: &[u32]) -> usize {
        tuple.iter().zip(&self.factors).fold(0, |acc, (&a, &d)| acc * d as usize + (a % d) as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ta, tb) = (self.tuple(a), self.tuple(b));
        let sum: Vec<u32> = ta.iter().zip(&tb).zip(&self.factors).map(|((&x, &y), &d)| (x + y) % d).collect();
        self.index(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let t: Vec<u32> = self.tuple(a).iter().zip(&self.factors).map(|(&x, &d)| (d - x) % d).collect();
        self.index(&t)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Index of the `i`-th standard generator.
    pub fn basis(&self, i: usize) -> usize {
        let mut t = vec![0; self.rank()];
        t[i] = 1;
        self.index(&t)
    }

    pub fn label(&self, a: usize) -> String {
        let t = self.tuple(a);
        if t.len() == 1 {
            format!("{}", t[0])
        } else {
            format!("({})", t.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(","))
        }
    }

    /// The dual group; it has the same invariant factors, and tuples are
    /// identified through [`PairingChar`].
    pub fn dual(&self) -> AbelianGroup {
        self.clone()
    }

    pub fn as_group(&self) -> FiniteGroup {
        let n = self.order();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.add(a, b);
            }
        }
        let labels = (0..n).map(|a| self.label(a)).collect();
        FiniteGroup::unchecked(&self.name(), n, table, labels)
    }
}

/// Left action of a finite group on an abelian group by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    target: AbelianGroup,
    /// `perm[g][a] = g . a`
    perm: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn trivial(group: &FiniteGroup, target: &AbelianGroup) -> Self {
        let perm = vec![(0..target.order()).collect(); group.order()];
        GroupAction { group: group.clone(), target: target.clone(), perm }
    }

    /// `images[g][i]` is the tuple `g . e_i` for the `i`-th standard generator.
    pub fn from_images(group: &FiniteGroup, target: &AbelianGroup, images: &[Vec<Vec<u32>>]) -> Result<Self> {
        if images.len() != group.order() {
            return Err(Error::InvalidGroup(format!(
                "action lists {} elements, group has {}",
                images.len(),
                group.order()
            )));
        }
        let mut perm = Vec::with_capacity(group.order());
        for (g, imgs) in images.iter().enumerate() {
            if imgs.len() != target.rank() {
                return Err(Error::InvalidGroup(format!("element {g}: expected {} generator images", target.rank())));
            }
            let img_idx: Vec<usize> = imgs.iter().map(|t| target.index(t)).collect();
            for (i, &d) in target.factors().iter().enumerate() {
                let mut x = 0;
                for _ in 0..d {
                    x = target.add(x, img_idx[i]);
                }
                if x != 0 {
                    return Err(Error::InvalidGroup(format!("element {g}: image of generator {i} has wrong order")));
                }
            }
            let row: Vec<usize> = (0..target.order())
                .map(|a| {
                    let t = target.tuple(a);
                    t.iter().zip(&img_idx).fold(0, |acc, (&k, &img)| {
                        (0..k).fold(acc, |acc2, _| target.add(acc2, img))
                    })
                })
                .collect();
            perm.push(row);
        }
        Self::from_permutations(group, target, perm)
    }

    /// Extends images of the standard generators of `A` under each listed
    /// generator of `G` to an action, validated as in [`Self::from_permutations`].
    pub fn from_generators(
        group: &FiniteGroup,
        target: &AbelianGroup,
        gens: &[usize],
        images: &[Vec<Vec<u32>>],
    ) -> Result<Self> {
        if gens.len() != images.len() {
            return Err(Error::InvalidGroup("one image list per generator is required".into()));
        }
        let mut gen_perms = Vec::with_capacity(gens.len());
        for (i, imgs) in images.iter().enumerate() {
            if imgs.len() != target.rank() || imgs.iter().any(|t| t.len() != target.rank()) {
                return Err(Error::InvalidGroup(format!("generator {i}: expected {} image tuples", target.rank())));
            }
            let img_idx: Vec<usize> = imgs.iter().map(|t| target.index(t)).collect();
            let perm: Vec<usize> = (0..target.order())
                .map(|a| {
                    target.tuple(a).iter().zip(&img_idx).fold(0, |acc, (&k, &img)| {
                        (0..k).fold(acc, |acc2, _| target.add(acc2, img))
                    })
                })
                .collect();
            gen_perms.push(perm);
        }
        let mut perm: Vec<Option<Vec<usize>>> = vec![None; group.order()];
        perm[group.identity()] = Some((0..target.order()).collect());
        let mut queue = vec![group.identity()];
        while let Some(x) = queue.pop() {
            let px = perm[x].clone().expect("visited");
            for (&s, ps) in gens.iter().zip(&gen_perms) {
                let sx = group.mul(s, x);
                let row: Vec<usize> = px.iter().map(|&a| ps[a]).collect();
                match &perm[sx] {
                    None => {
                        perm[sx] = Some(row);
                        queue.push(sx);
                    }
                    Some(existing) if *existing != row => {
                        return Err(Error::InvalidGroup("generator images do not define an action".into()));
                    }
                    Some(_) => {}
                }
            }
        }
        let perm = perm
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidGroup("listed elements do not generate the group".into()))?;
        Self::from_permutations(group, target, perm)
    }

    /// Validates an action given as one permutation of `A` per element of `G`.
    pub fn from_permutations(group: &FiniteGroup, target: &AbelianGroup, perm: Vec<Vec<usize>>) -> Result<Self> {
        let n = target.order();
        if perm.len() != group.order() || perm.iter().any(|p| p.len() != n) {
            return Err(Error::InvalidGroup("action table has the wrong shape".into()));
        }
        for (g, p) in perm.iter().enumerate() {
            let mut hit = vec![false; n];
            for &x in p {
                if x >= n || hit[x] {
                    return Err(Error::InvalidGroup(format!("element {g} does not act bijectively")));
                }
                hit[x] = true;
            }
            for a in 0..n {
                for b in 0..n {
                    if p[target.add(a, b)] != target.add(p[a], p[b]) {
                        return Err(Error::InvalidGroup(format!("element {g} is not additive")));
                    }
                }
            }
        }
        if perm[group.identity()].iter().enumerate().any(|(a, &x)| a != x) {
            return Err(Error::InvalidGroup("identity acts nontrivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if (0..n).any(|a| perm[gh][a] != perm[g][perm[h][a]]) {
                    return Err(Error::InvalidGroup(format!("(gh).a != g.(h.a) for g={g}, h={h}")));
                }
            }
        }
        Ok(GroupAction { group: group.clone(), target: target.clone(), perm })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    #[inline]
    pub fn act(&self, g: usize, a: usize) -> usize {
        self.perm[g][a]
    }

    pub fn permutations(&self) -> &[Vec<usize>] {
        &self.perm
    }

    pub fn is_trivial(&self) -> bool {
        self.perm.iter().all(|p| p.iter().enumerate().all(|(a, &x)| a == x))
    }

    /// The contragredient action on `A*`: `<g.b, a> = <b, g^-1 . a>`.
    pub fn dual_action(&self) -> GroupAction {
        let pairing = PairingChar::new(&self.target);
        let n = self.target.order();
        let perm = self
            .group
            .elements()
            .map(|g| {
                let ginv = self.group.inv(g);
                (0..n)
                    .map(|b| {
                        (0..n)
                            .find(|&b2| (0..n).all(|a| pairing.exponent(a, b2) == pairing.exponent(self.act(ginv, a), b)))
                            .expect("pairing is nondegenerate")
                    })
                    .collect()
            })
            .collect();
        GroupAction { group: self.group.clone(), target: self.target.dual(), perm }
    }
}

/// The pairing `e(a, b) = prod_i z_{d_i}^{a_i b_i}` between `A` and `A*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingChar {
    group: AbelianGroup,
    exponent: u64,
}

impl PairingChar {
    pub fn new(group: &AbelianGroup) -> Self {
        PairingChar { group: group.clone(), exponent: group.exponent() }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Order of the roots of unity the pairing takes values in.
    pub fn root_order(&self) -> u64 {
        self.exponent
    }

    /// `k` with `e(a, b) = z_exp^k`.
    pub fn exponent(&self, a: usize, b: usize) -> u64 {
        let (ta, tb) = (self.group.tuple(a), self.group.tuple(b));
        let e = self.exponent;
        ta.iter()
            .zip(&tb)
            .zip(self.group.factors())
            .fold(0u64, |acc, ((&x, &y), &d)| (acc + (x as u64 * y as u64 % d as u64) * (e / d as u64)) % e)
    }

    pub fn value(&self, field: &Field, a: usize, b: usize) -> Result<Scalar> {
        field.root_of_unity(self.exponent, self.exponent(a, b) as i64)
    }
}

/// `H = G ⋉ A*` with `(b, g)(b', g') = (b + g.b', g g')`; the pair `(b, g)`
/// (written `bg`) lives at index `g * |A| + b`.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: FiniteGroup,
    pub acting: FiniteGroup,
    pub normal: AbelianGroup,
}

impl SemidirectProduct {
    /// Builds `acting ⋉ normal`, where `action` acts on `normal`.
    pub fn new(action: &GroupAction) -> Self {
        let g = action.group();
        let a = action.target();
        let (ng, na) = (g.order(), a.order());
        let n = ng * na;
        let mut table = vec![0; n * n];
        for x in 0..n {
            let (gx, bx) = (x / na, x % na);
            for y in 0..n {
                let (gy, by) = (y / na, y % na);
                let b = a.add(bx, action.act(gx, by));
                table[x * n + y] = g.mul(gx, gy) * na + b;
            }
        }
        let labels = (0..n).map(|x| format!("{}|{}", a.label(x % na), g.label(x / na))).collect();
        let name = format!("{}:{}*", g.name(), a.name());
        SemidirectProduct {
            group: FiniteGroup::unchecked(&name, n, table, labels),
            acting: g.clone(),
            normal: a.clone(),
        }
    }

    pub fn index(&self, b: usize, g: usize) -> usize {
        g * self.normal.order() + b
    }

    pub fn split(&self, h: usize) -> (usize, usize) {
        (h % self.normal.order(), h / self.normal.order())
    }

    pub fn embed_acting(&self, g: usize) -> usize {
        self.index(0, g)
    }

    pub fn embed_normal(&self, b: usize) -> usize {
        self.index(b, 0)
    }
}
