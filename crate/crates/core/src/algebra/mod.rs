//! Group algebras `k[G]^{⊗r}`: products, Hopf structure maps, leg
//! placement, inversion; and finite-dimensional (co)algebras given by
//! structure constants.

mod structure;
mod tensor;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

pub use structure::{Coalgebra, StructureConstantAlgebra};
pub use tensor::Tensor;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::Matrix;
use crate::scalars::{Field, Scalar};

/// Products larger than this many keys accumulate in a map instead of a
/// dense buffer unless the product is expected to be dense.
const DENSE_LIMIT: usize = 1 << 20;

/// A group algebra `k[G]` over a fixed field, with its tensor powers.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    group: FiniteGroup,
    field: Field,
}

impl GroupAlgebra {
    pub fn new(group: FiniteGroup, field: Field) -> Self {
        debug_assert_eq!(group.identity(), 0);
        GroupAlgebra { group, field }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn one(&self) -> Scalar {
        self.field.one()
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        self.field.from_int(n)
    }

    /// `g_1 ⊗ ... ⊗ g_r` with coefficient 1.
    pub fn basis(&self, idx: &[usize]) -> Tensor {
        Tensor::basis(idx, self.order(), self.one())
    }

    pub fn element(&self, g: usize) -> Tensor {
        self.basis(&[g])
    }

    /// `1 ⊗ ... ⊗ 1` (the identity element in every leg).
    pub fn unit(&self, rank: usize) -> Tensor {
        self.basis(&vec![0; rank])
    }

    pub fn zero(&self, rank: usize) -> Tensor {
        Tensor::zero(rank, self.order())
    }

    pub fn tensor(&self, rank: usize, terms: impl IntoIterator<Item = (Vec<usize>, Scalar)>) -> Tensor {
        Tensor::from_terms(rank, self.order(), terms)
    }

    pub fn from_vector(&self, v: &[Scalar]) -> Tensor {
        assert_eq!(v.len(), self.order());
        self.tensor(1, v.iter().enumerate().map(|(g, c)| (vec![g], c.clone())))
    }

    pub fn to_vector(&self, x: &Tensor) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.order()];
        for (idx, c) in x.terms() {
            v[idx[0]] = c.clone();
        }
        v
    }

    fn check(&self, t: &Tensor) -> Result<()> {
        if t.group_order() != self.order() {
            return Err(Error::Mismatch(format!(
                "tensor over a group of order {}, algebra has order {}",
                t.group_order(),
                self.order()
            )));
        }
        Ok(())
    }

    /// Componentwise product in `k[G]^{⊗r}`.
    pub fn mul(&self, a: &Tensor, b: &Tensor) -> Result<Tensor> {
        self.check(a)?;
        self.check(b)?;
        if a.rank() != b.rank() {
            return Err(Error::Mismatch(format!("rank {} times rank {}", a.rank(), b.rank())));
        }
        Ok(self.mul_unchecked(a, b))
    }

    /// `mul` for operands already known to match.
    pub fn mul_unchecked(&self, a: &Tensor, b: &Tensor) -> Tensor {
        let r = a.rank();
        let n = self.order();
        if a.is_empty() || b.is_empty() {
            return self.zero(r);
        }
        let table = self.group.table();
        let strides: Vec<u32> = (0..r).map(|s| (n as u32).pow((r - 1 - s) as u32)).collect();
        let digits = |t: &Tensor| -> Vec<usize> {
            t.raw_terms().iter().flat_map(|(k, _)| tensor::decode(*k, r, n)).collect()
        };
        let (da, db) = (digits(a), digits(b));
        let (ta, tb) = (a.raw_terms(), b.raw_terms());
        let size = n.pow(r as u32);
        let pairs = ta.len() * tb.len();
        let key = |i: usize, j: usize| -> u32 {
            (0..r).map(|s| table[da[i * r + s] * n + db[j * r + s]] as u32 * strides[s]).sum()
        };
        if size <= DENSE_LIMIT && (size <= 4096 || pairs * 8 >= size) {
            let mut acc = vec![Scalar::zero(); size];
            for i in 0..ta.len() {
                for j in 0..tb.len() {
                    acc[key(i, j) as usize].add_mul(&ta[i].1, &tb[j].1);
                }
            }
            let terms = acc.into_iter().enumerate().map(|(k, c)| (k as u32, c)).collect();
            Tensor::from_sorted(r, n, terms)
        } else {
            let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
            for i in 0..ta.len() {
                for j in 0..tb.len() {
                    acc.entry(key(i, j)).or_insert_with(Scalar::zero).add_mul(&ta[i].1, &tb[j].1);
                }
            }
            Tensor::from_sorted_map(r, n, acc)
        }
    }

    /// Product of several tensors, left to right.
    pub fn product(&self, factors: &[&Tensor]) -> Result<Tensor> {
        let (first, rest) = factors.split_first().ok_or_else(|| Error::Mismatch("empty product".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, t| self.mul(&acc, t))
    }

    /// `Δ(g) = g ⊗ g`, extended linearly.
    pub fn coproduct(&self, x: &Tensor) -> Tensor {
        assert_eq!(x.rank(), 1);
        self.coproduct_leg(x, 0)
    }

    /// Applies `Δ` to leg `slot`, producing a tensor of rank one higher.
    pub fn coproduct_leg(&self, t: &Tensor, slot: usize) -> Tensor {
        assert!(slot < t.rank());
        t.map_indices(t.rank() + 1, |idx| {
            let mut out = idx.to_vec();
            out.insert(slot, idx[slot]);
            out
        })
    }

    /// `ε(Σ c_g g) = Σ c_g`.
    pub fn counit(&self, x: &Tensor) -> Scalar {
        assert_eq!(x.rank(), 1);
        x.terms().fold(self.field.zero(), |acc, (_, c)| &acc + c)
    }

    /// Applies `ε` to leg `slot` of a tensor of rank at least 2.
    pub fn counit_leg(&self, t: &Tensor, slot: usize) -> Tensor {
        assert!(t.rank() >= 2 && slot < t.rank());
        Tensor::from_terms(
            t.rank() - 1,
            self.order(),
            t.terms().map(|(mut idx, c)| {
                idx.remove(slot);
                (idx, c.clone())
            }),
        )
    }

    /// `S(g) = g^{-1}`, extended linearly.
    pub fn antipode(&self, x: &Tensor) -> Tensor {
        assert_eq!(x.rank(), 1);
        self.antipode_leg(x, 0)
    }

    pub fn antipode_leg(&self, t: &Tensor, slot: usize) -> Tensor {
        t.map_indices(t.rank(), |idx| {
            let mut out = idx.to_vec();
            out[slot] = self.group.inv(idx[slot]);
            out
        })
    }

    /// Multiplication map on two adjacent legs: `a ⊗ b ↦ ab` at `slot, slot+1`.
    pub fn multiply_legs(&self, t: &Tensor, slot: usize) -> Tensor {
        assert!(slot + 1 < t.rank());
        Tensor::from_terms(
            t.rank() - 1,
            self.order(),
            t.terms().map(|(mut idx, c)| {
                let b = idx.remove(slot + 1);
                idx[slot] = self.group.mul(idx[slot], b);
                (idx, c.clone())
            }),
        )
    }

    /// Applies the linear map `m` (column `g` is the image of `g`) to leg `slot`.
    pub fn apply_leg(&self, t: &Tensor, slot: usize, m: &Matrix) -> Tensor {
        let n = self.order();
        let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        for (idx, c) in t.terms() {
            for h in 0..n {
                let e = m.get(h, idx[slot]);
                if e.is_zero() {
                    continue;
                }
                let mut out = idx.clone();
                out[slot] = h;
                acc.entry(out).or_insert_with(Scalar::zero).add_mul(c, e);
            }
        }
        self.tensor(t.rank(), acc)
    }

    /// Places leg `i` of `t` at slot `positions[i]` of a rank-`rank` tensor,
    /// filling the remaining slots with the identity (`J_12`, `J_23`,
    /// `J_13`, and `J_21` via `positions = [1, 0]`).
    pub fn embed(&self, t: &Tensor, positions: &[usize], rank: usize) -> Result<Tensor> {
        let distinct: BTreeSet<usize> = positions.iter().copied().collect();
        if positions.len() != t.rank() || distinct.len() != positions.len() || positions.iter().any(|&p| p >= rank) {
            return Err(Error::Precondition(format!(
                "cannot place a rank-{} tensor at slots {positions:?} of rank {rank}",
                t.rank()
            )));
        }
        Ok(t.map_indices(rank, |idx| {
            let mut out = vec![0; rank];
            for (leg, &p) in positions.iter().enumerate() {
                out[p] = idx[leg];
            }
            out
        }))
    }

    /// `J ↦ J_21`.
    pub fn flip(&self, t: &Tensor) -> Tensor {
        self.embed(t, &[1, 0], 2).expect("rank-2 tensor")
    }

    /// Two-sided inverse in `k[G]^{⊗r}`.
    ///
    /// The inverse lies in the group algebra of the subgroup of `G^r`
    /// generated by the support, so the solve runs there: by characters when
    /// that subgroup is abelian and the field has the roots of unity, by
    /// elimination on the left-regular matrix otherwise.
    pub fn invert(&self, a: &Tensor) -> Result<Tensor> {
        self.check(a)?;
        if a.is_empty() {
            return Err(Error::NotInvertible);
        }
        let power = PowerGroup { group: &self.group, rank: a.rank() };
        let gens: Vec<u32> = a.raw_terms().iter().map(|(k, _)| *k).collect();
        let sub = power.closure(&gens);
        let abelian = gens.iter().all(|&x| gens.iter().all(|&y| power.mul(x, y) == power.mul(y, x)));
        let inv = if abelian {
            match self.invert_by_characters(a, &power, &gens, &sub) {
                Ok(t) => t,
                Err(Error::RootUnavailable { .. }) => self.invert_by_solve(a, &power, &sub)?,
                Err(e) => return Err(e),
            }
        } else {
            self.invert_by_solve(a, &power, &sub)?
        };
        let unit = self.unit(a.rank());
        if self.mul_unchecked(a, &inv) != unit || self.mul_unchecked(&inv, a) != unit {
            return Err(Error::Verification("computed inverse is not two-sided".into()));
        }
        Ok(inv)
    }

    fn invert_by_solve(&self, a: &Tensor, power: &PowerGroup, sub: &[u32]) -> Result<Tensor> {
        let pos: BTreeMap<u32, usize> = sub.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let m = sub.len();
        let mut l = Matrix::zeros(m, m);
        for (col, &y) in sub.iter().enumerate() {
            for (k, c) in a.raw_terms() {
                l.add_to(pos[&power.mul(*k, y)], col, c);
            }
        }
        let mut rhs = vec![self.field.zero(); m];
        rhs[pos[&0]] = self.one();
        let x = l.solve(&rhs).ok_or(Error::NotInvertible)?;
        let inv = l.mul_vec(&x);
        if inv != rhs {
            return Err(Error::NotInvertible);
        }
        let terms: BTreeMap<u32, Scalar> = sub.iter().zip(x).map(|(&k, c)| (k, c)).collect();
        Ok(Tensor::from_sorted_map(a.rank(), self.order(), terms))
    }

    fn invert_by_characters(&self, a: &Tensor, power: &PowerGroup, gens: &[u32], sub: &[u32]) -> Result<Tensor> {
        let m = sub.len();
        let (elems, chars, e) = power.characters(gens);
        debug_assert_eq!(elems.len(), m);
        let roots: Vec<Scalar> = (0..e).map(|k| self.field.root_of_unity(e, k as i64)).collect::<Result<_>>()?;
        let pos: BTreeMap<u32, usize> = elems.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let support: Vec<(usize, &Scalar)> = a.raw_terms().iter().map(|(k, c)| (pos[k], c)).collect();
        let mut hat_inv = Vec::with_capacity(m);
        for chi in &chars {
            let mut v = self.field.zero();
            for &(i, c) in &support {
                v.add_mul(c, &roots[chi[i] as usize]);
            }
            hat_inv.push(v.inv().map_err(|_| Error::NotInvertible)?);
        }
        let scale = self.field.from_int(m as i64).inv()?;
        let mut terms = BTreeMap::new();
        for (i, &key) in elems.iter().enumerate() {
            let mut v = self.field.zero();
            for (chi, h) in chars.iter().zip(&hat_inv) {
                v.add_mul(h, &roots[((e - chi[i]) % e) as usize]);
            }
            terms.insert(key, &v * &scale);
        }
        Ok(Tensor::from_sorted_map(a.rank(), self.order(), terms))
    }

    /// Matrix of left multiplication by `x` on `k[G]` (column `g` is `x g`).
    pub fn left_matrix(&self, x: &Tensor) -> Matrix {
        let n = self.order();
        let mut m = Matrix::zeros(n, n);
        for (idx, c) in x.terms() {
            for g in 0..n {
                m.add_to(self.group.mul(idx[0], g), g, c);
            }
        }
        m
    }

    /// Whether `x` commutes with every group element.
    pub fn is_central(&self, x: &Tensor) -> bool {
        self.group.elements().all(|g| {
            let gt = self.element(g);
            self.mul_unchecked(x, &gt) == self.mul_unchecked(&gt, x)
        })
    }
}

/// `G^r` with elements encoded as tensor keys.
struct PowerGroup<'a> {
    group: &'a FiniteGroup,
    rank: usize,
}

impl PowerGroup<'_> {
    fn mul(&self, a: u32, b: u32) -> u32 {
        let n = self.group.order();
        let (da, db) = (tensor::decode(a, self.rank, n), tensor::decode(b, self.rank, n));
        let prod: Vec<usize> = da.iter().zip(&db).map(|(&x, &y)| self.group.mul(x, y)).collect();
        tensor::encode(&prod, n)
    }

    fn order_of(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`, identity (key 0) first.
    fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = BTreeSet::from([0u32]);
        let mut out = vec![0u32];
        let mut i = 0;
        while i < out.len() {
            for &g in gens {
                let y = self.mul(out[i], g);
                if seen.insert(y) {
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// Characters of the abelian subgroup generated by `gens`, as exponent
    /// tables `chi[i]` with `chi(elems[i]) = z_e^{chi[i]}`.
    fn characters(&self, gens: &[u32]) -> (Vec<u32>, Vec<Vec<u64>>, u64) {
        let e = gens.iter().fold(1u64, |acc, &g| num_integer::lcm(acc, self.order_of(g)));
        let mut cur = vec![0u32];
        let mut chars: Vec<Vec<u64>> = vec![vec![0]];
        for &s in gens {
            let pos: BTreeMap<u32, usize> = cur.iter().enumerate().map(|(i, &k)| (k, i)).collect();
            if pos.contains_key(&s) {
                continue;
            }
            let mut powers = vec![0u32, s];
            while !pos.contains_key(powers.last().unwrap()) {
                let next = self.mul(*powers.last().unwrap(), s);
                powers.push(next);
            }
            let m = (powers.len() - 1) as u64;
            let landing = pos[powers.last().unwrap()];
            let mut next_elems = Vec::with_capacity(cur.len() * m as usize);
            for &p in &powers[..m as usize] {
                for &k in &cur {
                    next_elems.push(self.mul(p, k));
                }
            }
            let mut next_chars = Vec::new();
            for chi in &chars {
                let t = chi[landing];
                for w in (0..e).filter(|w| (m * w) % e == t) {
                    let mut vals = Vec::with_capacity(next_elems.len());
                    for j in 0..m {
                        for v in chi {
                            vals.push((w * j + v) % e);
                        }
                    }
                    next_chars.push(vals);
                }
            }
            cur = next_elems;
            chars = next_chars;
        }
        (cur, chars, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::library::{cyclic, symmetric};

    fn v4() -> GroupAlgebra {
        GroupAlgebra::new(cyclic(2).direct_product(&cyclic(2)), Field::rationals())
    }

    #[test]
    fn hopf_axioms_on_basis() {
        let alg = GroupAlgebra::new(symmetric(3), Field::rationals());
        for g in alg.group().elements() {
            let x = alg.element(g);
            let d = alg.coproduct(&x);
            assert_eq!(alg.coproduct_leg(&d, 0), alg.coproduct_leg(&d, 1));
            assert_eq!(alg.counit_leg(&d, 0), x);
            assert_eq!(alg.counit_leg(&d, 1), x);
            let s = alg.multiply_legs(&alg.antipode_leg(&d, 0), 0);
            assert_eq!(s, alg.unit(1).scale(&alg.counit(&x)));
            assert_eq!(alg.antipode(&alg.antipode(&x)), x);
        }
    }

    #[test]
    fn counit_is_linear() {
        let alg = v4();
        let x = alg.tensor(1, [(vec![0], Scalar::from_int(2)), (vec![3], Scalar::from_int(-3))]);
        assert_eq!(alg.counit(&x), Scalar::from_int(-1));
    }

    #[test]
    fn product_of_pure_tensors() {
        let alg = GroupAlgebra::new(symmetric(3), Field::rationals());
        let g = alg.group();
        let a = alg.basis(&[1, 2]);
        let b = alg.basis(&[3, 4]);
        assert_eq!(alg.mul(&a, &b).unwrap(), alg.basis(&[g.mul(1, 3), g.mul(2, 4)]));
        assert!(alg.mul(&a, &alg.element(1)).is_err());
    }

    #[test]
    fn embed_places_legs() {
        let alg = v4();
        assert_eq!(alg.embed(&alg.unit(2), &[0, 2], 3).unwrap(), alg.unit(3));
        assert_eq!(alg.flip(&alg.basis(&[1, 2])), alg.basis(&[2, 1]));
        let j = alg.tensor(2, [(vec![1, 2], Scalar::from_int(5)), (vec![0, 3], Scalar::one())]);
        let j23 = alg.embed(&j, &[1, 2], 3).unwrap();
        assert_eq!(j23.coefficient(&[0, 1, 2]), Scalar::from_int(5));
        assert!(alg.embed(&j, &[1, 1], 3).is_err());
    }

    #[test]
    fn invert_pure_and_mixed() {
        let alg = GroupAlgebra::new(symmetric(3), Field::rationals());
        let g = alg.group();
        assert_eq!(alg.invert(&alg.unit(2)).unwrap(), alg.unit(2));
        let t = alg.basis(&[1, 4]);
        assert_eq!(alg.invert(&t).unwrap(), alg.basis(&[g.inv(1), g.inv(4)]));
        // 2e + s in k[S3] (non-abelian support closure handled by solve)
        let x = alg.tensor(1, [(vec![0], Scalar::from_int(2)), (vec![1], Scalar::one()), (vec![3], Scalar::one())]);
        let y = alg.invert(&x).unwrap();
        assert_eq!(alg.mul(&x, &y).unwrap(), alg.unit(1));
        // e - g with g of order 2 is a zero divisor
        let z = alg.tensor(1, [(vec![0], Scalar::one()), (vec![3], Scalar::from_int(-1))]);
        assert!(matches!(alg.invert(&z), Err(Error::NotInvertible)));
    }

    #[test]
    fn character_inversion_matches_solve() {
        let alg = GroupAlgebra::new(cyclic(4).direct_product(&cyclic(2)), Field::cyclotomic(4).unwrap());
        let x = alg.tensor(
            2,
            [
                (vec![0, 0], Scalar::from_int(3)),
                (vec![1, 2], Scalar::one()),
                (vec![5, 3], Scalar::from_int(-2)),
                (vec![2, 7], Scalar::from_ratio(1, 2)),
            ],
        );
        let power = PowerGroup { group: alg.group(), rank: 2 };
        let gens: Vec<u32> = x.raw_terms().iter().map(|(k, _)| *k).collect();
        let sub = power.closure(&gens);
        let a = alg.invert_by_characters(&x, &power, &gens, &sub).unwrap();
        let b = alg.invert_by_solve(&x, &power, &sub).unwrap();
        assert_eq!(a, b);
        assert_eq!(alg.mul(&x, &a).unwrap(), alg.unit(2));
    }

    #[test]
    fn character_tables_are_orthogonal() {
        let g = cyclic(4).direct_product(&cyclic(2));
        let power = PowerGroup { group: &g, rank: 1 };
        let (elems, chars, e) = power.characters(&[1, 4, 2]);
        assert_eq!(elems.len(), 8);
        assert_eq!(chars.len(), 8);
        assert_eq!(e, 4);
        let distinct: BTreeSet<&Vec<u64>> = chars.iter().collect();
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn prime_field_inversion() {
        let f = Field::prime(5, 4).unwrap();
        let alg = GroupAlgebra::new(cyclic(4), f.clone());
        let x = alg.tensor(1, [(vec![0], f.from_int(1)), (vec![1], f.from_int(1))]);
        // 1 + g is invertible unless some character sends g to -1
        assert!(matches!(alg.invert(&x), Err(Error::NotInvertible)));
        let y = alg.tensor(1, [(vec![0], f.from_int(2)), (vec![2], f.from_int(1))]);
        let yi = alg.invert(&y).unwrap();
        assert_eq!(alg.mul(&y, &yi).unwrap(), alg.unit(1));
    }
}
