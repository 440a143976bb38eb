//! Finite-dimensional algebras and coalgebras given by structure constants.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::Tensor;
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, Matrix};
use crate::scalars::Scalar;

/// Algebra with basis `e_0 .. e_{d-1}` and `e_i e_j = Σ_k m(i,j)_k e_k`.
#[derive(Clone, Debug)]
pub struct StructureConstantAlgebra {
    dim: usize,
    labels: Vec<String>,
    /// sparse `e_i e_j`, at `i * dim + j`
    table: Vec<Vec<(usize, Scalar)>>,
    unit: Vec<Scalar>,
    one: Scalar,
}

impl StructureConstantAlgebra {
    pub fn new(labels: Vec<String>, table: Vec<Vec<(usize, Scalar)>>, unit: Vec<Scalar>, one: Scalar) -> Result<Self> {
        let dim = labels.len();
        if table.len() != dim * dim || unit.len() != dim {
            return Err(Error::Mismatch(format!("structure constants do not match dimension {dim}")));
        }
        if table.iter().flatten().any(|(k, _)| *k >= dim) {
            return Err(Error::Mismatch("structure constant index out of range".into()));
        }
        let table = table
            .into_iter()
            .map(|v| {
                let mut m: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, c) in v {
                    let slot = m.entry(k).or_insert_with(Scalar::zero);
                    *slot = &*slot + &c;
                }
                m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            })
            .collect();
        Ok(StructureConstantAlgebra { dim, labels, table, unit, one })
    }

    /// `n x n` matrices with basis `E_ij` at index `i * n + j`.
    pub fn matrix_algebra(n: usize, one: Scalar) -> Self {
        let d = n * n;
        let mut table = vec![Vec::new(); d * d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    table[(i * n + j) * d + (j * n + l)].push((i * n + l, one.clone()));
                }
            }
        }
        let mut unit = vec![Scalar::zero(); d];
        for i in 0..n {
            unit[i * n + i] = one.clone();
        }
        let labels = (0..d).map(|k| format!("E{}{}", k / n, k % n)).collect();
        Self::new(labels, table, unit, one).expect("well-formed")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn one(&self) -> &Scalar {
        &self.one
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    /// The product as a dense vector.
    pub fn product_vector(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        for (k, c) in self.product(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = self.one.clone();
        v
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.product(i, j) {
                    out[*k].add_mul(&ab, c);
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ u x`.
    pub fn left_matrix(&self, u: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.product(i, j) {
                    m.add_to(*k, j, &(a * c));
                }
            }
        }
        m
    }

    /// First basis triple violating associativity.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let ij = self.product_vector(i, j);
                for k in 0..d {
                    let lhs = self.mul(&ij, &self.basis_vector(k));
                    let jk = self.product_vector(j, k);
                    let rhs = self.mul(&self.basis_vector(i), &jk);
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_failure().is_none()
    }

    pub fn is_unital(&self) -> bool {
        (0..self.dim).all(|i| {
            let e = self.basis_vector(i);
            self.mul(&self.unit, &e) == e && self.mul(&e, &self.unit) == e
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Basis of the center `{z : z x = x z for all x}`.
    pub fn center_basis(&self) -> Vec<Vec<Scalar>> {
        let d = self.dim;
        let mut eqs = EchelonBasis::new(d);
        for x in 0..d {
            // row l of the constraint (z x - x z)_l = Σ_k z_k (m(k,x)_l - m(x,k)_l)
            let mut rows = vec![vec![Scalar::zero(); d]; d];
            for k in 0..d {
                for (l, c) in self.product(k, x) {
                    rows[*l][k] = &rows[*l][k] + c;
                }
                for (l, c) in self.product(x, k) {
                    rows[*l][k] = &rows[*l][k] - c;
                }
            }
            for row in rows {
                if row.iter().any(|c| !c.is_zero()) {
                    eqs.insert(row);
                }
            }
        }
        eqs.complement_kernel()
    }

    pub fn center_dimension(&self) -> usize {
        self.center_basis().len()
    }

    /// The two-sided ideal generated by all commutators `e_i e_j - e_j e_i`.
    pub fn commutator_ideal(&self) -> EchelonBasis {
        let d = self.dim;
        let mut ideal = EchelonBasis::new(d);
        let mut queue: Vec<Vec<Scalar>> = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let v: Vec<Scalar> =
                    self.product_vector(i, j).iter().zip(self.product_vector(j, i)).map(|(a, b)| a - &b).collect();
                if ideal.insert(v.clone()) {
                    queue.push(v);
                }
            }
        }
        while let Some(v) = queue.pop() {
            if ideal.rank() == d {
                break;
            }
            for k in 0..d {
                let e = self.basis_vector(k);
                for w in [self.mul(&e, &v), self.mul(&v, &e)] {
                    if ideal.insert(w.clone()) {
                        queue.push(w);
                    }
                }
            }
        }
        ideal
    }

    /// `dim A / <[A, A]>`: the number of one-dimensional representations
    /// when `A` is split semisimple.
    pub fn abelianization_dimension(&self) -> usize {
        self.dim - self.commutator_ideal().rank()
    }

    /// `A / <[A, A]>` with basis the images of the non-pivot basis vectors,
    /// and the projection matrix from `A`.
    pub fn commutative_quotient(&self) -> (StructureConstantAlgebra, Matrix) {
        let ideal = self.commutator_ideal();
        let mut is_pivot = vec![false; self.dim];
        for &p in ideal.pivots() {
            is_pivot[p] = true;
        }
        let keep: Vec<usize> = (0..self.dim).filter(|&i| !is_pivot[i]).collect();
        let project = |v: Vec<Scalar>| -> Vec<Scalar> {
            let r = ideal.reduce(v);
            keep.iter().map(|&i| r[i].clone()).collect()
        };
        let q = keep.len();
        let mut table = Vec::with_capacity(q * q);
        for &i in &keep {
            for &j in &keep {
                let img = project(self.product_vector(i, j));
                table.push(img.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        let unit = project(self.unit.clone());
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let proj = Matrix::from_fn(q, self.dim, |r, c| project(self.basis_vector(c))[r].clone());
        let quotient = StructureConstantAlgebra::new(labels, table, unit, self.one.clone()).expect("well-formed");
        (quotient, proj)
    }
}

/// Coalgebra with basis `x_0 .. x_{d-1}`, `Δ(x_i) = Σ c x_a ⊗ x_b`, counit `ε`.
#[derive(Clone, Debug)]
pub struct Coalgebra {
    dim: usize,
    labels: Vec<String>,
    coproduct: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Vec<Scalar>,
    one: Scalar,
}

impl Coalgebra {
    pub fn new(
        labels: Vec<String>,
        coproduct: Vec<Vec<(usize, usize, Scalar)>>,
        counit: Vec<Scalar>,
        one: Scalar,
    ) -> Result<Self> {
        let dim = labels.len();
        if coproduct.len() != dim || counit.len() != dim {
            return Err(Error::Mismatch(format!("coalgebra data does not match dimension {dim}")));
        }
        if coproduct.iter().flatten().any(|(a, b, _)| *a >= dim || *b >= dim) {
            return Err(Error::Mismatch("coproduct index out of range".into()));
        }
        Ok(Coalgebra { dim, labels, coproduct, counit, one })
    }

    /// Coalgebra on `k[G]` from the rank-2 images of the group elements.
    pub fn from_tensors(labels: Vec<String>, images: &[Tensor], counit: Vec<Scalar>, one: Scalar) -> Result<Self> {
        let coproduct = images
            .iter()
            .map(|t| t.terms().map(|(idx, c)| (idx[0], idx[1], c.clone())).collect())
            .collect();
        Self::new(labels, coproduct, counit, one)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn coproduct(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.coproduct[i]
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    fn iterate(&self, i: usize, left: bool) -> BTreeMap<(usize, usize, usize), Scalar> {
        let mut out: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for (a, b, c) in &self.coproduct[i] {
            let (split, keep) = if left { (*a, *b) } else { (*b, *a) };
            for (x, y, d) in &self.coproduct[split] {
                let key = if left { (*x, *y, keep) } else { (keep, *x, *y) };
                out.entry(key).or_insert_with(Scalar::zero).add_mul(c, d);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// First basis element on which `(Δ⊗I)Δ ≠ (I⊗Δ)Δ`.
    pub fn coassociativity_failure(&self) -> Option<usize> {
        (0..self.dim).find(|&i| self.iterate(i, true) != self.iterate(i, false))
    }

    pub fn is_coassociative(&self) -> bool {
        self.coassociativity_failure().is_none()
    }

    pub fn is_counital(&self) -> bool {
        (0..self.dim).all(|i| {
            let mut left = vec![Scalar::zero(); self.dim];
            let mut right = vec![Scalar::zero(); self.dim];
            for (a, b, c) in &self.coproduct[i] {
                left[*b].add_mul(&self.counit[*a], c);
                right[*a].add_mul(&self.counit[*b], c);
            }
            let mut e = vec![Scalar::zero(); self.dim];
            e[i] = self.one.clone();
            left == e && right == e
        })
    }

    /// Dual algebra with `<Y_i * Y_j, x> = <Y_i ⊗ Y_j, Δ(x)>` and unit `ε`.
    pub fn dualize(&self) -> Result<StructureConstantAlgebra> {
        if let Some(i) = self.coassociativity_failure() {
            return Err(Error::Verification(format!("coproduct is not coassociative at {}", self.labels[i])));
        }
        let d = self.dim;
        let mut table = vec![Vec::new(); d * d];
        for (x, terms) in self.coproduct.iter().enumerate() {
            for (a, b, c) in terms {
                table[a * d + b].push((x, c.clone()));
            }
        }
        let alg = StructureConstantAlgebra::new(self.labels.clone(), table, self.counit.clone(), self.one.clone())?;
        debug_assert!(alg.is_associative());
        Ok(alg)
    }
}
