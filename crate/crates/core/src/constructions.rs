//! Twist factories: from an irreducible projective representation of
//! dimension `|H|^{1/2}`, and from a bijective 1-cocycle `π: G → A` on
//! `H = G ⋉ A*`. Also 2-cocycles, twisted group algebras, the
//! Heisenberg-type representation and the closed-form structure constants
//! of the second construction.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::algebra::{GroupAlgebra, StructureConstantAlgebra, Tensor};
use crate::error::{Error, Result};
use crate::groups::{AbelianGroup, FiniteGroup, GroupAction, PairingChar, SemidirectProduct};
use crate::linalg::Matrix;
use crate::movshev::{check_equivariant_isomorphism, dual_movshev};
use crate::report::Report;
use crate::scalars::{Field, Scalar};
use crate::twists::{describe, r_matrix, verify_minimal, verify_twist, Twist};

/// Upper bound on functionals tried by [`twist_from_rep`].
pub const MAX_CANDIDATES: usize = 100;

/// Upper bound on `|G|` for [`find_bijective_1cocycles`].
pub const FINDER_LIMIT: usize = 8;

/// A 2-cocycle `c: H × H → k*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    group: FiniteGroup,
    values: Vec<Scalar>,
}

impl Cocycle2 {
    /// Validates nonvanishing, normalization and the cocycle identity.
    pub fn new(group: FiniteGroup, values: Vec<Scalar>) -> Result<Self> {
        let c = Self::unchecked(group, values)?;
        if c.values.iter().any(|v| v.is_zero()) {
            return Err(Error::Verification("cocycle takes the value 0".into()));
        }
        if !c.is_normalized() {
            return Err(Error::Verification("cocycle is not normalized".into()));
        }
        if let Some((x, y, z)) = c.failure() {
            let g = &c.group;
            return Err(Error::Verification(format!(
                "cocycle identity fails at ({}, {}, {})",
                g.label(x),
                g.label(y),
                g.label(z)
            )));
        }
        Ok(c)
    }

    /// Table of values `c(x, y)` at `x * n + y`, not validated.
    pub fn unchecked(group: FiniteGroup, values: Vec<Scalar>) -> Result<Self> {
        let n = group.order();
        if values.len() != n * n {
            return Err(Error::Mismatch(format!("expected {} cocycle values", n * n)));
        }
        Ok(Cocycle2 { group, values })
    }

    pub fn trivial(group: FiniteGroup, field: &Field) -> Self {
        let n = group.order();
        Cocycle2 { group, values: vec![field.one(); n * n] }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn value(&self, x: usize, y: usize) -> &Scalar {
        &self.values[x * self.group.order() + y]
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn is_normalized(&self) -> bool {
        let e = self.group.identity();
        self.group.elements().all(|x| self.value(e, x).is_one() && self.value(x, e).is_one())
    }

    /// First triple violating `c(x,y) c(xy,z) = c(y,z) c(x,yz)`.
    pub fn failure(&self) -> Option<(usize, usize, usize)> {
        let g = &self.group;
        for x in g.elements() {
            for y in g.elements() {
                let xy = g.mul(x, y);
                for z in g.elements() {
                    let lhs = self.value(x, y) * self.value(xy, z);
                    let rhs = self.value(y, z) * self.value(x, g.mul(y, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// `c · ∂μ`, i.e. `c(x,y) μ(x) μ(y) / μ(xy)`: the cocycle of the lift
    /// rescaled by `μ`.
    pub fn with_coboundary(&self, mu: &[Scalar]) -> Result<Cocycle2> {
        let g = &self.group;
        let mut values = Vec::with_capacity(self.values.len());
        for x in g.elements() {
            for y in g.elements() {
                values.push((&(self.value(x, y) * &mu[x]) * &mu[y]).div(&mu[g.mul(x, y)])?);
            }
        }
        Ok(Cocycle2 { group: g.clone(), values })
    }

    /// `c(g,h) / c(h,g)`; a bicharacter when the group is abelian.
    pub fn alternating_form(&self, g: usize, h: usize) -> Scalar {
        self.value(g, h).div(self.value(h, g)).expect("cocycle values are nonzero")
    }

    /// Every `μ: H → k*` with `c = ∂μ`, i.e. `c(x,y) = μ(x)μ(y)/μ(xy)`.
    ///
    /// `μ(s)^{ord s}` is forced for each generator `s`, so the search runs
    /// over roots of those values. It is exhaustive when they are roots of
    /// unity of the field; otherwise a splitting error is returned.
    pub fn trivializations(&self, field: &Field) -> Result<Vec<Vec<Scalar>>> {
        let g = &self.group;
        let gens = g.generators();
        let roots = field_roots_of_unity(field);
        let mut choices = Vec::with_capacity(gens.len());
        for &s in &gens {
            let mut forced = field.one();
            let mut power = s;
            while power != g.identity() {
                forced = &forced * self.value(power, s);
                power = g.mul(power, s);
            }
            if !roots.contains(&forced) {
                return Err(Error::Splitting(format!("{forced} is not a root of unity in {field}")));
            }
            let order = g.element_order(s) as u64;
            choices.push(roots.iter().filter(|z| z.pow(order) == forced).cloned().collect::<Vec<_>>());
        }
        let mut out = Vec::new();
        let mut assigned = Vec::with_capacity(gens.len());
        self.extend_trivialization(&gens, &choices, field, &mut assigned, &mut out);
        Ok(out)
    }

    fn extend_trivialization(&self, gens: &[usize], choices: &[Vec<Scalar>], field: &Field, assigned: &mut Vec<Scalar>, out: &mut Vec<Vec<Scalar>>) {
        let k = assigned.len();
        if k == gens.len() {
            if let Some(mu) = self.propagate(&gens[..k], assigned, field) {
                if self.is_coboundary_of(&mu) {
                    out.push(mu);
                }
            }
            return;
        }
        for z in &choices[k] {
            assigned.push(z.clone());
            if self.propagate(&gens[..=k], assigned, field).is_some() {
                self.extend_trivialization(gens, choices, field, assigned, out);
            }
            assigned.pop();
        }
    }

    /// `c(x,y) μ(xy) = μ(x) μ(y)` everywhere.
    fn is_coboundary_of(&self, mu: &[Scalar]) -> bool {
        let g = &self.group;
        g.elements().all(|x| g.elements().all(|y| self.value(x, y) * &mu[g.mul(x, y)] == &mu[x] * &mu[y]))
    }

    /// `μ` on the subgroup generated by `gens` from `μ(xs) = μ(x)μ(s)/c(x,s)`,
    /// or `None` on a conflict. Entries outside the subgroup are zero.
    fn propagate(&self, gens: &[usize], values: &[Scalar], field: &Field) -> Option<Vec<Scalar>> {
        let g = &self.group;
        let e = g.identity();
        let mut mu = vec![field.zero(); g.order()];
        let mut known = vec![false; g.order()];
        mu[e] = field.one();
        known[e] = true;
        let mut queue = alloc::collections::VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            for (&s, v) in gens.iter().zip(values) {
                let y = g.mul(x, s);
                let val = (&mu[x] * v).div(self.value(x, s)).ok()?;
                if known[y] {
                    if mu[y] != val {
                        return None;
                    }
                } else {
                    mu[y] = val;
                    known[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Some(mu)
    }

    /// Whether `c` is a coboundary over `field`.
    pub fn is_coboundary(&self, field: &Field) -> Result<bool> {
        Ok(!self.trivializations(field)?.is_empty())
    }

    /// Whether `c` is a coboundary over the algebraic closure, i.e. the
    /// twisted group algebra has a nonzero commutative quotient. The
    /// commutator ideal is spanned by `X_a [X_g, X_h]`, which are binomials
    /// `X_{agh} - λ X_{ahg}`, so the quotient is nonzero iff the relations
    /// are consistent on the class of `X_e`.
    pub fn is_coboundary_over_closure(&self) -> bool {
        let g = &self.group;
        let e = g.identity();
        let one = self.value(e, e).div(self.value(e, e)).expect("cocycle values are nonzero");
        let mut forest = WeightedForest::new(g.order(), one);
        for x in g.elements() {
            for y in g.elements().filter(|&y| y > x) {
                // for commuting x, y this reads X_{axy} = λ X_{axy}
                let (xy, yx) = (g.mul(x, y), g.mul(y, x));
                for a in g.elements() {
                    let num = self.value(y, x) * self.value(a, yx);
                    let den = self.value(x, y) * self.value(a, xy);
                    forest.relate(g.mul(a, xy), g.mul(a, yx), num.div(&den).expect("cocycle values are nonzero"));
                }
            }
        }
        forest.consistent(e)
    }

    /// `other / self`, pointwise.
    pub fn quotient(&self, other: &Cocycle2) -> Result<Cocycle2> {
        if self.group.table() != other.group.table() {
            return Err(Error::Mismatch("cocycles on different groups".into()));
        }
        let values = other.values.iter().zip(&self.values).map(|(a, b)| a.div(b)).collect::<Result<_>>()?;
        Ok(Cocycle2 { group: self.group.clone(), values })
    }
}

/// Union-find on basis vectors with `X_x = w X_root`; a class becomes
/// inconsistent when a relation contradicts the recorded weights.
struct WeightedForest {
    parent: Vec<usize>,
    weight: Vec<Scalar>,
    bad: Vec<bool>,
}

impl WeightedForest {
    fn new(n: usize, one: Scalar) -> Self {
        WeightedForest { parent: (0..n).collect(), weight: vec![one; n], bad: vec![false; n] }
    }

    /// Root of `x` and `w` with `X_x = w X_root`.
    fn find(&mut self, x: usize) -> (usize, Scalar) {
        let p = self.parent[x];
        if p == x {
            return (x, self.weight[x].clone());
        }
        let (root, up) = self.find(p);
        let w = &self.weight[x] * &up;
        self.parent[x] = root;
        self.weight[x] = w.clone();
        (root, w)
    }

    /// Records `X_x = lambda X_y`.
    fn relate(&mut self, x: usize, y: usize, lambda: Scalar) {
        let (rx, wx) = self.find(x);
        let (ry, wy) = self.find(y);
        // X_rx = X_x / wx = (lambda wy / wx) X_ry
        let factor = (&lambda * &wy).div(&wx).expect("weights are nonzero");
        if rx == ry {
            if !factor.is_one() {
                self.bad[rx] = true;
            }
            return;
        }
        self.parent[rx] = ry;
        self.weight[rx] = factor;
        self.bad[ry] |= self.bad[rx];
    }

    fn consistent(&mut self, x: usize) -> bool {
        let (root, _) = self.find(x);
        !self.bad[root]
    }
}

/// All roots of unity of `field`: `±z_N^k` in `Q(z_N)`, every unit of `F_p`.
pub fn field_roots_of_unity(field: &Field) -> Vec<Scalar> {
    match field.characteristic() {
        0 => {
            let n = field.root_order();
            let mut out: Vec<Scalar> = Vec::with_capacity(2 * n as usize);
            for k in 0..n {
                let z = field.root_of_unity(n, k as i64).expect("the conductor root exists");
                for s in [z.clone(), -z] {
                    if !out.contains(&s) {
                        out.push(s);
                    }
                }
            }
            out
        }
        p => (1..p as i64).map(|v| field.from_int(v)).collect(),
    }
}

/// `X_g X_h = c(g,h) X_{gh}`, checked for associativity.
pub fn twisted_group_algebra(c: &Cocycle2) -> Result<StructureConstantAlgebra> {
    let g = c.group();
    let n = g.order();
    let labels = g.labels().iter().map(|l| format!("X[{l}]")).collect();
    let mut table = Vec::with_capacity(n * n);
    for x in g.elements() {
        for y in g.elements() {
            table.push(vec![(g.mul(x, y), c.value(x, y).clone())]);
        }
    }
    let e = g.identity();
    let one = c.value(e, e).div(c.value(e, e))?;
    let mut unit = vec![Scalar::zero(); n];
    unit[e] = c.value(e, e).inv()?;
    let alg = StructureConstantAlgebra::new(labels, table, unit, one)?;
    if let Some((a, b, d)) = alg.associativity_failure() {
        return Err(Error::Verification(format!(
            "twisted group algebra is not associative at ({}, {}, {})",
            g.label(a),
            g.label(b),
            g.label(d)
        )));
    }
    Ok(alg)
}

/// Whether the alternating bicharacter of `c` on an abelian group has
/// trivial radical.
pub fn bicharacter_is_perfect(c: &Cocycle2) -> bool {
    let g = c.group();
    g.elements().filter(|&x| g.elements().all(|y| c.alternating_form(x, y).is_one())).count() == 1
}

/// Nondegeneracy: the twisted group algebra is simple, i.e. its center is
/// one-dimensional. On abelian groups the bicharacter criterion is
/// evaluated too and any disagreement is reported as an error.
pub fn is_nondegenerate(c: &Cocycle2, field: &Field) -> Result<bool> {
    let g = c.group();
    if !field.is_unit(g.order() as i64) {
        return Err(Error::Precondition("characteristic divides the group order".into()));
    }
    let simple = twisted_group_algebra(c)?.center_dimension() == 1;
    if g.is_abelian() && simple != bicharacter_is_perfect(c) {
        return Err(Error::TheoremViolation(format!(
            "center criterion ({simple}) and bicharacter criterion disagree on {}",
            g.name()
        )));
    }
    Ok(simple)
}

/// A lift `h ↦ π̃(h)` of a projective representation with `π̃(e) = I`,
/// together with its cocycle `π̃(x)π̃(y) = c(x,y)π̃(xy)`.
#[derive(Clone, Debug)]
pub struct ProjectiveRep {
    group: FiniteGroup,
    field: Field,
    dim: usize,
    matrices: Vec<Matrix>,
    cocycle: Cocycle2,
}

/// Chooses `π̃(e) = I` and records the cocycle of the given matrices, which
/// are meaningful only up to scalars.
pub fn lift_projective(group: &FiniteGroup, field: &Field, mut matrices: Vec<Matrix>) -> Result<ProjectiveRep> {
    let n = group.order();
    if matrices.len() != n {
        return Err(Error::Mismatch(format!("expected {n} matrices, got {}", matrices.len())));
    }
    let dim = matrices[0].rows();
    for (h, m) in matrices.iter().enumerate() {
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::Mismatch(format!("matrix for {} is not {dim}x{dim}", group.label(h))));
        }
        if m.rank() != dim {
            return Err(Error::NotInvertible);
        }
    }
    let id = Matrix::identity(dim, &field.one());
    let e = group.identity();
    if matrices[e].ratio_to(&id).is_none() {
        return Err(Error::Verification("the identity is not represented by a scalar matrix".into()));
    }
    matrices[e] = id;
    let mut values = Vec::with_capacity(n * n);
    for x in group.elements() {
        for y in group.elements() {
            let prod = matrices[x].mul(&matrices[y])?;
            let c = prod.ratio_to(&matrices[group.mul(x, y)]).ok_or_else(|| {
                Error::Verification(format!(
                    "matrices of {} and {} do not multiply projectively",
                    group.label(x),
                    group.label(y)
                ))
            })?;
            values.push(c);
        }
    }
    let cocycle = Cocycle2::new(group.clone(), values)?;
    Ok(ProjectiveRep { group: group.clone(), field: field.clone(), dim, matrices, cocycle })
}

impl ProjectiveRep {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, h: usize) -> &Matrix {
        &self.matrices[h]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn cocycle(&self) -> &Cocycle2 {
        &self.cocycle
    }

    /// `M ↦ π̃(h) M π̃(h)^{-1}` on `End(V)` in the basis `E_ij` (index `i*d+j`).
    pub fn conjugation(&self, h: usize) -> Matrix {
        let p = &self.matrices[h];
        let q = p.inverse().expect("lift matrices are invertible");
        p.kron(&q.transpose())
    }

    /// The same projective representation with `π̃(h)` multiplied by `mu[h]`.
    pub fn rescaled(&self, mu: &[Scalar]) -> Result<ProjectiveRep> {
        let matrices = self.matrices.iter().zip(mu).map(|(m, s)| m.scale(s)).collect();
        lift_projective(&self.group, &self.field, matrices)
    }

    /// `(μ, P)` with `P μ(h)π̃(h) P^{-1} = π̃'(h)` for all `h`, when `other`
    /// is projectively equivalent to `self` over the field.
    pub fn projective_equivalence(&self, other: &ProjectiveRep) -> Result<Option<(Vec<Scalar>, Matrix)>> {
        if self.group.table() != other.group.table() {
            return Err(Error::Mismatch("representations of different groups".into()));
        }
        if self.dim != other.dim {
            return Ok(None);
        }
        let d = self.dim;
        let id = Matrix::identity(d, &self.field.one());
        let gens = self.group.generators();
        for mu in self.cocycle.quotient(&other.cocycle)?.trivializations(&self.field)? {
            // vec(PA - BP) = (I ⊗ A^T - B ⊗ I) vec(P), row-major.
            let mut rows = Vec::new();
            for &h in &gens {
                let a = self.matrices[h].scale(&mu[h]);
                let m = id.kron(&a.transpose()).sub(&other.matrices[h].kron(&id));
                rows.extend((0..m.rows()).map(|i| m.row(i).to_vec()));
            }
            let kernel = if rows.is_empty() {
                vec![id.clone()]
            } else {
                let basis = Matrix::from_rows(rows)?.nullspace();
                basis.iter().map(|v| Matrix::from_fn(d, d, |i, j| v[i * d + j].clone())).collect()
            };
            let sum = kernel.iter().skip(1).fold(kernel.first().cloned(), |acc, m| acc.map(|a| a.add(m)));
            if let Some(p) = kernel.iter().chain(sum.iter()).find(|p| p.rank() == d) {
                return Ok(Some((mu, p.clone())));
            }
        }
        Ok(None)
    }

    /// Projective equivalence over the algebraic closure, for absolutely
    /// irreducible representations with `dim² = |H|`: both are then the
    /// unique simple module of their twisted group algebra, so they agree
    /// iff the cocycles are cohomologous.
    pub fn equivalent_over_closure(&self, other: &ProjectiveRep) -> Result<bool> {
        if self.group.table() != other.group.table() {
            return Err(Error::Mismatch("representations of different groups".into()));
        }
        for rep in [self, other] {
            if rep.dim * rep.dim != rep.group.order() || rep.commutant_dimension() != 1 {
                return Err(Error::Precondition("expected an irreducible representation with dim² = |H|".into()));
            }
        }
        Ok(self.cocycle.quotient(&other.cocycle)?.is_coboundary_over_closure())
    }

    /// Dimension of the space of matrices commuting with every `π̃(h)`.
    pub fn commutant_dimension(&self) -> usize {
        let d = self.dim;
        let gens = self.group.generators();
        let id = Matrix::identity(d, &self.field.one());
        let mut rows = Vec::new();
        for &h in &gens {
            let p = &self.matrices[h];
            // vec(PX - XP) = (P ⊗ I - I ⊗ P^T) vec(X), row-major.
            let m = p.kron(&id).sub(&id.kron(&p.transpose()));
            for i in 0..m.rows() {
                rows.push(m.row(i).to_vec());
            }
        }
        if rows.is_empty() {
            return d * d;
        }
        Matrix::from_rows(rows).expect("rectangular").nullspace().len()
    }
}

/// `σ_x^a σ_z^b` on `Z2 × Z2`: the two-dimensional projective
/// representation with anticommuting generators.
pub fn pauli_rep(field: &Field) -> Result<ProjectiveRep> {
    let group = crate::groups::library::abelian(&[2, 2]);
    let (o, z) = (field.one(), field.zero());
    let sx = Matrix::from_rows(vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]])?;
    let sz = Matrix::from_rows(vec![vec![o.clone(), z.clone()], vec![z.clone(), -&o]])?;
    let id = Matrix::identity(2, &o);
    let mut matrices = Vec::with_capacity(4);
    for h in group.elements() {
        // index = 2a + b for the tuple (a, b)
        let (a, b) = (h / 2, h % 2);
        let mut m = id.clone();
        if a == 1 {
            m = m.mul(&sx)?;
        }
        if b == 1 {
            m = m.mul(&sz)?;
        }
        matrices.push(m);
    }
    lift_projective(&group, field, matrices)
}

/// Output of [`twist_from_rep`]: the twist and the functional `λ` (as the
/// matrix `Λ` with `λ(M) = Σ Λ_ij M_ij`) it was built from.
#[derive(Clone, Debug)]
pub struct RepTwist {
    pub twist: Twist,
    pub functional: Matrix,
    /// Position of `λ` in the candidate sequence.
    pub candidate: usize,
}

fn candidate_functional(rep: &ProjectiveRep, index: usize, rng: &mut ChaCha8Rng) -> Option<Matrix> {
    let d = rep.dim();
    let f = rep.field();
    if index < d {
        let mut m = Matrix::zeros(d, d);
        m.set(index, index, f.one());
        return Some(m);
    }
    if index < d + 2 {
        // a row or column of ones; for monomial lifts every Weyl-type
        // coefficient of these is a single nonzero entry
        return Some(Matrix::from_fn(d, d, |i, j| if (index == d && i == 0) || (index == d + 1 && j == 0) { f.one() } else { f.zero() }));
    }
    let p = f.characteristic();
    let m = Matrix::from_fn(d, d, |_, _| match p {
        0 => f.from_int((rng.next_u32() % 5) as i64 - 2),
        p => f.from_int((rng.next_u64() % p) as i64),
    });
    let t = m.trace();
    if t.is_zero() {
        return None;
    }
    Some(m.scale(&t.inv().ok()?))
}

/// Row-major vector of `a·λ`, where `(a·λ)(M) = λ(π̃(a)^{-1} M π̃(a))`.
fn translate_functional(rep: &ProjectiveRep, lambda: &Matrix, a: usize) -> Result<Vec<Scalar>> {
    let p = rep.matrix(a);
    let shifted = p.inverse()?.transpose().mul(lambda)?.mul(&p.transpose())?;
    let d = rep.dim();
    Ok((0..d * d).map(|k| shifted.get(k / d, k % d).clone()).collect())
}

/// Builds a twist from a functional whose orbit is a basis, or `None` when
/// the orbit is dependent.
pub fn twist_from_functional(alg: &GroupAlgebra, rep: &ProjectiveRep, lambda: &Matrix) -> Result<Option<Twist>> {
    let d = rep.dim();
    let n = alg.order();
    let cols: Vec<Vec<Scalar>> = alg.group().elements().map(|a| translate_functional(rep, lambda, a)).collect::<Result<_>>()?;
    let orbit = Matrix::from_fn(n, n, |i, j| cols[j][i].clone());
    let orbit_inv = match orbit.inverse() {
        Ok(m) => m,
        Err(_) => return Ok(None),
    };
    // Δ(λ)(M ⊗ N) = λ(MN): coefficient of E_ik ⊗ E_kj is Λ_ij.
    let mut coproduct = Matrix::zeros(n, n);
    for i in 0..d {
        for j in 0..d {
            let v = lambda.get(i, j);
            if v.is_zero() {
                continue;
            }
            for k in 0..d {
                coproduct.set(i * d + k, k * d + j, v.clone());
            }
        }
    }
    let gamma = orbit_inv.mul(&coproduct)?.mul(&orbit_inv.transpose())?;
    let mut terms = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let c = gamma.get(a, b);
            if !c.is_zero() {
                terms.push((vec![a, b], c.clone()));
            }
        }
    }
    Ok(Some(verify_twist(alg, &alg.tensor(2, terms))?))
}

/// The twist attached to an irreducible projective representation `V` of
/// `H` with `dim V = |H|^{1/2}`, using the `skip`-th functional (counting
/// from 0) whose orbit is a basis. Functionals are tried in a fixed order:
/// the diagonal matrix units, `Σ_j E_0j`, `Σ_i E_i0`, then seeded random
/// matrices (entries in
/// `[-2, 2]`, or uniform in `F_p`) normalized to `λ(I) = 1`.
pub fn twist_from_rep_nth(alg: &GroupAlgebra, rep: &ProjectiveRep, seed: u64, skip: usize) -> Result<RepTwist> {
    if alg.group().table() != rep.group().table() {
        return Err(Error::Mismatch("representation and algebra use different groups".into()));
    }
    if rep.dim() * rep.dim() != alg.order() {
        return Err(Error::Precondition(format!(
            "dim V = {} but |H| = {} is not its square",
            rep.dim(),
            alg.order()
        )));
    }
    if !is_nondegenerate(rep.cocycle(), alg.field())? {
        return Err(Error::Precondition("the cocycle of V is degenerate".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = 0;
    for index in 0..MAX_CANDIDATES {
        let Some(lambda) = candidate_functional(rep, index, &mut rng) else { continue };
        if let Some(twist) = twist_from_functional(alg, rep, &lambda)? {
            if found == skip {
                return Ok(RepTwist { twist, functional: lambda, candidate: index });
            }
            found += 1;
        }
    }
    Err(Error::SearchExhausted(format!("{found} usable functionals among {MAX_CANDIDATES} candidates")))
}

pub fn twist_from_rep(alg: &GroupAlgebra, rep: &ProjectiveRep, seed: u64) -> Result<RepTwist> {
    twist_from_rep_nth(alg, rep, seed, 0)
}

/// `M ↦ Σ_x (x·λ)(M) Y_x`, the algebra isomorphism `End(V) → B_J*` for the
/// twist built from `λ`; columns are images of `E_ij` (index `i*d+j`).
pub fn functional_embedding(rep: &ProjectiveRep, lambda: &Matrix) -> Result<Matrix> {
    let n = rep.group().order();
    let cols: Vec<Vec<Scalar>> = rep.group().elements().map(|a| translate_functional(rep, lambda, a)).collect::<Result<_>>()?;
    Ok(Matrix::from_fn(n, n, |x, k| cols[x][k].clone()))
}

/// A bijective 1-cocycle: `π(gg') = π(g) + g·π(g')`, `π` a bijection `G → A`.
#[derive(Clone, Debug)]
pub struct Bijective1Cocycle {
    action: GroupAction,
    pi: Vec<usize>,
}

pub fn check_bijective_1cocycle(action: &GroupAction, pi: &[usize]) -> bool {
    let g = action.group();
    let a = action.target();
    if g.order() != a.order() || pi.len() != g.order() {
        return false;
    }
    let mut seen = vec![false; a.order()];
    for &v in pi {
        if v >= a.order() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    g.elements().all(|x| g.elements().all(|y| pi[g.mul(x, y)] == a.add(pi[x], action.act(x, pi[y]))))
}

impl Bijective1Cocycle {
    pub fn new(action: GroupAction, pi: Vec<usize>) -> Result<Self> {
        if action.group().order() != action.target().order() {
            return Err(Error::Precondition("|G| != |A|".into()));
        }
        if !check_bijective_1cocycle(&action, &pi) {
            return Err(Error::Verification("not a bijective 1-cocycle".into()));
        }
        Ok(Bijective1Cocycle { action, pi })
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    pub fn target(&self) -> &AbelianGroup {
        self.action.target()
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    /// Smallest field of characteristic 0 holding the pairing values.
    pub fn default_field(&self) -> Field {
        Field::cyclotomic(self.target().exponent() as u32).expect("positive conductor")
    }
}

/// All bijective 1-cocycles for the action, ordered by the images of the
/// generators. `π` is determined by its values on generators, so these are
/// enumerated and the rest propagated by `π(sg) = π(s) + s·π(g)`.
pub fn find_bijective_1cocycles(action: &GroupAction) -> Result<Vec<Bijective1Cocycle>> {
    let g = action.group();
    let a = action.target();
    let n = g.order();
    if n != a.order() {
        return Err(Error::Precondition(format!("|G| = {n} but |A| = {}", a.order())));
    }
    if n > FINDER_LIMIT {
        return Err(Error::Precondition(format!("finder is limited to |G| <= {FINDER_LIMIT}")));
    }
    let gens = g.generators();
    let mut out = Vec::new();
    let total = n.pow(gens.len() as u32);
    'assign: for code in 0..total {
        let mut rest = code;
        let mut pi = vec![usize::MAX; n];
        pi[g.identity()] = 0;
        let mut gen_values = Vec::with_capacity(gens.len());
        for _ in &gens {
            gen_values.push(rest % n);
            rest /= n;
        }
        let mut queue = vec![g.identity()];
        while let Some(x) = queue.pop() {
            for (&s, &ps) in gens.iter().zip(&gen_values) {
                let sx = g.mul(s, x);
                let v = a.add(ps, action.act(s, pi[x]));
                if pi[sx] == usize::MAX {
                    pi[sx] = v;
                    queue.push(sx);
                } else if pi[sx] != v {
                    continue 'assign;
                }
            }
        }
        if check_bijective_1cocycle(action, &pi) {
            out.push(Bijective1Cocycle { action: action.clone(), pi });
        }
    }
    Ok(out)
}

/// `H = G ⋉ A*` for the data, with `G` acting on `A*` contragrediently.
pub fn semidirect_for(data: &Bijective1Cocycle) -> SemidirectProduct {
    SemidirectProduct::new(&data.action().dual_action())
}

/// The second construction's output.
#[derive(Clone, Debug)]
pub struct CocycleTwist {
    pub product: SemidirectProduct,
    pub algebra: GroupAlgebra,
    pub twist: Twist,
    /// `J_21^{-1} J`.
    pub r: Tensor,
}

/// `J = |A|^{-1} Σ_{g, b} e(π(g), b) b ⊗ g` on `k[G ⋉ A*]`, verified, with
/// minimality of `J_21^{-1}J` checked.
pub fn twist_from_1cocycle(data: &Bijective1Cocycle, field: &Field) -> Result<CocycleTwist> {
    let a = data.target();
    if !field.is_unit(a.order() as i64) {
        return Err(Error::Precondition(format!("|A| = {} is zero in {field}", a.order())));
    }
    let product = semidirect_for(data);
    let algebra = GroupAlgebra::new(product.group.clone(), field.clone());
    let pairing = PairingChar::new(a);
    let inv = field.from_int(a.order() as i64).inv()?;
    let mut terms = Vec::with_capacity(a.order() * a.order());
    for g in data.group().elements() {
        for b in 0..a.order() {
            let e = pairing.value(field, data.pi()[g], b)?;
            terms.push((vec![product.embed_normal(b), product.embed_acting(g)], &e * &inv));
        }
    }
    let twist = verify_twist(&algebra, &algebra.tensor(2, terms))?;
    let r = r_matrix(&algebra, &algebra.unit(2), &twist)?;
    if !verify_minimal(&algebra, &r) {
        return Err(Error::TheoremViolation("J_21^{-1} J is not minimal".into()));
    }
    Ok(CocycleTwist { product, algebra, twist, r })
}

/// `φ(b)δ_a = e(a,b)^{-1} δ_a`, `φ(g)δ_a = δ_{g·a + π(g)}`, `φ(bg) = φ(b)φ(g)`
/// on `Fun(A)` with basis `δ_a`.
pub fn heisenberg_rep(data: &Bijective1Cocycle, field: &Field) -> Result<ProjectiveRep> {
    let a = data.target();
    let d = a.order();
    let product = semidirect_for(data);
    let pairing = PairingChar::new(a);
    let mut matrices = vec![Matrix::zeros(d, d); product.group.order()];
    for g in data.group().elements() {
        let mut pg = Matrix::zeros(d, d);
        for x in 0..d {
            pg.set(a.add(data.action().act(g, x), data.pi()[g]), x, field.one());
        }
        for b in 0..d {
            let mut pb = Matrix::zeros(d, d);
            for x in 0..d {
                pb.set(x, x, pairing.value(field, x, b)?.inv()?);
            }
            matrices[product.index(b, g)] = pb.mul(&pg)?;
        }
    }
    lift_projective(&product.group, field, matrices)
}

/// Checks the closed forms of the second construction.
///
/// `Δ̃(bg) = |A|^{-1} Σ e(π(g'),b') (b + g·b')g ⊗ b(gg')` for `B_J`; in the
/// rescaled dual basis `Ŷ_x = |A| Y_x` the products
/// `Ŷ_{b2g2} * Ŷ_{b1g1} = e(π(g1)-π(g2), b2-b1) Ŷ_{b1g2}`; with
/// `Z_{bg} = e(π(g),b) Ŷ_{bg}`, `Z_{b2g2} * Z_{b1g1} = e(π(g1),b2) Z_{b1g2}`;
/// and `Z_{bg}δ_a = e(a,b) δ_{π(g)}` is an `H`-equivariant algebra
/// isomorphism `B_J* → End(V)`. In the unscaled basis `Y` the products carry
/// an extra factor `|A|^{-1}`; the report records whether they match the
/// closed form without it as `unscaled_products_match`.
pub fn verify_eq2345(data: &Bijective1Cocycle, field: &Field) -> Result<Report> {
    let built = twist_from_1cocycle(data, field)?;
    let (sp, alg) = (&built.product, &built.algebra);
    let a = data.target();
    let dual = a.dual();
    let na = a.order();
    let pi = data.pi();
    let g = data.group();
    let pairing = PairingChar::new(a);
    let e = |x: usize, b: usize| pairing.value(field, x, b);
    let order_a = field.from_int(na as i64);
    let inv_a = order_a.inv()?;
    let mut report = Report::new("closed_forms");
    report.value("basis", "Y-hat = |A| Y");

    // Coproduct of B_J.
    let mut fail = String::new();
    'coproduct: for g0 in g.elements() {
        for b0 in 0..na {
            let h = sp.index(b0, g0);
            let lhs = alg.mul_unchecked(&alg.basis(&[h, h]), built.twist.j());
            let mut terms = Vec::with_capacity(na * na);
            for g1 in g.elements() {
                for b1 in 0..na {
                    let left = sp.index(dual.add(b0, sp_act(sp, data, g0, b1)), g0);
                    let right = sp.index(b0, g.mul(g0, g1));
                    terms.push((vec![left, right], &e(pi[g1], b1)? * &inv_a));
                }
            }
            let rhs = alg.tensor(2, terms);
            if lhs != rhs {
                fail = format!("at {} {}", alg.group().label(h), describe(alg, &lhs, &rhs));
                break 'coproduct;
            }
        }
    }
    report.check("coproduct", fail.is_empty(), fail);

    let movshev = dual_movshev(alg, &built.twist)?;
    let y = movshev.algebra();
    let n = alg.order();
    let z_scale: Vec<Scalar> = (0..n)
        .map(|x| {
            let (b, gx) = sp.split(x);
            e(pi[gx], b)
        })
        .collect::<Result<_>>()?;
    let mut products_fail = String::new();
    let mut rescaled_fail = String::new();
    let mut unscaled = true;
    for h2 in 0..n {
        let (b2, g2) = sp.split(h2);
        for h1 in 0..n {
            let (b1, g1) = sp.split(h1);
            let target = sp.index(b1, g2);
            let coeff = e(a.sub(pi[g1], pi[g2]), dual.sub(b2, b1))?;
            let computed = y.product_vector(h2, h1);
            // Ŷ-coordinates of Ŷ_{h2} * Ŷ_{h1}.
            let hat: Vec<Scalar> = computed.iter().map(|c| c * &order_a).collect();
            let mut expected = vec![field.zero(); n];
            expected[target] = coeff.clone();
            if hat != expected && products_fail.is_empty() {
                products_fail = format!("Y[{}] * Y[{}]", alg.group().label(h2), alg.group().label(h1));
            }
            if computed != expected {
                unscaled = false;
            }
            // Z-coordinates of Z_{h2} * Z_{h1}.
            let zprod: Vec<Scalar> = hat
                .iter()
                .enumerate()
                .map(|(x, c)| (&(c * &z_scale[h2]) * &z_scale[h1]).div(&z_scale[x]))
                .collect::<Result<_>>()?;
            let mut zexpected = vec![field.zero(); n];
            zexpected[target] = e(pi[g1], b2)?;
            if zprod != zexpected && rescaled_fail.is_empty() {
                rescaled_fail = format!("Z[{}] * Z[{}]", alg.group().label(h2), alg.group().label(h1));
            }
        }
    }
    report.check("products", products_fail.is_empty(), products_fail);
    report.check("rescaled_products", rescaled_fail.is_empty(), rescaled_fail);
    report.value("unscaled_products_match", unscaled);

    let rep = heisenberg_rep(data, field)?;
    let commutant = rep.commutant_dimension();
    report.check("irreducible", commutant == 1, format!("commutant dimension {commutant}"));
    // ρ(Y_{bg}) = |A|^{-1} e(π(g),b)^{-1} ρ(Z_{bg}), ρ(Z_{bg}) = Σ_a e(a,b) E_{π(g),a}.
    let d = na;
    let mut phi = Matrix::zeros(d * d, n);
    for x in 0..n {
        let (b, gx) = sp.split(x);
        let scale = (&inv_a * &z_scale[x].inv()?).clone();
        for col in 0..d {
            phi.set(pi[gx] * d + col, x, &e(col, b)? * &scale);
        }
    }
    let end_v = StructureConstantAlgebra::matrix_algebra(d, field.one());
    let iso = check_equivariant_isomorphism(
        y,
        &end_v,
        &phi,
        |h| movshev.action_matrix(h),
        |h| rep.conjugation(h),
        alg.group(),
    );
    report.absorb("module_map", &iso);
    Ok(report)
}

/// `g·b` on `A*` for `g ∈ G`.
fn sp_act(_sp: &SemidirectProduct, data: &Bijective1Cocycle, g: usize, b: usize) -> usize {
    data.action().dual_action().act(g, b)
}
