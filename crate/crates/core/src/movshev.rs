//! The coalgebra `B_J = (k[H], x ↦ (x⊗x)J)`, its dual `H`-algebra `B_J*`,
//! and what can be read off from it: simplicity, the regular character,
//! trivialization of symmetric twists, grouplike counts and equivariant
//! isomorphism (equivalently, gauge equivalence of twists).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Coalgebra, GroupAlgebra, StructureConstantAlgebra, Tensor};
use crate::constructions::{functional_embedding, twist_from_rep, ProjectiveRep};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::Matrix;
use crate::report::Report;
use crate::scalars::Scalar;
use crate::split::characters;
use crate::twists::{gauge_transform, twisted_coproduct, Twist};

/// `B_J` on the group basis: `Δ̃(x) = (x⊗x)J`, counit `ε(x) = 1`.
pub fn build_bj(alg: &GroupAlgebra, twist: &Twist) -> Result<Coalgebra> {
    let images: Vec<Tensor> =
        alg.group().elements().map(|x| alg.mul_unchecked(&alg.basis(&[x, x]), twist.j())).collect();
    let co = Coalgebra::from_tensors(alg.group().labels().to_vec(), &images, vec![alg.one(); alg.order()], alg.one())?;
    if let Some(i) = co.coassociativity_failure() {
        return Err(Error::Verification(format!("B_J is not coassociative at {}", alg.group().label(i))));
    }
    Ok(co)
}

/// `B_J*` with basis `Y_x` dual to the group basis and `H` acting by
/// `h·Y_x = Y_{hx}`.
#[derive(Clone, Debug)]
pub struct MovshevAlgebra {
    alg: GroupAlgebra,
    twist: Twist,
    coalgebra: Coalgebra,
    algebra: StructureConstantAlgebra,
}

/// Builds `B_J*` and checks that `H` acts by algebra automorphisms.
pub fn dual_movshev(alg: &GroupAlgebra, twist: &Twist) -> Result<MovshevAlgebra> {
    let coalgebra = build_bj(alg, twist)?;
    let algebra = coalgebra.dualize()?;
    let m = MovshevAlgebra { alg: alg.clone(), twist: twist.clone(), coalgebra, algebra };
    if let Some((h, a, b)) = m.action_failure() {
        let g = alg.group();
        return Err(Error::Verification(format!(
            "{} does not act multiplicatively on Y_{} * Y_{}",
            g.label(h),
            g.label(a),
            g.label(b)
        )));
    }
    Ok(m)
}

impl MovshevAlgebra {
    pub fn group(&self) -> &FiniteGroup {
        self.alg.group()
    }

    pub fn group_algebra(&self) -> &GroupAlgebra {
        &self.alg
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn algebra(&self) -> &StructureConstantAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Index of `h·Y_x`.
    pub fn act(&self, h: usize, x: usize) -> usize {
        self.group().mul(h, x)
    }

    /// Matrix of `h` on the `Y` basis.
    pub fn action_matrix(&self, h: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for x in 0..n {
            m.set(self.act(h, x), x, self.alg.one());
        }
        m
    }

    fn act_vector(&self, h: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.alg.field().zero(); v.len()];
        for (x, c) in v.iter().enumerate() {
            out[self.act(h, x)] = c.clone();
        }
        out
    }

    /// First `(h, a, b)` with `h·(Y_a * Y_b) ≠ (h·Y_a) * (h·Y_b)`.
    pub fn action_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let gens = self.group().generators();
        for &h in &gens {
            for a in 0..n {
                for b in 0..n {
                    let lhs = self.act_vector(h, &self.algebra.product_vector(a, b));
                    let rhs = self.algebra.product_vector(self.act(h, a), self.act(h, b));
                    if lhs != rhs {
                        return Some((h, a, b));
                    }
                }
            }
        }
        None
    }
}

fn perfect_square_root(n: usize) -> Option<usize> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// Center of dimension 1 and dimension a perfect square.
pub fn certify_simple(m: &MovshevAlgebra) -> Report {
    let mut report = Report::new("simple");
    let center = m.algebra().center_dimension();
    report.value("dimension", m.dim());
    report.value("center_dimension", center);
    report.check("center", center == 1, format!("center dimension {center}"));
    report.check("square_dimension", perfect_square_root(m.dim()).is_some(), format!("dimension {}", m.dim()));
    report
}

/// Trace of `h` on `B_J*` is `|H|` at the identity and 0 elsewhere.
pub fn certify_regular_action(m: &MovshevAlgebra) -> Report {
    let mut report = Report::new("regular_action");
    let n = m.dim() as i64;
    let mut traces = Vec::with_capacity(m.dim());
    let mut bad = None;
    for h in m.group().elements() {
        let t = m.action_matrix(h).trace();
        let expected = if h == m.group().identity() { m.alg.scalar(n) } else { m.alg.field().zero() };
        if t != expected && bad.is_none() {
            bad = Some(format!("trace of {} is {t}", m.group().label(h)));
        }
        traces.push(t.pretty());
    }
    report.check("character", bad.is_none(), bad.unwrap_or_default());
    report.value("traces", traces.join(","));
    report
}

fn require_coprime(alg: &GroupAlgebra) -> Result<()> {
    if !alg.field().is_unit(alg.order() as i64) {
        return Err(Error::Precondition(format!(
            "characteristic {} divides |G| = {}",
            alg.field().characteristic(),
            alg.order()
        )));
    }
    Ok(())
}

fn vector_to_element(alg: &GroupAlgebra, v: &[Scalar]) -> Tensor {
    alg.tensor(1, v.iter().enumerate().map(|(x, c)| (vec![x], c.clone())))
}

/// For symmetric `J` returns `x` with `Δ(x)(x^{-1}⊗x^{-1}) = J`.
///
/// The characters of the commutative algebra `B_J*` are the grouplikes `y`
/// of `B_J` (`Δ(y)J = y⊗y`); `G` permutes them simply transitively and any
/// one of them gives `x = y^{-1}`.
pub fn trivialize_symmetric_twist(alg: &GroupAlgebra, twist: &Twist, seed: u64) -> Result<Tensor> {
    if !twist.is_symmetric(alg) {
        return Err(Error::Precondition("twist is not symmetric".into()));
    }
    require_coprime(alg)?;
    let m = dual_movshev(alg, twist)?;
    let chars = characters(m.algebra(), alg.field(), seed)?;
    let n = alg.order();
    if chars.len() != n {
        return Err(Error::Splitting(format!("found {} of {n} points", chars.len())));
    }
    let points: Vec<Tensor> = chars.iter().map(|c| vector_to_element(alg, c)).collect();
    let y = &points[0];
    let lhs = alg.mul_unchecked(&alg.coproduct(y), twist.j());
    if lhs != y.outer(y) {
        return Err(Error::Verification("character does not give a grouplike of B_J".into()));
    }
    let mut seen = vec![false; n];
    for h in alg.group().elements() {
        let hy = alg.mul_unchecked(&alg.element(h), y);
        match points.iter().position(|p| *p == hy) {
            Some(i) if !seen[i] => seen[i] = true,
            _ => return Err(Error::Verification("G does not permute the points simply transitively".into())),
        }
    }
    let x = alg.invert(y)?;
    let back = gauge_transform(alg, &Twist::identity(alg), &x)?;
    if back.j() != twist.j() {
        return Err(Error::Verification("trivializing element does not reproduce J".into()));
    }
    Ok(x)
}

/// Number of grouplikes of `(k[G], Δ^J)`: the dimension of the largest
/// commutative quotient of its dual algebra.
pub fn count_grouplikes(alg: &GroupAlgebra, twist: &Twist) -> Result<usize> {
    require_coprime(alg)?;
    let images: Vec<Tensor> =
        alg.group().elements().map(|g| twisted_coproduct(alg, twist, &alg.element(g))).collect();
    let co = Coalgebra::from_tensors(alg.group().labels().to_vec(), &images, vec![alg.one(); alg.order()], alg.one())?;
    Ok(co.dualize()?.abelianization_dimension())
}

/// Gauge elements relating two twists: `a` with `ε(a) = 1` and
/// `Δ(a) J_1 = J_2 (a⊗a)`, i.e. `J_2 = J_1^a`.
#[derive(Clone, Debug)]
pub struct GaugeRelation {
    /// Dimension of the commutative quotient of the dual of the coalgebra
    /// `y ↦ J_2^{-1} Δ(y) J_1`; its characters are the gauge elements.
    pub abelianization: usize,
    /// A gauge element over the working field, when the quotient splits.
    pub witness: Option<Tensor>,
}

pub fn gauge_relation(alg: &GroupAlgebra, from: &Twist, to: &Twist, seed: u64) -> Result<GaugeRelation> {
    require_coprime(alg)?;
    let images: Vec<Tensor> = alg
        .group()
        .elements()
        .map(|g| {
            let d = alg.mul_unchecked(to.inverse(), &alg.basis(&[g, g]));
            alg.mul_unchecked(&d, from.j())
        })
        .collect();
    let co = Coalgebra::from_tensors(alg.group().labels().to_vec(), &images, vec![alg.one(); alg.order()], alg.one())?;
    let dual = co.dualize()?;
    let (quotient, projection) = dual.commutative_quotient();
    let abelianization = quotient.dim();
    let mut witness = None;
    if abelianization > 0 {
        if let Ok(chars) = characters(&quotient, alg.field(), seed) {
            for chi in chars {
                let values: Vec<Scalar> = (0..alg.order())
                    .map(|x| {
                        projection.column(x).iter().zip(&chi).fold(alg.field().zero(), |acc, (p, c)| &acc + &(p * c))
                    })
                    .collect();
                let a = vector_to_element(alg, &values);
                if is_gauge_element(alg, from, to, &a) {
                    witness = Some(a);
                    break;
                }
            }
        }
    }
    Ok(GaugeRelation { abelianization, witness })
}

/// Exact check of `J_2 = J_1^a` with `a` invertible and `ε(a) = 1`.
pub fn is_gauge_element(alg: &GroupAlgebra, from: &Twist, to: &Twist, a: &Tensor) -> bool {
    if !alg.counit(a).is_one() || alg.invert(a).is_err() {
        return false;
    }
    alg.mul_unchecked(&alg.coproduct(a), from.j()) == alg.mul_unchecked(to.j(), &a.outer(a))
}

/// Map `B_{J_1}* -> B_{J_2}*` dual to `x ↦ xa`, as a matrix on the `Y` bases.
pub fn induced_isomorphism(alg: &GroupAlgebra, a: &Tensor) -> Matrix {
    let g = alg.group();
    let n = alg.order();
    let mut m = Matrix::zeros(n, n);
    for (idx, c) in a.terms() {
        for x in 0..n {
            m.set(x, g.mul(x, idx[0]), c.clone());
        }
    }
    m
}

/// Checks that `phi` (columns = images of the source basis) is a unital,
/// multiplicative, `H`-equivariant bijection `source -> target`.
pub fn check_equivariant_isomorphism(
    source: &StructureConstantAlgebra,
    target: &StructureConstantAlgebra,
    phi: &Matrix,
    source_action: impl Fn(usize) -> Matrix,
    target_action: impl Fn(usize) -> Matrix,
    group: &FiniteGroup,
) -> Report {
    let mut report = Report::new("equivariant_isomorphism");
    let n = source.dim();
    let unit_ok = phi.mul_vec(source.unit()) == target.unit();
    report.check("unital", unit_ok, "");
    let mut mult = (true, String::new());
    'outer: for a in 0..n {
        for b in 0..n {
            let lhs = phi.mul_vec(&source.product_vector(a, b));
            let rhs = target.mul(&phi.column(a), &phi.column(b));
            if lhs != rhs {
                mult = (false, format!("basis pair ({}, {})", source.labels()[a], source.labels()[b]));
                break 'outer;
            }
        }
    }
    report.check("multiplicative", mult.0, mult.1);
    let mut equiv = (true, String::new());
    for h in group.generators() {
        let lhs = phi.mul(&source_action(h)).expect("square");
        let rhs = target_action(h).mul(phi).expect("square");
        if lhs != rhs {
            equiv = (false, format!("generator {}", group.label(h)));
            break;
        }
    }
    report.check("equivariant", equiv.0, equiv.1);
    report.check("bijective", phi.rank() == n && target.dim() == n, "");
    report
}

/// Decides whether `B_{J_1}*` and `B_{J_2}*` are isomorphic as `H`-algebras.
///
/// Such isomorphisms are exactly the duals of `x ↦ xa` for gauge elements
/// `a` from `J_1` to `J_2`. The gauge elements are the characters of a
/// finite-dimensional algebra, which has one over the algebraic closure
/// iff its commutative quotient is nonzero; when `B_{J_1}*` is simple every
/// such character is invertible, so the decision is exact. A witness is
/// produced and checked whenever the characters are defined over the field.
pub fn equivariant_isomorphism(m1: &MovshevAlgebra, m2: &MovshevAlgebra, seed: u64) -> Result<Report> {
    if m1.group() != m2.group() {
        return Err(Error::Mismatch("Movshev algebras over different groups".into()));
    }
    let alg = &m1.alg;
    let mut report = Report::new("equivariant_isomorphism");
    let simple = certify_simple(m1).passed();
    report.check("source_simple", simple, "");
    let rel = gauge_relation(alg, &m1.twist, &m2.twist, seed)?;
    report.value("abelianization", rel.abelianization);
    report.check("gauge_elements_exist", rel.abelianization > 0, "");
    match &rel.witness {
        Some(a) => {
            report.value("witness", a.render(alg.group().labels()));
            let phi = induced_isomorphism(alg, a);
            let sub = check_equivariant_isomorphism(
                m1.algebra(),
                m2.algebra(),
                &phi,
                |h| m1.action_matrix(h),
                |h| m2.action_matrix(h),
                m1.group(),
            );
            report.absorb("witness", &sub);
        }
        None => report.value("witness", "not defined over the working field"),
    }
    Ok(report)
}

/// Decides whether `B_J*` is `H`-equivariantly isomorphic to `End(V)`.
///
/// `V` yields its own twist `J_V` with an explicit isomorphism
/// `ι: End(V) → B_{J_V}*`; the question reduces to `B_J* ≅ B_{J_V}*`, and a
/// witness `ι^{-1}∘Φ` is checked whenever the gauge element behind `Φ` is
/// defined over the field.
pub fn match_projective_rep(alg: &GroupAlgebra, twist: &Twist, rep: &ProjectiveRep, seed: u64) -> Result<Report> {
    if rep.dim() * rep.dim() != alg.order() {
        return Err(Error::Mismatch(format!("dim V = {} but |H| = {}", rep.dim(), alg.order())));
    }
    let own = twist_from_rep(alg, rep, seed)?;
    let m = dual_movshev(alg, twist)?;
    let mut report = Report::new("match_projective_rep");
    report.check("source_simple", certify_simple(&m).passed(), "");
    report.value("candidate", own.candidate);
    let rel = gauge_relation(alg, twist, &own.twist, seed)?;
    report.value("abelianization", rel.abelianization);
    report.check("gauge_elements_exist", rel.abelianization > 0, "");
    match rel.witness {
        Some(a) => {
            report.value("witness", a.render(alg.group().labels()));
            let iota = functional_embedding(rep, &own.functional)?;
            let psi = iota.inverse()?.mul(&induced_isomorphism(alg, &a))?;
            let end_v = StructureConstantAlgebra::matrix_algebra(rep.dim(), alg.field().one());
            let sub = check_equivariant_isomorphism(
                m.algebra(),
                &end_v,
                &psi,
                |h| m.action_matrix(h),
                |h| rep.conjugation(h),
                alg.group(),
            );
            report.absorb("end_v", &sub);
        }
        None => report.value("witness", "not defined over the working field"),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::library::{abelian, cyclic};
    use crate::scalars::Field;
    use crate::constructions::{heisenberg_rep, lift_projective, pauli_rep, twist_from_1cocycle, Bijective1Cocycle};
    use crate::twists::verify_twist;

    fn v4() -> GroupAlgebra {
        GroupAlgebra::new(abelian(&[2, 2]), Field::rationals())
    }

    fn klein_twist(alg: &GroupAlgebra) -> Twist {
        let h = Scalar::from_ratio(1, 2);
        let j = alg.tensor(2, [(vec![0, 0], h.clone()), (vec![0, 1], h.clone()), (vec![2, 0], h.clone()), (vec![2, 1], -&h)]);
        verify_twist(alg, &j).unwrap()
    }

    #[test]
    fn trivial_twist_gives_function_algebra() {
        let alg = v4();
        let m = dual_movshev(&alg, &Twist::identity(&alg)).unwrap();
        assert!(m.algebra().is_commutative());
        assert_eq!(m.algebra().product_vector(1, 1), m.algebra().basis_vector(1));
        assert!(m.algebra().product_vector(1, 2).iter().all(|c| c.is_zero()));
        assert!(!certify_simple(&m).passed());
        assert!(certify_regular_action(&m).passed());
        assert_eq!(count_grouplikes(&alg, &Twist::identity(&alg)).unwrap(), 4);
    }

    #[test]
    fn small_twist_is_simple_and_regular() {
        let alg = v4();
        let t = klein_twist(&alg);
        let bj = build_bj(&alg, &t).unwrap();
        assert!((0..4).all(|i| bj.coproduct(i).len() == 4));
        let m = dual_movshev(&alg, &t).unwrap();
        let report = certify_simple(&m);
        assert!(report.passed(), "{report}");
        let reg = certify_regular_action(&m);
        assert_eq!(reg.get("traces"), Some("4,0,0,0"));
        let n = count_grouplikes(&alg, &t).unwrap();
        assert!(n >= 2);
    }

    #[test]
    fn trivializes_symmetric_twists() {
        let alg = v4();
        let x0 = alg.tensor(1, [(vec![0], Scalar::from_int(6)), (vec![1], Scalar::from_int(-1)), (vec![3], Scalar::from_int(2))]);
        let j = gauge_transform(&alg, &Twist::identity(&alg), &x0).unwrap();
        let x = trivialize_symmetric_twist(&alg, &j, 0).unwrap();
        assert_eq!(gauge_transform(&alg, &Twist::identity(&alg), &x).unwrap().j(), j.j());
        assert_eq!(trivialize_symmetric_twist(&alg, &Twist::identity(&alg), 0).unwrap(), alg.unit(1));
        assert!(matches!(trivialize_symmetric_twist(&alg, &klein_twist(&alg), 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn gauge_equivalent_twists_have_isomorphic_algebras() {
        let alg = v4();
        let t = klein_twist(&alg);
        let x = alg.tensor(1, [(vec![0], Scalar::from_int(1)), (vec![3], Scalar::from_int(2))]);
        let tx = gauge_transform(&alg, &t, &x).unwrap();
        let m1 = dual_movshev(&alg, &t).unwrap();
        let m2 = dual_movshev(&alg, &tx).unwrap();
        let report = equivariant_isomorphism(&m1, &m2, 0).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.get("witness").unwrap().contains('['));
    }

    #[test]
    fn inequivalent_twists_are_separated() {
        let alg = v4();
        let t = klein_twist(&alg);
        let m1 = dual_movshev(&alg, &t).unwrap();
        let m0 = dual_movshev(&alg, &Twist::identity(&alg)).unwrap();
        let report = equivariant_isomorphism(&m1, &m0, 0).unwrap();
        assert!(!report.passed());
        assert_eq!(report.get("abelianization"), Some("0"));
    }

    #[test]
    fn pauli_representation_matches_small_twist() {
        let alg = v4();
        let rep = pauli_rep(alg.field()).unwrap();
        let report = match_projective_rep(&alg, &klein_twist(&alg), &rep, 0).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.check_named("end_v.multiplicative").is_some());
        assert!(!match_projective_rep(&alg, &Twist::identity(&alg), &rep, 0).unwrap().passed());
        let line = lift_projective(alg.group(), alg.field(), vec![Matrix::identity(1, &Scalar::one()); 4]).unwrap();
        assert!(matches!(match_projective_rep(&alg, &klein_twist(&alg), &line, 0), Err(Error::Mismatch(_))));
    }

    #[test]
    fn heisenberg_representation_matches_cocycle_twist() {
        let g = cyclic(3);
        let a = crate::groups::AbelianGroup::cyclic(3);
        let data = Bijective1Cocycle::new(crate::groups::GroupAction::trivial(&g, &a), vec![0, 1, 2]).unwrap();
        let field = data.default_field();
        let built = twist_from_1cocycle(&data, &field).unwrap();
        let rep = heisenberg_rep(&data, &field).unwrap();
        let report = match_projective_rep(&built.algebra, &built.twist, &rep, 0).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn trivial_group() {
        let alg = GroupAlgebra::new(cyclic(1), Field::rationals());
        assert_eq!(count_grouplikes(&alg, &Twist::identity(&alg)).unwrap(), 1);
    }
}
