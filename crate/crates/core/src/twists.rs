//! Twists of group algebras: the cocycle and counit identities, gauge
//! transformations, R-matrices, twisted coproduct and antipode, the
//! Drinfeld element, the `R_u` correction, triangularity and minimality.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{GroupAlgebra, Tensor};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::Report;

/// Above this group order the quasitriangularity check runs on generators
/// only (both sides are multiplicative in `x`).
const FULL_BASIS_LIMIT: usize = 16;

/// A verified twist `J` with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    j: Tensor,
    j_inv: Tensor,
}

impl Twist {
    pub fn identity(alg: &GroupAlgebra) -> Self {
        Twist { j: alg.unit(2), j_inv: alg.unit(2) }
    }

    pub fn j(&self) -> &Tensor {
        &self.j
    }

    pub fn inverse(&self) -> &Tensor {
        &self.j_inv
    }

    /// Transport along an injective group map into `target`.
    pub fn pushforward(&self, map: &[usize], target: &GroupAlgebra) -> Twist {
        Twist { j: self.j.pushforward(map, target.order()), j_inv: self.j_inv.pushforward(map, target.order()) }
    }

    pub fn is_symmetric(&self, alg: &GroupAlgebra) -> bool {
        alg.flip(&self.j) == self.j
    }
}

pub(crate) fn describe(alg: &GroupAlgebra, lhs: &Tensor, rhs: &Tensor) -> String {
    match lhs.first_difference(rhs) {
        None => String::new(),
        Some((idx, a, b)) => {
            let names: Vec<&str> = idx.iter().map(|&g| alg.group().label(g)).collect();
            format!("at [{}]: {a} vs {b}", names.join("|"))
        }
    }
}

/// Checks both identities of the twist equation and invertibility; returns
/// the report and, when invertible, the inverse.
pub fn twist_report(alg: &GroupAlgebra, j: &Tensor) -> (Report, Option<Tensor>) {
    let mut report = Report::new("twist");
    if j.rank() != 2 || j.group_order() != alg.order() {
        report.check("shape", false, "expected a rank-2 tensor over the group");
        return (report, None);
    }
    let lhs = alg.mul_unchecked(&alg.coproduct_leg(j, 0), &alg.embed(j, &[0, 1], 3).unwrap());
    let rhs = alg.mul_unchecked(&alg.coproduct_leg(j, 1), &alg.embed(j, &[1, 2], 3).unwrap());
    report.check("cocycle", lhs == rhs, describe(alg, &lhs, &rhs));
    let unit = alg.unit(1);
    let left = alg.counit_leg(j, 0);
    report.check("counit_left", left == unit, describe(alg, &left, &unit));
    let right = alg.counit_leg(j, 1);
    report.check("counit_right", right == unit, describe(alg, &right, &unit));
    let inv = if report.passed() { closed_form_inverse(alg, j) } else { None };
    let inv = inv.or_else(|| alg.invert(j).ok());
    report.check("invertible", inv.is_some(), "");
    (report, inv)
}

/// For a twist, `J^{-1} = (Q^{-1}⊗Q^{-1}) (S⊗S)(J_21) Δ(Q)` with
/// `Q = m(S⊗I)(J)`; only a rank-1 inversion is needed. Checked on both sides.
fn closed_form_inverse(alg: &GroupAlgebra, j: &Tensor) -> Option<Tensor> {
    let q = alg.multiply_legs(&alg.antipode_leg(j, 0), 0);
    let q_inv = alg.invert(&q).ok()?;
    let s21 = alg.antipode_leg(&alg.antipode_leg(&alg.flip(j), 0), 1);
    let c = alg.product(&[&q_inv.outer(&q_inv), &s21, &alg.coproduct(&q)]).ok()?;
    let unit = alg.unit(2);
    (alg.mul_unchecked(j, &c) == unit && alg.mul_unchecked(&c, j) == unit).then_some(c)
}

pub fn verify_twist(alg: &GroupAlgebra, j: &Tensor) -> Result<Twist> {
    let (report, inv) = twist_report(alg, j);
    match report.first_failure() {
        Some(c) => Err(Error::Verification(format!("twist {} fails {}", c.name, c.detail))),
        None => Ok(Twist { j: j.clone(), j_inv: inv.expect("checked") }),
    }
}

/// `J^x = Δ(x) J (x^{-1} ⊗ x^{-1})`, with `x` first rescaled to `ε(x) = 1`.
///
/// Composition: `gauge_transform(gauge_transform(J, x), y) = gauge_transform(J, y x)`.
pub fn gauge_transform(alg: &GroupAlgebra, twist: &Twist, x: &Tensor) -> Result<Twist> {
    let eps = alg.counit(x);
    if eps.is_zero() {
        return Err(Error::Precondition("gauge element has zero counit".into()));
    }
    let x = x.scale(&eps.inv()?);
    let x_inv = alg.invert(&x)?;
    let j = alg.product(&[&alg.coproduct(&x), &twist.j, &x_inv.outer(&x_inv)])?;
    let j_inv = alg.product(&[&x.outer(&x), &twist.j_inv, &alg.coproduct(&x_inv)])?;
    debug_assert_eq!(alg.mul_unchecked(&j, &j_inv), alg.unit(2));
    Ok(Twist { j, j_inv })
}

/// `R^J = J_21^{-1} R J`.
pub fn r_matrix(alg: &GroupAlgebra, base: &Tensor, twist: &Twist) -> Result<Tensor> {
    alg.product(&[&alg.flip(&twist.j_inv), base, &twist.j])
}

/// `Δ^J(x) = J^{-1} Δ(x) J`.
pub fn twisted_coproduct(alg: &GroupAlgebra, twist: &Twist, x: &Tensor) -> Tensor {
    alg.mul_unchecked(&alg.mul_unchecked(&twist.j_inv, &alg.coproduct(x)), &twist.j)
}

/// `Q = m(S ⊗ I)(J)`.
pub fn antipode_twistor(alg: &GroupAlgebra, twist: &Twist) -> Tensor {
    alg.multiply_legs(&alg.antipode_leg(&twist.j, 0), 0)
}

/// `x ↦ Q^{-1} S(x) Q` (`q_left = false`, the antipode of `Δ^J`) or
/// `x ↦ Q S(x) Q^{-1}` (`q_left = true`), as a matrix on the group basis.
pub fn conjugated_antipode(alg: &GroupAlgebra, twist: &Twist, q_left: bool) -> Result<Matrix> {
    let q = antipode_twistor(alg, twist);
    let q_inv = alg.invert(&q)?;
    let (pre, post) = if q_left { (&q, &q_inv) } else { (&q_inv, &q) };
    let n = alg.order();
    let mut m = Matrix::zeros(n, n);
    for g in alg.group().elements() {
        let img = alg.product(&[pre, &alg.element(alg.group().inv(g)), post])?;
        for (idx, c) in img.terms() {
            m.set(idx[0], g, c.clone());
        }
    }
    Ok(m)
}

/// First basis element where `m(S'⊗I)Δ^J(x) = ε(x)1 = m(I⊗S')Δ^J(x)` fails.
pub fn antipode_failure(alg: &GroupAlgebra, twist: &Twist, s: &Matrix) -> Option<usize> {
    let unit = alg.unit(1);
    alg.group().elements().find(|&g| {
        let d = twisted_coproduct(alg, twist, &alg.element(g));
        let left = alg.multiply_legs(&alg.apply_leg(&d, 0, s), 0);
        let right = alg.multiply_legs(&alg.apply_leg(&d, 1, s), 0);
        left != unit || right != unit
    })
}

/// Antipode of `(k[G], Δ^J)`: `S^J(x) = Q^{-1} S(x) Q`, checked against
/// both antipode axioms on the basis.
pub fn twisted_antipode(alg: &GroupAlgebra, twist: &Twist) -> Result<Matrix> {
    let s = conjugated_antipode(alg, twist, false)?;
    if let Some(g) = antipode_failure(alg, twist, &s) {
        return Err(Error::Verification(format!(
            "twisted antipode fails the antipode axiom at {}",
            alg.group().label(g)
        )));
    }
    Ok(s)
}

/// `u = Σ S'(b_i) a_i` for `R = Σ a_i ⊗ b_i`.
pub fn drinfeld_element(alg: &GroupAlgebra, r: &Tensor, antipode: &Matrix) -> Tensor {
    let n = alg.order();
    let mut terms = Vec::new();
    for (idx, c) in r.terms() {
        let (a, b) = (idx[0], idx[1]);
        for h in 0..n {
            let e = antipode.get(h, b);
            if !e.is_zero() {
                terms.push((alloc::vec![alg.group().mul(h, a)], c * e));
            }
        }
    }
    alg.tensor(1, terms)
}

/// Grouplike in `(k[G], Δ^J)`, squares to 1, central.
pub fn drinfeld_report(alg: &GroupAlgebra, twist: &Twist, u: &Tensor) -> Report {
    let mut report = Report::new("drinfeld");
    let du = twisted_coproduct(alg, twist, u);
    let uu = u.outer(u);
    report.check("grouplike", du == uu, describe(alg, &du, &uu));
    let sq = alg.mul_unchecked(u, u);
    report.check("involution", sq == alg.unit(1), describe(alg, &sq, &alg.unit(1)));
    report.check("central", alg.is_central(u), "");
    report.value("u", u.render(alg.group().labels()));
    report
}

/// `R_u = (1⊗1 + 1⊗u + u⊗1 - u⊗u) / 2` for central `u` with `u^2 = e`.
pub fn r_u(alg: &GroupAlgebra, u: usize) -> Result<Tensor> {
    let g = alg.group();
    if g.mul(u, u) != g.identity() || !g.is_central(u) {
        return Err(Error::Precondition(format!("{} is not a central element of order <= 2", g.label(u))));
    }
    if u == g.identity() {
        return Ok(alg.unit(2));
    }
    let half = alg.scalar(2).inv()?;
    let e = g.identity();
    Ok(alg.tensor(
        2,
        [
            (alloc::vec![e, e], half.clone()),
            (alloc::vec![e, u], half.clone()),
            (alloc::vec![u, e], half.clone()),
            (alloc::vec![u, u], -&half),
        ],
    ))
}

fn quasitriangular_basis(alg: &GroupAlgebra) -> Vec<usize> {
    if alg.order() <= FULL_BASIS_LIMIT {
        alg.group().elements().collect()
    } else {
        alg.group().generators()
    }
}

/// The five triangular-structure axioms for `R` on `(k[G], Δ^J)`.
pub fn verify_triangular(alg: &GroupAlgebra, twist: &Twist, r: &Tensor) -> Report {
    let mut report = Report::new("triangular");
    let unit2 = alg.unit(2);
    let r21 = alg.flip(r);
    let r21r = alg.mul_unchecked(&r21, r);
    let invertible = (r21r == unit2 && alg.mul_unchecked(r, &r21) == unit2) || alg.invert(r).is_ok();
    report.check("invertible", invertible, "");
    let mut qt = (true, String::new());
    for x in quasitriangular_basis(alg) {
        let d = twisted_coproduct(alg, twist, &alg.element(x));
        let lhs = alg.mul_unchecked(r, &d);
        let rhs = alg.mul_unchecked(&alg.flip(&d), r);
        if lhs != rhs {
            qt = (false, format!("x = {} {}", alg.group().label(x), describe(alg, &lhs, &rhs)));
            break;
        }
    }
    report.check("quasitriangular", qt.0, qt.1);
    let j12 = alg.embed(&twist.j, &[0, 1], 3).unwrap();
    let j12_inv = alg.embed(&twist.j_inv, &[0, 1], 3).unwrap();
    let j23 = alg.embed(&twist.j, &[1, 2], 3).unwrap();
    let j23_inv = alg.embed(&twist.j_inv, &[1, 2], 3).unwrap();
    let r12 = alg.embed(r, &[0, 1], 3).unwrap();
    let r13 = alg.embed(r, &[0, 2], 3).unwrap();
    let r23 = alg.embed(r, &[1, 2], 3).unwrap();
    let lhs1 = alg.mul_unchecked(&alg.mul_unchecked(&j12_inv, &alg.coproduct_leg(r, 0)), &j12);
    let rhs1 = alg.mul_unchecked(&r13, &r23);
    report.check("hexagon_left", lhs1 == rhs1, describe(alg, &lhs1, &rhs1));
    let lhs2 = alg.mul_unchecked(&alg.mul_unchecked(&j23_inv, &alg.coproduct_leg(r, 1)), &j23);
    let rhs2 = alg.mul_unchecked(&r13, &r12);
    report.check("hexagon_right", lhs2 == rhs2, describe(alg, &lhs2, &rhs2));
    report.check("symmetric", r21r == unit2, describe(alg, &r21r, &unit2));
    report
}

/// Dimensions of the spans of the left and right legs of `R`.
pub fn leg_ranks(alg: &GroupAlgebra, r: &Tensor) -> (usize, usize) {
    let m = Matrix::from_rows(r.coefficient_rows()).expect("square");
    debug_assert_eq!(m.rows(), alg.order());
    (m.rank(), m.transpose().rank())
}

/// Both leg spans of `R` are all of `k[G]`.
pub fn verify_minimal(alg: &GroupAlgebra, r: &Tensor) -> bool {
    let (left, right) = leg_ranks(alg, r);
    left == alg.order() && right == alg.order()
}

/// A twist with its R-matrix and Drinfeld element, all verified.
#[derive(Clone, Debug)]
pub struct TriangularStructure {
    pub twist: Twist,
    pub r: Tensor,
    pub antipode: Matrix,
    pub drinfeld: Tensor,
    pub report: Report,
}

/// Runs the full battery on `(k[G]^J, r)`.
pub fn triangular_structure(alg: &GroupAlgebra, twist: &Twist, r: Tensor) -> Result<TriangularStructure> {
    let mut report = verify_triangular(alg, twist, &r);
    let antipode = twisted_antipode(alg, twist)?;
    let u = drinfeld_element(alg, &r, &antipode);
    report.absorb("drinfeld", &drinfeld_report(alg, twist, &u));
    Ok(TriangularStructure { twist: twist.clone(), r, antipode, drinfeld: u, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::library::{cyclic, symmetric};
    use crate::scalars::{Field, Scalar};

    fn v4() -> GroupAlgebra {
        GroupAlgebra::new(cyclic(2).direct_product(&cyclic(2)), Field::rationals())
    }

    /// `(1⊗1 + 1⊗g + b⊗1 - b⊗g)/2` with `b = (1,0)`, `g = (0,1)`.
    fn klein_twist(alg: &GroupAlgebra) -> Tensor {
        let h = Scalar::from_ratio(1, 2);
        alg.tensor(2, [(vec![0, 0], h.clone()), (vec![0, 1], h.clone()), (vec![2, 0], h.clone()), (vec![2, 1], -&h)])
    }

    #[test]
    fn identity_twist_is_valid() {
        let alg = v4();
        let t = verify_twist(&alg, &alg.unit(2)).unwrap();
        assert_eq!(t, Twist::identity(&alg));
    }

    #[test]
    fn small_twist_is_valid_and_self_inverse() {
        let alg = v4();
        let t = verify_twist(&alg, &klein_twist(&alg)).unwrap();
        assert_eq!(alg.mul(t.j(), t.inverse()).unwrap(), alg.unit(2));
        assert!(!t.is_symmetric(&alg));
    }

    #[test]
    fn counit_violation_is_named() {
        let alg = v4();
        let j = alg.tensor(2, [(vec![0, 0], Scalar::one()), (vec![0, 1], Scalar::one())]);
        let (report, _) = twist_report(&alg, &j);
        assert!(!report.check_named("counit_left").unwrap().passed);
        assert!(verify_twist(&alg, &j).is_err());
    }

    #[test]
    fn gauge_of_identity_is_symmetric_and_composes() {
        let alg = v4();
        let x = alg.tensor(1, [(vec![0], Scalar::from_int(3)), (vec![1], Scalar::one()), (vec![3], Scalar::from_int(-1))]);
        let y = alg.tensor(1, [(vec![0], Scalar::from_int(2)), (vec![2], Scalar::one())]);
        let id = Twist::identity(&alg);
        let jx = gauge_transform(&alg, &id, &x).unwrap();
        assert!(jx.is_symmetric(&alg));
        verify_twist(&alg, jx.j()).unwrap();
        let t = verify_twist(&alg, &klein_twist(&alg)).unwrap();
        let twice = gauge_transform(&alg, &gauge_transform(&alg, &t, &x).unwrap(), &y).unwrap();
        let once = gauge_transform(&alg, &t, &alg.mul(&y, &x).unwrap()).unwrap();
        assert_eq!(twice.j(), once.j());
        assert_eq!(gauge_transform(&alg, &t, &alg.unit(1)).unwrap(), t);
    }

    #[test]
    fn r_u_on_z2() {
        let alg = GroupAlgebra::new(cyclic(2), Field::rationals());
        let r = r_u(&alg, 1).unwrap();
        assert_eq!(alg.mul(&alg.flip(&r), &r).unwrap(), alg.unit(2));
        assert_eq!(alg.mul(&r, &r).unwrap(), alg.unit(2));
        let id = Twist::identity(&alg);
        assert!(verify_triangular(&alg, &id, &r).passed());
        let s = twisted_antipode(&alg, &id).unwrap();
        assert_eq!(drinfeld_element(&alg, &r, &s), alg.element(1));
        assert_eq!(r_u(&alg, 0).unwrap(), alg.unit(2));
    }

    #[test]
    fn one_tensor_u_is_not_quasitriangular() {
        let alg = GroupAlgebra::new(cyclic(2), Field::rationals());
        let r = alg.basis(&[0, 1]);
        let report = verify_triangular(&alg, &Twist::identity(&alg), &r);
        assert!(!report.check_named("hexagon_left").unwrap().passed);
    }

    #[test]
    fn r_u_rejects_noncentral() {
        let alg = GroupAlgebra::new(symmetric(3), Field::rationals());
        let s = (0..6).find(|&g| alg.group().element_order(g) == 2).unwrap();
        assert!(r_u(&alg, s).is_err());
    }

    #[test]
    fn small_twist_is_minimal_and_triangular() {
        let alg = v4();
        let t = verify_twist(&alg, &klein_twist(&alg)).unwrap();
        let r = r_matrix(&alg, &alg.unit(2), &t).unwrap();
        let ts = triangular_structure(&alg, &t, r.clone()).unwrap();
        assert!(ts.report.passed(), "{}", ts.report);
        assert_eq!(ts.drinfeld, alg.unit(1));
        assert!(verify_minimal(&alg, &r));
        assert!(!verify_minimal(&alg, &alg.unit(2)));
    }

    #[test]
    fn twisted_coproduct_is_coassociative() {
        let alg = v4();
        let t = verify_twist(&alg, &klein_twist(&alg)).unwrap();
        for g in alg.group().elements() {
            let d = twisted_coproduct(&alg, &t, &alg.element(g));
            let left = alg.mul_unchecked(
                &alg.mul_unchecked(&alg.embed(t.inverse(), &[0, 1], 3).unwrap(), &alg.coproduct_leg(&d, 0)),
                &alg.embed(t.j(), &[0, 1], 3).unwrap(),
            );
            let right = alg.mul_unchecked(
                &alg.mul_unchecked(&alg.embed(t.inverse(), &[1, 2], 3).unwrap(), &alg.coproduct_leg(&d, 1)),
                &alg.embed(t.j(), &[1, 2], 3).unwrap(),
            );
            assert_eq!(left, right);
        }
    }
}
