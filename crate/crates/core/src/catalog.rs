//! Quadruples `(G, H, V, u)` and the triangular Hopf algebras they define:
//! `F(G, H, V, u) = (k[G]^J, J_21^{-1} J R_u)` with `J` the twist of `V`
//! pushed from `k[H]` into `k[G]`. Includes a built-in group catalog, small
//! order enumeration with isomorphism deduplication, and a rerun of the
//! whole pipeline over prime fields.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{GroupAlgebra, Tensor};
use crate::constructions::{
    find_bijective_1cocycles, heisenberg_rep, is_nondegenerate, lift_projective, pauli_rep, semidirect_for,
    twist_from_rep, Bijective1Cocycle, ProjectiveRep,
};
use crate::error::{Error, Result};
use crate::groups::library::{abelian, alternating, cyclic, dihedral, quaternion, symmetric};
use crate::groups::{AbelianGroup, FiniteGroup, GroupAction};
use crate::linalg::Matrix;
use crate::movshev::{certify_regular_action, certify_simple, count_grouplikes, dual_movshev};
use crate::report::Report;
use crate::scalars::{is_prime, Field, FieldSpec};
use crate::twists::{leg_ranks, r_matrix, r_u, triangular_structure, verify_minimal, Twist};

/// Largest order accepted by [`enumerate_quadruples`].
pub const MAX_ORDER: usize = 32;

/// Largest order at which enumeration deduplicates isomorphic quadruples.
pub const DEDUP_LIMIT: usize = 16;

/// Seed for functional searches inside the pipeline.
const PIPELINE_SEED: u64 = 0;

/// Invariant factor lists `d_1 | d_2 | ... | d_k` with product `n`.
pub fn invariant_factor_lists(n: u32) -> Vec<Vec<u32>> {
    fn rec(rem: u32, prev: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 1 {
            out.push(acc.clone());
            return;
        }
        for d in 2..=rem {
            if rem % d == 0 && d % prev == 0 {
                acc.push(d);
                rec(rem / d, d, acc, out);
                acc.pop();
            }
        }
    }
    if n == 1 {
        return vec![vec![1]];
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out.retain(|l| l.windows(2).all(|w| w[1] % w[0] == 0));
    out.sort_by_key(|l| l.len());
    out
}

fn nonabelian_bases(max_order: usize) -> Vec<FiniteGroup> {
    let mut out = vec![symmetric(3)];
    for m in 4..=max_order / 2 {
        out.push(dihedral(m));
    }
    if max_order >= 8 {
        out.push(quaternion());
    }
    if max_order >= 12 {
        out.push(alternating(4));
    }
    if max_order >= 24 {
        out.push(symmetric(4));
    }
    out
}

/// Pairwise non-isomorphic catalog groups of order `n`: abelian groups by
/// invariant factors, dihedral groups, `Q8`, `S3`, `A4`, `S4`, and their
/// direct products with abelian groups.
pub fn groups_of_order(n: usize) -> Vec<FiniteGroup> {
    let mut candidates = Vec::new();
    for factors in invariant_factor_lists(n as u32) {
        let g = if factors.len() == 1 { cyclic(factors[0]) } else { abelian(&factors) };
        candidates.push(g);
    }
    for base in nonabelian_bases(n) {
        let b = base.order();
        if b == n {
            candidates.push(base.clone());
        } else if n % b == 0 && b < n {
            for factors in invariant_factor_lists((n / b) as u32) {
                let a = if factors.len() == 1 { cyclic(factors[0]) } else { abelian(&factors) };
                let name = format!("{}x{}", base.name(), a.name());
                candidates.push(base.direct_product(&a).with_name(&name));
            }
        }
    }
    let mut out: Vec<FiniteGroup> = Vec::new();
    for g in candidates {
        if g.order() == n && !out.iter().any(|h| h.is_isomorphic(&g)) {
            out.push(g);
        }
    }
    out
}

/// The catalog up to `max_order`, ordered by order then catalog index.
pub fn builtin_groups(max_order: usize) -> Vec<FiniteGroup> {
    (1..=max_order).flat_map(groups_of_order).collect()
}

/// A named action used as finder input.
#[derive(Clone, Debug)]
pub struct FinderInput {
    pub name: String,
    pub action: GroupAction,
}

fn finder_input(name: &str, g: FiniteGroup, a: AbelianGroup, images: &[(usize, Vec<Vec<u32>>)]) -> FinderInput {
    let gens: Vec<usize> = images.iter().map(|(s, _)| *s).collect();
    let imgs: Vec<Vec<Vec<u32>>> = images.iter().map(|(_, i)| i.clone()).collect();
    let action = if gens.is_empty() {
        GroupAction::trivial(&g, &a)
    } else {
        GroupAction::from_generators(&g, &a, &gens, &imgs).expect("curated action is valid")
    };
    FinderInput { name: name.to_string(), action }
}

/// Curated `(G, A, action)` inputs for the 1-cocycle finder, `|G| <= 8`,
/// including nonabelian `G ⋉ A*`.
pub fn finder_inputs() -> Vec<FinderInput> {
    let mut out = Vec::new();
    for n in 2..=6u32 {
        out.push(finder_input(&format!("Z{n} on Z{n}, trivial"), cyclic(n), AbelianGroup::cyclic(n), &[]));
    }
    let v4 = AbelianGroup::new(&[2, 2]).expect("valid");
    out.push(finder_input("Z2xZ2 on Z2xZ2, trivial", abelian(&[2, 2]), v4.clone(), &[]));
    let z4 = cyclic(4);
    let t = z4.generators()[0];
    out.push(finder_input("Z4 on Z2xZ2, swap", z4, v4.clone(), &[(t, vec![vec![0, 1], vec![1, 0]])]));
    let k = abelian(&[2, 2]);
    // (1,0) inverts, (0,1) acts trivially
    out.push(finder_input(
        "Z2xZ2 on Z4, inversion",
        k,
        AbelianGroup::cyclic(4),
        &[(2, vec![vec![3]]), (1, vec![vec![1]])],
    ));
    let s3 = symmetric(3);
    let sign_images: Vec<(usize, Vec<Vec<u32>>)> = s3
        .generators()
        .into_iter()
        .map(|s| (s, vec![vec![if s3.element_order(s) == 2 { 5 } else { 1 }]]))
        .collect();
    out.push(finder_input("S3 on Z6, sign", s3, AbelianGroup::cyclic(6), &sign_images));
    let d4 = dihedral(4);
    let z2z4 = AbelianGroup::new(&[2, 4]).expect("valid");
    let gens = d4.generators();
    let d4_images: Vec<(usize, Vec<Vec<u32>>)> = gens
        .iter()
        .map(|&s| {
            let img = if d4.element_order(s) == 4 { vec![vec![1, 2], vec![1, 3]] } else { vec![vec![1, 0], vec![1, 1]] };
            (s, img)
        })
        .collect();
    out.push(finder_input("D4 on Z2xZ4", d4, z2z4, &d4_images));
    out
}

/// All bijective 1-cocycles of the curated inputs, labelled.
pub fn finder_data() -> Result<Vec<(String, Bijective1Cocycle)>> {
    let mut out = Vec::new();
    for input in finder_inputs() {
        for (i, data) in find_bijective_1cocycles(&input.action)?.into_iter().enumerate() {
            out.push((format!("{} #{i}", input.name), data));
        }
    }
    Ok(out)
}

/// How enumeration picks its field for each group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    /// `Q(z_e)` with `e` the exponent of the group.
    Cyclotomic,
    /// `F_p`, which must contain the roots of unity of order the exponent.
    Prime(u64),
}

impl FieldChoice {
    pub fn field_for(&self, g: &FiniteGroup) -> Result<Field> {
        let e = g.exponent() as u64;
        match *self {
            FieldChoice::Cyclotomic => Field::cyclotomic(e as u32),
            FieldChoice::Prime(p) => {
                if !is_prime(p) {
                    return Err(Error::InvalidField(format!("{p} is not prime")));
                }
                if g.order() as u64 % p == 0 {
                    return Err(Error::Precondition(format!("{p} divides |{}| = {}", g.name(), g.order())));
                }
                Field::prime(p, e)
            }
        }
    }
}

/// Central elements of order at most 2, identity first.
pub fn central_involutions(g: &FiniteGroup) -> Vec<usize> {
    g.center().into_iter().filter(|&x| g.mul(x, x) == g.identity()).collect()
}

/// `(G, H, V, u)`: `H` a subgroup (sorted element list), `V` a projective
/// representation of `H` (on `G.subgroup_as_group(H)`) with `dim V^2 = |H|`
/// and nondegenerate cocycle, `u` central of order at most 2.
#[derive(Clone, Debug)]
pub struct Quadruple {
    group: FiniteGroup,
    subgroup: Vec<usize>,
    subgroup_group: FiniteGroup,
    rep: ProjectiveRep,
    rep_name: String,
    u: usize,
}

impl Quadruple {
    pub fn new(group: FiniteGroup, subgroup: Vec<usize>, rep: ProjectiveRep, rep_name: &str, u: usize) -> Result<Self> {
        let mut subgroup = subgroup;
        subgroup.sort_unstable();
        subgroup.dedup();
        if !group.is_subgroup(&subgroup) {
            return Err(Error::Precondition("H is not a subgroup".into()));
        }
        let (hg, _) = group.subgroup_as_group(&subgroup, "H");
        if rep.group().table() != hg.table() {
            return Err(Error::Mismatch("V is not a representation of H".into()));
        }
        if rep.dim() * rep.dim() != subgroup.len() {
            return Err(Error::Precondition(format!("dim V = {} but |H| = {}", rep.dim(), subgroup.len())));
        }
        if !is_nondegenerate(rep.cocycle(), rep.field())? {
            return Err(Error::Precondition("the cocycle of V is degenerate".into()));
        }
        let identity: Vec<usize> = hg.elements().collect();
        let rep = transport(&rep, &identity, &hg)?;
        let q = Quadruple { group, subgroup, subgroup_group: hg, rep, rep_name: rep_name.to_string(), u: 0 };
        q.with_u(u)
    }

    /// The same `(G, H, V)` with another central element.
    pub fn with_u(&self, u: usize) -> Result<Self> {
        let g = &self.group;
        if u >= g.order() || !g.is_central(u) || g.mul(u, u) != g.identity() {
            return Err(Error::Precondition("u must be central of order at most 2".into()));
        }
        Ok(Quadruple { u, ..self.clone() })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    /// `H` as a group, with index `i` standing for `subgroup()[embedding i]`.
    pub fn subgroup_group(&self) -> &FiniteGroup {
        &self.subgroup_group
    }

    pub fn embedding(&self) -> Vec<usize> {
        self.group.subgroup_as_group(&self.subgroup, "H").1
    }

    pub fn rep(&self) -> &ProjectiveRep {
        &self.rep
    }

    pub fn rep_name(&self) -> &str {
        &self.rep_name
    }

    pub fn u(&self) -> usize {
        self.u
    }

    /// The subgroup generated by `H` and `u`.
    pub fn minimal_part(&self) -> Vec<usize> {
        let mut gens = self.subgroup.clone();
        gens.push(self.u);
        self.group.subgroup_generated(&gens)
    }

    /// The same quadruple with `V` reduced into another field.
    pub fn reduce(&self, field: &Field) -> Result<Quadruple> {
        let matrices = self
            .rep
            .matrices()
            .iter()
            .map(|m| {
                let mut out = Matrix::zeros(m.rows(), m.cols());
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        out.set(i, j, field.reduce(m.get(i, j))?);
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        let rep = lift_projective(self.rep.group(), field, matrices)?;
        Quadruple::new(self.group.clone(), self.subgroup.clone(), rep, &self.rep_name, self.u)
    }

    pub fn describe(&self) -> String {
        format!(
            "({}, |H|={}, V={} dim {}, u={})",
            self.group.name(),
            self.subgroup.len(),
            self.rep_name,
            self.rep.dim(),
            self.group.label(self.u)
        )
    }
}

/// Integer invariants and booleans compared across fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub minimal: bool,
    pub leg_rank: usize,
    pub center_dimension: usize,
    pub grouplikes: usize,
    pub minimal_part_order: usize,
    pub solvable: bool,
}

/// `F(q)` with every certificate.
#[derive(Clone, Debug)]
pub struct TriangularHopfDatum {
    pub quadruple: Quadruple,
    pub field: Field,
    pub algebra: GroupAlgebra,
    /// `J` on `k[H]`.
    pub subgroup_twist: Twist,
    /// `J` pushed into `k[G]`.
    pub twist: Twist,
    pub r: Tensor,
    pub drinfeld: Tensor,
    pub invariants: Invariants,
    pub report: Report,
}

impl TriangularHopfDatum {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Rank criterion (the legs of `R` span `k[G]`) against `<H, u> = G`.
/// Disagreement is a theorem violation.
pub fn is_minimal_datum(d: &TriangularHopfDatum) -> Result<bool> {
    let by_rank = verify_minimal(&d.algebra, &d.r);
    let by_group = d.quadruple.minimal_part().len() == d.quadruple.group().order();
    if by_rank != by_group {
        return Err(Error::TheoremViolation(format!(
            "{}: leg span says minimal={by_rank}, <H,u> = G says {by_group}",
            d.quadruple.describe()
        )));
    }
    Ok(by_rank)
}

/// `F(G, H, V, u)`.
pub fn assemble(q: &Quadruple, field: &Field) -> Result<TriangularHopfDatum> {
    let g = q.group();
    if !field.is_unit(g.order() as i64) {
        return Err(Error::Precondition(format!("characteristic divides |{}| = {}", g.name(), g.order())));
    }
    if q.rep().field() != field {
        return Err(Error::Mismatch(format!("V is defined over {}, not {field}", q.rep().field())));
    }
    let alg_h = GroupAlgebra::new(q.subgroup_group().clone(), field.clone());
    let j_h = twist_from_rep(&alg_h, q.rep(), PIPELINE_SEED)?.twist;
    let alg = GroupAlgebra::new(g.clone(), field.clone());
    let emb = q.embedding();
    let twist = j_h.pushforward(&emb, &alg);
    let ru = r_u(&alg, q.u())?;
    let r = r_matrix(&alg, &ru, &twist)?;
    let ts = triangular_structure(&alg, &twist, r)?;
    let mut report = Report::new("datum");
    report.absorb("triangular", &ts.report);
    let u_elem = alg.element(q.u());
    report.check("drinfeld_is_u", ts.drinfeld == u_elem, ts.drinfeld.render(g.labels()));
    let trace = alg.left_matrix(&ts.drinfeld).trace();
    let expected = if q.u() == g.identity() { field.from_int(g.order() as i64) } else { field.zero() };
    report.check("regular_trace", trace == expected, trace.pretty());

    // The u-free part recovers H: the legs of J_21^{-1}J span exactly k[H].
    let rj = r_matrix(&alg, &alg.unit(2), &twist)?;
    let inside = rj.terms().all(|(idx, _)| q.subgroup().binary_search(&idx[0]).is_ok() && q.subgroup().binary_search(&idx[1]).is_ok());
    let (rank_j, _) = leg_ranks(&alg, &rj);
    report.check("recovers_subgroup", inside && rank_j == q.subgroup().len(), format!("leg rank {rank_j}"));

    let m = dual_movshev(&alg_h, &j_h)?;
    let simple = certify_simple(&m);
    let center_dimension = m.algebra().center_dimension();
    report.absorb("movshev", &simple);
    report.absorb("movshev", &certify_regular_action(&m));

    let grouplikes = count_grouplikes(&alg, &twist)?;
    let enough = g.order() < 2 || grouplikes >= 2;
    report.check("grouplikes", enough, format!("{grouplikes}"));

    let part = q.minimal_part();
    let (part_group, _) = g.subgroup_as_group(&part, "<H,u>");
    let solvable = part_group.is_solvable();
    report.check("minimal_part_solvable", solvable, "");

    let (leg_rank, _) = leg_ranks(&alg, &ts.r);
    let mut datum = TriangularHopfDatum {
        quadruple: q.clone(),
        field: field.clone(),
        algebra: alg,
        subgroup_twist: j_h,
        twist,
        r: ts.r,
        drinfeld: ts.drinfeld,
        invariants: Invariants {
            minimal: false,
            leg_rank,
            center_dimension,
            grouplikes,
            minimal_part_order: part.len(),
            solvable,
        },
        report,
    };
    let minimal = is_minimal_datum(&datum)?;
    datum.invariants.minimal = minimal;
    datum.report.check("minimality_criteria_agree", true, "");
    datum.report.value("minimal", minimal);
    datum.report.value("grouplikes", grouplikes);
    datum.report.value("center_dimension", center_dimension);
    datum.report.value("leg_rank", leg_rank);
    Ok(datum)
}

/// The first `count` primes `p > |G|` with `p = 1 mod root_order`.
///
/// Any prime not dividing `|G|` is admissible for [`char_p_mirror`]; small
/// ones make the functional search in `twist_from_rep` slow to succeed,
/// since a random functional generates the regular module with probability
/// about `(1 - 1/p)^{|H|}`.
pub fn admissible_primes(d: &TriangularHopfDatum, count: usize) -> Vec<u64> {
    let c = d.field.root_order().max(1);
    let n = d.quadruple.group().order() as u64;
    (n + 1..).filter(|&p| is_prime(p) && (p - 1) % c == 0).take(count).collect()
}

/// Reruns `F` over `F_p`, with `z` sent to the designated root, and compares
/// every certificate and invariant with the characteristic-0 datum.
pub fn char_p_mirror(d: &TriangularHopfDatum, p: u64) -> Result<Report> {
    if !is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if d.field.characteristic() != 0 {
        return Err(Error::Precondition("mirror starts from a characteristic-0 datum".into()));
    }
    let n = d.quadruple.group().order() as u64;
    if n % p == 0 {
        return Err(Error::Precondition(format!("{p} divides |G| = {n}")));
    }
    let c = d.field.root_order().max(1);
    if (p - 1) % c != 0 {
        return Err(Error::Precondition(format!("{p} is not 1 mod {c}")));
    }
    let field = Field::new(FieldSpec::Prime { modulus: p, root_order: c })?;
    let q = d.quadruple.reduce(&field)?;
    let mirror = assemble(&q, &field)?;
    let mut report = Report::new("char_p_mirror");
    report.value("prime", p);
    for check in &d.report.checks {
        let other = mirror.report.check_named(&check.name).map(|c| c.passed);
        report.check(&format!("agree.{}", check.name), other == Some(check.passed), format!("{other:?}"));
    }
    report.check("agree.invariants", mirror.invariants == d.invariants, format!("{:?}", mirror.invariants));
    Ok(report)
}

/// `k` with `value = z_m^k`.
fn root_exponent(field: &Field, value: &crate::scalars::Scalar, m: u64) -> Option<u64> {
    (0..m).find(|&k| field.root_of_unity(m, k as i64).map(|z| &z == value).unwrap_or(false))
}

/// An isomorphism `A -> hg` from an abelian group in invariant factor form.
fn abelian_structure(hg: &FiniteGroup) -> (AbelianGroup, Vec<usize>) {
    for factors in invariant_factor_lists(hg.order() as u32) {
        let a = AbelianGroup::new(&factors).expect("positive");
        if let Some(map) = a.as_group().isomorphism_to(hg) {
            return (a, map);
        }
    }
    unreachable!("every finite abelian group has invariant factors")
}

/// Nondegenerate alternating bicharacters on `A`, as exponent tables
/// `beta[x * |A| + y]` of `z_e`, `e` the exponent.
pub fn nondegenerate_alternating_forms(a: &AbelianGroup) -> Vec<Vec<u64>> {
    let r = a.rank();
    let e = a.exponent();
    let f = a.factors();
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
    let choices: Vec<u64> = pairs.iter().map(|&(i, j)| num_integer::gcd(f[i], f[j]) as u64).collect();
    let total: u64 = choices.iter().product();
    let n = a.order();
    let tuples: Vec<Vec<u32>> = (0..n).map(|x| a.tuple(x)).collect();
    let mut out = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let mut k = vec![vec![0u64; r]; r];
        for (&(i, j), &c) in pairs.iter().zip(&choices) {
            let v = (rest % c) * (e / c);
            rest /= c;
            k[i][j] = v;
            k[j][i] = (e - v) % e;
        }
        let mut beta = vec![0u64; n * n];
        for x in 0..n {
            for y in 0..n {
                let mut s = 0u64;
                for i in 0..r {
                    for j in 0..r {
                        s += k[i][j] * tuples[x][i] as u64 * tuples[y][j] as u64;
                    }
                }
                beta[x * n + y] = s % e;
            }
        }
        let degenerate = (1..n).any(|x| (0..n).all(|y| beta[x * n + y] == 0));
        if !degenerate {
            out.push(beta);
        }
    }
    out
}

/// Projective representation of `A` whose commutator form is `beta`, on
/// functions on a Lagrangian subgroup `L` with complementary Lagrangian `M`:
/// `π̃(l + m) δ_a = z^{-β(a, m)} δ_{a + l}`.
pub fn lagrangian_rep(a: &AbelianGroup, beta: &[u64], field: &Field) -> Result<ProjectiveRep> {
    let n = a.order();
    let e = a.exponent();
    let ag = a.as_group();
    let d = (1..=n).find(|d| d * d == n).ok_or_else(|| Error::Precondition("|A| is not a square".into()))?;
    let isotropic: Vec<Vec<usize>> = ag
        .all_subgroups()
        .into_iter()
        .filter(|s| s.len() == d && s.iter().all(|&x| s.iter().all(|&y| beta[x * n + y] == 0)))
        .collect();
    let (l, m) = isotropic
        .iter()
        .flat_map(|l| isotropic.iter().map(move |m| (l, m)))
        .find(|(l, m)| l.iter().filter(|x| m.binary_search(x).is_ok()).count() == 1)
        .ok_or_else(|| Error::SearchExhausted("no complementary Lagrangian subgroups".into()))?;
    let pos: BTreeMap<usize, usize> = l.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut split = vec![(0, 0); n];
    for &x in l {
        for &y in m {
            split[a.add(x, y)] = (x, y);
        }
    }
    let mut matrices = Vec::with_capacity(n);
    for h in 0..n {
        let (lh, mh) = split[h];
        let mut mat = Matrix::zeros(d, d);
        for &x in l {
            let k = (e - beta[x * n + mh]) % e;
            mat.set(pos[&a.add(x, lh)], pos[&x], field.root_of_unity(e, k as i64)?);
        }
        matrices.push(mat);
    }
    let rep = lift_projective(&ag, field, matrices)?;
    for x in 0..n {
        for y in 0..n {
            let alt = rep.cocycle().alternating_form(x, y);
            if alt != field.root_of_unity(e, beta[x * n + y] as i64)? {
                return Err(Error::Verification("commutator form does not match".into()));
            }
        }
    }
    Ok(rep)
}

/// Transport of `rep` along a bijection `map: rep.group() -> target`.
fn transport(rep: &ProjectiveRep, map: &[usize], target: &FiniteGroup) -> Result<ProjectiveRep> {
    let mut matrices = vec![Matrix::zeros(0, 0); target.order()];
    for (x, &y) in map.iter().enumerate() {
        matrices[y] = rep.matrix(x).clone();
    }
    lift_projective(target, rep.field(), matrices)
}

/// Candidate `V`s for a subgroup given as a group: commutator forms for
/// abelian `H`, transported finder representations for nonabelian `H`.
fn reps_for(hg: &FiniteGroup, field: &Field, finder: &[(String, Bijective1Cocycle)]) -> Result<Vec<(String, ProjectiveRep)>> {
    let n = hg.order();
    let d = (1..=n).find(|d| d * d == n);
    let Some(_) = d else { return Ok(Vec::new()) };
    if n == 1 {
        let rep = lift_projective(hg, field, vec![Matrix::identity(1, &field.one())])?;
        return Ok(vec![("trivial".into(), rep)]);
    }
    let mut out = Vec::new();
    if hg.is_abelian() {
        let (a, map) = abelian_structure(hg);
        if a.factors() == [2, 2] {
            out.push(("pauli".to_string(), transport(&pauli_rep(field)?, &map, hg)?));
            return Ok(out);
        }
        for (i, beta) in nondegenerate_alternating_forms(&a).iter().enumerate() {
            let rep = lagrangian_rep(&a, beta, field)?;
            out.push((format!("form{i}"), transport(&rep, &map, hg)?));
        }
        return Ok(out);
    }
    let mut kept: Vec<ProjectiveRep> = Vec::new();
    for (name, data) in finder {
        let sp = semidirect_for(data);
        if sp.group.order() != n {
            continue;
        }
        let Some(map) = sp.group.isomorphism_to(hg) else { continue };
        let rep = transport(&heisenberg_rep(data, field)?, &map, hg)?;
        let mut duplicate = false;
        for other in &kept {
            if other.equivalent_over_closure(&rep)? {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            kept.push(rep.clone());
            out.push((format!("heisenberg[{name}]"), rep));
        }
    }
    Ok(out)
}

/// Commutator form of `V` on commuting pairs of `H`, indexed by `G`
/// elements, as exponents of `z_e`; complete for abelian `H`.
fn commutator_key(q: &Quadruple, field: &Field, e: u64) -> BTreeMap<(usize, usize), u64> {
    let emb = q.embedding();
    let hg = q.subgroup_group();
    let mut key = BTreeMap::new();
    for x in hg.elements() {
        for y in hg.elements() {
            if hg.commutes(x, y) {
                let v = q.rep().cocycle().alternating_form(x, y);
                let k = root_exponent(field, &v, e).unwrap_or(u64::MAX);
                key.insert((emb[x], emb[y]), k);
            }
        }
    }
    key
}

type OrbitKey = (Vec<usize>, usize, Vec<((usize, usize), u64)>);

fn image_key(sigma: &[usize], h: &[usize], u: usize, form: &BTreeMap<(usize, usize), u64>) -> OrbitKey {
    let mut hs: Vec<usize> = h.iter().map(|&x| sigma[x]).collect();
    hs.sort_unstable();
    let f: BTreeMap<(usize, usize), u64> = form.iter().map(|(&(x, y), &k)| ((sigma[x], sigma[y]), k)).collect();
    (hs, sigma[u], f.into_iter().collect())
}

/// Whether `V_b` is projectively equivalent to `V_a` moved along `sigma`.
fn reps_match(a: &Quadruple, b: &Quadruple, sigma: &[usize]) -> Result<bool> {
    let emb_a = a.embedding();
    let emb_b = b.embedding();
    let pos_b: BTreeMap<usize, usize> = emb_b.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let map: Vec<usize> = emb_a.iter().map(|&x| pos_b[&sigma[x]]).collect();
    let moved = transport(a.rep(), &map, b.subgroup_group())?;
    moved.equivalent_over_closure(b.rep())
}

/// Quadruples on one group, deduplicated up to automorphisms of `G` when
/// `dedup` is set.
pub fn quadruples_for_group(g: &FiniteGroup, field: &Field, dedup: bool) -> Result<Vec<Quadruple>> {
    let finder = finder_data()?;
    let involutions = central_involutions(g);
    let mut candidates = Vec::new();
    for h in g.all_subgroups() {
        let (hg, _) = g.subgroup_as_group(&h, "H");
        for (name, rep) in reps_for(&hg, field, &finder)? {
            let base = Quadruple::new(g.clone(), h.clone(), rep, &name, g.identity())?;
            for &u in &involutions {
                candidates.push(base.with_u(u)?);
            }
        }
    }
    candidates.sort_by_key(|q| (q.subgroup().len(), q.u()));
    if !dedup {
        return Ok(candidates);
    }
    let e = g.exponent() as u64;
    let auts = g.automorphisms();
    let mut seen: BTreeMap<OrbitKey, Vec<(usize, usize)>> = BTreeMap::new();
    let mut kept: Vec<Quadruple> = Vec::new();
    for q in candidates {
        let form = commutator_key(&q, field, e);
        let key = image_key(&(0..g.order()).collect::<Vec<_>>(), q.subgroup(), q.u(), &form);
        let mut duplicate = false;
        if let Some(hits) = seen.get(&key) {
            if q.subgroup_group().is_abelian() {
                duplicate = true;
            } else {
                for &(rep_index, sigma_index) in hits {
                    if reps_match(&kept[rep_index], &q, &auts[sigma_index])? {
                        duplicate = true;
                        break;
                    }
                }
            }
        }
        if duplicate {
            continue;
        }
        let index = kept.len();
        let mut images = BTreeSet::new();
        for (s, sigma) in auts.iter().enumerate() {
            let k = image_key(sigma, q.subgroup(), q.u(), &form);
            if q.subgroup_group().is_abelian() {
                if images.insert(k.clone()) {
                    seen.entry(k).or_default().push((index, s));
                }
            } else {
                seen.entry(k).or_default().push((index, s));
            }
        }
        kept.push(q);
    }
    Ok(kept)
}

/// One enumerated datum with the group's catalog position.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub catalog_index: usize,
    pub datum: TriangularHopfDatum,
}

/// Enumeration result; `deduplicated` is false above [`DEDUP_LIMIT`] even
/// when requested.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub order: usize,
    pub deduplicated: bool,
    pub entries: Vec<CatalogEntry>,
}

/// Quadruples with `|G| = n` over the catalog, each assembled and
/// certified. Ordered by catalog index, `|H|`, `u`.
pub fn enumerate_quadruples(n: usize, choice: FieldChoice, dedup: bool) -> Result<Enumeration> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::Precondition(format!("order must be in 1..={MAX_ORDER}")));
    }
    let deduplicated = dedup && n <= DEDUP_LIMIT;
    let mut entries = Vec::new();
    for (catalog_index, g) in groups_of_order(n).into_iter().enumerate() {
        let field = choice.field_for(&g)?;
        for q in quadruples_for_group(&g, &field, deduplicated)? {
            entries.push(CatalogEntry { catalog_index, datum: assemble(&q, &field)? });
        }
    }
    Ok(Enumeration { order: n, deduplicated, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn trivial_rep(g: &FiniteGroup) -> ProjectiveRep {
        let (hg, _) = g.subgroup_as_group(&[g.identity()], "H");
        lift_projective(&hg, &q(), vec![Matrix::identity(1, &q().one())]).unwrap()
    }

    #[test]
    fn invariant_factors_of_sixteen() {
        assert_eq!(invariant_factor_lists(16), vec![vec![16], vec![2, 8], vec![4, 4], vec![2, 2, 4], vec![2, 2, 2, 2]]);
        assert_eq!(invariant_factor_lists(1), vec![vec![1]]);
    }

    #[test]
    fn catalog_counts() {
        let counts: Vec<usize> = (1..=12).map(|n| groups_of_order(n).len()).collect();
        // Z1; Z2; Z3; Z4, V4; Z5; Z6, S3; Z7; three abelian, D4, Q8; Z9, Z3xZ3;
        // Z10, D5; Z11; Z12, Z2xZ6, D6, A4 (the dicyclic group is not built in).
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 4]);
    }

    #[test]
    fn cyclic_order_two() {
        let g = cyclic(2);
        let d = assemble(&Quadruple::new(g.clone(), vec![0], trivial_rep(&g), "trivial", 1).unwrap(), &q()).unwrap();
        assert!(d.passed(), "{}", d.report);
        assert_eq!(d.drinfeld, d.algebra.element(1));
        assert!(is_minimal_datum(&d).unwrap());
    }

    #[test]
    fn pauli_datum_is_minimal() {
        let g = abelian(&[2, 2]);
        let rep = pauli_rep(&q()).unwrap();
        let quad = Quadruple::new(g.clone(), (0..4).collect(), rep, "pauli", 0).unwrap();
        let d = assemble(&quad, &q()).unwrap();
        assert!(d.passed(), "{}", d.report);
        assert!(d.invariants.minimal);
        assert_eq!(d.invariants.center_dimension, 1);
    }

    #[test]
    fn extra_factor_is_not_minimal() {
        let g = abelian(&[2, 2, 2]);
        // (a, b, c) at 4a + 2b + c; H = {(a, b, 0)}.
        let h = vec![0, 2, 4, 6];
        let (hg, _) = g.subgroup_as_group(&h, "H");
        let (a, map) = abelian_structure(&hg);
        let rep = transport(&pauli_rep(&q()).unwrap(), &map, &hg).unwrap();
        assert_eq!(a.factors(), &[2, 2]);
        let d = assemble(&Quadruple::new(g.clone(), h.clone(), rep.clone(), "pauli", 0).unwrap(), &q()).unwrap();
        assert!(d.passed(), "{}", d.report);
        assert!(!is_minimal_datum(&d).unwrap());
        // u outside H completes the group.
        let d = assemble(&Quadruple::new(g, h, rep, "pauli", 1).unwrap(), &q()).unwrap();
        assert!(is_minimal_datum(&d).unwrap());
    }

    #[test]
    fn order_one_and_two() {
        let order_one = enumerate_quadruples(1, FieldChoice::Cyclotomic, true).unwrap();
        assert_eq!(order_one.entries.len(), 1);
        let order_two = enumerate_quadruples(2, FieldChoice::Cyclotomic, true).unwrap();
        assert_eq!(order_two.entries.len(), 2);
        assert!(order_two.entries.iter().all(|e| e.datum.passed()));
        assert!(order_two.entries.iter().all(|e| e.datum.quadruple.subgroup().len() == 1));
    }

    /// Independent count of alternating nondegenerate bicharacters: extend
    /// arbitrary values on a generating set and keep consistent ones.
    fn brute_force_forms(h: &FiniteGroup) -> usize {
        let e = h.exponent() as u64;
        let gens = h.generators();
        let n = h.order();
        let pairs = gens.len() * gens.len();
        let mut count = 0;
        for code in 0..e.pow(pairs as u32) {
            let mut rest = code;
            let mut vals = vec![0u64; pairs];
            for v in vals.iter_mut() {
                *v = rest % e;
                rest /= e;
            }
            // beta(s_i, -) is the character determined by its generator values.
            let mut table = vec![u64::MAX; n * n];
            let mut ok = true;
            for (i, &s) in gens.iter().enumerate() {
                let imgs: Vec<usize> = (0..gens.len()).map(|j| vals[i * gens.len() + j] as usize).collect();
                let target = cyclic(e as u32);
                match h.extend_homomorphism(&gens, &imgs, &target) {
                    Some(chi) => {
                        for y in 0..n {
                            table[s * n + y] = chi[y] as u64;
                        }
                    }
                    None => ok = false,
                }
            }
            if !ok {
                continue;
            }
            // extend in the first variable
            let mut row_of = vec![None; n];
            row_of[h.identity()] = Some(vec![0u64; n]);
            let mut queue = vec![h.identity()];
            while let Some(x) = queue.pop() {
                for &s in &gens {
                    let sx = h.mul(s, x);
                    let row: Vec<u64> =
                        (0..n).map(|y| (table[s * n + y] + row_of[x].as_ref().unwrap()[y]) % e).collect();
                    match &row_of[sx] {
                        None => {
                            row_of[sx] = Some(row);
                            queue.push(sx);
                        }
                        Some(r) if *r != row => ok = false,
                        _ => {}
                    }
                }
            }
            if !ok {
                continue;
            }
            let full: Vec<Vec<u64>> = row_of.into_iter().map(|r| r.unwrap()).collect();
            let alternating = (0..n).all(|x| full[x][x] == 0);
            let nondegenerate = (0..n).filter(|&x| (0..n).all(|y| full[x][y] == 0)).count() == 1;
            if alternating && nondegenerate {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn order_four_matches_bicharacter_oracle() {
        let all = enumerate_quadruples(4, FieldChoice::Cyclotomic, false).unwrap();
        let mut expected = 0;
        for g in groups_of_order(4) {
            let involutions = central_involutions(&g).len();
            for h in g.all_subgroups() {
                let (hg, _) = g.subgroup_as_group(&h, "H");
                let forms = if hg.order() == 1 { 1 } else { brute_force_forms(&hg) };
                expected += forms * involutions;
            }
        }
        assert_eq!(all.entries.len(), expected);
        assert!(all.entries.iter().any(|e| e.datum.quadruple.rep_name() == "pauli" && e.datum.quadruple.u() == 0));
        let dedup = enumerate_quadruples(4, FieldChoice::Cyclotomic, true).unwrap();
        // Z4: u in {e, 2}; V4 with H = e: u = e or not; V4 with Pauli: u = e or not.
        assert_eq!(dedup.entries.len(), 6);
    }

    #[test]
    fn forms_on_three_by_three() {
        let a = AbelianGroup::new(&[3, 3]).unwrap();
        let forms = nondegenerate_alternating_forms(&a);
        assert_eq!(forms.len(), brute_force_forms(&a.as_group()));
        let field = Field::cyclotomic(3).unwrap();
        for beta in &forms {
            let rep = lagrangian_rep(&a, beta, &field).unwrap();
            assert!(is_nondegenerate(rep.cocycle(), &field).unwrap());
        }
    }

    #[test]
    fn cohomology_test_agrees_with_movshev_route() {
        let a = AbelianGroup::new(&[3, 3]).unwrap();
        let field = Field::cyclotomic(3).unwrap();
        let alg = GroupAlgebra::new(a.as_group(), field.clone());
        let reps: Vec<ProjectiveRep> =
            nondegenerate_alternating_forms(&a).iter().map(|beta| lagrangian_rep(&a, beta, &field).unwrap()).collect();
        let movshevs: Vec<_> =
            reps.iter().map(|r| dual_movshev(&alg, &twist_from_rep(&alg, r, 0).unwrap().twist).unwrap()).collect();
        for i in 0..reps.len() {
            for j in 0..reps.len() {
                let by_cocycle = reps[i].equivalent_over_closure(&reps[j]).unwrap();
                let by_algebra = crate::movshev::equivariant_isomorphism(&movshevs[i], &movshevs[j], 0).unwrap().passed();
                assert_eq!(by_cocycle, by_algebra, "forms {i}, {j}");
                assert_eq!(by_cocycle, i == j);
            }
        }
    }

    #[test]
    fn mirror_agrees() {
        let g = abelian(&[2, 2]);
        let quad = Quadruple::new(g, (0..4).collect(), pauli_rep(&q()).unwrap(), "pauli", 3).unwrap();
        let d = assemble(&quad, &q()).unwrap();
        let primes = admissible_primes(&d, 2);
        assert_eq!(primes, vec![5, 7]);
        assert!(char_p_mirror(&d, 3).unwrap().passed());
        for p in primes {
            let report = char_p_mirror(&d, p).unwrap();
            assert!(report.passed(), "{report}");
        }
        assert!(matches!(char_p_mirror(&d, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn finder_inputs_all_have_cocycles() {
        for input in finder_inputs() {
            assert!(!find_bijective_1cocycles(&input.action).unwrap().is_empty(), "{}", input.name);
        }
    }
}
