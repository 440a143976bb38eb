//! Acceptance battery. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits non-zero on failure.

use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use twist_core::algebra::{GroupAlgebra, StructureConstantAlgebra, Tensor};
use twist_core::catalog::{
    admissible_primes, char_p_mirror, enumerate_quadruples, finder_data, is_minimal_datum, CatalogEntry, FieldChoice,
};
use twist_core::constructions::{
    heisenberg_rep, pauli_rep, twist_from_1cocycle, twist_from_rep, twist_from_rep_nth, verify_eq2345, Bijective1Cocycle,
};
use twist_core::groups::library::{abelian, cyclic};
use twist_core::groups::{AbelianGroup, GroupAction};
use twist_core::linalg::Matrix;
use twist_core::movshev::{count_grouplikes, dual_movshev, equivariant_isomorphism, trivialize_symmetric_twist};
use twist_core::twists::{
    gauge_transform, r_matrix, triangular_structure, verify_minimal, verify_twist, TriangularStructure, Twist,
};
use twist_core::{Field, Scalar};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

/// A named twist on a group algebra together with where it came from.
struct Case {
    name: String,
    alg: GroupAlgebra,
    twist: Twist,
    /// Set for twists built from a bijective 1-cocycle.
    cocycle: Option<(Bijective1Cocycle, Field)>,
    /// `R = J_21^{-1} J` with its certificates.
    triangular: Option<Result<TriangularStructure, String>>,
}

fn identity_cocycle(n: u32) -> Bijective1Cocycle {
    let action = GroupAction::trivial(&cyclic(n), &AbelianGroup::cyclic(n));
    Bijective1Cocycle::new(action, (0..n as usize).collect()).expect("identity is a bijective 1-cocycle")
}

fn cocycle_case(name: String, data: Bijective1Cocycle, field: Field) -> Result<Case, String> {
    let built = ok(twist_from_1cocycle(&data, &field), &name)?;
    Ok(Case { name, alg: built.algebra, twist: built.twist, cocycle: Some((data, field)), triangular: None })
}

/// The identity 1-cocycles of `Z_n` for n = 2..6, the Pauli twist and every finder datum with `|G| <= 8`.
fn cases() -> Result<Vec<Case>, String> {
    let mut out = Vec::new();
    out.push(cocycle_case("Z2 identity".into(), identity_cocycle(2), Field::rationals())?);
    for n in 3..=6 {
        out.push(cocycle_case(format!("Z{n} identity"), identity_cocycle(n), ok(Field::cyclotomic(n), "field")?)?);
    }
    let q = Field::rationals();
    let alg = GroupAlgebra::new(abelian(&[2, 2]), q.clone());
    let rep = ok(pauli_rep(&q), "pauli")?;
    let twist = ok(twist_from_rep(&alg, &rep, 0), "pauli twist")?.twist;
    out.push(Case { name: "Pauli".into(), alg, twist, cocycle: None, triangular: None });
    for (name, data) in ok(finder_data(), "finder")? {
        if data.group().order() <= 8 {
            let field = data.default_field();
            out.push(cocycle_case(name, data, field)?);
        }
    }
    attach_triangular(&mut out);
    Ok(out)
}

/// The hexagon checks dominate the run time, so the structures are built
/// once and spread over the available cores.
fn attach_triangular(cases: &mut [Case]) {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let next = std::sync::atomic::AtomicUsize::new(0);
    let built: Vec<(usize, Result<TriangularStructure, String>)> = std::thread::scope(|scope| {
        let workers: Vec<_> = (0..threads)
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        let Some(c) = cases.get(i) else { break };
                        let ts = r_matrix(&c.alg, &c.alg.unit(2), &c.twist)
                            .and_then(|r| triangular_structure(&c.alg, &c.twist, r))
                            .map_err(|e| format!("{}: {e}", c.name));
                        done.push((i, ts));
                    }
                    done
                })
            })
            .collect();
        workers.into_iter().flat_map(|w| w.join().expect("worker panicked")).collect()
    });
    for (i, ts) in built {
        cases[i].triangular = Some(ts);
    }
}

fn triangular(c: &Case) -> Result<&TriangularStructure, String> {
    c.triangular.as_ref().expect("attached in setup").as_ref().map_err(Clone::clone)
}

/// `(Δ ⊗ id)(J)(J ⊗ 1) = (id ⊗ Δ)(J)(1 ⊗ J)` and `(ε ⊗ id)J = (id ⊗ ε)J = 1`,
/// evaluated leg by leg.
fn twist_equations_hold(alg: &GroupAlgebra, j: &Tensor) -> bool {
    let j12 = alg.embed(j, &[0, 1], 3).unwrap();
    let j23 = alg.embed(j, &[1, 2], 3).unwrap();
    let lhs = alg.mul_unchecked(&alg.coproduct_leg(j, 0), &j12);
    let rhs = alg.mul_unchecked(&alg.coproduct_leg(j, 1), &j23);
    lhs == rhs && alg.counit_leg(j, 0) == alg.unit(1) && alg.counit_leg(j, 1) == alg.unit(1)
}

/// The identity 1-cocycle of `Z_n` must give `n⁻¹ Σ ζ_n^{gb} b⊗g`, which for
/// `n = 2` is `½(1⊗1 + 1⊗g + b⊗1 − b⊗g)`,
/// with `b` in `A*` and `g` in `G`.
fn closed_form(case: &Case) -> Option<Tensor> {
    let (data, field) = case.cocycle.as_ref()?;
    let n = data.target().order();
    if !case.name.ends_with(" identity") {
        return None;
    }
    let sp = twist_core::constructions::semidirect_for(data);
    let inv = field.from_int(n as i64).inv().unwrap();
    let mut terms = Vec::new();
    for b in 0..n {
        for g in 0..n {
            let z = field.root_of_unity(n as u64, (g * b) as i64).unwrap();
            terms.push((vec![sp.embed_normal(b), sp.embed_acting(g)], &z * &inv));
        }
    }
    Some(case.alg.tensor(2, terms))
}

fn criterion_1(cases: &[Case]) -> Outcome {
    let mut closed = 0;
    for c in cases {
        ensure!(verify_twist(&c.alg, c.twist.j()).is_ok(), "{}: verify_twist failed", c.name);
        ensure!(twist_equations_hold(&c.alg, c.twist.j()), "{}: leg-by-leg evaluation disagrees", c.name);
        if let Some(expected) = closed_form(c) {
            ensure!(expected == *c.twist.j(), "{}: differs from its closed form", c.name);
            closed += 1;
        }
    }
    Ok(format!("{} twists, {closed} matched closed forms", cases.len()))
}

fn criterion_2(cases: &[Case]) -> Outcome {
    for c in cases {
        let ts = triangular(c)?;
        let r = &ts.r;
        for axiom in ["invertible", "quasitriangular", "hexagon_left", "hexagon_right", "symmetric"] {
            let check = ts.report.check_named(axiom).ok_or_else(|| format!("{}: no {axiom} check", c.name))?;
            ensure!(check.passed, "{}: {axiom} fails: {}", c.name, check.detail);
        }
        let r21r = c.alg.mul_unchecked(&c.alg.flip(r), r);
        ensure!(r21r == c.alg.unit(2), "{}: R21 R != 1⊗1", c.name);
    }
    Ok(format!("{} R-matrices triangular", cases.len()))
}

fn regular_trace(alg: &GroupAlgebra, x: &Tensor) -> Scalar {
    // coefficient of e in x, times |G|
    &x.coefficient(&[alg.group().identity()]) * &alg.scalar(alg.order() as i64)
}

fn criterion_3(cases: &[Case], entries: &[CatalogEntry]) -> Outcome {
    for c in cases {
        let ts = triangular(c)?;
        ensure!(ts.drinfeld == c.alg.unit(1), "{}: u = {}", c.name, ts.drinfeld.render(c.alg.group().labels()));
        let trace = c.alg.left_matrix(&ts.drinfeld).trace();
        ensure!(trace == c.alg.scalar(c.alg.order() as i64), "{}: regular trace {}", c.name, trace);
        ensure!(trace == regular_trace(&c.alg, &ts.drinfeld), "{}: trace oracle disagrees", c.name);
    }
    let mut nontrivial = 0;
    for e in entries {
        let d = &e.datum;
        let (alg, u) = (&d.algebra, d.quadruple.u());
        ensure!(d.drinfeld == alg.element(u), "{}: Drinfeld element is not u", d.quadruple.describe());
        let trace = alg.left_matrix(&d.drinfeld).trace();
        ensure!(trace == regular_trace(alg, &d.drinfeld), "{}: trace oracle disagrees", d.quadruple.describe());
        if u != alg.group().identity() {
            nontrivial += 1;
        }
    }
    Ok(format!("u = e on {} twists; u recovered on {nontrivial} data with u != e", cases.len()))
}

fn criterion_4(cases: &[Case]) -> Outcome {
    let mut n = 0;
    for c in cases {
        if let Some((data, field)) = &c.cocycle {
            let report = ok(verify_eq2345(data, field), &c.name)?;
            ensure!(report.passed(), "{}: {}", c.name, report);
            n += 1;
        }
    }
    Ok(format!("{n} data"))
}

/// Dimension of `{z : zx = xz for all basis x}`, solved directly.
fn center_dimension(a: &StructureConstantAlgebra) -> usize {
    let n = a.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for out in 0..n {
            rows.push(
                (0..n)
                    .map(|k| {
                        let ki = a.product_vector(k, i);
                        let ik = a.product_vector(i, k);
                        &ki[out] - &ik[out]
                    })
                    .collect(),
            );
        }
    }
    let m = Matrix::from_rows(rows).unwrap();
    n - m.rank()
}

fn movshev_certified(name: &str, alg: &GroupAlgebra, twist: &Twist) -> Result<(), String> {
    let m = ok(dual_movshev(alg, twist), name)?;
    ensure!(m.algebra().center_dimension() == 1, "{name}: center dimension {}", m.algebra().center_dimension());
    ensure!(center_dimension(m.algebra()) == 1, "{name}: direct center computation disagrees");
    let n = alg.order() as i64;
    for h in alg.group().elements() {
        let t = m.action_matrix(h).trace();
        let expected = if h == alg.group().identity() { alg.scalar(n) } else { alg.field().zero() };
        ensure!(t == expected, "{name}: trace at {} is {t}", alg.group().label(h));
    }
    Ok(())
}

fn criterion_5(cases: &[Case], entries: &[CatalogEntry]) -> Outcome {
    let mut n = 0;
    for c in cases {
        ensure!(verify_minimal(&c.alg, &triangular(c)?.r), "{}: not minimal", c.name);
        movshev_certified(&c.name, &c.alg, &c.twist)?;
        n += 1;
    }
    for e in entries {
        let d = &e.datum;
        let alg_h = GroupAlgebra::new(d.quadruple.subgroup_group().clone(), d.field.clone());
        movshev_certified(&d.quadruple.describe(), &alg_h, &d.subgroup_twist)?;
        n += 1;
    }
    Ok(format!("{n} minimal twists"))
}

fn random_unit(alg: &GroupAlgebra, rng: &mut ChaCha8Rng) -> Tensor {
    loop {
        let terms = alg.group().elements().map(|g| (vec![g], alg.scalar((rng.next_u32() % 7) as i64 - 3)));
        let x = alg.tensor(1, terms);
        if alg.counit(&x).is_zero() {
            continue;
        }
        if alg.invert(&x).is_ok() {
            return x;
        }
    }
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    for (name, alg) in [
        ("Z2xZ2", GroupAlgebra::new(abelian(&[2, 2]), Field::rationals())),
        ("Z3xZ3", GroupAlgebra::new(abelian(&[3, 3]), Field::rationals())),
    ] {
        let mut successes = 0;
        for seed in 0..50u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x0 = random_unit(&alg, &mut rng);
            let j = ok(gauge_transform(&alg, &Twist::identity(&alg), &x0), "gauge")?;
            let x = ok(trivialize_symmetric_twist(&alg, &j, seed), &format!("{name} seed {seed}"))?;
            let back = ok(gauge_transform(&alg, &Twist::identity(&alg), &x), "gauge")?;
            if back.j() == j.j() {
                successes += 1;
            }
        }
        ensure!(successes == 50, "{name}: {successes}/50");
        parts.push(format!("{name} {successes}/50"));
    }
    Ok(parts.join(", "))
}

fn criterion_7(entries: &[CatalogEntry]) -> Outcome {
    let mut minimal = 0;
    for e in entries {
        let d = &e.datum;
        let m = ok(is_minimal_datum(d), &d.quadruple.describe())?;
        let generated = d.quadruple.minimal_part().len() == d.quadruple.group().order();
        ensure!(m == generated && m == verify_minimal(&d.algebra, &d.r), "{}: criteria disagree", d.quadruple.describe());
        minimal += m as usize;
    }
    Ok(format!("{} quadruples agree, {minimal} minimal", entries.len()))
}

fn criterion_8(cases: &[Case], entries: &[CatalogEntry]) -> Outcome {
    let mut n = 0;
    for c in cases {
        let k = ok(count_grouplikes(&c.alg, &c.twist), &c.name)?;
        ensure!(k >= 2, "{}: {k} grouplikes", c.name);
        n += 1;
    }
    for e in entries {
        let d = &e.datum;
        if d.quadruple.group().order() >= 2 {
            ensure!(d.invariants.grouplikes >= 2, "{}: {} grouplikes", d.quadruple.describe(), d.invariants.grouplikes);
            n += 1;
        }
    }
    let mut trivial = 0;
    for g in [cyclic(2), cyclic(6), abelian(&[2, 2]), twist_core::groups::library::symmetric(3), twist_core::groups::library::dihedral(4)] {
        let alg = GroupAlgebra::new(g, Field::rationals());
        let k = ok(count_grouplikes(&alg, &Twist::identity(&alg)), "identity")?;
        ensure!(k == alg.order(), "{}: J = 1 has {k} grouplikes", alg.group().name());
        trivial += 1;
    }
    Ok(format!("{n} twisted algebras with >= 2 grouplikes; |G| for J = 1 on {trivial} groups"))
}

fn criterion_9(entries: &[CatalogEntry]) -> Outcome {
    for e in entries {
        let q = &e.datum.quadruple;
        let (part, _) = q.group().subgroup_as_group(&q.minimal_part(), "<H,u>");
        ensure!(part.is_solvable() && e.datum.invariants.solvable, "{}: minimal part not solvable", q.describe());
    }
    Ok(format!("{} data", entries.len()))
}

fn criterion_10(entries: &[CatalogEntry]) -> Outcome {
    let mut runs = 0;
    for e in entries {
        let d = &e.datum;
        let primes = admissible_primes(d, 2);
        ensure!(primes.len() == 2, "{}: fewer than two primes", d.quadruple.describe());
        for p in primes {
            let report = ok(char_p_mirror(d, p), &format!("{} at p = {p}", d.quadruple.describe()))?;
            ensure!(report.passed(), "{} at p = {p}: {report}", d.quadruple.describe());
            runs += 1;
        }
    }
    Ok(format!("{runs} mirrors over {} data", entries.len()))
}

fn criterion_11() -> Outcome {
    let mut n = 0;
    for (name, data) in ok(finder_data(), "finder")? {
        if data.group().order() > 4 {
            continue;
        }
        let field = data.default_field();
        let built = ok(twist_from_1cocycle(&data, &field), &name)?;
        let rep = ok(heisenberg_rep(&data, &field), &name)?;
        let from_rep = ok(twist_from_rep(&built.algebra, &rep, 0), &name)?;
        let m1 = ok(dual_movshev(&built.algebra, &built.twist), &name)?;
        let m2 = ok(dual_movshev(&built.algebra, &from_rep.twist), &name)?;
        let report = ok(equivariant_isomorphism(&m1, &m2, 0), &name)?;
        ensure!(report.passed(), "{name}: {report}");
        n += 1;
    }
    Ok(format!("{n} data"))
}

fn criterion_12() -> Outcome {
    let q = Field::rationals();
    let alg = GroupAlgebra::new(abelian(&[2, 2]), q.clone());
    let rep = ok(pauli_rep(&q), "pauli")?;
    let first = ok(twist_from_rep_nth(&alg, &rep, 0, 0), "first λ")?;
    let mut compared = Vec::new();
    for skip in 1..=3 {
        let other = ok(twist_from_rep_nth(&alg, &rep, 0, skip), "other λ")?;
        ensure!(other.functional != first.functional, "λ choices coincide");
        let m1 = ok(dual_movshev(&alg, &first.twist), "movshev")?;
        let m2 = ok(dual_movshev(&alg, &other.twist), "movshev")?;
        let report = ok(equivariant_isomorphism(&m1, &m2, 0), "isomorphism")?;
        ensure!(report.passed(), "candidate {}: {report}", other.candidate);
        compared.push(other.candidate.to_string());
    }
    Ok(format!("candidate {} against {}", first.candidate, compared.join(", ")))
}

fn main() {
    let start = Instant::now();
    let cases = match cases() {
        Ok(c) => c,
        Err(e) => {
            println!("setup failed: {e}");
            std::process::exit(1);
        }
    };
    let mut entries = Vec::new();
    let mut setup = Ok(());
    for n in 1..=16 {
        match enumerate_quadruples(n, FieldChoice::Cyclotomic, true) {
            Ok(e) => entries.extend(e.entries),
            Err(e) => setup = Err(format!("enumeration at order {n}: {e}")),
        }
    }
    let enumerated = |f: &dyn Fn(&[CatalogEntry]) -> Outcome| match &setup {
        Ok(()) => f(&entries),
        Err(e) => Err(e.clone()),
    };

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("twist axioms", Box::new(|| criterion_1(&cases))),
        ("triangularity", Box::new(|| criterion_2(&cases))),
        ("Drinfeld element", Box::new(|| enumerated(&|e| criterion_3(&cases, e)))),
        ("1-cocycle closed forms", Box::new(|| criterion_4(&cases))),
        ("Movshev certificates", Box::new(|| enumerated(&|e| criterion_5(&cases, e)))),
        ("symmetric-twist trivialization", Box::new(criterion_6)),
        ("minimality criteria", Box::new(|| enumerated(&criterion_7))),
        ("grouplike existence", Box::new(|| enumerated(&|e| criterion_8(&cases, e)))),
        ("solvability", Box::new(|| enumerated(&criterion_9))),
        ("characteristic p mirror", Box::new(|| enumerated(&criterion_10))),
        ("two constructions agree", Box::new(criterion_11)),
        ("functional independence", Box::new(criterion_12)),
    ];
    println!("setup: {} twists, {} enumerated data in {:.1?}", cases.len(), entries.len(), start.elapsed());
    let results: Vec<(&str, Outcome, std::time::Duration)> = criteria
        .into_iter()
        .map(|(name, f)| {
            let t = Instant::now();
            let outcome = f();
            (name, outcome, t.elapsed())
        })
        .collect();
    let mut failed = 0;
    for (i, (name, outcome, took)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}) [{took:.1?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why}) [{took:.1?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1?}", results.len() - failed, results.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
