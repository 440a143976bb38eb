use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use twist_core::algebra::GroupAlgebra;
use twist_core::catalog::{builtin_groups, enumerate_quadruples, FieldChoice, MAX_ORDER};
use twist_core::constructions::{find_bijective_1cocycles, twist_from_1cocycle, twist_from_rep, verify_eq2345};
use twist_core::groups::library::{abelian, alternating, cyclic, dihedral, quaternion, symmetric};
use twist_core::groups::{AbelianGroup, FiniteGroup};
use twist_core::movshev::{
    certify_regular_action, certify_simple, count_grouplikes, dual_movshev, match_projective_rep, trivialize_symmetric_twist,
};
use twist_core::report::Report;
use twist_core::twists::{gauge_transform, leg_ranks, r_matrix, r_u, triangular_structure, twist_report, verify_twist, Twist};

use crate::formats::{self, FieldFlag, Source};

#[derive(Parser, Debug)]
#[command(name = "hopf-twist", version, about = "Exact twists and triangular structures on finite group algebras")]
pub struct Cli {
    /// `cyclotomic` or `fp:P`
    #[arg(long, global = true)]
    pub field: Option<FieldFlag>,
    /// Seed for randomized searches
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the document here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct TwistArgs {
    /// Tensor file holding the twist
    #[arg(long)]
    pub twist: PathBuf,
    /// Central involution `u` (label or index); defaults to the identity
    #[arg(long)]
    pub u: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the twist equations and invertibility
    VerifyTwist {
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long)]
        twist: PathBuf,
    },
    /// Emit `R = J_21^{-1} R_u J` and certify it
    RMatrix(TwistArgs),
    /// Drinfeld element of the triangular structure
    Drinfeld(TwistArgs),
    /// Whether the R-matrix is minimal
    Minimal(TwistArgs),
    /// Certificates on the dual algebra `B_J*`
    Movshev {
        #[arg(long)]
        twist: PathBuf,
        #[arg(long)]
        certify_simple: bool,
        #[arg(long)]
        regular: bool,
        #[arg(long)]
        grouplikes: bool,
    },
    /// Gauge element trivializing a symmetric twist
    Trivialize {
        #[arg(long)]
        twist: PathBuf,
    },
    /// Build a twist from a bijective 1-cocycle or a projective representation
    BuildTwist {
        #[arg(long = "from-1cocycle", conflicts_with = "from_rep", required_unless_present = "from_rep")]
        from_1cocycle: Option<PathBuf>,
        #[arg(long)]
        from_rep: Option<PathBuf>,
    },
    /// Decide whether `B_J*` is equivariantly `End(V)`
    MatchRep {
        #[arg(long)]
        twist: PathBuf,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Enumerate bijective 1-cocycles `G -> A`
    #[command(name = "find-1cocycles")]
    Find1Cocycles {
        /// Group file or built-in name
        #[arg(long = "G")]
        g: String,
        /// Invariant factors of `A`, e.g. `2,2`
        #[arg(long = "A", value_delimiter = ',')]
        a: Vec<u32>,
        /// Action file; trivial action when omitted
        #[arg(long)]
        action: Option<PathBuf>,
        /// Emit only the solution with this index as a cocycle file
        #[arg(long)]
        pick: Option<usize>,
    },
    /// Check the closed forms of the 1-cocycle construction
    #[command(visible_alias = "verify-closed-forms")]
    VerifyEq2345 { data: PathBuf },
    /// Enumerate and certify triangular data with `|G| = N`
    Classify {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        dedup: bool,
    },
    /// Built-in groups
    Catalog {
        #[command(subcommand)]
        what: CatalogCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    List,
}

/// A document plus whether every certificate in it passed.
pub struct Outcome {
    pub document: String,
    pub summary: String,
    pub passed: bool,
}

impl Outcome {
    fn report(r: &Report) -> Result<Self> {
        let summary = r.to_string();
        Ok(Outcome { document: formats::with_summary(formats::write_report(r)?, &summary), summary, passed: r.passed() })
    }

    fn artifact(doc: String, r: &Report) -> Self {
        let summary = r.to_string();
        Outcome { document: formats::with_summary(doc, &summary), summary, passed: r.passed() }
    }
}

/// Parses `argv`, runs the command and writes its document. Exit code 0
/// when every certificate passed, 1 when one failed, 2 on errors.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 2;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match execute(&cli).and_then(|o| deliver(&cli, o, stdout)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            2
        }
    }
}

fn deliver(cli: &Cli, outcome: Outcome, stdout: &mut dyn Write) -> Result<bool> {
    match &cli.out {
        Some(path) => {
            std::fs::write(path, &outcome.document).with_context(|| format!("writing {}", path.display()))?;
            stdout.write_all(outcome.summary.as_bytes())?;
        }
        None => stdout.write_all(outcome.document.as_bytes())?,
    }
    Ok(outcome.passed)
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::VerifyTwist { group, twist } => verify_twist_cmd(cli, group.as_deref(), twist),
        Command::RMatrix(args) => r_matrix_cmd(cli, args),
        Command::Drinfeld(args) => drinfeld_cmd(cli, args),
        Command::Minimal(args) => minimal_cmd(cli, args),
        Command::Movshev { twist, certify_simple, regular, grouplikes } => {
            movshev_cmd(cli, twist, *certify_simple, *regular, *grouplikes)
        }
        Command::Trivialize { twist } => trivialize_cmd(cli, twist),
        Command::BuildTwist { from_1cocycle, from_rep } => build_twist_cmd(cli, from_1cocycle.as_deref(), from_rep.as_deref()),
        Command::MatchRep { twist, rep } => match_rep_cmd(cli, twist, rep),
        Command::Find1Cocycles { g, a, action, pick } => find_cmd(cli, g, a, action.as_deref(), *pick),
        Command::VerifyEq2345 { data } => eq2345_cmd(cli, data),
        Command::Classify { order, dedup } => classify_cmd(cli, *order, *dedup),
        Command::Catalog { what: CatalogCommand::List } => catalog_cmd(),
    }
}

fn load_twist(cli: &Cli, path: &Path) -> Result<(GroupAlgebra, Twist)> {
    let data = formats::read_tensor(&Source::read(path)?, cli.field)?;
    if data.legs != 2 {
        bail!("{}: a twist has 2 legs, found {}", path.display(), data.legs);
    }
    let twist = verify_twist(&data.algebra, &data.tensor).with_context(|| path.display().to_string())?;
    Ok((data.algebra, twist))
}

fn central_u(g: &FiniteGroup, u: Option<&str>) -> Result<usize> {
    let u = match u {
        Some(s) => formats::element(g, s)?,
        None => g.identity(),
    };
    if !g.is_central(u) || g.mul(u, u) != g.identity() {
        bail!("u = {} is not a central element of order at most 2", g.label(u));
    }
    Ok(u)
}

fn verify_twist_cmd(cli: &Cli, group: Option<&Path>, path: &Path) -> Result<Outcome> {
    let data = formats::read_tensor(&Source::read(path)?, cli.field)?;
    if let Some(gp) = group {
        let g = formats::read_group(&Source::read(gp)?)?;
        if g.table() != data.algebra.group().table() {
            bail!("{} and the group embedded in {} have different tables", gp.display(), path.display());
        }
    }
    if data.legs != 2 {
        bail!("{}: a twist has 2 legs, found {}", path.display(), data.legs);
    }
    let (mut report, _) = twist_report(&data.algebra, &data.tensor);
    report.value("group", data.algebra.group().name());
    report.value("field", formats::field_to_string(data.algebra.field()));
    report.value("terms", data.tensor.len());
    Outcome::report(&report)
}

fn r_matrix_cmd(cli: &Cli, args: &TwistArgs) -> Result<Outcome> {
    let (alg, twist) = load_twist(cli, &args.twist)?;
    let u = central_u(alg.group(), args.u.as_deref())?;
    let r = r_matrix(&alg, &r_u(&alg, u)?, &twist)?;
    let ts = triangular_structure(&alg, &twist, r)?;
    Ok(Outcome::artifact(formats::write_tensor(&alg, &ts.r)?, &ts.report))
}

fn drinfeld_cmd(cli: &Cli, args: &TwistArgs) -> Result<Outcome> {
    let (alg, twist) = load_twist(cli, &args.twist)?;
    let u = central_u(alg.group(), args.u.as_deref())?;
    let ts = triangular_structure(&alg, &twist, r_matrix(&alg, &r_u(&alg, u)?, &twist)?)?;
    let mut report = ts.report.clone();
    report.title = "drinfeld".into();
    report.check("equals_u", ts.drinfeld == alg.element(u), ts.drinfeld.render(alg.group().labels()));
    let trace = alg.left_matrix(&ts.drinfeld).trace();
    let expected = if u == alg.group().identity() { alg.scalar(alg.order() as i64) } else { alg.field().zero() };
    report.check("regular_trace", trace == expected, trace.pretty());
    Outcome::report(&report)
}

fn minimal_cmd(cli: &Cli, args: &TwistArgs) -> Result<Outcome> {
    let (alg, twist) = load_twist(cli, &args.twist)?;
    let u = central_u(alg.group(), args.u.as_deref())?;
    let ts = triangular_structure(&alg, &twist, r_matrix(&alg, &r_u(&alg, u)?, &twist)?)?;
    let mut report = Report::new("minimal");
    report.absorb("triangular", &ts.report);
    let (left, right) = leg_ranks(&alg, &ts.r);
    report.value("left_leg_rank", left);
    report.value("right_leg_rank", right);
    report.value("order", alg.order());
    report.value("minimal", left == alg.order() && right == alg.order());
    Outcome::report(&report)
}

fn movshev_cmd(cli: &Cli, path: &Path, simple: bool, regular: bool, grouplikes: bool) -> Result<Outcome> {
    let (alg, twist) = load_twist(cli, path)?;
    let all = !(simple || regular || grouplikes);
    let mut report = Report::new("movshev");
    let m = dual_movshev(&alg, &twist)?;
    report.value("dimension", m.dim());
    if let Some((h, x, y)) = m.action_failure() {
        report.check("action_by_automorphisms", false, format!("{h} {x} {y}"));
    } else {
        report.check("action_by_automorphisms", true, "");
    }
    if all || simple {
        report.absorb("simple", &certify_simple(&m));
    }
    if all || regular {
        report.absorb("regular", &certify_regular_action(&m));
    }
    if all || grouplikes {
        let n = count_grouplikes(&alg, &twist)?;
        report.value("grouplikes", n);
        report.check("grouplike_lower_bound", alg.order() < 2 || n >= 2, format!("{n}"));
    }
    Outcome::report(&report)
}

fn trivialize_cmd(cli: &Cli, path: &Path) -> Result<Outcome> {
    let (alg, twist) = load_twist(cli, path)?;
    let x = trivialize_symmetric_twist(&alg, &twist, cli.seed)?;
    let mut report = Report::new("trivialize");
    let back = gauge_transform(&alg, &Twist::identity(&alg), &x)?;
    report.check("round_trip", back.j() == twist.j(), "");
    report.value("x", x.render(alg.group().labels()));
    Ok(Outcome::artifact(formats::write_tensor(&alg, &x)?, &report))
}

fn build_twist_cmd(cli: &Cli, cocycle: Option<&Path>, rep: Option<&Path>) -> Result<Outcome> {
    let mut report = Report::new("build_twist");
    let (alg, twist) = if let Some(path) = cocycle {
        let data = formats::read_cocycle(&Source::read(path)?)?;
        let field = match cli.field {
            Some(flag) => flag.retarget(&data.default_field())?,
            None => data.default_field(),
        };
        let built = twist_from_1cocycle(&data, &field)?;
        report.value("source", "1-cocycle");
        (built.algebra, built.twist)
    } else {
        let path = rep.ok_or_else(|| anyhow!("one of --from-1cocycle, --from-rep is required"))?;
        let rep = formats::read_rep(&Source::read(path)?, cli.field)?;
        let alg = GroupAlgebra::new(rep.group().clone(), rep.field().clone());
        let built = twist_from_rep(&alg, &rep, cli.seed)?;
        report.value("source", "projective representation");
        report.value("functional_candidate", built.candidate);
        (alg, built.twist)
    };
    let (check, _) = twist_report(&alg, twist.j());
    report.absorb("twist", &check);
    report.value("group", alg.group().name());
    report.value("field", formats::field_to_string(alg.field()));
    report.value("terms", twist.j().len());
    Ok(Outcome::artifact(formats::write_tensor(&alg, twist.j())?, &report))
}

fn match_rep_cmd(cli: &Cli, twist: &Path, rep: &Path) -> Result<Outcome> {
    let (alg, twist) = load_twist(cli, twist)?;
    let rep = formats::read_rep(&Source::read(rep)?, cli.field)?;
    if rep.group().table() != alg.group().table() {
        bail!("the representation and the twist use different groups");
    }
    Outcome::report(&match_projective_rep(&alg, &twist, &rep, cli.seed)?)
}

/// Built-in groups by name, as listed by `catalog list`, plus a few
/// library names.
pub fn builtin_group(name: &str) -> Option<FiniteGroup> {
    if let Some(g) = builtin_groups(MAX_ORDER).into_iter().find(|g| g.name() == name) {
        return Some(g);
    }
    let (head, tail) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
    let n: usize = tail.parse().ok()?;
    match head {
        "Z" => Some(cyclic(n as u32)),
        "D" if n >= 3 => Some(dihedral(n)),
        "S" if n >= 1 => Some(symmetric(n)),
        "A" if n >= 1 => Some(alternating(n)),
        "Q" if n == 8 => Some(quaternion()),
        "V" if n == 4 => Some(abelian(&[2, 2])),
        _ => None,
    }
}

fn group_arg(s: &str) -> Result<FiniteGroup> {
    let path = Path::new(s);
    if path.exists() {
        return formats::read_group(&Source::read(path)?);
    }
    builtin_group(s).ok_or_else(|| anyhow!("\"{s}\" is neither a group file nor a built-in group"))
}

fn find_cmd(cli: &Cli, g: &str, a: &[u32], action: Option<&Path>, pick: Option<usize>) -> Result<Outcome> {
    let g = group_arg(g)?;
    let a = AbelianGroup::new(a)?;
    let action = match action {
        Some(path) => formats::read_action(&Source::read(path)?, &g, &a)?,
        None => twist_core::groups::GroupAction::trivial(&g, &a),
    };
    let _ = cli;
    let found = find_bijective_1cocycles(&action)?;
    let mut report = Report::new("find_1cocycles");
    report.value("G", g.name());
    report.value("A", a.name());
    report.value("count", found.len());
    for (i, d) in found.iter().enumerate() {
        let images: Vec<String> = d.pi().iter().map(|&x| a.label(x)).collect();
        report.value(&format!("pi{i}"), images.join(" "));
    }
    match pick {
        Some(i) => {
            let d = found.get(i).ok_or_else(|| anyhow!("only {} solutions", found.len()))?;
            Ok(Outcome::artifact(formats::write_cocycle(d)?, &report))
        }
        None => Ok(Outcome::artifact(formats::write_cocycles(&action, &found)?, &report)),
    }
}

fn eq2345_cmd(cli: &Cli, path: &Path) -> Result<Outcome> {
    let data = formats::read_cocycle(&Source::read(path)?)?;
    let field = match cli.field {
        Some(flag) => flag.retarget(&data.default_field())?,
        None => data.default_field(),
    };
    Outcome::report(&verify_eq2345(&data, &field)?)
}

fn classify_cmd(cli: &Cli, order: usize, dedup: bool) -> Result<Outcome> {
    let choice = match cli.field {
        None | Some(FieldFlag::Cyclotomic) => FieldChoice::Cyclotomic,
        Some(FieldFlag::Prime(p)) => FieldChoice::Prime(p),
    };
    let e = enumerate_quadruples(order, choice, dedup)?;
    let mut rows = Vec::with_capacity(e.entries.len());
    for entry in &e.entries {
        let d = &entry.datum;
        let q = &d.quadruple;
        let g = q.group();
        rows.push(formats::RowDoc {
            group: g.name().to_string(),
            catalog_index: entry.catalog_index,
            subgroup: q.subgroup().iter().map(|&x| g.label(x).to_string()).collect(),
            subgroup_order: q.subgroup().len(),
            rep: q.rep_name().to_string(),
            dim_v: q.rep().dim(),
            u: g.label(q.u()).to_string(),
            minimal: d.invariants.minimal,
            grouplikes: d.invariants.grouplikes,
            solvable: d.invariants.solvable,
            leg_rank: d.invariants.leg_rank,
            center_dimension: d.invariants.center_dimension,
            passed: d.passed(),
            first_failure: d.report.first_failure().map(|c| c.name.clone()),
        });
    }
    let field = match choice {
        FieldChoice::Cyclotomic => "cyclotomic".to_string(),
        FieldChoice::Prime(p) => format!("fp:{p}"),
    };
    let passed = rows.iter().all(|r| r.passed);
    let file = formats::ClassifyFile { format: formats::CLASSIFY.into(), order, field, deduplicated: e.deduplicated, passed, rows };
    let summary = classify_table(&file);
    let document = formats::with_summary(toml::to_string(&file)?, &summary);
    Ok(Outcome { document, summary, passed })
}

fn classify_table(file: &formats::ClassifyFile) -> String {
    let mut s = format!(
        "order {}: {} data{}\n",
        file.order,
        file.rows.len(),
        if file.deduplicated { " up to automorphisms of G" } else { "" }
    );
    s.push_str(&format!(
        "{:<12} {:>3} {:<22} {:>5} {:<10} {:>7} {:>10} {:>8} {:>6}\n",
        "G", "|H|", "V", "dim V", "u", "minimal", "grouplikes", "solvable", "status"
    ));
    for r in &file.rows {
        s.push_str(&format!(
            "{:<12} {:>3} {:<22} {:>5} {:<10} {:>7} {:>10} {:>8} {:>6}\n",
            r.group,
            r.subgroup_order,
            r.rep,
            r.dim_v,
            r.u,
            r.minimal,
            r.grouplikes,
            r.solvable,
            if r.passed { "ok" } else { "FAIL" }
        ));
    }
    s
}

fn catalog_cmd() -> Result<Outcome> {
    let groups: Vec<formats::CatalogGroupDoc> = builtin_groups(MAX_ORDER)
        .iter()
        .map(|g| formats::CatalogGroupDoc {
            name: g.name().to_string(),
            order: g.order(),
            abelian: g.is_abelian(),
            solvable: g.is_solvable(),
        })
        .collect();
    let mut summary = format!("{} built-in groups of order at most {MAX_ORDER}\n", groups.len());
    for g in &groups {
        summary.push_str(&format!("{:>3} {}\n", g.order, g.name));
    }
    let file = formats::CatalogFile { format: formats::CATALOG.into(), max_order: MAX_ORDER, groups };
    Ok(Outcome { document: formats::with_summary(toml::to_string(&file)?, &summary), summary, passed: true })
}
