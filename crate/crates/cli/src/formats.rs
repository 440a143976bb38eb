//! Text exchange formats.
//!
//! Every file is TOML whose first line is `format = "hopf-twist.<kind>/<version>"`.
//! Scalars are exact strings: `(-1/2)*z^3 + (1/3)` over `Q(z_N)`, where `z`
//! is the designated primitive `N`-th root, and `r mod p` over `F_p`.

use std::ops::Range;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use toml::Spanned;
use twist_core::algebra::{GroupAlgebra, Tensor};
use twist_core::constructions::{lift_projective, Bijective1Cocycle, ProjectiveRep};
use twist_core::groups::{AbelianGroup, FiniteGroup, GroupAction};
use twist_core::linalg::Matrix;
use twist_core::report::Report;
use twist_core::scalars::{Field, FieldSpec, Rational, Scalar};

pub const GROUP: &str = "hopf-twist.group/1";
pub const TENSOR: &str = "hopf-twist.tensor/1";
pub const REP: &str = "hopf-twist.rep/1";
pub const COCYCLE: &str = "hopf-twist.cocycle1/1";
pub const COCYCLES: &str = "hopf-twist.cocycle1-list/1";
pub const ACTION: &str = "hopf-twist.action/1";
pub const REPORT: &str = "hopf-twist.report/1";
pub const CLASSIFY: &str = "hopf-twist.classify/1";
pub const CATALOG: &str = "hopf-twist.catalog/1";

/// Source text kept for line numbers in diagnostics.
pub struct Source {
    pub name: String,
    pub text: String,
}

impl Source {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(Source { name: path.display().to_string(), text })
    }

    pub fn from_text(name: &str, text: &str) -> Self {
        Source { name: name.to_string(), text: text.to_string() }
    }

    pub fn line_of(&self, offset: usize) -> usize {
        self.text[..offset.min(self.text.len())].matches('\n').count() + 1
    }

    fn at(&self, span: Range<usize>, what: &str) -> String {
        format!("{}:{}: {what}", self.name, self.line_of(span.start))
    }

    /// Parses the document and checks its `format` header.
    pub fn parse<T: serde::de::DeserializeOwned>(&self, expected: &str) -> Result<T> {
        #[derive(Deserialize)]
        struct Header {
            format: Option<String>,
        }
        let header: Header = toml::from_str(&self.text).map_err(|e| anyhow!("{}: {e}", self.name))?;
        match header.format.as_deref() {
            Some(f) if f == expected => {}
            Some(f) => bail!("{}: expected format \"{expected}\", found \"{f}\"", self.name),
            None => bail!("{}: missing format header", self.name),
        }
        toml::from_str(&self.text).map_err(|e| anyhow!("{}: {e}", self.name))
    }
}

pub fn field_to_string(field: &Field) -> String {
    match field.spec() {
        FieldSpec::Cyclotomic { conductor } => format!("Q(z_{conductor})"),
        FieldSpec::Prime { modulus, root_order } => format!("F_{modulus}(z_{root_order})"),
    }
}

pub fn parse_field(s: &str) -> Result<Field> {
    let s = s.trim();
    let bad = || anyhow!("cannot parse field \"{s}\"; expected Q(z_N) or F_p(z_r)");
    if let Some(rest) = s.strip_prefix("Q(z_").and_then(|r| r.strip_suffix(')')) {
        return Ok(Field::cyclotomic(rest.parse().map_err(|_| bad())?)?);
    }
    if let Some(rest) = s.strip_prefix("F_") {
        let (p, r) = rest.split_once("(z_").ok_or_else(bad)?;
        let r = r.strip_suffix(')').ok_or_else(bad)?;
        return Ok(Field::prime(p.parse().map_err(|_| bad())?, r.parse().map_err(|_| bad())?)?);
    }
    Err(bad())
}

/// `--field` values: `cyclotomic` or `fp:P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldFlag {
    Cyclotomic,
    Prime(u64),
}

impl std::str::FromStr for FieldFlag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "cyclotomic" {
            return Ok(FieldFlag::Cyclotomic);
        }
        s.strip_prefix("fp:")
            .and_then(|p| p.parse().ok())
            .map(FieldFlag::Prime)
            .ok_or_else(|| format!("expected `cyclotomic` or `fp:P`, got `{s}`"))
    }
}

impl FieldFlag {
    /// The field with `N`-th roots of unity this flag selects.
    pub fn with_roots(self, n: u64) -> Result<Field> {
        match self {
            FieldFlag::Cyclotomic => Ok(Field::cyclotomic(n as u32)?),
            FieldFlag::Prime(p) => Field::prime(p, n).with_context(|| format!("F_{p} lacks primitive {n}-th roots of unity")),
        }
    }

    /// Moves a field read from a file: cyclotomic stays, `fp:P` reduces.
    pub fn retarget(self, field: &Field) -> Result<Field> {
        match (self, field.spec()) {
            (FieldFlag::Cyclotomic, FieldSpec::Cyclotomic { .. }) => Ok(field.clone()),
            (FieldFlag::Cyclotomic, _) => bail!("cannot lift {} to characteristic 0", field_to_string(field)),
            (FieldFlag::Prime(p), FieldSpec::Prime { modulus, .. }) if p == modulus => Ok(field.clone()),
            (FieldFlag::Prime(p), FieldSpec::Cyclotomic { conductor }) => self.with_roots(conductor as u64).map_err(|e| anyhow!("fp:{p}: {e}")),
            (FieldFlag::Prime(p), _) => bail!("cannot move {} to F_{p}", field_to_string(field)),
        }
    }
}

pub fn scalar_to_string(s: &Scalar) -> String {
    s.to_string()
}

/// Parses a scalar into `field`; `z` is the field's designated root.
pub fn parse_scalar(text: &str, field: &Field) -> Result<Scalar> {
    let text = text.trim();
    if let Some((r, p)) = text.split_once(" mod ") {
        let p: u64 = p.trim().parse().map_err(|_| anyhow!("bad modulus in \"{text}\""))?;
        if field.characteristic() != p {
            bail!("\"{text}\" is not in {}", field_to_string(field));
        }
        let r: i64 = r.trim().parse().map_err(|_| anyhow!("bad residue in \"{text}\""))?;
        return Ok(field.from_int(r));
    }
    if text == "0" {
        return Ok(field.zero());
    }
    let n = field.root_order();
    let mut acc = field.zero();
    for term in text.split(" + ") {
        let term = term.trim();
        let (coeff, power) = match term.split_once(")*z") {
            Some((c, rest)) => {
                let k = match rest.strip_prefix('^') {
                    Some(k) => k.parse::<i64>().map_err(|_| anyhow!("bad exponent in \"{term}\""))?,
                    None if rest.is_empty() => 1,
                    None => bail!("cannot parse term \"{term}\""),
                };
                (format!("{c})"), k)
            }
            None => (term.to_string(), 0),
        };
        let inner = coeff.strip_prefix('(').and_then(|c| c.strip_suffix(')')).unwrap_or(&coeff);
        let q: Rational = inner.parse().map_err(|_| anyhow!("cannot parse coefficient \"{inner}\""))?;
        let base = match field.characteristic() {
            0 => Scalar::from_rational(q),
            _ => field.reduce(&Scalar::from_rational(q))?,
        };
        let root = if power == 0 { field.one() } else { field.root_of_unity(n, power)? };
        acc = &acc + &(&base * &root);
    }
    Ok(acc)
}

/// Scalars of a cyclotomic field may be stored with a smaller conductor
/// (rationals); anything else must live in the field itself.
fn check_scalar(s: &Scalar, field: &Field) -> Result<()> {
    match field.spec() {
        FieldSpec::Cyclotomic { conductor } if s.as_rational().is_none() && s.conductor() != conductor => {
            bail!("{s} is expressed over Q(z_{}), not {}", s.conductor(), field_to_string(field))
        }
        _ => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub name: String,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl GroupDoc {
    pub fn from_group(g: &FiniteGroup) -> Self {
        let n = g.order();
        let table = (0..n).map(|a| (0..n).map(|b| g.mul(a, b)).collect()).collect();
        GroupDoc { name: g.name().to_string(), labels: g.labels().to_vec(), table }
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        let n = self.table.len();
        if self.labels.len() != n {
            bail!("group {}: {} labels for {n} rows", self.name, self.labels.len());
        }
        if let Some(i) = self.table.iter().position(|r| r.len() != n) {
            bail!("group {}: row {i} has {} entries, expected {n}", self.name, self.table[i].len());
        }
        let flat = self.table.iter().flatten().copied().collect();
        Ok(FiniteGroup::from_table(&self.name, n, flat, self.labels.clone())?)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub format: String,
    #[serde(flatten)]
    pub group: GroupDoc,
}

pub fn write_group(g: &FiniteGroup) -> Result<String> {
    Ok(toml::to_string(&GroupFile { format: GROUP.into(), group: GroupDoc::from_group(g) })?)
}

pub fn read_group(src: &Source) -> Result<FiniteGroup> {
    let f: GroupFile = src.parse(GROUP)?;
    f.group.to_group().with_context(|| src.name.clone())
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TermDoc {
    pub at: Vec<usize>,
    pub value: Spanned<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TensorFile {
    pub format: String,
    pub field: String,
    pub legs: usize,
    pub group: GroupDoc,
    #[serde(default, rename = "term")]
    pub terms: Vec<TermDoc>,
}

/// A tensor together with the group algebra it lives in.
#[derive(Clone, Debug)]
pub struct TensorData {
    pub algebra: GroupAlgebra,
    pub legs: usize,
    pub tensor: Tensor,
}

fn spanned(value: String) -> Spanned<String> {
    Spanned::new(0..0, value)
}

pub fn write_tensor(alg: &GroupAlgebra, t: &Tensor) -> Result<String> {
    let mut terms = Vec::new();
    for (at, c) in t.terms() {
        check_scalar(c, alg.field())?;
        terms.push(TermDoc { at, value: spanned(scalar_to_string(c)) });
    }
    let file = TensorFile {
        format: TENSOR.into(),
        field: field_to_string(alg.field()),
        legs: t.rank(),
        group: GroupDoc::from_group(alg.group()),
        terms,
    };
    Ok(toml::to_string(&file)?)
}

/// Reads a tensor, optionally moving it to another field.
pub fn read_tensor(src: &Source, flag: Option<FieldFlag>) -> Result<TensorData> {
    let f: TensorFile = src.parse(TENSOR)?;
    let field = parse_field(&f.field).with_context(|| src.name.clone())?;
    let group = f.group.to_group().with_context(|| src.name.clone())?;
    let n = group.order();
    let target = match flag {
        Some(flag) => flag.retarget(&field)?,
        None => field.clone(),
    };
    let mut terms = Vec::with_capacity(f.terms.len());
    for t in &f.terms {
        let span = t.value.span();
        if t.at.len() != f.legs || t.at.iter().any(|&i| i >= n) {
            bail!(src.at(span, &format!("index {:?} does not fit {} legs over {} elements", t.at, f.legs, n)));
        }
        let s = parse_scalar(t.value.get_ref(), &field).map_err(|e| anyhow!(src.at(span.clone(), &e.to_string())))?;
        let s = if target == field { s } else { target.reduce(&s).map_err(|e| anyhow!(src.at(span, &e.to_string())))? };
        terms.push((t.at.clone(), s));
    }
    let algebra = GroupAlgebra::new(group, target);
    let tensor = algebra.tensor(f.legs, terms);
    Ok(TensorData { algebra, legs: f.legs, tensor })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub element: String,
    pub rows: Vec<Vec<Spanned<String>>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RepFile {
    pub format: String,
    pub field: String,
    pub dim: usize,
    pub group: GroupDoc,
    #[serde(rename = "matrix")]
    pub matrices: Vec<MatrixDoc>,
}

pub fn write_rep(rep: &ProjectiveRep) -> Result<String> {
    let g = rep.group();
    let mut matrices = Vec::with_capacity(g.order());
    for h in g.elements() {
        let m = rep.matrix(h);
        let mut rows = Vec::with_capacity(m.rows());
        for i in 0..m.rows() {
            let mut row = Vec::with_capacity(m.cols());
            for c in m.row(i) {
                check_scalar(c, rep.field())?;
                row.push(spanned(scalar_to_string(c)));
            }
            rows.push(row);
        }
        matrices.push(MatrixDoc { element: g.label(h).to_string(), rows });
    }
    let file = RepFile {
        format: REP.into(),
        field: field_to_string(rep.field()),
        dim: rep.dim(),
        group: GroupDoc::from_group(g),
        matrices,
    };
    Ok(toml::to_string(&file)?)
}

pub fn read_rep(src: &Source, flag: Option<FieldFlag>) -> Result<ProjectiveRep> {
    let f: RepFile = src.parse(REP)?;
    let field = parse_field(&f.field).with_context(|| src.name.clone())?;
    let target = match flag {
        Some(flag) => flag.retarget(&field)?,
        None => field.clone(),
    };
    let group = f.group.to_group().with_context(|| src.name.clone())?;
    if f.matrices.len() != group.order() {
        bail!("{}: {} matrices for {} group elements", src.name, f.matrices.len(), group.order());
    }
    let mut matrices = Vec::with_capacity(group.order());
    for (h, m) in f.matrices.iter().enumerate() {
        if m.element != group.label(h) {
            bail!("{}: matrix {h} is labelled {}, expected {}", src.name, m.element, group.label(h));
        }
        if m.rows.len() != f.dim || m.rows.iter().any(|r| r.len() != f.dim) {
            bail!("{}: matrix for {} is not {}x{}", src.name, m.element, f.dim, f.dim);
        }
        let mut rows = Vec::with_capacity(f.dim);
        for row in &m.rows {
            let mut out = Vec::with_capacity(f.dim);
            for v in row {
                let s = parse_scalar(v.get_ref(), &field).map_err(|e| anyhow!(src.at(v.span(), &e.to_string())))?;
                out.push(if target == field { s } else { target.reduce(&s)? });
            }
            rows.push(out);
        }
        matrices.push(Matrix::from_rows(rows)?);
    }
    lift_projective(&group, &target, matrices).with_context(|| src.name.clone())
}

/// An action of `G` on `A` by images of the standard generators of `A`
/// under the listed generators of `G`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActionDoc {
    pub generators: Vec<String>,
    pub images: Vec<Vec<Vec<u32>>>,
}

impl ActionDoc {
    pub fn from_action(action: &GroupAction) -> Self {
        let g = action.group();
        let a = action.target();
        let gens = g.generators();
        let images = gens
            .iter()
            .map(|&s| (0..a.rank()).map(|i| a.tuple(action.act(s, a.basis(i)))).collect())
            .collect();
        ActionDoc { generators: gens.iter().map(|&s| g.label(s).to_string()).collect(), images }
    }

    pub fn to_action(&self, g: &FiniteGroup, a: &AbelianGroup) -> Result<GroupAction> {
        let gens = self
            .generators
            .iter()
            .map(|l| element(g, l))
            .collect::<Result<Vec<_>>>()?;
        for imgs in &self.images {
            for t in imgs {
                if t.len() != a.rank() || t.iter().zip(a.factors()).any(|(x, f)| x >= f) {
                    bail!("image {t:?} is not an element of {}", a.name());
                }
            }
        }
        Ok(GroupAction::from_generators(g, a, &gens, &self.images)?)
    }
}

/// An element by label, or by index when no label matches.
pub fn element(g: &FiniteGroup, s: &str) -> Result<usize> {
    if let Some(x) = g.find_label(s) {
        return Ok(x);
    }
    match s.parse::<usize>() {
        Ok(i) if i < g.order() => Ok(i),
        _ => bail!("{} has no element \"{s}\"", g.name()),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ActionFile {
    pub format: String,
    #[serde(flatten)]
    pub action: ActionDoc,
}

pub fn read_action(src: &Source, g: &FiniteGroup, a: &AbelianGroup) -> Result<GroupAction> {
    let f: ActionFile = src.parse(ACTION)?;
    f.action.to_action(g, a).with_context(|| src.name.clone())
}

pub fn write_action(action: &GroupAction) -> Result<String> {
    Ok(toml::to_string(&ActionFile { format: ACTION.into(), action: ActionDoc::from_action(action) })?)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CocycleFile {
    pub format: String,
    pub a: Vec<u32>,
    pub pi: Vec<Vec<u32>>,
    pub group: GroupDoc,
    pub action: ActionDoc,
}

pub fn write_cocycle(data: &Bijective1Cocycle) -> Result<String> {
    let a = data.target();
    let file = CocycleFile {
        format: COCYCLE.into(),
        a: a.factors().to_vec(),
        pi: data.pi().iter().map(|&x| a.tuple(x)).collect(),
        group: GroupDoc::from_group(data.group()),
        action: ActionDoc::from_action(data.action()),
    };
    Ok(toml::to_string(&file)?)
}

fn tuples_to_indices(a: &AbelianGroup, tuples: &[Vec<u32>]) -> Result<Vec<usize>> {
    tuples
        .iter()
        .map(|t| {
            if t.len() != a.rank() || t.iter().zip(a.factors()).any(|(x, f)| x >= f) {
                bail!("{t:?} is not an element of {}", a.name());
            }
            Ok(a.index(t))
        })
        .collect()
}

pub fn read_cocycle(src: &Source) -> Result<Bijective1Cocycle> {
    let f: CocycleFile = src.parse(COCYCLE)?;
    let g = f.group.to_group().with_context(|| src.name.clone())?;
    let a = AbelianGroup::new(&f.a)?;
    let action = f.action.to_action(&g, &a).with_context(|| src.name.clone())?;
    let pi = tuples_to_indices(&a, &f.pi).with_context(|| src.name.clone())?;
    Bijective1Cocycle::new(action, pi).with_context(|| src.name.clone())
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CocycleListFile {
    pub format: String,
    pub a: Vec<u32>,
    pub count: usize,
    pub group: GroupDoc,
    pub action: ActionDoc,
    pub solutions: Vec<Vec<Vec<u32>>>,
}

pub fn write_cocycles(action: &GroupAction, found: &[Bijective1Cocycle]) -> Result<String> {
    let a = action.target();
    let file = CocycleListFile {
        format: COCYCLES.into(),
        a: a.factors().to_vec(),
        count: found.len(),
        group: GroupDoc::from_group(action.group()),
        action: ActionDoc::from_action(action),
        solutions: found.iter().map(|d| d.pi().iter().map(|&x| a.tuple(x)).collect()).collect(),
    };
    Ok(toml::to_string(&file)?)
}

pub fn read_cocycles(src: &Source) -> Result<Vec<Bijective1Cocycle>> {
    let f: CocycleListFile = src.parse(COCYCLES)?;
    let g = f.group.to_group()?;
    let a = AbelianGroup::new(&f.a)?;
    let action = f.action.to_action(&g, &a)?;
    f.solutions
        .iter()
        .map(|s| Ok(Bijective1Cocycle::new(action.clone(), tuples_to_indices(&a, s)?)?))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueDoc {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub format: String,
    pub title: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    #[serde(default, rename = "check")]
    pub checks: Vec<CheckDoc>,
    #[serde(default, rename = "value")]
    pub values: Vec<ValueDoc>,
}

impl ReportFile {
    pub fn from_report(r: &Report) -> Self {
        ReportFile {
            format: REPORT.into(),
            title: r.title.clone(),
            passed: r.passed(),
            first_failure: r.first_failure().map(|c| c.name.clone()),
            checks: r
                .checks
                .iter()
                .map(|c| CheckDoc { name: c.name.clone(), passed: c.passed, detail: c.detail.clone() })
                .collect(),
            values: r.values.iter().map(|(k, v)| ValueDoc { name: k.clone(), value: v.clone() }).collect(),
        }
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new(&self.title);
        for c in &self.checks {
            r.check(&c.name, c.passed, c.detail.clone());
        }
        for v in &self.values {
            r.value(&v.name, &v.value);
        }
        r
    }
}

pub fn write_report(r: &Report) -> Result<String> {
    Ok(toml::to_string(&ReportFile::from_report(r))?)
}

pub fn read_report(src: &Source) -> Result<Report> {
    Ok(src.parse::<ReportFile>(REPORT)?.to_report())
}

/// Appends `text` as `#` comment lines, so the document still parses.
pub fn with_summary(doc: String, text: &str) -> String {
    let mut out = doc;
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out.push('\n');
    for line in text.lines() {
        if line.is_empty() {
            out.push_str("#\n");
        } else {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowDoc {
    pub group: String,
    pub catalog_index: usize,
    pub subgroup: Vec<String>,
    pub subgroup_order: usize,
    pub rep: String,
    pub dim_v: usize,
    pub u: String,
    pub minimal: bool,
    pub grouplikes: usize,
    pub solvable: bool,
    pub leg_rank: usize,
    pub center_dimension: usize,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyFile {
    pub format: String,
    pub order: usize,
    pub field: String,
    pub deduplicated: bool,
    pub passed: bool,
    #[serde(default, rename = "row")]
    pub rows: Vec<RowDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogGroupDoc {
    pub name: String,
    pub order: usize,
    pub abelian: bool,
    pub solvable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub format: String,
    pub max_order: usize,
    #[serde(default, rename = "group")]
    pub groups: Vec<CatalogGroupDoc>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use twist_core::groups::library::{abelian, dihedral};

    #[test]
    fn scalars_round_trip() {
        let f = Field::cyclotomic(8).unwrap();
        let z = f.root_of_unity(8, 1).unwrap();
        let s = &(&z * &z) * &Scalar::from_ratio(-1, 2) + Scalar::from_ratio(1, 3);
        let text = scalar_to_string(&s);
        assert_eq!(parse_scalar(&text, &f).unwrap(), s);
        assert_eq!(parse_scalar("(-1/2)*z^2 + (1/3)", &f).unwrap(), s);
        assert_eq!(parse_scalar("0", &f).unwrap(), f.zero());
        let p = Field::prime(17, 8).unwrap();
        let x = p.from_int(5);
        assert_eq!(parse_scalar(&scalar_to_string(&x), &p).unwrap(), x);
        assert!(parse_scalar("5 mod 13", &p).is_err());
        assert!(parse_scalar("(1/0)", &f).is_err());
    }

    #[test]
    fn fields_round_trip() {
        for f in [Field::cyclotomic(12).unwrap(), Field::prime(13, 4).unwrap(), Field::rationals()] {
            assert_eq!(parse_field(&field_to_string(&f)).unwrap(), f);
        }
        assert!(parse_field("R").is_err());
        assert_eq!("fp:7".parse::<FieldFlag>(), Ok(FieldFlag::Prime(7)));
        assert!("fp:x".parse::<FieldFlag>().is_err());
    }

    #[test]
    fn groups_round_trip() {
        for g in [abelian(&[2, 2]), dihedral(4)] {
            let text = write_group(&g).unwrap();
            assert!(text.starts_with("format = \"hopf-twist.group/1\""));
            let back = read_group(&Source::from_text("g", &text)).unwrap();
            assert_eq!(back, g);
        }
    }

    #[test]
    fn bad_scalar_reports_its_line() {
        let g = abelian(&[2]);
        let alg = GroupAlgebra::new(g, Field::rationals());
        let text = write_tensor(&alg, &alg.unit(2)).unwrap().replace("value = \"(1)\"", "value = \"one\"");
        let err = read_tensor(&Source::from_text("t.toml", &text), None).unwrap_err().to_string();
        let line = text.lines().position(|l| l.contains("\"one\"")).unwrap() + 1;
        assert!(err.starts_with(&format!("t.toml:{line}:")), "{err}");
    }

    #[test]
    fn wrong_header_is_rejected() {
        let text = write_group(&abelian(&[2])).unwrap();
        let err = read_tensor(&Source::from_text("g", &text), None).unwrap_err().to_string();
        assert!(err.contains("expected format"), "{err}");
    }
}
