//! Command line surface: JSON input documents, JSON reports, and one library
//! call per subcommand.
//!
//! Exit codes: 0 on success, 1 when a certificate fails, 2 on bad input.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::bar::{bar_homology, fundamental_group_bialgebra, BarHopf, TwoSidedBar};
use crate::bigraded::{Bidegree, HomologyReport, TateKind, Window};
use crate::cosimplicial::{
    check_grouplike, check_identities, check_segal, check_unit_level, tot, Level, Scope,
    TruncatedCosimplicial,
};
use crate::dga::{DgaModule, DgaPresentation, GradedBasis};
use crate::gm::{gm_cohomology, windowed_normalized};
use crate::lincomb::{add_term, koszul, reduce, Lin};
use crate::linalg::{AbGroupReport, CoefficientRing};
use crate::nerve::{level_profile, BialgebraNerve, SemidirectGm};
use crate::resolutions::{audit, resolve, tor, BigradedRing};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {message}")]
    Document { path: String, message: String },
    #[error("cannot read {0}: {1}")]
    Io(PathBuf, String),
    #[error("{0}")]
    Invalid(String),
}

fn at(path: impl Into<String>, message: impl ToString) -> InputError {
    InputError::Document { path: path.into(), message: message.to_string() }
}

fn invalid(e: impl ToString) -> InputError {
    InputError::Invalid(e.to_string())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub name: String,
    pub adams: i64,
    pub coh: i64,
}

type LinDoc = BTreeMap<String, i64>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDoc {
    pub left: String,
    pub right: String,
    pub result: LinDoc,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub algebra: String,
    pub element: String,
    pub result: LinDoc,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDocument {
    pub generators: Vec<ElementDoc>,
    #[serde(default)]
    pub differential: BTreeMap<String, LinDoc>,
    #[serde(default)]
    pub action: Vec<ActionDoc>,
    #[serde(default)]
    pub adams_floor: Option<i64>,
}

/// An algebra by structure constants on a named basis. Products not listed
/// are zero unless the reversed product is listed, in which case graded
/// commutativity fills them in; products with the unit are implied.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub ring: String,
    pub generators: Vec<ElementDoc>,
    #[serde(default)]
    pub unit: Option<String>,
    #[serde(default)]
    pub differential: BTreeMap<String, LinDoc>,
    #[serde(default)]
    pub products: Vec<ProductDoc>,
    #[serde(default)]
    pub augmentation: Option<LinDoc>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDocument>,
    #[serde(default)]
    pub adams_floor: Option<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelDoc {
    pub generators: Vec<ElementDoc>,
    #[serde(default)]
    pub differential: BTreeMap<String, LinDoc>,
}

/// A truncated cosimplicial complex: `cofaces[n][i]` maps level `n` to
/// `n + 1`, `codegeneracies[n−1][j]` maps level `n` to `n − 1`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosimplicialDocument {
    pub ring: String,
    pub levels: Vec<LevelDoc>,
    pub cofaces: Vec<Vec<BTreeMap<String, LinDoc>>>,
    pub codegeneracies: Vec<Vec<BTreeMap<String, LinDoc>>>,
    #[serde(default)]
    pub adams_floor: Option<i64>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        at(if path == "." { "document".to_string() } else { path }, e.into_inner())
    })
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::Io(path.to_path_buf(), e.to_string()))
}

struct Names<'a> {
    names: &'a [String],
    field: String,
}

impl Names<'_> {
    fn index(&self, name: &str, path: &str) -> Result<usize, InputError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| {
                let sep = if path.starts_with('[') || path.is_empty() { "" } else { "." };
                at(format!("{}{sep}{path}", self.field), format!("unknown element `{name}`"))
            })
    }

    fn lin(&self, ring: CoefficientRing, doc: &LinDoc, path: &str) -> Result<Lin<usize>, InputError> {
        let mut out = Lin::new();
        for (n, c) in doc {
            add_term(&mut out, self.index(n, &format!("{path}.{n}"))?, BigInt::from(*c));
        }
        Ok(reduce(ring, out))
    }
}

fn basis(field: &str, generators: &[ElementDoc]) -> Result<GradedBasis, InputError> {
    let mut seen = std::collections::BTreeSet::new();
    for (i, g) in generators.iter().enumerate() {
        if !seen.insert(&g.name) {
            return Err(at(format!("{field}[{i}].name"), format!("duplicate name `{}`", g.name)));
        }
    }
    Ok(GradedBasis::new(generators.iter().map(|g| (g.name.clone(), Bidegree::new(g.adams, g.coh))).collect()))
}

fn differential(
    ring: CoefficientRing,
    names: &Names<'_>,
    doc: &BTreeMap<String, LinDoc>,
    len: usize,
) -> Result<Vec<Lin<usize>>, InputError> {
    let mut d = vec![Lin::new(); len];
    for (src, terms) in doc {
        d[names.index(src, src)?] = names.lin(ring, terms, src)?;
    }
    Ok(d)
}

impl AlgebraDocument {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        parse_json(text)
    }

    pub fn presentation(&self) -> Result<DgaPresentation, InputError> {
        let ring: CoefficientRing = self.ring.parse().map_err(|e| at("ring", e))?;
        let basis = basis("generators", &self.generators)?;
        let names = Names { names: &basis.names, field: "generators".into() };
        let unit = match &self.unit {
            Some(u) => names.index(u, "").map_err(|_| at("unit", format!("unknown element `{u}`")))?,
            None => basis
                .degrees
                .iter()
                .position(|b| *b == Bidegree::ZERO)
                .ok_or_else(|| at("unit", "no element in bidegree (0,0)"))?,
        };
        let dnames = Names { names: &basis.names, field: "differential".into() };
        let differential = differential(ring, &dnames, &self.differential, basis.len())?;
        let pnames = Names { names: &basis.names, field: "products".into() };
        let mut products = BTreeMap::new();
        for (i, p) in self.products.iter().enumerate() {
            let a = pnames.index(&p.left, &format!("[{i}].left"))?;
            let b = pnames.index(&p.right, &format!("[{i}].right"))?;
            let v = pnames.lin(ring, &p.result, &format!("[{i}].result"))?;
            products.insert((a, b), v);
        }
        for ((a, b), v) in products.clone() {
            if let std::collections::btree_map::Entry::Vacant(e) = products.entry((b, a)) {
                let s = koszul(basis.degrees[a].coh, basis.degrees[b].coh);
                e.insert(reduce(ring, v.into_iter().map(|(k, c)| (k, c * &s)).collect()));
            }
        }
        products.retain(|(a, b), v| *a != unit && *b != unit && !v.is_empty());
        let mut augmentation = vec![BigInt::from(0); basis.len()];
        match &self.augmentation {
            Some(doc) => {
                let anames = Names { names: &basis.names, field: "augmentation".into() };
                for (n, c) in doc {
                    augmentation[anames.index(n, n)?] = BigInt::from(*c);
                }
            }
            None => augmentation[unit] = BigInt::from(1),
        }
        let alg = DgaPresentation {
            ring,
            basis,
            unit,
            differential,
            products,
            augmentation,
            adams_floor: self.adams_floor,
        };
        alg.validate().map_err(|e| at("document", e))?;
        Ok(alg)
    }

    /// A named module section, or `unit` / `free` for the built-in ones.
    pub fn module(&self, alg: &DgaPresentation, name: &str) -> Result<DgaModule, InputError> {
        let doc = match (name, self.modules.get(name)) {
            (_, Some(doc)) => doc,
            ("unit", None) => return Ok(DgaModule::trivial(alg)),
            ("free", None) => return Ok(DgaModule::free(alg)),
            _ => return Err(at("modules", format!("no module named `{name}`"))),
        };
        let field = format!("modules.{name}");
        let basis = basis(&format!("{field}.generators"), &doc.generators)?;
        let names = Names { names: &basis.names, field: format!("{field}.differential") };
        let differential = differential(alg.ring, &names, &doc.differential, basis.len())?;
        let mnames = Names { names: &basis.names, field: format!("{field}.action") };
        let anames = Names { names: &alg.basis.names, field: format!("{field}.action") };
        let mut action = BTreeMap::new();
        for (i, a) in doc.action.iter().enumerate() {
            let x = anames.index(&a.algebra, &format!("[{i}].algebra"))?;
            let m = mnames.index(&a.element, &format!("[{i}].element"))?;
            let v = mnames.lin(alg.ring, &a.result, &format!("[{i}].result"))?;
            if x != alg.unit && !v.is_empty() {
                action.insert((x, m), v);
            }
        }
        let m = DgaModule { ring: alg.ring, basis, differential, action, adams_floor: doc.adams_floor };
        m.validate(alg).map_err(|e| at(field, e))?;
        Ok(m)
    }
}

impl CosimplicialDocument {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        parse_json(text)
    }

    pub fn object(&self) -> Result<TruncatedCosimplicial, InputError> {
        let ring: CoefficientRing = self.ring.parse().map_err(|e| at("ring", e))?;
        if self.levels.is_empty() {
            return Err(at("levels", "at least one level is required"));
        }
        let top = self.levels.len() - 1;
        if self.cofaces.len() != top || self.codegeneracies.len() != top {
            return Err(at("cofaces", format!("expected {top} coface and codegeneracy levels")));
        }
        let mut levels = Vec::new();
        for (n, l) in self.levels.iter().enumerate() {
            let b = basis(&format!("levels[{n}].generators"), &l.generators)?;
            let names = Names { names: &b.names, field: format!("levels[{n}].differential") };
            let d = differential(ring, &names, &l.differential, b.len())?;
            levels.push(Level { names: b.names, degrees: b.degrees, differential: d });
        }
        let maps = |field: &str, n: usize, target: usize, docs: &[BTreeMap<String, LinDoc>], count: usize| {
            if docs.len() != count {
                return Err(at(format!("{field}[{n}]"), format!("expected {count} maps")));
            }
            let mut out = Vec::new();
            for (i, doc) in docs.iter().enumerate() {
                let src = Names { names: &levels[n].names, field: format!("{field}[{n}][{i}]") };
                let tgt = Names { names: &levels[target].names, field: format!("{field}[{n}][{i}]") };
                let mut images = vec![Lin::new(); levels[n].names.len()];
                for (k, v) in doc {
                    images[src.index(k, k)?] = tgt.lin(ring, v, k)?;
                }
                out.push(images);
            }
            Ok(out)
        };
        let mut cofaces = Vec::new();
        for n in 0..top {
            cofaces.push(maps("cofaces", n, n + 1, &self.cofaces[n], n + 2)?);
        }
        let mut codegeneracies = vec![Vec::new()];
        for n in 1..=top {
            let m = maps("codegeneracies", n, n - 1, &self.codegeneracies[n - 1], n)?;
            codegeneracies.push(m);
        }
        let x = TruncatedCosimplicial { ring, levels, cofaces, codegeneracies, adams_floor: self.adams_floor };
        let (lo, hi) = x
            .levels
            .iter()
            .flat_map(|l| l.degrees.iter().map(|b| b.adams))
            .fold((0, 0), |(lo, hi), a| (lo.min(a), hi.max(a)));
        let report = check_identities(&x, &Scope::new(top, lo, hi, 0));
        if let Some(c) = report.checks.iter().find(|c| !c.holds) {
            return Err(at("document", format!("{} fails at {}", c.identity, c.witness.clone().unwrap_or_default())));
        }
        Ok(x)
    }
}

#[derive(Debug, Parser)]
#[command(name = "adams-hopf", version, about = "Exact Adams-graded homological algebra")]
pub struct Cli {
    /// Worker threads for per-bidegree computations.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tate-type certificate of an algebra.
    CheckTate {
        file: PathBuf,
        #[arg(long)]
        window: Window,
    },
    /// Homology of the bar construction B(1, A, 1).
    BarHomology {
        file: PathBuf,
        #[arg(long)]
        window: Window,
        #[arg(long)]
        max_column: usize,
    },
    /// The bar bialgebra with its Hopf axiom certificates.
    FundamentalGroup {
        file: PathBuf,
        #[arg(long)]
        window: Window,
    },
    /// Derived group scheme conditions for the nerve of the bar bialgebra.
    Cech {
        file: PathBuf,
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        window: Window,
        #[arg(long, value_delimiter = ',', default_value = "segal,grouplike,unit")]
        check: Vec<CechCheck>,
    },
    /// The semidirect product of the bar nerve with Gm.
    Semidirect {
        file: PathBuf,
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        window: Window,
    },
    /// Cohomology of the weight r representation of Gm.
    GmCohomology {
        #[arg(long, allow_hyphen_values = true)]
        weight: i64,
        #[arg(long)]
        degree_max: usize,
    },
    /// Homology of the total complex of a truncated cosimplicial complex.
    Tot {
        file: PathBuf,
        #[arg(long)]
        window: Window,
    },
    /// Two-periodic free resolution of a module with its audit.
    Resolve {
        file: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long)]
        s: i64,
        #[arg(long)]
        imax: usize,
        #[arg(long)]
        window: Window,
    },
    /// Tor between two modules over a ring with zero differential.
    Tor {
        file: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long)]
        with: String,
        #[arg(long)]
        s: i64,
        #[arg(long)]
        imax: usize,
        #[arg(long)]
        window: Window,
    },
    /// Built-in worked examples.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExamplesAction {
    /// Runs `p1-minus-3pts`, `cpn:<n>` or `affine-line`.
    Run {
        name: ExampleName,
        #[arg(long)]
        ring: CoefficientRing,
        #[arg(long, default_value = "adams=-4..0,coh=0..8")]
        window: Window,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CechCheck {
    Segal,
    Grouplike,
    Unit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleName {
    P1MinusThreePoints,
    ProjectiveSpace(usize),
    AffineLine,
}

impl std::str::FromStr for ExampleName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "p1-minus-3pts" => Ok(ExampleName::P1MinusThreePoints),
            "affine-line" => Ok(ExampleName::AffineLine),
            _ => s
                .strip_prefix("cpn:")
                .and_then(|n| n.parse().ok())
                .map(ExampleName::ProjectiveSpace)
                .ok_or_else(|| format!("unknown example `{s}`")),
        }
    }
}

impl ExampleName {
    pub fn algebra(&self, ring: CoefficientRing, w: &Window) -> DgaPresentation {
        match self {
            ExampleName::P1MinusThreePoints => DgaPresentation::p1_minus_three_points(ring),
            ExampleName::ProjectiveSpace(n) => DgaPresentation::projective_space(ring, *n),
            ExampleName::AffineLine => DgaPresentation::affine_line(ring, w.adams_min.unsigned_abs() as usize),
        }
    }
}

/// A finished report plus whether every certificate in it passed.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

pub fn group_json(g: &AbGroupReport) -> Value {
    json!({ "rank": g.free_rank, "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>() })
}

/// Nonzero groups in ascending (adams, coh) order.
pub fn homology_json(h: &HomologyReport) -> Value {
    Value::Array(
        h.groups
            .iter()
            .map(|(b, g)| {
                let mut v = group_json(g);
                v["adams"] = json!(b.adams);
                v["coh"] = json!(b.coh);
                v
            })
            .collect(),
    )
}

fn window_json(w: &Window) -> Value {
    json!({ "adams": [w.adams_min, w.adams_max], "coh": [w.coh_min, w.coh_max] })
}

fn certificate(name: &str, verdict: impl serde::Serialize) -> Value {
    json!({ "name": name, "result": verdict })
}

fn report(command: &str, anchor: &str, window: Option<&Window>, body: Value, certificates: Vec<Value>) -> Value {
    json!({
        "command": command,
        "anchor": anchor,
        "window": window.map(window_json),
        "results": body,
        "certificates": certificates,
    })
}

fn all_pass(certs: &[Value]) -> bool {
    fn ok(v: &Value) -> bool {
        match v {
            Value::Object(m) => {
                let fails = m.get("verdict").and_then(Value::as_str) == Some("fail")
                    || m.get("holds") == Some(&Value::Bool(false))
                    || m.get("all_hold") == Some(&Value::Bool(false));
                !fails && m.values().all(ok)
            }
            Value::Array(a) => a.iter().all(ok),
            _ => true,
        }
    }
    certs.iter().all(ok)
}

fn algebra_from(file: &Path) -> Result<(AlgebraDocument, DgaPresentation), InputError> {
    let doc = AlgebraDocument::parse(&read(file)?)?;
    let alg = doc.presentation()?;
    Ok((doc, alg))
}

fn bar_report(alg: &DgaPresentation, w: &Window) -> Result<(Value, Value), InputError> {
    let unit = DgaModule::trivial(alg);
    let columns = TwoSidedBar::new(alg, &unit, &unit).map_err(invalid)?.columns_needed(w.adams_min);
    let h = bar_homology(alg, w, columns).map_err(invalid)?;
    let (_, axioms) = fundamental_group_bialgebra(alg, w).map_err(invalid)?;
    Ok((homology_json(&h), serde_json::to_value(axioms).expect("serializable")))
}

fn cech_certificates<X: crate::cosimplicial::CosimplicialAlgebra>(
    x: &X,
    scope: &Scope,
    checks: &[CechCheck],
) -> Vec<Value> {
    let mut certs = vec![certificate("cosimplicial_identities", check_identities(x, scope))];
    for c in checks {
        certs.push(match c {
            CechCheck::Segal => certificate("segal", check_segal(x, scope)),
            CechCheck::Grouplike => certificate("grouplike", check_grouplike(x, scope)),
            CechCheck::Unit => certificate("unit_level", check_unit_level(x, scope)),
        });
    }
    certs
}

/// Runs one parsed command.
pub fn execute(command: &Command) -> Result<Outcome, InputError> {
    let (name, anchor, window, body, certs): (&str, &str, Option<Window>, Value, Vec<Value>) = match command {
        Command::CheckTate { file, window } => {
            let (_, alg) = algebra_from(file)?;
            let cert = alg.tate_certificate(window).map_err(invalid)?;
            let verdict = json!({
                "verdict": if cert.kind == TateKind::None { "fail" } else { "pass" },
                "kind": cert.kind,
                "bounded": cert.bounded,
                "witness": cert.witness,
                "inconclusive_adams": cert.inconclusive,
            });
            let bounds: Vec<Value> =
                cert.lower_bounds.iter().map(|(a, n)| json!({ "adams": a, "lowest_coh": n })).collect();
            ("check-tate", "Tate type of an Adams graded algebra", Some(*window), json!(bounds), vec![certificate("tate", verdict)])
        }
        Command::BarHomology { file, window, max_column } => {
            let (_, alg) = algebra_from(file)?;
            let h = bar_homology(&alg, window, *max_column).map_err(invalid)?;
            ("bar-homology", "homology of the bar construction", Some(*window), homology_json(&h), vec![])
        }
        Command::FundamentalGroup { file, window } => {
            let (_, alg) = algebra_from(file)?;
            let (h, axioms) = fundamental_group_bialgebra(&alg, window).map_err(invalid)?;
            let letters: Vec<Value> = h
                .letters()
                .iter()
                .map(|i| json!({ "name": alg.name(*i), "adams": alg.degree(*i).adams, "coh": alg.degree(*i).coh - 1 }))
                .collect();
            let body = json!({ "tensor_coalgebra_letters": letters });
            ("fundamental-group", "derived fundamental group bialgebra", Some(*window), body, vec![certificate("hopf_axioms", axioms)])
        }
        Command::Cech { file, levels, window, check } => {
            let (_, alg) = algebra_from(file)?;
            let x = BialgebraNerve::new(BarHopf::new(&alg).map_err(invalid)?);
            let scope = Scope::new(*levels, window.adams_min, window.adams_max, 0);
            let certs = cech_certificates(&x, &scope, check);
            ("cech", "derived group scheme conditions on the bar nerve", Some(*window), json!(null), certs)
        }
        Command::Semidirect { file, levels, window } => {
            let (_, alg) = algebra_from(file)?;
            let x = SemidirectGm::new(BialgebraNerve::new(BarHopf::new(&alg).map_err(invalid)?));
            let scope = Scope::new(*levels, window.adams_min, window.adams_max, 1);
            let certs = cech_certificates(&x, &scope, &[CechCheck::Segal, CechCheck::Unit]);
            let level0: Vec<Value> = level_profile(&x, 0, window.adams_min, window.adams_max, 1)
                .iter()
                .map(|(b, n)| json!({ "adams": b.adams, "coh": b.coh, "dim": n }))
                .collect();
            ("semidirect", "semidirect product with Gm", Some(*window), json!({ "level0": level0 }), certs)
        }
        Command::GmCohomology { weight, degree_max } => {
            let h = gm_cohomology(*weight, *degree_max);
            let closed = h.groups.iter().all(|(b, g)| *b == Bidegree::ZERO && *g == AbGroupReport::free(1))
                && (h.get(Bidegree::ZERO).is_zero() != (*weight == 0));
            let mut certs = vec![certificate("closed_form", json!({ "holds": closed }))];
            if *degree_max <= 6 {
                let (lo, hi) = ((*weight).min(-1), (*weight).max(1));
                let c = windowed_normalized(*weight, lo, hi, degree_max + 1).map_err(invalid)?;
                let w = Window::new(*weight, *weight, 0, *degree_max as i64).map_err(invalid)?;
                let oracle = crate::bigraded::homology(&c, &w).map_err(invalid)?;
                certs.push(certificate(
                    "matrix_oracle",
                    json!({ "holds": oracle.groups == h.groups, "exponent_window": [lo, hi] }),
                ));
            }
            let body = homology_json(&h);
            ("gm-cohomology", "cohomology of Gm weight representations", None, body, certs)
        }
        Command::Tot { file, window } => {
            let x = CosimplicialDocument::parse(&read(file)?)?.object()?;
            let rep = tot(&x, window, None).map_err(invalid)?;
            let validity: Vec<Value> = rep
                .validity
                .iter()
                .map(|(a, v)| match v {
                    Some((n0, top)) => json!({ "adams": a, "lower_bound": n0, "guaranteed_through": top }),
                    None => json!({ "adams": a, "lower_bound": null, "guaranteed_through": null }),
                })
                .collect();
            let body = json!({ "homology": homology_json(&rep.homology), "levels": rep.levels, "validity": validity });
            ("tot", "truncated totalization", Some(*window), body, vec![])
        }
        Command::Resolve { file, module, s, imax, window } => {
            let (doc, alg) = algebra_from(file)?;
            let m = doc.module(&alg, module)?;
            let ring = BigradedRing::new(alg).map_err(invalid)?;
            let res = resolve(&ring, &m, *s, *imax, window.adams_min).map_err(invalid)?;
            let a = audit(&res).map_err(invalid)?;
            let stages: Vec<Value> = res
                .stages
                .iter()
                .enumerate()
                .map(|(i, st)| {
                    let gens: Vec<Value> = st.generators.iter().map(|b| json!([b.adams, b.coh])).collect();
                    json!({ "stage": i, "generators": gens, "top_generators": st.top_generators })
                })
                .collect();
            let body = json!({ "top_adams": res.top, "stages": stages });
            let cert = json!({ "holds": a.all_hold(), "audit": a });
            ("resolve", "two-periodic free resolution", Some(*window), body, vec![certificate("resolution_audit", cert)])
        }
        Command::Tor { file, module, with, s, imax, window } => {
            let (doc, alg) = algebra_from(file)?;
            let m = doc.module(&alg, module)?;
            let n = doc.module(&alg, with)?;
            let ring = BigradedRing::new(alg).map_err(invalid)?;
            let t = tor(&ring, &m, &n, window, *imax, *s).map_err(invalid)?;
            let body: Vec<Value> = t
                .groups
                .iter()
                .map(|((p, b), g)| {
                    let mut v = group_json(g);
                    v["degree"] = json!(p);
                    v["adams"] = json!(b.adams);
                    v["coh"] = json!(b.coh);
                    v
                })
                .collect();
            let cert = json!({ "holds": t.vanishing_band });
            ("tor", "Tor over a bigraded ring", Some(*window), json!(body), vec![certificate("vanishing_band", cert)])
        }
        Command::Examples { action: ExamplesAction::Run { name, ring, window } } => {
            let alg = name.algebra(*ring, window);
            let (homology, axioms) = bar_report(&alg, window)?;
            let body = json!({ "fundamental_group_homology": homology });
            ("examples run", "worked examples", Some(*window), body, vec![certificate("hopf_axioms", axioms)])
        }
    };
    let passed = all_pass(&certs);
    Ok(Outcome { report: report(name, anchor, window.as_ref(), body, certs), passed })
}

/// Parses arguments, runs, and renders; returns the exit code and stdout text.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    if let Some(n) = cli.threads {
        // a second initialization in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let start = Instant::now();
    match execute(&cli.command) {
        Ok(mut outcome) => {
            if cli.timing {
                outcome.report["timing_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            let text = serde_json::to_string_pretty(&outcome.report).expect("serializable") + "\n";
            (outcome.exit_code(), text)
        }
        Err(e) => (2, format!("error: {e}\n")),
    }
}
