//! The `relstab` command line.
//!
//! Every command loads one workspace file and prints a report: a readable
//! listing by default, or one JSON document with `--json`. Reports start
//! with the command name, the schema version and the SHA-256 digest of the
//! workspace file.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation error, 3 failed
//! precondition or insufficient window.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::complexes::{ChainMap, Complex};
use crate::error::Error;
use crate::field::Matrix;
use crate::modrep::{Module, ModuleMap};
use crate::relexact::{
    higman, is_f_projective, omega, omega_inv, projective_maps_subspace, span_contains, stable_hom, transfer_image,
};
use crate::resolve::{
    compare_invariants, f_injective_resolution, f_projective_resolution, relative_ext_table, represent_by_module,
    Resolution, Side,
};
use crate::triple::{AdjointTriple, MapOf, TensorTriple};
use crate::virtproj::{classify, default_test_set, omega_endofunctor, Verdict};
use crate::workspace::{Instance, Workspace, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(name = "relstab", version, about = "Relative stable and derived categories of group algebra modules")]
pub struct Cli {
    /// Print the full report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every declaration and the adjoint-triple identities of every instance.
    Validate { file: PathBuf },
    /// Whether a module (or complex, for the graded instance) is F-projective.
    Fproj {
        file: PathBuf,
        #[arg(long)]
        instance: String,
        #[arg(long)]
        module: String,
    },
    /// Iterated Heller translates.
    Omega {
        file: PathBuf,
        #[arg(long)]
        instance: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        inverse: bool,
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
    },
    /// Hom modulo maps factoring through F-projectives.
    Stablehom {
        file: PathBuf,
        #[arg(long)]
        instance: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Image of the transfer and Higman's criterion.
    Transfer {
        file: PathBuf,
        #[arg(long)]
        instance: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Certified F-projective (or F-injective) resolution of a complex.
    Resolve {
        file: PathBuf,
        #[arg(long)]
        instance: String,
        #[arg(long)]
        complex: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        injective: bool,
    },
    /// Relative Ext through resolutions and through stable homs.
    Ext {
        file: PathBuf,
        #[arg(long)]
        instance: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Inclusive range `a..b`.
        #[arg(short = 'n', value_parser = parse_range)]
        n: (usize, usize),
    },
    /// A module representing a bounded complex.
    Represent {
        file: PathBuf,
        #[arg(long)]
        instance: String,
        #[arg(long)]
        complex: String,
        #[arg(long)]
        depth: usize,
    },
    /// Stable homs along iterated Heller translates.
    Virtual {
        file: PathBuf,
        #[arg(long)]
        instance: String,
        #[arg(long)]
        module: String,
        #[arg(long, value_delimiter = ',')]
        against: Vec<String>,
        /// Inclusive range `a..b`.
        #[arg(long, value_parser = parse_range)]
        range: (usize, usize),
        /// Use the Heller translate of the tensor instance of this module.
        #[arg(long)]
        via: Option<String>,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad bound {t:?}: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => (parse(s)?, parse(s)?),
    };
    if b < a {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

/// A failed command: exit code and message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    /// A report to print despite the failure.
    pub report: Option<Value>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into(), report: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Precondition(_) | Error::Window(_) => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string(), report: None }
    }
}

type Outcome = Result<Value, Failure>;

/// Parse arguments, run, print, and return the exit code.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let json = cli.json;
    match execute(&cli.command) {
        Ok(report) => {
            emit(&render(&report, json));
            0
        }
        Err(f) => {
            if let Some(report) = &f.report {
                emit(&render(report, json));
            }
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn render(report: &Value, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        let mut out = String::new();
        render_human(&mut out, &elide(report), 0);
        out
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn inline_array(items: &[Value]) -> Option<String> {
    items.iter().all(is_scalar).then(|| format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(" ")))
}

/// Larger matrices are elided from the readable output.
const MAX_ROWS: usize = 16;

fn elide(v: &Value) -> Value {
    match v {
        Value::Array(rows)
            if rows.len() > MAX_ROWS && rows.iter().all(|r| r.as_array().is_some_and(|r| r.iter().all(is_scalar))) =>
        {
            let cols = rows[0].as_array().map_or(0, Vec::len);
            json!(format!("<{}x{cols} matrix, see --json>", rows.len()))
        }
        Value::Array(items) => Value::Array(items.iter().map(elide).collect()),
        Value::Object(map) => Value::Object(map.iter().map(|(k, v)| (k.clone(), elide(v))).collect()),
        other => other.clone(),
    }
}

fn render_human(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Array(items) if items.is_empty() => {
                        let _ = writeln!(out, "{pad}{k}: []");
                    }
                    Value::Array(items) => {
                        if let Some(line) = inline_array(items) {
                            let _ = writeln!(out, "{pad}{k}: {line}");
                        } else {
                            let _ = writeln!(out, "{pad}{k}:");
                            render_human(out, val, indent + 1);
                        }
                    }
                    Value::Object(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_human(out, val, indent + 1);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar(val));
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if let Some(line) = item.as_array().and_then(|a| inline_array(a)) {
                    let _ = writeln!(out, "{pad}{line}");
                } else if is_scalar(item) {
                    let _ = writeln!(out, "{pad}{}", scalar(item));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render_human(out, item, indent + 1);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

fn header(command: &str, ws: &Workspace) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("workspace".into(), json!(ws.name));
    m.insert("input_sha256".into(), json!(ws.digest));
    m
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| json!(m.row(i))).collect())
}

/// JSON forms of the objects and maps the commands print.
trait Report {
    fn report(&self, gens: &[usize]) -> Value;
}

impl Report for Module {
    fn report(&self, gens: &[usize]) -> Value {
        json!({
            "dim": self.dim(),
            "action": gens.iter().map(|&g| matrix_json(self.action(g))).collect::<Vec<_>>(),
        })
    }
}

impl Report for ModuleMap {
    fn report(&self, _: &[usize]) -> Value {
        matrix_json(self.matrix())
    }
}

impl Report for Complex {
    fn report(&self, _: &[usize]) -> Value {
        let degrees: Vec<Value> = self
            .degrees()
            .map(|n| json!({ "degree": n, "dim": self.dim_at(n), "d": matrix_json(&self.d_matrix(n)) }))
            .collect();
        json!({ "total_dim": self.total_dim(), "terms": degrees })
    }
}

impl Report for ChainMap {
    fn report(&self, _: &[usize]) -> Value {
        let (s, t) = (self.source(), self.target());
        let lo = s.support().map(|x| x.0).into_iter().chain(t.support().map(|x| x.0)).min();
        let hi = s.support().map(|x| x.1).into_iter().chain(t.support().map(|x| x.1)).max();
        let comps: Vec<Value> = match (lo, hi) {
            (Some(lo), Some(hi)) => {
                (lo..=hi).map(|n| json!({ "degree": n, "matrix": matrix_json(&self.component(n)) })).collect()
            }
            _ => Vec::new(),
        };
        Value::Array(comps)
    }
}

fn load(file: &PathBuf) -> Result<Workspace, Failure> {
    Ok(Workspace::load(file)?)
}

fn lookup<'a, T>(found: crate::Result<&'a T>) -> Result<&'a T, Failure> {
    found.map_err(|e| Failure::usage(e.to_string()))
}

fn execute(cmd: &Command) -> Outcome {
    match cmd {
        Command::Validate { file } => cmd_validate(file),
        Command::Fproj { file, instance, module } => {
            let ws = load(file)?;
            with_instance(
                &ws,
                instance,
                |t, get| cmd_fproj(&ws, t, module, get),
                |t, get| cmd_fproj(&ws, t, module, get),
            )
        }
        Command::Omega { file, instance, module, inverse, n } => {
            let ws = load(file)?;
            with_instance(
                &ws,
                instance,
                |t, get| cmd_omega(&ws, t, module, *inverse, *n, get),
                |t, get| cmd_omega(&ws, t, module, *inverse, *n, get),
            )
        }
        Command::Stablehom { file, instance, from, to } => {
            let ws = load(file)?;
            with_instance(
                &ws,
                instance,
                |t, get| cmd_stablehom(&ws, t, from, to, get),
                |t, get| cmd_stablehom(&ws, t, from, to, get),
            )
        }
        Command::Transfer { file, instance, from, to } => {
            let ws = load(file)?;
            with_instance(
                &ws,
                instance,
                |t, get| cmd_transfer(&ws, t, from, to, get),
                |t, get| cmd_transfer(&ws, t, from, to, get),
            )
        }
        Command::Resolve { file, instance, complex, depth, injective } => {
            let ws = load(file)?;
            cmd_resolve(&ws, instance, complex, *depth, *injective)
        }
        Command::Ext { file, instance, from, to, n } => {
            let ws = load(file)?;
            cmd_ext(&ws, instance, from, to, *n)
        }
        Command::Represent { file, instance, complex, depth } => {
            let ws = load(file)?;
            cmd_represent(&ws, instance, complex, *depth)
        }
        Command::Virtual { file, instance, module, against, range, via } => {
            let ws = load(file)?;
            cmd_virtual(&ws, instance, module, against, *range, via.as_deref())
        }
    }
}

/// Dispatch on the instance kind, passing a name lookup for its objects.
fn with_instance(
    ws: &Workspace,
    name: &str,
    tensor: impl FnOnce(&TensorTriple, &dyn Fn(&str) -> Result<Module, Failure>) -> Outcome,
    graded: impl FnOnce(&crate::triple::GradedForgetful, &dyn Fn(&str) -> Result<Complex, Failure>) -> Outcome,
) -> Outcome {
    match lookup(ws.instance(name))? {
        Instance::Tensor { triple, .. } => tensor(triple, &|n| Ok(lookup(ws.module(n))?.clone())),
        Instance::Graded(triple) => graded(triple, &|n| Ok(lookup(ws.graded_complex(n))?.clone())),
    }
}

fn tensor<'a>(ws: &'a Workspace, name: &str) -> Result<&'a TensorTriple, Failure> {
    lookup(ws.instance(name))?;
    Ok(ws.tensor(name)?)
}

fn cmd_validate(file: &PathBuf) -> Outcome {
    let ws = load(file)?;
    let reports = ws.validate()?;
    let mut out = header("validate", &ws);
    out.insert("modules".into(), json!(ws.modules.keys().collect::<Vec<_>>()));
    out.insert("complexes".into(), json!(ws.complexes.keys().chain(ws.graded.keys()).collect::<Vec<_>>()));
    let mut ok = true;
    let mut instances = Map::new();
    for (name, report) in &reports {
        ok &= report.passed();
        let failures: Vec<Value> =
            report.failures().map(|c| json!({ "check": c.name, "subject": c.subject })).collect();
        instances.insert(
            name.clone(),
            json!({ "checks": report.checks.len(), "passed": report.passed(), "failures": failures }),
        );
    }
    out.insert("instances".into(), Value::Object(instances));
    out.insert("valid".into(), json!(ok));
    let report = Value::Object(out);
    if ok {
        Ok(report)
    } else {
        Err(Failure { code: 2, message: "adjoint-triple validation failed".into(), report: Some(report) })
    }
}

fn cmd_fproj<T>(ws: &Workspace, t: &T, name: &str, get: &dyn Fn(&str) -> Result<T::A, Failure>) -> Outcome
where
    T: AdjointTriple,
    T::A: Report,
    MapOf<T::A>: Report,
{
    let x = get(name)?;
    let witness = is_f_projective(t, &x)?;
    let mut out = header("fproj", ws);
    out.insert("instance".into(), json!(t.label()));
    out.insert("object".into(), json!(name));
    out.insert("f_projective".into(), json!(witness.is_some()));
    out.insert("witness".into(), witness.map_or(Value::Null, |w| w.report(&ws.generators)));
    Ok(Value::Object(out))
}

fn cmd_omega<T>(
    ws: &Workspace,
    t: &T,
    name: &str,
    inverse: bool,
    n: usize,
    get: &dyn Fn(&str) -> Result<T::A, Failure>,
) -> Outcome
where
    T: AdjointTriple,
    T::A: Report,
    MapOf<T::A>: Report,
{
    use crate::triple::{Morphism, Object};
    let mut x = get(name)?;
    let mut dims = vec![x.total_dim()];
    for _ in 0..n {
        x = if inverse { omega_inv(t, &x).d.target().clone() } else { omega(t, &x).i.source().clone() };
        dims.push(x.total_dim());
    }
    let mut out = header("omega", ws);
    out.insert("object".into(), json!(name));
    out.insert("inverse".into(), json!(inverse));
    out.insert("n".into(), json!(n));
    out.insert("dims".into(), json!(dims));
    out.insert("result".into(), x.report(&ws.generators));
    Ok(Value::Object(out))
}

fn cmd_stablehom<T>(ws: &Workspace, t: &T, from: &str, to: &str, get: &dyn Fn(&str) -> Result<T::A, Failure>) -> Outcome
where
    T: AdjointTriple,
    T::A: Report,
    MapOf<T::A>: Report,
{
    let (x, y) = (get(from)?, get(to)?);
    let s = stable_hom(t, &x, &y)?;
    let mut out = header("stablehom", ws);
    out.insert("from".into(), json!(from));
    out.insert("to".into(), json!(to));
    out.insert("hom_dim".into(), json!(s.ambient.len()));
    out.insert("projective_dim".into(), json!(s.projective.len()));
    out.insert("quotient_dim".into(), json!(s.quotient_dim()));
    out.insert(
        "representatives".into(),
        Value::Array(s.representatives.iter().map(|m| m.report(&ws.generators)).collect()),
    );
    Ok(Value::Object(out))
}

fn cmd_transfer<T>(ws: &Workspace, t: &T, from: &str, to: &str, get: &dyn Fn(&str) -> Result<T::A, Failure>) -> Outcome
where
    T: AdjointTriple,
    T::A: Report,
    MapOf<T::A>: Report,
{
    let (x, y) = (get(from)?, get(to)?);
    let image = transfer_image(t, &x, &y)?;
    let proj = projective_maps_subspace(t, &x, &y)?;
    let equal = span_contains(&proj, &image)? && span_contains(&image, &proj)?;
    let mut out = header("transfer", ws);
    out.insert("from".into(), json!(from));
    out.insert("to".into(), json!(to));
    out.insert("image_dim".into(), json!(image.len()));
    out.insert("projective_maps_dim".into(), json!(proj.len()));
    out.insert("image_equals_projective_maps".into(), json!(equal));
    out.insert("higman_from".into(), json!(higman(t, &x)?));
    out.insert("f_projective_from".into(), json!(is_f_projective(t, &x)?.is_some()));
    out.insert("image".into(), Value::Array(image.iter().map(|m| m.report(&ws.generators)).collect()));
    Ok(Value::Object(out))
}

fn pairs(v: &[(i64, bool)]) -> Value {
    Value::Array(v.iter().map(|(n, ok)| json!({ "degree": n, "holds": ok })).collect())
}

fn resolution_json(t: &TensorTriple, r: &Resolution) -> Result<Value, Failure> {
    let cert = r.certificate(t)?;
    let terms: Vec<Value> =
        r.complex().degrees().map(|n| json!({ "degree": n, "dim": r.complex().dim_at(n) })).collect();
    Ok(json!({
        "side": match r.side() { Side::Projective => "projective", Side::Injective => "injective" },
        "end": r.end(),
        "terms": terms,
        "window": [cert.window.0, cert.window.1],
        "certificate": {
            "passed": cert.passed(),
            "terms_are_canonical_covers": cert.terms.iter().all(|&(_, ok)| ok),
            "covers_split": cert.zigzag,
            "map_valid": cert.map_valid,
            "cohomology_injective": pairs(&cert.cohomology_injective),
            "cohomology_surjective": pairs(&cert.cohomology_surjective),
            "contraction_window": [cert.contraction_window.0, cert.contraction_window.1],
            "contraction_found": cert.contraction.is_some(),
            "failures": cert.failures,
        },
    }))
}

fn cmd_resolve(ws: &Workspace, instance: &str, complex: &str, depth: usize, injective: bool) -> Outcome {
    let t = tensor(ws, instance)?;
    let x = lookup(ws.complex(complex))?;
    let r = if injective { f_injective_resolution(t, x, depth)? } else { f_projective_resolution(t, x, depth)? };
    let mut out = header("resolve", ws);
    out.insert("complex".into(), json!(complex));
    out.insert("depth".into(), json!(depth));
    out.insert("resolution".into(), resolution_json(t, &r)?);
    let passed = r.certificate(t)?.passed();
    let report = Value::Object(out);
    if passed {
        Ok(report)
    } else {
        Err(Failure { code: 3, message: "resolution failed certification".into(), report: Some(report) })
    }
}

fn cmd_ext(ws: &Workspace, instance: &str, from: &str, to: &str, (a, b): (usize, usize)) -> Outcome {
    if a == 0 {
        return Err(Failure::usage("relative Ext is defined here for n ≥ 1"));
    }
    let t = tensor(ws, instance)?;
    let (m, n) = (lookup(ws.module(from))?, lookup(ws.module(to))?);
    let rows = relative_ext_table(t, m, n, a, b)?;
    let mut out = header("ext", ws);
    out.insert("from".into(), json!(from));
    out.insert("to".into(), json!(to));
    let table: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "n": r.n, "route_a": r.route_a, "route_b": r.route_b, "agree": r.agree() }))
        .collect();
    out.insert("all_agree".into(), json!(rows.iter().all(|r| r.agree())));
    out.insert("rows".into(), Value::Array(table));
    Ok(Value::Object(out))
}

fn cmd_represent(ws: &Workspace, instance: &str, complex: &str, depth: usize) -> Outcome {
    let t = tensor(ws, instance)?;
    let x = lookup(ws.complex(complex))?;
    let rep = represent_by_module(t, x, depth)?;
    let targets: Vec<Module> = ws.modules.values().cloned().collect();
    let names: Vec<&String> = ws.modules.keys().collect();
    let rows = compare_invariants(t, x, &rep, &targets, 2)?;
    let mut out = header("represent", ws);
    out.insert("complex".into(), json!(complex));
    out.insert("depth".into(), json!(depth));
    out.insert("support".into(), json!([rep.support.0, rep.support.1]));
    out.insert("module".into(), rep.module.report(&ws.generators));
    out.insert("image_dim".into(), json!(rep.image.dim()));
    out.insert("stable_range_from".into(), json!(rep.first_stable_degree()));
    out.insert("all_match".into(), json!(rows.iter().all(|r| r.derived == r.stable)));
    let inv: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "target": names[r.target], "n": r.n, "derived": r.derived, "stable": r.stable }))
        .collect();
    out.insert("invariants".into(), Value::Array(inv));
    Ok(Value::Object(out))
}

fn cmd_virtual(
    ws: &Workspace,
    instance: &str,
    module: &str,
    against: &[String],
    (a, b): (usize, usize),
    via: Option<&str>,
) -> Outcome {
    let t = tensor(ws, instance)?;
    let x = lookup(ws.module(module))?;
    let extra = against.iter().map(|n| Ok(lookup(ws.module(n))?.clone())).collect::<Result<Vec<_>, Failure>>()?;
    let ys = default_test_set(x, &extra);
    let mut labels = vec!["trivial".to_string(), "regular".to_string()];
    labels.extend(against.iter().cloned());
    let v = match via {
        Some(name) => lookup(ws.module(name))?.clone(),
        None => t.w().clone(),
    };
    let g = omega_endofunctor(t, &v)?;
    let report = classify(t, x, &ys, a, b, &g)?;
    let mut out = header("virtual", ws);
    out.insert("module".into(), json!(module));
    out.insert("functor".into(), json!(report.functor));
    out.insert("against".into(), json!(labels));
    out.insert("range".into(), json!([a, b]));
    let table: Vec<Value> =
        report.table.iter().enumerate().map(|(i, row)| json!({ "n": a + i, "dims": row })).collect();
    out.insert("table".into(), Value::Array(table));
    let verdict = match report.verdict {
        Verdict::VanishingOnTestedRange => json!("vanishing on tested range"),
        Verdict::Witness { n, y } => json!({ "nonvanishing_witness": { "n": n, "against": labels[y] } }),
    };
    out.insert("verdict".into(), verdict);
    Ok(Value::Object(out))
}
