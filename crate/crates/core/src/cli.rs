//! Command-line surface: tables, quantization records and the invariant check.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 mathematical consistency
//! failure, 4 resource cap.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::characters::{weyl_dimension, Caps};
use crate::error::Error;
use crate::fusion::{fusion_ideal_check_a, FusionContext, FusionElement, FusionOptions, FusionTable, DEFAULT_TOLERANCE};
use crate::lie::{Family, Weight, Q};
use crate::quantize::{
    conjugacy_class_values, quantize_double, quantize_sphere, verlinde_routes, VerlindeProblem,
};
use crate::Group;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const EXIT_CAP: i32 = 4;

const MAX_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Parser)]
#[command(name = "verlinde", version, about = "Level-k fusion rings and their quantization examples")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Cartan type such as A2, C2 or G2.
    #[arg(long, global = true)]
    pub group: Option<String>,
    #[arg(long, global = true)]
    pub level: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Bound on rounding residuals, in (0, 1e-3].
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Upper bound on (μ|μ) in tensor product decompositions.
    #[arg(long, global = true)]
    pub max_norm: Option<i64>,
    /// Upper bound on the number of dominant weights of a module.
    #[arg(long, global = true)]
    pub max_dominant_weights: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the level-k weights with the phases of t_λ on the fundamental weights.
    Weights,
    /// Export all structure constants N_{μ,ν,λ}.
    Fusion,
    /// Dimension of conformal blocks for a surface of the given genus and boundary labels.
    Verlinde {
        #[arg(long, default_value_t = 0)]
        genus: u32,
        /// Boundary label as comma-separated Dynkin labels; repeatable.
        #[arg(long)]
        boundary: Vec<String>,
    },
    /// Quantize one of the worked examples.
    Quantize {
        #[command(subcommand)]
        example: Example,
    },
    /// Run the invariant suite for (group, level).
    Check {
        #[arg(long, hide = true)]
        corrupt_cache: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum Example {
    /// Conjugacy class pre-quantized at level k by the weight μ.
    Conj {
        #[arg(long)]
        weight: String,
    },
    /// The double D(G) and the fused double.
    Double,
    /// The sphere S^{2n} as an SU(n)-space.
    Sphere {
        #[arg(long)]
        n: usize,
    },
}

/// Result of one invocation, captured for tests and for the binary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Emit {
    body: String,
    code: i32,
    note: Option<String>,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_consistency_failure() {
            EXIT_INCONSISTENT
        } else if e.is_resource_cap() {
            EXIT_CAP
        } else {
            EXIT_USAGE
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok(emit) => {
            let stderr = emit.note.map(|n| format!("{n}\n")).unwrap_or_default();
            match &cli.config.out {
                Some(path) => match std::fs::write(path, &emit.body) {
                    Ok(()) => Outcome { code: emit.code, stdout: String::new(), stderr },
                    Err(e) => Outcome {
                        code: EXIT_USAGE,
                        stdout: String::new(),
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    },
                },
                None => Outcome { code: emit.code, stdout: emit.body, stderr },
            }
        }
        Err(f) => Outcome { code: f.code, stdout: String::new(), stderr: format!("error: {}\n", f.message) },
    }
}

fn execute(cli: &Cli) -> Result<Emit, Failure> {
    let config = &cli.config;
    if !(config.tolerance > 0.0 && config.tolerance <= MAX_TOLERANCE) {
        return Err(usage(format!("--tolerance must lie in (0, {MAX_TOLERANCE:e}], got {}", config.tolerance)));
    }
    if config.threads == 0 {
        return Err(usage("--threads must be at least 1"));
    }
    match &cli.command {
        Command::Weights => cmd_weights(config),
        Command::Fusion => cmd_fusion(config),
        Command::Verlinde { genus, boundary } => cmd_verlinde(config, *genus, boundary),
        Command::Quantize { example } => cmd_quantize(config, example),
        Command::Check { corrupt_cache } => cmd_check(config, *corrupt_cache),
    }
}

impl RunConfig {
    fn group(&self) -> Result<Group, Failure> {
        let label = self.group.as_deref().ok_or_else(|| usage("--group is required"))?;
        Ok(Group::from_label(label)?)
    }

    fn level(&self) -> Result<u32, Failure> {
        self.level.ok_or_else(|| usage("--level is required"))
    }

    fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(n) = self.max_norm {
            caps.max_norm = Q::from_integer(n);
        }
        if let Some(n) = self.max_dominant_weights {
            caps.max_dominant_weights = n;
        }
        caps
    }

    fn context<'g>(&self, group: &'g Group) -> Result<FusionContext<'g>, Failure> {
        let options = FusionOptions { tolerance: self.tolerance, threads: self.threads };
        Ok(FusionContext::with_options(group, self.level()?, options)?)
    }
}

fn ratio_string(q: Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn ratio_float(q: Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

fn parse_weight(group: &Group, s: &str) -> Result<Weight, Failure> {
    let w: Weight = s.parse()?;
    group.datum.check_rank(&w)?;
    Ok(w)
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

fn cmd_weights(config: &RunConfig) -> Result<Emit, Failure> {
    let group = config.group()?;
    let k = config.level()?;
    let datum = &group.datum;
    let r = datum.rank;
    let weights = crate::lie::level_k_weights(datum, k);
    let rows: Vec<(String, Vec<Q>)> = weights
        .iter()
        .map(|lam| {
            let t = crate::lie::t_lambda(datum, lam, k)?;
            let phases = (0..r).map(|i| t.phase(&Weight::fundamental(r, i))).collect();
            Ok((lam.to_string(), phases))
        })
        .collect::<Result<_, Error>>()?;

    let body = match config.format {
        Format::Json => pretty(&json!({
            "group": datum.cartan_type.to_string(),
            "level": k,
            "datum": {
                "type": datum.cartan_type.to_string(),
                "rank": r,
                "cartan": datum.cartan,
                "comarks": datum.comarks,
                "dual_coxeter": datum.dual_coxeter,
                "gram": datum.gram.iter().map(|row| row.iter().map(|q| ratio_string(*q)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            },
            "torus_order": crate::lie::torus_order(datum, k as u64 + datum.dual_coxeter as u64),
            "weights": rows.iter().map(|(w, ph)| json!({
                "weight": w,
                "phases": ph.iter().map(|q| ratio_string(*q)).collect::<Vec<_>>(),
                "phases_float": ph.iter().map(|q| ratio_float(*q)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(Vec::new());
            wtr.write_record(["weight", "phases", "phases_float"]).expect("in-memory write");
            for (w, ph) in &rows {
                let exact = ph.iter().map(|q| ratio_string(*q)).collect::<Vec<_>>().join(" ");
                let float = ph.iter().map(|q| ratio_float(*q).to_string()).collect::<Vec<_>>().join(" ");
                wtr.write_record([w.as_str(), &exact, &float]).expect("in-memory write");
            }
            String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("utf-8 csv")
        }
        Format::Text => {
            let mut s = format!("{} level {k}: {} weights\n", datum.cartan_type, rows.len());
            for (w, ph) in &rows {
                let exact = ph.iter().map(|q| ratio_string(*q)).collect::<Vec<_>>().join(" ");
                let _ = writeln!(s, "({w})\t{exact}");
            }
            s
        }
    };
    Ok(Emit { body, code: EXIT_OK, note: None })
}

fn cmd_fusion(config: &RunConfig) -> Result<Emit, Failure> {
    let group = config.group()?;
    let ctx = config.context(&group)?;
    let table = ctx.fusion_table()?;
    let other = ctx.fusion_table_kac_walton(&config.caps())?;
    let routes_agree = table == other;
    let label = group.datum.cartan_type.to_string();
    let body = match config.format {
        Format::Json => pretty(&table.to_json(&label, routes_agree)),
        Format::Csv => table.to_csv(),
        Format::Text => {
            let mut s = format!("{label} level {}: routes_agree {routes_agree}\n", ctx.level());
            for a in 0..table.len() {
                for b in a..table.len() {
                    let x = ctx.basis(&table.weights[a])?;
                    let y = ctx.basis(&table.weights[b])?;
                    let _ = writeln!(s, "{x} · {y} = {}", table.multiply(&x, &y));
                }
            }
            s
        }
    };
    let (code, note) = if routes_agree {
        (EXIT_OK, None)
    } else {
        (EXIT_INCONSISTENT, Some("error: value-vector and tensor-product fusion tables disagree".to_string()))
    };
    Ok(Emit { body, code, note })
}

/// The record emitted for each quantization and Verlinde computation.
#[derive(Debug, Serialize)]
struct ResultRecord {
    example: &'static str,
    group: String,
    level: u32,
    /// Basis of `R_k(G)` indexing `coefficients`.
    weights: Vec<String>,
    coefficients: Vec<i64>,
    residual: f64,
    routes_agree: bool,
    #[serde(flatten)]
    extra: serde_json::Map<String, serde_json::Value>,
}

impl ResultRecord {
    fn new(example: &'static str, ctx: &FusionContext<'_>, element: &FusionElement) -> Self {
        ResultRecord {
            example,
            group: ctx.datum().cartan_type.to_string(),
            level: ctx.level(),
            weights: ctx.weights().iter().map(|w| w.to_string()).collect(),
            coefficients: ctx.weights().iter().map(|w| element.coefficient(w)).collect(),
            residual: 0.0,
            routes_agree: true,
            extra: serde_json::Map::new(),
        }
    }

    fn render(&self, format: Format, element: &FusionElement) -> String {
        match format {
            Format::Json => pretty(&serde_json::to_value(self).expect("serializable record")),
            Format::Csv => {
                let mut wtr = csv::Writer::from_writer(Vec::new());
                wtr.write_record(["weight", "coefficient"]).expect("in-memory write");
                for (w, c) in self.weights.iter().zip(&self.coefficients) {
                    wtr.write_record([w.as_str(), &c.to_string()]).expect("in-memory write");
                }
                String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("utf-8 csv")
            }
            Format::Text => {
                let mut s = format!("example: {}\ngroup: {}\nlevel: {}\n", self.example, self.group, self.level);
                for (key, value) in &self.extra {
                    let _ = writeln!(s, "{key}: {value}");
                }
                let _ = writeln!(s, "result: {element}");
                let _ = writeln!(s, "residual: {:e}", self.residual);
                let _ = writeln!(s, "routes_agree: {}", self.routes_agree);
                s
            }
        }
    }

    fn emit(self, format: Format, element: &FusionElement) -> Emit {
        let code = if self.routes_agree { EXIT_OK } else { EXIT_INCONSISTENT };
        let note = (!self.routes_agree).then(|| format!("error: {} routes disagree", self.example));
        Emit { body: self.render(format, element), code, note }
    }
}

fn cmd_verlinde(config: &RunConfig, genus: u32, boundary: &[String]) -> Result<Emit, Failure> {
    let group = config.group()?;
    let ctx = config.context(&group)?;
    let boundary: Vec<Weight> = boundary.iter().map(|s| parse_weight(&group, s)).collect::<Result<_, _>>()?;
    for mu in &boundary {
        ctx.index_of(mu)?;
    }
    let table = ctx.fusion_table()?;
    let problem = VerlindeProblem { genus, boundary };
    let dims = verlinde_routes(&ctx, &table, &problem)?;
    let zero = Weight::zero(group.rank());
    let element = FusionElement::from_terms(&group.datum, ctx.level(), [(zero, dims.fusion_algebra)])?;
    let mut record = ResultRecord::new("verlinde", &ctx, &element);
    record.weights.truncate(1);
    record.coefficients.truncate(1);
    record.residual = dims.residual;
    record.routes_agree = dims.fusion_algebra == dims.closed_form;
    record.extra.insert("genus".into(), json!(genus));
    record.extra.insert(
        "boundary".into(),
        json!(problem.boundary.iter().map(|w| w.to_string()).collect::<Vec<_>>()),
    );
    record.extra.insert("dimension".into(), json!(dims.fusion_algebra));
    record.extra.insert("closed_form".into(), json!(dims.closed_form));
    if config.format == Format::Text {
        let code = if record.routes_agree { EXIT_OK } else { EXIT_INCONSISTENT };
        return Ok(Emit { body: format!("{}\n", dims.fusion_algebra), code, note: None });
    }
    Ok(record.emit(config.format, &element))
}

fn cmd_quantize(config: &RunConfig, example: &Example) -> Result<Emit, Failure> {
    match example {
        Example::Conj { weight } => {
            let group = config.group()?;
            let ctx = config.context(&group)?;
            let mu = parse_weight(&group, weight)?;
            let i = ctx.index_of(&mu)?;
            let values = conjugacy_class_values(&ctx, &mu)?;
            let residual = (0..ctx.len())
                .map(|l| (values[l] - ctx.character(i, l)).norm())
                .fold(0.0, f64::max);
            let element = ctx.decompose(&values)?;
            let mut record = ResultRecord::new("conj", &ctx, &element);
            record.residual = residual;
            record.routes_agree = element == ctx.basis(&mu)?;
            record.extra.insert("weight".into(), json!(mu.to_string()));
            Ok(record.emit(config.format, &element))
        }
        Example::Double => {
            let group = config.group()?;
            let ctx = config.context(&group)?;
            let table = ctx.fusion_table()?;
            let d = quantize_double(&ctx, &table)?;
            let mut record = ResultRecord::new("double", &ctx, &d.fused);
            record.residual = d.max_discrepancy;
            record.routes_agree = d.routes_agree;
            Ok(record.emit(config.format, &d.fused))
        }
        Example::Sphere { n } => {
            if *n < 2 {
                return Err(usage(format!("--n must be at least 2, got {n}")));
            }
            let group = Group::special_unitary(*n)?;
            if let Some(label) = &config.group {
                let given: crate::CartanType = label.parse()?;
                if given != group.datum.cartan_type {
                    return Err(usage(format!("S^{} is an SU({n})-space of type {}, not {given}", 2 * n, group.datum.cartan_type)));
                }
            }
            let ctx = config.context(&group)?;
            let s = quantize_sphere(&ctx)?;
            let mut record = ResultRecord::new("sphere", &ctx, &s.element);
            record.residual = s.raw_max_residual;
            record.extra.insert("n".into(), json!(n));
            record.extra.insert("raw_points_checked".into(), json!(s.raw_points_checked));
            record.extra.insert("degenerate_points".into(), json!(s.degenerate_points));
            Ok(record.emit(config.format, &s.element))
        }
    }
}

#[derive(Debug, Serialize)]
struct InvariantReport {
    name: &'static str,
    pass: bool,
    residual: Option<f64>,
    threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
    #[serde(skip)]
    cap: bool,
}

fn invariant(name: &'static str, threshold: f64, f: impl FnOnce() -> Result<f64, Error>) -> InvariantReport {
    match f() {
        Ok(residual) => InvariantReport {
            name,
            pass: residual <= threshold,
            residual: Some(residual),
            threshold,
            detail: None,
            cap: false,
        },
        Err(e) => InvariantReport {
            name,
            pass: false,
            residual: None,
            threshold,
            detail: Some(e.to_string()),
            cap: e.is_resource_cap(),
        },
    }
}

fn count(mismatches: usize) -> f64 {
    mismatches as f64
}

fn run_invariants(config: &RunConfig, group: &Group, ctx: &FusionContext<'_>) -> Vec<InvariantReport> {
    let tol = ctx.tolerance();
    let n = ctx.len();
    let datum = &group.datum;
    let mut out = Vec::new();

    out.push(invariant("root_datum", 0.0, || {
        Ok(datum.validate().map(|_| 0.0).unwrap_or(1.0))
    }));
    out.push(invariant("orthogonality", tol, || Ok(ctx.verify_orthogonality())));
    out.push(invariant("character_bound", tol, || {
        let mut worst: f64 = 0.0;
        for (m, mu) in ctx.weights().iter().enumerate() {
            let dim = weyl_dimension(datum, mu) as f64;
            for l in 0..n {
                worst = worst.max(ctx.character(m, l).norm() - dim);
            }
        }
        Ok(worst)
    }));
    out.push(invariant("star_conjugation", tol, || {
        let mut worst: f64 = 0.0;
        for m in 0..n {
            for l in 0..n {
                worst = worst.max((ctx.character(ctx.dual_index(m), l) - ctx.character(m, l).conj()).norm());
            }
        }
        Ok(worst)
    }));
    out.push(invariant("fusion_integrality", tol, || {
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in a..n {
                worst = worst.max(ctx.fourier_residual(&ctx.product_values(a, b))?);
            }
        }
        Ok(worst)
    }));

    let table = ctx.fusion_table();
    out.push(invariant("fusion_two_routes", 0.0, || {
        let table = table.clone()?;
        let other = ctx.fusion_table_kac_walton(&config.caps())?;
        Ok(count(mismatched_entries(&table, &other)))
    }));
    out.push(invariant("fusion_symmetry_and_unit", 0.0, || {
        let table = table.clone()?;
        Ok(count(!table.is_fully_symmetric() as usize + !table.satisfies_unit_law() as usize))
    }));
    out.push(invariant("fusion_associativity", 0.0, || {
        let table = table.clone()?;
        let basis: Vec<FusionElement> = ctx.weights().iter().map(|w| ctx.basis(w)).collect::<Result<_, _>>()?;
        let mut bad = 0;
        for x in &basis {
            for y in &basis {
                let xy = table.multiply(x, y);
                for z in &basis {
                    if table.multiply(&xy, z) != table.multiply(x, &table.multiply(y, z)) {
                        bad += 1;
                    }
                }
            }
        }
        Ok(count(bad))
    }));
    if datum.cartan_type.family == Family::A {
        out.push(invariant("fusion_ideal", 1e-8, || fusion_ideal_check_a(group, ctx.level())));
    }
    out.push(invariant("conjugacy_classes", 1e-9, || {
        let mut worst: f64 = 0.0;
        for (m, mu) in ctx.weights().iter().enumerate() {
            let values = conjugacy_class_values(ctx, mu)?;
            for (l, v) in values.iter().enumerate() {
                worst = worst.max((v - ctx.character(m, l)).norm());
            }
        }
        Ok(worst)
    }));
    out.push(invariant("double_diagonal", tol, || {
        let t = ctx.torus_order() as f64;
        let mut worst: f64 = 0.0;
        for l in 0..n {
            let sum: f64 = (0..n).map(|m| ctx.character(m, l).norm_sqr()).sum();
            worst = worst.max((sum * ctx.denominator(l).norm_sqr() - t).abs());
        }
        Ok(worst)
    }));
    out.push(invariant("verlinde_routes", 0.0, || {
        let table = table.clone()?;
        let mut bad = 0;
        let mut problems: Vec<VerlindeProblem> =
            (0..=2).map(|genus| VerlindeProblem { genus, boundary: vec![] }).collect();
        for mu in ctx.weights() {
            problems.push(VerlindeProblem { genus: 1, boundary: vec![mu.clone()] });
        }
        for p in &problems {
            let d = verlinde_routes(ctx, &table, p)?;
            bad += (d.fusion_algebra != d.closed_form) as usize;
        }
        // Genus zero with three boundary circles is a structure constant.
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let w = ctx.weights();
                    let p = VerlindeProblem { genus: 0, boundary: vec![w[a].clone(), w[b].clone(), w[c].clone()] };
                    let d = verlinde_routes(ctx, &table, &p)?;
                    bad += (d.fusion_algebra != d.closed_form || d.fusion_algebra != table.get(a, b, c) as i64) as usize;
                }
            }
        }
        Ok(count(bad))
    }));
    if datum.cartan_type.family == Family::A {
        out.push(invariant("sphere", tol, || Ok(quantize_sphere(ctx)?.raw_max_residual)));
    }
    out
}

fn mismatched_entries(a: &FusionTable, b: &FusionTable) -> usize {
    let n = a.len();
    let mut bad = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                bad += (a.get(x, y, z) != b.get(x, y, z)) as usize;
            }
        }
    }
    bad
}

fn cmd_check(config: &RunConfig, corrupt_cache: bool) -> Result<Emit, Failure> {
    let group = config.group()?;
    let mut ctx = config.context(&group)?;
    if corrupt_cache {
        ctx.corrupt_cache();
    }
    let reports = run_invariants(config, &group, &ctx);
    let failures = reports.iter().filter(|r| !r.pass).count();
    let all_cap = failures > 0 && reports.iter().filter(|r| !r.pass).all(|r| r.cap);
    let code = match (failures, all_cap) {
        (0, _) => EXIT_OK,
        (_, true) => EXIT_CAP,
        _ => EXIT_INCONSISTENT,
    };
    let label = group.datum.cartan_type.to_string();
    let body = match config.format {
        Format::Json => pretty(&json!({
            "group": label,
            "level": ctx.level(),
            "tolerance": ctx.tolerance(),
            "all_pass": failures == 0,
            "invariants": reports,
        })),
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(Vec::new());
            wtr.write_record(["invariant", "pass", "residual", "threshold", "detail"]).expect("in-memory write");
            for r in &reports {
                wtr.write_record([
                    r.name.to_string(),
                    r.pass.to_string(),
                    r.residual.map(|x| format!("{x:e}")).unwrap_or_default(),
                    format!("{:e}", r.threshold),
                    r.detail.clone().unwrap_or_default(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("utf-8 csv")
        }
        Format::Text => {
            let mut s = format!("check {label} level {}\n", ctx.level());
            for r in &reports {
                let status = if r.pass { "PASS" } else { "FAIL" };
                let residual = r.residual.map(|x| format!("{x:.3e}")).unwrap_or_else(|| "error".into());
                let _ = write!(s, "{status} {:<26} residual={residual} threshold={:e}", r.name, r.threshold);
                if let Some(d) = &r.detail {
                    let _ = write!(s, " ({d})");
                }
                s.push('\n');
            }
            let _ = writeln!(s, "{} of {} invariants passed", reports.len() - failures, reports.len());
            s
        }
    };
    let note = (failures > 0).then(|| format!("error: {failures} invariant(s) failed"));
    Ok(Emit { body, code, note })
}
