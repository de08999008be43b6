//! The `rfgrow` command line.
//!
//! Every subcommand builds a report, then renders it as JSON (the default),
//! CSV or an aligned text table. Big integers are written as decimal strings.
//! Exit codes: 0 on success, 1 when the input violates a hypothesis of the
//! requested computation, 2 on usage and parse errors.

use std::fmt::Write as _;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};

use crate::depth::{case_audit, theorem_verify, Budget, DepthEngine, VerifyOptions, GROWTH_NODE_CAP};
use crate::error::{Error, Result};
use crate::finite::{
    derived_series, fitting_report, is_solvable, lemma31_check, lower_central_series, nilpotency_class,
    parse_perms, prime_power_base, FiniteGroup,
};
use crate::groups::{Group, GroupElement};
use crate::metrics::{
    ball, default_schedule, distortion_profile, word_length_bounds, word_length_exact, write_profile_csv,
    ProfileOptions,
};
use crate::numtheory::{chebyshev_psi, witness_exponent};

#[derive(Parser, Debug)]
#[command(name = "rfgrow", version, about = "Residual finiteness growth of solvable groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Omit the timestamp so identical flags give identical output.
    #[arg(long, global = true)]
    reproducible: bool,
    /// Worker threads for parallel stages.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sphere sizes of the Cayley ball.
    Ball {
        #[arg(long)]
        group: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=64))]
        radius: u32,
        #[arg(long, default_value_t = 2_000_000)]
        node_cap: usize,
    },
    /// Certified word-length interval, exact when BFS reaches the element.
    Wordlen {
        #[arg(long)]
        group: String,
        #[arg(long)]
        element: String,
        /// Also compute the exact length if it is at most this radius.
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, default_value_t = 2_000_000)]
        node_cap: usize,
    },
    /// Distortion profile of a cyclic subgroup.
    Distortion {
        #[arg(long)]
        group: String,
        /// Base element; defaults to the family's distinguished element.
        #[arg(long)]
        element: Option<String>,
        /// Largest exponent, decimal or `2^N`.
        #[arg(long, default_value = "2^64")]
        k_max: Exponent,
    },
    /// Depth interval `lower ≤ D(x) ≤ upper` with certificates.
    Depth {
        #[arg(long)]
        group: String,
        #[arg(long)]
        element: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Residual finiteness growth `F(n)` for `n = 1..=radius`.
    Growth {
        #[arg(long)]
        group: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=32))]
        radius: u32,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = GROWTH_NODE_CAP)]
        node_cap: usize,
    },
    /// Witness exponent `α_i` for the `i`-th prime and depth `m`.
    Witness {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=100_000))]
        i: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=16))]
        m: u32,
    },
    /// Structure of the permutation group generated by `--perms`.
    FiniteAnalyze {
        /// Generators as cycles, separated by `;`, e.g. `(0 1 2);(0 1)`.
        #[arg(long)]
        perms: String,
    },
    /// Tabulates `L_i / n_i^e` along the witness powers.
    TheoremVerify {
        #[arg(long)]
        group: String,
        /// Range of prime indices, `a..b` (inclusive).
        #[arg(long, default_value = "2..6")]
        i: IndexRange,
        /// Overrides the recorded ratio floor.
        #[arg(long)]
        ratio_floor: Option<f64>,
    },
    /// Checks that every small image kills `x^{α_i}`.
    CaseAudit {
        #[arg(long)]
        group: String,
        #[arg(long)]
        element: Option<String>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=1000))]
        i: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=16))]
        m: u32,
        /// Largest permutation degree searched.
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=16))]
        budget: u32,
    },
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Largest permutation degree for the homomorphism search.
    #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u32).range(1..=16))]
    budget: u32,
    /// Largest modulus for congruence quotients.
    #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u64).range(1..))]
    n_max: u64,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_degree: self.budget as usize,
            n_max: self.n_max,
        }
    }
}

/// A positive exponent given in decimal or as `2^N`.
#[derive(Clone, Debug)]
struct Exponent(BigUint);

impl FromStr for Exponent {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let v = match s.strip_prefix("2^") {
            Some(e) => {
                let e: u32 = e.parse().map_err(|_| format!("bad power of two `{s}`"))?;
                if e > 4096 {
                    return Err("exponent above 2^4096".into());
                }
                BigUint::one() << e
            }
            None => s.parse().map_err(|_| format!("bad exponent `{s}`"))?,
        };
        if v == BigUint::default() {
            return Err("exponent must be positive".into());
        }
        Ok(Exponent(v))
    }
}

/// `a..b` or `a..=b` (both inclusive), or a single index.
#[derive(Clone, Debug)]
struct IndexRange(RangeInclusive<usize>);

impl FromStr for IndexRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad index `{t}` in `{s}`"));
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => (num(s)?, num(s)?),
        };
        if a == 0 || a > b || b > 1000 {
            return Err(format!("index range `{s}` must satisfy 1 ≤ a ≤ b ≤ 1000"));
        }
        Ok(IndexRange(a..=b))
    }
}

/// Rows for CSV and table output.
struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(headers: Vec<&'static str>) -> Self {
        Table { headers, rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cells: &mut dyn Iterator<Item = &str>| {
            let parts: Vec<String> = cells.zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            let _ = writeln!(out, "{}", parts.join("  "));
        };
        line(&mut out, &mut self.headers.iter().copied());
        for r in &self.rows {
            line(&mut out, &mut r.iter().map(String::as_str));
        }
        out
    }

    fn csv(&self) -> Result<Vec<u8>> {
        let io = |e: csv::Error| Error::Parse(format!("csv: {e}"));
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        w.into_inner().map_err(|e| Error::Parse(format!("csv: {e}")))
    }
}

/// A command's result before rendering.
struct Report {
    command: &'static str,
    json: Value,
    /// Lines printed above the table in table format.
    summary: Vec<String>,
    table: Option<Table>,
    /// Overrides the generic CSV writer.
    csv: Option<Vec<u8>>,
}

impl Report {
    fn new(command: &'static str, body: impl Serialize) -> Result<Self> {
        Ok(Report {
            command,
            json: serde_json::to_value(body).map_err(|e| Error::Parse(format!("json: {e}")))?,
            summary: Vec::new(),
            table: None,
            csv: None,
        })
    }

    fn render(self, common: &Common) -> Result<Vec<u8>> {
        match common.format {
            Format::Json => {
                let mut v = self.json;
                if let Value::Object(map) = &mut v {
                    map.insert("command".into(), Value::from(self.command));
                    if !common.reproducible {
                        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
                        map.insert("timestamp".into(), Value::from(secs));
                    }
                }
                let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Parse(format!("json: {e}")))?;
                s.push('\n');
                Ok(s.into_bytes())
            }
            Format::Csv => match (self.csv, &self.table) {
                (Some(bytes), _) => Ok(bytes),
                (None, Some(t)) => t.csv(),
                (None, None) => Err(Error::Parse(format!(
                    "csv output is not available for `{}`; use json or table",
                    self.command
                ))),
            },
            Format::Table => {
                let mut s = String::new();
                for l in &self.summary {
                    let _ = writeln!(s, "{l}");
                }
                if let Some(t) = &self.table {
                    if !self.summary.is_empty() {
                        s.push('\n');
                    }
                    s.push_str(&t.render());
                }
                Ok(s.into_bytes())
            }
        }
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn element(group: &Group, text: Option<&str>) -> Result<GroupElement> {
    match text {
        Some(t) => group.evaluate(t),
        None => Ok(group.metadata().distinguished),
    }
}

fn cmd_ball(spec: &str, radius: u32, node_cap: usize) -> Result<Report> {
    let group = Group::parse(spec)?;
    let b = ball(&group, radius as usize, node_cap)?;
    let mut table = Table::new(vec!["r", "sphere", "ball"]);
    let mut prev = 0;
    for (r, &c) in b.counts().iter().enumerate() {
        table.push(vec![r.to_string(), (c - prev).to_string(), c.to_string()]);
        prev = c;
    }
    let mut rep = Report::new(
        "ball",
        json!({
            "group": group.spec().to_string(),
            "radius": b.radius(),
            "complete_radius": b.complete_radius(),
            "stop": b.stop(),
            "ball_sizes": b.counts(),
            "elements": b.len(),
        }),
    )?;
    rep.summary = vec![format!(
        "{}: {} elements, complete to radius {} of {}",
        group.spec(),
        b.len(),
        b.complete_radius(),
        b.radius()
    )];
    rep.table = Some(table);
    Ok(rep)
}

fn cmd_wordlen(spec: &str, text: &str, radius: Option<usize>, node_cap: usize) -> Result<Report> {
    let group = Group::parse(spec)?;
    let g = group.evaluate(text)?;
    let mut interval = word_length_bounds(&group, &g)?;
    let mut exact = None;
    if let Some(r) = radius {
        exact = word_length_exact(&group, &g, r, node_cap)?;
        if let Some(len) = exact {
            interval.lower = len as u128;
            interval.upper = interval.upper.min(len as u128);
        }
    }
    let mut rep = Report::new(
        "wordlen",
        json!({
            "group": group.spec().to_string(),
            "element": group.format_element(&g),
            "lower": interval.lower.to_string(),
            "upper": interval.upper.to_string(),
            "exact": exact,
            "lower_witness": interval.lower_witness,
            "upper_word": interval.upper_word,
        }),
    )?;
    rep.summary = vec![
        format!("‖{}‖ ∈ [{}, {}]", group.format_element(&g), interval.lower, interval.upper),
        format!("exact: {}", opt(exact)),
        format!("word: {}", interval.upper_word),
    ];
    Ok(rep)
}

fn cmd_distortion(spec: &str, text: Option<&str>, k_max: &Exponent) -> Result<Report> {
    let group = Group::parse(spec)?;
    let x = element(&group, text)?;
    let opts = ProfileOptions {
        k_max: k_max.0.clone(),
        ..ProfileOptions::default()
    };
    let profile = distortion_profile(&group, &x, &default_schedule(&opts), &opts)?;
    let mut csv = Vec::new();
    write_profile_csv(&profile, &mut csv)?;
    let mut table = Table::new(vec!["k", "lower", "upper", "witness_len"]);
    for s in &profile.samples {
        table.push(vec![
            s.k.to_string(),
            s.interval.lower.to_string(),
            s.interval.upper.to_string(),
            s.interval.upper_witness.len().to_string(),
        ]);
    }
    let mut summary = vec![format!("{} in {}: {:?}", profile.base, profile.group, profile.classification)];
    if let Some(k) = profile.kappa {
        summary.push(format!("f(n) = 2^(n/{k:.3})"));
    }
    let mut rep = Report::new("distortion", &profile)?;
    rep.summary = summary;
    rep.table = Some(table);
    rep.csv = Some(csv);
    Ok(rep)
}

fn cmd_depth(spec: &str, text: &str, budget: Budget) -> Result<Report> {
    let group = Group::parse(spec)?;
    let x = group.evaluate(text)?;
    let d = DepthEngine::new(&group, budget)?.depth_interval(&x)?;
    let mut body = serde_json::to_value(&d).map_err(|e| Error::Parse(format!("json: {e}")))?;
    if let Value::Object(map) = &mut body {
        map.insert("group".into(), Value::from(group.spec().to_string()));
        map.insert("element".into(), Value::from(group.format_element(&x)));
        map.insert("budget".into(), json!(budget));
    }
    let mut rep = Report::new("depth", body)?;
    rep.summary = vec![format!(
        "D({}) ∈ [{}, {}]{}",
        group.format_element(&x),
        d.lower,
        opt(d.upper),
        if d.exact { ", exact" } else { "" }
    )];
    if let Some(w) = d.upper_certificate() {
        rep.summary.push(format!("witness: order {} on {} points", w.order, w.degree));
    }
    Ok(rep)
}

fn cmd_growth(spec: &str, radius: u32, budget: Budget, node_cap: usize) -> Result<Report> {
    let group = Group::parse(spec)?;
    let t = DepthEngine::new(&group, budget)?.rf_growth(radius as usize, node_cap)?;
    let mut table = Table::new(vec!["n", "lower", "upper", "exact", "elements", "witness"]);
    for e in &t.entries {
        table.push(vec![
            e.radius.to_string(),
            e.lower.to_string(),
            opt(e.upper),
            e.exact.to_string(),
            e.elements.to_string(),
            e.witness_element.clone().unwrap_or_default(),
        ]);
    }
    let mut rep = Report::new("growth", &t)?;
    rep.summary = vec![format!("F for {} (B = {}, N = {})", t.group, budget.max_degree, budget.n_max)];
    rep.table = Some(table);
    Ok(rep)
}

fn cmd_witness(i: u32, m: u32) -> Result<Report> {
    let w = witness_exponent(i as usize, m);
    let alpha = w.value.to_string();
    let psi = chebyshev_psi(w.prime - 1);
    let mut table = Table::new(vec!["i", "m", "p", "alpha", "digits", "psi"]);
    table.push(vec![
        i.to_string(),
        m.to_string(),
        w.prime.to_string(),
        alpha.clone(),
        alpha.len().to_string(),
        format!("{psi:.6}"),
    ]);
    let mut rep = Report::new(
        "witness",
        json!({
            "i": i,
            "m": m,
            "p": w.prime,
            "alpha": alpha,
            "digits": alpha.len(),
            "psi": psi,
        }),
    )?;
    rep.table = Some(table);
    Ok(rep)
}

fn cmd_finite(perms: &str) -> Result<Report> {
    let gens = parse_perms(perms, 1)?;
    let g = FiniteGroup::generate(&gens)?;
    let whole = g.whole();
    let lcs = lower_central_series(&g, &whole);
    let ds = derived_series(&g, &whole);
    let solvable = is_solvable(&g);
    let fitting = if solvable { Some(fitting_report(&g)?) } else { None };
    let lemma31 = match prime_power_base(g.order()) {
        Some(_) if g.order() > 1 => Some(lemma31_check(&g)?),
        _ => None,
    };
    let mut rep = Report::new(
        "finite-analyze",
        json!({
            "degree": g.degree(),
            "order": g.order(),
            "generators": gens.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "solvable": solvable,
            "derived_series": ds.orders(),
            "derived_length": ds.length(),
            "lower_central_series": lcs.orders(),
            "nilpotency_class": nilpotency_class(&g, &whole),
            "fitting": fitting,
            "lemma31": lemma31,
        }),
    )?;
    let mut s = vec![
        format!("order {} on {} points", g.order(), g.degree()),
        format!("derived series {:?}", ds.orders()),
        format!("lower central series {:?}", lcs.orders()),
    ];
    if let Some(f) = &fitting {
        s.push(format!("Fitting subgroup of order {}", f.fitting.order));
    } else {
        s.push("not solvable".into());
    }
    rep.summary = s;
    Ok(rep)
}

fn cmd_verify(spec: &str, range: &IndexRange, floor: Option<f64>) -> Result<Report> {
    let group = Group::parse(spec)?;
    let opts = VerifyOptions {
        ratio_floor: floor,
        ..VerifyOptions::default()
    };
    let r = theorem_verify(&group, range.0.clone(), &opts)?;
    let mut table = Table::new(vec!["i", "p", "digits", "n_lower", "n_upper", "L", "ratio"]);
    for p in &r.points {
        table.push(vec![
            p.i.to_string(),
            p.p_i.to_string(),
            p.alpha_digits.to_string(),
            p.n_lower.to_string(),
            p.n_upper.to_string(),
            p.l.to_string(),
            format!("{:.6e}", p.ratio),
        ]);
    }
    let mut rep = Report::new("theorem-verify", &r)?;
    rep.summary = vec![
        format!("{}: m = {}, ratio L/n^{}", r.group, r.m, r.exponent),
        format!("min ratio {:.4e}, floor {:.4e}: {}", r.min_ratio, r.ratio_floor, r.conclusion),
    ];
    rep.table = Some(table);
    Ok(rep)
}

fn cmd_audit(spec: &str, text: Option<&str>, i: u32, m: u32, budget: u32) -> Result<Report> {
    let group = Group::parse(spec)?;
    let x = element(&group, text)?;
    let a = case_audit(&group, &x, i as usize, m, budget as usize)?;
    let mut rep = Report::new("case-audit", &a)?;
    rep.summary = vec![
        format!("{}^α, i = {}, p = {}, α = {}", a.base, a.i, a.p, a.alpha),
        format!(
            "{} images of order < {} examined, {} survivors{}",
            a.images_examined,
            a.order_limit,
            a.survivors.len(),
            if a.complete { "" } else { " (search stops below the bound)" }
        ),
    ];
    Ok(rep)
}

fn dispatch(command: &Command) -> Result<Report> {
    match command {
        Command::Ball { group, radius, node_cap } => cmd_ball(group, *radius, *node_cap),
        Command::Wordlen {
            group,
            element,
            radius,
            node_cap,
        } => cmd_wordlen(group, element, *radius, *node_cap),
        Command::Distortion { group, element, k_max } => cmd_distortion(group, element.as_deref(), k_max),
        Command::Depth { group, element, budget } => cmd_depth(group, element, budget.budget()),
        Command::Growth {
            group,
            radius,
            budget,
            node_cap,
        } => cmd_growth(group, *radius, budget.budget(), *node_cap),
        Command::Witness { i, m } => cmd_witness(*i, *m),
        Command::FiniteAnalyze { perms } => cmd_finite(perms),
        Command::TheoremVerify { group, i, ratio_floor } => cmd_verify(group, i, *ratio_floor),
        Command::CaseAudit {
            group,
            element,
            i,
            m,
            budget,
        } => cmd_audit(group, element.as_deref(), *i, *m, *budget),
    }
}

/// Exit status for an error: refusals are 1, everything else is a usage or
/// input problem.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Refused(_) => 1,
        _ => 2,
    }
}

/// Runs one command line (program name first) and returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let work = || dispatch(&cli.command).and_then(|r| r.render(&cli.common));
    let out = match cli.common.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j as usize).build() {
            Ok(pool) => pool.install(work),
            Err(e) => {
                eprintln!("rfgrow: cannot start {j} workers: {e}");
                return 2;
            }
        },
        None => work(),
    };
    let bytes = match out {
        Ok(b) => b,
        Err(e) => {
            eprintln!("rfgrow: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cli.common.output {
        Some(path) => std::fs::write(path, &bytes),
        None => std::io::stdout().lock().write_all(&bytes),
    };
    if let Err(e) = written {
        eprintln!("rfgrow: cannot write output: {e}");
        return 2;
    }
    0
}
