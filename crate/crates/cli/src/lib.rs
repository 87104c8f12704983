//! The `cayley` command line tool.
//!
//! Every command reads its inputs from files, writes its artifact to stdout
//! (or `--output`), and reports through the exit code: 0 for success or a
//! positive verdict, 1 for a negative verdict, 2 when a budget ran out before
//! a verdict, 3 for input errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::{json, Value};

use cayley_core::algebra::{axiom_check, cayley_graph, parse_table, Labeling, MagmaTable};
use cayley_core::classify::{
    classify, verify_certificate, CayleyClass, Certificate, ClassificationReport, Verdict,
};
use cayley_core::dot::to_dot;
use cayley_core::graph::check_user_label;
use cayley_core::isomorphism::IsoOptions;
use cayley_core::properties::{property_report, PropertyOptions, PropertyReport};
use cayley_core::rewriting::{parse_rws, parse_word, suffix_ball, word_name};
use cayley_core::synthesis::{
    chain_operation, edge_operation, extended_chain_operation, left_quasigroup_completion,
    path_operation, quasigroup_completion, SynthesisError, SynthesisOptions, SynthesizedOperation,
};
use cayley_core::Graph;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Prefix of the comment lines that carry ball boundary vertices.
pub const BOUNDARY_COMMENT: &str = "# boundary\t";

const DEFAULT_BUDGET: u64 = 1_000_000;
const DEFAULT_BALL_CAP: u64 = 100_000;

#[derive(Debug, Parser)]
#[command(
    name = "cayley",
    version,
    about = "Recognize generalized Cayley graphs and synthesize their operations"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Write the artifact here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    /// Default for both search budgets.
    #[arg(long, global = true, env = "CAYLEY_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,

    /// Candidate assignments per isomorphism search.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub iso_budget: Option<u64>,

    /// Nodes of the root completion search.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub search_budget: Option<u64>,

    /// Maximum number of vertices in a suffix ball.
    #[arg(long, global = true, default_value_t = DEFAULT_BALL_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    pub ball_cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Path,
    Chain,
    ExtendedChain,
    Edge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompletionMode {
    LeftQuasigroup,
    Quasigroup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Magma,
    LeftQuasigroup,
    Quasigroup,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a graph against every Cayley class.
    Classify {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write one certificate per positive class into this directory.
        #[arg(long)]
        cert_dir: Option<PathBuf>,
    },
    /// Read an operation off a graph.
    Synthesize {
        graph: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Witness vertex; defaults to the least vertex.
        #[arg(long)]
        at: Option<String>,
        /// Group table on the representatives, for extended-chain.
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build the Cayley graph of a table.
    Generate {
        #[arg(long)]
        table: PathBuf,
        /// Generating elements, comma separated; defaults to the carrier.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<String>>,
        /// Labels as q=a pairs, comma separated; defaults to the element names.
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<String>>,
    },
    /// Complete a graph to a left-quasigroup or quasigroup Cayley graph.
    Complete {
        graph: PathBuf,
        #[arg(long, value_enum)]
        mode: CompletionMode,
        /// 1-root used by the left-quasigroup completion; defaults to the least vertex.
        #[arg(long)]
        at: Option<String>,
    },
    /// Truncated suffix graph of a rewriting system.
    Ball {
        #[arg(long)]
        rules: PathBuf,
        /// Start word; `_` is the empty word.
        #[arg(long)]
        start: String,
        #[arg(long)]
        radius: usize,
        /// Append the property report of the ball as comments.
        #[arg(long)]
        report: bool,
    },
    /// Render a graph file as Graphviz DOT.
    ExportDot { graph: PathBuf },
    /// Check a certificate against a graph.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        graph: PathBuf,
    },
    /// Structural properties of a graph.
    Properties {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// A random table, reproducible from its seed.
    RandomTable {
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value = "magma")]
        kind: TableKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl RunConfig {
    pub fn synthesis_options(&self) -> SynthesisOptions {
        let base = self.budget.unwrap_or(DEFAULT_BUDGET);
        SynthesisOptions {
            iso: IsoOptions {
                budget: self.iso_budget.unwrap_or(base),
            },
            search_budget: self.search_budget.unwrap_or(base),
        }
    }
}

/// A failure that still maps to a verdict exit code.
#[derive(Debug)]
struct Exit(i32, String);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Exit {}

/// Runs one command. Diagnostics go to `err`.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(config) {
        Ok((artifact, code)) => {
            let written = match &config.output {
                Some(path) => fs::write(path, &artifact)
                    .with_context(|| format!("writing {}", path.display())),
                None => out.write_all(artifact.as_bytes()).context("writing output"),
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(err, "error: {e:#}");
                    EXIT_INPUT
                }
            }
        }
        Err(e) => {
            let code = e.downcast_ref::<Exit>().map_or(EXIT_INPUT, |x| x.0);
            let _ = writeln!(err, "error: {e:#}");
            code
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    Graph::parse(&read(path)?).with_context(|| format!("parsing graph {}", path.display()))
}

fn read_table(path: &Path) -> anyhow::Result<MagmaTable> {
    parse_table(&read(path)?).with_context(|| format!("parsing table {}", path.display()))
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Yes => EXIT_OK,
        Verdict::No => EXIT_NO,
        Verdict::Undecided => EXIT_UNDECIDED,
    }
}

/// Precondition failures are negative verdicts, exhausted budgets are
/// undecided, everything else is an input error.
fn synthesis_failure(e: SynthesisError) -> anyhow::Error {
    let code = match e {
        SynthesisError::Precondition { .. } | SynthesisError::ReplayDeadEnd { .. } => EXIT_NO,
        SynthesisError::Undecided(_) | SynthesisError::SearchBudgetExceeded(_) => EXIT_UNDECIDED,
        _ => EXIT_INPUT,
    };
    Exit(code, e.to_string()).into()
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn execute(config: &RunConfig) -> anyhow::Result<(String, i32)> {
    let opts = config.synthesis_options();
    match &config.command {
        Command::Classify {
            graph,
            format,
            cert_dir,
        } => {
            let g = read_graph(graph)?;
            let report = classify(&g, &opts);
            let paths = match cert_dir {
                Some(dir) => write_certificates(&report, dir)?,
                None => BTreeMap::new(),
            };
            let text = match format {
                Format::Json => pretty(&classification_json(&report, &paths)),
                Format::Text => classification_text(&report, &paths),
            };
            Ok((text, verdict_code(report.overall())))
        }
        Command::Synthesize {
            graph,
            kind,
            at,
            group,
            format,
        } => {
            let g = read_graph(graph)?;
            let at = at.clone().unwrap_or_else(|| g.vertex_name(0).to_string());
            let op = match kind {
                Kind::Path => path_operation(&g, &at, &opts),
                Kind::Chain => chain_operation(&g, &at, &opts),
                Kind::Edge => edge_operation(&g, &at, &opts),
                Kind::ExtendedChain => {
                    let table = group.as_deref().map(read_table).transpose()?;
                    extended_chain_operation(&g, table.as_ref(), &opts)
                }
            }
            .map_err(synthesis_failure)?;
            let text = match format {
                Format::Json => pretty(&serde_json::to_value(&op)?),
                Format::Text => operation_text(&op),
            };
            Ok((text, EXIT_OK))
        }
        Command::Generate {
            table,
            subset,
            labels,
        } => {
            let m = read_table(table)?;
            let lab = generation_labeling(&m, subset.as_deref(), labels.as_deref())?;
            for (_, a) in lab.pairs() {
                check_user_label(a)?;
            }
            Ok((cayley_graph(&m, &lab)?.to_tsv(), EXIT_OK))
        }
        Command::Complete { graph, mode, at } => {
            let g = read_graph(graph)?;
            let completed = match mode {
                CompletionMode::LeftQuasigroup => {
                    let at = at.clone().unwrap_or_else(|| g.vertex_name(0).to_string());
                    left_quasigroup_completion(&g, &at)
                }
                CompletionMode::Quasigroup => quasigroup_completion(&g),
            }
            .map_err(synthesis_failure)?;
            Ok((completed.to_tsv(), EXIT_OK))
        }
        Command::Ball {
            rules,
            start,
            radius,
            report,
        } => {
            let system = parse_rws(&read(rules)?)
                .with_context(|| format!("parsing rules {}", rules.display()))?;
            let start = parse_word(start)?;
            let ball = suffix_ball(&system, &start, *radius, config.ball_cap as usize)?;
            let mut text = format!(
                "# suffix ball around {} of radius {radius}\n",
                word_name(&start)
            );
            for v in &ball.marks {
                text.push_str(BOUNDARY_COMMENT);
                text.push_str(v);
                text.push('\n');
            }
            if let Some(g) = &ball.graph {
                text.push_str(&g.to_tsv());
                if *report {
                    text.push_str(
                        "# advisory: properties of the truncated ball, not of the suffix graph\n",
                    );
                    for line in
                        properties_text(&property_report(g, &PropertyOptions::default())).lines()
                    {
                        text.push_str("# ");
                        text.push_str(line);
                        text.push('\n');
                    }
                }
            }
            Ok((text, EXIT_OK))
        }
        Command::ExportDot { graph } => {
            let text = read(graph)?;
            let marks: Vec<String> = text
                .lines()
                .filter_map(|l| l.strip_prefix(BOUNDARY_COMMENT))
                .map(str::to_string)
                .collect();
            let g = if text.lines().any(|l| !l.is_empty() && !l.starts_with('#')) {
                Some(
                    Graph::parse(&text)
                        .with_context(|| format!("parsing graph {}", graph.display()))?,
                )
            } else if marks.is_empty() {
                bail!(
                    "{} holds no edges and no boundary vertices",
                    graph.display()
                );
            } else {
                None
            };
            Ok((to_dot(g.as_ref(), &marks), EXIT_OK))
        }
        Command::Verify { cert, graph } => {
            let g = read_graph(graph)?;
            let c: Certificate = serde_json::from_str(&read(cert)?)
                .with_context(|| format!("parsing certificate {}", cert.display()))?;
            if verify_certificate(&g, &c)? {
                Ok((format!("verified {}\n", c.target_class), EXIT_OK))
            } else {
                Err(Exit(
                    EXIT_NO,
                    format!("certificate for {} does not hold", c.target_class),
                )
                .into())
            }
        }
        Command::Properties { graph, format } => {
            let g = read_graph(graph)?;
            let report = property_report(&g, &PropertyOptions::default());
            let text = match format {
                Format::Json => pretty(&serde_json::to_value(&report)?),
                Format::Text => properties_text(&report),
            };
            Ok((text, EXIT_OK))
        }
        Command::RandomTable { size, kind, seed } => {
            if *size == 0 {
                bail!("table size must be positive");
            }
            Ok((random_table(*size, *kind, *seed).to_text(), EXIT_OK))
        }
    }
}

fn generation_labeling(
    m: &MagmaTable,
    subset: Option<&[String]>,
    labels: Option<&[String]>,
) -> anyhow::Result<Labeling> {
    let mut named: BTreeMap<String, String> = BTreeMap::new();
    for pair in labels.unwrap_or_default() {
        let (q, a) = pair
            .split_once('=')
            .with_context(|| format!("label {pair:?} is not of the form q=a"))?;
        if named.insert(q.to_string(), a.to_string()).is_some() {
            bail!("element {q:?} is labeled twice");
        }
    }
    let subset: Vec<String> = match (subset, labels) {
        (Some(s), _) => s.to_vec(),
        (None, Some(_)) => named.keys().cloned().collect(),
        (None, None) => m.carrier().to_vec(),
    };
    for q in named.keys() {
        if !subset.contains(q) {
            bail!("labeled element {q:?} is not in the subset");
        }
    }
    let pairs: Vec<(String, String)> = subset
        .iter()
        .map(|q| {
            if m.index_of(q).is_none() {
                bail!("unknown element {q:?}");
            }
            Ok((
                q.clone(),
                named.get(q).cloned().unwrap_or_else(|| q.clone()),
            ))
        })
        .collect::<anyhow::Result<_>>()?;
    Ok(Labeling::new(pairs)?)
}

fn write_certificates(
    report: &ClassificationReport,
    dir: &Path,
) -> anyhow::Result<BTreeMap<CayleyClass, String>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut paths = BTreeMap::new();
    for (class, outcome) in &report.classes {
        if let Some(cert) = &outcome.certificate {
            let path = dir.join(format!("{}.json", class.name()));
            fs::write(&path, pretty(&serde_json::to_value(cert)?))
                .with_context(|| format!("writing {}", path.display()))?;
            paths.insert(*class, path.display().to_string());
        }
    }
    Ok(paths)
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undecided",
    }
}

fn classification_json(
    report: &ClassificationReport,
    paths: &BTreeMap<CayleyClass, String>,
) -> Value {
    let mut predicates: BTreeMap<&str, Value> = report
        .properties
        .flags()
        .into_iter()
        .map(|(k, v)| (k, Value::Bool(v)))
        .collect();
    predicates.insert("arcSymmetric", json!(report.arc_symmetric));
    predicates.insert("symmetric", json!(report.symmetric));
    let mut verdicts = BTreeMap::new();
    let mut classes = BTreeMap::new();
    for (class, outcome) in &report.classes {
        verdicts.insert(class.name(), outcome.verdict.as_str());
        let conditions: BTreeMap<&str, Option<bool>> = outcome
            .conditions
            .iter()
            .map(|c| (c.name, c.holds))
            .collect();
        classes.insert(
            class.name(),
            json!({
                "verdict": outcome.verdict.as_str(),
                "conditions": conditions,
                "diagnostics": outcome.diagnostics,
                "certificatePath": paths.get(class),
            }),
        );
    }
    json!({
        "vertices": report.properties.vertex_count,
        "edges": report.properties.edge_count,
        "labels": report.properties.label_count,
        "predicates": predicates,
        "witnesses": report.properties.witnesses,
        "verdicts": verdicts,
        "classes": classes,
        "overall": report.overall().as_str(),
    })
}

fn classification_text(
    report: &ClassificationReport,
    paths: &BTreeMap<CayleyClass, String>,
) -> String {
    let mut s = properties_text(&report.properties);
    s.push_str(&format!("arcSymmetric\t{}\n", yes_no(report.arc_symmetric)));
    s.push_str(&format!("symmetric\t{}\n", yes_no(report.symmetric)));
    for (class, outcome) in &report.classes {
        s.push_str(&format!("\n{class}\t{}\n", outcome.verdict));
        for c in &outcome.conditions {
            s.push_str(&format!("  {}\t{}\n", c.name, yes_no(c.holds)));
        }
        for d in &outcome.diagnostics {
            s.push_str(&format!("  ! {d}\n"));
        }
        if let Some(p) = paths.get(class) {
            s.push_str(&format!("  certificate\t{p}\n"));
        }
    }
    s.push_str(&format!("\noverall\t{}\n", report.overall()));
    s
}

fn properties_text(p: &PropertyReport) -> String {
    let mut s = format!(
        "vertices\t{}\nedges\t{}\nlabels\t{}\n",
        p.vertex_count, p.edge_count, p.label_count
    );
    for (flag, holds) in p.flags() {
        s.push_str(&format!("{flag}\t{}\n", yes_no(Some(holds))));
        if let Some(w) = p.witness(flag) {
            s.push_str(&format!("  ! {w}\n"));
        }
    }
    s.push_str(&format!("roots\t{}\n", p.roots.join(" ")));
    s.push_str(&format!("1-roots\t{}\n", p.one_roots.join(" ")));
    s
}

fn operation_text(op: &SynthesizedOperation) -> String {
    let mut s = format!("# {:?} operation\n", op.kind).to_lowercase();
    s.push_str(&op.table.to_text());
    match &op.labeling {
        Some(lab) => {
            s.push_str("# labeling\n");
            for (q, a) in lab.pairs() {
                s.push_str(&format!("# {q}\t{a}\n"));
            }
        }
        None => s.push_str("# no injective labeling at the witness\n"),
    }
    let failed: Vec<_> = axiom_check(&op.table)
        .witnesses
        .into_iter()
        .map(|(k, w)| format!("# {k} fails: {w}\n"))
        .collect();
    s.extend(failed);
    s
}

/// A random table over `x1..xn`; left quasigroups get a random permutation
/// per row, quasigroups a cyclic Latin square with shuffled rows, columns
/// and symbols.
pub fn random_table(n: usize, kind: TableKind, seed: u64) -> MagmaTable {
    let mut rng = StdRng::seed_from_u64(seed);
    let carrier: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let cells: Vec<usize> = match kind {
        TableKind::Magma => (0..n * n)
            .map(|_| rand::Rng::gen_range(&mut rng, 0..n))
            .collect(),
        TableKind::LeftQuasigroup => (0..n)
            .flat_map(|_| {
                let mut row: Vec<usize> = (0..n).collect();
                row.shuffle(&mut rng);
                row
            })
            .collect(),
        TableKind::Quasigroup => {
            let mut perms: Vec<Vec<usize>> = (0..3)
                .map(|_| {
                    let mut p: Vec<usize> = (0..n).collect();
                    p.shuffle(&mut rng);
                    p
                })
                .collect();
            let (sym, col, row) = (
                perms.pop().unwrap(),
                perms.pop().unwrap(),
                perms.pop().unwrap(),
            );
            let mut cells = vec![0; n * n];
            for i in 0..n {
                for j in 0..n {
                    cells[row[i] * n + col[j]] = sym[(i + j) % n];
                }
            }
            cells
        }
    };
    MagmaTable::from_fn(&carrier, |i, j| cells[i * n + j]).expect("generated names are valid")
}
