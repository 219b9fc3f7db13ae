mod args;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;
use thiserror::Error;

use args::*;
use trinet::analysis::{self, AnalysisError, GeodesicSets, Series};
use trinet::catalog::{self, CATALOG};
use trinet::classify::sweep::{self as sw, SweepConfig, SweepError};
use trinet::classify::{classify, Budget, ClassLabel};
use trinet::io::{parse_trinet, to_dot, to_graphml, write_state, write_trinet};
use trinet::worddyn::{self, CheckReport};
use trinet::{format_rule, parse_rule, InitialCondition, OptionTable, Rule, RuleId, SurroundingsType, SystemState};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Verify(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io { .. } => 4,
            CliError::Verify(_) => 5,
        }
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Io { path, source } => CliError::Io { path, source },
            SweepError::Json(_) | SweepError::Pool(_) => CliError::Io { path: PathBuf::new(), source: std::io::Error::other(e.to_string()) },
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::TooLarge { .. } => CliError::Budget(e.to_string()),
            AnalysisError::Io(source) => CliError::Io { path: PathBuf::new(), source },
            other => CliError::Config(other.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn stdout(text: &str) -> Result<()> {
    std::io::stdout()
        .lock()
        .write_all(text.as_bytes())
        .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
}

fn table(global: &GlobalArgs) -> Result<OptionTable> {
    match &global.option_table {
        None => Ok(OptionTable::standard()),
        Some(path) => {
            let t = OptionTable::parse(&read(path)?).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            t.validate().map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            Ok(t)
        }
    }
}

fn budget(global: &GlobalArgs) -> Result<Budget> {
    if global.budget_steps == 0 || global.budget_vertices == 0 {
        return Err(CliError::Config("budgets must be positive".into()));
    }
    Ok(Budget { max_steps: global.budget_steps, max_vertices: global.budget_vertices, ..Budget::default() })
}

fn rule(src: &RuleSource, table: &OptionTable) -> Result<Rule> {
    let parse = |text: &str| {
        parse_rule(text).map_err(|e| CliError::Config(format!("rule: {e}\n  {text}\n  {:>width$}", "^", width = e.position() + 1)))
    };
    if let Some(text) = &src.rule {
        return parse(text);
    }
    if let Some(id) = src.rule_id {
        if id >= table.len() {
            return Err(CliError::Config(format!("rule id {id} is outside the table of {} rules", table.len())));
        }
        return Ok(table.decode(RuleId(id)));
    }
    if let Some(path) = &src.rule_file {
        return parse(read(path)?.trim());
    }
    let name = src.rule_name.as_deref().unwrap_or_default();
    catalog::by_name(name)
        .map(|r| r.rule())
        .ok_or_else(|| CliError::Config(format!("no rule named {name:?}; see `trinet rules`")))
}

fn load_state(path: &Path) -> Result<SystemState> {
    let text = read(path)?;
    let file = parse_trinet(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    file.into_state().map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn init(spec: &str) -> Result<InitialCondition> {
    Ok(match spec {
        "cube" => InitialCondition::Cube,
        "k33" => InitialCondition::K33,
        path => InitialCondition::Custom { name: path.to_string(), state: load_state(Path::new(path))? },
    })
}

fn rule_summary(rule: &Rule, table: &OptionTable) -> serde_json::Value {
    json!({
        "rule_text": format_rule(rule),
        "rule_id": table.encode(rule).map(|id| id.0),
    })
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn simulate(global: &GlobalArgs, a: &SimulateArgs) -> Result<()> {
    let table = table(global)?;
    let budget = budget(global)?;
    let rule = rule(&a.rule, &table)?;
    let init = init(&a.init)?;
    if !a.series.is_empty() && a.out.is_none() {
        return Err(CliError::Config("--series needs --out".into()));
    }
    let steps = a.steps.unwrap_or(budget.max_steps);
    if steps > budget.max_steps {
        return Err(CliError::Budget(format!("{steps} steps requested, budget is {}", budget.max_steps)));
    }

    let mut s = init.state();
    let mut vertices = Series::new("vertices");
    let mut writer = Series::new("writer");
    let mut anomalies = Vec::new();
    vertices.push(0, s.vertex_count() as f64);
    writer.push(0, s.writer as f64);
    for _ in 0..steps {
        let r = s.step(&rule);
        if let Some(msg) = r.anomaly() {
            if anomalies.len() < 16 {
                anomalies.push(msg);
            }
        }
        if s.vertex_count() > budget.max_vertices {
            return Err(CliError::Budget(format!(
                "{} vertices at t={}, budget is {}",
                s.vertex_count(),
                s.time,
                budget.max_vertices
            )));
        }
        vertices.push(s.time, s.vertex_count() as f64);
        writer.push(s.time, s.writer as f64);
    }

    let mut summary = rule_summary(&rule, &table);
    let extra = json!({
        "init": init.name(),
        "steps": steps,
        "final_vertices": s.vertex_count(),
        "writer": s.writer,
        "writer_type": s.writer_type().map(|t| t.to_string()).unwrap_or_else(|_| "multilinked".into()),
        "anomalies": anomalies,
    });
    summary.as_object_mut().unwrap().extend(extra.as_object().unwrap().clone());

    if let Some(dir) = &a.out {
        fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
        write(&dir.join("final.trinet"), &write_state(&s))?;
        write(&dir.join("summary.json"), &pretty(&summary))?;
        for kind in &a.series {
            let series = match kind {
                SeriesKind::Vertices => vertices.clone(),
                SeriesKind::Writer => writer.clone(),
                SeriesKind::Deviation => analysis::linear_fit_deviation(&vertices)?,
            };
            let name = match kind {
                SeriesKind::Vertices => "vertices.csv",
                SeriesKind::Writer => "writer.csv",
                SeriesKind::Deviation => "deviation.csv",
            };
            let path = dir.join(name);
            let f = fs::File::create(&path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            series.write_csv(f).map_err(|e| CliError::Io { path, source: std::io::Error::other(e.to_string()) })?;
        }
    }
    stdout(&pretty(&summary))
}

fn classify_cmd(global: &GlobalArgs, a: &ClassifyArgs) -> Result<()> {
    let table = table(global)?;
    let budget = budget(global)?;
    let rule = rule(&a.rule, &table)?;
    let init = init(&a.init)?;
    let c = classify(&rule, &init.state(), &budget);
    let mut out = rule_summary(&rule, &table);
    out["init"] = json!(init.name());
    out["class"] = json!(c.label.name());
    out["description"] = json!(c.label.to_string());
    out["classification"] = serde_json::to_value(&c).expect("classification serializes");
    stdout(&pretty(&out))?;
    if let ClassLabel::Unresolved { budget_used } = c.label {
        return Err(CliError::Budget(format!("unresolved after {budget_used} steps")));
    }
    Ok(())
}

fn parse_range(text: &str, what: &str) -> Result<(u64, u64)> {
    let bad = || CliError::Config(format!("{what}: expected a range like 2..9, got {text:?}"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn sweep_cmd(global: &GlobalArgs, a: &SweepArgs) -> Result<()> {
    let mut config = SweepConfig::new(init(&a.init)?, budget(global)?);
    config.table = table(global)?;
    config.range = match &a.range {
        Some(r) => {
            let (s, e) = parse_range(r, "--range")?;
            let conv = |v: u64| u32::try_from(v).map_err(|_| CliError::Config(format!("--range: {v} is too large")));
            conv(s)?..conv(e)?
        }
        None => 0..config.table.len(),
    };
    config.threads = a.threads;
    config.conjugate_dedup = a.conjugate_dedup;
    let summary = sw::sweep_to_dir(&config, &a.out, a.resume)?;
    let text = pretty(&serde_json::to_value(&summary).expect("summary serializes"));
    write(&a.out.join("summary.json"), &text)?;
    stdout(&text)
}

fn analyze(a: &AnalyzeArgs) -> Result<()> {
    let s = load_state(&a.file)?;
    let adj = analysis::adjacency(&s.graph);
    let sets = match a.geodesics {
        Geodesics::All => GeodesicSets::AllGeodesics,
        Geodesics::Single => GeodesicSets::SinglePath,
    };
    let text = match a.metric {
        Metric::Diameter => format!("diameter {}\n", analysis::diameter(&adj)?),
        Metric::Delta => format!("delta {}\n", analysis::gromov_delta(&adj, sets, a.limit)?),
        Metric::Ratio => {
            let r = analysis::scaled_hyperbolic(&adj, sets, a.limit)?;
            let (p, q) = r.ratio;
            format!(
                "delta {}\ndiameter {}\nratio {p}/{q} {:.5}\nscaled_hyperbolic {}\n",
                r.delta,
                r.diameter,
                p as f64 / q as f64,
                r.is_scaled_hyperbolic
            )
        }
        Metric::ShellDimension => {
            let root = a.root.unwrap_or(s.writer);
            if !s.graph.contains(root) {
                return Err(CliError::Config(format!("root {root} is not a vertex")));
            }
            format!("shell_dimension {:.5}\n", analysis::shell_dimension(&adj, root)?)
        }
    };
    stdout(&text)
}

fn verify(a: &VerifyArgs) -> Result<()> {
    let range = |given: &Option<String>, flag: &str, default: (u64, u64), min: u64| -> Result<u64> {
        let (lo, hi) = match given {
            Some(text) => parse_range(text, flag)?,
            None => default,
        };
        if lo < min {
            return Err(CliError::Config(format!("{flag}: range must start at {min} or later")));
        }
        Ok(hi)
    };
    let cyclic = worddyn::simple_cyclic_rule();
    let reports: Vec<CheckReport> = match a.which {
        Which::Theorem1 => {
            let n = range(&a.n, "--n", (2, 9), 2)?;
            let linked = [SurroundingsType::Red, SurroundingsType::Blue];
            vec![worddyn::global_replacement_check(&cyclic, n as u32, worddyn::of_types(&linked))]
        }
        Which::Theorem2 => {
            let t = range(&a.t, "--t", (0, 10_000), 0)?;
            vec![
                worddyn::golden_count_check(t),
                worddyn::golden_rule_check(&worddyn::golden_rule(), t),
            ]
        }
        Which::Hstate => vec![worddyn::closed_form_check(&cyclic, range(&a.t, "--t", (2, 5_000), 2)?)],
        Which::Lemmas => {
            let t = range(&a.t, "--t", (1, 2_000), 1)?;
            let n = range(&a.n, "--n", (1, 12), 1)? as u32;
            let i = range(&a.i, "--i", (0, 100_000), 0)?;
            vec![
                worddyn::cycle_word_check(&cyclic, t),
                worddyn::word_system_check(t),
                worddyn::reversed_blocks_check(i as usize + 1),
                worddyn::concatenation_check(n),
                worddyn::toggle_check(&worddyn::random_block_sequences(1000, a.seed)),
                worddyn::toggle_reverse_check(n),
                worddyn::last_letter_check(i),
            ]
        }
        Which::Golden => vec![worddyn::last_letter_check(range(&a.i, "--i", (0, 100_000), 0)?)],
    };
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!("{r}\n"));
    }
    stdout(&text)?;
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(CliError::Verify(format!("{failed} of {} checks failed", reports.len())));
    }
    Ok(())
}

fn export(a: &ExportArgs) -> Result<()> {
    let s = load_state(&a.file)?;
    let text = match a.format {
        Format::Dot => to_dot(&s.graph, Some(s.writer)),
        Format::Graphml => to_graphml(&s.graph, Some(s.writer)),
        Format::Trinet => write_trinet(&s.graph, Some(s.writer)),
    };
    match &a.out {
        Some(path) => write(path, &text),
        None => stdout(&text),
    }
}

fn rules() -> Result<()> {
    let mut text = String::new();
    for r in CATALOG {
        text.push_str(&format!("{:<20} {:>4}  {:<10?}  {}\n", r.name, r.id.0, r.provenance, r.text));
    }
    stdout(&text)
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Simulate(a) => simulate(&cli.global, a),
        Command::Classify(a) => classify_cmd(&cli.global, a),
        Command::Sweep(a) => sweep_cmd(&cli.global, a),
        Command::Analyze(a) => analyze(a),
        Command::Verify(a) => verify(a),
        Command::Export(a) => export(a),
        Command::Rules => rules(),
        Command::Table => stdout(&table(&cli.global)?.to_text()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("trinet: {e}");
            ExitCode::from(e.code())
        }
    }
}
