//! Parallel sweeps over the rule space.
//!
//! A sweep classifies every rule id in a range and writes one JSON line per
//! rule, in id order, whatever the number of worker threads. Alongside the
//! records it keeps a manifest naming the option table (by digest), the
//! initial condition, the budget and the id ranges already written, so an
//! interrupted sweep can be resumed.

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{classify, Budget, ClassLabel, Classification, WriterMotion};
use crate::iso::rooted_iso;
use crate::rule::format_rule;
use crate::sim::InitialCondition;
use crate::space::{OptionTable, RuleId, TableError};

pub const RECORD_SCHEMA: &str = "trinet.sweep.record/1";
pub const MANIFEST_SCHEMA: &str = "trinet.sweep.manifest/1";
pub const RECORDS_FILE: &str = "records.jsonl";
pub const MANIFEST_FILE: &str = "manifest.json";
/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "TRINET_THREADS";
const CHUNK: u32 = 64;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("bad record or manifest: {0}")]
    Json(#[from] serde_json::Error),
    #[error("existing manifest does not match this sweep: {0}")]
    ManifestMismatch(String),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("could not start worker pool: {0}")]
    Pool(String),
    #[error("conjugate deduplication: {0}")]
    Dedup(String),
    #[error("rule id range {start}..{end} is outside the table of {len} rules")]
    Range { start: u32, end: u32, len: u32 },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> SweepError + '_ {
    move |source| SweepError::Io { path: path.to_path_buf(), source }
}

/// One line of sweep output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub schema: String,
    pub rule_id: RuleId,
    pub rule_text: String,
    pub init: String,
    pub class: String,
    pub label: ClassLabel,
    pub transient: Option<u64>,
    pub period: Option<u64>,
    pub certificate_radius: Option<usize>,
    pub final_vertices: usize,
    pub steps_used: u64,
    pub green_halt: bool,
    pub anomalies: Vec<String>,
}

impl SweepRecord {
    pub fn new(id: RuleId, rule_text: String, init: &str, c: &Classification) -> Self {
        let (transient, period, radius) = match c.label {
            ClassLabel::Repetitive { period, transient, radius } => (Some(transient), Some(period), Some(radius)),
            ClassLabel::Fixed { writer: WriterMotion::Periodic(p), settled } => (Some(settled), Some(p), None),
            ClassLabel::Fixed { writer: WriterMotion::Halted, settled } => (Some(settled), None, None),
            ClassLabel::Oscillating { period, transient } => (Some(transient), Some(period), None),
            _ => (None, None, None),
        };
        SweepRecord {
            schema: RECORD_SCHEMA.to_string(),
            rule_id: id,
            rule_text,
            init: init.to_string(),
            class: c.label.name().to_string(),
            label: c.label,
            transient,
            period,
            certificate_radius: radius,
            final_vertices: c.final_vertices,
            steps_used: c.steps_used,
            green_halt: c.green_halt,
            anomalies: c.anomalies.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: String,
    pub table_digest: String,
    pub init: String,
    pub budget: Budget,
    pub range: (u32, u32),
    /// Half-open id ranges whose records are in the records file.
    pub completed: Vec<(u32, u32)>,
}

impl Manifest {
    fn completed_count(&self) -> u32 {
        self.completed.iter().map(|(a, b)| b - a).sum()
    }

    fn is_done(&self, id: u32) -> bool {
        self.completed.iter().any(|&(a, b)| (a..b).contains(&id))
    }

    fn mark(&mut self, r: Range<u32>) {
        match self.completed.last_mut() {
            Some(last) if last.1 == r.start => last.1 = r.end,
            _ => self.completed.push((r.start, r.end)),
        }
    }
}

/// Counts over a set of records.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub total: usize,
    pub classes: BTreeMap<String, usize>,
    /// Fixed rules whose writer halted on a green link.
    pub green_halt: usize,
    /// Fixed rules whose writer halted for another reason.
    pub other_halt: usize,
    /// Fixed rules with a moving writer, by writer period.
    pub writer_periods: BTreeMap<u64, usize>,
    pub movements: BTreeMap<String, usize>,
    /// Repetitive rules by certified period.
    pub repetitive_periods: BTreeMap<u64, usize>,
    /// Repetitive rules with period at least 12 or transient at least 40.
    pub repetitive_outliers: Vec<RuleId>,
    pub max_transient: Option<(u64, RuleId)>,
    pub max_period: Option<(u64, RuleId)>,
    pub unresolved: Vec<RuleId>,
    pub anomalous: usize,
}

impl SweepSummary {
    pub fn count(&self, class: &str) -> usize {
        self.classes.get(class).copied().unwrap_or(0)
    }
}

pub fn summarize<'a>(records: impl IntoIterator<Item = &'a SweepRecord>) -> SweepSummary {
    let mut s = SweepSummary::default();
    let keep_max = |slot: &mut Option<(u64, RuleId)>, v: u64, id: RuleId| {
        if slot.is_none_or(|(best, _)| v > best) {
            *slot = Some((v, id));
        }
    };
    for r in records {
        s.total += 1;
        *s.classes.entry(r.class.clone()).or_default() += 1;
        if !r.anomalies.is_empty() {
            s.anomalous += 1;
        }
        match r.label {
            ClassLabel::Fixed { writer: WriterMotion::Halted, .. } => {
                if r.green_halt {
                    s.green_halt += 1;
                } else {
                    s.other_halt += 1;
                }
            }
            ClassLabel::Fixed { writer: WriterMotion::Periodic(p), .. } => *s.writer_periods.entry(p).or_default() += 1,
            ClassLabel::Repetitive { period, transient, .. } => {
                *s.repetitive_periods.entry(period).or_default() += 1;
                if period >= 12 || transient >= 40 {
                    s.repetitive_outliers.push(r.rule_id);
                }
                keep_max(&mut s.max_transient, transient, r.rule_id);
                keep_max(&mut s.max_period, period, r.rule_id);
            }
            ClassLabel::Elaborate { movement } => *s.movements.entry(movement.to_string()).or_default() += 1,
            ClassLabel::Unresolved { .. } => s.unresolved.push(r.rule_id),
            ClassLabel::Oscillating { .. } => {}
        }
    }
    s
}

/// Worker count: an explicit value, else `TRINET_THREADS`, else rayon's
/// default.
pub fn thread_count(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()))
        .filter(|&n| n > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

/// Settings for [`sweep`].
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub table: OptionTable,
    pub init: InitialCondition,
    pub budget: Budget,
    pub range: Range<u32>,
    pub threads: Option<usize>,
    /// Classify one rule of each red/blue-conjugate pair and derive the
    /// other's record; every [`DEDUP_CHECK_STRIDE`]th derived record is
    /// recomputed directly and compared.
    pub conjugate_dedup: bool,
}

pub const DEDUP_CHECK_STRIDE: u32 = 16;

impl SweepConfig {
    pub fn new(init: InitialCondition, budget: Budget) -> Self {
        let table = OptionTable::standard();
        let range = 0..table.len();
        SweepConfig { table, init, budget, range, threads: None, conjugate_dedup: false }
    }

    fn manifest(&self) -> Manifest {
        Manifest {
            schema: MANIFEST_SCHEMA.to_string(),
            table_digest: self.table.digest(),
            init: self.init.name().to_string(),
            budget: self.budget,
            range: (self.range.start, self.range.end),
            completed: Vec::new(),
        }
    }
}

/// Classifies one rule of the table.
pub fn sweep_one(table: &OptionTable, id: RuleId, init: &InitialCondition, budget: &Budget) -> SweepRecord {
    let rule = table.decode(id);
    let c = classify(&rule, &init.state(), budget);
    SweepRecord::new(id, format_rule(&rule), init.name(), &c)
}

/// Classifies the configured range in parallel and hands the records to
/// `sink` in id order, one chunk at a time.
pub fn sweep_range(
    config: &SweepConfig,
    ids: Range<u32>,
    mut sink: impl FnMut(Range<u32>, &[SweepRecord]) -> Result<(), SweepError>,
) -> Result<(), SweepError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count(config.threads))
        .build()
        .map_err(|e| SweepError::Pool(e.to_string()))?;
    if config.conjugate_dedup {
        let init = config.init.state();
        if !rooted_iso(&init.graph, init.writer, &init.conjugate().graph, init.writer) {
            return Err(SweepError::Dedup("the initial state is not red/blue symmetric".into()));
        }
    }
    let conj = |i: u32| -> Result<u32, SweepError> {
        let r = config.table.decode(RuleId(i)).conjugate();
        config.table.encode(&r).map(|c| c.0).ok_or_else(|| SweepError::Dedup(format!("rule {i} has no conjugate in the table")))
    };
    let classify_ids = |ids: &[u32]| -> Vec<SweepRecord> {
        pool.install(|| {
            ids.par_iter().map(|&i| sweep_one(&config.table, RuleId(i), &config.init, &config.budget)).collect()
        })
    };
    let mut cache: HashMap<u32, SweepRecord> = HashMap::new();
    let mut start = ids.start;
    while start < ids.end {
        let end = (start + CHUNK).min(ids.end);
        let chunk: Vec<u32> = (start..end).collect();
        let records: Vec<SweepRecord> = if config.conjugate_dedup {
            let mut wanted = Vec::new();
            for &i in &chunk {
                let rep = i.min(conj(i)?);
                if !cache.contains_key(&rep) && !wanted.contains(&rep) {
                    wanted.push(rep);
                }
            }
            let checks: Vec<u32> = chunk.iter().copied().filter(|&i| i % DEDUP_CHECK_STRIDE == 0).collect();
            let direct = classify_ids(&[wanted.clone(), checks.clone()].concat());
            for (i, r) in wanted.iter().zip(&direct) {
                cache.insert(*i, r.clone());
            }
            let mut out = Vec::with_capacity(chunk.len());
            for &i in &chunk {
                let rep = i.min(conj(i)?);
                let mut r = cache[&rep].clone();
                if rep != i {
                    let rule = config.table.decode(RuleId(i));
                    r.rule_id = RuleId(i);
                    r.rule_text = format_rule(&rule);
                }
                out.push(r);
            }
            for (i, d) in checks.iter().zip(&direct[wanted.len()..]) {
                let derived = &out[(*i - start) as usize];
                if derived.label != d.label || derived.final_vertices != d.final_vertices {
                    return Err(SweepError::Dedup(format!("rule {i}: derived {} but classified {}", derived.label, d.label)));
                }
            }
            out
        } else {
            classify_ids(&chunk)
        };
        sink(start..end, &records)?;
        start = end;
    }
    Ok(())
}

/// Runs a sweep in memory and returns all records.
pub fn sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>, SweepError> {
    check_range(config)?;
    let mut out = Vec::new();
    sweep_range(config, config.range.clone(), |_, recs| {
        out.extend_from_slice(recs);
        Ok(())
    })?;
    Ok(out)
}

fn check_range(config: &SweepConfig) -> Result<(), SweepError> {
    config.table.validate()?;
    let len = config.table.len();
    if config.range.start > config.range.end || config.range.end > len {
        return Err(SweepError::Range { start: config.range.start, end: config.range.end, len });
    }
    Ok(())
}

pub fn read_records(path: &Path) -> Result<Vec<SweepRecord>, SweepError> {
    let f = File::open(path).map_err(io_err(path))?;
    let mut out = Vec::new();
    for line in BufReader::new(f).lines() {
        let line = line.map_err(io_err(path))?;
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(&line)?);
        }
    }
    Ok(out)
}

pub fn read_manifest(dir: &Path) -> Result<Manifest, SweepError> {
    let path = dir.join(MANIFEST_FILE);
    let text = fs::read_to_string(&path).map_err(io_err(&path))?;
    Ok(serde_json::from_str(&text)?)
}

fn write_manifest(dir: &Path, m: &Manifest) -> Result<(), SweepError> {
    let path = dir.join(MANIFEST_FILE);
    let tmp = dir.join(format!("{MANIFEST_FILE}.tmp"));
    fs::write(&tmp, serde_json::to_string_pretty(m)?).map_err(io_err(&tmp))?;
    fs::rename(&tmp, &path).map_err(io_err(&path))
}

fn write_records(path: &Path, records: &[SweepRecord], append: bool) -> Result<(), SweepError> {
    let f = OpenOptions::new()
        .create(true)
        .write(true)
        .append(append)
        .truncate(!append)
        .open(path)
        .map_err(io_err(path))?;
    let mut w = BufWriter::new(f);
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n").map_err(io_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

/// Runs a sweep into `dir` (records plus manifest). With `resume`, an
/// existing manifest must describe the same sweep; ids it lists as
/// completed are kept and skipped. Without `resume`, existing output is
/// replaced.
pub fn sweep_to_dir(config: &SweepConfig, dir: &Path, resume: bool) -> Result<SweepSummary, SweepError> {
    check_range(config)?;
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let records_path = dir.join(RECORDS_FILE);
    let fresh = config.manifest();
    let (mut manifest, mut kept) = if resume && dir.join(MANIFEST_FILE).exists() {
        let old = read_manifest(dir)?;
        for (what, a, b) in [
            ("option table", &old.table_digest, &fresh.table_digest),
            ("initial condition", &old.init, &fresh.init),
        ] {
            if a != b {
                return Err(SweepError::ManifestMismatch(format!("{what}: {a} vs {b}")));
            }
        }
        if old.budget != fresh.budget || old.range != fresh.range {
            return Err(SweepError::ManifestMismatch("budget or id range differs".into()));
        }
        let kept: Vec<SweepRecord> = if records_path.exists() {
            read_records(&records_path)?.into_iter().filter(|r| old.is_done(r.rule_id.0)).collect()
        } else {
            Vec::new()
        };
        if kept.len() as u32 != old.completed_count() {
            return Err(SweepError::ManifestMismatch(format!(
                "manifest lists {} completed rules but {} records were found",
                old.completed_count(),
                kept.len()
            )));
        }
        (old, kept)
    } else {
        (fresh, Vec::new())
    };
    write_records(&records_path, &kept, false)?;
    write_manifest(dir, &manifest)?;
    let todo: Vec<Range<u32>> = gaps(&manifest.completed, config.range.clone());
    for r in todo {
        sweep_range(config, r, |chunk, recs| {
            write_records(&records_path, recs, true)?;
            manifest.mark(chunk);
            manifest.completed.sort_unstable();
            write_manifest(dir, &manifest)?;
            kept.extend_from_slice(recs);
            Ok(())
        })?;
    }
    kept.sort_by_key(|r| r.rule_id);
    write_records(&records_path, &kept, false)?;
    manifest.completed = vec![(config.range.start, config.range.end)];
    write_manifest(dir, &manifest)?;
    Ok(summarize(&kept))
}

fn gaps(done: &[(u32, u32)], range: Range<u32>) -> Vec<Range<u32>> {
    let mut sorted = done.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    let mut at = range.start;
    for (a, b) in sorted {
        if a > at {
            out.push(at..a.min(range.end));
        }
        at = at.max(b);
    }
    if at < range.end {
        out.push(at..range.end);
    }
    out.retain(|r| !r.is_empty());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(range: Range<u32>, threads: usize) -> SweepConfig {
        let mut c = SweepConfig::new(InitialCondition::Cube, Budget { max_steps: 2_000, ..Budget::default() });
        c.range = range;
        c.threads = Some(threads);
        c
    }

    #[test]
    fn output_is_independent_of_worker_count() {
        let a = sweep(&small(300..340, 1)).unwrap();
        let b = sweep(&small(300..340, 3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 40);
        assert!(a.windows(2).all(|w| w[0].rule_id < w[1].rule_id));
        let s = summarize(&a);
        assert_eq!(s.total, 40);
        assert_eq!(s.classes.values().sum::<usize>(), 40);
    }

    #[test]
    fn resume_completes_partial_sweep() {
        let dir = tempfile::tempdir().unwrap();
        let full = small(320..400, 2);
        let whole = sweep(&full).unwrap();
        sweep_to_dir(&small(320..400, 2), dir.path(), false).unwrap();
        let mut m = read_manifest(dir.path()).unwrap();
        let records = read_records(&dir.path().join(RECORDS_FILE)).unwrap();
        assert_eq!(records, whole);
        m.completed = vec![(320, 340), (360, 370)];
        write_manifest(dir.path(), &m).unwrap();
        let partial: Vec<SweepRecord> =
            whole.iter().filter(|r| m.is_done(r.rule_id.0)).cloned().chain(whole[70..72].iter().cloned()).collect();
        write_records(&dir.path().join(RECORDS_FILE), &partial, false).unwrap();
        let summary = sweep_to_dir(&full, dir.path(), true).unwrap();
        assert_eq!(read_records(&dir.path().join(RECORDS_FILE)).unwrap(), whole);
        assert_eq!(summary, summarize(&whole));
        assert_eq!(read_manifest(dir.path()).unwrap().completed, vec![(320, 400)]);
    }

    #[test]
    fn resume_rejects_a_different_sweep() {
        let dir = tempfile::tempdir().unwrap();
        sweep_to_dir(&small(0..4, 1), dir.path(), false).unwrap();
        let mut other = small(0..4, 1);
        other.budget.max_steps = 10;
        assert!(matches!(sweep_to_dir(&other, dir.path(), true), Err(SweepError::ManifestMismatch(_))));
        let mut k33 = small(0..4, 1);
        k33.init = InitialCondition::K33;
        assert!(matches!(sweep_to_dir(&k33, dir.path(), true), Err(SweepError::ManifestMismatch(_))));
    }

    #[test]
    fn conjugate_dedup_agrees_with_full_sweep() {
        let plain = sweep(&small(1300..1400, 2)).unwrap();
        let mut c = small(1300..1400, 2);
        c.conjugate_dedup = true;
        assert_eq!(sweep(&c).unwrap(), plain);
    }

    #[test]
    fn gaps_cover_the_rest() {
        assert_eq!(gaps(&[(0, 5), (8, 10)], 0..12), vec![5..8, 10..12]);
        assert_eq!(gaps(&[], 3..6), vec![3..6]);
        assert!(gaps(&[(0, 10)], 0..10).is_empty());
    }

    #[test]
    fn bad_range_is_an_error() {
        let c = small(3880..3900, 1);
        assert!(matches!(sweep(&c), Err(SweepError::Range { .. })));
    }
}
