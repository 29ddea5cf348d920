//! Survey harness: enumerate semigroups by genus, run the full pipeline on
//! each, and persist one JSON record per semigroup.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::defining_ideal::{toric_kernel, DefiningIdeal, IdealError};
use crate::determinantal::{
    certify, construct_candidate_matrix, search_matrix, shift_degree, DeterminantalError, MonomialMatrix, SearchConfig,
};
use crate::groebner::{GbConfig, MonomialOrder};
use crate::semigroup::{GeneratorSet, HypothesisReport, NumericalSemigroup};

/// Depth-first traversal of the semigroup tree: the children of `H` are
/// `H \ {m}` for each minimal generator `m > F(H)`, in ascending `m`.
///
/// Yields every numerical semigroup of genus `<= max_genus` (and
/// multiplicity `<= max_multiplicity`, if given) exactly once, starting
/// with the root `<1>`.
pub struct SemigroupTree {
    stack: Vec<NumericalSemigroup>,
    max_genus: usize,
    max_multiplicity: Option<u64>,
}

pub fn enumerate_semigroups(max_genus: usize, max_multiplicity: Option<u64>) -> SemigroupTree {
    let root = NumericalSemigroup::new(&[1]).expect("<1> is a numerical semigroup");
    SemigroupTree { stack: vec![root], max_genus, max_multiplicity }
}

/// `H \ {m}` for a minimal generator `m` of `H`.
pub fn remove_generator(h: &NumericalSemigroup, m: u64) -> NumericalSemigroup {
    let gens = h.generators().as_slice();
    debug_assert!(gens.contains(&m));
    let mut raw: Vec<u64> = gens.iter().copied().filter(|&g| g != m).collect();
    raw.extend(gens.iter().filter(|&&g| g != m).map(|&g| g + m));
    raw.push(2 * m);
    raw.push(3 * m);
    NumericalSemigroup::from_generators(GeneratorSet::minimalize(&raw).expect("gcd stays 1")).expect("valid semigroup")
}

impl Iterator for SemigroupTree {
    type Item = NumericalSemigroup;

    fn next(&mut self) -> Option<NumericalSemigroup> {
        let h = self.stack.pop()?;
        if h.genus() < self.max_genus {
            let f = h.frobenius();
            let mut children: Vec<NumericalSemigroup> = h
                .generators()
                .as_slice()
                .iter()
                .filter(|&&m| m as i64 > f)
                .map(|&m| remove_generator(&h, m))
                .filter(|c| self.max_multiplicity.is_none_or(|mm| c.multiplicity() <= mm))
                .collect();
            children.reverse();
            self.stack.extend(children);
        }
        Some(h)
    }
}

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("io error on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("cannot build worker pool: {0}")]
    Pool(String),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> SurveyError + '_ {
    move |source| SurveyError::Io { path: path.to_path_buf(), source }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeterminantalStatus {
    Certified,
    RefutedAtBudget,
    Skipped,
    Error,
}

impl DeterminantalStatus {
    /// The JSON spelling.
    pub fn as_str(self) -> &'static str {
        match self {
            DeterminantalStatus::Certified => "certified",
            DeterminantalStatus::RefutedAtBudget => "refuted_at_budget",
            DeterminantalStatus::Skipped => "skipped",
            DeterminantalStatus::Error => "error",
        }
    }
}

/// Which route produced the certified matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificatePath {
    /// The explicit shift-matrix construction.
    #[serde(rename = "paper_construction")]
    Construction,
    #[serde(rename = "search")]
    Search,
}

impl CertificatePath {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificatePath::Construction => "paper_construction",
            CertificatePath::Search => "search",
        }
    }
}

/// One line of survey output. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub key: String,
    pub a0: u64,
    pub n: usize,
    pub frobenius: i64,
    pub genus: usize,
    pub pf: Vec<u64>,
    pub hypothesis: HypothesisReport,
    pub mu: Option<usize>,
    pub determinantal: DeterminantalStatus,
    pub matrix: Option<String>,
    pub path: Option<CertificatePath>,
    pub runtime_ms: u64,
}

impl SurveyRecord {
    /// Generators parsed back from `key`, used as the sort key.
    fn generators(&self) -> Vec<u64> {
        self.key.parse::<GeneratorSet>().map(|g| g.as_slice().to_vec()).unwrap_or_default()
    }
}

/// Knobs shared by the survey and the single-semigroup commands.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// Base order on `k[x]` (`lex` or `grevlex`), graded by the generators.
    pub order: MonomialOrder,
    pub gb: GbConfig,
    pub search_node_budget: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            order: MonomialOrder::grevlex(),
            gb: GbConfig::default(),
            search_node_budget: SearchConfig::default().node_budget,
        }
    }
}

impl PipelineConfig {
    fn search_config(&self) -> SearchConfig {
        SearchConfig { node_budget: self.search_node_budget, gb: self.gb, parallel: true }
    }
}

/// Result of running the determinantal pipeline on one semigroup.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub ideal: Option<DefiningIdeal>,
    pub status: DeterminantalStatus,
    pub matrix: Option<MonomialMatrix>,
    pub path: Option<CertificatePath>,
    /// Human-readable notes (why the construction fell back, budget hits).
    pub notes: Vec<String>,
}

/// Tries the shift construction (when the hypothesis holds), then the
/// exhaustive search over `2 × c` shapes.
pub fn analyze(h: &NumericalSemigroup, cfg: &PipelineConfig) -> Analysis {
    let mut out =
        Analysis { ideal: None, status: DeterminantalStatus::Skipped, matrix: None, path: None, notes: Vec::new() };
    if !h.is_proper() || h.embedding_dim() < 2 {
        out.notes.push(format!("{h} has no proper defining ideal"));
        return out;
    }
    let d = match toric_kernel(h, &cfg.order, &cfg.gb) {
        Ok(d) => d,
        Err(IdealError::Groebner(e)) if e.is_budget() => {
            out.notes.push(format!("defining ideal: {e}"));
            return out;
        }
        Err(e) => {
            out.status = DeterminantalStatus::Error;
            out.notes.push(e.to_string());
            return out;
        }
    };
    let hyp = h.check_hypothesis();

    if hyp.holds {
        match construct_candidate_matrix(h, &hyp).and_then(|m| Ok((certify(&d, &m, &cfg.gb)?, m))) {
            Ok((cert, m)) if cert.equal => {
                out.status = DeterminantalStatus::Certified;
                out.matrix = Some(m);
                out.path = Some(CertificatePath::Construction);
                out.ideal = Some(d);
                return out;
            }
            Ok((cert, _)) => {
                out.notes.push(format!("construction not certified: {} witness(es)", cert.witness_failures.len()))
            }
            Err(e) => out.notes.push(e.to_string()),
        }
    }

    let degree_bound = d.generators().iter().map(|g| g.degree(d.weights())).max().unwrap_or(0);
    let preferred = hyp.pf_arith.then(|| shift_degree(&hyp));
    out.status = DeterminantalStatus::RefutedAtBudget;
    // wider matrices cannot have pairwise coprime row entries
    for c in 2..=h.embedding_dim() {
        match search_matrix(&d, (2, c), degree_bound, preferred, &cfg.search_config()) {
            Ok(Some(m)) => {
                out.status = DeterminantalStatus::Certified;
                out.matrix = Some(m);
                out.path = Some(CertificatePath::Search);
                break;
            }
            Ok(None) => {}
            Err(DeterminantalError::SearchBudgetExceeded(n)) => out.notes.push(format!("2x{c} search hit {n} nodes")),
            Err(DeterminantalError::Groebner(e)) if e.is_budget() => out.notes.push(format!("2x{c} search: {e}")),
            Err(e) => {
                out.status = DeterminantalStatus::Error;
                out.notes.push(e.to_string());
                break;
            }
        }
    }
    out.ideal = Some(d);
    out
}

/// Builds the survey record for `h`; `runtime_ms` is filled only when
/// `timings` is set so that default output is reproducible.
pub fn survey_record(h: &NumericalSemigroup, cfg: &PipelineConfig, timings: bool) -> SurveyRecord {
    let start = Instant::now();
    let a = analyze(h, cfg);
    let mu = match &a.ideal {
        Some(d) => Some(d.mu()),
        None if !h.is_proper() => Some(0),
        None => None,
    };
    SurveyRecord {
        key: h.generators().canonical(),
        a0: h.multiplicity(),
        n: h.embedding_dim(),
        frobenius: h.frobenius(),
        genus: h.genus(),
        pf: h.pseudo_frobenius().to_vec(),
        hypothesis: h.check_hypothesis(),
        mu,
        determinantal: a.status,
        matrix: a.matrix.map(|m| m.to_string()),
        path: a.path,
        runtime_ms: if timings { start.elapsed().as_millis() as u64 } else { 0 },
    }
}

#[derive(Debug, Clone)]
pub struct SurveyConfig {
    pub max_genus: usize,
    pub max_multiplicity: Option<u64>,
    pub hypothesis_only: bool,
    /// Also emit a record for `<1>`, which has no proper defining ideal.
    pub include_trivial: bool,
    pub jobs: Option<usize>,
    pub timings: bool,
    pub pipeline: PipelineConfig,
}

impl SurveyConfig {
    pub fn new(max_genus: usize) -> Self {
        SurveyConfig {
            max_genus,
            max_multiplicity: None,
            hypothesis_only: false,
            include_trivial: false,
            jobs: None,
            timings: false,
            pipeline: PipelineConfig::default(),
        }
    }
}

/// Record counts keyed by (hypothesis holds, status).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SurveySummary {
    pub counts: BTreeMap<(bool, &'static str), usize>,
    pub records: usize,
    /// Keys of hypothesis-satisfying records that did not certify.
    pub violations: Vec<String>,
}

impl SurveySummary {
    pub fn from_records(records: &[SurveyRecord]) -> Self {
        let mut s = SurveySummary { records: records.len(), ..Default::default() };
        for r in records {
            *s.counts.entry((r.hypothesis.holds, r.determinantal.as_str())).or_default() += 1;
            if r.hypothesis.holds && r.determinantal != DeterminantalStatus::Certified {
                s.violations.push(r.key.clone());
            }
        }
        s
    }

    /// 0 iff every hypothesis-satisfying record is certified.
    pub fn exit_code(&self) -> i32 {
        if self.violations.is_empty() {
            0
        } else {
            1
        }
    }
}

/// Semigroups selected by the enumeration bounds and filters of `cfg`.
pub fn selected_semigroups(cfg: &SurveyConfig) -> Vec<NumericalSemigroup> {
    enumerate_semigroups(cfg.max_genus, cfg.max_multiplicity)
        .filter(|h| cfg.include_trivial || h.is_proper())
        .filter(|h| !cfg.hypothesis_only || (h.is_proper() && h.check_hypothesis().holds))
        .collect()
}

/// Computes all records (in memory), sorted by generator sequence.
///
/// `known` records are reused as-is; every freshly computed record is passed
/// to `on_record` (from worker threads) before the final sort.
pub fn compute_records<F>(
    cfg: &SurveyConfig,
    known: &BTreeMap<String, SurveyRecord>,
    on_record: F,
) -> Result<Vec<SurveyRecord>, SurveyError>
where
    F: Fn(&SurveyRecord) + Sync,
{
    let todo = selected_semigroups(cfg);
    let work = || -> Vec<SurveyRecord> {
        todo.par_iter()
            .map(|h| {
                if let Some(r) = known.get(&h.generators().canonical()) {
                    return r.clone();
                }
                let r = survey_record(h, &cfg.pipeline, cfg.timings);
                on_record(&r);
                r
            })
            .collect()
    };
    let mut records = match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| SurveyError::Pool(e.to_string()))?
            .install(work),
        None => work(),
    };
    records.sort_by_cached_key(SurveyRecord::generators);
    Ok(records)
}

pub fn cache_path(out: &Path) -> PathBuf {
    let mut p = out.as_os_str().to_owned();
    p.push(".cache");
    PathBuf::from(p)
}

/// Reads JSON Lines records; blank lines are ignored.
pub fn read_records(path: &Path) -> Result<Vec<SurveyRecord>, SurveyError> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: SurveyRecord =
            serde_json::from_str(&line).map_err(|e| SurveyError::Parse { line: i + 1, message: e.to_string() })?;
        out.push(rec);
    }
    Ok(out)
}

pub fn write_records(path: &Path, records: &[SurveyRecord]) -> Result<(), SurveyError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    for r in records {
        serde_json::to_writer(&mut w, r).expect("records serialize");
        w.write_all(b"\n").map_err(io_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

/// Runs the survey, writing sorted JSON Lines to `out`.
///
/// A sidecar `<out>.cache` receives each record as soon as it is computed;
/// with `resume`, records already in the cache are not recomputed.
pub fn run_survey(cfg: &SurveyConfig, out: &Path, resume: bool) -> Result<SurveySummary, SurveyError> {
    let cache = cache_path(out);
    let mut known = BTreeMap::new();
    if resume && cache.exists() {
        for r in read_records(&cache)? {
            known.insert(r.key.clone(), r);
        }
    }
    let file = OpenOptions::new()
        .create(true)
        .append(resume)
        .write(true)
        .truncate(!resume)
        .open(&cache)
        .map_err(io_err(&cache))?;
    let sink = Mutex::new(BufWriter::new(file));
    let records = compute_records(cfg, &known, |r| {
        let mut w = sink.lock().expect("cache writer poisoned");
        let line = serde_json::to_string(r).expect("records serialize");
        // cache writes are best effort; the final output is authoritative
        let _ = writeln!(w, "{line}").and_then(|_| w.flush());
    })?;
    sink.into_inner().expect("cache writer poisoned").flush().map_err(io_err(&cache))?;
    write_records(out, &records)?;
    Ok(SurveySummary::from_records(&records))
}

/// Outcome of re-verifying stored certificates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RecheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl RecheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Recomputes `I_H` from the key of every certified record and certifies
/// the stored matrix against it.
pub fn recheck_records(records: &[SurveyRecord], cfg: &PipelineConfig) -> RecheckReport {
    let results: Vec<Option<String>> = records
        .par_iter()
        .filter(|r| r.determinantal == DeterminantalStatus::Certified)
        .map(|r| {
            let fail = |why: String| Some(format!("{}: {why}", r.key));
            let h = match r.key.parse::<GeneratorSet>().and_then(NumericalSemigroup::from_generators) {
                Ok(h) => h,
                Err(e) => return fail(e.to_string()),
            };
            let Some(text) = &r.matrix else {
                return fail("certified record without a matrix".into());
            };
            let d = match toric_kernel(&h, &cfg.order, &cfg.gb) {
                Ok(d) => d,
                Err(e) => return fail(e.to_string()),
            };
            let m = match MonomialMatrix::parse(text, d.nvars()) {
                Ok(m) => m,
                Err(e) => return fail(e.to_string()),
            };
            match certify(&d, &m, &cfg.gb) {
                Ok(c) if c.equal => None,
                Ok(c) => fail(format!("{} witness(es), e.g. {}", c.witness_failures.len(), c.witness_failures[0])),
                Err(e) => fail(e.to_string()),
            }
        })
        .collect();
    RecheckReport { checked: results.len(), failures: results.into_iter().flatten().collect() }
}

pub fn recheck(path: &Path, cfg: &PipelineConfig) -> Result<RecheckReport, SurveyError> {
    Ok(recheck_records(&read_records(path)?, cfg))
}
