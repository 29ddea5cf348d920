use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use numsg_core::determinantal::{certify, search_matrix, DeterminantalError, SearchConfig};
use numsg_core::survey::{self, analyze, DeterminantalStatus, PipelineConfig, SurveyConfig, SurveySummary};
use numsg_core::{toric_kernel, GbConfig, GeneratorSet, MonomialOrder, NumericalSemigroup};

#[derive(Parser, Debug)]
#[command(
    name = "numsg",
    version,
    about = "Numerical semigroups, their defining ideals and determinantal certificates"
)]
struct Cli {
    /// Base monomial order on k[x], graded by the generators.
    #[arg(long, global = true, default_value = "grevlex", value_parser = ["grevlex", "lex"])]
    order: String,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Largest weighted degree allowed in Gröbner computations.
    #[arg(long, global = true)]
    max_degree: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants of <a1,...,an> and the hypothesis check.
    Info { gens: String },
    /// Minimal generators of the defining ideal.
    Ideal { gens: String },
    /// Look for a monomial matrix whose 2x2 minors generate the defining ideal.
    CheckDeterminantal {
        gens: String,
        /// Restrict the search to one shape, e.g. `2x3`.
        #[arg(long)]
        shape: Option<Shape>,
        /// Search node budget per first-column branch.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Survey all semigroups up to a genus bound and write JSON Lines.
    Survey {
        #[arg(long)]
        max_genus: usize,
        #[arg(long = "max-mult")]
        max_mult: Option<u64>,
        /// Only semigroups satisfying the hypothesis.
        #[arg(long)]
        hypothesis_only: bool,
        /// Also emit the record for <1>.
        #[arg(long)]
        include_trivial: bool,
        #[arg(long)]
        out: PathBuf,
        /// Reuse records from `<out>.cache`.
        #[arg(long)]
        resume: bool,
        /// Record wall-clock time per semigroup (output is then not reproducible).
        #[arg(long)]
        timings: bool,
        /// Search node budget per first-column branch.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Re-certify every certified record of a survey file.
    Recheck { file: PathBuf },
}

#[derive(Debug, Clone, Copy)]
struct Shape(usize, usize);

impl FromStr for Shape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (r, c) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected RxC, got {s:?}"))?;
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{s:?}: {e}"));
        Ok(Shape(parse(r)?, parse(c)?))
    }
}

fn semigroup(gens: &str) -> Result<NumericalSemigroup> {
    let g: GeneratorSet = gens.parse().with_context(|| format!("invalid generators {gens:?}"))?;
    Ok(NumericalSemigroup::from_generators(g)?)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn info(h: &NumericalSemigroup) {
    let hyp = h.check_hypothesis();
    println!("semigroup     {h}");
    println!("multiplicity  {}", h.multiplicity());
    println!("embedding dim {}", h.embedding_dim());
    println!("frobenius     {}", h.frobenius());
    println!("genus         {}", h.genus());
    println!("gaps          {}", join(h.gaps()));
    println!("apery         {}", join(h.apery()));
    println!("pf            {}", join(h.pseudo_frobenius()));
    println!("type          {}", h.type_());
    println!(
        "hypothesis    {} (2n >= a0+2: {}, pf arithmetic: {}, |pf| = n-1: {})",
        hyp.holds, hyp.half_mult_cond, hyp.pf_arith, hyp.pf_length_cond
    );
    if let Some(d) = hyp.pf_common_difference {
        println!("pf difference {d}");
    }
}

fn ideal(h: &NumericalSemigroup, cfg: &PipelineConfig) -> Result<()> {
    if !h.is_proper() {
        println!("mu 0");
        return Ok(());
    }
    let d = toric_kernel(h, &cfg.order, &cfg.gb)?;
    println!("mu {}", d.mu());
    for g in d.generators() {
        println!("{g}");
    }
    Ok(())
}

fn check_determinantal(h: &NumericalSemigroup, shape: Option<Shape>, cfg: &PipelineConfig) -> Result<bool> {
    let Some(Shape(rows, cols)) = shape else {
        let a = analyze(h, cfg);
        for note in &a.notes {
            eprintln!("note: {note}");
        }
        println!("status {}", a.status.as_str());
        if let (Some(m), Some(p)) = (&a.matrix, a.path) {
            println!("path   {}", p.as_str());
            println!("matrix {m}");
        }
        return Ok(a.status == DeterminantalStatus::Certified);
    };
    if !h.is_proper() {
        bail!("{h} has no proper defining ideal");
    }
    let d = toric_kernel(h, &cfg.order, &cfg.gb)?;
    let bound = d.generators().iter().map(|g| g.degree(d.weights())).max().unwrap_or(0);
    let scfg = SearchConfig { node_budget: cfg.search_node_budget, gb: cfg.gb, parallel: true };
    let preferred = h.check_hypothesis().pf_common_difference;
    match search_matrix(&d, (rows, cols), bound, preferred, &scfg) {
        Ok(Some(m)) => {
            let cert = certify(&d, &m, &cfg.gb)?;
            println!("status certified");
            println!("path   search");
            println!("matrix {}", cert.matrix);
            Ok(true)
        }
        Ok(None) => {
            println!("status refuted_at_budget");
            eprintln!("note: no {rows}x{cols} matrix with degree <= {bound} exists for {h}");
            Ok(false)
        }
        Err(DeterminantalError::SearchBudgetExceeded(n)) => {
            println!("status refuted_at_budget");
            eprintln!("note: search exceeded {n} nodes");
            Ok(false)
        }
        Err(e) => Err(e.into()),
    }
}

fn print_summary(s: &SurveySummary) {
    println!("records {}", s.records);
    for ((holds, status), count) in &s.counts {
        println!("hypothesis={holds:<5} {status:<17} {count}");
    }
    for key in &s.violations {
        eprintln!("violation: {key} satisfies the hypothesis but is not certified");
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().context("configuring worker pool")?;
    }
    let mut cfg = PipelineConfig {
        order: cli.order.parse::<MonomialOrder>()?,
        gb: GbConfig { max_degree: cli.max_degree, ..GbConfig::default() },
        ..PipelineConfig::default()
    };
    let ok = |b: bool| if b { ExitCode::SUCCESS } else { ExitCode::FAILURE };
    match cli.command {
        Command::Info { gens } => {
            info(&semigroup(&gens)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Ideal { gens } => {
            ideal(&semigroup(&gens)?, &cfg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckDeterminantal { gens, shape, budget } => {
            if let Some(b) = budget {
                cfg.search_node_budget = b;
            }
            Ok(ok(check_determinantal(&semigroup(&gens)?, shape, &cfg)?))
        }
        Command::Survey { max_genus, max_mult, hypothesis_only, include_trivial, out, resume, timings, budget } => {
            if let Some(b) = budget {
                cfg.search_node_budget = b;
            }
            let scfg = SurveyConfig {
                max_genus,
                max_multiplicity: max_mult,
                hypothesis_only,
                include_trivial,
                jobs: cli.jobs,
                timings,
                pipeline: cfg,
            };
            let summary = survey::run_survey(&scfg, &out, resume)?;
            print_summary(&summary);
            Ok(ok(summary.exit_code() == 0))
        }
        Command::Recheck { file } => {
            let report = survey::recheck(&file, &cfg)?;
            println!("checked {}", report.checked);
            for f in &report.failures {
                println!("FAIL {f}");
            }
            println!("{}", if report.passed() { "recheck passed" } else { "recheck failed" });
            Ok(ok(report.passed()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
