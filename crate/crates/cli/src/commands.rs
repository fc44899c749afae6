//! The three subcommands.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ebcount_core::evaluation::efficiency_table;
use ebcount_core::simulation::RNG_ALGORITHM;
use ebcount_core::study::evaluate_scenario;
use ebcount_core::{
    eb_proportions, estimate_eta, make_profile, mle_proportions, shannon, simpson,
    CompositionEstimate, CountVector, EtaSolverOptions, Method, Simplex,
};
use rayon::prelude::*;

use crate::config::SimulationConfig;
use crate::counts_csv::CountMatrixFile;
use crate::error::{CliError, Result};
use crate::report::{
    Metadata, MethodEstimate, ProfileRecord, RunReport, SampleEstimate, ScenarioResult,
};
use crate::tables::{self, TableKind};

#[derive(Debug, Parser)]
#[command(
    name = "ebcount",
    version,
    about = "Empirical-Bayes composition estimates for overdispersed counts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a simulation grid and write a JSON report.
    Simulate(SimulateArgs),
    /// Estimate compositions for every row of a count matrix.
    Estimate(EstimateArgs),
    /// Render a table from a report.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// TOML config, or a previous JSON report to rerun.
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Overrides the seed in the config.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; defaults to one per core.
    #[arg(long, env = "EBCOUNT_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Ml,
    Eb,
    Both,
}

impl MethodChoice {
    fn methods(self) -> &'static [Method] {
        match self {
            MethodChoice::Ml => &[Method::Ml],
            MethodChoice::Eb => &[Method::Eb],
            MethodChoice::Both => &[Method::Ml, Method::Eb],
        }
    }
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// CSV: header of taxon names after an id column, one sample per row.
    #[arg(long)]
    pub counts: PathBuf,
    #[arg(long, value_enum, default_value = "both")]
    pub method: MethodChoice,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub table: TableKind,
    /// Full-precision CSV instead of rounded text.
    #[arg(long)]
    pub csv: bool,
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate(args) => {
            let report = simulate(&args)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            report.write(&args.out)
        }
        Command::Estimate(args) => {
            let report = estimate(&args)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            report.write(&args.out)
        }
        Command::Report(args) => {
            let text = render(&args)?;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Write {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

pub fn simulate(args: &SimulateArgs) -> Result<RunReport> {
    let mut config = SimulationConfig::load(&args.config)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    let planned = config.scenarios();
    let profiles = config
        .profiles
        .iter()
        .map(|&kind| make_profile(kind, config.k))
        .collect::<std::result::Result<Vec<_>, _>>()?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    // collect() keeps declaration order whatever the scheduling
    let outcomes = pool.install(|| {
        planned
            .par_iter()
            .map(|p| {
                let profile = profiles
                    .iter()
                    .find(|q| q.kind == p.scenario.profile_kind)
                    .expect("profile built for every kind");
                evaluate_scenario(&p.id, &p.setting, &p.scenario, profile, &config.solver).map_err(
                    |source| CliError::Scenario {
                        id: p.id.clone(),
                        source,
                    },
                )
            })
            .collect::<Vec<_>>()
    });

    let mut metadata = Metadata::new("simulate");
    metadata.seed = Some(config.seed);
    metadata.rng_algorithm = Some(RNG_ALGORITHM.into());
    metadata.profiles = profiles.iter().map(ProfileRecord::from).collect();
    metadata.scenarios = planned;
    let mut report = RunReport::new(metadata);

    let mut cell_errors = Vec::new();
    for outcome in outcomes {
        let outcome = outcome?;
        let mut etas: Vec<f64> = outcome.replicates.iter().map(|r| r.eta.eta).collect();
        etas.sort_by(f64::total_cmp);
        let median_eta =
            (!etas.is_empty()).then(|| ebcount_core::evaluation::quantile_sorted(&etas, 0.5));
        if !outcome.excluded.is_empty() {
            report.warnings.push(format!(
                "scenario {}: {} replicate(s) excluded ({})",
                outcome.scenario_id,
                outcome.excluded.len(),
                outcome.excluded[0].reason
            ));
        }
        if outcome.solver_status.max_iterations > 0 {
            report.warnings.push(format!(
                "scenario {}: η solver hit the iteration limit in {} replicate(s)",
                outcome.scenario_id, outcome.solver_status.max_iterations
            ));
        }
        report.scenario_results.push(ScenarioResult {
            scenario_id: outcome.scenario_id,
            replicates_used: outcome.replicates.len(),
            solver_status: outcome.solver_status,
            median_eta,
            excluded: outcome.excluded,
        });
        report.summaries.extend(outcome.summaries);
        cell_errors.extend(outcome.cell_errors);
    }

    let settings: Vec<String> = config.settings().iter().map(|s| s.label()).collect();
    match efficiency_table(&settings, &config.profiles, &cell_errors) {
        Ok(cells) => report.efficiency = cells,
        Err(e) => report
            .warnings
            .push(format!("efficiency table not computed: {e}")),
    }
    report.metadata.config = Some(config);
    Ok(report)
}

fn method_estimate(
    x: &CountVector,
    method: Method,
    solver: &EtaSolverOptions,
) -> Result<MethodEstimate> {
    let (estimate, solution): (CompositionEstimate, _) = match method {
        Method::Ml => (mle_proportions(x)?, None),
        Method::Eb => {
            let s = estimate_eta(x, solver)?;
            (eb_proportions(x, s.eta)?, Some(s))
        }
    };
    let p = Simplex::try_from(estimate.clone())?;
    Ok(MethodEstimate {
        method,
        proportions: estimate.proportions,
        eta: solution.map(|s| s.eta),
        solver_status: solution.map(|s| s.status),
        iterations: solution.map(|s| s.iterations),
        shannon: shannon(&p).value,
        simpson: simpson(&p).value,
    })
}

pub fn estimate(args: &EstimateArgs) -> Result<RunReport> {
    let matrix = CountMatrixFile::read(&args.counts)?;
    let solver = EtaSolverOptions::default();
    let mut metadata = Metadata::new("estimate");
    metadata.counts_file = Some(args.counts.display().to_string());
    metadata.taxa = matrix.taxa.clone();
    let mut report = RunReport::new(metadata);

    for (id, x) in &matrix.rows {
        if x.n() == 0 {
            report
                .warnings
                .push(format!("sample {id}: all counts are zero, skipped"));
            continue;
        }
        let estimates = args
            .method
            .methods()
            .iter()
            .map(|&m| method_estimate(x, m, &solver))
            .collect::<Result<Vec<_>>>()?;
        report.estimates.push(SampleEstimate {
            sample_id: id.clone(),
            n: x.n(),
            estimates,
        });
    }
    Ok(report)
}

pub fn render(args: &ReportArgs) -> Result<String> {
    let report = RunReport::read(&args.input)?;
    let blocks = tables::blocks(&report, args.table);
    if blocks.iter().all(|b| b.rows.is_empty()) {
        return Err(CliError::data(
            &args.input,
            format!("report has no data for the {:?} table", args.table).to_lowercase(),
        ));
    }
    Ok(if args.csv {
        tables::render_csv(&blocks)
    } else {
        tables::render_text(&blocks)
    })
}
