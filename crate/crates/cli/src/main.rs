mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eigenmode::decompose::{mlr_decompose, session_statistics, subspace_invariance, DecompositionResult};
use eigenmode::eigen::{eigencycle_set, eigenvectors, sigma_alpha, sigma_beta, CycleScale, ModeLabel};
use eigenmode::figdata::{eigenvalue_curve, lissajous};
use eigenmode::io::{load_session_csv, load_timeseries_csv, write_timeseries_csv, SessionRecord, Treatment};
use eigenmode::measure::{angular_momentum, treatment_aggregate, Aggregate};
use eigenmode::myopic::theory_projection;
use eigenmode::reproduce::{dominance_panel, reproduce, ReproduceOptions};
use eigenmode::sim::{simulate_treatment, AgentPolicy, PayoffMode, PolicyKind};
use eigenmode::subspace::{pair_label, N_SUBSPACES};
use eigenmode::{fixtures, GameSpec, SubspaceVector};

use crate::table::{emit, num, Format, Table};

#[derive(Parser, Debug)]
#[command(version, about = "Eigenmode analysis of a five-strategy cyclic game")]
struct Cli {
    /// Base random seed for simulations.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Write each table to `<dir>/<name>.<ext>` instead of stdout.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues, eigenvectors and eigencycle sets of the Jacobian.
    Eigen(EigenArgs),
    /// Myopic response strengths and their projection on the eigencycles.
    Myopic(MyopicArgs),
    /// Agent-based sessions, one CSV per session.
    Simulate(SimulateArgs),
    /// Angular momentum of time-series CSV files.
    Measure(MeasureArgs),
    /// Regress session vectors on the two eigencycles.
    Decompose(DecomposeArgs),
    /// Cross-subspace correlations of pooled sessions against the predicted signs.
    Invariance(InputArgs),
    /// Compare the full pipeline against the bundled reference tables.
    Reproduce(ReproduceArgs),
    /// Plot data: eigencycle orbits and eigenfrequencies against `a`.
    Figdata(FigdataArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ScaleArg {
    Pi,
    Unit,
}

impl From<ScaleArg> for CycleScale {
    fn from(s: ScaleArg) -> Self {
        match s {
            ScaleArg::Pi => CycleScale::Pi,
            ScaleArg::Unit => CycleScale::Unit,
        }
    }
}

#[derive(Args, Debug)]
struct EigenArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, value_enum, default_value_t = ScaleArg::Pi)]
    scale: ScaleArg,
}

#[derive(Args, Debug)]
struct MyopicArgs {
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "table",
        conflicts_with = "table"
    )]
    a: Option<f64>,
    /// All five treatments.
    #[arg(long)]
    table: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Logit,
    Nbr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PayoffArg {
    Single,
    All,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, default_value_t = 600)]
    rounds: usize,
    #[arg(long, default_value_t = 10)]
    sessions: usize,
    #[arg(long, default_value_t = AgentPolicy::default().beta)]
    beta: f64,
    #[arg(long, default_value_t = AgentPolicy::default().inertia)]
    inertia: f64,
    #[arg(long, default_value_t = AgentPolicy::default().population_size)]
    population: usize,
    #[arg(long, value_enum, default_value_t = PolicyArg::Logit)]
    policy: PolicyArg,
    /// Banked payoff per round: the single paired match, or the average over all others.
    #[arg(long, value_enum, default_value_t = PayoffArg::Single)]
    payoff: PayoffArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AggregateArg {
    Sum,
    Mean,
}

#[derive(Args, Debug)]
struct MeasureArgs {
    #[arg(long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = AggregateArg::Sum)]
    aggregate: AggregateArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ByArg {
    Session,
    Treatment,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Session CSV; the bundled sessions when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = ScaleArg::Pi)]
    scale: ScaleArg,
    #[arg(long, value_enum, default_value_t = ByArg::Session)]
    by: ByArg,
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = ScaleArg::Pi)]
    scale: ScaleArg,
}

#[derive(Args, Debug)]
struct FigdataArgs {
    /// Points per orbit.
    #[arg(long, default_value_t = 64)]
    samples: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = -5.0)]
    a_min: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 5.0)]
    a_max: f64,
    #[arg(long, default_value_t = 201)]
    points: usize,
}

/// Outcome of a command that ran to completion.
enum Done {
    Ok,
    ComparisonFailed,
}

type CliResult = Result<Done, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(Done::Ok) => ExitCode::SUCCESS,
        Ok(Done::ComparisonFailed) => ExitCode::from(2),
        // A closed downstream pipe (`| head`) is not a failure of ours.
        Err(e)
            if e.downcast_ref::<std::io::Error>()
                .is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> CliResult {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Eigen(args) => eigen(args, cli.format, out),
        Command::Myopic(args) => myopic(args, cli.format, out),
        Command::Simulate(args) => simulate(args, cli.seed, cli.format, out),
        Command::Measure(args) => measure(args, cli.format, out),
        Command::Decompose(args) => decompose(args, cli.format, out),
        Command::Invariance(args) => invariance(args, cli.format, out),
        Command::Reproduce(args) => reproduce_cmd(args, cli.format, out),
        Command::Figdata(args) => figdata(args, cli.format, out),
    }
}

fn finite(name: &str, v: f64) -> Result<f64, String> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("--{name} must be finite"))
    }
}

fn subspace_header(leading: &[&str], trailing: &[&str]) -> Vec<String> {
    let mut h: Vec<String> = leading.iter().map(|s| s.to_string()).collect();
    h.extend((0..N_SUBSPACES).map(|k| format!("L{}", pair_label(k))));
    h.extend(trailing.iter().map(|s| s.to_string()));
    h
}

fn load_records(input: &InputArgs) -> Result<Vec<SessionRecord>, eigenmode::Error> {
    match &input.input {
        Some(path) => load_session_csv(path),
        None => fixtures::sessions(),
    }
}

fn eigen(args: &EigenArgs, format: Format, out: Option<&Path>) -> CliResult {
    let spec = GameSpec::new(finite("a", args.a)?);
    let scale = CycleScale::from(args.scale);
    let modes = eigenvectors(&spec);

    let mut values = Table::new("eigenvalues", &["mode", "re", "im"]);
    let mut vectors = Table::new("eigenvectors", &["mode", "component", "amplitude", "phase"]);
    let mut cycles = Table::new("eigencycles", &["pair", "sigma_alpha", "sigma_beta"]);
    for m in &modes {
        values.push(vec![m.label.name().into(), num(m.eigenvalue.re), num(m.eigenvalue.im)]);
        for (k, c) in m.eigenvector.iter().enumerate() {
            vectors.push(vec![
                m.label.name().into(),
                (k + 1).to_string(),
                num(c.norm()),
                num(c.arg()),
            ]);
        }
    }
    let find = |l: ModeLabel| modes.iter().find(|m| m.label == l).expect("every label present");
    let sa = eigencycle_set(find(ModeLabel::Alpha), scale)?;
    let sb = eigencycle_set(find(ModeLabel::Beta), scale)?;
    for k in 0..N_SUBSPACES {
        cycles.push(vec![pair_label(k), num(sa[k]), num(sb[k])]);
    }
    emit(&[values, vectors, cycles], format, out)?;
    Ok(Done::Ok)
}

fn myopic(args: &MyopicArgs, format: Format, out: Option<&Path>) -> CliResult {
    let values: Vec<f64> = match args.a {
        Some(a) => vec![finite("a", a)?],
        None => Treatment::ALL.iter().map(|t| t.a()).collect(),
    };
    let mut strengths = Table::with_header("myopic_strengths", subspace_header(&["a"], &[]));
    let mut projection = Table::new("myopic_projection", &["a", "rho_alpha", "rho_beta"]);
    for a in values {
        let p = theory_projection(&GameSpec::new(a));
        let mut row = vec![a.to_string()];
        row.extend(p.strengths.iter().map(|v| v.to_string()));
        strengths.push(row);
        projection.push(vec![a.to_string(), num(p.rho_alpha), num(p.rho_beta)]);
    }
    emit(&[strengths, projection], format, out)?;
    Ok(Done::Ok)
}

fn simulate(args: &SimulateArgs, seed: u64, format: Format, out: Option<&Path>) -> CliResult {
    let spec = GameSpec::new(finite("a", args.a)?);
    let policy = AgentPolicy {
        kind: match args.policy {
            PolicyArg::Logit => PolicyKind::Logit,
            PolicyArg::Nbr => PolicyKind::NoisyBestResponse,
        },
        beta: args.beta,
        inertia: args.inertia,
        population_size: args.population,
        payoff_mode: match args.payoff {
            PayoffArg::Single => PayoffMode::SingleMatch,
            PayoffArg::All => PayoffMode::AllOthers,
        },
    };
    let sessions = simulate_treatment(&spec, &policy, args.sessions, args.rounds, seed)?;
    let dir = out.unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let width = args.sessions.to_string().len();
    for (i, s) in sessions.iter().enumerate() {
        write_timeseries_csv(&dir.join(format!("session_{:0width$}.csv", i + 1)), s)?;
    }

    // Summary goes to stdout regardless of `--out`; the session files are the output.
    let row = dominance_panel(&spec, &sessions, Aggregate::Sum)?;
    let mut summary = Table::new(
        "simulation_summary",
        &[
            "a",
            "sessions",
            "rounds",
            "alpha_dominant",
            "beta_dominant",
            "mean_k_alpha",
            "mean_k_beta",
        ],
    );
    summary.push(vec![
        args.a.to_string(),
        row.sessions.to_string(),
        args.rounds.to_string(),
        row.alpha_dominant.to_string(),
        row.beta_dominant.to_string(),
        num(row.mean_k_alpha),
        num(row.mean_k_beta),
    ]);
    emit(&[summary], format, None)?;
    Ok(Done::Ok)
}

fn measure(args: &MeasureArgs, format: Format, out: Option<&Path>) -> CliResult {
    let aggregate = match args.aggregate {
        AggregateArg::Sum => Aggregate::Sum,
        AggregateArg::Mean => Aggregate::Mean,
    };
    let mut sessions = Table::with_header("angular_momentum", subspace_header(&["file", "a", "points"], &["norm"]));
    let mut vectors = Vec::new();
    for path in &args.input {
        let series = load_timeseries_csv(path)?;
        let l = angular_momentum(&series.points, None)?.vector(aggregate);
        let mut row = vec![
            path.display().to_string(),
            series.meta.a.to_string(),
            series.len().to_string(),
        ];
        row.extend(l.iter().map(num));
        row.push(num(l.norm()));
        sessions.push(row);
        vectors.push(l);
    }
    let agg = treatment_aggregate(&vectors)?;
    let mut summary = Table::with_header("aggregate", subspace_header(&["quantity"], &[]));
    for (name, v) in [("mean", agg.mean), ("unit", agg.unit)] {
        let mut row = vec![name.to_string()];
        row.extend(v.iter().map(num));
        summary.push(row);
    }
    let mut norm_row = vec!["norm".to_string(), num(agg.norm_ampl)];
    norm_row.resize(N_SUBSPACES + 1, String::new());
    summary.push(norm_row);
    emit(&[sessions, summary], format, out)?;
    Ok(Done::Ok)
}

fn fit_cells(fit: &DecompositionResult) -> Vec<String> {
    vec![
        num(fit.c0),
        num(fit.k_alpha),
        num(fit.k_beta),
        num(fit.r_squared),
        num(fit.p),
        fit.dominant_mode().name().into(),
    ]
}

fn decompose(args: &DecomposeArgs, format: Format, out: Option<&Path>) -> CliResult {
    let records = load_records(&args.input)?;
    let scale = CycleScale::from(args.scale);
    let fit_cols = ["c0", "k_alpha", "k_beta", "r_squared", "p", "dominant"];
    let tables = match args.by {
        ByArg::Session => {
            let mut h = vec!["treatment", "session"];
            h.extend(fit_cols);
            let mut t = Table::new("session_fits", &h);
            for r in &records {
                let mut row = vec![r.treatment.to_string(), r.session_id.to_string()];
                row.extend(fit_cells(&mlr_decompose(&r.l, scale)));
                t.push(row);
            }
            vec![t]
        }
        ByArg::Treatment => {
            let mut h = vec!["treatment", "sessions"];
            h.extend(fit_cols);
            h.extend(["mean_k_alpha", "mean_k_beta", "p_k_alpha", "p_k_beta", "p_abs_equal"]);
            let mut t = Table::new("treatment_fits", &h);
            for tr in Treatment::ALL {
                let vectors: Vec<SubspaceVector> = fixtures::treatment_sessions(&records, tr);
                if vectors.is_empty() {
                    continue;
                }
                let agg = treatment_aggregate(&vectors)?;
                let mut row = vec![tr.to_string(), vectors.len().to_string()];
                row.extend(fit_cells(&mlr_decompose(&agg.mean, scale)));
                let fits: Vec<DecompositionResult> = vectors.iter().map(|l| mlr_decompose(l, scale)).collect();
                match session_statistics(&fits) {
                    Ok(s) => row.extend([
                        num(s.mean_k_alpha),
                        num(s.mean_k_beta),
                        num(s.test_k_alpha.p_value),
                        num(s.test_k_beta.p_value),
                        num(s.test_abs_equal.p_value),
                    ]),
                    // Too few sessions for t-tests: leave the columns empty.
                    Err(_) => row.resize(h.len(), String::new()),
                }
                t.push(row);
            }
            vec![t]
        }
    };
    emit(&tables, format, out)?;
    Ok(Done::Ok)
}

fn invariance(args: &InputArgs, format: Format, out: Option<&Path>) -> CliResult {
    let records = load_records(args)?;
    let pooled: Vec<SubspaceVector> = records.iter().map(|r| r.l).collect();
    let inv = subspace_invariance(&pooled)?;
    let labels: Vec<String> = (0..N_SUBSPACES).map(|k| format!("L{}", pair_label(k))).collect();
    let matrix = |name: &str, m: &[[f64; N_SUBSPACES]; N_SUBSPACES]| {
        let mut h = vec![String::new()];
        h.extend(labels.iter().cloned());
        let mut t = Table::with_header(name, h);
        for (i, row) in m.iter().enumerate() {
            let mut r = vec![labels[i].clone()];
            r.extend(row.iter().map(|v| num(*v)));
            t.push(r);
        }
        t
    };
    let mut pairs = Table::new("pairs", &["pair_i", "pair_j", "rho", "predicted", "top", "margin"]);
    for (k, p) in inv.all_pairs().enumerate() {
        let top = inv.top_pairs.iter().any(|q| q.i == p.i && q.j == p.j);
        pairs.push(vec![
            labels[p.i].clone(),
            labels[p.j].clone(),
            num(p.rho),
            p.predicted.symbol().to_string(),
            top.to_string(),
            num(inv.check_margins[k]),
        ]);
    }
    let mut summary = Table::new("invariance_summary", &["quantity", "value"]);
    summary.push(vec!["sessions".into(), pooled.len().to_string()]);
    summary.push(vec!["signed_pairs".into(), inv.signed_pair_count().to_string()]);
    summary.push(vec![
        "top_pairs_match".into(),
        inv.top_pairs_match_prediction().to_string(),
    ]);
    summary.push(vec!["sign_violations".into(), inv.violations.len().to_string()]);
    summary.push(vec!["wilcoxon_p".into(), format!("{:e}", inv.wilcoxon.p_value)]);
    emit(
        &[
            matrix("rho", &inv.rho_matrix),
            matrix("p", &inv.p_matrix),
            pairs,
            summary,
        ],
        format,
        out,
    )?;
    Ok(Done::Ok)
}

fn reproduce_cmd(args: &ReproduceArgs, format: Format, out: Option<&Path>) -> CliResult {
    let records = load_records(&args.input)?;
    let report = reproduce(
        &records,
        ReproduceOptions {
            scale: args.scale.into(),
        },
    )?;
    let text = match format {
        Format::Md => report.to_markdown(),
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            String::from_utf8(buf)?
        }
    };
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(format!("reproduce.{}", format.extension())), text)?;
        }
        None => print!("{text}"),
    }
    for c in report.criteria() {
        let status = if report.criterion_passed(c) == Some(true) {
            "PASS"
        } else {
            "FAIL"
        };
        eprintln!("criterion {c}: {status}");
    }
    Ok(if report.all_passed() {
        Done::Ok
    } else {
        Done::ComparisonFailed
    })
}

fn figdata(args: &FigdataArgs, format: Format, out: Option<&Path>) -> CliResult {
    let mut orbits = Table::new("lissajous", &["mode", "pair", "phase", "x", "y"]);
    for p in lissajous(args.samples)? {
        orbits.push(vec![p.mode.name().into(), p.pair, num(p.phase), num(p.x), num(p.y)]);
    }
    let mut curve = Table::new("eigenvalue_curve", &["a", "im_chi_plus", "im_chi_minus"]);
    for p in eigenvalue_curve(finite("a-min", args.a_min)?, finite("a-max", args.a_max)?, args.points)? {
        curve.push(vec![num(p.a), num(p.im_chi_plus), num(p.im_chi_minus)]);
    }
    // Reference table columns, for overlaying on the orbits.
    let mut sigma = Table::new("eigencycles", &["pair", "sigma_alpha_unit", "sigma_beta_unit"]);
    let (sa, sb) = (sigma_alpha(CycleScale::Unit), sigma_beta(CycleScale::Unit));
    for k in 0..N_SUBSPACES {
        sigma.push(vec![pair_label(k), num(sa[k]), num(sb[k])]);
    }
    emit(&[orbits, curve, sigma], format, out)?;
    Ok(Done::Ok)
}
