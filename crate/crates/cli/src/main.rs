//! Batch verification front end.
//!
//! Every subcommand runs an exact check and emits a run report; the exit
//! code is 0 when all checks pass, 1 on any verification failure, and 2 on
//! usage or model errors. Scans can fan out over threads with `--jobs`
//! (default from `GAUGEBERN_JOBS`); the output is merged in input order and
//! is byte-identical to a single-threaded run.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num::Zero;
use rayon::prelude::*;

use gaugebern::arith::{bernoulli, warm_bernoulli};
use gaugebern::dgl::{DglElement, FiniteDgl};
use gaugebern::identities::{
    condense, essential_indices, euler_in_span, euler_reconstruction, euler_vector,
    evaluate_condensed, evaluate_identity, gamma_oracle, identity_space_dimension, image_rank,
    lambda_vector, miki_in_span, miki_reconstruction, miki_vector, triples, CondenseMode,
    EssentialVector, Triple,
};
use gaugebern::rat::{parse_rat, rat_string, Rat};
use gaugebern::tensor::{d_squared_check_with, gauge_transport, Differential, Letter, Series};

use report::{Format, RunReport};

#[derive(Parser)]
#[command(
    name = "gaugebern",
    version,
    about = "Exact verification of Bernoulli convolution identities and the gauge action"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    /// Worker threads for scans (0 = auto); defaults to $GAUGEBERN_JOBS
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the table B_0..B_max of Bernoulli numbers
    Bernoulli {
        #[arg(long)]
        max: usize,
    },
    /// Coefficient vector of one triple, with its convolution residual
    Lambda {
        #[arg(long)]
        n: usize,
        /// Triple a,b,c with a+b+c = n-1
        #[arg(long)]
        triple: String,
        /// Fold to the condensed form
        #[arg(long, value_parser = ["definition", "symmetric"])]
        condense: Option<String>,
    },
    /// Scan all triples for every even n in range; all residuals must vanish
    Verify {
        #[arg(long, default_value_t = 4)]
        n_from: usize,
        #[arg(long)]
        n_to: usize,
    },
    /// Scan the independent gamma oracle over all triples, any n in range
    Gamma {
        #[arg(long, default_value_t = 1)]
        n_from: usize,
        #[arg(long)]
        n_to: usize,
    },
    /// Compare the Miki coefficients with their reconstruction
    Miki {
        #[arg(long)]
        n: usize,
    },
    /// Compare the condensed Euler coefficients with their reconstruction
    Euler {
        #[arg(long)]
        n: usize,
    },
    /// Dimension of the identity space, image rank, and span membership
    Ranks {
        #[arg(long)]
        n: usize,
    },
    /// Check that the tensor differential squares to zero
    D2 {
        #[arg(long)]
        max_len: usize,
        /// Negative control: run with B_1 = +1/2; this must FAIL
        #[arg(long)]
        flip_b1: bool,
    },
    /// Transport alpha along x in the truncated tensor algebra
    GaugeLs {
        #[arg(long)]
        max_len: usize,
    },
    /// Finite differential graded Lie algebra operations
    Dgl {
        #[command(subcommand)]
        command: DglCommand,
    },
}

#[derive(Subcommand)]
enum DglCommand {
    /// Check every axiom of a model file
    Validate(ModelArgs),
    /// Apply the gauge action of x to a
    Gauge(GaugeArgs),
    /// Solve the flow equation and compare with the gauge action
    Flow(GaugeArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Path to a model JSON file
    #[arg(long)]
    model: PathBuf,
}

#[derive(Args)]
struct GaugeArgs {
    #[arg(long)]
    model: PathBuf,
    /// Degree-0 element: a basis name or comma-separated rationals
    #[arg(long)]
    x: String,
    /// Degree -1 element: a basis name or comma-separated rationals
    #[arg(long)]
    a: String,
    /// Bound for the adjoint nilpotency search
    #[arg(long, default_value_t = 64)]
    bound: usize,
}

/// Usage or model problems; these exit with code 2.
struct CliError(String);

impl From<gaugebern::dgl::DglError> for CliError {
    fn from(e: gaugebern::dgl::DglError) -> Self {
        CliError(e.to_string())
    }
}

impl From<gaugebern::identities::IdentityError> for CliError {
    fn from(e: gaugebern::identities::IdentityError) -> Self {
        CliError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 0 for --help/--version and 2 for usage errors
            e.exit();
        }
    };
    let jobs = match resolve_jobs(cli.jobs) {
        Ok(j) => j,
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    match run(cli.command, jobs) {
        Ok(mut report) => {
            report.elapsed = start.elapsed();
            print!("{}", report.render(cli.format));
            eprintln!("elapsed: {:?}", report.elapsed);
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn resolve_jobs(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(j) = flag {
        return Ok(j);
    }
    match std::env::var("GAUGEBERN_JOBS") {
        Ok(v) => v
            .parse::<usize>()
            .map_err(|_| CliError(format!("GAUGEBERN_JOBS is not a number: `{v}`"))),
        Err(_) => Ok(0),
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError(e.to_string()))
}

fn run(command: Command, jobs: usize) -> Result<RunReport, CliError> {
    match command {
        Command::Bernoulli { max } => cmd_bernoulli(max),
        Command::Lambda {
            n,
            triple,
            condense,
        } => cmd_lambda(n, &triple, condense.as_deref()),
        Command::Verify { n_from, n_to } => cmd_verify(n_from, n_to, jobs),
        Command::Gamma { n_from, n_to } => cmd_gamma(n_from, n_to, jobs),
        Command::Miki { n } => cmd_miki(n),
        Command::Euler { n } => cmd_euler(n),
        Command::Ranks { n } => cmd_ranks(n),
        Command::D2 { max_len, flip_b1 } => cmd_d2(max_len, flip_b1),
        Command::GaugeLs { max_len } => cmd_gauge_ls(max_len),
        Command::Dgl { command } => match command {
            DglCommand::Validate(args) => cmd_dgl_validate(&args),
            DglCommand::Gauge(args) => cmd_dgl_gauge(&args),
            DglCommand::Flow(args) => cmd_dgl_flow(&args),
        },
    }
}

fn cmd_bernoulli(max: usize) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("bernoulli");
    report.param("max", max);
    warm_bernoulli(max);
    for k in 0..=max {
        report.row(format!("B_{k}"), rat_string(&bernoulli(k)));
    }
    Ok(report)
}

fn parse_triple(n: usize, spec: &str) -> Result<Triple, CliError> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError(format!("triple must be a,b,c, got `{spec}`")));
    }
    let nums: Result<Vec<usize>, _> = parts.iter().map(|p| p.trim().parse::<usize>()).collect();
    let nums =
        nums.map_err(|_| CliError(format!("triple components must be naturals: `{spec}`")))?;
    Ok(Triple::new(n, nums[0], nums[1], nums[2])?)
}

fn vector_string(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(rat_string).collect();
    format!("({})", parts.join(", "))
}

fn cmd_lambda(n: usize, triple: &str, mode: Option<&str>) -> Result<RunReport, CliError> {
    let t = parse_triple(n, triple)?;
    let mut report = RunReport::new("lambda");
    report.param("n", n).param("triple", triple);
    let full = lambda_vector(&t);
    match mode {
        None => {
            report.param("condense", "none");
            report.row("coefficients", vector_string(&full.lambda));
            report.payload = Some(("vector".into(), full.to_json(Some(&t))));
            let residual = evaluate_identity(&full);
            report.row("residual", rat_string(&residual));
            if !residual.is_zero() {
                report.fail("convolution residual", "0", rat_string(&residual));
            }
        }
        Some(which) => {
            report.param("condense", which);
            let mode = if which == "definition" {
                CondenseMode::Definition
            } else {
                CondenseMode::Symmetric
            };
            let folded = condense(&full, mode);
            report.row("coefficients", vector_string(&folded.mu));
            report.payload = Some(("vector".into(), folded.to_json(Some(&t))));
            let residual = evaluate_condensed(&folded);
            report.row("residual", rat_string(&residual));
            match mode {
                CondenseMode::Definition => {
                    if !residual.is_zero() {
                        report.fail("condensed residual", "0", rat_string(&residual));
                    }
                }
                CondenseMode::Symmetric => {
                    // symmetric folds leave exactly the middle term
                    let middle = &full.lambda[n / 2] * bernoulli(n / 2) * bernoulli(n / 2);
                    if residual != middle {
                        report.fail(
                            "symmetric residual",
                            rat_string(&middle),
                            rat_string(&residual),
                        );
                    }
                }
            }
        }
    }
    Ok(report)
}

fn even_range(from: usize, to: usize) -> Vec<usize> {
    (from..=to).filter(|n| n % 2 == 0).collect()
}

fn cmd_verify(n_from: usize, n_to: usize, jobs: usize) -> Result<RunReport, CliError> {
    if n_from < 4 {
        return Err(CliError("verify needs --n-from >= 4".into()));
    }
    let mut report = RunReport::new("verify");
    report.param("n-from", n_from).param("n-to", n_to);
    warm_bernoulli(n_to);

    let mut tasks = Vec::new();
    for n in even_range(n_from, n_to) {
        tasks.extend(triples(n)?);
    }
    let results: Vec<Vec<report::Failure>> = pool(jobs)?.install(|| {
        tasks
            .par_iter()
            .map(|t| {
                let mut local = Vec::new();
                let v = lambda_vector(t);
                let residual = evaluate_identity(&v);
                let (a, b, c) = t.abc();
                if !residual.is_zero() {
                    local.push(report::Failure {
                        location: format!("lambda(n={}; {a},{b},{c})", t.n()),
                        expected: "0".into(),
                        actual: rat_string(&residual),
                    });
                }
                // antisymmetry, checked once per unordered pair
                if a <= c {
                    let w = lambda_vector(&t.reversed());
                    let antisym = v
                        .lambda
                        .iter()
                        .zip(&w.lambda)
                        .all(|(p, q)| (p + q).is_zero());
                    if !antisym {
                        local.push(report::Failure {
                            location: format!("antisymmetry(n={}; {a},{b},{c})", t.n()),
                            expected: "lambda(a,b,c) = -lambda(c,b,a)".into(),
                            actual: "mismatch".into(),
                        });
                    }
                }
                local
            })
            .collect()
    });
    for f in results.into_iter().flatten() {
        report.failures.push(f);
    }
    // Euler specialization per n
    for n in even_range(n_from, n_to) {
        let t = Triple::new(n, n - 1, 0, 0)?;
        if lambda_vector(&t) != euler_vector(n)? {
            report.fail(
                format!("euler specialization n={n}"),
                "(n+1, C(n,1), ..., C(n,n-1), 0)",
                "mismatch",
            );
        }
    }
    report.row("triples scanned", tasks.len());
    report.row(
        "all residuals zero",
        if report.passed() { "yes" } else { "no" },
    );
    Ok(report)
}

fn cmd_gamma(n_from: usize, n_to: usize, jobs: usize) -> Result<RunReport, CliError> {
    if n_from < 1 {
        return Err(CliError("gamma needs --n-from >= 1".into()));
    }
    let mut report = RunReport::new("gamma");
    report.param("n-from", n_from).param("n-to", n_to);
    warm_bernoulli(n_to + 2);

    let mut tasks = Vec::new();
    for n in n_from..=n_to {
        for a in 0..=(n - 1) {
            for b in 0..=(n - 1 - a) {
                tasks.push((n, a, b, n - 1 - a - b));
            }
        }
    }
    let results: Vec<Option<report::Failure>> = pool(jobs)?.install(|| {
        tasks
            .par_iter()
            .map(|&(n, a, b, c)| {
                let g = gamma_oracle(n, a, b, c).expect("valid triple by construction");
                if g.is_zero() {
                    None
                } else {
                    Some(report::Failure {
                        location: format!("gamma(n={n}; {a},{b},{c})"),
                        expected: "0".into(),
                        actual: rat_string(&g),
                    })
                }
            })
            .collect()
    });
    for f in results.into_iter().flatten() {
        report.failures.push(f);
    }
    report.row("triples scanned", tasks.len());
    report.row("all gamma zero", if report.passed() { "yes" } else { "no" });
    Ok(report)
}

fn compare_essential(
    report: &mut RunReport,
    reconstructed: &EssentialVector,
    direct: &EssentialVector,
    label: &str,
) {
    for (k, value) in &direct.coords {
        let rec = &reconstructed.coords[k];
        report.row(format!("{label}[{k}]"), rat_string(value));
        if rec != value {
            report.fail(
                format!("{label} at k={k}"),
                rat_string(value),
                rat_string(rec),
            );
        }
    }
}

fn cmd_miki(n: usize) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("miki");
    report.param("n", n);
    let direct = EssentialVector::project(n, &miki_vector(n)?);
    let rec = miki_reconstruction(n)?;
    compare_essential(&mut report, &rec, &direct, "M");
    report.row(
        "reconstruction matches",
        if report.passed() { "yes" } else { "no" },
    );
    Ok(report)
}

fn cmd_euler(n: usize) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("euler");
    report.param("n", n);
    let euler = condense(&euler_vector(n)?, CondenseMode::Definition);
    let direct = EssentialVector::project(n, &euler.mu);
    let rec = euler_reconstruction(n)?;
    compare_essential(&mut report, &rec, &direct, "E");
    report.row(
        "reconstruction matches",
        if report.passed() { "yes" } else { "no" },
    );
    Ok(report)
}

fn cmd_ranks(n: usize) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("ranks");
    report.param("n", n);
    let dim = identity_space_dimension(n)?;
    let rank_sym = image_rank(n, CondenseMode::Symmetric)?;
    let rank_def = image_rank(n, CondenseMode::Definition)?;
    let miki_ok = miki_in_span(n)?;
    let euler_ok = euler_in_span(n)?;
    report.row("essential coordinates", essential_indices(n).len());
    report.row("identity space dimension", dim);
    report.row("expected dimension floor(n/4)", n / 4);
    report.row("image rank", rank_sym);
    report.row("miki in image span", if miki_ok { "yes" } else { "no" });
    report.row("euler in image span", if euler_ok { "yes" } else { "no" });
    if dim != n / 4 {
        report.fail("identity space dimension", n / 4, dim);
    }
    if rank_sym != rank_def {
        report.fail("rank mode independence", rank_sym, rank_def);
    }
    if rank_sym > dim {
        report.fail(
            "image rank bounded by dimension",
            format!("<= {dim}"),
            rank_sym,
        );
    }
    if !miki_ok {
        report.fail("miki in image span", "true", "false");
    }
    if !euler_ok {
        report.fail("euler in image span", "true", "false");
    }
    Ok(report)
}

fn cmd_d2(max_len: usize, flip_b1: bool) -> Result<RunReport, CliError> {
    if max_len == 0 {
        return Err(CliError("d2 needs --max-len >= 1".into()));
    }
    let mut report = RunReport::new("d2");
    report.param("max-len", max_len).param("flip-b1", flip_b1);
    let diff = if flip_b1 {
        Differential::flipped_b1()
    } else {
        Differential::standard()
    };
    let check = d_squared_check_with(max_len, diff);
    for (g, terms) in &check.residuals {
        report.row(format!("D^2({}) nonzero words", g.symbol()), terms.len());
        for (w, c) in terms {
            report.fail(
                format!("D^2({}) at word {w}", g.symbol()),
                "0",
                rat_string(c),
            );
        }
    }
    Ok(report)
}

fn cmd_gauge_ls(max_len: usize) -> Result<RunReport, CliError> {
    if max_len == 0 {
        return Err(CliError("gauge-ls needs --max-len >= 1".into()));
    }
    let mut report = RunReport::new("gauge-ls");
    report.param("max-len", max_len);
    for l in 1..=max_len {
        let transported = gauge_transport(l);
        let beta = Series::generator(Letter::Beta, l);
        if transported == beta {
            report.row(format!("x*α at truncation {l}"), "β");
        } else {
            let diff = transported.sub(&beta);
            for (w, c) in diff.terms() {
                report.fail(
                    format!("x*α - β at truncation {l}, word {w}"),
                    "0",
                    rat_string(c),
                );
            }
        }
        if l == max_len {
            report.payload = Some(("series".into(), transported.to_json()));
        }
    }
    Ok(report)
}

fn load_model(path: &std::path::Path) -> Result<FiniteDgl, CliError> {
    FiniteDgl::from_path(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn parse_element(model: &FiniteDgl, spec: &str) -> Result<DglElement, CliError> {
    if let Some(i) = model.basis_index(spec.trim()) {
        return Ok(model.basis_element(i));
    }
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != model.dim() {
        return Err(CliError(format!(
            "element `{spec}` is neither a basis name nor {} comma-separated rationals",
            model.dim()
        )));
    }
    let mut coeffs = Vec::with_capacity(parts.len());
    for p in parts {
        coeffs.push(parse_rat(p).map_err(|e| CliError(e.to_string()))?);
    }
    Ok(DglElement { coeffs })
}

fn cmd_dgl_validate(args: &ModelArgs) -> Result<RunReport, CliError> {
    let model = load_model(&args.model)?;
    let mut report = RunReport::new("dgl validate");
    report.param("model", args.model.display());
    report.row("basis size", model.dim());
    for i in 0..model.dim() {
        report.row(
            format!("basis[{i}]"),
            format!("{} (degree {})", model.name(i), model.degree(i)),
        );
    }
    let validation = model.validate();
    report.row("violations", validation.violations.len());
    for v in &validation.violations {
        report.fail(v.to_string(), "axiom holds", "violated");
    }
    Ok(report)
}

fn cmd_dgl_gauge(args: &GaugeArgs) -> Result<RunReport, CliError> {
    let model = load_model(&args.model)?;
    let x = parse_element(&model, &args.x)?;
    let a = parse_element(&model, &args.a)?;
    let mut report = RunReport::new("dgl gauge");
    report
        .param("model", args.model.display())
        .param("x", &args.x)
        .param("a", &args.a)
        .param("bound", args.bound);
    let moved = model.gauge(&x, &a, args.bound)?;
    let residual_in = model.mc_residual(&a)?;
    let residual_out = model.mc_residual(&moved)?;
    report.row("x", model.format_element(&x));
    report.row("a", model.format_element(&a));
    report.row("x * a", model.format_element(&moved));
    report.row("mc residual of a", model.format_element(&residual_in));
    report.row("mc residual of x * a", model.format_element(&residual_out));
    if residual_in.is_zero() && !residual_out.is_zero() {
        report.fail(
            "gauge preserves Maurer-Cartan",
            "0",
            model.format_element(&residual_out),
        );
    }
    Ok(report)
}

fn cmd_dgl_flow(args: &GaugeArgs) -> Result<RunReport, CliError> {
    let model = load_model(&args.model)?;
    let x = parse_element(&model, &args.x)?;
    let a = parse_element(&model, &args.a)?;
    let mut report = RunReport::new("dgl flow");
    report
        .param("model", args.model.display())
        .param("x", &args.x)
        .param("a", &args.a)
        .param("bound", args.bound);
    let cmp = model.flow_check(&x, &a, args.bound)?;
    report.row("gauge formula", model.format_element(&cmp.via_gauge));
    report.row("flow at t=1", model.format_element(&cmp.via_flow));
    report.row("agreement", if cmp.agrees() { "yes" } else { "no" });
    if !cmp.agrees() {
        report.fail(
            "flow equals gauge",
            model.format_element(&cmp.via_gauge),
            model.format_element(&cmp.via_flow),
        );
    }
    Ok(report)
}
