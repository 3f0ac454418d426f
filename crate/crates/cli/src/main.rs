//! `ruelle-bands` — exact reports on the first-band resonance ↔ Laplace
//! eigenvalue correspondence for real and complex hyperbolic spaces.
//!
//! Every numeric input is a rational (or the `a+bi` grammar over rationals);
//! every numeric output is exact, with floating-point companions for display.
//! Exit codes are a stable contract: 0 success, 2 usage error, 3 domain
//! error, 4 self-test failure.

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use ruelle_core::exactnum::{quad_mul, ComplexQuad, QuadExt, Rational};
use ruelle_core::parse::{parse_lambda, parse_rational, resolve_irrep, IrrepLiteral};
use ruelle_core::reps::{
    branch_to_m, centralizer_m, check_assumption1, check_assumption2, maximal_compact,
    multiplicity, IrrepSpec,
};
use ruelle_core::rootdata::{
    band_lines, normalization_convert, restricted_root_data, Family, RankOneGroup,
};
use ruelle_core::selftest::{run_selftest, CheckResult, CheckStatus, Profile};
use ruelle_core::spectrum::{
    correspondence_report, CorrespondenceReport, DualComplex, DualRational, JordanVerdict,
};

/// Hard cap on λ-grid size; grids are expanded eagerly and evaluated in
/// parallel, so this bounds both memory and runtime.
const GRID_LIMIT: usize = 100_000;

#[derive(Parser)]
#[command(
    name = "ruelle-bands",
    version,
    about = "Exact resonance-band and Laplace-eigenvalue reports for rank-one hyperbolic spaces",
    after_help = "Exit codes: 0 success, 2 usage error, 3 domain error, 4 self-test failure."
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,

    /// Render table numbers as floats (15 significant digits). JSON output
    /// always carries exact values alongside their float companions.
    #[arg(long, global = true)]
    float: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Restricted-root constants and band lines of one group.
    DescribeGroup(DescribeGroupArgs),
    /// Decompose a K-irrep σ into M-irreps.
    Branch(BranchArgs),
    /// Full first-band report for (σ, τ) at one or many spectral parameters λ.
    Correspond(CorrespondArgs),
    /// The horizontal lines Re λ = −‖ρ‖ − k‖α₀‖ carrying non-real resonances.
    Bands(BandsArgs),
    /// Jordan-block verdict for the first band at one λ.
    Jordan(JordanArgs),
    /// Multiplicity-one and Weyl-invariance flags for the branches of σ.
    CheckAssumptions(CheckAssumptionsArgs),
    /// Re-verify the library against its matrix Lie-algebra models.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// SO(n+1,1)₀, real hyperbolic space H^{n+1}.
    So,
    /// SU(n+1,1), complex hyperbolic space.
    Su,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::So => Family::RealHyperbolic,
            FamilyArg::Su => Family::ComplexHyperbolic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum NormalizationArg {
    /// Killing-form normalization used by all exact formulas here.
    Paper,
    /// Sectional curvature −1 metric; λ scales by √(2n), μ by 2n (SO only).
    CurvatureMinusOne,
}

impl NormalizationArg {
    fn name(self) -> &'static str {
        match self {
            NormalizationArg::Paper => "paper",
            NormalizationArg::CurvatureMinusOne => "curvature_minus_one",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LambdaUnit {
    /// λ is taken literally.
    Plain,
    /// λ is a multiple of ‖α₀‖: the value is scaled by ‖α₀‖ exactly. Lets
    /// irrational band endpoints like −‖ρ‖ = −(1/2)‖α₀‖ be entered as
    /// rationals.
    Alpha0Units,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Fast,
    Full,
}

#[derive(Args)]
struct GroupArgs {
    /// Group family.
    #[arg(long, value_enum)]
    family: FamilyArg,

    /// Rank parameter n ≥ 1 (the group is SO(n+1,1)₀ or SU(n+1,1)).
    #[arg(long)]
    n: u32,
}

impl GroupArgs {
    fn resolve(&self) -> Result<RankOneGroup> {
        RankOneGroup::new(self.family.into(), self.n).map_err(Into::into)
    }
}

#[derive(Args)]
struct DescribeGroupArgs {
    #[command(flatten)]
    group: GroupArgs,

    /// Deepest band line to list: lines k = 0..=BANDS.
    #[arg(long, default_value_t = 3)]
    bands: u32,
}

#[derive(Args)]
struct BranchArgs {
    #[command(flatten)]
    group: GroupArgs,

    /// K-irrep: `triv`, `sh:<m>`, `circ:<s>`, or `hw:[a,b,...]`.
    #[arg(long)]
    sigma: IrrepLiteral,
}

#[derive(Args)]
struct CorrespondArgs {
    #[command(flatten)]
    group: GroupArgs,

    /// K-irrep: `triv`, `sh:<m>`, `circ:<s>`, or `hw:[a,b,...]`.
    #[arg(long)]
    sigma: IrrepLiteral,

    /// M-irrep in the same grammar.
    #[arg(long)]
    tau: IrrepLiteral,

    /// Spectral parameter: `a`, `bi`, or `a±bi` with rational a, b.
    /// Repeatable.
    #[arg(
        long,
        value_parser = parse_lambda_arg,
        allow_hyphen_values = true,
        required_unless_present = "lambda_grid",
        conflicts_with = "lambda_grid"
    )]
    lambda: Vec<ComplexQuad>,

    /// Real λ grid `start:stop:step` over exact rationals, step > 0.
    #[arg(long, allow_hyphen_values = true)]
    lambda_grid: Option<GridSpec>,

    /// How to read the λ inputs.
    #[arg(long, value_enum, default_value_t = LambdaUnit::Plain)]
    lambda_unit: LambdaUnit,

    /// Normalization of the emitted λ, μ, and weight term.
    #[arg(long, value_enum, default_value_t = NormalizationArg::Paper)]
    normalization: NormalizationArg,
}

#[derive(Args)]
struct BandsArgs {
    #[command(flatten)]
    group: GroupArgs,

    /// Deepest band line: lines k = 0..=K_MAX.
    #[arg(long, default_value_t = 3)]
    k_max: u32,
}

#[derive(Args)]
struct JordanArgs {
    #[command(flatten)]
    group: GroupArgs,

    /// K-irrep: `triv`, `sh:<m>`, `circ:<s>`, or `hw:[a,b,...]`.
    #[arg(long)]
    sigma: IrrepLiteral,

    /// M-irrep in the same grammar.
    #[arg(long)]
    tau: IrrepLiteral,

    /// Spectral parameter: `a`, `bi`, or `a±bi` with rational a, b.
    #[arg(long, value_parser = parse_lambda_arg, allow_hyphen_values = true)]
    lambda: ComplexQuad,

    /// How to read the λ input.
    #[arg(long, value_enum, default_value_t = LambdaUnit::Plain)]
    lambda_unit: LambdaUnit,
}

#[derive(Args)]
struct CheckAssumptionsArgs {
    #[command(flatten)]
    group: GroupArgs,

    /// K-irrep: `triv`, `sh:<m>`, `circ:<s>`, or `hw:[a,b,...]`.
    #[arg(long)]
    sigma: IrrepLiteral,

    /// Restrict the report to one M-irrep (reported even at multiplicity 0).
    #[arg(long)]
    tau: Option<IrrepLiteral>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Check depth; defaults to $RUELLE_BANDS_PROFILE, then `fast`.
    #[arg(long, value_enum)]
    profile: Option<ProfileArg>,

    /// Corrupt one structure constant first, to prove the checks can fail.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

/// clap value parser for λ literals; syntax errors surface as usage errors.
fn parse_lambda_arg(s: &str) -> Result<ComplexQuad, String> {
    parse_lambda(s).map_err(|e| e.to_string())
}

/// `start:stop:step` over exact rationals. Syntax only; ranges are validated
/// when the grid is expanded.
#[derive(Clone, Debug)]
struct GridSpec {
    start: Rational,
    stop: Rational,
    step: Rational,
}

impl std::str::FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts.as_slice() else {
            return Err(format!("`{s}` is not start:stop:step"));
        };
        let rat =
            |p: &str| parse_rational(p).map_err(|e| format!("in grid `{s}`: {e}"));
        Ok(GridSpec { start: rat(start)?, stop: rat(stop)?, step: rat(step)? })
    }
}

impl GridSpec {
    fn expand(&self) -> Result<Vec<Rational>> {
        if !self.step.is_positive() {
            bail!("grid step must be positive, got {}", self.step);
        }
        if self.stop < self.start {
            bail!("empty grid: stop {} is below start {}", self.stop, self.start);
        }
        let mut points = Vec::new();
        let mut current = self.start.clone();
        while current <= self.stop {
            points.push(current.clone());
            if points.len() > GRID_LIMIT {
                bail!("λ-grid has more than {GRID_LIMIT} points");
            }
            current = &current + &self.step;
        }
        Ok(points)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let style = Style { format: cli.output, float: cli.float };
    match run(cli.command, style) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command, style: Style) -> Result<ExitCode> {
    match command {
        Command::DescribeGroup(args) => cmd_describe_group(args, style)?,
        Command::Branch(args) => cmd_branch(args, style)?,
        Command::Correspond(args) => cmd_correspond(args, style)?,
        Command::Bands(args) => cmd_bands(args, style)?,
        Command::Jordan(args) => cmd_jordan(args, style)?,
        Command::CheckAssumptions(args) => cmd_check_assumptions(args, style)?,
        Command::Selftest(args) => return cmd_selftest(args, style),
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// Rendering

#[derive(Clone, Copy)]
struct Style {
    format: OutputFormat,
    float: bool,
}

impl Style {
    fn emit<T: Serialize>(&self, doc: &T, table: impl FnOnce(&Style)) -> Result<()> {
        match self.format {
            OutputFormat::Json => {
                println!("{}", serde_json::to_string_pretty(doc)?);
            }
            OutputFormat::Table => table(self),
        }
        Ok(())
    }

    fn quad(&self, q: &QuadExt) -> String {
        if self.float {
            float15(q.approx())
        } else {
            q.to_string()
        }
    }

    fn complex(&self, c: &ComplexQuad) -> String {
        if self.float {
            let (re, im) = c.approx();
            if im == 0.0 {
                float15(re)
            } else {
                format!("{} + {}i", float15(re), float15(im))
            }
        } else {
            c.to_string()
        }
    }

    fn rational(&self, r: &Rational) -> String {
        if self.float {
            float15(r.to_f64())
        } else {
            r.to_string()
        }
    }
}

/// Shortest decimal form of `x` rounded to 15 significant digits.
fn float15(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float reparses");
    format!("{rounded}")
}

fn print_table(headers: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        println!("{}", padded.join("  ").trim_end());
    };
    line(headers.iter().map(|h| h.to_string()).collect());
    line(widths.iter().map(|w| "-".repeat(*w)).collect());
    for row in rows {
        line(row.clone());
    }
}

fn jordan_cell(j: &JordanVerdict) -> String {
    if j.exact {
        format!("{}", j.max_size)
    } else {
        format!("≤{}", j.max_size)
    }
}

// ---------------------------------------------------------------------------
// describe-group / bands

#[derive(Serialize)]
struct GroupReport {
    family: Family,
    n: u32,
    name: String,
    m_alpha: u32,
    m_2alpha: u32,
    norm_alpha0_sq: Rational,
    rho_coeff: Rational,
    norm_alpha0: QuadExt,
    norm_rho: QuadExt,
    lines: Vec<QuadExt>,
    caveat: String,
}

fn cmd_describe_group(args: DescribeGroupArgs, style: Style) -> Result<()> {
    let g = args.group.resolve()?;
    let data = restricted_root_data(&g);
    let bands = band_lines(&g, args.bands);
    let report = GroupReport {
        family: g.family,
        n: g.n,
        name: g.name(),
        m_alpha: data.m_alpha,
        m_2alpha: data.m_2alpha,
        norm_alpha0_sq: data.norm_alpha0_sq,
        rho_coeff: data.rho_coeff,
        norm_alpha0: data.norm_alpha0,
        norm_rho: data.norm_rho,
        lines: bands.lines,
        caveat: bands.caveat,
    };
    style.emit(&report, |s| {
        println!("group          {}", report.name);
        println!("m_alpha        {}", report.m_alpha);
        println!("m_2alpha       {}", report.m_2alpha);
        println!("|alpha0|^2     {}", s.rational(&report.norm_alpha0_sq));
        println!("rho/alpha0     {}", s.rational(&report.rho_coeff));
        println!("|alpha0|       {}", s.quad(&report.norm_alpha0));
        println!("|rho|          {}", s.quad(&report.norm_rho));
        for (k, l) in report.lines.iter().enumerate() {
            println!("line k={k}       Re λ = {}", s.quad(l));
        }
        println!("note           {}", report.caveat);
    })
}

fn cmd_bands(args: BandsArgs, style: Style) -> Result<()> {
    let g = args.group.resolve()?;
    let bands = band_lines(&g, args.k_max);
    style.emit(&bands, |s| {
        let rows: Vec<Vec<String>> = bands
            .lines
            .iter()
            .enumerate()
            .map(|(k, l)| vec![k.to_string(), s.quad(l)])
            .collect();
        print_table(&["k", "Re λ"], &rows);
        println!("{}", bands.caveat);
    })
}

// ---------------------------------------------------------------------------
// branch / check-assumptions

fn cmd_branch(args: BranchArgs, style: Style) -> Result<()> {
    let g = args.group.resolve()?;
    let k = maximal_compact(&g)?;
    let m = centralizer_m(&g)?;
    let sigma = resolve_irrep(&args.sigma, &k)?;
    let decomposition = branch_to_m(&sigma, false)?;
    style.emit(&decomposition, |_| {
        let rows: Vec<Vec<String>> = decomposition
            .entries
            .iter()
            .map(|e| {
                vec![
                    e.tau.describe(),
                    format!("{:?}", e.tau.highest_weight),
                    e.mult.to_string(),
                ]
            })
            .collect();
        println!("{} restricted to {}:", sigma.describe(), m.name());
        print_table(&["component", "hw", "mult"], &rows);
    })
}

#[derive(Serialize)]
struct AssumptionEntry {
    tau: IrrepSpec,
    mult: u32,
    assumption1: bool,
    assumption2: bool,
}

#[derive(Serialize)]
struct AssumptionsReport {
    group: RankOneGroup,
    sigma: IrrepSpec,
    entries: Vec<AssumptionEntry>,
}

fn cmd_check_assumptions(args: CheckAssumptionsArgs, style: Style) -> Result<()> {
    let g = args.group.resolve()?;
    let k = maximal_compact(&g)?;
    let m = centralizer_m(&g)?;
    let sigma = resolve_irrep(&args.sigma, &k)?;
    let taus: Vec<IrrepSpec> = match &args.tau {
        Some(lit) => vec![resolve_irrep(lit, &m)?],
        None => branch_to_m(&sigma, false)?.entries.into_iter().map(|e| e.tau).collect(),
    };
    let entries: Vec<AssumptionEntry> = taus
        .into_iter()
        .map(|tau| AssumptionEntry {
            mult: multiplicity(&sigma, &tau),
            assumption1: check_assumption1(&sigma, &tau),
            assumption2: check_assumption2(&tau),
            tau,
        })
        .collect();
    let report = AssumptionsReport { group: g, sigma, entries };
    style.emit(&report, |_| {
        let rows: Vec<Vec<String>> = report
            .entries
            .iter()
            .map(|e| {
                vec![
                    e.tau.describe(),
                    e.mult.to_string(),
                    e.assumption1.to_string(),
                    e.assumption2.to_string(),
                ]
            })
            .collect();
        println!("branches of {}:", report.sigma.describe());
        print_table(&["tau", "mult", "mult-one", "weyl-invariant"], &rows);
    })
}

// ---------------------------------------------------------------------------
// correspond / jordan

#[derive(Serialize)]
struct CorrespondReport {
    normalization: &'static str,
    reports: Vec<CorrespondenceReport>,
}

fn cmd_correspond(args: CorrespondArgs, style: Style) -> Result<()> {
    let g = args.group.resolve()?;
    let k = maximal_compact(&g)?;
    let m = centralizer_m(&g)?;
    let sigma = resolve_irrep(&args.sigma, &k)?;
    let tau = resolve_irrep(&args.tau, &m)?;

    let mut lambdas = args.lambda.clone();
    if let Some(grid) = &args.lambda_grid {
        lambdas.extend(grid.expand()?.into_iter().map(ComplexQuad::from_rational));
    }
    let lambdas = apply_lambda_unit(lambdas, args.lambda_unit, &g)?;

    // Reports are independent; evaluate in parallel, keeping input order.
    let reports = lambdas
        .par_iter()
        .map(|l| correspondence_report(&g, &sigma, &tau, l))
        .collect::<Result<Vec<_>, _>>()?;
    let reports = match args.normalization {
        NormalizationArg::Paper => reports,
        NormalizationArg::CurvatureMinusOne => reports
            .into_iter()
            .map(|r| convert_normalization(&g, r))
            .collect::<Result<Vec<_>, _>>()?,
    };

    let doc = CorrespondReport { normalization: args.normalization.name(), reports };
    style.emit(&doc, |s| {
        let rows: Vec<Vec<String>> = doc
            .reports
            .iter()
            .map(|r| {
                vec![
                    s.complex(&r.lambda.value()),
                    s.complex(&r.mu.value()),
                    s.rational(&r.weight_term.exact),
                    r.assumption1.to_string(),
                    r.assumption2.to_string(),
                    jordan_cell(&r.jordan),
                ]
            })
            .collect();
        println!(
            "{} on the first band: σ = {}, τ = {} ({} normalization)",
            doc.reports.first().map_or_else(String::new, |r| r.group.name()),
            sigma.describe(),
            tau.describe(),
            doc.normalization
        );
        print_table(&["lambda", "mu", "weight term", "mult-one", "weyl-inv", "jordan"], &rows);
    })
}

/// Rescales λ, μ, and the weight term of a finished report into the
/// curvature −1 convention. Flags and the Jordan verdict are scale-invariant.
fn convert_normalization(
    g: &RankOneGroup,
    r: CorrespondenceReport,
) -> Result<CorrespondenceReport> {
    let lambda = r.lambda.value();
    let mu = r.mu.value();
    let (lambda_c, mu_re) = normalization_convert(g, &lambda, &mu.re)?;
    let (_, mu_im) = normalization_convert(g, &lambda, &mu.im)?;
    let (_, wt) =
        normalization_convert(g, &lambda, &QuadExt::from_rational(r.weight_term.exact.clone()))?;
    let wt = wt
        .as_rational()
        .cloned()
        .expect("an integer multiple of a rational weight term is rational");
    Ok(CorrespondenceReport {
        lambda: DualComplex::new(&lambda_c),
        mu: DualComplex::new(&ComplexQuad::new(mu_re, mu_im)),
        weight_term: DualRational::new(wt),
        ..r
    })
}

fn apply_lambda_unit(
    lambdas: Vec<ComplexQuad>,
    unit: LambdaUnit,
    g: &RankOneGroup,
) -> Result<Vec<ComplexQuad>> {
    match unit {
        LambdaUnit::Plain => Ok(lambdas),
        LambdaUnit::Alpha0Units => {
            let alpha0 = restricted_root_data(g).norm_alpha0;
            lambdas
                .into_iter()
                .map(|l| {
                    Ok(ComplexQuad::new(
                        quad_mul(&l.re, &alpha0)?,
                        quad_mul(&l.im, &alpha0)?,
                    ))
                })
                .collect()
        }
    }
}

#[derive(Serialize)]
struct JordanReport {
    group: RankOneGroup,
    sigma: IrrepSpec,
    tau: IrrepSpec,
    lambda: DualComplex,
    assumption1: bool,
    assumption2: bool,
    jordan: JordanVerdict,
}

fn cmd_jordan(args: JordanArgs, style: Style) -> Result<()> {
    let g = args.group.resolve()?;
    let k = maximal_compact(&g)?;
    let m = centralizer_m(&g)?;
    let sigma = resolve_irrep(&args.sigma, &k)?;
    let tau = resolve_irrep(&args.tau, &m)?;
    let lambda = apply_lambda_unit(vec![args.lambda.clone()], args.lambda_unit, &g)?
        .pop()
        .expect("one λ in, one λ out");
    let full = correspondence_report(&g, &sigma, &tau, &lambda)?;
    let report = JordanReport {
        group: full.group,
        sigma: full.sigma,
        tau: full.tau,
        lambda: full.lambda,
        assumption1: full.assumption1,
        assumption2: full.assumption2,
        jordan: full.jordan,
    };
    style.emit(&report, |s| {
        println!("lambda          {}", s.complex(&report.lambda.value()));
        println!("mult-one        {}", report.assumption1);
        println!("weyl-invariant  {}", report.assumption2);
        println!("max block size  {}", jordan_cell(&report.jordan));
        println!("note            {}", report.jordan.hypothesis_note);
    })
}

// ---------------------------------------------------------------------------
// selftest

#[derive(Serialize)]
struct SelftestReport {
    profile: &'static str,
    passed: usize,
    failed: usize,
    checks: Vec<CheckResult>,
}

fn cmd_selftest(args: SelftestArgs, style: Style) -> Result<ExitCode> {
    let profile = match args.profile {
        Some(ProfileArg::Fast) => Profile::Fast,
        Some(ProfileArg::Full) => Profile::Full,
        None => match std::env::var("RUELLE_BANDS_PROFILE") {
            Ok(v) => Profile::parse(&v).ok_or_else(|| {
                anyhow!("RUELLE_BANDS_PROFILE must be `fast` or `full`, got `{v}`")
            })?,
            Err(_) => Profile::Fast,
        },
    };
    let checks = run_selftest(profile, args.inject_fault);
    let failed = checks.iter().filter(|c| c.status == CheckStatus::Fail).count();
    let report = SelftestReport {
        profile: if profile == Profile::Fast { "fast" } else { "full" },
        passed: checks.len() - failed,
        failed,
        checks,
    };
    style
        .emit(&report, |_| {
            for check in &report.checks {
                match &check.witness {
                    Some(w) => println!("FAIL {} — {w}", check.check_name),
                    None => println!("PASS {}", check.check_name),
                }
            }
            println!(
                "{} checks: {} passed, {} failed",
                report.passed + report.failed,
                report.passed,
                report.failed
            );
        })
        .context("emitting self-test report")?;
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(4) })
}
