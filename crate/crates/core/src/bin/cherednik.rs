//! Command line front end: build modules, print filtration tables and
//! bigraded characters, run the coinvariant and Catalan certificates, and
//! drive the named verification suites.

use cherednik::catalan::{enumerate_paths, qt_catalan, rational_catalan_number};
use cherednik::coinv;
use cherednik::filtration::{
    compare, filtration_a, filtration_alg_prime, filtration_ind, gr_character, kazhdan,
    CompareReport, Filtration, FiltrationDoc, FiltrationKind, GrComponent,
};
use cherednik::irrep::SCHEMA_VERSION;
use cherednik::qt::QtPolynomial;
use cherednik::symgroup::Partition;
use cherednik::verify::{run_suites, CheckResult, Suite};
use cherednik::IrrepModel;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cherednik", version, about = "Exact computations for L_{m/n}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build L_{m/n} and print a summary
    Build(ParamArgs),
    /// Filtration level tables, with optional levelwise comparison
    Filtration(FiltrationArgs),
    /// Bigraded characters of the associated graded module
    Character(FiltrationArgs),
    /// Coinvariant algebra certificates, requires coprime n < m < 2n
    Coinv(ParamArgs),
    /// Dyck path statistics and the rational q,t-Catalan polynomial
    Catalan(ParamArgs),
    /// Run named verification suites
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ParamArgs {
    /// Numerator of c = m/n
    m: usize,
    /// Denominator of c = m/n, the number of variables
    n: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct FiltrationArgs {
    m: usize,
    n: usize,
    /// Comma separated list from a, alg, alg-prime, ind, ind-prime
    #[arg(long, value_delimiter = ',', default_value = "a")]
    kinds: Vec<String>,
    /// Compare every kind against the first and fail on a mismatch
    #[arg(long)]
    compare: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// all or one of dunkl, irrep, filtration, coinvariant, catalan
    #[arg(long, default_value = "all")]
    suite: String,
    /// Worker threads, defaults to the number of cores
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

enum CliError {
    Usage(String),
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Filtration(args) => cmd_filtration(args),
        Command::Character(args) => cmd_character(args),
        Command::Coinv(args) => cmd_coinv(args),
        Command::Catalan(args) => cmd_catalan(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn emit(output: &OutputArgs, content: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(doc).map_err(usage)
}

fn csv_string(rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    for row in rows {
        wtr.write_record(row).map_err(usage)?;
    }
    let bytes = wtr.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    String::from_utf8(bytes).map_err(usage)
}

fn build_model(m: usize, n: usize) -> Result<IrrepModel, CliError> {
    IrrepModel::build_mn(m, n).map_err(usage)
}

fn cmd_build(args: ParamArgs) -> Result<(), CliError> {
    let model = build_model(args.m, args.n)?;
    println!(
        "L_{}/{}: dim {}, mu = {}",
        args.m,
        args.n,
        model.total_dim(),
        model.mu()
    );
    let doc = model.to_doc();
    let content = match args.output.format {
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "graded dims: {:?}", doc.graded_dims).unwrap();
            writeln!(s, "weights:     {:?}", doc.weights).unwrap();
            write!(s, "kernel dims: {:?}", doc.kernel_dims).unwrap();
            s
        }
        Format::Json => to_json(&doc)?,
        Format::Csv => {
            let mut rows = vec![vec![
                "degree".into(),
                "weight".into(),
                "dimension".into(),
                "kernel_dimension".into(),
            ]];
            for d in 0..doc.graded_dims.len() {
                rows.push(vec![
                    d.to_string(),
                    doc.weights[d].to_string(),
                    doc.graded_dims[d].to_string(),
                    doc.kernel_dims[d].to_string(),
                ]);
            }
            csv_string(rows)?
        }
    };
    emit(&args.output, &content)
}

fn parse_kind(name: &str) -> Result<FiltrationKind, CliError> {
    match name {
        "a" => Ok(FiltrationKind::Power),
        "alg" => Ok(FiltrationKind::Algebraic),
        "alg-prime" => Ok(FiltrationKind::AlgebraicPrime),
        "ind" => Ok(FiltrationKind::Inductive),
        "ind-prime" => Ok(FiltrationKind::InductivePrime),
        other => Err(CliError::Usage(format!(
            "unsupported kind {other}: expected a, alg, alg-prime, ind or ind-prime"
        ))),
    }
}

fn compute_filtration(model: &IrrepModel, kind: FiltrationKind) -> Result<Filtration, CliError> {
    let p = model.param();
    if matches!(kind, FiltrationKind::Inductive | FiltrationKind::InductivePrime)
        && p.m < p.n
    {
        return Err(CliError::Usage(format!(
            "the inductive filtration is undefined on all of L_{}/{}: it needs m > n, \
             for m < n it exists on the invariant part only",
            p.m, p.n
        )));
    }
    let filt = match kind {
        FiltrationKind::Power => filtration_a(model),
        FiltrationKind::Algebraic => kazhdan(model, &filtration_a(model)),
        FiltrationKind::AlgebraicPrime => filtration_alg_prime(model),
        FiltrationKind::Inductive => filtration_ind(model).map_err(usage)?,
        FiltrationKind::InductivePrime => {
            let ind = filtration_ind(model).map_err(usage)?;
            kazhdan(model, &ind)
        }
    };
    Ok(filt)
}

#[derive(Serialize)]
struct FiltrationReport {
    schema_version: u32,
    tables: Vec<FiltrationDoc>,
    comparisons: Vec<CompareReport>,
}

fn cmd_filtration(args: FiltrationArgs) -> Result<(), CliError> {
    let model = build_model(args.m, args.n)?;
    let kinds: Vec<FiltrationKind> = args
        .kinds
        .iter()
        .map(|k| parse_kind(k))
        .collect::<Result<_, _>>()?;
    if kinds.is_empty() {
        return Err(CliError::Usage("no filtration kinds requested".into()));
    }
    let filts: Vec<Filtration> = kinds
        .iter()
        .map(|&k| compute_filtration(&model, k))
        .collect::<Result<_, _>>()?;
    let mut comparisons = Vec::new();
    if args.compare {
        for other in &filts[1..] {
            comparisons.push(compare(&filts[0], other).map_err(usage)?);
        }
    }
    let all_equal = comparisons.iter().all(|r| r.all_equal);
    let content = match args.output.format {
        Format::Text => {
            let mut s = String::new();
            for filt in &filts {
                writeln!(
                    s,
                    "kind {}: {} levels, cumulative dims {:?}",
                    filt.kind().label(),
                    filt.num_levels(),
                    filt.cumulative_dims()
                )
                .unwrap();
                for (i, dims) in filt.level_dims().iter().enumerate() {
                    writeln!(s, "  level {i}: dims by degree {dims:?}").unwrap();
                }
            }
            for report in &comparisons {
                if report.all_equal {
                    writeln!(s, "{} vs {}: EQUAL at all levels", report.kind_a, report.kind_b)
                        .unwrap();
                } else {
                    let (lvl, deg) = report.first_discrepancy.unwrap();
                    writeln!(
                        s,
                        "{} vs {}: differ first at level {lvl}, degree {deg}",
                        report.kind_a, report.kind_b
                    )
                    .unwrap();
                }
            }
            s.trim_end().to_string()
        }
        Format::Json => to_json(&FiltrationReport {
            schema_version: SCHEMA_VERSION,
            tables: filts.iter().map(|f| f.to_doc(&model)).collect(),
            comparisons,
        })?,
        Format::Csv => {
            let mut rows = vec![vec![
                "kind".into(),
                "level".into(),
                "degree".into(),
                "weight".into(),
                "dimension".into(),
            ]];
            for filt in &filts {
                let doc = filt.to_doc(&model);
                for row in doc.rows {
                    rows.push(vec![
                        doc.kind.clone(),
                        row.level.to_string(),
                        row.degree.to_string(),
                        row.weight.to_string(),
                        row.dimension.to_string(),
                    ]);
                }
            }
            csv_string(rows)?
        }
    };
    emit(&args.output, &content)?;
    if args.compare && !all_equal {
        return Err(CliError::Failed);
    }
    Ok(())
}

#[derive(Serialize)]
struct CharacterReport {
    schema_version: u32,
    m: usize,
    n: usize,
    kind: String,
    components: Vec<(String, QtPolynomial)>,
}

fn character_components(model: &IrrepModel, filt: &Filtration) -> Vec<(String, QtPolynomial)> {
    let n = model.param().n;
    let mut components = vec![
        (
            "all".to_string(),
            gr_character(model, filt, &GrComponent::All),
        ),
        (
            "invariant".to_string(),
            gr_character(model, filt, &GrComponent::Irrep(Partition::new(vec![n]))),
        ),
        (
            "super".to_string(),
            gr_character(model, filt, &GrComponent::Super),
        ),
    ];
    for i in 0..n {
        components.push((
            format!("hook {i}"),
            gr_character(model, filt, &GrComponent::Hook(i)),
        ));
    }
    components
}

fn cmd_character(args: FiltrationArgs) -> Result<(), CliError> {
    let model = build_model(args.m, args.n)?;
    let mut pieces = Vec::new();
    for kind_name in &args.kinds {
        let kind = parse_kind(kind_name)?;
        let filt = compute_filtration(&model, kind)?;
        pieces.push((kind, character_components(&model, &filt)));
    }
    let content = match args.output.format {
        Format::Text => {
            let mut s = String::new();
            for (kind, components) in &pieces {
                writeln!(s, "kind {}: q tracks the weight, t the level", kind.label()).unwrap();
                for (label, poly) in components {
                    writeln!(s, "  {label}: {poly}").unwrap();
                }
            }
            s.trim_end().to_string()
        }
        Format::Json => {
            let reports: Vec<CharacterReport> = pieces
                .iter()
                .map(|(kind, components)| CharacterReport {
                    schema_version: SCHEMA_VERSION,
                    m: args.m,
                    n: args.n,
                    kind: kind.label().to_string(),
                    components: components.clone(),
                })
                .collect();
            to_json(&reports)?
        }
        Format::Csv => {
            let mut rows = vec![vec![
                "kind".into(),
                "component".into(),
                "q".into(),
                "t".into(),
                "a".into(),
                "coefficient".into(),
            ]];
            for (kind, components) in &pieces {
                for (label, poly) in components {
                    for (&(q, t, a), coeff) in poly.terms() {
                        rows.push(vec![
                            kind.label().to_string(),
                            label.clone(),
                            q.to_string(),
                            t.to_string(),
                            a.to_string(),
                            coeff.to_string(),
                        ]);
                    }
                }
            }
            csv_string(rows)?
        }
    };
    emit(&args.output, &content)
}

#[derive(Serialize)]
struct CoinvReport {
    schema_version: u32,
    m: usize,
    n: usize,
    ab_zero: bool,
    rank_a: usize,
    rank_b: usize,
    expected_rank: usize,
    image_equals_kernel: bool,
    lagrangian: bool,
    springer_dim: usize,
    lattice: coinv::LatticeReport,
}

fn cmd_coinv(args: ParamArgs) -> Result<(), CliError> {
    let (m, n) = (args.m, args.n);
    let (a, b) = coinv::matrix_ab(m, n).map_err(usage)?;
    let fact: usize = (1..=n).product();
    let report = CoinvReport {
        schema_version: SCHEMA_VERSION,
        m,
        n,
        ab_zero: a.mul(&b).is_zero(),
        rank_a: a.rank(),
        rank_b: b.rank(),
        expected_rank: (2 * n - m) * fact / 2,
        image_equals_kernel: cherednik::Subspace::from_rows(a.cols, a.to_rows())
            == b.transpose().nullspace(),
        lagrangian: coinv::poincare_isotropy(m, n).map_err(usage)?,
        springer_dim: coinv::springer_min_dim(n).map_err(usage)?,
        lattice: coinv::lattice_check(m, n).map_err(usage)?,
    };
    let ok = report.ab_zero
        && report.rank_a == report.expected_rank
        && report.rank_b == report.expected_rank
        && report.image_equals_kernel
        && report.lagrangian
        && report.springer_dim == fact / 2
        && report.lattice.counterexample.is_none();
    let content = match args.output.format {
        Format::Text => {
            let mut s = String::new();
            let verdict = |b: bool| if b { "PASS" } else { "FAIL" };
            writeln!(s, "AB=0 (n={n},m={m}): {}", verdict(report.ab_zero)).unwrap();
            writeln!(
                s,
                "rank(A) = rank(B) = (2n-m) n!/2 = {}: {}",
                report.expected_rank,
                verdict(report.rank_a == report.expected_rank && report.rank_b == report.expected_rank)
            )
            .unwrap();
            writeln!(s, "Im(A) = Ker(B): {}", verdict(report.image_equals_kernel)).unwrap();
            writeln!(s, "Im(A) lagrangian: {}", verdict(report.lagrangian)).unwrap();
            writeln!(
                s,
                "springer dim = n!/2 = {}: {}",
                fact / 2,
                verdict(report.springer_dim == fact / 2)
            )
            .unwrap();
            for id in &report.lattice.identities {
                writeln!(
                    s,
                    "{}: lhs {} rhs {}: {}",
                    id.label,
                    id.lhs_dim,
                    id.rhs_dim,
                    verdict(id.lhs_dim == id.rhs_dim)
                )
                .unwrap();
            }
            s.trim_end().to_string()
        }
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let mut rows = vec![vec!["identity".into(), "lhs".into(), "rhs".into(), "ok".into()]];
            for id in &report.lattice.identities {
                rows.push(vec![
                    id.label.clone(),
                    id.lhs_dim.to_string(),
                    id.rhs_dim.to_string(),
                    (id.lhs_dim == id.rhs_dim).to_string(),
                ]);
            }
            csv_string(rows)?
        }
    };
    emit(&args.output, &content)?;
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

#[derive(Serialize)]
struct CatalanReport {
    schema_version: u32,
    m: usize,
    n: usize,
    count: usize,
    formula: String,
    polynomial: QtPolynomial,
    statistics: Vec<(usize, usize)>,
}

fn cmd_catalan(args: ParamArgs) -> Result<(), CliError> {
    let (m, n) = (args.m, args.n);
    let paths = enumerate_paths(m, n).map_err(usage)?;
    let report = CatalanReport {
        schema_version: SCHEMA_VERSION,
        m,
        n,
        count: paths.len(),
        formula: rational_catalan_number(m, n).map_err(usage)?.to_string(),
        polynomial: qt_catalan(m, n).map_err(usage)?,
        statistics: paths.iter().map(|p| (p.dinv(), p.area())).collect(),
    };
    let content = match args.output.format {
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "paths: {} of C({},{})/{} = {}", report.count, m + n, n, m + n, report.formula).unwrap();
            write!(s, "C_{{{m},{n}}}(q,t) = {}", report.polynomial).unwrap();
            s
        }
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let mut rows = vec![vec!["dinv".into(), "area".into()]];
            for (dinv, area) in &report.statistics {
                rows.push(vec![dinv.to_string(), area.to_string()]);
            }
            csv_string(rows)?
        }
    };
    emit(&args.output, &content)
}

#[derive(Serialize)]
struct VerifyReport {
    schema_version: u32,
    suites: Vec<String>,
    passed: usize,
    failed: usize,
    results: Vec<CheckResult>,
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let suites = Suite::parse(&args.suite).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown suite {}: expected all, dunkl, irrep, filtration, coinvariant or catalan",
            args.suite
        ))
    })?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .map_err(usage)?;
    let results = pool.install(|| run_suites(&suites));
    let passed = results.iter().filter(|r| r.passed).count();
    let failed = results.len() - passed;
    let content = match args.output.format {
        Format::Text => {
            let mut s = String::new();
            for r in &results {
                writeln!(
                    s,
                    "{}: {} ({}) [{} ms]",
                    r.name,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.detail,
                    r.millis
                )
                .unwrap();
            }
            write!(s, "{passed} passed, {failed} failed").unwrap();
            s
        }
        Format::Json => to_json(&VerifyReport {
            schema_version: SCHEMA_VERSION,
            suites: suites.iter().map(|s| s.name().to_string()).collect(),
            passed,
            failed,
            results,
        })?,
        Format::Csv => {
            let mut rows = vec![vec![
                "suite".into(),
                "name".into(),
                "passed".into(),
                "millis".into(),
                "detail".into(),
            ]];
            for r in &results {
                rows.push(vec![
                    r.suite.to_string(),
                    r.name.to_string(),
                    r.passed.to_string(),
                    r.millis.to_string(),
                    r.detail.clone(),
                ]);
            }
            csv_string(rows)?
        }
    };
    emit(&args.output, &content)?;
    if failed > 0 {
        return Err(CliError::Failed);
    }
    Ok(())
}
