mod render;

use std::env;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fatrec_core::correlators::{CacheFile, CacheLock, Correlators};
use fatrec_core::cutjoin::verify_cut_join;
use fatrec_core::exactalg::parse_rat;
use fatrec_core::graphspace::{
    enumerate, graph_sum_to_tpoly, oracle_correlator, verify_abstract_range, verify_oracle,
};
use fatrec_core::npoint::{qsc_residual, verify_npoint, w_from_correlators, w_recursion};
use fatrec_core::report::Report;
use fatrec_core::virasoro::{
    coupling_probes, spectral_curve_check, verify_commutators, verify_heisenberg, verify_virasoro,
    y_squared_negative_part,
};
use fatrec_core::{Error, Rat};

const DEFAULT_CACHE: &str = "fatrec-cache.json";

#[derive(Parser)]
#[command(
    name = "fatrec",
    version,
    about = "Exact fat-graph counts, matrix-model correlators and their constraints"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Do not read or write the correlator cache
    #[arg(long, global = true)]
    no_cache: bool,
    /// Re-derive cached entries and cross-check results by an independent route
    #[arg(long, global = true)]
    paranoid: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// F_g^mu(t)
    Correlator {
        #[arg(long)]
        g: i64,
        #[arg(long, value_delimiter = ',', required = true)]
        mu: Vec<usize>,
        /// Evaluate at this rational t
        #[arg(long, value_parser = parse_t)]
        t: Option<Rat>,
    },
    /// Isomorphism classes of connected fat graphs
    Enumerate {
        #[arg(long, value_delimiter = ',', required = true)]
        mu: Vec<usize>,
        #[arg(long)]
        genus: Option<i64>,
        /// One line per class
        #[arg(long)]
        details: bool,
    },
    /// F_g as a series in the couplings
    FreeEnergy {
        #[arg(long)]
        genus: i64,
        #[arg(long, default_value_t = 6)]
        max_weight: u32,
    },
    /// Z = exp(Σ gs^{2g-2} F_g)
    Partition {
        #[arg(long, default_value_t = 6)]
        max_weight: u32,
    },
    /// W_{g,n} for Σ mu_i <= max-weight
    Npoint {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        max_weight: u32,
    },
    /// Schrödinger-type identity for the averaged n-point functions
    Qsc {
        #[arg(long, default_value_t = 3)]
        m_max: u32,
        #[arg(long, default_value_t = 8)]
        max_weight: u32,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, allow_hyphen_values = true)]
        m_max: Option<i64>,
        #[arg(long)]
        max_weight: Option<u32>,
        /// z- or x-order for the spectral and deformation suites
        #[arg(long)]
        order: Option<u32>,
        /// Largest number of vertices for abstract-rec and oracle
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Inspect or maintain the correlator cache
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    AbstractRec,
    Oracle,
    Virasoro,
    Commutators,
    Heisenberg,
    Cutjoin,
    Npoint,
    Qsc,
    Spectral,
    Deformation,
}

#[derive(Clone, Copy, ValueEnum)]
enum CacheAction {
    Show,
    Audit,
    Roundtrip,
    Clear,
}

fn parse_t(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::ZeroValenceInside
            | Error::OddHalfEdges(_)
            | Error::InvalidInvolution(_)
            | Error::Parse(_)
            | Error::BaseCase => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

/// `true` when every check passed.
type Outcome = Result<bool, Failure>;

fn cache_path() -> PathBuf {
    env::var_os("FATREC_CACHE")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE))
}

/// The correlator table, backed by the cache file unless `--no-cache`.
struct Session {
    table: Correlators,
    path: Option<PathBuf>,
    loaded: usize,
    _lock: Option<CacheLock>,
}

impl Session {
    fn open(cli: &Cli) -> Result<Self, Failure> {
        if cli.no_cache {
            return Ok(Self {
                table: Correlators::new(),
                path: None,
                loaded: 0,
                _lock: None,
            });
        }
        let path = cache_path();
        let lock = CacheLock::acquire(&path)?;
        let table = Correlators::load(&path)?;
        let loaded = table.len();
        Ok(Self {
            table,
            path: Some(path),
            loaded,
            _lock: Some(lock),
        })
    }

    /// Audit report for `--paranoid`; `None` when the table is trusted.
    fn audit(&self, cli: &Cli) -> Result<Option<Report>, Failure> {
        if !cli.paranoid || self.loaded == 0 {
            return Ok(None);
        }
        let mut report = Report::new("cache-audit").param("entries", self.loaded);
        for v in self.table.audit()? {
            report.violation(v);
        }
        Ok(Some(report))
    }

    fn close(self) -> Result<(), Failure> {
        if let Some(path) = &self.path {
            if self.table.len() != self.loaded {
                self.table.save(path)?;
            }
        }
        Ok(())
    }
}

fn emit(cli: &Cli, text: impl std::fmt::Display, value: Value) {
    match cli.format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{value}"),
    }
}

fn emit_reports(cli: &Cli, reports: &[Report]) -> bool {
    for r in reports {
        emit(cli, r, r.to_json());
    }
    reports.iter().all(Report::passed)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Enumerate { mu, genus, details } => {
            return run_enumerate(cli, mu, *genus, *details)
        }
        Command::Cache { action } => return run_cache(cli, *action),
        Command::Verify {
            suite,
            m_max,
            max_weight,
            order,
            max_n,
        } if !suite_uses_table(*suite) => {
            return run_verify(
                cli,
                &Correlators::new(),
                *suite,
                *m_max,
                *max_weight,
                *order,
                *max_n,
            )
        }
        _ => {}
    }

    let session = Session::open(cli)?;
    if let Some(report) = session.audit(cli)? {
        if !report.passed() {
            emit_reports(cli, &[report]);
            return Ok(false);
        }
    }
    let table = &session.table;
    let ok = match &cli.command {
        Command::Correlator { g, mu, t } => run_correlator(cli, table, *g, mu, t.as_ref())?,
        Command::FreeEnergy { genus, max_weight } => {
            let f = table.free_energy(*genus, *max_weight)?;
            emit(cli, &f, render::coupling_series(&f));
            true
        }
        Command::Partition { max_weight } => {
            let z = table.partition_function(*max_weight)?;
            emit(cli, &z, render::coupling_series(&z));
            true
        }
        Command::Npoint { g, n, max_weight } => run_npoint(cli, table, *g, *n, *max_weight)?,
        Command::Qsc { m_max, max_weight } => {
            emit_reports(cli, &[qsc_residual(table, *m_max, *max_weight)?])
        }
        Command::Verify {
            suite,
            m_max,
            max_weight,
            order,
            max_n,
        } => run_verify(cli, table, *suite, *m_max, *max_weight, *order, *max_n)?,
        Command::Enumerate { .. } | Command::Cache { .. } => unreachable!(),
    };
    session.close()?;
    Ok(ok)
}

fn run_correlator(
    cli: &Cli,
    table: &Correlators,
    g: i64,
    mu: &[usize],
    t: Option<&Rat>,
) -> Outcome {
    let f = table.get(g, mu)?;
    let mut value = json!({"g": g, "mu": mu, "terms": render::tpoly(&f)});
    let text = match t {
        Some(t) => {
            let v = f.eval(t);
            value["t"] = Value::from(t.to_string());
            value["value"] = Value::from(v.to_string());
            v.to_string()
        }
        None => f.to_string(),
    };
    if cli.paranoid && mu.iter().sum::<usize>() <= 12 {
        let oracle = oracle_correlator(g, mu)?;
        if oracle != f {
            return Err(Failure::Runtime(format!(
                "recursion gives {f}, enumeration gives {oracle}"
            )));
        }
    }
    emit(cli, text, value);
    Ok(true)
}

fn run_enumerate(cli: &Cli, mu: &[usize], genus: Option<i64>, details: bool) -> Outcome {
    let size: usize = mu.iter().sum();
    let top = ((size / 2 + 1).saturating_sub(mu.len()) / 2) as i64;
    let genera: Vec<i64> = match genus {
        Some(g) => vec![g],
        None => (0..=top).collect(),
    };
    let mut lines = Vec::new();
    let mut blocks = Vec::new();
    for g in genera {
        let classes = enumerate(g, mu)?;
        let total = graph_sum_to_tpoly(&classes);
        if cli.paranoid && total != fatrec_core::correlators::correlator(g, mu)? {
            return Err(Failure::Runtime(format!(
                "genus {g}: enumeration disagrees with recursion"
            )));
        }
        let noun = if classes.len() == 1 {
            "class"
        } else {
            "classes"
        };
        lines.push(format!(
            "genus {g}: {} {noun}, total {total}",
            classes.len()
        ));
        let mut graphs = Vec::new();
        if details {
            for (graph, c) in classes.terms() {
                let faces = graph.face_count();
                let alpha = graph.alpha_cycles();
                lines.push(format!("coeff={c} faces={faces} genus={g} alpha={alpha}"));
                graphs.push(
                    json!({"coeff": c.to_string(), "faces": faces, "genus": g, "alpha": alpha}),
                );
            }
        }
        let mut block =
            json!({"genus": g, "classes": classes.len(), "total": render::tpoly(&total)});
        if details {
            block["graphs"] = Value::from(graphs);
        }
        blocks.push(block);
    }
    emit(cli, lines.join("\n"), json!({"mu": mu, "genera": blocks}));
    Ok(true)
}

fn run_npoint(cli: &Cli, table: &Correlators, g: i64, n: usize, k: u32) -> Outcome {
    let w = w_from_correlators(table, g, n, k)?;
    if cli.paranoid && (g, n) != (0, 1) && w_recursion(g, n, k)? != w {
        return Err(Failure::Runtime(format!(
            "W_{{{g},{n}}}: recursion disagrees with the correlators"
        )));
    }
    emit(cli, &w, render::xseries(&w, n));
    Ok(true)
}

fn suite_uses_table(suite: Suite) -> bool {
    !matches!(
        suite,
        Suite::AbstractRec | Suite::Commutators | Suite::Heisenberg
    )
}

fn run_verify(
    cli: &Cli,
    table: &Correlators,
    suite: Suite,
    m_max: Option<i64>,
    max_weight: Option<u32>,
    order: Option<u32>,
    max_n: Option<usize>,
) -> Outcome {
    let w = |d: u32| max_weight.unwrap_or(d);
    let nonneg = |name: &str, v: i64| -> Result<u32, Failure> {
        u32::try_from(v).map_err(|_| Failure::Usage(format!("--{name} must be non-negative")))
    };
    let reports = match suite {
        Suite::AbstractRec => vec![verify_abstract_range(w(6) as usize, max_n.unwrap_or(3))?],
        Suite::Oracle => vec![verify_oracle(table, w(8) as usize, max_n.unwrap_or(4))?],
        Suite::Virasoro => verify_virasoro(table, m_max.unwrap_or(2), w(6))?,
        Suite::Commutators => {
            let probes = coupling_probes(w(6) as usize, 6);
            vec![verify_commutators(m_max.unwrap_or(4), &probes)?]
        }
        Suite::Heisenberg => {
            let probes = coupling_probes(w(6) as usize, 6);
            vec![verify_heisenberg(m_max.unwrap_or(6), &probes)?]
        }
        Suite::Cutjoin => vec![verify_cut_join(table, w(6).div_ceil(2))?],
        Suite::Npoint => vec![verify_npoint(table, w(8))?],
        Suite::Qsc => {
            let m = nonneg("m-max", m_max.unwrap_or(3))?;
            vec![qsc_residual(table, m, w(8))?]
        }
        Suite::Spectral => vec![spectral_curve_check(table, order.unwrap_or(8))?],
        Suite::Deformation => vec![y_squared_negative_part(table, w(4), order.unwrap_or(6))?],
    };
    Ok(emit_reports(cli, &reports))
}

fn run_cache(cli: &Cli, action: CacheAction) -> Outcome {
    if cli.no_cache {
        return Err(Failure::Usage(
            "the cache subcommand cannot run with --no-cache".into(),
        ));
    }
    let path = cache_path();
    let _lock = CacheLock::acquire(&path)?;
    match action {
        CacheAction::Show => {
            let table = Correlators::load(&path)?;
            let file = CacheFile::from_table(&table);
            let value: Value = serde_json::from_str(&file.to_json())
                .map_err(|e| Failure::Runtime(e.to_string()))?;
            emit(
                cli,
                format!("{}: {} entries", path.display(), table.len()),
                value,
            );
            Ok(true)
        }
        CacheAction::Audit => {
            let table = Correlators::load(&path)?;
            let mut report = Report::new("cache-audit").param("entries", table.len());
            for v in table.audit()? {
                report.violation(v);
            }
            Ok(emit_reports(cli, &[report]))
        }
        CacheAction::Roundtrip => {
            let table = Correlators::load(&path)?;
            let mut report = Report::new("cache").param("entries", table.len());
            match fs::read_to_string(&path) {
                Ok(on_disk) => {
                    let again = format!("{}\n", CacheFile::from_table(&table).to_json());
                    if again != on_disk {
                        report.violation("re-serialized cache differs from the file");
                    }
                }
                Err(_) => report.note("no cache file"),
            }
            Ok(emit_reports(cli, &[report]))
        }
        CacheAction::Clear => {
            if path.exists() {
                fs::remove_file(&path).map_err(|e| Failure::Runtime(e.to_string()))?;
            }
            emit(
                cli,
                format!("cleared {}", path.display()),
                json!({"cleared": path.display().to_string()}),
            );
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
