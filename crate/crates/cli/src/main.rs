use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use satlab_core::construct::{cyclic_tight_pair, cyclic_tight_pair_in, rank_two_tight_pair, tight_pair_auto, RankTwoOptions};
use satlab_core::oracle::{
    brute_force_realizable, census, verify_negative_rank3, BruteOutcome, CensusBudget, OrbitIndex,
    DEFAULT_ORBIT_BUDGET,
};
use satlab_core::transfer::{enumerate_interior_operators, enumerate_saturated, enumerate_transfer_systems, DEFAULT_TS_BUDGET};
use satlab_core::{
    export_dot, localize_tight_pairs, realize, AxiomCheck, CharLattice, CharSetJson, Error, GroupSpec, TightPair,
    TightPairJson, TransferSystem, TransferSystemJson,
};

#[derive(Parser)]
#[command(name = "satlab", version, about = "Transfer systems and their realization on finite Abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Write the result here instead of stdout (atomically).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for brute-force search.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Subgroup lattice of a group.
    Lattice {
        #[arg(long)]
        group: String,
    },
    /// All transfer systems, or only the saturated ones.
    EnumerateTs {
        #[arg(long)]
        group: String,
        #[arg(long)]
        saturated: bool,
        /// Largest lattice to enumerate, in subgroups.
        #[arg(long, default_value_t = DEFAULT_TS_BUDGET)]
        budget: usize,
    },
    /// Number of saturated transfer systems.
    CountSaturated {
        #[arg(long)]
        group: String,
        /// Also count by filtering all transfer systems when the lattice has at most this many subgroups.
        #[arg(long, default_value_t = DEFAULT_TS_BUDGET)]
        budget: usize,
    },
    /// A universe realizing a saturated transfer system.
    Realize {
        #[arg(long)]
        group: String,
        /// `maximal`, `identity`, or a transfer-system JSON file.
        #[arg(long)]
        ts: String,
        /// `auto`, or a tight-pair JSON file.
        #[arg(long, default_value = "auto")]
        tight_pair: String,
        #[arg(long, env = "SATLAB_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive search for a universe with the given transfer system.
    BruteCheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        ts: String,
        /// Largest number of conjugation orbits to search.
        #[arg(long, default_value_t = DEFAULT_ORBIT_BUDGET)]
        budget: usize,
    },
    /// Construct a tight pair.
    TightPair {
        #[command(subcommand)]
        kind: TightPairKind,
    },
    /// Check that the rank-three counterexample is unrealizable.
    VerifyNegative {
        #[arg(long)]
        p: u64,
    },
    /// Counts of transfer systems, saturated systems and realized ones.
    Census {
        /// Groups, comma separated or repeated.
        #[arg(long, required = true, value_delimiter = ',')]
        group: Vec<String>,
        /// Largest number of conjugation orbits to search.
        #[arg(long, default_value_t = CensusBudget::default().orbits)]
        budget: usize,
        /// Largest lattice for which all transfer systems are counted.
        #[arg(long, default_value_t = CensusBudget::default().ts_subgroups)]
        ts_budget: usize,
    },
    /// Graphviz drawing of the lattice with optional transfer system and universe.
    ExportDot {
        #[arg(long)]
        group: String,
        #[arg(long)]
        ts: Option<String>,
        /// A character-set JSON file for the whole group.
        #[arg(long)]
        universe: Option<PathBuf>,
    },
    /// Sizes of the group, lattice, character group and orbit space.
    Stats {
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand)]
enum TightPairKind {
    /// Chain construction on C_{p^n}, or on the cyclic Sylow p-subgroup of `--group`.
    Cyclic {
        #[arg(long)]
        p: u64,
        #[arg(long, required_unless_present = "group")]
        n: Option<u32>,
        #[arg(long, conflicts_with = "n")]
        group: Option<String>,
    },
    /// Staged randomized construction on a rank-two p-group.
    Rank2 {
        #[arg(long)]
        group: String,
        #[arg(long, env = "SATLAB_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = RankTwoOptions::default().retries)]
        retries: usize,
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
    },
    /// Tensor product of two tight pairs on subgroups of coprime order.
    Tensor {
        #[arg(long, num_args = 2, required = true)]
        inputs: Vec<PathBuf>,
    },
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Verification(_) | Error::Exhausted(_) => 1,
            Error::Budget(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: msg.into(),
    }
}

/// What a command produced: the artifact and the exit code it implies.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }

    fn json(v: &impl serde::Serialize) -> Result<Self, Failure> {
        let mut text = serde_json::to_string_pretty(v).map_err(Error::from)?;
        text.push('\n');
        Ok(Output::ok(text))
    }
}

fn lattice(spec: &str) -> Result<CharLattice, Failure> {
    Ok(CharLattice::build(&GroupSpec::parse(spec)?)?)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn transfer_system(cl: &CharLattice, spec: &str) -> Result<TransferSystem, Failure> {
    let lat = cl.lattice();
    match spec {
        "maximal" => Ok(TransferSystem::maximal(lat)),
        "identity" => Ok(TransferSystem::identity(lat.len())),
        path => Ok(TransferSystem::from_json(lat, &read_json::<TransferSystemJson>(Path::new(path))?)?),
    }
}

fn format_or(common: &Common, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = common.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(input_error("this command does not support the requested format"))
    }
}

fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| input_error(e.to_string()))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let common = &cli.common;
    match &cli.command {
        Command::Lattice { group } => {
            let cl = lattice(group)?;
            match format_or(common, Format::Json, &[Format::Json, Format::Dot])? {
                Format::Dot => Ok(Output::ok(export_dot(&cl, None, None))),
                _ => Output::json(&cl.lattice().to_json()),
            }
        }
        Command::EnumerateTs { group, saturated, budget } => {
            format_or(common, Format::Json, &[Format::Json])?;
            let cl = lattice(group)?;
            let lat = cl.lattice();
            let systems: Vec<TransferSystemJson> = if *saturated {
                enumerate_saturated(lat).iter().map(|r| r.to_json(lat)).collect()
            } else {
                enumerate_transfer_systems(lat, *budget)?.map(|r| r.to_json(lat)).collect()
            };
            Output::json(&systems)
        }
        Command::CountSaturated { group, budget } => {
            format_or(common, Format::Json, &[Format::Json])?;
            let cl = lattice(group)?;
            let lat = cl.lattice();
            let saturated = enumerate_interior_operators(lat).len();
            let filtered = match enumerate_transfer_systems(lat, *budget) {
                Ok(it) => Some(it.filter(|r| r.is_saturated(lat)).count()),
                Err(Error::Budget(_)) => None,
                Err(e) => return Err(e.into()),
            };
            if filtered.is_some_and(|f| f != saturated) {
                return Err(Error::Verification(format!("{saturated} interior operators but {filtered:?} saturated systems")).into());
            }
            Output::json(&json!({
                "group": cl.spec().to_string(),
                "saturated": saturated,
                "saturated_by_filter": filtered,
            }))
        }
        Command::Realize { group, ts, tight_pair, seed } => {
            format_or(common, Format::Json, &[Format::Json])?;
            let cl = lattice(group)?;
            let r = transfer_system(&cl, ts)?;
            let tp = match tight_pair.as_str() {
                "auto" => tight_pair_auto(
                    &cl,
                    &RankTwoOptions {
                        seed: *seed,
                        ..Default::default()
                    },
                )?,
                path => TightPair::from_json(&cl, &read_json::<TightPairJson>(Path::new(path))?)?,
            };
            let real = realize(&cl, &r, &tp)?;
            Output::json(&json!({
                "group": cl.spec().to_string(),
                "transfer_system": r.to_json(cl.lattice()),
                "rounds": real.rounds,
                "universe": cl.charset_to_json(&real.universe),
            }))
        }
        Command::BruteCheck { group, ts, budget } => {
            format_or(common, Format::Json, &[Format::Json])?;
            let cl = lattice(group)?;
            let r = transfer_system(&cl, ts)?;
            let rep = thread_pool(common.jobs)?.install(|| brute_force_realizable(&cl, &r, *budget))?;
            let (outcome, witness, code) = match &rep.outcome {
                BruteOutcome::Witness(u) => ("realizable", Some(cl.charset_to_json(u)), 0),
                BruteOutcome::Unrealizable => ("unrealizable", None, 1),
                BruteOutcome::BudgetExceeded { .. } => ("budget-exceeded", None, 3),
            };
            let mut out = Output::json(&json!({
                "group": cl.spec().to_string(),
                "transfer_system": r.to_json(cl.lattice()),
                "outcome": outcome,
                "witness": witness,
                "orbits": rep.orbits,
                "universes": rep.universes,
            }))?;
            out.code = code;
            Ok(out)
        }
        Command::TightPair { kind } => {
            format_or(common, Format::Json, &[Format::Json])?;
            match kind {
                TightPairKind::Cyclic { p, n, group } => {
                    let (cl, tp) = match (n, group) {
                        (Some(n), _) => cyclic_tight_pair(*p, *n)?,
                        (None, Some(g)) => {
                            let cl = lattice(g)?;
                            let scope = cl.lattice().primary_subgroup(*p);
                            let tp = cyclic_tight_pair_in(&cl, scope)?;
                            (cl, tp)
                        }
                        (None, None) => unreachable!("clap requires --n or --group"),
                    };
                    Output::json(&tp.to_json(&cl))
                }
                TightPairKind::Rank2 { group, seed, retries, theta } => {
                    let cl = lattice(group)?;
                    let opts = RankTwoOptions {
                        seed: *seed,
                        retries: *retries,
                        theta: *theta,
                        ..Default::default()
                    };
                    let run = rank_two_tight_pair(&cl, cl.top(), &opts)?;
                    let mut out = Output::json(&run.report)?;
                    if run.pair.is_none() {
                        out.code = 1;
                    }
                    Ok(out)
                }
                TightPairKind::Tensor { inputs } => {
                    let a: TightPairJson = read_json(&inputs[0])?;
                    let b: TightPairJson = read_json(&inputs[1])?;
                    if a.group != b.group {
                        return Err(input_error(format!("tight pairs are on {} and {}", a.group, b.group)));
                    }
                    let cl = lattice(&a.group)?;
                    let (a, b) = (TightPair::from_json(&cl, &a)?, TightPair::from_json(&cl, &b)?);
                    let tp = localize_tight_pairs(&cl, &a, &b, &AxiomCheck::default())?;
                    Output::json(&tp.to_json(&cl))
                }
            }
        }
        Command::VerifyNegative { p } => {
            format_or(common, Format::Json, &[Format::Json])?;
            let rep = thread_pool(common.jobs)?.install(|| verify_negative_rank3(*p))?;
            let mut out = Output::json(&rep)?;
            if !rep.passed() {
                out.code = 1;
            }
            Ok(out)
        }
        Command::Census { group, budget, ts_budget } => {
            let format = format_or(common, Format::Csv, &[Format::Csv, Format::Json])?;
            let budget = CensusBudget {
                ts_subgroups: *ts_budget,
                orbits: *budget,
            };
            let pool = thread_pool(common.jobs)?;
            let mut rows = Vec::new();
            for g in group {
                let cl = lattice(g)?;
                rows.push(pool.install(|| census(&cl, &budget))?);
            }
            match format {
                Format::Json => Output::json(&rows),
                _ => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for row in &rows {
                        w.serialize(row).map_err(|e| input_error(e.to_string()))?;
                    }
                    let bytes = w.into_inner().map_err(|e| input_error(e.to_string()))?;
                    Ok(Output::ok(String::from_utf8(bytes).expect("csv output is UTF-8")))
                }
            }
        }
        Command::ExportDot { group, ts, universe } => {
            format_or(common, Format::Dot, &[Format::Dot])?;
            let cl = lattice(group)?;
            let r = ts.as_deref().map(|t| transfer_system(&cl, t)).transpose()?;
            let u = match universe {
                Some(path) => {
                    let j: CharSetJson = read_json(path)?;
                    Some(cl.charset_from_json(&j)?)
                }
                None => None,
            };
            Ok(Output::ok(export_dot(&cl, r.as_ref(), u.as_ref())))
        }
        Command::Stats { group } => {
            format_or(common, Format::Json, &[Format::Json])?;
            let cl = lattice(group)?;
            let lat = cl.lattice();
            let spec = cl.spec();
            let parts: Vec<Value> = spec
                .primary_parts()
                .iter()
                .map(|p| json!({"prime": p.prime, "factors": p.factors, "rank": p.rank()}))
                .collect();
            Output::json(&json!({
                "group": spec.to_string(),
                "order": spec.order(),
                "exponent": spec.exponent(),
                "primary_parts": parts,
                "subgroups": lat.len(),
                "characters": cl.num_chars(cl.top()),
                "orbits": OrbitIndex::new(&cl).len(),
                "saturated": enumerate_interior_operators(lat).len(),
            }))
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| input_error(format!("cannot write output: {e}"));
    match out {
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io),
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(text.as_bytes()).map_err(io)?;
            tmp.persist(path).map_err(|e| io(e.error))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        emit(cli.common.out.as_deref(), &out.text)?;
        Ok(out.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("satlab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
