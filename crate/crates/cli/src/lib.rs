//! Command-line front end for the `symbell` solver.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: [`EXIT_OK`], [`EXIT_MISMATCH`] when a verification fails, or
//! [`EXIT_BUDGET`] when a computation exceeds its budget.

pub mod cache;
pub mod ineq;
pub mod reproduce;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};
use symbell::derived::{activation_check, critical_efficiency, xy_lower_bound, DEFAULT_V_LOW};
use symbell::fwsolver::{visibility_search, FWConfig, LmoMode};
use symbell::localbound::{evaluate_strategies, exact_local_bound, BoundOptions};
use symbell::lucas4::{local_bound_m4_closed, visibility_m4};
use symbell::necklaces::{enumerate_necklaces, necklace_count};
use symbell::sympoly::{enumerate_facets, enumerate_sym_vertices, extreme_points, VERTEX_BUDGET};
use symbell::{ReducedVector, ScenarioParams, Strategy};

use crate::cache::RunCache;
use crate::ineq::InequalityFile;
use crate::reproduce::{reproduce_with_progress, Table, DEFAULT_MAX_COST};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Largest `N·m` for which `local-bound --brute-force` enumerates every tuple.
pub const BRUTE_FORCE_CAP: usize = 24;

#[derive(Parser, Debug)]
#[command(
    name = "symbell",
    version,
    about = "Symmetric Bell inequalities for GHZ states"
)]
pub struct Cli {
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Emit JSON on standard output instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Scenario {
    /// Number of parties.
    #[arg(short = 'N', long = "parties")]
    pub parties: usize,
    /// Measurement settings per party.
    #[arg(short = 'm', long = "inputs")]
    pub inputs: usize,
}

impl Scenario {
    fn params(self) -> Result<ScenarioParams> {
        Ok(ScenarioParams::new(self.parties, self.inputs)?)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Critical visibility of the GHZ correlations and the certifying inequality.
    Visibility {
        #[command(flatten)]
        scenario: Scenario,
        #[arg(long, default_value = "auto")]
        lmo: LmoMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the inequality file here.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Recompute the local bound of an inequality file and compare.
    LocalBound {
        #[arg(short = 'i', long)]
        input: PathBuf,
        /// Enumerate all deterministic strategy tuples instead of orbits.
        #[arg(long)]
        brute_force: bool,
    },
    /// Vertices of the symmetrised local polytope.
    Vertices {
        #[command(flatten)]
        scenario: Scenario,
        #[arg(long)]
        list: bool,
    },
    /// Facets of the symmetrised local polytope.
    Facets {
        #[command(flatten)]
        scenario: Scenario,
    },
    /// Signed necklace count and representatives.
    Necklaces {
        #[arg(short = 'm', long = "inputs")]
        inputs: usize,
        #[arg(long)]
        list: bool,
    },
    /// Closed-form local bounds and visibilities for four settings.
    M4 {
        #[arg(long, conflicts_with = "table", required_unless_present = "table")]
        parties: Option<usize>,
        /// Tabulate N = 3..=K.
        #[arg(long)]
        table: Option<usize>,
    },
    /// Critical detection efficiency.
    Efficiency {
        #[arg(short = 'v', long)]
        visibility: f64,
        #[arg(short = 'N', long = "parties")]
        parties: usize,
    },
    /// Visibility lower bound for continuous measurements in the XY plane.
    XyBound {
        #[arg(short = 'v', long)]
        visibility: f64,
        #[command(flatten)]
        scenario: Scenario,
    },
    /// Star-network activation criterion.
    Activation {
        #[arg(short = 'v', long)]
        visibility: f64,
        #[arg(short = 'N', long = "parties")]
        parties: usize,
        #[arg(long, default_value_t = DEFAULT_V_LOW)]
        vlow: f64,
    },
    /// Regenerate a reference table and diff it.
    Reproduce {
        #[arg(long)]
        table: Table,
        #[arg(long, default_value_t = DEFAULT_MAX_COST)]
        max_cost: u128,
    },
}

/// Output of one command in both renderings.
struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            code: EXIT_OK,
        }
    }
}

fn kv(pairs: &[(&str, String)]) -> String {
    pairs.iter().fold(String::new(), |mut s, (k, v)| {
        let _ = writeln!(s, "{k}={v}");
        s
    })
}

fn fw_config(lmo: LmoMode, seed: u64) -> FWConfig {
    FWConfig {
        lmo_mode: lmo,
        seed,
        ..FWConfig::default()
    }
}

fn cmd_visibility(
    scenario: Scenario,
    lmo: LmoMode,
    seed: u64,
    output: Option<&PathBuf>,
) -> Result<Output> {
    let params = scenario.params()?;
    let config = fw_config(lmo, seed);
    let compute = || -> Result<String> {
        let res = visibility_search(&params, &config)?;
        Ok(InequalityFile::from_result(&res, &config).to_text())
    };
    let text = match RunCache::from_env() {
        Some(cache) => {
            let key = RunCache::key(
                "visibility",
                &format!("N={} m={}", params.parties(), params.inputs()),
                &ineq::config_hash(&config),
            );
            cache.get_or_compute(&key, compute)?.0
        }
        None => compute()?,
    };
    let file = InequalityFile::parse(&text)?;
    if let Some(path) = output {
        std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(Output::ok(text, file.to_json()))
}

fn brute_force_bound(f: &ReducedVector<BigInt>) -> Result<BigInt> {
    let (n, m) = (f.params().parties(), f.params().inputs());
    if n * m > BRUTE_FORCE_CAP {
        return Err(symbell::Error::BudgetExceeded {
            requested: 1u128 << (n * m).min(127),
            budget: 1u128 << BRUTE_FORCE_CAP,
        }
        .into());
    }
    let mut best: Option<BigInt> = None;
    for code in 0u64..1 << (n * m) {
        let tuple: Vec<Strategy> = (0..n)
            .map(|k| Strategy::from_word((code >> (k * m)) & ((1 << m) - 1), m))
            .collect();
        let value = evaluate_strategies(f, &tuple)?;
        if best.as_ref().is_none_or(|b| value > *b) {
            best = Some(value);
        }
    }
    Ok(best.expect("at least one tuple"))
}

fn cmd_local_bound(input: &PathBuf, brute_force: bool) -> Result<Output> {
    let text =
        std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let file = InequalityFile::parse(&text)?;
    let f = file.functional()?;
    let (computed, method) = if brute_force {
        (brute_force_bound(&f)?, "brute-force")
    } else {
        (
            exact_local_bound(&f, &BoundOptions::default())?.bound,
            "orbit",
        )
    };
    let matches = computed == file.local_bound;
    let text = kv(&[
        ("N", file.parties.to_string()),
        ("m", file.inputs.to_string()),
        ("method", method.to_string()),
        ("L_file", file.local_bound.to_string()),
        ("L_computed", computed.to_string()),
        ("match", matches.to_string()),
    ]);
    let json = json!({
        "N": file.parties, "m": file.inputs, "method": method,
        "L_file": file.local_bound.to_string(),
        "L_computed": computed.to_string(),
        "match": matches,
    });
    Ok(Output {
        text,
        json,
        code: if matches { EXIT_OK } else { EXIT_MISMATCH },
    })
}

fn fmt_vector<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_vertices(scenario: Scenario, list: bool) -> Result<Output> {
    let set = enumerate_sym_vertices(&scenario.params()?, VERTEX_BUDGET)?;
    let extreme = extreme_points(&set).ok().map(|e| e.len());
    let mut text = kv(&[
        ("N", scenario.parties.to_string()),
        ("m", scenario.inputs.to_string()),
        ("vertices", set.len().to_string()),
        (
            "extreme_points",
            extreme.map_or_else(|| "unavailable".into(), |e| e.to_string()),
        ),
    ]);
    if list {
        for v in set.vertices() {
            let _ = writeln!(text, "vertex={}", fmt_vector(v.entries()));
        }
    }
    let json = json!({
        "N": scenario.parties,
        "m": scenario.inputs,
        "vertices": set.len(),
        "extreme_points": extreme,
        "list": list.then(|| set
            .vertices()
            .iter()
            .map(|v| v.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>()),
    });
    Ok(Output::ok(text, json))
}

fn cmd_facets(scenario: Scenario) -> Result<Output> {
    let set = enumerate_sym_vertices(&scenario.params()?, VERTEX_BUDGET)?;
    let facets = enumerate_facets(&set)?;
    let mut text = kv(&[
        ("N", scenario.parties.to_string()),
        ("m", scenario.inputs.to_string()),
        ("facets", facets.facets.len().to_string()),
        (
            "cross_polytope_count",
            facets.cross_polytope_count.to_string(),
        ),
    ]);
    for f in &facets.facets {
        let _ = writeln!(
            text,
            "facet={} <= {}",
            fmt_vector(f.normal.entries()),
            f.bound
        );
    }
    let json = json!({
        "N": scenario.parties,
        "m": scenario.inputs,
        "cross_polytope_count": facets.cross_polytope_count,
        "facets": facets.facets.iter().map(|f| json!({
            "coeffs": f.normal.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "L": f.bound.to_string(),
        })).collect::<Vec<_>>(),
    });
    Ok(Output::ok(text, json))
}

fn cmd_necklaces(m: usize, list: bool) -> Result<Output> {
    let count = necklace_count(m);
    let mut text = kv(&[("m", m.to_string()), ("count", count.to_string())]);
    let reps = if list {
        let reps: Vec<String> = enumerate_necklaces(m)?
            .iter()
            .map(|n| {
                n.rep()
                    .signs()
                    .iter()
                    .map(|&s| if s > 0 { '+' } else { '-' })
                    .collect()
            })
            .collect();
        for r in &reps {
            let _ = writeln!(text, "necklace={r}");
        }
        Some(reps)
    } else {
        None
    };
    Ok(Output::ok(
        text,
        json!({ "m": m, "count": count.to_string(), "necklaces": reps }),
    ))
}

fn m4_row(n: usize) -> Result<(String, Value)> {
    let vis = visibility_m4(n)?;
    let closed = local_bound_m4_closed(n)?;
    let text = kv(&[
        ("N", n.to_string()),
        ("L", vis.local_bound.to_string()),
        ("L_closed", closed.to_string()),
        ("Q", vis.quantum_value.to_string()),
        ("v", vis.expression.clone()),
        ("v_value", format!("{:.16e}", vis.value)),
    ]);
    let json = json!({
        "N": n,
        "L": vis.local_bound.to_string(),
        "L_closed": closed.to_string(),
        "Q": vis.quantum_value.to_string(),
        "v": vis.expression,
        "v_value": vis.value,
    });
    Ok((text, json))
}

fn cmd_m4(parties: Option<usize>, table: Option<usize>) -> Result<Output> {
    match (parties, table) {
        (Some(n), _) => {
            let (text, json) = m4_row(n)?;
            Ok(Output::ok(text, json))
        }
        (None, Some(k)) => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for n in 3..=k {
                let (t, j) = m4_row(n)?;
                text.push_str(&t);
                text.push('\n');
                rows.push(j);
            }
            Ok(Output::ok(text, Value::Array(rows)))
        }
        (None, None) => bail!("either --parties or --table is required"),
    }
}

fn run_command(command: Command, err: &mut (dyn Write + Send)) -> Result<Output> {
    match command {
        Command::Visibility {
            scenario,
            lmo,
            seed,
            output,
        } => cmd_visibility(scenario, lmo, seed, output.as_ref()),
        Command::LocalBound { input, brute_force } => cmd_local_bound(&input, brute_force),
        Command::Vertices { scenario, list } => cmd_vertices(scenario, list),
        Command::Facets { scenario } => cmd_facets(scenario),
        Command::Necklaces { inputs, list } => cmd_necklaces(inputs, list),
        Command::M4 { parties, table } => cmd_m4(parties, table),
        Command::Efficiency {
            visibility,
            parties,
        } => {
            let r = critical_efficiency(visibility, parties)?;
            Ok(Output::ok(
                kv(&[
                    ("v", visibility.to_string()),
                    ("N", parties.to_string()),
                    ("eta_crit", format!("{:.16e}", r.eta_crit)),
                    ("residual", format!("{:.3e}", r.residual)),
                ]),
                json!({ "v": visibility, "N": parties, "eta_crit": r.eta_crit, "residual": r.residual }),
            ))
        }
        Command::XyBound {
            visibility,
            scenario,
        } => {
            let b = xy_lower_bound(visibility, scenario.inputs, scenario.parties);
            Ok(Output::ok(
                kv(&[
                    ("v", visibility.to_string()),
                    ("N", scenario.parties.to_string()),
                    ("m", scenario.inputs.to_string()),
                    ("v_xy_lower", format!("{b:.16e}")),
                ]),
                json!({ "v": visibility, "N": scenario.parties, "m": scenario.inputs, "v_xy_lower": b }),
            ))
        }
        Command::Activation {
            visibility,
            parties,
            vlow,
        } => {
            let r = activation_check(visibility, parties, vlow);
            Ok(Output::ok(
                kv(&[
                    ("v", r.v_m.to_string()),
                    ("N", r.parties.to_string()),
                    ("v_low", r.v_low.to_string()),
                    ("threshold", format!("{:.16e}", r.threshold)),
                    ("margin", format!("{:.16e}", r.margin)),
                    ("activated", r.activated.to_string()),
                    ("asymptotic", r.asymptotic_check.to_string()),
                ]),
                json!({
                    "v": r.v_m, "N": r.parties, "v_low": r.v_low, "threshold": r.threshold,
                    "margin": r.margin, "activated": r.activated, "asymptotic": r.asymptotic_check,
                }),
            ))
        }
        Command::Reproduce { table, max_cost } => {
            let report = reproduce_with_progress(table, max_cost, &mut |row| {
                let _ = writeln!(err, "{}", row.line());
            })?;
            let code = if report.mismatches() > 0 {
                EXIT_MISMATCH
            } else {
                EXIT_OK
            };
            Ok(Output {
                text: report.to_text(),
                json: report.to_json(),
                code,
            })
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<symbell::Error>() {
        Some(symbell::Error::BudgetExceeded { .. } | symbell::Error::CapExceeded { .. }) => {
            EXIT_BUDGET
        }
        _ => EXIT_ERROR,
    }
}

/// Runs one command line. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start thread pool: {e}");
            return EXIT_ERROR;
        }
    };
    let json = cli.json;
    match pool.install(|| run_command(cli.command, err)) {
        Ok(output) => {
            let written = if json {
                serde_json::to_string_pretty(&output.json)
                    .map_err(std::io::Error::other)
                    .and_then(|s| writeln!(out, "{s}"))
            } else {
                write!(out, "{}", output.text)
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: writing output: {e}");
                return EXIT_ERROR;
            }
            if output.code == EXIT_MISMATCH {
                let _ = writeln!(err, "verification mismatch");
            }
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code_for(&e)
        }
    }
}
