//! Command-line front end: parse matroid or graph inputs, dispatch the
//! library computations, emit deterministic reports.
//!
//! Exit codes: 0 on success, 1 on a mathematical-consistency failure
//! (nesting violation, formula/enumeration mismatch, suite failure) with
//! the witness printed, 2 on usage or input errors. Identical arguments
//! and seed produce byte-identical output.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use matrig::gf::FiniteField;
use matrig::io::{self, Input};
use matrig::laman::{is_laman_independent, laman_complex, RationalSlope};
use matrig::matroid::{self, LinearMatroid};
use matrig::partition::{is_edmonds_decomposition, is_recski_independent, matroid_partition,
    PartitionCertificate};
use matrig::photospace::photo_count_brute;
use matrig::rigidity::{generic_complex, nesting_check, GenericComplexReport, MatroidKind};
use matrig::subset::Complex;
use matrig::suite;
use matrig::tutte::{photo_count_formula, tutte_corank_nullity, tutte_recursive};

#[derive(Parser)]
#[command(name = "matrig", version, about = "exact matroid rigidity toolkit")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Default)]
struct CommonOpts {
    /// Field order for photo counting / example construction.
    #[arg(long)]
    q: Option<u64>,
    /// Generic matroid kind: R (rigidity), H (hyperplane), P (parallel).
    #[arg(long, default_value = "R")]
    kind: String,
    /// Replications for randomized computations (minimum 2).
    #[arg(long, default_value_t = 3)]
    trials: u32,
    /// RNG seed; echoed in every randomized report.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also run the brute-force photo enumeration and compare.
    #[arg(long)]
    brute: bool,
    /// For graph inputs: sample rigidity in this characteristic instead
    /// of the default large prime.
    #[arg(long)]
    sample_char: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tutte polynomial by both algorithms, compared exactly.
    Tutte {
        #[arg(long)]
        input: PathBuf,
    },
    /// m-Laman independence of E and the full Laman complex.
    Laman {
        #[arg(long)]
        m: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// The (k,d)-slope complex.
    Slope {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        input: PathBuf,
    },
    /// Partition into d independent sets and test the decomposition.
    Edmonds {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        input: PathBuf,
    },
    /// d-Recski independence.
    Recski {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        input: PathBuf,
    },
    /// Randomized generic rigidity / hyperplane / parallel complex.
    Rigidity {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Photo counts by the Tutte formula, optionally cross-checked.
    Photos {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// The nesting chain S^(1,d) within R^d within L^d = H^d.
    Nesting {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Emit a built-in example matroid, or run a command on it directly.
    Examples {
        /// u23 | u24 | fano | k3 | k4 | k4-e | grid | grid2 | counterexample
        name: String,
        /// Chain into another command: tutte, laman, slope, edmonds,
        /// recski, rigidity, photos, nesting.
        #[arg(long)]
        command: Option<String>,
        /// mu for the U(2,4) representation.
        #[arg(long)]
        mu: Option<u64>,
        /// Slope m as NUM/DEN for chained laman / the counterexample.
        #[arg(long)]
        m: Option<String>,
        /// Marking-plane dimension for chained slope/photos.
        #[arg(long)]
        k: Option<usize>,
        /// Ambient dimension for chained commands.
        #[arg(long)]
        d: Option<usize>,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Run the whole acceptance battery; nonzero exit on any failure.
    Suite {
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

/// Failures that indicate bad usage or unreadable input (exit 2).
struct UsageError(String);

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_slope(text: &str) -> Result<RationalSlope, UsageError> {
    if text == "inf" || text == "infinity" {
        return Ok(RationalSlope::Infinity);
    }
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (
            a.parse::<u64>().map_err(|e| UsageError(format!("bad slope: {e}")))?,
            b.parse::<u64>().map_err(|e| UsageError(format!("bad slope: {e}")))?,
        ),
        None => (
            text.parse::<u64>().map_err(|e| UsageError(format!("bad slope: {e}")))?,
            1,
        ),
    };
    RationalSlope::new(num, den).map_err(|e| UsageError(e.to_string()))
}

fn parse_kind(text: &str) -> Result<MatroidKind, UsageError> {
    match text {
        "R" | "r" => Ok(MatroidKind::Rigidity),
        "H" | "h" => Ok(MatroidKind::Hyperplane),
        "P" | "p" => Ok(MatroidKind::Parallel),
        other => Err(UsageError(format!("unknown kind {other}; expected R, H or P"))),
    }
}

fn load_input(path: &PathBuf) -> Result<Input, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    io::parse_input(&text).map_err(|e| UsageError(e.to_string()))
}

/// Realize the input as a matroid: graphs pick a field appropriate for
/// the command (small for exact counting, large for sampling).
fn realize(input: Input, field_for_graph: &FiniteField) -> Result<LinearMatroid, UsageError> {
    match input {
        Input::Matroid(m) => Ok(m),
        Input::Graph { vertices, edges } => {
            io::graph_to_matroid(vertices, &edges, field_for_graph)
                .map_err(|e| UsageError(e.to_string()))
        }
    }
}

fn gf2() -> FiniteField {
    FiniteField::new(2, 1).unwrap()
}

fn rigidity_field(input: &Input, opts: &CommonOpts) -> Result<FiniteField, UsageError> {
    match (opts.sample_char, input) {
        (None, _) => Ok(suite::big_prime_field()),
        (Some(p), Input::Graph { .. }) => {
            FiniteField::new(p, 1).map_err(|e| UsageError(e.to_string()))
        }
        (Some(_), Input::Matroid(_)) => Err(UsageError(
            "--sample-char only applies to graph inputs; a represented matroid fixes its own characteristic".into(),
        )),
    }
}

fn run(cli: Cli) -> Result<ExitCode, UsageError> {
    let mut out = String::new();
    let code = match cli.cmd {
        Cmd::Tutte { input } => cmd_tutte(&mut out, cli.json, load_input(&input)?)?,
        Cmd::Laman { m, input } => {
            cmd_laman(&mut out, cli.json, parse_slope(&m)?, load_input(&input)?)?
        }
        Cmd::Slope { k, d, input } => cmd_slope(&mut out, cli.json, k, d, load_input(&input)?)?,
        Cmd::Edmonds { d, input } => cmd_edmonds(&mut out, cli.json, d, load_input(&input)?)?,
        Cmd::Recski { d, input } => cmd_recski(&mut out, cli.json, d, load_input(&input)?)?,
        Cmd::Rigidity { d, input, opts } => {
            let parsed = load_input(&input)?;
            let field = rigidity_field(&parsed, &opts)?;
            let m = realize(parsed, &field)?;
            cmd_rigidity(&mut out, cli.json, &m, d, &opts)?
        }
        Cmd::Photos { k, d, input, opts } => {
            cmd_photos(&mut out, cli.json, k, d, load_input(&input)?, &opts)?
        }
        Cmd::Nesting { d, input, opts } => {
            let parsed = load_input(&input)?;
            let field = rigidity_field(&parsed, &opts)?;
            let m = realize(parsed, &field)?;
            cmd_nesting(&mut out, cli.json, &m, d, &opts)?
        }
        Cmd::Examples { name, command, mu, m, k, d, opts } => {
            let chain = ChainParams { m, k, d };
            cmd_examples(&mut out, cli.json, &name, command.as_deref(), mu, &chain, &opts)?
        }
        Cmd::Suite { seed } => cmd_suite(&mut out, cli.json, seed),
    };
    print!("{out}");
    Ok(code)
}

fn cmd_tutte(out: &mut String, json: bool, input: Input) -> Result<ExitCode, UsageError> {
    let m = realize(input, &gf2())?;
    let by_sum = tutte_corank_nullity(&m)?;
    let by_recursion = tutte_recursive(&m)?;
    let equal = by_sum == by_recursion;
    if json {
        let terms: Vec<serde_json::Value> = by_sum
            .terms()
            .map(|((i, j), c)| serde_json::json!({"i": i, "j": j, "coeff": c.to_string()}))
            .collect();
        writeln!(
            out,
            "{}",
            serde_json::json!({"n": m.n(), "rank": m.rank(), "terms": terms, "algorithms_equal": equal})
        )
        .unwrap();
    } else {
        writeln!(out, "n={} rank={}", m.n(), m.rank()).unwrap();
        write!(out, "{by_sum}").unwrap();
        writeln!(out, "algorithms: {}", if equal { "EQUAL" } else { "MISMATCH" }).unwrap();
    }
    Ok(if equal { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn slope_header(slope: RationalSlope, n: usize) -> String {
    match slope {
        RationalSlope::Finite { num, den } => format!("{{n={n}, m_num={num}, m_den={den}}}"),
        RationalSlope::Infinity => format!("{{n={n}, m_num=infinity, m_den=1}}"),
    }
}

fn write_complex_report(
    out: &mut String,
    json: bool,
    slope: RationalSlope,
    complex: &Complex,
    m: &LinearMatroid,
) {
    let report = is_laman_independent(m, slope, m.ground_set());
    if json {
        let (num, den) = match slope {
            RationalSlope::Finite { num, den } => (serde_json::json!(num), serde_json::json!(den)),
            RationalSlope::Infinity => (serde_json::json!("infinity"), serde_json::json!(1)),
        };
        writeln!(
            out,
            "{}",
            serde_json::json!({
                "n": complex.ground_n(),
                "m_num": num,
                "m_den": den,
                "faces": complex.faces().iter().map(|f| f.0).collect::<Vec<_>>(),
                "independent": report.independent,
                "witness": report.witness.0,
            })
        )
        .unwrap();
    } else {
        writeln!(out, "{}", slope_header(slope, complex.ground_n())).unwrap();
        for f in complex.faces() {
            writeln!(out, "{}", f.0).unwrap();
        }
        if report.independent {
            writeln!(out, "E: independent").unwrap();
        } else {
            writeln!(out, "E: dependent").unwrap();
            writeln!(out, "witness: {} mask={}", report.witness, report.witness.0).unwrap();
        }
    }
}

fn cmd_laman(
    out: &mut String,
    json: bool,
    slope: RationalSlope,
    input: Input,
) -> Result<ExitCode, UsageError> {
    let m = realize(input, &gf2())?;
    let complex = laman_complex(&m, slope)?;
    write_complex_report(out, json, slope, &complex, &m);
    Ok(ExitCode::SUCCESS)
}

fn cmd_slope(
    out: &mut String,
    json: bool,
    k: usize,
    d: usize,
    input: Input,
) -> Result<ExitCode, UsageError> {
    let m = realize(input, &gf2())?;
    if k == 0 || k >= d {
        return Err(UsageError(format!("need 0 < k < d, got k={k}, d={d}")));
    }
    let slope = RationalSlope::new(d as u64, (d - k) as u64).map_err(UsageError::from)?;
    let complex = laman_complex(&m, slope)?;
    if !json {
        writeln!(out, "k={k} d={d} m={slope}").unwrap();
    }
    write_complex_report(out, json, slope, &complex, &m);
    Ok(ExitCode::SUCCESS)
}

fn cmd_edmonds(
    out: &mut String,
    json: bool,
    d: usize,
    input: Input,
) -> Result<ExitCode, UsageError> {
    let m = realize(input, &gf2())?;
    if d == 0 {
        return Err(UsageError("need d >= 1".into()));
    }
    match matroid_partition(&m, d) {
        PartitionCertificate::Violator(v) => {
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::json!({"d": d, "partitionable": false, "violator": v.0})
                )
                .unwrap();
            } else {
                writeln!(out, "d={d}").unwrap();
                writeln!(out, "no partition into {d} independent sets").unwrap();
                writeln!(out, "violator: {v} mask={} ({}r < size)", v.0, d).unwrap();
            }
        }
        PartitionCertificate::Decomposition(dec) => {
            let check = is_edmonds_decomposition(&m, &dec.parts)?;
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::json!({
                        "d": d,
                        "partitionable": true,
                        "parts": dec.parts.iter().map(|p| p.0).collect::<Vec<_>>(),
                        "edmonds_decomposition": check.is_decomposition,
                        "violating_tuple": check
                            .violating_tuple
                            .as_ref()
                            .map(|t| t.iter().map(|s| s.0).collect::<Vec<_>>()),
                    })
                )
                .unwrap();
            } else {
                writeln!(out, "d={d}").unwrap();
                for (j, p) in dec.parts.iter().enumerate() {
                    writeln!(out, "part {j}: mask={} {p}", p.0).unwrap();
                }
                writeln!(out, "valid: disjoint independent cover").unwrap();
                if check.is_decomposition {
                    writeln!(out, "edmonds decomposition: yes").unwrap();
                } else {
                    writeln!(out, "edmonds decomposition: no").unwrap();
                    let tuple = check.violating_tuple.unwrap();
                    for (j, s) in tuple.iter().enumerate() {
                        writeln!(out, "shared-span tuple part {j}: {s}").unwrap();
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_recski(
    out: &mut String,
    json: bool,
    d: usize,
    input: Input,
) -> Result<ExitCode, UsageError> {
    let m = realize(input, &gf2())?;
    if d == 0 {
        return Err(UsageError("need d >= 1".into()));
    }
    let rep = is_recski_independent(&m, d);
    if json {
        writeln!(
            out,
            "{}",
            serde_json::json!({
                "d": d,
                "recski_independent": rep.independent,
                "failing_element": rep.failure.as_ref().map(|(e, _)| e),
                "violator": rep.failure.as_ref().map(|(_, v)| v.0),
            })
        )
        .unwrap();
    } else {
        writeln!(out, "d={d}").unwrap();
        writeln!(out, "recski independent: {}", rep.independent).unwrap();
        if let Some((e, v)) = rep.failure {
            writeln!(out, "failing element: {e}").unwrap();
            writeln!(out, "violator in cloned matroid: {v} mask={}", v.0).unwrap();
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_generic_report(out: &mut String, json: bool, rep: &GenericComplexReport) {
    let facets = rep.complex.facets();
    if json {
        writeln!(
            out,
            "{}",
            serde_json::json!({
                "kind": rep.kind.to_string(),
                "d": rep.d,
                "n": rep.complex.ground_n(),
                "trials": rep.trials,
                "seed": rep.seed,
                "field_order": rep.field_order.to_string(),
                "failure_bound": rep.failure_bound.to_string(),
                "faces": rep.complex.faces().iter().map(|f| f.0).collect::<Vec<_>>(),
                "facets": facets.iter().map(|f| f.0).collect::<Vec<_>>(),
            })
        )
        .unwrap();
    } else {
        writeln!(out, "kind={} d={} trials={} seed={}", rep.kind, rep.d, rep.trials, rep.seed)
            .unwrap();
        writeln!(out, "field order: {}", rep.field_order).unwrap();
        writeln!(out, "failure bound: {}", rep.failure_bound).unwrap();
        writeln!(out, "faces: {}", rep.complex.len()).unwrap();
        let sizes: std::collections::BTreeSet<usize> = facets.iter().map(|f| f.len()).collect();
        let sizes: Vec<String> = sizes.into_iter().map(|s| s.to_string()).collect();
        writeln!(out, "facets: {} (sizes: {})", facets.len(), sizes.join(",")).unwrap();
        for f in facets {
            writeln!(out, "facet: mask={} {f}", f.0).unwrap();
        }
    }
}

fn cmd_rigidity(
    out: &mut String,
    json: bool,
    m: &LinearMatroid,
    d: usize,
    opts: &CommonOpts,
) -> Result<ExitCode, UsageError> {
    let kind = parse_kind(&opts.kind)?;
    let rep = generic_complex(m, d, kind, opts.trials, opts.seed)?;
    write_generic_report(out, json, &rep);
    Ok(ExitCode::SUCCESS)
}

fn cmd_photos(
    out: &mut String,
    json: bool,
    k: u32,
    d: u32,
    input: Input,
    opts: &CommonOpts,
) -> Result<ExitCode, UsageError> {
    let m = match input {
        Input::Matroid(m) => {
            if let (Some(q), Some(order)) = (opts.q, m.field().order_u128()) {
                if order != q as u128 {
                    return Err(UsageError(format!(
                        "--q {q} conflicts with the input field of order {order}"
                    )));
                }
            }
            m
        }
        graph @ Input::Graph { .. } => {
            let q = opts
                .q
                .ok_or_else(|| UsageError("graph inputs need --q to fix the field".into()))?;
            let field = FiniteField::new(q, 1).map_err(|e| UsageError(e.to_string()))?;
            realize(graph, &field)?
        }
    };
    let q = m
        .field()
        .order_u128()
        .filter(|&o| o <= u64::MAX as u128)
        .ok_or_else(|| UsageError("field too large for photo counting".into()))? as u64;
    let formula = photo_count_formula(&m, k, d, q)?;
    let mut equal = true;
    let census = if opts.brute {
        let census = photo_count_brute(&m, k, d)?;
        equal = census.total == formula;
        Some(census)
    } else {
        None
    };
    if json {
        writeln!(
            out,
            "{}",
            serde_json::json!({
                "k": k, "d": d, "q": q, "n": m.n(),
                "formula": formula.to_string(),
                "brute": census.as_ref().map(|c| c.to_json()),
                "equal": census.as_ref().map(|_| equal),
            })
        )
        .unwrap();
    } else {
        writeln!(out, "k={k} d={d} q={q} n={} rank={}", m.n(), m.rank()).unwrap();
        writeln!(out, "formula: {formula}").unwrap();
        if let Some(census) = &census {
            writeln!(out, "brute total: {}", census.total).unwrap();
            for (flat, count) in &census.by_flat {
                writeln!(out, "cellule mask={} {flat}: {count}", flat.0).unwrap();
            }
            writeln!(out, "comparison: {}", if equal { "EQUAL" } else { "MISMATCH" }).unwrap();
        }
    }
    Ok(if equal { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_nesting(
    out: &mut String,
    json: bool,
    m: &LinearMatroid,
    d: usize,
    opts: &CommonOpts,
) -> Result<ExitCode, UsageError> {
    let rep = nesting_check(m, d, opts.trials, opts.seed)?;
    if json {
        writeln!(
            out,
            "{}",
            serde_json::json!({
                "d": d, "trials": opts.trials, "seed": opts.seed,
                "s_faces": rep.s_complex.len(),
                "r_faces": rep.r_complex.complex.len(),
                "l_faces": rep.l_complex.len(),
                "h_faces": rep.h_complex.complex.len(),
                "p_faces": rep.p_complex.as_ref().map(|p| p.complex.len()),
                "ok": rep.ok(),
                "violations": rep
                    .violations
                    .iter()
                    .map(|(name, w)| serde_json::json!({"name": name, "witness": w.0}))
                    .collect::<Vec<_>>(),
            })
        )
        .unwrap();
    } else {
        writeln!(out, "d={d} trials={} seed={}", opts.trials, opts.seed).unwrap();
        writeln!(out, "S^(1,{d}) faces: {}", rep.s_complex.len()).unwrap();
        writeln!(out, "R^{d} faces: {}", rep.r_complex.complex.len()).unwrap();
        writeln!(out, "L^{d} faces: {}", rep.l_complex.len()).unwrap();
        writeln!(out, "H^{d} faces: {}", rep.h_complex.complex.len()).unwrap();
        if let Some(p) = &rep.p_complex {
            writeln!(out, "P^{d} faces: {}", p.complex.len()).unwrap();
        }
        if rep.ok() {
            writeln!(out, "nesting: OK").unwrap();
        } else {
            for (name, w) in &rep.violations {
                writeln!(out, "VIOLATION {name}: witness {w} mask={}", w.0).unwrap();
            }
        }
    }
    Ok(if rep.ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

struct ChainParams {
    m: Option<String>,
    k: Option<usize>,
    d: Option<usize>,
}

fn build_example(
    name: &str,
    mu: Option<u64>,
    chain: &ChainParams,
    opts: &CommonOpts,
) -> Result<LinearMatroid, UsageError> {
    let field = match opts.q {
        Some(q) => FiniteField::new(q, 1).map_err(|e| UsageError(e.to_string()))?,
        None => suite::big_prime_field(),
    };
    let m = match name {
        "u23" => matroid::u23(&field),
        "u24" => {
            let mu_elem = field.from_u64(mu.unwrap_or(2));
            matroid::u24(&field, &mu_elem).map_err(|e| UsageError(e.to_string()))?
        }
        "fano" => matroid::fano(),
        "k3" => matroid::graphic(3, &[(0, 1), (1, 2), (2, 0)], &field)
            .map_err(|e| UsageError(e.to_string()))?,
        "k4" => matroid::graphic(4, &suite::k4_edges(), &field)
            .map_err(|e| UsageError(e.to_string()))?,
        "k4-e" => matroid::graphic(4, &suite::k4_edges()[..5], &field)
            .map_err(|e| UsageError(e.to_string()))?,
        "grid" | "grid2" => {
            let base = FiniteField::new(10007, 1).unwrap();
            let (e, e2) = matroid::grid_examples(&base).map_err(|e| UsageError(e.to_string()))?;
            if name == "grid" {
                e
            } else {
                e2
            }
        }
        "counterexample" => {
            let (num, den) = match &chain.m {
                Some(text) => match parse_slope(text)? {
                    RationalSlope::Finite { num, den } => (num, den),
                    RationalSlope::Infinity => {
                        return Err(UsageError("counterexample needs a finite slope".into()))
                    }
                },
                None => (3, 2),
            };
            let base = FiniteField::new(10007, 1).unwrap();
            matroid::laman_counterexample(num, den, &base, opts.seed)
                .map_err(|e| UsageError(e.to_string()))?
        }
        other => {
            return Err(UsageError(format!(
                "unknown example {other}; expected u23, u24, fano, k3, k4, k4-e, grid, grid2 or counterexample"
            )))
        }
    };
    Ok(m)
}

fn cmd_examples(
    out: &mut String,
    json: bool,
    name: &str,
    command: Option<&str>,
    mu: Option<u64>,
    chain: &ChainParams,
    opts: &CommonOpts,
) -> Result<ExitCode, UsageError> {
    let m = build_example(name, mu, chain, opts)?;
    let Some(command) = command else {
        writeln!(out, "{}", io::matroid_to_json(&m)).unwrap();
        return Ok(ExitCode::SUCCESS);
    };
    match command {
        "tutte" => cmd_tutte(out, json, Input::Matroid(m)),
        "laman" => {
            let slope_text = chain
                .m
                .as_deref()
                .ok_or_else(|| UsageError("laman needs --m".into()))?;
            cmd_laman(out, json, parse_slope(slope_text)?, Input::Matroid(m))
        }
        "slope" => {
            let (k, d) = require_kd(chain)?;
            cmd_slope(out, json, k, d, Input::Matroid(m))
        }
        "edmonds" => cmd_edmonds(out, json, require_d(chain)?, Input::Matroid(m)),
        "recski" => cmd_recski(out, json, require_d(chain)?, Input::Matroid(m)),
        "rigidity" => cmd_rigidity(out, json, &m, require_d(chain)?, opts),
        "photos" => {
            let (k, d) = require_kd(chain)?;
            cmd_photos(out, json, k as u32, d as u32, Input::Matroid(m), opts)
        }
        "nesting" => cmd_nesting(out, json, &m, require_d(chain)?, opts),
        other => Err(UsageError(format!("cannot chain into command {other}"))),
    }
}

fn require_d(chain: &ChainParams) -> Result<usize, UsageError> {
    chain.d.ok_or_else(|| UsageError("this command needs --d".into()))
}

fn require_kd(chain: &ChainParams) -> Result<(usize, usize), UsageError> {
    let k = chain.k.ok_or_else(|| UsageError("this command needs --k".into()))?;
    Ok((k, require_d(chain)?))
}

fn cmd_suite(out: &mut String, json: bool, seed: u64) -> ExitCode {
    let results = suite::run_all(seed);
    let all_passed = results.iter().all(|r| r.passed);
    if json {
        let entries: Vec<serde_json::Value> = results
            .iter()
            .map(|r| {
                serde_json::json!({
                    "index": r.index,
                    "name": r.name,
                    "passed": r.passed,
                    "details": r.details,
                })
            })
            .collect();
        writeln!(
            out,
            "{}",
            serde_json::json!({"seed": seed, "passed": all_passed, "criteria": entries})
        )
        .unwrap();
    } else {
        writeln!(out, "seed: {seed}").unwrap();
        for r in &results {
            writeln!(out, "{}", r.line_stable()).unwrap();
        }
        writeln!(out, "suite: {}", if all_passed { "PASS" } else { "FAIL" }).unwrap();
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
