//! tetbox: batch CLI over the tetra library. Subcommands construct modules,
//! run the verification suites, tensor and classify, twist, tabulate
//! relatives, and emit the polynomial realization. Output is JSON, CSV, or a
//! plain text table; every rational is exact, printed as "p/q".
//!
//! Exit codes: 0 success, 1 verification-suite failure, 2 usage error,
//! 3 domain error, 4 unclassifiable input.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use tetra::eval::{
    bracket_basis_matrices, build_eval_module, extract_eval_param, EvalModuleSpec, ExtractResult,
};
use tetra::poly_real::{bracket_basis_vectors, build_poly_module, BetaQuad};
use tetra::rational::{format_rational, parse_rational, Rational};
use tetra::suites::{self, CheckResult, Suite};
use tetra::symmetry::{orbit_of_param, BasisQuad, EvalParam, GenPair, Perm4};
use tetra::tensor::{classify, Classification, TensorSpec};
use tetra::TetModule;

#[derive(Parser)]
#[command(
    name = "tetbox",
    version,
    about = "Exact construction, verification and classification of tetrahedron-algebra modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Emit {
    #[default]
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Build the evaluation module V_d(a), optionally in one of the 24 bases
    Eval {
        /// Diameter d >= 1
        #[arg(long)]
        d: usize,
        /// Evaluation parameter as "p/q", not 0 or 1
        #[arg(long)]
        a: String,
        /// Basis label "i,j,k,l" (default: the weight basis)
        #[arg(long)]
        basis: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        emit: Emit,
    },
    /// Run a named verification suite over the desk-scale grid
    Verify {
        /// relations | gradings | transitions | bilinear | twisting | drinfeld | all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Grid cap on diameters (default: TETBOX_MAX_D or 4)
        #[arg(long)]
        max_d: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        emit: Emit,
    },
    /// Build a tensor product of evaluation modules
    Tensor {
        /// Factors as "(d1,a1);(d2,a2);..."
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum, default_value_t)]
        emit: Emit,
    },
    /// Classify a module into evaluation factors via its Drinfel'd polynomial
    Classify {
        /// Factors as "(d1,a1);(d2,a2);..." (builds the tensor, then classifies)
        #[arg(long, conflicts_with = "module")]
        spec: Option<String>,
        /// Path to a module JSON file to classify
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        emit: Emit,
    },
    /// Twist a module by a permutation of the four vertices
    Twist {
        /// Diameter of the evaluation module to twist
        #[arg(long, requires = "a", conflicts_with = "module")]
        d: Option<usize>,
        /// Evaluation parameter of the module to twist
        #[arg(long, requires = "d")]
        a: Option<String>,
        /// Path to a module JSON file to twist
        #[arg(long)]
        module: Option<PathBuf>,
        /// Permutation in cycle notation, e.g. "(0 1)" or "(0 1)(2 3)" or "id"
        #[arg(long)]
        sigma: String,
        #[arg(long, value_enum, default_value_t)]
        emit: Emit,
    },
    /// Tabulate the 24 relatives and the orbit of an evaluation parameter
    Relatives {
        /// Evaluation parameter as "p/q"
        #[arg(long)]
        a: String,
        #[arg(long, value_enum, default_value_t)]
        emit: Emit,
    },
    /// Build the degree-d polynomial realization for given beta parameters
    Polyrealize {
        /// Degree d >= 1
        #[arg(long)]
        d: usize,
        /// Four mutually distinct rationals "b0,b1,b2,b3"
        #[arg(long)]
        betas: String,
        /// Also emit the basis vectors for this basis label "i,j,k,l"
        #[arg(long)]
        basis: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        emit: Emit,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
    Unclassifiable(String),
    SuiteFailure,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::SuiteFailure => 1,
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Unclassifiable(_) => 4,
        }
    }
}

fn main() -> ExitCode {
    // die quietly when the consumer closes the pipe, like standard tools
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("usage error: {msg}"),
                CliError::Domain(msg) => eprintln!("domain error: {msg}"),
                CliError::Unclassifiable(msg) => eprintln!("unclassifiable: {msg}"),
                CliError::SuiteFailure => eprintln!("verification suite reported failures"),
            }
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Eval { d, a, basis, emit } => cmd_eval(d, &a, basis.as_deref(), emit),
        Command::Verify { suite, max_d, emit } => cmd_verify(&suite, max_d, emit),
        Command::Tensor { spec, emit } => cmd_tensor(&spec, emit),
        Command::Classify { spec, module, emit } => cmd_classify(spec.as_deref(), module, emit),
        Command::Twist {
            d,
            a,
            module,
            sigma,
            emit,
        } => cmd_twist(d, a.as_deref(), module, &sigma, emit),
        Command::Relatives { a, emit } => cmd_relatives(&a, emit),
        Command::Polyrealize {
            d,
            betas,
            basis,
            emit,
        } => cmd_polyrealize(d, &betas, basis.as_deref(), emit),
    }
}

fn parse_param(s: &str) -> Result<EvalParam, CliError> {
    let value = parse_rational(s).map_err(|e| CliError::Usage(e.to_string()))?;
    EvalParam::new(value).map_err(|e| CliError::Domain(e.to_string()))
}

fn parse_basis(s: &str) -> Result<BasisQuad, CliError> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("bad basis label {s:?}, expected \"i,j,k,l\"")))?;
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "bad basis label {s:?}, expected four indices"
        )));
    }
    BasisQuad::from_indices(parts[0], parts[1], parts[2], parts[3])
        .map_err(|e| CliError::Domain(e.to_string()))
}

fn parse_betas(s: &str) -> Result<BetaQuad, CliError> {
    let parts: Vec<Rational> = s
        .split(',')
        .map(|t| parse_rational(t.trim()))
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "expected four beta values, got {}",
            parts.len()
        )));
    }
    let four: [Rational; 4] = parts.try_into().expect("length checked");
    BetaQuad::new(four).map_err(|e| CliError::Domain(e.to_string()))
}

fn load_module(path: &PathBuf) -> Result<TetModule, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    TetModule::from_json(&text).map_err(|e| CliError::Domain(e.to_string()))
}

fn emit_module(m: &TetModule, extra: Vec<(&str, Value)>, emit: Emit) {
    match emit {
        Emit::Json => {
            let mut value = m.to_json_value();
            let obj = value.as_object_mut().expect("module JSON is an object");
            for (k, v) in extra {
                obj.insert(k.to_string(), v);
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("serializable")
            );
        }
        Emit::Csv => {
            println!("generator,row,col,value");
            for pair in GenPair::all() {
                let rows = m.action(pair).to_string_rows();
                for (r, row) in rows.iter().enumerate() {
                    for (c, v) in row.iter().enumerate() {
                        println!("{},{},{},{}", pair.json_key(), r, c, v);
                    }
                }
            }
        }
        Emit::Table => {
            println!("module {} (dim {})", m.label(), m.dim());
            for (k, v) in &extra {
                println!("{k}: {v}");
            }
            for pair in GenPair::all() {
                println!("{}:", pair.json_key());
                for row in m.action(pair).to_string_rows() {
                    println!("  [{}]", row.join(", "));
                }
            }
        }
    }
}

fn cmd_eval(d: usize, a: &str, basis: Option<&str>, emit: Emit) -> Result<(), CliError> {
    if d == 0 {
        return Err(CliError::Domain("diameter must be at least 1".into()));
    }
    let a = parse_param(a)?;
    let spec = EvalModuleSpec::new(d, a);
    match basis {
        None => {
            emit_module(&build_eval_module(&spec), vec![], emit);
        }
        Some(b) => {
            let b = parse_basis(b)?;
            let m = bracket_basis_matrices(&spec, b);
            emit_module(&m, vec![("basis", json!(b.to_string()))], emit);
        }
    }
    Ok(())
}

fn cmd_verify(suite: &str, max_d: Option<usize>, emit: Emit) -> Result<(), CliError> {
    let suite: Suite = suite.parse().map_err(CliError::Usage)?;
    let max_d = match max_d {
        Some(v) => v,
        None => std::env::var("TETBOX_MAX_D")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(4),
    };
    if max_d == 0 {
        return Err(CliError::Domain("max-d must be at least 1".into()));
    }
    let results = suites::run(suite, max_d);
    let failed = results.iter().filter(|r| !r.pass).count();
    emit_verify_report(suite, max_d, &results, emit);
    if failed > 0 {
        return Err(CliError::SuiteFailure);
    }
    Ok(())
}

fn emit_verify_report(suite: Suite, max_d: usize, results: &[CheckResult], emit: Emit) {
    let failed = results.iter().filter(|r| !r.pass).count();
    match emit {
        Emit::Json => {
            let checks: Vec<Value> = results
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "pass": r.pass,
                        "detail": r.detail,
                    })
                })
                .collect();
            let report = json!({
                "schema": "tetbox/1",
                "suite": suite.to_string(),
                "max_d": max_d,
                "passed": results.len() - failed,
                "failed": failed,
                "checks": checks,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
        }
        Emit::Csv => {
            println!("name,pass,detail");
            for r in results {
                println!(
                    "{:?},{},{:?}",
                    r.name,
                    r.pass,
                    r.detail.clone().unwrap_or_default()
                );
            }
        }
        Emit::Table => {
            for r in results {
                let mark = if r.pass { "PASS" } else { "FAIL" };
                match &r.detail {
                    Some(d) => println!("{mark}  {} ({d})", r.name),
                    None => println!("{mark}  {}", r.name),
                }
            }
            println!(
                "suite {suite}: {} passed, {failed} failed",
                results.len() - failed
            );
        }
    }
}

fn cmd_tensor(spec: &str, emit: Emit) -> Result<(), CliError> {
    let ts = TensorSpec::parse(spec).map_err(|e| CliError::Domain(e.to_string()))?;
    emit_module(&ts.build(), vec![("spec", json!(ts.to_string()))], emit);
    Ok(())
}

fn cmd_classify(spec: Option<&str>, module: Option<PathBuf>, emit: Emit) -> Result<(), CliError> {
    let m = match (spec, module) {
        (Some(s), None) => TensorSpec::parse(s)
            .map_err(|e| CliError::Domain(e.to_string()))?
            .build(),
        (None, Some(path)) => load_module(&path)?,
        _ => {
            return Err(CliError::Usage(
                "exactly one of --spec or --module is required".into(),
            ))
        }
    };
    match classify(&m).map_err(|e| CliError::Domain(e.to_string()))? {
        Classification::Factors(factors) => {
            match emit {
                Emit::Json => {
                    let list: Vec<Value> = factors
                        .iter()
                        .map(|f| json!({"d": f.d, "a": f.a.to_string()}))
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&list).expect("serializable")
                    );
                }
                Emit::Csv => {
                    println!("d,a");
                    for f in &factors {
                        println!("{},{}", f.d, f.a);
                    }
                }
                Emit::Table => {
                    for f in &factors {
                        println!("V_{}({})", f.d, f.a);
                    }
                }
            }
            Ok(())
        }
        Classification::Unclassifiable(reason) => Err(CliError::Unclassifiable(reason.to_string())),
    }
}

fn cmd_twist(
    d: Option<usize>,
    a: Option<&str>,
    module: Option<PathBuf>,
    sigma: &str,
    emit: Emit,
) -> Result<(), CliError> {
    let sigma = Perm4::parse_cycles(sigma).map_err(|e| CliError::Domain(e.to_string()))?;
    let m = match (d, a, module) {
        (Some(d), Some(a), None) => {
            if d == 0 {
                return Err(CliError::Domain("diameter must be at least 1".into()));
            }
            build_eval_module(&EvalModuleSpec::new(d, parse_param(a)?))
        }
        (None, None, Some(path)) => load_module(&path)?,
        _ => {
            return Err(CliError::Usage(
                "either --d with --a, or --module, is required".into(),
            ))
        }
    };
    let twisted = m.twist(sigma);
    let mut extra = vec![("sigma", json!(sigma.to_string()))];
    if let Ok(ExtractResult::Param(p)) = extract_eval_param(&twisted) {
        extra.push(("parameter", json!(p.to_string())));
    }
    emit_module(&twisted, extra, emit);
    Ok(())
}

fn cmd_relatives(a: &str, emit: Emit) -> Result<(), CliError> {
    let a = parse_param(a)?;
    let rows: Vec<(BasisQuad, Rational)> = BasisQuad::all()
        .into_iter()
        .map(|b| {
            let r = tetra::symmetry::relative(&a, b.i(), b.j(), b.k(), b.l())
                .expect("quad indices are distinct");
            (b, r)
        })
        .collect();
    let orbit: Vec<String> = orbit_of_param(&a).iter().map(format_rational).collect();
    match emit {
        Emit::Json => {
            let table: Vec<Value> = rows
                .iter()
                .map(|(b, r)| {
                    let verts: Vec<usize> = b.verts().iter().map(|v| v.index()).collect();
                    json!({"quad": verts, "relative": format_rational(r)})
                })
                .collect();
            let doc = json!({
                "schema": "tetbox/1",
                "a": a.to_string(),
                "orbit": orbit,
                "relatives": table,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
        Emit::Csv => {
            println!("i,j,k,l,relative");
            for (b, r) in &rows {
                let v = b.verts();
                println!("{},{},{},{},{}", v[0], v[1], v[2], v[3], format_rational(r));
            }
        }
        Emit::Table => {
            println!("relatives of a = {a}");
            for (b, r) in &rows {
                println!("  {}  ->  {}", b, format_rational(r));
            }
            println!("orbit: {{{}}}", orbit.join(", "));
        }
    }
    Ok(())
}

fn cmd_polyrealize(d: usize, betas: &str, basis: Option<&str>, emit: Emit) -> Result<(), CliError> {
    if d == 0 {
        return Err(CliError::Domain("degree must be at least 1".into()));
    }
    let quad = parse_betas(betas)?;
    let m = build_poly_module(d, &quad);
    let mut extra = vec![("parameter", json!(format_rational(&quad.cross_ratio())))];
    if let Some(b) = basis {
        let b = parse_basis(b)?;
        let vectors = bracket_basis_vectors(d, &quad, b);
        let as_json: Vec<Value> = vectors
            .iter()
            .map(|v| {
                let coefficients: Vec<Value> = v
                    .coeffs()
                    .iter()
                    .map(|c| Value::String(format_rational(c)))
                    .collect();
                json!({"degree": v.degree(), "coefficients": coefficients})
            })
            .collect();
        extra.push(("basis", json!(b.to_string())));
        extra.push(("basis_vectors", Value::Array(as_json)));
    }
    emit_module(&m, extra, emit);
    Ok(())
}
