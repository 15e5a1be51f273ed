//! Command-line front end: verification runs, operator realization and
//! export, module actions, characters, and the classical-limit comparison.
//!
//! Exit codes: 0 success / all checks pass, 1 verification failure,
//! 2 usage error, 3 I/O or parse error. Set RAYON_NUM_THREADS to bound
//! internal parallelism.

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::{One, Zero};
use qverma::pmodule::{
    character_module, trivial_module, validate, vector_module, LeviBlock, PModuleSpec,
};
use qverma::qcoeff;
use qverma::qweyl::{ExponentMatrix, Shape};
use qverma::realization::{pi_generator, ModuleElement, RealizedOperator};
use qverma::uqalg::{GenKind, GeneratorSymbol};
use qverma::verify::{
    character, classical_limit_compare, verify_closed_forms, verify_jimbo,
    verify_presentation, Mode, VerificationReport,
};
use serde_json::Value;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qverma",
    about = "Exact realization and verification of quantum generalized Verma modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ShapeArgs {
    /// First block size n
    #[arg(long)]
    n: usize,
    /// Second block size m
    #[arg(long)]
    m: usize,
}

#[derive(Args)]
struct ModuleArg {
    /// Builtin module name (trivial | char:<signs>:<kn> | vector:first |
    /// vector:second) or a path to a module JSON file
    #[arg(long)]
    module: String,
}

#[derive(Subcommand)]
enum Command {
    /// Run relation catalogs under the realization and report residuals
    Verify {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        module: ModuleArg,
        /// Monomial degree bound for the residual grid
        #[arg(long, default_value_t = 4)]
        degree: u32,
        /// exact | rational-q
        #[arg(long, default_value = "exact")]
        mode: String,
        /// Rational value of q for rational-q mode (not 0, 1, -1)
        #[arg(long, default_value = "2")]
        q: String,
        /// Check the defining relations and quantum Serre relations
        #[arg(long)]
        presentation: bool,
        /// Check the root-vector commutation families
        #[arg(long)]
        jimbo: bool,
        /// Check closed forms against recursions
        #[arg(long)]
        closed_forms: bool,
        /// Largest exponent in the commutation families
        #[arg(long, default_value_t = 3)]
        max_power: u32,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the realized operator of one generator
    Realize {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        module: ModuleArg,
        /// Generator name: e.g. e1, f2, k3, k3^-1
        #[arg(long)]
        gen: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Apply a generator to a basis vector x^r tensor v_b
    Act {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long)]
        gen: String,
        /// Row-major exponent matrix, e.g. [[0,1],[0,0]]
        #[arg(long)]
        monomial: String,
        /// Index of the V-basis vector (0-based)
        #[arg(long, default_value_t = 0)]
        basis_vector: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Weight-multiplicity table of the module up to a degree
    Character {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare the q = 1 specialization against the classical oracle
    ClassicalLimit {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write an operator JSON artifact (or canonicalize an existing one)
    Export {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        module: ModuleArg,
        /// Generator to realize (omit when using --input)
        #[arg(long)]
        gen: Option<String>,
        /// Re-import and canonicalize this operator JSON file instead
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: PathBuf,
    },
    /// Check a module file against the defining relations
    ValidateModule {
        #[command(flatten)]
        module: ModuleArg,
        /// Shape for builtin module names (ignored for files)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_USAGE,
        message: msg.into(),
    }
}

fn io_err(msg: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_IO,
        message: msg.into(),
    }
}

fn parse_shape(args: &ShapeArgs) -> Result<Shape, CliError> {
    Shape::new(args.n, args.m).map_err(|e| usage(e.to_string()))
}

fn parse_generator(text: &str) -> Result<GeneratorSymbol, CliError> {
    let (body, inverse) = match text.strip_suffix("^-1") {
        Some(b) => (b, true),
        None => (text, false),
    };
    let (kind_char, idx) = body.split_at(1);
    let index: usize = idx
        .parse()
        .map_err(|_| usage(format!("bad generator name '{text}'")))?;
    let kind = match (kind_char, inverse) {
        ("e", false) => GenKind::E,
        ("f", false) => GenKind::F,
        ("k", false) => GenKind::K,
        ("k", true) => GenKind::Kinv,
        _ => return Err(usage(format!("bad generator name '{text}'"))),
    };
    Ok(GeneratorSymbol { kind, index })
}

fn load_module(shape: Shape, name: &str) -> Result<PModuleSpec, CliError> {
    if name == "trivial" {
        return Ok(trivial_module(shape));
    }
    if name == "vector:first" {
        return vector_module(shape, LeviBlock::First).map_err(|e| usage(e.to_string()));
    }
    if name == "vector:second" {
        return vector_module(shape, LeviBlock::Second).map_err(|e| usage(e.to_string()));
    }
    if let Some(rest) = name.strip_prefix("char:") {
        let (signs_text, kn_text) = rest
            .split_once(':')
            .ok_or_else(|| usage("character module syntax is char:<signs>:<kn>"))?;
        let mut signs = Vec::new();
        for ch in signs_text.chars() {
            match ch {
                '+' => signs.push(1),
                '-' => signs.push(-1),
                _ => return Err(usage(format!("bad sign character '{ch}'"))),
            }
        }
        let kn = qcoeff::parse(kn_text).map_err(|e| usage(e.to_string()))?;
        return character_module(shape, &signs, kn).map_err(|e| usage(e.to_string()));
    }
    let text = std::fs::read_to_string(name)
        .map_err(|e| io_err(format!("cannot read module file '{name}': {e}")))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| io_err(format!("module file '{name}': {e}")))?;
    let spec = PModuleSpec::from_json(&v).map_err(|e| io_err(e.to_string()))?;
    if spec.shape() != shape {
        return Err(usage(format!(
            "module file shape ({}, {}) does not match --n {} --m {}",
            spec.shape().n,
            spec.shape().m,
            shape.n,
            shape.m
        )));
    }
    Ok(spec)
}

fn parse_mode(mode: &str, q: &str) -> Result<Mode, CliError> {
    match mode {
        "exact" => Ok(Mode::Exact),
        "rational-q" => {
            let value: BigRational = q
                .parse()
                .map_err(|_| usage(format!("bad rational q value '{q}'")))?;
            let one = BigRational::one();
            if value.is_zero() || value == one || value == -one {
                return Err(usage("rational q must not be 0, 1 or -1"));
            }
            Ok(Mode::RationalQ(value))
        }
        _ => Err(usage(format!("unknown mode '{mode}'"))),
    }
}

fn parse_monomial(shape: Shape, text: &str) -> Result<ExponentMatrix, CliError> {
    let rows: Vec<Vec<u32>> = serde_json::from_str(text)
        .map_err(|e| usage(format!("bad monomial literal: {e}")))?;
    ExponentMatrix::from_rows(shape, &rows).map_err(|e| usage(e.to_string()))
}

fn emit(value: &Value, output: &Option<PathBuf>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    match output {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| io_err(format!("cannot write '{}': {e}", path.display()))),
        None => {
            use std::io::Write;
            match writeln!(std::io::stdout(), "{text}") {
                Ok(()) => Ok(()),
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                Err(e) => Err(io_err(format!("cannot write to stdout: {e}"))),
            }
        }
    }
}

fn report_exit(report: &VerificationReport) -> u8 {
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn format_element(shape: Shape, elem: &ModuleElement) -> String {
    if elem.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (r, coords) in elem.terms() {
        for (b, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut mono = String::new();
            for (j, k) in shape.var_indices() {
                let e = r.get(shape, j, k);
                if e == 1 {
                    write!(mono, "x_{{{j},{k}}} ").unwrap();
                } else if e > 1 {
                    write!(mono, "x_{{{j},{k}}}^{e} ").unwrap();
                }
            }
            if mono.is_empty() {
                mono = "1 ".into();
            }
            let coeff = c.to_string();
            let part = if coeff == "1" {
                format!("{mono}(x) v_{b}")
            } else {
                format!("({coeff}) {mono}(x) v_{b}")
            };
            parts.push(part);
        }
    }
    parts.join(" + ")
}

fn element_json(shape: Shape, elem: &ModuleElement) -> Value {
    let terms: Vec<Value> = elem
        .terms()
        .map(|(r, coords)| {
            serde_json::json!({
                "monomial": r.to_rows(shape),
                "coords": coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::json!({ "terms": terms })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Verify {
            shape,
            module,
            degree,
            mode,
            q,
            presentation,
            jimbo,
            closed_forms,
            max_power,
            output,
        } => {
            let shape = parse_shape(&shape)?;
            let spec = load_module(shape, &module.module)?;
            let mode = parse_mode(&mode, &q)?;
            // No selection flags means run everything.
            let all = !(presentation || jimbo || closed_forms);
            let mut report = VerificationReport::new();
            if all || presentation {
                report.merge(verify_presentation(shape, &spec, degree, &mode));
            }
            if all || jimbo {
                report.merge(verify_jimbo(shape, degree, max_power, &mode));
            }
            if all || closed_forms {
                report.merge(verify_closed_forms(shape, degree));
            }
            emit(&report.to_json(), &output)?;
            Ok(report_exit(&report))
        }
        Command::Realize { shape, module, gen, output } => {
            let shape = parse_shape(&shape)?;
            let spec = load_module(shape, &module.module)?;
            let g = parse_generator(&gen)?;
            let op = pi_generator(shape, &spec, g).map_err(|e| usage(e.to_string()))?;
            emit(&op.to_json(), &output)?;
            Ok(EXIT_OK)
        }
        Command::Act {
            shape,
            module,
            gen,
            monomial,
            basis_vector,
            output,
        } => {
            let shape = parse_shape(&shape)?;
            let spec = load_module(shape, &module.module)?;
            let g = parse_generator(&gen)?;
            if basis_vector >= spec.dim() {
                return Err(usage(format!(
                    "basis vector {basis_vector} out of range for dim {}",
                    spec.dim()
                )));
            }
            let r = parse_monomial(shape, &monomial)?;
            let op = pi_generator(shape, &spec, g).map_err(|e| usage(e.to_string()))?;
            let mut v = vec![qcoeff::RationalQ::zero(); spec.dim()];
            v[basis_vector] = qcoeff::RationalQ::one();
            let out = op.act(&r, &v).map_err(|e| usage(e.to_string()))?;
            println!("{}", format_element(shape, &out));
            if output.is_some() {
                emit(&element_json(shape, &out), &output)?;
            }
            Ok(EXIT_OK)
        }
        Command::Character { shape, module, degree, output } => {
            let shape = parse_shape(&shape)?;
            let spec = load_module(shape, &module.module)?;
            let table =
                character(shape, &spec, degree).map_err(|e| usage(e.to_string()))?;
            emit(&table.to_json(), &output)?;
            Ok(EXIT_OK)
        }
        Command::ClassicalLimit { shape, module, degree, output } => {
            let shape = parse_shape(&shape)?;
            let spec = load_module(shape, &module.module)?;
            let report = classical_limit_compare(shape, &spec, degree)
                .map_err(|e| usage(e.to_string()))?;
            emit(&report.to_json(), &output)?;
            Ok(report_exit(&report))
        }
        Command::Export {
            shape,
            module,
            gen,
            input,
            output,
        } => {
            let shape = parse_shape(&shape)?;
            let op = match (&gen, &input) {
                (Some(gen), None) => {
                    let spec = load_module(shape, &module.module)?;
                    let g = parse_generator(gen)?;
                    pi_generator(shape, &spec, g).map_err(|e| usage(e.to_string()))?
                }
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        io_err(format!("cannot read '{}': {e}", path.display()))
                    })?;
                    let v: Value = serde_json::from_str(&text)
                        .map_err(|e| io_err(format!("'{}': {e}", path.display())))?;
                    RealizedOperator::from_json(&v).map_err(|e| io_err(e.to_string()))?
                }
                _ => return Err(usage("export needs exactly one of --gen or --input")),
            };
            emit(&op.to_json(), &Some(output))?;
            Ok(EXIT_OK)
        }
        Command::ValidateModule { module, n, m, output } => {
            let spec = if module.module.contains(':')
                || module.module == "trivial"
            {
                let (n, m) = match (n, m) {
                    (Some(n), Some(m)) => (n, m),
                    _ => return Err(usage("builtin modules need --n and --m")),
                };
                let shape = Shape::new(n, m).map_err(|e| usage(e.to_string()))?;
                load_module(shape, &module.module)?
            } else {
                let text = std::fs::read_to_string(&module.module).map_err(|e| {
                    io_err(format!("cannot read module file '{}': {e}", module.module))
                })?;
                let v: Value = serde_json::from_str(&text)
                    .map_err(|e| io_err(format!("'{}': {e}", module.module)))?;
                PModuleSpec::from_json(&v).map_err(|e| io_err(e.to_string()))?
            };
            let report = validate(&spec);
            emit(&report.to_json(), &output)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}
