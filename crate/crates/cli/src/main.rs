//! `gkz`: exact analysis of A-hypergeometric systems from the command
//! line. Every subcommand reads a matrix (and usually a parameter),
//! runs the exact computation, and emits either plain text or the
//! structured JSON report.
//!
//! Exit codes: 0 = analysis completed (whatever the verdicts), 2 =
//! invalid input (with a structured error report), 1 = internal error.

mod parse;
mod render;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gkz_core::cone::GkzMatrix;
use gkz_core::ekpresent::{ek_complex, ExportPayload};
use gkz_core::polyring::TermOrder;
use num_bigint::BigInt;
use num_rational::BigRational;
use parse::InputError;
use report::{ErrorReport, InputEcho, Report, Sections, SCHEMA_VERSION};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "gkz",
    version,
    about = "Exact analysis of A-hypergeometric systems: faces, toric ideals, quasi-degrees, resonance, contiguity, escape shifts, face restrictions, and script export"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Grevlex,
    Lex,
}

impl OrderArg {
    fn name(self) -> &'static str {
        match self {
            OrderArg::Grevlex => "grevlex",
            OrderArg::Lex => "lex",
        }
    }
    fn build(self, n: usize) -> TermOrder {
        match self {
            OrderArg::Grevlex => TermOrder::grevlex(n),
            OrderArg::Lex => TermOrder::lex(n),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PayloadArg {
    Complex,
    Contiguity,
    Border,
}

impl PayloadArg {
    fn name(self) -> &'static str {
        match self {
            PayloadArg::Complex => "complex",
            PayloadArg::Contiguity => "contiguity",
            PayloadArg::Border => "border",
        }
    }
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Matrix rows, inline ("1 1 0; 0 1 1") or a file in the same
    /// format (rows split on ';' or newlines).
    #[arg(short = 'A', long = "matrix", value_name = "ROWS|FILE")]
    matrix: Option<String>,
    /// Parameter vector: comma-separated rationals ("1,-1" or "1/2,3").
    #[arg(short = 'b', long = "beta", value_name = "LIST")]
    beta: Option<String>,
    /// Structured JSON input: the "input" object of a JSON report.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Term order for Groebner computations.
    #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
    order: OrderArg,
    /// Emit the structured JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check admissibility: nonzero columns, full lattice, pointed cone.
    Validate(CommonArgs),
    /// List the face lattice of the column cone.
    Faces(CommonArgs),
    /// Groebner basis of the toric ideal.
    #[command(name = "toric-ideal")]
    ToricIdeal(CommonArgs),
    /// Quasi-degree pieces of quotients by variable subsets
    /// (singletons by default).
    Qdeg {
        #[command(flatten)]
        common: CommonArgs,
        /// 1-based column subset, e.g. "1,3" (repeatable).
        #[arg(long = "tau", value_name = "COLS")]
        tau: Vec<String>,
    },
    /// Strong-resonance witnesses of the parameter.
    Sres(CommonArgs),
    /// Resonance of the parameter (first witnessing proper face).
    Res(CommonArgs),
    /// Contiguity map along one column: quasi-isomorphism verdict and
    /// cokernel levels.
    Contiguity {
        #[command(flatten)]
        common: CommonArgs,
        /// 1-based column of the map.
        #[arg(long = "j", value_name = "J")]
        j: usize,
    },
    /// Minimal escape shifts: full, plus any requested partial subsets.
    Shift {
        #[command(flatten)]
        common: CommonArgs,
        /// 1-based column subset for a partial shift (repeatable).
        #[arg(long = "tau", value_name = "COLS")]
        tau: Vec<String>,
    },
    /// Face-restriction comparison data for one face.
    Border {
        #[command(flatten)]
        common: CommonArgs,
        /// 1-based columns spanning the face (may be empty: "").
        #[arg(long = "face", value_name = "COLS")]
        face: String,
    },
    /// Render a computer-algebra script for an external check.
    Export {
        #[command(flatten)]
        common: CommonArgs,
        /// Script dialect.
        #[arg(long, value_name = "NAME", default_value = "macaulay2")]
        dialect: String,
        /// What to export.
        #[arg(long, value_enum)]
        payload: Option<PayloadArg>,
        /// 1-based column for the contiguity payload.
        #[arg(long = "j", value_name = "J")]
        j: Option<usize>,
        /// 1-based face columns for the border payload.
        #[arg(long = "face", value_name = "COLS")]
        face: Option<String>,
    },
    /// Every section at once: validate, faces, toric-ideal, qdeg,
    /// sres, res, contiguity, shift, border, export.
    Report {
        #[command(flatten)]
        common: CommonArgs,
        /// Extra 1-based column subsets for qdeg and partial shifts
        /// (repeatable).
        #[arg(long = "tau", value_name = "COLS")]
        tau: Vec<String>,
    },
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Validate(c)
            | Command::Faces(c)
            | Command::ToricIdeal(c)
            | Command::Sres(c)
            | Command::Res(c) => c,
            Command::Qdeg { common, .. }
            | Command::Contiguity { common, .. }
            | Command::Shift { common, .. }
            | Command::Border { common, .. }
            | Command::Export { common, .. }
            | Command::Report { common, .. } => common,
        }
    }
}

fn main() {
    let code = match std::panic::catch_unwind(run) {
        Ok(code) => code,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| (*s).to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            eprintln!("internal error: {message}");
            1
        }
    };
    std::process::exit(code);
}

fn run() -> i32 {
    let cli = Cli::parse();
    let common = cli.command.common().clone();
    match execute(&cli.command) {
        Ok(rendered) => match emit(&common, &rendered) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error (io): {e}");
                1
            }
        }
        Err(e) => {
            let rendered = if common.json {
                let r: ErrorReport = report::error_report(&e.kind, e.message.clone());
                serde_json::to_string_pretty(&r).expect("error report serializes") + "\n"
            } else {
                format!("error ({}): {}\n", e.kind, e.message)
            };
            if emit(&common, &rendered).is_err() {
                eprint!("{rendered}");
            }
            2
        }
    }
}

fn emit(common: &CommonArgs, rendered: &str) -> std::io::Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, rendered),
        None => std::io::stdout().write_all(rendered.as_bytes()),
    }
}

/// Inputs after merging command-line flags with an optional
/// `--input` file (flags win).
struct Resolved {
    g: GkzMatrix,
    beta: Option<Vec<BigRational>>,
    /// Requested extra subsets, 0-based (from `--tau` or the file).
    tau: Vec<Vec<usize>>,
    /// 0-based face columns (from `--face` or the file).
    face: Option<Vec<usize>>,
    dialect: Option<String>,
    payload: Option<String>,
    /// 0-based column index (from `--j` or the file).
    j: Option<usize>,
    order: OrderArg,
}

fn load_input_file(path: &PathBuf) -> Result<InputEcho, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::new("io", format!("cannot read input file {path:?}: {e}")))?;
    serde_json::from_str(&text)
        .map_err(|e| InputError::new("parse", format!("input file {path:?}: {e}")))
}

fn matrix_from_echo(echo: &InputEcho) -> Result<gkz_core::exactlat::IntMatrix, InputError> {
    let rows = echo.matrix.len();
    if rows == 0 {
        return Err(InputError::new("parse", "input file matrix has no rows"));
    }
    let cols = echo.matrix[0].len();
    if cols == 0 {
        return Err(InputError::new("parse", "input file row 1: matrix has no columns"));
    }
    let mut data: Vec<BigInt> = Vec::new();
    for (r, row) in echo.matrix.iter().enumerate() {
        if row.len() != cols {
            return Err(InputError::new(
                "parse",
                format!("input file row {}: expected {cols} entries, found {}", r + 1, row.len()),
            ));
        }
        for (c, token) in row.iter().enumerate() {
            data.push(token.parse().map_err(|_| {
                InputError::new(
                    "parse",
                    format!("input file row {}, column {}: invalid integer {token:?}", r + 1, c + 1),
                )
            })?);
        }
    }
    Ok(gkz_core::exactlat::IntMatrix::new(rows, cols, data))
}

fn resolve(
    common: &CommonArgs,
    tau_flags: &[String],
    face_flag: Option<&str>,
    j_flag: Option<usize>,
    dialect_flag: Option<&str>,
    payload_flag: Option<&str>,
) -> Result<Resolved, InputError> {
    let file = match &common.input {
        Some(path) => Some(load_input_file(path)?),
        None => None,
    };

    let matrix = match (&common.matrix, &file) {
        (Some(spec), _) => parse::parse_matrix(spec)?,
        (None, Some(echo)) => matrix_from_echo(echo)?,
        (None, None) => {
            return Err(InputError::new(
                "usage",
                "no matrix: pass -A/--matrix or --input",
            ));
        }
    };
    let g = GkzMatrix::new(matrix).map_err(|e| report::from_cone_error(&e))?;
    let n = g.nvars();

    let beta = match (&common.beta, &file) {
        (Some(spec), _) => Some(parse::parse_beta(spec)?),
        (None, Some(echo)) => match &echo.beta {
            Some(entries) => {
                let mut out = Vec::new();
                for (i, token) in entries.iter().enumerate() {
                    out.push(token.parse().map_err(|_| {
                        InputError::new(
                            "parse",
                            format!("input file beta entry {}: invalid rational {token:?}", i + 1),
                        )
                    })?);
                }
                Some(out)
            }
            None => None,
        },
        (None, None) => None,
    };
    if let Some(beta) = &beta {
        if beta.len() != g.dim() {
            return Err(InputError::new(
                "dimension-mismatch",
                format!("beta has {} entries but the matrix has {} rows", beta.len(), g.dim()),
            ));
        }
    }

    let tau: Vec<Vec<usize>> = if !tau_flags.is_empty() {
        let mut out = Vec::new();
        for spec in tau_flags {
            out.push(parse::parse_columns(spec, n, "tau")?);
        }
        out
    } else if let Some(echo) = &file {
        let mut out = Vec::new();
        for list in echo.tau.clone().unwrap_or_default() {
            let mut cols = Vec::new();
            for (i, v) in list.iter().enumerate() {
                if *v == 0 || *v > n {
                    return Err(InputError::new(
                        "index-out-of-range",
                        format!("input file tau entry {}: column {v} outside 1..={n}", i + 1),
                    ));
                }
                cols.push(v - 1);
            }
            cols.sort_unstable();
            cols.dedup();
            out.push(cols);
        }
        out
    } else {
        Vec::new()
    };

    let face = match (face_flag, &file) {
        (Some(spec), _) => Some(parse::parse_columns(spec, n, "face")?),
        (None, Some(echo)) => match &echo.face {
            Some(list) => {
                let mut cols = Vec::new();
                for (i, v) in list.iter().enumerate() {
                    if *v == 0 || *v > n {
                        return Err(InputError::new(
                            "index-out-of-range",
                            format!("input file face entry {}: column {v} outside 1..={n}", i + 1),
                        ));
                    }
                    cols.push(v - 1);
                }
                cols.sort_unstable();
                cols.dedup();
                Some(cols)
            }
            None => None,
        },
        (None, None) => None,
    };

    let j = match (j_flag, &file) {
        (Some(j), _) => Some(parse::parse_single_column(j, n)?),
        (None, Some(echo)) => match echo.j {
            Some(j) => Some(parse::parse_single_column(j, n)?),
            None => None,
        },
        (None, None) => None,
    };

    let dialect = dialect_flag
        .map(str::to_string)
        .or_else(|| file.as_ref().and_then(|e| e.dialect.clone()));
    let payload = payload_flag
        .map(str::to_string)
        .or_else(|| file.as_ref().and_then(|e| e.payload.clone()));

    Ok(Resolved {
        g,
        beta,
        tau,
        face,
        dialect,
        payload,
        j,
        order: common.order,
    })
}

fn need_beta(r: &Resolved) -> Result<Vec<BigRational>, InputError> {
    r.beta
        .clone()
        .ok_or_else(|| InputError::new("usage", "this command needs a parameter: pass -b/--beta"))
}

fn base_echo(r: &Resolved) -> InputEcho {
    InputEcho {
        matrix: report::echo_matrix(&r.g),
        beta: None,
        tau: None,
        face: None,
        order: r.order.name().to_string(),
        dialect: None,
        payload: None,
        j: None,
    }
}

fn echo_tau(tau: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    if tau.is_empty() {
        None
    } else {
        Some(tau.iter().map(|t| t.iter().map(|&c| c + 1).collect()).collect())
    }
}

/// All 1-based singleton subsets followed by the requested extras,
/// first occurrence wins.
fn singletons_plus(n: usize, extra: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..n).map(|j| vec![j]).collect();
    for t in extra {
        if !out.contains(t) {
            out.push(t.clone());
        }
    }
    out
}

fn execute(command: &Command) -> Result<String, InputError> {
    let mut sections = Sections::default();
    let mut grid: Option<Vec<String>> = None;

    let (resolved, echo) = match command {
        Command::Validate(c) => {
            let r = resolve(c, &[], None, None, None, None)?;
            sections.validate = Some(report::validate_section(&r.g));
            let echo = base_echo(&r);
            (r, echo)
        }
        Command::Faces(c) => {
            let r = resolve(c, &[], None, None, None, None)?;
            sections.faces = Some(report::faces_section(&r.g));
            let echo = base_echo(&r);
            (r, echo)
        }
        Command::ToricIdeal(c) => {
            let r = resolve(c, &[], None, None, None, None)?;
            let order = r.order.build(r.g.nvars());
            sections.toric_ideal = Some(report::toric_section(&r.g, &order, r.order.name()));
            let echo = base_echo(&r);
            (r, echo)
        }
        Command::Qdeg { common, tau } => {
            let r = resolve(common, tau, None, None, None, None)?;
            let order = r.order.build(r.g.nvars());
            let taus = singletons_plus(r.g.nvars(), &r.tau);
            sections.qdeg = Some(report::qdeg_section(&r.g, &taus, &order));
            let mut echo = base_echo(&r);
            echo.tau = echo_tau(&r.tau);
            (r, echo)
        }
        Command::Sres(c) => {
            let r = resolve(c, &[], None, None, None, None)?;
            let beta = need_beta(&r)?;
            sections.sres = Some(report::sres_section(&r.g, &beta));
            if r.g.dim() == 2 {
                grid = Some(render::sres_grid(&r.g));
            }
            let mut echo = base_echo(&r);
            echo.beta = Some(report::rationals(&beta));
            (r, echo)
        }
        Command::Res(c) => {
            let r = resolve(c, &[], None, None, None, None)?;
            let beta = need_beta(&r)?;
            sections.res = Some(report::res_section(&r.g, &beta));
            let mut echo = base_echo(&r);
            echo.beta = Some(report::rationals(&beta));
            (r, echo)
        }
        Command::Contiguity { common, j } => {
            let r = resolve(common, &[], None, Some(*j), None, None)?;
            let beta = need_beta(&r)?;
            let j0 = r.j.expect("resolved above");
            sections.contiguity = Some(vec![report::contiguity_entry(&r.g, &beta, j0)]);
            let mut echo = base_echo(&r);
            echo.beta = Some(report::rationals(&beta));
            echo.j = Some(j0 + 1);
            (r, echo)
        }
        Command::Shift { common, tau } => {
            let r = resolve(common, tau, None, None, None, None)?;
            let beta = need_beta(&r)?;
            sections.shift = Some(report::shift_section(&r.g, &beta, &r.tau));
            let mut echo = base_echo(&r);
            echo.beta = Some(report::rationals(&beta));
            echo.tau = echo_tau(&r.tau);
            (r, echo)
        }
        Command::Border { common, face } => {
            let r = resolve(common, &[], Some(face.as_str()), None, None, None)?;
            let beta = need_beta(&r)?;
            let cols = r.face.clone().expect("resolved above");
            let image = gkz_core::border::border_image(&r.g, &cols, &beta)
                .map_err(|e| report::from_border_error(&e))?;
            sections.border = Some(vec![report::border_entry(&image)]);
            let mut echo = base_echo(&r);
            echo.beta = Some(report::rationals(&beta));
            echo.face = Some(cols.iter().map(|&c| c + 1).collect());
            (r, echo)
        }
        Command::Export { common, dialect, payload, j, face } => {
            let r = resolve(
                common,
                &[],
                face.as_deref(),
                *j,
                Some(dialect.as_str()),
                payload.map(PayloadArg::name),
            )?;
            let dialect = r.dialect.clone().expect("resolved above");
            let payload_name = r.payload.clone().ok_or_else(|| {
                InputError::new(
                    "usage",
                    "export needs --payload (complex, contiguity, or border)",
                )
            })?;
            let payload = match payload_name.as_str() {
                "complex" => PayloadArg::Complex,
                "contiguity" => PayloadArg::Contiguity,
                "border" => PayloadArg::Border,
                other => {
                    return Err(InputError::new(
                        "parse",
                        format!("input file payload: unknown value {other:?}"),
                    ));
                }
            };
            let section = match payload {
                PayloadArg::Complex => {
                    let beta = need_beta(&r)?;
                    let p = ek_complex(&r.g, &beta);
                    report::export_section(&r.g, &dialect, "complex", &ExportPayload::Complex(&p))?
                }
                PayloadArg::Contiguity => {
                    let beta = need_beta(&r)?;
                    let j0 = r.j.ok_or_else(|| {
                        InputError::new("usage", "the contiguity payload needs --j")
                    })?;
                    report::export_section(
                        &r.g,
                        &dialect,
                        "contiguity",
                        &ExportPayload::Contiguity { beta: &beta, j: j0 },
                    )?
                }
                PayloadArg::Border => {
                    let beta = need_beta(&r)?;
                    let cols = r.face.clone().ok_or_else(|| {
                        InputError::new("usage", "the border payload needs --face")
                    })?;
                    let image = gkz_core::border::border_image(&r.g, &cols, &beta)
                        .map_err(|e| report::from_border_error(&e))?;
                    report::export_section(
                        &r.g,
                        &dialect,
                        "border",
                        &ExportPayload::Border(&image),
                    )?
                }
            };
            sections.export = Some(section);
            let mut echo = base_echo(&r);
            echo.beta = r.beta.as_ref().map(|b| report::rationals(b));
            echo.face = r.face.as_ref().map(|f| f.iter().map(|&c| c + 1).collect());
            echo.dialect = Some(dialect);
            echo.payload = Some(payload.name().to_string());
            echo.j = r.j.map(|j0| j0 + 1);
            (r, echo)
        }
        Command::Report { common, tau } => {
            let r = resolve(common, tau, None, None, None, None)?;
            let beta = need_beta(&r)?;
            let order = r.order.build(r.g.nvars());
            sections.validate = Some(report::validate_section(&r.g));
            sections.faces = Some(report::faces_section(&r.g));
            sections.toric_ideal = Some(report::toric_section(&r.g, &order, r.order.name()));
            let taus = singletons_plus(r.g.nvars(), &r.tau);
            sections.qdeg = Some(report::qdeg_section(&r.g, &taus, &order));
            sections.sres = Some(report::sres_section(&r.g, &beta));
            if r.g.dim() == 2 {
                grid = Some(render::sres_grid(&r.g));
            }
            sections.res = Some(report::res_section(&r.g, &beta));
            sections.contiguity = Some(
                (0..r.g.nvars())
                    .map(|j| report::contiguity_entry(&r.g, &beta, j))
                    .collect(),
            );
            sections.shift = Some(report::shift_section(&r.g, &beta, &r.tau));
            sections.border = Some(report::border_all_faces(&r.g, &beta));
            sections.export = Some(report::export_complex_section(&r.g, &beta, "macaulay2")?);
            let mut echo = base_echo(&r);
            echo.beta = Some(report::rationals(&beta));
            echo.tau = echo_tau(&r.tau);
            (r, echo)
        }
    };

    let full = Report {
        schema_version: SCHEMA_VERSION.to_string(),
        input: echo,
        sections,
    };
    let common = command.common();
    let rendered = if common.json {
        serde_json::to_string_pretty(&full).expect("report serializes") + "\n"
    } else {
        render::render_text(&full, grid.as_deref())
    };
    let _ = resolved;
    Ok(rendered)
}
