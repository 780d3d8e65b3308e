//! `logsym`: every engine operation as a subcommand over a session file.
//!
//! Exit codes: 0 when the check passed or the computation succeeded, 1 when
//! a check failed with a verdict, 2 on usage, parse or input errors.

mod commands;
mod report;

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logsym::frontend::{parse_session, SessionManifest};

#[derive(Parser, Debug)]
#[command(name = "logsym", version, about = "Exact logarithmic symplectic calculus on affine charts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FrameArg {
    Log,
    Saito,
}

#[derive(Args, Debug)]
struct Common {
    /// Session file, or `-` to read it from standard input.
    #[arg(long)]
    session: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Arguments shared by the symplectic commands. Expressions may name
/// session objects.
#[derive(Args, Debug, Clone)]
pub struct FormArg {
    /// The 2-form; defaults to the session's only 2-form.
    #[arg(long)]
    pub form: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reducedness and kind of the session divisor.
    CheckDivisor {
        #[command(flatten)]
        common: Common,
        /// Also test these fields for tangency.
        #[arg(long, value_delimiter = ',')]
        fields: Vec<String>,
    },
    /// Saito's criterion for the listed fields.
    CheckSaito {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', required = true)]
        fields: Vec<String>,
    },
    /// Closedness and nondegeneracy of a log 2-form.
    CheckLogsymplectic {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArg,
        #[arg(long, value_enum, default_value_t = FrameArg::Log)]
        frame: FrameArg,
        /// Saito basis for `--frame saito`.
        #[arg(long, value_delimiter = ',')]
        fields: Vec<String>,
    },
    /// Hamiltonian field of a function.
    Hamiltonian {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        f: String,
        /// Also print the reduced field `δ̃_f` with `δ_f = f·δ̃_f`.
        #[arg(long)]
        tilde: bool,
    },
    /// Poisson bracket `{f, g}`.
    Bracket {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Singular bracket, dividing by the arguments that lie in the divisor ideal.
    Singbracket {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Jacobiator of three functions.
    Jacobi {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Defects of the bracket identities for `u, v` in the ideal.
    Identities {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Symbol of the operator `δ + m`, optionally checked against a field.
    Symbol {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        field: String,
        #[arg(long, default_value = "0")]
        mult: String,
        #[arg(long)]
        expect: Option<String>,
    },
    /// Splits `δ + m` as `∇_δ + m(φ)` for a connection.
    Decompose {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        conn: String,
        #[arg(long)]
        field: String,
        #[arg(long, default_value = "0")]
        mult: String,
    },
    /// Dirac condition `[Q(f), Q(g)] = Q({f, g})`.
    DiracTest {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        conn: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "T")]
        alpha: String,
        /// 1-form `θ` of the cochain `m(f) = θ(δ_f) + c·f`.
        #[arg(long)]
        cochain: Option<String>,
        #[arg(long, default_value = "1")]
        c: String,
        /// Two 1-forms whose wedge compatibility is also reported.
        #[arg(long, value_delimiter = ',')]
        wedge: Vec<String>,
    },
    /// Curvature `dσ` of a connection.
    Curvature {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        conn: String,
    },
    /// Gauge move `σ + τ` by a closed 1-form.
    Gauge {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        conn: String,
        #[arg(long)]
        tau: String,
    },
    /// Flatness, with the residue split of flat connections.
    Flat {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        conn: String,
    },
    /// Residues of a log 1-form along the divisor coordinates.
    Residues {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        eta: String,
    },
    /// Shifts constant residues into `0 ≤ Re < 1`.
    NormalizeResidues {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        conn: String,
    },
    /// Periods over the coordinate 2-tori.
    Periods {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArg,
    },
    /// Whether every period lies in `ℤ·T`.
    Integrality {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArg,
    },
    /// Constant class part of a closed form.
    Class {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArg,
    },
    /// Primitive of the exact part of a closed form.
    Primitive {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArg,
    },
    /// Full prequantization pipeline.
    Prequantize {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArg,
    },
    /// Positive weights making a polynomial weighted homogeneous.
    Weights {
        #[command(flatten)]
        common: Common,
        /// Defaults to the divisor equation.
        #[arg(long)]
        f: Option<String>,
    },
}

fn load(path: &str) -> Result<SessionManifest, String> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    };
    parse_session(&text).map_err(|e| format!("{path}: {e}"))
}

fn common(c: &Command) -> &Common {
    use Command::*;
    match c {
        CheckDivisor { common, .. }
        | CheckSaito { common, .. }
        | CheckLogsymplectic { common, .. }
        | Hamiltonian { common, .. }
        | Bracket { common, .. }
        | Singbracket { common, .. }
        | Jacobi { common, .. }
        | Identities { common, .. }
        | Symbol { common, .. }
        | Decompose { common, .. }
        | DiracTest { common, .. }
        | Curvature { common, .. }
        | Gauge { common, .. }
        | Flat { common, .. }
        | Residues { common, .. }
        | NormalizeResidues { common, .. }
        | Periods { common, .. }
        | Integrality { common, .. }
        | Class { common, .. }
        | Primitive { common, .. }
        | Prequantize { common, .. }
        | Weights { common, .. } => common,
    }
}

fn dispatch(s: &SessionManifest, c: &Command) -> Result<report::Report, commands::Failure> {
    use commands as k;
    use Command::*;
    match c {
        CheckDivisor { fields, .. } => k::check_divisor(s, fields),
        CheckSaito { fields, .. } => k::check_saito(s, fields),
        CheckLogsymplectic { form, frame, fields, .. } => k::check_logsymplectic(s, form, *frame, fields),
        Hamiltonian { form, f, tilde, .. } => k::hamiltonian(s, form, f, *tilde),
        Bracket { form, f, g, .. } => k::bracket(s, form, f, g),
        Singbracket { form, f, g, .. } => k::singbracket(s, form, f, g),
        Jacobi { form, f, g, h, .. } => k::jacobi(s, form, f, g, h),
        Identities { form, u, v, a, b, .. } => k::identities(s, form, u, v, a, b),
        Symbol { field, mult, expect, .. } => k::symbol(s, field, mult, expect.as_deref()),
        Decompose { conn, field, mult, .. } => k::decompose(s, conn, field, mult),
        DiracTest { form, conn, f, g, alpha, cochain, c, wedge, .. } => {
            k::dirac_test(s, form, conn, f, g, alpha, cochain.as_deref(), c, wedge)
        }
        Curvature { conn, .. } => k::curvature(s, conn),
        Gauge { conn, tau, .. } => k::gauge(s, conn, tau),
        Flat { conn, .. } => k::flat(s, conn),
        Residues { eta, .. } => k::residues(s, eta),
        NormalizeResidues { conn, .. } => k::normalize_residues(s, conn),
        Periods { form, .. } => k::periods(s, form),
        Integrality { form, .. } => k::integrality(s, form),
        Class { form, .. } => k::class(s, form, false),
        Primitive { form, .. } => k::class(s, form, true),
        Prequantize { form, .. } => k::prequantize(s, form),
        Weights { f, .. } => k::weights(s, f.as_deref()),
    }
}

fn command_name(c: &Command) -> String {
    let dbg = format!("{c:?}");
    let head = dbg.split([' ', '{']).next().unwrap_or_default();
    let mut out = String::new();
    for (i, ch) in head.chars().enumerate() {
        if ch.is_uppercase() && i > 0 {
            out.push('-');
        }
        out.push(ch.to_ascii_lowercase());
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = common(&cli.command);
    let name = command_name(&cli.command);
    let result = load(&common.session)
        .map_err(commands::Failure)
        .and_then(|s| dispatch(&s, &cli.command));
    let mut out = std::io::stdout().lock();
    match result {
        Ok(r) => {
            let body = match common.format {
                Format::Text => r.text(),
                Format::Json => r.json(),
            };
            let _ = out.write_all(body.as_bytes());
            ExitCode::from(r.exit_code())
        }
        Err(commands::Failure(msg)) => {
            if common.format == Format::Json {
                let _ = out.write_all(report::error_json(&name, &msg).as_bytes());
            }
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
