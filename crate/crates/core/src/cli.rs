//! Command-line front end.

use std::fs;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::fps::{build_representation_with, verify, FpsOptions, DEFAULT_DEPTH};
use crate::guess::{guess_rational, GuessOptions, SequencePrefix};
use crate::hyper::DEFAULT_DEGREE_CAP;
use crate::input::{parse_bfile, parse_expression, parse_list};
use crate::ratfun::RatFun;
use crate::render::{from_json, is_identifier, render, Format, RenderOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_NO_GUESS: i32 = 2;
pub const EXIT_NO_BASIS: i32 = 3;
pub const EXIT_PARSE: i32 = 4;
pub const EXIT_CAP: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "hyperseq",
    version,
    about = "Closed forms for sequences with rational generating functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Guess a rational generating function from sequence terms.
    Guess(GuessArgs),
    /// Power series representation of a rational function or sequence.
    Fps(FpsArgs),
    /// Check a JSON representation against a rational function.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct SequenceArgs {
    /// Sequence terms (integers or p/q), separated by spaces or commas.
    #[arg(id = "sequence", allow_negative_numbers = true, value_name = "TERMS")]
    terms: Vec<String>,
    /// Read a term list from a file ("-" for standard input).
    #[arg(long, value_name = "PATH", conflicts_with = "sequence")]
    file: Option<String>,
    /// Read an OEIS b-file ("-" for standard input).
    #[arg(long, value_name = "PATH", conflicts_with_all = ["sequence", "file"])]
    bfile: Option<String>,
}

#[derive(Args, Debug)]
struct GuessBudget {
    /// Terms held back from the fit for confirmation.
    #[arg(long, default_value_t = 0)]
    guard: usize,
    /// Numerator degree budget (default: (N-1)/2).
    #[arg(long = "max-num")]
    max_num: Option<usize>,
    /// Denominator degree budget (default: (N-1)/2).
    #[arg(long = "max-den")]
    max_den: Option<usize>,
}

#[derive(Args, Debug)]
struct GuessArgs {
    #[command(flatten)]
    seq: SequenceArgs,
    #[command(flatten)]
    budget: GuessBudget,
    /// Series variable of the printed function.
    #[arg(long, default_value = "x")]
    var: String,
}

#[derive(Args, Debug)]
struct FpsArgs {
    #[command(flatten)]
    seq: SequenceArgs,
    /// Rational function expression ("-" reads it from standard input).
    #[arg(long, value_name = "EXPR", conflicts_with_all = ["sequence", "file", "bfile"])]
    expr: Option<String>,
    #[command(flatten)]
    budget: GuessBudget,
    /// Output format: text, latex, json or formula.
    #[arg(long, default_value = "text")]
    format: String,
    /// Number of coefficients checked against the series.
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    terms: usize,
    /// Largest number of sections tried (default: from the denominator).
    #[arg(long)]
    mmax: Option<usize>,
    /// Degree cap for polynomial solutions of the section recurrences.
    #[arg(long = "degree-cap", default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
    #[arg(long, default_value = "x")]
    var: String,
    #[arg(long, default_value = "n")]
    idx: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// JSON representation file ("-" for standard input).
    #[arg(long, value_name = "FILE")]
    rep: String,
    /// Rational function expression ("-" reads it from standard input).
    #[arg(long, value_name = "EXPR")]
    expr: String,
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    terms: usize,
}

/// Exit status for a pipeline error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoGuess => EXIT_NO_GUESS,
        Error::NoHypergeometricBasis { .. } | Error::NoFit => EXIT_NO_BASIS,
        Error::Parse { .. }
        | Error::ZeroDenominator
        | Error::NonAnalytic
        | Error::InvalidRepresentation(_) => EXIT_PARSE,
        Error::DegreeCap { .. } => EXIT_CAP,
        _ => EXIT_FAILURE,
    }
}

/// A failure with its exit status and message.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

fn input_failure(message: String) -> Failure {
    Failure {
        code: EXIT_PARSE,
        message,
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    stdin_used: bool,
}

impl Io<'_> {
    fn read_source(&mut self, path: &str) -> Result<String, Failure> {
        let bytes = if path == "-" {
            if self.stdin_used {
                return Err(input_failure("standard input can only be read once".into()));
            }
            self.stdin_used = true;
            let mut buf = Vec::new();
            self.stdin
                .read_to_end(&mut buf)
                .map_err(|e| input_failure(format!("cannot read standard input: {e}")))?;
            buf
        } else {
            fs::read(path).map_err(|e| input_failure(format!("cannot read '{path}': {e}")))?
        };
        String::from_utf8(bytes).map_err(|_| input_failure(format!("'{path}' is not valid UTF-8")))
    }

    fn out(&mut self, text: &str) -> Result<(), Failure> {
        self.stdout.write_all(text.as_bytes()).map_err(|e| Failure {
            code: EXIT_FAILURE,
            message: format!("cannot write output: {e}"),
        })
    }

    fn note(&mut self, text: &str) {
        let _ = writeln!(self.stderr, "{text}");
    }
}

/// Run the command line `args` (program name first) and return the exit code.
pub fn run(
    args: &[String],
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_PARSE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let mut io = Io {
        stdin,
        stdout,
        stderr,
        stdin_used: false,
    };
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| match cli.command {
        Command::Guess(a) => cmd_guess(&a, &mut io),
        Command::Fps(a) => cmd_fps(&a, &mut io),
        Command::Verify(a) => cmd_verify(&a, &mut io),
    }));
    let outcome = result.unwrap_or_else(|_| {
        Err(Failure {
            code: EXIT_FAILURE,
            message: "internal error".into(),
        })
    });
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn read_sequence(seq: &SequenceArgs, io: &mut Io) -> Result<SequencePrefix, Failure> {
    if let Some(path) = &seq.bfile {
        let text = io.read_source(path)?;
        let (prefix, first) = parse_bfile(&text)?;
        if first != 0 {
            io.note(&format!(
                "note: b-file starts at index {first}; terms are re-based to start at 0"
            ));
        }
        return Ok(prefix);
    }
    let text = match &seq.file {
        Some(path) => io.read_source(path)?,
        None if seq.terms.is_empty() => io.read_source("-")?,
        None => seq.terms.join(" "),
    };
    Ok(parse_list(&text)?)
}

fn guess_options(budget: &GuessBudget, n: usize) -> GuessOptions {
    let default = GuessOptions::for_length(n);
    GuessOptions {
        max_num_degree: budget.max_num.unwrap_or(default.max_num_degree),
        max_den_degree: budget.max_den.unwrap_or(default.max_den_degree),
        guard_terms: budget.guard,
    }
}

fn check_var(name: &str) -> Result<(), Failure> {
    if is_identifier(name) {
        Ok(())
    } else {
        Err(input_failure(format!("'{name}' is not an identifier")))
    }
}

fn cmd_guess(a: &GuessArgs, io: &mut Io) -> Result<i32, Failure> {
    check_var(&a.var)?;
    let prefix = read_sequence(&a.seq, io)?;
    let f = guess_rational(&prefix, &guess_options(&a.budget, prefix.len()))?;
    io.out(&format!("{}\n", f.to_expression(&a.var)))?;
    Ok(EXIT_OK)
}

fn read_expression(expr: &str, io: &mut Io) -> Result<RatFun, Failure> {
    let text = if expr == "-" {
        io.read_source("-")?
    } else {
        expr.to_string()
    };
    Ok(parse_expression(&text)?)
}

fn cmd_fps(a: &FpsArgs, io: &mut Io) -> Result<i32, Failure> {
    let format: Format = a.format.parse()?;
    let opts = RenderOptions::new(format, &a.var, &a.idx)?;
    if a.terms == 0 {
        return Err(input_failure("--terms must be positive".into()));
    }
    if a.mmax == Some(0) {
        return Err(input_failure("--mmax must be positive".into()));
    }
    let f = match &a.expr {
        Some(e) => read_expression(e, io)?,
        None => {
            let prefix = read_sequence(&a.seq, io)?;
            guess_rational(&prefix, &guess_options(&a.budget, prefix.len()))?
        }
    };
    let fps_opts = FpsOptions {
        m_max: a.mmax,
        depth: a.terms,
        degree_cap: a.degree_cap,
        ..FpsOptions::default()
    };
    let rep = build_representation_with(&f, &fps_opts)?;
    let report = verify(&rep, &f, a.terms)?;
    if let Some(k) = report.first_mismatch {
        return Err(Failure {
            code: EXIT_FAILURE,
            message: format!(
                "internal error: representation disagrees with the series at index {k}"
            ),
        });
    }
    let mut text = render(&rep, &opts);
    if !text.ends_with('\n') {
        text.push('\n');
    }
    io.out(&text)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, io: &mut Io) -> Result<i32, Failure> {
    if a.rep == "-" && a.expr == "-" {
        return Err(input_failure(
            "--rep and --expr cannot both read standard input".into(),
        ));
    }
    let rep = from_json(&io.read_source(&a.rep)?)?;
    let f = read_expression(&a.expr, io)?;
    let report = verify(&rep, &f, a.terms)?;
    match report.first_mismatch {
        None => {
            io.out(&format!("ok: {} terms match\n", report.checked_terms))?;
            Ok(EXIT_OK)
        }
        Some(k) => {
            io.out(&format!(
                "mismatch: first differing coefficient at index {k} ({} terms checked)\n",
                report.checked_terms
            ))?;
            Ok(EXIT_FAILURE)
        }
    }
}
