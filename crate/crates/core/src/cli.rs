//! Command-line front end. `run_cli` does all the work so it can be driven
//! from tests; the binary only forwards process arguments and streams.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::braidrep::{self, rho};
use crate::diagram::{braid_to_diagram, close_braid, parse_braid_word, writhe, Diagram};
use crate::evaluator::{evaluate_closed, evaluate_tangle, EvalContext};
use crate::identities;
use crate::laurent::LaurentPoly;
use crate::spintensor::{crossing_matrix, spin_value, CrossingKind, PolyMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "singlink",
    version,
    about = "State-model polynomials of classical and singular links"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a braid word or a diagram file.
    Eval(EvalArgs),
    /// Print a crossing matrix.
    Matrices(MatricesArgs),
    /// Run identity checks and report PASS/FAIL per identity.
    Verify(VerifyArgs),
    /// Print the representation matrix of a braid word.
    Rep(RepArgs),
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["braid", "diagram"])))]
pub struct EvalArgs {
    #[arg(long)]
    pub n: usize,
    /// Braid word such as "s1 S2 t1".
    #[arg(long, requires = "strands")]
    pub braid: Option<String>,
    #[arg(long)]
    pub strands: Option<usize>,
    /// Diagram file in the JSON slice format.
    #[arg(long)]
    pub diagram: Option<PathBuf>,
    /// Close the braid before evaluating.
    #[arg(long, requires = "braid")]
    pub closure: bool,
    /// Multiply by q^(-writhe) and print the writhe.
    #[arg(long)]
    pub normalize: bool,
    /// Weight of alternating vertices, e.g. "q + q^-1".
    #[arg(long)]
    pub gamma: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "R")]
    R,
    #[value(name = "Rbar")]
    Rbar,
    #[value(name = "Q")]
    Q,
}

#[derive(Debug, Args)]
pub struct MatricesArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub which: Which,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Ybe,
    Unitarity,
    Singular,
    Curl,
    Moy,
    Gamma,
    Monoid,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Strand count for the monoid relations.
    #[arg(long, default_value_t = 3)]
    pub strands: usize,
    #[arg(long)]
    pub gamma: Option<String>,
}

#[derive(Debug, Args)]
pub struct RepArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub braid: String,
    #[arg(long)]
    pub strands: usize,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run_cli<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_COMPUTE
        }
    }
}

enum Failure {
    Usage(String),
    Compute(String),
}

fn compute<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Compute(e.to_string())
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn context(n: usize, gamma: Option<&str>) -> Result<EvalContext, Failure> {
    let ctx = EvalContext::new(n).map_err(usage)?;
    Ok(match gamma {
        Some(g) => ctx.with_gamma(g.parse::<LaurentPoly>().map_err(|e| usage(format!("--gamma: {e}")))?),
        None => ctx,
    })
}

fn spins_text(index: usize, width: usize, n: usize) -> String {
    let mut digits = vec![0; width];
    let mut x = index;
    for d in digits.iter_mut().rev() {
        *d = x % n;
        x /= n;
    }
    let parts: Vec<String> = digits.iter().map(|&i| spin_value(n, i).to_string()).collect();
    format!("[{}]", parts.join(" "))
}

fn tensor_text(m: &PolyMatrix, top: usize, bottom: usize, n: usize) -> String {
    let mut s = format!("tensor {}x{}\n", m.rows(), m.cols());
    for (r, c, p) in m.iter() {
        let _ = writeln!(s, "{} -> {}: {p}", spins_text(r, top, n), spins_text(c, bottom, n));
    }
    s
}

fn dispatch(cmd: Command) -> Result<(String, i32), Failure> {
    match cmd {
        Command::Eval(a) => eval(a).map(|s| (s, EXIT_OK)),
        Command::Matrices(a) => {
            let kind = match a.which {
                Which::R => CrossingKind::Pos,
                Which::Rbar => CrossingKind::Neg,
                Which::Q => CrossingKind::Sing,
            };
            let m = crossing_matrix(kind, a.n).map_err(usage)?;
            Ok((format!("{}\n", m.to_bracketed()), EXIT_OK))
        }
        Command::Verify(a) => verify(a),
        Command::Rep(a) => {
            let w = parse_braid_word(&a.braid, a.strands).map_err(usage)?;
            let img = rho(&w, a.n).map_err(usage)?;
            let mut s = format!("dimensions: {}x{}\n", img.matrix.rows(), img.matrix.cols());
            for (r, c, p) in img.matrix.iter() {
                let _ = writeln!(
                    s,
                    "{} -> {}: {p}",
                    spins_text(r, a.strands, a.n),
                    spins_text(c, a.strands, a.n)
                );
            }
            Ok((s, EXIT_OK))
        }
    }
}

fn eval(a: EvalArgs) -> Result<String, Failure> {
    let ctx = context(a.n, a.gamma.as_deref())?;
    let diagram: Diagram = match (&a.braid, &a.diagram) {
        (Some(b), None) => {
            let w = parse_braid_word(b, a.strands.expect("enforced by clap")).map_err(usage)?;
            if a.closure {
                close_braid(&w)
            } else {
                braid_to_diagram(&w)
            }
        }
        (None, Some(path)) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| compute(format!("cannot read {}: {e}", path.display())))?;
            Diagram::from_json(&text).map_err(compute)?
        }
        _ => unreachable!("enforced by clap"),
    };
    if diagram.is_closed() {
        let v = evaluate_closed(&diagram, &ctx).map_err(compute)?;
        if a.normalize {
            let w = writhe(&diagram);
            Ok(format!("writhe: {w}\n{}\n", v * LaurentPoly::q_pow(-w)))
        } else {
            Ok(format!("{v}\n"))
        }
    } else {
        if a.normalize {
            return Err(usage("--normalize needs a closed diagram"));
        }
        let m = evaluate_tangle(&diagram, &ctx).map_err(compute)?;
        Ok(tensor_text(&m, diagram.top().len(), diagram.bottom().len(), a.n))
    }
}

fn verify(a: VerifyArgs) -> Result<(String, i32), Failure> {
    let gamma = match &a.gamma {
        Some(g) => g.parse::<LaurentPoly>().map_err(|e| usage(format!("--gamma: {e}")))?,
        None => LaurentPoly::one(),
    };
    if a.n < 2 {
        return Err(usage(format!("--n must be at least 2, got {}", a.n)));
    }
    if a.strands < 2 && matches!(a.suite, Suite::Monoid | Suite::All) {
        return Err(usage("--strands must be at least 2"));
    }
    let n = a.n;
    let report = match a.suite {
        Suite::Ybe => identities::check_ybe(n),
        Suite::Unitarity => identities::check_unitarity(n),
        Suite::Singular => identities::check_singular_relations(n),
        Suite::Curl => identities::check_curl_vertex(n),
        Suite::Moy => identities::check_moy(n),
        Suite::Gamma => identities::check_gamma_extension(n, &gamma),
        Suite::Monoid => braidrep::check_monoid_relations(n, a.strands).map_err(Into::into),
        Suite::All => identities::check_all(n, a.strands, &gamma),
    }
    .map_err(compute)?;
    let code = if report.all_passed() { EXIT_OK } else { EXIT_COMPUTE };
    Ok((report.to_string(), code))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("singlink").chain(args.iter().copied());
        let code = run_cli(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn matrices_q2() {
        let (code, out, _) = run(&["matrices", "--n", "2", "--which", "Q"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "[[q^-1 + q, 0, 0, 0],\n [0, q, 1, 0],\n [0, 1, q^-1, 0],\n [0, 0, 0, q^-1 + q]]\n"
        );
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(&["eval", "--n", "2"]).0, 2);
        assert_eq!(run(&["eval", "--n", "2", "--braid", "s1"]).0, 2);
        assert_eq!(run(&["eval", "--n", "2", "--braid", "s3", "--strands", "2"]).0, 2);
        assert_eq!(run(&["eval", "--n", "1", "--braid", "s1", "--strands", "2"]).0, 2);
        assert_eq!(run(&["matrices", "--n", "2", "--which", "X"]).0, 2);
        assert_eq!(run(&["bogus"]).0, 2);
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }

    #[test]
    fn open_tangle_entries() {
        let (code, out, _) = run(&["eval", "--n", "2", "--braid", "s1", "--strands", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("tensor 4x4\n"));
        assert!(out.contains("[-1 1] -> [-1 1]: -q^-1 + q\n"));
        assert!(out.contains("[1 -1] -> [-1 1]: 1\n"));
    }

    #[test]
    fn normalize_prints_writhe() {
        let (code, out, _) = run(&[
            "eval",
            "--n",
            "2",
            "--braid",
            "s1 S2",
            "--strands",
            "3",
            "--closure",
            "--normalize",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "writhe: 0\nq^-1 + q\n");
    }

    #[test]
    fn verify_exit_codes() {
        let (code, out, _) = run(&["verify", "--n", "2", "--suite", "ybe"]);
        assert_eq!(code, 0);
        assert!(out.contains("PASS ybe R\n"));
        assert_eq!(run(&["verify", "--n", "2", "--suite", "gamma", "--gamma", "q^"]).0, 2);
    }

    #[test]
    fn rep_prints_dimensions() {
        let (code, out, _) = run(&["rep", "--n", "2", "--braid", "s1 S1", "--strands", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some("dimensions: 4x4"));
        assert_eq!(out.lines().count(), 5);
    }
}
