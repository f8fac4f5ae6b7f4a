//! The `nel` command line driver.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::compile::compile_theory;
use crate::empty::{certify_eq, certify_judgement, decide_judgement, empty_theory};
use crate::env::Flavour;
use crate::kernel::check_as;
use crate::kernel::translate::translate_derivation;
use crate::search::{bounded_search, SearchBudget};
use crate::syntax::{
    parse_file, parse_judgement, print_file, DerivationItem, Pos, Script, SourceFile,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "nel",
    version,
    about = "Kernel and tools for nominal equational logic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kernel-check every derivation in a file.
    Check {
        file: PathBuf,
        /// Only check derivations in this theory.
        #[arg(long)]
        theory: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compile freshness axioms into equations and translate derivations.
    Compile {
        file: PathBuf,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide a judgement in the theory without axioms.
    Decide {
        judgement: String,
        /// File whose signature the judgement is read against.
        #[arg(long)]
        sig: PathBuf,
        /// Also print a derivation of the judgement.
        #[arg(long)]
        certify: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Bounded backward proof search.
    Search {
        judgement: String,
        /// File containing the theory.
        #[arg(long)]
        theory: PathBuf,
        /// Theory name; the first theory in the file when absent.
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Fresh atoms added to those of the goal and axioms.
        #[arg(long, default_value_t = 1)]
        atoms: usize,
        /// Longest product of transpositions tried as a permutation.
        #[arg(long, default_value_t = 1)]
        perm_len: usize,
    },
}

/// A diagnostic that ends the command with exit code 2.
struct Usage(String);

fn load(path: &Path) -> Result<SourceFile, Usage> {
    let src =
        std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    parse_file(&src).map_err(|e| Usage(format!("{}:{e}", path.display())))
}

#[derive(Serialize)]
struct ItemReport {
    name: String,
    theory: String,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    col: Option<usize>,
}

#[derive(Serialize)]
struct CheckReport {
    ok: bool,
    derivations: Vec<ItemReport>,
}

#[derive(Serialize)]
struct DecideReport {
    judgement: String,
    verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<String>,
}

/// Runs the driver on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Check {
            file,
            theory,
            format,
        } => check(&file, theory.as_deref(), format, out),
        Command::Compile { file, output } => compile(&file, output.as_deref(), out, err),
        Command::Decide {
            judgement,
            sig,
            certify,
            format,
        } => decide(&judgement, &sig, certify, format, out),
        Command::Search {
            judgement,
            theory,
            name,
            depth,
            atoms,
            perm_len,
        } => search(
            &judgement,
            &theory,
            name.as_deref(),
            depth,
            atoms,
            perm_len,
            out,
        ),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn io(e: std::io::Error) -> Usage {
    Usage(e.to_string())
}

fn check(
    path: &Path,
    theory: Option<&str>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Usage> {
    let file = load(path)?;
    if let Some(name) = theory {
        if file.theory(name).is_none() {
            return Err(Usage(format!(
                "{}: unknown theory `{name}`",
                path.display()
            )));
        }
    }
    let mut reports = Vec::new();
    for item in &file.derivations {
        if theory.is_some_and(|t| t != item.theory) {
            continue;
        }
        let result = file.check_item(item);
        let pos = result.as_ref().err().map(|e| error_pos(item, e));
        reports.push(ItemReport {
            name: item.name.clone(),
            theory: item.theory.clone(),
            ok: result.is_ok(),
            error: result.err().map(|e| e.to_string()),
            line: pos.map(|p| p.line),
            col: pos.map(|p| p.col),
        });
    }
    let ok = reports.iter().all(|r| r.ok);
    match format {
        Format::Text => {
            for r in &reports {
                match &r.error {
                    None => writeln!(out, "ok   {} in {}", r.name, r.theory),
                    Some(e) => writeln!(out, "FAIL {} in {}: {e}", r.name, r.theory),
                }
                .map_err(io)?;
            }
            let passed = reports.iter().filter(|r| r.ok).count();
            writeln!(out, "{passed}/{} derivations check", reports.len()).map_err(io)?;
        }
        Format::Json => {
            let report = CheckReport {
                ok,
                derivations: reports,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("plain data")
            )
            .map_err(io)?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAIL })
}

fn error_pos(item: &DerivationItem, e: &crate::syntax::ItemError) -> Pos {
    use crate::syntax::ItemError;
    match e {
        ItemError::Elab(e) => e.pos,
        ItemError::UnknownTheory(pos, _) | ItemError::Goal { pos, .. } => *pos,
        ItemError::Check(_) => item.pos,
    }
}

fn compile(
    path: &Path,
    output: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Usage> {
    let file = load(path)?;
    let mut result = SourceFile::new(file.sig.clone());
    result.theories = file.theories.iter().map(compile_theory).collect();
    result.judgements = file.judgements.clone();
    let mut code = EXIT_OK;
    for item in &file.derivations {
        let d = match file.check_item(item) {
            Ok(d) => d,
            Err(e) => {
                return Err(Usage(format!(
                    "{}: derivation `{}`: {e}",
                    path.display(),
                    item.name
                )));
            }
        };
        let source = file
            .theory(&item.theory)
            .expect("checked items name a theory");
        let compiled = result
            .theory(&item.theory)
            .expect("every theory is compiled")
            .clone();
        if source.flavour == Flavour::Neol {
            result.derivations.push(item.clone());
            continue;
        }
        match translate_derivation(source, &compiled, &d) {
            Ok((d1, d2)) => {
                for (suffix, d) in [("eq", d1), ("swap", d2)] {
                    result.derivations.push(DerivationItem {
                        name: format!("{}_{suffix}", item.name),
                        theory: item.theory.clone(),
                        goal: d.conclusion().clone(),
                        script: Script::from_derivation(&d),
                        pos: Pos::default(),
                    });
                }
            }
            Err(e) => {
                code = EXIT_FAIL;
                writeln!(err, "error: translating `{}`: {e}", item.name).map_err(io)?;
            }
        }
    }
    let text = print_file(&result);
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Usage(format!("{}: {e}", p.display())))?,
        None => out.write_all(text.as_bytes()).map_err(io)?,
    }
    Ok(code)
}

fn decide(
    src: &str,
    sig_path: &Path,
    certify: bool,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Usage> {
    let file = load(sig_path)?;
    let j = parse_judgement(&file.sig, src).map_err(|e| Usage(format!("<judgement>:{e}")))?;
    let verdict = decide_judgement(&j);
    let certificate = if certify && verdict {
        // Equations get an equation-only certificate.
        let (th, d) = if j.fresh().is_empty() {
            let th = empty_theory(file.sig.clone(), Flavour::Neol);
            let d = certify_eq(&th, j.env(), j.lhs(), j.rhs(), j.sort());
            (th, d)
        } else {
            let th = empty_theory(file.sig.clone(), Flavour::Nel);
            let d = certify_judgement(&th, &j);
            (th, d)
        };
        let d = d.map_err(|e| Usage(format!("certificate: {e}")))?;
        check_as(&th, th.flavour, &d).map_err(|e| Usage(format!("certificate rejected: {e}")))?;
        Some(crate::syntax::print_script(&Script::from_derivation(&d)))
    } else {
        None
    };
    match format {
        Format::Text => {
            writeln!(out, "{verdict}").map_err(io)?;
            if let Some(c) = &certificate {
                writeln!(out, "{c}").map_err(io)?;
            }
        }
        Format::Json => {
            let report = DecideReport {
                judgement: j.to_string(),
                verdict,
                certificate,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("plain data")
            )
            .map_err(io)?;
        }
    }
    Ok(if verdict { EXIT_OK } else { EXIT_FAIL })
}

fn search(
    src: &str,
    path: &Path,
    name: Option<&str>,
    depth: usize,
    atoms: usize,
    perm_len: usize,
    out: &mut dyn Write,
) -> Result<i32, Usage> {
    let file = load(path)?;
    let theory = match name {
        Some(n) => file.theory(n),
        None => file.theories.first(),
    }
    .ok_or_else(|| {
        Usage(format!(
            "{}: no theory {}",
            path.display(),
            name.unwrap_or("")
        ))
    })?;
    let goal = parse_judgement(&file.sig, src).map_err(|e| Usage(format!("<judgement>:{e}")))?;
    let budget = SearchBudget::for_goal(theory, &goal, depth, atoms, perm_len);
    match bounded_search(theory, &goal, &budget) {
        Some(d) => {
            writeln!(
                out,
                "{}",
                crate::syntax::print_script(&Script::from_derivation(&d))
            )
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        None => {
            writeln!(out, "not found").map_err(io)?;
            Ok(EXIT_FAIL)
        }
    }
}
