//! Command-line front end. [`run`] never panics on malformed input; it
//! returns the rendered output and an exit code: 0 when the command
//! succeeds or the checked property holds, 1 when the property fails
//! (with a witness line), 2 on input errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::closure::{invariant_closure, minimal_kernel};
use crate::congruence::{build_quotient, check_congruence, class_label, generate_congruence};
use crate::format::{self, Document, FormatError};
use crate::hom::{abelian_congruence, factorize, kernel};
use crate::oracle::{bfs_word_equivalence, check_characterization, check_inclusion_chain};
use crate::relation::transitive_closure;
use crate::word::{Alphabet, Universe, Word};

#[derive(Debug, Parser)]
#[command(
    name = "freecong",
    version,
    about = "Congruences on bounded free-semigroup universes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Alphabet symbols, comma or space separated; overrides file headers.
    #[arg(long, global = true)]
    pub alphabet: Option<String>,
    /// Universe bound L; overrides file headers.
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    /// Write output here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CloseMode {
    /// Transitive closure (emits a partition).
    #[arg(long)]
    pub tc: bool,
    /// Invariant closure (emits a relation).
    #[arg(long)]
    pub ic: bool,
    /// Symmetric closure (emits a relation).
    #[arg(long)]
    pub sym: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Close a relation.
    Close {
        #[command(flatten)]
        mode: CloseMode,
        file: PathBuf,
    },
    /// Minimal kernel of a partition, including single-letter diagonal pairs.
    Min { file: PathBuf },
    /// Check the one-letter congruence condition within the bound.
    IsCongruence { file: PathBuf },
    /// Smallest bounded congruence containing the seed pairs.
    Generate { file: PathBuf },
    /// Quotient semigroup of a congruence.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Kernel of the homomorphism given by a table and a letter map.
    Kernel {
        table: PathBuf,
        map: PathBuf,
        #[arg(long)]
        factorize: bool,
    },
    /// Permutation congruence on the universe.
    Abelianize,
    /// Check the inclusion chain min ⊆ tc(min) ⊆ ≈ ⊆ ic(min).
    VerifyLemma { file: PathBuf },
    /// Check ≈ = ic(min) and L-consistency.
    VerifyTheorem { file: PathBuf },
    /// Rewriting search for u ~ v under the seed pairs.
    WordEq {
        file: PathBuf,
        u: String,
        v: String,
        /// Longest intermediate word; defaults to the bound.
        #[arg(long)]
        cap: Option<usize>,
    },
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct InputError(String);

impl InputError {
    fn in_file(path: &Path, e: FormatError) -> Self {
        match e.line {
            Some(l) => InputError(format!("{}:{l}: {}", path.display(), e.message)),
            None => InputError(format!("{}: {}", path.display(), e.message)),
        }
    }
}

struct Context {
    alphabet: Option<Vec<String>>,
    bound: Option<usize>,
    warnings: Vec<String>,
}

impl Context {
    fn read(&self, path: &Path) -> Result<String, InputError> {
        std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }

    fn document(
        &mut self,
        path: &Path,
    ) -> Result<(Document, std::sync::Arc<Universe>), InputError> {
        let text = self.read(path)?;
        let doc = format::parse_document(&text).map_err(|e| InputError::in_file(path, e))?;
        let resolved = doc
            .resolve(self.alphabet.as_deref(), self.bound)
            .map_err(|e| InputError::in_file(path, e))?;
        self.warnings.extend(resolved.warnings);
        Ok((doc, resolved.universe))
    }

    fn relation(&mut self, path: &Path) -> Result<crate::relation::PairRelation, InputError> {
        let (doc, universe) = self.document(path)?;
        doc.relation(&universe)
            .map_err(|e| InputError::in_file(path, e))
    }

    fn partition(&mut self, path: &Path) -> Result<crate::relation::Partition, InputError> {
        let (doc, universe) = self.document(path)?;
        doc.partition(&universe)
            .map_err(|e| InputError::in_file(path, e))
    }

    fn universe_from_flags(&self) -> Result<std::sync::Arc<Universe>, InputError> {
        let symbols = self
            .alphabet
            .clone()
            .ok_or_else(|| InputError("--alphabet is required".into()))?;
        let bound = self
            .bound
            .ok_or_else(|| InputError("--bound is required".into()))?;
        let alphabet =
            Alphabet::new(symbols).map_err(|e| InputError(format!("--alphabet: {e}")))?;
        Universe::new(std::sync::Arc::new(alphabet), bound)
            .map_err(|e| InputError(format!("--bound: {e}")))
    }
}

fn split_symbols(text: &str) -> Vec<String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut ctx = Context {
        alphabet: cli.alphabet.as_deref().map(split_symbols),
        bound: cli.bound,
        warnings: Vec::new(),
    };
    let result = dispatch(&cli.command, &mut ctx);
    let mut stderr = String::new();
    for w in &ctx.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let (code, stdout) = match result {
        Ok(pair) => pair,
        Err(InputError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr,
            };
        }
    };
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &stdout) {
            let _ = writeln!(stderr, "error: {}: {e}", path.display());
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr,
            };
        }
        return Outcome {
            code,
            stdout: String::new(),
            stderr,
        };
    }
    Outcome {
        code,
        stdout,
        stderr,
    }
}

fn dispatch(command: &Command, ctx: &mut Context) -> Result<(i32, String), InputError> {
    match command {
        Command::Close { mode, file } => {
            let r = ctx.relation(file)?;
            let out = if mode.tc {
                format::emit_partition(&transitive_closure(&r))
            } else if mode.ic {
                format::emit_relation(&invariant_closure(&r))
            } else {
                // storage is already symmetric
                format::emit_relation(&r)
            };
            Ok((0, out))
        }
        Command::Min { file } => {
            let p = ctx.partition(file)?;
            Ok((0, format::emit_relation(&minimal_kernel(&p))))
        }
        Command::IsCongruence { file } => {
            let p = ctx.partition(file)?;
            let verdict = check_congruence(&p);
            let mut out = format!("bound {}\n", verdict.bound);
            match verdict.counterexample {
                None => {
                    out.push_str("PASS\n");
                    Ok((0, out))
                }
                Some(v) => {
                    let _ = writeln!(out, "FAIL {}", v.render(p.universe()));
                    Ok((1, out))
                }
            }
        }
        Command::Generate { file } => {
            let seed = ctx.relation(file)?;
            Ok((0, format::emit_partition(&generate_congruence(&seed))))
        }
        Command::Quotient { file, dot } => {
            let p = ctx.partition(file)?;
            if let Some(v) = check_congruence(&p).counterexample {
                return Ok((
                    1,
                    format!(
                        "bound {}\nFAIL {}\n",
                        p.universe().bound(),
                        v.render(p.universe())
                    ),
                ));
            }
            let q = build_quotient(&p).map_err(|e| InputError(e.to_string()))?;
            Ok((
                0,
                if *dot {
                    q.render_dot()
                } else {
                    q.render_table()
                },
            ))
        }
        Command::Kernel {
            table,
            map,
            factorize: with_g,
        } => {
            let universe = ctx.universe_from_flags()?;
            let t = format::parse_semigroup(&ctx.read(table)?)
                .map_err(|e| InputError::in_file(table, e))?;
            let j = format::parse_letter_map(&ctx.read(map)?, universe.alphabet(), &t)
                .map_err(|e| InputError::in_file(map, e))?;
            if !with_g {
                let p = kernel(&j, &t, &universe).map_err(|e| InputError(e.to_string()))?;
                return Ok((0, format::emit_partition(&p)));
            }
            let f = factorize(&j, &t, &universe).map_err(|e| InputError(e.to_string()))?;
            let mut out = format::emit_partition(f.quotient.partition());
            for (class, &x) in f.g.iter().enumerate() {
                let _ = writeln!(out, "# g {} {}", class_label(class), t.element(x));
            }
            let _ = writeln!(out, "# monomorphism {}", f.monomorphism);
            Ok((if f.monomorphism { 0 } else { 1 }, out))
        }
        Command::Abelianize => {
            let universe = ctx.universe_from_flags()?;
            Ok((0, format::emit_partition(&abelian_congruence(&universe))))
        }
        Command::VerifyLemma { file } => {
            let p = ctx.partition(file)?;
            let report = check_inclusion_chain(&p);
            Ok((
                if report.holds() { 0 } else { 1 },
                report.render(p.universe()),
            ))
        }
        Command::VerifyTheorem { file } => {
            let p = ctx.partition(file)?;
            let report = check_characterization(&p);
            Ok((
                if report.passed() { 0 } else { 1 },
                report.render(p.universe()),
            ))
        }
        Command::WordEq { file, u, v, cap } => {
            let seed = ctx.relation(file)?;
            let universe = seed.universe().clone();
            let word = |text: &str| {
                Word::parse(text, universe.alphabet())
                    .map_err(|e| InputError(format!("`{text}`: {e}")))
            };
            let (u, v) = (word(u)?, word(v)?);
            let cap = cap.unwrap_or(universe.bound());
            let result =
                bfs_word_equivalence(&seed, &u, &v, cap).map_err(|e| InputError(e.to_string()))?;
            match result.steps() {
                Some(steps) => {
                    let mut out = format!("TRUE steps {steps}\n");
                    for w in &result.trace {
                        let _ = writeln!(out, "{w}");
                    }
                    Ok((0, out))
                }
                None => Ok((1, format!("FALSE cap {cap}\n"))),
            }
        }
    }
}
