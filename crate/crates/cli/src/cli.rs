//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;

use beliefkit_core::blowup::{cnf_satisfiable, gen_blowup};
use beliefkit_core::change::{model_disjunction_own_language, tautology_over, UpdateKernel};
use beliefkit_core::oracle::{forget_subst, revise_dalal, revise_satoh, update_pma, update_ss_models};
use beliefkit_core::postulate::{check_in, curated_counterexamples, Operator, PostulateId};
use beliefkit_core::semantics::{dnf_models, entails_in, enumerate_models, prime_implicant_disjunction};
use beliefkit_core::syntactic::{eliminant, update_raw, update_syntactic};
use beliefkit_core::{Atom, AtomSet, DnfFormula, Formula, ModelSet, Vocabulary};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::ThreadPool;
use serde_json::json;

use crate::bench;
use crate::config::vocab_cap;
use crate::error::{CliError, CliResult};
use crate::io::{dnf_json, models_json, models_text, read_formula, split_names, verdict_json};
use crate::parallel;

#[derive(Debug, Parser)]
#[command(
    name = "beliefkit",
    version,
    about = "Propositional belief update, erasure, forgetting and revision"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Canonical formula text.
    Formula,
    /// Dnf as JSON: an array of terms, each an array of literal strings.
    Dnf,
    /// One model per line.
    Models,
    /// Model set as JSON.
    ModelsJson,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "formula")]
    format: Format,
    /// Extra atoms to include in the vocabulary (comma separated).
    #[arg(long)]
    vocab: Option<String>,
    /// Worker threads for per-model work (0 = automatic).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UpdateEngine {
    Compositional,
    Guarded,
    Pi,
    Ss,
    Triv,
    Pma,
    SsModels,
    Syntactic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EraseEngine {
    Harper,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ForgetEngine {
    Update,
    Subst,
    Ss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReviseEngine {
    Compositional,
    Satoh,
    Dalal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchFamily {
    Dnf,
    BoundedMu,
    Blowup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchEngine {
    Syntactic,
    Compositional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenFormat {
    Formula,
    Json,
}

const CLAUSE_CONVENTION: &str = "Clauses of the blowup family: for n >= 3, all sets of 3 literals over distinct \
atoms of x1..xn; for n < 3, multisets of 3 literals read as sets with tautologies dropped \
(n=1 gives 2 clauses, n=2 gives 8).";

#[derive(Debug, Subcommand)]
enum Command {
    /// Update psi by mu.
    Update {
        #[arg(long)]
        psi: String,
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value = "compositional")]
        engine: UpdateEngine,
        /// Also run the semantic and symbolic engines and exit 3 if they disagree.
        #[arg(long)]
        verify: bool,
        /// Keep the symbolic engine's output order and duplicate terms.
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Erase mu from psi.
    Erase {
        #[arg(long)]
        psi: String,
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value = "harper")]
        engine: EraseEngine,
        #[command(flatten)]
        common: Common,
    },
    /// Forget atoms from psi.
    Forget {
        #[arg(long)]
        psi: String,
        /// Atoms to forget (comma separated).
        #[arg(long)]
        atoms: String,
        #[arg(long, value_enum, default_value = "update")]
        engine: ForgetEngine,
        #[command(flatten)]
        common: Common,
    },
    /// Revise psi by mu.
    Revise {
        #[arg(long)]
        psi: String,
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value = "compositional")]
        engine: ReviseEngine,
        #[command(flatten)]
        common: Common,
    },
    /// Remove every literal over the given atoms from the dnf of psi.
    Eliminant {
        #[arg(long)]
        psi: String,
        #[arg(long)]
        atoms: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check an update postulate on one instance or by random search.
    Check {
        /// U1..U8, LEVI, HARPER or DISJ.
        #[arg(long, required_unless_present = "curated")]
        postulate: Option<PostulateId>,
        /// compositional, guarded, pi, ss, triv, pma or ss-models.
        #[arg(long, default_value = "compositional")]
        operator: Operator,
        /// Instance formulas in postulate order; without them a random search runs.
        #[arg(long = "instance")]
        instance: Vec<String>,
        /// Check the built-in counterexamples instead.
        #[arg(long, conflicts_with_all = ["postulate", "instance"])]
        curated: bool,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Atoms of the search vocabulary (comma separated).
        #[arg(long, default_value = "a,b,c")]
        atoms: String,
        #[arg(long, default_value_t = beliefkit_core::postulate::DEFAULT_SEARCH_DEPTH)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: CheckFormat,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Measure input and output sizes of the update as CSV.
    #[command(after_help = CLAUSE_CONVENTION)]
    Bench {
        #[arg(long, value_enum, default_value = "dnf")]
        family: BenchFamily,
        #[arg(long, value_enum, default_value = "syntactic")]
        engine: BenchEngine,
        #[arg(long, default_value_t = 1)]
        from: usize,
        #[arg(long, default_value_t = 3)]
        to: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        raw: bool,
        /// Write 0 in the wall time column.
        #[arg(long)]
        no_timing: bool,
    },
    /// Print a member of the blowup family.
    #[command(after_help = CLAUSE_CONVENTION)]
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "formula")]
        format: GenFormat,
        /// Also print the interpretation for a random clause set drawn with this seed.
        #[arg(long)]
        beta_seed: Option<u64>,
        /// Number of clauses drawn for --beta-seed.
        #[arg(long, default_value_t = 4)]
        beta_size: usize,
    },
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status. Errors go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn vocabulary(formulas: &[&Formula], extra: &Option<String>, more: &AtomSet) -> CliResult<Vocabulary> {
    let cap = vocab_cap()?;
    let mut atoms: AtomSet = formulas.iter().flat_map(|f| f.atoms()).collect();
    atoms.extend(more.iter().cloned());
    if let Some(names) = extra {
        atoms.extend(split_names(names).into_iter().map(Atom::new));
    }
    Ok(Vocabulary::with_cap(atoms, cap)?)
}

fn atom_list(text: &str) -> CliResult<AtomSet> {
    let names = split_names(text);
    for n in &names {
        if !beliefkit_core::formula::is_identifier(n) {
            return Err(CliError::Usage(format!("`{n}` is not an atom name")));
        }
    }
    Ok(names.into_iter().map(Atom::new).collect())
}

/// Writes a model-set result in the requested format.
fn emit_models(out: &mut dyn Write, models: &ModelSet, format: Format) -> CliResult<()> {
    match format {
        Format::Formula => writeln!(out, "{}", models.to_dnf().to_formula())?,
        Format::Dnf => writeln!(out, "{}", dnf_json(&models.to_dnf()))?,
        Format::Models => write!(out, "{}", models_text(models))?,
        Format::ModelsJson => writeln!(out, "{}", models_json(models))?,
    }
    Ok(())
}

/// Writes a symbolic result; model formats enumerate over `vocab`.
fn emit_dnf(
    out: &mut dyn Write,
    d: &DnfFormula,
    format: Format,
    vocab: impl FnOnce() -> CliResult<Vocabulary>,
) -> CliResult<()> {
    match format {
        Format::Formula => writeln!(out, "{}", d.to_formula())?,
        Format::Dnf => writeln!(out, "{}", dnf_json(d))?,
        Format::Models | Format::ModelsJson => emit_models(out, &dnf_models(d, &vocab()?)?, format)?,
    }
    Ok(())
}

fn compositional(pool: &ThreadPool, psi: &Formula, mu: &Formula, v: &Vocabulary) -> CliResult<ModelSet> {
    let kernel = UpdateKernel::update(mu, v)?;
    Ok(parallel::image_of(pool, &kernel, &enumerate_models(psi, v)?))
}

fn semantic_update(
    engine: UpdateEngine,
    pool: &ThreadPool,
    psi: &Formula,
    mu: &Formula,
    v: &Vocabulary,
) -> CliResult<ModelSet> {
    match engine {
        UpdateEngine::Compositional => compositional(pool, psi, mu, v),
        UpdateEngine::Guarded => {
            if entails_in(psi, mu, v)? {
                Ok(enumerate_models(psi, v)?)
            } else {
                compositional(pool, psi, mu, v)
            }
        }
        UpdateEngine::Pi => compositional(pool, psi, &prime_implicant_disjunction(mu, v.cap())?, v),
        UpdateEngine::Ss => compositional(pool, psi, &model_disjunction_own_language(mu, v)?, v),
        UpdateEngine::Triv => compositional(pool, psi, &enumerate_models(mu, v)?.to_dnf().to_formula(), v),
        UpdateEngine::Pma => Ok(update_pma(psi, mu, v)?),
        UpdateEngine::SsModels => Ok(update_ss_models(psi, mu, v)?),
        UpdateEngine::Syntactic => unreachable!("handled symbolically"),
    }
}

/// Fails with a mismatch error unless both engines gave the same models.
fn cross_check(semantic: &ModelSet, symbolic: &ModelSet) -> CliResult<()> {
    if semantic == symbolic {
        return Ok(());
    }
    Err(CliError::Mismatch(format!(
        "compositional gives {:?}, syntactic gives {:?}",
        semantic.lines(),
        symbolic.lines()
    )))
}

fn execute(command: Command, out: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Update {
            psi,
            mu,
            engine,
            verify,
            raw,
            common,
        } => {
            let psi = read_formula(&psi)?;
            let mu = read_formula(&mu)?;
            let pool = parallel::pool(common.threads)?;
            let vocab = || vocabulary(&[&psi, &mu], &common.vocab, &AtomSet::new());
            if verify {
                let v = vocab()?;
                cross_check(
                    &compositional(&pool, &psi, &mu, &v)?,
                    &dnf_models(&update_syntactic(&psi, &mu), &v)?,
                )?;
            }
            if engine == UpdateEngine::Syntactic {
                let d = if raw {
                    update_raw(&psi, &mu)
                } else {
                    update_syntactic(&psi, &mu)
                };
                emit_dnf(out, &d, common.format, vocab)
            } else {
                let v = vocab()?;
                emit_models(out, &semantic_update(engine, &pool, &psi, &mu, &v)?, common.format)
            }
        }
        Command::Erase {
            psi,
            mu,
            engine,
            common,
        } => {
            let psi = read_formula(&psi)?;
            let mu = read_formula(&mu)?;
            let v = vocabulary(&[&psi, &mu], &common.vocab, &AtomSet::new())?;
            let pool = parallel::pool(common.threads)?;
            let kernel = match engine {
                EraseEngine::Harper => UpdateKernel::update(&mu.clone().negate(), &v)?,
                EraseEngine::Direct => UpdateKernel::erase(&mu, &v)?,
            };
            let base = enumerate_models(&psi, &v)?;
            let models = base.union(&parallel::image_of(&pool, &kernel, &base))?;
            emit_models(out, &models, common.format)
        }
        Command::Forget {
            psi,
            atoms,
            engine,
            common,
        } => {
            let psi = read_formula(&psi)?;
            let atoms = atom_list(&atoms)?;
            let vocab = || vocabulary(&[&psi], &common.vocab, &atoms);
            let taut = tautology_over(&atoms);
            match engine {
                ForgetEngine::Update => {
                    let v = vocab()?;
                    let pool = parallel::pool(common.threads)?;
                    emit_models(out, &compositional(&pool, &psi, &taut, &v)?, common.format)
                }
                ForgetEngine::Subst => {
                    let f = forget_subst(&psi, &atoms);
                    match common.format {
                        Format::Formula | Format::Dnf => {
                            emit_dnf(out, &f.to_dnf().consistent_terms(), common.format, vocab)
                        }
                        _ => emit_models(out, &enumerate_models(&f, &vocab()?)?, common.format),
                    }
                }
                ForgetEngine::Ss => emit_models(out, &update_ss_models(&psi, &taut, &vocab()?)?, common.format),
            }
        }
        Command::Revise {
            psi,
            mu,
            engine,
            common,
        } => {
            let psi = read_formula(&psi)?;
            let mu = read_formula(&mu)?;
            let v = vocabulary(&[&psi, &mu], &common.vocab, &AtomSet::new())?;
            let models = match engine {
                ReviseEngine::Compositional => beliefkit_core::change::revise_c(&psi, &mu, &v)?.models,
                ReviseEngine::Satoh => revise_satoh(&psi, &mu, &v)?,
                ReviseEngine::Dalal => revise_dalal(&psi, &mu, &v)?,
            };
            emit_models(out, &models, common.format)
        }
        Command::Eliminant { psi, atoms, common } => {
            let psi = read_formula(&psi)?;
            let atoms = atom_list(&atoms)?;
            let d = eliminant(&atoms, &psi);
            emit_dnf(out, &d, common.format, || vocabulary(&[&psi], &common.vocab, &atoms))
        }
        Command::Check {
            postulate,
            operator,
            instance,
            curated,
            trials,
            seed,
            atoms,
            depth,
            format,
            threads,
        } => {
            let verdicts = if curated {
                curated_counterexamples()
                    .into_iter()
                    .map(|case| {
                        let v = vocabulary(&case.instance.iter().collect::<Vec<_>>(), &None, &AtomSet::new())?;
                        Ok(check_in(case.postulate, case.operator, &case.instance, &v)?)
                    })
                    .collect::<CliResult<Vec<_>>>()?
            } else {
                let postulate = postulate.expect("clap enforces --postulate");
                if instance.is_empty() {
                    let names = atom_list(&atoms)?;
                    let v = Vocabulary::with_cap(names, vocab_cap()?)?;
                    let pool = parallel::pool(threads)?;
                    vec![parallel::search_counterexample(
                        &pool, postulate, operator, &v, trials, seed, depth,
                    )?]
                } else {
                    let formulas = instance
                        .iter()
                        .map(|s| read_formula(s))
                        .collect::<CliResult<Vec<_>>>()?;
                    let v = vocabulary(&formulas.iter().collect::<Vec<_>>(), &None, &AtomSet::new())?;
                    vec![check_in(postulate, operator, &formulas, &v)?]
                }
            };
            for v in &verdicts {
                match format {
                    CheckFormat::Text => writeln!(out, "{v}")?,
                    CheckFormat::Json => writeln!(out, "{}", verdict_json(v))?,
                }
            }
            Ok(())
        }
        Command::Bench {
            family,
            engine,
            from,
            to,
            step,
            seed,
            raw,
            no_timing,
        } => {
            let family = match family {
                BenchFamily::Dnf => bench::Family::Dnf,
                BenchFamily::BoundedMu => bench::Family::BoundedMu,
                BenchFamily::Blowup => bench::Family::Blowup,
            };
            let engine = match engine {
                BenchEngine::Syntactic => bench::Engine::Syntactic,
                BenchEngine::Compositional => bench::Engine::Compositional,
            };
            let rows = bench::run(family, engine, from, to, step, seed, raw)?;
            write!(out, "{}", bench::csv(family, &rows, !no_timing))?;
            Ok(())
        }
        Command::Gen {
            n,
            format,
            beta_seed,
            beta_size,
        } => {
            let inst = gen_blowup(n)?;
            let beta = beta_seed.map(|s| inst.random_beta(s, beta_size));
            match format {
                GenFormat::Formula => {
                    writeln!(out, "psi: {}", inst.psi)?;
                    writeln!(out, "mu: {}", inst.mu)?;
                    if let Some(beta) = &beta {
                        let clauses: Vec<String> = beta.iter().map(|c| format!("({})", c.to_formula())).collect();
                        writeln!(out, "beta: {}", clauses.join(" & "))?;
                        writeln!(out, "omega: {}", inst.omega(beta)?)?;
                        writeln!(out, "satisfiable: {}", cnf_satisfiable(n, beta))?;
                    }
                }
                GenFormat::Json => {
                    let clauses: Vec<Vec<String>> = inst
                        .clauses
                        .iter()
                        .map(|c| c.literals().iter().map(|l| l.to_string()).collect())
                        .collect();
                    let mut value = json!({
                        "n": n,
                        "psi": inst.psi.render(),
                        "mu": inst.mu.render(),
                        "vocab": inst.vocab.atoms().iter().map(|a| a.as_str()).collect::<Vec<_>>(),
                        "clauses": clauses,
                    });
                    if let Some(beta) = &beta {
                        value["omega"] = json!(inst.omega(beta)?.to_string());
                        value["satisfiable"] = json!(cnf_satisfiable(n, beta));
                    }
                    writeln!(out, "{value}")?;
                }
            }
            Ok(())
        }
    }
}
