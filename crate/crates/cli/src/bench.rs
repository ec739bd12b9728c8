//! Size measurements for the symbolic update.

use std::fmt::Write as _;
use std::time::Instant;

use beliefkit_core::blowup::gen_blowup;
use beliefkit_core::change::update_c;
use beliefkit_core::syntactic::{size_report, size_report_dnf, update_raw, update_syntactic, SizeReport};
use beliefkit_core::{Atom, DnfFormula, Literal, Term, Vocabulary};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};

/// The largest ratio `out / (|ψ| · |μ|)` over the calibration pairs (seeds
/// 0..100 of [`random_dnf_pair`], canonical and raw output) was 1.8; this is
/// that value rounded up to the next half and is not refitted.
pub const SIZE_CONSTANT: f64 = 2.0;

/// Largest `n` the blowup family is measured at.
pub const MAX_BENCH_BLOWUP_N: usize = 3;

/// Atoms `p1..pk`.
pub fn pool_atoms(k: usize) -> Vec<Atom> {
    (1..=k).map(|i| Atom::new(format!("p{i}"))).collect()
}

/// A dnf of `terms` consistent terms, each over `width` distinct atoms.
pub fn random_dnf(rng: &mut impl Rng, atoms: &[Atom], terms: usize, width: usize) -> DnfFormula {
    let width = width.min(atoms.len());
    let raw = (0..terms)
        .map(|_| {
            sample(rng, atoms.len(), width)
                .into_iter()
                .map(|i| Literal::new(atoms[i].clone(), rng.gen_bool(0.5)))
                .collect::<Term>()
        })
        .collect();
    DnfFormula::from_raw(raw)
}

/// A random pair of dnfs over 12 atoms: `ψ` with 1 to 30 terms of width 1
/// to 4, `μ` with 1 to 6 terms of width 1 to 3.
pub fn random_dnf_pair(seed: u64) -> (DnfFormula, DnfFormula) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms = pool_atoms(12);
    let psi_terms = rng.gen_range(1..=30);
    let psi_width = rng.gen_range(1..=4);
    let mu_terms = rng.gen_range(1..=6);
    let mu_width = rng.gen_range(1..=3);
    let psi = random_dnf(&mut rng, &atoms, psi_terms, psi_width).canonicalize();
    let mu = random_dnf(&mut rng, &atoms, mu_terms, mu_width).canonicalize();
    (psi, mu)
}

/// The fixed update formula of the bounded family: two terms of two
/// literals, 9 nodes at most.
pub fn bounded_mu(seed: u64) -> DnfFormula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb0);
    random_dnf(&mut rng, &pool_atoms(20), 2, 2).canonicalize()
}

/// `ψ` of the bounded family: `terms` terms of width 3 over 20 atoms.
pub fn bounded_psi(seed: u64, terms: usize) -> DnfFormula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(terms as u64));
    random_dnf(&mut rng, &pool_atoms(20), terms, 3)
}

pub fn within_bound(r: &SizeReport) -> bool {
    r.output_size as f64 <= SIZE_CONSTANT * (r.input_psi_size * r.input_mu_size) as f64
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_exponent(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Random dnf pairs; `n` is the seed.
    Dnf,
    /// Fixed small `μ`, `ψ` with `n` terms.
    BoundedMu,
    /// The 3CNF encoding family at `n`.
    Blowup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Syntactic,
    Compositional,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub n: usize,
    pub report: SizeReport,
    pub wall_us: u128,
    pub bound_ok: bool,
}

fn timed<T>(f: impl FnOnce() -> CliResult<T>) -> CliResult<(T, u128)> {
    let start = Instant::now();
    let value = f()?;
    Ok((value, start.elapsed().as_micros()))
}

fn dnf_row(n: usize, psi: &DnfFormula, mu: &DnfFormula, engine: Engine, raw: bool) -> CliResult<Row> {
    let (out, wall_us) = timed(|| match engine {
        Engine::Syntactic if raw => Ok(update_raw(psi, mu)),
        Engine::Syntactic => Ok(update_syntactic(psi, mu)),
        Engine::Compositional => {
            let (pf, mf) = (psi.to_formula(), mu.to_formula());
            let v = Vocabulary::covering([&pf, &mf])?;
            Ok(update_c(&pf, &mf, &v)?.formula)
        }
    })?;
    let report = size_report_dnf(psi, mu, &out);
    Ok(Row {
        n,
        bound_ok: within_bound(&report),
        report,
        wall_us,
    })
}

fn blowup_row(n: usize, engine: Engine, raw: bool) -> CliResult<Row> {
    if n > MAX_BENCH_BLOWUP_N {
        return Err(CliError::Core(beliefkit_core::Error::InstanceTooLarge {
            n,
            max: MAX_BENCH_BLOWUP_N,
        }));
    }
    let inst = gen_blowup(n)?;
    let (out, wall_us) = timed(|| match engine {
        Engine::Syntactic if raw => Ok(update_raw(&inst.psi, &inst.mu)),
        Engine::Syntactic => Ok(update_syntactic(&inst.psi, &inst.mu)),
        Engine::Compositional => Ok(update_c(&inst.psi, &inst.mu, &inst.vocab)?.formula),
    })?;
    let report = size_report(&inst.psi, &inst.mu, &out);
    Ok(Row {
        n,
        bound_ok: within_bound(&report),
        report,
        wall_us,
    })
}

/// One row per `n` in `from..=to` stepping by `step`.
pub fn run(
    family: Family,
    engine: Engine,
    from: usize,
    to: usize,
    step: usize,
    seed: u64,
    raw: bool,
) -> CliResult<Vec<Row>> {
    if step == 0 || from > to {
        return Err(CliError::Usage("need from <= to and step >= 1".into()));
    }
    (from..=to)
        .step_by(step)
        .map(|n| match family {
            Family::Dnf => {
                let (psi, mu) = random_dnf_pair(seed.wrapping_add(n as u64));
                dnf_row(n, &psi, &mu, engine, raw)
            }
            Family::BoundedMu => dnf_row(n, &bounded_psi(seed, n), &bounded_mu(seed), engine, raw),
            Family::Blowup => blowup_row(n, engine, raw),
        })
        .collect()
}

pub const CSV_COLUMNS: &str = "n,psi_size,mu_size,out_size,psi_terms,mu_terms,out_terms,wall_us,bound_ok";

/// CSV with comment lines describing the family; `timing = false` writes 0
/// for wall time so the output is reproducible.
pub fn csv(family: Family, rows: &[Row], timing: bool) -> String {
    let mut out = String::new();
    let note = match family {
        Family::Dnf => "# family=dnf: random dnf pairs over p1..p12, n offsets the seed",
        Family::BoundedMu => "# family=bounded-mu: fixed 2-term mu, psi has n terms of width 3 over p1..p20",
        Family::Blowup => {
            "# family=blowup: clauses are 3-literal sets over distinct atoms for n>=3; \
             for n<3 multisets of 3 literals read as sets, tautologies dropped"
        }
    };
    let _ = writeln!(out, "{note}");
    let _ = writeln!(
        out,
        "# sizes are AST node counts; bound_ok is out_size <= {SIZE_CONSTANT}*psi_size*mu_size"
    );
    let _ = writeln!(out, "{CSV_COLUMNS}");
    for r in rows {
        let p = &r.report;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.n,
            p.input_psi_size,
            p.input_mu_size,
            p.output_size,
            p.psi_terms,
            p.mu_terms,
            p.output_terms,
            if timing { r.wall_us } else { 0 },
            r.bound_ok
        );
    }
    out
}
