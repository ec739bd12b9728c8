//! Thread-pool versions of the per-model update and of counterexample
//! search. Results do not depend on the number of threads.

use std::collections::BTreeSet;

use beliefkit_core::change::UpdateKernel;
use beliefkit_core::postulate::{aggregate, check_in, trial_instance, Operator, PostulateId, Verdict};
use beliefkit_core::{Error, ModelSet, Result};
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::error::{CliError, CliResult};

/// A pool with `threads` workers; `None` or 0 lets rayon decide.
pub fn pool(threads: Option<usize>) -> CliResult<ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))
}

/// Union of the kernel images of every model in `base`.
pub fn image_of(pool: &ThreadPool, kernel: &UpdateKernel, base: &ModelSet) -> ModelSet {
    let bits: Vec<u64> = base.bits().collect();
    let images: BTreeSet<u64> = pool.install(|| bits.par_iter().flat_map_iter(|&b| kernel.image(b)).collect());
    ModelSet::from_bits(kernel.vocab(), images)
}

/// Runs every trial, then reports the first failure by trial index, so the
/// verdict is the one the sequential search would give.
pub fn search_counterexample(
    pool: &ThreadPool,
    postulate: PostulateId,
    op: Operator,
    vocab: &beliefkit_core::Vocabulary,
    trials: usize,
    seed: u64,
    max_depth: usize,
) -> Result<Verdict> {
    if trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    let verdicts: Result<Vec<Verdict>> = pool.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|trial| {
                let instance = trial_instance(postulate, vocab, seed, trial, max_depth)?;
                check_in(postulate, op, &instance, vocab)
            })
            .collect()
    });
    Ok(aggregate(postulate, op, verdicts?, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use beliefkit_core::change::update_c;
    use beliefkit_core::postulate::search_counterexample_with_depth;
    use beliefkit_core::semantics::enumerate_models;
    use beliefkit_core::{Formula, Vocabulary};

    #[test]
    fn parallel_image_matches_sequential() {
        let psi = Formula::parse("(a & !b) | (c & d) | !e").unwrap();
        let mu = Formula::parse("(a | b) & (!c | e)").unwrap();
        let v = Vocabulary::covering([&psi, &mu]).unwrap();
        let kernel = UpdateKernel::update(&mu, &v).unwrap();
        let base = enumerate_models(&psi, &v).unwrap();
        let expected = update_c(&psi, &mu, &v).unwrap().models;
        for threads in [1, 2, 4] {
            assert_eq!(image_of(&pool(Some(threads)).unwrap(), &kernel, &base), expected);
        }
    }

    #[test]
    fn parallel_search_matches_sequential() {
        let v = Vocabulary::from_names(&["a", "b", "c"]).unwrap();
        for p in [PostulateId::U4, PostulateId::U8] {
            let seq = search_counterexample_with_depth(p, Operator::Compositional, &v, 400, 21, 4).unwrap();
            for threads in [1, 3] {
                let par = search_counterexample(
                    &pool(Some(threads)).unwrap(),
                    p,
                    Operator::Compositional,
                    &v,
                    400,
                    21,
                    4,
                )
                .unwrap();
                assert_eq!(par, seq);
            }
        }
    }
}
