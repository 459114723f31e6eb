//! Parallel drivers. Every function returns exactly what its sequential
//! counterpart in `smalc_core` returns, whatever the number of workers.

use std::sync::Arc;

use rayon::prelude::*;
use smalc_core::calculus::{check_derivation, Derivation, Mode};
use smalc_core::quantale::FiniteQuantale;
use smalc_core::semantics::{
    enumerate_lattices, find_countermodel_in, holds, quantales_on, valuations, CountermodelBudget,
    CountermodelOutcome, SemanticsError, SubexpInterpretation, SweepError, SweepReport, SweepViolation,
};
use smalc_core::syntax::{Sequent, Signature};

/// A pool with `jobs` workers; 0 means one per CPU.
pub fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
}

/// Same list, same order as `enumerate_quantales`.
pub fn enumerate_quantales(max_size: usize, unital_only: bool) -> Vec<FiniteQuantale> {
    let lattices: Vec<_> = (1..=max_size).flat_map(enumerate_lattices).collect();
    lattices
        .par_iter()
        .map(|l| quantales_on(l, unital_only))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Quantales searched concurrently per round of the countermodel search.
pub const CHUNK: usize = 64;

/// Same outcome as `find_countermodel`. Each round searches a chunk of
/// quantales with the budget left at its start, then replays the results in
/// order: a per-quantale search is a prefix of the same search under a larger
/// limit, so the replay reproduces the sequential accounting exactly.
pub fn find_countermodel(
    seq: &Sequent,
    sig: &Signature,
    max_size: usize,
    budget: CountermodelBudget,
) -> Result<CountermodelOutcome, SemanticsError> {
    let quantales: Vec<Arc<FiniteQuantale>> =
        enumerate_quantales(max_size, true).into_iter().map(Arc::new).collect();
    let mut checks = 0u64;
    for chunk in quantales.chunks(CHUNK) {
        let remaining = budget.max_checks - checks;
        let results = chunk
            .par_iter()
            .map(|q| find_countermodel_in(q, seq, sig, remaining))
            .collect::<Result<Vec<_>, _>>()?;
        for r in results {
            if checks + r.checks > budget.max_checks {
                return Ok(CountermodelOutcome::Budget {
                    checks: budget.max_checks,
                });
            }
            checks += r.checks;
            if let Some(witness) = r.witness {
                return Ok(CountermodelOutcome::Found { witness, checks });
            }
            if checks == budget.max_checks {
                return Ok(CountermodelOutcome::Budget { checks });
            }
        }
    }
    Ok(CountermodelOutcome::NoneFound { checks })
}

/// Same report as `soundness_sweep`, violations in derivation, model,
/// valuation order.
pub fn soundness_sweep(
    corpus: &[Derivation],
    sig: &Signature,
    mode: Mode,
    models: &[SubexpInterpretation],
) -> Result<SweepReport, SweepError> {
    corpus
        .par_iter()
        .enumerate()
        .map(|(i, d)| check_derivation(d, sig, mode).map_err(|e| SweepError::InvalidDerivation(i, e)))
        .collect::<Result<Vec<_>, _>>()?;
    let cells: Vec<(usize, usize)> = (0..corpus.len())
        .flat_map(|i| (0..models.len()).map(move |j| (i, j)))
        .collect();
    let parts = cells
        .par_iter()
        .map(|&(i, j)| {
            let seq = &corpus[i].conclusion;
            let m = &models[j];
            let mut part = SweepReport::default();
            for f in valuations(&seq.atoms(), m.quantale().size()) {
                part.checks += 1;
                if !holds(m, &f, seq).map_err(SweepError::Semantics)? {
                    part.violations.push(SweepViolation {
                        derivation: i,
                        model: j,
                        valuation: f,
                    });
                }
            }
            Ok(part)
        })
        .collect::<Result<Vec<_>, SweepError>>()?;
    let mut report = SweepReport::default();
    for p in parts {
        report.checks += p.checks;
        report.violations.extend(p.violations);
    }
    Ok(report)
}
