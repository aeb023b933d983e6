//! Fuzzy AHP over per-criterion multiplicative relations, plus the
//! arithmetic-mean and geometric-mean baselines.

use serde::{Deserialize, Serialize};
use std::thread;

use crate::aggregate::GroupWeights;
use crate::error::{Error, Result};
use crate::lad::{derive_weights, objective_at, SigmaConstraint, UtilityVector};
use crate::prefrel::Trmpr;
use crate::trfn::{rank, MagWeights, Ranking, Trfn};

/// One criterion layer: a relation per criterion and crisp criterion weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AhpProblem {
    pub criteria_weights: GroupWeights,
    pub matrices: Vec<Trmpr>,
    pub sigma: SigmaConstraint,
    pub mag_weights: MagWeights,
}

impl AhpProblem {
    pub fn new(
        criteria_weights: GroupWeights,
        matrices: Vec<Trmpr>,
        sigma: SigmaConstraint,
        mag_weights: MagWeights,
    ) -> Result<Self> {
        let p = Self {
            criteria_weights,
            matrices,
            sigma,
            mag_weights,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if self.matrices.is_empty() {
            return Err(Error::Empty);
        }
        if self.matrices.len() != self.criteria_weights.len() {
            return Err(Error::DimensionMismatch {
                expected: self.criteria_weights.len(),
                got: self.matrices.len(),
            });
        }
        let first = &self.matrices[0];
        for y in &self.matrices[1..] {
            if y.n() != first.n() {
                return Err(Error::DimensionMismatch {
                    expected: first.n(),
                    got: y.n(),
                });
            }
            if y.scale() != first.scale() || y.neutral() != first.neutral() {
                return Err(Error::NeutralMismatch);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AhpResult {
    pub local_weights: Vec<UtilityVector>,
    pub global_weights: Vec<Trfn>,
    pub magnitudes: Vec<f64>,
    pub ranking: Ranking,
    pub per_criterion_objectives: Vec<f64>,
}

/// Derives local weights per criterion (concurrently), combines them with the
/// criterion weights and ranks the result.
pub fn run_ahp(p: &AhpProblem) -> Result<AhpResult> {
    p.validate()?;
    let sigma = p.sigma;
    let solved: Vec<Result<UtilityVector>> = thread::scope(|s| {
        let handles: Vec<_> = p
            .matrices
            .iter()
            .map(|y| s.spawn(move || derive_weights(y, sigma)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("solver thread panicked"))
            .collect()
    });
    let local_weights = solved
        .into_iter()
        .enumerate()
        .map(|(k, r)| {
            r.map_err(|e| Error::Criterion {
                index: k + 1,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let n = p.matrices[0].n();
    let omega = p.criteria_weights.as_slice();
    let global_weights: Vec<Trfn> = (0..n)
        .map(|i| {
            let mut acc = [0.0; 4];
            for (u, wk) in local_weights.iter().zip(omega) {
                for (slot, v) in acc.iter_mut().zip(u.utilities()[i].components()) {
                    *slot += wk * v;
                }
            }
            Trfn::from_noisy(acc)
        })
        .collect();
    let magnitudes = global_weights
        .iter()
        .map(|w| w.magnitude(p.mag_weights))
        .collect();
    let ranking = rank(&global_weights, p.mag_weights);
    let per_criterion_objectives = local_weights.iter().map(|u| u.objective()).collect();
    Ok(AhpResult {
        local_weights,
        global_weights,
        magnitudes,
        ranking,
        per_criterion_objectives,
    })
}

/// `(a, b, c, d) / (a', b', c', d') = (a/d', b/c', c/b', d/a')`.
fn fuzzy_div(num: [f64; 4], den: [f64; 4]) -> Trfn {
    Trfn::from_noisy([
        num[0] / den[3],
        num[1] / den[2],
        num[2] / den[1],
        num[3] / den[0],
    ])
}

fn normalize(rows: Vec<[f64; 4]>) -> Vec<Trfn> {
    let mut total = [0.0; 4];
    for r in &rows {
        for (t, v) in total.iter_mut().zip(r) {
            *t += v;
        }
    }
    rows.into_iter().map(|r| fuzzy_div(r, total)).collect()
}

/// Fuzzy arithmetic-mean weights: normalized row sums.
pub fn amm_weights(y: &Trmpr) -> Vec<Trfn> {
    let n = y.n();
    let rows = (0..n)
        .map(|i| {
            let mut r = [0.0; 4];
            for j in 0..n {
                for (slot, v) in r.iter_mut().zip(y.get(i, j).components()) {
                    *slot += v;
                }
            }
            r
        })
        .collect();
    normalize(rows)
}

/// Fuzzy geometric-mean weights: normalized row geometric means.
pub fn gmm_weights(y: &Trmpr) -> Vec<Trfn> {
    let n = y.n();
    let rows = (0..n)
        .map(|i| {
            let mut r = [0.0; 4];
            for j in 0..n {
                for (slot, v) in r.iter_mut().zip(y.get(i, j).components()) {
                    *slot += v.ln();
                }
            }
            r.map(|s| (s / n as f64).exp())
        })
        .collect();
    normalize(rows)
}

/// The LAD objective of `y`'s additive image evaluated at arbitrary weights.
pub fn deviation(y: &Trmpr, weights: &[Trfn]) -> Result<f64> {
    if weights.len() != y.n() {
        return Err(Error::DimensionMismatch {
            expected: y.n(),
            got: weights.len(),
        });
    }
    Ok(objective_at(&y.to_additive()?, weights))
}
