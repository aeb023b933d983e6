//! Group decision making: combining several experts' relations.

use serde::{Deserialize, Serialize};
use std::thread;

use crate::error::{Error, Result};
use crate::lad::{derive_utility, objective_at, Model, UtilityVector, Variant};
use crate::prefrel::Trfpr;
use crate::trfn::Trfn;

const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Slack granted to the bound chain for solver round-off.
pub const BOUND_SLACK: f64 = 1e-7;

/// Non-negative weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct GroupWeights(Vec<f64>);

impl GroupWeights {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::InvalidWeights("no weights given".into()));
        }
        if let Some(bad) = w.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidWeights(format!(
                "weights must be finite and non-negative, got {bad}"
            )));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidWeights(format!(
                "weights must sum to 1, got {sum}"
            )));
        }
        Ok(Self(w))
    }

    /// `n` equal weights.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidWeights("no weights given".into()));
        }
        Ok(Self(vec![1.0 / n as f64; n]))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<f64>> for GroupWeights {
    type Error = Error;

    fn try_from(w: Vec<f64>) -> Result<Self> {
        Self::new(w)
    }
}

impl From<GroupWeights> for Vec<f64> {
    fn from(w: GroupWeights) -> Vec<f64> {
        w.0
    }
}

fn weighted_sum(items: impl Iterator<Item = Trfn>, w: &[f64]) -> Trfn {
    let mut acc = [0.0; 4];
    for (t, wk) in items.zip(w) {
        for (slot, v) in acc.iter_mut().zip(t.components()) {
            *slot += wk * v;
        }
    }
    Trfn::from_noisy(acc)
}

fn check_group(xs: &[Trfpr], w: &GroupWeights) -> Result<()> {
    if xs.len() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: w.len(),
            got: xs.len(),
        });
    }
    let first = &xs[0];
    for x in &xs[1..] {
        if x.n() != first.n() {
            return Err(Error::DimensionMismatch {
                expected: first.n(),
                got: x.n(),
            });
        }
        if x.neutral() != first.neutral() {
            return Err(Error::NeutralMismatch);
        }
    }
    Ok(())
}

/// Componentwise convex combination `X^c = sum_k w_k X^k`.
pub fn aggregate_relations(xs: &[Trfpr], w: &GroupWeights) -> Result<Trfpr> {
    check_group(xs, w)?;
    let first = &xs[0];
    Trfpr::from_upper(first.n(), first.neutral(), |i, j| {
        weighted_sum(xs.iter().map(|x| x.get(i, j)), w.as_slice())
    })
}

/// `u^c = sum_k w_k u^k`, scored against the aggregated relation.
pub fn aggregate_utilities(
    us: &[UtilityVector],
    w: &GroupWeights,
    aggregate: &Trfpr,
) -> Result<UtilityVector> {
    if us.len() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: w.len(),
            got: us.len(),
        });
    }
    let n = aggregate.n();
    if let Some(u) = us.iter().find(|u| u.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: u.len(),
        });
    }
    let utilities: Vec<Trfn> = (0..n)
        .map(|i| weighted_sum(us.iter().map(|u| u.utilities()[i]), w.as_slice()))
        .collect();
    let objective = objective_at(aggregate, &utilities);
    Ok(UtilityVector::new(utilities, objective, Model::P))
}

/// The three quantities of the group bound chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    /// Optimal objective of the aggregated relation.
    pub z_star_agg: f64,
    /// Objective of the aggregated relation at the aggregated utilities.
    pub z_agg_at_uc: f64,
    /// `sum_k w_k Z*(X^k)`.
    pub weighted_sum: f64,
    /// Whether `z_star_agg <= z_agg_at_uc <= weighted_sum` up to [`BOUND_SLACK`].
    pub holds: bool,
}

/// Solves every expert's relation and the aggregate under model `P` and
/// reports the bound chain
/// `Z*(X^c) <= Z(X^c, u^c) <= sum_k w_k Z*(X^k)`.
pub fn verify_bounds(xs: &[Trfpr], w: &GroupWeights) -> Result<BoundsReport> {
    check_group(xs, w)?;
    let individual: Vec<Result<UtilityVector>> = thread::scope(|s| {
        let handles: Vec<_> = xs
            .iter()
            .map(|x| s.spawn(move || derive_utility(x, &Variant::P)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("solver thread panicked"))
            .collect()
    });
    let individual = individual.into_iter().collect::<Result<Vec<_>>>()?;

    let xc = aggregate_relations(xs, w)?;
    let uc = aggregate_utilities(&individual, w, &xc)?;
    let star = derive_utility(&xc, &Variant::P)?;

    let weighted_sum: f64 = individual
        .iter()
        .zip(w.as_slice())
        .map(|(u, wk)| wk * u.objective())
        .sum();
    let z_star_agg = star.objective();
    let z_agg_at_uc = uc.objective();
    let holds =
        z_star_agg <= z_agg_at_uc + BOUND_SLACK && z_agg_at_uc <= weighted_sum + BOUND_SLACK;
    Ok(BoundsReport {
        z_star_agg,
        z_agg_at_uc,
        weighted_sum,
        holds,
    })
}
