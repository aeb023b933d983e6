//! Least-absolute-deviation utility vectors.
//!
//! Given a relation `X` with neutral `T0`, a utility vector `u` reconstructs
//! the shifted relation as `u_i + u_j°`. The LAD objective is
//!
//! ```text
//! Z(X, u) = sum_ij d(x_ij + T0, u_i + u_j°)
//! ```
//!
//! with `d` the normalized Manhattan distance and the diagonal included.
//! Each absolute deviation becomes an auxiliary variable bounded below by
//! both signs of its residual, which turns the minimization into a linear
//! program over `4n` utility components and `4n^2` deviations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{solve, LinearProgram, LpStatus, SolveOptions};
use crate::prefrel::{Trfpr, Trmpr, CONSISTENCY_TOL};
use crate::trfn::Trfn;

/// The optimization model that produced a utility vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Only the trapezoid ordering is imposed.
    P0,
    /// Non-negative utilities.
    P,
    /// Utilities confined to `[0, 1]`.
    PUnit,
    /// Non-negative utilities summing to a fixed trapezoid.
    PSigma,
    /// `PSigma` on the additive image of a multiplicative relation.
    QSigma,
}

/// A strictly positive trapezoid fixing the componentwise total of the
/// utilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Trfn", into = "Trfn")]
pub struct SigmaConstraint(Trfn);

impl SigmaConstraint {
    /// Components must be positive. Unordered components cannot be the sum
    /// of ordered trapezoids, so they are reported as [`Error::Infeasible`].
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if [a, b, c, d].iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "total utility must be strictly positive, got ({a}, {b}, {c}, {d})"
            )));
        }
        match Trfn::new(a, b, c, d) {
            Ok(t) => Ok(Self(t)),
            Err(_) => Err(Error::Infeasible),
        }
    }

    pub fn value(&self) -> Trfn {
        self.0
    }
}

impl TryFrom<Trfn> for SigmaConstraint {
    type Error = Error;

    fn try_from(t: Trfn) -> Result<Self> {
        let [a, b, c, d] = t.components();
        SigmaConstraint::new(a, b, c, d)
    }
}

impl From<SigmaConstraint> for Trfn {
    fn from(s: SigmaConstraint) -> Trfn {
        s.0
    }
}

/// Which LAD model to build for an additive relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variant {
    P0,
    P,
    PUnit,
    PSigma(SigmaConstraint),
}

impl Variant {
    fn model(&self) -> Model {
        match self {
            Variant::P0 => Model::P0,
            Variant::P => Model::P,
            Variant::PUnit => Model::PUnit,
            Variant::PSigma(_) => Model::PSigma,
        }
    }
}

/// Utilities per alternative together with the LAD objective they attain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UtilityVector {
    utilities: Vec<Trfn>,
    objective: f64,
    model: Model,
}

impl UtilityVector {
    pub(crate) fn new(utilities: Vec<Trfn>, objective: f64, model: Model) -> Self {
        Self {
            utilities,
            objective,
            model,
        }
    }

    pub fn utilities(&self) -> &[Trfn] {
        &self.utilities
    }

    pub fn objective(&self) -> f64 {
        self.objective
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn len(&self) -> usize {
        self.utilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.utilities.is_empty()
    }
}

/// `Z(X, u)` evaluated directly from the distance, independent of any LP.
pub fn objective_at(x: &Trfpr, utilities: &[Trfn]) -> f64 {
    let t0 = x.neutral().value();
    let n = x.n();
    let mut z = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = x.get(i, j) + t0;
            let rebuilt = utilities[i] + utilities[j].negate();
            z += target.distance(&rebuilt);
        }
    }
    z
}

fn u_var(k: usize, comp: usize) -> usize {
    4 * k + comp
}

fn v_var(n: usize, i: usize, j: usize, comp: usize) -> usize {
    4 * n + 4 * (i * n + j) + comp
}

/// Linearized LAD model.
///
/// Variables are the utility components `u_k^{a,b,c,d}` at `4k..4k+4`,
/// followed by the deviations `v_ij^{a,b,c,d}` at `4n + 4(in + j)..`. With
/// `û_ij = u_i + 1 - mirror(u_j)` each deviation satisfies
/// `v >= +-(x_ij + T0 - û_ij)`; the objective is `1/4 sum v`.
pub fn build_lp(x: &Trfpr, variant: &Variant) -> LinearProgram {
    let n = x.n();
    let t0 = x.neutral().value().components();
    let nvars = 4 * n + 4 * n * n;
    let mut objective = vec![0.0; nvars];
    for c in &mut objective[4 * n..] {
        *c = 0.25;
    }
    let mut lp = LinearProgram::new(objective);

    // Deviation pairs. Rows always match the variable count, so the
    // insertion calls cannot fail.
    for i in 0..n {
        for j in 0..n {
            let xij = x.get(i, j).components();
            for comp in 0..4 {
                let v = v_var(n, i, j, comp);
                let ui = u_var(i, comp);
                let uj = u_var(j, 3 - comp);
                let k = xij[comp] + t0[comp] - 1.0;
                // v >= k - u_i + u_j'
                lp.add_le_terms(&[(v, -1.0), (ui, -1.0), (uj, 1.0)], -k)
                    .expect("row within bounds");
                // v >= u_i - u_j' - k
                lp.add_le_terms(&[(v, -1.0), (ui, 1.0), (uj, -1.0)], k)
                    .expect("row within bounds");
            }
        }
    }
    for k in 0..n {
        for comp in 0..3 {
            lp.add_le_terms(&[(u_var(k, comp), 1.0), (u_var(k, comp + 1), -1.0)], 0.0)
                .expect("row within bounds");
        }
    }

    let (lo, hi) = match variant {
        Variant::P0 => (f64::NEG_INFINITY, f64::INFINITY),
        Variant::PUnit => (0.0, 1.0),
        Variant::P | Variant::PSigma(_) => (0.0, f64::INFINITY),
    };
    for k in 0..n {
        for comp in 0..4 {
            // The ordering chain carries lower bounds on `a` and upper
            // bounds on `d` to the remaining components.
            let b_lo = if comp == 0 { lo } else { f64::NEG_INFINITY };
            let b_hi = if comp == 3 { hi } else { f64::INFINITY };
            lp.set_bounds(u_var(k, comp), b_lo, b_hi)
                .expect("valid bounds");
        }
    }

    if let Variant::PSigma(sigma) = variant {
        let s = sigma.value().components();
        for comp in 0..4 {
            let terms: Vec<(usize, f64)> = (0..n).map(|k| (u_var(k, comp), 1.0)).collect();
            lp.add_eq_terms(&terms, s[comp]).expect("row within bounds");
        }
    }
    lp
}

/// Solves the chosen LAD model for an additive relation.
pub fn derive_utility(x: &Trfpr, variant: &Variant) -> Result<UtilityVector> {
    derive_utility_with(x, variant, &SolveOptions::default())
}

pub fn derive_utility_with(
    x: &Trfpr,
    variant: &Variant,
    opts: &SolveOptions,
) -> Result<UtilityVector> {
    let lp = build_lp(x, variant);
    let sol = solve(&lp, opts)?;
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => return Err(Error::Infeasible),
        LpStatus::Unbounded => return Err(Error::Unbounded),
    }
    let n = x.n();
    let (lo, hi) = match variant {
        Variant::P0 => (f64::NEG_INFINITY, f64::INFINITY),
        Variant::PUnit => (0.0, 1.0),
        _ => (0.0, f64::INFINITY),
    };
    let utilities = (0..n)
        .map(|k| {
            let raw: [f64; 4] = std::array::from_fn(|c| sol.x[u_var(k, c)].clamp(lo, hi));
            Trfn::from_noisy(raw)
        })
        .collect();
    Ok(UtilityVector::new(
        utilities,
        sol.objective_value.max(0.0),
        variant.model(),
    ))
}

/// Shifts a `P0` optimum by the crisp `-min_k u_k^a` (when negative) so that
/// it becomes non-negative. The objective is invariant under common shifts.
pub fn shift_normalize(u: &UtilityVector) -> Result<UtilityVector> {
    if u.model != Model::P0 {
        return Err(Error::InvalidArgument(format!(
            "shift normalization applies to P0 solutions, got {:?}",
            u.model
        )));
    }
    let min_a = u
        .utilities
        .iter()
        .map(Trfn::a)
        .fold(f64::INFINITY, f64::min);
    let delta = Trfn::crisp((-min_a).max(0.0));
    let utilities = u.utilities.iter().map(|&t| t + delta).collect();
    Ok(UtilityVector::new(utilities, u.objective, Model::P))
}

/// LAD utility of a multiplicative relation: model `P` on its additive image.
pub fn derive_utility_mult(y: &Trmpr) -> Result<UtilityVector> {
    derive_utility(&y.to_additive()?, &Variant::P)
}

/// LAD fuzzy weights: model `PSigma` on the additive image of `y`.
pub fn derive_weights(y: &Trmpr, sigma: SigmaConstraint) -> Result<UtilityVector> {
    let u = derive_utility(&y.to_additive()?, &Variant::PSigma(sigma))?;
    Ok(UtilityVector {
        model: Model::QSigma,
        ..u
    })
}

/// Exact utilities of a consistent relation: column `k`, `u_i = x_ik`.
pub fn fast_path_consistent(x: &Trfpr, k: usize) -> Result<UtilityVector> {
    if k >= x.n() {
        return Err(Error::InvalidArgument(format!(
            "column {k} out of range for n = {}",
            x.n()
        )));
    }
    let report = x.check_consistency(CONSISTENCY_TOL);
    if !report.consistent {
        return Err(Error::NotConsistent {
            max_violation: report.max_violation,
        });
    }
    let utilities = x.column(k);
    let objective = objective_at(x, &utilities);
    Ok(UtilityVector::new(utilities, objective, Model::P))
}
