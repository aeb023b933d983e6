//! Deterministic inputs for the benchmarks.

#![allow(clippy::needless_range_loop)]

use ladpref::{
    AhpProblem, GroupWeights, MagWeights, NeutralElement, Scale, SigmaConstraint, Trfn, Trfpr,
    Trmpr,
};

pub fn neutral() -> NeutralElement {
    NeutralElement::additive(Trfn::new(0.4, 0.5, 0.5, 0.6).unwrap()).unwrap()
}

/// An inconsistent relation on `n` alternatives. `seed` shifts the pattern.
pub fn noisy_relation(n: usize, seed: u64) -> Trfpr {
    let t0 = neutral();
    let mut rows = vec![vec![t0.value(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let h = ((i * 31 + j * 17) as f64 + seed as f64 * 0.37).sin();
            let mid = 0.5 + 0.35 * h;
            let w = 0.05 + 0.05 * h.abs();
            let q = Trfn::new(
                (mid - 2.0 * w).max(0.0),
                (mid - w).max(0.0),
                (mid + w).min(1.0),
                (mid + 2.0 * w).min(1.0),
            )
            .unwrap();
            rows[i][j] = q;
            rows[j][i] = q.negate();
        }
    }
    Trfpr::new(rows, t0).unwrap()
}

pub fn noisy_mult(n: usize, seed: u64) -> Trmpr {
    noisy_relation(n, seed)
        .to_multiplicative(Scale::new(9).unwrap())
        .unwrap()
}

pub fn sigma() -> SigmaConstraint {
    SigmaConstraint::new(0.8, 0.9, 1.1, 1.2).unwrap()
}

pub fn ahp_problem(n: usize, criteria: usize) -> AhpProblem {
    let matrices = (0..criteria).map(|k| noisy_mult(n, k as u64)).collect();
    AhpProblem::new(
        GroupWeights::uniform(criteria).unwrap(),
        matrices,
        sigma(),
        MagWeights::default(),
    )
    .unwrap()
}
