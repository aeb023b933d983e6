//! Dense two-phase simplex for small linear programs.
//!
//! Solves `min c'x` subject to `A_eq x = b_eq`, `A_ub x <= b_ub` and
//! per-variable bounds `lo <= x <= hi`, where either bound may be infinite.
//! Variables are rewritten into non-negative standard form (shifted, flipped
//! or split), inequalities receive slacks and rows without an obvious basic
//! column receive an artificial.
//!
//! Entering columns follow Dantzig's rule (most negative reduced cost, lowest
//! index on ties) until a run of non-improving pivots, after which the phase
//! finishes under Bland's rule. Ratio-test ties go to the lowest basic index.
//! Both rules are deterministic, so identical programs give bit-identical
//! solutions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A linear program in inequality form with variable bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    objective: Vec<f64>,
    eq: Vec<(Vec<f64>, f64)>,
    ub: Vec<(Vec<f64>, f64)>,
    bounds: Vec<(f64, f64)>,
}

impl LinearProgram {
    /// New program over `objective.len()` variables, each bounded to
    /// `[0, +inf)` until changed with [`set_bounds`](Self::set_bounds).
    pub fn new(objective: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            objective,
            eq: Vec::new(),
            ub: Vec::new(),
            bounds: vec![(0.0, f64::INFINITY); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn eq_constraints(&self) -> &[(Vec<f64>, f64)] {
        &self.eq
    }

    pub fn ub_constraints(&self) -> &[(Vec<f64>, f64)] {
        &self.ub
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn set_bounds(&mut self, var: usize, lo: f64, hi: f64) -> Result<()> {
        if var >= self.num_vars() {
            return Err(Error::InvalidArgument(format!(
                "variable {var} out of range ({} variables)",
                self.num_vars()
            )));
        }
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(Error::InvalidArgument(format!(
                "invalid bounds [{lo}, {hi}] for variable {var}"
            )));
        }
        self.bounds[var] = (lo, hi);
        Ok(())
    }

    /// `row . x = rhs`.
    pub fn add_eq(&mut self, row: Vec<f64>, rhs: f64) -> Result<()> {
        self.check_row(&row, rhs)?;
        self.eq.push((row, rhs));
        Ok(())
    }

    /// `row . x <= rhs`.
    pub fn add_le(&mut self, row: Vec<f64>, rhs: f64) -> Result<()> {
        self.check_row(&row, rhs)?;
        self.ub.push((row, rhs));
        Ok(())
    }

    /// `row . x >= rhs`, stored as `-row . x <= -rhs`.
    pub fn add_ge(&mut self, row: Vec<f64>, rhs: f64) -> Result<()> {
        self.add_le(row.into_iter().map(|v| -v).collect(), -rhs)
    }

    /// Sparse form of [`add_le`](Self::add_le); repeated indices accumulate.
    pub fn add_le_terms(&mut self, terms: &[(usize, f64)], rhs: f64) -> Result<()> {
        let row = self.dense(terms)?;
        self.add_le(row, rhs)
    }

    /// Sparse form of [`add_eq`](Self::add_eq).
    pub fn add_eq_terms(&mut self, terms: &[(usize, f64)], rhs: f64) -> Result<()> {
        let row = self.dense(terms)?;
        self.add_eq(row, rhs)
    }

    fn dense(&self, terms: &[(usize, f64)]) -> Result<Vec<f64>> {
        let mut row = vec![0.0; self.num_vars()];
        for &(j, v) in terms {
            *row.get_mut(j)
                .ok_or_else(|| Error::InvalidArgument(format!("variable {j} out of range")))? += v;
        }
        Ok(row)
    }

    fn check_row(&self, row: &[f64], rhs: f64) -> Result<()> {
        if row.len() != self.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars(),
                got: row.len(),
            });
        }
        if !rhs.is_finite() || row.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(())
    }

    /// Largest violation of any constraint or bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let dot = |row: &[f64]| row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
        let eq = self.eq.iter().map(|(r, b)| (dot(r) - b).abs());
        let ub = self.ub.iter().map(|(r, b)| (dot(r) - b).max(0.0));
        let bd = self
            .bounds
            .iter()
            .zip(x)
            .map(|(&(lo, hi), &v)| (lo - v).max(v - hi).max(0.0));
        eq.chain(ub).chain(bd).fold(0.0, f64::max)
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal values; empty unless `status` is `Optimal`.
    pub x: Vec<f64>,
    /// `+inf` when infeasible and `-inf` when unbounded.
    pub objective_value: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub feas_tol: f64,
    pub pivot_tol: f64,
    pub max_iters: usize,
    /// Consecutive non-improving pivots tolerated before Bland's rule.
    pub bland_after: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            feas_tol: 1e-9,
            pivot_tol: 1e-10,
            max_iters: 50_000,
            bland_after: 50,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum VarMap {
    /// `x = lo + s`
    Shift { col: usize, lo: f64 },
    /// `x = hi - s`
    Flip { col: usize, hi: f64 },
    /// `x = s+ - s-`
    Split { pos: usize, neg: usize },
}

struct Tableau {
    rows: usize,
    /// Columns including the right-hand side, which is last.
    width: usize,
    data: Vec<f64>,
    /// Reduced costs followed by `-z`.
    obj: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.width - 1
    }

    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.width + c]
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let w = self.width;
        let inv = 1.0 / self.at(pr, pc);
        for v in &mut self.data[pr * w..(pr + 1) * w] {
            *v *= inv;
        }
        self.data[pr * w + pc] = 1.0;
        // The pivot row is usually sparse; only its nonzeros change other rows.
        let prow: Vec<(usize, f64)> = self.data[pr * w..(pr + 1) * w]
            .iter()
            .enumerate()
            .filter(|&(c, &v)| v != 0.0 && c != pc)
            .map(|(c, &v)| (c, v))
            .collect();
        for r in 0..self.rows {
            if r == pr {
                continue;
            }
            let f = self.data[r * w + pc];
            if f != 0.0 {
                let row = &mut self.data[r * w..(r + 1) * w];
                for &(c, p) in &prow {
                    row[c] -= f * p;
                }
                row[pc] = 0.0;
            }
        }
        let f = self.obj[pc];
        if f != 0.0 {
            for &(c, p) in &prow {
                self.obj[c] -= f * p;
            }
            self.obj[pc] = 0.0;
        }
        self.basis[pr] = pc;
    }

    fn load_costs(&mut self, cost: &[f64]) {
        let w = self.width;
        self.obj = cost.to_vec();
        self.obj.push(0.0);
        for r in 0..self.rows {
            let cb = cost[self.basis[r]];
            if cb != 0.0 {
                for (v, t) in self.obj.iter_mut().zip(&self.data[r * w..(r + 1) * w]) {
                    *v -= cb * t;
                }
            }
        }
    }

    fn drop_row(&mut self, r: usize) {
        let w = self.width;
        self.data.drain(r * w..(r + 1) * w);
        self.basis.remove(r);
        self.rows -= 1;
    }

    /// Runs simplex iterations on the loaded cost row. Returns `false` when
    /// the objective is unbounded below.
    fn optimize(
        &mut self,
        allowed: usize,
        opts: &SolveOptions,
        iterations: &mut usize,
    ) -> Result<bool> {
        let rhs = self.rhs_col();
        let mut stalled = 0usize;
        let mut bland = opts.bland_after == 0;
        loop {
            let entering = if bland {
                (0..allowed).find(|&j| self.obj[j] < -opts.feas_tol)
            } else {
                let mut best: Option<(usize, f64)> = None;
                for j in 0..allowed {
                    let d = self.obj[j];
                    if d < -opts.feas_tol && best.is_none_or(|(_, b)| d < b) {
                        best = Some((j, d));
                    }
                }
                best.map(|(j, _)| j)
            };
            let Some(e) = entering else {
                return Ok(true);
            };

            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.at(r, e);
                if a > opts.pivot_tol {
                    let ratio = self.at(r, rhs).max(0.0) / a;
                    leave = match leave {
                        None => Some((r, ratio)),
                        Some((lr, lratio)) => {
                            let tie = (ratio - lratio).abs() <= 1e-12 * (1.0 + lratio.abs());
                            if ratio < lratio && !tie || tie && self.basis[r] < self.basis[lr] {
                                Some((r, ratio))
                            } else {
                                Some((lr, lratio))
                            }
                        }
                    };
                }
            }
            let Some((pr, ratio)) = leave else {
                return Ok(false);
            };

            *iterations += 1;
            if *iterations > opts.max_iters {
                return Err(Error::IterationLimit(opts.max_iters));
            }
            if ratio * -self.obj[e] <= 1e-12 {
                stalled += 1;
                if stalled >= opts.bland_after {
                    bland = true;
                }
            } else {
                stalled = 0;
            }
            self.pivot(pr, e);
            for r in 0..self.rows {
                let v = &mut self.data[r * self.width + rhs];
                if *v < 0.0 && *v > -opts.feas_tol {
                    *v = 0.0;
                }
            }
        }
    }
}

/// Solves `lp`. Infeasibility and unboundedness are reported through
/// [`LpSolution::status`]; only an exhausted iteration budget is an error.
pub fn solve(lp: &LinearProgram, opts: &SolveOptions) -> Result<LpSolution> {
    let nvars = lp.num_vars();

    // Standard-form columns.
    let mut maps = Vec::with_capacity(nvars);
    let mut ncols = 0usize;
    let mut bound_rows: Vec<(usize, f64)> = Vec::new();
    for &(lo, hi) in &lp.bounds {
        let map = match (lo.is_finite(), hi.is_finite()) {
            (true, _) => {
                if hi.is_finite() {
                    bound_rows.push((ncols, hi - lo));
                }
                VarMap::Shift { col: ncols, lo }
            }
            (false, true) => VarMap::Flip { col: ncols, hi },
            (false, false) => {
                ncols += 1;
                VarMap::Split {
                    pos: ncols - 1,
                    neg: ncols,
                }
            }
        };
        ncols += 1;
        maps.push(map);
    }

    let translate = |row: &[f64], rhs: f64| -> (Vec<f64>, f64) {
        let mut out = vec![0.0; ncols];
        let mut b = rhs;
        for (j, &a) in row.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            match maps[j] {
                VarMap::Shift { col, lo } => {
                    out[col] += a;
                    b -= a * lo;
                }
                VarMap::Flip { col, hi } => {
                    out[col] -= a;
                    b -= a * hi;
                }
                VarMap::Split { pos, neg } => {
                    out[pos] += a;
                    out[neg] -= a;
                }
            }
        }
        (out, b)
    };

    let mut le_rows: Vec<(Vec<f64>, f64)> = lp.ub.iter().map(|(r, b)| translate(r, *b)).collect();
    for &(col, width) in &bound_rows {
        let mut row = vec![0.0; ncols];
        row[col] = 1.0;
        le_rows.push((row, width));
    }
    let eq_rows: Vec<(Vec<f64>, f64)> = lp.eq.iter().map(|(r, b)| translate(r, *b)).collect();

    let nle = le_rows.len();
    let m = nle + eq_rows.len();
    let slack0 = ncols;
    let art0 = slack0 + nle;
    let needs_art: Vec<bool> = le_rows
        .iter()
        .map(|(_, b)| *b < 0.0)
        .chain(eq_rows.iter().map(|_| true))
        .collect();
    let nart = needs_art.iter().filter(|&&a| a).count();
    let width = art0 + nart + 1;

    let mut data = vec![0.0; m * width];
    let mut basis = vec![0usize; m];
    let mut next_art = art0;
    for (r, (row, b)) in le_rows.iter().chain(&eq_rows).enumerate() {
        let cells = &mut data[r * width..(r + 1) * width];
        cells[..ncols].copy_from_slice(row);
        cells[width - 1] = *b;
        if r < nle {
            cells[slack0 + r] = 1.0;
        }
        if *b < 0.0 {
            for v in cells.iter_mut() {
                *v = -*v;
            }
        }
        if needs_art[r] {
            cells[next_art] = 1.0;
            basis[r] = next_art;
            next_art += 1;
        } else {
            basis[r] = slack0 + r;
        }
    }

    let mut tab = Tableau {
        rows: m,
        width,
        data,
        obj: Vec::new(),
        basis,
    };
    let mut iterations = 0usize;
    let rhs_scale = 1.0
        + tab
            .data
            .chunks(width)
            .map(|row| row[width - 1].abs())
            .fold(0.0, f64::max);

    if nart > 0 {
        let mut cost = vec![0.0; width - 1];
        for c in &mut cost[art0..] {
            *c = 1.0;
        }
        tab.load_costs(&cost);
        tab.optimize(width - 1, opts, &mut iterations)?;
        let infeasibility = -tab.obj[width - 1];
        if infeasibility > opts.feas_tol * rhs_scale {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                x: Vec::new(),
                objective_value: f64::INFINITY,
                iterations,
            });
        }
        // Drive remaining artificials out of the basis; rows where that is
        // impossible are linearly dependent and dropped.
        let mut r = 0;
        while r < tab.rows {
            if tab.basis[r] >= art0 {
                let mut best: Option<(usize, f64)> = None;
                for j in 0..art0 {
                    let a = tab.at(r, j).abs();
                    if a > opts.pivot_tol && best.is_none_or(|(_, b)| a > b) {
                        best = Some((j, a));
                    }
                }
                match best {
                    Some((j, _)) => {
                        tab.pivot(r, j);
                        r += 1;
                    }
                    None => tab.drop_row(r),
                }
            } else {
                r += 1;
            }
        }
    }

    let mut cost = vec![0.0; width - 1];
    for (j, map) in maps.iter().enumerate() {
        let c = lp.objective[j];
        match *map {
            VarMap::Shift { col, .. } => cost[col] = c,
            VarMap::Flip { col, .. } => cost[col] = -c,
            VarMap::Split { pos, neg } => {
                cost[pos] = c;
                cost[neg] = -c;
            }
        }
    }
    tab.load_costs(&cost);
    if !tab.optimize(art0, opts, &mut iterations)? {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            x: Vec::new(),
            objective_value: f64::NEG_INFINITY,
            iterations,
        });
    }

    let mut std_x = vec![0.0; width - 1];
    for r in 0..tab.rows {
        std_x[tab.basis[r]] = tab.at(r, width - 1);
    }
    let x: Vec<f64> = maps
        .iter()
        .map(|map| match *map {
            VarMap::Shift { col, lo } => lo + std_x[col],
            VarMap::Flip { col, hi } => hi - std_x[col],
            VarMap::Split { pos, neg } => std_x[pos] - std_x[neg],
        })
        .collect();
    let objective_value = lp.evaluate(&x);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        objective_value,
        iterations,
    })
}
