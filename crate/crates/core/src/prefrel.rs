//! Trapezoidal fuzzy preference relations on the additive and multiplicative
//! scales, their neutral elements, consistency checks and the scale
//! bijection `phi(x) = m^(2x - 1)` between them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trfn::Trfn;

/// Absolute tolerance for additive reciprocity, diagonal and range checks.
pub const ADDITIVE_TOL: f64 = 1e-12;

/// Relative tolerance for multiplicative reciprocity, diagonal and neutral
/// checks. Entries such as `9^0.2` are irrational, so exact comparison is
/// impossible.
pub const MULTIPLICATIVE_TOL: f64 = 1e-9;

/// Default threshold below which a triple counts as consistent.
pub const CONSISTENCY_TOL: f64 = 1e-9;

/// Ratio scale `m` of a multiplicative relation; an integer `>= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Scale(u32);

impl Scale {
    pub fn new(m: u32) -> Result<Self> {
        if m >= 2 {
            Ok(Self(m))
        } else {
            Err(Error::InvalidScale(m))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0)
    }
}

impl TryFrom<u32> for Scale {
    type Error = Error;

    fn try_from(m: u32) -> Result<Self> {
        Scale::new(m)
    }
}

impl From<Scale> for u32 {
    fn from(s: Scale) -> u32 {
        s.0
    }
}

/// Maps an additive preference in `[0, 1]` to the ratio scale `[1/m, m]`.
pub fn phi(x: f64, m: Scale) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange {
            value: x,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(phi_unchecked(x, m))
}

/// Inverse of [`phi`]: `1/2 + 1/2 log_m y`.
pub fn phi_inv(y: f64, m: Scale) -> Result<f64> {
    let (lo, hi) = (1.0 / m.as_f64(), m.as_f64());
    if !(y >= lo && y <= hi) {
        return Err(Error::OutOfRange { value: y, lo, hi });
    }
    Ok(phi_inv_unchecked(y, m))
}

fn phi_unchecked(x: f64, m: Scale) -> f64 {
    m.as_f64().powf(2.0 * x - 1.0)
}

fn phi_inv_unchecked(y: f64, m: Scale) -> f64 {
    (0.5 + 0.5 * y.ln() / m.as_f64().ln()).clamp(0.0, 1.0)
}

fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
}

fn trfn_rel_close(x: &Trfn, y: &Trfn, tol: f64) -> bool {
    x.components()
        .iter()
        .zip(y.components())
        .all(|(p, q)| rel_close(*p, q, tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NeutralKind {
    Additive,
    Multiplicative,
}

/// Fuzzy indifference: a fixed point of negation (additive) or of inversion
/// (multiplicative).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NeutralElement {
    value: Trfn,
    kind: NeutralKind,
    scale: Option<Scale>,
}

impl NeutralElement {
    /// Validates `a + d = 1`, `b + c = 1` and `value` in `[0, 1]`.
    pub fn additive(value: Trfn) -> Result<Self> {
        let [a, b, c, d] = value.components();
        if a < -ADDITIVE_TOL || d > 1.0 + ADDITIVE_TOL {
            return Err(Error::InvalidNeutral(format!(
                "{value} is not contained in [0, 1]"
            )));
        }
        if (a + d - 1.0).abs() > ADDITIVE_TOL {
            return Err(Error::InvalidNeutral(format!(
                "{value} is not a fixed point of negation (a + d = {} != 1)",
                a + d
            )));
        }
        if (b + c - 1.0).abs() > ADDITIVE_TOL {
            return Err(Error::InvalidNeutral(format!(
                "{value} is not a fixed point of negation (b + c = {} != 1)",
                b + c
            )));
        }
        Ok(Self {
            value,
            kind: NeutralKind::Additive,
            scale: None,
        })
    }

    /// Validates `a * d = 1`, `b * c = 1` and `value` in `[1/m, m]`.
    pub fn multiplicative(value: Trfn, scale: Scale) -> Result<Self> {
        let [a, b, c, d] = value.components();
        let m = scale.as_f64();
        if !value.is_positive() {
            return Err(Error::InvalidNeutral(format!("{value} is not positive")));
        }
        if a < (1.0 / m) * (1.0 - MULTIPLICATIVE_TOL) || d > m * (1.0 + MULTIPLICATIVE_TOL) {
            return Err(Error::InvalidNeutral(format!(
                "{value} is not contained in [1/{m}, {m}]"
            )));
        }
        if !rel_close(a * d, 1.0, MULTIPLICATIVE_TOL) || !rel_close(b * c, 1.0, MULTIPLICATIVE_TOL)
        {
            return Err(Error::InvalidNeutral(format!(
                "{value} is not a fixed point of inversion"
            )));
        }
        Ok(Self {
            value,
            kind: NeutralKind::Multiplicative,
            scale: Some(scale),
        })
    }

    pub fn value(&self) -> Trfn {
        self.value
    }

    pub fn kind(&self) -> NeutralKind {
        self.kind
    }

    pub fn scale(&self) -> Option<Scale> {
        self.scale
    }

    /// `phi` applied componentwise; additive elements only.
    pub fn to_multiplicative(&self, m: Scale) -> Result<Self> {
        self.expect(NeutralKind::Additive)?;
        Self::multiplicative(self.value.map_monotone(|x| phi_unchecked(x, m)), m)
    }

    /// `phi_inv` applied componentwise; multiplicative elements only.
    pub fn to_additive(&self) -> Result<Self> {
        self.expect(NeutralKind::Multiplicative)?;
        let m = self.scale.expect("multiplicative neutral carries a scale");
        let [a, b, _, _] = self.value.components();
        let lo = [phi_inv_unchecked(a, m), phi_inv_unchecked(b, m)];
        // Symmetric by construction; rebuilt from the lower half so the
        // fixed-point identities hold to the last bit.
        Self::additive(Trfn::from_noisy([lo[0], lo[1], 1.0 - lo[1], 1.0 - lo[0]]))
    }

    fn expect(&self, kind: NeutralKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::InvalidNeutral(format!(
                "expected a {kind:?} neutral element, got {:?}",
                self.kind
            )))
        }
    }
}

/// Outcome of a consistency check over all `n^3` triples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub max_violation: f64,
    /// Zero-based `(i, j, k)` attaining `max_violation`, preferring triples of
    /// distinct alternatives when several tie.
    pub worst_triple: (usize, usize, usize),
}

fn report(n: usize, tol: f64, violation: impl Fn(usize, usize, usize) -> f64) -> ConsistencyReport {
    let mut max_violation = 0.0;
    let mut worst_triple = (0, 0, 0);
    let mut worst_distinct = false;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = violation(i, j, k);
                let distinct = i != j && j != k && i != k;
                // Round-off ties go to triples of distinct alternatives,
                // which are more informative than the degenerate ones.
                let tie = (v - max_violation).abs() <= 1e-12 * max_violation.max(1.0);
                let better = if tie {
                    distinct && !worst_distinct && v > 0.0
                } else {
                    v > max_violation
                };
                if better {
                    worst_triple = (i, j, k);
                    worst_distinct = distinct;
                }
                max_violation = f64::max(max_violation, v);
            }
        }
    }
    ConsistencyReport {
        consistent: max_violation <= tol,
        max_violation,
        worst_triple,
    }
}

fn check_square(rows: &[Vec<Trfn>]) -> Result<usize> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare {
                row: row + 1,
                len: r.len(),
                n,
            });
        }
    }
    Ok(n)
}

/// Additive trapezoidal fuzzy preference relation.
///
/// Diagonal entries equal the neutral element and `x_ji` is the negation of
/// `x_ij`. Every entry lies in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trfpr {
    n: usize,
    entries: Vec<Trfn>,
    neutral: NeutralElement,
}

impl Trfpr {
    pub fn new(rows: Vec<Vec<Trfn>>, neutral: NeutralElement) -> Result<Self> {
        if neutral.kind() != NeutralKind::Additive {
            return Err(Error::InvalidNeutral(
                "an additive relation needs an additive neutral element".into(),
            ));
        }
        let n = check_square(&rows)?;
        let entries: Vec<Trfn> = rows.into_iter().flatten().collect();
        let t0 = neutral.value();
        for i in 0..n {
            for j in 0..n {
                let x = entries[i * n + j];
                if x.a() < -ADDITIVE_TOL || x.d() > 1.0 + ADDITIVE_TOL {
                    return Err(Error::InvalidEntry {
                        row: i + 1,
                        col: j + 1,
                        reason: format!("{x} is not contained in [0, 1]"),
                    });
                }
            }
        }
        for k in 0..n {
            if entries[k * n + k].distance(&t0) * 4.0 > 4.0 * ADDITIVE_TOL {
                return Err(Error::Diagonal { k: k + 1 });
            }
        }
        for i in 0..n {
            for j in 0..i {
                let neg = entries[j * n + i].negate();
                let got = entries[i * n + j];
                if !neg
                    .components()
                    .iter()
                    .zip(got.components())
                    .all(|(p, q)| (p - q).abs() <= ADDITIVE_TOL)
                {
                    return Err(Error::Reciprocity {
                        row: i + 1,
                        col: j + 1,
                        relation: "negation",
                    });
                }
            }
        }
        Ok(Self {
            n,
            entries,
            neutral,
        })
    }

    /// Builds a relation from its strict upper triangle; the diagonal is the
    /// neutral element and the lower triangle the negated upper one.
    pub(crate) fn from_upper(
        n: usize,
        neutral: NeutralElement,
        upper: impl Fn(usize, usize) -> Trfn,
    ) -> Result<Self> {
        let t0 = neutral.value();
        let mut rows = vec![vec![t0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let x = upper(i, j);
                rows[i][j] = x;
                rows[j][i] = x.negate();
            }
        }
        Self::new(rows, neutral)
    }

    /// All entries equal to the neutral element.
    pub fn indifferent(n: usize, neutral: NeutralElement) -> Result<Self> {
        Self::from_upper(n, neutral, |_, _| neutral.value())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Trfn {
        self.entries[i * self.n + j]
    }

    pub fn neutral(&self) -> NeutralElement {
        self.neutral
    }

    pub fn rows(&self) -> Vec<Vec<Trfn>> {
        self.entries.chunks(self.n).map(<[Trfn]>::to_vec).collect()
    }

    /// Column `k`, i.e. `x_ik` for every `i`.
    pub fn column(&self, k: usize) -> Vec<Trfn> {
        (0..self.n).map(|i| self.get(i, k)).collect()
    }

    /// `d(x_ij + T0, x_ik + x_kj)`.
    pub fn triple_violation(&self, i: usize, j: usize, k: usize) -> f64 {
        let lhs = self.get(i, j) + self.neutral.value();
        let rhs = self.get(i, k) + self.get(k, j);
        lhs.distance(&rhs)
    }

    pub fn check_consistency(&self, tol: f64) -> ConsistencyReport {
        report(self.n, tol, |i, j, k| self.triple_violation(i, j, k))
    }

    /// Componentwise `phi` image on the ratio scale `m`.
    pub fn to_multiplicative(&self, m: Scale) -> Result<Trmpr> {
        let neutral = self.neutral.to_multiplicative(m)?;
        Trmpr::from_upper(self.n, neutral, |i, j| {
            self.get(i, j).map_monotone(|x| phi_unchecked(x, m))
        })
    }
}

/// Multiplicative trapezoidal fuzzy preference relation on scale `m`.
///
/// Diagonal entries equal the multiplicative neutral element and `y_ij` is
/// the inverse of `y_ji`. Every entry lies in `[1/m, m]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trmpr {
    n: usize,
    scale: Scale,
    entries: Vec<Trfn>,
    neutral: NeutralElement,
}

impl Trmpr {
    pub fn new(rows: Vec<Vec<Trfn>>, neutral: NeutralElement) -> Result<Self> {
        let scale = match (neutral.kind(), neutral.scale()) {
            (NeutralKind::Multiplicative, Some(s)) => s,
            _ => {
                return Err(Error::InvalidNeutral(
                    "a multiplicative relation needs a multiplicative neutral element".into(),
                ))
            }
        };
        let n = check_square(&rows)?;
        let entries: Vec<Trfn> = rows.into_iter().flatten().collect();
        let m = scale.as_f64();
        for i in 0..n {
            for j in 0..n {
                let y = entries[i * n + j];
                if !y.is_positive()
                    || y.a() < (1.0 / m) * (1.0 - MULTIPLICATIVE_TOL)
                    || y.d() > m * (1.0 + MULTIPLICATIVE_TOL)
                {
                    return Err(Error::InvalidEntry {
                        row: i + 1,
                        col: j + 1,
                        reason: format!("{y} is not contained in [1/{m}, {m}]"),
                    });
                }
            }
        }
        for k in 0..n {
            if !trfn_rel_close(&entries[k * n + k], &neutral.value(), MULTIPLICATIVE_TOL) {
                return Err(Error::Diagonal { k: k + 1 });
            }
        }
        for i in 0..n {
            for j in 0..i {
                let inv = entries[j * n + i].invert()?;
                if !trfn_rel_close(&inv, &entries[i * n + j], MULTIPLICATIVE_TOL) {
                    return Err(Error::Reciprocity {
                        row: i + 1,
                        col: j + 1,
                        relation: "inverse",
                    });
                }
            }
        }
        Ok(Self {
            n,
            scale,
            entries,
            neutral,
        })
    }

    pub(crate) fn from_upper(
        n: usize,
        neutral: NeutralElement,
        upper: impl Fn(usize, usize) -> Trfn,
    ) -> Result<Self> {
        let s0 = neutral.value();
        let mut rows = vec![vec![s0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let y = upper(i, j);
                rows[i][j] = y;
                rows[j][i] = y.invert()?;
            }
        }
        Self::new(rows, neutral)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    pub fn get(&self, i: usize, j: usize) -> Trfn {
        self.entries[i * self.n + j]
    }

    pub fn neutral(&self) -> NeutralElement {
        self.neutral
    }

    pub fn rows(&self) -> Vec<Vec<Trfn>> {
        self.entries.chunks(self.n).map(<[Trfn]>::to_vec).collect()
    }

    /// `d(y_ij * S0, y_ik * y_kj)`.
    pub fn triple_violation(&self, i: usize, j: usize, k: usize) -> f64 {
        let s0 = self.neutral.value();
        let lhs = self.get(i, j).mul(&s0).expect("validated positive");
        let rhs = self
            .get(i, k)
            .mul(&self.get(k, j))
            .expect("validated positive");
        lhs.distance(&rhs)
    }

    pub fn check_consistency(&self, tol: f64) -> ConsistencyReport {
        report(self.n, tol, |i, j, k| self.triple_violation(i, j, k))
    }

    /// Componentwise `phi_inv` image on the additive scale.
    pub fn to_additive(&self) -> Result<Trfpr> {
        let neutral = self.neutral.to_additive()?;
        let m = self.scale;
        Trfpr::from_upper(self.n, neutral, |i, j| {
            self.get(i, j).map_monotone(|y| phi_inv_unchecked(y, m))
        })
    }
}

/// Builds the fully consistent relation `x_ij + T0 = u_i + u_j°` induced by a
/// utility vector.
///
/// Componentwise `x_ij = u_i + 1 - mirror(u_j) - T0`, where the mirror pairs
/// `a <-> d` and `b <-> c`. The diagonal only reproduces `T0` when every
/// utility has the same spreads `d - a` and `c - b` as `T0`; other vectors
/// are rejected.
pub fn from_utilities(utilities: &[Trfn], neutral: NeutralElement) -> Result<Trfpr> {
    if neutral.kind() != NeutralKind::Additive {
        return Err(Error::InvalidNeutral(
            "utilities induce an additive relation".into(),
        ));
    }
    let n = utilities.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    let t0 = neutral.value().components();
    let entry = |i: usize, j: usize| -> [f64; 4] {
        let ui = utilities[i].components();
        let uj = utilities[j].components();
        std::array::from_fn(|k| ui[k] + 1.0 - uj[3 - k] - t0[k])
    };

    const TOL: f64 = 1e-9;
    for k in 0..n {
        let diag = entry(k, k);
        if diag.iter().zip(t0).any(|(p, q)| (p - q).abs() > TOL) {
            return Err(Error::InvalidArgument(format!(
                "utility {} has spreads incompatible with the neutral element",
                k + 1
            )));
        }
    }
    let mut rows = vec![vec![neutral.value(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let x = entry(i, j);
            if x.windows(2).any(|w| w[0] > w[1] + TOL) {
                return Err(Error::InvalidEntry {
                    row: i + 1,
                    col: j + 1,
                    reason: "utilities induce a non-trapezoidal entry".into(),
                });
            }
            if x[0] < -TOL || x[3] > 1.0 + TOL {
                return Err(Error::OutOfUnitInterval {
                    row: i + 1,
                    col: j + 1,
                });
            }
            rows[i][j] = Trfn::from_noisy(x.map(|v| v.clamp(0.0, 1.0)));
        }
    }
    for i in 0..n {
        for j in 0..i {
            rows[i][j] = rows[j][i].negate();
        }
    }
    Trfpr::new(rows, neutral)
}
