//! Trapezoidal fuzzy numbers.
//!
//! A [`Trfn`] is the 4-tuple `(a, b, c, d)` with `a <= b <= c <= d`: full
//! membership on `[b, c]`, linear shoulders down to zero at `a` and `d`.
//! Shape is validated once on construction; every operation here preserves
//! it by construction.

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute band within which two magnitudes rank as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// A trapezoidal fuzzy number `T(a, b, c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct Trfn {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Trfn {
    /// Builds a trapezoid, rejecting any out-of-order component.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if ![a, b, c, d].iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if a > b || b > c || c > d {
            return Err(Error::NotTrapezoid { a, b, c, d });
        }
        Ok(Self { a, b, c, d })
    }

    /// Crisp number `T(x, x, x, x)`.
    pub fn crisp(x: f64) -> Self {
        Self {
            a: x,
            b: x,
            c: x,
            d: x,
        }
    }

    /// Skips validation; callers guarantee ordering.
    pub(crate) const fn from_ordered(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    /// Rebuilds a trapezoid from solver output, where components may be out
    /// of order by rounding noise. Each component is lifted to at least the
    /// previous one.
    pub(crate) fn from_noisy([a, b, c, d]: [f64; 4]) -> Self {
        let b = b.max(a);
        let c = c.max(b);
        let d = d.max(c);
        Self { a, b, c, d }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn components(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_positive(&self) -> bool {
        self.a > 0.0
    }

    /// Componentwise map through a non-decreasing function, which keeps the
    /// trapezoid ordered.
    pub(crate) fn map_monotone(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_noisy([f(self.a), f(self.b), f(self.c), f(self.d)])
    }

    /// `r * T` for `r > 0`.
    pub fn scale(&self, r: f64) -> Result<Self> {
        if !r.is_finite() || r <= 0.0 {
            return Err(Error::NonPositiveScale(r));
        }
        Ok(Self::from_ordered(
            r * self.a,
            r * self.b,
            r * self.c,
            r * self.d,
        ))
    }

    /// Componentwise product on positive trapezoids.
    pub fn mul(&self, other: &Trfn) -> Result<Self> {
        self.require_positive()?;
        other.require_positive()?;
        Ok(Self::from_ordered(
            self.a * other.a,
            self.b * other.b,
            self.c * other.c,
            self.d * other.d,
        ))
    }

    /// Standard negation `T(1 - d, 1 - c, 1 - b, 1 - a)`, defined on all of
    /// the real line.
    pub fn negate(&self) -> Self {
        Self::from_ordered(1.0 - self.d, 1.0 - self.c, 1.0 - self.b, 1.0 - self.a)
    }

    /// Multiplicative inverse `T(1/d, 1/c, 1/b, 1/a)`.
    pub fn invert(&self) -> Result<Self> {
        self.require_positive()?;
        Ok(Self::from_ordered(
            1.0 / self.d,
            1.0 / self.c,
            1.0 / self.b,
            1.0 / self.a,
        ))
    }

    /// Normalized Manhattan distance.
    pub fn distance(&self, other: &Trfn) -> f64 {
        ((self.a - other.a).abs()
            + (self.b - other.b).abs()
            + (self.c - other.c).abs()
            + (self.d - other.d).abs())
            / 4.0
    }

    /// Weighted magnitude `w1 (a + d) + w2 (b + c)`.
    pub fn magnitude(&self, w: MagWeights) -> f64 {
        w.w1 * (self.a + self.d) + w.w2 * (self.b + self.c)
    }

    fn require_positive(&self) -> Result<()> {
        if self.is_positive() {
            Ok(())
        } else {
            Err(Error::NotPositive {
                a: self.a,
                b: self.b,
                c: self.c,
                d: self.d,
            })
        }
    }
}

impl Add for Trfn {
    type Output = Trfn;

    fn add(self, rhs: Trfn) -> Trfn {
        Trfn::from_ordered(
            self.a + rhs.a,
            self.b + rhs.b,
            self.c + rhs.c,
            self.d + rhs.d,
        )
    }
}

impl Sub for Trfn {
    type Output = Trfn;

    /// `(a1 - d2, b1 - c2, c1 - b2, d1 - a2)`.
    fn sub(self, rhs: Trfn) -> Trfn {
        Trfn::from_ordered(
            self.a - rhs.d,
            self.b - rhs.c,
            self.c - rhs.b,
            self.d - rhs.a,
        )
    }
}

impl TryFrom<[f64; 4]> for Trfn {
    type Error = Error;

    fn try_from([a, b, c, d]: [f64; 4]) -> Result<Self> {
        Trfn::new(a, b, c, d)
    }
}

impl From<Trfn> for [f64; 4] {
    fn from(t: Trfn) -> Self {
        t.components()
    }
}

impl fmt::Display for Trfn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(
                f,
                "T({:.p$}, {:.p$}, {:.p$}, {:.p$})",
                self.a, self.b, self.c, self.d
            ),
            None => write!(f, "T({}, {}, {}, {})", self.a, self.b, self.c, self.d),
        }
    }
}

/// Weights of the magnitude ranking functional.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct MagWeights {
    w1: f64,
    w2: f64,
}

impl MagWeights {
    pub fn new(w1: f64, w2: f64) -> Result<Self> {
        if w1 > 0.0 && w2 > 0.0 && (2.0 * (w1 + w2) - 1.0).abs() <= 1e-12 {
            Ok(Self { w1, w2 })
        } else {
            Err(Error::InvalidMagWeights { w1, w2 })
        }
    }

    pub fn w1(&self) -> f64 {
        self.w1
    }

    pub fn w2(&self) -> f64 {
        self.w2
    }
}

/// `(a + 5b + 5c + d) / 12`.
impl Default for MagWeights {
    fn default() -> Self {
        Self {
            w1: 1.0 / 12.0,
            w2: 5.0 / 12.0,
        }
    }
}

impl TryFrom<[f64; 2]> for MagWeights {
    type Error = Error;

    fn try_from([w1, w2]: [f64; 2]) -> Result<Self> {
        MagWeights::new(w1, w2)
    }
}

impl From<MagWeights> for [f64; 2] {
    fn from(w: MagWeights) -> Self {
        [w.w1, w.w2]
    }
}

/// A descending order of alternatives, grouped into tie classes.
///
/// Indices are zero-based; `Display` renders them one-based as `A1 > A2 ~ A3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ranking {
    groups: Vec<Vec<usize>>,
}

impl Ranking {
    /// Tie classes, best first. Members of a class are in ascending index order.
    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// Flattened order, best first.
    pub fn order(&self) -> Vec<usize> {
        self.groups.iter().flatten().copied().collect()
    }

    /// Whether alternative `i` ranks strictly above `j`.
    pub fn prefers(&self, i: usize, j: usize) -> bool {
        let pos = |k| self.groups.iter().position(|g| g.contains(&k));
        matches!((pos(i), pos(j)), (Some(p), Some(q)) if p < q)
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (gi, group) in self.groups.iter().enumerate() {
            if gi > 0 {
                f.write_str(" > ")?;
            }
            for (mi, &k) in group.iter().enumerate() {
                if mi > 0 {
                    f.write_str(" ~ ")?;
                }
                write!(f, "A{}", k + 1)?;
            }
        }
        Ok(())
    }
}

/// Orders values by descending magnitude. Magnitudes within
/// [`TIE_TOLERANCE`] of a class leader join that class.
pub fn rank(values: &[Trfn], w: MagWeights) -> Ranking {
    rank_by_magnitude(&values.iter().map(|t| t.magnitude(w)).collect::<Vec<_>>())
}

pub(crate) fn rank_by_magnitude(mags: &[f64]) -> Ranking {
    let mut idx: Vec<usize> = (0..mags.len()).collect();
    idx.sort_by(|&i, &j| mags[j].total_cmp(&mags[i]).then(i.cmp(&j)));

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut leader = f64::NAN;
    for k in idx {
        match groups.last_mut() {
            Some(g) if leader - mags[k] <= TIE_TOLERANCE => g.push(k),
            _ => {
                leader = mags[k];
                groups.push(vec![k]);
            }
        }
    }
    for g in &mut groups {
        g.sort_unstable();
    }
    Ranking { groups }
}
