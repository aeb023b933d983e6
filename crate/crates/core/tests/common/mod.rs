//! Fixtures and random generators shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

pub mod oracle;

use ladpref::{NeutralElement, Scale, Trfn, Trfpr, Trmpr};
use rand::Rng;

pub fn t(a: f64, b: f64, c: f64, d: f64) -> Trfn {
    Trfn::new(a, b, c, d).unwrap()
}

pub fn p9(e: f64) -> f64 {
    9f64.powf(e)
}

pub fn nine() -> Scale {
    Scale::new(9).unwrap()
}

pub fn t0() -> NeutralElement {
    NeutralElement::additive(t(0.4, 0.5, 0.5, 0.6)).unwrap()
}

pub fn s0() -> NeutralElement {
    t0().to_multiplicative(nine()).unwrap()
}

fn additive(upper: &[[f64; 4]], n: usize, neutral: NeutralElement) -> Trfpr {
    let mut rows = vec![vec![neutral.value(); n]; n];
    let mut it = upper.iter();
    for i in 0..n {
        for j in i + 1..n {
            let [a, b, c, d] = *it.next().unwrap();
            rows[i][j] = t(a, b, c, d);
            rows[j][i] = rows[i][j].negate();
        }
    }
    Trfpr::new(rows, neutral).unwrap()
}

/// A three-alternative relation with one inconsistent triple.
pub fn base() -> Trfpr {
    additive(
        &[
            [0.6, 0.7, 0.7, 0.8],
            [0.6, 0.7, 0.8, 0.9],
            [0.5, 0.6, 0.7, 0.8],
        ],
        3,
        t0(),
    )
}

/// A consistent relation induced by utilities (0.3,0.3,0.3,0.5),
/// (0.1,0.1,0.1,0.3), (0,0,0,0.2).
pub fn consistent() -> Trfpr {
    additive(
        &[
            [0.6, 0.7, 0.7, 0.8],
            [0.7, 0.8, 0.8, 0.9],
            [0.5, 0.6, 0.6, 0.7],
        ],
        3,
        t0(),
    )
}

/// `base` on the 1/9..9 scale, entered as powers of nine.
pub fn ratio_form() -> Trmpr {
    let s = s0().value();
    let e = |a: f64, b: f64, c: f64, d: f64| t(p9(a), p9(b), p9(c), p9(d));
    let rows = vec![
        vec![s, e(0.2, 0.4, 0.4, 0.6), e(0.2, 0.4, 0.6, 0.8)],
        vec![e(-0.6, -0.4, -0.4, -0.2), s, e(0.0, 0.2, 0.4, 0.6)],
        vec![e(-0.8, -0.6, -0.4, -0.2), e(-0.6, -0.4, -0.2, 0.0), s],
    ];
    Trmpr::new(rows, s0()).unwrap()
}

type Row = [[f64; 4]; 4];

fn multiplicative(rows: [Row; 4]) -> Trmpr {
    let s = s0().value();
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, &[a, b, c, d])| if i == j { s } else { t(a, b, c, d) })
                .collect()
        })
        .collect();
    Trmpr::new(rows, s0()).unwrap()
}

const D: [f64; 4] = [0.0; 4];

/// Land-development case study, criterion 1.
pub fn y1() -> Trmpr {
    let third = 1.0 / 3.0;
    multiplicative([
        [
            D,
            [third, 0.5, 0.5, 1.0],
            [2.0, 3.0, 3.0, 4.0],
            [3.0, 4.0, 5.0, 6.0],
        ],
        [
            [1.0, 2.0, 2.0, 3.0],
            D,
            [4.0, 5.0, 6.0, 7.0],
            [5.0, 6.0, 7.0, 8.0],
        ],
        [
            [0.25, third, third, 0.5],
            [1.0 / 7.0, 1.0 / 6.0, 0.2, 0.25],
            D,
            [1.0, 1.0, 2.0, 3.0],
        ],
        [
            [1.0 / 6.0, 0.2, 0.25, third],
            [0.125, 1.0 / 7.0, 1.0 / 6.0, 0.2],
            [third, 0.5, 1.0, 1.0],
            D,
        ],
    ])
}

/// Land-development case study, criterion 2.
pub fn y2() -> Trmpr {
    let third = 1.0 / 3.0;
    multiplicative([
        [
            D,
            [2.0, 3.0, 4.0, 5.0],
            [5.0, 6.0, 7.0, 8.0],
            [1.0, 1.0, 2.0, 3.0],
        ],
        [
            [0.2, 0.25, third, 0.5],
            D,
            [3.0, 4.0, 4.0, 5.0],
            [third, 0.5, 0.5, 1.0],
        ],
        [
            [0.125, 1.0 / 7.0, 1.0 / 6.0, 0.2],
            [0.2, 0.25, 0.25, third],
            D,
            [1.0 / 6.0, 0.2, 0.25, third],
        ],
        [
            [third, 0.5, 1.0, 1.0],
            [1.0, 2.0, 2.0, 3.0],
            [3.0, 4.0, 5.0, 6.0],
            D,
        ],
    ])
}

/// Land-development case study, criterion 3.
pub fn y3() -> Trmpr {
    let third = 1.0 / 3.0;
    multiplicative([
        [
            D,
            [2.0, 3.0, 3.0, 4.0],
            [6.0, 7.0, 7.0, 8.0],
            [4.0, 5.0, 5.0, 6.0],
        ],
        [
            [0.25, third, third, 0.5],
            D,
            [4.0, 5.0, 5.0, 6.0],
            [2.0, 3.0, 3.0, 4.0],
        ],
        [
            [0.125, 1.0 / 7.0, 1.0 / 7.0, 1.0 / 6.0],
            [1.0 / 6.0, 0.2, 0.2, 0.25],
            D,
            [third, third, 0.5, 0.5],
        ],
        [
            [1.0 / 6.0, 0.2, 0.2, 0.25],
            [0.25, third, third, 0.5],
            [2.0, 2.0, 3.0, 3.0],
            D,
        ],
    ])
}

pub fn close(x: &Trfn, y: &Trfn, tol: f64) -> bool {
    x.components()
        .iter()
        .zip(y.components())
        .all(|(p, q)| (p - q).abs() <= tol)
}

pub fn max_diff(x: &Trfn, y: &Trfn) -> f64 {
    x.components()
        .iter()
        .zip(y.components())
        .map(|(p, q)| (p - q).abs())
        .fold(0.0, f64::max)
}

/// Four sorted draws from `[lo, hi]`.
pub fn random_trfn<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> Trfn {
    let mut v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(lo..=hi));
    v.sort_by(f64::total_cmp);
    t(v[0], v[1], v[2], v[3])
}

/// A symmetric additive neutral element `(a, b, 1-b, 1-a)`.
pub fn random_neutral<R: Rng>(rng: &mut R) -> NeutralElement {
    let a = rng.gen_range(0.2..=0.5);
    let b = rng.gen_range(a..=0.5);
    NeutralElement::additive(t(a, b, 1.0 - b, 1.0 - a)).unwrap()
}

/// Any relation with random upper-triangle entries.
pub fn random_relation<R: Rng>(rng: &mut R, n: usize, neutral: NeutralElement) -> Trfpr {
    let mut rows = vec![vec![neutral.value(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            rows[i][j] = random_trfn(rng, 0.0, 1.0);
            rows[j][i] = rows[i][j].negate();
        }
    }
    Trfpr::new(rows, neutral).unwrap()
}

/// Utilities that carry the neutral element's spreads, so that they induce a
/// consistent relation. Drawn until the relation fits in `[0, 1]`.
pub fn random_consistent_utilities<R: Rng>(
    rng: &mut R,
    n: usize,
    neutral: NeutralElement,
) -> Vec<Trfn> {
    let [a0, b0, c0, d0] = neutral.value().components();
    let outer = d0 - a0;
    let inner = c0 - b0;
    loop {
        let u: Vec<Trfn> = (0..n)
            .map(|_| {
                let p = rng.gen_range(0.0..0.4);
                let q = p + rng.gen_range(0.0..=(outer - inner));
                Trfn::new(p, q, q + inner, p + outer).unwrap()
            })
            .collect();
        if ladpref::from_utilities(&u, neutral).is_ok() {
            return u;
        }
    }
}

pub fn random_consistent<R: Rng>(rng: &mut R, n: usize, neutral: NeutralElement) -> Trfpr {
    let u = random_consistent_utilities(rng, n, neutral);
    ladpref::from_utilities(&u, neutral).unwrap()
}
