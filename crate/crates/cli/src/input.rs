//! Problem files.
//!
//! A problem is a single JSON document:
//!
//! ```json
//! {
//!   "kind": "multiplicative",
//!   "n": 3,
//!   "scale": 9,
//!   "neutral": ["9^-0.2", 1, 1, "9^0.2"],
//!   "matrix": [[[...], ...], ...],
//!   "sigma": [0.8, 0.9, 1.1, 1.2]
//! }
//! ```
//!
//! Numbers may be JSON numbers or strings holding a fraction (`"1/3"`), a
//! power (`"9^0.2"`) or a quotient of those.

use std::path::Path;

use ladpref::{GroupWeights, MagWeights, NeutralElement, Scale, Trfn, Trfpr, Trmpr};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Additive,
    Multiplicative,
    Ahp,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Value(f64),
    Text(String),
}

type RawMatrix = Vec<Vec<[Num; 4]>>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    kind: Kind,
    #[serde(default)]
    #[allow(dead_code)]
    description: Option<String>,
    n: Option<usize>,
    scale: Option<u32>,
    neutral: [Num; 4],
    matrix: Option<RawMatrix>,
    matrices: Option<Vec<RawMatrix>>,
    sigma: Option<[Num; 4]>,
    criteria_weights: Option<Vec<Num>>,
    mag_weights: Option<[Num; 2]>,
}

/// Shape written by `convert`; every number is a plain JSON number.
#[derive(Debug, Serialize)]
pub struct OutFile {
    pub kind: Kind,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<u32>,
    pub neutral: Trfn,
    pub matrix: Vec<Vec<Trfn>>,
}

#[derive(Debug, Clone)]
pub enum Relation {
    Additive(Trfpr),
    Multiplicative(Trmpr),
}

#[derive(Debug, Clone)]
pub enum Body {
    Single(Relation),
    Ahp {
        matrices: Vec<Trmpr>,
        criteria_weights: GroupWeights,
    },
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub body: Body,
    /// Raw components; validated when a command needs them.
    pub sigma: Option<[f64; 4]>,
    pub mag_weights: Option<MagWeights>,
}

/// Reads `"1/3"`, `"9^0.2"`, `"9^-0.2"`, `"1/9^0.2"` or a plain decimal.
pub fn eval_number(s: &str) -> Option<f64> {
    fn power(s: &str) -> Option<f64> {
        match s.split_once('^') {
            Some((b, e)) => Some(b.trim().parse::<f64>().ok()?.powf(e.trim().parse().ok()?)),
            None => s.trim().parse().ok(),
        }
    }
    let v = match s.split_once('/') {
        Some((num, den)) => power(num)? / power(den)?,
        None => power(s)?,
    };
    v.is_finite().then_some(v)
}

fn num(n: &Num, at: &dyn Fn() -> String) -> Result<f64> {
    match n {
        Num::Value(v) => Ok(*v),
        Num::Text(s) => eval_number(s)
            .ok_or_else(|| CliError::Parse(format!("{}: cannot read {s:?} as a number", at()))),
    }
}

fn quad(q: &[Num; 4], at: &dyn Fn() -> String) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (k, v) in q.iter().enumerate() {
        out[k] = num(v, &|| format!("{}, component {}", at(), k + 1))?;
    }
    Ok(out)
}

fn trfn(v: [f64; 4], at: &dyn Fn() -> String) -> Result<Trfn> {
    Trfn::new(v[0], v[1], v[2], v[3]).map_err(|e| CliError::Invalid(format!("{}: {e}", at())))
}

fn rows(raw: &RawMatrix, field: &str, n: Option<usize>) -> Result<Vec<Vec<Trfn>>> {
    let size = raw.len();
    if let Some(n) = n {
        if n != size {
            return Err(CliError::Invalid(format!(
                "field n is {n} but {field} has {size} rows"
            )));
        }
    }
    raw.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != size {
                return Err(CliError::Invalid(format!(
                    "{field} row {} has {} entries, expected {size}",
                    i + 1,
                    row.len()
                )));
            }
            row.iter()
                .enumerate()
                .map(|(j, q)| {
                    let at = || format!("{field} entry ({}, {})", i + 1, j + 1);
                    trfn(quad(q, &at)?, &at)
                })
                .collect()
        })
        .collect()
}

fn scale(raw: &RawFile) -> Result<Scale> {
    let m = raw.scale.ok_or_else(|| {
        CliError::Invalid("field scale is required for multiplicative and ahp files".into())
    })?;
    Scale::new(m).map_err(|e| CliError::Invalid(format!("field scale: {e}")))
}

fn mult_neutral(raw: &RawFile) -> Result<NeutralElement> {
    let at = || "field neutral".to_string();
    let t = trfn(quad(&raw.neutral, &at)?, &at)?;
    NeutralElement::multiplicative(t, scale(raw)?)
        .map_err(|e| CliError::Invalid(format!("field neutral: {e}")))
}

fn located(field: &str) -> impl Fn(ladpref::Error) -> CliError + '_ {
    move |e| CliError::Invalid(format!("{field}: {e}"))
}

pub fn parse(text: &str) -> Result<Problem> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;

    let sigma = match &raw.sigma {
        Some(q) => Some(quad(q, &|| "field sigma".into())?),
        None => None,
    };
    let mag_weights = match &raw.mag_weights {
        Some([w1, w2]) => {
            let at = || "field mag_weights".to_string();
            let (w1, w2) = (num(w1, &at)?, num(w2, &at)?);
            Some(MagWeights::new(w1, w2).map_err(located("field mag_weights"))?)
        }
        None => None,
    };

    let body = match raw.kind {
        Kind::Additive | Kind::Multiplicative => {
            if raw.matrices.is_some() || raw.criteria_weights.is_some() {
                return Err(CliError::Invalid(
                    "fields matrices and criteria_weights belong to ahp files".into(),
                ));
            }
            let matrix = raw
                .matrix
                .as_ref()
                .ok_or_else(|| CliError::Invalid("field matrix is missing".into()))?;
            let entries = rows(matrix, "matrix", raw.n)?;
            if raw.kind == Kind::Additive {
                let at = || "field neutral".to_string();
                let t = trfn(quad(&raw.neutral, &at)?, &at)?;
                let neutral = NeutralElement::additive(t).map_err(located("field neutral"))?;
                Body::Single(Relation::Additive(
                    Trfpr::new(entries, neutral).map_err(located("matrix"))?,
                ))
            } else {
                let neutral = mult_neutral(&raw)?;
                Body::Single(Relation::Multiplicative(
                    Trmpr::new(entries, neutral).map_err(located("matrix"))?,
                ))
            }
        }
        Kind::Ahp => {
            if raw.matrix.is_some() {
                return Err(CliError::Invalid(
                    "ahp files list their relations under matrices".into(),
                ));
            }
            let list = raw
                .matrices
                .as_ref()
                .ok_or_else(|| CliError::Invalid("field matrices is missing".into()))?;
            let neutral = mult_neutral(&raw)?;
            let matrices = list
                .iter()
                .enumerate()
                .map(|(k, m)| {
                    let field = format!("matrices[{}]", k + 1);
                    let entries = rows(m, &field, raw.n)?;
                    Trmpr::new(entries, neutral)
                        .map_err(|e| CliError::Invalid(format!("{field}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let weights = raw
                .criteria_weights
                .as_ref()
                .ok_or_else(|| CliError::Invalid("field criteria_weights is missing".into()))?
                .iter()
                .enumerate()
                .map(|(k, w)| num(w, &|| format!("criteria_weights[{}]", k + 1)))
                .collect::<Result<Vec<_>>>()?;
            let criteria_weights =
                GroupWeights::new(weights).map_err(located("field criteria_weights"))?;
            Body::Ahp {
                matrices,
                criteria_weights,
            }
        }
    };
    Ok(Problem {
        body,
        sigma,
        mag_weights,
    })
}

pub fn load(path: &Path) -> Result<Problem> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}

/// Reads a comma-separated list of numbers given on the command line.
pub fn parse_list<const N: usize>(s: &str, flag: &str) -> Result<[f64; N]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(CliError::Parse(format!(
            "--{flag} expects {N} comma-separated numbers, got {s:?}"
        )));
    }
    let mut out = [0.0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = eval_number(p)
            .ok_or_else(|| CliError::Parse(format!("--{flag}: cannot read {p:?} as a number")))?;
    }
    Ok(out)
}
