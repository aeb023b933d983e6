use std::fmt::Write as _;
use std::path::Path;

use ladpref::{
    amm_weights, derive_utility, derive_weights, deviation, gmm_weights, rank, run_ahp,
    shift_normalize, AhpProblem, ConsistencyReport, MagWeights, Model, Scale, SigmaConstraint,
    Trfn, Trfpr, Trmpr, UtilityVector, Variant,
};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::input::{Body, Kind, OutFile, Problem, Relation};

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub json: bool,
    pub tol: f64,
    pub mag_weights: Option<MagWeights>,
}

impl Context {
    fn mag(&self, p: &Problem) -> MagWeights {
        self.mag_weights.or(p.mag_weights).unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelArg {
    P0,
    P,
    PUnit,
    PSigma,
}

/// Four decimals, with negative zero printed as zero.
pub fn fmt4(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

pub fn fmt_trfn(t: &Trfn) -> String {
    let [a, b, c, d] = t.components().map(fmt4);
    format!("T({a}, {b}, {c}, {d})")
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output is serializable");
    s.push('\n');
    s
}

fn sigma_of(flag: Option<[f64; 4]>, p: &Problem) -> Result<SigmaConstraint> {
    let [a, b, c, d] = flag.or(p.sigma).ok_or_else(|| {
        CliError::Invalid(
            "a total utility is required: pass --sigma or set sigma in the file".into(),
        )
    })?;
    Ok(SigmaConstraint::new(a, b, c, d)?)
}

pub fn validate(p: &Problem, ctx: &Context) -> Result<String> {
    let (kind, n, criteria) = match &p.body {
        Body::Single(Relation::Additive(x)) => ("additive", x.n(), None),
        Body::Single(Relation::Multiplicative(y)) => ("multiplicative", y.n(), None),
        Body::Ahp { matrices, .. } => ("ahp", matrices[0].n(), Some(matrices.len())),
    };
    if ctx.json {
        #[derive(Serialize)]
        struct Out<'a> {
            valid: bool,
            kind: &'a str,
            n: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            criteria: Option<usize>,
        }
        return Ok(to_json(&Out {
            valid: true,
            kind,
            n,
            criteria,
        }));
    }
    Ok(match criteria {
        Some(k) => format!("valid ahp problem: {k} criteria, n = {n}\n"),
        None => format!("valid {kind} relation: n = {n}\n"),
    })
}

#[derive(Serialize)]
struct ConsistencyOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    criterion: Option<usize>,
    consistent: bool,
    max_violation: f64,
    /// One-based.
    worst_triple: [usize; 3],
}

impl ConsistencyOut {
    fn new(criterion: Option<usize>, r: ConsistencyReport) -> Self {
        let (i, j, k) = r.worst_triple;
        Self {
            criterion,
            consistent: r.consistent,
            max_violation: r.max_violation,
            worst_triple: [i + 1, j + 1, k + 1],
        }
    }

    fn text(&self, out: &mut String) {
        if let Some(k) = self.criterion {
            let _ = writeln!(out, "criterion {k}:");
        }
        let verdict = if self.consistent {
            "consistent"
        } else {
            "inconsistent"
        };
        let [i, j, k] = self.worst_triple;
        let _ = writeln!(out, "{verdict}");
        let _ = writeln!(out, "max violation: {}", fmt4(self.max_violation));
        let _ = writeln!(out, "worst triple: ({i}, {j}, {k})");
    }
}

pub fn consistency(p: &Problem, ctx: &Context) -> Result<String> {
    let reports: Vec<ConsistencyOut> = match &p.body {
        Body::Single(Relation::Additive(x)) => {
            vec![ConsistencyOut::new(None, x.check_consistency(ctx.tol))]
        }
        Body::Single(Relation::Multiplicative(y)) => {
            vec![ConsistencyOut::new(None, y.check_consistency(ctx.tol))]
        }
        Body::Ahp { matrices, .. } => matrices
            .iter()
            .enumerate()
            .map(|(k, y)| ConsistencyOut::new(Some(k + 1), y.check_consistency(ctx.tol)))
            .collect(),
    };
    if ctx.json {
        return Ok(if reports.len() == 1 {
            to_json(&reports[0])
        } else {
            to_json(&reports)
        });
    }
    let mut out = String::new();
    for r in &reports {
        r.text(&mut out);
    }
    Ok(out)
}

#[derive(Serialize)]
struct UtilityOut {
    model: Model,
    utilities: Vec<Trfn>,
    objective: f64,
    magnitudes: Vec<f64>,
    ranking: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    shifted: Option<Vec<Trfn>>,
}

impl UtilityOut {
    fn new(u: &UtilityVector, mag: MagWeights) -> Result<Self> {
        let shifted = if u.model() == Model::P0 {
            Some(shift_normalize(u)?.utilities().to_vec())
        } else {
            None
        };
        Ok(Self {
            model: u.model(),
            utilities: u.utilities().to_vec(),
            objective: u.objective(),
            magnitudes: u.utilities().iter().map(|t| t.magnitude(mag)).collect(),
            ranking: rank(u.utilities(), mag).to_string(),
            shifted,
        })
    }

    fn text(&self, label: &str, out: &mut String) {
        let model = serde_json::to_value(self.model).expect("model serializes");
        let _ = writeln!(out, "model: {}", model.as_str().unwrap_or_default());
        for (k, (u, m)) in self.utilities.iter().zip(&self.magnitudes).enumerate() {
            let _ = writeln!(out, "{label}{} = {}  Mag {}", k + 1, fmt_trfn(u), fmt4(*m));
        }
        if let Some(s) = &self.shifted {
            let _ = writeln!(out, "shifted to non-negative:");
            for (k, u) in s.iter().enumerate() {
                let _ = writeln!(out, "{label}{} = {}", k + 1, fmt_trfn(u));
            }
        }
        let _ = writeln!(out, "objective: {}", fmt4(self.objective));
        let _ = writeln!(out, "ranking: {}", self.ranking);
    }
}

fn variant(model: ModelArg, sigma: Option<[f64; 4]>, p: &Problem) -> Result<Variant> {
    Ok(match model {
        ModelArg::P0 => Variant::P0,
        ModelArg::P => Variant::P,
        ModelArg::PUnit => Variant::PUnit,
        ModelArg::PSigma => Variant::PSigma(sigma_of(sigma, p)?),
    })
}

pub fn utility(
    p: &Problem,
    ctx: &Context,
    model: Option<ModelArg>,
    sigma: Option<[f64; 4]>,
) -> Result<String> {
    let u = match &p.body {
        Body::Single(Relation::Additive(x)) => {
            let v = variant(model.unwrap_or(ModelArg::PUnit), sigma, p)?;
            derive_utility(x, &v)?
        }
        Body::Single(Relation::Multiplicative(y)) => match model.unwrap_or(ModelArg::P) {
            ModelArg::PSigma => derive_weights(y, sigma_of(sigma, p)?)?,
            m => derive_utility(&y.to_additive()?, &variant(m, sigma, p)?)?,
        },
        Body::Ahp { .. } => {
            return Err(CliError::Invalid(
                "utility works on a single relation; use the ahp command".into(),
            ))
        }
    };
    let out = UtilityOut::new(&u, ctx.mag(p))?;
    if ctx.json {
        return Ok(to_json(&out));
    }
    let mut s = String::new();
    out.text("u", &mut s);
    Ok(s)
}

pub fn weights(p: &Problem, ctx: &Context, sigma: Option<[f64; 4]>) -> Result<String> {
    let sigma = sigma_of(sigma, p)?;
    let w = match &p.body {
        Body::Single(Relation::Multiplicative(y)) => derive_weights(y, sigma)?,
        Body::Single(Relation::Additive(x)) => derive_utility(x, &Variant::PSigma(sigma))?,
        Body::Ahp { .. } => {
            return Err(CliError::Invalid(
                "weights works on a single relation; use the ahp command".into(),
            ))
        }
    };
    let out = UtilityOut::new(&w, ctx.mag(p))?;
    if ctx.json {
        return Ok(to_json(&out));
    }
    let mut s = String::new();
    out.text("w", &mut s);
    Ok(s)
}

#[derive(Serialize)]
struct MethodOut {
    weights: Vec<Trfn>,
    deviation: f64,
}

#[derive(Serialize)]
struct ComparisonOut {
    criterion: usize,
    lad: MethodOut,
    amm: MethodOut,
    gmm: MethodOut,
}

#[derive(Serialize)]
struct AhpOut {
    local_weights: Vec<UtilityVector>,
    global_weights: Vec<Trfn>,
    magnitudes: Vec<f64>,
    ranking: String,
    per_criterion_objectives: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    comparison: Option<Vec<ComparisonOut>>,
}

fn compare(y: &Trmpr, lad: &UtilityVector, criterion: usize) -> Result<ComparisonOut> {
    let method = |w: Vec<Trfn>| -> Result<MethodOut> {
        let deviation = deviation(y, &w)?;
        Ok(MethodOut {
            weights: w,
            deviation,
        })
    };
    Ok(ComparisonOut {
        criterion,
        lad: method(lad.utilities().to_vec())?,
        amm: method(amm_weights(y))?,
        gmm: method(gmm_weights(y))?,
    })
}

pub fn ahp(p: &Problem, ctx: &Context, with_comparison: bool) -> Result<String> {
    let Body::Ahp {
        matrices,
        criteria_weights,
    } = &p.body
    else {
        return Err(CliError::Invalid(
            "the ahp command needs a file of kind ahp".into(),
        ));
    };
    let problem = AhpProblem::new(
        criteria_weights.clone(),
        matrices.clone(),
        sigma_of(None, p)?,
        ctx.mag(p),
    )?;
    let r = run_ahp(&problem)?;
    let comparison = if with_comparison {
        Some(
            matrices
                .iter()
                .zip(&r.local_weights)
                .enumerate()
                .map(|(k, (y, u))| compare(y, u, k + 1))
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    let out = AhpOut {
        local_weights: r.local_weights,
        global_weights: r.global_weights,
        magnitudes: r.magnitudes,
        ranking: r.ranking.to_string(),
        per_criterion_objectives: r.per_criterion_objectives,
        comparison,
    };
    if ctx.json {
        return Ok(to_json(&out));
    }

    let mut s = String::new();
    for (k, u) in out.local_weights.iter().enumerate() {
        let _ = writeln!(
            s,
            "criterion {} (weight {}, objective {}):",
            k + 1,
            fmt4(criteria_weights.as_slice()[k]),
            fmt4(u.objective())
        );
        for (i, w) in u.utilities().iter().enumerate() {
            let _ = writeln!(s, "  w{} = {}", i + 1, fmt_trfn(w));
        }
    }
    let _ = writeln!(s, "global weights:");
    for (i, (w, m)) in out.global_weights.iter().zip(&out.magnitudes).enumerate() {
        let _ = writeln!(s, "  w{} = {}  Mag {}", i + 1, fmt_trfn(w), fmt4(*m));
    }
    let _ = writeln!(s, "ranking: {}", out.ranking);
    if let Some(cmp) = &out.comparison {
        for c in cmp {
            let _ = writeln!(s, "comparison, criterion {}:", c.criterion);
            for (name, m) in [("LAD", &c.lad), ("AMM", &c.amm), ("GMM", &c.gmm)] {
                let ws: Vec<String> = m.weights.iter().map(fmt_trfn).collect();
                let _ = writeln!(s, "  {name}  deviation {}", fmt4(m.deviation));
                for (i, w) in ws.iter().enumerate() {
                    let _ = writeln!(s, "    w{} = {w}", i + 1);
                }
            }
        }
    }
    Ok(s)
}

pub fn convert(p: &Problem, to: Kind, scale: Option<u32>, out: Option<&Path>) -> Result<String> {
    let file = match (&p.body, to) {
        (Body::Single(Relation::Additive(x)), Kind::Multiplicative) => {
            let m = scale.ok_or_else(|| {
                CliError::Invalid("--scale is required when converting to multiplicative".into())
            })?;
            let m = Scale::new(m).map_err(|e| CliError::Invalid(format!("--scale: {e}")))?;
            mult_file(&x.to_multiplicative(m)?)
        }
        (Body::Single(Relation::Multiplicative(y)), Kind::Additive) => {
            if let Some(m) = scale {
                if m != y.scale().get() {
                    return Err(CliError::Invalid(format!(
                        "--scale {m} differs from the file's scale {}",
                        y.scale().get()
                    )));
                }
            }
            add_file(&y.to_additive()?)
        }
        (Body::Ahp { .. }, _) => {
            return Err(CliError::Invalid("ahp files cannot be converted".into()))
        }
        _ => {
            return Err(CliError::Invalid(
                "the relation already has the requested kind".into(),
            ))
        }
    };
    let text = render_file(&file);
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn quad_json(t: &Trfn) -> String {
    serde_json::to_string(t).expect("trapezoid serializes")
}

/// Pretty JSON with one matrix row per line.
fn render_file(f: &OutFile) -> String {
    let kind = serde_json::to_string(&f.kind).expect("kind serializes");
    let mut s = format!("{{\n  \"kind\": {kind},\n  \"n\": {},\n", f.n);
    if let Some(m) = f.scale {
        let _ = writeln!(s, "  \"scale\": {m},");
    }
    let _ = writeln!(s, "  \"neutral\": {},", quad_json(&f.neutral));
    s.push_str("  \"matrix\": [\n");
    let rows: Vec<String> = f
        .matrix
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(quad_json).collect();
            format!("    [{}]", cells.join(", "))
        })
        .collect();
    s.push_str(&rows.join(",\n"));
    s.push_str("\n  ]\n}\n");
    s
}

fn add_file(x: &Trfpr) -> OutFile {
    OutFile {
        kind: Kind::Additive,
        n: x.n(),
        scale: None,
        neutral: x.neutral().value(),
        matrix: x.rows(),
    }
}

fn mult_file(y: &Trmpr) -> OutFile {
    OutFile {
        kind: Kind::Multiplicative,
        n: y.n(),
        scale: Some(y.scale().get()),
        neutral: y.neutral().value(),
        matrix: y.rows(),
    }
}
