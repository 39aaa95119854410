use std::fmt::Write as _;
use std::io::Write;

use mahlercf::contfrac::{cf_expand, to_modified, CfEnd, NextDegree};
use mahlercf::exponent::{bhwy_upper_bound, lower_bound, required_precision, ExponentReport};
use mahlercf::hankel::{hankel_det, hankel_from_cf};
use mahlercf::mahler::{eval_g, MahlerParams};
use mahlercf::recurrence::{classify, verify_propositions, BlockFailure, Verdict};
use mahlercf::scan::{scan_grid, verify_axes, verify_envelope, verify_linear};
use mahlercf::{parse_rational, rat, Error, RatFunc, Rational, Scalar};
use num_bigint::BigInt;
use serde::Serialize;

use crate::args::*;

pub type Result<T> = std::result::Result<T, Error>;

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

fn to_strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn numeric(p: &ParamArgs) -> Result<MahlerParams<Rational>> {
    let mut u =
        p.u.iter()
            .map(|s| parse_rational(s))
            .collect::<mahlercf::Result<Vec<_>>>()?;
    if let Some(v) = &p.v {
        u.push(parse_rational(v)?);
    }
    if u.is_empty() {
        return Err(usage("--u is required"));
    }
    MahlerParams::new(p.d, u)
}

fn symbolic(p: &ParamArgs, which: Symbolic) -> Result<MahlerParams<RatFunc>> {
    match which {
        Symbolic::U => {
            if p.d != 2 || !p.u.is_empty() || p.v.is_some() {
                return Err(usage("--symbolic u needs --d 2 and no --u/--v"));
            }
            MahlerParams::new(2, vec![RatFunc::t()])
        }
        Symbolic::V => {
            let u_ok = p.u.is_empty() || (p.u.len() == 1 && parse_rational(&p.u[0])? == rat(0, 1));
            if p.d != 3 || !u_ok || p.v.is_some() {
                return Err(usage("--symbolic v needs --d 3, --u 0 and no --v"));
            }
            MahlerParams::new(3, vec![RatFunc::zero(), RatFunc::t()])
        }
    }
}

fn ensure_not_csv(f: Format) -> Result<()> {
    if f == Format::Csv {
        return Err(usage("--format csv is only available for scan"));
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes") + "\n"
}

#[derive(Serialize)]
struct ExpandOut {
    d: usize,
    u: Vec<String>,
    precision: usize,
    quotients: Vec<String>,
    a_hat: Vec<String>,
    beta: Vec<String>,
    end: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    next_degree_at_least: Option<usize>,
}

pub fn expand(a: &ExpandArgs) -> Result<String> {
    ensure_not_csv(a.format)?;
    match a.symbolic {
        Some(s) => expand_with(&symbolic(&a.params, s)?, a),
        None => expand_with(&numeric(&a.params)?, a),
    }
}

fn expand_with<F: Scalar>(p: &MahlerParams<F>, a: &ExpandArgs) -> Result<String> {
    let n = a.n.unwrap_or_else(|| required_precision(a.terms));
    let raw = cf_expand(&p.g_series(n), a.terms)?;
    let m = to_modified(&raw);
    let (end, next) = match raw.end {
        CfEnd::Complete => ("complete", None),
        CfEnd::Terminated => ("terminated", None),
        CfEnd::Exhausted { next_degree, .. } => ("exhausted", Some(next_degree.lower_bound())),
    };
    let out = ExpandOut {
        d: p.d(),
        u: to_strings(p.u()),
        precision: n,
        quotients: to_strings(&raw.quotients),
        a_hat: to_strings(&m.a_hat),
        beta: to_strings(&m.beta[1..]),
        end,
        next_degree_at_least: next,
    };
    if a.format == Format::Json {
        return Ok(json(&out));
    }
    let mut s = String::new();
    writeln!(s, "g for {p}, {n} coefficients").unwrap();
    for (i, q) in raw.quotients.iter().enumerate() {
        if i == 0 {
            writeln!(s, "a_0 = {q}").unwrap();
        } else {
            writeln!(
                s,
                "a_{i} = {q}    (monic {}, beta_{i} = {})",
                m.a_hat[i], m.beta[i]
            )
            .unwrap();
        }
    }
    match raw.end {
        CfEnd::Complete => writeln!(s, "complete after {} terms", a.terms),
        CfEnd::Terminated => writeln!(s, "terminated: g is rational"),
        CfEnd::Exhausted { index, next_degree } => match next_degree {
            NextDegree::Exact(c) => {
                writeln!(s, "precision exhausted at a_{index}, which has degree {c}")
            }
            NextDegree::AtLeast(c) => writeln!(
                s,
                "precision exhausted at a_{index}, which has degree at least {c}"
            ),
        },
    }
    .unwrap();
    Ok(s)
}

#[derive(Serialize)]
struct ClassifyOut {
    verdict: &'static str,
    index: usize,
    d: usize,
    u: Vec<String>,
    terms: usize,
    alpha: Vec<String>,
    beta: Vec<String>,
}

pub fn classify_cmd(a: &ClassifyArgs) -> Result<String> {
    ensure_not_csv(a.format)?;
    match a.symbolic {
        Some(s) => classify_with(&symbolic(&a.params, s)?, a),
        None => classify_with(&numeric(&a.params)?, a),
    }
}

fn classify_with<F: Scalar>(p: &MahlerParams<F>, a: &ClassifyArgs) -> Result<String> {
    let c = classify(p, a.terms)?;
    let (verdict, index) = match c.verdict {
        Verdict::BadlyApproximableUpTo(n) => ("badly_approximable_through", n),
        Verdict::NonlinearAt(m) => ("nonlinear_at", m),
    };
    let out = ClassifyOut {
        verdict,
        index,
        d: p.d(),
        u: to_strings(p.u()),
        terms: a.terms,
        alpha: to_strings(c.terms.alphas()),
        beta: to_strings(c.terms.betas()),
    };
    if a.format == Format::Json {
        return Ok(json(&out));
    }
    let mut s = String::new();
    writeln!(s, "{p}: {}", c.verdict).unwrap();
    for i in 1..=c.terms.len() {
        let alpha = c
            .terms
            .alpha(i)
            .map(|x| x.to_string())
            .unwrap_or_else(|| "-".into());
        writeln!(
            s,
            "{i:>4}  alpha = {alpha}    beta = {}",
            c.terms.beta(i).unwrap()
        )
        .unwrap();
    }
    Ok(s)
}

#[derive(Serialize)]
struct HankelRow {
    n: usize,
    direct: String,
    from_cf: String,
}

#[derive(Serialize)]
struct HankelOut {
    d: usize,
    u: Vec<String>,
    s: Vec<usize>,
    zero_set: Vec<usize>,
    certified_to: usize,
    agree: bool,
    determinants: Vec<HankelRow>,
}

pub fn hankel(a: &HankelArgs) -> Result<String> {
    ensure_not_csv(a.format)?;
    let p = numeric(&a.params)?;
    let c = p.fhat_coeffs(2 * a.n.max(1));
    let mut n_coeffs = 4 * a.n + 8;
    let profile = loop {
        let cf = to_modified(&cf_expand(&p.g_series(n_coeffs), 2 * a.n + 2)?);
        let prof = hankel_from_cf(&cf, a.n);
        if prof.certified_to >= a.n || n_coeffs >= 4096 {
            break prof;
        }
        n_coeffs *= 2;
    };
    let mut rows = Vec::new();
    let mut agree = true;
    for n in 1..=a.n {
        let direct = hankel_det(&c, n)?;
        let from_cf = profile.value(n);
        agree &= from_cf.as_ref() == Some(&direct);
        rows.push(HankelRow {
            n,
            direct: direct.to_string(),
            from_cf: from_cf.map(|v| v.to_string()).unwrap_or_else(|| "?".into()),
        });
    }
    if !agree && profile.certified_to >= a.n {
        return Err(Error::AssertionFailed(format!(
            "Hankel determinants disagree with the continued fraction for {p}"
        )));
    }
    let out = HankelOut {
        d: p.d(),
        u: to_strings(p.u()),
        s: profile.s.clone(),
        zero_set: profile.zero_set.clone(),
        certified_to: profile.certified_to,
        agree,
        determinants: rows,
    };
    if a.format == Format::Json {
        return Ok(json(&out));
    }
    let mut s = String::new();
    writeln!(s, "Hankel determinants of prod P(y^(d^t)) for {p}").unwrap();
    for r in &out.determinants {
        writeln!(
            s,
            "H_{:<3} = {:<24} (from continued fraction: {})",
            r.n, r.direct, r.from_cf
        )
        .unwrap();
    }
    writeln!(s, "nonzero at {:?}; zero at {:?}", out.s, out.zero_set).unwrap();
    Ok(s)
}

#[derive(Serialize)]
struct BhwyOut {
    rho_hat: String,
    bound: String,
    window: usize,
    label: &'static str,
}

#[derive(Serialize)]
struct BoundOut {
    d: usize,
    u: Vec<String>,
    lower_bound: String,
    conditional: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    n0: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    horizon: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    upper_heuristic: Option<BhwyOut>,
}

pub fn bound(a: &BoundArgs) -> Result<String> {
    ensure_not_csv(a.format)?;
    let p = numeric(&a.params)?;
    let rep = lower_bound(&p, a.terms)?;
    let (n0, c, horizon) = match &rep {
        ExponentReport::AtLeast { n0, c, .. } => (Some(*n0), Some(*c), None),
        ExponentReport::ConditionalTwo { horizon } => (None, None, Some(*horizon)),
    };
    let prec = required_precision(a.terms.max(2 * a.window + 4)) * 2;
    let cf = to_modified(&cf_expand(
        &p.g_series(prec),
        a.terms.max(2 * a.window + 4),
    )?);
    let profile = hankel_from_cf(&cf, usize::MAX);
    let upper = bhwy_upper_bound(&profile, p.d(), a.window)
        .ok()
        .map(|r| BhwyOut {
            rho_hat: r.rho_hat.to_string(),
            bound: r.bound.to_string(),
            window: r.window,
            label: "HEURISTIC",
        });
    let out = BoundOut {
        d: p.d(),
        u: to_strings(p.u()),
        lower_bound: rep.lower_bound().to_string(),
        conditional: rep.is_conditional(),
        n0,
        c,
        horizon,
        upper_heuristic: upper,
    };
    if a.format == Format::Json {
        return Ok(json(&out));
    }
    let mut s = String::new();
    writeln!(s, "{p}").unwrap();
    writeln!(s, "lower_bound {}", out.lower_bound).unwrap();
    writeln!(s, "{rep}").unwrap();
    if let Some(u) = &out.upper_heuristic {
        writeln!(
            s,
            "HEURISTIC upper estimate (1 + rho)min(rho^2, d) = {} with rho ~ {} over the last {} gaps",
            u.bound, u.rho_hat, u.window
        )
        .unwrap();
    }
    Ok(s)
}

#[derive(Serialize)]
struct EvalOut {
    lo: String,
    hi: String,
    width: String,
}

pub fn eval(a: &EvalArgs) -> Result<String> {
    ensure_not_csv(a.format)?;
    let p = numeric(&a.params)?;
    let b: BigInt =
        a.b.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("--b must be an integer, got {:?}", a.b)))?;
    let eps = parse_rational(&a.eps)?;
    let iv = eval_g(&p, &b, &eps)?;
    let out = EvalOut {
        lo: iv.lo.to_string(),
        hi: iv.hi.to_string(),
        width: iv.width().to_string(),
    };
    if a.format == Format::Json {
        return Ok(json(&out));
    }
    Ok(format!("g({b}) in {iv}\nwidth {}\n", out.width))
}

pub fn scan(a: &ScanArgs, w: &mut dyn Write) -> Result<()> {
    let recs = scan_grid(a.range, a.terms, a.jobs)?;
    let io = |e: std::io::Error| Error::AssertionFailed(format!("write failed: {e}"));
    match a.format {
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(w);
            for r in &recs {
                wtr.serialize(r)
                    .map_err(|e| Error::AssertionFailed(format!("write failed: {e}")))?;
            }
            wtr.flush().map_err(io)?;
        }
        Format::Json => {
            for r in &recs {
                w.write_all(json(r).as_bytes()).map_err(io)?;
            }
        }
        Format::Text => {
            for r in recs.iter().filter(|r| r.stop_index.is_some()) {
                writeln!(
                    w,
                    "({}, {}): beta_{} = 0, family {}",
                    r.u,
                    r.v,
                    r.stop_index.unwrap(),
                    r.family
                )
                .map_err(io)?;
            }
        }
    }
    Ok(())
}

pub fn verify(a: &VerifyArgs) -> Result<String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .map_err(|e| usage(e.to_string()))?;
    pool.install(|| verify_inner(a))
}

fn verify_inner(a: &VerifyArgs) -> Result<String> {
    let ints = |lo: i64, hi: i64| (lo..=hi).map(|i| rat(i, 1)).collect::<Vec<_>>();
    let report = match a.suite {
        Suite::Linear => verify_linear(&ints(-a.range, a.range), a.horizon.unwrap_or(100))?,
        Suite::Axes => verify_axes(&ints(-a.range, a.range), a.horizon.unwrap_or(60))?,
        Suite::Envelope => {
            let mut samples = Vec::new();
            for u in -a.range..=a.range {
                if u * u < 6 {
                    continue;
                }
                let v0 = (3 * u * u - 1).max(2 * u * u + 8);
                for v in v0..=v0 + a.range {
                    samples.push((rat(u, 1), rat(v, 1)));
                }
            }
            if samples.is_empty() {
                return Err(usage("--range must be at least 3 for the envelope suite"));
            }
            verify_envelope(&samples, a.horizon.unwrap_or(90))?
        }
        Suite::Blocks => {
            let p = numeric(&a.params)?;
            let needed = p.d() * (a.k + 2);
            let terms = a.horizon.unwrap_or(needed).max(needed);
            let cf = to_modified(&cf_expand(
                &p.g_series(required_precision(terms) * 2),
                terms,
            )?);
            let r = verify_propositions(&p, &cf, a.k)?;
            return match r.first_failure {
                None => Ok(format!(
                    "blocks: {} identities hold for {p}, k <= {}\n",
                    r.checks, a.k
                )),
                Some(BlockFailure::Nonlinear { index }) => Ok(format!(
                    "blocks: not applicable to {p}: partial quotient {index} is not linear\n"
                )),
                Some(BlockFailure::Identity { which, k }) => Err(Error::AssertionFailed(format!(
                    "{which:?} identity fails at k = {k} for {p}"
                ))),
            };
        }
    };
    Ok(format!("{report}\n"))
}
