//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code: 0 on success, 1 when a
//! checked invariant fails, 2 on usage or budget errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::angle::Angle;
use crate::baseline::Baseline;
use crate::budget::{Budget, DECAY_CAP, DEFAULT_CAP};
use crate::cf::{convergents, make_alpha};
use crate::equidist::{delta_scan, joint_counts_grid, mismatch_count, RawSeries, ScanParams};
use crate::error::{invalid, Error, Result};
use crate::expsum::{
    dft_window, fejer_check, joint_exp_series, min_norm_sum, schmidt_margin, single_decay,
    weyl_vdc_check,
};
use crate::numeration::{parse_digits, Ostrowski};
use crate::report::{emit, to_csv, to_json};
use crate::sum::e;

#[derive(Parser, Debug)]
#[command(
    name = "ostrowski",
    version,
    about = "Ostrowski numeration for [0; 1,m,1,m,...] and digit-sum equidistribution experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for chunked scans; 0 uses all cores. Results do not
    /// depend on this.
    #[arg(long, default_value_t = 1, global = true)]
    threads: usize,

    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Accept decimal angles. Integrality hypotheses are then only checked
    /// up to 1e-12.
    #[arg(long, global = true)]
    real: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Theorem,
    Corollary,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ostrowski digits and digit sum of n, or the value of a digit string.
    Digits(DigitsArgs),
    /// Convergent numerators and denominators up to index K.
    Convergents(ConvergentsArgs),
    /// Joint residue counts of two digit sums.
    Count(CountArgs),
    /// Joint exponential sums along a grid of N.
    Expsum(ExpsumArgs),
    /// Normalized block sums D_k for one system.
    Decay(DecayArgs),
    /// Discrete Fourier coefficients of a truncated digit-sum window.
    Dft(DftArgs),
    /// Error-exponent scan in theorem or corollary mode.
    Scan(ScanArgs),
    /// Numeric checks of the auxiliary lemmas.
    Lemmas(LemmasArgs),
    /// Recompute the pinned regression values and compare them.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct DigitsArgs {
    #[arg(long)]
    m: u32,
    /// Integer to expand.
    #[arg(long, conflicts_with = "eps", required_unless_present = "eps")]
    n: Option<String>,
    /// Comma-separated digits, least significant first.
    #[arg(long)]
    eps: Option<String>,
}

#[derive(Args, Debug)]
struct ConvergentsArgs {
    #[arg(long)]
    m: u32,
    #[arg(long = "K")]
    k_max: usize,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    m1: u32,
    #[arg(long)]
    m2: u32,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long, conflicts_with = "grid")]
    n: Option<u64>,
    /// Comma-separated N values.
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long)]
    b1: u32,
    #[arg(long)]
    b2: u32,
    /// Residue class to single out in the report.
    #[arg(long, requires = "a2")]
    a1: Option<u32>,
    #[arg(long, requires = "a1")]
    a2: Option<u32>,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args, Debug)]
struct ExpsumArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, allow_hyphen_values = true)]
    theta: String,
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args, Debug)]
struct DecayArgs {
    #[arg(long)]
    m: u32,
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    theta: String,
    /// Largest k.
    #[arg(long)]
    k: usize,
    /// Smallest k used in the reported slope.
    #[arg(long, default_value_t = 2)]
    kmin: usize,
}

#[derive(Args, Debug)]
struct DftArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    v: usize,
    #[arg(long, allow_hyphen_values = true)]
    theta: String,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long)]
    b1: Option<u32>,
    #[arg(long)]
    b2: Option<u32>,
    /// Comma-separated N values.
    #[arg(long, default_value = "1000,10000,100000,1000000")]
    grid: String,
    /// Run even when the decay hypothesis fails.
    #[arg(long)]
    unchecked: bool,
}

#[derive(Args, Debug)]
struct LemmasArgs {
    /// System for the min-norm sum and the mismatch sweep.
    #[arg(long, default_value_t = 2)]
    m: u32,
    /// Second system for the approximation margin.
    #[arg(long, default_value_t = 3)]
    m2: u32,
    /// Random trials for the Fejér and Weyl–van der Corput checks.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Largest R for the Fejér check.
    #[arg(long = "R", default_value_t = 100)]
    r_max: u32,
    /// Largest sequence length for the Weyl–van der Corput check.
    #[arg(long, default_value_t = 500)]
    n: usize,
    /// Shift range for the mismatch sweep is 1..=r.
    #[arg(long, default_value_t = 20)]
    r: u64,
    /// min{K, ‖t+hφ‖⁻²} parameters.
    #[arg(long = "K", default_value_t = 1e4)]
    k_cap: f64,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    t: String,
    #[arg(long, default_value_t = 1000)]
    interval: i64,
    /// Height bound for the approximation margin.
    #[arg(long = "H", default_value_t = 1000)]
    h_max: u32,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Pinned values to compare against.
    #[arg(long)]
    baseline: Option<PathBuf>,
    /// Overwrite the pinned values with a fresh computation.
    #[arg(long)]
    regen_baseline: bool,
}

/// Everything that determines a report, echoed into it.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m1: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m2: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b1: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b2: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a1: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a2: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Angle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Angle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub big_r: Option<u32>,
    pub format: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub threads: usize,
    pub seed: u64,
    pub budget: u64,
}

/// A finished subcommand in all three formats.
struct Rendered {
    json: Value,
    text: String,
    csv: (Vec<&'static str>, Vec<Vec<String>>),
    ok: bool,
}

struct Ctx {
    format: Format,
    output: Option<PathBuf>,
    threads: usize,
    seed: u64,
    real: bool,
}

impl Ctx {
    fn angle(&self, s: &str) -> Result<Angle> {
        Angle::parse(s, self.real)
    }

    fn config(&self, subcommand: &str, budget: Budget) -> RunConfig {
        RunConfig {
            subcommand: subcommand.into(),
            format: format!("{:?}", self.format).to_lowercase(),
            output: self.output.as_ref().map(|p| p.display().to_string()),
            threads: self.threads,
            seed: self.seed,
            budget: budget.cap(),
            ..RunConfig::default()
        }
    }
}

fn parse_grid(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim().replace('_', "");
            t.parse::<u64>()
                .or_else(|_| {
                    // accept 1e6-style literals when they are exact integers
                    t.parse::<f64>()
                        .ok()
                        .filter(|x| x.fract() == 0.0 && *x >= 0.0 && *x < 1.8e19)
                        .map(|x| x as u64)
                        .ok_or(())
                })
                .map_err(|_| invalid(format!("bad grid value {t:?}")))
        })
        .collect()
}

fn grid_of(g: &GridArgs) -> Result<Vec<u64>> {
    match (&g.n, &g.grid) {
        (Some(n), _) => Ok(vec![*n]),
        (None, Some(s)) => parse_grid(s),
        (None, None) => Err(invalid("one of --n or --grid is required")),
    }
}

fn check_grid_budget(grid: &[u64], budget: Budget) -> Result<()> {
    let top = grid.iter().copied().max().unwrap_or(0);
    budget.check("scan length N", u128::from(top))
}

fn dec(v: &[u64]) -> Vec<String> {
    v.iter().map(u64::to_string).collect()
}

fn envelope<T: Serialize>(cfg: &RunConfig, result: &T) -> Result<Value> {
    Ok(json!({ "config": cfg, "result": serde_json::to_value(result)? }))
}

fn cmd_digits(ctx: &Ctx, a: &DigitsArgs) -> Result<Rendered> {
    let budget = Budget::from_env_or(DEFAULT_CAP)?;
    let sys = Ostrowski::new(make_alpha(i64::from(a.m))?);
    let ds = match (&a.n, &a.eps) {
        (Some(n), _) => {
            let n: BigUint = n
                .trim()
                .parse()
                .map_err(|_| invalid(format!("bad integer {n:?}")))?;
            sys.digits_of(&n)
        }
        (None, Some(s)) => sys.digit_string(parse_digits(s)?)?,
        (None, None) => return Err(invalid("one of --n or --eps is required")),
    };
    let n = sys.value_of(ds.digits())?;
    let mut cfg = ctx.config("digits", budget);
    cfg.m1 = Some(a.m);
    let result = json!({
        "m": a.m,
        "n": n.to_string(),
        "digits": ds.digits(),
        "sum": ds.sum(),
    });
    let rows = ds
        .digits()
        .iter()
        .enumerate()
        .map(|(i, d)| vec![i.to_string(), d.to_string(), sys.q(i).to_string()])
        .collect();
    Ok(Rendered {
        json: envelope(&cfg, &result)?,
        text: format!("{ds}\nS={}\n", ds.sum()),
        csv: (vec!["i", "eps", "q"], rows),
        ok: true,
    })
}

fn cmd_convergents(ctx: &Ctx, a: &ConvergentsArgs) -> Result<Rendered> {
    let budget = Budget::from_env_or(DEFAULT_CAP)?;
    budget.check("convergent index K", a.k_max as u128)?;
    let params = make_alpha(i64::from(a.m))?;
    let t = convergents(&params, a.k_max)?;
    let qs: Vec<String> = t.qs().iter().map(ToString::to_string).collect();
    let ps: Vec<String> = t.ps().iter().map(ToString::to_string).collect();
    let mut cfg = ctx.config("convergents", budget);
    cfg.m1 = Some(a.m);
    cfg.k = Some(a.k_max);
    let result = json!({ "alpha": params.summary(), "q": qs, "p": ps });
    let rows = (0..qs.len())
        .map(|i| vec![i.to_string(), qs[i].clone(), ps[i].clone()])
        .collect();
    Ok(Rendered {
        json: envelope(&cfg, &result)?,
        text: format!("q = [{}]\np = [{}]\n", qs.join(","), ps.join(",")),
        csv: (vec!["i", "q", "p"], rows),
        ok: true,
    })
}

fn cmd_count(ctx: &Ctx, a: &CountArgs) -> Result<Rendered> {
    let budget = Budget::from_env_or(DEFAULT_CAP)?;
    let grid = grid_of(&a.grid)?;
    check_grid_budget(&grid, budget)?;
    if let (Some(a1), Some(a2)) = (a.a1, a.a2) {
        if a1 >= a.b1 || a2 >= a.b2 {
            return Err(invalid("need a1 < b1 and a2 < b2"));
        }
    }
    let s1 = Ostrowski::new(make_alpha(i64::from(a.pair.m1))?);
    let s2 = Ostrowski::new(make_alpha(i64::from(a.pair.m2))?);
    let reports = joint_counts_grid(&grid, &s1, a.b1, &s2, a.b2, ctx.threads)?;
    let ok = reports.iter().all(|r| r.total() == r.n);

    let mut cfg = ctx.config("count", budget);
    cfg.m1 = Some(a.pair.m1);
    cfg.m2 = Some(a.pair.m2);
    cfg.b1 = Some(a.b1);
    cfg.b2 = Some(a.b2);
    cfg.a1 = a.a1;
    cfg.a2 = a.a2;
    cfg.grid = Some(dec(&grid));

    let mut text = String::new();
    let mut rows = Vec::new();
    for r in &reports {
        let _ = writeln!(
            text,
            "N={} expected={:.6} max_rel_dev={:.6e} mean_rel_dev={:.6e} gcd(b1,m1)=1:{} gcd(b2,m2)=1:{}",
            r.n, r.expected, r.max_rel_dev, r.mean_rel_dev, r.gcd1_coprime, r.gcd2_coprime
        );
        for (i, row) in r.counts.iter().enumerate() {
            let _ = writeln!(text, "  a1={i}: {}", dec(row).join(" "));
            for (j, c) in row.iter().enumerate() {
                rows.push(vec![
                    r.n.to_string(),
                    i.to_string(),
                    j.to_string(),
                    c.to_string(),
                ]);
            }
        }
        if let (Some(a1), Some(a2)) = (a.a1, a.a2) {
            let _ = writeln!(
                text,
                "  C[{a1}][{a2}] = {}",
                r.counts[a1 as usize][a2 as usize]
            );
        }
    }
    let result: Value = if reports.len() == 1 {
        serde_json::to_value(&reports[0])?
    } else {
        serde_json::to_value(&reports)?
    };
    Ok(Rendered {
        json: envelope(&cfg, &result)?,
        text,
        csv: (vec!["N", "a1", "a2", "count"], rows),
        ok,
    })
}

fn warn_real(ctx: &Ctx) {
    if ctx.real {
        eprintln!(
            "warning: real-valued angles accepted; integrality hypotheses checked only to 1e-12"
        );
    }
}

fn cmd_expsum(ctx: &Ctx, a: &ExpsumArgs) -> Result<Rendered> {
    let budget = Budget::from_env_or(DEFAULT_CAP)?;
    let grid = grid_of(&a.grid)?;
    check_grid_budget(&grid, budget)?;
    let (theta, beta) = (ctx.angle(&a.theta)?, ctx.angle(&a.beta)?);
    warn_real(ctx);
    let s1 = Ostrowski::new(make_alpha(i64::from(a.pair.m1))?);
    let s2 = Ostrowski::new(make_alpha(i64::from(a.pair.m2))?);
    let series = joint_exp_series(&grid, theta.to_f64(), beta.to_f64(), &s1, &s2, ctx.threads)?;
    let ok = series
        .points
        .iter()
        .all(|p| p.modulus <= p.n as f64 * (1.0 + 1e-12));

    let mut cfg = ctx.config("expsum", budget);
    cfg.m1 = Some(a.pair.m1);
    cfg.m2 = Some(a.pair.m2);
    cfg.theta = Some(theta);
    cfg.beta = Some(beta);
    cfg.grid = Some(dec(&grid));

    let mut text = String::new();
    let mut rows = Vec::new();
    for p in &series.points {
        let _ = writeln!(
            text,
            "N={} S=({:.12e}, {:.12e}) |S|={:.12e} |S|/N={:.12e}",
            p.n, p.re, p.im, p.modulus, p.normalized
        );
        rows.push(vec![
            p.n.to_string(),
            format!("{:e}", p.re),
            format!("{:e}", p.im),
            format!("{:e}", p.modulus),
            format!("{:e}", p.normalized),
        ]);
    }
    Ok(Rendered {
        json: envelope(&cfg, &series)?,
        text,
        csv: (vec!["N", "re", "im", "modulus", "normalized"], rows),
        ok,
    })
}

fn cmd_decay(ctx: &Ctx, a: &DecayArgs) -> Result<Rendered> {
    let budget = Budget::from_env_or(DECAY_CAP)?;
    let (gamma, theta) = (ctx.angle(&a.gamma)?, ctx.angle(&a.theta)?);
    warn_real(ctx);
    let sys = Ostrowski::new(make_alpha(i64::from(a.m))?);
    let rep = single_decay(&sys, gamma.to_f64(), theta.to_f64(), a.k, budget)?;
    let hypothesis = !gamma.times_is_near_integer(a.m, 1e-12);
    if !hypothesis {
        eprintln!("warning: m*gamma is an integer; no decay is expected");
    }
    let slope = rep.slope_over(a.kmin, a.k);

    let mut cfg = ctx.config("decay", budget);
    cfg.m1 = Some(a.m);
    cfg.theta = Some(theta);
    cfg.beta = Some(gamma);
    cfg.k = Some(a.k);

    let mut text = String::new();
    let mut rows = Vec::new();
    for ((k, q), d) in rep.ks.iter().zip(&rep.q).zip(&rep.d) {
        let _ = writeln!(text, "k={k} q_k={q} D_k={d:.12e}");
        rows.push(vec![k.to_string(), q.to_string(), format!("{d:e}")]);
    }
    let _ = writeln!(
        text,
        "slope over k={}..{}: {}",
        a.kmin,
        a.k,
        slope.map_or("n/a".into(), |s| format!("{s:.6}"))
    );
    let _ = writeln!(text, "hypothesis ||m*gamma|| != 0: {hypothesis}");
    let result = json!({
        "report": rep,
        "hypothesis_holds": hypothesis,
        "kmin": a.kmin,
        "slope_from_kmin": slope,
    });
    Ok(Rendered {
        json: envelope(&cfg, &result)?,
        text,
        csv: (vec!["k", "q_k", "D_k"], rows),
        ok: true,
    })
}

fn cmd_dft(ctx: &Ctx, a: &DftArgs) -> Result<Rendered> {
    let budget = Budget::from_env_or(DEFAULT_CAP)?;
    let theta = ctx.angle(&a.theta)?;
    warn_real(ctx);
    let sys = Ostrowski::new(make_alpha(i64::from(a.m))?);
    let sp = dft_window(&sys, a.k, a.v, theta.to_f64(), budget)?;

    // extended-range reconstruction check
    let q_prev = sys.q_u64(a.k - 1).unwrap_or(0);
    budget.check(
        "DFT reconstruction work Q(v)*(Q(v)+q_(k-1))",
        u128::from(sp.q) * u128::from(sp.q + q_prev),
    )?;
    let mut o = sys.odometer_at(sp.n_prev);
    let mut max_err = 0.0f64;
    for n in 0..sp.q + q_prev {
        let want = e(theta.to_f64() * o.digit_sum_trunc(a.k) as f64);
        max_err = max_err.max((sp.reconstruct(n) - want).norm());
        o.advance();
    }
    let parseval = sp.parseval();
    let ok = max_err < 1e-9 && (parseval - 1.0).abs() < 1e-9;

    let mut cfg = ctx.config("dft", budget);
    cfg.m1 = Some(a.m);
    cfg.k = Some(a.k);
    cfg.theta = Some(theta);

    let mut text = format!(
        "v={} k={} n_(v-1)={} Q(v)={} parseval={:.15} max_reconstruction_error={:.3e}\n",
        sp.v, sp.k, sp.n_prev, sp.q, parseval, max_err
    );
    let mut rows = Vec::new();
    for (l, c) in sp.coeffs.iter().enumerate() {
        let _ = writeln!(text, "L({l}) = ({:.12e}, {:.12e})", c.re, c.im);
        rows.push(vec![
            l.to_string(),
            format!("{:e}", c.re),
            format!("{:e}", c.im),
        ]);
    }
    let result = json!({
        "spectrum": sp,
        "parseval": parseval,
        "max_reconstruction_error": max_err,
        "extended_range": sp.q + q_prev,
    });
    Ok(Rendered {
        json: envelope(&cfg, &result)?,
        text,
        csv: (vec!["l", "re", "im"], rows),
        ok,
    })
}

fn cmd_scan(ctx: &Ctx, a: &ScanArgs) -> Result<Rendered> {
    let budget = Budget::from_env_or(DEFAULT_CAP)?;
    let grid = parse_grid(&a.grid)?;
    check_grid_budget(&grid, budget)?;
    let mut cfg = ctx.config("scan", budget);
    cfg.m1 = Some(a.pair.m1);
    cfg.m2 = Some(a.pair.m2);
    cfg.grid = Some(dec(&grid));
    let params = match a.mode {
        Mode::Theorem => {
            fn need<'a>(o: &'a Option<String>, name: &str) -> Result<&'a str> {
                o.as_deref()
                    .ok_or_else(|| invalid(format!("--{name} is required in theorem mode")))
            }
            let theta = ctx.angle(need(&a.theta, "theta")?)?;
            let beta = ctx.angle(need(&a.beta, "beta")?)?;
            warn_real(ctx);
            cfg.theta = Some(theta);
            cfg.beta = Some(beta);
            ScanParams::Theorem {
                m1: a.pair.m1,
                m2: a.pair.m2,
                theta,
                beta,
            }
        }
        Mode::Corollary => {
            let b1 =
                a.b1.ok_or_else(|| invalid("--b1 is required in corollary mode"))?;
            let b2 =
                a.b2.ok_or_else(|| invalid("--b2 is required in corollary mode"))?;
            cfg.b1 = Some(b1);
            cfg.b2 = Some(b2);
            ScanParams::Corollary {
                m1: a.pair.m1,
                m2: a.pair.m2,
                b1,
                b2,
            }
        }
    };
    if !params.hypothesis_holds() && !a.unchecked {
        return Err(invalid(match a.mode {
            Mode::Theorem => "m2*beta is an integer; pass --unchecked to scan anyway",
            Mode::Corollary => {
                "gcd(b1,m1) or gcd(b2,m2) exceeds 1; pass --unchecked to scan anyway"
            }
        }));
    }
    let fit = delta_scan(&params, &grid, ctx.threads)?;
    let ok = match &fit.raw {
        RawSeries::Corollary(reps) => reps.iter().all(|r| r.total() == r.n),
        RawSeries::Theorem(s) => s.points.iter().all(|p| p.normalized <= 1.0 + 1e-12),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    for (n, err) in fit.grid.iter().zip(&fit.err) {
        let _ = writeln!(text, "N={n} err={err:.12e}");
        rows.push(vec![n.to_string(), format!("{err:e}")]);
    }
    let _ = writeln!(
        text,
        "delta_hat={} residual={} hypothesis={}",
        fit.delta.map_or("n/a".into(), |d| format!("{d:.6}")),
        fit.residual.map_or("n/a".into(), |d| format!("{d:.3e}")),
        fit.hypothesis_holds
    );
    Ok(Rendered {
        json: envelope(&cfg, &fit)?,
        text,
        csv: (vec!["N", "err"], rows),
        ok,
    })
}

#[derive(Serialize)]
struct LemmaSummary {
    fejer_trials: usize,
    fejer_max_scaled_diff: f64,
    fejer_failures: usize,
    weyl_trials: usize,
    weyl_violations: usize,
    weyl_max_lhs_over_rhs: f64,
    min_norm: crate::expsum::MinNormSum,
    schmidt: crate::expsum::SchmidtMargin,
    mismatch_cases: usize,
    mismatch_violations: usize,
    mismatch_max_count_over_bound: f64,
}

fn cmd_lemmas(ctx: &Ctx, a: &LemmasArgs) -> Result<Rendered> {
    let budget = Budget::from_env_or(DEFAULT_CAP)?;
    if a.r_max < 1 || a.n < 1 {
        return Err(invalid("--R and --n must be >= 1"));
    }
    budget.check(
        "approximation margin pairs (2H+1)^2",
        (2 * u128::from(a.h_max) + 1).pow(2),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);

    let mut fejer_max = 0.0f64;
    let mut fejer_fail = 0;
    for _ in 0..a.trials {
        let x: f64 = rng.gen();
        let r = rng.gen_range(1..=a.r_max);
        let c = fejer_check(x, r)?;
        fejer_max = fejer_max.max(c.abs_diff() / f64::from(r).powi(2));
        if !c.holds(1e-8) {
            fejer_fail += 1;
        }
    }

    let mut weyl_viol = 0;
    let mut weyl_ratio = 0.0f64;
    for _ in 0..a.trials {
        let n = rng.gen_range(1..=a.n);
        let r = rng.gen_range(1..=50usize.min(a.n.max(1)));
        let seq: Vec<Complex64> = (0..n).map(|_| e(rng.gen::<f64>())).collect();
        let c = weyl_vdc_check(&seq, r)?;
        if !c.holds {
            weyl_viol += 1;
        }
        if c.rhs > 0.0 {
            weyl_ratio = weyl_ratio.max(c.lhs / c.rhs);
        }
    }

    let p = make_alpha(i64::from(a.m))?;
    let t = ctx.angle(&a.t)?;
    let mn = min_norm_sum(&p, t.to_f64(), 1, a.interval, a.k_cap)?;
    let sm = schmidt_margin(
        &make_alpha(i64::from(a.m))?,
        &make_alpha(i64::from(a.m2))?,
        a.h_max,
    )?;

    let sys = Ostrowski::new(p);
    let mut cases = 0;
    let mut viol = 0;
    let mut worst = 0.0f64;
    for n in [1_000u64, 10_000] {
        for k in 3..=10 {
            for r in 1..=a.r {
                let c = mismatch_count(&sys, n, k, r)?;
                cases += 1;
                if !c.within_bound {
                    viol += 1;
                }
                worst = worst.max(c.count as f64 / c.bound);
            }
        }
    }

    let summary = LemmaSummary {
        fejer_trials: a.trials,
        fejer_max_scaled_diff: fejer_max,
        fejer_failures: fejer_fail,
        weyl_trials: a.trials,
        weyl_violations: weyl_viol,
        weyl_max_lhs_over_rhs: weyl_ratio,
        min_norm: mn,
        schmidt: sm,
        mismatch_cases: cases,
        mismatch_violations: viol,
        mismatch_max_count_over_bound: worst,
    };
    let ok = fejer_fail == 0 && weyl_viol == 0 && viol == 0 && summary.schmidt.margin > 0.0;

    let mut cfg = ctx.config("lemmas", budget);
    cfg.m1 = Some(a.m);
    cfg.m2 = Some(a.m2);
    cfg.r = Some(a.r);
    cfg.h = Some(a.h_max);
    cfg.big_r = Some(a.r_max);

    let s = &summary;
    let lines = vec![
        ("fejer_failures", s.fejer_failures.to_string()),
        (
            "fejer_max_scaled_diff",
            format!("{:e}", s.fejer_max_scaled_diff),
        ),
        ("weyl_violations", s.weyl_violations.to_string()),
        (
            "weyl_max_lhs_over_rhs",
            format!("{:.6}", s.weyl_max_lhs_over_rhs),
        ),
        ("min_norm_lhs", format!("{:.9e}", s.min_norm.lhs)),
        ("min_norm_ratio", format!("{:.6}", s.min_norm.ratio)),
        ("schmidt_margin", format!("{:.9e}", s.schmidt.margin)),
        (
            "schmidt_argmin",
            format!("({}, {})", s.schmidt.argmin.0, s.schmidt.argmin.1),
        ),
        ("mismatch_violations", s.mismatch_violations.to_string()),
        (
            "mismatch_max_count_over_bound",
            format!("{:.6}", s.mismatch_max_count_over_bound),
        ),
    ];
    let text = lines.iter().map(|(k, v)| format!("{k}={v}\n")).collect();
    let rows = lines
        .iter()
        .map(|(k, v)| vec![(*k).to_string(), v.clone()])
        .collect();
    Ok(Rendered {
        json: envelope(&cfg, &summary)?,
        text,
        csv: (vec!["check", "value"], rows),
        ok,
    })
}

fn cmd_verify(ctx: &Ctx, a: &VerifyArgs) -> Result<Rendered> {
    let budget = Budget::from_env_or(DEFAULT_CAP)?;
    let path = a.baseline.clone().unwrap_or_else(Baseline::default_path);
    let fresh = Baseline::compute(ctx.threads)?;
    let cfg = ctx.config("verify", budget);
    let (diffs, status) = if a.regen_baseline {
        fresh.save(&path)?;
        (
            Vec::new(),
            format!("baseline written to {}", path.display()),
        )
    } else {
        let pinned = Baseline::load(&path)?;
        let d = fresh.diff(&pinned);
        let s = if d.is_empty() {
            format!("all values match {}", path.display())
        } else {
            format!("{} value(s) differ from {}", d.len(), path.display())
        };
        (d, s)
    };
    let mut text = format!("{status}\n");
    for d in &diffs {
        let _ = writeln!(text, "  {d}");
    }
    let rows = diffs.iter().map(|d| vec![d.clone()]).collect();
    let result = json!({ "status": status, "differences": diffs, "values": fresh });
    Ok(Rendered {
        json: envelope(&cfg, &result)?,
        ok: diffs.is_empty(),
        text,
        csv: (vec!["difference"], rows),
    })
}

fn render(r: &Rendered, format: Format) -> Result<String> {
    match format {
        Format::Text => Ok(r.text.clone()),
        Format::Json => to_json(&r.json),
        Format::Csv => to_csv(&r.csv.0, &r.csv.1),
    }
}

fn execute(cli: &Cli) -> Result<bool> {
    let ctx = Ctx {
        format: cli.format,
        output: cli.output.clone(),
        threads: cli.threads,
        seed: cli.seed,
        real: cli.real,
    };
    let r = match &cli.command {
        Command::Digits(a) => cmd_digits(&ctx, a)?,
        Command::Convergents(a) => cmd_convergents(&ctx, a)?,
        Command::Count(a) => cmd_count(&ctx, a)?,
        Command::Expsum(a) => cmd_expsum(&ctx, a)?,
        Command::Decay(a) => cmd_decay(&ctx, a)?,
        Command::Dft(a) => cmd_dft(&ctx, a)?,
        Command::Scan(a) => cmd_scan(&ctx, a)?,
        Command::Lemmas(a) => cmd_lemmas(&ctx, a)?,
        Command::Verify(a) => cmd_verify(&ctx, a)?,
    };
    emit(
        &render(&r, cli.format)?,
        cli.output.as_deref().map(Path::new),
    )?;
    Ok(r.ok)
}

/// Runs the command line `argv` (program name first) and returns the exit
/// code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(true) => 0,
        Ok(false) => {
            eprintln!("error: invariant check failed");
            1
        }
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::InvalidParameter(_)
                | Error::BudgetExceeded { .. }
                | Error::DegenerateGrid(_)
                | Error::Inadmissible(_) => 2,
                _ => 1,
            }
        }
    }
}
