//! `lndet sweep` — invert, fit and score over an (M, alpha) matrix.
//!
//! One JSON-lines record per pair, sorted by (alpha, M). A partially
//! written file from an interrupted run is reused: pairs already present
//! are not recomputed, and the file is rewritten whole, so a resumed sweep
//! ends up byte-identical to an uninterrupted one.

use clap::Args;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use lndet::analysis::{fit_lognormal, gaussian_limit_check, similarity};
use lndet::cumulants::cumulants_series;
use lndet::inversion::{default_grid, edgeworth4, gaussian_reference, invert, DEFAULT_GRID_POINTS};
use lndet::DisorderScale;

use crate::config::{parse_f64_list, parse_m_range, resolve_output, ConfigFile};
use crate::fmt::write_atomic;
use crate::CliError;

#[derive(Args)]
pub struct SweepArgs {
    /// Comma-separated alpha values.
    #[arg(long, allow_hyphen_values = true)]
    alphas: Option<String>,
    /// M values as start:stop:step (inclusive).
    #[arg(long = "m-range")]
    m_range: Option<String>,
    /// Explicit comma-separated M list (overrides --m-range).
    #[arg(long = "m-list")]
    m_list: Option<String>,
    /// Number of F grid points per inversion.
    #[arg(long = "n-points")]
    n_points: Option<usize>,
    /// Worker threads for the (M, alpha) matrix.
    #[arg(long)]
    jobs: Option<usize>,
    /// Output JSON-lines path.
    #[arg(long, short)]
    output: Option<String>,
}

/// Null in JSON encodes an infinite divergence (KL with unmatched support).
fn finite_or_none(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

#[derive(Serialize, Deserialize, Clone)]
pub struct SweepRecord {
    pub alpha: f64,
    #[serde(rename = "M")]
    pub m: usize,
    pub f0: f64,
    #[serde(rename = "sigmaPrime")]
    pub sigma_prime: f64,
    pub s: f64,
    pub kl: Option<f64>,
    pub jsd: f64,
    pub hellinger: f64,
    pub ratio: f64,
    #[serde(rename = "klGaussian")]
    pub kl_gaussian: Option<f64>,
    #[serde(rename = "jsdGaussian")]
    pub jsd_gaussian: f64,
    #[serde(rename = "hellingerGaussian")]
    pub hellinger_gaussian: f64,
    #[serde(rename = "klEdgeworth")]
    pub kl_edgeworth: Option<f64>,
    #[serde(rename = "jsdEdgeworth")]
    pub jsd_edgeworth: f64,
    #[serde(rename = "hellingerEdgeworth")]
    pub hellinger_edgeworth: f64,
}

fn compute_record(m: usize, alpha: f64, n_points: usize) -> Result<SweepRecord, CliError> {
    let scale = DisorderScale::from_alpha(m, alpha)?;
    let kappas = cumulants_series(m, scale.x(), 4)?;
    let f_grid = default_grid(kappas.kappa(1), kappas.kappa(2), n_points)?;
    let numeric = invert(&scale, &f_grid)?;

    let fit = fit_lognormal(&numeric, alpha, kappas.kappa(1))?;
    let model = fit.grid(&numeric);
    let gauss = gaussian_reference(&kappas, &f_grid)?;
    let edge = edgeworth4(&kappas, &f_grid)?;

    let vs_fit = similarity(&numeric, &model)?;
    let vs_gauss = similarity(&numeric, &gauss)?;
    let vs_edge = similarity(&numeric, &edge)?;

    Ok(SweepRecord {
        alpha,
        m,
        f0: fit.f0(),
        sigma_prime: fit.sigma_prime(),
        s: fit.shift(),
        kl: finite_or_none(vs_fit.kl),
        jsd: vs_fit.jsd,
        hellinger: vs_fit.hellinger,
        ratio: gaussian_limit_check(&fit, kappas.kappa(2)),
        kl_gaussian: finite_or_none(vs_gauss.kl),
        jsd_gaussian: vs_gauss.jsd,
        hellinger_gaussian: vs_gauss.hellinger,
        kl_edgeworth: finite_or_none(vs_edge.kl),
        jsd_edgeworth: vs_edge.jsd,
        hellinger_edgeworth: vs_edge.hellinger,
    })
}

pub fn run(mut args: SweepArgs, config: &ConfigFile) -> Result<(), CliError> {
    config.fill_string(&mut args.alphas, "alphas")?;
    config.fill_string(&mut args.m_range, "m-range")?;
    config.fill_string(&mut args.m_list, "m-list")?;
    config.fill_usize(&mut args.n_points, "n-points")?;
    config.fill_usize(&mut args.jobs, "jobs")?;
    config.fill_string(&mut args.output, "output")?;

    // defaults mirror the full experimental design
    let alphas = match &args.alphas {
        Some(list) => parse_f64_list(list, "--alphas")?,
        None => vec![-2.0, -1.5, -1.0, -0.5, -0.25, 0.0, 0.25, 0.5],
    };
    let m_values: Vec<usize> = match (&args.m_list, &args.m_range) {
        (Some(list), _) => list
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| CliError::usage(format!("--m-list: `{t}`: {e}")))
            })
            .collect::<Result<_, _>>()?,
        (None, Some(range)) => parse_m_range(range)?,
        (None, None) => parse_m_range("200:2000:10")?,
    };
    for &m in &m_values {
        crate::config::require_even(m)?;
    }
    let n_points = args.n_points.unwrap_or(DEFAULT_GRID_POINTS);
    let path = resolve_output(args.output, "sweep.jsonl");

    // resume: keep already computed pairs, tolerate a torn trailing line
    let mut done: Vec<SweepRecord> = Vec::new();
    if let Ok(existing) = std::fs::read_to_string(&path) {
        for line in existing.lines() {
            if let Ok(record) = serde_json::from_str::<SweepRecord>(line) {
                done.push(record);
            }
        }
    }
    let have: std::collections::HashSet<(u64, usize)> = done
        .iter()
        .map(|r| (r.alpha.to_bits(), r.m))
        .collect();

    let mut pending: Vec<(usize, f64)> = Vec::new();
    for &alpha in &alphas {
        for &m in &m_values {
            if !have.contains(&(alpha.to_bits(), m)) {
                pending.push((m, alpha));
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::runtime(format!("thread pool: {e}")))?;
    let computed: Result<Vec<SweepRecord>, CliError> = pool.install(|| {
        pending
            .par_iter()
            .map(|&(m, alpha)| compute_record(m, alpha, n_points))
            .collect()
    });
    let mut records = done;
    records.extend(computed?);
    records.sort_by(|a, b| {
        a.alpha
            .total_cmp(&b.alpha)
            .then_with(|| a.m.cmp(&b.m))
    });

    let mut out = String::new();
    for record in &records {
        out.push_str(&serde_json::to_string(record).expect("record serializes"));
        out.push('\n');
    }
    write_atomic(&path, &out).map_err(|e| CliError::io(&path, e))?;
    Ok(())
}
