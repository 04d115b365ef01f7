//! `lndet mc` — reproducible Monte Carlo sampling with empirical cumulants.
//!
//! Samples go to the CSV output; the empirical cumulants (with jackknife
//! standard errors) and any KS comparison go to stdout as one JSON object.

use clap::{Args, ValueEnum};

use lndet::montecarlo::{empirical_cumulants, sample, two_sample_ks, PhaseSource};

use crate::config::{require_even, resolve_output, resolve_scale, ConfigFile};
use crate::fmt::{sci, write_atomic};
use crate::CliError;

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum PhaseSourceArg {
    /// Phases of the first M/2 eigenvalues of Q.
    Q,
    /// All phases zero.
    Zero,
    /// Uniform random phases per draw.
    Random,
}

impl PhaseSourceArg {
    fn to_core(self) -> PhaseSource {
        match self {
            Self::Q => PhaseSource::QMatrix,
            Self::Zero => PhaseSource::Zero,
            Self::Random => PhaseSource::Random,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Self::Q => "q",
            Self::Zero => "zero",
            Self::Random => "random",
        }
    }

    fn parse(text: &str) -> Result<Self, CliError> {
        match text {
            "q" => Ok(Self::Q),
            "zero" => Ok(Self::Zero),
            "random" => Ok(Self::Random),
            other => Err(CliError::usage(format!(
                "phase source must be q, zero or random, got `{other}`"
            ))),
        }
    }
}

#[derive(Args)]
pub struct McArgs {
    /// Matrix dimension M (even).
    #[arg(long)]
    m: Option<usize>,
    /// Disorder exponent: 1/(2 sigma^2) = M^alpha.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Fixed disorder strength x = 1/(2 sigma^2).
    #[arg(long)]
    x: Option<f64>,
    /// Number of samples.
    #[arg(long)]
    n: Option<usize>,
    /// RNG seed; identical seeds give identical outputs.
    #[arg(long)]
    seed: Option<u64>,
    /// Where the unit-circle phases come from.
    #[arg(long = "phase-source", value_enum)]
    phase_source: Option<PhaseSourceArg>,
    /// Draw a second batch with this phase source and report the
    /// two-sample KS statistic against the primary batch.
    #[arg(long = "ks-vs", value_enum)]
    ks_vs: Option<PhaseSourceArg>,
    /// Output CSV path.
    #[arg(long, short)]
    output: Option<String>,
}

pub fn run(mut args: McArgs, config: &ConfigFile) -> Result<(), CliError> {
    config.fill_usize(&mut args.m, "m")?;
    config.fill_f64(&mut args.alpha, "alpha")?;
    config.fill_f64(&mut args.x, "x")?;
    config.fill_usize(&mut args.n, "n")?;
    config.fill_u64(&mut args.seed, "seed")?;
    config.fill_string(&mut args.output, "output")?;
    if args.phase_source.is_none() {
        let mut text = None;
        config.fill_string(&mut text, "phase-source")?;
        if let Some(t) = text {
            args.phase_source = Some(PhaseSourceArg::parse(&t)?);
        }
    }
    if args.ks_vs.is_none() {
        let mut text = None;
        config.fill_string(&mut text, "ks-vs")?;
        if let Some(t) = text {
            args.ks_vs = Some(PhaseSourceArg::parse(&t)?);
        }
    }

    let m = args.m.ok_or_else(|| CliError::usage("--m is required"))?;
    require_even(m)?;
    let scale = resolve_scale(m, args.alpha, args.x)?;
    let count = args.n.ok_or_else(|| CliError::usage("--n is required"))?;
    if count == 0 {
        return Err(CliError::usage("--n must be at least 1"));
    }
    let seed = args.seed.unwrap_or(0);
    let source = args.phase_source.unwrap_or(PhaseSourceArg::Q);

    let batch = sample(&scale, count, seed, source.to_core())?;

    let mut csv = format!(
        "# seed={} m={} x={} alpha={} phase_source={} count={}\nF\n",
        seed,
        m,
        sci(scale.x()),
        scale
            .alpha()
            .map_or_else(|| "none".to_string(), sci),
        source.label(),
        count
    );
    for &f in batch.samples() {
        csv.push_str(&sci(f));
        csv.push('\n');
    }
    let path = resolve_output(args.output, "mc.csv");
    write_atomic(&path, &csv).map_err(|e| CliError::io(&path, e))?;

    let order = 4.min(count / 10).max(1);
    let est = empirical_cumulants(&batch, order)?;

    // an independent stream for the comparison batch
    let ks = match args.ks_vs {
        None => serde_json::Value::Null,
        Some(other) => {
            let other_batch = sample(
                &scale,
                count,
                seed.wrapping_add(0x9e3779b97f4a7c15),
                other.to_core(),
            )?;
            let test = two_sample_ks(batch.samples(), other_batch.samples())?;
            serde_json::json!({
                "vs": other.label(),
                "statistic": test.statistic,
                "critical1pct": test.critical_1pct,
                "passesAt1pct": test.passes_at_1pct(),
            })
        }
    };

    let report = serde_json::json!({
        "seed": seed,
        "M": m,
        "x": scale.x(),
        "alpha": scale.alpha(),
        "phaseSource": source.label(),
        "count": count,
        "cumulants": est.values,
        "stdErrors": est.std_errors,
        "ks": ks,
    });
    println!("{report}");
    Ok(())
}
