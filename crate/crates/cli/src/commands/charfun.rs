//! `lndet charfun` — tabulate χ(k) on a uniform grid.

use clap::Args;

use crate::config::{require_even, resolve_output, resolve_scale, ConfigFile};
use crate::fmt::{sci, write_atomic};
use crate::CliError;

#[derive(Args)]
pub struct CharfunArgs {
    /// Matrix dimension M (even).
    #[arg(long)]
    m: Option<usize>,
    /// Disorder exponent: 1/(2 sigma^2) = M^alpha.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Fixed disorder strength x = 1/(2 sigma^2).
    #[arg(long)]
    x: Option<f64>,
    /// Largest k tabulated.
    #[arg(long = "k-max")]
    k_max: Option<f64>,
    /// Number of rows (k = 0 .. k-max inclusive).
    #[arg(long)]
    n: Option<usize>,
    /// Output CSV path.
    #[arg(long, short)]
    output: Option<String>,
}

pub fn run(mut args: CharfunArgs, config: &ConfigFile) -> Result<(), CliError> {
    config.fill_usize(&mut args.m, "m")?;
    config.fill_f64(&mut args.alpha, "alpha")?;
    config.fill_f64(&mut args.x, "x")?;
    config.fill_f64(&mut args.k_max, "k-max")?;
    config.fill_usize(&mut args.n, "n")?;
    config.fill_string(&mut args.output, "output")?;

    let m = args.m.ok_or_else(|| CliError::usage("--m is required"))?;
    require_even(m)?;
    let scale = resolve_scale(m, args.alpha, args.x)?;
    let k_max = args.k_max.ok_or_else(|| CliError::usage("--k-max is required"))?;
    if k_max.is_nan() || k_max <= 0.0 {
        return Err(CliError::usage("--k-max must be positive"));
    }
    let n = args.n.unwrap_or(512);
    if n < 2 {
        return Err(CliError::usage("--n must be at least 2"));
    }

    let mut out = String::from("k,re_chi,im_chi,abs_chi\n");
    for i in 0..n {
        let k = k_max * i as f64 / (n - 1) as f64;
        let chi = lndet::charfun::chi(k, &scale)?;
        out.push_str(&format!(
            "{},{},{},{}\n",
            sci(k),
            sci(chi.re),
            sci(chi.im),
            sci(chi.norm())
        ));
    }

    let path = resolve_output(args.output, "charfun.csv");
    write_atomic(&path, &out).map_err(|e| CliError::io(&path, e))?;
    Ok(())
}
