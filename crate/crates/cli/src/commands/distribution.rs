//! `lndet distribution` — Fourier inversion over the ±6√κ₂ window with a
//! cumulant sidecar.

use clap::Args;

use lndet::cumulants::cumulants_series;
use lndet::inversion::{default_grid, invert_with, InversionOptions, DEFAULT_GRID_POINTS};

use crate::config::{require_even, resolve_output, resolve_scale, ConfigFile};
use crate::fmt::{sci, write_atomic};
use crate::CliError;

#[derive(Args)]
pub struct DistributionArgs {
    /// Matrix dimension M (even).
    #[arg(long)]
    m: Option<usize>,
    /// Disorder exponent: 1/(2 sigma^2) = M^alpha.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Fixed disorder strength x = 1/(2 sigma^2).
    #[arg(long)]
    x: Option<f64>,
    /// Number of F grid points.
    #[arg(long = "n-points")]
    n_points: Option<usize>,
    /// Truncation threshold for the k support search.
    #[arg(long = "k-eps")]
    k_eps: Option<f64>,
    /// Output CSV path; the cumulant sidecar replaces its extension with .json.
    #[arg(long, short)]
    output: Option<String>,
}

pub fn run(mut args: DistributionArgs, config: &ConfigFile) -> Result<(), CliError> {
    config.fill_usize(&mut args.m, "m")?;
    config.fill_f64(&mut args.alpha, "alpha")?;
    config.fill_f64(&mut args.x, "x")?;
    config.fill_usize(&mut args.n_points, "n-points")?;
    config.fill_f64(&mut args.k_eps, "k-eps")?;
    config.fill_string(&mut args.output, "output")?;

    let m = args.m.ok_or_else(|| CliError::usage("--m is required"))?;
    require_even(m)?;
    let scale = resolve_scale(m, args.alpha, args.x)?;
    let n_points = args.n_points.unwrap_or(DEFAULT_GRID_POINTS);
    let opts = InversionOptions {
        k_eps: args.k_eps.unwrap_or(1e-12),
        ..Default::default()
    };

    let kappas = cumulants_series(scale.m(), scale.x(), 4)?;
    let f_grid = default_grid(kappas.kappa(1), kappas.kappa(2), n_points)?;
    let grid = invert_with(&scale, &f_grid, &opts)?;

    let mut csv = String::from("F,p\n");
    for (&f, &p) in grid.f_values().iter().zip(grid.p_values()) {
        csv.push_str(&format!("{},{}\n", sci(f), sci(p)));
    }
    let path = resolve_output(args.output, "distribution.csv");
    write_atomic(&path, &csv).map_err(|e| CliError::io(&path, e))?;

    let sidecar = serde_json::json!({
        "M": scale.m(),
        "alpha": scale.alpha(),
        "x": scale.x(),
        "kappa1": kappas.kappa(1),
        "kappa2": kappas.kappa(2),
        "kappa3": kappas.kappa(3),
        "kappa4": kappas.kappa(4),
        "mass": grid.mass(),
        "nPoints": n_points,
    });
    let sidecar_path = path.with_extension("json");
    write_atomic(&sidecar_path, &format!("{sidecar}\n"))
        .map_err(|e| CliError::io(&sidecar_path, e))?;
    Ok(())
}
