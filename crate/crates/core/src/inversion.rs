//! Fourier inversion of the characteristic function to the density p(F),
//! plus the fourth-order Hermite (Edgeworth) approximation.
//!
//! Since χ(−k) = conj(χ(k)) the density is real and
//!
//!   p(F) = (1/π) ∫₀^∞ Re( e^{−ikF} χ(k) ) dk,
//!
//! truncated at the support radius where |χ| < eps and integrated by the
//! composite trapezoid rule with a Nyquist-bounded step.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::charfun::{self, DisorderScale};
use crate::cumulants::{self, CumulantSet};
use crate::error::{Error, Result};

/// Grid resolution used when none is requested; halving the spacing moves
/// densities by less than 1e-6.
pub const DEFAULT_GRID_POINTS: usize = 1201;

/// How the density values of a [`DistributionGrid`] were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMethod {
    /// Numerical Fourier inversion of the exact characteristic function.
    Inversion,
    /// Gaussian times fourth-order Hermite corrections; may dip negative.
    Edgeworth4,
    /// Plain Gaussian with the exact mean and variance.
    Gaussian,
    /// Density-normalized Monte Carlo histogram.
    Histogram,
    /// Evaluated log-normal model.
    LogNormal,
    /// Anything constructed externally (tests, synthetic references).
    Synthetic,
}

/// Provenance of a grid: dimension, disorder strength, production method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMeta {
    pub m: usize,
    pub x: f64,
    pub alpha: Option<f64>,
    pub method: GridMethod,
}

impl GridMeta {
    pub fn new(scale: &DisorderScale, method: GridMethod) -> Self {
        Self {
            m: scale.m(),
            x: scale.x(),
            alpha: scale.alpha(),
            method,
        }
    }
}

/// Uniformly spaced F values with density values p(F).
///
/// The common currency of inversion, fitting and similarity scoring.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionGrid {
    f_values: Vec<f64>,
    p_values: Vec<f64>,
    meta: GridMeta,
}

impl DistributionGrid {
    /// Wrap values after checking the grid is strictly increasing and
    /// uniform to 1e-12 relative.
    pub fn new(f_values: Vec<f64>, p_values: Vec<f64>, meta: GridMeta) -> Result<Self> {
        if f_values.len() < 2 || f_values.len() != p_values.len() {
            return Err(Error::InvalidArgument(format!(
                "grid needs >= 2 aligned points, got {} / {}",
                f_values.len(),
                p_values.len()
            )));
        }
        let h = f_values[1] - f_values[0];
        if h.is_nan() || h <= 0.0 {
            return Err(Error::InvalidArgument("grid must be increasing".into()));
        }
        for w in f_values.windows(2) {
            let step = w[1] - w[0];
            if (step - h).abs() > 1e-12 * h.abs().max(1.0) {
                return Err(Error::InvalidArgument(
                    "grid spacing is not uniform to 1e-12 relative".into(),
                ));
            }
        }
        Ok(Self {
            f_values,
            p_values,
            meta,
        })
    }

    pub fn f_values(&self) -> &[f64] {
        &self.f_values
    }

    pub fn p_values(&self) -> &[f64] {
        &self.p_values
    }

    pub fn meta(&self) -> &GridMeta {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.f_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f_values.is_empty()
    }

    /// Grid spacing h.
    pub fn spacing(&self) -> f64 {
        self.f_values[1] - self.f_values[0]
    }

    /// Trapezoid integral of p over the grid: the captured probability mass.
    pub fn mass(&self) -> f64 {
        trapezoid(&self.f_values, &self.p_values)
    }

    /// First four cumulants of the grid density by trapezoid quadrature:
    /// mean, variance, third central moment, fourth cumulant m₄ − 3m₂².
    pub fn cumulants4(&self) -> [f64; 4] {
        let f = &self.f_values;
        let p = &self.p_values;
        let mass = self.mass();
        let weighted: Vec<f64> = f.iter().zip(p).map(|(&fi, &pi)| fi * pi).collect();
        let mean = trapezoid(f, &weighted) / mass;
        let mut central = [0.0f64; 3];
        for (r, slot) in central.iter_mut().enumerate() {
            let vals: Vec<f64> = f
                .iter()
                .zip(p)
                .map(|(&fi, &pi)| (fi - mean).powi(r as i32 + 2) * pi)
                .collect();
            *slot = trapezoid(f, &vals) / mass;
        }
        let [m2, m3, m4] = central;
        [mean, m2, m3, m4 - 3.0 * m2 * m2]
    }

    /// Standardized skewness m₃/m₂^{3/2} of the grid density.
    pub fn skewness(&self) -> f64 {
        let [_, m2, m3, _] = self.cumulants4();
        m3 / m2.powf(1.5)
    }
}

fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 1..x.len() {
        acc += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    }
    acc
}

/// Uniform grid over [κ₁ − 6√κ₂, κ₁ + 6√κ₂].
pub fn default_grid(kappa1: f64, kappa2: f64, n_points: usize) -> Result<Vec<f64>> {
    if kappa2.is_nan() || kappa2 <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "kappa_2 must be positive, got {kappa2}"
        )));
    }
    if n_points < 2 {
        return Err(Error::InvalidArgument("need at least two grid points".into()));
    }
    let sd = kappa2.sqrt();
    let lo = kappa1 - 6.0 * sd;
    let hi = kappa1 + 6.0 * sd;
    let h = (hi - lo) / (n_points - 1) as f64;
    Ok((0..n_points).map(|i| lo + h * i as f64).collect())
}

/// Quadrature controls for [`invert_with`].
#[derive(Debug, Clone, Copy)]
pub struct InversionOptions {
    /// Truncation threshold handed to the support search.
    pub k_eps: f64,
    /// Safety factor in the Nyquist bound Δk ≤ 2π/(safety · width).
    pub nyquist_safety: f64,
}

impl Default for InversionOptions {
    fn default() -> Self {
        Self {
            k_eps: 1e-12,
            nyquist_safety: 4.0,
        }
    }
}

/// Invert χ onto the given F grid with default quadrature controls.
pub fn invert(scale: &DisorderScale, f_grid: &[f64]) -> Result<DistributionGrid> {
    invert_with(scale, f_grid, &InversionOptions::default())
}

/// Invert χ onto the given F grid.
///
/// The k integral is truncated at the support radius and evaluated by the
/// composite trapezoid rule with endpoint halving; grid points are
/// independent, so the F loop runs data-parallel with a deterministic
/// per-point reduction.
pub fn invert_with(
    scale: &DisorderScale,
    f_grid: &[f64],
    opts: &InversionOptions,
) -> Result<DistributionGrid> {
    if f_grid.len() < 2 {
        return Err(Error::InvalidArgument("need at least two grid points".into()));
    }
    let k_star = charfun::k_support(scale, opts.k_eps)?;
    let width = f_grid[f_grid.len() - 1] - f_grid[0];
    let dk_max = 2.0 * std::f64::consts::PI / (opts.nyquist_safety * width);
    let n_k = ((k_star / dk_max).ceil() as usize + 1).max(2);
    let dk = k_star / (n_k - 1) as f64;

    let chi: Vec<Complex64> = (0..n_k)
        .map(|i| charfun::chi(i as f64 * dk, scale))
        .collect::<Result<_>>()?;

    let p_values: Vec<f64> = f_grid
        .par_iter()
        .map(|&f| {
            let mut acc = 0.0f64;
            for (i, &c) in chi.iter().enumerate() {
                let k = i as f64 * dk;
                let rotated = Complex64::new(0.0, -k * f).exp() * c;
                let w = if i == 0 || i == n_k - 1 { 0.5 } else { 1.0 };
                acc += w * rotated.re;
            }
            acc * dk / std::f64::consts::PI
        })
        .collect();

    DistributionGrid::new(
        f_grid.to_vec(),
        p_values,
        GridMeta::new(scale, GridMethod::Inversion),
    )
}

/// Physicists' Hermite polynomials H₃ and H₄.
fn hermite3(y: f64) -> f64 {
    8.0 * y * y * y - 12.0 * y
}

fn hermite4(y: f64) -> f64 {
    let y2 = y * y;
    16.0 * y2 * y2 - 48.0 * y2 + 12.0
}

/// Fourth-order cumulant approximation of the density:
///
///   p(F) ≈ N(κ₁,κ₂)(F) · [1 + Σ_{j=3,4} κ_j/(j!(2κ₂)^{j/2}) H_j(y)],
///
/// with y = (F−κ₁)/√(2κ₂). A signed density: it may dip negative in the
/// tails, and it reduces exactly to the Gaussian when κ₃ = κ₄ = 0.
pub fn edgeworth4(kappas: &CumulantSet, f_grid: &[f64]) -> Result<DistributionGrid> {
    if kappas.order() < 4 {
        return Err(Error::InvalidArgument(
            "edgeworth4 needs cumulants of orders 1..4".into(),
        ));
    }
    let (k1, k2, k3, k4) = (
        kappas.kappa(1),
        kappas.kappa(2),
        kappas.kappa(3),
        kappas.kappa(4),
    );
    if k2.is_nan() || k2 <= 0.0 {
        return Err(Error::InvalidArgument("kappa_2 must be positive".into()));
    }
    let norm = 1.0 / (2.0 * std::f64::consts::PI * k2).sqrt();
    let two_k2 = 2.0 * k2;
    let w3 = k3 / (6.0 * two_k2.powf(1.5));
    let w4 = k4 / (24.0 * two_k2 * two_k2);
    let p_values = f_grid
        .iter()
        .map(|&f| {
            let y = (f - k1) / two_k2.sqrt();
            let gauss = norm * (-(f - k1) * (f - k1) / two_k2).exp();
            gauss * (1.0 + w3 * hermite3(y) + w4 * hermite4(y))
        })
        .collect();
    DistributionGrid::new(
        f_grid.to_vec(),
        p_values,
        GridMeta {
            m: kappas.m(),
            x: kappas.x(),
            alpha: None,
            method: GridMethod::Edgeworth4,
        },
    )
}

/// Gaussian reference density with the exact mean κ₁ and variance κ₂.
pub fn gaussian_reference(kappas: &CumulantSet, f_grid: &[f64]) -> Result<DistributionGrid> {
    let zeroed = CumulantSet::from_values(
        kappas.m(),
        kappas.x(),
        vec![kappas.kappa(1), kappas.kappa(2), 0.0, 0.0],
    )?;
    let mut grid = edgeworth4(&zeroed, f_grid)?;
    grid.meta.method = GridMethod::Gaussian;
    Ok(grid)
}

/// Inversion over the default ±6√κ₂ window: grid construction plus
/// [`invert`] in one call. Returns the grid and the cumulants used.
pub fn invert_default(scale: &DisorderScale, n_points: usize) -> Result<(DistributionGrid, CumulantSet)> {
    let kappas = cumulants::cumulants_series(scale.m(), scale.x(), 4)?;
    let f_grid = default_grid(kappas.kappa(1), kappas.kappa(2), n_points)?;
    Ok((invert(scale, &f_grid)?, kappas))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_endpoints() {
        let g = default_grid(0.0, 1.0, 13).unwrap();
        assert_eq!(g.len(), 13);
        assert!((g[0] + 6.0).abs() < 1e-14);
        assert!((g[12] - 6.0).abs() < 1e-14);
        assert!((g[1] - g[0] - 1.0).abs() < 1e-14);

        let g = default_grid(100.0, 4.0, 101).unwrap();
        assert!((g[0] - 88.0).abs() < 1e-12);
        assert!((g[100] - 112.0).abs() < 1e-12);

        assert!(default_grid(0.0, 0.0, 10).is_err());
        assert!(default_grid(0.0, -1.0, 10).is_err());
    }

    #[test]
    fn grid_validation() {
        let meta = GridMeta {
            m: 2,
            x: 1.0,
            alpha: None,
            method: GridMethod::Synthetic,
        };
        assert!(DistributionGrid::new(vec![0.0], vec![1.0], meta).is_err());
        assert!(DistributionGrid::new(vec![0.0, 1.0], vec![1.0], meta).is_err());
        assert!(DistributionGrid::new(vec![0.0, 1.0, 1.5], vec![1.0; 3], meta).is_err());
        assert!(DistributionGrid::new(vec![1.0, 0.0], vec![1.0; 2], meta).is_err());
        let g = DistributionGrid::new(vec![0.0, 1.0, 2.0], vec![0.25, 0.5, 0.25], meta).unwrap();
        assert!((g.spacing() - 1.0).abs() < 1e-15);
        assert!((g.mass() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn inversion_normalisation_and_moments() {
        let scale = DisorderScale::from_alpha(200, 0.0).unwrap();
        let (grid, kappas) = invert_default(&scale, DEFAULT_GRID_POINTS).unwrap();
        assert!((grid.mass() - 1.0).abs() <= 5e-3);
        let [m1, m2, _, _] = grid.cumulants4();
        assert!((m1 / kappas.kappa(1) - 1.0).abs() < 1e-3);
        assert!((m2 / kappas.kappa(2) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn inversion_positive_and_left_skewed() {
        let scale = DisorderScale::from_x(200, 1.0).unwrap();
        let (grid, _) = invert_default(&scale, 801).unwrap();
        for (&f, &p) in grid.f_values().iter().zip(grid.p_values()) {
            assert!(p >= -1e-9, "p({f}) = {p}");
        }
        assert!(grid.skewness() < 0.0);
    }

    #[test]
    fn quadrature_refinement_is_converged() {
        let scale = DisorderScale::from_alpha(200, 0.0).unwrap();
        let kappas = cumulants::cumulants_series(200, 1.0, 2).unwrap();
        let f_grid = default_grid(kappas.kappa(1), kappas.kappa(2), 601).unwrap();
        let base = invert(&scale, &f_grid).unwrap();
        let fine = invert_with(
            &scale,
            &f_grid,
            &InversionOptions {
                k_eps: 1e-12,
                nyquist_safety: 8.0,
            },
        )
        .unwrap();
        let max_dev = base
            .p_values()
            .iter()
            .zip(fine.p_values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(max_dev < 1e-6, "max |dp| = {max_dev:.2e}");
    }

    #[test]
    fn edgeworth_reduces_to_gaussian() {
        let kappas = CumulantSet::from_values(8, 1.0, vec![2.0, 4.0, 0.0, 0.0]).unwrap();
        let f_grid = default_grid(2.0, 4.0, 301).unwrap();
        let e = edgeworth4(&kappas, &f_grid).unwrap();
        for (&f, &p) in e.f_values().iter().zip(e.p_values()) {
            let gauss = (-(f - 2.0) * (f - 2.0) / 8.0).exp() / (8.0 * std::f64::consts::PI).sqrt();
            assert!((p - gauss).abs() < 1e-15);
        }
    }

    #[test]
    fn edgeworth_integrates_to_one() {
        // Hermite corrections integrate to zero against the Gaussian weight
        let kappas = cumulants::cumulants_series(1000, 1.0, 4).unwrap();
        let f_grid = default_grid(kappas.kappa(1), kappas.kappa(2), 1201).unwrap();
        let e = edgeworth4(&kappas, &f_grid).unwrap();
        assert!((e.mass() - 1.0).abs() <= 1e-3);
        assert_eq!(e.meta().method, GridMethod::Edgeworth4);
    }
}
