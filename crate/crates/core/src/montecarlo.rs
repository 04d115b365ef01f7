//! Brute-force sampling of the free-energy distribution; ground truth for
//! the analytic pipeline.
//!
//! Draws are reproducible and order-independent: sample i consumes its own
//! counter-indexed ChaCha stream derived from (seed, i), so parallel
//! scheduling cannot change the output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::charfun::DisorderScale;
use crate::error::{Error, Result};
use crate::inversion::{DistributionGrid, GridMeta, GridMethod};
use crate::skewcirc::{build_q, log_det_shifted, sample_disorder};

/// Where the unit-circle phases of the shift come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseSource {
    /// Phases of the first M/2 eigenvalues of Q; F = ln det(Q + S).
    QMatrix,
    /// All phases zero. The F distribution is identical to `QMatrix`
    /// because the angular dependence integrates out.
    Zero,
    /// Phases drawn uniformly per sample.
    Random,
}

/// A reproducible batch of free-energy samples.
#[derive(Debug, Clone)]
pub struct SampleBatch {
    samples: Vec<f64>,
    scale: DisorderScale,
    seed: u64,
    phase_source: PhaseSource,
}

impl SampleBatch {
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn scale(&self) -> &DisorderScale {
        &self.scale
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn phase_source(&self) -> PhaseSource {
        self.phase_source
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Draw `count` free-energy samples F = Σ ln|e^{iφ_j} + λ_{S,j}|².
///
/// Singular draws (a shifted eigenvalue exactly zero, a measure-zero event)
/// are rejected and redrawn from the same per-sample stream.
pub fn sample(
    scale: &DisorderScale,
    count: usize,
    seed: u64,
    phase_source: PhaseSource,
) -> Result<SampleBatch> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be >= 1".into()));
    }
    let m = scale.m();
    let sigma2 = scale.sigma2();
    let fixed_phases: Option<Vec<f64>> = match phase_source {
        PhaseSource::QMatrix => Some(build_q(m)?.eigenvalues().phases_first_half()),
        PhaseSource::Zero => Some(vec![0.0; m / 2]),
        PhaseSource::Random => None,
    };

    let samples: Vec<f64> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            loop {
                let disorder = sample_disorder(m, sigma2, &mut rng);
                let value = match &fixed_phases {
                    Some(phases) => log_det_shifted(&disorder, phases),
                    None => {
                        let phases: Vec<f64> = (0..m / 2)
                            .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
                            .collect();
                        log_det_shifted(&disorder, &phases)
                    }
                };
                match value {
                    Ok(f) => return f,
                    Err(Error::SingularShift) => continue,
                    Err(_) => unreachable!("log_det_shifted only fails on singular shifts here"),
                }
            }
        })
        .collect();

    Ok(SampleBatch {
        samples,
        scale: *scale,
        seed,
        phase_source,
    })
}

/// Unbiased cumulant estimates (k-statistics) with jackknife standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCumulants {
    pub values: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub count: usize,
}

/// k-statistics k₁..k_J from power sums of data centered at `shift`.
fn k_statistics(order: usize, n: f64, t: &[f64; 4], shift: f64) -> Vec<f64> {
    let mean_c = t[0] / n;
    let m2 = t[1] / n - mean_c * mean_c;
    let m3 = t[2] / n - 3.0 * mean_c * t[1] / n + 2.0 * mean_c.powi(3);
    let m4 = t[3] / n - 4.0 * mean_c * t[2] / n + 6.0 * mean_c * mean_c * t[1] / n
        - 3.0 * mean_c.powi(4);
    let mut k = vec![shift + mean_c];
    if order >= 2 {
        k.push(n / (n - 1.0) * m2);
    }
    if order >= 3 {
        k.push(n * n / ((n - 1.0) * (n - 2.0)) * m3);
    }
    if order >= 4 {
        k.push(
            n * n * ((n + 1.0) * m4 - 3.0 * (n - 1.0) * m2 * m2)
                / ((n - 1.0) * (n - 2.0) * (n - 3.0)),
        );
    }
    k
}

/// Unbiased k-statistics κ̂₁..κ̂_J plus delete-one jackknife standard errors.
///
/// Needs at least 10·J samples. Power sums are taken about the batch mean,
/// so the delete-one recomputation is O(1) per left-out sample.
pub fn empirical_cumulants(batch: &SampleBatch, order: usize) -> Result<EmpiricalCumulants> {
    if !(1..=4).contains(&order) {
        return Err(Error::InvalidArgument(format!(
            "supported cumulant orders are 1..=4, got {order}"
        )));
    }
    let n = batch.len();
    if n < 10 * order {
        return Err(Error::InsufficientSamples {
            needed: 10 * order,
            got: n,
        });
    }
    let nf = n as f64;
    let mean = batch.samples().iter().sum::<f64>() / nf;
    let mut t = [0.0f64; 4];
    for &s in batch.samples() {
        let y = s - mean;
        let y2 = y * y;
        t[0] += y;
        t[1] += y2;
        t[2] += y2 * y;
        t[3] += y2 * y2;
    }
    let values = k_statistics(order, nf, &t, mean);

    // delete-one jackknife by downdating the centered power sums
    let mut sums = vec![0.0f64; order];
    let mut sq_sums = vec![0.0f64; order];
    for &s in batch.samples() {
        let y = s - mean;
        let y2 = y * y;
        let td = [t[0] - y, t[1] - y2, t[2] - y2 * y, t[3] - y2 * y2];
        let ki = k_statistics(order, nf - 1.0, &td, mean);
        for (j, &k) in ki.iter().enumerate() {
            sums[j] += k;
            sq_sums[j] += k * k;
        }
    }
    let std_errors = (0..order)
        .map(|j| {
            let avg = sums[j] / nf;
            let var = (sq_sums[j] / nf - avg * avg).max(0.0);
            ((nf - 1.0) * var).sqrt()
        })
        .collect();

    Ok(EmpiricalCumulants {
        values,
        std_errors,
        count: n,
    })
}

/// Density-normalized histogram of the batch on the bins of a uniform grid.
///
/// Interior grid points own bins of full width h centered on them; the two
/// end points own half bins, so the trapezoid integral of the density equals
/// exactly the fraction of samples falling inside [F₀, F_{N−1}].
pub fn histogram(batch: &SampleBatch, f_grid: &[f64]) -> Result<DistributionGrid> {
    if f_grid.len() < 2 {
        return Err(Error::InvalidArgument("need at least two grid points".into()));
    }
    let n_bins = f_grid.len();
    let h = f_grid[1] - f_grid[0];
    let f0 = f_grid[0];
    let f_last = f_grid[n_bins - 1];
    let mut counts = vec![0u64; n_bins];
    for &s in batch.samples() {
        if s < f0 || s > f_last {
            continue;
        }
        let idx = (((s - f0) / h) + 0.5).floor() as usize;
        counts[idx.min(n_bins - 1)] += 1;
    }
    let total = batch.len() as f64;
    let p_values: Vec<f64> = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let width = if i == 0 || i == n_bins - 1 { 0.5 * h } else { h };
            c as f64 / (total * width)
        })
        .collect();
    DistributionGrid::new(
        f_grid.to_vec(),
        p_values,
        GridMeta::new(batch.scale(), GridMethod::Histogram),
    )
}

/// Two-sample Kolmogorov–Smirnov comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsTest {
    /// Supremum distance between the two empirical CDFs.
    pub statistic: f64,
    /// Critical value at the 1 percent level, c(0.01)·√((n+m)/(nm)).
    pub critical_1pct: f64,
}

impl KsTest {
    pub fn passes_at_1pct(&self) -> bool {
        self.statistic < self.critical_1pct
    }
}

/// Two-sample KS statistic with its 1 percent critical value.
pub fn two_sample_ks(a: &[f64], b: &[f64]) -> Result<KsTest> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InsufficientSamples {
            needed: 1,
            got: 0,
        });
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_unstable_by(f64::total_cmp);
    ys.sort_unstable_by(f64::total_cmp);
    let (n, m) = (xs.len(), ys.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < n && j < m {
        let t = xs[i].min(ys[j]);
        while i < n && xs[i] <= t {
            i += 1;
        }
        while j < m && ys[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    // c(alpha) = sqrt(-ln(alpha/2)/2) at alpha = 0.01
    let c = (-(0.005f64).ln() / 2.0).sqrt();
    let critical = c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt();
    Ok(KsTest {
        statistic: d,
        critical_1pct: critical,
    })
}
