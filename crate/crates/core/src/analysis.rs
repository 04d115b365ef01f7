//! Log-normal model and fit, Gaussian-limit constraint check,
//! parameter-scaling regression, and distribution-similarity measures.

use crate::error::{Error, Result};
use crate::inversion::{DistributionGrid, GridMethod};

/// Parameters (f₀, σ′, s) of the shifted/reflected log-normal model
///
///   p(F) = 1/(|f₀| √(2πσ′²)) · u⁻¹ exp(−ln²u / 2σ′²),  u = 1 − (F−s)/f₀,
///
/// supported on u > 0; left-skewed for f₀ > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogNormalParams {
    f0: f64,
    sigma_prime: f64,
    s: f64,
}

impl LogNormalParams {
    pub fn new(f0: f64, sigma_prime: f64, s: f64) -> Result<Self> {
        if f0 == 0.0 || !f0.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "f0 must be nonzero and finite, got {f0}"
            )));
        }
        if !sigma_prime.is_finite() || sigma_prime <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "sigma' must be positive and finite, got {sigma_prime}"
            )));
        }
        if !s.is_finite() {
            return Err(Error::InvalidArgument("shift s must be finite".into()));
        }
        Ok(Self {
            f0,
            sigma_prime,
            s,
        })
    }

    pub fn f0(&self) -> f64 {
        self.f0
    }

    pub fn sigma_prime(&self) -> f64 {
        self.sigma_prime
    }

    pub fn shift(&self) -> f64 {
        self.s
    }

    /// Density value at F; zero outside the support.
    pub fn pdf(&self, f: f64) -> f64 {
        let t = -(f - self.s) / self.f0;
        let u = 1.0 + t;
        if u <= 0.0 {
            return 0.0;
        }
        let ln_u = t.ln_1p();
        let sp2 = self.sigma_prime * self.sigma_prime;
        (self.f0.abs() * (2.0 * std::f64::consts::PI * sp2).sqrt() * u)
            .recip()
            * (-ln_u * ln_u / (2.0 * sp2)).exp()
    }

    /// First cumulant of the model: f₀(1 − exp(σ′²/2)) + s.
    pub fn mean(&self) -> f64 {
        self.f0 * (1.0 - (self.sigma_prime * self.sigma_prime / 2.0).exp()) + self.s
    }

    /// Evaluate the model on the abscissae of `template`, inheriting its meta.
    pub fn grid(&self, template: &DistributionGrid) -> DistributionGrid {
        let p = template.f_values().iter().map(|&f| self.pdf(f)).collect();
        let mut meta = *template.meta();
        meta.method = GridMethod::LogNormal;
        DistributionGrid::new(template.f_values().to_vec(), p, meta)
            .expect("template grid is already validated")
    }
}

/// Free-function form of the model density.
pub fn lognormal_pdf(f: f64, params: &LogNormalParams) -> f64 {
    params.pdf(f)
}

const FIT_MAX_ITERATIONS: usize = 500;
const FIT_GRADIENT_TOL: f64 = 1e-10;

/// Model state in the internal fit coordinates a = 1/f₀, w = f₀σ′, s.
///
/// In these coordinates the Gaussian limit f₀ → ∞ is the interior point
/// a = 0, so targets with vanishing skew stay regular: with d = F − s,
/// z = ln(1 − ad)/(aw) → −d/w and the density tends to N(s, w²).
#[derive(Clone, Copy)]
struct FitPoint {
    a: f64,
    w: f64,
    s: f64,
}

impl FitPoint {
    fn density(&self, f: f64) -> f64 {
        let d = f - self.s;
        let u = 1.0 - self.a * d;
        if u <= 0.0 {
            return 0.0;
        }
        let z = self.z(d);
        (-0.5 * z * z).exp() / (self.w * (2.0 * std::f64::consts::PI).sqrt() * u)
    }

    fn z(&self, d: f64) -> f64 {
        if self.a == 0.0 {
            -d / self.w
        } else {
            (-self.a * d).ln_1p() / (self.a * self.w)
        }
    }

    /// Density gradient (∂p/∂a, ∂p/∂w, ∂p/∂s); zero outside the support.
    fn gradient(&self, f: f64) -> [f64; 3] {
        let d = f - self.s;
        let u = 1.0 - self.a * d;
        if u <= 0.0 {
            return [0.0; 3];
        }
        let p = self.density(f);
        let z = self.z(d);
        let w = self.w;
        let dlnp_da = if self.a == 0.0 {
            d - d * d * d / (2.0 * w * w)
        } else {
            let ad = self.a * d;
            // N = -ad/u - ln(1 - ad) ~ -(ad)^2/2; the direct difference
            // cancels below |ad| ~ 1e-4, switch to the series there
            let n_val = if ad.abs() < 1e-4 {
                -ad * ad
                    * (0.5 + ad * (2.0 / 3.0 + ad * (0.75 + ad * (0.8 + ad * 5.0 / 6.0))))
            } else {
                -ad / u - (-ad).ln_1p()
            };
            -z * n_val / (w * self.a * self.a) + d / u
        };
        let dlnp_dw = (z * z - 1.0) / w;
        let dlnp_ds = -z / (u * w) - self.a / u;
        [p * dlnp_da, p * dlnp_dw, p * dlnp_ds]
    }

    fn into_params(self) -> Result<LogNormalParams> {
        // a lands at exactly 0 only for a perfectly symmetric target; keep
        // the returned parametrisation finite
        let a = if self.a == 0.0 { f64::EPSILON } else { self.a };
        LogNormalParams::new(1.0 / a, (self.w * a).abs(), self.s)
    }
}

/// Least-squares fit of the log-normal density to a grid.
///
/// Damped Gauss–Newton over (f₀, σ′, s) — over (f₀, σ′) with s pinned to κ₁
/// when α > 0 — iterated until the gradient norm drops below 1e-10, with at
/// most 500 iterations. Initialization: f₀ = 1.7 M, σ′ = √κ₂/f₀ with κ₂
/// taken from the target's moments, s = the target's mean. Internally the
/// iteration runs in the coordinates (1/f₀, f₀σ′, s), where the family is
/// well-conditioned all the way to its Gaussian limit.
pub fn fit_lognormal(
    target: &DistributionGrid,
    alpha: f64,
    kappa1: f64,
) -> Result<LogNormalParams> {
    let pin_shift = alpha > 0.0;
    let [mean, variance, _, _] = target.cumulants4();
    if variance.is_nan() || variance <= 0.0 {
        return Err(Error::InvalidArgument(
            "target grid has nonpositive variance".into(),
        ));
    }
    let m = target.meta().m;
    let mut point = FitPoint {
        a: 1.0 / (1.7 * m as f64),
        w: variance.sqrt(),
        s: if pin_shift { kappa1 } else { mean },
    };

    let f = target.f_values();
    let p = target.p_values();
    let n_params = if pin_shift { 2 } else { 3 };

    let ssq_of = |pt: &FitPoint| -> f64 {
        f.iter()
            .zip(p)
            .map(|(&fi, &pi)| {
                let r = pt.density(fi) - pi;
                r * r
            })
            .sum()
    };

    let mut lambda = 1e-3;
    let mut ssq = ssq_of(&point);
    let mut gradient_norm = f64::INFINITY;

    for _iteration in 0..FIT_MAX_ITERATIONS {
        let mut jt_j = [[0.0f64; 3]; 3];
        let mut jt_r = [0.0f64; 3];
        for (&fi, &pi) in f.iter().zip(p) {
            let row = point.gradient(fi);
            let r = point.density(fi) - pi;
            for a in 0..n_params {
                jt_r[a] += row[a] * r;
                for b in 0..n_params {
                    jt_j[a][b] += row[a] * row[b];
                }
            }
        }
        gradient_norm = jt_r[..n_params]
            .iter()
            .map(|g| g.abs())
            .fold(0.0, f64::max);
        if gradient_norm < FIT_GRADIENT_TOL {
            return point.into_params();
        }

        // Levenberg-style damping of the normal equations
        let mut improved = false;
        for _ in 0..60 {
            let mut a = jt_j;
            for d in 0..n_params {
                a[d][d] += lambda * jt_j[d][d].max(1e-300);
            }
            if let Some(step) = solve3(&a, &jt_r, n_params) {
                let trial = FitPoint {
                    a: point.a - step[0],
                    w: point.w - step[1],
                    s: if pin_shift { point.s } else { point.s - step[2] },
                };
                if trial.w > 0.0 {
                    let trial_ssq = ssq_of(&trial);
                    if trial_ssq <= ssq {
                        point = trial;
                        ssq = trial_ssq;
                        lambda = (lambda * 0.3).max(1e-14);
                        improved = true;
                        break;
                    }
                }
            }
            lambda *= 10.0;
            if lambda > 1e14 {
                break;
            }
        }
        if !improved {
            break;
        }
    }
    Err(Error::FitFailure {
        iterations: FIT_MAX_ITERATIONS,
        gradient_norm,
        residual_norm: ssq.sqrt(),
    })
}

/// Solve a small symmetric system by Gaussian elimination with pivoting.
fn solve3(a: &[[f64; 3]; 3], b: &[f64; 3], dim: usize) -> Option<[f64; 3]> {
    let mut m = [[0.0f64; 4]; 3];
    for i in 0..dim {
        m[i][..dim].copy_from_slice(&a[i][..dim]);
        m[i][3] = b[i];
    }
    for col in 0..dim {
        let pivot = (col..dim).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        let pivot_row = m[col];
        for row in m[col + 1..dim].iter_mut() {
            let factor = row[col] / pivot_row[col];
            for (slot, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *slot -= factor * p;
            }
        }
    }
    let mut x = [0.0f64; 3];
    for col in (0..dim).rev() {
        let mut acc = m[col][3];
        for (&coeff, &known) in m[col][col + 1..dim].iter().zip(&x[col + 1..dim]) {
            acc -= coeff * known;
        }
        x[col] = acc / m[col][col];
    }
    Some(x)
}

/// The Gaussian-limit constraint ratio (f₀σ′)²/κ₂, which approaches 1 as M grows.
pub fn gaussian_limit_check(params: &LogNormalParams, kappa2: f64) -> f64 {
    let fs = params.f0 * params.sigma_prime;
    fs * fs / kappa2
}

// ---------------------------------------------------------------------------
// Similarity measures
// ---------------------------------------------------------------------------

/// Bounded similarity measures between two discrete distributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityReport {
    pub kl: f64,
    pub jsd: f64,
    pub hellinger: f64,
}

fn check_aligned(p: &DistributionGrid, q: &DistributionGrid) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::GridMismatch(format!(
            "lengths {} vs {}",
            p.len(),
            q.len()
        )));
    }
    for (a, b) in p.f_values().iter().zip(q.f_values()) {
        if (a - b).abs() > 1e-12 * a.abs().max(1.0) {
            return Err(Error::GridMismatch(format!("abscissae differ: {a} vs {b}")));
        }
    }
    Ok(())
}

/// Absolute values renormalized to unit bin-sum; signed densities (the
/// Hermite approximation) are scored through their absolute value.
fn to_probabilities(grid: &DistributionGrid) -> Vec<f64> {
    let total: f64 = grid.p_values().iter().map(|p| p.abs()).sum();
    grid.p_values().iter().map(|p| p.abs() / total).collect()
}

fn kl_discrete(p: &[f64], q: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (&pi, &qi) in p.iter().zip(q) {
        if pi > 0.0 {
            if qi == 0.0 {
                return f64::INFINITY;
            }
            acc += pi * (pi / qi).ln();
        }
    }
    acc
}

/// Kullback–Leibler divergence D(P‖Q) on renormalized aligned grids.
///
/// 0·ln 0 := 0; +∞ when P puts mass where Q has none.
pub fn kl(p: &DistributionGrid, q: &DistributionGrid) -> Result<f64> {
    check_aligned(p, q)?;
    Ok(kl_discrete(&to_probabilities(p), &to_probabilities(q)))
}

/// Jensen–Shannon divergence, symmetric and bounded by ln 2.
pub fn jsd(p: &DistributionGrid, q: &DistributionGrid) -> Result<f64> {
    check_aligned(p, q)?;
    let pp = to_probabilities(p);
    let qq = to_probabilities(q);
    let mix: Vec<f64> = pp.iter().zip(&qq).map(|(a, b)| 0.5 * (a + b)).collect();
    Ok(0.5 * kl_discrete(&pp, &mix) + 0.5 * kl_discrete(&qq, &mix))
}

/// Hellinger distance H = √(Σ(√pᵢ − √qᵢ)²)/√2, bounded by 1.
pub fn hellinger(p: &DistributionGrid, q: &DistributionGrid) -> Result<f64> {
    check_aligned(p, q)?;
    let pp = to_probabilities(p);
    let qq = to_probabilities(q);
    let sum: f64 = pp
        .iter()
        .zip(&qq)
        .map(|(a, b)| {
            let d = a.sqrt() - b.sqrt();
            d * d
        })
        .sum();
    Ok((sum / 2.0).sqrt())
}

/// All three measures in one pass.
pub fn similarity(p: &DistributionGrid, q: &DistributionGrid) -> Result<SimilarityReport> {
    Ok(SimilarityReport {
        kl: kl(p, q)?,
        jsd: jsd(p, q)?,
        hellinger: hellinger(p, q)?,
    })
}

// ---------------------------------------------------------------------------
// Parameter-scaling regression
// ---------------------------------------------------------------------------

/// Linear least-squares fit of c₁ M^{p₁} + c₂ M^{p₂} with fixed exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFit {
    pub exponents: (f64, f64),
    pub coefficients: (f64, f64),
    pub residual_norm: f64,
}

impl ScalingFit {
    pub fn evaluate(&self, m: f64) -> f64 {
        self.coefficients.0 * m.powf(self.exponents.0)
            + self.coefficients.1 * m.powf(self.exponents.1)
    }
}

/// Fit value ≈ c₁ M^{p₁} + c₂ M^{p₂} over (M, value) points via the normal
/// equations; exponents are supplied, not searched.
pub fn scaling_regression(points: &[(f64, f64)], exponents: (f64, f64)) -> Result<ScalingFit> {
    if points.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if exponents.0 == exponents.1 {
        return Err(Error::InvalidArgument(
            "exponents must differ for a two-term fit".into(),
        ));
    }
    let (p1, p2) = exponents;
    let (mut a11, mut a12, mut a22, mut b1, mut b2) = (0.0f64, 0.0, 0.0, 0.0, 0.0);
    for &(m, v) in points {
        let u = m.powf(p1);
        let w = m.powf(p2);
        a11 += u * u;
        a12 += u * w;
        a22 += w * w;
        b1 += u * v;
        b2 += w * v;
    }
    let det = a11 * a22 - a12 * a12;
    if det.abs() <= 1e-12 * a11 * a22 {
        return Err(Error::RankDeficient(format!(
            "normal-equation determinant {det:.3e} too small for exponents {exponents:?}"
        )));
    }
    let c1 = (b1 * a22 - b2 * a12) / det;
    let c2 = (a11 * b2 - a12 * b1) / det;
    let residual_norm = points
        .iter()
        .map(|&(m, v)| {
            let r = v - c1 * m.powf(p1) - c2 * m.powf(p2);
            r * r
        })
        .sum::<f64>()
        .sqrt();
    Ok(ScalingFit {
        exponents,
        coefficients: (c1, c2),
        residual_norm,
    })
}
