//! Exact characteristic function of the free energy F = ln det(Q + S),
//! evaluated in the log domain.
//!
//! The full characteristic function factorises over the M/2 conjugate
//! eigenvalue pairs,
//!
//!   ln χ(k) = (M/2) · ln χ̃(k),
//!   ln χ̃(k) = ik ln(2σ²) + ln Γ(1+ik) + ln 𝐌(−ik, 1, −x),
//!
//! with x = 1/(2σ²). Working with logarithms keeps the M/2 power exact for
//! M up to 10⁶; M/2 is an integer, so the 2πi ambiguity of ln 𝐌 cancels in
//! exp(ln χ).

use num_complex::Complex64;

use crate::cumulants;
use crate::error::{Error, Result};
use crate::specfun::{kummer_m_complex, log_gamma_complex};

/// Disorder strength bundled with the matrix dimension.
///
/// x = 1/(2σ²); when built from a scaling exponent α, x = M^α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisorderScale {
    m: usize,
    x: f64,
    alpha: Option<f64>,
}

impl DisorderScale {
    /// Fixed disorder strength x = 1/(2σ²).
    pub fn from_x(m: usize, x: f64) -> Result<Self> {
        if m < 2 || !m.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "dimension must be even and >= 2, got {m}"
            )));
        }
        if !x.is_finite() || x <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "disorder strength x must be positive and finite, got {x}"
            )));
        }
        Ok(Self { m, x, alpha: None })
    }

    /// Size-coupled disorder 1/(2σ²) = M^α.
    pub fn from_alpha(m: usize, alpha: f64) -> Result<Self> {
        let x = (m as f64).powf(alpha);
        let mut scale = Self::from_x(m, x)?;
        scale.alpha = Some(alpha);
        Ok(scale)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    /// Disorder variance σ² = 1/(2x).
    pub fn sigma2(&self) -> f64 {
        0.5 / self.x
    }

    /// Number of conjugate eigenvalue pairs, M/2.
    pub fn pair_count(&self) -> usize {
        self.m / 2
    }
}

/// ln χ̃(k), the per-eigenvalue-pair log characteristic function.
///
/// Returns exactly 0 at k = 0.
pub fn log_chi_single(k: f64, scale: &DisorderScale) -> Result<Complex64> {
    if !k.is_finite() {
        return Err(Error::InvalidArgument(format!("k must be finite, got {k}")));
    }
    if k == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let x = scale.x();
    // ik ln(2 sigma^2) = -ik ln x
    let linear = Complex64::new(0.0, -k * x.ln());
    let gamma = log_gamma_complex(Complex64::new(1.0, k))?;
    let kummer = kummer_m_complex(k, x)?;
    Ok(linear + gamma + kummer.ln)
}

/// ln χ(k) = (M/2) ln χ̃(k).
pub fn log_chi(k: f64, scale: &DisorderScale) -> Result<Complex64> {
    Ok(log_chi_single(k, scale)? * (scale.m() as f64 / 2.0))
}

/// χ(k) itself; |χ| ≤ 1 for all real k.
pub fn chi(k: f64, scale: &DisorderScale) -> Result<Complex64> {
    Ok(log_chi(k, scale)?.exp())
}

/// |χ(k)| without forming the full complex exponential.
pub fn chi_modulus(k: f64, scale: &DisorderScale) -> Result<f64> {
    Ok(log_chi(k, scale)?.re.exp())
}

/// Points probed per octave when checking that |χ| stays below the threshold.
const SUPPORT_GRID: usize = 32;

/// Truncation radius for Fourier inversion: a k* with |χ(k)| < eps on the
/// refinement grid covering [k*, 2k*], found by doubling then bisection.
///
/// Never returns less than the fallback 8/√κ₂, where |χ| has dropped below
/// e^{−32} for any distribution this close to Gaussian.
pub fn k_support(scale: &DisorderScale, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "eps must lie in (0, 1), got {eps}"
        )));
    }
    let kappa2 = cumulants::cumulants_series(scale.m(), scale.x(), 2)?.kappa(2);
    let fallback = 8.0 / kappa2.sqrt();

    let passes = |k: f64| -> Result<bool> {
        for i in 0..=SUPPORT_GRID {
            let t = k * (1.0 + i as f64 / SUPPORT_GRID as f64);
            if chi_modulus(t, scale)? >= eps {
                return Ok(false);
            }
        }
        Ok(true)
    };

    if passes(fallback)? {
        return Ok(fallback);
    }
    let mut lo = fallback;
    let mut hi = fallback;
    let mut found = false;
    for _ in 0..60 {
        lo = hi;
        hi *= 2.0;
        if passes(hi)? {
            found = true;
            break;
        }
    }
    if !found {
        return Err(Error::NoDecay(format!(
            "|chi| stayed above {eps:.1e} out to k = {hi:.3e} (M = {}, x = {})",
            scale.m(),
            scale.x()
        )));
    }
    for _ in 0..50 {
        if hi - lo < 1e-3 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if passes(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi.max(fallback))
}
