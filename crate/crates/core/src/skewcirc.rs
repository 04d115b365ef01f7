//! Skew-circulant matrices: representation, closed-form spectra, the fixed
//! coupling matrix Q, and Gaussian disorder sampling.
//!
//! An even-dimension real skew-circulant matrix is determined by its M
//! independent entries S₀..S_{M−1} through S_{ij} = S_{i−j} and
//! S_m = −S_{m−M}. All such matrices share one eigenbasis, so eigenvalues
//! follow from the half-shifted discrete Fourier sum
//!
//!   λ_i = Σ_m S_m ω^{m(i+1/2)},  ω = e^{i2π/M},
//!
//! and come in conjugate pairs λ_{M−1−i} = conj(λ_i). The determinant of the
//! dense expansion is therefore never negative.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};

/// Even-dimension real skew-circulant matrix stored by its M independent entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewCirculant {
    entries: Vec<f64>,
}

impl SkewCirculant {
    /// Wrap the M independent entries S₀..S_{M−1}; M must be even and ≥ 2.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        let m = entries.len();
        if m < 2 || !m.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "skew-circulant dimension must be even and >= 2, got {m}"
            )));
        }
        Ok(Self { entries })
    }

    /// Matrix dimension M.
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// The M independent entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Dense row-major expansion: S_{ij} = S_{i−j}, with S_m = −S_{m+M} for m < 0.
    pub fn to_dense(&self) -> Vec<f64> {
        let m = self.dim();
        let mut dense = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                let d = i as isize - j as isize;
                dense[i * m + j] = if d >= 0 {
                    self.entries[d as usize]
                } else {
                    -self.entries[(d + m as isize) as usize]
                };
            }
        }
        dense
    }

    /// Closed-form spectrum λ_i = Σ_m S_m ω^{m(i+1/2)} by direct summation.
    ///
    /// O(M²); the second half of the spectrum is filled in by conjugation,
    /// which makes the pairing exact.
    pub fn eigenvalues(&self) -> Spectrum {
        let m = self.dim();
        let mut values = vec![Complex64::new(0.0, 0.0); m];
        let step = 2.0 * std::f64::consts::PI / m as f64;
        for i in 0..m / 2 {
            let freq = (i as f64 + 0.5) * step;
            let mut acc = Complex64::new(0.0, 0.0);
            for (mm, &s) in self.entries.iter().enumerate() {
                let phase = freq * mm as f64;
                acc += s * Complex64::new(phase.cos(), phase.sin());
            }
            values[i] = acc;
            values[m - 1 - i] = acc.conj();
        }
        Spectrum { values }
    }

    /// M · Σ_m S_m², which equals tr S S† of the dense expansion.
    pub fn trace_ss_dagger(&self) -> f64 {
        self.dim() as f64 * self.entries.iter().map(|s| s * s).sum::<f64>()
    }
}

/// Eigenvalues of a skew-circulant matrix, ordered by index i = 0..M−1.
#[derive(Debug, Clone)]
pub struct Spectrum {
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The first M/2 eigenvalues; index i pairs with M−1−i.
    pub fn first_half(&self) -> &[Complex64] {
        &self.values[..self.values.len() / 2]
    }

    /// Phases of the first M/2 eigenvalues.
    pub fn phases_first_half(&self) -> Vec<f64> {
        self.first_half().iter().map(|v| v.arg()).collect()
    }
}

/// The coupling matrix Q with entries Q_m = 1/(M sin(π(m+1/2)/M)).
///
/// All of its eigenvalues lie on the unit circle.
pub fn build_q(m: usize) -> Result<SkewCirculant> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "Q needs an even dimension >= 2, got {m}"
        )));
    }
    let mf = m as f64;
    let entries = (0..m)
        .map(|mm| 1.0 / (mf * (std::f64::consts::PI * (mm as f64 + 0.5) / mf).sin()))
        .collect();
    SkewCirculant::new(entries)
}

/// Draw one disorder matrix: entries are iid N(0, 2σ²/M).
///
/// The entry variance 2σ²/M follows from tr S S† = M Σ_m S_m² inside the
/// Gaussian weight exp(−tr S S†/4σ²); it makes the real and imaginary parts
/// of every eigenvalue independent with variance σ² each.
pub fn sample_disorder<R: Rng + ?Sized>(m: usize, sigma2: f64, rng: &mut R) -> SkewCirculant {
    assert!(m >= 2 && m.is_multiple_of(2), "disorder dimension must be even");
    assert!(sigma2 > 0.0, "sigma2 must be positive");
    let normal = Normal::new(0.0, (2.0 * sigma2 / m as f64).sqrt()).expect("valid std dev");
    let entries = (0..m).map(|_| normal.sample(rng)).collect();
    SkewCirculant { entries }
}

/// F = Σ_{j<M/2} ln |e^{iφ_j} + λ_{S,j}|² for the given unit-circle phases φ.
///
/// Equals ln det(Q + S) when φ are the phases of Q's first M/2 eigenvalues.
pub fn log_det_shifted(s: &SkewCirculant, q_phases: &[f64]) -> Result<f64> {
    let m = s.dim();
    if q_phases.len() != m / 2 {
        return Err(Error::InvalidArgument(format!(
            "expected {} phases, got {}",
            m / 2,
            q_phases.len()
        )));
    }
    let spectrum = s.eigenvalues();
    let mut f = 0.0f64;
    for (lambda, &phi) in spectrum.first_half().iter().zip(q_phases) {
        let shifted = Complex64::new(phi.cos(), phi.sin()) + lambda;
        let norm_sq = shifted.norm_sqr();
        if norm_sq == 0.0 {
            return Err(Error::SingularShift);
        }
        f += norm_sq.ln();
    }
    Ok(f)
}
