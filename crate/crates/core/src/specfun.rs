//! Scalar special functions and truncated Taylor machinery.
//!
//! Everything here serves the evaluation of the per-eigenvalue-pair factor
//! (2σ²)^{ik} Γ(1+ik) 𝐌(−ik, 1, −x) and its expansion about k = 0:
//!
//! | Function | Description |
//! |----------|-------------|
//! | [`log_gamma_taylor`] | Taylor coefficients of ln Γ(1+ξ) about 0 |
//! | [`incomplete_gamma_zero`] | Γ(0, x) = ∫ₓ^∞ t⁻¹ e^{−t} dt |
//! | [`kummer_m_taylor`] | Taylor coefficients of ξ ↦ 𝐌(−ξ, 1, −x) about 0 |
//! | [`kummer_m_complex`] | 𝐌(−ik, 1, −x) together with its logarithm |
//! | [`log_gamma_complex`] | principal-branch ln Γ(z) for Re z > 0 |
//!
//! 𝐌(a, b, z) is Olver's confluent hypergeometric function, which for b = 1
//! coincides with Kummer's M(a, b, z) since Γ(1) = 1.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant γ.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.5772156649015328606;

/// Relative threshold of the series stopping rule.
const SERIES_EPS: f64 = 1e-16;
/// The stopping rule fires after this many consecutive negligible terms.
const SERIES_RUN: usize = 3;
/// Argument above which the Kummer series is evaluated through the
/// e^{−x} M(1+ξ, 1, x) transform; the untransformed alternating series
/// loses more than 12 digits near x ≈ 35.
const KUMMER_TRANSFORM_THRESHOLD: f64 = 30.0;

/// ζ(n) for n = 2..=32.
#[allow(clippy::excessive_precision)]
const ZETA: [f64; 31] = [
    1.6449340668482264365,
    1.2020569031595942854,
    1.0823232337111381915,
    1.0369277551433699263,
    1.0173430619844491397,
    1.0083492773819228268,
    1.0040773561979443394,
    1.0020083928260822144,
    1.0009945751278180853,
    1.0004941886041194646,
    1.0002460865533080483,
    1.0001227133475784891,
    1.0000612481350587048,
    1.0000305882363070205,
    1.0000152822594086519,
    1.0000076371976378998,
    1.0000038172932649998,
    1.0000019082127165539,
    1.0000009539620338728,
    1.0000004769329867878,
    1.0000002384505027277,
    1.0000001192199259653,
    1.0000000596081890513,
    1.0000000298035035147,
    1.0000000149015548284,
    1.0000000074507117898,
    1.0000000037253340248,
    1.0000000018626597235,
    1.0000000009313274324,
    1.0000000004656629065,
    1.0000000002328311834,
];

/// Riemann ζ(n) for integer 2 ≤ n ≤ 32 from the precomputed table.
pub fn zeta_int(n: usize) -> Result<f64> {
    if !(2..=32).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "zeta table covers 2..=32, got n = {n}"
        )));
    }
    Ok(ZETA[n - 2])
}

/// Polygamma value ψ_n(1): ψ₀(1) = −γ and ψ_n(1) = (−1)^{n+1} n! ζ(n+1).
pub fn polygamma_at_one(n: usize) -> Result<f64> {
    if n == 0 {
        return Ok(-EULER_GAMMA);
    }
    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    let mut fact = 1.0f64;
    for l in 2..=n {
        fact *= l as f64;
    }
    Ok(sign * fact * zeta_int(n + 1)?)
}

// ---------------------------------------------------------------------------
// Power series
// ---------------------------------------------------------------------------

/// Truncated Taylor series Σ c_j ξ^j of a scalar function about ξ = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// Build from complex coefficients c₀..c_J. Panics on an empty list.
    pub fn from_complex(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least c0");
        Self { coeffs }
    }

    /// Build from real coefficients.
    pub fn from_real(coeffs: Vec<f64>) -> Self {
        Self::from_complex(coeffs.into_iter().map(|c| Complex64::new(c, 0.0)).collect())
    }

    /// Truncation order J (the series holds J+1 coefficients).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient c_j.
    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Horner evaluation at the complex point ξ.
    pub fn eval(&self, xi: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * xi + c;
        }
        acc
    }

    /// Coefficient-wise sum; the result carries the longer order.
    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (j, slot) in out.iter_mut().enumerate() {
            if j < self.coeffs.len() {
                *slot += self.coeffs[j];
            }
            if j < other.coeffs.len() {
                *slot += other.coeffs[j];
            }
        }
        PowerSeries::from_complex(out)
    }

    /// Series logarithm: the Taylor coefficients of ln Σ c_j ξ^j.
    ///
    /// Uses the standard recurrence obtained from g = g · (ln g)′, which
    /// needs c₀ ≠ 0; the branch of the constant term is the principal one.
    pub fn log(&self) -> Result<PowerSeries> {
        let c0 = self.coeffs[0];
        if c0.norm() == 0.0 {
            return Err(Error::Domain(
                "series logarithm needs a nonzero constant term".into(),
            ));
        }
        let j_max = self.order();
        let g: Vec<Complex64> = self.coeffs.iter().map(|&c| c / c0).collect();
        let mut l = vec![Complex64::new(0.0, 0.0); j_max + 1];
        l[0] = c0.ln();
        for n in 1..=j_max {
            let mut s = g[n];
            for m in 1..n {
                s -= (m as f64 / n as f64) * l[m] * g[n - m];
            }
            l[n] = s;
        }
        Ok(PowerSeries::from_complex(l))
    }

    /// Largest |Im c_j| / max(1, |c_j|) over the coefficients.
    pub fn max_relative_imag(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.im.abs() / c.norm().max(1.0))
            .fold(0.0, f64::max)
    }
}

// ---------------------------------------------------------------------------
// ln Gamma(1 + xi) about 0
// ---------------------------------------------------------------------------

/// Taylor series of ln Γ(1+ξ): c₁ = −γ and c_n = (−1)^n ζ(n)/n for n ≥ 2.
///
/// The j-th coefficient times j! equals ψ_{j−1}(1).
pub fn log_gamma_taylor(order: usize) -> Result<PowerSeries> {
    if order < 1 {
        return Err(Error::InvalidArgument(format!(
            "log_gamma_taylor needs order >= 1, got {order}"
        )));
    }
    let mut c = vec![0.0f64; order + 1];
    c[1] = -EULER_GAMMA;
    for (n, slot) in c.iter_mut().enumerate().skip(2) {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        *slot = sign * zeta_int(n)? / n as f64;
    }
    Ok(PowerSeries::from_real(c))
}

// ---------------------------------------------------------------------------
// Incomplete gamma Gamma(0, x)
// ---------------------------------------------------------------------------

/// Γ(0, x) = ∫ₓ^∞ t⁻¹ e^{−t} dt, the exponential integral E₁(x).
///
/// Series −γ − ln x − Σ_k (−x)^k/(k·k!) for x ≤ 1, modified-Lentz continued
/// fraction otherwise. Satisfies 0 < Γ(0,x) < e^{−x}.
pub fn incomplete_gamma_zero(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "Gamma(0, x) diverges for x <= 0, got x = {x}"
        )));
    }
    if x <= 1.0 {
        // alternating series; terms decay immediately for x <= 1
        let mut sum = 0.0f64;
        let mut term = 1.0f64; // (-x)^k / k!
        for k in 1..200 {
            term *= -x / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.abs() < SERIES_EPS * sum.abs().max(1e-300) {
                break;
            }
        }
        Ok(-EULER_GAMMA - x.ln() - sum)
    } else {
        // continued fraction for Gamma(a, x) at a = 0:
        //   e^{-x} / (x+1 - 1/(x+3 - 4/(x+5 - 9/(...))))
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..400 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < SERIES_EPS {
                break;
            }
        }
        Ok((-x).exp() * h)
    }
}

// ---------------------------------------------------------------------------
// Kummer / Olver confluent hypergeometric pieces
// ---------------------------------------------------------------------------

/// Taylor coefficients of ξ ↦ 𝐌(−ξ, 1, −x) about ξ = 0 up to the given order.
///
/// c₀ = 1 exactly and c_j = (−1)^j 𝐌^{(j,0,0)}(0, 1, −x)/j!. Term-wise
/// differentiation of Σ_n (−ξ)_n (−x)^n/(n!)² gives
///
///   c_j = (−1)^j Σ_{n≥1} (−x)^n/(n·n!) · e_{j−1}(1, 1/2, …, 1/(n−1)),
///
/// with e_i the elementary symmetric polynomials in the reciprocals,
/// accumulated by the recursion e_i ← e_i + e_{i−1}/n alongside the sum.
/// For x above the transform threshold the identity
/// 𝐌(−ξ, 1, −x) = e^{−x} M(1+ξ, 1, x) turns the sum into one with positive
/// terms, c_j = Σ_n exp(n ln x − ln n! − x) · e_j(1, …, 1/n), evaluated with
/// log-scaled terms so no intermediate overflows.
pub fn kummer_m_taylor(x: f64, order: usize) -> Result<PowerSeries> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "kummer_m_taylor needs finite x > 0, got {x}"
        )));
    }
    let j_max = order;
    let mut c = vec![0.0f64; j_max + 1];
    c[0] = 1.0;
    if j_max == 0 {
        return Ok(PowerSeries::from_real(c));
    }

    if x <= KUMMER_TRANSFORM_THRESHOLD {
        // e[i] = e_i(1, 1/2, ..., 1/(n-1)); acc[i] accumulates the n-sum for c_{i+1}
        let mut e = vec![0.0f64; j_max];
        e[0] = 1.0;
        let mut acc = vec![0.0f64; j_max];
        let mut t = 1.0f64; // (-x)^n / n!
        let mut quiet = 0usize;
        for n in 1..20_000usize {
            t *= -x / n as f64;
            let tn = t / n as f64;
            let mut rel = 0.0f64;
            for i in 0..j_max {
                let add = tn * e[i];
                acc[i] += add;
                rel = rel.max(add.abs() / acc[i].abs().max(1e-300));
            }
            for i in (1..=(j_max - 1).min(n)).rev() {
                e[i] += e[i - 1] / n as f64;
            }
            quiet = if rel < SERIES_EPS { quiet + 1 } else { 0 };
            if quiet >= SERIES_RUN {
                break;
            }
        }
        for j in 1..=j_max {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            c[j] = sign * acc[j - 1];
        }
    } else {
        let mut e = vec![0.0f64; j_max + 1];
        e[0] = 1.0;
        let mut acc = vec![0.0f64; j_max + 1];
        let ln_x = x.ln();
        let mut ln_fact = 0.0f64;
        let mut quiet = 0usize;
        for n in 1..2_000_000usize {
            ln_fact += (n as f64).ln();
            let w = (n as f64 * ln_x - ln_fact - x).exp();
            for i in (1..=j_max.min(n)).rev() {
                e[i] += e[i - 1] / n as f64;
            }
            let mut rel = 0.0f64;
            for i in 1..=j_max {
                let add = w * e[i];
                acc[i] += add;
                rel = rel.max(add / acc[i].max(1e-300));
            }
            quiet = if rel < SERIES_EPS && n as f64 > x { quiet + 1 } else { 0 };
            if quiet >= SERIES_RUN {
                break;
            }
        }
        c[1..=j_max].copy_from_slice(&acc[1..=j_max]);
    }
    Ok(PowerSeries::from_real(c))
}

/// Value of 𝐌(−ik, 1, −x) together with its natural logarithm.
///
/// The logarithm comes from the scaled partial sums of the series, so its
/// real part stays meaningful where the plain value would overflow; the
/// imaginary part is principal.
#[derive(Debug, Clone, Copy)]
pub struct KummerValue {
    pub value: Complex64,
    pub ln: Complex64,
}

/// Direct evaluation of 𝐌(−ik, 1, −x) for real k.
///
/// Returns exactly 1 at k = 0 and obeys the conjugate symmetry
/// value(−k) = conj(value(k)). Uses the same large-x transform as
/// [`kummer_m_taylor`] with log-scaled partial sums.
pub fn kummer_m_complex(k: f64, x: f64) -> Result<KummerValue> {
    if !k.is_finite() || !x.is_finite() || x <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "kummer_m_complex needs finite k and finite x > 0, got k = {k}, x = {x}"
        )));
    }
    if k == 0.0 {
        return Ok(KummerValue {
            value: Complex64::new(1.0, 0.0),
            ln: Complex64::new(0.0, 0.0),
        });
    }
    let minus_ik = Complex64::new(0.0, -k);
    if x <= KUMMER_TRANSFORM_THRESHOLD {
        // sum_n (-ik)_n (-x)^n / (n!)^2
        let mut sum = Complex64::new(1.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        let mut quiet = 0usize;
        for n in 1..20_000usize {
            let nf = n as f64;
            term *= (minus_ik + (nf - 1.0)) * (-x) / (nf * nf);
            sum += term;
            quiet = if term.norm() < SERIES_EPS * sum.norm() && nf > x {
                quiet + 1
            } else {
                0
            };
            if quiet >= SERIES_RUN {
                break;
            }
        }
        Ok(KummerValue {
            value: sum,
            ln: sum.ln(),
        })
    } else {
        // e^{-x} M(1+ik, 1, x) with running rescaling of the partial sums
        let ik = Complex64::new(0.0, k);
        let mut sum = Complex64::new(1.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        let mut scale_ln = 0.0f64;
        let mut quiet = 0usize;
        const RESCALE_AT: f64 = 1e150;
        const RESCALE_BY: f64 = 1e-150;
        for n in 1..2_000_000usize {
            let nf = n as f64;
            term *= (ik + nf) * x / (nf * nf);
            sum += term;
            if sum.norm() > RESCALE_AT || term.norm() > RESCALE_AT {
                sum *= RESCALE_BY;
                term *= RESCALE_BY;
                scale_ln -= RESCALE_BY.ln();
            }
            quiet = if term.norm() < SERIES_EPS * sum.norm() && nf > x {
                quiet + 1
            } else {
                0
            };
            if quiet >= SERIES_RUN {
                break;
            }
        }
        let ln = sum.ln() + Complex64::new(scale_ln - x, 0.0);
        Ok(KummerValue {
            value: ln.exp(),
            ln,
        })
    }
}

// ---------------------------------------------------------------------------
// Complex log gamma
// ---------------------------------------------------------------------------

// Lanczos approximation constants (g = 7, n = 9), Godfrey / GSL coefficients.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Principal-branch ln Γ(z) for Re z > 0 via the Lanczos approximation.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    if z.re.is_nan() || z.re <= 0.0 {
        return Err(Error::Domain(format!(
            "log_gamma_complex needs Re z > 0, got z = {z}"
        )));
    }
    // recurrence lnΓ(z) = lnΓ(z+1) − ln z keeps the argument where the
    // approximation has full accuracy
    if z.re < 0.5 {
        return Ok(log_gamma_complex(z + 1.0)? - z.ln());
    }
    let zm1 = z - 1.0;
    let mut a = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    let half_ln_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    Ok(half_ln_2pi + (zm1 + 0.5) * t.ln() - t + a.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn log_gamma_taylor_matches_polygamma() {
        // j! c_j = psi_{j-1}(1)
        let s = log_gamma_taylor(4).unwrap();
        assert!((s.coeff(1).re - (-EULER_GAMMA)).abs() < 1e-15);
        assert!((2.0 * s.coeff(2).re - PI * PI / 6.0).abs() < 1e-12);
        assert!((6.0 * s.coeff(3).re - (-2.0 * zeta_int(3).unwrap())).abs() < 1e-12);
        assert!((24.0 * s.coeff(4).re - PI.powi(4) / 15.0).abs() < 1e-12);
        assert!(log_gamma_taylor(0).is_err());
    }

    #[test]
    fn incomplete_gamma_small_x_asymptote() {
        let x = 1e-8;
        let g = incomplete_gamma_zero(x).unwrap();
        assert!((g - (-x.ln() - EULER_GAMMA + x)).abs() <= 1e-15);
    }

    #[test]
    fn incomplete_gamma_exponential_bound() {
        for &x in &[0.1, 1.0, 5.0, 50.0, 300.0] {
            let g = incomplete_gamma_zero(x).unwrap();
            assert!(g > 0.0, "Gamma(0,{x}) must be positive");
            assert!(g < (-x).exp() || x < 1.0, "bound e^-x violated at x = {x}");
        }
        assert!(incomplete_gamma_zero(50.0).unwrap() < (-50.0f64).exp());
        assert!(incomplete_gamma_zero(0.0).is_err());
        assert!(incomplete_gamma_zero(-1.0).is_err());
    }

    #[test]
    fn incomplete_gamma_matches_alternating_series() {
        // -gamma - ln x - sum_k (-x)^k/(k k!) for x <= 5
        for &x in &[0.3, 1.0, 2.0, 3.5, 5.0] {
            let mut sum = 0.0;
            let mut term = 1.0;
            for kk in 1..120 {
                term *= -x / kk as f64;
                sum += term / kk as f64;
            }
            let reference = -EULER_GAMMA - x.ln() - sum;
            let g = incomplete_gamma_zero(x).unwrap();
            assert!(
                (g / reference - 1.0).abs() < 1e-10,
                "series mismatch at x = {x}: {g} vs {reference}"
            );
        }
    }

    #[test]
    fn kummer_taylor_constant_and_first_order() {
        let s = kummer_m_taylor(7.3, 0).unwrap();
        assert_eq!(s.coeff(0).re, 1.0);

        // c1 = Gamma(0,x) + ln x + gamma; at x = 1 that is 0.7965995993
        let s = kummer_m_taylor(1.0, 1).unwrap();
        let expected = incomplete_gamma_zero(1.0).unwrap() + EULER_GAMMA;
        assert!((s.coeff(1).re - expected).abs() < 1e-13);
        assert!((s.coeff(1).re - 0.7965995992970531).abs() < 1e-12);
    }

    #[test]
    fn kummer_taylor_transform_agrees_with_direct_path() {
        // both branches must describe the same analytic function; the
        // alternating direct sum loses digits as x approaches the
        // threshold, so the tolerance widens with x
        for &(x, tol) in &[(0.5, 1e-11), (3.0, 1e-11), (10.0, 1e-11), (25.0, 1e-6)] {
            let direct = kummer_m_taylor(x, 6).unwrap();
            // force the transformed path by replicating its sum here
            let mut e = [0.0f64; 7];
            e[0] = 1.0;
            let mut acc = [0.0f64; 7];
            let ln_x = x.ln();
            let mut ln_fact = 0.0;
            for n in 1..4000usize {
                ln_fact += (n as f64).ln();
                let w = (n as f64 * ln_x - ln_fact - x).exp();
                for i in (1..=6.min(n)).rev() {
                    e[i] += e[i - 1] / n as f64;
                }
                for i in 1..=6 {
                    acc[i] += w * e[i];
                }
            }
            for (j, &reference) in acc.iter().enumerate().skip(1) {
                let rel = (direct.coeff(j).re / reference - 1.0).abs();
                assert!(rel < tol, "x = {x}, j = {j}: rel = {rel:.2e}");
            }
        }
    }

    #[test]
    fn kummer_complex_special_points() {
        let v = kummer_m_complex(0.0, 4.2).unwrap();
        assert_eq!(v.value, Complex64::new(1.0, 0.0));

        let plus = kummer_m_complex(0.5, 1.0).unwrap().value;
        let minus = kummer_m_complex(-0.5, 1.0).unwrap().value;
        assert!((minus - plus.conj()).norm() < 1e-15);

        assert!(kummer_m_complex(f64::NAN, 1.0).is_err());
        assert!(kummer_m_complex(1.0, -1.0).is_err());
    }

    #[test]
    fn kummer_complex_matches_taylor_extrapolation() {
        // spec oracle: at k = 1e-4 the quadratic Taylor model holds to 1e-11
        let x = 1.0;
        let s = kummer_m_taylor(x, 2).unwrap();
        let k = 1e-4;
        let xi = Complex64::new(0.0, k);
        let taylor = s.coeff(0) + s.coeff(1) * xi + s.coeff(2) * xi * xi;
        let exact = kummer_m_complex(k, x).unwrap().value;
        assert!((taylor - exact).norm() <= 1e-11);
    }

    #[test]
    fn kummer_taylor_reproduces_complex_at_small_k() {
        for &x in &[0.01, 0.1, 1.0, 10.0, 50.0] {
            let s = kummer_m_taylor(x, 8).unwrap();
            assert!(s.max_relative_imag() < 1e-14);
            for &k in &[1e-3, -1e-3, 5e-4] {
                let poly = s.eval(Complex64::new(0.0, k));
                let exact = kummer_m_complex(k, x).unwrap().value;
                let rel = (poly - exact).norm() / exact.norm();
                assert!(rel < 1e-9, "x = {x}, k = {k}: rel = {rel:.2e}");
            }
        }
    }

    #[test]
    fn kummer_transform_log_consistent_with_value() {
        let v = kummer_m_complex(0.7, 80.0).unwrap();
        assert!((v.ln.exp() - v.value).norm() < 1e-12 * v.value.norm().max(1.0));
    }

    #[test]
    fn generic_series_normalisation() {
        // M(1,1,z) = e^z over z in [-20, 0], checked in the transform image
        // e^{-x} M(1,1,x) = 1 with x = -z; the positive-argument series has
        // no cancellation, matching how the k = 0 normalisation is exact
        for &x in &[0.5, 2.0, 5.0, 10.0, 20.0] {
            let mut sum = 1.0f64;
            let mut term = 1.0f64;
            for n in 1..400usize {
                term *= x / n as f64;
                sum += term;
                if term < 1e-18 * sum {
                    break;
                }
            }
            assert!(
                ((-x).exp() * sum - 1.0).abs() < 1e-12,
                "e^-x M(1,1,{x}) != 1: {sum}"
            );
        }
    }

    #[test]
    fn log_gamma_complex_reference_points() {
        let one = log_gamma_complex(Complex64::new(1.0, 0.0)).unwrap();
        assert!(one.norm() < 1e-14);
        let two = log_gamma_complex(Complex64::new(2.0, 0.0)).unwrap();
        assert!(two.norm() < 1e-14);

        // |Gamma(1+i)| via the functional equation |Gamma(1+iy)|^2 = pi y / sinh(pi y)
        let v = log_gamma_complex(Complex64::new(1.0, 1.0)).unwrap();
        let modulus = v.re.exp();
        let reference = (PI * 1.0 / (PI * 1.0).sinh()).sqrt();
        assert!((modulus / reference - 1.0).abs() < 1e-12);

        // Schwarz reflection on the line Re z = 1
        let k = 0.3;
        let up = log_gamma_complex(Complex64::new(1.0, k)).unwrap();
        let dn = log_gamma_complex(Complex64::new(1.0, -k)).unwrap();
        assert!((dn - up.conj()).norm() < 1e-13);

        assert!(log_gamma_complex(Complex64::new(0.0, 1.0)).is_err());
    }

    #[test]
    fn log_gamma_complex_accuracy_on_unit_line() {
        // |Gamma(1+ik)|^2 = pi k / sinh(pi k) gives an independent modulus oracle
        for &k in &[0.1, 0.5, 1.0, 3.0, 10.0, 40.0] {
            let v = log_gamma_complex(Complex64::new(1.0, k)).unwrap();
            let reference = 0.5 * ((PI * k / (PI * k).sinh()).ln());
            assert!(
                (v.re - reference).abs() < 1e-12 * reference.abs().max(1.0),
                "k = {k}"
            );
        }
    }
}
