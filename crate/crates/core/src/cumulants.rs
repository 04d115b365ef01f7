//! Exact cumulants of the free-energy distribution and their asymptotic
//! laws across the disorder-scaling regimes 1/(2σ²) = M^α.
//!
//! κ_j is j! times the ξ^j coefficient of
//!
//!   (M/2) · [ ξ ln(2σ²) + ln Γ(1+ξ) + ln 𝐌(−ξ, 1, −x) ],
//!
//! with ξ = ik. The production path composes truncated Taylor series; the
//! Faà di Bruno partition sum over the derivatives 𝐌^{(l,0,0)}(0,1,−x)
//! provides an independent route used for cross-validation.

use crate::error::{Error, Result};
use crate::specfun::{
    incomplete_gamma_zero, kummer_m_taylor, log_gamma_taylor, polygamma_at_one, EULER_GAMMA,
};

/// Orders above this lose too many digits in the series composition.
pub const MAX_SERIES_ORDER: usize = 16;
/// Partition enumeration is kept small; the dual path stops here.
pub const MAX_FAA_DI_BRUNO_ORDER: usize = 6;

/// Cumulants κ₁..κ_J of F at a given (M, x = 1/(2σ²)).
#[derive(Debug, Clone, PartialEq)]
pub struct CumulantSet {
    m: usize,
    x: f64,
    values: Vec<f64>,
}

impl CumulantSet {
    /// Wrap precomputed cumulants (used for synthetic references).
    pub fn from_values(m: usize, x: f64, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("need at least kappa_1".into()));
        }
        Ok(Self { m, x, values })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// Highest available order J.
    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// κ_j (1-based); panics if j is out of range.
    pub fn kappa(&self, j: usize) -> f64 {
        self.values[j - 1]
    }

    /// Rescaled cumulant κ̃_j = 2κ_j/M, the per-eigenvalue-pair cumulant.
    pub fn rescaled(&self, j: usize) -> f64 {
        2.0 * self.kappa(j) / self.m as f64
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn validate_mx(m: usize, x: f64) -> Result<()> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "dimension must be even and >= 2, got {m}"
        )));
    }
    if !x.is_finite() || x <= 1e-300 {
        return Err(Error::InvalidArgument(format!(
            "disorder strength must lie in (1e-300, inf), got {x}"
        )));
    }
    Ok(())
}

/// Closed form of the first cumulant: κ₁ = (M/2) Γ(0, x).
pub fn kappa1(m: usize, x: f64) -> Result<f64> {
    validate_mx(m, x)?;
    Ok(m as f64 / 2.0 * incomplete_gamma_zero(x)?)
}

/// Cumulants up to the given order by power-series composition.
///
/// Builds the order-J series of the bracket—series logarithm of the Kummer
/// Taylor series, plus the ln Γ(1+ξ) series and the linear ξ ln(2σ²)
/// term—then multiplies coefficient j by j! M/2.
pub fn cumulants_series(m: usize, x: f64, order: usize) -> Result<CumulantSet> {
    validate_mx(m, x)?;
    if order < 1 {
        return Err(Error::InvalidArgument("order must be >= 1".into()));
    }
    if order > MAX_SERIES_ORDER {
        return Err(Error::PrecisionLoss(format!(
            "cumulant order {order} exceeds the precision guard {MAX_SERIES_ORDER}"
        )));
    }
    let kummer_log = kummer_m_taylor(x, order)?.log()?;
    let gamma_log = log_gamma_taylor(order)?;
    let bracket = kummer_log.add(&gamma_log);
    let half_m = m as f64 / 2.0;
    let mut values = Vec::with_capacity(order);
    let mut factorial = 1.0f64;
    for j in 1..=order {
        factorial *= j as f64;
        let cj = if j == 1 {
            // the xi^1 coefficient ln(2 sigma^2) - gamma + c_1 collapses
            // analytically to Gamma(0, x); the collapsed form must be used
            // because the float subtraction loses every digit once
            // Gamma(0, x) << ln x (x beyond ~10)
            incomplete_gamma_zero(x)?
        } else {
            bracket.coeff(j).re
        };
        values.push(factorial * half_m * cj);
    }
    Ok(CumulantSet { m, x, values })
}

/// All (m₁, …, m_j) with Σ l·m_l = j.
fn partitions(j: usize) -> Vec<Vec<usize>> {
    fn recurse(j: usize, l: usize, remaining: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if l > j {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        for m in 0..=remaining / l {
            current.push(m);
            recurse(j, l + 1, remaining - l * m, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    recurse(j, 1, j, &mut Vec::new(), &mut out);
    out
}

/// Cumulants through the explicit Faà di Bruno partition sum.
///
/// Cross-validation path, not the production path: the partition count
/// grows super-exponentially, so the order is capped at 6.
pub fn cumulants_faa_di_bruno(m: usize, x: f64, order: usize) -> Result<CumulantSet> {
    validate_mx(m, x)?;
    if !(1..=MAX_FAA_DI_BRUNO_ORDER).contains(&order) {
        return Err(Error::InvalidArgument(format!(
            "Faa di Bruno path supports orders 1..={MAX_FAA_DI_BRUNO_ORDER}, got {order}"
        )));
    }
    // g^{(l)}(0)/l! = c_l of the Kummer Taylor series; the partition sum then
    // gives the logarithmic derivatives of g(xi) = M(-xi, 1, -x)
    let series = kummer_m_taylor(x, order)?;
    let half_m = m as f64 / 2.0;
    let mut values = Vec::with_capacity(order);
    let mut factorial = 1.0f64;
    for j in 1..=order {
        factorial *= j as f64;
        if j == 1 {
            // the single partition m_1 = 1 reduces to the closed form
            values.push(half_m * incomplete_gamma_zero(x)?);
            continue;
        }
        let mut log_deriv = 0.0f64;
        for part in partitions(j) {
            let h: usize = part.iter().sum();
            let mut multinomial = factorial;
            for &ml in &part {
                for v in 1..=ml {
                    multinomial /= v as f64;
                }
            }
            let sign = if h % 2 == 1 { 1.0 } else { -1.0 };
            let mut h_fact = 1.0f64;
            for v in 2..h {
                h_fact *= v as f64;
            }
            let mut prod = 1.0f64;
            for (idx, &ml) in part.iter().enumerate() {
                let l = idx + 1;
                prod *= series.coeff(l).re.powi(ml as i32);
            }
            log_deriv += multinomial * sign * h_fact * prod;
        }
        let total = polygamma_at_one(j - 1)? + log_deriv;
        values.push(half_m * total);
    }
    Ok(CumulantSet { m, x, values })
}

/// κ_j / κ₂^{j/2}, the standardized weight of order j.
pub fn cumulant_ratio(set: &CumulantSet, j: usize) -> f64 {
    assert!(j >= 3 && j <= set.order(), "ratio defined for 3 <= j <= J");
    let kappa2 = set.kappa(2);
    assert!(kappa2 > 0.0, "kappa_2 must be positive");
    set.kappa(j) / kappa2.powf(j as f64 / 2.0)
}

// ---------------------------------------------------------------------------
// Asymptotic regime laws
// ---------------------------------------------------------------------------

/// The five qualitatively different disorder-scaling regimes of α.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// α < 0: disorder dominates; cumulants grow linearly with polynomial
    /// corrections M^{1+jα}, the mean picks up an M ln M term.
    StrongDisorder,
    /// α = 0: variance independent of M; every cumulant grows linearly.
    FixedVariance,
    /// 0 < α < 1: mean exponentially suppressed, κ₂ ~ M^{1−α} sublinear.
    Sublinear,
    /// α = 1: κ₂ → 1, all higher cumulants vanish.
    Marginal,
    /// α > 1: every cumulant vanishes; the disorder becomes irrelevant.
    Vanishing,
}

impl Regime {
    pub fn classify(alpha: f64) -> Regime {
        if alpha < 0.0 {
            Regime::StrongDisorder
        } else if alpha == 0.0 {
            Regime::FixedVariance
        } else if alpha < 1.0 {
            Regime::Sublinear
        } else if alpha == 1.0 {
            Regime::Marginal
        } else {
            Regime::Vanishing
        }
    }
}

/// One term c · M^p (· ln M) of a leading-order law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LawTerm {
    pub coeff: f64,
    pub m_power: f64,
    pub log_factor: bool,
}

/// Leading-order form of κ_j(M) in a given regime.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticLaw {
    pub regime: Regime,
    pub order: usize,
    pub terms: Vec<LawTerm>,
}

impl AsymptoticLaw {
    pub fn evaluate(&self, m: usize) -> f64 {
        let mf = m as f64;
        self.terms
            .iter()
            .map(|t| {
                let base = t.coeff * mf.powf(t.m_power);
                if t.log_factor {
                    base * mf.ln()
                } else {
                    base
                }
            })
            .sum()
    }
}

// Decay constants of the sub-leading corrections, measured empirically from
// the rescaled-cumulant scaling curves; downstream tolerances around them
// are kept loose.
/// κ₂ correction coefficient for α < 0: (M/2)(ψ₁(1) − c·M^{2α}).
pub const DECAY_C2_NEG: f64 = 0.5;
/// κ₃ correction coefficient for α < 0.
pub const DECAY_C3_NEG: f64 = 2.0 / 3.0;
/// κ₄ correction coefficient for α < 0.
pub const DECAY_C4_NEG: f64 = 4.0 / 3.0;
/// κ₂ coefficient for 0 < α ≤ 1: κ₂ ~ (c/2)·M^{1−α} with c = 2.
pub const DECAY_C2_POS: f64 = 2.0;
/// κ₃ coefficient for 0 < α ≤ 1.
pub const DECAY_C3_POS: f64 = 6.0;
/// κ₄ coefficient for 0 < α ≤ 1.
pub const DECAY_C4_POS: f64 = 40.0;

/// Leading-order law for κ_j under 1/(2σ²) = M^α.
///
/// The constant-bearing forms exist for j ≤ 4 only (α ≠ 0); at α = 0 the
/// exact rescaled cumulant at x = 1 provides the slope for any series order.
pub fn asymptotic_law(alpha: f64, order: usize) -> Result<AsymptoticLaw> {
    if order < 1 {
        return Err(Error::InvalidArgument("order must be >= 1".into()));
    }
    let regime = Regime::classify(alpha);
    if order > 4 && regime != Regime::FixedVariance {
        return Err(Error::InvalidArgument(format!(
            "no measured decay constant for order {order} at alpha = {alpha}"
        )));
    }
    let terms = match regime {
        Regime::StrongDisorder => {
            if order == 1 {
                // (M/2)(-gamma - alpha ln M + M^alpha)
                vec![
                    LawTerm {
                        coeff: -EULER_GAMMA / 2.0,
                        m_power: 1.0,
                        log_factor: false,
                    },
                    LawTerm {
                        coeff: -alpha / 2.0,
                        m_power: 1.0,
                        log_factor: true,
                    },
                    LawTerm {
                        coeff: 0.5,
                        m_power: 1.0 + alpha,
                        log_factor: false,
                    },
                ]
            } else {
                let c = [DECAY_C2_NEG, DECAY_C3_NEG, DECAY_C4_NEG][order - 2];
                let sign = if order.is_multiple_of(2) { -1.0 } else { 1.0 }; // (-1)^{j-1}
                vec![
                    LawTerm {
                        coeff: polygamma_at_one(order - 1)? / 2.0,
                        m_power: 1.0,
                        log_factor: false,
                    },
                    LawTerm {
                        coeff: sign * c / 2.0,
                        m_power: 1.0 + order as f64 * alpha,
                        log_factor: false,
                    },
                ]
            }
        }
        Regime::FixedVariance => {
            // exact linear growth; slope = ktilde_j(x = 1)
            let slope = cumulants_series(2, 1.0, order)?.kappa(order);
            vec![LawTerm {
                coeff: slope / 2.0,
                m_power: 1.0,
                log_factor: false,
            }]
        }
        Regime::Sublinear | Regime::Marginal => {
            if order == 1 {
                Vec::new() // exponentially suppressed
            } else {
                let c = [DECAY_C2_POS, DECAY_C3_POS, DECAY_C4_POS][order - 2];
                let sign = if order.is_multiple_of(2) { 1.0 } else { -1.0 }; // (-1)^j
                vec![LawTerm {
                    coeff: sign * c / 2.0,
                    m_power: 1.0 - (order as f64 - 1.0) * alpha,
                    log_factor: false,
                }]
            }
        }
        Regime::Vanishing => Vec::new(),
    };
    Ok(AsymptoticLaw {
        regime,
        order,
        terms,
    })
}

/// Evaluate the leading-order prediction of κ_j at dimension M.
pub fn asymptotic_predict(m: usize, alpha: f64, order: usize) -> Result<f64> {
    Ok(asymptotic_law(alpha, order)?.evaluate(m))
}
