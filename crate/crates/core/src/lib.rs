//! Distribution of the free energy F = ln det(Q + S) when the disorder S is
//! a Gaussian real skew-circulant random matrix and Q has a unimodular
//! skew-circulant spectrum.
//!
//! The characteristic function of F factorises over conjugate eigenvalue
//! pairs into Gamma and confluent hypergeometric factors; everything else
//! follows from it:
//!
//! - [`specfun`] — scalar special functions and Taylor machinery,
//! - [`skewcirc`] — matrix representation, spectra, disorder sampling,
//! - [`charfun`] — the exact characteristic function in the log domain,
//! - [`cumulants`] — cumulants of any order by two independent routes, plus
//!   the asymptotic laws across the scaling regimes 1/(2σ²) = M^α,
//! - [`inversion`] — Fourier inversion to the density and the fourth-order
//!   Hermite approximation,
//! - [`montecarlo`] — reproducible sampling oracle,
//! - [`analysis`] — log-normal fitting, Gaussian-limit checks, scaling
//!   regression, and distribution-similarity measures.

pub mod analysis;
pub mod charfun;
pub mod cumulants;
pub mod error;
pub mod inversion;
pub mod montecarlo;
pub mod skewcirc;
pub mod specfun;

pub use analysis::{LogNormalParams, ScalingFit, SimilarityReport};
pub use charfun::DisorderScale;
pub use cumulants::{AsymptoticLaw, CumulantSet, Regime};
pub use error::{Error, Result};
pub use inversion::{DistributionGrid, GridMeta, GridMethod, InversionOptions};
pub use montecarlo::{EmpiricalCumulants, KsTest, PhaseSource, SampleBatch};
pub use skewcirc::{SkewCirculant, Spectrum};
pub use specfun::{KummerValue, PowerSeries};
