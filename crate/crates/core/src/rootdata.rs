//! Restricted-root data for the rank-one families SO(n+1,1)₀ and SU(n+1,1),
//! and the spectral constants derived from it.
//!
//! Everything here is closed-form: the multiplicities (m_α, m_{2α}) determine
//! ‖α₀‖² = 1/(2m_α + 8m_{2α}) through the Killing-form normalization, the
//! half-sum ρ = ½(m_α + 2m_{2α})·α₀, and with them the horizontal band lines
//! Re λ = −‖ρ‖ − k‖α₀‖ on which non-real first-band resonances live. The SU
//! multiplicities are shipped as table constants and confirmed against the
//! explicit matrix realization in [`crate::oracle`] by the test suite.

use crate::exactnum::{sqrt_rational, ComplexQuad, ExactError, QuadExt, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Errors from root-data computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("family parameter n must be at least 1")]
    InvalidRank,
    #[error("{0} is outside the supported families for this operation")]
    UnsupportedFamily(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The two rank-one families with worked spectral data.
///
/// Quaternionic hyperbolic Sp(n,1) and the octonionic F₄ case are
/// deliberately absent; callers should reject them before reaching this type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// SO(n+1,1)₀, real hyperbolic space of dimension n+1.
    #[serde(rename = "so")]
    RealHyperbolic,
    /// SU(n+1,1), complex hyperbolic space of complex dimension n+1.
    #[serde(rename = "su")]
    ComplexHyperbolic,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::RealHyperbolic => write!(f, "so"),
            Family::ComplexHyperbolic => write!(f, "su"),
        }
    }
}

/// A rank-one group G, identified by family and the integer parameter n ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankOneGroup {
    pub family: Family,
    pub n: u32,
}

impl RankOneGroup {
    pub fn new(family: Family, n: u32) -> Result<Self, RootDataError> {
        if n == 0 {
            return Err(RootDataError::InvalidRank);
        }
        Ok(RankOneGroup { family, n })
    }

    pub fn real_hyperbolic(n: u32) -> Result<Self, RootDataError> {
        Self::new(Family::RealHyperbolic, n)
    }

    pub fn complex_hyperbolic(n: u32) -> Result<Self, RootDataError> {
        Self::new(Family::ComplexHyperbolic, n)
    }

    /// Human-readable group name, e.g. `SO(3,1)` or `SU(2,1)`.
    pub fn name(&self) -> String {
        match self.family {
            Family::RealHyperbolic => format!("SO({},1)", self.n + 1),
            Family::ComplexHyperbolic => format!("SU({},1)", self.n + 1),
        }
    }

    /// dim g as a real Lie algebra.
    pub fn dim_g(&self) -> u32 {
        match self.family {
            Family::RealHyperbolic => (self.n + 1) * (self.n + 2) / 2,
            Family::ComplexHyperbolic => (self.n + 2) * (self.n + 2) - 1,
        }
    }

    /// dim m, the centralizer of a in k (so(n) resp. u(n)).
    pub fn dim_m(&self) -> u32 {
        match self.family {
            Family::RealHyperbolic => self.n * (self.n - 1) / 2,
            Family::ComplexHyperbolic => self.n * self.n,
        }
    }
}

impl fmt::Display for RankOneGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Restricted-root constants of a rank-one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedRootData {
    /// dim g_{α₀}.
    pub m_alpha: u32,
    /// dim g_{2α₀}.
    pub m_2alpha: u32,
    /// ‖α₀‖² = 1/(2m_α + 8m_{2α}).
    pub norm_alpha0_sq: Rational,
    /// ρ = rho_coeff · α₀ with rho_coeff = (m_α + 2m_{2α})/2.
    pub rho_coeff: Rational,
    /// ‖α₀‖ as an exact radical.
    pub norm_alpha0: QuadExt,
    /// ‖ρ‖ = rho_coeff · ‖α₀‖.
    pub norm_rho: QuadExt,
}

/// Computes the restricted-root constants of `g` from the multiplicity table.
///
/// Both families have a one-dimensional split torus; the reduced root α₀ has
/// multiplicity n (real case) or 2n (complex case), and 2α₀ occurs only in
/// the complex case, with multiplicity 1. The norm is the one induced by the
/// Killing form: B|_a = (2m_α + 8m_{2α})·α₀ ⊗ α₀ forces
/// ‖α₀‖² = 1/(2m_α + 8m_{2α}).
pub fn restricted_root_data(g: &RankOneGroup) -> RestrictedRootData {
    let (m_alpha, m_2alpha) = match g.family {
        Family::RealHyperbolic => (g.n, 0),
        Family::ComplexHyperbolic => (2 * g.n, 1),
    };
    let norm_alpha0_sq = Rational::ratio(1, i64::from(2 * m_alpha + 8 * m_2alpha));
    let rho_coeff = Rational::ratio(i64::from(m_alpha + 2 * m_2alpha), 2);
    let norm_alpha0 = sqrt_rational(&norm_alpha0_sq)
        .expect("1/(2m_alpha + 8m_2alpha) is positive with a tiny radicand");
    let norm_rho = norm_alpha0.scale(&rho_coeff);
    RestrictedRootData { m_alpha, m_2alpha, norm_alpha0_sq, rho_coeff, norm_alpha0, norm_rho }
}

/// The horizontal lines that can carry non-real resonances, plus the standing
/// caveat that resonances may also sit on the real axis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandStructure {
    pub norm_rho: QuadExt,
    pub norm_alpha0: QuadExt,
    /// lines[k] = −‖ρ‖ − k·‖α₀‖, strictly decreasing.
    pub lines: Vec<QuadExt>,
    pub caveat: String,
}

/// Real parts of the band lines: `lines[k] = −‖ρ‖ − k·‖α₀‖` for k = 0..=k_max.
pub fn band_lines(g: &RankOneGroup, k_max: u32) -> BandStructure {
    let data = restricted_root_data(g);
    let mut lines = Vec::with_capacity(k_max as usize + 1);
    let mut current = -&data.norm_rho;
    for _ in 0..=k_max {
        lines.push(current.clone());
        current = current
            .try_sub(&data.norm_alpha0)
            .expect("−‖ρ‖ − k‖α₀‖ stays over the group radicand");
    }
    BandStructure {
        norm_rho: data.norm_rho,
        norm_alpha0: data.norm_alpha0,
        lines,
        caveat: "non-real resonances have real part on one of these lines; \
                 resonances may additionally lie anywhere on the real axis"
            .to_string(),
    }
}

/// Converts (λ, μ) from the Killing-form normalization used throughout this
/// crate to the curvature −1 convention in which the hyperbolic metric has
/// sectional curvature −1 and the scalar Laplace eigenvalue on the m-th
/// spherical-harmonic band reads −λ(λ+n) + m′ + (m−m′)(m+m′+n−1).
///
/// The two inner products differ by a factor of 2n, so λ scales by √(2n) and
/// μ by 2n. Only the real hyperbolic family has this reference convention.
pub fn normalization_convert(
    g: &RankOneGroup,
    lambda_k: &ComplexQuad,
    mu_k: &QuadExt,
) -> Result<(ComplexQuad, QuadExt), RootDataError> {
    if g.family != Family::RealHyperbolic {
        return Err(RootDataError::UnsupportedFamily(g.name()));
    }
    let factor = sqrt_rational(&Rational::from_int(i64::from(2 * g.n)))?;
    let lambda = ComplexQuad::new(lambda_k.re.try_mul(&factor)?, lambda_k.im.try_mul(&factor)?);
    let mu = mu_k.scale(&Rational::from_int(i64::from(2 * g.n)));
    Ok((lambda, mu))
}
