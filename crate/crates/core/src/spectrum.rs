//! The quantum–classical correspondence map: for a first-band resonance λ of
//! the geodesic flow on Γ\SO(n+1,1)₀/M with lowest M-type τ inside the
//! K-type σ, the associated Laplace eigenvalue is
//!
//! μ(λ) = ‖ρ‖² − (λ+‖ρ‖)² + ‖iω_σ+iδ_k‖² − ‖iω_τ+iδ_m‖² + ‖iδ_m‖² − ‖iδ_k‖²,
//!
//! i.e. −λ(λ+2‖ρ‖) plus a rational weight term. This module evaluates the
//! map and its inverse exactly, reproduces the closed form of the weight
//! term for the spherical-harmonic family, computes the principal symbol
//! scalars of the Bochner Laplacian per M-isotypic component, and classifies
//! the Jordan-block size at the branch point λ = −‖ρ‖.

use crate::exactnum::{ComplexQuad, ExactError, QuadExt, Rational};
use crate::reps::{
    branch_to_m, casimir_invariant, centralizer_m, check_assumption1, check_assumption2,
    maximal_compact, multiplicity, IrrepSpec, RepsError,
};
use crate::rootdata::{restricted_root_data, RankOneGroup, RootDataError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// λ as an exact complex number: the λ(H₀) coordinate on the complexified
/// dual of the split torus a.
pub type SpectralParameter = ComplexQuad;

/// Errors from correspondence computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("{tau} does not occur in {sigma} restricted to M")]
    IncompatiblePair { sigma: String, tau: String },
    #[error("{rep} does not belong to the {group} chain")]
    WrongChain { rep: String, group: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Reps(#[from] RepsError),
    #[error(transparent)]
    Root(#[from] RootDataError),
}

/// An exact real number together with its display approximation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualReal {
    pub exact: QuadExt,
    pub approx: Option<f64>,
}

impl DualReal {
    pub fn new(exact: QuadExt) -> Self {
        let a = exact.approx();
        DualReal { exact, approx: a.is_finite().then_some(a) }
    }
}

/// An exact complex number with display approximations of both parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualComplex {
    pub re: DualReal,
    pub im: DualReal,
}

impl DualComplex {
    pub fn new(value: &ComplexQuad) -> Self {
        DualComplex { re: DualReal::new(value.re.clone()), im: DualReal::new(value.im.clone()) }
    }

    pub fn value(&self) -> ComplexQuad {
        ComplexQuad::new(self.re.exact.clone(), self.im.exact.clone())
    }
}

/// An exact rational with its display approximation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualRational {
    pub exact: Rational,
    pub approx: Option<f64>,
}

impl DualRational {
    pub fn new(exact: Rational) -> Self {
        let a = exact.to_f64();
        DualRational { exact, approx: a.is_finite().then_some(a) }
    }
}

/// Upper bound (and, when `exact`, the attained size) of first-band Jordan
/// blocks at a given λ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanVerdict {
    /// 1 or 2; 2 occurs only at λ = −‖ρ‖.
    pub max_size: u8,
    /// `true`: the size is known exactly; `false`: 2 is only an upper bound.
    pub exact: bool,
    pub hypothesis_note: String,
}

/// The standing hypothesis under which block sizes are meaningful.
pub const WEAK_REGULARITY_NOTE: &str =
    "valid under the weak-regularity hypothesis at this spectral parameter";

/// The standing caveat attached to every report: the pushforward from
/// resonant states to Laplace eigensections is bijective only away from an
/// exceptional set that is known to be discrete in the real axis but is not
/// computed here.
pub const EXCEPTIONAL_SET_CAVEAT: &str =
    "injectivity/bijectivity of the correspondence holds outside a discrete \
     exceptional subset of the real axis that this tool does not compute";

/// Everything the correspondence says about one (σ, τ, λ) triple.
///
/// Serializes with exactly this field order; all exact numbers carry a
/// floating-point `approx` companion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrespondenceReport {
    pub group: RankOneGroup,
    pub sigma: IrrepSpec,
    pub tau: IrrepSpec,
    pub lambda: DualComplex,
    pub mu: DualComplex,
    pub weight_term: DualRational,
    pub assumption1: bool,
    pub assumption2: bool,
    pub on_critical_line: bool,
    pub on_real_axis: bool,
    pub jordan: JordanVerdict,
    pub caveats: Vec<String>,
}

fn ensure_chain(
    g: &RankOneGroup,
    sigma: &IrrepSpec,
    tau: &IrrepSpec,
) -> Result<(), SpectrumError> {
    if sigma.group != maximal_compact(g)? {
        return Err(SpectrumError::WrongChain { rep: sigma.describe(), group: g.name() });
    }
    if tau.group != centralizer_m(g)? {
        return Err(SpectrumError::WrongChain { rep: tau.describe(), group: g.name() });
    }
    if multiplicity(sigma, tau) == 0 {
        return Err(SpectrumError::IncompatiblePair {
            sigma: sigma.describe(),
            tau: tau.describe(),
        });
    }
    Ok(())
}

/// The rational summand of μ(λ):
/// ‖iω_σ+iδ_k‖² − ‖iω_τ+iδ_m‖² + ‖iδ_m‖² − ‖iδ_k‖², which telescopes to
/// c_τ − c_σ in terms of Casimir invariants.
pub fn weight_term(
    sigma: &IrrepSpec,
    tau: &IrrepSpec,
    g: &RankOneGroup,
) -> Result<Rational, SpectrumError> {
    ensure_chain(g, sigma, tau)?;
    Ok(&casimir_invariant(tau) - &casimir_invariant(sigma))
}

/// Closed form of the weight term for spherical harmonics σ_m, τ_{m′}:
/// (m′ + (m−m′)(m+m′+n−1)) / (2n). m′ may be negative only in the n = 2
/// signed-character case.
pub fn closed_form_weight_term(n: u32, m: i64, m_prime: i64) -> Result<Rational, SpectrumError> {
    if n == 0 {
        return Err(RootDataError::InvalidRank.into());
    }
    if m < m_prime.abs() || (m_prime < 0 && n != 2) {
        return Err(RepsError::InvalidWeight(format!(
            "(m, m') = ({m}, {m_prime}) is not a valid spherical-harmonic pair for n = {n}"
        ))
        .into());
    }
    let n = i64::from(n);
    Ok(Rational::ratio(m_prime + (m - m_prime) * (m + m_prime + n - 1), 2 * n))
}

/// The Laplace eigenvalue μ(λ) = −λ(λ+2‖ρ‖) + weight term, exactly.
pub fn mu_of_lambda(
    g: &RankOneGroup,
    sigma: &IrrepSpec,
    tau: &IrrepSpec,
    lambda: &ComplexQuad,
) -> Result<ComplexQuad, SpectrumError> {
    let wt = weight_term(sigma, tau, g)?;
    let two_rho = restricted_root_data(g).norm_rho.scale(&Rational::from_int(2));
    let shifted = lambda.try_add(&ComplexQuad::from_real(two_rho))?;
    let quadratic = lambda.try_mul(&shifted)?;
    (-&quadratic).try_add(&ComplexQuad::from_rational(wt)).map_err(Into::into)
}

/// The two preimages of μ under λ ↦ μ(λ):
/// λ = −‖ρ‖ ± √(‖ρ‖² + weight term − μ), a conjugate pair on the critical
/// line when the discriminant is negative.
///
/// μ may be any exact real in the group's quadratic field; the square root
/// must denest back into that field (it always does for rational μ of the
/// form μ(rational λ)), otherwise `NotRepresentable` is returned.
pub fn lambda_of_mu(
    g: &RankOneGroup,
    sigma: &IrrepSpec,
    tau: &IrrepSpec,
    mu: &QuadExt,
) -> Result<(ComplexQuad, ComplexQuad), SpectrumError> {
    let wt = weight_term(sigma, tau, g)?;
    let data = restricted_root_data(g);
    let rho_sq = data.norm_rho.square();
    let disc = rho_sq.try_add(&QuadExt::from_rational(wt))?.try_sub(mu)?;
    let neg_rho = -&data.norm_rho;
    if disc.signum() >= 0 {
        let root = disc.sqrt()?;
        let plus = ComplexQuad::from_real(neg_rho.try_add(&root)?);
        let minus = ComplexQuad::from_real(neg_rho.try_sub(&root)?);
        Ok((plus, minus))
    } else {
        let root = (-&disc).sqrt()?;
        let plus = ComplexQuad::new(neg_rho.clone(), root.clone());
        let minus = ComplexQuad::new(neg_rho, -&root);
        Ok((plus, minus))
    }
}

/// Principal-symbol scalars of the Bochner Laplacian on W_σ at spectral
/// parameter λ, one per M-isotypic component of σ|_M:
/// scalar(τ) = ‖ρ‖² − λ² − c_σ + c_τ.
pub fn smb_i_delta(
    g: &RankOneGroup,
    sigma: &IrrepSpec,
    lambda: &ComplexQuad,
) -> Result<Vec<(IrrepSpec, ComplexQuad)>, SpectrumError> {
    if sigma.group != maximal_compact(g)? {
        return Err(SpectrumError::WrongChain { rep: sigma.describe(), group: g.name() });
    }
    let rho_sq = restricted_root_data(g).norm_rho.square();
    let c_sigma = casimir_invariant(sigma);
    let lambda_sq = lambda.try_mul(lambda)?;
    let base = ComplexQuad::from_real(rho_sq)
        .try_sub(&lambda_sq)?
        .try_sub(&ComplexQuad::from_rational(c_sigma))?;
    branch_to_m(sigma, false)?
        .entries
        .into_iter()
        .map(|entry| {
            let c_tau = casimir_invariant(&entry.tau);
            let scalar = base.try_add(&ComplexQuad::from_rational(c_tau))?;
            Ok((entry.tau, scalar))
        })
        .collect()
}

/// Eigenvalue −s·i·λ of the first-order invariant operator on hyperbolic
/// 3-space (curl on complexified vector fields, equivalently ∗d on 1-forms
/// under the metric isomorphism).
///
/// On H³ = SO(3,1)₀/SO(3) with σ the defining (spherical-harmonic degree 1)
/// representation, the algebra of invariant differential operators on W_σ
/// has exactly two generators: the Bochner Laplacian and one operator of
/// order 1. The joint eigenspace carrying the circle type of winding
/// s ∈ {−1, 0, 1} at spectral parameter λ sees the first-order generator act
/// by −s·i·λ. The eigenspace matched with first-band resonant states of τ_s
/// at a resonance λ has shifted parameter λ + ‖ρ‖, so its eigenvalue is
/// `h3_curl_eigenvalue(s, λ + 1/2)`; together with [`mu_of_lambda`] this
/// pins the image of the pushforward as a joint eigenspace of both
/// generators.
pub fn h3_curl_eigenvalue(
    s: i64,
    lambda: &ComplexQuad,
) -> Result<ComplexQuad, SpectrumError> {
    if s.unsigned_abs() > 1 {
        return Err(SpectrumError::IncompatiblePair {
            sigma: "SO(3) sh:1".to_string(),
            tau: format!("SO(2) circ:{s}"),
        });
    }
    // −s·i·(x + iy) = s·y − s·x·i.
    let factor = Rational::from_int(s);
    Ok(ComplexQuad::new(
        lambda.im.scale(&factor),
        -&lambda.re.scale(&factor),
    ))
}

/// Jordan-block size of the first-band resonance at λ, given the two
/// assumption flags for its lowest M-type τ.
///
/// Away from λ = −‖ρ‖ blocks are trivial. At λ = −‖ρ‖: under Assumptions 1
/// and 2 the blocks are exactly of size 2; under Assumption 1 with
/// Assumption 2 failing there are no non-trivial blocks; without
/// Assumption 1 the size-2 statement survives only as an upper bound.
pub fn jordan_classify(
    g: &RankOneGroup,
    tau: &IrrepSpec,
    assumption1: bool,
    assumption2: bool,
    lambda: &ComplexQuad,
) -> JordanVerdict {
    debug_assert_eq!(check_assumption2(tau), assumption2, "inconsistent A2 flag for {tau:?}");
    let neg_rho = -&restricted_root_data(g).norm_rho;
    let at_branch_point = lambda.im.is_zero() && lambda.re.eq_real(&neg_rho);
    let (max_size, exact) = if !at_branch_point {
        (1, true)
    } else if assumption1 && assumption2 {
        (2, true)
    } else if assumption1 {
        (1, true)
    } else {
        (2, false)
    };
    JordanVerdict { max_size, exact, hypothesis_note: WEAK_REGULARITY_NOTE.to_string() }
}

/// The full correspondence report for one (σ, τ, λ) triple.
pub fn correspondence_report(
    g: &RankOneGroup,
    sigma: &IrrepSpec,
    tau: &IrrepSpec,
    lambda: &ComplexQuad,
) -> Result<CorrespondenceReport, SpectrumError> {
    let wt = weight_term(sigma, tau, g)?;
    let mu = mu_of_lambda(g, sigma, tau, lambda)?;
    let a1 = check_assumption1(sigma, tau);
    let a2 = check_assumption2(tau);
    let jordan = jordan_classify(g, tau, a1, a2, lambda);
    let neg_rho = -&restricted_root_data(g).norm_rho;
    Ok(CorrespondenceReport {
        group: *g,
        sigma: sigma.clone(),
        tau: tau.clone(),
        lambda: DualComplex::new(lambda),
        mu: DualComplex::new(&mu),
        weight_term: DualRational::new(wt),
        assumption1: a1,
        assumption2: a2,
        on_critical_line: lambda.re.eq_real(&neg_rho),
        on_real_axis: lambda.im.is_zero(),
        jordan,
        caveats: vec![EXCEPTIONAL_SET_CAVEAT.to_string()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::sqrt_rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn cq_rat(n: i64, d: i64) -> ComplexQuad {
        ComplexQuad::from_rational(r(n, d))
    }

    fn h3() -> (RankOneGroup, IrrepSpec, Vec<IrrepSpec>) {
        let g = RankOneGroup::real_hyperbolic(2).unwrap();
        let k = maximal_compact(&g).unwrap();
        let m = centralizer_m(&g).unwrap();
        let sigma = IrrepSpec::spherical_harmonic(k, 1).unwrap();
        let taus = (-1..=1)
            .map(|s| IrrepSpec::circle_character(m.clone(), s).unwrap())
            .collect();
        (g, sigma, taus)
    }

    #[test]
    fn weight_term_h3_constants() {
        let (g, sigma, taus) = h3();
        let expect = [r(1, 4), r(1, 2), r(1, 4)];
        for (tau, want) in taus.iter().zip(expect) {
            assert_eq!(weight_term(&sigma, tau, &g).unwrap(), want);
        }
    }

    #[test]
    fn weight_term_matches_closed_form() {
        // Spherical-harmonic chain against (m′+(m−m′)(m+m′+n−1))/(2n).
        for n in 2..=5u32 {
            let g = RankOneGroup::real_hyperbolic(n).unwrap();
            let k = maximal_compact(&g).unwrap();
            let m_grp = centralizer_m(&g).unwrap();
            for m in 0..=4u32 {
                let sigma = IrrepSpec::spherical_harmonic(k.clone(), m).unwrap();
                let lo = if n == 2 { -i64::from(m) } else { 0 };
                for mp in lo..=i64::from(m) {
                    let tau = if n == 2 {
                        IrrepSpec::circle_character(m_grp.clone(), mp).unwrap()
                    } else {
                        IrrepSpec::spherical_harmonic(m_grp.clone(), mp as u32).unwrap()
                    };
                    assert_eq!(
                        weight_term(&sigma, &tau, &g).unwrap(),
                        closed_form_weight_term(n, i64::from(m), mp).unwrap(),
                        "n={n}, m={m}, m'={mp}"
                    );
                }
            }
        }
    }

    #[test]
    fn weight_term_n1_is_quarter_m_squared() {
        let g = RankOneGroup::real_hyperbolic(1).unwrap();
        let k = maximal_compact(&g).unwrap();
        let m_grp = centralizer_m(&g).unwrap();
        let tau0 = IrrepSpec::trivial(m_grp);
        for m in -4i64..=4 {
            let sigma = IrrepSpec::new(k.clone(), vec![m]).unwrap();
            assert_eq!(weight_term(&sigma, &tau0, &g).unwrap(), r(m * m, 4));
        }
    }

    #[test]
    fn closed_form_spot_values() {
        assert_eq!(closed_form_weight_term(3, 2, 1).unwrap(), r(1, 1));
        assert_eq!(closed_form_weight_term(2, 1, -1).unwrap(), r(1, 4));
        for n in 1..=6 {
            for m in 0..=5 {
                assert_eq!(
                    closed_form_weight_term(n, m, m).unwrap(),
                    r(m, i64::from(2 * n)),
                    "m = m' case"
                );
            }
        }
        assert!(closed_form_weight_term(3, 1, -1).is_err());
        assert!(closed_form_weight_term(3, 1, 2).is_err());
    }

    #[test]
    fn mu_h3_fixture() {
        let (g, sigma, taus) = h3();
        // μ(0) = 1/4 on the s = ±1 components, 1/2 on s = 0.
        assert_eq!(
            mu_of_lambda(&g, &sigma, &taus[2], &ComplexQuad::zero()).unwrap(),
            cq_rat(1, 4)
        );
        assert_eq!(
            mu_of_lambda(&g, &sigma, &taus[1], &ComplexQuad::zero()).unwrap(),
            cq_rat(1, 2)
        );
        // −λ(λ+1) + 1/4 at λ = −2: −(−2)(−1) + 1/4 = −7/4.
        assert_eq!(
            mu_of_lambda(&g, &sigma, &taus[0], &cq_rat(-2, 1)).unwrap(),
            cq_rat(-7, 4)
        );
    }

    #[test]
    fn mu_critical_line_is_real() {
        let (g, sigma, taus) = h3();
        // λ = −1/2 + i·t → μ = ‖ρ‖² + t² + wt, real.
        for t in [r(1, 1), r(3, 2), r(-2, 7)] {
            let lambda = ComplexQuad::new(
                QuadExt::from_rational(r(-1, 2)),
                QuadExt::from_rational(t.clone()),
            );
            let mu = mu_of_lambda(&g, &sigma, &taus[2], &lambda).unwrap();
            assert!(mu.is_real());
            let expect = &(&r(1, 4) + &(&t * &t)) + &r(1, 4);
            assert_eq!(mu, ComplexQuad::from_rational(expect));
        }
    }

    #[test]
    fn mu_example_so41_with_radical() {
        // SO(4,1), σ₂, τ₁, λ = −1: μ = ½√6.
        let g = RankOneGroup::real_hyperbolic(3).unwrap();
        let k = maximal_compact(&g).unwrap();
        let m_grp = centralizer_m(&g).unwrap();
        let sigma = IrrepSpec::spherical_harmonic(k, 2).unwrap();
        let tau = IrrepSpec::spherical_harmonic(m_grp, 1).unwrap();
        let mu = mu_of_lambda(&g, &sigma, &tau, &cq_rat(-1, 1)).unwrap();
        let half_sqrt6 = QuadExt::new(Rational::zero(), r(1, 2), 6).unwrap();
        assert_eq!(mu, ComplexQuad::from_real(half_sqrt6));
    }

    #[test]
    fn mu_reflection_symmetry() {
        let (g, sigma, taus) = h3();
        let minus_one = cq_rat(-1, 1);
        let lambdas = [
            ComplexQuad::zero(),
            cq_rat(3, 7),
            ComplexQuad::new(QuadExt::from_rational(r(2, 3)), QuadExt::from_rational(r(-1, 5))),
        ];
        for lambda in lambdas {
            // −2‖ρ‖ − λ with ‖ρ‖ = 1/2.
            let reflected = minus_one.try_sub(&lambda).unwrap();
            assert_eq!(
                mu_of_lambda(&g, &sigma, &taus[1], &lambda).unwrap(),
                mu_of_lambda(&g, &sigma, &taus[1], &reflected).unwrap()
            );
        }
    }

    #[test]
    fn lambda_of_mu_round_trips() {
        let (g, sigma, taus) = h3();
        let tau = &taus[2];
        // μ = 1/4 → {0, −1}.
        let (plus, minus) = lambda_of_mu(&g, &sigma, tau, &QuadExt::from_rational(r(1, 4))).unwrap();
        assert_eq!(plus, ComplexQuad::zero());
        assert_eq!(minus, cq_rat(-1, 1));
        // μ = weight term → {0, −2‖ρ‖}.
        let wt = weight_term(&sigma, tau, &g).unwrap();
        let (plus, minus) = lambda_of_mu(&g, &sigma, tau, &QuadExt::from_rational(wt)).unwrap();
        assert_eq!(plus, ComplexQuad::zero());
        assert_eq!(minus, cq_rat(-1, 1));
        // Negative discriminant: conjugate pair on the critical line.
        let (plus, minus) = lambda_of_mu(&g, &sigma, tau, &QuadExt::from_rational(r(3, 2))).unwrap();
        assert_eq!(plus.re, QuadExt::from_rational(r(-1, 2)));
        assert_eq!(minus.re, QuadExt::from_rational(r(-1, 2)));
        assert_eq!(plus.im, -&minus.im);
        // Both preimages map back to μ.
        for root in [plus, minus] {
            assert_eq!(mu_of_lambda(&g, &sigma, tau, &root).unwrap(), cq_rat(3, 2));
        }
    }

    #[test]
    fn lambda_of_mu_handles_irrational_mu() {
        // A λ over the group radicand produces an irrational μ; inversion
        // must denest the square root and recover λ.
        let g = RankOneGroup::real_hyperbolic(1).unwrap();
        let k = maximal_compact(&g).unwrap();
        let m_grp = centralizer_m(&g).unwrap();
        let sigma = IrrepSpec::new(k, vec![1]).unwrap();
        let tau = IrrepSpec::trivial(m_grp);
        let lambda = ComplexQuad::from_real(sqrt_rational(&r(1, 2)).unwrap());
        let mu = mu_of_lambda(&g, &sigma, &tau, &lambda).unwrap();
        assert!(mu.is_real());
        let (plus, _minus) = lambda_of_mu(&g, &sigma, &tau, &mu.re).unwrap();
        assert_eq!(plus, lambda);
    }

    #[test]
    fn h3_first_order_generator_eigenvalue() {
        // −s·i·λ at the shifted parameter λ + 1/2, for the resonance λ = 0.
        let shifted = cq_rat(1, 2);
        assert_eq!(h3_curl_eigenvalue(0, &shifted).unwrap(), ComplexQuad::zero());
        assert_eq!(
            h3_curl_eigenvalue(1, &shifted).unwrap(),
            ComplexQuad::new(QuadExt::zero(), QuadExt::from_rational(r(-1, 2)))
        );
        assert_eq!(
            h3_curl_eigenvalue(-1, &shifted).unwrap(),
            ComplexQuad::new(QuadExt::zero(), QuadExt::from_rational(r(1, 2)))
        );
        // Resonances on the critical line Re λ = −1/2 have shifted parameter
        // t·i, where the first-order operator (antisymmetric, so imaginary
        // spectrum ↔ real eigenvalues of −i·D) acts by the real scalar s·t.
        let on_line = ComplexQuad::new(QuadExt::zero(), QuadExt::from_rational(r(7, 3)));
        let ev = h3_curl_eigenvalue(1, &on_line).unwrap();
        assert_eq!(ev, cq_rat(7, 3));
        // Windings outside σ|_M are rejected.
        assert!(h3_curl_eigenvalue(2, &shifted).is_err());
    }

    #[test]
    fn smb_h3_scalars() {
        let (g, sigma, _) = h3();
        let entries = smb_i_delta(&g, &sigma, &ComplexQuad::zero()).unwrap();
        let got: Vec<(i64, ComplexQuad)> = entries
            .iter()
            .map(|(tau, s)| (tau.highest_weight[0], s.clone()))
            .collect();
        assert_eq!(
            got,
            vec![(-1, cq_rat(1, 2)), (0, cq_rat(3, 4)), (1, cq_rat(1, 2))]
        );
    }

    #[test]
    fn smb_trivial_sigma_gives_rho_squared() {
        for n in 1..=4u32 {
            let g = RankOneGroup::real_hyperbolic(n).unwrap();
            let sigma = IrrepSpec::trivial(maximal_compact(&g).unwrap());
            let entries = smb_i_delta(&g, &sigma, &ComplexQuad::zero()).unwrap();
            assert_eq!(entries.len(), 1);
            let rho_sq = restricted_root_data(&g).norm_rho.square();
            assert_eq!(entries[0].1, ComplexQuad::from_real(rho_sq));
        }
    }

    #[test]
    fn smb_shift_consistency() {
        // scalar(σ, τ, λ + ‖ρ‖) = μ(λ): the two displays of the eigenvalue
        // differ exactly by the ρ-shift of the spectral parameter.
        let (g, sigma, taus) = h3();
        let rho = restricted_root_data(&g).norm_rho;
        for lambda in [ComplexQuad::zero(), cq_rat(-3, 2), cq_rat(5, 7)] {
            let shifted = lambda.try_add(&ComplexQuad::from_real(rho.clone())).unwrap();
            let entries = smb_i_delta(&g, &sigma, &shifted).unwrap();
            for (tau, scalar) in entries {
                let s = taus.iter().find(|t| **t == tau).unwrap();
                assert_eq!(scalar, mu_of_lambda(&g, &sigma, s, &lambda).unwrap());
            }
        }
    }

    #[test]
    fn jordan_decision_table() {
        let (g, _, taus) = h3();
        let tau0 = &taus[1]; // A2 holds
        let tau1 = &taus[2]; // A2 fails
        let at_rho = cq_rat(-1, 2);
        let off_rho = cq_rat(-1, 4);

        let v = jordan_classify(&g, tau0, true, true, &at_rho);
        assert_eq!((v.max_size, v.exact), (2, true));
        let v = jordan_classify(&g, tau1, true, false, &at_rho);
        assert_eq!((v.max_size, v.exact), (1, true));
        let v = jordan_classify(&g, tau0, false, true, &at_rho);
        assert_eq!((v.max_size, v.exact), (2, false));
        let v = jordan_classify(&g, tau0, true, true, &off_rho);
        assert_eq!((v.max_size, v.exact), (1, true));
        let v = jordan_classify(&g, tau1, true, false, &off_rho);
        assert_eq!((v.max_size, v.exact), (1, true));
        let v = jordan_classify(&g, tau0, false, true, &off_rho);
        assert_eq!((v.max_size, v.exact), (1, true));
        // Complex λ with Re λ = −‖ρ‖ is NOT the branch point.
        let critical = ComplexQuad::new(
            QuadExt::from_rational(r(-1, 2)),
            QuadExt::from_rational(r(1, 1)),
        );
        let v = jordan_classify(&g, tau0, true, true, &critical);
        assert_eq!((v.max_size, v.exact), (1, true));
        assert_eq!(v.hypothesis_note, WEAK_REGULARITY_NOTE);
    }

    #[test]
    fn report_h3_tau0_at_zero() {
        let (g, sigma, taus) = h3();
        let report = correspondence_report(&g, &sigma, &taus[1], &ComplexQuad::zero()).unwrap();
        assert_eq!(report.mu.re.exact, QuadExt::from_rational(r(1, 2)));
        assert!(report.mu.im.exact.is_zero());
        assert!(report.assumption1);
        assert!(report.assumption2);
        assert_eq!(report.jordan.max_size, 1);
        assert!(report.on_real_axis);
        assert!(!report.on_critical_line);
        assert!(report.caveats.iter().any(|c| c == EXCEPTIONAL_SET_CAVEAT));
    }

    #[test]
    fn report_critical_line_value() {
        let (g, sigma, taus) = h3();
        let lambda = ComplexQuad::new(
            QuadExt::from_rational(r(-1, 2)),
            QuadExt::from_rational(r(1, 1)),
        );
        let report = correspondence_report(&g, &sigma, &taus[2], &lambda).unwrap();
        // μ = ‖ρ‖² + t² + wt = 1/4 + 1 + 1/4 = 3/2.
        assert_eq!(report.mu.re.exact, QuadExt::from_rational(r(3, 2)));
        assert!(report.mu.im.exact.is_zero());
        assert!(report.on_critical_line);
        assert!(!report.on_real_axis);
    }

    #[test]
    fn report_rejects_incompatible_pair() {
        let (g, sigma, _) = h3();
        let m_grp = centralizer_m(&g).unwrap();
        let tau2 = IrrepSpec::circle_character(m_grp, 2).unwrap();
        assert!(matches!(
            correspondence_report(&g, &sigma, &tau2, &ComplexQuad::zero()),
            Err(SpectrumError::IncompatiblePair { .. })
        ));
    }

    #[test]
    fn report_json_field_order_and_round_trip() {
        let (g, sigma, taus) = h3();
        let report = correspondence_report(&g, &sigma, &taus[1], &ComplexQuad::zero()).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let keys: Vec<&str> = [
            "group", "sigma", "tau", "lambda", "mu", "weight_term", "assumption1",
            "assumption2", "on_critical_line", "on_real_axis", "jordan", "caveats",
        ]
        .to_vec();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let got: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(got, keys);
        // Parse → re-serialize must be byte-identical.
        assert_eq!(serde_json::to_string(&value).unwrap(), json);
    }
}
