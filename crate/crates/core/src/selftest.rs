//! A self-contained verification harness: rebuilds the matrix models and
//! replays the cross-route checks (structure constants, gradings, Casimir
//! scalars, Iwasawa round trips, symbolic spectral identities), emitting one
//! pass/fail record per check. The CLI exposes this as `selftest`; the fault
//! injection switch corrupts one structure constant on purpose so callers
//! can confirm the harness actually has teeth.

use crate::exactnum::{ComplexQuad, Rational};
use crate::oracle::{
    self, build_algebra, casimir_scalar, casimir_spectrum, restricted_grading,
    verify_horocycle_brackets, weyl_representative, MatrixLieAlgebra, RepKind, Subgroup,
};
use crate::reps::{
    branch_to_m, casimir_invariant, centralizer_m, maximal_compact, rep_dimension, weyl_action,
    GroupKind, IrrepSpec,
};
use crate::rootdata::{restricted_root_data, Family, RankOneGroup};
use crate::spectrum::{correspondence_report, mu_of_lambda};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// How much work the harness does. `Fast` keeps every check interactive;
/// `Full` pushes the same checks to larger ranks and more samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Fast,
    Full,
}

impl Profile {
    /// Reads `fast`/`full` (case-insensitive); anything else is None.
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fast" => Some(Profile::Fast),
            "full" => Some(Profile::Full),
            _ => None,
        }
    }

    fn so_limit(self) -> u32 {
        match self {
            Profile::Fast => 3,
            Profile::Full => 5,
        }
    }

    fn su_limit(self) -> u32 {
        match self {
            Profile::Fast => 2,
            Profile::Full => 4,
        }
    }

    fn iwasawa_rounds(self) -> usize {
        match self {
            Profile::Fast => 25,
            Profile::Full => 100,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One verification record.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check_name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

struct Harness {
    results: Vec<CheckResult>,
}

impl Harness {
    fn record(&mut self, name: impl Into<String>, outcome: Result<(), String>) {
        let (status, witness) = match outcome {
            Ok(()) => (CheckStatus::Pass, None),
            Err(w) => (CheckStatus::Fail, Some(w)),
        };
        self.results.push(CheckResult { check_name: name.into(), status, witness });
    }
}

fn groups_in_scope(profile: Profile) -> Vec<RankOneGroup> {
    let mut out = Vec::new();
    for n in 1..=profile.so_limit() {
        out.push(RankOneGroup::real_hyperbolic(n).expect("n >= 1"));
    }
    for n in 1..=profile.su_limit() {
        out.push(RankOneGroup::complex_hyperbolic(n).expect("n >= 1"));
    }
    out
}

/// Runs every check. With `inject_fault` one structure constant of one
/// algebra is flipped before its checks run; a healthy harness then reports
/// failures for that algebra.
pub fn run_selftest(profile: Profile, inject_fault: bool) -> Vec<CheckResult> {
    let mut h = Harness { results: Vec::new() };

    for group in groups_in_scope(profile) {
        let alg = match build_algebra(&group) {
            Ok(a) => a,
            Err(e) => {
                h.record(format!("build[{group}]"), Err(e.to_string()));
                continue;
            }
        };
        let alg = if inject_fault && group.family == Family::RealHyperbolic && group.n == 2 {
            let mut bad = alg.clone();
            bad.perturb_for_negative_control();
            bad
        } else {
            alg
        };
        structural_checks(&mut h, &group, &alg);
        if group.family == Family::RealHyperbolic {
            casimir_checks(&mut h, &group, &alg);
            weyl_checks(&mut h, &group, &alg);
        }
        iwasawa_checks(&mut h, &group, &alg, profile);
    }

    spectrum_checks(&mut h);

    h.results
}

fn structural_checks(h: &mut Harness, group: &RankOneGroup, alg: &MatrixLieAlgebra) {
    h.record(
        format!("jacobi[{group}]"),
        match alg.jacobi_violation() {
            None => Ok(()),
            Some((i, j, k)) => Err(format!(
                "Jacobi identity fails on ({}, {}, {})",
                alg.names[i], alg.names[j], alg.names[k]
            )),
        },
    );

    h.record(format!("killing_kp_orthogonal[{group}]"), {
        let mut bad = None;
        'outer: for i in 0..alg.dim {
            for j in 0..alg.dim {
                if alg.theta_sign[i] != alg.theta_sign[j] && !alg.killing[(i, j)].is_zero() {
                    bad = Some((i, j));
                    break 'outer;
                }
            }
        }
        match bad {
            None => Ok(()),
            Some((i, j)) => Err(format!(
                "B({}, {}) != 0 across the Cartan decomposition",
                alg.names[i], alg.names[j]
            )),
        }
    });

    h.record(
        format!("inner_product_positive_definite[{group}]"),
        if oracle::matrix::is_positive_definite(&alg.inner_product_matrix()) {
            Ok(())
        } else {
            Err("a leading principal minor of -B(X, theta Y) is not positive".into())
        },
    );

    h.record(format!("grading_dimensions[{group}]"), {
        let dims = restricted_grading(alg);
        let table = restricted_root_data(group);
        let want_m = group.dim_m() as usize;
        if dims.dim_g_alpha == table.m_alpha as usize
            && dims.dim_g_2alpha == table.m_2alpha as usize
            && dims.dim_m == want_m
        {
            Ok(())
        } else {
            Err(format!(
                "got (m, g_a, g_2a) = ({}, {}, {}), table says ({}, {}, {})",
                dims.dim_m,
                dims.dim_g_alpha,
                dims.dim_g_2alpha,
                want_m,
                table.m_alpha,
                table.m_2alpha
            ))
        }
    });

    h.record(format!("alpha0_norm[{group}]"), {
        let table = restricted_root_data(group);
        match alg.alpha0_norm() {
            Ok(norm) if norm == table.norm_alpha0 => Ok(()),
            Ok(norm) => Err(format!(
                "matrix route gives {norm}, table gives {}",
                table.norm_alpha0
            )),
            Err(e) => Err(e.to_string()),
        }
    });

    h.record(format!("horocycle_brackets[{group}]"), {
        let check = verify_horocycle_brackets(alg);
        if check.ok {
            Ok(())
        } else {
            Err(check.witness.unwrap_or_else(|| "bracket relation failed".into()))
        }
    });
}

fn casimir_checks(h: &mut Harness, group: &RankOneGroup, alg: &MatrixLieAlgebra) {
    if group.n < 2 {
        return;
    }
    let k = maximal_compact(group).expect("real family");
    let m = centralizer_m(group).expect("real family");
    let cases = [
        (RepKind::Defining, Subgroup::MaximalCompact, k.clone(), 1u32),
        (RepKind::Sym2Traceless, Subgroup::MaximalCompact, k.clone(), 2),
        (RepKind::Defining, Subgroup::CentralizerM, m.clone(), 1),
        (RepKind::Sym2Traceless, Subgroup::CentralizerM, m.clone(), 2),
    ];
    for (kind, sub, grp, degree) in cases {
        let name =
            format!("casimir_{}_{}[{group}]", format!("{kind:?}").to_lowercase(), match sub {
                Subgroup::MaximalCompact => "k",
                Subgroup::CentralizerM => "m",
            });
        h.record(name, {
            match (
                casimir_scalar(alg, kind, sub),
                IrrepSpec::spherical_harmonic(grp, degree),
            ) {
                (Ok(got), Ok(rep)) => {
                    let want = casimir_invariant(&rep);
                    if got == want {
                        Ok(())
                    } else {
                        Err(format!("matrix route {got}, weight route {want}"))
                    }
                }
                (Err(e), _) => Err(e.to_string()),
                (_, Err(e)) => Err(e.to_string()),
            }
        });
    }

    // The M-Casimir spectrum on the degree-2 K-representation must equal the
    // Casimir multiset of the branching decomposition.
    h.record(format!("casimir_spectrum_vs_branching[{group}]"), {
        (|| -> Result<(), String> {
            let spec = casimir_spectrum(alg, RepKind::Sym2Traceless, Subgroup::CentralizerM)
                .map_err(|e| e.to_string())?;
            let k = maximal_compact(group).expect("real family");
            let sigma =
                IrrepSpec::spherical_harmonic(k, 2).map_err(|e| e.to_string())?;
            let mut want: Vec<(Rational, usize)> = Vec::new();
            for entry in branch_to_m(&sigma, true).map_err(|e| e.to_string())?.entries {
                let c = casimir_invariant(&entry.tau);
                let d = rep_dimension(&entry.tau) as usize * entry.mult as usize;
                if let Some(slot) = want.iter_mut().find(|(x, _)| *x == c) {
                    slot.1 += d;
                } else {
                    want.push((c, d));
                }
            }
            want.sort_by(|a, b| a.0.cmp(&b.0));
            if spec == want {
                Ok(())
            } else {
                Err(format!("matrix route {spec:?}, branching route {want:?}"))
            }
        })()
    });
}

fn weyl_checks(h: &mut Harness, group: &RankOneGroup, alg: &MatrixLieAlgebra) {
    h.record(format!("weyl_representative[{group}]"), {
        (|| -> Result<(), String> {
            let w = weyl_representative(alg);
            let wb = w.matmul(alg.boost()).matmul(&w);
            if wb != alg.boost().neg() {
                return Err("Ad(w) does not flip the boost generator".into());
            }
            // Conjugation acts on the torus of M = SO(n) by negating exactly
            // the last coordinate when n is even, nothing when n is odd —
            // the same rule weyl_action applies to weights.
            let n = group.n as usize;
            let msize = alg.msize;
            let torus_rank = n / 2;
            for jidx in 0..torus_rank {
                let (a, b) = (2 * jidx, 2 * jidx + 1);
                let mut t = oracle::RatMat::zeros(msize, msize);
                t[(a, b)] = Rational::one();
                t[(b, a)] = Rational::from_int(-1);
                let conj = w.matmul(&t).matmul(&w);
                let flipped = n % 2 == 0 && jidx == torus_rank - 1;
                let expect = if flipped { t.neg() } else { t.clone() };
                if conj != expect {
                    return Err(format!(
                        "Ad(w) on torus generator {} of m is not {}",
                        jidx + 1,
                        if flipped { "-T" } else { "T" }
                    ));
                }
            }
            // And the weight-level rule agrees on a generic dominant weight.
            if group.n >= 2 {
                let m = centralizer_m(group).expect("real family");
                if m.kind != GroupKind::Trivial {
                    let rank = m.rank();
                    let hw: Vec<i64> = (0..rank).map(|j| (rank - j) as i64).collect();
                    let tau = IrrepSpec::new(m, hw.clone()).map_err(|e| e.to_string())?;
                    let acted = weyl_action(&tau);
                    let mut want = hw;
                    if n % 2 == 0 {
                        let last = want.len() - 1;
                        want[last] = -want[last];
                    }
                    if acted.highest_weight != want {
                        return Err(format!(
                            "weight route gives {:?}, expected {:?}",
                            acted.highest_weight, want
                        ));
                    }
                }
            }
            Ok(())
        })()
    });
}

fn iwasawa_checks(
    h: &mut Harness,
    group: &RankOneGroup,
    alg: &MatrixLieAlgebra,
    profile: Profile,
) {
    // Keep the numeric work at small rank; conditioning degrades with
    // dimension and the factorization code path does not change.
    let cap = match group.family {
        Family::RealHyperbolic => 3,
        Family::ComplexHyperbolic => 2,
    };
    if group.n > cap {
        return;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ u64::from(group.n));
    let rounds = profile.iwasawa_rounds();

    h.record(format!("iwasawa_round_trip[{group}]"), {
        (|| -> Result<(), String> {
            for round in 0..rounds {
                let t0: f64 = rng.gen_range(-1.5..1.5);
                let g = oracle::random_k(alg, &mut rng)
                    * oracle::exp_h0(alg, t0)
                    * oracle::random_n_minus(alg, &mut rng);
                let f = oracle::iwasawa_opposite(alg, &g).map_err(|e| e.to_string())?;
                if f.residual > 1e-10 {
                    return Err(format!("round {round}: residual {:.3e}", f.residual));
                }
                if (f.t - t0).abs() > 1e-9 {
                    return Err(format!("round {round}: t = {} vs {}", f.t, t0));
                }
            }
            Ok(())
        })()
    });

    h.record(format!("phi_properties[{group}]"), {
        (|| -> Result<(), String> {
            for round in 0..(rounds / 5).max(3) {
                let k = oracle::random_k(alg, &mut rng);
                let val = oracle::phi(alg, &k).map_err(|e| e.to_string())?;
                if (val - 1.0).abs() > 1e-12 {
                    return Err(format!("round {round}: phi(k) = {val}"));
                }
                let g: DMatrix<f64> =
                    k * oracle::exp_h0(alg, rng.gen_range(-1.0..1.0))
                        * oracle::random_n_minus(alg, &mut rng);
                let base = oracle::phi(alg, &g).map_err(|e| e.to_string())?;
                let s: f64 = rng.gen_range(-1.0..1.0);
                let shifted = oracle::phi(alg, &(&g * oracle::exp_h0(alg, s)))
                    .map_err(|e| e.to_string())?;
                if (shifted - (-s).exp() * base).abs() > 1e-9 * base.max(1.0) {
                    return Err(format!(
                        "round {round}: phi(g exp(sH0)) = {shifted}, expected {}",
                        (-s).exp() * base
                    ));
                }
                let h = 1e-5;
                let plus = oracle::phi(alg, &(&g * oracle::exp_h0(alg, h)))
                    .map_err(|e| e.to_string())?;
                let minus = oracle::phi(alg, &(&g * oracle::exp_h0(alg, -h)))
                    .map_err(|e| e.to_string())?;
                let deriv = (plus - minus) / (2.0 * h);
                if (deriv + base).abs() > 1e-6 {
                    return Err(format!(
                        "round {round}: dPhi/ds = {deriv}, expected {}",
                        -base
                    ));
                }
            }
            Ok(())
        })()
    });
}

fn spectrum_checks(h: &mut Harness) {
    h.record("mu_reflection_symmetry".to_string(), {
        (|| -> Result<(), String> {
            let g = RankOneGroup::real_hyperbolic(3).expect("n >= 1");
            let k = maximal_compact(&g).expect("real family");
            let m = centralizer_m(&g).expect("real family");
            let sigma = IrrepSpec::spherical_harmonic(k, 1).map_err(|e| e.to_string())?;
            let tau = IrrepSpec::spherical_harmonic(m, 1).map_err(|e| e.to_string())?;
            let table = restricted_root_data(&g);
            let minus_two_rho = ComplexQuad::from_real(
                table.norm_rho.scale(&Rational::from_int(-2)),
            );
            for num in [-3i64, -1, 0, 2] {
                let lambda = ComplexQuad::from_rational(Rational::ratio(num, 2));
                let reflected = minus_two_rho
                    .try_sub(&lambda)
                    .map_err(|e| e.to_string())?;
                let a = mu_of_lambda(&g, &sigma, &tau, &lambda).map_err(|e| e.to_string())?;
                let b = mu_of_lambda(&g, &sigma, &tau, &reflected).map_err(|e| e.to_string())?;
                if a != b {
                    return Err(format!("mu({lambda}) != mu(-2rho - lambda)"));
                }
            }
            Ok(())
        })()
    });

    h.record("h3_fixture_report".to_string(), {
        (|| -> Result<(), String> {
            let g = RankOneGroup::real_hyperbolic(2).expect("n >= 1");
            let k = maximal_compact(&g).expect("real family");
            let m = centralizer_m(&g).expect("real family");
            let sigma = IrrepSpec::spherical_harmonic(k, 1).map_err(|e| e.to_string())?;
            let tau0 = IrrepSpec::circle_character(m.clone(), 0).map_err(|e| e.to_string())?;
            let tau1 = IrrepSpec::circle_character(m, 1).map_err(|e| e.to_string())?;
            let zero = ComplexQuad::from_rational(Rational::zero());
            let r0 = correspondence_report(&g, &sigma, &tau0, &zero).map_err(|e| e.to_string())?;
            let half = ComplexQuad::from_rational(Rational::ratio(1, 2));
            if r0.mu.re.exact != half.re {
                return Err(format!("mu(sigma1, tau0, 0) = {}, expected 1/2", r0.mu.re.exact));
            }
            if !r0.assumption1 || !r0.assumption2 || r0.jordan.max_size != 1 {
                return Err("H3 fixture flags are off".into());
            }
            let r1 = correspondence_report(&g, &sigma, &tau1, &zero).map_err(|e| e.to_string())?;
            let quarter = ComplexQuad::from_rational(Rational::ratio(1, 4));
            if r1.mu.re.exact != quarter.re {
                return Err(format!("mu(sigma1, tau1, 0) = {}, expected 1/4", r1.mu.re.exact));
            }
            if r1.assumption2 {
                return Err("tau1 must fail the Weyl-invariance assumption".into());
            }
            Ok(())
        })()
    });
}
