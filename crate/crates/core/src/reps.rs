//! Weight data for the compact subgroups K = SO(n+1) and M = SO(n) of
//! SO(n+1,1)₀: half-sums of positive roots, highest weights, Casimir
//! invariants, the interlacing branching law σ|_M, the Weyl action on M̂,
//! and the two assumptions (multiplicity one, Weyl invariance) that control
//! Jordan blocks at the first band.
//!
//! All weights are written in an orthonormal family e₁, e₂, … carrying a
//! per-ambient-group prefactor: for so(n+1,1) the inner product on weights is
//! 1/(2n) times the Euclidean one in the e_j coordinates (the Killing-form
//! normalization), except that SO(2) characters always use the prefactor 1/2
//! (squared: 1/4) regardless of where the circle sits in the chain. Casimir
//! invariants and norms are exact rationals throughout.

use crate::exactnum::Rational;
use crate::rootdata::{Family, RankOneGroup};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// Enumeration guard: a single branching decomposition may not produce more
/// than this many components.
const MAX_BRANCH_ENTRIES: u128 = 200_000;

/// Errors from weight and branching computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepsError {
    #[error("{0} has no weight data here (only the SO(n+1) ⊃ SO(n) chain is implemented)")]
    UnsupportedGroup(String),
    #[error("invalid highest weight: {0}")]
    InvalidWeight(String),
    #[error("branching decomposition would have {0} components (limit {MAX_BRANCH_ENTRIES})")]
    DecompositionTooLarge(u128),
}

/// Which compact group a weight lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// SO(m) for m ≥ 3.
    SpecialOrthogonal(u32),
    /// SO(2), the circle; irreps are the integer characters.
    Circle,
    /// SO(1), the trivial group.
    Trivial,
}

impl GroupKind {
    fn from_so(m: u32) -> Self {
        match m {
            0 | 1 => GroupKind::Trivial,
            2 => GroupKind::Circle,
            _ => GroupKind::SpecialOrthogonal(m),
        }
    }

    /// Rank of the maximal torus: ⌊m/2⌋.
    pub fn rank(&self) -> usize {
        match self {
            GroupKind::SpecialOrthogonal(m) => (*m as usize) / 2,
            GroupKind::Circle => 1,
            GroupKind::Trivial => 0,
        }
    }

    pub fn name(&self) -> String {
        match self {
            GroupKind::SpecialOrthogonal(m) => format!("SO({m})"),
            GroupKind::Circle => "SO(2)".to_string(),
            GroupKind::Trivial => "SO(1)".to_string(),
        }
    }
}

/// A compact group in the SO(n+1) ⊃ SO(n) chain of SO(n+1,1)₀, together with
/// the squared prefactor its weight coordinates carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactGroupData {
    pub kind: GroupKind,
    /// The ambient parameter n of SO(n+1,1)₀ this group sits inside.
    pub ambient_n: u32,
    /// Squared prefactor of the e_j coordinates: 1/(2n), or 1/4 for SO(2).
    pub scale_sq: Rational,
}

impl CompactGroupData {
    fn in_ambient(m: u32, ambient_n: u32) -> Self {
        let kind = GroupKind::from_so(m);
        let scale_sq = match kind {
            // The circle's characters are z ↦ z^s with weight (i/2)·s·e₁,
            // independent of the ambient normalization.
            GroupKind::Circle | GroupKind::Trivial => Rational::ratio(1, 4),
            GroupKind::SpecialOrthogonal(_) => Rational::ratio(1, i64::from(2 * ambient_n)),
        };
        CompactGroupData { kind, ambient_n, scale_sq }
    }

    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    pub fn name(&self) -> String {
        self.kind.name()
    }

    /// Is this SO(even), the case where the Weyl action can move weights?
    fn is_even_orthogonal(&self) -> bool {
        matches!(self.kind, GroupKind::SpecialOrthogonal(m) if m % 2 == 0)
            || self.kind == GroupKind::Circle
    }
}

impl fmt::Display for CompactGroupData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// K = SO(n+1), the maximal compact subgroup. Real hyperbolic family only.
pub fn maximal_compact(g: &RankOneGroup) -> Result<CompactGroupData, RepsError> {
    if g.family != Family::RealHyperbolic {
        return Err(RepsError::UnsupportedGroup(g.name()));
    }
    Ok(CompactGroupData::in_ambient(g.n + 1, g.n))
}

/// M = SO(n), the centralizer of the split torus in K.
pub fn centralizer_m(g: &RankOneGroup) -> Result<CompactGroupData, RepsError> {
    if g.family != Family::RealHyperbolic {
        return Err(RepsError::UnsupportedGroup(g.name()));
    }
    Ok(CompactGroupData::in_ambient(g.n, g.n))
}

/// A weight written in the orthonormal family e_j: the represented functional
/// is (i·prefactor)·Σ coeffs[j]·e_j, and only its norm enters any formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub coeffs: Vec<Rational>,
    pub scale_sq: Rational,
}

impl WeightVector {
    /// ‖i·w‖² = scale_sq · Σ c_j², a non-negative rational.
    pub fn normsq_i(&self) -> Rational {
        let mut sum = Rational::zero();
        for c in &self.coeffs {
            sum += &(c * c);
        }
        &sum * &self.scale_sq
    }

    /// Coordinate-wise sum; both weights must live on the same torus.
    pub fn add(&self, other: &WeightVector) -> WeightVector {
        assert_eq!(self.scale_sq, other.scale_sq, "weights from different tori");
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "weights from different tori");
        WeightVector {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            scale_sq: self.scale_sq.clone(),
        }
    }
}

/// Half-sum of positive roots δ, in e_j coordinates.
///
/// SO(2r+1) has δ = (r−1/2, r−3/2, …, 1/2); SO(2r) has δ = (r−1, r−2, …, 0);
/// the circle and the trivial group are abelian, so δ = 0.
pub fn delta_half_sum(group: &CompactGroupData) -> WeightVector {
    let rank = group.rank();
    let coeffs = match group.kind {
        GroupKind::SpecialOrthogonal(m) if m % 2 == 1 => {
            (1..=rank as i64).map(|j| Rational::ratio(2 * (rank as i64 - j) + 1, 2)).collect()
        }
        GroupKind::SpecialOrthogonal(_) => {
            (1..=rank as i64).map(|j| Rational::from_int(rank as i64 - j)).collect()
        }
        GroupKind::Circle => vec![Rational::zero()],
        GroupKind::Trivial => vec![],
    };
    WeightVector { coeffs, scale_sq: group.scale_sq.clone() }
}

/// An irreducible representation, given by its dominant highest weight.
///
/// Equality ignores the advisory label: two specs are the same irrep exactly
/// when group and highest weight agree.
#[derive(Debug, Clone)]
pub struct IrrepSpec {
    pub group: CompactGroupData,
    pub highest_weight: Vec<i64>,
    /// Advisory only (e.g. the spherical-harmonic degree); never compared.
    pub label: Option<String>,
}

impl PartialEq for IrrepSpec {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.highest_weight == other.highest_weight
    }
}

impl Eq for IrrepSpec {}

impl IrrepSpec {
    /// Validates dominance: w₁ ≥ … ≥ w_r ≥ 0 for SO(2r+1), and
    /// w₁ ≥ … ≥ w_{r−1} ≥ |w_r| for SO(2r). Circle characters are arbitrary
    /// integers; the trivial group has the empty weight.
    pub fn new(group: CompactGroupData, highest_weight: Vec<i64>) -> Result<Self, RepsError> {
        let rank = group.rank();
        if highest_weight.len() != rank {
            return Err(RepsError::InvalidWeight(format!(
                "{} has rank {rank}, weight has {} coordinates",
                group.name(),
                highest_weight.len()
            )));
        }
        match group.kind {
            GroupKind::SpecialOrthogonal(m) if m % 2 == 1 => {
                let ok = highest_weight.windows(2).all(|w| w[0] >= w[1])
                    && highest_weight.last().is_none_or(|&w| w >= 0);
                if !ok {
                    return Err(RepsError::InvalidWeight(format!(
                        "{:?} is not dominant for {}",
                        highest_weight,
                        group.name()
                    )));
                }
            }
            GroupKind::SpecialOrthogonal(_) => {
                let r = highest_weight.len();
                let ok = highest_weight[..r - 1].windows(2).all(|w| w[0] >= w[1])
                    && (r < 2 || highest_weight[r - 2] >= highest_weight[r - 1].abs());
                if !ok {
                    return Err(RepsError::InvalidWeight(format!(
                        "{:?} is not dominant for {}",
                        highest_weight,
                        group.name()
                    )));
                }
            }
            GroupKind::Circle | GroupKind::Trivial => {}
        }
        Ok(IrrepSpec { group, highest_weight, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn trivial(group: CompactGroupData) -> Self {
        let rank = group.rank();
        IrrepSpec { group, highest_weight: vec![0; rank], label: Some("triv".to_string()) }
    }

    /// The degree-m spherical-harmonic representation: highest weight
    /// (m, 0, …, 0) for SO(≥3), the character m for SO(2).
    pub fn spherical_harmonic(group: CompactGroupData, m: u32) -> Result<Self, RepsError> {
        let rank = group.rank();
        if group.kind == GroupKind::Trivial {
            return if m == 0 {
                Ok(Self::trivial(group).with_label("sh:0"))
            } else {
                Err(RepsError::InvalidWeight(format!(
                    "the trivial group has no degree-{m} harmonics"
                )))
            };
        }
        let mut hw = vec![0i64; rank];
        hw[0] = i64::from(m);
        Ok(Self::new(group, hw)?.with_label(format!("sh:{m}")))
    }

    /// The SO(2) character z ↦ z^s.
    pub fn circle_character(group: CompactGroupData, s: i64) -> Result<Self, RepsError> {
        if group.kind != GroupKind::Circle {
            return Err(RepsError::UnsupportedGroup(format!(
                "{} is not the circle group",
                group.name()
            )));
        }
        Ok(Self::new(group, vec![s])?.with_label(format!("circ:{s}")))
    }

    pub fn is_trivial(&self) -> bool {
        self.highest_weight.iter().all(|&w| w == 0)
    }

    /// Highest weight as a [`WeightVector`] on the group's torus.
    pub fn weight_vector(&self) -> WeightVector {
        WeightVector {
            coeffs: self.highest_weight.iter().map(|&w| Rational::from_int(w)).collect(),
            scale_sq: self.group.scale_sq.clone(),
        }
    }

    /// Short display name, e.g. `SO(3) hw [2]`.
    pub fn describe(&self) -> String {
        match &self.label {
            Some(l) => format!("{} {l}", self.group.name()),
            None => format!("{} hw {:?}", self.group.name(), self.highest_weight),
        }
    }
}

impl Serialize for IrrepSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("IrrepSpec", 3)?;
        s.serialize_field("group", &self.group.name())?;
        s.serialize_field("hw", &self.highest_weight)?;
        s.serialize_field("dim", &rep_dimension(self))?;
        s.end()
    }
}

/// Casimir invariant c = ‖iδ‖² − ‖iω + iδ‖² of an irrep with highest weight
/// ω, with respect to the ambient Killing-form inner product. Zero for the
/// trivial representation, weakly negative for every other dominant weight.
pub fn casimir_invariant(rep: &IrrepSpec) -> Rational {
    let delta = delta_half_sum(&rep.group);
    let shifted = rep.weight_vector().add(&delta);
    &delta.normsq_i() - &shifted.normsq_i()
}

/// One branch τ of a restriction σ|_M, with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchEntry {
    pub tau: IrrepSpec,
    pub mult: u32,
}

/// The decomposition of σ|_M into M-irreducibles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchingDecomposition {
    pub parent: IrrepSpec,
    pub entries: Vec<BranchEntry>,
}

/// Restricts a K = SO(n+1) irrep to M = SO(n) by the classical interlacing
/// rule; the result is multiplicity-free.
///
/// For SO(2r+1) ↓ SO(2r) the branches b satisfy
/// a₁ ≥ b₁ ≥ a₂ ≥ b₂ ≥ … ≥ a_r ≥ |b_r|, and for SO(2r) ↓ SO(2r−1)
/// a₁ ≥ b₁ ≥ a₂ ≥ … ≥ b_{r−1} ≥ |a_r|. The circle branches to the trivial
/// group by literal restriction (every character contains the trivial rep
/// once); pass `paper_n1_convention = true` to instead report compatibility
/// only for the zero character, matching the convention under which the
/// degenerate n = 1 chain pairs σ_m with τ₀ only at m = 0.
pub fn branch_to_m(
    sigma: &IrrepSpec,
    paper_n1_convention: bool,
) -> Result<BranchingDecomposition, RepsError> {
    let child_group = branch_target(&sigma.group)?;
    let a = &sigma.highest_weight;
    let mut entries: Vec<BranchEntry> = Vec::new();
    match sigma.group.kind {
        GroupKind::Circle => {
            // One-dimensional; restriction to SO(1) is the trivial rep once.
            if !paper_n1_convention || sigma.is_trivial() {
                entries.push(BranchEntry { tau: IrrepSpec::trivial(child_group), mult: 1 });
            }
        }
        GroupKind::SpecialOrthogonal(m) if m % 2 == 1 => {
            // SO(2r+1) ↓ SO(2r): b_j ∈ [a_{j+1}, a_j] for j < r, |b_r| ≤ a_r.
            let r = a.len();
            let mut ranges: Vec<(i64, i64)> =
                (0..r - 1).map(|j| (a[j + 1], a[j])).collect();
            ranges.push((-a[r - 1], a[r - 1]));
            guard_count(&ranges)?;
            enumerate_interlacing(&ranges, &mut |b| {
                let tau = IrrepSpec::new(child_group.clone(), b.to_vec())
                    .expect("interlacing tuples are dominant");
                entries.push(BranchEntry { tau, mult: 1 });
            });
        }
        GroupKind::SpecialOrthogonal(_) => {
            // SO(2r) ↓ SO(2r−1): b_j ∈ [a_{j+1}, a_j] for j < r−1,
            // b_{r−1} ∈ [|a_r|, a_{r−1}].
            let r = a.len();
            let mut ranges: Vec<(i64, i64)> =
                (0..r.saturating_sub(2)).map(|j| (a[j + 1], a[j])).collect();
            if r >= 2 {
                ranges.push((a[r - 1].abs(), a[r - 2]));
            }
            guard_count(&ranges)?;
            enumerate_interlacing(&ranges, &mut |b| {
                let tau = IrrepSpec::new(child_group.clone(), b.to_vec())
                    .expect("interlacing tuples are dominant");
                entries.push(BranchEntry { tau, mult: 1 });
            });
        }
        GroupKind::Trivial => unreachable!("branch_target rejected the trivial group"),
    }
    Ok(BranchingDecomposition { parent: sigma.clone(), entries })
}

/// The next group down the chain: SO(m) → SO(m−1).
fn branch_target(group: &CompactGroupData) -> Result<CompactGroupData, RepsError> {
    match group.kind {
        GroupKind::Trivial => Err(RepsError::UnsupportedGroup(
            "SO(1) has nothing to branch to".to_string(),
        )),
        GroupKind::Circle => Ok(CompactGroupData::in_ambient(1, group.ambient_n)),
        GroupKind::SpecialOrthogonal(m) => {
            Ok(CompactGroupData::in_ambient(m - 1, group.ambient_n))
        }
    }
}

fn guard_count(ranges: &[(i64, i64)]) -> Result<(), RepsError> {
    let mut count: u128 = 1;
    for &(lo, hi) in ranges {
        count = count.saturating_mul((hi - lo + 1).max(0) as u128);
        if count > MAX_BRANCH_ENTRIES {
            return Err(RepsError::DecompositionTooLarge(count));
        }
    }
    Ok(())
}

/// Visits every tuple with b[j] ∈ [ranges[j].0, ranges[j].1], in
/// lexicographically ascending order.
fn enumerate_interlacing(ranges: &[(i64, i64)], visit: &mut impl FnMut(&[i64])) {
    let mut b: Vec<i64> = ranges.iter().map(|&(lo, _)| lo).collect();
    if ranges.is_empty() {
        visit(&b);
        return;
    }
    loop {
        visit(&b);
        let mut j = ranges.len();
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            if b[j] < ranges[j].1 {
                b[j] += 1;
                for (k, &(lo, _)) in ranges.iter().enumerate().skip(j + 1) {
                    b[k] = lo;
                }
                break;
            }
        }
    }
}

/// The number of copies of τ inside σ|_M — 0 or 1 by the interlacing rule.
/// Returns 0 (never an error) when the groups do not form a restriction
/// chain. The degenerate circle → trivial case uses literal restriction.
pub fn multiplicity(sigma: &IrrepSpec, tau: &IrrepSpec) -> u32 {
    let Ok(child) = branch_target(&sigma.group) else {
        return 0;
    };
    if child != tau.group {
        return 0;
    }
    let a = &sigma.highest_weight;
    let b = &tau.highest_weight;
    let interlaces = match sigma.group.kind {
        GroupKind::Circle => tau.is_trivial(),
        GroupKind::SpecialOrthogonal(m) if m % 2 == 1 => {
            let r = a.len();
            (0..r - 1).all(|j| a[j] >= b[j] && b[j] >= a[j + 1]) && a[r - 1] >= b[r - 1].abs()
        }
        GroupKind::SpecialOrthogonal(_) => {
            let r = a.len();
            (0..r - 1).all(|j| a[j] >= b[j]) && (1..r).all(|j| b[j - 1] >= a[j].abs())
        }
        GroupKind::Trivial => false,
    };
    u32::from(interlaces)
}

/// The action of the restricted Weyl group's nontrivial element on M̂.
///
/// A representative conjugates M by an element flipping one coordinate axis;
/// on highest weights this negates the last coordinate for M = SO(even)
/// (including the circle, s ↦ −s) and is trivial for M = SO(odd) and SO(1).
pub fn weyl_action(tau: &IrrepSpec) -> IrrepSpec {
    if !tau.group.is_even_orthogonal() {
        return tau.clone();
    }
    let mut hw = tau.highest_weight.clone();
    if let Some(last) = hw.last_mut() {
        *last = -*last;
    }
    IrrepSpec { group: tau.group.clone(), highest_weight: hw, label: None }
}

/// Assumption 1: σ|_M contains τ exactly once.
pub fn check_assumption1(sigma: &IrrepSpec, tau: &IrrepSpec) -> bool {
    multiplicity(sigma, tau) == 1
}

/// Assumption 2: [τ] is invariant under the restricted Weyl group.
pub fn check_assumption2(tau: &IrrepSpec) -> bool {
    weyl_action(tau) == *tau
}

/// Exact dimension by the Weyl formula: Π ⟨ω+δ, α⟩ / ⟨δ, α⟩ over positive
/// roots e_i ± e_j (both types), plus the short roots e_i for SO(odd).
pub fn rep_dimension(rep: &IrrepSpec) -> u64 {
    let r = rep.group.rank();
    if r == 0 {
        return 1;
    }
    match rep.group.kind {
        GroupKind::Circle | GroupKind::Trivial => 1,
        GroupKind::SpecialOrthogonal(m) => {
            // Work in doubled coordinates so B-type half-integers stay integral.
            let odd = m % 2 == 1;
            let shifted: Vec<i64> = (0..r)
                .map(|i| {
                    let delta2 = if odd { 2 * (r - 1 - i) as i64 + 1 } else { 2 * (r - 1 - i) as i64 };
                    2 * rep.highest_weight[i] + delta2
                })
                .collect();
            let delta2: Vec<i64> = (0..r)
                .map(|i| if odd { 2 * (r - 1 - i) as i64 + 1 } else { 2 * (r - 1 - i) as i64 })
                .collect();
            let mut num: u128 = 1;
            let mut den: u128 = 1;
            let mut push = |n: i64, d: i64| {
                num *= n.unsigned_abs() as u128;
                den *= d.unsigned_abs() as u128;
                let g = gcd_u128(num, den);
                num /= g;
                den /= g;
            };
            for i in 0..r {
                for j in (i + 1)..r {
                    push(shifted[i] - shifted[j], delta2[i] - delta2[j]);
                    push(shifted[i] + shifted[j], delta2[i] + delta2[j]);
                }
                if odd {
                    push(shifted[i], delta2[i]);
                }
            }
            debug_assert_eq!(den, 1, "Weyl dimension must be an integer");
            (num / den) as u64
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}
