//! Explicit matrix models of the rank-one algebras and everything derived
//! from them by raw computation: structure constants, the Killing form as an
//! ad-trace (never as a pre-simplified multiple of the trace form), the
//! Cartan involution, and the restricted-root grading obtained as exact
//! eigenspaces of ad of the boost generator.
//!
//! so(n+1,1) is modelled on (n+2)×(n+2) real matrices preserving
//! diag(1,…,1,−1). su(n+1,1) is modelled by realification: the complex
//! (n+2)×(n+2) matrix Z = X + iY becomes the real block matrix
//! [[X, −Y], [Y, X]], which is faithful for brackets.

use super::matrix::{self, RatMat};
use super::OracleError;
use crate::exactnum::{sqrt_rational, QuadExt, Rational};
use crate::rootdata::{Family, RankOneGroup};

/// Largest admitted rank parameter; beyond this the exact eigenspace
/// computations stop being interactive.
pub const MAX_N: u32 = 8;

/// Sparse coordinates of one bracket [X_i, X_j] in the chosen basis.
pub type SparseVec = Vec<(usize, Rational)>;

/// Coordinate-vector bases of the five ad(boost) eigenblocks, plus the
/// split of the centralizer into m and the line a.
#[derive(Clone, Debug)]
pub struct Grading {
    pub m: Vec<Vec<Rational>>,
    pub a: Vec<Vec<Rational>>,
    pub g_alpha: Vec<Vec<Rational>>,
    pub g_minus_alpha: Vec<Vec<Rational>>,
    pub g_2alpha: Vec<Vec<Rational>>,
    pub g_minus_2alpha: Vec<Vec<Rational>>,
}

/// Dimension summary of the restricted-root grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradingDims {
    pub dim_m: usize,
    pub dim_g_alpha: usize,
    pub dim_g_2alpha: usize,
}

/// An explicit matrix model of so(n+1,1) or realified su(n+1,1), built once
/// and then treated as immutable.
#[derive(Clone)]
pub struct MatrixLieAlgebra {
    pub group: RankOneGroup,
    /// Dimension of the Lie algebra (= number of basis elements).
    pub dim: usize,
    /// Matrices are msize × msize over the rationals.
    pub msize: usize,
    /// Complex size n+2 for both families (the realified su model uses
    /// real matrices of size 2·(n+2)).
    pub block: usize,
    pub basis: Vec<RatMat>,
    pub names: Vec<String>,
    /// Entry (row, col) whose value in any algebra element equals its
    /// coefficient on the corresponding basis vector.
    readers: Vec<(usize, usize)>,
    /// structure[i][j] = coordinates of [basis[i], basis[j]].
    pub structure: Vec<Vec<SparseVec>>,
    /// Killing form B(X_i, X_j) = tr(ad X_i ∘ ad X_j), from the structure
    /// constants alone.
    pub killing: RatMat,
    /// Sign of the Cartan involution θ(X) = −Xᵀ on each basis vector
    /// (every basis vector is a θ-eigenvector): +1 on k, −1 on p.
    pub theta_sign: Vec<i8>,
    /// Index of the boost generator (the p-element spanning a).
    pub boost_index: usize,
    /// ⟨X_boost, X_boost⟩ = −B(X_boost, θX_boost), a positive rational q;
    /// the unit coroot direction is H₀ = X_boost / √q.
    pub boost_norm_sq: Rational,
    pub grading: Grading,
}

impl MatrixLieAlgebra {
    /// The matrix of the boost generator.
    pub fn boost(&self) -> &RatMat {
        &self.basis[self.boost_index]
    }

    /// ‖α₀‖ as the oracle sees it: the eigenvalue of ad H₀ on g_{α₀}, i.e.
    /// 1/√q with q = ⟨X_boost, X_boost⟩.
    pub fn alpha0_norm(&self) -> Result<QuadExt, OracleError> {
        let inv = self
            .boost_norm_sq
            .recip()
            .expect("boost norm is positive");
        Ok(sqrt_rational(&inv)?)
    }

    /// Inner product ⟨X_i, X_j⟩ = −B(X_i, θX_j) on basis coordinates.
    pub fn inner_product_matrix(&self) -> RatMat {
        let mut g = RatMat::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let sign = Rational::from_int(i64::from(self.theta_sign[j]));
                g[(i, j)] = -&(&self.killing[(i, j)] * &sign);
            }
        }
        g
    }

    /// ⟨·,·⟩ restricted to the span of the given coordinate vectors.
    pub fn gram(&self, vectors: &[Vec<Rational>]) -> RatMat {
        let ip = self.inner_product_matrix();
        let mut g = RatMat::zeros(vectors.len(), vectors.len());
        for (i, v) in vectors.iter().enumerate() {
            let iv = ip.apply(v);
            for (j, w) in vectors.iter().enumerate() {
                let mut acc = Rational::zero();
                for (x, y) in iv.iter().zip(w) {
                    if !x.is_zero() && !y.is_zero() {
                        acc += &(x * y);
                    }
                }
                g[(i, j)] = acc;
            }
        }
        g
    }

    /// Expresses an msize × msize matrix in the basis, verifying the
    /// reconstruction exactly.
    pub fn coordinates(&self, x: &RatMat) -> Result<Vec<Rational>, OracleError> {
        if x.nrows() != self.msize || x.ncols() != self.msize {
            return Err(OracleError::NotInAlgebra(format!(
                "matrix is {}x{}, expected {}x{}",
                x.nrows(),
                x.ncols(),
                self.msize,
                self.msize
            )));
        }
        let coords: Vec<Rational> =
            self.readers.iter().map(|&(r, c)| x[(r, c)].clone()).collect();
        let mut rebuilt = RatMat::zeros(self.msize, self.msize);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                rebuilt = rebuilt.add(&b.scale(c));
            }
        }
        if &rebuilt != x {
            return Err(OracleError::NotInAlgebra(
                "matrix does not lie in the modelled algebra".into(),
            ));
        }
        Ok(coords)
    }

    /// Turns a coordinate vector back into a matrix.
    pub fn from_coordinates(&self, coords: &[Rational]) -> RatMat {
        assert_eq!(coords.len(), self.dim);
        let mut out = RatMat::zeros(self.msize, self.msize);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }

    /// Bracket on coordinates through the structure constants.
    pub fn bracket_coords(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.structure[i][j] {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    /// The matrix of ad(basis[idx]) on basis coordinates.
    pub fn ad_matrix(&self, idx: usize) -> RatMat {
        let mut ad = RatMat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (k, c) in &self.structure[idx][j] {
                ad[(*k, j)] = c.clone();
            }
        }
        ad
    }

    /// Exhaustive Jacobi identity check on structure constants. Returns the
    /// first violating triple, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let zero = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let mut acc = zero.clone();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, v) in &self.structure[a][b] {
                            for (l, w) in &self.structure[*m][c] {
                                acc[*l] += &(v * w);
                            }
                        }
                    }
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Flips one structure constant. Only for negative-control diagnostics:
    /// downstream verifications must then fail.
    pub fn perturb_for_negative_control(&mut self) {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if let Some((_, c)) = self.structure[i][j].first_mut() {
                    *c = -&*c;
                    return;
                }
            }
        }
    }
}

/// Elementary matrix with a 1 at (i, j), zero-indexed.
fn elem(n: usize, i: usize, j: usize) -> RatMat {
    let mut m = RatMat::zeros(n, n);
    m[(i, j)] = Rational::one();
    m
}

/// Realification [[X, −Y], [Y, X]] of the complex matrix X + iY, where
/// `re` holds X and `im` holds Y, both N×N.
fn realify(re: &RatMat, im: &RatMat) -> RatMat {
    let n = re.nrows();
    let mut out = RatMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = re[(i, j)].clone();
            out[(n + i, n + j)] = re[(i, j)].clone();
            out[(i, n + j)] = -&im[(i, j)];
            out[(n + i, j)] = im[(i, j)].clone();
        }
    }
    out
}

struct BasisElement {
    name: String,
    mat: RatMat,
    reader: (usize, usize),
    theta_sign: i8,
}

/// Basis of so(n+1,1): rotations K_ij = E_ij − E_ji (1 ≤ i < j ≤ n+1) and
/// boosts P_i = E_i,n+2 + E_n+2,i. Coefficients are read off single matrix
/// entries because the supports are disjoint.
fn basis_so(n: usize) -> Vec<BasisElement> {
    let size = n + 2;
    let mut out = Vec::new();
    for i in 0..=n {
        for j in (i + 1)..=n {
            out.push(BasisElement {
                name: format!("K[{},{}]", i + 1, j + 1),
                mat: elem(size, i, j).sub(&elem(size, j, i)),
                reader: (i, j),
                theta_sign: 1,
            });
        }
    }
    for i in 0..=n {
        out.push(BasisElement {
            name: format!("P[{}]", i + 1),
            mat: elem(size, i, size - 1).add(&elem(size, size - 1, i)),
            reader: (i, size - 1),
            theta_sign: -1,
        });
    }
    out
}

/// Real basis of su(n+1,1), realified. With N = n+2 and ε = diag(1,…,1,−1),
/// the algebra is {Z : Z†ε + εZ = 0, tr Z = 0}:
///   A_ij = E_ij − E_ji and S_ij = i(E_ij + E_ji) for i < j ≤ n+1,
///   D_i  = i(E_ii − E_NN) for i ≤ n+1,
///   B_i  = E_iN + E_Ni and C_i = i(E_iN − E_Ni) for i ≤ n+1.
/// Readers address disjoint entries of the real/imaginary blocks.
fn basis_su(n: usize) -> Vec<BasisElement> {
    let size = n + 2;
    let zero = RatMat::zeros(size, size);
    let mut out = Vec::new();
    for i in 0..=n {
        for j in (i + 1)..=n {
            out.push(BasisElement {
                name: format!("A[{},{}]", i + 1, j + 1),
                mat: realify(&elem(size, i, j).sub(&elem(size, j, i)), &zero),
                reader: (i, j),
                theta_sign: 1,
            });
            out.push(BasisElement {
                name: format!("S[{},{}]", i + 1, j + 1),
                mat: realify(&zero, &elem(size, i, j).add(&elem(size, j, i))),
                reader: (size + i, j),
                theta_sign: 1,
            });
        }
    }
    for i in 0..=n {
        out.push(BasisElement {
            name: format!("D[{}]", i + 1),
            mat: realify(&zero, &elem(size, i, i).sub(&elem(size, size - 1, size - 1))),
            reader: (size + i, i),
            theta_sign: 1,
        });
    }
    for i in 0..=n {
        out.push(BasisElement {
            name: format!("B[{}]", i + 1),
            mat: realify(&elem(size, i, size - 1).add(&elem(size, size - 1, i)), &zero),
            reader: (i, size - 1),
            theta_sign: -1,
        });
        out.push(BasisElement {
            name: format!("C[{}]", i + 1),
            mat: realify(&zero, &elem(size, i, size - 1).sub(&elem(size, size - 1, i))),
            reader: (size + i, size - 1),
            theta_sign: -1,
        });
    }
    out
}

/// Builds the full matrix model for a rank-one group. Structure constants
/// are obtained by bracketing basis matrices and coordinatizing with exact
/// reconstruction checks; the Killing form is the ad-trace; the grading
/// comes from exact eigenspaces of ad(boost).
pub fn build_algebra(group: &RankOneGroup) -> Result<MatrixLieAlgebra, OracleError> {
    if group.n > MAX_N {
        return Err(OracleError::SizeLimit { n: group.n, max: MAX_N });
    }
    let n = group.n as usize;
    let elements = match group.family {
        Family::RealHyperbolic => basis_so(n),
        Family::ComplexHyperbolic => basis_su(n),
    };
    let dim = elements.len();
    let basis: Vec<RatMat> = elements.iter().map(|e| e.mat.clone()).collect();
    let names: Vec<String> = elements.iter().map(|e| e.name.clone()).collect();
    let readers: Vec<(usize, usize)> = elements.iter().map(|e| e.reader).collect();
    let theta_sign: Vec<i8> = elements.iter().map(|e| e.theta_sign).collect();
    let msize = basis[0].nrows();

    // Sanity-check the readers on the basis itself: coordinates of X_k must
    // be the k-th unit vector.
    for (k, b) in basis.iter().enumerate() {
        for (l, &(r, c)) in readers.iter().enumerate() {
            let expect = if k == l { Rational::one() } else { Rational::zero() };
            if b[(r, c)] != expect {
                return Err(OracleError::NotInAlgebra(format!(
                    "basis element {} is not dual to its reader",
                    names[k]
                )));
            }
        }
    }

    let mut proto = MatrixLieAlgebra {
        group: *group,
        dim,
        msize,
        block: n + 2,
        basis,
        names,
        readers,
        structure: vec![vec![Vec::new(); dim]; dim],
        killing: RatMat::zeros(dim, dim),
        theta_sign,
        boost_index: 0,
        boost_norm_sq: Rational::zero(),
        grading: Grading {
            m: Vec::new(),
            a: Vec::new(),
            g_alpha: Vec::new(),
            g_minus_alpha: Vec::new(),
            g_2alpha: Vec::new(),
            g_minus_2alpha: Vec::new(),
        },
    };

    // Structure constants with closure verification.
    for i in 0..dim {
        for j in (i + 1)..dim {
            let br = proto.basis[i].commutator(&proto.basis[j]);
            let coords = proto.coordinates(&br).map_err(|_| {
                OracleError::NotInAlgebra(format!(
                    "bracket [{}, {}] left the span of the basis",
                    proto.names[i], proto.names[j]
                ))
            })?;
            let sparse: SparseVec = coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect();
            proto.structure[j][i] = sparse.iter().map(|(k, c)| (*k, -c)).collect();
            proto.structure[i][j] = sparse;
        }
    }

    // Killing form as a genuine ad-trace:
    // B(X_a, X_b) = Σ_c (coefficient of X_c in [X_a, [X_b, X_c]]).
    for a in 0..dim {
        for b in a..dim {
            let mut acc = Rational::zero();
            for c in 0..dim {
                for (m, v) in &proto.structure[b][c] {
                    for (l, w) in &proto.structure[a][*m] {
                        if *l == c {
                            acc += &(v * w);
                        }
                    }
                }
            }
            proto.killing[(a, b)] = acc.clone();
            proto.killing[(b, a)] = acc;
        }
    }

    // The boost generator: P_{n+1} (so) or B_{n+1} (su), both named with the
    // (n+1)-st row and last column.
    let boost_name = match group.family {
        Family::RealHyperbolic => format!("P[{}]", n + 1),
        Family::ComplexHyperbolic => format!("B[{}]", n + 1),
    };
    proto.boost_index = proto
        .names
        .iter()
        .position(|nm| *nm == boost_name)
        .expect("boost generator is part of the basis");

    // ⟨X_b, X_b⟩ = −B(X_b, θX_b) = +B(X_b, X_b) since θ = −1 on p.
    proto.boost_norm_sq = proto.killing[(proto.boost_index, proto.boost_index)].clone();
    if !proto.boost_norm_sq.is_positive() {
        return Err(OracleError::GradingFailure(
            "boost generator has non-positive inner product".into(),
        ));
    }

    proto.grading = compute_grading(&proto)?;
    Ok(proto)
}

/// Exact eigenspace decomposition of ad(boost) with eigenvalues in
/// {0, ±1, ±2}, plus the split of the centralizer into m ⊕ a.
fn compute_grading(alg: &MatrixLieAlgebra) -> Result<Grading, OracleError> {
    let ad = alg.ad_matrix(alg.boost_index);
    let dim = alg.dim;
    let eigen = |c: i64| -> Vec<Vec<Rational>> {
        let mut shifted = ad.clone();
        for i in 0..dim {
            shifted[(i, i)] -= &Rational::from_int(c);
        }
        matrix::kernel_basis(&shifted)
    };

    let ker0 = eigen(0);
    let g_alpha = eigen(1);
    let g_minus_alpha = eigen(-1);
    let g_2alpha = eigen(2);
    let g_minus_2alpha = eigen(-2);

    let total = ker0.len()
        + g_alpha.len()
        + g_minus_alpha.len()
        + g_2alpha.len()
        + g_minus_2alpha.len();
    if total != dim {
        return Err(OracleError::GradingFailure(format!(
            "ad(boost) eigenspaces for eigenvalues 0, ±1, ±2 span {total} of {dim} dimensions"
        )));
    }
    if g_alpha.len() != g_minus_alpha.len() || g_2alpha.len() != g_minus_2alpha.len() {
        return Err(OracleError::GradingFailure(
            "opposite restricted-root spaces have unequal dimensions".into(),
        ));
    }

    // θ preserves the centralizer of the boost, so each kernel vector splits
    // into a k-part (m) and a p-part (which must be the line a itself).
    let mut k_parts = Vec::new();
    let mut p_parts = Vec::new();
    for v in &ker0 {
        let mut vk = v.clone();
        let mut vp = v.clone();
        for (idx, sign) in alg.theta_sign.iter().enumerate() {
            if *sign == 1 {
                vp[idx] = Rational::zero();
            } else {
                vk[idx] = Rational::zero();
            }
        }
        if vk.iter().any(|x| !x.is_zero()) {
            k_parts.push(vk);
        }
        if vp.iter().any(|x| !x.is_zero()) {
            p_parts.push(vp);
        }
    }
    let mut boost_coord = vec![Rational::zero(); dim];
    boost_coord[alg.boost_index] = Rational::one();
    p_parts.push(boost_coord.clone());
    if matrix::span_rank(&p_parts) != 1 {
        return Err(OracleError::GradingFailure(
            "p-part of the boost centralizer is larger than the line a".into(),
        ));
    }
    let dim_m = matrix::span_rank(&k_parts);
    if dim_m + 1 != ker0.len() {
        return Err(OracleError::GradingFailure(
            "boost centralizer does not split as m + a".into(),
        ));
    }
    // Reduce the k-parts to an independent family of size dim_m.
    let mut m_basis: Vec<Vec<Rational>> = Vec::new();
    for v in k_parts {
        let mut trial = m_basis.clone();
        trial.push(v.clone());
        if matrix::span_rank(&trial) > m_basis.len() {
            m_basis.push(v);
        }
        if m_basis.len() == dim_m {
            break;
        }
    }

    Ok(Grading {
        m: m_basis,
        a: vec![boost_coord],
        g_alpha,
        g_minus_alpha,
        g_2alpha,
        g_minus_2alpha,
    })
}

/// Dimensions of m and the restricted-root spaces.
pub fn restricted_grading(alg: &MatrixLieAlgebra) -> GradingDims {
    GradingDims {
        dim_m: alg.grading.m.len(),
        dim_g_alpha: alg.grading.g_alpha.len(),
        dim_g_2alpha: alg.grading.g_2alpha.len(),
    }
}

/// Outcome of the horocycle bracket verification; `witness` names the first
/// offending bracket when `ok` is false.
#[derive(Clone, Debug)]
pub struct BracketCheck {
    pub ok: bool,
    pub witness: Option<String>,
}

/// Verifies, exactly and on the nose, the bracket relations of the expanding
/// horocycle subalgebra n⁻ = g_{−α₀} ⊕ g_{−2α₀}:
///   [X_boost, Y] = −Y        for Y in g_{−α₀},
///   [X_boost, Z] = −2Z       for Z in g_{−2α₀},
///   [Y, Y′] ∈ g_{−2α₀}       for Y, Y′ in g_{−α₀},
///   [Y, Z] = 0               for Y in g_{−α₀}, Z in g_{−2α₀}.
/// Together with ‖α₀‖ = 1/√⟨X_boost, X_boost⟩ this gives
/// [H₀, X] = α(H₀)·X on each space.
pub fn verify_horocycle_brackets(alg: &MatrixLieAlgebra) -> BracketCheck {
    let fail = |w: String| BracketCheck { ok: false, witness: Some(w) };
    let mut boost = vec![Rational::zero(); alg.dim];
    boost[alg.boost_index] = Rational::one();

    for (tag, space, ev) in [
        ("g(-a0)", &alg.grading.g_minus_alpha, -1i64),
        ("g(-2a0)", &alg.grading.g_minus_2alpha, -2i64),
    ] {
        for (i, y) in space.iter().enumerate() {
            let br = alg.bracket_coords(&boost, y);
            let scaled: Vec<Rational> =
                y.iter().map(|c| c * &Rational::from_int(ev)).collect();
            if br != scaled {
                return fail(format!("[boost, {tag}[{i}]] != {ev} * {tag}[{i}]"));
            }
        }
    }

    let minus = &alg.grading.g_minus_alpha;
    let minus2 = &alg.grading.g_minus_2alpha;
    for (i, y) in minus.iter().enumerate() {
        for (j, y2) in minus.iter().enumerate().skip(i + 1) {
            let br = alg.bracket_coords(y, y2);
            if br.iter().any(|c| !c.is_zero()) {
                // Must lie inside g_{−2α₀}: check membership by rank.
                let mut aug: Vec<Vec<Rational>> = minus2.clone();
                aug.push(br);
                if matrix::span_rank(&aug) != minus2.len() {
                    return fail(format!(
                        "[g(-a0)[{i}], g(-a0)[{j}]] escapes g(-2a0)"
                    ));
                }
            }
        }
    }
    for (i, y) in minus.iter().enumerate() {
        for (j, z) in minus2.iter().enumerate() {
            let br = alg.bracket_coords(y, z);
            if br.iter().any(|c| !c.is_zero()) {
                return fail(format!("[g(-a0)[{i}], g(-2a0)[{j}]] != 0"));
            }
        }
    }
    BracketCheck { ok: true, witness: None }
}

/// The order-two rotation diag(1,…,1,−1,−1,1) flipping the n-th and
/// (n+1)-st coordinates: a K-element normalizing a with Ad(w)X_boost =
/// −X_boost, realized in the same matrix model as the algebra.
pub fn weyl_representative(alg: &MatrixLieAlgebra) -> RatMat {
    let n = alg.group.n as usize;
    let size = alg.block;
    let flip = |m: &mut RatMat, offset: usize| {
        m[(offset + n - 1, offset + n - 1)] = Rational::from_int(-1);
        m[(offset + n, offset + n)] = Rational::from_int(-1);
    };
    let mut w = RatMat::identity(alg.msize);
    match alg.group.family {
        Family::RealHyperbolic => flip(&mut w, 0),
        Family::ComplexHyperbolic => {
            // Realified: the same real sign flip acts on both blocks.
            flip(&mut w, 0);
            flip(&mut w, size);
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::restricted_root_data;

    fn so(n: u32) -> MatrixLieAlgebra {
        build_algebra(&RankOneGroup::real_hyperbolic(n).unwrap()).unwrap()
    }

    fn su(n: u32) -> MatrixLieAlgebra {
        build_algebra(&RankOneGroup::complex_hyperbolic(n).unwrap()).unwrap()
    }

    #[test]
    fn dimensions_match_the_closed_forms() {
        for n in 1..=4 {
            let a = so(n);
            assert_eq!(a.dim as u32, (n + 1) * (n + 2) / 2, "so({},1)", n + 1);
            let b = su(n);
            assert_eq!(b.dim as u32, (n + 2) * (n + 2) - 1, "su({},1)", n + 1);
        }
        assert_eq!(so(1).dim, 3);
        assert_eq!(so(2).dim, 6);
        assert_eq!(su(1).dim, 8);
    }

    #[test]
    fn size_limit_is_enforced() {
        let g = RankOneGroup::real_hyperbolic(MAX_N + 1).unwrap();
        assert!(matches!(
            build_algebra(&g),
            Err(OracleError::SizeLimit { .. })
        ));
    }

    #[test]
    fn jacobi_holds_for_small_algebras() {
        for n in 1..=3 {
            assert_eq!(so(n).jacobi_violation(), None);
        }
        assert_eq!(su(1).jacobi_violation(), None);
        assert_eq!(su(2).jacobi_violation(), None);
    }

    #[test]
    fn perturbed_constants_break_jacobi() {
        let mut alg = so(2);
        alg.perturb_for_negative_control();
        assert!(alg.jacobi_violation().is_some());
    }

    #[test]
    fn killing_form_is_the_expected_multiple_of_the_trace_form() {
        // For so(N) models B = (N−2)·tr(XY); for su(N) models B = 2N·tr(XY)
        // computed on the complex matrices, which equals N·tr on the
        // realifications (realification doubles traces). These multiples
        // are *outputs* here, not inputs: the ad-trace must reproduce them.
        let a = so(2); // so(3,1), N = 4, B = 2·tr
        for i in 0..a.dim {
            for j in 0..a.dim {
                let tr = a.basis[i].matmul(&a.basis[j]).trace();
                assert_eq!(a.killing[(i, j)], &tr * &Rational::from_int(2));
            }
        }
        let b = so(1); // so(2,1), N = 3, B = 1·tr
        for i in 0..b.dim {
            for j in 0..b.dim {
                let tr = b.basis[i].matmul(&b.basis[j]).trace();
                assert_eq!(b.killing[(i, j)], tr);
            }
        }
        let c = su(1); // su(2,1), N = 3: B = 2N·tr_C = N·tr_R = 3·tr_R
        for i in 0..c.dim {
            for j in 0..c.dim {
                let tr = c.basis[i].matmul(&c.basis[j]).trace();
                assert_eq!(c.killing[(i, j)], &tr * &Rational::from_int(3));
            }
        }
    }

    #[test]
    fn killing_vanishes_between_k_and_p() {
        for alg in [so(3), su(2)] {
            for i in 0..alg.dim {
                for j in 0..alg.dim {
                    if alg.theta_sign[i] != alg.theta_sign[j] {
                        assert!(alg.killing[(i, j)].is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn inner_product_is_positive_definite() {
        for alg in [so(1), so(2), so(3), su(1), su(2)] {
            assert!(matrix::is_positive_definite(&alg.inner_product_matrix()));
        }
    }

    #[test]
    fn boost_norms() {
        // ⟨X_b, X_b⟩ = 2n for so(n+1,1) and 4(n+2) for su(n+1,1).
        for n in 1..=4u32 {
            assert_eq!(so(n).boost_norm_sq, Rational::from_int(i64::from(2 * n)));
            assert_eq!(
                su(n).boost_norm_sq,
                Rational::from_int(i64::from(4 * (n + 2)))
            );
        }
    }

    #[test]
    fn alpha0_norm_matches_the_table() {
        for n in 1..=4u32 {
            for alg in [so(n), su(n)] {
                let table = restricted_root_data(&alg.group);
                assert_eq!(
                    alg.alpha0_norm().unwrap(),
                    table.norm_alpha0,
                    "{}",
                    alg.group
                );
            }
        }
    }

    #[test]
    fn grading_dimensions() {
        for n in 1..=4u32 {
            let a = so(n);
            let d = restricted_grading(&a);
            assert_eq!(
                d,
                GradingDims {
                    dim_m: (n as usize) * (n as usize - 1) / 2,
                    dim_g_alpha: n as usize,
                    dim_g_2alpha: 0,
                }
            );
            let b = su(n);
            let e = restricted_grading(&b);
            assert_eq!(
                e,
                GradingDims {
                    dim_m: (n as usize) * (n as usize),
                    dim_g_alpha: 2 * n as usize,
                    dim_g_2alpha: 1,
                }
            );
        }
    }

    #[test]
    fn horocycle_brackets_hold() {
        for alg in [so(1), so(2), so(3), su(1), su(2)] {
            let check = verify_horocycle_brackets(&alg);
            assert!(check.ok, "witness: {:?}", check.witness);
        }
    }

    #[test]
    fn perturbed_constants_fail_the_horocycle_check() {
        // Flip the sign of a structure constant involved in the boost
        // action so the eigen-relation breaks.
        let mut alg = so(2);
        let minus = alg.grading.g_minus_alpha.clone();
        let i = alg.boost_index;
        // Perturb the ad(boost) row used by the bracket check.
        let j = (0..alg.dim)
            .find(|&j| !alg.structure[i][j].is_empty())
            .unwrap();
        alg.structure[i][j][0].1 = &alg.structure[i][j][0].1 * &Rational::from_int(3);
        let _ = minus;
        let check = verify_horocycle_brackets(&alg);
        assert!(!check.ok);
        assert!(check.witness.is_some());
    }

    #[test]
    fn coordinates_reject_outsiders() {
        let alg = so(2);
        // A symmetric upper-left block is not in so(3,1).
        let mut x = RatMat::zeros(4, 4);
        x[(0, 1)] = Rational::one();
        x[(1, 0)] = Rational::one();
        assert!(matches!(
            alg.coordinates(&x),
            Err(OracleError::NotInAlgebra(_))
        ));
        // Wrong size is rejected up front.
        let y = RatMat::zeros(3, 3);
        assert!(alg.coordinates(&y).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let alg = su(2);
        let mut coords = vec![Rational::zero(); alg.dim];
        coords[0] = Rational::ratio(3, 7);
        coords[alg.dim - 1] = Rational::ratio(-2, 5);
        coords[alg.boost_index] = Rational::from_int(4);
        let x = alg.from_coordinates(&coords);
        assert_eq!(alg.coordinates(&x).unwrap(), coords);
    }

    #[test]
    fn bracket_coordinates_match_matrix_commutators() {
        let alg = su(1);
        for i in 0..alg.dim {
            for j in 0..alg.dim {
                let m = alg.basis[i].commutator(&alg.basis[j]);
                let mut u = vec![Rational::zero(); alg.dim];
                let mut v = vec![Rational::zero(); alg.dim];
                u[i] = Rational::one();
                v[j] = Rational::one();
                let coords = alg.bracket_coords(&u, &v);
                assert_eq!(alg.from_coordinates(&coords), m);
            }
        }
    }

    #[test]
    fn weyl_representative_flips_the_boost_and_preserves_m() {
        for alg in [so(2), so(3), so(4)] {
            let w = weyl_representative(&alg);
            let wb = w.matmul(alg.boost()).matmul(&w);
            assert_eq!(wb, alg.boost().neg());
            for v in &alg.grading.m {
                let x = alg.from_coordinates(v);
                let conj = w.matmul(&x).matmul(&w);
                let coords = alg.coordinates(&conj).unwrap();
                // Stays in m: zero on p-indices and in the span of m.
                let mut aug = alg.grading.m.clone();
                aug.push(coords);
                assert_eq!(matrix::span_rank(&aug), alg.grading.m.len());
            }
        }
    }
}
