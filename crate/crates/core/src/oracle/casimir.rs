//! Casimir operators of the compact subalgebras k and m, assembled from raw
//! matrices: Gram–Schmidt-orthogonalize a basis of the subalgebra with
//! respect to ⟨X, Y⟩ = −B(X, θY), apply a concrete representation, and sum
//! ρ(u_j)²/⟨u_j, u_j⟩. Orthonormalization introduces one square root per
//! vector; only its square enters the operator, so the result is exactly
//! rational — but each radicand is still materialized (and bounds-checked)
//! through the quadratic-extension layer.
//!
//! Available representations are the defining one on the subalgebra's own
//! block and traceless symmetric two-tensors of it. `casimir_spectrum`
//! instead lets the chosen subalgebra act on the *maximal compact* block's
//! representation space, where the operator is no longer scalar; its exact
//! eigenvalues come from a Krylov minimal polynomial, rational root
//! extraction, and kernel dimensions.

use super::algebra::MatrixLieAlgebra;
use super::matrix::{self, RatMat};
use super::OracleError;
use crate::exactnum::{sqrt_rational, Rational};
use crate::rootdata::Family;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Which compact subalgebra's Casimir to form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subgroup {
    /// k = so(n+1), the maximal compact subalgebra.
    MaximalCompact,
    /// m = so(n), the centralizer of a in k.
    CentralizerM,
}

/// Which concrete representation to act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    /// The defining action on column vectors of the block.
    Defining,
    /// Traceless symmetric two-tensors, F ↦ XF − FX.
    Sym2Traceless,
}

/// Upper-left block side length for a subgroup.
fn block_size(alg: &MatrixLieAlgebra, sub: Subgroup) -> usize {
    let n = alg.group.n as usize;
    match sub {
        Subgroup::MaximalCompact => n + 1,
        Subgroup::CentralizerM => n,
    }
}

/// Coordinate vectors (in algebra coordinates) of a basis of the subalgebra.
fn sub_basis(alg: &MatrixLieAlgebra, sub: Subgroup) -> Vec<Vec<Rational>> {
    match sub {
        Subgroup::MaximalCompact => (0..alg.dim)
            .filter(|&i| alg.theta_sign[i] == 1)
            .map(|i| {
                let mut v = vec![Rational::zero(); alg.dim];
                v[i] = Rational::one();
                v
            })
            .collect(),
        Subgroup::CentralizerM => alg.grading.m.clone(),
    }
}

/// Extracts the upper-left s×s block, demanding exact vanishing outside it.
fn extract_block(m: &RatMat, s: usize) -> Result<RatMat, OracleError> {
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if (i >= s || j >= s) && !m[(i, j)].is_zero() {
                return Err(OracleError::NotInAlgebra(format!(
                    "subalgebra element has support at ({i}, {j}) outside its {s}x{s} block"
                )));
            }
        }
    }
    let mut out = RatMat::zeros(s, s);
    for i in 0..s {
        for j in 0..s {
            out[(i, j)] = m[(i, j)].clone();
        }
    }
    Ok(out)
}

/// Basis of traceless symmetric s×s matrices: E_ii − E_ss for i < s−1,
/// then E_ij + E_ji for i < j.
fn sym2_basis(s: usize) -> Vec<RatMat> {
    let mut out = Vec::new();
    for i in 0..s.saturating_sub(1) {
        let mut f = RatMat::zeros(s, s);
        f[(i, i)] = Rational::one();
        f[(s - 1, s - 1)] = Rational::from_int(-1);
        out.push(f);
    }
    for i in 0..s {
        for j in (i + 1)..s {
            let mut f = RatMat::zeros(s, s);
            f[(i, j)] = Rational::one();
            f[(j, i)] = Rational::one();
            out.push(f);
        }
    }
    out
}

/// Coordinates of a traceless symmetric matrix in the `sym2_basis` order,
/// verified by reconstruction.
fn sym2_coordinates(m: &RatMat, s: usize) -> Result<Vec<Rational>, OracleError> {
    let mut coords = Vec::with_capacity(s * (s + 1) / 2 - 1);
    for i in 0..s.saturating_sub(1) {
        coords.push(m[(i, i)].clone());
    }
    for i in 0..s {
        for j in (i + 1)..s {
            coords.push(m[(i, j)].clone());
        }
    }
    let basis = sym2_basis(s);
    let mut rebuilt = RatMat::zeros(s, s);
    for (c, f) in coords.iter().zip(&basis) {
        if !c.is_zero() {
            rebuilt = rebuilt.add(&f.scale(c));
        }
    }
    if &rebuilt != m {
        return Err(OracleError::NotInAlgebra(
            "matrix is not traceless symmetric".into(),
        ));
    }
    Ok(coords)
}

/// The representation matrix of an antisymmetric block X.
fn rep_matrix(kind: RepKind, s: usize, x: &RatMat) -> Result<RatMat, OracleError> {
    match kind {
        RepKind::Defining => Ok(x.clone()),
        RepKind::Sym2Traceless => {
            let basis = sym2_basis(s);
            let d = basis.len();
            let mut out = RatMat::zeros(d, d);
            for (col, f) in basis.iter().enumerate() {
                let image = x.matmul(f).sub(&f.matmul(x));
                let coords = sym2_coordinates(&image, s)?;
                for (row, c) in coords.into_iter().enumerate() {
                    out[(row, col)] = c;
                }
            }
            Ok(out)
        }
    }
}

/// Gram–Schmidt over the restriction of ⟨·,·⟩, returning for each output
/// vector its combination coefficients over the input list together with its
/// squared length q_j (positive, exact). Radicands √q_j are materialized to
/// honor the one-radical-per-vector budget.
fn orthogonalize(
    alg: &MatrixLieAlgebra,
    vectors: &[Vec<Rational>],
) -> Result<Vec<(Vec<Rational>, Rational)>, OracleError> {
    let r = vectors.len();
    let gram = alg.gram(vectors);
    let mut out: Vec<(Vec<Rational>, Rational)> = Vec::with_capacity(r);
    for i in 0..r {
        let mut coeffs = vec![Rational::zero(); r];
        coeffs[i] = Rational::one();
        for (prev, q) in &out {
            // ⟨input_i, u_prev⟩ over the Gram matrix.
            let mut ip = Rational::zero();
            for (k, c) in prev.iter().enumerate() {
                if !c.is_zero() {
                    ip += &(c * &gram[(i, k)]);
                }
            }
            if ip.is_zero() {
                continue;
            }
            let factor = &ip / q;
            for (c, p) in coeffs.iter_mut().zip(prev) {
                *c -= &(&factor * p);
            }
        }
        // q_i = coeffsᵀ · G · coeffs.
        let mut q = Rational::zero();
        for (a, ca) in coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in coeffs.iter().enumerate() {
                if !cb.is_zero() {
                    q += &(&(ca * cb) * &gram[(a, b)]);
                }
            }
        }
        if !q.is_positive() {
            return Err(OracleError::GradingFailure(
                "orthogonalization hit a non-positive length; the inner product is not \
                 definite on the subalgebra"
                    .into(),
            ));
        }
        sqrt_rational(&q).map_err(|_| OracleError::RadicandOverflow)?;
        out.push((coeffs, q));
    }
    Ok(out)
}

/// The Casimir operator of `sub` in representation `kind` acting on the
/// block of size `rep_block` (entries exactly rational: the per-vector
/// radicals √q_j appear squared only).
fn casimir_operator(
    alg: &MatrixLieAlgebra,
    kind: RepKind,
    sub: Subgroup,
    rep_block: usize,
) -> Result<RatMat, OracleError> {
    if alg.group.family != Family::RealHyperbolic {
        return Err(OracleError::UnsupportedFamily(format!(
            "Casimir cross-checks are implemented for the real hyperbolic models only, got {}",
            alg.group
        )));
    }
    let vectors = sub_basis(alg, sub);
    let dim_rep = match kind {
        RepKind::Defining => rep_block,
        RepKind::Sym2Traceless => (rep_block * (rep_block + 1)) / 2 - 1,
    };
    let mut omega = RatMat::zeros(dim_rep, dim_rep);
    for (coeffs, q) in orthogonalize(alg, &vectors)? {
        let mut full = vec![Rational::zero(); alg.dim];
        for (c, v) in coeffs.iter().zip(&vectors) {
            if c.is_zero() {
                continue;
            }
            for (slot, x) in full.iter_mut().zip(v) {
                *slot += &(c * x);
            }
        }
        let block = extract_block(&alg.from_coordinates(&full), rep_block)?;
        let rho = rep_matrix(kind, rep_block, &block)?;
        let inv_q = q.recip().expect("length is positive");
        omega = omega.add(&rho.matmul(&rho).scale(&inv_q));
    }
    Ok(omega)
}

/// Casimir scalar of the subalgebra acting in the given representation *of
/// that subalgebra* (block size n+1 for k, n for m). Errors with `NotScalar`
/// if the operator fails to be a multiple of the identity.
pub fn casimir_scalar(
    alg: &MatrixLieAlgebra,
    kind: RepKind,
    sub: Subgroup,
) -> Result<Rational, OracleError> {
    let s = block_size(alg, sub);
    let omega = casimir_operator(alg, kind, sub, s)?;
    if omega.nrows() == 0 {
        return Ok(Rational::zero());
    }
    let c = omega[(0, 0)].clone();
    match omega.scalar_deviation(&c) {
        None => Ok(c),
        Some((row, col)) => Err(OracleError::NotScalar { row, col }),
    }
}

/// Exact spectrum (eigenvalue, eigenspace dimension) of the Casimir of
/// `sub` acting on the representation `kind` built on the *maximal compact*
/// block. For `sub = CentralizerM` this is a reducible action and the
/// eigenvalues must reproduce the Casimir constants of the branching
/// decomposition; that comparison is the caller's business.
pub fn casimir_spectrum(
    alg: &MatrixLieAlgebra,
    kind: RepKind,
    sub: Subgroup,
) -> Result<Vec<(Rational, usize)>, OracleError> {
    let s = block_size(alg, Subgroup::MaximalCompact);
    let omega = casimir_operator(alg, kind, sub, s)?;
    let d = omega.nrows();
    if d == 0 {
        return Ok(Vec::new());
    }
    let poly = minimal_polynomial(&omega);
    let roots = rational_roots(&poly)?;
    let mut spectrum = Vec::new();
    let mut total = 0usize;
    for (root, _mult) in &roots {
        let mut shifted = omega.clone();
        for i in 0..d {
            shifted[(i, i)] -= root;
        }
        let dim = matrix::kernel_basis(&shifted).len();
        total += dim;
        spectrum.push((root.clone(), dim));
    }
    if total != d {
        return Err(OracleError::SpectrumFailure(format!(
            "eigenspaces span {total} of {d} dimensions; operator is not diagonalizable \
             over the rationals"
        )));
    }
    spectrum.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(spectrum)
}

/// Monic minimal polynomial of a rational matrix (ascending coefficients),
/// found as the first linear dependence among I, M, M², … in matrix space.
fn minimal_polynomial(m: &RatMat) -> Vec<Rational> {
    let d = m.nrows();
    let flat_len = d * d;
    let flatten = |x: &RatMat| -> Vec<Rational> {
        let mut v = Vec::with_capacity(flat_len);
        for i in 0..d {
            for j in 0..d {
                v.push(x[(i, j)].clone());
            }
        }
        v
    };
    let mut powers = vec![RatMat::identity(d)];
    loop {
        let k = powers.len();
        let next = powers[k - 1].matmul(m);
        // Try to write M^k = Σ_{j<k} c_j M^j.
        let mut system = RatMat::zeros(flat_len, k);
        for (j, p) in powers.iter().enumerate() {
            for (row, val) in flatten(p).into_iter().enumerate() {
                system[(row, j)] = val;
            }
        }
        if let Some(c) = matrix::solve(&system, &flatten(&next)) {
            let mut poly: Vec<Rational> = c.into_iter().map(|x| -&x).collect();
            poly.push(Rational::one());
            return poly;
        }
        powers.push(next);
        assert!(
            powers.len() <= d + 1,
            "minimal polynomial search exceeded the matrix dimension"
        );
    }
}

/// Positive divisors of |x|, via trial division. The factor bound is far
/// beyond anything the Casimir operators here produce; an unfactored
/// composite remainder can only lead to a missed root, which the final
/// dimension audit in `casimir_spectrum` converts into an honest error.
fn divisors(x: &BigInt) -> Vec<BigInt> {
    let mut m = x.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, factors: &mut Vec<(BigInt, u32)>| {
        if let Some(last) = factors.last_mut() {
            if last.0 == p {
                last.1 += 1;
                return;
            }
        }
        factors.push((p, 1));
    };
    let mut d = BigInt::from(2);
    let bound = BigInt::from(1_000_000u32);
    while &d * &d <= m && d <= bound {
        while (&m % &d).is_zero() {
            push(d.clone(), &mut factors);
            m /= &d;
        }
        d += 1;
    }
    if !m.is_one() {
        push(m, &mut factors);
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for old in &divs {
            let mut acc = old.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = &acc * &p;
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    divs
}

fn eval_poly(poly: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in poly.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Divides a monic-led polynomial by (x − root) in place; the remainder is
/// known to vanish when `root` is a root.
fn deflate(poly: &[Rational], root: &Rational) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); poly.len() - 1];
    let mut carry = Rational::zero();
    for i in (0..poly.len() - 1).rev() {
        carry = &poly[i + 1] + &(&carry * root);
        out[i] = carry.clone();
    }
    out
}

/// All rational roots of a polynomial with rational coefficients, with
/// multiplicities; errors unless the polynomial splits completely over ℚ.
fn rational_roots(poly: &[Rational]) -> Result<Vec<(Rational, usize)>, OracleError> {
    let mut work: Vec<Rational> = poly.to_vec();
    while work.last().is_some_and(Rational::is_zero) {
        work.pop();
    }
    assert!(work.len() > 1, "minimal polynomial has positive degree");
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    let record = |r: Rational, roots: &mut Vec<(Rational, usize)>| {
        if let Some(entry) = roots.iter_mut().find(|(x, _)| *x == r) {
            entry.1 += 1;
        } else {
            roots.push((r, 1));
        }
    };

    // Roots at zero.
    while work.first().is_some_and(Rational::is_zero) {
        record(Rational::zero(), &mut roots);
        work.remove(0);
        if work.len() == 1 {
            return Ok(roots);
        }
    }

    // Clear denominators to apply the rational root theorem.
    let mut denom_lcm = BigInt::one();
    for c in &work {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let scale = Rational::from_big(denom_lcm, BigInt::one()).expect("nonzero denominator");
    let ints: Vec<BigInt> = work
        .iter()
        .map(|c| {
            let scaled = c * &scale;
            debug_assert!(scaled.is_integer());
            scaled.numer().clone()
        })
        .collect();
    let lead_divs = divisors(ints.last().expect("nonempty"));
    let const_divs = divisors(&ints[0]);

    let mut candidates: Vec<Rational> = Vec::new();
    for p in &const_divs {
        for q in &lead_divs {
            let r = Rational::from_big(p.clone(), q.clone()).expect("divisors are positive");
            candidates.push(r.clone());
            candidates.push(-&r);
        }
    }
    candidates.sort();
    candidates.dedup();

    'outer: while work.len() > 1 {
        for cand in &candidates {
            if eval_poly(&work, cand).is_zero() {
                record(cand.clone(), &mut roots);
                work = deflate(&work, cand);
                continue 'outer;
            }
        }
        return Err(OracleError::SpectrumFailure(format!(
            "polynomial of degree {} has no further rational roots",
            work.len() - 1
        )));
    }
    Ok(roots)
}
