//! Numeric opposite Iwasawa factorization g = k · exp(t·H₀) · n⁻ and the
//! horospherical height Φ(g) = e^{−t} built on it.
//!
//! The trick is a light-cone change of coordinates: in the ordering
//! (v, x₁, …, x_n, u) with u = (x_{n+1} + x_{n+2})/√2 and
//! v = (x_{n+1} − x_{n+2})/√2, the subgroup A acts diagonally and N⁻
//! becomes unit *upper* triangular, so the factorization is exactly a QR
//! decomposition with a positive-diagonal R. The real family works over
//! f64, the complex family over Complex<f64> after undoing the
//! realification; both report a reconstruction residual and fail loudly
//! when the K-factor misses its block structure.

use super::algebra::MatrixLieAlgebra;
use super::OracleError;
use crate::rootdata::Family;
use nalgebra::{Complex, DMatrix};
use rand::Rng;

/// Numeric tolerance for the structural checks on the K factor and on the
/// de-realification of complex-family inputs.
const K_BLOCK_TOL: f64 = 1e-8;
/// How precisely the input must preserve the defining form.
const FORM_TOL: f64 = 1e-6;

/// Result of the opposite Iwasawa factorization. Matrices are in the same
/// real model as [`MatrixLieAlgebra::basis`] (realified for the complex
/// family); `t` is the coordinate of the a-part along the unit coroot H₀,
/// and `residual` is the sup-norm of g − k·exp(t·H₀)·n⁻.
#[derive(Clone, Debug)]
pub struct IwasawaFactors {
    pub k: DMatrix<f64>,
    pub t: f64,
    pub n_minus: DMatrix<f64>,
    pub residual: f64,
}

/// exp(s·X_boost): the rapidity-s boost in the (x_{n+1}, x_{n+2}) plane,
/// realified for the complex family.
pub fn exp_boost(alg: &MatrixLieAlgebra, s: f64) -> DMatrix<f64> {
    let nn = alg.block;
    let mut b = DMatrix::<f64>::identity(nn, nn);
    b[(nn - 2, nn - 2)] = s.cosh();
    b[(nn - 2, nn - 1)] = s.sinh();
    b[(nn - 1, nn - 2)] = s.sinh();
    b[(nn - 1, nn - 1)] = s.cosh();
    match alg.group.family {
        Family::RealHyperbolic => b,
        Family::ComplexHyperbolic => realify_parts(&b, &DMatrix::zeros(nn, nn)),
    }
}

/// exp(s·H₀) where H₀ = X_boost/√⟨X_boost, X_boost⟩.
pub fn exp_h0(alg: &MatrixLieAlgebra, s: f64) -> DMatrix<f64> {
    exp_boost(alg, s / alg.boost_norm_sq.to_f64().sqrt())
}

/// [[X, −Y], [Y, X]] from real and imaginary parts.
fn realify_parts(re: &DMatrix<f64>, im: &DMatrix<f64>) -> DMatrix<f64> {
    let n = re.nrows();
    let mut out = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = re[(i, j)];
            out[(n + i, n + j)] = re[(i, j)];
            out[(i, n + j)] = -im[(i, j)];
            out[(n + i, j)] = im[(i, j)];
        }
    }
    out
}

/// The orthogonal matrix P whose rows list the light-cone coordinates in
/// the order (v, x₁, …, x_n, u).
fn light_cone_transform(nn: usize) -> DMatrix<f64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut p = DMatrix::<f64>::zeros(nn, nn);
    p[(0, nn - 2)] = h;
    p[(0, nn - 1)] = -h;
    for i in 1..(nn - 1) {
        p[(i, i - 1)] = 1.0;
    }
    p[(nn - 1, nn - 2)] = h;
    p[(nn - 1, nn - 1)] = h;
    p
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

fn max_abs_c(m: &DMatrix<Complex<f64>>) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

fn diverged(residual: f64) -> OracleError {
    OracleError::FactorizationDiverged { residual }
}

/// Opposite Iwasawa factorization of a group element given in the matrix
/// model of `alg` (realified 2(n+2) × 2(n+2) for the complex family).
pub fn iwasawa_opposite(
    alg: &MatrixLieAlgebra,
    g: &DMatrix<f64>,
) -> Result<IwasawaFactors, OracleError> {
    if g.nrows() != alg.msize || g.ncols() != alg.msize || g.iter().any(|x| !x.is_finite()) {
        return Err(diverged(f64::INFINITY));
    }
    match alg.group.family {
        Family::RealHyperbolic => factor_real(alg, g),
        Family::ComplexHyperbolic => factor_complex(alg, g),
    }
}

/// Φ(g) = e^{−t} with t the H₀-coordinate of the a-part. Right translation
/// by exp(s·H₀) scales Φ by e^{−s}; right translation by N⁻ leaves it
/// fixed; Φ ≡ 1 on K.
pub fn phi(alg: &MatrixLieAlgebra, g: &DMatrix<f64>) -> Result<f64, OracleError> {
    Ok((-iwasawa_opposite(alg, g)?.t).exp())
}

/// exp of a nilpotent matrix by its (terminating) power series.
fn exp_nilpotent(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let mut acc = DMatrix::<f64>::identity(n, n);
    let mut term = DMatrix::<f64>::identity(n, n);
    for k in 1..=(n + 1) {
        term = (&term * m) / (k as f64);
        if max_abs(&term) < 1e-300 {
            break;
        }
        acc += &term;
    }
    acc
}

/// A random element of N⁻, generated from the graded basis with bounded
/// coefficients. Deterministic for a seeded generator; used by the
/// self-test harness and the test suites.
pub fn random_n_minus<R: Rng>(alg: &MatrixLieAlgebra, rng: &mut R) -> DMatrix<f64> {
    let mut y = DMatrix::<f64>::zeros(alg.msize, alg.msize);
    for v in alg
        .grading
        .g_minus_alpha
        .iter()
        .chain(alg.grading.g_minus_2alpha.iter())
    {
        let c: f64 = rng.gen_range(-0.8..0.8);
        y += alg.from_coordinates(v).to_f64() * c;
    }
    exp_nilpotent(&y)
}

/// A random element of K (embedded block-diagonally), per family: a special
/// orthogonal block for the real family, an S(U(n+1) × U(1)) block pair for
/// the complex one.
pub fn random_k<R: Rng>(alg: &MatrixLieAlgebra, rng: &mut R) -> DMatrix<f64> {
    let nn = alg.block;
    match alg.group.family {
        Family::RealHyperbolic => {
            let raw = DMatrix::<f64>::from_fn(nn - 1, nn - 1, |_, _| rng.gen_range(-1.0..1.0));
            let qr = raw.qr();
            let mut q = qr.q();
            let r = qr.r();
            for i in 0..(nn - 1) {
                if r[(i, i)] < 0.0 {
                    for rr in 0..(nn - 1) {
                        q[(rr, i)] = -q[(rr, i)];
                    }
                }
            }
            if q.determinant() < 0.0 {
                for rr in 0..(nn - 1) {
                    q[(rr, 0)] = -q[(rr, 0)];
                }
            }
            let mut k = DMatrix::<f64>::identity(nn, nn);
            k.view_mut((0, 0), (nn - 1, nn - 1)).copy_from(&q);
            k
        }
        Family::ComplexHyperbolic => {
            let raw = DMatrix::<Complex<f64>>::from_fn(nn - 1, nn - 1, |_, _| {
                Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let qr = raw.qr();
            let mut q = qr.q();
            let r = qr.r();
            for i in 0..(nn - 1) {
                let d = r[(i, i)] / r[(i, i)].norm();
                for rr in 0..(nn - 1) {
                    q[(rr, i)] *= d;
                }
            }
            // Balance the determinant into the corner U(1) slot.
            let det = q.determinant();
            let mut kc = DMatrix::<Complex<f64>>::identity(nn, nn);
            kc.view_mut((0, 0), (nn - 1, nn - 1)).copy_from(&q);
            kc[(nn - 1, nn - 1)] = det.conj() / det.norm();
            realify_parts(&kc.map(|z| z.re), &kc.map(|z| z.im))
        }
    }
}

fn factor_real(alg: &MatrixLieAlgebra, g: &DMatrix<f64>) -> Result<IwasawaFactors, OracleError> {
    let nn = alg.block;
    // The input must preserve diag(1, …, 1, −1).
    let mut j = DMatrix::<f64>::identity(nn, nn);
    j[(nn - 1, nn - 1)] = -1.0;
    let dev = max_abs(&(g.transpose() * &j * g - &j));
    if dev > FORM_TOL {
        return Err(diverged(dev));
    }

    let p = light_cone_transform(nn);
    let m = &p * g * p.transpose();
    let qr = m.qr();
    let mut q = qr.q();
    let mut r = qr.r();
    for i in 0..nn {
        if r[(i, i)] < 0.0 {
            for c in 0..nn {
                r[(i, c)] = -r[(i, c)];
            }
            for rr in 0..nn {
                q[(rr, i)] = -q[(rr, i)];
            }
        }
        // Catches NaN as well as a degenerate (zero) pivot.
        if r[(i, i)].is_nan() || r[(i, i)] <= 0.0 {
            return Err(diverged(f64::INFINITY));
        }
    }

    let rapidity = r[(nn - 1, nn - 1)].ln();
    let k = p.transpose() * &q * &p;
    let an = p.transpose() * &r * &p;
    let n_minus = exp_boost(alg, -rapidity) * &an;

    // k must fix the last coordinate axis: that is the K-block gate.
    let mut block_dev = (k[(nn - 1, nn - 1)] - 1.0).abs();
    for i in 0..(nn - 1) {
        block_dev = block_dev.max(k[(i, nn - 1)].abs()).max(k[(nn - 1, i)].abs());
    }
    if block_dev > K_BLOCK_TOL {
        return Err(diverged(block_dev));
    }

    let residual = max_abs(&(g - &k * exp_boost(alg, rapidity) * &n_minus));
    if !residual.is_finite() {
        return Err(diverged(f64::INFINITY));
    }
    let t = rapidity * alg.boost_norm_sq.to_f64().sqrt();
    Ok(IwasawaFactors { k, t, n_minus, residual })
}

fn factor_complex(
    alg: &MatrixLieAlgebra,
    g: &DMatrix<f64>,
) -> Result<IwasawaFactors, OracleError> {
    let nn = alg.block;
    // Undo the realification, checking the block pattern [[X, −Y], [Y, X]].
    let mut dev: f64 = 0.0;
    for i in 0..nn {
        for j in 0..nn {
            dev = dev
                .max((g[(nn + i, nn + j)] - g[(i, j)]).abs())
                .max((g[(i, nn + j)] + g[(nn + i, j)]).abs());
        }
    }
    if dev > K_BLOCK_TOL {
        return Err(diverged(dev));
    }
    let gc = DMatrix::<Complex<f64>>::from_fn(nn, nn, |i, j| {
        Complex::new(g[(i, j)], g[(nn + i, j)])
    });

    // The complex form diag(1, …, 1, −1) must be preserved: g† J g = J.
    let jc = DMatrix::<Complex<f64>>::from_fn(nn, nn, |i, j| {
        if i == j {
            Complex::new(if i == nn - 1 { -1.0 } else { 1.0 }, 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    });
    let form_dev = max_abs_c(&(gc.adjoint() * &jc * &gc - &jc));
    if form_dev > FORM_TOL {
        return Err(diverged(form_dev));
    }

    let p = light_cone_transform(nn).map(|x| Complex::new(x, 0.0));
    let m = &p * &gc * p.transpose();
    let qr = m.qr();
    let mut q = qr.q();
    let mut r = qr.r();
    for i in 0..nn {
        let norm = r[(i, i)].norm();
        // Catches NaN as well as a degenerate (zero) pivot.
        if norm.is_nan() || norm <= 0.0 {
            return Err(diverged(f64::INFINITY));
        }
        let d = r[(i, i)] / norm;
        let dinv = d.conj();
        for c in 0..nn {
            r[(i, c)] *= dinv;
        }
        for rr in 0..nn {
            q[(rr, i)] *= d;
        }
    }

    let rapidity = r[(nn - 1, nn - 1)].re.ln();
    let kc = p.adjoint() * &q * &p;
    let anc = p.adjoint() * &r * &p;
    let boost_c = |s: f64| -> DMatrix<Complex<f64>> {
        let mut b = DMatrix::<Complex<f64>>::identity(nn, nn);
        b[(nn - 2, nn - 2)] = Complex::new(s.cosh(), 0.0);
        b[(nn - 2, nn - 1)] = Complex::new(s.sinh(), 0.0);
        b[(nn - 1, nn - 2)] = Complex::new(s.sinh(), 0.0);
        b[(nn - 1, nn - 1)] = Complex::new(s.cosh(), 0.0);
        b
    };
    let nc = boost_c(-rapidity) * &anc;

    // K = S(U(n+1) × U(1)) is block diagonal; a unit phase in the corner is
    // allowed, so only the off-block entries are gated.
    let mut block_dev: f64 = 0.0;
    for i in 0..(nn - 1) {
        block_dev = block_dev
            .max(kc[(i, nn - 1)].norm())
            .max(kc[(nn - 1, i)].norm());
    }
    if block_dev > K_BLOCK_TOL {
        return Err(diverged(block_dev));
    }

    let residual = max_abs_c(&(&gc - &kc * boost_c(rapidity) * &nc));
    if !residual.is_finite() {
        return Err(diverged(f64::INFINITY));
    }
    let split = |m: &DMatrix<Complex<f64>>| -> DMatrix<f64> {
        realify_parts(&m.map(|z| z.re), &m.map(|z| z.im))
    };
    let t = rapidity * alg.boost_norm_sq.to_f64().sqrt();
    Ok(IwasawaFactors { k: split(&kc), t, n_minus: split(&nc), residual })
}
