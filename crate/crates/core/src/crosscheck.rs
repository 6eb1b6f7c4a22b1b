//! Floating-point twin of the exact backend.
//!
//! Every dimension the exact pipeline produces (kernel dimensions, span
//! ranks) can be recomputed numerically: embed `ζ_N ↦ e^{2πi/N}` into `f64`,
//! form singular values by a Jacobi eigenvalue iteration on `AᵗA`, and count
//! those above a threshold.  When the [`Backend::Crosscheck`] backend is
//! selected the two answers are compared and any disagreement is a hard
//! failure — the numerical side never *replaces* an exact answer.
//!
//! Floating point is also used to *propose* (never to accept) splitting
//! eigenvalues for the module decomposition, through the Durand–Kerner root
//! finder and rational reconstruction below; every proposal is certified by
//! an exact kernel computation before use.

use num::{BigInt, BigRational};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::{kernel_over_real_subfield, CycMatrix, CycNum, RationalKernelBasis};
use crate::error::{Error, Result};

/// Which arithmetic backend pipeline computations use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Exact arithmetic only.
    Exact,
    /// Exact arithmetic, with every produced dimension re-derived in `f64`
    /// by singular-value thresholding; disagreement is a hard error.
    Crosscheck,
}

/// Singular values below `RANK_TOL · max(1, σ_max)` count as zero.
///
/// Exact kernels give exactly zero singular values in the float twin up to
/// roundoff (≲ 1e-13 for the matrix sizes here), while genuinely nonzero
/// singular values of the systems this crate builds stay above ~1e-3, so the
/// threshold sits comfortably between the two regimes.
pub const RANK_TOL: f64 = 1e-8;

/// Maximum drift allowed between exact cyclotomic arithmetic embedded into
/// `f64` and the same arithmetic done natively in `f64`.
pub const EMBED_TOL: f64 = 1e-9;

/// Numerical image of a cyclotomic number under `ζ_N ↦ e^{2πi/N}`.
pub fn embed_c64(x: &CycNum) -> Complex64 {
    let n = x.conductor() as f64;
    let mut acc = Complex64::zero();
    for (k, c) in x.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let angle = 2.0 * std::f64::consts::PI * (k as f64) / n;
        acc += Complex64::from_polar(1.0, angle) * c.to_f64().expect("rational fits in f64");
    }
    acc
}

/// Numerical image of a real-subfield matrix as a real `f64` matrix.
///
/// # Panics
///
/// Debug-asserts that every entry really is conjugation-fixed (imaginary
/// part at roundoff level).
pub fn embed_real_matrix(m: &CycMatrix) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0; m.cols()]; m.rows()];
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let z = embed_c64(m.get(r, c));
            debug_assert!(
                z.im.abs() < 1e-9,
                "embedding a non-real entry as real: {z}"
            );
            out[r][c] = z.re;
        }
    }
    out
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    for _sweep in 0..60 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Singular values of a rectangular real matrix (descending).
pub fn singular_values(a: &[Vec<f64>]) -> Vec<f64> {
    if a.is_empty() || a[0].is_empty() {
        return Vec::new();
    }
    let (rows, cols) = (a.len(), a[0].len());
    // Work with the smaller Gram matrix of AᵗA / AAᵗ.
    let m = rows.min(cols);
    let mut gram = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..m {
            let mut acc = 0.0;
            if cols <= rows {
                for k in 0..rows {
                    acc += a[k][i] * a[k][j];
                }
            } else {
                for k in 0..cols {
                    acc += a[i][k] * a[j][k];
                }
            }
            gram[i][j] = acc;
        }
    }
    let mut sv: Vec<f64> = jacobi_eigenvalues(gram)
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sv
}

/// Numerical rank by counting singular values above
/// `RANK_TOL · max(1, σ_max)`.
pub fn numeric_rank(a: &[Vec<f64>]) -> usize {
    let sv = singular_values(a);
    let smax = sv.first().copied().unwrap_or(0.0);
    let cut = RANK_TOL * smax.max(1.0);
    sv.iter().filter(|&&s| s > cut).count()
}

/// Numerical kernel dimension of a real-subfield system.
pub fn numeric_kernel_dim(system: &CycMatrix) -> usize {
    system.cols() - numeric_rank(&embed_real_matrix(system))
}

/// Exact kernel of a real-subfield system, optionally re-derived
/// numerically.  With [`Backend::Crosscheck`] a dimension disagreement
/// returns [`Error::CrosscheckMismatch`] tagged with `context`.
pub fn checked_kernel(
    system: &CycMatrix,
    backend: Backend,
    context: &str,
) -> Result<RationalKernelBasis> {
    let exact = kernel_over_real_subfield(system)?;
    if backend == Backend::Crosscheck {
        let numeric = numeric_kernel_dim(system);
        if numeric != exact.dimension {
            return Err(Error::CrosscheckMismatch {
                context: context.to_string(),
                exact: exact.dimension,
                numeric,
            });
        }
    }
    Ok(exact)
}

/// Verify that an exactly-computed dimension agrees with the numerical rank
/// of the coordinate rows that realise it.
pub fn check_span_dimension(
    rows: &[Vec<CycNum>],
    cols: usize,
    conductor: u32,
    exact_dim: usize,
    backend: Backend,
    context: &str,
) -> Result<()> {
    if backend != Backend::Crosscheck {
        return Ok(());
    }
    let mat = crate::cyclotomic::linalg::rows_to_matrix(rows, cols, conductor);
    let numeric = numeric_rank(&embed_real_matrix(&mat));
    if numeric != exact_dim {
        return Err(Error::CrosscheckMismatch {
            context: context.to_string(),
            exact: exact_dim,
            numeric,
        });
    }
    Ok(())
}

/// Roots of a complex polynomial (little-endian coefficients, leading
/// coefficient nonzero) by Durand–Kerner iteration.  Proposal quality only —
/// callers must certify anything they use.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().map_or(false, |z| z.norm() < 1e-300) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let lead = *c.last().unwrap();
    for z in c.iter_mut() {
        *z /= lead;
    }
    let n = c.len() - 1;
    let eval = |x: Complex64| {
        let mut acc = Complex64::zero();
        for k in (0..=n).rev() {
            acc = acc * x + c[k];
        }
        acc
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..400 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-280 {
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-13 {
            break;
        }
    }
    roots
}

/// Best rational approximation to `x` with denominator at most `max_den`,
/// by continued fractions.
pub fn approx_rational(x: f64, max_den: u64) -> BigRational {
    if !x.is_finite() {
        return BigRational::zero();
    }
    let negative = x < 0.0;
    let mut x = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..40 {
        let a = x.floor();
        if a > 1e17 {
            break;
        }
        let ai = a as i128;
        let (p2, q2) = (ai * p1 + p0, ai * q1 + q0);
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = x - a;
        if frac < 1e-12 {
            break;
        }
        x = 1.0 / frac;
    }
    let mut r = BigRational::new(BigInt::from(p1), BigInt::from(q1.max(1)));
    if negative {
        r = -r;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn embedding_of_roots_of_unity_lies_on_the_circle() {
        for n in [3u32, 4, 5, 12, 20] {
            for k in 0..n {
                let z = embed_c64(&CycNum::root_of_unity(n, k as i64));
                assert!((z.norm() - 1.0).abs() < EMBED_TOL);
            }
        }
    }

    #[test]
    fn numeric_rank_of_exact_kernel_system_matches() {
        // Row 1 = √3 · row 0 forces numerical rank 1 on a 2×3 system.
        let sqrt3 = &CycNum::root_of_unity(12, 1) + &CycNum::root_of_unity(12, 11);
        let mut sys = CycMatrix::zero(2, 3, 12);
        sys.set(0, 0, CycNum::one(12));
        sys.set(0, 1, CycNum::from_integer(12, -2));
        sys.set(1, 0, sqrt3.clone());
        sys.set(1, 1, -&sqrt3.scale(&BigRational::from_integer(2.into())));
        assert_eq!(numeric_rank(&embed_real_matrix(&sys)), 1);
        assert_eq!(numeric_kernel_dim(&sys), 2);
        let checked = checked_kernel(&sys, Backend::Crosscheck, "test").unwrap();
        assert_eq!(checked.dimension, 2);
    }

    #[test]
    fn durand_kerner_finds_quadratic_roots() {
        // (x - 2)(x + 3) = x² + x - 6
        let roots = poly_roots(&[
            Complex64::new(-6.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
        ]);
        let mut re: Vec<f64> = roots.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] + 3.0).abs() < 1e-9 && (re[1] - 2.0).abs() < 1e-9);
        for z in roots {
            assert!(z.im.abs() < 1e-9);
        }
    }

    #[test]
    fn rational_reconstruction_recovers_small_fractions() {
        for (num, den) in [(1i64, 3u64), (-7, 2), (5, 12), (0, 1), (22, 7)] {
            let x = num as f64 / den as f64;
            let r = approx_rational(x, 1000);
            assert_eq!(r, BigRational::new(BigInt::from(num), BigInt::from(den)));
        }
    }

    proptest! {
        /// Exact arithmetic and f64 arithmetic agree after embedding.
        #[test]
        fn embedded_products_agree_with_f64(
            a in -4i64..=4, b in -4i64..=4, c in -4i64..=4, d in -4i64..=4,
            ka in 0i64..12, kb in 0i64..12
        ) {
            let x = &CycNum::root_of_unity(12, ka).scale(&BigRational::from_integer(a.into()))
                + &CycNum::from_integer(12, b);
            let y = &CycNum::root_of_unity(12, kb).scale(&BigRational::from_integer(c.into()))
                + &CycNum::from_integer(12, d);
            let exact = embed_c64(&(&x * &y));
            let float = embed_c64(&x) * embed_c64(&y);
            prop_assert!((exact - float).norm() < EMBED_TOL);
            let exact_sum = embed_c64(&(&x + &y));
            prop_assert!((exact_sum - (embed_c64(&x) + embed_c64(&y))).norm() < EMBED_TOL);
            let exact_conj = embed_c64(&x.conj());
            prop_assert!((exact_conj - embed_c64(&x).conj()).norm() < EMBED_TOL);
        }
    }
}
