//! Exact linear algebra over a cyclotomic field.
//!
//! Row reduction uses exact field arithmetic with first-nonzero pivoting, so
//! results are canonical: the reduced row echelon form of a matrix is unique,
//! kernels get the standard basis in which each free column carries a `1`,
//! and every dimension is an exact integer — no thresholds anywhere.
//!
//! The pipeline solves its linear systems over the *maximal real subfield*
//! `F = ℚ(ζ_N)⁺`: all system entries are conjugation-fixed, and since `F` is
//! closed under the field operations used by elimination, the computed
//! kernel bases stay inside `F` automatically.  Dimensions over `F` equal
//! real dimensions of the corresponding solution spaces.

use super::matrix::CycMatrix;
use super::num::CycNum;
use crate::error::{Error, Result};

/// A kernel basis over the maximal real subfield: `dimension` vectors whose
/// entries are conjugation-fixed cyclotomic numbers (each of which carries
/// its rational power-basis coordinates).
#[derive(Clone, Debug)]
pub struct RationalKernelBasis {
    pub dimension: usize,
    pub vectors: Vec<Vec<CycNum>>,
}

/// Reduced row echelon form together with the pivot column indices.
pub fn rref(mat: &CycMatrix) -> (CycMatrix, Vec<usize>) {
    let mut m = mat.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..cols {
                let (a, b) = (m.get(row, c).clone(), m.get(p, c).clone());
                m.set(row, c, b);
                m.set(p, c, a);
            }
        }
        let inv = m.get(row, col).inv();
        for c in col..cols {
            let v = m.get(row, c) * &inv;
            m.set(row, c, v);
        }
        for r in 0..rows {
            if r != row && !m.get(r, col).is_zero() {
                let factor = m.get(r, col).clone();
                for c in col..cols {
                    let v = m.get(r, c) - &(&factor * m.get(row, c));
                    m.set(r, c, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

/// Rank of a matrix, exactly.
pub fn rank(mat: &CycMatrix) -> usize {
    rref(mat).1.len()
}

/// Canonical kernel basis of `mat · x = 0`: one vector per free column, with
/// a `1` in that free coordinate.
pub fn kernel(mat: &CycMatrix) -> Vec<Vec<CycNum>> {
    let (r, pivots) = rref(mat);
    let cols = mat.cols();
    let conductor = mat.conductor();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![CycNum::zero(conductor); cols];
        v[free] = CycNum::one(conductor);
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(i, free);
        }
        basis.push(v);
    }
    basis
}

/// Solve a homogeneous system whose coefficients lie in the maximal real
/// subfield `ℚ(ζ_N)⁺`.
///
/// The number of unknowns is the column count of `system`.  Fails with
/// [`Error::NotRealCoefficient`] if any entry moves under conjugation; the
/// returned basis vectors are conjugation-fixed and echelon-canonical, and
/// `dimension` is the solution dimension over the real subfield (equal to
/// the real dimension of the solution space).
pub fn kernel_over_real_subfield(system: &CycMatrix) -> Result<RationalKernelBasis> {
    for r in 0..system.rows() {
        for c in 0..system.cols() {
            if !system.get(r, c).is_real() {
                return Err(Error::NotRealCoefficient { row: r, col: c });
            }
        }
    }
    let vectors = kernel(system);
    debug_assert!(vectors
        .iter()
        .all(|v| v.iter().all(CycNum::is_real)));
    Ok(RationalKernelBasis {
        dimension: vectors.len(),
        vectors,
    })
}

/// Express `target` in the row space of an already-reduced basis.
///
/// `reduced` must come from [`rref`]; returns the coefficient of each basis
/// row, or `None` when `target` lies outside the span.
pub fn express_in_rows(
    target: &[CycNum],
    reduced: &CycMatrix,
    pivots: &[usize],
) -> Option<Vec<CycNum>> {
    assert_eq!(target.len(), reduced.cols(), "coordinate length mismatch");
    let mut residual: Vec<CycNum> = target.to_vec();
    let mut coeffs = Vec::with_capacity(pivots.len());
    for (i, &p) in pivots.iter().enumerate() {
        let c = residual[p].clone();
        if !c.is_zero() {
            for k in 0..residual.len() {
                let t = &c * reduced.get(i, k);
                residual[k] = &residual[k] - &t;
            }
        }
        coeffs.push(c);
    }
    if residual.iter().all(CycNum::is_zero) {
        Some(coeffs)
    } else {
        None
    }
}

/// Stack coordinate row vectors into a matrix.
pub fn rows_to_matrix(rows: &[Vec<CycNum>], cols: usize, conductor: u32) -> CycMatrix {
    CycMatrix::from_fn(rows.len(), cols, conductor, |r, c| rows[r][c].clone())
}

/// Exact determinant by fraction-free-less Gaussian elimination over the
/// field (row swaps tracked by sign).
pub fn determinant(mat: &CycMatrix) -> CycNum {
    assert!(mat.is_square(), "determinant of a non-square matrix");
    let n = mat.rows();
    let conductor = mat.conductor();
    let mut m = mat.clone();
    let mut det = CycNum::one(conductor);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
            return CycNum::zero(conductor);
        };
        if p != col {
            for c in 0..n {
                let (a, b) = (m.get(col, c).clone(), m.get(p, c).clone());
                m.set(col, c, b);
                m.set(p, c, a);
            }
            det = -&det;
        }
        let pivot = m.get(col, col).clone();
        det = &det * &pivot;
        let inv = pivot.inv();
        for r in (col + 1)..n {
            if m.get(r, col).is_zero() {
                continue;
            }
            let factor = &m.get(r, col).clone() * &inv;
            for c in col..n {
                let v = m.get(r, c) - &(&factor * m.get(col, c));
                m.set(r, c, v);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{BigInt, BigRational};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> CycNum {
        CycNum::from_rational(12, BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn zero_system_has_full_kernel() {
        let sys = CycMatrix::zero(3, 4, 12);
        let basis = kernel_over_real_subfield(&sys).unwrap();
        assert_eq!(basis.dimension, 4);
    }

    #[test]
    fn single_difference_equation() {
        // x - y = 0 over two unknowns: one-dimensional kernel (1, 1).
        let mut sys = CycMatrix::zero(1, 2, 12);
        sys.set(0, 0, CycNum::one(12));
        sys.set(0, 1, CycNum::from_integer(12, -1));
        let basis = kernel_over_real_subfield(&sys).unwrap();
        assert_eq!(basis.dimension, 1);
        assert_eq!(basis.vectors[0][0], basis.vectors[0][1]);
        assert!(!basis.vectors[0][0].is_zero());
    }

    #[test]
    fn non_real_coefficient_is_rejected() {
        let mut sys = CycMatrix::zero(1, 2, 12);
        sys.set(0, 0, CycNum::root_of_unity(12, 3)); // i is not real
        let err = kernel_over_real_subfield(&sys).unwrap_err();
        assert!(matches!(err, Error::NotRealCoefficient { row: 0, col: 0 }));
    }

    #[test]
    fn kernel_vectors_annihilate_the_system() {
        // System with real-subfield (irrational) coefficients: 2cos(2π/12) = √3.
        let sqrt3 = &CycNum::root_of_unity(12, 1) + &CycNum::root_of_unity(12, 11);
        let mut sys = CycMatrix::zero(2, 3, 12);
        sys.set(0, 0, sqrt3.clone());
        sys.set(0, 1, q(-3, 1));
        sys.set(0, 2, CycNum::zero(12));
        sys.set(1, 0, q(1, 2));
        sys.set(1, 1, -&(sqrt3.scale(&BigRational::new(1.into(), 2.into()))));
        sys.set(1, 2, CycNum::zero(12));
        // Row 1 is a scalar multiple of row 0 (√3·x = 3y ⟺ x = √3 y), so the
        // kernel is two-dimensional.
        let basis = kernel_over_real_subfield(&sys).unwrap();
        assert_eq!(basis.dimension, 2);
        for v in &basis.vectors {
            for r in 0..2 {
                let mut acc = CycNum::zero(12);
                for c in 0..3 {
                    acc = &acc + &(sys.get(r, c) * &v[c]);
                }
                assert!(acc.is_zero(), "kernel vector fails equation {r}");
            }
        }
    }

    #[test]
    fn determinant_of_known_matrices() {
        assert!(determinant(&CycMatrix::identity(3, 12)).is_one());
        // det [[1, 2], [3, 4]] = -2.
        let m = rows_to_matrix(
            &[vec![q(1, 1), q(2, 1)], vec![q(3, 1), q(4, 1)]],
            2,
            12,
        );
        assert_eq!(determinant(&m), q(-2, 1));
        // Singular matrix.
        let s = rows_to_matrix(
            &[vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]],
            2,
            12,
        );
        assert!(determinant(&s).is_zero());
        // Multiplicativity with an irrational entry.
        let sqrt3 = &CycNum::root_of_unity(12, 1) + &CycNum::root_of_unity(12, 11);
        let a = rows_to_matrix(
            &[vec![sqrt3.clone(), q(1, 1)], vec![q(0, 1), q(2, 1)]],
            2,
            12,
        );
        let prod = &a * &m;
        assert_eq!(determinant(&prod), &determinant(&a) * &determinant(&m));
    }

    #[test]
    fn express_in_rows_detects_membership() {
        let rows = vec![
            vec![q(1, 1), q(0, 1), q(2, 1)],
            vec![q(0, 1), q(1, 1), q(-1, 1)],
        ];
        let mat = rows_to_matrix(&rows, 3, 12);
        let (red, piv) = rref(&mat);
        let inside = vec![q(3, 1), q(2, 1), q(4, 1)]; // 3·r0 + 2·r1
        let coeffs = express_in_rows(&inside, &red, &piv).unwrap();
        assert_eq!(coeffs, vec![q(3, 1), q(2, 1)]);
        let outside = vec![q(0, 1), q(0, 1), q(1, 1)];
        assert!(express_in_rows(&outside, &red, &piv).is_none());
    }

    proptest! {
        /// Rank-nullity on random small rational matrices, plus exactness of
        /// the kernel: every returned vector solves the system.
        #[test]
        fn rank_plus_nullity_is_unknown_count(
            entries in proptest::collection::vec(-5i64..=5, 12)
        ) {
            let mat = CycMatrix::from_fn(3, 4, 12, |r, c| {
                CycNum::from_integer(12, entries[r * 4 + c])
            });
            let rk = rank(&mat);
            let ker = kernel(&mat);
            prop_assert_eq!(rk + ker.len(), 4);
            for v in &ker {
                for r in 0..3 {
                    let mut acc = CycNum::zero(12);
                    for c in 0..4 {
                        acc = &acc + &(mat.get(r, c) * &v[c]);
                    }
                    prop_assert!(acc.is_zero());
                }
            }
        }
    }
}
