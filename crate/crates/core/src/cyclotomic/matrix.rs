//! Dense matrices over a cyclotomic field.
//!
//! All entries of a [`CycMatrix`] share one ambient conductor; mixing
//! conductors is a programming error caught by assertions, and deliberate
//! field extensions go through [`CycMatrix::embed`].  The ambient conductor
//! carried by the pipeline is always a multiple of 4 (so that `i` and hence
//! the reference complex structure exist) and of every generator order in
//! play.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::BigRational;

use super::num::CycNum;

/// A `rows × cols` matrix over `ℚ(ζ_N)`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    entries: Vec<CycNum>,
}

impl CycMatrix {
    /// The zero matrix.
    pub fn zero(rows: usize, cols: usize, conductor: u32) -> Self {
        CycMatrix {
            rows,
            cols,
            conductor,
            entries: vec![CycNum::zero(conductor); rows * cols],
        }
    }

    /// The identity matrix.
    pub fn identity(n: usize, conductor: u32) -> Self {
        let mut m = Self::zero(n, n, conductor);
        for j in 0..n {
            m.set(j, j, CycNum::one(conductor));
        }
        m
    }

    /// Build from a closure producing each entry.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        conductor: u32,
        mut f: impl FnMut(usize, usize) -> CycNum,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let e = f(r, c);
                assert_eq!(e.conductor(), conductor, "entry conductor mismatch");
                entries.push(e);
            }
        }
        CycMatrix {
            rows,
            cols,
            conductor,
            entries,
        }
    }

    /// Square diagonal matrix with the given entries.
    pub fn diagonal(diag: &[CycNum], conductor: u32) -> Self {
        let n = diag.len();
        let mut m = Self::zero(n, n, conductor);
        for (j, d) in diag.iter().enumerate() {
            m.set(j, j, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, r: usize, c: usize) -> &CycNum {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycNum) {
        assert_eq!(v.conductor(), self.conductor, "entry conductor mismatch");
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycNum::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entrywise complex conjugation.
    pub fn conj(&self) -> Self {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            entries: self.entries.iter().map(CycNum::conj).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.conductor, |r, c| {
            self.get(c, r).clone()
        })
    }

    /// Conjugate transpose `A*`.
    pub fn adjoint(&self) -> Self {
        self.conj().transpose()
    }

    /// Multiply every entry by a cyclotomic scalar.
    pub fn scale(&self, s: &CycNum) -> Self {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    /// Multiply every entry by a rational scalar.
    pub fn scale_rational(&self, q: &BigRational) -> Self {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            entries: self.entries.iter().map(|e| e.scale(q)).collect(),
        }
    }

    /// Re-express all entries in `ℚ(ζ_M)`, `N | M`.
    pub fn embed(&self, conductor: u32) -> crate::Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.embed(conductor))
            .collect::<crate::Result<Vec<_>>>()?;
        Ok(CycMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor,
            entries,
        })
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> CycNum {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut t = CycNum::zero(self.conductor);
        for j in 0..self.rows {
            t = &t + self.get(j, j);
        }
        t
    }

    /// `A A* = I` checked exactly.
    pub fn is_unitary(&self) -> bool {
        self.is_square()
            && self * &self.adjoint() == Self::identity(self.rows, self.conductor)
    }

    /// `Aᵗ = A` checked exactly.
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && self.transpose() == *self
    }

    /// `A* = -A` checked exactly.
    pub fn is_skew_hermitian(&self) -> bool {
        self.is_square() && self.adjoint() == -self
    }

    /// True iff all off-diagonal entries vanish.
    pub fn is_diagonal(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        (0..self.rows)
            .all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    /// Block-diagonal matrix `diag(a, b)`.
    pub fn block_diagonal(a: &CycMatrix, b: &CycMatrix) -> Self {
        assert_eq!(a.conductor, b.conductor, "block conductor mismatch");
        let rows = a.rows + b.rows;
        let cols = a.cols + b.cols;
        let mut m = Self::zero(rows, cols, a.conductor);
        for r in 0..a.rows {
            for c in 0..a.cols {
                m.set(r, c, a.get(r, c).clone());
            }
        }
        for r in 0..b.rows {
            for c in 0..b.cols {
                m.set(a.rows + r, a.cols + c, b.get(r, c).clone());
            }
        }
        m
    }

    /// Assemble a 2×2 block matrix `[[a, b], [c, d]]` of equal-sized square
    /// blocks.
    pub fn from_blocks(a: &CycMatrix, b: &CycMatrix, c: &CycMatrix, d: &CycMatrix) -> Self {
        let g = a.rows;
        for m in [a, b, c, d] {
            assert!(m.rows == g && m.cols == g, "blocks must be square of equal size");
            assert_eq!(m.conductor, a.conductor, "block conductor mismatch");
        }
        Self::from_fn(2 * g, 2 * g, a.conductor, |r, cidx| {
            let (br, r0) = (r / g, r % g);
            let (bc, c0) = (cidx / g, cidx % g);
            match (br, bc) {
                (0, 0) => a.get(r0, c0).clone(),
                (0, 1) => b.get(r0, c0).clone(),
                (1, 0) => c.get(r0, c0).clone(),
                _ => d.get(r0, c0).clone(),
            }
        })
    }

    /// Extract the square block with top-left corner `(r0, c0)` and size `n`.
    pub fn block(&self, r0: usize, c0: usize, n: usize) -> Self {
        Self::from_fn(n, n, self.conductor, |r, c| {
            self.get(r0 + r, c0 + c).clone()
        })
    }
}

impl Add for &CycMatrix {
    type Output = CycMatrix;
    fn add(self, rhs: &CycMatrix) -> CycMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix shape mismatch in addition"
        );
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CycMatrix {
    type Output = CycMatrix;
    fn sub(self, rhs: &CycMatrix) -> CycMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix shape mismatch in subtraction"
        );
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CycMatrix {
    type Output = CycMatrix;
    fn neg(self) -> CycMatrix {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

impl Mul for &CycMatrix {
    type Output = CycMatrix;
    fn mul(self, rhs: &CycMatrix) -> CycMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch in product");
        assert_eq!(self.conductor, rhs.conductor, "conductor mismatch in product");
        CycMatrix::from_fn(self.rows, rhs.cols, self.conductor, |r, c| {
            let mut acc = CycNum::zero(self.conductor);
            for k in 0..self.cols {
                if !self.get(r, k).is_zero() && !rhs.get(k, c).is_zero() {
                    acc = &acc + &(self.get(r, k) * rhs.get(k, c));
                }
            }
            acc
        })
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycMatrix({}×{} @ ζ_{})", self.rows, self.cols, self.conductor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(n: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(n, k)
    }

    #[test]
    fn diagonal_root_of_unity_matrix_is_unitary() {
        let a = CycMatrix::diagonal(&[zeta(4, 3), zeta(4, 3), zeta(4, 1)], 4);
        assert!(a.is_unitary());
        assert!(a.is_diagonal());
        assert!(!a.is_symmetric() || a.transpose() == a);
    }

    #[test]
    fn rational_rotation_is_unitary() {
        // [[3/5, 4/5], [-4/5, 3/5]] is an exact rational unitary.
        let q = |n: i64, d: i64| {
            CycNum::from_rational(4, num::BigRational::new(n.into(), d.into()))
        };
        let u = CycMatrix::from_fn(2, 2, 4, |r, c| match (r, c) {
            (0, 0) => q(3, 5),
            (0, 1) => q(4, 5),
            (1, 0) => q(-4, 5),
            _ => q(3, 5),
        });
        assert!(u.is_unitary());
        assert!(!u.is_diagonal());
    }

    #[test]
    fn adjoint_reverses_products() {
        let a = CycMatrix::diagonal(&[zeta(12, 1), zeta(12, 5)], 12);
        let b = CycMatrix::from_fn(2, 2, 12, |r, c| zeta(12, (r + 2 * c) as i64));
        assert_eq!((&a * &b).adjoint(), &b.adjoint() * &a.adjoint());
    }

    #[test]
    fn block_assembly_round_trips() {
        let a = CycMatrix::identity(2, 4);
        let b = CycMatrix::diagonal(&[zeta(4, 1), zeta(4, 3)], 4);
        let m = CycMatrix::from_blocks(&a, &b, &b, &a);
        assert_eq!(m.block(0, 0, 2), a);
        assert_eq!(m.block(0, 2, 2), b);
        assert_eq!(m.block(2, 0, 2), b);
        assert_eq!(m.block(2, 2, 2), a);
        let d = CycMatrix::block_diagonal(&a, &b);
        assert_eq!(d.block(0, 0, 2), a);
        assert_eq!(d.block(2, 2, 2), b);
        assert!(d.block(0, 2, 2).is_zero());
    }

    #[test]
    fn trace_is_linear() {
        let a = CycMatrix::diagonal(&[zeta(12, 1), zeta(12, 5)], 12);
        let b = CycMatrix::identity(2, 12);
        assert_eq!((&a + &b).trace(), &a.trace() + &b.trace());
    }
}
