//! Exact elements of the cyclotomic field `ℚ(ζ_N)`.
//!
//! A [`CycNum`] stores canonical coordinates with respect to the power basis
//! `1, ζ, …, ζ^{φ(N)-1}` of `ℚ(ζ_N)`, i.e. the coefficient vector of the
//! unique representative of degree `< φ(N)` modulo the cyclotomic polynomial
//! `Φ_N`.  Equality of field elements is therefore coordinate equality, and
//! "is real" (fixed by `ζ ↦ ζ^{-1}`) and "is rational" are decidable by
//! inspection.
//!
//! The embedding `ζ_N ↦ e^{2πi/N}` is fixed once and for all; complex
//! conjugation is the field automorphism `ζ ↦ ζ^{N-1}` and the sign of a
//! conjugation-fixed element refers to its value under that embedding.  Signs
//! are certified exactly: rational elements are compared directly, and
//! irrational real elements are boxed by interval Taylor evaluation of
//! `Σ c_k cos(2πk/N)` with rational endpoints.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational};
use num_traits::{One, Signed, Zero};

use super::poly::{cyclotomic_polynomial, euler_phi, rem_monic_int};
use crate::error::{Error, Result};

/// An element of `ℚ(ζ_N)` in canonical power-basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    conductor: u32,
    /// Coordinates with respect to `1, ζ, …, ζ^{φ(N)-1}`; always exactly
    /// `φ(N)` entries.
    coeffs: Vec<BigRational>,
}

/// Canonicalise a raw exponent-coefficient expansion `Σ raw[k]·ζ_N^k` (any
/// length, exponents taken modulo `N`) into power-basis coordinates.
///
/// This is the single entry point through which every arithmetic operation
/// restores canonical form.
pub fn cyc_reduce(conductor: u32, raw: &[BigRational]) -> Result<CycNum> {
    if conductor == 0 {
        return Err(Error::InvalidConductor("conductor must be positive".into()));
    }
    let n = conductor as usize;
    let mut folded = vec![BigRational::zero(); n];
    for (k, c) in raw.iter().enumerate() {
        if !c.is_zero() {
            folded[k % n] += c;
        }
    }
    let phi = cyclotomic_polynomial(conductor);
    rem_monic_int(&mut folded, &phi);
    folded.resize(euler_phi(conductor) as usize, BigRational::zero());
    Ok(CycNum {
        conductor,
        coeffs: folded,
    })
}

impl CycNum {
    /// The zero of `ℚ(ζ_N)`.
    pub fn zero(conductor: u32) -> Self {
        assert!(conductor > 0, "conductor must be positive");
        CycNum {
            conductor,
            coeffs: vec![BigRational::zero(); euler_phi(conductor) as usize],
        }
    }

    /// The one of `ℚ(ζ_N)`.
    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    /// A rational number viewed inside `ℚ(ζ_N)`.
    pub fn from_rational(conductor: u32, q: BigRational) -> Self {
        let mut v = Self::zero(conductor);
        v.coeffs[0] = q;
        v
    }

    /// An integer viewed inside `ℚ(ζ_N)`.
    pub fn from_integer(conductor: u32, k: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(BigInt::from(k)))
    }

    /// The root of unity `ζ_N^k`.
    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        let n = conductor as i64;
        let k = k.rem_euclid(n) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        cyc_reduce(conductor, &raw).expect("positive conductor")
    }

    /// The imaginary unit `i = ζ_N^{N/4}`; requires `4 | N`.
    pub fn imaginary_unit(conductor: u32) -> Result<Self> {
        if conductor % 4 != 0 {
            return Err(Error::InvalidConductor(format!(
                "i requires 4 | N, got N = {conductor}"
            )));
        }
        Ok(Self::root_of_unity(conductor, (conductor / 4) as i64))
    }

    /// The conductor `N` of the ambient field `ℚ(ζ_N)`.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Canonical power-basis coordinates (`φ(N)` rationals).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// True iff the element lies in `ℚ` (only the constant coordinate is
    /// populated).
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The element as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// True iff the element is fixed by complex conjugation, i.e. lies in the
    /// maximal real subfield `ℚ(ζ_N)⁺`.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    fn assert_same_conductor(&self, other: &Self, op: &str) {
        assert_eq!(
            self.conductor, other.conductor,
            "{op} of cyclotomic numbers with conductors {} and {}; embed first",
            self.conductor, other.conductor
        );
    }

    /// Image under the field automorphism `ζ ↦ ζ^{N-1} = ζ^{-1}` (complex
    /// conjugation for the fixed embedding).
    pub fn conj(&self) -> Self {
        let n = self.conductor as usize;
        let mut raw = vec![BigRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(n - k) % n] += c;
            }
        }
        cyc_reduce(self.conductor, &raw).expect("positive conductor")
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^j`; requires
    /// `gcd(j, N) = 1`.
    pub fn galois(&self, j: u32) -> Result<Self> {
        if num_integer::gcd(j as u64, self.conductor as u64) != 1 {
            return Err(Error::InvalidConductor(format!(
                "ζ ↦ ζ^{j} is not an automorphism of ℚ(ζ_{})",
                self.conductor
            )));
        }
        let n = self.conductor as usize;
        let mut raw = vec![BigRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(k * j as usize) % n] += c;
            }
        }
        cyc_reduce(self.conductor, &raw)
    }

    /// The rational trace-average `(1/φ(N)) Σ_σ σ(x)` over the full Galois
    /// group.  For rational `x` this is `x` itself; in general it is the
    /// orthogonal projection of `x` onto `ℚ`.
    pub fn rational_average(&self) -> BigRational {
        let n = self.conductor;
        let mut acc = CycNum::zero(n);
        let mut count = 0u32;
        for j in 1..=n {
            if num_integer::gcd(j as u64, n as u64) == 1 {
                acc = &acc + &self.galois(j).expect("unit exponent");
                count += 1;
            }
        }
        let avg = acc
            .as_rational()
            .expect("Galois-symmetrised element is rational");
        avg / BigRational::from_integer(BigInt::from(count))
    }

    /// Re-express the element in the larger field `ℚ(ζ_M)`, `N | M`.
    pub fn embed(&self, conductor: u32) -> Result<Self> {
        if conductor == 0 || conductor % self.conductor != 0 {
            return Err(Error::ConductorMismatch(format!(
                "cannot embed ℚ(ζ_{}) into ℚ(ζ_{})",
                self.conductor, conductor
            )));
        }
        let stride = (conductor / self.conductor) as usize;
        let mut raw = vec![BigRational::zero(); conductor as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[k * stride] += c;
            }
        }
        cyc_reduce(conductor, &raw)
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, q: &BigRational) -> Self {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse, found by solving the `φ(N) × φ(N)` rational
    /// system `x · y = 1` in power-basis coordinates.
    ///
    /// # Panics
    ///
    /// Panics when `self` is zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero cyclotomic number");
        let phi = self.coeffs.len();
        // Column j of the multiplication matrix is x · ζ^j in coordinates.
        let mut cols = Vec::with_capacity(phi);
        for j in 0..phi {
            let mut raw = vec![BigRational::zero(); phi + j];
            for (k, c) in self.coeffs.iter().enumerate() {
                raw[k + j] = c.clone();
            }
            cols.push(
                cyc_reduce(self.conductor, &raw)
                    .expect("positive conductor")
                    .coeffs,
            );
        }
        // Solve M y = e0 by Gaussian elimination on the augmented system.
        let mut aug = vec![vec![BigRational::zero(); phi + 1]; phi];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..phi {
                aug[i][j] = col[i].clone();
            }
        }
        aug[0][phi] = BigRational::one();
        let mut row = 0;
        for col in 0..phi {
            let pivot = (row..phi).find(|&r| !aug[r][col].is_zero());
            let Some(p) = pivot else { continue };
            aug.swap(row, p);
            let inv_pivot = aug[row][col].recip();
            for c in col..=phi {
                aug[row][c] = &aug[row][c] * &inv_pivot;
            }
            for r in 0..phi {
                if r != row && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    for c in col..=phi {
                        let t = &factor * &aug[row][c];
                        aug[r][c] -= t;
                    }
                }
            }
            row += 1;
        }
        assert_eq!(row, phi, "multiplication matrix of a unit is invertible");
        let coeffs = aug.into_iter().map(|r| r[phi].clone()).collect();
        CycNum {
            conductor: self.conductor,
            coeffs,
        }
    }

    /// Integer power, with negative exponents through [`CycNum::inv`].
    ///
    /// # Panics
    ///
    /// Panics on `0^k` with `k < 0`.
    pub fn pow(&self, k: i64) -> Self {
        let mut base = if k < 0 { self.inv() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycNum::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Real part `(x + x̄)/2`, an element of the real subfield.
    pub fn re(&self) -> Self {
        (self + &self.conj()).scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    /// Imaginary part `(x - x̄)/(2i)`, an element of the real subfield;
    /// requires `4 | N` so that `i` is available.
    pub fn im(&self) -> Result<Self> {
        let minus_i = Self::imaginary_unit(self.conductor)?.conj();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        Ok((&(self - &self.conj()) * &minus_i).scale(&half))
    }

    /// Certified sign of a conjugation-fixed element under the embedding
    /// `ζ_N ↦ e^{2πi/N}`.
    ///
    /// Rational elements are compared exactly; irrational real elements are
    /// evaluated as `Σ c_k cos(2πk/N)` with exact rational interval
    /// enclosures.  Fails with [`Error::SignUndecided`] only if the enclosure
    /// straddles zero, and with [`Error::Internal`] if the element is not
    /// real.
    pub fn sign(&self) -> Result<Ordering> {
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        if let Some(q) = self.as_rational() {
            return Ok(q.cmp(&BigRational::zero()));
        }
        if !self.is_real() {
            return Err(Error::Internal(
                "sign requested for a non-real cyclotomic number".into(),
            ));
        }
        let (lo, hi) = self.real_enclosure();
        if lo.is_positive() {
            Ok(Ordering::Greater)
        } else if hi.is_negative() {
            Ok(Ordering::Less)
        } else {
            Err(Error::SignUndecided(format!(
                "enclosure [{lo}, {hi}] straddles zero"
            )))
        }
    }

    /// Exact rational enclosure of the real value `Σ c_k cos(2πk/N)`.
    fn real_enclosure(&self) -> (BigRational, BigRational) {
        // π to 40 decimal digits; the true value lies strictly between.
        let pow10_40 = BigInt::from(10u32).pow(40);
        let pi_lo = BigRational::new(
            "31415926535897932384626433832795028841971".parse().unwrap(),
            pow10_40.clone(),
        );
        let pi_hi = BigRational::new(
            "31415926535897932384626433832795028841972".parse().unwrap(),
            pow10_40,
        );
        let pi_mid = (&pi_lo + &pi_hi) / BigRational::from_integer(BigInt::from(2));
        let pi_rad = (&pi_hi - &pi_lo) / BigRational::from_integer(BigInt::from(2));
        let n = BigRational::from_integer(BigInt::from(self.conductor));
        let two = BigRational::from_integer(BigInt::from(2));

        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let kq = BigRational::from_integer(BigInt::from(k as u32));
            // Angle 2πk/N: Taylor-evaluate cos at the rational midpoint and
            // absorb the π uncertainty through the Lipschitz bound |cos'| ≤ 1.
            let mid = &two * &pi_mid * &kq / &n;
            let slack = &two * &pi_rad * &kq / &n;
            let (mut c_lo, mut c_hi) = cos_enclosure(&mid);
            c_lo -= &slack;
            c_hi += &slack;
            if c.is_positive() {
                lo += c * &c_lo;
                hi += c * &c_hi;
            } else {
                lo += c * &c_hi;
                hi += c * &c_lo;
            }
        }
        (lo, hi)
    }
}

/// Enclosure of `cos(x)` for rational `0 ≤ x < 2π` by an alternating Taylor
/// sum with a geometric tail bound.
fn cos_enclosure(x: &BigRational) -> (BigRational, BigRational) {
    const TERMS: u32 = 30;
    let x2 = x * x;
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for j in 1..TERMS {
        let denom = BigRational::from_integer(BigInt::from((2 * j - 1) * (2 * j)));
        term = -(&term * &x2) / denom;
        sum += &term;
    }
    // |tail| ≤ |term_TERMS| / (1 - x²/((2T+1)(2T+2))), valid since x < 2π
    // keeps the ratio below one for TERMS = 30.
    let denom = BigRational::from_integer(BigInt::from((2 * TERMS - 1) * (2 * TERMS)));
    let last = (&term * &x2 / denom).abs();
    let ratio = &x2
        / BigRational::from_integer(BigInt::from((2 * TERMS + 1) * (2 * TERMS + 2)));
    let bound = &last / (BigRational::one() - ratio);
    (&sum - &bound, &sum + &bound)
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.assert_same_conductor(rhs, "addition");
        CycNum {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.assert_same_conductor(rhs, "subtraction");
        CycNum {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.assert_same_conductor(rhs, "multiplication");
        let mut raw = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        cyc_reduce(self.conductor, &raw).expect("positive conductor")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one();
            if k == 0 {
                write!(f, "{mag}")?;
            } else if unit_coeff {
                write!(f, "z{}", self.conductor)?;
            } else {
                write!(f, "{mag}*z{}", self.conductor)?;
            }
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({} @ ζ_{})", self, self.conductor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn reduction_folds_high_powers() {
        // ζ_4² = -1 and ζ_4³ = -ζ_4.
        let z = CycNum::root_of_unity(4, 2);
        assert_eq!(z, CycNum::from_integer(4, -1));
        let z3 = CycNum::root_of_unity(4, 3);
        assert_eq!(z3, (&CycNum::root_of_unity(4, 1)).neg());
        // Sum of all primitive fifth roots plus one is zero: 1+ζ+ζ²+ζ³+ζ⁴ = 0.
        let mut s = CycNum::one(5);
        for k in 1..5 {
            s = &s + &CycNum::root_of_unity(5, k);
        }
        assert!(s.is_zero());
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism() {
        let x = &CycNum::root_of_unity(12, 5) + &CycNum::from_rational(12, q(3, 2));
        let y = &CycNum::root_of_unity(12, 7) - &CycNum::root_of_unity(12, 2);
        assert_eq!(x.conj().conj(), x);
        assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
    }

    #[test]
    fn norm_of_root_of_unity_is_real_and_one() {
        let z = CycNum::root_of_unity(20, 3);
        let norm = &z * &z.conj();
        assert!(norm.is_one());
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        for n in [4u32, 12, 20] {
            let i = CycNum::imaginary_unit(n).unwrap();
            assert_eq!(&i * &i, CycNum::from_integer(n, -1));
            assert!(!i.is_real());
            assert!(i.im().unwrap().is_one());
            assert!(i.re().is_zero());
        }
        assert!(CycNum::imaginary_unit(6).is_err());
    }

    #[test]
    fn inverse_and_power() {
        let x = &CycNum::root_of_unity(12, 5) + &CycNum::from_integer(12, 2);
        let inv = x.inv();
        assert!((&x * &inv).is_one());
        assert_eq!(x.pow(-3), inv.pow(3));
        assert_eq!(CycNum::root_of_unity(12, 5).pow(12), CycNum::one(12));
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let x = CycNum::root_of_unity(3, 1);
        let y = &CycNum::root_of_unity(3, 2) + &CycNum::one(3);
        let (xe, ye) = (x.embed(12).unwrap(), y.embed(12).unwrap());
        assert_eq!((&x * &y).embed(12).unwrap(), &xe * &ye);
        assert_eq!((&x + &y).embed(12).unwrap(), &xe + &ye);
        // ζ_3 ↦ ζ_12⁴.
        assert_eq!(xe, CycNum::root_of_unity(12, 4));
        assert!(x.embed(7).is_err());
    }

    #[test]
    fn real_detection_and_real_subfield() {
        let golden = &CycNum::root_of_unity(5, 1) + &CycNum::root_of_unity(5, 4);
        assert!(golden.is_real());
        assert!(!golden.is_rational());
        assert!(!CycNum::root_of_unity(5, 1).is_real());
        // 2cos(2π/5) = (√5-1)/2 > 0 and 2cos(4π/5) < 0.
        assert_eq!(golden.sign().unwrap(), Ordering::Greater);
        let c2 = &CycNum::root_of_unity(5, 2) + &CycNum::root_of_unity(5, 3);
        assert_eq!(c2.sign().unwrap(), Ordering::Less);
        assert_eq!(CycNum::zero(5).sign().unwrap(), Ordering::Equal);
        assert_eq!(
            CycNum::from_rational(5, q(-7, 3)).sign().unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn sign_of_tiny_but_nonzero_real_values() {
        // (ζ_{12} + ζ_{12}^{-1}) - ζ_{12}^3·ζ_{12}^{-3}·… exercise an
        // irrational value close to an integer: 2cos(π/6) - 1 = √3 - 1 > 0.
        let c = &(&CycNum::root_of_unity(12, 1) + &CycNum::root_of_unity(12, 11))
            - &CycNum::one(12);
        assert_eq!(c.sign().unwrap(), Ordering::Greater);
        // √3 - 2 < 0.
        let d = &(&CycNum::root_of_unity(12, 1) + &CycNum::root_of_unity(12, 11))
            - &CycNum::from_integer(12, 2);
        assert_eq!(d.sign().unwrap(), Ordering::Less);
    }

    #[test]
    fn rational_average_projects_to_qq() {
        let x = &CycNum::from_rational(12, q(5, 3)) + &CycNum::root_of_unity(12, 1);
        // The averages of the primitive 12th roots cancel: Σ σ(ζ) = μ(12) = 0.
        assert_eq!(x.rational_average(), q(5, 3));
    }

    #[test]
    fn galois_orbit_fixes_rationals() {
        let x = CycNum::from_rational(20, q(7, 2));
        for j in [1u32, 3, 7, 9, 11, 13, 17, 19] {
            assert_eq!(x.galois(j).unwrap(), x);
        }
        assert!(CycNum::root_of_unity(20, 1).galois(5).is_err());
    }

    #[test]
    fn display_is_readable() {
        let x = &(&CycNum::root_of_unity(12, 3) - &CycNum::one(12))
            + &CycNum::root_of_unity(12, 3);
        assert_eq!(x.to_string(), "2*z12^3 - 1");
    }
}
