//! Dense univariate polynomial helpers and cyclotomic polynomials.
//!
//! Everything in this file is internal plumbing for [`super::num::CycNum`]:
//! little-endian coefficient vectors, exact division, and the cyclotomic
//! polynomials `Φ_N` computed by the recursion
//!
//! ```text
//! x^N - 1 = ∏_{d | N} Φ_d(x)   ⟹   Φ_N = (x^N - 1) / ∏_{d | N, d < N} Φ_d
//! ```
//!
//! with exact integer arithmetic.  Computed `Φ_N` are memoised because
//! reduction modulo `Φ_N` runs inside every multiplication.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::{BigInt, BigRational};
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

/// Euler totient, by trial-division factorisation (conductors are small).
pub fn euler_phi(n: u32) -> u32 {
    assert!(n > 0, "euler_phi(0)");
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u32) -> Vec<u32> {
    assert!(n > 0, "divisors(0)");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Drop trailing zero coefficients in place.
fn trim_int(p: &mut Vec<BigInt>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

/// Product of two integer polynomials.
fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exact quotient of integer polynomials; panics if the division leaves a
/// remainder (it never does for the cyclotomic recursion).
fn div_exact_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    trim_int(&mut rem);
    let mut den = den.to_vec();
    trim_int(&mut den);
    let dlead = den.last().expect("division by zero polynomial").clone();
    assert!(rem.len() >= den.len(), "non-exact polynomial division");
    let mut quot = vec![BigInt::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() {
        let shift = rem.len() - den.len();
        let coeff = rem.last().unwrap() / &dlead;
        assert_eq!(
            &coeff * &dlead,
            rem.last().unwrap().clone(),
            "non-exact polynomial division"
        );
        quot[shift] = coeff.clone();
        for (i, d) in den.iter().enumerate() {
            let t = &coeff * d;
            rem[shift + i] -= t;
        }
        trim_int(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    assert!(rem.is_empty(), "non-exact polynomial division");
    quot
}

/// `x^n - 1` as an integer polynomial.
fn x_pow_minus_one(n: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    p
}

static CYCLOTOMIC_CACHE: Lazy<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The `N`-th cyclotomic polynomial `Φ_N`, monic of degree `φ(N)`,
/// little-endian integer coefficients.  Memoised.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n > 0, "cyclotomic_polynomial(0)");
    if let Some(hit) = CYCLOTOMIC_CACHE.lock().unwrap().get(&n) {
        return Arc::clone(hit);
    }
    let poly = if n == 1 {
        vec![-BigInt::one(), BigInt::one()]
    } else {
        let mut den = vec![BigInt::one()];
        for d in divisors(n) {
            if d < n {
                den = mul_int(&den, &cyclotomic_polynomial(d));
            }
        }
        div_exact_int(&x_pow_minus_one(n), &den)
    };
    assert_eq!(poly.len() as u32, euler_phi(n) + 1);
    let arc = Arc::new(poly);
    CYCLOTOMIC_CACHE
        .lock()
        .unwrap()
        .insert(n, Arc::clone(&arc));
    arc
}

/// Reduce a rational polynomial in place modulo a monic integer polynomial.
pub fn rem_monic_int(p: &mut Vec<BigRational>, modulus: &[BigInt]) {
    let deg_mod = modulus.len() - 1;
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    while p.len() > deg_mod {
        let lead = p.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = p.len() - deg_mod;
        for (i, m) in modulus.iter().take(deg_mod).enumerate() {
            let t = &lead * BigRational::from_integer(m.clone());
            p[shift + i] -= t;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn coeffs_i64(n: u32) -> Vec<i64> {
        cyclotomic_polynomial(n)
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(coeffs_i64(1), vec![-1, 1]);
        assert_eq!(coeffs_i64(2), vec![1, 1]);
        assert_eq!(coeffs_i64(3), vec![1, 1, 1]);
        assert_eq!(coeffs_i64(4), vec![1, 0, 1]);
        assert_eq!(coeffs_i64(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(coeffs_i64(6), vec![1, -1, 1]);
        assert_eq!(coeffs_i64(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(coeffs_i64(20), vec![1, 0, -1, 0, 1, 0, -1, 0, 1]);
    }

    #[test]
    fn product_over_divisors_recovers_x_pow_minus_one() {
        for n in [1u32, 2, 6, 12, 20, 24] {
            let mut prod = vec![BigInt::one()];
            for d in divisors(n) {
                prod = mul_int(&prod, &cyclotomic_polynomial(d));
            }
            assert_eq!(prod, x_pow_minus_one(n), "Φ-product failed at n = {n}");
        }
    }

    #[test]
    fn totient_and_divisors() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(20), 8);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
