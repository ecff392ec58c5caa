use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use super::WeightDistribution;
use crate::error::{Error, Result};

/// Upper bound on the minimum distance of a self-dual code of length `n`.
pub fn extremal_bound(n: usize) -> Result<usize> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "self-dual codes need even length >= 2, got {n}"
        )));
    }
    let base = 4 * (n / 24);
    Ok(if n % 24 == 22 { base + 6 } else { base + 4 })
}

type Poly = Vec<BigInt>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_pow(a: &Poly, mut e: usize) -> Poly {
    let mut result = vec![BigInt::one()];
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = poly_mul(&base, &base);
        }
    }
    result
}

fn from_i64(coeffs: &[i64]) -> Poly {
    coeffs.iter().map(|&c| BigInt::from(c)).collect()
}

/// Weight enumerator of a putative extremal doubly-even self-dual code of length `n`.
///
/// Invariant theory pins the homogeneous enumerator to the span of
/// `g2^((n-24b)/8) · g3^b`, `b = 0..=n/24`, with `g2 = x^8 + 14x^4y^4 + y^8` and
/// `g3 = x^4y^4(x^4 - y^4)^4`. Setting `x = 1`, basis element `b` starts at
/// `y^{4b}` with coefficient 1, so requiring `A_0 = 1` and
/// `A_4 = ... = A_{4⌊n/24⌋} = 0` is a unit lower-triangular system that
/// forward substitution solves in exact integers.
pub fn extremal_type2_enumerator(n: usize) -> Result<WeightDistribution> {
    if n == 0 || !n.is_multiple_of(8) {
        return Err(Error::InvalidArgument(format!(
            "doubly-even self-dual codes need length divisible by 8, got {n}"
        )));
    }
    let mu = n / 24;
    let g2 = from_i64(&[1, 0, 0, 0, 14, 0, 0, 0, 1]);
    // y^4 (1 - y^4)^4 = y^4 - 4y^8 + 6y^12 - 4y^16 + y^20
    let mut g3 = vec![BigInt::zero(); 21];
    for (k, c) in [(4, 1), (8, -4), (12, 6), (16, -4), (20, 1)] {
        g3[k] = BigInt::from(c);
    }
    let basis: Vec<Poly> = (0..=mu)
        .map(|b| {
            let mut p = poly_mul(&poly_pow(&g2, (n - 24 * b) / 8), &poly_pow(&g3, b));
            p.resize(n + 1, BigInt::zero());
            p
        })
        .collect();

    let mut total = vec![BigInt::zero(); n + 1];
    for (b, poly) in basis.iter().enumerate() {
        let target = if b == 0 { BigInt::one() } else { BigInt::zero() };
        debug_assert!(poly[4 * b].is_one());
        let coeff = target - &total[4 * b];
        for (t, p) in total.iter_mut().zip(poly) {
            *t += &coeff * p;
        }
    }

    let counts = total
        .into_iter()
        .map(|c| match c.sign() {
            Sign::Minus => Err(Error::InvalidArgument(format!(
                "no extremal enumerator for length {n}: negative coefficient {c}"
            ))),
            _ => Ok(c.magnitude().clone()),
        })
        .collect::<Result<Vec<BigUint>>>()?;
    Ok(WeightDistribution::from_counts(counts))
}
