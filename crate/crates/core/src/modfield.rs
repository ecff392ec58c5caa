//! The algebra `P` of even-weight polynomials in `GF(2)[x]/(x^p - 1)`.
//!
//! Elements keep the length-`p` coefficient representation: coefficient `i`
//! of the polynomial is coordinate `i` of the underlying bit vector, which is
//! also how a `p`-cycle restriction of a codeword reads. The identity of `P`
//! is `e(x) = x + x^2 + ... + x^{p-1}`, not `1`. When the multiplicative order
//! of 2 modulo `p` is `p - 1`, `P` is the field `GF(2^{p-1})`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::util::is_prime;

/// Multiplicative order of 2 modulo the odd prime `p`.
pub fn mult_order_of_2(p: u64) -> Result<u64> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!(
            "order of 2 needs an odd prime, got {p}"
        )));
    }
    let mut acc = 2 % p;
    let mut s = 1;
    while acc != 1 {
        acc = acc * 2 % p;
        s += 1;
    }
    Ok(s)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PElement {
    p: usize,
    coeffs: BitVector,
}

impl PElement {
    /// Wraps a coefficient vector; rejects odd weight (not in `P`).
    pub fn new(coeffs: BitVector) -> Result<Self> {
        if coeffs.weight() % 2 == 1 {
            return Err(Error::InvalidArgument(format!(
                "odd-weight polynomial {coeffs} is not in P"
            )));
        }
        Ok(PElement {
            p: coeffs.len(),
            coeffs,
        })
    }

    /// The polynomial `Σ x^i` over the given exponents (reduced mod `p`).
    pub fn from_exponents(p: usize, exponents: &[usize]) -> Result<Self> {
        let mut v = BitVector::zeros(p);
        for &e in exponents {
            v.flip(e % p);
        }
        Self::new(v)
    }

    /// Uniform element of `P` from the given generator.
    pub fn random<R: Rng>(p: usize, rng: &mut R) -> Self {
        let mut v = BitVector::zeros(p);
        for i in 1..p {
            if rng.gen::<bool>() {
                v.set(i, true);
            }
        }
        if v.weight() % 2 == 1 {
            v.set(0, true);
        }
        PElement { p, coeffs: v }
    }

    pub fn zero(p: usize) -> Self {
        PElement {
            p,
            coeffs: BitVector::zeros(p),
        }
    }

    /// `e(x) = x + x^2 + ... + x^{p-1}`.
    pub fn identity(p: usize) -> Self {
        PElement {
            p,
            coeffs: BitVector::from_indices(p, 1..p),
        }
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn coeffs(&self) -> &BitVector {
        &self.coeffs
    }

    pub fn weight(&self) -> usize {
        self.coeffs.weight()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.p)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::InvalidArgument(format!(
                "elements of P for p = {} and p = {}",
                self.p, other.p
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(PElement {
            p: self.p,
            coeffs: self.coeffs.xor(&other.coeffs),
        })
    }

    /// Cyclic convolution modulo `x^p - 1`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let p = self.p;
        if p <= 64 {
            let a = self.coeffs.words()[0];
            let b = other.coeffs.words()[0];
            let mask = if p == 64 { !0 } else { (1u64 << p) - 1 };
            let mut acc = 0u64;
            let mut bits = a;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let rot = if i == 0 {
                    b
                } else {
                    ((b << i) | (b >> (p - i))) & mask
                };
                acc ^= rot;
            }
            return PElement {
                p,
                coeffs: BitVector::from_words(p, vec![acc]),
            };
        }
        let mut acc = BitVector::zeros(p);
        for i in self.coeffs.ones_iter() {
            acc.xor_assign(&other.coeffs.rotate(i));
        }
        PElement { p, coeffs: acc }
    }

    pub fn square(&self) -> Self {
        // Frobenius: coefficient i moves to 2i mod p
        self.substitute(2).expect("2 is a unit mod an odd prime")
    }

    /// Square-and-multiply; `a^0 = e(x)`.
    pub fn pow(&self, exponent: &BigUint) -> Self {
        let mut result = Self::identity(self.p);
        let bits = exponent.bits();
        for i in (0..bits).rev() {
            result = result.square();
            if exponent.bit(i) {
                result = result.mul_unchecked(self);
            }
        }
        result
    }

    pub fn pow_u64(&self, exponent: u64) -> Self {
        self.pow(&BigUint::from(exponent))
    }

    /// Substitution `x -> x^t`: coefficient `i` moves to `i·t mod p`.
    pub fn substitute(&self, t: usize) -> Result<Self> {
        if t.is_multiple_of(self.p) {
            return Err(Error::InvalidArgument(format!(
                "substitution x -> x^{t} is not invertible mod {}",
                self.p
            )));
        }
        let p = self.p;
        Ok(PElement {
            p,
            coeffs: BitVector::from_indices(p, self.coeffs.ones_iter().map(|i| i * t % p)),
        })
    }

    /// Multiplication by `x^t` (a cyclic shift of the coefficients).
    pub fn shift(&self, t: usize) -> Self {
        PElement {
            p: self.p,
            coeffs: self.coeffs.rotate(t % self.p),
        }
    }

    /// `a(x^{-1})`, the involution behind binary orthogonality of circulants.
    pub fn conjugate(&self) -> Self {
        self.substitute(self.p - 1).expect("p - 1 is a unit")
    }

    /// Multiplicative order in a field `P`.
    pub fn order(&self, field: &PField) -> Result<BigUint> {
        if self.p as u64 != field.p {
            return Err(Error::InvalidArgument("element and field disagree on p".into()));
        }
        if self.is_zero() {
            return Err(Error::InvalidArgument("zero has no multiplicative order".into()));
        }
        let mut order = field.group_order.clone();
        for (r, _) in &field.factorization {
            while (&order % r).is_zero() && self.pow(&(&order / r)).is_identity() {
                order /= r;
            }
        }
        if !self.pow(&order).is_identity() {
            return Err(Error::InvalidArgument("element is not a unit".into()));
        }
        Ok(order)
    }
}

impl fmt::Display for PElement {
    /// Polynomial notation, e.g. `1 + x + x^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .ones_iter()
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for PElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PElement(p={}, {})", self.p, self.coeffs)
    }
}

/// Known factorizations of `2^{p-1} - 1`, as (prime, multiplicity).
const FACTOR_TABLE: &[(u64, &[(u64, u32)])] = &[
    (3, &[(3, 1)]),
    (5, &[(3, 1), (5, 1)]),
    (7, &[(3, 2), (7, 1)]),
    (11, &[(3, 1), (11, 1), (31, 1)]),
    (13, &[(3, 2), (5, 1), (7, 1), (13, 1)]),
    (19, &[(3, 3), (7, 1), (19, 1), (73, 1)]),
    (23, &[(3, 1), (23, 1), (89, 1), (683, 1)]),
    (29, &[(3, 1), (5, 1), (29, 1), (43, 1), (113, 1), (127, 1)]),
    (
        59,
        &[(3, 1), (59, 1), (233, 1), (1103, 1), (2089, 1), (3_033_169, 1)],
    ),
];

/// Trial-division bound for primes missing from the table.
pub const TRIAL_DIVISION_BOUND: u64 = 1 << 22;

/// Factors `n` by trial division up to `bound`; errors if a cofactor
/// cannot be certified prime (it must be below `bound^2`).
pub fn factor_by_trial_division(n: &BigUint, bound: u64) -> Result<Vec<(BigUint, u32)>> {
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= bound && BigUint::from(d) * BigUint::from(d) <= rest {
        let bd = BigUint::from(d);
        let mut e = 0;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() {
        if BigUint::from(d) * BigUint::from(d) <= rest {
            return Err(Error::IncompleteFactorization(format!(
                "cofactor {rest} of {n} has no factor below {bound}"
            )));
        }
        out.push((rest, 1));
    }
    Ok(out)
}

/// Factorization of `2^{p-1} - 1`: from the table when available, else trial division.
pub fn factor_group_order(p: u64) -> Result<Vec<(BigUint, u32)>> {
    if let Some((_, f)) = FACTOR_TABLE.iter().find(|(q, _)| *q == p) {
        return Ok(f.iter().map(|&(r, e)| (BigUint::from(r), e)).collect());
    }
    let n = (BigUint::one() << (p - 1)) - BigUint::one();
    factor_by_trial_division(&n, TRIAL_DIVISION_BOUND)
}

/// Primes whose factorization is shipped in the table.
pub fn tabulated_primes() -> Vec<u64> {
    FACTOR_TABLE.iter().map(|(p, _)| *p).collect()
}

/// `P` as the field `GF(2^{p-1})`.
#[derive(Clone, Debug)]
pub struct PField {
    pub p: u64,
    pub s: u64,
    pub group_order: BigUint,
    pub factorization: Vec<(BigUint, u32)>,
}

impl PField {
    pub fn new(p: u64) -> Result<Self> {
        let s = mult_order_of_2(p)?;
        if s != p - 1 {
            return Err(Error::NotAField { p, s });
        }
        let group_order = (BigUint::one() << (p - 1)) - BigUint::one();
        let factorization = factor_group_order(p)?;
        let product = factorization
            .iter()
            .fold(BigUint::one(), |acc, (r, e)| acc * r.pow(*e));
        if product != group_order {
            return Err(Error::IncompleteFactorization(format!(
                "factors multiply to {product}, expected {group_order}"
            )));
        }
        Ok(PField {
            p,
            s,
            group_order,
            factorization,
        })
    }

    /// `q = 2^{(p-1)/2}`, the exponent of the hermitian form.
    pub fn q(&self) -> BigUint {
        BigUint::one() << ((self.p - 1) / 2)
    }

    pub fn is_primitive(&self, a: &PElement) -> bool {
        !a.is_zero()
            && a.pow(&self.group_order).is_identity()
            && self
                .factorization
                .iter()
                .all(|(r, _)| !a.pow(&(&self.group_order / r)).is_identity())
    }

    /// A generator of the multiplicative group, drawn from a seeded generator.
    pub fn find_primitive(&self, seed: u64) -> PElement {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let cand = PElement::random(self.p as usize, &mut rng);
            if self.is_primitive(&cand) {
                return cand;
            }
        }
    }

    /// `(2^{p-1} - 1) / gcd(m, 2^{p-1} - 1)`: the order of `α^m` for primitive `α`.
    pub fn power_order(&self, m: &BigUint) -> BigUint {
        &self.group_order / m.gcd(&self.group_order)
    }
}

/// `Σ u_i · v_i^q` over `P`.
pub fn hermitian_ip(u: &[PElement], v: &[PElement], q: &BigUint) -> Result<PElement> {
    inner_product(u, v, |x| x.pow(q))
}

/// `Σ u_i · v_i(x^{-1})`; equals [`hermitian_ip`] with `q = 2^{(p-1)/2}` when
/// `P` is a field, and is the form that governs binary duality for every odd `p`.
pub fn conjugate_ip(u: &[PElement], v: &[PElement]) -> Result<PElement> {
    inner_product(u, v, PElement::conjugate)
}

fn inner_product<F: Fn(&PElement) -> PElement>(
    u: &[PElement],
    v: &[PElement],
    twist: F,
) -> Result<PElement> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "tuples of length {} and {}",
            u.len(),
            v.len()
        )));
    }
    let Some(p) = u.first().map(PElement::p) else {
        return Err(Error::InvalidArgument("empty tuples carry no p".into()));
    };
    u.iter()
        .zip(v)
        .try_fold(PElement::zero(p), |acc, (a, b)| acc.add(&a.mul(&twist(b))?))
}

/// Converts a small `BigUint` to `u64` (panics if it does not fit).
pub fn to_u64(n: &BigUint) -> u64 {
    n.to_u64().expect("value fits in u64")
}
