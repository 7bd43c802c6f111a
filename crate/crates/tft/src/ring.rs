//! Exact modular arithmetic over a runtime-configured odd prime.
//!
//! Every element is kept as a canonical residue in `[0, P)`; there is no
//! lazy reduction and no Montgomery form. Operation counting is the
//! verification currency of this crate, so the arithmetic stays simple and
//! branch-predictable instead of fast.

use crate::{Error, Result};

/// A residue in `Z/PZ`, always canonical (`0 <= value < P`).
///
/// The element does not carry its modulus; all arithmetic goes through the
/// [`PrimeField`] it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u64);

impl FieldElement {
    /// The additive identity of every prime field.
    pub const ZERO: FieldElement = FieldElement(0);
    /// The multiplicative identity of every prime field (valid since P > 2).
    pub const ONE: FieldElement = FieldElement(1);

    /// Canonical residue as an integer.
    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An odd prime modulus together with the precomputed inverse of two.
///
/// Transform sizes `n = 2^p` additionally require `n | P - 1` so that
/// elements of order `n` exist; that check happens at plan construction,
/// not here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    modulus: u64,
    two_inv: FieldElement,
}

impl PrimeField {
    /// Default modulus `15 * 2^27 + 1`, a 31-bit prime whose multiplicative
    /// group has 2-adic valuation 27, so transforms up to `n = 2^27` work.
    pub const DEFAULT_MODULUS: u64 = 2_013_265_921;

    /// Builds the field, verifying that `modulus` is an odd prime.
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus <= 2 || modulus.is_multiple_of(2) || !is_prime_u64(modulus) {
            return Err(Error::NotOddPrime(modulus));
        }
        // (P + 1) / 2 doubles to P + 1 = 1 mod P.
        let two_inv = FieldElement(modulus.div_ceil(2));
        Ok(PrimeField { modulus, two_inv })
    }

    /// The field with [`Self::DEFAULT_MODULUS`].
    pub fn default_field() -> Self {
        Self::new(Self::DEFAULT_MODULUS).expect("default modulus is prime")
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.modulus
    }

    /// Precomputed `2^{-1}` used by [`Self::half`].
    #[inline]
    pub fn two_inv(self) -> FieldElement {
        self.two_inv
    }

    /// Largest power of two dividing `P - 1`, i.e. the largest supported
    /// transform size.
    pub fn max_transform_size(self) -> usize {
        1usize << (self.modulus - 1).trailing_zeros().min(63)
    }

    /// Embeds an integer as a canonical residue.
    #[inline]
    pub fn element(self, v: u64) -> FieldElement {
        FieldElement(v % self.modulus)
    }

    #[inline]
    pub fn add(self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a.0 + b.0; // both < P < 2^63, no overflow
        FieldElement(if s >= self.modulus {
            s - self.modulus
        } else {
            s
        })
    }

    #[inline]
    pub fn sub(self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(if a.0 >= b.0 {
            a.0 - b.0
        } else {
            a.0 + self.modulus - b.0
        })
    }

    #[inline]
    pub fn mul(self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement((u128::from(a.0) * u128::from(b.0) % u128::from(self.modulus)) as u64)
    }

    #[inline]
    pub fn neg(self, a: FieldElement) -> FieldElement {
        FieldElement(if a.0 == 0 { 0 } else { self.modulus - a.0 })
    }

    /// `a / 2`, via the precomputed inverse of two. In the transform's cost
    /// model this is a shift, not a counted multiplication.
    #[inline]
    pub fn half(self, a: FieldElement) -> FieldElement {
        self.mul(a, self.two_inv)
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat: `a^(P-2)`.
    pub fn inv(self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.modulus - 2))
    }
}

/// Smallest element of order exactly `n` (a power of two), i.e. the first
/// residue `w` in increasing order with `w^(n/2) = -1`.
///
/// The search does not scan residues directly: it derives one order-`n`
/// element from the smallest candidate base, then takes the minimum over
/// that element's odd powers, which enumerate all order-`n` elements.
/// The result is identical to an increasing scan but costs O(n)
/// multiplications instead of O(P/n).
pub fn find_primitive_root(field: PrimeField, n: usize) -> Result<FieldElement> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::BadTransformSize(n));
    }
    let p = field.modulus();
    if !(p - 1).is_multiple_of(n as u64) {
        return Err(Error::NoRootOfOrder { n, modulus: p });
    }
    let minus_one = field.element(p - 1);
    let exp = (p - 1) / n as u64;

    // Any candidate whose (P-1)/n power squares down to -1 works; a
    // quadratic non-residue always does, so the loop is short.
    let mut seed = FieldElement::ZERO;
    for g in 2..p {
        let w = field.pow(field.element(g), exp);
        if field.pow(w, n as u64 / 2) == minus_one {
            seed = w;
            break;
        }
    }
    debug_assert!(!seed.is_zero(), "prime field must contain non-residues");

    // Order-n elements are exactly the odd powers of any one of them.
    let step = field.mul(seed, seed);
    let mut cur = seed;
    let mut best = seed;
    for _ in 1..n / 2 {
        cur = field.mul(cur, step);
        if cur < best {
            best = cur;
        }
    }
    Ok(best)
}

/// Deterministic Miller-Rabin, valid for all u64 with this base set.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    let mul = |a: u64, b: u64| (u128::from(a) * u128::from(b) % u128::from(n)) as u64;
    let pow = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        base %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
