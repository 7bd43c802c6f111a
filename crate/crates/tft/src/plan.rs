//! Bit-reversal arithmetic and the precomputed twiddle context shared by
//! every transform in the crate.

use crate::ring::{find_primitive_root, FieldElement, PrimeField};
use crate::{Error, Result};

/// Reverses the low `bits` bits of `i`.
///
/// An involution on `0..2^bits`: `bit_reverse(bit_reverse(i, b), b) == i`.
/// Rejects `i >= 2^bits`.
pub fn bit_reverse(i: usize, bits: usize) -> Result<usize> {
    if bits >= usize::BITS as usize || i >> bits != 0 {
        return Err(Error::IndexOutOfRange { index: i, bits });
    }
    Ok(rev_bits(i, bits))
}

/// Unchecked reversal used by internal loops whose indices are in range by
/// construction.
#[inline]
pub(crate) fn rev_bits(mut i: usize, bits: usize) -> usize {
    debug_assert!(bits == 0 || i >> bits == 0);
    let mut out = 0;
    for _ in 0..bits {
        out = (out << 1) | (i & 1);
        i >>= 1;
    }
    out
}

/// Immutable per-(field, n) transform context.
///
/// `n = 2^p` must divide `P - 1`. The twiddle tables hold the powers of the
/// root (and of its inverse) in bit-reversed exponent order, which lets
/// every stage of the in-place schedule look its factor up directly; see
/// [`TransformPlan::stage_twiddle`] for the index arithmetic.
#[derive(Debug, Clone)]
pub struct TransformPlan {
    field: PrimeField,
    n: usize,
    p: usize,
    omega: FieldElement,
    omega_inv: FieldElement,
    twiddle_bitrev: Vec<FieldElement>,
    twiddle_bitrev_inv: Vec<FieldElement>,
}

impl TransformPlan {
    /// Builds a plan for size `n`, discovering the smallest order-`n` root.
    pub fn new(field: PrimeField, n: usize) -> Result<Self> {
        let omega = find_primitive_root(field, n)?;
        Self::with_root(field, n, omega)
    }

    /// Builds a plan around a caller-chosen root, e.g. the inverse of
    /// another plan's root. The root must satisfy `omega^(n/2) = -1`.
    pub fn with_root(field: PrimeField, n: usize, omega: FieldElement) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::BadTransformSize(n));
        }
        let minus_one = field.element(field.modulus() - 1);
        if field.pow(omega, n as u64 / 2) != minus_one {
            return Err(Error::NotAPrincipalRoot {
                root: omega.value(),
                n,
                modulus: field.modulus(),
            });
        }
        let p = n.trailing_zeros() as usize;
        let omega_inv = field.inv(omega)?;
        Ok(TransformPlan {
            field,
            n,
            p,
            omega,
            omega_inv,
            twiddle_bitrev: bitrev_power_table(field, omega, n / 2, p - 1),
            twiddle_bitrev_inv: bitrev_power_table(field, omega_inv, n / 2, p - 1),
        })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Transform size `n = 2^p`.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of butterfly stages, `log2(n)`.
    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn omega(&self) -> FieldElement {
        self.omega
    }

    #[inline]
    pub fn omega_inv(&self) -> FieldElement {
        self.omega_inv
    }

    /// Validates that `buf` matches this plan's size.
    pub(crate) fn check_len(&self, buf: &[FieldElement]) -> Result<()> {
        if buf.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: buf.len(),
            });
        }
        Ok(())
    }

    /// Butterfly factor for stage `s` (1-based) and even block index `i`.
    ///
    /// The factor is `omega^(rev_s(i) * m_s)` with `m_s = 2^(p-s)` and
    /// `rev_s` the s-bit reversal. One shared table serves every stage:
    /// with `i = 2k`, reversing the even number `i` in s bits equals
    /// reversing `k` in s-1 bits, so the exponent is
    /// `rev_{s-1}(k) * 2^(p-s)`; placing k's s-1 bits at the top of a
    /// (p-1)-bit word shows that this equals `rev_{p-1}(k)`. Hence the
    /// factor is `twiddle_bitrev[k] = twiddle_bitrev[i/2]`, independent
    /// of the stage.
    pub fn stage_twiddle(&self, s: usize, i: usize) -> Result<FieldElement> {
        self.check_stage_block(s, i)?;
        Ok(self.twiddle_bitrev[i / 2])
    }

    /// Same lookup into the inverse-root table.
    pub fn stage_twiddle_inv(&self, s: usize, i: usize) -> Result<FieldElement> {
        self.check_stage_block(s, i)?;
        Ok(self.twiddle_bitrev_inv[i / 2])
    }

    fn check_stage_block(&self, s: usize, i: usize) -> Result<()> {
        if s < 1 || s > self.p || !i.is_multiple_of(2) || i >> s != 0 {
            return Err(Error::StageOutOfRange {
                stage: s,
                block: i,
                p: self.p,
            });
        }
        Ok(())
    }

    /// Unchecked table lookups for the hot loops; `k` is half the (even)
    /// block index.
    #[inline]
    pub(crate) fn twiddle(&self, k: usize) -> FieldElement {
        self.twiddle_bitrev[k]
    }

    #[inline]
    pub(crate) fn twiddle_inv(&self, k: usize) -> FieldElement {
        self.twiddle_bitrev_inv[k]
    }
}

/// Table of `base^rev_bits(i)` for `i` in `0..len`, built with one running
/// power product (O(len) multiplications) and a scatter.
fn bitrev_power_table(
    field: PrimeField,
    base: FieldElement,
    len: usize,
    bits: usize,
) -> Vec<FieldElement> {
    debug_assert_eq!(len, 1 << bits);
    let mut table = vec![FieldElement::ONE; len];
    let mut cur = FieldElement::ONE;
    for k in 0..len {
        table[rev_bits(k, bits)] = cur;
        cur = field.mul(cur, base);
    }
    table
}
