//! The full in-place transform in bit-reversed output order, its
//! quadratic oracle, and the exact inverse.
//!
//! A buffer is a `&mut [FieldElement]` of length exactly `plan.n()`. Stage
//! `s` of the forward transform (`s = 1..=p`, butterfly span
//! `m_s = 2^(p-s)`) replaces, for every even block `i` and offset
//! `j < m_s`, the pair at `(i*m_s + j, (i+1)*m_s + j)` by
//! `(u + w*v, u - w*v)` with `w` the stage twiddle. After stage `p` slot
//! `i` holds the evaluation at `omega^rev_p(i)`, i.e. the spectrum in
//! bit-reversed index order, which is exactly what the truncated transform
//! and pointwise multiplication consume.

use crate::plan::{rev_bits, TransformPlan};
use crate::ring::{FieldElement, PrimeField};
use crate::Result;

/// Tally of ring work done by the transforms.
///
/// `additions` counts additions and subtractions; `multiplications` counts
/// twiddle products only. Negations and halvings are free in this model
/// (one butterfly output is the negation twin of the other, and halving is
/// a shift). A full butterfly contributes 2 additions and 1 multiplication.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub additions: u64,
    pub multiplications: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Combined tally, used by cost-envelope comparisons.
    pub fn total(&self) -> u64 {
        self.additions + self.multiplications
    }
}

/// One forward butterfly: `(buf[lo], buf[hi]) <- (u + w*v, u - w*v)`.
///
/// Always performs (and counts) the twiddle product; index validity is the
/// caller's contract.
#[inline]
pub fn butterfly_forward(
    field: PrimeField,
    buf: &mut [FieldElement],
    lo: usize,
    hi: usize,
    w: FieldElement,
    ctr: &mut OpCounter,
) {
    debug_assert!(lo != hi && lo < buf.len() && hi < buf.len());
    let t = field.mul(w, buf[hi]);
    let u = buf[lo];
    buf[lo] = field.add(u, t);
    buf[hi] = field.sub(u, t);
    ctr.additions += 2;
    ctr.multiplications += 1;
}

/// In-place forward transform; `buf[i]` ends up holding the evaluation at
/// `omega^rev_p(i)`. Costs exactly `n*p` additions and `n*p/2`
/// multiplications.
pub fn dft_inplace(
    buf: &mut [FieldElement],
    plan: &TransformPlan,
    ctr: &mut OpCounter,
) -> Result<()> {
    plan.check_len(buf)?;
    let field = plan.field();
    let (n, p) = (plan.n(), plan.p());
    for s in 1..=p {
        let m = 1usize << (p - s);
        for i in (0..n / m).step_by(2) {
            let w = plan.twiddle(i / 2);
            for j in 0..m {
                butterfly_forward(field, buf, i * m + j, (i + 1) * m + j, w, ctr);
            }
        }
    }
    Ok(())
}

/// Quadratic-time evaluation at `omega^0, omega^1, ..., omega^(n-1)` in
/// natural order. Test oracle; not instrumented.
pub fn dft_naive(a: &[FieldElement], plan: &TransformPlan) -> Result<Vec<FieldElement>> {
    plan.check_len(a)?;
    let field = plan.field();
    let mut out = Vec::with_capacity(a.len());
    let mut point = FieldElement::ONE;
    for _ in 0..a.len() {
        let mut acc = FieldElement::ZERO;
        let mut power = FieldElement::ONE;
        for &coeff in a {
            acc = field.add(acc, field.mul(coeff, power));
            power = field.mul(power, point);
        }
        out.push(acc);
        point = field.mul(point, plan.omega());
    }
    Ok(out)
}

/// Exact inverse of [`dft_inplace`]: consumes the bit-reversed spectrum and
/// restores the coefficients.
///
/// Implemented as the inverse-butterfly stage loop over the whole buffer
/// with the `1/n` scaling folded into the per-butterfly halvings, so the
/// same engine serves the block push-ups of the truncated inversion.
pub fn idft_inplace(
    buf: &mut [FieldElement],
    plan: &TransformPlan,
    ctr: &mut OpCounter,
) -> Result<()> {
    plan.check_len(buf)?;
    push_up_block(buf, 0, plan.n(), plan, ctr, &mut |_, _, _| {});
    Ok(())
}

/// Undoes the forward stages on an aligned block.
///
/// `buf[start..start + len]` must hold final-stage values of a block with
/// `start` a multiple of the power-of-two `len`; afterwards it holds the
/// corresponding values of stage `p - log2(len)`. Alignment keeps every
/// butterfly of the undone stages inside the block, so no outside value is
/// read or written. Each pair costs 2 additions plus 1 multiplication when
/// its twiddle is not one. `observe` is called as `(stage_row, index,
/// value)` for every write; the inverse-transform verification hooks in
/// there.
pub(crate) fn push_up_block(
    buf: &mut [FieldElement],
    start: usize,
    len: usize,
    plan: &TransformPlan,
    ctr: &mut OpCounter,
    observe: &mut dyn FnMut(usize, usize, FieldElement),
) {
    debug_assert!(len.is_power_of_two() || len == 0);
    debug_assert!(len == 0 || start.is_multiple_of(len));
    debug_assert!(start + len <= plan.n());
    let field = plan.field();
    let p = plan.p();
    let mut m = 1usize;
    while m < len {
        let row = p - 1 - m.trailing_zeros() as usize;
        let mut block = start / m;
        while block * m < start + len {
            let w_inv = plan.twiddle_inv(block / 2);
            let base = block * m;
            for lo in base..base + m {
                let hi = lo + m;
                let (u, v) = (buf[lo], buf[hi]);
                let up = field.half(field.add(u, v));
                let mut down = field.half(field.sub(u, v));
                ctr.additions += 2;
                if !w_inv.is_one() {
                    down = field.mul(down, w_inv);
                    ctr.multiplications += 1;
                }
                buf[lo] = up;
                buf[hi] = down;
                observe(row, lo, up);
                observe(row, hi, down);
            }
            block += 2;
        }
        m <<= 1;
    }
}

/// Spectrum slot holding the evaluation at `omega^k`: the bit-reversed
/// output order means `dft_inplace` leaves it at index `rev_p(k)`.
pub fn natural_to_output_index(k: usize, p: usize) -> usize {
    rev_bits(k, p)
}
