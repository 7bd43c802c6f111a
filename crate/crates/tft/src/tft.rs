//! Forward truncated transform: compute only the first `ell` bit-reversed
//! spectrum values, skipping every butterfly the truncation makes
//! unnecessary.
//!
//! At stage `s` only the prefix `0..=ceil(ell/m_s)*m_s - 1` of the working
//! vector is produced. Butterflies whose pair straddles that bound compute
//! just their lower output; the upper value is never needed by any later
//! stage inside the bound. Products with twiddle one are not performed
//! (and therefore not counted): the first block of every stage reduces to
//! pure additions, which is what keeps the counted work within the
//! advertised budget of `ell*p + n` additions and
//! `floor((ell*p + n)/2)` multiplications.

use crate::plan::TransformPlan;
use crate::ring::FieldElement;
use crate::transform::OpCounter;
use crate::{Error, Result};

/// One butterfly of the truncated schedule.
///
/// `block` is the even block index whose twiddle the butterfly uses;
/// `compute_hi` is false exactly when the pair straddles the stage bound
/// and only the lower output is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScheduledButterfly {
    pub stage: usize,
    pub block: usize,
    pub lo: usize,
    pub hi: usize,
    pub compute_hi: bool,
}

/// Enumerates the butterflies the truncated schedule executes for output
/// count `ell` in a size-`2^p` transform, in execution order. Shared by
/// [`tft_forward`] and the schedule diagram so the two cannot disagree.
pub fn for_each_scheduled_butterfly(p: usize, ell: usize, mut f: impl FnMut(ScheduledButterfly)) {
    for s in 1..=p {
        let m = 1usize << (p - s);
        let blocks_needed = ell.div_ceil(m);
        for i in (0..blocks_needed).step_by(2) {
            let compute_hi = i + 1 < blocks_needed;
            for j in 0..m {
                f(ScheduledButterfly {
                    stage: s,
                    block: i,
                    lo: i * m + j,
                    hi: (i + 1) * m + j,
                    compute_hi,
                });
            }
        }
    }
}

/// Worst-case cost of the truncated transform: `(ell*p + n,
/// floor((ell*p + n)/2))` additions and multiplications.
pub fn tft_cost_bound(n: usize, ell: usize) -> Result<(u64, u64)> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::BadTransformSize(n));
    }
    if ell < 1 || ell > n {
        return Err(Error::EllOutOfRange { ell, n });
    }
    let p = n.trailing_zeros() as u64;
    let adds = ell as u64 * p + n as u64;
    Ok((adds, adds / 2))
}

/// Truncated forward transform.
///
/// On entry `buf` holds the `ell` inputs followed by zeros; on exit
/// `buf[i]` holds the evaluation at `omega^rev_p(i)` for `i < ell`.
/// Positions at and past `ell` hold whatever stage values the truncated
/// schedule last wrote there; the inverse transform does not use them and
/// callers should treat them as scratch.
pub fn tft_forward(
    buf: &mut [FieldElement],
    ell: usize,
    plan: &TransformPlan,
    ctr: &mut OpCounter,
) -> Result<()> {
    plan.check_len(buf)?;
    let n = plan.n();
    if ell < 1 || ell > n {
        return Err(Error::EllOutOfRange { ell, n });
    }
    if let Some(offset) = buf[ell..].iter().position(|v| !v.is_zero()) {
        return Err(Error::NonzeroTail {
            index: ell + offset,
            ell,
        });
    }
    let field = plan.field();
    for_each_scheduled_butterfly(plan.p(), ell, |b| {
        let w = plan.twiddle(b.block / 2);
        let v = buf[b.hi];
        let t = if w.is_one() {
            v
        } else {
            ctr.multiplications += 1;
            field.mul(w, v)
        };
        let u = buf[b.lo];
        buf[b.lo] = field.add(u, t);
        ctr.additions += 1;
        if b.compute_hi {
            buf[b.hi] = field.sub(u, t);
            ctr.additions += 1;
        }
    });
    Ok(())
}
