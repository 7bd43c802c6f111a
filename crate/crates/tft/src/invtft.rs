//! Inversion of the truncated transform: recover the original `ell`
//! coefficients from `(spectrum[0..ell], 0, ..., 0)`.
//!
//! Unlike the full transform, the truncated one cannot be undone by a
//! second truncated transform with the inverse root; the missing spectrum
//! slots have to be reconstructed instead. The key fact is that every
//! butterfly relation is solvable from any two of its four values, so
//! known values can be pushed down (towards the final stage) or up
//! (towards the coefficients) as the recursion walks the stage grid:
//!
//! * the zero tail supplies coefficient-side values on the right,
//! * aligned power-of-two blocks whose final-stage values are all present
//!   are self-contained and can be pushed up wholesale,
//! * and mixed solves fill in whatever single value a butterfly is
//!   missing.
//!
//! The recursion on `(head, tail, last, s)` maintains: positions
//! `head..=tail` hold final-stage values, positions `tail+1..=last` hold
//! stage `s-1` values, and the block `head..=last` spans exactly two
//! stage-`s` butterfly half-blocks. It terminates with the whole block at
//! stage `s-1`. The initial call covers the full buffer at `s = 1`, so
//! termination leaves stage-0 data: the coefficients, zero tail included.

use crate::plan::TransformPlan;
use crate::ring::{FieldElement, PrimeField};
use crate::transform::{push_up_block, OpCounter};
use crate::{Error, Result};

/// Forward-solve the lower output of one butterfly:
/// `u_cur = u_prev + w * v_prev`.
#[inline]
pub fn push_down_left(
    field: PrimeField,
    u_prev: FieldElement,
    v_prev: FieldElement,
    w: FieldElement,
    ctr: &mut OpCounter,
) -> FieldElement {
    let t = twiddle_mul(field, w, v_prev, ctr);
    ctr.additions += 1;
    field.add(u_prev, t)
}

/// Forward-solve the upper output of one butterfly:
/// `v_cur = u_prev - w * v_prev`.
#[inline]
pub fn push_down_right(
    field: PrimeField,
    u_prev: FieldElement,
    v_prev: FieldElement,
    w: FieldElement,
    ctr: &mut OpCounter,
) -> FieldElement {
    let t = twiddle_mul(field, w, v_prev, ctr);
    ctr.additions += 1;
    field.sub(u_prev, t)
}

/// Back-solve a whole butterfly from both of its outputs:
/// `(u_prev, v_prev) = (half(u_cur + v_cur), half(u_cur - v_cur) * w^-1)`.
///
/// The halvings fold the transform's `1/n` scaling in and are not counted;
/// the inverse-twiddle product is.
#[inline]
pub fn push_up_pair(
    field: PrimeField,
    u_cur: FieldElement,
    v_cur: FieldElement,
    w_inv: FieldElement,
    ctr: &mut OpCounter,
) -> (FieldElement, FieldElement) {
    let up = field.half(field.add(u_cur, v_cur));
    let down = field.half(field.sub(u_cur, v_cur));
    ctr.additions += 2;
    (up, twiddle_mul(field, w_inv, down, ctr))
}

/// Mixed solve from the lower output and the previous right value:
/// returns `(u_prev, v_cur) = (u_cur - w*v_prev, u_cur - 2*w*v_prev)`.
#[inline]
pub fn solve_mixed_left(
    field: PrimeField,
    u_cur: FieldElement,
    v_prev: FieldElement,
    w: FieldElement,
    ctr: &mut OpCounter,
) -> (FieldElement, FieldElement) {
    let t = twiddle_mul(field, w, v_prev, ctr);
    let u_prev = field.sub(u_cur, t);
    let v_cur = field.sub(u_prev, t);
    ctr.additions += 2;
    (u_prev, v_cur)
}

/// Mixed solve from the upper output and the previous left value:
/// returns `(u_cur, v_prev) = (2*u_prev - v_cur, (u_prev - v_cur) * w^-1)`.
#[inline]
pub fn solve_mixed_right(
    field: PrimeField,
    v_cur: FieldElement,
    u_prev: FieldElement,
    w_inv: FieldElement,
    ctr: &mut OpCounter,
) -> (FieldElement, FieldElement) {
    let diff = field.sub(u_prev, v_cur);
    let u_cur = field.add(u_prev, diff);
    ctr.additions += 2;
    (u_cur, twiddle_mul(field, w_inv, diff, ctr))
}

/// Performs `w * v`, counting it only when `w` is nontrivial.
#[inline]
fn twiddle_mul(
    field: PrimeField,
    w: FieldElement,
    v: FieldElement,
    ctr: &mut OpCounter,
) -> FieldElement {
    if w.is_one() {
        v
    } else {
        ctr.multiplications += 1;
        field.mul(w, v)
    }
}

type Observe<'a> = &'a mut dyn FnMut(usize, usize, FieldElement);

/// Pushes an aligned block of final-stage values up to stage
/// `p - log2(len)`, via the inverse-butterfly engine shared with the full
/// inverse transform. A length-1 block is already at stage `p`: no-op.
pub fn self_contained_push_up(
    buf: &mut [FieldElement],
    start: usize,
    len: usize,
    plan: &TransformPlan,
    ctr: &mut OpCounter,
) -> Result<()> {
    plan.check_len(buf)?;
    if len == 0 || !len.is_power_of_two() || !start.is_multiple_of(len) || start + len > plan.n() {
        return Err(Error::MisalignedRegion { start, len });
    }
    push_up_block(buf, start, len, plan, ctr, &mut |_, _, _| {});
    Ok(())
}

/// Pushes positions `from..=to` down one stage at stage `s`, overwriting
/// each with its stage-`s` value. Positions in even half-blocks are solved
/// forward from two stage-`s-1` values; positions in odd half-blocks are
/// mixed-solved from their already-final left partner. An empty range
/// (`from > to`) is a no-op.
pub fn push_down_range(
    buf: &mut [FieldElement],
    from: usize,
    to: usize,
    s: usize,
    plan: &TransformPlan,
    ctr: &mut OpCounter,
) -> Result<()> {
    plan.check_len(buf)?;
    check_range(from, to, s, plan)?;
    push_down_range_observed(buf, from, to, s, plan, ctr, &mut |_, _, _| {});
    Ok(())
}

/// Pushes positions `from..=to` (even half-blocks only) up one stage at
/// stage `s`. With `paired` set, each position and its partner one
/// half-block to the right are both stage-`s` values and both are
/// rewritten one stage up; otherwise the partner already holds its
/// stage-`s-1` value and only the given position is solved.
pub fn push_up_range(
    buf: &mut [FieldElement],
    from: usize,
    to: usize,
    s: usize,
    plan: &TransformPlan,
    ctr: &mut OpCounter,
    paired: bool,
) -> Result<()> {
    plan.check_len(buf)?;
    check_range(from, to, s, plan)?;
    let m = 1usize << (plan.p() - s);
    if from <= to {
        for k in from..=to {
            if !(k / m).is_multiple_of(2) {
                return Err(Error::InvalidPushRange { from, to, stage: s });
            }
        }
    }
    push_up_range_observed(buf, from, to, s, plan, ctr, paired, &mut |_, _, _| {});
    Ok(())
}

fn check_range(from: usize, to: usize, s: usize, plan: &TransformPlan) -> Result<()> {
    if s < 1 || s > plan.p() || (from <= to && to >= plan.n()) {
        return Err(Error::InvalidPushRange { from, to, stage: s });
    }
    Ok(())
}

fn push_down_range_observed(
    buf: &mut [FieldElement],
    from: usize,
    to: usize,
    s: usize,
    plan: &TransformPlan,
    ctr: &mut OpCounter,
    observe: Observe<'_>,
) {
    if from > to {
        return;
    }
    let field = plan.field();
    let m = 1usize << (plan.p() - s);
    for k in from..=to {
        let i = k / m;
        let w = plan.twiddle(i / 2);
        let value = if i.is_multiple_of(2) {
            push_down_left(field, buf[k], buf[k + m], w, ctr)
        } else {
            // The left partner is already at stage s; this slot still
            // holds its stage-(s-1) value.
            solve_mixed_left(field, buf[k - m], buf[k], w, ctr).1
        };
        buf[k] = value;
        observe(s, k, value);
    }
}

#[allow(clippy::too_many_arguments)]
fn push_up_range_observed(
    buf: &mut [FieldElement],
    from: usize,
    to: usize,
    s: usize,
    plan: &TransformPlan,
    ctr: &mut OpCounter,
    paired: bool,
    observe: Observe<'_>,
) {
    if from > to {
        return;
    }
    let field = plan.field();
    let m = 1usize << (plan.p() - s);
    for k in from..=to {
        debug_assert_eq!((k / m) % 2, 0);
        let i = k / m;
        if paired {
            let w_inv = plan.twiddle_inv(i / 2);
            let (up, down) = push_up_pair(field, buf[k], buf[k + m], w_inv, ctr);
            buf[k] = up;
            buf[k + m] = down;
            observe(s - 1, k, up);
            observe(s - 1, k + m, down);
        } else {
            let w = plan.twiddle(i / 2);
            let t = twiddle_mul(field, w, buf[k + m], ctr);
            let up = field.sub(buf[k], t);
            ctr.additions += 1;
            buf[k] = up;
            observe(s - 1, k, up);
        }
    }
}

/// Inverse truncated transform.
///
/// `buf` must hold the first `ell` spectrum values (bit-reversed order, as
/// produced by the forward transform) followed by zeros; on success it
/// holds the original coefficients followed by the same zeros. The zero
/// tail is required, not assumed: a spectrum prefix with an arbitrary tail
/// does not determine the coefficients.
pub fn inv_tft(
    buf: &mut [FieldElement],
    ell: usize,
    plan: &TransformPlan,
    ctr: &mut OpCounter,
) -> Result<()> {
    inv_tft_observed(buf, ell, plan, ctr, |_, _, _| {})
}

/// [`inv_tft`] with a witness callback invoked as
/// `(stage, index, value)` for every buffer write, reporting the stage
/// whose value the position now holds. Verification tests replay the
/// forward stage grid against it.
pub fn inv_tft_observed(
    buf: &mut [FieldElement],
    ell: usize,
    plan: &TransformPlan,
    ctr: &mut OpCounter,
    mut observe: impl FnMut(usize, usize, FieldElement),
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
    if ell == n {
        // No zero tail: the whole buffer is final-stage data and the
        // inversion degenerates to the full inverse transform.
        push_up_block(buf, 0, n, plan, ctr, &mut observe);
        return Ok(());
    }
    invert(buf, plan, ctr, &mut observe, 0, ell - 1, n - 1, 1);
    Ok(())
}

/// Recursive inversion step; see the module docs for the state invariant.
#[allow(clippy::too_many_arguments)]
fn invert(
    buf: &mut [FieldElement],
    plan: &TransformPlan,
    ctr: &mut OpCounter,
    observe: Observe<'_>,
    head: usize,
    tail: usize,
    last: usize,
    s: usize,
) {
    if head > tail {
        // Everything in head..=last already holds stage s-1 values.
        return;
    }
    let p = plan.p();
    debug_assert!(s <= p, "active call below the final stage");
    debug_assert_eq!(last - head + 1, 1usize << (p + 1 - s), "block width");
    let left_middle = head + (last - head) / 2;
    let right_middle = left_middle + 1;

    if tail >= left_middle {
        // The whole left half is final-stage data: push it up to stage s,
        // which yields enough information to push the stage-(s-1) tail
        // down, recurse on the right half, and finish the block with a
        // paired push-up.
        let half = left_middle - head + 1;
        push_up_block(buf, head, half, plan, ctr, observe);
        push_down_range_observed(buf, tail + 1, last, s, plan, ctr, observe);
        invert(buf, plan, ctr, observe, right_middle, tail, last, s + 1);
        let s_up = p - half.ilog2() as usize;
        debug_assert_eq!(s_up, s);
        push_up_range_observed(buf, head, left_middle, s_up, plan, ctr, true, observe);
    } else {
        // Less than half the block is final-stage data: complete the left
        // half at stage s from the stage-(s-1) values on both sides,
        // recurse on it, then solve the left half back to stage s-1.
        push_down_range_observed(buf, tail + 1, left_middle, s, plan, ctr, observe);
        invert(buf, plan, ctr, observe, head, tail, left_middle, s + 1);
        push_up_range_observed(buf, head, left_middle, s, plan, ctr, false, observe);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plan::bit_reverse;
    use crate::ring::PrimeField;
    use crate::tft::tft_forward;
    use crate::transform::idft_inplace;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn elems(field: PrimeField, vals: &[u64]) -> Vec<FieldElement> {
        vals.iter().map(|&v| field.element(v)).collect()
    }

    /// Independent stage grid: row 0 is the input, row s applies the
    /// butterfly recurrence with twiddles recomputed from scratch via pow.
    fn forward_grid(
        field: PrimeField,
        omega: FieldElement,
        input: &[FieldElement],
    ) -> Vec<Vec<FieldElement>> {
        let n = input.len();
        let p = n.trailing_zeros() as usize;
        let mut grid = vec![input.to_vec()];
        for s in 1..=p {
            let m = 1usize << (p - s);
            let mut row = grid[s - 1].clone();
            for i in (0..n / m).step_by(2) {
                let w = field.pow(omega, (bit_reverse(i, s).unwrap() * m) as u64);
                for j in 0..m {
                    let u = grid[s - 1][i * m + j];
                    let v = grid[s - 1][(i + 1) * m + j];
                    let t = field.mul(w, v);
                    row[i * m + j] = field.add(u, t);
                    row[(i + 1) * m + j] = field.sub(u, t);
                }
            }
            grid.push(row);
        }
        grid
    }

    fn random_padded(
        field: PrimeField,
        n: usize,
        ell: usize,
        rng: &mut ChaCha8Rng,
    ) -> Vec<FieldElement> {
        let mut a: Vec<FieldElement> = (0..ell).map(|_| field.element(rng.gen())).collect();
        a.resize(n, FieldElement::ZERO);
        a
    }

    #[test]
    fn butterfly_solver_golden_values() {
        let field = PrimeField::new(13).unwrap();
        let ctr = &mut OpCounter::new();

        // Inverse of the trivial-twiddle butterfly.
        let (a, b) = (field.element(9), field.element(4));
        let (u, v) = push_up_pair(
            field,
            field.add(a, b),
            field.sub(a, b),
            FieldElement::ONE,
            ctr,
        );
        assert_eq!((u, v), (a, b));

        // Same butterfly as the forward golden case: u=2, v=3, w=5.
        assert_eq!(
            push_down_left(
                field,
                field.element(2),
                field.element(3),
                field.element(5),
                ctr
            ),
            field.element(4)
        );
        assert_eq!(
            push_down_right(
                field,
                field.element(2),
                field.element(3),
                field.element(5),
                ctr
            ),
            field.element(0)
        );

        // Mixed solve against the same butterfly: knowing u_cur=4 and
        // v_prev=3 recovers u_prev = 4 - 15 = 2 and v_cur = 0.
        let (u_prev, v_cur) = solve_mixed_left(
            field,
            field.element(4),
            field.element(3),
            field.element(5),
            ctr,
        );
        assert_eq!((u_prev, v_cur), (field.element(2), field.element(0)));

        // Symmetric mixed solve: knowing v_cur=0 and u_prev=2.
        let w_inv = field.inv(field.element(5)).unwrap();
        let (u_cur, v_prev) =
            solve_mixed_right(field, field.element(0), field.element(2), w_inv, ctr);
        assert_eq!((u_cur, v_prev), (field.element(4), field.element(3)));
    }

    #[test]
    fn solver_family_is_consistent_on_random_butterflies() {
        let field = PrimeField::default_field();
        let plan = TransformPlan::new(field, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let ctr = &mut OpCounter::new();
        for _ in 0..64 {
            let u_prev = field.element(rng.gen());
            let v_prev = field.element(rng.gen());
            let w = field.pow(plan.omega(), rng.gen_range(0..16));
            let w_inv = field.inv(w).unwrap();
            let u_cur = push_down_left(field, u_prev, v_prev, w, ctr);
            let v_cur = push_down_right(field, u_prev, v_prev, w, ctr);
            assert_eq!(
                push_up_pair(field, u_cur, v_cur, w_inv, ctr),
                (u_prev, v_prev)
            );
            assert_eq!(
                solve_mixed_left(field, u_cur, v_prev, w, ctr),
                (u_prev, v_cur)
            );
            assert_eq!(
                solve_mixed_right(field, v_cur, u_prev, w_inv, ctr),
                (u_cur, v_prev)
            );
        }
    }

    #[test]
    fn push_up_block_recovers_earlier_stages() {
        let field = PrimeField::default_field();
        let plan = TransformPlan::new(field, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let input: Vec<FieldElement> = (0..16).map(|_| field.element(rng.gen())).collect();
        let grid = forward_grid(field, plan.omega(), &input);

        // Length-1 region: nothing to do.
        let mut buf = grid[4].clone();
        self_contained_push_up(&mut buf, 3, 1, &plan, &mut OpCounter::new()).unwrap();
        assert_eq!(buf, grid[4]);

        // Front half: stage 4 down to stage 1.
        let mut buf = grid[4].clone();
        self_contained_push_up(&mut buf, 0, 8, &plan, &mut OpCounter::new()).unwrap();
        assert_eq!(&buf[..8], &grid[1][..8]);
        assert_eq!(&buf[8..], &grid[4][8..], "outside the region untouched");

        // Aligned interior block: stage 4 to stage 3 at positions 8..=9.
        let mut buf = grid[4].clone();
        self_contained_push_up(&mut buf, 8, 2, &plan, &mut OpCounter::new()).unwrap();
        assert_eq!(&buf[8..10], &grid[3][8..10]);
    }

    #[test]
    fn push_up_block_rejects_misaligned_regions() {
        let field = PrimeField::default_field();
        let plan = TransformPlan::new(field, 16).unwrap();
        let mut buf = vec![FieldElement::ZERO; 16];
        let ctr = &mut OpCounter::new();
        assert!(self_contained_push_up(&mut buf, 3, 2, &plan, ctr).is_err());
        assert!(self_contained_push_up(&mut buf, 0, 3, &plan, ctr).is_err());
        assert!(self_contained_push_up(&mut buf, 12, 8, &plan, ctr).is_err());
        assert!(self_contained_push_up(&mut buf, 0, 0, &plan, ctr).is_err());
    }

    #[test]
    fn push_ranges_match_grid_rows() {
        let field = PrimeField::default_field();
        let plan = TransformPlan::new(field, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let input = random_padded(field, 16, 11, &mut rng);
        let grid = forward_grid(field, plan.omega(), &input);
        let ctr = &mut OpCounter::new();

        // Empty range is a no-op.
        let mut buf = grid[0].clone();
        push_down_range(&mut buf, 5, 4, 1, &plan, ctr).unwrap();
        assert_eq!(buf, grid[0]);

        // Stage-1 push-down of 11..=15 after the front push-up: mirrors
        // the first step of the inversion at ell = 11.
        let mut buf = grid[4].clone();
        buf[11..].copy_from_slice(&grid[0][11..]);
        self_contained_push_up(&mut buf, 0, 8, &plan, ctr).unwrap();
        push_down_range(&mut buf, 11, 15, 1, &plan, ctr).unwrap();
        for k in 11..16 {
            assert_eq!(buf[k], grid[1][k], "k={k}");
        }

        // Paired push-up of the two halves produces row 0.
        let mut buf = grid[1].clone();
        push_up_range(&mut buf, 0, 7, 1, &plan, ctr, true).unwrap();
        assert_eq!(buf, grid[0]);
    }

    #[test]
    fn push_ranges_reject_bad_stages() {
        let field = PrimeField::default_field();
        let plan = TransformPlan::new(field, 16).unwrap();
        let mut buf = vec![FieldElement::ZERO; 16];
        let ctr = &mut OpCounter::new();
        assert!(push_down_range(&mut buf, 0, 3, 0, &plan, ctr).is_err());
        assert!(push_down_range(&mut buf, 0, 16, 1, &plan, ctr).is_err());
        assert!(push_up_range(&mut buf, 0, 3, 5, &plan, ctr, true).is_err());
        // Stage 4 half-blocks have width 1, so position 1 is an odd block.
        assert!(push_up_range(&mut buf, 1, 1, 4, &plan, ctr, false).is_err());
    }

    #[test]
    fn three_point_example_round_trips() {
        let field = PrimeField::new(13).unwrap();
        let plan = TransformPlan::new(field, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..64 {
            let (a0, a1, a2) = (
                rng.gen_range(0..13),
                rng.gen_range(0..13),
                rng.gen_range(0..13),
            );
            // Spectrum written out exactly as the three linear forms.
            let spectrum = [
                (a0 + a1 + a2) % 13,
                (a0 + 13 - a1 + a2) % 13,
                (a0 + 5 * a1 + 13 - a2) % 13,
            ];
            let mut buf = elems(field, &[spectrum[0], spectrum[1], spectrum[2], 0]);
            inv_tft(&mut buf, 3, &plan, &mut OpCounter::new()).unwrap();
            assert_eq!(buf, elems(field, &[a0, a1, a2, 0]));
        }
    }

    #[test]
    fn full_length_matches_idft() {
        let field = PrimeField::default_field();
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for log_n in 1..=6 {
            let n = 1usize << log_n;
            let plan = TransformPlan::new(field, n).unwrap();
            let a = random_padded(field, n, n, &mut rng);
            let mut via_inv_tft = a.clone();
            tft_forward(&mut via_inv_tft, n, &plan, &mut OpCounter::new()).unwrap();
            let mut via_idft = via_inv_tft.clone();
            inv_tft(&mut via_inv_tft, n, &plan, &mut OpCounter::new()).unwrap();
            idft_inplace(&mut via_idft, &plan, &mut OpCounter::new()).unwrap();
            assert_eq!(via_inv_tft, via_idft);
            assert_eq!(via_inv_tft, a);
        }
    }

    #[test]
    fn round_trips_for_all_lengths() {
        let field = PrimeField::default_field();
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for n in [4usize, 8, 16, 32, 64, 128] {
            let plan = TransformPlan::new(field, n).unwrap();
            for ell in 1..=n {
                let a = random_padded(field, n, ell, &mut rng);
                let mut buf = a.clone();
                tft_forward(&mut buf, ell, &plan, &mut OpCounter::new()).unwrap();
                // Keep the spectrum prefix, restore the zero tail.
                for slot in buf[ell..].iter_mut() {
                    *slot = FieldElement::ZERO;
                }
                inv_tft(&mut buf, ell, &plan, &mut OpCounter::new()).unwrap();
                assert_eq!(buf, a, "n={n} ell={ell}");
            }
        }
    }

    #[test]
    fn showcase_sixteen_eleven_round_trip() {
        let field = PrimeField::default_field();
        let plan = TransformPlan::new(field, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let a = random_padded(field, 16, 11, &mut rng);
        let mut buf = a.clone();
        tft_forward(&mut buf, 11, &plan, &mut OpCounter::new()).unwrap();
        for slot in buf[11..].iter_mut() {
            *slot = FieldElement::ZERO;
        }
        inv_tft(&mut buf, 11, &plan, &mut OpCounter::new()).unwrap();
        assert_eq!(buf, a);
    }

    #[test]
    fn every_write_matches_the_forward_grid() {
        let field = PrimeField::default_field();
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for n in [4usize, 8, 16, 32, 64] {
            let plan = TransformPlan::new(field, n).unwrap();
            for ell in 1..n {
                let a = random_padded(field, n, ell, &mut rng);
                let grid = forward_grid(field, plan.omega(), &a);
                let mut buf: Vec<FieldElement> = grid[plan.p()][..ell].to_vec();
                buf.resize(n, FieldElement::ZERO);
                let mut writes = 0usize;
                inv_tft_observed(
                    &mut buf,
                    ell,
                    &plan,
                    &mut OpCounter::new(),
                    |row, idx, value| {
                        assert_eq!(
                            value, grid[row][idx],
                            "n={n} ell={ell} stage={row} idx={idx}"
                        );
                        writes += 1;
                    },
                )
                .unwrap();
                assert!(writes > 0);
                assert_eq!(buf, a, "n={n} ell={ell}");
            }
        }
    }

    #[test]
    fn rejects_nonzero_tail_and_bad_ell() {
        let field = PrimeField::new(13).unwrap();
        let plan = TransformPlan::new(field, 4).unwrap();
        let ctr = &mut OpCounter::new();

        // Raw forward output: the scratch tail is not a valid inversion
        // input and must be refused, not silently inverted.
        let mut buf = elems(field, &[1, 2, 3, 0]);
        tft_forward(&mut buf, 3, &plan, ctr).unwrap();
        assert_ne!(buf[3], FieldElement::ZERO);
        assert_eq!(
            inv_tft(&mut buf, 3, &plan, ctr),
            Err(Error::NonzeroTail { index: 3, ell: 3 })
        );

        let mut buf = elems(field, &[1, 2, 3, 0]);
        assert!(inv_tft(&mut buf, 0, &plan, ctr).is_err());
        assert!(inv_tft(&mut buf, 5, &plan, ctr).is_err());
        let mut short = elems(field, &[1, 0]);
        assert!(inv_tft(&mut short, 1, &plan, ctr).is_err());
    }

    #[test]
    fn inverse_cost_stays_in_the_envelope() {
        let field = PrimeField::default_field();
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for n in [8usize, 16, 64, 256] {
            let plan = TransformPlan::new(field, n).unwrap();

            let mut idft_ctr = OpCounter::new();
            let mut buf = random_padded(field, n, n, &mut rng);
            idft_inplace(&mut buf, &plan, &mut idft_ctr).unwrap();

            for ell in 1..=n {
                let a = random_padded(field, n, ell, &mut rng);
                let mut buf = a.clone();
                let mut fwd = OpCounter::new();
                tft_forward(&mut buf, ell, &plan, &mut fwd).unwrap();
                for slot in buf[ell..].iter_mut() {
                    *slot = FieldElement::ZERO;
                }
                let mut inv = OpCounter::new();
                inv_tft(&mut buf, ell, &plan, &mut inv).unwrap();
                assert!(
                    inv.multiplications <= 2 * fwd.multiplications,
                    "n={n} ell={ell} inv={inv:?} fwd={fwd:?}"
                );
                if ell <= n / 2 {
                    assert!(
                        inv.total() < idft_ctr.total(),
                        "n={n} ell={ell} inv={inv:?} idft={idft_ctr:?}"
                    );
                }
            }
        }
    }
}
