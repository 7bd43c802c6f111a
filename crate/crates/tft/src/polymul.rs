//! Polynomial multiplication over the prime field: truncated transform of
//! both factors, pointwise product, truncated inversion.
//!
//! With `ell = deg(P) + deg(Q) + 1` and `n` the next power of two, the
//! product's spectrum is fully determined by its first `ell` bit-reversed
//! values together with the zero coefficient tail, so only those `ell`
//! pointwise products are taken; slots `ell..n` are reset to zero before
//! the inversion, matching its input convention. Positions past `ell` in
//! the forward outputs are scratch and are never multiplied.

use crate::invtft::inv_tft;
use crate::plan::TransformPlan;
use crate::ring::{FieldElement, PrimeField};
use crate::tft::tft_forward;
use crate::transform::OpCounter;
use crate::{Error, Result};

/// Dense coefficient vector, low degree first. Trailing zeros are allowed;
/// an empty or all-zero vector is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<FieldElement>) -> Self {
        Polynomial { coeffs }
    }

    /// Builds a polynomial from integer coefficients, reducing each mod P.
    pub fn from_integers(field: PrimeField, values: &[u64]) -> Self {
        Polynomial {
            coeffs: values.iter().map(|&v| field.element(v)).collect(),
        }
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    /// Index of the last nonzero coefficient; `None` for the zero
    /// polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }
}

/// TFT-based product. Exact; output has exactly
/// `deg(P) + deg(Q) + 1` coefficients (empty for a zero factor).
pub fn multiply_tft(p: &Polynomial, q: &Polynomial, field: PrimeField) -> Result<Polynomial> {
    multiply_tft_counted(p, q, field, &mut OpCounter::new())
}

/// [`multiply_tft`] with the transform and pointwise work tallied into
/// `ctr`, for cost comparisons against the padded full-transform pipeline.
pub fn multiply_tft_counted(
    p: &Polynomial,
    q: &Polynomial,
    field: PrimeField,
    ctr: &mut OpCounter,
) -> Result<Polynomial> {
    let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else {
        return Ok(Polynomial::zero());
    };
    let ell = dp + dq + 1;
    let n = ell.next_power_of_two().max(2);
    if n > field.max_transform_size() {
        return Err(Error::ProductTooLarge {
            needed: n,
            modulus: field.modulus(),
            supported: field.max_transform_size(),
        });
    }
    let plan = TransformPlan::new(field, n)?;

    let mut lhs = padded(p, n);
    let mut rhs = padded(q, n);
    tft_forward(&mut lhs, ell, &plan, ctr)?;
    tft_forward(&mut rhs, ell, &plan, ctr)?;

    for i in 0..ell {
        lhs[i] = field.mul(lhs[i], rhs[i]);
        ctr.multiplications += 1;
    }
    for slot in lhs[ell..].iter_mut() {
        *slot = FieldElement::ZERO;
    }
    inv_tft(&mut lhs, ell, &plan, ctr)?;

    lhs.truncate(ell);
    Ok(Polynomial::new(lhs))
}

/// Quadratic convolution, the independent oracle for [`multiply_tft`].
pub fn multiply_schoolbook(p: &Polynomial, q: &Polynomial, field: PrimeField) -> Polynomial {
    let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else {
        return Polynomial::zero();
    };
    let mut out = vec![FieldElement::ZERO; dp + dq + 1];
    for (i, &a) in p.coeffs[..=dp].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, &b) in q.coeffs[..=dq].iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(a, b));
        }
    }
    Polynomial::new(out)
}

fn padded(poly: &Polynomial, n: usize) -> Vec<FieldElement> {
    let mut buf = poly.coeffs.clone();
    buf.truncate(poly.degree().map_or(0, |d| d + 1));
    buf.resize(n, FieldElement::ZERO);
    buf
}
