//! Checked 128-bit integer helpers.
//!
//! Binomial coefficients grow quickly during exhaustive enumeration, so every
//! product and sum in the crate goes through these helpers and overflow is a
//! reported error, never a wrap.

use crate::error::{Error, Result};

pub fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b)
        .ok_or_else(|| Error::Arithmetic(format!("{a} + {b}")))
}

pub fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b)
        .ok_or_else(|| Error::Arithmetic(format!("{a} - {b}")))
}

pub fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b)
        .ok_or_else(|| Error::Arithmetic(format!("{a} * {b}")))
}

/// Exact halving; the Riemann-Roch numerators are always even.
pub fn half(a: i128) -> Result<i128> {
    if a % 2 != 0 {
        return Err(Error::Arithmetic(format!("{a} is not even")));
    }
    Ok(a / 2)
}

/// `m(m-1)/2` for `m >= 2`, otherwise `0`.
///
/// This is the "drop small tops" binomial convention: a symbol whose top is
/// below 2 contributes nothing instead of its polynomial value.
pub fn binom2_clamped(m: i128) -> Result<i128> {
    if m < 2 {
        return Ok(0);
    }
    half(mul(m, m - 1)?)
}

/// Ordinary binomial coefficient `C(n, k)` for `n, k >= 0`.
pub fn binom(n: i128, k: i128) -> Result<i128> {
    if k < 0 || n < 0 {
        return Err(Error::input(format!("binom({n}, {k}) with negative argument")));
    }
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = mul(acc, n - i)?;
        acc /= i + 1;
    }
    Ok(acc)
}

/// Integer square root of a non-negative integer.
pub fn isqrt(n: i128) -> i128 {
    debug_assert!(n >= 0);
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x > 0 && x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom2_drops_small_tops() {
        assert_eq!(binom2_clamped(-5).unwrap(), 0);
        assert_eq!(binom2_clamped(0).unwrap(), 0);
        assert_eq!(binom2_clamped(1).unwrap(), 0);
        assert_eq!(binom2_clamped(2).unwrap(), 1);
        assert_eq!(binom2_clamped(7).unwrap(), 21);
    }

    #[test]
    fn binom_small_values() {
        assert_eq!(binom(5, 2).unwrap(), 10);
        assert_eq!(binom(4, 2).unwrap(), 6);
        assert_eq!(binom(3, 5).unwrap(), 0);
        assert_eq!(binom(0, 0).unwrap(), 1);
    }

    #[test]
    fn overflow_is_an_error() {
        assert!(mul(i128::MAX, 2).is_err());
        assert!(add(i128::MAX, 1).is_err());
    }

    #[test]
    fn isqrt_exact() {
        for n in 0..2000i128 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "isqrt({n}) = {r}");
        }
    }
}
