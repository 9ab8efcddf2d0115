//! Exact integer helpers for comparisons against square roots.
//!
//! Predicates on indefinite forms compare integers with `sqrt(d)` for a
//! positive non-square `d`. These are decided by sign analysis and squaring,
//! so equality never occurs and no rounding is involved.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// `x < sqrt(d)`, with `d > 0` not a perfect square.
pub fn lt_sqrt(x: &BigInt, d: &BigInt) -> bool {
    x.is_negative() || &(x * x) < d
}

/// `x > sqrt(d)`, with `d > 0` not a perfect square.
pub fn gt_sqrt(x: &BigInt, d: &BigInt) -> bool {
    x.is_positive() && &(x * x) > d
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = isqrt(n);
    &(&r * &r) == n
}

pub fn sign(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
