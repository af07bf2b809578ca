//! Small exact-integer helpers shared across the crate.

use crate::Int;

/// Non-negative greatest common divisor; `gcd(0, 0) = 0`.
pub(crate) fn gcd(mut a: Int, mut b: Int) -> Int {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// gcd of four entries, used for primitivity checks.
pub(crate) fn gcd4(a: Int, b: Int, c: Int, d: Int) -> Int {
    gcd(gcd(a, b), gcd(c, d))
}

/// Iterative extended Euclid: returns `(g, x, y)` with `a·x + b·y = g` and
/// `g = gcd(a, b) ≥ 0`. For `(0, 0)` it returns `(0, 0, 0)`; callers that
/// need `g > 0` must reject that input themselves.
pub(crate) fn ext_gcd_raw(a: Int, b: Int) -> (Int, Int, Int) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_x, mut x) = (1, 0);
    let (mut old_y, mut y) = (0, 1);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
        (old_y, y) = (y, old_y - q * y);
    }
    if old_r < 0 {
        (-old_r, -old_x, -old_y)
    } else {
        (old_r, old_x, old_y)
    }
}
