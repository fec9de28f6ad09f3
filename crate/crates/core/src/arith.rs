//! Small modular-arithmetic helpers shared by the modules.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn lcm_all<I: IntoIterator<Item = u64>>(xs: I) -> u64 {
    xs.into_iter().fold(1, lcm)
}

/// Least non-negative residue of `a` modulo `m`.
pub fn rem(a: i64, m: i64) -> i64 {
    a.mod_floor(&m)
}

/// Inverse of `a` modulo `m` in `0..m`, if it exists.
pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let e = rem(a, m).extended_gcd(&m);
    (e.gcd == 1).then(|| rem(e.x, m))
}

/// `c^+`: the inverse of `c` modulo `n` taken in `[0, n]`.
pub fn inv_plus(c: i64, n: i64) -> Option<i64> {
    inv_mod(c, n)
}

/// `c^-`: the inverse of `c` modulo `n` taken in `[-n, 0]`.
pub fn inv_minus(c: i64, n: i64) -> Option<i64> {
    inv_mod(c, n).map(|x| if x == 0 { 0 } else { x - n })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(5, 9), Some(2));
        assert_eq!(inv_mod(3, 9), None);
        assert_eq!(inv_plus(3, 8), Some(3));
        assert_eq!(inv_minus(3, 7), Some(-2));
        assert_eq!(rem(-4, 7), 3);
    }
}
