use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::complex::SimplicialComplex;

/// Underlying face of `α`, or `None` if `α` repeats a letter, leaves the
/// ground set, or is not a face.
pub fn feasible_mask(c: &SimplicialComplex, alpha: &[usize]) -> Option<u64> {
    let mut mask = 0u64;
    for &x in alpha {
        if x >= c.ground_size() || mask >> x & 1 == 1 {
            return None;
        }
        mask |= 1 << x;
    }
    c.contains(mask).then_some(mask)
}

pub fn is_feasible(c: &SimplicialComplex, alpha: &[usize]) -> bool {
    feasible_mask(c, alpha).is_some()
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `|Cnt_k(α)|`: length-`k` words `β` with `αβ` feasible.
pub fn cnt(c: &SimplicialComplex, alpha: &[usize], k: usize) -> BigInt {
    match feasible_mask(c, alpha) {
        Some(mask) => factorial(k) * c.extension_count(mask, k),
        None => BigInt::zero(),
    }
}

/// `|Cnt_k|` from a face mask directly.
pub(crate) fn cnt_mask(c: &SimplicialComplex, mask: Option<u64>, k: usize) -> BigInt {
    match mask {
        Some(mask) if c.contains(mask) => factorial(k) * c.extension_count(mask, k),
        _ => BigInt::zero(),
    }
}

/// Reference count by enumerating words letter by letter.
pub fn cnt_by_enumeration(c: &SimplicialComplex, alpha: &[usize], k: usize) -> u64 {
    let Some(mask) = feasible_mask(c, alpha) else { return 0 };
    fn walk(c: &SimplicialComplex, mask: u64, k: usize) -> u64 {
        if k == 0 {
            return 1;
        }
        (0..c.ground_size()).filter(|&x| mask >> x & 1 == 0 && c.contains(mask | 1 << x)).map(|x| walk(c, mask | 1 << x, k - 1)).sum()
    }
    walk(c, mask, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Matroid;

    #[test]
    fn counts_on_u24() {
        let u = Matroid::uniform(4, 2).unwrap();
        let c = u.complex();
        assert_eq!(cnt(c, &[], 2), BigInt::from(12));
        assert_eq!(cnt(c, &[], 0), BigInt::one());
        assert_eq!(cnt(c, &[0], 1), BigInt::from(3));
        assert_eq!(cnt(c, &[0, 1, 2], 0), BigInt::zero());
        assert_eq!(cnt(c, &[0, 0], 0), BigInt::zero());
        assert_eq!(cnt_by_enumeration(c, &[], 2), 12);
    }

    #[test]
    fn infeasible_words() {
        let u = Matroid::uniform(3, 2).unwrap();
        assert!(!is_feasible(u.complex(), &[1, 1]));
        assert!(!is_feasible(u.complex(), &[5]));
        assert!(!is_feasible(u.complex(), &[0, 1, 2]));
        assert_eq!(cnt(u.complex(), &[0, 1, 2], 1), BigInt::zero());
    }
}
