//! Chebyshev-type sequences, the A ladder, weighted tau sums and the
//! modified binomial coefficient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn overflow() -> Error {
    Error::InvalidArgument("integer overflow in sequence value".into())
}

/// `c_n^{[r]}`: c_1 = 0, c_2 = 1, c_n = r c_{n-1} - c_{n-2}, for any integer n.
pub fn cheb(r: i64, n: i64) -> Result<i64> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("cheb needs r >= 2, got {r}")));
    }
    let (mut lo, mut hi) = (0i64, 1i64); // (c_1, c_2)
    if n >= 2 {
        for _ in 2..n {
            let next = r.checked_mul(hi).and_then(|v| v.checked_sub(lo)).ok_or_else(overflow)?;
            lo = hi;
            hi = next;
        }
        Ok(hi)
    } else {
        // walk down: c_{k-2} = r c_{k-1} - c_k
        for _ in n..1 {
            let prev = r.checked_mul(lo).and_then(|v| v.checked_sub(hi)).ok_or_else(overflow)?;
            hi = lo;
            lo = prev;
        }
        Ok(lo)
    }
}

/// Values `c_from ..= c_to`.
pub fn cheb_range(r: i64, from: i64, to: i64) -> Result<Vec<i64>> {
    (from..=to).map(|n| cheb(r, n)).collect()
}

/// `A_i = p c_{i+1} + q c_i`.
pub fn a_coeff(p: i64, q: i64, r: i64, i: i64) -> Result<i64> {
    let a = p.checked_mul(cheb(r, i + 1)?).ok_or_else(overflow)?;
    let b = q.checked_mul(cheb(r, i)?).ok_or_else(overflow)?;
    a.checked_add(b).ok_or_else(overflow)
}

/// A tau vector `(τ_0, …, τ_{n-2})` together with the data fixing its weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauSequence {
    pub taus: Vec<i64>,
    pub r: i64,
    pub p: i64,
    pub q: i64,
}

impl TauSequence {
    pub fn new(taus: Vec<i64>, r: i64, p: i64, q: i64) -> Self {
        TauSequence { taus, r, p, q }
    }

    /// The index n of the variable, i.e. `taus.len() + 1`.
    pub fn n(&self) -> i64 {
        self.taus.len() as i64 + 1
    }

    pub fn a(&self, i: i64) -> Result<i64> {
        a_coeff(self.p, self.q, self.r, i)
    }
}

/// `(s_0, …, s_{n-1})` with `s_i = Σ_{j<i} c_{i-j+1} τ_j`.
pub fn weighted_sums(t: &TauSequence) -> Result<Vec<i64>> {
    weighted_sums_of(t.r, &t.taus)
}

/// Same as [`weighted_sums`] for a bare slice. Uses the recurrence
/// `s_i = r s_{i-1} - s_{i-2} + τ_{i-1}` (with `s_{-1} = 0`).
pub fn weighted_sums_of(r: i64, taus: &[i64]) -> Result<Vec<i64>> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("weighted sums need r >= 2, got {r}")));
    }
    let mut s = Vec::with_capacity(taus.len() + 1);
    s.push(0i64);
    let mut prev = 0i64;
    for (i, &tau) in taus.iter().enumerate() {
        let cur = s[i];
        let next = r
            .checked_mul(cur)
            .and_then(|v| v.checked_sub(prev))
            .and_then(|v| v.checked_add(tau))
            .ok_or_else(overflow)?;
        prev = cur;
        s.push(next);
    }
    Ok(s)
}

/// The modified binomial coefficient `[A; B]`: 0 if A < B, 1 if A = B, and
/// otherwise `Π_{i<A-B} (A-i)/(A-B-i)`, i.e. the generalized `C(A, A-B)`.
pub fn mod_binom(a: i64, b: i64) -> BigInt {
    if a < b {
        return BigInt::zero();
    }
    if a == b {
        return BigInt::one();
    }
    let k = a - b;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(a) - BigInt::from(i);
        den *= BigInt::from(k - i);
    }
    let (q, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "modified binomial [{a};{b}] is not integral");
    q
}

/// Ordinary binomial coefficient, zero outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cheb_table_r3() {
        assert_eq!(cheb_range(3, -1, 7).unwrap(), vec![-3, -1, 0, 1, 3, 8, 21, 55, 144]);
    }

    #[test]
    fn cheb_r2_is_linear() {
        for n in -20..=20 {
            assert_eq!(cheb(2, n).unwrap(), n - 1);
        }
    }

    #[test]
    fn cheb_rejects_small_r() {
        assert!(cheb(1, 3).is_err());
        assert!(cheb(0, 1).is_err());
    }

    #[test]
    fn a_coeff_examples() {
        for i in -3..10 {
            assert_eq!(a_coeff(1, 0, 2, i).unwrap(), i);
        }
        assert_eq!(a_coeff(4, 5, 3, 1).unwrap(), 4);
        assert_eq!(a_coeff(4, 5, 3, 2).unwrap(), 3 * 4 + 5);
    }

    #[test]
    fn weighted_sum_examples() {
        let s = weighted_sums(&TauSequence::new(vec![5], 3, 1, 0)).unwrap();
        assert_eq!(s, vec![0, 5]);
        let s = weighted_sums(&TauSequence::new(vec![5, 2], 3, 1, 0)).unwrap();
        assert_eq!(s, vec![0, 5, 3 * 5 + 2]);
        assert_eq!(weighted_sums_of(4, &[0, 0, 0]).unwrap(), vec![0; 4]);
    }

    #[test]
    fn mod_binom_examples() {
        assert_eq!(mod_binom(5, 5), BigInt::from(1));
        assert_eq!(mod_binom(2, 4), BigInt::from(0));
        assert_eq!(mod_binom(6, 2), BigInt::from(15));
        assert_eq!(mod_binom(-2, -4), BigInt::from(3));
        assert_eq!(mod_binom(-2, -3), BigInt::from(-2));
        assert_eq!(mod_binom(3, -1), BigInt::from(0));
    }

    proptest! {
        #[test]
        fn weighted_sums_match_definition(r in 2i64..6, taus in proptest::collection::vec(-20i64..20, 0..10)) {
            let s = weighted_sums_of(r, &taus).unwrap();
            for i in 0..s.len() {
                let mut direct = 0i64;
                for (j, tau) in taus.iter().enumerate().take(i) {
                    direct += cheb(r, (i - j + 1) as i64).unwrap() * tau;
                }
                prop_assert_eq!(s[i], direct);
            }
        }

        #[test]
        fn mod_binom_matches_binomial_for_nonnegative_top(a in 0i64..40, b in -10i64..50) {
            prop_assert_eq!(mod_binom(a, b), binom(a, a - b));
        }
    }
}
