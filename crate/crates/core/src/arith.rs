//! Bernoulli numbers, harmonic numbers, binomials, factorials and the
//! alternating finite-difference sum, all over exact rationals.
//!
//! The Bernoulli convention is fixed globally to `B_1 = -1/2` (generating
//! function `t/(e^t - 1)`); it falls straight out of the defining recurrence
//! `sum_{j=0}^{m} C(m+1, j) B_j = 0` used here. The tensor-algebra
//! differential squares to zero only under this convention, which is what
//! pins it.

use std::sync::Mutex;

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use once_cell::sync::Lazy;
use thiserror::Error;

use crate::rat::{rat, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("harmonic number H_0 is undefined; need n >= 1")]
    HarmonicZero,
}

/// Memoized table of Bernoulli numbers under the `B_1 = -1/2` convention.
///
/// Values are computed with the defining recurrence
/// `B_m = -1/(m+1) * sum_{j=0}^{m-1} C(m+1, j) B_j` and cached. The table is
/// internally synchronized, so concurrent readers are fine and the result is
/// independent of interleaving.
pub struct BernoulliTable {
    values: Mutex<Vec<Rat>>,
}

impl BernoulliTable {
    pub fn new() -> Self {
        BernoulliTable {
            values: Mutex::new(vec![rat(1)]),
        }
    }

    /// `B_k`, computing and caching any missing prefix of the table.
    pub fn get(&self, k: usize) -> Rat {
        let mut values = self.values.lock().expect("bernoulli table poisoned");
        while values.len() <= k {
            let m = values.len();
            let mut sum = Rat::zero();
            for (j, b) in values.iter().enumerate() {
                sum += Rat::from_integer(binomial_int(m + 1, j)) * b;
            }
            let next = -sum / rat(m as i64 + 1);
            values.push(next);
        }
        values[k].clone()
    }

    /// Number of values currently cached.
    pub fn cached(&self) -> usize {
        self.values.lock().expect("bernoulli table poisoned").len()
    }
}

impl Default for BernoulliTable {
    fn default() -> Self {
        Self::new()
    }
}

static BERNOULLI: Lazy<BernoulliTable> = Lazy::new(BernoulliTable::new);

/// `B_k` under the `B_1 = -1/2` convention, memoized globally.
pub fn bernoulli(k: usize) -> Rat {
    BERNOULLI.get(k)
}

/// Pre-fill the global Bernoulli cache up to `B_k`. Useful before fanning
/// out parallel work so workers only read.
pub fn warm_bernoulli(k: usize) {
    let _ = BERNOULLI.get(k);
}

/// Harmonic number `H_n = sum_{j=1}^{n} 1/j`. Rejects `n = 0`.
pub fn harmonic(n: usize) -> Result<Rat, ArithError> {
    if n == 0 {
        return Err(ArithError::HarmonicZero);
    }
    let mut sum = Rat::zero();
    for j in 1..=n {
        sum += Rat::new(BigInt::one(), BigInt::from(j));
    }
    Ok(sum)
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// `C(n, k)` as a big integer; zero when `k > n`.
pub fn binomial_int(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(n, k)` as a rational, with the out-of-range-zero contract: the result
/// is 0 whenever `k < 0` or `k > n`. Summation bounds elsewhere in the crate
/// rely on those vanishing values.
pub fn binomial(n: usize, k: i64) -> Rat {
    if k < 0 || k as usize > n {
        return Rat::zero();
    }
    Rat::from_integer(binomial_int(n, k as usize))
}

/// Evaluate a polynomial given by its coefficient list (index = power) at a
/// rational point.
pub fn poly_eval(coeffs: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// The alternating sum `sum_{j=0}^{n} (-1)^j p(j) C(n, j)`.
///
/// Vanishes exactly whenever `deg p < n`, and equals `(-1)^n n!` times the
/// leading coefficient when `deg p = n`.
pub fn finite_difference_sum(coeffs: &[Rat], n: usize) -> Rat {
    let mut acc = Rat::zero();
    for j in 0..=n {
        let term = poly_eval(coeffs, &rat(j as i64)) * Rat::from_integer(binomial_int(n, j));
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Sign of a rational: -1, 0 or 1.
pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
