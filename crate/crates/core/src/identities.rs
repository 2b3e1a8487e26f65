//! The parameterized family of Euler-type convolution identities for
//! Bernoulli numbers, its condensed forms, and the Miki/Euler
//! reconstructions.
//!
//! For an even `n >= 4` and a triple `(a, b, c)` of naturals with
//! `a + b + c = n - 1`, [`lambda_vector`] produces rational coefficients
//! `(lambda_0, ..., lambda_n)` with
//!
//! ```text
//! sum_{k=0}^{n} lambda_k B_k B_{n-k} = 0
//! ```
//!
//! exactly. The same vanishing is computed by a second, independent route,
//! [`gamma_oracle`], which expands the square of the tensor-algebra
//! differential coefficient by coefficient; the two routes cross-check each
//! other.
//!
//! The sign convention: the sums inside `lambda_k` carry `(-1)^(k-l)`, so
//! that the classical Euler coefficients come out as `(n+1, C(n,1), ...,
//! C(n,n-1), 0)` on the nose. Flipping to `(-1)^l` would flip `lambda_k` at
//! odd `k`, which multiplies a vanishing product `B_k B_{n-k}` and so never
//! affects an identity, but it would break the componentwise Euler
//! specialization.
//!
//! A condensed identity folds `lambda_{n-k}` onto `lambda_k`. Two folds are
//! in use and they differ only at `k = n/2`:
//!
//! * `Definition`: `mu_{n/2} = lambda_{n/2}` (keeps the condensed sum zero),
//! * `Symmetric`: `mu_{n/2} = 2 lambda_{n/2}` (what the closed four-term
//!   formula of [`mu_closed_form`] structurally produces).
//!
//! Only coordinates where `B_k B_{n-k}` is nonzero carry information; the
//! essential index set `E(n)` and [`EssentialVector`] make that restriction
//! explicit. The Miki reconstruction holds with Symmetric-mode folds and the
//! Euler reconstruction with Definition-mode folds; each function pins its
//! mode.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{One, Zero};
use serde_json::json;
use thiserror::Error;

use crate::arith::{bernoulli, binomial_int, factorial, harmonic};
use crate::linalg::{in_span, QMatrix};
use crate::rat::{rat, rat_string, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("triple ({a},{b},{c}) does not satisfy a+b+c = n-1 for n = {n}")]
    TripleSum {
        n: usize,
        a: usize,
        b: usize,
        c: usize,
    },
    #[error("n = {0} must be an even integer >= 4")]
    BadN(usize),
    #[error("gamma oracle needs n >= 1")]
    GammaBadN,
}

/// A valid parameter triple: `n` even, `n >= 4`, components summing to `n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triple {
    n: usize,
    a: usize,
    b: usize,
    c: usize,
}

impl Triple {
    pub fn new(n: usize, a: usize, b: usize, c: usize) -> Result<Self, IdentityError> {
        if n < 4 || n % 2 != 0 {
            return Err(IdentityError::BadN(n));
        }
        if a + b + c + 1 != n {
            return Err(IdentityError::TripleSum { n, a, b, c });
        }
        Ok(Triple { n, a, b, c })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn abc(&self) -> (usize, usize, usize) {
        (self.a, self.b, self.c)
    }

    /// The triple with `a` and `c` exchanged.
    pub fn reversed(&self) -> Triple {
        Triple {
            n: self.n,
            a: self.c,
            b: self.b,
            c: self.a,
        }
    }
}

/// All triples over the plane `a + b + c = n - 1`, in lexicographic order.
pub fn triples(n: usize) -> Result<Vec<Triple>, IdentityError> {
    if n < 4 || n % 2 != 0 {
        return Err(IdentityError::BadN(n));
    }
    let mut out = Vec::new();
    for a in 0..=(n - 1) {
        for b in 0..=(n - 1 - a) {
            let c = n - 1 - a - b;
            out.push(Triple { n, a, b, c });
        }
    }
    Ok(out)
}

/// Full coefficient vector `(lambda_0, ..., lambda_n)` of an Euler-type
/// identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullIdentity {
    pub n: usize,
    pub lambda: Vec<Rat>,
}

/// Which value the fold assigns to the middle coefficient `mu_{n/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CondenseMode {
    /// `mu_{n/2} = lambda_{n/2}`; preserves the zero sum.
    Definition,
    /// `mu_{n/2} = 2 lambda_{n/2}`; matches the closed four-term formula.
    Symmetric,
}

impl CondenseMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            CondenseMode::Definition => "definition",
            CondenseMode::Symmetric => "symmetric",
        }
    }
}

/// Folded coefficient vector `(mu_0, ..., mu_{n/2})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondensedIdentity {
    pub n: usize,
    pub mode: CondenseMode,
    pub mu: Vec<Rat>,
}

/// A condensed vector restricted to the essential index set `E(n)`, the
/// indices `k <= n/2` where `B_k B_{n-k}` is nonzero. Only these coordinates
/// constrain an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialVector {
    pub n: usize,
    pub coords: BTreeMap<usize, Rat>,
}

impl EssentialVector {
    /// Restrict a length `n/2 + 1` coefficient slice to `E(n)`.
    pub fn project(n: usize, mu: &[Rat]) -> EssentialVector {
        let coords = essential_indices(n)
            .into_iter()
            .map(|k| (k, mu[k].clone()))
            .collect();
        EssentialVector { n, coords }
    }

    /// Coordinates as a dense vector in increasing index order.
    pub fn dense(&self) -> Vec<Rat> {
        self.coords.values().cloned().collect()
    }
}

/// `E(n) = {0} ∪ {even k, 2 <= k <= n/2}` for even `n`. Its size is
/// `floor(n/4) + 1`.
pub fn essential_indices(n: usize) -> Vec<usize> {
    let mut idx = vec![0];
    idx.extend((2..=n / 2).step_by(2));
    idx
}

/// `c_{(p,q)} = (-1)^q B_{p+q} / (p! q!)`, the coefficient of `x^p y x^q` in
/// the degree-zero part of the differential.
pub fn c_coeff(p: usize, q: usize) -> Rat {
    let b = bernoulli(p + q);
    let denom = factorial(p) * factorial(q);
    let val = b / Rat::from_integer(denom);
    if q % 2 == 0 {
        val
    } else {
        -val
    }
}

fn sign_big(e: usize) -> BigInt {
    if e % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `sum_{l=max(0,lo)}^{hi} (-1)^(m-l) C(m, l)`; empty ranges contribute 0.
fn alt_binom_sum(m: usize, lo: i64, hi: i64) -> BigInt {
    let mut acc = BigInt::zero();
    let mut l = lo.max(0);
    while l <= hi {
        let term = binomial_int(m, l as usize);
        if (m as i64 - l) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        l += 1;
    }
    acc
}

/// Coefficients of the Euler-type identity attached to a triple.
pub fn lambda_vector(t: &Triple) -> FullIdentity {
    let n = t.n;
    let (a, b, c) = (t.a as i64, t.b as i64, t.c as i64);
    let lambda = (0..=n)
        .map(|k| {
            let ki = k as i64;
            let lo = ki - b;
            let s1 = alt_binom_sum(k, lo, a.min(ki));
            let s2 = alt_binom_sum(k, lo, c.min(ki));
            let term1 = sign_big(t.c) * binomial_int(n - k, t.c) * s1;
            let term2 = sign_big(t.a) * binomial_int(n - k, t.a) * s2;
            Rat::from_integer(binomial_int(n, k) * (term1 - term2))
        })
        .collect();
    FullIdentity { n, lambda }
}

/// The convolution sum `sum_k lambda_k B_k B_{n-k}`. Zero for every vector
/// produced by [`lambda_vector`] or [`euler_vector`].
pub fn evaluate_identity(v: &FullIdentity) -> Rat {
    let n = v.n;
    v.lambda
        .iter()
        .enumerate()
        .take(n + 1)
        .fold(Rat::zero(), |acc, (k, l)| {
            acc + l * bernoulli(k) * bernoulli(n - k)
        })
}

/// Condensed sum `sum_{k<=n/2} mu_k B_k B_{n-k}`.
pub fn evaluate_condensed(v: &CondensedIdentity) -> Rat {
    let n = v.n;
    v.mu.iter()
        .enumerate()
        .take(n / 2 + 1)
        .fold(Rat::zero(), |acc, (k, m)| {
            acc + m * bernoulli(k) * bernoulli(n - k)
        })
}

/// The independent oracle: the coefficient of the word `x^a y x^b y x^c` in
/// the square of the differential, assembled directly from the `c_{(p,q)}`.
/// It must vanish for every `n >= 1` and every triple with
/// `a + b + c = n - 1`, including odd `n` and the `b = 0` branch, where the
/// word `x^a y y x^c` contributes the extra term `c_{(a,c)}`.
pub fn gamma_oracle(n: usize, a: usize, b: usize, c: usize) -> Result<Rat, IdentityError> {
    if n == 0 {
        return Err(IdentityError::GammaBadN);
    }
    if a + b + c + 1 != n {
        return Err(IdentityError::TripleSum { n, a, b, c });
    }
    let mut gamma = Rat::zero();
    // sum_{p=1}^{a+b+1} c_{(p,c)} sum_{i+j=p-1, i<=a, j<=b} c_{(a-i, b-j)}
    for p in 1..=(a + b + 1) {
        let mut inner = Rat::zero();
        for i in 0..=(p - 1).min(a) {
            let j = p - 1 - i;
            if j > b {
                continue;
            }
            inner += c_coeff(a - i, b - j);
        }
        gamma += c_coeff(p, c) * inner;
    }
    // minus sum_{q=1}^{b+c+1} c_{(a,q)} sum_{i+j=q-1, i<=b, j<=c} c_{(b-i, c-j)}
    for q in 1..=(b + c + 1) {
        let mut inner = Rat::zero();
        for i in 0..=(q - 1).min(b) {
            let j = q - 1 - i;
            if j > c {
                continue;
            }
            inner += c_coeff(b - i, c - j);
        }
        gamma -= c_coeff(a, q) * inner;
    }
    if b == 0 {
        gamma += c_coeff(a, c);
    }
    Ok(gamma)
}

/// Fold a full vector to `(mu_0, ..., mu_{n/2})`.
pub fn condense(v: &FullIdentity, mode: CondenseMode) -> CondensedIdentity {
    let n = v.n;
    let half = n / 2;
    let mu = (0..=half)
        .map(|k| {
            if k < half {
                &v.lambda[k] + &v.lambda[n - k]
            } else {
                match mode {
                    CondenseMode::Definition => v.lambda[half].clone(),
                    CondenseMode::Symmetric => &v.lambda[half] + &v.lambda[half],
                }
            }
        })
        .collect();
    CondensedIdentity { n, mode, mu }
}

/// Closed four-term formula for the condensed coefficients. Componentwise
/// equal to `condense(lambda_vector(t), Symmetric)`, including the doubled
/// middle coefficient.
pub fn mu_closed_form(t: &Triple) -> CondensedIdentity {
    let n = t.n;
    let (a, b, c) = (t.a as i64, t.b as i64, t.c as i64);
    let half = n / 2;
    let mu = (0..=half)
        .map(|k| {
            let ki = k as i64;
            let nk = (n - k) as i64;
            let t1 = sign_big(t.c) * binomial_int(n - k, t.c) * alt_binom_sum(k, ki - b, a.min(ki));
            let t2 = sign_big(t.c) * binomial_int(k, t.c) * alt_binom_sum(n - k, nk - b, a.min(nk));
            let t3 = sign_big(t.a) * binomial_int(n - k, t.a) * alt_binom_sum(k, ki - b, c.min(ki));
            let t4 = sign_big(t.a) * binomial_int(k, t.a) * alt_binom_sum(n - k, nk - b, c.min(nk));
            Rat::from_integer(binomial_int(n, k) * (t1 + t2 - t3 - t4))
        })
        .collect();
    CondensedIdentity {
        n,
        mode: CondenseMode::Symmetric,
        mu,
    }
}

/// Restrict a condensed vector to its essential coordinates.
pub fn essential_projection(v: &CondensedIdentity) -> EssentialVector {
    EssentialVector::project(v.n, &v.mu)
}

/// The classical Euler coefficients: `lambda_0 = n+1`, `lambda_k = C(n,k)`
/// for `0 < k < n`, `lambda_n = 0`. Equals `lambda_vector` at the triple
/// `(n-1, 0, 0)`.
pub fn euler_vector(n: usize) -> Result<FullIdentity, IdentityError> {
    if n < 4 || n % 2 != 0 {
        return Err(IdentityError::BadN(n));
    }
    let mut lambda = Vec::with_capacity(n + 1);
    lambda.push(rat(n as i64 + 1));
    for k in 1..n {
        lambda.push(Rat::from_integer(binomial_int(n, k)));
    }
    lambda.push(Rat::zero());
    Ok(FullIdentity { n, lambda })
}

/// Coefficients of the condensed Miki identity: `M_0 = -H_n` and
/// `M_k = n/((n-k)k) (1 - C(n,k))` for `1 <= k <= n/2`.
pub fn miki_vector(n: usize) -> Result<Vec<Rat>, IdentityError> {
    if n < 4 || n % 2 != 0 {
        return Err(IdentityError::BadN(n));
    }
    let mut m = Vec::with_capacity(n / 2 + 1);
    m.push(-harmonic(n).expect("n >= 4"));
    for k in 1..=n / 2 {
        let factor = Rat::new(BigInt::from(n), BigInt::from((n - k) * k));
        m.push(factor * (Rat::one() - Rat::from_integer(binomial_int(n, k))));
    }
    Ok(m)
}

/// `g(j)`: the condensed vector of the triple `(0, n-1-j, j)`.
fn g_vector(n: usize, j: usize, mode: CondenseMode) -> Vec<Rat> {
    let t = Triple::new(n, 0, n - 1 - j, j).expect("valid g triple");
    condense(&lambda_vector(&t), mode).mu
}

/// Rebuild the Miki coefficients as the combination
/// `sum_{j=0}^{n/2-1} g(j)/(j+1) + g(j+1)/(n-j)` of Symmetric-mode folds,
/// restricted to essential coordinates. Equals the projection of
/// [`miki_vector`].
pub fn miki_reconstruction(n: usize) -> Result<EssentialVector, IdentityError> {
    if n < 4 || n % 2 != 0 {
        return Err(IdentityError::BadN(n));
    }
    let half = n / 2;
    let mut acc = vec![Rat::zero(); half + 1];
    for j in 0..half {
        let gj = g_vector(n, j, CondenseMode::Symmetric);
        let gj1 = g_vector(n, j + 1, CondenseMode::Symmetric);
        let w0 = Rat::new(BigInt::one(), BigInt::from(j + 1));
        let w1 = Rat::new(BigInt::one(), BigInt::from(n - j));
        for k in 0..=half {
            acc[k] += &w0 * &gj[k] + &w1 * &gj1[k];
        }
    }
    Ok(EssentialVector::project(n, &acc))
}

/// Rebuild the condensed Euler coefficients as
/// `-(2/n) sum_{j=0}^{n/2-1} (n-j) g(j) + (j+1) g(j+1)` of Definition-mode
/// folds, restricted to essential coordinates. Equals the projection of
/// `condense(euler_vector(n), Definition)`.
pub fn euler_reconstruction(n: usize) -> Result<EssentialVector, IdentityError> {
    if n < 4 || n % 2 != 0 {
        return Err(IdentityError::BadN(n));
    }
    let half = n / 2;
    let mut acc = vec![Rat::zero(); half + 1];
    for j in 0..half {
        let gj = g_vector(n, j, CondenseMode::Definition);
        let gj1 = g_vector(n, j + 1, CondenseMode::Definition);
        let w0 = rat((n - j) as i64);
        let w1 = rat(j as i64 + 1);
        for k in 0..=half {
            acc[k] += &w0 * &gj[k] + &w1 * &gj1[k];
        }
    }
    let scale = Rat::new(BigInt::from(-2), BigInt::from(n));
    for v in acc.iter_mut() {
        *v = &*v * &scale;
    }
    Ok(EssentialVector::project(n, &acc))
}

/// Dimension of the space of condensed identities on essential coordinates,
/// computed as the kernel dimension of the functional
/// `mu -> sum_{k in E(n)} mu_k B_k B_{n-k}`. Equals `floor(n/4)`.
pub fn identity_space_dimension(n: usize) -> Result<usize, IdentityError> {
    if n < 4 || n % 2 != 0 {
        return Err(IdentityError::BadN(n));
    }
    let row: Vec<Rat> = essential_indices(n)
        .into_iter()
        .map(|k| bernoulli(k) * bernoulli(n - k))
        .collect();
    let cols = row.len();
    let m = QMatrix::from_rows(vec![row], cols).expect("single row");
    Ok(m.kernel_basis().len())
}

/// Essential projections of the condensed vectors of every triple, as rows.
fn image_rows(n: usize, mode: CondenseMode) -> Result<Vec<Vec<Rat>>, IdentityError> {
    Ok(triples(n)?
        .iter()
        .map(|t| essential_projection(&condense(&lambda_vector(t), mode)).dense())
        .collect())
}

/// Rank of the matrix whose rows are the essential projections of the
/// condensed vectors over all triples. Independent of the fold mode, since
/// the modes differ by scaling the middle column by 2.
pub fn image_rank(n: usize, mode: CondenseMode) -> Result<usize, IdentityError> {
    let rows = image_rows(n, mode)?;
    let cols = essential_indices(n).len();
    let m = QMatrix::from_rows(rows, cols).expect("uniform row lengths");
    Ok(m.rank())
}

/// Does the essential Miki vector lie in the span of the Symmetric-mode
/// image rows? Always true: the reconstruction exhibits the combination.
pub fn miki_in_span(n: usize) -> Result<bool, IdentityError> {
    let rows = image_rows(n, CondenseMode::Symmetric)?;
    let v = EssentialVector::project(n, &miki_vector(n)?).dense();
    Ok(in_span(&v, &rows).expect("uniform lengths"))
}

/// Does the essential condensed Euler vector lie in the span of the
/// Definition-mode image rows? Always true.
pub fn euler_in_span(n: usize) -> Result<bool, IdentityError> {
    let rows = image_rows(n, CondenseMode::Definition)?;
    let euler = condense(&euler_vector(n)?, CondenseMode::Definition);
    let v = essential_projection(&euler).dense();
    Ok(in_span(&v, &rows).expect("uniform lengths"))
}

impl FullIdentity {
    /// JSON form with exact rational strings.
    pub fn to_json(&self, triple: Option<&Triple>) -> serde_json::Value {
        let coeffs: Vec<String> = self.lambda.iter().map(rat_string).collect();
        match triple {
            Some(t) => json!({
                "n": self.n,
                "a": t.a,
                "b": t.b,
                "c": t.c,
                "mode": "full",
                "coefficients": coeffs,
            }),
            None => json!({
                "n": self.n,
                "mode": "full",
                "coefficients": coeffs,
            }),
        }
    }
}

impl CondensedIdentity {
    pub fn to_json(&self, triple: Option<&Triple>) -> serde_json::Value {
        let coeffs: Vec<String> = self.mu.iter().map(rat_string).collect();
        match triple {
            Some(t) => json!({
                "n": self.n,
                "a": t.a,
                "b": t.b,
                "c": t.c,
                "mode": self.mode.as_str(),
                "coefficients": coeffs,
            }),
            None => json!({
                "n": self.n,
                "mode": self.mode.as_str(),
                "coefficients": coeffs,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    fn rats(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn c_coeff_examples() {
        assert_eq!(c_coeff(0, 0), rat(1));
        assert_eq!(c_coeff(1, 0), frac(-1, 2));
        assert_eq!(c_coeff(0, 2), frac(1, 12));
    }

    #[test]
    fn lambda_euler_triple() {
        let t = Triple::new(4, 3, 0, 0).unwrap();
        assert_eq!(lambda_vector(&t).lambda, rats(&[5, 4, 6, 4, 0]));
    }

    #[test]
    fn lambda_generic_triple() {
        // even components are fold-invariant; odd components carry the
        // (-1)^(k-l) convention
        let t = Triple::new(4, 0, 2, 1).unwrap();
        assert_eq!(lambda_vector(&t).lambda, rats(&[-5, 12, -6, -12, 0]));
    }

    #[test]
    fn lambda_symmetric_triple_vanishes() {
        let t = Triple::new(4, 1, 1, 1).unwrap();
        assert_eq!(lambda_vector(&t).lambda, rats(&[0, 0, 0, 0, 0]));
    }

    #[test]
    fn evaluate_examples() {
        let t = Triple::new(4, 3, 0, 0).unwrap();
        assert!(evaluate_identity(&lambda_vector(&t)).is_zero());
        let zero = FullIdentity {
            n: 4,
            lambda: rats(&[0, 0, 0, 0, 0]),
        };
        assert!(evaluate_identity(&zero).is_zero());
        let t = Triple::new(4, 0, 2, 1).unwrap();
        assert!(evaluate_identity(&lambda_vector(&t)).is_zero());
    }

    #[test]
    fn gamma_examples() {
        assert!(gamma_oracle(1, 0, 0, 0).unwrap().is_zero());
        assert!(gamma_oracle(2, 1, 0, 0).unwrap().is_zero());
        assert!(gamma_oracle(4, 0, 2, 1).unwrap().is_zero());
        assert!(matches!(
            gamma_oracle(3, 1, 1, 2),
            Err(IdentityError::TripleSum { .. })
        ));
    }

    #[test]
    fn condense_examples() {
        let e4 = euler_vector(4).unwrap();
        assert_eq!(condense(&e4, CondenseMode::Definition).mu, rats(&[5, 8, 6]));
        assert_eq!(condense(&e4, CondenseMode::Symmetric).mu, rats(&[5, 8, 12]));
        let zero = FullIdentity {
            n: 4,
            lambda: rats(&[0, 0, 0, 0, 0]),
        };
        assert_eq!(
            condense(&zero, CondenseMode::Definition).mu,
            rats(&[0, 0, 0])
        );
    }

    #[test]
    fn mu_closed_form_examples() {
        let t = Triple::new(4, 0, 2, 1).unwrap();
        assert_eq!(mu_closed_form(&t).mu, rats(&[-5, 0, -12]));
        let t = Triple::new(4, 1, 1, 1).unwrap();
        assert_eq!(mu_closed_form(&t).mu, rats(&[0, 0, 0]));
        let t = Triple::new(4, 0, 3, 0).unwrap();
        assert_eq!(mu_closed_form(&t).mu, rats(&[0, 0, 0]));
    }

    #[test]
    fn essential_index_examples() {
        assert_eq!(essential_indices(4), vec![0, 2]);
        assert_eq!(essential_indices(6), vec![0, 2]);
        assert_eq!(essential_indices(12), vec![0, 2, 4, 6]);
        for n in (4..=40).step_by(2) {
            assert_eq!(essential_indices(n).len(), n / 4 + 1);
        }
    }

    #[test]
    fn euler_vector_examples() {
        assert_eq!(euler_vector(4).unwrap().lambda, rats(&[5, 4, 6, 4, 0]));
        assert_eq!(
            euler_vector(6).unwrap().lambda,
            rats(&[7, 6, 15, 20, 15, 6, 0])
        );
        assert!(evaluate_identity(&euler_vector(8).unwrap()).is_zero());
        assert!(euler_vector(5).is_err());
        assert!(euler_vector(2).is_err());
    }

    #[test]
    fn miki_vector_examples() {
        let m = miki_vector(4).unwrap();
        assert_eq!(m, vec![frac(-25, 12), rat(-4), rat(-5)]);
        let m6 = miki_vector(6).unwrap();
        assert_eq!(m6[2], frac(-21, 2));
        for n in (4..=20).step_by(2) {
            assert_eq!(miki_vector(n).unwrap()[1], rat(-(n as i64)));
        }
    }

    #[test]
    fn miki_reconstruction_small() {
        let rec = miki_reconstruction(4).unwrap();
        assert_eq!(rec.coords[&0], frac(-25, 12));
        assert_eq!(rec.coords[&2], rat(-5));
        let rec6 = miki_reconstruction(6).unwrap();
        let direct = EssentialVector::project(6, &miki_vector(6).unwrap());
        assert_eq!(rec6, direct);
    }

    #[test]
    fn euler_reconstruction_small() {
        let rec = euler_reconstruction(4).unwrap();
        assert_eq!(rec.coords[&0], rat(5));
        assert_eq!(rec.coords[&2], rat(6));
        let rec8 = euler_reconstruction(8).unwrap();
        let euler = condense(&euler_vector(8).unwrap(), CondenseMode::Definition);
        assert_eq!(rec8, essential_projection(&euler));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(identity_space_dimension(4).unwrap(), 1);
        assert_eq!(identity_space_dimension(10).unwrap(), 2);
        assert_eq!(identity_space_dimension(12).unwrap(), 3);
    }

    #[test]
    fn image_rank_examples() {
        assert_eq!(image_rank(4, CondenseMode::Symmetric).unwrap(), 1);
        assert_eq!(image_rank(12, CondenseMode::Symmetric).unwrap(), 2);
        assert_eq!(
            image_rank(12, CondenseMode::Definition).unwrap(),
            image_rank(12, CondenseMode::Symmetric).unwrap()
        );
    }

    #[test]
    fn span_examples() {
        assert!(miki_in_span(4).unwrap());
        assert!(miki_in_span(12).unwrap());
        assert!(euler_in_span(4).unwrap());
        assert!(euler_in_span(12).unwrap());
    }

    #[test]
    fn triple_validation() {
        assert!(Triple::new(4, 1, 1, 1).is_ok());
        assert!(matches!(
            Triple::new(4, 1, 1, 2),
            Err(IdentityError::TripleSum { .. })
        ));
        assert!(matches!(
            Triple::new(5, 2, 1, 1),
            Err(IdentityError::BadN(5))
        ));
        assert!(matches!(
            Triple::new(2, 1, 0, 0),
            Err(IdentityError::BadN(2))
        ));
    }

    #[test]
    fn triples_count() {
        // C(n+1, 2) points on the plane a+b+c = n-1
        assert_eq!(triples(4).unwrap().len(), 10);
        assert_eq!(triples(12).unwrap().len(), 78);
    }

    #[test]
    fn antisymmetry_under_reversal() {
        for t in triples(8).unwrap() {
            let fwd = lambda_vector(&t);
            let bwd = lambda_vector(&t.reversed());
            for (x, y) in fwd.lambda.iter().zip(&bwd.lambda) {
                assert_eq!(x, &(-y).clone());
            }
        }
    }
}
