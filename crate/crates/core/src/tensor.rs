//! Length-truncated free tensor algebra on the graded alphabet
//! `{alpha, beta, x}` with the differential whose square encodes the whole
//! identity family.
//!
//! `alpha` and `beta` sit in degree -1, `x` in degree 0. A [`Series`] stores
//! exact coefficients on words of length at most its truncation; truncation
//! only forgets longer words, it never perturbs a stored coefficient. That
//! is sound because the differential never shortens a word, so the
//! coefficient of any word of length `<= L` is already exact when computed
//! at truncation `L`.
//!
//! The differential is
//!
//! ```text
//! D(alpha) = -alpha alpha
//! D(beta)  = -beta beta
//! D(x)     = x beta - beta x + sum_{p,q} c_{(p,q)} x^p (beta - alpha) x^q
//! ```
//!
//! with `c_{(p,q)} = (-1)^q B_{p+q} / (p! q!)`, extended as a derivation
//! with the Koszul rule: passing a prefix of degree `d` contributes
//! `(-1)^d`. `D^2 = 0` holds exactly at every truncation, and fails already
//! at word length 3 if the Bernoulli convention is flipped to `B_1 = +1/2`;
//! [`Differential::flipped_b1`] exposes that negative control.
//!
//! The degree-zero generator transports `alpha` to `beta`:
//! [`gauge_transport`] evaluates the time-1 flow of
//! `u' = D(x) - ad_x(u)`, `u(0) = alpha`, i.e.
//! `sum_i (-1)^i ad_x^i(alpha)/i! + sum_i (-1)^i ad_x^i(Dx)/(i+1)!`,
//! and the result is the single word `beta` at every truncation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::{One, Zero};
use serde_json::json;
use thiserror::Error;

use crate::arith::{bernoulli, factorial};
use crate::rat::{frac, rat_string, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("operand is not homogeneous in degree")]
    Inhomogeneous,
    #[error("expected degree {expected}, found degree {got}")]
    WrongDegree { expected: i64, got: i64 },
}

/// Generator of the algebra. The declaration order fixes the canonical
/// lexicographic order `alpha < beta < x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    Alpha,
    Beta,
    X,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::Alpha, Letter::Beta, Letter::X];

    pub fn degree(self) -> i64 {
        match self {
            Letter::Alpha | Letter::Beta => -1,
            Letter::X => 0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Letter::Alpha => 'α',
            Letter::Beta => 'β',
            Letter::X => 'x',
        }
    }
}

/// A word over the alphabet; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|l| l.degree()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    // canonical order: by length, then lexicographic with alpha < beta < x
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

/// Whether a series is zero, concentrated in one degree, or mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(i64),
    Mixed,
}

/// A formal series with exact coefficients on words of length at most
/// `truncation`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    truncation: usize,
    terms: BTreeMap<Word, Rat>,
}

impl Series {
    pub fn zero(truncation: usize) -> Self {
        Series {
            truncation,
            terms: BTreeMap::new(),
        }
    }

    /// The single-letter series for a generator.
    pub fn generator(l: Letter, truncation: usize) -> Self {
        let mut s = Series::zero(truncation);
        s.add_term(Word::letter(l), Rat::one());
        s
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Add `c * w`, dropping words beyond the truncation and cleaning zeros.
    pub fn add_term(&mut self, w: Word, c: Rat) {
        if c.is_zero() || w.len() > self.truncation {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut deg = None;
        for w in self.terms.keys() {
            match deg {
                None => deg = Some(w.degree()),
                Some(d) if d == w.degree() => {}
                Some(_) => return Homogeneity::Mixed,
            }
        }
        match deg {
            None => Homogeneity::Zero,
            Some(d) => Homogeneity::Degree(d),
        }
    }

    /// Forget all words longer than `l`.
    pub fn truncate_to(&self, l: usize) -> Series {
        let mut s = Series::zero(l);
        for (w, c) in &self.terms {
            s.add_term(w.clone(), c.clone());
        }
        s
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut s = self.truncate_to(self.truncation.min(other.truncation));
        for (w, c) in &other.terms {
            s.add_term(w.clone(), c.clone());
        }
        s
    }

    pub fn sub(&self, other: &Series) -> Series {
        let mut s = self.truncate_to(self.truncation.min(other.truncation));
        for (w, c) in &other.terms {
            s.add_term(w.clone(), -c.clone());
        }
        s
    }

    pub fn scale(&self, factor: &Rat) -> Series {
        let mut s = Series::zero(self.truncation);
        for (w, c) in &self.terms {
            s.add_term(w.clone(), c * factor);
        }
        s
    }

    pub fn neg(&self) -> Series {
        self.scale(&-Rat::one())
    }

    /// JSON form `{truncation, terms: [{word, coeff}]}` in canonical word
    /// order.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(w, c)| json!({"word": w.to_string(), "coeff": rat_string(c)}))
            .collect();
        json!({"truncation": self.truncation, "terms": terms})
    }
}

/// Concatenation product, truncated at the smaller operand truncation.
pub fn product(u: &Series, v: &Series) -> Series {
    let trunc = u.truncation.min(v.truncation);
    let mut s = Series::zero(trunc);
    for (wu, cu) in &u.terms {
        if wu.len() > trunc {
            continue;
        }
        for (wv, cv) in &v.terms {
            if wu.len() + wv.len() > trunc {
                continue;
            }
            s.add_term(wu.concat(wv), cu * cv);
        }
    }
    s
}

/// Graded commutator `uv - (-1)^{|u||v|} vu` of homogeneous operands.
pub fn bracket(u: &Series, v: &Series) -> Result<Series, TensorError> {
    let (du, dv) = match (u.homogeneity(), v.homogeneity()) {
        (Homogeneity::Mixed, _) | (_, Homogeneity::Mixed) => {
            return Err(TensorError::Inhomogeneous)
        }
        (Homogeneity::Zero, _) | (_, Homogeneity::Zero) => {
            return Ok(Series::zero(u.truncation.min(v.truncation)))
        }
        (Homogeneity::Degree(a), Homogeneity::Degree(b)) => (a, b),
    };
    let uv = product(u, v);
    let vu = product(v, u);
    Ok(if (du * dv).rem_euclid(2) == 0 {
        uv.sub(&vu)
    } else {
        uv.add(&vu)
    })
}

/// `ad_x(u) = xu - ux`. No homogeneity needed since `x` has degree 0.
fn ad_x(x: &Series, u: &Series) -> Series {
    product(x, u).sub(&product(u, x))
}

/// The word `x^p m x^q`.
fn sandwich(p: usize, mid: Letter, q: usize) -> Word {
    let mut letters = vec![Letter::X; p + q + 1];
    letters[p] = mid;
    Word(letters)
}

/// The differential, with a switch for the `B_1 = +1/2` negative control.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Differential {
    flip_b1: bool,
}

impl Differential {
    /// The genuine differential, `B_1 = -1/2`.
    pub fn standard() -> Self {
        Differential { flip_b1: false }
    }

    /// Negative control: same formulas with `B_1 = +1/2`. Its square does
    /// not vanish.
    pub fn flipped_b1() -> Self {
        Differential { flip_b1: true }
    }

    pub fn is_flipped(&self) -> bool {
        self.flip_b1
    }

    fn bern(&self, k: usize) -> Rat {
        if k == 1 && self.flip_b1 {
            frac(1, 2)
        } else {
            bernoulli(k)
        }
    }

    /// `c_{(p,q)}` under this convention.
    fn c(&self, p: usize, q: usize) -> Rat {
        let val = self.bern(p + q) / Rat::from_integer(factorial(p) * factorial(q));
        if q % 2 == 0 {
            val
        } else {
            -val
        }
    }

    /// Exact image of a generator, truncated at length `l`.
    pub fn d_generator(&self, g: Letter, l: usize) -> Series {
        let mut s = Series::zero(l);
        match g {
            Letter::Alpha => {
                s.add_term(Word(vec![Letter::Alpha, Letter::Alpha]), -Rat::one());
            }
            Letter::Beta => {
                s.add_term(Word(vec![Letter::Beta, Letter::Beta]), -Rat::one());
            }
            Letter::X => {
                s.add_term(Word(vec![Letter::X, Letter::Beta]), Rat::one());
                s.add_term(Word(vec![Letter::Beta, Letter::X]), -Rat::one());
                // sum over p+q = k of c_{(p,q)} x^p (beta - alpha) x^q,
                // words of length k+1 <= l
                for k in 0..l {
                    for p in 0..=k {
                        let q = k - p;
                        let c = self.c(p, q);
                        if c.is_zero() {
                            continue;
                        }
                        s.add_term(sandwich(p, Letter::Beta, q), c.clone());
                        s.add_term(sandwich(p, Letter::Alpha, q), -c);
                    }
                }
            }
        }
        s
    }

    /// Derivation extension to a word: replace each letter in turn by its
    /// image, signed by the degree of the prefix already passed.
    pub fn d_word(&self, w: &Word, l: usize) -> Series {
        let mut out = Series::zero(l);
        if w.len() > l {
            return out;
        }
        let mut prefix_odd = false;
        for (i, &letter) in w.0.iter().enumerate() {
            let avail = l + 1 - w.len();
            let image = self.d_generator(letter, avail);
            let prefix = &w.0[..i];
            let suffix = &w.0[i + 1..];
            for (dw, c) in image.terms() {
                let mut word = Vec::with_capacity(prefix.len() + dw.len() + suffix.len());
                word.extend_from_slice(prefix);
                word.extend_from_slice(&dw.0);
                word.extend_from_slice(suffix);
                let signed = if prefix_odd { -c.clone() } else { c.clone() };
                out.add_term(Word(word), signed);
            }
            prefix_odd ^= letter.degree().rem_euclid(2) == 1;
        }
        out
    }

    /// Linear extension to a series, at the series' own truncation.
    pub fn d_series(&self, s: &Series) -> Series {
        let l = s.truncation;
        let mut out = Series::zero(l);
        for (w, c) in s.terms() {
            let dw = self.d_word(w, l);
            for (w2, c2) in dw.terms() {
                out.add_term(w2.clone(), c * c2);
            }
        }
        out
    }
}

/// `D(g)` for a generator under the standard convention.
pub fn d_generator(g: Letter, l: usize) -> Series {
    Differential::standard().d_generator(g, l)
}

/// `D(s)` under the standard convention.
pub fn d_series(s: &Series) -> Series {
    Differential::standard().d_series(s)
}

/// Maurer-Cartan residual `D(s) + s s` of a degree -1 series.
pub fn mc_residual(s: &Series) -> Result<Series, TensorError> {
    match s.homogeneity() {
        Homogeneity::Zero => Ok(Series::zero(s.truncation)),
        Homogeneity::Degree(-1) => Ok(d_series(s).add(&product(s, s))),
        Homogeneity::Degree(d) => Err(TensorError::WrongDegree {
            expected: -1,
            got: d,
        }),
        Homogeneity::Mixed => Err(TensorError::Inhomogeneous),
    }
}

/// Nonzero words of `D(D(g))` per generator; all empty exactly when the
/// differential squares to zero at this truncation.
#[derive(Debug, Clone)]
pub struct DSquaredReport {
    pub truncation: usize,
    pub residuals: Vec<(Letter, Vec<(Word, Rat)>)>,
}

impl DSquaredReport {
    pub fn is_zero(&self) -> bool {
        self.residuals.iter().all(|(_, terms)| terms.is_empty())
    }
}

/// Compute `D^2` on all three generators at truncation `l`.
pub fn d_squared_check(l: usize) -> DSquaredReport {
    d_squared_check_with(l, Differential::standard())
}

pub fn d_squared_check_with(l: usize, diff: Differential) -> DSquaredReport {
    let residuals = Letter::ALL
        .iter()
        .map(|&g| {
            let dd = diff.d_series(&diff.d_generator(g, l));
            let terms: Vec<(Word, Rat)> = dd.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
            (g, terms)
        })
        .collect();
    DSquaredReport {
        truncation: l,
        residuals,
    }
}

/// Transport `alpha` along the flow of `x`: the time-1 solution of
/// `u' = D(x) - ad_x(u)` with `u(0) = alpha`, summed in closed form. The
/// result is exactly the word `beta` at every truncation.
pub fn gauge_transport(l: usize) -> Series {
    gauge_transport_with(l, Differential::standard())
}

pub fn gauge_transport_with(l: usize, diff: Differential) -> Series {
    let x = Series::generator(Letter::X, l);
    let alpha = Series::generator(Letter::Alpha, l);
    let dx = diff.d_generator(Letter::X, l);

    let mut acc = Series::zero(l);
    // sum_i (-1)^i ad_x^i(alpha) / i!
    let mut term = alpha;
    let mut i: usize = 0;
    while !term.is_zero() {
        let coeff = Rat::new(
            if i % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            },
            factorial(i),
        );
        acc = acc.add(&term.scale(&coeff));
        term = ad_x(&x, &term);
        i += 1;
    }
    // + sum_i (-1)^i ad_x^i(Dx) / (i+1)!
    let mut term = dx;
    let mut i: usize = 0;
    while !term.is_zero() {
        let coeff = Rat::new(
            if i % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            },
            factorial(i + 1),
        );
        acc = acc.add(&term.scale(&coeff));
        term = ad_x(&x, &term);
        i += 1;
    }
    acc
}
