//! `w`-cyclic codes over `A_p[w]`.
//!
//! For `p = 6n + 1` and a primitive `beta` with `beta^n = w`, the code of
//! length `n` with parameter `t` is the null space of the `(t+1) x n` matrix
//! whose row `j` holds the powers `1, b_j, b_j^2, ..., b_j^(n-1)` of
//! `b_j = beta^(6j+1)`. Equivalently it is the ideal generated by
//! `g(x) = prod_j (x - b_j)` in `A_p[w][x] / (x^n - w)`, which is closed under
//! multiplication by `x` (a cyclic shift that rotates the wrapped symbol by `w`).
//!
//! With `t = 0` the `6n` single-unit error patterns have distinct nonzero
//! syndromes `e * beta^i`, so the code is perfect and decoding is a table-free
//! discrete logarithm.

mod channel;
mod perfect;
mod word;

use std::sync::Arc;

use serde::Serialize;

pub use channel::ChannelStats;
pub use perfect::{PerfectnessReport, EXHAUSTIVE_SPACE_LIMIT};
pub use word::Word;

use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};
use crate::field::ResidueField;
use crate::Label;

/// Largest number of codewords [`Code::codewords`] will enumerate.
pub const CODEWORD_ENUMERATION_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone)]
pub struct Code {
    field: Arc<ResidueField>,
    n: usize,
    t: usize,
    k: usize,
    parity_check: Vec<Vec<Label>>,
    generator: Vec<Label>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecodeStatus {
    Clean,
    Corrected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeResult {
    pub codeword: Word,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_position: Option<usize>,
    /// Label of the unit that was subtracted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_value: Option<Label>,
    pub status: DecodeStatus,
}

impl Code {
    pub fn build(field: Arc<ResidueField>, t: usize) -> Result<Self> {
        let n = field.n();
        if t >= n {
            return Err(Error::InvalidT { t, n });
        }
        let beta = field.beta();
        let mut parity_check = Vec::with_capacity(t + 1);
        let mut generator = vec![1];
        for j in 0..=t {
            let root = field.pow(beta, (6 * j + 1) as u64)?;
            let row = (0..n)
                .map(|i| field.pow(root, i as u64))
                .collect::<Result<Vec<_>>>()?;
            parity_check.push(row);
            generator = poly_mul(&field, &generator, &[field.neg(root)?, 1])?;
        }
        let code = Code {
            n,
            t,
            k: n - (t + 1),
            parity_check,
            generator,
            field,
        };
        if !code.generator_divides_modulus()? {
            return Err(Error::Invariant("g(x) does not divide x^n - w".into()));
        }
        Ok(code)
    }

    pub fn field(&self) -> &ResidueField {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<ResidueField> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Message length `n - (t + 1)`.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn parity_check(&self) -> &[Vec<Label>] {
        &self.parity_check
    }

    /// Coefficients of `g(x)`, lowest degree first; `g` is monic of degree `t + 1`.
    pub fn generator(&self) -> &[Label] {
        &self.generator
    }

    /// Coefficients of `x^n - w`, lowest degree first.
    pub fn modulus(&self) -> Vec<Label> {
        let mut m = vec![0; self.n + 1];
        m[0] = self.field.label_of(-EisensteinInt::W);
        m[self.n] = 1;
        m
    }

    /// Quotient and remainder of `(x^n - w) / g(x)`.
    pub fn modulus_divided_by_generator(&self) -> Result<(Vec<Label>, Vec<Label>)> {
        poly_divrem(&self.field, &self.modulus(), &self.generator)
    }

    fn generator_divides_modulus(&self) -> Result<bool> {
        let (_, rem) = self.modulus_divided_by_generator()?;
        Ok(rem.iter().all(|&c| c == 0))
    }

    fn check_len(&self, len: usize, expected: usize) -> Result<()> {
        if len == expected {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected,
                actual: len,
            })
        }
    }

    fn check_word(&self, y: &[Label]) -> Result<()> {
        self.check_len(y.len(), self.n)?;
        y.iter().try_for_each(|&l| self.field.check_label(l))
    }

    /// `c(x) = m(x) g(x) mod (x^n - w)`.
    pub fn encode(&self, message: &[Label]) -> Result<Word> {
        self.check_len(message.len(), self.k)?;
        message
            .iter()
            .try_for_each(|&l| self.field.check_label(l))?;
        let product = poly_mul(&self.field, message, &self.generator)?;
        Ok(Word::new(self.reduce(&product)?))
    }

    /// Reduces a polynomial modulo `x^n - w`, folding `x^(n+i)` onto `w x^i`.
    fn reduce(&self, poly: &[Label]) -> Result<Vec<Label>> {
        let w = self.field.r();
        let mut out = poly.to_vec();
        out.resize(out.len().max(self.n), 0);
        for i in (self.n..out.len()).rev() {
            let folded = self.field.mul(w, out[i])?;
            out[i - self.n] = self.field.add(out[i - self.n], folded)?;
        }
        out.truncate(self.n);
        Ok(out)
    }

    /// Multiplication by `x` modulo `x^n - w`: `(w c_{n-1}, c_0, ..., c_{n-2})`.
    pub fn wshift(&self, c: &[Label]) -> Result<Word> {
        self.check_word(c)?;
        let mut out = Vec::with_capacity(self.n);
        out.push(self.field.mul(self.field.r(), c[self.n - 1])?);
        out.extend_from_slice(&c[..self.n - 1]);
        Ok(Word::new(out))
    }

    /// `H y^T`, one label per parity row.
    pub fn syndrome(&self, y: &[Label]) -> Result<Vec<Label>> {
        self.check_word(y)?;
        self.parity_check
            .iter()
            .map(|row| {
                row.iter().zip(y).try_fold(0, |acc, (&h, &yi)| {
                    self.field.add(acc, self.field.mul(h, yi)?)
                })
            })
            .collect()
    }

    pub fn is_codeword(&self, y: &[Label]) -> Result<bool> {
        Ok(self.syndrome(y)?.iter().all(|&s| s == 0))
    }

    /// Evaluates `c(x)` at a field element.
    pub fn evaluate(&self, c: &[Label], at: Label) -> Result<Label> {
        c.iter()
            .rev()
            .try_fold(0, |acc, &ci| self.field.add(self.field.mul(acc, at)?, ci))
    }

    /// Corrects a single error `e x^i` where `e` is one of the six units.
    ///
    /// The syndrome of such an error is `e beta^i = beta^(j n + i)` with
    /// `e = beta^(j n)`, so `i` and `e` are read off the discrete log of the
    /// syndrome. Every nonzero syndrome is reached by exactly one pattern.
    pub fn decode_single(&self, y: &[Label]) -> Result<DecodeResult> {
        if self.t != 0 {
            return Err(Error::SingleRowOnly {
                op: "decoding",
                t: self.t,
            });
        }
        let s = self.syndrome(y)?[0];
        if s == 0 {
            return Ok(DecodeResult {
                codeword: Word::new(y.to_vec()),
                error_position: None,
                error_value: None,
                status: DecodeStatus::Clean,
            });
        }
        let m = self.field.dlog(s)?;
        let position = m % self.n;
        let value = self.field.beta_pow(m - position);
        let mut codeword = y.to_vec();
        codeword[position] = self.field.sub(codeword[position], value)?;
        Ok(DecodeResult {
            codeword: Word::new(codeword),
            error_position: Some(position),
            error_value: Some(value),
            status: DecodeStatus::Corrected,
        })
    }

    /// Recovers `m(x) = c(x) / g(x)` from a codeword.
    pub fn message_of(&self, c: &[Label]) -> Result<Vec<Label>> {
        self.check_word(c)?;
        let (mut q, r) = poly_divrem(&self.field, c, &self.generator)?;
        if r.iter().any(|&x| x != 0) {
            return Err(Error::NotACodeword);
        }
        q.resize(self.k, 0);
        Ok(q)
    }

    /// Number of codewords, `p^k`.
    pub fn codeword_count(&self) -> num_bigint::BigUint {
        num_bigint::BigUint::from(self.field.p()).pow(self.k as u32)
    }

    /// All codewords in message order (message read as base-`p` digits,
    /// lowest coordinate least significant).
    pub fn codewords(&self) -> Result<Vec<Word>> {
        let count = self.codeword_count();
        if count > num_bigint::BigUint::from(CODEWORD_ENUMERATION_LIMIT) {
            return Err(Error::LimitExceeded {
                what: "codeword count",
                value: count.to_string(),
                limit: CODEWORD_ENUMERATION_LIMIT.to_string(),
            });
        }
        let p = self.field.p();
        let mut message = vec![0; self.k];
        let mut out = Vec::new();
        loop {
            out.push(self.encode(&message)?);
            // Odometer increment.
            let mut i = 0;
            loop {
                if i == self.k {
                    return Ok(out);
                }
                message[i] += 1;
                if message[i] < p {
                    break;
                }
                message[i] = 0;
                i += 1;
            }
        }
    }
}

fn trim(mut poly: Vec<Label>) -> Vec<Label> {
    while poly.len() > 1 && poly.last() == Some(&0) {
        poly.pop();
    }
    poly
}

pub(crate) fn poly_mul(field: &ResidueField, a: &[Label], b: &[Label]) -> Result<Vec<Label>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(ai, bj)?)?;
        }
    }
    Ok(out)
}

/// Long division by a divisor with nonzero leading coefficient.
pub(crate) fn poly_divrem(
    field: &ResidueField,
    a: &[Label],
    b: &[Label],
) -> Result<(Vec<Label>, Vec<Label>)> {
    let b = trim(b.to_vec());
    let lead = *b.last().ok_or(Error::DivisionByZero)?;
    let lead_inv = field.inv(lead)?;
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return Ok((vec![0], rem));
    }
    let mut quot = vec![0; rem.len() - b.len() + 1];
    for shift in (0..quot.len()).rev() {
        let coeff = field.mul(rem[shift + b.len() - 1], lead_inv)?;
        quot[shift] = coeff;
        if coeff == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            rem[shift + j] = field.sub(rem[shift + j], field.mul(coeff, bj)?)?;
        }
    }
    rem.truncate(b.len() - 1);
    Ok((quot, rem))
}
