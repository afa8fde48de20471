//! The residue field `A_p[w] = Z[w] / <pi>` for a rational prime `p = 1 (mod 6)`.
//!
//! Residue classes are labelled by elements of `GF(p)`: the class of `x + y*w`
//! carries the label `x + r*y mod p`, where `r` solves `a + b*r = 0 (mod p)`
//! for `pi = a + b*w`. Each label has a canonical representative of minimal
//! norm, which is what the Mannheim-type weights are measured on.

use std::fmt;

use serde::Serialize;

use crate::eisenstein::{write_two_term, EisensteinInt, UNITS};
use crate::error::{Error, Result};
use crate::Label;

/// Largest supported prime.
pub const P_MAX: usize = 49_999;

pub(crate) fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn check_splitting_prime(p: usize) -> Result<()> {
    if p > P_MAX {
        return Err(Error::LimitExceeded {
            what: "p",
            value: p.to_string(),
            limit: P_MAX.to_string(),
        });
    }
    if p < 7 || p % 6 != 1 || !is_prime(p) {
        return Err(Error::NotSplittingPrime(p as u64));
    }
    Ok(())
}

fn pow_mod(base: usize, mut exp: usize, p: usize) -> usize {
    let (mut acc, mut b) = (1 % p, base % p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        exp >>= 1;
    }
    acc
}

fn distinct_prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Finds `pi = a + b*w` with `N(pi) = p`, normalised to `0 < a <= b`.
pub fn split_prime(p: usize) -> Result<EisensteinInt> {
    check_splitting_prime(p)?;
    let p = p as i64;
    let mut a = 1;
    while 3 * a * a <= p {
        // b solves b^2 + a*b + a^2 - p = 0.
        let disc = 4 * p - 3 * a * a;
        let root = (disc as f64).sqrt().round() as i64;
        for s in [root - 1, root, root + 1] {
            if s >= 0 && s * s == disc && (s - a) % 2 == 0 {
                let b = (s - a) / 2;
                if b >= a {
                    return Ok(EisensteinInt::new(a, b));
                }
            }
        }
        a += 1;
    }
    Err(Error::Invariant(format!("no solution of a^2+ab+b^2 = {p}")))
}

/// The unique `r` in `[0, p)` with `a + b*r = 0 (mod p)`.
pub fn label_ratio(p: usize, pi: EisensteinInt) -> Result<usize> {
    if pi.checked_norm()? != p as u64 {
        return Err(Error::Invariant(format!("N({pi}) != {p}")));
    }
    let pm = p as i64;
    let a = pi.x.rem_euclid(pm) as usize;
    let b = pi.y.rem_euclid(pm) as usize;
    let b_inv = pow_mod(b, p - 2, p);
    Ok((p - a) % p * b_inv % p)
}

/// Which basis a representative is presented in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Presentation {
    /// `x + y*w`
    W,
    /// `x' + y'*wb`
    WBar,
}

/// A canonical representative together with its preferred presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MuValue {
    pub element: EisensteinInt,
    pub form: Presentation,
    /// Coefficients in the chosen basis.
    pub coords: (i64, i64),
}

impl fmt::Display for MuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.form {
            Presentation::W => write_two_term(f, self.coords.0, self.coords.1, "w"),
            Presentation::WBar => write_two_term(f, self.coords.0, self.coords.1, "w\u{304}"),
        }
    }
}

/// A constructed residue field `A_p[w]`.
#[derive(Debug, Clone)]
pub struct ResidueField {
    p: usize,
    n: usize,
    pi: EisensteinInt,
    r: usize,
    reps: Vec<EisensteinInt>,
    tie_count: usize,
    beta: Label,
    unit_labels: [Label; 6],
    log: Vec<usize>,
    exp: Vec<Label>,
}

/// The JSON field summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldSummary {
    pub p: usize,
    pub n: usize,
    pub pi: [i64; 2],
    pub r: usize,
    pub beta_label: Label,
    pub tie_count: usize,
}

/// One row of the field table export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub label: Label,
    pub x: i64,
    pub y: i64,
    pub x_bar: i64,
    pub y_bar: i64,
    pub norm: u64,
}

impl ResidueField {
    pub fn build(p: usize) -> Result<Self> {
        let pi = split_prime(p)?;
        let r = label_ratio(p, pi)?;
        let (reps, tie_count) = minimal_representatives(p, r);

        let mut field = ResidueField {
            p,
            n: (p - 1) / 6,
            pi,
            r,
            reps,
            tie_count,
            beta: 0,
            unit_labels: [0; 6],
            log: Vec::new(),
            exp: Vec::new(),
        };
        field.unit_labels = UNITS.map(|u| field.label_of(u));
        field.beta = field.find_beta()?;
        field.fill_log_tables();
        field.check_invariants()?;
        Ok(field)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// `n = (p - 1) / 6`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pi(&self) -> EisensteinInt {
        self.pi
    }

    /// The labeling ratio `r`, which is also the label of `w`.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn beta(&self) -> Label {
        self.beta
    }

    /// Number of classes whose minimal norm is attained by more than one element.
    pub fn tie_count(&self) -> usize {
        self.tie_count
    }

    /// Canonical representatives indexed by label.
    pub fn representatives(&self) -> &[EisensteinInt] {
        &self.reps
    }

    /// Labels of the six units, in canonical unit order.
    pub fn unit_labels(&self) -> [Label; 6] {
        self.unit_labels
    }

    pub fn summary(&self) -> FieldSummary {
        FieldSummary {
            p: self.p,
            n: self.n,
            pi: [self.pi.x, self.pi.y],
            r: self.r,
            beta_label: self.beta,
            tie_count: self.tie_count,
        }
    }

    pub fn table(&self) -> Vec<TableRow> {
        self.reps
            .iter()
            .enumerate()
            .map(|(label, rep)| {
                let (x_bar, y_bar) = rep.wbar_coords();
                TableRow {
                    label,
                    x: rep.x,
                    y: rep.y,
                    x_bar,
                    y_bar,
                    norm: rep.norm(),
                }
            })
            .collect()
    }

    pub fn check_label(&self, l: Label) -> Result<()> {
        if l < self.p {
            Ok(())
        } else {
            Err(Error::LabelOutOfRange {
                label: l,
                p: self.p,
            })
        }
    }

    pub fn representative(&self, l: Label) -> Result<EisensteinInt> {
        self.check_label(l)?;
        Ok(self.reps[l])
    }

    /// The modulo function: canonical representative of `l`, presented in the
    /// `w` basis unless the `wb` basis has a strictly smaller coefficient sum.
    pub fn mu(&self, l: Label) -> Result<MuValue> {
        let element = self.representative(l)?;
        let wbar = element.wbar_coords();
        Ok(if element.w_coord_sum() <= element.wbar_coord_sum() {
            MuValue {
                element,
                form: Presentation::W,
                coords: (element.x, element.y),
            }
        } else {
            MuValue {
                element,
                form: Presentation::WBar,
                coords: wbar,
            }
        })
    }

    /// `x + r*y mod p`.
    pub fn label_of(&self, a: EisensteinInt) -> Label {
        let p = self.p as i128;
        let v = i128::from(a.x) + (self.r as i128) * i128::from(a.y);
        v.rem_euclid(p) as Label
    }

    pub fn add(&self, a: Label, b: Label) -> Result<Label> {
        Ok(self.label_of(self.representative(a)? + self.representative(b)?))
    }

    pub fn sub(&self, a: Label, b: Label) -> Result<Label> {
        Ok(self.label_of(self.representative(a)? - self.representative(b)?))
    }

    pub fn neg(&self, a: Label) -> Result<Label> {
        Ok(self.label_of(-self.representative(a)?))
    }

    pub fn mul(&self, a: Label, b: Label) -> Result<Label> {
        Ok(self.label_of(self.representative(a)? * self.representative(b)?))
    }

    pub fn pow(&self, a: Label, mut exp: u64) -> Result<Label> {
        self.check_label(a)?;
        let (mut acc, mut base) = (1 % self.p, a);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base)?;
            }
            base = self.mul(base, base)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    pub fn inv(&self, a: Label) -> Result<Label> {
        self.check_label(a)?;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        self.pow(a, (self.p - 2) as u64)
    }

    /// `m` in `[0, p-2]` with `beta^m = l`.
    pub fn dlog(&self, l: Label) -> Result<usize> {
        self.check_label(l)?;
        if l == 0 {
            return Err(Error::DlogOfZero);
        }
        Ok(self.log[l])
    }

    /// `beta^m`, read from the antilog table.
    pub fn beta_pow(&self, m: usize) -> Label {
        self.exp[m % (self.p - 1)]
    }

    fn multiplicative_order_is_full(&self, g: Label) -> Result<bool> {
        let order = self.p - 1;
        for q in distinct_prime_factors(order) {
            if self.pow(g, (order / q) as u64)? == 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest label in `2..p` that generates the multiplicative group and
    /// whose `n`-th power is the class of `w`.
    fn find_beta(&self) -> Result<Label> {
        let w = self.label_of(EisensteinInt::W);
        for g in 2..self.p {
            if self.pow(g, self.n as u64)? == w && self.multiplicative_order_is_full(g)? {
                return Ok(g);
            }
        }
        Err(Error::Invariant(format!(
            "no primitive beta with beta^n = w for p = {}",
            self.p
        )))
    }

    fn fill_log_tables(&mut self) {
        let order = self.p - 1;
        self.log = vec![usize::MAX; self.p];
        self.exp = Vec::with_capacity(order);
        let mut cur = 1;
        for m in 0..order {
            self.log[cur] = m;
            self.exp.push(cur);
            cur = cur * self.beta % self.p;
        }
    }

    fn check_invariants(&self) -> Result<()> {
        let p = self.p;
        let fail = |msg: String| Err(Error::Invariant(msg));
        if self.pi.norm() != p as u64 {
            return fail(format!("N(pi) != {p}"));
        }
        if self.label_of(self.pi) != 0 {
            return fail("pi does not reduce to 0".into());
        }
        if self.reps[0] != EisensteinInt::ZERO {
            return fail("rep[0] != 0".into());
        }
        for (l, rep) in self.reps.iter().enumerate() {
            if self.label_of(*rep) != l {
                return fail(format!("rep[{l}] = {rep} has the wrong label"));
            }
            if 3 * rep.norm() > p as u64 {
                return fail(format!("rep[{l}] = {rep} exceeds the covering radius"));
            }
        }
        let mut units = self.unit_labels.to_vec();
        units.sort_unstable();
        units.dedup();
        if units.len() != 6 {
            return fail("unit classes are not distinct".into());
        }
        if self.log.iter().skip(1).any(|&m| m == usize::MAX) {
            return fail("beta is not primitive".into());
        }
        if self.exp[self.n] != self.r {
            return fail("beta^n != w".into());
        }
        Ok(())
    }
}

/// Minimal-norm representative of every class, ties broken by smallest `(x, y)`.
fn minimal_representatives(p: usize, r: usize) -> (Vec<EisensteinInt>, usize) {
    let bound = (2.0 * (p as f64 / 3.0).sqrt()).ceil() as i64 + 1;
    let pm = p as i64;
    let rm = r as i64;
    // (norm, element, number of elements attaining the norm)
    let mut best: Vec<Option<(u64, EisensteinInt, usize)>> = vec![None; p];
    for x in -bound..=bound {
        for y in -bound..=bound {
            let a = EisensteinInt::new(x, y);
            let l = (x + rm * y).rem_euclid(pm) as usize;
            let key = (a.norm(), a);
            match &mut best[l] {
                slot @ None => *slot = Some((key.0, a, 1)),
                Some((norm, rep, count)) => {
                    if key.0 < *norm {
                        *norm = key.0;
                        *rep = a;
                        *count = 1;
                    } else if key.0 == *norm {
                        *count += 1;
                        if a < *rep {
                            *rep = a;
                        }
                    }
                }
            }
        }
    }
    let ties = best.iter().flatten().filter(|(_, _, c)| *c > 1).count();
    let reps = best
        .into_iter()
        .map(|b| b.expect("every class meets the scan box").1)
        .collect();
    (reps, ties)
}
