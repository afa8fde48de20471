//! Exact arithmetic in `Z[w]`, where `w` is a primitive sixth root of unity
//! satisfying `w^2 = w - 1`.
//!
//! An element is stored as `x + y*w`. The conjugate of `w` is `wb = 1 - w`,
//! so `w + wb = 1`, `w * wb = 1` and the norm form is `N(x + y*w) = x^2 + xy + y^2`.
//! Every operation uses checked 64-bit arithmetic and reports overflow
//! instead of wrapping.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The element `x + y*w` of `Z[w]`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct EisensteinInt {
    pub x: i64,
    pub y: i64,
}

impl EisensteinInt {
    pub const ZERO: Self = Self::new(0, 0);
    pub const ONE: Self = Self::new(1, 0);
    pub const W: Self = Self::new(0, 1);
    /// `wb = 1 - w`, the complex conjugate of `w`.
    pub const W_BAR: Self = Self::new(1, -1);

    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        Ok(Self::new(
            self.x.checked_add(rhs.x).ok_or(Error::Overflow("add"))?,
            self.y.checked_add(rhs.y).ok_or(Error::Overflow("add"))?,
        ))
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        Ok(Self::new(
            self.x.checked_sub(rhs.x).ok_or(Error::Overflow("sub"))?,
            self.y.checked_sub(rhs.y).ok_or(Error::Overflow("sub"))?,
        ))
    }

    pub fn checked_neg(self) -> Result<Self> {
        Ok(Self::new(
            self.x.checked_neg().ok_or(Error::Overflow("neg"))?,
            self.y.checked_neg().ok_or(Error::Overflow("neg"))?,
        ))
    }

    /// `(a + bw)(c + dw) = (ac - bd) + (ad + bc + bd)w`, using `w^2 = w - 1`.
    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let (a, b, c, d) = (
            i128::from(self.x),
            i128::from(self.y),
            i128::from(rhs.x),
            i128::from(rhs.y),
        );
        // Each product fits in i128; their sums may not.
        let x = (a * c).checked_sub(b * d);
        let y = (a * d)
            .checked_add(b * c)
            .and_then(|s| s.checked_add(b * d));
        let narrow = |v: Option<i128>| {
            v.and_then(|v| i64::try_from(v).ok())
                .ok_or(Error::Overflow("mul"))
        };
        Ok(Self::new(narrow(x)?, narrow(y)?))
    }

    /// Image under the automorphism `w -> wb = 1 - w`.
    pub fn checked_conj(self) -> Result<Self> {
        Ok(Self::new(
            self.x.checked_add(self.y).ok_or(Error::Overflow("conj"))?,
            self.y.checked_neg().ok_or(Error::Overflow("conj"))?,
        ))
    }

    /// `N(x + yw) = x^2 + xy + y^2`.
    pub fn checked_norm(self) -> Result<u64> {
        let (x, y) = (i128::from(self.x), i128::from(self.y));
        (x * x)
            .checked_add(x * y)
            .and_then(|s| s.checked_add(y * y))
            .and_then(|n| u64::try_from(n).ok())
            .ok_or(Error::Overflow("norm"))
    }

    /// Coordinates `(x', y')` of the same element written as `x' + y'*wb`.
    pub fn checked_wbar_coords(self) -> Result<(i64, i64)> {
        Ok((
            self.x
                .checked_add(self.y)
                .ok_or(Error::Overflow("wbar_coords"))?,
            self.y.checked_neg().ok_or(Error::Overflow("wbar_coords"))?,
        ))
    }

    pub fn conj(self) -> Self {
        self.checked_conj().expect("overflow in conj")
    }

    pub fn norm(self) -> u64 {
        self.checked_norm().expect("overflow in norm")
    }

    pub fn wbar_coords(self) -> (i64, i64) {
        self.checked_wbar_coords().expect("overflow in wbar_coords")
    }

    /// Rebuilds `x' + y'*wb` as an element in the `w` basis.
    pub fn from_wbar_coords(xp: i64, yp: i64) -> Result<Self> {
        Ok(Self::new(
            xp.checked_add(yp)
                .ok_or(Error::Overflow("from_wbar_coords"))?,
            yp.checked_neg()
                .ok_or(Error::Overflow("from_wbar_coords"))?,
        ))
    }

    /// `|x| + |y|`.
    pub fn w_coord_sum(self) -> u64 {
        self.x.unsigned_abs() + self.y.unsigned_abs()
    }

    /// `|x'| + |y'|` where `x' + y'*wb` is the same element.
    pub fn wbar_coord_sum(self) -> u64 {
        let (xp, yp) = self.wbar_coords();
        xp.unsigned_abs() + yp.unsigned_abs()
    }
}

impl Add for EisensteinInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("overflow in add")
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("overflow in sub")
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("overflow in mul")
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    fn neg(self) -> Self {
        self.checked_neg().expect("overflow in neg")
    }
}

impl From<i64> for EisensteinInt {
    fn from(x: i64) -> Self {
        Self::new(x, 0)
    }
}

/// Renders as `x+yw` with explicit signs: `0`, `-1`, `w`, `-7w`, `1-w`, `-7+7w`.
impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_two_term(f, self.x, self.y, "w")
    }
}

pub(crate) fn write_two_term(
    f: &mut fmt::Formatter<'_>,
    x: i64,
    y: i64,
    unit: &str,
) -> fmt::Result {
    if y == 0 {
        return write!(f, "{x}");
    }
    if x != 0 {
        write!(f, "{x}")?;
        if y > 0 {
            f.write_str("+")?;
        }
    }
    match y {
        1 => f.write_str(unit),
        -1 => write!(f, "-{unit}"),
        _ => write!(f, "{y}{unit}"),
    }
}

impl FromStr for EisensteinInt {
    type Err = Error;

    /// Accepts the rendering produced by `Display`, ignoring ASCII whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "Eisenstein integer",
            input: s.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_ascii_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }

        let Some(body) = compact.strip_suffix('w') else {
            return compact.parse::<i64>().map(Self::from).map_err(|_| err());
        };
        // Split `body` into the rational part and the signed w coefficient.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (x_part, y_part) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let x = if x_part.is_empty() {
            0
        } else {
            x_part.parse::<i64>().map_err(|_| err())?
        };
        let y = match y_part {
            "" | "+" => 1,
            "-" => -1,
            other => other.parse::<i64>().map_err(|_| err())?,
        };
        Ok(Self::new(x, y))
    }
}

/// The six units of `Z[w]` in canonical order `+1, -1, +w, -w, +wb, -wb`.
pub const UNITS: [EisensteinInt; 6] = [
    EisensteinInt::new(1, 0),
    EisensteinInt::new(-1, 0),
    EisensteinInt::new(0, 1),
    EisensteinInt::new(0, -1),
    EisensteinInt::new(1, -1),
    EisensteinInt::new(-1, 1),
];

/// The unit group of `Z[w]`, listed in a fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitSet([EisensteinInt; 6]);

impl UnitSet {
    pub fn as_slice(&self) -> &[EisensteinInt] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = EisensteinInt> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, a: &EisensteinInt) -> bool {
        self.0.contains(a)
    }

    /// Norms of `e1 - e2` over all unordered pairs of distinct units.
    pub fn pairwise_difference_norms(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(15);
        for (i, a) in self.0.iter().enumerate() {
            for b in &self.0[i + 1..] {
                out.push((*a - *b).norm());
            }
        }
        out
    }
}

impl<'a> IntoIterator for &'a UnitSet {
    type Item = &'a EisensteinInt;
    type IntoIter = std::slice::Iter<'a, EisensteinInt>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

pub fn unit_set() -> UnitSet {
    UnitSet(UNITS)
}

/// Norms attained by differences of two distinct units. The form
/// `x^2 + xy + y^2` never takes the value 2, so this is the exact set.
pub const UNIT_DIFFERENCE_NORMS: [u64; 3] = [1, 3, 4];
