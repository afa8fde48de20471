use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::Label;

/// A vector of labels `(c_0, ..., c_{n-1})`, read as `c(x) = sum c_i x^i`.
///
/// Serialises as comma-separated labels, e.g. `"3,5,0"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Label>);

impl Word {
    pub fn new(coeffs: Vec<Label>) -> Self {
        Word(coeffs)
    }

    pub fn zeros(n: usize) -> Self {
        Word(vec![0; n])
    }

    pub fn as_slice(&self) -> &[Label] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Label> {
        self.0
    }
}

impl Deref for Word {
    type Target = [Label];
    fn deref(&self) -> &[Label] {
        &self.0
    }
}

impl From<Vec<Label>> for Word {
    fn from(v: Vec<Label>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `"3,5,0"`; whitespace around labels is ignored and the empty
    /// string is the empty word.
    fn from_str(s: &str) -> Result<Self, Error> {
        if s.trim().is_empty() {
            return Ok(Word(Vec::new()));
        }
        s.split(',')
            .map(|part| part.trim().parse::<Label>())
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
            .map_err(|_| Error::Parse {
                what: "word",
                input: s.to_string(),
            })
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_render() {
        let w: Word = "3,5,0".parse().unwrap();
        assert_eq!(w.as_slice(), &[3, 5, 0]);
        assert_eq!(w.to_string(), "3,5,0");
        assert_eq!(" 1 , 2 ".parse::<Word>().unwrap().as_slice(), &[1, 2]);
        assert_eq!("".parse::<Word>().unwrap().len(), 0);
        assert_eq!(serde_json::to_string(&w).unwrap(), "\"3,5,0\"");
        for bad in ["1,,2", "a", "1;2", "-1", "1,"] {
            assert!(bad.parse::<Word>().is_err(), "{bad}");
        }
    }

    proptest! {
        #[test]
        fn round_trip(v in proptest::collection::vec(0usize..50_000, 0..20)) {
            let w = Word::new(v);
            prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
        }
    }
}
