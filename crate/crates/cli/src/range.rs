//! Inclusive integer ranges written `lo..hi`, `lo..=hi` or as a single value.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub lo: u32,
    pub hi: u32,
}

impl IntRange {
    pub fn inclusive(self) -> RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("'{t}' is not a non-negative integer"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("range {s} is empty"));
        }
        Ok(Self { lo, hi })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!("1..4".parse(), Ok(IntRange { lo: 1, hi: 4 }));
        assert_eq!("2..=3".parse(), Ok(IntRange { lo: 2, hi: 3 }));
        assert_eq!("5".parse(), Ok(IntRange { lo: 5, hi: 5 }));
        assert!("4..1".parse::<IntRange>().is_err());
        assert!("a..2".parse::<IntRange>().is_err());
        assert!("".parse::<IntRange>().is_err());
    }
}
