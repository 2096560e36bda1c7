use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reduced non-negative rational `g/h`, the rate of a fixed-rated linear
/// grammar: right context length over left context length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRatio", into = "RawRatio")]
pub struct Ratio {
    g: u64,
    h: u64,
}

#[derive(Serialize, Deserialize)]
struct RawRatio {
    g: u64,
    h: u64,
}

impl TryFrom<RawRatio> for Ratio {
    type Error = Error;

    fn try_from(raw: RawRatio) -> Result<Ratio> {
        Ratio::new(raw.g, raw.h)
    }
}

impl From<Ratio> for RawRatio {
    fn from(r: Ratio) -> RawRatio {
        RawRatio { g: r.g, h: r.h }
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { g: 0, h: 1 };
    pub const ONE: Ratio = Ratio { g: 1, h: 1 };

    /// Builds `g/h` in lowest terms. `h` must be positive.
    pub fn new(g: u64, h: u64) -> Result<Ratio> {
        if h == 0 {
            return Err(Error::InvalidRatio(format!("{g}/{h}: denominator must be positive")));
        }
        let d = gcd(g, h);
        Ok(Ratio { g: g / d, h: h / d })
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    /// `g + h`, the number of letters one normal-form step emits.
    pub fn step_len(&self) -> u64 {
        self.g + self.h
    }

    /// Whether a rule emitting `left` letters before and `right` letters
    /// after its nonterminal has this rate, i.e. `right·h = left·g`.
    pub fn admits(&self, left: usize, right: usize) -> bool {
        right as u64 * self.h == left as u64 * self.g
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.g, self.h)
    }
}

impl FromStr for Ratio {
    type Err = Error;

    /// Accepts `G/H` or a bare integer `G`; unreduced input is reduced.
    fn from_str(s: &str) -> Result<Ratio> {
        let bad = || Error::InvalidRatio(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((g, h)) => {
                let g = g.trim().parse().map_err(|_| bad())?;
                let h = h.trim().parse().map_err(|_| bad())?;
                Ratio::new(g, h)
            }
            None => Ratio::new(s.parse().map_err(|_| bad())?, 1),
        }
    }
}
