use serde::{Deserialize, Serialize};

use super::PumpSpec;
use crate::error::{Error, Result};
use crate::extract::{Factorization, LemmaId};

/// Outcome of a side-condition check; `violated` names the first failing
/// condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validity {
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violated: Option<String>,
}

/// The length conditions of one five-part lemma at a fixed `n`, all as
/// integer inequalities.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Conditions {
    lemma: LemmaId,
    g: usize,
    h: usize,
    n: usize,
}

/// Per-part length caps implied by the conditions, used to bound the
/// split enumeration before the exact check.
struct Caps {
    u: usize,
    v: usize,
    w: usize,
    x: usize,
    y: usize,
    /// `|vwx|`
    middle: usize,
}

impl Conditions {
    pub fn new(spec: &PumpSpec) -> Result<Conditions> {
        spec.ensure_valid()?;
        if spec.lemma.blocks() > 1 {
            return Err(Error::LemmaMismatch(format!("{} is a multi-block lemma", spec.lemma)));
        }
        let (g, h) = match (spec.lemma, spec.k) {
            (LemmaId::Thm1 | LemmaId::Thm2, Some(k)) => (k.g() as usize, k.h() as usize),
            _ => (0, 1),
        };
        Ok(Conditions { lemma: spec.lemma, g, h, n: spec.n as usize })
    }

    /// The first violated condition for parts of lengths `[u, v, w, x, y]`.
    pub fn violation(&self, [u, v, w, x, y]: [usize; 5]) -> Option<&'static str> {
        let Conditions { g, h, n, .. } = *self;
        let s = g + h;
        let checks: &[(bool, &'static str)] = match self.lemma {
            LemmaId::Thm1 => &[
                (u > 0, "0 < |u|"),
                (v > 0, "0 < |v|"),
                (u * s <= n * h, "|u|(g+h) <= nh"),
                (v * s <= n * h, "|v|(g+h) <= nh"),
                (g == 0 || x > 0, "0 < |x|"),
                (g == 0 || y > 0, "0 < |y|"),
                (x * s <= n * g, "|x|(g+h) <= ng"),
                (y * s <= n * g, "|y|(g+h) <= ng"),
                (h * x == g * v, "h|x| = g|v|"),
                (h * y == g * u, "h|y| = g|u|"),
            ],
            LemmaId::Thm2 => &[
                (v > 0, "0 < |v|"),
                (v * s <= n * h, "|v|(g+h) <= nh"),
                (g == 0 || x > 0, "0 < |x|"),
                (x * s <= n * g, "|x|(g+h) <= ng"),
                (w > 0, "0 < |w|"),
                (w <= n, "|w| <= n"),
                (h * x == g * v, "h|x| = g|v|"),
                (h * y == g * u, "h|y| = g|u|"),
            ],
            LemmaId::BarHillel => &[(v + x > 0, "|vx| > 0"), (v + w + x <= n, "|vwx| <= n")],
            LemmaId::Linear => &[(v + x > 0, "|vx| > 0"), (u + v + x + y <= n, "|uvxy| <= n")],
            LemmaId::Regular => &[(v > 0, "|v| > 0"), (u + v <= n, "|uv| <= n"), (x == 0 && y == 0, "x = y = λ")],
            LemmaId::NonlinearCf | LemmaId::Multilinear(_) => unreachable!("rejected in Conditions::new"),
        };
        checks.iter().find(|(ok, _)| !ok).map(|&(_, name)| name)
    }

    fn caps(&self, len: usize) -> Caps {
        let Conditions { g, h, n, .. } = *self;
        let s = g + h;
        let c = |v: usize| v.min(len);
        match self.lemma {
            LemmaId::Thm1 => Caps {
                u: c(n * h / s),
                v: c(n * h / s),
                w: len,
                x: c(n * g / s),
                y: c(n * g / s),
                middle: len,
            },
            LemmaId::Thm2 => Caps { u: len, v: c(n * h / s), w: c(n), x: c(n * g / s), y: len, middle: len },
            LemmaId::BarHillel => Caps { u: len, v: c(n), w: c(n), x: c(n), y: len, middle: c(n) },
            LemmaId::Linear => Caps { u: c(n), v: c(n), w: len, x: c(n), y: c(n), middle: len },
            LemmaId::Regular => Caps { u: c(n), v: c(n), w: len, x: 0, y: 0, middle: len },
            LemmaId::NonlinearCf | LemmaId::Multilinear(_) => unreachable!("rejected in Conditions::new"),
        }
    }

    /// Calls `f` on the cut points `[|u|, |uv|, |uvw|, |uvwx|]` of every
    /// split of a word of length `len` meeting the conditions, in
    /// lexicographic order; stops early when `f` returns `false`.
    pub fn for_each_split(&self, len: usize, mut f: impl FnMut([usize; 4]) -> bool) {
        let caps = self.caps(len);
        for a in 0..=caps.u {
            for b in a..=(a + caps.v).min(len) {
                let c_lo = b.max(len.saturating_sub(caps.y + caps.x));
                let c_hi = (b + caps.w).min(a + caps.middle).min(len);
                for c in c_lo..=c_hi {
                    let d_lo = c.max(len.saturating_sub(caps.y));
                    let d_hi = (c + caps.x).min(a + caps.middle).min(len);
                    for d in d_lo..=d_hi {
                        if self.violation([a, b - a, c - b, d - c, len - d]).is_none() && !f([a, b, c, d]) {
                            return;
                        }
                    }
                }
            }
        }
    }
}

/// Checks exactly the side conditions of `spec.lemma` on the part lengths
/// of `f`, at the constant `spec.n` and rate `spec.k`.
pub fn valid_factorization(f: &Factorization, spec: &PumpSpec, source_len: usize) -> Result<Validity> {
    if f.lemma != spec.lemma {
        return Err(Error::LemmaMismatch(format!("factorization is for {}, spec is for {}", f.lemma, spec.lemma)));
    }
    let lens = f.parts().map(|p| p.len());
    let total: usize = lens.iter().sum();
    if total != source_len {
        return Err(Error::LemmaMismatch(format!("parts have total length {total}, source word has {source_len}")));
    }
    let violated = Conditions::new(spec)?.violation(lens);
    Ok(Validity { valid: violated.is_none(), violated: violated.map(str::to_string) })
}

/// Number of splits of a word of length `len` meeting the conditions of
/// `spec`, as visited by the refuter.
pub fn count_splits(spec: &PumpSpec, len: usize) -> Result<usize> {
    let mut count = 0;
    Conditions::new(spec)?.for_each_split(len, |_| {
        count += 1;
        true
    });
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::Ratio;
    use crate::symbol::Word;
    use proptest::prelude::*;

    fn spec(lemma: LemmaId, k: Option<&str>, n: u64) -> PumpSpec {
        PumpSpec::new(lemma, k.map(|k| k.parse().unwrap()), n)
    }

    fn f(lemma: LemmaId, parts: [&str; 5]) -> Factorization {
        let word = Word::parse(&parts.concat());
        let mut cuts = [0; 4];
        let mut at = 0;
        for (i, p) in parts[..4].iter().enumerate() {
            at += p.len();
            cuts[i] = at;
        }
        Factorization::from_cuts(lemma, &word, cuts, None, 0)
    }

    #[test]
    fn thm1_examples() {
        let s = spec(LemmaId::Thm1, Some("1/1"), 4);
        let good = f(LemmaId::Thm1, ["a", "a", "aabb", "b", "b"]);
        assert!(valid_factorization(&good, &s, 8).unwrap().valid);
        let bad = f(LemmaId::Thm1, ["", "a", "aaabb", "b", "b"]);
        let v = valid_factorization(&bad, &s, 8).unwrap();
        assert_eq!(v.violated.as_deref(), Some("0 < |u|"));
    }

    #[test]
    fn thm1_half_ratio_pairs() {
        let s = spec(LemmaId::Thm1, Some("1/2"), 12);
        let parts = ["ab", "ababab", "aabbbbbb", "bbb", "a"];
        let v = valid_factorization(&f(LemmaId::Thm1, parts), &s, 20).unwrap();
        assert!(v.valid, "{v:?}");
    }

    #[test]
    fn mismatches_are_errors() {
        let s = spec(LemmaId::Thm2, Some("1/1"), 4);
        let other = f(LemmaId::Thm1, ["a", "a", "aabb", "b", "b"]);
        assert!(matches!(valid_factorization(&other, &s, 8), Err(Error::LemmaMismatch(_))));
        let same = f(LemmaId::Thm2, ["a", "a", "aabb", "b", "b"]);
        assert!(matches!(valid_factorization(&same, &s, 9), Err(Error::LemmaMismatch(_))));
        assert!(valid_factorization(&same, &spec(LemmaId::Thm2, None, 4), 8).is_err());
    }

    #[test]
    fn regular_needs_empty_tail() {
        let s = spec(LemmaId::Regular, None, 3);
        let v = valid_factorization(&f(LemmaId::Regular, ["", "a", "a", "b", ""]), &s, 3).unwrap();
        assert_eq!(v.violated.as_deref(), Some("x = y = λ"));
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn unbounded_enumeration_visits_every_split() {
        for len in 0..=24 {
            let all = binom(len + 4, 4);
            let no_vx = binom(len + 2, 2);
            for lemma in [LemmaId::BarHillel, LemmaId::Linear] {
                assert_eq!(count_splits(&spec(lemma, None, len as u64), len).unwrap(), all - no_vx, "{lemma} {len}");
            }
            // v non-empty, x = y = λ: choose |u| and |v| > 0
            let regular = (len + 1) * len / 2;
            assert_eq!(count_splits(&spec(LemmaId::Regular, None, len as u64), len).unwrap(), regular);
            // thm1 at k = 1 and n ≥ 2 len: |u| = |y| > 0, |v| = |x| > 0
            let thm1: usize = (1..=len / 2).map(|u| (1..=(len - 2 * u) / 2).count()).sum();
            let big = 2 * len as u64;
            assert_eq!(count_splits(&spec(LemmaId::Thm1, Some("1/1"), big), len).unwrap(), thm1);
        }
    }

    /// The conditions restated independently over rationals.
    fn by_hand(lemma: LemmaId, g: u64, h: u64, n: u64, l: [usize; 5]) -> bool {
        let [u, v, w, x, y] = l.map(|p| p as f64);
        let (g, h, n) = (g as f64, h as f64, n as f64);
        let left = n * h / (g + h);
        let right = n * g / (g + h);
        match lemma {
            LemmaId::Thm1 => {
                u > 0.0
                    && v > 0.0
                    && u <= left
                    && v <= left
                    && (g == 0.0 || (x > 0.0 && y > 0.0))
                    && x <= right
                    && y <= right
                    && x * h == g * v
                    && y * h == g * u
            }
            LemmaId::Thm2 => {
                v > 0.0 && v <= left && (g == 0.0 || x > 0.0) && x <= right && w > 0.0 && w <= n && x * h == g * v && y * h == g * u
            }
            LemmaId::BarHillel => v + x > 0.0 && v + w + x <= n,
            LemmaId::Linear => v + x > 0.0 && u + v + x + y <= n,
            LemmaId::Regular => v > 0.0 && u + v <= n && x == 0.0 && y == 0.0,
            _ => unreachable!(),
        }
    }

    proptest! {
        #[test]
        fn matches_hand_inequalities(
            which in 0usize..5,
            g in 0u64..4,
            h in 1u64..4,
            n in 0u64..30,
            l in proptest::array::uniform5(0usize..12),
        ) {
            let lemma = [LemmaId::Thm1, LemmaId::Thm2, LemmaId::BarHillel, LemmaId::Linear, LemmaId::Regular][which];
            let k = Ratio::new(g, h).unwrap();
            let s = PumpSpec::new(lemma, Some(k), n);
            let c = Conditions::new(&s).unwrap();
            prop_assert_eq!(c.violation(l).is_none(), by_hand(lemma, k.g(), k.h(), n, l));
        }

        #[test]
        fn enumeration_equals_filtered_brute_force(which in 0usize..5, g in 0u64..3, h in 1u64..3, n in 0u64..10, len in 0usize..11) {
            let lemma = [LemmaId::Thm1, LemmaId::Thm2, LemmaId::BarHillel, LemmaId::Linear, LemmaId::Regular][which];
            let s = PumpSpec::new(lemma, Some(Ratio::new(g, h).unwrap()), n);
            let c = Conditions::new(&s).unwrap();
            let mut brute = Vec::new();
            for a in 0..=len {
                for b in a..=len {
                    for cc in b..=len {
                        for d in cc..=len {
                            if c.violation([a, b - a, cc - b, d - cc, len - d]).is_none() {
                                brute.push([a, b, cc, d]);
                            }
                        }
                    }
                }
            }
            let mut seen = Vec::new();
            c.for_each_split(len, |cuts| { seen.push(cuts); true });
            prop_assert_eq!(seen, brute);
        }
    }
}
