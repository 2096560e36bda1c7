use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::symbol::Word;

/// A terminal block repeated `a·n + b` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub block: Word,
    pub a: u64,
    pub b: u64,
}

/// Witness families whose exponents are not affine in `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedFamily {
    /// `a² b a^((2n+5)²) b³`
    EvenlinSquare,
}

impl FromStr for NamedFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<NamedFamily> {
        match s.trim() {
            "evenlin-square" => Ok(NamedFamily::EvenlinSquare),
            other => Err(Error::Family(format!("unknown family function `{other}`"))),
        }
    }
}

/// A parametric witness word `p_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessFamily {
    Template(Vec<Segment>),
    Named(NamedFamily),
}

impl WitnessFamily {
    /// Parses `lit^(a*n+b)` segments; a literal without an exponent occurs
    /// once. Whitespace is ignored. The literal is every character up to the
    /// next `^`, or up to the end of the template.
    pub fn parse(template: &str) -> Result<WitnessFamily> {
        let text: String = template.chars().filter(|c| !c.is_whitespace()).collect();
        let mut segments = Vec::new();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let Some(caret) = rest.find('^') else {
                segments.push(Segment { block: Word::parse(rest), a: 0, b: 1 });
                break;
            };
            let lit = &rest[..caret];
            if lit.is_empty() {
                return Err(Error::Family(format!("`^` without a literal in `{template}`")));
            }
            let after = &rest[caret + 1..];
            let (expr, tail) = match after.strip_prefix('(') {
                Some(inner) => {
                    let close = inner.find(')').ok_or_else(|| Error::Family(format!("unclosed exponent in `{template}`")))?;
                    (&inner[..close], &inner[close + 1..])
                }
                None => {
                    // bare exponent: digits, then an optional `n`
                    let mut end = after.find(|c: char| !c.is_ascii_digit()).unwrap_or(after.len());
                    if after[end..].starts_with('n') {
                        end += 1;
                    }
                    (&after[..end], &after[end..])
                }
            };
            let (a, b) = parse_affine(expr)?;
            segments.push(Segment { block: Word::parse(lit), a, b });
            rest = tail;
        }
        if !segments.iter().any(|s| s.a > 0) {
            return Err(Error::Family(format!("`{template}` does not grow with n")));
        }
        Ok(WitnessFamily::Template(segments))
    }

    pub fn instantiate(&self, n: u64) -> Word {
        match self {
            WitnessFamily::Template(segments) => {
                let mut out = Word::empty();
                for s in segments {
                    out.extend_from(&s.block.repeat((s.a * n + s.b) as usize));
                }
                out
            }
            WitnessFamily::Named(NamedFamily::EvenlinSquare) => {
                let q = (2 * n + 5).pow(2) as usize;
                Word::parse(&format!("aab{}bbb", "a".repeat(q)))
            }
        }
    }
}

impl fmt::Display for WitnessFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessFamily::Named(NamedFamily::EvenlinSquare) => f.write_str("evenlin-square"),
            WitnessFamily::Template(segments) => {
                for s in segments {
                    match (s.a, s.b) {
                        (0, 1) => write!(f, "{}", s.block)?,
                        (0, b) => write!(f, "{}^({b})", s.block)?,
                        (a, 0) => write!(f, "{}^({a}*n)", s.block)?,
                        (a, b) => write!(f, "{}^({a}*n+{b})", s.block)?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// `a*n + b` as a sum of terms `c`, `n`, `c*n` or `cn`.
fn parse_affine(expr: &str) -> Result<(u64, u64)> {
    let bad = || Error::Family(format!("exponent `{expr}` is not of the form a*n+b"));
    if expr.is_empty() {
        return Err(bad());
    }
    let (mut a, mut b) = (0u64, 0u64);
    for term in expr.split('+') {
        let term = term.trim();
        if let Some(coef) = term.strip_suffix('n') {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            a += if coef.is_empty() { 1 } else { coef.parse::<u64>().map_err(|_| bad())? };
        } else {
            b += term.parse::<u64>().map_err(|_| bad())?;
        }
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyck_template() {
        let f = WitnessFamily::parse("(^(2*n) )^(2*n) (^(2*n) )^(2*n)").unwrap();
        assert_eq!(f.instantiate(1).to_string(), "(())(())");
        assert_eq!(f.instantiate(3).len(), 24);
    }

    #[test]
    fn affine_forms() {
        let f = WitnessFamily::parse("a^(3n+6)b^(3*n + 6)").unwrap();
        assert_eq!(f.instantiate(1).to_string(), "aaaaaaaaabbbbbbbbb");
        let f = WitnessFamily::parse("a^n b^n c").unwrap();
        assert_eq!(f.instantiate(2).to_string(), "aabbc");
        assert_eq!(WitnessFamily::parse("ab^(2)").unwrap_err().to_string(), "witness family: `ab^(2)` does not grow with n");
        assert!(WitnessFamily::parse("a^(n-1)").is_err());
        assert!(WitnessFamily::parse("^(n)").is_err());
        assert!(WitnessFamily::parse("a^(n").is_err());
    }

    #[test]
    fn display_reparses() {
        let f = WitnessFamily::parse("a^(2*n+1)b^(n)c").unwrap();
        assert_eq!(WitnessFamily::parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn square_family() {
        let f = WitnessFamily::Named("evenlin-square".parse().unwrap());
        let w = f.instantiate(1);
        assert_eq!(w.len(), 2 + 1 + 49 + 3);
        assert!(w.to_string().starts_with("aab"));
    }
}
