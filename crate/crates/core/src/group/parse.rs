//! Element token grammar and `GroupSpec` shorthand.
//!
//! An element is a whitespace-separated product of atoms; brackets nest, so
//! whitespace inside `(..)`, `[..]` or `{..}` does not split. Atoms per
//! variant:
//!
//! * free: `1`, `a`, `a3`, `a-1`, `a^-2`
//! * abelian: `(2,0,1)`; rank-one groups also accept a bare integer
//! * VcGroup: `1`, `a`, `b`, `a^k`, `b^k`
//! * direct product: `[e1 | e2 | ...]`
//! * free product: `1`, `i{e}` with `e` an element of factor `i`

use std::str::FromStr;

use super::{Element, Group, GroupSpec, Kind, Letter, FREE_ALPHABET};
use crate::error::{Error, Result};

fn parse_err(what: &'static str, input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        what,
        input: input.to_string(),
        reason: reason.into(),
    }
}

/// Splits on whitespace at bracket depth zero.
pub(crate) fn split_top_level(s: &str) -> Result<Vec<&str>> {
    split_on(s, |c| c.is_whitespace())
}

fn split_on(s: &str, is_sep: impl Fn(char) -> bool) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth: i32 = 0;
    let mut start: Option<usize> = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => {
                depth -= 1;
                if depth < 0 {
                    return Err(parse_err("token", s, "unbalanced closing bracket"));
                }
            }
            _ => {}
        }
        if depth == 0 && is_sep(c) {
            if let Some(st) = start.take() {
                out.push(s[st..i].trim());
            }
        } else if start.is_none() && !c.is_whitespace() {
            start = Some(i);
        }
    }
    if depth != 0 {
        return Err(parse_err("token", s, "unbalanced brackets"));
    }
    if let Some(st) = start {
        out.push(s[st..].trim());
    }
    Ok(out)
}

fn parse_exponent(rest: &str, full: &str) -> Result<i64> {
    let rest = rest.strip_prefix('^').unwrap_or(rest);
    if rest.is_empty() {
        return Ok(1);
    }
    rest.parse::<i64>()
        .map_err(|_| parse_err("exponent", full, "expected an integer exponent"))
}

impl Group {
    /// Parses an element in the token grammar and returns its normal form.
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let tokens = split_top_level(s)?;
        if tokens.is_empty() {
            return Err(parse_err("element", s, "empty input"));
        }
        let mut acc = self.identity();
        for t in tokens {
            let atom = self.parse_atom(t)?;
            acc = self.mul(&acc, &atom);
        }
        Ok(acc)
    }

    /// Parses a single atom (one top-level token).
    pub(crate) fn parse_atom(&self, t: &str) -> Result<Element> {
        match &self.kind {
            Kind::Free { rank } => {
                if t == "1" {
                    return Ok(self.identity());
                }
                let mut chars = t.chars();
                let c = chars.next().ok_or_else(|| parse_err("free atom", t, "empty"))?;
                let gen = FREE_ALPHABET
                    .iter()
                    .position(|&x| x as char == c)
                    .filter(|&g| g < *rank)
                    .ok_or_else(|| parse_err("free atom", t, format!("unknown letter for rank {rank}")))?;
                let exp = parse_exponent(chars.as_str(), t)?;
                let letter = Letter::new(gen as u16, exp < 0);
                Ok(Element::Free(vec![letter; exp.unsigned_abs() as usize]))
            }
            Kind::Abelian { moduli } => {
                let values: Vec<i64> = if let Some(inner) =
                    t.strip_prefix('(').and_then(|r| r.strip_suffix(')'))
                {
                    inner
                        .split(',')
                        .map(|x| {
                            x.trim()
                                .parse::<i64>()
                                .map_err(|_| parse_err("abelian atom", t, "expected integers"))
                        })
                        .collect::<Result<_>>()?
                } else if moduli.len() == 1 {
                    vec![t
                        .parse::<i64>()
                        .map_err(|_| parse_err("abelian atom", t, "expected an integer"))?]
                } else {
                    return Err(parse_err("abelian atom", t, "expected (n1,...,nk)"));
                };
                if values.len() != moduli.len() {
                    return Err(parse_err(
                        "abelian atom",
                        t,
                        format!("expected {} coordinates", moduli.len()),
                    ));
                }
                self.normalize(&Element::Abelian(values))
            }
            Kind::Vc => {
                if t == "1" {
                    return Ok(self.identity());
                }
                let (head, rest) = t.split_at(1);
                let exp = parse_exponent(rest, t)?;
                match head {
                    "a" => Ok(Element::Vc { alpha: exp, beta: 0 }),
                    "b" => Ok(Element::Vc {
                        alpha: 0,
                        beta: exp.rem_euclid(4) as u8,
                    }),
                    _ => Err(parse_err("VcGroup atom", t, "expected a^k or b^k")),
                }
            }
            Kind::Direct(fs) => {
                let inner = t
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| parse_err("direct-product atom", t, "expected [e1 | e2 ...]"))?;
                let parts = split_on(inner, |c| c == '|')?;
                if parts.len() != fs.len() {
                    return Err(parse_err(
                        "direct-product atom",
                        t,
                        format!("expected {} components", fs.len()),
                    ));
                }
                Ok(Element::Direct(
                    fs.iter()
                        .zip(parts)
                        .map(|(g, p)| g.parse_element(p))
                        .collect::<Result<_>>()?,
                ))
            }
            Kind::FreeProduct(fs) => {
                if t == "1" {
                    return Ok(self.identity());
                }
                let open = t
                    .find('{')
                    .ok_or_else(|| parse_err("free-product atom", t, "expected i{e}"))?;
                let index: usize = t[..open]
                    .parse()
                    .map_err(|_| parse_err("free-product atom", t, "expected a factor index"))?;
                let inner = t[open + 1..]
                    .strip_suffix('}')
                    .ok_or_else(|| parse_err("free-product atom", t, "missing closing brace"))?;
                let factor = fs
                    .get(index)
                    .ok_or_else(|| parse_err("free-product atom", t, "factor index out of range"))?;
                let e = factor.parse_element(inner)?;
                self.embed(index, &e)
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts JSON (`{"variant": ...}`) or the shorthand `free:2`,
    /// `abelian:3`, `cyclic:4`, `vc`, `abtorsion:2`, `direct(free:1,cyclic:2)`,
    /// `freeprod(cyclic:2,cyclic:3)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let spec = if s.starts_with('{') {
            serde_json::from_str(s).map_err(|e| parse_err("group spec", s, e.to_string()))?
        } else {
            parse_shorthand(s)?
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_shorthand(s: &str) -> Result<GroupSpec> {
    let lower = s.to_ascii_lowercase();
    if lower == "vc" || lower == "vcgroup" {
        return Ok(GroupSpec::VcGroup);
    }
    for (prefix, direct) in [("direct(", true), ("freeprod(", false)] {
        if let Some(inner) = lower.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')) {
            let factors = split_on(inner, |c| c == ',')?
                .into_iter()
                .map(parse_shorthand)
                .collect::<Result<Vec<_>>>()?;
            return Ok(if direct {
                GroupSpec::DirectProduct { factors }
            } else {
                GroupSpec::FreeProduct { factors }
            });
        }
    }
    let (name, arg) = lower
        .split_once(':')
        .ok_or_else(|| parse_err("group spec", s, "expected name:parameter"))?;
    let n: u64 = arg
        .trim()
        .parse()
        .map_err(|_| parse_err("group spec", s, "parameter must be a non-negative integer"))?;
    match name.trim() {
        "free" => Ok(GroupSpec::FreeGroup { rank: n as usize }),
        "abelian" | "freeabelian" | "free-abelian" => Ok(GroupSpec::FreeAbelian { rank: n as usize }),
        "cyclic" => Ok(GroupSpec::CyclicFinite { order: n }),
        "abtorsion" | "ab-torsion" => Ok(GroupSpec::AbTorsion { k: n as usize }),
        other => Err(parse_err("group spec", s, format!("unknown group family {other:?}"))),
    }
}
