use std::fmt;

use serde::{Serialize, Serializer};

/// Letter names for free-group generators. `x` is reserved for the free
/// variable of `G*<x>`, so the alphabet stops at `w`.
pub const FREE_ALPHABET: &[u8] = b"abcdefghijklmnopqrstuvw";

/// A free generator or its inverse.
///
/// The derived order puts a generator right before its inverse and both
/// before the next generator (`a < a^-1 < b < b^-1`), which is the
/// within-layer tie-break of every BFS enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u16,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u16, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn name(self) -> char {
        FREE_ALPHABET[self.gen as usize] as char
    }
}

/// A group element in the normal form of its catalog variant.
///
/// Elements do not carry their group; the [`Group`](super::Group) that
/// produced them interprets the encoding and checks membership.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Freely reduced word.
    Free(Vec<Letter>),
    /// Exponent vector, reduced into `[0, n)` for every finite coordinate.
    Abelian(Vec<i64>),
    /// `a^alpha b^beta` with `beta` in `0..4`.
    Vc { alpha: i64, beta: u8 },
    /// One component per factor.
    Direct(Vec<Element>),
    /// Alternating syllables `(factor index, non-trivial factor element)`.
    FreeProduct(Vec<(usize, Element)>),
}

impl Element {
    /// Syllable view of a free word: runs of equal letters merged into
    /// `(generator, exponent)` pairs.
    pub fn free_syllables(letters: &[Letter]) -> Vec<(u16, i64)> {
        let mut out: Vec<(u16, i64)> = Vec::new();
        for l in letters {
            let e = if l.inverse { -1 } else { 1 };
            match out.last_mut() {
                Some((g, exp)) if *g == l.gen && (*exp > 0) == (e > 0) => *exp += e,
                _ => out.push((l.gen, e)),
            }
        }
        out
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Free(letters) => {
                if letters.is_empty() {
                    return write!(f, "1");
                }
                let parts: Vec<String> = Element::free_syllables(letters)
                    .into_iter()
                    .map(|(g, e)| format!("{}{}", FREE_ALPHABET[g as usize] as char, e))
                    .collect();
                write!(f, "{}", parts.join(" "))
            }
            Element::Abelian(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            Element::Vc { alpha, beta } => match (*alpha, *beta) {
                (0, 0) => write!(f, "1"),
                (a, 0) => write!(f, "a^{a}"),
                (0, b) => write!(f, "b^{b}"),
                (a, b) => write!(f, "a^{a} b^{b}"),
            },
            Element::Direct(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "[{}]", parts.join(" | "))
            }
            Element::FreeProduct(syl) => {
                if syl.is_empty() {
                    return write!(f, "1");
                }
                let parts: Vec<String> = syl.iter().map(|(i, e)| format!("{i}{{{e}}}")).collect();
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

/// Elements serialize as their token string; parsing back needs the group.
impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
