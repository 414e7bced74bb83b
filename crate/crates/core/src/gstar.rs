//! Words in the free product `G*<x>`: normal forms, evaluation `x -> g`,
//! and BFS searches for common non-solutions of finite equation sets.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{parse::split_top_level, BfsLayers, Element, GeneratingSet, Group};

/// One syllable of a word in `G*<x>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Syllable {
    G(Element),
    X(i64),
}

/// An element of `G*<x>` in alternating-syllable normal form: no trivial
/// syllables and no two adjacent syllables of the same kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GStarWord {
    syllables: Vec<Syllable>,
}

impl GStarWord {
    pub fn identity() -> Self {
        GStarWord::default()
    }

    pub fn x() -> Self {
        GStarWord {
            syllables: vec![Syllable::X(1)],
        }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_trivial(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Reduces a raw syllable list to normal form.
    pub fn normalize(group: &Group, raw: impl IntoIterator<Item = Syllable>) -> Result<Self> {
        let mut out: Vec<Syllable> = Vec::new();
        for s in raw {
            let s = match s {
                Syllable::G(e) => Syllable::G(group.normalize(&e)?),
                x => x,
            };
            push(group, &mut out, s);
        }
        Ok(GStarWord { syllables: out })
    }

    /// A constant word `g`.
    pub fn constant(group: &Group, g: &Element) -> Result<Self> {
        GStarWord::normalize(group, [Syllable::G(g.clone())])
    }

    pub fn mul(&self, group: &Group, other: &GStarWord) -> GStarWord {
        let mut out = self.syllables.clone();
        for s in &other.syllables {
            push(group, &mut out, s.clone());
        }
        GStarWord { syllables: out }
    }

    pub fn inverse(&self, group: &Group) -> GStarWord {
        GStarWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| match s {
                    Syllable::G(e) => Syllable::G(group.inverse(e)),
                    Syllable::X(k) => Syllable::X(-k),
                })
                .collect(),
        }
    }

    /// `[u, v] = u^-1 v^-1 u v`.
    pub fn commutator(group: &Group, u: &GStarWord, v: &GStarWord) -> GStarWord {
        u.inverse(group)
            .mul(group, &v.inverse(group))
            .mul(group, u)
            .mul(group, v)
    }

    pub fn x_pow(k: i64) -> GStarWord {
        if k == 0 {
            GStarWord::identity()
        } else {
            GStarWord {
                syllables: vec![Syllable::X(k)],
            }
        }
    }

    /// Parses `"a^-1 x^-1 a x"`: `x`/`x^k` tokens are x-powers, every other
    /// token is an atom of the element grammar of `group`.
    pub fn parse(group: &Group, s: &str) -> Result<Self> {
        let mut raw = Vec::new();
        for t in split_top_level(s)? {
            if let Some(rest) = t.strip_prefix('x') {
                let rest = rest.strip_prefix('^').unwrap_or(rest);
                let k = if rest.is_empty() {
                    1
                } else {
                    rest.parse::<i64>().map_err(|_| Error::Parse {
                        what: "x-power",
                        input: t.to_string(),
                        reason: "expected x^k".into(),
                    })?
                };
                raw.push(Syllable::X(k));
            } else {
                raw.push(Syllable::G(group.parse_atom(t)?));
            }
        }
        GStarWord::normalize(group, raw)
    }

    /// Image under the homomorphism fixing `G` and sending `x` to `g`.
    pub fn evaluate(&self, group: &Group, g: &Element) -> Result<Element> {
        if !group.contains(g) {
            return Err(Error::GroupMismatch(format!(
                "{g} is not an element of {:?}",
                group.spec()
            )));
        }
        Ok(self.eval(group, g))
    }

    pub(crate) fn eval(&self, group: &Group, g: &Element) -> Element {
        self.syllables.iter().fold(group.identity(), |acc, s| match s {
            Syllable::G(e) => group.mul(&acc, e),
            Syllable::X(k) => group.mul(&acc, &group.pow(g, *k)),
        })
    }
}

fn push(group: &Group, out: &mut Vec<Syllable>, s: Syllable) {
    match s {
        Syllable::G(e) => {
            if group.is_identity(&e) {
                return;
            }
            if let Some(Syllable::G(top)) = out.last_mut() {
                let merged = group.mul(top, &e);
                if group.is_identity(&merged) {
                    out.pop();
                } else {
                    *top = merged;
                }
            } else {
                out.push(Syllable::G(e));
            }
        }
        Syllable::X(k) => {
            if k == 0 {
                return;
            }
            if let Some(Syllable::X(top)) = out.last_mut() {
                *top += k;
                if *top == 0 {
                    out.pop();
                }
            } else {
                out.push(Syllable::X(k));
            }
        }
    }
}

impl fmt::Display for GStarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|s| match s {
                Syllable::G(e) => e.to_string(),
                Syllable::X(1) => "x".to_string(),
                Syllable::X(k) => format!("x^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Result of a witness search over a ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum WitnessSearch {
    Found(Element),
    NotFoundWithinRadius(usize),
}

/// Result of checking a mixed identity on a ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum IdentityCheck {
    HoldsOnBall { radius: usize, checked: usize },
    Counterexample(Element),
}

/// First `g` in BFS order with `w(g) != 1` for every `w` in `words`.
pub fn mif_witness(
    group: &Group,
    words: &[GStarWord],
    gens: &GeneratingSet,
    r_max: usize,
    cap: usize,
) -> Result<WitnessSearch> {
    if let Some(index) = words.iter().position(GStarWord::is_trivial) {
        return Err(Error::TrivialWordInI { index });
    }
    for layer in BfsLayers::new(group, gens, r_max, cap) {
        for g in layer? {
            if words.iter().all(|w| !group.is_identity(&w.eval(group, &g))) {
                return Ok(WitnessSearch::Found(g));
            }
        }
    }
    Ok(WitnessSearch::NotFoundWithinRadius(r_max))
}

/// Checks `w(g) = 1` for every `g` in the ball of radius `r`.
pub fn check_mixed_identity(
    group: &Group,
    w: &GStarWord,
    gens: &GeneratingSet,
    r: usize,
    cap: usize,
) -> Result<IdentityCheck> {
    let mut checked = 0;
    for layer in BfsLayers::new(group, gens, r, cap) {
        for g in layer? {
            if !group.is_identity(&w.eval(group, &g)) {
                return Ok(IdentityCheck::Counterexample(g));
            }
            checked += 1;
        }
    }
    Ok(IdentityCheck::HoldsOnBall { radius: r, checked })
}
