use std::collections::HashSet;

use serde::Serialize;

use super::table::{LengthTable, LengthValue};
use super::weight::{DefaultRule, WeightSpec};
use crate::error::{Error, Result};
use crate::group::{BfsLayers, Element, GeneratingSet, Group};

/// One violated axiom instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom")]
pub enum Violation {
    IdentityMissing,
    /// Non-zero at the identity, or zero elsewhere.
    L1 { element: Element, value: LengthValue },
    MissingInverse { element: Element },
    L2 {
        element: Element,
        value: LengthValue,
        inverse_value: LengthValue,
    },
    L3 {
        g: Element,
        h: Element,
        product: Element,
        lg: LengthValue,
        lh: LengthValue,
        lgh: LengthValue,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checked_pairs: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every instance of L1-L3 that the table definitely violates.
///
/// Capped entries are intervals `[cap + 1, inf)`; an instance is reported
/// only when no choice of values inside the intervals satisfies it.
pub fn validate_length_axioms(t: &LengthTable) -> ValidationReport {
    let group = t.group();
    let mut violations = Vec::new();
    if !t.contains(&group.identity()) {
        violations.push(Violation::IdentityMissing);
    }
    for (g, v) in t.entries() {
        let ok = if group.is_identity(g) {
            v == LengthValue::Exact(0)
        } else {
            v.lower() > 0
        };
        if !ok {
            violations.push(Violation::L1 {
                element: g.clone(),
                value: v,
            });
        }
        match t.get(&group.inverse(g)) {
            None => violations.push(Violation::MissingInverse { element: g.clone() }),
            Some(w) => {
                if disjoint(v, w) {
                    violations.push(Violation::L2 {
                        element: g.clone(),
                        value: v,
                        inverse_value: w,
                    });
                }
            }
        }
    }
    let mut checked_pairs = 0;
    for (g, lg) in t.entries() {
        let Some(ug) = lg.upper() else { continue };
        for (h, lh) in t.entries() {
            let Some(uh) = lh.upper() else { continue };
            let gh = group.mul(g, h);
            if let Some(lgh) = t.get(&gh) {
                checked_pairs += 1;
                if lgh.lower() > ug + uh {
                    violations.push(Violation::L3 {
                        g: g.clone(),
                        h: h.clone(),
                        product: gh,
                        lg,
                        lh,
                        lgh,
                    });
                }
            }
        }
    }
    ValidationReport {
        checked_pairs,
        violations,
    }
}

fn disjoint(a: LengthValue, b: LengthValue) -> bool {
    let below = |x: LengthValue, y: LengthValue| x.upper().is_some_and(|u| u < y.lower());
    below(a, b) || below(b, a)
}

/// Word length with respect to `gens` on the ball of radius `r`.
pub fn word_length_table(group: &Group, gens: &GeneratingSet, r: usize, cap: usize) -> Result<LengthTable> {
    let mut entries = Vec::new();
    for (n, layer) in BfsLayers::new(group, gens, r, cap).enumerate() {
        for e in layer? {
            entries.push((e, LengthValue::Exact(n as u64)));
        }
    }
    LengthTable::new(group, entries, r as u64)
}

/// The window `W(base, F)`: length functions that agree with `base` on `F`.
#[derive(Debug, Clone)]
pub struct WindowConstraint {
    base: LengthTable,
    f: Vec<Element>,
}

impl WindowConstraint {
    pub fn new(base: LengthTable, f: Vec<Element>) -> Result<Self> {
        let missing: Vec<String> = f
            .iter()
            .filter(|x| !base.contains(x))
            .map(|x| x.to_string())
            .collect();
        if !missing.is_empty() {
            return Err(Error::InsufficientDomain { missing });
        }
        if let Some(x) = f.iter().find(|x| base.exact(x).is_none()) {
            return Err(Error::DomainGap(format!("base value at {x} is not exact")));
        }
        Ok(WindowConstraint { base, f })
    }

    pub fn base(&self) -> &LengthTable {
        &self.base
    }

    pub fn points(&self) -> &[Element] {
        &self.f
    }

    pub fn max_on_points(&self) -> u64 {
        self.f.iter().filter_map(|x| self.base.exact(x)).max().unwrap_or(0)
    }

    /// Whether `t` agrees with the base exactly on every point.
    pub fn admits(&self, t: &LengthTable) -> Result<bool> {
        for x in &self.f {
            match t.get(x) {
                None => return Err(Error::DomainGap(format!("{x} is not in the candidate table"))),
                Some(v) => {
                    if v.exact() != self.base.exact(x) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Weight equal to `base` on `F \ {1}` and to `default` elsewhere, so that
/// the induced length lies in `W(base, F)`.
///
/// A constant default needs `M > max base(F)`; a ramp needs every ramp
/// weight `M0 + i` (with `i >= 1`) above that maximum, i.e. `M0 >= max`.
pub fn wm_construction(base: &LengthTable, f: &[Element], default: DefaultRule) -> Result<WeightSpec> {
    let group = base.group();
    let window = WindowConstraint::new(base.clone(), f.to_vec())?;
    let set: HashSet<&Element> = f.iter().collect();
    if !f.iter().any(|x| group.is_identity(x)) {
        return Err(Error::InvalidInput("F must contain the identity".into()));
    }
    if let Some(x) = f.iter().find(|x| !set.contains(&group.inverse(x))) {
        return Err(Error::InvalidInput(format!("F is not symmetric at {x}")));
    }
    let max = window.max_on_points();
    let ok = match default {
        DefaultRule::Constant(m) => m > max,
        DefaultRule::ProperRamp(m0) => m0 >= max,
    };
    if !ok {
        let d = match default {
            DefaultRule::Constant(m) | DefaultRule::ProperRamp(m) => m,
        };
        return Err(Error::DefaultTooSmall {
            default: d,
            max_on_f: max,
        });
    }
    let support = f
        .iter()
        .filter(|x| !group.is_identity(x))
        .map(|x| (x.clone(), base.exact(x).expect("checked exact")));
    WeightSpec::new(group, support, default)
}

/// `(g . l)(x) = l(g^-1 x g)` together with the requested points that could
/// not be evaluated.
#[derive(Debug, Clone)]
pub struct ConjugatedTable {
    pub table: LengthTable,
    pub dropped: Vec<Element>,
}

/// Conjugation action on a table. Without an explicit output domain the
/// result lives on `g D g^-1`, where every point is computable.
pub fn conjugate_length(g: &Element, t: &LengthTable, out_domain: Option<&[Element]>) -> Result<ConjugatedTable> {
    let group = t.group();
    if !group.contains(g) {
        return Err(Error::GroupMismatch(format!("{g} is not in {:?}", group.spec())));
    }
    let gi = group.inverse(g);
    let points: Vec<Element> = match out_domain {
        Some(d) => d.to_vec(),
        None => t.domain().iter().map(|y| group.conj(y, &gi)).collect(),
    };
    let mut entries = Vec::new();
    let mut dropped = Vec::new();
    for x in points {
        match t.get(&group.conj(&x, g)) {
            Some(v) => entries.push((x, v)),
            None => dropped.push(x),
        }
    }
    if entries.is_empty() {
        return Err(Error::EmptyDomain);
    }
    Ok(ConjugatedTable {
        table: LengthTable::new(group, entries, 0)?,
        dropped,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Reconstruction {
    WordLength { generators: Vec<Element> },
    NotWordLengthOnDomain { witness: Element },
}

/// Extracts `X = {x : l(x) = 1}` and checks the descent condition
/// "some `h` has `l(h) = l(g) - 1` and `l(h^-1 g) = 1`" for every exact
/// non-identity value, in order of increasing length.
pub fn reconstruct_word_length(t: &LengthTable) -> Reconstruction {
    let group = t.group();
    let mut order: Vec<(u64, &Element)> = t
        .entries()
        .filter_map(|(g, v)| v.exact().map(|v| (v, g)))
        .collect();
    order.sort();
    let gens: Vec<Element> = order
        .iter()
        .filter(|(v, _)| *v == 1)
        .map(|(_, g)| (*g).clone())
        .collect();
    for &(v, g) in &order {
        if v < 2 {
            continue;
        }
        let descends = gens.iter().any(|x| {
            let h = group.mul(g, &group.inverse(x));
            t.exact(&h) == Some(v - 1)
        });
        if !descends {
            return Reconstruction::NotWordLengthOnDomain { witness: g.clone() };
        }
    }
    Reconstruction::WordLength { generators: gens }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Comparison {
    WitnessAgainst {
        element: Element,
        left: LengthValue,
        right: LengthValue,
    },
    BoundedByCOnDomain { compared: usize },
}

/// First `g` (in the first table's domain order) with `t1(g) > c * t2(g)`.
pub fn lipschitz_compare(t1: &LengthTable, t2: &LengthTable, c: u64) -> Result<Comparison> {
    if t1.group() != t2.group() {
        return Err(Error::GroupMismatch("tables live on different groups".into()));
    }
    let mut compared = 0;
    for (g, l) in t1.entries() {
        if t1.group().is_identity(g) {
            continue;
        }
        let Some(r) = t2.get(g) else { continue };
        compared += 1;
        if r.upper().is_some_and(|u| l.lower() > c * u) {
            return Ok(Comparison::WitnessAgainst {
                element: g.clone(),
                left: l,
                right: r,
            });
        }
    }
    Ok(Comparison::BoundedByCOnDomain { compared })
}
