use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::json;

use super::{Check, ConstructionReport, Outcome};
use crate::error::{Error, Result};
use crate::group::{BfsLayers, Element, GeneratingSet, Group};
use crate::length::{conjugate_length, LengthTable};
use crate::DEFAULT_BALL_CAP;

/// Membership of a table in `U = {l : l = 1 on the class of x}`, with
/// evidence that conjugation preserves it.
#[derive(Debug, Clone, Serialize)]
pub struct IccSplit {
    pub class: Vec<Element>,
    pub in_u: bool,
    pub report: ConstructionReport,
}

/// Enumerates the conjugacy class of `x` over the ball of radius `r`
/// (and checks it no longer grows at `r + 1`), decides whether `t` is 1 on
/// the whole class, and re-decides it for `g . t` over up to `sample`
/// conjugators `g` taken in BFS order.
pub fn icc_invariant_split(
    t: &LengthTable,
    x: &Element,
    gens: &GeneratingSet,
    r: usize,
    sample: usize,
) -> Result<IccSplit> {
    let group = t.group();
    let class = group.conjugacy_class_in_ball(x, gens, r, DEFAULT_BALL_CAP)?;
    let next = group.conjugacy_class_in_ball(x, gens, r + 1, DEFAULT_BALL_CAP)?;
    if class != next {
        return Err(Error::ClassNotStabilized {
            element: x.to_string(),
            radius: r,
        });
    }
    let class: Vec<Element> = class.into_iter().collect();
    let missing: Vec<String> = class
        .iter()
        .filter(|y| !t.contains(y))
        .map(|y| y.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(Error::InsufficientDomain { missing });
    }
    let member = |tab: &LengthTable| class.iter().all(|y| tab.exact(y) == Some(1));
    let in_u = member(t);
    let mut report = ConstructionReport::new(
        "icc_split",
        json!({
            "group": group.spec(),
            "x": x.to_string(),
            "radius": r,
            "sample": sample,
        }),
    );
    report.checks.push(Check::new(
        format!("class of {x} is the same at radius {r} and {}", r + 1),
        next.len(),
        class.len(),
    ));
    let mut preserved = 0usize;
    let mut tried = 0usize;
    'outer: for layer in BfsLayers::new(group, gens, r, DEFAULT_BALL_CAP) {
        for g in layer? {
            if tried == sample {
                break 'outer;
            }
            tried += 1;
            let moved = conjugate_length(&g, t, Some(&class))?;
            if moved.dropped.is_empty() && member(&moved.table) == in_u {
                preserved += 1;
            }
        }
    }
    report.candidates_tried = tried;
    report.checks.push(Check::new(
        "conjugation preserves membership in U on the sample",
        tried,
        preserved,
    ));
    let report = report.finish(Outcome::Verified);
    Ok(IccSplit { class, in_u, report })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Separation {
    Found { element: Element },
    NotFoundWithinRadius { radius: usize },
}

/// First `g` in BFS order with `A^g ∩ B = ∅`, where `A^g = g^-1 A g`.
pub fn separating_conjugator(
    group: &Group,
    a: &[Element],
    b: &[Element],
    gens: &GeneratingSet,
    r: usize,
) -> Result<Separation> {
    if a.iter().chain(b).any(|e| group.is_identity(e)) {
        return Err(Error::InvalidInput("A and B must not contain the identity".into()));
    }
    let bset: BTreeSet<&Element> = b.iter().collect();
    for layer in BfsLayers::new(group, gens, r, DEFAULT_BALL_CAP) {
        for g in layer? {
            if a.iter().all(|x| !bset.contains(&group.conj(x, &g))) {
                return Ok(Separation::Found { element: g });
            }
        }
    }
    Ok(Separation::NotFoundWithinRadius { radius: r })
}
