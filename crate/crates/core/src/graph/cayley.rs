use serde::Serialize;

use super::FiniteGraph;
use crate::error::{Error, Result};
use crate::group::Element;
use crate::length::{LengthTable, LengthValue};

/// Cayley graph of `t` restricted to `{g : t(g) <= r}`: `a ~ b` iff
/// `t(a^-1 b) = 1`. Vertices are ordered by length, then by element.
pub fn cayley_ball(t: &LengthTable, r: u64) -> Result<FiniteGraph> {
    let group = t.group();
    let mut verts: Vec<(u64, &Element)> = Vec::new();
    for (g, v) in t.entries() {
        match v {
            LengthValue::Exact(x) if x <= r => verts.push((x, g)),
            LengthValue::Capped(c) if c < r => {
                return Err(Error::DomainGap(format!(
                    "{g} is capped at {c}, below the radius {r}"
                )))
            }
            _ => {}
        }
    }
    verts.sort();
    let mut missing = Vec::new();
    let mut edges = Vec::new();
    for (i, (_, a)) in verts.iter().enumerate() {
        let ai = group.inverse(a);
        for (j, (_, b)) in verts.iter().enumerate().skip(i + 1) {
            let p = group.mul(&ai, b);
            match t.lookup_or_beyond(&p) {
                None => missing.push(p.to_string()),
                Some(LengthValue::Exact(1)) => edges.push((i, j)),
                Some(_) => {}
            }
        }
    }
    if !missing.is_empty() {
        missing.sort();
        missing.dedup();
        return Err(Error::InsufficientDomain { missing });
    }
    FiniteGraph::new(verts.iter().map(|(_, g)| g.to_string()).collect(), &edges)
}

/// Value of `t` at `p` for a consistency or witness test; outside the
/// domain the table's exact radius still gives a lower bound.
fn value_at(t: &LengthTable, p: &Element, missing: &mut Vec<String>) -> Option<LengthValue> {
    let v = t.lookup_or_beyond(p);
    if v.is_none() {
        missing.push(p.to_string());
    }
    v
}

/// Whether `d_i - d_j <= l(a_i^-1 a_j) <= d_i + d_j` for all `i, j`.
pub fn check_consistent(t: &LengthTable, a: &[Element], d: &[u64]) -> Result<bool> {
    if a.len() != d.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: d.len(),
        });
    }
    let group = t.group();
    let mut missing = Vec::new();
    let mut verdict = true;
    for i in 0..a.len() {
        let ai = group.inverse(&a[i]);
        for j in 0..a.len() {
            let p = group.mul(&ai, &a[j]);
            let Some(v) = value_at(t, &p, &mut missing) else { continue };
            let lower_ok = d[i] <= d[j] + v.lower();
            let upper_ok = match v.upper() {
                Some(u) => u <= d[i] + d[j],
                None if v.lower() > d[i] + d[j] => false,
                None => {
                    return Err(Error::DomainGap(format!(
                        "length of {p} is only known to exceed {}",
                        v.lower() - 1
                    )))
                }
            };
            verdict &= lower_ok && upper_ok;
        }
    }
    if !missing.is_empty() {
        return Err(Error::InsufficientDomain { missing });
    }
    Ok(verdict)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum DWitness {
    Found { element: Element },
    /// `d` is inconsistent, so every `g` belongs to `D(a, d)`.
    VacuouslySatisfied,
    /// No witness among the `searched` candidates; says nothing beyond them.
    NotFoundWithinDomain { searched: usize },
}

/// First `g` in `search_domain` with `t(g^-1 a_i) = d_i` for all `i`.
pub fn d_witness_search(
    t: &LengthTable,
    a: &[Element],
    d: &[u64],
    search_domain: &[Element],
) -> Result<DWitness> {
    if !check_consistent(t, a, d)? {
        return Ok(DWitness::VacuouslySatisfied);
    }
    let group = t.group();
    for g in search_domain {
        let gi = group.inverse(g);
        let mut missing = Vec::new();
        let mut gap = None;
        let mut hit = true;
        for (ai, &di) in a.iter().zip(d) {
            let p = group.mul(&gi, ai);
            match value_at(t, &p, &mut missing) {
                None => {}
                Some(LengthValue::Exact(v)) => hit &= v == di,
                Some(LengthValue::Capped(c)) if c >= di => hit = false,
                Some(LengthValue::Capped(c)) => {
                    gap = Some(format!("length of {p} is only known to exceed {c}"))
                }
            }
        }
        if !hit {
            continue;
        }
        if !missing.is_empty() {
            return Err(Error::InsufficientDomain { missing });
        }
        if let Some(msg) = gap {
            return Err(Error::DomainGap(msg));
        }
        return Ok(DWitness::Found { element: g.clone() });
    }
    Ok(DWitness::NotFoundWithinDomain {
        searched: search_domain.len(),
    })
}
