use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::table::{LengthTable, LengthValue};
use crate::error::{Error, Result};
use crate::group::{BfsLayers, Element, Group, GroupSpec};
use crate::DEFAULT_BALL_CAP;

/// Weight of every element outside the finite support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefaultRule {
    /// Every off-support element weighs `M`.
    Constant(u64),
    /// The `i`-th off-support inverse pair (1-based, canonical BFS order over
    /// the standard generators) weighs `M0 + i`.
    ProperRamp(u64),
}

/// A weight function with finite support and a default rule.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpec {
    group: Group,
    support: BTreeMap<Element, u64>,
    default: DefaultRule,
}

impl WeightSpec {
    /// Checks symmetry, positivity and, for a constant default `M`, that no
    /// support weight exceeds `M` (which is what makes the closed form
    /// `min(d_supp, M)` exact).
    pub fn new(
        group: &Group,
        support: impl IntoIterator<Item = (Element, u64)>,
        default: DefaultRule,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, w) in support {
            if !group.contains(&e) {
                return Err(Error::GroupMismatch(format!("{e} is not in {:?}", group.spec())));
            }
            if group.is_identity(&e) {
                return Err(Error::InvalidInput("the identity cannot carry a weight".into()));
            }
            if w == 0 {
                return Err(Error::InvalidInput(format!("weight of {e} must be positive")));
            }
            if let Some(old) = map.insert(e.clone(), w) {
                if old != w {
                    return Err(Error::InvalidInput(format!("conflicting weights for {e}")));
                }
            }
        }
        for (e, w) in &map {
            match map.get(&group.inverse(e)) {
                Some(wi) if wi == w => {}
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "support is not symmetric at {e}"
                    )))
                }
            }
        }
        match default {
            DefaultRule::Constant(0) => {
                return Err(Error::InvalidInput("constant default must be positive".into()))
            }
            DefaultRule::Constant(m) => {
                if let Some((e, &w)) = map.iter().find(|(_, &w)| w > m) {
                    return Err(Error::SupportExceedsDefault {
                        element: e.to_string(),
                        weight: w,
                        default: m,
                    });
                }
            }
            DefaultRule::ProperRamp(_) => {}
        }
        Ok(WeightSpec {
            group: group.clone(),
            support: map,
            default,
        })
    }

    /// Same support, different default.
    pub fn with_default(&self, default: DefaultRule) -> Result<Self> {
        WeightSpec::new(&self.group, self.support.clone(), default)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn support(&self) -> &BTreeMap<Element, u64> {
        &self.support
    }

    pub fn default_rule(&self) -> DefaultRule {
        self.default
    }

    /// `omega(g)`; the identity weighs 0.
    pub fn weight(&self, g: &Element) -> Result<u64> {
        if self.group.is_identity(g) {
            return Ok(0);
        }
        if let Some(&w) = self.support.get(g) {
            return Ok(w);
        }
        match self.default {
            DefaultRule::Constant(m) => Ok(m),
            DefaultRule::ProperRamp(m0) => {
                let mut found = None;
                self.walk_ramp(|e, i| {
                    if e == g {
                        found = Some(m0 + i);
                        false
                    } else {
                        true
                    }
                })?;
                found.ok_or_else(|| Error::InvalidInput(format!("{g} was never enumerated")))
            }
        }
    }

    /// Every element `h != 1` with `omega(h) <= cap`, sorted by weight then
    /// by element.
    pub fn elements_up_to(&self, cap: u64) -> Result<Vec<(Element, u64)>> {
        let mut out: Vec<(Element, u64)> = self
            .support
            .iter()
            .filter(|(_, &w)| w <= cap)
            .map(|(e, &w)| (e.clone(), w))
            .collect();
        match self.default {
            DefaultRule::Constant(m) if m <= cap => {
                if self.group.order().is_none() {
                    return Err(Error::InvalidInput(format!(
                        "infinitely many elements weigh {m} <= {cap}"
                    )));
                }
                let gens = self.group.standard_generators();
                for layer in BfsLayers::new(&self.group, &gens, usize::MAX, DEFAULT_BALL_CAP) {
                    for e in layer? {
                        if !self.group.is_identity(&e) && !self.support.contains_key(&e) {
                            out.push((e, m));
                        }
                    }
                }
            }
            DefaultRule::Constant(_) => {}
            DefaultRule::ProperRamp(m0) => {
                if cap > m0 {
                    let last = cap - m0;
                    self.walk_ramp(|e, i| {
                        if i > last {
                            return false;
                        }
                        out.push((e.clone(), m0 + i));
                        out.push((self.group.inverse(e), m0 + i));
                        true
                    })?;
                }
            }
        }
        out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        out.dedup();
        Ok(out)
    }

    /// Visits off-support non-identity elements in canonical BFS order with
    /// their 1-based pair index; stops when `visit` returns false.
    fn walk_ramp(&self, mut visit: impl FnMut(&Element, u64) -> bool) -> Result<()> {
        let gens = self.group.standard_generators();
        let mut index: HashMap<Element, u64> = HashMap::new();
        let mut next = 0u64;
        for layer in BfsLayers::new(&self.group, &gens, usize::MAX, DEFAULT_BALL_CAP) {
            for e in layer? {
                if self.group.is_identity(&e) || self.support.contains_key(&e) {
                    continue;
                }
                let i = match index.get(&e) {
                    Some(&i) => i,
                    None => {
                        next += 1;
                        index.insert(self.group.inverse(&e), next);
                        next
                    }
                };
                if !visit(&e, i) {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(WeightJson {
            group: self.group.spec().clone(),
            support: self.support.iter().map(|(e, &w)| (e.to_string(), w)).collect(),
            default: self.default,
        })
        .expect("weight spec serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: WeightJson = serde_json::from_str(s).map_err(|e| Error::Parse {
            what: "weight spec",
            input: s.chars().take(80).collect(),
            reason: e.to_string(),
        })?;
        let group = Group::new(raw.group)?;
        let support = raw
            .support
            .into_iter()
            .map(|(tok, w)| Ok((group.parse_element(&tok)?, w)))
            .collect::<Result<Vec<_>>>()?;
        WeightSpec::new(&group, support, raw.default)
    }
}

#[derive(Serialize, Deserialize)]
struct WeightJson {
    group: GroupSpec,
    support: Vec<(String, u64)>,
    default: DefaultRule,
}

/// Weighted distances from the identity over the implicit Cayley graph with
/// the given generators, for the requested targets only. Nodes beyond
/// `bound` are never expanded; unreachable targets are absent.
pub(crate) fn dijkstra(
    group: &Group,
    gens: &[(Element, u64)],
    bound: u64,
    targets: &HashSet<Element>,
    node_cap: usize,
) -> Result<HashMap<Element, u64>> {
    let mut dist: HashMap<Element, u64> = HashMap::new();
    let mut settled: HashSet<Element> = HashSet::new();
    let mut found = HashMap::new();
    let mut heap = BinaryHeap::new();
    let id = group.identity();
    dist.insert(id.clone(), 0);
    heap.push(Reverse((0u64, id)));
    while let Some(Reverse((d, g))) = heap.pop() {
        if !settled.insert(g.clone()) {
            continue;
        }
        if targets.contains(&g) {
            found.insert(g.clone(), d);
            if found.len() == targets.len() {
                break;
            }
        }
        for (x, w) in gens {
            let nd = d + w;
            if nd > bound {
                continue;
            }
            let h = group.mul(&g, x);
            if settled.contains(&h) {
                continue;
            }
            match dist.get(&h) {
                Some(&old) if old <= nd => {}
                _ => {
                    if dist.len() >= node_cap {
                        return Err(Error::BudgetExceeded {
                            what: "weighted shortest-path search",
                            cap: node_cap,
                        });
                    }
                    dist.insert(h.clone(), nd);
                    heap.push(Reverse((nd, h)));
                }
            }
        }
    }
    Ok(found)
}

/// The length function induced by `omega`, evaluated on `domain`.
///
/// With a constant default `M` the value is `min(d_supp(g), M)`, where
/// `d_supp` only uses support generators: one off-support step already
/// reaches any element at cost `M`, and support weights never exceed `M`.
/// With a proper ramp every element of weight at most `cap` is a generator
/// and values above `cap` come back as `Capped(cap)`.
pub fn length_from_weight(omega: &WeightSpec, domain: &[Element], cap: u64) -> Result<LengthTable> {
    let group = &omega.group;
    for g in domain {
        if !group.contains(g) {
            return Err(Error::GroupMismatch(format!("{g} is not in {:?}", group.spec())));
        }
    }
    let targets: HashSet<Element> = domain.iter().cloned().collect();
    let (gens, bound, fallback) = match omega.default {
        DefaultRule::Constant(m) => {
            let bound = (m - 1).min(cap);
            let gens: Vec<(Element, u64)> = omega
                .support
                .iter()
                .filter(|(_, &w)| w <= bound)
                .map(|(e, &w)| (e.clone(), w))
                .collect();
            let fallback = if m <= cap {
                LengthValue::Exact(m)
            } else {
                LengthValue::Capped(cap)
            };
            (gens, bound, fallback)
        }
        DefaultRule::ProperRamp(_) => (omega.elements_up_to(cap)?, cap, LengthValue::Capped(cap)),
    };
    let found = dijkstra(group, &gens, bound, &targets, DEFAULT_BALL_CAP)?;
    LengthTable::new(
        group,
        domain.iter().map(|g| {
            let v = match found.get(g) {
                Some(&d) => LengthValue::Exact(d),
                None => fallback,
            };
            (g.clone(), v)
        }),
        0,
    )
}

/// As [`length_from_weight`], but every value must be exact.
pub fn length_from_weight_exact(
    omega: &WeightSpec,
    domain: &[Element],
    cap: u64,
) -> Result<LengthTable> {
    let t = length_from_weight(omega, domain, cap)?;
    if let Some((g, _)) = t.entries().find(|(_, v)| v.exact().is_none()) {
        return Err(Error::CapTooSmall {
            element: g.to_string(),
            cap,
        });
    }
    Ok(t)
}

/// Result of the exhaustive decomposition oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleValue {
    Min(u64),
    NoDecomposition,
}

/// Exhaustive minimum of `sum omega(x_i)` over products of at most
/// `max_factors` factors equal to `g`.
///
/// Factors range over `{h : omega(h) <= cap}` restricted to the support,
/// the extra `universe` and `g` itself (for a constant default the full
/// candidate set is infinite).
pub fn brute_force_length(
    omega: &WeightSpec,
    g: &Element,
    max_factors: usize,
    cap: u64,
    universe: &[Element],
) -> Result<OracleValue> {
    if max_factors > 5 {
        return Err(Error::InvalidInput("the oracle allows at most 5 factors".into()));
    }
    let group = &omega.group;
    if group.is_identity(g) {
        return Ok(OracleValue::Min(0));
    }
    let mut cands: Vec<(u64, Element)> = match omega.default {
        DefaultRule::ProperRamp(_) => omega
            .elements_up_to(cap)?
            .into_iter()
            .map(|(e, w)| (w, e))
            .collect(),
        DefaultRule::Constant(_) => {
            let mut pool: Vec<Element> = omega.support.keys().cloned().collect();
            pool.extend(universe.iter().cloned());
            pool.push(g.clone());
            pool.retain(|h| !group.is_identity(h));
            pool.sort();
            pool.dedup();
            pool.into_iter()
                .map(|h| Ok((omega.weight(&h)?, h)))
                .filter(|r: &Result<(u64, Element)>| r.as_ref().map_or(true, |(w, _)| *w <= cap))
                .collect::<Result<_>>()?
        }
    };
    cands.sort();
    let mut best: Option<u64> = cands.iter().find(|(_, h)| h == g).map(|(w, _)| *w);
    let id = group.identity();
    search(group, &cands, g, &id, 0, max_factors, &mut best);
    Ok(best.map_or(OracleValue::NoDecomposition, OracleValue::Min))
}

fn search(
    group: &Group,
    cands: &[(u64, Element)],
    target: &Element,
    prefix: &Element,
    cost: u64,
    left: usize,
    best: &mut Option<u64>,
) {
    if left == 0 {
        return;
    }
    for (w, h) in cands {
        let c = cost + w;
        if best.is_some_and(|b| c >= b) {
            break;
        }
        let p = group.mul(prefix, h);
        if &p == target {
            *best = Some(c);
            break;
        }
        search(group, cands, target, &p, c, left - 1, best);
    }
}
