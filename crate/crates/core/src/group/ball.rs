use std::collections::{BTreeSet, HashSet};

use super::{Element, Group};
use crate::error::{Error, Result};

/// Radius used when certifying that a custom set generates an infinite
/// group: every standard generator must be reached within this many steps.
const CERTIFICATE_RADIUS: usize = 8;

/// A finite symmetric generating set, identity excluded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    elements: Vec<Element>,
    verified: bool,
}

impl GeneratingSet {
    pub(crate) fn certified(group: &Group, mut elements: Vec<Element>) -> Self {
        elements.retain(|e| !group.is_identity(e));
        elements.sort();
        elements.dedup();
        GeneratingSet {
            elements,
            verified: true,
        }
    }

    /// Builds a generating set from arbitrary elements: inverses are added,
    /// the identity is rejected, and generation is checked (closure census
    /// for finite groups, reachability of the standard generators
    /// otherwise).
    pub fn new(group: &Group, elements: Vec<Element>) -> Result<Self> {
        let mut all = Vec::with_capacity(elements.len() * 2);
        for e in elements {
            if !group.contains(&e) {
                return Err(Error::GroupMismatch(format!("{e} is not in {:?}", group.spec())));
            }
            if group.is_identity(&e) {
                return Err(Error::InvalidInput(
                    "a generating set must not contain the identity".into(),
                ));
            }
            all.push(group.inverse(&e));
            all.push(e);
        }
        all.sort();
        all.dedup();
        let mut set = GeneratingSet {
            elements: all,
            verified: false,
        };
        set.verified = set.check_generates(group);
        Ok(set)
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_verified_generating(&self) -> bool {
        self.verified
    }

    fn check_generates(&self, group: &Group) -> bool {
        if self.elements.is_empty() {
            return false;
        }
        match group.order() {
            Some(order) => {
                let mut seen: HashSet<Element> = HashSet::new();
                for layer in BfsLayers::new(group, self, usize::MAX, usize::MAX) {
                    match layer {
                        Ok(l) => seen.extend(l),
                        Err(_) => return false,
                    }
                }
                seen.len() as u64 == order
            }
            None => {
                let targets = group.standard_generators();
                let mut missing: HashSet<&Element> = targets.elements.iter().collect();
                for layer in BfsLayers::new(group, self, CERTIFICATE_RADIUS, 1 << 20) {
                    let Ok(layer) = layer else { return false };
                    for e in &layer {
                        missing.remove(e);
                    }
                    if missing.is_empty() {
                        return true;
                    }
                }
                false
            }
        }
    }
}

/// Lazy breadth-first enumeration of a ball, one sorted layer at a time.
///
/// Layer `n` is exactly the set of elements of word length `n` with respect
/// to the generating set; layer 0 is the identity.
pub struct BfsLayers<'a> {
    group: &'a Group,
    gens: &'a [Element],
    seen: HashSet<Element>,
    frontier: Vec<Element>,
    next_radius: usize,
    max_radius: usize,
    cap: usize,
    done: bool,
}

impl<'a> BfsLayers<'a> {
    pub fn new(group: &'a Group, gens: &'a GeneratingSet, max_radius: usize, cap: usize) -> Self {
        BfsLayers {
            group,
            gens: gens.elements(),
            seen: HashSet::new(),
            frontier: Vec::new(),
            next_radius: 0,
            max_radius,
            cap,
            done: false,
        }
    }
}

impl Iterator for BfsLayers<'_> {
    type Item = Result<Vec<Element>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done || self.next_radius > self.max_radius {
            return None;
        }
        let layer: Vec<Element> = if self.next_radius == 0 {
            vec![self.group.identity()]
        } else {
            let mut fresh = BTreeSet::new();
            for g in &self.frontier {
                for x in self.gens {
                    let h = self.group.mul(g, x);
                    if !self.seen.contains(&h) {
                        fresh.insert(h);
                    }
                }
            }
            fresh.into_iter().collect()
        };
        if layer.is_empty() {
            self.done = true;
            return None;
        }
        if self.seen.len() + layer.len() > self.cap {
            self.done = true;
            return Some(Err(Error::BudgetExceeded {
                what: "ball enumeration",
                cap: self.cap,
            }));
        }
        self.seen.extend(layer.iter().cloned());
        self.frontier = layer.clone();
        self.next_radius += 1;
        Some(Ok(layer))
    }
}

impl Group {
    /// Layers of the ball of radius `r`, each sorted.
    pub fn ball_layers(&self, gens: &GeneratingSet, r: usize, cap: usize) -> Result<Vec<Vec<Element>>> {
        BfsLayers::new(self, gens, r, cap).collect()
    }

    /// All elements of word length at most `r`, identity first, then layer
    /// by layer in sorted order.
    pub fn ball(&self, gens: &GeneratingSet, r: usize, cap: usize) -> Result<Vec<Element>> {
        Ok(self.ball_layers(gens, r, cap)?.into_iter().flatten().collect())
    }

    /// `{ a^t : t in ball(r) }`.
    pub fn conjugacy_class_in_ball(
        &self,
        a: &Element,
        gens: &GeneratingSet,
        r: usize,
        cap: usize,
    ) -> Result<BTreeSet<Element>> {
        let mut out = BTreeSet::new();
        for layer in BfsLayers::new(self, gens, r, cap) {
            for t in layer? {
                out.insert(self.conj(a, &t));
            }
        }
        Ok(out)
    }
}
