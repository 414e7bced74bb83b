//! Catalog of countable groups with solvable word problem.
//!
//! Every group in the catalog has a canonical normal form, so equality of
//! [`Element`] values is equality in the group. Arithmetic lives on
//! [`Group`], which owns the interpretation of the encoding.

mod ball;
mod element;
pub(crate) mod parse;

pub use ball::{BfsLayers, GeneratingSet};
pub use element::{Element, Letter, FREE_ALPHABET};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Declarative description of a catalog group.
///
/// Serialized as `{"variant": ..., "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "variant", content = "params")]
pub enum GroupSpec {
    FreeGroup { rank: usize },
    FreeAbelian { rank: usize },
    CyclicFinite { order: u64 },
    DirectProduct { factors: Vec<GroupSpec> },
    FreeProduct { factors: Vec<GroupSpec> },
    /// `<a, b | b^4 = 1, b^-1 a b = a^-1>`.
    VcGroup,
    /// `Z/4 x (Z/2)^k`.
    AbTorsion { k: usize },
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::FreeGroup { rank } => {
                if *rank == 0 || *rank > FREE_ALPHABET.len() {
                    return Err(Error::InvalidSpec(format!(
                        "free group rank must be in 1..={}, got {rank}",
                        FREE_ALPHABET.len()
                    )));
                }
            }
            GroupSpec::FreeAbelian { rank } => {
                if *rank == 0 {
                    return Err(Error::InvalidSpec("free abelian rank must be >= 1".into()));
                }
            }
            GroupSpec::CyclicFinite { order } => {
                if *order < 2 {
                    return Err(Error::InvalidSpec(format!(
                        "cyclic order must be >= 2, got {order}"
                    )));
                }
            }
            GroupSpec::DirectProduct { factors } | GroupSpec::FreeProduct { factors } => {
                if factors.is_empty() {
                    return Err(Error::InvalidSpec("product needs at least one factor".into()));
                }
                for f in factors {
                    f.validate()?;
                }
            }
            GroupSpec::VcGroup => {}
            GroupSpec::AbTorsion { k } => {
                if *k == 0 {
                    return Err(Error::InvalidSpec("AbTorsion needs k >= 1".into()));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Free { rank: usize },
    /// Modulus per coordinate; 0 means the coordinate is `Z`.
    Abelian { moduli: Vec<u64> },
    Vc,
    Direct(Vec<Group>),
    FreeProduct(Vec<Group>),
}

/// A catalog group: normal forms, arithmetic and membership checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    spec: GroupSpec,
    kind: Kind,
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        spec.validate()?;
        let kind = match &spec {
            GroupSpec::FreeGroup { rank } => Kind::Free { rank: *rank },
            GroupSpec::FreeAbelian { rank } => Kind::Abelian {
                moduli: vec![0; *rank],
            },
            GroupSpec::CyclicFinite { order } => Kind::Abelian {
                moduli: vec![*order],
            },
            GroupSpec::AbTorsion { k } => {
                let mut moduli = vec![4];
                moduli.extend(std::iter::repeat_n(2, *k));
                Kind::Abelian { moduli }
            }
            GroupSpec::VcGroup => Kind::Vc,
            GroupSpec::DirectProduct { factors } => Kind::Direct(
                factors
                    .iter()
                    .cloned()
                    .map(Group::new)
                    .collect::<Result<_>>()?,
            ),
            GroupSpec::FreeProduct { factors } => Kind::FreeProduct(
                factors
                    .iter()
                    .cloned()
                    .map(Group::new)
                    .collect::<Result<_>>()?,
            ),
        };
        Ok(Group { spec, kind })
    }

    pub fn free(rank: usize) -> Self {
        Group::new(GroupSpec::FreeGroup { rank }).expect("valid free group rank")
    }

    pub fn cyclic(order: u64) -> Self {
        Group::new(GroupSpec::CyclicFinite { order }).expect("valid cyclic order")
    }

    pub fn vc() -> Self {
        Group::new(GroupSpec::VcGroup).expect("vc group")
    }

    pub fn ab_torsion(k: usize) -> Self {
        Group::new(GroupSpec::AbTorsion { k }).expect("valid torsion parameter")
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn identity(&self) -> Element {
        match &self.kind {
            Kind::Free { .. } => Element::Free(Vec::new()),
            Kind::Abelian { moduli } => Element::Abelian(vec![0; moduli.len()]),
            Kind::Vc => Element::Vc { alpha: 0, beta: 0 },
            Kind::Direct(fs) => Element::Direct(fs.iter().map(Group::identity).collect()),
            Kind::FreeProduct(_) => Element::FreeProduct(Vec::new()),
        }
    }

    pub fn is_identity(&self, a: &Element) -> bool {
        match a {
            Element::Free(w) => w.is_empty(),
            Element::Abelian(v) => v.iter().all(|&x| x == 0),
            Element::Vc { alpha, beta } => *alpha == 0 && *beta == 0,
            Element::Direct(parts) => match &self.kind {
                Kind::Direct(fs) => fs.iter().zip(parts).all(|(g, p)| g.is_identity(p)),
                _ => false,
            },
            Element::FreeProduct(s) => s.is_empty(),
        }
    }

    /// Group order, `None` for infinite groups.
    pub fn order(&self) -> Option<u64> {
        match &self.kind {
            Kind::Free { .. } | Kind::Vc => None,
            Kind::Abelian { moduli } => moduli
                .iter()
                .try_fold(1u64, |acc, &m| if m == 0 { None } else { acc.checked_mul(m) }),
            Kind::Direct(fs) => fs
                .iter()
                .try_fold(1u64, |acc, g| g.order().and_then(|o| acc.checked_mul(o))),
            Kind::FreeProduct(fs) => {
                if fs.len() == 1 {
                    fs[0].order()
                } else {
                    None
                }
            }
        }
    }

    pub fn is_abelian(&self) -> bool {
        match &self.kind {
            Kind::Abelian { .. } => true,
            Kind::Free { rank } => *rank == 1,
            Kind::Vc => false,
            Kind::Direct(fs) => fs.iter().all(Group::is_abelian),
            Kind::FreeProduct(fs) => fs.len() == 1 && fs[0].is_abelian(),
        }
    }

    /// True iff `a` is a normal-form element of this group.
    pub fn contains(&self, a: &Element) -> bool {
        match (&self.kind, a) {
            (Kind::Free { rank }, Element::Free(w)) => {
                w.iter().all(|l| (l.gen as usize) < *rank)
                    && w.windows(2).all(|p| p[0] != p[1].inv())
            }
            (Kind::Abelian { moduli }, Element::Abelian(v)) => {
                v.len() == moduli.len()
                    && v
                        .iter()
                        .zip(moduli)
                        .all(|(&x, &m)| m == 0 || (0..m as i64).contains(&x))
            }
            (Kind::Vc, Element::Vc { beta, .. }) => *beta < 4,
            (Kind::Direct(fs), Element::Direct(parts)) => {
                parts.len() == fs.len() && fs.iter().zip(parts).all(|(g, p)| g.contains(p))
            }
            (Kind::FreeProduct(fs), Element::FreeProduct(syl)) => {
                syl.iter().all(|(i, e)| {
                    *i < fs.len() && fs[*i].contains(e) && !fs[*i].is_identity(e)
                }) && syl.windows(2).all(|p| p[0].0 != p[1].0)
            }
            _ => false,
        }
    }

    fn check(&self, a: &Element) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!(
                "{a} is not a normal-form element of {:?}",
                self.spec
            )))
        }
    }

    /// Brings raw (possibly unreduced) data of the right shape into normal
    /// form. Idempotent on normal forms.
    pub fn normalize(&self, a: &Element) -> Result<Element> {
        match (&self.kind, a) {
            (Kind::Free { rank }, Element::Free(w)) => {
                if w.iter().any(|l| l.gen as usize >= *rank) {
                    return Err(Error::GroupMismatch(format!("{a} uses a generator beyond rank {rank}")));
                }
                let mut out = Vec::with_capacity(w.len());
                push_reduced(&mut out, w);
                Ok(Element::Free(out))
            }
            (Kind::Abelian { moduli }, Element::Abelian(v)) if v.len() == moduli.len() => Ok(
                Element::Abelian(v.iter().zip(moduli).map(|(&x, &m)| reduce_mod(x, m)).collect()),
            ),
            (Kind::Vc, Element::Vc { alpha, beta }) => Ok(Element::Vc {
                alpha: *alpha,
                beta: beta % 4,
            }),
            (Kind::Direct(fs), Element::Direct(parts)) if parts.len() == fs.len() => Ok(
                Element::Direct(
                    fs.iter()
                        .zip(parts)
                        .map(|(g, p)| g.normalize(p))
                        .collect::<Result<_>>()?,
                ),
            ),
            (Kind::FreeProduct(fs), Element::FreeProduct(syl)) => {
                let mut out: Vec<(usize, Element)> = Vec::with_capacity(syl.len());
                for (i, e) in syl {
                    let factor = fs.get(*i).ok_or_else(|| {
                        Error::GroupMismatch(format!("free product has no factor {i}"))
                    })?;
                    let e = factor.normalize(e)?;
                    push_syllable(fs, &mut out, *i, e);
                }
                Ok(Element::FreeProduct(out))
            }
            _ => Err(Error::GroupMismatch(format!(
                "{a} has the wrong shape for {:?}",
                self.spec
            ))),
        }
    }

    /// Product of two normal forms of this group. Inputs are not checked;
    /// see [`Group::multiply`] for the checked variant.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (&self.kind, a, b) {
            (Kind::Free { .. }, Element::Free(x), Element::Free(y)) => {
                let mut out = Vec::with_capacity(x.len() + y.len());
                out.extend_from_slice(x);
                push_reduced(&mut out, y);
                Element::Free(out)
            }
            (Kind::Abelian { moduli }, Element::Abelian(x), Element::Abelian(y)) => Element::Abelian(
                x.iter()
                    .zip(y)
                    .zip(moduli)
                    .map(|((&p, &q), &m)| reduce_mod(p + q, m))
                    .collect(),
            ),
            (
                Kind::Vc,
                Element::Vc { alpha, beta },
                Element::Vc {
                    alpha: gamma,
                    beta: delta,
                },
            ) => {
                // b^beta a^gamma = a^{(-1)^beta gamma} b^beta
                let sign = if beta % 2 == 0 { 1 } else { -1 };
                Element::Vc {
                    alpha: alpha + sign * gamma,
                    beta: (beta + delta) % 4,
                }
            }
            (Kind::Direct(fs), Element::Direct(x), Element::Direct(y)) => Element::Direct(
                fs.iter()
                    .zip(x.iter().zip(y))
                    .map(|(g, (p, q))| g.mul(p, q))
                    .collect(),
            ),
            (Kind::FreeProduct(fs), Element::FreeProduct(x), Element::FreeProduct(y)) => {
                let mut out = x.clone();
                for (i, e) in y {
                    push_syllable(fs, &mut out, *i, e.clone());
                }
                Element::FreeProduct(out)
            }
            _ => panic!("mul called with elements of a different group: {a} * {b}"),
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn inverse(&self, a: &Element) -> Element {
        match (&self.kind, a) {
            (Kind::Free { .. }, Element::Free(w)) => {
                Element::Free(w.iter().rev().map(|l| l.inv()).collect())
            }
            (Kind::Abelian { moduli }, Element::Abelian(v)) => Element::Abelian(
                v.iter().zip(moduli).map(|(&x, &m)| reduce_mod(-x, m)).collect(),
            ),
            (Kind::Vc, Element::Vc { alpha, beta }) => {
                let sign = if beta % 2 == 0 { 1 } else { -1 };
                Element::Vc {
                    alpha: -sign * alpha,
                    beta: (4 - beta) % 4,
                }
            }
            (Kind::Direct(fs), Element::Direct(parts)) => {
                Element::Direct(fs.iter().zip(parts).map(|(g, p)| g.inverse(p)).collect())
            }
            (Kind::FreeProduct(fs), Element::FreeProduct(syl)) => Element::FreeProduct(
                syl.iter().rev().map(|(i, e)| (*i, fs[*i].inverse(e))).collect(),
            ),
            _ => panic!("inverse called with an element of a different group: {a}"),
        }
    }

    /// `a^b = b^-1 a b`.
    pub fn conjugate(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.conj(a, b))
    }

    pub(crate) fn conj(&self, a: &Element, b: &Element) -> Element {
        self.mul(&self.mul(&self.inverse(b), a), b)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&self.inverse(&ba), &ab)
    }

    pub fn pow(&self, a: &Element, n: i64) -> Element {
        let base = if n < 0 { self.inverse(a) } else { a.clone() };
        let mut acc = self.identity();
        let mut sq = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            k >>= 1;
        }
        acc
    }

    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a Element>) -> Element {
        items
            .into_iter()
            .fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    /// The standard symmetric generating set of the variant.
    pub fn standard_generators(&self) -> GeneratingSet {
        let mut gens = Vec::new();
        self.collect_standard(&mut gens);
        GeneratingSet::certified(self, gens)
    }

    fn collect_standard(&self, out: &mut Vec<Element>) {
        match &self.kind {
            Kind::Free { rank } => {
                for g in 0..*rank as u16 {
                    out.push(Element::Free(vec![Letter::new(g, false)]));
                    out.push(Element::Free(vec![Letter::new(g, true)]));
                }
            }
            Kind::Abelian { moduli } => {
                for i in 0..moduli.len() {
                    let mut e = vec![0; moduli.len()];
                    e[i] = 1;
                    let x = Element::Abelian(e);
                    out.push(self.inverse(&x));
                    out.push(x);
                }
            }
            Kind::Vc => {
                for (alpha, beta) in [(1, 0), (-1, 0), (0, 1), (0, 3)] {
                    out.push(Element::Vc { alpha, beta });
                }
            }
            Kind::Direct(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    let mut sub = Vec::new();
                    g.collect_standard(&mut sub);
                    for s in sub {
                        let mut parts: Vec<Element> = fs.iter().map(Group::identity).collect();
                        parts[i] = s;
                        out.push(Element::Direct(parts));
                    }
                }
            }
            Kind::FreeProduct(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    let mut sub = Vec::new();
                    g.collect_standard(&mut sub);
                    out.extend(sub.into_iter().map(|s| Element::FreeProduct(vec![(i, s)])));
                }
            }
        }
        out.sort();
        out.dedup();
    }

    /// Embeds an element of factor `index` of a product group.
    pub fn embed(&self, index: usize, e: &Element) -> Result<Element> {
        match &self.kind {
            Kind::Direct(fs) if index < fs.len() => {
                fs[index].check(e)?;
                let mut parts: Vec<Element> = fs.iter().map(Group::identity).collect();
                parts[index] = e.clone();
                Ok(Element::Direct(parts))
            }
            Kind::FreeProduct(fs) if index < fs.len() => {
                fs[index].check(e)?;
                let mut out = Vec::new();
                push_syllable(fs, &mut out, index, e.clone());
                Ok(Element::FreeProduct(out))
            }
            _ => Err(Error::GroupMismatch(format!(
                "{:?} has no factor {index}",
                self.spec
            ))),
        }
    }

    /// Free generator `index` of a free group.
    pub fn letter(&self, index: usize) -> Result<Element> {
        match &self.kind {
            Kind::Free { rank } if index < *rank => {
                Ok(Element::Free(vec![Letter::new(index as u16, false)]))
            }
            _ => Err(Error::GroupMismatch(format!(
                "{:?} has no free generator {index}",
                self.spec
            ))),
        }
    }
}

fn reduce_mod(x: i64, m: u64) -> i64 {
    if m == 0 {
        x
    } else {
        x.rem_euclid(m as i64)
    }
}

fn push_reduced(out: &mut Vec<Letter>, w: &[Letter]) {
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
}

fn push_syllable(factors: &[Group], out: &mut Vec<(usize, Element)>, i: usize, e: Element) {
    let g = &factors[i];
    if g.is_identity(&e) {
        return;
    }
    match out.last_mut() {
        Some((j, top)) if *j == i => {
            let merged = g.mul(top, &e);
            if g.is_identity(&merged) {
                out.pop();
            } else {
                *top = merged;
            }
        }
        _ => out.push((i, e)),
    }
}
