use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, Group, GroupSpec};

/// A table entry: an exact value, or "strictly greater than the cap".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LengthValue {
    Exact(u64),
    Capped(u64),
}

impl LengthValue {
    pub fn exact(self) -> Option<u64> {
        match self {
            LengthValue::Exact(v) => Some(v),
            LengthValue::Capped(_) => None,
        }
    }

    /// Smallest value consistent with the entry.
    pub fn lower(self) -> u64 {
        match self {
            LengthValue::Exact(v) => v,
            LengthValue::Capped(c) => c + 1,
        }
    }

    /// Largest value consistent with the entry, `None` if unbounded.
    pub fn upper(self) -> Option<u64> {
        self.exact()
    }
}

impl fmt::Display for LengthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthValue::Exact(v) => write!(f, "{v}"),
            LengthValue::Capped(c) => write!(f, ">{c}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ValueJson {
    Exact(u64),
    Capped { capped: u64 },
}

impl Serialize for LengthValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            LengthValue::Exact(v) => ValueJson::Exact(v),
            LengthValue::Capped(c) => ValueJson::Capped { capped: c },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LengthValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match ValueJson::deserialize(d)? {
            ValueJson::Exact(v) => LengthValue::Exact(v),
            ValueJson::Capped { capped } => LengthValue::Capped(capped),
        })
    }
}

/// A length function restricted to a finite, explicitly enumerated domain.
///
/// `exact_radius = r > 0` certifies that every element of length at most
/// `r` is in the domain; `0` means the table is ground truth only on its
/// domain.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthTable {
    group: Group,
    domain: Vec<Element>,
    values: HashMap<Element, LengthValue>,
    exact_radius: u64,
}

impl LengthTable {
    pub fn new(
        group: &Group,
        entries: impl IntoIterator<Item = (Element, LengthValue)>,
        exact_radius: u64,
    ) -> Result<Self> {
        let mut domain = Vec::new();
        let mut values = HashMap::new();
        for (e, v) in entries {
            if !group.contains(&e) {
                return Err(Error::GroupMismatch(format!(
                    "{e} is not an element of {:?}",
                    group.spec()
                )));
            }
            if values.insert(e.clone(), v).is_some() {
                return Err(Error::InvalidInput(format!("duplicate table entry for {e}")));
            }
            domain.push(e);
        }
        Ok(LengthTable {
            group: group.clone(),
            domain,
            values,
            exact_radius,
        })
    }

    /// Exact table `g -> f(g)` over `domain`.
    pub fn from_fn(
        group: &Group,
        domain: impl IntoIterator<Item = Element>,
        f: impl Fn(&Element) -> u64,
    ) -> Result<Self> {
        LengthTable::new(
            group,
            domain.into_iter().map(|e| {
                let v = f(&e);
                (e, LengthValue::Exact(v))
            }),
            0,
        )
    }

    /// `g -> c` off the identity, `0` at the identity.
    pub fn constant(group: &Group, domain: impl IntoIterator<Item = Element>, c: u64) -> Result<Self> {
        LengthTable::from_fn(group, domain, |g| if group.is_identity(g) { 0 } else { c })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn domain(&self) -> &[Element] {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn exact_radius(&self) -> u64 {
        self.exact_radius
    }

    pub fn get(&self, g: &Element) -> Option<LengthValue> {
        self.values.get(g).copied()
    }

    pub fn exact(&self, g: &Element) -> Option<u64> {
        self.get(g).and_then(LengthValue::exact)
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.values.contains_key(g)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Element, LengthValue)> {
        self.domain.iter().map(move |e| (e, self.values[e]))
    }

    /// Value at `g`, falling back on the ball certificate: an element
    /// outside the domain has length greater than `exact_radius`.
    pub(crate) fn lookup_or_beyond(&self, g: &Element) -> Option<LengthValue> {
        match self.get(g) {
            Some(v) => Some(v),
            None if self.exact_radius > 0 => Some(LengthValue::Capped(self.exact_radius)),
            None => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableJson {
            group: self.group.spec().clone(),
            entries: self
                .entries()
                .map(|(e, v)| (e.to_string(), v))
                .collect(),
            exact_radius: self.exact_radius,
        })
        .expect("table serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: TableJson = serde_json::from_str(s).map_err(|e| Error::Parse {
            what: "length table",
            input: s.chars().take(80).collect(),
            reason: e.to_string(),
        })?;
        let group = Group::new(raw.group)?;
        let entries = raw
            .entries
            .into_iter()
            .map(|(tok, v)| Ok((group.parse_element(&tok)?, v)))
            .collect::<Result<Vec<_>>>()?;
        LengthTable::new(&group, entries, raw.exact_radius)
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    group: GroupSpec,
    entries: Vec<(String, LengthValue)>,
    exact_radius: u64,
}
