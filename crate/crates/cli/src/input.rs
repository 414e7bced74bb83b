//! Parsing of group specs, element lists and input files.

use std::fs;
use std::path::Path;

use lengthlab::{Element, GeneratingSet, Group, GroupSpec, DEFAULT_BALL_CAP};

use crate::BUDGET_ENV;

pub fn ball_cap() -> Result<usize, String> {
    match std::env::var(BUDGET_ENV) {
        Err(_) => Ok(DEFAULT_BALL_CAP),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(format!("{BUDGET_ENV} must be a positive integer, got {s:?}")),
            Ok(n) => Ok(n),
        },
    }
}

/// Shorthand such as `free:2`, `cyclic:4`, `vc`, `ab-torsion:2`,
/// `direct(free:1,cyclic:2)`, or a JSON group spec.
pub fn group(s: &str) -> Result<Group, String> {
    let spec: GroupSpec = s.parse().map_err(|e: lengthlab::Error| e.to_string())?;
    Group::new(spec).map_err(|e| e.to_string())
}

/// Elements separated by `;`.
pub fn elements(group: &Group, s: &str) -> Result<Vec<Element>, String> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| group.parse_element(t).map_err(|e| e.to_string()))
        .collect()
}

pub fn numbers(s: &str) -> Result<Vec<u64>, String> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| format!("expected a non-negative integer, got {t:?}")))
        .collect()
}

pub fn generators(group: &Group, s: Option<&str>) -> Result<GeneratingSet, String> {
    match s {
        None => Ok(group.standard_generators()),
        Some(s) => GeneratingSet::new(group, elements(group, s)?).map_err(|e| e.to_string()),
    }
}

pub fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}
