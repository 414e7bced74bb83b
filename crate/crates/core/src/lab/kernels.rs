use std::collections::{BTreeMap, BTreeSet};

use serde_json::json;

use super::{Check, ConstructionReport, Outcome, Rejection};
use crate::error::{Error, Result};
use crate::graph::check_consistent;
use crate::group::{BfsLayers, Element, Group};
use crate::gstar::GStarWord;
use crate::length::{
    conjugate_length, length_from_weight_exact, validate_length_axioms, DefaultRule, LengthTable,
    WeightSpec,
};
use crate::DEFAULT_BALL_CAP;

fn tokens(xs: &[Element]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

/// Exact values of `t` on `points`, or the error naming what is missing.
fn exact_on(t: &LengthTable, points: &[Element]) -> Result<BTreeMap<Element, u64>> {
    let missing: Vec<String> = points
        .iter()
        .filter(|x| !t.contains(x))
        .map(|x| x.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(Error::InsufficientDomain { missing });
    }
    points
        .iter()
        .map(|x| {
            t.exact(x)
                .map(|v| (x.clone(), v))
                .ok_or_else(|| Error::DomainGap(format!("value at {x} is not exact")))
        })
        .collect()
}

fn not_found(mut report: ConstructionReport, radius: usize) -> ConstructionReport {
    report.checks.push(Check::new(
        format!("a candidate within radius {radius} passes every check"),
        "found",
        "none",
    ));
    report.finish(Outcome::NotFoundWithinRadius { radius })
}

/// Density witness for `W(l, F) ∩ D(a, d)`.
///
/// Candidates `g` come in BFS order. Each gets the weight `d_i` on
/// `(g^-1 a_i)^{±1}`, `l` on `F`, and `M = max(l(F) ∪ d) + 1` elsewhere;
/// the first `g` whose induced length agrees with `l` on `F` and takes the
/// value `d_i` at `g^-1 a_i` is accepted. `F` is enlarged by `1` and
/// `A = {a_i^-1 a_j}` when needed.
pub fn lemd_kernel(
    base: &LengthTable,
    f: &[Element],
    a: &[Element],
    d: &[u64],
    radius: usize,
) -> Result<ConstructionReport> {
    let group = base.group();
    if a.len() != d.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: d.len(),
        });
    }
    let mut fset: BTreeSet<Element> = f.iter().cloned().collect();
    fset.insert(group.identity());
    for ai in a {
        for aj in a {
            fset.insert(group.mul(&group.inverse(ai), aj));
        }
    }
    let f_all: Vec<Element> = fset.iter().cloned().collect();
    if let Some(x) = f_all.iter().find(|x| !fset.contains(&group.inverse(x))) {
        return Err(Error::InvalidInput(format!("F is not symmetric at {x}")));
    }
    let mut report = ConstructionReport::new(
        "lemD",
        json!({
            "group": group.spec(),
            "F": tokens(&f_all),
            "a": tokens(a),
            "d": d,
            "radius": radius,
        }),
    );
    let lf = exact_on(base, &f_all)?;
    if !check_consistent(base, a, d)? {
        report.checks.push(Check::new(
            "distance vector is consistent with the tuple",
            false,
            false,
        ));
        return Ok(report.finish(Outcome::VacuouslyInD));
    }
    let m = lf.values().chain(d).copied().max().unwrap_or(0) + 1;

    let gens = group.standard_generators();
    for layer in BfsLayers::new(group, &gens, radius, DEFAULT_BALL_CAP) {
        for g in layer? {
            report.candidates_tried += 1;
            match lemd_candidate(group, &lf, a, d, m, &g)? {
                Err(reason) => report.rejected.push(Rejection { candidate: g, reason }),
                Ok(omega) => {
                    report.checks.push(Check::new(
                        "distance vector is consistent with the tuple",
                        true,
                        true,
                    ));
                    verify_lemd(&mut report, &omega, &lf, a, d, &g)?;
                    report.witness = Some(g);
                    report.weight = Some(omega.to_json());
                    return Ok(report.finish(Outcome::Accepted));
                }
            }
        }
    }
    Ok(not_found(report, radius))
}

fn lemd_candidate(
    group: &Group,
    lf: &BTreeMap<Element, u64>,
    a: &[Element],
    d: &[u64],
    m: u64,
    g: &Element,
) -> Result<std::result::Result<WeightSpec, String>> {
    let gi = group.inverse(g);
    let mut k: BTreeMap<Element, u64> = BTreeMap::new();
    for (ai, &di) in a.iter().zip(d) {
        let y = group.mul(&gi, ai);
        if group.is_identity(&y) {
            if di != 0 {
                return Ok(Err(format!("g^-1 a_i is the identity but d_i = {di}")));
            }
            continue;
        }
        if di == 0 {
            return Ok(Err(format!("d_i = 0 but g^-1 a_i = {y} is not the identity")));
        }
        if lf.contains_key(&y) {
            return Ok(Err(format!("K meets F at {y}")));
        }
        for z in [group.inverse(&y), y] {
            if let Some(old) = k.insert(z.clone(), di) {
                if old != di {
                    return Ok(Err(format!("K assigns both {old} and {di} to {z}")));
                }
            }
        }
    }
    let support = lf
        .iter()
        .filter(|(x, _)| !group.is_identity(x))
        .map(|(x, &v)| (x.clone(), v))
        .chain(k.iter().map(|(x, &v)| (x.clone(), v)));
    let omega = WeightSpec::new(group, support, DefaultRule::Constant(m))?;
    let mut dom: Vec<Element> = lf.keys().cloned().collect();
    dom.extend(k.keys().cloned());
    let t = length_from_weight_exact(&omega, &dom, m)?;
    for (x, &v) in lf {
        let got = t.exact(x).expect("exact");
        if got != v {
            return Ok(Err(format!("induced length at {x} is {got}, not {v}")));
        }
    }
    for (ai, &di) in a.iter().zip(d) {
        let y = group.mul(&gi, ai);
        let got = t.exact(&y).expect("exact");
        if got != di {
            return Ok(Err(format!("induced length at {y} is {got}, not {di}")));
        }
    }
    Ok(Ok(omega))
}

/// Recomputes the induced length from scratch and records one check per
/// window point and per tuple entry.
fn verify_lemd(
    report: &mut ConstructionReport,
    omega: &WeightSpec,
    lf: &BTreeMap<Element, u64>,
    a: &[Element],
    d: &[u64],
    g: &Element,
) -> Result<()> {
    let group = omega.group();
    let gi = group.inverse(g);
    let ys: Vec<Element> = a.iter().map(|ai| group.mul(&gi, ai)).collect();
    let mut dom: BTreeSet<Element> = lf.keys().cloned().collect();
    dom.extend(ys.iter().cloned());
    let dom: Vec<Element> = dom.into_iter().collect();
    let cap = lf.values().chain(d).copied().max().unwrap_or(0) + 1;
    let t = length_from_weight_exact(omega, &dom, cap)?;
    for (x, &v) in lf {
        report.checks.push(Check::new(
            format!("induced length agrees with the base at {x}"),
            v,
            t.exact(x).expect("exact"),
        ));
    }
    for ((ai, y), &di) in a.iter().zip(&ys).zip(d) {
        report.checks.push(Check::new(
            format!("induced length of g^-1 a_i = {y} (a_i = {ai})"),
            di,
            t.exact(y).expect("exact"),
        ));
    }
    Ok(())
}

/// Transitivity witness: `g` with `l_omega ∈ W(l0, F) ∩ g∘W(l1, F)`.
///
/// Candidates `g` come in BFS order; `g` is rejected when `gFg^-1` meets
/// `F`. Otherwise `omega` is `l0` on `F`, `l1(f)` at `g f g^-1`, and
/// `N + 1` elsewhere with `N = max(l0, l1)` over `F`; `g` is accepted when
/// `l_omega(f) = l0(f)` and `l_omega(g f g^-1) = l1(f)` for every `f`.
/// With `materialize_i1` the words `f^-1 x h x^-1` are built in `G*<x>`
/// and evaluated at every candidate as a cross-check of the direct test.
pub fn tt_kernel(
    t0: &LengthTable,
    t1: &LengthTable,
    f: &[Element],
    radius: usize,
    materialize_i1: bool,
) -> Result<ConstructionReport> {
    let group = t0.group();
    if t1.group() != group {
        return Err(Error::GroupMismatch("the two tables live on different groups".into()));
    }
    let fset: BTreeSet<Element> = f.iter().cloned().collect();
    if fset.is_empty() {
        return Err(Error::InvalidInput("F must be non-empty".into()));
    }
    if fset.iter().any(|x| group.is_identity(x)) {
        return Err(Error::InvalidInput("F must not contain the identity".into()));
    }
    if let Some(x) = fset.iter().find(|x| !fset.contains(&group.inverse(x))) {
        return Err(Error::InvalidInput(format!("F is not symmetric at {x}")));
    }
    let f_all: Vec<Element> = fset.iter().cloned().collect();
    let l0 = exact_on(t0, &f_all)?;
    let l1 = exact_on(t1, &f_all)?;
    let n = l0.values().chain(l1.values()).copied().max().unwrap_or(0);
    let mut report = ConstructionReport::new(
        "tt",
        json!({
            "group": group.spec(),
            "F": tokens(&f_all),
            "l0": l0.values().collect::<Vec<_>>(),
            "l1": l1.values().collect::<Vec<_>>(),
            "radius": radius,
            "materialize_i1": materialize_i1,
        }),
    );
    let i1: Vec<GStarWord> = if materialize_i1 {
        let mut words = Vec::new();
        for fa in &f_all {
            for h in &f_all {
                let raw = GStarWord::constant(group, &group.inverse(fa))?
                    .mul(group, &GStarWord::x())
                    .mul(group, &GStarWord::constant(group, h)?)
                    .mul(group, &GStarWord::x_pow(-1));
                words.push(raw);
            }
        }
        words
    } else {
        Vec::new()
    };
    let mut disagreements = 0usize;

    let gens = group.standard_generators();
    for layer in BfsLayers::new(group, &gens, radius, DEFAULT_BALL_CAP) {
        for g in layer? {
            report.candidates_tried += 1;
            let gi = group.inverse(&g);
            let conj: Vec<Element> = f_all.iter().map(|x| group.conj(x, &gi)).collect();
            let meet = conj.iter().find(|c| fset.contains(c));
            if materialize_i1 {
                let hit = i1.iter().any(|w| group.is_identity(&w.eval(group, &g)));
                if hit != meet.is_some() {
                    disagreements += 1;
                }
            }
            if let Some(c) = meet {
                report.rejected.push(Rejection {
                    candidate: g,
                    reason: format!("gFg^-1 meets F at {c}"),
                });
                continue;
            }
            let support = f_all
                .iter()
                .map(|x| (x.clone(), l0[x]))
                .chain(f_all.iter().zip(&conj).map(|(x, c)| (c.clone(), l1[x])));
            let omega = WeightSpec::new(group, support, DefaultRule::Constant(n + 1))?;
            let mut dom = vec![group.identity()];
            dom.extend(f_all.iter().cloned());
            dom.extend(conj.iter().cloned());
            let t = length_from_weight_exact(&omega, &dom, n + 1)?;
            let bad0 = f_all.iter().find(|x| t.exact(x) != Some(l0[*x]));
            let bad1 = f_all.iter().zip(&conj).find(|(x, c)| t.exact(c) != Some(l1[*x]));
            if let Some(x) = bad0 {
                report.rejected.push(Rejection {
                    candidate: g,
                    reason: format!("induced length at {x} differs from l0"),
                });
                continue;
            }
            if let Some((x, _)) = bad1 {
                report.rejected.push(Rejection {
                    candidate: g,
                    reason: format!("translated induced length at {x} differs from l1"),
                });
                continue;
            }
            verify_tt(&mut report, &omega, &f_all, &l0, &l1, &g, n)?;
            if materialize_i1 {
                report.checks.push(Check::new(
                    "explicit I1 words agree with the direct intersection test",
                    0,
                    disagreements,
                ));
            }
            report.witness = Some(g);
            report.weight = Some(omega.to_json());
            return Ok(report.finish(Outcome::Accepted));
        }
    }
    if materialize_i1 {
        report.checks.push(Check::new(
            "explicit I1 words agree with the direct intersection test",
            0,
            disagreements,
        ));
    }
    Ok(not_found(report, radius))
}

fn verify_tt(
    report: &mut ConstructionReport,
    omega: &WeightSpec,
    f: &[Element],
    l0: &BTreeMap<Element, u64>,
    l1: &BTreeMap<Element, u64>,
    g: &Element,
    n: u64,
) -> Result<()> {
    let group = omega.group();
    let gi = group.inverse(g);
    let mut dom = vec![group.identity()];
    dom.extend(f.iter().cloned());
    dom.extend(f.iter().map(|x| group.conj(x, &gi)));
    dom.sort();
    dom.dedup();
    let t = length_from_weight_exact(omega, &dom, n + 1)?;
    let moved = conjugate_length(&gi, &t, Some(f))?;
    for x in f {
        report.checks.push(Check::new(
            format!("induced length at {x} equals l0"),
            l0[x],
            t.exact(x).expect("exact"),
        ));
    }
    for x in f {
        report.checks.push(Check::new(
            format!("(g^-1 . l_omega) at {x} equals l1"),
            l1[x],
            moved
                .table
                .exact(x)
                .map_or_else(|| "missing".to_string(), |v| v.to_string()),
        ));
    }
    let axioms = validate_length_axioms(&t);
    report.checks.push(Check::new(
        "induced length satisfies the axioms on F ∪ gFg^-1 ∪ {1}",
        0,
        axioms.violations.len(),
    ));
    Ok(())
}
