use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;
use serde_json::json;

use super::{Check, ConstructionReport, Outcome};
use crate::error::{Error, Result};
use crate::graph::{cayley_ball, ep_witness, tuples_congruent, vc_extension_graph, VertexTuple};
use crate::group::{Element, Group};
use crate::length::{validate_length_axioms, word_length_table, LengthTable};
use crate::DEFAULT_BALL_CAP;

/// Census of every symmetric generating set of `Z/4 x (Z/2)^k`.
#[derive(Debug, Clone, Serialize)]
pub struct AbCensus {
    pub k: usize,
    pub order: usize,
    /// Inverse-closed orbits `{x, x^-1}` of non-identity elements.
    pub orbits: usize,
    pub subsets_examined: u64,
    pub generating: u64,
    pub skipped_non_generating: u64,
    /// How many generating sets give each value of `k_X((2,0,...))`.
    pub value_histogram: BTreeMap<u64, u64>,
    pub report: ConstructionReport,
}

/// Enumerates every non-empty symmetric subset `X` of the group, keeps the
/// generating ones, and checks that the word length `k_X` is a length
/// function with `k_X((2,0,...)) <= 2`; so no word length takes the value
/// 3 there, while the constant 3 is a length function.
pub fn ex_ab_exhaustive(k: usize, budget: u64) -> Result<AbCensus> {
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidInput("k must be 1, 2 or 3".into()));
    }
    let group = Group::ab_torsion(k);
    let elems = group.ball(&group.standard_generators(), usize::MAX, DEFAULT_BALL_CAP)?;
    let n = elems.len();
    let index: HashMap<&Element, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mul: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| elems.iter().map(|b| index[&group.mul(a, b)]).collect())
        .collect();
    let inv: Vec<usize> = elems.iter().map(|a| index[&group.inverse(a)]).collect();
    let id = index[&group.identity()];
    let mut coords = vec![0i64; k + 1];
    coords[0] = 2;
    let g = index[&Element::Abelian(coords)];

    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; n];
    for i in 0..n {
        if i == id || seen[i] {
            continue;
        }
        seen[i] = true;
        seen[inv[i]] = true;
        orbits.push(if inv[i] == i { vec![i] } else { vec![i, inv[i]] });
    }
    let subsets = 1u64 << orbits.len();
    if subsets - 1 > budget {
        return Err(Error::BudgetExceeded {
            what: "generating-set census",
            cap: budget as usize,
        });
    }

    let mut generating = 0u64;
    let mut within_two = 0u64;
    let mut axiom_ok = 0u64;
    let mut histogram = BTreeMap::new();
    let mut gens = Vec::new();
    for mask in 1..subsets {
        gens.clear();
        for (j, o) in orbits.iter().enumerate() {
            if mask >> j & 1 == 1 {
                gens.extend_from_slice(o);
            }
        }
        let Some(kx) = word_lengths(&mul, id, &gens) else { continue };
        generating += 1;
        *histogram.entry(kx[g]).or_insert(0u64) += 1;
        if (1..=2).contains(&kx[g]) {
            within_two += 1;
        }
        if is_length_function(&mul, &inv, id, &kx) {
            axiom_ok += 1;
        }
    }

    let constant = LengthTable::constant(&group, elems.clone(), 3)?;
    let mut report = ConstructionReport::new("ex_ab", json!({ "k": k, "order": n, "g": elems[g].to_string() }));
    report.candidates_tried = (subsets - 1) as usize;
    report.checks.push(Check::new(
        "every generating set gives k_X(g) in {1, 2}",
        generating,
        within_two,
    ));
    report.checks.push(Check::new(
        "every word length k_X satisfies the length axioms",
        generating,
        axiom_ok,
    ));
    report.checks.push(Check::new(
        "the constant 3 is a length function",
        0,
        validate_length_axioms(&constant).violations.len(),
    ));
    report.checks.push(Check::new(
        "word lengths agreeing with the constant 3 at g",
        0,
        histogram.get(&3).copied().unwrap_or(0),
    ));
    report.checks.push(Check::holds(
        "at least one subset generates",
        "> 0",
        generating,
        generating > 0,
    ));
    Ok(AbCensus {
        k,
        order: n,
        orbits: orbits.len(),
        subsets_examined: subsets - 1,
        generating,
        skipped_non_generating: subsets - 1 - generating,
        value_histogram: histogram,
        report: report.finish(Outcome::Verified),
    })
}

/// BFS word lengths over a multiplication table; `None` if `gens` does not
/// generate.
fn word_lengths(mul: &[Vec<usize>], id: usize, gens: &[usize]) -> Option<Vec<u64>> {
    let n = mul.len();
    let mut d = vec![u64::MAX; n];
    d[id] = 0;
    let mut q = VecDeque::from([id]);
    let mut reached = 1;
    while let Some(v) = q.pop_front() {
        for &x in gens {
            let w = mul[v][x];
            if d[w] == u64::MAX {
                d[w] = d[v] + 1;
                reached += 1;
                q.push_back(w);
            }
        }
    }
    (reached == n).then_some(d)
}

fn is_length_function(mul: &[Vec<usize>], inv: &[usize], id: usize, l: &[u64]) -> bool {
    (0..l.len()).all(|x| (l[x] == 0) == (x == id) && l[x] == l[inv[x]])
        && (0..l.len()).all(|x| (0..l.len()).all(|y| l[mul[x][y]] <= l[x] + l[y]))
}

/// Checks on `<a, b | b^4, b^-1 a b = a^-1>`: the identities behind the
/// equal-distance dichotomy for every `a^alpha b^beta` with
/// `|alpha| <= alpha_bound`, the dichotomy itself on the word-length ball
/// of radius `radius`, and the path extension whose new vertex `w0` has no
/// counterpart in the Cayley graph.
pub fn ex_vc_checks(alpha_bound: i64, radius: usize) -> Result<ConstructionReport> {
    if alpha_bound < 0 || radius < 2 {
        return Err(Error::InvalidInput("alpha_bound >= 0 and radius >= 2 are required".into()));
    }
    let group = Group::vc();
    let b = Element::Vc { alpha: 0, beta: 1 };
    let b2 = group.pow(&b, 2);
    let b3 = group.pow(&b, 3);
    let mut report = ConstructionReport::new(
        "ex_vc",
        json!({ "alpha_bound": alpha_bound, "radius": radius }),
    );

    let mut tested = 0u64;
    let mut identity_ok = 0u64;
    let mut equation_ok = 0u64;
    for alpha in -alpha_bound..=alpha_bound {
        for beta in 0..4u8 {
            let g = Element::Vc { alpha, beta };
            let gi = group.inverse(&g);
            tested += 1;
            let (identity, equation) = if beta % 2 == 1 {
                (
                    group.mul(&g, &g) == b2,
                    gi == group.inverse(&group.mul(&gi, &b2)),
                )
            } else {
                (
                    group.product([&b, &g, &group.inverse(&b)]) == gi,
                    group.mul(&gi, &b) == group.inverse(&group.mul(&gi, &b3)),
                )
            };
            identity_ok += identity as u64;
            equation_ok += equation as u64;
        }
    }
    report.checks.push(Check::new(
        "g^2 = b^2 for odd beta, b g b^-1 = g^-1 for even beta",
        tested,
        identity_ok,
    ));
    report.checks.push(Check::new(
        "g^-1 = (g^-1 b^2)^-1 or g^-1 b = (g^-1 b^3)^-1",
        tested,
        equation_ok,
    ));

    let gens = group.standard_generators();
    let wide = word_length_table(&group, &gens, radius + 3, DEFAULT_BALL_CAP)?;
    let ball = group.ball(&gens, radius, DEFAULT_BALL_CAP)?;
    let l = |x: &Element| wide.exact(x).expect("radius + 3 covers every g^-1 b^k");
    let dichotomy = ball
        .iter()
        .filter(|g| {
            let gi = group.inverse(g);
            l(&gi) == l(&group.mul(&gi, &b2)) || l(&group.mul(&gi, &b)) == l(&group.mul(&gi, &b3))
        })
        .count();
    report.checks.push(Check::new(
        format!("every g with |g| <= {radius} has d(g,1) = d(g,b^2) or d(g,b) = d(g,b^3)"),
        ball.len(),
        dichotomy,
    ));

    let delta = cayley_ball(&word_length_table(&group, &gens, radius, DEFAULT_BALL_CAP)?, radius as u64)?;
    let at = |x: &Element| delta.index_of(&x.to_string()).expect("b^k lies in the ball");
    let powers = [at(&group.identity()), at(&b), at(&b2), at(&b3)];
    let m = delta.distance(powers[0], powers[1]).expect("connected ball");
    let ext = vc_extension_graph(&delta, powers[0], powers[1], m)?;
    let gamma = &ext.graph;
    let w0 = ext.path[0];
    let dw: Vec<u64> = powers
        .iter()
        .map(|&v| gamma.distance(w0, v).expect("connected"))
        .collect();
    report.inputs["m"] = json!(m);
    report.checks.push(Check::new(
        "old distances are preserved by the new path",
        ext.report.old_pairs_checked,
        if ext.report.old_distances_preserved { ext.report.old_pairs_checked } else { 0 },
    ));
    report.checks.push(Check::new("d(w0, 1)", 1, dw[0]));
    report.checks.push(Check::holds("d(w0, 1) < d(w0, b^2)", format!("< {}", dw[2]), dw[0], dw[0] < dw[2]));
    report.checks.push(Check::holds("d(w0, b) <= m", format!("<= {m}"), dw[1], dw[1] <= m));
    report.checks.push(Check::holds("m < d(w0, b^3)", format!("> {m}"), dw[3], m < dw[3]));
    let in_delta = VertexTuple::new(&delta, &powers)?;
    let in_gamma = VertexTuple::new(gamma, &powers)?;
    report.checks.push(Check::new(
        "(1, b, b^2, b^3) has the same distances in both graphs",
        true,
        tuples_congruent(&in_delta, &in_gamma)?,
    ));
    let realized = ep_witness(&in_delta, &dw)?;
    report.checks.push(Check::new(
        "no vertex of the ball realizes the distance profile of w0",
        "none",
        realized.map_or_else(|| "none".to_string(), |v| delta.name(v).to_string()),
    ));
    Ok(report.finish(Outcome::Verified))
}
