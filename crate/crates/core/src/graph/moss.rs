use serde::Serialize;

use super::FiniteGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MossParams {
    /// Largest tuple size whose extension demands are served.
    pub t_max: usize,
    /// Demanded distances range over `1..=d_max`.
    pub d_max: u64,
    pub rounds: usize,
    /// Hard limit on the number of vertices.
    pub vertex_cap: usize,
}

/// "Some vertex lies at distance `distances[i]` from `tuple[i]` for all i."
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Demand {
    pub tuple: Vec<usize>,
    pub distances: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundReport {
    pub round: usize,
    pub vertices_before: usize,
    pub vertices_after: usize,
    /// Consistent demands examined this round.
    pub demands: usize,
    pub already_met: usize,
    pub realized: usize,
    /// Every demand met at the end of its check, witnessed or realized.
    pub met: Vec<Demand>,
    /// Demands no one-point extension of the current graph could realize.
    pub unmet: Vec<Demand>,
}

#[derive(Debug, Clone)]
pub struct MossApproximant {
    pub graph: FiniteGraph,
    pub params: MossParams,
    pub rounds: Vec<RoundReport>,
}

/// Bounded closure under extension demands, starting from one vertex.
///
/// Each round takes the vertices present at its start, lists every tuple
/// of at most `t_max` distinct vertices (sorted) and every consistent
/// distance vector in `[1, d_max]`, and serves each demand without a
/// witness by a new vertex adjacent to a set `N` of existing vertices.
/// `N` must have pairwise distances at most 2, so the extension is
/// isometric and earlier witnesses stay witnesses; it is chosen by brute
/// force over subsets of size at most the tuple size.
pub fn moss_approximant(params: MossParams) -> Result<MossApproximant> {
    if params.t_max == 0 || params.d_max == 0 {
        return Err(Error::InvalidInput("t_max and d_max must be positive".into()));
    }
    let mut g = FiniteGraph::new(vec!["v0".to_string()], &[])?;
    let mut rounds = Vec::with_capacity(params.rounds);
    for round in 1..=params.rounds {
        let before = g.len();
        let mut report = RoundReport {
            round,
            vertices_before: before,
            vertices_after: before,
            demands: 0,
            already_met: 0,
            realized: 0,
            met: Vec::new(),
            unmet: Vec::new(),
        };
        let mut counter = 0usize;
        for size in 1..=params.t_max.min(before) {
            for tuple in combinations(before, size) {
                for d in vectors(size, params.d_max) {
                    if !consistent(&g, &tuple, &d) {
                        continue;
                    }
                    report.demands += 1;
                    let demand = Demand {
                        tuple: tuple.clone(),
                        distances: d.clone(),
                    };
                    if has_witness(&g, &tuple, &d) {
                        report.already_met += 1;
                        report.met.push(demand);
                        continue;
                    }
                    match realizing_neighbors(&g, &tuple, &d) {
                        Some(nb) => {
                            if g.len() >= params.vertex_cap {
                                return Err(Error::BudgetExceeded {
                                    what: "universal graph approximant",
                                    cap: params.vertex_cap,
                                });
                            }
                            counter += 1;
                            g.push_isometric(format!("w{round}.{counter}"), &nb)?;
                            report.realized += 1;
                            report.met.push(demand);
                        }
                        None => report.unmet.push(demand),
                    }
                }
            }
        }
        report.vertices_after = g.len();
        rounds.push(report);
    }
    Ok(MossApproximant {
        graph: g,
        params,
        rounds,
    })
}

fn consistent(g: &FiniteGraph, tuple: &[usize], d: &[u64]) -> bool {
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            let Some(dij) = g.distance(tuple[i], tuple[j]) else { return false };
            if d[i].abs_diff(d[j]) > dij || dij > d[i] + d[j] {
                return false;
            }
        }
    }
    true
}

fn has_witness(g: &FiniteGraph, tuple: &[usize], d: &[u64]) -> bool {
    (0..g.len()).any(|v| tuple.iter().zip(d).all(|(&a, &di)| g.distance(v, a) == Some(di)))
}

/// First set `N` (by size, then lexicographically) of at most `tuple.len()`
/// vertices with pairwise distances at most 2 such that `1 + min_N d(., a_i)`
/// equals `d_i` for every `i`.
fn realizing_neighbors(g: &FiniteGraph, tuple: &[usize], d: &[u64]) -> Option<Vec<usize>> {
    let pool: Vec<usize> = (0..g.len())
        .filter(|&v| {
            let mut covers = false;
            for (&a, &di) in tuple.iter().zip(d) {
                match g.distance(v, a) {
                    Some(x) if x + 1 < di => return false,
                    Some(x) => covers |= x + 1 == di,
                    None => return false,
                }
            }
            covers
        })
        .collect();
    let covered = |set: &[usize]| {
        tuple.iter().zip(d).all(|(&a, &di)| {
            set.iter().any(|&n| g.distance(n, a) == Some(di - 1))
        })
    };
    for size in 1..=tuple.len() {
        let mut chosen = Vec::with_capacity(size);
        if pick(g, &pool, 0, size, &mut chosen, &covered) {
            return Some(chosen);
        }
    }
    None
}

fn pick(
    g: &FiniteGraph,
    pool: &[usize],
    start: usize,
    size: usize,
    chosen: &mut Vec<usize>,
    covered: &dyn Fn(&[usize]) -> bool,
) -> bool {
    if chosen.len() == size {
        return covered(chosen);
    }
    for k in start..pool.len() {
        let v = pool[k];
        if chosen.iter().any(|&c| g.distance(c, v).is_none_or(|x| x > 2)) {
            continue;
        }
        chosen.push(v);
        if pick(g, pool, k + 1, size, chosen, covered) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Sorted `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// All vectors in `[1, d_max]^k`, lexicographic.
fn vectors(k: usize, d_max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=d_max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}
