use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use lengthlab::graph::{
    cayley_ball, ep_witness, moss_approximant, resolve_names, FiniteGraph, MossParams, VertexTuple,
};
use lengthlab::gstar::{mif_witness, GStarWord, WitnessSearch};
use lengthlab::lab::{ex_ab_exhaustive, ex_vc_checks, lemd_kernel, tt_kernel, ConstructionReport, Outcome};
use lengthlab::length::{
    length_from_weight, length_from_weight_exact, lipschitz_compare, word_length_table, Comparison,
    DefaultRule, LengthTable, WeightSpec,
};
use lengthlab::{Element, Group};

use crate::input;

pub struct Context {
    pub seed: u64,
    pub ball_cap: usize,
}

/// A rendered command result; `success` selects exit code 0 or 1.
pub struct Artifact {
    pub name: &'static str,
    pub json: Value,
    pub text: String,
    pub dot: Option<String>,
    pub success: bool,
}

type Out = Result<Artifact, String>;

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn table_text(t: &LengthTable) -> String {
    t.entries().map(|(g, v)| format!("{g}\t{v}\n")).collect()
}

fn graph_text(g: &FiniteGraph) -> String {
    (0..g.len())
        .map(|v| {
            let nb: Vec<&str> = g.neighbors(v).iter().map(|&u| g.name(u)).collect();
            format!("{}: {}\n", g.name(v), nb.join(", "))
        })
        .collect()
}

fn report_artifact(name: &'static str, report: ConstructionReport) -> Out {
    let success = report.overall
        && matches!(
            report.outcome,
            Outcome::Accepted | Outcome::Verified | Outcome::VacuouslyInD
        );
    Ok(Artifact {
        name,
        text: report.to_text(),
        json: serde_json::to_value(&report).map_err(err)?,
        dot: None,
        success,
    })
}

/// Smallest word-length table (radius at most 16) covering `points`.
fn covering_word_length(ctx: &Context, group: &Group, points: &[Element]) -> Result<LengthTable, String> {
    let gens = group.standard_generators();
    for r in 1..=16 {
        let t = word_length_table(group, &gens, r, ctx.ball_cap).map_err(err)?;
        if points.iter().all(|p| t.contains(p)) {
            return Ok(t);
        }
    }
    Err("inputs lie outside the word-length ball of radius 16".into())
}

#[derive(Args)]
pub struct LengthArgs {
    #[arg(long, default_value = "free:2")]
    group: String,
    /// Weight function JSON; without it the word length is tabulated.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Generators separated by `;` (default: the standard ones).
    #[arg(long)]
    generators: Option<String>,
    #[arg(long, default_value_t = 3)]
    radius: usize,
    /// Values above this are reported as capped.
    #[arg(long, default_value_t = 64)]
    cap: u64,
}

pub fn length(ctx: &Context, a: &LengthArgs) -> Out {
    let group = input::group(&a.group)?;
    let gens = input::generators(&group, a.generators.as_deref())?;
    let table = match &a.weights {
        None => word_length_table(&group, &gens, a.radius, ctx.ball_cap).map_err(err)?,
        Some(path) => {
            let omega = WeightSpec::from_json(&input::read(path)?).map_err(err)?;
            if omega.group() != &group {
                return Err(format!("{} is for {:?}, not {}", path.display(), omega.group().spec(), a.group));
            }
            let domain = group.ball(&gens, a.radius, ctx.ball_cap).map_err(err)?;
            length_from_weight(&omega, &domain, a.cap).map_err(err)?
        }
    };
    Ok(Artifact {
        name: "length",
        json: table.to_json(),
        text: table_text(&table),
        dot: None,
        success: true,
    })
}

#[derive(Args)]
pub struct CayleyArgs {
    #[arg(long, default_value = "free:2")]
    group: String,
    #[arg(long)]
    generators: Option<String>,
    #[arg(long, default_value_t = 3)]
    radius: usize,
}

pub fn cayley(ctx: &Context, a: &CayleyArgs) -> Out {
    let group = input::group(&a.group)?;
    let gens = input::generators(&group, a.generators.as_deref())?;
    let t = word_length_table(&group, &gens, a.radius, ctx.ball_cap).map_err(err)?;
    let g = cayley_ball(&t, a.radius as u64).map_err(err)?;
    Ok(Artifact {
        name: "cayley",
        json: g.to_json(),
        text: graph_text(&g),
        dot: Some(g.to_dot()),
        success: true,
    })
}

#[derive(Args)]
pub struct EpArgs {
    /// Graph JSON as written by `cayley` or `moss`.
    #[arg(long)]
    graph: PathBuf,
    /// Vertex names separated by `;`.
    #[arg(long)]
    tuple: String,
    /// Distances separated by `;`.
    #[arg(long)]
    distances: String,
}

pub fn ep(_ctx: &Context, a: &EpArgs) -> Out {
    let g = FiniteGraph::from_json(&input::read(&a.graph)?).map_err(err)?;
    let names: Vec<&str> = a.tuple.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
    let idx = resolve_names(&g, &names).map_err(err)?;
    let d = input::numbers(&a.distances)?;
    let tuple = VertexTuple::new(&g, &idx).map_err(err)?;
    let found = ep_witness(&tuple, &d).map_err(err)?;
    let witness = found.map(|v| g.name(v).to_string());
    Ok(Artifact {
        name: "ep",
        json: json!({ "tuple": names, "distances": d, "witness": witness }),
        text: match &witness {
            Some(w) => format!("witness: {w}\n"),
            None => "no vertex realizes the distances\n".into(),
        },
        dot: None,
        success: witness.is_some(),
    })
}

#[derive(Args)]
pub struct MossArgs {
    #[arg(long, default_value_t = 2)]
    t_max: usize,
    #[arg(long, default_value_t = 3)]
    d_max: u64,
    #[arg(long, default_value_t = 3)]
    rounds: usize,
    #[arg(long, default_value_t = 100_000)]
    vertex_cap: usize,
}

pub fn moss(_ctx: &Context, a: &MossArgs) -> Out {
    let m = moss_approximant(MossParams {
        t_max: a.t_max,
        d_max: a.d_max,
        rounds: a.rounds,
        vertex_cap: a.vertex_cap,
    })
    .map_err(err)?;
    let rounds: Vec<Value> = m
        .rounds
        .iter()
        .map(|r| {
            json!({
                "round": r.round,
                "vertices_before": r.vertices_before,
                "vertices_after": r.vertices_after,
                "demands": r.demands,
                "already_met": r.already_met,
                "realized": r.realized,
                "unmet": r.unmet,
            })
        })
        .collect();
    let all_met = m.rounds.iter().all(|r| r.unmet.is_empty());
    let connected = m.graph.is_connected();
    let mut text = format!("vertices: {}, connected: {connected}\n", m.graph.len());
    for r in &m.rounds {
        text.push_str(&format!(
            "round {}: {} -> {} vertices, {} demands, {} already met, {} realized, {} unmet\n",
            r.round, r.vertices_before, r.vertices_after, r.demands, r.already_met, r.realized, r.unmet.len()
        ));
    }
    Ok(Artifact {
        name: "moss",
        json: json!({
            "params": m.params,
            "connected": connected,
            "rounds": rounds,
            "graph": m.graph.to_json(),
        }),
        text,
        dot: Some(m.graph.to_dot()),
        success: all_met && connected,
    })
}

#[derive(Args)]
pub struct MifArgs {
    #[arg(long, default_value = "free:2")]
    group: String,
    /// Words in `G*<x>` separated by `;`, e.g. `x a x^-1 a^-1`.
    #[arg(long)]
    words: String,
    #[arg(long)]
    generators: Option<String>,
    #[arg(long, default_value_t = 4)]
    radius: usize,
}

pub fn mif(ctx: &Context, a: &MifArgs) -> Out {
    let group = input::group(&a.group)?;
    let gens = input::generators(&group, a.generators.as_deref())?;
    let words: Vec<GStarWord> = a
        .words
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| GStarWord::parse(&group, s).map_err(err))
        .collect::<Result<_, _>>()?;
    let found = mif_witness(&group, &words, &gens, a.radius, ctx.ball_cap).map_err(err)?;
    let (success, text) = match &found {
        WitnessSearch::Found(g) => (true, format!("witness: {g}\n")),
        WitnessSearch::NotFoundWithinRadius(r) => (false, format!("no witness within radius {r}\n")),
    };
    Ok(Artifact {
        name: "mif",
        json: json!({
            "words": words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "radius": a.radius,
            "result": found,
        }),
        text,
        dot: None,
        success,
    })
}

#[derive(Args)]
pub struct LemdArgs {
    #[arg(long, default_value = "free:2")]
    group: String,
    /// Window points separated by `;` (default: the standard generators).
    #[arg(long)]
    f: Option<String>,
    /// Tuple `a_1; ...; a_n`.
    #[arg(long)]
    a: String,
    /// Distance vector `d_1; ...; d_n`.
    #[arg(long)]
    d: String,
    #[arg(long, default_value_t = 8)]
    radius: usize,
}

pub fn lemd(ctx: &Context, a: &LemdArgs) -> Out {
    let group = input::group(&a.group)?;
    let f = match &a.f {
        Some(s) => input::elements(&group, s)?,
        None => group.standard_generators().elements().to_vec(),
    };
    let tuple = input::elements(&group, &a.a)?;
    let d = input::numbers(&a.d)?;
    let mut points = f.clone();
    points.extend(tuple.iter().flat_map(|x| tuple.iter().map(|y| group.mul(&group.inverse(x), y))));
    let base = covering_word_length(ctx, &group, &points)?;
    report_artifact("lemD", lemd_kernel(&base, &f, &tuple, &d, a.radius).map_err(err)?)
}

#[derive(Args)]
pub struct TtArgs {
    #[arg(long, default_value = "free:2")]
    group: String,
    /// Window points separated by `;`; sampled from the radius-2 ball if absent.
    #[arg(long)]
    f: Option<String>,
    /// Size bound for a sampled window.
    #[arg(long, default_value_t = 4)]
    f_size: usize,
    /// Weight function JSON inducing the second length; sampled if absent.
    #[arg(long)]
    l1_weights: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    radius: usize,
    /// Also build the words of I1 and cross-check them.
    #[arg(long)]
    materialize_i1: bool,
}

/// Symmetric set of at most `size` non-identity elements of the radius-2 ball.
pub fn sample_window(group: &Group, size: usize, cap: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Element>, String> {
    let ball = group.ball(&group.standard_generators(), 2, cap).map_err(err)?;
    let pool: Vec<&Element> = ball.iter().filter(|x| !group.is_identity(x)).collect();
    let mut out = BTreeSet::new();
    for _ in 0..4 * size.max(1) {
        let x = *pool.choose(rng).ok_or("the radius-2 ball is trivial")?;
        let pair = [x.clone(), group.inverse(x)];
        let fresh = pair.iter().filter(|p| !out.contains(*p)).count();
        if out.len() + fresh <= size {
            out.extend(pair);
        }
    }
    if out.is_empty() {
        return Err(format!("no symmetric window of size at most {size}"));
    }
    Ok(out.into_iter().collect())
}

/// Symmetric weight on up to three elements of the radius-2 ball, weights
/// in `1..=3`, constant default 3.
pub fn sample_weight(group: &Group, cap: usize, rng: &mut ChaCha8Rng) -> Result<WeightSpec, String> {
    let ball = group.ball(&group.standard_generators(), 2, cap).map_err(err)?;
    let pool: Vec<&Element> = ball.iter().filter(|x| !group.is_identity(x)).collect();
    let mut support = std::collections::BTreeMap::new();
    for _ in 0..rng.gen_range(1..=3) {
        let x = *pool.choose(rng).ok_or("the radius-2 ball is trivial")?;
        if !support.contains_key(x) {
            let w = rng.gen_range(1..=3u64);
            support.insert(group.inverse(x), w);
            support.insert(x.clone(), w);
        }
    }
    WeightSpec::new(group, support, DefaultRule::Constant(3)).map_err(err)
}

pub fn tt(ctx: &Context, a: &TtArgs) -> Out {
    let group = input::group(&a.group)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let f = match &a.f {
        Some(s) => input::elements(&group, s)?,
        None => sample_window(&group, a.f_size, ctx.ball_cap, &mut rng)?,
    };
    let omega = match &a.l1_weights {
        Some(path) => WeightSpec::from_json(&input::read(path)?).map_err(err)?,
        None => sample_weight(&group, ctx.ball_cap, &mut rng)?,
    };
    if omega.group() != &group {
        return Err("the second length lives on a different group".into());
    }
    let t0 = covering_word_length(ctx, &group, &f)?;
    let cap = omega.support().values().copied().max().unwrap_or(0).max(match omega.default_rule() {
        DefaultRule::Constant(m) => m,
        DefaultRule::ProperRamp(m) => m + 64,
    });
    let t1 = length_from_weight_exact(&omega, &f, cap).map_err(err)?;
    let mut report = tt_kernel(&t0, &t1, &f, a.radius, a.materialize_i1).map_err(err)?;
    report.inputs["seed"] = json!(ctx.seed);
    report.inputs["l1_weights"] = omega.to_json();
    report_artifact("tt", report)
}

#[derive(Args)]
pub struct CompareArgs {
    /// Length table JSON.
    #[arg(long)]
    left: PathBuf,
    #[arg(long)]
    right: PathBuf,
    #[arg(long, default_value_t = 1)]
    c: u64,
}

pub fn compare(_ctx: &Context, a: &CompareArgs) -> Out {
    let t1 = LengthTable::from_json(&input::read(&a.left)?).map_err(err)?;
    let t2 = LengthTable::from_json(&input::read(&a.right)?).map_err(err)?;
    let cmp = lipschitz_compare(&t1, &t2, a.c).map_err(err)?;
    let text = match &cmp {
        Comparison::WitnessAgainst { element, left, right } => {
            format!("left({element}) = {left} > {} * {right}\n", a.c)
        }
        Comparison::BoundedByCOnDomain { compared } => {
            format!("left <= {} * right on all {compared} common elements\n", a.c)
        }
    };
    Ok(Artifact {
        name: "compare",
        success: matches!(cmp, Comparison::BoundedByCOnDomain { .. }),
        json: json!({ "c": a.c, "result": cmp }),
        text,
        dot: None,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Ab,
    Vc,
}

#[derive(Args)]
pub struct ExamplesArgs {
    #[arg(long, value_enum)]
    which: Which,
    /// Number of `Z/2` factors for the abelian example.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Largest number of subsets the abelian census may visit.
    #[arg(long, default_value_t = 1 << 22)]
    budget: u64,
    #[arg(long, default_value_t = 20)]
    alpha_bound: i64,
    #[arg(long, default_value_t = 6)]
    radius: usize,
}

pub fn examples(_ctx: &Context, a: &ExamplesArgs) -> Out {
    match a.which {
        Which::Vc => report_artifact("examples", ex_vc_checks(a.alpha_bound, a.radius).map_err(err)?),
        Which::Ab => {
            let census = ex_ab_exhaustive(a.k, a.budget).map_err(err)?;
            let mut text = format!(
                "order {}, {} symmetric subsets, {} generating, {} skipped\n",
                census.order, census.subsets_examined, census.generating, census.skipped_non_generating
            );
            for (v, n) in &census.value_histogram {
                text.push_str(&format!("k_X(g) = {v}: {n} generating sets\n"));
            }
            text.push_str(&census.report.to_text());
            Ok(Artifact {
                name: "examples",
                success: census.report.overall,
                json: serde_json::to_value(&census).map_err(err)?,
                text,
                dot: None,
            })
        }
    }
}
