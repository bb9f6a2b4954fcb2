//! Cross-checks of every combinatorial answer against the geometric and
//! algebraic oracles, for one graph or for a whole family of graphs.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::ehrhart::{
    count_sorted_monomials, ehrhart_closed_form, ehrhart_interpolate, eval_u64, integral_on,
    normalized_volume,
};
use crate::error::{OracleError, ToricError};
use crate::graph::{Edge, Graph, Vertex};
use crate::oracle::{count_lattice_points, lattice, OracleAnalysis, MAX_DILATION, MAX_DIM};
use crate::polytope::{
    classify, is_polytope_edge, is_simplex, is_vertex, polytope_dim, EdgePolytope,
};
use crate::toric::{
    buchberger_counterexample, generators, groebner_basis, kernel_check, s_pair, BasisKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one comparison. Failures carry the smallest offending object.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl Check {
    fn pass(name: &'static str) -> Check {
        Check {
            name,
            status: CheckStatus::Pass,
            note: None,
            counterexample: None,
        }
    }

    fn fail(name: &'static str, counterexample: Value) -> Check {
        Check {
            name,
            status: CheckStatus::Fail,
            note: None,
            counterexample: Some(counterexample),
        }
    }

    fn skipped(name: &'static str, note: impl Into<String>) -> Check {
        Check {
            name,
            status: CheckStatus::Skipped,
            note: Some(note.into()),
            counterexample: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }

    fn from_first(name: &'static str, bad: Option<Value>) -> Check {
        match bad {
            None => Check::pass(name),
            Some(v) => Check::fail(name, v),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Dilations `0..=ehrhart_m_max` are compared in the Ehrhart check.
    pub ehrhart_m_max: u64,
    /// Run the Gröbner check (walk search plus Buchberger).
    pub groebner: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            ehrhart_m_max: 4,
            groebner: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphSummary {
    pub d: usize,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub graph: GraphSummary,
    pub classification: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.failed())
    }
}

pub const CHECK_NAMES: [&str; 8] = [
    "vertexhood",
    "edgehood",
    "dimension",
    "simplex",
    "simplicity",
    "smoothness",
    "groebner",
    "ehrhart",
];

/// Runs every comparison for `g`.
pub fn verify_graph(g: &Graph, opts: &VerifyOptions) -> Result<VerifyReport, OracleError> {
    if g.d() > MAX_DIM {
        return Err(OracleError::TooLarge {
            what: "vertex count d",
            value: g.d(),
            limit: MAX_DIM,
        });
    }
    let poly = EdgePolytope::new(g);
    let oracle = OracleAnalysis::new(&poly.points)?;
    let c = classify(g);
    let edges = g.edges();

    let vertexhood = Check::from_first(
        "vertexhood",
        edges.iter().enumerate().find_map(|(k, &e)| {
            let comb = is_vertex(g, e);
            (comb != oracle.vertex[k])
                .then(|| json!({ "edge": e, "combinatorial": comb, "oracle": oracle.vertex[k] }))
        }),
    );

    let mut bad_pair = None;
    'pairs: for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if !(oracle.vertex[i]
                && oracle.vertex[j]
                && poly.vertex_flags[i]
                && poly.vertex_flags[j])
            {
                continue;
            }
            let comb = is_polytope_edge(g, edges[i], edges[j]).expect("both are vertices");
            if comb != oracle.is_edge(i, j) {
                bad_pair = Some(json!({
                    "pair": [edges[i], edges[j]],
                    "combinatorial": comb,
                    "oracle": oracle.is_edge(i, j),
                }));
                break 'pairs;
            }
        }
    }
    let edgehood = Check::from_first("edgehood", bad_pair);

    let dim = polytope_dim(g);
    let dimension = Check::from_first(
        "dimension",
        (dim != oracle.dim).then(|| json!({ "combinatorial": dim, "oracle": oracle.dim })),
    );

    let simplex = is_simplex(g);
    let simplex_check = Check::from_first(
        "simplex",
        (simplex != oracle.is_simplex())
            .then(|| json!({ "combinatorial": simplex, "oracle": oracle.is_simplex() })),
    );

    let simple = oracle.is_simple();
    let simplicity = Check::from_first(
        "simplicity",
        (c.is_simple() != simple).then(|| {
            let bad = (0..edges.len())
                .find(|&k| oracle.vertex[k] && oracle.neighbors[k].len() != oracle.dim);
            json!({
                "combinatorial": c.is_simple(),
                "oracle": simple,
                "vertex": bad.map(|k| edges[k]),
            })
        }),
    );

    let smoothness = if simple {
        let bad = oracle.non_smooth_vertex()?;
        let smooth = bad.is_none();
        Check::from_first(
            "smoothness",
            (c.is_smooth() != smooth).then(|| {
                json!({
                    "combinatorial": c.is_smooth(),
                    "oracle": smooth,
                    "vertex": bad.map(|k| edges[k]),
                })
            }),
        )
    } else {
        Check::from_first(
            "smoothness",
            c.is_smooth()
                .then(|| json!({ "combinatorial": true, "oracle": "not simple" })),
        )
    };

    let groebner = if opts.groebner {
        groebner_check(g)
    } else {
        Check::skipped("groebner", "disabled")
    };
    let ehrhart = ehrhart_check(g, &c, &poly, oracle.dim, opts)?;

    let checks = vec![
        vertexhood,
        edgehood,
        dimension,
        simplex_check,
        simplicity,
        smoothness,
        groebner,
        ehrhart,
    ];
    Ok(VerifyReport {
        graph: GraphSummary {
            d: g.d(),
            edges: edges.to_vec(),
        },
        classification: c.to_string(),
        pass: !checks.iter().any(Check::failed),
        checks,
    })
}

fn groebner_check(g: &Graph) -> Check {
    const NAME: &str = "groebner";
    let gb = match groebner_basis(g) {
        Err(ToricError::NotSimple) => {
            return Check::skipped(NAME, "no quadratic basis for non-simple polytopes")
        }
        Err(ToricError::ZeroIdeal) => {
            // I_G = (0) exactly when the generator points are linearly independent.
            let points: Vec<Vec<i64>> = EdgePolytope::new(g)
                .points
                .into_iter()
                .map(|p| p.0)
                .collect();
            let independent = lattice::rank(&lattice::to_big(&points)) == points.len();
            return Check::from_first(
                NAME,
                (!independent).then(|| json!({ "zero_ideal_claimed": true })),
            )
            .with_note("toric ideal is zero");
        }
        Err(e) => return Check::fail(NAME, json!({ "error": e.to_string() })),
        Ok(gb) => gb,
    };
    if let Some(b) = gb.elements.iter().find(|b| !b.is_quadratic()) {
        return Check::fail(NAME, json!({ "not_quadratic": b }));
    }
    if let Some(b) = gb.elements.iter().find(|b| !kernel_check(b, g)) {
        return Check::fail(NAME, json!({ "not_in_kernel": b }));
    }
    let squarefree = gb.initials_squarefree();
    if gb.kind == BasisKind::Sorting && !squarefree {
        let b = gb.elements.iter().find(|b| !b.plus.is_squarefree());
        return Check::fail(NAME, json!({ "initial_not_squarefree": b }));
    }
    match buchberger_counterexample(&gb.elements, &gb.order) {
        Err(e) => return Check::fail(NAME, json!({ "error": e.to_string() })),
        Ok(Some((i, j))) => {
            let s = s_pair(&gb.elements[i], &gb.elements[j]);
            return Check::fail(
                NAME,
                json!({ "s_pair": [gb.elements[i], gb.elements[j]], "s_polynomial": s, "remainder": gb.reduce(&s) }),
            );
        }
        Ok(None) => {}
    }
    let gens = generators(g);
    if let Some(b) = gens.iter().find(|b| !kernel_check(b, g)) {
        return Check::fail(NAME, json!({ "generator_not_in_kernel": b }));
    }
    if let Some(b) = gens.iter().find(|b| gb.reduce(b).is_some()) {
        return Check::fail(NAME, json!({ "generator": b, "remainder": gb.reduce(b) }));
    }
    let mut note = format!(
        "{} basis elements, {} walk generators",
        gb.len(),
        gens.len()
    );
    if gb.kind == BasisKind::LoopedSimplex {
        note.push_str(&format!(
            "; simplex with loops, initial monomials squarefree: {squarefree}"
        ));
    }
    Check::pass(NAME).with_note(note)
}

fn ehrhart_check(
    g: &Graph,
    c: &crate::polytope::Classification,
    poly: &EdgePolytope,
    dim: usize,
    opts: &VerifyOptions,
) -> Result<Check, OracleError> {
    const NAME: &str = "ehrhart";
    let Ok(closed) = ehrhart_closed_form(c) else {
        return Ok(Check::skipped(
            NAME,
            "no closed form for this classification",
        ));
    };
    let m_top = opts.ehrhart_m_max.max(dim as u64);
    if m_top > MAX_DILATION {
        return Ok(Check::skipped(
            NAME,
            "dimension exceeds the dilation guardrail",
        ));
    }
    let mut counts = Vec::new();
    for m in 0..=m_top {
        let oracle = count_lattice_points(&poly.points, m)?;
        let formula = eval_u64(&closed, m);
        let sorted = count_sorted_monomials(g, m);
        if formula != Some(oracle) || sorted != oracle {
            return Ok(Check::fail(
                NAME,
                json!({ "m": m, "oracle": oracle, "closed_form": formula, "sorted_monomials": sorted }),
            ));
        }
        counts.push((m, oracle));
    }
    let interp = ehrhart_interpolate(&counts, dim).expect("enough distinct samples");
    if interp != closed {
        return Ok(Check::fail(
            NAME,
            json!({ "interpolant": interp, "closed_form": closed }),
        ));
    }
    if eval_u64(&interp, 0) != Some(1) || !integral_on(&interp, m_top) {
        return Ok(Check::fail(
            NAME,
            json!({ "interpolant_not_integral": interp }),
        ));
    }
    let vol = normalized_volume(c).expect("closed form exists");
    let lead = interp.normalized_leading();
    if lead != BigRational::from_integer(vol.clone().into()) {
        return Ok(Check::fail(
            NAME,
            json!({ "volume": vol.to_string(), "dim_factorial_times_leading": lead.to_string() }),
        ));
    }
    Ok(Check::pass(NAME).with_note(format!("i(m) = {closed}; vol = {vol}; m = 0..={m_top}")))
}

/// Every graph on `1..=d` satisfying the input invariants (no isolated
/// vertex, the loop condition), in a fixed order.
pub fn enumerate_graphs(d: usize) -> Vec<Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (1..=d).flat_map(|i| (i..=d).map(move |j| (i, j))).collect();
    assert!(pairs.len() < 64, "too many vertices to enumerate");
    (1u64..1 << pairs.len())
        .into_par_iter()
        .filter_map(|mask| {
            let chosen = pairs
                .iter()
                .enumerate()
                .filter(|&(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p);
            Graph::new(d, chosen).ok()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FuzzMode {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub max_vertices: usize,
    pub mode: FuzzMode,
    /// Number of random graphs; ignored in exhaustive mode.
    pub count: usize,
    pub seed: u64,
    pub verify: VerifyOptions,
}

pub const MAX_EXHAUSTIVE_VERTICES: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuzzError {
    #[error(
        "exhaustive mode enumerates at most {MAX_EXHAUSTIVE_VERTICES} vertices, asked for {0}"
    )]
    ExhaustiveTooLarge(usize),
    #[error("random mode needs between 1 and {MAX_DIM} vertices, asked for {0}")]
    RandomSize(usize),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzSummary {
    pub mode: FuzzMode,
    pub max_vertices: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub graphs_checked: usize,
    pub passed: usize,
    pub failed: usize,
    /// Graph count per classification tag.
    pub by_classification: BTreeMap<String, usize>,
    /// Failure count per check.
    pub failures_by_check: BTreeMap<String, usize>,
    pub first_failure: Option<VerifyReport>,
}

/// A random graph satisfying the input invariants. Half the draws are
/// arbitrary graphs, the other half relabelled members of the simple
/// families, which uniform sampling almost never hits.
pub fn random_graph(rng: &mut ChaCha8Rng, max_vertices: usize) -> Graph {
    let d = rng.gen_range(1..=max_vertices);
    let mut perm: Vec<Vertex> = (1..=d).collect();
    for k in (1..d).rev() {
        perm.swap(k, rng.gen_range(0..=k));
    }
    let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
    if rng.gen_bool(0.5) {
        let loops: Vec<bool> = (0..d).map(|_| rng.gen_bool(0.25)).collect();
        for i in 0..d {
            for j in i..d {
                let forced = i != j && loops[i] && loops[j];
                let keep = if i == j {
                    loops[i]
                } else {
                    forced || rng.gen_bool(0.5)
                };
                if keep {
                    pairs.push((i + 1, j + 1));
                }
            }
        }
        // Attach isolated vertices.
        for v in 1..=d {
            if !pairs.iter().any(|&(a, b)| a == v || b == v) {
                let u = if d == 1 { 1 } else { (v % d) + 1 };
                if v == u || !(loops[v - 1] && loops[u - 1]) {
                    pairs.push((v.min(u), v.max(u)));
                }
            }
        }
    } else {
        pairs = family_instance(rng, d);
    }
    let relabelled = pairs.into_iter().map(|(i, j)| (perm[i - 1], perm[j - 1]));
    Graph::new(d, relabelled).unwrap_or_else(|_| Graph::new(1, [(1, 1)]).expect("single loop"))
}

/// An alpha, beta or gamma graph on `1..=d` when `d` allows one, else a path.
fn family_instance(rng: &mut ChaCha8Rng, d: usize) -> Vec<(Vertex, Vertex)> {
    let mut pairs = Vec::new();
    match rng.gen_range(0..3) {
        0 if d >= 4 => {
            let p = rng.gen_range(2..=d - 2);
            for i in 1..=p {
                for j in p + 1..=d {
                    pairs.push((i, j));
                }
            }
        }
        1 if d >= 3 => {
            let p = rng.gen_range(1..=d - 2);
            for j in 2..=d {
                pairs.push((1, j));
            }
            pairs.push((1, 1));
            for i in 2..=p + 1 {
                for j in p + 2..=d {
                    pairs.push((i, j));
                }
            }
        }
        2 if d >= 3 => {
            let p = rng.gen_range(2..=d - 1);
            for i in 1..=p {
                for j in i..=p {
                    pairs.push((i, j));
                }
                for j in p + 1..=d {
                    pairs.push((i, j));
                }
            }
        }
        _ => {
            if d == 1 {
                pairs.push((1, 1));
            }
            for i in 1..d {
                pairs.push((i, i + 1));
            }
        }
    }
    pairs
}

/// Verifies a family of graphs and aggregates the outcome. The result does
/// not depend on scheduling.
pub fn fuzz(cfg: &FuzzConfig) -> Result<FuzzSummary, FuzzError> {
    let graphs: Vec<Graph> = match cfg.mode {
        FuzzMode::Exhaustive => {
            if cfg.max_vertices > MAX_EXHAUSTIVE_VERTICES {
                return Err(FuzzError::ExhaustiveTooLarge(cfg.max_vertices));
            }
            (1..=cfg.max_vertices).flat_map(enumerate_graphs).collect()
        }
        FuzzMode::Random => {
            if cfg.max_vertices == 0 || cfg.max_vertices > MAX_DIM {
                return Err(FuzzError::RandomSize(cfg.max_vertices));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            (0..cfg.count)
                .map(|_| random_graph(&mut rng, cfg.max_vertices))
                .collect()
        }
    };
    let reports = graphs
        .par_iter()
        .map(|g| verify_graph(g, &cfg.verify))
        .collect::<Result<Vec<_>, _>>()?;
    let mut summary = FuzzSummary {
        mode: cfg.mode,
        max_vertices: cfg.max_vertices,
        seed: (cfg.mode == FuzzMode::Random).then_some(cfg.seed),
        graphs_checked: reports.len(),
        passed: 0,
        failed: 0,
        by_classification: BTreeMap::new(),
        failures_by_check: BTreeMap::new(),
        first_failure: None,
    };
    for r in reports {
        let tag = r
            .classification
            .split('(')
            .next()
            .unwrap_or_default()
            .to_string();
        *summary.by_classification.entry(tag).or_default() += 1;
        if r.pass {
            summary.passed += 1;
            continue;
        }
        summary.failed += 1;
        for c in r.failures() {
            *summary
                .failures_by_check
                .entry(c.name.to_string())
                .or_default() += 1;
        }
        if summary.first_failure.is_none() {
            summary.first_failure = Some(r);
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(d: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::new(d, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=4).map(|d| enumerate_graphs(d).len()).collect();
        // Brute force over all edge subsets, checked independently.
        assert_eq!(counts, vec![1, 4, 29, 400]);
    }

    #[test]
    fn k22_passes() {
        let r = verify_graph(
            &graph(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]),
            &VerifyOptions::default(),
        )
        .unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.checks.len(), CHECK_NAMES.len());
        assert_eq!(r.check("ehrhart").unwrap().status, CheckStatus::Pass);
    }

    #[test]
    fn example_graphs_pass() {
        let g2 = graph(4, &[(1, 1), (1, 2), (2, 2), (3, 4)]);
        let r = verify_graph(&g2, &VerifyOptions::default()).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.classification, "Simplex(smooth=false)");
        assert_eq!(r.check("groebner").unwrap().status, CheckStatus::Pass);
    }

    #[test]
    fn random_graphs_are_reproducible() {
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20)
                .map(|_| random_graph(&mut rng, 6))
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(draw(7), draw(8));
    }

    #[test]
    fn fuzz_guardrails() {
        let cfg = FuzzConfig {
            max_vertices: 7,
            mode: FuzzMode::Exhaustive,
            count: 0,
            seed: 0,
            verify: VerifyOptions::default(),
        };
        assert_eq!(fuzz(&cfg), Err(FuzzError::ExhaustiveTooLarge(7)));
    }
}
