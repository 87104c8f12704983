//! Operations read off a graph, and the completions used to obtain them.
//!
//! Each operation makes the vertex set into a magma whose generalized Cayley
//! graph, labeled by the edges leaving the witness vertex, is the input
//! graph again.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    axiom_check, cyclic_group, AlgebraError, AlgebraReport, Labeling, MagmaTable,
};
use crate::coloring::{complete_edge_color, ColoringError, Relation};
use crate::graph::{Graph, GraphError, BAR_PREFIX};
use crate::isomorphism::{is_arc_symmetric, is_symmetric, IsoError, IsoOptions};
use crate::properties::{property_report, PropertyOptions, PropertyReport};

/// Label of the loops added to loopless graphs before completion.
pub const LOOP_LABEL: &str = "__loop";
/// Prefix of the colors added by the quasigroup completion.
pub const COLOR_PREFIX: &str = "__c";
/// Base name of the vertex added by root completion.
pub const ROOT_VERTEX: &str = "__root";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthesisError {
    #[error("precondition failed: graph is not {condition}{}", detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default())]
    Precondition {
        condition: String,
        detail: Option<String>,
    },
    #[error("replay of the word from {from} to {to} dead-ends")]
    ReplayDeadEnd { from: String, to: String },
    #[error("label {0:?} is reserved and already used by the graph")]
    LabelCollision(String),
    #[error("group on representatives: {0}")]
    GroupOnRepresentatives(String),
    #[error("undecided: {0}")]
    Undecided(#[from] IsoError),
    #[error("root completion search undecided: budget of {0} assignments exhausted")]
    SearchBudgetExceeded(u64),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Clone, Copy)]
pub struct SynthesisOptions {
    pub iso: IsoOptions,
    /// Maximum number of partial assignments tried by root completion.
    pub search_budget: u64,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            iso: IsoOptions::default(),
            search_budget: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum OperationKind {
    Path,
    Chain,
    ExtendedChain,
    Edge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Witness {
    Root(String),
    Representatives {
        representatives: Vec<String>,
        group: MagmaTable,
    },
}

/// A total operation on the vertex set, with the labeling that regenerates
/// the source graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SynthesizedOperation {
    pub table: MagmaTable,
    pub kind: OperationKind,
    pub witness: Witness,
    /// `→_G(w)` for the witness vertex `w`.
    pub generator_set: Vec<String>,
    /// `⟦s⟧ = a` for `w -a-> s`; absent when two labels lead to one vertex.
    pub labeling: Option<Labeling>,
    pub report: AlgebraReport,
}

impl SynthesizedOperation {
    /// The generalized Cayley graph of the table under the labeling.
    pub fn regenerate(&self) -> Option<Result<Graph, AlgebraError>> {
        self.labeling
            .as_ref()
            .map(|lab| crate::algebra::cayley_graph(&self.table, lab))
    }
}

fn report(g: &Graph) -> PropertyReport {
    property_report(g, &PropertyOptions::default())
}

fn require(
    ok: bool,
    condition: &str,
    props: &PropertyReport,
    key: &str,
) -> Result<(), SynthesisError> {
    if ok {
        Ok(())
    } else {
        Err(SynthesisError::Precondition {
            condition: condition.to_string(),
            detail: props.witness(key).map(str::to_string),
        })
    }
}

fn plain_failure(condition: &str) -> SynthesisError {
    SynthesisError::Precondition {
        condition: condition.to_string(),
        detail: None,
    }
}

/// Labeling `⟦s⟧ = a` for `w -a-> s`, when the targets out of `w` are distinct.
fn labeling_at(g: &Graph, w: usize) -> Option<Labeling> {
    let out = g.out_edges(w);
    let mut targets: Vec<usize> = out.iter().map(|&(_, t)| t).collect();
    targets.sort_unstable();
    targets.dedup();
    if targets.len() != out.len() {
        return None;
    }
    Labeling::new(
        out.iter()
            .map(|&(a, t)| (g.vertex_name(t).to_string(), g.label_name(a).to_string())),
    )
    .ok()
}

fn generator_set(g: &Graph, w: usize) -> Vec<String> {
    g.successor_set(w)
        .into_iter()
        .map(|t| g.vertex_name(t).to_string())
        .collect()
}

/// Table over `V_G` from a word per column: `s·t` replays the word of `t`
/// from `s`.
fn table_from_words(
    g: &Graph,
    words: &[Vec<String>],
    start_of: impl Fn(usize, usize) -> usize,
) -> Result<MagmaTable, SynthesisError> {
    let n = g.vertex_count();
    let mut cells = vec![0usize; n * n];
    for s in 0..n {
        for t in 0..n {
            cells[s * n + t] = g.replay(start_of(s, t), &words[t]).ok_or_else(|| {
                SynthesisError::ReplayDeadEnd {
                    from: g.vertex_name(s).to_string(),
                    to: g.vertex_name(t).to_string(),
                }
            })?;
        }
    }
    Ok(MagmaTable::from_fn(g.vertices(), |s, t| cells[s * n + t])?)
}

/// The path operation at root `r`: `s * t` is reached from `s` by any label
/// word leading from `r` to `t`.
///
/// Requires `r` to be a root and `g` to be deterministic and arc-symmetric.
pub fn path_operation(
    g: &Graph,
    r: &str,
    opts: &SynthesisOptions,
) -> Result<SynthesizedOperation, SynthesisError> {
    let root = g.require_vertex(r)?;
    let props = report(g);
    require(
        props.roots.iter().any(|x| x == r),
        &format!("rooted at {r}"),
        &props,
        "rooted",
    )?;
    require(
        props.deterministic,
        "deterministic",
        &props,
        "deterministic",
    )?;
    if !is_arc_symmetric(g, &opts.iso)? {
        return Err(plain_failure("arc-symmetric"));
    }
    let words: Vec<Vec<String>> = (0..g.vertex_count())
        .map(|t| g.shortest_word(root, t, false).expect("r is a root"))
        .collect();
    let table = table_from_words(g, &words, |s, _| s)?;
    Ok(SynthesizedOperation {
        report: axiom_check(&table),
        table,
        kind: OperationKind::Path,
        witness: Witness::Root(r.to_string()),
        generator_set: generator_set(g, root),
        labeling: labeling_at(g, root),
    })
}

fn reject_barred_labels(g: &Graph) -> Result<(), SynthesisError> {
    match g.labels().iter().find(|a| a.starts_with(BAR_PREFIX)) {
        Some(a) => Err(SynthesisError::LabelCollision(a.clone())),
        None => Ok(()),
    }
}

/// The chain operation at `r`: the path operation of `g` with every edge
/// also walkable backwards under its barred label.
///
/// Requires `g` connected, symmetric, deterministic and co-deterministic.
pub fn chain_operation(
    g: &Graph,
    r: &str,
    opts: &SynthesisOptions,
) -> Result<SynthesizedOperation, SynthesisError> {
    let root = g.require_vertex(r)?;
    reject_barred_labels(g)?;
    let props = report(g);
    require(props.connected, "connected", &props, "connected")?;
    require(
        props.deterministic,
        "deterministic",
        &props,
        "deterministic",
    )?;
    require(
        props.co_deterministic,
        "co-deterministic",
        &props,
        "coDeterministic",
    )?;
    if !is_symmetric(g, &opts.iso)? {
        return Err(plain_failure("symmetric"));
    }
    let words: Vec<Vec<String>> = (0..g.vertex_count())
        .map(|t| g.shortest_word(root, t, true).expect("g is connected"))
        .collect();
    let table = table_from_words(g, &words, |s, _| s)?;
    Ok(SynthesizedOperation {
        report: axiom_check(&table),
        table,
        kind: OperationKind::Chain,
        witness: Witness::Root(r.to_string()),
        generator_set: generator_set(g, root),
        labeling: labeling_at(g, root),
    })
}

/// The chain operation relative to the component representatives `P`
/// (least vertex of each component) and a group on `P`.
///
/// With `π(s) -u-> s` and `π(t) -v-> t` chains, `s * t` is reached from
/// `π(s)·π(t)` by `uv`. The default group on `P` is cyclic, adding ranks in
/// length-lexicographic order modulo `|P|`.
pub fn extended_chain_operation(
    g: &Graph,
    group_on_p: Option<&MagmaTable>,
    opts: &SynthesisOptions,
) -> Result<SynthesizedOperation, SynthesisError> {
    reject_barred_labels(g)?;
    let props = report(g);
    require(
        props.deterministic,
        "deterministic",
        &props,
        "deterministic",
    )?;
    require(
        props.co_deterministic,
        "co-deterministic",
        &props,
        "coDeterministic",
    )?;
    if !is_symmetric(g, &opts.iso)? {
        return Err(plain_failure("symmetric"));
    }
    let comps = g.components();
    let reps = comps.representatives.clone();
    let group = match group_on_p {
        None => {
            let z = cyclic_group(reps.len());
            MagmaTable::from_fn(&reps, |i, j| z.mul(i, j))?
        }
        Some(t) => {
            let mut mine: Vec<&String> = t.carrier().iter().collect();
            let mut want: Vec<&String> = reps.iter().collect();
            mine.sort();
            want.sort();
            if mine != want {
                return Err(SynthesisError::GroupOnRepresentatives(format!(
                    "carrier {:?} differs from the representatives {:?}",
                    t.carrier(),
                    reps
                )));
            }
            if !axiom_check(t).group {
                return Err(SynthesisError::GroupOnRepresentatives(
                    "table is not a group".into(),
                ));
            }
            t.reordered(&reps)?
        }
    };
    let identity = axiom_check(&group)
        .identity
        .expect("a group has an identity");
    let rep_vertex: Vec<usize> = reps
        .iter()
        .map(|p| g.vertex_id(p).expect("representatives are vertices"))
        .collect();
    let n = g.vertex_count();
    let comp_of: Vec<usize> = (0..n).map(|v| comps.component_of(v)).collect();
    let words: Vec<Vec<String>> = (0..n)
        .map(|t| {
            g.shortest_word(rep_vertex[comp_of[t]], t, true)
                .expect("a vertex is chain-connected to its representative")
        })
        .collect();
    let mut cells = vec![0usize; n * n];
    for s in 0..n {
        for t in 0..n {
            let start = rep_vertex[group.mul(comp_of[s], comp_of[t])];
            let word: Vec<String> = words[s].iter().chain(&words[t]).cloned().collect();
            cells[s * n + t] =
                g.replay(start, &word)
                    .ok_or_else(|| SynthesisError::ReplayDeadEnd {
                        from: g.vertex_name(s).to_string(),
                        to: g.vertex_name(t).to_string(),
                    })?;
        }
    }
    let table = MagmaTable::from_fn(g.vertices(), |s, t| cells[s * n + t])?;
    let e = g
        .vertex_id(&identity)
        .expect("identity is a representative");
    Ok(SynthesizedOperation {
        report: axiom_check(&table),
        table,
        kind: OperationKind::ExtendedChain,
        witness: Witness::Representatives {
            representatives: reps,
            group,
        },
        generator_set: generator_set(g, e),
        labeling: labeling_at(g, e),
    })
}

/// The edge operation at a 1-root `r`: `s × t` is the `a`-successor of `s`
/// for the label `a` of the edge `r -a-> t`.
///
/// Requires `g` deterministic, source-complete and simple.
pub fn edge_operation(
    g: &Graph,
    r: &str,
    _opts: &SynthesisOptions,
) -> Result<SynthesizedOperation, SynthesisError> {
    let root = g.require_vertex(r)?;
    let props = report(g);
    require(
        props.one_roots.iter().any(|x| x == r),
        &format!("1-rooted at {r}"),
        &props,
        "complete",
    )?;
    require(
        props.deterministic,
        "deterministic",
        &props,
        "deterministic",
    )?;
    require(
        props.source_complete,
        "source-complete",
        &props,
        "sourceComplete",
    )?;
    require(props.simple, "simple", &props, "simple")?;
    let n = g.vertex_count();
    let mut label_to = vec![0usize; n];
    for &(a, t) in g.out_edges(root) {
        label_to[t] = a;
    }
    let table = MagmaTable::from_fn(g.vertices(), |s, t| {
        g.successor(s, label_to[t])
            .expect("deterministic and source-complete")
    })?;
    Ok(SynthesizedOperation {
        report: axiom_check(&table),
        table,
        kind: OperationKind::Edge,
        witness: Witness::Root(r.to_string()),
        generator_set: generator_set(g, root),
        labeling: labeling_at(g, root),
    })
}

/// `g` with an `__loop` loop on every vertex when `g` has no loop at all.
fn with_fresh_loops(g: &Graph) -> Result<Graph, SynthesisError> {
    if g.edges().iter().any(|e| e.source == e.target) {
        return Ok(g.clone());
    }
    if g.label_id(LOOP_LABEL).is_some() {
        return Err(SynthesisError::LabelCollision(LOOP_LABEL.into()));
    }
    let mut triples = g.triple_set();
    triples.extend(
        g.vertices()
            .iter()
            .map(|v| (v.clone(), LOOP_LABEL.to_string(), v.clone())),
    );
    Ok(Graph::from_edges(triples)?)
}

/// Completes a simple, deterministic, source-complete graph into a complete
/// one labeled by its own vertices, such that `r -s-> s` for every vertex.
///
/// For each vertex `s`, `ℓ_s` pairs the label `a` of `r -a-> t` with the
/// label `b` of `s -b-> t`; the unmatched labels on both sides are paired
/// in length-lexicographic order to extend `ℓ_s` into a permutation. The
/// edges out of `s` are then
///
/// - `s -p-> t` when `r -a-> p` and `s -a-> t`,
/// - `s -p-> t` when `a` is unmatched, `r -a-> t` and `s -ℓ_s(a)-> p`,
/// - `s -t-> t` when `t` is neither a successor of `r` nor of `s`.
///
/// A loopless graph first receives an `__loop` loop on every vertex, which
/// makes `r` a two-sided identity of the induced edge operation.
pub fn left_quasigroup_completion(g: &Graph, r: &str) -> Result<Graph, SynthesisError> {
    g.require_vertex(r)?;
    let props = report(g);
    require(props.simple, "simple", &props, "simple")?;
    require(
        props.deterministic,
        "deterministic",
        &props,
        "deterministic",
    )?;
    require(
        props.source_complete,
        "source-complete",
        &props,
        "sourceComplete",
    )?;
    let h = with_fresh_loops(g)?;
    let root = h.vertex_id(r).expect("same vertices");
    let n = h.vertex_count();
    let k = h.label_count();
    let succ = |s: usize, a: usize| {
        h.successor(s, a)
            .expect("deterministic and source-complete")
    };
    let mut triples: Vec<(String, String, String)> = Vec::new();
    let name = |v: usize| h.vertex_name(v).to_string();

    for s in 0..n {
        // ell[a] = b when r -a-> t and s -b-> t.
        let mut ell: Vec<Option<usize>> = vec![None; k];
        let mut in_range = vec![false; k];
        for (a, slot) in ell.iter_mut().enumerate() {
            let t = succ(root, a);
            if let Some(b) = h.labels_between(s, t).next() {
                *slot = Some(b);
                in_range[b] = true;
            }
        }
        let unmatched: Vec<usize> = (0..k).filter(|&a| ell[a].is_none()).collect();
        let free: Vec<usize> = (0..k).filter(|&b| !in_range[b]).collect();
        debug_assert_eq!(unmatched.len(), free.len());

        for a in 0..k {
            triples.push((name(s), name(succ(root, a)), name(succ(s, a))));
        }
        for (&a, &b) in unmatched.iter().zip(&free) {
            triples.push((name(s), name(succ(s, b)), name(succ(root, a))));
        }
        let near: Vec<bool> = {
            let mut m = vec![false; n];
            for &(_, t) in h.out_edges(root).iter().chain(h.out_edges(s)) {
                m[t] = true;
            }
            m
        };
        for t in (0..n).filter(|&t| !near[t]) {
            triples.push((name(s), name(t), name(t)));
        }
    }
    Ok(Graph::from_edges(triples)?)
}

/// Completes a simple, deterministic, co-deterministic, source- and
/// target-complete graph into a complete graph with the same properties by
/// adding a complete edge coloring of its unlabeled complement.
pub fn quasigroup_completion(g: &Graph) -> Result<Graph, SynthesisError> {
    let props = report(g);
    require(props.simple, "simple", &props, "simple")?;
    require(
        props.deterministic,
        "deterministic",
        &props,
        "deterministic",
    )?;
    require(
        props.co_deterministic,
        "co-deterministic",
        &props,
        "coDeterministic",
    )?;
    require(
        props.source_complete,
        "source-complete",
        &props,
        "sourceComplete",
    )?;
    require(
        props.target_complete,
        "target-complete",
        &props,
        "targetComplete",
    )?;
    let h = with_fresh_loops(g)?;
    let complement = Relation::of_graph(&h).complement();
    if complement.is_empty() {
        return Ok(h);
    }
    let coloring = complete_edge_color(&complement, COLOR_PREFIX)?;
    if let Some(c) = coloring.palette().iter().find(|c| h.label_id(c).is_some()) {
        return Err(SynthesisError::LabelCollision(c.clone()));
    }
    let colored = coloring.to_graph().expect("non-empty complement");
    Ok(h.union(&colored))
}

fn valid_rooted(g: &Graph, root: usize, opts: &SynthesisOptions) -> Result<bool, SynthesisError> {
    let props = report(g);
    let cheap = props.simple
        && props.deterministic
        && props.co_deterministic
        && g.reachable_mask(root).iter().all(|&x| x);
    Ok(cheap && is_arc_symmetric(g, &opts.iso)?)
}

/// Searches for a root completion of `g` that is simple, deterministic,
/// co-deterministic and arc-symmetric.
///
/// A rooted `g` that already has these properties is its own completion.
/// Otherwise a fresh vertex receives at most one edge per label, targets
/// tried in length-lexicographic order with "no edge" first, skipping any
/// choice that would break co-determinism or simplicity.
pub fn root_completion_search(
    g: &Graph,
    opts: &SynthesisOptions,
) -> Result<Option<Graph>, SynthesisError> {
    let props = report(g);
    if let Some(r) = props.roots.first() {
        let r = g.vertex_id(r).expect("root is a vertex");
        if valid_rooted(g, r, opts)? {
            return Ok(Some(g.clone()));
        }
    }
    let mut fresh = ROOT_VERTEX.to_string();
    while g.vertex_id(&fresh).is_some() {
        fresh.push('\'');
    }
    let mut state = RootSearch {
        g,
        fresh,
        choice: vec![None; g.label_count()],
        used_target: vec![false; g.vertex_count()],
        spent: 0,
        opts,
    };
    state.run(0)
}

struct RootSearch<'a> {
    g: &'a Graph,
    fresh: String,
    choice: Vec<Option<usize>>,
    used_target: Vec<bool>,
    spent: u64,
    opts: &'a SynthesisOptions,
}

impl RootSearch<'_> {
    fn run(&mut self, label: usize) -> Result<Option<Graph>, SynthesisError> {
        self.spent += 1;
        if self.spent > self.opts.search_budget {
            return Err(SynthesisError::SearchBudgetExceeded(
                self.opts.search_budget,
            ));
        }
        let g = self.g;
        if label == g.label_count() {
            return self.check();
        }
        if let Some(found) = self.run(label + 1)? {
            return Ok(Some(found));
        }
        for t in 0..g.vertex_count() {
            if self.used_target[t] || g.predecessors(t, label).next().is_some() {
                continue;
            }
            self.choice[label] = Some(t);
            self.used_target[t] = true;
            let found = self.run(label + 1)?;
            self.choice[label] = None;
            self.used_target[t] = false;
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn check(&self) -> Result<Option<Graph>, SynthesisError> {
        let g = self.g;
        if self.choice.iter().all(Option::is_none) {
            return Ok(None);
        }
        let mut triples = g.triple_set();
        for (a, t) in self.choice.iter().enumerate() {
            if let Some(t) = t {
                triples.push((
                    self.fresh.clone(),
                    g.label_name(a).to_string(),
                    g.vertex_name(*t).to_string(),
                ));
            }
        }
        let completed = Graph::from_edges(triples)?;
        let r = completed
            .vertex_id(&self.fresh)
            .expect("fresh root is a vertex");
        if valid_rooted(&completed, r, self.opts)? {
            Ok(Some(completed))
        } else {
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cayley_graph, parse_table};

    fn opts() -> SynthesisOptions {
        SynthesisOptions::default()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(
            (0..n).map(|i| (i.to_string(), "a".to_string(), ((i + 1) % n).to_string())),
        )
        .unwrap()
    }

    fn even() -> Graph {
        Graph::parse("p\ta\tq\np\tb\tp\nq\ta\tp\nq\tb\tq\n").unwrap()
    }

    #[test]
    fn path_operation_on_three_cycle_is_addition() {
        let op = path_operation(&cycle(3), "0", &opts()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(
                    op.table.product(&i.to_string(), &j.to_string()),
                    Some(((i + j) % 3).to_string().as_str())
                );
            }
        }
        assert!(op.report.monoid && op.report.cancellative);
        assert_eq!(op.regenerate().unwrap().unwrap(), cycle(3));
    }

    #[test]
    fn path_operation_on_even() {
        let op = path_operation(&even(), "p", &opts()).unwrap();
        assert_eq!(op.table.product("q", "q"), Some("p"));
        assert!(op.report.group);
        assert_eq!(op.regenerate().unwrap().unwrap(), even());
    }

    #[test]
    fn chain_operation_on_four_cycle() {
        let op = chain_operation(&cycle(4), "0", &opts()).unwrap();
        assert_eq!(op.table.product("1", "3"), Some("0"));
        assert!(op.report.group);
        let single = Graph::from_edges([("v0", "a", "v1")]).unwrap();
        assert!(matches!(
            chain_operation(&single, "v0", &opts()),
            Err(SynthesisError::Precondition { .. })
        ));
    }

    #[test]
    fn extended_chain_on_two_loops() {
        let g = Graph::from_edges([("s", "a", "s"), ("t", "a", "t")]).unwrap();
        let op = extended_chain_operation(&g, None, &opts()).unwrap();
        assert_eq!(op.table.product("t", "t"), Some("s"));
        assert!(op.report.group);
        assert_eq!(op.regenerate().unwrap().unwrap(), g);
    }

    #[test]
    fn edge_operation_reproduces_left_quasigroup() {
        let m = parse_table("a b c\na b c\nb a c\nc b a\n").unwrap();
        let g = cayley_graph(&m, &Labeling::identity(["a", "b", "c"]).unwrap()).unwrap();
        let op = edge_operation(&g, "a", &opts()).unwrap();
        assert!(op.table.same_operation(&m));
        assert!(op.report.left_quasigroup);
    }

    #[test]
    fn edge_operation_of_subtraction_is_addition() {
        let z3_sub = MagmaTable::from_fn(&["0", "1", "2"], |i, j| (i + 3 - j) % 3).unwrap();
        let g = cayley_graph(&z3_sub, &Labeling::identity(["0", "1", "2"]).unwrap()).unwrap();
        let op = edge_operation(&g, "0", &opts()).unwrap();
        assert!(op.table.same_operation(&cyclic_group(3)));
    }

    #[test]
    fn infsup_of_two_cycle() {
        let g = Graph::from_edges([("0", "a", "1"), ("1", "a", "0")]).unwrap();
        let h = left_quasigroup_completion(&g, "0").unwrap();
        let want = Graph::from_edges([
            ("0", "1", "1"),
            ("1", "1", "0"),
            ("0", "0", "0"),
            ("1", "0", "1"),
        ])
        .unwrap();
        assert_eq!(h, want);
        let op = edge_operation(&h, "0", &opts()).unwrap();
        assert!(op.report.group);
    }

    #[test]
    fn infsup_trivial_and_errors() {
        let g = Graph::from_edges([("s", "a", "s")]).unwrap();
        assert_eq!(
            left_quasigroup_completion(&g, "s").unwrap(),
            Graph::from_edges([("s", "s", "s")]).unwrap()
        );
        let path = Graph::from_edges([("v0", "a", "v1")]).unwrap();
        assert!(left_quasigroup_completion(&path, "v0").is_err());
    }

    #[test]
    fn quasigroup_completion_adds_colored_complement() {
        let g = Graph::from_edges([("a", "x", "a"), ("b", "x", "c"), ("c", "x", "b")]).unwrap();
        let h = quasigroup_completion(&g).unwrap();
        assert_eq!(h.edge_count(), 9);
        assert_eq!(h.label_count(), 3);
        assert_eq!(h.label_restriction(&["x"]).unwrap(), g);
        let op = edge_operation(&h, "a", &opts()).unwrap();
        assert!(op.report.quasigroup);
    }

    #[test]
    fn quasigroup_completion_of_loopless_two_cycle() {
        let g = Graph::from_edges([("0", "a", "1"), ("1", "a", "0")]).unwrap();
        let h = quasigroup_completion(&g).unwrap();
        assert!(h.contains_triple("0", LOOP_LABEL, "0"));
        assert_eq!(h.edge_count(), 4);
        let op = edge_operation(&h, "0", &opts()).unwrap();
        assert!(op.report.group);
    }

    #[test]
    fn root_completion() {
        assert_eq!(
            root_completion_search(&cycle(3), &opts()).unwrap(),
            Some(cycle(3))
        );
        let path = Graph::from_edges([("v0", "a", "v1"), ("v1", "a", "v2")]).unwrap();
        assert_eq!(root_completion_search(&path, &opts()).unwrap(), None);
        let loops = Graph::from_edges([("s", "a", "s"), ("t", "a", "t")]).unwrap();
        assert_eq!(root_completion_search(&loops, &opts()).unwrap(), None);
    }
}
