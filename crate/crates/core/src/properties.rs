//! Structural predicates of labeled graphs, with a witness for each failure.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coloring::Relation;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy)]
pub struct PropertyOptions {
    /// Largest `|V|²` for which the complement relation is materialized.
    pub complement_cap: usize,
}

impl Default for PropertyOptions {
    fn default() -> Self {
        PropertyOptions {
            complement_cap: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VertexDegree {
    pub vertex: String,
    /// Number of edges leaving the vertex.
    pub out_degree: usize,
    /// Number of edges entering the vertex.
    pub in_degree: usize,
    /// `|→_G(s)|`, distinct successors.
    pub successors: usize,
    /// `|→_G⁻¹(s)|`, distinct predecessors.
    pub predecessors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyReport {
    pub simple: bool,
    pub deterministic: bool,
    pub co_deterministic: bool,
    pub source_complete: bool,
    pub target_complete: bool,
    pub complete: bool,
    pub loop_complete: bool,
    pub rooted: bool,
    pub strongly_connected: bool,
    pub connected: bool,
    pub out_regular: bool,
    pub co_out_regular: bool,
    pub regular: bool,
    pub co_regular: bool,
    pub roots: Vec<String>,
    pub one_roots: Vec<String>,
    pub degrees: Vec<VertexDegree>,
    /// `Δ⁺`: largest number of edges leaving a vertex.
    pub max_out_degree: usize,
    /// `Δ⁻`: largest number of edges entering a vertex.
    pub max_in_degree: usize,
    /// `Δ = max(Δ⁺, Δ⁻)`.
    pub max_degree: usize,
    pub label_count: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    /// One human-readable counterexample per failed flag, keyed by flag name.
    pub witnesses: BTreeMap<String, String>,
}

impl PropertyReport {
    /// Flag values keyed by their serialized names, in a fixed order.
    pub fn flags(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("simple", self.simple),
            ("deterministic", self.deterministic),
            ("coDeterministic", self.co_deterministic),
            ("sourceComplete", self.source_complete),
            ("targetComplete", self.target_complete),
            ("complete", self.complete),
            ("loopComplete", self.loop_complete),
            ("rooted", self.rooted),
            ("stronglyConnected", self.strongly_connected),
            ("connected", self.connected),
            ("outRegular", self.out_regular),
            ("coOutRegular", self.co_out_regular),
            ("regular", self.regular),
            ("coRegular", self.co_regular),
        ]
    }

    pub fn witness(&self, flag: &str) -> Option<&str> {
        self.witnesses.get(flag).map(String::as_str)
    }
}

/// The unlabeled complement `{(s,t) : no edge s → t}` over `V_G`.
pub fn complement_relation(g: &Graph) -> Relation {
    Relation::of_graph(g).complement()
}

pub fn property_report(g: &Graph, opts: &PropertyOptions) -> PropertyReport {
    let n = g.vertex_count();
    let name = |v: usize| g.vertex_name(v);
    let label = |a: usize| g.label_name(a);
    let mut witnesses = BTreeMap::new();

    let mut simple = true;
    let mut deterministic = true;
    'outer: for s in 0..n {
        let out = g.out_edges(s);
        for (i, &(a, t)) in out.iter().enumerate() {
            for &(b, u) in &out[i + 1..] {
                if deterministic && a == b {
                    deterministic = false;
                    witnesses.insert(
                        "deterministic".into(),
                        format!(
                            "deterministic fails: {} -{}-> {} and {} -{}-> {}",
                            name(s),
                            label(a),
                            name(t),
                            name(s),
                            label(b),
                            name(u)
                        ),
                    );
                }
                if simple && t == u {
                    simple = false;
                    witnesses.insert(
                        "simple".into(),
                        format!(
                            "simple fails: {} -{}-> {} and {} -{}-> {}",
                            name(s),
                            label(a),
                            name(t),
                            name(s),
                            label(b),
                            name(u)
                        ),
                    );
                }
                if !simple && !deterministic {
                    break 'outer;
                }
            }
        }
    }

    let mut co_deterministic = true;
    'co: for t in 0..n {
        let inc = g.in_edges(t);
        for w in inc.windows(2) {
            if w[0].0 == w[1].0 {
                co_deterministic = false;
                witnesses.insert(
                    "coDeterministic".into(),
                    format!(
                        "co-deterministic fails: {} -{}-> {} and {} -{}-> {}",
                        name(w[0].1),
                        label(w[0].0),
                        name(t),
                        name(w[1].1),
                        label(w[1].0),
                        name(t)
                    ),
                );
                break 'co;
            }
        }
    }

    let labels = g.label_count();
    let source_complete = first_missing(g, labels, |v| g.out_edges(v))
        .map(|(v, a)| {
            witnesses.insert(
                "sourceComplete".into(),
                format!(
                    "source-complete fails: {} has no outgoing {}-edge",
                    name(v),
                    label(a)
                ),
            );
        })
        .is_none();
    let target_complete = first_missing(g, labels, |v| g.in_edges(v))
        .map(|(v, a)| {
            witnesses.insert(
                "targetComplete".into(),
                format!(
                    "target-complete fails: {} has no incoming {}-edge",
                    name(v),
                    label(a)
                ),
            );
        })
        .is_none();

    let mut loop_complete = true;
    let mut loop_at = vec![vec![false; n]; labels];
    for e in g.edges() {
        if e.source == e.target {
            loop_at[e.label][e.source] = true;
        }
    }
    for (a, row) in loop_at.iter().enumerate() {
        if let (Some(s), Some(t)) = (row.iter().position(|&x| x), row.iter().position(|&x| !x)) {
            loop_complete = false;
            witnesses.insert(
                "loopComplete".into(),
                format!(
                    "loop-complete fails: {} has a {}-loop but {} does not",
                    name(s),
                    label(a),
                    name(t)
                ),
            );
            break;
        }
    }

    let succ: Vec<Vec<usize>> = (0..n)
        .map(|v| g.successor_set(v).into_iter().collect())
        .collect();
    let pred_count: Vec<usize> = (0..n).map(|v| g.predecessor_set(v).len()).collect();

    let one_roots: Vec<usize> = (0..n).filter(|&v| succ[v].len() == n).collect();
    let complete = one_roots.len() == n;
    if !complete {
        let s = (0..n)
            .find(|v| succ[*v].len() < n)
            .expect("some vertex is not a 1-root");
        let t = (0..n)
            .find(|t| succ[s].binary_search(t).is_err())
            .expect("a missing target");
        witnesses.insert(
            "complete".into(),
            format!("complete fails: no edge from {} to {}", name(s), name(t)),
        );
    }

    let roots: Vec<usize> = (0..n)
        .filter(|&v| g.reachable_mask(v).iter().all(|&x| x))
        .collect();
    let rooted = !roots.is_empty();
    let strongly_connected = roots.len() == n;
    if !rooted {
        witnesses.insert(
            "rooted".into(),
            "rooted fails: no vertex reaches every vertex".into(),
        );
    }
    if !strongly_connected {
        let s = (0..n).find(|v| !roots.contains(v)).expect("a non-root");
        let t = g
            .reachable_mask(s)
            .iter()
            .position(|&x| !x)
            .expect("an unreachable vertex");
        witnesses.insert(
            "stronglyConnected".into(),
            format!(
                "strongly connected fails: {} does not reach {}",
                name(s),
                name(t)
            ),
        );
    }
    let comps = g.components();
    let connected = comps.len() == 1;
    if !connected {
        witnesses.insert(
            "connected".into(),
            format!(
                "connected fails: {} and {} lie in different components",
                comps.representatives[0], comps.representatives[1]
            ),
        );
    }

    let out_deg: Vec<usize> = succ.iter().map(Vec::len).collect();
    let out_regular = out_deg.windows(2).all(|w| w[0] == w[1]);
    let delta_rel = out_deg
        .iter()
        .chain(&pred_count)
        .copied()
        .max()
        .unwrap_or(0);
    let regular = (0..n).all(|v| out_deg[v] == delta_rel && pred_count[v] == delta_rel);

    // In the complement every element has n - |R(s)| successors and
    // n - |R⁻¹(s)| predecessors.
    let (co_out_regular, co_regular) = if n.saturating_mul(n) <= opts.complement_cap {
        let comp = complement_relation(g);
        (comp.is_out_regular(), comp.is_regular())
    } else {
        let co_out: Vec<usize> = out_deg.iter().map(|d| n - d).collect();
        let co_in: Vec<usize> = pred_count.iter().map(|d| n - d).collect();
        let delta = co_out.iter().chain(&co_in).copied().max().unwrap_or(0);
        (
            co_out.windows(2).all(|w| w[0] == w[1]),
            (0..n).all(|v| co_out[v] == delta && co_in[v] == delta),
        )
    };
    if !out_regular {
        witnesses.insert(
            "outRegular".into(),
            degree_witness("out-regular", g, &out_deg, "successors"),
        );
    }
    if !co_out_regular {
        let co: Vec<usize> = out_deg.iter().map(|d| n - d).collect();
        witnesses.insert(
            "coOutRegular".into(),
            degree_witness("co-out-regular", g, &co, "non-successors"),
        );
    }
    if !regular {
        let v = (0..n)
            .find(|&v| out_deg[v] != delta_rel || pred_count[v] != delta_rel)
            .expect("an irregular vertex");
        witnesses.insert(
            "regular".into(),
            format!(
                "regular fails: {} has {} successors and {} predecessors, expected {}",
                name(v),
                out_deg[v],
                pred_count[v],
                delta_rel
            ),
        );
    }
    if !co_regular {
        let co_out: Vec<usize> = out_deg.iter().map(|d| n - d).collect();
        let co_in: Vec<usize> = pred_count.iter().map(|d| n - d).collect();
        let delta = co_out.iter().chain(&co_in).copied().max().unwrap_or(0);
        let v = (0..n)
            .find(|&v| co_out[v] != delta || co_in[v] != delta)
            .expect("an irregular vertex");
        witnesses.insert(
            "coRegular".into(),
            format!(
                "co-regular fails: {} has {} non-successors and {} non-predecessors, expected {}",
                name(v),
                co_out[v],
                co_in[v],
                delta
            ),
        );
    }

    let degrees: Vec<VertexDegree> = (0..n)
        .map(|v| VertexDegree {
            vertex: name(v).to_string(),
            out_degree: g.out_edges(v).len(),
            in_degree: g.in_edges(v).len(),
            successors: out_deg[v],
            predecessors: pred_count[v],
        })
        .collect();
    let max_out_degree = degrees.iter().map(|d| d.out_degree).max().unwrap_or(0);
    let max_in_degree = degrees.iter().map(|d| d.in_degree).max().unwrap_or(0);

    let names = |vs: &[usize]| vs.iter().map(|&v| name(v).to_string()).collect();
    PropertyReport {
        simple,
        deterministic,
        co_deterministic,
        source_complete,
        target_complete,
        complete,
        loop_complete,
        rooted,
        strongly_connected,
        connected,
        out_regular,
        co_out_regular,
        regular,
        co_regular,
        roots: names(&roots),
        one_roots: names(&one_roots),
        degrees,
        max_out_degree,
        max_in_degree,
        max_degree: max_out_degree.max(max_in_degree),
        label_count: labels,
        vertex_count: n,
        edge_count: g.edge_count(),
        witnesses,
    }
}

/// First `(vertex, label)` with no edge of that label in the given adjacency.
fn first_missing<'g, F>(g: &'g Graph, labels: usize, adj: F) -> Option<(usize, usize)>
where
    F: Fn(usize) -> &'g [(usize, usize)],
{
    for v in 0..g.vertex_count() {
        let mut have = vec![false; labels];
        for &(a, _) in adj(v) {
            have[a] = true;
        }
        if let Some(a) = have.iter().position(|&x| !x) {
            return Some((v, a));
        }
    }
    None
}

fn degree_witness(flag: &str, g: &Graph, deg: &[usize], what: &str) -> String {
    let v = deg
        .iter()
        .position(|&d| d != deg[0])
        .expect("degrees differ");
    format!(
        "{flag} fails: {} has {} {what} but {} has {}",
        g.vertex_name(0),
        deg[0],
        g.vertex_name(v),
        deg[v]
    )
}
