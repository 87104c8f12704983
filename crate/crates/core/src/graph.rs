//! Finite labeled directed graphs identified with their edge sets.
//!
//! Vertices and labels are opaque text tokens. Every collection exposed by
//! [`Graph`] is ordered length-lexicographically (shorter tokens first, then
//! bytewise), which is also the order used by the TSV serializer.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Prefix of the barred copy of a label used when walking edges backwards.
pub const BAR_PREFIX: &str = "~";

/// Length-lexicographic comparison of two tokens.
pub fn llex_cmp(a: &str, b: &str) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.as_bytes().cmp(b.as_bytes()))
}

/// Sorts and deduplicates tokens in length-lexicographic order.
pub fn llex_sorted<I, S>(items: I) -> Vec<String>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut v: Vec<String> = items.into_iter().map(Into::into).collect();
    v.sort_by(|a, b| llex_cmp(a, b));
    v.dedup();
    v
}

/// Barred copy of `label`.
pub fn bar(label: &str) -> String {
    format!("{BAR_PREFIX}{label}")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("empty graph: a graph needs at least one edge")]
    Empty,
    #[error("line {line}: expected 3 tab-separated fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("invalid token {token:?}: {reason}")]
    InvalidToken { token: String, reason: &'static str },
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<GraphError>,
    },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
}

/// An edge given by vertex and label indices of its [`Graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: usize,
    pub label: usize,
    pub target: usize,
}

fn check_token(token: &str) -> Result<(), GraphError> {
    let reason = if token.is_empty() {
        "empty token"
    } else if token.contains(['\t', '\n', '\r']) {
        "tokens may not contain tabs or line breaks"
    } else if token.starts_with('#') {
        "tokens may not start with '#'"
    } else {
        return Ok(());
    };
    Err(GraphError::InvalidToken {
        token: token.to_string(),
        reason,
    })
}

/// Rejects labels that collide with barred labels.
pub fn check_user_label(label: &str) -> Result<(), GraphError> {
    check_token(label)?;
    if label.starts_with(BAR_PREFIX) {
        return Err(GraphError::InvalidToken {
            token: label.to_string(),
            reason: "labels starting with '~' are reserved for reversed edges",
        });
    }
    Ok(())
}

/// A non-empty finite set of labeled edges `source -label-> target`.
///
/// Vertex and label indices follow length-lexicographic order of the names,
/// so sorting edges by index sorts them by name as well.
#[derive(Clone)]
pub struct Graph {
    vertices: Vec<String>,
    labels: Vec<String>,
    vertex_ids: HashMap<String, usize>,
    label_ids: HashMap<String, usize>,
    edges: Vec<Edge>,
    out: Vec<Vec<(usize, usize)>>,
    inc: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph from `(source, label, target)` triples. Duplicates collapse.
    pub fn from_edges<I, S>(triples: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (S, S, S)>,
        S: AsRef<str>,
    {
        let mut named: Vec<(String, String, String)> = Vec::new();
        for (s, a, t) in triples {
            let (s, a, t) = (s.as_ref(), a.as_ref(), t.as_ref());
            check_token(s)?;
            check_token(a)?;
            check_token(t)?;
            named.push((s.to_string(), a.to_string(), t.to_string()));
        }
        if named.is_empty() {
            return Err(GraphError::Empty);
        }
        let vertices = llex_sorted(named.iter().flat_map(|(s, _, t)| [s.clone(), t.clone()]));
        let labels = llex_sorted(named.iter().map(|(_, a, _)| a.clone()));
        let vertex_ids: HashMap<String, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let label_ids: HashMap<String, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut edges: Vec<Edge> = named
            .iter()
            .map(|(s, a, t)| Edge {
                source: vertex_ids[s],
                label: label_ids[a],
                target: vertex_ids[t],
            })
            .collect();
        edges.sort();
        edges.dedup();
        let mut out = vec![Vec::new(); vertices.len()];
        let mut inc = vec![Vec::new(); vertices.len()];
        for e in &edges {
            out[e.source].push((e.label, e.target));
            inc[e.target].push((e.label, e.source));
        }
        for list in inc.iter_mut() {
            list.sort();
        }
        Ok(Graph {
            vertices,
            labels,
            vertex_ids,
            label_ids,
            edges,
            out,
            inc,
        })
    }

    /// Parses the TSV edge-list format: `source TAB label TAB target` per
    /// line, `#` comment lines, blank lines ignored.
    ///
    /// Labels starting with `~` are rejected so that barred labels stay
    /// fresh. Completion labels such as `__loop` are accepted; completing a
    /// graph that already uses them fails with a label collision.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut triples = Vec::new();
        for (i, line) in text.split('\n').enumerate() {
            let line_no = i + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(GraphError::FieldCount {
                    line: line_no,
                    found: fields.len(),
                });
            }
            let wrap = |e| GraphError::Line {
                line: line_no,
                source: Box::new(e),
            };
            check_token(fields[0]).map_err(wrap)?;
            check_user_label(fields[1]).map_err(wrap)?;
            check_token(fields[2]).map_err(wrap)?;
            triples.push((fields[0], fields[1], fields[2]));
        }
        Graph::from_edges(triples)
    }

    /// Serializes to TSV, one edge per line sorted by (source, label, target).
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for (a, l, b) in self.triples() {
            s.push_str(a);
            s.push('\t');
            s.push_str(l);
            s.push('\t');
            s.push_str(b);
            s.push('\n');
        }
        s
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn label_name(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.vertex_ids.get(name).copied()
    }

    pub fn label_id(&self, name: &str) -> Option<usize> {
        self.label_ids.get(name).copied()
    }

    pub(crate) fn require_vertex(&self, name: &str) -> Result<usize, GraphError> {
        self.vertex_id(name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    /// Outgoing `(label, target)` pairs of `v`, sorted.
    pub fn out_edges(&self, v: usize) -> &[(usize, usize)] {
        &self.out[v]
    }

    /// Incoming `(label, source)` pairs of `v`, sorted.
    pub fn in_edges(&self, v: usize) -> &[(usize, usize)] {
        &self.inc[v]
    }

    /// Targets of the `label`-edges out of `v`.
    pub fn successors(&self, v: usize, label: usize) -> impl Iterator<Item = usize> + '_ {
        let list = &self.out[v];
        let start = list.partition_point(|&(a, _)| a < label);
        list[start..]
            .iter()
            .take_while(move |&&(a, _)| a == label)
            .map(|&(_, t)| t)
    }

    /// Sources of the `label`-edges into `v`.
    pub fn predecessors(&self, v: usize, label: usize) -> impl Iterator<Item = usize> + '_ {
        let list = &self.inc[v];
        let start = list.partition_point(|&(a, _)| a < label);
        list[start..]
            .iter()
            .take_while(move |&&(a, _)| a == label)
            .map(|&(_, s)| s)
    }

    /// The unique `label`-successor of `v` when there is exactly one.
    pub fn successor(&self, v: usize, label: usize) -> Option<usize> {
        let mut it = self.successors(v, label);
        let first = it.next()?;
        match it.next() {
            None => Some(first),
            Some(_) => None,
        }
    }

    pub fn has_edge(&self, s: usize, a: usize, t: usize) -> bool {
        self.out[s].binary_search(&(a, t)).is_ok()
    }

    /// Labels of the edges from `s` to `t`.
    pub fn labels_between(&self, s: usize, t: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[s]
            .iter()
            .filter(move |&&(_, x)| x == t)
            .map(|&(a, _)| a)
    }

    /// Distinct successors of `v` under the unlabeled relation.
    pub fn successor_set(&self, v: usize) -> BTreeSet<usize> {
        self.out[v].iter().map(|&(_, t)| t).collect()
    }

    /// Distinct predecessors of `v` under the unlabeled relation.
    pub fn predecessor_set(&self, v: usize) -> BTreeSet<usize> {
        self.inc[v].iter().map(|&(_, s)| s).collect()
    }

    pub fn triples(&self) -> impl Iterator<Item = (&str, &str, &str)> + '_ {
        self.edges.iter().map(move |e| {
            (
                self.vertices[e.source].as_str(),
                self.labels[e.label].as_str(),
                self.vertices[e.target].as_str(),
            )
        })
    }

    /// Edge set as owned name triples, sorted like the serializer.
    pub fn triple_set(&self) -> Vec<(String, String, String)> {
        self.triples()
            .map(|(a, l, b)| (a.to_string(), l.to_string(), b.to_string()))
            .collect()
    }

    pub fn contains_triple(&self, s: &str, a: &str, t: &str) -> bool {
        match (self.vertex_id(s), self.label_id(a), self.vertex_id(t)) {
            (Some(s), Some(a), Some(t)) => self.has_edge(s, a, t),
            _ => false,
        }
    }

    /// Builds the subgraph of the given edges, or `None` when there are none.
    pub(crate) fn sub_edges<'a, I>(&self, edges: I) -> Option<Graph>
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let triples: Vec<(&str, &str, &str)> = edges
            .into_iter()
            .map(|e| {
                (
                    self.vertices[e.source].as_str(),
                    self.labels[e.label].as_str(),
                    self.vertices[e.target].as_str(),
                )
            })
            .collect();
        Graph::from_edges(triples).ok()
    }

    /// Union of the edge sets of two graphs.
    pub fn union(&self, other: &Graph) -> Graph {
        let triples: Vec<(&str, &str, &str)> = self.triples().chain(other.triples()).collect();
        Graph::from_edges(triples).expect("union of non-empty graphs is non-empty")
    }

    pub fn inverse(&self) -> Graph {
        let triples: Vec<(&str, &str, &str)> = self.triples().map(|(s, a, t)| (t, a, s)).collect();
        Graph::from_edges(triples).expect("inverse of a non-empty graph is non-empty")
    }

    /// Induced subgraph on the vertices in `keep`.
    pub fn vertex_restriction<S: AsRef<str>>(&self, keep: &[S]) -> Result<Graph, GraphError> {
        let keep: BTreeSet<usize> = keep
            .iter()
            .filter_map(|v| self.vertex_id(v.as_ref()))
            .collect();
        self.sub_edges(
            self.edges
                .iter()
                .filter(|e| keep.contains(&e.source) && keep.contains(&e.target)),
        )
        .ok_or(GraphError::Empty)
    }

    /// Edges whose label lies in `keep`.
    pub fn label_restriction<S: AsRef<str>>(&self, keep: &[S]) -> Result<Graph, GraphError> {
        let keep: BTreeSet<usize> = keep
            .iter()
            .filter_map(|a| self.label_id(a.as_ref()))
            .collect();
        self.sub_edges(self.edges.iter().filter(|e| keep.contains(&e.label)))
            .ok_or(GraphError::Empty)
    }

    pub fn transform(&self, spec: &Transform) -> Result<Graph, GraphError> {
        match spec {
            Transform::Inverse => Ok(self.inverse()),
            Transform::VertexRestriction(p) => self.vertex_restriction(p),
            Transform::LabelRestriction(p) => self.label_restriction(p),
        }
    }

    /// Vertices reachable from `v` (reflexive), as a membership mask.
    pub fn reachable_mask(&self, v: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        seen[v] = true;
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for &(_, t) in &self.out[x] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// The greatest subgraph accessible from `r`, marked by `r`.
    ///
    /// For a sink the edge set is empty.
    pub fn accessible_subgraph(&self, r: &str) -> Result<MarkedSubgraph, GraphError> {
        let v = self.require_vertex(r)?;
        Ok(self.accessible_from(v))
    }

    pub(crate) fn accessible_from(&self, v: usize) -> MarkedSubgraph {
        let seen = self.reachable_mask(v);
        let graph = self.sub_edges(self.edges.iter().filter(|e| seen[e.source]));
        MarkedSubgraph {
            graph,
            marks: vec![self.vertices[v].clone()],
        }
    }

    /// Connected components of `G ∪ G⁻¹`, each represented by its
    /// length-lexicographically least vertex.
    pub fn components(&self) -> ComponentPartition {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut reps = Vec::new();
        // Vertex indices are in llex order, so the first vertex met in index
        // order is the least of its component.
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(start);
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let nbrs = self.out[x].iter().chain(self.inc[x].iter());
                for &(_, y) in nbrs {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
        }
        let mut buckets: Vec<Vec<Edge>> = vec![Vec::new(); reps.len()];
        for e in &self.edges {
            buckets[comp[e.source]].push(*e);
        }
        let components = buckets
            .iter()
            .map(|b| self.sub_edges(b).expect("a component has an edge"))
            .collect();
        ComponentPartition {
            components,
            representatives: reps.iter().map(|&r| self.vertices[r].clone()).collect(),
            vertex_component: comp,
            vertex_names: self.vertices.clone(),
        }
    }

    /// A shortest label word from `s` to `t` (lexicographically least among
    /// shortest ones). With `chains`, edges may be walked backwards under
    /// their barred labels.
    pub fn find_path_label(
        &self,
        s: &str,
        t: &str,
        chains: bool,
    ) -> Result<Option<Vec<String>>, GraphError> {
        let s = self.require_vertex(s)?;
        let t = self.require_vertex(t)?;
        Ok(self.shortest_word(s, t, chains))
    }

    pub(crate) fn shortest_word(&self, s: usize, t: usize, chains: bool) -> Option<Vec<String>> {
        let tree = self.bfs_tree(s, chains);
        let mut word = Vec::new();
        let mut x = t;
        tree[x].as_ref()?;
        while x != s {
            let (prev, label) = tree[x].clone().expect("reached vertex has a parent");
            word.push(label);
            x = prev;
        }
        word.reverse();
        Some(word)
    }

    /// Breadth-first search tree from `s`: `tree[x] = (parent, label)`; the
    /// root points to itself with an empty label.
    pub(crate) fn bfs_tree(&self, s: usize, chains: bool) -> Vec<Option<(usize, String)>> {
        let n = self.vertex_count();
        let mut tree: Vec<Option<(usize, String)>> = vec![None; n];
        tree[s] = Some((s, String::new()));
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for (label, y) in self.moves(x, chains) {
                if tree[y].is_none() {
                    tree[y] = Some((x, label));
                    queue.push_back(y);
                }
            }
        }
        tree
    }

    /// Single steps out of `x`, ordered by label.
    fn moves(&self, x: usize, chains: bool) -> Vec<(String, usize)> {
        let mut moves: Vec<(String, usize)> = self.out[x]
            .iter()
            .map(|&(a, t)| (self.labels[a].clone(), t))
            .collect();
        if chains {
            moves.extend(self.inc[x].iter().map(|&(a, s)| (bar(&self.labels[a]), s)));
        }
        moves.sort_by(|(a, x), (b, y)| llex_cmp(a, b).then(x.cmp(y)));
        moves
    }

    /// Follows `word` from `start`, taking the unique successor at each step.
    /// Barred labels walk edges backwards. Returns `None` on a dead end or
    /// when a step is not unique.
    pub fn replay(&self, start: usize, word: &[String]) -> Option<usize> {
        let mut x = start;
        for letter in word {
            x = if let Some(plain) = letter.strip_prefix(BAR_PREFIX) {
                match self.label_id(letter) {
                    Some(a) => self.successor(x, a)?,
                    None => {
                        let a = self.label_id(plain)?;
                        let mut it = self.predecessors(x, a);
                        let p = it.next()?;
                        if it.next().is_some() {
                            return None;
                        }
                        p
                    }
                }
            } else {
                self.successor(x, self.label_id(letter)?)?
            };
        }
        Some(x)
    }

    /// `G ∪ { t -~a-> s | s -a-> t }`.
    pub fn with_reversed_edges(&self) -> Graph {
        let mut triples: Vec<(String, String, String)> = self.triple_set();
        for (s, a, t) in self.triples() {
            triples.push((t.to_string(), bar(a), s.to_string()));
        }
        Graph::from_edges(triples).expect("non-empty")
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Graph) -> bool {
        self.vertices == other.vertices && self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.triples().map(|(s, a, t)| format!("{s} -{a}-> {t}")))
            .finish()
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let triples: Vec<[&str; 3]> = self.triples().map(|(s, a, t)| [s, a, t]).collect();
        triples.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let triples: Vec<[String; 3]> = Vec::deserialize(deserializer)?;
        Graph::from_edges(triples.iter().map(|[s, a, t]| (s, a, t)))
            .map_err(serde::de::Error::custom)
    }
}

/// Graph transformations closed over edge sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transform {
    Inverse,
    VertexRestriction(Vec<String>),
    LabelRestriction(Vec<String>),
}

/// A possibly empty edge set together with a non-empty set of marked vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedSubgraph {
    /// `None` when the edge set is empty.
    pub graph: Option<Graph>,
    /// Marked vertices, length-lexicographically sorted.
    pub marks: Vec<String>,
}

impl MarkedSubgraph {
    pub fn new(graph: Option<Graph>, marks: Vec<String>) -> MarkedSubgraph {
        MarkedSubgraph {
            graph,
            marks: llex_sorted(marks),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.graph.as_ref().map_or(0, Graph::edge_count)
    }

    /// Vertices of the edge set together with the marks.
    pub fn vertex_set(&self) -> Vec<String> {
        let mut all: Vec<String> = self.marks.clone();
        if let Some(g) = &self.graph {
            all.extend(g.vertices().iter().cloned());
        }
        llex_sorted(all)
    }
}

/// Connected components with one representative vertex each.
#[derive(Debug, Clone)]
pub struct ComponentPartition {
    /// Components ordered by representative.
    pub components: Vec<Graph>,
    /// The least vertex of each component.
    pub representatives: Vec<String>,
    vertex_component: Vec<usize>,
    vertex_names: Vec<String>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Index of the component holding vertex index `v` of the source graph.
    pub fn component_of(&self, v: usize) -> usize {
        self.vertex_component[v]
    }

    /// The canonical mapping to representatives.
    pub fn representative_of(&self, v: &str) -> Option<&str> {
        let i = self.vertex_names.iter().position(|x| x == v)?;
        Some(&self.representatives[self.vertex_component[i]])
    }
}
