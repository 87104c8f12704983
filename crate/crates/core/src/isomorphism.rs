//! Mark-respecting isomorphism search and the two symmetry predicates.
//!
//! Both sides are refined together by iterated neighborhood signatures
//! (direction, label, neighbor class) so that class counts can be compared
//! before any search. The backtracking search then extends a partial map
//! along edges, only trying images of the right class.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, MarkedSubgraph};

#[derive(Debug, Clone, Copy)]
pub struct IsoOptions {
    /// Maximum number of candidate extensions tried by a single search.
    pub budget: u64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions { budget: 1_000_000 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("isomorphism search undecided: budget of {0} node expansions exhausted")]
    BudgetExceeded(u64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A vertex bijection together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexBijection {
    pub forward: BTreeMap<String, String>,
    pub inverse: BTreeMap<String, String>,
}

impl VertexBijection {
    fn new(pairs: impl IntoIterator<Item = (String, String)>) -> VertexBijection {
        let forward: BTreeMap<String, String> = pairs.into_iter().collect();
        let inverse = forward
            .iter()
            .map(|(a, b)| (b.clone(), a.clone()))
            .collect();
        VertexBijection { forward, inverse }
    }

    pub fn apply(&self, v: &str) -> Option<&str> {
        self.forward.get(v).map(String::as_str)
    }

    pub fn inverted(&self) -> VertexBijection {
        VertexBijection {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }
}

/// One side of a search: a graph with shared label ids and a mark mask.
struct Side {
    names: Vec<String>,
    out: Vec<Vec<(usize, usize)>>,
    inc: Vec<Vec<(usize, usize)>>,
    marked: Vec<bool>,
    edges: usize,
}

impl Side {
    fn build(m: &MarkedSubgraph, labels: &mut HashMap<String, usize>) -> Side {
        let names = m.vertex_set();
        let ids: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let n = names.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let mut edges = 0;
        if let Some(g) = &m.graph {
            for (s, a, t) in g.triples() {
                let next = labels.len();
                let a = *labels.entry(a.to_string()).or_insert(next);
                let (s, t) = (ids[s], ids[t]);
                out[s].push((a, t));
                inc[t].push((a, s));
                edges += 1;
            }
        }
        for l in out.iter_mut().chain(inc.iter_mut()) {
            l.sort_unstable();
        }
        let mut marked = vec![false; n];
        for v in &m.marks {
            if let Some(&i) = ids.get(v.as_str()) {
                marked[i] = true;
            }
        }
        Side {
            names,
            out,
            inc,
            marked,
            edges,
        }
    }

    fn len(&self) -> usize {
        self.names.len()
    }

    fn has_edge(&self, s: usize, a: usize, t: usize) -> bool {
        self.out[s].binary_search(&(a, t)).is_ok()
    }

    fn label_counts(&self) -> BTreeMap<usize, usize> {
        let mut c = BTreeMap::new();
        for l in &self.out {
            for &(a, _) in l {
                *c.entry(a).or_insert(0) += 1;
            }
        }
        c
    }
}

/// Stable coloring of both sides, with class ids shared between them.
fn refine(a: &Side, b: &Side) -> (Vec<usize>, Vec<usize>) {
    type Sig = (usize, Vec<(u8, usize, usize)>);
    let initial = |s: &Side, v: usize| -> Sig {
        (
            0,
            vec![(u8::from(s.marked[v]), s.out[v].len(), s.inc[v].len())],
        )
    };
    let mut ca: Vec<usize>;
    let mut cb: Vec<usize>;
    {
        let sa: Vec<Sig> = (0..a.len()).map(|v| initial(a, v)).collect();
        let sb: Vec<Sig> = (0..b.len()).map(|v| initial(b, v)).collect();
        (ca, cb) = intern(&sa, &sb);
    }
    let mut classes = count_classes(&ca, &cb);
    loop {
        let sig = |s: &Side, c: &[usize], v: usize| -> Sig {
            let mut n: Vec<(u8, usize, usize)> = s.out[v]
                .iter()
                .map(|&(l, t)| (0u8, l, c[t]))
                .chain(s.inc[v].iter().map(|&(l, t)| (1u8, l, c[t])))
                .collect();
            n.sort_unstable();
            (c[v], n)
        };
        let sa: Vec<Sig> = (0..a.len()).map(|v| sig(a, &ca, v)).collect();
        let sb: Vec<Sig> = (0..b.len()).map(|v| sig(b, &cb, v)).collect();
        let (na, nb) = intern(&sa, &sb);
        let k = count_classes(&na, &nb);
        ca = na;
        cb = nb;
        if k == classes {
            return (ca, cb);
        }
        classes = k;
    }
}

fn intern<T: Ord + Clone>(sa: &[T], sb: &[T]) -> (Vec<usize>, Vec<usize>) {
    let mut ids: BTreeMap<T, usize> = BTreeMap::new();
    for s in sa.iter().chain(sb) {
        ids.entry(s.clone()).or_insert(0);
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    (
        sa.iter().map(|s| ids[s]).collect(),
        sb.iter().map(|s| ids[s]).collect(),
    )
}

fn count_classes(a: &[usize], b: &[usize]) -> usize {
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn histogram(c: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

struct Search<'a> {
    a: &'a Side,
    b: &'a Side,
    ca: Vec<usize>,
    cb: Vec<usize>,
    order: Vec<usize>,
    /// For each position in `order`, an earlier neighbor and how to reach it.
    anchor: Vec<Option<Anchor>>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    inv: Vec<Option<usize>>,
    budget: u64,
    spent: u64,
}

#[derive(Clone, Copy)]
enum Anchor {
    /// `y -label-> x` with `y` placed earlier.
    From(usize, usize),
    /// `x -label-> y` with `y` placed earlier.
    To(usize, usize),
}

impl<'a> Search<'a> {
    fn new(a: &'a Side, b: &'a Side, ca: Vec<usize>, cb: Vec<usize>, budget: u64) -> Search<'a> {
        let n = a.len();
        let freq = histogram(&ca);
        // Undirected BFS order; each component starts at a vertex of its
        // rarest class (marks first), then least index.
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut anchor = Vec::with_capacity(n);
        let mut starts: Vec<usize> = (0..n).collect();
        starts.sort_by_key(|&v| (!a.marked[v], freq[&ca[v]], v));
        for &start in &starts {
            if placed[start] {
                continue;
            }
            placed[start] = true;
            order.push(start);
            anchor.push(None);
            let mut head = order.len() - 1;
            while head < order.len() {
                let y = order[head];
                head += 1;
                for &(l, x) in &a.out[y] {
                    if !placed[x] {
                        placed[x] = true;
                        order.push(x);
                        anchor.push(Some(Anchor::From(y, l)));
                    }
                }
                for &(l, x) in &a.inc[y] {
                    if !placed[x] {
                        placed[x] = true;
                        order.push(x);
                        anchor.push(Some(Anchor::To(y, l)));
                    }
                }
            }
        }
        Search {
            a,
            b,
            ca,
            cb,
            order,
            anchor,
            map: vec![None; n],
            used: vec![false; b.len()],
            inv: vec![None; b.len()],
            budget,
            spent: 0,
        }
    }

    fn candidates(&self, depth: usize) -> Vec<usize> {
        let x = self.order[depth];
        let want = self.ca[x];
        let raw: Vec<usize> = match self.anchor[depth] {
            Some(Anchor::From(y, l)) => {
                let hy = self.map[y].expect("anchor is mapped");
                self.b.out[hy]
                    .iter()
                    .filter(|&&(m, _)| m == l)
                    .map(|&(_, t)| t)
                    .collect()
            }
            Some(Anchor::To(y, l)) => {
                let hy = self.map[y].expect("anchor is mapped");
                self.b.inc[hy]
                    .iter()
                    .filter(|&&(m, _)| m == l)
                    .map(|&(_, s)| s)
                    .collect()
            }
            None => (0..self.b.len()).collect(),
        };
        let mut c: Vec<usize> = raw
            .into_iter()
            .filter(|&v| !self.used[v] && self.cb[v] == want)
            .collect();
        c.dedup();
        c
    }

    /// Edges between `x` and mapped vertices (and loops at `x`) correspond
    /// exactly to edges between `c` and their images.
    fn consistent(&self, x: usize, c: usize) -> bool {
        let (a, b) = (self.a, self.b);
        let mut out_count = 0;
        for &(l, y) in &a.out[x] {
            let hy = if y == x { Some(c) } else { self.map[y] };
            if let Some(hy) = hy {
                if !b.has_edge(c, l, hy) {
                    return false;
                }
                out_count += 1;
            }
        }
        let mut in_count = 0;
        for &(l, y) in &a.inc[x] {
            if y == x {
                continue;
            }
            if let Some(hy) = self.map[y] {
                if !b.has_edge(hy, l, c) {
                    return false;
                }
                in_count += 1;
            }
        }
        let out_b = b.out[c]
            .iter()
            .filter(|&&(_, t)| t == c || self.inv[t].is_some())
            .count();
        let in_b = b.inc[c]
            .iter()
            .filter(|&&(_, s)| s != c && self.inv[s].is_some())
            .count();
        out_b == out_count && in_b == in_count
    }

    fn run(&mut self, depth: usize) -> Result<bool, IsoError> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let x = self.order[depth];
        for c in self.candidates(depth) {
            self.spent += 1;
            if self.spent > self.budget {
                return Err(IsoError::BudgetExceeded(self.budget));
            }
            if !self.consistent(x, c) {
                continue;
            }
            self.map[x] = Some(c);
            self.used[c] = true;
            self.inv[c] = Some(x);
            if self.run(depth + 1)? {
                return Ok(true);
            }
            self.map[x] = None;
            self.used[c] = false;
            self.inv[c] = None;
        }
        Ok(false)
    }
}

/// Searches for an isomorphism of edge sets that maps marks onto marks.
///
/// Two empty edge sets are isomorphic exactly when they carry the same
/// number of marks; an empty edge set is never isomorphic to a non-empty one.
pub fn marked_isomorphic(
    a: &MarkedSubgraph,
    b: &MarkedSubgraph,
    opts: &IsoOptions,
) -> Result<Option<VertexBijection>, IsoError> {
    let mut labels = HashMap::new();
    let sa = Side::build(a, &mut labels);
    let sb = Side::build(b, &mut labels);
    search(&sa, &sb, opts)
}

fn search(sa: &Side, sb: &Side, opts: &IsoOptions) -> Result<Option<VertexBijection>, IsoError> {
    if sa.len() != sb.len()
        || sa.edges != sb.edges
        || sa.marked.iter().filter(|&&m| m).count() != sb.marked.iter().filter(|&&m| m).count()
        || sa.label_counts() != sb.label_counts()
    {
        return Ok(None);
    }
    let (ca, cb) = refine(sa, sb);
    if histogram(&ca) != histogram(&cb) {
        return Ok(None);
    }
    let mut s = Search::new(sa, sb, ca, cb, opts.budget);
    if !s.run(0)? {
        return Ok(None);
    }
    Ok(Some(VertexBijection::new((0..sa.len()).map(|v| {
        (
            sa.names[v].clone(),
            sb.names[s.map[v].expect("complete map")].clone(),
        )
    }))))
}

fn marked(g: &Graph, v: &str) -> MarkedSubgraph {
    MarkedSubgraph::new(Some(g.clone()), vec![v.to_string()])
}

/// `s ≃_G t`: some automorphism of `g` maps `s` to `t`.
pub fn vertex_isomorphic(g: &Graph, s: &str, t: &str, opts: &IsoOptions) -> Result<bool, IsoError> {
    g.require_vertex(s)?;
    g.require_vertex(t)?;
    if s == t {
        return Ok(true);
    }
    Ok(marked_isomorphic(&marked(g, s), &marked(g, t), opts)?.is_some())
}

/// `s ↓_G t`: the cone accessible from `s` is isomorphic to the cone
/// accessible from `t` by a map sending `s` to `t`.
pub fn accessible_isomorphic(
    g: &Graph,
    s: &str,
    t: &str,
    opts: &IsoOptions,
) -> Result<bool, IsoError> {
    let cs = g.accessible_subgraph(s)?;
    let ct = g.accessible_subgraph(t)?;
    if s == t {
        return Ok(true);
    }
    Ok(marked_isomorphic(&cs, &ct, opts)?.is_some())
}

/// Cheap invariants of an accessible cone: vertex count, edge count and
/// label multiset.
fn cone_signature(g: &Graph, v: usize) -> (usize, usize, Vec<usize>) {
    let seen = g.reachable_mask(v);
    let mut labels = vec![0; g.label_count()];
    let mut edges = 0;
    for e in g.edges() {
        if seen[e.source] {
            labels[e.label] += 1;
            edges += 1;
        }
    }
    (seen.iter().filter(|&&x| x).count(), edges, labels)
}

/// All vertices are pairwise accessible-isomorphic.
///
/// With a root `r` it suffices that `r ↓ s` for each successor `s` of `r`.
/// Otherwise every vertex is compared with the first one, since `↓` is an
/// equivalence.
pub fn is_arc_symmetric(g: &Graph, opts: &IsoOptions) -> Result<bool, IsoError> {
    let n = g.vertex_count();
    let root = (0..n).find(|&v| g.reachable_mask(v).iter().all(|&x| x));
    if let Some(r) = root {
        let whole = marked(g, g.vertex_name(r));
        for s in g.successor_set(r) {
            if s == r {
                continue;
            }
            let cone = g.accessible_from(s);
            if marked_isomorphic(&whole, &cone, opts)?.is_none() {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let sig0 = cone_signature(g, 0);
    if (1..n).any(|v| cone_signature(g, v) != sig0) {
        return Ok(false);
    }
    let c0 = g.accessible_from(0);
    for v in 1..n {
        if marked_isomorphic(&c0, &g.accessible_from(v), opts)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All vertices are pairwise isomorphic (vertex-transitivity).
///
/// The components must all be isomorphic to the first one, and in the first
/// component its least vertex must be isomorphic to each of its neighbors.
pub fn is_symmetric(g: &Graph, opts: &IsoOptions) -> Result<bool, IsoError> {
    let local = |v: usize| {
        let mut out: Vec<usize> = g.out_edges(v).iter().map(|&(a, _)| a).collect();
        let mut inc: Vec<usize> = g.in_edges(v).iter().map(|&(a, _)| a).collect();
        out.sort_unstable();
        inc.sort_unstable();
        (out, inc)
    };
    let l0 = local(0);
    if (1..g.vertex_count()).any(|v| local(v) != l0) {
        return Ok(false);
    }
    let comps = g.components();
    let first = &comps.components[0];
    let mut labels = HashMap::new();
    let unmarked = |c: &Graph| MarkedSubgraph {
        graph: Some(c.clone()),
        marks: Vec::new(),
    };
    let s0 = Side::build(&unmarked(first), &mut labels);
    for c in &comps.components[1..] {
        let sc = Side::build(&unmarked(c), &mut labels);
        if search(&s0, &sc, opts)?.is_none() {
            return Ok(false);
        }
    }
    let r = first
        .vertex_id(&comps.representatives[0])
        .expect("representative in component");
    let rname = first.vertex_name(r);
    let mut neighbors: Vec<usize> = first
        .successor_set(r)
        .into_iter()
        .chain(first.predecessor_set(r))
        .filter(|&s| s != r)
        .collect();
    neighbors.sort_unstable();
    neighbors.dedup();
    for s in neighbors {
        if !vertex_isomorphic(first, rname, first.vertex_name(s), opts)? {
            return Ok(false);
        }
    }
    Ok(true)
}
