//! Edge colorings of finite binary relations.
//!
//! [`edge_color`] inserts pairs one at a time and repairs conflicts by
//! swapping two colors along an alternating chain, so that every relation is
//! colored with exactly `Δ_R` colors, `Δ_R` being the largest in- or
//! out-degree.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{llex_sorted, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("pair ({0}, {1}) is outside the carrier")]
    OutsideCarrier(String, String),
    #[error("relation is not regular: {element} has out-degree {out} and in-degree {inc}, expected {delta}")]
    NotRegular {
        element: String,
        out: usize,
        inc: usize,
        delta: usize,
    },
    #[error("colored relation is not {0}")]
    Incomplete(&'static str),
}

/// A finite binary relation over an explicit carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    carrier: Vec<String>,
    index: HashMap<String, usize>,
    pairs: Vec<(usize, usize)>,
}

impl Relation {
    /// Carrier elements are sorted length-lexicographically; every pair must
    /// lie in `carrier × carrier`.
    pub fn new<C, P, S>(carrier: C, pairs: P) -> Result<Relation, ColoringError>
    where
        C: IntoIterator<Item = S>,
        P: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let carrier = llex_sorted(carrier);
        let index: HashMap<String, usize> = carrier
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        let mut idx = Vec::new();
        for (s, t) in pairs {
            let (s, t): (String, String) = (s.into(), t.into());
            match (index.get(&s), index.get(&t)) {
                (Some(&i), Some(&j)) => idx.push((i, j)),
                _ => return Err(ColoringError::OutsideCarrier(s, t)),
            }
        }
        Ok(Relation::from_indices(carrier, index, idx))
    }

    fn from_indices(
        carrier: Vec<String>,
        index: HashMap<String, usize>,
        mut pairs: Vec<(usize, usize)>,
    ) -> Relation {
        pairs.sort_unstable();
        pairs.dedup();
        Relation {
            carrier,
            index,
            pairs,
        }
    }

    /// The unlabeled edge relation `→_G` over `V_G`.
    pub fn of_graph(g: &Graph) -> Relation {
        let pairs = g.edges().iter().map(|e| (e.source, e.target)).collect();
        Relation::from_indices(g.vertices().to_vec(), index_of(g.vertices()), pairs)
    }

    /// `carrier × carrier` minus this relation.
    pub fn complement(&self) -> Relation {
        let n = self.carrier.len();
        let mut present = vec![false; n * n];
        for &(s, t) in &self.pairs {
            present[s * n + t] = true;
        }
        let pairs = (0..n * n)
            .filter(|&k| !present[k])
            .map(|k| (k / n, k % n))
            .collect();
        Relation::from_indices(self.carrier.clone(), self.index.clone(), pairs)
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    /// Pairs as carrier indices, sorted.
    pub fn index_pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.pairs
            .iter()
            .map(move |&(s, t)| (self.carrier[s].as_str(), self.carrier[t].as_str()))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, s: &str, t: &str) -> bool {
        match (self.index.get(s), self.index.get(t)) {
            (Some(&i), Some(&j)) => self.pairs.binary_search(&(i, j)).is_ok(),
            _ => false,
        }
    }

    /// `(out-degree, in-degree)` of every carrier element.
    pub fn degrees(&self) -> Vec<(usize, usize)> {
        let mut d = vec![(0, 0); self.carrier.len()];
        for &(s, t) in &self.pairs {
            d[s].0 += 1;
            d[t].1 += 1;
        }
        d
    }

    /// `Δ_R`: the largest in- or out-degree.
    pub fn max_degree(&self) -> usize {
        self.degrees()
            .iter()
            .map(|&(o, i)| o.max(i))
            .max()
            .unwrap_or(0)
    }

    pub fn is_out_regular(&self) -> bool {
        let d = self.degrees();
        d.windows(2).all(|w| w[0].0 == w[1].0)
    }

    pub fn is_regular(&self) -> bool {
        self.irregular_element().is_none()
    }

    fn irregular_element(&self) -> Option<ColoringError> {
        let delta = self.max_degree();
        self.degrees()
            .iter()
            .enumerate()
            .find(|(_, &(o, i))| o != delta || i != delta)
            .map(|(k, &(out, inc))| ColoringError::NotRegular {
                element: self.carrier[k].clone(),
                out,
                inc,
                delta,
            })
    }
}

fn index_of(items: &[String]) -> HashMap<String, usize> {
    items
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect()
}

/// Colors of a relation's pairs, numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    relation: Relation,
    colors: Vec<usize>,
    palette: Vec<String>,
}

impl EdgeColoring {
    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    /// Color names, in numeric order.
    pub fn palette(&self) -> &[String] {
        &self.palette
    }

    pub fn color_of(&self, s: &str, t: &str) -> Option<&str> {
        let i = *self.relation.index.get(s)?;
        let j = *self.relation.index.get(t)?;
        let k = self.relation.pairs.binary_search(&(i, j)).ok()?;
        Some(&self.palette[self.colors[k] - 1])
    }

    /// `(source, color, target)` triples, sorted by pair.
    pub fn triples(&self) -> impl Iterator<Item = (&str, &str, &str)> + '_ {
        self.relation
            .pairs()
            .zip(&self.colors)
            .map(move |((s, t), &c)| (s, self.palette[c - 1].as_str(), t))
    }

    /// The colored relation `R^c`, or `None` for an empty relation.
    pub fn to_graph(&self) -> Option<Graph> {
        let triples: Vec<_> = self.triples().collect();
        Graph::from_edges(triples).ok()
    }

    /// True when no element has two pairs of one color leaving or entering it.
    pub fn is_proper(&self) -> bool {
        let n = self.relation.carrier.len();
        let k = self.palette.len();
        let mut out = vec![false; n * (k + 1)];
        let mut inc = vec![false; n * (k + 1)];
        for (&(s, t), &c) in self.relation.pairs.iter().zip(&self.colors) {
            if out[s * (k + 1) + c] || inc[t * (k + 1) + c] {
                return false;
            }
            out[s * (k + 1) + c] = true;
            inc[t * (k + 1) + c] = true;
        }
        true
    }

    /// Every carrier element has every color both leaving and entering it.
    pub fn is_complete(&self) -> (bool, bool) {
        let n = self.relation.carrier.len();
        let k = self.palette.len();
        let mut out = vec![0usize; n];
        let mut inc = vec![0usize; n];
        for &(s, t) in &self.relation.pairs {
            out[s] += 1;
            inc[t] += 1;
        }
        // With a proper coloring, k pairs at an element means k distinct colors.
        let proper = self.is_proper();
        (
            proper && out.iter().all(|&d| d == k),
            proper && inc.iter().all(|&d| d == k),
        )
    }
}

/// Colors `r` with exactly `Δ_R` colors named `{prefix}1` .. `{prefix}Δ_R`.
///
/// Pairs are inserted in (source, target) order. When no color is free at
/// both ends of a pair `(s, t)`, take the least color `a` used out of `s`
/// but not into `t` and the least `b` used into `t` but not out of `s`,
/// exchange `a` and `b` along the maximal chain `s -a-> · <-b- · -a-> …`,
/// then give `(s, t)` the color `a`.
pub fn edge_color(r: &Relation, prefix: &str) -> EdgeColoring {
    let n = r.carrier.len();
    let k = r.max_degree();
    let width = k + 1;
    // out_at[s*width + c] = position of the pair leaving s with color c.
    let mut out_at: Vec<Option<usize>> = vec![None; n * width];
    let mut in_at: Vec<Option<usize>> = vec![None; n * width];
    let mut colors = vec![0usize; r.pairs.len()];

    for (p, &(s, t)) in r.pairs.iter().enumerate() {
        let free =
            (1..=k).find(|&c| out_at[s * width + c].is_none() && in_at[t * width + c].is_none());
        let c = match free {
            Some(c) => c,
            None => {
                let a = (1..=k)
                    .find(|&c| in_at[t * width + c].is_none())
                    .expect("t has a missing color since its degree is not yet reached");
                let b = (1..=k)
                    .find(|&c| out_at[s * width + c].is_none())
                    .expect("s has a missing color since its degree is not yet reached");
                debug_assert!(out_at[s * width + a].is_some() && in_at[t * width + b].is_some());
                swap_chain(
                    &r.pairs,
                    &mut colors,
                    &mut out_at,
                    &mut in_at,
                    width,
                    s,
                    a,
                    b,
                    n,
                );
                a
            }
        };
        colors[p] = c;
        out_at[s * width + c] = Some(p);
        in_at[t * width + c] = Some(p);
    }

    EdgeColoring {
        relation: r.clone(),
        colors,
        palette: (1..=k).map(|c| format!("{prefix}{c}")).collect(),
    }
}

#[allow(clippy::too_many_arguments)]
fn swap_chain(
    pairs: &[(usize, usize)],
    colors: &mut [usize],
    out_at: &mut [Option<usize>],
    in_at: &mut [Option<usize>],
    width: usize,
    s: usize,
    a: usize,
    b: usize,
    n: usize,
) {
    // Collect the chain first: s -a-> t1 <-b- s2 -a-> t2 <-b- ...
    let mut chain = Vec::new();
    let mut seen_source = vec![false; n];
    let mut seen_target = vec![false; n];
    let mut x = s;
    seen_source[x] = true;
    while let Some(p) = out_at[x * width + a] {
        let y = pairs[p].1;
        assert!(!seen_target[y], "alternating chain revisits a target");
        seen_target[y] = true;
        chain.push(p);
        let Some(q) = in_at[y * width + b] else { break };
        let z = pairs[q].0;
        assert!(!seen_source[z], "alternating chain revisits a source");
        seen_source[z] = true;
        chain.push(q);
        x = z;
    }
    for &p in &chain {
        let (u, v) = pairs[p];
        out_at[u * width + colors[p]] = None;
        in_at[v * width + colors[p]] = None;
    }
    for &p in &chain {
        let (u, v) = pairs[p];
        colors[p] = if colors[p] == a { b } else { a };
        out_at[u * width + colors[p]] = Some(p);
        in_at[v * width + colors[p]] = Some(p);
    }
}

/// Colors a regular relation so that every element has each color once
/// leaving it and once entering it.
pub fn complete_edge_color(r: &Relation, prefix: &str) -> Result<EdgeColoring, ColoringError> {
    if let Some(e) = r.irregular_element() {
        return Err(e);
    }
    let coloring = edge_color(r, prefix);
    let (source_complete, target_complete) = coloring.is_complete();
    if !source_complete {
        return Err(ColoringError::Incomplete("source-complete"));
    }
    if !target_complete {
        return Err(ColoringError::Incomplete("target-complete"));
    }
    Ok(coloring)
}
