//! Finite balls of suffix graphs of labeled word rewriting systems.
//!
//! A rule `u -a-> v` applies below any common prefix: `wu -a-> wv` for every
//! word `w`. Words are strings of characters; the empty word is written `_`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::graph::{Graph, MarkedSubgraph};

/// Spelling of the empty word in files and vertex names.
pub const EMPTY_WORD: &str = "_";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("rewriting system has no rules")]
    Empty,
    #[error("line {line}: expected 3 tab-separated fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("invalid word {0:?}")]
    InvalidWord(String),
    #[error("invalid label {0:?}")]
    InvalidLabel(String),
    #[error("ball exceeds the cap of {0} vertices")]
    CapExceeded(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rule {
    pub lhs: String,
    pub label: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewritingSystem {
    alphabet: BTreeSet<char>,
    rules: Vec<Rule>,
}

/// Decodes `_` to the empty word and checks the characters of a word.
pub fn parse_word(text: &str) -> Result<String, RewriteError> {
    if text == EMPTY_WORD {
        return Ok(String::new());
    }
    if text.is_empty()
        || text.chars().any(|c| c == '_' || c.is_whitespace())
        || text.starts_with('#')
    {
        return Err(RewriteError::InvalidWord(text.to_string()));
    }
    Ok(text.to_string())
}

/// Vertex name of a word.
pub fn word_name(w: &str) -> &str {
    if w.is_empty() {
        EMPTY_WORD
    } else {
        w
    }
}

impl RewritingSystem {
    pub fn new(rules: Vec<Rule>) -> Result<RewritingSystem, RewriteError> {
        if rules.is_empty() {
            return Err(RewriteError::Empty);
        }
        for r in &rules {
            if r.label.is_empty()
                || r.label.contains(['\t', '\n', '\r'])
                || r.label.starts_with('#')
            {
                return Err(RewriteError::InvalidLabel(r.label.clone()));
            }
            for w in [&r.lhs, &r.rhs] {
                if w.contains('_') || w.chars().any(char::is_whitespace) || w.starts_with('#') {
                    return Err(RewriteError::InvalidWord(w.clone()));
                }
            }
        }
        let mut rules = rules;
        rules.sort();
        rules.dedup();
        let alphabet = rules
            .iter()
            .flat_map(|r| r.lhs.chars().chain(r.rhs.chars()))
            .collect();
        Ok(RewritingSystem { alphabet, rules })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn alphabet(&self) -> &BTreeSet<char> {
        &self.alphabet
    }

    /// Edges `x -a-> y` of the suffix graph leaving `x`.
    pub fn out_edges(&self, x: &str) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .rules
            .iter()
            .filter_map(|r| {
                x.strip_suffix(r.lhs.as_str())
                    .map(|w| (r.label.clone(), format!("{w}{}", r.rhs)))
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Edges `y -a-> x` of the suffix graph entering `x`, as `(label, y)`.
    pub fn in_edges(&self, x: &str) -> Vec<(String, String)> {
        let mut inc: Vec<(String, String)> = self
            .rules
            .iter()
            .filter_map(|r| {
                x.strip_suffix(r.rhs.as_str())
                    .map(|w| (r.label.clone(), format!("{w}{}", r.lhs)))
            })
            .collect();
        inc.sort();
        inc.dedup();
        inc
    }
}

/// Parses `lhs TAB label TAB rhs` lines; `#` starts a comment line.
pub fn parse_rws(text: &str) -> Result<RewritingSystem, RewriteError> {
    let mut rules = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 3 {
            return Err(RewriteError::FieldCount {
                line: i + 1,
                found: f.len(),
            });
        }
        rules.push(Rule {
            lhs: parse_word(f[0])?,
            label: f[1].to_string(),
            rhs: parse_word(f[2])?,
        });
    }
    RewritingSystem::new(rules)
}

/// The part of the suffix graph within chain distance `radius` of `start`.
///
/// The edge set holds every suffix-graph edge between discovered vertices.
/// The marks are the vertices at distance exactly `radius`, where the ball
/// is cut off.
pub fn suffix_ball(
    r: &RewritingSystem,
    start: &str,
    radius: usize,
    cap: usize,
) -> Result<MarkedSubgraph, RewriteError> {
    let mut dist: HashMap<String, usize> = HashMap::from([(start.to_string(), 0)]);
    let mut queue = VecDeque::from([start.to_string()]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == radius {
            continue;
        }
        let next = r
            .out_edges(&x)
            .into_iter()
            .chain(r.in_edges(&x))
            .map(|(_, y)| y);
        for y in next {
            if !dist.contains_key(&y) {
                if dist.len() >= cap {
                    return Err(RewriteError::CapExceeded(cap));
                }
                dist.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    let mut triples = Vec::new();
    for x in dist.keys() {
        for (a, y) in r.out_edges(x) {
            if dist.contains_key(&y) {
                triples.push((word_name(x).to_string(), a, word_name(&y).to_string()));
            }
        }
    }
    let graph = if triples.is_empty() {
        None
    } else {
        Some(Graph::from_edges(triples).expect("suffix words are valid tokens"))
    };
    let marks = dist
        .iter()
        .filter(|(_, &d)| d == radius)
        .map(|(w, _)| word_name(w).to_string())
        .collect();
    Ok(MarkedSubgraph::new(graph, marks))
}
