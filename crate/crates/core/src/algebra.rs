//! Finite magmas given by their full multiplication table.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("table has no carrier line")]
    EmptyTable,
    #[error("duplicate carrier element {0:?}")]
    DuplicateElement(String),
    #[error("invalid element token {0:?}")]
    InvalidToken(String),
    #[error("line {line}: unknown element {token:?}")]
    UnknownCell { line: usize, token: String },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("line {line}: expected {expected} entries, found {found}")]
    RowLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("labeling is empty")]
    EmptyLabeling,
    #[error("labeling is not injective: label {0:?} is used twice")]
    NonInjectiveLabeling(String),
    #[error("not associative: {0}")]
    NotAssociative(String),
    #[error("no identity element")]
    NoIdentity,
    #[error("not a group")]
    NotGroup,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn check_element(token: &str) -> Result<(), AlgebraError> {
    if token.is_empty() || token.chars().any(char::is_whitespace) || token.starts_with('#') {
        return Err(AlgebraError::InvalidToken(token.to_string()));
    }
    Ok(())
}

/// A finite carrier with a total binary operation.
#[derive(Clone, PartialEq, Eq)]
pub struct MagmaTable {
    carrier: Vec<String>,
    index: HashMap<String, usize>,
    product: Vec<usize>,
}

impl MagmaTable {
    /// Builds a table from the carrier and one row of products per element.
    pub fn new<S: AsRef<str>>(carrier: &[S], rows: &[Vec<S>]) -> Result<MagmaTable, AlgebraError> {
        let carrier: Vec<String> = carrier.iter().map(|c| c.as_ref().to_string()).collect();
        let index = Self::index(&carrier)?;
        let n = carrier.len();
        if rows.len() != n {
            return Err(AlgebraError::RowCount {
                expected: n,
                found: rows.len(),
            });
        }
        let mut product = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::RowLength {
                    line: i + 2,
                    expected: n,
                    found: row.len(),
                });
            }
            for cell in row {
                match index.get(cell.as_ref()) {
                    Some(&k) => product.push(k),
                    None => {
                        return Err(AlgebraError::UnknownCell {
                            line: i + 2,
                            token: cell.as_ref().to_string(),
                        })
                    }
                }
            }
        }
        Ok(MagmaTable {
            carrier,
            index,
            product,
        })
    }

    /// Builds a table from a product given on carrier indices.
    pub fn from_fn<S, F>(carrier: &[S], f: F) -> Result<MagmaTable, AlgebraError>
    where
        S: AsRef<str>,
        F: Fn(usize, usize) -> usize,
    {
        let carrier: Vec<String> = carrier.iter().map(|c| c.as_ref().to_string()).collect();
        let index = Self::index(&carrier)?;
        let n = carrier.len();
        let mut product = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let k = f(i, j);
                assert!(k < n, "product index out of range");
                product.push(k);
            }
        }
        Ok(MagmaTable {
            carrier,
            index,
            product,
        })
    }

    fn index(carrier: &[String]) -> Result<HashMap<String, usize>, AlgebraError> {
        if carrier.is_empty() {
            return Err(AlgebraError::EmptyTable);
        }
        let mut index = HashMap::new();
        for (i, c) in carrier.iter().enumerate() {
            check_element(c)?;
            if index.insert(c.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateElement(c.clone()));
            }
        }
        Ok(index)
    }

    /// Table text: the carrier on the first line, then one row per element,
    /// entries separated by spaces, in carrier order.
    pub fn parse(text: &str) -> Result<MagmaTable, AlgebraError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, header) = lines.next().ok_or(AlgebraError::EmptyTable)?;
        let carrier: Vec<&str> = header.split_whitespace().collect();
        let index = Self::index(&carrier.iter().map(|s| s.to_string()).collect::<Vec<_>>())?;
        let n = carrier.len();
        let mut product = Vec::with_capacity(n * n);
        let mut rows = 0;
        for (line, l) in lines {
            rows += 1;
            if rows > n {
                continue;
            }
            let cells: Vec<&str> = l.split_whitespace().collect();
            if cells.len() != n {
                return Err(AlgebraError::RowLength {
                    line,
                    expected: n,
                    found: cells.len(),
                });
            }
            for c in cells {
                product.push(*index.get(c).ok_or_else(|| AlgebraError::UnknownCell {
                    line,
                    token: c.to_string(),
                })?);
            }
        }
        if rows != n {
            return Err(AlgebraError::RowCount {
                expected: n,
                found: rows,
            });
        }
        Ok(MagmaTable {
            carrier: carrier.iter().map(|s| s.to_string()).collect(),
            index,
            product,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = self.carrier.join(" ");
        s.push('\n');
        for i in 0..self.len() {
            let row: Vec<&str> = (0..self.len()).map(|j| self.name(self.mul(i, j))).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.carrier[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    fn require(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index_of(name)
            .ok_or_else(|| AlgebraError::UnknownElement(name.to_string()))
    }

    /// Product of carrier indices.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.product[i * self.carrier.len() + j]
    }

    /// Product of named elements.
    pub fn product(&self, p: &str, q: &str) -> Option<&str> {
        Some(self.name(self.mul(self.index_of(p)?, self.index_of(q)?)))
    }

    /// Overwrites one cell.
    pub fn set(&mut self, p: &str, q: &str, value: &str) -> Result<(), AlgebraError> {
        let (i, j, k) = (self.require(p)?, self.require(q)?, self.require(value)?);
        let n = self.len();
        self.product[i * n + j] = k;
        Ok(())
    }

    /// Same table with the carrier listed in another order.
    pub fn reordered<S: AsRef<str>>(&self, order: &[S]) -> Result<MagmaTable, AlgebraError> {
        let perm: Vec<usize> = order
            .iter()
            .map(|s| self.require(s.as_ref()))
            .collect::<Result<_, _>>()?;
        if perm.len() != self.len() || perm.iter().collect::<BTreeSet<_>>().len() != perm.len() {
            return Err(AlgebraError::RowCount {
                expected: self.len(),
                found: perm.len(),
            });
        }
        let mut pos = vec![0; self.len()];
        for (new, &old) in perm.iter().enumerate() {
            pos[old] = new;
        }
        MagmaTable::from_fn(order, |i, j| pos[self.mul(perm[i], perm[j])])
    }

    /// Cell-by-cell equality by element name, ignoring carrier order.
    pub fn same_operation(&self, other: &MagmaTable) -> bool {
        if self.len() != other.len() {
            return false;
        }
        self.carrier.iter().all(|p| {
            self.carrier
                .iter()
                .all(|q| other.index_of(p).is_some() && self.product(p, q) == other.product(p, q))
        })
    }
}

impl fmt::Debug for MagmaTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MagmaTable {{\n{}}}", self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    carrier: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Serialize for MagmaTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows = (0..self.len())
            .map(|i| {
                (0..self.len())
                    .map(|j| self.name(self.mul(i, j)).to_string())
                    .collect()
            })
            .collect();
        TableDoc {
            carrier: self.carrier.clone(),
            rows,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MagmaTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = TableDoc::deserialize(deserializer)?;
        MagmaTable::new(&doc.carrier, &doc.rows).map_err(serde::de::Error::custom)
    }
}

/// Parses the table text format.
pub fn parse_table(text: &str) -> Result<MagmaTable, AlgebraError> {
    MagmaTable::parse(text)
}

/// An injective map from some carrier elements to edge labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    map: BTreeMap<String, String>,
}

impl Labeling {
    pub fn new<I, S>(pairs: I) -> Result<Labeling, AlgebraError>
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let map: BTreeMap<String, String> = pairs
            .into_iter()
            .map(|(a, b)| (a.into(), b.into()))
            .collect();
        if map.is_empty() {
            return Err(AlgebraError::EmptyLabeling);
        }
        let mut seen = BTreeSet::new();
        for l in map.values() {
            if !seen.insert(l) {
                return Err(AlgebraError::NonInjectiveLabeling(l.clone()));
            }
        }
        Ok(Labeling { map })
    }

    /// Each element labels its own edges.
    pub fn identity<I, S>(domain: I) -> Result<Labeling, AlgebraError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Labeling::new(domain.into_iter().map(|q| {
            let q: String = q.into();
            (q.clone(), q)
        }))
    }

    pub fn domain(&self) -> impl Iterator<Item = &str> + '_ {
        self.map.keys().map(String::as_str)
    }

    pub fn label(&self, q: &str) -> Option<&str> {
        self.map.get(q).map(String::as_str)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.map.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// The element labeled `label`, if any.
    pub fn element_of(&self, label: &str) -> Option<&str> {
        self.map
            .iter()
            .find(|(_, l)| *l == label)
            .map(|(q, _)| q.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AlgebraReport {
    pub associative: bool,
    pub left_cancellative: bool,
    pub right_cancellative: bool,
    pub cancellative: bool,
    pub left_quasigroup: bool,
    pub quasigroup: bool,
    pub left_identities: Vec<String>,
    pub right_identities: Vec<String>,
    pub identity: Option<String>,
    /// Two-sided inverses with respect to the identity, where they exist.
    pub inverses: Option<BTreeMap<String, String>>,
    pub magma: bool,
    pub semigroup: bool,
    pub monoid: bool,
    pub group: bool,
    /// One counterexample per failed axiom, keyed by flag name.
    pub witnesses: BTreeMap<String, String>,
}

impl AlgebraReport {
    pub fn witness(&self, flag: &str) -> Option<&str> {
        self.witnesses.get(flag).map(String::as_str)
    }
}

/// Checks every axiom by exhaustion.
pub fn axiom_check(m: &MagmaTable) -> AlgebraReport {
    let n = m.len();
    let nm = |i: usize| m.name(i);
    let mut witnesses = BTreeMap::new();

    let mut associative = true;
    'assoc: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let l = m.mul(x, m.mul(y, z));
                let r = m.mul(m.mul(x, y), z);
                if l != r {
                    associative = false;
                    witnesses.insert(
                        "associative".into(),
                        format!(
                            "{x}·({y}·{z}) = {l} and ({x}·{y})·{z} = {r}",
                            x = nm(x),
                            y = nm(y),
                            z = nm(z),
                            l = nm(l),
                            r = nm(r)
                        ),
                    );
                    break 'assoc;
                }
            }
        }
    }

    let mut left_cancellative = true;
    'left: for r in 0..n {
        for p in 0..n {
            for q in p + 1..n {
                if m.mul(r, p) == m.mul(r, q) {
                    left_cancellative = false;
                    witnesses.insert(
                        "leftCancellative".into(),
                        format!("{r}·{p} = {r}·{q}", r = nm(r), p = nm(p), q = nm(q)),
                    );
                    break 'left;
                }
            }
        }
    }

    let mut right_cancellative = true;
    'right: for r in 0..n {
        for p in 0..n {
            for q in p + 1..n {
                if m.mul(p, r) == m.mul(q, r) {
                    right_cancellative = false;
                    witnesses.insert(
                        "rightCancellative".into(),
                        format!("{p}·{r} = {q}·{r}", r = nm(r), p = nm(p), q = nm(q)),
                    );
                    break 'right;
                }
            }
        }
    }

    // On a finite carrier an injective row is a permutation.
    let left_quasigroup = left_cancellative;
    let quasigroup = left_cancellative && right_cancellative;
    if !left_quasigroup {
        let w = witnesses["leftCancellative"].clone();
        witnesses.insert("leftQuasigroup".into(), w);
    }
    if !quasigroup {
        let w = witnesses
            .get("leftCancellative")
            .or_else(|| witnesses.get("rightCancellative"))
            .cloned()
            .expect("a cancellation witness");
        witnesses.insert("quasigroup".into(), w);
    }

    let left_ids: Vec<usize> = (0..n)
        .filter(|&e| (0..n).all(|x| m.mul(e, x) == x))
        .collect();
    let right_ids: Vec<usize> = (0..n)
        .filter(|&e| (0..n).all(|x| m.mul(x, e) == x))
        .collect();
    let identity = left_ids.iter().copied().find(|e| right_ids.contains(e));
    let inverses = identity.map(|e| {
        (0..n)
            .filter_map(|x| {
                (0..n)
                    .find(|&y| m.mul(x, y) == e && m.mul(y, x) == e)
                    .map(|y| (nm(x).to_string(), nm(y).to_string()))
            })
            .collect::<BTreeMap<_, _>>()
    });
    let monoid = associative && identity.is_some();
    let group = monoid && inverses.as_ref().is_some_and(|inv| inv.len() == n);
    if identity.is_none() {
        witnesses.insert("identity".into(), "no two-sided identity".into());
    } else if !group && associative {
        let inv = inverses.as_ref().expect("identity exists");
        let x = (0..n)
            .find(|&x| !inv.contains_key(nm(x)))
            .expect("an element without inverse");
        witnesses.insert("group".into(), format!("{} has no inverse", nm(x)));
    }

    let names = |v: &[usize]| v.iter().map(|&i| nm(i).to_string()).collect();
    AlgebraReport {
        associative,
        left_cancellative,
        right_cancellative,
        cancellative: left_cancellative && right_cancellative,
        left_quasigroup,
        quasigroup,
        left_identities: names(&left_ids),
        right_identities: names(&right_ids),
        identity: identity.map(|e| nm(e).to_string()),
        inverses,
        magma: true,
        semigroup: associative,
        monoid,
        group,
        witnesses,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureMode {
    /// `Q*`: includes the identity.
    Monoid,
    /// `Q⁺`: products of one or more generators.
    Semigroup,
    /// `(Q ∪ Q⁻¹)*` in a group.
    Group,
}

/// Least subset containing `q` and closed under the product, per `mode`.
/// Elements are returned in carrier order.
pub fn closure<S: AsRef<str>>(
    m: &MagmaTable,
    q: &[S],
    mode: ClosureMode,
) -> Result<Vec<String>, AlgebraError> {
    let gens: Vec<usize> = q
        .iter()
        .map(|s| m.require(s.as_ref()))
        .collect::<Result<_, _>>()?;
    let mut inside = vec![false; m.len()];
    let mut frontier = Vec::new();
    let add = |x: usize, inside: &mut Vec<bool>, frontier: &mut Vec<usize>| {
        if !inside[x] {
            inside[x] = true;
            frontier.push(x);
        }
    };
    match mode {
        ClosureMode::Semigroup => {
            for &g in &gens {
                add(g, &mut inside, &mut frontier);
            }
        }
        ClosureMode::Monoid => {
            let report = axiom_check(m);
            let e = report.identity.ok_or(AlgebraError::NoIdentity)?;
            add(m.require(&e)?, &mut inside, &mut frontier);
            for &g in &gens {
                add(g, &mut inside, &mut frontier);
            }
        }
        ClosureMode::Group => {
            let report = axiom_check(m);
            if !report.group {
                return Err(AlgebraError::NotGroup);
            }
            let inv = report.inverses.expect("groups have inverses");
            let e = report.identity.expect("groups have an identity");
            add(m.require(&e)?, &mut inside, &mut frontier);
            for &g in &gens {
                add(g, &mut inside, &mut frontier);
                add(m.require(&inv[m.name(g)])?, &mut inside, &mut frontier);
            }
        }
    }
    // Saturate: products of members with members.
    while let Some(x) = frontier.pop() {
        let members: Vec<usize> = (0..m.len()).filter(|&y| inside[y]).collect();
        for y in members {
            add(m.mul(x, y), &mut inside, &mut frontier);
            add(m.mul(y, x), &mut inside, &mut frontier);
        }
    }
    Ok((0..m.len())
        .filter(|&x| inside[x])
        .map(|x| m.name(x).to_string())
        .collect())
}

/// The generalized Cayley graph `{ p -⟦q⟧-> p·q : p ∈ M, q ∈ Q }`.
pub fn cayley_graph(m: &MagmaTable, lab: &Labeling) -> Result<Graph, AlgebraError> {
    if lab.is_empty() {
        return Err(AlgebraError::EmptyLabeling);
    }
    let mut triples = Vec::with_capacity(m.len() * lab.len());
    for (q, a) in lab.pairs() {
        let j = m.require(q)?;
        for i in 0..m.len() {
            triples.push((m.name(i), a, m.name(m.mul(i, j))));
        }
    }
    Ok(Graph::from_edges(triples)?)
}

/// Adds a fresh two-sided identity `1` (with apostrophes appended until
/// fresh) to a semigroup that has none; returns the table unchanged when an
/// identity already exists.
pub fn monoid_completion(m: &MagmaTable) -> Result<(MagmaTable, AlgebraReport), AlgebraError> {
    let report = axiom_check(m);
    if !report.associative {
        return Err(AlgebraError::NotAssociative(
            report
                .witness("associative")
                .unwrap_or_default()
                .to_string(),
        ));
    }
    if report.identity.is_some() {
        return Ok((m.clone(), report));
    }
    let mut one = String::from("1");
    while m.index_of(&one).is_some() {
        one.push('\'');
    }
    let n = m.len();
    let mut carrier = m.carrier.clone();
    carrier.push(one);
    let t = MagmaTable::from_fn(&carrier, |i, j| {
        if i == n {
            j
        } else if j == n {
            i
        } else {
            m.mul(i, j)
        }
    })?;
    let r = axiom_check(&t);
    if report.cancellative {
        debug_assert!(
            r.cancellative,
            "completion of a cancellative semigroup stays cancellative"
        );
    }
    Ok((t, r))
}

/// `Z/n` under addition, elements `0..n-1`.
pub fn cyclic_group(n: usize) -> MagmaTable {
    let carrier: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    MagmaTable::from_fn(&carrier, |i, j| (i + j) % n).expect("n > 0")
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const LEFT_QUASIGROUP: &str = "a b c\na b c\nb a c\nc b a\n";
    pub(crate) const QUASIGROUP: &str = "a b c\na c b\nc b a\nb a c\n";

    fn right_projection() -> MagmaTable {
        MagmaTable::from_fn(&["a", "b"], |_, j| j).unwrap()
    }

    #[test]
    fn parse_example_tables() {
        let m = parse_table(LEFT_QUASIGROUP).unwrap();
        assert_eq!(m.product("b", "b"), Some("a"));
        assert_eq!(m.product("c", "c"), Some("a"));
        let q = parse_table(QUASIGROUP).unwrap();
        assert_eq!(q.product("a", "b"), Some("c"));
        let e = parse_table("e\ne\n").unwrap();
        assert!(axiom_check(&e).group);
        assert_eq!(parse_table(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_table(""), Err(AlgebraError::EmptyTable));
        assert!(matches!(
            parse_table("a b\na b\n"),
            Err(AlgebraError::RowCount { .. })
        ));
        assert!(matches!(
            parse_table("a b\na\nb a\n"),
            Err(AlgebraError::RowLength { .. })
        ));
        assert!(matches!(
            parse_table("a b\na z\nb a\n"),
            Err(AlgebraError::UnknownCell { .. })
        ));
        assert!(matches!(
            parse_table("a a\na a\na a\n"),
            Err(AlgebraError::DuplicateElement(_))
        ));
    }

    #[test]
    fn left_quasigroup_axioms() {
        let r = axiom_check(&parse_table(LEFT_QUASIGROUP).unwrap());
        assert!(r.left_quasigroup && !r.associative && !r.right_cancellative);
        assert_eq!(r.witness("rightCancellative"), Some("a·b = c·b"));
        assert_eq!(r.left_identities, ["a"]);
    }

    #[test]
    fn quasigroup_axioms() {
        let m = parse_table(QUASIGROUP).unwrap();
        let r = axiom_check(&m);
        assert!(r.quasigroup && !r.associative);
        // A second non-associativity triple.
        assert_eq!(m.product("a", m.product("b", "c").unwrap()), Some("a"));
        assert_eq!(m.product(m.product("a", "b").unwrap(), "c"), Some("c"));
    }

    #[test]
    fn cyclic_group_axioms() {
        let r = axiom_check(&cyclic_group(3));
        assert!(r.group && r.quasigroup);
        assert_eq!(r.identity.as_deref(), Some("0"));
    }

    #[test]
    fn closures() {
        let z6 = cyclic_group(6);
        assert_eq!(
            closure(&z6, &["2"], ClosureMode::Monoid).unwrap(),
            ["0", "2", "4"]
        );
        assert_eq!(
            closure::<&str>(&z6, &[], ClosureMode::Monoid).unwrap(),
            ["0"]
        );
        assert_eq!(
            closure(&z6, &["3"], ClosureMode::Group).unwrap(),
            ["0", "3"]
        );
        let lq = parse_table(LEFT_QUASIGROUP).unwrap();
        assert_eq!(
            closure(&lq, &["b"], ClosureMode::Semigroup).unwrap(),
            ["a", "b"]
        );
        assert_eq!(
            closure(&lq, &["b"], ClosureMode::Monoid).unwrap(),
            ["a", "b"]
        );
        assert_eq!(
            closure(&right_projection(), &["b"], ClosureMode::Monoid),
            Err(AlgebraError::NoIdentity)
        );
    }

    #[test]
    fn cayley_graphs() {
        let z2 = cyclic_group(2);
        let lab = Labeling::new([("1", "a"), ("0", "b")]).unwrap();
        let even = Graph::parse("0\ta\t1\n0\tb\t0\n1\ta\t0\n1\tb\t1\n").unwrap();
        assert_eq!(cayley_graph(&z2, &lab).unwrap(), even);

        let lq = parse_table(LEFT_QUASIGROUP).unwrap();
        let g = cayley_graph(&lq, &Labeling::identity(["a", "b", "c"]).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 9);
        assert!(g.contains_triple("a", "a", "a"));

        let rp = cayley_graph(
            &right_projection(),
            &Labeling::identity(["a", "b"]).unwrap(),
        )
        .unwrap();
        assert_eq!(rp.to_tsv(), "a\ta\ta\na\tb\tb\nb\ta\ta\nb\tb\tb\n");
    }

    #[test]
    fn labelings_are_injective() {
        assert_eq!(
            Labeling::new([("0", "a"), ("1", "a")]),
            Err(AlgebraError::NonInjectiveLabeling("a".into()))
        );
        assert_eq!(
            Labeling::new(Vec::<(String, String)>::new()),
            Err(AlgebraError::EmptyLabeling)
        );
    }

    #[test]
    fn monoid_completions() {
        let z3 = cyclic_group(3);
        assert_eq!(monoid_completion(&z3).unwrap().0, z3);

        let (t, r) = monoid_completion(&right_projection()).unwrap();
        assert_eq!(t.carrier(), ["a", "b", "1"]);
        assert!(r.monoid);
        assert!(!r.left_cancellative);
        assert_eq!(t.product("a", "a"), t.product("a", "1"));

        let q = parse_table(QUASIGROUP).unwrap();
        assert!(matches!(
            monoid_completion(&q),
            Err(AlgebraError::NotAssociative(_))
        ));
    }

    #[test]
    fn fresh_identity_avoids_collisions() {
        let m = MagmaTable::from_fn(&["1", "2"], |_, j| j).unwrap();
        let (t, _) = monoid_completion(&m).unwrap();
        assert_eq!(t.carrier(), ["1", "2", "1'"]);
    }

    #[test]
    fn serde_round_trip() {
        let m = parse_table(QUASIGROUP).unwrap();
        let doc = serde_json::to_string(&m).unwrap();
        let back: MagmaTable = serde_json::from_str(&doc).unwrap();
        assert_eq!(back, m);
    }
}
