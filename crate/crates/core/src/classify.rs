//! Decides membership in each Cayley-graph class and certifies every
//! positive answer with a synthesized operation.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    axiom_check, cayley_graph, closure, AlgebraReport, ClosureMode, Labeling, MagmaTable,
};
use crate::graph::Graph;
use crate::isomorphism::{is_arc_symmetric, is_symmetric, IsoError};
use crate::properties::{property_report, PropertyOptions, PropertyReport};
use crate::synthesis::{
    chain_operation, edge_operation, extended_chain_operation, left_quasigroup_completion,
    path_operation, quasigroup_completion, root_completion_search, SynthesisError,
    SynthesisOptions, SynthesizedOperation, Witness,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CayleyClass {
    LeftCancellativeMagma,
    LeftCancellativeMagmaWithIdentity,
    LeftQuasigroup,
    LeftQuasigroupWithIdentity,
    Quasigroup,
    QuasigroupWithIdentity,
    LeftCancellativeMonoidCayley,
    CancellativeMonoidCayley,
    CancellativeSemigroupCayley,
    GroupMonoidCayley,
    GroupCayley,
    GroupGeneralizedCayley,
}

impl CayleyClass {
    pub const ALL: [CayleyClass; 12] = [
        CayleyClass::LeftCancellativeMagma,
        CayleyClass::LeftCancellativeMagmaWithIdentity,
        CayleyClass::LeftQuasigroup,
        CayleyClass::LeftQuasigroupWithIdentity,
        CayleyClass::Quasigroup,
        CayleyClass::QuasigroupWithIdentity,
        CayleyClass::LeftCancellativeMonoidCayley,
        CayleyClass::CancellativeMonoidCayley,
        CayleyClass::CancellativeSemigroupCayley,
        CayleyClass::GroupMonoidCayley,
        CayleyClass::GroupCayley,
        CayleyClass::GroupGeneralizedCayley,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CayleyClass::LeftCancellativeMagma => "leftCancellativeMagma",
            CayleyClass::LeftCancellativeMagmaWithIdentity => "leftCancellativeMagmaWithIdentity",
            CayleyClass::LeftQuasigroup => "leftQuasigroup",
            CayleyClass::LeftQuasigroupWithIdentity => "leftQuasigroupWithIdentity",
            CayleyClass::Quasigroup => "quasigroup",
            CayleyClass::QuasigroupWithIdentity => "quasigroupWithIdentity",
            CayleyClass::LeftCancellativeMonoidCayley => "leftCancellativeMonoidCayley",
            CayleyClass::CancellativeMonoidCayley => "cancellativeMonoidCayley",
            CayleyClass::CancellativeSemigroupCayley => "cancellativeSemigroupCayley",
            CayleyClass::GroupMonoidCayley => "groupMonoidCayley",
            CayleyClass::GroupCayley => "groupCayley",
            CayleyClass::GroupGeneralizedCayley => "groupGeneralizedCayley",
        }
    }

    /// Whether an operation with this report, generated by `q`, belongs to
    /// the class.
    pub fn admits(self, m: &MagmaTable, report: &AlgebraReport, q: &[&str]) -> bool {
        let generates = |mode| closure(m, q, mode).is_ok_and(|c| c.len() == m.len());
        let with_identity = report.identity.is_some();
        match self {
            CayleyClass::LeftCancellativeMagma => report.left_cancellative,
            CayleyClass::LeftCancellativeMagmaWithIdentity => {
                report.left_cancellative && with_identity
            }
            CayleyClass::LeftQuasigroup => report.left_quasigroup,
            CayleyClass::LeftQuasigroupWithIdentity => report.left_quasigroup && with_identity,
            CayleyClass::Quasigroup => report.quasigroup,
            CayleyClass::QuasigroupWithIdentity => report.quasigroup && with_identity,
            CayleyClass::LeftCancellativeMonoidCayley => {
                report.monoid && report.left_cancellative && generates(ClosureMode::Monoid)
            }
            CayleyClass::CancellativeMonoidCayley => {
                report.monoid && report.cancellative && generates(ClosureMode::Monoid)
            }
            CayleyClass::CancellativeSemigroupCayley => {
                report.semigroup && report.cancellative && generates(ClosureMode::Semigroup)
            }
            CayleyClass::GroupMonoidCayley => report.group && generates(ClosureMode::Monoid),
            CayleyClass::GroupCayley => report.group && generates(ClosureMode::Group),
            CayleyClass::GroupGeneralizedCayley => report.group,
        }
    }
}

impl fmt::Display for CayleyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CayleyClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CayleyClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown class {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Undecided,
}

impl Verdict {
    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum AuxiliaryKind {
    LeftQuasigroupCompletion,
    QuasigroupCompletion,
    RootCompletion,
}

/// Evidence for a positive verdict: an operation whose Cayley graph is the
/// classified graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub target_class: CayleyClass,
    pub operation: SynthesizedOperation,
    pub auxiliary_kind: Option<AuxiliaryKind>,
    pub auxiliary_graph: Option<Graph>,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Condition {
    pub name: &'static str,
    /// `None` when the check ran out of budget.
    pub holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassOutcome {
    pub verdict: Verdict,
    pub conditions: Vec<Condition>,
    /// Counterexamples for failed conditions, or for axioms the certified
    /// operation does not satisfy.
    pub diagnostics: Vec<String>,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationReport {
    pub properties: PropertyReport,
    /// `None` when the isomorphism budget ran out.
    pub arc_symmetric: Option<bool>,
    pub symmetric: Option<bool>,
    pub classes: BTreeMap<CayleyClass, ClassOutcome>,
}

impl ClassificationReport {
    pub fn verdict(&self, c: CayleyClass) -> Verdict {
        self.classes[&c].verdict
    }

    pub fn certificate(&self, c: CayleyClass) -> Option<&Certificate> {
        self.classes[&c].certificate.as_ref()
    }

    /// Exit-code style summary: any yes, else any undecided, else no.
    pub fn overall(&self) -> Verdict {
        let vs: Vec<Verdict> = self.classes.values().map(|o| o.verdict).collect();
        if vs.contains(&Verdict::Yes) {
            Verdict::Yes
        } else if vs.contains(&Verdict::Undecided) {
            Verdict::Undecided
        } else {
            Verdict::No
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("certificate carrier {carrier:?} differs from the graph's vertices {vertices:?}")]
    CarrierMismatch {
        carrier: Vec<String>,
        vertices: Vec<String>,
    },
}

/// Lazily computed symmetry predicates.
struct Symmetry<'a> {
    g: &'a Graph,
    opts: &'a SynthesisOptions,
    arc: OnceCell<Result<bool, IsoError>>,
    sym: OnceCell<Result<bool, IsoError>>,
}

impl Symmetry<'_> {
    fn arc(&self) -> Option<bool> {
        self.arc
            .get_or_init(|| is_arc_symmetric(self.g, &self.opts.iso))
            .clone()
            .ok()
    }

    fn sym(&self) -> Option<bool> {
        self.sym
            .get_or_init(|| is_symmetric(self.g, &self.opts.iso))
            .clone()
            .ok()
    }
}

const SYMMETRY_UNDECIDED: &str = "symmetry check exhausted its budget";

pub fn classify(g: &Graph, opts: &SynthesisOptions) -> ClassificationReport {
    let props = property_report(g, &PropertyOptions::default());
    let sym = Symmetry {
        g,
        opts,
        arc: OnceCell::new(),
        sym: OnceCell::new(),
    };
    let mut classes = BTreeMap::new();
    for class in CayleyClass::ALL {
        classes.insert(class, decide(g, class, &props, &sym, opts));
    }
    ClassificationReport {
        arc_symmetric: sym.arc(),
        symmetric: sym.sym(),
        properties: props,
        classes,
    }
}

fn cheap(props: &PropertyReport, name: &'static str) -> Condition {
    let holds = match name {
        "simple" => props.simple,
        "deterministic" => props.deterministic,
        "coDeterministic" => props.co_deterministic,
        "sourceComplete" => props.source_complete,
        "targetComplete" => props.target_complete,
        "loopComplete" => props.loop_complete,
        "rooted" => props.rooted,
        "connected" => props.connected,
        _ => unreachable!("unknown cheap condition {name}"),
    };
    Condition {
        name,
        holds: Some(holds),
    }
}

fn decide(
    g: &Graph,
    class: CayleyClass,
    props: &PropertyReport,
    sym: &Symmetry<'_>,
    opts: &SynthesisOptions,
) -> ClassOutcome {
    use CayleyClass::*;
    let cheap_names: &[&'static str] = match class {
        LeftCancellativeMagma | LeftQuasigroup => &["simple", "deterministic", "sourceComplete"],
        LeftCancellativeMagmaWithIdentity | LeftQuasigroupWithIdentity => {
            &["simple", "deterministic", "sourceComplete", "loopComplete"]
        }
        Quasigroup => &[
            "simple",
            "deterministic",
            "coDeterministic",
            "sourceComplete",
            "targetComplete",
        ],
        QuasigroupWithIdentity => &[
            "simple",
            "deterministic",
            "coDeterministic",
            "sourceComplete",
            "targetComplete",
            "loopComplete",
        ],
        LeftCancellativeMonoidCayley => &["rooted", "simple", "deterministic"],
        CancellativeMonoidCayley => &["rooted", "simple", "deterministic", "coDeterministic"],
        CancellativeSemigroupCayley => {
            if props.rooted {
                &["rooted", "simple", "deterministic", "coDeterministic"]
            } else {
                &[]
            }
        }
        GroupMonoidCayley => &["rooted", "simple", "deterministic"],
        GroupCayley => &["connected", "simple", "deterministic", "coDeterministic"],
        GroupGeneralizedCayley => &["simple", "deterministic", "coDeterministic"],
    };
    let mut conditions: Vec<Condition> = cheap_names.iter().map(|n| cheap(props, n)).collect();
    let failed: Vec<String> = conditions
        .iter()
        .filter(|c| c.holds == Some(false))
        .filter_map(|c| props.witness(c.name).map(str::to_string))
        .collect();
    if !failed.is_empty() || conditions.iter().any(|c| c.holds == Some(false)) {
        return ClassOutcome {
            verdict: Verdict::No,
            conditions,
            diagnostics: failed,
            certificate: None,
        };
    }

    let expensive = match class {
        LeftCancellativeMonoidCayley | CancellativeMonoidCayley => {
            Some(("arcSymmetric", sym.arc()))
        }
        CancellativeSemigroupCayley if props.rooted => Some(("arcSymmetric", sym.arc())),
        GroupMonoidCayley | GroupCayley | GroupGeneralizedCayley => Some(("symmetric", sym.sym())),
        _ => None,
    };
    if let Some((name, holds)) = expensive {
        conditions.push(Condition { name, holds });
        match holds {
            None => {
                return ClassOutcome {
                    verdict: Verdict::Undecided,
                    conditions,
                    diagnostics: vec![SYMMETRY_UNDECIDED.into()],
                    certificate: None,
                }
            }
            Some(false) => {
                return ClassOutcome {
                    verdict: Verdict::No,
                    conditions,
                    diagnostics: vec![format!(
                        "graph is not {}",
                        if name == "symmetric" {
                            "symmetric"
                        } else {
                            "arc-symmetric"
                        }
                    )],
                    certificate: None,
                }
            }
            Some(true) => {}
        }
    }

    match certify(g, class, props, opts) {
        Ok(Some(cert)) => {
            if class == CancellativeSemigroupCayley && !props.rooted {
                conditions.push(Condition {
                    name: "rootable",
                    holds: Some(true),
                });
            }
            let diagnostics = cert
                .operation
                .report
                .witnesses
                .iter()
                .map(|(flag, w)| format!("{flag} fails: {w}"))
                .collect();
            ClassOutcome {
                verdict: Verdict::Yes,
                conditions,
                diagnostics,
                certificate: Some(cert),
            }
        }
        Ok(None) => {
            conditions.push(Condition {
                name: "rootable",
                holds: Some(false),
            });
            ClassOutcome {
                verdict: Verdict::No,
                conditions,
                diagnostics: vec!["no root completion is simple, deterministic, co-deterministic and arc-symmetric".into()],
                certificate: None,
            }
        }
        Err(SynthesisError::Undecided(e)) => ClassOutcome {
            verdict: Verdict::Undecided,
            conditions,
            diagnostics: vec![e.to_string()],
            certificate: None,
        },
        Err(e @ SynthesisError::SearchBudgetExceeded(_)) => {
            conditions.push(Condition {
                name: "rootable",
                holds: None,
            });
            ClassOutcome {
                verdict: Verdict::Undecided,
                conditions,
                diagnostics: vec![e.to_string()],
                certificate: None,
            }
        }
        Err(e) => {
            panic!("certificate construction failed for {class} although its conditions hold: {e}")
        }
    }
}

fn least_vertex(g: &Graph) -> &str {
    g.vertex_name(0)
}

/// Labeling `⟦t⟧ = a` for `r -a-> t` in `g`.
fn labeling_of(g: &Graph, r: &str) -> Option<Labeling> {
    let r = g.vertex_id(r)?;
    Labeling::new(
        g.out_edges(r)
            .iter()
            .map(|&(a, t)| (g.vertex_name(t).to_string(), g.label_name(a).to_string())),
    )
    .ok()
}

fn finish(
    g: &Graph,
    class: CayleyClass,
    operation: SynthesizedOperation,
    auxiliary: Option<(AuxiliaryKind, Graph)>,
) -> Certificate {
    let (auxiliary_kind, auxiliary_graph) = match auxiliary {
        Some((k, h)) => (Some(k), Some(h)),
        None => (None, None),
    };
    let mut cert = Certificate {
        target_class: class,
        operation,
        auxiliary_kind,
        auxiliary_graph,
        verified: false,
    };
    cert.verified = verify_certificate(g, &cert).unwrap_or(false);
    cert
}

fn certify(
    g: &Graph,
    class: CayleyClass,
    props: &PropertyReport,
    opts: &SynthesisOptions,
) -> Result<Option<Certificate>, SynthesisError> {
    use CayleyClass::*;
    let r0 = least_vertex(g);
    let cert = match class {
        LeftCancellativeMagma
        | LeftCancellativeMagmaWithIdentity
        | LeftQuasigroup
        | LeftQuasigroupWithIdentity => {
            let infsup = left_quasigroup_completion(g, r0)?;
            let mut op = edge_operation(&infsup, r0, opts)?;
            op.labeling = labeling_of(g, r0);
            op.generator_set = props_successors(g, r0);
            finish(
                g,
                class,
                op,
                Some((AuxiliaryKind::LeftQuasigroupCompletion, infsup)),
            )
        }
        Quasigroup | QuasigroupWithIdentity => {
            let h = quasigroup_completion(g)?;
            let mut op = edge_operation(&h, r0, opts)?;
            op.labeling = labeling_of(g, r0);
            op.generator_set = props_successors(g, r0);
            finish(g, class, op, Some((AuxiliaryKind::QuasigroupCompletion, h)))
        }
        LeftCancellativeMonoidCayley | CancellativeMonoidCayley | GroupMonoidCayley => {
            let op = path_operation(g, &props.roots[0], opts)?;
            finish(g, class, op, None)
        }
        CancellativeSemigroupCayley => {
            if props.rooted {
                let op = path_operation(g, &props.roots[0], opts)?;
                finish(g, class, op, None)
            } else {
                let Some(completed) = root_completion_search(g, opts)? else {
                    return Ok(None);
                };
                let fresh = completed
                    .vertices()
                    .iter()
                    .find(|v| g.vertex_id(v).is_none())
                    .expect("completion adds a root")
                    .clone();
                let full = path_operation(&completed, &fresh, opts)?;
                let op = restrict_operation(g, &full)?;
                finish(
                    g,
                    class,
                    op,
                    Some((AuxiliaryKind::RootCompletion, completed)),
                )
            }
        }
        GroupCayley => {
            let op = chain_operation(g, r0, opts)?;
            finish(g, class, op, None)
        }
        GroupGeneralizedCayley => {
            let op = extended_chain_operation(g, None, opts)?;
            finish(g, class, op, None)
        }
    };
    Ok(Some(cert))
}

fn props_successors(g: &Graph, r: &str) -> Vec<String> {
    let r = g.vertex_id(r).expect("vertex");
    g.successor_set(r)
        .into_iter()
        .map(|t| g.vertex_name(t).to_string())
        .collect()
}

/// Restricts an operation on `V_G ∪ {root}` to `V_G`.
fn restrict_operation(
    g: &Graph,
    full: &SynthesizedOperation,
) -> Result<SynthesizedOperation, SynthesisError> {
    let carrier = g.vertices();
    let table = MagmaTable::from_fn(carrier, |i, j| {
        let p = full
            .table
            .product(&carrier[i], &carrier[j])
            .expect("elements of the completion");
        g.vertex_id(p)
            .expect("the product never returns to the fresh root")
    })?;
    Ok(SynthesizedOperation {
        report: axiom_check(&table),
        table,
        kind: full.kind,
        witness: full.witness.clone(),
        generator_set: full.generator_set.clone(),
        labeling: full.labeling.clone(),
    })
}

/// Recomputes the algebraic report of the certificate's table, checks that
/// it belongs to the target class, and that the table regenerates `g`.
pub fn verify_certificate(g: &Graph, c: &Certificate) -> Result<bool, VerifyError> {
    let op = &c.operation;
    let mut carrier: Vec<&String> = op.table.carrier().iter().collect();
    let mut vertices: Vec<&String> = g.vertices().iter().collect();
    carrier.sort();
    vertices.sort();
    if carrier != vertices {
        return Err(VerifyError::CarrierMismatch {
            carrier: op.table.carrier().to_vec(),
            vertices: g.vertices().to_vec(),
        });
    }
    let Some(labeling) = &op.labeling else {
        return Ok(false);
    };
    let report = axiom_check(&op.table);
    let q: Vec<&str> = labeling.domain().collect();
    if !c.target_class.admits(&op.table, &report, &q) {
        return Ok(false);
    }
    if let Witness::Representatives { group, .. } = &op.witness {
        if !axiom_check(group).group {
            return Ok(false);
        }
    }
    match cayley_graph(&op.table, labeling) {
        Ok(h) if &h == g => {}
        _ => return Ok(false),
    }
    if let (Some(kind), Some(aux)) = (c.auxiliary_kind, &c.auxiliary_graph) {
        let back = match kind {
            AuxiliaryKind::LeftQuasigroupCompletion => true,
            AuxiliaryKind::QuasigroupCompletion => {
                aux.label_restriction(g.labels()).ok().as_ref() == Some(g)
            }
            AuxiliaryKind::RootCompletion => {
                aux.vertex_restriction(g.vertices()).ok().as_ref() == Some(g)
            }
        };
        if !back {
            return Ok(false);
        }
    }
    Ok(true)
}
