//! JSON encodings of programs, graphs, snapshots, traces and debugger state.

use std::collections::BTreeMap;

use asjust_core::debugger::{BreakValue, Breakpoint, Pause, PauseReason, StateDigest, Status};
use asjust_core::justification::{EGraph, ENode, Label};
use asjust_core::online::{Computation, Sign, Snapshot, TransitionTag};
use asjust_core::semantics::KUPair;
use asjust_core::{AtomSet, PInterpretation, Program};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ProgramJson {
    pub atoms: Vec<String>,
    pub rules: Vec<RuleJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct RuleJson {
    pub head: usize,
    pub pos: Vec<usize>,
    pub neg: Vec<usize>,
}

pub fn program(p: &Program) -> ProgramJson {
    let ids = |s: &AtomSet| s.iter().map(|a| a.index()).collect();
    ProgramJson {
        atoms: p.atoms().iter().map(|(_, n)| n.to_string()).collect(),
        rules: p
            .rules()
            .iter()
            .map(|r| RuleJson {
                head: r.head.index(),
                pos: ids(&r.pos),
                neg: ids(&r.neg),
            })
            .collect(),
    }
}

pub fn names(p: &Program, s: &AtomSet) -> Vec<String> {
    s.iter().map(|a| p.name(a).to_string()).collect()
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct InterpJson {
    pub plus: Vec<String>,
    pub minus: Vec<String>,
}

pub fn interp(p: &Program, i: &PInterpretation) -> InterpJson {
    InterpJson {
        plus: names(p, &i.plus),
        minus: names(p, &i.minus),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct NodeJson {
    pub id: usize,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub atom: Option<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct EGraphJson {
    pub root: Option<usize>,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
}

pub fn node_kind(n: ENode) -> &'static str {
    match n {
        ENode::Pos(_) => "pos",
        ENode::Neg(_) => "neg",
        ENode::Assume => "assume",
        ENode::Top => "top",
        ENode::Bot => "bot",
    }
}

pub fn label(l: Label) -> &'static str {
    match l {
        Label::Plus => "+",
        Label::Minus => "-",
    }
}

/// Node ids follow the graph's node order.
pub fn egraph(p: &Program, g: &EGraph) -> EGraphJson {
    let ids: BTreeMap<ENode, usize> = g.nodes().iter().enumerate().map(|(i, n)| (*n, i)).collect();
    EGraphJson {
        root: g.root().and_then(|r| ids.get(&r).copied()),
        nodes: g
            .nodes()
            .iter()
            .map(|n| NodeJson {
                id: ids[n],
                kind: node_kind(*n).to_string(),
                atom: n.atom().map(|a| p.name(a).to_string()),
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeJson {
                from: ids[&e.from],
                to: ids[&e.to],
                label: label(e.label).to_string(),
            })
            .collect(),
    }
}

/// `name@+` or `name@-`; sinks use their kind.
pub fn node_key(p: &Program, n: ENode) -> String {
    match n {
        ENode::Pos(a) => format!("{}@+", p.name(a)),
        ENode::Neg(a) => format!("{}@-", p.name(a)),
        other => node_kind(other).to_string(),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SnapshotJson {
    pub d: InterpJson,
    pub off: BTreeMap<String, EGraphJson>,
    pub on: BTreeMap<String, EGraphJson>,
}

pub fn snapshot(p: &Program, s: &Snapshot) -> SnapshotJson {
    let enc = |m: &BTreeMap<ENode, std::sync::Arc<EGraph>>| {
        m.iter()
            .map(|(n, g)| (node_key(p, *n), egraph(p, g)))
            .collect()
    };
    SnapshotJson {
        d: interp(p, &s.d),
        off: enc(&s.off),
        on: enc(&s.on),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TagJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub atom: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rule: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sign: Option<String>,
}

pub fn tag(p: &Program, t: &TransitionTag) -> TagJson {
    TagJson {
        kind: t.kind().name().to_string(),
        atom: t.atom().map(|a| p.name(a).to_string()),
        rule: t.rule(),
        sign: t.sign().map(|s| s.to_string()),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct StepJson {
    pub tag: TagJson,
    pub state: InterpJson,
}

pub fn trace(p: &Program, c: &Computation) -> Vec<StepJson> {
    c.tags()
        .iter()
        .zip(&c.states()[1..])
        .map(|(t, s)| StepJson {
            tag: tag(p, t),
            state: interp(p, s),
        })
        .collect()
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct KUJson {
    pub index: usize,
    pub k: Vec<String>,
    pub u: Vec<String>,
}

pub fn ku(p: &Program, pair: &KUPair) -> KUJson {
    KUJson {
        index: pair.index,
        k: names(p, &pair.k),
        u: names(p, &pair.u),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct WfsJson {
    pub plus: Vec<String>,
    pub minus: Vec<String>,
    pub trace: Vec<KUJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct DecisionJson {
    pub atom: String,
    pub sign: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct DigestJson {
    pub step: usize,
    pub plus: Vec<String>,
    pub minus: Vec<String>,
    pub unknown: Vec<String>,
    pub conflict: bool,
    pub conflicting: Vec<String>,
    pub decisions: Vec<DecisionJson>,
    pub models: usize,
    pub status: String,
    pub last: Option<TagJson>,
}

pub fn status(s: Status) -> &'static str {
    match s {
        Status::Paused => "paused",
        Status::Done => "done",
    }
}

pub fn digest(p: &Program, d: &StateDigest) -> DigestJson {
    let i = PInterpretation::new(d.plus.clone(), d.minus.clone());
    DigestJson {
        step: d.step,
        plus: names(p, &d.plus),
        minus: names(p, &d.minus),
        unknown: names(p, &p.all_atoms().difference(&i.assigned())),
        conflict: d.conflict,
        conflicting: names(p, &i.conflicts()),
        decisions: d
            .decisions
            .iter()
            .map(|(a, s)| DecisionJson {
                atom: p.name(*a).to_string(),
                sign: s.to_string(),
            })
            .collect(),
        models: d.models,
        status: status(d.status).to_string(),
        last: d.last.as_ref().map(|t| tag(p, t)),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum ReasonJson {
    Step,
    Breakpoint {
        #[serde(rename = "bpId")]
        bp_id: u32,
    },
    Model {
        index: usize,
    },
    Exhausted,
}

impl From<PauseReason> for ReasonJson {
    fn from(r: PauseReason) -> Self {
        match r {
            PauseReason::Step => ReasonJson::Step,
            PauseReason::Breakpoint(bp_id) => ReasonJson::Breakpoint { bp_id },
            PauseReason::Model(index) => ReasonJson::Model { index },
            PauseReason::Exhausted => ReasonJson::Exhausted,
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PauseJson {
    pub checkpoint: u64,
    pub reason: ReasonJson,
    pub state: DigestJson,
}

pub fn pause(p: &Program, x: &Pause) -> PauseJson {
    PauseJson {
        checkpoint: x.checkpoint,
        reason: x.reason.into(),
        state: digest(p, &x.digest),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CheckpointJson {
    pub id: u64,
    pub state: DigestJson,
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ValueJson {
    True,
    False,
    Any,
}

/// A breakpoint as sent by clients; atoms are named.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum BreakpointJson {
    Atom {
        atom: String,
        #[serde(default = "any_value")]
        value: ValueJson,
    },
    Conflict,
    ConflictOnAtom {
        atom: String,
    },
    Answer {
        index: usize,
    },
}

fn any_value() -> ValueJson {
    ValueJson::Any
}

impl BreakpointJson {
    pub fn resolve(&self, p: &Program) -> Result<Breakpoint, asjust_core::Error> {
        let atom = |n: &str| {
            p.atom(n)
                .ok_or_else(|| asjust_core::Error::UnknownAtom(n.to_string()))
        };
        Ok(match self {
            BreakpointJson::Atom { atom: n, value } => Breakpoint::Atom {
                atom: atom(n)?,
                value: match value {
                    ValueJson::True => BreakValue::True,
                    ValueJson::False => BreakValue::False,
                    ValueJson::Any => BreakValue::Any,
                },
            },
            BreakpointJson::Conflict => Breakpoint::Conflict,
            BreakpointJson::ConflictOnAtom { atom: n } => {
                Breakpoint::ConflictOnAtom { atom: atom(n)? }
            }
            BreakpointJson::Answer { index } => Breakpoint::Answer { index: *index },
        })
    }

    pub fn encode(p: &Program, b: &Breakpoint) -> Self {
        match *b {
            Breakpoint::Atom { atom, value } => BreakpointJson::Atom {
                atom: p.name(atom).to_string(),
                value: match value {
                    BreakValue::True => ValueJson::True,
                    BreakValue::False => ValueJson::False,
                    BreakValue::Any => ValueJson::Any,
                },
            },
            Breakpoint::Conflict => BreakpointJson::Conflict,
            Breakpoint::ConflictOnAtom { atom } => BreakpointJson::ConflictOnAtom {
                atom: p.name(atom).to_string(),
            },
            Breakpoint::Answer { index } => BreakpointJson::Answer { index },
        }
    }
}

pub fn parse_sign(s: &str) -> Option<Sign> {
    match s {
        "+" | "plus" | "true" => Some(Sign::Plus),
        "-" | "minus" | "false" => Some(Sign::Minus),
        _ => None,
    }
}
