//! JSON netlist interchange.
//!
//! Schema: `{name, numInputs, nodes, outputs, meta}` where each node is
//! `{id, kind, operands, value?, tap?}` — `value` only on constants, `tap`
//! only on counter output bits. Counter instances are not serialized
//! separately: on parse, counter nodes sharing one operand list are
//! reattached to a single instance. Round trips are node-for-node
//! identical for every network the builder can produce.

use majdec::{CounterId, IrError, LogicNetwork, NetworkBuilder, NodeId, NodeKind};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct JsonNode {
    pub id: u32,
    pub kind: String,
    pub operands: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tap: Option<u8>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Meta {
    pub n: usize,
    pub k: usize,
    pub method: String,
    pub tool_version: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct JsonNetlist {
    pub name: String,
    pub num_inputs: usize,
    pub nodes: Vec<JsonNode>,
    pub outputs: Vec<u32>,
    pub meta: Meta,
}

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("node at position {position} has id {id}; ids must be dense and ascending")]
    NonDenseIds { position: usize, id: u32 },
    #[error("node {id}: unknown kind '{kind}'")]
    UnknownKind { id: u32, kind: String },
    #[error("node {id}: const nodes require a value")]
    MissingValue { id: u32 },
    #[error("node {id}: only const nodes may carry a value")]
    UnexpectedValue { id: u32 },
    #[error("node {id}: counter nodes require a tap")]
    MissingTap { id: u32 },
    #[error("node {id}: only counter nodes may carry a tap")]
    UnexpectedTap { id: u32 },
    #[error("node {id}: ids 0..numInputs are reserved for inputs, in order and without operands")]
    MisplacedInput { id: u32 },
    #[error("node {id}: duplicate constant (constants are shared)")]
    DuplicateConstant { id: u32 },
    #[error("node {id}: {source}")]
    Node { id: u32, source: IrError },
    #[error("output {0} does not name a node")]
    UnknownOutput(u32),
}

/// The serializable view of a network plus its provenance metadata.
pub fn to_netlist(net: &LogicNetwork, meta: Meta) -> JsonNetlist {
    let nodes = net
        .nodes()
        .iter()
        .enumerate()
        .map(|(id, node)| {
            let (value, tap) = match node.kind {
                NodeKind::Const(v) => (Some(v), None),
                NodeKind::Counter { tap, .. } => (None, Some(tap)),
                _ => (None, None),
            };
            JsonNode {
                id: id as u32,
                kind: node.kind.name().to_string(),
                operands: node.operands.iter().map(|op| op.0).collect(),
                value,
                tap,
            }
        })
        .collect();
    JsonNetlist {
        name: net.name().to_string(),
        num_inputs: net.num_inputs(),
        nodes,
        outputs: net.outputs().iter().map(|o| o.0).collect(),
        meta,
    }
}

pub fn to_json(net: &LogicNetwork, meta: Meta) -> String {
    let mut text = serde_json::to_string_pretty(&to_netlist(net, meta)).expect("serializable");
    text.push('\n');
    text
}

/// Rebuild the network described by a netlist, validating structure as the
/// builder would. Counter nodes with identical operand lists share one
/// reconstructed instance; hashing stays off so no other nodes merge.
pub fn from_netlist(netlist: &JsonNetlist) -> Result<LogicNetwork, JsonError> {
    let mut b = NetworkBuilder::new(netlist.name.clone(), netlist.num_inputs);
    b.set_hashing(false);
    let mut instances: HashMap<Vec<NodeId>, CounterId> = HashMap::new();
    if netlist.nodes.len() < netlist.num_inputs {
        return Err(JsonError::MisplacedInput {
            id: netlist.nodes.len() as u32,
        });
    }
    for (position, node) in netlist.nodes.iter().enumerate() {
        if node.id as usize != position {
            return Err(JsonError::NonDenseIds {
                position,
                id: node.id,
            });
        }
        let id = node.id;
        if node.value.is_some() && node.kind != "const" {
            return Err(JsonError::UnexpectedValue { id });
        }
        if node.tap.is_some() && node.kind != "counter" {
            return Err(JsonError::UnexpectedTap { id });
        }
        if (position < netlist.num_inputs) != (node.kind == "input") {
            return Err(JsonError::MisplacedInput { id });
        }
        let operands: Vec<NodeId> = node.operands.iter().map(|&op| NodeId(op)).collect();
        let new_id = match node.kind.as_str() {
            "input" => {
                if !operands.is_empty() {
                    return Err(JsonError::MisplacedInput { id });
                }
                b.input(position)
            }
            "const" => {
                let value = node.value.ok_or(JsonError::MissingValue { id })?;
                b.constant(value)
            }
            "counter" => {
                let tap = node.tap.ok_or(JsonError::MissingTap { id })?;
                let instance = match instances.get(&operands) {
                    Some(&cid) => cid,
                    None => {
                        let cid = b
                            .counter_instance(operands.clone())
                            .map_err(|source| JsonError::Node { id, source })?;
                        instances.insert(operands, cid);
                        cid
                    }
                };
                b.counter_tap(instance, tap)
                    .map_err(|source| JsonError::Node { id, source })?
            }
            "not" | "and" | "or" | "maj" => {
                let kind = match node.kind.as_str() {
                    "not" => NodeKind::Not,
                    "and" => NodeKind::And,
                    "or" => NodeKind::Or,
                    _ => NodeKind::Maj,
                };
                b.try_add(kind, operands)
                    .map_err(|source| JsonError::Node { id, source })?
            }
            other => {
                return Err(JsonError::UnknownKind {
                    id,
                    kind: other.to_string(),
                })
            }
        };
        // With hashing off only shared constants can collapse; collapsing
        // would silently shift every later id.
        if new_id.index() != position {
            return Err(JsonError::DuplicateConstant { id });
        }
    }
    for &out in &netlist.outputs {
        if out as usize >= netlist.nodes.len() {
            return Err(JsonError::UnknownOutput(out));
        }
        b.push_output(NodeId(out));
    }
    Ok(b.build())
}

pub fn from_json(text: &str) -> Result<(LogicNetwork, Meta), JsonError> {
    let netlist: JsonNetlist = serde_json::from_str(text)?;
    let net = from_netlist(&netlist)?;
    Ok((net, netlist.meta))
}
