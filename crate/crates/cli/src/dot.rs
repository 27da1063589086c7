//! Deterministic Graphviz export.
//!
//! Counters are boxes labeled `(c:p)` with one tap-labeled edge per used
//! output bit; majority gates are ellipses labeled `M_k`; inverters are not
//! drawn as nodes — a complemented operand becomes a dot-headed edge;
//! inputs are plaintext and outputs double circles. Output is a pure
//! function of the network, so snapshots are stable byte for byte.

use majdec::{LogicNetwork, NodeId, NodeKind};
use std::fmt::Write;

/// Follow `Not` chains to the underlying signal, tracking parity.
fn resolve(net: &LogicNetwork, mut id: NodeId) -> (NodeId, bool) {
    let mut complemented = false;
    while let NodeKind::Not = net.node(id).kind {
        complemented = !complemented;
        id = net.node(id).operands[0];
    }
    (id, complemented)
}

/// Tail endpoint for an edge leaving `id`: the graph name of the node that
/// draws it, plus a tap label when the signal is a counter output bit.
fn tail(net: &LogicNetwork, id: NodeId) -> (String, Option<u8>) {
    match net.node(id).kind {
        NodeKind::Input(i) => (format!("x{i}"), None),
        NodeKind::Counter { instance, tap } => (format!("c{}", instance.index()), Some(tap)),
        _ => (format!("n{}", id.index()), None),
    }
}

fn write_edge(out: &mut String, net: &LogicNetwork, src: NodeId, dst: &str) {
    let (source, complemented) = resolve(net, src);
    let (tail, tap) = tail(net, source);
    let mut attrs = Vec::new();
    if let Some(tap) = tap {
        attrs.push(format!("taillabel=\"{tap}\""));
    }
    if complemented {
        attrs.push("arrowhead=dot".to_string());
    }
    if attrs.is_empty() {
        writeln!(out, "  {tail} -> {dst};").unwrap();
    } else {
        writeln!(out, "  {tail} -> {dst} [{}];", attrs.join(", ")).unwrap();
    }
}

pub fn to_dot(net: &LogicNetwork) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", net.name()).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for i in 0..net.num_inputs() {
        writeln!(out, "  x{i} [shape=plaintext, label=\"x{i}\"];").unwrap();
    }
    for (id, node) in net.nodes().iter().enumerate() {
        match node.kind {
            NodeKind::Const(v) => {
                writeln!(out, "  n{id} [shape=plaintext, label=\"{}\"];", v as u8).unwrap();
            }
            NodeKind::Maj => {
                writeln!(out, "  n{id} [label=\"M_{}\"];", node.operands.len()).unwrap();
            }
            NodeKind::And => writeln!(out, "  n{id} [label=\"AND\"];").unwrap(),
            NodeKind::Or => writeln!(out, "  n{id} [label=\"OR\"];").unwrap(),
            NodeKind::Input(_) | NodeKind::Not | NodeKind::Counter { .. } => {}
        }
    }
    for (idx, instance) in net.counters().iter().enumerate() {
        writeln!(
            out,
            "  c{idx} [shape=box, label=\"({}:{})\"];",
            instance.operands.len(),
            instance.width
        )
        .unwrap();
    }
    for i in 0..net.outputs().len() {
        writeln!(out, "  out{i} [shape=doublecircle, label=\"out{i}\"];").unwrap();
    }
    for (idx, instance) in net.counters().iter().enumerate() {
        for &op in &instance.operands {
            write_edge(&mut out, net, op, &format!("c{idx}"));
        }
    }
    for (id, node) in net.nodes().iter().enumerate() {
        match node.kind {
            NodeKind::Maj | NodeKind::And | NodeKind::Or => {
                for &op in &node.operands {
                    write_edge(&mut out, net, op, &format!("n{id}"));
                }
            }
            _ => {}
        }
    }
    for (i, &output) in net.outputs().iter().enumerate() {
        write_edge(&mut out, net, output, &format!("out{i}"));
    }
    out.push_str("}\n");
    out
}
