//! Constant propagation and trivial-gate simplification.
//!
//! [`fold_constants`] rebuilds a network bottom-up, replacing gates whose
//! value is forced by constant operands and erasing double inversions. For
//! majority gates a balanced pair of constant operands (one 1 and one 0)
//! cancels out, so `Maj(x1, x2, x3, 1, 0)` becomes `Maj(x1, x2, x3)`; an
//! unbalanced constant surplus stays in place because a general threshold
//! cannot be expressed as a smaller plain majority. The pass is semantics
//! preserving and never increases the gate count.

use crate::ir::{CounterId, LogicNetwork, NetworkBuilder, NodeId, NodeKind};
use std::collections::HashMap;

/// Constant value of a node in the rebuilt network, if it is a constant.
fn const_value(builder: &NetworkBuilder, id: NodeId) -> Option<bool> {
    match builder.kind(id) {
        NodeKind::Const(v) => Some(v),
        _ => None,
    }
}

fn fold_not(builder: &mut NetworkBuilder, a: NodeId) -> NodeId {
    if let Some(v) = const_value(builder, a) {
        return builder.constant(!v);
    }
    if builder.kind(a) == NodeKind::Not {
        return builder.operands(a)[0];
    }
    builder.not(a)
}

/// And/Or share one routine: `neutral` is the operand value that can be
/// dropped, `!neutral` forces the gate to that constant.
fn fold_and_or(builder: &mut NetworkBuilder, kind: NodeKind, ops: &[NodeId]) -> NodeId {
    let neutral = match kind {
        NodeKind::And => true,
        NodeKind::Or => false,
        _ => unreachable!(),
    };
    let mut kept = Vec::with_capacity(ops.len());
    for &op in ops {
        match const_value(builder, op) {
            Some(v) if v == neutral => {}
            Some(_) => return builder.constant(!neutral),
            None => kept.push(op),
        }
    }
    match kept.len() {
        0 => builder.constant(neutral),
        1 => kept[0],
        _ => match kind {
            NodeKind::And => builder.and(kept),
            NodeKind::Or => builder.or(kept),
            _ => unreachable!(),
        },
    }
}

fn fold_maj(builder: &mut NetworkBuilder, ops: &[NodeId]) -> NodeId {
    let arity = ops.len();
    let mut vars = Vec::with_capacity(arity);
    let mut ones = 0usize;
    let mut zeros = 0usize;
    for &op in ops {
        match const_value(builder, op) {
            Some(true) => ones += 1,
            Some(false) => zeros += 1,
            None => vars.push(op),
        }
    }
    if ones + zeros == 0 {
        return builder.maj(ops.to_vec());
    }
    // With `ones` constant-1 operands the gate computes the threshold
    // "at least ceil(arity/2) - ones of the variables" over the remaining
    // variable operands.
    let majority = arity.div_ceil(2);
    let t = majority - ones.min(majority);
    if majority <= ones {
        return builder.constant(true);
    }
    if t > vars.len() {
        return builder.constant(false);
    }
    // Cancel balanced 1/0 pairs; any leftover surplus must stay.
    let drop = ones.min(zeros);
    let (ones, zeros) = (ones - drop, zeros - drop);
    if vars.len() == 1 && ones + zeros == 0 {
        return vars[0];
    }
    for _ in 0..ones {
        let c = builder.constant(true);
        vars.push(c);
    }
    for _ in 0..zeros {
        let c = builder.constant(false);
        vars.push(c);
    }
    builder.maj(vars)
}

/// Rebuild `net` with constants propagated. The result computes the same
/// function on every input assignment; its total gate count never exceeds
/// the original one.
pub fn fold_constants(net: &LogicNetwork) -> LogicNetwork {
    let mut builder = NetworkBuilder::new(net.name(), net.num_inputs());
    builder.set_hashing(net.hashing());
    let mut map: Vec<NodeId> = Vec::with_capacity(net.nodes().len());
    let mut instances: HashMap<CounterId, CounterId> = HashMap::new();
    for node in net.nodes() {
        let ops: Vec<NodeId> = node.operands.iter().map(|op| map[op.index()]).collect();
        let new_id = match node.kind {
            NodeKind::Input(i) => builder.input(i as usize),
            NodeKind::Const(v) => builder.constant(v),
            NodeKind::Not => fold_not(&mut builder, ops[0]),
            NodeKind::And | NodeKind::Or => fold_and_or(&mut builder, node.kind, &ops),
            NodeKind::Maj => fold_maj(&mut builder, &ops),
            NodeKind::Counter { instance, tap } => {
                let consts: Option<Vec<bool>> =
                    ops.iter().map(|&op| const_value(&builder, op)).collect();
                match consts {
                    // A counter over constants collapses to constant output
                    // bits of the known population count.
                    Some(values) => {
                        let count = values.iter().filter(|&&v| v).count();
                        builder.constant((count >> tap) & 1 == 1)
                    }
                    None => {
                        let cid = match instances.get(&instance) {
                            Some(&cid) => cid,
                            None => {
                                let cid = builder
                                    .counter_instance(ops.clone())
                                    .expect("counter operands stay valid under folding");
                                instances.insert(instance, cid);
                                cid
                            }
                        };
                        builder
                            .counter_tap(cid, tap)
                            .expect("tap within original width")
                    }
                }
            }
        };
        map.push(new_id);
    }
    for out in net.outputs() {
        let mapped = map[out.index()];
        builder.push_output(mapped);
    }
    builder.build()
}
