//! Lowering onto k-input majority gates.
//!
//! A majority gate with some operands tied to constants computes a threshold
//! over its remaining free operands: with `ones` constant-1 and `zeros`
//! constant-0 controls, `M_k` over `c` free signals outputs 1 iff at least
//! `ceil(k/2) - ones` of them are 1. [`control_assignment`] solves for the
//! control counts, and everything else here is built from that single
//! primitive:
//!
//! * [`threshold_gate`] — one `M_k` computing `HW >= t` over up to
//!   `ceil(k/2)` signals;
//! * [`exact_hw_signals`] — the one-hot "Hamming weight is exactly i"
//!   signals, built as a threshold ladder followed by pairwise ANDs;
//! * [`or_tree`] / [`and_tree`] — wide OR/AND as greedy trees of `M_k`
//!   gates, `ceil((q-1)/(ceil(k/2)-1))` gates for `q` operands;
//! * [`lower_counters`] — replaces every counter instance by the
//!   threshold-ladder / one-hot / binary-encode construction;
//! * [`homogenize`] — converts leftover And/Or nodes and pads narrow
//!   majority gates so every gate is exactly `M_k`.

use crate::ir::{counter_width, CounterId, LogicNetwork, NetworkBuilder, NodeId, NodeKind};
use std::collections::HashMap;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LoweringError {
    #[error("majority fan-in must be an odd number >= 3, got {0}")]
    BadFanIn(usize),
    #[error("no control assignment: threshold {t} over {c} signals with fan-in {k}")]
    NoAssignment { c: usize, t: usize, k: usize },
    #[error("counter with {arity} operands exceeds the group size {l} for fan-in {k}")]
    CounterTooWide { arity: usize, l: usize, k: usize },
    #[error("majority arity {arity} exceeds fan-in {k}")]
    ArityTooLarge { arity: usize, k: usize },
    #[error("network still contains counter nodes; lower counters first")]
    ResidualCounter,
}

pub(crate) fn ensure_fan_in(k: usize) -> Result<(), LoweringError> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(LoweringError::BadFanIn(k));
    }
    Ok(())
}

/// Constant controls turning one `M_k` gate into a threshold gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ControlAssignment {
    /// Gate fan-in.
    pub k: usize,
    /// Free (data-driven) operand count.
    pub free_vars: usize,
    /// Threshold computed over the free operands.
    pub threshold: usize,
    /// Constant-1 controls.
    pub ones: usize,
    /// Constant-0 controls.
    pub zeros: usize,
}

/// Solve for the controls that make `M_k` compute `HW >= t` over `c`
/// signals: `ones = ceil(k/2) - t`, `zeros = k - c - ones`.
pub fn control_assignment(
    k: usize,
    c: usize,
    t: usize,
) -> Result<ControlAssignment, LoweringError> {
    ensure_fan_in(k)?;
    let l = k.div_ceil(2);
    if t < 1 || t > c || c > l {
        return Err(LoweringError::NoAssignment { c, t, k });
    }
    let ones = l - t;
    Ok(ControlAssignment {
        k,
        free_vars: c,
        threshold: t,
        ones,
        zeros: k - c - ones,
    })
}

/// One `M_k` gate computing `HW(signals) >= t`, signals first, then the
/// constant-1 and constant-0 controls.
pub fn threshold_gate(
    b: &mut NetworkBuilder,
    signals: &[NodeId],
    t: usize,
    k: usize,
) -> Result<NodeId, LoweringError> {
    let ca = control_assignment(k, signals.len(), t)?;
    let mut ops = signals.to_vec();
    for _ in 0..ca.ones {
        let one = b.constant(true);
        ops.push(one);
    }
    for _ in 0..ca.zeros {
        let zero = b.constant(false);
        ops.push(zero);
    }
    Ok(b.maj(ops))
}

/// One-hot exact-Hamming-weight signals over at most `ceil(k/2)` inputs:
/// result `[i-1]` is 1 iff exactly `i` of the signals are 1, for
/// `i = 1 ..= signals.len()`. Built as the threshold ladder
/// `T^1 >= T^2 >= ...` followed by `HW_i = T^i AND NOT T^(i+1)`
/// (`HW_c = T^c`); a single signal is its own indicator.
pub fn exact_hw_signals(
    b: &mut NetworkBuilder,
    signals: &[NodeId],
    k: usize,
) -> Result<Vec<NodeId>, LoweringError> {
    assert!(!signals.is_empty(), "exact_hw_signals needs signals");
    let c = signals.len();
    if c == 1 {
        return Ok(vec![signals[0]]);
    }
    let thresholds: Vec<NodeId> = (1..=c)
        .map(|t| threshold_gate(b, signals, t, k))
        .collect::<Result<_, _>>()?;
    let mut hw = Vec::with_capacity(c);
    for i in 1..c {
        let not_next = b.not(thresholds[i]);
        hw.push(threshold_gate(b, &[thresholds[i - 1], not_next], 2, k)?);
    }
    hw.push(thresholds[c - 1]);
    Ok(hw)
}

fn gate_tree(b: &mut NetworkBuilder, ops: &[NodeId], k: usize, or: bool) -> NodeId {
    ensure_fan_in(k).expect("validated fan-in");
    assert!(!ops.is_empty(), "gate tree needs operands");
    let l = k.div_ceil(2);
    let mut queue: VecDeque<NodeId> = ops.iter().copied().collect();
    while queue.len() > 1 {
        let c = l.min(queue.len());
        let chunk: Vec<NodeId> = queue.drain(..c).collect();
        let t = if or { 1 } else { chunk.len() };
        let gate = threshold_gate(b, &chunk, t, k).expect("chunk fits one gate");
        queue.push_back(gate);
    }
    queue.pop_front().unwrap()
}

/// Wide OR as a greedy left-to-right tree of `M_k` gates, each covering up
/// to `ceil(k/2)` operands; a single operand is returned as-is.
pub fn or_tree(b: &mut NetworkBuilder, ops: &[NodeId], k: usize) -> NodeId {
    gate_tree(b, ops, k, true)
}

/// Wide AND, dual of [`or_tree`].
pub fn and_tree(b: &mut NetworkBuilder, ops: &[NodeId], k: usize) -> NodeId {
    gate_tree(b, ops, k, false)
}

/// Lower one counter instance: exact-HW signals over the operands, then
/// each binary output bit as the OR of the indicators whose index has that
/// bit set (wired through when only one contributes).
fn lower_counter_instance(
    b: &mut NetworkBuilder,
    operands: &[NodeId],
    k: usize,
) -> Result<Vec<NodeId>, LoweringError> {
    let c = operands.len();
    let l = k.div_ceil(2);
    if c > l {
        return Err(LoweringError::CounterTooWide { arity: c, l, k });
    }
    let hw = exact_hw_signals(b, operands, k)?;
    let width = counter_width(c) as usize;
    let mut bits = Vec::with_capacity(width);
    for j in 0..width {
        let contributors: Vec<NodeId> = (1..=c)
            .filter(|i| (i >> j) & 1 == 1)
            .map(|i| hw[i - 1])
            .collect();
        debug_assert!(!contributors.is_empty());
        bits.push(if contributors.len() == 1 {
            contributors[0]
        } else {
            or_tree(b, &contributors, k)
        });
    }
    Ok(bits)
}

/// Replace every counter instance by its `M_k` realization; all other nodes
/// are copied. Counter taps are redirected to the lowered output bits.
pub fn lower_counters(net: &LogicNetwork, k: usize) -> Result<LogicNetwork, LoweringError> {
    ensure_fan_in(k)?;
    let mut b = NetworkBuilder::new(net.name(), net.num_inputs());
    b.set_hashing(net.hashing());
    let mut map: Vec<Option<NodeId>> = vec![None; net.nodes().len()];
    let mut lowered: HashMap<CounterId, Vec<NodeId>> = HashMap::new();
    for (idx, node) in net.nodes().iter().enumerate() {
        let mapped = |id: &NodeId| map[id.index()].expect("operands precede users");
        let new_id = match node.kind {
            NodeKind::Input(i) => b.input(i as usize),
            NodeKind::Const(v) => b.constant(v),
            NodeKind::Counter { instance, tap } => {
                if let std::collections::hash_map::Entry::Vacant(entry) = lowered.entry(instance) {
                    let ops: Vec<NodeId> =
                        net.counter(instance).operands.iter().map(mapped).collect();
                    entry.insert(lower_counter_instance(&mut b, &ops, k)?);
                }
                lowered[&instance][tap as usize]
            }
            kind => {
                let ops: Vec<NodeId> = node.operands.iter().map(mapped).collect();
                b.try_add(kind, ops).expect("source network is well-formed")
            }
        };
        map[idx] = Some(new_id);
    }
    for out in net.outputs() {
        let id = map[out.index()].expect("output maps to a node");
        b.push_output(id);
    }
    Ok(b.build())
}

/// Convert And/Or nodes into `M_k` trees and pad narrow Maj nodes with
/// balanced constants so every gate has arity exactly `k`. Fails on counter
/// nodes (run [`lower_counters`] first) and on Maj nodes wider than `k`.
pub fn homogenize(net: &LogicNetwork, k: usize) -> Result<LogicNetwork, LoweringError> {
    ensure_fan_in(k)?;
    let mut b = NetworkBuilder::new(net.name(), net.num_inputs());
    b.set_hashing(net.hashing());
    let mut map: Vec<Option<NodeId>> = vec![None; net.nodes().len()];
    for (idx, node) in net.nodes().iter().enumerate() {
        let ops: Vec<NodeId> = node
            .operands
            .iter()
            .map(|id| map[id.index()].expect("operands precede users"))
            .collect();
        let new_id = match node.kind {
            NodeKind::Input(i) => b.input(i as usize),
            NodeKind::Const(v) => b.constant(v),
            NodeKind::Counter { .. } => return Err(LoweringError::ResidualCounter),
            NodeKind::Not => b.not(ops[0]),
            NodeKind::And => and_tree(&mut b, &ops, k),
            NodeKind::Or => or_tree(&mut b, &ops, k),
            NodeKind::Maj => {
                let arity = ops.len();
                if arity > k {
                    return Err(LoweringError::ArityTooLarge { arity, k });
                }
                let mut padded = ops;
                for _ in 0..(k - arity) / 2 {
                    let one = b.constant(true);
                    padded.push(one);
                    let zero = b.constant(false);
                    padded.push(zero);
                }
                b.maj(padded)
            }
        };
        map[idx] = Some(new_id);
    }
    for out in net.outputs() {
        let id = map[out.index()].expect("output maps to a node");
        b.push_output(id);
    }
    // Discarded bin residuals (and anything only they consumed) are dead by
    // construction; the homogeneous network keeps only the live cone.
    Ok(b.build().prune_dangling())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{
        check_network_equivalence, check_threshold_equivalence, eval_vector, VerifyMode,
    };

    fn vec_bits(v: u64, n: usize) -> Vec<bool> {
        (0..n).map(|i| (v >> i) & 1 == 1).collect()
    }

    #[test]
    fn control_assignments_match_known_cases() {
        let ca = control_assignment(5, 3, 3).unwrap();
        assert_eq!((ca.ones, ca.zeros), (0, 2)); // AND_3
        let ca = control_assignment(5, 3, 2).unwrap();
        assert_eq!((ca.ones, ca.zeros), (1, 1)); // M_3
        let ca = control_assignment(5, 3, 1).unwrap();
        assert_eq!((ca.ones, ca.zeros), (2, 0)); // OR_3
        let ca = control_assignment(9, 5, 3).unwrap();
        assert_eq!((ca.ones, ca.zeros), (2, 2));
    }

    #[test]
    fn control_assignment_rejects_invalid_requests() {
        assert_eq!(
            control_assignment(5, 5, 1).unwrap_err(),
            LoweringError::NoAssignment { c: 5, t: 1, k: 5 }
        );
        assert_eq!(
            control_assignment(5, 2, 3).unwrap_err(),
            LoweringError::NoAssignment { c: 2, t: 3, k: 5 }
        );
        assert_eq!(
            control_assignment(4, 2, 1).unwrap_err(),
            LoweringError::BadFanIn(4)
        );
    }

    #[test]
    fn threshold_gates_compute_thresholds_exhaustively() {
        for k in [3usize, 5, 9] {
            let l = k.div_ceil(2);
            for c in 1..=l {
                for t in 1..=c {
                    let mut b = NetworkBuilder::new("tg", c);
                    let signals: Vec<NodeId> = (0..c).map(|i| b.input(i)).collect();
                    let g = threshold_gate(&mut b, &signals, t, k).unwrap();
                    b.push_output(g);
                    let report =
                        check_threshold_equivalence(&b.build(), t, VerifyMode::Exhaustive).unwrap();
                    assert!(report.equivalent, "k={k} c={c} t={t}");
                }
            }
        }
    }

    #[test]
    fn threshold_ladder_is_monotone() {
        let c = 3;
        let mut b = NetworkBuilder::new("ladder", c);
        let signals: Vec<NodeId> = (0..c).map(|i| b.input(i)).collect();
        for t in 1..=c {
            let g = threshold_gate(&mut b, &signals, t, 5).unwrap();
            b.push_output(g);
        }
        let net = b.build();
        for v in 0u64..8 {
            let outs = eval_vector(&net, &vec_bits(v, c));
            assert!(outs[0] >= outs[1] && outs[1] >= outs[2], "vector {v}");
        }
    }

    #[test]
    fn exact_hw_signals_are_one_hot() {
        let c = 3;
        let mut b = NetworkBuilder::new("hw", c);
        let signals: Vec<NodeId> = (0..c).map(|i| b.input(i)).collect();
        for s in exact_hw_signals(&mut b, &signals, 5).unwrap() {
            b.push_output(s);
        }
        let net = b.build();
        for v in 0u64..8 {
            let outs = eval_vector(&net, &vec_bits(v, c));
            let weight = v.count_ones() as usize;
            for (i, bit) in outs.iter().enumerate() {
                assert_eq!(*bit, weight == i + 1, "vector {v} indicator {}", i + 1);
            }
        }
    }

    #[test]
    fn single_signal_is_its_own_indicator() {
        let mut b = NetworkBuilder::new("hw1", 1);
        let x = b.input(0);
        let hw = exact_hw_signals(&mut b, &[x], 5).unwrap();
        assert_eq!(hw, vec![x]);
        assert_eq!(b.len(), 1);
    }

    fn tree_net(q: usize, k: usize, or: bool) -> LogicNetwork {
        let mut b = NetworkBuilder::new("tree", q);
        let ops: Vec<NodeId> = (0..q).map(|i| b.input(i)).collect();
        let root = if or {
            or_tree(&mut b, &ops, k)
        } else {
            and_tree(&mut b, &ops, k)
        };
        b.push_output(root);
        b.build()
    }

    #[test]
    fn or_tree_gate_counts_match_the_packing_formula() {
        // ceil((q-1)/(l-1)) gates: 9 operands at k=5 take 4, 7 at k=9 take 2.
        assert_eq!(tree_net(9, 5, true).stats().maj, 4);
        assert_eq!(tree_net(7, 9, true).stats().maj, 2);
        assert_eq!(tree_net(9, 5, false).stats().maj, 4);
        assert_eq!(tree_net(1, 5, true).stats().maj, 0);
        for q in 2usize..=12 {
            let l = 3;
            let expected = (q - 1).div_ceil(l - 1);
            assert_eq!(tree_net(q, 5, true).stats().maj, expected, "q={q}");
        }
    }

    #[test]
    fn trees_compute_or_and_and() {
        for q in [2usize, 5, 9] {
            let or = check_threshold_equivalence(&tree_net(q, 5, true), 1, VerifyMode::Exhaustive)
                .unwrap();
            assert!(or.equivalent, "or q={q}");
            let and =
                check_threshold_equivalence(&tree_net(q, 5, false), q, VerifyMode::Exhaustive)
                    .unwrap();
            assert!(and.equivalent, "and q={q}");
        }
    }

    #[test]
    fn de_morgan_duality_of_trees() {
        let q = 5;
        let mut b = NetworkBuilder::new("nand", q);
        let ops: Vec<NodeId> = (0..q).map(|i| b.input(i)).collect();
        let root = and_tree(&mut b, &ops, 5);
        let out = b.not(root);
        b.push_output(out);
        let lhs = b.build();

        let mut b = NetworkBuilder::new("orn", q);
        let ops: Vec<NodeId> = (0..q).map(|i| b.input(i)).collect();
        let negs: Vec<NodeId> = ops.iter().map(|&x| b.not(x)).collect();
        let root = or_tree(&mut b, &negs, 5);
        b.push_output(root);
        let rhs = b.build();

        let report = check_network_equivalence(&lhs, &rhs, VerifyMode::Exhaustive).unwrap();
        assert!(report.equivalent);
    }

    fn counter_net(c: usize) -> LogicNetwork {
        let mut b = NetworkBuilder::new("cnt", c);
        let ops: Vec<NodeId> = (0..c).map(|i| b.input(i)).collect();
        for tap in b.counter(ops).unwrap() {
            b.push_output(tap);
        }
        b.build()
    }

    #[test]
    fn lowered_half_adder_outputs_xor_and_and() {
        let lowered = lower_counters(&counter_net(2), 5).unwrap();
        assert_eq!(lowered.stats().counter, 0);
        for v in 0u64..4 {
            let bits = vec_bits(v, 2);
            let outs = eval_vector(&lowered, &bits);
            assert_eq!(outs[0], bits[0] ^ bits[1], "sum, vector {v}");
            assert_eq!(outs[1], bits[0] && bits[1], "carry, vector {v}");
        }
    }

    #[test]
    fn lowered_counters_reconstruct_the_popcount() {
        for (c, k) in [(2usize, 5usize), (3, 5), (4, 9), (5, 9), (6, 11)] {
            let lowered = lower_counters(&counter_net(c), k).unwrap();
            for v in 0..1u64 << c {
                let outs = eval_vector(&lowered, &vec_bits(v, c));
                let count = v.count_ones() as u64;
                for (j, bit) in outs.iter().enumerate() {
                    assert_eq!(*bit, (count >> j) & 1 == 1, "c={c} k={k} v={v} bit {j}");
                }
            }
        }
    }

    #[test]
    fn lowering_a_full_counter_stays_within_the_gate_budget() {
        // One (l:p) counter lowers to 2l-1 threshold/one-hot gates plus at
        // most p encoding ORs.
        for k in [3usize, 5, 9, 17] {
            let l = k.div_ceil(2);
            let p = counter_width(l) as usize;
            let lowered = lower_counters(&counter_net(l), k).unwrap();
            let stats = lowered.stats();
            assert!(stats.maj <= 2 * l + p, "k={k}: {} > 2l+p", stats.maj);
            assert_eq!(stats.not, l - 1, "k={k}");
            assert_eq!(stats.maj_arity, Some(k), "k={k}");
        }
    }

    #[test]
    fn lowering_the_reference_decomposition_counts_58_gates() {
        // M_9 over M_5: seven (3:2) counters at 7 gates each plus three
        // (2:2) counters at 3 gates each (their output bits wire through).
        let net = crate::counter::synthesize_majority_counter(9, 5).unwrap();
        let lowered = lower_counters(&net, 5).unwrap();
        let stats = lowered.stats();
        assert_eq!(stats.maj, 58);
        assert_eq!(stats.not, 17);
        assert_eq!(stats.counter, 0);
        assert_eq!(stats.maj_arity, Some(5));
        let report = check_threshold_equivalence(&lowered, 5, VerifyMode::Exhaustive).unwrap();
        assert!(report.equivalent);
        // The raw lowering still carries the cones of the four discarded
        // bin residuals; homogenize prunes them (the network is M_5-only
        // already, so no arity rewriting happens).
        let homog = homogenize(&lowered, 5).unwrap();
        assert_eq!(homog.stats().maj, 49);
        assert_eq!(homog.stats().not, 13);
        let report = check_threshold_equivalence(&homog, 5, VerifyMode::Exhaustive).unwrap();
        assert!(report.equivalent);
        // A second pass finds nothing more to remove.
        let again = homogenize(&homog, 5).unwrap();
        assert_eq!(again.stats(), homog.stats());
    }

    #[test]
    fn lower_counters_rejects_oversized_counters() {
        let err = lower_counters(&counter_net(4), 5).unwrap_err();
        assert_eq!(
            err,
            LoweringError::CounterTooWide {
                arity: 4,
                l: 3,
                k: 5
            }
        );
    }

    #[test]
    fn homogenize_collapses_mixed_gates_to_single_arity() {
        let mut b = NetworkBuilder::new("mixed", 6);
        let x: Vec<NodeId> = (0..6).map(|i| b.input(i)).collect();
        let a = b.and(vec![x[0], x[1], x[2], x[3]]);
        let o = b.or(vec![a, x[4], x[5]]);
        let n = b.not(o);
        let m = b.maj(vec![a, n, x[0]]);
        b.push_output(m);
        let mixed = b.build();

        let homog = homogenize(&mixed, 5).unwrap();
        let stats = homog.stats();
        assert_eq!(stats.and, 0);
        assert_eq!(stats.or, 0);
        assert_eq!(stats.maj_arity, Some(5));
        let report = check_network_equivalence(&mixed, &homog, VerifyMode::Exhaustive).unwrap();
        assert!(
            report.equivalent,
            "counterexample {:?}",
            report.counterexample
        );
    }

    #[test]
    fn homogenize_pads_narrow_majority_gates() {
        let mut b = NetworkBuilder::new("m3", 3);
        let ops: Vec<NodeId> = (0..3).map(|i| b.input(i)).collect();
        let m = b.maj(ops);
        b.push_output(m);
        let net = b.build();
        let homog = homogenize(&net, 5).unwrap();
        assert_eq!(homog.stats().maj_arity, Some(5));
        let report = check_network_equivalence(&net, &homog, VerifyMode::Exhaustive).unwrap();
        assert!(report.equivalent);
    }

    #[test]
    fn homogenize_is_a_fixpoint_on_homogeneous_networks() {
        let first = homogenize(&tree_net(9, 5, true), 5).unwrap();
        let second = homogenize(&first, 5).unwrap();
        assert_eq!(first.stats(), second.stats());
        assert_eq!(first.nodes().len(), second.nodes().len());
    }

    #[test]
    fn homogenize_rejects_counters_and_wide_majorities() {
        assert_eq!(
            homogenize(&counter_net(3), 5).unwrap_err(),
            LoweringError::ResidualCounter
        );
        let mut b = NetworkBuilder::new("wide", 7);
        let ops: Vec<NodeId> = (0..7).map(|i| b.input(i)).collect();
        let m = b.maj(ops);
        b.push_output(m);
        let err = homogenize(&b.build(), 5).unwrap_err();
        assert_eq!(err, LoweringError::ArityTooLarge { arity: 7, k: 5 });
    }
}
