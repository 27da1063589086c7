//! Logic network intermediate representation.
//!
//! A [`LogicNetwork`] is an immutable DAG of gates over a fixed set of
//! primary inputs. Node ids are dense and assigned in creation order, so an
//! id also serves as a topological position: every operand id is strictly
//! smaller than the id of the node that uses it. Networks are built through
//! [`NetworkBuilder`] and never mutated afterwards, which makes them safe to
//! share across threads.
//!
//! Multi-output population counters are first-class citizens: an `(n:k)`
//! counter is stored once as a [`CounterInstance`] and each of its output
//! bits appears in the node list as a `Counter { instance, tap }` node. All
//! taps of one instance carry the same operand list so that generic DAG
//! traversals (depth, reachability, export) need no special casing.

use std::collections::HashMap;

use thiserror::Error;

/// Dense index of a node inside a [`LogicNetwork`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    /// Position of the node in the network's node list.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index of a shared counter instance inside a [`LogicNetwork`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CounterId(pub u32);

impl CounterId {
    /// Position of the instance in the network's counter table.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Gate/terminal kind of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    /// Primary input with its 0-based index.
    Input(u32),
    /// Constant 0 or 1.
    Const(bool),
    /// Inverter. Complemented edges are modeled as explicit `Not` nodes;
    /// they are excluded from majority gate counts and reported separately.
    Not,
    /// Multi-input conjunction (arity >= 2).
    And,
    /// Multi-input disjunction (arity >= 2).
    Or,
    /// Majority gate of odd arity >= 3: true iff more than half of the
    /// operands are true.
    Maj,
    /// Output bit `tap` (LSB = 0) of the population count of the referenced
    /// counter instance's operands.
    Counter { instance: CounterId, tap: u8 },
}

impl NodeKind {
    /// Lower-case kind name as used in serialized netlists and stats.
    pub fn name(&self) -> &'static str {
        match self {
            NodeKind::Input(_) => "input",
            NodeKind::Const(_) => "const",
            NodeKind::Not => "not",
            NodeKind::And => "and",
            NodeKind::Or => "or",
            NodeKind::Maj => "maj",
            NodeKind::Counter { .. } => "counter",
        }
    }
}

/// One node of the DAG.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    /// Operand ids, all strictly smaller than this node's id.
    pub operands: Vec<NodeId>,
}

/// Shared record of one multi-output `(c:width)` population counter.
///
/// `width` is the number of output bits, `ceil(log2(c + 1))` for `c`
/// operands, so the taps exactly cover the binary value of the operand
/// population count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterInstance {
    pub operands: Vec<NodeId>,
    pub width: u8,
}

/// Number of output bits of a counter over `c` operands.
pub fn counter_width(c: usize) -> u8 {
    debug_assert!(c >= 1);
    (usize::BITS - c.leading_zeros()) as u8
}

/// Immutable gate-level network.
#[derive(Debug, Clone)]
pub struct LogicNetwork {
    name: String,
    num_inputs: usize,
    nodes: Vec<Node>,
    counters: Vec<CounterInstance>,
    outputs: Vec<NodeId>,
    hashing: bool,
}

impl LogicNetwork {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn counters(&self) -> &[CounterInstance] {
        &self.counters
    }

    pub fn counter(&self, id: CounterId) -> &CounterInstance {
        &self.counters[id.index()]
    }

    pub fn outputs(&self) -> &[NodeId] {
        &self.outputs
    }

    /// Whether the network was built with structural hashing enabled.
    pub fn hashing(&self) -> bool {
        self.hashing
    }

    /// Id of primary input `index`. Inputs always occupy ids `0..num_inputs`.
    pub fn input(&self, index: usize) -> NodeId {
        assert!(index < self.num_inputs, "input index out of range");
        NodeId(index as u32)
    }

    /// Gate counts, depth and arity summary of the network.
    pub fn stats(&self) -> NetworkStats {
        let mut stats = NetworkStats {
            name: self.name.clone(),
            inputs: self.num_inputs,
            ..NetworkStats::default()
        };
        let mut maj_arity: Option<usize> = None;
        let mut uniform = true;
        for node in &self.nodes {
            match node.kind {
                NodeKind::Input(_) => {}
                NodeKind::Const(_) => stats.consts += 1,
                NodeKind::Not => stats.not += 1,
                NodeKind::And => stats.and += 1,
                NodeKind::Or => stats.or += 1,
                NodeKind::Maj => {
                    stats.maj += 1;
                    match maj_arity {
                        None => maj_arity = Some(node.operands.len()),
                        Some(a) if a == node.operands.len() => {}
                        Some(_) => uniform = false,
                    }
                }
                // Counted once per instance below, not once per tap.
                NodeKind::Counter { .. } => {}
            }
        }
        stats.counter = self.counters.len();
        stats.total_gates = stats.not + stats.and + stats.or + stats.maj + stats.counter;
        stats.maj_arity = if uniform { maj_arity } else { None };
        stats.depth = self.depth();
        stats
    }

    /// Longest input-to-output path, counting gate levels. `Not` nodes are
    /// free (MIG-style complemented edges) and do not add a level; a counter
    /// instance adds a single level regardless of how many taps are used.
    fn depth(&self) -> usize {
        let mut level = vec![0usize; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            let operand_max = node
                .operands
                .iter()
                .map(|op| level[op.index()])
                .max()
                .unwrap_or(0);
            level[i] = match node.kind {
                NodeKind::Input(_) | NodeKind::Const(_) => 0,
                NodeKind::Not => operand_max,
                _ => operand_max + 1,
            };
        }
        self.outputs
            .iter()
            .map(|o| level[o.index()])
            .max()
            .unwrap_or(0)
    }

    /// Structural copy rebuilt under the given hashing mode. With hashing
    /// off the copy is node-for-node identical; with hashing on, duplicate
    /// (kind, operands) gates and identical counter instances merge.
    pub fn with_hashing(&self, enabled: bool) -> LogicNetwork {
        let mut b = NetworkBuilder::new(self.name.clone(), self.num_inputs);
        b.set_hashing(enabled);
        let mut map: Vec<NodeId> = Vec::with_capacity(self.nodes.len());
        let mut instances: HashMap<CounterId, CounterId> = HashMap::new();
        for node in &self.nodes {
            let new_id = match node.kind {
                NodeKind::Input(i) => b.input(i as usize),
                NodeKind::Const(v) => b.constant(v),
                NodeKind::Counter { instance, tap } => {
                    let new_instance = match instances.get(&instance) {
                        Some(&cid) => cid,
                        None => {
                            let ops: Vec<NodeId> = self
                                .counter(instance)
                                .operands
                                .iter()
                                .map(|op| map[op.index()])
                                .collect();
                            let cid = b.counter_instance(ops).expect("source counter is valid");
                            instances.insert(instance, cid);
                            cid
                        }
                    };
                    b.counter_tap(new_instance, tap).expect("tap fits width")
                }
                kind => {
                    let ops: Vec<NodeId> = node.operands.iter().map(|op| map[op.index()]).collect();
                    b.try_add(kind, ops).expect("source network is well-formed")
                }
            };
            map.push(new_id);
        }
        for out in &self.outputs {
            b.push_output(map[out.index()]);
        }
        b.build()
    }

    /// Copy with every node unreachable from the outputs removed. A counter
    /// instance stays when any of its taps is live (the instance's operands
    /// are then live too); dangling taps of a live instance are dropped.
    pub fn prune_dangling(&self) -> LogicNetwork {
        let mut live = vec![false; self.nodes.len()];
        let mut stack: Vec<NodeId> = self.outputs.clone();
        while let Some(id) = stack.pop() {
            if live[id.index()] {
                continue;
            }
            live[id.index()] = true;
            let node = &self.nodes[id.index()];
            stack.extend_from_slice(&node.operands);
            if let NodeKind::Counter { instance, .. } = node.kind {
                stack.extend_from_slice(&self.counter(instance).operands);
            }
        }

        let mut b = NetworkBuilder::new(self.name.clone(), self.num_inputs);
        b.set_hashing(self.hashing);
        let mut map: Vec<Option<NodeId>> = vec![None; self.nodes.len()];
        let mut instances: HashMap<CounterId, CounterId> = HashMap::new();
        for (i, node) in self.nodes.iter().enumerate() {
            if let NodeKind::Input(index) = node.kind {
                map[i] = Some(b.input(index as usize));
                continue;
            }
            if !live[i] {
                continue;
            }
            let remap = |ops: &[NodeId], map: &[Option<NodeId>]| -> Vec<NodeId> {
                ops.iter()
                    .map(|op| map[op.index()].expect("operand of a live node is live"))
                    .collect()
            };
            let new_id = match node.kind {
                NodeKind::Input(_) => unreachable!(),
                NodeKind::Const(v) => b.constant(v),
                NodeKind::Counter { instance, tap } => {
                    let new_instance = match instances.get(&instance) {
                        Some(&cid) => cid,
                        None => {
                            let ops = remap(&self.counter(instance).operands, &map);
                            let cid = b.counter_instance(ops).expect("source counter is valid");
                            instances.insert(instance, cid);
                            cid
                        }
                    };
                    b.counter_tap(new_instance, tap).expect("tap fits width")
                }
                kind => {
                    let ops = remap(&node.operands, &map);
                    b.try_add(kind, ops).expect("source network is well-formed")
                }
            };
            map[i] = Some(new_id);
        }
        for out in &self.outputs {
            b.push_output(map[out.index()].expect("outputs are live"));
        }
        b.build()
    }
}

/// Aggregate size/shape measurements of a [`LogicNetwork`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NetworkStats {
    pub name: String,
    pub inputs: usize,
    pub consts: usize,
    pub not: usize,
    pub and: usize,
    pub or: usize,
    pub maj: usize,
    /// Counter instances (taps of one instance count once).
    pub counter: usize,
    /// All non-input, non-constant nodes; counters count once per instance.
    pub total_gates: usize,
    /// Longest input-to-output path in gate levels (inverters are free).
    pub depth: usize,
    /// Common arity of all `Maj` nodes, if uniform and at least one exists.
    pub maj_arity: Option<usize>,
}

/// Errors raised while building or validating a network.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum IrError {
    #[error("{kind} node requires {expected}, got {got} operand(s)")]
    BadArity {
        kind: &'static str,
        expected: &'static str,
        got: usize,
    },
    #[error("operand id {0} does not name an existing node")]
    UnknownOperand(u32),
    #[error("input index {index} out of range for {num_inputs} inputs")]
    UnknownInput { index: usize, num_inputs: usize },
    #[error("counter tap {tap} out of range for width {width}")]
    BadCounterTap { tap: u8, width: u8 },
    #[error("node kind {0} cannot be added directly")]
    NotDirectlyConstructible(&'static str),
}

/// Incremental constructor for [`LogicNetwork`].
///
/// Primary inputs are created eagerly so that input `i` always has id `i`.
/// With structural hashing enabled (the default), adding a gate whose kind
/// and operand list match an existing node returns the existing id instead
/// of growing the network; the toggle exists so gate-count measurements can
/// be taken without any sharing.
#[derive(Debug)]
pub struct NetworkBuilder {
    name: String,
    num_inputs: usize,
    nodes: Vec<Node>,
    counters: Vec<CounterInstance>,
    outputs: Vec<NodeId>,
    hashing: bool,
    dedup: HashMap<(NodeKind, Vec<NodeId>), NodeId>,
    counter_dedup: HashMap<Vec<NodeId>, CounterId>,
    consts: [Option<NodeId>; 2],
}

impl NetworkBuilder {
    /// Start a network with `num_inputs` primary inputs and hashing on.
    pub fn new(name: impl Into<String>, num_inputs: usize) -> Self {
        let nodes = (0..num_inputs)
            .map(|i| Node {
                kind: NodeKind::Input(i as u32),
                operands: Vec::new(),
            })
            .collect();
        NetworkBuilder {
            name: name.into(),
            num_inputs,
            nodes,
            counters: Vec::new(),
            outputs: Vec::new(),
            hashing: true,
            dedup: HashMap::new(),
            counter_dedup: HashMap::new(),
            consts: [None, None],
        }
    }

    /// Enable or disable structural hashing for subsequently added gates.
    pub fn set_hashing(&mut self, enabled: bool) -> &mut Self {
        self.hashing = enabled;
        self
    }

    pub fn hashing(&self) -> bool {
        self.hashing
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn kind(&self, id: NodeId) -> NodeKind {
        self.nodes[id.index()].kind
    }

    pub fn operands(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id.index()].operands
    }

    /// Id of primary input `index`.
    pub fn input(&self, index: usize) -> NodeId {
        assert!(index < self.num_inputs, "input index out of range");
        NodeId(index as u32)
    }

    fn push_node(&mut self, kind: NodeKind, operands: Vec<NodeId>) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(Node { kind, operands });
        id
    }

    fn intern(&mut self, kind: NodeKind, operands: Vec<NodeId>) -> NodeId {
        if self.hashing {
            if let Some(&id) = self.dedup.get(&(kind, operands.clone())) {
                return id;
            }
            let id = self.push_node(kind, operands.clone());
            self.dedup.insert((kind, operands), id);
            id
        } else {
            self.push_node(kind, operands)
        }
    }

    /// Constant node for `value`. Constants are always shared.
    pub fn constant(&mut self, value: bool) -> NodeId {
        if let Some(id) = self.consts[value as usize] {
            return id;
        }
        let id = self.push_node(NodeKind::Const(value), Vec::new());
        self.consts[value as usize] = Some(id);
        id
    }

    /// Add a `Not`/`And`/`Or`/`Maj` gate after validating arity and operand
    /// ids. Inputs, constants and counters have dedicated constructors.
    pub fn try_add(&mut self, kind: NodeKind, operands: Vec<NodeId>) -> Result<NodeId, IrError> {
        for op in &operands {
            if op.index() >= self.nodes.len() {
                return Err(IrError::UnknownOperand(op.0));
            }
        }
        let got = operands.len();
        match kind {
            NodeKind::Not if got != 1 => Err(IrError::BadArity {
                kind: "not",
                expected: "exactly 1 operand",
                got,
            }),
            NodeKind::And if got < 2 => Err(IrError::BadArity {
                kind: "and",
                expected: "at least 2 operands",
                got,
            }),
            NodeKind::Or if got < 2 => Err(IrError::BadArity {
                kind: "or",
                expected: "at least 2 operands",
                got,
            }),
            NodeKind::Maj if got < 3 || got.is_multiple_of(2) => Err(IrError::BadArity {
                kind: "maj",
                expected: "odd arity of at least 3",
                got,
            }),
            NodeKind::Not | NodeKind::And | NodeKind::Or | NodeKind::Maj => {
                Ok(self.intern(kind, operands))
            }
            other => Err(IrError::NotDirectlyConstructible(other.name())),
        }
    }

    pub fn not(&mut self, a: NodeId) -> NodeId {
        self.try_add(NodeKind::Not, vec![a]).expect("valid not")
    }

    pub fn and(&mut self, operands: Vec<NodeId>) -> NodeId {
        self.try_add(NodeKind::And, operands).expect("valid and")
    }

    pub fn or(&mut self, operands: Vec<NodeId>) -> NodeId {
        self.try_add(NodeKind::Or, operands).expect("valid or")
    }

    pub fn maj(&mut self, operands: Vec<NodeId>) -> NodeId {
        self.try_add(NodeKind::Maj, operands).expect("valid maj")
    }

    /// Create a counter instance over `operands` without taps. Used by
    /// deserialization; synthesis goes through [`NetworkBuilder::counter`].
    pub fn counter_instance(&mut self, operands: Vec<NodeId>) -> Result<CounterId, IrError> {
        for op in &operands {
            if op.index() >= self.nodes.len() {
                return Err(IrError::UnknownOperand(op.0));
            }
        }
        if operands.len() < 2 {
            return Err(IrError::BadArity {
                kind: "counter",
                expected: "at least 2 operands",
                got: operands.len(),
            });
        }
        if self.hashing {
            if let Some(&cid) = self.counter_dedup.get(&operands) {
                return Ok(cid);
            }
        }
        let cid = CounterId(self.counters.len() as u32);
        let width = counter_width(operands.len());
        if self.hashing {
            self.counter_dedup.insert(operands.clone(), cid);
        }
        self.counters.push(CounterInstance { operands, width });
        Ok(cid)
    }

    /// Output-bit node `tap` of counter `instance`.
    pub fn counter_tap(&mut self, instance: CounterId, tap: u8) -> Result<NodeId, IrError> {
        let inst = &self.counters[instance.index()];
        if tap >= inst.width {
            return Err(IrError::BadCounterTap {
                tap,
                width: inst.width,
            });
        }
        let operands = inst.operands.clone();
        Ok(self.intern(NodeKind::Counter { instance, tap }, operands))
    }

    /// Add a population counter over `operands` and return all of its output
    /// bit nodes, least significant first.
    pub fn counter(&mut self, operands: Vec<NodeId>) -> Result<Vec<NodeId>, IrError> {
        let cid = self.counter_instance(operands)?;
        let width = self.counters[cid.index()].width;
        (0..width).map(|tap| self.counter_tap(cid, tap)).collect()
    }

    pub fn push_output(&mut self, id: NodeId) {
        assert!(id.index() < self.nodes.len(), "output id out of range");
        self.outputs.push(id);
    }

    /// Finish construction and freeze the network.
    pub fn build(self) -> LogicNetwork {
        LogicNetwork {
            name: self.name,
            num_inputs: self.num_inputs,
            nodes: self.nodes,
            counters: self.counters,
            outputs: self.outputs,
            hashing: self.hashing,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_take_the_first_ids() {
        let b = NetworkBuilder::new("t", 4);
        for i in 0..4 {
            assert_eq!(b.input(i), NodeId(i as u32));
            assert_eq!(b.kind(NodeId(i as u32)), NodeKind::Input(i as u32));
        }
    }

    #[test]
    fn even_majority_arity_is_rejected() {
        let mut b = NetworkBuilder::new("t", 2);
        let a = b.input(0);
        let c = b.input(1);
        let err = b.try_add(NodeKind::Maj, vec![a, c]).unwrap_err();
        assert!(matches!(err, IrError::BadArity { kind: "maj", .. }));
    }

    #[test]
    fn unknown_operand_is_rejected() {
        let mut b = NetworkBuilder::new("t", 1);
        let err = b.try_add(NodeKind::Not, vec![NodeId(7)]).unwrap_err();
        assert_eq!(err, IrError::UnknownOperand(7));
    }

    #[test]
    fn structural_hashing_dedupes_and_toggle_disables_it() {
        let mut b = NetworkBuilder::new("t", 1);
        let x = b.input(0);
        let n1 = b.not(x);
        let n2 = b.not(x);
        assert_eq!(n1, n2);
        b.set_hashing(false);
        let n3 = b.not(x);
        assert_ne!(n1, n3);
    }

    #[test]
    fn counter_taps_share_one_instance() {
        let mut b = NetworkBuilder::new("t", 3);
        let ops = vec![b.input(0), b.input(1), b.input(2)];
        let taps = b.counter(ops.clone()).unwrap();
        assert_eq!(taps.len(), 2); // (3:2) counter
        let net_taps = b.counter(ops).unwrap();
        assert_eq!(taps, net_taps); // hashing reuses the instance
        let net = b.build();
        assert_eq!(net.counters().len(), 1);
        assert_eq!(net.stats().counter, 1);
        assert_eq!(net.stats().total_gates, 1);
    }

    #[test]
    fn rebuilding_with_hashing_merges_duplicates_and_copies_verbatim() {
        let mut b = NetworkBuilder::new("dup", 2);
        b.set_hashing(false);
        let x = b.input(0);
        let y = b.input(1);
        let a1 = b.and(vec![x, y]);
        let a2 = b.and(vec![x, y]);
        let taps1 = b.counter(vec![x, y]).unwrap();
        let taps2 = b.counter(vec![x, y]).unwrap();
        let o = b.or(vec![a1, a2, taps1[0], taps2[0]]);
        b.push_output(o);
        let net = b.build();
        assert_eq!((net.stats().and, net.stats().counter), (2, 2));

        let verbatim = net.with_hashing(false);
        assert_eq!(verbatim.nodes().len(), net.nodes().len());
        assert_eq!(verbatim.stats(), net.stats());
        assert_eq!(verbatim.outputs(), net.outputs());

        let merged = net.with_hashing(true);
        assert_eq!((merged.stats().and, merged.stats().counter), (1, 1));
        assert!(merged.hashing());
        assert!(!verbatim.hashing());
    }

    #[test]
    fn pruning_drops_dead_cones_but_keeps_live_counter_instances() {
        let mut b = NetworkBuilder::new("dead", 3);
        let x = b.input(0);
        let y = b.input(1);
        let z = b.input(2);
        let live = b.and(vec![x, y]);
        let dead_feed = b.or(vec![y, z]);
        let dead = b.maj(vec![x, dead_feed, z]);
        let _ = b.not(dead);
        let taps = b.counter(vec![x, y, z]).unwrap();
        // Only tap 0 is consumed; tap 1 dangles like a discarded residual.
        let o = b.or(vec![live, taps[0]]);
        b.push_output(o);
        let net = b.build();
        assert_eq!(net.stats().total_gates, 6);

        let pruned = net.prune_dangling();
        let stats = pruned.stats();
        assert_eq!((stats.and, stats.or, stats.maj, stats.not), (1, 1, 0, 0));
        assert_eq!(stats.counter, 1, "instance with a live tap survives");
        assert_eq!(pruned.counters()[0].operands.len(), 3);
        // Inputs always remain addressable, even input 2 whose only gate died.
        assert_eq!(pruned.num_inputs(), 3);
        let report = crate::verify::check_network_equivalence(
            &net,
            &pruned,
            crate::verify::VerifyMode::Exhaustive,
        )
        .unwrap();
        assert!(report.equivalent);
        // A fully live network is untouched.
        assert_eq!(pruned.prune_dangling().stats(), stats);
    }

    #[test]
    fn counter_width_matches_popcount_range() {
        assert_eq!(counter_width(1), 1);
        assert_eq!(counter_width(2), 2);
        assert_eq!(counter_width(3), 2);
        assert_eq!(counter_width(4), 3);
        assert_eq!(counter_width(5), 3);
        assert_eq!(counter_width(8), 4);
    }

    #[test]
    fn stats_on_the_identity_network() {
        let mut b = NetworkBuilder::new("wire", 1);
        let x = b.input(0);
        b.push_output(x);
        let s = b.build().stats();
        assert_eq!(s.total_gates, 0);
        assert_eq!(s.depth, 0);
        assert_eq!(s.maj_arity, None);
    }

    #[test]
    fn stats_on_a_single_majority_gate() {
        let mut b = NetworkBuilder::new("m3", 3);
        let ops = vec![b.input(0), b.input(1), b.input(2)];
        let m = b.maj(ops);
        b.push_output(m);
        let s = b.build().stats();
        assert_eq!(s.maj, 1);
        assert_eq!(s.total_gates, 1);
        assert_eq!(s.depth, 1);
        assert_eq!(s.maj_arity, Some(3));
    }

    #[test]
    fn inverters_do_not_add_depth() {
        let mut b = NetworkBuilder::new("t", 2);
        let x = b.input(0);
        let y = b.input(1);
        let nx = b.not(x);
        let a = b.and(vec![nx, y]);
        let na = b.not(a);
        b.push_output(na);
        let net = b.build();
        assert_eq!(net.stats().depth, 1);
        assert_eq!(net.stats().not, 2);
    }

    #[test]
    fn operands_always_precede_their_users() {
        let mut b = NetworkBuilder::new("t", 3);
        let ops = vec![b.input(0), b.input(1), b.input(2)];
        let m = b.maj(ops);
        let n = b.not(m);
        b.push_output(n);
        let net = b.build();
        for (i, node) in net.nodes().iter().enumerate() {
            for op in &node.operands {
                assert!(op.index() < i, "operand {op:?} not before node {i}");
            }
        }
    }
}
