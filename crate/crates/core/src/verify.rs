//! Simulation-based equivalence checking.
//!
//! Networks are simulated 64 input vectors at a time: every node value is a
//! `u64` word whose bit `j` is the node's value under lane `j` of the block.
//! Majority gates and counter taps are evaluated through a bit-sliced ripple
//! accumulator, so a block costs `O(arity * log(arity))` word operations per
//! gate. The popcount oracle used by threshold checks runs through
//! `u64::count_ones` on the raw vector index instead, which keeps the two
//! sides of every comparison on independent code paths.
//!
//! Exhaustive mode enumerates all `2^n` assignments (capped at
//! [`EXHAUSTIVE_INPUT_LIMIT`] inputs). Sampled mode draws uniform vectors
//! plus stratified vectors of Hamming weight `t-2 ..= t+1` around the
//! threshold boundary, from a seeded, reproducible generator. Vectors are
//! checked in order and the first counterexample by vector index wins.

use crate::ir::{LogicNetwork, NodeKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Exhaustive checking refuses networks with more inputs than this.
pub const EXHAUSTIVE_INPUT_LIMIT: usize = 24;
/// Default number of uniform random vectors in sampled mode.
pub const DEFAULT_UNIFORM_SAMPLES: usize = 100_000;
/// Default number of vectors per boundary Hamming-weight class.
pub const DEFAULT_BOUNDARY_SAMPLES: usize = 1_000;
/// Default RNG seed for sampled mode.
pub const DEFAULT_SEED: u64 = 42;

/// Parameters of sampled verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampledConfig {
    pub uniform: usize,
    pub per_boundary: usize,
    pub seed: u64,
}

impl Default for SampledConfig {
    fn default() -> Self {
        SampledConfig {
            uniform: DEFAULT_UNIFORM_SAMPLES,
            per_boundary: DEFAULT_BOUNDARY_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

impl SampledConfig {
    pub fn with_seed(seed: u64) -> Self {
        SampledConfig {
            seed,
            ..SampledConfig::default()
        }
    }
}

/// How an equivalence check enumerates input vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Sampled(SampledConfig),
}

/// Outcome of an equivalence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub equivalent: bool,
    pub vectors_checked: u64,
    /// First failing input assignment in vector-index order, if any.
    pub counterexample: Option<Vec<bool>>,
    /// "exhaustive" or "sampled".
    pub mode: &'static str,
    /// Seed used by sampled mode.
    pub seed: Option<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("exhaustive verification supports at most {limit} inputs, network has {n}")]
    TooManyInputs { n: usize, limit: usize },
    #[error("networks have different input counts: {0} vs {1}")]
    InputCountMismatch(usize, usize),
    #[error("networks have different output counts: {0} vs {1}")]
    OutputCountMismatch(usize, usize),
    #[error("threshold {t} out of range 1..={n}")]
    ThresholdOutOfRange { t: usize, n: usize },
    #[error("network has no outputs")]
    NoOutputs,
}

/// Add `word` into a bit-sliced accumulator (LSB slice first).
fn sliced_add(acc: &mut [u64], word: u64) {
    let mut carry = word;
    for slot in acc.iter_mut() {
        if carry == 0 {
            return;
        }
        let sum = *slot ^ carry;
        carry &= *slot;
        *slot = sum;
    }
    debug_assert_eq!(carry, 0, "bit-sliced accumulator overflow");
}

/// Lanewise `count >= t` over a bit-sliced accumulator.
fn sliced_ge(acc: &[u64], t: u64) -> u64 {
    debug_assert!(t >> acc.len() == 0);
    let mut gt = 0u64;
    let mut eq = !0u64;
    for d in (0..acc.len()).rev() {
        let x = acc[d];
        if (t >> d) & 1 == 1 {
            eq &= x;
        } else {
            gt |= eq & x;
            eq &= !x;
        }
    }
    gt | eq
}

/// Block evaluator holding reusable per-node value buffers.
struct BlockEvaluator<'a> {
    net: &'a LogicNetwork,
    values: Vec<u64>,
    counter_slices: Vec<Option<Vec<u64>>>,
}

impl<'a> BlockEvaluator<'a> {
    fn new(net: &'a LogicNetwork) -> Self {
        BlockEvaluator {
            net,
            values: vec![0; net.nodes().len()],
            counter_slices: vec![None; net.counters().len()],
        }
    }

    /// Evaluate one 64-lane block. `inputs[i]` carries input `i` across all
    /// lanes. Returns one word per network output.
    fn eval(&mut self, inputs: &[u64]) -> Vec<u64> {
        for s in self.counter_slices.iter_mut() {
            *s = None;
        }
        for (idx, node) in self.net.nodes().iter().enumerate() {
            let value = match node.kind {
                NodeKind::Input(i) => inputs[i as usize],
                NodeKind::Const(v) => {
                    if v {
                        !0
                    } else {
                        0
                    }
                }
                NodeKind::Not => !self.values[node.operands[0].index()],
                NodeKind::And => node
                    .operands
                    .iter()
                    .fold(!0u64, |acc, op| acc & self.values[op.index()]),
                NodeKind::Or => node
                    .operands
                    .iter()
                    .fold(0u64, |acc, op| acc | self.values[op.index()]),
                NodeKind::Maj => {
                    let arity = node.operands.len();
                    let mut acc = vec![0u64; crate::ir::counter_width(arity) as usize];
                    for op in &node.operands {
                        sliced_add(&mut acc, self.values[op.index()]);
                    }
                    sliced_ge(&acc, (arity.div_ceil(2)) as u64)
                }
                NodeKind::Counter { instance, tap } => {
                    let slot = instance.index();
                    if self.counter_slices[slot].is_none() {
                        let ops = &self.net.counter(instance).operands;
                        let mut acc = vec![0u64; crate::ir::counter_width(ops.len()) as usize];
                        for op in ops {
                            sliced_add(&mut acc, self.values[op.index()]);
                        }
                        self.counter_slices[slot] = Some(acc);
                    }
                    self.counter_slices[slot].as_ref().unwrap()[tap as usize]
                }
            };
            self.values[idx] = value;
        }
        self.net
            .outputs()
            .iter()
            .map(|o| self.values[o.index()])
            .collect()
    }
}

/// Reference evaluator: one vector at a time, plain booleans. Deliberately
/// naive so it can serve as an independent cross-check of the block
/// evaluator and for replaying counterexamples.
pub fn eval_vector(net: &LogicNetwork, bits: &[bool]) -> Vec<bool> {
    let values = eval_vector_nodes(net, bits);
    net.outputs().iter().map(|o| values[o.index()]).collect()
}

/// Per-node values of the reference evaluator.
pub(crate) fn eval_vector_nodes(net: &LogicNetwork, bits: &[bool]) -> Vec<bool> {
    assert_eq!(bits.len(), net.num_inputs(), "input width mismatch");
    let mut values = vec![false; net.nodes().len()];
    for (idx, node) in net.nodes().iter().enumerate() {
        values[idx] = match node.kind {
            NodeKind::Input(i) => bits[i as usize],
            NodeKind::Const(v) => v,
            NodeKind::Not => !values[node.operands[0].index()],
            NodeKind::And => node.operands.iter().all(|op| values[op.index()]),
            NodeKind::Or => node.operands.iter().any(|op| values[op.index()]),
            NodeKind::Maj => {
                let count = node.operands.iter().filter(|op| values[op.index()]).count();
                count > node.operands.len() / 2
            }
            NodeKind::Counter { tap, .. } => {
                let count = node.operands.iter().filter(|op| values[op.index()]).count();
                (count >> tap) & 1 == 1
            }
        };
    }
    values
}

/// Input word for exhaustive lane blocks: lane `j` of block `base` holds
/// vector `base + j`, input `i` is bit `i` of the vector index.
fn exhaustive_input_word(i: usize, base: u64) -> u64 {
    const LOW: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    if i < 6 {
        LOW[i]
    } else if (base >> i) & 1 == 1 {
        !0
    } else {
        0
    }
}

fn bitset_get(v: &[u64], i: usize) -> bool {
    (v[i / 64] >> (i % 64)) & 1 == 1
}

fn bitset_to_bools(v: &[u64], n: usize) -> Vec<bool> {
    (0..n).map(|i| bitset_get(v, i)).collect()
}

/// Hamming-weight classes sampled around threshold `t`: `t-2 ..= t+1`,
/// clamped to the valid `0 ..= n` range.
fn boundary_weights(n: usize, t: usize) -> Vec<usize> {
    let mut weights = Vec::new();
    for d in -2i64..=1 {
        let w = t as i64 + d;
        if w >= 0 && w <= n as i64 && !weights.contains(&(w as usize)) {
            weights.push(w as usize);
        }
    }
    weights
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<u64> {
    let words = n.div_ceil(64);
    let mut v: Vec<u64> = (0..words).map(|_| rng.gen()).collect();
    if !n.is_multiple_of(64) {
        v[words - 1] &= (1u64 << (n % 64)) - 1;
    }
    v
}

fn random_vector_of_weight(rng: &mut ChaCha8Rng, n: usize, weight: usize) -> Vec<u64> {
    debug_assert!(weight <= n);
    let mut idx: Vec<u32> = (0..n as u32).collect();
    let mut v = vec![0u64; n.div_ceil(64)];
    for i in 0..weight {
        let j = rng.gen_range(i..n);
        idx.swap(i, j);
        let pos = idx[i] as usize;
        v[pos / 64] |= 1u64 << (pos % 64);
    }
    v
}

/// Sample set for sampled mode: uniform vectors first, then the boundary
/// strata (only when a threshold is given), in ascending-weight order.
pub(crate) fn sampled_vectors(n: usize, t: Option<usize>, cfg: &SampledConfig) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut vectors = Vec::with_capacity(cfg.uniform + 4 * cfg.per_boundary);
    for _ in 0..cfg.uniform {
        vectors.push(random_vector(&mut rng, n));
    }
    if let Some(t) = t {
        for w in boundary_weights(n, t) {
            for _ in 0..cfg.per_boundary {
                vectors.push(random_vector_of_weight(&mut rng, n, w));
            }
        }
    }
    vectors
}

fn bitset_weight(v: &[u64]) -> usize {
    v.iter().map(|w| w.count_ones() as usize).sum()
}

/// Network-vs-oracle and network-vs-network checks share this driver: it
/// walks vector blocks through the evaluators and compares per-lane output
/// words produced by `lhs` and `rhs`.
enum Rhs<'a> {
    /// Popcount-threshold oracle, computed from the raw vector.
    Threshold(usize),
    Network(BlockEvaluator<'a>),
}

fn run_exhaustive(
    net: &LogicNetwork,
    mut rhs: Rhs,
) -> Result<(u64, Option<Vec<bool>>), VerifyError> {
    let n = net.num_inputs();
    if n > EXHAUSTIVE_INPUT_LIMIT {
        return Err(VerifyError::TooManyInputs {
            n,
            limit: EXHAUSTIVE_INPUT_LIMIT,
        });
    }
    let total: u64 = 1u64 << n;
    let mut lhs = BlockEvaluator::new(net);
    let mut inputs = vec![0u64; n];
    let mut base = 0u64;
    while base < total {
        let lanes = 64.min(total - base);
        for (i, slot) in inputs.iter_mut().enumerate() {
            *slot = exhaustive_input_word(i, base);
        }
        let lhs_out = lhs.eval(&inputs);
        let rhs_out: Vec<u64> = match rhs {
            Rhs::Threshold(t) => {
                let mut word = 0u64;
                for j in 0..lanes {
                    let weight = (base + j).count_ones() as usize;
                    word |= ((weight >= t) as u64) << j;
                }
                vec![word]
            }
            Rhs::Network(ref mut eval) => eval.eval(&inputs),
        };
        let mask = if lanes == 64 {
            !0u64
        } else {
            (1u64 << lanes) - 1
        };
        for (a, b) in lhs_out.iter().zip(rhs_out.iter()) {
            let diff = (a ^ b) & mask;
            if diff != 0 {
                let v = base + diff.trailing_zeros() as u64;
                let bits = (0..n).map(|i| (v >> i) & 1 == 1).collect();
                return Ok((v + 1, Some(bits)));
            }
        }
        base += 64;
    }
    Ok((total, None))
}

fn run_sampled(
    net: &LogicNetwork,
    mut rhs: Rhs,
    t_for_strata: Option<usize>,
    cfg: &SampledConfig,
) -> (u64, Option<Vec<bool>>) {
    let n = net.num_inputs();
    let vectors = sampled_vectors(n, t_for_strata, cfg);
    let mut lhs = BlockEvaluator::new(net);
    let mut inputs = vec![0u64; n];
    let mut checked = 0u64;
    for chunk in vectors.chunks(64) {
        let lanes = chunk.len();
        for (i, slot) in inputs.iter_mut().enumerate() {
            let mut word = 0u64;
            for (j, v) in chunk.iter().enumerate() {
                word |= (bitset_get(v, i) as u64) << j;
            }
            *slot = word;
        }
        let lhs_out = lhs.eval(&inputs);
        let rhs_out: Vec<u64> = match rhs {
            Rhs::Threshold(t) => {
                let mut word = 0u64;
                for (j, v) in chunk.iter().enumerate() {
                    word |= ((bitset_weight(v) >= t) as u64) << j;
                }
                vec![word]
            }
            Rhs::Network(ref mut eval) => eval.eval(&inputs),
        };
        let mask = if lanes == 64 {
            !0u64
        } else {
            (1u64 << lanes) - 1
        };
        for (a, b) in lhs_out.iter().zip(rhs_out.iter()) {
            let diff = (a ^ b) & mask;
            if diff != 0 {
                let j = diff.trailing_zeros() as usize;
                return (checked + j as u64 + 1, Some(bitset_to_bools(&chunk[j], n)));
            }
        }
        checked += lanes as u64;
    }
    (checked, None)
}

/// Check that output 0 of `net` equals the predicate "Hamming weight of the
/// inputs >= t" on every (exhaustive) or every sampled input vector.
pub fn check_threshold_equivalence(
    net: &LogicNetwork,
    t: usize,
    mode: VerifyMode,
) -> Result<VerificationReport, VerifyError> {
    let n = net.num_inputs();
    if net.outputs().is_empty() {
        return Err(VerifyError::NoOutputs);
    }
    if t == 0 || t > n {
        return Err(VerifyError::ThresholdOutOfRange { t, n });
    }
    match mode {
        VerifyMode::Exhaustive => {
            let (checked, cex) = run_exhaustive(net, Rhs::Threshold(t))?;
            Ok(VerificationReport {
                equivalent: cex.is_none(),
                vectors_checked: checked,
                counterexample: cex,
                mode: "exhaustive",
                seed: None,
            })
        }
        VerifyMode::Sampled(cfg) => {
            let (checked, cex) = run_sampled(net, Rhs::Threshold(t), Some(t), &cfg);
            Ok(VerificationReport {
                equivalent: cex.is_none(),
                vectors_checked: checked,
                counterexample: cex,
                mode: "sampled",
                seed: Some(cfg.seed),
            })
        }
    }
}

/// Check that two networks agree on all outputs. Sampled mode uses uniform
/// vectors only, since there is no threshold to stratify around.
pub fn check_network_equivalence(
    a: &LogicNetwork,
    b: &LogicNetwork,
    mode: VerifyMode,
) -> Result<VerificationReport, VerifyError> {
    if a.num_inputs() != b.num_inputs() {
        return Err(VerifyError::InputCountMismatch(
            a.num_inputs(),
            b.num_inputs(),
        ));
    }
    if a.outputs().len() != b.outputs().len() {
        return Err(VerifyError::OutputCountMismatch(
            a.outputs().len(),
            b.outputs().len(),
        ));
    }
    if a.outputs().is_empty() {
        return Err(VerifyError::NoOutputs);
    }
    match mode {
        VerifyMode::Exhaustive => {
            let (checked, cex) = run_exhaustive(a, Rhs::Network(BlockEvaluator::new(b)))?;
            Ok(VerificationReport {
                equivalent: cex.is_none(),
                vectors_checked: checked,
                counterexample: cex,
                mode: "exhaustive",
                seed: None,
            })
        }
        VerifyMode::Sampled(cfg) => {
            let (checked, cex) = run_sampled(a, Rhs::Network(BlockEvaluator::new(b)), None, &cfg);
            Ok(VerificationReport {
                equivalent: cex.is_none(),
                vectors_checked: checked,
                counterexample: cex,
                mode: "sampled",
                seed: Some(cfg.seed),
            })
        }
    }
}
