//! Counter-graph threshold synthesis.
//!
//! `HW(x) >= t` is rephrased as an overflow test: with `B = ceil(log2(n+1))`
//! and the constant `T = 2^B - t`, the sum `HW(x) + T` reaches `2^B` exactly
//! when the threshold is met, and stays below `2^(B+1)` always. The
//! construction therefore
//!
//! 1. splits the inputs into groups of `l = ceil(k/2)` and counts each group
//!    with one counter,
//! 2. drops the group count bits and the binary digits of `T` into weight
//!    bins (bin `b` holds signals worth `2^(b-1)`),
//! 3. reduces every bin in ascending order with counters of at most `l`
//!    inputs — each counter returns its sum bit to the bin and carries its
//!    higher bits upward,
//! 4. reads the answer off the overflow bins `> B` (OR-ed when more than
//!    one such bin was created; the bins past `B+1` are always 0).
//!
//! The result still contains counter nodes; [`crate::lowering`] turns them
//! into `M_k` gates.

use crate::ir::{counter_width, LogicNetwork, NetworkBuilder, NodeId};
use crate::lowering::{ensure_fan_in, or_tree, threshold_gate, LoweringError};
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, VecDeque};
use std::ops::Range;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SynthesisError {
    #[error("input count must be an odd number >= 1, got {0}")]
    EvenInputs(usize),
    #[error("input count must be >= 1")]
    NoInputs,
    #[error("threshold {t} out of range 1..={n}")]
    ThresholdOutOfRange { t: usize, n: usize },
    #[error(transparent)]
    Lowering(#[from] LoweringError),
}

/// Shape of the counters used by a reduction: up to `max_inputs` operands,
/// `outputs = ceil(log2(max_inputs+1))` binary output bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterSpec {
    pub max_inputs: usize,
    pub outputs: u8,
}

impl CounterSpec {
    /// Counter shape for lowering onto `M_k`: `l = ceil(k/2)` inputs.
    pub fn for_fan_in(k: usize) -> Result<CounterSpec, SynthesisError> {
        ensure_fan_in(k)?;
        let l = k.div_ceil(2);
        Ok(CounterSpec {
            max_inputs: l,
            outputs: counter_width(l),
        })
    }
}

/// The additive constant that turns a threshold test into an overflow test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThresholdTarget {
    pub n: usize,
    pub t: usize,
    /// Number of bins below the overflow bin: `B = ceil(log2(n+1))`.
    pub bins: u32,
    /// `T = 2^B - t`; adding it makes `HW + T >= 2^B` iff `HW >= t`.
    pub constant: u64,
}

/// Compute `B` and `T = 2^B - t` for an `n`-input threshold-`t` function.
pub fn threshold_constant(n: usize, t: usize) -> Result<ThresholdTarget, SynthesisError> {
    if n == 0 {
        return Err(SynthesisError::NoInputs);
    }
    if t < 1 || t > n {
        return Err(SynthesisError::ThresholdOutOfRange { t, n });
    }
    let bins = usize::BITS - n.leading_zeros();
    Ok(ThresholdTarget {
        n,
        t,
        bins,
        constant: (1u64 << bins) - t as u64,
    })
}

/// Split `0..n` into consecutive groups of `l = ceil(k/2)` input indices;
/// the last group may be shorter.
pub fn group_inputs(n: usize, k: usize) -> Result<Vec<Range<usize>>, SynthesisError> {
    if n == 0 {
        return Err(SynthesisError::NoInputs);
    }
    ensure_fan_in(k)?;
    let l = k.div_ceil(2);
    Ok((0..n).step_by(l).map(|s| s..n.min(s + l)).collect())
}

/// Weight bins of the carry-save reduction: bin `b` (1-based) holds signals
/// of weight `2^(b-1)`, consumed FIFO in insertion order.
#[derive(Debug, Default, Clone)]
pub struct BinMap {
    bins: BTreeMap<u32, VecDeque<NodeId>>,
}

impl BinMap {
    pub fn new() -> BinMap {
        BinMap::default()
    }

    pub fn push(&mut self, bin: u32, signal: NodeId) {
        assert!(bin >= 1, "bins are 1-based");
        self.bins.entry(bin).or_default().push_back(signal);
    }

    pub fn len(&self, bin: u32) -> usize {
        self.bins.get(&bin).map_or(0, |q| q.len())
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// Highest populated bin, if any.
    pub fn max_bin(&self) -> Option<u32> {
        self.bins.keys().next_back().copied()
    }

    /// Signals currently in `bin`, front (oldest) first.
    pub fn signals(&self, bin: u32) -> impl Iterator<Item = NodeId> + '_ {
        self.bins.get(&bin).into_iter().flatten().copied()
    }
}

/// Reduce one bin to a single residual signal: repeatedly count
/// `min(remaining, max_inputs)` front signals with one counter, return the
/// counter's sum bit to this bin and push its carry bits to the bins above.
/// Returns the residual, or `None` for an untouched empty bin.
pub fn reduce_bin(
    bins: &mut BinMap,
    bin: u32,
    spec: &CounterSpec,
    b: &mut NetworkBuilder,
) -> Option<NodeId> {
    while bins.len(bin) >= 2 {
        let take = spec.max_inputs.min(bins.len(bin));
        let queue = bins.bins.get_mut(&bin).expect("bin is populated");
        let operands: Vec<NodeId> = queue.drain(..take).collect();
        let taps = b.counter(operands).expect("counters take 2..=l operands");
        bins.push(bin, taps[0]);
        for (offset, tap) in taps.iter().enumerate().skip(1) {
            bins.push(bin + offset as u32, *tap);
        }
    }
    match bins.bins.entry(bin) {
        Entry::Occupied(queue) => queue.get().front().copied(),
        Entry::Vacant(_) => None,
    }
}

/// Threshold over arbitrary in-network signals: a single control-assigned
/// `M_k` when at most `l` signals are given, otherwise the full counter
/// pipeline. Degenerate thresholds collapse to wires or constants.
pub(crate) fn threshold_over_signals(
    b: &mut NetworkBuilder,
    signals: &[NodeId],
    t: usize,
    k: usize,
) -> Result<NodeId, SynthesisError> {
    ensure_fan_in(k)?;
    let spec = CounterSpec::for_fan_in(k)?;
    if t == 0 {
        return Ok(b.constant(true));
    }
    if t > signals.len() {
        return Ok(b.constant(false));
    }
    if signals.len() == 1 {
        return Ok(signals[0]);
    }
    if signals.len() <= spec.max_inputs {
        return Ok(threshold_gate(b, signals, t, k)?);
    }
    Ok(counter_pipeline(b, signals, t, k, &spec))
}

/// The grouped carry-save pipeline over `> l` signals with `1 <= t <= len`.
fn counter_pipeline(
    b: &mut NetworkBuilder,
    signals: &[NodeId],
    t: usize,
    k: usize,
    spec: &CounterSpec,
) -> NodeId {
    let target = threshold_constant(signals.len(), t).expect("validated threshold");
    let mut bins = BinMap::new();
    // Group counters: each group's count bits enter the bins at their
    // weights; a single leftover signal is already its own count.
    for group in signals.chunks(spec.max_inputs) {
        if group.len() == 1 {
            bins.push(1, group[0]);
        } else {
            let taps = b.counter(group.to_vec()).expect("group of 2..=l signals");
            for (offset, tap) in taps.iter().enumerate() {
                bins.push(1 + offset as u32, *tap);
            }
        }
    }
    // Binary digits of T, low bins first; zero digits are not materialized.
    for j in 0..target.bins {
        if (target.constant >> j) & 1 == 1 {
            let one = b.constant(true);
            bins.push(j + 1, one);
        }
    }
    let mut residuals = Vec::new();
    let mut bin = 1;
    while bin <= bins.max_bin().expect("bins are nonempty") {
        if let Some(residual) = reduce_bin(&mut bins, bin, spec, b) {
            if bin > target.bins {
                residuals.push(residual);
            }
        }
        bin += 1;
    }
    debug_assert!(!residuals.is_empty(), "an overflow bin always exists");
    if residuals.len() == 1 {
        residuals[0]
    } else {
        or_tree(b, &residuals, k)
    }
}

fn threshold_network(
    name: String,
    n: usize,
    t: usize,
    k: usize,
) -> Result<LogicNetwork, SynthesisError> {
    ensure_fan_in(k)?;
    let target = threshold_constant(n, t)?;
    let mut b = NetworkBuilder::new(name, n);
    let inputs: Vec<NodeId> = (0..n).map(|i| b.input(i)).collect();
    let output = if n == 1 {
        inputs[0]
    } else {
        counter_pipeline(&mut b, &inputs, target.t, k, &CounterSpec::for_fan_in(k)?)
    };
    b.push_output(output);
    Ok(b.build())
}

/// Synthesize `T_n^t` (1 iff at least `t` of the `n` inputs are 1) as a
/// counter-graph network targeting `M_k` lowering.
pub fn synthesize_threshold(n: usize, t: usize, k: usize) -> Result<LogicNetwork, SynthesisError> {
    threshold_network(format!("thr{n}_t{t}_k{k}"), n, t, k)
}

/// `M_n` with `n <= k` as one `M_k` gate, balanced with `(k-n)/2` one/zero
/// constant pairs (none when `n == k`); `n == 1` is a wire.
pub(crate) fn padded_majority_network(
    name: String,
    n: usize,
    k: usize,
) -> Result<LogicNetwork, SynthesisError> {
    ensure_fan_in(k)?;
    if n == 0 {
        return Err(SynthesisError::NoInputs);
    }
    if n.is_multiple_of(2) {
        return Err(SynthesisError::EvenInputs(n));
    }
    assert!(n <= k, "padding requires n <= k");
    let mut b = NetworkBuilder::new(name, n);
    let mut ops: Vec<NodeId> = (0..n).map(|i| b.input(i)).collect();
    let output = if n == 1 {
        ops[0]
    } else {
        for _ in 0..(k - n) / 2 {
            let one = b.constant(true);
            ops.push(one);
            let zero = b.constant(false);
            ops.push(zero);
        }
        b.maj(ops)
    };
    b.push_output(output);
    Ok(b.build())
}

/// Synthesize `M_n` via the counter graph: a single padded `M_k` when
/// `n <= k`, otherwise the threshold pipeline at `t = ceil(n/2)`.
pub fn synthesize_majority_counter(n: usize, k: usize) -> Result<LogicNetwork, SynthesisError> {
    ensure_fan_in(k)?;
    if n == 0 {
        return Err(SynthesisError::NoInputs);
    }
    if n.is_multiple_of(2) {
        return Err(SynthesisError::EvenInputs(n));
    }
    let name = format!("maj{n}_k{k}");
    if n > k {
        threshold_network(name, n, n.div_ceil(2), k)
    } else {
        padded_majority_network(name, n, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{check_threshold_equivalence, eval_vector_nodes, VerifyMode};

    #[test]
    fn threshold_constants_match_known_values() {
        let target = threshold_constant(9, 5).unwrap();
        assert_eq!((target.bins, target.constant), (4, 0b1011));
        let target = threshold_constant(3, 2).unwrap();
        assert_eq!((target.bins, target.constant), (2, 0b10));
        let target = threshold_constant(5, 1).unwrap();
        assert_eq!((target.bins, target.constant), (3, 0b111));
        let target = threshold_constant(1001, 501).unwrap();
        assert_eq!((target.bins, target.constant), (10, 523));
    }

    #[test]
    fn threshold_constant_validates_its_range() {
        assert_eq!(
            threshold_constant(5, 6).unwrap_err(),
            SynthesisError::ThresholdOutOfRange { t: 6, n: 5 }
        );
        assert_eq!(
            threshold_constant(5, 0).unwrap_err(),
            SynthesisError::ThresholdOutOfRange { t: 0, n: 5 }
        );
    }

    #[test]
    fn grouping_covers_the_inputs_in_order() {
        assert_eq!(group_inputs(9, 5).unwrap(), vec![0..3, 3..6, 6..9]);
        assert_eq!(group_inputs(5, 11).unwrap(), vec![0..5]);
        let groups = group_inputs(1001, 9).unwrap();
        assert_eq!(groups.len(), 201);
        assert!(groups[..200].iter().all(|g| g.len() == 5));
        assert_eq!(groups[200], 1000..1001);
        assert_eq!(
            group_inputs(4, 4).unwrap_err(),
            SynthesisError::Lowering(LoweringError::BadFanIn(4))
        );
    }

    #[test]
    fn majority_9_over_5_matches_the_reference_structure() {
        // Three group counters, T = 1011, ten counters in total, and the
        // single overflow residual as the output.
        let net = synthesize_majority_counter(9, 5).unwrap();
        let stats = net.stats();
        assert_eq!(stats.counter, 10);
        assert_eq!(stats.maj, 0);
        assert_eq!(stats.and, 0);
        assert_eq!(stats.or, 0);
        assert_eq!(net.outputs().len(), 1);
        let report = check_threshold_equivalence(&net, 5, VerifyMode::Exhaustive).unwrap();
        assert!(report.equivalent);
    }

    #[test]
    fn single_input_threshold_is_a_wire() {
        let net = synthesize_threshold(1, 1, 3).unwrap();
        assert_eq!(net.stats().total_gates, 0);
        assert_eq!(net.outputs(), &[net.input(0)]);
    }

    #[test]
    fn small_majorities_use_one_padded_gate() {
        let net = synthesize_majority_counter(3, 5).unwrap();
        let stats = net.stats();
        assert_eq!((stats.maj, stats.counter), (1, 0));
        assert_eq!(stats.maj_arity, Some(5));
        let report = check_threshold_equivalence(&net, 2, VerifyMode::Exhaustive).unwrap();
        assert!(report.equivalent);

        let net = synthesize_majority_counter(5, 5).unwrap();
        assert_eq!(net.stats().consts, 0, "n = k needs no controls");
        assert_eq!(net.stats().maj, 1);
    }

    #[test]
    fn thresholds_match_the_popcount_oracle_exhaustively() {
        for k in [3usize, 5, 9] {
            for n in 1..=10usize {
                for t in 1..=n {
                    let net = synthesize_threshold(n, t, k).unwrap();
                    let report =
                        check_threshold_equivalence(&net, t, VerifyMode::Exhaustive).unwrap();
                    assert!(
                        report.equivalent,
                        "n={n} t={t} k={k} cex {:?}",
                        report.counterexample
                    );
                }
            }
        }
    }

    #[test]
    fn wider_pipeline_matches_the_oracle() {
        let net = synthesize_threshold(11, 6, 9).unwrap();
        let report = check_threshold_equivalence(&net, 6, VerifyMode::Exhaustive).unwrap();
        assert_eq!(report.vectors_checked, 2048);
        assert!(report.equivalent);

        let net = synthesize_threshold(17, 9, 5).unwrap();
        let report = check_threshold_equivalence(&net, 9, VerifyMode::Exhaustive).unwrap();
        assert!(report.equivalent);
    }

    #[test]
    fn counter_arities_stay_within_the_group_size() {
        for (n, k) in [(33usize, 17usize), (21, 5), (9, 3)] {
            let net = synthesize_majority_counter(n, k).unwrap();
            let l = k.div_ceil(2);
            for instance in net.counters() {
                assert!((2..=l).contains(&instance.operands.len()), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn weighted_sums_are_conserved_through_the_reduction() {
        // Rebuild the pipeline by hand so the final bins stay observable,
        // then check HW + T = Σ 2^(b-1) · residual_b on every vector.
        let (n, t, k) = (9usize, 5usize, 5usize);
        let spec = CounterSpec::for_fan_in(k).unwrap();
        let target = threshold_constant(n, t).unwrap();
        let mut b = NetworkBuilder::new("cons", n);
        let inputs: Vec<NodeId> = (0..n).map(|i| b.input(i)).collect();
        let mut bins = BinMap::new();
        for group in inputs.chunks(spec.max_inputs) {
            let taps = b.counter(group.to_vec()).unwrap();
            for (offset, tap) in taps.iter().enumerate() {
                bins.push(1 + offset as u32, *tap);
            }
        }
        for j in 0..target.bins {
            if (target.constant >> j) & 1 == 1 {
                let one = b.constant(true);
                bins.push(j + 1, one);
            }
        }
        let mut bin = 1;
        while bin <= bins.max_bin().unwrap() {
            reduce_bin(&mut bins, bin, &spec, &mut b);
            assert!(bins.len(bin) <= 1, "bin {bin} fully reduced");
            bin += 1;
        }
        let residuals: Vec<(u32, NodeId)> = (1..=bins.max_bin().unwrap())
            .flat_map(|w| bins.signals(w).map(move |s| (w, s)))
            .collect();
        let net = b.build();
        for v in 0u64..512 {
            let bits: Vec<bool> = (0..n).map(|i| (v >> i) & 1 == 1).collect();
            let values = eval_vector_nodes(&net, &bits);
            let sum: u64 = residuals
                .iter()
                .map(|(w, s)| (values[s.index()] as u64) << (w - 1))
                .sum();
            assert_eq!(sum, v.count_ones() as u64 + target.constant, "vector {v}");
        }
    }

    #[test]
    fn majority_validates_parameters() {
        assert_eq!(
            synthesize_majority_counter(8, 5).unwrap_err(),
            SynthesisError::EvenInputs(8)
        );
        assert!(matches!(
            synthesize_majority_counter(9, 4),
            Err(SynthesisError::Lowering(LoweringError::BadFanIn(4)))
        ));
    }
}
