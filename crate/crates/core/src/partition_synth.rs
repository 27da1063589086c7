//! Partition-function synthesis of majority: group the inputs, expose each
//! group's exact Hamming weight as one-hot indicators, and accept exactly
//! the weight profiles whose group counts sum to a majority.
//!
//! With groups of size `l = ceil(k/2)`, a profile is a partition with at
//! most `numGroups` parts, each at most `l`. The network ORs, over every
//! candidate partition `{v1 >= v2 >= ...}` with sum at least `ceil(n/2)`,
//! the AND of signals "at least `mult(v)` groups have weight exactly `v`".
//! Distinct values select disjoint groups, so a true product witnesses a
//! total weight of at least the partition's sum; conversely the actual
//! weight profile of any accepting input is itself a candidate. Candidates
//! that properly contain another candidate are redundant and can be pruned
//! without changing the function.

use crate::counter::SynthesisError;
use crate::counter::{group_inputs, padded_majority_network, threshold_over_signals};
use crate::ir::{LogicNetwork, NetworkBuilder, NodeId};
use crate::lowering::{and_tree, ensure_fan_in, exact_hw_signals, or_tree};
use crate::partitions::{enumerate_restricted_set, prune_subsumed, Partition, PartitionConstraint};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

/// The candidate weight profiles for `M_n` under fan-in `k`: partitions
/// with at most one part per group, parts capped by group size, and sum at
/// least `ceil(n/2)`; optionally reduced to the minimal antichain.
pub fn majority_profiles(
    n: usize,
    k: usize,
    prune: bool,
) -> Result<Vec<Partition>, SynthesisError> {
    ensure_fan_in(k)?;
    let groups = group_inputs(n, k)?;
    let caps: Vec<usize> = groups.iter().map(|g| g.len()).collect();
    let constraint = PartitionConstraint::new(k.div_ceil(2), groups.len());
    let candidates: Vec<Partition> = enumerate_restricted_set(&constraint, n.div_ceil(2))
        .into_iter()
        .filter(|p| p.fits_caps(&caps))
        .collect();
    Ok(if prune {
        prune_subsumed(&candidates)
    } else {
        candidates
    })
}

/// Synthesize `M_n` via the partition function, with the subsumption prune
/// switchable for cross-checking.
pub fn synthesize_majority_partition_with(
    n: usize,
    k: usize,
    prune: bool,
) -> Result<LogicNetwork, SynthesisError> {
    ensure_fan_in(k)?;
    if n == 0 {
        return Err(SynthesisError::NoInputs);
    }
    if n.is_multiple_of(2) {
        return Err(SynthesisError::EvenInputs(n));
    }
    let name = format!("maj{n}_k{k}_part");
    if n <= k {
        return padded_majority_network(name, n, k);
    }

    let groups = group_inputs(n, k)?;
    let candidates = majority_profiles(n, k, prune)?;
    let mut b = NetworkBuilder::new(name, n);

    // One-hot weight indicators per group; a one-input group is its own
    // weight-1 indicator.
    let mut group_hw: Vec<Vec<NodeId>> = Vec::with_capacity(groups.len());
    for group in &groups {
        let signals: Vec<NodeId> = group.clone().map(|i| b.input(i)).collect();
        group_hw.push(exact_hw_signals(&mut b, &signals, k)?);
    }

    // "At least `mult` groups sit at weight exactly `v`" — built once per
    // distinct demand and shared across products. Only groups large enough
    // to reach weight `v` participate.
    let mut demand_signals: BTreeMap<(usize, usize), NodeId> = BTreeMap::new();
    let mut products = Vec::with_capacity(candidates.len());
    for candidate in &candidates {
        let mut conjuncts = Vec::new();
        for (v, mult) in candidate.multiplicities() {
            let signal = match demand_signals.entry((v, mult)) {
                Entry::Occupied(hit) => *hit.get(),
                Entry::Vacant(slot) => {
                    let eligible: Vec<NodeId> = group_hw
                        .iter()
                        .filter(|hw| hw.len() >= v)
                        .map(|hw| hw[v - 1])
                        .collect();
                    *slot.insert(threshold_over_signals(&mut b, &eligible, mult, k)?)
                }
            };
            conjuncts.push(signal);
        }
        products.push(and_tree(&mut b, &conjuncts, k));
    }
    assert!(
        !products.is_empty(),
        "the all-capacity profile is always a candidate"
    );
    let output = or_tree(&mut b, &products, k);
    b.push_output(output);
    Ok(b.build())
}

/// Synthesize `M_n` via the partition function (pruned candidate set).
pub fn synthesize_majority_partition(n: usize, k: usize) -> Result<LogicNetwork, SynthesisError> {
    synthesize_majority_partition_with(n, k, true)
}
