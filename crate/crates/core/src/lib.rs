//! Decomposition of n-input majority and threshold functions into networks
//! of k-input majority gates.

pub mod analysis;
pub mod counter;
pub mod fold;
pub mod ir;
pub mod lowering;
pub mod partition_synth;
pub mod partitions;
pub mod verify;

pub use analysis::{
    counter_count_bound, csv_row, linear_fit, lower_bound_ref, measure_decomposition,
    partition_bound_ref, render_csv, sweep, upper_bound_counter, AnalysisError, BoundReport,
    CounterCountBound, LinearFit, Method, SweepRow, CSV_HEADER,
};
pub use counter::{
    group_inputs, synthesize_majority_counter, synthesize_threshold, threshold_constant, BinMap,
    CounterSpec, SynthesisError, ThresholdTarget,
};
pub use fold::fold_constants;
pub use ir::{
    counter_width, CounterId, CounterInstance, IrError, LogicNetwork, NetworkBuilder, NetworkStats,
    Node, NodeId, NodeKind,
};
pub use lowering::{
    and_tree, control_assignment, exact_hw_signals, homogenize, lower_counters, or_tree,
    threshold_gate, ControlAssignment, LoweringError,
};
pub use partition_synth::{
    majority_profiles, synthesize_majority_partition, synthesize_majority_partition_with,
};
pub use partitions::{
    count_partitions, count_restricted, count_restricted_set, enumerate_restricted_set,
    hardy_ramanujan, prune_subsumed, rsp_upper_bound, Partition, PartitionConstraint,
};
pub use verify::{
    check_network_equivalence, check_threshold_equivalence, eval_vector, SampledConfig,
    VerificationReport, VerifyError, VerifyMode,
};
