//! Integer partitions: exact counting, constrained enumeration, subsumption
//! pruning, and closed-form growth estimates.
//!
//! Everything is exact except the two floating-point estimates at the
//! bottom. `p(n)` uses the pentagonal-number recurrence; the restricted
//! count `p_r(N,M,n)` (at most `M` parts, each at most `N`) uses the
//! standard two-way recursion with memoization. Counts are big integers —
//! `p(n)` outgrows 64 bits near `n = 400`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;

/// A multiset of positive parts, stored in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Build from parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Partition {
        assert!(parts.iter().all(|&p| p >= 1), "parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    fn from_sorted(parts: Vec<usize>) -> Partition {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.last().is_none_or(|&p| p >= 1));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Distinct part values with their multiplicities, largest value first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Is every part of `self` available in `other`, with multiplicity?
    pub fn is_submultiset_of(&self, other: &Partition) -> bool {
        if self.parts.len() > other.parts.len() || self.sum() > other.sum() {
            return false;
        }
        // Both sides are sorted, so a two-pointer sweep suffices.
        let mut it = other.parts.iter().peekable();
        'outer: for &p in &self.parts {
            for &q in it.by_ref() {
                if q == p {
                    continue 'outer;
                }
                if q < p {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// Can the parts be matched one-to-one to bins of the given capacities
    /// (sorted descending)? Holds iff part `i` fits capacity `i`.
    pub fn fits_caps(&self, caps_descending: &[usize]) -> bool {
        debug_assert!(caps_descending.windows(2).all(|w| w[0] >= w[1]));
        self.parts.len() <= caps_descending.len()
            && self.parts.iter().zip(caps_descending).all(|(p, c)| p <= c)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let text: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", text.join("+"))
    }
}

/// Bounds for restricted partitions: at most `max_parts` parts, each at
/// most `max_part`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionConstraint {
    pub max_part: usize,
    pub max_parts: usize,
}

impl PartitionConstraint {
    pub fn new(max_part: usize, max_parts: usize) -> PartitionConstraint {
        assert!(max_part >= 1 && max_parts >= 1, "bounds must be positive");
        PartitionConstraint {
            max_part,
            max_parts,
        }
    }

    /// Largest representable sum, `N * M`.
    pub fn max_sum(&self) -> usize {
        self.max_part * self.max_parts
    }
}

/// The unrestricted partition count `p(n)` via the pentagonal-number
/// recurrence.
pub fn count_partitions(n: usize) -> BigUint {
    let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
    p.push(BigInt::one());
    for m in 1..=n {
        let mut acc = BigInt::zero();
        let mut j = 1usize;
        loop {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = j * (3 * j + 1) / 2;
            if j % 2 == 1 {
                acc += &p[m - g1];
                if g2 <= m {
                    acc += &p[m - g2];
                }
            } else {
                acc -= &p[m - g1];
                if g2 <= m {
                    acc -= &p[m - g2];
                }
            }
            j += 1;
        }
        p.push(acc);
    }
    p.pop()
        .unwrap()
        .to_biguint()
        .expect("partition counts are nonnegative")
}

fn count_restricted_memo(
    max_part: usize,
    max_parts: usize,
    n: usize,
    memo: &mut HashMap<(usize, usize, usize), BigUint>,
) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    if max_part == 0 || max_parts == 0 || n > max_part * max_parts {
        return BigUint::zero();
    }
    if let Some(hit) = memo.get(&(max_part, max_parts, n)) {
        return hit.clone();
    }
    // Split on whether a maximal part occurs: none (shrink the part bound)
    // or at least one (remove it and spend one slot).
    let mut total = count_restricted_memo(max_part - 1, max_parts, n, memo);
    if n >= max_part {
        total += count_restricted_memo(max_part, max_parts - 1, n - max_part, memo);
    }
    memo.insert((max_part, max_parts, n), total.clone());
    total
}

/// The restricted partition count `p_r(N,M,n)`.
pub fn count_restricted(constraint: &PartitionConstraint, n: usize) -> BigUint {
    count_restricted_memo(
        constraint.max_part,
        constraint.max_parts,
        n,
        &mut HashMap::new(),
    )
}

/// The restricted set partition count `p_rs(N,M,n)`: partitions of every
/// sum `z` with `n <= z <= N*M` under the constraint.
pub fn count_restricted_set(constraint: &PartitionConstraint, n: usize) -> BigUint {
    let mut memo = HashMap::new();
    let mut total = BigUint::zero();
    for z in n..=constraint.max_sum() {
        total += count_restricted_memo(constraint.max_part, constraint.max_parts, z, &mut memo);
    }
    total
}

fn enumerate_into(
    max_part: usize,
    slots_left: usize,
    min_sum: usize,
    sum: usize,
    parts: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if slots_left == 0 {
        return;
    }
    let bound = parts.last().copied().unwrap_or(max_part);
    for v in 1..=bound {
        // Even filling every remaining slot with v cannot reach min_sum;
        // larger v still might.
        if sum + v * slots_left < min_sum {
            continue;
        }
        parts.push(v);
        if sum + v >= min_sum {
            out.push(Partition::from_sorted(parts.clone()));
        }
        enumerate_into(max_part, slots_left - 1, min_sum, sum + v, parts, out);
        parts.pop();
    }
}

/// All partitions with sum in `[min_sum, N*M]` under the constraint, in
/// lexicographically ascending order of their descending part sequences
/// (so each partition precedes its extensions).
pub fn enumerate_restricted_set(
    constraint: &PartitionConstraint,
    min_sum: usize,
) -> Vec<Partition> {
    let mut out = Vec::new();
    if min_sum == 0 {
        out.push(Partition::empty());
    }
    let mut parts = Vec::new();
    enumerate_into(
        constraint.max_part,
        constraint.max_parts,
        min_sum,
        0,
        &mut parts,
        &mut out,
    );
    out
}

/// Drop every candidate that properly contains another candidate as a
/// sub-multiset; the survivors form the minimal antichain. Order is kept.
pub fn prune_subsumed(candidates: &[Partition]) -> Vec<Partition> {
    candidates
        .iter()
        .filter(|p| {
            !candidates
                .iter()
                .any(|q| q.parts != p.parts && q.is_submultiset_of(p))
        })
        .cloned()
        .collect()
}

/// The asymptotic estimate `p(n) ~ e^(pi*sqrt(2n/3)) / (4n*sqrt(3))`.
pub fn hardy_ramanujan(n: usize) -> f64 {
    assert!(n >= 1);
    let n = n as f64;
    (std::f64::consts::PI * (2.0 * n / 3.0).sqrt()).exp() / (4.0 * n * 3.0f64.sqrt())
}

/// Closed-form ceiling for the restricted set partition count in the
/// `N*M = 2n-1` regime: `e^(pi*sqrt(4n/3)) / (8*sqrt(3))`.
pub fn rsp_upper_bound(n: usize) -> f64 {
    assert!(n >= 1);
    let n = n as f64;
    (std::f64::consts::PI * (4.0 * n / 3.0).sqrt()).exp() / (8.0 * 3.0f64.sqrt())
}
