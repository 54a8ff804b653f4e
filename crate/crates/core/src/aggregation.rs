// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

//! Building the aggregate arrival process of several flows.
//!
//! [`merge_traces`] is the production path. [`aggregate_by_composition`]
//! evaluates the aggregate arrival time as an infimum over all ways of
//! splitting `n` packets among the flows; it is exponential in the number of
//! flows and exists to cross-check the merge on small instances.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::trace::Trace;

/// Ordering of simultaneous arrivals in the aggregate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MergePolicy {
    /// Lower flow index first, then intra-flow order.
    #[default]
    ByFlowIndex,
}

/// Origin of one aggregate packet: flow position in the input list
/// (0-based) and packet index inside that flow (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Provenance {
    pub flow: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedTrace {
    pub trace: Trace,
    /// Entry `k` describes aggregate packet `k + 1`.
    pub provenance: Vec<Provenance>,
}

/// Multiplexes flows into one trace sorted by arrival tick.
///
/// Lengths must be present on all inputs or on none. Tick units must agree.
pub fn merge_traces(traces: &[Trace], policy: MergePolicy) -> Result<MergedTrace, Error> {
    let first = traces.first().ok_or(Error::Arity { needed: 1, got: 0 })?;
    let with_lengths = first.has_lengths();
    if traces.iter().any(|t| t.has_lengths() != with_lengths) {
        return Err(Error::Inconsistent(
            "packet lengths present on some traces but not others".into(),
        ));
    }
    if let Some(t) = traces.iter().find(|t| t.tick_unit() != first.tick_unit()) {
        return Err(Error::Inconsistent(alloc::format!(
            "tick units differ: {} vs {}",
            first.tick_unit(),
            t.tick_unit()
        )));
    }

    let total: usize = traces.iter().map(Trace::len).sum();
    let mut packets: Vec<(u64, Provenance)> = Vec::with_capacity(total);
    for (flow, t) in traces.iter().enumerate() {
        packets.extend(
            t.arrivals()
                .iter()
                .enumerate()
                .map(|(i, &a)| (a, Provenance { flow, index: i + 1 })),
        );
    }
    match policy {
        MergePolicy::ByFlowIndex => {
            packets.sort_unstable_by_key(|&(a, p)| (a, p.flow, p.index));
        }
    }

    let arrivals = packets.iter().map(|&(a, _)| a).collect();
    let lengths = with_lengths.then(|| {
        packets
            .iter()
            .map(|&(_, p)| {
                traces[p.flow]
                    .length(p.index)
                    .expect("index from this trace")
            })
            .collect()
    });
    let trace = Trace::build(arrivals, lengths, String::from(first.tick_unit()))?;
    Ok(MergedTrace {
        trace,
        provenance: packets.into_iter().map(|(_, p)| p).collect(),
    })
}

/// Aggregate arrival time of packet `n` as
/// `inf_{m₁ + ... + m_I = n} max_i Āᵢ(mᵢ)`, enumerating every composition of
/// `n`. `Āᵢ(0) = 0`, and a share beyond a flow's length is infinite.
pub fn aggregate_by_composition(traces: &[Trace], n: usize) -> Result<u64, Error> {
    let total: usize = traces.iter().map(Trace::len).sum();
    if n > total {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: total,
        });
    }
    if traces.is_empty() {
        return Ok(0);
    }
    Ok(best_split(traces, n, 0).expect("n <= total admits a finite split"))
}

/// Smallest achievable `max Āᵢ(mᵢ)` when the flows from `start` on take
/// exactly `remaining` packets; `None` stands for `+∞`.
fn best_split(traces: &[Trace], remaining: usize, start: usize) -> Option<u64> {
    let flow = &traces[start];
    if start + 1 == traces.len() {
        return flow.arrival(remaining).ok();
    }
    let mut best: Option<u64> = None;
    for share in 0..=remaining.min(flow.len()) {
        let here = flow.arrival(share).expect("share <= len");
        if let Some(rest) = best_split(traces, remaining - share, start + 1) {
            let v = here.max(rest);
            best = Some(best.map_or(v, |b| b.min(v)));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn tr(ticks: &[u64]) -> Trace {
        Trace::new(ticks.to_vec()).unwrap()
    }

    #[test]
    fn merge_examples() {
        let m = merge_traces(&[tr(&[1, 3, 5]), tr(&[2, 4])], MergePolicy::default()).unwrap();
        assert_eq!(m.trace.arrivals(), &[1, 2, 3, 4, 5]);
        assert_eq!(m.provenance[1], Provenance { flow: 1, index: 1 });

        let m = merge_traces(&[tr(&[0, 0]), tr(&[0])], MergePolicy::default()).unwrap();
        assert_eq!(m.trace.arrivals(), &[0, 0, 0]);
        assert_eq!(
            m.provenance,
            vec![
                Provenance { flow: 0, index: 1 },
                Provenance { flow: 0, index: 2 },
                Provenance { flow: 1, index: 1 },
            ]
        );

        let single = tr(&[4, 9]);
        let m = merge_traces(core::slice::from_ref(&single), MergePolicy::default()).unwrap();
        assert_eq!(m.trace, single);
    }

    #[test]
    fn merge_carries_lengths() {
        let a = Trace::with_lengths(vec![0, 10], vec![100, 200]).unwrap();
        let b = Trace::with_lengths(vec![5], vec![50]).unwrap();
        let m = merge_traces(&[a, b], MergePolicy::default()).unwrap();
        assert_eq!(m.trace.lengths(), Some(&[100, 50, 200][..]));
    }

    #[test]
    fn merge_rejects_mixed_lengths() {
        let a = Trace::with_lengths(vec![0], vec![100]).unwrap();
        assert!(matches!(
            merge_traces(&[a, tr(&[1])], MergePolicy::default()),
            Err(Error::Inconsistent(_))
        ));
        assert!(merge_traces(&[], MergePolicy::default()).is_err());
    }

    #[test]
    fn composition_examples() {
        let flows = [tr(&[1, 3, 5]), tr(&[2, 4])];
        assert_eq!(aggregate_by_composition(&flows, 3).unwrap(), 3);
        assert_eq!(aggregate_by_composition(&flows, 0).unwrap(), 0);
        assert!(aggregate_by_composition(&flows, 6).is_err());
        assert_eq!(
            aggregate_by_composition(&[tr(&[0, 0]), tr(&[0])], 3).unwrap(),
            0
        );
    }

    fn flows() -> impl Strategy<Value = Vec<Vec<u64>>> {
        proptest::collection::vec(
            proptest::collection::vec(0u64..20, 0..5).prop_map(|mut v| {
                v.sort_unstable();
                v
            }),
            1..4,
        )
    }

    proptest! {
        #[test]
        fn composition_matches_merge(fs in flows()) {
            let traces: Vec<Trace> = fs.into_iter().map(|v| Trace::new(v).unwrap()).collect();
            let merged = merge_traces(&traces, MergePolicy::default()).unwrap().trace;
            for n in 0..=merged.len() {
                prop_assert_eq!(aggregate_by_composition(&traces, n).unwrap(), merged.arrival(n).unwrap());
            }
        }

        #[test]
        fn merge_permutation_invariant(fs in flows(), rot in 0usize..4) {
            let traces: Vec<Trace> = fs.into_iter().map(|v| Trace::new(v).unwrap()).collect();
            let mut rotated = traces.clone();
            let k = rot % rotated.len();
            rotated.rotate_left(k);
            let a = merge_traces(&traces, MergePolicy::default()).unwrap();
            let b = merge_traces(&rotated, MergePolicy::default()).unwrap();
            prop_assert_eq!(a.trace.arrivals(), b.trace.arrivals());
        }

        #[test]
        fn merge_associative(fs in proptest::collection::vec(
            proptest::collection::vec(0u64..20, 0..6).prop_map(|mut v| { v.sort_unstable(); v }), 3)) {
            let t: Vec<Trace> = fs.into_iter().map(|v| Trace::new(v).unwrap()).collect();
            let p = MergePolicy::default();
            let inner = merge_traces(&t[..2], p).unwrap().trace;
            let nested = merge_traces(&[inner, t[2].clone()], p).unwrap().trace;
            let flat = merge_traces(&t, p).unwrap().trace;
            prop_assert_eq!(nested.arrivals(), flat.arrivals());
        }
    }
}
