// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

//! Packet traces and the arrival-time / cumulative-traffic accessors.
//!
//! Packets are numbered `1..=N`. Index `0` is a virtual packet with
//! `Ā(0) = 0` that carries no length.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::Error;
use crate::rational::Rational;

pub const DEFAULT_TICK_UNIT: &str = "ticks";

/// A finite, nondecreasing sequence of integer arrival ticks with optional
/// per-packet lengths in bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    arrivals: Vec<u64>,
    lengths: Option<Vec<u64>>,
    tick_unit: String,
}

impl Trace {
    pub fn new(arrivals: Vec<u64>) -> Result<Self, Error> {
        Self::build(arrivals, None, DEFAULT_TICK_UNIT.to_string())
    }

    pub fn with_lengths(arrivals: Vec<u64>, lengths: Vec<u64>) -> Result<Self, Error> {
        Self::build(arrivals, Some(lengths), DEFAULT_TICK_UNIT.to_string())
    }

    pub fn build(
        arrivals: Vec<u64>,
        lengths: Option<Vec<u64>>,
        tick_unit: String,
    ) -> Result<Self, Error> {
        if let Some(i) = arrivals.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::InvalidTrace(alloc::format!(
                "arrival {} at tick {} precedes arrival {} at tick {}",
                i + 2,
                arrivals[i + 1],
                i + 1,
                arrivals[i]
            )));
        }
        if let Some(lengths) = &lengths {
            if lengths.len() != arrivals.len() {
                return Err(Error::InvalidTrace(alloc::format!(
                    "{} lengths for {} arrivals",
                    lengths.len(),
                    arrivals.len()
                )));
            }
            if let Some(i) = lengths.iter().position(|&l| l == 0) {
                return Err(Error::InvalidTrace(alloc::format!(
                    "packet {} has zero length",
                    i + 1
                )));
            }
        }
        Ok(Trace {
            arrivals,
            lengths,
            tick_unit,
        })
    }

    pub fn empty() -> Self {
        Trace {
            arrivals: Vec::new(),
            lengths: None,
            tick_unit: DEFAULT_TICK_UNIT.to_string(),
        }
    }

    pub fn with_tick_unit(mut self, unit: impl Into<String>) -> Self {
        self.tick_unit = unit.into();
        self
    }

    /// Number of real packets `N`.
    pub fn len(&self) -> usize {
        self.arrivals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrivals.is_empty()
    }

    pub fn arrivals(&self) -> &[u64] {
        &self.arrivals
    }

    pub fn lengths(&self) -> Option<&[u64]> {
        self.lengths.as_deref()
    }

    pub fn has_lengths(&self) -> bool {
        self.lengths.is_some()
    }

    pub fn tick_unit(&self) -> &str {
        &self.tick_unit
    }

    /// `Ā(n)`, with `Ā(0) = 0`.
    pub fn arrival(&self, n: usize) -> Result<u64, Error> {
        match n {
            0 => Ok(0),
            _ if n <= self.len() => Ok(self.arrivals[n - 1]),
            _ => Err(Error::IndexOutOfRange {
                index: n,
                len: self.len(),
            }),
        }
    }

    /// Length in bits of packet `n >= 1`.
    pub fn length(&self, n: usize) -> Result<u64, Error> {
        let lengths = self.lengths.as_ref().ok_or(Error::MissingLengths)?;
        if n == 0 || n > lengths.len() {
            return Err(Error::IndexOutOfRange {
                index: n,
                len: lengths.len(),
            });
        }
        Ok(lengths[n - 1])
    }

    /// Inter-arrival time `Ā(m, n) = Ā(n) - Ā(m)` for `0 <= m <= n <= N`.
    pub fn interarrival(&self, m: usize, n: usize) -> Result<u64, Error> {
        if m > n {
            return Err(Error::IndexOutOfRange { index: m, len: n });
        }
        Ok(self.arrival(n)? - self.arrival(m)?)
    }

    /// Cumulative traffic `A(t)`: total bits of packets with `Ā(n) <= t`.
    pub fn cumulative(&self, t: Rational) -> Result<u64, Error> {
        let lengths = self.lengths.as_ref().ok_or(Error::MissingLengths)?;
        if t.is_negative() {
            return Ok(0);
        }
        let upto = self.count_at_or_before(t);
        Ok(lengths[..upto].iter().sum())
    }

    /// Bits of packets arriving strictly before `t` (the left limit `A(t⁻)`).
    pub fn cumulative_before(&self, t: Rational) -> Result<u64, Error> {
        let lengths = self.lengths.as_ref().ok_or(Error::MissingLengths)?;
        let upto = self.arrivals.partition_point(|&a| Rational::from(a) < t);
        Ok(lengths[..upto].iter().sum())
    }

    /// Number of packets with `Ā(n) <= t`.
    pub fn count_at_or_before(&self, t: Rational) -> usize {
        self.arrivals.partition_point(|&a| Rational::from(a) <= t)
    }

    /// Prefix sums of lengths: entry `k` is the total of packets `1..=k`.
    pub(crate) fn length_prefix(&self) -> Result<Vec<u64>, Error> {
        let lengths = self.lengths.as_ref().ok_or(Error::MissingLengths)?;
        let mut prefix = Vec::with_capacity(lengths.len() + 1);
        prefix.push(0);
        let mut acc = 0u64;
        for &l in lengths {
            acc += l;
            prefix.push(acc);
        }
        Ok(prefix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn interarrival_examples() {
        let t = Trace::new(vec![10, 20, 30]).unwrap();
        assert_eq!(t.interarrival(1, 3).unwrap(), 20);
        assert_eq!(t.interarrival(2, 2).unwrap(), 0);
        assert_eq!(t.interarrival(0, 1).unwrap(), 10);
    }

    #[test]
    fn interarrival_out_of_range() {
        let t = Trace::new(vec![10, 20, 30]).unwrap();
        assert!(matches!(
            t.interarrival(1, 4),
            Err(Error::IndexOutOfRange { index: 4, len: 3 })
        ));
        assert!(t.interarrival(3, 2).is_err());
    }

    #[test]
    fn cumulative_examples() {
        let t = Trace::with_lengths(vec![0, 10], vec![100, 200]).unwrap();
        assert_eq!(t.cumulative(Rational::from(0i32)).unwrap(), 100);
        assert_eq!(t.cumulative(Rational::from(10i32)).unwrap(), 300);
        assert_eq!(t.cumulative(Rational::from(9i32)).unwrap(), 100);
        assert_eq!(t.cumulative_before(Rational::from(10i32)).unwrap(), 100);
        assert_eq!(t.cumulative_before(Rational::ZERO).unwrap(), 0);
    }

    #[test]
    fn cumulative_needs_lengths() {
        let t = Trace::new(vec![0, 10]).unwrap();
        assert_eq!(t.cumulative(Rational::ZERO), Err(Error::MissingLengths));
    }

    #[test]
    fn rejects_malformed() {
        assert!(Trace::new(vec![5, 4]).is_err());
        assert!(Trace::with_lengths(vec![1, 2], vec![1]).is_err());
        assert!(Trace::with_lengths(vec![1, 2], vec![1, 0]).is_err());
        assert!(Trace::new(vec![3, 3, 3]).is_ok());
    }

    fn sorted_ticks() -> impl Strategy<Value = Vec<u64>> {
        proptest::collection::vec(0u64..50, 0..30).prop_map(|mut v| {
            v.sort_unstable();
            v
        })
    }

    proptest! {
        #[test]
        fn interarrival_telescopes(ticks in sorted_ticks(), a in 0usize..31, b in 0usize..31, c in 0usize..31) {
            let t = Trace::new(ticks).unwrap();
            let n_max = t.len();
            let mut idx = [a % (n_max + 1), b % (n_max + 1), c % (n_max + 1)];
            idx.sort_unstable();
            let [l, m, n] = idx;
            prop_assert_eq!(
                t.interarrival(l, n).unwrap(),
                t.interarrival(l, m).unwrap() + t.interarrival(m, n).unwrap()
            );
        }

        #[test]
        fn cumulative_is_monotone_step(ticks in sorted_ticks(), probe in 0u64..60) {
            let lengths = ticks.iter().map(|&t| t % 7 + 1).collect();
            let t = Trace::with_lengths(ticks.clone(), lengths).unwrap();
            let here = t.cumulative(Rational::from(probe)).unwrap();
            let next = t.cumulative(Rational::from(probe + 1)).unwrap();
            prop_assert!(here <= next);
            // constant between integer ticks: jumps happen only at arrival ticks
            let mid = t.cumulative(Rational::new(2 * probe as i128 + 1, 2).unwrap()).unwrap();
            prop_assert_eq!(mid, here);
            if !ticks.contains(&(probe + 1)) {
                prop_assert_eq!(here, next);
            }
        }
    }
}
