// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

//! Trace generators: periodic and jittered flows, extremal (earliest
//! possible) traces for each model, and randomized conforming traces.
//!
//! Randomness comes from [`Lcg`], a fixed 64-bit linear congruential
//! generator, so a seed reproduces the same trace on any platform.

use alloc::format;
use alloc::vec::Vec;

use crate::conformance::{check_lambda_nu, fit_lambda_nu, FitTarget};
use crate::error::Error;
use crate::model::{LambdaNuModel, TSpecModel, TrafficModel, WindowMode};
use crate::rational::Rational;
use crate::trace::Trace;

/// 64-bit LCG (`a = 6364136223846793005`, `c = 1442695040888963407`); each
/// draw advances the state once and returns its high 32 bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish draw from `0..=max` (`draw % (max + 1)`).
    pub fn upto(&mut self, max: u64) -> u64 {
        let draw = self.next_u32() as u64;
        match max.checked_add(1) {
            Some(m) => draw % m,
            None => draw,
        }
    }

    /// Draw from the inclusive range `lo..=hi`.
    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.upto(hi - lo)
    }

    pub fn chance(&mut self, numer: u64, denom: u64) -> bool {
        self.upto(denom - 1) < numer
    }
}

/// Arrivals at `phase + (n - 1)·period`.
pub fn gen_periodic(period: u64, phase: u64, count: usize) -> Result<Trace, Error> {
    if period == 0 {
        return Err(Error::InvalidModel("period must be >= 1".into()));
    }
    Trace::new((0..count as u64).map(|i| phase + i * period).collect())
}

/// `⌈x⌉` for `x = (d·b - a)·q / (b·p)`, the tick spacing `(d - ν)/λ` with
/// `λ = p/q`, `ν = a/b`; zero when `d <= ν`.
fn spacing_ticks(model: &LambdaNuModel, d: u64) -> u64 {
    let (p, q) = (model.lambda().numer(), model.lambda().denom());
    let (a, b) = (model.nu().numer(), model.nu().denom());
    let excess = d as i128 * b - a;
    if excess <= 0 {
        return 0;
    }
    let num = excess * q;
    let den = b * p;
    ((num + den - 1) / den) as u64
}

/// The earliest integer-tick trace that conforms to `model`, built greedily
/// packet by packet. When `1/λ` is a whole number of ticks this is
/// `Ā(n) = (n - 1 - ν)⁺/λ`: packet 1 arrives at tick 0 together with `⌊ν⌋`
/// more, then packets follow at the sustained rate.
pub fn gen_extremal_lambda_nu(model: &LambdaNuModel, count: usize) -> Trace {
    Trace::new(earliest_arrivals(model, count, |_| 0)).expect("greedy arrivals are nondecreasing")
}

/// Places each packet at the earliest tick all earlier packets allow, plus
/// `slack(n)`.
fn earliest_arrivals(
    model: &LambdaNuModel,
    count: usize,
    mut slack: impl FnMut(usize) -> u64,
) -> Vec<u64> {
    // spacing_ticks is nondecreasing in d
    let spacing: Vec<u64> = (0..count as u64).map(|d| spacing_ticks(model, d)).collect();
    let mut arrivals: Vec<u64> = Vec::with_capacity(count);
    for n in 0..count {
        let earliest = (0..n)
            .map(|m| arrivals[m] + spacing[n - m])
            .max()
            .unwrap_or(0);
        arrivals.push(earliest + slack(n));
    }
    arrivals
}

/// Bursts of `K` simultaneous packets, one burst per window: every `τ`
/// ticks in open mode and every `τ + 1` ticks in closed mode (a closed
/// window of length `τ` would otherwise reach the next burst).
pub fn gen_tspec_extremal(tspec: &TSpecModel, count: usize) -> Result<Trace, Error> {
    if !tspec.tau().is_integer() {
        return Err(Error::Grid(format!(
            "tau = {} is not an integer",
            tspec.tau()
        )));
    }
    let tau = tspec.tau().numer() as u64;
    let step = match tspec.window_mode() {
        WindowMode::Open => tau,
        WindowMode::Closed => tau + 1,
    };
    let k = tspec.k_max();
    Trace::new((0..count as u64).map(|i| (i / k) * step).collect())
}

/// Periodic arrivals displaced by a seeded uniform jitter in `0..=jitter`,
/// sorted. Returns the trace together with its tightest `(1/period, ν)`
/// model, which is checked against the trace before returning.
pub fn gen_jittered(
    period: u64,
    jitter: u64,
    seed: u64,
    count: usize,
) -> Result<(Trace, LambdaNuModel), Error> {
    if period == 0 {
        return Err(Error::InvalidModel("period must be >= 1".into()));
    }
    if jitter >= period {
        return Err(Error::InvalidModel(format!(
            "jitter {jitter} must be below the period {period}"
        )));
    }
    let mut rng = Lcg::new(seed);
    let mut arrivals: Vec<u64> = (0..count as u64)
        .map(|i| i * period + rng.upto(jitter))
        .collect();
    arrivals.sort_unstable();
    let trace = Trace::new(arrivals)?;
    let lambda = Rational::new(1, period as i128)?;
    let TrafficModel::LambdaNu(model) = fit_lambda_nu(&trace, FitTarget::Lambda(lambda))?.model
    else {
        unreachable!("fixed-rate fit yields a (lambda, nu) model")
    };
    if !check_lambda_nu(&trace, &model).conforms() {
        return Err(Error::Verification(format!(
            "jittered trace does not conform to its fitted model {model}"
        )));
    }
    Ok((trace, model))
}

/// A random trace conforming to `model`: each packet is placed at the
/// earliest tick every earlier packet allows, then pushed back by a random
/// slack (zero half of the time, else up to `max_slack` ticks).
pub fn gen_random_lambda_nu(
    model: &LambdaNuModel,
    count: usize,
    max_slack: u64,
    rng: &mut Lcg,
) -> Trace {
    let arrivals = earliest_arrivals(model, count, |_| {
        if rng.chance(1, 2) {
            0
        } else {
            rng.upto(max_slack)
        }
    });
    Trace::new(arrivals).expect("arrivals are nondecreasing")
}

/// A random trace conforming to `tspec`: random gaps (zero half of the
/// time), with each packet kept out of any window shared with the `K`
/// packets before it.
pub fn gen_random_tspec(tspec: &TSpecModel, count: usize, max_gap: u64, rng: &mut Lcg) -> Trace {
    let k = tspec.k_max() as usize;
    let tau = tspec.tau();
    let mut arrivals: Vec<u64> = Vec::with_capacity(count);
    for n in 0..count {
        let gap = if rng.chance(1, 2) {
            0
        } else {
            rng.upto(max_gap)
        };
        let mut t = arrivals.last().map_or(gap, |&prev| prev + gap);
        if n >= k {
            let reach = Rational::from(arrivals[n - k]) + tau;
            let earliest = match tspec.window_mode() {
                WindowMode::Closed => reach.floor() + 1,
                WindowMode::Open => reach.ceil(),
            } as u64;
            t = t.max(earliest);
        }
        arrivals.push(t);
    }
    Trace::new(arrivals).expect("arrivals are nondecreasing")
}

/// `count` random packet lengths in `min..=max` bits.
pub fn gen_lengths(count: usize, min: u64, max: u64, rng: &mut Lcg) -> Vec<u64> {
    (0..count).map(|_| rng.range(min, max)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformance::{check_tspec, fit_lambda_nu};
    use alloc::vec;
    use proptest::prelude::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn lcg_reference_values() {
        let mut g = Lcg::new(0);
        // state_1 = c, state_2 = a*c + c (mod 2^64)
        assert_eq!(g.next_u32(), (Lcg::INCREMENT >> 32) as u32);
        let s2 = Lcg::INCREMENT
            .wrapping_mul(Lcg::MULTIPLIER)
            .wrapping_add(Lcg::INCREMENT);
        assert_eq!(g.next_u32(), (s2 >> 32) as u32);
    }

    #[test]
    fn periodic_examples() {
        assert_eq!(gen_periodic(10, 0, 3).unwrap().arrivals(), &[0, 10, 20]);
        assert_eq!(gen_periodic(10, 5, 2).unwrap().arrivals(), &[5, 15]);
        assert!(gen_periodic(0, 0, 2).is_err());
        let fit =
            fit_lambda_nu(&gen_periodic(10, 0, 100).unwrap(), FitTarget::Nu(r(0, 1))).unwrap();
        assert_eq!(
            fit.model,
            LambdaNuModel::new(r(1, 10), r(0, 1)).unwrap().into()
        );
    }

    #[test]
    fn extremal_examples() {
        let m = LambdaNuModel::new(r(1, 1), r(2, 1)).unwrap();
        assert_eq!(gen_extremal_lambda_nu(&m, 5).arrivals(), &[0, 0, 0, 1, 2]);
        let p = LambdaNuModel::new(r(1, 10), r(0, 1)).unwrap();
        assert_eq!(gen_extremal_lambda_nu(&p, 3).arrivals(), &[0, 10, 20]);
        // off-grid rate: every pair needs ⌈d·3/2⌉ ticks, so (3) cannot sit at 3
        let q = LambdaNuModel::new(r(2, 3), r(0, 1)).unwrap();
        assert_eq!(gen_extremal_lambda_nu(&q, 4).arrivals(), &[0, 2, 4, 6]);
    }

    #[test]
    fn tspec_extremal_examples() {
        let open = TSpecModel::open(r(10, 1), 2).unwrap();
        assert_eq!(
            gen_tspec_extremal(&open, 4).unwrap().arrivals(),
            &[0, 0, 10, 10]
        );
        let open1 = TSpecModel::open(r(10, 1), 1).unwrap();
        assert_eq!(
            gen_tspec_extremal(&open1, 3).unwrap().arrivals(),
            &[0, 10, 20]
        );
        let closed = TSpecModel::closed(r(10, 1), 2).unwrap();
        let t = gen_tspec_extremal(&closed, 4).unwrap();
        assert_eq!(t.arrivals(), &[0, 0, 11, 11]);
        assert!(check_tspec(&t, &closed).conforms());
        assert!(!check_tspec(&Trace::new(vec![0, 0, 10, 10]).unwrap(), &closed).conforms());
        assert!(matches!(
            gen_tspec_extremal(&TSpecModel::open(r(5, 2), 1).unwrap(), 2),
            Err(Error::Grid(_))
        ));
    }

    #[test]
    fn jittered_examples() {
        let (t, m) = gen_jittered(10, 0, 42, 3).unwrap();
        assert_eq!(t.arrivals(), &[0, 10, 20]);
        assert_eq!(m, LambdaNuModel::new(r(1, 10), r(0, 1)).unwrap());
        assert_eq!(
            gen_jittered(10, 7, 9, 50).unwrap(),
            gen_jittered(10, 7, 9, 50).unwrap()
        );
        assert!(gen_jittered(10, 10, 1, 5).is_err());
    }

    fn model() -> impl Strategy<Value = LambdaNuModel> {
        (1i128..6, 1i128..12, 0i128..8, 1i128..3)
            .prop_map(|(a, b, c, d)| LambdaNuModel::new(r(a, b), r(c, d)).unwrap())
    }

    proptest! {
        #[test]
        fn extremal_conforms_and_is_tight(m in model(), count in 0usize..60) {
            let t = gen_extremal_lambda_nu(&m, count);
            prop_assert!(check_lambda_nu(&t, &m).conforms());
            let burst = (m.nu().floor() + 1) as usize;
            prop_assert_eq!(t.arrivals().iter().filter(|&&a| a == 0).count(), burst.min(count));
        }

        #[test]
        fn extremal_fit_recovers_integer_nu(p in 1i128..6, nu in 0i128..6, extra in 1usize..40) {
            // unit-denominator rate keeps every arrival on the grid
            let m = LambdaNuModel::new(r(1, p), Rational::from(nu)).unwrap();
            let t = gen_extremal_lambda_nu(&m, nu as usize + 1 + extra);
            let fit = fit_lambda_nu(&t, FitTarget::Lambda(m.lambda())).unwrap();
            prop_assert_eq!(fit.model, m.into());
        }

        #[test]
        fn random_lambda_nu_conforms(m in model(), count in 0usize..80, seed in any::<u64>()) {
            let t = gen_random_lambda_nu(&m, count, 20, &mut Lcg::new(seed));
            prop_assert!(check_lambda_nu(&t, &m).conforms());
        }

        #[test]
        fn random_tspec_conforms(tn in 1i128..30, td in 1i128..4, k in 1u64..5, open in any::<bool>(), seed in any::<u64>()) {
            let mode = if open { WindowMode::Open } else { WindowMode::Closed };
            let shaper = TSpecModel::new(r(tn, td), k, mode).unwrap();
            let t = gen_random_tspec(&shaper, 60, 8, &mut Lcg::new(seed));
            prop_assert!(check_tspec(&t, &shaper).conforms());
        }

        #[test]
        fn jittered_conforms(period in 1u64..30, j in 0u64..30, seed in any::<u64>()) {
            let jitter = j % period;
            let (t, m) = gen_jittered(period, jitter, seed, 80).unwrap();
            prop_assert!(check_lambda_nu(&t, &m).conforms());
            prop_assert_eq!(m.lambda(), r(1, period as i128));
            prop_assert!(m.nu() < Rational::ONE);
        }

        #[test]
        fn tspec_extremal_conforms(tau in 1i128..30, k in 1u64..5, open in any::<bool>(), count in 0usize..40) {
            let mode = if open { WindowMode::Open } else { WindowMode::Closed };
            let shaper = TSpecModel::new(Rational::from(tau), k, mode).unwrap();
            prop_assert!(check_tspec(&gen_tspec_extremal(&shaper, count).unwrap(), &shaper).conforms());
        }
    }
}
