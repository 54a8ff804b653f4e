// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

//! Trace conformance checks and tightest-parameter fitting.
//!
//! Pair constraints are quantified over real packets `1 <= m < n <= N`
//! (pairs with `m == n` hold trivially and are not enumerated). Checks are
//! exhaustive; when several pairs violate a constraint the witness is the
//! one with the smallest `n`, then the smallest `m`.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::algebra::{maxplus_convolve_arg, minplus_convolve};
use crate::error::Error;
use crate::model::{
    LambdaNuModel, MaxPlusCurve, SigmaRhoModel, TSpecModel, TrafficModel, WindowMode,
};
use crate::rational::Rational;
use crate::trace::Trace;

/// A pair at which a constraint fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub m: usize,
    pub n: usize,
    /// What the constraint demands (minimum spacing in ticks, or the bit
    /// budget for `(σ, ρ)`).
    pub required: Rational,
    /// What the trace delivers at `(m, n)`.
    pub actual: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConformanceReport {
    pub witness: Option<Witness>,
    /// Pairs at which the constraint holds with equality.
    pub tight_pairs: Vec<(usize, usize)>,
    pub checked_pairs: u64,
}

impl ConformanceReport {
    pub fn conforms(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CheckOptions {
    /// Stop recording tight pairs after this many. `None` records all.
    pub tight_pair_limit: Option<usize>,
}

impl CheckOptions {
    pub fn verdict_only() -> Self {
        CheckOptions {
            tight_pair_limit: Some(0),
        }
    }
}

struct Collector {
    report: ConformanceReport,
    limit: Option<usize>,
}

impl Collector {
    fn new(opts: &CheckOptions) -> Self {
        Collector {
            report: ConformanceReport::default(),
            limit: opts.tight_pair_limit,
        }
    }

    fn violation(&mut self, witness: impl FnOnce() -> Witness) {
        if self.report.witness.is_none() {
            self.report.witness = Some(witness());
        }
    }

    fn tight(&mut self, m: usize, n: usize) {
        if self.limit.is_none_or(|l| self.report.tight_pairs.len() < l) {
            self.report.tight_pairs.push((m, n));
        }
    }

    fn finish(mut self, checked: u64) -> ConformanceReport {
        self.report.checked_pairs = checked;
        self.report
    }
}

/// `(λ, ν)` as integers: `λ = p/q`, `ν = a/b`.
#[derive(Clone, Copy)]
struct ScaledLambdaNu {
    p: i128,
    q: i128,
    a: i128,
    b: i128,
}

impl ScaledLambdaNu {
    fn new(model: &LambdaNuModel) -> Self {
        ScaledLambdaNu {
            p: model.lambda().numer(),
            q: model.lambda().denom(),
            a: model.nu().numer(),
            b: model.nu().denom(),
        }
    }

    /// Orders `λ·gap` against `(d - ν)⁺`.
    #[inline]
    fn compare(&self, d: usize, gap: u64) -> Ordering {
        let excess = d as i128 * self.b - self.a;
        if excess <= 0 {
            return (gap as i128).cmp(&0);
        }
        (self.p * gap as i128 * self.b).cmp(&(self.q * excess))
    }
}

/// Pairwise `(λ, ν)` check: `λ·Ā(m, n) >= (n - m - ν)⁺` for all `m < n`.
pub fn check_lambda_nu(trace: &Trace, model: &LambdaNuModel) -> ConformanceReport {
    check_lambda_nu_with(trace, model, &CheckOptions::default())
}

pub fn check_lambda_nu_with(
    trace: &Trace,
    model: &LambdaNuModel,
    opts: &CheckOptions,
) -> ConformanceReport {
    let scaled = ScaledLambdaNu::new(model);
    let arrivals = trace.arrivals();
    let mut out = Collector::new(opts);
    for n in 2..=arrivals.len() {
        let an = arrivals[n - 1];
        for m in 1..n {
            let gap = an - arrivals[m - 1];
            match scaled.compare(n - m, gap) {
                Ordering::Less => out.violation(|| Witness {
                    m,
                    n,
                    required: model.curve_at(n - m),
                    actual: Rational::from(gap),
                }),
                Ordering::Equal => out.tight(m, n),
                Ordering::Greater => {}
            }
        }
    }
    out.finish(pair_count(arrivals.len()))
}

/// The same verdict through max-plus convolution: with the arrival function
/// re-based at its first packet, `F(k) = Ā(k+1) - Ā(1)` (so `F(0) = 0`), the
/// trace conforms iff `F(k) >= (F ⊗̄ ᾱ)(k)` for every `k`, where
/// `ᾱ(d) = (d - ν)⁺ / λ`.
///
/// Tight pairs report, for each `n` where the bound is met, the first `m`
/// attaining the supremum.
pub fn check_lambda_nu_via_convolution(trace: &Trace, model: &LambdaNuModel) -> ConformanceReport {
    let arrivals = trace.arrivals();
    let mut out = Collector::new(&CheckOptions::default());
    if arrivals.is_empty() {
        return out.finish(0);
    }
    let origin = arrivals[0];
    let rebased: Vec<Rational> = arrivals
        .iter()
        .map(|&a| Rational::from(a - origin))
        .collect();
    let alpha = model.curve(arrivals.len() - 1);
    for k in 1..rebased.len() {
        // the j = k term is F(k) itself, so F(k) < sup iff an earlier j violates
        let (sup, j) = maxplus_convolve_arg(&rebased, &alpha, k)
            .expect("sequences cover 0..=k by construction");
        let (m, n) = (j + 1, k + 1);
        match rebased[k].cmp(&sup) {
            Ordering::Less => out.violation(|| Witness {
                m,
                n,
                required: alpha[k - j],
                actual: rebased[k] - rebased[j],
            }),
            Ordering::Equal if j < k => out.tight(m, n),
            _ => {}
        }
    }
    out.finish(pair_count(arrivals.len()))
}

/// General max-plus arrival curve check: `Ā(m, n) >= ᾱ(n - m)` for all
/// `m < n` with `n - m <= H`. Pairs beyond the horizon are unconstrained.
pub fn check_maxplus_curve(trace: &Trace, curve: &MaxPlusCurve) -> ConformanceReport {
    let arrivals = trace.arrivals();
    let values = curve.values();
    let mut out = Collector::new(&CheckOptions::default());
    let mut checked = 0u64;
    for n in 2..=arrivals.len() {
        let lo = n.saturating_sub(curve.horizon()).max(1);
        for m in lo..n {
            checked += 1;
            let gap = arrivals[n - 1] - arrivals[m - 1];
            let need = values[n - m];
            match need.cmp_integer(gap as i128).reverse() {
                Ordering::Less => out.violation(|| Witness {
                    m,
                    n,
                    required: need,
                    actual: Rational::from(gap),
                }),
                Ordering::Equal => out.tight(m, n),
                Ordering::Greater => {}
            }
        }
    }
    out.finish(checked)
}

/// Largest window occupancy: `(count, first, last)` for the first window
/// (by starting packet) holding the most packets. `None` on an empty trace.
pub fn max_window(trace: &Trace, tau: Rational, mode: WindowMode) -> Option<(u64, usize, usize)> {
    let mut best: Option<(u64, usize, usize)> = None;
    for_each_window(trace.arrivals(), tau, mode, |first, last| {
        let count = (last - first + 1) as u64;
        if best.is_none_or(|(c, _, _)| count > c) {
            best = Some((count, first, last));
        }
    });
    best
}

/// Calls `f(first, last)` for each packet `first` with the last packet that
/// fits in a window starting at it.
fn for_each_window(
    arrivals: &[u64],
    tau: Rational,
    mode: WindowMode,
    mut f: impl FnMut(usize, usize),
) {
    let mut end = 0usize;
    for start in 0..arrivals.len() {
        end = end.max(start + 1);
        while end < arrivals.len() && mode.fits(arrivals[end] - arrivals[start], tau) {
            end += 1;
        }
        f(start + 1, end);
    }
}

/// TSpec check: every window of length `τ` (closed or open per the model)
/// holds at most `K` packets. The witness names the first window start
/// `m` whose occupancy exceeds `K`, with `n = m + K` the first packet that
/// should have been excluded; `required` is `τ` and `actual` is `Ā(m, n)`.
/// Tight pairs are the windows `(first, last)` holding exactly `K` packets.
pub fn check_tspec(trace: &Trace, tspec: &TSpecModel) -> ConformanceReport {
    let arrivals = trace.arrivals();
    let k = tspec.k_max() as usize;
    let mut out = Collector::new(&CheckOptions::default());
    for_each_window(arrivals, tspec.tau(), tspec.window_mode(), |first, last| {
        let count = last - first + 1;
        if count > k {
            out.violation(|| Witness {
                m: first,
                n: first + k,
                required: tspec.tau(),
                actual: Rational::from(arrivals[first + k - 1] - arrivals[first - 1]),
            });
        } else if count == k {
            out.tight(first, last);
        }
    });
    out.finish(arrivals.len() as u64)
}

/// Packets grouped by equal arrival tick: `(tick, first, last)`, 1-based.
fn tick_groups(arrivals: &[u64]) -> Vec<(u64, usize, usize)> {
    let mut groups: Vec<(u64, usize, usize)> = Vec::new();
    for (i, &a) in arrivals.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if g.0 == a => g.2 = i + 1,
            _ => groups.push((a, i + 1, i + 1)),
        }
    }
    groups
}

/// `(σ, ρ)` check over closed windows `[s, t]` with `s <= t` arrival ticks:
/// the bits of packets arriving in `[s, t]` must not exceed `ρ(t - s) + σ`.
/// The witness `(m, n)` spans the first packet at `s` to the last at `t`.
pub fn check_sigma_rho(trace: &Trace, model: &SigmaRhoModel) -> Result<ConformanceReport, Error> {
    let mut out = Collector::new(&CheckOptions::default());
    if trace.is_empty() {
        return Ok(out.finish(0));
    }
    let prefix = trace.length_prefix()?;
    let groups = tick_groups(trace.arrivals());
    let (p, q) = (model.rho().numer(), model.rho().denom());
    let (a, b) = (model.sigma().numer(), model.sigma().denom());
    let mut checked = 0u64;
    for &(t, _, last) in &groups {
        for &(s, first, _) in groups.iter().take_while(|g| g.0 <= t) {
            checked += 1;
            let bits = (prefix[last] - prefix[first - 1]) as i128;
            let span = (t - s) as i128;
            // bits <= (p/q) span + a/b
            match (bits * q * b).cmp(&(p * span * b + a * q)) {
                Ordering::Greater => out.violation(|| Witness {
                    m: first,
                    n: last,
                    required: model.curve_at(Rational::from(span)),
                    actual: Rational::from(bits),
                }),
                Ordering::Equal => out.tight(first, last),
                Ordering::Less => {}
            }
        }
    }
    Ok(out.finish(checked))
}

/// `(σ, ρ)` verdict via min-plus convolution: `A(t) <= (A ⊗ α)(t)` at every
/// arrival tick `t`, with `α(t) = ρt + σ`.
pub fn check_sigma_rho_via_convolution(
    trace: &Trace,
    model: &SigmaRhoModel,
) -> Result<ConformanceReport, Error> {
    let mut out = Collector::new(&CheckOptions::default());
    if trace.is_empty() {
        return Ok(out.finish(0));
    }
    let groups = tick_groups(trace.arrivals());
    for &(t, _, last) in &groups {
        let t = Rational::from(t);
        let cumulative = Rational::from(trace.cumulative(t)?);
        let bound = minplus_convolve(trace, model, t)?;
        if cumulative > bound {
            out.violation(|| {
                // earliest start whose window carries the excess
                let (first, budget) = groups
                    .iter()
                    .take_while(|g| Rational::from(g.0) <= t)
                    .map(|g| {
                        let s = Rational::from(g.0);
                        let before = Rational::from(trace.cumulative_before(s).unwrap_or(0));
                        (g.1, before + model.curve_at(t - s))
                    })
                    .find(|(_, v)| *v == bound)
                    .expect("infimum is attained at an arrival tick");
                Witness {
                    m: first,
                    n: last,
                    required: budget - Rational::from(prefix_before(trace, first)),
                    actual: cumulative - Rational::from(prefix_before(trace, first)),
                }
            });
        } else if cumulative == bound {
            out.tight(groups[0].1, last);
        }
    }
    Ok(out.finish(groups.len() as u64))
}

fn prefix_before(trace: &Trace, first: usize) -> u64 {
    trace
        .lengths()
        .map(|l| l[..first - 1].iter().sum())
        .unwrap_or(0)
}

fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Tightest fitted model plus the pair (or window) that pins it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitResult {
    pub model: TrafficModel,
    /// `None` when the fitted parameter already sits at its domain limit
    /// (e.g. `ν = 0`), so there is nothing to tighten.
    pub binding_pair: Option<(usize, usize)>,
}

/// The parameter held fixed while fitting a `(λ, ν)` envelope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitTarget {
    Lambda(Rational),
    Nu(Rational),
}

/// Tightest `(λ, ν)` envelope of a trace with one parameter fixed.
///
/// With `λ` fixed the result is the minimal `ν = max (n - m - λ·Ā(m, n))⁺`.
/// With `ν` fixed it is the minimal rate `λ = max (n - m - ν) / Ā(m, n)`
/// over pairs with `n - m > ν` (a larger `λ` only loosens the bound).
pub fn fit_lambda_nu(trace: &Trace, fixed: FitTarget) -> Result<FitResult, Error> {
    let arrivals = trace.arrivals();
    match fixed {
        FitTarget::Lambda(lambda) => {
            // validates lambda > 0
            LambdaNuModel::new(lambda, Rational::ZERO)?;
            let (p, q) = (lambda.numer(), lambda.denom());
            let mut best: Option<(i128, usize, usize)> = None;
            for n in 2..=arrivals.len() {
                for m in 1..n {
                    let gap = (arrivals[n - 1] - arrivals[m - 1]) as i128;
                    let excess = (n - m) as i128 * q - p * gap;
                    if best.is_none_or(|(e, _, _)| excess > e) {
                        best = Some((excess, m, n));
                    }
                }
            }
            let (nu, binding) = match best {
                Some((excess, m, n)) if excess > 0 => (Rational::new(excess, q)?, Some((m, n))),
                _ => (Rational::ZERO, None),
            };
            Ok(FitResult {
                model: LambdaNuModel::new(lambda, nu)?.into(),
                binding_pair: binding,
            })
        }
        FitTarget::Nu(nu) => {
            LambdaNuModel::new(Rational::ONE, nu)?;
            let (a, b) = (nu.numer(), nu.denom());
            // candidate rate num/den with den > 0
            let mut best: Option<(i128, i128, usize, usize)> = None;
            for n in 2..=arrivals.len() {
                for m in 1..n {
                    let excess = (n - m) as i128 * b - a;
                    if excess <= 0 {
                        continue;
                    }
                    let gap = (arrivals[n - 1] - arrivals[m - 1]) as i128;
                    if gap == 0 {
                        return Err(Error::Infeasible { m, n });
                    }
                    let den = b * gap;
                    if best.is_none_or(|(bn, bd, _, _)| excess * bd > bn * den) {
                        best = Some((excess, den, m, n));
                    }
                }
            }
            let (num, den, m, n) = best.ok_or(Error::Unconstrained)?;
            Ok(FitResult {
                model: LambdaNuModel::new(Rational::new(num, den)?, nu)?.into(),
                binding_pair: Some((m, n)),
            })
        }
    }
}

/// Minimal `K` for a given `τ` and window mode: the largest window
/// occupancy (at least 1). The binding pair is that window's first and
/// last packet.
pub fn fit_tspec(trace: &Trace, tau: Rational, mode: WindowMode) -> Result<FitResult, Error> {
    TSpecModel::new(tau, 1, mode)?;
    let best = max_window(trace, tau, mode);
    let k = best.map_or(1, |(count, _, _)| count);
    Ok(FitResult {
        model: TSpecModel::new(tau, k, mode)?.into(),
        binding_pair: best.map(|(_, first, last)| (first, last)),
    })
}

/// Minimal `σ` for a given `ρ`: the largest excess of window bits over
/// `ρ(t - s)`, clamped at zero.
pub fn fit_sigma_rho(trace: &Trace, rho: Rational) -> Result<FitResult, Error> {
    SigmaRhoModel::new(Rational::ZERO, rho)?;
    let prefix = trace.length_prefix()?;
    let groups = tick_groups(trace.arrivals());
    let mut best: Option<(Rational, usize, usize)> = None;
    for &(t, _, last) in &groups {
        for &(s, first, _) in groups.iter().take_while(|g| g.0 <= t) {
            let bits = Rational::from(prefix[last] - prefix[first - 1]);
            let excess = bits - rho * Rational::from(t - s);
            if best.is_none_or(|(e, _, _)| excess > e) {
                best = Some((excess, first, last));
            }
        }
    }
    let (sigma, binding) = match best {
        Some((excess, m, n)) if excess.is_positive() => (excess, Some((m, n))),
        _ => (Rational::ZERO, None),
    };
    Ok(FitResult {
        model: SigmaRhoModel::new(sigma, rho)?.into(),
        binding_pair: binding,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn ln(l: Rational, n: Rational) -> LambdaNuModel {
        LambdaNuModel::new(l, n).unwrap()
    }

    fn tr(ticks: &[u64]) -> Trace {
        Trace::new(ticks.to_vec()).unwrap()
    }

    /// Independent oracle: every pair, plain rational arithmetic.
    fn oracle_lambda_nu(trace: &Trace, model: &LambdaNuModel) -> Option<(usize, usize)> {
        for n in 1..=trace.len() {
            for m in 1..=n {
                let gap = Rational::from(trace.interarrival(m, n).unwrap());
                let need = (Rational::from(n - m) - model.nu()).positive_part() / model.lambda();
                if gap < need {
                    return Some((m, n));
                }
            }
        }
        None
    }

    fn oracle_tspec(trace: &Trace, tspec: &TSpecModel) -> bool {
        for n in 1..=trace.len() {
            for m in 1..=n {
                let span = trace.interarrival(m, n).unwrap();
                if tspec.window_mode().fits(span, tspec.tau()) && (n - m + 1) as u64 > tspec.k_max()
                {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn periodic_conforms() {
        let rep = check_lambda_nu(&tr(&[0, 10, 20, 30]), &ln(r(1, 10), r(0, 1)));
        assert!(rep.conforms());
        assert_eq!(rep.checked_pairs, 6);
    }

    #[test]
    fn burst_conforms_with_tight_pairs() {
        let rep = check_lambda_nu(&tr(&[0, 0, 10, 20]), &ln(r(1, 10), r(1, 1)));
        assert!(rep.conforms());
        // the first packet binds against every later one
        assert_eq!(rep.tight_pairs, vec![(1, 2), (1, 3), (1, 4)]);
    }

    #[test]
    fn coincident_packets_violate() {
        let rep = check_lambda_nu(&tr(&[0, 0, 10]), &ln(r(1, 10), r(0, 1)));
        let w = rep.witness.unwrap();
        assert_eq!((w.m, w.n), (1, 2));
        assert_eq!(w.required, r(10, 1));
        assert_eq!(w.actual, r(0, 1));
    }

    #[test]
    fn witness_is_earliest_n() {
        // (1,5) violates, but so does (2,4) which completes earlier
        let trace = tr(&[0, 2, 2, 2, 2]);
        let model = ln(r(1, 1), r(1, 1));
        let w = check_lambda_nu(&trace, &model).witness.unwrap();
        assert_eq!((w.m, w.n), (2, 4));
        let wc = check_lambda_nu_via_convolution(&trace, &model)
            .witness
            .unwrap();
        assert_eq!(wc.n, 4);
    }

    #[test]
    fn convolution_examples() {
        assert!(
            check_lambda_nu_via_convolution(&tr(&[0, 10, 20, 30]), &ln(r(1, 10), r(0, 1)))
                .conforms()
        );
        let rep = check_lambda_nu_via_convolution(&tr(&[0, 0, 10]), &ln(r(1, 10), r(0, 1)));
        assert_eq!(rep.witness.unwrap().n, 2);
        assert!(
            check_lambda_nu_via_convolution(&Trace::empty(), &ln(r(1, 10), r(0, 1))).conforms()
        );
    }

    #[test]
    fn tspec_examples() {
        let t = tr(&[0, 1, 2]);
        assert!(check_tspec(&t, &TSpecModel::closed(r(2, 1), 3).unwrap()).conforms());
        let rep = check_tspec(&t, &TSpecModel::closed(r(2, 1), 2).unwrap());
        let w = rep.witness.unwrap();
        assert_eq!((w.m, w.n), (1, 3));
        assert_eq!(w.actual, r(2, 1));
        assert!(check_tspec(&t, &TSpecModel::open(r(2, 1), 2).unwrap()).conforms());
    }

    #[test]
    fn sigma_rho_examples() {
        let m = SigmaRhoModel::new(r(100, 1), r(10, 1)).unwrap();
        let ok = Trace::with_lengths(vec![0, 10], vec![100, 100]).unwrap();
        let rep = check_sigma_rho(&ok, &m).unwrap();
        assert!(rep.conforms());
        assert!(rep.tight_pairs.contains(&(1, 2)));
        let bad = Trace::with_lengths(vec![0, 0], vec![100, 100]).unwrap();
        let w = check_sigma_rho(&bad, &m).unwrap().witness.unwrap();
        assert_eq!((w.m, w.n), (1, 2));
        assert_eq!((w.required, w.actual), (r(100, 1), r(200, 1)));
        assert!(check_sigma_rho(&Trace::empty(), &m).unwrap().conforms());
        assert_eq!(check_sigma_rho(&tr(&[1]), &m), Err(Error::MissingLengths));
    }

    #[test]
    fn fit_lambda_nu_examples() {
        let fit = fit_lambda_nu(&tr(&[0, 0, 10, 20]), FitTarget::Lambda(r(1, 10))).unwrap();
        assert_eq!(fit.model, ln(r(1, 10), r(1, 1)).into());
        assert_eq!(fit.binding_pair, Some((1, 2)));

        let fit = fit_lambda_nu(&tr(&[0, 10, 20]), FitTarget::Nu(r(0, 1))).unwrap();
        assert_eq!(fit.model, ln(r(1, 10), r(0, 1)).into());

        assert_eq!(
            fit_lambda_nu(&tr(&[0, 0, 10]), FitTarget::Nu(r(0, 1))),
            Err(Error::Infeasible { m: 1, n: 2 })
        );
        assert_eq!(
            fit_lambda_nu(&tr(&[5]), FitTarget::Nu(r(0, 1))),
            Err(Error::Unconstrained)
        );
    }

    #[test]
    fn fit_tspec_examples() {
        let t = tr(&[0, 1, 2]);
        let closed = fit_tspec(&t, r(2, 1), WindowMode::Closed).unwrap();
        assert_eq!(closed.model, TSpecModel::closed(r(2, 1), 3).unwrap().into());
        let open = fit_tspec(&t, r(2, 1), WindowMode::Open).unwrap();
        assert_eq!(open.model, TSpecModel::open(r(2, 1), 2).unwrap().into());
        let single = fit_tspec(&tr(&[7]), r(100, 1), WindowMode::Closed).unwrap();
        assert_eq!(
            single.model,
            TSpecModel::closed(r(100, 1), 1).unwrap().into()
        );
        let empty = fit_tspec(&Trace::empty(), r(1, 1), WindowMode::Open).unwrap();
        assert_eq!(empty.model, TSpecModel::open(r(1, 1), 1).unwrap().into());
    }

    #[test]
    fn fit_sigma_rho_matches_worst_window() {
        let t = Trace::with_lengths(vec![0, 10], vec![100, 100]).unwrap();
        let fit = fit_sigma_rho(&t, r(10, 1)).unwrap();
        assert_eq!(
            fit.model,
            SigmaRhoModel::new(r(100, 1), r(10, 1)).unwrap().into()
        );
    }

    #[test]
    fn maxplus_curve_check() {
        let curve = MaxPlusCurve::new(vec![r(0, 1), r(0, 1), r(10, 1)]).unwrap();
        assert!(check_maxplus_curve(&tr(&[0, 0, 10, 10]), &curve).conforms());
        let w = check_maxplus_curve(&tr(&[0, 0, 9]), &curve)
            .witness
            .unwrap();
        assert_eq!((w.m, w.n), (1, 3));
    }

    #[test]
    fn tight_pair_limit() {
        let opts = CheckOptions {
            tight_pair_limit: Some(1),
        };
        let rep = check_lambda_nu_with(&tr(&[0, 0, 10, 20]), &ln(r(1, 10), r(1, 1)), &opts);
        assert_eq!(rep.tight_pairs.len(), 1);
        assert_eq!(rep.checked_pairs, 6);
    }

    fn ticks() -> impl Strategy<Value = Vec<u64>> {
        proptest::collection::vec(0u64..40, 0..25).prop_map(|mut v| {
            v.sort_unstable();
            v
        })
    }

    fn rational(max_num: i128, max_den: i128) -> impl Strategy<Value = Rational> {
        (0..=max_num, 1..=max_den).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn pairwise_matches_oracle(t in ticks(), l in rational(5, 6), nu in rational(6, 3)) {
            prop_assume!(l.is_positive());
            let trace = Trace::new(t).unwrap();
            let model = ln(l, nu);
            let rep = check_lambda_nu(&trace, &model);
            let oracle = oracle_lambda_nu(&trace, &model);
            prop_assert_eq!(rep.witness.map(|w| (w.m, w.n)), oracle);
            for &(m, n) in &rep.tight_pairs {
                let gap = Rational::from(trace.interarrival(m, n).unwrap());
                prop_assert_eq!(gap, model.curve_at(n - m));
            }
        }

        #[test]
        fn convolution_agrees(t in ticks(), l in rational(5, 6), nu in rational(6, 3)) {
            prop_assume!(l.is_positive());
            let trace = Trace::new(t).unwrap();
            let model = ln(l, nu);
            let a = check_lambda_nu(&trace, &model);
            let b = check_lambda_nu_via_convolution(&trace, &model);
            prop_assert_eq!(a.conforms(), b.conforms());
            prop_assert_eq!(a.witness.map(|w| w.n), b.witness.map(|w| w.n));
        }

        #[test]
        fn tspec_window_duality(t in ticks(), tau in rational(20, 3), k in 1u64..6, open in any::<bool>()) {
            prop_assume!(tau.is_positive());
            let mode = if open { WindowMode::Open } else { WindowMode::Closed };
            let trace = Trace::new(t).unwrap();
            let shaper = TSpecModel::new(tau, k, mode).unwrap();
            prop_assert_eq!(check_tspec(&trace, &shaper).conforms(), oracle_tspec(&trace, &shaper));
        }

        #[test]
        fn sigma_rho_routes_agree(t in ticks(), seed in 0u64..1000, sigma in rational(40, 2), rho in rational(20, 3)) {
            prop_assume!(rho.is_positive());
            let lengths = t.iter().enumerate().map(|(i, &x)| (x * 7 + i as u64 * 13 + seed) % 17 + 1).collect();
            let trace = Trace::with_lengths(t, lengths).unwrap();
            let model = SigmaRhoModel::new(sigma, rho).unwrap();
            let a = check_sigma_rho(&trace, &model).unwrap();
            let b = check_sigma_rho_via_convolution(&trace, &model).unwrap();
            prop_assert_eq!(a.conforms(), b.conforms());
            prop_assert_eq!(a.witness.map(|w| w.n), b.witness.map(|w| w.n));
        }

        #[test]
        fn fit_is_tight(t in ticks(), l in rational(5, 6), delta in rational(3, 4)) {
            prop_assume!(l.is_positive() && delta.is_positive());
            let trace = Trace::new(t).unwrap();
            let fit = fit_lambda_nu(&trace, FitTarget::Lambda(l)).unwrap();
            let TrafficModel::LambdaNu(model) = fit.model else { unreachable!() };
            prop_assert!(check_lambda_nu(&trace, &model).conforms());
            if let Some((m, n)) = fit.binding_pair {
                let looser_nu = (model.nu() - delta).positive_part();
                let tighter = ln(l, looser_nu);
                let rep = check_lambda_nu(&trace, &tighter);
                prop_assert!(!rep.conforms());
                // the binding pair itself fails under the tightened model
                let gap = Rational::from(trace.interarrival(m, n).unwrap());
                prop_assert!(gap < tighter.curve_at(n - m));
            } else {
                prop_assert!(model.nu().is_zero());
            }
        }

        #[test]
        fn fit_rate_is_tight(t in ticks(), nu in rational(4, 2), shrink in rational(3, 40)) {
            prop_assume!(shrink.is_positive());
            let trace = Trace::new(t).unwrap();
            match fit_lambda_nu(&trace, FitTarget::Nu(nu)) {
                Ok(fit) => {
                    let TrafficModel::LambdaNu(model) = fit.model else { unreachable!() };
                    prop_assert!(check_lambda_nu(&trace, &model).conforms());
                    let (m, n) = fit.binding_pair.unwrap();
                    let slower = ln(model.lambda() / (Rational::ONE + shrink), nu);
                    let gap = Rational::from(trace.interarrival(m, n).unwrap());
                    prop_assert!(gap < slower.curve_at(n - m));
                }
                Err(Error::Infeasible { m, n }) => {
                    prop_assert_eq!(trace.interarrival(m, n).unwrap(), 0);
                    prop_assert!(Rational::from(n - m) > nu);
                }
                Err(Error::Unconstrained) => {}
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }

        #[test]
        fn monotone_in_parameters(t in ticks(), l in rational(5, 6), nu in rational(6, 3), dl in rational(3, 6), dn in rational(3, 2)) {
            prop_assume!(l.is_positive());
            let trace = Trace::new(t).unwrap();
            if check_lambda_nu(&trace, &ln(l, nu)).conforms() {
                let faster = l * (Rational::ONE + dl);
                prop_assert!(check_lambda_nu(&trace, &ln(faster, nu + dn)).conforms());
            }
        }

        #[test]
        fn tspec_monotone(t in ticks(), tau in rational(20, 3), k in 1u64..6, shrink in rational(5, 5), open in any::<bool>()) {
            prop_assume!(tau.is_positive());
            let mode = if open { WindowMode::Open } else { WindowMode::Closed };
            let trace = Trace::new(t).unwrap();
            if check_tspec(&trace, &TSpecModel::new(tau, k, mode).unwrap()).conforms() {
                prop_assert!(check_tspec(&trace, &TSpecModel::new(tau, k + 1, mode).unwrap()).conforms());
                let smaller = tau / (Rational::ONE + shrink);
                prop_assert!(check_tspec(&trace, &TSpecModel::new(smaller, k, mode).unwrap()).conforms());
            }
        }

        #[test]
        fn fit_tspec_minimal(t in ticks(), tau in rational(20, 3), open in any::<bool>()) {
            prop_assume!(tau.is_positive());
            let mode = if open { WindowMode::Open } else { WindowMode::Closed };
            let trace = Trace::new(t).unwrap();
            let fit = fit_tspec(&trace, tau, mode).unwrap();
            let TrafficModel::TSpec(shaper) = fit.model else { unreachable!() };
            prop_assert!(check_tspec(&trace, &shaper).conforms());
            if shaper.k_max() > 1 {
                let smaller = TSpecModel::new(tau, shaper.k_max() - 1, mode).unwrap();
                prop_assert!(!check_tspec(&trace, &smaller).conforms());
            }
        }
    }
}
