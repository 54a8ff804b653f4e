// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded randomized property suite.
//!
//! Each property owns an [`Lcg`] stream derived from the suite seed and its
//! position in [`PROPERTIES`], so properties can run on separate threads and
//! the summary is still byte-identical for a given config.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use maxplus_tc_core::generators::{
    gen_extremal_lambda_nu, gen_jittered, gen_lengths, gen_periodic, gen_random_lambda_nu,
    gen_random_tspec, gen_tspec_extremal, Lcg,
};
use maxplus_tc_core::{
    aggregate_by_composition, check_lambda_nu_via_convolution, check_lambda_nu_with,
    check_sigma_rho, check_sigma_rho_via_convolution, check_tspec, curve_to_lambda_nu,
    fit_lambda_nu, fit_sigma_rho, map_lambda_nu_to_tspec, map_tspec_to_lambda_nu, merge_traces,
    superpose_indirect, superpose_lambda_nu, superpose_pair, superpose_sigma_rho, superpose_tspec,
    CheckOptions, FitTarget, IndirectInputs, LambdaNuModel, MappingVariant, MaxPlusCurve,
    MergePolicy, Rational, SigmaRhoModel, TSpecModel, Trace, TrafficModel, Variant, WindowMode,
};

use crate::error::ToolError;
use crate::wire::{lambda_nu_json, ModelJson, RationalJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: u64,
    pub max_flows: usize,
    pub max_packets: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            trials: 200,
            max_flows: 5,
            max_packets: 500,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ToolError> {
        if self.max_flows < 2 {
            return Err(ToolError::Usage(format!(
                "max_flows must be >= 2, got {}",
                self.max_flows
            )));
        }
        if self.max_packets == 0 {
            return Err(ToolError::Usage("max_packets must be >= 1".into()));
        }
        Ok(())
    }
}

/// Counterexamples kept per property; the failure count is always exact.
const KEPT_COUNTEREXAMPLES: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub trials: u64,
    pub failures: u64,
    pub counterexamples: Vec<Value>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub config: SuiteConfig,
    pub properties: Vec<PropertyOutcome>,
    pub total_trials: u64,
    pub total_failures: u64,
    pub warnings: Vec<String>,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.total_failures == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        for p in &self.properties {
            let verdict = if p.passed() { "ok" } else { "FAILED" };
            let _ = writeln!(
                out,
                "{:<36}{:>6} trials  {:>4} failures  {verdict}",
                p.name, p.trials, p.failures
            );
            for c in &p.counterexamples {
                let _ = writeln!(out, "    counterexample: {c}");
            }
        }
        let _ = writeln!(
            out,
            "seed {}: {} trials, {} failures",
            self.config.seed, self.total_trials, self.total_failures
        );
        out
    }
}

/// One trial: `Err` carries the serialized counterexample.
type Trial = fn(&SuiteConfig, &mut Lcg) -> Result<(), Value>;

pub const PROPERTIES: &[(&str, Trial)] = &[
    ("lambda_nu_superposition", lambda_nu_superposition),
    ("superposition_tightness", superposition_tightness),
    ("superposition_fold", superposition_fold),
    ("tspec_to_lambda_nu_mapping", tspec_to_lambda_nu_mapping),
    ("lambda_nu_to_tspec_mapping", lambda_nu_to_tspec_mapping),
    ("aggregate_composition", aggregate_composition),
    (
        "convolution_check_equivalence",
        convolution_check_equivalence,
    ),
    ("sigma_rho_superposition", sigma_rho_superposition),
    ("sigma_rho_check_equivalence", sigma_rho_check_equivalence),
    ("indirect_dominance", indirect_dominance),
    ("tspec_superposition", tspec_superposition),
    ("curve_reduction_validity", curve_reduction_validity),
    ("fit_soundness", fit_soundness),
    ("tspec_window_duality", tspec_window_duality),
    ("generator_round_trip", generator_round_trip),
    (
        "merge_permutation_associativity",
        merge_permutation_associativity,
    ),
];

pub fn property_names() -> impl Iterator<Item = &'static str> {
    PROPERTIES.iter().map(|(name, _)| *name)
}

fn stream_seed(seed: u64, position: usize) -> u64 {
    seed ^ (position as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Runs one named property for `cfg.trials` trials.
pub fn run_property(name: &str, cfg: &SuiteConfig) -> Result<PropertyOutcome, ToolError> {
    cfg.validate()?;
    let (position, &(name, trial)) = PROPERTIES
        .iter()
        .enumerate()
        .find(|(_, (n, _))| *n == name)
        .ok_or_else(|| ToolError::Usage(format!("unknown property `{name}`")))?;
    Ok(execute(name, trial, position, cfg))
}

fn execute(
    name: &'static str,
    trial: Trial,
    position: usize,
    cfg: &SuiteConfig,
) -> PropertyOutcome {
    let mut rng = Lcg::new(stream_seed(cfg.seed, position));
    let mut outcome = PropertyOutcome {
        name,
        trials: cfg.trials,
        failures: 0,
        counterexamples: Vec::new(),
    };
    for index in 0..cfg.trials {
        if let Err(counterexample) = trial(cfg, &mut rng) {
            outcome.failures += 1;
            if outcome.counterexamples.len() < KEPT_COUNTEREXAMPLES {
                outcome
                    .counterexamples
                    .push(json!({ "trial": index, "input": counterexample }));
            }
        }
    }
    outcome
}

pub fn run_property_suite(cfg: &SuiteConfig) -> Result<SuiteSummary, ToolError> {
    cfg.validate()?;
    let properties: Vec<PropertyOutcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = PROPERTIES
            .iter()
            .enumerate()
            .map(|(position, &(name, trial))| {
                scope.spawn(move || execute(name, trial, position, cfg))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("property thread panicked"))
            .collect()
    });
    let mut warnings = Vec::new();
    if cfg.trials == 0 {
        warnings.push("trials = 0: every property passes vacuously".to_string());
    }
    Ok(SuiteSummary {
        config: *cfg,
        total_trials: properties.iter().map(|p| p.trials).sum(),
        total_failures: properties.iter().map(|p| p.failures).sum(),
        properties,
        warnings,
    })
}

// ---- random inputs -------------------------------------------------------

fn rational(num: u64, den: u64) -> Rational {
    Rational::new(num as i128, den as i128).expect("nonzero denominator")
}

/// Rate `p/q` packets per tick with `1/λ` between 1/3 and 20 ticks.
fn random_rate(rng: &mut Lcg) -> Rational {
    rational(rng.range(1, 3), rng.range(1, 20))
}

/// Burst in `0..=4` with denominator up to 3.
fn random_burst(rng: &mut Lcg) -> Rational {
    let den = rng.range(1, 3);
    rational(rng.upto(4 * den), den)
}

fn random_lambda_nu(rng: &mut Lcg) -> LambdaNuModel {
    LambdaNuModel::new(random_rate(rng), random_burst(rng)).expect("positive rate")
}

fn random_tspec(rng: &mut Lcg) -> TSpecModel {
    let den = rng.range(1, 3);
    let tau = rational(rng.range(den, 30 * den), den);
    let mode = if rng.chance(1, 2) {
        WindowMode::Closed
    } else {
        WindowMode::Open
    };
    TSpecModel::new(tau, rng.range(1, 5), mode).expect("positive window and count")
}

fn packet_count(rng: &mut Lcg, cfg: &SuiteConfig) -> usize {
    rng.range(1, cfg.max_packets as u64) as usize
}

#[derive(Debug, Clone, Copy)]
enum FlowKind {
    Extremal,
    Random,
    Periodic,
    Jittered,
}

impl FlowKind {
    fn name(self) -> &'static str {
        match self {
            FlowKind::Extremal => "extremal",
            FlowKind::Random => "random",
            FlowKind::Periodic => "periodic",
            FlowKind::Jittered => "jittered",
        }
    }
}

struct Flow {
    kind: FlowKind,
    model: LambdaNuModel,
    trace: Trace,
}

impl Flow {
    fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "model": lambda_nu_json(&self.model, None),
            "arrivals": self.trace.arrivals(),
            "lengths": self.trace.lengths(),
        })
    }
}

/// A trace together with a `(λ, ν)` model it conforms to by construction.
fn random_flow(rng: &mut Lcg, count: usize) -> Flow {
    let kind = match rng.upto(3) {
        0 => FlowKind::Extremal,
        1 => FlowKind::Random,
        2 => FlowKind::Periodic,
        _ => FlowKind::Jittered,
    };
    let (model, trace) = match kind {
        FlowKind::Extremal => {
            let model = random_lambda_nu(rng);
            (model, gen_extremal_lambda_nu(&model, count))
        }
        FlowKind::Random => {
            let model = random_lambda_nu(rng);
            let slack = model.lambda().recip().expect("positive rate").ceil() as u64 * 4;
            (model, gen_random_lambda_nu(&model, count, slack, rng))
        }
        FlowKind::Periodic => {
            // gaps of ⌈1/λ⌉ ticks satisfy any burst allowance at rate λ
            let model = random_lambda_nu(rng);
            let period = model.lambda().recip().expect("positive rate").ceil() as u64;
            let phase = rng.upto(period);
            (
                model,
                gen_periodic(period, phase, count).expect("period >= 1"),
            )
        }
        FlowKind::Jittered => {
            let period = rng.range(1, 20);
            let jitter = rng.upto(period - 1);
            let seed = rng.next_u32() as u64;
            let (trace, model) =
                gen_jittered(period, jitter, seed, count).expect("jitter below period");
            (model, trace)
        }
    };
    Flow { kind, model, trace }
}

fn random_flows(rng: &mut Lcg, cfg: &SuiteConfig) -> Vec<Flow> {
    let flows = rng.range(2, cfg.max_flows as u64) as usize;
    (0..flows)
        .map(|_| {
            let count = packet_count(rng, cfg);
            random_flow(rng, count)
        })
        .collect()
}

/// Sorted ticks with no model behind them.
fn arbitrary_trace(rng: &mut Lcg, count: usize, max_tick: u64) -> Trace {
    let mut ticks: Vec<u64> = (0..count).map(|_| rng.upto(max_tick)).collect();
    ticks.sort_unstable();
    Trace::new(ticks).expect("sorted")
}

fn merged(traces: &[Trace]) -> Trace {
    merge_traces(traces, MergePolicy::ByFlowIndex)
        .expect("flows share tick unit and length presence")
        .trace
}

fn traces_of(flows: &[Flow]) -> Vec<Trace> {
    flows.iter().map(|f| f.trace.clone()).collect()
}

fn model_json(model: impl Into<TrafficModel>) -> Value {
    serde_json::to_value(ModelJson::from(&model.into())).expect("serializable")
}

fn r(x: Rational) -> Value {
    serde_json::to_value(RationalJson::from(x)).expect("serializable")
}

fn ensure(ok: bool, counterexample: impl FnOnce() -> Value) -> Result<(), Value> {
    if ok {
        Ok(())
    } else {
        Err(counterexample())
    }
}

// ---- properties ----------------------------------------------------------

/// The merge of `(λᵢ, νᵢ)` flows conforms to their direct superposition.
fn lambda_nu_superposition(cfg: &SuiteConfig, rng: &mut Lcg) -> Result<(), Value> {
    let flows = random_flows(rng, cfg);
    let models: Vec<LambdaNuModel> = flows.iter().map(|f| f.model).collect();
    let aggregate = superpose_lambda_nu(&models).expect("at least two flows");
    let report = check_lambda_nu_with(
        &merged(&traces_of(&flows)),
        &aggregate,
        &CheckOptions::verdict_only(),
    );
    ensure(report.conforms(), || {
        json!({
            "flows": flows.iter().map(Flow::to_json).collect::<Vec<_>>(),
            "aggregate": model_json(aggregate),
            "witness": report.witness.map(|w| [w.m, w.n]),
        })
    })
}

/// Two aligned periodic flows meet the direct burst bound with equality.
fn superposition_tightness(cfg: &SuiteConfig, rng: &mut Lcg) -> Result<(), Value> {
    let tau = rng.range(1, 50);
    let count = rng.range(2, cfg.max_packets.max(2) as u64) as usize;
    let flow = gen_periodic(tau, 0, count).expect("tau >= 1");
    let aggregate = merged(&[flow.clone(), flow]);
    let single = LambdaNuModel::new(rational(1, tau), Rational::ZERO).expect("positive rate");
    let direct = superpose_pair(&single, &single);
    let fitted = fit_lambda_nu(&aggregate, FitTarget::Lambda(rational(2, tau)));
    let nu = match &fitted {
        Ok(fit) => match fit.model {
            TrafficModel::LambdaNu(m) => Some(m.nu()),
            _ => None,
        },
        Err(_) => None,
    };
    ensure(
        nu == Some(Rational::ONE) && direct.nu() == Rational::ONE,
        || json!({ "tau": tau, "count": count, "fitted_nu": nu.map(r), "direct": model_json(direct) }),
    )
}

/// Flat superposition equals the pairwise fold, and one flow is the identity.
fn superposition_fold(cfg: &SuiteConfig, rng: &mut Lcg) -> Result<(), Value> {
    let count = rng.range(1, cfg.max_flows as u64) as usize;
    let models: Vec<LambdaNuModel> = (0..count).map(|_| random_lambda_nu(rng)).collect();
    let flat = superpose_lambda_nu(&models).expect("nonempty");
    let folded = models[1..]
        .iter()
        .fold(models[0], |acc, m| superpose_pair(&acc, m));
    ensure(flat == folded, || {
        json!({
            "models": models.iter().map(|&m| model_json(m)).collect::<Vec<_>>(),
            "flat": model_json(flat),
            "folded": model_json(folded),
        })
    })
}

/// TSpec-conforming traces conform to the mapped `(K/τ, K − 1)` model.
fn tspec_to_lambda_nu_mapping(cfg: &SuiteConfig, rng: &mut Lcg) -> Result<(), Value> {
    let tspec = random_tspec(rng);
    let count = packet_count(rng, cfg);
    let trace = if rng.chance(1, 4) && tspec.tau().is_integer() {
        gen_tspec_extremal(&tspec, count).expect("integer tau")
    } else {
        let max_gap = tspec.tau().ceil() as u64;
        gen_random_tspec(&tspec, count, max_gap, rng)
    };
    let mapped = map_tspec_to_lambda_nu(&tspec);
    let source_ok = check_tspec(&trace, &tspec).conforms();
    let report = check_lambda_nu_with(&trace, &mapped, &CheckOptions::verdict_only());
    ensure(source_ok && report.conforms(), || {
        json!({
            "tspec": model_json(tspec),
            "arrivals": trace.arrivals(),
            "source_conforms": source_ok,
            "mapped": model_json(mapped),
        })
    })
}

/// `(λ, ν)`-conforming traces conform to both TSpec images for `j = 1..=5`.
fn lambda_nu_to_tspec_mapping(cfg: &SuiteConfig, rng: &mut Lcg) -> Result<(), Value> {
    let count = packet_count(rng, cfg);
    let flow = random_flow(rng, count);
    for j in 1..=5 {
        for variant in [Variant::A, Variant::B] {
            let v = MappingVariant::new(variant, j).expect("j >= 1");
            let tspec = map_lambda_nu_to_tspec(&flow.model, v);
            let report = check_tspec(&flow.trace, &tspec);
            if let Some(w) = report.witness {
                return Err(json!({
                    "flow": flow.to_json(),
                    "variant": format!("{variant:?}").to_lowercase(),
                    "j": j,
                    "tspec": model_json(tspec),
                    "witness": [w.m, w.n],
                }));
            }
        }
    }
    Ok(())
}

/// The infimum-over-splits aggregate equals the merged trace at every index.
fn aggregate_composition(cfg: &SuiteConfig, rng: &mut Lcg) -> Result<(), Value> {
    const TOTAL: u64 = 12;
    let flows = rng.range(1, cfg.max_flows.min(3) as u64) as usize;
    let mut budget = rng.upto(TOTAL.min(cfg.max_packets as u64));
    let traces: Vec<Trace> = (0..flows)
        .map(|_| {
            let count = rng.upto(budget);
            budget -= count;
            arbitrary_trace(rng, count as usize, 30)
        })
        .collect();
    let aggregate = merged(&traces);
    for n in 0..=aggregate.len() {
        let via_splits = aggregate_by_composition(&traces, n).expect("n within total");
        let via_merge = aggregate.arrival(n).expect("n within total");
        if via_splits != via_merge {
            return Err(json!({
                "flows": traces.iter().map(|t| t.arrivals().to_vec()).collect::<Vec<_>>(),
                "n": n,
                "composition": via_splits,
                "merge": via_merge,
            }));
        }
    }
    Ok(())
}

/// Pairwise and convolution checks agree on verdict and on the witness `n`.
fn convolution_check_equivalence(cfg: &SuiteConfig, rng: &mut Lcg) -> Result<(), Value> {
    let count = packet_count(rng, cfg);
    let (trace, model) = if rng.chance(1, 2) {
        let flow = random_flow(rng, count);
        (flow.trace, flow.model)
    } else {
        let trace = arbitrary_trace(rng, count, 3 * count as u64);
        (trace, random_lambda_nu(rng))
    };
    let pairwise = check_lambda_nu_with(&trace, &model, &CheckOptions::verdict_only());
    let convolution = check_lambda_nu_via_convolution(&trace, &model);
    let same = pairwise.conforms() == convolution.conforms()
        && pairwise.witness.map(|w| w.n) == convolution.witness.map(|w| w.n);
    ensure(same, || {
        json!({
            "arrivals": trace.arrivals(),
            "model": model_json(model),
            "pairwise_witness": pairwise.witness.map(|w| [w.m, w.n]),
            "convolution_witness": convolution.witness.map(|w| [w.m, w.n]),
        })
    })
}

/// A flow with random lengths and its tightest `σ` at a random `ρ`.
fn random_bit_flow(rng: &mut Lcg, cfg: &SuiteConfig) -> (Trace, SigmaRhoModel) {
    let count = packet_count(rng, cfg);
    let flow = random_flow(rng, count);
    let lengths = gen_lengths(count, 64, 12_000, rng);
    let trace =
        Trace::with_lengths(flow.trace.arrivals().to_vec(), lengths).expect("matching counts");
    let rho = rational(rng.range(1, 4000), rng.range(1, 10));
    let fit = fit_sigma_rho(&trace, rho).expect("trace has lengths");
    let TrafficModel::SigmaRho(model) = fit.model else {
        unreachable!("sigma-rho fit yields a sigma-rho model")
    };
    (trace, model)
}

/// The merge of `(σᵢ, ρᵢ)` flows conforms to the summed envelope.
fn sigma_rho_superposition(cfg: &SuiteConfig, rng: &mut Lcg) -> Result<(), Value> {
    let flows = rng.range(2, cfg.max_flows as u64) as usize;
    let (traces, models): (Vec<Trace>, Vec<SigmaRhoModel>) =
        (0..flows).map(|_| random_bit_flow(rng, cfg)).unzip();
    let aggregate = superpose_sigma_rho(&models).expect("nonempty");
    let report =
        check_sigma_rho(&merged(&traces), &aggregate).expect("lengths carried through merge");
    ensure(report.conforms(), || {
        json!({
            "flows": traces.iter().zip(&models).map(|(t, &m)| json!({
                "arrivals": t.arrivals(), "lengths": t.lengths(), "model": model_json(m),
            })).collect::<Vec<_>>(),
            "aggregate": model_json(aggregate),
            "witness": report.witness.map(|w| [w.m, w.n]),
        })
    })
}

/// Both `(σ, ρ)` checks agree on the verdict.
fn sigma_rho_check_equivalence(cfg: &SuiteConfig, rng: &mut Lcg) -> Result<(), Value> {
    let count = packet_count(rng, cfg).min(200);
    let trace = arbitrary_trace(rng, count, 2 * count as u64);
    let trace = Trace::with_lengths(trace.arrivals().to_vec(), gen_lengths(count, 1, 100, rng))
        .expect("matching counts");
    let model = SigmaRhoModel::new(
        rational(rng.upto(400), 1),
        rational(rng.range(1, 200), rng.range(1, 4)),
    )
    .expect("nonnegative parameters");
    let direct = check_sigma_rho(&trace, &model).expect("lengths present");
    let convolution = check_sigma_rho_via_convolution(&trace, &model).expect("lengths present");
    ensure(direct.conforms() == convolution.conforms(), || {
        json!({
            "arrivals": trace.arrivals(),
            "lengths": trace.lengths(),
            "model": model_json(model),
            "direct_conforms": direct.conforms(),
        })
    })
}

/// The bit-domain route never gives a smaller rate, and always a larger burst.
fn indirect_dominance(cfg: &SuiteConfig, rng: &mut Lcg) -> Result<(), Value> {
    let flows = rng.range(2, cfg.max_flows as u64) as usize;
    let models: Vec<LambdaNuModel> = (0..flows).map(|_| random_lambda_nu(rng)).collect();
    let min_length = rational(rng.range(1, 1500), rng.range(1, 4));
    let max_lengths: Vec<Rational> = (0..flows)
        .map(|_| min_length * rational(rng.range(4, 40), 4))
        .collect();
    let inputs = IndirectInputs::new(models.clone(), max_lengths.clone(), min_length)
        .expect("valid lengths");
    let indirect = superpose_indirect(&inputs);
    let direct = superpose_lambda_nu(&models).expect("nonempty");
    ensure(
        indirect.lambda() >= direct.lambda() && indirect.nu() > direct.nu(),
        || {
            json!({
                "models": models.iter().map(|&m| model_json(m)).collect::<Vec<_>>(),
                "max_lengths": max_lengths.iter().map(|&l| r(l)).collect::<Vec<_>>(),
                "min_length": r(min_length),
                "indirect": model_json(indirect),
                "direct": model_json(direct),
            })
        },
    )
}

/// The merge of TSpec-conforming flows conforms to the TSpec superposition.
fn tspec_superposition(cfg: &SuiteConfig, rng: &mut Lcg) -> Result<(), Value> {
    let flows = rng.range(2, cfg.max_flows as u64) as usize;
    let mut tspecs = Vec::with_capacity(flows);
    let mut traces = Vec::with_capacity(flows);
    for _ in 0..flows {
        let tspec = random_tspec(rng);
        let count = packet_count(rng, cfg);
        let max_gap = tspec.tau().ceil() as u64;
        traces.push(gen_random_tspec(&tspec, count, max_gap, rng));
        tspecs.push(tspec);
    }
    let aggregate = superpose_tspec(&tspecs).expect("at least two flows");
    let report = check_tspec(&merged(&traces), &aggregate);
    ensure(report.conforms(), || {
        json!({
            "flows": traces.iter().zip(&tspecs).map(|(t, &s)| json!({
                "arrivals": t.arrivals(), "tspec": model_json(s),
            })).collect::<Vec<_>>(),
            "aggregate": model_json(aggregate),
            "witness": report.witness.map(|w| [w.m, w.n]),
        })
    })
}

/// A random nondecreasing curve with `ᾱ(0) = 0`, horizon `1..=50`, and at
/// least one positive sample.
fn random_curve(rng: &mut Lcg) -> MaxPlusCurve {
    let horizon = rng.range(1, 50) as usize;
    let mut values = vec![Rational::ZERO];
    let mut level = Rational::ZERO;
    for n in 1..=horizon {
        let step = if rng.chance(1, 3) {
            Rational::ZERO
        } else {
            rational(rng.upto(40), rng.range(1, 6))
        };
        level = level + step;
        if n == horizon && !level.is_positive() {
            level = rational(rng.range(1, 10), 1);
        }
        values.push(level);
    }
    MaxPlusCurve::new(values).expect("nondecreasing from zero")
}

/// The reduced `(λ, ν)` envelope lies below the curve on its horizon.
fn curve_reduction_validity(_cfg: &SuiteConfig, rng: &mut Lcg) -> Result<(), Value> {
    let curve = random_curve(rng);
    let reduced = curve_to_lambda_nu(&curve).expect("curve has a positive sample");
    let model = reduced.model;
    let bad = (0..=curve.horizon()).find(|&n| model.curve_at(n) > curve.values()[n]);
    ensure(bad.is_none() && reduced.horizon == curve.horizon(), || {
        json!({
            "curve": curve.values().iter().map(|&v| r(v)).collect::<Vec<_>>(),
            "reduced": model_json(model),
            "n": bad,
        })
    })
}

/// Fitted models conform, and their binding pair meets the bound exactly.
fn fit_soundness(cfg: &SuiteConfig, rng: &mut Lcg) -> Result<(), Value> {
    let count = packet_count(rng, cfg);
    let trace = if rng.chance(1, 2) {
        random_flow(rng, count).trace
    } else {
        arbitrary_trace(rng, count, 3 * count as u64)
    };
    let target = if rng.chance(1, 2) {
        FitTarget::Lambda(random_rate(rng))
    } else {
        FitTarget::Nu(random_burst(rng))
    };
    let fail = |why: &str| {
        json!({
            "arrivals": trace.arrivals(),
            "target": match target {
                FitTarget::Lambda(l) => json!({ "lambda": r(l) }),
                FitTarget::Nu(n) => json!({ "nu": r(n) }),
            },
            "reason": why,
        })
    };
    let fit = match fit_lambda_nu(&trace, target) {
        Ok(fit) => fit,
        // no rate can make coincident packets beyond the burst conform
        Err(maxplus_tc_core::Error::Infeasible { m, n }) => {
            let gap = trace.interarrival(m, n).expect("indices from the trace");
            let nu = match target {
                FitTarget::Nu(nu) => nu,
                FitTarget::Lambda(_) => return Err(fail("infeasible with fixed rate")),
            };
            return ensure(gap == 0 && Rational::from(n - m) > nu, || {
                fail("spurious infeasible")
            });
        }
        Err(maxplus_tc_core::Error::Unconstrained) => {
            let nu = match target {
                FitTarget::Nu(nu) => nu,
                FitTarget::Lambda(_) => return Err(fail("unconstrained with fixed rate")),
            };
            let widest = trace.len().saturating_sub(1);
            return ensure(Rational::from(widest) <= nu, || {
                fail("spurious unconstrained")
            });
        }
        Err(e) => return Err(fail(&e.to_string())),
    };
    let TrafficModel::LambdaNu(model) = fit.model else {
        return Err(fail("fit returned a non-(lambda, nu) model"));
    };
    if !check_lambda_nu_with(&trace, &model, &CheckOptions::verdict_only()).conforms() {
        return Err(fail("fitted model rejects its own trace"));
    }
    if let Some((m, n)) = fit.binding_pair {
        let gap = Rational::from(trace.interarrival(m, n).expect("indices from the trace"));
        let excess = Rational::from(n - m) - model.nu();
        if excess.is_negative() || model.lambda() * gap != excess {
            return Err(fail("binding pair is not tight"));
        }
    }
    Ok(())
}

/// Window-based TSpec verdict equals a count over every packet-anchored window.
fn tspec_window_duality(cfg: &SuiteConfig, rng: &mut Lcg) -> Result<(), Value> {
    let count = packet_count(rng, cfg).min(200);
    let tspec = random_tspec(rng);
    let trace = arbitrary_trace(rng, count, tspec.tau().ceil() as u64 * count as u64 / 2 + 1);
    let arrivals = trace.arrivals();
    let oracle = (0..arrivals.len()).all(|start| {
        let inside = arrivals[start..]
            .iter()
            .take_while(|&&a| tspec.window_mode().fits(a - arrivals[start], tspec.tau()))
            .count();
        inside as u64 <= tspec.k_max()
    });
    let verdict = check_tspec(&trace, &tspec).conforms();
    ensure(
        oracle == verdict,
        || json!({ "arrivals": arrivals, "tspec": model_json(tspec), "oracle": oracle, "checker": verdict }),
    )
}

/// Each generator's output passes the checker for the model it was built from.
fn generator_round_trip(cfg: &SuiteConfig, rng: &mut Lcg) -> Result<(), Value> {
    let count = packet_count(rng, cfg);
    let flow = random_flow(rng, count);
    if !check_lambda_nu_with(&flow.trace, &flow.model, &CheckOptions::verdict_only()).conforms() {
        return Err(json!({ "generator": flow.kind.name(), "flow": flow.to_json() }));
    }
    if matches!(flow.kind, FlowKind::Extremal) && flow.model.nu().is_integer() {
        let fit = fit_lambda_nu(&flow.trace, FitTarget::Lambda(flow.model.lambda()));
        let nu = fit.ok().and_then(|f| match f.model {
            TrafficModel::LambdaNu(m) => Some(m.nu()),
            _ => None,
        });
        // a short trace cannot exhibit the whole burst
        let expected = flow.model.nu().min(Rational::from(count - 1));
        if nu != Some(expected) {
            return Err(
                json!({ "generator": "extremal_tightness", "flow": flow.to_json(), "fitted_nu": nu.map(r) }),
            );
        }
    }
    let tspec = random_tspec(rng);
    let tspec_trace = if tspec.tau().is_integer() && rng.chance(1, 2) {
        gen_tspec_extremal(&tspec, count).expect("integer tau")
    } else {
        gen_random_tspec(&tspec, count, tspec.tau().ceil() as u64, rng)
    };
    ensure(
        check_tspec(&tspec_trace, &tspec).conforms(),
        || json!({ "generator": "tspec", "tspec": model_json(tspec), "arrivals": tspec_trace.arrivals() }),
    )
}

/// Merging is invariant under reordering and regrouping the inputs.
fn merge_permutation_associativity(cfg: &SuiteConfig, rng: &mut Lcg) -> Result<(), Value> {
    let flows = rng.range(2, cfg.max_flows as u64) as usize;
    let traces: Vec<Trace> = (0..flows)
        .map(|_| {
            let count = rng.upto(cfg.max_packets.min(100) as u64) as usize;
            arbitrary_trace(rng, count, 200)
        })
        .collect();
    let flat = merged(&traces);
    let mut reordered = traces.clone();
    reordered.reverse();
    let rotate = rng.upto(flows as u64 - 1) as usize;
    reordered.rotate_left(rotate);
    let split = rng.range(1, flows as u64 - 1) as usize;
    let nested = merged(&[merged(&traces[..split]), merged(&traces[split..])]);
    ensure(
        merged(&reordered).arrivals() == flat.arrivals() && nested.arrivals() == flat.arrivals(),
        || json!({ "flows": traces.iter().map(|t| t.arrivals().to_vec()).collect::<Vec<_>>(), "split": split }),
    )
}
