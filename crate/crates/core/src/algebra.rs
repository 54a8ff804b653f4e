// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

//! Model-level calculus: max-plus and min-plus convolution, the mappings
//! between `(λ, ν)` and TSpec, and the superposition operators.

use alloc::format;
use alloc::vec::Vec;
use core::ops::Add;

use crate::error::Error;
use crate::model::{LambdaNuModel, MaxPlusCurve, SigmaRhoModel, TSpecModel, WindowMode};
use crate::rational::Rational;
use crate::trace::Trace;

/// `(F ⊗̄ G)(n) = max_{0 <= m <= n} F(m) + G(n - m)`.
pub fn maxplus_convolve<T>(f: &[T], g: &[T], n: usize) -> Result<T, Error>
where
    T: Copy + Ord + Add<Output = T>,
{
    maxplus_convolve_arg(f, g, n).map(|(v, _)| v)
}

/// Like [`maxplus_convolve`], also returning the smallest maximising `m`.
pub fn maxplus_convolve_arg<T>(f: &[T], g: &[T], n: usize) -> Result<(T, usize), Error>
where
    T: Copy + Ord + Add<Output = T>,
{
    for seq in [f, g] {
        if seq.len() <= n {
            return Err(Error::IndexOutOfRange {
                index: n,
                len: seq.len().saturating_sub(1),
            });
        }
    }
    let mut best = (f[0] + g[n], 0);
    for m in 1..=n {
        let v = f[m] + g[n - m];
        if v > best.0 {
            best = (v, m);
        }
    }
    Ok(best)
}

/// `(A ⊗ α)(t) = inf_{0 <= s <= t} A(s⁻) + α(t - s)` for the affine curve
/// `α(x) = ρx + σ`.
///
/// `A(s⁻)` is the traffic that arrived strictly before `s`, so `A(t)` minus a
/// candidate term is the bits in the closed window `[s, t]`. The cumulative
/// function is a step function and `α` is increasing, so the infimum is
/// attained at `s = 0`, an arrival tick `<= t`, or `s = t`.
pub fn minplus_convolve(
    trace: &Trace,
    model: &SigmaRhoModel,
    t: Rational,
) -> Result<Rational, Error> {
    if !trace.has_lengths() {
        return Err(Error::MissingLengths);
    }
    if t.is_negative() {
        return Err(Error::InvalidModel(format!("time must be >= 0, got {t}")));
    }
    let candidates = core::iter::once(Rational::ZERO)
        .chain(
            trace
                .arrivals()
                .iter()
                .map(|&a| Rational::from(a))
                .take_while(|&a| a <= t),
        )
        .chain(core::iter::once(t));
    let mut best: Option<Rational> = None;
    for s in candidates {
        let v = Rational::from(trace.cumulative_before(s)?) + model.curve_at(t - s);
        best = Some(best.map_or(v, |b| b.min(v)));
    }
    Ok(best.expect("candidate set is never empty"))
}

/// Which TSpec interval a `(λ, ν)` model maps onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Closed interval `τ = j/λ`, `K = ⌈ν⌉ + j + 1`.
    A,
    /// Interval just below `j/λ`, `K = ⌈ν⌉ + j`.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MappingVariant {
    variant: Variant,
    j: u64,
}

impl MappingVariant {
    pub fn new(variant: Variant, j: u64) -> Result<Self, Error> {
        if j == 0 {
            return Err(Error::InvalidModel(
                "mapping multiplier j must be >= 1".into(),
            ));
        }
        Ok(MappingVariant { variant, j })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn j(&self) -> u64 {
        self.j
    }
}

/// A `(λ, ν)`-constrained flow also meets the TSpec returned here.
///
/// The "just below `j/λ`" interval of variant B is carried structurally as
/// [`WindowMode::Open`] with `τ = j/λ`.
pub fn map_lambda_nu_to_tspec(model: &LambdaNuModel, v: MappingVariant) -> TSpecModel {
    let tau = Rational::from(v.j) / model.lambda();
    let base = model.nu().ceil() as u64 + v.j;
    let (k, mode) = match v.variant {
        Variant::A => (base + 1, WindowMode::Closed),
        Variant::B => (base, WindowMode::Open),
    };
    TSpecModel::new(tau, k, mode).expect("tau > 0 and K >= 1 for valid inputs")
}

/// A TSpec-conforming flow is `(K/τ, K - 1)`-constrained, in either window
/// mode.
pub fn map_tspec_to_lambda_nu(tspec: &TSpecModel) -> LambdaNuModel {
    let k = Rational::from(tspec.k_max());
    LambdaNuModel::new(k / tspec.tau(), k - Rational::ONE).expect("K >= 1 and tau > 0")
}

/// Two-flow superposition: `(λ₁ + λ₂, ν₁ + ν₂ + 1)`.
pub fn superpose_pair(a: &LambdaNuModel, b: &LambdaNuModel) -> LambdaNuModel {
    LambdaNuModel::new(a.lambda() + b.lambda(), a.nu() + b.nu() + Rational::ONE)
        .expect("sums of valid parameters are valid")
}

/// Direct superposition of `I` flows: `(Σλᵢ, Σνᵢ + I - 1)`. A single model
/// is returned unchanged.
pub fn superpose_lambda_nu(models: &[LambdaNuModel]) -> Result<LambdaNuModel, Error> {
    if models.is_empty() {
        return Err(Error::Arity { needed: 1, got: 0 });
    }
    let lambda: Rational = models.iter().map(|m| m.lambda()).sum();
    let nu: Rational = models.iter().map(|m| m.nu()).sum();
    LambdaNuModel::new(lambda, nu + Rational::from(models.len() - 1))
}

/// TSpec superposition: `1/τ = Σ 1/τᵢ`, `K = ΣKᵢ`. Mixed window modes give
/// an open-window result.
pub fn superpose_tspec(tspecs: &[TSpecModel]) -> Result<TSpecModel, Error> {
    if tspecs.len() < 2 {
        return Err(Error::Arity {
            needed: 2,
            got: tspecs.len(),
        });
    }
    let inv_tau: Rational = tspecs.iter().map(|t| Rational::ONE / t.tau()).sum();
    let k = tspecs.iter().map(|t| t.k_max()).sum();
    let first = tspecs[0].window_mode();
    let mode = if tspecs.iter().all(|t| t.window_mode() == first) {
        first
    } else {
        WindowMode::Open
    };
    TSpecModel::new(inv_tau.recip()?, k, mode)
}

/// `(σ, ρ)` superposition: componentwise sums.
pub fn superpose_sigma_rho(models: &[SigmaRhoModel]) -> Result<SigmaRhoModel, Error> {
    if models.is_empty() {
        return Err(Error::Arity { needed: 1, got: 0 });
    }
    SigmaRhoModel::new(
        models.iter().map(|m| m.sigma()).sum(),
        models.iter().map(|m| m.rho()).sum(),
    )
}

/// Inputs to the bit-domain (indirect) superposition route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndirectInputs {
    models: Vec<LambdaNuModel>,
    max_lengths: Vec<Rational>,
    min_length: Rational,
}

impl IndirectInputs {
    pub fn new(
        models: Vec<LambdaNuModel>,
        max_lengths: Vec<Rational>,
        min_length: Rational,
    ) -> Result<Self, Error> {
        if models.len() < 2 {
            return Err(Error::Arity {
                needed: 2,
                got: models.len(),
            });
        }
        if models.len() != max_lengths.len() {
            return Err(Error::Inconsistent(format!(
                "{} models but {} maximum lengths",
                models.len(),
                max_lengths.len()
            )));
        }
        if !min_length.is_positive() {
            return Err(Error::Inconsistent(format!(
                "minimum length must be > 0, got {min_length}"
            )));
        }
        if let Some((i, l)) = max_lengths
            .iter()
            .enumerate()
            .find(|(_, &l)| l < min_length)
        {
            return Err(Error::Inconsistent(format!(
                "maximum length {l} of flow {i} is below the minimum length {min_length}"
            )));
        }
        Ok(IndirectInputs {
            models,
            max_lengths,
            min_length,
        })
    }

    pub fn models(&self) -> &[LambdaNuModel] {
        &self.models
    }

    pub fn max_lengths(&self) -> &[Rational] {
        &self.max_lengths
    }

    pub fn min_length(&self) -> Rational {
        self.min_length
    }
}

/// Superposition through the `(σ, ρ)` bit domain:
/// `λ = Σ (lᵢ/l) λᵢ`, `ν = Σ (νᵢ + 1)(lᵢ/l)`.
pub fn superpose_indirect(inputs: &IndirectInputs) -> LambdaNuModel {
    let (lambda, nu) = inputs
        .models
        .iter()
        .zip(&inputs.max_lengths)
        .map(|(m, &li)| {
            let scale = li / inputs.min_length;
            (scale * m.lambda(), (m.nu() + Rational::ONE) * scale)
        })
        .fold((Rational::ZERO, Rational::ZERO), |(l, n), (dl, dn)| {
            (l + dl, n + dn)
        });
    LambdaNuModel::new(lambda, nu).expect("validated inputs give positive rate")
}

/// A `(λ, ν)` envelope reduced from a sampled curve, valid on `0..=horizon`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveReduction {
    pub model: LambdaNuModel,
    pub horizon: usize,
}

/// Largest-rate `(λ, ν)` envelope below a max-plus curve on its horizon:
/// `λ = min n/ᾱ(n)` over `ᾱ(n) > 0`, then `ν = max (n - λ·ᾱ(n))`, so that
/// `(n - ν)⁺/λ <= ᾱ(n)` for every `n <= H`.
pub fn curve_to_lambda_nu(curve: &MaxPlusCurve) -> Result<CurveReduction, Error> {
    let values = curve.values();
    let lambda = values
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, v)| v.is_positive())
        .map(|(n, &v)| Rational::from(n) / v)
        .min()
        .ok_or(Error::DegenerateCurve)?;
    let nu = values
        .iter()
        .enumerate()
        .map(|(n, &v)| Rational::from(n) - lambda * v)
        .max()
        .expect("curve has at least two samples")
        .positive_part();
    Ok(CurveReduction {
        model: LambdaNuModel::new(lambda, nu)?,
        horizon: curve.horizon(),
    })
}

/// Superposition of flows with general max-plus curves: reduce each curve to
/// its `(λ, ν)` envelope, then superpose directly. The result holds up to
/// the smallest input horizon.
pub fn superpose_curves(curves: &[MaxPlusCurve]) -> Result<CurveReduction, Error> {
    if curves.is_empty() {
        return Err(Error::Arity { needed: 1, got: 0 });
    }
    let reduced = curves
        .iter()
        .map(curve_to_lambda_nu)
        .collect::<Result<Vec<_>, _>>()?;
    let models: Vec<LambdaNuModel> = reduced.iter().map(|r| r.model).collect();
    Ok(CurveReduction {
        model: superpose_lambda_nu(&models)?,
        horizon: reduced.iter().map(|r| r.horizon).min().unwrap_or(0),
    })
}
