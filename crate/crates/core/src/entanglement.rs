//! Concurrence of the two-component families, by two independent routes.
//!
//! Closed form: a state `mu |eta>|gamma> + nu |xi>|delta>` with normalized,
//! mutually nonorthogonal components has concurrence
//!
//! ```text
//! C = 2 |mu| |nu| sqrt((1 - |p1|^2)(1 - |p2|^2))
//!     / (|mu|^2 + |nu|^2 + 2 Re(mu* nu p1 p2*))
//! ```
//!
//! with `p1 = <eta|xi>`, `p2 = <delta|gamma>`. For the families here
//! `mu = +-nu` and the overlaps are real, so this collapses to
//! `sqrt((1 - p1^2)(1 - p2^2)) / (1 +- p1 p2)`.
//!
//! Oracle: for a pure state of Schmidt rank 2 the same number is
//! `sqrt(2 (1 - Tr rho_a^2))`, which needs nothing but a partial trace and
//! is therefore computed from the numeric state with no reference to the
//! closed-form path. The two routes agreeing at 1e-8 is the central
//! correctness check of the artifact.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{auto_truncation, Mode, TruncationConfig, TwoModeState};
use crate::laguerre::overlap_p;
use crate::states::{build_state, Family, Sign, StateSpec};

/// Denominators at or below this are treated as a vanishing-norm state.
const DEGENERATE_DENOM_EPS: f64 = 1e-14;

/// Both concurrence routes for one state, with the overlaps and truncation
/// that produced them.
#[derive(Debug, Clone)]
pub struct ConcurrenceReport {
    pub closed_form: f64,
    pub oracle: f64,
    pub p1: f64,
    pub p2: f64,
    pub spec: StateSpec,
    pub truncation_used: TruncationConfig,
}

impl ConcurrenceReport {
    pub fn abs_diff(&self) -> f64 {
        (self.closed_form - self.oracle).abs()
    }
}

/// General two-component concurrence with complex weights and overlaps.
pub fn concurrence_general(mu: C64, nu: C64, p1: C64, p2: C64) -> Result<f64> {
    debug_assert!(p1.norm() <= 1.0 + 1e-12 && p2.norm() <= 1.0 + 1e-12);
    let denom = mu.norm_sqr() + nu.norm_sqr() + 2.0 * (mu.conj() * nu * p1 * p2.conj()).re;
    if denom <= DEGENERATE_DENOM_EPS {
        return Err(Error::DegenerateState { norm_sq: denom });
    }
    let q1 = (1.0 - p1.norm_sqr()).max(0.0);
    let q2 = (1.0 - p2.norm_sqr()).max(0.0);
    let num = 2.0 * mu.norm() * nu.norm() * (q1 * q2).sqrt();
    Ok((num / denom).clamp(0.0, 1.0))
}

/// Equal-weight two-component concurrence with real signed overlaps:
/// `sqrt((1 - p1^2)(1 - p2^2)) / (1 +- p1 p2)`.
fn equal_weight_concurrence(sign: Sign, p1: f64, p2: f64) -> Result<f64> {
    let denom = 1.0 + sign.factor() * p1 * p2;
    if denom <= DEGENERATE_DENOM_EPS {
        return Err(Error::DegenerateState { norm_sq: denom });
    }
    let num = ((1.0 - p1 * p1) * (1.0 - p2 * p2)).max(0.0).sqrt();
    Ok((num / denom).clamp(0.0, 1.0))
}

/// Concurrence of the bare entangled coherent state. The minus branch is
/// maximally entangled for every alpha != 0; the plus branch is
/// `(1 - e^{-4x})/(1 + e^{-4x})`, increasing in `x = |alpha|^2`.
pub fn concurrence_ecs(sign: Sign, alpha: C64) -> Result<f64> {
    let e4 = (-4.0 * alpha.norm_sqr()).exp();
    match sign {
        Sign::Minus => {
            if 1.0 - e4 <= DEGENERATE_DENOM_EPS {
                return Err(Error::DegenerateState { norm_sq: 1.0 - e4 });
            }
            Ok(1.0)
        }
        Sign::Plus => Ok((1.0 - e4) / (1.0 + e4)),
    }
}

/// Concurrence of the two-mode excited family:
/// `sqrt((1 - p1^2)(1 - p2^2)) / (1 +- p1 p2)` with `p1 = p(alpha, m)`,
/// `p2 = p(alpha, n)`. At m = n the minus branch is identically 1.
pub fn concurrence_tmeecs(sign: Sign, alpha: C64, m: usize, n: usize) -> Result<f64> {
    assert!(m >= 1 && n >= 1, "TMEECS needs m >= 1 and n >= 1");
    equal_weight_concurrence(sign, overlap_p(alpha, m), overlap_p(alpha, n))
}

/// Concurrence of the single-mode excited family with excitation count `k`;
/// the mode-a overlap is `p(alpha, k)` and the untouched mode-b overlap is
/// the bare coherent one `p(alpha, 0) = e^{-2x}`.
pub fn concurrence_smeecs(sign: Sign, alpha: C64, k: usize) -> Result<f64> {
    assert!(k >= 1, "SMEECS needs k >= 1");
    equal_weight_concurrence(sign, overlap_p(alpha, k), overlap_p(alpha, 0))
}

/// Closed-form dispatcher over the two-mode families.
pub fn concurrence_closed(spec: &StateSpec) -> Result<f64> {
    match spec.family {
        Family::Ecs => concurrence_ecs(spec.sign, spec.alpha),
        Family::Tmeecs => concurrence_tmeecs(spec.sign, spec.alpha, spec.m, spec.n),
        Family::Smeecs => concurrence_smeecs(spec.sign, spec.alpha, spec.m),
        Family::PhotonAddedComponent => {
            panic!("photon-added components are single-mode product pieces")
        }
    }
}

/// Whether a weak-field limit grows linearly in `|alpha|^2` or approaches a
/// constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoteKind {
    LinearInAlphaSq,
    Constant,
}

/// Leading weak-field behavior: `C ~ coefficient * |alpha|^2` for the
/// linear kind, `C -> coefficient` for the constant kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Asymptote {
    pub coefficient: f64,
    pub kind: AsymptoteKind,
}

/// Leading small-|alpha|^2 behavior of the closed forms, from expanding the
/// overlaps as `p(alpha, k) = 1 - 2(1 + k)|alpha|^2 + O(|alpha|^4)`:
///
/// - TMEECS plus: linear, coefficient `2 sqrt((1+m)(1+n))` (so `2(1+m)` at
///   m = n).
/// - TMEECS minus: constant `2 sqrt((1+m)(1+n)) / (2+m+n)`, which is 1 at
///   m = n (maximal entanglement at every field strength).
/// - SMEECS plus: linear, coefficient `2 sqrt(1+k)`.
/// - SMEECS minus: constant `2 sqrt(1+k) / (2+k)`.
///
/// The ECS and component families have no dedicated form here (ECS is the
/// m = n = 0 specialization).
pub fn weak_field_asymptote(spec: &StateSpec) -> Result<Asymptote> {
    let (ka, kb) = match spec.family {
        Family::Tmeecs => (spec.m as f64, spec.n as f64),
        Family::Smeecs => (spec.m as f64, 0.0),
        Family::Ecs | Family::PhotonAddedComponent => {
            return Err(Error::UnsupportedAsymptote)
        }
    };
    let root = ((1.0 + ka) * (1.0 + kb)).sqrt();
    Ok(match spec.sign {
        Sign::Plus => Asymptote {
            coefficient: 2.0 * root,
            kind: AsymptoteKind::LinearInAlphaSq,
        },
        Sign::Minus => Asymptote {
            coefficient: 2.0 * root / (2.0 + ka + kb),
            kind: AsymptoteKind::Constant,
        },
    })
}

/// Purity-route concurrence `sqrt(2 (1 - Tr rho_a^2))` of a normalized pure
/// two-mode state. Exact for Schmidt rank <= 2; truncation dust can push
/// the radicand a hair past [0, 1], which is clamped (anything beyond
/// 1e-9 of clamping would mean the truncation is not trustworthy).
pub fn concurrence_oracle(state: &TwoModeState) -> f64 {
    let purity = state.reduced_density(Mode::A).purity();
    let c_sq = 2.0 * (1.0 - purity);
    let c = c_sq.max(0.0).sqrt();
    debug_assert!(
        c <= 1.0 + 1e-9,
        "oracle concurrence clamped by more than 1e-9: {c}"
    );
    c.clamp(0.0, 1.0)
}

/// Build the state, run both concurrence routes, and report.
pub fn analyze(spec: &StateSpec, trunc: Option<TruncationConfig>) -> Result<ConcurrenceReport> {
    let trunc = trunc.unwrap_or_else(|| auto_truncation(spec.alpha, spec.max_excitation()));
    let built = build_state(spec, trunc)?;
    Ok(ConcurrenceReport {
        closed_form: concurrence_closed(spec)?,
        oracle: concurrence_oracle(&built.state),
        p1: built.component_overlaps.p1,
        p2: built.component_overlaps.p2,
        spec: *spec,
        truncation_used: trunc,
    })
}
