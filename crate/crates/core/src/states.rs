//! Constructors for the state families.
//!
//! Every builder returns both the numerically normalized state and the
//! closed-form normalization constant of the ideal (untruncated) state, so
//! the two can be cross-checked against each other: for a correctly built
//! family, `analytic_norm^2 * norm_sqr(unnormalized construction) = 1` up
//! to truncation error. The whole artifact leans on that cross-check.
//!
//! Families, with `x = |alpha|^2` and the two-mode coherent superposition
//! `|pair(+-)> = |alpha, alpha> +- |-alpha, -alpha>`:
//!
//! - ECS: `A(+-) |pair(+-)>` with `A(+-)^-2 = 2 (1 +- e^{-4x})`.
//! - TMEECS: `N(+-) a^dag^m b^dag^n |pair(+-)>` with
//!   `N(+-)^-2 = 2 m! n! (L_m(-x) L_n(-x) +- e^{-4x} L_m(x) L_n(x))`.
//! - SMEECS: `N(+-) a^dag^k |pair(+-)>` with
//!   `N(+-)^-2 = 2 k! (L_k(-x) +- e^{-4x} L_k(x))`.
//! - photon-added components: `N(alpha, k) a^dag^k |+-alpha>` with
//!   `N(alpha, k)^-2 = k! L_k(-x)`, the normalized single-mode pieces the
//!   two-mode families decompose into.

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::fock::{coherent, Mode, ModeVector, TruncationConfig, TwoModeState};
use crate::laguerre::{factorial, laguerre, laguerre_neg, overlap_p, OverlapPair};

/// Relative sign between the two coherent components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

/// State family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Two-mode entangled coherent state (no photon excitation).
    Ecs,
    /// Two-mode excited ECS: m excitations in mode a, n in mode b.
    Tmeecs,
    /// Single-mode excited ECS: k excitations in mode a only (k in `m`).
    Smeecs,
    /// Single-mode photon-added coherent component (k in `m`).
    PhotonAddedComponent,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::Ecs => "ecs",
            Family::Tmeecs => "tmeecs",
            Family::Smeecs => "smeecs",
            Family::PhotonAddedComponent => "component",
        }
    }
}

/// Full label of one family member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateSpec {
    pub family: Family,
    pub sign: Sign,
    pub alpha: C64,
    pub m: usize,
    pub n: usize,
}

impl StateSpec {
    pub fn ecs(sign: Sign, alpha: C64) -> Self {
        Self { family: Family::Ecs, sign, alpha, m: 0, n: 0 }
    }

    pub fn tmeecs(sign: Sign, alpha: C64, m: usize, n: usize) -> Self {
        assert!(m >= 1 && n >= 1, "TMEECS needs m >= 1 and n >= 1");
        Self { family: Family::Tmeecs, sign, alpha, m, n }
    }

    pub fn smeecs(sign: Sign, alpha: C64, k: usize) -> Self {
        assert!(k >= 1, "SMEECS needs k >= 1");
        Self { family: Family::Smeecs, sign, alpha, m: k, n: 0 }
    }

    /// Creation-operator applications on mode a.
    pub fn excitation_a(&self) -> usize {
        match self.family {
            Family::Ecs => 0,
            Family::Tmeecs | Family::Smeecs | Family::PhotonAddedComponent => self.m,
        }
    }

    /// Creation-operator applications on mode b.
    pub fn excitation_b(&self) -> usize {
        match self.family {
            Family::Tmeecs => self.n,
            _ => 0,
        }
    }

    /// Worst-case per-mode excitation count, for sizing truncations.
    pub fn max_excitation(&self) -> usize {
        self.excitation_a().max(self.excitation_b())
    }
}

/// A constructed family member: the normalized numeric state alongside the
/// closed-form normalization constant and component overlaps.
#[derive(Debug, Clone)]
pub struct BuiltState {
    pub state: TwoModeState,
    /// Closed-form normalization constant of the ideal state; its square
    /// times the raw construction's norm-squared is 1 up to truncation.
    pub analytic_norm: f64,
    pub component_overlaps: OverlapPair,
}

fn coherent_pair(sign: Sign, alpha: C64, trunc: TruncationConfig) -> Result<TwoModeState> {
    let plus = coherent(alpha, trunc)?;
    let minus = coherent(-alpha, trunc)?;
    TwoModeState::superpose(
        C64::new(1.0, 0.0),
        &TwoModeState::product(&plus, &plus)?,
        C64::new(sign.factor(), 0.0),
        &TwoModeState::product(&minus, &minus)?,
    )
}

fn finish(raw: TwoModeState, analytic_norm: f64, overlaps: OverlapPair) -> Result<BuiltState> {
    Ok(BuiltState {
        state: raw.normalized()?,
        analytic_norm,
        component_overlaps: overlaps,
    })
}

/// Entangled coherent state `A(+-) (|alpha, alpha> +- |-alpha, -alpha>)`.
pub fn build_ecs(sign: Sign, alpha: C64, trunc: TruncationConfig) -> Result<BuiltState> {
    let raw = coherent_pair(sign, alpha, trunc)?;
    let x = alpha.norm_sqr();
    let inv_sq = 2.0 * (1.0 + sign.factor() * (-4.0 * x).exp());
    let p = overlap_p(alpha, 0);
    finish(raw, inv_sq.powf(-0.5), OverlapPair { p1: p, p2: p })
}

/// Two-mode excited ECS `N(+-) a^dag^m b^dag^n (|alpha, alpha> +- |-alpha, -alpha>)`.
pub fn build_tmeecs(
    sign: Sign,
    alpha: C64,
    m: usize,
    n: usize,
    trunc: TruncationConfig,
) -> Result<BuiltState> {
    assert!(m >= 1 && n >= 1, "TMEECS needs m >= 1 and n >= 1");
    let raw = coherent_pair(sign, alpha, trunc)?
        .apply_creation(Mode::A, m)?
        .apply_creation(Mode::B, n)?;
    let x = alpha.norm_sqr();
    let inv_sq = 2.0
        * factorial(m)
        * factorial(n)
        * (laguerre_neg(m, x) * laguerre_neg(n, x)
            + sign.factor() * (-4.0 * x).exp() * laguerre(m, x) * laguerre(n, x));
    finish(
        raw,
        inv_sq.powf(-0.5),
        OverlapPair { p1: overlap_p(alpha, m), p2: overlap_p(alpha, n) },
    )
}

/// Single-mode excited ECS `N(+-) a^dag^k (|alpha, alpha> +- |-alpha, -alpha>)`.
pub fn build_smeecs(
    sign: Sign,
    alpha: C64,
    k: usize,
    trunc: TruncationConfig,
) -> Result<BuiltState> {
    assert!(k >= 1, "SMEECS needs k >= 1");
    let raw = coherent_pair(sign, alpha, trunc)?.apply_creation(Mode::A, k)?;
    let x = alpha.norm_sqr();
    let inv_sq =
        2.0 * factorial(k) * (laguerre_neg(k, x) + sign.factor() * (-4.0 * x).exp() * laguerre(k, x));
    finish(
        raw,
        inv_sq.powf(-0.5),
        OverlapPair { p1: overlap_p(alpha, k), p2: overlap_p(alpha, 0) },
    )
}

/// Dispatch on the two-mode families of a [`StateSpec`].
pub fn build_state(spec: &StateSpec, trunc: TruncationConfig) -> Result<BuiltState> {
    match spec.family {
        Family::Ecs => build_ecs(spec.sign, spec.alpha, trunc),
        Family::Tmeecs => build_tmeecs(spec.sign, spec.alpha, spec.m, spec.n, trunc),
        Family::Smeecs => build_smeecs(spec.sign, spec.alpha, spec.m, trunc),
        Family::PhotonAddedComponent => {
            panic!("photon-added components are single-mode; use build_component")
        }
    }
}

/// Normalized k-photon-added coherent state `N(alpha, k) a^dag^k |alpha>`.
/// Pass `-alpha` for the mirrored component. The same vector serves either
/// mode; nothing in the representation distinguishes a from b.
pub fn build_component(alpha: C64, k: usize, trunc: TruncationConfig) -> Result<ModeVector> {
    coherent(alpha, trunc)?.apply_creation(k)?.normalized()
}

/// A two-mode family member cast as `mu |eta> (x) |gamma> + nu |xi> (x) |delta>`
/// with all four single-mode components normalized.
#[derive(Debug, Clone)]
pub struct TwoComponentForm {
    pub mu: C64,
    pub nu: C64,
    /// Mode-a components built on +alpha and -alpha.
    pub eta: ModeVector,
    pub xi: ModeVector,
    /// Mode-b components built on +alpha and -alpha.
    pub gamma: ModeVector,
    pub delta: ModeVector,
    pub overlaps: OverlapPair,
}

impl TwoComponentForm {
    /// Rebuild the two-mode state from the decomposition.
    pub fn reassemble(&self) -> Result<TwoModeState> {
        TwoModeState::superpose(
            self.mu,
            &TwoModeState::product(&self.eta, &self.gamma)?,
            self.nu,
            &TwoModeState::product(&self.xi, &self.delta)?,
        )
    }
}

/// Cast a two-mode family member into its two-component form. The weights
/// come out as `mu = N_family / (N(alpha, k_a) N(alpha, k_b))` with the sign
/// absorbed into `nu`; normalization of the parent forces
/// `|mu|^2 + |nu|^2 + 2 Re(mu* nu p1 p2) = 1`.
pub fn decompose_two_component(
    spec: &StateSpec,
    trunc: TruncationConfig,
) -> Result<TwoComponentForm> {
    let built = build_state(spec, trunc)?;
    let (ka, kb) = (spec.excitation_a(), spec.excitation_b());
    let alpha = spec.alpha;
    let x = alpha.norm_sqr();
    let comp_norm =
        |k: usize| -> f64 { (factorial(k) * laguerre_neg(k, x)).powf(-0.5) };
    let mu = built.analytic_norm / (comp_norm(ka) * comp_norm(kb));
    Ok(TwoComponentForm {
        mu: C64::new(mu, 0.0),
        nu: C64::new(spec.sign.factor() * mu, 0.0),
        eta: build_component(alpha, ka, trunc)?,
        xi: build_component(-alpha, ka, trunc)?,
        gamma: build_component(alpha, kb, trunc)?,
        delta: build_component(-alpha, kb, trunc)?,
        overlaps: built.component_overlaps,
    })
}
