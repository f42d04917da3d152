//! Cavity-QED preparation protocol.
//!
//! A two-level atom enters in its excited state and couples resonantly to
//! mode b through `H = g sigma+ b + g* sigma- b^dag`. Detecting the atom in
//! the ground state afterwards applies (to first order in `g t`) a single
//! `b^dag` to the field, so a chain of `n` detected atoms turns a
//! single-mode-excited state with `m` quanta in mode a into the two-mode
//! excited state with excitations `(m, n)`.
//!
//! Two propagators are provided: the first-order short-time expansion
//! `|psi> (x) |e> - i g* t (b^dag |psi>) (x) |g>`, and the exact
//! Jaynes-Cummings evolution, which is block diagonal over the invariant
//! pairs {|e, n>, |g, n+1>} with Rabi angle `|g| t sqrt(n+1)`. Having both
//! makes the short-time approximation itself a measurable object instead of
//! an assumption.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{auto_truncation, fidelity, Mode, TruncationConfig, TwoModeState};
use crate::states::{build_smeecs, build_tmeecs, Family, StateSpec};

/// Validity guard for the first-order propagator.
pub const FIRST_ORDER_GT_LIMIT: f64 = 0.05;

/// Ground-branch weight below which post-selection is rejected as a
/// zero-probability event.
const POSTSELECT_EPS: f64 = 1e-20;

/// Joint state of the two-level atom and the two field modes, stored as one
/// amplitude grid per atomic level.
#[derive(Debug, Clone)]
pub struct AtomFieldState {
    excited: Array2<C64>,
    ground: Array2<C64>,
    trunc: TruncationConfig,
}

impl AtomFieldState {
    /// Embed a field state with the atom in |e>.
    pub fn from_field_excited(field: &TwoModeState) -> Self {
        Self {
            excited: field.amps().clone(),
            ground: Array2::from_elem(field.amps().raw_dim(), C64::new(0.0, 0.0)),
            trunc: field.trunc(),
        }
    }

    pub fn trunc(&self) -> TruncationConfig {
        self.trunc
    }

    pub fn excited_branch(&self) -> TwoModeState {
        TwoModeState::from_grid(self.excited.clone(), self.trunc)
    }

    pub fn ground_branch(&self) -> TwoModeState {
        TwoModeState::from_grid(self.ground.clone(), self.trunc)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.excited.iter().chain(self.ground.iter()).map(|a| a.norm_sqr()).sum()
    }
}

/// First-order short-time propagator applied to `field (x) |e>`:
/// the excited branch is untouched and the ground branch is
/// `-i g* t b^dag |field>`, unnormalized. Rejects `|g t|` beyond
/// [`FIRST_ORDER_GT_LIMIT`].
pub fn evolve_first_order(field: &TwoModeState, g: C64, t: f64) -> Result<AtomFieldState> {
    let gt = g.norm() * t.abs();
    if gt > FIRST_ORDER_GT_LIMIT {
        return Err(Error::RegimeViolation { gt, limit: FIRST_ORDER_GT_LIMIT });
    }
    let raised = field.apply_creation(Mode::B, 1)?;
    let ground = raised.scaled(C64::new(0.0, -1.0) * g.conj() * t);
    Ok(AtomFieldState {
        excited: field.amps().clone(),
        ground: ground.amps().clone(),
        trunc: field.trunc(),
    })
}

/// Exact resonant Jaynes-Cummings step. Within each invariant pair
/// {|e, n_b>, |g, n_b + 1>} (mode a is a spectator) the propagator is the
/// 2x2 rotation by the Rabi angle `theta_n = |g| t sqrt(n_b + 1)`; the
/// |g, 0> sector is stationary and |e, n_max> is frozen after its weight is
/// checked against the truncation tolerance.
pub fn evolve_exact_jc(input: &AtomFieldState, g: C64, t: f64) -> Result<AtomFieldState> {
    let n_max = input.trunc.n_max;
    let top_weight: f64 = input.excited.column(n_max).iter().map(|a| a.norm_sqr()).sum();
    let total = input.norm_sqr();
    if top_weight > input.trunc.tail_tol * total {
        return Err(Error::TruncationInsufficient {
            tail: if total > 0.0 { top_weight / total } else { top_weight },
            tol: input.trunc.tail_tol,
            n_max,
        });
    }
    let g_abs = g.norm();
    let phase = if g_abs > 0.0 { g / g_abs } else { C64::new(1.0, 0.0) };
    let mut excited = input.excited.clone();
    let mut ground = input.ground.clone();
    for n in 0..n_max {
        let theta = g_abs * t * ((n as f64) + 1.0).sqrt();
        let (sin, cos) = theta.sin_cos();
        let rot_e = C64::new(0.0, -1.0) * phase * sin;
        let rot_g = C64::new(0.0, -1.0) * phase.conj() * sin;
        let e_old = input.excited.column(n).to_owned();
        let g_old = input.ground.column(n + 1).to_owned();
        excited.column_mut(n).assign(&(&e_old * cos + &g_old * rot_e));
        ground.column_mut(n + 1).assign(&(&e_old * rot_g + &g_old * cos));
    }
    Ok(AtomFieldState { excited, ground, trunc: input.trunc })
}

/// Project onto the atomic ground state. Returns the renormalized field
/// state and the projected weight (the detection probability when the input
/// is normalized).
pub fn postselect_ground(state: &AtomFieldState) -> Result<(TwoModeState, f64)> {
    let prob: f64 = state.ground.iter().map(|a| a.norm_sqr()).sum();
    if prob < POSTSELECT_EPS {
        return Err(Error::DegenerateState { norm_sq: prob });
    }
    let scaled = TwoModeState::from_grid(&state.ground / C64::new(prob.sqrt(), 0.0), state.trunc);
    Ok((scaled.normalized()?, prob))
}

/// Which propagator drives the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    FirstOrder,
    Exact,
}

impl Backend {
    pub fn label(self) -> &'static str {
        match self {
            Backend::FirstOrder => "first-order",
            Backend::Exact => "exact",
        }
    }
}

/// Result of running the atom chain.
#[derive(Debug, Clone)]
pub struct PrepOutcome {
    /// Field state after the last detection, normalized.
    pub post_state: TwoModeState,
    /// Product of the per-atom detection probabilities.
    pub success_prob: f64,
    /// Detection probability of each atom in order.
    pub per_atom_probs: Vec<f64>,
    /// Overlap fidelity against the directly constructed target state.
    pub fidelity_to_target: f64,
    /// |g| * |t| per atom.
    pub gt: f64,
    pub atoms_detected: usize,
}

/// Send `atoms` excited atoms one at a time through the cavity, detecting
/// each in the ground state, starting from the single-mode-excited state
/// described by `initial` (family must be SMEECS). The fidelity is measured
/// against the two-mode excited state with `(m, atoms)` excitations built
/// directly at the same truncation.
pub fn run_chain(
    initial: &StateSpec,
    g: C64,
    t: f64,
    atoms: usize,
    backend: Backend,
    trunc: Option<TruncationConfig>,
) -> Result<PrepOutcome> {
    assert_eq!(initial.family, Family::Smeecs, "the chain starts from an SMEECS");
    assert!(atoms >= 1, "need at least one atom");
    let trunc =
        trunc.unwrap_or_else(|| auto_truncation(initial.alpha, initial.m.max(atoms)));
    let mut field = build_smeecs(initial.sign, initial.alpha, initial.m, trunc)?.state;
    let mut per_atom_probs = Vec::with_capacity(atoms);
    for _ in 0..atoms {
        let joint = match backend {
            Backend::FirstOrder => evolve_first_order(&field, g, t)?,
            Backend::Exact => evolve_exact_jc(&AtomFieldState::from_field_excited(&field), g, t)?,
        };
        let (post, prob) = postselect_ground(&joint)?;
        per_atom_probs.push(prob);
        field = post;
    }
    let target = build_tmeecs(initial.sign, initial.alpha, initial.m, atoms, trunc)?;
    let fidelity_to_target = fidelity(&field, &target.state)?;
    Ok(PrepOutcome {
        post_state: field,
        success_prob: per_atom_probs.iter().product(),
        per_atom_probs,
        fidelity_to_target,
        gt: g.norm() * t.abs(),
        atoms_detected: atoms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::concurrence_oracle;
    use crate::fock::coherent;
    use crate::states::Sign;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn smeecs_state(sign: Sign, x: f64, m: usize, extra: usize) -> TwoModeState {
        let alpha = c(x.sqrt(), 0.0);
        let trunc = auto_truncation(alpha, extra);
        build_smeecs(sign, alpha, m, trunc).unwrap().state
    }

    #[test]
    fn zero_time_is_identity_with_empty_ground_branch() {
        let field = smeecs_state(Sign::Minus, 1.0, 1, 2);
        let out = evolve_first_order(&field, c(1.0, 0.0), 0.0).unwrap();
        assert_eq!(out.excited_branch().amps(), field.amps());
        assert_eq!(out.ground_branch().norm_sqr(), 0.0);
    }

    #[test]
    fn regime_guard() {
        let field = smeecs_state(Sign::Minus, 1.0, 1, 2);
        assert!(matches!(
            evolve_first_order(&field, c(0.2, 0.0), 1.0),
            Err(Error::RegimeViolation { .. })
        ));
    }

    #[test]
    fn ground_branch_weight_matches_expectation_value() {
        // || -i g* t b^dag psi ||^2 = |g t|^2 <psi| b b^dag |psi>
        let field = smeecs_state(Sign::Minus, 1.0, 1, 2);
        let gt = 1e-3;
        let out = evolve_first_order(&field, c(gt, 0.0), 1.0).unwrap();
        let bbdag = field.apply_creation(Mode::B, 1).unwrap().norm_sqr();
        assert_relative_eq!(
            out.ground_branch().norm_sqr(),
            gt * gt * bbdag,
            max_relative = 1e-10
        );
    }

    #[test]
    fn postselection_recovers_the_raised_state() {
        // the ground branch is exactly proportional to b^dag |psi>
        let field = smeecs_state(Sign::Plus, 1.0, 2, 3);
        let out = evolve_first_order(&field, c(1e-3, 0.5e-3), 1.0).unwrap();
        let (post, prob) = postselect_ground(&out).unwrap();
        let raised = field.apply_creation(Mode::B, 1).unwrap().normalized().unwrap();
        assert!(fidelity(&post, &raised).unwrap() > 1.0 - 1e-12);
        assert!(prob > 0.0 && prob < 1.0);
    }

    #[test]
    fn postselection_without_evolution_is_degenerate() {
        let field = smeecs_state(Sign::Plus, 1.0, 1, 2);
        let joint = AtomFieldState::from_field_excited(&field);
        assert!(matches!(
            postselect_ground(&joint),
            Err(Error::DegenerateState { .. })
        ));
    }

    #[test]
    fn exact_evolution_is_unitary() {
        let field = smeecs_state(Sign::Minus, 2.0, 2, 4);
        let joint = AtomFieldState::from_field_excited(&field);
        let out = evolve_exact_jc(&joint, c(0.3, 0.4), 1.7).unwrap();
        assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn vacuum_rabi_flop() {
        // |e, n_b = 0> fully transfers to |g, 1> at |g| t = pi/2
        let trunc = TruncationConfig::new(4, 1e-12);
        let field = TwoModeState::fock(0, 0, trunc);
        let joint = AtomFieldState::from_field_excited(&field);
        let out = evolve_exact_jc(&joint, c(1.0, 0.0), FRAC_PI_2).unwrap();
        assert!(out.excited_branch().norm_sqr() < 1e-30);
        let g1 = out.ground_branch().amp(0, 1);
        assert_relative_eq!(g1.norm(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(g1.im, -1.0, max_relative = 1e-12);
    }

    #[test]
    fn first_order_matches_exact_to_second_order() {
        let field = smeecs_state(Sign::Minus, 1.0, 1, 3);
        let gt = 1e-2;
        let first = evolve_first_order(&field, c(gt, 0.0), 1.0).unwrap();
        let exact =
            evolve_exact_jc(&AtomFieldState::from_field_excited(&field), c(gt, 0.0), 1.0).unwrap();
        let resid_e: f64 = first
            .excited_branch()
            .amps()
            .iter()
            .zip(exact.excited_branch().amps().iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let resid_g: f64 = first
            .ground_branch()
            .amps()
            .iter()
            .zip(exact.ground_branch().amps().iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(resid_e + resid_g <= 5.0 * gt * gt, "residual {}", resid_e + resid_g);
    }

    #[test]
    fn chain_reaches_the_target_family() {
        for sign in [Sign::Plus, Sign::Minus] {
            for m in 1..=2 {
                for atoms in 1..=2 {
                    let spec = StateSpec::smeecs(sign, c(1.0, 0.0), m);
                    let out = run_chain(&spec, c(1e-3, 0.0), 1.0, atoms, Backend::FirstOrder, None)
                        .unwrap();
                    assert!(
                        out.fidelity_to_target > 1.0 - 1e-10,
                        "{sign:?} m={m} atoms={atoms}: fidelity {}",
                        out.fidelity_to_target
                    );
                    assert_eq!(out.per_atom_probs.len(), atoms);
                    let product: f64 = out.per_atom_probs.iter().product();
                    assert_eq!(out.success_prob, product);
                }
            }
        }
    }

    #[test]
    fn chain_output_is_maximally_entangled_on_the_minus_branch() {
        let spec = StateSpec::smeecs(Sign::Minus, c(1.0, 0.0), 2);
        let out = run_chain(&spec, c(1e-3, 0.0), 1.0, 2, Backend::FirstOrder, None).unwrap();
        let conc = concurrence_oracle(&out.post_state);
        assert!((conc - 1.0).abs() < 1e-6, "concurrence {conc}");
    }

    #[test]
    fn exact_chain_fidelity_bound() {
        let spec = StateSpec::smeecs(Sign::Minus, c(1.0, 0.0), 1);
        let out = run_chain(&spec, c(1e-2, 0.0), 1.0, 1, Backend::Exact, None).unwrap();
        assert!(out.fidelity_to_target >= 0.999);
    }

    #[test]
    fn exact_chain_infidelity_is_quartic_in_gt() {
        // the post-selected state differs from the target only by the
        // sinc-shaped Rabi weights, whose parallel part renormalizes away;
        // the measured infidelity therefore quadruples twice per gt doubling
        let spec = StateSpec::smeecs(Sign::Minus, c(1.0, 0.0), 1);
        let infid = |gt: f64| -> f64 {
            let out = run_chain(&spec, c(gt, 0.0), 1.0, 1, Backend::Exact, None).unwrap();
            1.0 - out.fidelity_to_target
        };
        let ladder = [infid(1e-2), infid(2e-2), infid(4e-2)];
        assert!(ladder[0] > 0.0);
        for pair in ladder.windows(2) {
            let ratio = pair[1] / pair[0];
            assert!(
                (12.0..20.0).contains(&ratio),
                "ladder ratio {ratio} outside the quartic band"
            );
        }
        // and stays far inside the coarse quadratic envelope
        assert!(ladder[0] <= 5.0 * 1e-2 * 1e-2);
    }

    #[test]
    fn chain_success_probability_tracks_the_expectation_oracle() {
        let spec = StateSpec::smeecs(Sign::Minus, c(1.0, 0.0), 1);
        let gt = 1e-3;
        let out = run_chain(&spec, c(gt, 0.0), 1.0, 1, Backend::FirstOrder, None).unwrap();
        let trunc = auto_truncation(spec.alpha, 1);
        let field = build_smeecs(spec.sign, spec.alpha, 1, trunc).unwrap().state;
        let bbdag = field.apply_creation(Mode::B, 1).unwrap().norm_sqr();
        assert_relative_eq!(out.success_prob, gt * gt * bbdag, max_relative = 1e-10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn exact_step_preserves_norm(
            re in -1.0..1.0f64,
            im in -1.0..1.0f64,
            gr in -2.0..2.0f64,
            gi in -2.0..2.0f64,
            t in 0.0..3.0f64,
        ) {
            let alpha = c(re, im);
            let trunc = auto_truncation(alpha, 2);
            let a = coherent(alpha, trunc).unwrap();
            let b = coherent(-alpha, trunc).unwrap();
            let field = TwoModeState::product(&a, &b).unwrap();
            let joint = AtomFieldState::from_field_excited(&field);
            let out = evolve_exact_jc(&joint, c(gr, gi), t).unwrap();
            prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }
}
