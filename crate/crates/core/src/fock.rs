//! Truncated Fock-space states for one and two bosonic modes.
//!
//! This is the brute-force side of the artifact: dense amplitude vectors and
//! grids with creation operators, inner products, partial traces, and purity.
//! Truncation is a per-mode hard cutoff with an explicit tail check that
//! fails loudly (`TruncationInsufficient`) instead of silently renormalizing
//! away lost weight, because the concurrence cross-checks downstream compare
//! at the 1e-8 level.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Unnormalized norm-squared below which a superposition is treated as
/// identically zero. Far below any physical value at |alpha|^2 >= 1e-6 yet
/// far above double-precision noise.
pub const DEGENERACY_NORM_EPS: f64 = 1e-14;

/// Hard per-mode cutoff plus the tolerated probability weight in the top
/// two retained levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationConfig {
    pub n_max: usize,
    pub tail_tol: f64,
}

impl TruncationConfig {
    pub fn new(n_max: usize, tail_tol: f64) -> Self {
        assert!(n_max >= 1, "n_max must be at least 1");
        assert!(
            tail_tol > 0.0 && tail_tol < 1.0,
            "tail_tol must lie in (0, 1)"
        );
        Self { n_max, tail_tol }
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }
}

/// Pick a cutoff adequate for a coherent state of amplitude `alpha` with up
/// to `extra_photons` subsequent creation-operator applications:
/// `n_max = ceil(x + extra + 10 sqrt(x + extra + 1))` with `x = |alpha|^2`,
/// and a 1e-12 tail tolerance. The sqrt margin alone leaves a narrow band
/// (extra = 0, x near 1.4) where the top two Poisson weights still sit a
/// few times above the tolerance, so the cutoff walks up until the
/// guarantee actually holds; outside that band the loop never fires and the
/// closed formula is returned unchanged.
pub fn auto_truncation(alpha: C64, extra_photons: usize) -> TruncationConfig {
    const TAIL_TOL: f64 = 1e-12;
    let x = alpha.norm_sqr();
    let loaded = x + extra_photons as f64;
    let mut n_max = ((loaded + 10.0 * (loaded + 1.0).sqrt()).ceil() as usize).max(1);
    while poisson_top_two(x, n_max) > TAIL_TOL {
        n_max += 1;
    }
    TruncationConfig::new(n_max, TAIL_TOL)
}

/// Poisson weight of the two topmost retained levels of a coherent state
/// with mean photon number `lambda`.
fn poisson_top_two(lambda: f64, n_max: usize) -> f64 {
    if lambda <= 0.0 {
        return 0.0;
    }
    let mut p = (-lambda).exp();
    let mut tail = 0.0;
    for k in 0..=n_max {
        if k + 1 >= n_max {
            tail += p;
        }
        p *= lambda / ((k as f64) + 1.0);
    }
    tail
}

/// Which of the two modes an operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
}

/// Single-mode pure state over Fock levels `0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeVector {
    amps: Vec<C64>,
    trunc: TruncationConfig,
}

impl ModeVector {
    /// Build directly from amplitudes; length must equal `trunc.dim()`.
    pub fn from_amps(amps: Vec<C64>, trunc: TruncationConfig) -> Self {
        assert_eq!(amps.len(), trunc.dim());
        Self { amps, trunc }
    }

    /// Fock basis state |k>.
    pub fn fock(k: usize, trunc: TruncationConfig) -> Self {
        assert!(k <= trunc.n_max, "Fock level {k} beyond n_max {}", trunc.n_max);
        let mut amps = vec![C64::new(0.0, 0.0); trunc.dim()];
        amps[k] = C64::new(1.0, 0.0);
        Self { amps, trunc }
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn trunc(&self) -> TruncationConfig {
        self.trunc
    }

    pub fn n_max(&self) -> usize {
        self.trunc.n_max
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Probability weight in the two topmost retained levels.
    pub fn tail_weight(&self) -> f64 {
        let d = self.amps.len();
        self.amps[d - 1].norm_sqr() + self.amps[d - 2].norm_sqr()
    }

    pub fn inner(&self, other: &Self) -> Result<C64> {
        check_shapes(self.trunc, other.trunc)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Apply the creation operator `times` times; the result is deliberately
    /// unnormalized so closed-form normalization constants can be tested
    /// against the raw norm.
    pub fn apply_creation(&self, times: usize) -> Result<Self> {
        let mut amps = self.amps.clone();
        let n_max = self.trunc.n_max;
        for _ in 0..times {
            spill_check(
                amps[n_max].norm_sqr() * (n_max as f64 + 1.0),
                amps.iter().map(|a| a.norm_sqr()).sum(),
                self.trunc,
            )?;
            for n in (0..n_max).rev() {
                amps[n + 1] = amps[n] * ((n as f64) + 1.0).sqrt();
            }
            amps[0] = C64::new(0.0, 0.0);
        }
        Ok(Self { amps, trunc: self.trunc })
    }

    /// Rescale to unit norm, enforcing the degeneracy and tail invariants.
    pub fn normalized(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 < DEGENERACY_NORM_EPS {
            return Err(Error::DegenerateState { norm_sq: n2 });
        }
        let scale = C64::new(1.0 / n2.sqrt(), 0.0);
        let out = Self {
            amps: self.amps.iter().map(|a| a * scale).collect(),
            trunc: self.trunc,
        };
        let tail = out.tail_weight();
        if tail > self.trunc.tail_tol {
            return Err(Error::TruncationInsufficient {
                tail,
                tol: self.trunc.tail_tol,
                n_max: self.trunc.n_max,
            });
        }
        Ok(out)
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self {
            amps: self.amps.iter().map(|a| a * c).collect(),
            trunc: self.trunc,
        }
    }
}

/// Glauber coherent state |alpha> on the truncated ladder, renormalized over
/// the retained levels so tests see exactly unit norm. The tail check runs
/// on the raw Poisson amplitudes before renormalization.
pub fn coherent(alpha: C64, trunc: TruncationConfig) -> Result<ModeVector> {
    let x = alpha.norm_sqr();
    let mut amps = vec![C64::new(0.0, 0.0); trunc.dim()];
    // c_{k+1} = c_k alpha / sqrt(k+1), c_0 = e^{-x/2}
    let mut c = C64::new((-x / 2.0).exp(), 0.0);
    for (k, slot) in amps.iter_mut().enumerate() {
        *slot = c;
        c *= alpha / ((k as f64) + 1.0).sqrt();
    }
    let raw = ModeVector::from_amps(amps, trunc);
    let tail = raw.tail_weight();
    if tail > trunc.tail_tol {
        return Err(Error::TruncationInsufficient {
            tail,
            tol: trunc.tail_tol,
            n_max: trunc.n_max,
        });
    }
    raw.normalized()
}

/// Two-mode pure state as a dense amplitude grid over `(n_a, n_b)`.
///
/// Dense storage is deliberate: `n_max` stays below ~70 at desk scale and
/// the quadratic grids are cache-friendly.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    amps: Array2<C64>,
    trunc: TruncationConfig,
}

impl TwoModeState {
    pub fn from_grid(amps: Array2<C64>, trunc: TruncationConfig) -> Self {
        assert_eq!(amps.shape(), [trunc.dim(), trunc.dim()]);
        Self { amps, trunc }
    }

    /// Tensor product of two single-mode states (mode a first).
    pub fn product(a: &ModeVector, b: &ModeVector) -> Result<Self> {
        check_shapes(a.trunc, b.trunc)?;
        let d = a.trunc.dim();
        let amps = Array2::from_shape_fn((d, d), |(i, j)| a.amps[i] * b.amps[j]);
        Ok(Self { amps, trunc: a.trunc })
    }

    /// Two-mode Fock basis state |na, nb>.
    pub fn fock(na: usize, nb: usize, trunc: TruncationConfig) -> Self {
        let mut amps = Array2::from_elem((trunc.dim(), trunc.dim()), C64::new(0.0, 0.0));
        amps[[na, nb]] = C64::new(1.0, 0.0);
        Self { amps, trunc }
    }

    /// `c1 * s1 + c2 * s2`, unnormalized.
    pub fn superpose(c1: C64, s1: &Self, c2: C64, s2: &Self) -> Result<Self> {
        check_shapes(s1.trunc, s2.trunc)?;
        Ok(Self {
            amps: &s1.amps * c1 + &s2.amps * c2,
            trunc: s1.trunc,
        })
    }

    pub fn amps(&self) -> &Array2<C64> {
        &self.amps
    }

    pub fn amp(&self, na: usize, nb: usize) -> C64 {
        self.amps[[na, nb]]
    }

    pub fn trunc(&self) -> TruncationConfig {
        self.trunc
    }

    pub fn n_max(&self) -> usize {
        self.trunc.n_max
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Probability weight in the outermost row plus outermost column.
    pub fn tail_weight(&self) -> f64 {
        let n = self.trunc.n_max;
        let row: f64 = self.amps.row(n).iter().map(|a| a.norm_sqr()).sum();
        let col: f64 = self.amps.column(n).iter().map(|a| a.norm_sqr()).sum();
        row + col
    }

    pub fn inner(&self, other: &Self) -> Result<C64> {
        check_shapes(self.trunc, other.trunc)?;
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Creation operator on the chosen mode, applied `times` times.
    /// Amplitudes shift up one level per application with the sqrt(n+1)
    /// ladder factors; the result is unnormalized.
    pub fn apply_creation(&self, mode: Mode, times: usize) -> Result<Self> {
        let n_max = self.trunc.n_max;
        let mut amps = self.amps.clone();
        for _ in 0..times {
            let top: f64 = match mode {
                Mode::A => amps.row(n_max).iter().map(|a| a.norm_sqr()).sum(),
                Mode::B => amps.column(n_max).iter().map(|a| a.norm_sqr()).sum(),
            };
            let total: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
            spill_check(top * (n_max as f64 + 1.0), total, self.trunc)?;
            let mut next = Array2::from_elem(amps.raw_dim(), C64::new(0.0, 0.0));
            for n in 0..n_max {
                let f = ((n as f64) + 1.0).sqrt();
                match mode {
                    Mode::A => {
                        let src = amps.row(n).to_owned();
                        next.row_mut(n + 1).assign(&(&src * f));
                    }
                    Mode::B => {
                        let src = amps.column(n).to_owned();
                        next.column_mut(n + 1).assign(&(&src * f));
                    }
                }
            }
            amps = next;
        }
        Ok(Self { amps, trunc: self.trunc })
    }

    pub fn normalized(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 < DEGENERACY_NORM_EPS {
            return Err(Error::DegenerateState { norm_sq: n2 });
        }
        let out = Self {
            amps: &self.amps * C64::new(1.0 / n2.sqrt(), 0.0),
            trunc: self.trunc,
        };
        let tail = out.tail_weight();
        if tail > self.trunc.tail_tol {
            return Err(Error::TruncationInsufficient {
                tail,
                tol: self.trunc.tail_tol,
                n_max: self.trunc.n_max,
            });
        }
        Ok(out)
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self {
            amps: &self.amps * c,
            trunc: self.trunc,
        }
    }

    /// Partial trace over the discarded mode. The input should be
    /// normalized if the result is to be a unit-trace density matrix.
    pub fn reduced_density(&self, keep: Mode) -> ReducedDensity {
        let d = self.trunc.dim();
        let psi = match keep {
            Mode::A => self.amps.clone(),
            Mode::B => self.amps.t().to_owned(),
        };
        // rho[i, j] = sum_k psi[i, k] conj(psi[j, k])
        let mut rho = Array2::from_elem((d, d), C64::new(0.0, 0.0));
        for i in 0..d {
            for j in 0..d {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..d {
                    acc += psi[[i, k]] * psi[[j, k]].conj();
                }
                rho[[i, j]] = acc;
            }
        }
        ReducedDensity { rho }
    }
}

/// Overlap fidelity |<u|v>|^2 / (|u|^2 |v|^2) of two pure states.
pub fn fidelity(u: &TwoModeState, v: &TwoModeState) -> Result<f64> {
    let ov = u.inner(v)?;
    Ok(ov.norm_sqr() / (u.norm_sqr() * v.norm_sqr()))
}

/// Single-mode reduced density matrix of a two-mode pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensity {
    rho: Array2<C64>,
}

impl ReducedDensity {
    pub fn matrix(&self) -> &Array2<C64> {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.rho.diag().iter().map(|z| z.re).sum()
    }

    /// Largest |rho_ij - conj(rho_ji)| over the matrix.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let diff = (self.rho[[i, j]] - self.rho[[j, i]].conj()).norm();
                worst = worst.max(diff);
            }
        }
        worst
    }

    /// Tr(rho^2); for a Hermitian matrix this is the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.rho.iter().map(|z| z.norm_sqr()).sum()
    }
}

fn check_shapes(a: TruncationConfig, b: TruncationConfig) -> Result<()> {
    if a.n_max != b.n_max {
        return Err(Error::ShapeMismatch {
            left: a.n_max,
            right: b.n_max,
        });
    }
    Ok(())
}

fn spill_check(projected_spill: f64, total: f64, trunc: TruncationConfig) -> Result<()> {
    if projected_spill > trunc.tail_tol * total {
        return Err(Error::TruncationInsufficient {
            tail: if total > 0.0 { projected_spill / total } else { projected_spill },
            tol: trunc.tail_tol,
            n_max: trunc.n_max,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laguerre::{factorial, laguerre, laguerre_neg};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn auto_truncation_examples() {
        assert_eq!(auto_truncation(c(0.0, 0.0), 0).n_max, 10);
        // |alpha|^2 = 4, two extra photons: ceil(6 + 10 sqrt 7) = 33
        assert_eq!(auto_truncation(c(2.0, 0.0), 2).n_max, 33);
    }

    #[test]
    fn coherent_vacuum_is_fock_zero() {
        let trunc = auto_truncation(c(0.0, 0.0), 0);
        let v = coherent(c(0.0, 0.0), trunc).unwrap();
        assert_eq!(v.amps()[0], c(1.0, 0.0));
        assert!(v.amps()[1..].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn coherent_overlaps() {
        let a = c(1.0, 0.0);
        let trunc = auto_truncation(a, 0);
        let plus = coherent(a, trunc).unwrap();
        let minus = coherent(-a, trunc).unwrap();
        assert_relative_eq!(plus.inner(&plus).unwrap().re, 1.0, max_relative = 1e-12);
        assert_relative_eq!(
            plus.inner(&minus).unwrap().re,
            (-2.0f64).exp(),
            max_relative = 1e-10
        );
    }

    #[test]
    fn coherent_tail_within_tolerance_at_auto_cutoff() {
        // raw Poisson tail at |alpha|^2 = 4 with the n_max = 33 cutoff
        let alpha = c(2.0, 0.0);
        let trunc = TruncationConfig::new(33, 1e-12);
        let x = alpha.norm_sqr();
        let log_p = |k: usize| -> f64 {
            -x + (k as f64) * x.ln() - (1..=k).map(|j| (j as f64).ln()).sum::<f64>()
        };
        let tail = log_p(33).exp() + log_p(32).exp();
        assert!(tail <= 1e-12, "raw tail {tail:e}");
        assert!(coherent(alpha, trunc).is_ok());
    }

    #[test]
    fn undersized_cutoff_fails_loudly() {
        let alpha = c(2.0, 0.0);
        let trunc = TruncationConfig::new(6, 1e-12);
        match coherent(alpha, trunc) {
            Err(Error::TruncationInsufficient { .. }) => {}
            other => panic!("expected truncation failure, got {other:?}"),
        }
    }

    #[test]
    fn creation_on_vacuum() {
        let trunc = TruncationConfig::new(8, 1e-12);
        let vac = TwoModeState::fock(0, 0, trunc);
        let one = vac.apply_creation(Mode::A, 1).unwrap();
        assert_eq!(one.amp(1, 0), c(1.0, 0.0));
        assert_relative_eq!(one.norm_sqr(), 1.0, max_relative = 1e-14);
        // zero applications: identity
        let same = vac.apply_creation(Mode::B, 0).unwrap();
        assert_eq!(same.amps(), vac.amps());
    }

    #[test]
    fn photon_added_norm_matches_laguerre() {
        // ||a^dag^m (|alpha> (x) |0>)||^2 = m! L_m(-x)
        let alpha = c(1.0, 0.0);
        let trunc = auto_truncation(alpha, 2);
        let ca = coherent(alpha, trunc).unwrap();
        let vac = ModeVector::fock(0, trunc);
        let st = TwoModeState::product(&ca, &vac).unwrap();
        let added = st.apply_creation(Mode::A, 2).unwrap();
        assert_relative_eq!(
            added.norm_sqr(),
            factorial(2) * laguerre_neg(2, 1.0),
            max_relative = 1e-10
        );
        assert_relative_eq!(added.norm_sqr(), 7.0, max_relative = 1e-10);
    }

    #[test]
    fn cross_inner_product_is_signed() {
        // <alpha| a^m a^dag^m |-alpha> = m! e^{-2x} L_m(x), negative for
        // x past the first root of L_m
        let alpha = c(1.0, 0.0);
        let trunc = auto_truncation(alpha, 2);
        let up = coherent(alpha, trunc).unwrap().apply_creation(2).unwrap();
        let dn = coherent(-alpha, trunc).unwrap().apply_creation(2).unwrap();
        let got = up.inner(&dn).unwrap();
        let want = factorial(2) * (-2.0f64).exp() * laguerre(2, 1.0);
        assert!(want < 0.0);
        assert_relative_eq!(got.re, want, max_relative = 1e-9);
        assert!(got.im.abs() < 1e-14);
    }

    #[test]
    fn two_mode_coherent_inner() {
        let a = c(1.0, 0.0);
        let trunc = auto_truncation(a, 0);
        let ca = coherent(a, trunc).unwrap();
        let cm = coherent(-a, trunc).unwrap();
        let pp = TwoModeState::product(&ca, &ca).unwrap();
        let mm = TwoModeState::product(&cm, &cm).unwrap();
        assert_relative_eq!(
            pp.inner(&mm).unwrap().re,
            (-4.0f64).exp(),
            max_relative = 1e-10
        );
    }

    #[test]
    fn creation_spills_past_the_cutoff() {
        let trunc = TruncationConfig::new(4, 1e-12);
        let top = TwoModeState::fock(4, 0, trunc);
        match top.apply_creation(Mode::A, 1) {
            Err(Error::TruncationInsufficient { .. }) => {}
            other => panic!("expected spill failure, got {other:?}"),
        }
        // mode b is still free
        assert!(top.apply_creation(Mode::B, 1).is_ok());
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let u = TwoModeState::fock(0, 0, TruncationConfig::new(4, 1e-12));
        let v = TwoModeState::fock(0, 0, TruncationConfig::new(5, 1e-12));
        assert_eq!(
            u.inner(&v),
            Err(Error::ShapeMismatch { left: 4, right: 5 })
        );
    }

    #[test]
    fn reduced_density_of_product_state_is_pure() {
        let a = c(0.8, 0.3);
        let b = c(-0.5, 0.2);
        let trunc = auto_truncation(a, 0);
        let st = TwoModeState::product(
            &coherent(a, trunc).unwrap(),
            &coherent(b, trunc).unwrap(),
        )
        .unwrap();
        let rho = st.reduced_density(Mode::A);
        assert_relative_eq!(rho.purity(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(rho.trace(), 1.0, max_relative = 1e-12);
        assert!(rho.hermiticity_defect() < 1e-14);
    }

    #[test]
    fn reduced_density_of_bell_pair() {
        let trunc = TruncationConfig::new(4, 1e-12);
        let bell = TwoModeState::superpose(
            c(1.0 / 2.0f64.sqrt(), 0.0),
            &TwoModeState::fock(0, 0, trunc),
            c(1.0 / 2.0f64.sqrt(), 0.0),
            &TwoModeState::fock(1, 1, trunc),
        )
        .unwrap();
        let rho = bell.reduced_density(Mode::B);
        assert_relative_eq!(rho.purity(), 0.5, max_relative = 1e-12);
        assert_relative_eq!(rho.trace(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn truncation_monotonicity() {
        // growing the cutoff by 5 moves reported inner products by less
        // than sqrt(tail_tol)
        let a = c(1.2, 0.4);
        let t1 = auto_truncation(a, 1);
        let t2 = TruncationConfig::new(t1.n_max + 5, t1.tail_tol);
        let val = |t: TruncationConfig| -> f64 {
            let ca = coherent(a, t).unwrap();
            let cm = coherent(-a, t).unwrap();
            let u = TwoModeState::product(&ca, &ca)
                .unwrap()
                .apply_creation(Mode::A, 1)
                .unwrap();
            let v = TwoModeState::product(&cm, &cm)
                .unwrap()
                .apply_creation(Mode::A, 1)
                .unwrap();
            u.inner(&v).unwrap().re
        };
        assert!((val(t1) - val(t2)).abs() < t1.tail_tol.sqrt());
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(
            re in -2.0..2.0f64,
            im in -2.0..2.0f64,
            k in 0usize..=3,
        ) {
            let alpha = c(re, im);
            let trunc = auto_truncation(alpha, k);
            let ca = coherent(alpha, trunc).unwrap();
            let cm = coherent(-alpha, trunc).unwrap();
            let raw = TwoModeState::superpose(
                c(1.0, 0.0),
                &TwoModeState::product(&ca, &ca).unwrap(),
                c(0.5, 0.1),
                &TwoModeState::product(&cm, &cm).unwrap(),
            )
            .unwrap()
            .apply_creation(Mode::B, k)
            .unwrap();
            let once = raw.normalized().unwrap();
            let twice = once.normalized().unwrap();
            let drift = once
                .amps()
                .iter()
                .zip(twice.amps().iter())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max);
            prop_assert!(drift < 1e-14);
            prop_assert!((once.norm_sqr() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn partial_trace_purities_agree(
            re in 0.3..1.5f64,
            im in -1.0..1.0f64,
            m in 0usize..=2,
            n in 0usize..=2,
        ) {
            // equal Schmidt spectra on both sides of any pure bipartite state
            let alpha = c(re, im);
            let trunc = auto_truncation(alpha, m.max(n));
            let ca = coherent(alpha, trunc).unwrap();
            let cm = coherent(-alpha, trunc).unwrap();
            let st = TwoModeState::superpose(
                c(1.0, 0.0),
                &TwoModeState::product(&ca, &ca).unwrap(),
                c(-0.7, 0.2),
                &TwoModeState::product(&cm, &cm).unwrap(),
            )
            .unwrap()
            .apply_creation(Mode::A, m)
            .unwrap()
            .apply_creation(Mode::B, n)
            .unwrap()
            .normalized()
            .unwrap();
            let pa = st.reduced_density(Mode::A).purity();
            let pb = st.reduced_density(Mode::B).purity();
            prop_assert!((pa - pb).abs() < 1e-10);
        }
    }
}
