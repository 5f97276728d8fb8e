//! Cross-correlation of the left and right branch currents.
//!
//! Detecting a right branch-current event at `t = 0` projects the
//! stationary state onto the unnormalised conditional state
//! `a |0⟩⟨0| + b |1⟩⟨1|`. Propagating it and reading the left branch
//! current gives
//!
//! ```text
//! S_LR(t) = [ (b Γ̃_L^+ - a Γ̃_L^-) - ⟨Ĩ_L⟩⟨Ĩ_R⟩ ] exp(-2Γt) = C_LR exp(-2Γt).
//! ```
//!
//! The first term comes from the decaying initial channel (only the
//! second electron contributes to the branch circuit there); the
//! steady-channel part contributes `(a + b)⟨Ĩ_L⟩ G(t)` with
//! `a + b = ⟨Ĩ_R⟩`, which cancels against the disconnected product at
//! long times.

use crate::error::{invalid, Result};
use crate::model::{Lead, RateSet};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpCoefficients {
    /// Weight on `|0⟩` after the conditioning jump.
    pub a: f64,
    /// Weight on `|1⟩`.
    pub b: f64,
}

pub fn jump_coefficients(rates: &RateSet) -> JumpCoefficients {
    let (l, r) = (rates.lead(Lead::Left), rates.lead(Lead::Right));
    let two_gamma = rates.r1() + rates.r2();
    JumpCoefficients {
        a: (r.tilde_plus * (r.plus + l.plus) - r.minus * (r.tilde_minus + l.tilde_minus))
            / two_gamma,
        b: (r.plus * (r.tilde_plus + l.tilde_plus) - r.tilde_minus * (r.minus + l.minus))
            / two_gamma,
    }
}

/// Steady branch current of one lead from its two bracketed rate forms.
fn branch_mean(rates: &RateSet, lead: Lead) -> f64 {
    let (s, o) = (rates.lead(lead), rates.lead(lead.other()));
    let two_gamma = rates.r1() + rates.r2();
    let first = (s.plus * (s.tilde_plus + o.tilde_plus)
        - s.minus * (s.tilde_minus + o.tilde_minus))
        / two_gamma;
    let second = (s.tilde_plus * (s.plus + o.plus) - s.tilde_minus * (s.minus + o.minus))
        / two_gamma;
    first + second
}

/// `(⟨Ĩ_L⟩, ⟨Ĩ_R⟩)` in the stationary state.
pub fn steady_branch_means(rates: &RateSet) -> (f64, f64) {
    (branch_mean(rates, Lead::Left), branch_mean(rates, Lead::Right))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorResult {
    pub a: f64,
    pub b: f64,
    pub mean_left: f64,
    pub mean_right: f64,
    /// `⟨Ĩ_L⟩⟨Ĩ_R⟩`.
    pub s1_amplitude: f64,
    /// `b Γ̃_L^+ - a Γ̃_L^-`.
    pub s2_amplitude: f64,
    pub c_lr: f64,
    /// `2Γ`.
    pub decay_rate: f64,
}

impl CorrelatorResult {
    pub fn at(&self, t: f64) -> Result<f64> {
        correlator_time_profile(self, t)
    }

    pub fn spectrum(&self, omega: f64) -> f64 {
        correlator_spectrum(self, omega)
    }
}

pub fn cross_correlation_factor(rates: &RateSet) -> CorrelatorResult {
    let JumpCoefficients { a, b } = jump_coefficients(rates);
    let (mean_left, mean_right) = steady_branch_means(rates);
    let l = rates.lead(Lead::Left);
    let s1_amplitude = mean_left * mean_right;
    let s2_amplitude = b * l.tilde_plus - a * l.tilde_minus;
    CorrelatorResult {
        a,
        b,
        mean_left,
        mean_right,
        s1_amplitude,
        s2_amplitude,
        c_lr: s2_amplitude - s1_amplitude,
        decay_rate: rates.r1() + rates.r2(),
    }
}

/// `S_LR(t) = C_LR exp(-2Γt)`.
pub fn correlator_time_profile(result: &CorrelatorResult, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(invalid(format!("time must be >= 0, got {t}")));
    }
    Ok(result.c_lr * (-result.decay_rate * t).exp())
}

/// Fourier transform of the symmetric extension `C_LR exp(-2Γ|t|)`:
/// `C_LR · 4Γ / (ω² + 4Γ²)`.
pub fn correlator_spectrum(result: &CorrelatorResult, omega: f64) -> f64 {
    let k = result.decay_rate;
    result.c_lr * 2.0 * k / (omega * omega + k * k)
}

/// What the right-lead detector saw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JumpEvent {
    /// A Cooper pair formed; the state collapses to `|0⟩`.
    PairFormed,
    /// A Cooper pair split; the state collapses to `|1⟩`.
    PairSplit,
}

/// Left branch current right after the jump: `-Γ̃_L^-` or `+Γ̃_L^+`.
pub fn jump_conditioned_left_current(rates: &RateSet, event: JumpEvent) -> f64 {
    let l = rates.lead(Lead::Left);
    match event {
        JumpEvent::PairFormed => -l.tilde_minus,
        JumpEvent::PairSplit => l.tilde_plus,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::currents::steady_components;
    use crate::model::{compute_rates, DeviceParams};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn empty_fraction(mu_over_gamma: f64) -> f64 {
        0.5 - mu_over_gamma.atan() / PI
    }

    fn biased(mu_l: f64, mu_r: f64) -> RateSet {
        let p = DeviceParams::symmetric(1.0);
        let g = p.big_gamma();
        compute_rates(&p.with_bias(mu_l * g, mu_r * g)).unwrap()
    }

    #[test]
    fn zero_bias_has_no_correlation() {
        let r = biased(0.0, 0.0);
        let j = jump_coefficients(&r);
        assert_eq!((j.a, j.b), (0.0, 0.0));
        assert_eq!(steady_branch_means(&r), (0.0, 0.0));
        assert_eq!(cross_correlation_factor(&r).c_lr, 0.0);
    }

    #[test]
    fn symmetric_bias_hand_substitution() {
        // with Γ^+ = Γ̃^+ = 1 - x and Γ^- = Γ̃^- = x on both leads:
        // a = b = (1 - 2x)/2, ⟨Ĩ⟩ = 1 - 2x, C_LR = -(1 - 2x)²/2
        let r = biased(50.0, 50.0);
        let x = empty_fraction(50.0);
        let j = jump_coefficients(&r);
        assert_relative_eq!(j.a, (1.0 - 2.0 * x) / 2.0, max_relative = 1e-13);
        assert_relative_eq!(j.b, (1.0 - 2.0 * x) / 2.0, max_relative = 1e-13);
        let c = cross_correlation_factor(&r);
        assert_relative_eq!(c.mean_left, 1.0 - 2.0 * x, max_relative = 1e-13);
        assert_relative_eq!(c.mean_right, 1.0 - 2.0 * x, max_relative = 1e-13);
        assert_relative_eq!(c.c_lr, -(1.0 - 2.0 * x).powi(2) / 2.0, max_relative = 1e-13);

        // one-sided limit
        let c = cross_correlation_factor(&biased(1e9, 1e9));
        assert!((c.a - 0.5).abs() < 1e-9 && (c.b - 0.5).abs() < 1e-9);
        assert!((c.c_lr + 0.5).abs() < 1e-9);
    }

    #[test]
    fn antisymmetric_bias_hand_substitution() {
        // left lead u = 1 - x filled, right lead mirrored:
        // a = b = -(1 - 2x)/4 and C_LR vanishes for equal couplings
        let r = biased(50.0, -50.0);
        let x = empty_fraction(50.0);
        let j = jump_coefficients(&r);
        assert_relative_eq!(j.a, -(1.0 - 2.0 * x) / 4.0, max_relative = 1e-13);
        assert_relative_eq!(j.b, -(1.0 - 2.0 * x) / 4.0, max_relative = 1e-13);
        assert!(cross_correlation_factor(&r).c_lr.abs() < 1e-4);
    }

    #[test]
    fn antisymmetric_bias_sign_follows_coupling_asymmetry() {
        // for equal couplings the antisymmetric-bias factor is zero at
        // every bias; stronger left coupling makes it positive
        for ev in [0.2, 1.0, 3.0, 5.0] {
            let sym = DeviceParams::symmetric(1.0);
            let g = sym.big_gamma();
            let c = cross_correlation_factor(&compute_rates(&sym.with_bias(ev * g, -ev * g)).unwrap());
            assert!(c.c_lr.abs() < 1e-15, "{}", c.c_lr);

            let p = DeviceParams::with_lead_couplings(2.0, 1.0);
            let g = p.big_gamma();
            let c = cross_correlation_factor(&compute_rates(&p.with_bias(ev * g, -ev * g)).unwrap());
            assert!(c.c_lr > 0.0);
            let p = DeviceParams::with_lead_couplings(1.0, 2.0);
            let c = cross_correlation_factor(&compute_rates(&p.with_bias(ev * g, -ev * g)).unwrap());
            assert!(c.c_lr < 0.0);
        }
    }

    #[test]
    fn means_match_branch_currents() {
        let r = compute_rates(
            &DeviceParams::with_lead_couplings(0.7, 1.3)
                .with_bias(0.9, -2.1)
                .with_epsilon_m(0.4),
        )
        .unwrap();
        let (ml, mr) = steady_branch_means(&r);
        let dl = steady_components(&r, Lead::Left).unwrap();
        let dr = steady_components(&r, Lead::Right).unwrap();
        assert!((ml - dl.branch()).abs() < 1e-13);
        assert!((mr - dr.branch()).abs() < 1e-13);
        assert_relative_eq!(steady_branch_means(&biased(50.0, 50.0)).0, 1.0, max_relative = 0.03);
    }

    #[test]
    fn time_profile_and_spectrum() {
        let r = biased(2.0, 2.0);
        let c = cross_correlation_factor(&r);
        let g = r.big_gamma();
        assert_eq!(c.at(0.0).unwrap(), c.c_lr);
        assert_relative_eq!(c.at(1.0 / (2.0 * g)).unwrap(), c.c_lr / std::f64::consts::E, max_relative = 1e-15);
        let (t1, t2) = (0.3, 1.1);
        assert_relative_eq!(
            c.at(t2).unwrap() / c.at(t1).unwrap(),
            (-2.0 * g * (t2 - t1)).exp(),
            max_relative = 1e-14
        );
        assert!(c.at(-1.0).is_err());

        assert_relative_eq!(c.spectrum(0.0), c.c_lr / g, max_relative = 1e-15);
        assert_relative_eq!(c.spectrum(2.0 * g), c.c_lr / g / 2.0, max_relative = 1e-15);
        let zero = cross_correlation_factor(&biased(0.0, 0.0));
        assert_eq!(zero.spectrum(1.3), 0.0);
    }

    #[test]
    fn spectrum_integrates_back_to_the_equal_time_value() {
        // (1/2π) ∫ S(ω) dω = C_LR
        let c = cross_correlation_factor(&biased(1.5, 1.5));
        let k = c.decay_rate;
        let f = |u: f64| {
            // ω = k tan(u) maps the real line to (-π/2, π/2)
            let w = k * u.tan();
            c.spectrum(w) * k / u.cos().powi(2)
        };
        let est = crate::quadrature::integrate(f, -PI / 2.0 + 1e-12, PI / 2.0 - 1e-12, Default::default())
            .unwrap()
            .value;
        assert_relative_eq!(est / (2.0 * PI), c.c_lr, max_relative = 1e-9);
    }

    #[test]
    fn jump_conditioned_currents() {
        let r = biased(1e9, 1e9);
        assert!(jump_conditioned_left_current(&r, JumpEvent::PairFormed).abs() < 1e-9);
        assert!((jump_conditioned_left_current(&r, JumpEvent::PairSplit) - 1.0).abs() < 1e-9);
        let r = biased(0.0, 0.0);
        assert_eq!(jump_conditioned_left_current(&r, JumpEvent::PairFormed), -0.5);
        assert_eq!(jump_conditioned_left_current(&r, JumpEvent::PairSplit), 0.5);
    }

    fn params_strategy() -> impl Strategy<Value = DeviceParams> {
        (
            0.01f64..2.0,
            0.0f64..2.0,
            0.01f64..2.0,
            0.0f64..2.0,
            -3.0f64..3.0,
            -15.0f64..15.0,
            -15.0f64..15.0,
        )
            .prop_map(|(el, hl, er, hr, eps, ml, mr)| DeviceParams {
                gamma_e_l: el,
                gamma_h_l: hl,
                gamma_e_r: er,
                gamma_h_r: hr,
                epsilon_m: eps,
                mu_l: ml,
                mu_r: mr,
                temperature: 0.0,
            })
    }

    proptest! {
        #[test]
        fn conditional_weight_equals_right_mean(p in params_strategy()) {
            let r = compute_rates(&p).unwrap();
            let j = jump_coefficients(&r);
            let (_, mr) = steady_branch_means(&r);
            prop_assert!((j.a + j.b - mr).abs() <= 1e-12);
        }

        #[test]
        fn even_in_bias_at_zero_coupling_energy(g in 0.1f64..2.0, ev in 0.0f64..20.0, anti in any::<bool>()) {
            let p = DeviceParams::symmetric(g);
            let sign = if anti { -1.0 } else { 1.0 };
            let c = |v: f64| cross_correlation_factor(&compute_rates(&p.with_bias(v, sign * v)).unwrap()).c_lr;
            prop_assert!((c(ev) - c(-ev)).abs() <= 1e-10);
        }

        #[test]
        fn symmetric_bias_is_anticorrelated(g in 0.1f64..2.0, ev in 0.01f64..20.0) {
            let p = DeviceParams::symmetric(g);
            let gamma = p.big_gamma();
            let c = cross_correlation_factor(&compute_rates(&p.with_bias(ev * gamma, ev * gamma)).unwrap()).c_lr;
            prop_assert!(c < 0.0);
        }

        #[test]
        fn continuous_at_zero_coupling_energy(g in 0.1f64..2.0, ev in 0.1f64..20.0) {
            let p = DeviceParams::symmetric(g);
            let gamma = p.big_gamma();
            let biased = p.with_bias(ev * gamma, ev * gamma);
            let c0 = cross_correlation_factor(&compute_rates(&biased).unwrap()).c_lr;
            let c1 = cross_correlation_factor(&compute_rates(&biased.with_epsilon_m(1e-6 * gamma)).unwrap()).c_lr;
            prop_assert!(c0 != 0.0);
            prop_assert!((c1 - c0).abs() < 1e-4 * c0.abs());
        }
    }
}
