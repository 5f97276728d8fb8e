//! Device parameters and the eight tunnel-coupling rates.
//!
//! Each lead couples to the `f` fermion through an electron component
//! (strength `gamma_e`) and a hole component (strength `gamma_h`). The
//! normal rates `Γ±` weigh the lead's occupied/empty Fermi factor with a
//! Lorentzian centred on `+ε_M`; the Andreev rates `Γ̃±` use the same Fermi
//! factors with the Lorentzian centred on `-ε_M`. The Lorentzian width is
//! the total broadening `Γ = Σ_α (Γ_α^e + Γ_α^h) / 2`.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{invalid, Result};
use crate::quadrature::{self, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lead {
    Left,
    Right,
}

impl Lead {
    pub const BOTH: [Lead; 2] = [Lead::Left, Lead::Right];

    pub fn other(self) -> Lead {
        match self {
            Lead::Left => Lead::Right,
            Lead::Right => Lead::Left,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Lead {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lead::Left => "L",
            Lead::Right => "R",
        })
    }
}

/// Physical inputs of the two-lead device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceParams {
    pub gamma_e_l: f64,
    pub gamma_h_l: f64,
    pub gamma_e_r: f64,
    pub gamma_h_r: f64,
    /// Coupling energy between the two Majorana modes.
    pub epsilon_m: f64,
    /// Lead chemical potentials measured from the superconductor's Fermi level.
    pub mu_l: f64,
    pub mu_r: f64,
    pub temperature: f64,
}

impl DeviceParams {
    /// All four couplings equal to `gamma`, zero bias, `ε_M = 0`, `T = 0`.
    pub fn symmetric(gamma: f64) -> Self {
        Self {
            gamma_e_l: gamma,
            gamma_h_l: gamma,
            gamma_e_r: gamma,
            gamma_h_r: gamma,
            epsilon_m: 0.0,
            mu_l: 0.0,
            mu_r: 0.0,
            temperature: 0.0,
        }
    }

    /// Equal electron/hole couplings per lead.
    pub fn with_lead_couplings(gamma_l: f64, gamma_r: f64) -> Self {
        Self {
            gamma_e_l: gamma_l,
            gamma_h_l: gamma_l,
            gamma_e_r: gamma_r,
            gamma_h_r: gamma_r,
            ..Self::symmetric(0.0)
        }
    }

    pub fn with_bias(self, mu_l: f64, mu_r: f64) -> Self {
        Self { mu_l, mu_r, ..self }
    }

    pub fn with_epsilon_m(self, epsilon_m: f64) -> Self {
        Self { epsilon_m, ..self }
    }

    pub fn with_temperature(self, temperature: f64) -> Self {
        Self {
            temperature,
            ..self
        }
    }

    /// `(Γ^e, Γ^h)` of one lead.
    pub fn couplings(&self, lead: Lead) -> (f64, f64) {
        match lead {
            Lead::Left => (self.gamma_e_l, self.gamma_h_l),
            Lead::Right => (self.gamma_e_r, self.gamma_h_r),
        }
    }

    pub fn mu(&self, lead: Lead) -> f64 {
        match lead {
            Lead::Left => self.mu_l,
            Lead::Right => self.mu_r,
        }
    }

    pub fn big_gamma(&self) -> f64 {
        0.5 * (self.gamma_e_l + self.gamma_h_l + self.gamma_e_r + self.gamma_h_r)
    }

    pub fn validate(&self) -> Result<()> {
        let couplings = [
            ("gamma_e_l", self.gamma_e_l),
            ("gamma_h_l", self.gamma_h_l),
            ("gamma_e_r", self.gamma_e_r),
            ("gamma_h_r", self.gamma_h_r),
        ];
        for (name, value) in couplings {
            if !value.is_finite() || value < 0.0 {
                return Err(invalid(format!("{name} must be finite and >= 0, got {value}")));
            }
        }
        if self.big_gamma() <= 0.0 {
            return Err(invalid("at least one coupling strength must be positive"));
        }
        for (name, value) in [
            ("epsilon_m", self.epsilon_m),
            ("mu_l", self.mu_l),
            ("mu_r", self.mu_r),
        ] {
            if !value.is_finite() {
                return Err(invalid(format!("{name} must be finite, got {value}")));
            }
        }
        if !self.temperature.is_finite() || self.temperature < 0.0 {
            return Err(invalid(format!(
                "temperature must be finite and >= 0, got {}",
                self.temperature
            )));
        }
        Ok(())
    }
}

/// Rates of one lead plus the coupling strengths they were derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadRates {
    /// `Γ^+`: electron tunnels in and creates the `f` quasiparticle.
    pub plus: f64,
    /// `Γ^-`: electron tunnels out and empties the `f` state.
    pub minus: f64,
    /// `Γ̃^+`: electron tunnels in and annihilates `f` (Cooper pair formed).
    pub tilde_plus: f64,
    /// `Γ̃^-`: a Cooper pair splits, emitting an electron and creating `f`.
    pub tilde_minus: f64,
    pub gamma_e: f64,
    pub gamma_h: f64,
}

impl LeadRates {
    /// Builds a lead from raw rates, taking the couplings as their sums.
    pub fn from_rates(plus: f64, minus: f64, tilde_plus: f64, tilde_minus: f64) -> Self {
        Self {
            plus,
            minus,
            tilde_plus,
            tilde_minus,
            gamma_e: plus + minus,
            gamma_h: tilde_plus + tilde_minus,
        }
    }

    pub fn rate(&self, kind: ChannelKind) -> f64 {
        match kind {
            ChannelKind::NormalIn => self.plus,
            ChannelKind::NormalOut => self.minus,
            ChannelKind::AndreevIn => self.tilde_plus,
            ChannelKind::AndreevOut => self.tilde_minus,
        }
    }
}

/// The complete rate set entering the population dynamics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSet {
    left: LeadRates,
    right: LeadRates,
    r1: f64,
    r2: f64,
    big_gamma: f64,
}

impl RateSet {
    /// Assembles a rate set; `Γ` is half the summed coupling strengths.
    pub fn from_lead_rates(left: LeadRates, right: LeadRates) -> Self {
        let r1 = left.plus + left.tilde_minus + right.plus + right.tilde_minus;
        let r2 = left.minus + left.tilde_plus + right.minus + right.tilde_plus;
        let big_gamma = 0.5 * (left.gamma_e + left.gamma_h + right.gamma_e + right.gamma_h);
        Self {
            left,
            right,
            r1,
            r2,
            big_gamma,
        }
    }

    pub fn lead(&self, lead: Lead) -> &LeadRates {
        match lead {
            Lead::Left => &self.left,
            Lead::Right => &self.right,
        }
    }

    /// Excitation rate of the `f` fermion (`0 → 1`).
    pub fn r1(&self) -> f64 {
        self.r1
    }

    /// Deexcitation rate (`1 → 0`).
    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn big_gamma(&self) -> f64 {
        self.big_gamma
    }

    pub fn rate(&self, channel: Channel) -> f64 {
        self.lead(channel.lead).rate(channel.kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChannelKind {
    NormalIn,
    NormalOut,
    AndreevIn,
    AndreevOut,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 4] = [
        ChannelKind::NormalIn,
        ChannelKind::NormalOut,
        ChannelKind::AndreevIn,
        ChannelKind::AndreevOut,
    ];
}

/// One of the eight Lindblad jump channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Channel {
    pub lead: Lead,
    pub kind: ChannelKind,
}

impl Channel {
    pub const ALL: [Channel; 8] = [
        Channel::new(Lead::Left, ChannelKind::NormalIn),
        Channel::new(Lead::Left, ChannelKind::NormalOut),
        Channel::new(Lead::Left, ChannelKind::AndreevIn),
        Channel::new(Lead::Left, ChannelKind::AndreevOut),
        Channel::new(Lead::Right, ChannelKind::NormalIn),
        Channel::new(Lead::Right, ChannelKind::NormalOut),
        Channel::new(Lead::Right, ChannelKind::AndreevIn),
        Channel::new(Lead::Right, ChannelKind::AndreevOut),
    ];

    pub const fn new(lead: Lead, kind: ChannelKind) -> Self {
        Self { lead, kind }
    }

    /// Position in [`Channel::ALL`].
    pub fn index(self) -> usize {
        4 * self.lead.index() + self.kind as usize
    }

    /// Occupation the channel requires before firing (`f` or `f†`).
    pub fn pre_state(self) -> u8 {
        match self.kind {
            ChannelKind::NormalIn | ChannelKind::AndreevOut => 0,
            ChannelKind::NormalOut | ChannelKind::AndreevIn => 1,
        }
    }

    pub fn post_state(self) -> u8 {
        1 - self.pre_state()
    }

    /// Charge moved from the lead into the superconductor.
    pub fn charge(self) -> i8 {
        match self.kind {
            ChannelKind::NormalIn | ChannelKind::AndreevIn => 1,
            ChannelKind::NormalOut | ChannelKind::AndreevOut => -1,
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ChannelKind::NormalIn => "e+",
            ChannelKind::NormalOut => "e-",
            ChannelKind::AndreevIn => "h+",
            ChannelKind::AndreevOut => "h-",
        };
        write!(f, "{}:{}", self.lead, kind)
    }
}

/// Unit-normalised Lorentzian `γ / π / ((ω - c)² + γ²)`.
pub fn lorentzian_weight(omega: f64, center: f64, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(invalid(format!("Lorentzian width must be positive, got {gamma}")));
    }
    let d = omega - center;
    Ok(gamma / PI / (d * d + gamma * gamma))
}

/// Fermi occupation `1 / (exp((ω - μ)/T) + 1)`; a step with value 1/2 at
/// `ω = μ` when `T = 0`.
pub fn fermi_occupation(omega: f64, mu: f64, temperature: f64) -> Result<f64> {
    if !(temperature >= 0.0) || !temperature.is_finite() {
        return Err(invalid(format!(
            "temperature must be finite and >= 0, got {temperature}"
        )));
    }
    if temperature == 0.0 {
        return Ok(match omega.partial_cmp(&mu) {
            Some(std::cmp::Ordering::Less) => 1.0,
            Some(std::cmp::Ordering::Greater) => 0.0,
            _ => 0.5,
        });
    }
    Ok(fermi_unchecked((omega - mu) / temperature))
}

fn fermi_unchecked(x: f64) -> f64 {
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// `1/2 - atan(x)/π`, accurate in the far tail.
fn upper_tail(x: f64) -> f64 {
    if x > 1.0 {
        (1.0 / x).atan() / PI
    } else {
        0.5 - x.atan() / PI
    }
}

/// Where the thermal correction is cut off, in units of `T`.
const FERMI_CUTOFF: f64 = 50.0;

/// Occupied and empty weights `(N^+, N^-)` of a Lorentzian centred on
/// `center` seen through the Fermi function of a lead.
///
/// The zero-temperature part is the arctan closed form; at `T > 0` the
/// difference between the Fermi function and the step is integrated
/// numerically. That difference is localised within a few `T` of `μ`.
fn fermi_weights(center: f64, mu: f64, temperature: f64, width: f64) -> Result<(f64, f64)> {
    let x = (mu - center) / width;
    let mut plus = upper_tail(-x);
    let mut minus = upper_tail(x);
    if temperature > 0.0 {
        let lorentz = |d: f64| width / PI / (d * d + width * width);
        let integrand = |u: f64| {
            let shift = temperature * u;
            temperature
                * (lorentz(mu + shift - center) - lorentz(mu - shift - center))
                * fermi_unchecked(u)
        };
        let tol = Tolerance {
            abs: 1e-16,
            rel: 1e-10,
            max_subdivisions: 4000,
        };
        let correction = quadrature::integrate(integrand, 0.0, FERMI_CUTOFF, tol)?.value;
        plus += correction;
        minus -= correction;
    }
    Ok((plus, minus))
}

/// Computes the eight tunneling rates and the derived `r1`, `r2`, `Γ`.
pub fn compute_rates(params: &DeviceParams) -> Result<RateSet> {
    params.validate()?;
    let width = params.big_gamma();
    let lead_rates = |lead: Lead| -> Result<LeadRates> {
        let (gamma_e, gamma_h) = params.couplings(lead);
        let mu = params.mu(lead);
        let (n_plus, n_minus) = fermi_weights(params.epsilon_m, mu, params.temperature, width)?;
        let (nt_plus, nt_minus) =
            fermi_weights(-params.epsilon_m, mu, params.temperature, width)?;
        Ok(LeadRates {
            plus: gamma_e * n_plus,
            minus: gamma_e * n_minus,
            tilde_plus: gamma_h * nt_plus,
            tilde_minus: gamma_h * nt_minus,
            gamma_e,
            gamma_h,
        })
    };
    Ok(RateSet::from_lead_rates(
        lead_rates(Lead::Left)?,
        lead_rates(Lead::Right)?,
    ))
}
