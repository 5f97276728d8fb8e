//! Gillespie simulation of the eight-channel jump process and batch-means
//! estimators of its steady-state observables.

use std::io::{self, Write};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::model::{Channel, Lead, RateSet};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpRecord {
    pub time: f64,
    pub channel: Channel,
    pub state_after: u8,
}

impl JumpRecord {
    /// `+1` when the jump moves an electron from `lead` into the
    /// superconductor, `-1` for the reverse, `0` at the other lead.
    pub fn charge_at(&self, lead: Lead) -> i8 {
        if self.channel.lead == lead {
            self.channel.charge()
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub initial_state: u8,
    pub duration: f64,
    pub seed: u64,
    pub stream: u64,
    pub records: Vec<JumpRecord>,
    /// Time at which an absorbing state was entered, if any.
    pub absorbed_at: Option<f64>,
}

impl Trajectory {
    /// Writes one `time<TAB>channel<TAB>state_after` line per jump.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        for r in &self.records {
            writeln!(out, "{:.17e}\t{}\t{}", r.time, r.channel, r.state_after)?;
        }
        Ok(())
    }
}

/// Simulates from the empty state on stream 0 of `seed`.
pub fn simulate_trajectory(rates: &RateSet, duration: f64, seed: u64) -> Result<Trajectory> {
    simulate_trajectory_from(rates, duration, seed, 0, 0)
}

/// Simulates one trajectory on the independent stream `(seed, stream)`.
pub fn simulate_trajectory_from(
    rates: &RateSet,
    duration: f64,
    seed: u64,
    stream: u64,
    initial_state: u8,
) -> Result<Trajectory> {
    if !(duration > 0.0) || !duration.is_finite() {
        return Err(invalid(format!("duration must be positive, got {duration}")));
    }
    if initial_state > 1 {
        return Err(invalid(format!("initial state must be 0 or 1, got {initial_state}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);

    let from_state: [Vec<(Channel, f64)>; 2] = [0u8, 1].map(|s| {
        Channel::ALL
            .iter()
            .filter(|c| c.pre_state() == s)
            .map(|&c| (c, rates.rate(c)))
            .collect()
    });
    let exit_rate = [rates.r1(), rates.r2()];

    let mut records = Vec::new();
    let mut state = initial_state;
    let mut t = 0.0;
    let mut absorbed_at = None;
    loop {
        let total = exit_rate[state as usize];
        if !(total > 0.0) {
            absorbed_at = Some(t);
            break;
        }
        let wait: f64 = Exp1.sample(&mut rng);
        t += wait / total;
        if t > duration {
            break;
        }
        let mut pick = rng.random::<f64>() * total;
        let options = &from_state[state as usize];
        let mut chosen = options[options.len() - 1].0;
        for &(c, rate) in options {
            if pick < rate {
                chosen = c;
                break;
            }
            pick -= rate;
        }
        state = chosen.post_state();
        records.push(JumpRecord {
            time: t,
            channel: chosen,
            state_after: state,
        });
    }

    Ok(Trajectory {
        initial_state,
        duration,
        seed,
        stream,
        records,
        absorbed_at,
    })
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_err: f64,
}

impl Estimate {
    fn from_batches(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        Self {
            mean,
            std_err: (var / n).sqrt(),
        }
    }

    /// `|mean - expected|` in units of the standard error.
    pub fn z_score(&self, expected: f64) -> f64 {
        (self.mean - expected).abs() / self.std_err
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryStats {
    /// Time-averaged occupation `p1`.
    pub occupancy: Estimate,
    /// Net charge per unit time into the superconductor, indexed by [`Lead::index`].
    pub current: [Estimate; 2],
    /// Firing frequency of each channel, indexed by [`Channel::index`].
    pub channel_rate: [Estimate; 8],
    pub n_jumps: usize,
    pub seed: u64,
}

impl TrajectoryStats {
    pub fn current_at(&self, lead: Lead) -> Estimate {
        self.current[lead.index()]
    }
}

pub const MIN_BATCHES: usize = 20;

/// Batch-means estimates over `n_batches` equal time windows.
pub fn estimate_steady_observables(traj: &Trajectory, n_batches: usize) -> Result<TrajectoryStats> {
    if !(traj.duration > 0.0) {
        return Err(invalid(format!("duration must be positive, got {}", traj.duration)));
    }
    if n_batches < MIN_BATCHES {
        return Err(invalid(format!("need at least {MIN_BATCHES} batches, got {n_batches}")));
    }
    let width = traj.duration / n_batches as f64;
    let mut occupied_time = vec![0.0; n_batches];
    let mut charge = vec![[0.0f64; 2]; n_batches];
    let mut counts = vec![[0.0f64; 8]; n_batches];

    let batch_of = |t: f64| ((t / width) as usize).min(n_batches - 1);
    let mut add_occupied = |from: f64, to: f64| {
        let mut t = from;
        while t < to {
            let k = batch_of(t);
            let end = (((k + 1) as f64) * width).min(to);
            occupied_time[k] += end - t;
            if end <= t {
                break;
            }
            t = end;
        }
    };

    let mut state = traj.initial_state;
    let mut last = 0.0;
    for r in &traj.records {
        if state == 1 {
            add_occupied(last, r.time);
        }
        let k = batch_of(r.time);
        for lead in Lead::BOTH {
            charge[k][lead.index()] += f64::from(r.charge_at(lead));
        }
        counts[k][r.channel.index()] += 1.0;
        state = r.state_after;
        last = r.time;
    }
    if state == 1 {
        add_occupied(last, traj.duration);
    }

    let occ: Vec<f64> = occupied_time.iter().map(|x| x / width).collect();
    let current = [0, 1].map(|i| {
        let v: Vec<f64> = charge.iter().map(|c| c[i] / width).collect();
        Estimate::from_batches(&v)
    });
    let channel_rate = std::array::from_fn(|i| {
        let v: Vec<f64> = counts.iter().map(|c| c[i] / width).collect();
        Estimate::from_batches(&v)
    });
    Ok(TrajectoryStats {
        occupancy: Estimate::from_batches(&occ),
        current,
        channel_rate,
        n_jumps: traj.records.len(),
        seed: traj.seed,
    })
}

/// Runs `n` independent trajectories in parallel, trajectory `i` on
/// stream `i` of `seed`, and returns their statistics in order.
pub fn run_ensemble(
    rates: &RateSet,
    duration: f64,
    seed: u64,
    n: usize,
    n_batches: usize,
) -> Result<Vec<TrajectoryStats>> {
    (0..n as u64)
        .into_par_iter()
        .map(|i| {
            let traj = simulate_trajectory_from(rates, duration, seed, i, 0)?;
            estimate_steady_observables(&traj, n_batches)
        })
        .collect()
}
