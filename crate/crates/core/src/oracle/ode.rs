//! Numerical propagation of linear population equations `dx/dt = M x`.

use ode_solvers::{DVector, Dop853, OutputType, System};

use crate::error::{invalid, Error, Result};
use crate::model::RateSet;
use crate::populations::{InitialCondition, Populations};

const RTOL: f64 = 1e-13;
const ATOL: f64 = 1e-18;

/// Dense generator of a linear master equation.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    dim: usize,
    entries: Vec<f64>,
}

impl Generator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![0.0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add(&mut self, row: usize, col: usize, value: f64) {
        self.entries[row * self.dim + col] += value;
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    /// Two-state rate equation `dp1/dt = r1 p0 - r2 p1` on `(p0, p1)`.
    pub fn two_state(rates: &RateSet) -> Self {
        let mut m = Self::zeros(2);
        m.add(0, 0, -rates.r1());
        m.add(1, 0, rates.r1());
        m.add(1, 1, -rates.r2());
        m.add(0, 1, rates.r2());
        m
    }

    fn apply(&self, y: &DVector<f64>, dy: &mut DVector<f64>) {
        for (i, row) in self.entries.chunks_exact(self.dim).enumerate() {
            dy[i] = row.iter().zip(y.iter()).map(|(m, v)| m * v).sum();
        }
    }
}

impl System<f64, DVector<f64>> for &Generator {
    fn system(&self, _t: f64, y: &DVector<f64>, dy: &mut DVector<f64>) {
        self.apply(y, dy);
    }
}

/// Propagates `x0` to every time in `t_grid` (nondecreasing, `>= 0`).
///
/// Each grid interval is an independent adaptive 8th-order Dormand–Prince
/// run started from the previous grid value.
pub fn propagate_linear(generator: &Generator, x0: &[f64], t_grid: &[f64]) -> Result<Vec<Vec<f64>>> {
    if x0.len() != generator.dim() {
        return Err(invalid(format!(
            "initial vector has {} entries, generator is {}x{}",
            x0.len(),
            generator.dim(),
            generator.dim()
        )));
    }
    if let Some(&first) = t_grid.first() {
        if !(first >= 0.0) {
            return Err(invalid(format!("time grid must start at t >= 0, got {first}")));
        }
    }
    if t_grid.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(invalid("time grid must be nondecreasing"));
    }

    let mut out = Vec::with_capacity(t_grid.len());
    let mut t = 0.0;
    let mut y = DVector::from_column_slice(x0);
    for &target in t_grid {
        if target > t {
            let mut solver = Dop853::new(generator, t, target, target - t, y.clone(), RTOL, ATOL);
            solver.set_output(OutputType::Sparse);
            solver.integrate().map_err(|e| Error::Integration {
                t,
                reason: e.to_string(),
            })?;
            y = solver
                .y_out()
                .last()
                .cloned()
                .ok_or_else(|| Error::Integration {
                    t,
                    reason: "integrator produced no output".into(),
                })?;
            t = target;
        }
        out.push(y.iter().copied().collect());
    }
    Ok(out)
}

/// Numerically integrated populations of the two-state rate equation.
pub fn propagate_ode(
    init: InitialCondition,
    rates: &RateSet,
    t_grid: &[f64],
) -> Result<Vec<Populations>> {
    let start = init.populations()?;
    let states = propagate_linear(&Generator::two_state(rates), &[start.p0, start.p1], t_grid)?;
    Ok(states
        .into_iter()
        .map(|x| Populations::new(x[0], x[1]))
        .collect())
}
