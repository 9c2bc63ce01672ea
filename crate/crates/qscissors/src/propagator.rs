//! Exact time evolution under a fixed Hamiltonian.
//!
//! Two independent routes are provided and cross-checked against each other:
//!
//! * spectral: one Hermitian eigendecomposition H = V diag(lambda) V' serves
//!   every evolution time exactly, psi(t) = V diag(e^{-i lambda t}) V' psi(0);
//! * direct integration: classical fixed-step RK4 on the amplitude equations
//!   i dc/dt = H c, with the norm monitored as the accuracy sentinel.
//!
//! The spectral route is the primary one (the Hamiltonian is constant); the
//! integrator exists to confirm it and to serve grids where building a
//! decomposition would be wasteful.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::analysis;
use crate::error::{Error, Result};
use crate::fock::StateVector;
use crate::hamiltonian::{HamiltonianMatrix, SystemParams};
use crate::truncated::{self, QubitAmplitudes};

/// One sampled instant of a trajectory: the reduced observables the CSV
/// schema reports.
#[derive(Copy, Clone, Debug)]
pub struct TrajectoryRecord {
    pub time: f64,
    /// |c|^2 on the eight {0,1}^3 states, binary order.
    pub qubit_probs: [f64; 8],
    /// Population on states with any occupation >= 2.
    pub leakage: f64,
    /// W fidelity maximized over per-mode phases.
    pub w_fidelity_phase_opt: f64,
    pub norm: f64,
}

impl TrajectoryRecord {
    pub fn from_state(time: f64, psi: &StateVector) -> Self {
        let qubit_probs = QubitAmplitudes::project(psi)
            .map(|c| c.probabilities())
            .unwrap_or([0.0; 8]);
        Self {
            time,
            qubit_probs,
            leakage: analysis::leakage(psi),
            w_fidelity_phase_opt: analysis::w_fidelity_phase_optimal(psi),
            norm: psi.norm(),
        }
    }

    pub fn value(&self, obs: analysis::Observable) -> f64 {
        match obs {
            analysis::Observable::Probability(k) => self.qubit_probs[k],
            analysis::Observable::Leakage => self.leakage,
            analysis::Observable::WFidelityPhaseOpt => self.w_fidelity_phase_opt,
            analysis::Observable::Norm => self.norm,
        }
    }
}

/// Time series of reduced observables; full states are kept only on request.
#[derive(Clone, Debug, Default)]
pub struct Trajectory {
    records: Vec<TrajectoryRecord>,
}

impl Trajectory {
    pub fn from_records(records: Vec<TrajectoryRecord>) -> Result<Self> {
        if !records.windows(2).all(|w| w[1].time > w[0].time) {
            return Err(Error::InvalidParameter(
                "trajectory times must be strictly increasing".into(),
            ));
        }
        Ok(Self { records })
    }

    pub fn records(&self) -> &[TrajectoryRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.time)
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .records
                .iter()
                .zip(&other.records)
                .all(|(a, b)| a.time == b.time)
    }
}

/// Eigendecomposition of a Hermitian Hamiltonian, reused for every
/// evolution time.
#[derive(Clone, Debug)]
pub struct SpectralPropagator {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
    cutoff: usize,
    dim: usize,
}

impl SpectralPropagator {
    /// Diagonalize `h`. Fails if `h` is measurably non-Hermitian or if the
    /// decomposition does not reproduce its action.
    pub fn new(h: &HamiltonianMatrix) -> Result<Self> {
        let scale = h.max_abs().max(1.0);
        let herm = h.hermiticity_deviation();
        if herm > 1e-12 * scale {
            return Err(Error::NotHermitian { max_dev: herm });
        }

        let eig = h.to_dense().symmetric_eigen();
        let dim = h.dim();
        let eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        let eigenvectors = eig.eigenvectors;

        // every eigenpair must satisfy H v = lambda v against the sparse H
        let mut v = vec![Complex64::ZERO; dim];
        let mut hv = vec![Complex64::ZERO; dim];
        let mut residual = 0.0f64;
        for (i, &lambda) in eigenvalues.iter().enumerate() {
            for (dst, src) in v.iter_mut().zip(eigenvectors.column(i).iter()) {
                *dst = *src;
            }
            h.apply_slice(&v, &mut hv);
            let r = hv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - b * lambda).norm())
                .fold(0.0, f64::max);
            residual = residual.max(r);
        }
        let tolerance = 1e-10 * scale;
        if residual > tolerance {
            return Err(Error::BadDecomposition {
                residual,
                tolerance,
            });
        }

        Ok(Self {
            eigenvalues,
            eigenvectors,
            cutoff: h.cutoff(),
            dim,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary matrix of eigenvectors, one per column.
    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.eigenvectors
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// psi(t) = V diag(e^{-i lambda t}) V' psi0.
    pub fn evolve(&self, psi0: &StateVector, t: f64) -> Result<StateVector> {
        let modal = self.to_modal(psi0)?;
        Ok(self.state_at(&modal, t))
    }

    /// Sample the evolution of `psi0` on a strictly increasing grid.
    pub fn trajectory(&self, psi0: &StateVector, times: &[f64]) -> Result<Trajectory> {
        Ok(self.trajectory_impl(psi0, times, false)?.0)
    }

    /// As [`SpectralPropagator::trajectory`], also keeping the full state at
    /// every grid point.
    pub fn trajectory_with_states(
        &self,
        psi0: &StateVector,
        times: &[f64],
    ) -> Result<(Trajectory, Vec<StateVector>)> {
        self.trajectory_impl(psi0, times, true)
    }

    fn trajectory_impl(
        &self,
        psi0: &StateVector,
        times: &[f64],
        store_states: bool,
    ) -> Result<(Trajectory, Vec<StateVector>)> {
        ensure_increasing(times)?;
        let modal0 = self.to_modal(psi0)?;
        let mut records = Vec::with_capacity(times.len());
        let mut states = Vec::new();
        for &t in times {
            let psi_t = self.state_at(&modal0, t);
            records.push(TrajectoryRecord::from_state(t, &psi_t));
            if store_states {
                states.push(psi_t);
            }
        }
        Ok((Trajectory { records }, states))
    }

    fn to_modal(&self, psi: &StateVector) -> Result<DVector<Complex64>> {
        if psi.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: psi.dim(),
            });
        }
        Ok(self.eigenvectors.adjoint() * DVector::from_column_slice(psi.amplitudes()))
    }

    fn state_at(&self, modal0: &DVector<Complex64>, t: f64) -> StateVector {
        let mut modal = modal0.clone();
        for (z, &lambda) in modal.iter_mut().zip(&self.eigenvalues) {
            *z *= Complex64::cis(-lambda * t);
        }
        let out = &self.eigenvectors * modal;
        StateVector::from_amplitudes(out.iter().copied().collect(), self.cutoff)
            .expect("dimensions preserved")
    }
}

/// Options for the direct integrator.
#[derive(Copy, Clone, Debug)]
pub struct IntegrationOptions {
    /// Grid intervals wider than this are subdivided into equal RK4 steps.
    pub max_step: f64,
    /// Keep the full state at every grid point.
    pub store_states: bool,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        Self {
            max_step: truncated::DEFAULT_MAX_STEP,
            store_states: false,
        }
    }
}

/// Integrate i dc/dt = H c for the full Fock-space amplitudes with classical
/// RK4, sampling on `times`. The norm is monitored; drifting more than 1e-6
/// from its initial value aborts the run.
pub fn integrate_amplitude_odes(
    params: &SystemParams,
    psi0: &StateVector,
    times: &[f64],
) -> Result<Trajectory> {
    Ok(integrate_amplitude_odes_with(params, psi0, times, IntegrationOptions::default())?.0)
}

pub fn integrate_amplitude_odes_with(
    params: &SystemParams,
    psi0: &StateVector,
    times: &[f64],
    options: IntegrationOptions,
) -> Result<(Trajectory, Vec<StateVector>)> {
    let h = HamiltonianMatrix::build(params)?;
    if psi0.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            got: psi0.dim(),
        });
    }
    truncated::check_grid(times, options.max_step)?;

    let dim = h.dim();
    let mut y = psi0.amplitudes().to_vec();
    let norm0 = norm_of(&y);
    let mut k1 = vec![Complex64::ZERO; dim];
    let mut k2 = vec![Complex64::ZERO; dim];
    let mut k3 = vec![Complex64::ZERO; dim];
    let mut k4 = vec![Complex64::ZERO; dim];
    let mut stage = vec![Complex64::ZERO; dim];

    let mut records = Vec::with_capacity(times.len());
    let mut states = Vec::new();
    let mut record = |y: &[Complex64], t: f64, states: &mut Vec<StateVector>| {
        let psi = StateVector::from_amplitudes(y.to_vec(), h.cutoff()).expect("dim fixed");
        records.push(TrajectoryRecord::from_state(t, &psi));
        if options.store_states {
            states.push(psi);
        }
    };
    record(&y, times[0], &mut states);

    for w in times.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let n_sub = ((t1 - t0) / options.max_step - 1e-12).ceil().max(1.0) as usize;
        let dt = (t1 - t0) / n_sub as f64;
        for _ in 0..n_sub {
            // k1 = f(y)
            rhs(&h, &y, &mut k1);
            // k2 = f(y + dt/2 k1)
            axpy(&y, dt / 2.0, &k1, &mut stage);
            rhs(&h, &stage, &mut k2);
            // k3 = f(y + dt/2 k2)
            axpy(&y, dt / 2.0, &k2, &mut stage);
            rhs(&h, &stage, &mut k3);
            // k4 = f(y + dt k3)
            axpy(&y, dt, &k3, &mut stage);
            rhs(&h, &stage, &mut k4);
            for i in 0..dim {
                y[i] += dt / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
            }
        }
        let drift = (norm_of(&y) - norm0).abs();
        if drift > 1e-6 {
            return Err(Error::NormDrift { t: t1, drift });
        }
        record(&y, t1, &mut states);
    }
    Ok((Trajectory { records }, states))
}

// dy/dt = -i H y
fn rhs(h: &HamiltonianMatrix, y: &[Complex64], out: &mut [Complex64]) {
    h.apply_slice(y, out);
    for z in out.iter_mut() {
        *z = Complex64::new(z.im, -z.re);
    }
}

fn axpy(base: &[Complex64], s: f64, dir: &[Complex64], out: &mut [Complex64]) {
    for ((o, b), d) in out.iter_mut().zip(base).zip(dir) {
        *o = b + s * d;
    }
}

fn norm_of(y: &[Complex64]) -> f64 {
    y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn ensure_increasing(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::InvalidParameter("empty time grid".into()));
    }
    if !times.windows(2).all(|w| w[1] > w[0]) {
        return Err(Error::InvalidParameter(
            "times must be strictly increasing".into(),
        ));
    }
    Ok(())
}
