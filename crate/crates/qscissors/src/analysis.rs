//! Observables and comparison metrics.
//!
//! Per-basis probabilities, leakage out of the {0,1}^3 qubit subspace,
//! fidelity against the canonical W and GHZ targets, and the phase-optimal
//! W fidelity
//!
//!   max over per-mode phases of |<W'|psi>|^2
//!     = (|c_001| + |c_010| + |c_100|)^2 / 3,
//!
//! which identifies W-class states whose three amplitudes agree in magnitude
//! but not in phase. The undriven coupler produces exactly such states.

use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{FockIndex, StateVector};
use crate::propagator::Trajectory;
use crate::truncated::QubitAmplitudes;

/// The two genuinely tripartite entangled target families.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TargetKind {
    W,
    Ghz,
}

/// A fixed target state over the {0,1}^3 subspace.
#[derive(Clone, Debug)]
pub struct TargetState {
    kind: TargetKind,
    amplitudes: [Complex64; 8],
}

impl TargetState {
    /// (|001> + |010> + |100>) / sqrt(3).
    pub fn w() -> Self {
        let third = Complex64::new(1.0 / 3.0f64.sqrt(), 0.0);
        let mut amplitudes = [Complex64::ZERO; 8];
        amplitudes[0b001] = third;
        amplitudes[0b010] = third;
        amplitudes[0b100] = third;
        Self {
            kind: TargetKind::W,
            amplitudes,
        }
    }

    /// (|000> + |111>) / sqrt(2).
    pub fn ghz() -> Self {
        let half = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);
        let mut amplitudes = [Complex64::ZERO; 8];
        amplitudes[0b000] = half;
        amplitudes[0b111] = half;
        Self {
            kind: TargetKind::Ghz,
            amplitudes,
        }
    }

    pub fn kind(&self) -> TargetKind {
        self.kind
    }

    pub fn amplitudes(&self) -> &[Complex64; 8] {
        &self.amplitudes
    }
}

/// |c_idx|^2 for each requested basis index.
pub fn probabilities(psi: &StateVector, indices: &[FockIndex]) -> Result<Vec<f64>> {
    indices
        .iter()
        .map(|&idx| Ok(psi.amplitude(idx)?.norm_sqr()))
        .collect()
}

/// Population on basis states with any occupation >= 2; the complement of
/// the {0,1}^3 population for a normalized state.
pub fn leakage(psi: &StateVector) -> f64 {
    let d = psi.cutoff();
    psi.amplitudes()
        .iter()
        .enumerate()
        .filter(|(k, _)| {
            FockIndex::from_flat(*k, d)
                .map(|idx| idx.max_occupation() >= 2)
                .unwrap_or(false)
        })
        .map(|(_, c)| c.norm_sqr())
        .sum()
}

/// |<target|psi>|^2.
pub fn fidelity(psi: &StateVector, target: &TargetState) -> Result<f64> {
    let projected = QubitAmplitudes::project(psi)?;
    let overlap: Complex64 = target
        .amplitudes
        .iter()
        .zip(projected.as_slice())
        .map(|(t, c)| t.conj() * c)
        .sum();
    Ok(overlap.norm_sqr())
}

/// W fidelity maximized over independent per-mode phase rotations.
pub fn w_fidelity_phase_optimal(psi: &StateVector) -> f64 {
    if psi.cutoff() < 2 {
        return 0.0;
    }
    let d = psi.cutoff();
    let amps = psi.amplitudes();
    let sum = amps[FockIndex::new(0, 0, 1).flat_unchecked(d)].norm()
        + amps[FockIndex::new(0, 1, 0).flat_unchecked(d)].norm()
        + amps[FockIndex::new(1, 0, 0).flat_unchecked(d)].norm();
    sum * sum / 3.0
}

/// A column of the trajectory record, nameable from the CSV header.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Observable {
    /// P_nml with n,m,l in {0,1}, stored as the binary index 4n + 2m + l.
    Probability(usize),
    Leakage,
    WFidelityPhaseOpt,
    Norm,
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "leakage" => return Ok(Self::Leakage),
            "w_fid_phase_opt" => return Ok(Self::WFidelityPhaseOpt),
            "norm" => return Ok(Self::Norm),
            _ => {}
        }
        if let Some(bits) = s.strip_prefix("P_") {
            if bits.len() == 3 && bits.chars().all(|c| c == '0' || c == '1') {
                let k = usize::from_str_radix(bits, 2).expect("binary digits");
                return Ok(Self::Probability(k));
            }
        }
        Err(Error::InvalidParameter(format!("unknown observable: {s}")))
    }
}

impl std::fmt::Display for Observable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Probability(k) => write!(f, "P_{k:03b}"),
            Self::Leakage => write!(f, "leakage"),
            Self::WFidelityPhaseOpt => write!(f, "w_fid_phase_opt"),
            Self::Norm => write!(f, "norm"),
        }
    }
}

/// Largest pointwise difference of one observable between two trajectories
/// sampled on the same grid.
pub fn trajectory_max_deviation(a: &Trajectory, b: &Trajectory, obs: Observable) -> Result<f64> {
    if !a.same_grid(b) {
        return Err(Error::GridMismatch);
    }
    Ok(a.records()
        .iter()
        .zip(b.records())
        .map(|(ra, rb)| (ra.value(obs) - rb.value(obs)).abs())
        .fold(0.0, f64::max))
}
