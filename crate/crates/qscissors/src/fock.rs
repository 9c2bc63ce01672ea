//! Three-mode Fock-basis bookkeeping.
//!
//! Joint photon-number states |n,m,l> of three bosonic modes (a, b, c) are
//! stored in a flat vector with mode a slowest:
//!
//!   flat index = n*d^2 + m*d + l
//!
//! where d is the per-mode cutoff (occupations run over 0..d-1, so the full
//! space has d^3 states; d = 8 gives the 512-state basis used by default).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Occupation-number triple (n, m, l) for modes a, b, c.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct FockIndex {
    pub n: usize,
    pub m: usize,
    pub l: usize,
}

impl FockIndex {
    pub const fn new(n: usize, m: usize, l: usize) -> Self {
        Self { n, m, l }
    }

    /// All components below the cutoff?
    pub fn in_range(self, cutoff: usize) -> bool {
        self.n < cutoff && self.m < cutoff && self.l < cutoff
    }

    /// Row-major flat index n*d^2 + m*d + l.
    pub fn flat_index(self, cutoff: usize) -> Result<usize> {
        if !self.in_range(cutoff) {
            return Err(Error::IndexOutOfRange {
                n: self.n,
                m: self.m,
                l: self.l,
                cutoff,
            });
        }
        Ok(self.flat_unchecked(cutoff))
    }

    /// Inverse of [`FockIndex::flat_index`].
    pub fn from_flat(k: usize, cutoff: usize) -> Result<Self> {
        let dim = cutoff * cutoff * cutoff;
        if k >= dim {
            return Err(Error::FlatIndexOutOfRange { index: k, dim });
        }
        Ok(Self {
            n: k / (cutoff * cutoff),
            m: (k / cutoff) % cutoff,
            l: k % cutoff,
        })
    }

    pub fn total_photons(self) -> usize {
        self.n + self.m + self.l
    }

    /// Largest single-mode occupation.
    pub fn max_occupation(self) -> usize {
        self.n.max(self.m).max(self.l)
    }

    pub(crate) fn flat_unchecked(self, cutoff: usize) -> usize {
        (self.n * cutoff + self.m) * cutoff + self.l
    }
}

impl std::fmt::Display for FockIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "|{},{},{}>", self.n, self.m, self.l)
    }
}

/// Complex amplitude vector over the truncated three-mode Fock basis.
#[derive(Clone, Debug)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    cutoff: usize,
}

impl StateVector {
    /// All-zero vector (not a physical state until filled and normalized).
    pub fn zero(cutoff: usize) -> Self {
        Self {
            amplitudes: vec![Complex64::ZERO; cutoff * cutoff * cutoff],
            cutoff,
        }
    }

    /// Unit vector on the basis state |n,m,l>.
    pub fn basis_state(idx: FockIndex, cutoff: usize) -> Result<Self> {
        let k = idx.flat_index(cutoff)?;
        let mut state = Self::zero(cutoff);
        state.amplitudes[k] = Complex64::ONE;
        Ok(state)
    }

    /// Wrap an amplitude vector; its length must be cutoff^3.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>, cutoff: usize) -> Result<Self> {
        let dim = cutoff * cutoff * cutoff;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: amplitudes.len(),
            });
        }
        Ok(Self { amplitudes, cutoff })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn amplitude(&self, idx: FockIndex) -> Result<Complex64> {
        Ok(self.amplitudes[idx.flat_index(self.cutoff)?])
    }

    /// <self|other> = sum_k conj(self_k) * other_k.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn normalize(&mut self) {
        let norm = self.norm();
        if norm > 0.0 {
            for a in &mut self.amplitudes {
                *a /= norm;
            }
        }
    }
}
