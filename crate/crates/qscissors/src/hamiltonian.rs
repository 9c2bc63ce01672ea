//! Hamiltonian of the three-mode Kerr coupler on the truncated Fock space.
//!
//! In units with hbar = 1:
//!
//!   H = (chi_a/2) a'a'aa + (chi_b/2) b'b'bb + (chi_c/2) c'c'cc   (Kerr, diagonal)
//!     + eps (a'b + a'c + b'c) + h.c.                             (exchange)
//!     + alpha a' + beta b' + gamma c' + h.c.                     (linear drives)
//!
//! where primes denote creation operators. The Kerr term contributes
//! (chi/2) n(n-1) per mode on the diagonal; the exchange term moves one
//! photon between a pair of modes; the drive term adds or removes one
//! photon in a single mode. Raising past the cutoff d-1 is dropped (hard
//! truncation), which keeps the matrix Hermitian.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{FockIndex, StateVector};

/// Physical constants of the coupler plus the numerical cutoff.
///
/// All rates are angular frequencies. `epsilon` is stored as complex so a
/// complex coupling still produces a Hermitian matrix, but every scenario
/// with a closed-form solution uses a real value.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SystemParams {
    pub chi_a: f64,
    pub chi_b: f64,
    pub chi_c: f64,
    pub epsilon: Complex64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub cutoff: usize,
}

impl Default for SystemParams {
    /// Kerr constants 30, coupling pi/30, no drives, 8-level modes.
    fn default() -> Self {
        Self::undriven(30.0, std::f64::consts::PI / 30.0, 8)
    }
}

impl SystemParams {
    /// Equal Kerr constants, real coupling, no external drives.
    pub fn undriven(chi: f64, epsilon: f64, cutoff: usize) -> Self {
        Self {
            chi_a: chi,
            chi_b: chi,
            chi_c: chi,
            epsilon: Complex64::new(epsilon, 0.0),
            alpha: Complex64::ZERO,
            beta: Complex64::ZERO,
            gamma: Complex64::ZERO,
            cutoff,
        }
    }

    pub fn with_drives(mut self, alpha: Complex64, beta: Complex64, gamma: Complex64) -> Self {
        self.alpha = alpha;
        self.beta = beta;
        self.gamma = gamma;
        self
    }

    /// Identical real drives on all three modes, the symmetrically driven case.
    pub fn with_uniform_drive(self, amplitude: f64) -> Self {
        let a = Complex64::new(amplitude, 0.0);
        self.with_drives(a, a, a)
    }

    pub fn is_driven(&self) -> bool {
        self.alpha != Complex64::ZERO
            || self.beta != Complex64::ZERO
            || self.gamma != Complex64::ZERO
    }

    pub fn dim(&self) -> usize {
        self.cutoff * self.cutoff * self.cutoff
    }

    pub fn validate(&self) -> Result<()> {
        if self.cutoff < 2 {
            return Err(Error::InvalidParameter(format!(
                "cutoff must be at least 2, got {}",
                self.cutoff
            )));
        }
        Ok(())
    }
}

/// Sparse Hermitian matrix over the d^3 Fock basis, compressed sparse rows
/// with columns sorted within each row.
#[derive(Clone, Debug)]
pub struct HamiltonianMatrix {
    cutoff: usize,
    dim: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<Complex64>,
}

impl HamiltonianMatrix {
    /// Assemble the coupler Hamiltonian for the given parameters.
    pub fn build(p: &SystemParams) -> Result<Self> {
        p.validate()?;
        let d = p.cutoff;
        let mut triplets: Vec<(usize, usize, Complex64)> = Vec::with_capacity(13 * p.dim());
        let eps = p.epsilon;

        for n in 0..d {
            for m in 0..d {
                for l in 0..d {
                    let col = FockIndex::new(n, m, l).flat_unchecked(d);
                    let mut push = |row: FockIndex, v: Complex64| {
                        if v != Complex64::ZERO {
                            triplets.push((row.flat_unchecked(d), col, v));
                        }
                    };

                    // Kerr diagonal: (chi/2) k(k-1) per mode.
                    let diag = 0.5
                        * (p.chi_a * (n * n.saturating_sub(1)) as f64
                            + p.chi_b * (m * m.saturating_sub(1)) as f64
                            + p.chi_c * (l * l.saturating_sub(1)) as f64);
                    push(FockIndex::new(n, m, l), Complex64::new(diag, 0.0));

                    // Exchange: eps moves a photon toward the earlier mode,
                    // conj(eps) moves it back.
                    let hop = |k_up: usize, k_down: usize| ((k_up + 1) * k_down) as f64;
                    if n + 1 < d && m >= 1 {
                        push(FockIndex::new(n + 1, m - 1, l), eps * hop(n, m).sqrt());
                    }
                    if n >= 1 && m + 1 < d {
                        push(FockIndex::new(n - 1, m + 1, l), eps.conj() * hop(m, n).sqrt());
                    }
                    if n + 1 < d && l >= 1 {
                        push(FockIndex::new(n + 1, m, l - 1), eps * hop(n, l).sqrt());
                    }
                    if n >= 1 && l + 1 < d {
                        push(FockIndex::new(n - 1, m, l + 1), eps.conj() * hop(l, n).sqrt());
                    }
                    if m + 1 < d && l >= 1 {
                        push(FockIndex::new(n, m + 1, l - 1), eps * hop(m, l).sqrt());
                    }
                    if m >= 1 && l + 1 < d {
                        push(FockIndex::new(n, m - 1, l + 1), eps.conj() * hop(l, m).sqrt());
                    }

                    // Drives: one photon added (amplitude) or removed (conjugate).
                    if n + 1 < d {
                        push(FockIndex::new(n + 1, m, l), p.alpha * ((n + 1) as f64).sqrt());
                    }
                    if n >= 1 {
                        push(FockIndex::new(n - 1, m, l), p.alpha.conj() * (n as f64).sqrt());
                    }
                    if m + 1 < d {
                        push(FockIndex::new(n, m + 1, l), p.beta * ((m + 1) as f64).sqrt());
                    }
                    if m >= 1 {
                        push(FockIndex::new(n, m - 1, l), p.beta.conj() * (m as f64).sqrt());
                    }
                    if l + 1 < d {
                        push(FockIndex::new(n, m, l + 1), p.gamma * ((l + 1) as f64).sqrt());
                    }
                    if l >= 1 {
                        push(FockIndex::new(n, m, l - 1), p.gamma.conj() * (l as f64).sqrt());
                    }
                }
            }
        }

        Ok(Self::from_triplets(d, triplets))
    }

    /// Diagonal matrix of the total photon number n + m + l.
    pub fn total_photon_number(cutoff: usize) -> Self {
        let dim = cutoff * cutoff * cutoff;
        let triplets = (0..dim)
            .filter_map(|k| {
                let idx = FockIndex::from_flat(k, cutoff).expect("k < dim");
                let total = idx.total_photons() as f64;
                (total != 0.0).then_some((k, k, Complex64::new(total, 0.0)))
            })
            .collect();
        Self::from_triplets(cutoff, triplets)
    }

    pub(crate) fn from_triplets(cutoff: usize, mut triplets: Vec<(usize, usize, Complex64)>) -> Self {
        let dim = cutoff * cutoff * cutoff;
        triplets.sort_by_key(|&(r, c, _)| (r, c));

        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut values = Vec::with_capacity(triplets.len());
        row_ptr.push(0);
        let mut row = 0;
        for (r, c, v) in triplets {
            while row < r {
                row_ptr.push(col_idx.len());
                row += 1;
            }
            if col_idx.len() > row_ptr[row] && *col_idx.last().unwrap() == c {
                *values.last_mut().unwrap() += v;
            } else {
                col_idx.push(c);
                values.push(v);
            }
        }
        while row < dim {
            row_ptr.push(col_idx.len());
            row += 1;
        }

        Self {
            cutoff,
            dim,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |k| (r, self.col_idx[k], self.values[k]))
        })
    }

    /// Matrix element <row|H|col>; zero where nothing is stored.
    pub fn get(&self, row: FockIndex, col: FockIndex) -> Result<Complex64> {
        let r = row.flat_index(self.cutoff)?;
        let c = col.flat_index(self.cutoff)?;
        let cols = &self.col_idx[self.row_ptr[r]..self.row_ptr[r + 1]];
        Ok(match cols.binary_search(&c) {
            Ok(k) => self.values[self.row_ptr[r] + k],
            Err(_) => Complex64::ZERO,
        })
    }

    /// H * psi (unnormalized).
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: psi.dim(),
            });
        }
        let mut out = StateVector::zero(self.cutoff);
        self.apply_slice(psi.amplitudes(), out.amplitudes_mut());
        Ok(out)
    }

    pub(crate) fn apply_slice(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (r, yr) in y.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.values[k] * x[self.col_idx[k]];
            }
            *yr = acc;
        }
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// max |H[r,c] - conj(H[c,r])| over all stored entries.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.entries()
            .map(|(r, c, v)| {
                let mirrored = self
                    .get(
                        FockIndex::from_flat(c, self.cutoff).expect("stored index"),
                        FockIndex::from_flat(r, self.cutoff).expect("stored index"),
                    )
                    .expect("in range");
                (v - mirrored.conj()).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<Complex64> {
        let mut dense = nalgebra::DMatrix::zeros(self.dim, self.dim);
        for (r, c, v) in self.entries() {
            dense[(r, c)] = v;
        }
        dense
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    /// Independent dense construction from explicit mode operators
    /// (Kronecker products), used as the oracle for the sparse builder.
    mod dense_oracle {
        use nalgebra::DMatrix;
        use num_complex::Complex64;

        use super::SystemParams;

        fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
            let (ar, ac) = a.shape();
            let (br, bc) = b.shape();
            let mut out = DMatrix::zeros(ar * br, ac * bc);
            for i in 0..ar {
                for j in 0..ac {
                    for k in 0..br {
                        for l in 0..bc {
                            out[(i * br + k, j * bc + l)] = a[(i, j)] * b[(k, l)];
                        }
                    }
                }
            }
            out
        }

        fn annihilation(d: usize) -> DMatrix<Complex64> {
            let mut a = DMatrix::zeros(d, d);
            for k in 1..d {
                a[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
            }
            a
        }

        pub fn build(p: &SystemParams) -> DMatrix<Complex64> {
            let d = p.cutoff;
            let id = DMatrix::identity(d, d);
            let a1 = annihilation(d);
            let a = kron(&kron(&a1, &id), &id);
            let b = kron(&kron(&id, &a1), &id);
            let c = kron(&kron(&id, &id), &a1);

            let mut h = DMatrix::zeros(d * d * d, d * d * d);
            for (op, chi) in [(&a, p.chi_a), (&b, p.chi_b), (&c, p.chi_c)] {
                h += op.adjoint() * op.adjoint() * op * op * Complex64::new(chi / 2.0, 0.0);
            }
            for (hi, lo) in [(&a, &b), (&a, &c), (&b, &c)] {
                let exchange = hi.adjoint() * lo.clone();
                h += &exchange * p.epsilon;
                h += exchange.adjoint() * p.epsilon.conj();
            }
            for (op, amp) in [(&a, p.alpha), (&b, p.beta), (&c, p.gamma)] {
                h += op.adjoint() * amp;
                h += op.clone() * amp.conj();
            }
            h
        }
    }

    fn reference_params() -> SystemParams {
        SystemParams::undriven(30.0, PI / 30.0, 8)
    }

    #[test]
    fn zero_params_zero_matrix() {
        let p = SystemParams::undriven(0.0, 0.0, 4);
        let h = HamiltonianMatrix::build(&p).unwrap();
        assert_eq!(h.nnz(), 0);
        assert_eq!(h.dim(), 64);
    }

    #[test]
    fn cutoff_below_two_rejected() {
        let p = SystemParams::undriven(30.0, 0.1, 1);
        assert!(HamiltonianMatrix::build(&p).is_err());
    }

    #[test]
    fn matrix_elements_match_reference_values() {
        let h = HamiltonianMatrix::build(&reference_params()).unwrap();
        let exchange = h
            .get(FockIndex::new(1, 0, 0), FockIndex::new(0, 1, 0))
            .unwrap();
        assert!((exchange - Complex64::new(PI / 30.0, 0.0)).norm() < 1e-15);
        let kerr = h
            .get(FockIndex::new(2, 0, 0), FockIndex::new(2, 0, 0))
            .unwrap();
        assert!((kerr - Complex64::new(30.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn drive_element_adds_one_photon() {
        let p = reference_params().with_uniform_drive(PI / 30.0);
        let h = HamiltonianMatrix::build(&p).unwrap();
        let el = h
            .get(FockIndex::new(0, 0, 1), FockIndex::new(0, 0, 0))
            .unwrap();
        assert!((el - Complex64::new(PI / 30.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn sparse_matches_dense_oracle() {
        let p = SystemParams {
            chi_a: 30.0,
            chi_b: 17.0,
            chi_c: -4.5,
            epsilon: Complex64::new(0.11, -0.07),
            alpha: Complex64::new(0.03, 0.02),
            beta: Complex64::new(-0.05, 0.0),
            gamma: Complex64::new(0.0, 0.04),
            cutoff: 4,
        };
        let sparse = HamiltonianMatrix::build(&p).unwrap().to_dense();
        let dense = dense_oracle::build(&p);
        let max_dev = (sparse - dense).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(max_dev < 1e-13, "sparse vs dense oracle: {max_dev:.3e}");
    }

    #[test]
    fn apply_zero_matrix_gives_zero() {
        let p = SystemParams::undriven(0.0, 0.0, 3);
        let h = HamiltonianMatrix::build(&p).unwrap();
        let psi = StateVector::basis_state(FockIndex::new(1, 1, 1), 3).unwrap();
        let out = h.apply(&psi).unwrap();
        assert!(out.norm() == 0.0);
    }

    #[test]
    fn vacuum_is_annihilated_when_undriven() {
        let h = HamiltonianMatrix::build(&reference_params()).unwrap();
        let vacuum = StateVector::basis_state(FockIndex::new(0, 0, 0), 8).unwrap();
        let out = h.apply(&vacuum).unwrap();
        assert!(out.norm() < 1e-15, "H|000> norm = {:.3e}", out.norm());
    }

    #[test]
    fn apply_to_single_photon_state() {
        // H|001> = eps (|010> + |100>) for the undriven coupler.
        let p = reference_params();
        let h = HamiltonianMatrix::build(&p).unwrap();
        let psi = StateVector::basis_state(FockIndex::new(0, 0, 1), 8).unwrap();
        let out = h.apply(&psi).unwrap();

        let mut expected = StateVector::zero(8);
        let eps = Complex64::new(PI / 30.0, 0.0);
        expected.amplitudes_mut()[FockIndex::new(0, 1, 0).flat_unchecked(8)] = eps;
        expected.amplitudes_mut()[FockIndex::new(1, 0, 0).flat_unchecked(8)] = eps;
        let dev: f64 = out
            .amplitudes()
            .iter()
            .zip(expected.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-15, "deviation from hand-evaluated action: {dev:.3e}");

        // same action through the independent dense route
        let dense = dense_oracle::build(&p);
        let x = nalgebra::DVector::from_column_slice(psi.amplitudes());
        let y = dense * x;
        let dev: f64 = out
            .amplitudes()
            .iter()
            .zip(y.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-15, "deviation from dense oracle: {dev:.3e}");
    }

    #[test]
    fn apply_dimension_mismatch() {
        let h = HamiltonianMatrix::build(&SystemParams::undriven(1.0, 0.1, 3)).unwrap();
        let psi = StateVector::zero(4);
        assert!(h.apply(&psi).is_err());
    }

    #[test]
    fn total_photon_number_entries() {
        let n = HamiltonianMatrix::total_photon_number(8);
        let diag =
            |i: FockIndex| n.get(i, i).unwrap().re;
        assert_eq!(diag(FockIndex::new(0, 0, 0)), 0.0);
        assert_eq!(diag(FockIndex::new(1, 1, 1)), 3.0);
        assert_eq!(diag(FockIndex::new(7, 7, 7)), 21.0);
    }

    #[test]
    fn undriven_commutes_with_photon_number() {
        // N is diagonal, so [H, N][r,c] = H[r,c] (N_c - N_r); exchange terms
        // conserve the total photon number and the commutator vanishes.
        let h = HamiltonianMatrix::build(&reference_params()).unwrap();
        let max = h
            .entries()
            .map(|(r, c, v)| {
                let nr = FockIndex::from_flat(r, 8).unwrap().total_photons() as f64;
                let nc = FockIndex::from_flat(c, 8).unwrap().total_photons() as f64;
                (v * (nc - nr)).norm()
            })
            .fold(0.0, f64::max);
        assert!(max <= 1e-12, "max |[H,N]| = {max:.3e}");
    }

    #[test]
    fn row_occupancy_bounded() {
        let p = reference_params().with_uniform_drive(0.1);
        let h = HamiltonianMatrix::build(&p).unwrap();
        for r in 0..h.dim() {
            let nnz = h.row_ptr[r + 1] - h.row_ptr[r];
            assert!(nnz <= 13, "row {r} has {nnz} entries");
        }
    }

    #[test]
    fn qubit_subspace_restriction_is_pure_exchange() {
        // Restricted to occupations {0,1}, the Kerr diagonal vanishes and the
        // only nonzero elements sit between single-photon-exchange pairs.
        let h = HamiltonianMatrix::build(&reference_params()).unwrap();
        let eps = Complex64::new(PI / 30.0, 0.0);
        for r in 0..8usize {
            for c in 0..8usize {
                let row = FockIndex::new((r >> 2) & 1, (r >> 1) & 1, r & 1);
                let col = FockIndex::new((c >> 2) & 1, (c >> 1) & 1, c & 1);
                let v = h.get(row, col).unwrap();
                let same_total = row.total_photons() == col.total_photons();
                let moved = (row.n != col.n) as usize
                    + (row.m != col.m) as usize
                    + (row.l != col.l) as usize;
                let exchange_pair = same_total && moved == 2;
                if exchange_pair {
                    assert!((v.norm() - eps.norm()).abs() < 1e-15, "{row} {col}: {v}");
                } else {
                    assert!(v.norm() < 1e-15, "{row} {col} should vanish, got {v}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn builder_output_is_hermitian(
            chi_a in -50.0f64..50.0,
            chi_b in -50.0f64..50.0,
            chi_c in -50.0f64..50.0,
            eps_re in -1.0f64..1.0,
            eps_im in -1.0f64..1.0,
            alpha_re in -1.0f64..1.0,
            alpha_im in -1.0f64..1.0,
            beta_re in -1.0f64..1.0,
            gamma_im in -1.0f64..1.0,
            cutoff in 2usize..5,
        ) {
            let p = SystemParams {
                chi_a,
                chi_b,
                chi_c,
                epsilon: Complex64::new(eps_re, eps_im),
                alpha: Complex64::new(alpha_re, alpha_im),
                beta: Complex64::new(beta_re, 0.0),
                gamma: Complex64::new(0.0, gamma_im),
                cutoff,
            };
            let h = HamiltonianMatrix::build(&p).unwrap();
            prop_assert!(h.hermiticity_deviation() <= 1e-14);
        }
    }
}
