//! Qubit-subspace model: the coupler restricted to occupations {0,1}.
//!
//! When the coupling is weak against the Kerr constants, amplitudes with any
//! occupation >= 2 stay negligible and the dynamics closes on the eight
//! states |n,m,l>, n,m,l in {0,1}. Inside that subspace the Kerr diagonal
//! vanishes, photon exchange couples states related by moving one photon
//! between modes, and a drive couples states differing by one photon in its
//! mode. Two cases integrate in closed form.
//!
//! Undriven, starting from |001>:
//!
//! ```text
//! c_001 = (2 e^{i eps t} + e^{-2i eps t}) / 3
//! c_010 = c_100 = (-e^{i eps t} + e^{-2i eps t}) / 3
//! ```
//!
//! with a revival every third of a period and, in between, instants where
//! all three single-photon probabilities equal 1/3 (a W state up to local
//! phases). Symmetric real drive alpha = beta = gamma = eps from |000>:
//! the motion mixes only the frequencies (2 +- sqrt(7)) eps and sqrt(3) eps.
//!
//! Amplitudes are ordered by the binary index 4n + 2m + l, the d = 2 flat
//! index of the full Fock space.

use std::f64::consts::PI;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{FockIndex, StateVector};
use crate::hamiltonian::SystemParams;

/// Dimension of the {0,1}^3 subspace.
pub const QUBIT_DIM: usize = 8;

/// The eight complex amplitudes c_000 .. c_111, binary order.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct QubitAmplitudes(pub [Complex64; QUBIT_DIM]);

impl QubitAmplitudes {
    pub fn zeroed() -> Self {
        Self([Complex64::ZERO; QUBIT_DIM])
    }

    /// Unit amplitude on the basis state with binary index `k` (4n + 2m + l).
    pub fn basis(k: usize) -> Self {
        assert!(k < QUBIT_DIM, "qubit basis index {k} out of range");
        let mut c = Self::zeroed();
        c.0[k] = Complex64::ONE;
        c
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn probabilities(&self) -> [f64; QUBIT_DIM] {
        std::array::from_fn(|k| self.0[k].norm_sqr())
    }

    /// Largest per-amplitude deviation from `other`.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Place the amplitudes into the full Fock space at the given cutoff.
    pub fn embed(&self, cutoff: usize) -> Result<StateVector> {
        if cutoff < 2 {
            return Err(Error::InvalidParameter(
                "embedding requires cutoff >= 2".into(),
            ));
        }
        let mut psi = StateVector::zero(cutoff);
        for (k, &c) in self.0.iter().enumerate() {
            let idx = FockIndex::new((k >> 2) & 1, (k >> 1) & 1, k & 1);
            psi.amplitudes_mut()[idx.flat_unchecked(cutoff)] = c;
        }
        Ok(psi)
    }

    /// Read the {0,1}^3 amplitudes out of a full state (dropping the rest).
    pub fn project(psi: &StateVector) -> Result<Self> {
        if psi.cutoff() < 2 {
            return Err(Error::DimensionMismatch {
                expected: 8,
                got: psi.dim(),
            });
        }
        let d = psi.cutoff();
        let mut c = Self::zeroed();
        for k in 0..QUBIT_DIM {
            let idx = FockIndex::new((k >> 2) & 1, (k >> 1) & 1, k & 1);
            c.0[k] = psi.amplitudes()[idx.flat_unchecked(d)];
        }
        Ok(c)
    }
}

impl Index<usize> for QubitAmplitudes {
    type Output = Complex64;
    fn index(&self, k: usize) -> &Complex64 {
        &self.0[k]
    }
}

impl IndexMut<usize> for QubitAmplitudes {
    fn index_mut(&mut self, k: usize) -> &mut Complex64 {
        &mut self.0[k]
    }
}

/// External drive amplitudes for modes a, b, c.
#[derive(Copy, Clone, Debug, Default, PartialEq)]
pub struct Drives {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
}

impl Drives {
    pub const NONE: Drives = Drives {
        alpha: Complex64::ZERO,
        beta: Complex64::ZERO,
        gamma: Complex64::ZERO,
    };

    /// Equal drive on all three modes.
    pub fn uniform(amplitude: Complex64) -> Self {
        Self {
            alpha: amplitude,
            beta: amplitude,
            gamma: amplitude,
        }
    }

    pub fn from_params(p: &SystemParams) -> Self {
        Self {
            alpha: p.alpha,
            beta: p.beta,
            gamma: p.gamma,
        }
    }
}

// Exchange pairs (row, col): the row state holds the photon one mode earlier
// in (a, b, c) order than the column state; those elements carry eps, their
// mirrors conj(eps). This is the {0,1}^3 restriction of the full coupler.
const EXCHANGE_PAIRS: [(usize, usize); 6] = [
    (0b100, 0b010),
    (0b100, 0b001),
    (0b010, 0b001),
    (0b101, 0b011),
    (0b110, 0b011),
    (0b110, 0b101),
];

/// The 8x8 qubit-subspace Hamiltonian. The Kerr terms contribute nothing
/// here because n(n-1) = 0 for n in {0,1}.
pub fn qubit_hamiltonian(epsilon: Complex64, drives: Drives) -> [[Complex64; 8]; 8] {
    let mut h = [[Complex64::ZERO; 8]; 8];
    for (r, c) in EXCHANGE_PAIRS {
        h[r][c] += epsilon;
        h[c][r] += epsilon.conj();
    }
    for k in 0..QUBIT_DIM {
        for (bit, amp) in [
            (0b100, drives.alpha),
            (0b010, drives.beta),
            (0b001, drives.gamma),
        ] {
            if k & bit == 0 {
                h[k | bit][k] += amp;
                h[k][k | bit] += amp.conj();
            }
        }
    }
    h
}

/// Right-hand side of i dc/dt = H c on the qubit subspace, i.e. H c.
pub fn truncated_rhs(c: &QubitAmplitudes, epsilon: Complex64, drives: Drives) -> QubitAmplitudes {
    let h = qubit_hamiltonian(epsilon, drives);
    apply_qubit_hamiltonian(&h, c)
}

fn apply_qubit_hamiltonian(h: &[[Complex64; 8]; 8], c: &QubitAmplitudes) -> QubitAmplitudes {
    let mut out = QubitAmplitudes::zeroed();
    for (acc, row) in out.0.iter_mut().zip(h) {
        *acc = row.iter().zip(&c.0).map(|(hv, cv)| hv * cv).sum();
    }
    out
}

/// Default integrator step; intervals of the sampling grid wider than this
/// are subdivided.
pub const DEFAULT_MAX_STEP: f64 = 1e-3;

/// Integrate the qubit-subspace equations of motion over a sampling grid
/// with classical fixed-step RK4, returning the amplitudes at each grid
/// time. The grid must start at the initial time and increase strictly.
pub fn integrate_truncated(
    c0: &QubitAmplitudes,
    epsilon: Complex64,
    drives: Drives,
    times: &[f64],
) -> Result<Vec<QubitAmplitudes>> {
    integrate_truncated_with_step(c0, epsilon, drives, times, DEFAULT_MAX_STEP)
}

pub fn integrate_truncated_with_step(
    c0: &QubitAmplitudes,
    epsilon: Complex64,
    drives: Drives,
    times: &[f64],
    max_step: f64,
) -> Result<Vec<QubitAmplitudes>> {
    check_grid(times, max_step)?;
    let h = qubit_hamiltonian(epsilon, drives);
    // dc/dt = -i H c
    let rhs = |c: &QubitAmplitudes| {
        let mut hc = apply_qubit_hamiltonian(&h, c);
        for z in &mut hc.0 {
            *z *= -Complex64::i();
        }
        hc
    };

    let norm0 = c0.norm();
    let mut out = Vec::with_capacity(times.len());
    let mut c = *c0;
    out.push(c);
    for w in times.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let n_sub = ((t1 - t0) / max_step - 1e-12).ceil().max(1.0) as usize;
        let dt = (t1 - t0) / n_sub as f64;
        for _ in 0..n_sub {
            c = rk4_step(&rhs, &c, dt);
        }
        let drift = (c.norm() - norm0).abs();
        if drift > 1e-6 {
            return Err(Error::NormDrift { t: t1, drift });
        }
        out.push(c);
    }
    Ok(out)
}

fn rk4_step<F>(rhs: &F, c: &QubitAmplitudes, dt: f64) -> QubitAmplitudes
where
    F: Fn(&QubitAmplitudes) -> QubitAmplitudes,
{
    let add_scaled = |base: &QubitAmplitudes, s: f64, dir: &QubitAmplitudes| {
        let mut out = *base;
        for (o, d) in out.0.iter_mut().zip(&dir.0) {
            *o += s * d;
        }
        out
    };
    let k1 = rhs(c);
    let k2 = rhs(&add_scaled(c, dt / 2.0, &k1));
    let k3 = rhs(&add_scaled(c, dt / 2.0, &k2));
    let k4 = rhs(&add_scaled(c, dt, &k3));
    let mut out = *c;
    for i in 0..QUBIT_DIM {
        out.0[i] += dt / 6.0 * (k1.0[i] + 2.0 * (k2.0[i] + k3.0[i]) + k4.0[i]);
    }
    out
}

pub(crate) fn check_grid(times: &[f64], max_step: f64) -> Result<()> {
    if times.is_empty() {
        return Err(Error::InvalidParameter("empty time grid".into()));
    }
    if !times.windows(2).all(|w| w[1] > w[0]) {
        return Err(Error::InvalidParameter(
            "times must be strictly increasing".into(),
        ));
    }
    if max_step.is_nan() || max_step <= 0.0 {
        return Err(Error::InvalidParameter("max_step must be positive".into()));
    }
    Ok(())
}

/// Closed-form undriven amplitudes for the initial state |001>.
pub fn closed_form_undriven(epsilon: f64, t: f64) -> QubitAmplitudes {
    let plus = Complex64::cis(epsilon * t);
    let minus2 = Complex64::cis(-2.0 * epsilon * t);
    let mut c = QubitAmplitudes::zeroed();
    c[0b001] = (2.0 * plus + minus2) / 3.0;
    let moved = (minus2 - plus) / 3.0;
    c[0b010] = moved;
    c[0b100] = moved;
    c
}

/// The undriven wave function written as a target-state family; identical
/// to [`closed_form_undriven`], named for the state it produces at the
/// times of [`w_time`].
pub fn w_state_wavefunction(epsilon: f64, t: f64) -> QubitAmplitudes {
    closed_form_undriven(epsilon, t)
}

/// Closed-form amplitudes for the symmetric real drive
/// alpha = beta = gamma = epsilon, starting from |000>.
pub fn closed_form_driven(epsilon: f64, t: f64) -> QubitAmplitudes {
    let et = epsilon * t;
    let s7 = 7.0f64.sqrt();
    let s3 = 3.0f64.sqrt();
    let (sin7, cos7) = (s7 * et).sin_cos();
    let (sin3, cos3) = (s3 * et).sin_cos();
    let i = Complex64::i();
    let phase = Complex64::cis(-2.0 * et);

    let c000 = phase * (s7 / 7.0 * i * sin7 + 0.5 * cos7) + 0.5 * cos3;
    let c001 = -(s7 / 14.0) * (i * (2.0 * et).cos() * sin7 + (2.0 * et).sin() * sin7)
        - s3 / 6.0 * i * sin3;
    let c011 = c001 + s3 / 3.0 * i * sin3;
    let c111 = c000 - cos3;

    let mut c = QubitAmplitudes::zeroed();
    c[0b000] = c000;
    c[0b001] = c001;
    c[0b010] = c001;
    c[0b100] = c001;
    c[0b011] = c011;
    c[0b101] = c011;
    c[0b110] = c011;
    c[0b111] = c111;
    c
}

/// n-th time at which the undriven evolution reaches equal single-photon
/// magnitudes 1/sqrt(3):
///
///   t_n = (pi / 3 eps) * [ (n - (1 + (-1)^n)/2) + (-1)^n / 3 ]
pub fn w_time(n: u32, epsilon: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("w_time index n must be >= 1".into()));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "w_time requires epsilon > 0, got {epsilon}"
        )));
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let offset = if n.is_multiple_of(2) { 1.0 } else { 0.0 };
    Ok(PI / (3.0 * epsilon) * ((n as f64 - offset) + sign / 3.0))
}

/// Locate the first `count` times with |c_001|^2 = 1/3 numerically:
/// grid-seeded bisection on the closed-form probability, independent of
/// the [`w_time`] formula.
pub fn w_times_scan(epsilon: f64, count: usize) -> Result<Vec<f64>> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "root scan requires epsilon > 0, got {epsilon}"
        )));
    }
    let f = |t: f64| closed_form_undriven(epsilon, t)[0b001].norm_sqr() - 1.0 / 3.0;
    // roots are spaced at least 2 pi / (9 eps) apart
    let step = 2.0 * PI / (9.0 * epsilon) / 10.0;
    let mut roots = Vec::with_capacity(count);
    let mut t = 0.0;
    let mut ft = f(t);
    while roots.len() < count {
        let t_next = t + step;
        let ft_next = f(t_next);
        if ft == 0.0 {
            roots.push(t);
        } else if ft * ft_next < 0.0 {
            let (mut lo, mut hi) = (t, t_next);
            let mut flo = ft;
            for _ in 0..200 {
                if hi - lo <= 1e-12 {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                let fmid = f(mid);
                if flo * fmid <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fmid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        t = t_next;
        ft = ft_next;
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::HamiltonianMatrix;
    use proptest::prelude::*;

    const EPS: f64 = PI / 30.0;

    fn grid(t_max: f64, dt: f64) -> Vec<f64> {
        let n = (t_max / dt + 1e-9).floor() as usize;
        (0..=n).map(|k| k as f64 * dt).collect()
    }

    #[test]
    fn rhs_zero_when_uncoupled() {
        let c = QubitAmplitudes::basis(0b011);
        let out = truncated_rhs(&c, Complex64::ZERO, Drives::NONE);
        assert_eq!(out.norm(), 0.0);
    }

    #[test]
    fn rhs_spreads_single_photon() {
        let c = QubitAmplitudes::basis(0b001);
        let out = truncated_rhs(&c, Complex64::new(EPS, 0.0), Drives::NONE);
        for k in 0..QUBIT_DIM {
            let expected = if k == 0b010 || k == 0b100 { EPS } else { 0.0 };
            assert!(
                (out[k] - Complex64::new(expected, 0.0)).norm() < 1e-15,
                "component {k}: {}",
                out[k]
            );
        }
    }

    #[test]
    fn rhs_drive_excites_vacuum() {
        let c = QubitAmplitudes::basis(0b000);
        let eps = Complex64::new(EPS, 0.0);
        let out = truncated_rhs(&c, eps, Drives::uniform(eps));
        for k in 0..QUBIT_DIM {
            let expected = if k.count_ones() == 1 { EPS } else { 0.0 };
            assert!(
                (out[k] - Complex64::new(expected, 0.0)).norm() < 1e-15,
                "component {k}: {}",
                out[k]
            );
        }
    }

    #[test]
    fn qubit_hamiltonian_matches_full_restriction() {
        // Freezes the subspace derivation: the hand-written 8x8 rules must
        // agree entrywise with the d = 2 output of the full builder.
        let p = SystemParams {
            chi_a: 11.0,
            chi_b: -3.0,
            chi_c: 7.5,
            epsilon: Complex64::new(0.21, -0.13),
            alpha: Complex64::new(0.04, 0.09),
            beta: Complex64::new(-0.11, 0.02),
            gamma: Complex64::new(0.0, -0.06),
            cutoff: 2,
        };
        let full = HamiltonianMatrix::build(&p).unwrap().to_dense();
        let qubit = qubit_hamiltonian(p.epsilon, Drives::from_params(&p));
        for r in 0..8 {
            for c in 0..8 {
                let dev = (full[(r, c)] - qubit[r][c]).norm();
                assert!(dev < 1e-15, "element ({r},{c}) differs by {dev:.3e}");
            }
        }
    }

    #[test]
    fn integrate_constant_when_uncoupled() {
        let c0 = QubitAmplitudes::basis(0b101);
        let times = grid(5.0, 0.5);
        let states =
            integrate_truncated(&c0, Complex64::ZERO, Drives::NONE, &times).unwrap();
        for s in &states {
            assert!(s.max_deviation(&c0) < 1e-15);
        }
    }

    #[test]
    fn integrate_matches_closed_form_undriven() {
        let c0 = QubitAmplitudes::basis(0b001);
        let times = grid(25.0, 0.25);
        let eps = Complex64::new(EPS, 0.0);
        let states = integrate_truncated(&c0, eps, Drives::NONE, &times).unwrap();
        let max_dev = times
            .iter()
            .zip(&states)
            .map(|(&t, s)| s.max_deviation(&closed_form_undriven(EPS, t)))
            .fold(0.0, f64::max);
        assert!(max_dev < 1e-8, "max deviation {max_dev:.3e}");
    }

    #[test]
    fn integrate_matches_closed_form_driven() {
        let c0 = QubitAmplitudes::basis(0b000);
        let times = grid(25.0, 0.25);
        let eps = Complex64::new(EPS, 0.0);
        let states = integrate_truncated(&c0, eps, Drives::uniform(eps), &times).unwrap();
        let max_dev = times
            .iter()
            .zip(&states)
            .map(|(&t, s)| s.max_deviation(&closed_form_driven(EPS, t)))
            .fold(0.0, f64::max);
        assert!(max_dev < 1e-8, "max deviation {max_dev:.3e}");
    }

    #[test]
    fn undriven_corner_amplitudes_are_constant() {
        // c_000 and c_111 have no undriven coupling at all.
        let mut c0 = QubitAmplitudes::zeroed();
        c0[0b000] = Complex64::new(0.5, 0.0);
        c0[0b111] = Complex64::new(0.0, 0.5);
        c0[0b001] = Complex64::new(0.5, 0.5);
        let c0_norm = c0.norm();
        for z in &mut c0.0 {
            *z /= c0_norm;
        }
        let times = grid(10.0, 1.0);
        let states =
            integrate_truncated(&c0, Complex64::new(EPS, 0.0), Drives::NONE, &times).unwrap();
        for s in &states {
            assert!((s[0b000] - c0[0b000]).norm() < 1e-12);
            assert!((s[0b111] - c0[0b111]).norm() < 1e-12);
        }
    }

    #[test]
    fn closed_form_undriven_examples() {
        let c = closed_form_undriven(EPS, 0.0);
        assert!((c[0b001] - Complex64::ONE).norm() < 1e-15);
        assert!(c.norm_sqr() - 1.0 < 1e-15);

        // equal thirds at the first W time
        let t1 = 2.0 * PI / (9.0 * EPS);
        let c = closed_form_undriven(EPS, t1);
        for k in [0b001, 0b010, 0b100] {
            assert!(
                (c[k].norm_sqr() - 1.0 / 3.0).abs() < 1e-12,
                "P_{k:03b} = {}",
                c[k].norm_sqr()
            );
        }

        // full revival one third of a period later
        let c = closed_form_undriven(EPS, 2.0 * PI / (3.0 * EPS));
        assert!((c[0b001].norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_driven_examples() {
        let c = closed_form_driven(EPS, 0.0);
        assert!((c[0b000] - Complex64::ONE).norm() < 1e-15);
        for k in 1..QUBIT_DIM {
            assert!(c[k].norm() < 1e-15);
        }
        // the three single-photon and three two-photon amplitudes stay equal
        let c = closed_form_driven(EPS, 13.7);
        assert_eq!(c[0b001], c[0b010]);
        assert_eq!(c[0b001], c[0b100]);
        assert_eq!(c[0b011], c[0b101]);
        assert_eq!(c[0b011], c[0b110]);
    }

    #[test]
    fn w_time_values() {
        assert!((w_time(1, EPS).unwrap() - 20.0 / 3.0).abs() < 1e-12);
        assert!((w_time(2, EPS).unwrap() - 40.0 / 3.0).abs() < 1e-12);
        assert!((w_time(3, EPS).unwrap() - 80.0 / 3.0).abs() < 1e-12);
        assert!(w_time(0, EPS).is_err());
        assert!(w_time(1, 0.0).is_err());
        assert!(w_time(1, -0.3).is_err());
    }

    #[test]
    fn w_time_hits_equal_thirds() {
        for n in 1..=10 {
            let t = w_time(n, EPS).unwrap();
            let p = closed_form_undriven(EPS, t)[0b001].norm_sqr();
            assert!(
                (p - 1.0 / 3.0).abs() < 1e-12,
                "n = {n}: |c_001|^2 = {p}"
            );
        }
    }

    #[test]
    fn w_times_scan_agrees_with_formula() {
        let roots = w_times_scan(EPS, 6).unwrap();
        for (k, root) in roots.iter().enumerate() {
            let formula = w_time(k as u32 + 1, EPS).unwrap();
            assert!(
                (root - formula).abs() < 1e-9,
                "root {k}: scan {root} vs formula {formula}"
            );
        }
    }

    #[test]
    fn w_state_wavefunction_is_the_undriven_solution() {
        for &t in &[0.0, 1.3, 20.0 / 3.0, 55.0] {
            let a = w_state_wavefunction(EPS, t);
            let b = closed_form_undriven(EPS, t);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn embed_project_round_trip() {
        let mut c = QubitAmplitudes::zeroed();
        for k in 0..QUBIT_DIM {
            c[k] = Complex64::new(k as f64, -(k as f64) / 2.0);
        }
        let psi = c.embed(8).unwrap();
        assert_eq!(QubitAmplitudes::project(&psi).unwrap(), c);
    }

    #[test]
    fn norm_drift_detected() {
        // a grossly oversized step makes RK4 lose the norm
        let c0 = QubitAmplitudes::basis(0b001);
        let times = vec![0.0, 2000.0];
        let err = integrate_truncated_with_step(
            &c0,
            Complex64::new(1.0, 0.0),
            Drives::NONE,
            &times,
            2000.0,
        );
        assert!(matches!(err, Err(Error::NormDrift { .. })));
    }

    proptest! {
        #[test]
        fn closed_forms_stay_normalized(t in 0.0f64..200.0) {
            let undriven = closed_form_undriven(EPS, t).norm_sqr();
            prop_assert!((undriven - 1.0).abs() < 1e-12);
            let driven = closed_form_driven(EPS, t).norm_sqr();
            prop_assert!((driven - 1.0).abs() < 1e-12);
        }

        #[test]
        fn symmetric_initial_conditions_stay_symmetric(
            re1 in -1.0f64..1.0, im1 in -1.0f64..1.0,
            re2 in -1.0f64..1.0, im2 in -1.0f64..1.0,
            re3 in -1.0f64..1.0, im3 in -1.0f64..1.0,
        ) {
            let mut c0 = QubitAmplitudes::zeroed();
            c0[0b001] = Complex64::new(re1, im1);
            c0[0b010] = Complex64::new(re2, im2);
            c0[0b100] = Complex64::new(re2, im2);
            c0[0b011] = Complex64::new(re3, im3);
            c0[0b101] = Complex64::new(re3, im3);
            c0[0b110] = Complex64::new(re3, im3);
            let norm = c0.norm();
            prop_assume!(norm > 1e-3);
            for z in &mut c0.0 {
                *z /= norm;
            }
            let times = [0.0, 2.5, 5.0];
            let eps = Complex64::new(EPS, 0.0);
            let states = integrate_truncated(&c0, eps, Drives::NONE, &times).unwrap();
            for s in &states {
                prop_assert!((s[0b010] - s[0b100]).norm() < 1e-12);
                prop_assert!((s[0b011] - s[0b101]).norm() < 1e-12);
                prop_assert!((s[0b011] - s[0b110]).norm() < 1e-12);
            }
        }
    }
}
