//! Scenario execution and CSV emission.
//!
//! All numeric CSV fields are printed with 15 significant digits so repeated
//! runs of the same configuration produce byte-identical files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::config::{RunConfig, Scenario};
use crate::error::{Error, Result};
use crate::fock::StateVector;
use crate::hamiltonian::HamiltonianMatrix;
use crate::propagator::{SpectralPropagator, Trajectory, TrajectoryRecord};
use crate::truncated::{self, Drives, QubitAmplitudes};

pub const TRAJECTORY_HEADER: &str =
    "t,P_000,P_001,P_010,P_011,P_100,P_101,P_110,P_111,leakage,w_fid_phase_opt,norm";

/// Execute one fully resolved configuration: write its CSV output and print
/// a short summary (plus the times themselves for `w-times`).
pub fn run_scenario(cfg: &RunConfig) -> Result<()> {
    match cfg.scenario {
        Scenario::Undriven | Scenario::Driven => run_trajectory(cfg),
        Scenario::Compare => run_compare(cfg),
        Scenario::Sweep => run_sweep(cfg),
        Scenario::WTimes => run_w_times(cfg),
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.14e}")
}

fn output_path(cfg: &RunConfig) -> PathBuf {
    cfg.out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", cfg.scenario)))
}

/// |sum of qubit probabilities + leakage - 1| must stay within 1e-8 on every
/// emitted row.
fn check_row(r: &TrajectoryRecord) -> Result<()> {
    let p_sum: f64 = r.qubit_probs.iter().sum();
    let defect = (p_sum + r.leakage - 1.0).abs();
    if defect > 1e-8 {
        return Err(Error::Numerical(format!(
            "probability balance violated at t = {}: |sum P + leakage - 1| = {defect:.3e}",
            r.time
        )));
    }
    Ok(())
}

fn run_trajectory(cfg: &RunConfig) -> Result<()> {
    println!("Hilbert space dimension: {}", cfg.hilbert_dim());
    let h = HamiltonianMatrix::build(&cfg.params())?;
    let prop = SpectralPropagator::new(&h)?;
    let psi0 = StateVector::basis_state(cfg.initial, cfg.cutoff)?;
    let traj = prop.trajectory(&psi0, &cfg.time_grid())?;

    let path = output_path(cfg);
    write_trajectory_csv(&path, &traj)?;
    println!("wrote {} rows to {}", traj.len(), path.display());
    Ok(())
}

pub fn write_trajectory_csv(path: &Path, traj: &Trajectory) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{TRAJECTORY_HEADER}")?;
    for r in traj.records() {
        check_row(r)?;
        write!(w, "{}", fmt(r.time))?;
        for p in r.qubit_probs {
            write!(w, ",{}", fmt(p))?;
        }
        writeln!(
            w,
            ",{},{},{}",
            fmt(r.leakage),
            fmt(r.w_fidelity_phase_opt),
            fmt(r.norm)
        )?;
    }
    w.flush()?;
    Ok(())
}

fn run_compare(cfg: &RunConfig) -> Result<()> {
    println!("Hilbert space dimension: {}", cfg.hilbert_dim());
    let params = cfg.params();
    let times = cfg.time_grid();

    let h = HamiltonianMatrix::build(&params)?;
    let prop = SpectralPropagator::new(&h)?;
    let psi0 = StateVector::basis_state(cfg.initial, cfg.cutoff)?;
    let exact = prop.trajectory(&psi0, &times)?;

    // config guarantees the initial state lies inside {0,1}^3
    let qubit_index = 4 * cfg.initial.n + 2 * cfg.initial.m + cfg.initial.l;
    let c0 = QubitAmplitudes::basis(qubit_index);
    let truncated_states = truncated::integrate_truncated(
        &c0,
        params.epsilon,
        Drives::from_params(&params),
        &times,
    )?;

    let path = output_path(cfg);
    let max_diff = write_compare_csv(&path, &truncated_states, &exact)?;
    println!("wrote {} rows to {}", times.len(), path.display());
    println!("max |P_trunc - P_exact| over all states and times: {}", fmt(max_diff));
    Ok(())
}

pub fn write_compare_csv(
    path: &Path,
    truncated_states: &[QubitAmplitudes],
    exact: &Trajectory,
) -> Result<f64> {
    if truncated_states.len() != exact.len() {
        return Err(Error::GridMismatch);
    }
    let mut w = BufWriter::new(File::create(path)?);
    write!(w, "t")?;
    for suffix in ["trunc", "exact"] {
        for k in 0..8 {
            write!(w, ",P_{k:03b}_{suffix}")?;
        }
    }
    writeln!(w, ",max_abs_diff,leakage_exact")?;

    let mut overall = 0.0f64;
    for (c, r) in truncated_states.iter().zip(exact.records()) {
        check_row(r)?;
        let trunc_probs = c.probabilities();
        let row_max = trunc_probs
            .iter()
            .zip(&r.qubit_probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        overall = overall.max(row_max);
        write!(w, "{}", fmt(r.time))?;
        for p in trunc_probs {
            write!(w, ",{}", fmt(p))?;
        }
        for p in r.qubit_probs {
            write!(w, ",{}", fmt(p))?;
        }
        writeln!(w, ",{},{}", fmt(row_max), fmt(r.leakage))?;
    }
    w.flush()?;
    Ok(overall)
}

fn run_sweep(cfg: &RunConfig) -> Result<()> {
    let times = cfg.time_grid();
    let psi0 = StateVector::basis_state(cfg.initial, cfg.cutoff)?;

    let path = output_path(cfg);
    let mut w = BufWriter::new(File::create(&path)?);
    writeln!(w, "chi,mean_leakage,max_leakage")?;
    for &chi in &cfg.sweep_chi {
        let mut params = cfg.params();
        params.chi_a = chi;
        params.chi_b = chi;
        params.chi_c = chi;
        let h = HamiltonianMatrix::build(&params)?;
        let prop = SpectralPropagator::new(&h)?;
        let traj = prop.trajectory(&psi0, &times)?;
        let mut mean = 0.0;
        let mut max = 0.0f64;
        for r in traj.records() {
            check_row(r)?;
            mean += r.leakage;
            max = max.max(r.leakage);
        }
        mean /= traj.len() as f64;
        writeln!(w, "{},{},{}", fmt(chi), fmt(mean), fmt(max))?;
    }
    w.flush()?;
    println!("wrote {} rows to {}", cfg.sweep_chi.len(), path.display());
    Ok(())
}

fn run_w_times(cfg: &RunConfig) -> Result<()> {
    // config guarantees a real positive coupling here
    let epsilon = cfg.epsilon.re;
    let mut rows = Vec::with_capacity(cfg.n_times);
    for n in 1..=cfg.n_times {
        let t = truncated::w_time(n as u32, epsilon)?;
        println!("t_{n} = {t}");
        rows.push((n, t));
    }
    if let Some(out) = &cfg.out {
        let mut w = BufWriter::new(File::create(out)?);
        writeln!(w, "n,t_n")?;
        for (n, t) in rows {
            writeln!(w, "{n},{}", fmt(t))?;
        }
        w.flush()?;
        println!("wrote {} rows to {}", cfg.n_times, out.display());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    fn read(path: &Path) -> String {
        std::fs::read_to_string(path).unwrap()
    }

    #[test]
    fn zero_t_max_gives_single_row() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("run.csv");
        let cfg = parse_config(&format!(
            "t_max = 0\ncutoff = 2\nout = {}",
            out.display()
        ))
        .unwrap();
        run_scenario(&cfg).unwrap();
        let text = read(&out);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2, "header plus one row:\n{text}");
        assert_eq!(lines[0], TRAJECTORY_HEADER);
        let fields: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(fields.len(), 12);
        // initial state |001>: P_001 = 1
        let p001: f64 = fields[2].parse().unwrap();
        assert_eq!(p001, 1.0);
    }

    #[test]
    fn trajectory_rows_balance_probabilities() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("run.csv");
        let cfg = parse_config(&format!(
            "cutoff = 3\nt_max = 5\ndt = 0.5\nout = {}",
            out.display()
        ))
        .unwrap();
        run_scenario(&cfg).unwrap();
        for line in read(&out).lines().skip(1) {
            let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
            let p_sum: f64 = f[1..9].iter().sum();
            let leakage = f[9];
            assert!(
                (p_sum + leakage - 1.0).abs() <= 1e-8,
                "row balance violated: {line}"
            );
        }
    }

    #[test]
    fn identical_configs_give_identical_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let out_a = dir.path().join("a.csv");
        let out_b = dir.path().join("b.csv");
        for out in [&out_a, &out_b] {
            let cfg = parse_config(&format!(
                "scenario = compare\ncutoff = 4\nt_max = 3\ndt = 0.25\nout = {}",
                out.display()
            ))
            .unwrap();
            run_scenario(&cfg).unwrap();
        }
        assert_eq!(
            std::fs::read(&out_a).unwrap(),
            std::fs::read(&out_b).unwrap(),
            "compare scenario must be byte-deterministic"
        );
    }

    #[test]
    fn unwritable_output_is_io_error() {
        let cfg = parse_config("t_max = 0\ncutoff = 2\nout = /nonexistent-dir/x.csv").unwrap();
        let err = run_scenario(&cfg).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
