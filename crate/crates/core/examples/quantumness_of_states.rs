//! Relative entropy of quantumness for a few reference states.
//!
//! ```text
//! cargo run --release --example quantumness_of_states
//! ```

use qactivate::quantumness::{compute_q, OptimizerConfig};
use qactivate::statecore::random::random_state;
use qactivate::statecore::QuantumState;
use qactivate::swapping::{bell_vector, cq_counterexample, pseudo_isotropic, qq_counterexample};

fn main() -> qactivate::Result<()> {
    let cfg = OptimizerConfig::default();
    let states: Vec<(&str, QuantumState)> = vec![
        ("bell", QuantumState::pure(vec![2, 2], &bell_vector())?),
        ("cq example", cq_counterexample()),
        ("qq example", qq_counterexample()),
        ("pseudo-isotropic p=0.05", pseudo_isotropic(&bell_vector(), &[2, 2], 0.05)?),
        ("random 2x3", random_state(&[2, 3], 11)),
    ];
    println!("{:<26} {:>10} {:>10}", "state", "Q", "spread");
    for (name, rho) in &states {
        let r = compute_q(rho, &cfg)?;
        // how far the worst restart ended from the best one
        let spread = r.per_restart_values.iter().fold(0.0f64, |m, v| m.max(v - r.q_value));
        println!("{name:<26} {:>10.6} {spread:>10.2e}", r.q_value);
    }
    Ok(())
}
