//! Classical-quantum states: the `(1 − 1/d_A) log₂ d_B` ceiling, the
//! eigenbasis strategy that sits below it, and the two-qubit maximum.

use qactivate::quantumness::{
    classify_max_cq, compute_q, cq_bound, cq_strategy_value, maassen_uffink_bound, qubit_basis_from, CQState,
    OptimizerConfig,
};
use qactivate::statecore::matrix::C64;
use qactivate::statecore::random::rng_from_seed;
use qactivate::statecore::random_unitary;

fn main() -> qactivate::Result<()> {
    let cfg = OptimizerConfig {
        restarts: 20,
        ..OptimizerConfig::default()
    };
    let mut rng = rng_from_seed(1);
    println!("dA dB   bound      Q   strategy");
    for (d_a, d_b) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let cq = CQState::random(&mut rng, d_a, d_b);
        let q = compute_q(&cq.assemble(), &cfg)?.q_value;
        println!(
            "{d_a}  {d_b}  {:7.4} {q:7.4} {:9.4}",
            cq_bound(d_a, d_b),
            cq_strategy_value(&cq)?
        );
    }

    let zero = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    println!("\noverlap  maximal      Q   entropic bound");
    for theta in [0.25, 0.5, 0.75, 1.0] {
        // block vectors |0> and cos(θπ/4)|0> + sin(θπ/4)|1>
        let a = theta * std::f64::consts::FRAC_PI_4;
        let psi = [C64::new(a.cos(), 0.0), C64::new(a.sin(), 0.0)];
        let cq = CQState::two_qubit_pure(0.5, &zero, &psi, random_unitary(2, 3))?;
        let diag = classify_max_cq(&cq, 1e-9)?;
        let q = compute_q(&cq.assemble(), &cfg)?.q_value;
        let mu = maassen_uffink_bound(&qubit_basis_from(&zero)?, &qubit_basis_from(&psi)?)?;
        println!("{:7.4}  {:7} {q:7.4} {mu:9.4}", diag.overlap_sq, diag.is_maximal);
    }
    Ok(())
}
