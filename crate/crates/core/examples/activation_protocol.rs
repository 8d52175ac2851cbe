//! Runs the CNOT activation circuit and looks at the system:ancilla cut.
//!
//! A classical state measured in its own eigenbasis leaves the cut
//! separable; any other choice, or any non-classical input, entangles it.

use qactivate::activation::{activate_circuit, maximally_correlated_form};
use qactivate::cli::classical_2x2;
use qactivate::statecore::random::rng_from_seed;
use qactivate::statecore::{hermitian_eig, LocalBasisSet};
use qactivate::swapping::cq_counterexample;

fn main() -> qactivate::Result<()> {
    let classical = classical_2x2();
    let eig = hermitian_eig(classical.matrix())?;
    println!("classical-2x2 spectrum: {:?}", eig.values);

    let comp = LocalBasisSet::computational(&[2, 2]);
    let out = activate_circuit(&classical, &comp)?;
    println!("computational basis: cut min PT eigenvalue {:+.4}", out.cut_min_pt_eigenvalue()?);

    // the built-in is diag(.4,.3,.2,.1) rotated by seeded local unitaries
    let own = LocalBasisSet::new(vec![
        qactivate::statecore::random_unitary(2, 7),
        qactivate::statecore::random_unitary(2, 8),
    ])?;
    let out = activate_circuit(&classical, &own)?;
    println!("its own product basis: cut min PT eigenvalue {:+.2e}", out.cut_min_pt_eigenvalue()?);
    println!("measured probabilities: {:?}", out.correlated_diagonal());

    let cq = cq_counterexample();
    let mut rng = rng_from_seed(5);
    for k in 0..3 {
        let basis = LocalBasisSet::random(&mut rng, &[2, 2]);
        let circuit = activate_circuit(&cq, &basis)?;
        let direct = maximally_correlated_form(&cq, &basis)?;
        println!(
            "cq example, random basis {k}: cut min PT {:+.4}, circuit vs direct {:.1e}",
            circuit.cut_min_pt_eigenvalue()?,
            circuit.state.matrix().max_abs_diff(direct.state.matrix())
        );
    }
    Ok(())
}
