//! Filtering the ancillae onto a pure state to move entanglement back into
//! the systems.

use qactivate::statecore::random::{derive_seed, rng_from_seed};
use qactivate::statecore::LocalBasisSet;
use qactivate::swapping::{
    bell_vector, certify_swap_blocked, eq21_normalized, pseudo_isotropic, qq_counterexample, swap_search,
    theorem1_witness, verdict_for_filter, FilterVector, SwapBudget,
};

fn main() -> qactivate::Result<()> {
    let budget = SwapBudget::default();

    // weakly entangled pseudo-isotropic states swap in any basis
    for p in [0.01, 0.05, 0.2] {
        let rho = pseudo_isotropic(&bell_vector(), &[2, 2], p)?;
        let basis = LocalBasisSet::random(&mut rng_from_seed(derive_seed(9, 0)), &[2, 2]);
        let (w, _) = theorem1_witness(&rho, &basis)?.expect("off-diagonal block entry");
        let v = swap_search(&rho, &basis, &budget)?;
        println!(
            "pseudo-iso p={p}: witness <{}{}|ρ|{}{}> = {:.4}, {} -> min PT {:+.2e}",
            w.i,
            w.k,
            w.j,
            w.l,
            w.magnitude,
            v.method.as_str(),
            v.best_min_pt_eigenvalue
        );
    }

    // the qq example in the computational basis resists every filter
    let comp = LocalBasisSet::computational(&[2, 2]);
    let qq = qq_counterexample();
    let v = swap_search(&qq, &comp, &budget)?;
    println!(
        "qq example: npt_found={} after {} filter evaluations ({})",
        v.npt_found,
        v.filters_tried,
        v.method.as_str()
    );
    if let Some(c) = certify_swap_blocked(&qq, &comp, 1e-12)? {
        println!("  structural certificate: {}", c.method.as_str());
    }

    let eq21 = eq21_normalized();
    let v = verdict_for_filter(&eq21, &comp, &FilterVector::uniform(&[2, 2]))?;
    println!("eq21 with the uniform filter: npt_found={} min PT {:+.4}", v.npt_found, v.best_min_pt_eigenvalue);
    Ok(())
}
