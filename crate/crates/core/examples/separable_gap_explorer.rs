//! Which separable two-qubit states can be made entangled by rescaling rows
//! and columns? No decision procedure is known.
//!
//! This explores the family `p |x><x| ⊗ D_1 + (1 − p) D_2 ⊗ |y><y|` with
//! `D_1`, `D_2` diagonal, which generalizes the qq example. Its off-diagonal
//! blocks are diagonal, so no single-entry witness exists. Each sample is
//! either certified blocked, swapped by search, or left undecided.

use rand::Rng;

use qactivate::statecore::matrix::C64;
use qactivate::statecore::random::{derive_seed, random_pure_with, rng_from_seed};
use qactivate::statecore::{ComplexMatrix, LocalBasisSet, QuantumState};
use qactivate::swapping::{
    block_certificate, char_poly_pt_gap, filter, normalized_min_pt_eigenvalue, swap_search, theorem1_witness,
    FilterVector, SwapBudget,
};

fn sample(seed: u64) -> QuantumState {
    let mut rng = rng_from_seed(seed);
    let p: f64 = rng.gen_range(0.2..0.8);
    let x: Vec<C64> = random_pure_with(&mut rng, 2);
    let y: Vec<C64> = random_pure_with(&mut rng, 2);
    let d1: f64 = rng.gen();
    let d2: f64 = rng.gen();
    let m = &ComplexMatrix::projector(&x).kron(&ComplexMatrix::real_diagonal(&[d1, 1.0 - d1])).scale(p)
        + &ComplexMatrix::real_diagonal(&[d2, 1.0 - d2]).kron(&ComplexMatrix::projector(&y)).scale(1.0 - p);
    QuantumState::new(vec![2, 2], m.hermitian_part()).expect("convex mixture")
}

fn main() -> qactivate::Result<()> {
    let budget = SwapBudget {
        samples: 500,
        opt_restarts: 10,
        ..SwapBudget::default()
    };
    let comp = LocalBasisSet::computational(&[2, 2]);
    let (mut certified, mut swapped, mut undecided) = (0, 0, 0);
    for s in 0..30u64 {
        let rho = sample(derive_seed(77, s));
        assert!(theorem1_witness(&rho, &comp)?.is_none());
        // a phase-only filter breaks the reality of the block products: the
        // PT spectrum moves, but does it cross zero?
        let i = C64::new(0.0, 0.5);
        let r = C64::new(0.5, 0.0);
        let phased = filter(&rho, &comp, &FilterVector::new(vec![2, 2], vec![r, i, r, r])?)?;
        let gap = char_poly_pt_gap(&phased.unnormalized)?;
        let phased_pt = normalized_min_pt_eigenvalue(&phased.unnormalized, [2, 2])?;
        if block_certificate(&rho, &comp, 1e-10)?.is_some() {
            certified += 1;
            continue;
        }
        let v = swap_search(&rho, &comp, &budget)?;
        if v.npt_found {
            swapped += 1;
            println!("sample {s:2}: swapped, min PT {:+.2e}", v.best_min_pt_eigenvalue);
        } else {
            undecided += 1;
            println!(
                "sample {s:2}: undecided, best min PT {:+.1e}; phased filter gap {gap:+.2e}, min PT {phased_pt:+.4}",
                v.best_min_pt_eigenvalue
            );
        }
    }
    println!("certified blocked {certified}, swapped {swapped}, undecided {undecided}");
    Ok(())
}
