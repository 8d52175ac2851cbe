//! Seeded sampling of states, unitaries and pure vectors.
//!
//! Density matrices are normalized `G G†` for a Ginibre matrix `G`; unitaries
//! are the Gram–Schmidt orthonormalized columns of `G` (positive diagonal of
//! the implied `R` factor). Every sampler has a `*_with` form taking an RNG and
//! a seeded form that builds a fresh `ChaCha8Rng`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::statecore::matrix::{ComplexMatrix, C64};
use crate::statecore::state::QuantumState;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer, used to derive independent child seeds.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Child seed `index` of `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

pub fn random_pure_with<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<C64> {
    let v: Vec<C64> = (0..d).map(|_| complex_gaussian(rng)).collect();
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / n).collect()
}

pub fn random_pure(d: usize, seed: u64) -> Vec<C64> {
    random_pure_with(&mut rng_from_seed(seed), d)
}

pub fn random_unitary_with<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    let g = ginibre(rng, d, d);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(d);
    for c in 0..d {
        let mut v = g.column(c);
        // modified Gram–Schmidt, twice for numerical orthogonality
        for _ in 0..2 {
            for q in &cols {
                let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / n).collect());
    }
    ComplexMatrix::from_fn(d, d, |r, c| cols[c][r])
}

pub fn random_unitary(d: usize, seed: u64) -> ComplexMatrix {
    random_unitary_with(&mut rng_from_seed(seed), d)
}

/// Full-rank random density matrix on the given subsystems.
pub fn random_state_with<R: Rng + ?Sized>(rng: &mut R, dims: &[usize]) -> QuantumState {
    let d: usize = dims.iter().product();
    let g = ginibre(rng, d, d);
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    QuantumState::from_parts(dims.to_vec(), w.scale(1.0 / tr).hermitian_part())
}

pub fn random_state(dims: &[usize], seed: u64) -> QuantumState {
    random_state_with(&mut rng_from_seed(seed), dims)
}

/// Random Hermitian matrix with Gaussian entries (not a state).
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    ginibre(rng, d, d).hermitian_part()
}

/// Random probability vector, uniform on the simplex.
pub fn random_probabilities<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..n)
        .map(|_| -(1.0 - rng.gen::<f64>()).ln())
        .collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_invariants() {
        for seed in 0..10 {
            let s = random_state(&[2, 2], seed);
            assert!(QuantumState::new(s.dims().to_vec(), s.matrix().clone()).is_ok());
        }
    }

    #[test]
    fn unitary_invariant() {
        for seed in 0..10 {
            assert!(random_unitary(3, seed).unitarity_error() <= 1e-10);
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(random_state(&[2, 3], 99).matrix(), random_state(&[2, 3], 99).matrix());
        assert_eq!(random_unitary(4, 5), random_unitary(4, 5));
        assert_eq!(random_pure(5, 1), random_pure(5, 1));
        assert_ne!(random_pure(5, 1), random_pure(5, 2));
    }

    #[test]
    fn child_seeds_differ() {
        let seeds: Vec<u64> = (0..100).map(|i| derive_seed(42, i)).collect();
        let mut sorted = seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), seeds.len());
    }
}
