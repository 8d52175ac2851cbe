//! The activation protocol: generalized CNOTs from each system onto a fresh
//! ancilla, controlled in a chosen local basis.
//!
//! Output registers are ordered `A_1..A_n A'_1..A'_n`, so the system:ancilla
//! cut is a contiguous bipartition of two `D`-dimensional factors.

use crate::error::{Error, Result};
use crate::statecore::eig::hermitian_eig;
use crate::statecore::matrix::{ComplexMatrix, ONE};
use crate::statecore::partial::{join_index, partial_transpose, split_index, Side};
use crate::statecore::{LocalBasisSet, QuantumState};

/// Generalized CNOT on `C^d ⊗ C^d`: `|j>|j'> ↦ |j>|j' ⊕ j>` (mod `d`).
pub fn cnot(d: usize) -> ComplexMatrix {
    assert!(d >= 2, "cnot needs d >= 2");
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for j in 0..d {
        for t in 0..d {
            m[(j * d + (t + j) % d, j * d + t)] = ONE;
        }
    }
    m
}

/// CNOT from every `A_i` onto `A'_i` on the register `A_1..A_n A'_1..A'_n`.
pub fn system_ancilla_cnot(dims: &[usize]) -> ComplexMatrix {
    let full: Vec<usize> = dims.iter().chain(dims).copied().collect();
    let n = dims.len();
    let total: usize = full.iter().product();
    let mut m = ComplexMatrix::zeros(total, total);
    for col in 0..total {
        let mut digits = split_index(col, &full);
        for i in 0..n {
            digits[n + i] = (digits[n + i] + digits[i]) % dims[i];
        }
        m[(join_index(&digits, &full), col)] = ONE;
    }
    m
}

/// Matrix elements `ρ^B_ij = <B(i)|ρ|B(j)>` in the product basis.
pub fn in_basis(rho: &ComplexMatrix, basis: &LocalBasisSet) -> ComplexMatrix {
    rho.conjugate_by(&basis.product_unitary())
}

/// Result of running the protocol.
#[derive(Debug, Clone)]
pub struct ActivationOutput {
    /// State on `A_1..A_n A'_1..A'_n`.
    pub state: QuantumState,
    /// Control basis.
    pub basis: LocalBasisSet,
}

impl ActivationOutput {
    /// Dimension `D` of each side of the system:ancilla cut.
    pub fn side_dim(&self) -> usize {
        self.state.dims()[..self.state.dims().len() / 2].iter().product()
    }

    /// Largest entry that would have to vanish for the maximally correlated
    /// form: `<i a|ρ̃|j b>` with `a ≠ i` or `b ≠ j`.
    pub fn max_uncorrelated_entry(&self) -> f64 {
        let d = self.side_dim();
        let m = self.state.matrix();
        let mut worst: f64 = 0.0;
        for r in 0..d * d {
            for c in 0..d * d {
                let (i, a) = (r / d, r % d);
                let (j, b) = (c / d, c % d);
                if a != i || b != j {
                    worst = worst.max(m[(r, c)].norm());
                }
            }
        }
        worst
    }

    pub fn is_maximally_correlated(&self, tol: f64) -> bool {
        self.max_uncorrelated_entry() <= tol
    }

    /// Minimum eigenvalue of the partial transpose across the system:ancilla cut.
    pub fn cut_min_pt_eigenvalue(&self) -> Result<f64> {
        let d = self.side_dim();
        let pt = partial_transpose(self.state.matrix(), [d, d], Side::B)?;
        Ok(hermitian_eig(&pt)?.min())
    }

    /// Diagonal entries `<i i|ρ̃|i i>`, the measured probabilities.
    pub fn correlated_diagonal(&self) -> Vec<f64> {
        let d = self.side_dim();
        (0..d).map(|i| self.state.matrix()[(i * d + i, i * d + i)].re).collect()
    }
}

fn doubled(dims: &[usize]) -> Vec<usize> {
    dims.iter().chain(dims).copied().collect()
}

/// Runs the circuit `V (ρ ⊗ |0><0|^{⊗n}) V†` with
/// `V = CNOT_{A:A'} (U_A ⊗ I_{A'})`.
pub fn activate_circuit(rho: &QuantumState, basis: &LocalBasisSet) -> Result<ActivationOutput> {
    basis.check_dims(rho.dims())?;
    let d = rho.dim();
    let mut ancilla = ComplexMatrix::zeros(d, d);
    ancilla[(0, 0)] = ONE;
    let input = rho.matrix().kron(&ancilla);
    let local = basis.product_unitary().kron(&ComplexMatrix::identity(d));
    let v = &system_ancilla_cnot(rho.dims()) * &local;
    let out = input.conjugate_by(&v).hermitian_part();
    Ok(ActivationOutput {
        state: QuantumState::from_parts(doubled(rho.dims()), out),
        basis: basis.clone(),
    })
}

/// Builds `Σ_ij ρ^B_ij |i><j| ⊗ |i><j|` directly from the matrix elements.
pub fn maximally_correlated_form(rho: &QuantumState, basis: &LocalBasisSet) -> Result<ActivationOutput> {
    basis.check_dims(rho.dims())?;
    let d = rho.dim();
    let elements = in_basis(rho.matrix(), basis).hermitian_part();
    let mut out = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            out[(i * d + i, j * d + j)] = elements[(i, j)];
        }
    }
    Ok(ActivationOutput {
        state: QuantumState::from_parts(doubled(rho.dims()), out),
        basis: basis.clone(),
    })
}

/// `ρ^B = Σ_i |B(i)><B(i)| ρ |B(i)><B(i)|`, returned in the computational
/// representation.
pub fn dephase(rho: &QuantumState, basis: &LocalBasisSet) -> Result<QuantumState> {
    basis.check_dims(rho.dims())?;
    let u = basis.product_unitary();
    let probs = dephased_probabilities(rho.matrix(), &u);
    let diag = ComplexMatrix::real_diagonal(&probs);
    let back = diag.conjugate_by(&u.adjoint()).hermitian_part();
    Ok(QuantumState::from_parts(rho.dims().to_vec(), back))
}

/// Outcome probabilities `<B(k)|ρ|B(k)>` for the product basis with unitary `u`.
pub fn dephased_probabilities(rho: &ComplexMatrix, u: &ComplexMatrix) -> Vec<f64> {
    let d = rho.rows();
    (0..d)
        .map(|k| {
            let row = u.row(k);
            // <B(k)| = row k, |B(k)> = conj(row k)
            let mut acc = 0.0;
            for (r, ur) in row.iter().enumerate() {
                let rho_row = rho.row(r);
                let mut s = crate::statecore::C64::new(0.0, 0.0);
                for (c, uc) in row.iter().enumerate() {
                    s += rho_row[c] * uc.conj();
                }
                acc += (ur * s).re;
            }
            acc
        })
        .collect()
}

pub(crate) fn check_bipartite(dims: &[usize]) -> Result<[usize; 2]> {
    match dims {
        [a, b] => Ok([*a, *b]),
        _ => Err(Error::DimensionMismatch(format!(
            "expected a bipartite state, got dims {dims:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statecore::entropy::von_neumann_entropy;
    use crate::statecore::matrix::{tensor, C64, ZERO};
    use crate::statecore::random::{random_state_with, rng_from_seed};

    fn ket(d: usize, k: usize) -> Vec<C64> {
        (0..d).map(|i| if i == k { ONE } else { ZERO }).collect()
    }

    fn kron_ket(a: &[C64], b: &[C64]) -> Vec<C64> {
        crate::statecore::matrix::kron_vec(a, b)
    }

    #[test]
    fn cnot_actions() {
        let c2 = cnot(2);
        assert_eq!(c2.mul_vec(&kron_ket(&ket(2, 1), &ket(2, 0))), kron_ket(&ket(2, 1), &ket(2, 1)));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = vec![C64::new(0.3, 0.1), C64::new(h, -0.2)];
        let input = kron_ket(&ket(2, 0), &psi);
        assert_eq!(c2.mul_vec(&input), input);
        let c3 = cnot(3);
        assert_eq!(c3.mul_vec(&kron_ket(&ket(3, 2), &ket(3, 2))), kron_ket(&ket(3, 2), &ket(3, 1)));
        assert!(c3.unitarity_error() < 1e-15);
    }

    #[test]
    fn single_pair_matches_cnot() {
        for d in 2..=4 {
            assert_eq!(system_ancilla_cnot(&[d]), cnot(d));
        }
    }

    #[test]
    fn classical_diagonal_output() {
        let rho = QuantumState::new(vec![2, 2], ComplexMatrix::real_diagonal(&[0.1, 0.2, 0.3, 0.4])).unwrap();
        let out = activate_circuit(&rho, &LocalBasisSet::computational(&[2, 2])).unwrap();
        let m = out.state.matrix();
        assert!(m.off_diagonal_norm() < 1e-15);
        for (i, p) in [0.1, 0.2, 0.3, 0.4].iter().enumerate() {
            assert!((m[(i * 4 + i, i * 4 + i)].re - p).abs() < 1e-15);
        }
        assert!(out.cut_min_pt_eigenvalue().unwrap() >= -1e-12);
    }

    #[test]
    fn plus_state_gives_bell() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = QuantumState::pure(vec![2], &[C64::new(h, 0.0), C64::new(h, 0.0)]).unwrap();
        let out = activate_circuit(&plus, &LocalBasisSet::computational(&[2])).unwrap();
        let bell = ComplexMatrix::projector(&[C64::new(h, 0.0), ZERO, ZERO, C64::new(h, 0.0)]);
        assert!(out.state.matrix().max_abs_diff(&bell) < 1e-15);
        assert_eq!(out.state.dims(), &[2, 2]);
    }

    #[test]
    fn circuit_matches_direct_form() {
        let mut rng = rng_from_seed(21);
        for dims in [vec![2, 2], vec![3], vec![2, 3]] {
            for _ in 0..10 {
                let rho = random_state_with(&mut rng, &dims);
                let basis = LocalBasisSet::random(&mut rng, &dims);
                let a = activate_circuit(&rho, &basis).unwrap();
                let b = maximally_correlated_form(&rho, &basis).unwrap();
                assert!((a.state.matrix() - b.state.matrix()).frobenius_norm() <= 1e-12);
                assert!(a.is_maximally_correlated(1e-12));
                assert!((a.state.matrix().trace().re - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn matrix_elements_are_inner_products() {
        let mut rng = rng_from_seed(4);
        let rho = random_state_with(&mut rng, &[2, 2]);
        let basis = LocalBasisSet::random(&mut rng, &[2, 2]);
        let e = in_basis(rho.matrix(), &basis);
        let kets: Vec<Vec<C64>> = (0..4)
            .map(|i| kron_ket(&basis.ket(0, i / 2), &basis.ket(1, i % 2)))
            .collect();
        for i in 0..4 {
            for j in 0..4 {
                let direct = crate::statecore::matrix::inner(&kets[i], &rho.matrix().mul_vec(&kets[j]));
                assert!((direct - e[(i, j)]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn eigenbasis_of_classical_state_gives_diagonal_output() {
        let mut rng = rng_from_seed(8);
        let ua = crate::statecore::random::random_unitary_with(&mut rng, 2);
        let ub = crate::statecore::random::random_unitary_with(&mut rng, 2);
        let diag = ComplexMatrix::real_diagonal(&[0.4, 0.3, 0.2, 0.1]);
        let u = tensor(&ua, &ub);
        let rho = QuantumState::new(vec![2, 2], diag.conjugate_by(&u.adjoint()).hermitian_part()).unwrap();
        let basis = LocalBasisSet::new(vec![ua, ub]).unwrap();
        let out = maximally_correlated_form(&rho, &basis).unwrap();
        assert!(out.state.matrix().off_diagonal_norm() < 1e-12);
    }

    #[test]
    fn dephasing() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = QuantumState::pure(vec![2, 2], &[C64::new(h, 0.0), ZERO, ZERO, C64::new(h, 0.0)]).unwrap();
        let comp = LocalBasisSet::computational(&[2, 2]);
        let d = dephase(&bell, &comp).unwrap();
        assert!(d.matrix().max_abs_diff(&ComplexMatrix::real_diagonal(&[0.5, 0.0, 0.0, 0.5])) < 1e-15);
        let again = dephase(&d, &comp).unwrap();
        assert!(again.matrix().max_abs_diff(d.matrix()) < 1e-15);

        let mut rng = rng_from_seed(5);
        for _ in 0..10 {
            let rho = random_state_with(&mut rng, &[2, 3]);
            let basis = LocalBasisSet::random(&mut rng, &[2, 3]);
            let once = dephase(&rho, &basis).unwrap();
            let twice = dephase(&once, &basis).unwrap();
            assert!((once.matrix() - twice.matrix()).frobenius_norm() <= 1e-12);
            let s0 = von_neumann_entropy(rho.matrix()).unwrap();
            let s1 = von_neumann_entropy(once.matrix()).unwrap();
            assert!(s1 >= s0 - 1e-12);
            // diagonal of the activated state = dephased probabilities
            let out = activate_circuit(&rho, &basis).unwrap();
            let probs = dephased_probabilities(rho.matrix(), &basis.product_unitary());
            for (a, b) in out.correlated_diagonal().iter().zip(&probs) {
                assert!((a - b).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let rho = crate::statecore::random_state(&[2, 2], 1);
        let basis = LocalBasisSet::computational(&[2, 3]);
        assert!(activate_circuit(&rho, &basis).is_err());
        assert!(maximally_correlated_form(&rho, &basis).is_err());
        assert!(dephase(&rho, &basis).is_err());
    }
}
