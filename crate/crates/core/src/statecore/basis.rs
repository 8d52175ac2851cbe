//! Local orthonormal bases, one per subsystem.
//!
//! Each basis is stored as a unitary `U` whose row `k` is the bra `<B(k)|`,
//! so the kets are `|B(k)> = U† |k>`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::statecore::eig::hermitian_eig;
use crate::statecore::matrix::{tensor_all, ComplexMatrix, C64};
use crate::statecore::random::random_unitary_with;

/// Unitarity tolerance for basis unitaries.
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct LocalBasisSet {
    unitaries: Vec<ComplexMatrix>,
}

impl LocalBasisSet {
    pub fn new(unitaries: Vec<ComplexMatrix>) -> Result<Self> {
        if unitaries.is_empty() {
            return Err(Error::InvalidArgument("no subsystems".into()));
        }
        for (i, u) in unitaries.iter().enumerate() {
            let err = u.unitarity_error();
            if err > UNITARY_TOL {
                return Err(Error::InvalidArgument(format!(
                    "basis {i} is not unitary (‖UU† − I‖ = {err:.3e})"
                )));
            }
        }
        Ok(LocalBasisSet { unitaries })
    }

    pub fn computational(dims: &[usize]) -> Self {
        LocalBasisSet {
            unitaries: dims.iter().map(|&d| ComplexMatrix::identity(d)).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, dims: &[usize]) -> Self {
        LocalBasisSet {
            unitaries: dims.iter().map(|&d| random_unitary_with(rng, d)).collect(),
        }
    }

    /// Basis whose kets are the columns of `vectors` (one matrix per subsystem).
    pub fn from_kets(vectors: &[ComplexMatrix]) -> Result<Self> {
        Self::new(vectors.iter().map(ComplexMatrix::adjoint).collect())
    }

    /// Per-subsystem eigenbases of the given Hermitian operators.
    pub fn eigenbases(ops: &[ComplexMatrix]) -> Result<Self> {
        let kets = ops
            .iter()
            .map(|m| hermitian_eig(m).map(|e| e.vectors))
            .collect::<Result<Vec<_>>>()?;
        Self::from_kets(&kets)
    }

    /// Builds a basis set from concatenated rotation angles; see [`basis_from_angles`].
    pub fn from_angles(dims: &[usize], angles: &[f64]) -> Result<Self> {
        let needed: usize = dims.iter().map(|&d| angle_count(d)).sum();
        if angles.len() != needed {
            return Err(Error::InvalidArgument(format!(
                "dims {dims:?} need {needed} angles, got {}",
                angles.len()
            )));
        }
        let mut offset = 0;
        let mut unitaries = Vec::with_capacity(dims.len());
        for &d in dims {
            let n = angle_count(d);
            unitaries.push(basis_from_angles(d, &angles[offset..offset + n]));
            offset += n;
        }
        Ok(LocalBasisSet { unitaries })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.unitaries.iter().map(ComplexMatrix::rows).collect()
    }

    pub fn unitaries(&self) -> &[ComplexMatrix] {
        &self.unitaries
    }

    pub fn unitary(&self, subsystem: usize) -> &ComplexMatrix {
        &self.unitaries[subsystem]
    }

    /// `U_1 ⊗ ... ⊗ U_n`.
    pub fn product_unitary(&self) -> ComplexMatrix {
        tensor_all(&self.unitaries)
    }

    /// Ket `|B_i(k)>` of one subsystem.
    pub fn ket(&self, subsystem: usize, k: usize) -> Vec<C64> {
        self.unitaries[subsystem].row(k).iter().map(|z| z.conj()).collect()
    }

    pub fn check_dims(&self, dims: &[usize]) -> Result<()> {
        if self.dims() != dims {
            return Err(Error::DimensionMismatch(format!(
                "basis dims {:?} vs state dims {dims:?}",
                self.dims()
            )));
        }
        Ok(())
    }

    pub fn with_unitary(mut self, subsystem: usize, u: ComplexMatrix) -> Result<Self> {
        if u.unitarity_error() > UNITARY_TOL {
            return Err(Error::InvalidArgument("not unitary".into()));
        }
        self.unitaries[subsystem] = u;
        Ok(self)
    }
}

/// Number of real angles parameterizing a basis of `C^d`: `d(d−1)`.
pub fn angle_count(d: usize) -> usize {
    d * (d - 1)
}

/// Unitary `G_{01}(θ, φ) G_{02}(θ, φ) ⋯ G_{d−2,d−1}(θ, φ)`, a product of
/// complex Givens rotations taking one `(θ, φ)` pair per index pair.
///
/// Every basis of `C^d` is reached up to per-vector phases, which dephasing
/// ignores. For `d = 2` the kets are `cos(θ)|0> − e^{−iφ} sin(θ)|1>` and its
/// orthogonal complement, i.e. a Bloch axis with polar angle `2θ`.
pub fn basis_from_angles(d: usize, angles: &[f64]) -> ComplexMatrix {
    assert_eq!(angles.len(), angle_count(d), "angle count mismatch");
    let mut u = ComplexMatrix::identity(d);
    let mut a = angles.chunks_exact(2);
    for p in 0..d {
        for q in (p + 1)..d {
            let pair = a.next().expect("angle pair");
            let (theta, phi) = (pair[0], pair[1]);
            let (s, c) = theta.sin_cos();
            let e = C64::from_polar(1.0, phi);
            // right-multiply by the rotation in the (p, q) plane
            for r in 0..d {
                let up = u[(r, p)];
                let uq = u[(r, q)];
                u[(r, p)] = up * c + uq * e.conj() * s;
                u[(r, q)] = -up * e * s + uq * c;
            }
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statecore::random::rng_from_seed;

    #[test]
    fn angles_give_unitaries() {
        let mut rng = rng_from_seed(3);
        for d in 2..=4 {
            let angles: Vec<f64> = (0..angle_count(d)).map(|_| rng.gen_range(-3.0..3.0)).collect();
            assert!(basis_from_angles(d, &angles).unitarity_error() < 1e-13);
        }
        assert_eq!(basis_from_angles(3, &[0.0; 6]), ComplexMatrix::identity(3));
    }

    #[test]
    fn qubit_bloch_form() {
        let (t, p) = (0.4, 1.1);
        let u = basis_from_angles(2, &[t, p]);
        let b = LocalBasisSet::new(vec![u]).unwrap();
        let k0 = b.ket(0, 0);
        assert!((k0[0] - C64::new(t.cos(), 0.0)).norm() < 1e-15);
        assert!((k0[1] - C64::from_polar(-t.sin(), -p)).norm() < 1e-15);
    }

    #[test]
    fn rejects_non_unitary() {
        let m = ComplexMatrix::real_diagonal(&[1.0, 2.0]);
        assert!(LocalBasisSet::new(vec![m]).is_err());
        assert!(LocalBasisSet::from_angles(&[2, 2], &[0.0; 3]).is_err());
    }

    #[test]
    fn kets_are_adjoint_columns() {
        let b = LocalBasisSet::random(&mut rng_from_seed(1), &[3]);
        let u = b.unitary(0);
        for k in 0..3 {
            let ket = b.ket(0, k);
            // U|B(k)> = |k>
            let img = u.mul_vec(&ket);
            for (i, z) in img.iter().enumerate() {
                let want = if i == k { 1.0 } else { 0.0 };
                assert!((z - C64::new(want, 0.0)).norm() < 1e-12);
            }
        }
    }
}
