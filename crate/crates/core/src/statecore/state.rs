use crate::error::{Error, Result};
use crate::statecore::eig::hermitian_eig;
use crate::statecore::matrix::{ComplexMatrix, C64};

/// Tolerance for Hermiticity, trace and positivity checks on states.
pub const STATE_TOL: f64 = 1e-10;

/// Density matrix together with its subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    dims: Vec<usize>,
    rho: ComplexMatrix,
}

impl QuantumState {
    /// Validates dimensions, Hermiticity, unit trace and positivity.
    pub fn new(dims: Vec<usize>, rho: ComplexMatrix) -> Result<Self> {
        check_dims(&dims, &rho)?;
        let herr = rho.hermiticity_error();
        if herr > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (‖ρ − ρ†‖ = {herr:.3e})"
            )));
        }
        let tr = rho.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "trace {:.12} + {:.3e}i is not 1",
                tr.re, tr.im
            )));
        }
        let min = hermitian_eig(&rho)?.min();
        if min < -STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite (min eigenvalue {min:.3e})"
            )));
        }
        Ok(QuantumState { dims, rho })
    }

    /// Rescales a PSD operator to unit trace and validates the result.
    pub fn normalized(dims: Vec<usize>, m: &ComplexMatrix) -> Result<Self> {
        let tr = m.trace().re;
        if tr <= 0.0 {
            return Err(Error::InvalidState(format!("trace {tr} is not positive")));
        }
        Self::new(dims, m.scale(1.0 / tr))
    }

    /// Pure state `|ψ><ψ|`; `psi` must be normalized.
    pub fn pure(dims: Vec<usize>, psi: &[C64]) -> Result<Self> {
        let n: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (n - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidArgument(format!("vector norm {n} is not 1")));
        }
        Self::new(dims, ComplexMatrix::projector(psi))
    }

    /// Skips validation; for operators that are states by construction.
    pub(crate) fn from_parts(dims: Vec<usize>, rho: ComplexMatrix) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), rho.rows());
        QuantumState { dims, rho }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.rho.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.rho
    }
}

fn check_dims(dims: &[usize], rho: &ComplexMatrix) -> Result<()> {
    if dims.is_empty() || dims.iter().any(|&d| d < 2) {
        return Err(Error::InvalidState(format!(
            "subsystem dimensions must each be at least 2, got {dims:?}"
        )));
    }
    let d: usize = dims.iter().product();
    if !rho.is_square() || rho.rows() != d {
        return Err(Error::DimensionMismatch(format!(
            "dims {dims:?} need a {d}x{d} matrix, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    Ok(())
}

/// Non-negative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidArgument("empty probability vector".into()));
        }
        if p.iter().any(|&x| !x.is_finite() || x < 0.0) {
            return Err(Error::InvalidArgument(format!(
                "probabilities must be finite and non-negative: {p:?}"
            )));
        }
        let s: f64 = p.iter().sum();
        if (s - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidArgument(format!("probabilities sum to {s}")));
        }
        Ok(ProbabilityVector(p))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let ok = ComplexMatrix::real_diagonal(&[0.5, 0.5, 0.0, 0.0]);
        assert!(QuantumState::new(vec![2, 2], ok.clone()).is_ok());
        assert!(matches!(
            QuantumState::new(vec![2, 3], ok.clone()),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(QuantumState::new(vec![4, 1], ok).is_err());
        let bad_trace = ComplexMatrix::real_diagonal(&[0.5, 0.6]);
        assert!(QuantumState::new(vec![2], bad_trace).is_err());
        let negative = ComplexMatrix::real_diagonal(&[1.5, -0.5]);
        assert!(QuantumState::new(vec![2], negative).is_err());
        let non_herm = ComplexMatrix::from_real(&[&[0.5, 0.1], &[0.0, 0.5]]).unwrap();
        assert!(QuantumState::new(vec![2], non_herm).is_err());
    }

    #[test]
    fn probability_vector() {
        assert!(ProbabilityVector::new(vec![0.5, 0.5]).is_ok());
        assert!(ProbabilityVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbabilityVector::new(vec![1.5, -0.5]).is_err());
        assert!(ProbabilityVector::new(vec![]).is_err());
    }
}
