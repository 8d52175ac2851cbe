//! Entropies in bits.

use crate::error::{Error, Result};
use crate::statecore::eig::hermitian_eig;
use crate::statecore::matrix::ComplexMatrix;
use crate::statecore::state::{ProbabilityVector, STATE_TOL};

/// Eigenvalues at or below this count as zero.
pub const ZERO_EIGENVALUE: f64 = 1e-12;

/// `−x log₂ x` with `0 log 0 = 0`.
#[inline]
pub fn xlog2x_neg(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Clips a spectrum: values in `[−1e-10, 1e-12]` become zero, anything more
/// negative is an error.
pub fn clip_spectrum(values: &[f64]) -> Result<Vec<f64>> {
    values
        .iter()
        .map(|&l| {
            if l < -STATE_TOL {
                Err(Error::NegativeEigenvalue(l))
            } else if l <= ZERO_EIGENVALUE {
                Ok(0.0)
            } else {
                Ok(l)
            }
        })
        .collect()
}

/// `S(ρ) = −Tr ρ log₂ ρ`.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    let e = hermitian_eig(rho)?;
    Ok(clip_spectrum(&e.values)?.into_iter().map(xlog2x_neg).sum())
}

pub fn shannon_entropy(p: &ProbabilityVector) -> f64 {
    shannon_bits(p.as_slice())
}

/// Shannon entropy of raw weights; non-positive entries contribute nothing.
pub fn shannon_bits(p: &[f64]) -> f64 {
    p.iter().map(|&x| xlog2x_neg(x)).sum()
}

fn check_density(m: &ComplexMatrix, name: &str) -> Result<()> {
    let tr = m.trace();
    if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
        return Err(Error::InvalidState(format!("{name} has trace {tr}")));
    }
    Ok(())
}

/// `S(ρ‖σ) = Tr ρ log₂ ρ − Tr ρ log₂ σ`, or `+∞` when the support of `ρ`
/// is not contained in that of `σ`.
pub fn relative_entropy(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    if rho.rows() != sigma.rows() || rho.cols() != sigma.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            rho.rows(),
            rho.cols(),
            sigma.rows(),
            sigma.cols()
        )));
    }
    check_density(rho, "ρ")?;
    check_density(sigma, "σ")?;
    let s_rho = von_neumann_entropy(rho)?;

    let es = hermitian_eig(sigma)?;
    let lambdas = clip_spectrum(&es.values)?;
    let mut cross = 0.0;
    for (k, &l) in lambdas.iter().enumerate() {
        let v = es.vector(k);
        let w = rho.mul_vec(&v);
        let weight: f64 = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum();
        if l == 0.0 {
            if weight > ZERO_EIGENVALUE {
                return Ok(f64::INFINITY);
            }
        } else {
            cross += weight * l.log2();
        }
    }
    Ok((-s_rho - cross).max(0.0))
}
