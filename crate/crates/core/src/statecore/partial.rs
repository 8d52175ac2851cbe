//! Partial trace and partial transpose on tensor-product index spaces.

use crate::error::{Error, Result};
use crate::statecore::matrix::ComplexMatrix;

/// Which factor of a bipartite operator to transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Digits of `index` in the mixed radix `dims` (first subsystem most significant).
pub fn split_index(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for (slot, &d) in digits.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    digits
}

pub fn join_index(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&k, &d)| acc * d + k)
}

fn check_square(rho: &ComplexMatrix, dims: &[usize]) -> Result<usize> {
    let d: usize = dims.iter().product();
    if !rho.is_square() || rho.rows() != d {
        return Err(Error::DimensionMismatch(format!(
            "dims {dims:?} need a {d}x{d} operator, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    Ok(d)
}

/// Traces out every subsystem not listed in `keep` (0-based). Kept factors
/// stay in ascending order; an empty `keep` gives the 1×1 full trace.
pub fn partial_trace(rho: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let d = check_square(rho, dims)?;
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if let Some(&bad) = kept.iter().find(|&&k| k >= dims.len()) {
        return Err(Error::DimensionMismatch(format!(
            "subsystem {bad} out of range for {} subsystems",
            dims.len()
        )));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !kept.contains(i)).collect();
    let kept_dims: Vec<usize> = kept.iter().map(|&i| dims[i]).collect();
    let out_dim: usize = kept_dims.iter().product();

    let digits: Vec<Vec<usize>> = (0..d).map(|i| split_index(i, dims)).collect();
    let reduced_index: Vec<usize> = digits
        .iter()
        .map(|dg| kept.iter().fold(0, |acc, &s| acc * dims[s] + dg[s]))
        .collect();

    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for r in 0..d {
        for c in 0..d {
            if traced.iter().all(|&s| digits[r][s] == digits[c][s]) {
                out[(reduced_index[r], reduced_index[c])] += rho[(r, c)];
            }
        }
    }
    Ok(out)
}

/// Transposes the indices of one factor of a bipartite operator.
pub fn partial_transpose(rho: &ComplexMatrix, dims: [usize; 2], side: Side) -> Result<ComplexMatrix> {
    check_square(rho, &dims)?;
    let [da, db] = dims;
    Ok(ComplexMatrix::from_fn(da * db, da * db, |r, c| {
        let (i, k) = (r / db, r % db);
        let (j, l) = (c / db, c % db);
        match side {
            Side::A => rho[(j * db + k, i * db + l)],
            Side::B => rho[(i * db + l, j * db + k)],
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statecore::eig::hermitian_eig;
    use crate::statecore::matrix::{tensor, C64};
    use crate::statecore::random::random_state;

    fn bell() -> ComplexMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = vec![C64::new(h, 0.0), C64::default(), C64::default(), C64::new(h, 0.0)];
        ComplexMatrix::projector(&v)
    }

    #[test]
    fn bell_marginal() {
        let r = partial_trace(&bell(), &[2, 2], &[0]).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-15);
    }

    #[test]
    fn product_marginals() {
        let a = random_state(&[2], 1).into_matrix();
        let b = random_state(&[3], 2).into_matrix();
        let ab = tensor(&a, &b);
        assert!(partial_trace(&ab, &[2, 3], &[0]).unwrap().max_abs_diff(&a) < 1e-14);
        assert!(partial_trace(&ab, &[2, 3], &[1]).unwrap().max_abs_diff(&b) < 1e-14);
        assert!(partial_trace(&ab, &[2, 3], &[0, 1]).unwrap().max_abs_diff(&ab) < 1e-15);
    }

    #[test]
    fn full_trace() {
        let rho = random_state(&[2, 2, 2], 3).into_matrix();
        let t = partial_trace(&rho, &[2, 2, 2], &[]).unwrap();
        assert_eq!((t.rows(), t.cols()), (1, 1));
        assert!((t[(0, 0)] - rho.trace()).norm() < 1e-14);
    }

    #[test]
    fn middle_subsystem() {
        let a = random_state(&[2], 4).into_matrix();
        let b = random_state(&[3], 5).into_matrix();
        let c = random_state(&[2], 6).into_matrix();
        let abc = tensor(&tensor(&a, &b), &c);
        let r = partial_trace(&abc, &[2, 3, 2], &[1]).unwrap();
        assert!(r.max_abs_diff(&b) < 1e-14);
        let ac = partial_trace(&abc, &[2, 3, 2], &[2, 0]).unwrap();
        assert!(ac.max_abs_diff(&tensor(&a, &c)) < 1e-14);
    }

    #[test]
    fn trace_errors() {
        let rho = ComplexMatrix::identity(4);
        assert!(partial_trace(&rho, &[2, 3], &[0]).is_err());
        assert!(partial_trace(&rho, &[2, 2], &[2]).is_err());
        assert!(partial_transpose(&rho, [2, 3], Side::B).is_err());
    }

    #[test]
    fn product_transpose() {
        let a = random_state(&[2], 7).into_matrix();
        let b = random_state(&[2], 8).into_matrix();
        let pt = partial_transpose(&tensor(&a, &b), [2, 2], Side::A).unwrap();
        assert!(pt.max_abs_diff(&tensor(&a.transpose(), &b)) < 1e-15);
        let pt = partial_transpose(&tensor(&a, &b), [2, 2], Side::B).unwrap();
        assert!(pt.max_abs_diff(&tensor(&a, &b.transpose())) < 1e-15);
    }

    #[test]
    fn bell_transpose_spectrum() {
        // brute force: the PT of |Φ+><Φ+| is SWAP/2, eigenvalues (1/2,1/2,1/2,-1/2)
        let pt = partial_transpose(&bell(), [2, 2], Side::B).unwrap();
        let e = hermitian_eig(&pt).unwrap();
        assert!((e.min() + 0.5).abs() < 1e-12);
        assert!((e.max() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn involution_and_trace() {
        let rho = random_state(&[2, 3], 9).into_matrix();
        for side in [Side::A, Side::B] {
            let pt = partial_transpose(&rho, [2, 3], side).unwrap();
            assert_eq!(partial_transpose(&pt, [2, 3], side).unwrap(), rho);
            assert!(pt.hermiticity_error() <= 1e-15);
            assert!((pt.trace() - rho.trace()).norm() < 1e-15);
        }
    }
}
