//! Swapping system–ancilla entanglement back into the systems by projecting
//! the ancillae onto a pure state `|φ> = Σ Φ_i |i>`.
//!
//! After activation the state is maximally correlated, so the filtered system
//! state is the Schur product of the basis-represented input with `Φ Φ†`:
//! entry `(i, j)` is `ρ^B_ij Φ_i Φ_j*`. Rows and columns get rescaled, nothing
//! else. Entanglement of the result is decided by the partial transpose,
//! which is exact for two qubits.

use rand::Rng;

use crate::activation::{check_bipartite, in_basis};
use crate::error::{Error, Result};
use crate::optimize::{minimize, SimplexOptions};
use crate::statecore::eig::hermitian_eig;
use crate::statecore::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::statecore::partial::{partial_transpose, Side};
use crate::statecore::random::{derive_seed, random_pure_with, rng_from_seed};
use crate::statecore::state::STATE_TOL;
use crate::statecore::{LocalBasisSet, QuantumState};

/// A normalized state is NPT when its partial transpose has an eigenvalue below this.
pub const NPT_THRESHOLD: f64 = -1e-10;

/// Matrix elements below this magnitude do not count as witnesses.
pub const WITNESS_TOL: f64 = 1e-9;

/// Pure state on the ancilla register.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterVector {
    dims: Vec<usize>,
    amplitudes: Vec<C64>,
}

impl FilterVector {
    pub fn new(dims: Vec<usize>, amplitudes: Vec<C64>) -> Result<Self> {
        let d: usize = dims.iter().product();
        if amplitudes.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for dims {dims:?}",
                amplitudes.len()
            )));
        }
        let n = crate::statecore::matrix::vec_norm(&amplitudes);
        if (n * n - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidArgument(format!("filter norm² {} is not 1", n * n)));
        }
        Ok(FilterVector { dims, amplitudes })
    }

    /// `Φ_i = 1/√D`; leaves the state unchanged up to a factor `1/D`.
    pub fn uniform(dims: &[usize]) -> Self {
        let d: usize = dims.iter().product();
        let a = C64::new(1.0 / (d as f64).sqrt(), 0.0);
        FilterVector {
            dims: dims.to_vec(),
            amplitudes: vec![a; d],
        }
    }

    pub fn basis_vector(dims: &[usize], k: usize) -> Self {
        let d: usize = dims.iter().product();
        let amplitudes = (0..d).map(|i| if i == k { ONE } else { ZERO }).collect();
        FilterVector {
            dims: dims.to_vec(),
            amplitudes,
        }
    }

    /// `(|a> + |b>)/√2` for flat indices `a ≠ b`.
    pub fn pair(dims: &[usize], a: usize, b: usize) -> Self {
        let d: usize = dims.iter().product();
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let amplitudes = (0..d).map(|i| if i == a || i == b { h } else { ZERO }).collect();
        FilterVector {
            dims: dims.to_vec(),
            amplitudes,
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, dims: &[usize]) -> Self {
        let d: usize = dims.iter().product();
        FilterVector {
            dims: dims.to_vec(),
            amplitudes: random_pure_with(rng, d),
        }
    }

    /// Filter from `D − 1` hyperspherical magnitude angles followed by
    /// `D − 1` relative phases; `Φ_0` is real.
    pub fn from_params(dims: &[usize], params: &[f64]) -> Self {
        let d: usize = dims.iter().product();
        assert_eq!(params.len(), 2 * (d - 1), "filter parameter count");
        let (mags, phases) = params.split_at(d - 1);
        let mut amplitudes = Vec::with_capacity(d);
        let mut carry = 1.0;
        for i in 0..d {
            let m = if i < d - 1 {
                let (s, c) = mags[i].sin_cos();
                let v = carry * c;
                carry *= s;
                v
            } else {
                carry
            };
            let phase = if i == 0 { 0.0 } else { phases[i - 1] };
            amplitudes.push(C64::from_polar(m, phase));
        }
        FilterVector {
            dims: dims.to_vec(),
            amplitudes,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }
}

/// Unnormalized system state after a successful ancilla projection.
#[derive(Debug, Clone)]
pub struct FilteredState {
    pub unnormalized: ComplexMatrix,
    /// Trace of `unnormalized`.
    pub norm: f64,
    pub basis: LocalBasisSet,
}

impl FilteredState {
    /// Trace-normalized state, or `None` when the projection has zero weight.
    pub fn normalized(&self) -> Option<ComplexMatrix> {
        (self.norm > 1e-14).then(|| self.unnormalized.scale(1.0 / self.norm))
    }
}

/// `ρ^B ∘ Φ Φ†` with `ρ^B` the basis representation of `rho`.
pub fn filter(rho: &QuantumState, basis: &LocalBasisSet, phi: &FilterVector) -> Result<FilteredState> {
    basis.check_dims(rho.dims())?;
    if phi.dims() != rho.dims() {
        return Err(Error::DimensionMismatch(format!(
            "filter dims {:?} vs state dims {:?}",
            phi.dims(),
            rho.dims()
        )));
    }
    let elements = in_basis(rho.matrix(), basis).hermitian_part();
    let unnormalized = rescale(&elements, phi.amplitudes());
    Ok(FilteredState {
        norm: unnormalized.trace().re,
        unnormalized,
        basis: basis.clone(),
    })
}

fn rescale(elements: &ComplexMatrix, phi: &[C64]) -> ComplexMatrix {
    let d = elements.rows();
    ComplexMatrix::from_fn(d, d, |i, j| elements[(i, j)] * phi[i] * phi[j].conj())
}

/// Smallest eigenvalue of the partial transpose on `B`.
pub fn min_pt_eigenvalue(m: &ComplexMatrix, dims: [usize; 2]) -> Result<f64> {
    if m.hermiticity_error() > crate::statecore::eig::HERMITIAN_TOL {
        return Err(Error::NotHermitian(m.hermiticity_error()));
    }
    let pt = partial_transpose(m, dims, Side::B)?;
    Ok(hermitian_eig(&pt)?.min())
}

/// [`min_pt_eigenvalue`] of the trace-normalized operator; zero-trace input gives 0.
pub fn normalized_min_pt_eigenvalue(m: &ComplexMatrix, dims: [usize; 2]) -> Result<f64> {
    let tr = m.trace().re;
    if tr <= 1e-14 {
        return Ok(0.0);
    }
    min_pt_eigenvalue(&m.scale(1.0 / tr), dims)
}

/// Indices `(i, j, k, l)` of `<B_A(i) B_B(k)|ρ|B_A(j) B_B(l)>` with `i ≠ j`, `k ≠ l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessIndices {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub magnitude: f64,
}

/// Finds the largest off-diagonal entry of an off-diagonal block of `ρ^B`
/// (first in `(i, j, k, l)` order on ties) and the filter
/// `(|ik> + |jl>)/√2` that isolates it. The filtered state then has four
/// non-zero corners and is NPT.
pub fn theorem1_witness(
    rho: &QuantumState,
    basis: &LocalBasisSet,
) -> Result<Option<(WitnessIndices, FilterVector)>> {
    let [d_a, d_b] = check_bipartite(rho.dims())?;
    basis.check_dims(rho.dims())?;
    let elements = in_basis(rho.matrix(), basis);
    let mut best: Option<WitnessIndices> = None;
    for i in 0..d_a {
        for j in 0..d_a {
            if i == j {
                continue;
            }
            for k in 0..d_b {
                for l in 0..d_b {
                    if k == l {
                        continue;
                    }
                    let magnitude = elements[(i * d_b + k, j * d_b + l)].norm();
                    if magnitude > WITNESS_TOL && best.is_none_or(|b| magnitude > b.magnitude) {
                        best = Some(WitnessIndices { i, j, k, l, magnitude });
                    }
                }
            }
        }
    }
    Ok(best.map(|w| {
        let phi = FilterVector::pair(rho.dims(), w.i * d_b + w.k, w.j * d_b + w.l);
        (w, phi)
    }))
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwapMethod {
    Theorem1Witness,
    RandomSearch,
    OptimizedSearch,
    AnalyticBlockCertificate,
    /// A single caller-chosen filter.
    FixedFilter,
}

impl SwapMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SwapMethod::Theorem1Witness => "theorem1-witness",
            SwapMethod::RandomSearch => "random-search",
            SwapMethod::OptimizedSearch => "optimized-search",
            SwapMethod::AnalyticBlockCertificate => "analytic-block-certificate",
            SwapMethod::FixedFilter => "fixed-filter",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SwapVerdict {
    pub npt_found: bool,
    /// Most negative normalized partial-transpose eigenvalue seen.
    pub best_min_pt_eigenvalue: f64,
    pub witness_filter: Option<FilterVector>,
    pub method: SwapMethod,
    pub filters_tried: usize,
}

impl SwapVerdict {
    fn new(best: f64, filter: Option<FilterVector>, method: SwapMethod, filters_tried: usize) -> Self {
        let npt_found = best < NPT_THRESHOLD;
        SwapVerdict {
            npt_found,
            best_min_pt_eigenvalue: best,
            witness_filter: if npt_found { filter } else { None },
            method,
            filters_tried,
        }
    }
}

/// Search budget for [`swap_search`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwapBudget {
    pub samples: usize,
    pub opt_restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for SwapBudget {
    fn default() -> Self {
        SwapBudget {
            samples: 1000,
            opt_restarts: 50,
            max_iters: 2000,
            seed: 42,
        }
    }
}

/// Verdict for one fixed filter.
pub fn verdict_for_filter(rho: &QuantumState, basis: &LocalBasisSet, phi: &FilterVector) -> Result<SwapVerdict> {
    let dims = check_bipartite(rho.dims())?;
    let f = filter(rho, basis, phi)?;
    let v = normalized_min_pt_eigenvalue(&f.unnormalized, dims)?;
    Ok(SwapVerdict::new(v, Some(phi.clone()), SwapMethod::FixedFilter, 1))
}

/// Looks for a filter that makes the systems NPT: the witness scan first,
/// then `budget.samples` random filters, then `budget.opt_restarts` simplex
/// runs minimizing the normalized partial-transpose eigenvalue over the
/// `2D − 2` filter parameters. Stops at the first stage that finds NPT.
///
/// Only an NPT result is conclusive beyond two qubits.
pub fn swap_search(rho: &QuantumState, basis: &LocalBasisSet, budget: &SwapBudget) -> Result<SwapVerdict> {
    let dims = check_bipartite(rho.dims())?;
    basis.check_dims(rho.dims())?;
    let elements = in_basis(rho.matrix(), basis).hermitian_part();
    let score = |phi: &[C64]| -> f64 {
        normalized_min_pt_eigenvalue(&rescale(&elements, phi), dims).unwrap_or(0.0)
    };

    if let Some((_, phi)) = theorem1_witness(rho, basis)? {
        let v = score(phi.amplitudes());
        return Ok(SwapVerdict::new(v, Some(phi), SwapMethod::Theorem1Witness, 1));
    }

    let mut tried = 0;
    let mut best = f64::INFINITY;
    let mut best_phi: Option<FilterVector> = None;
    let mut rng = rng_from_seed(derive_seed(budget.seed, 0x5a3d));
    for _ in 0..budget.samples {
        let phi = FilterVector::random(&mut rng, rho.dims());
        let v = score(phi.amplitudes());
        tried += 1;
        if v < best {
            best = v;
            best_phi = Some(phi);
        }
    }
    if best < NPT_THRESHOLD {
        return Ok(SwapVerdict::new(best, best_phi, SwapMethod::RandomSearch, tried));
    }

    let d = rho.dim();
    let opts = SimplexOptions {
        max_iters: budget.max_iters,
        ftol: 1e-12,
        initial_step: 0.5,
        polish_rounds: 1,
    };
    for r in 0..budget.opt_restarts {
        let mut rng = rng_from_seed(derive_seed(budget.seed, 0x10000 + r as u64));
        let x0: Vec<f64> = (0..2 * (d - 1))
            .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
            .collect();
        let m = minimize(
            |x: &[f64]| {
                let phi = FilterVector::from_params(rho.dims(), x);
                score(phi.amplitudes())
            },
            &x0,
            &opts,
        );
        tried += m.evaluations;
        if m.value < best {
            best = m.value;
            best_phi = Some(FilterVector::from_params(rho.dims(), &m.x));
        }
    }
    Ok(SwapVerdict::new(best, best_phi, SwapMethod::OptimizedSearch, tried))
}

/// Runs [`swap_search`] in `n_bases` seeded random local bases.
pub fn swap_search_random_bases(rho: &QuantumState, n_bases: usize, budget: &SwapBudget) -> Result<Vec<SwapVerdict>> {
    (0..n_bases)
        .map(|b| {
            let mut rng = rng_from_seed(derive_seed(budget.seed, 0xba5e_0000 + b as u64));
            let basis = LocalBasisSet::random(&mut rng, rho.dims());
            swap_search(rho, &basis, budget)
        })
        .collect()
}

/// Which structure rules out swapping for every filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockCertificate {
    /// `ρ^B` is block diagonal with respect to the `A` index, so every filtered
    /// state is `Σ_i |i><i| ⊗ σ_i`.
    BlockDiagonalA,
    /// Same with respect to `B`.
    BlockDiagonalB,
    /// Two qubits, off-diagonal blocks diagonal and `a₁₂ a₃₄* = 0` or
    /// `a₁₃ a₂₄* = 0`: every filtered state has a PT spectrum equal to its own.
    InvariantPtSpectrum,
}

/// Checks whether `ρ^B` has a structure that keeps every filtered state PPT.
pub fn block_certificate(rho: &QuantumState, basis: &LocalBasisSet, tol: f64) -> Result<Option<BlockCertificate>> {
    let [d_a, d_b] = check_bipartite(rho.dims())?;
    basis.check_dims(rho.dims())?;
    let e = in_basis(rho.matrix(), basis);
    let mut block_a = true;
    let mut block_b = true;
    for r in 0..d_a * d_b {
        for c in 0..d_a * d_b {
            let (i, k) = (r / d_b, r % d_b);
            let (j, l) = (c / d_b, c % d_b);
            let small = e[(r, c)].norm() <= tol;
            if i != j && !small {
                block_a = false;
            }
            if k != l && !small {
                block_b = false;
            }
        }
    }
    if block_a {
        return Ok(Some(BlockCertificate::BlockDiagonalA));
    }
    if block_b {
        return Ok(Some(BlockCertificate::BlockDiagonalB));
    }
    if [d_a, d_b] == [2, 2] && has_diagonal_offdiagonal_blocks(&e, tol)? {
        let a12_a34 = (e[(0, 1)] * e[(2, 3)].conj()).norm();
        let a13_a24 = (e[(0, 2)] * e[(1, 3)].conj()).norm();
        if a12_a34 <= tol || a13_a24 <= tol {
            return Ok(Some(BlockCertificate::InvariantPtSpectrum));
        }
    }
    Ok(None)
}

/// Certificate verdict, reporting the trivial-filter eigenvalue as evidence.
pub fn certify_swap_blocked(rho: &QuantumState, basis: &LocalBasisSet, tol: f64) -> Result<Option<SwapVerdict>> {
    if block_certificate(rho, basis, tol)?.is_none() {
        return Ok(None);
    }
    let v = verdict_for_filter(rho, basis, &FilterVector::uniform(rho.dims()))?;
    Ok(Some(SwapVerdict {
        npt_found: false,
        best_min_pt_eigenvalue: v.best_min_pt_eigenvalue,
        witness_filter: None,
        method: SwapMethod::AnalyticBlockCertificate,
        filters_tried: 0,
    }))
}

/// `(1 − p) I/D + p |ψ><ψ|`.
pub fn pseudo_isotropic(psi: &[C64], dims: &[usize], p: f64) -> Result<QuantumState> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("mixing weight {p} outside [0, 1]")));
    }
    let d: usize = dims.iter().product();
    if psi.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for dims {dims:?}",
            psi.len()
        )));
    }
    let n = crate::statecore::matrix::vec_norm(psi);
    if (n - 1.0).abs() > STATE_TOL {
        return Err(Error::InvalidArgument(format!("vector norm {n} is not 1")));
    }
    let m = &ComplexMatrix::identity(d).scale((1.0 - p) / d as f64) + &ComplexMatrix::projector(psi).scale(p);
    QuantumState::new(dims.to_vec(), m)
}

fn check_4x4(m: &ComplexMatrix) -> Result<()> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "expected a 4x4 two-qubit operator, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// True when the off-diagonal 2×2 blocks are diagonal: `|a₁₄| ≤ tol` and `|a₂₃| ≤ tol`.
pub fn has_diagonal_offdiagonal_blocks(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    check_4x4(m)?;
    Ok(m[(0, 3)].norm() <= tol && m[(1, 2)].norm() <= tol && m[(3, 0)].norm() <= tol && m[(2, 1)].norm() <= tol)
}

/// `p_X(λ) − p_{X^Γ}(λ) = 4 Im(a₁₃* a₂₄) Im(a₁₂ a₃₄*)` for a Hermitian 4×4
/// `X` with diagonal off-diagonal blocks (1-based entry labels). Zero means
/// `X` and its partial transpose share a spectrum.
pub fn char_poly_pt_gap(m: &ComplexMatrix) -> Result<f64> {
    check_4x4(m)?;
    let tol = 1e-12 * m.frobenius_norm().max(1.0);
    if !has_diagonal_offdiagonal_blocks(m, tol)? {
        return Err(Error::Structure("off-diagonal blocks are not diagonal".into()));
    }
    if m.hermiticity_error() > crate::statecore::eig::HERMITIAN_TOL {
        return Err(Error::NotHermitian(m.hermiticity_error()));
    }
    let (a12, a13, a24, a34) = (m[(0, 1)], m[(0, 2)], m[(1, 3)], m[(2, 3)]);
    Ok(4.0 * (a13.conj() * a24).im * (a12 * a34.conj()).im)
}

/// Random Hermitian 4×4 with diagonal off-diagonal blocks. With
/// `real_product` set, `a₃₄` is a real multiple of `a₁₂`, so `a₁₂ a₃₄*` is real.
pub fn random_diagonal_block_matrix<R: Rng + ?Sized>(rng: &mut R, real_product: bool) -> ComplexMatrix {
    use crate::statecore::random::complex_gaussian;
    use rand_distr::StandardNormal;
    let mut m = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        m[(i, i)] = C64::new(rng.sample(StandardNormal), 0.0);
    }
    let a12 = complex_gaussian(rng);
    let a13 = complex_gaussian(rng);
    let a24 = complex_gaussian(rng);
    let a34 = if real_product {
        a12 * rng.sample::<f64, _>(StandardNormal)
    } else {
        complex_gaussian(rng)
    };
    for (r, c, v) in [(0, 1, a12), (0, 2, a13), (1, 3, a24), (2, 3, a34)] {
        m[(r, c)] = v;
        m[(c, r)] = v.conj();
    }
    m
}

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn ket0() -> Vec<C64> {
    vec![ONE, ZERO]
}

fn ket1() -> Vec<C64> {
    vec![ZERO, ONE]
}

fn ket_plus() -> Vec<C64> {
    vec![C64::new(H, 0.0), C64::new(H, 0.0)]
}

fn product_term(a: &[C64], b: &[C64]) -> ComplexMatrix {
    ComplexMatrix::projector(a).kron(&ComplexMatrix::projector(b))
}

/// `½|0><0| ⊗ |0><0| + ½|1><1| ⊗ |+><+|`, a maximally non-classical CQ state.
pub fn cq_counterexample() -> QuantumState {
    let m = &product_term(&ket0(), &ket0()).scale(0.5) + &product_term(&ket1(), &ket_plus()).scale(0.5);
    QuantumState::from_parts(vec![2, 2], m)
}

/// `½|0><0| ⊗ |+><+| + ½|+><+| ⊗ |0><0|`, separable but neither CQ nor QC.
pub fn qq_counterexample() -> QuantumState {
    let m = &product_term(&ket0(), &ket_plus()).scale(0.5) + &product_term(&ket_plus(), &ket0()).scale(0.5);
    QuantumState::from_parts(vec![2, 2], m)
}

/// Unnormalized PSD operator (trace 6) with diagonal off-diagonal blocks
/// whose partial transpose is nevertheless not positive.
pub fn eq21_example() -> ComplexMatrix {
    let r = |x: f64| C64::new(x, 0.0);
    let i = C64::new(0.0, 1.0);
    ComplexMatrix::from_rows(&[
        vec![r(1.5), i, r(1.0), ZERO],
        vec![-i, r(1.5), ZERO, i],
        vec![r(1.0), ZERO, r(1.5), r(1.0)],
        vec![ZERO, -i, r(1.0), r(1.5)],
    ])
    .expect("literal 4x4")
}

/// [`eq21_example`] divided by its trace.
pub fn eq21_normalized() -> QuantumState {
    QuantumState::normalized(vec![2, 2], &eq21_example()).expect("eq21 is PSD")
}

/// `|Φ+> = (|00> + |11>)/√2`.
pub fn bell_vector() -> Vec<C64> {
    vec![C64::new(H, 0.0), ZERO, ZERO, C64::new(H, 0.0)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statecore::random::random_state_with;

    fn comp() -> LocalBasisSet {
        LocalBasisSet::computational(&[2, 2])
    }

    #[test]
    fn literal_matrices() {
        let qq = ComplexMatrix::from_real(&[
            &[2.0, 1.0, 1.0, 0.0],
            &[1.0, 1.0, 0.0, 0.0],
            &[1.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
        ])
        .unwrap()
        .scale(0.25);
        assert!(qq_counterexample().matrix().max_abs_diff(&qq) < 1e-15);
        let cq = ComplexMatrix::from_real(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.5, 0.5],
            &[0.0, 0.0, 0.5, 0.5],
        ])
        .unwrap()
        .scale(0.5);
        assert!(cq_counterexample().matrix().max_abs_diff(&cq) < 1e-15);
        assert!((eq21_example().trace() - C64::new(6.0, 0.0)).norm() < 1e-15);
        for s in [cq_counterexample(), qq_counterexample(), eq21_normalized()] {
            assert!(QuantumState::new(vec![2, 2], s.matrix().clone()).is_ok());
        }
    }

    #[test]
    fn uniform_and_single_filters() {
        let rho = random_state_with(&mut rng_from_seed(1), &[2, 2]);
        let basis = LocalBasisSet::random(&mut rng_from_seed(2), &[2, 2]);
        let elements = in_basis(rho.matrix(), &basis);
        let f = filter(&rho, &basis, &FilterVector::uniform(&[2, 2])).unwrap();
        assert!(f.unnormalized.max_abs_diff(&elements.scale(0.25)) < 1e-15);
        assert!((f.norm - 0.25).abs() < 1e-14);
        let f = filter(&rho, &basis, &FilterVector::basis_vector(&[2, 2], 2)).unwrap();
        let mut expect = ComplexMatrix::zeros(4, 4);
        expect[(2, 2)] = C64::new(elements[(2, 2)].re, 0.0);
        assert!(f.unnormalized.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn filter_params_are_normalized() {
        let mut rng = rng_from_seed(3);
        for d in [vec![2, 2], vec![2, 3]] {
            let n: usize = d.iter().product();
            let x: Vec<f64> = (0..2 * (n - 1)).map(|_| rng.gen_range(-4.0..4.0)).collect();
            let phi = FilterVector::from_params(&d, &x);
            assert!(FilterVector::new(d.clone(), phi.amplitudes().to_vec()).is_ok());
            assert_eq!(phi.amplitudes()[0].im, 0.0);
        }
    }

    #[test]
    fn bell_pt() {
        let bell = ComplexMatrix::projector(&bell_vector());
        assert!((min_pt_eigenvalue(&bell, [2, 2]).unwrap() + 0.5).abs() < 1e-12);
        let prod = random_state_with(&mut rng_from_seed(4), &[2]).into_matrix();
        let prod = prod.kron(&random_state_with(&mut rng_from_seed(5), &[2]).into_matrix());
        assert!(min_pt_eigenvalue(&prod, [2, 2]).unwrap() >= -1e-12);
        let bad = ComplexMatrix::from_real(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(min_pt_eigenvalue(&bad, [2, 1]).is_err());
    }

    #[test]
    fn witness_on_pseudo_isotropic() {
        let rho = pseudo_isotropic(&bell_vector(), &[2, 2], 0.05).unwrap();
        let (w, phi) = theorem1_witness(&rho, &comp()).unwrap().unwrap();
        assert_eq!((w.i, w.j, w.k, w.l), (0, 1, 0, 1));
        assert_eq!(phi, FilterVector::pair(&[2, 2], 0, 3));
        let f = filter(&rho, &comp(), &phi).unwrap();
        assert!(min_pt_eigenvalue(&f.unnormalized, [2, 2]).unwrap() < -1e-3);
    }

    #[test]
    fn no_witness_for_block_structures() {
        assert!(theorem1_witness(&cq_counterexample(), &comp()).unwrap().is_none());
        let classical = QuantumState::new(vec![2, 2], ComplexMatrix::real_diagonal(&[0.1, 0.2, 0.3, 0.4])).unwrap();
        assert!(theorem1_witness(&classical, &comp()).unwrap().is_none());
    }

    #[test]
    fn pseudo_isotropic_ends() {
        let psi = bell_vector();
        let mixed = pseudo_isotropic(&psi, &[2, 2], 0.0).unwrap();
        assert!(mixed.matrix().max_abs_diff(&ComplexMatrix::identity(4).scale(0.25)) < 1e-15);
        let pure = pseudo_isotropic(&psi, &[2, 2], 1.0).unwrap();
        assert!(pure.matrix().max_abs_diff(&ComplexMatrix::projector(&psi)) < 1e-15);
        assert!(pseudo_isotropic(&psi, &[2, 2], 1.5).is_err());
        assert!(pseudo_isotropic(&psi, &[2, 3], 0.5).is_err());
    }

    #[test]
    fn diagonal_offdiagonal_blocks() {
        assert!(has_diagonal_offdiagonal_blocks(qq_counterexample().matrix(), 1e-12).unwrap());
        assert!(has_diagonal_offdiagonal_blocks(&eq21_example(), 1e-12).unwrap());
        let bell = ComplexMatrix::projector(&bell_vector());
        assert!(!has_diagonal_offdiagonal_blocks(&bell, 1e-12).unwrap());
        assert!(has_diagonal_offdiagonal_blocks(&ComplexMatrix::identity(3), 1e-12).is_err());
    }

    #[test]
    fn pt_gap_values() {
        assert_eq!(char_poly_pt_gap(qq_counterexample().matrix()).unwrap(), 0.0);
        let real = ComplexMatrix::from_real(&[
            &[1.0, 0.3, 0.2, 0.0],
            &[0.3, 1.0, 0.0, -0.4],
            &[0.2, 0.0, 1.0, 0.5],
            &[0.0, -0.4, 0.5, 1.0],
        ])
        .unwrap();
        assert_eq!(char_poly_pt_gap(&real).unwrap(), 0.0);
        assert!((char_poly_pt_gap(&eq21_example()).unwrap() - 4.0).abs() < 1e-15);
        let bell = ComplexMatrix::projector(&bell_vector());
        assert!(matches!(char_poly_pt_gap(&bell), Err(Error::Structure(_))));
    }

    #[test]
    fn certificates() {
        assert_eq!(
            block_certificate(&cq_counterexample(), &comp(), 1e-14).unwrap(),
            Some(BlockCertificate::BlockDiagonalA)
        );
        assert_eq!(
            block_certificate(&qq_counterexample(), &comp(), 1e-14).unwrap(),
            Some(BlockCertificate::InvariantPtSpectrum)
        );
        assert_eq!(block_certificate(&eq21_normalized(), &comp(), 1e-14).unwrap(), None);
        let v = certify_swap_blocked(&qq_counterexample(), &comp(), 1e-14).unwrap().unwrap();
        assert_eq!(v.method, SwapMethod::AnalyticBlockCertificate);
        assert!(!v.npt_found);
    }

    #[test]
    fn eq21_trivial_filter() {
        let v = verdict_for_filter(&eq21_normalized(), &comp(), &FilterVector::uniform(&[2, 2])).unwrap();
        assert!(v.npt_found);
        assert_eq!(v.method, SwapMethod::FixedFilter);
    }

    #[test]
    fn search_finds_witness_for_bell() {
        let rho = QuantumState::pure(vec![2, 2], &bell_vector()).unwrap();
        let v = swap_search(&rho, &LocalBasisSet::random(&mut rng_from_seed(9), &[2, 2]), &SwapBudget::default()).unwrap();
        assert!(v.npt_found);
        assert_eq!(v.method, SwapMethod::Theorem1Witness);
    }

    #[test]
    fn random_stage_finds_block_npt_example() {
        let v = swap_search(&eq21_normalized(), &comp(), &SwapBudget::default()).unwrap();
        assert!(v.npt_found);
        assert_eq!(v.method, SwapMethod::RandomSearch);
    }
}
