//! Relative entropy of quantumness
//! `Q(ρ) = min_B S(ρ^B) − S(ρ)` over local product bases `B`, plus the
//! classical-quantum bounds: the `(1 − 1/d_A) log₂ d_B` ceiling, the
//! eigenbasis strategy behind it, the two-qubit maximality test and the
//! Maassen–Uffink lower bound.

use rand::Rng;

use crate::activation::dephased_probabilities;
use crate::error::{Error, Result};
use crate::optimize::{minimize, SimplexOptions};
use crate::statecore::basis::angle_count;
use crate::statecore::entropy::{shannon_bits, von_neumann_entropy};
use crate::statecore::eig::hermitian_eig;
use crate::statecore::matrix::{ComplexMatrix, C64};
use crate::statecore::random::{derive_seed, random_probabilities, random_state_with, random_unitary_with, rng_from_seed};
use crate::statecore::state::STATE_TOL;
use crate::statecore::{LocalBasisSet, ProbabilityVector, QuantumState};

/// Largest total dimension `compute_q` accepts.
pub const MAX_TOTAL_DIM: usize = 64;

/// Values in `[−CLIP, 0)` are reported as zero.
const CLIP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub ftol: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 50,
            max_iters: 2000,
            ftol: 1e-9,
            seed: 42,
        }
    }
}

/// Outcome of a quantumness minimization.
#[derive(Debug, Clone)]
pub struct QReport {
    pub q_value: f64,
    pub argmin_basis: LocalBasisSet,
    /// Rotation angles of `argmin_basis`, concatenated per subsystem.
    pub argmin_angles: Vec<f64>,
    pub restarts: usize,
    pub per_restart_values: Vec<f64>,
    /// Whether the restart that produced `q_value` met the `ftol` criterion.
    pub converged: bool,
    pub seed: u64,
}

fn clip(v: f64) -> f64 {
    if (-CLIP..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

fn gap_given_entropy(rho: &ComplexMatrix, basis: &LocalBasisSet, s_rho: f64) -> f64 {
    shannon_bits(&dephased_probabilities(rho, &basis.product_unitary())) - s_rho
}

/// `S(ρ^B) − S(ρ)` for one choice of local bases.
pub fn q_objective(rho: &QuantumState, basis: &LocalBasisSet) -> Result<f64> {
    basis.check_dims(rho.dims())?;
    let s = von_neumann_entropy(rho.matrix())?;
    Ok(gap_given_entropy(rho.matrix(), basis, s))
}

/// Multi-start simplex minimization of [`q_objective`] over local bases.
///
/// Restart 0 starts from the computational basis; restart `r > 0` draws its
/// starting angles from a seed derived from `cfg.seed` and `r`.
pub fn compute_q(rho: &QuantumState, cfg: &OptimizerConfig) -> Result<QReport> {
    if rho.dim() > MAX_TOTAL_DIM {
        return Err(Error::InvalidArgument(format!(
            "total dimension {} exceeds {MAX_TOTAL_DIM}",
            rho.dim()
        )));
    }
    if cfg.restarts == 0 {
        return Err(Error::InvalidArgument("at least one restart is required".into()));
    }
    let dims = rho.dims().to_vec();
    let s_rho = von_neumann_entropy(rho.matrix())?;
    let n_params: usize = dims.iter().map(|&d| angle_count(d)).sum();
    let opts = SimplexOptions {
        max_iters: cfg.max_iters,
        ftol: cfg.ftol,
        ..SimplexOptions::default()
    };
    let objective = |x: &[f64]| {
        let basis = LocalBasisSet::from_angles(&dims, x).expect("angle count");
        gap_given_entropy(rho.matrix(), &basis, s_rho)
    };

    let mut per_restart_values = Vec::with_capacity(cfg.restarts);
    let mut best: Option<(f64, Vec<f64>, bool)> = None;
    for r in 0..cfg.restarts {
        let x0: Vec<f64> = if r == 0 {
            vec![0.0; n_params]
        } else {
            let mut rng = rng_from_seed(derive_seed(cfg.seed, r as u64));
            (0..n_params)
                .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
                .collect()
        };
        let m = minimize(objective, &x0, &opts);
        let v = clip(m.value);
        per_restart_values.push(v);
        if best.as_ref().is_none_or(|(bv, _, _)| v < *bv) {
            best = Some((v, m.x, m.converged));
        }
    }
    let (q_value, argmin_angles, converged) = best.expect("at least one restart");
    let argmin_basis = LocalBasisSet::from_angles(&dims, &argmin_angles)?;
    Ok(QReport {
        q_value,
        argmin_basis,
        argmin_angles,
        restarts: cfg.restarts,
        per_restart_values,
        converged,
        seed: cfg.seed,
    })
}

/// `(1 − 1/d_A) log₂ d_B`, the ceiling on `Q` for classical-quantum states.
pub fn cq_bound(d_a: usize, d_b: usize) -> f64 {
    assert!(d_a >= 2 && d_b >= 2, "local dimensions must be at least 2");
    (1.0 - 1.0 / d_a as f64) * (d_b as f64).log2()
}

/// A classical-quantum state `Σ_i p_i |a_i><a_i| ⊗ ρ_i`.
#[derive(Debug, Clone)]
pub struct CQState {
    p: ProbabilityVector,
    blocks: Vec<ComplexMatrix>,
    /// Rows are the bras `<a_i|` of the classical basis on `A`.
    basis_a: ComplexMatrix,
}

impl CQState {
    pub fn new(p: ProbabilityVector, blocks: Vec<ComplexMatrix>, basis_a: ComplexMatrix) -> Result<Self> {
        let d_a = p.len();
        if blocks.len() != d_a || basis_a.rows() != d_a || !basis_a.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights, {} blocks, {}x{} A-basis",
                d_a,
                blocks.len(),
                basis_a.rows(),
                basis_a.cols()
            )));
        }
        if d_a < 2 {
            return Err(Error::InvalidArgument("d_A must be at least 2".into()));
        }
        if basis_a.unitarity_error() > crate::statecore::basis::UNITARY_TOL {
            return Err(Error::InvalidArgument("A-basis is not orthonormal".into()));
        }
        let d_b = blocks[0].rows();
        for b in &blocks {
            if b.rows() != d_b {
                return Err(Error::DimensionMismatch("blocks differ in size".into()));
            }
            QuantumState::new(vec![d_b], b.clone())?;
        }
        Ok(CQState { p, blocks, basis_a })
    }

    /// Random weights, random mixed blocks and a random classical basis.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, d_a: usize, d_b: usize) -> Self {
        let p = ProbabilityVector::new(random_probabilities(rng, d_a)).expect("simplex sample");
        let blocks = (0..d_a).map(|_| random_state_with(rng, &[d_b]).into_matrix()).collect();
        let basis_a = random_unitary_with(rng, d_a);
        CQState { p, blocks, basis_a }
    }

    /// Two-qubit state with pure blocks `ψ_1`, `ψ_2` and weights `(p_1, 1 − p_1)`.
    pub fn two_qubit_pure(p1: f64, psi1: &[C64], psi2: &[C64], basis_a: ComplexMatrix) -> Result<Self> {
        let p = ProbabilityVector::new(vec![p1, 1.0 - p1])?;
        let blocks = vec![ComplexMatrix::projector(psi1), ComplexMatrix::projector(psi2)];
        Self::new(p, blocks, basis_a)
    }

    pub fn weights(&self) -> &[f64] {
        self.p.as_slice()
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    pub fn basis_a(&self) -> &ComplexMatrix {
        &self.basis_a
    }

    pub fn dims(&self) -> [usize; 2] {
        [self.blocks.len(), self.blocks[0].rows()]
    }

    pub fn assemble(&self) -> QuantumState {
        let [d_a, d_b] = self.dims();
        let mut m = ComplexMatrix::zeros(d_a * d_b, d_a * d_b);
        for (i, (&p, block)) in self.weights().iter().zip(&self.blocks).enumerate() {
            let ket: Vec<C64> = self.basis_a.row(i).iter().map(|z| z.conj()).collect();
            let term = ComplexMatrix::projector(&ket).kron(block).scale(p);
            m = &m + &term;
        }
        QuantumState::from_parts(vec![d_a, d_b], m.hermitian_part())
    }

    /// Index of the largest weight, lowest index on ties.
    pub fn dominant_block(&self) -> usize {
        let w = self.weights();
        let mut m = 0;
        for (i, &x) in w.iter().enumerate() {
            if x > w[m] {
                m = i;
            }
        }
        m
    }
}

/// Upper bound on `Q` from measuring `A` in the classical basis and `B` in
/// an eigenbasis of the block with the largest weight.
pub fn cq_strategy_value(cq: &CQState) -> Result<f64> {
    let m = cq.dominant_block();
    let eig = hermitian_eig(&cq.blocks[m])?;
    let basis = LocalBasisSet::new(vec![cq.basis_a.clone(), eig.vectors.adjoint()])?;
    q_objective(&cq.assemble(), &basis)
}

/// Deviations checked by [`classify_max_cq`].
#[derive(Debug, Clone, PartialEq)]
pub struct MaxCqDiagnostics {
    pub is_maximal: bool,
    /// `|p_1 − 1/2|`.
    pub weight_deviation: f64,
    /// Largest eigenvalue of each block.
    pub purities: [f64; 2],
    /// `|<ψ_1|ψ_2>|²` between the dominant eigenvectors of the blocks.
    pub overlap_sq: f64,
}

/// Tests the two-qubit maximality conditions: equal weights, pure blocks and
/// mutually unbiased block vectors, each within `tol`.
pub fn classify_max_cq(cq: &CQState, tol: f64) -> Result<MaxCqDiagnostics> {
    if cq.dims() != [2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "maximality test is for two qubits, got {:?}",
            cq.dims()
        )));
    }
    let e1 = hermitian_eig(&cq.blocks[0])?;
    let e2 = hermitian_eig(&cq.blocks[1])?;
    let overlap_sq = crate::statecore::matrix::inner(&e1.vector(0), &e2.vector(0)).norm_sqr();
    let weight_deviation = (cq.weights()[0] - 0.5).abs();
    let purities = [e1.max(), e2.max()];
    let is_maximal = weight_deviation <= tol
        && purities.iter().all(|&l| l >= 1.0 - tol)
        && (overlap_sq - 0.5).abs() <= tol;
    Ok(MaxCqDiagnostics {
        is_maximal,
        weight_deviation,
        purities,
        overlap_sq,
    })
}

/// Qubit basis `{ψ, ψ⊥}` in bra-row form.
pub fn qubit_basis_from(psi: &[C64]) -> Result<ComplexMatrix> {
    if psi.len() != 2 {
        return Err(Error::DimensionMismatch("expected a qubit vector".into()));
    }
    let n = crate::statecore::matrix::vec_norm(psi);
    if (n - 1.0).abs() > STATE_TOL {
        return Err(Error::InvalidArgument(format!("vector norm {n} is not 1")));
    }
    // ψ⊥ = (−conj ψ_1, conj ψ_0); bras are conjugated kets
    let perp = [-psi[1].conj(), psi[0].conj()];
    ComplexMatrix::from_rows(&[
        psi.iter().map(|z| z.conj()).collect(),
        perp.iter().map(|z| z.conj()).collect(),
    ])
}

/// `−log₂ c` with `c` the largest overlap `|<φ_1|φ_2>|` between vectors of
/// the two qubit bases (rows are bras). Lower-bounds `Q` for equal-weight
/// pure-block CQ states whose blocks define the bases.
pub fn maassen_uffink_bound(b1: &ComplexMatrix, b2: &ComplexMatrix) -> Result<f64> {
    for b in [b1, b2] {
        if b.rows() != 2 || b.cols() != 2 {
            return Err(Error::DimensionMismatch("expected 2x2 qubit bases".into()));
        }
        if b.unitarity_error() > crate::statecore::basis::UNITARY_TOL {
            return Err(Error::InvalidArgument("basis is not orthonormal".into()));
        }
    }
    let mut c: f64 = 0.0;
    for k in 0..2 {
        for l in 0..2 {
            let ov: C64 = b1.row(k).iter().zip(b2.row(l)).map(|(x, y)| x * y.conj()).sum();
            c = c.max(ov.norm());
        }
    }
    Ok((-c.min(1.0).log2()).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::activation::dephase;
    use crate::statecore::matrix::{ONE, ZERO};
    use crate::statecore::random::random_state;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn plus() -> Vec<C64> {
        vec![C64::new(H, 0.0), C64::new(H, 0.0)]
    }

    fn zero() -> Vec<C64> {
        vec![ONE, ZERO]
    }

    fn cq_half() -> CQState {
        CQState::two_qubit_pure(0.5, &zero(), &plus(), ComplexMatrix::identity(2)).unwrap()
    }

    #[test]
    fn objective_matches_dephased_entropy() {
        let rho = random_state(&[2, 3], 3);
        let basis = LocalBasisSet::random(&mut rng_from_seed(1), &[2, 3]);
        let direct = von_neumann_entropy(dephase(&rho, &basis).unwrap().matrix()).unwrap()
            - von_neumann_entropy(rho.matrix()).unwrap();
        assert!((q_objective(&rho, &basis).unwrap() - direct).abs() < 1e-10);
    }

    #[test]
    fn objective_examples() {
        let classical = QuantumState::new(vec![2, 2], ComplexMatrix::real_diagonal(&[0.1, 0.2, 0.3, 0.4])).unwrap();
        let comp = LocalBasisSet::computational(&[2, 2]);
        assert!(q_objective(&classical, &comp).unwrap().abs() < 1e-12);

        let bell = QuantumState::pure(vec![2, 2], &[C64::new(H, 0.0), ZERO, ZERO, C64::new(H, 0.0)]).unwrap();
        assert!((q_objective(&bell, &comp).unwrap() - 1.0).abs() < 1e-12);

        // B measured in {|+>, |->}: block |0> dephases to (1/2, 1/2), block |+> stays pure
        let basis = LocalBasisSet::from_kets(&[
            ComplexMatrix::identity(2),
            ComplexMatrix::from_real(&[&[H, H], &[H, -H]]).unwrap(),
        ])
        .unwrap();
        assert!((q_objective(&cq_half().assemble(), &basis).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn bound_values() {
        assert_eq!(cq_bound(2, 2), 0.5);
        assert!((cq_bound(2, 3) - 0.792_481_250_360_578_1).abs() < 1e-12);
        let mut prev = 0.0;
        for d_a in 2..50 {
            let b = cq_bound(d_a, 2);
            assert!(b > prev && b < 1.0);
            prev = b;
        }
    }

    #[test]
    fn strategy_examples() {
        assert!((cq_strategy_value(&cq_half()).unwrap() - 0.5).abs() < 1e-12);
        let block = random_state(&[2], 4).into_matrix();
        let same = CQState::new(
            ProbabilityVector::new(vec![0.3, 0.7]).unwrap(),
            vec![block.clone(), block],
            ComplexMatrix::identity(2),
        )
        .unwrap();
        assert!(cq_strategy_value(&same).unwrap().abs() < 1e-12);
    }

    #[test]
    fn classification() {
        assert!(classify_max_cq(&cq_half(), 1e-9).unwrap().is_maximal);
        let skew = CQState::two_qubit_pure(0.6, &zero(), &plus(), ComplexMatrix::identity(2)).unwrap();
        let d = classify_max_cq(&skew, 1e-9).unwrap();
        assert!(!d.is_maximal);
        assert!((d.weight_deviation - 0.1).abs() < 1e-12);
        let orth = CQState::two_qubit_pure(0.5, &zero(), &[ZERO, ONE], ComplexMatrix::identity(2)).unwrap();
        let d = classify_max_cq(&orth, 1e-9).unwrap();
        assert!(!d.is_maximal);
        assert!(d.overlap_sq.abs() < 1e-12);
        let big = CQState::random(&mut rng_from_seed(2), 3, 2);
        assert!(classify_max_cq(&big, 1e-9).is_err());
    }

    #[test]
    fn maassen_uffink() {
        let comp = ComplexMatrix::identity(2);
        let had = ComplexMatrix::from_real(&[&[H, H], &[H, -H]]).unwrap();
        assert!((maassen_uffink_bound(&comp, &had).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(maassen_uffink_bound(&comp, &comp).unwrap(), 0.0);
        let (c, s) = (0.8f64.sqrt(), 0.2f64.sqrt());
        let tilted = ComplexMatrix::from_real(&[&[c, s], &[-s, c]]).unwrap();
        let v = maassen_uffink_bound(&comp, &tilted).unwrap();
        assert!((v - (-0.8f64.sqrt().log2())).abs() < 1e-12);
        assert!((v - 0.160_964).abs() < 1e-6);
    }

    #[test]
    fn basis_from_vector() {
        let psi = crate::statecore::random::random_pure(2, 3);
        let b = qubit_basis_from(&psi).unwrap();
        assert!(b.unitarity_error() < 1e-14);
    }

    #[test]
    fn q_of_small_examples() {
        let cfg = OptimizerConfig {
            restarts: 8,
            ..Default::default()
        };
        let r = compute_q(&cq_half().assemble(), &cfg).unwrap();
        assert!((r.q_value - 0.5).abs() < 1e-3, "{}", r.q_value);
        let again = q_objective(&cq_half().assemble(), &r.argmin_basis).unwrap();
        assert_eq!(clip(again), r.q_value);
        assert_eq!(r.per_restart_values.len(), 8);
        let min = r.per_restart_values.iter().cloned().fold(f64::INFINITY, f64::min);
        assert_eq!(min, r.q_value);
    }

    #[test]
    fn q_rejects_oversized() {
        let rho = QuantumState::new(vec![5, 13], ComplexMatrix::identity(65).scale(1.0 / 65.0)).unwrap();
        assert!(compute_q(&rho, &OptimizerConfig::default()).is_err());
    }
}
