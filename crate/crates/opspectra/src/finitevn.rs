//! Finite direct sums of full matrix algebras, the matrix model of a
//! finite von Neumann algebra.
//!
//! A [`BlockAlgebra`] with block dimensions `(n_1, ..., n_m)` models the
//! algebra `M_{n_1} (+) ... (+) M_{n_m}`; its center consists of
//! `m`-tuples of scalars, and the per-block normalized trace is the
//! center-valued trace. Projections compare through the dimension
//! function `Delta` (per-block `rank / n_i`): two projections are
//! equivalent exactly when their per-block ranks agree, witnessed by a
//! partial isometry built from orthonormal range bases.
//!
//! Every experiment here is a finite shadow: what the trace identities
//! verify at this scale is exactly per-block trace cyclicity, and the
//! module makes no stronger claim about honestly infinite-dimensional
//! algebras.

use num_complex::Complex64 as C64;

use crate::numkernel::CMat;
use crate::spectral::{hermitian_eigen, null_projection_with_floor, range_projection_with_floor};
use crate::{OpError, Result};

/// Absolute floor for rank decisions on computed products of elements at
/// the given scale: anything below rounding noise counts as zero.
fn rank_noise_floor(dim: usize, scale: f64) -> f64 {
    32.0 * f64::EPSILON * dim as f64 * scale.max(1.0)
}

/// Block dimensions of a finite direct sum of full matrix algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockAlgebra {
    block_dims: Vec<usize>,
}

impl BlockAlgebra {
    pub fn new(block_dims: Vec<usize>) -> Result<Self> {
        if block_dims.is_empty() || block_dims.contains(&0) {
            return Err(OpError::InvalidInput(
                "block dimensions must be a nonempty list of positive sizes".into(),
            ));
        }
        Ok(Self { block_dims })
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    pub fn block_count(&self) -> usize {
        self.block_dims.len()
    }

    pub fn identity(&self) -> BlockElement {
        BlockElement {
            algebra: self.clone(),
            blocks: self.block_dims.iter().map(|&n| CMat::identity(n)).collect(),
        }
    }

    pub fn zero(&self) -> BlockElement {
        BlockElement {
            algebra: self.clone(),
            blocks: self.block_dims.iter().map(|&n| CMat::zeros(n, n)).collect(),
        }
    }

    pub fn element(&self, blocks: Vec<CMat>) -> Result<BlockElement> {
        if blocks.len() != self.block_dims.len()
            || blocks
                .iter()
                .zip(&self.block_dims)
                .any(|(b, &n)| b.rows() != n || b.cols() != n)
        {
            return Err(OpError::ShapeMismatch(format!(
                "blocks {:?} do not match algebra dimensions {:?}",
                blocks.iter().map(|b| (b.rows(), b.cols())).collect::<Vec<_>>(),
                self.block_dims
            )));
        }
        Ok(BlockElement {
            algebra: self.clone(),
            blocks,
        })
    }
}

/// An element of a [`BlockAlgebra`]: one square matrix per block.
#[derive(Debug, Clone)]
pub struct BlockElement {
    algebra: BlockAlgebra,
    blocks: Vec<CMat>,
}

impl BlockElement {
    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    fn check_same_algebra(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(OpError::ShapeMismatch(format!(
                "algebra mismatch: {:?} vs {:?}",
                self.algebra.block_dims, other.algebra.block_dims
            )));
        }
        Ok(())
    }

    fn zip_blocks(
        &self,
        other: &Self,
        f: impl Fn(&CMat, &CMat) -> Result<CMat>,
    ) -> Result<Self> {
        self.check_same_algebra(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            algebra: self.algebra.clone(),
            blocks,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a.sub(b))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a.matmul(b))
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a.commutator(b))
    }

    pub fn adjoint(&self) -> Self {
        Self {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    pub fn scale(&self, a: C64) -> Self {
        Self {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(a)).collect(),
        }
    }

    /// Largest per-block operator norm.
    pub fn norm(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| b.operator_norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        self.algebra == other.algebra
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a.approx_eq(b, tolerance))
    }

    /// Per-block rank, reading eigenvalues above 1/2 as 1.
    ///
    /// Meaningful for (near-)projections, where eigenvalues cluster at
    /// 0 and 1.
    pub fn projection_ranks(&self) -> Result<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| {
                let eig = hermitian_eigen(b)?;
                Ok(eig.eigenvalues.iter().filter(|&&l| l > 0.5).count())
            })
            .collect()
    }

    fn check_projection(&self) -> Result<()> {
        for (idx, b) in self.blocks.iter().enumerate() {
            let scale = b.max_abs().max(1.0);
            let idem = b.matmul(b)?.sub(b)?.max_abs();
            let herm = b.hermitian_deviation()?;
            if idem > 1e-9 * scale || herm > 1e-9 * scale {
                return Err(OpError::InvalidInput(format!(
                    "block {idx} is not a projection: idempotency defect {idem:.3e}, adjointness defect {herm:.3e}"
                )));
            }
        }
        Ok(())
    }
}

/// Center element: one scalar per block.
#[derive(Debug, Clone)]
pub struct CenterElement {
    pub scalars: Vec<C64>,
}

impl CenterElement {
    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        self.scalars.len() == other.scalars.len()
            && self
                .scalars
                .iter()
                .zip(&other.scalars)
                .all(|(a, b)| (a - b).norm() <= tolerance)
    }

    pub fn max_abs(&self) -> f64 {
        self.scalars.iter().map(|s| s.norm()).fold(0.0, f64::max)
    }

    /// Entrywise `self <= other + slack` on the real parts.
    pub fn le_entrywise(&self, other: &Self, slack: f64) -> bool {
        self.scalars
            .iter()
            .zip(&other.scalars)
            .all(|(a, b)| a.re <= b.re + slack)
    }
}

/// The center-valued trace: per-block normalized trace. Tracial
/// (`tau(xy) = tau(yx)`), positive (`tau(x*x) >= 0` entrywise), and
/// `tau(I) = (1, ..., 1)`.
pub fn center_valued_trace(x: &BlockElement) -> CenterElement {
    CenterElement {
        scalars: x
            .blocks
            .iter()
            .map(|b| b.normalized_trace().expect("blocks are square"))
            .collect(),
    }
}

/// The dimension function on projections: `Delta(E) = tau(E)`, computed
/// as per-block `rank / n`. Rejects non-projections.
pub fn dimension_function(e: &BlockElement) -> Result<CenterElement> {
    e.check_projection()?;
    let ranks = e.projection_ranks()?;
    Ok(CenterElement {
        scalars: ranks
            .iter()
            .zip(e.algebra.block_dims())
            .map(|(&r, &n)| C64::new(r as f64 / n as f64, 0.0))
            .collect(),
    })
}

fn orthonormal_range_basis(p: &CMat) -> Result<Vec<Vec<C64>>> {
    let eig = hermitian_eigen(p)?;
    let n = p.rows();
    let mut basis = Vec::new();
    for (idx, &l) in eig.eigenvalues.iter().enumerate() {
        if l > 0.5 {
            basis.push((0..n).map(|r| eig.basis.at(r, idx)).collect());
        }
    }
    Ok(basis)
}

/// Partial isometry `V` with `V*V = E` and `VV* = F`, or a rank-mismatch
/// failure naming the offending block. Succeeds exactly when the
/// per-block ranks agree.
pub fn equivalence_witness(e: &BlockElement, f: &BlockElement) -> Result<BlockElement> {
    e.check_same_algebra(f)?;
    e.check_projection()?;
    f.check_projection()?;
    let ranks_e = e.projection_ranks()?;
    let ranks_f = f.projection_ranks()?;
    for (block, (&re, &rf)) in ranks_e.iter().zip(&ranks_f).enumerate() {
        if re != rf {
            return Err(OpError::RankMismatch {
                block,
                left: re,
                right: rf,
            });
        }
    }
    let blocks = e
        .blocks
        .iter()
        .zip(&f.blocks)
        .map(|(eb, fb)| {
            let e_basis = orthonormal_range_basis(eb)?;
            let f_basis = orthonormal_range_basis(fb)?;
            let n = eb.rows();
            // V = sum_i |f_i><e_i| maps the range of E onto the range of F.
            let mut v = CMat::zeros(n, n);
            for (ei, fi) in e_basis.iter().zip(&f_basis) {
                let outer = CMat::from_fn(n, n, |r, c| fi[r] * ei[c].conj());
                v = v.add(&outer)?;
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    e.algebra.element(blocks)
}

/// Witness for `I - E ~ I - F`, available whenever `E ~ F` (complement
/// ranks match automatically in the matrix model). Propagates the
/// equivalence failure otherwise.
pub fn complement_equivalence(e: &BlockElement, f: &BlockElement) -> Result<BlockElement> {
    // Surface the E ~ F obstruction first.
    let _ = equivalence_witness(e, f)?;
    let identity = e.algebra.identity();
    equivalence_witness(&identity.sub(e)?, &identity.sub(f)?)
}

/// Join and meet of two projections: the join is the range projection of
/// `E + F`, and the meet is the complement of the join of the
/// complements. Both satisfy
/// `Delta(E v F) + Delta(E ^ F) = Delta(E) + Delta(F)`.
pub fn lattice_ops(e: &BlockElement, f: &BlockElement) -> Result<(BlockElement, BlockElement)> {
    e.check_same_algebra(f)?;
    e.check_projection()?;
    f.check_projection()?;
    let join_blocks = e
        .blocks
        .iter()
        .zip(&f.blocks)
        .map(|(eb, fb)| {
            range_projection_with_floor(&eb.add(fb)?, rank_noise_floor(eb.rows(), 1.0))
        })
        .collect::<Result<Vec<_>>>()?;
    let join = e.algebra.element(join_blocks)?;

    let identity = e.algebra.identity();
    let ce = identity.sub(e)?;
    let cf = identity.sub(f)?;
    let meet_blocks = ce
        .blocks
        .iter()
        .zip(&cf.blocks)
        .map(|(eb, fb)| {
            let join_c =
                range_projection_with_floor(&eb.add(fb)?, rank_noise_floor(eb.rows(), 1.0))?;
            CMat::identity(join_c.rows()).sub(&join_c)
        })
        .collect::<Result<Vec<_>>>()?;
    let meet = e.algebra.element(meet_blocks)?;
    Ok((join, meet))
}

/// Outcome of [`domain_pullback_projection`]: the projection `F` onto
/// `{x : Tx in range(E)}` together with the dimension comparison
/// `Delta(E) <= Delta(F)`.
#[derive(Debug, Clone)]
pub struct PullbackReport {
    pub delta_e: CenterElement,
    pub delta_f: CenterElement,
    pub comparison_holds: bool,
}

/// The projection onto `{x : Tx in range(E)}`, computed per block as the
/// null projection of `(I - E)T`, with the dimension comparison report.
pub fn domain_pullback_projection(
    t: &BlockElement,
    e: &BlockElement,
) -> Result<(BlockElement, PullbackReport)> {
    t.check_same_algebra(e)?;
    e.check_projection()?;
    let identity = e.algebra.identity();
    let blocks = identity
        .sub(e)?
        .blocks
        .iter()
        .zip(&t.blocks)
        .map(|(ce, tb)| {
            let floor = rank_noise_floor(tb.rows(), tb.operator_norm());
            null_projection_with_floor(&ce.matmul(tb)?, floor)
        })
        .collect::<Result<Vec<_>>>()?;
    let f = e.algebra.element(blocks)?;
    let delta_e = dimension_function(e)?;
    let delta_f = dimension_function(&f)?;
    let comparison_holds = delta_e.le_entrywise(&delta_f, 1e-9);
    Ok((
        f,
        PullbackReport {
            delta_e,
            delta_f,
            comparison_holds,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_cmat(rng: &mut ChaCha12Rng, n: usize) -> CMat {
        CMat::from_fn(n, n, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    fn random_element(rng: &mut ChaCha12Rng, alg: &BlockAlgebra) -> BlockElement {
        let blocks = alg
            .block_dims()
            .iter()
            .map(|&n| random_cmat(rng, n))
            .collect();
        alg.element(blocks).unwrap()
    }

    fn random_self_adjoint(rng: &mut ChaCha12Rng, alg: &BlockAlgebra) -> BlockElement {
        let x = random_element(rng, alg);
        x.add(&x.adjoint()).unwrap().scale(c(0.5, 0.0))
    }

    /// Projection of a given rank per block, from a random eigenbasis.
    fn random_projection(rng: &mut ChaCha12Rng, alg: &BlockAlgebra, ranks: &[usize]) -> BlockElement {
        let blocks = alg
            .block_dims()
            .iter()
            .zip(ranks)
            .map(|(&n, &r)| {
                let h = {
                    let a = random_cmat(rng, n);
                    a.add(&a.adjoint()).unwrap().scale(c(0.5, 0.0))
                };
                let eig = hermitian_eigen(&h).unwrap();
                let mut p = CMat::zeros(n, n);
                for idx in 0..r {
                    p = p.add(&eig.eigenprojection(idx)).unwrap();
                }
                p
            })
            .collect();
        alg.element(blocks).unwrap()
    }

    #[test]
    fn trace_of_identity_and_hand_case() {
        let alg = BlockAlgebra::new(vec![2, 3]).unwrap();
        let tau_i = center_valued_trace(&alg.identity());
        assert!(tau_i.approx_eq(
            &CenterElement {
                scalars: vec![c(1.0, 0.0), c(1.0, 0.0)]
            },
            1e-12
        ));

        let x = alg
            .element(vec![CMat::unit(2, 0, 0), CMat::identity(3)])
            .unwrap();
        let tau = center_valued_trace(&x);
        assert!(tau.approx_eq(
            &CenterElement {
                scalars: vec![c(0.5, 0.0), c(1.0, 0.0)]
            },
            1e-12
        ));
    }

    #[test]
    fn trace_is_tracial_positive_faithful() {
        let mut rng = ChaCha12Rng::seed_from_u64(201);
        let alg = BlockAlgebra::new(vec![2, 3, 4]).unwrap();
        for _ in 0..20 {
            let x = random_element(&mut rng, &alg);
            let y = random_element(&mut rng, &alg);
            let txy = center_valued_trace(&x.mul(&y).unwrap());
            let tyx = center_valued_trace(&y.mul(&x).unwrap());
            assert!(txy.approx_eq(&tyx, 1e-9));

            let comm = center_valued_trace(&x.commutator(&y).unwrap());
            assert!(comm.max_abs() <= 1e-9);

            let pos = center_valued_trace(&x.adjoint().mul(&x).unwrap());
            for s in &pos.scalars {
                assert!(s.re >= 0.0 && s.im.abs() < 1e-10);
                // Faithfulness at this scale: random blocks are nonzero.
                assert!(s.re > 1e-6);
            }
        }
    }

    #[test]
    fn dimension_function_cases() {
        let alg = BlockAlgebra::new(vec![2, 3]).unwrap();
        let zero = alg.zero();
        assert!(dimension_function(&zero).unwrap().approx_eq(
            &CenterElement {
                scalars: vec![c(0.0, 0.0), c(0.0, 0.0)]
            },
            1e-12
        ));

        let mut rng = ChaCha12Rng::seed_from_u64(203);
        let e = random_projection(&mut rng, &alg, &[1, 2]);
        let delta = dimension_function(&e).unwrap();
        assert!(delta.approx_eq(
            &CenterElement {
                scalars: vec![c(0.5, 0.0), c(2.0 / 3.0, 0.0)]
            },
            1e-9
        ));

        // Complement rule.
        let delta_c = dimension_function(&alg.identity().sub(&e).unwrap()).unwrap();
        for (a, b) in delta.scalars.iter().zip(&delta_c.scalars) {
            assert!((a.re + b.re - 1.0).abs() < 1e-9);
        }

        // Non-projections are rejected.
        let x = random_element(&mut rng, &alg);
        assert!(dimension_function(&x).is_err());
    }

    #[test]
    fn equivalence_witness_cases() {
        let alg = BlockAlgebra::new(vec![2]).unwrap();
        let e = alg.element(vec![CMat::unit(2, 0, 0)]).unwrap();
        let f = alg.element(vec![CMat::unit(2, 1, 1)]).unwrap();
        let v = equivalence_witness(&e, &f).unwrap();
        assert!(v.adjoint().mul(&v).unwrap().approx_eq(&e, 1e-9));
        assert!(v.mul(&v.adjoint()).unwrap().approx_eq(&f, 1e-9));

        // E = F: the witness closes on E itself.
        let v = equivalence_witness(&e, &e).unwrap();
        assert!(v.adjoint().mul(&v).unwrap().approx_eq(&e, 1e-9));
        assert!(v.mul(&v.adjoint()).unwrap().approx_eq(&e, 1e-9));

        // Rank obstruction names the block.
        let alg2 = BlockAlgebra::new(vec![2, 3]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(205);
        let e = random_projection(&mut rng, &alg2, &[1, 1]);
        let f = random_projection(&mut rng, &alg2, &[1, 2]);
        match equivalence_witness(&e, &f) {
            Err(OpError::RankMismatch { block, left, right }) => {
                assert_eq!((block, left, right), (1, 1, 2));
            }
            other => panic!("expected rank mismatch, got {other:?}"),
        }
    }

    #[test]
    fn complement_equivalence_cases() {
        let alg = BlockAlgebra::new(vec![3]).unwrap();
        let zero = alg.zero();
        let v = complement_equivalence(&zero, &zero).unwrap();
        // Complements are the identity; any unitary witness works, and
        // the defining relations pin it down.
        assert!(v
            .adjoint()
            .mul(&v)
            .unwrap()
            .approx_eq(&alg.identity(), 1e-9));

        let mut rng = ChaCha12Rng::seed_from_u64(207);
        let e = random_projection(&mut rng, &alg, &[1]);
        let f = random_projection(&mut rng, &alg, &[1]);
        let v = complement_equivalence(&e, &f).unwrap();
        let identity = alg.identity();
        assert!(v
            .adjoint()
            .mul(&v)
            .unwrap()
            .approx_eq(&identity.sub(&e).unwrap(), 1e-9));
        assert!(v
            .mul(&v.adjoint())
            .unwrap()
            .approx_eq(&identity.sub(&f).unwrap(), 1e-9));

        let g = random_projection(&mut rng, &alg, &[2]);
        assert!(matches!(
            complement_equivalence(&e, &g),
            Err(OpError::RankMismatch { .. })
        ));
    }

    #[test]
    fn lattice_ordered_and_orthogonal_cases() {
        let alg = BlockAlgebra::new(vec![3]).unwrap();
        // E <= F: join = F, meet = E.
        let e = alg.element(vec![CMat::diag_real(&[1.0, 0.0, 0.0])]).unwrap();
        let f = alg.element(vec![CMat::diag_real(&[1.0, 1.0, 0.0])]).unwrap();
        let (join, meet) = lattice_ops(&e, &f).unwrap();
        assert!(join.approx_eq(&f, 1e-8));
        assert!(meet.approx_eq(&e, 1e-8));

        // Orthogonal: join = E + F, meet = 0.
        let g = alg.element(vec![CMat::diag_real(&[0.0, 0.0, 1.0])]).unwrap();
        let (join, meet) = lattice_ops(&e, &g).unwrap();
        assert!(join.approx_eq(&e.add(&g).unwrap(), 1e-8));
        assert!(meet.approx_eq(&alg.zero(), 1e-8));
    }

    #[test]
    fn lattice_dimension_identity_random() {
        let mut rng = ChaCha12Rng::seed_from_u64(209);
        let alg = BlockAlgebra::new(vec![4]).unwrap();
        for _ in 0..10 {
            let ranks_e = [rng.gen_range(0..=4usize)];
            let ranks_f = [rng.gen_range(0..=4usize)];
            let e = random_projection(&mut rng, &alg, &ranks_e);
            let f = random_projection(&mut rng, &alg, &ranks_f);
            let (join, meet) = lattice_ops(&e, &f).unwrap();
            for p in [&join, &meet] {
                for b in p.blocks() {
                    assert!(b.matmul(b).unwrap().approx_eq(b, 1e-8));
                    assert!(b.adjoint().approx_eq(b, 1e-8));
                }
            }
            let lhs = dimension_function(&join).unwrap().scalars[0]
                + dimension_function(&meet).unwrap().scalars[0];
            let rhs = dimension_function(&e).unwrap().scalars[0]
                + dimension_function(&f).unwrap().scalars[0];
            assert!((lhs - rhs).norm() <= 1e-8);

            // Rank oracle: rank(E v F) is the rank of the stacked [E F].
            let eb = &e.blocks()[0];
            let fb = &f.blocks()[0];
            let stacked = CMat::from_fn(4, 8, |r, col| {
                if col < 4 {
                    eb.at(r, col)
                } else {
                    fb.at(r, col - 4)
                }
            });
            let gram = stacked.matmul(&stacked.adjoint()).unwrap();
            let eig = hermitian_eigen(&gram).unwrap();
            let rank = eig.eigenvalues.iter().filter(|&&l| l > 1e-9).count();
            assert_eq!(join.projection_ranks().unwrap()[0], rank);
        }
    }

    #[test]
    fn pullback_projection_cases() {
        let alg = BlockAlgebra::new(vec![2]).unwrap();
        // Invertible T with E = I.
        let t = alg
            .element(vec![CMat::from_real(2, 2, &[2.0, 1.0, 0.0, 1.0]).unwrap()])
            .unwrap();
        let (f, report) = domain_pullback_projection(&t, &alg.identity()).unwrap();
        assert!(f.approx_eq(&alg.identity(), 1e-9));
        assert!(report.comparison_holds);

        // T = 0: everything pulls back.
        let mut rng = ChaCha12Rng::seed_from_u64(211);
        let e = random_projection(&mut rng, &alg, &[1]);
        let (f, report) = domain_pullback_projection(&alg.zero(), &e).unwrap();
        assert!(f.approx_eq(&alg.identity(), 1e-9));
        assert!(report.comparison_holds);

        // T = E12, E = E11: (I - E)T = 0, so F = I and Delta(E) = 1/2 <= 1.
        let t = alg.element(vec![CMat::unit(2, 0, 1)]).unwrap();
        let e = alg.element(vec![CMat::unit(2, 0, 0)]).unwrap();
        let (f, report) = domain_pullback_projection(&t, &e).unwrap();
        assert!(f.approx_eq(&alg.identity(), 1e-9));
        assert!((report.delta_e.scalars[0].re - 0.5).abs() < 1e-12);
        assert!((report.delta_f.scalars[0].re - 1.0).abs() < 1e-12);
        assert!(report.comparison_holds);
    }

    #[test]
    fn pullback_dimension_comparison_random() {
        let mut rng = ChaCha12Rng::seed_from_u64(213);
        let alg = BlockAlgebra::new(vec![2, 3]).unwrap();
        for _ in 0..20 {
            let ranks = [rng.gen_range(0..=2usize), rng.gen_range(0..=3usize)];
            let e = random_projection(&mut rng, &alg, &ranks);
            let t = random_element(&mut rng, &alg);
            let (_, report) = domain_pullback_projection(&t, &e).unwrap();
            assert!(report.comparison_holds);
        }
    }

    #[test]
    fn commutator_trace_vanishes_for_self_adjoint_pairs() {
        let mut rng = ChaCha12Rng::seed_from_u64(215);
        let alg = BlockAlgebra::new(vec![2, 3, 4]).unwrap();
        for _ in 0..20 {
            let p = random_self_adjoint(&mut rng, &alg);
            let q = random_self_adjoint(&mut rng, &alg);
            let comm = p.commutator(&q).unwrap();
            assert!(center_valued_trace(&comm).max_abs() <= 1e-9);

            // Hence the commutator misses every nonzero scalar by at
            // least that scalar.
            for a in [0.5, -1.0, 2.0] {
                let shift = comm.sub(&alg.identity().scale(c(a, 0.0))).unwrap();
                assert!(shift.norm() >= a.abs() * (1.0 - 1e-9));
            }

            // Adjoint form of the same obstruction.
            let x = random_element(&mut rng, &alg);
            let defect = x
                .adjoint()
                .mul(&x)
                .unwrap()
                .sub(&x.mul(&x.adjoint()).unwrap())
                .unwrap();
            assert!(center_valued_trace(&defect).max_abs() <= 1e-10 * x.norm().powi(2).max(1.0));
        }
    }

    #[test]
    fn additivity_on_orthogonal_projections() {
        let alg = BlockAlgebra::new(vec![4]).unwrap();
        let e = alg
            .element(vec![CMat::diag_real(&[1.0, 1.0, 0.0, 0.0])])
            .unwrap();
        let f = alg
            .element(vec![CMat::diag_real(&[0.0, 0.0, 1.0, 0.0])])
            .unwrap();
        let sum = dimension_function(&e.add(&f).unwrap()).unwrap();
        let expect = dimension_function(&e).unwrap().scalars[0]
            + dimension_function(&f).unwrap().scalars[0];
        assert!((sum.scalars[0] - expect).norm() < 1e-12);
    }
}
