//! Block-algebra experiments: the projection-lattice dimension identity
//! and the center-valued trace properties.

use num_complex::Complex64 as C64;
use opspectra::finitevn::{
    center_valued_trace, dimension_function, lattice_ops, BlockAlgebra, BlockElement,
};
use opspectra::numkernel::CMat;
use opspectra::spectral::hermitian_eigen;
use opspectra::Result;
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use serde_json::json;

use crate::output::{CsvTable, Report};
use crate::rng::{random_cmat, rng_for};

fn random_element(rng: &mut ChaCha12Rng, alg: &BlockAlgebra) -> Result<BlockElement> {
    alg.element(
        alg.block_dims()
            .iter()
            .map(|&n| random_cmat(rng, n))
            .collect(),
    )
}

fn random_projection(rng: &mut ChaCha12Rng, alg: &BlockAlgebra) -> Result<BlockElement> {
    let blocks = alg
        .block_dims()
        .iter()
        .map(|&n| {
            let rank = rng.gen_range(0..=n);
            let a = random_cmat(rng, n);
            let h = a.add(&a.adjoint())?.scale(C64::new(0.5, 0.0));
            let eig = hermitian_eigen(&h)?;
            let mut p = CMat::zeros(n, n);
            for idx in 0..rank {
                p = p.add(&eig.eigenprojection(idx))?;
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    alg.element(blocks)
}

/// Join/meet dimension identity over seeded projection pairs.
pub fn vn_lattice(blocks: &[usize], draws: usize, seed: u64) -> Result<(Report, Option<CsvTable>)> {
    let alg = BlockAlgebra::new(blocks.to_vec())?;
    let mut rng = rng_for(seed, "vn-lattice");
    let mut worst = 0.0_f64;
    for _ in 0..draws {
        let e = random_projection(&mut rng, &alg)?;
        let f = random_projection(&mut rng, &alg)?;
        let (join, meet) = lattice_ops(&e, &f)?;
        let dj = dimension_function(&join)?;
        let dm = dimension_function(&meet)?;
        let de = dimension_function(&e)?;
        let df = dimension_function(&f)?;
        for i in 0..alg.block_count() {
            let gap = ((dj.scalars[i] + dm.scalars[i]) - (de.scalars[i] + df.scalars[i])).norm();
            worst = worst.max(gap);
        }
    }
    let report = Report {
        experiment: "vn-lattice",
        config: json!({"blocks": blocks, "draws": draws, "seed": seed}),
        results: json!({"worst_dimension_identity_gap": worst}),
        tolerances: json!({"dimension_identity_gap": 1e-8}),
        verdict: worst <= 1e-8,
    };
    Ok((report, None))
}

/// Center-valued trace properties over seeded elements: traciality,
/// positivity, normalization, and the commutator obstruction.
pub fn vn_trace(blocks: &[usize], draws: usize, seed: u64) -> Result<(Report, Option<CsvTable>)> {
    let alg = BlockAlgebra::new(blocks.to_vec())?;
    let mut rng = rng_for(seed, "vn-trace");
    let identity_trace = center_valued_trace(&alg.identity());
    let mut verdict = identity_trace
        .scalars
        .iter()
        .all(|s| (s - C64::new(1.0, 0.0)).norm() <= 1e-12);
    let mut worst_cyclicity = 0.0_f64;
    let mut worst_commutator = 0.0_f64;
    let mut min_positivity = f64::INFINITY;
    for _ in 0..draws {
        let x = random_element(&mut rng, &alg)?;
        let y = random_element(&mut rng, &alg)?;
        let txy = center_valued_trace(&x.mul(&y)?);
        let tyx = center_valued_trace(&y.mul(&x)?);
        for (a, b) in txy.scalars.iter().zip(&tyx.scalars) {
            worst_cyclicity = worst_cyclicity.max((a - b).norm());
        }
        for s in center_valued_trace(&x.adjoint().mul(&x)?).scalars {
            min_positivity = min_positivity.min(s.re);
        }
        let sa = |z: &BlockElement| z.add(&z.adjoint()).map(|w| w.scale(C64::new(0.5, 0.0)));
        let p = sa(&x)?;
        let q = sa(&y)?;
        worst_commutator =
            worst_commutator.max(center_valued_trace(&p.commutator(&q)?).max_abs());
    }
    verdict &= worst_cyclicity <= 1e-9 && worst_commutator <= 1e-9 && min_positivity >= -1e-12;
    let report = Report {
        experiment: "vn-trace",
        config: json!({"blocks": blocks, "draws": draws, "seed": seed}),
        results: json!({
            "worst_cyclicity_gap": worst_cyclicity,
            "worst_commutator_trace": worst_commutator,
            "min_positivity": min_positivity,
        }),
        tolerances: json!({
            "cyclicity": 1e-9,
            "commutator_trace": 1e-9,
            "positivity_floor": -1e-12,
        }),
        verdict,
    };
    Ok((report, None))
}
