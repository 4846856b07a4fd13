//! Bottom spectral components of two planted partitions: eigenvalue and
//! eigenvector drift, with and without sign alignment, and the common gap.

use gfstab::graph::unnormalized_laplacian;
use gfstab::random_models::{rewire_sbm, sample_ppm, PpmParams};
use gfstab::spectral::{
    eigh, spectral_gap_interval, spectral_norm, structural_terms_with, SignAlignment,
};

fn main() -> gfstab::Result<()> {
    let ppm = PpmParams::log_scaled(300, 2, 13.0, 2.0)?;
    let g = sample_ppm(&ppm, 1)?;
    let ghat = rewire_sbm(&g, &ppm.to_sbm()?, 0.9, 2)?;
    let l = unnormalized_laplacian(&g);
    let lhat = unnormalized_laplacian(&ghat);

    let start = std::time::Instant::now();
    let e = eigh(&l)?;
    let ehat = eigh(&lhat)?;
    println!("two 300x300 decompositions in {:.2?}", start.elapsed());
    println!("lambda_1..4     {:.4}", e.values().slice(ndarray::s![..4]));
    println!(
        "lambda_hat_1..4 {:.4}",
        ehat.values().slice(ndarray::s![..4])
    );
    println!("|L - L_hat|_2 = {:.3}", spectral_norm(&l.sub(&lhat)?)?);

    for alignment in [SignAlignment::Raw, SignAlignment::Aligned] {
        let t = structural_terms_with(&e, &ehat, 2, alignment)?;
        println!(
            "{alignment:?}: eig drift {:.4}, vec drift {:.4}, subspace drift {:.4}",
            t.eig_drift, t.vec_drift, t.proj_drift
        );
    }
    match spectral_gap_interval(e.values().view(), ehat.values().view(), 2) {
        Ok(gap) => println!(
            "common gap [{:.3}, {:.3}], cutoff {:.3}",
            gap.lower,
            gap.upper,
            gap.midpoint()
        ),
        Err(err) => println!("no common gap: {err}"),
    }
    Ok(())
}
