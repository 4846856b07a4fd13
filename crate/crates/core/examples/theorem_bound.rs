//! Filter distance against its community-structure bound, for a low-pass
//! and a high-pass filter, plus the perturbation-norm bound of a
//! polynomial filter on the normalized Laplacian.

use gfstab::filters::FilterSpec;
use gfstab::graph::{normalized_laplacian, unnormalized_laplacian};
use gfstab::random_models::{rewire_sbm, sample_ppm, PpmParams};
use gfstab::spectral::eigh;
use gfstab::stability::{polynomial_baseline_bound, theorem1_bound, EtaMode};

fn main() -> gfstab::Result<()> {
    let n = 400;
    let ppm = PpmParams::log_scaled(n, 2, 13.0, 2.0)?;
    let g = sample_ppm(&ppm, 11)?;
    let ghat = rewire_sbm(&g, &ppm.to_sbm()?, 0.5, 12)?;
    let e = eigh(&unnormalized_laplacian(&g))?;
    let ehat = eigh(&unnormalized_laplacian(&ghat))?;

    for f in [
        FilterSpec::low_pass_exp(1.0, true),
        FilterSpec::high_pass_exp(1.0, true),
    ] {
        for mode in [EtaMode::Empirical, EtaMode::Interval] {
            let b = theorem1_bound(&f, &e, &ehat, 2, mode, n)?;
            println!(
                "{:<16} {mode:<9} distance {:.3e} <= {:.3e} = {:.3e} + {:.3e} + {:.3e} (gap ok: {})",
                f.label(),
                b.distance,
                b.total,
                b.leakage,
                b.eig_term,
                b.vec_term,
                b.gap_ok
            );
        }
    }

    let l = normalized_laplacian(&g)?;
    let lhat = normalized_laplacian(&ghat)?;
    let coeffs = [1.0, -0.5, 0.125];
    let f = FilterSpec::polynomial(coeffs);
    let d = gfstab::stability::filter_distance(
        &gfstab::filters::apply_filter(&f, &eigh(&l)?, n)?,
        &gfstab::filters::apply_filter(&f, &eigh(&lhat)?, n)?,
    )?;
    println!(
        "{} on L_norm: distance {d:.3e} <= baseline {:.3e}",
        f.label(),
        polynomial_baseline_bound(&coeffs, &l, &lhat)?
    );
    Ok(())
}
