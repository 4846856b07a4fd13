//! Frequency responses and low-pass constants of the filters used in the
//! experiments, on the spectrum of one planted partition.

use gfstab::filters::{empirical_ratio, h_max, lipschitz, low_pass_ratio, FilterSpec};
use gfstab::graph::unnormalized_laplacian;
use gfstab::random_models::{sample_ppm, PpmParams};
use gfstab::spectral::{eigvalsh, spectral_gap_interval};

fn main() -> gfstab::Result<()> {
    let n = 500;
    let g = sample_ppm(&PpmParams::log_scaled(n, 2, 13.0, 2.0)?, 3)?;
    let lam = eigvalsh(&unnormalized_laplacian(&g))?;
    let cutoff = spectral_gap_interval(lam.view(), lam.view(), 2)?.midpoint();
    let top = lam[n - 1];
    println!(
        "lambda_2 = {:.3}, lambda_3 = {:.3}, cutoff {cutoff:.3}, lambda_max {top:.3}",
        lam[1], lam[2]
    );

    let filters = [
        FilterSpec::low_pass_exp(1.0, true),
        FilterSpec::high_pass_exp(1.0, true),
        FilterSpec::low_pass_exp(1.0, false),
        FilterSpec::Resolvent { alpha: 1.0 },
        FilterSpec::polynomial([1.0, -0.05]),
    ];
    println!(
        "{:<18} {:>10} {:>10} {:>10} {:>10}",
        "filter", "eta", "eta_emp", "H_max", "L_H"
    );
    for f in &filters {
        let eta = low_pass_ratio(f, cutoff, top, n).map_or(f64::NAN, |x| x);
        let emp = empirical_ratio(f, lam.view(), lam.view(), 2, n).map_or(f64::NAN, |x| x);
        println!(
            "{:<18} {eta:>10.3e} {emp:>10.3e} {:>10.3e} {:>10.3e}",
            f.label(),
            h_max(f, cutoff, n)?,
            lipschitz(f, cutoff, n)?
        );
    }
    Ok(())
}
