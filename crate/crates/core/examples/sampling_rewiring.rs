//! Draw a sparse planted partition and perturb it with both rewiring
//! schemes. Block edge counts show which structure each scheme keeps.

use gfstab::random_models::{
    block_edge_counts, rewire_count_preserving, rewire_sbm, sample_ppm, PpmParams,
};

fn main() -> gfstab::Result<()> {
    let n = 400;
    let ppm = PpmParams::log_scaled(n, 2, 13.0, 2.0)?;
    println!(
        "PPM({n}, 2): intra {:.4}, inter {:.4}",
        ppm.intra_probability(),
        ppm.inter_probability()
    );
    let g = sample_ppm(&ppm, 7)?;
    let z = g
        .membership()
        .expect("sampled graphs carry labels")
        .to_vec();
    println!("original         {:?}", block_edge_counts(&g, &z));

    let sbm = ppm.to_sbm()?;
    for p_re in [0.1, 0.5, 0.9] {
        let ghat = rewire_sbm(&g, &sbm, p_re, 100)?;
        let shared = g
            .edges()
            .iter()
            .filter(|&&(u, v)| ghat.has_edge(u, v))
            .count();
        println!(
            "sbm p_re={p_re}      {:?}, {:.0}% of edges kept",
            block_edge_counts(&ghat, &z),
            100.0 * shared as f64 / g.num_edges() as f64
        );
    }
    let r = rewire_count_preserving(&g, &z, 0.5, 100)?;
    println!(
        "counts p_re=0.5  {:?}, shortfall {:?}",
        block_edge_counts(&r.graph, &z),
        r.shortfall
    );
    Ok(())
}
