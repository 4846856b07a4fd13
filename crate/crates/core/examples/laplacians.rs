//! Shift operators of a small graph and the frequency content of a signal.
//!
//! `cargo run --example laplacians [edge_list]`

use gfstab::graph::{
    gft, normalized_laplacian, parse_edge_list, total_variation, unnormalized_laplacian,
};
use gfstab::spectral::eigh;

const HOUSE: &str = "# a square with a roof\n0 1\n1 2\n2 3\n3 0\n2 4\n3 4\n";

fn main() -> gfstab::Result<()> {
    let g = match std::env::args().nth(1) {
        Some(path) => gfstab::graph::load_edge_list(path, true)?,
        None => parse_edge_list(HOUSE, false)?,
    };
    println!(
        "{} nodes, {} edges, connected: {}",
        g.n(),
        g.num_edges(),
        g.is_connected()
    );

    let l = unnormalized_laplacian(&g);
    let e = eigh(&l)?;
    println!("L_U spectrum: {:.4}", e.values());
    if let Ok(ln) = normalized_laplacian(&g) {
        println!("L_norm spectrum: {:.4}", eigh(&ln)?.values());
    }

    let smooth: Vec<f64> = (0..g.n()).map(|i| 1.0 + 0.1 * i as f64).collect();
    let rough: Vec<f64> = (0..g.n())
        .map(|i| if i % 2 == 0 { 1.0 } else { -1.0 })
        .collect();
    for (name, x) in [("smooth", &smooth), ("alternating", &rough)] {
        let tv = total_variation(&l, x)?;
        let xhat = gft(&e, x)?;
        println!(
            "{name:>11}: TV = {tv:.3}, |GFT| = {:.3}",
            xhat.mapv(f64::abs)
        );
    }
    Ok(())
}
