//! Distortion of spectrally embedded random regular graphs: measured
//! distortion grows with N and sits far above the theoretical lower bound
//! for expanders, and every run carries a balanced-sphere slicing
//! certificate for the edge-crossing and shell inequalities.

use vk::expander::{
    graph_distortion, random_regular_graph, slicing_certificate, spectral_embedding,
    spectral_gap, scaling_experiment,
};

fn main() {
    let g = random_regular_graph(64, 3, 42).unwrap();
    let gap = spectral_gap(&g).unwrap();
    let e = spectral_embedding(&g, 3, 8).unwrap();
    let delta = graph_distortion(&e).unwrap();
    let cert = slicing_certificate(&e, delta, gap.cheeger_band.0).unwrap();
    println!(
        "N=64 d=3: lambda2 {:.4}, alpha band [{:.4}, {:.4}], delta {:.3}",
        gap.lambda2, gap.cheeger_band.0, gap.cheeger_band.1, delta
    );
    println!(
        "slicing: {} in / {} out, {} crossing edges (>= alpha N/2: {}), shell {} (> alpha N/8d: {})",
        cert.inside_count,
        cert.outside_count,
        cert.crossing_edges,
        cert.crossing_bound_holds,
        cert.shell_vertex_count,
        cert.inequality_holds
    );

    let report = scaling_experiment(&[32, 64, 128], 3, 3, 1, 3, 8, 1e-5).unwrap();
    println!("\nN -> median delta:");
    for (n, med) in &report.medians {
        println!("  {n:4} -> {med:.3}");
    }
    println!(
        "medians non-decreasing: {}; all above lower bound: {}",
        report.medians_non_decreasing, report.all_exceed_lower_bound
    );
}
