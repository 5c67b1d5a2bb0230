//! Thickness decay along the telescope family: after normalizing each
//! embedding into the unit ball, the minimal distance between
//! vertex-disjoint simplex images shrinks far faster than the bound
//! 2^{-l/9} / sqrt(2) that any embedding with this linking growth must obey.

use vk::constructions::telescope_embedding;
use vk::geometry::{normalize_to_unit_ball, rat, thickness};

fn main() {
    for l in 1..=5usize {
        let e = telescope_embedding(l, &rat(1, 2)).unwrap();
        let n = normalize_to_unit_ball(&e).unwrap();
        let report = thickness(&n, true).unwrap();
        let t = report.distance();
        let bound = 2f64.powf(-(l as f64) / 9.0) / 2f64.sqrt();
        println!(
            "l={l}: thickness {t:.3e} <= required bound {bound:.3e} ({}x slack)",
            (bound / t).round()
        );
        assert!(t <= bound);
    }
}
