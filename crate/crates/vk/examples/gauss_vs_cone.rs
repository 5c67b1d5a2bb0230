//! Two independent linking computations cross-checking each other: the
//! exact cone method (signed intersections of a generic cone, rational
//! arithmetic) against floating-point quadrature of the degree integral
//! over every PL cell pair.

use vk::constructions::{hopf_link_pl, telescope, telescope_embedding};
use vk::geometry::{gauss_linking_pl, linking_number, rat};

fn main() {
    let (a, b) = hopf_link_pl(24);
    let exact = linking_number(&a, &b, 3, 5).unwrap();
    let est = gauss_linking_pl(&a, &b, 32).unwrap();
    println!(
        "hopf 24-gons: cone {exact}, gauss {:.5} +/- {:.5}",
        est.value, est.error
    );

    for l in 0..=3usize {
        let e = telescope_embedding(l, &rat(1, 2)).unwrap();
        let t = telescope(l);
        let ring = t.sphere1.realize(&e);
        let sphere = t.sphere2.realize(&e);
        let exact = linking_number(&ring, &sphere, 4, 7).unwrap();
        let est = gauss_linking_pl(&ring, &sphere, 48).unwrap();
        println!(
            "telescope l={l}: cone {exact}, gauss {:.5} (off by {:.5})",
            est.value,
            (est.value - exact as f64).abs()
        );
        assert!((est.value - exact as f64).abs() < 0.05);
    }
}
