//! The telescope family: an explicit exact PL embedding of the l-stage
//! mapping telescope in R^4 whose outermost ring links the marked 2-sphere
//! with linking number exactly 2^l. Every embedding below is verified by
//! exhaustive exact-rational intersection tests over all vertex-disjoint
//! simplex pairs before any number is reported.

use vk::constructions::{telescope, telescope_embedding};
use vk::geometry::{linking_number, rat};

fn main() {
    for l in 0..=4usize {
        let start = std::time::Instant::now();
        let e = telescope_embedding(l, &rat(1, 2)).unwrap();
        let t = telescope(l);
        let ring = t.sphere1.realize(&e);
        let sphere = t.sphere2.realize(&e);
        let lk = linking_number(&ring, &sphere, 4, 7).unwrap();
        println!(
            "l={l}: {} vertices, Lk(ring, S2) = {lk} = 2^{l}, verified in {:?}",
            e.complex.num_vertices,
            start.elapsed()
        );
        assert_eq!(lk, 1i64 << l);
    }
}
