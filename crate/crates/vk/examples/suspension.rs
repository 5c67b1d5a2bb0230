//! Suspension preserves linking: coning a telescope embedding to two poles
//! in the next dimension turns the marked 2-sphere into a 3-sphere that
//! still links the ring with the same absolute linking number, exactly.

use vk::constructions::{suspend_embedding, telescope, telescope_embedding};
use vk::geometry::{linking_number, normalize_to_unit_ball, rat, PLEmbedding};

fn shrink_half(e: &PLEmbedding) -> PLEmbedding {
    PLEmbedding::new(
        e.complex.clone(),
        e.dim_ambient,
        e.coords.iter().map(|p| p.scale(&rat(1, 2))).collect(),
    )
}

fn main() {
    for l in 0..=3usize {
        let e = telescope_embedding(l, &rat(1, 2)).unwrap();
        let t = telescope(l);
        let lk4 = linking_number(&t.sphere1.realize(&e), &t.sphere2.realize(&e), 4, 2).unwrap();

        let base = shrink_half(&normalize_to_unit_ball(&e).unwrap());
        let n1 = base.complex.num_vertices;
        let s5 = suspend_embedding(&base).unwrap();
        let sus2 = t.sphere2.suspend(n1, n1 + 1);
        let lk5 = linking_number(&t.sphere1.realize(&s5), &sus2.realize(&s5), 5, 2).unwrap();

        let base2 = shrink_half(&s5);
        let n2 = base2.complex.num_vertices;
        let s6 = suspend_embedding(&base2).unwrap();
        let sus3 = sus2.suspend(n2, n2 + 1);
        let lk6 = linking_number(&t.sphere1.realize(&s6), &sus3.realize(&s6), 6, 2).unwrap();

        println!("l={l}: |Lk| in R4/R5/R6 = {} / {} / {}", lk4.abs(), lk5.abs(), lk6.abs());
        assert_eq!(lk4.abs(), 1i64 << l);
        assert_eq!(lk5.abs(), 1i64 << l);
        assert_eq!(lk6.abs(), 1i64 << l);
    }
}
