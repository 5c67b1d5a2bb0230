//! Iterated commutators in free groups and their Magnus expansions: with
//! distinct generators the written length 3*2^q - 2 survives free reduction
//! verbatim, while the repeated [x, [x, ...]] tower cancels; the Magnus
//! series detects the nesting depth as the lowest nonvanishing degree.

use vk::constructions::{commutator_word, magnus_expansion, parse_word, CommutatorKind};

fn main() {
    println!("q | distinct len | repeated len | 3*2^q - 2");
    for q in 1..=8usize {
        let distinct = commutator_word(CommutatorKind::Distinct, q);
        let repeated = commutator_word(CommutatorKind::RepeatedXY, q);
        println!(
            "{q} | {:12} | {:12} | {}",
            distinct.len(),
            repeated.len(),
            3 * (1usize << q) - 2
        );
        assert_eq!(distinct.len(), 3 * (1 << q) - 2);
    }

    let w = parse_word("[x,[x,y]]").unwrap();
    println!("\n[x,[x,y]]: reduced length {}", w.len());

    for q in 1..=4usize {
        let w = commutator_word(CommutatorKind::Distinct, q);
        let series = magnus_expansion(&w, q + 1);
        let monomial: Vec<usize> = (0..=q).collect();
        println!(
            "distinct q={q}: lowest magnus degree {:?}, coeff on X1..X{} = {}",
            series.lowest_nonconstant_degree(),
            q + 1,
            series.coefficient(&monomial)
        );
        assert_eq!(series.lowest_nonconstant_degree(), Some(q + 1));
        assert_eq!(series.coefficient(&monomial).abs(), 1);
    }
}
