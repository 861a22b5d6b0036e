//! Free-group word algebra: reduction, iterated commutators, rewriting laws
//! into two letters, syllable normal forms, and ball enumeration.

use ordline::word::{
    decompose_for_construction, engel, enumerate_ball, law_to_two_letters, syllable_normal_form,
    ReducedWord,
};

fn main() {
    let raw = ReducedWord::parse("a b b^-1 a").unwrap();
    println!("a b b^-1 a reduces to {raw}");

    let a = ReducedWord::parse("a").unwrap();
    let b = ReducedWord::parse("b").unwrap();
    for n in 1..=4 {
        let e = engel(&a, &b, n);
        println!("[a,b]_{n} = {e}   (length {})", e.len());
    }

    let law = ReducedWord::parse("a b c b^-1 c^-1 a^-1").unwrap();
    let two = law_to_two_letters(&law).unwrap();
    println!("three-letter law {law} becomes the two-letter law {two}");

    let w = ReducedWord::parse("a b a^-1 b^-1").unwrap();
    let form = syllable_normal_form(&w).unwrap();
    println!(
        "{w} conjugated by a^{} is {} with {} a-syllables",
        form.conjugator_power,
        form.conjugated_word(),
        form.k()
    );

    let word = ReducedWord::parse("a^-1 b a^2").unwrap();
    let dec = decompose_for_construction(&word).unwrap();
    println!(
        "{word} splits as W1 = {}, n = {}, W2 = {} (swapped: {})",
        dec.w1, dec.n, dec.w2, dec.swapped
    );

    for radius in 0..=4 {
        println!("ball of radius {radius} over two letters: {} words", enumerate_ball(radius, 2).len());
    }
}
