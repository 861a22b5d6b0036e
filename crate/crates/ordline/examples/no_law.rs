//! End-to-end no-law witnesses: for each word, an interval pair with
//! intertwined transversal fixed points, a verified certificate for suitable
//! powers, and an explicit point the word's image moves.

use ordline::pl::evaluate_word_at;
use ordline::rat::fmt_rat;
use ordline::witness::{gen_intertwined_pair, no_law_witness};
use ordline::word::{engel, ReducedWord};

fn main() {
    let pair = gen_intertwined_pair(2);
    println!(
        "k = 2 pair: g fixes {}, f fixes {}",
        pair.p.iter().map(fmt_rat).collect::<Vec<_>>().join(", "),
        pair.q.iter().map(fmt_rat).collect::<Vec<_>>().join(", "),
    );

    let a = ReducedWord::parse("a").unwrap();
    let b = ReducedWord::parse("b").unwrap();
    let words = vec![
        ReducedWord::parse("a b a^-1 b^-1").unwrap(),
        engel(&a, &b, 4),
        ReducedWord::parse("a^10").unwrap(),
        ReducedWord::parse("b^5").unwrap(),
    ];
    for word in words {
        let witness = no_law_witness(&word).unwrap();
        let (x, y) = witness.report.original_pair();
        // re-verify the moved point independently
        let maps = [witness.certificate.f.clone(), witness.certificate.g.clone()];
        assert_eq!(evaluate_word_at(&witness.word, &maps, &x).unwrap(), y);
        println!(
            "{}: k = {}, N = {}, moves {} to {}",
            witness.word,
            witness.k,
            witness.power,
            fmt_rat(&x),
            fmt_rat(&y)
        );
    }
}
