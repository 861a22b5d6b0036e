//! Building an action that violates a prescribed verbal property: two maps
//! moving the origin right whose word-image moves it left, checked exactly.

use ordline::order::{construct_violation, is_w_order_on_ball, WOrderOutcome};
use ordline::rat::fmt_rat;
use ordline::word::{engel, ReducedWord};

fn main() {
    for text in ["a^-1 b a", "a^-1 b a^2"] {
        let word = ReducedWord::parse(text).unwrap();
        let witness = construct_violation(&word).unwrap();
        println!("word {word}:");
        println!("  f = {}", witness.f);
        println!("  g = {}", witness.g);
        println!(
            "  f(0) = {}, g(0) = {}, W(f,g)(0) = {}",
            fmt_rat(&witness.f_at_origin),
            fmt_rat(&witness.g_at_origin),
            fmt_rat(&witness.word_at_origin),
        );
    }

    // the same construction handles iterated commutators
    let a = ReducedWord::parse("a").unwrap();
    let b = ReducedWord::parse("b").unwrap();
    let e2 = engel(&a, &b, 2);
    let witness = construct_violation(&e2).unwrap();
    println!("word {e2}: W(f,g)(0) = {}", fmt_rat(&witness.word_at_origin));

    // the induced order on the witness pair indeed fails the W-property
    let word = ReducedWord::parse("a^-1 b a").unwrap();
    let witness = construct_violation(&word).unwrap();
    match is_w_order_on_ball(&witness.order(), &word, 1) {
        WOrderOutcome::Counterexample { u, v, substituted } => {
            println!("counterexample in the induced order: u = {u}, v = {v}, W(u,v) = {substituted}");
        }
        WOrderOutcome::Pass => println!("unexpectedly passed"),
    }
}
