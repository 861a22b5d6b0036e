//! Verifying finite ping-pong certificates and chasing word images through
//! them, including a deliberately broken certificate.

use ordline::interval::{ClosedInterval, IntervalSet};
use ordline::pingpong::{verify_certificate, word_image, PingPongCertificate, VerifyOutcome};
use ordline::pl::PLHomeo;
use ordline::rat::{rat, rat_i};
use ordline::word::ReducedWord;

fn main() {
    // f = x + 1, A1 a small neighborhood of 0, B1 everything far away
    let cert = PingPongCertificate::new(
        PLHomeo::translation(rat_i(1)),
        PLHomeo::identity(),
        vec![IntervalSet::from_components(vec![ClosedInterval::finite(rat(-1, 4), rat(1, 4))])],
        vec![IntervalSet::from_components(vec![
            ClosedInterval::ray_left(rat(-3, 4)),
            ClosedInterval::ray_right(rat(3, 4)),
        ])],
    )
    .unwrap();
    println!("translation certificate: {:?}", verify_certificate(&cert).is_ok());

    let w = ReducedWord::parse("a^3").unwrap();
    let report = word_image(&cert, &w).unwrap();
    let (x, y) = report.original_pair();
    println!("a^3 moves {} to {}", ordline::rat::fmt_rat(&x), ordline::rat::fmt_rat(&y));

    // truncating B1 breaks the negative powers and the verifier says where
    let mut broken = cert.clone();
    broken.b_sets =
        vec![IntervalSet::from_components(vec![ClosedInterval::finite(rat(3, 4), rat_i(10))])];
    match verify_certificate(&broken) {
        VerifyOutcome::Violation(v) => println!("broken certificate rejected: {v}"),
        VerifyOutcome::Ok => println!("unexpectedly verified"),
    }

    // a commutator needs three a-syllables after conjugation; k = 1 is too
    // shallow and the checker refuses rather than guessing
    let comm = ReducedWord::parse("a b a^-1 b^-1").unwrap();
    println!("commutator against k = 1: {}", word_image(&cert, &comm).unwrap_err());
}
