//! Resilient-pair search: the order-theoretic shadow of a resilient orbit.
//! Orders from commuting translations never contain one; the interval action
//! of Thompson type does, already in the radius-3 ball.

use ordline::actions;
use ordline::order::{find_resilient_pair, DynOrder};

fn main() {
    let abelian = DynOrder::new(actions::abelian_unit_pair().to_vec());
    match find_resilient_pair(&abelian, 3, 3) {
        None => println!("abelian translations, radius 3: no resilient pair"),
        Some(w) => println!("unexpected witness: {w:?}"),
    }

    let thompson = DynOrder::new(actions::thompson_pair().to_vec());
    match find_resilient_pair(&thompson, 3, 5) {
        Some(w) => {
            println!("thompson action, radius 3:");
            println!("  h1 = {}", w.h1);
            println!("  f  = {}", w.f);
            println!("  g  = {}", w.g);
            println!("  h2 = {}", w.h2);
            println!("  chain h1 < f^n h1 < f^n h2 < g^n h1 < g^n h2 < h2 holds at n = 1");
            if w.failures.is_empty() {
                println!("  and re-verified for n = 2..={}", w.verified_to);
            } else {
                println!("  but FAILED at n in {:?}", w.failures);
            }
        }
        None => println!("no witness found"),
    }
}
