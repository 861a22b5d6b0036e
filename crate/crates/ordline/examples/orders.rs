//! Dynamically realized left-orders: comparison, positivity, the conjugacy
//! action, and the agreement metric between orders.

use std::cmp::Ordering;

use ordline::actions;
use ordline::order::{order_distance, DynOrder};
use ordline::rat::fmt_rat;
use ordline::witness::certified_free_action;
use ordline::word::{enumerate_ball, ReducedWord};

fn main() {
    let translations = DynOrder::new(actions::translations_pair().to_vec());
    let abelian = DynOrder::new(actions::abelian_unit_pair().to_vec());
    let free = DynOrder::new(certified_free_action().to_vec());
    let thompson = DynOrder::new(actions::thompson_pair().to_vec());

    let u = ReducedWord::parse("a b^-1").unwrap();
    let v = ReducedWord::parse("b a^-2").unwrap();
    for (name, o) in [
        ("translations", &translations),
        ("abelian", &abelian),
        ("certified pair", &free),
        ("thompson", &thompson),
    ] {
        let (ord, decision) = o.compare_detailed(&u, &v);
        let sym = match ord {
            Ordering::Less => "<",
            Ordering::Equal => "=",
            Ordering::Greater => ">",
        };
        println!("{name}: {u} {sym} {v}   (decided at {decision})");
    }

    // the conjugacy action: positivity of u under the conjugated order equals
    // positivity of h^-1 u h under the original
    let h = ReducedWord::parse("a b").unwrap();
    let conj = thompson.conjugated(h.clone());
    for w in enumerate_ball(2, 2) {
        if w.is_identity() {
            continue;
        }
        let lhs = conj.is_positive(&w);
        let rhs = thompson.is_positive(&h.inverse().concat(&w).concat(&h));
        assert_eq!(lhs, rhs);
    }
    println!("conjugacy identity checked on the radius-2 ball");

    // pairwise distances at bounded resolution
    let orders = [
        ("translations", &translations),
        ("abelian", &abelian),
        ("certified pair", &free),
        ("thompson", &thompson),
    ];
    for (n1, o1) in &orders {
        for (n2, o2) in &orders {
            if n1 < n2 {
                println!("d({n1}, {n2}) = {}", fmt_rat(&order_distance(o1, o2, 5)));
            }
        }
    }
}
