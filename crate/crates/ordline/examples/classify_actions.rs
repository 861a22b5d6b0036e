//! The type I / II / III trichotomy for fixed-point-free actions on the
//! line, over four stock actions.

use ordline::actions;
use ordline::classify::classify;

fn main() {
    let fixtures = [
        ("translations <x+1, x+1/3>", actions::translations_action(8)),
        ("affine BS(1,2) <x+1, 2x>", actions::bs12_action(8)),
        ("schottky circle lifts", actions::schottky_lift_action(8)),
        ("translation + origin-moving bump", actions::mixed_inconclusive_action(6)),
    ];
    for (name, act) in fixtures {
        let c = classify(&act);
        println!("{name}:");
        for line in &c.trace {
            println!("    {line}");
        }
        println!("  -> {}", c.verdict);
    }
}
