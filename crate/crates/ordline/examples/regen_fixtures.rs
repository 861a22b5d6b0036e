//! Regenerates the JSON fixtures under `fixtures/` from the stock actions.
//! Run from the crate root after changing any stock map:
//! `cargo run -p ordline --example regen_fixtures`

use ordline::fixture::{action_to_json, certificate_to_json, order_to_json};
use ordline::interval::{ClosedInterval, IntervalSet};
use ordline::order::DynOrder;
use ordline::pingpong::PingPongCertificate;
use ordline::pl::PLHomeo;
use ordline::rat::{rat, rat_i};
use ordline::{actions, witness};

fn write(name: &str, value: serde_json::Value) {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let text = serde_json::to_string_pretty(&value).unwrap() + "\n";
    std::fs::write(&path, text).unwrap();
    println!("wrote {}", path.display());
}

fn main() {
    // k = 1 certificate for the unit translation, with unbounded targets
    let translation_cert = PingPongCertificate::new(
        PLHomeo::translation(rat_i(1)),
        PLHomeo::identity(),
        vec![IntervalSet::from_components(vec![ClosedInterval::finite(rat(-1, 4), rat(1, 4))])],
        vec![IntervalSet::from_components(vec![
            ClosedInterval::ray_left(rat(-3, 4)),
            ClosedInterval::ray_right(rat(3, 4)),
        ])],
    )
    .unwrap();
    write("translation_cert.json", certificate_to_json(&translation_cert));

    let k2 = witness::build_certificate(&witness::gen_intertwined_pair(2)).unwrap();
    write("intertwined_k2_cert.json", certificate_to_json(&k2.certificate));

    let [a, b] = actions::abelian_unit_pair();
    write("abelian_order.json", order_to_json(&DynOrder::new(vec![a, b])));
    let [a, b] = actions::translations_pair();
    write("translations_order.json", order_to_json(&DynOrder::new(vec![a, b])));
    let [a, b] = actions::thompson_pair();
    write("thompson_order.json", order_to_json(&DynOrder::new(vec![a, b])));

    write("translations_action.json", action_to_json(&actions::translations_action(8)));
    write("bs12_action.json", action_to_json(&actions::bs12_action(8)));
    write("schottky_lift_action.json", action_to_json(&actions::schottky_lift_action(8)));
    write("inconclusive_action.json", action_to_json(&actions::mixed_inconclusive_action(8)));
}
