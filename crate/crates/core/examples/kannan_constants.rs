//! Exact smallest contraction constants, classical and with an auxiliary map.

use kannan::contraction::{analyze, ExcludedPairs};
use kannan::{fixtures, kannan_lambda, t_kannan_lambda};

fn main() {
    let fx = fixtures::branciari_four_point();
    let none = ExcludedPairs::none();

    let classical = kannan_lambda(&fx.space, &fx.s, &none).unwrap();
    let extended = t_kannan_lambda(&fx.space, &fx.s, &fx.t, &none).unwrap();
    println!("S = {}", fx.s.describe(&fx.space));
    println!("T = {}", fx.t.describe(&fx.space));
    println!(
        "classical λ_min = {} at {:?}",
        classical.lambda_min,
        classical.argmax_labels()
    );
    println!(
        "with T    λ_min = {} at {:?}",
        extended.lambda_min,
        extended.argmax_labels()
    );

    let report = analyze(&fx.space, &fx.s, Some(&fx.t), &none, None).unwrap();
    println!("metric theorem applies: {}", report.metric_theorem.applies);
    for o in &report.metric_theorem.obstructions {
        println!("  blocked by {o:?}");
    }
    println!(
        "generalized theorem applies: {}",
        report.generalized_theorem.applies
    );
}
