//! Check a four-point space against both the metric and the rectangular
//! (generalized metric) axioms, then perturb one distance until the
//! rectangular inequality breaks too.

use kannan::{
    fixtures, validate_generalized_metric, validate_metric, FiniteSpace, Rational, SpaceKind,
};

fn main() {
    let fx = fixtures::branciari_four_point();
    println!("metric violations:");
    for v in validate_metric(&fx.space) {
        println!("  {v}");
    }
    println!(
        "generalized violations: {}",
        validate_generalized_metric(&fx.space).len()
    );

    let labels: Vec<String> = fx.space.points().iter().map(|p| p.label.clone()).collect();
    for value in 4..=12 {
        let mut pairs = vec![];
        for i in 0..4 {
            for j in i + 1..4 {
                let d = if (i, j) == (0, 1) {
                    Rational::from(value)
                } else {
                    fx.space.d(i, j).clone()
                };
                pairs.push((i, j, d));
            }
        }
        let space = FiniteSpace::from_pairs(SpaceKind::Generalized, labels.clone(), pairs).unwrap();
        let broken = validate_generalized_metric(&space);
        if let Some(first) = broken.first() {
            println!("d(1,2) = {value} breaks the rectangular inequality: {first}");
            break;
        }
    }
}
