//! Build a space in code, write it as a JSON document, and load it back.

use kannan::contraction::{analyze, ExcludedPairs};
use kannan::document::SpaceDocument;
use kannan::{validate_metric, FiniteSpace, Rational, SelfMap, SpaceKind};

fn main() {
    let labels = vec!["p".to_string(), "q".to_string(), "r".to_string()];
    let space = FiniteSpace::from_pairs(
        SpaceKind::Metric,
        labels,
        vec![
            (0, 1, Rational::from(1)),
            (0, 2, Rational::new(3, 2)),
            (1, 2, Rational::from(2)),
        ],
    )
    .unwrap();
    let s = SelfMap::constant(space.len(), 1);

    let json = SpaceDocument::from_space(&space, [("S", &s)]).to_json();
    println!("{json}");

    let loaded = SpaceDocument::from_json(&json).unwrap().build().unwrap();
    assert!(validate_metric(&loaded.space).is_empty());
    let s = loaded.self_map("S").unwrap();
    let report = analyze(&loaded.space, s, None, &ExcludedPairs::none(), None).unwrap();
    println!(
        "classical λ_min = {}, theorem applies: {}",
        report.kannan.lambda_min, report.metric_theorem.applies
    );
}
