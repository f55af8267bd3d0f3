//! Search for an injective auxiliary map that brings the constant below a cap.

use kannan::contraction::{search_certificate, SearchSpace};
use kannan::{fixtures, Rational};

fn main() {
    let fx = fixtures::branciari_four_point();
    for cap in [Rational::new(1, 3), Rational::new(1, 5)] {
        match search_certificate(&fx.space, &fx.s, &cap, SearchSpace::Permutations, 10).unwrap() {
            Some(c) => println!(
                "cap {cap}: T = {} (λ = {})",
                c.t.describe(&fx.space),
                c.lambda
            ),
            None => println!("cap {cap}: no injective T exists"),
        }
    }
}
