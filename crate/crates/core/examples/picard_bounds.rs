//! Picard iteration from every start, with the step and tail bounds checked
//! along each orbit.

use kannan::contraction::ExcludedPairs;
use kannan::iteration::{fixed_points_exhaustive, picard, verify_bounds};
use kannan::{fixtures, t_kannan_lambda};

fn main() {
    let fx = fixtures::branciari_four_point();
    let lambda = t_kannan_lambda(&fx.space, &fx.s, &fx.t, &ExcludedPairs::none())
        .unwrap()
        .lambda_min
        .finite()
        .cloned()
        .expect("finite constant");

    for fp in fixed_points_exhaustive(&fx.space, &fx.s).unwrap() {
        println!("fixed point {} (unique: {})", fp.point.label, fp.unique);
    }
    for x0 in 0..fx.space.len() {
        let traj = picard(&fx.space, &fx.s, Some(&fx.t), x0, 100).unwrap();
        match verify_bounds(&fx.space, &traj, &fx.t, &lambda, 200) {
            Ok(b) => println!(
                "{traj}  bounds at λ = {lambda}: {}",
                if b.all_hold { "hold" } else { "fail" }
            ),
            Err(e) => println!("{traj}  ({e})"),
        }
    }
}
