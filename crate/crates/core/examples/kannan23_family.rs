//! The truncated family on {0} ∪ {1/n}: huge classical constant, small
//! constant once the auxiliary map is applied, and a contracting orbit.

use kannan::iteration::{picard, verify_bounds};
use kannan::{kannan_lambda, realize_family, t_kannan_lambda, AnalyticFamily, Rational};

fn main() {
    let n: u32 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(40);
    let fam = realize_family(AnalyticFamily::kannan23(n).unwrap()).unwrap();
    let excluded = fam.clamp_pairs();

    let classical = kannan_lambda(&fam.space, &fam.s, &excluded).unwrap();
    let extended = t_kannan_lambda(&fam.space, &fam.s, &fam.t, &excluded).unwrap();
    println!("N = {n}, {} points", fam.space.len());
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

    let start = fam.space.index_of("1/4").unwrap();
    let traj = picard(&fam.space, &fam.s, Some(&fam.t), start, 1000).unwrap();
    let bounds = verify_bounds(&fam.space, &traj, &fam.t, &Rational::new(1, 3), 200).unwrap();
    println!(
        "orbit from 1/4 stops at {} after {} steps",
        traj.fixed_point().unwrap().label,
        traj.iterations()
    );
    println!(
        "factor {}; all {} step and {} tail bounds hold: {}",
        bounds.factor,
        bounds.steps.len(),
        bounds.tails.len(),
        bounds.all_hold
    );
    for s in bounds.steps.iter().take(3) {
        println!(
            "  g_{} = {:.3e} ≤ {:.3e}",
            s.n,
            s.t_gap.to_f64(),
            s.geometric_bound.to_f64()
        );
    }
}
