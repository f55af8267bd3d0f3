#![allow(dead_code)]

use kannan::{AuxMap, FiniteSpace, Rational, SelfMap, SpaceKind};
use rand::seq::SliceRandom;
use rand::Rng;

/// Symmetric table with numerators and denominators drawn from `1..=max`.
pub fn random_small_space<R: Rng>(rng: &mut R, n: usize, max: i64, kind: SpaceKind) -> FiniteSpace {
    let labels = (0..n).map(|i| format!("x{i}")).collect();
    let pairs: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            (
                i,
                j,
                Rational::new(rng.gen_range(1..=max), rng.gen_range(1..=max)),
            )
        })
        .collect();
    FiniteSpace::from_pairs(kind, labels, pairs).unwrap()
}

/// Shortest-path closure of random positive weights: always a metric.
#[allow(clippy::needless_range_loop)]
pub fn random_metric_space<R: Rng>(rng: &mut R, n: usize) -> FiniteSpace {
    let mut d = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = Rational::new(rng.gen_range(1..=20), rng.gen_range(1..=6));
            d[i][j] = w.clone();
            d[j][i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &d[i][k] + &d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let labels = (0..n).map(|i| format!("m{i}")).collect();
    FiniteSpace::from_matrix(SpaceKind::Metric, labels, d).unwrap()
}

/// Distances in `[a, 3a]`: the rectangular inequality always holds, the
/// triangle inequality usually does not.
pub fn random_rectangular_space<R: Rng>(rng: &mut R, n: usize) -> FiniteSpace {
    let labels = (0..n).map(|i| format!("g{i}")).collect();
    let pairs: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, Rational::new(rng.gen_range(4..=12), 4)))
        .collect();
    FiniteSpace::from_pairs(SpaceKind::Generalized, labels, pairs).unwrap()
}

pub fn random_any_space<R: Rng>(rng: &mut R, n: usize) -> FiniteSpace {
    match rng.gen_range(0..3) {
        0 => random_small_space(rng, n, 20, SpaceKind::Generalized),
        1 => random_metric_space(rng, n),
        _ => random_rectangular_space(rng, n),
    }
}

pub fn random_map<R: Rng>(rng: &mut R, n: usize) -> SelfMap {
    let table: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    table_map(n, table)
}

/// A map that tends to have a unique attracting fixed point: a random tree
/// rooted at a fixed point, occasionally with a stray cycle or second root.
pub fn random_funnel_map<R: Rng>(rng: &mut R, n: usize) -> SelfMap {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut table = vec![0; n];
    table[order[0]] = order[0];
    for k in 1..n {
        table[order[k]] = order[rng.gen_range(0..k)];
    }
    if n > 1 && rng.gen_bool(0.15) {
        let k = rng.gen_range(1..n);
        table[order[k]] = order[k];
    }
    table_map(n, table)
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> SelfMap {
    let mut table: Vec<usize> = (0..n).collect();
    table.shuffle(rng);
    table_map(n, table)
}

fn table_map(n: usize, table: Vec<usize>) -> SelfMap {
    let labels = (0..n).map(|i| i.to_string()).collect();
    let pairs: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j, Rational::one())))
        .collect();
    let carrier = FiniteSpace::from_pairs(SpaceKind::Metric, labels, pairs).unwrap();
    SelfMap::new(&carrier, table).unwrap()
}

pub fn random_aux<R: Rng>(rng: &mut R, n: usize) -> AuxMap {
    match rng.gen_range(0..4) {
        0 => AuxMap::identity(n),
        1 => AuxMap::Table(random_map(rng, n)),
        _ => AuxMap::Table(random_permutation(rng, n)),
    }
}
