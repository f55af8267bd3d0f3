//! Built-in instances.

use crate::maps::{AuxMap, SelfMap};
use crate::rational::Rational;
use crate::space::{FiniteSpace, SpaceKind};

/// A space with a self-map `S` and an auxiliary map `T`.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub space: FiniteSpace,
    pub s: SelfMap,
    pub t: AuxMap,
}

/// The four-point generalized metric space on `{1, 2, 3, 4}` with
/// `d(1,2) = 3`, `d(1,3) = d(2,3) = 1` and every distance to `4` equal to 4.
///
/// It satisfies the rectangular inequality but not the triangle inequality.
/// `S` sends `1 ↦ 4` and everything else to `2`; `T` is the permutation
/// `1 ↦ 4, 2 ↦ 3, 3 ↦ 1, 4 ↦ 2`.
pub fn branciari_four_point() -> Fixture {
    let labels = ["1", "2", "3", "4"].map(String::from).to_vec();
    let d = |v: i64| Rational::from_integer(v);
    let space = FiniteSpace::from_pairs(
        SpaceKind::Generalized,
        labels,
        vec![
            (0, 1, d(3)),
            (1, 2, d(1)),
            (0, 2, d(1)),
            (0, 3, d(4)),
            (1, 3, d(4)),
            (2, 3, d(4)),
        ],
    )
    .expect("fixture table is complete");
    let s = SelfMap::new(&space, vec![3, 1, 1, 1]).expect("fixture map is total");
    let t = SelfMap::new(&space, vec![3, 2, 0, 1]).expect("fixture map is total");
    Fixture {
        space,
        s,
        t: AuxMap::Table(t),
    }
}
