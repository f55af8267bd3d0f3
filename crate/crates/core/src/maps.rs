//! Self-maps on finite spaces, the built-in analytic family, and the map
//! properties the fixed-point theorems ask of the auxiliary map.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::contraction::ExcludedPairs;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::space::{FiniteSpace, PointId, SpaceKind};

/// A total map from a finite space to itself, stored as an image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SelfMap {
    table: Vec<usize>,
}

impl SelfMap {
    pub fn new(space: &FiniteSpace, table: Vec<usize>) -> Result<Self> {
        let map = SelfMap { table };
        map.check_against(space)?;
        Ok(map)
    }

    /// Builds a map from `(point, image)` label pairs. Every point must appear
    /// exactly once as a source.
    pub fn from_labels<'a, I>(space: &FiniteSpace, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut table = vec![None; space.len()];
        for (from, to) in entries {
            let i = space
                .index_of(from)
                .ok_or_else(|| Error::MalformedSpace(format!("unknown point `{from}` in map")))?;
            let j = space
                .index_of(to)
                .ok_or_else(|| Error::MalformedSpace(format!("unknown point `{to}` in map")))?;
            if table[i].replace(j).is_some() {
                return Err(Error::MalformedSpace(format!(
                    "point `{from}` mapped twice"
                )));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| {
                    Error::MalformedSpace(format!(
                        "map has no image for `{}`",
                        space.point(i).label
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SelfMap { table })
    }

    pub fn identity(n: usize) -> Self {
        SelfMap {
            table: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, value: usize) -> Self {
        assert!(value < n);
        SelfMap {
            table: vec![value; n],
        }
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ inner`, i.e. `x ↦ self(inner(x))`.
    pub fn after(&self, inner: &SelfMap) -> SelfMap {
        SelfMap {
            table: inner.table.iter().map(|&j| self.table[j]).collect(),
        }
    }

    pub fn check_against(&self, space: &FiniteSpace) -> Result<()> {
        if self.table.len() != space.len() {
            return Err(Error::MapSizeMismatch {
                expected: space.len(),
                got: self.table.len(),
            });
        }
        if let Some((point, &image)) = self
            .table
            .iter()
            .enumerate()
            .find(|(_, &j)| j >= space.len())
        {
            return Err(Error::ImageOutOfRange { point, image });
        }
        Ok(())
    }

    /// `label -> label` rendering, in point order.
    pub fn describe(&self, space: &FiniteSpace) -> String {
        self.table
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}->{}", space.point(i).label, space.point(j).label))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyId {
    /// `X = {0} ∪ {1/n : n >= 4}` with `S(1/n) = 1/(n+1)` and `T(1/n) = 1/n^n`.
    Kannan23,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::Kannan23 => f.write_str("kannan23"),
        }
    }
}

/// A built-in countable example, truncated to `{0} ∪ {1/4, ..., 1/n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AnalyticFamily {
    pub id: FamilyId,
    pub n: u32,
}

impl AnalyticFamily {
    pub fn kannan23(n: u32) -> Result<Self> {
        if n < 5 {
            return Err(Error::TruncationTooSmall(n));
        }
        Ok(AnalyticFamily {
            id: FamilyId::Kannan23,
            n,
        })
    }
}

/// The auxiliary map `T`.
///
/// Only distances between `T`-images enter the contraction conditions and
/// the convergence bounds, so `T` may either be a self-map table or a list of
/// exact images on the real line (compared by `|a - b|`). The second form
/// covers families whose `T` leaves the truncated point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuxMap {
    Table(SelfMap),
    Line(Vec<Rational>),
}

impl AuxMap {
    pub fn identity(n: usize) -> Self {
        AuxMap::Table(SelfMap::identity(n))
    }

    pub fn len(&self) -> usize {
        match self {
            AuxMap::Table(m) => m.len(),
            AuxMap::Line(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_table(&self) -> Option<&SelfMap> {
        match self {
            AuxMap::Table(m) => Some(m),
            AuxMap::Line(_) => None,
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, AuxMap::Table(m) if m.is_identity())
    }

    pub fn check_against(&self, space: &FiniteSpace) -> Result<()> {
        match self {
            AuxMap::Table(m) => m.check_against(space),
            AuxMap::Line(v) if v.len() != space.len() => Err(Error::MapSizeMismatch {
                expected: space.len(),
                got: v.len(),
            }),
            AuxMap::Line(_) => Ok(()),
        }
    }

    /// Whether `x` and `y` have the same image.
    pub fn same_image(&self, x: usize, y: usize) -> bool {
        match self {
            AuxMap::Table(m) => m.apply(x) == m.apply(y),
            AuxMap::Line(v) => v[x] == v[y],
        }
    }

    /// The pulled-back table `(x, y) ↦ d(Tx, Ty)` as a space on the same labels.
    pub fn pull_back(&self, space: &FiniteSpace) -> Result<FiniteSpace> {
        self.check_against(space)?;
        let n = space.len();
        let rows = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| match self {
                        AuxMap::Table(m) => space.d(m.apply(x), m.apply(y)).clone(),
                        AuxMap::Line(v) => v[x].abs_diff(&v[y]),
                    })
                    .collect()
            })
            .collect();
        let labels = space.points().iter().map(|p| p.label.clone()).collect();
        FiniteSpace::from_matrix(space.kind(), labels, rows)
    }

    /// Label of the image of `x`.
    pub fn image_label(&self, space: &FiniteSpace, x: usize) -> String {
        match self {
            AuxMap::Table(m) => space.point(m.apply(x)).label.clone(),
            AuxMap::Line(v) => v[x].to_string(),
        }
    }

    pub fn describe(&self, space: &FiniteSpace) -> String {
        (0..self.len())
            .map(|x| format!("{}->{}", space.point(x).label, self.image_label(space, x)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl From<SelfMap> for AuxMap {
    fn from(m: SelfMap) -> Self {
        AuxMap::Table(m)
    }
}

/// A truncated family made concrete: the finite space, both maps, and the
/// boundary point where `S` is clamped to itself.
#[derive(Debug, Clone)]
pub struct Realization {
    pub family: AnalyticFamily,
    pub space: FiniteSpace,
    pub s: SelfMap,
    pub t: AuxMap,
    pub clamp: usize,
}

impl Realization {
    /// All pairs touching the clamp point.
    pub fn clamp_pairs(&self) -> ExcludedPairs {
        ExcludedPairs::touching(self.space.len(), self.clamp)
    }
}

/// Realizes the truncated family with exact absolute-difference distances.
///
/// Points are ordered `0, 1/4, 1/5, ..., 1/N`. `S(0) = 0`,
/// `S(1/k) = 1/(k+1)` for `k < N` and `S(1/N) = 1/N` (the clamp).
/// `T(0) = 0` and `T(1/k) = 1/k^k` as exact rationals on the real line.
pub fn realize_family(family: AnalyticFamily) -> Result<Realization> {
    let AnalyticFamily {
        id: FamilyId::Kannan23,
        n,
    } = family;
    if n < 5 {
        return Err(Error::TruncationTooSmall(n));
    }
    let mut values = vec![Rational::zero()];
    let mut labels = vec!["0".to_string()];
    let mut images = vec![Rational::zero()];
    for k in 4..=n {
        values.push(Rational::new(1, k as i64));
        labels.push(format!("1/{k}"));
        images.push(Rational::new(BigInt::from(1), BigInt::from(k).pow(k)));
    }
    let len = values.len();
    let pairs = (0..len)
        .flat_map(|i| (i + 1..len).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, values[i].abs_diff(&values[j])))
        .collect::<Vec<_>>();
    let space = FiniteSpace::from_pairs(SpaceKind::Metric, labels, pairs)?;
    let clamp = len - 1;
    let s = SelfMap {
        table: (0..len)
            .map(|i| if i == 0 || i == clamp { i } else { i + 1 })
            .collect(),
    };
    Ok(Realization {
        family,
        space,
        s,
        t: AuxMap::Line(images),
        clamp,
    })
}

/// Injectivity of `T`, with the lexicographically first colliding pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Injectivity {
    pub injective: bool,
    pub collision: Option<(PointId, PointId)>,
}

pub fn check_injective(space: &FiniteSpace, t: &AuxMap) -> Injectivity {
    let n = t.len();
    for x in 0..n {
        for y in x + 1..n {
            if t.same_image(x, y) {
                return Injectivity {
                    injective: false,
                    collision: Some((space.point(x).clone(), space.point(y).clone())),
                };
            }
        }
    }
    Injectivity {
        injective: true,
        collision: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "yes",
            Decision::No => "no",
            Decision::Undecided => "undecided",
        })
    }
}

/// Why a property was decided the way it was.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rationale {
    /// Every sequence in a finite space has a constant subsequence.
    FiniteSpace,
    /// Image-convergent sequences in a finite space are eventually constant,
    /// and injectivity pulls that back.
    FiniteInjective,
    FiniteNonInjective,
    /// Known property of a built-in analytic family.
    BuiltInAnalytic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Classified {
    pub decision: Decision,
    pub rationale: Rationale,
}

impl Classified {
    fn new(decision: Decision, rationale: Rationale) -> Self {
        Classified {
            decision,
            rationale,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapProperties {
    pub injectivity: Injectivity,
    /// Every map on a finite (discrete) space is continuous.
    pub continuous: Classified,
    pub subsequentially_convergent: Classified,
    pub sequentially_convergent: Classified,
}

impl MapProperties {
    pub fn all_yes(&self) -> bool {
        self.injectivity.injective
            && [
                self.continuous,
                self.subsequentially_convergent,
                self.sequentially_convergent,
            ]
            .iter()
            .all(|c| c.decision == Decision::Yes)
    }
}

/// What the convergence classification is asked about.
#[derive(Debug, Clone, Copy)]
pub enum MapSubject<'a> {
    Finite {
        space: &'a FiniteSpace,
        map: &'a AuxMap,
    },
    Family(AnalyticFamily),
}

/// Decides the auxiliary-map properties, never guessing: anything that is
/// not settled by finiteness or a built-in family is `Undecided`.
pub fn classify_convergence(subject: MapSubject<'_>) -> MapProperties {
    match subject {
        MapSubject::Finite { space, map } => {
            let injectivity = check_injective(space, map);
            let sequential = if injectivity.injective {
                Classified::new(Decision::Yes, Rationale::FiniteInjective)
            } else {
                Classified::new(Decision::Undecided, Rationale::FiniteNonInjective)
            };
            MapProperties {
                injectivity,
                continuous: Classified::new(Decision::Yes, Rationale::FiniteSpace),
                subsequentially_convergent: Classified::new(Decision::Yes, Rationale::FiniteSpace),
                sequentially_convergent: sequential,
            }
        }
        MapSubject::Family(AnalyticFamily {
            id: FamilyId::Kannan23,
            ..
        }) => {
            // n ↦ 1/n^n is strictly monotone onto a set whose only limit point is 0
            let yes = Classified::new(Decision::Yes, Rationale::BuiltInAnalytic);
            MapProperties {
                injectivity: Injectivity {
                    injective: true,
                    collision: None,
                },
                continuous: yes,
                subsequentially_convergent: yes,
                sequentially_convergent: yes,
            }
        }
    }
}
