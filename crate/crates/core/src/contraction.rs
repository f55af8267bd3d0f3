//! Exact contraction constants for the Kannan condition
//!
//! ```text
//! d(Sx, Sy) <= λ [d(x, Sx) + d(y, Sy)]
//! ```
//!
//! and its extension through an auxiliary map `T`
//!
//! ```text
//! d(TSx, TSy) <= λ [d(Tx, TSx) + d(Ty, TSy)]
//! ```
//!
//! The minimal `λ` is the maximum over unordered pairs of the ratio of the two
//! sides. A pair contributes `0` when both sides vanish and makes the constant
//! infinite when only the right-hand bracket vanishes.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::maps::{
    check_injective, classify_convergence, AnalyticFamily, AuxMap, Decision, MapProperties,
    MapSubject, SelfMap,
};
use crate::rational::Rational;
use crate::space::{
    validate_generalized_metric, validate_metric, AxiomViolation, FiniteSpace, PointId,
};

/// Default cap on the number of points for exhaustive certificate search.
pub const DEFAULT_SEARCH_BUDGET: usize = 10;

/// Unordered pairs left out of the λ scan, stored as `(min, max)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExcludedPairs(BTreeSet<(usize, usize)>);

impl ExcludedPairs {
    pub fn none() -> Self {
        ExcludedPairs::default()
    }

    /// Every pair `{x, point}` for `x` in a space of `n` points.
    pub fn touching(n: usize, point: usize) -> Self {
        ExcludedPairs((0..n).map(|x| (x.min(point), x.max(point))).collect())
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.0.insert((a.min(b), a.max(b)));
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.0.contains(&(a.min(b), a.max(b)))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    fn labelled(&self, space: &FiniteSpace) -> Vec<(PointId, PointId)> {
        self.iter()
            .map(|(a, b)| (space.point(a).clone(), space.point(b).clone()))
            .collect()
    }
}

/// A contraction constant, possibly infinite.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum LambdaBound {
    Finite(Rational),
    Infinite,
}

impl LambdaBound {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            LambdaBound::Finite(r) => Some(r),
            LambdaBound::Infinite => None,
        }
    }

    pub fn is_below_half(&self) -> bool {
        matches!(self, LambdaBound::Finite(r) if r < Rational::half())
    }
}

impl fmt::Display for LambdaBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaBound::Finite(r) => write!(f, "{r}"),
            LambdaBound::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for LambdaBound {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LambdaBound {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        if s == "inf" {
            Ok(LambdaBound::Infinite)
        } else {
            s.parse()
                .map(LambdaBound::Finite)
                .map_err(serde::de::Error::custom)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaVerdict {
    pub lambda_min: LambdaBound,
    pub feasible_below_half: bool,
    /// First pair (in index order) attaining the maximum; `None` only when
    /// every pair is excluded.
    pub argmax_pair: Option<(PointId, PointId)>,
    pub excluded_pairs: Vec<(PointId, PointId)>,
}

impl LambdaVerdict {
    pub fn argmax_labels(&self) -> Option<(&str, &str)> {
        self.argmax_pair
            .as_ref()
            .map(|(a, b)| (a.label.as_str(), b.label.as_str()))
    }
}

/// Ratio for one pair under `dist`; `None` means infinite.
fn pair_ratio(dist: &FiniteSpace, s: &SelfMap, x: usize, y: usize) -> Option<Rational> {
    let (sx, sy) = (s.apply(x), s.apply(y));
    let num = dist.d(sx, sy);
    let den = dist.d(x, sx) + dist.d(y, sy);
    if den.is_zero() {
        num.is_zero().then(Rational::zero)
    } else {
        Some(num / den)
    }
}

fn scan(
    labels: &FiniteSpace,
    dist: &FiniteSpace,
    s: &SelfMap,
    excluded: &ExcludedPairs,
) -> LambdaVerdict {
    let n = dist.len();
    let mut best: Option<(LambdaBound, usize, usize)> = None;
    'outer: for x in 0..n {
        for y in x..n {
            if excluded.contains(x, y) {
                continue;
            }
            let ratio = match pair_ratio(dist, s, x, y) {
                Some(r) => LambdaBound::Finite(r),
                None => LambdaBound::Infinite,
            };
            let better = best.as_ref().is_none_or(|(b, _, _)| &ratio > b);
            if better {
                let stop = ratio == LambdaBound::Infinite;
                best = Some((ratio, x, y));
                if stop {
                    break 'outer;
                }
            }
        }
    }
    let (lambda_min, argmax_pair) = match best {
        Some((l, x, y)) => (l, Some((labels.point(x).clone(), labels.point(y).clone()))),
        None => (LambdaBound::Finite(Rational::zero()), None),
    };
    LambdaVerdict {
        feasible_below_half: lambda_min.is_below_half(),
        lambda_min,
        argmax_pair,
        excluded_pairs: excluded.labelled(labels),
    }
}

/// Minimal λ for the classical Kannan condition.
pub fn kannan_lambda(
    space: &FiniteSpace,
    s: &SelfMap,
    excluded: &ExcludedPairs,
) -> Result<LambdaVerdict> {
    s.check_against(space)?;
    Ok(scan(space, space, s, excluded))
}

/// Minimal λ for the condition taken through `T`. With `T` the identity this
/// is exactly [`kannan_lambda`].
pub fn t_kannan_lambda(
    space: &FiniteSpace,
    s: &SelfMap,
    t: &AuxMap,
    excluded: &ExcludedPairs,
) -> Result<LambdaVerdict> {
    s.check_against(space)?;
    let pulled = t.pull_back(space)?;
    Ok(scan(space, &pulled, s, excluded))
}

/// Pairs where the T-condition fails at the given λ, in index order.
pub fn t_kannan_failures(
    space: &FiniteSpace,
    s: &SelfMap,
    t: &AuxMap,
    lambda: &Rational,
    excluded: &ExcludedPairs,
) -> Result<Vec<(PointId, PointId)>> {
    s.check_against(space)?;
    let pulled = t.pull_back(space)?;
    let n = space.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x..n {
            if excluded.contains(x, y) {
                continue;
            }
            let (sx, sy) = (s.apply(x), s.apply(y));
            let lhs = pulled.d(sx, sy);
            let rhs = lambda * (pulled.d(x, sx) + pulled.d(y, sy));
            if lhs > rhs {
                out.push((space.point(x).clone(), space.point(y).clone()));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchSpace {
    Permutations,
    /// On a finite set every injective self-map is a bijection, so this
    /// enumerates the same maps as [`SearchSpace::Permutations`].
    Injections,
}

/// An auxiliary map witnessing the T-condition below `1/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub t: SelfMap,
    /// Exact minimal λ achieved by `t`.
    pub lambda: Rational,
    pub properties: MapProperties,
}

/// Distances scaled to integers by the lcm of all denominators, so the
/// search compares `q·num <= p·den` without any division.
struct IntegerTable {
    n: usize,
    d: Vec<BigInt>,
}

impl IntegerTable {
    fn new(space: &FiniteSpace) -> Self {
        let n = space.len();
        let mut lcm = BigInt::one();
        for i in 0..n {
            for j in 0..n {
                lcm = lcm.lcm(space.d(i, j).denom());
            }
        }
        let d = (0..n * n)
            .map(|k| {
                let r = space.d(k / n, k % n);
                r.numer() * (&lcm / r.denom())
            })
            .collect();
        IntegerTable { n, d }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.d[i * self.n + j]
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p
        .iter()
        .rposition(|&v| v > p[i])
        .expect("pivot has a larger successor");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Exhaustively searches for the lexicographically smallest injective `T`
/// (compared as the image table in point order) whose T-condition constant
/// is at most `lambda_cap`.
pub fn search_certificate(
    space: &FiniteSpace,
    s: &SelfMap,
    lambda_cap: &Rational,
    search_space: SearchSpace,
    budget: usize,
) -> Result<Option<Certificate>> {
    s.check_against(space)?;
    if lambda_cap.is_negative() || lambda_cap >= Rational::half() {
        return Err(Error::LambdaOutOfRange(lambda_cap.clone()));
    }
    let n = space.len();
    if n > budget {
        return Err(Error::SearchSpaceTooLarge { points: n, budget });
    }
    let _ = search_space;
    let table = IntegerTable::new(space);
    let (p, q) = (lambda_cap.numer(), lambda_cap.denom());
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
    let s_img: Vec<usize> = (0..n).map(|x| s.apply(x)).collect();

    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let ok = pairs.iter().all(|&(x, y)| {
            let (sx, sy) = (s_img[x], s_img[y]);
            let num = table.at(perm[sx], perm[sy]);
            let den = table.at(perm[x], perm[sx]) + table.at(perm[y], perm[sy]);
            q * num <= p * &den
        });
        if ok {
            let t = SelfMap::new(space, perm)?;
            let aux = AuxMap::Table(t.clone());
            let verdict = t_kannan_lambda(space, s, &aux, &ExcludedPairs::none())?;
            let lambda = verdict
                .lambda_min
                .finite()
                .cloned()
                .expect("a certificate satisfies the condition at a finite cap");
            debug_assert!(&lambda <= lambda_cap);
            let properties = classify_convergence(MapSubject::Finite { space, map: &aux });
            return Ok(Some(Certificate {
                t,
                lambda,
                properties,
            }));
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

/// A hypothesis of the fixed-point theorem that is not met.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Obstruction {
    /// The distance fails the axioms the theorem is stated for.
    AxiomsViolated,
    NotInjective,
    LambdaNotBelowHalf,
    /// Continuity or subsequential convergence of `T` is not established.
    ConvergenceNotEstablished,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Obstruction::AxiomsViolated => "space axioms violated",
            Obstruction::NotInjective => "T is not injective",
            Obstruction::LambdaNotBelowHalf => "no lambda below 1/2",
            Obstruction::ConvergenceNotEstablished => "convergence of T not established",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub applies: bool,
    pub obstructions: Vec<Obstruction>,
}

impl TheoremVerdict {
    fn from_obstructions(obstructions: Vec<Obstruction>) -> Self {
        TheoremVerdict {
            applies: obstructions.is_empty(),
            obstructions,
        }
    }
}

/// Everything known about `(space, S, T)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub metric_violations: Vec<AxiomViolation>,
    pub generalized_violations: Vec<AxiomViolation>,
    /// Classical condition, no auxiliary map.
    pub kannan: LambdaVerdict,
    /// Condition through `T` (the identity when no `T` was given).
    pub extended: LambdaVerdict,
    pub aux_is_identity: bool,
    pub properties: MapProperties,
    /// Extended Kannan theorem on complete metric spaces.
    pub metric_theorem: TheoremVerdict,
    /// Extended Kannan theorem on generalized metric spaces.
    pub generalized_theorem: TheoremVerdict,
}

impl AnalysisReport {
    pub fn any_theorem_applies(&self) -> bool {
        self.metric_theorem.applies || self.generalized_theorem.applies
    }
}

/// Validates the space, computes both constants, classifies `T`, and decides
/// whether each fixed-point theorem's hypotheses hold.
///
/// `family` marks `t` as the built-in family's own auxiliary map, so its
/// convergence properties come from the family rather than from finiteness.
pub fn analyze(
    space: &FiniteSpace,
    s: &SelfMap,
    t: Option<&AuxMap>,
    excluded: &ExcludedPairs,
    family: Option<AnalyticFamily>,
) -> Result<AnalysisReport> {
    let identity = AuxMap::identity(space.len());
    let t = t.unwrap_or(&identity);
    let metric_violations = validate_metric(space);
    let generalized_violations = validate_generalized_metric(space);
    let kannan = kannan_lambda(space, s, excluded)?;
    let extended = t_kannan_lambda(space, s, t, excluded)?;
    let properties = match family {
        Some(f) => {
            let mut p = classify_convergence(MapSubject::Family(f));
            p.injectivity = check_injective(space, t);
            p
        }
        None => classify_convergence(MapSubject::Finite { space, map: t }),
    };

    let mut shared = Vec::new();
    if !properties.injectivity.injective {
        shared.push(Obstruction::NotInjective);
    }
    if !extended.feasible_below_half {
        shared.push(Obstruction::LambdaNotBelowHalf);
    }
    if properties.continuous.decision != Decision::Yes
        || properties.subsequentially_convergent.decision != Decision::Yes
    {
        shared.push(Obstruction::ConvergenceNotEstablished);
    }
    let with_axioms = |violations: &[AxiomViolation]| {
        let mut o = Vec::new();
        if !violations.is_empty() {
            o.push(Obstruction::AxiomsViolated);
        }
        o.extend(shared.iter().copied());
        TheoremVerdict::from_obstructions(o)
    };
    let metric_theorem = with_axioms(&metric_violations);
    let generalized_theorem = with_axioms(&generalized_violations);

    Ok(AnalysisReport {
        metric_violations,
        generalized_violations,
        kannan,
        extended,
        aux_is_identity: t.is_identity(),
        properties,
        metric_theorem,
        generalized_theorem,
    })
}
