//! Finite distance spaces and their axiom validators.
//!
//! A [`FiniteSpace`] is a labelled point set with an exact distance table.
//! It carries a declared [`SpaceKind`], but the declaration is only a claim:
//! [`validate_metric`] and [`validate_generalized_metric`] check the axioms
//! exhaustively and return every violating witness.
//!
//! The generalized (rectangular) axiom replaces the triangle inequality by
//!
//! ```text
//! d(x, y) <= d(x, w) + d(w, z) + d(z, y)
//! ```
//!
//! for all `x, y` and all distinct `w, z` outside `{x, y}`. Spaces with fewer
//! than four points have no such quadruple when `x != y`, so they satisfy the
//! rectangular axiom vacuously.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Metric,
    Generalized,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::Metric => f.write_str("metric"),
            SpaceKind::Generalized => f.write_str("generalized"),
        }
    }
}

/// A point of a finite space: its position in the point list plus its label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointId {
    pub index: usize,
    pub label: String,
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<PointId>,
    // row-major n x n table
    dist: Vec<Rational>,
    kind: SpaceKind,
}

impl FiniteSpace {
    /// Builds a space from one distance per unordered pair of distinct points.
    ///
    /// The diagonal is zero and the table is symmetric by construction. Every
    /// unordered pair must be given exactly once; missing, repeated or negative
    /// entries are rejected as [`Error::MalformedSpace`].
    pub fn from_pairs<I>(kind: SpaceKind, labels: Vec<String>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let points = make_points(labels)?;
        let n = points.len();
        let mut table: Vec<Option<Rational>> = vec![None; n * n];
        for i in 0..n {
            table[i * n + i] = Some(Rational::zero());
        }
        for (a, b, d) in pairs {
            if a >= n || b >= n {
                return Err(Error::PointOutOfRange(a.max(b)));
            }
            if a == b {
                return Err(Error::MalformedSpace(format!(
                    "self-distance given for point `{}`",
                    points[a].label
                )));
            }
            if d.is_negative() {
                return Err(Error::MalformedSpace(format!(
                    "negative distance {d} between `{}` and `{}`",
                    points[a].label, points[b].label
                )));
            }
            if table[a * n + b].is_some() {
                return Err(Error::MalformedSpace(format!(
                    "distance between `{}` and `{}` given more than once",
                    points[a].label, points[b].label
                )));
            }
            table[a * n + b] = Some(d.clone());
            table[b * n + a] = Some(d);
        }
        let mut dist = Vec::with_capacity(n * n);
        for (k, entry) in table.into_iter().enumerate() {
            match entry {
                Some(d) => dist.push(d),
                None => {
                    let (i, j) = (k / n, k % n);
                    return Err(Error::MalformedSpace(format!(
                        "missing distance between `{}` and `{}`",
                        points[i].label, points[j].label
                    )));
                }
            }
        }
        Ok(FiniteSpace { points, dist, kind })
    }

    /// Builds a space from a full square table. No symmetry or zero diagonal is
    /// imposed, so the validators can report those violations.
    pub fn from_matrix(
        kind: SpaceKind,
        labels: Vec<String>,
        rows: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let points = make_points(labels)?;
        let n = points.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedSpace(format!(
                "distance matrix must be {n} x {n}"
            )));
        }
        let dist: Vec<Rational> = rows.into_iter().flatten().collect();
        if let Some(k) = dist.iter().position(Rational::is_negative) {
            return Err(Error::MalformedSpace(format!(
                "negative distance {} between `{}` and `{}`",
                dist[k],
                points[k / n].label,
                points[k % n].label
            )));
        }
        Ok(FiniteSpace { points, dist, kind })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false: construction rejects empty point lists.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    /// Same table, different declared kind.
    pub fn with_kind(mut self, kind: SpaceKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &PointId {
        &self.points[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p.label == label)
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i * self.points.len() + j]
    }

    /// Multiplies every distance by `factor` (which must be positive).
    pub fn scaled(&self, factor: &Rational) -> Self {
        assert!(factor.is_positive(), "scale factor must be positive");
        FiniteSpace {
            points: self.points.clone(),
            dist: self.dist.iter().map(|d| d * factor).collect(),
            kind: self.kind,
        }
    }

    /// The same space with points listed in a different order.
    /// `order[k]` is the old index of the point placed at new index `k`.
    pub fn reordered(&self, order: &[usize]) -> Self {
        let n = self.len();
        assert_eq!(order.len(), n);
        let points = order
            .iter()
            .enumerate()
            .map(|(k, &old)| PointId {
                index: k,
                label: self.points[old].label.clone(),
            })
            .collect();
        let mut dist = Vec::with_capacity(n * n);
        for &a in order {
            for &b in order {
                dist.push(self.d(a, b).clone());
            }
        }
        FiniteSpace {
            points,
            dist,
            kind: self.kind,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.d(i, j) == self.d(j, i)))
    }
}

fn make_points(labels: Vec<String>) -> Result<Vec<PointId>> {
    if labels.is_empty() {
        return Err(Error::MalformedSpace("space has no points".into()));
    }
    let mut seen = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if let Some(prev) = seen.insert(l.as_str(), i) {
            return Err(Error::MalformedSpace(format!(
                "label `{l}` used for points {prev} and {i}"
            )));
        }
    }
    Ok(labels
        .into_iter()
        .enumerate()
        .map(|(index, label)| PointId { index, label })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axiom {
    /// Never produced by the validators: negative distances are rejected when
    /// the space is built. Kept so reports share one axiom vocabulary.
    NonNegativity,
    IdentityOfIndiscernibles,
    Symmetry,
    Triangle,
    Rectangular,
}

/// One failing instance of an axiom.
///
/// Witness layout by axiom:
/// - identity: `[x, y]` with `lhs = d(x, y)`, `rhs = 0`
/// - symmetry: `[x, y]` with `lhs = d(x, y)`, `rhs = d(y, x)`
/// - triangle: `[x, z, y]` with `lhs = d(x, y)`, `rhs = d(x, z) + d(z, y)`
/// - rectangular: `[x, w, z, y]` with `lhs = d(x, y)`, `rhs = d(x, w) + d(w, z) + d(z, y)`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<PointId>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl AxiomViolation {
    fn new(
        space: &FiniteSpace,
        axiom: Axiom,
        witness: &[usize],
        lhs: Rational,
        rhs: Rational,
    ) -> Self {
        AxiomViolation {
            axiom,
            witness: witness.iter().map(|&i| space.point(i).clone()).collect(),
            lhs,
            rhs,
        }
    }

    pub fn witness_indices(&self) -> Vec<usize> {
        self.witness.iter().map(|p| p.index).collect()
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<&str> = self.witness.iter().map(|p| p.label.as_str()).collect();
        match self.axiom {
            Axiom::Triangle => write!(
                f,
                "triangle ({}): d({},{}) = {} > d({},{}) + d({},{}) = {}",
                w.join(","),
                w[0],
                w[2],
                self.lhs,
                w[0],
                w[1],
                w[1],
                w[2],
                self.rhs
            ),
            Axiom::Rectangular => write!(
                f,
                "rectangular ({}): d({},{}) = {} > d({},{}) + d({},{}) + d({},{}) = {}",
                w.join(","),
                w[0],
                w[3],
                self.lhs,
                w[0],
                w[1],
                w[1],
                w[2],
                w[2],
                w[3],
                self.rhs
            ),
            Axiom::Symmetry => write!(
                f,
                "symmetry ({}): d({},{}) = {} != d({},{}) = {}",
                w.join(","),
                w[0],
                w[1],
                self.lhs,
                w[1],
                w[0],
                self.rhs
            ),
            Axiom::IdentityOfIndiscernibles => {
                write!(
                    f,
                    "identity ({}): d({},{}) = {}",
                    w.join(","),
                    w[0],
                    w[1],
                    self.lhs
                )
            }
            Axiom::NonNegativity => {
                write!(
                    f,
                    "non-negativity ({}): {} < {}",
                    w.join(","),
                    self.lhs,
                    self.rhs
                )
            }
        }
    }
}

fn basic_violations(space: &FiniteSpace, out: &mut Vec<AxiomViolation>) {
    let n = space.len();
    for i in 0..n {
        if !space.d(i, i).is_zero() {
            out.push(AxiomViolation::new(
                space,
                Axiom::IdentityOfIndiscernibles,
                &[i, i],
                space.d(i, i).clone(),
                Rational::zero(),
            ));
        }
        for j in i + 1..n {
            let (a, b) = if space.d(i, j).is_zero() {
                (i, j)
            } else if space.d(j, i).is_zero() {
                (j, i)
            } else {
                continue;
            };
            out.push(AxiomViolation::new(
                space,
                Axiom::IdentityOfIndiscernibles,
                &[a, b],
                Rational::zero(),
                Rational::zero(),
            ));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if space.d(i, j) != space.d(j, i) {
                out.push(AxiomViolation::new(
                    space,
                    Axiom::Symmetry,
                    &[i, j],
                    space.d(i, j).clone(),
                    space.d(j, i).clone(),
                ));
            }
        }
    }
}

fn canonical_order(mut v: Vec<AxiomViolation>) -> Vec<AxiomViolation> {
    v.sort_by(|a, b| {
        a.axiom
            .cmp(&b.axiom)
            .then_with(|| a.witness_indices().cmp(&b.witness_indices()))
    });
    v
}

/// Checks identity, symmetry and the triangle inequality.
///
/// Triangle witnesses are reported once per unordered pair `{x, y}` with
/// `x < y`; on an asymmetric table the symmetry violations already show the
/// space is not a metric.
pub fn validate_metric(space: &FiniteSpace) -> Vec<AxiomViolation> {
    let mut out = Vec::new();
    basic_violations(space, &mut out);
    let n = space.len();
    for x in 0..n {
        for y in x + 1..n {
            let lhs = space.d(x, y);
            for z in (0..n).filter(|&z| z != x && z != y) {
                let rhs = space.d(x, z) + space.d(z, y);
                if lhs > rhs {
                    out.push(AxiomViolation::new(
                        space,
                        Axiom::Triangle,
                        &[x, z, y],
                        lhs.clone(),
                        rhs,
                    ));
                }
            }
        }
    }
    canonical_order(out)
}

/// Checks identity, symmetry and the rectangular inequality.
///
/// The quadruple scan covers `x <= y` (the `x = y` case included, where the
/// inequality holds as soon as the diagonal is zero) and every ordered pair
/// of distinct `w, z` outside `{x, y}`.
pub fn validate_generalized_metric(space: &FiniteSpace) -> Vec<AxiomViolation> {
    let mut out = Vec::new();
    basic_violations(space, &mut out);
    let n = space.len();
    for x in 0..n {
        for y in x..n {
            let lhs = space.d(x, y);
            for w in (0..n).filter(|&w| w != x && w != y) {
                let head = space.d(x, w);
                for z in (0..n).filter(|&z| z != x && z != y && z != w) {
                    let rhs = head + space.d(w, z) + space.d(z, y);
                    if lhs > rhs {
                        out.push(AxiomViolation::new(
                            space,
                            Axiom::Rectangular,
                            &[x, w, z, y],
                            lhs.clone(),
                            rhs,
                        ));
                    }
                }
            }
        }
    }
    canonical_order(out)
}

/// Validates against the axioms of the space's declared kind.
pub fn validate_declared(space: &FiniteSpace) -> Vec<AxiomViolation> {
    match space.kind() {
        SpaceKind::Metric => validate_metric(space),
        SpaceKind::Generalized => validate_generalized_metric(space),
    }
}
