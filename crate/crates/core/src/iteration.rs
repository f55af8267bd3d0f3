//! Picard iteration `x_{n+1} = S x_n` and exact checks of the convergence
//! bounds that the extended Kannan condition implies for the `T`-images.
//!
//! With `q = λ / (1 - λ)` and `g_n = d(Tx_n, Tx_{n+1})`, the checks are
//!
//! ```text
//! g_n            <= q · g_{n-1}              (one-step contraction)
//! g_n            <= q^n · g_0                (geometric decay)
//! d(Tx_m, Tx_n)  <= q^n / (1 - q) · g_0      (tail bound, m > n)
//! ```

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{AuxMap, SelfMap};
use crate::rational::Rational;
use crate::space::{FiniteSpace, PointId};

/// Default number of leading trajectory points used for the tail check.
pub const DEFAULT_TAIL_WINDOW: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub point: PointId,
    /// `d(T x_n, T S x_n)`, present when an auxiliary map was supplied.
    pub t_gap: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    FixedPoint(PointId),
    /// The orbit re-entered this cycle without reaching a fixed point.
    CycleDetected(Vec<PointId>),
    MaxIter,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trajectory {
    pub start: PointId,
    pub steps: Vec<Step>,
    pub terminated: Termination,
}

impl Trajectory {
    /// Number of applications of `S`.
    pub fn iterations(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn fixed_point(&self) -> Option<&PointId> {
        match &self.terminated {
            Termination::FixedPoint(p) => Some(p),
            _ => None,
        }
    }

    pub fn indices(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.point.index).collect()
    }
}

impl fmt::Display for Trajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<&str> = self.steps.iter().map(|s| s.point.label.as_str()).collect();
        write!(f, "{}", path.join(" -> "))?;
        match &self.terminated {
            Termination::FixedPoint(p) => write!(f, " (fixed point {p})"),
            Termination::CycleDetected(c) => {
                let c: Vec<&str> = c.iter().map(|p| p.label.as_str()).collect();
                write!(f, " (cycle [{}])", c.join(", "))
            }
            Termination::MaxIter => f.write_str(" (iteration limit)"),
        }
    }
}

/// Runs the Picard orbit from `x0` for at most `max_iter` applications of `S`.
///
/// On a finite space the orbit always ends in a fixed point or a cycle, so
/// [`Termination::MaxIter`] only means the budget was too small.
pub fn picard(
    space: &FiniteSpace,
    s: &SelfMap,
    t: Option<&AuxMap>,
    x0: usize,
    max_iter: usize,
) -> Result<Trajectory> {
    s.check_against(space)?;
    if x0 >= space.len() {
        return Err(Error::PointOutOfRange(x0));
    }
    if max_iter == 0 {
        return Err(Error::ZeroIterations);
    }
    let pulled = t.map(|t| t.pull_back(space)).transpose()?;
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut steps = Vec::new();
    let mut x = x0;
    let terminated = loop {
        let sx = s.apply(x);
        seen.insert(x, steps.len());
        steps.push(Step {
            point: space.point(x).clone(),
            t_gap: pulled.as_ref().map(|p| p.d(x, sx).clone()),
        });
        if sx == x {
            break Termination::FixedPoint(space.point(x).clone());
        }
        if let Some(&first) = seen.get(&sx) {
            let cycle = steps[first..].iter().map(|st| st.point.clone()).collect();
            break Termination::CycleDetected(cycle);
        }
        if steps.len() > max_iter {
            break Termination::MaxIter;
        }
        x = sx;
    };
    Ok(Trajectory {
        start: space.point(x0).clone(),
        steps,
        terminated,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepBound {
    pub n: usize,
    pub t_gap: Rational,
    /// `q · g_{n-1}`; absent for `n = 0`.
    pub ratio_bound: Option<Rational>,
    pub geometric_bound: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailBound {
    pub m: usize,
    pub n: usize,
    pub lhs: Rational,
    pub tail_bound: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub lambda: Rational,
    /// `λ / (1 - λ)`
    pub factor: Rational,
    pub steps: Vec<StepBound>,
    pub tails: Vec<TailBound>,
    pub all_hold: bool,
}

impl BoundReport {
    pub fn first_failure(&self) -> Option<String> {
        if let Some(s) = self.steps.iter().find(|s| !s.holds) {
            return Some(format!("step {}: gap {} exceeds bound", s.n, s.t_gap));
        }
        self.tails
            .iter()
            .find(|t| !t.holds)
            .map(|t| format!("tail ({}, {}): {} > {}", t.m, t.n, t.lhs, t.tail_bound))
    }
}

/// Checks the one-step, geometric and tail bounds along `traj` exactly.
///
/// Gaps are recomputed from `t` over consecutive recorded points; the tail
/// check covers every pair `m > n` among the first `window` points.
pub fn verify_bounds(
    space: &FiniteSpace,
    traj: &Trajectory,
    t: &AuxMap,
    lambda: &Rational,
    window: usize,
) -> Result<BoundReport> {
    if lambda.is_negative() || lambda >= Rational::half() {
        return Err(Error::LambdaOutOfRange(lambda.clone()));
    }
    if traj.steps.len() < 2 {
        return Err(Error::TrajectoryTooShort);
    }
    let pulled = t.pull_back(space)?;
    let idx = traj.indices();
    let factor = lambda / (Rational::one() - lambda);
    let gaps: Vec<Rational> = idx
        .windows(2)
        .map(|w| pulled.d(w[0], w[1]).clone())
        .collect();
    let g0 = &gaps[0];

    let mut power = Rational::one();
    let mut steps = Vec::with_capacity(gaps.len());
    for (n, gap) in gaps.iter().enumerate() {
        let geometric_bound = &power * g0;
        let ratio_bound = (n > 0).then(|| &factor * &gaps[n - 1]);
        let holds = gap <= geometric_bound && ratio_bound.as_ref().is_none_or(|b| gap <= b);
        steps.push(StepBound {
            n,
            t_gap: gap.clone(),
            ratio_bound,
            geometric_bound,
            holds,
        });
        power = &power * &factor;
    }

    let limit = idx.len().min(window.max(2));
    let scale = g0 / (Rational::one() - &factor);
    let mut tails = Vec::new();
    let mut power = Rational::one();
    for n in 0..limit {
        let tail_bound = &power * &scale;
        for m in n + 1..limit {
            let lhs = pulled.d(idx[m], idx[n]).clone();
            let holds = lhs <= tail_bound;
            tails.push(TailBound {
                m,
                n,
                lhs,
                tail_bound: tail_bound.clone(),
                holds,
            });
        }
        power = &power * &factor;
    }

    let all_hold = steps.iter().all(|s| s.holds) && tails.iter().all(|t| t.holds);
    Ok(BoundReport {
        lambda: lambda.clone(),
        factor,
        steps,
        tails,
        all_hold,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointCertificate {
    pub point: PointId,
    /// `d(S p, p)`, zero by construction.
    pub residual: Rational,
    pub unique: bool,
    /// Another fixed point when `unique` is false.
    pub other: Option<PointId>,
}

/// Every fixed point of `S`, found by scanning the whole table.
pub fn fixed_points_exhaustive(
    space: &FiniteSpace,
    s: &SelfMap,
) -> Result<Vec<FixedPointCertificate>> {
    s.check_against(space)?;
    let fixed: Vec<usize> = (0..space.len()).filter(|&p| s.apply(p) == p).collect();
    Ok(fixed
        .iter()
        .map(|&p| {
            let other = fixed
                .iter()
                .find(|&&q| q != p)
                .map(|&q| space.point(q).clone());
            FixedPointCertificate {
                point: space.point(p).clone(),
                residual: space.d(s.apply(p), p).clone(),
                unique: other.is_none(),
                other,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::space::SpaceKind;

    fn labels(t: &Trajectory) -> Vec<&str> {
        t.steps.iter().map(|s| s.point.label.as_str()).collect()
    }

    #[test]
    fn orbits_on_four_point_space() {
        let fx = fixtures::branciari_four_point();
        let i = |l: &str| fx.space.index_of(l).unwrap();

        let t = picard(&fx.space, &fx.s, None, i("3"), 10).unwrap();
        assert_eq!(labels(&t), ["3", "2"]);
        assert_eq!(t.fixed_point().unwrap().label, "2");
        assert_eq!(t.iterations(), 1);
        assert!(t.steps.iter().all(|s| s.t_gap.is_none()));

        let t = picard(&fx.space, &fx.s, Some(&fx.t), i("1"), 10).unwrap();
        assert_eq!(labels(&t), ["1", "4", "2"]);
        let gaps: Vec<_> = t.steps.iter().map(|s| s.t_gap.clone().unwrap()).collect();
        assert_eq!(
            gaps,
            vec![Rational::from(4), Rational::from(1), Rational::zero()]
        );
        assert_eq!(t.to_string(), "1 -> 4 -> 2 (fixed point 2)");
    }

    #[test]
    fn swap_cycles() {
        let space = FiniteSpace::from_pairs(
            SpaceKind::Metric,
            vec!["a".into(), "b".into()],
            vec![(0, 1, Rational::one())],
        )
        .unwrap();
        let s = SelfMap::new(&space, vec![1, 0]).unwrap();
        let t = picard(&space, &s, None, 0, 10).unwrap();
        match &t.terminated {
            Termination::CycleDetected(c) => {
                assert_eq!(
                    c.iter().map(|p| p.label.as_str()).collect::<Vec<_>>(),
                    ["a", "b"]
                );
            }
            other => panic!("expected a cycle, got {other:?}"),
        }
        assert!(fixed_points_exhaustive(&space, &s).unwrap().is_empty());
    }

    #[test]
    fn iteration_budget() {
        let fx = fixtures::branciari_four_point();
        let t = picard(&fx.space, &fx.s, None, 0, 1).unwrap();
        assert_eq!(t.terminated, Termination::MaxIter);
        assert_eq!(labels(&t), ["1", "4"]);
        assert!(matches!(
            picard(&fx.space, &fx.s, None, 0, 0),
            Err(Error::ZeroIterations)
        ));
        assert!(matches!(
            picard(&fx.space, &fx.s, None, 9, 5),
            Err(Error::PointOutOfRange(9))
        ));
    }

    #[test]
    fn bounds_on_four_point_orbit() {
        let fx = fixtures::branciari_four_point();
        let traj = picard(&fx.space, &fx.s, Some(&fx.t), 0, 10).unwrap();
        let rep = verify_bounds(
            &fx.space,
            &traj,
            &fx.t,
            &Rational::new(1, 3),
            DEFAULT_TAIL_WINDOW,
        )
        .unwrap();
        assert!(rep.all_hold, "{:?}", rep.first_failure());
        assert_eq!(rep.factor, Rational::half());
        // g = [4, 1], bounds 4 and 2
        assert_eq!(rep.steps[1].geometric_bound, Rational::from(2));
        assert_eq!(rep.steps[1].ratio_bound, Some(Rational::from(2)));
        assert_eq!(rep.tails.len(), 3);
        assert_eq!(rep.tails[0].tail_bound, Rational::from(8));
    }

    #[test]
    fn bounds_reject_bad_input() {
        let fx = fixtures::branciari_four_point();
        let traj = picard(&fx.space, &fx.s, Some(&fx.t), 0, 10).unwrap();
        assert!(matches!(
            verify_bounds(&fx.space, &traj, &fx.t, &Rational::half(), 10),
            Err(Error::LambdaOutOfRange(_))
        ));
        let single = picard(&fx.space, &fx.s, None, 1, 10).unwrap();
        assert!(matches!(
            verify_bounds(&fx.space, &single, &fx.t, &Rational::new(1, 3), 10),
            Err(Error::TrajectoryTooShort)
        ));
    }

    #[test]
    fn constant_map_bounds_hold_for_any_lambda() {
        let fx = fixtures::branciari_four_point();
        let s = SelfMap::constant(4, 3);
        let traj = picard(&fx.space, &s, Some(&fx.t), 0, 10).unwrap();
        for l in [
            Rational::zero(),
            Rational::new(1, 100),
            Rational::new(49, 100),
        ] {
            assert!(
                verify_bounds(&fx.space, &traj, &fx.t, &l, 10)
                    .unwrap()
                    .all_hold
            );
        }
    }

    #[test]
    fn fixed_point_scan() {
        let fx = fixtures::branciari_four_point();
        let fps = fixed_points_exhaustive(&fx.space, &fx.s).unwrap();
        assert_eq!(fps.len(), 1);
        assert_eq!(fps[0].point.label, "2");
        assert!(fps[0].unique && fps[0].residual.is_zero());

        let all = fixed_points_exhaustive(&fx.space, &SelfMap::identity(4)).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all
            .iter()
            .all(|c| !c.unique && c.other.as_ref().is_some_and(|o| o != &c.point)));
    }
}
