use serde::{Deserialize, Serialize};

use super::root::{fixed_point_residual, RootEnclosure};
use super::sign::{verify_sign, SignRelation, Verdict};
use crate::error::{Error, Result};
use crate::expr::{Expression, Interval};

/// Which convergence result a certificate is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// Newton converges from every start in `[a, c]`, root `c` on the right.
    Theorem1,
    /// Newton converges from every start in `[c, b]`, root `c` on the left.
    Theorem2,
    /// Mean iteration converges from `[a, c)` to the fixed point `c`.
    Lemma1,
    /// Mean iteration converges from `(c, b]` to the fixed point `c`.
    Lemma2,
}

/// Side of the root the certified interval lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub name: String,
    pub statement: String,
    pub relation: SignRelation,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<f64>,
}

/// Record that the hypotheses of a convergence result hold (or fail) on an
/// interval next to a root or fixed point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub theorem: Theorem,
    pub side: Side,
    /// Closed interval the conditions were checked on. It ends at the near
    /// edge of `root`.
    pub interval: Interval,
    pub root: RootEnclosure,
    pub verdict: Verdict,
    pub conditions: Vec<ConditionReport>,
    /// Total leaves used across all conditions.
    pub effort: usize,
    /// Width of the root enclosure, where nothing is checked.
    pub blind_spot_width: f64,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    pub fn condition(&self, name: &str) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.name == name)
    }

    /// Outer endpoint, the start farthest from the root.
    pub fn outer(&self) -> f64 {
        match self.side {
            Side::Left => self.interval.lo(),
            Side::Right => self.interval.hi(),
        }
    }
}

fn aggregate(conditions: &[ConditionReport]) -> Verdict {
    conditions.iter().map(|c| c.verdict).min().unwrap_or(Verdict::Unknown)
}

fn checked_interval(side: Side, outer: f64, root: &RootEnclosure) -> Result<Interval> {
    let geometry_ok = match side {
        Side::Left => outer < root.lo(),
        Side::Right => root.hi() < outer,
    };
    if !outer.is_finite() || !geometry_ok {
        return Err(Error::Precondition(format!(
            "outer endpoint {outer} must lie strictly {} the enclosure {}",
            if side == Side::Left { "left of" } else { "right of" },
            root.interval
        )));
    }
    match side {
        Side::Left => Interval::new(outer, root.lo()),
        Side::Right => Interval::new(root.hi(), outer),
    }
}

struct Condition {
    name: &'static str,
    statement: &'static str,
    expr: Expression,
    relation: SignRelation,
}

fn run(
    theorem: Theorem,
    side: Side,
    interval: Interval,
    root: RootEnclosure,
    conditions: Vec<Condition>,
    budget: usize,
) -> Result<Certificate> {
    let mut effort = 0;
    let mut reports = Vec::with_capacity(conditions.len());
    for c in conditions {
        let check = verify_sign(&c.expr, interval, c.relation, budget)?;
        effort += check.leaves;
        reports.push(ConditionReport {
            name: c.name.to_string(),
            statement: c.statement.to_string(),
            relation: c.relation,
            verdict: check.verdict,
            witness: check.witness,
        });
    }
    Ok(Certificate {
        theorem,
        side,
        interval,
        root,
        verdict: aggregate(&reports),
        conditions: reports,
        effort,
        blind_spot_width: root.width,
    })
}

/// Checks the Newton convergence hypotheses on the closed interval between
/// `outer` and the near edge of `root`:
///
/// * C1: `f·f'' >= 0`
/// * C2: `f·f' < 0` on the left side, `> 0` on the right side
/// * C3: `f' != 0`
/// * C4: `f != 0` (the root in the enclosure is the only one)
pub fn check_theorem(
    e: &Expression,
    side: Side,
    outer: f64,
    root: RootEnclosure,
    budget: usize,
) -> Result<Certificate> {
    let interval = checked_interval(side, outer, &root)?;
    let d1 = e.differentiate();
    let d2 = d1.differentiate();
    let (theorem, c2_relation, c2_statement) = match side {
        Side::Left => (Theorem::Theorem1, SignRelation::Lt0, "f*f' < 0"),
        Side::Right => (Theorem::Theorem2, SignRelation::Gt0, "f*f' > 0"),
    };
    let conditions = vec![
        Condition {
            name: "C1",
            statement: "f*f'' >= 0",
            expr: Expression::mul(e.clone(), d2),
            relation: SignRelation::Ge0,
        },
        Condition {
            name: "C2",
            statement: c2_statement,
            expr: Expression::mul(e.clone(), d1.clone()),
            relation: c2_relation,
        },
        Condition { name: "C3", statement: "f' != 0", expr: d1, relation: SignRelation::Ne0 },
        Condition { name: "C4", statement: "f != 0", expr: e.clone(), relation: SignRelation::Ne0 },
    ];
    run(theorem, side, interval, root, conditions, budget)
}

/// Checks the mean-iteration hypotheses for the map `g` next to the fixed
/// point enclosure:
///
/// * L1: `g' + 1 >= 0`
/// * L2: `g(x) - x > 0` on the left side, `< 0` on the right side
/// * L3: `g(x) - x != 0` (the fixed point is unique)
pub fn check_lemma_conditions(
    g: &Expression,
    side: Side,
    outer: f64,
    fixed_point: RootEnclosure,
    budget: usize,
) -> Result<Certificate> {
    let interval = checked_interval(side, outer, &fixed_point)?;
    let residual = fixed_point_residual(g);
    let (theorem, l2_relation, l2_statement) = match side {
        Side::Left => (Theorem::Lemma1, SignRelation::Gt0, "g(x) - x > 0"),
        Side::Right => (Theorem::Lemma2, SignRelation::Lt0, "g(x) - x < 0"),
    };
    let conditions = vec![
        Condition {
            name: "L1",
            statement: "g' + 1 >= 0",
            expr: Expression::add(g.differentiate(), Expression::Constant(1.0)),
            relation: SignRelation::Ge0,
        },
        Condition { name: "L2", statement: l2_statement, expr: residual.clone(), relation: l2_relation },
        Condition { name: "L3", statement: "g(x) - x != 0", expr: residual, relation: SignRelation::Ne0 },
    ];
    run(theorem, side, interval, fixed_point, conditions, budget)
}
