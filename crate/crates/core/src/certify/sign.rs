//! Adaptive bisection proof of a sign condition over an interval.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{Expression, Interval};

/// Sign predicate on the values of an expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignRelation {
    #[serde(rename = "GE0")]
    Ge0,
    #[serde(rename = "GT0")]
    Gt0,
    #[serde(rename = "LE0")]
    Le0,
    #[serde(rename = "LT0")]
    Lt0,
    #[serde(rename = "NE0")]
    Ne0,
}

impl SignRelation {
    pub fn holds(self, v: f64) -> bool {
        match self {
            SignRelation::Ge0 => v >= 0.0,
            SignRelation::Gt0 => v > 0.0,
            SignRelation::Le0 => v <= 0.0,
            SignRelation::Lt0 => v < 0.0,
            SignRelation::Ne0 => v != 0.0,
        }
    }

    /// True when every value in `enclosure` satisfies the relation.
    pub fn proven_by(self, enclosure: &Interval) -> bool {
        let (lo, hi) = (enclosure.lo(), enclosure.hi());
        match self {
            SignRelation::Ge0 => lo >= 0.0,
            SignRelation::Gt0 => lo > 0.0,
            SignRelation::Le0 => hi <= 0.0,
            SignRelation::Lt0 => hi < 0.0,
            SignRelation::Ne0 => lo > 0.0 || hi < 0.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            SignRelation::Ge0 => ">= 0",
            SignRelation::Gt0 => "> 0",
            SignRelation::Le0 => "<= 0",
            SignRelation::Lt0 => "< 0",
            SignRelation::Ne0 => "!= 0",
        }
    }
}

/// Three-valued outcome. Ordered `Refuted < Unknown < Certified`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Refuted,
    Unknown,
    Certified,
}

/// Result of [`verify_sign`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignCheck {
    pub verdict: Verdict,
    /// Point whose evaluated value violates the relation; set iff refuted.
    pub witness: Option<f64>,
    /// Number of leaves in the final subdivision.
    pub leaves: usize,
}

struct Leaf {
    domain: Interval,
    enclosure: Interval,
}

// Widest enclosure first, leftmost on ties.
impl Ord for Leaf {
    fn cmp(&self, other: &Self) -> Ordering {
        self.enclosure
            .width()
            .total_cmp(&other.enclosure.width())
            .then_with(|| other.domain.lo().total_cmp(&self.domain.lo()))
    }
}

impl PartialOrd for Leaf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Leaf {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Leaf {}

struct Prover<'a> {
    expr: &'a Expression,
    derivative: Expression,
    thresholds: Vec<f64>,
    relation: SignRelation,
}

impl Prover<'_> {
    /// Natural extension, intersected with the mean-value form when the
    /// expression is differentiable across the whole piece.
    fn enclose(&self, piece: Interval) -> Result<Interval> {
        let natural = self.expr.eval_interval(piece)?;
        Ok(match self.mean_value_form(piece) {
            Some(mv) => natural.intersect(&mv).unwrap_or(natural),
            None => natural,
        })
    }

    fn mean_value_form(&self, piece: Interval) -> Option<Interval> {
        if piece.width() == 0.0 || self.thresholds.iter().any(|t| piece.contains(*t)) {
            return None;
        }
        let m = piece.midpoint();
        let at_mid = self.expr.eval_interval(Interval::point(m)).ok()?;
        let slope = self.derivative.eval_interval(piece).ok()?;
        let offset = piece.sub(Interval::point(m));
        let mv = at_mid.add(slope.mul(offset));
        mv.is_finite().then_some(mv)
    }

    fn violation(&self, x: f64) -> Result<Option<f64>> {
        let v = self.expr.eval(x)?;
        Ok((!self.relation.holds(v)).then_some(x))
    }
}

/// Decides whether `rel` holds for `e` on every point of `iv`.
///
/// Pieces are bisected, widest enclosure first, until every piece's
/// enclosure proves the relation (`Certified`), a sampled point violates it
/// (`Refuted`, with that point as witness), or the leaf count reaches
/// `budget` (`Unknown`). Each new piece is sampled at its midpoint; the
/// initial interval also at both endpoints.
pub fn verify_sign(e: &Expression, iv: Interval, rel: SignRelation, budget: usize) -> Result<SignCheck> {
    if budget == 0 {
        return Err(Error::Precondition("verification budget must be at least 1".into()));
    }
    let prover = Prover {
        expr: e,
        derivative: e.differentiate(),
        thresholds: e.guard_thresholds(),
        relation: rel,
    };
    let refuted = |x: f64, leaves: usize| SignCheck { verdict: Verdict::Refuted, witness: Some(x), leaves };

    for x in [iv.midpoint(), iv.lo(), iv.hi()] {
        if let Some(w) = prover.violation(x)? {
            return Ok(refuted(w, 1));
        }
    }

    let mut leaves = 1;
    let mut stuck = false;
    let mut open = BinaryHeap::new();
    let enclosure = prover.enclose(iv)?;
    if !rel.proven_by(&enclosure) {
        open.push(Leaf { domain: iv, enclosure });
    }

    while let Some(leaf) = open.pop() {
        if leaves >= budget {
            return Ok(SignCheck { verdict: Verdict::Unknown, witness: None, leaves });
        }
        let (left, right) = leaf.domain.bisect();
        if left.width() == 0.0 || right.width() == 0.0 {
            // no double strictly inside; cannot refine further
            stuck = true;
            continue;
        }
        leaves += 1;
        for piece in [left, right] {
            if let Some(w) = prover.violation(piece.midpoint())? {
                return Ok(refuted(w, leaves));
            }
            let enclosure = prover.enclose(piece)?;
            if !rel.proven_by(&enclosure) {
                open.push(Leaf { domain: piece, enclosure });
            }
        }
    }

    let verdict = if stuck { Verdict::Unknown } else { Verdict::Certified };
    Ok(SignCheck { verdict, witness: None, leaves })
}
