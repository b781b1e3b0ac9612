use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    Newton,
    MeanIterate,
}

/// Why an iteration stopped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "detail")]
pub enum Termination {
    /// Step and residual tests both passed at the final iterate.
    Converged,
    MaxIter,
    DerivativeZero,
    CycleDetected { period: usize, points: Vec<f64> },
    /// The last iterate lies outside the allowed domain.
    LeftDomain,
    DomainError(String),
    /// No certificate, so no iteration was attempted.
    Refused,
}

impl Termination {
    pub fn kind(&self) -> &'static str {
        match self {
            Termination::Converged => "Converged",
            Termination::MaxIter => "MaxIter",
            Termination::DerivativeZero => "DerivativeZero",
            Termination::CycleDetected { .. } => "CycleDetected",
            Termination::LeftDomain => "LeftDomain",
            Termination::DomainError(_) => "DomainError",
            Termination::Refused => "Refused",
        }
    }
}

/// Full record of one solve.
///
/// `residuals[i]` is `f(iterates[i])` for Newton and `g(x) - x` for the
/// mean iteration. A residual that could not be evaluated is NaN (`null`
/// in JSON), which only happens on the last entry of a `DomainError` trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub method: Method,
    pub x0: f64,
    pub iterates: Vec<f64>,
    #[serde(with = "nullable_floats")]
    pub residuals: Vec<f64>,
    pub termination: Termination,
    pub iterations: usize,
    #[serde(rename = "final")]
    pub final_x: f64,
}

impl IterationTrace {
    pub(crate) fn start(method: Method, x0: f64, residual: f64) -> Self {
        IterationTrace {
            method,
            x0,
            iterates: vec![x0],
            residuals: vec![residual],
            termination: Termination::MaxIter,
            iterations: 0,
            final_x: x0,
        }
    }

    pub(crate) fn push(&mut self, x: f64, residual: f64) {
        self.iterates.push(x);
        self.residuals.push(residual);
        self.iterations = self.iterates.len() - 1;
        self.final_x = x;
    }

    pub(crate) fn finish(mut self, termination: Termination) -> Self {
        self.termination = termination;
        self
    }

    pub fn converged(&self) -> bool {
        self.termination == Termination::Converged
    }

    /// Residual at the final iterate.
    pub fn final_residual(&self) -> f64 {
        self.residuals.last().copied().unwrap_or(f64::NAN)
    }

    /// True if the iterates never decrease.
    pub fn is_nondecreasing(&self) -> bool {
        self.iterates.windows(2).all(|w| w[0] <= w[1])
    }

    /// True if the iterates never increase.
    pub fn is_nonincreasing(&self) -> bool {
        self.iterates.windows(2).all(|w| w[0] >= w[1])
    }
}

mod nullable_floats {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
        let opt: Vec<Option<f64>> = v.iter().map(|x| x.is_finite().then_some(*x)).collect();
        opt.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        let opt: Vec<Option<f64>> = Vec::deserialize(d)?;
        Ok(opt.into_iter().map(|x| x.unwrap_or(f64::NAN)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn termination_json_shape() {
        let t = serde_json::to_value(Termination::Refused).unwrap();
        assert_eq!(t, serde_json::json!({"kind": "Refused"}));
        let t = serde_json::to_value(Termination::CycleDetected { period: 2, points: vec![-0.5, 0.5] })
            .unwrap();
        assert_eq!(t, serde_json::json!({"kind": "CycleDetected", "detail": {"period": 2, "points": [-0.5, 0.5]}}));
    }

    #[test]
    fn trace_json_roundtrip_keeps_nan_as_null() {
        let mut t = IterationTrace::start(Method::Newton, 1.0, 2.0);
        t.push(0.5, f64::NAN);
        let t = t.finish(Termination::DomainError("log".into()));
        let json = serde_json::to_value(&t).unwrap();
        assert_eq!(json["residuals"], serde_json::json!([2.0, null]));
        assert_eq!(json["final"], serde_json::json!(0.5));
        let back: IterationTrace = serde_json::from_value(json).unwrap();
        assert_eq!(back.iterates, t.iterates);
        assert!(back.residuals[1].is_nan());
    }
}
