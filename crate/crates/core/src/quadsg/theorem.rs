use super::triple::{span_dim, QuadTriple};
use super::validate::validate_triple;
use crate::error::{QsgError, Result};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TheoremReport {
    pub span_dim: usize,
    pub predicted: Option<usize>,
    pub lambda_test: usize,
    /// Measured dimension within `lambda_test` (reported, not asserted).
    pub within_lambda: bool,
    /// Measured dimension equals the construction's prediction (or no
    /// prediction exists).
    pub matches_prediction: bool,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.matches_prediction
    }
}

/// Measures the span of a validated triple against `lambda_test` and the
/// generator's predicted dimension.
pub fn assert_main_theorem(t: &QuadTriple, lambda_test: usize) -> Result<TheoremReport> {
    let rep = validate_triple(t, 4)?;
    if !rep.all_ok() {
        return Err(QsgError::Precondition(format!(
            "triple does not satisfy the hypotheses ({} violations)",
            rep.violations.len()
        )));
    }
    let d = span_dim(t);
    let predicted = t.meta.as_ref().and_then(|m| m.predicted_span_dim);
    Ok(TheoremReport {
        span_dim: d,
        predicted,
        lambda_test,
        within_lambda: d <= lambda_test,
        matches_prediction: predicted.is_none_or(|p| p == d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadsg::{generate, Family, GenParams};

    #[test]
    fn pencil_and_corrupted() {
        let t = generate(Family::Pencil, &GenParams::default(), 1).unwrap();
        let r = assert_main_theorem(&t, 20).unwrap();
        assert!(r.passed() && r.within_lambda && r.span_dim == 2);
        let c = generate(Family::Corrupted, &GenParams::default(), 1).unwrap();
        assert!(assert_main_theorem(&c, 20).is_err());
    }
}
