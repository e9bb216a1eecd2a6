use crate::error::{QsgError, Result};
use crate::linalg;
use crate::qform::QForm;
use crate::sg::PointRef;

/// Generator family of a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    SquaresEk,
    Pencil,
    Corrupted,
}

/// A documented way of breaking a valid instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    /// Squares family whose third set is replaced by the square of a linear
    /// form outside the span of the lines: every cross pair fails to vanish.
    OutlierSquare,
    /// Pencil family with a multiple of `T1[0]` appended to `T2`: exactly
    /// that pair is linearly dependent.
    DuplicateMember,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// A member is the zero form.
    Zero,
    /// A member is neither irreducible nor a square (Gram rank 2).
    Shape,
    /// Two members are proportional.
    Dependent,
    /// The product of the third set is not in the radical of the pair.
    Vanishing,
    /// The vanishing check exceeded the degree budget.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub first: PointRef,
    pub second: Option<PointRef>,
}

/// Generator provenance.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Meta {
    pub family: Family,
    pub seed: u64,
    pub predicted_span_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutation: Option<Mutation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected_violations: Vec<Violation>,
}

/// Three sets of quadratic forms in `n` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadTriple {
    n: usize,
    sets: [Vec<QForm>; 3],
    pub meta: Option<Meta>,
}

impl QuadTriple {
    pub fn new(n: usize, sets: [Vec<QForm>; 3]) -> Result<Self> {
        for q in sets.iter().flatten() {
            if q.n() != n {
                return Err(QsgError::DimensionMismatch { expected: n, got: q.n() });
            }
        }
        Ok(QuadTriple { n, sets, meta: None })
    }

    pub fn with_meta(mut self, meta: Meta) -> Self {
        self.meta = Some(meta);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Vec<QForm>; 3] {
        &self.sets
    }

    pub fn get(&self, r: PointRef) -> &QForm {
        &self.sets[r.0][r.1]
    }

    /// All members in canonical order.
    pub fn members(&self) -> impl Iterator<Item = (PointRef, &QForm)> {
        self.sets
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().enumerate().map(move |(a, q)| ((i, a), q)))
    }

    /// Cross-set pairs `((i, a), (j, b))` with `i < j`, in canonical order.
    pub fn cross_pairs(&self) -> Vec<(PointRef, PointRef)> {
        let mut out = Vec::new();
        for i in 0..3 {
            for j in i + 1..3 {
                for a in 0..self.sets[i].len() {
                    for b in 0..self.sets[j].len() {
                        out.push(((i, a), (j, b)));
                    }
                }
            }
        }
        out
    }
}

/// Dimension of the span of all members, as vectors of monomial
/// coefficients.
pub fn span_dim(t: &QuadTriple) -> usize {
    let rows: Vec<_> = t.members().map(|(_, q)| q.coeff_vector()).collect();
    linalg::rank(&rows, t.n * (t.n + 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_dims() {
        let a = QForm::from_int_terms(3, &[(0, 0, 1), (1, 2, 1)]);
        let b = QForm::from_int_terms(3, &[(1, 1, 1), (0, 2, 1)]);
        let t = QuadTriple::new(3, [vec![a.clone()], vec![b.clone()], vec![a.add(&b).unwrap()]]).unwrap();
        assert_eq!(span_dim(&t), 2);
        let sq = QuadTriple::new(
            2,
            [
                vec![QForm::from_int_terms(2, &[(0, 0, 1)])],
                vec![QForm::from_int_terms(2, &[(1, 1, 1)])],
                vec![QForm::from_int_terms(2, &[(0, 0, 1), (0, 1, 2), (1, 1, 1)])],
            ],
        )
        .unwrap();
        assert_eq!(span_dim(&sq), 3);
        assert_eq!(t.cross_pairs().len(), 3);
    }
}
