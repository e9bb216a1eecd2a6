use num_traits::Zero;

use crate::error::{QsgError, Result};
use crate::field::Scalar;
use crate::linalg;

/// How coordinate vectors are interpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Points of affine space; lines are affine lines.
    AffinePoints,
    /// Vectors up to scaling; "lines" are 2-dimensional spans.
    Vectors,
}

/// Scales `v` so that its first nonzero coordinate is one.
pub fn normalize_projective(v: &[Scalar]) -> Result<Vec<Scalar>> {
    let lead = v
        .iter()
        .find(|c| !c.is_zero())
        .ok_or(QsgError::ZeroInput("zero vector in a vector configuration"))?;
    let inv = lead.inv()?;
    Ok(v.iter().map(|c| c * &inv).collect())
}

pub(crate) fn check_points(n: usize, points: &[Vec<Scalar>], mode: Mode) -> Result<Vec<Vec<Scalar>>> {
    points
        .iter()
        .map(|p| {
            if p.len() != n {
                return Err(QsgError::DimensionMismatch { expected: n, got: p.len() });
            }
            match mode {
                Mode::AffinePoints => Ok(p.clone()),
                Mode::Vectors => normalize_projective(p),
            }
        })
        .collect()
}

/// Does `r` lie on the line through `p` and `q` (assumed distinct)?
pub(crate) fn on_line(mode: Mode, p: &[Scalar], q: &[Scalar], r: &[Scalar]) -> bool {
    let rows: Vec<Vec<Scalar>> = match mode {
        Mode::AffinePoints => [q, r]
            .iter()
            .map(|x| x.iter().zip(p).map(|(a, b)| a - b).collect())
            .collect(),
        Mode::Vectors => vec![p.to_vec(), q.to_vec(), r.to_vec()],
    };
    let full = match mode {
        Mode::AffinePoints => 1,
        Mode::Vectors => 2,
    };
    linalg::rank(&rows, p.len()) <= full
}

/// Dimension of a point set: the rank of the vectors, or in affine mode the
/// rank of the differences from the first point.
pub(crate) fn dim_of(n: usize, mode: Mode, points: &[&Vec<Scalar>]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let rows: Vec<Vec<Scalar>> = match mode {
        Mode::AffinePoints => points
            .iter()
            .skip(1)
            .map(|x| x.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
            .collect(),
        Mode::Vectors => points.iter().map(|x| x.to_vec()).collect(),
    };
    linalg::rank(&rows, n)
}

/// A finite configuration of points or projective vectors. In vector mode
/// every vector is stored normalized, so proportional inputs compare equal.
#[derive(Clone, Debug, PartialEq)]
pub struct PointConfig {
    n: usize,
    points: Vec<Vec<Scalar>>,
    mode: Mode,
}

impl PointConfig {
    pub fn new(n: usize, points: Vec<Vec<Scalar>>, mode: Mode) -> Result<Self> {
        let points = check_points(n, &points, mode)?;
        Ok(PointConfig { n, points, mode })
    }

    pub fn from_ints(n: usize, points: &[&[i64]], mode: Mode) -> Result<Self> {
        let pts = points
            .iter()
            .map(|p| p.iter().map(|&c| Scalar::from_int(c)).collect())
            .collect();
        PointConfig::new(n, pts, mode)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Vec<Scalar>] {
        &self.points
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Indices `(i, j)`, `i < j`, of equal (or in vector mode, proportional)
    /// points.
    pub fn duplicates(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                if self.points[i] == self.points[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub(crate) fn require_distinct(&self) -> Result<()> {
        match self.duplicates().first() {
            Some((i, j)) => Err(QsgError::Precondition(format!("points {i} and {j} coincide"))),
            None => Ok(()),
        }
    }

    pub fn collinear(&self, i: usize, j: usize, k: usize) -> bool {
        on_line(self.mode, &self.points[i], &self.points[j], &self.points[k])
    }
}

/// `k` colored lists of points or vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct ColoredConfig {
    n: usize,
    sets: Vec<Vec<Vec<Scalar>>>,
    mode: Mode,
}

impl ColoredConfig {
    pub fn new(n: usize, sets: Vec<Vec<Vec<Scalar>>>, mode: Mode) -> Result<Self> {
        let sets = sets
            .iter()
            .map(|s| check_points(n, s, mode))
            .collect::<Result<_>>()?;
        Ok(ColoredConfig { n, sets, mode })
    }

    pub fn from_ints(n: usize, sets: &[&[&[i64]]], mode: Mode) -> Result<Self> {
        let sets = sets
            .iter()
            .map(|s| {
                s.iter()
                    .map(|p| p.iter().map(|&c| Scalar::from_int(c)).collect())
                    .collect()
            })
            .collect();
        ColoredConfig::new(n, sets, mode)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Vec<Vec<Scalar>>] {
        &self.sets
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    /// Dimension of the union of all sets.
    pub fn dim(&self) -> usize {
        let all: Vec<&Vec<Scalar>> = self.sets.iter().flatten().collect();
        dim_of(self.n, self.mode, &all)
    }
}

/// Dimension of the configuration; a single affine point has dimension 0.
pub fn config_dim(c: &PointConfig) -> Result<usize> {
    if c.is_empty() {
        return Err(QsgError::ZeroInput("empty configuration"));
    }
    Ok(dim_of(c.n, c.mode, &c.points.iter().collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn unit_vector(n: usize, i: usize) -> Vec<Scalar> {
        (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()
    }

    #[test]
    fn dims() {
        let c = PointConfig::from_ints(2, &[&[0, 0], &[1, 1], &[2, 2]], Mode::AffinePoints).unwrap();
        assert_eq!(config_dim(&c).unwrap(), 1);
        let e = PointConfig::new(4, (0..3).map(|i| unit_vector(4, i)).collect(), Mode::Vectors).unwrap();
        assert_eq!(config_dim(&e).unwrap(), 3);
        let one = PointConfig::from_ints(3, &[&[1, 2, 3]], Mode::AffinePoints).unwrap();
        assert_eq!(config_dim(&one).unwrap(), 0);
    }

    #[test]
    fn vectors_are_normalized() {
        let c = PointConfig::from_ints(2, &[&[2, 4], &[-1, -2], &[0, 3]], Mode::Vectors).unwrap();
        assert_eq!(c.duplicates(), vec![(0, 1)]);
        assert_eq!(c.points()[2], vec![Scalar::zero(), Scalar::one()]);
        assert!(PointConfig::from_ints(2, &[&[0, 0]], Mode::Vectors).is_err());
    }
}
