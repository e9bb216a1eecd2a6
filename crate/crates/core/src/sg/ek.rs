use num_rational::BigRational;
use num_traits::Zero;

use super::config::{on_line, ColoredConfig, Mode};
use crate::error::{QsgError, Result};
use crate::field::Scalar;

/// Default constant `C` in the partial-EK dimension bound `C/δ³`.
pub const PARTIAL_EK_CONSTANT: u64 = 512;

/// A point reference `(set, index)`.
pub type PointRef = (usize, usize);

#[derive(Clone, Debug, PartialEq)]
pub struct EkReport {
    pub holds: bool,
    /// First cross-set pair without a witness, scanning sets `i < j` and
    /// then indices lexicographically.
    pub violation: Option<(PointRef, PointRef)>,
}

fn witness_exists(c: &ColoredConfig, i: usize, j: usize, p: &[Scalar], q: &[Scalar]) -> bool {
    c.sets().iter().enumerate().any(|(t, set)| {
        t != i && t != j && set.iter().any(|r| r != p && r != q && on_line(c.mode(), p, q, r))
    })
}

/// Checks the Edelstein–Kelly condition: every pair of distinct points from
/// different sets has a third point, from a third set and distinct from
/// both, on its line. Vectors are stored normalized, so "distinct" there
/// means non-proportional.
pub fn ek_condition(c: &ColoredConfig) -> Result<EkReport> {
    if c.k() < 3 {
        return Err(QsgError::Precondition("at least three sets are required".into()));
    }
    let sets = c.sets();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            for (a, p) in sets[i].iter().enumerate() {
                for (b, q) in sets[j].iter().enumerate() {
                    if p != q && !witness_exists(c, i, j, p, q) {
                        return Ok(EkReport {
                            holds: false,
                            violation: Some(((i, a), (j, b))),
                        });
                    }
                }
            }
        }
    }
    Ok(EkReport { holds: true, violation: None })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EkBoundReport {
    pub dim: usize,
    /// 3 for affine points, 4 for vectors.
    pub bound: usize,
    pub holds: bool,
}

/// Checks the dimension bound for a configuration satisfying the condition.
pub fn check_ek_bound(c: &ColoredConfig) -> Result<EkBoundReport> {
    if !ek_condition(c)?.holds {
        return Err(QsgError::Precondition("configuration violates the EK condition".into()));
    }
    let bound = match c.mode() {
        Mode::AffinePoints => 3,
        Mode::Vectors => 4,
    };
    let dim = c.dim();
    Ok(EkBoundReport { dim, bound, holds: dim <= bound })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartialEkReport {
    pub holds: bool,
    /// `fractions[i][a]` for point `a` of set `i`.
    pub fractions: Vec<Vec<BigRational>>,
    pub dim: usize,
    pub constant: u64,
    /// `C/δ³`, reported only.
    pub bound: BigRational,
    pub within_bound: bool,
}

/// Partial-δ-EK check for three disjoint sets: for each point, the fraction
/// of the larger other set (the lower index on ties) whose members span,
/// together with the point, some member of the remaining set.
pub fn partial_ek_condition(c: &ColoredConfig, delta: &BigRational) -> Result<PartialEkReport> {
    partial_ek_condition_with_constant(c, delta, PARTIAL_EK_CONSTANT)
}

pub fn partial_ek_condition_with_constant(
    c: &ColoredConfig,
    delta: &BigRational,
    constant: u64,
) -> Result<PartialEkReport> {
    if c.k() != 3 {
        return Err(QsgError::Precondition("exactly three sets are required".into()));
    }
    if *delta <= BigRational::zero() {
        return Err(QsgError::Precondition("delta must be positive".into()));
    }
    let sets = c.sets();
    if sets.iter().any(Vec::is_empty) {
        return Err(QsgError::Precondition("all three sets must be nonempty".into()));
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if sets[i].iter().any(|p| sets[j].contains(p)) {
                return Err(QsgError::Precondition(format!("sets {i} and {j} are not disjoint")));
            }
        }
    }
    let mut fractions = Vec::with_capacity(3);
    for i in 0..3 {
        let (x, y) = ((i + 1) % 3, (i + 2) % 3);
        let (lo, hi) = (x.min(y), x.max(y));
        let (j, t) = if sets[hi].len() > sets[lo].len() { (hi, lo) } else { (lo, hi) };
        let row = sets[i]
            .iter()
            .map(|p| {
                let good = sets[j]
                    .iter()
                    .filter(|q| sets[t].iter().any(|r| on_line(c.mode(), p, q, r)))
                    .count();
                BigRational::new(good.into(), sets[j].len().into())
            })
            .collect();
        fractions.push(row);
    }
    let holds = fractions.iter().flatten().all(|f: &BigRational| f >= delta);
    let dim = c.dim();
    let bound = BigRational::from_integer(constant.into()) / (delta * delta * delta);
    let within_bound = BigRational::from_integer(dim.into()) <= bound;
    Ok(PartialEkReport {
        holds,
        fractions,
        dim,
        constant,
        bound,
        within_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn planar_triple() {
        let c = ColoredConfig::from_ints(2, &[&[&[1, 0]], &[&[0, 1]], &[&[1, 1]]], Mode::Vectors).unwrap();
        assert!(ek_condition(&c).unwrap().holds);
        let rep = check_ek_bound(&c).unwrap();
        assert_eq!((rep.dim, rep.bound, rep.holds), (2, 4, true));
        let p = partial_ek_condition(&c, &BigRational::one()).unwrap();
        assert!(p.holds);
    }

    #[test]
    fn basis_violates() {
        let c = ColoredConfig::from_ints(
            3,
            &[&[&[1, 0, 0]], &[&[0, 1, 0]], &[&[0, 0, 1]]],
            Mode::Vectors,
        )
        .unwrap();
        let r = ek_condition(&c).unwrap();
        assert!(!r.holds);
        assert_eq!(r.violation, Some(((0, 0), (1, 0))));
        assert!(check_ek_bound(&c).is_err());
    }

    #[test]
    fn witness_must_differ() {
        // the only candidate on the line is proportional to an endpoint
        let c = ColoredConfig::from_ints(2, &[&[&[1, 0]], &[&[0, 1]], &[&[2, 0]]], Mode::Vectors).unwrap();
        assert!(!ek_condition(&c).unwrap().holds);
    }

    #[test]
    fn collinear_affine() {
        let c = ColoredConfig::from_ints(
            2,
            &[&[&[0, 0], &[3, 3]], &[&[1, 1], &[4, 4]], &[&[2, 2], &[5, 5]]],
            Mode::AffinePoints,
        )
        .unwrap();
        assert!(ek_condition(&c).unwrap().holds);
        assert_eq!(check_ek_bound(&c).unwrap().dim, 1);
    }

    #[test]
    fn isolated_point() {
        let c = ColoredConfig::from_ints(
            3,
            &[&[&[1, 0, 0], &[0, 0, 1]], &[&[0, 1, 0]], &[&[1, 1, 0]]],
            Mode::Vectors,
        )
        .unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let p = partial_ek_condition(&c, &half).unwrap();
        assert!(!p.holds);
        assert!(p.fractions[0][1].is_zero());
        assert!(p.fractions[0][0].is_one());
        assert_eq!(p.bound, BigRational::from_integer(4096.into()));
    }
}
