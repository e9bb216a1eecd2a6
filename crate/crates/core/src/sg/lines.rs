use num_rational::BigRational;
use num_traits::Zero;

use super::config::{config_dim, PointConfig};
use crate::error::{QsgError, Result};

/// All lines spanned by the configuration, each as the sorted list of the
/// points on it.
pub fn lines(c: &PointConfig) -> Result<Vec<Vec<usize>>> {
    let m = c.len();
    if m < 2 {
        return Err(QsgError::Precondition("at least two points are required".into()));
    }
    c.require_distinct()?;
    let mut covered = vec![vec![false; m]; m];
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if covered[i][j] {
                continue;
            }
            let mut members = vec![i, j];
            members.extend((0..m).filter(|&k| k != i && k != j && c.collinear(i, j, k)));
            members.sort_unstable();
            for (a, &p) in members.iter().enumerate() {
                for &q in &members[a + 1..] {
                    covered[p][q] = true;
                }
            }
            out.push(members);
        }
    }
    Ok(out)
}

/// Pairs `(i, j)`, `i < j`, whose line contains no third point, in
/// lexicographic order.
pub fn ordinary_lines(c: &PointConfig) -> Result<Vec<(usize, usize)>> {
    let mut out: Vec<(usize, usize)> = lines(c)?
        .into_iter()
        .filter(|l| l.len() == 2)
        .map(|l| (l[0], l[1]))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// For each point, the number of partners whose joining line carries a
/// third point, and whether every count reaches `δ·(m-1)`, i.e. a `δ`
/// fraction of the other points (so that collinear sets qualify at `δ = 1`).
pub fn is_delta_sg(c: &PointConfig, delta: &BigRational) -> Result<(bool, Vec<usize>)> {
    let mut counts = vec![0usize; c.len()];
    for l in lines(c)? {
        if l.len() >= 3 {
            for &p in &l {
                counts[p] += l.len() - 1;
            }
        }
    }
    let need = delta * BigRational::from_integer((c.len() - 1).into());
    let ok = counts
        .iter()
        .all(|&k| BigRational::from_integer(k.into()) >= need);
    Ok((ok, counts))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SgBoundReport {
    pub dim: usize,
    /// `12/δ + 1`.
    pub bound: BigRational,
    pub holds: bool,
}

/// Checks `dim ≤ 12/δ + 1` for a δ-SG configuration.
pub fn check_sg_bound(c: &PointConfig, delta: &BigRational) -> Result<SgBoundReport> {
    if *delta <= BigRational::zero() {
        return Err(QsgError::Precondition("delta must be positive".into()));
    }
    let (ok, _) = is_delta_sg(c, delta)?;
    if !ok {
        return Err(QsgError::Precondition("configuration is not delta-SG".into()));
    }
    let dim = config_dim(c)?;
    let bound = BigRational::from_integer(12.into()) / delta + BigRational::from_integer(1.into());
    let holds = BigRational::from_integer(dim.into()) <= bound;
    Ok(SgBoundReport { dim, bound, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sg::config::Mode;

    fn grid() -> PointConfig {
        let pts: Vec<[i64; 2]> = (0..3).flat_map(|x| (0..3).map(move |y| [x, y])).collect();
        let refs: Vec<&[i64]> = pts.iter().map(|p| &p[..]).collect();
        PointConfig::from_ints(2, &refs, Mode::AffinePoints).unwrap()
    }

    #[test]
    fn grid_lines() {
        // 3 rows, 3 columns and 2 diagonals carry three points each; the
        // remaining 36 - 24 = 12 pairs span ordinary lines
        let ls = lines(&grid()).unwrap();
        assert_eq!(ls.iter().filter(|l| l.len() == 3).count(), 8);
        assert_eq!(ordinary_lines(&grid()).unwrap().len(), 12);
    }

    #[test]
    fn triangle_and_collinear() {
        let t = PointConfig::from_ints(2, &[&[0, 0], &[1, 0], &[0, 1]], Mode::AffinePoints).unwrap();
        assert_eq!(ordinary_lines(&t).unwrap(), vec![(0, 1), (0, 2), (1, 2)]);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(is_delta_sg(&t, &half).unwrap(), (false, vec![0, 0, 0]));
        let l = PointConfig::from_ints(2, &[&[0, 0], &[1, 1], &[2, 2], &[5, 5]], Mode::AffinePoints).unwrap();
        assert!(ordinary_lines(&l).unwrap().is_empty());
        let one = BigRational::from_integer(1.into());
        assert_eq!(is_delta_sg(&l, &one).unwrap(), (true, vec![3; 4]));
        let rep = check_sg_bound(&l, &one).unwrap();
        assert_eq!((rep.dim, rep.bound.clone()), (1, BigRational::from_integer(13.into())));
        assert!(rep.holds);
        assert!(check_sg_bound(&t, &one).is_err());
    }

    #[test]
    fn duplicates_rejected() {
        let d = PointConfig::from_ints(2, &[&[0, 0], &[0, 0], &[1, 0]], Mode::AffinePoints).unwrap();
        assert!(ordinary_lines(&d).is_err());
    }
}
