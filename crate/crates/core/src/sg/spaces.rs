use crate::error::{QsgError, Result};
use crate::qform::{LinForm, LinSpace};

/// Given colored families of 2-dimensional spaces in which every two spaces
/// of different colors meet in a line, finds `w ≠ 0` and `U` with
/// `dim U ≤ 4` such that every space contains `w` or lies in `U`.
///
/// Candidates for `w` are the lines shared by all spaces of one color and
/// the meets of cross-color pairs; for each, `U` is the sum of the spaces
/// missing `w`. The smallest such `U` is returned (first candidate on ties).
pub fn common_vector_or_bounded(spaces: &[Vec<LinSpace>]) -> Result<(LinForm, LinSpace)> {
    if spaces.len() < 3 {
        return Err(QsgError::Precondition("at least three colors are required".into()));
    }
    let all: Vec<&LinSpace> = spaces.iter().flatten().collect();
    let Some(first) = all.first() else {
        return Err(QsgError::ZeroInput("no spaces"));
    };
    let n = first.n();
    for s in &all {
        if s.n() != n {
            return Err(QsgError::DimensionMismatch { expected: n, got: s.n() });
        }
        if s.dim() != 2 {
            return Err(QsgError::Precondition(format!("space of dimension {} (expected 2)", s.dim())));
        }
    }
    let mut candidates: Vec<Vec<_>> = Vec::new();
    for (i, col) in spaces.iter().enumerate() {
        if let Some((head, rest)) = col.split_first() {
            let meet = rest.iter().fold(head.clone(), |acc, s| acc.intersection(s));
            if meet.dim() == 1 {
                candidates.push(meet.basis()[0].clone());
            }
        }
        for other in &spaces[i + 1..] {
            for a in col {
                for b in other {
                    let m = a.intersection(b);
                    if m.dim() != 1 {
                        return Err(QsgError::Precondition(format!(
                            "cross-color spaces meet in dimension {}",
                            m.dim()
                        )));
                    }
                    candidates.push(m.basis()[0].clone());
                }
            }
        }
    }
    let mut best: Option<(Vec<_>, LinSpace)> = None;
    for w in candidates {
        if best.as_ref().is_some_and(|(b, _)| *b == w) {
            continue;
        }
        let u = LinSpace::sum_all(n, all.iter().copied().filter(|s| !s.contains_vec(&w)));
        if best.as_ref().is_none_or(|(_, bu)| u.dim() < bu.dim()) {
            best = Some((w, u));
        }
    }
    match best {
        Some((w, u)) if u.dim() <= 4 => Ok((LinForm::new(w), u)),
        _ => Err(QsgError::Precondition("no common vector with a bounded complement".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;

    fn sp(n: usize, rows: &[&[i64]]) -> LinSpace {
        LinSpace::from_rows(n, rows.iter().map(|r| r.iter().map(|&c| Scalar::from_int(c)).collect()).collect())
            .unwrap()
    }

    fn verify(spaces: &[Vec<LinSpace>], w: &LinForm, u: &LinSpace) -> bool {
        !w.is_zero() && u.dim() <= 4 && spaces.iter().flatten().all(|s| s.contains(w) || s.is_subspace_of(u))
    }

    #[test]
    fn shared_vector() {
        let spaces = vec![
            vec![sp(5, &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0]])],
            vec![sp(5, &[&[1, 0, 0, 0, 0], &[0, 0, 1, 0, 0]])],
            vec![sp(5, &[&[1, 0, 0, 0, 0], &[0, 0, 0, 1, 0]]), sp(5, &[&[1, 0, 0, 0, 0], &[0, 0, 0, 0, 1]])],
        ];
        let (w, u) = common_vector_or_bounded(&spaces).unwrap();
        assert_eq!(w, LinForm::from_ints(&[1, 0, 0, 0, 0]));
        assert!(u.is_zero());
        assert!(verify(&spaces, &w, &u));
    }

    #[test]
    fn inside_three_space() {
        // planes of a 3-space meet pairwise in lines
        let spaces = vec![
            vec![sp(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]), sp(4, &[&[1, 1, 0, 0], &[0, 0, 1, 0]])],
            vec![sp(4, &[&[0, 1, 0, 0], &[0, 0, 1, 0]])],
            vec![sp(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0]]), sp(4, &[&[1, 0, 1, 0], &[0, 1, 0, 0]])],
        ];
        let (w, u) = common_vector_or_bounded(&spaces).unwrap();
        assert!(verify(&spaces, &w, &u));
    }

    #[test]
    fn rejects_bad_input() {
        let a = sp(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let b = sp(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(common_vector_or_bounded(&[vec![a.clone()], vec![a.clone()]]).is_err());
        assert!(common_vector_or_bounded(&[vec![a.clone()], vec![b], vec![a.clone()]]).is_err());
        assert!(common_vector_or_bounded(&[vec![a.clone()], vec![a.clone()], vec![a]]).is_err());
    }
}
