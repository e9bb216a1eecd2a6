use num_traits::Zero;

use super::form::QForm;
use super::linear::{LinForm, LinSpace};
use crate::error::{QsgError, Result};
use crate::field::Scalar;
use crate::linalg;
use crate::pencil::matrix_pencil_report;

/// Columns of the Gram matrix (after moving `U` to the front coordinates)
/// that belong to the coordinates outside `U`. Adding any quadratic in the
/// forms of `U` leaves these columns unchanged, and their row space, read
/// as forms in the outside coordinates, is the minimal space modulo `U`.
fn outside_columns(q: &QForm, u: &LinSpace, outside: &[usize]) -> Result<Vec<Vec<Scalar>>> {
    // y_U = basis forms of U, the other coordinates unchanged: x = S y
    let n = q.n();
    let mut b: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for j in 0..n {
        match u.pivots().iter().position(|&p| p == j) {
            Some(r) => b.push(u.basis()[r].clone()),
            None => b.push(LinForm::var(n, j).into_coeffs()),
        }
    }
    let s = linalg::inverse(&b).expect("echelon rows at their pivots plus coordinates");
    let g = q.substitute(&s, n)?;
    Ok(g.gram()
        .iter()
        .map(|row| outside.iter().map(|&c| row[c].clone()).collect())
        .collect())
}

fn lift(rows: &[Vec<Scalar>], outside: &[usize], n: usize) -> Vec<Vec<Scalar>> {
    rows.iter()
        .map(|r| {
            let mut v = vec![Scalar::zero(); n];
            for (x, &c) in r.iter().zip(outside) {
                v[c] = x.clone();
            }
            v
        })
        .collect()
}

/// A space `V` with `dim V ≤ 8r` such that every combination
/// `α Q + β Q' + P` with `P` a quadratic in the forms of `U` and
/// `rank_s ≤ r` has its minimal space inside `V + U`.
///
/// Working modulo `U`: the part of the minimal space outside `U` depends
/// only on `(α:β)`, through the pencil of outside Gram columns `R(α, β)`,
/// whose rank is at most `2r` at every qualifying combination. If both
/// `R(Q)` and `R(Q')` have rank at most `4r` their row spaces are taken;
/// otherwise at most one `(α:β)` can qualify and it is located exactly.
pub fn low_rank_locus_space(q: &QForm, q2: &QForm, r: usize, u: Option<&LinSpace>) -> Result<LinSpace> {
    if r == 0 {
        return Err(QsgError::Precondition("rank bound must be at least one".into()));
    }
    let n = q.n();
    if q2.n() != n {
        return Err(QsgError::DimensionMismatch { expected: n, got: q2.n() });
    }
    let zero = LinSpace::zero(n);
    let u = u.unwrap_or(&zero);
    if u.n() != n {
        return Err(QsgError::DimensionMismatch { expected: n, got: u.n() });
    }
    let outside: Vec<usize> = (0..n).filter(|j| !u.pivots().contains(j)).collect();
    let w = outside.len();
    let ra = outside_columns(q, u, &outside)?;
    let rb = outside_columns(q2, u, &outside)?;
    let row_space = |m: &[Vec<Scalar>]| -> Result<LinSpace> {
        // rows of R are coefficient vectors over the outside coordinates
        LinSpace::from_rows(n, lift(m, &outside, n))
    };
    let (rank_a, rank_b) = (linalg::rank(&ra, w), linalg::rank(&rb, w));
    if rank_a <= 4 * r && rank_b <= 4 * r {
        return Ok(row_space(&ra)?.sum(&row_space(&rb)?));
    }
    let rep = matrix_pencil_report(&ra, &rb, n, w, 2 * r);
    debug_assert!(!rep.identically_low);
    debug_assert!(rep.rational_roots.len() <= 1 && rep.irrational_factor_degrees.is_empty());
    let mut v = LinSpace::zero(n);
    for (al, be) in &rep.rational_roots {
        let m: Vec<Vec<Scalar>> = ra
            .iter()
            .zip(&rb)
            .map(|(x, y)| x.iter().zip(y).map(|(a, b)| &(al * a) + &(be * b)).collect())
            .collect();
        v = v.sum(&row_space(&m)?);
    }
    Ok(v)
}
