//! Dense exact linear algebra over any [`Field`]. Matrices are row-major
//! `Vec<Vec<F>>`; an explicit column count is passed where a matrix may
//! have no rows.

use crate::field::Field;

pub type Matrix<F> = Vec<Vec<F>>;

/// Reduced row echelon form. Returns the nonzero rows and their pivot
/// columns (strictly increasing). Pivots are normalized to one.
pub fn rref<F: Field>(m: &[Vec<F>], ncols: usize) -> (Matrix<F>, Vec<usize>) {
    let mut a: Matrix<F> = m.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero_elem()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].inv_ref();
        for c in col..ncols {
            a[row][c] = a[row][c].mul_ref(&inv);
        }
        for r in 0..a.len() {
            if r == row || a[r][col].is_zero_elem() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..ncols {
                let t = f.mul_ref(&a[row][c]);
                a[r][c] = a[r][c].sub_ref(&t);
            }
        }
        pivots.push(col);
        row += 1;
    }
    a.truncate(row);
    (a, pivots)
}

pub fn rank<F: Field>(m: &[Vec<F>], ncols: usize) -> usize {
    // forward elimination only
    let mut a: Matrix<F> = m.to_vec();
    let mut row = 0;
    for col in 0..ncols {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero_elem()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].inv_ref();
        for r in row + 1..a.len() {
            if a[r][col].is_zero_elem() {
                continue;
            }
            let f = a[r][col].mul_ref(&inv);
            for c in col..ncols {
                let t = f.mul_ref(&a[row][c]);
                a[r][c] = a[r][c].sub_ref(&t);
            }
        }
        row += 1;
    }
    row
}

/// Basis of `{x : m x = 0}`, one vector per free column, in increasing
/// order of the free column.
pub fn nullspace<F: Field>(m: &[Vec<F>], ncols: usize) -> Matrix<F> {
    let (r, pivots) = rref(m, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::fzero(); ncols];
        v[free] = F::fone();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = row[free].neg_ref();
        }
        out.push(v);
    }
    out
}

/// Some solution of `m x = b`, or `None` when inconsistent.
pub fn solve<F: Field>(m: &[Vec<F>], b: &[F], ncols: usize) -> Option<Vec<F>> {
    let aug: Matrix<F> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![F::fzero(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

pub fn det<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a: Matrix<F> = m.to_vec();
    let mut acc = F::fone();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero_elem()) else {
            return F::fzero();
        };
        if p != col {
            a.swap(p, col);
            acc = acc.neg_ref();
        }
        acc = acc.mul_ref(&a[col][col]);
        let inv = a[col][col].inv_ref();
        for r in col + 1..n {
            if a[r][col].is_zero_elem() {
                continue;
            }
            let f = a[r][col].mul_ref(&inv);
            for c in col..n {
                let t = f.mul_ref(&a[col][c]);
                a[r][c] = a[r][c].sub_ref(&t);
            }
        }
    }
    acc
}

pub fn inverse<F: Field>(m: &[Vec<F>]) -> Option<Matrix<F>> {
    let n = m.len();
    let aug: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::fone() } else { F::fzero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn transpose<F: Field>(m: &[Vec<F>], ncols: usize) -> Matrix<F> {
    (0..ncols)
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>], bcols: usize) -> Matrix<F> {
    a.iter()
        .map(|row| {
            (0..bcols)
                .map(|c| {
                    row.iter()
                        .zip(b)
                        .fold(F::fzero(), |acc, (x, brow)| acc.add_ref(&x.mul_ref(&brow[c])))
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Field>(a: &[Vec<F>], v: &[F]) -> Vec<F> {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::fzero(), |acc, (x, y)| acc.add_ref(&x.mul_ref(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;

    fn m(rows: &[&[i64]]) -> Matrix<Scalar> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a, 3), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&a, &ns[0]).iter().all(|x| x.is_zero_elem()));
    }

    #[test]
    fn rref_is_canonical() {
        let a = m(&[&[2, 4, 0], &[0, 0, 3]]);
        let b = m(&[&[1, 2, 3], &[1, 2, -3]]);
        assert_eq!(rref(&a, 3).0, rref(&b, 3).0);
    }

    #[test]
    fn det_inverse_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(det(&a), Scalar::from_int(1));
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv, 2), m(&[&[1, 0], &[0, 1]]));
        let x = solve(&a, &[Scalar::from_int(3), Scalar::from_int(2)], 2).unwrap();
        assert_eq!(x, vec![Scalar::from_int(1), Scalar::from_int(1)]);
        let sing = m(&[&[1, 1], &[1, 1]]);
        assert!(inverse(&sing).is_none());
        assert!(solve(&sing, &[Scalar::from_int(1), Scalar::from_int(2)], 2).is_none());
    }
}
