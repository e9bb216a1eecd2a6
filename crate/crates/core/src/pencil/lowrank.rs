use num_traits::{One, Zero};

use crate::error::{QsgError, Result};
use crate::field::Scalar;
use crate::linalg;
use crate::poly1::UPoly;
use crate::qform::QForm;

/// Where the pencil `α M_A + β M_B` drops to rank at most `max_rank`.
#[derive(Clone, Debug, PartialEq)]
pub struct PencilReport {
    /// Rank threshold the report refers to.
    pub max_rank: usize,
    /// Gcd of all `(max_rank+1)`-minors as a binary form: entry `k` is the
    /// coefficient of `α^k β^(D-k)`, `D = len - 1`. Empty when all minors
    /// vanish identically. Normalized to a monic leading `α` part.
    pub minor_gcd: Vec<Scalar>,
    /// Projective roots `(α, β)` in `Q(i)`, with `(1, 0)` first when present
    /// and the rest as `(r, 1)` in increasing order.
    pub rational_roots: Vec<(Scalar, Scalar)>,
    /// Degrees of the part of the gcd without roots in `Q(i)`.
    pub irrational_factor_degrees: Vec<usize>,
    /// The rootless part itself, as monic coefficients in `α` (with
    /// `β = 1`), lowest degree first; empty when there is none.
    pub irrational_part: Vec<Scalar>,
    pub identically_low: bool,
}

impl PencilReport {
    /// Is there any `(α:β)` with low rank?
    pub fn has_low_rank(&self) -> bool {
        self.identically_low || self.minor_gcd.len() > 1
    }

    /// Does the low-rank locus contain a point outside `Q(i)`?
    pub fn has_irrational_roots(&self) -> bool {
        !self.identically_low && !self.irrational_factor_degrees.is_empty()
    }
}

fn submatrix(m: &[Vec<Scalar>], rows: &[usize], cols: &[usize]) -> Vec<Vec<Scalar>> {
    rows.iter()
        .map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect())
        .collect()
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 && idx[i - 1] == n - k + i - 1 {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    idx[i - 1] += 1;
    for j in i..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// Low-rank analysis of a pencil of (possibly rectangular) matrices.
pub fn matrix_pencil_report(
    ma: &[Vec<Scalar>],
    mb: &[Vec<Scalar>],
    rows: usize,
    cols: usize,
    max_rank: usize,
) -> PencilReport {
    let m = max_rank + 1;
    let low = |identically_low| PencilReport {
        max_rank,
        minor_gcd: Vec::new(),
        rational_roots: Vec::new(),
        irrational_factor_degrees: Vec::new(),
        irrational_part: Vec::new(),
        identically_low,
    };
    if m > rows.min(cols) {
        return low(true);
    }
    // minors have degree ≤ m in α (β = 1); m + 1 sample points determine them
    let points: Vec<Scalar> = (0..=m as i64).map(Scalar::from_int).collect();
    let evals: Vec<Vec<Vec<Scalar>>> = points
        .iter()
        .map(|t| {
            ma.iter()
                .zip(mb)
                .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| &(t * a) + b).collect())
                .collect()
        })
        .collect();
    if evals.iter().all(|e| linalg::rank(e, cols) <= max_rank) {
        return low(true);
    }
    let mut g: Option<UPoly> = None;
    let mut min_beta = usize::MAX;
    let mut ri: Vec<usize> = (0..m).collect();
    'outer: loop {
        let mut ci: Vec<usize> = (0..m).collect();
        loop {
            let vals: Vec<Scalar> = evals.iter().map(|e| linalg::det(&submatrix(e, &ri, &ci))).collect();
            if vals.iter().any(|v| !v.is_zero()) {
                let p = UPoly::interpolate(&points, &vals);
                let d = p.degree().expect("nonzero minor");
                min_beta = min_beta.min(m - d);
                g = Some(match g {
                    None => p.monic(),
                    Some(acc) => acc.gcd(&p),
                });
                if min_beta == 0 && g.as_ref().and_then(UPoly::degree) == Some(0) {
                    break 'outer;
                }
            }
            if !next_combination(&mut ci, cols) {
                break;
            }
        }
        if !next_combination(&mut ri, rows) {
            break;
        }
    }
    let g = g.expect("some minor is nonzero");
    let deg = g.degree().expect("nonzero");
    let mut minor_gcd = g.coeffs().to_vec();
    minor_gcd.resize(deg + min_beta + 1, Scalar::zero());
    let mut rational_roots = Vec::new();
    if min_beta > 0 {
        rational_roots.push((Scalar::one(), Scalar::zero()));
    }
    let sf = g.squarefree();
    let mut roots = sf.rational_roots();
    roots.sort();
    let mut rest = sf;
    for r in &roots {
        rest = rest.divrem(&UPoly::linear_root(r)).0;
    }
    rational_roots.extend(roots.into_iter().map(|r| (r, Scalar::one())));
    let rd = rest.degree().unwrap_or(0);
    PencilReport {
        max_rank,
        minor_gcd,
        rational_roots,
        irrational_factor_degrees: if rd > 0 { vec![rd] } else { Vec::new() },
        irrational_part: if rd > 0 { rest.monic().coeffs().to_vec() } else { Vec::new() },
        identically_low: false,
    }
}

/// Where does `α A + β B` have `rank_s ≤ r` (Gram rank ≤ 2r)?
pub fn low_rank_pencil(a: &QForm, b: &QForm, r: usize) -> Result<PencilReport> {
    if r == 0 {
        return Err(QsgError::Precondition("rank bound must be at least one".into()));
    }
    if a.n() != b.n() {
        return Err(QsgError::DimensionMismatch { expected: a.n(), got: b.n() });
    }
    Ok(matrix_pencil_report(a.gram(), b.gram(), a.n(), a.n(), 2 * r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plus_minus_pair() {
        let a = QForm::from_int_terms(4, &[(0, 1, 1), (2, 3, 1)]);
        let b = QForm::from_int_terms(4, &[(0, 1, 1), (2, 3, -1)]);
        let rep = low_rank_pencil(&a, &b, 1).unwrap();
        assert!(rep.has_low_rank());
        let one = Scalar::one();
        assert_eq!(rep.rational_roots, vec![(-one.clone(), one.clone()), (one.clone(), one)]);
        assert!(rep.irrational_factor_degrees.is_empty());
    }

    #[test]
    fn equal_forms_are_identically_low() {
        let a = QForm::from_int_terms(4, &[(0, 1, 1), (2, 3, 1)]);
        assert!(low_rank_pencil(&a, &a, 2).unwrap().identically_low);
        assert!(!low_rank_pencil(&a, &a, 1).unwrap().identically_low);
    }

    #[test]
    fn roots_are_exactly_the_rank_drops() {
        let a = QForm::from_int_terms(3, &[(0, 0, 1), (1, 2, 1)]);
        let b = QForm::from_int_terms(3, &[(1, 1, 1), (0, 2, 1)]);
        let rep = low_rank_pencil(&a, &b, 1).unwrap();
        for (al, be) in &rep.rational_roots {
            assert!(a.combine(al, &b, be).unwrap().gram_rank() <= 2);
        }
        // det(αA + βB) = -(α^3 + β^3)/4 up to sign: one rational root (-1:1)
        // and an irreducible quadratic factor over Q(i)
        assert_eq!(rep.rational_roots.len(), 1);
        assert_eq!(rep.irrational_factor_degrees, vec![2]);
    }

    #[test]
    fn beta_root() {
        // A = xy has rank 2, B full rank: the root (1:0) appears
        let a = QForm::from_int_terms(2, &[(0, 1, 1)]);
        let b = QForm::from_int_terms(2, &[(0, 0, 1), (1, 1, 1)]);
        let rep = low_rank_pencil(&a, &b, 1).unwrap();
        // threshold 2 ≥ n: identically low
        assert!(rep.identically_low);
        let a3 = QForm::from_int_terms(3, &[(0, 1, 1)]);
        let b3 = QForm::from_int_terms(3, &[(0, 0, 1), (1, 1, 1), (2, 2, 1)]);
        let rep = matrix_pencil_report(a3.gram(), b3.gram(), 3, 3, 1);
        assert!(rep.rational_roots.is_empty());
        let rep = matrix_pencil_report(a3.gram(), b3.gram(), 3, 3, 2);
        assert_eq!(rep.rational_roots[0], (Scalar::one(), Scalar::zero()));
    }
}
