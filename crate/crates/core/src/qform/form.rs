use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::linear::{LinForm, LinSpace};
use crate::error::{QsgError, Result};
use crate::field::Scalar;
use crate::linalg;

/// A homogeneous quadratic `x^T M x` with `M` symmetric. The coefficient of
/// `x_i^2` is `M_ii`; the coefficient of `x_i x_j` (`i != j`) is `2 M_ij`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QForm {
    n: usize,
    gram: Vec<Vec<Scalar>>,
}

impl QForm {
    pub fn zero(n: usize) -> Self {
        QForm {
            n,
            gram: vec![vec![Scalar::zero(); n]; n],
        }
    }

    pub fn from_gram(gram: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(QsgError::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(QsgError::Precondition("gram matrix is not symmetric".into()));
                }
            }
        }
        Ok(QForm { n, gram })
    }

    /// Builds a form from monomial coefficients keyed by `(i, j)`; the pair
    /// order is irrelevant and repeated monomials accumulate.
    pub fn from_monomials<I>(n: usize, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), Scalar)>,
    {
        let mut q = QForm::zero(n);
        let half = Scalar::from_ratio(1, 2);
        for ((i, j), c) in monomials {
            for idx in [i, j] {
                if idx >= n {
                    return Err(QsgError::IndexOutOfRange { index: idx, n });
                }
            }
            if i == j {
                q.gram[i][i] += &c;
            } else {
                let h = &c * &half;
                q.gram[i][j] += &h;
                q.gram[j][i] += &h;
            }
        }
        Ok(q)
    }

    /// Convenience constructor from integer monomial coefficients `(i, j, c)`.
    pub fn from_int_terms(n: usize, terms: &[(usize, usize, i64)]) -> Self {
        QForm::from_monomials(n, terms.iter().map(|&(i, j, c)| ((i, j), Scalar::from_int(c))))
            .expect("indices in range")
    }

    /// Monomial coefficients keyed by `(i, j)` with `i <= j`; zero terms are
    /// omitted.
    pub fn to_monomials(&self) -> BTreeMap<(usize, usize), Scalar> {
        let two = Scalar::from_int(2);
        let mut out = BTreeMap::new();
        for i in 0..self.n {
            for j in i..self.n {
                let c = &self.gram[i][j];
                if c.is_zero() {
                    continue;
                }
                out.insert((i, j), if i == j { c.clone() } else { c * &two });
            }
        }
        out
    }

    /// Monomial coefficients in the fixed order `(0,0), (0,1), .., (n-1,n-1)`;
    /// used to test linear (in)dependence of quadratics.
    pub fn coeff_vector(&self) -> Vec<Scalar> {
        let two = Scalar::from_int(2);
        let mut out = Vec::with_capacity(self.n * (self.n + 1) / 2);
        for i in 0..self.n {
            for j in i..self.n {
                let c = &self.gram[i][j];
                out.push(if i == j { c.clone() } else { c * &two });
            }
        }
        out
    }

    /// `a * b` as a quadratic form.
    pub fn product(a: &LinForm, b: &LinForm) -> Result<Self> {
        if a.n() != b.n() {
            return Err(QsgError::DimensionMismatch {
                expected: a.n(),
                got: b.n(),
            });
        }
        let n = a.n();
        let half = Scalar::from_ratio(1, 2);
        let (ac, bc) = (a.coeffs(), b.coeffs());
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &(&(&ac[i] * &bc[j]) + &(&ac[j] * &bc[i])) * &half)
                    .collect()
            })
            .collect();
        Ok(QForm { n, gram })
    }

    pub fn square(a: &LinForm) -> Self {
        QForm::product(a, a).expect("same form")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gram(&self) -> &[Vec<Scalar>] {
        &self.gram
    }

    pub fn is_zero(&self) -> bool {
        self.gram.iter().flatten().all(Zero::is_zero)
    }

    fn check_n(&self, o: &QForm) -> Result<()> {
        if self.n != o.n {
            return Err(QsgError::DimensionMismatch {
                expected: self.n,
                got: o.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &QForm) -> Result<QForm> {
        self.check_n(o)?;
        Ok(self.zip_with(o, |a, b| a + b))
    }

    pub fn sub(&self, o: &QForm) -> Result<QForm> {
        self.check_n(o)?;
        Ok(self.zip_with(o, |a, b| a - b))
    }

    fn zip_with(&self, o: &QForm, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> QForm {
        let gram = self
            .gram
            .iter()
            .zip(&o.gram)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
            .collect();
        QForm { n: self.n, gram }
    }

    pub fn scale(&self, c: &Scalar) -> QForm {
        QForm {
            n: self.n,
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(|a| a * c).collect())
                .collect(),
        }
    }

    /// `alpha * self + beta * o`.
    pub fn combine(&self, alpha: &Scalar, o: &QForm, beta: &Scalar) -> Result<QForm> {
        self.check_n(o)?;
        Ok(self.zip_with(o, |a, b| &(alpha * a) + &(beta * b)))
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        linalg::dot(x, &linalg::mat_vec(&self.gram, x))
    }

    /// Exact rank of the Gram matrix.
    pub fn gram_rank(&self) -> usize {
        linalg::rank(&self.gram, self.n)
    }

    /// The minimal number of products of linear forms summing to the form:
    /// half the Gram rank, rounded up.
    pub fn rank_s(&self) -> usize {
        self.gram_rank().div_ceil(2)
    }

    /// The space spanned by the linear forms of any minimal representation,
    /// which is the row space of the Gram matrix.
    pub fn minimal_space(&self) -> LinSpace {
        LinSpace::from_rows(self.n, self.gram.clone()).expect("square gram")
    }

    /// Linear change of variables `x = S y`, where row `k` of `s` expresses
    /// `x_k` in the `m` new variables. The result has Gram matrix `S^T M S`.
    pub fn substitute(&self, s: &[Vec<Scalar>], m: usize) -> Result<QForm> {
        if s.len() != self.n {
            return Err(QsgError::DimensionMismatch {
                expected: self.n,
                got: s.len(),
            });
        }
        let ms = linalg::mat_mul(&self.gram, s, m);
        let st = linalg::transpose(s, m);
        let gram = linalg::mat_mul(&st, &ms, m);
        Ok(QForm { n: m, gram })
    }

    /// `Q|_{V=0}`: each basis form of `V` is solved for its pivot variable,
    /// which is then substituted away. The result lives on the same `n`
    /// variables with the pivot coordinates absent.
    pub fn restrict_to_zero(&self, v: &LinSpace) -> Result<QForm> {
        if v.n() != self.n {
            return Err(QsgError::DimensionMismatch {
                expected: self.n,
                got: v.n(),
            });
        }
        self.substitute(&pivot_elimination(v), self.n)
    }

    /// Canonical representative modulo the ideal generated by `V`; two forms
    /// are congruent modulo `V` iff their representatives agree.
    pub fn reduce_mod_linspace(&self, v: &LinSpace) -> Result<QForm> {
        self.restrict_to_zero(v)
    }

    /// Is `self` a scalar multiple of `o`, with both nonzero?
    pub fn is_proportional(&self, o: &QForm) -> bool {
        if self.n != o.n || self.is_zero() || o.is_zero() {
            return false;
        }
        let m = vec![self.coeff_vector(), o.coeff_vector()];
        linalg::rank(&m, m[0].len()) == 1
    }
}

/// The substitution matrix `S` (rows indexed by old variables, columns by
/// the same variables) that sets every basis form of `v` to zero by solving
/// for its pivot: `x_p = -Σ_{j not pivot} c_j x_j`, other variables fixed.
fn pivot_elimination(v: &LinSpace) -> Vec<Vec<Scalar>> {
    let n = v.n();
    let mut s: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut r = vec![Scalar::zero(); n];
            r[i] = Scalar::one();
            r
        })
        .collect();
    for (row, &p) in v.basis().iter().zip(v.pivots()) {
        let mut r = vec![Scalar::zero(); n];
        for j in 0..n {
            if j != p && !v.pivots().contains(&j) && !row[j].is_zero() {
                r[j] = -&row[j];
            }
        }
        s[p] = r;
    }
    s
}

impl fmt::Debug for QForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.to_monomials();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|((i, j), c)| format!("{}*x{}*x{}", c, i, j))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, terms: &[(usize, usize, i64)]) -> QForm {
        QForm::from_monomials(n, terms.iter().map(|&(i, j, c)| ((i, j), Scalar::from_int(c))))
            .unwrap()
    }

    fn sp(n: usize, rows: &[&[i64]]) -> LinSpace {
        LinSpace::span(n, &rows.iter().map(|r| LinForm::from_ints(r)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn monomial_convention() {
        let xy = q(2, &[(0, 1, 1)]);
        let h = Scalar::from_ratio(1, 2);
        assert_eq!(xy.gram(), &[vec![Scalar::zero(), h.clone()], vec![h, Scalar::zero()]]);
        assert_eq!(q(1, &[(0, 0, 1)]).gram(), &[vec![Scalar::one()]]);
        let q1 = q(4, &[(0, 1, 1), (2, 3, 1)]);
        let back = QForm::from_monomials(4, q1.to_monomials()).unwrap();
        assert_eq!(back, q1);
        assert!(QForm::from_monomials(2, [((0, 2), Scalar::one())]).is_err());
    }

    #[test]
    fn rank_s_examples() {
        assert_eq!(q(2, &[(0, 1, 1)]).rank_s(), 1);
        assert_eq!(q(4, &[(0, 1, 1), (2, 3, 1)]).rank_s(), 2);
        assert_eq!(q(3, &[(0, 0, 1), (1, 2, 1)]).rank_s(), 2);
        assert_eq!(QForm::zero(3).rank_s(), 0);
    }

    #[test]
    fn minimal_space_examples() {
        assert_eq!(q(4, &[(0, 1, 1), (2, 3, 1)]).minimal_space(), LinSpace::full(4));
        assert_eq!(q(2, &[(0, 0, 1)]).minimal_space(), sp(2, &[&[1, 0]]));
        assert!(QForm::zero(2).minimal_space().is_zero());
    }

    #[test]
    fn restriction_examples() {
        let x = sp(4, &[&[1, 0, 0, 0]]);
        assert_eq!(q(4, &[(0, 1, 1), (2, 3, 1)]).restrict_to_zero(&x).unwrap(), q(4, &[(2, 3, 1)]));
        assert!(q(4, &[(0, 1, 1)]).restrict_to_zero(&x).unwrap().is_zero());
        let z = sp(4, &[&[0, 0, 1, 0]]);
        assert_eq!(
            q(4, &[(0, 0, 1), (1, 2, 1), (2, 3, 1)]).restrict_to_zero(&z).unwrap(),
            q(4, &[(0, 0, 1)])
        );
        // a non-coordinate form: x - y = 0 turns xy into x^2 (y is free, x pivot)
        let d = sp(2, &[&[1, -1]]);
        assert_eq!(q(2, &[(0, 1, 1)]).restrict_to_zero(&d).unwrap(), q(2, &[(1, 1, 1)]));
    }

    #[test]
    fn reduction_examples() {
        let z = sp(3, &[&[0, 0, 1]]);
        assert_eq!(
            q(3, &[(0, 1, 1), (0, 2, 1)]).reduce_mod_linspace(&z).unwrap(),
            q(3, &[(0, 1, 1)])
        );
        let p = q(3, &[(0, 0, 2), (1, 2, -1)]);
        assert_eq!(p.reduce_mod_linspace(&LinSpace::zero(3)).unwrap(), p);
        let z4 = sp(4, &[&[0, 0, 1, 0]]);
        let a = q(4, &[(0, 0, 1), (0, 1, 1)]);
        let b = q(4, &[(0, 0, 1), (0, 1, 1), (2, 3, 1)]);
        assert_eq!(a.reduce_mod_linspace(&z4).unwrap(), b.reduce_mod_linspace(&z4).unwrap());
    }
}
