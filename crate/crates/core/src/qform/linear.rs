use std::fmt;

use num_traits::Zero;

use crate::error::{QsgError, Result};
use crate::field::Scalar;
use crate::linalg;

/// A linear form `Σ c_i x_i` stored as its coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinForm {
    coeffs: Vec<Scalar>,
}

impl LinForm {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        LinForm { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        LinForm::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        LinForm::new(vec![Scalar::zero(); n])
    }

    /// The coordinate form `x_i`.
    pub fn var(n: usize, i: usize) -> Self {
        let mut c = vec![Scalar::zero(); n];
        c[i] = Scalar::from_int(1);
        LinForm::new(c)
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &LinForm) -> LinForm {
        LinForm::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &LinForm) -> LinForm {
        LinForm::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Scalar) -> LinForm {
        LinForm::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Standard bilinear pairing of coefficient vectors.
    pub fn pair(&self, o: &LinForm) -> Scalar {
        linalg::dot(&self.coeffs, &o.coeffs)
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        linalg::dot(&self.coeffs, x)
    }

    /// Scales so that the first nonzero coefficient is one; returns the
    /// normalized form and the removed factor. `None` for the zero form.
    pub fn normalized(&self) -> Option<(LinForm, Scalar)> {
        let lead = self.coeffs.iter().find(|c| !c.is_zero())?.clone();
        let inv = lead.inv().ok()?;
        Some((self.scale(&inv), lead))
    }

    /// True when `self` is a nonzero scalar multiple of `o` (or both zero).
    pub fn is_proportional(&self, o: &LinForm) -> bool {
        match (self.normalized(), o.normalized()) {
            (Some((a, _)), Some((b, _))) => a == b,
            (None, None) => true,
            _ => false,
        }
    }
}

impl fmt::Debug for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*x{}", c, i)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A subspace of linear forms in canonical reduced row echelon form, so
/// that equal spaces have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinSpace {
    n: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl LinSpace {
    pub fn zero(n: usize) -> Self {
        LinSpace {
            n,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        LinSpace::from_rows(n, (0..n).map(|i| LinForm::var(n, i).into_coeffs()).collect())
            .expect("coordinate forms have length n")
    }

    /// The span of the given coefficient rows.
    pub fn from_rows(n: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(QsgError::DimensionMismatch {
                expected: n,
                got: r.len(),
            });
        }
        let (basis, pivots) = linalg::rref(&rows, n);
        Ok(LinSpace { n, basis, pivots })
    }

    pub fn span(n: usize, forms: &[LinForm]) -> Result<Self> {
        LinSpace::from_rows(n, forms.iter().map(|f| f.coeffs().to_vec()).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn basis_forms(&self) -> Vec<LinForm> {
        self.basis.iter().cloned().map(LinForm::new).collect()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces a coefficient vector against the basis: the result has zero
    /// entries in all pivot columns and differs from `v` by an element of
    /// the space.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                *o -= &(&f * r);
            }
        }
        out
    }

    pub fn contains_vec(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains(&self, f: &LinForm) -> bool {
        self.contains_vec(f.coeffs())
    }

    pub fn is_subspace_of(&self, o: &LinSpace) -> bool {
        self.basis.iter().all(|r| o.contains_vec(r))
    }

    pub fn sum(&self, o: &LinSpace) -> LinSpace {
        let mut rows = self.basis.clone();
        rows.extend(o.basis.iter().cloned());
        LinSpace::from_rows(self.n, rows).expect("same ambient dimension")
    }

    pub fn sum_all<'a>(n: usize, spaces: impl IntoIterator<Item = &'a LinSpace>) -> LinSpace {
        let rows = spaces.into_iter().flat_map(|s| s.basis.iter().cloned()).collect();
        LinSpace::from_rows(n, rows).expect("same ambient dimension")
    }

    pub fn intersection(&self, o: &LinSpace) -> LinSpace {
        if self.is_zero() || o.is_zero() {
            return LinSpace::zero(self.n);
        }
        // columns: basis of self, then minus basis of o
        let k = self.dim() + o.dim();
        let m: Vec<Vec<Scalar>> = (0..self.n)
            .map(|c| {
                self.basis
                    .iter()
                    .map(|r| r[c].clone())
                    .chain(o.basis.iter().map(|r| -&r[c]))
                    .collect()
            })
            .collect();
        let rows = linalg::nullspace(&m, k)
            .into_iter()
            .map(|coef| {
                let mut v = vec![Scalar::zero(); self.n];
                for (a, row) in coef.iter().zip(&self.basis) {
                    for (x, r) in v.iter_mut().zip(row) {
                        *x += &(a * r);
                    }
                }
                v
            })
            .collect();
        LinSpace::from_rows(self.n, rows).expect("same ambient dimension")
    }

    /// `{x : <x, v> = 0 for all v in self}` under the standard bilinear
    /// pairing, with the canonical nullspace basis.
    pub fn perp(&self) -> LinSpace {
        if self.is_zero() {
            return LinSpace::full(self.n);
        }
        let ns = linalg::nullspace(&self.basis, self.n);
        LinSpace::from_rows(self.n, ns).expect("same ambient dimension")
    }

    /// Basis of `perp()` before echelon normalization: one vector per free
    /// column of the basis, as returned by the nullspace routine.
    pub fn perp_raw_basis(&self) -> Vec<Vec<Scalar>> {
        if self.is_zero() {
            return LinSpace::full(self.n).basis;
        }
        linalg::nullspace(&self.basis, self.n)
    }

    /// Re-embeds into a larger ambient space by appending zero columns.
    pub fn embed(&self, n: usize) -> LinSpace {
        assert!(n >= self.n);
        let rows = self
            .basis
            .iter()
            .map(|r| {
                let mut v = r.clone();
                v.resize(n, Scalar::zero());
                v
            })
            .collect();
        LinSpace::from_rows(n, rows).expect("padded rows")
    }
}

impl fmt::Debug for LinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{:?}", self.basis_forms())
    }
}

/// Projection of `a` to the orthogonal complement of `v`, i.e. the
/// `perp(v)` component of `a` in the decomposition `a = v_part + perp_part`.
///
/// Fails when `v` meets its own complement (possible over `Q(i)`, e.g.
/// `span{x + i*y}`), since the decomposition is then not unique.
pub fn perp_project(a: &LinForm, v: &LinSpace) -> Result<LinForm> {
    if a.n() != v.n() {
        return Err(QsgError::DimensionMismatch {
            expected: v.n(),
            got: a.n(),
        });
    }
    if v.is_zero() {
        return Ok(a.clone());
    }
    let d = v.dim();
    let mut b = v.basis().to_vec();
    let perp = v.perp_raw_basis();
    b.extend(perp.iter().cloned());
    // solve c^T B = a^T  <=>  B^T c = a
    let bt = linalg::transpose(&b, v.n());
    let c = linalg::solve(&bt, a.coeffs(), v.n());
    let c = c.filter(|_| linalg::rank(&b, v.n()) == v.n()).ok_or_else(|| {
        QsgError::Precondition("the space meets its orthogonal complement".into())
    })?;
    let mut out = vec![Scalar::zero(); v.n()];
    for (ck, row) in c[d..].iter().zip(&perp) {
        for (o, r) in out.iter_mut().zip(row) {
            *o += &(ck * r);
        }
    }
    Ok(LinForm::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(n: usize, rows: &[&[i64]]) -> LinSpace {
        LinSpace::span(n, &rows.iter().map(|r| LinForm::from_ints(r)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn canonical_representation() {
        assert_eq!(sp(3, &[&[1, 1, 0], &[1, -1, 0]]), sp(3, &[&[1, 0, 0], &[0, 2, 0]]));
        assert_eq!(sp(3, &[&[0, 0, 0]]).dim(), 0);
    }

    #[test]
    fn intersection_and_sum() {
        let a = sp(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = sp(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersection(&b), sp(3, &[&[0, 1, 0]]));
        assert_eq!(a.sum(&b).dim(), 3);
        assert_eq!(a.perp(), sp(3, &[&[0, 0, 1]]));
    }

    #[test]
    fn perp_projection() {
        let x = sp(2, &[&[1, 0]]);
        assert!(perp_project(&LinForm::from_ints(&[1, 0]), &x).unwrap().is_zero());
        assert_eq!(
            perp_project(&LinForm::from_ints(&[1, 1]), &x).unwrap(),
            LinForm::from_ints(&[0, 1])
        );
        let a = LinForm::from_ints(&[3, 4]);
        assert_eq!(perp_project(&a, &LinSpace::zero(2)).unwrap(), a);
        let iso = LinSpace::span(2, &[LinForm::new(vec![Scalar::from_int(1), Scalar::i()])]).unwrap();
        assert!(perp_project(&a, &iso).is_err());
    }
}
