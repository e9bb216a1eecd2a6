use num_traits::Zero;

use super::form::QForm;
use super::linear::{LinForm, LinSpace};
use crate::error::{QsgError, Result};
use crate::field::Scalar;
use crate::linalg;

/// The linear map sending the `i`-th basis form of `V` to `alpha_i * z`
/// and fixing a basis of the orthogonal complement of `V`; `z` is a fresh
/// variable with index `n`. Extended multiplicatively to polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionMap {
    n: usize,
    /// `images[k]` is the image of `x_k` as a form in `n + 1` variables.
    images: Vec<Vec<Scalar>>,
}

impl ProjectionMap {
    pub fn new(v: &LinSpace, alpha: &[Scalar]) -> Result<Self> {
        if alpha.len() != v.dim() {
            return Err(QsgError::DimensionMismatch {
                expected: v.dim(),
                got: alpha.len(),
            });
        }
        let n = v.n();
        let d = v.dim();
        let perp = v.perp_raw_basis();
        let mut b = v.basis().to_vec();
        b.extend(perp.iter().cloned());
        let c = linalg::inverse(&b).ok_or_else(|| {
            QsgError::Precondition("the space meets its orthogonal complement".into())
        })?;
        // x_k = Σ_r C[k][r] B_r, so T(x_k) = Σ_{r<d} C[k][r] α_r z + Σ_{r>=d} C[k][r] u_r
        let images = (0..n)
            .map(|k| {
                let mut img = vec![Scalar::zero(); n + 1];
                for r in 0..d {
                    img[n] += &(&c[k][r] * &alpha[r]);
                }
                for (r, u) in perp.iter().enumerate() {
                    let ck = &c[k][d + r];
                    if ck.is_zero() {
                        continue;
                    }
                    for (o, x) in img.iter_mut().zip(u) {
                        *o += &(ck * x);
                    }
                }
                img
            })
            .collect();
        Ok(ProjectionMap { n, images })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Index of the fresh variable.
    pub fn z_index(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[Vec<Scalar>] {
        &self.images
    }

    pub fn apply_linform(&self, a: &LinForm) -> Result<LinForm> {
        if a.n() != self.n {
            return Err(QsgError::DimensionMismatch {
                expected: self.n,
                got: a.n(),
            });
        }
        let mut out = vec![Scalar::zero(); self.n + 1];
        for (c, img) in a.coeffs().iter().zip(&self.images) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(img) {
                *o += &(c * x);
            }
        }
        Ok(LinForm::new(out))
    }

    pub fn apply_qform(&self, q: &QForm) -> Result<QForm> {
        q.substitute(&self.images, self.n + 1)
    }
}

/// Convenience constructor mirroring [`ProjectionMap::new`].
pub fn projection_map(v: &LinSpace, alpha: &[Scalar]) -> Result<ProjectionMap> {
    ProjectionMap::new(v, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, terms: &[(usize, usize, i64)]) -> QForm {
        QForm::from_monomials(n, terms.iter().map(|&(i, j, c)| ((i, j), Scalar::from_int(c))))
            .unwrap()
    }

    #[test]
    fn coordinate_projection() {
        let v = LinSpace::span(2, &[LinForm::var(2, 0)]).unwrap();
        let t = projection_map(&v, &[Scalar::from_int(1)]).unwrap();
        assert_eq!(t.apply_qform(&q(2, &[(0, 1, 1)])).unwrap(), q(3, &[(1, 2, 1)]));
    }

    #[test]
    fn forms_inside_v_collapse_to_z() {
        let v = LinSpace::span(3, &[LinForm::from_ints(&[1, 1, 0]), LinForm::from_ints(&[0, 1, -1])])
            .unwrap();
        let t = projection_map(&v, &[Scalar::from_int(3), Scalar::from_ratio(1, 5)]).unwrap();
        let a = LinForm::from_ints(&[1, 1, 0]);
        let b = LinForm::from_ints(&[1, 2, -1]);
        let img = t.apply_qform(&QForm::product(&a, &b).unwrap()).unwrap();
        let mono = img.to_monomials();
        assert_eq!(mono.len(), 1);
        assert!(mono.contains_key(&(3, 3)));
    }

    #[test]
    fn rank_drops_by_at_most_dim() {
        let v = LinSpace::span(4, &[LinForm::var(4, 0)]).unwrap();
        let t = projection_map(&v, &[Scalar::from_int(1)]).unwrap();
        let img = t.apply_qform(&q(4, &[(0, 1, 1), (2, 3, 1)])).unwrap();
        assert_eq!(img, q(5, &[(1, 4, 1), (2, 3, 1)]));
        assert_eq!(img.rank_s(), 2);
    }

    #[test]
    fn dimension_mismatch() {
        let v = LinSpace::span(2, &[LinForm::var(2, 0)]).unwrap();
        assert!(projection_map(&v, &[]).is_err());
    }
}
