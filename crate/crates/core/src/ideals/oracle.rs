//! Brute-force decision of whether two quadratics vanish on a common
//! codimension-two linear subspace, by elimination over the affine charts
//! of the Grassmannian of 2-planes of linear forms.

use super::groebner::{GroebnerBasis, MonomialOrder};
use super::mpoly::MPoly;
use crate::error::{QsgError, Result};
use crate::qform::QForm;

/// The coefficient equations (in the chart parameters) expressing that `q`
/// vanishes once `c = d = 0`, where `c = x_p + Σ s_j x_j` and
/// `d = x_q + Σ t_j x_j` with `j` ranging over the other variables.
fn chart_equations(q: &QForm, p: usize, r: usize) -> Result<Vec<MPoly>> {
    let n = q.n();
    let others: Vec<usize> = (0..n).filter(|&j| j != p && j != r).collect();
    let m = others.len();
    let total = n + 2 * m;
    let mut images: Vec<MPoly> = (0..n).map(|i| MPoly::var(total, i)).collect();
    let mut xp = MPoly::zero(total);
    let mut xr = MPoly::zero(total);
    for (k, &j) in others.iter().enumerate() {
        let xj = MPoly::var(total, j);
        xp = xp.sub(&MPoly::var(total, n + k).mul(&xj)?)?;
        xr = xr.sub(&MPoly::var(total, n + m + k).mul(&xj)?)?;
    }
    images[p] = xp;
    images[r] = xr;
    let sub = MPoly::from_qform(q).compose(&images)?;
    Ok(sub.coefficients_over(n).into_values().collect())
}

/// Decides over the complex numbers whether some 2-dimensional space `W`
/// of linear forms has `A|_{W=0} = B|_{W=0} = 0`.
pub fn codim2_oracle(a: &QForm, b: &QForm) -> Result<bool> {
    let n = a.n();
    if b.n() != n {
        return Err(QsgError::DimensionMismatch { expected: n, got: b.n() });
    }
    if n < 2 {
        return Ok(false);
    }
    for p in 0..n {
        for r in p + 1..n {
            let mut eqs = chart_equations(a, p, r)?;
            eqs.extend(chart_equations(b, p, r)?);
            if eqs.is_empty() {
                return Ok(true);
            }
            if !GroebnerBasis::new(&eqs, MonomialOrder::Grevlex)?.is_unit() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        let xu = QForm::from_int_terms(3, &[(0, 2, 1)]);
        let yu = QForm::from_int_terms(3, &[(1, 2, 1)]);
        assert!(codim2_oracle(&xu, &yu).unwrap());
        let q = QForm::from_int_terms(6, &[(0, 1, 1), (2, 3, 1)]);
        let r = QForm::from_int_terms(6, &[(0, 1, 1), (2, 3, 1), (4, 5, 1)]);
        assert!(!codim2_oracle(&q, &r).unwrap());
        // xy + zw and xz both vanish on x = z = 0
        let xz = QForm::from_int_terms(4, &[(0, 2, 1)]);
        let q4 = QForm::from_int_terms(4, &[(0, 1, 1), (2, 3, 1)]);
        assert!(codim2_oracle(&q4, &xz).unwrap());
    }
}
