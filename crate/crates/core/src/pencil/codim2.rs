//! Search for a 2-dimensional space `W` of linear forms such that two
//! quadratics both vanish once every form of `W` is set to zero.

use num_traits::Zero;

use crate::error::{QsgError, Result};
use crate::field::{ExtScalar, Field, Scalar};
use crate::ideals::{rational_point, MPoly, PointSearch};
use crate::linalg;
use crate::qform::{factor, LinForm, LinSpace, QForm};

use super::lowrank::next_combination;

/// Evidence that a common codimension-two space exists over the complex
/// numbers although none was found with coordinates in `Q(i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionCertificate {
    /// The discriminant whose square root defines the space, when known.
    pub disc: Option<Scalar>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Codim2 {
    Found(LinSpace),
    NeedsExtension(ExtensionCertificate),
    None,
}

impl Codim2 {
    pub fn space(&self) -> Option<&LinSpace> {
        match self {
            Codim2::Found(w) => Some(w),
            _ => None,
        }
    }

    /// Does a common space exist over the complex numbers?
    pub fn exists(&self) -> bool {
        !matches!(self, Codim2::None)
    }
}

/// Do both forms vanish on `W = 0`?
pub fn vanishes_on(q: &QForm, w: &LinSpace) -> Result<bool> {
    Ok(q.restrict_to_zero(w)?.is_zero())
}

/// Gram rank of `g` restricted to `l = 0`, computed over the extension.
fn ext_restricted_rank(g: &QForm, l: &[ExtScalar]) -> usize {
    let n = g.n();
    let (rows, piv) = linalg::rref(&[l.to_vec()], n);
    let p = piv[0];
    // x_p = -Σ_{j != p} l_j x_j
    let mut s: Vec<Vec<ExtScalar>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { ExtScalar::fone() } else { ExtScalar::fzero() }).collect())
        .collect();
    s[p] = (0..n)
        .map(|j| if j == p { ExtScalar::fzero() } else { rows[0][j].neg_ref() })
        .collect();
    let m: Vec<Vec<ExtScalar>> = g
        .gram()
        .iter()
        .map(|r| r.iter().map(|c| ExtScalar::from_scalar(c.clone(), &Scalar::zero())).collect())
        .collect();
    let ms = linalg::mat_mul(&m, &s, n);
    let st = linalg::transpose(&s, n);
    linalg::rank(&linalg::mat_mul(&st, &ms, n), n)
}

/// A coordinate form completing `l` to a 2-dimensional space.
fn complement_var(l: &[Scalar]) -> LinForm {
    let n = l.len();
    let nonzero: Vec<usize> = (0..n).filter(|&j| !l[j].is_zero()).collect();
    let j = (0..n)
        .find(|&j| !(nonzero.len() == 1 && nonzero[0] == j))
        .expect("n >= 2");
    LinForm::var(n, j)
}

/// Some form of rank at most two: `W` must contain one of its linear
/// factors.
fn through_factors(f: &QForm, g: &QForm) -> Result<Codim2> {
    let n = f.n();
    if f.gram_rank() == 2 {
        let ms = f.minimal_space();
        if vanishes_on(g, &ms)? {
            return Ok(Codim2::Found(ms));
        }
    }
    let fw = factor(f)?;
    let mut cert = None;
    match fw.rational_factors() {
        Some(ls) => {
            for l in ls {
                let lspace = LinSpace::from_rows(n, vec![l.clone()])?;
                let h = g.restrict_to_zero(&lspace)?;
                if h.is_zero() {
                    let w = LinSpace::span(n, &[LinForm::new(l.clone()), complement_var(&l)])?;
                    return Ok(Codim2::Found(w));
                }
                if h.gram_rank() <= 2 {
                    let hw = factor(&h)?;
                    match hw.rational_factors() {
                        Some(ds) => {
                            let w = LinSpace::from_rows(n, vec![l.clone(), ds[0].clone()])?;
                            return Ok(Codim2::Found(w));
                        }
                        None => {
                            cert.get_or_insert(ExtensionCertificate {
                                disc: Some(hw.disc.clone()),
                                reason: "the second form splits on a factor of the first only over a quadratic extension".into(),
                            });
                        }
                    }
                }
            }
        }
        None => {
            // conjugate factors: W would contain an irrational factor
            if ext_restricted_rank(g, &fw.factors[0]) <= 2 {
                cert = Some(ExtensionCertificate {
                    disc: Some(fw.disc.clone()),
                    reason: "the first form factors only over a quadratic extension".into(),
                });
            }
        }
    }
    Ok(cert.map_or(Codim2::None, Codim2::NeedsExtension))
}

fn sub_block(m: &[Vec<Scalar>], rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Vec<Vec<Scalar>> {
    m[rows].iter().map(|r| r[cols.clone()].to_vec()).collect()
}

/// All nonzero forms have Gram rank 3 or 4, which forces `W` inside the
/// intersection of their minimal spaces.
fn inside_intersection(forms: &[&QForm]) -> Result<Codim2> {
    let n = forms[0].n();
    let mut inter = forms[0].minimal_space();
    for f in &forms[1..] {
        inter = inter.intersection(&f.minimal_space());
    }
    let k = inter.dim();
    if k < 2 {
        return Ok(Codim2::None);
    }
    // coordinates y = B x with the intersection basis first
    let mut b: Vec<Vec<Scalar>> = inter.basis().to_vec();
    for j in (0..n).filter(|j| !inter.pivots().contains(j)) {
        b.push(LinForm::var(n, j).into_coeffs());
    }
    let s = linalg::inverse(&b).expect("echelon basis plus free coordinates");
    let grams: Vec<QForm> = forms.iter().map(|f| f.substitute(&s, n)).collect::<Result<_>>()?;
    // W only involves the first k coordinates, so the rest must not interact
    let mut cross_rows: Vec<Vec<Scalar>> = Vec::new();
    for g in &grams {
        let gm = g.gram();
        if sub_block(gm, k..n, k..n).iter().flatten().any(|c| !c.is_zero()) {
            return Ok(Codim2::None);
        }
        for c in k..n {
            cross_rows.push((0..k).map(|i| gm[i][c].clone()).collect());
        }
    }
    // points of the zero set of W must lie in the common kernel of the
    // cross blocks and be totally isotropic for the inner blocks
    let kmat = if cross_rows.is_empty() {
        LinSpace::full(k).basis().to_vec()
    } else {
        linalg::nullspace(&cross_rows, k)
    };
    let dk = kmat.len();
    let m = k - 2;
    if dk < m {
        return Ok(Codim2::None);
    }
    let finish = |pi: Vec<Vec<Scalar>>| -> Result<Codim2> {
        let ws = if pi.is_empty() {
            LinSpace::full(k).basis().to_vec()
        } else {
            linalg::nullspace(&pi, k)
        };
        let rows = ws
            .iter()
            .map(|w| {
                let mut v = vec![Scalar::zero(); n];
                for (wi, e) in w.iter().zip(inter.basis()) {
                    for (o, x) in v.iter_mut().zip(e) {
                        *o += &(wi * x);
                    }
                }
                v
            })
            .collect();
        Ok(Codim2::Found(LinSpace::from_rows(n, rows)?))
    };
    if m == 0 {
        return finish(Vec::new());
    }
    let kt = linalg::transpose(&kmat, k);
    let inner: Vec<Vec<Vec<Scalar>>> = grams
        .iter()
        .map(|g| {
            let gee = sub_block(g.gram(), 0..k, 0..k);
            linalg::mat_mul(&kmat, &linalg::mat_mul(&gee, &kt, dk), dk)
        })
        .collect();
    let mut need_ext = false;
    let mut piv: Vec<usize> = (0..m).collect();
    loop {
        let free: Vec<usize> = (0..dk).filter(|c| !piv.contains(c)).collect();
        let nv = m * free.len();
        // row a: e_{piv[a]} + Σ_c s_{a,c} e_c over free columns c
        let rows: Vec<Vec<MPoly>> = (0..m)
            .map(|a| {
                (0..dk)
                    .map(|c| {
                        if c == piv[a] {
                            MPoly::one(nv)
                        } else if let Some(fi) = free.iter().position(|&f| f == c) {
                            MPoly::var(nv, a * free.len() + fi)
                        } else {
                            MPoly::zero(nv)
                        }
                    })
                    .collect()
            })
            .collect();
        let mut eqs = Vec::new();
        for h in &inner {
            for a in 0..m {
                for bb in a..m {
                    let mut e = MPoly::zero(nv);
                    for i in 0..dk {
                        for j in 0..dk {
                            if h[i][j].is_zero() || rows[a][i].is_zero() || rows[bb][j].is_zero() {
                                continue;
                            }
                            e = e.add(&rows[a][i].mul(&rows[bb][j])?.scale(&h[i][j]))?;
                        }
                    }
                    eqs.push(e);
                }
            }
        }
        match rational_point(&eqs, nv)? {
            PointSearch::Found(pt) => {
                let pi_k: Vec<Vec<Scalar>> = (0..m)
                    .map(|a| {
                        (0..dk)
                            .map(|c| {
                                if c == piv[a] {
                                    Scalar::from_int(1)
                                } else if let Some(fi) = free.iter().position(|&f| f == c) {
                                    pt[a * free.len() + fi].clone()
                                } else {
                                    Scalar::zero()
                                }
                            })
                            .collect()
                    })
                    .collect();
                return finish(linalg::mat_mul(&pi_k, &kmat, k));
            }
            PointSearch::NoRationalPoint => need_ext = true,
            PointSearch::Inconsistent => {}
        }
        if !next_combination(&mut piv, dk) {
            break;
        }
    }
    Ok(if need_ext {
        Codim2::NeedsExtension(ExtensionCertificate {
            disc: None,
            reason: "isotropic subspaces exist only over an algebraic extension".into(),
        })
    } else {
        Codim2::None
    })
}

/// A 2-dimensional `W` with `A|_{W=0} = B|_{W=0} = 0`, searched in a fixed
/// order: the minimal space of a rank-2 form, then linear factors (of `A`
/// before `B`), then isotropic subspaces inside the common minimal space.
pub fn codim2_common(a: &QForm, b: &QForm) -> Result<Codim2> {
    let n = a.n();
    if b.n() != n {
        return Err(QsgError::DimensionMismatch { expected: n, got: b.n() });
    }
    if n < 2 {
        return Ok(Codim2::None);
    }
    let (ra, rb) = (a.gram_rank(), b.gram_rank());
    // setting two forms to zero lowers rank_s by at most two
    if ra > 4 || rb > 4 {
        return Ok(Codim2::None);
    }
    let result = if ra == 0 && rb == 0 {
        Codim2::Found(LinSpace::span(n, &[LinForm::var(n, 0), LinForm::var(n, 1)])?)
    } else if (1..=2).contains(&ra) {
        through_factors(a, b)?
    } else if (1..=2).contains(&rb) {
        through_factors(b, a)?
    } else {
        let forms: Vec<&QForm> = [a, b].into_iter().filter(|q| !q.is_zero()).collect();
        inside_intersection(&forms)?
    };
    if let Codim2::Found(w) = &result {
        debug_assert_eq!(w.dim(), 2);
        debug_assert!(vanishes_on(a, w)? && vanishes_on(b, w)?);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::codim2_oracle;

    fn found(a: &QForm, b: &QForm) -> LinSpace {
        match codim2_common(a, b).unwrap() {
            Codim2::Found(w) => {
                assert_eq!(w.dim(), 2);
                assert!(vanishes_on(a, &w).unwrap() && vanishes_on(b, &w).unwrap());
                w
            }
            other => panic!("expected a space, got {other:?}"),
        }
    }

    #[test]
    fn shared_factor() {
        let xu = QForm::from_int_terms(3, &[(0, 2, 1)]);
        let yu = QForm::from_int_terms(3, &[(1, 2, 1)]);
        found(&xu, &yu);
    }

    #[test]
    fn rank_too_high() {
        let a = QForm::from_int_terms(6, &[(0, 1, 1), (2, 3, 1)]);
        let b = QForm::from_int_terms(6, &[(0, 1, 1), (2, 3, 1), (4, 5, 1)]);
        assert_eq!(codim2_common(&a, &b).unwrap(), Codim2::None);
    }

    #[test]
    fn agrees_with_oracle_on_small_cases() {
        let cases = [
            (QForm::from_int_terms(4, &[(0, 1, 1), (2, 3, 1)]), QForm::from_int_terms(4, &[(0, 2, 1)])),
            (QForm::from_int_terms(4, &[(0, 1, 1), (2, 3, 1)]), QForm::from_int_terms(4, &[(0, 1, 1), (2, 3, -1)])),
            (QForm::from_int_terms(4, &[(0, 0, 1), (1, 2, 1)]), QForm::from_int_terms(4, &[(1, 1, 1), (0, 2, 1)])),
            (QForm::from_int_terms(4, &[(0, 0, 1), (1, 1, -2)]), QForm::from_int_terms(4, &[(2, 3, 1)])),
            (QForm::from_int_terms(4, &[(0, 1, 1), (2, 3, 1)]), QForm::from_int_terms(4, &[(0, 3, 1), (1, 2, 1)])),
        ];
        for (a, b) in &cases {
            let r = codim2_common(a, b).unwrap();
            assert_eq!(r.exists(), codim2_oracle(a, b).unwrap(), "{a:?} / {b:?}: {r:?}");
            if let Codim2::Found(w) = &r {
                assert!(vanishes_on(a, w).unwrap() && vanishes_on(b, w).unwrap());
            }
        }
    }
}
