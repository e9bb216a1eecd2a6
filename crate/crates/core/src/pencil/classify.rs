use num_traits::{One, Zero};

use super::codim2::{codim2_common, vanishes_on, Codim2, ExtensionCertificate};
use super::lowrank::low_rank_pencil;
use crate::error::{QsgError, Result};
use crate::field::Scalar;
use crate::linalg;
use crate::qform::{factor, FactorWitness, LinSpace, QForm};

/// `(α, β)` with `Q = α A + β B`, if any.
pub fn span_contains(q: &QForm, a: &QForm, b: &QForm) -> Result<Option<(Scalar, Scalar)>> {
    if a.is_zero() && b.is_zero() {
        return Err(QsgError::ZeroInput("both spanning forms are zero"));
    }
    for f in [a, b] {
        if f.n() != q.n() {
            return Err(QsgError::DimensionMismatch { expected: q.n(), got: f.n() });
        }
    }
    let (va, vb, vq) = (a.coeff_vector(), b.coeff_vector(), q.coeff_vector());
    let m: Vec<Vec<Scalar>> = va.iter().zip(&vb).map(|(x, y)| vec![x.clone(), y.clone()]).collect();
    Ok(linalg::solve(&m, &vq, 2).map(|x| (x[0].clone(), x[1].clone())))
}

/// How the reducible-combination case holds.
#[derive(Clone, Debug, PartialEq)]
pub enum CaseTwo {
    /// `α A + β B` has Gram rank at most two, with an explicit
    /// factorization (possibly over a quadratic extension).
    Rational {
        alpha: Scalar,
        beta: Scalar,
        witness: FactorWitness,
        /// Reported because `A` or `B` is the square of a linear form.
        by_square: bool,
    },
    /// The reducible combinations have `α/β` outside `Q(i)`; `min_poly`
    /// (monic, lowest degree first) vanishes at the ratio.
    Irrational { min_poly: Vec<Scalar> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum CaseThree {
    /// `A` and `B` vanish on `W = 0`; `third` lists the members of the
    /// third set that vanish there as well.
    Space { w: LinSpace, third: Vec<usize> },
    /// Such a space exists only over an extension.
    Extension(ExtensionCertificate),
}

/// Every case of the structure theorem that holds for a pair.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CaseSet {
    /// `(k, α, β)` with `third[k] = α A + β B`, lowest `k` first.
    pub case_i: Option<(usize, Scalar, Scalar)>,
    pub case_ii: Option<CaseTwo>,
    pub case_iii: Option<CaseThree>,
}

impl CaseSet {
    pub fn is_empty(&self) -> bool {
        self.case_i.is_none() && self.case_ii.is_none() && self.case_iii.is_none()
    }

    /// Re-verifies every populated witness by direct computation.
    pub fn verify(&self, a: &QForm, b: &QForm, third: &[QForm]) -> Result<bool> {
        if let Some((k, al, be)) = &self.case_i {
            let Some(q) = third.get(*k) else { return Ok(false) };
            if a.combine(al, b, be)? != *q {
                return Ok(false);
            }
        }
        if let Some(CaseTwo::Rational { alpha, beta, witness, .. }) = &self.case_ii {
            if !witness.verify(&a.combine(alpha, b, beta)?) {
                return Ok(false);
            }
        }
        if let Some(CaseThree::Space { w, third: ks }) = &self.case_iii {
            if w.dim() != 2 || !vanishes_on(a, w)? || !vanishes_on(b, w)? {
                return Ok(false);
            }
            for &k in ks {
                if !vanishes_on(&third[k], w)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn reducible_combination(a: &QForm, b: &QForm) -> Result<Option<CaseTwo>> {
    let one = Scalar::one();
    let zero = Scalar::zero();
    for (f, al, be) in [(a, &one, &zero), (b, &zero, &one)] {
        if f.gram_rank() == 1 {
            return Ok(Some(CaseTwo::Rational {
                alpha: al.clone(),
                beta: be.clone(),
                witness: factor(f)?,
                by_square: true,
            }));
        }
    }
    let rep = low_rank_pencil(a, b, 1)?;
    if rep.identically_low {
        return Ok(Some(CaseTwo::Rational {
            alpha: one,
            beta: zero,
            witness: factor(a)?,
            by_square: false,
        }));
    }
    if let Some((al, be)) = rep.rational_roots.first() {
        let c = a.combine(al, b, be)?;
        return Ok(Some(CaseTwo::Rational {
            alpha: al.clone(),
            beta: be.clone(),
            witness: factor(&c)?,
            by_square: false,
        }));
    }
    if rep.has_irrational_roots() {
        return Ok(Some(CaseTwo::Irrational {
            min_poly: rep.irrational_part,
        }));
    }
    Ok(None)
}

/// Evaluates all three cases of the structure theorem for the pair
/// `(A, B)` against the forms of `third`.
pub fn classify_pair(a: &QForm, b: &QForm, third: &[QForm]) -> Result<CaseSet> {
    if a.is_zero() || b.is_zero() {
        return Err(QsgError::ZeroInput("classified forms must be nonzero"));
    }
    if a.n() != b.n() {
        return Err(QsgError::DimensionMismatch { expected: a.n(), got: b.n() });
    }
    if a.is_proportional(b) {
        return Err(QsgError::DependentInputs);
    }
    let mut case_i = None;
    for (k, q) in third.iter().enumerate() {
        if let Some((al, be)) = span_contains(q, a, b)? {
            case_i = Some((k, al, be));
            break;
        }
    }
    let case_ii = reducible_combination(a, b)?;
    let case_iii = match codim2_common(a, b)? {
        Codim2::Found(w) => {
            let mut ks = Vec::new();
            for (k, q) in third.iter().enumerate() {
                if vanishes_on(q, &w)? {
                    ks.push(k);
                }
            }
            Some(CaseThree::Space { w, third: ks })
        }
        Codim2::NeedsExtension(c) => Some(CaseThree::Extension(c)),
        Codim2::None => None,
    };
    Ok(CaseSet {
        case_i,
        case_ii,
        case_iii,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q1() -> QForm {
        QForm::from_int_terms(4, &[(0, 1, 1), (2, 3, 1)])
    }
    fn q2() -> QForm {
        QForm::from_int_terms(4, &[(0, 1, 1), (2, 3, -1)])
    }

    #[test]
    fn span_membership() {
        let two_xy = QForm::from_int_terms(4, &[(0, 1, 2)]);
        assert_eq!(
            span_contains(&two_xy, &q1(), &q2()).unwrap(),
            Some((Scalar::one(), Scalar::one()))
        );
        let xw = QForm::from_int_terms(4, &[(0, 3, 1)]);
        assert_eq!(span_contains(&xw, &q1(), &q2()).unwrap(), None);
        assert_eq!(
            span_contains(&q1(), &q1(), &q2()).unwrap(),
            Some((Scalar::one(), Scalar::zero()))
        );
    }

    #[test]
    fn motivating_pair() {
        let third = [QForm::from_int_terms(4, &[(0, 3, 1)]), QForm::from_int_terms(4, &[(1, 2, 1)])];
        let cs = classify_pair(&q1(), &q2(), &third).unwrap();
        assert!(cs.case_i.is_none());
        assert!(matches!(cs.case_ii, Some(CaseTwo::Rational { .. })));
        assert!(cs.verify(&q1(), &q2(), &third).unwrap());
    }

    #[test]
    fn squares_report_case_two() {
        let a = QForm::from_int_terms(3, &[(0, 0, 1)]);
        let b = QForm::from_int_terms(3, &[(1, 1, 1)]);
        let cs = classify_pair(&a, &b, &[]).unwrap();
        assert!(matches!(cs.case_ii, Some(CaseTwo::Rational { by_square: true, .. })));
    }

    #[test]
    fn span_member_in_third() {
        let a = QForm::from_int_terms(6, &[(0, 1, 1), (2, 3, 1), (4, 5, 1)]);
        let b = QForm::from_int_terms(6, &[(0, 0, 1), (1, 1, 1), (2, 2, 1), (3, 4, 1), (5, 5, 2)]);
        let sum = a.add(&b).unwrap();
        let third = [QForm::from_int_terms(6, &[(0, 5, 1)]), sum];
        let cs = classify_pair(&a, &b, &third).unwrap();
        assert_eq!(cs.case_i, Some((1, Scalar::one(), Scalar::one())));
        assert!(cs.verify(&a, &b, &third).unwrap());
    }

    #[test]
    fn rejects_dependent() {
        assert!(matches!(classify_pair(&q1(), &q1().scale(&Scalar::from_int(3)), &[]), Err(QsgError::DependentInputs)));
        assert!(classify_pair(&q1(), &QForm::zero(4), &[]).is_err());
    }
}
