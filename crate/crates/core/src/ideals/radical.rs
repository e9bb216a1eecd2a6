use super::groebner::{GroebnerBasis, MonomialOrder};
use super::mpoly::MPoly;
use crate::error::{QsgError, Result};
use crate::qform::{LinForm, QForm};

/// Default cap on the total degree of an expanded product.
pub const DEFAULT_DEGREE_BUDGET: u32 = 24;

/// The degree budget, overridable through `QSG_BUDGET_DEGREE`.
pub fn degree_budget() -> u32 {
    std::env::var("QSG_BUDGET_DEGREE")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_DEGREE_BUDGET)
}

pub fn ideal_member(f: &MPoly, gb: &GroebnerBasis) -> Result<bool> {
    gb.ideal_member(f)
}

/// Is some power of `f` in the ideal generated by `gens`? Decided by
/// testing whether `1` lies in `<gens, 1 - t f>` for a fresh variable `t`.
pub fn radical_member(f: &MPoly, gens: &[MPoly]) -> Result<bool> {
    let n = f.n();
    if let Some(g) = gens.iter().find(|g| g.n() != n) {
        return Err(QsgError::DimensionMismatch { expected: n, got: g.n() });
    }
    if f.is_zero() {
        return Ok(true);
    }
    let mut ext: Vec<MPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.extend_vars(1)).collect();
    let t = MPoly::var(n + 1, n);
    let tf = t.mul(&f.extend_vars(1))?;
    ext.push(MPoly::one(n + 1).sub(&tf)?);
    Ok(GroebnerBasis::new(&ext, MonomialOrder::Grevlex)?.is_unit())
}

/// A factor reduced to its radical: squares of linear forms become the
/// linear form, anything else stays as is.
fn radical_part(q: &QForm) -> MPoly {
    if q.gram_rank() == 1 {
        let ms = q.minimal_space();
        MPoly::from_linform(&LinForm::new(ms.basis()[0].clone()))
    } else {
        MPoly::from_qform(q)
    }
}

fn proportional(a: &MPoly, b: &MPoly) -> bool {
    let (Some((ea, ca)), Some((eb, cb))) = (a.terms().iter().next_back(), b.terms().iter().next_back()) else {
        return false;
    };
    if ea != eb || a.len() != b.len() {
        return false;
    }
    let r = cb / ca;
    a.scale(&r) == *b
}

/// Is `Π factors` in the radical of `<A, B>`?
///
/// Squares are replaced by their linear form and proportional duplicates
/// dropped (neither changes the radical question). A factor that already
/// lies in `<A, B>` settles the question immediately; otherwise the
/// product is expanded, subject to the degree budget.
pub fn product_radical_member(factors: &[QForm], a: &QForm, b: &QForm) -> Result<bool> {
    product_radical_member_with_budget(factors, a, b, degree_budget())
}

pub fn product_radical_member_with_budget(
    factors: &[QForm],
    a: &QForm,
    b: &QForm,
    budget: u32,
) -> Result<bool> {
    if factors.is_empty() {
        return Err(QsgError::ZeroInput("empty factor list"));
    }
    let n = a.n();
    for q in factors.iter().chain([b]) {
        if q.n() != n {
            return Err(QsgError::DimensionMismatch { expected: n, got: q.n() });
        }
    }
    if factors.iter().any(QForm::is_zero) {
        return Ok(true);
    }
    let mut parts: Vec<MPoly> = Vec::new();
    for q in factors {
        let p = radical_part(q);
        if !parts.iter().any(|x| proportional(x, &p)) {
            parts.push(p);
        }
    }
    // V(ℓ², B) = V(ℓ, B), so generators may be replaced by their radical parts
    let gens: Vec<MPoly> = [a, b].iter().filter(|q| !q.is_zero()).map(|q| radical_part(q)).collect();
    if gens.is_empty() {
        // the radical of the zero ideal is zero and the product is nonzero
        return Ok(false);
    }
    let gb = GroebnerBasis::new(&gens, MonomialOrder::Grevlex)?;
    for p in &parts {
        if gb.ideal_member(p)? {
            return Ok(true);
        }
    }
    if gens.iter().all(|g| g.total_degree() == Some(1)) {
        // an ideal of linear forms is prime: the product lies in it only if
        // a factor does
        return Ok(false);
    }
    let degree: u32 = parts.iter().map(|p| p.total_degree().unwrap_or(0)).sum();
    if degree > budget {
        return Err(QsgError::BudgetExceeded(format!(
            "product of total degree {degree} exceeds the degree budget {budget}"
        )));
    }
    let f = MPoly::product(&parts)?;
    radical_member(&f, &gens)
}

/// A smallest subset (at most `max_size` members, searched by increasing
/// size in lexicographic order) whose product already lies in the radical.
pub fn witness_subset(
    factors: &[QForm],
    a: &QForm,
    b: &QForm,
    max_size: usize,
) -> Result<Option<Vec<usize>>> {
    if !product_radical_member(factors, a, b)? {
        return Err(QsgError::Precondition(
            "the full product is not in the radical".into(),
        ));
    }
    let m = factors.len();
    for size in 1..=max_size.min(m) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let sub: Vec<QForm> = idx.iter().map(|&i| factors[i].clone()).collect();
            if product_radical_member(&sub, a, b)? {
                return Ok(Some(idx));
            }
            // next combination
            let mut k = size;
            while k > 0 && idx[k - 1] == m - size + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for j in k..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(None)
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
    fn motivating_quadruple() {
        let xw = QForm::from_int_terms(4, &[(0, 3, 1)]);
        let yz = QForm::from_int_terms(4, &[(1, 2, 1)]);
        let gens = vec![MPoly::from_qform(&q1()), MPoly::from_qform(&q2())];
        let prod = MPoly::from_qform(&xw).mul(&MPoly::from_qform(&yz)).unwrap();
        assert!(radical_member(&prod, &gens).unwrap());
        assert!(!radical_member(&MPoly::from_qform(&xw), &gens).unwrap());
        assert!(product_radical_member(&[xw.clone(), yz.clone()], &q1(), &q2()).unwrap());
        assert_eq!(witness_subset(&[xw, yz], &q1(), &q2(), 4).unwrap(), Some(vec![0, 1]));
    }

    #[test]
    fn radical_of_a_square() {
        let x2 = MPoly::var(2, 0).pow(2);
        let xy = MPoly::var(2, 0).mul(&MPoly::var(2, 1)).unwrap();
        assert!(radical_member(&xy, &[x2.clone()]).unwrap());
        assert!(!radical_member(&MPoly::var(2, 1), &[x2]).unwrap());
    }

    #[test]
    fn squares_of_linear_forms() {
        let a = QForm::from_int_terms(3, &[(0, 0, 1)]);
        let b = QForm::from_int_terms(3, &[(1, 1, 1)]);
        // (x + y)^2
        let l3 = QForm::from_int_terms(3, &[(0, 0, 1), (0, 1, 2), (1, 1, 1)]);
        assert!(product_radical_member(&[l3.clone()], &a, &b).unwrap());
        let z2 = QForm::from_int_terms(3, &[(2, 2, 1)]);
        assert!(!product_radical_member(&[z2.clone()], &a, &b).unwrap());
        assert_eq!(witness_subset(&[z2, l3], &a, &b, 4).unwrap(), Some(vec![1]));
    }

    #[test]
    fn budget_is_enforced() {
        // an irreducible generator keeps the expansion path in play
        let a = QForm::from_int_terms(3, &[(0, 0, 1), (1, 2, 1)]);
        let b = QForm::from_int_terms(3, &[(1, 1, 1)]);
        let z2 = QForm::from_int_terms(3, &[(2, 2, 1), (0, 1, 1)]);
        let z3 = QForm::from_int_terms(3, &[(2, 2, 1), (0, 2, 1)]);
        let r = product_radical_member_with_budget(&[z2, z3], &a, &b, 3);
        assert!(matches!(r, Err(QsgError::BudgetExceeded(_))));
    }
}
