//! Search for `Q(i)`-rational common zeros of small polynomial systems via
//! lexicographic Gröbner bases and back substitution.

use num_traits::Zero;

use super::groebner::{GroebnerBasis, MonomialOrder};
use super::mpoly::MPoly;
use crate::error::Result;
use crate::field::Scalar;
use crate::poly1::UPoly;

#[derive(Clone, Debug, PartialEq)]
pub enum PointSearch {
    /// A common zero with coordinates in `Q(i)`.
    Found(Vec<Scalar>),
    /// No common zero over the complex numbers.
    Inconsistent,
    /// Common zeros exist over the complex numbers, but none with
    /// coordinates in `Q(i)` was found.
    NoRationalPoint,
}

/// Values tried for a variable that the system leaves free.
const FREE_TRIALS: [i64; 7] = [0, 1, -1, 2, -2, 3, 5];

/// Returns the univariate polynomial in variable `v` when `p` involves no
/// other variable.
fn as_univariate(p: &MPoly, v: usize) -> Option<UPoly> {
    let mut deg = 0;
    for e in p.terms().keys() {
        if e.iter().enumerate().any(|(i, &k)| i != v && k > 0) {
            return None;
        }
        deg = deg.max(e[v] as usize);
    }
    let mut c = vec![Scalar::zero(); deg + 1];
    for (e, x) in p.terms() {
        c[e[v] as usize] = x.clone();
    }
    Some(UPoly::new(c))
}

/// Finds a common zero of `polys` (all in the same `n` variables).
pub fn rational_point(polys: &[MPoly], n: usize) -> Result<PointSearch> {
    let polys: Vec<MPoly> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut point = vec![Scalar::zero(); n];
    solve_rec(&polys, n, n, &mut point)
}

/// Solves for variables `0..active`; variables `active..n` are already
/// substituted into `polys` and recorded in `point`.
fn solve_rec(polys: &[MPoly], n: usize, active: usize, point: &mut Vec<Scalar>) -> Result<PointSearch> {
    if polys.iter().any(MPoly::is_constant) {
        return Ok(PointSearch::Inconsistent);
    }
    if polys.is_empty() {
        // every remaining variable is free; zero is a solution
        for x in point.iter_mut().take(active) {
            *x = Scalar::zero();
        }
        return Ok(PointSearch::Found(point.clone()));
    }
    if active == 0 {
        // nonzero constants were handled above
        return Ok(PointSearch::Found(point.clone()));
    }
    let gb = GroebnerBasis::new(polys, MonomialOrder::Lex)?;
    if gb.is_unit() {
        return Ok(PointSearch::Inconsistent);
    }
    let v = active - 1;
    let gens = gb.gens();
    let uni = gens.iter().filter_map(|g| as_univariate(g, v)).find(|u| !u.is_zero());
    let candidates: Vec<Scalar> = match uni {
        Some(u) => u.squarefree().rational_roots(),
        // the last variable is not determined; try a few values
        None => FREE_TRIALS.iter().map(|&k| Scalar::from_int(k)).collect(),
    };
    for r in candidates {
        let sub: Vec<MPoly> = gens
            .iter()
            .map(|g| g.substitute_value(v, &r))
            .filter(|g| !g.is_zero())
            .collect();
        point[v] = r;
        if let PointSearch::Found(p) = solve_rec(&sub, n, v, point)? {
            return Ok(PointSearch::Found(p));
        }
    }
    // the ideal is proper, so complex zeros exist
    Ok(PointSearch::NoRationalPoint)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }
    fn c(n: usize, k: i64) -> MPoly {
        MPoly::constant(n, Scalar::from_int(k))
    }

    #[test]
    fn finds_rational_intersection() {
        // x^2 + y^2 = 5, x - y = 1  -> (2, 1) or (-1, -2)
        let (x, y) = (v(2, 0), v(2, 1));
        let f = x.pow(2).add(&y.pow(2)).unwrap().sub(&c(2, 5)).unwrap();
        let g = x.sub(&y).unwrap().sub(&c(2, 1)).unwrap();
        match rational_point(&[f.clone(), g.clone()], 2).unwrap() {
            PointSearch::Found(p) => {
                assert!(f.eval(&p).unwrap().is_zero());
                assert!(g.eval(&p).unwrap().is_zero());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inconsistent_and_irrational() {
        let x = v(1, 0);
        assert_eq!(
            rational_point(&[x.clone(), x.sub(&c(1, 1)).unwrap()], 1).unwrap(),
            PointSearch::Inconsistent
        );
        assert_eq!(
            rational_point(&[x.pow(2).sub(&c(1, 2)).unwrap()], 1).unwrap(),
            PointSearch::NoRationalPoint
        );
        // x^2 + 1 has the Gaussian roots ±i
        assert!(matches!(
            rational_point(&[x.pow(2).add(&c(1, 1)).unwrap()], 1).unwrap(),
            PointSearch::Found(_)
        ));
    }

    #[test]
    fn positive_dimensional() {
        // x*y = 0 has many rational points
        let f = v(2, 0).mul(&v(2, 1)).unwrap();
        assert!(matches!(rational_point(&[f], 2).unwrap(), PointSearch::Found(_)));
    }
}
