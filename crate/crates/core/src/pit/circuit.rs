use num_traits::{One, Zero};

use crate::error::{QsgError, Result};
use crate::field::Scalar;
use crate::ideals::{degree_budget, MPoly};
use crate::qform::QForm;

/// Largest variable count accepted by the expansion oracle.
pub const ORACLE_MAX_VARS: usize = 10;

/// A sum of three products of quadratic forms,
/// `Φ = Σ_{i=1..3} Π_j Q_{i,j}`. Gate constants are absorbed into the first
/// factor of each gate.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n: usize,
    gates: [Vec<QForm>; 3],
}

impl Circuit {
    pub fn new(n: usize, gates: [Vec<QForm>; 3]) -> Result<Self> {
        if gates.iter().any(Vec::is_empty) {
            return Err(QsgError::Precondition("every gate needs at least one factor".into()));
        }
        for q in gates.iter().flatten() {
            if q.n() != n {
                return Err(QsgError::DimensionMismatch { expected: n, got: q.n() });
            }
        }
        Ok(Circuit { n, gates })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Vec<QForm>; 3] {
        &self.gates
    }

    /// Degree `2 · max gate length`.
    pub fn degree(&self) -> usize {
        2 * self.gates.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Exact value of the circuit at a point.
pub fn evaluate(c: &Circuit, point: &[Scalar]) -> Result<Scalar> {
    if point.len() != c.n {
        return Err(QsgError::DimensionMismatch { expected: c.n, got: point.len() });
    }
    let mut total = Scalar::zero();
    for g in &c.gates {
        let mut prod = Scalar::one();
        for q in g {
            prod *= &q.eval(point);
            if prod.is_zero() {
                break;
            }
        }
        total += &prod;
    }
    Ok(total)
}

fn check_budget(c: &Circuit) -> Result<()> {
    let budget = degree_budget() as usize;
    if c.degree() > budget || c.n > ORACLE_MAX_VARS {
        return Err(QsgError::BudgetExceeded(format!(
            "expansion needs degree {} ≤ {budget} and n = {} ≤ {ORACLE_MAX_VARS}",
            c.degree(),
            c.n
        )));
    }
    Ok(())
}

fn expand_gate(g: &[QForm]) -> Result<MPoly> {
    MPoly::product(&g.iter().map(MPoly::from_qform).collect::<Vec<_>>())
}

/// Fully expanded polynomial of the circuit.
pub fn expand_oracle(c: &Circuit) -> Result<MPoly> {
    check_budget(c)?;
    let mut total = MPoly::zero(c.n);
    for g in &c.gates {
        total = total.add(&expand_gate(g)?)?;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SimplicityReport {
    /// No quadratic (up to scalar) is a factor of all three gates.
    pub simple: bool,
    /// No single gate and no pair of gates sums to zero.
    pub minimal: bool,
    pub gate_zero: [bool; 3],
    /// Pairs `(0,1)`, `(0,2)`, `(1,2)`.
    pub pair_zero: [bool; 3],
    pub total_zero: bool,
}

pub fn simplicity_minimality(c: &Circuit) -> Result<SimplicityReport> {
    check_budget(c)?;
    let shared = c.gates[0].iter().any(|q| {
        !q.is_zero() && c.gates[1..].iter().all(|g| g.iter().any(|p| !p.is_zero() && q.is_proportional(p)))
    });
    let e: Vec<MPoly> = c.gates.iter().map(|g| expand_gate(g)).collect::<Result<_>>()?;
    let gate_zero = [0, 1, 2].map(|i| e[i].is_zero());
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let mut pair_zero = [false; 3];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        pair_zero[k] = e[i].add(&e[j])?.is_zero();
    }
    let total_zero = e[0].add(&e[1])?.add(&e[2])?.is_zero();
    Ok(SimplicityReport {
        simple: !shared,
        minimal: !gate_zero.contains(&true) && !pair_zero.contains(&true),
        gate_zero,
        pair_zero,
        total_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(t: &[(usize, usize, i64)]) -> QForm {
        QForm::from_int_terms(4, t)
    }

    /// `A·A + B·(−B) + (A−B)·(−(A+B))` with `A = xy + zw`, `B = xw`.
    fn zero_circuit() -> Circuit {
        let a = q(&[(0, 1, 1), (2, 3, 1)]);
        let b = q(&[(0, 3, 1)]);
        let m1 = Scalar::from_int(-1);
        Circuit::new(
            4,
            [
                vec![a.clone(), a.clone()],
                vec![b.clone(), b.scale(&m1)],
                vec![a.sub(&b).unwrap(), a.add(&b).unwrap().scale(&m1)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn zero_family() {
        let c = zero_circuit();
        assert!(expand_oracle(&c).unwrap().is_zero());
        let pt: Vec<Scalar> = [3, -1, 2, 5].iter().map(|&v| Scalar::from_int(v)).collect();
        assert!(evaluate(&c, &pt).unwrap().is_zero());
        let r = simplicity_minimality(&c).unwrap();
        assert!(r.simple && r.minimal && r.total_zero);
    }

    #[test]
    fn small_circuits() {
        let n2 = |t: &[(usize, usize, i64)]| QForm::from_int_terms(2, t);
        let c = Circuit::new(2, [vec![n2(&[(0, 0, 1)])], vec![n2(&[(1, 1, 1)])], vec![n2(&[(0, 1, -1)])]]).unwrap();
        let one = [Scalar::one(), Scalar::one()];
        assert_eq!(evaluate(&c, &one).unwrap(), Scalar::one());
        assert!(evaluate(&c, &[Scalar::one()]).is_err());
        let xy = q(&[(0, 1, 1)]);
        let zw = q(&[(2, 3, 1)]);
        let c = Circuit::new(4, [vec![xy.clone()], vec![xy.scale(&Scalar::from_int(-1))], vec![zw.clone()]]).unwrap();
        assert_eq!(expand_oracle(&c).unwrap(), MPoly::from_qform(&zw));
        let r = simplicity_minimality(&c).unwrap();
        assert!(r.pair_zero[0] && !r.minimal);
        let shared = Circuit::new(4, [vec![xy.clone(), zw.clone()], vec![xy.clone()], vec![xy.scale(&Scalar::from_int(3))]]).unwrap();
        assert!(!simplicity_minimality(&shared).unwrap().simple);
    }

    #[test]
    fn zero_factor_kills_gate() {
        let x2 = QForm::from_int_terms(2, &[(0, 0, 1)]);
        let y2 = QForm::from_int_terms(2, &[(1, 1, 1)]);
        let c = Circuit::new(2, [vec![x2.clone(), y2.clone()], vec![x2.clone()], vec![x2]]).unwrap();
        // at (0, 1) every gate has a vanishing factor
        assert!(evaluate(&c, &[Scalar::zero(), Scalar::one()]).unwrap().is_zero());
    }
}
