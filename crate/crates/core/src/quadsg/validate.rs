use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::triple::{QuadTriple, Violation, ViolationKind};
use crate::error::{QsgError, Result};
use crate::ideals::{product_radical_member, witness_subset};
use crate::pencil::{classify_pair, CaseSet};
use crate::sg::PointRef;

pub type CrossPair = (PointRef, PointRef);

/// Default fraction used for the partition statistics.
pub fn default_delta() -> BigRational {
    BigRational::new(1.into(), 100.into())
}

/// Partition membership of one member of a set.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MemberStats {
    pub index: usize,
    /// Squares and other members of Gram rank ≤ 2 take no part in the
    /// partition.
    pub exempt: bool,
    /// In `P^(i)`: case (i) but not case (ii) with at least a `δ` fraction
    /// of the irreducible members of the larger other set.
    pub p_i: bool,
    /// In `P^(iii)`: case (iii) with at least a `δ` fraction of the
    /// irreducible members of one of the other sets.
    pub p_iii: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartitionStats {
    pub delta: BigRational,
    pub sets: [Vec<MemberStats>; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub independence_ok: bool,
    pub shape_ok: bool,
    pub vanishing_ok: bool,
    /// Sorted.
    pub violations: Vec<Violation>,
    /// Smallest certifying subset of the third set per vanishing pair;
    /// `None` when only subsets larger than the search limit certify.
    pub witnesses: BTreeMap<CrossPair, Option<Vec<usize>>>,
    pub pair_cases: BTreeMap<CrossPair, CaseSet>,
    pub partition_stats: PartitionStats,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.independence_ok && self.shape_ok && self.vanishing_ok
    }

    /// Pairs whose witness needs more members than the search limit.
    pub fn large_witness_pairs(&self) -> Vec<CrossPair> {
        self.witnesses
            .iter()
            .filter(|(_, w)| w.is_none())
            .map(|(p, _)| *p)
            .collect()
    }
}

fn third(i: usize, j: usize) -> usize {
    3 - i - j
}

/// Checks the hypotheses of the main theorem on a triple and classifies
/// every cross pair.
pub fn validate_triple(t: &QuadTriple, witness_max: usize) -> Result<ValidationReport> {
    validate_with_delta(t, witness_max, &default_delta())
}

pub fn validate_with_delta(t: &QuadTriple, witness_max: usize, delta: &BigRational) -> Result<ValidationReport> {
    let mut violations = Vec::new();
    let members: Vec<_> = t.members().collect();
    for (r, q) in &members {
        if q.is_zero() {
            violations.push(Violation { kind: ViolationKind::Zero, first: *r, second: None });
        } else if q.gram_rank() == 2 {
            violations.push(Violation { kind: ViolationKind::Shape, first: *r, second: None });
        }
    }
    for (x, (r, q)) in members.iter().enumerate() {
        for (s, p) in &members[x + 1..] {
            if !q.is_zero() && !p.is_zero() && q.is_proportional(p) {
                violations.push(Violation { kind: ViolationKind::Dependent, first: *r, second: Some(*s) });
            }
        }
    }
    let mut witnesses = BTreeMap::new();
    let mut pair_cases = BTreeMap::new();
    for (ra, rb) in t.cross_pairs() {
        let (a, b) = (t.get(ra), t.get(rb));
        if a.is_zero() || b.is_zero() || a.is_proportional(b) {
            continue;
        }
        let k = third(ra.0, rb.0);
        let third_set = &t.sets()[k];
        let pair = Some(rb);
        let vanishes = if third_set.is_empty() {
            Ok(false)
        } else {
            product_radical_member(third_set, a, b)
        };
        match vanishes {
            Ok(true) => {
                let w = match witness_subset(third_set, a, b, witness_max) {
                    Ok(w) => w,
                    Err(QsgError::BudgetExceeded(_)) => None,
                    Err(e) => return Err(e),
                };
                witnesses.insert((ra, rb), w);
            }
            Ok(false) => violations.push(Violation { kind: ViolationKind::Vanishing, first: ra, second: pair }),
            Err(QsgError::BudgetExceeded(_)) => {
                violations.push(Violation { kind: ViolationKind::Unverified, first: ra, second: pair })
            }
            Err(e) => return Err(e),
        }
        pair_cases.insert((ra, rb), classify_pair(a, b, third_set)?);
    }
    violations.sort();
    let has = |k: ViolationKind| violations.iter().any(|v| v.kind == k);
    let partition_stats = partition(t, &pair_cases, delta);
    Ok(ValidationReport {
        independence_ok: !has(ViolationKind::Dependent),
        shape_ok: !has(ViolationKind::Zero) && !has(ViolationKind::Shape),
        vanishing_ok: !has(ViolationKind::Vanishing) && !has(ViolationKind::Unverified),
        violations,
        witnesses,
        pair_cases,
        partition_stats,
    })
}

fn lookup<'a>(cases: &'a BTreeMap<CrossPair, CaseSet>, x: PointRef, y: PointRef) -> Option<&'a CaseSet> {
    if x.0 < y.0 {
        cases.get(&(x, y))
    } else {
        cases.get(&(y, x))
    }
}

fn partition(t: &QuadTriple, cases: &BTreeMap<CrossPair, CaseSet>, delta: &BigRational) -> PartitionStats {
    let irreducible: Vec<Vec<usize>> = t
        .sets()
        .iter()
        .map(|s| (0..s.len()).filter(|&a| s[a].gram_rank() >= 3).collect())
        .collect();
    let reaches = |count: usize, total: usize| {
        total > 0 && BigRational::new(count.into(), total.into()) >= *delta
    };
    let sets = std::array::from_fn(|i| {
        let (x, y) = ((i + 1) % 3, (i + 2) % 3);
        let (lo, hi) = (x.min(y), x.max(y));
        let larger = if irreducible[hi].len() > irreducible[lo].len() { hi } else { lo };
        (0..t.sets()[i].len())
            .map(|a| {
                if !irreducible[i].contains(&a) {
                    return MemberStats { index: a, exempt: true, p_i: false, p_iii: false };
                }
                let count = |j: usize, pred: &dyn Fn(&CaseSet) -> bool| {
                    irreducible[j]
                        .iter()
                        .filter(|&&b| lookup(cases, (i, a), (j, b)).is_some_and(pred))
                        .count()
                };
                let span_only = |c: &CaseSet| c.case_i.is_some() && c.case_ii.is_none();
                let codim2 = |c: &CaseSet| c.case_iii.is_some();
                let p_i = reaches(count(larger, &span_only), irreducible[larger].len());
                let p_iii = [lo, hi]
                    .iter()
                    .any(|&j| reaches(count(j, &codim2), irreducible[j].len()));
                MemberStats { index: a, exempt: false, p_i, p_iii }
            })
            .collect()
    });
    PartitionStats { delta: delta.clone(), sets }
}

/// Partition statistics alone (classifies every cross pair).
pub fn pair_case_statistics(t: &QuadTriple, delta: &BigRational) -> Result<PartitionStats> {
    if *delta <= BigRational::zero() {
        return Err(QsgError::Precondition("delta must be positive".into()));
    }
    let mut cases = BTreeMap::new();
    for (ra, rb) in t.cross_pairs() {
        let (a, b) = (t.get(ra), t.get(rb));
        if a.is_zero() || b.is_zero() || a.is_proportional(b) {
            continue;
        }
        cases.insert((ra, rb), classify_pair(a, b, &t.sets()[third(ra.0, rb.0)])?);
    }
    Ok(partition(t, &cases, delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qform::QForm;

    fn q(n: usize, t: &[(usize, usize, i64)]) -> QForm {
        QForm::from_int_terms(n, t)
    }

    #[test]
    fn pencil_example() {
        let a = q(3, &[(0, 0, 1), (1, 2, 1)]);
        let b = q(3, &[(1, 1, 1), (0, 2, 1)]);
        let t = QuadTriple::new(3, [vec![a.clone()], vec![b.clone()], vec![a.add(&b).unwrap()]]).unwrap();
        let r = validate_triple(&t, 4).unwrap();
        assert!(r.all_ok(), "{:?}", r.violations);
        assert!(r.pair_cases.values().all(|c| c.case_i.is_some()));
        // in three variables the pencil contains a reducible member (B - A),
        // so case (ii) holds as well and P^(i) stays empty
        assert!(r.partition_stats.sets.iter().flatten().all(|m| !m.p_i));
    }

    #[test]
    fn squares_and_corruption() {
        let x2 = q(3, &[(0, 0, 1)]);
        let y2 = q(3, &[(1, 1, 1)]);
        let xy2 = q(3, &[(0, 0, 1), (0, 1, 2), (1, 1, 1)]);
        let t = QuadTriple::new(3, [vec![x2.clone()], vec![y2.clone()], vec![xy2]]).unwrap();
        let r = validate_triple(&t, 4).unwrap();
        assert!(r.all_ok());
        assert!(r.partition_stats.sets.iter().flatten().all(|m| m.exempt && !m.p_i));
        let xz2 = q(3, &[(0, 0, 1), (0, 2, 2), (2, 2, 1)]);
        let bad = QuadTriple::new(3, [vec![x2], vec![y2], vec![xz2]]).unwrap();
        let r = validate_triple(&bad, 4).unwrap();
        assert!(!r.vanishing_ok && r.independence_ok && r.shape_ok);
        assert_eq!(r.violations[0], Violation { kind: ViolationKind::Vanishing, first: (0, 0), second: Some((1, 0)) });
    }

    #[test]
    fn shape_and_dependence() {
        let a = q(4, &[(0, 1, 1), (2, 3, 1)]);
        let xy = q(4, &[(0, 1, 1)]);
        let t = QuadTriple::new(4, [vec![a.clone()], vec![a.scale(&2.into())], vec![xy]]).unwrap();
        let r = validate_triple(&t, 4).unwrap();
        assert!(!r.shape_ok && !r.independence_ok);
        assert!(r.violations.contains(&Violation { kind: ViolationKind::Shape, first: (2, 0), second: None }));
    }

    #[test]
    fn codim2_pairs_flag_p_iii() {
        // A, B, C all vanish on x = y = 0 and no pair spans the third
        let a = q(4, &[(0, 2, 1), (1, 3, 1)]);
        let b = q(4, &[(0, 3, 1), (1, 2, 1), (0, 0, 1)]);
        let c = q(4, &[(0, 2, 1), (1, 3, -1), (1, 1, 1)]);
        let t = QuadTriple::new(4, [vec![a], vec![b], vec![c]]).unwrap();
        let st = pair_case_statistics(&t, &default_delta()).unwrap();
        assert!(st.sets.iter().flatten().all(|m| m.p_iii));
    }
}
