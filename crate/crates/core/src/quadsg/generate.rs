use rand::seq::SliceRandom;
use rand::Rng;

use super::triple::{Family, Meta, Mutation, QuadTriple, Violation, ViolationKind};
use crate::error::{QsgError, Result};
use crate::field::Scalar;
use crate::qform::{LinForm, LinSpace, QForm};
use crate::rng::{random_qform, seeded, small_vec};
use crate::sg::gen::{fermat_ek, planar_ek};

/// Attempts allowed when resampling degenerate draws.
pub const RESAMPLE_BUDGET: usize = 256;

/// Parameters of the generators. Ranges: `n ≤ 8`, set sizes `1..=12`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GenParams {
    pub n: usize,
    pub sizes: [usize; 3],
    /// squares_ek: `None` for a planar line configuration with the given
    /// sizes, or `Some(order)` (1, 2 or 4) for the Fermat configuration,
    /// whose sets all have `order` members.
    #[serde(default)]
    pub fermat_order: Option<usize>,
    /// corrupted: the mutation to apply.
    #[serde(default = "default_mutation")]
    pub mutation: Mutation,
}

fn default_mutation() -> Mutation {
    Mutation::OutlierSquare
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n: 4,
            sizes: [2, 2, 2],
            fermat_order: None,
            mutation: default_mutation(),
        }
    }
}

fn check_params(p: &GenParams) -> Result<()> {
    if p.n > 8 || p.sizes.iter().any(|&s| s == 0 || s > 12) {
        return Err(QsgError::Precondition("parameters out of range (n ≤ 8, set sizes 1..=12)".into()));
    }
    Ok(())
}

/// Generates a triple of the given family, deterministically in `seed`.
pub fn generate(family: Family, params: &GenParams, seed: u64) -> Result<QuadTriple> {
    check_params(params)?;
    match family {
        Family::Pencil => pencil(params, seed),
        Family::SquaresEk => squares_ek(params, seed),
        Family::Corrupted => corrupted(params, seed),
    }
}

fn pencil(p: &GenParams, seed: u64) -> Result<QuadTriple> {
    let n = p.n;
    if n < 3 {
        return Err(QsgError::Precondition("the pencil family needs n ≥ 3".into()));
    }
    let mut rng = seeded(seed);
    let total: usize = p.sizes.iter().sum();
    let mut ratios: Vec<(i64, i64)> = Vec::new();
    for a in -6i64..=6 {
        for b in -6i64..=6 {
            // one representative per projective point: gcd 1, first nonzero positive
            if num_integer::Integer::gcd(&a, &b) == 1 && (a > 0 || (a == 0 && b > 0)) {
                ratios.push((a, b));
            }
        }
    }
    for _ in 0..RESAMPLE_BUDGET {
        let a = random_qform(&mut rng, n, 3);
        let b = random_qform(&mut rng, n, 3);
        if a.gram_rank() < 3 || b.gram_rank() < 3 || a.is_proportional(&b) {
            continue;
        }
        ratios.shuffle(&mut rng);
        let mut forms = Vec::with_capacity(total);
        for &(al, be) in &ratios {
            let c = a.combine(&Scalar::from_int(al), &b, &Scalar::from_int(be))?;
            if c.gram_rank() >= 3 {
                forms.push(c);
                if forms.len() == total {
                    break;
                }
            }
        }
        if forms.len() < total {
            continue;
        }
        let mut it = forms.into_iter();
        let sets = p.sizes.map(|s| it.by_ref().take(s).collect());
        return Ok(QuadTriple::new(n, sets)?.with_meta(Meta {
            family: Family::Pencil,
            seed,
            predicted_span_dim: Some(2),
            mutation: None,
            expected_violations: Vec::new(),
        }));
    }
    Err(QsgError::BudgetExceeded("resampling budget exhausted".into()))
}

/// Squares of an EK line configuration, plus the configuration's span.
fn squares_parts(p: &GenParams, seed: u64) -> Result<([Vec<QForm>; 3], LinSpace)> {
    let mut rng = seeded(seed);
    let cfg = match p.fermat_order {
        None => planar_ek(&mut rng, p.sizes, p.n)?,
        Some(o) => fermat_ek(&mut rng, o, p.n)?,
    };
    let span = LinSpace::from_rows(p.n, cfg.sets().iter().flatten().cloned().collect())?;
    let sets: Vec<Vec<QForm>> = cfg
        .sets()
        .iter()
        .map(|s| s.iter().map(|v| QForm::square(&LinForm::new(v.clone()))).collect())
        .collect();
    let sets: [Vec<QForm>; 3] = sets.try_into().expect("three sets");
    Ok((sets, span))
}

fn squares_ek(p: &GenParams, seed: u64) -> Result<QuadTriple> {
    let (sets, span) = squares_parts(p, seed)?;
    let d = span.dim();
    Ok(QuadTriple::new(p.n, sets)?.with_meta(Meta {
        family: Family::SquaresEk,
        seed,
        predicted_span_dim: Some(d * (d + 1) / 2),
        mutation: None,
        expected_violations: Vec::new(),
    }))
}

fn corrupted(p: &GenParams, seed: u64) -> Result<QuadTriple> {
    let mut expected = Vec::new();
    let sets = match p.mutation {
        Mutation::OutlierSquare => {
            let (mut sets, span) = squares_parts(p, seed)?;
            if span.dim() >= p.n {
                return Err(QsgError::Precondition("outlier square needs n above the line span".into()));
            }
            let mut rng = seeded(crate::rng::split(seed, 1));
            let out = (0..RESAMPLE_BUDGET)
                .map(|_| small_vec(&mut rng, p.n, 3))
                .find(|v| !span.contains_vec(v))
                .ok_or_else(|| QsgError::BudgetExceeded("resampling budget exhausted".into()))?;
            sets[2] = vec![QForm::square(&LinForm::new(out))];
            // the outlier lies outside the span and all lines are pairwise
            // independent, so no cross pair vanishes on the third set
            for i in 0..3 {
                for j in i + 1..3 {
                    for a in 0..sets[i].len() {
                        for b in 0..sets[j].len() {
                            expected.push(Violation {
                                kind: ViolationKind::Vanishing,
                                first: (i, a),
                                second: Some((j, b)),
                            });
                        }
                    }
                }
            }
            sets
        }
        Mutation::DuplicateMember => {
            let base = pencil(p, seed)?;
            let mut sets = base.sets().clone();
            let dup = sets[0][0].scale(&Scalar::from_int(2));
            sets[1].push(dup);
            expected.push(Violation {
                kind: ViolationKind::Dependent,
                first: (0, 0),
                second: Some((1, sets[1].len() - 1)),
            });
            sets
        }
    };
    expected.sort();
    Ok(QuadTriple::new(p.n, sets)?.with_meta(Meta {
        family: Family::Corrupted,
        seed,
        predicted_span_dim: None,
        mutation: Some(p.mutation),
        expected_violations: expected,
    }))
}

/// Draws generator parameters for batch runs: `n` in `3..=max_n`, set
/// sizes in `1..=max_size`.
pub fn random_params<R: Rng>(rng: &mut R, family: Family, max_n: usize, max_size: usize) -> GenParams {
    let n = rng.gen_range(3..=max_n.max(3));
    let sizes = [0; 3].map(|_| rng.gen_range(1..=max_size.max(1)));
    let fermat_order = match family {
        Family::SquaresEk if rng.gen_bool(0.5) => Some(*[1usize, 2, 4].choose(rng).expect("nonempty")),
        _ => None,
    };
    GenParams { n, sizes, fermat_order, mutation: default_mutation() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadsg::{span_dim, validate_triple};

    #[test]
    fn pencil_is_valid() {
        let p = GenParams { n: 4, sizes: [2, 1, 2], ..Default::default() };
        let t = generate(Family::Pencil, &p, 5).unwrap();
        let r = validate_triple(&t, 4).unwrap();
        assert!(r.all_ok(), "{:?}", r.violations);
        assert_eq!(span_dim(&t), 2);
        assert_eq!(t, generate(Family::Pencil, &p, 5).unwrap());
    }

    #[test]
    fn squares_are_valid() {
        for fermat_order in [None, Some(2), Some(4)] {
            let p = GenParams { n: 4, sizes: [2, 2, 1], fermat_order, ..Default::default() };
            let t = generate(Family::SquaresEk, &p, 11).unwrap();
            let r = validate_triple(&t, 4).unwrap();
            assert!(r.all_ok(), "{:?}", r.violations);
            assert_eq!(Some(span_dim(&t)), t.meta.as_ref().unwrap().predicted_span_dim);
        }
    }

    #[test]
    fn corruptions_report_exactly_the_plant() {
        for mutation in [Mutation::OutlierSquare, Mutation::DuplicateMember] {
            let p = GenParams { n: 4, sizes: [2, 1, 1], mutation, ..Default::default() };
            let t = generate(Family::Corrupted, &p, 3).unwrap();
            let r = validate_triple(&t, 4).unwrap();
            assert_eq!(r.violations, t.meta.as_ref().unwrap().expected_violations);
        }
    }
}
