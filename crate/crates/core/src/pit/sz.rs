use num_traits::Zero;
use rand::Rng;

use super::circuit::{evaluate, Circuit};
use crate::error::Result;
use crate::field::Scalar;
use crate::rng::seeded;

#[derive(Clone, Debug, PartialEq)]
pub struct SzVerdict {
    /// First random point with a nonzero value, if any.
    pub witness: Option<(Vec<Scalar>, Scalar)>,
    pub trials: usize,
}

/// Randomized zero test: evaluates at up to `trials` points drawn uniformly
/// from the grid `{0, …, 2d}^n`. A nonzero circuit survives one trial with
/// probability at most `d / (2d + 1)`.
pub fn sz_test(c: &Circuit, trials: usize, seed: u64) -> Result<SzVerdict> {
    let mut rng = seeded(seed);
    let hi = 2 * c.degree().max(1) as i64;
    for trial in 1..=trials {
        let p: Vec<Scalar> = (0..c.n()).map(|_| Scalar::from_int(rng.gen_range(0..=hi))).collect();
        let v = evaluate(c, &p)?;
        if !v.is_zero() {
            return Ok(SzVerdict { witness: Some((p, v)), trials: trial });
        }
    }
    Ok(SzVerdict { witness: None, trials })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qform::QForm;

    #[test]
    fn finds_nonzero_and_never_fakes() {
        let x2 = QForm::from_int_terms(2, &[(0, 0, 1)]);
        let y2 = QForm::from_int_terms(2, &[(1, 1, 1)]);
        let c = Circuit::new(2, [vec![x2.clone()], vec![y2.clone()], vec![QForm::zero(2)]]).unwrap();
        assert!(sz_test(&c, 20, 1).unwrap().witness.is_some());
        let z = Circuit::new(2, [vec![x2.clone()], vec![x2.scale(&Scalar::from_int(-1))], vec![QForm::zero(2)]]).unwrap();
        assert_eq!(sz_test(&z, 20, 1).unwrap().witness, None);
    }
}
