use num_traits::{One, Zero};

use super::form::QForm;
use crate::error::{QsgError, Result};
use crate::field::{ExtScalar, Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    Square,
    Product,
    Irreducible,
}

/// A factorization `Q = scale * f_1 * f_2` (or `scale * f_1^2` for a
/// square). Factor coefficients live in `Q(i)(sqrt(disc))`; they are plain
/// scalars whenever the discriminant is a square.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorWitness {
    pub kind: FactorKind,
    pub scale: Scalar,
    pub factors: Vec<Vec<ExtScalar>>,
    pub disc: Scalar,
}

impl FactorWitness {
    /// True when the factors need the square root of `disc`.
    pub fn needs_extension(&self) -> bool {
        self.factors
            .iter()
            .flatten()
            .any(|c| c.as_scalar().is_none())
    }

    /// The factors as plain coefficient vectors, when no extension is needed.
    pub fn rational_factors(&self) -> Option<Vec<Vec<Scalar>>> {
        self.factors
            .iter()
            .map(|f| f.iter().map(|c| c.as_scalar().cloned()).collect())
            .collect()
    }

    /// Gram matrix of the expanded product, over the extension.
    pub fn expand(&self) -> Option<Vec<Vec<ExtScalar>>> {
        let (a, b) = match (self.kind, self.factors.as_slice()) {
            (FactorKind::Square, [a]) => (a, a),
            (FactorKind::Product, [a, b]) => (a, b),
            _ => return None,
        };
        let n = a.len();
        let half = ExtScalar::from_scalar(Scalar::from_ratio(1, 2), &self.disc);
        let s = ExtScalar::from_scalar(self.scale.clone(), &self.disc);
        Some(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let sym = a[i].mul_ref(&b[j]).add_ref(&a[j].mul_ref(&b[i]));
                            sym.mul_ref(&half).mul_ref(&s)
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// Does expanding the factors reproduce `q` exactly?
    pub fn verify(&self, q: &QForm) -> bool {
        match self.kind {
            FactorKind::Irreducible => q.gram_rank() >= 3,
            _ => match self.expand() {
                Some(g) => {
                    g.len() == q.n()
                        && g.iter().zip(q.gram()).all(|(gr, qr)| {
                            gr.iter()
                                .zip(qr)
                                .all(|(x, y)| x.as_scalar().is_some_and(|s| s == y))
                        })
                }
                None => false,
            },
        }
    }
}

fn normalize(v: &[Scalar]) -> (Vec<Scalar>, Scalar) {
    let lead = v.iter().find(|c| !c.is_zero()).cloned().expect("nonzero factor");
    let inv = lead.inv().expect("nonzero");
    (v.iter().map(|c| c * &inv).collect(), lead)
}

fn lift(v: &[Scalar], disc: &Scalar) -> Vec<ExtScalar> {
    v.iter().map(|c| ExtScalar::from_scalar(c.clone(), disc)).collect()
}

/// Factors a nonzero quadratic form into linear factors when its Gram rank
/// is at most two; otherwise reports it irreducible.
pub fn factor(q: &QForm) -> Result<FactorWitness> {
    let ms = q.minimal_space();
    let zero = Scalar::zero();
    match ms.dim() {
        0 => Err(QsgError::ZeroInput("cannot factor the zero form")),
        1 => {
            // Q = c * u^2 with u the echelon basis row (pivot entry 1)
            let u = &ms.basis()[0];
            let p = ms.pivots()[0];
            let c = q.gram()[p][p].clone();
            Ok(FactorWitness {
                kind: FactorKind::Square,
                scale: c,
                factors: vec![lift(u, &zero)],
                disc: zero,
            })
        }
        2 => {
            let (u, v) = (&ms.basis()[0], &ms.basis()[1]);
            let (p, r) = (ms.pivots()[0], ms.pivots()[1]);
            let g = q.gram();
            // Q = c11 u^2 + 2 c12 u v + c22 v^2 (read off at the pivot entries)
            let (c11, c12, c22) = (&g[p][p], &g[p][r], &g[r][r]);
            let disc = &(c12 * c12) - &(c11 * c22);
            if c11.is_zero() {
                // Q = v * (2 c12 u + c22 v)
                let two = Scalar::from_int(2);
                let w: Vec<Scalar> = u
                    .iter()
                    .zip(v)
                    .map(|(a, b)| &(&(&two * c12) * a) + &(c22 * b))
                    .collect();
                let (vn, sv) = normalize(v);
                let (wn, sw) = normalize(&w);
                let mut fs = vec![vn, wn];
                fs.sort();
                return Ok(FactorWitness {
                    kind: FactorKind::Product,
                    scale: &sv * &sw,
                    factors: fs.iter().map(|f| lift(f, &disc)).collect(),
                    disc,
                });
            }
            // Q = c11 (u - r1 v)(u - r2 v), r = (-c12 ± sqrt(disc)) / c11
            let inv11 = c11.inv()?;
            let base = &(-c12) * &inv11;
            let factors = match disc.is_square() {
                Some(s) => {
                    let mut fs: Vec<Vec<Scalar>> = [&s, &(-&s)]
                        .iter()
                        .map(|sg| {
                            let root = &base + &(*sg * &inv11);
                            u.iter().zip(v).map(|(a, b)| a - &(&root * b)).collect()
                        })
                        .collect();
                    fs.sort();
                    fs.iter().map(|f| lift(f, &disc)).collect()
                }
                None => [Scalar::one(), -Scalar::one()]
                    .iter()
                    .map(|sg| {
                        let root = ExtScalar::new(base.clone(), sg * &inv11, disc.clone());
                        u.iter()
                            .zip(v)
                            .map(|(a, b)| {
                                ExtScalar::from_scalar(a.clone(), &disc).sub_ref(
                                    &root.mul_ref(&ExtScalar::from_scalar(b.clone(), &disc)),
                                )
                            })
                            .collect()
                    })
                    .collect(),
            };
            Ok(FactorWitness {
                kind: FactorKind::Product,
                scale: c11.clone(),
                factors,
                disc,
            })
        }
        _ => Ok(FactorWitness {
            kind: FactorKind::Irreducible,
            scale: Scalar::one(),
            factors: Vec::new(),
            disc: Scalar::zero(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qform::LinForm;

    fn q(n: usize, terms: &[(usize, usize, i64)]) -> QForm {
        QForm::from_monomials(n, terms.iter().map(|&(i, j, c)| ((i, j), Scalar::from_int(c))))
            .unwrap()
    }

    #[test]
    fn sum_of_squares_splits_over_gaussian_rationals() {
        let f = factor(&q(2, &[(0, 0, 1), (1, 1, 1)])).unwrap();
        assert_eq!(f.kind, FactorKind::Product);
        assert!(!f.needs_extension());
        let fs = f.rational_factors().unwrap();
        let plus = vec![Scalar::one(), Scalar::i()];
        let minus = vec![Scalar::one(), -Scalar::i()];
        assert!(fs.contains(&plus) && fs.contains(&minus));
        assert!(f.verify(&q(2, &[(0, 0, 1), (1, 1, 1)])));
    }

    #[test]
    fn irreducible_and_square() {
        assert_eq!(
            factor(&q(4, &[(0, 1, 1), (2, 3, 1)])).unwrap().kind,
            FactorKind::Irreducible
        );
        let sq = QForm::square(&LinForm::from_ints(&[1, 2]));
        let f = factor(&sq).unwrap();
        assert_eq!(f.kind, FactorKind::Square);
        assert_eq!(f.rational_factors().unwrap(), vec![vec![Scalar::one(), Scalar::from_int(2)]]);
        assert_eq!(f.scale, Scalar::one());
        assert!(f.verify(&sq));
        assert!(factor(&QForm::zero(2)).is_err());
    }

    #[test]
    fn irrational_split_needs_extension() {
        // x^2 - 2 y^2 = (x - sqrt2 y)(x + sqrt2 y)
        let f0 = q(2, &[(0, 0, 1), (1, 1, -2)]);
        let f = factor(&f0).unwrap();
        assert!(f.needs_extension());
        assert_eq!(f.disc, Scalar::from_int(2));
        assert!(f.verify(&f0));
    }

    #[test]
    fn degenerate_leading_coefficient() {
        let f0 = q(3, &[(0, 1, 1), (1, 1, 3), (1, 2, -1)]);
        let f = factor(&f0).unwrap();
        assert_eq!(f.kind, FactorKind::Product);
        assert!(f.verify(&f0));
    }
}
