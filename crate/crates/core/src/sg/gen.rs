//! Generators of colored vector configurations satisfying the EK condition.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use super::config::{ColoredConfig, Mode, PointConfig};
use crate::error::{QsgError, Result};
use crate::field::Scalar;
use crate::linalg;
use crate::rng::small_vec;

/// Maps `d`-dimensional vectors into `Q^n` by a random injective integer
/// matrix.
pub fn embed_random<R: Rng>(rng: &mut R, vecs: &[Vec<Scalar>], d: usize, n: usize) -> Result<Vec<Vec<Scalar>>> {
    if n < d {
        return Err(QsgError::Precondition(format!("cannot embed dimension {d} into {n}")));
    }
    let m = loop {
        let m: Vec<Vec<Scalar>> = (0..n).map(|_| small_vec(rng, d, 3)).collect();
        if linalg::rank(&m, d) == d {
            break m;
        }
    };
    Ok(vecs.iter().map(|v| linalg::mat_vec(&m, v)).collect())
}

/// Three sets of pairwise distinct directions in a random plane of `Q^n`.
/// Any two vectors from different sets span the plane, which holds every
/// member of the third set, so the EK condition holds.
pub fn planar_ek<R: Rng>(rng: &mut R, sizes: [usize; 3], n: usize) -> Result<ColoredConfig> {
    if sizes.contains(&0) {
        return Err(QsgError::Precondition("set sizes must be positive".into()));
    }
    let total: usize = sizes.iter().sum();
    let mut slopes: Vec<i64> = (-(total as i64) * 2..=(total as i64) * 2).collect();
    slopes.shuffle(rng);
    let mut dirs: Vec<Vec<Scalar>> = slopes[..total]
        .iter()
        .map(|&t| vec![Scalar::one(), Scalar::from_int(t)])
        .collect();
    if rng.gen_bool(0.5) {
        dirs[0] = vec![Scalar::zero(), Scalar::one()];
    }
    let dirs = embed_random(rng, &dirs, 2, n)?;
    let mut it = dirs.into_iter();
    let sets = sizes.iter().map(|&s| it.by_ref().take(s).collect()).collect();
    ColoredConfig::new(n, sets, Mode::Vectors)
}

/// The Fermat configuration over the group of `order`-th roots of unity
/// (`order` ∈ {1, 2, 4}, all inside `Q(i)`): the sets are
/// `(1, -a, 0)`, `(0, 1, -b)`, `(-c, 0, 1)`, and three such vectors are
/// dependent exactly when `abc = 1`. Embedded randomly into `Q^n`; the
/// span has dimension 2 for `order = 1` and 3 otherwise.
pub fn fermat_ek<R: Rng>(rng: &mut R, order: usize, n: usize) -> Result<ColoredConfig> {
    let group: Vec<Scalar> = match order {
        1 => vec![Scalar::one()],
        2 => vec![Scalar::one(), Scalar::from_int(-1)],
        4 => vec![Scalar::one(), Scalar::i(), Scalar::from_int(-1), -Scalar::i()],
        _ => return Err(QsgError::Precondition("order must be 1, 2 or 4".into())),
    };
    let (o, z) = (Scalar::one(), Scalar::zero());
    let mut vecs = Vec::new();
    for a in &group {
        vecs.push(vec![o.clone(), -a, z.clone()]);
    }
    for b in &group {
        vecs.push(vec![z.clone(), o.clone(), -b]);
    }
    for c in &group {
        vecs.push(vec![-c, z.clone(), o.clone()]);
    }
    let vecs = embed_random(rng, &vecs, 3, n)?;
    let sets = vecs.chunks(group.len()).map(<[_]>::to_vec).collect();
    ColoredConfig::new(n, sets, Mode::Vectors)
}

/// Unconstrained random colored configuration of small integer vectors
/// (nonzero), used to sample candidates that are then filtered.
pub fn random_colored<R: Rng>(rng: &mut R, n: usize, max_size: usize, bound: i64) -> Result<ColoredConfig> {
    let sets = (0..3)
        .map(|_| {
            let k = rng.gen_range(1..=max_size);
            (0..k)
                .map(|_| loop {
                    let v = small_vec(rng, n, bound);
                    if v.iter().any(|c| !c.is_zero()) {
                        break v;
                    }
                })
                .collect()
        })
        .collect();
    ColoredConfig::new(n, sets, Mode::Vectors)
}

/// Affine point configurations with many rich lines, for δ-SG checks:
/// `0` a collinear set, `1` a planar grid, `2` a cubic grid, `3` several
/// concurrent lines (sharing one point). Randomly embedded into `Q^n`
/// (`n ≥ 3`) by an injective affine map.
pub fn rich_family<R: Rng>(rng: &mut R, kind: usize, n: usize) -> Result<PointConfig> {
    let ints = |v: &[i64]| v.iter().map(|&c| Scalar::from_int(c)).collect::<Vec<_>>();
    let (d, pts): (usize, Vec<Vec<Scalar>>) = match kind {
        0 => {
            let m = rng.gen_range(3..=12);
            (1, (0..m).map(|i| ints(&[i])).collect())
        }
        1 => {
            let (a, b) = (rng.gen_range(3..=5), rng.gen_range(3..=5));
            (2, (0..a).flat_map(|x| (0..b).map(move |y| (x, y))).map(|(x, y)| ints(&[x, y])).collect())
        }
        2 => (3, (0..27).map(|i| ints(&[i / 9, (i / 3) % 3, i % 3])).collect()),
        3 => {
            let lines = rng.gen_range(2..=3);
            let per = rng.gen_range(2..=4);
            let mut pts = vec![ints(&[0, 0, 0])];
            for l in 0..lines {
                for s in 1..=per {
                    let mut p = vec![0i64; 3];
                    p[l] = s;
                    pts.push(ints(&p));
                }
            }
            (3, pts)
        }
        _ => return Err(QsgError::Precondition("unknown family kind".into())),
    };
    if n < d {
        return Err(QsgError::Precondition(format!("dimension {n} below {d}")));
    }
    let shift = small_vec(rng, n, 3);
    let pts = embed_random(rng, &pts, d, n)?
        .into_iter()
        .map(|p| p.iter().zip(&shift).map(|(a, b)| a + b).collect())
        .collect();
    PointConfig::new(n, pts, Mode::AffinePoints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use crate::sg::ek_condition;

    #[test]
    fn generated_configs_satisfy_ek() {
        for seed in 0..10 {
            let mut rng = seeded(seed);
            for kind in 0..4 {
                let c = rich_family(&mut rng, kind, 4).unwrap();
                assert!(c.duplicates().is_empty());
                let (_, counts) = crate::sg::is_delta_sg(&c, &num_rational::BigRational::new(1.into(), 2.into())).unwrap();
                assert!(counts.iter().all(|&k| k > 0));
            }
            let p = planar_ek(&mut rng, [2, 3, 1], 5).unwrap();
            assert!(ek_condition(&p).unwrap().holds);
            assert_eq!(p.dim(), 2);
            for order in [1, 2, 4] {
                let f = fermat_ek(&mut rng, order, 4).unwrap();
                assert!(ek_condition(&f).unwrap().holds);
                assert_eq!(f.dim(), if order == 1 { 2 } else { 3 });
            }
        }
    }
}
