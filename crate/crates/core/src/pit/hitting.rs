use num_traits::{One, Zero};

use super::circuit::{evaluate, Circuit};
use crate::error::{QsgError, Result};
use crate::field::Scalar;

/// Explicit hitting set for `n`-variate circuits of degree `d`, obtained by
/// substituting `x = M_t · y` with `(M_t)_{i,j} = t^{i·j}` (`i ∈ 1..=n`,
/// `j ∈ 1..=k`) for every `t ∈ T = {1, …, d·k·n + 1}` and every `y` in the
/// grid `G^k`, `G = {0, 1, …, d}`. Its size is `|T| · (d+1)^k`.
///
/// The identity variant (`k = n`, `M = I`, `T = {1}`) is the full grid
/// `G^n` of size `(d+1)^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct HittingSet {
    n: usize,
    d: usize,
    k: usize,
    t_values: Vec<Scalar>,
    grid: Vec<Scalar>,
    identity: bool,
}

/// Options of the construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HsParams {
    /// Use the identity map instead of the Vandermonde-power family
    /// (requires `k = n`).
    pub identity: bool,
}

pub fn hitting_set_generate(n: usize, d: usize, k: usize, params: HsParams) -> Result<HittingSet> {
    if n == 0 || d == 0 || k == 0 || k > n {
        return Err(QsgError::Precondition("need n ≥ 1, d ≥ 1 and 1 ≤ k ≤ n".into()));
    }
    if params.identity && k != n {
        return Err(QsgError::Precondition("the identity map needs k = n".into()));
    }
    let t_count = if params.identity { 1 } else { d * k * n + 1 };
    Ok(HittingSet {
        n,
        d,
        k,
        t_values: (1..=t_count as i64).map(Scalar::from_int).collect(),
        grid: (0..=d as i64).map(Scalar::from_int).collect(),
        identity: params.identity,
    })
}

impl HittingSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t_values(&self) -> &[Scalar] {
        &self.t_values
    }

    pub fn grid(&self) -> &[Scalar] {
        &self.grid
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    /// `|T| · |G|^k`.
    pub fn len(&self) -> u128 {
        self.t_values.len() as u128 * (self.grid.len() as u128).pow(self.k as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn matrix(&self, t: &Scalar) -> Vec<Vec<Scalar>> {
        if self.identity {
            return (0..self.n)
                .map(|i| (0..self.k).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
                .collect();
        }
        (1..=self.n)
            .map(|i| (1..=self.k).map(|j| t.pow((i * j) as u32)).collect())
            .collect()
    }

    /// Points in canonical order: by `t`, then `y` lexicographically with
    /// the first coordinate most significant.
    pub fn stream(&self) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        self.t_values.iter().flat_map(move |t| {
            let m = self.matrix(t);
            let g = self.grid.len();
            let total = g.pow(self.k as u32);
            (0..total).map(move |mut idx| {
                let mut y = vec![Scalar::zero(); self.k];
                for j in (0..self.k).rev() {
                    y[j] = self.grid[idx % g].clone();
                    idx /= g;
                }
                m.iter()
                    .map(|row| row.iter().zip(&y).fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b)))
                    .collect()
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PitVerdict {
    /// First point of the stream where the circuit is nonzero.
    Witness { index: u128, point: Vec<Scalar>, value: Scalar },
    /// The circuit vanishes on every point.
    ZeroOnH { points: u128 },
}

impl PitVerdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, PitVerdict::ZeroOnH { .. })
    }
}

/// Scans the hitting set for a nonzero of the circuit.
pub fn pit_run(c: &Circuit, hs: &HittingSet) -> Result<PitVerdict> {
    if hs.n != c.n() {
        return Err(QsgError::DimensionMismatch { expected: c.n(), got: hs.n });
    }
    let mut count = 0u128;
    for (index, point) in hs.stream().enumerate() {
        count += 1;
        let value = evaluate(c, &point)?;
        if !value.is_zero() {
            return Ok(PitVerdict::Witness { index: index as u128, point, value });
        }
    }
    Ok(PitVerdict::ZeroOnH { points: count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qform::QForm;

    #[test]
    fn sizes_match_stream() {
        for (n, d, k) in [(3, 2, 1), (3, 2, 2), (4, 1, 3), (2, 3, 2)] {
            let hs = hitting_set_generate(n, d, k, HsParams::default()).unwrap();
            assert_eq!(hs.len(), ((d * k * n + 1) * (d + 1).pow(k as u32)) as u128);
            assert_eq!(hs.stream().count() as u128, hs.len());
        }
        let id = hitting_set_generate(3, 2, 3, HsParams { identity: true }).unwrap();
        assert_eq!(id.len(), 27);
        let pts: Vec<_> = id.stream().collect();
        assert_eq!(pts[5], vec![Scalar::zero(), Scalar::one(), Scalar::from_int(2)]);
        assert!(hitting_set_generate(3, 2, 4, HsParams::default()).is_err());
    }

    #[test]
    fn witness_after_vanishing_prefix() {
        // (x - y)^2 · z^2 vanishes at every t = 1 point (all coordinates equal)
        let d2 = QForm::from_int_terms(3, &[(0, 0, 1), (0, 1, -2), (1, 1, 1)]);
        let z2 = QForm::from_int_terms(3, &[(2, 2, 1)]);
        let c = Circuit::new(3, [vec![d2, z2.clone()], vec![z2.clone()], vec![z2.scale(&Scalar::from_int(-1))]]).unwrap();
        let hs = hitting_set_generate(3, 4, 2, HsParams::default()).unwrap();
        match pit_run(&c, &hs).unwrap() {
            PitVerdict::Witness { index, value, point } => {
                assert!(index >= 25);
                assert_eq!(evaluate(&c, &point).unwrap(), value);
            }
            v => panic!("{v:?}"),
        }
    }
}
