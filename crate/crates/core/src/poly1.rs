//! Univariate polynomials over `Q(i)`: Euclidean gcd, square-free parts,
//! interpolation and exact root extraction.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::Scalar;

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn constant(c: Scalar) -> Self {
        UPoly::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Scalar) -> Self {
        UPoly::new(vec![-r, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Scalar::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::new(out)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (UPoly::zero(), UPoly::zero());
        };
        if sd < dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Scalar::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &(&c * dc);
            }
            q[k] = c;
        }
        rem.truncate(dd);
        (UPoly::new(q), UPoly::new(rem))
    }

    pub fn monic(&self) -> UPoly {
        match self.lead() {
            None => UPoly::zero(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.monic();
        let mut b = o.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from_int(i as i64))
                .collect(),
        )
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Interpolating polynomial through `(xs[k], ys[k])` (Newton form).
    pub fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> UPoly {
        let n = xs.len();
        let mut dd: Vec<Scalar> = ys.to_vec();
        for level in 1..n {
            for k in (level..n).rev() {
                let num = &dd[k] - &dd[k - 1];
                let den = &xs[k] - &xs[k - level];
                dd[k] = &num / &den;
            }
        }
        let mut acc = UPoly::zero();
        for k in (0..n).rev() {
            acc = acc.mul(&UPoly::linear_root(&xs[k])).add(&UPoly::constant(dd[k].clone()));
        }
        acc
    }

    /// All roots in `Q(i)`, sorted, without multiplicity.
    ///
    /// Candidates come from numerical root approximations which are
    /// refined by exact Newton steps; a candidate is accepted only after
    /// exact evaluation. For a root `u/v` of the integral polynomial the
    /// denominator `v` divides the leading coefficient `c`, so `c * root`
    /// is a Gaussian integer and rounding recovers it exactly.
    pub fn rational_roots(&self) -> Vec<Scalar> {
        let p = self.squarefree();
        let Some(deg) = p.degree() else {
            return vec![];
        };
        if deg == 0 {
            return vec![];
        }
        if deg == 1 {
            return vec![-&p.coeffs[0]];
        }
        let integral = p.clear_denominators();
        let lead = integral.lead().unwrap().clone();
        let lead_bits = lead.norm().numer().bits() as usize;
        let approx = aberth(&p);
        let mut roots: Vec<Scalar> = Vec::new();
        for z in approx {
            let mut x = Scalar::new(f64_to_rational(z.re), f64_to_rational(z.im));
            let prec = 64 + lead_bits + magnitude_bits(&x);
            let dp = p.derivative();
            for _ in 0..6 {
                let d = dp.eval(&x);
                if d.is_zero() {
                    break;
                }
                let step = &p.eval(&x) / &d;
                x = round_scalar(&(&x - &step), prec);
                if step.is_zero() {
                    break;
                }
            }
            let w = &lead * &x;
            let base = Scalar::new(round_half(w.re()), round_half(w.im()));
            let nudges = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)];
            for (dr, di) in nudges {
                let cand = &(&base + &Scalar::gaussian(dr, di)) / &lead;
                if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                    break;
                }
            }
        }
        roots.sort();
        roots
    }

    /// Multiply through by the lcm of all denominators.
    fn clear_denominators(&self) -> UPoly {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()));
        self.scale(&Scalar::real(BigRational::from_integer(l)))
    }
}

fn f64_to_rational(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

fn magnitude_bits(x: &Scalar) -> usize {
    let n = x.norm();
    let q = n.numer() / n.denom();
    q.bits() as usize / 2 + 1
}

fn round_half(q: &BigRational) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (q + half).floor()
}

fn round_to_bits(q: &BigRational, bits: usize) -> BigRational {
    let scale = BigRational::from_integer(BigInt::one() << bits);
    round_half(&(q * &scale)) / scale
}

fn round_scalar(x: &Scalar, bits: usize) -> Scalar {
    Scalar::new(round_to_bits(x.re(), bits), round_to_bits(x.im(), bits))
}

/// Aberth-Ehrlich simultaneous iteration on a monic double-precision copy.
fn aberth(p: &UPoly) -> Vec<Complex64> {
    let m = p.monic();
    let c: Vec<Complex64> = m.coeffs.iter().map(|x| x.to_c64()).collect();
    let n = c.len() - 1;
    if c.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return vec![];
    }
    let radius = 1.0 + c[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for a in c.iter().rev() {
            d = d * z + v;
            v = v * z + a;
        }
        (v, d)
    };
    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(radius * 0.5 + 0.1, theta)
        })
        .collect();
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (v, d) = eval(zs[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let diff = zs[k] - zs[j];
                    if diff.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(1.0, 0.0) / diff
                    }
                })
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if w.re.is_finite() && w.im.is_finite() {
                zs[k] -= w;
                max_step = max_step.max(w.norm() / (1.0 + zs[k].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    zs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2) and (x-1)(x-3)
        let a = p(&[1, -2, 1]).mul(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&p(&[-3, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(a.squarefree(), p(&[-1, 1]).mul(&p(&[2, 1])));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p(&[3, 0, -2, 5]);
        let xs: Vec<Scalar> = (0..4).map(Scalar::from_int).collect();
        let ys: Vec<Scalar> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(UPoly::interpolate(&xs, &ys), f);
    }

    #[test]
    fn rational_roots_of_planted_products() {
        let r1 = Scalar::from_ratio(3, 7);
        let r2 = Scalar::new(
            BigRational::new((-5).into(), 2.into()),
            BigRational::new(1.into(), 3.into()),
        );
        let r3 = Scalar::i();
        // x^2 + 2 has no roots in Q(i)
        let f = UPoly::linear_root(&r1)
            .mul(&UPoly::linear_root(&r2))
            .mul(&UPoly::linear_root(&r3))
            .mul(&p(&[2, 0, 1]))
            .scale(&Scalar::from_int(6));
        let mut want = vec![r1, r2, r3];
        want.sort();
        assert_eq!(f.rational_roots(), want);
        assert!(p(&[2, 0, 1]).rational_roots().is_empty());
        assert_eq!(p(&[1, 0, 1]).rational_roots().len(), 2);
    }
}
