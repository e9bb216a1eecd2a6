use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{QsgError, Result};
use crate::field::Scalar;
use crate::qform::{LinForm, QForm};

/// A sparse multivariate polynomial over `Q(i)`; no zero coefficients are
/// stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    n: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(n: usize) -> Self {
        MPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut p = MPoly::zero(n);
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn one(n: usize) -> Self {
        MPoly::constant(n, Scalar::one())
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MPoly::from_terms(n, [(e, Scalar::one())]).expect("valid exponent")
    }

    /// Builds a polynomial, accumulating repeated exponents.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = MPoly::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(QsgError::DimensionMismatch {
                    expected: n,
                    got: e.len(),
                });
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn from_linform(l: &LinForm) -> Self {
        let n = l.n();
        let mut p = MPoly::zero(n);
        for (i, c) in l.coeffs().iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c);
        }
        p
    }

    pub fn from_qform(q: &QForm) -> Self {
        let n = q.n();
        let mut p = MPoly::zero(n);
        for ((i, j), c) in q.to_monomials() {
            let mut e = vec![0; n];
            e[i] += 1;
            e[j] += 1;
            p.add_term(e, &c);
        }
        p
    }

    /// The quadratic form of a homogeneous degree-two polynomial.
    pub fn to_qform(&self) -> Result<QForm> {
        let mut mono = Vec::new();
        for (e, c) in &self.terms {
            let idx: Vec<usize> = e
                .iter()
                .enumerate()
                .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
                .collect();
            if idx.len() != 2 {
                return Err(QsgError::Precondition(
                    "polynomial is not a homogeneous quadratic".into(),
                ));
            }
            mono.push(((idx[0], idx[1]), c.clone()));
        }
        QForm::from_monomials(self.n, mono)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_n(&self, o: &MPoly) -> Result<()> {
        if self.n != o.n {
            return Err(QsgError::DimensionMismatch {
                expected: self.n,
                got: o.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &MPoly) -> Result<MPoly> {
        self.check_n(o)?;
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c);
        }
        Ok(p)
    }

    pub fn sub(&self, o: &MPoly) -> Result<MPoly> {
        self.check_n(o)?;
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), &-c);
        }
        Ok(p)
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.n);
        }
        MPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, o: &MPoly) -> Result<MPoly> {
        self.check_n(o)?;
        let mut p = MPoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, &(c1 * c2));
            }
        }
        Ok(p)
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(self.n);
        for _ in 0..k {
            acc = acc.mul(self).expect("same n");
        }
        acc
    }

    /// Product of a nonempty list; all entries must share `n`.
    pub fn product(ps: &[MPoly]) -> Result<MPoly> {
        let first = ps.first().ok_or(QsgError::ZeroInput("empty product"))?;
        let mut acc = first.clone();
        for p in &ps[1..] {
            acc = acc.mul(p)?;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &[Scalar]) -> Result<Scalar> {
        if x.len() != self.n {
            return Err(QsgError::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= &xi.pow(k);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Appends `extra` unused variables.
    pub fn extend_vars(&self, extra: usize) -> MPoly {
        MPoly {
            n: self.n + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(self.n + extra, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes the value `v` for variable `i`; the variable count is
    /// unchanged and variable `i` no longer occurs.
    pub fn substitute_value(&self, i: usize, v: &Scalar) -> MPoly {
        let mut p = MPoly::zero(self.n);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[i], 0);
            p.add_term(e2, &(c * &v.pow(k)));
        }
        p
    }

    /// Composition: variable `k` is replaced by `images[k]`; all images
    /// share a variable count `m`, which becomes the result's.
    pub fn compose(&self, images: &[MPoly]) -> Result<MPoly> {
        if images.len() != self.n {
            return Err(QsgError::DimensionMismatch {
                expected: self.n,
                got: images.len(),
            });
        }
        let m = images.first().map_or(0, |p| p.n);
        if let Some(p) = images.iter().find(|p| p.n != m) {
            return Err(QsgError::DimensionMismatch { expected: m, got: p.n });
        }
        // cache powers of each image
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(m), p.clone()]).collect();
        let mut out = MPoly::zero(m);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(m, c.clone());
            for (k, &d) in e.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                while powers[k].len() <= d as usize {
                    let next = powers[k].last().expect("nonempty").mul(&images[k])?;
                    powers[k].push(next);
                }
                t = t.mul(&powers[k][d as usize])?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Linear substitution: `x_k` becomes the form `images[k]` (length `m`).
    pub fn substitute_linear(&self, images: &[Vec<Scalar>]) -> Result<MPoly> {
        let ps: Vec<MPoly> = images
            .iter()
            .map(|r| MPoly::from_linform(&LinForm::new(r.clone())))
            .collect();
        self.compose(&ps)
    }

    /// Splits off the variables `first..n` as coefficients: returns the map
    /// from the exponent of variables `0..first` to the coefficient
    /// polynomial in variables `first..n` (re-indexed from zero).
    pub fn coefficients_over(&self, first: usize) -> BTreeMap<Vec<u32>, MPoly> {
        let m = self.n - first;
        let mut out: BTreeMap<Vec<u32>, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key = e[..first].to_vec();
            out.entry(key)
                .or_insert_with(|| MPoly::zero(m))
                .add_term(e[first..].to_vec(), c);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                    .collect();
                if mono.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qform_round_trip() {
        let q = QForm::from_monomials(3, [((0, 1), Scalar::from_int(3)), ((2, 2), Scalar::i())]).unwrap();
        let p = MPoly::from_qform(&q);
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_qform().unwrap(), q);
    }

    #[test]
    fn arithmetic_and_eval() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let f = x.add(&y).unwrap().pow(2);
        let g = x.mul(&x).unwrap().add(&x.mul(&y).unwrap().scale(&Scalar::from_int(2))).unwrap();
        let g = g.add(&y.mul(&y).unwrap()).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.eval(&[Scalar::from_int(1), Scalar::from_int(2)]).unwrap(), Scalar::from_int(9));
        assert!(f.sub(&g).unwrap().is_zero());
    }

    #[test]
    fn composition() {
        // (x*y) with x -> a+b, y -> a-b  gives a^2 - b^2
        let xy = MPoly::var(2, 0).mul(&MPoly::var(2, 1)).unwrap();
        let a = MPoly::var(2, 0);
        let b = MPoly::var(2, 1);
        let r = xy.compose(&[a.add(&b).unwrap(), a.sub(&b).unwrap()]).unwrap();
        let expect = a.pow(2).sub(&b.pow(2)).unwrap();
        assert_eq!(r, expect);
        let coeffs = r.coefficients_over(1);
        assert_eq!(coeffs.len(), 2);
    }
}
