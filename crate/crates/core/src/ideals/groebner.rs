//! Buchberger's algorithm with the normal selection strategy and
//! Gebauer–Möller pair elimination.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::mpoly::MPoly;
use crate::error::{QsgError, Result};
use crate::field::Scalar;

/// Maximum number of variables supported by the basis engine.
pub const MAX_VARS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Grevlex,
    Lex,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Mono {
    e: [u16; MAX_VARS],
    deg: u32,
}

impl Mono {
    fn one() -> Self {
        Mono {
            e: [0; MAX_VARS],
            deg: 0,
        }
    }

    fn from_exps(exps: &[u32]) -> Result<Self> {
        let mut m = Mono::one();
        for (i, &k) in exps.iter().enumerate() {
            m.e[i] = u16::try_from(k)
                .map_err(|_| QsgError::BudgetExceeded("exponent too large".into()))?;
            m.deg += k;
        }
        Ok(m)
    }

    fn mul(&self, o: &Mono) -> Mono {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.e[i] += o.e[i];
        }
        m.deg += o.deg;
        m
    }

    fn divides(&self, o: &Mono) -> bool {
        self.deg <= o.deg && (0..MAX_VARS).all(|i| self.e[i] <= o.e[i])
    }

    /// `o / self`, assuming divisibility.
    fn quotient_of(&self, o: &Mono) -> Mono {
        let mut m = *o;
        for i in 0..MAX_VARS {
            m.e[i] -= self.e[i];
        }
        m.deg -= self.deg;
        m
    }

    fn lcm(&self, o: &Mono) -> Mono {
        let mut m = Mono::one();
        for i in 0..MAX_VARS {
            m.e[i] = self.e[i].max(o.e[i]);
            m.deg += m.e[i] as u32;
        }
        m
    }

    fn coprime(&self, o: &Mono) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] == 0 || o.e[i] == 0)
    }
}

fn cmp_mono(order: MonomialOrder, a: &Mono, b: &Mono) -> Ordering {
    match order {
        MonomialOrder::Lex => a.e.cmp(&b.e),
        MonomialOrder::Grevlex => a.deg.cmp(&b.deg).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                if a.e[i] != b.e[i] {
                    return b.e[i].cmp(&a.e[i]);
                }
            }
            Ordering::Equal
        }),
    }
}

/// Terms sorted in ascending monomial order; the leading term is last.
#[derive(Clone, Debug, PartialEq)]
struct Poly(Vec<(Mono, Scalar)>);

impl Poly {
    fn zero() -> Self {
        Poly(Vec::new())
    }

    fn from_mpoly(p: &MPoly, order: MonomialOrder) -> Result<Self> {
        let mut t = p
            .terms()
            .iter()
            .map(|(e, c)| Ok((Mono::from_exps(e)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        t.sort_by(|a, b| cmp_mono(order, &a.0, &b.0));
        Ok(Poly(t))
    }

    fn to_mpoly(&self, n: usize) -> MPoly {
        MPoly::from_terms(
            n,
            self.0
                .iter()
                .map(|(m, c)| (m.e[..n].iter().map(|&k| k as u32).collect(), c.clone())),
        )
        .expect("exponents have length n")
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> &(Mono, Scalar) {
        self.0.last().expect("nonzero polynomial")
    }

    fn lm(&self) -> Mono {
        self.lead().0
    }

    fn is_constant(&self) -> bool {
        self.0.len() == 1 && self.0[0].0.deg == 0
    }

    fn scale(&self, c: &Scalar) -> Poly {
        Poly(self.0.iter().map(|(m, x)| (*m, x * c)).collect())
    }

    fn monic(&self) -> (Poly, Scalar) {
        let inv = self.lead().1.inv().expect("nonzero lead");
        (self.scale(&inv), inv)
    }

    /// `self - c * m * g`.
    fn sub_mul(&self, c: &Scalar, m: &Mono, g: &Poly, order: MonomialOrder) -> Poly {
        let mut out = Vec::with_capacity(self.0.len() + g.0.len());
        let (a, b) = (&self.0, &g.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let bm = b.get(j).map(|(bm, _)| bm.mul(m));
            let ord = match (a.get(i), bm) {
                (Some((am, _)), Some(bm)) => cmp_mono(order, am, &bm),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((bm.expect("present"), -&(c * &b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &a[i].1 - &(c * &b[j].1);
                    if !v.is_zero() {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly(out)
    }

    fn add(&self, o: &Poly, order: MonomialOrder) -> Poly {
        self.sub_mul(&-Scalar::one(), &Mono::one(), o, order)
    }
}

/// Cofactors expressing a basis element in terms of the source generators.
type Cofactors = Vec<Poly>;

fn cof_sub_mul(a: &mut Cofactors, c: &Scalar, m: &Mono, b: &Cofactors, order: MonomialOrder) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = x.sub_mul(c, m, y, order);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbOptions {
    pub order: MonomialOrder,
    /// Keep, for every basis element, its expression in the generators.
    pub track_cofactors: bool,
    /// Abort with `BudgetExceeded` after this many S-polynomial reductions.
    pub max_reductions: usize,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            order: MonomialOrder::Grevlex,
            track_cofactors: false,
            max_reductions: 200_000,
        }
    }
}

/// A reduced Gröbner basis together with the generators it came from.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    n: usize,
    source: Vec<MPoly>,
    basis: Vec<Poly>,
    cofactors: Option<Vec<Cofactors>>,
}

struct Engine {
    order: MonomialOrder,
    polys: Vec<Poly>,
    cofs: Vec<Cofactors>,
    active: Vec<bool>,
    pairs: Vec<(usize, usize, Mono)>,
    track: bool,
}

impl Engine {
    /// Full reduction of `f` by the active basis elements.
    fn reduce(&self, f: Poly, mut cof: Cofactors) -> (Poly, Cofactors) {
        let mut p = f;
        let mut rem: Vec<(Mono, Scalar)> = Vec::new();
        while let Some((lm, lc)) = p.0.last().cloned() {
            let div = (0..self.polys.len())
                .find(|&k| self.active[k] && self.polys[k].lm().divides(&lm));
            match div {
                Some(k) => {
                    let g = &self.polys[k];
                    let m = g.lm().quotient_of(&lm);
                    // basis elements are monic
                    p = p.sub_mul(&lc, &m, g, self.order);
                    if self.track {
                        cof_sub_mul(&mut cof, &lc, &m, &self.cofs[k], self.order);
                    }
                }
                None => {
                    p.0.pop();
                    rem.push((lm, lc));
                }
            }
        }
        rem.reverse();
        (Poly(rem), cof)
    }

    /// Gebauer–Möller update with the new element at index `h`.
    fn update(&mut self, h: usize) {
        let lh = self.polys[h].lm();
        let old: Vec<usize> = (0..h).filter(|&g| self.active[g]).collect();
        let cand: Vec<(usize, Mono)> = old.iter().map(|&g| (g, self.polys[g].lm().lcm(&lh))).collect();
        // criterion: drop (h, g1) if some other (h, g2) has a properly dividing
        // lcm, or an equal lcm with a smaller index among those kept
        let mut keep: Vec<(usize, Mono)> = Vec::new();
        for (idx, &(g1, l1)) in cand.iter().enumerate() {
            let coprime = self.polys[g1].lm().coprime(&lh);
            let dominated = cand.iter().enumerate().any(|(j, &(_, l2))| {
                j != idx && l2.divides(&l1) && (l2 != l1 || j < idx)
            });
            if coprime || !dominated {
                keep.push((g1, l1));
            }
        }
        // remove pairs where an equal lcm is realized by a coprime pair
        let mut new_pairs: Vec<(usize, Mono)> = Vec::new();
        for &(g1, l1) in &keep {
            let same_lcm_coprime = keep
                .iter()
                .any(|&(g2, l2)| l2 == l1 && self.polys[g2].lm().coprime(&lh));
            if !same_lcm_coprime {
                new_pairs.push((g1, l1));
            }
        }
        let polys = &self.polys;
        self.pairs.retain(|&(a, b, l)| {
            !(lh.divides(&l)
                && polys[a].lm().lcm(&lh) != l
                && polys[b].lm().lcm(&lh) != l)
        });
        for (g, l) in new_pairs {
            self.pairs.push((g, h, l));
        }
        for &g in &old {
            if lh.divides(&self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
    }

    fn push(&mut self, p: Poly, cof: Cofactors) -> usize {
        self.polys.push(p);
        self.cofs.push(cof);
        self.active.push(true);
        let h = self.polys.len() - 1;
        self.update(h);
        h
    }
}

impl GroebnerBasis {
    pub fn new(gens: &[MPoly], order: MonomialOrder) -> Result<Self> {
        GroebnerBasis::with_options(
            gens,
            GbOptions {
                order,
                ..GbOptions::default()
            },
        )
    }

    pub fn with_options(gens: &[MPoly], opts: GbOptions) -> Result<Self> {
        let n = gens.first().map(MPoly::n).ok_or(QsgError::ZeroInput("no generators"))?;
        if let Some(g) = gens.iter().find(|g| g.n() != n) {
            return Err(QsgError::DimensionMismatch { expected: n, got: g.n() });
        }
        if n > MAX_VARS {
            return Err(QsgError::BudgetExceeded(format!(
                "at most {MAX_VARS} variables supported, got {n}"
            )));
        }
        let order = opts.order;
        let track = opts.track_cofactors;
        let k = gens.len();
        let mut eng = Engine {
            order,
            polys: Vec::new(),
            cofs: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            track,
        };
        let unit_cof = |i: usize| -> Cofactors {
            if !track {
                return Vec::new();
            }
            (0..k)
                .map(|j| {
                    if i == j {
                        Poly(vec![(Mono::one(), Scalar::one())])
                    } else {
                        Poly::zero()
                    }
                })
                .collect()
        };
        let mut unit_found = false;
        for (i, g) in gens.iter().enumerate() {
            let p = Poly::from_mpoly(g, order)?;
            let (r, cof) = eng.reduce(p, unit_cof(i));
            if r.is_zero() {
                continue;
            }
            let (r, inv) = r.monic();
            let cof = cof.iter().map(|c| c.scale(&inv)).collect();
            let constant = r.is_constant();
            eng.push(r, cof);
            if constant {
                unit_found = true;
                break;
            }
        }
        let mut steps = 0usize;
        while !unit_found && !eng.pairs.is_empty() {
            // normal strategy: smallest lcm first, ties by index
            let best = (0..eng.pairs.len())
                .min_by(|&a, &b| {
                    let (pa, pb) = (&eng.pairs[a], &eng.pairs[b]);
                    cmp_mono(order, &pa.2, &pb.2).then((pa.0, pa.1).cmp(&(pb.0, pb.1)))
                })
                .expect("nonempty");
            let (a, b, l) = eng.pairs.swap_remove(best);
            steps += 1;
            if steps > opts.max_reductions {
                return Err(QsgError::BudgetExceeded(format!(
                    "Gröbner basis exceeded {} reductions",
                    opts.max_reductions
                )));
            }
            let (pa, pb) = (&eng.polys[a], &eng.polys[b]);
            let ma = pa.lm().quotient_of(&l);
            let mb = pb.lm().quotient_of(&l);
            let s = Poly::zero()
                .sub_mul(&-Scalar::one(), &ma, pa, order)
                .sub_mul(&Scalar::one(), &mb, pb, order);
            let mut cof = Vec::new();
            if track {
                cof = vec![Poly::zero(); k];
                cof_sub_mul(&mut cof, &-Scalar::one(), &ma, &eng.cofs[a], order);
                cof_sub_mul(&mut cof, &Scalar::one(), &mb, &eng.cofs[b], order);
            }
            let (r, cof) = eng.reduce(s, cof);
            if r.is_zero() {
                continue;
            }
            let (r, inv) = r.monic();
            let cof: Cofactors = cof.iter().map(|c| c.scale(&inv)).collect();
            let constant = r.is_constant();
            eng.push(r, cof);
            if constant {
                unit_found = true;
            }
        }
        // keep minimal leading monomials, then inter-reduce
        let idx: Vec<usize> = if unit_found {
            vec![eng.polys.len() - 1]
        } else {
            (0..eng.polys.len()).filter(|&i| eng.active[i]).collect()
        };
        let mut minimal: Vec<usize> = Vec::new();
        for &i in &idx {
            let li = eng.polys[i].lm();
            let redundant = idx.iter().any(|&j| {
                j != i && {
                    let lj = eng.polys[j].lm();
                    lj.divides(&li) && (lj != li || j < i)
                }
            });
            if !redundant {
                minimal.push(i);
            }
        }
        let mut basis = Vec::new();
        let mut cofs = Vec::new();
        for &i in &minimal {
            // reduce the tail of element i by the others
            let others = Engine {
                order,
                polys: minimal.iter().filter(|&&j| j != i).map(|&j| eng.polys[j].clone()).collect(),
                cofs: if track {
                    minimal.iter().filter(|&&j| j != i).map(|&j| eng.cofs[j].clone()).collect()
                } else {
                    Vec::new()
                },
                active: vec![true; minimal.len() - 1],
                pairs: Vec::new(),
                track,
            };
            let p = &eng.polys[i];
            let (lm, lc) = p.lead().clone();
            let tail = Poly(p.0[..p.0.len() - 1].to_vec());
            let (rt, cof_t) = others.reduce(tail, if track { vec![Poly::zero(); k] } else { Vec::new() });
            let mut full = rt.0;
            full.push((lm, lc));
            basis.push(Poly(full));
            if track {
                let c: Cofactors = eng.cofs[i]
                    .iter()
                    .zip(&cof_t)
                    .map(|(a, b)| a.add(b, order))
                    .collect();
                cofs.push(c);
            }
        }
        let mut order_idx: Vec<usize> = (0..basis.len()).collect();
        order_idx.sort_by(|&a, &b| cmp_mono(order, &basis[a].lm(), &basis[b].lm()));
        let basis: Vec<Poly> = order_idx.iter().map(|&i| basis[i].clone()).collect();
        let cofactors = track.then(|| order_idx.iter().map(|&i| cofs[i].clone()).collect());
        Ok(GroebnerBasis {
            order,
            n,
            source: gens.to_vec(),
            basis,
            cofactors,
        })
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> &[MPoly] {
        &self.source
    }

    /// The reduced basis, sorted by leading monomial.
    pub fn gens(&self) -> Vec<MPoly> {
        self.basis.iter().map(|p| p.to_mpoly(self.n)).collect()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Is the ideal the whole ring?
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    fn engine(&self) -> Engine {
        Engine {
            order: self.order,
            polys: self.basis.clone(),
            cofs: self.cofactors.clone().unwrap_or_default(),
            active: vec![true; self.basis.len()],
            pairs: Vec::new(),
            track: self.cofactors.is_some(),
        }
    }

    pub fn normal_form(&self, f: &MPoly) -> Result<MPoly> {
        if f.n() != self.n {
            return Err(QsgError::DimensionMismatch { expected: self.n, got: f.n() });
        }
        let mut eng = self.engine();
        eng.track = false;
        let (r, _) = eng.reduce(Poly::from_mpoly(f, self.order)?, Vec::new());
        Ok(r.to_mpoly(self.n))
    }

    pub fn ideal_member(&self, f: &MPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Cofactors `h` with `f = Σ h_i source_i`, when `f` is in the ideal.
    /// Requires a basis computed with cofactor tracking.
    pub fn certificate(&self, f: &MPoly) -> Result<Option<Vec<MPoly>>> {
        if self.cofactors.is_none() {
            return Err(QsgError::Precondition("basis was computed without cofactor tracking".into()));
        }
        if f.n() != self.n {
            return Err(QsgError::DimensionMismatch { expected: self.n, got: f.n() });
        }
        let k = self.source.len();
        let eng = self.engine();
        // reducing f while tracking gives f - Σ h_i s_i = remainder
        let (r, cof) = eng.reduce(Poly::from_mpoly(f, self.order)?, vec![Poly::zero(); k]);
        if !r.is_zero() {
            return Ok(None);
        }
        Ok(Some(cof.iter().map(|c| c.scale(&-Scalar::one()).to_mpoly(self.n)).collect()))
    }
}

/// Checks `f = Σ h_i g_i` exactly.
pub fn verify_certificate(f: &MPoly, gens: &[MPoly], h: &[MPoly]) -> Result<bool> {
    if gens.len() != h.len() {
        return Ok(false);
    }
    let mut acc = MPoly::zero(f.n());
    for (g, hi) in gens.iter().zip(h) {
        acc = acc.add(&g.mul(hi)?)?;
    }
    Ok(acc == *f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    #[test]
    fn single_generator() {
        let gb = GroebnerBasis::new(&[v(2, 0)], MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.gens(), vec![v(2, 0)]);
        assert!(gb.ideal_member(&v(2, 0).mul(&v(2, 1)).unwrap()).unwrap());
        assert!(!gb.ideal_member(&v(2, 1)).unwrap());
    }

    #[test]
    fn already_a_basis() {
        let x2 = v(2, 0).pow(2);
        let xy = v(2, 0).mul(&v(2, 1)).unwrap();
        let gb = GroebnerBasis::new(&[x2.clone(), xy.clone()], MonomialOrder::Grevlex).unwrap();
        let g = gb.gens();
        assert_eq!(g.len(), 2);
        assert!(g.contains(&x2) && g.contains(&xy));
    }

    #[test]
    fn transitivity() {
        let (x, y, z) = (v(3, 0), v(3, 1), v(3, 2));
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            let gb = GroebnerBasis::new(&[x.sub(&y).unwrap(), y.sub(&z).unwrap()], order).unwrap();
            assert!(gb.normal_form(&x.sub(&z).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn unit_ideal_and_certificate() {
        let (x, y) = (v(2, 0), v(2, 1));
        let one = MPoly::one(2);
        let gens = vec![x.mul(&y).unwrap().sub(&one).unwrap(), x.clone()];
        let gb = GroebnerBasis::with_options(
            &gens,
            GbOptions {
                track_cofactors: true,
                ..GbOptions::default()
            },
        )
        .unwrap();
        assert!(gb.is_unit());
        let h = gb.certificate(&one).unwrap().unwrap();
        assert!(verify_certificate(&one, &gens, &h).unwrap());
    }

    #[test]
    fn normal_form_is_idempotent() {
        let (x, y, z) = (v(3, 0), v(3, 1), v(3, 2));
        let g1 = x.mul(&x).unwrap().sub(&y.mul(&z).unwrap()).unwrap();
        let g2 = y.mul(&y).unwrap().sub(&x.mul(&z).unwrap()).unwrap();
        let gb = GroebnerBasis::new(&[g1, g2], MonomialOrder::Grevlex).unwrap();
        let f = x.pow(3).add(&z.pow(2).mul(&y).unwrap()).unwrap();
        let r = gb.normal_form(&f).unwrap();
        assert_eq!(gb.normal_form(&r).unwrap(), r);
    }
}
