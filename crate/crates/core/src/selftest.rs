//! The acceptance suite as a library routine: eight seeded criteria, each
//! checked against an independent oracle, with a deterministic report.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::Scalar;
use crate::ideals::{codim2_oracle, radical_member, witness_subset, MPoly};
use crate::linalg;
use crate::pencil::{codim2_common, vanishes_on, Codim2};
use crate::pit::{self, expand_oracle, hitting_set_generate, pit_run, HsParams, PitVerdict};
use crate::qform::{LinForm, LinSpace, ProjectionMap, QForm};
use crate::quadsg::{assert_main_theorem, generate, random_params, validate_triple, Family, QuadTriple};
use crate::rng::{random_qform, seeded, small_vec, split};
use crate::sg::{self, check_ek_bound, check_sg_bound, ek_condition, is_delta_sg, ordinary_lines, Mode, PointConfig};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub results: Vec<CriterionResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("selftest seed {}\n", self.seed);
        for r in &self.results {
            let _ = writeln!(
                s,
                "criterion {} [{}]: {} - {}",
                r.id,
                r.name,
                if r.passed { "PASS" } else { "FAIL" },
                r.detail
            );
        }
        let _ = writeln!(s, "overall: {}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

/// Names of the criteria, indexed from 1.
pub const CRITERIA: [&str; 8] = [
    "radical quadruple",
    "classifier completeness",
    "rank and minimal space",
    "rank inequalities",
    "codimension-two cross-validation",
    "sylvester-gallai and edelstein-kelly",
    "main-theorem harness",
    "identity testing",
];

/// Runs one criterion (1..=8).
pub fn run_criterion(id: u8, seed: u64) -> CriterionResult {
    let sub = split(seed, id as u64);
    let out = match id {
        1 => radical_quadruple(),
        2 => classifier_completeness(sub),
        3 => rank_calculus(sub),
        4 => inequalities(sub),
        5 => codim2_cross_validation(sub),
        6 => sg_ek(sub),
        7 => main_theorem(sub),
        8 => identity_testing(sub),
        _ => Ok((false, "unknown criterion".into())),
    };
    let (passed, detail) = out.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult {
        id,
        name: CRITERIA.get(id as usize - 1).copied().unwrap_or("unknown"),
        passed,
        detail,
    }
}

pub fn selftest(seed: u64) -> SelftestReport {
    selftest_observed(seed, |_, _| {})
}

/// Like [`selftest`], reporting each criterion's wall time to `observe`
/// (timings stay out of the report so that it is reproducible).
pub fn selftest_observed(seed: u64, mut observe: impl FnMut(&CriterionResult, std::time::Duration)) -> SelftestReport {
    let results = (1..=8)
        .map(|id| {
            let start = std::time::Instant::now();
            let r = run_criterion(id, seed);
            observe(&r, start.elapsed());
            r
        })
        .collect();
    SelftestReport { seed, results }
}

type Outcome = Result<(bool, String)>;

fn first(failures: &[String]) -> String {
    failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
}

fn q(n: usize, t: &[(usize, usize, i64)]) -> QForm {
    QForm::from_int_terms(n, t)
}

fn radical_quadruple() -> Outcome {
    let q1 = q(4, &[(0, 1, 1), (2, 3, 1)]);
    let q2 = q(4, &[(0, 1, 1), (2, 3, -1)]);
    let q3 = q(4, &[(0, 3, 1)]);
    let q4 = q(4, &[(1, 2, 1)]);
    let gens = [MPoly::from_qform(&q1), MPoly::from_qform(&q2)];
    let (m3, m4) = (MPoly::from_qform(&q3), MPoly::from_qform(&q4));
    let prod = radical_member(&m3.mul(&m4)?, &gens)?;
    let r3 = radical_member(&m3, &gens)?;
    let r4 = radical_member(&m4, &gens)?;
    let w = witness_subset(&[q3, q4], &q1, &q2, 4)?;
    let ok = prod && !r3 && !r4 && w == Some(vec![0, 1]);
    Ok((ok, format!("product {prod}, Q3 {r3}, Q4 {r4}, witness {w:?}")))
}

fn triple_params(rng: &mut ChaCha8Rng, family: Family) -> crate::quadsg::GenParams {
    random_params(rng, family, 6, 6)
}

fn classifier_completeness(seed: u64) -> Outcome {
    let (mut triples, mut pairs, mut bad) = (0, 0, Vec::new());
    for k in 0..200u64 {
        let family = if k % 2 == 0 { Family::Pencil } else { Family::SquaresEk };
        let s = split(seed, k);
        let params = triple_params(&mut seeded(s), family);
        let t = generate(family, &params, s)?;
        let rep = validate_triple(&t, 4)?;
        if !rep.all_ok() {
            bad.push(format!("triple {k} invalid"));
            continue;
        }
        triples += 1;
        for ((ra, rb), cs) in &rep.pair_cases {
            pairs += 1;
            let third = &t.sets()[3 - ra.0 - rb.0];
            if cs.is_empty() || !cs.verify(t.get(*ra), t.get(*rb), third)? {
                bad.push(format!("triple {k} pair {ra:?}/{rb:?}"));
            }
        }
    }
    Ok((
        bad.is_empty() && triples == 200,
        format!("{triples}/200 validated triples, {pairs} cross pairs, {} failures{}", bad.len(), first(&bad)),
    ))
}

/// `2r` independent linear forms with small (occasionally Gaussian)
/// coefficients.
fn independent_forms(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<Vec<Scalar>> {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..count)
            .map(|_| {
                let mut v = small_vec(rng, n, 3);
                if rng.gen_bool(0.2) {
                    let j = rng.gen_range(0..n);
                    v[j] = &v[j] + &Scalar::gaussian(0, rng.gen_range(1..=2));
                }
                v
            })
            .collect();
        if linalg::rank(&rows, n) == count {
            return rows;
        }
    }
}

fn planted(rng: &mut ChaCha8Rng, n: usize, r: usize) -> Result<(QForm, LinSpace)> {
    let rows = independent_forms(rng, n, 2 * r);
    let mut qf = QForm::zero(n);
    for k in 0..r {
        qf = qf.add(&QForm::product(&LinForm::new(rows[2 * k].clone()), &LinForm::new(rows[2 * k + 1].clone()))?)?;
    }
    Ok((qf, LinSpace::from_rows(n, rows)?))
}

fn rank_calculus(seed: u64) -> Outcome {
    let mut rng = seeded(seed);
    let mut failures = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=10);
        let r = rng.gen_range(1..=n / 2);
        let (qf, ms) = planted(&mut rng, n, r)?;
        if qf.rank_s() != r || qf.minimal_space() != ms {
            failures += 1;
        }
    }
    Ok((failures == 0, format!("1000 planted forms, {failures} mismatches")))
}

fn random_space(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> Result<LinSpace> {
    LinSpace::from_rows(n, independent_forms(rng, n, dim))
}

fn inequalities(seed: u64) -> Outcome {
    let mut rng = seeded(seed);
    let (mut restrict_bad, mut sum_bad, mut proj_bad, mut resampled) = (0, 0, 0, 0);
    // rank cannot drop by more than dim V under restriction to V = 0
    for _ in 0..1000 {
        let n = rng.gen_range(3..=8);
        let r = rng.gen_range(1..=n / 2);
        let (qf, _) = planted(&mut rng, n, r)?;
        let delta = rng.gen_range(0..=3.min(n - 1));
        let v = random_space(&mut rng, n, delta)?;
        if qf.restrict_to_zero(&v)?.rank_s() + delta < r {
            restrict_bad += 1;
        }
    }
    // adding a product of two fresh variables raises the rank by one
    for _ in 0..1000 {
        let k = rng.gen_range(1..=6);
        let p1 = random_qform(&mut rng, k, 2);
        let mut terms = Vec::new();
        for ((i, j), c) in p1.to_monomials() {
            terms.push(((i, j), c));
        }
        terms.push(((k, k + 1), Scalar::one()));
        let sum = QForm::from_monomials(k + 2, terms)?;
        let ms = sum.minimal_space();
        if sum.rank_s() != p1.rank_s() + 1
            || !ms.contains(&LinForm::var(k + 2, k))
            || !ms.contains(&LinForm::var(k + 2, k + 1))
        {
            sum_bad += 1;
        }
    }
    // the projection map lowers the rank by at most dim V
    let mut done = 0;
    while done < 1000 {
        let n = rng.gen_range(3..=7);
        let qf = random_qform(&mut rng, n, 3);
        if qf.gram_rank() < 3 {
            continue;
        }
        let delta = rng.gen_range(1..=3.min(n - 1));
        let v = random_space(&mut rng, n, delta)?;
        let alpha: Vec<Scalar> = (0..delta)
            .map(|_| Scalar::from_ratio(rng.gen_range(1..=1 << 16), 1 << 16))
            .collect();
        let map = match ProjectionMap::new(&v, &alpha) {
            Ok(m) => m,
            Err(_) => {
                resampled += 1;
                continue;
            }
        };
        done += 1;
        if map.apply_qform(&qf)?.rank_s() + delta < qf.rank_s() {
            proj_bad += 1;
        }
    }
    Ok((
        restrict_bad + sum_bad + proj_bad == 0,
        format!(
            "restriction {restrict_bad}/1000, fresh product {sum_bad}/1000, projection {proj_bad}/1000 violations, {resampled} resampled maps"
        ),
    ))
}

fn codim2_cross_validation(seed: u64) -> Outcome {
    let mut rng = seeded(seed);
    let (mut pos_ok, mut neg_ok) = (0, 0);
    let mut failures = Vec::new();
    for k in 0..200 {
        let n = rng.gen_range(3..=6);
        let w = independent_forms(&mut rng, n, 2);
        let (c, d) = (LinForm::new(w[0].clone()), LinForm::new(w[1].clone()));
        let mut pair = Vec::new();
        while pair.len() < 2 {
            let (l1, l2) = (LinForm::new(small_vec(&mut rng, n, 2)), LinForm::new(small_vec(&mut rng, n, 2)));
            let f = QForm::product(&c, &l1)?.add(&QForm::product(&d, &l2)?)?;
            if !f.is_zero() && pair.iter().all(|g: &QForm| !g.is_proportional(&f)) {
                pair.push(f);
            }
        }
        let found = match codim2_common(&pair[0], &pair[1])? {
            Codim2::Found(w) => vanishes_on(&pair[0], &w)? && vanishes_on(&pair[1], &w)?,
            _ => false,
        };
        let oracle = codim2_oracle(&pair[0], &pair[1])?;
        if found && oracle {
            pos_ok += 1;
        } else {
            failures.push(format!("positive {k}"));
        }
    }
    for k in 0..200 {
        let n = rng.gen_range(5..=6);
        let a = loop {
            let a = random_qform(&mut rng, n, 3);
            if a.rank_s() >= 3 {
                break a;
            }
        };
        let b = random_qform(&mut rng, n, 3);
        let (a, b) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        if b.is_zero() || a.is_zero() || a.is_proportional(&b) {
            failures.push(format!("negative {k} degenerate"));
            continue;
        }
        let common = codim2_common(&a, &b)?.exists();
        let oracle = codim2_oracle(&a, &b)?;
        if !common && !oracle {
            neg_ok += 1;
        } else {
            failures.push(format!("negative {k}"));
        }
    }
    Ok((
        pos_ok == 200 && neg_ok == 200,
        format!("positives {pos_ok}/200, negatives {neg_ok}/200 agree with elimination{}", first(&failures)),
    ))
}

/// Collinearity through explicit minors, independent of elimination.
fn minors_vanish(rows: &[Vec<Scalar>], size: usize) -> bool {
    let n = rows[0].len();
    let mut cols: Vec<usize> = (0..size).collect();
    if size > n {
        return true;
    }
    loop {
        let m: Vec<Vec<Scalar>> = rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        if !linalg::det(&m).is_zero() {
            return false;
        }
        let mut i = size;
        while i > 0 && cols[i - 1] == n - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return true;
        }
        cols[i - 1] += 1;
        for j in i..size {
            cols[j] = cols[j - 1] + 1;
        }
    }
}

fn oracle_ordinary(c: &PointConfig) -> Vec<(usize, usize)> {
    let p = c.points();
    let collinear = |i: usize, j: usize, k: usize| match c.mode() {
        Mode::AffinePoints => {
            let d = |a: &Vec<Scalar>| a.iter().zip(&p[i]).map(|(x, y)| x - y).collect::<Vec<_>>();
            minors_vanish(&[d(&p[j]), d(&p[k])], 2)
        }
        Mode::Vectors => minors_vanish(&[p[i].clone(), p[j].clone(), p[k].clone()], 3),
    };
    let m = p.len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if !(0..m).any(|k| k != i && k != j && collinear(i, j, k)) {
                out.push((i, j));
            }
        }
    }
    out
}

fn random_point_config(rng: &mut ChaCha8Rng) -> Result<PointConfig> {
    let mode = if rng.gen_bool(0.5) { Mode::AffinePoints } else { Mode::Vectors };
    let n = rng.gen_range(2..=4);
    let m = rng.gen_range(2..=30);
    let bound = rng.gen_range(1..=3);
    let mut pts: Vec<Vec<Scalar>> = Vec::new();
    let mut tries = 0;
    while pts.len() < m && tries < 2000 {
        tries += 1;
        let v = small_vec(rng, n, bound);
        if mode == Mode::Vectors && v.iter().all(Zero::is_zero) {
            continue;
        }
        let key = match mode {
            Mode::Vectors => sg::normalize_projective(&v)?,
            Mode::AffinePoints => v.clone(),
        };
        let dup = pts.iter().any(|p| match mode {
            Mode::Vectors => sg::normalize_projective(p).map(|x| x == key).unwrap_or(false),
            Mode::AffinePoints => *p == key,
        });
        if !dup {
            pts.push(v);
        }
    }
    if pts.len() < 2 {
        pts = vec![small_vec(rng, n, 0), vec![Scalar::one(); n]];
    }
    PointConfig::new(n, pts, mode)
}

fn sg_ek(seed: u64) -> Outcome {
    let mut rng = seeded(seed);
    let mut line_bad = 0;
    let configs = 300;
    for _ in 0..configs {
        let c = random_point_config(&mut rng)?;
        if ordinary_lines(&c)? != oracle_ordinary(&c) {
            line_bad += 1;
        }
    }
    for kind in 0..4 {
        let c = sg::gen::rich_family(&mut rng, kind, 3)?;
        if c.len() <= 30 && ordinary_lines(&c)? != oracle_ordinary(&c) {
            line_bad += 1;
        }
    }
    let (mut sampled, mut draws, mut ek_bad, mut max_dim) = (0, 0, 0, 0);
    while sampled < 10_000 && draws < 200_000 {
        draws += 1;
        let c = match draws % 5 {
            0 | 1 => sg::gen::random_colored(&mut rng, 2, 3, 2)?,
            2 => sg::gen::random_colored(&mut rng, 3, 3, 1)?,
            3 => {
                let n = rng.gen_range(2..=6);
                let sizes = [0; 3].map(|_| rng.gen_range(1..=4));
                sg::gen::planar_ek(&mut rng, sizes, n)?
            }
            _ => {
                let n = rng.gen_range(3..=6);
                let order = [1, 2, 4][rng.gen_range(0..3)];
                sg::gen::fermat_ek(&mut rng, order, n)?
            }
        };
        if !ek_condition(&c)?.holds {
            continue;
        }
        sampled += 1;
        let rep = check_ek_bound(&c)?;
        max_dim = max_dim.max(rep.dim);
        if !rep.holds {
            ek_bad += 1;
        }
    }
    let (mut families, mut sg_bad) = (0, 0);
    for _ in 0..100 {
        let kind = rng.gen_range(0..4);
        let n = rng.gen_range(3..=6);
        let c = sg::gen::rich_family(&mut rng, kind, n)?;
        let (_, counts) = is_delta_sg(&c, &BigRational::one())?;
        let min = *counts.iter().min().expect("nonempty");
        if min == 0 {
            continue;
        }
        let delta = BigRational::new(min.into(), (c.len() - 1).into());
        families += 1;
        if !check_sg_bound(&c, &delta)?.holds {
            sg_bad += 1;
        }
    }
    Ok((
        line_bad == 0 && sampled == 10_000 && ek_bad == 0 && sg_bad == 0 && families > 0,
        format!(
            "ordinary lines {line_bad} mismatches over {} configs; {sampled} EK configs ({draws} draws), max dim {max_dim}, {ek_bad} bound violations; {families} delta-SG families, {sg_bad} bound violations",
            configs + 4
        ),
    ))
}

fn main_theorem(seed: u64) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for family in [Family::Pencil, Family::SquaresEk] {
        for k in 0..100u64 {
            let s = split(seed, k * 2 + (family == Family::SquaresEk) as u64);
            let params = triple_params(&mut seeded(s), family);
            let t: QuadTriple = generate(family, &params, s)?;
            let rep = assert_main_theorem(&t, 20)?;
            let sym2 = {
                let rows: Vec<Vec<Scalar>> = t.sets().iter().flatten().flat_map(|q| q.minimal_space().basis().to_vec()).collect();
                let d = linalg::rank(&rows, t.n());
                d * (d + 1) / 2
            };
            let ok = match family {
                Family::Pencil => rep.span_dim == 2,
                _ => rep.span_dim <= sym2,
            };
            checked += 1;
            if !ok || !rep.passed() {
                failures.push(format!("{family:?} seed {k}"));
            }
        }
    }
    Ok((
        failures.is_empty(),
        format!("{checked} triples validated, {} prediction mismatches{}", failures.len(), first(&failures)),
    ))
}

fn identity_testing(seed: u64) -> Outcome {
    let mut rng = seeded(seed);
    let mut bad = Vec::new();
    for k in 0..100 {
        let n = rng.gen_range(5..=8);
        let len = rng.gen_range(1..=4);
        let c = pit::gen::random_circuit(&mut rng, n, len)?;
        let hs = hitting_set_generate(n, c.degree(), 5, HsParams::default())?;
        let nonzero = !expand_oracle(&c)?.is_zero();
        let agree = match pit_run(&c, &hs)? {
            PitVerdict::Witness { point, value, .. } => {
                nonzero && pit::evaluate(&c, &point)? == value && !value.is_zero()
            }
            PitVerdict::ZeroOnH { .. } => !nonzero,
        };
        if !agree || !nonzero {
            bad.push(format!("random circuit {k}"));
        }
    }
    for k in 0..100 {
        let c = pit::gen::zero_circuit(&mut rng, 4)?;
        let hs = hitting_set_generate(4, c.degree(), 2, HsParams::default())?;
        let zero = expand_oracle(&c)?.is_zero();
        match pit_run(&c, &hs)? {
            PitVerdict::ZeroOnH { points } if zero && points == hs.len() => {}
            _ => bad.push(format!("zero circuit {k}")),
        }
    }
    let mut size_bad = 0;
    for (n, d, k) in [(3, 2, 1), (4, 2, 2), (4, 4, 3), (6, 3, 2), (5, 1, 5)] {
        let hs = hitting_set_generate(n, d, k, HsParams::default())?;
        let formula = ((d * k * n + 1) * (d + 1).pow(k as u32)) as u128;
        if hs.len() != formula || hs.stream().count() as u128 != formula {
            size_bad += 1;
        }
    }
    Ok((
        bad.is_empty() && size_bad == 0,
        format!("200 circuits, {} disagreements{}; {size_bad} size-formula mismatches", bad.len(), first(&bad)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_criteria() {
        for id in [1, 3] {
            let r = run_criterion(id, 42);
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn oracle_matches_on_grid() {
        let pts: Vec<Vec<Scalar>> = (0..9).map(|i| vec![Scalar::from_int(i / 3), Scalar::from_int(i % 3)]).collect();
        let c = PointConfig::new(2, pts, Mode::AffinePoints).unwrap();
        assert_eq!(oracle_ordinary(&c), ordinary_lines(&c).unwrap());
    }
}
