use num_traits::{One, Zero};
use proptest::prelude::*;

use qsg::field::Scalar;
use qsg::ideals::MPoly;
use qsg::json::Json;
use qsg::qform::{LinForm, LinSpace, QForm};
use qsg::quadsg::{generate, Family, GenParams};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5, -9i64..=9, 1i64..=5)
        .prop_map(|(a, b, c, d)| &Scalar::from_ratio(a, b) + &(&Scalar::from_ratio(c, d) * &Scalar::i()))
}

fn qform(n: usize) -> impl Strategy<Value = QForm> {
    proptest::collection::vec(-4i64..=4, n * (n + 1) / 2).prop_map(move |c| {
        let mut terms = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                terms.push((i, j, c[k]));
                k += 1;
            }
        }
        QForm::from_int_terms(n, &terms)
    })
}

fn int_rows(rows: usize, n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), rows)
}

fn to_scalars(rows: &[Vec<i64>]) -> Vec<Vec<Scalar>> {
    rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect()
}

proptest! {
    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn planted_products_have_planted_rank(rows in int_rows(6, 6), r in 1usize..=3) {
        let rows = to_scalars(&rows[..2 * r]);
        prop_assume!(qsg::linalg::rank(&rows, 6) == 2 * r);
        let mut q = QForm::zero(6);
        for k in 0..r {
            let p = QForm::product(&LinForm::new(rows[2 * k].clone()), &LinForm::new(rows[2 * k + 1].clone())).unwrap();
            q = q.add(&p).unwrap();
        }
        prop_assert_eq!(q.rank_s(), r);
        prop_assert_eq!(q.minimal_space(), LinSpace::from_rows(6, rows).unwrap());
    }

    #[test]
    fn rank_bounds_gram_rank(q in qform(5)) {
        let g = q.gram_rank();
        prop_assert!(2 * q.rank_s() >= g);
        prop_assert!(q.rank_s() <= g);
        prop_assert!(q.minimal_space().dim() <= 2 * q.rank_s());
    }

    #[test]
    fn restriction_drops_rank_by_at_most_dim(q in qform(5), rows in int_rows(2, 5)) {
        let v = LinSpace::from_rows(5, to_scalars(&rows)).unwrap();
        let restricted = q.restrict_to_zero(&v).unwrap();
        prop_assert!(restricted.rank_s() + v.dim() >= q.rank_s());
        prop_assert!(restricted.rank_s() <= q.rank_s());
    }

    #[test]
    fn json_round_trips(q in qform(4), a in scalar()) {
        let q = q.scale(&a);
        let back = QForm::from_json_str(&q.to_json().to_string()).unwrap();
        prop_assert_eq!(&back, &q);
        let p = MPoly::from_qform(&q);
        prop_assert_eq!(MPoly::from_json_str(&p.to_json().to_string()).unwrap(), p);
    }

    #[test]
    fn evaluation_matches_polynomial(q in qform(3), x in proptest::collection::vec(-5i64..=5, 3)) {
        let pt: Vec<Scalar> = x.iter().map(|&v| Scalar::from_int(v)).collect();
        prop_assert_eq!(q.eval(&pt), MPoly::from_qform(&q).eval(&pt).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn generators_are_deterministic(seed in 0u64..1000, pencil in any::<bool>()) {
        let family = if pencil { Family::Pencil } else { Family::SquaresEk };
        let p = GenParams { n: 4, sizes: [2, 3, 2], ..GenParams::default() };
        prop_assert_eq!(generate(family, &p, seed).unwrap(), generate(family, &p, seed).unwrap());
    }
}
