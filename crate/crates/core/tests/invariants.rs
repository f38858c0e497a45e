use std::sync::Arc;

use proptest::prelude::*;

use tauex::catalog::Catalog;
use tauex::decompose::decompose;
use tauex::ids::IndId;
use tauex::linalg::{FieldSpec, Mat};
use tauex::quiver::{AlgebraDescription, BoundQuiverAlgebra};
use tauex::rep::{hom_dim, Rep};

fn field(p: u64) -> FieldSpec {
    FieldSpec::new(p).unwrap()
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

/// Unit lower times unit upper triangular: invertible over every field.
fn invertible(f: FieldSpec, n: usize, seed: &[i64]) -> Mat {
    let mut l = Mat::identity(f, n);
    let mut u = Mat::identity(f, n);
    let mut k = 0;
    for i in 0..n {
        for j in 0..n {
            let v = f.from_i64(seed[k % seed.len().max(1)]);
            k += 1;
            if i > j {
                l.set(i, j, v);
            } else if i < j {
                u.set(i, j, v);
            }
        }
    }
    l.mul(&u)
}

fn base_change(m: &Rep, seed: &[i64]) -> Rep {
    let f = m.field();
    let q = m.algebra().quiver().clone();
    let g: Vec<Mat> = m.dim_vector().iter().enumerate().map(|(v, &d)| invertible(f, d, &seed[v..])).collect();
    let arrows = q
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| g[arr.target].mul(m.arrow_map(a)).mul(&g[arr.source].inverse().unwrap()))
        .collect();
    Rep::new(m.algebra().clone(), m.dim_vector().to_vec(), arrows).unwrap()
}

fn catalog(n: usize, rad2: bool, p: u64) -> Arc<Catalog> {
    let alg = BoundQuiverAlgebra::build(&AlgebraDescription::linear(n, rad2).with_characteristic(p)).unwrap();
    Arc::new(Catalog::build(&alg, None).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity_is_column_count(rows in matrix(4, 5), p in prop::sample::select(vec![0u64, 2, 5])) {
        let a = Mat::from_i64_rows(field(p), &rows);
        let k = a.kernel();
        prop_assert_eq!(a.rank() + k.cols(), a.cols());
        prop_assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn rref_is_idempotent_and_keeps_rank(rows in matrix(4, 4), p in prop::sample::select(vec![0u64, 3])) {
        let a = Mat::from_i64_rows(field(p), &rows);
        let (r, pivots) = a.rref();
        prop_assert_eq!(r.rref().0, r.clone());
        prop_assert_eq!(pivots.len(), a.rank());
    }

    #[test]
    fn inverse_is_two_sided(seed in prop::collection::vec(-3i64..=3, 9), p in prop::sample::select(vec![0u64, 7])) {
        let f = field(p);
        let g = invertible(f, 3, &seed);
        let h = g.inverse().unwrap();
        prop_assert_eq!(g.mul(&h), Mat::identity(f, 3));
        prop_assert_eq!(h.mul(&g), Mat::identity(f, 3));
    }

    #[test]
    fn solve_reproduces_right_hand_side(rows in matrix(3, 4), x in matrix(4, 1)) {
        let f = field(0);
        let a = Mat::from_i64_rows(f, &rows);
        let b = a.mul(&Mat::from_i64_rows(f, &x));
        let y = a.solve(&b).unwrap();
        prop_assert_eq!(a.mul(&y), b);
    }

    #[test]
    fn hom_is_additive_in_each_argument(a in 0usize..6, b in 0usize..6, c in 0usize..6) {
        let cat = catalog(3, false, 0);
        let (m, n, x) = (cat.module(IndId(a)), cat.module(IndId(b)), cat.module(IndId(c)));
        let sum = m.direct_sum(n).unwrap();
        prop_assert_eq!(hom_dim(&sum, x).unwrap(), hom_dim(m, x).unwrap() + hom_dim(n, x).unwrap());
        prop_assert_eq!(hom_dim(x, &sum).unwrap(), hom_dim(x, m).unwrap() + hom_dim(x, n).unwrap());
        prop_assert_eq!(hom_dim(m, x).unwrap(), cat.hom(IndId(a), IndId(c)));
    }

    #[test]
    fn decomposition_survives_base_change(
        picks in prop::collection::vec(0usize..5, 1..4),
        seed in prop::collection::vec(-2i64..=2, 12),
        p in prop::sample::select(vec![0u64, 2]),
    ) {
        let cat = catalog(3, true, p);
        let parts: Vec<&Rep> = picks.iter().map(|&i| cat.module(IndId(i))).collect();
        let sum = Rep::direct_sum_all(cat.algebra(), parts).unwrap();
        let moved = base_change(&sum, &seed);
        prop_assert_eq!(decompose(&moved).unwrap().delta(), picks.len());
        let mut expected: Vec<(IndId, usize)> = Vec::new();
        for &i in &picks {
            match expected.iter_mut().find(|(j, _)| j.0 == i) {
                Some(e) => e.1 += 1,
                None => expected.push((IndId(i), 1)),
            }
        }
        expected.sort();
        prop_assert_eq!(cat.identify(&moved).unwrap(), expected);
    }
}
