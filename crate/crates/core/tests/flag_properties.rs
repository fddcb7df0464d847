use kyfan_core::flag::{
    build_flag, build_flag_with_cap, closed_face_meets_plane, cramer_dependency, face_meets_plane, random_points, verify_condition3,
    GenericFlag, SignVector,
};
use kyfan_core::linalg::Matrix;
use kyfan_core::{Flag, Rational, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == size).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

fn sign_changes(v: &[Rational]) -> usize {
    let signs: Vec<bool> = v.iter().filter(|x| **x != q(0, 1)).map(|x| *x > q(0, 1)).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn rational_matrix() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1usize..=6).prop_flat_map(|d| {
        prop::collection::vec(prop::collection::vec((-9i64..=9, 1i64..=5).prop_map(|(a, b)| q(a, b)), d), d + 1)
    })
}

proptest! {
    #[test]
    fn cramer_gives_a_dependency(cols in rational_matrix()) {
        let mu = cramer_dependency(&cols).unwrap();
        let d = cols[0].len();
        for r in 0..d {
            let s = cols.iter().zip(&mu).fold(q(0, 1), |acc, (c, m)| acc + c[r].clone() * m.clone());
            prop_assert_eq!(s, q(0, 1));
        }
        // zero exactly when every maximal minor vanishes
        let rank = Matrix::from_columns(&cols).rank();
        prop_assert_eq!(mu.iter().all(|m| *m == q(0, 1)), rank < d);
    }

    #[test]
    fn kernel_vectors_change_sign_often(coeffs in prop::collection::vec(-5i64..=5, 1..=4), n in 3usize..=6) {
        let j = (coeffs.len() - 1).min(n - 2);
        // genericity is checked by the other tests; skip it here
        let flag: Flag = build_flag_with_cap(n, j, None, 0).unwrap();
        let basis = flag.matrix(j).kernel_basis();
        let mut v = vec![q(0, 1); n];
        for (c, b) in coeffs.iter().cycle().zip(&basis) {
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = vi.clone() + q(*c, 1) * bi.clone();
            }
        }
        if v.iter().any(|x| *x != q(0, 1)) {
            prop_assert!(sign_changes(&v) > j);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn random_points_are_generic(seed in any::<u64>()) {
        let x = random_points(5, &mut ChaCha8Rng::seed_from_u64(seed));
        let flag = GenericFlag::new(3, x).unwrap();
        for j in 0..=3 {
            prop_assert!(verify_condition3(&flag, j).is_empty());
        }
    }
}

#[test]
fn circuits_alternate() {
    for n in 2..=6 {
        let flag: Flag = build_flag(n, n - 2, None).unwrap();
        for j in 0..=n - 2 {
            for s in subsets(n, j + 2) {
                let cols: Vec<Vec<Rational>> = s.iter().map(|i| flag.column(j, *i)).collect();
                let mu = cramer_dependency(&cols).unwrap();
                assert!(mu.iter().all(|m| *m != q(0, 1)), "zero in circuit {s:?}");
                assert_eq!(sign_changes(&mu), j + 1, "circuit {s:?} at level {j}");
                // the circuit's sign pattern is a face meeting e_j
                let mut entries = vec![0i8; n];
                for (i, m) in s.iter().zip(&mu) {
                    entries[*i] = if *m > q(0, 1) { 1 } else { -1 };
                }
                assert!(face_meets_plane(&SignVector::new(entries).unwrap(), &flag, j));
            }
            // smaller supports never meet
            for s in subsets(n, j + 1) {
                let entries = (0..n).map(|i| if s.contains(&i) { 1 } else { 0 }).collect();
                assert!(!face_meets_plane(&SignVector::new(entries).unwrap(), &flag, j));
            }
        }
    }
}

#[test]
fn negation_and_nesting() {
    let flag: Flag = build_flag(5, 3, None).unwrap();
    for face in SignVector::all_faces(5) {
        for j in 0..=3 {
            assert_eq!(face_meets_plane(&face, &flag, j), face_meets_plane(&face.negated(), &flag, j));
            if j < 3 && closed_face_meets_plane(&face, &flag, j + 1) {
                assert!(closed_face_meets_plane(&face, &flag, j), "{face} at level {j}");
            }
        }
    }
}

#[test]
fn float_and_rational_flags_agree() {
    let exact: Flag = build_flag(4, 2, None).unwrap();
    let approx: GenericFlag<f64> = build_flag(4, 2, None).unwrap();
    for face in SignVector::all_faces(4) {
        for j in 0..=2 {
            assert_eq!(face_meets_plane(&face, &exact, j), face_meets_plane(&face, &approx, j), "{face} {j}");
        }
    }
    const { assert!(!f64::EXACT && Rational::EXACT) };
}
