use proptest::prelude::*;
use ratmodel::exactq::{frac, Echelon, MatQ};

fn mat(max: usize) -> impl Strategy<Value = MatQ> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec((-4i64..=4, 1i64..=3), r * c).prop_map(move |v| {
            let data = v.into_iter().map(|(n, d)| frac(n, d)).collect();
            MatQ::from_vec(r, c, data).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn rank_nullity(m in mat(6)) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!((&m * &k).is_zero());
    }

    #[test]
    fn rank_of_transpose(m in mat(6)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn inverse_when_full_rank(m in mat(5)) {
        let sq = MatQ::from_fn(m.rows(), m.rows(), |r, c| m.get(r, c % m.cols()).clone());
        match sq.inverse() {
            Some(inv) => {
                prop_assert!((&sq * &inv).is_identity());
                prop_assert_eq!(sq.rank(), sq.rows());
            }
            None => prop_assert!(sq.rank() < sq.rows()),
        }
    }

    #[test]
    fn solve_reproduces_rhs(m in mat(5), x in mat(5)) {
        let x = MatQ::from_fn(m.cols(), x.cols(), |r, c| x.get(r % x.rows(), c).clone());
        let b = &m * &x;
        let y = m.solve_exact(&b).unwrap().expect("b is in the column space");
        prop_assert_eq!(&m * &y, b);
    }

    #[test]
    fn echelon_rank_matches_dense(m in mat(6)) {
        let mut e = Echelon::new(m.rows());
        for c in m.columns() {
            e.insert(&c);
        }
        prop_assert_eq!(e.rank(), m.rank());
        for c in m.columns() {
            prop_assert!(e.contains(&c));
        }
    }

    #[test]
    fn kronecker_mixed_product(a in mat(3), b in mat(3)) {
        let at = a.transpose();
        let bt = b.transpose();
        let lhs = &a.kronecker(&b) * &at.kronecker(&bt);
        let rhs = (&a * &at).kronecker(&(&b * &bt));
        prop_assert_eq!(lhs, rhs);
    }
}
