use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ratmodel::dgmod::{chain_map_dim, hom_complex, homology, tensor, DGModule};
use ratmodel::json::{complex_from_str, complex_to_string};
use ratmodel::permgrp::{group_from_spec, GroupRef};
use ratmodel::random::random_qc2_complex;

fn c2() -> GroupRef {
    Arc::new(group_from_spec("C2").unwrap())
}

fn complex(seed: u64) -> DGModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_qc2_complex(&c2(), 3, &mut rng).unwrap()
}

fn total_homology(m: &DGModule) -> Vec<(i32, usize)> {
    homology(m).rep.graded_dims().into_iter().filter(|&(_, d)| d > 0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn differentials_square_to_zero(seed in any::<u64>()) {
        let m = complex(seed);
        for n in m.degrees() {
            prop_assert!((&m.d(n) * &m.d(n + 1)).is_zero());
        }
    }

    #[test]
    fn kunneth_over_q(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (complex(a), complex(b));
        let t = tensor(&x, &y).unwrap();
        t.validate().unwrap();
        let (hx, hy) = (total_homology(&x), total_homology(&y));
        let mut expect = std::collections::BTreeMap::new();
        for &(p, dp) in &hx {
            for &(q, dq) in &hy {
                *expect.entry(p + q).or_insert(0) += dp * dq;
            }
        }
        let got: std::collections::BTreeMap<i32, usize> = total_homology(&t).into_iter().collect();
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn tensor_hom_adjunction_dims(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (x, y, z) = (complex(a), complex(b), complex(c));
        let lhs = chain_map_dim(&tensor(&x, &y).unwrap(), &z).unwrap();
        let rhs = chain_map_dim(&x, &hom_complex(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_roundtrip(seed in any::<u64>()) {
        let m = complex(seed);
        let s = complex_to_string(&m);
        prop_assert_eq!(complex_to_string(&complex_from_str(&s).unwrap()), s);
    }
}
