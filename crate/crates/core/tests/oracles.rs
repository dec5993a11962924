use std::collections::BTreeSet;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ratmodel::dgmod::{homology, rep_iso, DGModule};
use ratmodel::permgrp::{group_from_spec, GroupRef};
use ratmodel::random::random_twisted_qc3;
use ratmodel::ringoid::build_ea;
use ratmodel::ringoidmod::{free_module, module_to_morita, morita_to_module};
use ratmodel::skew::{
    dihedral_iso_check, skew_group_ring, skew_hom_dim, twist_to_skew, twisted_hom_dim, twisted_tensor, Involution,
    TwistedModule,
};

fn grp(spec: &str) -> GroupRef {
    Arc::new(group_from_spec(spec).unwrap())
}

/// Orbits of `W` acting diagonally by left multiplication on `W^i`.
fn diagonal_orbits(w: &GroupRef, i: usize) -> usize {
    let n = w.order();
    let tuples: Vec<Vec<usize>> = (0..n.pow(i as u32))
        .map(|mut x| {
            (0..i)
                .map(|_| {
                    let d = x % n;
                    x /= n;
                    d
                })
                .collect()
        })
        .collect();
    let orbits: BTreeSet<BTreeSet<Vec<usize>>> = tuples
        .iter()
        .map(|t| (0..n).map(|g| t.iter().map(|&x| w.mul(g, x)).collect()).collect())
        .collect();
    orbits.len()
}

#[test]
fn adjoint_of_trivial_module_counts_orbits() {
    for (spec, k) in [("C2", 2), ("C3", 2), ("S3", 1)] {
        let w = grp(spec);
        let base = build_ea(w.clone(), k).unwrap();
        let adj = module_to_morita(&base, &DGModule::unit(w.clone())).unwrap();
        for i in 0..=k {
            assert_eq!(adj.module.dim(i), diagonal_orbits(&w, i), "{spec} σ{i}");
        }
    }
}

#[test]
fn image_of_free_module_is_regular() {
    for (spec, k) in [("C2", 2), ("C3", 1), ("S3", 1)] {
        let w = grp(spec);
        let base = build_ea(w.clone(), k).unwrap();
        let image = morita_to_module(&base, &free_module(&base.shared_category(), 1).unwrap()).unwrap();
        let regular = DGModule::regular(w.clone());
        let iso = rep_iso(&homology(&image.module).rep, &homology(&regular).rep).unwrap();
        assert!(iso.is_some(), "{spec}");
    }
}

/// Conjugacy classes of `D_2n` from the multiplication rule on pairs
/// `h^a c^i`, independent of any permutation realisation.
fn dihedral_classes(n: usize) -> usize {
    let mul = |(a, i): (usize, usize), (b, j): (usize, usize)| {
        let i = if b == 1 { (n - i) % n } else { i };
        ((a + b) % 2, (i + j) % n)
    };
    let inv = |x: (usize, usize)| {
        let all = (0..2).flat_map(|a| (0..n).map(move |i| (a, i)));
        all.clone().find(|&y| mul(x, y) == (0, 0)).unwrap()
    };
    let elems: Vec<(usize, usize)> = (0..2).flat_map(|a| (0..n).map(move |i| (a, i))).collect();
    let classes: BTreeSet<BTreeSet<(usize, usize)>> = elems
        .iter()
        .map(|&x| elems.iter().map(|&g| mul(mul(g, x), inv(g))).collect())
        .collect();
    classes.len()
}

#[test]
fn skew_ring_center_is_class_count() {
    for n in 1..=7 {
        let s = skew_group_ring(&Involution::cyclic_inversion(n)).unwrap();
        assert_eq!(s.algebra.dim(), 2 * n);
        assert_eq!(s.algebra.center_dim(), dihedral_classes(n), "n = {n}");
        assert_eq!(s.algebra.is_commutative(), n <= 2);
    }
}

#[test]
fn dihedral_isos_verify() {
    for n in 1..=8 {
        let r = dihedral_iso_check(n).unwrap();
        assert!(r.verified, "n = {n}");
        assert_eq!(r.dim, 2 * n);
    }
}

#[test]
fn twisted_tensor_of_regular_modules() {
    let w = Involution::cyclic_inversion(3);
    let reg = TwistedModule::regular(w.clone());
    let t = twisted_tensor(&reg, &reg).unwrap();
    assert_eq!(t.dim(), 3);
    assert_eq!(twisted_hom_dim(&t, &reg), twisted_hom_dim(&reg, &reg));
}

#[test]
fn hom_dims_agree_across_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..10 {
        let m = random_twisted_qc3(&mut rng).unwrap();
        let n = random_twisted_qc3(&mut rng).unwrap();
        let (sm, sn) = (twist_to_skew(&m).unwrap(), twist_to_skew(&n).unwrap());
        assert_eq!(twisted_hom_dim(&m, &n), skew_hom_dim(&sm, &sn));
    }
}
