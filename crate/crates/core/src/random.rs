//! Seeded generators of random test inputs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dgmod::DGModule;
use crate::error::Result;
use crate::exactq::{rat, MatQ};
use crate::permgrp::GroupRef;
use crate::ringoid::{build_ea, change_basis, square_zero_extension, DGCategory};
use crate::skew::{Involution, TwistedModule};

/// `Π · L · U` with small integer entries, hence invertible over `Q`.
pub fn random_invertible(n: usize, rng: &mut impl Rng) -> MatQ {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let lower = MatQ::from_fn(n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Greater => rat(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Equal => rat(1),
        std::cmp::Ordering::Less => rat(0),
    });
    let upper = MatQ::from_fn(n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Less => rat(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Equal => rat(if rng.gen_bool(0.5) { 1 } else { -1 }),
        std::cmp::Ordering::Greater => rat(0),
    });
    &(&MatQ::permutation(&perm) * &lower) * &upper
}

/// A signed permutation followed by `n` random elementary shears; its inverse
/// stays sparse, which keeps transported composition tables small.
pub fn random_sparse_invertible(n: usize, rng: &mut impl Rng) -> MatQ {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = MatQ::permutation(&perm);
    for r in 0..n {
        if rng.gen_bool(0.5) {
            for c in 0..n {
                let x = -m.get(r, c).clone();
                m.set(r, c, x);
            }
        }
    }
    for _ in 0..n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b {
            continue;
        }
        let k = rat(*[-2, -1, 1, 2].choose(rng).unwrap());
        // row a += k · row b
        for c in 0..n {
            let x = m.get(a, c) + &k * m.get(b, c);
            m.set(a, c, x);
        }
    }
    m
}

/// Irreducible pieces of a `QC2` complex before mixing: a representation
/// (`+1` trivial, `−1` sign) placed in one degree or as a contractible pair.
fn c2_piece(group: &GroupRef, degree: i32, sign: i64, contractible: bool) -> Result<DGModule> {
    let g = group.generator_indices()[0];
    let act: Vec<MatQ> = (0..group.order())
        .map(|x| MatQ::scalar(rat(if x == g { sign } else { 1 })))
        .collect();
    if !contractible {
        return DGModule::concentrated(group.clone(), degree, act);
    }
    DGModule::new(
        group.clone(),
        degree - 1,
        vec![1, 1],
        vec![MatQ::zeros(0, 1), MatQ::identity(1)],
        vec![act.clone(), act],
    )
}

/// A bounded complex of `QC2`-modules in degrees `[−3, 5]` with at most
/// `max_dim` dimensions per degree, in a random basis.
pub fn random_qc2_complex(group: &GroupRef, max_dim: usize, rng: &mut impl Rng) -> Result<DGModule> {
    assert_eq!(group.order(), 2, "random_qc2_complex needs C2");
    let mut dims = [0usize; 9];
    let mut parts = Vec::new();
    for _ in 0..rng.gen_range(1..=5) {
        let contractible = rng.gen_bool(0.4);
        let degree = if contractible { rng.gen_range(-2..=5) } else { rng.gen_range(-3..=5) };
        let slots: Vec<usize> = if contractible {
            vec![(degree + 2) as usize, (degree + 3) as usize]
        } else {
            vec![(degree + 3) as usize]
        };
        if slots.iter().any(|&s| dims[s] >= max_dim) {
            continue;
        }
        for s in slots {
            dims[s] += 1;
        }
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        parts.push(c2_piece(group, degree, sign, contractible)?.padded(-3, 5));
    }
    if parts.is_empty() {
        parts.push(c2_piece(group, 0, 1, false)?.padded(-3, 5));
    }
    let refs: Vec<&DGModule> = parts.iter().collect();
    let sum = DGModule::direct_sum(&refs)?;
    let changes: Vec<MatQ> = sum.dims().iter().map(|&d| random_invertible(d, rng)).collect();
    sum.change_basis(&changes)
}

/// A complex over the trivial group in degrees `≥ 1`. Acyclic tails are sums
/// of contractible pairs; otherwise a class in degree 1 is added.
pub fn random_tail(acyclic: bool, rng: &mut impl Rng) -> Result<DGModule> {
    let mut parts = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let top = rng.gen_range(2..=3);
        let pair = DGModule::over_trivial(top - 1, vec![1, 1], vec![MatQ::zeros(0, 1), MatQ::identity(1)])?;
        parts.push(pair.padded(1, 3));
    }
    if !acyclic {
        parts.push(DGModule::over_trivial(1, vec![1], vec![MatQ::zeros(0, 1)])?.padded(1, 3));
    }
    let refs: Vec<&DGModule> = parts.iter().collect();
    let m = DGModule::direct_sum(&refs)?;
    let changes: Vec<MatQ> = m.dims().iter().map(|&d| random_invertible(d, rng)).collect();
    Ok(m.change_basis(&changes)?.trimmed())
}

/// `E_a(W, k) ⊗ (Q ⊕ D)` in a random basis of every hom complex.
pub fn random_extension(group: &GroupRef, max_power: usize, acyclic: bool, rng: &mut impl Rng) -> Result<DGCategory> {
    let base = build_ea(group.clone(), max_power)?;
    let tail = random_tail(acyclic, rng)?;
    let ext = square_zero_extension(base.category(), &tail)?;
    let changes: Vec<Vec<MatQ>> = ext
        .homs()
        .iter()
        .map(|h| h.dims().iter().map(|&d| random_sparse_invertible(d, rng)).collect())
        .collect();
    change_basis(&ext, &changes)
}

/// A twisted `QC3`-module: a sum of `(QC3, ±w)` and `(Q, ±1)` in a random basis.
pub fn random_twisted_qc3(rng: &mut impl Rng) -> Result<TwistedModule> {
    let w = Involution::cyclic_inversion(3);
    let mut actions: Vec<Vec<MatQ>> = vec![Vec::new(); 3];
    let mut twists = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let sign = rat(if rng.gen_bool(0.5) { 1 } else { -1 });
        if rng.gen_bool(0.5) {
            let reg = TwistedModule::regular(w.clone());
            for (i, a) in reg.action().iter().enumerate() {
                actions[i].push(a.clone());
            }
            twists.push(reg.twist().scale(&sign));
        } else {
            for a in actions.iter_mut() {
                a.push(MatQ::identity(1));
            }
            twists.push(MatQ::scalar(sign));
        }
    }
    let block = |ms: &[MatQ]| MatQ::block_diag(&ms.iter().collect::<Vec<_>>());
    let twist = block(&twists);
    let p = random_invertible(twist.rows(), rng);
    let pinv = p.inverse().expect("invertible by construction");
    let conj = |m: &MatQ| &(&p * m) * &pinv;
    let action = actions.iter().map(|a| conj(&block(a))).collect();
    TwistedModule::new(w, action, conj(&twist))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgmod::homology;
    use crate::permgrp::group_from_spec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn generators_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c2 = Arc::new(group_from_spec("C2").unwrap());
        for _ in 0..10 {
            let m = random_qc2_complex(&c2, 4, &mut rng).unwrap();
            m.validate().unwrap();
            assert!(m.dims().iter().all(|&d| d <= 4));
            random_twisted_qc3(&mut rng).unwrap();
        }
        for acyclic in [true, false] {
            let t = random_tail(acyclic, &mut rng).unwrap();
            let h = homology(&t);
            assert_eq!(h.rep.is_zero(), acyclic);
            assert!(t.lo() >= 1);
        }
    }
}
