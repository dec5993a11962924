//! Skew group rings `R # C2` for an order-two involution of `R`, modules
//! with a semilinear twist, and the dihedral identification
//! `QC_n # C2 ≅ QD_2n`.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::{format_rational, Echelon, MatQ, Rational};
use crate::permgrp::{cycle_string, group_from_spec, PermGroup};

/// A finite-dimensional algebra given by its left multiplication matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct FinAlgebra {
    labels: Vec<String>,
    left: Vec<MatQ>,
    unit: Vec<Rational>,
}

fn basis(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

fn combine(mats: &[MatQ], coeffs: &[Rational], n: usize) -> MatQ {
    let mut out = MatQ::zeros(n, n);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = &out + &m.scale(c);
        }
    }
    out
}

impl FinAlgebra {
    /// `left[i]` has column `j` equal to `e_i e_j`.
    pub fn new(labels: Vec<String>, left: Vec<MatQ>, unit: Vec<Rational>) -> Result<Self> {
        let n = labels.len();
        if left.len() != n || unit.len() != n {
            return Err(Error::DimensionMismatch {
                context: "algebra basis",
                expected: n,
                found: left.len(),
            });
        }
        for m in &left {
            if m.shape() != (n, n) {
                return Err(Error::DimensionMismatch {
                    context: "multiplication matrix",
                    expected: n,
                    found: m.rows(),
                });
            }
        }
        let a = FinAlgebra { labels, left, unit };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        if !combine(&self.left, &self.unit, n).is_identity() {
            return Err(Error::InvalidStructure("unit does not act as the identity".into()));
        }
        for i in 0..n {
            if self.left[i].mul_vec(&self.unit) != basis(n, i) {
                return Err(Error::InvalidStructure(format!("e_{i} · 1 ≠ e_{i}")));
            }
            for j in 0..n {
                // L_i L_j = L_{e_i e_j}
                let lhs = &self.left[i] * &self.left[j];
                if lhs != combine(&self.left, &self.left[i].column(j), n) {
                    return Err(Error::InvalidStructure(format!("not associative at ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    /// The group algebra `QG` on the elements of `G` in their stored order.
    pub fn group_algebra(g: &PermGroup) -> Self {
        let n = g.order();
        let left = (0..n)
            .map(|a| {
                let mut m = MatQ::zeros(n, n);
                for x in 0..n {
                    m.set(g.mul(a, x), x, Rational::one());
                }
                m
            })
            .collect();
        let labels = (0..n).map(|x| cycle_string(g.element(x))).collect();
        FinAlgebra {
            labels,
            left,
            unit: basis(n, g.identity()),
        }
    }

    /// `QC_n` on the basis `1, c, …, c^{n−1}`.
    pub fn cyclic(n: usize) -> Self {
        let left = (0..n)
            .map(|k| MatQ::from_fn(n, n, |r, j| if r == (k + j) % n { Rational::one() } else { Rational::zero() }))
            .collect();
        let labels = (0..n).map(|k| format!("c^{k}")).collect();
        FinAlgebra {
            labels,
            left,
            unit: basis(n, 0),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn left_matrix(&self, i: usize) -> &MatQ {
        &self.left[i]
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        combine(&self.left, x, self.dim()).mul_vec(y)
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        self.left[i].column(j)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.left[i].column(j) == self.left[j].column(i)))
    }

    pub fn center_dim(&self) -> usize {
        let n = self.dim();
        let mut ech = Echelon::new(n);
        // x e_j − e_j x = Σ_i x_i (e_i e_j − e_j e_i)
        for j in 0..n {
            for r in 0..n {
                let row: Vec<Rational> = (0..n).map(|i| self.left[i].get(r, j) - self.left[j].get(r, i)).collect();
                ech.insert(&row);
            }
        }
        n - ech.rank()
    }

    /// Whether the linear map `m` (columns = images of basis vectors) is a
    /// unital algebra map into `other`.
    pub fn is_algebra_map(&self, other: &FinAlgebra, m: &MatQ) -> bool {
        if m.shape() != (other.dim(), self.dim()) || m.mul_vec(&self.unit) != other.unit {
            return false;
        }
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| m.mul_vec(&self.product_of_basis(i, j)) == other.mul(&m.column(i), &m.column(j)))
        })
    }
}

/// An order-two algebra automorphism.
#[derive(Clone, Debug)]
pub struct Involution {
    algebra: FinAlgebra,
    matrix: MatQ,
}

impl Involution {
    pub fn new(algebra: FinAlgebra, matrix: MatQ) -> Result<Self> {
        if !(&matrix * &matrix).is_identity() {
            return Err(Error::InvalidStructure("involution does not square to the identity".into()));
        }
        if !algebra.is_algebra_map(&algebra, &matrix) {
            return Err(Error::InvalidStructure("involution is not a ring map".into()));
        }
        Ok(Involution { algebra, matrix })
    }

    pub fn identity(algebra: FinAlgebra) -> Self {
        let n = algebra.dim();
        Involution {
            algebra,
            matrix: MatQ::identity(n),
        }
    }

    /// `c^k ↦ c^{−k}` on `QC_n`.
    pub fn cyclic_inversion(n: usize) -> Self {
        let matrix = MatQ::from_fn(n, n, |r, k| if r == (n - k) % n { Rational::one() } else { Rational::zero() });
        Involution {
            algebra: FinAlgebra::cyclic(n),
            matrix,
        }
    }

    pub fn algebra(&self) -> &FinAlgebra {
        &self.algebra
    }

    pub fn matrix(&self) -> &MatQ {
        &self.matrix
    }

    pub fn apply(&self, r: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(r)
    }
}

/// `R # C2` on the basis `1·r_i` (first half) then `h·r_i`.
#[derive(Clone, Debug)]
pub struct SkewAlgebra {
    pub algebra: FinAlgebra,
    base_dim: usize,
}

impl SkewAlgebra {
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn plain(&self, i: usize) -> usize {
        i
    }

    pub fn twisted(&self, i: usize) -> usize {
        self.base_dim + i
    }
}

pub fn skew_group_ring(w: &Involution) -> Result<SkewAlgebra> {
    let r = &w.algebra;
    let n = r.dim();
    // (h^a r_i)(h^b r_j) = h^{a+b} (w^b(r_i) r_j)
    let left = (0..2 * n)
        .map(|x| {
            let (a, i) = (x / n, x % n);
            let mut m = MatQ::zeros(2 * n, 2 * n);
            for y in 0..2 * n {
                let (b, j) = (y / n, y % n);
                let ri = basis(n, i);
                let twisted = if b == 1 { w.apply(&ri) } else { ri };
                let prod = r.mul(&twisted, &basis(n, j));
                let half = (a + b) % 2;
                for (t, v) in prod.into_iter().enumerate() {
                    m.set(half * n + t, y, v);
                }
            }
            m
        })
        .collect();
    let labels = r
        .labels()
        .iter()
        .cloned()
        .chain(r.labels().iter().map(|l| format!("h·{l}")))
        .collect();
    let mut unit = r.unit().to_vec();
    unit.extend(std::iter::repeat_n(Rational::zero(), n));
    let algebra = FinAlgebra::new(labels, left, unit)?;
    Ok(SkewAlgebra { algebra, base_dim: n })
}

#[derive(Clone, Debug, Serialize)]
pub struct DihedralReport {
    pub n: usize,
    pub dim: usize,
    pub verified: bool,
    /// `QC_n # C2` basis labels, in column order of the iso.
    pub source_labels: Vec<String>,
    /// `QD_2n` element labels, in row order of the iso.
    pub target_labels: Vec<String>,
    /// Column `x` is the image of the `x`-th skew basis element.
    #[serde(serialize_with = "serialize_matrix")]
    pub iso: MatQ,
}

fn serialize_matrix<S: serde::Serializer>(m: &MatQ, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.rows()))?;
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(format_rational).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

/// A rotation of order `n` and a reflection inverting it that together
/// generate `D_2n`.
fn dihedral_generators(d: &PermGroup, n: usize) -> Option<(usize, usize)> {
    let els = 0..d.order();
    for rho in els.clone().filter(|&x| d.element_order(x) == n) {
        let rotations: Vec<usize> = std::iter::successors(Some(d.identity()), |&x| Some(d.mul(x, rho)))
            .take(n)
            .collect();
        for tau in els.clone() {
            if d.element_order(tau) != 2 || rotations.contains(&tau) {
                continue;
            }
            if d.mul(d.mul(tau, rho), tau) == d.inv(rho) {
                return Some((rho, tau));
            }
        }
    }
    None
}

/// Builds `QC_n # C2` with inversion and `QD_2n`, and checks that
/// `c^k ↦ ρ^k`, `h·c^k ↦ τρ^k` is a unital algebra isomorphism.
pub fn dihedral_iso_check(n: usize) -> Result<DihedralReport> {
    if n == 0 {
        return Err(Error::InvalidStructure("dihedral check needs n ≥ 1".into()));
    }
    let d = Arc::new(group_from_spec(&format!("D{}", 2 * n))?);
    let skew = skew_group_ring(&Involution::cyclic_inversion(n))?;
    let target = FinAlgebra::group_algebra(&d);
    let (rho, tau) = dihedral_generators(&d, n)
        .ok_or_else(|| Error::InvalidStructure(format!("no dihedral generators in D{}", 2 * n)))?;
    let mut iso = MatQ::zeros(2 * n, 2 * n);
    let mut power = d.identity();
    for k in 0..n {
        iso.set(power, skew.plain(k), Rational::one());
        iso.set(d.mul(tau, power), skew.twisted(k), Rational::one());
        power = d.mul(power, rho);
    }
    let verified = iso.is_invertible() && skew.algebra.is_algebra_map(&target, &iso);
    Ok(DihedralReport {
        n,
        dim: 2 * n,
        verified,
        source_labels: skew.algebra.labels().to_vec(),
        target_labels: target.labels().to_vec(),
        iso,
    })
}

/// Dimension of the space of linear maps `f` with `f A_i = B_i f` for all `i`.
pub fn intertwiner_dim(source: &[MatQ], target: &[MatQ], source_dim: usize, target_dim: usize) -> usize {
    let unknowns = source_dim * target_dim;
    let mut ech = Echelon::new(unknowns);
    // f[r][c] at r * source_dim + c
    for (a, b) in source.iter().zip(target) {
        for r in 0..target_dim {
            for c in 0..source_dim {
                let mut row = vec![Rational::zero(); unknowns];
                for t in 0..source_dim {
                    let x = a.get(t, c);
                    if !x.is_zero() {
                        row[r * source_dim + t] += x;
                    }
                }
                for t in 0..target_dim {
                    let x = b.get(r, t);
                    if !x.is_zero() {
                        row[t * source_dim + c] -= x;
                    }
                }
                ech.insert(&row);
            }
        }
    }
    unknowns - ech.rank()
}

fn check_module(algebra: &FinAlgebra, dim: usize, action: &[MatQ]) -> Result<()> {
    let n = algebra.dim();
    if action.len() != n || action.iter().any(|m| m.shape() != (dim, dim)) {
        return Err(Error::DimensionMismatch {
            context: "module action",
            expected: n,
            found: action.len(),
        });
    }
    if !combine(action, algebra.unit(), dim).is_identity() {
        return Err(Error::InvalidStructure("unit does not act as the identity".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if &action[i] * &action[j] != combine(action, &algebra.product_of_basis(i, j), dim) {
                return Err(Error::InvalidStructure(format!("action is not multiplicative at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

/// An `R`-module with an order-two map `u` satisfying `u(r m) = w(r) u(m)`.
#[derive(Clone, Debug)]
pub struct TwistedModule {
    involution: Involution,
    dim: usize,
    action: Vec<MatQ>,
    twist: MatQ,
}

impl TwistedModule {
    pub fn new(involution: Involution, action: Vec<MatQ>, twist: MatQ) -> Result<Self> {
        let dim = twist.rows();
        let r = &involution.algebra;
        check_module(r, dim, &action)?;
        if !twist.is_square() || !(&twist * &twist).is_identity() {
            return Err(Error::InvalidStructure("twist does not square to the identity".into()));
        }
        for i in 0..r.dim() {
            let wi = involution.apply(&basis(r.dim(), i));
            if &twist * &action[i] != &combine(&action, &wi, dim) * &twist {
                return Err(Error::InvalidStructure(format!("twist is not semilinear at basis element {i}")));
            }
        }
        Ok(TwistedModule {
            involution,
            dim,
            action,
            twist,
        })
    }

    /// `R` acting on itself with `u = w`.
    pub fn regular(involution: Involution) -> Self {
        let r = &involution.algebra;
        let action = (0..r.dim()).map(|i| r.left_matrix(i).clone()).collect();
        TwistedModule {
            dim: r.dim(),
            twist: involution.matrix.clone(),
            action,
            involution,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn involution(&self) -> &Involution {
        &self.involution
    }

    pub fn action(&self) -> &[MatQ] {
        &self.action
    }

    pub fn twist(&self) -> &MatQ {
        &self.twist
    }

    /// Generators of the structure: the `R`-action followed by the twist.
    fn operators(&self) -> Vec<MatQ> {
        let mut ops = self.action.clone();
        ops.push(self.twist.clone());
        ops
    }
}

/// A module over `R # C2`, one matrix per skew basis element.
#[derive(Clone, Debug)]
pub struct SkewModule {
    algebra: SkewAlgebra,
    dim: usize,
    action: Vec<MatQ>,
}

impl SkewModule {
    pub fn new(algebra: SkewAlgebra, dim: usize, action: Vec<MatQ>) -> Result<Self> {
        check_module(&algebra.algebra, dim, &action)?;
        Ok(SkewModule { algebra, dim, action })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[MatQ] {
        &self.action
    }

    pub fn algebra(&self) -> &SkewAlgebra {
        &self.algebra
    }
}

/// `r` acts as before and `h·r` acts as `u ∘ r`.
pub fn twist_to_skew(m: &TwistedModule) -> Result<SkewModule> {
    let algebra = skew_group_ring(&m.involution)?;
    let mut action = m.action.clone();
    action.extend(m.action.iter().map(|a| &m.twist * a));
    SkewModule::new(algebra, m.dim, action)
}

pub fn skew_to_twist(m: &SkewModule, involution: &Involution) -> Result<TwistedModule> {
    let n = m.algebra.base_dim;
    if involution.algebra.dim() != n {
        return Err(Error::DimensionMismatch {
            context: "skew base algebra",
            expected: n,
            found: involution.algebra.dim(),
        });
    }
    let action = m.action[..n].to_vec();
    let twist = combine(&m.action[n..], involution.algebra.unit(), m.dim);
    TwistedModule::new(involution.clone(), action, twist)
}

/// `dim Hom(M, N)` of twisted modules: `R`-linear maps commuting with the twists.
pub fn twisted_hom_dim(m: &TwistedModule, n: &TwistedModule) -> usize {
    intertwiner_dim(&m.operators(), &n.operators(), m.dim, n.dim)
}

pub fn skew_hom_dim(m: &SkewModule, n: &SkewModule) -> usize {
    intertwiner_dim(&m.action, &n.action, m.dim, n.dim)
}

/// `M ⊗_R N` over commutative `R`, with `R` acting through the left factor
/// and twist induced by `u ⊗ v`.
pub fn twisted_tensor(m: &TwistedModule, n: &TwistedModule) -> Result<TwistedModule> {
    let r = &m.involution.algebra;
    if !r.is_commutative() {
        return Err(Error::InvalidStructure("twisted tensor needs a commutative algebra".into()));
    }
    if r != &n.involution.algebra || m.involution.matrix != n.involution.matrix {
        return Err(Error::InvalidStructure("twisted modules over different involutions".into()));
    }
    let (dm, dn) = (m.dim, n.dim);
    let total = dm * dn;
    let ident_m = MatQ::identity(dm);
    let ident_n = MatQ::identity(dn);
    // relations r m ⊗ n − m ⊗ r n, spanned by the columns of A_M(e_i) ⊗ 1 − 1 ⊗ A_N(e_i)
    let mut rel = Echelon::new(total);
    for i in 0..r.dim() {
        let diff = &m.action[i].kronecker(&ident_n) - &ident_m.kronecker(&n.action[i]);
        for c in 0..total {
            rel.insert(&diff.column(c));
        }
    }
    let complement = rel.complement();
    let q = complement.len();
    let induce = |op: &MatQ| -> Result<MatQ> {
        for v in rel.basis() {
            if !rel.contains(&op.mul_vec(&v)) {
                return Err(Error::InvalidStructure("operator does not preserve the tensor relations".into()));
            }
        }
        let mut out = MatQ::zeros(q, q);
        for (k, &c) in complement.iter().enumerate() {
            let img = op.column(c);
            for (t, v) in rel.quotient_coords(&img, &complement).into_iter().enumerate() {
                out.set(t, k, v);
            }
        }
        Ok(out)
    };
    let action = m
        .action
        .iter()
        .map(|a| induce(&a.kronecker(&ident_n)))
        .collect::<Result<Vec<_>>>()?;
    let twist = induce(&m.twist.kronecker(&n.twist))?;
    TwistedModule::new(m.involution.clone(), action, twist)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_skew_rings() {
        let q = FinAlgebra::cyclic(1);
        let s = skew_group_ring(&Involution::identity(q)).unwrap();
        assert_eq!(s.algebra.dim(), 2);
        assert!(s.algebra.is_commutative());
        let s3 = skew_group_ring(&Involution::cyclic_inversion(3)).unwrap();
        assert_eq!(s3.algebra.dim(), 6);
        assert_eq!(s3.algebra.center_dim(), 3);
        assert!(!s3.algebra.is_commutative());
    }

    #[test]
    fn non_involutions_rejected() {
        let r = FinAlgebra::cyclic(3);
        let shift = MatQ::permutation(&[1, 2, 0]);
        assert!(Involution::new(r.clone(), shift).is_err());
        let swap = MatQ::permutation(&[0, 2, 1]);
        assert!(Involution::new(r, swap).is_ok());
    }

    #[test]
    fn dihedral_small() {
        for n in 1..=4 {
            let r = dihedral_iso_check(n).unwrap();
            assert!(r.verified, "n = {n}");
            assert_eq!(r.dim, 2 * n);
        }
    }

    #[test]
    fn regular_twisted_module() {
        let w = Involution::cyclic_inversion(3);
        let m = TwistedModule::regular(w.clone());
        let s = twist_to_skew(&m).unwrap();
        assert_eq!(s.dim(), 3);
        let back = skew_to_twist(&s, &w).unwrap();
        assert_eq!(back.action(), m.action());
        assert_eq!(back.twist(), m.twist());
        assert_eq!(twisted_hom_dim(&m, &m), skew_hom_dim(&s, &s));
        let t = twisted_tensor(&m, &m).unwrap();
        assert_eq!(t.dim(), 3);
        let bad = TwistedModule::new(w, m.action().to_vec(), MatQ::identity(3));
        assert!(bad.is_err());
    }
}
