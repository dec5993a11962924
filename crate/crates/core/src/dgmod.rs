//! Bounded chain complexes of `QG`-modules.
//!
//! A [`DGModule`] lives in degrees `lo..=hi`; `d(n)` maps degree `n` to
//! degree `n - 1` and is stored as a `dim(n-1) × dim(n)` matrix. The group
//! acts through one matrix per element and per degree.
//!
//! Sign conventions:
//! * tensor: `d(m ⊗ n) = dm ⊗ n + (-1)^{|m|} m ⊗ dn`, diagonal action;
//! * hom: `d(f) = d_N ∘ f - (-1)^{|f|} f ∘ d_M`, action `g·f = g ∘ f ∘ g⁻¹`;
//! * a map `f ∈ Hom(M_p, N_q)` is vectorised row-major, index `r·dim M_p + c`.

use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactq::{rat, Coordinates, Echelon, MatQ, Rational};
use crate::permgrp::{GroupRef, PermGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGModule {
    group: GroupRef,
    lo: i32,
    dims: Vec<usize>,
    diffs: Vec<MatQ>,
    actions: Vec<Vec<MatQ>>,
}

pub fn trivial_group() -> GroupRef {
    static TRIVIAL: OnceLock<GroupRef> = OnceLock::new();
    TRIVIAL
        .get_or_init(|| Arc::new(PermGroup::trivial().with_name("C1")))
        .clone()
}

pub(crate) fn same_group(a: &GroupRef, b: &GroupRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl DGModule {
    /// Validated constructor. `diffs[k]` is `d(lo + k)` and `actions[k][g]`
    /// the action of element `g` in degree `lo + k`.
    pub fn new(
        group: GroupRef,
        lo: i32,
        dims: Vec<usize>,
        diffs: Vec<MatQ>,
        actions: Vec<Vec<MatQ>>,
    ) -> Result<Self> {
        let m = DGModule {
            group,
            lo,
            dims,
            diffs,
            actions,
        };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        group: GroupRef,
        lo: i32,
        dims: Vec<usize>,
        diffs: Vec<MatQ>,
        actions: Vec<Vec<MatQ>>,
    ) -> Self {
        DGModule {
            group,
            lo,
            dims,
            diffs,
            actions,
        }
    }

    /// Complex over the trivial group.
    pub fn over_trivial(lo: i32, dims: Vec<usize>, diffs: Vec<MatQ>) -> Result<Self> {
        let actions = dims.iter().map(|_| Vec::new()).collect();
        Self::new(trivial_group(), lo, dims, diffs, actions)
    }

    pub(crate) fn over_trivial_unchecked(lo: i32, dims: Vec<usize>, diffs: Vec<MatQ>) -> Self {
        let actions = dims.iter().map(|_| Vec::new()).collect();
        Self::new_unchecked(trivial_group(), lo, dims, diffs, actions)
    }

    pub fn zero(group: GroupRef) -> Self {
        DGModule {
            group,
            lo: 0,
            dims: Vec::new(),
            diffs: Vec::new(),
            actions: Vec::new(),
        }
    }

    /// A single representation placed in one degree.
    pub fn concentrated(group: GroupRef, degree: i32, action: Vec<MatQ>) -> Result<Self> {
        let dim = action.first().map_or(0, MatQ::rows);
        Self::new(group, degree, vec![dim], vec![MatQ::zeros(0, dim)], vec![action])
    }

    /// `Q` with trivial action in degree 0.
    pub fn unit(group: GroupRef) -> Self {
        Self::trivial_rep(group, 0, 1)
    }

    pub fn trivial_rep(group: GroupRef, degree: i32, dim: usize) -> Self {
        let action = vec![MatQ::identity(dim); group.order()];
        Self::new_unchecked(group, degree, vec![dim], vec![MatQ::zeros(0, dim)], vec![action])
    }

    /// `QG` with the left regular action, basis in element order.
    pub fn regular(group: GroupRef) -> Self {
        let n = group.order();
        let action = (0..n)
            .map(|g| MatQ::permutation(&(0..n).map(|x| group.mul(g, x)).collect::<Vec<_>>()))
            .collect();
        Self::new_unchecked(group, 0, vec![n], vec![MatQ::zeros(0, n)], vec![action])
    }

    /// Permutation module in degree 0; `images[g][x]` is `g·x`.
    pub fn permutation_module(group: GroupRef, images: &[Vec<usize>]) -> Result<Self> {
        let action = images.iter().map(|p| MatQ::permutation(p)).collect();
        Self::concentrated(group, 0, action)
    }

    /// One-dimensional representation given by its character values.
    pub fn one_dimensional(group: GroupRef, degree: i32, character: &[i64]) -> Result<Self> {
        let action = character.iter().map(|&c| MatQ::scalar(rat(c))).collect();
        Self::concentrated(group, degree, action)
    }

    pub fn validate(&self) -> Result<()> {
        let len = self.dims.len();
        if self.diffs.len() != len || self.actions.len() != len {
            return Err(Error::InvalidStructure(
                "dims, differentials and actions disagree on the degree range".into(),
            ));
        }
        let order = self.group.order();
        for k in 0..len {
            let n = self.lo + k as i32;
            let d = &self.diffs[k];
            if d.shape() != (self.dim(n - 1), self.dim(n)) {
                return Err(Error::InvalidStructure(format!(
                    "d({n}) has shape {:?}, expected {:?}",
                    d.shape(),
                    (self.dim(n - 1), self.dim(n))
                )));
            }
            if k > 0 && !(&self.diffs[k - 1] * d).is_zero() {
                return Err(Error::InvalidStructure(format!("d({})∘d({n}) ≠ 0", n - 1)));
            }
            let acts = &self.actions[k];
            if acts.is_empty() && order == 1 {
                continue;
            }
            if acts.len() != order {
                return Err(Error::InvalidStructure(format!(
                    "degree {n} has {} action matrices for a group of order {order}",
                    acts.len()
                )));
            }
            if acts.iter().any(|a| a.shape() != (self.dims[k], self.dims[k])) {
                return Err(Error::InvalidStructure(format!("bad action shape in degree {n}")));
            }
            if !acts[0].is_identity() {
                return Err(Error::InvalidStructure(format!("identity acts non-trivially in degree {n}")));
            }
            for g in 0..order {
                for h in 0..order {
                    if &acts[g] * &acts[h] != acts[self.group.mul(g, h)] {
                        return Err(Error::InvalidStructure(format!(
                            "action is not a representation in degree {n} (elements {g}, {h})"
                        )));
                    }
                }
                if k > 0 && &self.actions[k - 1][g] * d != d * &acts[g] {
                    return Err(Error::InvalidStructure(format!(
                        "d({n}) does not commute with element {g}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Top degree; `lo - 1` for the zero complex.
    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    fn slot(&self, n: i32) -> Option<usize> {
        let k = n - self.lo;
        (k >= 0 && (k as usize) < self.dims.len()).then_some(k as usize)
    }

    pub fn dim(&self, n: i32) -> usize {
        self.slot(n).map_or(0, |k| self.dims[k])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `d(n)`, a zero matrix of the right shape outside the range.
    pub fn d(&self, n: i32) -> MatQ {
        match self.slot(n) {
            Some(k) => self.diffs[k].clone(),
            None => MatQ::zeros(self.dim(n - 1), self.dim(n)),
        }
    }

    pub fn d_ref(&self, n: i32) -> Option<&MatQ> {
        self.slot(n).map(|k| &self.diffs[k])
    }

    pub fn action(&self, g: usize, n: i32) -> MatQ {
        match self.slot(n) {
            Some(k) if self.actions[k].is_empty() => MatQ::identity(self.dims[k]),
            Some(k) => self.actions[k][g].clone(),
            None => MatQ::zeros(0, 0),
        }
    }


    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Same complex with the group forgotten.
    pub fn underlying(&self) -> DGModule {
        DGModule::over_trivial_unchecked(self.lo, self.dims.clone(), self.diffs.clone())
    }

    fn check_group(&self, other: &DGModule) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Shrinks the stored range to the nonzero degrees.
    pub fn trimmed(&self) -> DGModule {
        let first = self.dims.iter().position(|&d| d > 0);
        let Some(first) = first else {
            return DGModule::zero(self.group.clone());
        };
        let last = self.dims.iter().rposition(|&d| d > 0).unwrap();
        let lo = self.lo + first as i32;
        let mut diffs: Vec<MatQ> = self.diffs[first..=last].to_vec();
        diffs[0] = MatQ::zeros(0, self.dims[first]);
        DGModule {
            group: self.group.clone(),
            lo,
            dims: self.dims[first..=last].to_vec(),
            diffs,
            actions: self.actions[first..=last].to_vec(),
        }
    }

    /// Pads the stored range to cover `lo..=hi` with zero spaces.
    pub fn padded(&self, lo: i32, hi: i32) -> DGModule {
        let lo = lo.min(self.lo);
        let hi = hi.max(self.hi());
        let order = self.group.order();
        let mut dims = Vec::new();
        let mut diffs = Vec::new();
        let mut actions = Vec::new();
        for n in lo..=hi {
            dims.push(self.dim(n));
            diffs.push(self.d(n));
            actions.push(match self.slot(n) {
                Some(k) => self.actions[k].clone(),
                None if order == 1 => Vec::new(),
                None => vec![MatQ::zeros(0, 0); order],
            });
        }
        DGModule {
            group: self.group.clone(),
            lo,
            dims,
            diffs,
            actions,
        }
    }

    pub fn direct_sum(parts: &[&DGModule]) -> Result<DGModule> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidStructure("empty direct sum".into()));
        };
        for p in parts {
            first.check_group(p)?;
        }
        let nonzero: Vec<&&DGModule> = parts.iter().filter(|p| !p.is_zero()).collect();
        if nonzero.is_empty() {
            return Ok(DGModule::zero(first.group.clone()));
        }
        let lo = nonzero.iter().map(|p| p.lo).min().unwrap();
        let hi = nonzero.iter().map(|p| p.hi()).max().unwrap();
        let order = first.group.order();
        let mut dims = Vec::new();
        let mut diffs = Vec::new();
        let mut actions = Vec::new();
        for n in lo..=hi {
            dims.push(parts.iter().map(|p| p.dim(n)).sum());
            let ds: Vec<MatQ> = parts.iter().map(|p| p.d(n)).collect();
            diffs.push(MatQ::block_diag(&ds.iter().collect::<Vec<_>>()));
            actions.push(
                (0..order)
                    .filter(|_| order > 1)
                    .map(|g| {
                        let a: Vec<MatQ> = parts.iter().map(|p| p.action(g, n)).collect();
                        MatQ::block_diag(&a.iter().collect::<Vec<_>>())
                    })
                    .collect(),
            );
        }
        Ok(DGModule {
            group: first.group.clone(),
            lo,
            dims,
            diffs,
            actions,
        })
    }

    /// Degree shift: `(M[s])_n = M_{n-s}`, differential unchanged.
    pub fn shifted(&self, s: i32) -> DGModule {
        let mut m = self.clone();
        m.lo += s;
        m
    }

    /// Conjugates each degree by an invertible matrix: `x ↦ P_n x`.
    pub fn change_basis(&self, p: &[MatQ]) -> Result<DGModule> {
        if p.len() != self.dims.len() {
            return Err(Error::DimensionMismatch {
                context: "change of basis",
                expected: self.dims.len(),
                found: p.len(),
            });
        }
        let inv: Vec<MatQ> = p
            .iter()
            .map(|x| x.inverse().ok_or_else(|| Error::InvalidStructure("singular change of basis".into())))
            .collect::<Result<_>>()?;
        let mut diffs = Vec::new();
        for k in 0..self.dims.len() {
            let d = if k == 0 {
                self.diffs[0].clone()
            } else {
                &(&p[k - 1] * &self.diffs[k]) * &inv[k]
            };
            diffs.push(d);
        }
        let actions = self
            .actions
            .iter()
            .enumerate()
            .map(|(k, acts)| acts.iter().map(|a| &(&p[k] * a) * &inv[k]).collect())
            .collect();
        Ok(DGModule {
            group: self.group.clone(),
            lo: self.lo,
            dims: self.dims.clone(),
            diffs,
            actions,
        })
    }
}

/// Offsets of the `p`-blocks inside degree `n` of `M ⊗ N`.
fn tensor_blocks(m: &DGModule, n: &DGModule, deg: i32) -> Vec<(i32, usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for p in m.degrees() {
        let q = deg - p;
        let size = m.dim(p) * n.dim(q);
        if size > 0 {
            out.push((p, off, size));
            off += size;
        }
    }
    out
}

/// Offset of the `p`-block within degree `deg` of `M ⊗ N`.
pub fn tensor_offset(m: &DGModule, n: &DGModule, deg: i32, p: i32) -> Option<usize> {
    tensor_blocks(m, n, deg)
        .into_iter()
        .find(|b| b.0 == p)
        .map(|b| b.1)
}

/// `M ⊗ N` with the diagonal action.
pub fn tensor(m: &DGModule, n: &DGModule) -> Result<DGModule> {
    m.check_group(n)?;
    if m.is_zero() || n.is_zero() {
        return Ok(DGModule::zero(m.group.clone()));
    }
    let lo = m.lo + n.lo;
    let hi = m.hi() + n.hi();
    let order = m.group.order();
    let mut dims = Vec::new();
    let mut diffs = Vec::new();
    let mut actions = Vec::new();
    let mut prev_blocks: Vec<(i32, usize, usize)> = Vec::new();
    let mut prev_dim = 0;
    for deg in lo..=hi {
        let blocks = tensor_blocks(m, n, deg);
        let dim: usize = blocks.iter().map(|b| b.2).sum();
        let mut d = MatQ::zeros(prev_dim, dim);
        for &(p, off, _) in &blocks {
            let q = deg - p;
            // dm ⊗ n lands in block p-1 of degree deg-1
            if let Some(&(_, toff, _)) = prev_blocks.iter().find(|b| b.0 == p - 1) {
                let piece = m.d(p).kronecker(&MatQ::identity(n.dim(q)));
                d.set_block(toff, off, &piece);
            }
            // (-1)^p m ⊗ dn lands in block p of degree deg-1
            if let Some(&(_, toff, _)) = prev_blocks.iter().find(|b| b.0 == p) {
                let mut piece = MatQ::identity(m.dim(p)).kronecker(&n.d(q));
                if p.rem_euclid(2) == 1 {
                    piece = -&piece;
                }
                d.set_block(toff, off, &piece);
            }
        }
        let acts = (0..order)
            .filter(|_| order > 1)
            .map(|g| {
                let parts: Vec<MatQ> = blocks
                    .iter()
                    .map(|&(p, _, _)| m.action(g, p).kronecker(&n.action(g, deg - p)))
                    .collect();
                MatQ::block_diag(&parts.iter().collect::<Vec<_>>())
            })
            .collect();
        dims.push(dim);
        diffs.push(d);
        actions.push(acts);
        prev_blocks = blocks;
        prev_dim = dim;
    }
    Ok(DGModule::new_unchecked(m.group.clone(), lo, dims, diffs, actions))
}

/// Offsets of the `p`-blocks `Hom(M_p, N_{p+n})` inside degree `n` of the
/// hom complex.
pub fn hom_blocks(m: &DGModule, n: &DGModule, deg: i32) -> Vec<(i32, usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for p in m.degrees() {
        let size = m.dim(p) * n.dim(p + deg);
        if size > 0 {
            out.push((p, off, size));
            off += size;
        }
    }
    out
}

/// `Hom(M, N)` with the conjugation action.
pub fn hom_complex(m: &DGModule, n: &DGModule) -> Result<DGModule> {
    m.check_group(n)?;
    if m.is_zero() || n.is_zero() {
        return Ok(DGModule::zero(m.group.clone()));
    }
    let lo = n.lo - m.hi();
    let hi = n.hi() - m.lo;
    let order = m.group.order();
    let mut dims = Vec::new();
    let mut diffs = Vec::new();
    let mut actions = Vec::new();
    let mut prev_blocks: Vec<(i32, usize, usize)> = Vec::new();
    let mut prev_dim = 0;
    for deg in lo..=hi {
        let blocks = hom_blocks(m, n, deg);
        let dim: usize = blocks.iter().map(|b| b.2).sum();
        let mut d = MatQ::zeros(prev_dim, dim);
        let sign = if deg.rem_euclid(2) == 0 { rat(-1) } else { rat(1) };
        for &(p, off, _) in &blocks {
            let mp = m.dim(p);
            // d_N ∘ f : Hom(M_p, N_{p+deg-1}), block p of degree deg-1
            if let Some(&(_, toff, _)) = prev_blocks.iter().find(|b| b.0 == p) {
                let piece = n.d(p + deg).kronecker(&MatQ::identity(mp));
                d.set_block(toff, off, &piece);
            }
            // -(-1)^deg f ∘ d_M : Hom(M_{p+1}, N_{p+deg}), block p+1 of degree deg-1
            if let Some(&(_, toff, _)) = prev_blocks.iter().find(|b| b.0 == p + 1) {
                let q = n.dim(p + deg);
                let piece = MatQ::identity(q).kronecker(&m.d(p + 1).transpose()).scale(&sign);
                d.set_block(toff, off, &piece);
            }
        }
        let acts = (0..order)
            .filter(|_| order > 1)
            .map(|g| {
                let ginv = m.group.inv(g);
                let parts: Vec<MatQ> = blocks
                    .iter()
                    .map(|&(p, _, _)| {
                        n.action(g, p + deg)
                            .kronecker(&m.action(ginv, p).transpose())
                    })
                    .collect();
                MatQ::block_diag(&parts.iter().collect::<Vec<_>>())
            })
            .collect();
        dims.push(dim);
        diffs.push(d);
        actions.push(acts);
        prev_blocks = blocks;
        prev_dim = dim;
    }
    Ok(DGModule::new_unchecked(m.group.clone(), lo, dims, diffs, actions))
}

/// Vectorises the graded pieces of a degree-`deg` map into the hom complex
/// basis. `pieces` holds `(p, matrix M_p → N_{p+deg})`.
pub fn hom_vector(m: &DGModule, n: &DGModule, deg: i32, pieces: &[(i32, MatQ)]) -> Vec<Rational> {
    let blocks = hom_blocks(m, n, deg);
    let dim: usize = blocks.iter().map(|b| b.2).sum();
    let mut v = vec![Rational::zero(); dim];
    for (p, f) in pieces {
        if let Some(&(_, off, _)) = blocks.iter().find(|b| b.0 == *p) {
            for (i, x) in f.entries().iter().enumerate() {
                v[off + i] = x.clone();
            }
        }
    }
    v
}

/// Inverse of [`hom_vector`].
pub fn hom_pieces(m: &DGModule, n: &DGModule, deg: i32, v: &[Rational]) -> Vec<(i32, MatQ)> {
    hom_blocks(m, n, deg)
        .into_iter()
        .map(|(p, off, size)| {
            let f = MatQ::from_vec(n.dim(p + deg), m.dim(p), v[off..off + size].to_vec())
                .expect("block size");
            (p, f)
        })
        .collect()
}

/// Graded representation without differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRep {
    pub group: GroupRef,
    pub lo: i32,
    pub dims: Vec<usize>,
    pub actions: Vec<Vec<MatQ>>,
}

impl GradedRep {
    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn dim(&self, n: i32) -> usize {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.dims.len() {
            self.dims[k as usize]
        } else {
            0
        }
    }

    pub fn action(&self, g: usize, n: i32) -> MatQ {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.dims.len() {
            let acts = &self.actions[k as usize];
            if acts.is_empty() {
                return MatQ::identity(self.dims[k as usize]);
            }
            acts[g].clone()
        } else {
            MatQ::zeros(0, 0)
        }
    }

    /// Nonzero degrees and their dimensions.
    pub fn graded_dims(&self) -> Vec<(i32, usize)> {
        (self.lo..=self.hi())
            .map(|n| (n, self.dim(n)))
            .filter(|x| x.1 > 0)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// As a complex with zero differential.
    pub fn to_module(&self) -> DGModule {
        let diffs = (0..self.dims.len())
            .map(|k| {
                let prev = if k == 0 { 0 } else { self.dims[k - 1] };
                MatQ::zeros(prev, self.dims[k])
            })
            .collect();
        DGModule::new_unchecked(self.group.clone(), self.lo, self.dims.clone(), diffs, self.actions.clone())
    }
}

/// Homology with chosen cycle representatives.
#[derive(Clone, Debug)]
pub struct Homology {
    pub rep: GradedRep,
    /// Per degree: the basis `[boundaries | representatives]` of the cycles,
    /// and the number of boundary columns.
    cycles: Vec<(Coordinates, usize)>,
}

impl Homology {
    /// Cycle representatives of the homology basis in degree `n`, as columns.
    pub fn representatives(&self, n: i32) -> MatQ {
        match self.slot(n) {
            Some(k) => {
                let (c, nb) = &self.cycles[k];
                let b = c.basis();
                b.block(0, *nb, b.rows(), b.cols() - nb)
            }
            None => MatQ::zeros(0, 0),
        }
    }

    fn slot(&self, n: i32) -> Option<usize> {
        let k = n - self.rep.lo;
        (k >= 0 && (k as usize) < self.cycles.len()).then_some(k as usize)
    }

    /// Homology class of a cycle `z` of degree `n`; `None` if `z` is not a cycle.
    pub fn class_of(&self, n: i32, z: &[Rational]) -> Option<Vec<Rational>> {
        let k = self.slot(n)?;
        let (c, nb) = &self.cycles[k];
        let x = c.solve_checked(z)?;
        Some(x[*nb..].to_vec())
    }
}

pub fn homology(m: &DGModule) -> Homology {
    let order = m.group.order();
    let mut dims = Vec::new();
    let mut actions = Vec::new();
    let mut cycles = Vec::new();
    for n in m.degrees() {
        let z = m.d(n).kernel_basis();
        let b = m.d(n + 1).column_space_basis();
        // extend the boundary basis by kernel vectors
        let mut ech = Echelon::new(m.dim(n));
        let mut cols: Vec<Vec<Rational>> = Vec::new();
        for c in b.columns() {
            ech.insert(&c);
            cols.push(c);
        }
        let nb = cols.len();
        for c in z.columns() {
            if ech.insert(&c) {
                cols.push(c);
            }
        }
        let basis = MatQ::from_columns(m.dim(n), &cols);
        let coords = Coordinates::new(basis).expect("independent cycle basis");
        let h = cols.len() - nb;
        let acts = (0..order)
            .filter(|_| order > 1)
            .map(|g| {
                let a = m.action(g, n);
                let mut out = MatQ::zeros(h, h);
                for (j, col) in cols[nb..].iter().enumerate() {
                    let img = a.mul_vec(col);
                    let x = coords.solve(&img);
                    for i in 0..h {
                        out.set(i, j, x[nb + i].clone());
                    }
                }
                out
            })
            .collect();
        dims.push(h);
        actions.push(acts);
        cycles.push((coords, nb));
    }
    Homology {
        rep: GradedRep {
            group: m.group.clone(),
            lo: m.lo,
            dims,
            actions,
        },
        cycles,
    }
}

/// Degree-preserving map of complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGMap {
    source: DGModule,
    target: DGModule,
    /// One matrix `target.dim(n) × source.dim(n)` per source degree.
    components: Vec<MatQ>,
}

impl DGMap {
    pub fn new(source: DGModule, target: DGModule, components: Vec<MatQ>) -> Result<Self> {
        let f = DGMap {
            source,
            target,
            components,
        };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: DGModule, target: DGModule, components: Vec<MatQ>) -> Self {
        DGMap {
            source,
            target,
            components,
        }
    }

    pub fn identity(m: &DGModule) -> Self {
        let components = m.dims.iter().map(|&d| MatQ::identity(d)).collect();
        DGMap::new_unchecked(m.clone(), m.clone(), components)
    }

    pub fn zero(source: &DGModule, target: &DGModule) -> Self {
        let components = source
            .degrees()
            .map(|n| MatQ::zeros(target.dim(n), source.dim(n)))
            .collect();
        DGMap::new_unchecked(source.clone(), target.clone(), components)
    }

    /// Chain map and equivariance check.
    pub fn validate(&self) -> Result<()> {
        self.source.check_group(&self.target)?;
        if self.components.len() != self.source.dims.len() {
            return Err(Error::DimensionMismatch {
                context: "DGMap components",
                expected: self.source.dims.len(),
                found: self.components.len(),
            });
        }
        for n in self.source.degrees() {
            let f = self.component(n);
            if f.shape() != (self.target.dim(n), self.source.dim(n)) {
                return Err(Error::InvalidStructure(format!("component {n} has the wrong shape")));
            }
            if &self.target.d(n) * &f != &self.component(n - 1) * &self.source.d(n) {
                return Err(Error::InvalidStructure(format!(
                    "map does not commute with d in degree {n}"
                )));
            }
            for g in 0..self.source.group.order() {
                if self.target.dim(n) > 0
                    && self.source.dim(n) > 0
                    && &self.target.action(g, n) * &f != &f * &self.source.action(g, n)
                {
                    return Err(Error::InvalidStructure(format!(
                        "map is not equivariant for element {g} in degree {n}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &DGModule {
        &self.source
    }

    pub fn target(&self) -> &DGModule {
        &self.target
    }

    pub fn component(&self, n: i32) -> MatQ {
        match self.source.slot(n) {
            Some(k) => self.components[k].clone(),
            None => MatQ::zeros(self.target.dim(n), self.source.dim(n)),
        }
    }

    pub fn compose(&self, first: &DGMap) -> Result<DGMap> {
        if first.target.dims != self.source.dims || first.target.lo != self.source.lo {
            return Err(Error::InvalidStructure("maps are not composable".into()));
        }
        let components = first
            .source
            .degrees()
            .map(|n| &self.component(n) * &first.component(n))
            .collect();
        Ok(DGMap::new_unchecked(first.source.clone(), self.target.clone(), components))
    }

    pub fn is_surjective(&self) -> bool {
        self.target
            .degrees()
            .all(|n| self.component(n).rank() == self.target.dim(n))
    }

    pub fn is_injective(&self) -> bool {
        self.source
            .degrees()
            .all(|n| self.component(n).rank() == self.source.dim(n))
    }

    pub fn is_iso(&self) -> bool {
        let lo = self.source.lo.min(self.target.lo);
        let hi = self.source.hi().max(self.target.hi());
        (lo..=hi).all(|n| {
            let f = self.component(n);
            f.is_square() && f.rank() == f.rows()
        })
    }

    /// Induced maps `H_n(source) → H_n(target)` for every degree in either range.
    pub fn on_homology(&self) -> Vec<(i32, MatQ)> {
        let hs = homology(&self.source);
        let ht = homology(&self.target);
        let lo = self.source.lo.min(self.target.lo);
        let hi = self.source.hi().max(self.target.hi());
        (lo..=hi)
            .map(|n| {
                let reps = hs.representatives(n);
                let rows = ht.rep.dim(n);
                let mut out = MatQ::zeros(rows, hs.rep.dim(n));
                if rows > 0 {
                    let f = self.component(n);
                    for j in 0..reps.cols() {
                        let img = f.mul_vec(&reps.column(j));
                        let c = ht.class_of(n, &img).expect("chain maps send cycles to cycles");
                        for (i, x) in c.into_iter().enumerate() {
                            out.set(i, j, x);
                        }
                    }
                }
                (n, out)
            })
            .collect()
    }
}

pub fn is_quasi_iso(f: &DGMap) -> bool {
    f.on_homology()
        .iter()
        .all(|(_, m)| m.is_square() && m.rank() == m.rows())
}

/// `Av_G = |G|⁻¹ Σ_g g` as a self-map of `M`.
pub fn averaging_projector(m: &DGModule) -> DGMap {
    let order = m.group.order();
    let scale = Rational::new(1.into(), (order as i64).into());
    let components = m
        .actions
        .iter()
        .zip(&m.dims)
        .map(|(acts, &dim)| {
            if acts.is_empty() {
                return MatQ::identity(dim);
            }
            let mut sum = MatQ::zeros(dim, dim);
            for a in acts {
                sum = &sum + a;
            }
            sum.scale(&scale)
        })
        .collect();
    DGMap::new_unchecked(m.clone(), m.clone(), components)
}

/// `M^G` over the trivial group together with its inclusion into `M`.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    pub module: DGModule,
    /// Per degree of `M`, the columns spanning `M_n^G`.
    pub inclusion: Vec<MatQ>,
}

impl FixedPoints {
    pub fn inclusion_at(&self, n: i32) -> MatQ {
        let k = n - self.module.lo;
        if k >= 0 && (k as usize) < self.inclusion.len() {
            self.inclusion[k as usize].clone()
        } else {
            MatQ::zeros(0, 0)
        }
    }
}

pub fn fixed_points(m: &DGModule) -> FixedPoints {
    let av = averaging_projector(m);
    let bases: Vec<MatQ> = m.degrees().map(|n| av.component(n).column_space_basis()).collect();
    let coords: Vec<Coordinates> = bases
        .iter()
        .map(|b| Coordinates::new(b.clone()).expect("pivot columns are independent"))
        .collect();
    let mut diffs = Vec::new();
    for (k, n) in m.degrees().enumerate() {
        let dim = bases[k].cols();
        if k == 0 {
            diffs.push(MatQ::zeros(0, dim));
            continue;
        }
        let prev = bases[k - 1].cols();
        let mut d = MatQ::zeros(prev, dim);
        let dn = m.d_ref(n).expect("in range");
        for j in 0..dim {
            let img = dn.mul_vec(&bases[k].column(j));
            for (i, x) in coords[k - 1].solve(&img).into_iter().enumerate() {
                d.set(i, j, x);
            }
        }
        diffs.push(d);
    }
    let dims = bases.iter().map(MatQ::cols).collect();
    FixedPoints {
        module: DGModule::over_trivial_unchecked(m.lo, dims, diffs),
        inclusion: bases,
    }
}

/// Induced map on fixed points.
pub fn fixed_points_map(f: &DGMap) -> DGMap {
    let src = fixed_points(&f.source);
    let tgt = fixed_points(&f.target);
    let components = f
        .source
        .degrees()
        .map(|n| {
            let inc_s = src.inclusion_at(n);
            let rows = tgt.module.dim(n);
            let mut out = MatQ::zeros(rows, inc_s.cols());
            if rows > 0 {
                let c = Coordinates::new(tgt.inclusion_at(n)).expect("basis");
                let fc = f.component(n);
                for j in 0..inc_s.cols() {
                    let img = fc.mul_vec(&inc_s.column(j));
                    for (i, x) in c.solve(&img).into_iter().enumerate() {
                        out.set(i, j, x);
                    }
                }
            }
            out
        })
        .collect();
    DGMap::new_unchecked(src.module, tgt.module, components)
}

/// `C_0 M`: positive degrees kept, `ker d_0` in degree 0, nothing below;
/// returned with its inclusion into `M`.
pub fn connective_cover(m: &DGModule) -> (DGModule, DGMap) {
    let top = m.hi().max(0);
    let order = m.group.order();
    if m.is_zero() || m.hi() < 0 {
        let z = DGModule::zero(m.group.clone());
        let inc = DGMap::zero(&z, m);
        return (z, inc);
    }
    let z0 = m.d(0).kernel_basis();
    let c0 = Coordinates::new(z0.clone()).expect("kernel basis");
    let mut dims = Vec::new();
    let mut diffs = Vec::new();
    let mut actions = Vec::new();
    let mut incl = Vec::new();
    for n in 0..=top {
        if n == 0 {
            let dim = z0.cols();
            dims.push(dim);
            diffs.push(MatQ::zeros(0, dim));
            actions.push(
                (0..order)
                    .filter(|_| order > 1)
                    .map(|g| {
                        let a = m.action(g, 0);
                        let mut out = MatQ::zeros(dim, dim);
                        for j in 0..dim {
                            let img = a.mul_vec(&z0.column(j));
                            for (i, x) in c0.solve(&img).into_iter().enumerate() {
                                out.set(i, j, x);
                            }
                        }
                        out
                    })
                    .collect(),
            );
            incl.push(z0.clone());
        } else if n == 1 {
            let d1 = m.d(1);
            let mut d = MatQ::zeros(z0.cols(), m.dim(1));
            for j in 0..m.dim(1) {
                for (i, x) in c0.solve(&d1.column(j)).into_iter().enumerate() {
                    d.set(i, j, x);
                }
            }
            dims.push(m.dim(1));
            diffs.push(d);
            actions.push((0..order).filter(|_| order > 1).map(|g| m.action(g, 1)).collect());
            incl.push(MatQ::identity(m.dim(1)));
        } else {
            dims.push(m.dim(n));
            diffs.push(m.d(n));
            actions.push((0..order).filter(|_| order > 1).map(|g| m.action(g, n)).collect());
            incl.push(MatQ::identity(m.dim(n)));
        }
    }
    let cover = DGModule::new_unchecked(m.group.clone(), 0, dims, diffs, actions);
    let inc = DGMap::new_unchecked(cover.clone(), m.clone(), incl);
    (cover, inc)
}

/// Swap `M ⊗ N → N ⊗ M`, `m ⊗ n ↦ (-1)^{|m||n|} n ⊗ m`.
pub fn tensor_swap(m: &DGModule, n: &DGModule) -> Result<DGMap> {
    let mn = tensor(m, n)?;
    let nm = tensor(n, m)?;
    let components = mn
        .degrees()
        .map(|deg| {
            let mut out = MatQ::zeros(nm.dim(deg), mn.dim(deg));
            for (p, off, _) in tensor_blocks(m, n, deg) {
                let q = deg - p;
                let toff = tensor_offset(n, m, deg, q).expect("matching block");
                let sign = if (p * q).rem_euclid(2) == 1 { rat(-1) } else { rat(1) };
                let (a, b) = (m.dim(p), n.dim(q));
                for i in 0..a {
                    for j in 0..b {
                        out.set(toff + j * a + i, off + i * b + j, sign.clone());
                    }
                }
            }
            out
        })
        .collect();
    Ok(DGMap::new_unchecked(mn, nm, components))
}

/// Basis of the degree-0 equivariant chain maps `A → B`, found as the kernel
/// of the stacked commutation equations (differentials and generators).
pub fn chain_map_basis(a: &DGModule, b: &DGModule) -> Result<Vec<DGMap>> {
    a.check_group(b)?;
    let degs: Vec<i32> = a.degrees().collect();
    let mut offsets = Vec::new();
    let mut total = 0;
    for &n in &degs {
        offsets.push(total);
        total += b.dim(n) * a.dim(n);
    }
    let off_of = |n: i32| -> Option<usize> {
        let k = n - a.lo;
        (k >= 0 && (k as usize) < degs.len()).then(|| offsets[k as usize])
    };
    let mut ech = Echelon::new(total);
    let mut row = vec![Rational::zero(); total];
    // d_B(n) f_n - f_{n-1} d_A(n) = 0, entries (r, c) with r < dim B_{n-1}, c < dim A_n
    for n in a.degrees().chain(std::iter::once(a.hi() + 1)) {
        let (rows, cols) = (b.dim(n - 1), a.dim(n));
        if rows == 0 || cols == 0 {
            continue;
        }
        let db = b.d(n);
        let da = a.d(n);
        for r in 0..rows {
            for c in 0..cols {
                row.iter_mut().for_each(|x| x.set_zero());
                if let Some(off) = off_of(n) {
                    let an = a.dim(n);
                    for k in 0..b.dim(n) {
                        let x = db.get(r, k);
                        if !x.is_zero() {
                            row[off + k * an + c] += x;
                        }
                    }
                }
                if let Some(off) = off_of(n - 1) {
                    let am = a.dim(n - 1);
                    for k in 0..am {
                        let x = da.get(k, c);
                        if !x.is_zero() {
                            row[off + r * am + k] -= x;
                        }
                    }
                }
                ech.insert(&row);
            }
        }
    }
    let gens = a.group.generator_indices();
    for &g in &gens {
        for (k, &n) in degs.iter().enumerate() {
            let (rows, cols) = (b.dim(n), a.dim(n));
            if rows == 0 || cols == 0 {
                continue;
            }
            let off = offsets[k];
            let ga = a.action(g, n);
            let gb = b.action(g, n);
            for r in 0..rows {
                for c in 0..cols {
                    row.iter_mut().for_each(|x| x.set_zero());
                    for t in 0..rows {
                        let x = gb.get(r, t);
                        if !x.is_zero() {
                            row[off + t * cols + c] += x;
                        }
                    }
                    for t in 0..cols {
                        let x = ga.get(t, c);
                        if !x.is_zero() {
                            row[off + r * cols + t] -= x;
                        }
                    }
                    ech.insert(&row);
                }
            }
        }
    }
    Ok(ech
        .null_space()
        .into_iter()
        .map(|v| {
            let components = degs
                .iter()
                .enumerate()
                .map(|(k, &n)| {
                    let size = b.dim(n) * a.dim(n);
                    MatQ::from_vec(b.dim(n), a.dim(n), v[offsets[k]..offsets[k] + size].to_vec())
                        .expect("block")
                })
                .collect();
            DGMap::new_unchecked(a.clone(), b.clone(), components)
        })
        .collect())
}

pub fn chain_map_dim(a: &DGModule, b: &DGModule) -> Result<usize> {
    Ok(chain_map_basis(a, b)?.len())
}

/// Character of each degree, used as a cheap isomorphism pre-check.
fn characters(rep: &GradedRep) -> Vec<(i32, Vec<Rational>)> {
    (rep.lo..=rep.hi())
        .filter(|&n| rep.dim(n) > 0)
        .map(|n| {
            (
                n,
                (0..rep.group.order()).map(|g| rep.action(g, n).trace()).collect(),
            )
        })
        .collect()
}

/// Equivariant chain isomorphism `A → B`, if one exists. Candidates are the
/// basis of chain maps followed by seeded pseudo-random combinations.
pub fn chain_iso(a: &DGModule, b: &DGModule) -> Result<Option<DGMap>> {
    a.check_group(b)?;
    let lo = a.lo.min(b.lo);
    let hi = a.hi().max(b.hi());
    if (lo..=hi).any(|n| a.dim(n) != b.dim(n)) {
        return Ok(None);
    }
    if a.is_zero() {
        return Ok(Some(DGMap::zero(a, b)));
    }
    let ga = GradedRep {
        group: a.group.clone(),
        lo: a.lo,
        dims: a.dims.clone(),
        actions: a.actions.clone(),
    };
    let gb = GradedRep {
        group: b.group.clone(),
        lo: b.lo,
        dims: b.dims.clone(),
        actions: b.actions.clone(),
    };
    if characters(&ga) != characters(&gb) {
        return Ok(None);
    }
    let basis = chain_map_basis(a, b)?;
    Ok(find_invertible(&basis))
}

/// Isomorphism of graded representations (no differentials).
pub fn rep_iso(a: &GradedRep, b: &GradedRep) -> Result<Option<DGMap>> {
    chain_iso(&a.to_module(), &b.to_module())
}

fn find_invertible(basis: &[DGMap]) -> Option<DGMap> {
    let first = basis.first()?;
    for f in basis {
        if f.is_iso() {
            return Some(f.clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..64 {
        let coeffs: Vec<Rational> = basis.iter().map(|_| rat(rng.gen_range(-3..=3))).collect();
        let components = first
            .source
            .degrees()
            .map(|n| {
                let mut acc = MatQ::zeros(first.target.dim(n), first.source.dim(n));
                for (f, c) in basis.iter().zip(&coeffs) {
                    if !c.is_zero() {
                        acc = &acc + &f.component(n).scale(c);
                    }
                }
                acc
            })
            .collect();
        let f = DGMap::new_unchecked(first.source.clone(), first.target.clone(), components);
        if f.is_iso() {
            return Some(f);
        }
    }
    None
}

/// Whether `f` is an isomorphism onto its image in every degree (rank check),
/// used in tests for the swap map and similar explicit maps.
pub fn is_chain_iso(f: &DGMap) -> bool {
    f.validate().is_ok() && f.is_iso()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::group_from_spec;

    fn c2() -> GroupRef {
        Arc::new(group_from_spec("C2").unwrap())
    }

    /// Q[C2] --(1 - t)--> Q[C2], degrees 1 → 0.
    fn cone(g: &GroupRef) -> DGModule {
        let reg = DGModule::regular(g.clone());
        let t = reg.action(1, 0);
        let d = &MatQ::identity(2) - &t;
        DGModule::new(
            g.clone(),
            0,
            vec![2, 2],
            vec![MatQ::zeros(0, 2), d],
            vec![reg.actions[0].clone(), reg.actions[0].clone()],
        )
        .unwrap()
    }

    #[test]
    fn homology_of_cone() {
        let g = c2();
        let m = cone(&g);
        let h = homology(&m);
        assert_eq!(h.rep.dims, vec![1, 1]);
        // both the kernel and the cokernel of 1 - t are trivial
        assert_eq!(h.rep.action(1, 0), MatQ::scalar(rat(1)));
        assert_eq!(h.rep.action(1, 1), MatQ::scalar(rat(1)));
    }

    #[test]
    fn tensor_and_hom_are_complexes() {
        let g = c2();
        let m = cone(&g);
        let t = tensor(&m, &m).unwrap();
        t.validate().unwrap();
        assert_eq!(t.dims(), &[4, 8, 4]);
        let h = hom_complex(&m, &m).unwrap();
        h.validate().unwrap();
        assert_eq!(h.lo(), -1);
        assert_eq!(h.dims(), &[4, 8, 4]);
    }

    #[test]
    fn unit_is_neutral() {
        let g = c2();
        let m = cone(&g);
        assert_eq!(tensor(&m, &DGModule::unit(g.clone())).unwrap(), m);
        assert_eq!(tensor(&DGModule::unit(g), &m).unwrap(), m);
    }

    #[test]
    fn swap_is_chain_iso() {
        let g = c2();
        let m = cone(&g);
        let n = cone(&g).shifted(1);
        let s = tensor_swap(&m, &n).unwrap();
        assert!(is_chain_iso(&s));
    }

    #[test]
    fn fixed_points_and_chain_maps() {
        let g = c2();
        let m = cone(&g);
        let fp = fixed_points(&m);
        assert_eq!(fp.module.dims(), &[1, 1]);
        // degree-0 cycles of Hom(M, M)^G are the chain maps
        let h = hom_complex(&m, &m).unwrap();
        let hf = fixed_points(&h);
        let z0 = hf.module.d(0).kernel_basis().cols();
        assert_eq!(z0, chain_map_dim(&m, &m).unwrap());
    }

    #[test]
    fn quasi_iso_and_cover() {
        let g = c2();
        let m = cone(&g).shifted(-1);
        let (c, inc) = connective_cover(&m);
        inc.validate().unwrap();
        assert_eq!(c.dims(), &[1]);
        assert!(!is_quasi_iso(&inc));
        let id = DGMap::identity(&m);
        assert!(is_quasi_iso(&id));
    }

    #[test]
    fn iso_search() {
        let g = c2();
        let m = cone(&g);
        let p = vec![MatQ::from_i64(&[&[1, 2], &[0, 1]]), MatQ::from_i64(&[&[3, 1], &[1, 1]])];
        let n = m.change_basis(&p).unwrap();
        n.validate().unwrap();
        let f = chain_iso(&m, &n).unwrap().expect("isomorphic");
        assert!(is_chain_iso(&f));
        let triv = DGModule::trivial_rep(g.clone(), 0, 2);
        assert!(chain_iso(&DGModule::regular(g), &triv).unwrap().is_none());
    }
}
