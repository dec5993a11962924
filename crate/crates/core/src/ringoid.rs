//! Finite dg categories over `Q` and the endomorphism category `E_a`.
//!
//! Every hom is a complex over the trivial group. Elements of a hom are
//! addressed by a *total index*: the basis of degree `lo` first, then degree
//! `lo + 1`, and so on. Composition `hom(b, c) ⊗ hom(a, b) → hom(a, c)` is a
//! [`Bilinear`] pairing whose column `i·right + j` is the image of the pair
//! (basis `i` of `hom(b, c)`, basis `j` of `hom(a, b)`).

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::burnside::DEFAULT_POWER_BOUND;
use crate::dgmod::{self, DGMap, DGModule, Homology};
use crate::error::{Error, Result};
use crate::exactq::{dense_from_sparse, sparse_from_dense, Coordinates, MatQ, Rational, SparseVec};
use crate::permgrp::GroupRef;

/// Sparse bilinear map `Q^left × Q^right → Q^out`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinear {
    out: usize,
    left: usize,
    right: usize,
    images: Vec<SparseVec>,
}

impl Bilinear {
    pub fn zero(out: usize, left: usize, right: usize) -> Self {
        Bilinear {
            out,
            left,
            right,
            images: vec![Vec::new(); left * right],
        }
    }

    pub fn from_fn(out: usize, left: usize, right: usize, mut f: impl FnMut(usize, usize) -> SparseVec) -> Self {
        let mut images = Vec::with_capacity(left * right);
        for i in 0..left {
            for j in 0..right {
                images.push(f(i, j));
            }
        }
        Bilinear {
            out,
            left,
            right,
            images,
        }
    }

    /// Reads the columns of a `out × (left·right)` matrix.
    pub fn from_matrix(m: &MatQ, left: usize, right: usize) -> Result<Self> {
        if m.cols() != left * right {
            return Err(Error::DimensionMismatch {
                context: "bilinear pairing columns",
                expected: left * right,
                found: m.cols(),
            });
        }
        let images = (0..m.cols()).map(|c| sparse_from_dense(&m.column(c))).collect();
        Ok(Bilinear {
            out: m.rows(),
            left,
            right,
            images,
        })
    }

    pub fn to_matrix(&self) -> MatQ {
        let mut m = MatQ::zeros(self.out, self.left * self.right);
        for (c, img) in self.images.iter().enumerate() {
            for (r, x) in img {
                m.set(*r, c, x.clone());
            }
        }
        m
    }

    pub fn out_dim(&self) -> usize {
        self.out
    }

    pub fn left_dim(&self) -> usize {
        self.left
    }

    pub fn right_dim(&self) -> usize {
        self.right
    }

    pub fn image(&self, i: usize, j: usize) -> &SparseVec {
        &self.images[i * self.right + j]
    }

    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.out];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.image(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }
}

/// Start of each degree block inside the total index, plus the total size.
pub fn degree_offsets(m: &DGModule) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.dims().len() + 1);
    let mut acc = 0;
    out.push(0);
    for &d in m.dims() {
        acc += d;
        out.push(acc);
    }
    out
}

/// Degree of each total index.
pub fn index_degrees(m: &DGModule) -> Vec<i32> {
    m.degrees()
        .flat_map(|n| std::iter::repeat(n).take(m.dim(n)))
        .collect()
}

/// Total-index offset of degree `n`, if `n` is in range.
pub fn offset_of(m: &DGModule, n: i32) -> Option<usize> {
    let k = n - m.lo();
    (k >= 0 && (k as usize) < m.dims().len()).then(|| m.dims()[..k as usize].iter().sum())
}

/// `d` applied to every basis element, as sparse total vectors.
pub fn total_differential(m: &DGModule) -> Vec<SparseVec> {
    let mut out = Vec::with_capacity(m.total_dim());
    for n in m.degrees() {
        let d = m.d(n);
        let base = offset_of(m, n - 1);
        for j in 0..m.dim(n) {
            let mut v = Vec::new();
            if let Some(base) = base {
                for r in 0..d.rows() {
                    let x = d.get(r, j);
                    if !x.is_zero() {
                        v.push((base + r, x.clone()));
                    }
                }
            }
            out.push(v);
        }
    }
    out
}

/// The matrix of a degree-preserving map on total indices.
pub fn total_matrix(f: &DGMap) -> MatQ {
    let (s, t) = (f.source(), f.target());
    let mut m = MatQ::zeros(t.total_dim(), s.total_dim());
    for n in s.degrees() {
        if let (Some(so), Some(to)) = (offset_of(s, n), offset_of(t, n)) {
            m.set_block(to, so, &f.component(n));
        }
    }
    m
}

fn add_scaled(acc: &mut BTreeMap<usize, Rational>, v: &SparseVec, c: &Rational) {
    for (k, x) in v {
        let e = acc.entry(*k).or_insert_with(Rational::zero);
        *e += c * x;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

fn collect_sparse(acc: BTreeMap<usize, Rational>) -> SparseVec {
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Orbit data for `E_a`: tuples of `W^i` in lexicographic order, and the
/// diagonal `W`-orbits on each `σ_b × σ_a` (row in `σ_b`, column in `σ_a`).
#[derive(Debug)]
struct EaData {
    group: GroupRef,
    sizes: Vec<usize>,
    /// `act[i][g * sizes[i] + x]` is the index of `g·x` in `W^i`.
    act: Vec<Vec<usize>>,
    /// Per ordered pair `(a, b)` at `a * n + b`: orbits sorted by entries.
    orbits: Vec<Vec<Vec<(usize, usize)>>>,
    orbit_id: Vec<Vec<u32>>,
}

impl EaData {
    fn new(group: GroupRef, max_power: usize) -> Self {
        let w = group.order();
        let n = max_power + 1;
        let sizes: Vec<usize> = (0..n).map(|i| w.pow(i as u32)).collect();
        let act = (0..n)
            .map(|i| {
                let size = sizes[i];
                let mut t = vec![0; w * size];
                for g in 0..w {
                    for x in 0..size {
                        // digits of x in base w, most significant first
                        let mut y = 0;
                        let mut place = size;
                        for _ in 0..i {
                            place /= w;
                            let digit = (x / place) % w;
                            y += group.mul(g, digit) * place;
                        }
                        t[g * size + x] = y;
                    }
                }
                t
            })
            .collect::<Vec<_>>();
        let gens = group.generator_indices();
        let mut orbits = Vec::with_capacity(n * n);
        let mut orbit_id = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (sa, sb) = (sizes[a], sizes[b]);
                let mut id = vec![u32::MAX; sa * sb];
                let mut list: Vec<Vec<(usize, usize)>> = Vec::new();
                for r in 0..sb {
                    for c in 0..sa {
                        if id[r * sa + c] != u32::MAX {
                            continue;
                        }
                        let k = list.len() as u32;
                        let mut orbit = vec![(r, c)];
                        id[r * sa + c] = k;
                        let mut i = 0;
                        while i < orbit.len() {
                            let (y, x) = orbit[i];
                            for &g in &gens {
                                let p = (act[b][g * sb + y], act[a][g * sa + x]);
                                if id[p.0 * sa + p.1] == u32::MAX {
                                    id[p.0 * sa + p.1] = k;
                                    orbit.push(p);
                                }
                            }
                            i += 1;
                        }
                        orbit.sort_unstable();
                        list.push(orbit);
                    }
                }
                orbits.push(list);
                orbit_id.push(id);
            }
        }
        EaData {
            group,
            sizes,
            act,
            orbits,
            orbit_id,
        }
    }

    fn objects(&self) -> usize {
        self.sizes.len()
    }

    fn pair(&self, a: usize, b: usize) -> usize {
        a * self.objects() + b
    }

    fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.orbits[self.pair(a, b)].len()
    }

    fn id_of(&self, a: usize, b: usize, row: usize, col: usize) -> usize {
        self.orbit_id[self.pair(a, b)][row * self.sizes[a] + col] as usize
    }

    /// Composite of basis `i` of `hom(b, c)` after basis `j` of `hom(a, b)`.
    fn compose(&self, a: usize, b: usize, c: usize, i: usize, j: usize) -> SparseVec {
        let u = &self.orbits[self.pair(b, c)][i];
        let v = &self.orbits[self.pair(a, b)][j];
        let mut counts: BTreeMap<usize, i64> = BTreeMap::new();
        for &(z, y) in u {
            let start = v.partition_point(|e| e.0 < y);
            for &(y2, x) in &v[start..] {
                if y2 != y {
                    break;
                }
                *counts.entry(z * self.sizes[a] + x).or_insert(0) += 1;
            }
        }
        let mut out: BTreeMap<usize, i64> = BTreeMap::new();
        for (key, count) in counts {
            let (z, x) = (key / self.sizes[a], key % self.sizes[a]);
            out.insert(self.id_of(a, c, z, x), count);
        }
        out.into_iter().map(|(k, x)| (k, Rational::from_integer(x.into()))).collect()
    }

    /// Basis `i` of `hom(a, c)` tensor basis `j` of `hom(b, d)`.
    fn product(&self, a: usize, b: usize, c: usize, d: usize, i: usize, j: usize) -> SparseVec {
        let u = &self.orbits[self.pair(a, c)][i];
        let v = &self.orbits[self.pair(b, d)][j];
        let (ab, cd) = (a + b, c + d);
        let mut hit: Vec<usize> = Vec::new();
        for &(z, x) in u {
            for &(w, y) in v {
                let row = z * self.sizes[d] + w;
                let col = x * self.sizes[b] + y;
                hit.push(self.id_of(ab, cd, row, col));
            }
        }
        hit.sort_unstable();
        hit.dedup();
        hit.into_iter().map(|k| (k, Rational::one())).collect()
    }

    fn identity(&self, a: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.hom_dim(a, a)];
        for x in 0..self.sizes[a] {
            v[self.id_of(a, a, x, x)] = Rational::one();
        }
        v
    }
}

/// A finite dg category.
#[derive(Clone, Debug)]
pub struct DGCategory {
    objects: Vec<String>,
    homs: Vec<DGModule>,
    identities: Vec<Vec<Rational>>,
    pairings: Vec<OnceLock<Bilinear>>,
    ea: Option<Arc<EaData>>,
}

impl DGCategory {
    /// Validated constructor. `homs[a·n + b]` is `hom(a, b)` and
    /// `pairings[(a·n + b)·n + c]` the composition `hom(b, c) ⊗ hom(a, b) → hom(a, c)`.
    pub fn new(
        objects: Vec<String>,
        homs: Vec<DGModule>,
        identities: Vec<Vec<Rational>>,
        pairings: Vec<Bilinear>,
    ) -> Result<Self> {
        let c = Self::new_unchecked(objects, homs, identities, pairings);
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(
        objects: Vec<String>,
        homs: Vec<DGModule>,
        identities: Vec<Vec<Rational>>,
        pairings: Vec<Bilinear>,
    ) -> Self {
        let pairings = pairings.into_iter().map(OnceLock::from).collect();
        DGCategory {
            objects,
            homs,
            identities,
            pairings,
            ea: None,
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn check_object(&self, o: usize) -> Result<()> {
        if o < self.objects.len() {
            Ok(())
        } else {
            Err(Error::UnknownObject(o.to_string()))
        }
    }

    pub fn hom(&self, a: usize, b: usize) -> &DGModule {
        &self.homs[a * self.objects.len() + b]
    }

    pub fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.hom(a, b).total_dim()
    }

    pub fn identity(&self, a: usize) -> &[Rational] {
        &self.identities[a]
    }

    fn triple(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.objects.len();
        (a * n + b) * n + c
    }

    /// The pairing `hom(b, c) ⊗ hom(a, b) → hom(a, c)`, built on first use.
    pub fn pairing(&self, a: usize, b: usize, c: usize) -> &Bilinear {
        self.pairings[self.triple(a, b, c)].get_or_init(|| {
            let ea = self.ea.as_ref().expect("explicit categories store every pairing");
            Bilinear::from_fn(ea.hom_dim(a, c), ea.hom_dim(b, c), ea.hom_dim(a, b), |i, j| {
                ea.compose(a, b, c, i, j)
            })
        })
    }

    /// Composite of basis `i` of `hom(b, c)` after basis `j` of `hom(a, b)`.
    pub fn compose_basis(&self, a: usize, b: usize, c: usize, i: usize, j: usize) -> SparseVec {
        match (&self.ea, self.pairings[self.triple(a, b, c)].get()) {
            (_, Some(p)) => p.image(i, j).clone(),
            (Some(ea), None) => ea.compose(a, b, c, i, j),
            (None, None) => unreachable!("explicit categories store every pairing"),
        }
    }

    /// `f ∘ g` for `f ∈ hom(b, c)`, `g ∈ hom(a, b)`.
    pub fn compose(&self, a: usize, b: usize, c: usize, f: &[Rational], g: &[Rational]) -> Vec<Rational> {
        if self.ea.is_some() && self.pairings[self.triple(a, b, c)].get().is_none() {
            let mut acc = BTreeMap::new();
            for (i, x) in f.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in g.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    add_scaled(&mut acc, &self.compose_basis(a, b, c, i, j), &(x * y));
                }
            }
            return dense_from_sparse(self.hom_dim(a, c), &collect_sparse(acc));
        }
        self.pairing(a, b, c).apply(f, g)
    }

    /// Whether every hom is concentrated in degree 0 with zero differential.
    pub fn is_concentrated_in_degree_zero(&self) -> bool {
        self.homs.iter().all(|h| h.degrees().all(|n| n == 0 || h.dim(n) == 0))
    }

    /// Shapes, degrees, Leibniz rule, units and associativity on all basis
    /// elements.
    pub fn validate(&self) -> Result<()> {
        let n = self.objects.len();
        if self.homs.len() != n * n || self.identities.len() != n || self.pairings.len() != n * n * n {
            return Err(Error::InvalidStructure("category data has the wrong number of entries".into()));
        }
        for h in &self.homs {
            if h.group().order() != 1 {
                return Err(Error::InvalidStructure("homs must be complexes over the trivial group".into()));
            }
            h.validate()?;
        }
        let degs: Vec<Vec<i32>> = self.homs.iter().map(index_degrees).collect();
        let diffs: Vec<Vec<SparseVec>> = self.homs.iter().map(total_differential).collect();
        let deg = |a: usize, b: usize| &degs[a * n + b];
        for a in 0..n {
            let id = &self.identities[a];
            if id.len() != self.hom_dim(a, a) {
                return Err(Error::InvalidStructure(format!("identity of object {a} has the wrong size")));
            }
            for (k, x) in id.iter().enumerate() {
                if !x.is_zero() && deg(a, a)[k] != 0 {
                    return Err(Error::InvalidStructure(format!("identity of object {a} is not in degree 0")));
                }
            }
            let did = apply_sparse_map(&diffs[a * n + a], id, self.hom_dim(a, a));
            if did.iter().any(|x| !x.is_zero()) {
                return Err(Error::InvalidStructure(format!("identity of object {a} is not a cycle")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let p = self.pairing(a, b, c);
                    if (p.out, p.left, p.right) != (self.hom_dim(a, c), self.hom_dim(b, c), self.hom_dim(a, b)) {
                        return Err(Error::InvalidStructure(format!("pairing ({a}, {b}, {c}) has the wrong shape")));
                    }
                    for i in 0..p.left {
                        for j in 0..p.right {
                            let img = p.image(i, j);
                            let want = deg(b, c)[i] + deg(a, b)[j];
                            if img.iter().any(|(k, _)| deg(a, c)[*k] != want) {
                                return Err(Error::InvalidStructure(format!(
                                    "composition ({a}, {b}, {c}) does not preserve degree"
                                )));
                            }
                            // d(u∘v) = du∘v + (-1)^{|u|} u∘dv
                            let lhs = apply_sparse_map_sparse(&diffs[a * n + c], img);
                            let mut acc = BTreeMap::new();
                            for (k, x) in &diffs[b * n + c][i] {
                                add_scaled(&mut acc, p.image(*k, j), x);
                            }
                            let sign = if deg(b, c)[i].rem_euclid(2) == 1 { -Rational::one() } else { Rational::one() };
                            for (k, x) in &diffs[a * n + b][j] {
                                add_scaled(&mut acc, p.image(i, *k), &(x * &sign));
                            }
                            if lhs != collect_sparse(acc) {
                                return Err(Error::NonFunctorial(a, b, c));
                            }
                        }
                    }
                    // units
                    if a == b {
                        for i in 0..p.left {
                            let img = self.compose(a, a, c, &unit_vec(p.left, i), &self.identities[a]);
                            if img != unit_vec(p.left, i) {
                                return Err(Error::InvalidStructure(format!("identity of {a} is not a right unit")));
                            }
                        }
                    }
                    if b == c {
                        for j in 0..p.right {
                            let img = self.compose(a, b, b, &self.identities[b], &unit_vec(p.right, j));
                            if img != unit_vec(p.right, j) {
                                return Err(Error::InvalidStructure(format!("identity of {b} is not a left unit")));
                            }
                        }
                    }
                }
            }
        }
        self.check_associativity()
    }

    /// `(u∘v)∘w = u∘(v∘w)` on all basis triples.
    pub fn check_associativity(&self) -> Result<()> {
        let n = self.objects.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for i in 0..self.hom_dim(c, d) {
                            for j in 0..self.hom_dim(b, c) {
                                let uv = self.compose_basis(b, c, d, i, j);
                                for k in 0..self.hom_dim(a, b) {
                                    let mut left = BTreeMap::new();
                                    for (t, x) in &uv {
                                        add_scaled(&mut left, &self.compose_basis(a, b, d, *t, k), x);
                                    }
                                    let vw = self.compose_basis(a, b, c, j, k);
                                    let mut right = BTreeMap::new();
                                    for (t, x) in &vw {
                                        add_scaled(&mut right, &self.compose_basis(a, c, d, i, *t), x);
                                    }
                                    if collect_sparse(left) != collect_sparse(right) {
                                        return Err(Error::NonFunctorial(a, b, c));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// All pairings materialised, in triple order.
    pub fn pairings(&self) -> Vec<&Bilinear> {
        let n = self.objects.len();
        let mut out = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    out.push(self.pairing(a, b, c));
                }
            }
        }
        out
    }

    pub fn homs(&self) -> &[DGModule] {
        &self.homs
    }

    pub fn identities(&self) -> &[Vec<Rational>] {
        &self.identities
    }
}

fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

fn apply_sparse_map(cols: &[SparseVec], x: &[Rational], out: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); out];
    for (j, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (k, y) in &cols[j] {
            v[*k] += a * y;
        }
    }
    v
}

fn apply_sparse_map_sparse(cols: &[SparseVec], x: &SparseVec) -> SparseVec {
    let mut acc = BTreeMap::new();
    for (j, a) in x {
        add_scaled(&mut acc, &cols[*j], a);
    }
    collect_sparse(acc)
}

/// `E_a` on `σ_0, …, σ_k` with the monoidal structure `σ_i ⊗ σ_j = σ_{i+j}`.
#[derive(Clone, Debug)]
pub struct MonoidalDGCategory {
    category: Arc<DGCategory>,
    data: Arc<EaData>,
    products: Arc<Vec<OnceLock<Bilinear>>>,
}

/// Builds `E_a(W)` truncated at `σ_max_power`. Hom bases are the indicator
/// matrices of the diagonal `W`-orbits, ordered by their least entry.
pub fn build_ea(group: GroupRef, max_power: usize) -> Result<MonoidalDGCategory> {
    let size = (group.order() as u128).checked_pow(max_power as u32).unwrap_or(u128::MAX);
    if size > DEFAULT_POWER_BOUND as u128 {
        return Err(Error::SizeBoundExceeded {
            size: size.min(usize::MAX as u128) as usize,
            bound: DEFAULT_POWER_BOUND,
        });
    }
    let data = Arc::new(EaData::new(group, max_power));
    let n = data.objects();
    let mut homs = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let dim = data.hom_dim(a, b);
            homs.push(DGModule::over_trivial_unchecked(0, vec![dim], vec![MatQ::zeros(0, dim)]));
        }
    }
    let identities = (0..n).map(|a| data.identity(a)).collect();
    let category = DGCategory {
        objects: (0..n).map(|i| format!("σ{i}")).collect(),
        homs,
        identities,
        pairings: (0..n * n * n).map(|_| OnceLock::new()).collect(),
        ea: Some(data.clone()),
    };
    Ok(MonoidalDGCategory {
        category: Arc::new(category),
        data,
        products: Arc::new((0..n.pow(4)).map(|_| OnceLock::new()).collect()),
    })
}

impl MonoidalDGCategory {
    pub fn category(&self) -> &DGCategory {
        &self.category
    }

    pub fn shared_category(&self) -> Arc<DGCategory> {
        self.category.clone()
    }

    pub fn group(&self) -> &GroupRef {
        &self.data.group
    }

    pub fn max_power(&self) -> usize {
        self.data.objects() - 1
    }

    pub fn unit(&self) -> usize {
        0
    }

    /// `|W|^i`, the dimension of `σ_i`.
    pub fn sigma_dim(&self, i: usize) -> usize {
        self.data.sizes[i]
    }

    pub fn tensor_object(&self, a: usize, b: usize) -> Result<usize> {
        if a + b <= self.max_power() {
            Ok(a + b)
        } else {
            Err(Error::Truncation {
                left: self.category.objects[a].clone(),
                right: self.category.objects[b].clone(),
            })
        }
    }

    /// `hom(a, c) ⊗ hom(b, d) → hom(a ⊗ b, c ⊗ d)`.
    pub fn product_pairing(&self, a: usize, b: usize, c: usize, d: usize) -> Result<&Bilinear> {
        self.tensor_object(a, b)?;
        self.tensor_object(c, d)?;
        let n = self.data.objects();
        let slot = ((a * n + b) * n + c) * n + d;
        Ok(self.products[slot].get_or_init(|| {
            let ea = &self.data;
            Bilinear::from_fn(ea.hom_dim(a + b, c + d), ea.hom_dim(a, c), ea.hom_dim(b, d), |i, j| {
                ea.product(a, b, c, d, i, j)
            })
        }))
    }

    pub fn product(&self, a: usize, b: usize, c: usize, d: usize, f: &[Rational], g: &[Rational]) -> Result<Vec<Rational>> {
        Ok(self.product_pairing(a, b, c, d)?.apply(f, g))
    }

    /// The symmetry `σ_a ⊗ σ_b → σ_b ⊗ σ_a` as an element of `hom(a + b, a + b)`.
    pub fn symmetry(&self, a: usize, b: usize) -> Result<Vec<Rational>> {
        let ab = self.tensor_object(a, b)?;
        let (sa, sb) = (self.data.sizes[a], self.data.sizes[b]);
        let mut m = MatQ::zeros(sa * sb, sa * sb);
        for x in 0..sa {
            for y in 0..sb {
                m.set(y * sa + x, x * sb + y, Rational::one());
            }
        }
        self.hom_from_matrix(ab, ab, &m)
            .ok_or_else(|| Error::InvalidStructure("symmetry is not equivariant".into()))
    }

    /// The linear map `σ_a → σ_b` of a hom element.
    pub fn hom_matrix(&self, a: usize, b: usize, v: &[Rational]) -> MatQ {
        let (sa, sb) = (self.data.sizes[a], self.data.sizes[b]);
        let mut m = MatQ::zeros(sb, sa);
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(r, c) in &self.data.orbits[self.data.pair(a, b)][k] {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    /// Hom coordinates of an equivariant matrix; `None` if not equivariant.
    pub fn hom_from_matrix(&self, a: usize, b: usize, m: &MatQ) -> Option<Vec<Rational>> {
        let orbits = &self.data.orbits[self.data.pair(a, b)];
        let mut v = Vec::with_capacity(orbits.len());
        for orbit in orbits {
            let (r0, c0) = orbit[0];
            let x = m.get(r0, c0);
            if orbit.iter().any(|&(r, c)| m.get(r, c) != x) {
                return None;
            }
            v.push(x.clone());
        }
        Some(v)
    }

    /// `σ_i` as a permutation module over `W`.
    pub fn sigma_module(&self, i: usize) -> DGModule {
        let size = self.data.sizes[i];
        let w = self.data.group.order();
        let images: Vec<Vec<usize>> = (0..w)
            .map(|g| self.data.act[i][g * size..(g + 1) * size].to_vec())
            .collect();
        DGModule::permutation_module(self.data.group.clone(), &images).expect("permutation action")
    }

    /// Index of `g·x` for a tuple index `x ∈ W^i`.
    pub fn act_on_tuple(&self, i: usize, g: usize, x: usize) -> usize {
        self.data.act[i][g * self.data.sizes[i] + x]
    }

    /// Interchange law and unit/associativity of the product on basis
    /// elements of the given objects.
    pub fn check_monoidal(&self) -> Result<()> {
        let n = self.data.objects();
        let cat = &self.category;
        for a in 0..n {
            for b in 0..n {
                if a + b >= n {
                    continue;
                }
                // id ⊗ id = id
                let p = self.product(a, b, a, b, cat.identity(a), cat.identity(b))?;
                if p != cat.identity(a + b) {
                    return Err(Error::InvalidStructure(format!("id ⊗ id ≠ id on ({a}, {b})")));
                }
                for c in 0..n {
                    for d in 0..n {
                        if c + d >= n {
                            continue;
                        }
                        // unit: id_{σ0} ⊗ f = f
                        if a == 0 && c == 0 {
                            for j in 0..cat.hom_dim(b, d) {
                                let f = unit_vec(cat.hom_dim(b, d), j);
                                if self.product(0, b, 0, d, cat.identity(0), &f)? != f {
                                    return Err(Error::InvalidStructure("σ0 is not a unit".into()));
                                }
                            }
                        }
                        // interchange (f ⊗ g)∘(f' ⊗ g') = (f∘f') ⊗ (g∘g'), with f': a → c, f: c → a2...
                        for a2 in 0..n {
                            for b2 in 0..n {
                                if a2 + b2 >= n {
                                    continue;
                                }
                                self.check_interchange(a, b, c, d, a2, b2)?;
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_interchange(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> Result<()> {
        let cat = &self.category;
        // f1: a → c, g1: b → d, f2: c → e, g2: d → f
        for i1 in 0..cat.hom_dim(a, c) {
            for j1 in 0..cat.hom_dim(b, d) {
                let first = self.product_pairing(a, b, c, d)?.image(i1, j1).clone();
                for i2 in 0..cat.hom_dim(c, e) {
                    for j2 in 0..cat.hom_dim(d, f) {
                        let second = self.product_pairing(c, d, e, f)?.image(i2, j2);
                        let mut lhs = BTreeMap::new();
                        for (s, x) in second {
                            for (t, y) in &first {
                                add_scaled(&mut lhs, &cat.compose_basis(a + b, c + d, e + f, *s, *t), &(x * y));
                            }
                        }
                        let fc = cat.compose_basis(a, c, e, i2, i1);
                        let gc = cat.compose_basis(b, d, f, j2, j1);
                        let mut rhs = BTreeMap::new();
                        let pp = self.product_pairing(a, b, e, f)?;
                        for (s, x) in &fc {
                            for (t, y) in &gc {
                                add_scaled(&mut rhs, pp.image(*s, *t), &(x * y));
                            }
                        }
                        if collect_sparse(lhs) != collect_sparse(rhs) {
                            return Err(Error::InvalidStructure(format!(
                                "interchange law fails on ({a}, {b}) → ({c}, {d}) → ({e}, {f})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// For `hom(σ_1, σ_1)`, the group element `t` of each basis element, where
    /// the basis element is right multiplication `x ↦ x·t`.
    pub fn right_multiplication_labels(&self) -> Result<Vec<usize>> {
        if self.max_power() < 1 {
            return Err(Error::UnknownObject("σ1".into()));
        }
        let e = self.data.group.identity();
        Ok(self.data.orbits[self.data.pair(1, 1)]
            .iter()
            .map(|orbit| {
                orbit
                    .iter()
                    .find(|&&(_, c)| c == e)
                    .map(|&(r, _)| r)
                    .expect("free orbit meets the identity column")
            })
            .collect())
    }

    /// The assignment `t̃ ↦ t⁻¹` from `hom(σ_1, σ_1)` to `QW`, on basis indices.
    pub fn inverse_assignment(&self) -> Result<Vec<usize>> {
        let g = &self.data.group;
        Ok(self.right_multiplication_labels()?.into_iter().map(|t| g.inv(t)).collect())
    }
}

/// Whether a basis bijection `hom(σ_1, σ_1) → W` extends to a ring
/// isomorphism onto `QW`, with `f ∘ g ↦ φ(f)·φ(g)`.
pub fn is_ring_iso_to_group_algebra(ea: &MonoidalDGCategory, map: &[usize]) -> bool {
    let cat = ea.category();
    let g = ea.group();
    let n = cat.hom_dim(1, 1);
    if map.len() != n || n != g.order() {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in map {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    let id = cat.identity(1);
    let id_index = id.iter().position(|x| x.is_one());
    if id.iter().filter(|x| !x.is_zero()).count() != 1 || id_index.map(|i| map[i]) != Some(g.identity()) {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            let prod = cat.compose_basis(1, 1, 1, i, j);
            if prod.len() != 1 || !prod[0].1.is_one() || map[prod[0].0] != g.mul(map[i], map[j]) {
                return false;
            }
        }
    }
    true
}

/// Searches for a basis bijection `hom(σ_1, σ_1) → W` that is a ring
/// isomorphism, by assigning images to the generators of `W` and extending.
pub fn find_ring_iso(ea: &MonoidalDGCategory) -> Option<Vec<usize>> {
    let cat = ea.category();
    let g = ea.group();
    let n = cat.hom_dim(1, 1);
    if n != g.order() {
        return None;
    }
    // the basis must be closed under composition with unit coefficients
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            let p = cat.compose_basis(1, 1, 1, i, j);
            if p.len() != 1 || !p[0].1.is_one() {
                return None;
            }
            table[i * n + j] = p[0].0;
        }
    }
    let unit = cat.identity(1).iter().position(|x| x.is_one())?;
    let gens = g.generator_indices();
    let mut choice = vec![0usize; gens.len()];
    search_generators(g, &table, n, unit, &gens, &mut choice, 0)
}

fn search_generators(
    g: &GroupRef,
    table: &[usize],
    n: usize,
    unit: usize,
    gens: &[usize],
    choice: &mut Vec<usize>,
    k: usize,
) -> Option<Vec<usize>> {
    if k == gens.len() {
        // extend: element word ↦ basis word, breadth first from the identity
        let mut to_basis = vec![usize::MAX; n];
        to_basis[g.identity()] = unit;
        let mut queue = vec![g.identity()];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (gi, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let img = table[to_basis[x] * n + choice[gi]];
                if to_basis[y] == usize::MAX {
                    to_basis[y] = img;
                    queue.push(y);
                } else if to_basis[y] != img {
                    return None;
                }
            }
            i += 1;
        }
        let mut map = vec![usize::MAX; n];
        for (x, &b) in to_basis.iter().enumerate() {
            if map[b] != usize::MAX {
                return None;
            }
            map[b] = x;
        }
        for a in 0..n {
            for b in 0..n {
                if map[table[a * n + b]] != g.mul(map[a], map[b]) {
                    return None;
                }
            }
        }
        return Some(map);
    }
    for cand in 0..n {
        choice[k] = cand;
        if let Some(m) = search_generators(g, table, n, unit, gens, choice, k + 1) {
            return Some(m);
        }
    }
    None
}

/// `Q(W^i) ≅ ⊕ QW`: the number of free summands and the change of basis whose
/// columns are `g·r` for each orbit representative `r`, orbit by orbit.
pub fn decompose_power(group: &GroupRef, i: usize) -> Result<(usize, MatQ)> {
    if i == 0 {
        return Err(Error::InvalidStructure("decompose_power needs i ≥ 1".into()));
    }
    let ea = build_ea(group.clone(), i)?;
    let size = ea.sigma_dim(i);
    let w = group.order();
    let mut seen = vec![false; size];
    let mut cols = Vec::with_capacity(size);
    let mut count = 0;
    for r in 0..size {
        if seen[r] {
            continue;
        }
        count += 1;
        for g in 0..w {
            let y = ea.act_on_tuple(i, g, r);
            seen[y] = true;
            cols.push(y);
        }
    }
    let mut p = MatQ::zeros(size, size);
    for (c, &r) in cols.iter().enumerate() {
        p.set(r, c, Rational::one());
    }
    Ok((count, p))
}

/// Data of a dg functor: an object map and a chain map on every hom.
#[derive(Clone, Debug)]
pub struct DGFunctor {
    source: DGCategory,
    target: DGCategory,
    objects: Vec<usize>,
    maps: Vec<DGMap>,
}

impl DGFunctor {
    pub fn new(source: DGCategory, target: DGCategory, objects: Vec<usize>, maps: Vec<DGMap>) -> Result<Self> {
        let f = DGFunctor {
            source,
            target,
            objects,
            maps,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(c: &DGCategory) -> Self {
        let n = c.object_count();
        let maps = c.homs.iter().map(DGMap::identity).collect();
        DGFunctor {
            source: c.clone(),
            target: c.clone(),
            objects: (0..n).collect(),
            maps,
        }
    }

    pub fn source(&self) -> &DGCategory {
        &self.source
    }

    pub fn target(&self) -> &DGCategory {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn hom_map(&self, a: usize, b: usize) -> &DGMap {
        &self.maps[a * self.source.object_count() + b]
    }

    /// Chain maps, units and composition on all basis pairs.
    pub fn validate(&self) -> Result<()> {
        let n = self.source.object_count();
        if self.objects.len() != n || self.maps.len() != n * n {
            return Err(Error::InvalidStructure("functor data has the wrong number of entries".into()));
        }
        let mut seen = vec![false; self.target.object_count()];
        for &o in &self.objects {
            if o >= seen.len() || std::mem::replace(&mut seen[o], true) {
                return Err(Error::InvalidStructure("object map is not injective".into()));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidStructure("object map is not surjective".into()));
        }
        let mats: Vec<MatQ> = self.maps.iter().map(total_matrix).collect();
        for a in 0..n {
            for b in 0..n {
                let f = &self.maps[a * n + b];
                f.validate()?;
                let (fa, fb) = (self.objects[a], self.objects[b]);
                if f.target().dims() != self.target.hom(fa, fb).dims()
                    || (f.target().total_dim() > 0 && f.target().lo() != self.target.hom(fa, fb).lo())
                {
                    return Err(Error::InvalidStructure(format!("hom map ({a}, {b}) has the wrong target")));
                }
            }
            let img = mats[a * n + a].mul_vec(self.source.identity(a));
            let fa = self.objects[a];
            if img != self.target.identity(fa) {
                return Err(Error::NonFunctorial(a, a, a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (fa, fb, fc) = (self.objects[a], self.objects[b], self.objects[c]);
                    let (mbc, mab, mac) = (&mats[b * n + c], &mats[a * n + b], &mats[a * n + c]);
                    let fbc: Vec<Vec<Rational>> = (0..mbc.cols()).map(|i| mbc.column(i)).collect();
                    let fab: Vec<Vec<Rational>> = (0..mab.cols()).map(|j| mab.column(j)).collect();
                    for (i, u) in fbc.iter().enumerate() {
                        for (j, v) in fab.iter().enumerate() {
                            let lhs = mac.mul_vec(&dense_from_sparse(
                                self.source.hom_dim(a, c),
                                &self.source.compose_basis(a, b, c, i, j),
                            ));
                            let rhs = self.target.compose(fa, fb, fc, u, v);
                            if lhs != rhs {
                                return Err(Error::NonFunctorial(a, b, c));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &DGFunctor) -> Result<DGFunctor> {
        let n = self.source.object_count();
        let objects: Vec<usize> = self.objects.iter().map(|&o| other.objects[o]).collect();
        let mut maps = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let g = other.hom_map(self.objects[a], self.objects[b]);
                maps.push(g.compose(self.hom_map(a, b))?);
            }
        }
        Ok(DGFunctor {
            source: self.source.clone(),
            target: other.target.clone(),
            objects,
            maps,
        })
    }

    /// First hom on which the functor is not a quasi-isomorphism.
    pub fn quasi_iso_failure(&self) -> Option<(usize, usize)> {
        let n = self.source.object_count();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| !dgmod::is_quasi_iso(self.hom_map(a, b)))
    }
}

/// Validates the functor data and reports whether every hom map is a
/// quasi-isomorphism.
pub fn is_quasi_iso_functor(f: &DGFunctor) -> Result<bool> {
    f.validate()?;
    Ok(f.quasi_iso_failure().is_none())
}

/// Expresses `v` in the basis given by the columns of `coords`.
fn solve_in(coords: &Coordinates, v: &[Rational]) -> Result<Vec<Rational>> {
    coords
        .solve_checked(v)
        .ok_or_else(|| Error::InvalidStructure("composite leaves the subcategory".into()))
}

/// Subcategory with homs `new_homs[p]`, included into `c.hom(p)` by the
/// total matrices `incl[p]`.
fn restrict_category(c: &DGCategory, new_homs: Vec<DGModule>, incl: &[MatQ]) -> Result<DGCategory> {
    let n = c.object_count();
    let coords: Vec<Coordinates> = incl.iter().map(|m| Coordinates::new(m.clone())).collect::<Result<_>>()?;
    let cols: Vec<Vec<Vec<Rational>>> = incl.iter().map(MatQ::columns).collect();
    let mut pairings = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                let (lbc, lab) = (&cols[b * n + cc], &cols[a * n + b]);
                let mut err = None;
                let p = Bilinear::from_fn(new_homs[a * n + cc].total_dim(), lbc.len(), lab.len(), |i, j| {
                    let img = c.compose(a, b, cc, &lbc[i], &lab[j]);
                    match solve_in(&coords[a * n + cc], &img) {
                        Ok(x) => sparse_from_dense(&x),
                        Err(e) => {
                            err = Some(e);
                            Vec::new()
                        }
                    }
                });
                if let Some(e) = err {
                    return Err(e);
                }
                pairings.push(p);
            }
        }
    }
    let identities = (0..n)
        .map(|a| solve_in(&coords[a * n + a], c.identity(a)))
        .collect::<Result<_>>()?;
    Ok(DGCategory::new_unchecked(c.objects.clone(), new_homs, identities, pairings))
}

/// `C_0 C` and its inclusion functor into `C`.
pub fn connective_cover(c: &DGCategory) -> Result<(DGCategory, DGFunctor)> {
    let mut homs = Vec::new();
    let mut maps = Vec::new();
    let mut incl = Vec::new();
    for h in &c.homs {
        let (cover, inc) = dgmod::connective_cover(h);
        incl.push(total_matrix(&inc));
        homs.push(cover);
        maps.push(inc);
    }
    let cover = restrict_category(c, homs, &incl)?;
    // the inclusion targets the original homs
    let functor = DGFunctor {
        source: cover.clone(),
        target: c.clone(),
        objects: (0..c.object_count()).collect(),
        maps,
    };
    Ok((cover, functor))
}

/// A graded category: a dg category whose differentials vanish.
#[derive(Clone, Debug)]
pub struct GradedQCategory {
    category: DGCategory,
}

impl GradedQCategory {
    pub fn as_dg(&self) -> &DGCategory {
        &self.category
    }

    pub fn into_dg(self) -> DGCategory {
        self.category
    }

    /// Nonzero graded dimensions of `hom(a, b)`.
    pub fn graded_dims(&self, a: usize, b: usize) -> Vec<(i32, usize)> {
        let h = self.category.hom(a, b);
        h.degrees().map(|n| (n, h.dim(n))).filter(|x| x.1 > 0).collect()
    }
}

/// Homology of every hom with the induced composition. Only degrees in
/// `keep` are retained.
fn homology_with(c: &DGCategory, keep: impl Fn(i32) -> bool) -> (DGCategory, Vec<Homology>) {
    let n = c.object_count();
    let hs: Vec<Homology> = c.homs.iter().map(dgmod::homology).collect();
    // kept degrees and their representative columns in total coordinates
    let mut new_homs = Vec::with_capacity(n * n);
    let mut reps: Vec<Vec<(i32, Vec<Rational>)>> = Vec::with_capacity(n * n);
    for (h, hom) in hs.iter().zip(&c.homs) {
        let degs: Vec<i32> = (h.rep.lo..=h.rep.hi()).filter(|&d| keep(d) && h.rep.dim(d) > 0).collect();
        let mut r = Vec::new();
        for &d in &degs {
            let cols = h.representatives(d);
            let off = offset_of(hom, d).expect("in range");
            for j in 0..cols.cols() {
                let mut v = vec![Rational::zero(); hom.total_dim()];
                for (i, x) in cols.column(j).into_iter().enumerate() {
                    v[off + i] = x;
                }
                r.push((d, v));
            }
        }
        let (lo, dims) = match (degs.first(), degs.last()) {
            (Some(&lo), Some(&hi)) => (lo, (lo..=hi).map(|d| if keep(d) { h.rep.dim(d) } else { 0 }).collect()),
            _ => (0, Vec::new()),
        };
        let diffs = zero_diffs(&dims);
        new_homs.push(DGModule::over_trivial_unchecked(lo, dims, diffs));
        reps.push(r);
    }
    let class_in = |p: usize, deg: i32, v: &[Rational]| -> Vec<Rational> {
        let hom = &c.homs[p];
        let target = &new_homs[p];
        let mut out = vec![Rational::zero(); target.total_dim()];
        if let (Some(src), Some(dst)) = (offset_of(hom, deg), offset_of(target, deg)) {
            let slice = &v[src..src + hom.dim(deg)];
            let cls = hs[p].class_of(deg, slice).expect("composites of cycles are cycles");
            for (i, x) in cls.into_iter().enumerate() {
                out[dst + i] = x;
            }
        }
        out
    };
    let mut pairings = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                let (rbc, rab) = (&reps[b * n + cc], &reps[a * n + b]);
                pairings.push(Bilinear::from_fn(new_homs[a * n + cc].total_dim(), rbc.len(), rab.len(), |i, j| {
                    let deg = rbc[i].0 + rab[j].0;
                    if !keep(deg) {
                        return Vec::new();
                    }
                    let img = c.compose(a, b, cc, &rbc[i].1, &rab[j].1);
                    sparse_from_dense(&class_in(a * n + cc, deg, &img))
                }));
            }
        }
    }
    let identities = (0..n).map(|a| class_in(a * n + a, 0, c.identity(a))).collect();
    (DGCategory::new_unchecked(c.objects.clone(), new_homs, identities, pairings), hs)
}

fn zero_diffs(dims: &[usize]) -> Vec<MatQ> {
    (0..dims.len())
        .map(|k| MatQ::zeros(if k == 0 { 0 } else { dims[k - 1] }, dims[k]))
        .collect()
}

pub fn homology_category(c: &DGCategory) -> GradedQCategory {
    GradedQCategory {
        category: homology_with(c, |_| true).0,
    }
}

/// `H_0 C`, concentrated in degree 0.
pub fn h0_category(c: &DGCategory) -> DGCategory {
    homology_with(c, |d| d == 0).0
}

/// The zig-zag `C ← C_0 C → H_0 C`.
#[derive(Clone, Debug)]
pub struct Zigzag {
    pub cover: DGCategory,
    pub h0: DGCategory,
    pub to_original: DGFunctor,
    pub to_h0: DGFunctor,
    /// Whether both legs are quasi-isomorphisms.
    pub verdict: bool,
    /// First hom `(a, b)` on which a leg fails, with the failing leg
    /// (`0` for `C_0 C → C`, `1` for `C_0 C → H_0 C`).
    pub offending: Option<(usize, usize, u8)>,
}

pub fn formality_zigzag(c: &DGCategory) -> Result<Zigzag> {
    let n = c.object_count();
    let (cover, to_original) = connective_cover(c)?;
    let (h0, hs) = homology_with(c, |d| d == 0);
    let mut maps = Vec::with_capacity(n * n);
    for p in 0..n * n {
        let src = &cover.homs[p];
        let dst = &h0.homs[p];
        let z0 = src_cycles(&c.homs[p]);
        let components = src
            .degrees()
            .map(|d| {
                if d != 0 {
                    return MatQ::zeros(dst.dim(d), src.dim(d));
                }
                let mut m = MatQ::zeros(dst.dim(0), src.dim(0));
                for j in 0..z0.cols() {
                    let cls = hs[p].class_of(0, &z0.column(j)).expect("kernel vectors are cycles");
                    for (i, x) in cls.into_iter().enumerate() {
                        m.set(i, j, x);
                    }
                }
                m
            })
            .collect();
        maps.push(DGMap::new_unchecked(src.clone(), dst.clone(), components));
    }
    let to_h0 = DGFunctor {
        source: cover.clone(),
        target: h0.clone(),
        objects: (0..n).collect(),
        maps,
    };
    to_original.validate()?;
    to_h0.validate()?;
    let offending = to_original
        .quasi_iso_failure()
        .map(|(a, b)| (a, b, 0))
        .or_else(|| to_h0.quasi_iso_failure().map(|(a, b)| (a, b, 1)));
    Ok(Zigzag {
        cover,
        h0,
        to_original,
        to_h0,
        verdict: offending.is_none(),
        offending,
    })
}

/// The degree-0 cycle basis used by [`dgmod::connective_cover`].
fn src_cycles(m: &DGModule) -> MatQ {
    if m.is_zero() || m.hi() < 0 {
        return MatQ::zeros(0, 0);
    }
    m.d(0).kernel_basis()
}

/// `C ⊗ A` for the square-zero algebra `A = Q ⊕ D`, where `D` is a complex
/// (trivial group) in positive degrees. Products of two elements of `D`
/// vanish, so `H(C ⊗ A) = H(C) ⊗ (Q ⊕ H(D))` for `C` in degree 0.
pub fn square_zero_extension(c: &DGCategory, tail: &DGModule) -> Result<DGCategory> {
    if !c.is_concentrated_in_degree_zero() {
        return Err(Error::InvalidStructure("base category must be concentrated in degree 0".into()));
    }
    if !tail.is_zero() && tail.lo() < 1 {
        return Err(Error::InvalidStructure("tail must live in positive degrees".into()));
    }
    let n = c.object_count();
    let unit = DGModule::over_trivial_unchecked(0, vec![1], vec![MatQ::zeros(0, 1)]);
    let alg = DGModule::direct_sum(&[&unit, tail])?;
    let alg_deg = index_degrees(&alg);
    let homs: Vec<DGModule> = c
        .homs
        .iter()
        .map(|h| dgmod::tensor(&h.trimmed_or_degree_zero(), &alg))
        .collect::<Result<_>>()?;
    // index of (u ⊗ α) in tensor(E, A): degree |α| block, u·dim A_{|α|} + local(α)
    let alg_off = degree_offsets(&alg);
    let locate = |h: &DGModule, u: usize, alpha: usize| -> usize {
        let d = alg_deg[alpha];
        let local = alpha - alg_off[(d - alg.lo()) as usize];
        offset_of(h, d).expect("degree in range") + u * alg.dim(d) + local
    };
    let split = |h: &DGModule, idx: usize| -> (usize, usize) {
        let degs = index_degrees(h);
        let d = degs[idx];
        let local = idx - offset_of(h, d).expect("in range");
        let ad = alg.dim(d);
        (local / ad, alg_off[(d - alg.lo()) as usize] + local % ad)
    };
    let mut pairings = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                let (hbc, hab, hac) = (&homs[b * n + cc], &homs[a * n + b], &homs[a * n + cc]);
                pairings.push(Bilinear::from_fn(hac.total_dim(), hbc.total_dim(), hab.total_dim(), |i, j| {
                    let (u, alpha) = split(hbc, i);
                    let (v, beta) = split(hab, j);
                    let prod = match (alpha, beta) {
                        (0, x) | (x, 0) => x,
                        _ => return Vec::new(),
                    };
                    c.compose_basis(a, b, cc, u, v)
                        .into_iter()
                        .map(|(k, x)| (locate(hac, k, prod), x))
                        .collect()
                }));
            }
        }
    }
    let identities = (0..n)
        .map(|a| {
            let h = &homs[a * n + a];
            let mut v = vec![Rational::zero(); h.total_dim()];
            for (k, x) in c.identity(a).iter().enumerate() {
                if !x.is_zero() {
                    v[locate(h, k, 0)] = x.clone();
                }
            }
            v
        })
        .collect();
    Ok(DGCategory::new_unchecked(c.objects.clone(), homs, identities, pairings))
}

impl DGModule {
    /// Degree-0 complex with the same total dimension, for categories already
    /// concentrated in degree 0.
    fn trimmed_or_degree_zero(&self) -> DGModule {
        let dim = self.dim(0);
        DGModule::over_trivial_unchecked(0, vec![dim], vec![MatQ::zeros(0, dim)])
    }
}

/// Transports a category along invertible changes of basis, one matrix per
/// hom and per degree (`changes[p][k]` acts on degree `lo + k` of hom `p`).
pub fn change_basis(c: &DGCategory, changes: &[Vec<MatQ>]) -> Result<DGCategory> {
    let n = c.object_count();
    let mut homs = Vec::with_capacity(n * n);
    let mut fwd = Vec::with_capacity(n * n);
    let mut back = Vec::with_capacity(n * n);
    for (h, p) in c.homs.iter().zip(changes) {
        homs.push(h.change_basis(p)?);
        let blocks: Vec<&MatQ> = p.iter().collect();
        let total = MatQ::block_diag(&blocks);
        let inv = total
            .inverse()
            .ok_or_else(|| Error::InvalidStructure("singular change of basis".into()))?;
        back.push(inv.columns().into_iter().map(|v| sparse_from_dense(&v)).collect::<Vec<_>>());
        fwd.push(total.columns().into_iter().map(|v| sparse_from_dense(&v)).collect::<Vec<_>>());
    }
    let mut pairings = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                let (ibc, iab, fac) = (&back[b * n + cc], &back[a * n + b], &fwd[a * n + cc]);
                pairings.push(Bilinear::from_fn(homs[a * n + cc].total_dim(), ibc.len(), iab.len(), |i, j| {
                    let mut acc = BTreeMap::new();
                    for (k, x) in &ibc[i] {
                        for (l, y) in &iab[j] {
                            add_scaled(&mut acc, &c.compose_basis(a, b, cc, *k, *l), &(x * y));
                        }
                    }
                    let mut out = BTreeMap::new();
                    for (k, x) in acc {
                        add_scaled(&mut out, &fac[k], &x);
                    }
                    collect_sparse(out)
                }));
            }
        }
    }
    let identities = (0..n)
        .map(|a| {
            let p = a * n + a;
            let mut acc = BTreeMap::new();
            for (k, x) in c.identity(a).iter().enumerate() {
                if !x.is_zero() {
                    add_scaled(&mut acc, &fwd[p][k], x);
                }
            }
            dense_from_sparse(homs[p].total_dim(), &collect_sparse(acc))
        })
        .collect();
    Ok(DGCategory::new_unchecked(c.objects.clone(), homs, identities, pairings))
}

/// A copy of `E_a` with every pairing stored explicitly.
pub fn materialize(c: &DGCategory) -> DGCategory {
    let pairings = c.pairings().into_iter().cloned().collect();
    DGCategory::new_unchecked(c.objects.clone(), c.homs.clone(), c.identities.clone(), pairings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::group_from_spec;

    fn grp(s: &str) -> GroupRef {
        Arc::new(group_from_spec(s).unwrap())
    }

    #[test]
    fn ea_dimensions_and_laws() {
        let ea = build_ea(grp("C2"), 2).unwrap();
        let c = ea.category();
        assert_eq!(c.hom_dim(0, 0), 1);
        assert_eq!(c.hom_dim(1, 1), 2);
        assert_eq!(c.hom_dim(1, 2), 4);
        assert_eq!(c.hom_dim(2, 2), 8);
        c.validate().unwrap();
        ea.check_monoidal().unwrap();
    }

    #[test]
    fn group_ring_identification() {
        for spec in ["C2", "C3", "S3"] {
            let ea = build_ea(grp(spec), 1).unwrap();
            let inverse = ea.inverse_assignment().unwrap();
            assert!(is_ring_iso_to_group_algebra(&ea, &inverse), "{spec}");
            let found = find_ring_iso(&ea).unwrap();
            assert!(is_ring_iso_to_group_algebra(&ea, &found));
        }
        // t̃ ↦ t is an anti-isomorphism, so it fails for non-abelian W
        let ea = build_ea(grp("S3"), 1).unwrap();
        let direct = ea.right_multiplication_labels().unwrap();
        assert!(!is_ring_iso_to_group_algebra(&ea, &direct));
    }

    #[test]
    fn free_decomposition() {
        let g = grp("S3");
        let (count, p) = decompose_power(&g, 2).unwrap();
        assert_eq!(count, 6);
        let ea = build_ea(g.clone(), 2).unwrap();
        let m = ea.sigma_module(2);
        let pinv = p.inverse().unwrap();
        let reg = DGModule::regular(g.clone());
        for x in 0..g.order() {
            let blocks = vec![reg.action(x, 0); count];
            let expect = MatQ::block_diag(&blocks.iter().collect::<Vec<_>>());
            assert_eq!(&(&pinv * &m.action(x, 0)) * &p, expect);
        }
    }

    #[test]
    fn formal_and_non_formal_extensions() {
        let ea = build_ea(grp("C2"), 1).unwrap();
        let base = materialize(ea.category());
        let disk = DGModule::over_trivial(1, vec![1, 1], vec![MatQ::zeros(0, 1), MatQ::identity(1)]).unwrap();
        let c = square_zero_extension(&base, &disk).unwrap();
        c.validate().unwrap();
        let z = formality_zigzag(&c).unwrap();
        assert!(z.verdict);
        let circle = DGModule::over_trivial(1, vec![1], vec![MatQ::zeros(0, 1)]).unwrap();
        let c = square_zero_extension(&base, &circle).unwrap();
        let z = formality_zigzag(&c).unwrap();
        assert!(!z.verdict);
        assert_eq!(z.offending.map(|o| o.2), Some(1));
    }

    #[test]
    fn base_change_keeps_laws() {
        let ea = build_ea(grp("C2"), 1).unwrap();
        let base = materialize(ea.category());
        let disk = DGModule::over_trivial(1, vec![1, 1], vec![MatQ::zeros(0, 1), MatQ::identity(1)]).unwrap();
        let c = square_zero_extension(&base, &disk).unwrap();
        let changes: Vec<Vec<MatQ>> = c
            .homs()
            .iter()
            .map(|h| {
                h.dims()
                    .iter()
                    .map(|&d| MatQ::from_fn(d, d, |r, s| Rational::from_integer(((r <= s) as i64 * (1 + r as i64 + s as i64)).into())))
                    .collect()
            })
            .collect();
        let d = change_basis(&c, &changes).unwrap();
        d.validate().unwrap();
        let (cover, inc) = connective_cover(&d).unwrap();
        cover.validate().unwrap();
        inc.validate().unwrap();
        let (cover2, _) = connective_cover(&cover).unwrap();
        assert_eq!(cover2.homs(), cover.homs());
        let hc = homology_category(&d);
        hc.as_dg().validate().unwrap();
        assert_eq!(hc.graded_dims(1, 1), vec![(0, 2)]);
    }
}
