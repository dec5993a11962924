//! Right modules over a dg category, coends, the box product and the Morita
//! adjunction between modules over `E_a` and complexes of `QW`-modules.
//!
//! A right module assigns a complex `M(o)` to each object and acts by
//! `M(o) ⊗ hom(o', o) → M(o')`, written `m·f`. The pairing for the pair
//! `(o', o)` is stored at `o'·n + o`, with the same column convention as the
//! composition pairings of [`DGCategory`].

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::dgmod::{self, DGMap, DGModule};
use crate::error::{Error, Result};
use crate::exactq::{dense_from_sparse, sparse_from_dense, Coordinates, Echelon, MatQ, Rational, SparseVec};
use crate::ringoid::{index_degrees, offset_of, total_differential, Bilinear, DGCategory, MonoidalDGCategory};

#[derive(Clone, Debug)]
pub struct RightModule {
    base: Arc<DGCategory>,
    values: Vec<DGModule>,
    actions: Vec<Bilinear>,
}

impl RightModule {
    pub fn new(base: Arc<DGCategory>, values: Vec<DGModule>, actions: Vec<Bilinear>) -> Result<Self> {
        let m = RightModule { base, values, actions };
        m.validate()?;
        Ok(m)
    }

    pub fn base(&self) -> &Arc<DGCategory> {
        &self.base
    }

    pub fn value(&self, o: usize) -> &DGModule {
        &self.values[o]
    }

    pub fn values(&self) -> &[DGModule] {
        &self.values
    }

    pub fn dim(&self, o: usize) -> usize {
        self.values[o].total_dim()
    }

    /// The pairing `M(o) ⊗ hom(o', o) → M(o')`.
    pub fn action(&self, target: usize, source: usize) -> &Bilinear {
        &self.actions[target * self.base.object_count() + source]
    }

    /// `m·f` for `m ∈ M(o)` and `f ∈ hom(o', o)`.
    pub fn act(&self, target: usize, source: usize, m: &[Rational], f: &[Rational]) -> Vec<Rational> {
        self.action(target, source).apply(m, f)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(DGModule::is_zero)
    }

    /// Shapes, degrees, Leibniz rule, unit and associativity on basis elements.
    pub fn validate(&self) -> Result<()> {
        let c = &self.base;
        let n = c.object_count();
        if self.values.len() != n || self.actions.len() != n * n {
            return Err(Error::InvalidStructure("module data has the wrong number of entries".into()));
        }
        let degs: Vec<Vec<i32>> = self.values.iter().map(index_degrees).collect();
        let hdeg: Vec<Vec<i32>> = c.homs().iter().map(index_degrees).collect();
        let mdiff: Vec<Vec<SparseVec>> = self.values.iter().map(total_differential).collect();
        let hdiff: Vec<Vec<SparseVec>> = c.homs().iter().map(total_differential).collect();
        for v in &self.values {
            if v.group().order() != 1 {
                return Err(Error::InvalidStructure("module values must be complexes over the trivial group".into()));
            }
            v.validate()?;
        }
        for t in 0..n {
            for s in 0..n {
                let p = self.action(t, s);
                if (p.out_dim(), p.left_dim(), p.right_dim()) != (self.dim(t), self.dim(s), c.hom_dim(t, s)) {
                    return Err(Error::InvalidStructure(format!("action ({t}, {s}) has the wrong shape")));
                }
                for i in 0..p.left_dim() {
                    for j in 0..p.right_dim() {
                        let img = p.image(i, j);
                        let want = degs[s][i] + hdeg[t * n + s][j];
                        if img.iter().any(|(k, _)| degs[t][*k] != want) {
                            return Err(Error::InvalidStructure(format!("action ({t}, {s}) does not preserve degree")));
                        }
                        let lhs = apply_cols(&mdiff[t], img);
                        let mut acc = BTreeMap::new();
                        for (k, x) in &mdiff[s][i] {
                            add_scaled(&mut acc, p.image(*k, j), x);
                        }
                        let sign = sign_of(degs[s][i]);
                        for (k, x) in &hdiff[t * n + s][j] {
                            add_scaled(&mut acc, p.image(i, *k), &(x * &sign));
                        }
                        if lhs != collect(acc) {
                            return Err(Error::InvalidStructure(format!("action ({t}, {s}) is not a chain map")));
                        }
                    }
                }
            }
            // unit
            let id = c.identity(t);
            for i in 0..self.dim(t) {
                if self.act(t, t, &unit(self.dim(t), i), id) != unit(self.dim(t), i) {
                    return Err(Error::InvalidStructure(format!("identity of {t} does not act trivially")));
                }
            }
        }
        // (m·f)·g = m·(f∘g), f: b → a, g: c → b
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    for i in 0..self.dim(a) {
                        for j in 0..c.hom_dim(b, a) {
                            let mf = self.action(b, a).image(i, j);
                            for k in 0..c.hom_dim(cc, b) {
                                let mut lhs = BTreeMap::new();
                                for (t, x) in mf {
                                    add_scaled(&mut lhs, self.action(cc, b).image(*t, k), x);
                                }
                                let fg = c.compose_basis(cc, b, a, j, k);
                                let mut rhs = BTreeMap::new();
                                for (t, x) in &fg {
                                    add_scaled(&mut rhs, self.action(cc, a).image(i, *t), x);
                                }
                                if collect(lhs) != collect(rhs) {
                                    return Err(Error::NonFunctorial(cc, b, a));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn sign_of(d: i32) -> Rational {
    if d.rem_euclid(2) == 1 {
        -Rational::one()
    } else {
        Rational::one()
    }
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
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

fn collect(acc: BTreeMap<usize, Rational>) -> SparseVec {
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

fn apply_cols(cols: &[SparseVec], x: &SparseVec) -> SparseVec {
    let mut acc = BTreeMap::new();
    for (j, a) in x {
        add_scaled(&mut acc, &cols[*j], a);
    }
    collect(acc)
}

/// The representable module `F_o = hom(−, o)`.
pub fn free_module(base: &Arc<DGCategory>, o: usize) -> Result<RightModule> {
    base.check_object(o)?;
    let n = base.object_count();
    let values = (0..n).map(|x| base.hom(x, o).clone()).collect();
    let mut actions = Vec::with_capacity(n * n);
    for t in 0..n {
        for s in 0..n {
            actions.push(base.pairing(t, s, o).clone());
        }
    }
    Ok(RightModule {
        base: base.clone(),
        values,
        actions,
    })
}

/// The zero module.
pub fn zero_module(base: &Arc<DGCategory>) -> RightModule {
    let n = base.object_count();
    let zero = DGModule::over_trivial_unchecked(0, Vec::new(), Vec::new());
    let actions = (0..n * n)
        .map(|p| Bilinear::zero(0, 0, base.hom_dim(p / n, p % n)))
        .collect();
    RightModule {
        base: base.clone(),
        values: vec![zero; n],
        actions,
    }
}

/// Total indices of `L ⊗ R` in terms of total indices of the factors.
#[derive(Clone, Debug)]
struct TensorLayout {
    right: DGModule,
    product: DGModule,
    pairs: Vec<(usize, usize)>,
    index: Vec<usize>,
}

impl TensorLayout {
    fn new(left: &DGModule, right: &DGModule) -> Result<Self> {
        let product = dgmod::tensor(left, right)?;
        let (ld, rd) = (index_degrees(left), index_degrees(right));
        let (lt, rt) = (left.total_dim(), right.total_dim());
        let mut pairs = vec![(0, 0); product.total_dim()];
        let mut index = vec![0; lt * rt];
        for i in 0..lt {
            let p = ld[i];
            let li = i - offset_of(left, p).unwrap();
            for j in 0..rt {
                let q = rd[j];
                let lj = j - offset_of(right, q).unwrap();
                let k = offset_of(&product, p + q).unwrap()
                    + dgmod::tensor_offset(left, right, p + q, p).unwrap()
                    + li * right.dim(q)
                    + lj;
                pairs[k] = (i, j);
                index[i * rt + j] = k;
            }
        }
        Ok(TensorLayout {
            right: right.clone(),
            product,
            pairs,
            index,
        })
    }

    fn index(&self, i: usize, j: usize) -> usize {
        self.index[i * self.right.total_dim() + j]
    }

    fn split(&self, k: usize) -> (usize, usize) {
        self.pairs[k]
    }
}

/// A direct sum of complexes with total indices addressed per summand.
#[derive(Clone, Debug)]
struct SumLayout {
    sum: DGModule,
    /// `index[part][local]`
    index: Vec<Vec<usize>>,
    /// `owner[total] = (part, local)`
    owner: Vec<(usize, usize)>,
}

impl SumLayout {
    fn new(parts: &[DGModule]) -> Result<Self> {
        let sum = if parts.is_empty() {
            DGModule::over_trivial_unchecked(0, Vec::new(), Vec::new())
        } else {
            DGModule::direct_sum(&parts.iter().collect::<Vec<_>>())?
        };
        let mut index = Vec::with_capacity(parts.len());
        let mut owner = vec![(0, 0); sum.total_dim()];
        for (pi, part) in parts.iter().enumerate() {
            let mut idx = Vec::with_capacity(part.total_dim());
            for d in part.degrees() {
                let before: usize = parts[..pi].iter().map(|q| q.dim(d)).sum();
                let base = offset_of(&sum, d).unwrap() + before;
                let local0 = offset_of(part, d).unwrap();
                for j in 0..part.dim(d) {
                    owner[base + j] = (pi, local0 + j);
                    idx.push(base + j);
                }
            }
            index.push(idx);
        }
        Ok(SumLayout { sum, index, owner })
    }
}

/// `S / R` for a complex `S` and a subcomplex `R` spanned by homogeneous
/// relations. The quotient basis is the set of non-pivot standard basis
/// vectors of `S`.
#[derive(Clone, Debug)]
pub struct Quotient {
    layout: SumLayout,
    ech: Vec<Echelon>,
    complement: Vec<Vec<usize>>,
    module: DGModule,
    /// quotient total index → sum total index
    basis: Vec<usize>,
}

impl Quotient {
    fn build(layout: SumLayout, relations: impl IntoIterator<Item = SparseVec>) -> Quotient {
        let s = &layout.sum;
        let degs = index_degrees(s);
        let mut ech: Vec<Echelon> = s.dims().iter().map(|&d| Echelon::new(d)).collect();
        for r in relations {
            let Some(&(first, _)) = r.first() else { continue };
            let d = degs[first];
            let off = offset_of(s, d).unwrap();
            let local: SparseVec = r.into_iter().map(|(k, x)| (k - off, x)).collect();
            ech[(d - s.lo()) as usize].insert_sparse(&local);
        }
        let complement: Vec<Vec<usize>> = ech.iter().map(Echelon::complement).collect();
        let mut basis = Vec::new();
        for (k, d) in s.degrees().enumerate() {
            let off = offset_of(s, d).unwrap();
            basis.extend(complement[k].iter().map(|c| off + c));
        }
        let dims: Vec<usize> = complement.iter().map(Vec::len).collect();
        let mut diffs = Vec::with_capacity(dims.len());
        for (k, d) in s.degrees().enumerate() {
            if k == 0 {
                diffs.push(MatQ::zeros(0, dims[0]));
                continue;
            }
            let dm = s.d(d);
            let mut m = MatQ::zeros(dims[k - 1], dims[k]);
            for (j, &c) in complement[k].iter().enumerate() {
                let col = dm.column(c);
                for (i, x) in ech[k - 1].quotient_coords(&col, &complement[k - 1]).into_iter().enumerate() {
                    m.set(i, j, x);
                }
            }
            diffs.push(m);
        }
        let module = DGModule::over_trivial_unchecked(s.lo(), dims, diffs);
        Quotient {
            layout,
            ech,
            complement,
            module,
            basis,
        }
    }

    pub fn module(&self) -> &DGModule {
        &self.module
    }

    /// Class of a sum vector, in quotient coordinates.
    fn project(&self, v: &SparseVec) -> Vec<Rational> {
        let s = &self.layout.sum;
        let mut out = vec![Rational::zero(); self.module.total_dim()];
        let degs = index_degrees(s);
        let mut by_degree: BTreeMap<i32, SparseVec> = BTreeMap::new();
        for (k, x) in v {
            by_degree.entry(degs[*k]).or_default().push((*k, x.clone()));
        }
        for (d, part) in by_degree {
            let k = (d - s.lo()) as usize;
            let off = offset_of(s, d).unwrap();
            let dense = dense_from_sparse(s.dim(d), &part.into_iter().map(|(i, x)| (i - off, x)).collect());
            let q = self.ech[k].quotient_coords(&dense, &self.complement[k]);
            let qoff = offset_of(&self.module, d).unwrap();
            for (i, x) in q.into_iter().enumerate() {
                out[qoff + i] = x;
            }
        }
        out
    }

    /// `(summand, local index)` of each quotient basis element.
    fn basis_owner(&self, q: usize) -> (usize, usize) {
        self.layout.owner[self.basis[q]]
    }

    fn sum_index(&self, part: usize, local: usize) -> usize {
        self.layout.index[part][local]
    }

    /// A basis of the relation subcomplex, as sum vectors.
    fn relation_basis(&self) -> Vec<SparseVec> {
        let s = &self.layout.sum;
        let mut out = Vec::new();
        for (k, d) in s.degrees().enumerate() {
            let off = offset_of(s, d).unwrap();
            for v in self.ech[k].basis() {
                out.push(sparse_from_dense(&v).into_iter().map(|(i, x)| (off + i, x)).collect());
            }
        }
        out
    }
}

/// `∫^c M(c) ⊗ hom(x, c)` together with the evaluation `m ⊗ g ↦ m·g` into
/// `M(x)`.
#[derive(Clone, Debug)]
pub struct CoendCollapse {
    pub coend: Quotient,
    /// Evaluation on total indices, `dim M(x) × dim coend`.
    pub evaluation: MatQ,
    pub is_iso: bool,
}

pub fn coend_collapse(m: &RightModule, x: usize) -> Result<CoendCollapse> {
    let c = &m.base;
    c.check_object(x)?;
    let n = c.object_count();
    let tensors: Vec<TensorLayout> = (0..n)
        .map(|o| TensorLayout::new(m.value(o), c.hom(x, o)))
        .collect::<Result<_>>()?;
    let layout = SumLayout::new(&tensors.iter().map(|t| t.product.clone()).collect::<Vec<_>>())?;
    let mut relations = Vec::new();
    // (m·f) ⊗ g − m ⊗ (f∘g), for m ∈ M(a), f ∈ hom(b, a), g ∈ hom(x, b)
    for a in 0..n {
        for b in 0..n {
            for i in 0..m.dim(a) {
                for j in 0..c.hom_dim(b, a) {
                    let mf = m.action(b, a).image(i, j);
                    for k in 0..c.hom_dim(x, b) {
                        let mut acc = BTreeMap::new();
                        for (t, v) in mf {
                            let idx = layout.index[b][tensors[b].index(*t, k)];
                            add_scaled(&mut acc, &vec![(idx, Rational::one())], v);
                        }
                        for (t, v) in &c.compose_basis(x, b, a, j, k) {
                            let idx = layout.index[a][tensors[a].index(i, *t)];
                            add_scaled(&mut acc, &vec![(idx, Rational::one())], &-v.clone());
                        }
                        let r = collect(acc);
                        if !r.is_empty() {
                            relations.push(r);
                        }
                    }
                }
            }
        }
    }
    let q = Quotient::build(layout, relations);
    let mut ev = MatQ::zeros(m.dim(x), q.module.total_dim());
    for k in 0..q.module.total_dim() {
        let (o, local) = q.basis_owner(k);
        let (i, j) = tensors[o].split(local);
        for (r, v) in m.action(x, o).image(i, j) {
            ev.set(*r, k, v.clone());
        }
    }
    let is_iso = ev.is_square() && ev.rank() == ev.rows() && same_degrees(&q.module, m.value(x));
    Ok(CoendCollapse {
        coend: q,
        evaluation: ev,
        is_iso,
    })
}

fn same_degrees(a: &DGModule, b: &DGModule) -> bool {
    let lo = a.lo().min(b.lo());
    let hi = a.hi().max(b.hi());
    (lo..=hi).all(|d| a.dim(d) == b.dim(d))
}

/// A degree-0 map of right modules, one total matrix per object.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub components: Vec<MatQ>,
}

impl ModuleMap {
    /// Degree preservation, chain map and naturality on all basis elements.
    pub fn validate(&self, source: &RightModule, target: &RightModule) -> Result<()> {
        let c = &source.base;
        let n = c.object_count();
        if self.components.len() != n {
            return Err(Error::InvalidStructure("module map has the wrong number of components".into()));
        }
        for o in 0..n {
            let f = &self.components[o];
            if f.shape() != (target.dim(o), source.dim(o)) {
                return Err(Error::InvalidStructure(format!("component {o} has the wrong shape")));
            }
            let (sd, td) = (index_degrees(source.value(o)), index_degrees(target.value(o)));
            for r in 0..f.rows() {
                for s in 0..f.cols() {
                    if !f.get(r, s).is_zero() && sd[s] != td[r] {
                        return Err(Error::InvalidStructure(format!("component {o} does not preserve degree")));
                    }
                }
            }
            let dt = sparse_matrix(&total_differential(target.value(o)), target.dim(o));
            let ds = sparse_matrix(&total_differential(source.value(o)), source.dim(o));
            if &dt * f != f * &ds {
                return Err(Error::InvalidStructure(format!("component {o} is not a chain map")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for i in 0..source.dim(a) {
                    let fm = self.components[a].column(i);
                    for j in 0..c.hom_dim(b, a) {
                        let lhs = self.components[b].mul_vec(&dense_from_sparse(source.dim(b), source.action(b, a).image(i, j)));
                        let rhs = target.act(b, a, &fm, &unit(c.hom_dim(b, a), j));
                        if lhs != rhs {
                            return Err(Error::NonFunctorial(b, a, a));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(|f| f.is_square() && f.rank() == f.rows())
    }
}

fn sparse_matrix(cols: &[SparseVec], rows: usize) -> MatQ {
    let mut m = MatQ::zeros(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col {
            m.set(*i, j, x.clone());
        }
    }
    m
}

/// Dimension of the space of degree-0 module maps `M → N`.
pub fn module_map_dim(m: &RightModule, n_mod: &RightModule) -> Result<usize> {
    let c = &m.base;
    let n = c.object_count();
    // unknowns: φ_o[r][s] with matching degrees
    let mut slots: Vec<BTreeMap<(usize, usize), usize>> = Vec::with_capacity(n);
    let mut total = 0;
    for o in 0..n {
        let (sd, td) = (index_degrees(m.value(o)), index_degrees(n_mod.value(o)));
        let mut map = BTreeMap::new();
        for r in 0..td.len() {
            for s in 0..sd.len() {
                if td[r] == sd[s] {
                    map.insert((r, s), total);
                    total += 1;
                }
            }
        }
        slots.push(map);
    }
    let mut ech = Echelon::new(total);
    for o in 0..n {
        // d φ − φ d = 0
        let dn = total_differential(n_mod.value(o));
        let dm = total_differential(m.value(o));
        for s in 0..m.dim(o) {
            let mut rows: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
            for r in 0..n_mod.dim(o) {
                if let Some(&u) = slots[o].get(&(r, s)) {
                    for (t, x) in &dn[r] {
                        add_scaled(rows.entry(*t).or_default(), &vec![(u, x.clone())], &Rational::one());
                    }
                }
            }
            for (k, x) in &dm[s] {
                for r in 0..n_mod.dim(o) {
                    if let Some(&u) = slots[o].get(&(r, *k)) {
                        add_scaled(rows.entry(r).or_default(), &vec![(u, -x.clone())], &Rational::one());
                    }
                }
            }
            for (_, row) in rows {
                let row = collect(row);
                if !row.is_empty() {
                    ech.insert_sparse(&row);
                }
            }
        }
    }
    // φ_b(m·f) − φ_a(m)·f = 0 for m ∈ M(a), f ∈ hom(b, a)
    for a in 0..n {
        for b in 0..n {
            for i in 0..m.dim(a) {
                for j in 0..c.hom_dim(b, a) {
                    let mut rows: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
                    for (k, x) in m.action(b, a).image(i, j) {
                        for r in 0..n_mod.dim(b) {
                            if let Some(&u) = slots[b].get(&(r, *k)) {
                                add_scaled(rows.entry(r).or_default(), &vec![(u, x.clone())], &Rational::one());
                            }
                        }
                    }
                    for s in 0..n_mod.dim(a) {
                        if let Some(&u) = slots[a].get(&(s, i)) {
                            for (r, y) in n_mod.action(b, a).image(s, j) {
                                add_scaled(rows.entry(*r).or_default(), &vec![(u, -y.clone())], &Rational::one());
                            }
                        }
                    }
                    for (_, row) in rows {
                        let row = collect(row);
                        if !row.is_empty() {
                            ech.insert_sparse(&row);
                        }
                    }
                }
            }
        }
    }
    Ok(total - ech.rank())
}

/// Objects at which `M` is generated: scanning objects in order, an object is
/// kept when the images of the objects kept so far do not span `M(o)`.
pub fn generating_objects(m: &RightModule) -> Vec<usize> {
    let c = &m.base;
    let mut gens: Vec<usize> = Vec::new();
    for o in 0..c.object_count() {
        let mut ech = Echelon::new(m.dim(o));
        for &s in &gens {
            for i in 0..m.dim(s) {
                for j in 0..c.hom_dim(o, s) {
                    ech.insert_sparse(m.action(o, s).image(i, j));
                }
            }
        }
        if ech.rank() < m.dim(o) {
            gens.push(o);
        }
    }
    // drop objects that the others already generate
    for k in (0..gens.len()).rev() {
        let mut rest = gens.clone();
        rest.remove(k);
        if generates(m, &rest) {
            gens = rest;
        }
    }
    gens
}

fn generates(m: &RightModule, gens: &[usize]) -> bool {
    let c = &m.base;
    (0..c.object_count()).all(|o| {
        let mut ech = Echelon::new(m.dim(o));
        for &s in gens {
            for i in 0..m.dim(s) {
                for j in 0..c.hom_dim(o, s) {
                    ech.insert_sparse(m.action(o, s).image(i, j));
                }
            }
        }
        ech.rank() == m.dim(o)
    })
}

fn check_truncation(base: &MonoidalDGCategory, left: &[usize], right: &[usize]) -> Result<()> {
    for &s in left {
        for &t in right {
            base.tensor_object(s, t)?;
        }
    }
    Ok(())
}

/// `M □ N` with the data needed to map out of each value.
#[derive(Clone, Debug)]
pub struct BoxProduct {
    pub module: RightModule,
    /// Summands `(p, q)` of each value, in order.
    pub pairs: Vec<(usize, usize)>,
    values: Vec<Quotient>,
    /// Per object and summand: `hom(o, p ⊗ q) ⊗ M(p)` and `(…) ⊗ N(q)`.
    layouts: Vec<Vec<(TensorLayout, TensorLayout)>>,
}

impl BoxProduct {
    /// Quotient-basis element `k` of `(M □ N)(o)` as `(summand, h, m, n)`.
    pub fn generator(&self, o: usize, k: usize) -> (usize, usize, usize, usize) {
        let (part, local) = self.values[o].basis_owner(k);
        let (inner, nn) = self.layouts[o][part].1.split(local);
        let (h, mm) = self.layouts[o][part].0.split(inner);
        (part, h, mm, nn)
    }

    /// Class of the generator `h ⊗ m ⊗ n` in summand `part` of `(M □ N)(o)`.
    pub fn class_of(&self, o: usize, part: usize, h: usize, m: usize, n: usize) -> Vec<Rational> {
        let (inner, outer) = &self.layouts[o][part];
        let local = outer.index(inner.index(h, m), n);
        let idx = self.values[o].sum_index(part, local);
        self.values[o].project(&vec![(idx, Rational::one())])
    }

    pub fn value_quotient(&self, o: usize) -> &Quotient {
        &self.values[o]
    }
}

/// `(M □ N)(o) = ∫^{p,q} hom(o, p ⊗ q) ⊗ M(p) ⊗ N(q)`, over the pairs whose
/// product exists. Fails with a truncation error when a product of
/// generating objects of `M` and `N` falls outside the object set.
pub fn box_product(base: &MonoidalDGCategory, m: &RightModule, n_mod: &RightModule) -> Result<BoxProduct> {
    check_truncation(base, &generating_objects(m), &generating_objects(n_mod))?;
    let c = base.category();
    let n = c.object_count();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|p| (0..n).map(move |q| (p, q)))
        .filter(|&(p, q)| p + q < n)
        .collect();
    let part_of = |p: usize, q: usize| pairs.iter().position(|&x| x == (p, q));
    let mut values = Vec::with_capacity(n);
    let mut layouts = Vec::with_capacity(n);
    for o in 0..n {
        let lay: Vec<(TensorLayout, TensorLayout)> = pairs
            .iter()
            .map(|&(p, q)| {
                let inner = TensorLayout::new(c.hom(o, p + q), m.value(p))?;
                let outer = TensorLayout::new(&inner.product, n_mod.value(q))?;
                Ok((inner, outer))
            })
            .collect::<Result<_>>()?;
        let layout = SumLayout::new(&lay.iter().map(|l| l.1.product.clone()).collect::<Vec<_>>())?;
        let idx = |part: usize, h: usize, mm: usize, nn: usize| -> usize {
            let (inner, outer) = &lay[part];
            layout.index[part][outer.index(inner.index(h, mm), nn)]
        };
        let mut relations = Vec::new();
        for (part, &(p, q)) in pairs.iter().enumerate() {
            let pq = p + q;
            // h ⊗ (m·α) ⊗ n − ((α ⊗ 1)∘h) ⊗ m ⊗ n, α: p2 → p, h: o → p2 ⊗ q
            for p2 in 0..n {
                let Some(part2) = part_of(p2, q) else { continue };
                let p2q = p2 + q;
                for al in 0..c.hom_dim(p2, p) {
                    let mut alpha = vec![Rational::zero(); c.hom_dim(p2, p)];
                    alpha[al] = Rational::one();
                    let a1 = base.product(p2, q, p, q, &alpha, c.identity(q))?;
                    for h in 0..c.hom_dim(o, p2q) {
                        let mut hv = vec![Rational::zero(); c.hom_dim(o, p2q)];
                        hv[h] = Rational::one();
                        let moved = sparse_from_dense(&c.compose(o, p2q, pq, &a1, &hv));
                        for mm in 0..m.dim(p) {
                            let ma = m.action(p2, p).image(mm, al);
                            for nn in 0..n_mod.dim(q) {
                                let mut acc = BTreeMap::new();
                                for (t, x) in ma {
                                    add_scaled(&mut acc, &vec![(idx(part2, h, *t, nn), Rational::one())], x);
                                }
                                for (t, x) in &moved {
                                    add_scaled(&mut acc, &vec![(idx(part, *t, mm, nn), Rational::one())], &-x.clone());
                                }
                                let r = collect(acc);
                                if !r.is_empty() {
                                    relations.push(r);
                                }
                            }
                        }
                    }
                }
            }
            // h ⊗ m ⊗ (n·β) − ((1 ⊗ β)∘h) ⊗ m ⊗ n, β: q2 → q, h: o → p ⊗ q2
            for q2 in 0..n {
                let Some(part2) = part_of(p, q2) else { continue };
                let pq2 = p + q2;
                for be in 0..c.hom_dim(q2, q) {
                    let mut beta = vec![Rational::zero(); c.hom_dim(q2, q)];
                    beta[be] = Rational::one();
                    let b1 = base.product(p, q2, p, q, c.identity(p), &beta)?;
                    for h in 0..c.hom_dim(o, pq2) {
                        let mut hv = vec![Rational::zero(); c.hom_dim(o, pq2)];
                        hv[h] = Rational::one();
                        let moved = sparse_from_dense(&c.compose(o, pq2, pq, &b1, &hv));
                        for nn in 0..n_mod.dim(q) {
                            let nb = n_mod.action(q2, q).image(nn, be);
                            for mm in 0..m.dim(p) {
                                let mut acc = BTreeMap::new();
                                for (t, x) in nb {
                                    add_scaled(&mut acc, &vec![(idx(part2, h, mm, *t), Rational::one())], x);
                                }
                                for (t, x) in &moved {
                                    add_scaled(&mut acc, &vec![(idx(part, *t, mm, nn), Rational::one())], &-x.clone());
                                }
                                let r = collect(acc);
                                if !r.is_empty() {
                                    relations.push(r);
                                }
                            }
                        }
                    }
                }
            }
        }
        values.push(Quotient::build(layout, relations));
        layouts.push(lay);
    }
    // action: [h ⊗ m ⊗ n]·f = [(h∘f) ⊗ m ⊗ n], f: o2 → o
    let mut actions = Vec::with_capacity(n * n);
    for o2 in 0..n {
        for o in 0..n {
            let q = &values[o];
            let out_dim = values[o2].module.total_dim();
            let mut images = Vec::with_capacity(q.module.total_dim() * c.hom_dim(o2, o));
            for k in 0..q.module.total_dim() {
                let (part, local) = q.basis_owner(k);
                let (p, qq) = pairs[part];
                let (inner, outer) = &layouts[o][part];
                let (hin, nn) = outer.split(local);
                let (h, mm) = inner.split(hin);
                for f in 0..c.hom_dim(o2, o) {
                    let hf = c.compose_basis(o2, o, p + qq, h, f);
                    let mut acc = BTreeMap::new();
                    let (inner2, outer2) = &layouts[o2][part];
                    for (t, x) in &hf {
                        let li = outer2.index(inner2.index(*t, mm), nn);
                        add_scaled(&mut acc, &vec![(values[o2].sum_index(part, li), Rational::one())], x);
                    }
                    images.push(sparse_from_dense(&values[o2].project(&collect(acc))));
                }
            }
            let hd = c.hom_dim(o2, o);
            actions.push(Bilinear::from_fn(out_dim, q.module.total_dim(), hd, |i, j| images[i * hd + j].clone()));
        }
    }
    let module = RightModule {
        base: base.shared_category(),
        values: values.iter().map(|q| q.module.clone()).collect(),
        actions,
    };
    Ok(BoxProduct {
        module,
        pairs,
        values,
        layouts,
    })
}

/// Result of an internal hom computation.
#[derive(Clone, Debug)]
pub struct InternalHom {
    pub module: RightModule,
    /// Objects `p` the end runs over.
    pub objects: Vec<usize>,
}

/// `Hom_□(N, P)(o) = ∫_p Hom(N(p), P(o ⊗ p))`, the end taken over the
/// objects `p` for which every `o ⊗ p` exists. Fails with a truncation error
/// unless the generating objects of `N` are among them.
pub fn internal_hom(base: &MonoidalDGCategory, n_mod: &RightModule, p_mod: &RightModule) -> Result<InternalHom> {
    let c = base.category();
    let n = c.object_count();
    let top = base.max_power();
    let ps: Vec<usize> = (0..n).filter(|&p| p + top < n).collect();
    for g in generating_objects(n_mod) {
        if !ps.contains(&g) {
            return Err(Error::Truncation {
                left: c.objects()[top].clone(),
                right: c.objects()[g].clone(),
            });
        }
    }
    // per object o: sum over p of hom_complex(N(p), P(o + p)) and its kernel
    struct Value {
        homs: Vec<DGModule>,
        layout: SumLayout,
        kernel: Vec<MatQ>,
        coords: Vec<Coordinates>,
        module: DGModule,
    }
    let mut vals: Vec<Value> = Vec::with_capacity(n);
    for o in 0..n {
        let homs: Vec<DGModule> = ps
            .iter()
            .map(|&p| dgmod::hom_complex(n_mod.value(p), p_mod.value(o + p)))
            .collect::<Result<_>>()?;
        let layout = SumLayout::new(&homs)?;
        let s = &layout.sum;
        let sdeg = index_degrees(s);
        let mut ech: Vec<Echelon> = s.dims().iter().map(|&d| Echelon::new(d)).collect();
        // φ_{p2}(x·α) − φ_p(x)·(1 ⊗ α) = 0 for α: p2 → p, x ∈ N(p)
        for (pi, &p) in ps.iter().enumerate() {
            for (pi2, &p2) in ps.iter().enumerate() {
                for al in 0..c.hom_dim(p2, p) {
                    let mut alpha = vec![Rational::zero(); c.hom_dim(p2, p)];
                    alpha[al] = Rational::one();
                    let lifted = base.product(o, p2, o, p, c.identity(o), &alpha)?;
                    for x in 0..n_mod.dim(p) {
                        let xa = n_mod.action(p2, p).image(x, al).clone();
                        // rows indexed by (degree of φ, output coordinate)
                        let mut rows: BTreeMap<(i32, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
                        for e in 0..s.total_dim() {
                            let (part, local) = layout.owner[e];
                            let h = &homs[part];
                            let (deg, src, tgt) = hom_entry(h, local, n_mod.value(ps[part]), p_mod.value(o + ps[part]));
                            if part == pi2 {
                                // contribution of φ_{p2} applied to x·α
                                for (t, v) in &xa {
                                    if *t == src {
                                        let key = (deg, tgt);
                                        add_scaled(rows.entry(key).or_default(), &vec![(e, v.clone())], &Rational::one());
                                    }
                                }
                            }
                            if part == pi && src == x {
                                // φ_p(x) = e_tgt, then act by 1 ⊗ α: P(o + p) → P(o + p2)
                                let img = p_mod.act(o + p2, o + p, &unit(p_mod.dim(o + p), tgt), &lifted);
                                for (t, v) in img.iter().enumerate() {
                                    if !v.is_zero() {
                                        add_scaled(rows.entry((deg, t)).or_default(), &vec![(e, -v.clone())], &Rational::one());
                                    }
                                }
                            }
                        }
                        for (_, row) in rows {
                            let row = collect(row);
                            if let Some(&(first, _)) = row.first() {
                                let d = sdeg[first];
                                let off = offset_of(s, d).unwrap();
                                let local: SparseVec = row.into_iter().map(|(k, v)| (k - off, v)).collect();
                                ech[(d - s.lo()) as usize].insert_sparse(&local);
                            }
                        }
                    }
                }
            }
        }
        let kernel: Vec<MatQ> = s
            .degrees()
            .enumerate()
            .map(|(k, d)| MatQ::from_columns(s.dim(d), &ech[k].null_space()))
            .collect();
        let coords: Vec<Coordinates> = kernel.iter().map(|k| Coordinates::new(k.clone())).collect::<Result<_>>()?;
        let dims: Vec<usize> = kernel.iter().map(MatQ::cols).collect();
        let mut diffs = Vec::with_capacity(dims.len());
        for (k, d) in s.degrees().enumerate() {
            if k == 0 {
                diffs.push(MatQ::zeros(0, dims[0]));
                continue;
            }
            let dm = s.d(d);
            let mut m = MatQ::zeros(dims[k - 1], dims[k]);
            for j in 0..dims[k] {
                let img = dm.mul_vec(&kernel[k].column(j));
                let x = coords[k - 1]
                    .solve_checked(&img)
                    .ok_or_else(|| Error::InvalidStructure("end is not a subcomplex".into()))?;
                for (i, v) in x.into_iter().enumerate() {
                    m.set(i, j, v);
                }
            }
            diffs.push(m);
        }
        let module = DGModule::over_trivial_unchecked(s.lo(), dims, diffs);
        vals.push(Value {
            homs,
            layout,
            kernel,
            coords,
            module,
        });
    }
    // action: (φ·f)_p(x) = φ_p(x)·(f ⊗ 1_p), f: o2 → o
    let mut actions = Vec::with_capacity(n * n);
    for o2 in 0..n {
        for o in 0..n {
            let (src, dst) = (&vals[o], &vals[o2]);
            let hd = c.hom_dim(o2, o);
            let mut images = Vec::with_capacity(src.module.total_dim() * hd);
            let sdeg = index_degrees(&src.module);
            for (kk, d) in sdeg.iter().enumerate() {
                let k = (d - src.module.lo()) as usize;
                let local_k = kk - offset_of(&src.module, *d).unwrap();
                let phi = src.kernel[k].column(local_k);
                let off = offset_of(&src.layout.sum, *d).unwrap();
                for f in 0..hd {
                    let mut fv = vec![Rational::zero(); hd];
                    fv[f] = Rational::one();
                    let mut out = vec![Rational::zero(); dst.layout.sum.dim(*d)];
                    let doff = offset_of(&dst.layout.sum, *d);
                    for (pi, &p) in ps.iter().enumerate() {
                        let lifted = base.product(o2, p, o, p, &fv, c.identity(p))?;
                        for (li, v) in phi.iter().enumerate() {
                            if v.is_zero() {
                                continue;
                            }
                            let e = off + li;
                            let (part, local) = src.layout.owner[e];
                            if part != pi {
                                continue;
                            }
                            let (deg, x, tgt) = hom_entry(&src.homs[part], local, n_mod.value(p), p_mod.value(o + p));
                            let img = p_mod.act(o2 + p, o + p, &unit(p_mod.dim(o + p), tgt), &lifted);
                            for (t, w) in img.iter().enumerate() {
                                if w.is_zero() {
                                    continue;
                                }
                                let target_local = hom_index(&dst.homs[pi], deg, x, t, n_mod.value(p), p_mod.value(o2 + p));
                                let e2 = dst.layout.index[pi][target_local];
                                out[e2 - doff.unwrap()] += v * w;
                            }
                        }
                    }
                    let kidx = (d - dst.module.lo()) as usize;
                    let x = dst
                        .coords
                        .get(kidx)
                        .map(|cd| cd.solve_checked(&out))
                        .unwrap_or(Some(Vec::new()))
                        .ok_or_else(|| Error::InvalidStructure("action leaves the end".into()))?;
                    let mut full = vec![Rational::zero(); dst.module.total_dim()];
                    if let Some(base_off) = offset_of(&dst.module, *d) {
                        for (i, v) in x.into_iter().enumerate() {
                            full[base_off + i] = v;
                        }
                    }
                    images.push(sparse_from_dense(&full));
                }
            }
            actions.push(Bilinear::from_fn(dst.module.total_dim(), src.module.total_dim(), hd, |i, j| {
                images[i * hd + j].clone()
            }));
        }
    }
    Ok(InternalHom {
        module: RightModule {
            base: base.shared_category(),
            values: vals.into_iter().map(|v| v.module).collect(),
            actions,
        },
        objects: ps,
    })
}

/// For a hom-complex total index: `(degree of φ, source total index,
/// target total index)` of the elementary map it represents.
fn hom_entry(h: &DGModule, local: usize, src: &DGModule, tgt: &DGModule) -> (i32, usize, usize) {
    let deg = index_degrees(h)[local];
    let within = local - offset_of(h, deg).unwrap();
    for (p, off, size) in dgmod::hom_blocks(src, tgt, deg) {
        if within < off + size {
            let k = within - off;
            let sp = src.dim(p);
            let (r, c) = (k / sp, k % sp);
            return (deg, offset_of(src, p).unwrap() + c, offset_of(tgt, p + deg).unwrap() + r);
        }
    }
    unreachable!("index inside the hom complex")
}

/// Hom-complex total index of the elementary map sending source total index
/// `x` to target total index `t`, in degree `deg`.
fn hom_index(h: &DGModule, deg: i32, x: usize, t: usize, src: &DGModule, tgt: &DGModule) -> usize {
    let p = index_degrees(src)[x];
    let c = x - offset_of(src, p).unwrap();
    let r = t - offset_of(tgt, p + deg).unwrap();
    let (_, off, _) = dgmod::hom_blocks(src, tgt, deg)
        .into_iter()
        .find(|b| b.0 == p)
        .expect("hom block present");
    offset_of(h, deg).unwrap() + off + r * src.dim(p) + c
}

impl BoxProduct {
    /// A map out of `M □ N` given on generators `h ⊗ m ⊗ n` of each value.
    /// Returns the components and whether every relation is sent to zero.
    fn map_out(
        &self,
        target_dims: &[usize],
        mut f: impl FnMut(usize, usize, usize, usize, usize) -> Result<Vec<Rational>>,
    ) -> Result<(ModuleMap, bool)> {
        let mut components = Vec::with_capacity(self.values.len());
        let mut kills = true;
        for (o, q) in self.values.iter().enumerate() {
            let mut m = MatQ::zeros(target_dims[o], q.module.total_dim());
            for k in 0..q.module.total_dim() {
                let (part, h, mm, nn) = self.generator(o, k);
                for (r, x) in f(o, part, h, mm, nn)?.into_iter().enumerate() {
                    m.set(r, k, x);
                }
            }
            for rel in q.relation_basis() {
                let mut acc = vec![Rational::zero(); target_dims[o]];
                for (idx, x) in &rel {
                    let (part, local) = q.layout.owner[*idx];
                    let (inner, nn) = self.layouts[o][part].1.split(local);
                    let (h, mm) = self.layouts[o][part].0.split(inner);
                    for (r, y) in f(o, part, h, mm, nn)?.into_iter().enumerate() {
                        acc[r] += x * &y;
                    }
                }
                if acc.iter().any(|x| !x.is_zero()) {
                    kills = false;
                }
            }
            components.push(m);
        }
        Ok((ModuleMap { components }, kills))
    }
}

fn basis_vec(n: usize, i: usize) -> Vec<Rational> {
    unit(n, i)
}

/// Left unit `F_σ0 □ M → M`, `h ⊗ u ⊗ m ↦ m·((u ⊗ 1)∘h)`, checked to be a
/// well-defined isomorphism of modules.
pub fn box_unit_check(base: &MonoidalDGCategory, m: &RightModule) -> Result<bool> {
    let c = base.shared_category();
    let unit_mod = free_module(&c, base.unit())?;
    let bp = box_product(base, &unit_mod, m)?;
    let dims: Vec<usize> = (0..c.object_count()).map(|o| m.dim(o)).collect();
    let (map, kills) = bp.map_out(&dims, |o, part, h, u, mm| {
        let (p, q) = bp.pairs[part];
        let uq = base.product(p, q, 0, q, &basis_vec(c.hom_dim(p, 0), u), c.identity(q))?;
        let g = c.compose(o, p + q, q, &uq, &basis_vec(c.hom_dim(o, p + q), h));
        Ok(m.act(o, q, &basis_vec(m.dim(q), mm), &g))
    })?;
    Ok(kills && map.validate(&bp.module, m).is_ok() && map.is_iso())
}

/// Symmetry `M □ N → N □ M`, `h ⊗ m ⊗ n ↦ ± (β∘h) ⊗ n ⊗ m`, checked to be a
/// well-defined isomorphism of modules.
pub fn box_symmetry_check(base: &MonoidalDGCategory, m: &RightModule, n_mod: &RightModule) -> Result<bool> {
    let c = base.shared_category();
    let mn = box_product(base, m, n_mod)?;
    let nm = box_product(base, n_mod, m)?;
    let dims: Vec<usize> = (0..c.object_count()).map(|o| nm.module.dim(o)).collect();
    let (map, kills) = mn.map_out(&dims, |o, part, h, mm, nn| {
        let (p, q) = mn.pairs[part];
        let beta = base.symmetry(p, q)?;
        let bh = c.compose(o, p + q, q + p, &beta, &basis_vec(c.hom_dim(o, p + q), h));
        let swapped = nm.pairs.iter().position(|&x| x == (q, p)).expect("symmetric pair set");
        let sign = sign_of(index_degrees(m.value(p))[mm] * index_degrees(n_mod.value(q))[nn]);
        let mut out = vec![Rational::zero(); nm.module.dim(o)];
        for (t, x) in bh.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, y) in nm.class_of(o, swapped, t, nn, mm).into_iter().enumerate() {
                out[r] += &sign * x * y;
            }
        }
        Ok(out)
    })?;
    Ok(kills && map.validate(&mn.module, &nm.module).is_ok() && map.is_iso())
}

/// Multiplication `F_a □ F_b → F_{a⊗b}`, `h ⊗ f ⊗ g ↦ (f ⊗ g)∘h`.
fn multiplication(base: &MonoidalDGCategory, bp: &BoxProduct, a: usize, b: usize) -> Result<(ModuleMap, bool)> {
    let c = base.shared_category();
    let ab = base.tensor_object(a, b)?;
    let dims: Vec<usize> = (0..c.object_count()).map(|o| c.hom_dim(o, ab)).collect();
    bp.map_out(&dims, |o, part, h, f, g| {
        let (p, q) = bp.pairs[part];
        let fg = base.product(p, q, a, b, &basis_vec(c.hom_dim(p, a), f), &basis_vec(c.hom_dim(q, b), g))?;
        Ok(c.compose(o, p + q, ab, &fg, &basis_vec(c.hom_dim(o, p + q), h)))
    })
}

/// `F_a □ F_b ≅ F_{a⊗b}` through the multiplication map.
pub fn box_free_check(base: &MonoidalDGCategory, a: usize, b: usize) -> Result<bool> {
    let c = base.shared_category();
    let bp = box_product(base, &free_module(&c, a)?, &free_module(&c, b)?)?;
    let target = free_module(&c, base.tensor_object(a, b)?)?;
    let (map, kills) = multiplication(base, &bp, a, b)?;
    Ok(kills && map.validate(&bp.module, &target).is_ok() && map.is_iso())
}

/// `(F_a □ F_b) □ F_c ≅ F_a □ (F_b □ F_c)`: both sides map isomorphically
/// onto `F_{a⊗b⊗c}` by iterated multiplication, which gives the associator.
pub fn box_associativity_check(base: &MonoidalDGCategory, a: usize, b: usize, cc: usize) -> Result<bool> {
    let c = base.shared_category();
    let abc = base.tensor_object(base.tensor_object(a, b)?, cc)?;
    let target = free_module(&c, abc)?;
    let dims: Vec<usize> = (0..c.object_count()).map(|o| c.hom_dim(o, abc)).collect();
    let (fa, fb, fc) = (free_module(&c, a)?, free_module(&c, b)?, free_module(&c, cc)?);

    let left_inner = box_product(base, &fa, &fb)?;
    let (mu_ab, k1) = multiplication(base, &left_inner, a, b)?;
    let left = box_product(base, &left_inner.module, &fc)?;
    let (left_map, k2) = left.map_out(&dims, |o, part, h, x, g| {
        let (p, q) = left.pairs[part];
        let mx = mu_ab.components[p].column(x);
        let prod = base.product(p, q, a + b, cc, &mx, &basis_vec(c.hom_dim(q, cc), g))?;
        Ok(c.compose(o, p + q, abc, &prod, &basis_vec(c.hom_dim(o, p + q), h)))
    })?;

    let right_inner = box_product(base, &fb, &fc)?;
    let (mu_bc, k3) = multiplication(base, &right_inner, b, cc)?;
    let right = box_product(base, &fa, &right_inner.module)?;
    let (right_map, k4) = right.map_out(&dims, |o, part, h, f, y| {
        let (p, q) = right.pairs[part];
        let my = mu_bc.components[q].column(y);
        let prod = base.product(p, q, a, b + cc, &basis_vec(c.hom_dim(p, a), f), &my)?;
        Ok(c.compose(o, p + q, abc, &prod, &basis_vec(c.hom_dim(o, p + q), h)))
    })?;

    let ok = k1 && k2 && k3 && k4;
    let valid = left_map.validate(&left.module, &target).is_ok() && right_map.validate(&right.module, &target).is_ok();
    if !(ok && valid && left_map.is_iso() && right_map.is_iso()) {
        return Ok(false);
    }
    // the associator right⁻¹ ∘ left is then an isomorphism of modules
    let assoc = ModuleMap {
        components: left_map
            .components
            .iter()
            .zip(&right_map.components)
            .map(|(l, r)| &r.inverse().expect("iso") * l)
            .collect(),
    };
    Ok(assoc.validate(&left.module, &right.module).is_ok() && assoc.is_iso())
}

/// `∫^i M(σ_i) ⊗ σ_i` as a complex of `QW`-modules.
#[derive(Clone, Debug)]
pub struct MoritaImage {
    pub module: DGModule,
    quotient: Quotient,
    layouts: Vec<TensorLayout>,
}

impl MoritaImage {
    /// Class of `m ⊗ v` with `m ∈ M(σ_i)`, `v ∈ σ_i`.
    pub fn class_of(&self, i: usize, m: usize, v: usize) -> Vec<Rational> {
        let idx = self.quotient.sum_index(i, self.layouts[i].index(m, v));
        self.quotient.project(&vec![(idx, Rational::one())])
    }
}

fn sigma_space(base: &MonoidalDGCategory, i: usize) -> DGModule {
    let d = base.sigma_dim(i);
    DGModule::over_trivial_unchecked(0, vec![d], vec![MatQ::zeros(0, d)])
}

pub fn morita_to_module(base: &MonoidalDGCategory, m: &RightModule) -> Result<MoritaImage> {
    let c = base.category();
    let n = c.object_count();
    let w = base.group().clone();
    let layouts: Vec<TensorLayout> = (0..n)
        .map(|i| TensorLayout::new(m.value(i), &sigma_space(base, i)))
        .collect::<Result<_>>()?;
    let layout = SumLayout::new(&layouts.iter().map(|t| t.product.clone()).collect::<Vec<_>>())?;
    let mut relations = Vec::new();
    // (m·f) ⊗ v − m ⊗ f(v), f: σ_i → σ_j
    for i in 0..n {
        for j in 0..n {
            for f in 0..c.hom_dim(i, j) {
                let fm = base.hom_matrix(i, j, &basis_vec(c.hom_dim(i, j), f));
                for mm in 0..m.dim(j) {
                    let mf = m.action(i, j).image(mm, f);
                    for v in 0..base.sigma_dim(i) {
                        let mut acc = BTreeMap::new();
                        for (t, x) in mf {
                            add_scaled(&mut acc, &vec![(layout.index[i][layouts[i].index(*t, v)], Rational::one())], x);
                        }
                        for r in 0..base.sigma_dim(j) {
                            let x = fm.get(r, v);
                            if !x.is_zero() {
                                add_scaled(&mut acc, &vec![(layout.index[j][layouts[j].index(mm, r)], Rational::one())], &-x.clone());
                            }
                        }
                        let r = collect(acc);
                        if !r.is_empty() {
                            relations.push(r);
                        }
                    }
                }
            }
        }
    }
    let q = Quotient::build(layout, relations);
    let qm = &q.module;
    let mut actions: Vec<Vec<MatQ>> = Vec::with_capacity(qm.dims().len());
    for d in qm.degrees() {
        let off = offset_of(qm, d).unwrap();
        let per: Vec<MatQ> = (0..w.order())
            .map(|g| {
                let mut a = MatQ::zeros(qm.dim(d), qm.dim(d));
                for k in 0..qm.dim(d) {
                    let (i, local) = q.basis_owner(off + k);
                    let (mm, v) = layouts[i].split(local);
                    let gv = base.act_on_tuple(i, g, v);
                    let img = q.project(&vec![(q.sum_index(i, layouts[i].index(mm, gv)), Rational::one())]);
                    for r in 0..qm.dim(d) {
                        a.set(r, k, img[off + r].clone());
                    }
                }
                a
            })
            .collect();
        actions.push(per);
    }
    let diffs = qm.degrees().map(|d| qm.d(d)).collect();
    let module = DGModule::new(w, qm.lo(), qm.dims().to_vec(), diffs, actions)?;
    Ok(MoritaImage {
        module,
        quotient: q,
        layouts,
    })
}

/// `Hom(G_a, X)`: the module `σ_i ↦ Hom_Q(σ_i, X)^W`.
#[derive(Clone, Debug)]
pub struct MoritaAdjoint {
    pub module: RightModule,
    fixed: Vec<dgmod::FixedPoints>,
    homs: Vec<DGModule>,
}

impl MoritaAdjoint {
    /// The linear map `σ_i → X_d` represented by basis element `k` of the
    /// value at `σ_i`, as a `dim X_d × |W|^i` matrix, with its degree.
    pub fn map_of(&self, i: usize, k: usize, x: &DGModule) -> (i32, MatQ) {
        let val = self.module.value(i);
        let d = index_degrees(val)[k];
        let local = k - offset_of(val, d).unwrap();
        let col = self.fixed[i].inclusion_at(d).column(local);
        let width = self.homs[i].dim(d) / x.dim(d).max(1);
        (d, MatQ::from_vec(x.dim(d), width, col).expect("hom block"))
    }
}

pub fn module_to_morita(base: &MonoidalDGCategory, x: &DGModule) -> Result<MoritaAdjoint> {
    let c = base.category();
    let n = c.object_count();
    if !dgmod::same_group(base.group(), x.group()) {
        return Err(Error::GroupMismatch);
    }
    let homs: Vec<DGModule> = (0..n)
        .map(|i| dgmod::hom_complex(&base.sigma_module(i), x))
        .collect::<Result<_>>()?;
    let fixed: Vec<dgmod::FixedPoints> = homs.iter().map(dgmod::fixed_points).collect();
    let coords: Vec<Vec<Option<Coordinates>>> = fixed
        .iter()
        .map(|fp| {
            fp.module
                .degrees()
                .map(|d| Coordinates::new(fp.inclusion_at(d)).ok())
                .collect()
        })
        .collect();
    let values: Vec<DGModule> = fixed.iter().map(|fp| fp.module.clone()).collect();
    let mut actions = Vec::with_capacity(n * n);
    // φ·f = φ∘f for φ ∈ Hom(σ_j, X)^W, f: σ_i → σ_j
    for i in 0..n {
        for j in 0..n {
            let (vi, vj) = (&values[i], &values[j]);
            let hd = c.hom_dim(i, j);
            let fmats: Vec<MatQ> = (0..hd).map(|f| base.hom_matrix(i, j, &basis_vec(hd, f))).collect();
            let mut images = Vec::with_capacity(vj.total_dim() * hd);
            let degs = index_degrees(vj);
            for (k, &d) in degs.iter().enumerate() {
                let local = k - offset_of(vj, d).unwrap();
                let col = fixed[j].inclusion_at(d).column(local);
                let phi = MatQ::from_vec(x.dim(d), base.sigma_dim(j), col).expect("hom block");
                for fm in &fmats {
                    let comp = &phi * fm;
                    let mut full = vec![Rational::zero(); vi.total_dim()];
                    if let Some(off) = offset_of(vi, d) {
                        let cd = coords[i][(d - vi.lo()) as usize]
                            .as_ref()
                            .ok_or_else(|| Error::InvalidStructure("missing fixed-point basis".into()))?;
                        let sol = cd
                            .solve_checked(comp.entries())
                            .ok_or_else(|| Error::InvalidStructure("composite is not invariant".into()))?;
                        for (t, v) in sol.into_iter().enumerate() {
                            full[off + t] = v;
                        }
                    }
                    images.push(sparse_from_dense(&full));
                }
            }
            actions.push(Bilinear::from_fn(vi.total_dim(), vj.total_dim(), hd, |a, b| images[a * hd + b].clone()));
        }
    }
    Ok(MoritaAdjoint {
        module: RightModule {
            base: base.shared_category(),
            values,
            actions,
        },
        fixed,
        homs,
    })
}

/// Outcome of the counit check `Hom(G_a, X) ⊗_{E_a} G_a → X`.
#[derive(Clone, Debug)]
pub struct MoritaReport {
    pub counit: DGMap,
    /// The counit sends every coend relation to zero.
    pub well_defined: bool,
    /// The counit is an equivariant chain map.
    pub equivariant: bool,
    pub is_iso: bool,
}

impl MoritaReport {
    pub fn passes(&self) -> bool {
        self.well_defined && self.equivariant && self.is_iso
    }
}

pub fn morita_roundtrip_check(base: &MonoidalDGCategory, x: &DGModule) -> Result<MoritaReport> {
    let adj = module_to_morita(base, x)?;
    let img = morita_to_module(base, &adj.module)?;
    let y = &img.module;
    let q = &img.quotient;
    // ε(φ ⊗ v) = φ(v), on sum indices
    let eval = |idx: usize| -> (i32, Vec<Rational>) {
        let (i, local) = q.layout.owner[idx];
        let (k, v) = img.layouts[i].split(local);
        let (d, phi) = adj.map_of(i, k, x);
        (d, phi.column(v))
    };
    let mut well_defined = true;
    for rel in q.relation_basis() {
        let mut acc: BTreeMap<i32, Vec<Rational>> = BTreeMap::new();
        for (idx, c) in &rel {
            let (d, v) = eval(*idx);
            let e = acc.entry(d).or_insert_with(|| vec![Rational::zero(); x.dim(d)]);
            for (t, y) in v.into_iter().enumerate() {
                e[t] += c * &y;
            }
        }
        if acc.values().flatten().any(|x| !x.is_zero()) {
            well_defined = false;
        }
    }
    let components = y
        .degrees()
        .map(|d| {
            let off = offset_of(y, d).unwrap();
            let mut m = MatQ::zeros(x.dim(d), y.dim(d));
            for k in 0..y.dim(d) {
                let (_, v) = eval(q.basis[off + k]);
                for (r, val) in v.into_iter().enumerate() {
                    m.set(r, k, val);
                }
            }
            m
        })
        .collect();
    let counit = DGMap::new_unchecked(y.clone(), x.clone(), components);
    let equivariant = counit.validate().is_ok();
    let is_iso = counit.is_iso();
    Ok(MoritaReport {
        counit,
        well_defined,
        equivariant,
        is_iso,
    })
}

/// Unit `F_o → Hom(G_a, F_o ⊗_{E_a} G_a)`, `f ↦ (v ↦ [f ⊗ v])`, checked to
/// be an isomorphism of modules.
pub fn morita_unit_check(base: &MonoidalDGCategory, o: usize) -> Result<bool> {
    let c = base.shared_category();
    let f = free_module(&c, o)?;
    let img = morita_to_module(base, &f)?;
    let adj = module_to_morita(base, &img.module)?;
    let y = &img.module;
    let mut components = Vec::with_capacity(c.object_count());
    for j in 0..c.object_count() {
        let target = adj.module.value(j);
        let mut m = MatQ::zeros(target.total_dim(), f.dim(j));
        let Some(off) = offset_of(target, 0) else {
            components.push(m);
            continue;
        };
        let cd = Coordinates::new(adj.fixed[j].inclusion_at(0))?;
        for k in 0..f.dim(j) {
            let mut phi = MatQ::zeros(y.dim(0), base.sigma_dim(j));
            for v in 0..base.sigma_dim(j) {
                let cls = img.class_of(j, k, v);
                let yoff = offset_of(y, 0).unwrap();
                for r in 0..y.dim(0) {
                    phi.set(r, v, cls[yoff + r].clone());
                }
            }
            let sol = cd
                .solve_checked(phi.entries())
                .ok_or_else(|| Error::InvalidStructure("unit lands outside the fixed points".into()))?;
            for (t, v) in sol.into_iter().enumerate() {
                m.set(off + t, k, v);
            }
        }
        components.push(m);
    }
    let map = ModuleMap { components };
    Ok(map.validate(&f, &adj.module).is_ok() && map.is_iso())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::group_from_spec;
    use crate::ringoid::build_ea;

    fn ea(spec: &str, k: usize) -> MonoidalDGCategory {
        build_ea(Arc::new(group_from_spec(spec).unwrap()), k).unwrap()
    }

    #[test]
    fn free_modules_and_yoneda() {
        let base = ea("C2", 2);
        let c = base.shared_category();
        for o in 0..3 {
            let f = free_module(&c, o).unwrap();
            f.validate().unwrap();
            assert!(generates(&f, &generating_objects(&f)));
            for x in 0..3 {
                assert!(coend_collapse(&f, x).unwrap().is_iso);
            }
        }
        assert_eq!(free_module(&c, 0).unwrap().dim(1), 1);
    }

    #[test]
    fn box_laws() {
        let base = ea("C2", 2);
        let c = base.shared_category();
        let f1 = free_module(&c, 1).unwrap();
        let bp = box_product(&base, &f1, &f1).unwrap();
        bp.module.validate().unwrap();
        assert!(box_free_check(&base, 1, 1).unwrap());
        assert!(box_unit_check(&base, &f1).unwrap());
        assert!(box_symmetry_check(&base, &f1, &free_module(&c, 0).unwrap()).unwrap());
        assert!(box_associativity_check(&base, 0, 1, 1).unwrap());
        // σ2 ≅ σ1 ⊔ σ1, so every module is generated in σ0, σ1
        assert!(generating_objects(&free_module(&c, 2).unwrap()).iter().all(|&o| o < 2));
        let small = ea("C2", 1);
        let g1 = free_module(&small.shared_category(), 1).unwrap();
        assert!(matches!(box_product(&small, &g1, &g1), Err(Error::Truncation { .. })));
    }

    #[test]
    fn internal_hom_unit_and_adjunction() {
        let base = ea("C2", 2);
        let c = base.shared_category();
        let f0 = free_module(&c, 0).unwrap();
        let f1 = free_module(&c, 1).unwrap();
        let ih = internal_hom(&base, &f0, &f1).unwrap();
        ih.module.validate().unwrap();
        for o in 0..3 {
            assert_eq!(ih.module.dim(o), f1.dim(o));
        }
        let bp = box_product(&base, &f1, &f0).unwrap();
        let lhs = module_map_dim(&bp.module, &f1).unwrap();
        let rhs = module_map_dim(&f1, &ih.module).unwrap();
        assert_eq!(lhs, rhs);
        assert!(internal_hom(&base, &f1, &f1).is_err());
    }

    #[test]
    fn morita_on_small_inputs() {
        let base = ea("C2", 2);
        let g = base.group().clone();
        let reg = DGModule::regular(g.clone());
        let triv = DGModule::unit(g.clone());
        for x in [reg.clone(), triv.clone(), DGModule::direct_sum(&[&reg, &triv]).unwrap()] {
            let r = morita_roundtrip_check(&base, &x).unwrap();
            assert!(r.passes());
        }
        let adj = module_to_morita(&base, &triv).unwrap();
        assert_eq!(adj.module.dim(2), 2);
        adj.module.validate().unwrap();
        for o in 0..3 {
            assert!(morita_unit_check(&base, o).unwrap());
        }
    }
}
