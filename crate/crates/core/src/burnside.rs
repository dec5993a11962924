//! The rational Burnside ring `A(G) ⊗ Q`.
//!
//! Elements are stored in the basis of transitive `G`-sets `[G/H]`, one
//! coefficient per conjugacy class in the canonical class order. The mark of
//! an element at `(K)` is `Σ_H coeff_H · |(G/H)^K|`; rationally the marks
//! identify the ring with `Q^{#classes}` under pointwise operations, and the
//! primitive idempotents `e_(H)` are the preimages of the indicator vectors.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactq::{rat, MatQ, Rational};
use crate::permgrp::{GroupRef, PermGroup, Subgroup};

pub const DEFAULT_POWER_BOUND: usize = 20_000;

/// Marks matrix: entry at row `(H)`, column `(K)` is `|(G/H)^K|`.
#[derive(Clone, Debug)]
pub struct TableOfMarks {
    group: GroupRef,
    matrix: MatQ,
}

impl TableOfMarks {
    pub fn new(group: GroupRef) -> Self {
        let classes = group.conjugacy_classes_of_subgroups();
        let n = classes.len();
        let mut matrix = MatQ::zeros(n, n);
        for (r, h) in classes.iter().enumerate() {
            for (c, k) in classes.iter().enumerate().take(r + 1) {
                let m = group.fixed_point_count(&h.representative, &k.representative);
                if m != 0 {
                    matrix.set(r, c, rat(m as i64));
                }
            }
        }
        TableOfMarks { group, matrix }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn matrix(&self) -> &MatQ {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mark(&self, h: usize, k: usize) -> &Rational {
        self.matrix.get(h, k)
    }

    pub fn class_labels(&self) -> Vec<String> {
        self.group
            .conjugacy_classes_of_subgroups()
            .iter()
            .map(|c| self.group.subgroup_label(&c.representative))
            .collect()
    }

    /// Tab-separated table with a header row; rows and columns are labelled by
    /// class representatives.
    pub fn to_tsv(&self) -> String {
        labelled_tsv(&self.class_labels(), &self.class_labels(), &self.matrix)
    }
}

/// Tab-separated matrix with a `class` header row.
pub fn labelled_tsv(rows: &[String], cols: &[String], m: &MatQ) -> String {
    let mut out = String::from("class");
    for c in cols {
        out.push('\t');
        out.push_str(c);
    }
    out.push('\n');
    for (r, label) in rows.iter().enumerate() {
        out.push_str(label);
        for x in m.row(r) {
            out.push('\t');
            out.push_str(&x.to_string());
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideElement {
    group: GroupRef,
    coefficients: Vec<Rational>,
}

impl BurnsideElement {
    pub fn new(group: GroupRef, coefficients: Vec<Rational>) -> Result<Self> {
        let n = group.conjugacy_classes_of_subgroups().len();
        if coefficients.len() != n {
            return Err(Error::DimensionMismatch {
                context: "Burnside element coefficients",
                expected: n,
                found: coefficients.len(),
            });
        }
        Ok(BurnsideElement {
            group,
            coefficients,
        })
    }

    pub fn zero(group: GroupRef) -> Self {
        let n = group.conjugacy_classes_of_subgroups().len();
        BurnsideElement {
            group,
            coefficients: vec![Rational::zero(); n],
        }
    }

    /// The transitive set `[G/H]` for class index `h`.
    pub fn basis(group: GroupRef, h: usize) -> Self {
        let mut x = Self::zero(group);
        x.coefficients[h] = Rational::one();
        x
    }

    /// `[G/G]`, the last class in canonical order.
    pub fn one(group: GroupRef) -> Self {
        let n = group.conjugacy_classes_of_subgroups().len();
        Self::basis(group, n - 1)
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        Ok(BurnsideElement {
            group: self.group.clone(),
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BurnsideElement {
            group: self.group.clone(),
            coefficients: self.coefficients.iter().map(|a| a * c).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarksVector {
    group: GroupRef,
    values: Vec<Rational>,
}

impl MarksVector {
    pub fn new(group: GroupRef, values: Vec<Rational>) -> Result<Self> {
        let n = group.conjugacy_classes_of_subgroups().len();
        if values.len() != n {
            return Err(Error::DimensionMismatch {
                context: "marks vector",
                expected: n,
                found: values.len(),
            });
        }
        Ok(MarksVector { group, values })
    }

    pub fn indicator(group: GroupRef, h: usize) -> Self {
        let n = group.conjugacy_classes_of_subgroups().len();
        let mut values = vec![Rational::zero(); n];
        values[h] = Rational::one();
        MarksVector { group, values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn pointwise_mul(&self, other: &Self) -> Self {
        MarksVector {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        }
    }
}

/// A set of classes closed under subconjugacy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupFamily {
    group: GroupRef,
    classes: Vec<usize>,
}

impl SubgroupFamily {
    /// Rejects sets that contain `(H)` but miss some `(K) ≤_G (H)`.
    pub fn new(group: GroupRef, mut classes: Vec<usize>) -> Result<Self> {
        classes.sort_unstable();
        classes.dedup();
        let all = group.conjugacy_classes_of_subgroups();
        if let Some(&bad) = classes.iter().find(|&&c| c >= all.len()) {
            return Err(Error::InvalidStructure(format!("no subgroup class {bad}")));
        }
        for &h in &classes {
            for k in 0..all.len() {
                if classes.binary_search(&k).is_err()
                    && group.is_subconjugate(&all[k].representative, &all[h].representative)
                {
                    return Err(Error::FamilyNotClosed { member: h, missing: k });
                }
            }
        }
        Ok(SubgroupFamily { group, classes })
    }

    /// `[≤_G H]`.
    pub fn below(group: GroupRef, h: usize) -> Self {
        let all = group.conjugacy_classes_of_subgroups();
        let classes = (0..all.len())
            .filter(|&k| group.is_subconjugate(&all[k].representative, &all[h].representative))
            .collect();
        SubgroupFamily { group, classes }
    }

    /// `[<_G H]`.
    pub fn strictly_below(group: GroupRef, h: usize) -> Self {
        let mut f = Self::below(group, h);
        f.classes.retain(|&k| k != h);
        f
    }

    pub fn all(group: GroupRef) -> Self {
        let n = group.conjugacy_classes_of_subgroups().len();
        SubgroupFamily {
            group,
            classes: (0..n).collect(),
        }
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn contains(&self, h: usize) -> bool {
        self.classes.binary_search(&h).is_ok()
    }
}

/// Ring structure on `A(G) ⊗ Q` for one group, with lazily cached structure
/// constants.
#[derive(Debug)]
pub struct BurnsideRing {
    group: GroupRef,
    table: TableOfMarks,
    structure: OnceLock<Vec<Vec<Vec<(usize, usize)>>>>,
}

impl BurnsideRing {
    pub fn new(group: GroupRef) -> Self {
        let table = TableOfMarks::new(group.clone());
        BurnsideRing {
            group,
            table,
            structure: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn table(&self) -> &TableOfMarks {
        &self.table
    }

    pub fn rank(&self) -> usize {
        self.table.len()
    }

    fn check(&self, x: &BurnsideElement) -> Result<()> {
        if Arc::ptr_eq(&self.group, &x.group) || *self.group == *x.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn one(&self) -> BurnsideElement {
        BurnsideElement::one(self.group.clone())
    }

    pub fn basis(&self, h: usize) -> BurnsideElement {
        BurnsideElement::basis(self.group.clone(), h)
    }

    pub fn marks(&self, x: &BurnsideElement) -> Result<MarksVector> {
        self.check(x)?;
        let values = self.table.matrix.transpose().mul_vec(&x.coefficients);
        Ok(MarksVector {
            group: self.group.clone(),
            values,
        })
    }

    /// Back-substitution through the triangular table of marks.
    pub fn from_marks(&self, v: &MarksVector) -> Result<BurnsideElement> {
        if !(Arc::ptr_eq(&self.group, &v.group) || *self.group == *v.group) {
            return Err(Error::GroupMismatch);
        }
        let m = &self.table.matrix;
        let n = m.rows();
        let mut c = vec![Rational::zero(); n];
        for k in (0..n).rev() {
            let mut acc = v.values[k].clone();
            for (h, ch) in c.iter().enumerate().skip(k + 1) {
                let mk = m.get(h, k);
                if !mk.is_zero() && !ch.is_zero() {
                    acc -= ch * mk;
                }
            }
            c[k] = acc / m.get(k, k);
        }
        Ok(BurnsideElement {
            group: self.group.clone(),
            coefficients: c,
        })
    }

    /// `[G/H]·[G/K] = Σ_{HgK} [G/(H ∩ gKg⁻¹)]`, cached as
    /// `structure[h][k] = [(class, multiplicity)]`.
    fn structure(&self) -> &Vec<Vec<Vec<(usize, usize)>>> {
        self.structure.get_or_init(|| {
            let g = &self.group;
            let classes = g.conjugacy_classes_of_subgroups();
            classes
                .iter()
                .map(|h| {
                    classes
                        .iter()
                        .map(|k| {
                            let mut counts: HashMap<usize, usize> = HashMap::new();
                            for (rep, _) in g.double_cosets(&h.representative, &k.representative) {
                                let gkg = g.conjugate(&k.representative, g.inv(rep));
                                let stab = g.intersection(&h.representative, &gkg);
                                *counts.entry(g.class_of(&stab)).or_default() += 1;
                            }
                            let mut v: Vec<(usize, usize)> = counts.into_iter().collect();
                            v.sort_unstable();
                            v
                        })
                        .collect()
                })
                .collect()
        })
    }

    /// Product computed from double-coset decompositions.
    pub fn multiply(&self, x: &BurnsideElement, y: &BurnsideElement) -> Result<BurnsideElement> {
        self.check(x)?;
        self.check(y)?;
        let s = self.structure();
        let mut out = vec![Rational::zero(); self.rank()];
        for (h, a) in x.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in y.coefficients.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for &(l, mult) in &s[h][k] {
                    out[l] += &ab * rat(mult as i64);
                }
            }
        }
        Ok(BurnsideElement {
            group: self.group.clone(),
            coefficients: out,
        })
    }

    /// Product transported through the marks isomorphism.
    pub fn multiply_via_marks(
        &self,
        x: &BurnsideElement,
        y: &BurnsideElement,
    ) -> Result<BurnsideElement> {
        let m = self.marks(x)?.pointwise_mul(&self.marks(y)?);
        self.from_marks(&m)
    }

    /// `e_(H)` for every class, in canonical order.
    pub fn idempotent_basis(&self) -> Vec<BurnsideElement> {
        (0..self.rank())
            .map(|h| {
                self.from_marks(&MarksVector::indicator(self.group.clone(), h))
                    .expect("same group")
            })
            .collect()
    }

    pub fn idempotent(&self, h: usize) -> BurnsideElement {
        self.from_marks(&MarksVector::indicator(self.group.clone(), h))
            .expect("same group")
    }

    /// `Σ_{(K) ∈ F} e_(K)`.
    pub fn family_idempotent(&self, f: &SubgroupFamily) -> Result<BurnsideElement> {
        if *f.group != *self.group {
            return Err(Error::GroupMismatch);
        }
        let mut values = vec![Rational::zero(); self.rank()];
        for &k in &f.classes {
            values[k] = Rational::one();
        }
        self.from_marks(&MarksVector {
            group: self.group.clone(),
            values,
        })
    }

    pub fn support(&self, x: &BurnsideElement) -> Result<Vec<usize>> {
        Ok(self
            .marks(x)?
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| i)
            .collect())
    }

    pub fn is_idempotent(&self, x: &BurnsideElement) -> Result<bool> {
        Ok(self.multiply(x, x)? == *x)
    }

    /// Restricts along `H ≤ G`: each `G/K` is cut into `H`-orbits, whose
    /// stabilisers `H ∩ gKg⁻¹` are classified in `H`.
    pub fn restrict(&self, x: &BurnsideElement, sub: &Restriction) -> Result<BurnsideElement> {
        self.check(x)?;
        let mut out = vec![Rational::zero(); sub.ring.rank()];
        for (k, c) in x.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(l, mult) in &sub.decomposition[k] {
                out[l] += c * rat(mult as i64);
            }
        }
        Ok(BurnsideElement {
            group: sub.ring.group.clone(),
            coefficients: out,
        })
    }

    /// Prepares restriction to `H`, returning the subgroup's own ring too.
    pub fn restriction(&self, h: &Subgroup) -> Restriction {
        let g = &self.group;
        let hgroup: GroupRef = Arc::new(g.subgroup_as_group(h));
        let position: HashMap<usize, usize> =
            h.elements().iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let classes = g.conjugacy_classes_of_subgroups();
        let decomposition = classes
            .iter()
            .map(|k| {
                let reps = g.left_coset_reps(&k.representative);
                let coset_of = coset_lookup(g, &k.representative, &reps);
                let mut seen = vec![false; reps.len()];
                let mut counts: HashMap<usize, usize> = HashMap::new();
                for start in 0..reps.len() {
                    if seen[start] {
                        continue;
                    }
                    for &x in h.elements() {
                        seen[coset_of[g.mul(x, reps[start])]] = true;
                    }
                    let gi = reps[start];
                    let stab: Vec<usize> = h
                        .elements()
                        .iter()
                        .filter(|&&x| k.representative.contains(g.conj(x, gi)))
                        .map(|x| position[x])
                        .collect();
                    let stab = hgroup
                        .subgroup_from_elements(stab)
                        .expect("stabiliser is a subgroup");
                    *counts.entry(hgroup.class_of(&stab)).or_default() += 1;
                }
                let mut v: Vec<(usize, usize)> = counts.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        Restriction {
            subgroup: h.clone(),
            ring: BurnsideRing::new(hgroup),
            decomposition,
        }
    }

    /// Orbit decomposition of `(G/H)^{×i}` as (class, multiplicity) pairs.
    pub fn power_decomposition(
        &self,
        h: &Subgroup,
        i: usize,
        bound: usize,
    ) -> Result<Vec<(usize, usize)>> {
        if i == 0 {
            return Err(Error::InvalidStructure("power must be at least 1".into()));
        }
        let g = &self.group;
        let reps = g.left_coset_reps(h);
        let n = reps.len();
        let points = n
            .checked_pow(i as u32)
            .filter(|&p| p <= bound)
            .ok_or(Error::SizeBoundExceeded {
                size: n.saturating_pow(i as u32),
                bound,
            })?;
        let coset_of = coset_lookup(g, h, &reps);
        // act[x][c]: coset of x·rep_c
        let act: Vec<Vec<usize>> = (0..g.order())
            .map(|x| reps.iter().map(|&r| coset_of[g.mul(x, r)]).collect())
            .collect();
        let decode = |mut p: usize| -> Vec<usize> {
            let mut t = vec![0; i];
            for slot in t.iter_mut().rev() {
                *slot = p % n;
                p /= n;
            }
            t
        };
        let encode = |t: &[usize]| t.iter().fold(0, |acc, &c| acc * n + c);
        let mut seen = vec![false; points];
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for p in 0..points {
            if seen[p] {
                continue;
            }
            let tuple = decode(p);
            let mut stab = Vec::new();
            for (x, row) in act.iter().enumerate() {
                let image: Vec<usize> = tuple.iter().map(|&c| row[c]).collect();
                if image == tuple {
                    stab.push(x);
                }
                seen[encode(&image)] = true;
            }
            let stab = g.subgroup_from_elements(stab).expect("stabiliser");
            *counts.entry(g.class_of(&stab)).or_default() += 1;
        }
        let mut v: Vec<(usize, usize)> = counts.into_iter().collect();
        v.sort_unstable();
        Ok(v)
    }

    pub fn element_from_multiset(&self, parts: &[(usize, usize)]) -> BurnsideElement {
        let mut x = BurnsideElement::zero(self.group.clone());
        for &(c, m) in parts {
            x.coefficients[c] += rat(m as i64);
        }
        x
    }

    /// Checks that `parts` is an orthogonal idempotent decomposition of 1.
    pub fn check_decomposition(&self, parts: &[BurnsideElement]) -> Result<SplitReport> {
        let mut checks = Vec::new();
        for (i, e) in parts.iter().enumerate() {
            checks.push(Check {
                name: format!("e{i}^2 = e{i}"),
                pass: self.is_idempotent(e)?,
            });
        }
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                checks.push(Check {
                    name: format!("e{i}*e{j} = 0"),
                    pass: self.multiply(&parts[i], &parts[j])?.is_zero(),
                });
            }
        }
        let mut sum = BurnsideElement::zero(self.group.clone());
        for e in parts {
            sum = sum.add(e)?;
        }
        checks.push(Check {
            name: "sum = 1".into(),
            pass: sum == self.one(),
        });
        Ok(SplitReport {
            group: self.group.label(),
            idempotents: parts.to_vec(),
            labels: (0..parts.len()).map(|i| format!("e{i}")).collect(),
            checks,
        })
    }

    /// The splitting of the unit into the primitive idempotents `e_(H)`.
    pub fn split_unit_report(&self) -> SplitReport {
        let parts = self.idempotent_basis();
        let mut report = self.check_decomposition(&parts).expect("same group");
        report.labels = self.table.class_labels();
        report
    }
}

fn coset_lookup(g: &PermGroup, h: &Subgroup, reps: &[usize]) -> Vec<usize> {
    let mut coset_of = vec![usize::MAX; g.order()];
    for (c, &r) in reps.iter().enumerate() {
        for &x in h.elements() {
            coset_of[g.mul(r, x)] = c;
        }
    }
    coset_of
}

/// Data for restricting from `A(G)` to `A(H)`.
#[derive(Debug)]
pub struct Restriction {
    pub subgroup: Subgroup,
    pub ring: BurnsideRing,
    decomposition: Vec<Vec<(usize, usize)>>,
}

impl Restriction {
    /// `H`-orbit decomposition of `G/K` for the `G`-class `k`.
    pub fn orbit_decomposition(&self, k: usize) -> &[(usize, usize)] {
        &self.decomposition[k]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct SplitReport {
    pub group: String,
    pub labels: Vec<String>,
    pub idempotents: Vec<BurnsideElement>,
    pub checks: Vec<Check>,
}

impl SplitReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::frac;
    use crate::permgrp::group_from_spec;

    fn ring(spec: &str) -> BurnsideRing {
        BurnsideRing::new(Arc::new(group_from_spec(spec).unwrap()))
    }

    #[test]
    fn c2_table() {
        let r = ring("C2");
        assert_eq!(*r.table().matrix(), MatQ::from_i64(&[&[2, 0], &[1, 1]]));
    }

    #[test]
    fn last_row_is_all_ones() {
        for s in ["C3", "S3", "D8"] {
            let r = ring(s);
            let n = r.rank();
            assert!(r.table().matrix().row(n - 1).iter().all(One::is_one), "{s}");
        }
    }

    #[test]
    fn c2_marks_and_inverse() {
        let r = ring("C2");
        let g = r.group().clone();
        assert_eq!(r.marks(&r.one()).unwrap().values(), &[rat(1), rat(1)]);
        assert_eq!(r.marks(&r.basis(0)).unwrap().values(), &[rat(2), rat(0)]);
        assert!(r.marks(&BurnsideElement::zero(g.clone())).unwrap().values().iter().all(Zero::is_zero));
        let e = r.from_marks(&MarksVector::new(g.clone(), vec![rat(1), rat(0)]).unwrap()).unwrap();
        assert_eq!(e.coefficients(), &[frac(1, 2), rat(0)]);
        let f = r.from_marks(&MarksVector::new(g, vec![rat(0), rat(1)]).unwrap()).unwrap();
        assert_eq!(f.coefficients(), &[frac(-1, 2), rat(1)]);
    }

    #[test]
    fn unit_and_free_products() {
        let r = ring("S3");
        let free = r.basis(0);
        assert_eq!(r.multiply(&free, &free).unwrap(), free.scale(&rat(6)));
        for h in 0..r.rank() {
            assert_eq!(r.multiply(&r.one(), &r.basis(h)).unwrap(), r.basis(h));
        }
    }

    #[test]
    fn family_rejects_non_closed() {
        let r = ring("S3");
        let g = r.group().clone();
        // {(S3)} alone misses everything below it.
        assert!(matches!(
            SubgroupFamily::new(g.clone(), vec![3]),
            Err(Error::FamilyNotClosed { .. })
        ));
        let f = SubgroupFamily::new(g.clone(), vec![0]).unwrap();
        assert_eq!(r.family_idempotent(&f).unwrap(), r.idempotent(0));
        assert_eq!(r.family_idempotent(&SubgroupFamily::all(g)).unwrap(), r.one());
    }

    #[test]
    fn restriction_of_one_and_free() {
        let r = ring("S3");
        let g = r.group().clone();
        let c3 = g.subgroup_from_spec("(0 1 2)").unwrap();
        let res = r.restriction(&c3);
        assert_eq!(r.restrict(&r.one(), &res).unwrap(), res.ring.one());
        assert_eq!(
            r.restrict(&r.basis(0), &res).unwrap(),
            res.ring.basis(0).scale(&rat(2))
        );
    }

    #[test]
    fn supports() {
        let r = ring("S3");
        for h in 0..r.rank() {
            assert_eq!(r.support(&r.idempotent(h)).unwrap(), vec![h]);
        }
        assert_eq!(r.support(&r.one()).unwrap(), (0..r.rank()).collect::<Vec<_>>());
        assert!(r.support(&BurnsideElement::zero(r.group().clone())).unwrap().is_empty());
    }

    #[test]
    fn power_bound_enforced() {
        let r = ring("S4");
        let e = r.group().trivial_subgroup();
        assert!(matches!(
            r.power_decomposition(&e, 4, DEFAULT_POWER_BOUND),
            Err(Error::SizeBoundExceeded { .. })
        ));
        assert_eq!(r.power_decomposition(&e, 1, DEFAULT_POWER_BOUND).unwrap(), vec![(0, 1)]);
    }

    #[test]
    fn trivial_decomposition_passes() {
        let r = ring("A4");
        assert!(r.check_decomposition(&[r.one()]).unwrap().all_pass());
    }
}
