//! JSON formats for complexes, dg categories and right modules. Matrices
//! are arrays of rows of `"p/q"` strings.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dgmod::DGModule;
use crate::error::{Error, Result};
use crate::exactq::{format_rational, parse_rational, MatQ, Rational};
use crate::permgrp::{cycle_string, group_from_spec, parse_cycles, GroupRef};
use crate::ringoid::{Bilinear, DGCategory};
use crate::ringoidmod::RightModule;

pub type MatrixJson = Vec<Vec<String>>;

/// `{ group, lo, hi, dims, d: { "<n>": matrix }, action: { "<element>": { "<n>": matrix } } }`,
/// where an element is its index in the sorted element list or a cycle string.
/// Missing differentials are zero. Actions may be given for any generating
/// set of elements; a missing `action` means the trivial action.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub group: String,
    pub lo: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<i32>,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub d: BTreeMap<String, MatrixJson>,
    #[serde(default)]
    pub action: BTreeMap<String, BTreeMap<String, MatrixJson>>,
}

/// A spec string that rebuilds `g` with the same element order.
pub fn group_spec(g: &GroupRef) -> String {
    if let Some(name) = g.name() {
        if group_from_spec(name).is_ok_and(|h| h == **g) {
            return name.to_string();
        }
    }
    let gens: Vec<String> = g.generator_indices().into_iter().map(|x| cycle_string(g.element(x))).collect();
    format!("perm:{}", gens.join(";"))
}

pub fn parse_group(spec: &str) -> Result<GroupRef> {
    Ok(Arc::new(group_from_spec(spec)?))
}

fn matrix_json(m: &MatQ) -> MatrixJson {
    m.to_strings()
}

fn matrix_from_json(rows: usize, cols: usize, s: &MatrixJson, what: &str) -> Result<MatQ> {
    // a zero-row matrix carries no column information
    if rows == 0 && s.is_empty() {
        return Ok(MatQ::zeros(0, cols));
    }
    MatQ::from_strings(rows, cols, s).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn vector_json(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn vector_from_json(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

pub fn complex_to_json(m: &DGModule) -> ComplexJson {
    let g = m.group();
    let mut d = BTreeMap::new();
    let mut action = BTreeMap::new();
    for n in m.degrees() {
        let dn = m.d(n);
        if !dn.is_zero() {
            d.insert(n.to_string(), matrix_json(&dn));
        }
    }
    if g.order() > 1 {
        for x in g.generator_indices() {
            let per: BTreeMap<String, MatrixJson> = m
                .degrees()
                .filter(|&n| m.dim(n) > 0)
                .map(|n| (n.to_string(), matrix_json(&m.action(x, n))))
                .collect();
            action.insert(x.to_string(), per);
        }
    }
    ComplexJson {
        group: group_spec(g),
        lo: m.lo(),
        hi: Some(m.lo() + m.dims().len() as i32 - 1),
        dims: m.dims().to_vec(),
        d,
        action,
    }
}

fn parse_key<T: std::str::FromStr>(k: &str, what: &str) -> Result<T> {
    k.parse().map_err(|_| Error::Parse(format!("bad {what} key {k:?}")))
}

pub fn complex_from_json(j: &ComplexJson) -> Result<DGModule> {
    let g = parse_group(&j.group)?;
    complex_from_json_over(j, g)
}

/// Reads a complex, reusing `g` when it matches the declared group.
pub fn complex_from_json_over(j: &ComplexJson, g: GroupRef) -> Result<DGModule> {
    if let Some(hi) = j.hi {
        if hi - j.lo + 1 != j.dims.len() as i32 {
            return Err(Error::Parse(format!("hi = {hi} disagrees with lo = {} and {} dims", j.lo, j.dims.len())));
        }
    }
    let dim = |n: i32| -> usize {
        let k = n - j.lo;
        if k < 0 {
            0
        } else {
            j.dims.get(k as usize).copied().unwrap_or(0)
        }
    };
    let degrees: Vec<i32> = (0..j.dims.len() as i32).map(|k| j.lo + k).collect();
    for key in j.d.keys() {
        let n: i32 = parse_key(key, "degree")?;
        if !degrees.contains(&n) {
            return Err(Error::Parse(format!("differential in degree {n} outside the complex")));
        }
    }
    let diffs = degrees
        .iter()
        .map(|&n| match j.d.get(&n.to_string()) {
            Some(m) => matrix_from_json(dim(n - 1), dim(n), m, &format!("d.{n}")),
            None => Ok(MatQ::zeros(dim(n - 1), dim(n))),
        })
        .collect::<Result<Vec<_>>>()?;
    if g.order() == 1 {
        return DGModule::over_trivial(j.lo, j.dims.clone(), diffs);
    }
    // given elements, then closure under products
    let mut known: Vec<Option<Vec<MatQ>>> = vec![None; g.order()];
    known[g.identity()] = Some(j.dims.iter().map(|&d| MatQ::identity(d)).collect());
    let mut given = Vec::new();
    for (key, per) in &j.action {
        let x: usize = if key.trim_start().starts_with('(') {
            let p = parse_cycles(key, Some(g.degree()))?;
            g.index_of(&p)
                .ok_or_else(|| Error::Parse(format!("{key} is not an element of {}", group_spec(&g))))?
        } else {
            parse_key(key, "element")?
        };
        if x >= g.order() {
            return Err(Error::Parse(format!("element index {x} out of range for a group of order {}", g.order())));
        }
        let mats = degrees
            .iter()
            .map(|&n| match per.get(&n.to_string()) {
                Some(m) => matrix_from_json(dim(n), dim(n), m, &format!("action.{x}.{n}")),
                None if dim(n) == 0 => Ok(MatQ::zeros(0, 0)),
                None => Err(Error::Parse(format!("action.{x} is missing degree {n}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        known[x] = Some(mats.clone());
        given.push((x, mats));
    }
    if given.is_empty() {
        given = g
            .generator_indices()
            .into_iter()
            .map(|x| (x, j.dims.iter().map(|&d| MatQ::identity(d)).collect()))
            .collect();
    }
    let mut queue = vec![g.identity()];
    for (x, _) in &given {
        queue.push(*x);
    }
    while let Some(a) = queue.pop() {
        let Some(ra) = known[a].clone() else { continue };
        for (x, rx) in &given {
            let ax = g.mul(a, *x);
            if known[ax].is_none() {
                known[ax] = Some(ra.iter().zip(rx).map(|(p, q)| p * q).collect());
                queue.push(ax);
            }
        }
    }
    if known.iter().any(Option::is_none) {
        return Err(Error::Parse("the given elements do not generate the group".into()));
    }
    let known: Vec<Vec<MatQ>> = known.into_iter().map(Option::unwrap).collect();
    let actions = (0..degrees.len())
        .map(|k| known.iter().map(|per| per[k].clone()).collect())
        .collect();
    DGModule::new(g, j.lo, j.dims.clone(), diffs, actions)
}

pub fn complex_from_str(s: &str) -> Result<DGModule> {
    let j: ComplexJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    complex_from_json(&j)
}

pub fn complex_to_string(m: &DGModule) -> String {
    serde_json::to_string_pretty(&complex_to_json(m)).expect("serializable")
}

/// `homs[a][b]`, `identities[a]`, and `compositions[a][b][c]` as a
/// `dim hom(a,c) × (dim hom(b,c) · dim hom(a,b))` matrix, column `i·|hom(a,b)| + j`
/// holding the composite of basis elements `i ∈ hom(b,c)` and `j ∈ hom(a,b)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub homs: Vec<Vec<ComplexJson>>,
    pub identities: Vec<Vec<String>>,
    pub compositions: Vec<Vec<Vec<MatrixJson>>>,
}

pub fn category_to_json(c: &DGCategory) -> CategoryJson {
    let n = c.object_count();
    CategoryJson {
        objects: c.objects().to_vec(),
        homs: (0..n).map(|a| (0..n).map(|b| complex_to_json(c.hom(a, b))).collect()).collect(),
        identities: (0..n).map(|a| vector_json(c.identity(a))).collect(),
        compositions: (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| (0..n).map(|cc| matrix_json(&c.pairing(a, b, cc).to_matrix())).collect())
                    .collect()
            })
            .collect(),
    }
}

fn check_len(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { context, expected, found });
    }
    Ok(())
}

pub fn category_from_json(j: &CategoryJson) -> Result<DGCategory> {
    let n = j.objects.len();
    check_len("hom rows", n, j.homs.len())?;
    check_len("identities", n, j.identities.len())?;
    check_len("composition rows", n, j.compositions.len())?;
    let trivial = crate::dgmod::trivial_group();
    let mut homs = Vec::with_capacity(n * n);
    for row in &j.homs {
        check_len("hom columns", n, row.len())?;
        for h in row {
            homs.push(complex_from_json_over(h, trivial.clone())?);
        }
    }
    let identities = j.identities.iter().map(|v| vector_from_json(v)).collect::<Result<Vec<_>>>()?;
    let mut pairings = Vec::with_capacity(n * n * n);
    for a in 0..n {
        check_len("composition columns", n, j.compositions[a].len())?;
        for b in 0..n {
            check_len("composition depth", n, j.compositions[a][b].len())?;
            for cc in 0..n {
                let (hac, hbc, hab) = (&homs[a * n + cc], &homs[b * n + cc], &homs[a * n + b]);
                let (left, right) = (hbc.total_dim(), hab.total_dim());
                let m = matrix_from_json(hac.total_dim(), left * right, &j.compositions[a][b][cc], &format!("compositions.{a}.{b}.{cc}"))?;
                pairings.push(Bilinear::from_matrix(&m, left, right)?);
            }
        }
    }
    DGCategory::new(j.objects.clone(), homs, identities, pairings)
}

pub fn category_from_str(s: &str) -> Result<DGCategory> {
    let j: CategoryJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    category_from_json(&j)
}

pub fn category_to_string(c: &DGCategory) -> String {
    serde_json::to_string_pretty(&category_to_json(c)).expect("serializable")
}

/// `values[o]`, and `actions[t][s]` as a `dim M(t) × (dim M(s) · dim hom(t,s))`
/// matrix with column `m·|hom(t,s)| + f` holding `m·f`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RightModuleJson {
    pub objects: Vec<String>,
    pub values: Vec<ComplexJson>,
    pub actions: Vec<Vec<MatrixJson>>,
}

pub fn right_module_to_json(m: &RightModule) -> RightModuleJson {
    let n = m.base().object_count();
    RightModuleJson {
        objects: m.base().objects().to_vec(),
        values: m.values().iter().map(complex_to_json).collect(),
        actions: (0..n)
            .map(|t| (0..n).map(|s| matrix_json(&m.action(t, s).to_matrix())).collect())
            .collect(),
    }
}

pub fn right_module_from_json(base: Arc<DGCategory>, j: &RightModuleJson) -> Result<RightModule> {
    let n = base.object_count();
    if j.objects != base.objects() {
        return Err(Error::InvalidStructure("module objects differ from the category's".into()));
    }
    check_len("module values", n, j.values.len())?;
    check_len("module action rows", n, j.actions.len())?;
    let trivial = crate::dgmod::trivial_group();
    let values = j
        .values
        .iter()
        .map(|v| complex_from_json_over(v, trivial.clone()))
        .collect::<Result<Vec<_>>>()?;
    let mut actions = Vec::with_capacity(n * n);
    for t in 0..n {
        check_len("module action columns", n, j.actions[t].len())?;
        for s in 0..n {
            let (left, right) = (values[s].total_dim(), base.hom_dim(t, s));
            let m = matrix_from_json(values[t].total_dim(), left * right, &j.actions[t][s], &format!("actions.{t}.{s}"))?;
            actions.push(Bilinear::from_matrix(&m, left, right)?);
        }
    }
    RightModule::new(base, values, actions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringoid::build_ea;
    use crate::ringoidmod::free_module;

    #[test]
    fn complex_roundtrip() {
        let g = parse_group("S3").unwrap();
        let reg = DGModule::regular(g.clone());
        let m = DGModule::direct_sum(&[&reg, &DGModule::unit(g).shifted(1)]).unwrap();
        let back = complex_from_str(&complex_to_string(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn generators_suffice() {
        let s = r#"{"group":"C2","lo":0,"dims":[2],"action":{"1":{"0":[["0","1"],["1","0"]]}}}"#;
        let m = complex_from_str(s).unwrap();
        assert_eq!(m.action(1, 0), MatQ::permutation(&[1, 0]));
        let bad = r#"{"group":"C2","lo":0,"dims":[1,1],"d":{"1":[["1"]]},"action":{"1":{"0":[["1"]],"1":[["-1"]]}}}"#;
        assert!(complex_from_str(bad).is_err());
    }

    #[test]
    fn category_and_module_roundtrip() {
        let ea = build_ea(parse_group("C2").unwrap(), 1).unwrap();
        let c = ea.category();
        let back = category_from_str(&category_to_string(c)).unwrap();
        assert_eq!(category_to_json(&back).compositions, category_to_json(c).compositions);
        let f = free_module(&ea.shared_category(), 1).unwrap();
        let j = right_module_to_json(&f);
        let g = right_module_from_json(ea.shared_category(), &j).unwrap();
        assert_eq!(g.dim(0), f.dim(0));
    }
}
