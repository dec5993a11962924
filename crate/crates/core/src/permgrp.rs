//! Finite permutation groups, their subgroup lattices and the coset
//! combinatorics needed by the Burnside ring.
//!
//! Permutations act on `{0..n-1}` and compose left to right:
//! `(p q)(x) = q(p(x))`. Elements are stored sorted lexicographically, so the
//! identity always has index 0 and element indices order like the
//! permutations themselves.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub type Perm = Vec<usize>;

pub const DEFAULT_ORDER_CAP: usize = 200;
pub const ORDER_CAP_ENV: &str = "RATMODEL_ORDER_CAP";

/// Order cap from `RATMODEL_ORDER_CAP`, falling back to 200.
pub fn order_cap() -> usize {
    std::env::var(ORDER_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORDER_CAP)
}

pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    p.iter().map(|&x| q[x]).collect()
}

pub fn invert(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn is_bijection(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

/// Disjoint cycle notation, `()` for the identity.
pub fn cycle_string(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cyc.push(x);
            x = p[x];
        }
        let parts: Vec<String> = cyc.iter().map(usize::to_string).collect();
        out.push_str(&format!("({})", parts.join(" ")));
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

pub type GroupRef = Arc<PermGroup>;

pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mul: Vec<usize>,
    inv: Vec<usize>,
    name: Option<String>,
    lattice: OnceLock<SubgroupLattice>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    /// Closes the generators under composition, failing above `cap` elements.
    pub fn generate(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.len() != degree || !is_bijection(g) {
                return Err(Error::Parse(format!(
                    "generator {g:?} is not a permutation of {degree} points"
                )));
            }
        }
        let id: Perm = (0..degree).collect();
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = compose(&x, g);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::OrderCapExceeded {
                            order: seen.len(),
                            cap,
                        });
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        Ok(Self::from_sorted_elements(degree, generators, elements))
    }

    fn from_sorted_elements(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> Self {
        let n = elements.len();
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = index[&compose(&elements[a], &elements[b])];
            }
        }
        let inv = elements.iter().map(|p| index[&invert(p)]).collect();
        PermGroup {
            degree,
            generators,
            elements,
            index,
            mul,
            inv,
            name: None,
            lattice: OnceLock::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::from_sorted_elements(1, Vec::new(), vec![vec![0]])
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("group of order {}", self.order()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Indices of the generators in the element list.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &[usize]) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g^{-1} x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order()).collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    /// Subgroup generated by the given element indices.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let n = self.order();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Subgroup { elements: members }
    }

    /// Validates a set of element indices as a subgroup.
    pub fn subgroup_from_elements(&self, mut elements: Vec<usize>) -> Result<Subgroup> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) || elements.iter().any(|&e| e >= self.order()) {
            return Err(Error::NotASubgroup("missing identity or bad index".into()));
        }
        let h = Subgroup { elements };
        for &a in &h.elements {
            if !h.contains(self.inv(a)) {
                return Err(Error::NotASubgroup("not closed under inverses".into()));
            }
            for &b in &h.elements {
                if !h.contains(self.mul(a, b)) {
                    return Err(Error::NotASubgroup("not closed under products".into()));
                }
            }
        }
        Ok(h)
    }

    /// Subgroup generated by permutations written in cycle notation, with `;`
    /// between generators (e.g. `(0 1);(2 3)`). An empty string is the trivial
    /// subgroup.
    pub fn subgroup_from_spec(&self, spec: &str) -> Result<Subgroup> {
        let mut gens = Vec::new();
        for part in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let p = parse_cycles(part, Some(self.degree))?;
            let idx = self
                .index_of(&p)
                .ok_or_else(|| Error::NotASubgroup(format!("{part} is not in the group")))?;
            gens.push(idx);
        }
        Ok(self.closure(&gens))
    }

    /// Left-to-right greedy generating set of a subgroup.
    pub fn generating_set(&self, h: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for &x in &h.elements {
            if !current.contains(x) {
                gens.push(x);
                current = self.closure(&gens);
                if current.order() == h.order() {
                    break;
                }
            }
        }
        gens
    }

    /// `H` as a permutation group in its own right. Its element `k` is the
    /// `k`-th element of `h` (both lists are lexicographically sorted).
    pub fn subgroup_as_group(&self, h: &Subgroup) -> PermGroup {
        let gens = self
            .generating_set(h)
            .into_iter()
            .map(|i| self.elements[i].clone())
            .collect();
        let elements = h.elements.iter().map(|&i| self.elements[i].clone()).collect();
        let mut g = Self::from_sorted_elements(self.degree, gens, elements);
        g.name = Some(format!("subgroup of order {} in {}", h.order(), self.label()));
        g
    }

    /// `g^{-1} H g`.
    pub fn conjugate(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut elements: Vec<usize> = h.elements.iter().map(|&x| self.conj(x, g)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let elements = (0..self.order())
            .filter(|&g| h.elements.iter().all(|&x| h.contains(self.conj(x, g))))
            .collect();
        Subgroup { elements }
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        Subgroup {
            elements: a.elements.iter().copied().filter(|&x| b.contains(x)).collect(),
        }
    }

    /// Whether some conjugate `g^{-1} K g` lies inside `H`.
    pub fn is_subconjugate(&self, k: &Subgroup, h: &Subgroup) -> bool {
        if h.order() % k.order() != 0 {
            return false;
        }
        (0..self.order()).any(|g| k.elements.iter().all(|&x| h.contains(self.conj(x, g))))
    }

    /// Subconjugate but not conjugate.
    pub fn is_strictly_subconjugate(&self, k: &Subgroup, h: &Subgroup) -> bool {
        k.order() < h.order() && self.is_subconjugate(k, h)
    }

    /// `N_G(H)/H` acting on the right cosets `Hn`, `n ∈ N_G(H)`.
    pub fn weyl_group(&self, h: &Subgroup) -> PermGroup {
        let n = self.normalizer(h);
        let mut coset_of = HashMap::new();
        let mut reps = Vec::new();
        for &x in &n.elements {
            if coset_of.contains_key(&x) {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &y in &h.elements {
                coset_of.insert(self.mul(y, x), c);
            }
        }
        let perm_of = |x: usize| -> Perm { reps.iter().map(|&r| coset_of[&self.mul(r, x)]).collect() };
        let degree = reps.len();
        let mut gens: Vec<Perm> = Vec::new();
        let cap = n.order().max(1);
        let mut current = PermGroup::generate(degree, Vec::new(), cap).expect("trivial group");
        for &x in &n.elements {
            let p = perm_of(x);
            if current.index_of(&p).is_none() {
                gens.push(p);
                current = PermGroup::generate(degree, gens.clone(), cap).expect("quotient order");
            }
        }
        current.name = Some(format!("W({})", self.label()));
        current
    }

    /// `H\G/K` as (least element, size) pairs, ordered by representative.
    pub fn double_cosets(&self, h: &Subgroup, k: &Subgroup) -> Vec<(usize, usize)> {
        let mut assigned = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if assigned[g] {
                continue;
            }
            let mut size = 0;
            for &a in &h.elements {
                let ag = self.mul(a, g);
                for &b in &k.elements {
                    let x = self.mul(ag, b);
                    if !assigned[x] {
                        assigned[x] = true;
                        size += 1;
                    }
                }
            }
            out.push((g, size));
        }
        out
    }

    /// Least element of each left coset `gH`, in increasing order.
    pub fn left_coset_reps(&self, h: &Subgroup) -> Vec<usize> {
        let mut assigned = vec![false; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if assigned[g] {
                continue;
            }
            reps.push(g);
            for &x in &h.elements {
                assigned[self.mul(g, x)] = true;
            }
        }
        reps
    }

    /// `|(G/H)^K|`: left cosets `gH` with `K g H = g H`.
    pub fn fixed_point_count(&self, h: &Subgroup, k: &Subgroup) -> usize {
        self.left_coset_reps(h)
            .into_iter()
            .filter(|&g| k.elements.iter().all(|&x| h.contains(self.conj(x, g))))
            .count()
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        self.lattice.get_or_init(|| SubgroupLattice::build(self))
    }

    pub fn all_subgroups(&self) -> &[Subgroup] {
        &self.lattice().subgroups
    }

    pub fn conjugacy_classes_of_subgroups(&self) -> &[SubgroupClass] {
        &self.lattice().classes
    }

    /// Class index of an arbitrary subgroup.
    pub fn class_of(&self, h: &Subgroup) -> usize {
        self.lattice().class_of(h)
    }

    pub fn subgroup_label(&self, h: &Subgroup) -> String {
        let parts: Vec<String> = h.elements.iter().map(|&i| cycle_string(&self.elements[i])).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Set of element indices of a parent group, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Canonical comparison: order first, then the sorted element list.
    pub fn canonical_cmp(&self, other: &Subgroup) -> std::cmp::Ordering {
        (self.order(), &self.elements).cmp(&(other.order(), &other.elements))
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
    pub index: usize,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    classes: Vec<SubgroupClass>,
    class_of_subgroup: Vec<usize>,
    lookup: HashMap<Subgroup, usize>,
}

impl SubgroupLattice {
    /// Cyclic-extension enumeration: start from all cyclic subgroups and keep
    /// adjoining one element at a time until nothing new appears.
    fn build(g: &PermGroup) -> Self {
        let mut seen: HashSet<Subgroup> = HashSet::new();
        let mut frontier = Vec::new();
        for x in 0..g.order() {
            let c = g.closure(&[x]);
            if seen.insert(c.clone()) {
                frontier.push(c);
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                let gens = g.generating_set(h);
                for x in 0..g.order() {
                    if h.contains(x) {
                        continue;
                    }
                    let mut ext = gens.clone();
                    ext.push(x);
                    let k = g.closure(&ext);
                    if seen.insert(k.clone()) {
                        next.push(k);
                    }
                }
            }
            frontier = next;
        }
        let mut subgroups: Vec<Subgroup> = seen.into_iter().collect();
        subgroups.sort_by(Subgroup::canonical_cmp);
        let lookup: HashMap<Subgroup, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();

        let mut class_of_subgroup = vec![usize::MAX; subgroups.len()];
        let mut classes = Vec::new();
        // Subgroups are in canonical order, so the first unclassified subgroup
        // is the least member of its class.
        for i in 0..subgroups.len() {
            if class_of_subgroup[i] != usize::MAX {
                continue;
            }
            let mut members: Vec<Subgroup> = (0..g.order())
                .map(|x| g.conjugate(&subgroups[i], x))
                .collect::<HashSet<_>>()
                .into_iter()
                .collect();
            members.sort();
            let idx = classes.len();
            for m in &members {
                class_of_subgroup[lookup[m]] = idx;
            }
            classes.push(SubgroupClass {
                representative: subgroups[i].clone(),
                members,
                index: idx,
            });
        }
        SubgroupLattice {
            subgroups,
            classes,
            class_of_subgroup,
            lookup,
        }
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class_of(&self, h: &Subgroup) -> usize {
        self.class_of_subgroup[self.lookup[h]]
    }
}

/// Parses cycle notation such as `(0 1 2)(3 4)` into a permutation. Without
/// a fixed degree, the degree is one more than the largest point mentioned.
pub fn parse_cycles(s: &str, degree: Option<usize>) -> Result<Perm> {
    let bad = |why: &str| Error::Parse(format!("bad cycle string {s:?}: {why}"));
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(bad("expected '('"));
        };
        let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let pts: Vec<usize> = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| bad("non-numeric point")))
            .collect::<Result<_>>()?;
        cycles.push(pts);
        rest = body[close + 1..].trim_start();
    }
    let max = cycles.iter().flatten().copied().max().map_or(0, |m| m + 1);
    let n = match degree {
        Some(d) if max > d => return Err(bad("point outside the degree")),
        Some(d) => d,
        None => max.max(1),
    };
    let mut p: Perm = (0..n).collect();
    let mut touched = vec![false; n];
    for cyc in cycles {
        for (i, &a) in cyc.iter().enumerate() {
            if std::mem::replace(&mut touched[a], true) {
                return Err(bad("cycles are not disjoint"));
            }
            p[a] = cyc[(i + 1) % cyc.len()];
        }
    }
    Ok(p)
}

fn cycle_perm(n: usize) -> Perm {
    (0..n).map(|i| (i + 1) % n).collect()
}

fn quaternion_group() -> (usize, Vec<Perm>) {
    // Units 1,-1,i,-i,j,-j,k,-k as 0..8, encoded (sign, unit) with unit 0..4.
    let enc = |s: usize, u: usize| 2 * u + s;
    let unit_mul = |a: usize, b: usize| -> (usize, usize) {
        // returns (sign, unit) for unit_a * unit_b
        match (a, b) {
            (0, x) | (x, 0) => (0, x),
            (x, y) if x == y => (1, 0),
            (1, 2) => (0, 3),
            (2, 3) => (0, 1),
            (3, 1) => (0, 2),
            (2, 1) => (1, 3),
            (3, 2) => (1, 1),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    let mul = |x: usize, y: usize| {
        let (sx, ux) = (x % 2, x / 2);
        let (sy, uy) = (y % 2, y / 2);
        let (s, u) = unit_mul(ux, uy);
        enc((sx + sy + s) % 2, u)
    };
    let right = |g: usize| -> Perm { (0..8).map(|x| mul(x, g)).collect() };
    (8, vec![right(enc(0, 1)), right(enc(0, 2))])
}

fn direct_product(parts: &[(usize, Vec<Perm>)]) -> (usize, Vec<Perm>) {
    let degree: usize = parts.iter().map(|(d, _)| d).sum();
    let mut gens = Vec::new();
    let mut off = 0;
    for (d, gs) in parts {
        for g in gs {
            let mut p: Perm = (0..degree).collect();
            for (i, &x) in g.iter().enumerate() {
                p[off + i] = off + x;
            }
            gens.push(p);
        }
        off += d;
    }
    (degree, gens)
}

fn named_generators(spec: &str) -> Result<(usize, Vec<Perm>)> {
    let bad = || Error::Parse(format!("unknown group spec {spec:?}"));
    if spec == "Q8" {
        return Ok(quaternion_group());
    }
    if spec.len() < 2 {
        return Err(bad());
    }
    let (kind, num) = spec.split_at(1);
    let n: usize = num.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    Ok(match kind {
        "C" => {
            if n == 1 {
                (1, Vec::new())
            } else {
                (n, vec![cycle_perm(n)])
            }
        }
        "S" => {
            if n == 1 {
                (1, Vec::new())
            } else {
                let mut t: Perm = (0..n).collect();
                t.swap(0, 1);
                (n, vec![t, cycle_perm(n)])
            }
        }
        "A" => {
            if n < 3 {
                (n, Vec::new())
            } else {
                let gens = (2..n)
                    .map(|k| {
                        let mut p: Perm = (0..n).collect();
                        p[0] = 1;
                        p[1] = k;
                        p[k] = 0;
                        p
                    })
                    .collect();
                (n, gens)
            }
        }
        "D" => {
            if n % 2 != 0 {
                return Err(Error::Parse(format!("dihedral order must be even in {spec:?}")));
            }
            let m = n / 2;
            match m {
                1 => (2, vec![vec![1, 0]]),
                2 => (4, vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]]),
                _ => {
                    let reflection = (0..m).map(|i| (m - i) % m).collect();
                    (m, vec![cycle_perm(m), reflection])
                }
            }
        }
        _ => return Err(bad()),
    })
}

/// Builds a group from `C<n>`, `S<n>`, `A<n>`, `D<2m>`, `Q8`, a direct
/// product such as `C2xC2`, or `perm:(0 1 2)(3 4);(0 1)`.
pub fn group_from_spec_with_cap(spec: &str, cap: usize) -> Result<PermGroup> {
    let spec = spec.trim();
    let (degree, gens) = if let Some(body) = spec.strip_prefix("perm:") {
        let perms: Vec<Perm> = body
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| parse_cycles(s, None))
            .collect::<Result<_>>()?;
        let degree = perms.iter().map(Vec::len).max().unwrap_or(1);
        let gens = perms
            .into_iter()
            .map(|mut p| {
                p.extend(p.len()..degree);
                p
            })
            .collect();
        (degree, gens)
    } else if spec.contains('x') {
        let parts: Vec<(usize, Vec<Perm>)> = spec
            .split('x')
            .map(|s| named_generators(s.trim()))
            .collect::<Result<_>>()?;
        direct_product(&parts)
    } else {
        named_generators(spec)?
    };
    Ok(PermGroup::generate(degree, gens, cap)?.with_name(spec))
}

pub fn group_from_spec(spec: &str) -> Result<PermGroup> {
    group_from_spec_with_cap(spec, order_cap())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(spec: &str) -> PermGroup {
        group_from_spec(spec).unwrap()
    }

    #[test]
    fn named_orders() {
        for (s, n) in [
            ("C1", 1),
            ("C2", 2),
            ("C4", 4),
            ("S3", 6),
            ("S4", 24),
            ("A4", 12),
            ("A5", 60),
            ("D2", 2),
            ("D4", 4),
            ("D8", 8),
            ("D12", 12),
            ("Q8", 8),
            ("C2xC2", 4),
            ("C2xC3", 6),
            ("perm:(0 1 2);(0 1)", 6),
        ] {
            assert_eq!(g(s).order(), n, "{s}");
        }
        assert!(!g("Q8").is_abelian());
        assert!(!g("D8").is_abelian());
        assert!(g("C2xC2").is_abelian());
        assert_eq!(g("S3").elements().len(), 6);
    }

    #[test]
    fn q8_has_one_involution() {
        let q = g("Q8");
        let involutions = (0..8).filter(|&x| q.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn spec_errors() {
        assert!(group_from_spec("X3").is_err());
        assert!(group_from_spec("D7").is_err());
        assert!(group_from_spec("perm:(0 1").is_err());
        assert!(matches!(
            group_from_spec_with_cap("S6", 200),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn composition_is_left_to_right() {
        let p = vec![1, 0, 2];
        let q = vec![0, 2, 1];
        // (pq)(0) = q(p(0)) = q(1) = 2
        assert_eq!(compose(&p, &q)[0], 2);
    }

    #[test]
    fn small_lattices() {
        assert_eq!(g("C2").all_subgroups().len(), 2);
        assert_eq!(g("C2").conjugacy_classes_of_subgroups().len(), 2);
        let s3 = g("S3");
        let orders: Vec<usize> = s3.all_subgroups().iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(s3.conjugacy_classes_of_subgroups().len(), 4);
        assert_eq!(g("S4").all_subgroups().len(), 30);
        assert_eq!(g("S4").conjugacy_classes_of_subgroups().len(), 11);
    }

    #[test]
    fn subconjugacy_basics() {
        let s3 = g("S3");
        let e = s3.trivial_subgroup();
        for h in s3.all_subgroups() {
            assert!(s3.is_subconjugate(&e, h));
            assert!(s3.is_subconjugate(h, h));
            assert!(!s3.is_strictly_subconjugate(h, h));
        }
    }

    #[test]
    fn weyl_groups() {
        let s3 = g("S3");
        assert_eq!(s3.weyl_group(&s3.trivial_subgroup()).order(), 6);
        let c2 = s3.subgroup_from_spec("(0 1)").unwrap();
        assert_eq!(s3.weyl_group(&c2).order(), 1);
        let c4 = g("C4");
        let c2 = c4.subgroup_from_spec("(0 2)(1 3)").unwrap();
        assert_eq!(c4.weyl_group(&c2).order(), 2);
    }

    #[test]
    fn double_coset_cases() {
        let s3 = g("S3");
        let whole = s3.whole();
        assert_eq!(s3.double_cosets(&whole, &whole), vec![(0, 6)]);
        let e = s3.trivial_subgroup();
        assert_eq!(s3.double_cosets(&e, &e).len(), 6);
        let c2 = s3.subgroup_from_spec("(0 1)").unwrap();
        let mut sizes: Vec<usize> = s3.double_cosets(&c2, &c2).iter().map(|x| x.1).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
    }

    #[test]
    fn fixed_points_basic() {
        let s3 = g("S3");
        let e = s3.trivial_subgroup();
        let whole = s3.whole();
        let c2 = s3.subgroup_from_spec("(0 1)").unwrap();
        for k in s3.all_subgroups() {
            assert_eq!(s3.fixed_point_count(&whole, k), 1);
            assert_eq!(s3.fixed_point_count(&e, k), if k.order() == 1 { 6 } else { 0 });
        }
        assert_eq!(s3.fixed_point_count(&c2, &c2), 1);
    }

    #[test]
    fn cycle_strings() {
        assert_eq!(cycle_string(&[0, 1, 2]), "()");
        assert_eq!(cycle_string(&[1, 2, 0, 4, 3]), "(0 1 2)(3 4)");
        assert_eq!(parse_cycles("(0 1 2)(3 4)", None).unwrap(), vec![1, 2, 0, 4, 3]);
    }
}
