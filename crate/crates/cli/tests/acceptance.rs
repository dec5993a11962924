//! The ten acceptance criteria, one pass/fail line each.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ratmodel::burnside::BurnsideRing;
use ratmodel::dgmod::{chain_map_dim, fixed_points, hom_complex, homology, rep_iso, tensor, DGModule};
use ratmodel::exactq::{rat, MatQ};
use ratmodel::json::{category_to_string, complex_to_string};
use ratmodel::permgrp::{group_from_spec, GroupRef, PermGroup};
use ratmodel::random::{random_extension, random_qc2_complex, random_twisted_qc3};
use ratmodel::ringoid::{build_ea, formality_zigzag, homology_category, is_quasi_iso_functor, is_ring_iso_to_group_algebra};
use ratmodel::ringoidmod::{
    box_associativity_check, box_free_check, box_symmetry_check, box_unit_check, coend_collapse, free_module,
    morita_roundtrip_check, morita_unit_check,
};
use ratmodel::skew::{dihedral_iso_check, skew_hom_dim, skew_to_twist, twist_to_skew, twisted_hom_dim};
use ratmodel::Error;

const BURNSIDE_GROUPS: [&str; 9] = ["C2", "C3", "C4", "C2xC2", "S3", "D8", "Q8", "A4", "S4"];

fn grp(spec: &str) -> GroupRef {
    Arc::new(group_from_spec(spec).unwrap())
}

/// A failed check, with a description of the first counterexample.
type Verdict = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Verdict {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Verdict {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn idempotent_splitting() -> Verdict {
    let start = Instant::now();
    for spec in BURNSIDE_GROUPS {
        let report = BurnsideRing::new(grp(spec)).split_unit_report();
        ensure(report.all_pass(), || format!("{spec}: {:?}", report.checks))?;
        ensure(report.idempotents.len() == report.labels.len(), || format!("{spec}: label count"))?;
    }
    within(start, Duration::from_secs(10), "splitting")
}

/// `|(G/H)^K|` by listing the cosets `gH` as sets and testing `K·gH = gH`.
fn brute_marks(g: &PermGroup, h: &[usize], k: &[usize]) -> usize {
    let mut cosets = BTreeSet::new();
    for x in 0..g.order() {
        let c: BTreeSet<usize> = h.iter().map(|&y| g.mul(x, y)).collect();
        cosets.insert(c);
    }
    cosets
        .iter()
        .filter(|c| k.iter().all(|&a| c.iter().all(|&y| c.contains(&g.mul(a, y)))))
        .count()
}

fn marks_oracle() -> Verdict {
    for spec in BURNSIDE_GROUPS {
        let g = grp(spec);
        let ring = BurnsideRing::new(g.clone());
        let classes = g.conjugacy_classes_of_subgroups();
        for (r, h) in classes.iter().enumerate() {
            for (c, k) in classes.iter().enumerate() {
                let want = brute_marks(&g, h.representative.elements(), k.representative.elements());
                let got = ring.table().mark(r, c);
                ensure(*got == rat(want as i64), || format!("{spec}: mark({r},{c}) = {got}, brute force {want}"))?;
            }
        }
        for a in 0..ring.rank() {
            for b in 0..ring.rank() {
                let (x, y) = (ring.basis(a), ring.basis(b));
                let direct = ring.multiply(&x, &y).map_err(|e| e.to_string())?;
                let via = ring.multiply_via_marks(&x, &y).map_err(|e| e.to_string())?;
                ensure(direct == via, || format!("{spec}: product of classes {a} and {b}"))?;
            }
        }
    }
    Ok(())
}

fn coset_powers() -> Verdict {
    for spec in ["S3", "S4"] {
        let g = grp(spec);
        let ring = BurnsideRing::new(g.clone());
        let classes = g.conjugacy_classes_of_subgroups();
        for (c, class) in classes.iter().enumerate() {
            let h = &class.representative;
            let w = g.weyl_group(h).order();
            for i in [2usize, 3] {
                let parts = match ring.power_decomposition(h, i, ratmodel::burnside::DEFAULT_POWER_BOUND) {
                    Ok(p) => p,
                    Err(Error::SizeBoundExceeded { .. }) => continue,
                    Err(e) => return Err(e.to_string()),
                };
                let at_h = parts.iter().find(|(k, _)| *k == c).map_or(0, |(_, m)| *m);
                ensure(at_h == w.pow(i as u32 - 1), || format!("{spec} class {c} i={i}: multiplicity {at_h}, |W|^(i-1) = {}", w.pow(i as u32 - 1)))?;
                for (k, _) in &parts {
                    let kk = &classes[*k].representative;
                    let above = *k != c && g.is_subconjugate(h, kk);
                    ensure(!above, || format!("{spec} class {c} i={i}: orbit class {k} lies strictly above"))?;
                    ensure(g.is_subconjugate(kk, h), || format!("{spec} class {c} i={i}: stabiliser class {k} not below"))?;
                }
            }
        }
    }
    Ok(())
}

fn restriction_support() -> Verdict {
    for (spec, sub) in [("S4", "(0 1);(0 1 2)"), ("S3", "(0 1 2)")] {
        let g = grp(spec);
        let h = g.subgroup_from_spec(sub).map_err(|e| e.to_string())?;
        let ring = BurnsideRing::new(g.clone());
        let res = ring.restriction(&h);
        let hg = res.ring.group().clone();
        let h_classes = hg.conjugacy_classes_of_subgroups();
        let g_classes = g.conjugacy_classes_of_subgroups();
        for (k, kclass) in g_classes.iter().enumerate() {
            let e = ring.idempotent(k);
            let r = ring.restrict(&e, &res).map_err(|e| e.to_string())?;
            let support: BTreeSet<usize> = res.ring.support(&r).map_err(|e| e.to_string())?.into_iter().collect();
            // H-classes whose members are G-conjugate to K
            let expected: BTreeSet<usize> = h_classes
                .iter()
                .enumerate()
                .filter(|(_, l)| {
                    let in_g: Vec<usize> = l.representative.elements().iter().map(|&x| h.elements()[x]).collect();
                    g.class_of(&g.subgroup_from_elements(in_g).unwrap()) == k
                })
                .map(|(i, _)| i)
                .collect();
            ensure(support == expected, || format!("{spec} ⊇ {sub}: support of res e_{k} is {support:?}, expected {expected:?}"))?;
            let below = g.is_subconjugate(&kclass.representative, &h);
            ensure(below == !r.is_zero(), || format!("{spec} ⊇ {sub}: res e_{k} nonzero iff K ≤_G H fails"))?;
            ensure(res.ring.is_idempotent(&r).unwrap_or(false), || format!("{spec} ⊇ {sub}: res e_{k} not idempotent"))?;
        }
    }
    Ok(())
}

/// Solution dimension of `F(g·r, g·c) = F(r, c)` for generators `g`: the
/// equations identify unknowns, so the dimension is the number of classes.
fn invariance_dim(g: &PermGroup, i: usize, j: usize) -> usize {
    let n = g.order();
    let (rows, cols) = (n.pow(j as u32), n.pow(i as u32));
    let act = |x: usize, mut t: usize, len: usize| -> usize {
        let mut digits = vec![0; len];
        for d in digits.iter_mut().rev() {
            *d = t % n;
            t /= n;
        }
        digits.iter().fold(0, |acc, &d| acc * n + g.mul(x, d))
    };
    let mut parent: Vec<usize> = (0..rows * cols).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut classes = rows * cols;
    for x in g.generator_indices() {
        for r in 0..rows {
            let gr = act(x, r, j);
            for c in 0..cols {
                let (a, b) = (find(&mut parent, r * cols + c), find(&mut parent, gr * cols + act(x, c, i)));
                if a != b {
                    parent[a] = b;
                    classes -= 1;
                }
            }
        }
    }
    classes
}

fn ringoid_dimensions() -> Verdict {
    let start = Instant::now();
    for spec in ["C2", "S3"] {
        let w = grp(spec);
        let ea = build_ea(w.clone(), 3).map_err(|e| e.to_string())?;
        let c = ea.category();
        for i in 1..=3usize {
            for j in 1..=3usize {
                let want = w.order().pow((i + j - 1) as u32);
                let oracle = invariance_dim(&w, i, j);
                let got = c.hom_dim(i, j);
                ensure(got == want && oracle == want, || format!("{spec}: hom(σ{i}, σ{j}) = {got}, oracle {oracle}, |W|^(i+j-1) = {want}"))?;
            }
        }
        let inv = ea.inverse_assignment().map_err(|e| e.to_string())?;
        ensure(is_ring_iso_to_group_algebra(&ea, &inv), || format!("{spec}: g̃ ↦ g⁻¹ is not a ring iso"))?;
    }
    within(start, Duration::from_secs(5), "ringoid dimensions")
}

fn formality() -> Verdict {
    let c2 = grp("C2");
    let mut rng = ChaCha8Rng::seed_from_u64(0xf0);
    for t in 0..20 {
        let c = random_extension(&c2, 2, true, &mut rng).map_err(|e| e.to_string())?;
        let z = formality_zigzag(&c).map_err(|e| e.to_string())?;
        let legs = is_quasi_iso_functor(&z.to_original).map_err(|e| e.to_string())?
            && is_quasi_iso_functor(&z.to_h0).map_err(|e| e.to_string())?;
        ensure(z.verdict && legs, || format!("formal sample {t}: offending {:?}", z.offending))?;
    }
    for t in 0..5 {
        let c = random_extension(&c2, 2, false, &mut rng).map_err(|e| e.to_string())?;
        let h = homology_category(&c);
        let n = c.object_count();
        let h1 = (0..n).any(|a| (0..n).any(|b| h.graded_dims(a, b).iter().any(|&(d, k)| d == 1 && k > 0)));
        ensure(h1, || format!("non-formal sample {t} has H_1 = 0"))?;
        let z = formality_zigzag(&c).map_err(|e| e.to_string())?;
        ensure(!z.verdict, || format!("non-formal sample {t} reported formal"))?;
    }
    Ok(())
}

fn dg_invariants() -> Verdict {
    let c2 = grp("C2");
    let mut rng = ChaCha8Rng::seed_from_u64(0xd9);
    let xs: Vec<DGModule> = (0..50)
        .map(|_| random_qc2_complex(&c2, 4, &mut rng))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    for (t, x) in xs.iter().enumerate() {
        x.validate().map_err(|e| format!("sample {t}: {e}"))?;
        ensure(x.lo() >= -3 && x.hi() <= 5 && x.dims().iter().all(|&d| d <= 4), || format!("sample {t} out of range"))?;
        for n in x.degrees() {
            ensure((&x.d(n - 1) * &x.d(n)).is_zero(), || format!("sample {t}: d² ≠ 0 at {n}"))?;
        }
        let y = &xs[(t + 1) % xs.len()];
        let z = &xs[(t + 2) % xs.len()];
        // Künneth
        let (hx, hy) = (homology(x).rep, homology(y).rep);
        let hxy = homology(&tensor(x, y).map_err(|e| e.to_string())?).rep;
        for n in -6..=10 {
            let conv: usize = (-3..=5).map(|p| hx.dim(p) * hy.dim(n - p)).sum();
            ensure(hxy.dim(n) == conv, || format!("sample {t}: Künneth fails in degree {n}"))?;
        }
        // tensor ⊣ hom in degree 0
        let lhs = chain_map_dim(&tensor(x, y).map_err(|e| e.to_string())?, z).map_err(|e| e.to_string())?;
        let rhs = chain_map_dim(x, &hom_complex(y, z).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("sample {t}: tensor-hom dims {lhs} vs {rhs}"))?;
        // H(X^G) ≅ (H X)^G as representations
        let h_of_fixed = homology(&fixed_points(x).module).rep;
        let fixed_of_h = homology(&fixed_points(&hx.to_module()).module).rep;
        let iso = rep_iso(&h_of_fixed, &fixed_of_h).map_err(|e| e.to_string())?;
        ensure(iso.is_some(), || format!("sample {t}: H(X^G) and (HX)^G differ"))?;
    }
    Ok(())
}

fn two_term(w: &GroupRef) -> DGModule {
    // QW → QW ⊕ Q, x ↦ (x, ε(x)); homology is Q in degree 0
    let n = w.order();
    let reg = DGModule::regular(w.clone());
    let unit = DGModule::unit(w.clone());
    let zero_deg = DGModule::direct_sum(&[&reg, &unit]).unwrap();
    let mut d = MatQ::zeros(n + 1, n);
    for k in 0..n {
        d.set(k, k, rat(1));
        d.set(n, k, rat(1));
    }
    let actions = vec![
        (0..n).map(|g| zero_deg.action(g, 0)).collect(),
        (0..n).map(|g| reg.action(g, 0)).collect(),
    ];
    DGModule::new(w.clone(), 0, vec![n + 1, n], vec![MatQ::zeros(0, n + 1), d], actions).unwrap()
}

fn morita() -> Verdict {
    let start = Instant::now();
    for (spec, k) in [("C2", 2usize), ("S3", 1)] {
        let w = grp(spec);
        let base = build_ea(w.clone(), k).map_err(|e| e.to_string())?;
        let reg = DGModule::regular(w.clone());
        let unit = DGModule::unit(w.clone());
        let xs = [
            ("0", DGModule::zero(w.clone())),
            ("Q", unit.clone()),
            ("QW", reg.clone()),
            ("Q+QW", DGModule::direct_sum(&[&unit, &reg]).unwrap()),
            ("two-term", two_term(&w)),
        ];
        for (name, x) in &xs {
            let r = morita_roundtrip_check(&base, x).map_err(|e| e.to_string())?;
            ensure(r.passes(), || format!("{spec}: counit for {name}: {r:?}"))?;
        }
        let cat = base.shared_category();
        for o in 0..=k {
            ensure(morita_unit_check(&base, o).map_err(|e| e.to_string())?, || format!("{spec}: unit on F_{o}"))?;
            let f = free_module(&cat, o).map_err(|e| e.to_string())?;
            for x in 0..=k {
                ensure(coend_collapse(&f, x).map_err(|e| e.to_string())?.is_iso, || format!("{spec}: Yoneda F_{o} at {x}"))?;
            }
            ensure(box_unit_check(&base, &f).map_err(|e| e.to_string())?, || format!("{spec}: box unit on F_{o}"))?;
        }
        let mut checked = 0;
        let skip = |r: ratmodel::Result<bool>| -> Result<Option<bool>, String> {
            match r {
                Ok(v) => Ok(Some(v)),
                Err(Error::Truncation { .. }) => Ok(None),
                Err(e) => Err(e.to_string()),
            }
        };
        for a in 0..=k {
            for b in 0..=k {
                let fa = free_module(&cat, a).map_err(|e| e.to_string())?;
                let fb = free_module(&cat, b).map_err(|e| e.to_string())?;
                if let Some(v) = skip(box_symmetry_check(&base, &fa, &fb))? {
                    ensure(v, || format!("{spec}: symmetry F_{a}, F_{b}"))?;
                    checked += 1;
                }
                if a + b <= k {
                    ensure(box_free_check(&base, a, b).map_err(|e| e.to_string())?, || format!("{spec}: F_{a} □ F_{b}"))?;
                }
                for c in 0..=k {
                    if a + b + c > k {
                        continue;
                    }
                    if let Some(v) = skip(box_associativity_check(&base, a, b, c))? {
                        ensure(v, || format!("{spec}: associativity {a} {b} {c}"))?;
                        checked += 1;
                    }
                }
            }
        }
        ensure(checked > 0, || format!("{spec}: nothing inside the truncation"))?;
    }
    within(start, Duration::from_secs(30), "Morita and box checks")
}

fn skew() -> Verdict {
    for n in 1..=6 {
        let r = dihedral_iso_check(n).map_err(|e| e.to_string())?;
        ensure(r.verified && r.dim == 2 * n, || format!("dihedral n = {n}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e);
    let ms = (0..20)
        .map(|_| random_twisted_qc3(&mut rng))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    for (t, m) in ms.iter().enumerate() {
        let s = twist_to_skew(m).map_err(|e| e.to_string())?;
        let back = skew_to_twist(&s, m.involution()).map_err(|e| e.to_string())?;
        ensure(back.action() == m.action() && back.twist() == m.twist(), || format!("sample {t}: roundtrip"))?;
        let n = &ms[(t + 1) % ms.len()];
        let sn = twist_to_skew(n).map_err(|e| e.to_string())?;
        let (a, b) = (twisted_hom_dim(m, n), skew_hom_dim(&s, &sn));
        ensure(a == b, || format!("sample {t}: hom dims {a} vs {b}"))?;
    }
    Ok(())
}

fn cli(args: &[&str], threads: Option<usize>) -> (Vec<u8>, Option<i32>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ratmodel"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.arg("--threads").arg(t.to_string());
    }
    let out = cmd.output().expect("run the CLI");
    (out.stdout, out.status.code())
}

fn determinism(dir: &Path) -> Verdict {
    let c2 = grp("C2");
    let s3 = grp("S3");
    let complex = dir.join("complex.json");
    let regular = dir.join("regular.json");
    let category = dir.join("category.json");
    let mut rng = ChaCha8Rng::seed_from_u64(0x10);
    let x = random_qc2_complex(&c2, 4, &mut rng).map_err(|e| e.to_string())?;
    std::fs::write(&complex, complex_to_string(&x)).map_err(|e| e.to_string())?;
    std::fs::write(&regular, complex_to_string(&DGModule::regular(s3))).map_err(|e| e.to_string())?;
    let cat = random_extension(&c2, 1, false, &mut rng).map_err(|e| e.to_string())?;
    std::fs::write(&category, category_to_string(&cat)).map_err(|e| e.to_string())?;
    let (complex, regular, category) = (
        complex.to_str().unwrap().to_string(),
        regular.to_str().unwrap().to_string(),
        category.to_str().unwrap().to_string(),
    );
    let runs: Vec<Vec<&str>> = vec![
        vec!["marks", "S4"],
        vec!["idempotents", "S4"],
        vec!["split", "D8"],
        vec!["weyl", "S4", "--subgroup", "(0 1)(2 3)"],
        vec!["powers", "S3", "--subgroup", "(0 1)", "--i", "3"],
        vec!["restrict", "S4", "--subgroup", "(0 1);(0 1 2)", "--element", "[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]"],
        vec!["homology", &complex],
        vec!["ea", "S3", "--max-power", "2"],
        vec!["formality", &category],
        vec!["morita-check", &regular, "--weyl", "S3"],
        vec!["box-check", "C2", "--max-power", "2"],
        vec!["skew-dihedral", "--n", "5"],
    ];
    for args in &runs {
        for json in [false, true] {
            let mut a = args.clone();
            if json {
                a.push("--json");
            }
            let first = cli(&a, None);
            ensure(matches!(first.1, Some(0) | Some(1)), || format!("{a:?} exited with {:?}", first.1))?;
            ensure(!first.0.is_empty(), || format!("{a:?} printed nothing"))?;
            for (run, threads) in [(1, None), (2, Some(1)), (3, Some(4))] {
                let again = cli(&a, threads);
                ensure(again == first, || format!("{a:?}: run {run} (threads {threads:?}) differs"))?;
            }
        }
    }
    Ok(())
}

fn main() {
    let dir = std::env::temp_dir().join(format!("ratmodel-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict>)> = vec![
        ("idempotent splitting", Box::new(idempotent_splitting)),
        ("table of marks oracle", Box::new(marks_oracle)),
        ("coset powers", Box::new(coset_powers)),
        ("restriction support", Box::new(restriction_support)),
        ("ringoid dimensions", Box::new(ringoid_dimensions)),
        ("formality zig-zag", Box::new(formality)),
        ("dg invariants", Box::new(dg_invariants)),
        ("Morita roundtrip", Box::new(morita)),
        ("skew and dihedral", Box::new(skew)),
        ("determinism", Box::new(|| determinism(&dir))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("criterion {}: PASS  {name} ({:.2?})", i + 1, start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
