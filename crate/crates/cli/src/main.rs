use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use ratmodel::burnside::{labelled_tsv, BurnsideElement, BurnsideRing, TableOfMarks, DEFAULT_POWER_BOUND};
use ratmodel::dgmod::{fixed_points, homology};
use ratmodel::exactq::{format_rational, parse_rational, MatQ, Rational};
use ratmodel::json::{category_from_str, category_to_string, complex_from_json_over, complex_to_json, parse_group, ComplexJson};
use ratmodel::permgrp::{GroupRef, PermGroup, Subgroup};
use ratmodel::ringoid::{build_ea, formality_zigzag, is_ring_iso_to_group_algebra, materialize};
use ratmodel::ringoidmod::{
    box_associativity_check, box_free_check, box_symmetry_check, box_unit_check, coend_collapse, free_module,
    morita_roundtrip_check, morita_unit_check,
};
use ratmodel::skew::dihedral_iso_check;
use ratmodel::Error;

#[derive(Parser)]
#[command(name = "ratmodel", version, about = "Exact computations for rational equivariant algebraic models")]
struct Cli {
    /// Emit JSON instead of TSV text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for independent sub-computations (output does not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Table of marks.
    Marks { group: String },
    /// Primitive idempotents e_(H) in the basis of transitive G-sets.
    Idempotents { group: String },
    /// Splitting of the unit into orthogonal idempotents, with checks.
    Split { group: String },
    /// Normalizer and Weyl group of a subgroup.
    Weyl {
        group: String,
        #[arg(long)]
        subgroup: String,
    },
    /// Orbit decomposition of (G/H)^i.
    Powers {
        group: String,
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        i: usize,
    },
    /// Restriction of a Burnside ring element to a subgroup.
    Restrict {
        group: String,
        #[arg(long)]
        subgroup: String,
        /// JSON array of coefficients in the basis of transitive G-sets.
        #[arg(long)]
        element: String,
    },
    /// Homology of a complex given as JSON.
    Homology { complex: String },
    /// The category E_a of tensor powers of QW.
    Ea {
        weyl: String,
        #[arg(long)]
        max_power: usize,
        /// Also check associativity, units and the monoidal structure.
        #[arg(long)]
        verify: bool,
        /// Write the category as JSON to this path.
        #[arg(long)]
        dump: Option<String>,
    },
    /// Formality zig-zag of a dg category given as JSON.
    Formality { category: String },
    /// Morita adjunction checks for a complex of QW-modules.
    MoritaCheck {
        complex: String,
        #[arg(long)]
        weyl: String,
        #[arg(long, default_value_t = 1)]
        max_power: usize,
    },
    /// Unit, symmetry and associativity of the box product on free modules.
    BoxCheck {
        weyl: String,
        #[arg(long)]
        max_power: usize,
    },
    /// QC_n # C2 ≅ QD_2n.
    SkewDihedral {
        #[arg(long)]
        n: usize,
    },
}

/// Result of a verb: the text to print and whether every verified property held.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<Report, Failure>;

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn tsv_row(cells: &[String]) -> String {
    let mut s = cells.join("\t");
    s.push('\n');
    s
}

fn group(spec: &str) -> Result<GroupRef, Failure> {
    Ok(parse_group(spec)?)
}

fn subgroup(g: &PermGroup, spec: &str) -> Result<Subgroup, Failure> {
    Ok(g.subgroup_from_spec(spec)?)
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &str, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn with_path<T>(path: &str, r: ratmodel::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn marks(spec: &str) -> Outcome {
    let g = group(spec)?;
    let tom = TableOfMarks::new(g.clone());
    Ok(Report {
        text: tom.to_tsv(),
        json: json!({
            "group": g.label(),
            "classes": tom.class_labels(),
            "marks": tom.matrix().to_strings(),
        }),
        ok: true,
    })
}

fn idempotent_rows(ring: &BurnsideRing, es: &[BurnsideElement]) -> (String, Vec<Value>) {
    let labels = ring.table().class_labels();
    let mut m = MatQ::zeros(es.len(), ring.rank());
    for (r, e) in es.iter().enumerate() {
        for (c, x) in e.coefficients().iter().enumerate() {
            m.set(r, c, x.clone());
        }
    }
    let rows: Vec<String> = labels.iter().map(|l| format!("e_{l}")).collect();
    let js = es
        .iter()
        .zip(&labels)
        .map(|(e, l)| json!({"class": l, "coefficients": rationals(e.coefficients())}))
        .collect();
    (labelled_tsv(&rows, &labels, &m), js)
}

fn idempotents(spec: &str) -> Outcome {
    let g = group(spec)?;
    let ring = BurnsideRing::new(g.clone());
    let (text, js) = idempotent_rows(&ring, &ring.idempotent_basis());
    Ok(Report {
        text,
        json: json!({"group": g.label(), "classes": ring.table().class_labels(), "idempotents": js}),
        ok: true,
    })
}

fn split(spec: &str) -> Outcome {
    let g = group(spec)?;
    let ring = BurnsideRing::new(g.clone());
    let report = ring.split_unit_report();
    let (mut text, js) = idempotent_rows(&ring, &report.idempotents);
    text.push_str("check\tstatus\n");
    for c in &report.checks {
        text.push_str(&tsv_row(&[c.name.clone(), status(c.pass).into()]));
    }
    let ok = report.all_pass();
    Ok(Report {
        text,
        json: json!({
            "group": g.label(),
            "idempotents": js,
            "checks": report.checks.iter().map(|c| json!({"name": c.name, "status": status(c.pass)})).collect::<Vec<_>>(),
            "status": status(ok),
        }),
        ok,
    })
}

fn weyl(spec: &str, sub: &str) -> Outcome {
    let g = group(spec)?;
    let h = subgroup(&g, sub)?;
    let n = g.normalizer(&h);
    let w = g.weyl_group(&h);
    let rows = [
        ("subgroup", g.subgroup_label(&h)),
        ("subgroup_order", h.order().to_string()),
        ("normalizer", g.subgroup_label(&n)),
        ("normalizer_order", n.order().to_string()),
        ("weyl_order", w.order().to_string()),
        ("weyl_abelian", w.is_abelian().to_string()),
    ];
    let text = rows.iter().map(|(k, v)| tsv_row(&[k.to_string(), v.clone()])).collect();
    let json = Value::Object(rows.iter().map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect());
    Ok(Report { text, json, ok: true })
}

fn powers(spec: &str, sub: &str, i: usize) -> Outcome {
    let g = group(spec)?;
    let h = subgroup(&g, sub)?;
    let ring = BurnsideRing::new(g.clone());
    let parts = ring.power_decomposition(&h, i, DEFAULT_POWER_BOUND)?;
    let classes = g.conjugacy_classes_of_subgroups();
    let mut text = String::from("class\tmultiplicity\n");
    let mut js = Vec::new();
    for (c, m) in &parts {
        let label = g.subgroup_label(&classes[*c].representative);
        text.push_str(&tsv_row(&[label.clone(), m.to_string()]));
        js.push(json!({"class": label, "multiplicity": m}));
    }
    Ok(Report {
        text,
        json: json!({"group": g.label(), "subgroup": g.subgroup_label(&h), "power": i, "orbits": js}),
        ok: true,
    })
}

fn parse_element(text: &str) -> Result<Vec<Rational>, Failure> {
    let v: Value = parse_json("--element", text)?;
    let items = match &v {
        Value::Array(a) => a.clone(),
        Value::Object(o) => match o.get("coefficients") {
            Some(Value::Array(a)) => a.clone(),
            _ => return Err(Failure::Input("--element: expected an array of coefficients".into())),
        },
        _ => return Err(Failure::Input("--element: expected an array of coefficients".into())),
    };
    items
        .iter()
        .map(|x| match x {
            Value::String(s) => Ok(parse_rational(s)?),
            Value::Number(n) => Ok(parse_rational(&n.to_string())?),
            _ => Err(Failure::Input(format!("--element: bad coefficient {x}"))),
        })
        .collect()
}

fn restrict(spec: &str, sub: &str, element: &str) -> Outcome {
    let g = group(spec)?;
    let h = subgroup(&g, sub)?;
    let ring = BurnsideRing::new(g.clone());
    let x = BurnsideElement::new(g.clone(), parse_element(element)?)?;
    let res = ring.restriction(&h);
    let y = ring.restrict(&x, &res)?;
    let labels = res.ring.table().class_labels();
    let support = res.ring.support(&y)?;
    let mut text = String::from("class\tcoefficient\n");
    for (l, c) in labels.iter().zip(y.coefficients()) {
        text.push_str(&tsv_row(&[l.clone(), format_rational(c)]));
    }
    let support_labels: Vec<String> = support.iter().map(|&k| labels[k].clone()).collect();
    text.push_str(&tsv_row(&["support".into(), support_labels.join(" ")]));
    Ok(Report {
        text,
        json: json!({
            "subgroup": g.subgroup_label(&h),
            "classes": labels,
            "coefficients": rationals(y.coefficients()),
            "support": support_labels,
        }),
        ok: true,
    })
}

fn read_complex(path: &str, expect: Option<&GroupRef>) -> Result<ratmodel::dgmod::DGModule, Failure> {
    let text = read_file(path)?;
    let j: ComplexJson = parse_json(path, &text)?;
    let declared = with_path(path, parse_group(&j.group))?;
    let g = match expect {
        Some(w) if **w != *declared => {
            return Err(Failure::Input(format!("{path}: complex is over {} but the Weyl group is {}", j.group, w.label())))
        }
        Some(w) => w.clone(),
        None => declared,
    };
    with_path(path, complex_from_json_over(&j, g))
}

fn homology_verb(path: &str) -> Outcome {
    let m = read_complex(path, None)?;
    let h = homology(&m);
    let fixed = fixed_points(&h.rep.to_module()).module;
    let mut text = String::from("degree\tdim\tinvariant_dim\n");
    let mut dims = Vec::new();
    for (n, d) in h.rep.graded_dims() {
        let f = fixed.dim(n);
        text.push_str(&tsv_row(&[n.to_string(), d.to_string(), f.to_string()]));
        dims.push(json!({"degree": n, "dim": d, "invariant_dim": f}));
    }
    Ok(Report {
        text,
        json: json!({"degrees": dims, "homology": serde_json::to_value(complex_to_json(&h.rep.to_module())).expect("json")}),
        ok: true,
    })
}

fn ea(spec: &str, k: usize, verify: bool, dump: Option<&str>) -> Outcome {
    let w = group(spec)?;
    let base = build_ea(w.clone(), k)?;
    let c = base.category();
    let n = c.object_count();
    let mut dims = MatQ::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            dims.set(a, b, Rational::from_integer((c.hom_dim(a, b) as i64).into()));
        }
    }
    let names = c.objects().to_vec();
    let mut text = labelled_tsv(&names, &names, &dims).replacen("class", "hom", 1);
    let mut checks = Vec::new();
    if k >= 1 {
        let iso = base.inverse_assignment().map(|m| is_ring_iso_to_group_algebra(&base, &m))?;
        checks.push(("ring_iso_inverse", iso));
    }
    if verify {
        checks.push(("composition", c.validate().is_ok()));
        checks.push(("monoidal", base.check_monoidal().is_ok()));
    }
    text.push_str("check\tstatus\n");
    for (name, ok) in &checks {
        text.push_str(&tsv_row(&[name.to_string(), status(*ok).into()]));
    }
    if let Some(path) = dump {
        std::fs::write(path, category_to_string(&materialize(c)) + "\n")
            .map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    }
    let ok = checks.iter().all(|(_, x)| *x);
    Ok(Report {
        text,
        json: json!({
            "weyl": w.label(),
            "objects": names,
            "hom_dims": (0..n).map(|a| (0..n).map(|b| c.hom_dim(a, b)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "checks": checks.iter().map(|(k, v)| json!({"name": k, "status": status(*v)})).collect::<Vec<_>>(),
        }),
        ok,
    })
}

fn formality(path: &str) -> Outcome {
    let text = read_file(path)?;
    let c = with_path(path, category_from_str(&text))?;
    let z = formality_zigzag(&c)?;
    let mut out = tsv_row(&["verdict".into(), if z.verdict { "formal" } else { "not formal" }.into()]);
    let mut offending = Value::Null;
    if let Some((a, b, leg)) = z.offending {
        let leg_name = if leg == 0 { "cover_to_original" } else { "cover_to_h0" };
        out.push_str(&tsv_row(&["offending".into(), c.objects()[a].clone(), c.objects()[b].clone(), leg_name.into()]));
        offending = json!({"source": c.objects()[a], "target": c.objects()[b], "leg": leg_name});
    }
    Ok(Report {
        text: out,
        json: json!({"formal": z.verdict, "offending": offending}),
        ok: z.verdict,
    })
}

fn morita_check(path: &str, spec: &str, k: usize) -> Outcome {
    let w = group(spec)?;
    let x = read_complex(path, Some(&w))?;
    let base = build_ea(w.clone(), k)?;
    let report = morita_roundtrip_check(&base, &x)?;
    let objects: Vec<usize> = (0..=k).collect();
    let units = objects
        .par_iter()
        .map(|&o| morita_unit_check(&base, o))
        .collect::<ratmodel::Result<Vec<_>>>()?;
    let cat = base.shared_category();
    let yoneda = objects
        .par_iter()
        .map(|&o| -> ratmodel::Result<bool> {
            let f = free_module(&cat, o)?;
            for x in 0..=k {
                if !coend_collapse(&f, x)?.is_iso {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect::<ratmodel::Result<Vec<_>>>()?;
    let mut checks = vec![
        ("counit_well_defined".to_string(), report.well_defined),
        ("counit_equivariant".to_string(), report.equivariant),
        ("counit_iso".to_string(), report.is_iso),
    ];
    for (o, ok) in units.iter().enumerate() {
        checks.push((format!("unit_iso_free_{}", cat.objects()[o]), *ok));
    }
    for (o, ok) in yoneda.iter().enumerate() {
        checks.push((format!("coend_collapse_free_{}", cat.objects()[o]), *ok));
    }
    let ok = checks.iter().all(|(_, v)| *v);
    let mut text = String::from("check\tstatus\n");
    for (name, v) in &checks {
        text.push_str(&tsv_row(&[name.clone(), status(*v).into()]));
    }
    Ok(Report {
        text,
        json: json!({
            "weyl": w.label(),
            "max_power": k,
            "checks": checks.iter().map(|(k, v)| json!({"name": k, "status": status(*v)})).collect::<Vec<_>>(),
            "status": status(ok),
        }),
        ok,
    })
}

enum BoxTask {
    Unit(usize),
    Free(usize, usize),
    Symmetry(usize, usize),
    Assoc(usize, usize, usize),
}

fn box_check(spec: &str, k: usize) -> Outcome {
    let w = group(spec)?;
    let base = build_ea(w.clone(), k)?;
    let cat = base.shared_category();
    let mut tasks = Vec::new();
    for a in 0..=k {
        tasks.push(BoxTask::Unit(a));
    }
    for a in 0..=k {
        for b in a..=k {
            if a + b <= k {
                tasks.push(BoxTask::Free(a, b));
            }
            tasks.push(BoxTask::Symmetry(a, b));
        }
    }
    for a in 0..=k {
        for b in 0..=k {
            for c in 0..=k {
                if a + b + c <= k {
                    tasks.push(BoxTask::Assoc(a, b, c));
                }
            }
        }
    }
    let names = cat.objects();
    let results = tasks
        .par_iter()
        .map(|t| -> ratmodel::Result<(String, Option<bool>)> {
            let (name, r) = match *t {
                BoxTask::Unit(a) => (format!("unit {}", names[a]), box_unit_check(&base, &free_module(&cat, a)?)),
                BoxTask::Free(a, b) => (format!("free {} {}", names[a], names[b]), box_free_check(&base, a, b)),
                BoxTask::Symmetry(a, b) => (
                    format!("symmetry {} {}", names[a], names[b]),
                    box_symmetry_check(&base, &free_module(&cat, a)?, &free_module(&cat, b)?),
                ),
                BoxTask::Assoc(a, b, c) => (
                    format!("associativity {} {} {}", names[a], names[b], names[c]),
                    box_associativity_check(&base, a, b, c),
                ),
            };
            match r {
                Ok(v) => Ok((name, Some(v))),
                Err(Error::Truncation { .. }) => Ok((name, None)),
                Err(e) => Err(e),
            }
        })
        .collect::<ratmodel::Result<Vec<_>>>()?;
    let label = |r: &Option<bool>| match r {
        Some(v) => status(*v),
        None => "skipped (truncation)",
    };
    let mut text = String::from("check\tstatus\n");
    for (name, r) in &results {
        text.push_str(&tsv_row(&[name.clone(), label(r).into()]));
    }
    let ok = results.iter().all(|(_, r)| r.unwrap_or(true));
    Ok(Report {
        text,
        json: json!({
            "weyl": w.label(),
            "max_power": k,
            "checks": results.iter().map(|(n, r)| json!({"name": n, "status": label(r)})).collect::<Vec<_>>(),
            "status": status(ok),
        }),
        ok,
    })
}

fn skew_dihedral(n: usize) -> Outcome {
    let r = dihedral_iso_check(n)?;
    let verdict = if r.verified {
        format!("iso verified, dim {}", r.dim)
    } else {
        format!("iso failed, dim {}", r.dim)
    };
    let mut text = verdict.clone() + "\n";
    text.push_str(&labelled_tsv(&r.target_labels, &r.source_labels, &r.iso).replacen("class", "element", 1));
    Ok(Report {
        text,
        json: json!({"verdict": verdict, "report": serde_json::to_value(&r).expect("json")}),
        ok: r.verified,
    })
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Marks { group } => marks(group),
        Command::Idempotents { group } => idempotents(group),
        Command::Split { group } => split(group),
        Command::Weyl { group, subgroup } => weyl(group, subgroup),
        Command::Powers { group, subgroup, i } => powers(group, subgroup, *i),
        Command::Restrict { group, subgroup, element } => restrict(group, subgroup, element),
        Command::Homology { complex } => homology_verb(complex),
        Command::Ea {
            weyl,
            max_power,
            verify,
            dump,
        } => ea(weyl, *max_power, *verify, dump.as_deref()),
        Command::Formality { category } => formality(category),
        Command::MoritaCheck { complex, weyl, max_power } => morita_check(complex, weyl, *max_power),
        Command::BoxCheck { weyl, max_power } => box_check(weyl, *max_power),
        Command::SkewDihedral { n } => skew_dihedral(*n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("json"));
            } else {
                print!("{}", r.text);
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
