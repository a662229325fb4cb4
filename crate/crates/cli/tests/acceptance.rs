//! Acceptance suite: one line per criterion, exact arithmetic throughout.
//! Runs without the test harness so the lines always appear.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::oracles::{
    bch_in, canon_of, flow, generate_and_filter, linear_extensions, random_element, random_mc,
};
use common::{dga_fixtures, dgla_fixtures};
use mcgauge::gauge::{
    commutator_dgla, gauge_dga, gauge_trees_a, linear_nc, ls_interval, verify_ls, NcAlgebra,
};
use mcgauge::trees::{enumerate_trees, tree_word_l};
use mcgauge::{
    cylinder_gauge, gauge_closed, gauge_trees_l, gauge_via_exp, sullivan_witness, AlgebraSpec,
    GradedElement, Rational,
};
use mcgauge_cli::format::parse_spec;
use mcgauge_cli::{run, run_with_methods, Method};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type El = GradedElement<Rational>;
type Instance = (AlgebraSpec<Rational>, El, El);

fn fixtures_dir() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures"]
        .iter()
        .collect()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

/// Runs one criterion, printing its verdict; panics count as failures.
fn criterion(
    n: u32,
    name: &str,
    budget: Duration,
    body: impl FnOnce() -> Result<String, String>,
) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into()))
    });
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|d| {
        if elapsed <= budget {
            Ok(d)
        } else {
            Err(format!("{d}; took {elapsed:.2?}, budget {budget:?}"))
        }
    });
    match &outcome {
        Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail} [{elapsed:.2?}]"),
        Err(detail) => println!("criterion {n:>2} FAIL  {name}: {detail} [{elapsed:.2?}]"),
    }
    outcome.is_ok()
}

fn dgla_instances() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut out = Vec::new();
    for s in dgla_fixtures() {
        for _ in 0..4 {
            let x = random_element(&s, 0, &mut rng);
            let xi = random_mc(&s, &mut rng);
            out.push((s.clone(), x, xi));
        }
    }
    out
}

fn dga_instances() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(2025);
    let mut out = Vec::new();
    for s in dga_fixtures() {
        for _ in 0..5 {
            let x = random_element(&s, 0, &mut rng);
            let xi = random_mc(&s, &mut rng);
            out.push((s.clone(), x, xi));
        }
    }
    out
}

fn dga_route(spec: &AlgebraSpec<Rational>, x: &El, xi: &El) -> El {
    let alg = NcAlgebra::for_spec(spec);
    let a = alg.exp_assoc(&linear_nc(&alg, x).unwrap()).unwrap();
    gauge_dga(spec, &a, xi).unwrap()
}

fn c1() -> Result<String, String> {
    let inst = dgla_instances();
    for (s, x, xi) in &inst {
        ensure(s.generators().len() <= 6 && s.weight_cap() <= 5, || {
            format!("{} too large", s.name())
        })?;
        let closed = gauge_closed(s, x, xi).map_err(|e| e.to_string())?;
        let routes = [
            ("trees", gauge_trees_l(s, x, xi)),
            ("exp", gauge_via_exp(s, x, xi)),
            ("cylinder", cylinder_gauge(s, x, xi)),
        ];
        for (name, r) in routes {
            let r = r.map_err(|e| e.to_string())?;
            ensure(r == closed, || {
                format!(
                    "{name} ≠ closed on {}: {} vs {}",
                    s.name(),
                    r.display(s),
                    closed.display(s)
                )
            })?;
        }
        ensure(flow(s, x, xi) == closed, || {
            format!("flow oracle ≠ closed on {}", s.name())
        })?;
    }
    Ok(format!(
        "{} instances, closed = trees = exp = cylinder = flow oracle",
        inst.len()
    ))
}

fn c2() -> Result<String, String> {
    let inst = dga_instances();
    for (s, x, xi) in &inst {
        ensure(s.generators().len() <= 5 && s.weight_cap() <= 4, || {
            format!("{} too large", s.name())
        })?;
        let lie = commutator_dgla(s).map_err(|e| e.to_string())?;
        let trees = gauge_trees_a(s, x, xi).map_err(|e| e.to_string())?;
        let dga = dga_route(s, x, xi);
        let closed = gauge_closed(&lie, x, xi).map_err(|e| e.to_string())?;
        ensure(trees == dga && dga == closed, || {
            format!(
                "{}: trees {} dga {} commutator {}",
                s.name(),
                trees.display(s),
                dga.display(s),
                closed.display(s)
            )
        })?;
    }
    Ok(format!(
        "{} instances, planar trees = dga formula = commutator dgla",
        inst.len()
    ))
}

fn c3() -> Result<String, String> {
    let mut checks = 0;
    for (s, x, xi) in dgla_instances() {
        for r in [
            gauge_closed(&s, &x, &xi),
            gauge_trees_l(&s, &x, &xi),
            gauge_via_exp(&s, &x, &xi),
            cylinder_gauge(&s, &x, &xi),
        ] {
            let r = r.map_err(|e| e.to_string())?;
            ensure(s.is_mc(&r).unwrap(), || {
                format!("result not MC on {}", s.name())
            })?;
            checks += 1;
        }
    }
    for (s, x, xi) in dga_instances() {
        let lie = commutator_dgla(&s).unwrap();
        for r in [
            gauge_trees_a(&s, &x, &xi).map_err(|e| e.to_string())?,
            dga_route(&s, &x, &xi),
            gauge_closed(&lie, &x, &xi).map_err(|e| e.to_string())?,
            gauge_via_exp(&s, &x, &xi).map_err(|e| e.to_string())?,
            cylinder_gauge(&s, &x, &xi).map_err(|e| e.to_string())?,
        ] {
            ensure(s.is_mc(&r).unwrap(), || {
                format!("result not MC on {}", s.name())
            })?;
            checks += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut laws = 0;
    for s in dgla_fixtures().into_iter().filter(|s| s.weight_cap() <= 4) {
        for _ in 0..3 {
            let x = random_element(&s, 0, &mut rng);
            let y = random_element(&s, 0, &mut rng);
            let xi = random_mc(&s, &mut rng);
            let lhs = gauge_closed(&s, &x, &gauge_closed(&s, &y, &xi).unwrap()).unwrap();
            let rhs = gauge_closed(&s, &bch_in(&s, &x, &y), &xi).unwrap();
            ensure(lhs == rhs, || format!("group law fails on {}", s.name()))?;
            laws += 1;
        }
    }
    ensure(laws >= 10, || format!("only {laws} group-law instances"))?;
    Ok(format!(
        "{checks} results MC, group law on {laws} instances"
    ))
}

fn c4() -> Result<String, String> {
    let mut lines = Vec::new();
    for w in 1..=6 {
        let r = verify_ls::<Rational>(w).map_err(|e| e.to_string())?;
        for (label, outcome) in r.checks() {
            if let Err(e) = outcome {
                return Err(format!("W={w} {label}: {e}"));
            }
        }
        lines.push(w.to_string());
    }
    Ok(format!(
        "MC(a), MC(b), a = e^z·b, d² = 0 for W = {}",
        lines.join(",")
    ))
}

fn c5() -> Result<String, String> {
    let alg = NcAlgebra::with_symbols(&["x", "y"], 4);
    let x = alg.symbol::<Rational>("x").unwrap();
    let y = alg.symbol::<Rational>("y").unwrap();
    let dec = alg.lie_decomposition(&alg.bch(&x, &y).unwrap());
    ensure(dec.is_lie(), || "nonzero remainder".into())?;
    let want = "x + y + 1/2 [x,y] + 1/12 [x,[x,y]] - 1/12 [y,[x,y]] - 1/24 [x,[y,[x,y]]]";
    ensure(dec.display() == want, || format!("got {}", dec.display()))?;
    let alg3 = NcAlgebra::with_symbols(&["x", "y", "z"], 4);
    let names = ["x", "y", "z"];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let words: Vec<(Vec<String>, Rational)> = (0..4)
            .map(|_| {
                let len = rng.gen_range(1..=3);
                let w = (0..len)
                    .map(|_| names[rng.gen_range(0..3)].to_string())
                    .collect();
                (w, common::oracles::small_rational(&mut rng))
            })
            .collect();
        let p = alg3.from_named_words(words).unwrap();
        let back = alg3.log_assoc(&alg3.exp_assoc(&p).unwrap()).unwrap();
        ensure(back == p, || {
            format!("round trip fails on {}", alg3.display(&p))
        })?;
    }
    Ok(format!(
        "{want} (zero remainder); log∘exp = id on 20 inputs"
    ))
}

fn c6() -> Result<String, String> {
    // r depends only on the shape, so the brute force is memoised by shape
    let mut brute: std::collections::HashMap<String, u128> = Default::default();
    let mut count = 0;
    for t in enumerate_trees(7, 4).iter().flatten() {
        let shape = common::oracles::canon(&t.parents(), &vec![0; t.vertex_count()]);
        let b = *brute
            .entry(shape)
            .or_insert_with(|| linear_extensions(&t.parents()));
        ensure(t.monotone_count() == b, || {
            format!(
                "{}: hook {} vs brute {}",
                t.encoding(),
                t.monotone_count(),
                b
            )
        })?;
        count += 1;
    }
    for cap in 1..=4 {
        let trees = enumerate_trees(3, cap);
        for n in 1..=3 {
            let got: std::collections::BTreeSet<String> =
                trees[n - 1].iter().map(canon_of).collect();
            ensure(got.len() == trees[n - 1].len(), || {
                format!("duplicates at n={n}")
            })?;
            ensure(got == generate_and_filter(n, cap), || {
                format!("mismatch at n={n}, arity {cap}")
            })?;
        }
    }
    Ok(format!(
        "hook length = brute force on {count} trees ({} shapes); enumeration = generate-and-filter for n ≤ 3",
        brute.len()
    ))
}

fn c7() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut contributing = 0;
    for s in dgla_fixtures() {
        let trees = enumerate_trees(s.weight_cap() as usize, s.arity_cap());
        for _ in 0..3 {
            let x = random_element(&s, 0, &mut rng);
            let xi = random_mc(&s, &mut rng);
            for t in trees.iter().flatten() {
                if tree_word_l(&s, t, &x, &xi).unwrap().is_zero() {
                    continue;
                }
                contributing += 1;
                ensure(t.arities().iter().all(|&a| a == 1 || a == 2), || {
                    t.encoding()
                })?;
                ensure(t.monotone_count() == 1, || t.encoding())?;
                ensure(t.j_vector().iter().all(|&j| j <= 1), || t.encoding())?;
            }
        }
    }
    Ok(format!(
        "{contributing} contributing trees, all chains with arities in {{1,2}}, r = 1, j ≤ 1"
    ))
}

fn c8() -> Result<String, String> {
    let inst = dgla_instances();
    for (s, x, xi) in &inst {
        let w = sullivan_witness(s, x, xi).map_err(|e| e.to_string())?;
        ensure(w.defect.is_zero(), || {
            format!("nonzero defect on {}", s.name())
        })?;
        ensure(&w.start == xi, || format!("wrong start on {}", s.name()))?;
        ensure(w.end == gauge_closed(s, x, xi).unwrap(), || {
            format!("wrong end on {}", s.name())
        })?;
    }
    Ok(format!(
        "{} paths with zero defect and endpoints (ξ, e^x·ξ)",
        inst.len()
    ))
}

fn c9() -> Result<String, String> {
    let mut names: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "alg"))
        .collect();
    names.sort();
    let mut valid = 0;
    let mut witness = None;
    for p in &names {
        let doc = parse_spec(&std::fs::read_to_string(p).unwrap()).map_err(|e| e.to_string())?;
        let r = doc.spec.validate_structure();
        if doc.spec.name() == "corrupted" {
            let f = r.failures.first().ok_or("corrupted fixture accepted")?;
            witness = Some(format!("generator {} residue {}", f.generator, f.residue));
        } else {
            ensure(r.is_ok(), || format!("{} rejected", doc.spec.name()))?;
            valid += 1;
        }
    }
    for w in 1..=6 {
        let ls = ls_interval::<Rational>(w).map_err(|e| e.to_string())?;
        ensure(ls.spec.validate_structure().is_ok(), || {
            format!("interval W={w} rejected")
        })?;
    }
    let witness = witness.ok_or("corrupted fixture missing")?;
    Ok(format!(
        "{valid} fixtures and interval W ≤ 6 valid; corrupted rejected at {witness}"
    ))
}

fn call(args: &[&str], hook: Option<mcgauge_cli::MethodHook<'_>>) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<&str> = std::iter::once("mcgauge")
        .chain(args.iter().copied())
        .collect();
    let code = match hook {
        Some(h) => run_with_methods(argv, &mut out, &mut err, h),
        None => run(argv, &mut out, &mut err),
    };
    (code, out)
}

fn c10() -> Result<String, String> {
    let f1 = fixtures_dir().join("f1.alg");
    let f1 = f1.to_str().unwrap();
    let args = ["gauge-compare", f1, "--element", "u", "--by", "x"];
    let (code, first) = call(&args, None);
    ensure(code == 0, || format!("gauge-compare exit {code}"))?;
    let text = String::from_utf8(first.clone()).unwrap();
    ensure(
        text == "AGREE: closed = trees = exp = cylinder = u + v\n",
        || text.clone(),
    )?;
    for _ in 0..3 {
        ensure(call(&args, None) == (0, first.clone()), || {
            "output differs between runs".into()
        })?;
    }
    let corrupted = fixtures_dir().join("corrupted.alg");
    let (code, _) = call(
        &[
            "gauge-compare",
            corrupted.to_str().unwrap(),
            "--element",
            "v",
            "--by",
            "u",
        ],
        None,
    );
    ensure(code == 2, || format!("corrupted fixture exit {code}"))?;
    let garbled = std::env::temp_dir().join(format!("mcgauge-garbled-{}.alg", std::process::id()));
    std::fs::write(
        &garbled,
        "algebra G kind dgla weight-cap 2 arity-cap 2\nop 2 [x,u = v\n",
    )
    .unwrap();
    let (code, _) = call(&["validate", garbled.to_str().unwrap()], None);
    let _ = std::fs::remove_file(&garbled);
    ensure(code == 2, || format!("malformed file exit {code}"))?;
    let stub = |m: Method, _: &AlgebraSpec<Rational>, _: &El, xi: &El| {
        (m == Method::Trees).then(|| Ok(xi.clone()))
    };
    let (code, out) = call(&args, Some(&stub));
    ensure(code == 1, || format!("injected disagreement exit {code}"))?;
    ensure(
        String::from_utf8(out).unwrap().starts_with("DISAGREE:"),
        || "no verdict".into(),
    )?;
    Ok("agreement exit 0 and byte-identical; corrupted and malformed input exit 2; injected disagreement exit 1".into())
}

fn main() {
    let s = Duration::from_secs;
    let results = [
        criterion(1, "four-route dgla agreement", s(5), c1),
        criterion(2, "dga agreement", s(5), c2),
        criterion(3, "MC preservation and group law", s(5), c3),
        criterion(4, "interval verification", s(30), c4),
        criterion(5, "BCH oracle", s(2), c5),
        criterion(6, "tree combinatorics", s(10), c6),
        criterion(7, "dgla specialisation of the tree formula", s(5), c7),
        criterion(8, "Sullivan witness", s(5), c8),
        criterion(9, "structure validation", s(10), c9),
        criterion(10, "CLI contract", s(10), c10),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
