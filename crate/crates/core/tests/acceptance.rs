//! Acceptance criteria, one PASS/FAIL line each, with pinned time limits.
//!
//! Criterion 11 takes about an hour on one core; it runs only when
//! BENTKIT_EXTENDED=1 (the census resumes from BENTKIT_CHECKPOINT_DIR if set).
//! Criteria listed in KNOWN_UNATTAINABLE print FAIL but do not fail the run.

use bentkit::affine::EaTransform;
use bentkit::classify::{direct_sum_witness, verify_example_witness};
use bentkit::constructions::{
    catalog_layer, is_permutation, isomorphic_inequivalent_pair_10, isomorphic_inequivalent_pair_6,
    CATALOG,
};
use bentkit::designs::{
    addition_design, addition_design_concat, addition_design_via_dual, addition_parameters,
    dev_graph, dev_support, validate_parameters, DesignParameters,
};
use bentkit::invariants::canon::canonical_form_with_budget;
use bentkit::invariants::{
    are_isomorphic, ea_class_hash, ea_equivalent, gf2_rank, smith_normal_form, DEFAULT_NODE_BUDGET,
};
use bentkit::suites::{counts_n6, direct_sum_checks, run_suite, Check, SuiteOptions};
use bentkit::walsh::is_bent;
use bentkit::{Anf, Result, VectorialFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

/// Criteria that cannot pass as stated; each reason is printed with the FAIL line.
const KNOWN_UNATTAINABLE: &[(u32, &str)] = &[
    (
        3,
        "the published SNF of C3_9 and C3_13 coincide, so a fourth group exists whenever criterion 2 holds",
    ),
    (
        11,
        "the printed |AB(6,1)| = 48,386,176 contradicts the printed |B(6,1)| = 5,425,430,528 = 42,386,176 * 2^7",
    ),
];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(checks: &[Check]) -> Outcome {
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} ({})", c.name, c.detail))
        .collect();
    Outcome {
        passed: !checks.is_empty() && failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks", checks.len())
        } else {
            format!("failed: {}", failed.join("; "))
        },
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn c1_bentness() -> Result<Outcome> {
    let bad: Vec<String> = CATALOG
        .iter()
        .filter(|e| {
            let f = e.function();
            !(is_bent(&f) && f.degree() <= 3)
        })
        .map(|e| e.id())
        .collect();
    Ok(Outcome {
        passed: bad.is_empty(),
        detail: format!("{}/26 bent with degree <= 3 {bad:?}", 26 - bad.len()),
    })
}

fn c2_snf() -> Result<Outcome> {
    let checks: Vec<Check> = CATALOG
        .iter()
        .map(|e| {
            let snf = smith_normal_form(dev_graph(&e.function()).matrix());
            check(&e.id(), snf == e.expected_snf(), snf.to_string())
        })
        .collect();
    Ok(outcome(&checks))
}

fn c3_collisions() -> Result<Outcome> {
    let mut found: Vec<Vec<String>> = Vec::new();
    for m in 1..=3 {
        let mut by_snf: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for e in catalog_layer(m) {
            let snf = smith_normal_form(dev_graph(&e.function()).matrix());
            by_snf.entry(snf.to_string()).or_default().push(e.id());
        }
        found.extend(by_snf.into_values().filter(|g| g.len() > 1));
    }
    let sorted = |groups: Vec<Vec<String>>| {
        let mut out: Vec<Vec<String>> = groups
            .into_iter()
            .map(|mut g| {
                g.sort();
                g
            })
            .collect();
        out.sort();
        out
    };
    let found = sorted(found);
    let expected = sorted(
        [
            vec!["C1_1", "C1_2"],
            vec!["C2_8", "C2_9"],
            vec!["C3_8", "C3_10", "C3_11"],
        ]
        .iter()
        .map(|g| g.iter().map(|s| s.to_string()).collect())
        .collect(),
    );
    Ok(Outcome {
        passed: found == expected,
        detail: format!("collision groups {found:?}"),
    })
}

fn c4_ranks() -> Result<Outcome> {
    let q6 = Anf::parse(6, "x1*x2 + x3*x4 + x5*x6")?.to_table();
    let q10 = Anf::parse(10, "x1*x2 + x3*x4 + x5*x6 + x7*x8 + x9*x10")?.to_table();
    let w = isomorphic_inequivalent_pair_10();
    let r = [
        gf2_rank(dev_support(&q6).matrix()),
        gf2_rank(dev_support(&q10).matrix()),
        gf2_rank(dev_support(&w.f).matrix()),
        gf2_rank(dev_support(&w.f_prime).matrix()),
    ];
    Ok(Outcome {
        passed: r == [8, 12, 32, 32],
        detail: format!(
            "quadratic n=6: {}, quadratic n=10: {}, example pair: {} / {}",
            r[0], r[1], r[2], r[3]
        ),
    })
}

fn c5_example1() -> Result<Outcome> {
    let (f, g) = isomorphic_inequivalent_pair_6();
    let (vf, vg) = (
        VectorialFunction::from_boolean(f.clone()),
        VectorialFunction::from_boolean(g.clone()),
    );
    let (sf, sg) = (dev_support(&f), dev_support(&g));
    let ws = are_isomorphic(&sf, &sg, DEFAULT_NODE_BUDGET)?;
    let (gf, gg) = (dev_graph(&vf), dev_graph(&vg));
    let wg = are_isomorphic(&gf, &gg, DEFAULT_NODE_BUDGET)?;
    let eq = ea_equivalent(&vf, &vg, DEFAULT_NODE_BUDGET)?;
    Ok(outcome(&[
        check(
            "support designs",
            ws.is_some_and(|w| w.verify(&sf, &sg)),
            "",
        ),
        check("graph designs", wg.is_some_and(|w| w.verify(&gf, &gg)), ""),
        check("EA-inequivalent", !eq, format!("ea_equivalent = {eq}")),
    ]))
}

fn c6_example2() -> Result<Outcome> {
    let w = isomorphic_inequivalent_pair_10();
    let perms = is_permutation(&w.pi.values()) && is_permutation(&w.sigma.values());
    let identity = verify_example_witness(&w.f, &w.f_prime, &w.pi, &w.sigma);
    Ok(outcome(&[
        check("pi, sigma permutations", perms, ""),
        check("identity on 2^20 pairs", identity, ""),
    ]))
}

fn c7_direct_sums() -> Result<Outcome> {
    let mut checks = Vec::new();
    for n in [6, 8, 10] {
        checks.extend(direct_sum_checks(n, DEFAULT_NODE_BUDGET)?);
        // Witness sizes: the graph designs have 2^(n+1) points.
        let w = direct_sum_witness(n, DEFAULT_NODE_BUDGET)?;
        checks.push(check(
            &format!("n = {n} witness size"),
            w.graph.point_map.len() == 2 << n,
            format!("{} points", w.graph.point_map.len()),
        ));
    }
    Ok(outcome(&checks))
}

fn c8_n4() -> Result<Outcome> {
    Ok(outcome(
        &run_suite("n4-oracle", SuiteOptions::default())?.checks,
    ))
}

fn c9_addition_designs() -> Result<Outcome> {
    let mut checks = Vec::new();
    for e in CATALOG {
        let f = e.function();
        let a = addition_design(&f)?;
        let ms = a.block_multiset();
        let concat = addition_design_concat(&f)?.block_multiset() == ms;
        // The dual formula applies to every component; the design of F is their union.
        let mut dual_blocks: Vec<Vec<u64>> = Vec::new();
        for c in f.components() {
            dual_blocks.extend(addition_design_via_dual(&c)?.block_multiset());
        }
        dual_blocks.sort();
        let dual = dual_blocks == ms;
        let params = addition_parameters(6, e.m);
        let lambda_ok = matches!(params, DesignParameters::TwoDesign { v: 64, k: 28, lambda }
            if lambda == ((1 << e.m) - 1) * 12);
        let valid = validate_parameters(&a, params).passed;
        checks.push(check(
            &e.id(),
            concat && dual && lambda_ok && valid,
            format!("concat {concat}, dual {dual}, {params} valid {valid}"),
        ));
    }
    Ok(outcome(&checks))
}

fn c10_ea_engine() -> Result<Outcome> {
    let mut checks = Vec::new();
    let mut hashes: BTreeMap<usize, Vec<(String, String)>> = BTreeMap::new();
    for e in CATALOG {
        hashes
            .entry(e.m)
            .or_default()
            .push((e.id(), ea_class_hash(&e.function(), DEFAULT_NODE_BUDGET)?));
    }
    for (m, list) in &hashes {
        let mut distinct: Vec<&String> = list.iter().map(|(_, h)| h).collect();
        distinct.sort();
        distinct.dedup();
        checks.push(check(
            &format!("layer {m} pairwise inequivalent"),
            distinct.len() == list.len(),
            format!("{} classes, {} canonical forms", list.len(), distinct.len()),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut recognized = 0;
    for t in 0..100 {
        let e = &CATALOG[t % CATALOG.len()];
        let f = e.function();
        let g = EaTransform::random(6, e.m, &mut rng).apply(&f)?;
        if ea_equivalent(&f, &g, DEFAULT_NODE_BUDGET)? {
            recognized += 1;
        }
    }
    checks.push(check(
        "random EA transforms recognized",
        recognized == 100,
        format!("{recognized}/100"),
    ));
    Ok(outcome(&checks))
}

fn c11_counts() -> Result<Outcome> {
    let opts = SuiteOptions {
        checkpoint_dir: std::env::var_os("BENTKIT_CHECKPOINT_DIR").map(Into::into),
        ..Default::default()
    };
    let (checks, _) = counts_n6(opts)?;
    Ok(outcome(&checks))
}

fn c12_graph_designs_m2() -> Result<Outcome> {
    let entries: Vec<_> = catalog_layer(2).collect();
    let designs: Vec<_> = entries.iter().map(|e| dev_graph(&e.function())).collect();
    let snfs: Vec<_> = designs
        .iter()
        .map(|d| smith_normal_form(d.matrix()))
        .collect();
    let mut checks = Vec::new();
    let mut colliding = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            if snfs[i] != snfs[j] {
                continue;
            }
            colliding.push(format!("{}/{}", entries[i].id(), entries[j].id()));
            let a = canonical_form_with_budget(&designs[i], DEFAULT_NODE_BUDGET)?;
            let b = canonical_form_with_budget(&designs[j], DEFAULT_NODE_BUDGET)?;
            checks.push(check(
                &format!("{} vs {}", entries[i].id(), entries[j].id()),
                a.matrix != b.matrix,
                "canonical forms differ",
            ));
        }
    }
    checks.push(check(
        "single SNF collision",
        colliding == ["C2_8/C2_9"],
        format!("{colliding:?}"),
    ));
    Ok(outcome(&checks))
}

type Criterion = (u32, &'static str, Duration, fn() -> Result<Outcome>);

fn main() {
    let extended = std::env::var("BENTKIT_EXTENDED").is_ok_and(|v| v == "1");
    let criteria: &[Criterion] = &[
        (
            1,
            "catalog bentness and degree bound",
            Duration::from_secs(1),
            c1_bentness,
        ),
        (
            2,
            "Smith normal forms of the graph designs",
            Duration::from_secs(300),
            c2_snf,
        ),
        (
            3,
            "SNF collisions exactly as listed",
            Duration::from_secs(300),
            c3_collisions,
        ),
        (
            4,
            "2-ranks of support designs",
            Duration::from_secs(10),
            c4_ranks,
        ),
        (
            5,
            "six-variable isomorphic, inequivalent pair",
            Duration::from_secs(60),
            c5_example1,
        ),
        (
            6,
            "ten-variable witness maps",
            Duration::from_secs(30),
            c6_example2,
        ),
        (
            7,
            "direct-sum pairs for n = 6, 8, 10",
            Duration::from_secs(600),
            c7_direct_sums,
        ),
        (8, "n = 4 oracle", Duration::from_secs(60), c8_n4),
        (
            9,
            "three addition-design constructions",
            Duration::from_secs(120),
            c9_addition_designs,
        ),
        (
            10,
            "EA-equivalence engine",
            Duration::from_secs(1800),
            c10_ea_engine,
        ),
        (
            11,
            "n = 6 census and classification",
            Duration::from_secs(6 * 3600),
            c11_counts,
        ),
        (
            12,
            "m = 2 graph designs pairwise non-isomorphic",
            Duration::from_secs(600),
            c12_graph_designs_m2,
        ),
    ];
    let mut unexpected = 0;
    for &(id, name, limit, run) in criteria {
        if id == 11 && !extended {
            println!("SKIP {id:>2} {name}: extended run, set BENTKIT_EXTENDED=1");
            continue;
        }
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(o) => (o.passed && elapsed <= limit, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let known = KNOWN_UNATTAINABLE.iter().find(|(k, _)| *k == id);
        println!(
            "{} {id:>2} {name}: {detail} [{:.2}s, limit {}s]",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        if !passed {
            match known {
                Some((_, why)) => println!("        known: {why}"),
                None => unexpected += 1,
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
