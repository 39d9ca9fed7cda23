//! Acceptance gate: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines;
//! any failed assertion carries the expected-vs-computed detail.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use semix_core::cover::{enumerate_generating_vectors, hurwitz_genus, CoverData};
use semix_core::divisors::orbit_divisors;
use semix_core::mixed::build_mixed_datum;
use semix_core::oracle::fixed_point_count_naive;
use semix_core::{
    run_scenario, FiniteGroup, Perm, Report, RunOptions, Scenario, SignatureType,
};

fn scenario_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn run(name: &str) -> (Report, Duration) {
    let path = scenario_dir().join(format!("{name}.toml"));
    let sc = Scenario::load(&path).expect("scenario loads");
    let t = Instant::now();
    let report = run_scenario(&sc, &RunOptions::default()).expect("scenario runs");
    (report, t.elapsed())
}

fn assert_expected_ok(report: &Report) {
    assert!(
        report.expected_ok,
        "scenario `{}` failed its expected block: {:?}",
        report.scenario, report.failures
    );
}

#[test]
fn criterion_1_first_order_256_family() {
    let (report, took) = run("case1a");
    assert_expected_ok(&report);
    let d = &report.data[0];
    assert_eq!(
        (d.genus, d.q, d.chi, d.k2),
        (33, 0, 1, 2),
        "surface invariants"
    );
    assert_eq!(d.branch_locus, "(3,-8)^3");
    let a = &d.analyses[0];
    assert_eq!(a.orbit_count, 18, "orbit divisors from the 128 graphs");
    assert_eq!(a.exceptional.len(), 2, "(-1)-curves");
    assert_eq!(a.exceptional_disjoint, Some(true), "pairwise disjoint");
    assert_eq!(a.k2_min, "4");
    assert!(
        took < Duration::from_secs(10),
        "runtime {took:?} exceeds the 10 s budget"
    );
    println!(
        "criterion 1: pass — g(C)=33 q=0 chi=1 K^2=2 branch (3,-8)^3; \
         18 orbit divisors, 2 disjoint (-1)-curves, K^2_min=4; {took:?} single-threaded"
    );
}

#[test]
fn criterion_2_second_order_256_family() {
    let (report, took) = run("case1b");
    assert_expected_ok(&report);
    let d = &report.data[0];
    assert_eq!(d.branch_locus, "(2,-4)^2,(3,-8)^2");
    let a = &d.analyses[0];
    assert_eq!(a.exceptional.len(), 2);
    assert_eq!(a.k2_min, "4");
    assert!(
        took < Duration::from_secs(10),
        "runtime {took:?} exceeds the 10 s budget"
    );
    println!(
        "criterion 2: pass — branch (2,-4)^2,(3,-8)^2, 2 (-1)-curves, K^2_min=4; {took:?}"
    );
}

#[test]
fn criterion_3_order_48_families_by_search() {
    for name in ["case2-48-38-search-gv", "case2-48-37-search-gv"] {
        let (report, took) = run(name);
        assert_expected_ok(&report);
        assert!(report.matched >= 1, "{name}: no datum matched");
        let d = report
            .data
            .iter()
            .find(|d| d.matches_expected)
            .expect("a matching datum");
        assert_eq!((d.genus, d.k2), (13, 4), "{name}: Table-row invariants");
        assert_eq!(d.branch_locus, "(2,-4),(4,-12)", "{name}");
        let a = d.analyses.iter().find(|a| a.lifted).expect("verified lift");
        assert_eq!(a.cover_order, 48, "{name}: lift order");
        assert_eq!(a.cover_signature, "[0;2^5]", "{name}: lift type");
        assert_eq!(a.exceptional.len(), 1, "{name}: one (-1)-curve");
        assert_eq!(a.k2_min, "5", "{name}");
        assert!(
            took < Duration::from_secs(60),
            "{name}: runtime {took:?} exceeds the 60 s budget"
        );
        println!(
            "criterion 3: pass — {name}: datum found by search, lift |H|=48 type [0;2^5], \
             one (-1)-curve, K^2_min=5; {took:?}"
        );
    }
}

#[test]
fn criterion_4_all_order_64_families() {
    // The published table prints sixteen order-64 rows, but two of them are
    // character-for-character identical (the (64,227) row appears twice), so
    // fifteen scenarios cover all sixteen rows.
    let rows = [
        "case3-64-153",
        "case3-64-150",
        "case3-64-147",
        "case3-64-128",
        "case3-64-130",
        "case3-64-134",
        "case3-64-227",
        "case3-64-228",
        "case3-64-234a",
        "case3-64-234b",
        "case3-64-236",
        "case3-64-219",
        "case3-64-221",
        "case3-64-213",
        "case3-64-206",
    ];
    for name in rows {
        let (report, took) = run(name);
        assert_expected_ok(&report);
        let d = &report.data[0];
        let a = d.analyses.iter().find(|a| a.lifted).expect("verified lift");
        assert_eq!(a.cover_order, 64, "{name}: lift order");
        assert_eq!(a.exceptional.len(), 2, "{name}: two (-1)-curves");
        assert_eq!(a.exceptional_disjoint, Some(true), "{name}: disjoint");
        assert_eq!(a.k2_min, "4", "{name}");
        assert!(
            took < Duration::from_secs(300),
            "{name}: runtime {took:?} exceeds the 5 min budget"
        );
    }
    println!(
        "criterion 4: pass — all 15 distinct order-64 rows (16 printed, one duplicated): \
         lift |H|=64, two disjoint (-1)-curves, K^2_min=4 each"
    );
}

#[test]
fn criterion_5_symmetric_square_sanity() {
    let (report, _) = run("symmetric-square-g3");
    assert_expected_ok(&report);
    let d = &report.data[0];
    assert_eq!((d.q, d.chi, d.k2), (3, 1, 6));
    assert_eq!(d.branch_locus, "(3,-8)");
    assert_eq!(d.analyses[0].exceptional.len(), 0);
    println!("criterion 5: pass — q=3 chi=1 K^2=6, branch (3,-8), no (-1)-curves");
}

// ---- criterion 6: property sweep over random small groups ----

fn cyclic(n: usize) -> Arc<FiniteGroup> {
    let cycle: Vec<usize> = (1..=n).collect();
    let word = format!(
        "({})",
        cycle
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    let gens = vec![("g1".to_string(), Perm::parse_cycles(&word, n).unwrap())];
    Arc::new(FiniteGroup::from_permutations(&gens, 128).unwrap())
}

fn dihedral(n: usize) -> Arc<FiniteGroup> {
    let rot: Vec<usize> = (1..=n).collect();
    let rot_word = format!(
        "({})",
        rot.iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    let mut refl = String::new();
    for i in 1..=n / 2 {
        let j = n + 1 - i;
        if i != j {
            refl.push_str(&format!("({i} {j})"));
        }
    }
    let gens = vec![
        ("r".to_string(), Perm::parse_cycles(&rot_word, n).unwrap()),
        ("s".to_string(), Perm::parse_cycles(&refl, n).unwrap()),
    ];
    Arc::new(FiniteGroup::from_permutations(&gens, 128).unwrap())
}

fn fixture_groups_up_to_64() -> Vec<Arc<FiniteGroup>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/groups");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .collect();
    paths.sort();
    paths
        .into_iter()
        .filter_map(|p| {
            let text = std::fs::read_to_string(&p).ok()?;
            let g = FiniteGroup::from_group_file(&text, 1024).ok()?;
            (g.order() <= 64).then(|| Arc::new(g))
        })
        .collect()
}

/// Deterministic xorshift so the "random" sweep is reproducible.
struct Rng(u64);
impl Rng {
    fn next(&mut self, bound: usize) -> usize {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 % bound as u64) as usize
    }
}

#[test]
fn criterion_6_property_sweep() {
    let mut groups: Vec<Arc<FiniteGroup>> = Vec::new();
    for n in 2..=16 {
        groups.push(cyclic(n));
    }
    for n in 3..=12 {
        groups.push(dihedral(n));
    }
    groups.extend(fixture_groups_up_to_64());

    let signatures = [
        SignatureType::parse("[0;2^5]").unwrap(),
        SignatureType::parse("[0;2,2,3,3]").unwrap(),
        SignatureType::parse("[0;2,4,4]").unwrap(),
        SignatureType::parse("[0;3,3,3]").unwrap(),
        SignatureType::parse("[0;2,2,2,3]").unwrap(),
        SignatureType::parse("[1;2,2]").unwrap(),
        SignatureType::parse("[0;2,2,2,4]").unwrap(),
        SignatureType::parse("[0;4,4,4]").unwrap(),
        SignatureType::parse("[0;2,3,6]").unwrap(),
        SignatureType::parse("[0;2,6,6]").unwrap(),
        SignatureType::parse("[1;3,3]").unwrap(),
        SignatureType::parse("[1;2,2,2]").unwrap(),
        SignatureType::parse("[0;2,2,4,4]").unwrap(),
        SignatureType::parse("[0;3,3,4]").unwrap(),
        SignatureType::parse("[0;2,2,6,6]").unwrap(),
        SignatureType::parse("[0;5,5,5]").unwrap(),
        SignatureType::parse("[0;2,2,8,8]").unwrap(),
        SignatureType::parse("[1;4,4]").unwrap(),
        SignatureType::parse("[0;2,2,2,2,3]").unwrap(),
        SignatureType::parse("[0;6,6,6]").unwrap(),
    ];

    let mut rng = Rng(0x5eed_cafe_f00d_0001);
    let mut covers = 0usize;
    for g in &groups {
        for sig in &signatures {
            if hurwitz_genus(g.order(), sig).is_err() {
                continue;
            }
            let vectors = enumerate_generating_vectors(g, sig, 40);
            let Some(v) = vectors.first() else { continue };
            let cover = CoverData::new(g.clone(), v.clone()).expect("admissible vector");
            covers += 1;

            // double count: sum over nontrivial f of |Fix(f)| equals
            // sum over entries of (|H|/m_j)(m_j - 1)
            let lhs: i64 = (1..g.order() as u16)
                .map(|f| cover.fixed_point_count(f).unwrap())
                .sum();
            let rhs: i64 = sig
                .periods()
                .iter()
                .map(|&m| (g.order() as i64 / m as i64) * (m as i64 - 1))
                .sum();
            assert_eq!(lhs, rhs, "double count on |H|={} {sig}", g.order());

            // conjugation and inversion invariance on sampled pairs
            for _ in 0..8 {
                let f = 1 + rng.next(g.order() - 1) as u16;
                let x = rng.next(g.order()) as u16;
                let conj = g.conj(x, f);
                let inv = g.inv(f);
                let base = cover.fixed_point_count(f).unwrap();
                if conj != 0 {
                    assert_eq!(
                        base,
                        cover.fixed_point_count(conj).unwrap(),
                        "conjugation invariance |H|={}",
                        g.order()
                    );
                }
                assert_eq!(
                    base,
                    cover.fixed_point_count(inv).unwrap(),
                    "inversion invariance |H|={}",
                    g.order()
                );
            }
        }
    }
    assert!(covers >= 50, "only {covers} covers exercised");

    // Hurwitz integrality: these group-order/signature pairs make
    // |H|(2g'-2 + sum (m-1)/m) odd or the genus negative, so they must be
    // rejected rather than rounded.
    for (order, sig) in [
        (2usize, "[0;2,2,2]"),
        (4, "[0;2,4,4,4]"),
        (6, "[0;2,3,3]"),
        (8, "[0;2,2,2,8]"),
        (2, "[0;2]"),
    ] {
        let sig = SignatureType::parse(sig).unwrap();
        assert!(
            hurwitz_genus(order, &sig).is_err(),
            "|H|={order} {sig} must be rejected"
        );
    }

    // orbit partition completeness on three representative pinned scenarios
    for name in ["case1a", "case2-48-38", "case3-64-153"] {
        let sc = Scenario::load(&scenario_dir().join(format!("{name}.toml"))).unwrap();
        let text = std::fs::read_to_string(&sc.group_file).unwrap();
        let g = Arc::new(FiniteGroup::from_group_file(&text, 1024).unwrap());
        let datum = build_mixed_datum(
            g,
            &sc.g0_generators,
            sc.tau_prime.as_ref().unwrap(),
            &sc.signature,
            &sc.hyperbolic,
            &sc.branch,
        )
        .unwrap();
        let divs = orbit_divisors(&datum, &datum.cover0).unwrap();
        let mut seen = vec![false; datum.g0.order()];
        for d in &divs {
            for &e in &d.orbit {
                assert!(!seen[e as usize], "{name}: orbits overlap at {e}");
                seen[e as usize] = true;
            }
        }
        assert!(
            seen.iter().all(|&s| s),
            "{name}: orbits do not cover the group"
        );
    }

    // adjunction: every orbit divisor of every bundled scenario has an
    // integer arithmetic genus >= 0 (the pa field is only ever filled with
    // an exact integer; a fractional value panics during the run)
    let mut rows = 0usize;
    for entry in std::fs::read_dir(scenario_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|x| x != "toml") {
            continue;
        }
        let sc = Scenario::load(&path).unwrap();
        let report = run_scenario(&sc, &RunOptions::default()).unwrap();
        for d in &report.data {
            for a in &d.analyses {
                for o in &a.orbits {
                    assert!(
                        o.pa >= 0,
                        "{}: divisor {} has negative genus {}",
                        sc.name,
                        o.rep,
                        o.pa
                    );
                    rows += 1;
                }
            }
        }
    }
    println!(
        "criterion 6: pass — {covers} covers fuzzed (double count, conjugation/inversion \
         invariance), 5 inadmissible signatures rejected, orbit partitions complete, \
         {rows} orbit divisors with integer genus >= 0"
    );
}

#[test]
fn criterion_7_oracle_equivalence() {
    // Both order-256 data: the naive per-element recount of the appendix
    // formula must agree with the production fix table on every nontrivial
    // element of the subgroup. Together with the inner loop over all 128
    // group elements this compares all 127*128 = 16256 ordered pairs per
    // fixture. The identity is excluded: there the appendix expression
    // degenerates to sum_j |H|/m_j, which is not a fixed-point count, and
    // the production engine rejects it by design — asserted below.
    for name in ["case1a", "case1b"] {
        let sc = Scenario::load(&scenario_dir().join(format!("{name}.toml"))).unwrap();
        let text = std::fs::read_to_string(&sc.group_file).unwrap();
        let g = Arc::new(FiniteGroup::from_group_file(&text, 1024).unwrap());
        let datum = build_mixed_datum(
            g,
            &sc.g0_generators,
            sc.tau_prime.as_ref().unwrap(),
            &sc.signature,
            &sc.hyperbolic,
            &sc.branch,
        )
        .unwrap();
        let g0 = &datum.g0;
        let v = datum.v();
        assert_eq!(g0.order(), 128, "{name}");
        for f in 1..g0.order() as u16 {
            let naive = fixed_point_count_naive(g0, &v.branch_part, f);
            assert!(naive.is_integer(), "{name}: naive count fractional at {f}");
            assert_eq!(
                naive.to_integer(),
                datum.cover0.fixed_point_count(f).unwrap(),
                "{name}: disagreement at element {f}"
            );
        }
        let degenerate = fixed_point_count_naive(g0, &v.branch_part, 0);
        let expected: i64 = v
            .signature
            .periods()
            .iter()
            .map(|&m| g0.order() as i64 / m as i64)
            .sum();
        assert_eq!(degenerate.to_integer(), expected, "{name}: identity value");
        assert!(datum.cover0.fixed_point_count(0).is_err(), "{name}");
    }
    println!(
        "criterion 7: pass — naive recount equals the production engine on all 127 \
         nontrivial elements (16256 ordered pairs) of both order-256 fixtures; identity \
         excluded (degenerate value 320 checked, engine rejects it)"
    );
}

#[test]
fn criterion_8_bound_conformance() {
    let mut names = Vec::new();
    for entry in std::fs::read_dir(scenario_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|x| x == "toml") {
            names.push(path);
        }
    }
    names.sort();
    let bound_table = |k2: i64| -> usize {
        match k2 {
            6..=8 => 0,
            4 | 5 => 1,
            2 | 3 => 2,
            1 => 3,
            _ => panic!("no contraction bound tabulated for K^2={k2}"),
        }
    };
    let mut checked = 0usize;
    let mut high_k2 = 0usize;
    for path in names {
        let sc = Scenario::load(&path).unwrap();
        let report = run_scenario(&sc, &RunOptions::default()).unwrap();
        for d in &report.data {
            for a in &d.analyses {
                let bound = bound_table(a.k2);
                assert_eq!(
                    a.contraction_bound, bound,
                    "{}: tabulated bound mismatch",
                    sc.name
                );
                assert!(
                    a.exceptional.len() <= bound,
                    "{}: {} (-1)-curves exceed the bound {} for K^2={}",
                    sc.name,
                    a.exceptional.len(),
                    bound,
                    a.k2
                );
                if a.k2 >= 6 {
                    assert_eq!(
                        a.exceptional.len(),
                        0,
                        "{}: K^2={} must already be minimal",
                        sc.name,
                        a.k2
                    );
                    high_k2 += 1;
                }
                checked += 1;
            }
        }
    }
    assert!(high_k2 >= 3, "too few high-K^2 analyses exercised");
    println!(
        "criterion 8: pass — {checked} analyses within the contraction bound; \
         {high_k2} with K^2 in 6..=8 all minimal"
    );
}
