//! One test per acceptance criterion. Each prints a single PASS/FAIL line with
//! its measured value and the pinned limit.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use strata::classify::{
    classify, consistency_check, parse_descriptor, random_descriptor, Measure, RULES,
};
use strata::fg::random::{random_automorphism, random_endo, random_group};
use strata::fg::{block_endo, endo_string_numbers, map_subgroup, surjective_core, Endomorphism};
use strata::linalg::{image_chain, unit_part_lattice, IntMatrix};
use strata::oracle::{sweep, DEFAULT_SEED};
use strata::tables::{self, reproduce_tables};
use strata::witness::{bernoulli_table, shipped, verify_id, Shift};
use strata::Verdict;

const TABLE_LIMIT: Duration = Duration::from_secs(1);
const BERNOULLI_LIMIT: Duration = Duration::from_secs(5);
const ORACLE_LIMIT: Duration = Duration::from_secs(120);
const FG_LIMIT: Duration = Duration::from_secs(120);
const WITNESS_LIMIT: Duration = Duration::from_secs(30);
const CLASSIFIER_LIMIT: Duration = Duration::from_secs(30);
const UNIT_PART_LIMIT: Duration = Duration::from_secs(300);

const BERNOULLI_DEPTH: usize = 100;
const WITNESS_DEPTH: usize = 100;
const ORACLE_MAX_ORDER: u64 = 32;
const FG_CASES: usize = 200;
const CONJUGATION_CASES: usize = 20;
const CONJUGATORS: usize = 10;
const BLOCK_CASES: usize = 50;
const DESCRIPTORS: usize = 1000;
const UNIT_PART_SAMPLES: usize = 2000;
const CHAIN_STEPS: usize = 16;

fn report(id: u32, name: &str, ok: bool, detail: &str, elapsed: Duration, limit: Duration) -> bool {
    let pass = ok && elapsed <= limit;
    println!(
        "[{}] criterion {}: {}: {} ({:.2?}, limit {:?})",
        if pass { "PASS" } else { "FAIL" },
        id,
        name,
        detail,
        elapsed,
        limit
    );
    pass
}

fn cells(row: &str) -> Vec<Verdict> {
    row.split_whitespace()
        .map(|c| match c {
            "0" => Verdict::Zero,
            "∞" => Verdict::Infinite,
            other => panic!("bad cell {:?}", other),
        })
        .collect()
}

/// The printed tables, row by row, with the descriptor used for each row.
const PRINTED: [(&str, &str, &str); 8] = [
    ("Z", "Z", "0 0 0 0 0 0"),
    ("Z^2", "Z^2", "∞ ∞ 0 ∞ ∞ 0"),
    ("Q", "Q", "∞ ∞ 0 ∞ ∞ 0"),
    ("J_p", "Jp({p})", "∞ ∞ 0 ∞ ∞ ∞"),
    ("Z(p^inf)", "Prufer({p})", "∞ 0 ∞ ∞ 0 ∞"),
    ("Q/Z", "Prufer(*)", "∞ 0 ∞ ∞ 0 ∞"),
    ("B_p", "Bp({p})", "∞ ∞ ∞ ∞ ∞ ∞"),
    ("K^(N)", "C(2,1)^aleph0", "∞ ∞ ∞ ∞ ∞ ∞"),
];

const PRIMES: [u64; 4] = [2, 3, 5, 7];

/// Other nonzero `K` for the last row.
const OTHER_K: [&str; 5] = [
    "C(3,2)^aleph0",
    "Z^aleph0",
    "Q^aleph0",
    "Prufer(5)^aleph0",
    "Jp(3)^aleph0",
];

/// Cell-by-cell mismatches of the first `columns` columns over all primes.
fn table_mismatches(columns: usize) -> Vec<String> {
    let mut bad = Vec::new();
    for p in PRIMES {
        for (label, template, row) in PRINTED {
            let text = template.replace("{p}", &p.to_string());
            let got = classify(&parse_descriptor(&text).unwrap())
                .verdicts
                .to_array();
            let expected = cells(row);
            for (m, (e, g)) in Measure::ALL
                .iter()
                .zip(expected.iter().zip(got))
                .take(columns)
            {
                if *e != g {
                    bad.push(format!(
                        "{} ({}), {}: expected {}, got {}",
                        label,
                        text,
                        m.key(),
                        e,
                        g
                    ));
                }
            }
        }
    }
    for text in OTHER_K {
        let got = classify(&parse_descriptor(text).unwrap())
            .verdicts
            .to_array();
        if got[..columns].iter().any(|v| *v != Verdict::Infinite) {
            bad.push(format!("K^(N) as {}: {:?}", text, got));
        }
    }
    bad
}

#[test]
fn criterion_1_plain_table() {
    let start = Instant::now();
    let bad = table_mismatches(3);
    let lib = reproduce_tables(2, 1).unwrap();
    let constants_agree = PRINTED
        .iter()
        .zip(tables::PLAIN_EXPECTED)
        .all(|((_, _, row), e)| cells(row)[..3] == e);
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && constants_agree && lib.plain.iter().all(|r| r.got == r.expected);
    let detail = format!(
        "8 rows x 3 columns at p in {:?} plus {} other K, {} mismatches",
        PRIMES,
        OTHER_K.len(),
        bad.len()
    );
    assert!(
        report(1, "string-number table", ok, &detail, elapsed, TABLE_LIMIT),
        "{:#?}",
        bad
    );
}

#[test]
fn criterion_2_hereditary_table() {
    let start = Instant::now();
    let bad = table_mismatches(6);
    let constants_agree = PRINTED
        .iter()
        .zip(tables::HEREDITARY_EXPECTED)
        .all(|((_, _, row), e)| cells(row) == e);
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && constants_agree;
    let detail = format!(
        "8 rows x 6 columns at p in {:?}, {} mismatches",
        PRIMES,
        bad.len()
    );
    assert!(
        report(2, "hereditary table", ok, &detail, elapsed, TABLE_LIMIT),
        "{:#?}",
        bad
    );
}

#[test]
fn criterion_3_bernoulli_table() {
    let start = Instant::now();
    let rows = bernoulli_table(2, BERNOULLI_DEPTH).unwrap();
    let elapsed = start.elapsed();
    let printed = [
        (Shift::Right, "0 0 0"),
        (Shift::Left, "∞ 0 ∞"),
        (Shift::TwoSided, "∞ ∞ 0"),
    ];
    let mut bad = Vec::new();
    for (row, (shift, cells_text)) in rows.iter().zip(printed) {
        let got = vec![row.s, row.ns, row.s0];
        if row.shift != shift || got != cells(cells_text) {
            bad.push(format!("{}: {:?}", shift.name(), got));
        }
        if row.evidence.iter().any(|e| !e.ends_with("passed")) {
            bad.push(format!("{}: {:?}", shift.name(), row.evidence));
        }
    }
    let detail = format!(
        "3 shifts on Z(2), depth {}, {} mismatches",
        BERNOULLI_DEPTH,
        bad.len()
    );
    assert!(
        report(
            3,
            "Bernoulli shifts",
            bad.is_empty(),
            &detail,
            elapsed,
            BERNOULLI_LIMIT
        ),
        "{:#?}",
        bad
    );
}

/// Number of abelian groups of order `n`: the product of partition counts of
/// the exponents in `n`.
fn abelian_group_count(mut n: u64) -> u64 {
    let partitions = |k: usize| {
        let mut p = vec![0u64; k + 1];
        p[0] = 1;
        for part in 1..=k {
            for total in part..=k {
                p[total] += p[total - part];
            }
        }
        p[k]
    };
    let mut count = 1;
    let mut q = 2;
    while n > 1 {
        let mut e = 0;
        while n.is_multiple_of(q) {
            n /= q;
            e += 1;
        }
        count *= partitions(e);
        q += 1;
    }
    count
}

#[test]
fn criterion_4_finite_oracle() {
    let start = Instant::now();
    let r = sweep(ORACLE_MAX_ORDER, DEFAULT_SEED);
    let elapsed = start.elapsed();
    let groups: u64 = (1..=ORACLE_MAX_ORDER).map(abelian_group_count).sum();
    let ok = r.mismatches.is_empty()
        && r.groups_visited as u64 == groups
        && r.confirmations == r.endos_checked;
    let detail = format!(
        "{} groups (expected {}), {} endomorphisms, {} mismatches",
        r.groups_visited,
        groups,
        r.endos_checked,
        r.mismatches.len()
    );
    assert!(
        report(4, "finite oracle", ok, &detail, elapsed, ORACLE_LIMIT),
        "{:#?}",
        r.mismatches
    );
}

fn triple(phi: &Endomorphism) -> [Verdict; 3] {
    let v = endo_string_numbers(phi);
    [v.s.into(), v.ns.into(), v.s0.into()]
}

#[test]
fn criterion_5_fg_properties() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bad = Vec::new();
    let mut cases = Vec::new();
    for i in 0..FG_CASES {
        let g = random_group(&mut rng, 4, 27);
        let phi = random_endo(&mut rng, &g, 3);
        let t = triple(&phi);
        if t[0] != t[1] || t[2] != Verdict::Zero {
            bad.push(format!("case {}: {} on {}: {:?}", i, phi.matrix(), g, t));
        }
        for k in [2, 3] {
            if triple(&phi.power(k)) != t {
                bad.push(format!("case {}: power {} changes {:?}", i, k, t));
            }
        }
        cases.push(phi);
    }
    for phi in cases.iter().take(CONJUGATION_CASES) {
        let t = triple(phi);
        for _ in 0..CONJUGATORS {
            let u = random_automorphism(&mut rng, phi.group(), 6);
            if triple(&phi.conjugate(&u).unwrap()) != t {
                bad.push(format!(
                    "{} on {}: conjugation changes {:?}",
                    phi.matrix(),
                    phi.group(),
                    t
                ));
            }
        }
    }
    for pair in cases.chunks(2).take(BLOCK_CASES) {
        let (a, b) = (&pair[0], &pair[1]);
        let (sum, block) = block_endo(a, b).unwrap();
        let (ta, tb) = (triple(a), triple(b));
        let expected: Vec<Verdict> = ta.iter().zip(tb).map(|(x, y)| x.plus(y)).collect();
        if triple(&block).to_vec() != expected {
            bad.push(format!("{} ⊕ {}: not additive", a.matrix(), b.matrix()));
        }
        let [i1, i2] = &sum.inclusions;
        let parts = map_subgroup(i1, &surjective_core(a))
            .unwrap()
            .sum(&map_subgroup(i2, &surjective_core(b)).unwrap())
            .unwrap();
        if parts != surjective_core(&block) {
            bad.push(format!(
                "{} ⊕ {}: core is not the sum of cores",
                a.matrix(),
                b.matrix()
            ));
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{} endomorphisms, {}x{} conjugations, {} block sums, {} failures",
        FG_CASES,
        CONJUGATION_CASES,
        CONJUGATORS,
        BLOCK_CASES,
        bad.len()
    );
    assert!(
        report(
            5,
            "fg property suite",
            bad.is_empty(),
            &detail,
            elapsed,
            FG_LIMIT
        ),
        "{:#?}",
        bad
    );
}

#[test]
fn criterion_6_witness_suite() {
    let start = Instant::now();
    let required = [
        "z2-unipotent",
        "prufer-null-2",
        "basic-small-endo-2",
        "p-basic-nonsingular-2",
        "localization-jp-5-q2",
        "localization-rank1-2",
        "product-diag-10",
        "corner-null-2",
        "bernoulli-left-2",
        "bernoulli-two-sided-2",
    ];
    let ids: Vec<String> = shipped().into_iter().map(|e| e.id).collect();
    let mut bad: Vec<String> = required
        .iter()
        .filter(|id| !ids.iter().any(|x| x == *id))
        .map(|id| format!("{} not shipped", id))
        .collect();
    let mut capped = Vec::new();
    for id in &ids {
        match verify_id(id, WITNESS_DEPTH) {
            Ok(o) if o.passed => {
                if o.depth < WITNESS_DEPTH {
                    capped.push(format!("{} at {}", id, o.depth));
                }
            }
            Ok(o) => bad.push(format!("{}: {:?}", id, o.report.and_then(|r| r.failure))),
            Err(e) => bad.push(format!("{}: {}", id, e)),
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{} ids at depth {}, capped: [{}], {} failures",
        ids.len(),
        WITNESS_DEPTH,
        capped.join(", "),
        bad.len()
    );
    assert!(
        report(
            6,
            "witness suite",
            bad.is_empty(),
            &detail,
            elapsed,
            WITNESS_LIMIT
        ),
        "{:#?}",
        bad
    );
}

#[test]
fn criterion_7_classifier_consistency() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let anchors: Vec<&str> = RULES.iter().map(|r| r.anchor).collect();
    let mut bad = Vec::new();
    let mut unknown = 0;
    for _ in 0..DESCRIPTORS {
        let d = random_descriptor(&mut rng);
        let c = classify(&d);
        let mut issues = consistency_check(&c);
        for m in Measure::PLAIN {
            if c.verdicts.get(m.partner()) == Verdict::Zero && c.verdicts.get(m) != Verdict::Zero {
                issues.push(format!("{} = 0 but {} is not", m.partner().key(), m.key()));
            }
        }
        if c.verdicts.s0 == Verdict::Zero && c.hopf == strata::classify::Hopf::NotHopfian {
            issues.push("s0 = 0 and not Hopfian".into());
        }
        let her = c.invariants.t_p_size.all_finite() && c.invariants.r0.is_finite();
        if (c.verdicts.s0_t == Verdict::Zero) != her {
            issues.push(format!("s0_t = {} against the invariants", c.verdicts.s0_t));
        }
        let json = serde_json::to_value(c.verdicts).unwrap();
        for (k, v) in json.as_object().unwrap() {
            if !matches!(v.as_str(), Some("Zero" | "Infinite" | "Unknown")) {
                issues.push(format!("{} has value {}", k, v));
            }
        }
        for m in Measure::ALL {
            match c.verdicts.get(m) {
                Verdict::Unknown => unknown += 1,
                _ if c.steps_for(m).next().is_none() => {
                    issues.push(format!("{} has no trace", m.key()))
                }
                _ => {}
            }
        }
        if c.trace
            .iter()
            .any(|t| !anchors.contains(&t.anchor.as_str()))
        {
            issues.push("trace cites an unknown anchor".into());
        }
        if classify(&d) != c {
            issues.push("not deterministic".into());
        }
        if !issues.is_empty() {
            bad.push(format!("{}: {:?}", d, issues));
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{} descriptors, {} of {} values left unknown, {} violations",
        DESCRIPTORS,
        unknown,
        DESCRIPTORS * 6,
        bad.len()
    );
    assert!(
        report(
            7,
            "classifier consistency",
            bad.is_empty(),
            &detail,
            elapsed,
            CLASSIFIER_LIMIT
        ),
        "{:#?}",
        bad
    );
}

#[test]
fn criterion_8_unit_part_lattice() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = Vec::new();
    let mut certified = 0;
    for _ in 0..UNIT_PART_SAMPLES {
        let rows: Vec<Vec<i64>> = (0..3)
            .map(|_| (0..3).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        let a = IntMatrix::from_rows(&rows);
        let l = unit_part_lattice(&a).unwrap();
        if l.image(&a).unwrap() != l {
            bad.push(format!("{}: A(L) != L", a));
        }
        let chain = image_chain(&a, CHAIN_STEPS).unwrap();
        if !chain.lattice.contains_lattice(&l).unwrap() {
            bad.push(format!("{}: L escapes the image chain", a));
        }
        if chain.certified {
            certified += 1;
            if chain.lattice != l {
                bad.push(format!("{}: disagrees with the certified chain", a));
            }
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{} matrices, {} certified chains, {} counterexamples",
        UNIT_PART_SAMPLES,
        certified,
        bad.len()
    );
    assert!(
        report(
            8,
            "unit-part lattice",
            bad.is_empty(),
            &detail,
            elapsed,
            UNIT_PART_LIMIT
        ),
        "{:#?}",
        bad
    );
}
