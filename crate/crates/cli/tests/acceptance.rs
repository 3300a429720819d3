//! One PASS/FAIL line per acceptance criterion, with pinned time budgets.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use serde_json::Value;

use qgauge_core::abgrp::{quotient, smith_normal_form, solve_sixterm, FGAbelianGroup, Matrix, SixTerm};
use qgauge_core::kring::{branching_morphism, ext_mul, hopf_comul, tensor_map, Boundary, ExtAlgebra, ExtElement};
use qgauge_core::ncalg::DEFAULT_STEP_LIMIT;
use qgauge_core::qpres::{
    coaction_invariant, cp_link, cp_samples, last_row_samples, sphere_link, verify_hs_restriction, Outcome,
};
use qgauge_core::towers::{cp_tower, sphere_tower};
use qgauge_core::Poly;

const SPHERE_BUDGET: Duration = Duration::from_secs(1);
const CP_BUDGET: Duration = Duration::from_secs(1);
const SU_BUDGET: Duration = Duration::from_secs(5);
const SUITE_BUDGET_N5: Duration = Duration::from_secs(60);
const SNF_CASES: u32 = 1000;
const COKERNEL_CASES: u32 = 1000;
const HEXAGON_CASES: u32 = 500;

/// Criteria that cannot hold as stated, with the reason.
const EXPECTED_FAILURES: &[(u32, &str)] =
    &[(5, "u[1,1] is invariant at n = 2: theta'_2 is the counit, so every element of level 2 is invariant")];

struct Check {
    notes: Vec<String>,
    timings: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { notes: Vec::new(), timings: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.notes.push(what.into());
        }
    }

    fn within(&mut self, elapsed: Duration, budget: Duration, what: &str) {
        self.timings.push(format!("{} {:.2?} < {:.0?}", what, elapsed, budget));
        self.expect(elapsed < budget, format!("{} took {:.2?}, budget {:.2?}", what, elapsed, budget));
    }
}

fn cli(args: &[&str]) -> (i32, Value, Duration) {
    let mut argv = vec!["qgauge", "--format", "json"];
    argv.extend_from_slice(args);
    let start = Instant::now();
    let out = qgauge_cli::run(argv);
    let elapsed = start.elapsed();
    let json = serde_json::from_str(&out.output).unwrap_or(Value::Null);
    (out.status, json, elapsed)
}

fn corpus(rel: &str) -> String {
    format!("{}/corpus/{}", env!("CARGO_MANIFEST_DIR"), rel)
}

fn item<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["items"].as_array().and_then(|v| v.iter().find(|i| i["id"] == id)).unwrap_or(&Value::Null)
}

fn z_power(k: usize) -> String {
    match k {
        0 => "0".into(),
        1 => "Z".into(),
        _ => format!("Z^{}", k),
    }
}

fn criterion_1() -> Check {
    let mut c = Check::new();
    let (status, r, t) = cli(&["k", "sphere", "--n-max", "8"]);
    c.expect(status == 0, format!("exit {}", status));
    for n in 2..=8 {
        let it = item(&r, &format!("n={}", n));
        c.expect(it["K0"] == "Z" && it["K1"] == "Z", format!("n={}: K0={} K1={}", n, it["K0"], it["K1"]));
        c.expect(it["hexagon_zero_maps"] == serde_json::json!([1, 3, 5]), format!("n={}: zero maps", n));
        c.expect(it["hexagon_euler"] == 0, format!("n={}: euler", n));
    }
    c.expect(item(&r, "RK0")["value"] == "Z (Stable)", format!("RK0 = {}", item(&r, "RK0")["value"]));
    c.expect(item(&r, "RK1")["value"] == "0", format!("RK1 = {}", item(&r, "RK1")["value"]));
    c.within(t, SPHERE_BUDGET, "k sphere");
    c
}

fn criterion_2() -> Check {
    let mut c = Check::new();
    let (status, r, t) = cli(&["k", "cp", "--n-max", "10"]);
    c.expect(status == 0, format!("exit {}", status));
    for n in 0..=10 {
        let it = item(&r, &format!("n={}", n));
        c.expect(it["K0"] == z_power(n + 1).as_str() && it["K1"] == "0", format!("n={}: {} {}", n, it["K0"], it["K1"]));
    }
    let rk0 = &r["results"]["milnor"]["RK0"];
    c.expect(item(&r, "RK0")["value"] == "Z^inf (ProFree)", format!("RK0 = {}", item(&r, "RK0")["value"]));
    c.expect(rk0["value"]["ProFree"]["label"] == "Z^inf", "RK0 label");
    c.expect(rk0["lim1"]["ZeroMl"]["justification"] == "Surjective", format!("RK0 lim1 = {}", rk0["lim1"]));
    c.expect(item(&r, "RK1")["value"] == "0", format!("RK1 = {}", item(&r, "RK1")["value"]));
    c.within(t, CP_BUDGET, "k cp");
    c
}

fn criterion_3() -> Check {
    let mut c = Check::new();
    let (status, r, t) = cli(&["k", "su", "--n-max", "8"]);
    c.expect(status == 0, format!("exit {}", status));
    for n in 2..=8usize {
        let it = item(&r, &format!("n={}", n));
        let half = 1u64 << (n - 2);
        c.expect(
            it["rank"] == 2 * half && it["rank_even"] == half && it["rank_odd"] == half,
            format!("n={}: ranks", n),
        );
        if n >= 3 {
            c.expect(it["surjective_even"] == true && it["surjective_odd"] == true, format!("n={}: onto", n));
        }
    }
    for d in ["RK0", "RK1"] {
        let m = &r["results"]["milnor"][d];
        c.expect(m["lim1"]["ZeroMl"]["justification"] == "Surjective", format!("{} lim1 = {}", d, m["lim1"]));
        c.expect(
            m["value"] == m["lim"] && m["value"]["ProFree"]["label"] == "Z^inf",
            format!("{} = {}", d, m["value"]),
        );
    }
    c.within(t, SU_BUDGET, "k su");
    c
}

fn all_verified(c: &mut Check, r: &Value, what: &str) {
    let s = &r["summary"];
    c.expect(s["total"].as_u64().unwrap_or(0) > 0 && s["verified"] == s["total"], format!("{}: {}", what, s));
}

/// Returns the check and the number of replayed theta certificates.
fn criterion_4() -> (Check, usize) {
    let mut c = Check::new();
    let mut replayed = 0;
    for n in 2..=6usize {
        let ns = n.to_string();
        let mut elapsed = Duration::ZERO;
        for suite in ["coassoc", "square"] {
            let (status, r, t) = cli(&["verify", suite, "--n", &ns]);
            elapsed += t;
            c.expect(status == 0, format!("{} n={}: exit {}", suite, n, status));
            all_verified(&mut c, &r, &format!("{} n={}", suite, n));
        }
        if n <= 5 {
            let (status, r, t) = cli(&["verify", "theta-ideal", "--n", &ns]);
            elapsed += t;
            c.expect(status == 0, format!("theta n={}: exit {}", n, status));
            all_verified(&mut c, &r, &format!("theta n={}", n));
            let total = 2 * n * n + n.pow(n as u32);
            c.expect(r["summary"]["total"] == total, format!("theta n={}: {} relations", n, r["summary"]["total"]));
            c.expect(r["summary"]["unknown"] == 0, format!("theta n={}: unknown outcomes", n));
            let items = r["items"].as_array().cloned().unwrap_or_default();
            let ok = items.iter().filter(|i| i["certificate_replayed"] == true).count();
            c.expect(ok == items.len(), format!("theta n={}: {}/{} replays", n, ok, items.len()));
            replayed += ok;
        }
        if n == 5 {
            c.within(elapsed, SUITE_BUDGET_N5, "suites at n=5");
        }
    }
    (c, replayed)
}

fn u(i: u32, j: u32) -> Poly {
    Poly::generator(qgauge_core::ncalg::GenSymbol::matrix("u", i, j))
}

fn criterion_5() -> Check {
    let mut c = Check::new();
    for n in 2..=5usize {
        let sphere = sphere_link(n, n).unwrap();
        for f in last_row_samples(n) {
            let (o, _) = coaction_invariant(&f, &sphere, n, DEFAULT_STEP_LIMIT).unwrap();
            c.expect(o == Outcome::Verified, format!("n={}: {} is {:?}", n, f, o));
        }
        let cp = cp_link(n, n).unwrap();
        for f in cp_samples(n) {
            let (o, _) = coaction_invariant(&f, &cp, n, DEFAULT_STEP_LIMIT).unwrap();
            c.expect(o == Outcome::Verified, format!("n={}: {} is {:?}", n, f, o));
        }
    }
    for n in 2..=5usize {
        let (o, _) = coaction_invariant(&u(1, 1), &sphere_link(n, n).unwrap(), n, DEFAULT_STEP_LIMIT).unwrap();
        c.expect(o == Outcome::RefutedAtNormalForm, format!("n={}: u[1,1] is {:?}", n, o));
    }
    let sphere = sphere_link(2, 5).unwrap();
    let cp = cp_link(2, 5).unwrap();
    for n in 3..=5 {
        let r = verify_hs_restriction(&sphere, n, &last_row_samples(n), DEFAULT_STEP_LIMIT).unwrap();
        c.expect(r.all_verified(), format!("sphere restriction n={}: {:?}", n, r.summary));
        let r = verify_hs_restriction(&cp, n, &cp_samples(n), DEFAULT_STEP_LIMIT).unwrap();
        c.expect(r.all_verified(), format!("cp restriction n={}: {:?}", n, r.summary));
    }
    c
}

fn to_big(rows: &[Vec<i64>], cols: usize) -> Matrix<BigInt> {
    Matrix::from_rows_with_cols(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
}

/// `|(Z/m)^2 / span(rows)|` by closure.
fn brute_quotient(rows: &[Vec<i64>], m: i64) -> usize {
    let mut seen = std::collections::BTreeSet::from([(0, 0)]);
    let mut frontier = vec![(0, 0)];
    while let Some((a, b)) = frontier.pop() {
        for r in rows {
            let w = ((a + r[0]).rem_euclid(m), (b + r[1]).rem_euclid(m));
            if seen.insert(w) {
                frontier.push(w);
            }
        }
    }
    (m * m) as usize / seen.len()
}

fn criterion_6(replayed: usize) -> Check {
    let mut c = Check::new();
    let dims = (1usize..=6, 1usize..=6);
    let snf = dims.prop_flat_map(|(r, k)| (Just(k), prop::collection::vec(prop::collection::vec(-9i64..=9, k), r)));
    let mut runner = TestRunner::new(Config { cases: SNF_CASES, failure_persistence: None, ..Config::default() });
    let res = runner.run(&snf, |(k, rows)| {
        let m = to_big(&rows, k);
        let s = smith_normal_form(&m);
        let zero = BigInt::from(0);
        let chain = s.diagonal().windows(2).all(|w| &w[1] % &w[0] == zero);
        prop_assert!(s.u.mul(&m).mul(&s.v) == s.d && s.d.is_diagonal() && chain);
        prop_assert!(s.u.mul(&s.u_inv) == Matrix::identity(m.rows()) && s.v.mul(&s.v_inv) == Matrix::identity(k));
        Ok(())
    });
    c.expect(res.is_ok(), format!("SNF reconstruction: {:?}", res.err()));

    let gens = prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 1..=3);
    let mut runner = TestRunner::new(Config { cases: COKERNEL_CASES, failure_persistence: None, ..Config::default() });
    let res = runner.run(&gens, |rows| {
        let g = quotient(2, &Matrix::from_rows_with_cols(rows.clone(), 2).transpose()).group;
        for m in 1..=12i64 {
            let mut formula = (m as usize).pow(g.rank() as u32);
            for d in g.factors() {
                formula *= gcd(m, *d) as usize;
            }
            prop_assert_eq!(brute_quotient(&rows, m), formula);
        }
        Ok(())
    });
    c.expect(res.is_ok(), format!("cokernel oracle: {:?}", res.err()));

    let mut hexagons = 0;
    for t in [sphere_tower::<i64>(8).unwrap(), cp_tower::<i64>(10).unwrap()] {
        for (n, sol) in &t.hexagons {
            hexagons += 1;
            c.expect(sol.euler_characteristic() == 0, format!("hexagon at level {}", n));
        }
    }
    let node = prop::option::of((0usize..=3).prop_map(FGAbelianGroup::<i64>::free));
    let shape = (prop::collection::vec(node, 6), prop::collection::btree_set(0usize..6, 0..3));
    let mut runner = TestRunner::new(Config { cases: HEXAGON_CASES, failure_persistence: None, ..Config::default() });
    let res = runner.run(&shape, |(nodes, zeros)| {
        let arr = std::array::from_fn(|k| nodes[k].clone());
        if let Ok(sol) = solve_sixterm(&SixTerm::from_pattern(arr, &zeros.into_iter().collect::<Vec<_>>())) {
            prop_assert_eq!(sol.euler_characteristic(), 0);
        }
        Ok(())
    });
    c.expect(res.is_ok() && hexagons > 0, format!("hexagon Euler: {:?}", res.err()));

    for n in 2..=8 {
        let a = ExtAlgebra::new(n);
        for &x in &a.basis() {
            for &y in &a.basis() {
                let (ex, ey) = (ExtElement::<i64>::basis(a, x), ExtElement::basis(a, y));
                let sign = if x.count_ones() % 2 == 1 && y.count_ones() % 2 == 1 { -1 } else { 1 };
                c.expect(ext_mul(&ex, &ey) == ext_mul(&ey, &ex).scale(&sign), format!("sign law n={}", n));
            }
        }
        let b = branching_morphism::<i64>(n, Boundary::Zero).unwrap();
        for &x in &a.basis() {
            let ex = ExtElement::basis(a, x);
            c.expect(tensor_map(&b, &hopf_comul(&ex)) == hopf_comul(&b.apply(&ex)), format!("Hopf n={}", n));
        }
    }
    let expected: usize = (2..=5usize).map(|n| 2 * n * n + n.pow(n as u32)).sum();
    c.expect(replayed == expected, format!("{}/{} certificates replayed", replayed, expected));
    c
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

fn criterion_7() -> Check {
    let mut c = Check::new();
    let w = corpus("towers/w.tower");
    let (status, r, _) = cli(&["verify", "hypothesis-b", "--tower", &w, "--window", "2..5"]);
    c.expect(status == 0, format!("w tower: exit {}", status));
    all_verified(&mut c, &r, "w tower");
    let naive = corpus("towers/su_q_naive.tower");
    let (status, r, _) = cli(&["verify", "hypothesis-b", "--tower", &naive, "--window", "2..5"]);
    c.expect(status == 1, format!("naive su_q: exit {}", status));
    c.expect(r["summary"]["refuted"].as_u64().unwrap_or(0) >= 1, format!("naive su_q: {}", r["summary"]));
    c
}

fn main() {
    let (c4, replayed) = criterion_4();
    let results = [
        (1, "sphere K-theory", criterion_1()),
        (2, "projective spaces", criterion_2()),
        (3, "SU tower", criterion_3()),
        (4, "symbolic suites", c4),
        (5, "homogeneous-space checks", criterion_5()),
        (6, "property suites", criterion_6(replayed)),
        (7, "hypothesis machinery", criterion_7()),
    ];
    let mut unexpected = Vec::new();
    for (k, name, check) in &results {
        let pass = check.notes.is_empty();
        let expected = EXPECTED_FAILURES.iter().find(|(e, _)| e == k);
        let timing = if check.timings.is_empty() { String::new() } else { format!(" ({})", check.timings.join(", ")) };
        println!("{} criterion {}: {}{}", if pass { "PASS" } else { "FAIL" }, k, name, timing);
        for note in &check.notes {
            println!("    {}", note);
        }
        match (pass, expected) {
            (false, Some((_, why))) => println!("    expected failure: {}", why),
            (false, None) => unexpected.push(format!("criterion {} failed", k)),
            (true, Some(_)) => unexpected.push(format!("criterion {} passed but is listed as an expected failure", k)),
            (true, None) => {}
        }
    }
    if !unexpected.is_empty() {
        eprintln!("{}", unexpected.join("\n"));
        std::process::exit(1);
    }
}
