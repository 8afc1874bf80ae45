//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde_json::Value;
use weilforge::algebra::{
    aux_prime_search, empirical_density, evaluate_conditions, evaluate_conditions_by_enumeration,
    two_sided_group, AuxPrimeCriteria,
};
use weilforge::arith::primes_up_to;
use weilforge::forge::{forge, DivisionAlgebraSpec};
use weilforge::honda_tate::{classify, Place};
use weilforge::quadfield::{
    class_group, class_number_by_generation, is_fundamental, is_norm, split_kind, SplitKind,
};
use weilforge::torsion_lab::{
    bezout_witness, check_decomposition, fixture_commuting_family, kernel, kernel_by_enumeration,
    kernel_intersection, multiplication_matrix, TorsionModule,
};
use weilforge::{QuadInt, QuadraticField, Rational};

const BIN: &str = env!("CARGO_BIN_EXE_weilforge");
const GRID_DISCS: [i64; 7] = [-4, -7, -8, -11, -20, -23, -24];

struct Verdict {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Verdict);

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn cli(args: &[&str], threads: Option<&str>) -> (i32, Vec<u8>, Vec<u8>) {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("WEILFORGE_SEARCH_BOUND");
    if let Some(t) = threads {
        cmd.env("RAYON_NUM_THREADS", t);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout, out.stderr)
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, stdout, stderr) = cli(&full, None);
    if code != 0 {
        return Err(format!("exit {code}: {}", String::from_utf8_lossy(&stderr).trim()));
    }
    serde_json::from_slice(&stdout).map_err(|e| e.to_string())
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let run = || -> Result<Vec<String>, String> {
        let forged = cli_json(&["forge", "--disc", "-7", "--p", "11", "--d", "3", "--j", "1"])?;
        let args = forged["result"]["classify_args"].as_str().ok_or("no classify_args")?.to_owned();
        let mut argv = vec!["classify"];
        argv.extend(args.split_whitespace());
        let rep = cli_json(&argv)?;
        let r = &rep["result"];
        let mut bad = Vec::new();
        let mut check = |name: &str, got: &Value, want: Value| {
            if *got != want {
                bad.push(format!("{name}: {got} != {want}"));
            }
        };
        check("dim", &r["dim"], 3.into());
        check("m_pi", &r["m_pi"], 3.into());
        check("p_rank", &r["p_rank"], 0.into());
        check("inv1", &r["hasse_invariants"]["p-adic-1"], "1/3".into());
        check("inv2", &r["hasse_invariants"]["p-adic-2"], "2/3".into());
        check("newton", &r["newton_polygon"]["text"], "{1/3x3, 2/3x3}".into());
        let expected = BigInt::from(1 - 44 + 1331).pow(3);
        check("point_count", &r["point_count"], expected.to_string().into());
        check("type", &r["type"], "IV(1,3)".into());
        Ok(bad)
    };
    let outcome = run();
    let elapsed = start.elapsed();
    match outcome {
        Ok(bad) if bad.is_empty() && elapsed < Duration::from_secs(1) => {
            verdict(true, format!("dim 3, m 3, invariants 1/3 2/3, point count 2136719872 in {elapsed:.2?}"))
        }
        Ok(bad) if bad.is_empty() => verdict(false, format!("correct but took {elapsed:.2?} (limit 1 s)")),
        Ok(bad) => verdict(false, bad.join("; ")),
        Err(e) => verdict(false, e),
    }
}

fn criterion_2() -> Verdict {
    let field = QuadraticField::new(-4).unwrap();
    let t = match is_norm(field, 5) {
        Ok(t) => t,
        Err(e) => return verdict(false, e.to_string()),
    };
    let Some(w) = t.witness.filter(|_| t.is_norm) else {
        return verdict(false, "5 reported as a non-norm");
    };
    let witness: QuadInt = w.convert();
    // 2 + i in the basis {1, i}: x = 4, y = 1 since i = sqrt(-4)/2.
    let two_plus_i = QuadInt::new(field, BigInt::from(4), BigInt::from(1)).unwrap();
    let module = TorsionModule::new(5, 2).unwrap();
    let k_witness = kernel(&multiplication_matrix(&witness, module).unwrap());
    let k_model = kernel(&multiplication_matrix(&two_plus_i, module).unwrap());
    let five = BigUint::from(5u32);
    let pass = witness.norm() == BigInt::from(5)
        && k_witness.order == five
        && k_witness.cyclic
        && k_model.order == five
        && k_model.cyclic;
    verdict(
        pass,
        format!(
            "witness {witness} of norm {}, ker(2+i mod 5) order {} cyclic {}",
            witness.norm(),
            k_model.order,
            k_model.cyclic
        ),
    )
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let primes = primes_up_to(500);
    let (mut cases, mut discrepancies) = (0u64, Vec::new());
    for disc in (1..=500).map(|d: i64| -d).filter(|&d| is_fundamental(d)) {
        let field = QuadraticField::new(disc).unwrap();
        for &l in &primes {
            if disc % l as i64 == 0 {
                continue;
            }
            cases += 1;
            match is_norm(field, l) {
                Ok(t) if t.routes.agree() => {}
                Ok(t) => discrepancies.push(format!("disc {disc} l {l}: {:?}", t.routes)),
                Err(e) => discrepancies.push(format!("disc {disc} l {l}: {e}")),
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = discrepancies.is_empty() && elapsed < Duration::from_secs(60);
    let mut detail = format!("{cases} cases, {} discrepancies, {elapsed:.2?}", discrepancies.len());
    if let Some(first) = discrepancies.first() {
        detail.push_str(&format!(" (first: {first})"));
    }
    verdict(pass, detail)
}

fn criterion_4() -> Verdict {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for disc in (1..=2000).map(|d: i64| -d).filter(|&d| is_fundamental(d)) {
        let field = QuadraticField::new(disc).unwrap();
        let by_enumeration = class_group(field).h();
        let by_composition = class_number_by_generation(field);
        checked += 1;
        if by_enumeration != by_composition {
            mismatches.push(format!("{disc}: {by_enumeration} vs {by_composition}"));
        }
    }
    let spots: Vec<(i64, u64)> = [(-4, 1), (-7, 1), (-20, 2), (-23, 3)]
        .into_iter()
        .map(|(d, _)| (d, class_group(QuadraticField::new(d).unwrap()).h()))
        .collect();
    let spots_ok = spots == [(-4, 1), (-7, 1), (-20, 2), (-23, 3)];
    verdict(
        mismatches.is_empty() && spots_ok,
        format!("{checked} discriminants, {} mismatches, spot values {spots:?}", mismatches.len()),
    )
}

fn grid() -> Vec<(QuadraticField, u64, u64, u64)> {
    let mut out = Vec::new();
    for disc in GRID_DISCS {
        let field = QuadraticField::new(disc).unwrap();
        for p in primes_up_to(50) {
            if split_kind(field, p) != SplitKind::Split {
                continue;
            }
            for d in [3u64, 4, 5, 7, 9] {
                for j in (1..d).filter(|&j| num_integer::gcd(j, d) == 1) {
                    out.push((field, p, d, j));
                }
            }
        }
    }
    out
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    let cases = grid();
    let mut failures = Vec::new();
    for &(field, p, d, j) in &cases {
        let ok = DivisionAlgebraSpec::new(field, p, d, j)
            .map_err(|e| e.to_string())
            .and_then(|spec| forge(&spec).map_err(|e| e.to_string()))
            .and_then(|f| classify(&f.weil).map_err(|e| e.to_string()))
            .map(|rep| {
                let invariants: BTreeSet<Rational> =
                    [rep.invariants.get(Place::PAdic1), rep.invariants.get(Place::PAdic2)].into();
                let want: BTreeSet<Rational> =
                    [Rational::new(j as i64, d as i64), Rational::new((d - j) as i64, d as i64)].into();
                rep.type_iv.is_some_and(|iv| iv.d == d && iv.j == j)
                    && invariants == want
                    && rep.absolutely_simple
                    && rep.p_rank == 0
            });
        if ok != Ok(true) {
            failures.push(format!("disc {} p {p} d {d} j {j}: {ok:?}", field.disc()));
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && !cases.is_empty() && elapsed < Duration::from_secs(120);
    let mut detail = format!(
        "{}/{} cases classify as IV(1,d), {elapsed:.2?}",
        cases.len() - failures.len(),
        cases.len()
    );
    if let Some(first) = failures.first() {
        detail.push_str(&format!(" (first failure: {first})"));
    }
    verdict(pass, detail)
}

fn criterion_6() -> Verdict {
    let cases = grid();
    let bad: Vec<_> = cases
        .iter()
        .filter(|&&(field, _, d, _)| {
            two_sided_group(field, d).order != class_number_by_generation(field) * d * d
        })
        .collect();
    verdict(bad.is_empty(), format!("{} grid cases, {} mismatches", cases.len(), bad.len()))
}

fn criterion_7() -> Verdict {
    let start = Instant::now();
    let crit = AuxPrimeCriteria::new(3, 11, vec![5], -7).unwrap();
    let hit = match aux_prime_search(&crit, 10_000) {
        Ok(h) => h,
        Err(e) => return verdict(false, format!("no prime below 10^4: {e}")),
    };
    let oracle = evaluate_conditions_by_enumeration(&crit, hit.p1);
    let flags_ok = oracle == hit.checks && oracle.all();
    // Every flag for every prime below the search bound, both routes.
    let sweep_mismatch = primes_up_to(10_000)
        .into_iter()
        .filter(|&p1| evaluate_conditions(&crit, p1) != evaluate_conditions_by_enumeration(&crit, p1))
        .count();
    let density = empirical_density(&crit, 100_000);
    let ratio = density.ratio_to_prediction();
    let elapsed = start.elapsed();
    let pass = flags_ok
        && sweep_mismatch == 0
        && (0.5..=2.0).contains(&ratio)
        && elapsed < Duration::from_secs(30);
    verdict(
        pass,
        format!(
            "p1 = {}, flags re-verified {flags_ok}, sweep mismatches {sweep_mismatch}, density {}/{} = {:.5} vs {} (ratio {ratio:.3}), {elapsed:.2?}",
            hit.p1,
            density.qualifying,
            density.conditioned,
            *density.empirical.numer() as f64 / *density.empirical.denom() as f64,
            density.predicted,
        ),
    )
}

fn criterion_8() -> Verdict {
    let mut families = Vec::new();
    let mut seed = 0;
    while families.len() < 200 {
        for l in [2u64, 3, 5, 7] {
            for d in [2usize, 3, 4] {
                for exp in [1u32, 2, 3] {
                    if families.len() < 200 {
                        families.push((l, exp, d, seed));
                    }
                }
            }
        }
        seed += 1;
    }
    let (mut built, mut bad_split, mut bezout_families, mut enumerated) = (0, 0, 0, 0);
    let mut counterexamples = Vec::new();
    for &(l, exp, d, seed) in &families {
        let fam = match fixture_commuting_family(l, exp, d, seed) {
            Ok(f) => f,
            Err(_) => {
                bad_split += 1;
                continue;
            }
        };
        built += 1;
        let tag = format!("l {l} N {exp} d {d} seed {seed}");
        let all_bezout = (0..fam.len()).all(|i| {
            (i + 1..fam.len()).all(|j| matches!(bezout_witness(&fam[i], &fam[j]), Ok(Some(_))))
        });
        if all_bezout {
            bezout_families += 1;
            let v = check_decomposition(&fam).unwrap();
            let trivial = (0..fam.len())
                .all(|i| (i + 1..fam.len()).all(|j| kernel_intersection(&fam[i], &fam[j]).order.is_one()));
            if v.product_kernel_order != v.product_of_kernel_orders || !trivial || !v.decomposition_holds {
                counterexamples.push(tag.clone());
            }
        }
        let module = fam[0].module();
        if (module.n() as f64).powi(module.rank() as i32) <= 5f64.powi(6) {
            enumerated += 1;
            for e in &fam {
                let (order, divs) = kernel_by_enumeration(e);
                let k = kernel(e);
                if BigUint::from(order) != k.order || divs != k.elementary_divisors {
                    counterexamples.push(format!("{tag}: enumeration {order} vs {}", k.order));
                }
            }
        }
    }
    let pass = counterexamples.is_empty() && bezout_families > 0;
    verdict(
        pass,
        format!(
            "{} families ({built} built, {bad_split} BadSplit), {bezout_families} pairwise Bezout, {enumerated} enumerated, {} counterexamples",
            families.len(),
            counterexamples.len()
        ),
    )
}

fn criterion_9() -> Verdict {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut cmds: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "cmd"))
        .collect();
    cmds.sort();
    let mut invocations: Vec<Vec<String>> = cmds
        .iter()
        .map(|p| {
            std::fs::read_to_string(p)
                .unwrap()
                .split_whitespace()
                .map(|t| match t.strip_prefix('@') {
                    Some(rel) => dir.join(rel).to_string_lossy().into_owned(),
                    None => t.to_owned(),
                })
                .collect()
        })
        .collect();
    // A larger search so the parallel paths see real work.
    invocations.push(
        "density --d 3 --p 11 --targets 5 --disc -7 --bound 100000"
            .split_whitespace()
            .map(str::to_owned)
            .collect(),
    );
    let mut differing = Vec::new();
    for args in &invocations {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let runs = [cli(&argv, None), cli(&argv, None), cli(&argv, Some("1")), cli(&argv, Some("4"))];
        if runs.iter().any(|r| *r != runs[0]) {
            differing.push(args.join(" "));
        }
    }
    verdict(
        differing.is_empty(),
        format!(
            "{} invocations x 4 runs (repeat, RAYON_NUM_THREADS 1 and 4), {} differ",
            invocations.len(),
            differing.len()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("running example reproduction", criterion_1),
        ("elliptic norm witness and cyclic kernel", criterion_2),
        ("three-way norm equivalence", criterion_3),
        ("class group oracle", criterion_4),
        ("forge/classify roundtrip", criterion_5),
        ("two-sided group order", criterion_6),
        ("auxiliary prime sieve and density", criterion_7),
        ("torsion decomposition", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let v = f();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!v.pass);
        println!("{tag} criterion {}: {name}: {}", i + 1, v.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
