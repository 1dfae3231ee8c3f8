//! One line per acceptance criterion, PASS or FAIL, with wall time.
//! Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use pi_witt::cli;
use pi_witt::delta::{ConstantBounds, DeltaContext, DEFAULT_ENUMERATION_BUDGET};
use pi_witt::harness::{
    preset, run_suite, sample_poly, HarnessRing, SampleBounds, SuiteConfig, VerifyReport,
};
use pi_witt::poly::{parse_poly, FrobLift, Poly};
use pi_witt::witt::{teichmuller, GhostVec, ResidueWittVec, WittOp, WittVec};
use pi_witt::Valuation;

type Check = Result<String, String>;

fn ring(label: &str) -> HarnessRing {
    preset(label).expect("shipped preset")
}

fn suite(
    name: &str,
    label: &str,
    trials: usize,
    tweak: impl Fn(SuiteConfig) -> SuiteConfig,
) -> Result<VerifyReport, String> {
    let cfg = tweak(
        SuiteConfig::new(name, ring(label))
            .with_seed(1)
            .with_trials(trials),
    );
    let report = run_suite(&cfg).map_err(|e| format!("{name} on {label}: {e}"))?;
    if report.passed() {
        Ok(report)
    } else {
        let f = &report.failures[0];
        Err(format!(
            "{name} on {label}: {} of {} trials failed; first at trial {} [{}]: expected {}, got {}",
            report.failures.len(),
            report.trials,
            f.trial,
            f.inputs.join("; "),
            f.expected,
            f.actual
        ))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let labels = ["f2t-u", "z2-u", "z3-u"];
    let mut pairs = 0;
    for label in labels {
        let r = suite("ghost_hom", label, 500, |c| c.with_n_max(4))?;
        pairs += r.trials;
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("{pairs} pairs over {}, n ≤ 4", labels.join(", ")))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let f2t = pi_witt::cli::parse_config("[ring]\nkind = \"equal-char\"\np = 2\n", "f2t")
        .map_err(|e| e.to_string())?;
    let t = parse_poly(f2t.alg(), "t").map_err(|e| e.to_string())?;
    let exp = f2t.ctx().exp_delta(&t, 2).map_err(|e| e.to_string())?;
    ensure(exp.to_string() == "(t, 1+t, t+t^2)", || {
        format!("exp_δ(t) = {exp}")
    })?;
    let explicit = f2t
        .ctx()
        .p_sequence_explicit(&t, 2)
        .map_err(|e| e.to_string())?;
    ensure(explicit == exp.components(), || {
        "explicit recursion disagrees on t".into()
    })?;
    for label in ["f2t-u", "z2-u", "z3-u"] {
        suite("explicit_recursion", label, 200, |c| c.with_n_max(4))?;
    }
    within(Duration::from_secs(30), start)?;
    Ok("200 samples each on f2t-u, z2-u, z3-u; exp_δ(t) = (t, 1+t, t+t^2)".into())
}

fn criterion_3() -> Check {
    let f2t = pi_witt::cli::parse_config("[ring]\nkind = \"equal-char\"\np = 2\n", "f2t")
        .map_err(|e| e.to_string())?;
    let t2 = parse_poly(f2t.alg(), "t^2").map_err(|e| e.to_string())?;
    let exp = f2t.ctx().exp_delta(&t2, 2).map_err(|e| e.to_string())?;
    let p2 = &exp.components()[2];
    ensure(
        p2.to_string() == "1+t+t^5+t^6" && p2.v_pi() == Valuation::Finite(0),
        || format!("P_2(t^2) = {p2}, v = {}", p2.v_pi()),
    )?;
    for label in ["f2t-u", "z2-u"] {
        suite("thm_val", label, 1000, |c| c.with_m_max(5))?;
    }
    Ok("200 samples per m in 1..=5 on f2t-u and z2-u; P_2(t^2) = 1+t+t^5+t^6".into())
}

fn criterion_4() -> Check {
    let labels = ["f2t-u", "z2-u", "z3-u", "zi-u"];
    for label in labels {
        suite("modinj", label, 400, |c| c.with_n_max(4))?;
    }
    Ok(format!(
        "200 samples per direction on {}",
        labels.join(", ")
    ))
}

fn criterion_5() -> Check {
    let labels = ["z2-u", "z3-u", "zi-u"];
    for label in labels {
        suite("lij_valuations", label, 100, |c| c)?;
    }
    Ok(format!("100 samples each on {}", labels.join(", ")))
}

fn criterion_6() -> Check {
    let base = ring("f2t-u");
    let alg = base.alg();
    let u = Poly::generator(alg, 0);
    for m in 1..=3u32 {
        let phi = parse_poly(alg, &format!("u^2 + t^{}", m + 1)).map_err(|e| e.to_string())?;
        let ctx = DeltaContext::new(FrobLift::new(alg, vec![phi]).map_err(|e| e.to_string())?);
        let exp = ctx
            .exp_delta(&u, m as usize + 1)
            .map_err(|e| e.to_string())?;
        for n in 1..=m as usize + 1 {
            let v = exp.components()[n].v_pi();
            ensure(v == Valuation::Finite(m + 1 - n as u32), || {
                format!("m={m}: v(P_{n}(u)) = {v}")
            })?;
        }
        if m == 2 {
            let (p2, p3) = (&exp.components()[2], &exp.components()[3]);
            ensure(p2.to_string() == "t+t^3+t^4", || format!("P_2(u) = {p2}"))?;
            ensure(p3.to_string() == "1+t+t^3+t^5+t^6+t^7+t^9", || {
                format!("P_3(u) = {p3}")
            })?;
        }
    }
    suite("modpip", "f2t-u", 100, |c| c)?;
    Ok("m = 1, 2, 3 with φ(u) = u^2 + t^(m+1); P_2, P_3 fixed values; 100 perturbed lifts".into())
}

fn constant_set(r: &HarnessRing, bounds: &str) -> Result<BTreeSet<String>, String> {
    let b = ConstantBounds::parse(r.alg().names(), bounds).map_err(|e| e.to_string())?;
    let found = r
        .ctx()
        .enumerate_constants(&b, DEFAULT_ENUMERATION_BUDGET)
        .map_err(|e| e.to_string())?;
    Ok(found.iter().map(Poly::to_string).collect())
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let f2t = pi_witt::cli::parse_config("[ring]\nkind = \"equal-char\"\np = 2\n", "f2t")
        .map_err(|e| e.to_string())?;
    let got = constant_set(&f2t, "t=8")?;
    let want: BTreeSet<String> = ["0", "1"].map(String::from).into();
    ensure(got == want, || format!("F_2[t]: {got:?}"))?;

    let f2tu = ring("f2t-u");
    let got = constant_set(&f2tu, "u=2,t=2")?;
    let mut want = BTreeSet::new();
    for mask in 0u32..8 {
        let text: Vec<String> = (0..3)
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| format!("u^{k}"))
            .collect();
        let text = if text.is_empty() {
            "0".to_string()
        } else {
            text.join(" + ")
        };
        want.insert(
            parse_poly(f2tu.alg(), &text)
                .map_err(|e| e.to_string())?
                .to_string(),
        );
    }
    ensure(got == want, || format!("F_2[t][u]: {got:?}"))?;

    let f4t = pi_witt::cli::parse_config(
        "[ring]\nkind = \"equal-char\"\np = 2\nh = 2\nmodulus = \"z^2 + z + 1\"\n",
        "f4t",
    )
    .map_err(|e| e.to_string())?;
    let got = constant_set(&f4t, "t=4")?;
    let want: BTreeSet<String> = ["0", "1", "z", "1+z"].map(String::from).into();
    ensure(got == want, || format!("F_4[t]: {got:?}"))?;
    within(Duration::from_secs(60), start)?;
    Ok("F_2[t] deg ≤ 8 → {0,1}; F_2[t][u] → F_2-polynomials in u; F_4[t] deg ≤ 4 → F_4".into())
}

fn criterion_8() -> Check {
    for label in ["f2t-u", "f4t-u"] {
        suite("sadhu_finite", label, 200, |c| c)?;
        suite("allzero", label, 100, |c| c.with_n_max(4))?;
    }
    Ok("100 constants and 100 non-constants on f2t-u and f4t-u; allzero 100 samples".into())
}

fn criterion_9() -> Check {
    let bounds = SampleBounds::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for label in ["f2t-u", "f4t-u"] {
        let r = ring(label);
        let alg = r.alg();
        for _ in 0..50 {
            let n = rng.gen_range(0..=3usize);
            let xs: Vec<Poly> = (0..=n)
                .map(|_| sample_poly(&mut rng, alg, &bounds))
                .collect();
            let ys: Vec<Poly> = (0..=n)
                .map(|_| sample_poly(&mut rng, alg, &bounds))
                .collect();
            let x = WittVec::new(alg, xs.clone()).map_err(|e| e.to_string())?;
            let y = WittVec::new(alg, ys.clone()).map_err(|e| e.to_string())?;
            let sum = x.add(&y).map_err(|e| e.to_string())?;
            let componentwise: Vec<Poly> = xs.iter().zip(&ys).map(|(a, b)| a + b).collect();
            ensure(sum.components() == componentwise, || {
                format!("{label}: {x} + {y} = {sum}")
            })?;

            let (rx, ry) = (x.to_residue(), y.to_residue());
            let rsum = rx.arith(&ry, WittOp::Add).map_err(|e| e.to_string())?;
            let rcw: Vec<_> = rx
                .components()
                .iter()
                .zip(ry.components())
                .map(|(a, b)| a.add(b))
                .collect();
            ensure(rsum == ResidueWittVec::from_components(rcw), || {
                format!("{label}: residue sum {rsum}")
            })?;

            let (a, b) = (&xs[0], &ys[0]);
            let (ta, tb) = (teichmuller(a, n), teichmuller(b, n));
            ensure(
                ta.add(&tb).map_err(|e| e.to_string())? == teichmuller(&(a + b), n),
                || format!("{label}: θ not additive at {a}, {b}"),
            )?;
            ensure(
                ta.mul(&tb).map_err(|e| e.to_string())? == teichmuller(&(a * b), n),
                || format!("{label}: θ not multiplicative at {a}, {b}"),
            )?;
        }
    }
    let z2 = pi_witt::cli::parse_config("[ring]\nkind = \"mixed-char\"\np = 2\n", "z2")
        .map_err(|e| e.to_string())?;
    let one = teichmuller(&Poly::one(z2.alg()), 1);
    let two = one.add(&one).map_err(|e| e.to_string())?;
    let theta_two = teichmuller(&Poly::from_int(z2.alg(), 2), 1);
    ensure(two.to_string() == "(2, -1)" && two != theta_two, || {
        format!("θ(1) + θ(1) = {two}")
    })?;
    let three = teichmuller(&Poly::from_int(z2.alg(), 3), 1);
    let prod = theta_two.mul(&three).map_err(|e| e.to_string())?;
    ensure(prod == teichmuller(&Poly::from_int(z2.alg(), 6), 1), || {
        format!("θ(2)θ(3) = {prod}")
    })?;
    let ghost =
        GhostVec::new(z2.alg(), two.ghost().components().to_vec()).map_err(|e| e.to_string())?;
    ensure(ghost.unghost().map_err(|e| e.to_string())? == two, || {
        "unghost round trip".into()
    })?;
    Ok("componentwise addition in W_n(A) and W_n(A_0); θ additive in equal char; (2, -1) ≠ θ(2) over Z".into())
}

fn strip_timing(mut v: Value) -> Value {
    if let Value::Array(items) = &mut v {
        for item in items {
            if let Value::Object(map) = item {
                map.remove("wall_time_ms");
            }
        }
    }
    v
}

fn criterion_10() -> Check {
    let start = Instant::now();
    let first = cli::run(["pi-witt", "verify", "all", "--seed", "1", "--json"]);
    within(Duration::from_secs(60), start)?;
    let second = cli::run(["pi-witt", "verify", "all", "--seed", "1", "--json"]);
    ensure(first.code == 0 && second.code == 0, || {
        format!(
            "exit codes {} and {}: {}",
            first.code, second.code, first.stderr
        )
    })?;
    let parse = |s: &str| serde_json::from_str::<Value>(s).map_err(|e| e.to_string());
    let (a, b) = (
        strip_timing(parse(&first.stdout)?),
        strip_timing(parse(&second.stdout)?),
    );
    let (a, b) = (a.to_string(), b.to_string());
    ensure(a == b, || "the two runs differ".into())?;
    let count = parse(&first.stdout)?.as_array().map_or(0, Vec::len);
    Ok(format!(
        "{count} reports, identical without timing, {} bytes",
        a.len()
    ))
}

fn main() {
    let criteria: [(u32, fn() -> Check); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = Vec::new();
    for (k, check) in criteria {
        let start = Instant::now();
        let result = check();
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("PASS criterion {k}: {detail} ({ms} ms)"),
            Err(why) => {
                println!("FAIL criterion {k}: {why} ({ms} ms)");
                failed.push(k);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
