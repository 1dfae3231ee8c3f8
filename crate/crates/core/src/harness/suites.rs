use std::fmt::Display;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::sample::{sample_nonzero, sample_poly, sample_unit_content, sample_with_valuation};
use super::{Fault, Mismatch, SuiteConfig};
use crate::coeff::{BElem, RingKind};
use crate::delta::{ConstantBounds, DeltaContext, DEFAULT_ENUMERATION_BUDGET};
use crate::error::{Error, Result, Valuation};
use crate::poly::{c_pi, FrobLift, Poly, PolyAlg};
use crate::witt::{
    structure_map, teichmuller, universal_polys, GhostVec, ResidueWittVec, UniversalOp, WittOp,
    WittVec,
};

type Outcome = std::result::Result<(), Mismatch>;

trait WithInputs<T> {
    fn with(self, inputs: &[String]) -> std::result::Result<T, Mismatch>;
}

impl<T> WithInputs<T> for Result<T> {
    fn with(self, inputs: &[String]) -> std::result::Result<T, Mismatch> {
        self.map_err(|e| Mismatch {
            inputs: inputs.to_vec(),
            expected: "no error".into(),
            actual: e.to_string(),
        })
    }
}

fn expect_eq<T: PartialEq + Display>(
    inputs: &[String],
    what: &str,
    expected: &T,
    actual: &T,
) -> Outcome {
    if expected == actual {
        Ok(())
    } else {
        Err(Mismatch {
            inputs: inputs.to_vec(),
            expected: format!("{what} = {expected}"),
            actual: format!("{what} = {actual}"),
        })
    }
}

fn expect(inputs: &[String], cond: bool, expected: impl Display, actual: impl Display) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(Mismatch {
            inputs: inputs.to_vec(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        })
    }
}

/// Highest truncation level a suite reaches; feeds the cost estimate.
pub(super) fn max_level(cfg: &SuiteConfig) -> usize {
    match cfg.suite.as_str() {
        "thm_val" | "lij_valuations" => cfg.m_max as usize,
        "modpip" | "sadhu_finite" => 4,
        "constants_descent" => 1,
        _ => cfg.n_max,
    }
}

pub(super) fn exhaustive_trials(cfg: &SuiteConfig) -> usize {
    match cfg.suite.as_str() {
        "constants_descent" => 2,
        _ => cfg.trials,
    }
}

pub(super) fn run(cfg: &SuiteConfig, trial: usize, rng: &mut ChaCha8Rng) -> Outcome {
    match cfg.suite.as_str() {
        "ghost_hom" => ghost_hom(cfg, rng),
        "frobenius_diagram" => frobenius_diagram(cfg, rng),
        "universal_poly_oracle" => universal_poly_oracle(cfg, rng),
        "lift_independence" => lift_independence(cfg, rng),
        "teichmuller" => teichmuller_suite(cfg, rng),
        "delta_axioms" => delta_axioms(cfg, rng),
        "lemma_one" => lemma_one(cfg, rng),
        "explicit_recursion" => explicit_recursion(cfg, rng),
        "lij_valuations" => lij_valuations(cfg, trial, rng),
        "thm_val" => thm_val(cfg, trial, rng),
        "modinj" => modinj(cfg, trial, rng),
        "topology" => topology(cfg, rng),
        "allzero" => allzero(cfg, rng),
        "modpip" => modpip(cfg, trial, rng),
        "sadhu_finite" => sadhu_finite(cfg, trial, rng),
        "constants_descent" => constants_descent(cfg, trial),
        "exp_hom" => exp_hom(cfg, rng),
        other => Err(Error::UnknownSuite(other.to_string()).into()),
    }
}

fn ctx(cfg: &SuiteConfig) -> &DeltaContext {
    cfg.ring.ctx()
}

fn alg(cfg: &SuiteConfig) -> &Arc<PolyAlg> {
    cfg.ring.alg()
}

fn sample_witt(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, n: usize) -> WittVec {
    let comps = (0..=n)
        .map(|_| sample_poly(rng, alg(cfg), &cfg.bounds))
        .collect();
    WittVec::new(alg(cfg), comps).expect("sampled components share the algebra")
}

fn pick_op(rng: &mut ChaCha8Rng, ops: &[WittOp]) -> WittOp {
    ops[rng.gen_range(0..ops.len())]
}

fn ghost_op(a: &GhostVec, b: &GhostVec, op: WittOp) -> Result<GhostVec> {
    let comps = a
        .components()
        .iter()
        .zip(b.components())
        .map(|(x, y)| match op {
            WittOp::Add => x + y,
            WittOp::Sub => x - y,
            WittOp::Mul => x * y,
            WittOp::Neg => -x,
        })
        .collect();
    GhostVec::new(a.alg(), comps)
}

/// A random element with δ = 0. Under the standard lift the monomials
/// u^α (times 𝔽_q-scalars in equal characteristic, times ±1 for odd p)
/// are constants; otherwise only the constants of B are used.
fn sample_constant(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Poly {
    let a = alg(cfg);
    let ring = a.ring();
    let standard = ctx(cfg).frobenius().is_standard();
    let m = a.num_generators();
    let scalar = |rng: &mut ChaCha8Rng| -> BElem {
        match ring.kind() {
            RingKind::EqualChar => {
                let c = ring
                    .residue_field()
                    .from_index(rng.gen_range(0..ring.q()))
                    .expect("below q");
                ring.section(c)
            }
            _ => {
                let choices: &[i64] = if ring.kind() == RingKind::MixedChar && ring.p() % 2 == 1 {
                    &[0, 1, -1]
                } else {
                    &[0, 1]
                };
                ring.from_int(choices[rng.gen_range(0..choices.len())])
            }
        }
    };
    if !standard {
        return Poly::constant(a, scalar(rng));
    }
    if ring.is_equal_char() {
        let terms: Vec<(Vec<u32>, BElem)> = (0..cfg.bounds.max_terms.max(1))
            .map(|_| {
                let exps = (0..m)
                    .map(|_| rng.gen_range(0..=cfg.bounds.max_degree))
                    .collect();
                (exps, scalar(rng))
            })
            .collect();
        Poly::from_terms(a, terms).expect("terms fit")
    } else {
        let exps = (0..m)
            .map(|_| rng.gen_range(0..=cfg.bounds.max_degree))
            .collect();
        Poly::from_terms(a, [(exps, scalar(rng))]).expect("term fits")
    }
}

fn ghost_hom(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(0..=cfg.n_max);
    let x = sample_witt(cfg, rng, n);
    let y = sample_witt(cfg, rng, n);
    let op = pick_op(rng, &[WittOp::Add, WittOp::Sub, WittOp::Mul]);
    let inputs = vec![
        format!("n={n}"),
        format!("op={op:?}"),
        x.to_string(),
        y.to_string(),
    ];
    let z = x.arith(&y, op).with(&inputs)?;
    let expected = ghost_op(&x.ghost(), &y.ghost(), op).with(&inputs)?;
    expect_eq(&inputs, "ghost(x op y)", &expected, &z.ghost())?;
    let back = x.ghost().unghost().with(&inputs)?;
    expect_eq(&inputs, "unghost(ghost(x))", &x, &back)?;
    let neg = x.neg();
    expect_eq(
        &inputs,
        "x + (-x)",
        &WittVec::zero(alg(cfg), n),
        &x.add(&neg).with(&inputs)?,
    )
}

fn frobenius_diagram(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(1..=cfg.n_max.max(1));
    let x = sample_witt(cfg, rng, n);
    let y = sample_witt(cfg, rng, n);
    let inputs = vec![format!("n={n}"), x.to_string(), y.to_string()];
    let fx = x.frobenius().with(&inputs)?;
    let fy = y.frobenius().with(&inputs)?;
    expect_eq(
        &inputs,
        "ghost(F(x))",
        &x.ghost().shift().with(&inputs)?,
        &fx.ghost(),
    )?;
    for op in [WittOp::Add, WittOp::Mul] {
        let lhs = x.arith(&y, op).with(&inputs)?.frobenius().with(&inputs)?;
        let rhs = fx.arith(&fy, op).with(&inputs)?;
        expect_eq(&inputs, &format!("F(x {op:?} y)"), &rhs, &lhs)?;
    }
    if n >= 2 {
        let tf = fx.restrict().with(&inputs)?;
        let ft = x.restrict().with(&inputs)?.frobenius().with(&inputs)?;
        expect_eq(&inputs, "T(F(x))", &ft, &tf)?;
    }
    Ok(())
}

fn universal_poly_oracle(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(0..=cfg.n_max);
    let (uop, op) = if rng.gen_bool(0.5) {
        (UniversalOp::Add, WittOp::Add)
    } else {
        (UniversalOp::Mul, WittOp::Mul)
    };
    let x = sample_witt(cfg, rng, n);
    let y = sample_witt(cfg, rng, n);
    let inputs = vec![
        format!("n={n}"),
        format!("op={op:?}"),
        x.to_string(),
        y.to_string(),
    ];
    let polys = universal_polys(cfg.ring.ring(), n, uop, n).with(&inputs)?;
    let via_polys = polys.evaluate(&x, &y).with(&inputs)?;
    let direct = x.arith(&y, op).with(&inputs)?;
    expect_eq(&inputs, "x op y", &direct, &via_polys)?;
    if cfg.ring.ring().is_equal_char() && uop == UniversalOp::Add {
        for (i, s) in polys.polys().iter().enumerate() {
            let linear =
                &Poly::generator(polys.alg(), i) + &Poly::generator(polys.alg(), n + 1 + i);
            expect_eq(&inputs, &format!("S_{i}"), &linear, s)?;
        }
    }
    Ok(())
}

fn lift_independence(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(0..=cfg.n_max);
    let xb = sample_witt(cfg, rng, n).to_residue();
    let yb = sample_witt(cfg, rng, n).to_residue();
    let op = pick_op(rng, &[WittOp::Add, WittOp::Mul]);
    let inputs = vec![
        format!("n={n}"),
        format!("op={op:?}"),
        xb.to_string(),
        yb.to_string(),
    ];
    let perturb = |v: &ResidueWittVec, rng: &mut ChaCha8Rng| -> WittVec {
        let comps = v
            .lift()
            .components()
            .iter()
            .map(|c| c + &sample_poly(rng, alg(cfg), &cfg.bounds).mul_pi_pow(1))
            .collect();
        WittVec::new(alg(cfg), comps).expect("same algebra")
    };
    let canonical = xb.arith(&yb, op).with(&inputs)?;
    for _ in 0..2 {
        let xl = perturb(&xb, rng);
        let yl = perturb(&yb, rng);
        let other = xl.arith(&yl, op).with(&inputs)?.to_residue();
        let mut with_lifts = inputs.clone();
        with_lifts.push(format!("lifts {xl} {yl}"));
        expect_eq(&with_lifts, "reduced result", &canonical, &other)?;
    }
    if cfg.ring.ring().is_equal_char() && op == WittOp::Add {
        let comps = xb
            .components()
            .iter()
            .zip(yb.components())
            .map(|(a, b)| a.add(b))
            .collect();
        expect_eq(
            &inputs,
            "x + y",
            &ResidueWittVec::from_components(comps),
            &canonical,
        )?;
    }
    Ok(())
}

fn teichmuller_suite(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(0..=cfg.n_max);
    let a = sample_poly(rng, alg(cfg), &cfg.bounds);
    let b = sample_poly(rng, alg(cfg), &cfg.bounds);
    let inputs = vec![format!("n={n}"), a.to_string(), b.to_string()];
    let (ta, tb) = (teichmuller(&a, n), teichmuller(&b, n));
    expect_eq(
        &inputs,
        "θ(a)θ(b)",
        &teichmuller(&(&a * &b), n),
        &ta.mul(&tb).with(&inputs)?,
    )?;
    let sum = ta.add(&tb).with(&inputs)?;
    if n >= 1 {
        expect_eq(
            &inputs,
            "(θ(a) + θ(b))_1",
            &c_pi(&a, &b),
            &sum.components()[1],
        )?;
    }
    if cfg.ring.ring().is_equal_char() {
        expect_eq(&inputs, "θ(a) + θ(b)", &teichmuller(&(&a + &b), n), &sum)?;
    } else {
        let one = teichmuller(&Poly::one(alg(cfg)), 1);
        let two = one.add(&one).with(&inputs)?;
        let theta_two = teichmuller(&Poly::from_int(alg(cfg), 2), 1);
        expect(
            &inputs,
            two != theta_two,
            "θ(1) + θ(1) ≠ θ(2)",
            format!("{two} = {theta_two}"),
        )?;
    }
    Ok(())
}

fn delta_axioms(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let c = ctx(cfg);
    let f = sample_poly(rng, alg(cfg), &cfg.bounds);
    let g = sample_poly(rng, alg(cfg), &cfg.bounds);
    let inputs = vec![f.to_string(), g.to_string()];
    let (df, dg) = (c.delta(&f), c.delta(&g));
    let add_rhs = &(&df + &dg) + &c_pi(&f, &g);
    expect_eq(&inputs, "δ(f+g)", &add_rhs, &c.delta(&(&f + &g)))?;
    let mul_rhs = &(&(&f.pow_q() * &dg) + &(&g.pow_q() * &df)) + &(&df * &dg).mul_pi_pow(1);
    expect_eq(&inputs, "δ(fg)", &mul_rhs, &c.delta(&(&f * &g)))?;
    expect_eq(
        &inputs,
        "residue(φ(f))",
        &f.to_residue().pow(cfg.ring.ring().q() as u64),
        &c.phi(&f).to_residue(),
    )?;

    let ring = cfg.ring.ring();
    let a = super::sample::sample_coeff(rng, ring, &cfg.bounds);
    let b = super::sample::sample_coeff(rng, ring, &cfg.bounds);
    let pa = Poly::constant(alg(cfg), a.clone());
    let pb = Poly::constant(alg(cfg), b.clone());
    let inputs = vec![pa.to_string(), pb.to_string()];
    expect_eq(
        &inputs,
        "δ_B(a)",
        &c.delta(&pa),
        &Poly::constant(alg(cfg), ring.delta(&a)),
    )?;
    expect_eq(
        &inputs,
        "C_π(a, b)",
        &c_pi(&pa, &pb),
        &Poly::constant(alg(cfg), ring.c_pi(&a, &b)),
    )?;
    let da = ring.delta(&a);
    let db = ring.delta(&b);
    let q = ring.q() as u64;
    let lhs = ring.delta(&ring.mul(&a, &b));
    let rhs = ring.add(
        &ring.add(
            &ring.mul(&ring.pow(&a, q), &db),
            &ring.mul(&ring.pow(&b, q), &da),
        ),
        &ring.mul_pi_pow(&ring.mul(&da, &db), 1),
    );
    expect_eq(
        &inputs,
        "δ_B(ab)",
        &Poly::constant(alg(cfg), rhs),
        &Poly::constant(alg(cfg), lhs),
    )
}

fn lemma_one(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let k = rng.gen_range(1..=3u32);
    let f = sample_with_valuation(rng, alg(cfg), &cfg.bounds, k);
    let inputs = vec![format!("v(f)={k}"), f.to_string()];
    let df = ctx(cfg).delta(&f);
    expect_eq(&inputs, "v(δf)", &Valuation::Finite(k - 1), &df.v_pi())
}

fn explicit_recursion(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(1..=cfg.n_max.max(1));
    let x = sample_poly(rng, alg(cfg), &cfg.bounds);
    let inputs = vec![format!("n={n}"), x.to_string()];
    let seq = ctx(cfg).p_sequence_explicit(&x, n).with(&inputs)?;
    let exp = ctx(cfg).exp_delta(&x, n).with(&inputs)?;
    for (k, (a, b)) in exp.components().iter().zip(&seq).enumerate() {
        expect_eq(&inputs, &format!("P_{k}"), a, b)?;
    }
    Ok(())
}

/// e·v_p(j), the π-adic valuation of the integer j.
fn v_pi_int(j: u64, p: u64, e: u32) -> i64 {
    let mut j = j;
    let mut v = 0;
    while j.is_multiple_of(p) {
        j /= p;
        v += 1;
    }
    v * e as i64
}

fn lij_valuations(cfg: &SuiteConfig, trial: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let ring = cfg.ring.ring();
    let (q, p, e, h) = (ring.q() as i64, ring.p() as u64, ring.e(), ring.h() as i64);
    let m = 1 + (trial as u32 % cfg.m_max.max(1));
    let n = rng.gen_range(1..=(m as usize).min(cfg.n_max.max(1)));
    let x = sample_with_valuation(rng, alg(cfg), &cfg.bounds, m);
    let inputs = vec![format!("m={m}"), format!("n={n}"), x.to_string()];
    let exp = ctx(cfg).exp_delta(&x, n).with(&inputs)?;
    for (i, p_i) in exp.components()[..n].iter().enumerate() {
        expect_eq(
            &inputs,
            &format!("hypothesis v(P_{i})"),
            &Valuation::Finite(m - i as u32),
            &p_i.v_pi(),
        )?;
    }
    let table = ctx(cfg).term_decomposition(&x, n).with(&inputs)?;
    expect_eq(&inputs, "Σ S_i", &exp.components()[n], table.total())?;
    let (m, n_i) = (m as i64, n as i64);
    for entry in table.entries() {
        let i = entry.i as i64;
        let j = entry.j;
        let big_n = q.pow((n_i - 1 - i) as u32) as u64;
        if ring.is_equal_char() && j != big_n {
            expect_eq(
                &inputs,
                &format!("v(L_{i},{j})"),
                &Valuation::Infinite,
                &entry.valuation,
            )?;
            continue;
        }
        let formula = i - n_i + (n_i - 1 - i) * e as i64 * h + (m - i) * q.pow((n_i - i) as u32)
            - (m - i) * (q - 1) * j as i64
            - v_pi_int(j, p, e);
        expect_eq(
            &inputs,
            &format!("v(L_{i},{j})"),
            &Valuation::Finite(formula as u32),
            &entry.valuation,
        )?;
    }
    for i in 0..n {
        let il = i as i64;
        let formula = q.pow((n_i - 1 - il) as u32) * (m - il) - n_i + il;
        let (_, v) = table.sum(i).expect("sum recorded");
        expect_eq(
            &inputs,
            &format!("v(S_{i})"),
            &Valuation::Finite(formula as u32),
            &v,
        )?;
    }
    Ok(())
}

fn thm_val(cfg: &SuiteConfig, trial: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let m = 1 + (trial as u32 % cfg.m_max.max(1));
    let x = sample_with_valuation(rng, alg(cfg), &cfg.bounds, m);
    let inputs = vec![format!("m={m}"), x.to_string()];
    let exp = ctx(cfg).exp_delta(&x, m as usize).with(&inputs)?;
    for (n, p_n) in exp.components().iter().enumerate() {
        expect_eq(
            &inputs,
            &format!("v(P_{n})"),
            &Valuation::Finite(m - n as u32),
            &p_n.v_pi(),
        )?;
    }
    Ok(())
}

fn taylor(cfg: &SuiteConfig, x: &Poly, n: usize) -> Result<ResidueWittVec> {
    match cfg.fault {
        None => ctx(cfg).taylor_expand(x, n),
        Some(Fault::TruncateTaylor) => {
            if n == 0 {
                return Ok(ResidueWittVec::zero(alg(cfg), 0));
            }
            let short = ctx(cfg).taylor_expand(x, n - 1)?;
            let mut comps = short.components().to_vec();
            comps.push(crate::poly::ResiduePoly::zero(alg(cfg)));
            Ok(ResidueWittVec::from_components(comps))
        }
    }
}

fn modinj(cfg: &SuiteConfig, trial: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(0..=cfg.n_max);
    if trial.is_multiple_of(2) {
        let extra = rng.gen_range(0..=1u32);
        let y = sample_nonzero(rng, alg(cfg), &cfg.bounds);
        let x = y.mul_pi_pow(n as u32 + 1 + extra);
        let inputs = vec![format!("n={n}"), x.to_string()];
        let t = taylor(cfg, &x, n).with(&inputs)?;
        expect(&inputs, t.is_zero(), "Taylor expansion 0", t)
    } else {
        let k = rng.gen_range(0..=n as u32);
        let x = sample_with_valuation(rng, alg(cfg), &cfg.bounds, k);
        let inputs = vec![format!("n={n}"), x.to_string()];
        let t = taylor(cfg, &x, n).with(&inputs)?;
        expect(
            &inputs,
            !t.is_zero(),
            format!("nonzero Taylor expansion since v(x) = {k} ≤ {n}"),
            t,
        )
    }
}

fn topology(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(0..=cfg.n_max);
    let k = rng.gen_range(0..=n as u32 + 1);
    let x = sample_with_valuation(rng, alg(cfg), &cfg.bounds, k);
    let inputs = vec![format!("n={n}"), format!("v(x)={k}"), x.to_string()];
    let t = taylor(cfg, &x, n).with(&inputs)?;
    for j in 0..=n {
        let member = t.in_ideal(j).with(&inputs)?;
        expect(
            &inputs,
            member == (k as usize >= j),
            format!("membership in I_{j} = {}", k as usize >= j),
            format!("membership in I_{j} = {member} for {t}"),
        )?;
    }
    Ok(())
}

fn allzero(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(1..=cfg.n_max.max(1));
    let c = sample_constant(cfg, rng);
    let inputs = vec![format!("n={n}"), c.to_string()];
    expect(
        &inputs,
        ctx(cfg).is_constant(&c),
        "δc = 0",
        ctx(cfg).delta(&c),
    )?;
    let exp = ctx(cfg).exp_delta(&c, n).with(&inputs)?;
    let seq = ctx(cfg).p_sequence_explicit(&c, n).with(&inputs)?;
    for (k, (p_k, explicit)) in exp.components().iter().zip(&seq).enumerate().skip(1) {
        expect(&inputs, p_k.is_zero(), format!("P_{k} = 0"), p_k)?;
        expect(
            &inputs,
            explicit.is_zero(),
            format!("explicit P_{k} = 0"),
            explicit,
        )?;
    }
    Ok(())
}

fn modpip(cfg: &SuiteConfig, trial: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let a = alg(cfg);
    let m = 1 + (trial % 3) as u32;
    let g = if trial < 3 {
        Poly::one(a)
    } else {
        sample_unit_content(rng, a, &cfg.bounds)
    };
    let u = Poly::generator(a, 0);
    let mut images = ctx(cfg).frobenius().images().to_vec();
    images[0] = &u.pow_q() + &g.mul_pi_pow(m + 1);
    let inputs = vec![
        format!("m={m}"),
        format!("phi({}) = {}", a.names()[0], images[0]),
    ];
    let local = DeltaContext::new(FrobLift::new(a, images).with(&inputs)?);
    expect_eq(
        &inputs,
        "v(δu)",
        &Valuation::Finite(m),
        &local.delta(&u).v_pi(),
    )?;
    let exp = local.exp_delta(&u, m as usize + 1).with(&inputs)?;
    for n in 1..=m as usize + 1 {
        expect_eq(
            &inputs,
            &format!("v(P_{n}(u))"),
            &Valuation::Finite(m + 1 - n as u32),
            &exp.components()[n].v_pi(),
        )?;
    }
    Ok(())
}

fn sadhu_finite(cfg: &SuiteConfig, trial: usize, rng: &mut ChaCha8Rng) -> Outcome {
    if trial.is_multiple_of(2) {
        let c = sample_constant(cfg, rng);
        let inputs = vec![c.to_string()];
        let t = ctx(cfg).taylor_expand(&c, 4).with(&inputs)?;
        for k in 1..=4 {
            expect(
                &inputs,
                t.components()[k].is_zero(),
                format!("component {k} = 0"),
                &t,
            )?;
        }
        return Ok(());
    }
    let m = rng.gen_range(0..=3u32);
    let a = loop {
        let c = sample_constant(cfg, rng);
        if !c.to_residue().is_zero() {
            break c;
        }
    };
    let b = sample_unit_content(rng, alg(cfg), &cfg.bounds);
    let x = &a + &b.mul_pi_pow(m + 1);
    let inputs = vec![format!("m={m}"), x.to_string()];
    let dx = ctx(cfg).delta(&x);
    expect_eq(&inputs, "v(δx)", &Valuation::Finite(m), &dx.v_pi())?;
    let t = ctx(cfg).taylor_expand(&x, m as usize + 1).with(&inputs)?;
    for k in 1..=m as usize {
        expect(
            &inputs,
            t.components()[k].is_zero(),
            format!("component {k} = 0"),
            &t,
        )?;
    }
    let last = &t.components()[m as usize + 1];
    expect(
        &inputs,
        !last.is_zero(),
        format!("component {} ≠ 0", m + 1),
        &t,
    )
}

fn constants_descent(cfg: &SuiteConfig, trial: usize) -> Outcome {
    let ring = cfg.ring.ring();
    let q = ring.q();
    let a = alg(cfg);
    if trial == 0 {
        let base = PolyAlg::base(ring.clone());
        let t_degree = match q {
            2 => 8,
            3 | 4 => 4,
            _ => 2,
        };
        let bounds = ConstantBounds {
            generator_degrees: Vec::new(),
            t_degree,
        };
        let inputs = vec![format!("{} with t-degree ≤ {t_degree}", ring.describe())];
        let found = DeltaContext::standard(&base)
            .enumerate_constants(&bounds, DEFAULT_ENUMERATION_BUDGET)
            .with(&inputs)?;
        let expected: Vec<Poly> = ring
            .residue_field()
            .elements()
            .map(|c| Poly::constant(&base, ring.section(c)))
            .collect();
        return expect_eq(
            &inputs,
            "constants",
            &render_set(&expected),
            &render_set(&found),
        );
    }
    let (deg, t_degree) = if q == 2 { (2, 2) } else { (1, 1) };
    let bounds = ConstantBounds {
        generator_degrees: vec![deg; a.num_generators()],
        t_degree,
    };
    let inputs = vec![format!(
        "{} with degrees ≤ {deg}, t-degree ≤ {t_degree}",
        cfg.ring.describe()
    )];
    let found = ctx(cfg)
        .enumerate_constants(&bounds, DEFAULT_ENUMERATION_BUDGET)
        .with(&inputs)?;
    for c in &found {
        expect(
            &inputs,
            c.is_zero() || c.v_pi() == Valuation::Finite(0),
            "no nonzero constant in πA",
            c,
        )?;
    }
    let mut residues: Vec<String> = found.iter().map(|c| c.to_residue().to_string()).collect();
    residues.sort();
    residues.dedup();
    expect(
        &inputs,
        residues.len() == found.len(),
        "reduction mod π injective on constants",
        format!("{} constants, {} residues", found.len(), residues.len()),
    )?;
    let set = render_set(&found);
    for x in &found {
        for y in &found {
            let s = x + y;
            expect(
                &inputs,
                found.contains(&s),
                "constants closed under +",
                format!("{x} + {y} missing from {set}"),
            )?;
        }
    }
    if ctx(cfg).frobenius().is_standard() {
        let expected = scalar_polynomials(a, deg);
        expect_eq(&inputs, "constants", &render_set(&expected), &set)?;
    }
    Ok(())
}

/// Every polynomial with 𝔽_q coefficients and generator degrees ≤ `deg`.
fn scalar_polynomials(a: &Arc<PolyAlg>, deg: u32) -> Vec<Poly> {
    let ring = a.ring();
    let mut monos: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..a.num_generators() {
        monos = monos
            .into_iter()
            .flat_map(|p| {
                (0..=deg).map(move |e| {
                    let mut v = p.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    let mut out = vec![Poly::zero(a)];
    for mono in monos {
        let mut next = Vec::new();
        for f in &out {
            for c in ring.residue_field().elements() {
                let term = Poly::from_terms(a, [(mono.clone(), ring.section(c))]).expect("fits");
                next.push(f + &term);
            }
        }
        out = next;
    }
    out
}

fn render_set(polys: &[Poly]) -> String {
    let mut v: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
    v.sort();
    v.dedup();
    format!("{{{}}}", v.join(", "))
}

fn exp_hom(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let c = ctx(cfg);
    let n = rng.gen_range(0..cfg.n_max.max(1));
    let x = sample_poly(rng, alg(cfg), &cfg.bounds);
    let y = sample_poly(rng, alg(cfg), &cfg.bounds);
    let inputs = vec![format!("n={n}"), x.to_string(), y.to_string()];
    let ex = c.exp_delta(&x, n).with(&inputs)?;
    let ey = c.exp_delta(&y, n).with(&inputs)?;
    expect_eq(
        &inputs,
        "exp(x+y)",
        &ex.add(&ey).with(&inputs)?,
        &c.exp_delta(&(&x + &y), n).with(&inputs)?,
    )?;
    expect_eq(
        &inputs,
        "exp(xy)",
        &ex.mul(&ey).with(&inputs)?,
        &c.exp_delta(&(&x * &y), n).with(&inputs)?,
    )?;
    let f_exp = c
        .exp_delta(&x, n + 1)
        .with(&inputs)?
        .frobenius()
        .with(&inputs)?;
    expect_eq(
        &inputs,
        "exp(φx)",
        &f_exp,
        &c.exp_delta(&c.phi(&x), n).with(&inputs)?,
    )?;
    for (i, w) in ex.ghost().components().iter().enumerate() {
        expect_eq(
            &inputs,
            &format!("ghost_{i}(exp x)"),
            &c.frobenius().iterate(&x, i),
            w,
        )?;
    }
    let r = super::sample::sample_coeff(rng, cfg.ring.ring(), &cfg.bounds);
    let rp = Poly::constant(alg(cfg), r.clone());
    let mut with_r = inputs.clone();
    with_r.push(rp.to_string());
    let sm = structure_map(&r, n, alg(cfg)).with(&with_r)?;
    expect_eq(&with_r, "exp(r)", &sm, &c.exp_delta(&rp, n).with(&with_r)?)?;
    expect_eq(
        &with_r,
        "r·exp(x)",
        &sm.mul(&ex).with(&with_r)?,
        &c.exp_delta(&(&rp * &x), n).with(&with_r)?,
    )
}
