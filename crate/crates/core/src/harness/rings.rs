use std::fmt;
use std::sync::Arc;

use crate::coeff::CoeffRing;
use crate::delta::DeltaContext;
use crate::error::{Error, Result};
use crate::poly::{parse_poly, FrobLift, PolyAlg};

/// A labelled algebra with Frobenius lift on which suites run.
#[derive(Debug, Clone)]
pub struct HarnessRing {
    label: String,
    ctx: DeltaContext,
}

impl HarnessRing {
    pub fn new(label: impl Into<String>, ctx: DeltaContext) -> Self {
        HarnessRing {
            label: label.into(),
            ctx,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ctx(&self) -> &DeltaContext {
        &self.ctx
    }

    pub fn alg(&self) -> &Arc<PolyAlg> {
        self.ctx.alg()
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        self.ctx.alg().ring()
    }

    /// Human description, e.g. `F_2[t][u], phi(u) = u^2 + t^3`.
    pub fn describe(&self) -> String {
        let alg = self.alg();
        let images: Vec<String> = alg
            .names()
            .iter()
            .zip(self.ctx.frobenius().images())
            .map(|(g, img)| format!("phi({g}) = {img}"))
            .collect();
        if images.is_empty() {
            alg.describe()
        } else {
            format!("{}, {}", alg.describe(), images.join(", "))
        }
    }

    /// Largest default truncation level: 4 when q = 2, 3 otherwise.
    pub fn default_n_max(&self) -> usize {
        if self.ring().q() == 2 {
            4
        } else {
            3
        }
    }

    /// Largest default valuation for the valuation suites.
    pub fn default_m_max(&self) -> u32 {
        if self.ring().q() == 2 {
            5
        } else {
            3
        }
    }
}

impl fmt::Display for HarnessRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

type RingCtor = fn() -> Result<CoeffRing>;

/// (label, ring constructor, Frobenius image of `u`).
const PRESETS: &[(&str, RingCtor, &str)] = &[
    ("f2t-u", || CoeffRing::equal_char(2, 1, None), "u^2"),
    (
        "f2t-u-perturbed",
        || CoeffRing::equal_char(2, 1, None),
        "u^2 + t^3",
    ),
    ("f4t-u", || CoeffRing::equal_char(2, 2, None), "u^4"),
    ("z2-u", || CoeffRing::mixed_char(2), "u^2"),
    ("z2-u-perturbed", || CoeffRing::mixed_char(2), "u^2 + 2*u"),
    ("z3-u", || CoeffRing::mixed_char(3), "u^3"),
    ("zi-u", || Ok(CoeffRing::gaussian()), "u^2"),
];

pub fn preset_labels() -> Vec<&'static str> {
    PRESETS.iter().map(|(l, _, _)| *l).collect()
}

/// One of the shipped algebras B[u] with a fixed lift.
pub fn preset(label: &str) -> Result<HarnessRing> {
    let (label, ring, image) = PRESETS
        .iter()
        .find(|(l, _, _)| *l == label)
        .ok_or_else(|| Error::Config(format!("unknown ring preset '{label}'")))?;
    let alg = PolyAlg::new(Arc::new(ring()?), vec!["u".into()])?;
    let img = parse_poly(&alg, image)?;
    let frob = FrobLift::new(&alg, vec![img])?;
    Ok(HarnessRing::new(*label, DeltaContext::new(frob)))
}

/// Every shipped preset.
pub fn default_rings() -> Vec<HarnessRing> {
    PRESETS
        .iter()
        .map(|(l, _, _)| preset(l).expect("shipped presets are valid"))
        .collect()
}
