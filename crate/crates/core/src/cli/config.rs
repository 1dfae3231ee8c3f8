use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::coeff::CoeffRing;
use crate::delta::DeltaContext;
use crate::error::{Error, Result};
use crate::harness::{preset, HarnessRing};
use crate::poly::{parse_poly, FrobLift, Poly, PolyAlg};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    ring: RingSection,
    #[serde(default)]
    algebra: AlgebraSection,
    #[serde(default)]
    frobenius: FrobeniusSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingSection {
    kind: String,
    p: Option<u32>,
    h: Option<u32>,
    modulus: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraSection {
    #[serde(default)]
    generators: Vec<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrobeniusSection {
    #[serde(default)]
    images: BTreeMap<String, String>,
}

/// The ring used when no configuration file is given: 𝔽_2[t][u] with
/// φ(u) = u².
pub fn default_ring() -> HarnessRing {
    preset("f2t-u").expect("shipped preset")
}

pub fn load_config(path: &Path) -> Result<HarnessRing> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let label = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("config")
        .to_string();
    parse_config(&text, &label)
}

/// Parses a TOML ring description into an algebra with a validated lift.
pub fn parse_config(text: &str, label: &str) -> Result<HarnessRing> {
    let file: ConfigFile =
        toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
    let ring = build_ring(&file.ring)?;
    let alg = PolyAlg::new(Arc::new(ring), file.algebra.generators.clone())?;
    for name in file.frobenius.images.keys() {
        if alg.generator_index(name).is_none() {
            return Err(Error::Config(format!(
                "frobenius.images names '{name}', which is not a generator"
            )));
        }
    }
    let q = alg.ring().q() as u64;
    let images = alg
        .names()
        .iter()
        .enumerate()
        .map(|(i, name)| match file.frobenius.images.get(name) {
            Some(text) => parse_poly(&alg, text),
            None => Ok(Poly::generator(&alg, i).pow(q)),
        })
        .collect::<Result<Vec<_>>>()?;
    let frob = FrobLift::new(&alg, images)?;
    Ok(HarnessRing::new(label, DeltaContext::new(frob)))
}

fn build_ring(section: &RingSection) -> Result<CoeffRing> {
    match section.kind.as_str() {
        "equal-char" => {
            let p = section
                .p
                .ok_or_else(|| Error::Config("ring.p is required for equal-char".into()))?;
            let h = section.h.unwrap_or(1);
            let modulus = section
                .modulus
                .as_deref()
                .map(|m| parse_modulus(m, p, h))
                .transpose()?;
            CoeffRing::equal_char(p, h, modulus)
        }
        "mixed-char" => {
            if section.h.unwrap_or(1) != 1 || section.modulus.is_some() {
                return Err(Error::Config(
                    "mixed-char rings have h = 1 and no modulus".into(),
                ));
            }
            let p = section
                .p
                .ok_or_else(|| Error::Config("ring.p is required for mixed-char".into()))?;
            CoeffRing::mixed_char(p)
        }
        "mixed-char-ramified" => {
            if section.p.unwrap_or(2) != 2
                || section.h.unwrap_or(1) != 1
                || section.modulus.is_some()
            {
                return Err(Error::Config(
                    "the ramified ring is Z[i] with p = 2, h = 1 and no modulus".into(),
                ));
            }
            Ok(CoeffRing::gaussian())
        }
        other => Err(Error::Config(format!(
            "ring.kind must be equal-char, mixed-char or mixed-char-ramified, not '{other}'"
        ))),
    }
}

/// Reads a polynomial in z over 𝔽_p, returning coefficients low to high.
fn parse_modulus(text: &str, p: u32, h: u32) -> Result<Vec<u32>> {
    let prime = Arc::new(CoeffRing::equal_char(p, 1, None)?);
    let base = PolyAlg::base(prime.clone());
    let as_t = text.replace('z', "t");
    let f = parse_poly(&base, &as_t).map_err(|e| Error::Config(format!("ring.modulus: {e}")))?;
    let coeffs = f.constant_term();
    let digits: Vec<u32> = coeffs
        .t_coeffs()
        .expect("equal characteristic element")
        .iter()
        .map(|c| c.index())
        .collect();
    if digits.len() != h as usize + 1 {
        return Err(Error::Config(format!("ring.modulus must have degree {h}")));
    }
    Ok(digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config() {
        let text = r#"
            [ring]
            kind = "equal-char"
            p = 2
            h = 2
            modulus = "z^2 + z + 1"

            [algebra]
            generators = ["u1", "u2"]

            [frobenius]
            images = { u1 = "u1^4 + t*u2" }
        "#;
        let r = parse_config(text, "f4").unwrap();
        assert_eq!(r.ring().q(), 4);
        assert_eq!(r.ctx().frobenius().images()[1].to_string(), "u2^4");
        assert_eq!(r.ctx().frobenius().images()[0].to_string(), "u1^4 + t*u2");
    }

    #[test]
    fn base_ring_only() {
        let r = parse_config("[ring]\nkind = \"mixed-char\"\np = 3\n", "z3").unwrap();
        assert_eq!(r.alg().num_generators(), 0);
        assert_eq!(r.ring().describe(), "Z (p=3)");
    }

    #[test]
    fn rejections() {
        assert!(parse_config("[ring]\nkind = \"mixed-char\"\np = 4\n", "x").is_err());
        assert!(parse_config("[ring]\nkind = \"adelic\"\n", "x").is_err());
        let bad_lift = "[ring]\nkind = \"equal-char\"\np = 2\n[algebra]\ngenerators = [\"u\"]\n[frobenius]\nimages = { u = \"u^2 + 1\" }\n";
        assert!(matches!(
            parse_config(bad_lift, "x"),
            Err(Error::NotAFrobeniusLift { .. })
        ));
        let bad_modulus = "[ring]\nkind = \"equal-char\"\np = 2\nh = 2\nmodulus = \"z^2 + 1\"\n";
        assert!(parse_config(bad_modulus, "x").is_err());
        let unknown_image =
            "[ring]\nkind = \"equal-char\"\np = 2\n[frobenius]\nimages = { v = \"v^2\" }\n";
        assert!(parse_config(unknown_image, "x").is_err());
    }
}
