use std::fmt;

use serde_json::{json, Value};

use crate::error::Valuation;
use crate::poly::Poly;

/// One summand L_ij of the explicit recursion, with its π-adic valuation.
#[derive(Debug, Clone)]
pub struct TermEntry {
    pub i: usize,
    pub j: u64,
    pub value: Poly,
    pub valuation: Valuation,
}

/// The summands L_ij and partial sums S_i = Σ_j L_ij making up P_n.
#[derive(Debug, Clone)]
pub struct TermTable {
    n: usize,
    entries: Vec<TermEntry>,
    sums: Vec<(Poly, Valuation)>,
    total: Option<Poly>,
}

impl TermTable {
    pub(super) fn new(n: usize) -> Self {
        TermTable {
            n,
            entries: Vec::new(),
            sums: Vec::new(),
            total: None,
        }
    }

    pub(super) fn push_entry(&mut self, i: usize, j: u64, value: Poly) {
        let valuation = value.v_pi();
        self.entries.push(TermEntry {
            i,
            j,
            value,
            valuation,
        });
    }

    pub(super) fn push_sum(&mut self, i: usize, value: Poly) {
        debug_assert_eq!(i, self.sums.len());
        let v = value.v_pi();
        self.sums.push((value, v));
    }

    pub(super) fn set_total(&mut self, total: Poly) {
        self.total = Some(total);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entries ordered by (i, j).
    pub fn entries(&self) -> &[TermEntry] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: u64) -> Option<&TermEntry> {
        self.entries.iter().find(|e| e.i == i && e.j == j)
    }

    /// S_i and its valuation.
    pub fn sum(&self, i: usize) -> Option<(&Poly, Valuation)> {
        self.sums.get(i).map(|(p, v)| (p, *v))
    }

    /// P_n = Σ_i S_i.
    pub fn total(&self) -> &Poly {
        self.total.as_ref().expect("table is complete")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "terms",
            "n": self.n,
            "entries": self.entries.iter().map(|e| json!({
                "i": e.i,
                "j": e.j,
                "valuation": e.valuation,
                "value": e.value.to_string(),
            })).collect::<Vec<_>>(),
            "sums": self.sums.iter().enumerate().map(|(i, (p, v))| json!({
                "i": i,
                "valuation": v,
                "value": p.to_string(),
            })).collect::<Vec<_>>(),
            "total": self.total().to_string(),
        })
    }
}

impl fmt::Display for TermTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>3} {:>5} {:>9}  term", "i", "j", "v_pi")?;
        for e in &self.entries {
            writeln!(
                f,
                "{:>3} {:>5} {:>9}  {}",
                e.i,
                e.j,
                e.valuation.to_string(),
                e.value
            )?;
        }
        for (i, (p, v)) in self.sums.iter().enumerate() {
            writeln!(f, "{:>3} {:>5} {:>9}  {}", i, "S", v.to_string(), p)?;
        }
        write!(f, "P_{} = {}", self.n, self.total())
    }
}
