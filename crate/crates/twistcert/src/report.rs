//! Machine-readable reports and their plain-text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use twistcert_core::albert::{admissible_m, fermat_squarefree_check, scan_bound};
use twistcert_core::arith::is_power_of_two;
use twistcert_core::cohomology::LocallyTrivial;
use twistcert_core::lgp::{CaseEntry, Hypothesis, TraceEntry};
use twistcert_core::{Cochain, CohomologyGroup, Subgroup, Verdict};

/// A cochain as a map from the tuple `(g_1,...,g_n)` to module coordinates.
pub fn cochain_map(c: &Cochain) -> BTreeMap<String, Vec<u64>> {
    c.entries()
        .into_iter()
        .map(|(t, v)| {
            let key = t.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            (format!("({key})"), v)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub name: String,
    pub value: String,
    pub holds: bool,
}

impl From<&Hypothesis> for HypothesisReport {
    fn from(h: &Hypothesis) -> Self {
        HypothesisReport { name: h.name.clone(), value: h.value.clone(), holds: h.holds }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub order: u64,
    pub group: String,
    pub resolved_by: Option<String>,
    pub detail: String,
}

impl From<&CaseEntry> for CaseReport {
    fn from(c: &CaseEntry) -> Self {
        CaseReport {
            order: c.order,
            group: c.group.clone(),
            resolved_by: c.resolved_by.map(|r| r.id().to_string()),
            detail: c.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub criterion: String,
    pub key: String,
    pub outcome: String,
    pub hypotheses: Vec<HypothesisReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cases: Vec<CaseReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl From<&TraceEntry> for TraceReport {
    fn from(e: &TraceEntry) -> Self {
        TraceReport {
            criterion: e.criterion.id().to_string(),
            key: e.criterion.key().to_string(),
            outcome: e.outcome.as_str().to_string(),
            hypotheses: e.hypotheses.iter().map(HypothesisReport::from).collect(),
            witness: e.witness.clone(),
            cases: e.cases.iter().map(CaseReport::from).collect(),
            notes: e.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub status: String,
    pub criterion: Option<String>,
    pub criterion_key: Option<String>,
    pub citations: Vec<String>,
    pub trace: Vec<TraceReport>,
}

impl VerdictReport {
    pub fn new(source: Option<String>, v: &Verdict) -> Self {
        VerdictReport {
            source,
            status: v.status.as_str().to_string(),
            criterion: v.criterion.map(|c| c.id().to_string()),
            criterion_key: v.criterion.map(|c| c.key().to_string()),
            citations: v.citations.clone(),
            trace: v.trace.iter().map(TraceReport::from).collect(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(src) = &self.source {
            let _ = writeln!(out, "== {src}");
        }
        match (&self.criterion, &self.criterion_key) {
            (Some(c), Some(k)) => {
                let _ = writeln!(out, "{} via {c} ({k})", self.status);
            }
            _ => {
                let _ = writeln!(out, "{}: no criterion applies", self.status);
            }
        }
        for c in &self.citations {
            let _ = writeln!(out, "  because: {c}");
        }
        for e in &self.trace {
            let _ = writeln!(out, "  [{}] {} {}", e.outcome, e.criterion, e.key);
            for h in &e.hypotheses {
                let mark = if h.holds { "ok" } else { "no" };
                let _ = writeln!(out, "      {mark}  {} = {}", h.name, h.value);
            }
            if let Some(w) = &e.witness {
                let _ = writeln!(out, "      witness N = {w:?}");
            }
            for c in &e.cases {
                let by = c.resolved_by.as_deref().unwrap_or("unresolved");
                let _ = writeln!(out, "      case |G| = {} {}: {by}, {}", c.order, c.group, c.detail);
            }
            for n in &e.notes {
                let _ = writeln!(out, "      note: {n}");
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub source: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BatchItem {
    Verdict(VerdictReport),
    Error(ErrorReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub invariant_factors: Option<Vec<u64>>,
    pub agrees: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl OracleReport {
    pub fn new(engine: &[u64], oracle: Result<Vec<u64>, String>) -> Self {
        match oracle {
            Ok(f) => OracleReport { agrees: Some(f == engine), invariant_factors: Some(f), error: None },
            Err(e) => OracleReport { invariant_factors: None, agrees: None, error: Some(e) },
        }
    }

    fn render(&self, out: &mut String) {
        match (&self.invariant_factors, self.agrees, &self.error) {
            (Some(f), Some(true), _) => {
                let _ = writeln!(out, "oracle: {f:?} (agrees)");
            }
            (Some(f), _, _) => {
                let _ = writeln!(out, "oracle: {f:?} (DISAGREES)");
            }
            (_, _, Some(e)) => {
                let _ = writeln!(out, "oracle: not run ({e})");
            }
            _ => {}
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub group: String,
    pub module_orders: Vec<u64>,
    pub degree: usize,
    pub invariant_factors: Vec<u64>,
    pub order: String,
    pub representatives: Vec<BTreeMap<String, Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

impl CohomologyReport {
    pub fn new(h: &CohomologyGroup, oracle: Option<OracleReport>) -> Self {
        CohomologyReport {
            group: h.group().label(),
            module_orders: h.module().orders().to_vec(),
            degree: h.degree(),
            invariant_factors: h.invariant_factors().to_vec(),
            order: h.order().to_string(),
            representatives: h.representatives().iter().map(cochain_map).collect(),
            oracle,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "H^{}({}, {}) = {}",
            self.degree,
            self.group,
            orders_text(&self.module_orders),
            orders_text(&self.invariant_factors)
        );
        let _ = writeln!(out, "order: {}", self.order);
        for (i, r) in self.representatives.iter().enumerate() {
            let _ = writeln!(out, "generator {i}: {}", map_text(r));
        }
        if let Some(o) = &self.oracle {
            o.render(&mut out);
        }
        out
    }

    pub fn oracle_disagrees(&self) -> bool {
        self.oracle.as_ref().is_some_and(|o| o.agrees == Some(false))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShaReport {
    pub group: String,
    pub module_orders: Vec<u64>,
    pub family: Vec<Vec<usize>>,
    pub h1: Vec<u64>,
    pub invariant_factors: Vec<u64>,
    pub order: String,
    pub representatives: Vec<BTreeMap<String, Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

impl ShaReport {
    pub fn new(sha: &LocallyTrivial, family: &[Subgroup], oracle: Option<OracleReport>) -> Self {
        ShaReport {
            group: sha.h1.group().label(),
            module_orders: sha.h1.module().orders().to_vec(),
            family: family.iter().map(|h| h.elements().to_vec()).collect(),
            h1: sha.h1.invariant_factors().to_vec(),
            invariant_factors: sha.invariant_factors().to_vec(),
            order: sha.order().to_string(),
            representatives: sha.representatives().iter().map(cochain_map).collect(),
            oracle,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "H^1({}, {}) = {}", self.group, orders_text(&self.module_orders), orders_text(&self.h1));
        let _ = writeln!(out, "family: {} subgroups {:?}", self.family.len(), self.family);
        let _ = writeln!(out, "locally trivial classes: {}", orders_text(&self.invariant_factors));
        for (i, r) in self.representatives.iter().enumerate() {
            let _ = writeln!(out, "generator {i}: {}", map_text(r));
        }
        if let Some(o) = &self.oracle {
            o.render(&mut out);
        }
        out
    }

    pub fn oracle_disagrees(&self) -> bool {
        self.oracle.as_ref().is_some_and(|o| o.agrees == Some(false))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleReport {
    pub genus: u64,
    pub scan_bound: u64,
    pub admissible: Vec<u64>,
    /// For `g` a power of two: whether the list is exactly the squarefree
    /// products of Fermat primes with `φ(m) | 2g`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fermat_products: Option<bool>,
}

impl AdmissibleReport {
    pub fn new(g: u64) -> Self {
        let admissible = admissible_m(g);
        let fermat_products = is_power_of_two(g).then(|| admissible.iter().all(|&m| fermat_squarefree_check(m)));
        AdmissibleReport { genus: g, scan_bound: scan_bound(g), admissible, fermat_products }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let list = self.admissible.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        let _ = writeln!(out, "g = {}: odd m >= 3 with phi(m) | 2g: [{list}]", self.genus);
        let _ = writeln!(out, "scanned odd m up to {} (phi(m) >= sqrt(m/2))", self.scan_bound);
        if let Some(f) = self.fermat_products {
            let verdict = if f { "yes" } else { "NO" };
            let _ = writeln!(out, "g is a power of two; every m is a squarefree product of Fermat primes: {verdict}");
        }
        out
    }
}

fn orders_text(orders: &[u64]) -> String {
    if orders.is_empty() {
        "0".to_string()
    } else {
        orders.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" + ")
    }
}

fn map_text(m: &BTreeMap<String, Vec<u64>>) -> String {
    m.iter()
        .filter(|(_, v)| v.iter().any(|&x| x != 0))
        .map(|(k, v)| format!("{k} -> {v:?}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}
