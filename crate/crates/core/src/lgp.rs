//! Decision engine for the local-global principle of m-atic twists.
//!
//! Every criterion is a sufficient condition. The engine evaluates all of
//! them in a fixed order, reports the first one that holds as the verdict,
//! and records the others as corroboration or as failures with reasons.
//! It never claims the principle fails: the only negative answer is UNKNOWN.
//!
//! Facts about the infinite unit group `D_L^×` are not computed. When `D_L`
//! is commutative, Hilbert 90 gives `H^1(H, D_L^×) = 1` for every subgroup
//! `H`, and the criteria that need it take it from the `dl_commutative` flag.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::albert::{coprimality_certificate, AlbertError, AlbertProfile, Coprimality, CoprimalityRule};
use crate::arith::{divisors, gcd, is_power_of_two, is_squarefree, phi};
use crate::catalog::groups_of_order;
use crate::cohomology::{cohomology, CohomologyError};
use crate::gmodules::{CyclotomicCharacter, GModule};
use crate::groups::{normal_subgroups, quotient, FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LgpError {
    Inconsistent(String),
    Cohomology(CohomologyError),
    CatalogIncomplete { order: u64 },
}

impl fmt::Display for LgpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LgpError::Inconsistent(why) => write!(f, "inconsistent instance: {why}"),
            LgpError::Cohomology(e) => write!(f, "{e}"),
            LgpError::CatalogIncomplete { order } => write!(f, "no catalog of groups of order {order}"),
        }
    }
}

impl core::error::Error for LgpError {}

impl From<AlbertError> for LgpError {
    fn from(e: AlbertError) -> Self {
        LgpError::Inconsistent(format!("{e}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    /// `D_L = D`.
    C0,
    /// Some decomposition group is all of `G`.
    C1,
    /// `μ_m ⊆ D` and `gcd(m, d) = 1`.
    C2,
    /// `D_L` is a CM field and `gcd(m, |G|) = 1`.
    C3,
    /// `D_L` commutative and `μ_m^G = 1`.
    C4,
    /// `D_L` commutative and a normal `N` of order prime to `m` with `H^2(G/N, μ_m^N) = 1`.
    C5,
    /// `D_L` commutative and a normal decomposition group `N` of index prime to `m`.
    C6,
    /// Geometrically simple, `μ_m ⊆ D`, small or power-of-two dimension, odd `m ≥ 3`.
    C7,
}

/// Evaluation order, cheapest first.
pub const PRIORITY: [Criterion; 8] = [
    Criterion::C0,
    Criterion::C1,
    Criterion::C2,
    Criterion::C3,
    Criterion::C4,
    Criterion::C6,
    Criterion::C5,
    Criterion::C7,
];

impl Criterion {
    pub fn id(self) -> &'static str {
        match self {
            Criterion::C0 => "C0",
            Criterion::C1 => "C1",
            Criterion::C2 => "C2",
            Criterion::C3 => "C3",
            Criterion::C4 => "C4",
            Criterion::C5 => "C5",
            Criterion::C6 => "C6",
            Criterion::C7 => "C7",
        }
    }

    pub fn parse(id: &str) -> Option<Criterion> {
        PRIORITY.iter().copied().find(|c| c.id() == id)
    }

    /// Short stable key naming the result the criterion rests on.
    pub fn key(self) -> &'static str {
        match self {
            Criterion::C0 => "endomorphisms-defined-over-base",
            Criterion::C1 => "full-decomposition-group",
            Criterion::C2 => "coprime-to-tate-rank",
            Criterion::C3 => "cm-field-coprime-order",
            Criterion::C4 => "trivial-invariants",
            Criterion::C5 => "coprime-normal-subgroup",
            Criterion::C6 => "coprime-index-decomposition-subgroup",
            Criterion::C7 => "small-dimension-case-analysis",
        }
    }

    /// The statement relied upon.
    pub fn citation(self) -> &'static str {
        match self {
            Criterion::C0 => {
                "If all geometric endomorphisms of A are defined over K (D_L = D), every locally m-atic twist is m-atic."
            }
            Criterion::C1 => {
                "If some place of K has decomposition group equal to G, the locally trivial classes vanish; \
                 when G is cyclic, Chebotarev density supplies an unramified such place."
            }
            Criterion::C2 => "If mu_m lies in D and m is coprime to d = 2g/[Z:Q], the local-global principle holds.",
            Criterion::C3 => {
                "If D_L is a CM field and m is coprime to |G|, then H^2(G, mu_m) = 1 and H^1(G, D_L^x) = 1, \
                 so the local-global principle holds."
            }
            Criterion::C4 => {
                "For geometrically simple A with D_L commutative, the local-global principle holds for every \
                 m with mu_m^G = 1."
            }
            Criterion::C5 => {
                "If H^1(G, D_L^x) = 1 and a normal subgroup N of order coprime to m has H^2(G/N, mu_m^N) = 1, \
                 then H^2(G, mu_m) = 1 and the local-global principle holds."
            }
            Criterion::C6 => {
                "If a normal subgroup N of index coprime to m is a decomposition group and the relevant H^1 \
                 with D_L^x coefficients vanish (Hilbert 90 when D_L is commutative), the local-global \
                 principle holds."
            }
            Criterion::C7 => {
                "For geometrically simple A with mu_m in D, g a power of two or g <= 7, and odd m >= 3, the \
                 local-global principle holds: by coprimality of m and d, or by the cyclic and S3 case analysis."
            }
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Flags {
    pub dl_equals_d: bool,
    pub dl_commutative: bool,
    pub dl_cm_field: bool,
    pub mu_m_in_d: bool,
    pub geometrically_simple: bool,
}

/// The engine's input. `group = None` means `Gal(L/K)` is not known; the
/// criteria that inspect `G` then fail with that reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub m: u64,
    pub g: Option<u64>,
    pub group: Option<Arc<FiniteGroup>>,
    /// Action of `G` on `μ_m`; `None` is the trivial action.
    pub character: Option<CyclotomicCharacter>,
    pub flags: Flags,
    pub albert: Option<AlbertProfile>,
    pub declared_decomposition_subgroups: Vec<Subgroup>,
}

impl Instance {
    pub fn new(m: u64) -> Instance {
        Instance {
            m,
            g: None,
            group: None,
            character: None,
            flags: Flags::default(),
            albert: None,
            declared_decomposition_subgroups: Vec::new(),
        }
    }

    /// The action on `μ_m`, defaulting to the trivial one.
    pub fn character_or_trivial(&self) -> Option<CyclotomicCharacter> {
        let group = self.group.as_ref()?;
        Some(self.character.clone().unwrap_or_else(|| CyclotomicCharacter::trivial(group.clone(), self.m)))
    }

    /// `μ_m` as a module over `G`, when `G` is known.
    pub fn mu_module(&self) -> Option<GModule> {
        let group = self.group.as_ref()?;
        let chi = self.character_or_trivial()?;
        Some(GModule::mu_module(group.clone(), self.m, &chi).expect("validated character"))
    }

    pub fn validate(self) -> Result<Instance, LgpError> {
        let bad = |why: &str| Err(LgpError::Inconsistent(why.to_string()));
        if self.m == 0 {
            return bad("m must be at least 1");
        }
        if self.g == Some(0) {
            return bad("g must be positive");
        }
        match &self.group {
            None => {
                if self.character.is_some() {
                    return bad("a character was given without a group");
                }
                if !self.declared_decomposition_subgroups.is_empty() {
                    return bad("decomposition subgroups were given without a group");
                }
            }
            Some(group) => {
                if let Some(chi) = &self.character {
                    if chi.m() != self.m {
                        return bad("the character is not modulo m");
                    }
                    if **chi.group() != **group {
                        return bad("the character lives on a different group");
                    }
                }
                for h in &self.declared_decomposition_subgroups {
                    if **h.parent() != **group {
                        return bad("a declared decomposition subgroup is not a subgroup of G");
                    }
                }
            }
        }
        let f = self.flags;
        if f.mu_m_in_d && self.character.as_ref().is_some_and(|c| !c.is_trivial()) {
            return bad("mu_m_in_d requires G to fix mu_m, but the character is nontrivial");
        }
        if f.dl_equals_d && self.group.as_ref().is_some_and(|g| g.order() != 1) {
            return bad("dl_equals_d requires G to be trivial");
        }
        if f.dl_cm_field && !f.dl_commutative {
            return bad("dl_cm_field requires dl_commutative");
        }
        if f.mu_m_in_d {
            if let Some(g) = self.g {
                if (2 * g) % phi(self.m) != 0 {
                    return bad("mu_m_in_d with dimension g requires phi(m) to divide 2g");
                }
            }
        }
        if let Some(p) = &self.albert {
            if Some(p.g) != self.g {
                return bad("the Albert profile has a different dimension g");
            }
            if p.m != self.m {
                return bad("the Albert profile has a different m");
            }
            p.validate(f.mu_m_in_d)?;
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    Holds,
    Unknown,
}

impl VerdictStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictStatus::Holds => "HOLDS",
            VerdictStatus::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// The criterion that decides the verdict.
    Fired,
    /// Holds as well, after the deciding criterion.
    AlsoHolds,
    Failed,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Fired => "fired",
            Outcome::AlsoHolds => "also-holds",
            Outcome::Failed => "failed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub value: String,
    pub holds: bool,
}

fn hyp(name: &str, value: impl fmt::Display, holds: bool) -> Hypothesis {
    Hypothesis { name: name.to_string(), value: format!("{value}"), holds }
}

/// One possible Galois group in the case analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseEntry {
    pub order: u64,
    pub group: String,
    pub resolved_by: Option<Criterion>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub criterion: Criterion,
    pub outcome: Outcome,
    pub hypotheses: Vec<Hypothesis>,
    /// Elements of the normal subgroup used by C5 and C6.
    pub witness: Option<Vec<usize>>,
    pub cases: Vec<CaseEntry>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub criterion: Option<Criterion>,
    pub trace: Vec<TraceEntry>,
    pub citations: Vec<String>,
}

impl Verdict {
    pub fn entry(&self, c: Criterion) -> Option<&TraceEntry> {
        self.trace.iter().find(|e| e.criterion == c)
    }
}

#[derive(Debug, Default)]
struct Eval {
    hypotheses: Vec<Hypothesis>,
    witness: Option<Vec<usize>>,
    cases: Vec<CaseEntry>,
    notes: Vec<String>,
    error: Option<CohomologyError>,
}

impl Eval {
    fn holds(&self) -> bool {
        self.error.is_none() && !self.hypotheses.is_empty() && self.hypotheses.iter().all(|h| h.holds)
    }

    /// Records a hypothesis and reports whether evaluation may continue.
    fn check(&mut self, name: &str, value: impl fmt::Display, holds: bool) -> bool {
        self.hypotheses.push(hyp(name, value, holds));
        holds
    }
}

fn need_group<'a>(inst: &'a Instance, ev: &mut Eval) -> Option<&'a Arc<FiniteGroup>> {
    match &inst.group {
        Some(g) => {
            ev.check("G known", g.label(), true);
            Some(g)
        }
        None => {
            ev.check("G known", "unknown", false);
            None
        }
    }
}

/// Normal subgroups, largest first.
fn normals_descending(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut ns = normal_subgroups(g);
    ns.reverse();
    ns
}

fn describe(n: &Subgroup) -> String {
    format!("order {} {:?}", n.order(), n.elements())
}

fn is_realizable(n: &Subgroup, declared: &[Subgroup]) -> Option<&'static str> {
    if n.is_cyclic() {
        Some("cyclic")
    } else if declared.contains(n) {
        Some("declared")
    } else {
        None
    }
}

fn evaluate(inst: &Instance, c: Criterion) -> Eval {
    let mut ev = Eval::default();
    let f = inst.flags;
    match c {
        Criterion::C0 => {
            ev.check("dl_equals_d", f.dl_equals_d, f.dl_equals_d);
        }
        Criterion::C1 => {
            if let Some(g) = need_group(inst, &mut ev) {
                let cyclic = g.is_cyclic();
                let declared = inst.declared_decomposition_subgroups.iter().any(Subgroup::is_whole);
                let how = match (cyclic, declared) {
                    (true, _) => "G is cyclic",
                    (false, true) => "G is a declared decomposition group",
                    (false, false) => "G is neither cyclic nor declared",
                };
                ev.check("decomposition group equal to G", how, cyclic || declared);
            }
        }
        Criterion::C2 => {
            if ev.check("mu_m_in_d", f.mu_m_in_d, f.mu_m_in_d) {
                let profile = inst.albert.clone().or_else(|| inst.g.map(|g| AlbertProfile::new(g, inst.m)));
                match profile {
                    None => {
                        ev.check("dimension g", "unknown", false);
                    }
                    Some(p) => match coprimality_certificate(&p) {
                        Ok(Coprimality::Certified(rule)) => {
                            ev.check("gcd(m, d) = 1", describe_rule(inst.m, rule), true);
                        }
                        Ok(Coprimality::Unknown(why)) => {
                            ev.check("gcd(m, d) = 1", why, false);
                        }
                        Err(e) => {
                            ev.check("Albert profile", e, false);
                        }
                    },
                }
            }
        }
        Criterion::C3 => {
            if ev.check("dl_cm_field", f.dl_cm_field, f.dl_cm_field) {
                if let Some(g) = need_group(inst, &mut ev) {
                    let d = gcd(inst.m, g.order() as u64);
                    ev.check("gcd(m, |G|) = 1", format!("gcd({}, {}) = {d}", inst.m, g.order()), d == 1);
                }
            }
        }
        Criterion::C4 => {
            if ev.check("dl_commutative", f.dl_commutative, f.dl_commutative) && need_group(inst, &mut ev).is_some()
            {
                let inv = inst.mu_module().expect("group known").invariants();
                let size = inv.cardinality();
                ev.check("mu_m^G = 1", format!("|mu_m^G| = {size}"), size == 1);
            }
        }
        Criterion::C5 => {
            if ev.check("dl_commutative", f.dl_commutative, f.dl_commutative) {
                if let Some(g) = need_group(inst, &mut ev) {
                    let module = inst.mu_module().expect("group known");
                    let mut tried = Vec::new();
                    for n in normals_descending(g) {
                        if gcd(n.order() as u64, inst.m) != 1 {
                            continue;
                        }
                        match h2_of_fixed_quotient(&module, &n) {
                            Ok(factors) if factors.is_empty() => {
                                ev.check("H^1(G, D_L^x) = 1", "Hilbert 90 (D_L commutative)", true);
                                ev.check("N normal", describe(&n), true);
                                ev.check("gcd(|N|, m) = 1", format!("gcd({}, {}) = 1", n.order(), inst.m), true);
                                ev.check("H^2(G/N, mu_m^N) = 1", "invariant factors []", true);
                                ev.witness = Some(n.elements().to_vec());
                                return ev;
                            }
                            Ok(factors) => tried.push(format!("N of {}: H^2(G/N, mu_m^N) = {factors:?}", describe(&n))),
                            Err(e) => {
                                tried.push(format!("N of {}: {e}", describe(&n)));
                                ev.error.get_or_insert(e);
                            }
                        }
                    }
                    ev.notes = tried;
                    ev.check(
                        "normal N with gcd(|N|, m) = 1 and H^2(G/N, mu_m^N) = 1",
                        "none found",
                        false,
                    );
                }
            }
        }
        Criterion::C6 => {
            if ev.check("dl_commutative", f.dl_commutative, f.dl_commutative) {
                if let Some(g) = need_group(inst, &mut ev) {
                    for n in normals_descending(g) {
                        if gcd(n.index() as u64, inst.m) != 1 {
                            continue;
                        }
                        if let Some(how) = is_realizable(&n, &inst.declared_decomposition_subgroups) {
                            ev.check("N normal", describe(&n), true);
                            ev.check("gcd([G:N], m) = 1", format!("gcd({}, {}) = 1", n.index(), inst.m), true);
                            ev.check("N is a decomposition group", how, true);
                            ev.check(
                                "H^1 with D_L^x coefficients vanish on G and N",
                                "Hilbert 90 (D_L commutative)",
                                true,
                            );
                            ev.witness = Some(n.elements().to_vec());
                            return ev;
                        }
                    }
                    ev.check(
                        "normal N with gcd([G:N], m) = 1 that is a decomposition group",
                        "none found",
                        false,
                    );
                }
            }
        }
        Criterion::C7 => {
            let ok = ev.check("geometrically_simple", f.geometrically_simple, f.geometrically_simple)
                && ev.check("mu_m_in_d", f.mu_m_in_d, f.mu_m_in_d);
            if !ok {
                return ev;
            }
            let Some(g) = inst.g else {
                ev.check("dimension g", "unknown", false);
                return ev;
            };
            if !ev.check("g is a power of two or g <= 7", g, is_power_of_two(g) || g <= 7) {
                return ev;
            }
            if !ev.check("m odd and m >= 3", inst.m, inst.m % 2 == 1 && inst.m >= 3) {
                return ev;
            }
            match case_machine_small_dimension(g, inst.m, inst.albert.as_ref()) {
                Ok(cm) => {
                    ev.notes = cm.notes;
                    ev.cases = cm.cases;
                    let value = match cm.coprimality {
                        Some(rule) => format!("resolved by coprimality: {}", describe_rule(inst.m, rule)),
                        None if cm.holds => "every possible G resolved".to_string(),
                        None => "some case unresolved".to_string(),
                    };
                    ev.check("case analysis", value, cm.holds);
                }
                Err(e) => {
                    ev.check("case analysis", e, false);
                }
            }
        }
    }
    ev
}

fn describe_rule(m: u64, rule: CoprimalityRule) -> String {
    match rule {
        CoprimalityRule::GivenD { d } => format!("given d = {d}, gcd({m}, {d}) = 1"),
        CoprimalityRule::CenterDegree { center_degree, d } => {
            format!("[Z:Q] = {center_degree} gives d = {d}, gcd({m}, {d}) = 1")
        }
        CoprimalityRule::DivisorBound { bound } => format!("d divides 2g/phi(m) = {bound}, gcd({m}, {bound}) = 1"),
    }
}

/// Invariant factors of `H^2(G/N, M^N)`.
pub fn h2_of_fixed_quotient(module: &GModule, n: &Subgroup) -> Result<Vec<u64>, CohomologyError> {
    let q = quotient(n).map_err(|_| CohomologyError::NotNormal)?;
    let (fixed, _) = module.fixed_by_normal(&q);
    Ok(cohomology(&fixed, 2)?.invariant_factors().to_vec())
}

/// Runs every criterion in [`PRIORITY`] order.
pub fn decide(instance: &Instance) -> Result<Verdict, LgpError> {
    let mut trace = Vec::with_capacity(PRIORITY.len());
    let mut fired = None;
    let mut first_error = None;
    for c in PRIORITY {
        let ev = evaluate(instance, c);
        let outcome = if ev.holds() {
            if fired.is_none() {
                fired = Some(c);
                Outcome::Fired
            } else {
                Outcome::AlsoHolds
            }
        } else {
            Outcome::Failed
        };
        if let Some(e) = &ev.error {
            first_error.get_or_insert(e.clone());
        }
        trace.push(TraceEntry {
            criterion: c,
            outcome,
            hypotheses: ev.hypotheses,
            witness: ev.witness,
            cases: ev.cases,
            notes: ev.notes,
        });
    }
    match fired {
        Some(c) => Ok(Verdict {
            status: VerdictStatus::Holds,
            criterion: Some(c),
            trace,
            citations: alloc::vec![c.citation().to_string()],
        }),
        None => match first_error {
            Some(e) => Err(LgpError::Cohomology(e)),
            None => Ok(Verdict { status: VerdictStatus::Unknown, criterion: None, trace, citations: Vec::new() }),
        },
    }
}

/// Result of the small-dimension case analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseMachine {
    pub holds: bool,
    /// Set when coprimality settled everything before any enumeration.
    pub coprimality: Option<CoprimalityRule>,
    /// Possible orders of `G = Gal(D_L/D)` that were enumerated.
    pub orders: Vec<u64>,
    pub cases: Vec<CaseEntry>,
    pub notes: Vec<String>,
}

/// Case analysis for a geometrically simple `A` of dimension `g` with
/// `μ_m ⊆ D` and `m` odd.
///
/// First tries coprimality of `m` and `d`. Failing that, when `g` is
/// squarefree the relation `e0·δ² | g` forces `δ = 1`, so `D_L` is a CM
/// field and `G ≅ Gal(D_L/D)`. Since `Q(ζ_m) ⊆ D ⊆ D_L` and
/// `[D_L:Q] | 2g`, the order of `G` divides `2g/φ(m)`. Each group of such
/// an order is resolved by C0 (trivial), C1 (cyclic) or C6 (a cyclic
/// normal subgroup of index prime to `m`).
pub fn case_machine_small_dimension(g: u64, m: u64, albert: Option<&AlbertProfile>) -> Result<CaseMachine, LgpError> {
    let mut out = CaseMachine { holds: false, coprimality: None, orders: Vec::new(), cases: Vec::new(), notes: Vec::new() };
    if g == 0 || m < 3 || m % 2 == 0 {
        out.notes.push("requires g >= 1 and odd m >= 3".to_string());
        return Ok(out);
    }
    if !(is_power_of_two(g) || g <= 7) {
        out.notes.push(format!("g = {g} is neither a power of two nor at most 7"));
        return Ok(out);
    }
    if g == 8 {
        out.notes.push(
            "g = 8 is covered through the power-of-two clause; the headline range g <= 8 and the \
             case-analysis range g <= 7 differ exactly here"
                .to_string(),
        );
    }
    let profile = albert.cloned().unwrap_or_else(|| AlbertProfile::new(g, m));
    if let Coprimality::Certified(rule) = coprimality_certificate(&profile)? {
        out.holds = true;
        out.coprimality = Some(rule);
        return Ok(out);
    }
    if !is_squarefree(g) {
        out.notes.push(format!("g = {g} is not squarefree, so commutativity of D_L cannot be derived"));
        return Ok(out);
    }
    out.notes.push(format!("g = {g} squarefree and e0·δ² | g force δ = 1: D_L is a CM field"));
    let bound = 2 * g / phi(m);
    out.orders = divisors(bound);
    let mut all = true;
    for &order in &out.orders {
        let groups = groups_of_order(order as usize).ok_or(LgpError::CatalogIncomplete { order })?;
        for group in groups {
            let (resolved_by, detail) = resolve_case(&Arc::new(group.clone()), m);
            all &= resolved_by.is_some();
            out.cases.push(CaseEntry { order, group: group.label(), resolved_by, detail });
        }
    }
    out.holds = all;
    Ok(out)
}

fn resolve_case(g: &Arc<FiniteGroup>, m: u64) -> (Option<Criterion>, String) {
    if g.order() == 1 {
        return (Some(Criterion::C0), "G trivial, so D_L = D".to_string());
    }
    if g.is_cyclic() {
        return (Some(Criterion::C1), "G cyclic, realized as a decomposition group by Chebotarev".to_string());
    }
    for n in normals_descending(g) {
        if n.is_cyclic() && gcd(n.index() as u64, m) == 1 {
            return (
                Some(Criterion::C6),
                format!("normal cyclic N of order {} has index {} prime to {m}", n.order(), n.index()),
            );
        }
    }
    (None, "no resolving criterion".to_string())
}

/// Re-derives the deciding criterion of a verdict from the instance.
///
/// For C5 and C6 the recorded witness subgroup is checked directly rather
/// than searched for again.
pub fn recheck(instance: &Instance, verdict: &Verdict) -> bool {
    let Some(c) = verdict.criterion else {
        return verdict.status == VerdictStatus::Unknown
            && verdict.trace.iter().all(|e| e.outcome == Outcome::Failed);
    };
    let Some(entry) = verdict.entry(c) else { return false };
    if entry.outcome != Outcome::Fired {
        return false;
    }
    match (c, &entry.witness) {
        (Criterion::C5 | Criterion::C6, Some(w)) => {
            let Some(g) = &instance.group else { return false };
            if !instance.flags.dl_commutative {
                return false;
            }
            let Ok(n) = Subgroup::new(g.clone(), w) else { return false };
            if !n.is_normal() {
                return false;
            }
            if c == Criterion::C6 {
                gcd(n.index() as u64, instance.m) == 1
                    && is_realizable(&n, &instance.declared_decomposition_subgroups).is_some()
            } else {
                let Some(module) = instance.mu_module() else { return false };
                gcd(n.order() as u64, instance.m) == 1
                    && h2_of_fixed_quotient(&module, &n).is_ok_and(|f| f.is_empty())
            }
        }
        _ => {
            let ev = evaluate(instance, c);
            ev.holds() && ev.hypotheses == entry.hypotheses
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::albert::admissible_m;

    fn grp(name: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::named(name).unwrap())
    }

    fn sign_c2(m: u64) -> (Arc<FiniteGroup>, CyclotomicCharacter) {
        let c2 = grp("C2");
        let chi = CyclotomicCharacter::new(c2.clone(), m, alloc::vec![1, m - 1]).unwrap();
        (c2, chi)
    }

    #[test]
    fn elliptic_curve_with_cm() {
        let (c2, chi) = sign_c2(3);
        let inst = Instance {
            g: Some(1),
            group: Some(c2),
            character: Some(chi),
            flags: Flags { dl_cm_field: true, dl_commutative: true, geometrically_simple: true, ..Flags::default() },
            ..Instance::new(3)
        }
        .validate()
        .unwrap();
        let v = decide(&inst).unwrap();
        assert_eq!(v.status, VerdictStatus::Holds);
        assert_eq!(v.criterion, Some(Criterion::C1));
        assert_eq!(v.entry(Criterion::C4).unwrap().outcome, Outcome::AlsoHolds);
        assert!(recheck(&inst, &v));
    }

    #[test]
    fn s3_case_fires_c6_with_the_sylow() {
        let s3 = grp("S3");
        let inst = Instance {
            g: Some(6),
            group: Some(s3),
            flags: Flags { dl_cm_field: true, dl_commutative: true, mu_m_in_d: true, ..Flags::default() },
            ..Instance::new(3)
        }
        .validate()
        .unwrap();
        let v = decide(&inst).unwrap();
        assert_eq!(v.criterion, Some(Criterion::C6));
        assert_eq!(v.entry(Criterion::C6).unwrap().witness.as_ref().unwrap().len(), 3);
        assert!(recheck(&inst, &v));
    }

    #[test]
    fn negative_control_stays_unknown() {
        let v4 = grp("C2xC2");
        let inst = Instance {
            g: Some(4),
            group: Some(v4),
            flags: Flags { dl_commutative: true, ..Flags::default() },
            ..Instance::new(2)
        }
        .validate()
        .unwrap();
        let v = decide(&inst).unwrap();
        assert_eq!(v.status, VerdictStatus::Unknown);
        assert!(v.trace.iter().all(|e| e.outcome == Outcome::Failed));
        assert!(recheck(&inst, &v));
    }

    #[test]
    fn validation_rules() {
        let (c2, chi) = sign_c2(3);
        let bad = Instance {
            group: Some(c2.clone()),
            character: Some(chi),
            flags: Flags { mu_m_in_d: true, ..Flags::default() },
            ..Instance::new(3)
        };
        assert!(matches!(bad.validate(), Err(LgpError::Inconsistent(_))));
        let ok = Instance { group: Some(grp("C1")), flags: Flags { dl_equals_d: true, ..Flags::default() }, ..Instance::new(3) };
        assert!(ok.validate().is_ok());
        let bad = Instance { group: Some(c2.clone()), flags: Flags { dl_equals_d: true, ..Flags::default() }, ..Instance::new(3) };
        assert!(bad.validate().is_err());
        let foreign = Subgroup::whole(grp("C3"));
        let bad = Instance { group: Some(c2), declared_decomposition_subgroups: alloc::vec![foreign], ..Instance::new(3) };
        assert!(bad.validate().is_err());
        assert!(Instance::new(0).validate().is_err());
        let bad = Instance { g: Some(2), flags: Flags { mu_m_in_d: true, ..Flags::default() }, ..Instance::new(7) };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn case_machine_examples() {
        let cm = case_machine_small_dimension(3, 3, None).unwrap();
        assert!(cm.holds);
        assert_eq!(cm.orders, alloc::vec![1, 3]);
        let by: Vec<_> = cm.cases.iter().map(|c| c.resolved_by).collect();
        assert_eq!(by, alloc::vec![Some(Criterion::C0), Some(Criterion::C1)]);

        let cm = case_machine_small_dimension(6, 3, None).unwrap();
        assert!(cm.holds);
        assert_eq!(cm.orders, alloc::vec![1, 2, 3, 6]);
        let s3 = cm.cases.iter().find(|c| c.group == "S3").unwrap();
        assert_eq!(s3.resolved_by, Some(Criterion::C6));
        assert!(cm.cases.iter().filter(|c| c.group != "S3" && c.order > 1).all(|c| c.resolved_by == Some(Criterion::C1)));

        let cm = case_machine_small_dimension(2, 5, None).unwrap();
        assert!(cm.holds);
        assert_eq!(cm.coprimality, Some(CoprimalityRule::DivisorBound { bound: 1 }));
        assert!(cm.cases.is_empty());
    }

    #[test]
    fn every_small_dimension_holds_without_a_group() {
        for g in 1..=8u64 {
            for m in admissible_m(g) {
                let inst = Instance {
                    g: Some(g),
                    flags: Flags { geometrically_simple: true, mu_m_in_d: true, ..Flags::default() },
                    ..Instance::new(m)
                }
                .validate()
                .unwrap();
                let v = decide(&inst).unwrap();
                assert_eq!(v.status, VerdictStatus::Holds, "g={g} m={m}");
                let expected = if (g == 3 || g == 6) && m == 3 { Criterion::C7 } else { Criterion::C2 };
                assert_eq!(v.criterion, Some(expected), "g={g} m={m}");
                assert!(recheck(&inst, &v));
            }
        }
    }

    #[test]
    fn coprime_trivial_action_fires_c5_with_whole_group() {
        let g = grp("D4");
        let inst = Instance {
            group: Some(g.clone()),
            flags: Flags { dl_commutative: true, ..Flags::default() },
            ..Instance::new(3)
        };
        let v = decide(&inst).unwrap();
        let e = v.entry(Criterion::C5).unwrap();
        assert_ne!(e.outcome, Outcome::Failed);
        assert_eq!(e.witness.as_ref().unwrap().len(), 8);
    }
}
