//! The reproduction suite run by `twistcert verify-paper`.
//!
//! Each check recomputes a published fact from scratch and compares it with
//! the expected value. Output carries no timings so that two runs are
//! byte-identical.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use twistcert_core::albert::{admissible_m, fermat_squarefree_check};
use twistcert_core::arith::{gcd, pow_mod};
use twistcert_core::catalog::{groups_up_to, sample_modules};
use twistcert_core::cohomology::{
    cohomology, conjugation_on_cohomology, default_family, inflation_from_normal, restriction, sha_finite,
};
use twistcert_core::groups::Subgroup;
use twistcert_core::lgp::{decide, recheck, Criterion, Flags, Outcome};
use twistcert_core::oracle::{brute_h1, brute_h2, brute_sha, OracleBudget, OracleError};
use twistcert_core::{CyclotomicCharacter, FiniteGroup, GModule, Instance, VerdictStatus};

/// Expected values and limits. The defaults are the published tables.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub admissible: Vec<(u64, Vec<u64>)>,
    pub budget: OracleBudget,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            admissible: vec![
                (3, vec![3, 7, 9]),
                (5, vec![3, 11]),
                (6, vec![3, 5, 7, 9, 13, 21]),
                (7, vec![3]),
            ],
            budget: OracleBudget { max_functions: 2_000_000 },
        }
    }
}

type CheckFn = fn(&SuiteOptions) -> Result<String, String>;

pub struct Check {
    pub id: &'static str,
    pub tags: &'static [&'static str],
    pub citation: &'static str,
    run: CheckFn,
}

pub const CHECKS: &[Check] = &[
    Check {
        id: "admissible-orders",
        tags: &["albert", "small-dimension"],
        citation: "odd m >= 3 with phi(m) | 2g: g=3 -> {3,7,9}, g=5 -> {3,11}, g=6 -> {3,5,7,9,13,21}, g=7 -> {3}; \
                   for g = 2^a, squarefree products of Fermat primes",
        run: admissible_orders,
    },
    Check {
        id: "small-dimension-cases",
        tags: &["small-dimension", "lgp"],
        citation: "geometrically simple A, mu_m in D, g <= 8: coprimality of m and d, except g in {3,6} with m = 3, \
                   settled by the cyclic and S3 cases",
        run: small_dimension_cases,
    },
    Check {
        id: "coprime-order-vanishing",
        tags: &["cohomology", "hochschild-serre"],
        citation: "H^j(N, mu_m) = 1 for j = 1, 2 when |N| is prime to m",
        run: coprime_order_vanishing,
    },
    Check {
        id: "cyclic-closed-forms",
        tags: &["cohomology", "oracle"],
        citation: "H^1(C_n, Z/m) = H^2(C_n, Z/m) = Z/gcd(n, m) for trivial action",
        run: cyclic_closed_forms,
    },
    Check {
        id: "inflation-restriction",
        tags: &["cohomology", "hochschild-serre"],
        citation: "inflation H^2(G/N, mu_m^N) -> H^2(G, mu_m) is an isomorphism for |N| prime to m; \
                   restriction H^2(S3, mu_3) -> H^2(C3, mu_3)^{C2} is an isomorphism",
        run: inflation_restriction,
    },
    Check {
        id: "worked-examples",
        tags: &["examples", "lgp"],
        citation: "CM elliptic curve with m = 3 (cyclic Galois group); CM by Q(zeta_m) with full cyclotomic \
                   action, where mu_m^G = 1",
        run: worked_examples,
    },
    Check {
        id: "negative-control",
        tags: &["examples", "lgp"],
        citation: "m = 2 in dimension 4 admits counterexamples, so no criterion may certify it",
        run: negative_control,
    },
    Check {
        id: "oracle-equivalence",
        tags: &["oracle", "cohomology"],
        citation: "Smith normal form engine agrees with brute-force cocycle enumeration in degrees 1 and 2",
        run: oracle_equivalence,
    },
    Check {
        id: "locally-trivial-kernel",
        tags: &["sha", "cohomology"],
        citation: "locally trivial classes vanish when G is a decomposition group, vanish for trivial action over \
                   all cyclic subgroups, and fill H^1 when only the trivial subgroup is used",
        run: locally_trivial_kernel,
    },
    Check {
        id: "trace-recheck",
        tags: &["lgp", "determinism"],
        citation: "every verdict is reproducible: deciding twice gives the same trace and the fired criterion \
                   re-verifies",
        run: trace_recheck,
    },
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub citation: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub filter: Option<String>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{mark}  {:width$}  {}", c.id, c.citation);
            let _ = writeln!(out, "      {:width$}  {}", "", c.detail);
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "{passed}/{} checks passed", self.checks.len());
        if self.checks.is_empty() {
            let filter = self.filter.as_deref().unwrap_or("");
            let _ = writeln!(out, "no check matches filter {filter:?}");
        } else if !self.passed {
            let _ = writeln!(out, "failed: {}", self.failed().join(", "));
        }
        out
    }
}

impl Check {
    pub fn matches(&self, filter: &str) -> bool {
        self.id.contains(filter) || self.tags.iter().any(|t| t.contains(filter))
    }

    pub fn run(&self, options: &SuiteOptions) -> CheckResult {
        let (passed, detail) = match (self.run)(options) {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        CheckResult { id: self.id.to_string(), citation: self.citation.to_string(), passed, detail }
    }
}

pub fn run_suite(filter: Option<&str>, options: &SuiteOptions) -> SuiteReport {
    let checks: Vec<CheckResult> = CHECKS
        .iter()
        .filter(|c| filter.is_none_or(|f| c.matches(f)))
        .map(|c| c.run(options))
        .collect();
    let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
    SuiteReport { filter: filter.map(str::to_string), checks, passed }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn named(name: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::named(name).expect("built-in names parse"))
}

fn mu(g: &Arc<FiniteGroup>, m: u64, chi: &CyclotomicCharacter) -> GModule {
    GModule::mu_module(g.clone(), m, chi).expect("characters are valid")
}

fn factors_of(n: u64) -> Vec<u64> {
    if n == 1 {
        vec![]
    } else {
        vec![n]
    }
}

fn admissible_orders(o: &SuiteOptions) -> Result<String, String> {
    for (g, expected) in &o.admissible {
        let got = admissible_m(*g);
        ensure(&got == expected, || format!("g = {g}: computed {got:?}, expected {expected:?}"))?;
    }
    for a in 0..=4 {
        let g = 1u64 << a;
        let got = admissible_m(g);
        ensure(got.iter().all(|&m| fermat_squarefree_check(m)), || {
            format!("g = {g}: {got:?} contains a non-Fermat product")
        })?;
    }
    let tables: Vec<String> = o.admissible.iter().map(|(g, l)| format!("g={g}: {l:?}")).collect();
    Ok(format!("{}; g = 1, 2, 4, 8, 16 give Fermat products", tables.join("; ")))
}

/// The instance used for the small-dimension reproduction.
pub fn small_dimension_instance(g: u64, m: u64) -> Instance {
    Instance {
        g: Some(g),
        flags: Flags { geometrically_simple: true, mu_m_in_d: true, ..Flags::default() },
        ..Instance::new(m)
    }
}

fn small_dimension_cases(_: &SuiteOptions) -> Result<String, String> {
    let mut coprime = 0;
    let mut cases = 0;
    for g in 1..=8u64 {
        for m in admissible_m(g) {
            let inst = small_dimension_instance(g, m);
            let v = decide(&inst).map_err(|e| format!("g={g} m={m}: {e}"))?;
            ensure(v.status == VerdictStatus::Holds, || format!("g={g} m={m}: UNKNOWN"))?;
            let expected = if (g == 3 || g == 6) && m == 3 { Criterion::C7 } else { Criterion::C2 };
            ensure(v.criterion == Some(expected), || format!("g={g} m={m}: fired {:?}, expected {expected}", v.criterion))?;
            let c7 = v.entry(Criterion::C7).expect("every criterion is traced");
            ensure(c7.outcome != Outcome::Failed, || format!("g={g} m={m}: case analysis failed"))?;
            if g == 8 {
                ensure(c7.notes.iter().any(|n| n.contains("g = 8")), || "g = 8 discrepancy not noted".into())?;
            }
            if expected == Criterion::C7 {
                let mut resolved: Vec<(String, Option<Criterion>)> =
                    c7.cases.iter().map(|c| (c.group.clone(), c.resolved_by)).collect();
                resolved.sort();
                let want: Vec<(String, Option<Criterion>)> = if g == 3 {
                    vec![("C1".into(), Some(Criterion::C0)), ("C3".into(), Some(Criterion::C1))]
                } else {
                    vec![
                        ("C1".into(), Some(Criterion::C0)),
                        ("C2".into(), Some(Criterion::C1)),
                        ("C3".into(), Some(Criterion::C1)),
                        ("C6".into(), Some(Criterion::C1)),
                        ("S3".into(), Some(Criterion::C6)),
                    ]
                };
                ensure(resolved == want, || format!("g={g} m=3: cases {resolved:?}"))?;
                cases += 1;
            } else {
                coprime += 1;
            }
        }
    }
    Ok(format!("{coprime} pairs by coprimality, {cases} by case analysis (g = 3: C1, C3; g = 6: C1, C2, C3, C6, S3)"))
}

fn coprime_order_vanishing(_: &SuiteOptions) -> Result<String, String> {
    let mut count = 0;
    for n in groups_up_to(8).map_err(|e| e.to_string())? {
        let n = Arc::new(n);
        for m in [3u64, 5, 7, 9] {
            if gcd(n.order() as u64, m) != 1 {
                continue;
            }
            for chi in CyclotomicCharacter::all(&n, m) {
                let module = mu(&n, m, &chi);
                for degree in [1, 2] {
                    let h = cohomology(&module, degree).map_err(|e| e.to_string())?;
                    ensure(h.is_trivial(), || {
                        format!("H^{degree}({}, mu_{m}) with {:?} = {:?}", n.label(), chi.values(), h.invariant_factors())
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} groups computed, all trivial"))
}

fn cyclic_closed_forms(o: &SuiteOptions) -> Result<String, String> {
    let mut checked = 0;
    let mut oracle = 0;
    for n in 1..=8usize {
        let g = Arc::new(FiniteGroup::cyclic(n).map_err(|e| e.to_string())?);
        for m in [3u64, 5, 7, 9] {
            let module = GModule::trivial_action(g.clone(), &[m]).map_err(|e| e.to_string())?;
            let expected = factors_of(gcd(n as u64, m));
            for degree in [1, 2] {
                let h = cohomology(&module, degree).map_err(|e| e.to_string())?;
                ensure(h.invariant_factors() == expected.as_slice(), || {
                    format!("H^{degree}(C{n}, Z/{m}) = {:?}, expected {expected:?}", h.invariant_factors())
                })?;
                checked += 1;
                let brute = if degree == 1 { brute_h1(&module, o.budget) } else { brute_h2(&module, o.budget) };
                match brute {
                    Ok(f) => {
                        ensure(f == expected, || format!("oracle H^{degree}(C{n}, Z/{m}) = {f:?}"))?;
                        oracle += 1;
                    }
                    Err(OracleError::BudgetExceeded { .. }) => {}
                    Err(e) => return Err(e.to_string()),
                }
            }
        }
    }
    Ok(format!("{checked} groups match gcd(n, m), {oracle} also confirmed by enumeration"))
}

fn subgroup(g: &Arc<FiniteGroup>, elements: &[usize]) -> Subgroup {
    Subgroup::new(g.clone(), elements).expect("fixed subgroups are valid")
}

fn inflation_restriction(_: &SuiteOptions) -> Result<String, String> {
    let mut lines = Vec::new();
    let c6 = named("C6");
    let s3 = named("S3");
    for (g, n, m) in [(&c6, subgroup(&c6, &[0, 3]), 3u64), (&s3, subgroup(&s3, &[0, 3, 4]), 5)] {
        for chi in CyclotomicCharacter::all(g, m) {
            let module = mu(g, m, &chi);
            let (_, small, big, inf) = inflation_from_normal(&module, &n, 2).map_err(|e| e.to_string())?;
            ensure(inf.is_isomorphism(), || {
                format!(
                    "inflation into H^2({}, mu_{m}) with {:?} is not an isomorphism: {:?} -> {:?}",
                    g.label(),
                    chi.values(),
                    small.invariant_factors(),
                    big.invariant_factors()
                )
            })?;
            lines.push(format!("inf {}/{} m={m} {:?}: {:?}", g.label(), n.order(), chi.values(), big.invariant_factors()));
        }
    }
    let c3 = subgroup(&s3, &[0, 3, 4]);
    for chi in CyclotomicCharacter::all(&s3, 3) {
        let module = mu(&s3, 3, &chi);
        let h = cohomology(&module, 2).map_err(|e| e.to_string())?;
        let (_, res) = restriction(&h, &c3).map_err(|e| e.to_string())?;
        let action = conjugation_on_cohomology(&module, &c3, 2).map_err(|e| e.to_string())?;
        let fixed = action.invariant_classes();
        let lands_in_fixed = (0..res.source.len()).all(|i| {
            let mut x = vec![0; res.source.len()];
            x[i] = 1;
            let y = res.apply(&x);
            action.matrices.iter().all(|a| a.apply(&y) == y)
        });
        ensure(res.is_injective() && lands_in_fixed && fixed.order() == h.order(), || {
            format!("restriction to C3 with {:?} is not an isomorphism onto invariants", chi.values())
        })?;
        lines.push(format!("res S3 -> C3 m=3 {:?}: {:?} = invariants", chi.values(), h.invariant_factors()));
    }
    Ok(lines.join("; "))
}

/// CM elliptic curve: `G = C2` acting on `μ_3` by `-1`, `D_L` an imaginary quadratic field.
pub fn cm_elliptic_curve() -> Instance {
    let c2 = named("C2");
    Instance {
        g: Some(1),
        character: Some(CyclotomicCharacter::new(c2.clone(), 3, vec![1, 2]).expect("unit values")),
        group: Some(c2),
        flags: Flags { dl_commutative: true, dl_cm_field: true, geometrically_simple: true, ..Flags::default() },
        ..Instance::new(3)
    }
}

/// CM by `Q(ζ_m)` with `G = (Z/m)^×` acting on `μ_m` through the identity.
/// Supported for `m = 3` (`G = C2`) and `m = 15` (`G = C2×C4`).
pub fn full_cyclotomic(m: u64) -> Instance {
    let (group, values): (Arc<FiniteGroup>, Vec<u64>) = match m {
        3 => (named("C2"), vec![1, 2]),
        // (Z/15)^× = <11> × <2>, element (a, b) at index 4a + b
        15 => {
            let g = named("C2xC4");
            let values = (0..8).map(|i| pow_mod(11, i / 4, 15) * pow_mod(2, i % 4, 15) % 15).collect();
            (g, values)
        }
        _ => panic!("no built-in full cyclotomic instance for m = {m}"),
    };
    let g = twistcert_core::arith::phi(m) / 2;
    Instance {
        g: Some(g),
        character: Some(CyclotomicCharacter::new(group.clone(), m, values).expect("unit values")),
        group: Some(group),
        flags: Flags { dl_commutative: true, geometrically_simple: true, ..Flags::default() },
        ..Instance::new(m)
    }
}

/// `m = 2`, `g = 4`, `G = C2×C2`, trivial action on `μ_2`, `D_L` commutative.
pub fn negative_control_instance() -> Instance {
    Instance {
        g: Some(4),
        group: Some(named("C2xC2")),
        flags: Flags { dl_commutative: true, ..Flags::default() },
        ..Instance::new(2)
    }
}

fn worked_examples(_: &SuiteOptions) -> Result<String, String> {
    let ec = decide(&cm_elliptic_curve()).map_err(|e| e.to_string())?;
    ensure(ec.status == VerdictStatus::Holds && ec.criterion == Some(Criterion::C1), || {
        format!("elliptic curve: {:?} via {:?}", ec.status, ec.criterion)
    })?;
    ensure(ec.citations == vec![Criterion::C1.citation().to_string()], || "elliptic curve citation".into())?;
    let ggl = decide(&full_cyclotomic(3)).map_err(|e| e.to_string())?;
    ensure(ggl.status == VerdictStatus::Holds, || "full cyclotomic m = 3: UNKNOWN".into())?;
    let c4 = ggl.entry(Criterion::C4).expect("traced");
    ensure(c4.outcome != Outcome::Failed, || "full cyclotomic m = 3: mu_m^G = 1 not established".into())?;
    let ggl15 = decide(&full_cyclotomic(15)).map_err(|e| e.to_string())?;
    ensure(ggl15.criterion == Some(Criterion::C4), || format!("full cyclotomic m = 15 fired {:?}", ggl15.criterion))?;
    Ok(format!(
        "elliptic curve: HOLDS via C1, C4 {}; m = 3: HOLDS via {}, C4 {}; m = 15 (G = C2xC4): HOLDS via C4",
        ec.entry(Criterion::C4).expect("traced").outcome.as_str(),
        ggl.criterion.expect("holds"),
        c4.outcome.as_str()
    ))
}

fn negative_control(_: &SuiteOptions) -> Result<String, String> {
    let v = decide(&negative_control_instance()).map_err(|e| e.to_string())?;
    ensure(v.status == VerdictStatus::Unknown, || format!("certified via {:?}", v.criterion))?;
    Ok(format!("UNKNOWN, {} criteria attempted and failed", v.trace.len()))
}

fn oracle_equivalence(o: &SuiteOptions) -> Result<String, String> {
    let mut counts = [0usize; 2];
    for (degree, max_order, max_size) in [(1usize, 8usize, 9u128), (2, 6, 9), (2, 8, 3)] {
        for s in sample_modules(max_order, &[2, 3, 4, 5, 7, 8, 9]).map_err(|e| e.to_string())? {
            if s.module.cardinality() > max_size {
                continue;
            }
            let brute = if degree == 1 { brute_h1(&s.module, o.budget) } else { brute_h2(&s.module, o.budget) };
            let f = match brute {
                Ok(f) => f,
                Err(OracleError::BudgetExceeded { .. }) => continue,
                Err(e) => return Err(e.to_string()),
            };
            let h = cohomology(&s.module, degree).map_err(|e| e.to_string())?;
            ensure(h.invariant_factors() == f.as_slice(), || {
                format!("H^{degree} of {}: engine {:?}, oracle {f:?}", s.label, h.invariant_factors())
            })?;
            counts[degree - 1] += 1;
        }
    }
    ensure(counts.iter().all(|&c| c >= 40), || format!("too few pairs within budget: {counts:?}"))?;
    Ok(format!("{} pairs in degree 1, {} in degree 2", counts[0], counts[1]))
}

fn locally_trivial_kernel(o: &SuiteOptions) -> Result<String, String> {
    let mut count = 0;
    for s in sample_modules(8, &[2, 3, 4, 5]).map_err(|e| e.to_string())? {
        let g = s.module.group().clone();
        let h1 = cohomology(&s.module, 1).map_err(|e| e.to_string())?;
        let cyclic = default_family(&g, &[]);
        let mut with_g = cyclic.clone();
        with_g.push(Subgroup::whole(g.clone()));
        let sha = |family: &[Subgroup]| sha_finite(&s.module, family).map_err(|e| e.to_string());
        ensure(sha(&with_g)?.is_trivial(), || format!("{}: nontrivial with G in the family", s.label))?;
        let all = sha(&[Subgroup::trivial(g.clone())])?;
        ensure(all.invariant_factors() == h1.invariant_factors(), || format!("{}: trivial family differs from H^1", s.label))?;
        let local = sha(&cyclic)?;
        if s.module.has_trivial_action() {
            ensure(local.is_trivial(), || format!("{}: nontrivial for trivial action", s.label))?;
        }
        if let Ok(f) = brute_sha(&s.module, &cyclic, o.budget) {
            ensure(f == local.invariant_factors(), || format!("{}: oracle {f:?}, engine {:?}", s.label, local.invariant_factors()))?;
        }
        count += 1;
    }
    Ok(format!("{count} modules"))
}

fn trace_recheck(_: &SuiteOptions) -> Result<String, String> {
    let s3 = named("S3");
    let mut instances = vec![
        cm_elliptic_curve(),
        full_cyclotomic(3),
        full_cyclotomic(15),
        negative_control_instance(),
        Instance {
            g: Some(6),
            group: Some(s3),
            flags: Flags { dl_commutative: true, dl_cm_field: true, mu_m_in_d: true, ..Flags::default() },
            ..Instance::new(3)
        },
    ];
    for g in 1..=8u64 {
        for m in admissible_m(g) {
            instances.push(small_dimension_instance(g, m));
        }
    }
    for inst in &instances {
        let a = decide(inst).map_err(|e| e.to_string())?;
        let b = decide(inst).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("m={} g={:?}: traces differ between runs", inst.m, inst.g))?;
        ensure(recheck(inst, &a), || format!("m={} g={:?}: recheck failed", inst.m, inst.g))?;
    }
    Ok(format!("{} instances decided twice and rechecked", instances.len()))
}
