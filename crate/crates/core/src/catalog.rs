//! Isomorphism classes of small groups, one named representative each.
//!
//! Complete for every order up to 11 and for every prime order up to 64.
//! Other orders are reported as incomplete rather than partially listed.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::is_prime;
use crate::gmodules::{CyclotomicCharacter, GModule};
use crate::groups::{FiniteGroup, GroupError};

/// Names of all groups of order `n`, up to isomorphism, or `None` when the
/// catalog does not cover `n`.
pub fn names_of_order(n: usize) -> Option<Vec<String>> {
    let fixed: &[&str] = match n {
        1 => &["C1"],
        4 => &["C4", "C2xC2"],
        6 => &["C6", "S3"],
        8 => &["C8", "C2xC4", "C2xC2xC2", "D4", "Q8"],
        9 => &["C9", "C3xC3"],
        10 => &["C10", "D5"],
        _ if n <= 64 && is_prime(n as u64) => return Some(alloc::vec![format!("C{n}")]),
        _ => return None,
    };
    Some(fixed.iter().map(|s| String::from(*s)).collect())
}

/// All groups of order `n`, or `None` when the catalog does not cover `n`.
pub fn groups_of_order(n: usize) -> Option<Vec<FiniteGroup>> {
    names_of_order(n).map(|names| {
        names
            .iter()
            .map(|name| FiniteGroup::named(name).expect("catalog names parse"))
            .collect()
    })
}

/// Every catalogued group of order at most `max_order` (which must be ≤ 11).
pub fn groups_up_to(max_order: usize) -> Result<Vec<FiniteGroup>, GroupError> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        match groups_of_order(n) {
            Some(gs) => out.extend(gs),
            None => return Err(GroupError::UnknownName(format!("no catalog for order {n}"))),
        }
    }
    Ok(out)
}

/// A coefficient module with a short description.
#[derive(Debug, Clone)]
pub struct SampleModule {
    pub label: String,
    pub module: GModule,
}

fn with_action(g: &Arc<FiniteGroup>, orders: &[u64], given: &[(usize, Vec<Vec<i64>>)]) -> GModule {
    let map: BTreeMap<usize, Vec<Vec<i64>>> = given.iter().cloned().collect();
    GModule::from_partial_action(g.clone(), orders, &map).expect("sample actions are valid")
}

fn named(name: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::named(name).expect("catalog names parse"))
}

/// Every catalogued group of order at most `max_order` with `μ_m` under
/// every character, for each listed `m`, followed by a few rank-2 modules
/// with nontrivial action.
pub fn sample_modules(max_order: usize, ms: &[u64]) -> Result<Vec<SampleModule>, GroupError> {
    let mut out = Vec::new();
    for g in groups_up_to(max_order)? {
        let g = Arc::new(g);
        for &m in ms {
            for chi in CyclotomicCharacter::all(&g, m) {
                let module = GModule::mu_module(g.clone(), m, &chi).expect("characters from `all` are valid");
                out.push(SampleModule { label: format!("{} mu_{m} chi={:?}", g.label(), chi.values()), module });
            }
        }
    }
    let swap = vec![vec![0, 1], vec![1, 0]];
    let id = vec![vec![1, 0], vec![0, 1]];
    let mut push = |label: &str, module: GModule| out.push(SampleModule { label: label.into(), module });
    if max_order >= 2 {
        let c2 = named("C2");
        push("C2 swap (Z/2)^2", with_action(&c2, &[2, 2], &[(1, swap.clone())]));
        push("C2 swap (Z/3)^2", with_action(&c2, &[3, 3], &[(1, swap.clone())]));
        push("C2 trivial Z/2+Z/4", GModule::trivial_action(c2, &[2, 4]).expect("positive orders"));
    }
    if max_order >= 3 {
        let c3 = named("C3");
        push("C3 order-3 matrix on (Z/2)^2", with_action(&c3, &[2, 2], &[(1, vec![vec![0, 1], vec![1, 1]])]));
    }
    if max_order >= 4 {
        let v4 = named("C2xC2");
        push("C2xC2 trivial (Z/2)^2", GModule::trivial_action(v4.clone(), &[2, 2]).expect("positive orders"));
        push("C2xC2 one factor swaps (Z/2)^2", with_action(&v4, &[2, 2], &[(2, swap.clone()), (1, id)]));
    }
    if max_order >= 6 {
        let s3 = named("S3");
        push("S3 as GL2(F2) on (Z/2)^2", with_action(&s3, &[2, 2], &[(1, swap), (2, vec![vec![1, 1], vec![0, 1]])]));
    }
    Ok(out)
}
