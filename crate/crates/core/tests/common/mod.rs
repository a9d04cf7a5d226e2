#![allow(dead_code)]

use std::sync::Arc;

use twistcert_core::catalog::{sample_modules, SampleModule};
use twistcert_core::{CyclotomicCharacter, FiniteGroup, GModule};

pub type Pair = SampleModule;

pub fn grp(name: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::named(name).unwrap())
}

pub fn mu(g: &Arc<FiniteGroup>, m: u64, values: &[u64]) -> GModule {
    let chi = CyclotomicCharacter::new(g.clone(), m, values.to_vec()).unwrap();
    GModule::mu_module(g.clone(), m, &chi).unwrap()
}

pub fn trivial(g: &Arc<FiniteGroup>, orders: &[u64]) -> GModule {
    GModule::trivial_action(g.clone(), orders).unwrap()
}

pub fn catalog_pairs(max_order: usize, ms: &[u64]) -> Vec<Pair> {
    sample_modules(max_order, ms).unwrap()
}
