//! Finite abelian groups with a left action of a finite group.
//!
//! A module is `⊕ Z/d_i` with `d_1 | d_2 | ... | d_r`, all `d_i > 1`, and an
//! `r × r` matrix per group element acting on column vectors. Entries of row
//! `i` are meaningful modulo `d_i`. All matrices are stored over `Z/e` with
//! `e = d_r` the exponent; the module relations `d_i e_i` travel alongside.
//!
//! `μ_m` is written additively as `Z/m`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{gcd, lcm, mul_mod, reduce};
use crate::groups::{FiniteGroup, Quotient, Subgroup};
use crate::linalg::{diagonal_relations, preimage, SmithForm, Subquotient, Transforms, ZnMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleError {
    BadCharacter(String),
    BadOrders(String),
    DimensionMismatch(String),
    /// The matrices do not define an action: not well defined on the
    /// quotient, identity not fixed, or not multiplicative.
    NotAnAction(String),
    NotStable,
    NotInModule,
    GroupMismatch,
}

impl fmt::Display for ModuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleError::BadCharacter(why) => write!(f, "bad character: {why}"),
            ModuleError::BadOrders(why) => write!(f, "bad orders: {why}"),
            ModuleError::DimensionMismatch(why) => write!(f, "dimension mismatch: {why}"),
            ModuleError::NotAnAction(why) => write!(f, "not a group action: {why}"),
            ModuleError::NotStable => write!(f, "generators do not span a G-stable subgroup"),
            ModuleError::NotInModule => write!(f, "vector is not an element of the module"),
            ModuleError::GroupMismatch => write!(f, "module and subgroup live over different groups"),
        }
    }
}

impl core::error::Error for ModuleError {}

/// An element of a [`GModule`], coordinate `i` reduced modulo `d_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModuleElement {
    pub coordinates: Vec<u64>,
}

/// A homomorphism `G → (Z/m)^×`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicCharacter {
    group: Arc<FiniteGroup>,
    m: u64,
    values: Vec<u64>,
}

impl CyclotomicCharacter {
    pub fn new(group: Arc<FiniteGroup>, m: u64, values: Vec<u64>) -> Result<Self, ModuleError> {
        if m == 0 {
            return Err(ModuleError::BadCharacter("m must be positive".into()));
        }
        if values.len() != group.order() {
            return Err(ModuleError::BadCharacter(format!(
                "{} values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        let values: Vec<u64> = values.into_iter().map(|v| v % m).collect();
        if let Some((g, &v)) = values.iter().enumerate().find(|&(_, &v)| gcd(v, m) != 1) {
            return Err(ModuleError::BadCharacter(format!("value {v} at element {g} is not a unit mod {m}")));
        }
        if values[0] != 1 % m {
            return Err(ModuleError::BadCharacter("identity must map to 1".into()));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if values[group.mul(a, b)] != mul_mod(values[a], values[b], m) {
                    return Err(ModuleError::BadCharacter(format!("not multiplicative on ({a}, {b})")));
                }
            }
        }
        Ok(CyclotomicCharacter { group, m, values })
    }

    pub fn trivial(group: Arc<FiniteGroup>, m: u64) -> Self {
        let values = vec![1 % m.max(1); group.order()];
        CyclotomicCharacter { group, m: m.max(1), values }
    }

    /// Every character `G → (Z/m)^×`, in lexicographic order of values.
    pub fn all(group: &Arc<FiniteGroup>, m: u64) -> Vec<CyclotomicCharacter> {
        let gens = group.generators();
        let units: Vec<u64> = (0..m).filter(|&u| gcd(u, m) == 1).collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        loop {
            if let Some(values) = extend_on_generators(group, m, &gens, &choice, &units) {
                if let Ok(chi) = CyclotomicCharacter::new(group.clone(), m, values) {
                    out.push(chi);
                }
            }
            // odometer over generator images
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < units.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
        out.sort_by(|a, b| a.values.cmp(&b.values));
        out.dedup_by(|a, b| a.values == b.values);
        out
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, g: usize) -> u64 {
        self.values[g]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 1 % self.m)
    }
}

fn extend_on_generators(
    group: &FiniteGroup,
    m: u64,
    gens: &[usize],
    choice: &[usize],
    units: &[u64],
) -> Option<Vec<u64>> {
    let mut values: Vec<Option<u64>> = vec![None; group.order()];
    values[0] = Some(1 % m);
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for (k, &g) in gens.iter().enumerate() {
            let y = group.mul(g, x);
            let v = mul_mod(units[choice[k]], values[x].expect("visited"), m);
            match values[y] {
                None => {
                    values[y] = Some(v);
                    frontier.push(y);
                }
                Some(w) if w != v => return None,
                Some(_) => {}
            }
        }
    }
    values.into_iter().collect()
}

/// Change of coordinates produced by normalization: `to_new` maps original
/// coordinates to normalized ones, `to_old` maps back.
#[derive(Debug, Clone)]
pub struct BasisChange {
    pub to_new: ZnMatrix,
    pub to_old: ZnMatrix,
}

#[derive(Clone)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    orders: Vec<u64>,
    exponent: u64,
    action: Vec<ZnMatrix>,
}

impl fmt::Debug for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GModule({} acting on {:?})", self.group.label(), self.orders)
    }
}

impl PartialEq for GModule {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.orders == other.orders && self.action == other.action
    }
}

impl Eq for GModule {}

impl GModule {
    /// Builds `⊕ Z/orders[i]` with `action[g]` acting on column vectors.
    pub fn new(group: Arc<FiniteGroup>, orders: &[u64], action: &[Vec<Vec<i64>>]) -> Result<GModule, ModuleError> {
        GModule::with_basis_change(group, orders, action).map(|(m, _)| m)
    }

    /// As [`GModule::new`], also returning the normalizing change of coordinates.
    pub fn with_basis_change(
        group: Arc<FiniteGroup>,
        orders: &[u64],
        action: &[Vec<Vec<i64>>],
    ) -> Result<(GModule, BasisChange), ModuleError> {
        let r = orders.len();
        if orders.contains(&0) {
            return Err(ModuleError::BadOrders("orders must be positive".into()));
        }
        if action.len() != group.order() {
            return Err(ModuleError::DimensionMismatch(format!(
                "{} matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        let e = orders.iter().fold(1, |acc, &d| lcm(acc, d));
        let mut mats = Vec::with_capacity(action.len());
        for (g, a) in action.iter().enumerate() {
            if a.len() != r || a.iter().any(|row| row.len() != r) {
                return Err(ModuleError::DimensionMismatch(format!("matrix for element {g} is not {r}×{r}")));
            }
            let mut m = ZnMatrix::zeros(r, r, e);
            for i in 0..r {
                for j in 0..r {
                    m.set(i, j, reduce(a[i][j] as i128, orders[i]));
                }
            }
            mats.push(m);
        }
        GModule::from_matrices(group, orders.to_vec(), mats)
    }

    /// Matrices already over `Z/lcm(orders)`.
    fn from_matrices(
        group: Arc<FiniteGroup>,
        orders: Vec<u64>,
        mats: Vec<ZnMatrix>,
    ) -> Result<(GModule, BasisChange), ModuleError> {
        let r = orders.len();
        let e = orders.iter().fold(1, |acc, &d| lcm(acc, d));
        for (g, a) in mats.iter().enumerate() {
            for i in 0..r {
                for j in 0..r {
                    if mul_mod(a.get(i, j), orders[j], e) % orders[i] != 0 {
                        return Err(ModuleError::NotAnAction(format!(
                            "element {g}: entry ({i}, {j}) does not respect the orders"
                        )));
                    }
                }
            }
        }
        let eq_mod_orders = |x: &ZnMatrix, y: &ZnMatrix| {
            (0..r).all(|i| (0..r).all(|j| x.get(i, j) % orders[i] == y.get(i, j) % orders[i]))
        };
        if !eq_mod_orders(&mats[0], &ZnMatrix::identity(r, e)) {
            return Err(ModuleError::NotAnAction("identity does not act trivially".into()));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if !eq_mod_orders(&mats[a].mul(&mats[b]), &mats[group.mul(a, b)]) {
                    return Err(ModuleError::NotAnAction(format!("A({a})·A({b}) ≠ A({a}·{b})")));
                }
            }
        }

        // Normalize: P · diag(orders) · Q = S over Z/e; new coordinates y = P x.
        let mut diag = ZnMatrix::zeros(r, r, e);
        for (i, &d) in orders.iter().enumerate() {
            diag.set(i, i, d);
        }
        let snf = SmithForm::compute(&diag, Transforms { p: true, p_inv: true, ..Transforms::NONE });
        let p = snf.p().expect("requested");
        let p_inv = snf.p_inv().expect("requested");
        let keep: Vec<(usize, u64)> = snf
            .cokernel_orders()
            .into_iter()
            .enumerate()
            .filter(|&(_, d)| d > 1)
            .collect();
        let new_orders: Vec<u64> = keep.iter().map(|&(_, d)| d).collect();
        let e2 = new_orders.last().copied().unwrap_or(1);
        let k = keep.len();
        let mut to_new = ZnMatrix::zeros(k, r, e);
        let mut to_old = ZnMatrix::zeros(r, k, e);
        for (a, &(i, _)) in keep.iter().enumerate() {
            for j in 0..r {
                to_new.set(a, j, p.get(i, j));
                to_old.set(j, a, p_inv.get(j, i));
            }
        }
        let action = mats
            .iter()
            .map(|a| {
                let full = to_new.mul(a).mul(&to_old);
                let mut out = ZnMatrix::zeros(k, k, e2);
                for i in 0..k {
                    for j in 0..k {
                        out.set(i, j, full.get(i, j) % new_orders[i]);
                    }
                }
                out
            })
            .collect();
        let module = GModule { group, orders: new_orders, exponent: e2, action };
        Ok((module, BasisChange { to_new, to_old }))
    }

    pub fn trivial_action(group: Arc<FiniteGroup>, orders: &[u64]) -> Result<GModule, ModuleError> {
        let r = orders.len();
        let id: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        let action = vec![id; group.order()];
        GModule::new(group, orders, &action)
    }

    /// The zero module.
    pub fn zero(group: Arc<FiniteGroup>) -> GModule {
        let action = vec![ZnMatrix::zeros(0, 0, 1); group.order()];
        GModule { group, orders: Vec::new(), exponent: 1, action }
    }

    /// Builds an action from the images of some group elements, closing up under products.
    pub fn from_partial_action(
        group: Arc<FiniteGroup>,
        orders: &[u64],
        given: &BTreeMap<usize, Vec<Vec<i64>>>,
    ) -> Result<GModule, ModuleError> {
        let r = orders.len();
        let e = orders.iter().fold(1, |acc, &d| lcm(acc, d));
        let mut known: Vec<Option<ZnMatrix>> = vec![None; group.order()];
        known[0] = Some(ZnMatrix::identity(r, e));
        let mut gens = Vec::new();
        for (&g, a) in given {
            if g >= group.order() {
                return Err(ModuleError::DimensionMismatch(format!("element {g} out of range")));
            }
            if a.len() != r || a.iter().any(|row| row.len() != r) {
                return Err(ModuleError::DimensionMismatch(format!("matrix for element {g} is not {r}×{r}")));
            }
            let mut m = ZnMatrix::zeros(r, r, e);
            for i in 0..r {
                for j in 0..r {
                    m.set(i, j, reduce(a[i][j] as i128, orders[i]));
                }
            }
            gens.push((g, m));
        }
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for (g, a) in &gens {
                let y = group.mul(*g, x);
                if known[y].is_none() {
                    known[y] = Some(a.mul(known[x].as_ref().expect("visited")));
                    frontier.push(y);
                }
            }
        }
        // explicit entries win; consistency is checked by the action axioms
        for (g, a) in gens {
            known[g] = Some(a);
        }
        let mats: Option<Vec<ZnMatrix>> = known.into_iter().collect();
        let mats = mats.ok_or_else(|| ModuleError::NotAnAction("given elements do not generate the group".into()))?;
        GModule::from_matrices(group, orders.to_vec(), mats).map(|(m, _)| m)
    }

    /// `μ_m` as `Z/m` with `g` acting by multiplication by `chi(g)`.
    pub fn mu_module(group: Arc<FiniteGroup>, m: u64, chi: &CyclotomicCharacter) -> Result<GModule, ModuleError> {
        if chi.m != m {
            return Err(ModuleError::BadCharacter(format!("character is mod {}, expected mod {m}", chi.m)));
        }
        if *chi.group != *group {
            return Err(ModuleError::BadCharacter("character lives on a different group".into()));
        }
        let action: Vec<Vec<Vec<i64>>> = chi.values.iter().map(|&u| vec![vec![u as i64]]).collect();
        GModule::new(group, &[m], &action)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Invariant factors, all greater than one.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// `lcm` of the orders; `1` for the zero module.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `|M|`, saturating.
    pub fn cardinality(&self) -> u128 {
        self.orders.iter().fold(1u128, |acc, &d| acc.saturating_mul(d as u128))
    }

    pub fn is_zero(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn action(&self, g: usize) -> &ZnMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[ZnMatrix] {
        &self.action
    }

    pub fn has_trivial_action(&self) -> bool {
        let id = ZnMatrix::identity(self.rank(), self.exponent);
        self.action.iter().all(|a| *a == id)
    }

    /// Reduces coordinate `i` modulo `d_i`.
    pub fn reduce(&self, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.orders).map(|(&v, &d)| v % d).collect()
    }

    pub fn element(&self, coordinates: &[i64]) -> Result<ModuleElement, ModuleError> {
        if coordinates.len() != self.rank() {
            return Err(ModuleError::DimensionMismatch(format!(
                "{} coordinates for a module of rank {}",
                coordinates.len(),
                self.rank()
            )));
        }
        let coordinates = coordinates.iter().zip(&self.orders).map(|(&v, &d)| reduce(v as i128, d)).collect();
        Ok(ModuleElement { coordinates })
    }

    /// `g · x`, reduced.
    pub fn act(&self, g: usize, x: &[u64]) -> Vec<u64> {
        self.reduce(&self.action[g].mul_vec(x))
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.orders).map(|((&a, &b), &d)| (a % d + b % d) % d).collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.orders).map(|((&a, &b), &d)| (a % d + d - b % d) % d).collect()
    }

    /// Columns `d_i e_i` over `Z/e`, omitting those that vanish.
    pub fn relations(&self) -> ZnMatrix {
        diagonal_relations(self.exponent, &self.orders)
    }

    /// The subgroup of elements fixed by every element of `h`, as a
    /// subquotient of `(Z/e)^r` modulo the relations.
    pub fn fixed_points(&self, h: &[usize]) -> Subquotient {
        let r = self.rank();
        let e = self.exponent;
        let mut f = ZnMatrix::zeros(r * h.len(), r, e);
        for (b, &g) in h.iter().enumerate() {
            let a = &self.action[g];
            for i in 0..r {
                for j in 0..r {
                    let v = a.get(i, j) + if i == j { e - 1 } else { 0 };
                    f.set(b * r + i, j, v);
                }
            }
        }
        let block_orders: Vec<u64> = h.iter().flat_map(|_| self.orders.iter().copied()).collect();
        let target_rel = diagonal_relations(e, &block_orders);
        let mut cols = preimage(&f, &target_rel);
        let rel = self.relations();
        cols.extend(rel.columns());
        let numerator = ZnMatrix::from_columns(e, r, &cols);
        Subquotient::new(&numerator, &rel).expect("relations are fixed")
    }

    /// `M^G` with trivial action.
    pub fn invariants(&self) -> GModule {
        let all: Vec<usize> = (0..self.group.order()).collect();
        let sq = self.fixed_points(&all);
        GModule::trivial_action(self.group.clone(), sq.orders()).expect("valid orders")
    }

    /// The same module viewed over `H`, whose element `i` is `H.elements()[i]`.
    pub fn restrict_module(&self, h: &Subgroup) -> Result<GModule, ModuleError> {
        if **h.parent() != *self.group {
            return Err(ModuleError::GroupMismatch);
        }
        let (sub, _) = h.as_group();
        let action = h.elements().iter().map(|&x| self.action[x].clone()).collect();
        Ok(GModule { group: sub, orders: self.orders.clone(), exponent: self.exponent, action })
    }

    /// Same orders and matrices over another group through a homomorphism
    /// `images: source → self.group` (the pullback action).
    pub fn pullback(&self, source: Arc<FiniteGroup>, images: &[usize]) -> GModule {
        let action = images.iter().map(|&x| self.action[x].clone()).collect();
        GModule { group: source, orders: self.orders.clone(), exponent: self.exponent, action }
    }

    /// The submodule spanned by `generators` and the corresponding quotient.
    pub fn submodule_quotient(&self, generators: &[Vec<i64>]) -> Result<(GModule, GModule), ModuleError> {
        let r = self.rank();
        let e = self.exponent;
        let mut gens = Vec::with_capacity(generators.len());
        for v in generators {
            if v.len() != r {
                return Err(ModuleError::DimensionMismatch(format!("generator of length {}", v.len())));
            }
            gens.push(self.reduce(&v.iter().zip(&self.orders).map(|(&x, &d)| reduce(x as i128, d)).collect::<Vec<_>>()));
        }
        let rel = self.relations();
        let mut span_cols = gens.clone();
        span_cols.extend(rel.columns());
        let span = ZnMatrix::from_columns(e, r, &span_cols);
        let sub = Subquotient::new(&span, &rel).expect("relations lie in the span");
        for g in 0..self.group.order() {
            for v in &gens {
                if sub.coordinates(&self.action[g].mul_vec(v)).is_none() {
                    return Err(ModuleError::NotStable);
                }
            }
        }
        let quot = Subquotient::new(&ZnMatrix::identity(r, e), &span).expect("span lies in the ambient space");
        Ok((self.induced(&sub, None), self.induced(&quot, None)))
    }

    /// The action of this module's group on a stable subquotient, as a module
    /// over the same group, or over `G/N` when `quotient` is given (the
    /// subquotient must then be fixed by `N`). Returns the module only.
    fn induced(&self, sq: &Subquotient, quotient: Option<&Quotient>) -> GModule {
        self.induced_with_map(sq, quotient).0
    }

    fn induced_with_map(&self, sq: &Subquotient, quotient: Option<&Quotient>) -> (GModule, ZnMatrix) {
        let k = sq.orders().len();
        let e = self.exponent;
        let elements: Vec<usize> = match quotient {
            Some(q) => q.representatives.clone(),
            None => (0..self.group.order()).collect(),
        };
        let group = match quotient {
            Some(q) => q.group.clone(),
            None => self.group.clone(),
        };
        let e_sq = sq.orders().last().copied().unwrap_or(1);
        let mats: Vec<ZnMatrix> = elements
            .iter()
            .map(|&g| {
                let mut m = ZnMatrix::zeros(k, k, e_sq);
                for (j, v) in sq.generators().iter().enumerate() {
                    let image = self.action[g].mul_vec(v);
                    let c = sq.coordinates(&image).expect("subquotient is stable");
                    for (i, &x) in c.iter().enumerate() {
                        m.set(i, j, x);
                    }
                }
                m
            })
            .collect();
        let (module, change) =
            GModule::from_matrices(group, sq.orders().to_vec(), mats).expect("induced action is an action");
        // inclusion: normalized coordinates -> subquotient coordinates -> ambient
        let gens = ZnMatrix::from_columns(e, self.rank(), sq.generators());
        let inclusion = gens.mul(&change.to_old.with_modulus(e));
        (module, inclusion)
    }

    /// `M^N` as a `G/N`-module, with the matrix of the inclusion `M^N → M`
    /// (columns are images of the basis of `M^N`).
    pub fn fixed_by_normal(&self, quotient: &Quotient) -> (GModule, ZnMatrix) {
        let n: Vec<usize> = quotient.projection.kernel().elements().to_vec();
        let sq = self.fixed_points(&n);
        self.induced_with_map(&sq, Some(quotient))
    }

    /// Whether `matrix` (columns are images of the basis of `source`) is a
    /// well-defined map `source → self` with `f(s·x) = t·f(x)` for every
    /// pair `(s, t)` of a source group element and a group element here.
    pub fn is_equivariant_map(&self, source: &GModule, matrix: &ZnMatrix, pairs: &[(usize, usize)]) -> bool {
        if matrix.rows() != self.rank() || matrix.cols() != source.rank() {
            return false;
        }
        let e = self.exponent;
        let f = matrix.with_modulus(e);
        let apply = |v: &[u64]| self.reduce(&f.mul_vec(&v.iter().map(|&x| x % e).collect::<Vec<_>>()));
        for (j, &d) in source.orders().iter().enumerate() {
            let mut v = vec![0u64; source.rank()];
            v[j] = d;
            if apply(&v).iter().any(|&x| x != 0) {
                return false;
            }
        }
        for &(s, t) in pairs {
            for j in 0..source.rank() {
                let mut basis = vec![0u64; source.rank()];
                basis[j] = 1;
                if apply(&source.act(s, &basis)) != self.act(t, &apply(&basis)) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::named(name).unwrap())
    }

    fn brute_invariants(m: u64, chi: &CyclotomicCharacter) -> u64 {
        (0..m).filter(|&x| chi.values().iter().all(|&u| mul_mod(u, x, m) == x)).count() as u64
    }

    #[test]
    fn mu_module_trivial_and_sign() {
        let c2 = g("C2");
        let triv = CyclotomicCharacter::trivial(c2.clone(), 3);
        let m = GModule::mu_module(c2.clone(), 3, &triv).unwrap();
        assert!(m.has_trivial_action());
        assert_eq!(m.invariants().orders(), &[3]);

        let sign = CyclotomicCharacter::new(c2.clone(), 3, vec![1, 2]).unwrap();
        let m = GModule::mu_module(c2, 3, &sign).unwrap();
        assert_eq!(m.act(1, &[1]), vec![2]);
        assert!(m.invariants().is_zero());
    }

    #[test]
    fn non_unit_character_rejected() {
        let c2 = g("C2");
        assert!(matches!(CyclotomicCharacter::new(c2.clone(), 6, vec![1, 3]), Err(ModuleError::BadCharacter(_))));
        // 2 has order 2 mod 3, so it is not a character of C3
        assert!(matches!(CyclotomicCharacter::new(g("C3"), 3, vec![1, 2, 1]), Err(ModuleError::BadCharacter(_))));
    }

    #[test]
    fn full_cyclotomic_action_mod_nine() {
        let c6 = g("C6");
        let values: Vec<u64> = (0..6).map(|k| crate::arith::pow_mod(2, k, 9)).collect();
        let chi = CyclotomicCharacter::new(c6.clone(), 9, values).unwrap();
        let m = GModule::mu_module(c6, 9, &chi).unwrap();
        assert!(m.invariants().is_zero());
    }

    #[test]
    fn invariants_match_brute_force_for_all_characters() {
        for name in ["C1", "C2", "C4", "C2xC2", "S3", "C6", "D4", "Q8", "C8"] {
            let grp = g(name);
            for m in 1..=25u64 {
                for chi in CyclotomicCharacter::all(&grp, m) {
                    let module = GModule::mu_module(grp.clone(), m, &chi).unwrap();
                    let inv = module.invariants();
                    assert_eq!(inv.cardinality(), brute_invariants(m, &chi) as u128, "{name} m={m} {:?}", chi.values());
                }
            }
        }
    }

    #[test]
    fn character_counts() {
        // Hom(C2, (Z/9)^×) = Hom(C2, C6) has 2 elements
        assert_eq!(CyclotomicCharacter::all(&g("C2"), 9).len(), 2);
        // Hom(C2xC2, (Z/8)^× = C2xC2) has 16
        assert_eq!(CyclotomicCharacter::all(&g("C2xC2"), 8).len(), 16);
        // S3 abelianizes to C2
        assert_eq!(CyclotomicCharacter::all(&g("S3"), 7).len(), 2);
        assert_eq!(CyclotomicCharacter::all(&g("C3"), 1).len(), 1);
    }

    #[test]
    fn normalization_to_invariant_factors() {
        let c1 = g("C1");
        let m = GModule::trivial_action(c1.clone(), &[6, 4, 1]).unwrap();
        assert_eq!(m.orders(), &[2, 12]);
        let z = GModule::trivial_action(c1, &[1, 1]).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn ill_defined_action_rejected() {
        // e_0 of order 2 cannot map to a generator of Z/3
        let c2 = g("C2");
        let bad = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![1, 0], vec![1, 1]]];
        assert!(matches!(GModule::new(c2.clone(), &[2, 3], &bad), Err(ModuleError::NotAnAction(_))));
        let not_hom = [vec![vec![1]], vec![vec![2]]];
        assert!(matches!(GModule::new(g("C3"), &[5], &[not_hom[0].clone(), not_hom[1].clone(), not_hom[1].clone()]), Err(ModuleError::NotAnAction(_))));
    }

    #[test]
    fn submodule_and_quotient() {
        let c2 = g("C2");
        let m = GModule::trivial_action(c2.clone(), &[9]).unwrap();
        let (s, q) = m.submodule_quotient(&[vec![3]]).unwrap();
        assert_eq!(s.orders(), &[3]);
        assert_eq!(q.orders(), &[3]);
        let (s, q) = m.submodule_quotient(&[vec![1]]).unwrap();
        assert_eq!(s.orders(), &[9]);
        assert!(q.is_zero());

        let swap = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]];
        let m = GModule::new(c2, &[3, 3], &swap).unwrap();
        assert_eq!(m.submodule_quotient(&[vec![1, 0]]).unwrap_err(), ModuleError::NotStable);
        let (s, q) = m.submodule_quotient(&[vec![1, 1]]).unwrap();
        assert_eq!((s.orders(), q.orders()), (&[3u64][..], &[3u64][..]));
        assert!(s.has_trivial_action());
        // (a, b) ↦ a - b identifies the quotient, and the swap negates it
        assert_eq!(q.act(1, &[1]), vec![2]);
    }

    #[test]
    fn swap_module_invariants_are_diagonal() {
        let c2 = g("C2");
        let swap = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]];
        let m = GModule::new(c2, &[3, 3], &swap).unwrap();
        assert_eq!(m.invariants().orders(), &[3]);
    }

    #[test]
    fn restriction_of_module() {
        let s3 = g("S3");
        let chi = CyclotomicCharacter::all(&s3, 3).into_iter().find(|c| !c.is_trivial()).unwrap();
        let m = GModule::mu_module(s3.clone(), 3, &chi).unwrap();
        assert_eq!(m.restrict_module(&Subgroup::whole(s3.clone())).unwrap(), m);
        let triv = m.restrict_module(&Subgroup::trivial(s3.clone())).unwrap();
        assert!(triv.has_trivial_action());
        let c3 = crate::groups::subgroups(&s3).into_iter().find(|h| h.order() == 3).unwrap();
        assert!(m.restrict_module(&c3).unwrap().has_trivial_action());
    }

    #[test]
    fn partial_action_closure() {
        let c4 = g("C4");
        let mut given = BTreeMap::new();
        given.insert(1, vec![vec![4]]);
        let m = GModule::from_partial_action(c4.clone(), &[5], &given).unwrap();
        assert_eq!(m.act(2, &[1]), vec![1]);
        assert_eq!(m.act(3, &[1]), vec![4]);
        let mut other = BTreeMap::new();
        other.insert(1, vec![vec![2]]);
        assert!(GModule::from_partial_action(c4, &[5], &other).is_ok());
        let mut inconsistent = BTreeMap::new();
        inconsistent.insert(1, vec![vec![2]]);
        inconsistent.insert(2, vec![vec![1]]);
        assert!(GModule::from_partial_action(g("C4"), &[5], &inconsistent).is_err());
    }

    #[test]
    fn fixed_by_normal_subgroup() {
        // C6 acting on Z/9 through 2 (order 6): fixed by C2 = {0, 3} is {x : 8x = x} = {0}
        let c6 = g("C6");
        let values: Vec<u64> = (0..6).map(|k| crate::arith::pow_mod(2, k, 9)).collect();
        let chi = CyclotomicCharacter::new(c6.clone(), 9, values).unwrap();
        let m = GModule::mu_module(c6.clone(), 9, &chi).unwrap();
        let n = Subgroup::new(c6.clone(), &[0, 3]).unwrap();
        let q = crate::groups::quotient(&n).unwrap();
        let (fixed, inc) = m.fixed_by_normal(&q);
        assert!(fixed.is_zero());
        assert_eq!(inc.cols(), 0);
        // fixed by C3 = {0, 2, 4}: 4x = x mod 9 gives x ∈ 3Z/9
        let n = Subgroup::new(c6, &[0, 2, 4]).unwrap();
        let q = crate::groups::quotient(&n).unwrap();
        let (fixed, inc) = m.fixed_by_normal(&q);
        assert_eq!(fixed.orders(), &[3]);
        assert_eq!(fixed.group().order(), 2);
        assert_eq!(m.reduce(&inc.column(0)).iter().map(|x| x % 3).collect::<Vec<_>>(), vec![0]);
        let pairs: Vec<(usize, usize)> = (0..6).map(|g| (q.projection.apply(g), g)).collect();
        assert!(m.is_equivariant_map(&fixed, &inc, &pairs));
        // the nontrivial coset acts by 2^1 = 2 on 3Z/9, i.e. by -1 on Z/3
        assert_eq!(fixed.act(1, &[1]), vec![2]);
    }
}
