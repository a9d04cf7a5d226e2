//! `H^0`, `H^1`, `H^2` of a finite group through inhomogeneous bar cochains.
//!
//! An `n`-cochain is a function `G^n → M`. Tuples are indexed in mixed radix
//! `|G|` with the first entry most significant. A cochain is lifted to a
//! vector over `Z/e` of length `|G|^n · r` at positions `tuple · r + i`, and
//! the module relations `d_i e_i` of every tuple are adjoined so that
//!
//! `H^n = {x : d_n x ∈ R_{n+1}} / (im d_{n-1} + R_n)`
//!
//! is a [`Subquotient`]. Its coordinate map doubles as the witness data that
//! expresses any cocycle in the chosen generators.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::lcm;
use crate::gmodules::{GModule, ModuleError};
use crate::groups::{cyclic_subgroups, quotient, FiniteGroup, GroupHom, Quotient, Subgroup};
use crate::linalg::{diagonal_relations, hom_kernel, preimage, LinalgError, Subquotient, ZnMatrix};

/// Default cap on the row count `|G|^{n+1} · rank` of the coboundary matrix.
pub const DEFAULT_BOUND: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    TooLarge { dimension: usize, bound: usize },
    DegreeOutOfRange(usize),
    ShapeMismatch(String),
    NotACocycle,
    IncompatibleCoefficients(String),
    NotASubgroup,
    NotNormal,
    EmptyFamily,
    Module(ModuleError),
}

impl fmt::Display for CohomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyError::TooLarge { dimension, bound } => {
                write!(f, "cochain matrix dimension {dimension} exceeds the bound {bound}")
            }
            CohomologyError::DegreeOutOfRange(n) => write!(f, "degree {n} is not supported (0, 1 or 2)"),
            CohomologyError::ShapeMismatch(why) => write!(f, "cochain shape mismatch: {why}"),
            CohomologyError::NotACocycle => write!(f, "cochain is not a cocycle"),
            CohomologyError::IncompatibleCoefficients(why) => write!(f, "incompatible coefficients: {why}"),
            CohomologyError::NotASubgroup => write!(f, "subgroup belongs to a different group"),
            CohomologyError::NotNormal => write!(f, "subgroup is not normal"),
            CohomologyError::EmptyFamily => write!(f, "subgroup family is empty"),
            CohomologyError::Module(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CohomologyError {}

impl From<ModuleError> for CohomologyError {
    fn from(e: ModuleError) -> Self {
        CohomologyError::Module(e)
    }
}

impl From<LinalgError> for CohomologyError {
    fn from(e: LinalgError) -> Self {
        CohomologyError::IncompatibleCoefficients(format!("{e}"))
    }
}

/// A function `G^degree → M`, stored flat with `rank` coordinates per tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    group_order: usize,
    rank: usize,
    values: Vec<u64>,
}

impl Cochain {
    pub fn zero(module: &GModule, degree: usize) -> Cochain {
        let n = module.group().order();
        let r = module.rank();
        Cochain { degree, group_order: n, rank: r, values: vec![0; n.pow(degree as u32) * r] }
    }

    /// Builds a cochain from a function on tuples, reducing into the module.
    pub fn from_fn(module: &GModule, degree: usize, mut f: impl FnMut(&[usize]) -> Vec<u64>) -> Cochain {
        let mut c = Cochain::zero(module, degree);
        let mut tuple = vec![0usize; degree];
        for t in 0..c.tuple_count() {
            c.decode(t, &mut tuple);
            let v = module.reduce(&f(&tuple));
            c.values[t * c.rank..(t + 1) * c.rank].copy_from_slice(&v);
        }
        c
    }

    /// From the flat lift, reducing into the module.
    pub fn from_flat(module: &GModule, degree: usize, flat: &[u64]) -> Result<Cochain, CohomologyError> {
        let mut c = Cochain::zero(module, degree);
        if flat.len() != c.values.len() {
            return Err(CohomologyError::ShapeMismatch(format!(
                "expected {} entries, found {}",
                c.values.len(),
                flat.len()
            )));
        }
        for (t, chunk) in flat.chunks(c.rank.max(1)).enumerate().take(c.tuple_count()) {
            if c.rank == 0 {
                break;
            }
            let v = module.reduce(chunk);
            c.values[t * c.rank..(t + 1) * c.rank].copy_from_slice(&v);
        }
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tuple_count(&self) -> usize {
        self.group_order.pow(self.degree as u32)
    }

    pub fn flat(&self) -> &[u64] {
        &self.values
    }

    pub fn tuple_index(&self, tuple: &[usize]) -> usize {
        tuple_index(self.group_order, tuple)
    }

    pub fn decode(&self, t: usize, out: &mut [usize]) {
        decode(self.group_order, t, out);
    }

    pub fn value(&self, tuple: &[usize]) -> &[u64] {
        let t = self.tuple_index(tuple);
        &self.values[t * self.rank..(t + 1) * self.rank]
    }

    pub fn value_at(&self, t: usize) -> &[u64] {
        &self.values[t * self.rank..(t + 1) * self.rank]
    }

    /// `(tuple, value)` pairs in index order.
    pub fn entries(&self) -> Vec<(Vec<usize>, Vec<u64>)> {
        let mut tuple = vec![0usize; self.degree];
        (0..self.tuple_count())
            .map(|t| {
                self.decode(t, &mut tuple);
                (tuple.clone(), self.value_at(t).to_vec())
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    fn matches(&self, module: &GModule, degree: usize) -> Result<(), CohomologyError> {
        if self.degree != degree || self.group_order != module.group().order() || self.rank != module.rank() {
            return Err(CohomologyError::ShapeMismatch(format!(
                "cochain of degree {} over order {} and rank {}, expected degree {degree} over order {} and rank {}",
                self.degree,
                self.group_order,
                self.rank,
                module.group().order(),
                module.rank()
            )));
        }
        Ok(())
    }
}

fn tuple_index(n: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * n + g)
}

fn decode(n: usize, mut t: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = t % n;
        t /= n;
    }
}

/// The bar differential, evaluated pointwise:
///
/// - `(d⁰m)(g) = g·m − m`
/// - `(d¹f)(g,h) = g·f(h) − f(gh) + f(g)`
/// - `(d²f)(g,h,k) = g·f(h,k) − f(gh,k) + f(g,hk) − f(g,h)`
pub fn coboundary(module: &GModule, c: &Cochain) -> Result<Cochain, CohomologyError> {
    let n = c.degree;
    if n > 2 {
        return Err(CohomologyError::DegreeOutOfRange(n));
    }
    c.matches(module, n)?;
    let g = module.group();
    Ok(Cochain::from_fn(module, n + 1, |t| {
        let mut acc = module.act(t[0], c.value(&t[1..]));
        let mut inner = Vec::with_capacity(n);
        for i in 1..=n {
            inner.clear();
            inner.extend_from_slice(&t[..i - 1]);
            inner.push(g.mul(t[i - 1], t[i]));
            inner.extend_from_slice(&t[i + 1..]);
            acc = if i % 2 == 1 { module.sub(&acc, c.value(&inner)) } else { module.add(&acc, c.value(&inner)) };
        }
        let last = c.value(&t[..n]);
        if (n + 1) % 2 == 1 {
            module.sub(&acc, last)
        } else {
            module.add(&acc, last)
        }
    }))
}

/// Matrix of `d_n` on lifted cochains, `|G|^{n+1} r × |G|^n r` over `Z/e`.
pub fn coboundary_matrix(module: &GModule, n: usize) -> ZnMatrix {
    let g = module.group();
    let order = g.order();
    let r = module.rank();
    let e = module.exponent();
    let rows = order.pow(n as u32 + 1);
    let cols = order.pow(n as u32);
    let mut d = ZnMatrix::zeros(rows * r, cols * r, e);
    let minus_one = e - 1;
    let mut t = vec![0usize; n + 1];
    let mut inner = vec![0usize; n];
    for row_block in 0..rows {
        decode(order, row_block, &mut t);
        let add_identity = |d: &mut ZnMatrix, col_block: usize, sign: u64| {
            for i in 0..r {
                d.add_at(row_block * r + i, col_block * r + i, sign);
            }
        };
        // g_0 · f(g_1, ..., g_n)
        let a = module.action(t[0]);
        let cb = tuple_index(order, &t[1..]);
        for i in 0..r {
            for j in 0..r {
                d.add_at(row_block * r + i, cb * r + j, a.get(i, j));
            }
        }
        for i in 1..=n {
            for (k, slot) in inner.iter_mut().enumerate() {
                *slot = match k.cmp(&(i - 1)) {
                    core::cmp::Ordering::Less => t[k],
                    core::cmp::Ordering::Equal => g.mul(t[i - 1], t[i]),
                    core::cmp::Ordering::Greater => t[k + 1],
                };
            }
            let sign = if i % 2 == 1 { minus_one } else { 1 };
            add_identity(&mut d, tuple_index(order, &inner), sign);
        }
        let sign = if (n + 1) % 2 == 1 { minus_one } else { 1 };
        add_identity(&mut d, tuple_index(order, &t[..n]), sign);
    }
    d
}

/// Relations of the lifted cochain space: `d_i e_i` in every tuple block.
fn cochain_relations(module: &GModule, n: usize) -> ZnMatrix {
    let blocks = module.group().order().pow(n as u32);
    let orders: Vec<u64> = (0..blocks).flat_map(|_| module.orders().iter().copied()).collect();
    diagonal_relations(module.exponent(), &orders)
}

/// An invariant-factor decomposition of `H^n(G, M)` with cocycle representatives.
#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    module: GModule,
    degree: usize,
    classes: Subquotient,
}

/// A class in a [`CohomologyGroup`], by coordinates modulo the invariant factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohClass {
    pub degree: usize,
    pub coordinates: Vec<u64>,
}

impl CohClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|&c| c == 0)
    }
}

/// Computes `H^n(G, M)` for `n ≤ 2` with [`DEFAULT_BOUND`].
pub fn cohomology(module: &GModule, degree: usize) -> Result<CohomologyGroup, CohomologyError> {
    cohomology_with_bound(module, degree, DEFAULT_BOUND)
}

pub fn cohomology_with_bound(
    module: &GModule,
    degree: usize,
    bound: usize,
) -> Result<CohomologyGroup, CohomologyError> {
    if degree > 2 {
        return Err(CohomologyError::DegreeOutOfRange(degree));
    }
    let order = module.group().order();
    let dimension = order.saturating_pow(degree as u32 + 1).saturating_mul(module.rank());
    if dimension > bound {
        return Err(CohomologyError::TooLarge { dimension, bound });
    }
    let e = module.exponent();
    let ambient = order.pow(degree as u32) * module.rank();

    let cocycles = preimage(&coboundary_matrix(module, degree), &cochain_relations(module, degree + 1));
    let relations = cochain_relations(module, degree);
    let mut numerator = cocycles;
    numerator.extend(relations.columns());
    let numerator = ZnMatrix::from_columns(e, ambient, &numerator);
    let denominator = if degree == 0 {
        relations
    } else {
        coboundary_matrix(module, degree - 1).hconcat(&relations)
    };
    let classes = Subquotient::new(&numerator, &denominator).expect("coboundaries are cocycles");
    Ok(CohomologyGroup { module: module.clone(), degree, classes })
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }

    /// Invariant factors `d_1 | d_2 | ...`, unit factors dropped.
    pub fn invariant_factors(&self) -> &[u64] {
        self.classes.orders()
    }

    pub fn order(&self) -> u128 {
        self.classes.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.is_trivial()
    }

    /// One cocycle per invariant factor, in pivot order.
    pub fn representatives(&self) -> Vec<Cochain> {
        self.classes
            .generators()
            .iter()
            .map(|v| Cochain::from_flat(&self.module, self.degree, v).expect("shape"))
            .collect()
    }

    pub fn class_of(&self, c: &Cochain) -> Result<CohClass, CohomologyError> {
        c.matches(&self.module, self.degree)?;
        let coordinates = self.classes.coordinates(c.flat()).ok_or(CohomologyError::NotACocycle)?;
        Ok(CohClass { degree: self.degree, coordinates })
    }

    pub fn is_cocycle(&self, c: &Cochain) -> Result<bool, CohomologyError> {
        let d = coboundary(&self.module, c)?;
        Ok(d.is_zero())
    }

    pub fn is_coboundary(&self, c: &Cochain) -> Result<bool, CohomologyError> {
        match self.class_of(c) {
            Ok(class) => Ok(class.is_zero()),
            Err(CohomologyError::NotACocycle) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// A cocycle in the given class.
    pub fn cochain_of(&self, coordinates: &[u64]) -> Cochain {
        Cochain::from_flat(&self.module, self.degree, &self.classes.element(coordinates)).expect("shape")
    }

    /// The map `H^n → H^n` induced by a cochain-level operation.
    fn induced_map(&self, target: &CohomologyGroup, f: impl Fn(&Cochain) -> Cochain) -> CohomologyMap {
        let columns: Vec<Vec<u64>> = self
            .representatives()
            .iter()
            .map(|c| target.class_of(&f(c)).expect("cochain map sends cocycles to cocycles").coordinates)
            .collect();
        CohomologyMap::from_columns(self.invariant_factors(), target.invariant_factors(), &columns)
    }
}

/// A homomorphism between invariant-factor decompositions. `matrix[i][j]` is
/// coordinate `i` of the image of generator `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyMap {
    pub source: Vec<u64>,
    pub target: Vec<u64>,
    pub matrix: Vec<Vec<u64>>,
}

impl CohomologyMap {
    pub fn from_columns(source: &[u64], target: &[u64], columns: &[Vec<u64>]) -> CohomologyMap {
        let matrix = (0..target.len())
            .map(|i| (0..source.len()).map(|j| columns[j][i] % target[i]).collect())
            .collect();
        CohomologyMap { source: source.to_vec(), target: target.to_vec(), matrix }
    }

    pub fn identity(orders: &[u64]) -> CohomologyMap {
        let columns: Vec<Vec<u64>> = (0..orders.len())
            .map(|j| (0..orders.len()).map(|i| u64::from(i == j)).collect())
            .collect();
        CohomologyMap::from_columns(orders, orders, &columns)
    }

    fn modulus(&self) -> u64 {
        self.source.iter().chain(&self.target).fold(1, |acc, &d| lcm(acc, d))
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.matrix
            .iter()
            .zip(&self.target)
            .map(|(row, &d)| {
                row.iter().zip(x).fold(0u128, |acc, (&a, &b)| (acc + a as u128 * b as u128) % d as u128) as u64
            })
            .collect()
    }

    pub fn kernel(&self) -> Subquotient {
        hom_kernel(self.modulus(), &self.source, &self.target, &self.matrix).expect("shapes agree")
    }

    /// `target / image`.
    pub fn cokernel(&self) -> Subquotient {
        let e = self.modulus();
        let k = self.target.len();
        let mut cols: Vec<Vec<u64>> = (0..self.source.len())
            .map(|j| (0..k).map(|i| self.matrix[i][j]).collect())
            .collect();
        cols.extend(diagonal_relations(e, &self.target).columns());
        Subquotient::cokernel(k, &ZnMatrix::from_columns(e, k, &cols)).expect("shapes agree")
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&x| x == 0)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &CohomologyMap) -> CohomologyMap {
        assert_eq!(self.target, other.source, "composable maps");
        let columns: Vec<Vec<u64>> = (0..self.source.len())
            .map(|j| {
                let col: Vec<u64> = (0..self.target.len()).map(|i| self.matrix[i][j]).collect();
                other.apply(&col)
            })
            .collect();
        CohomologyMap::from_columns(&self.source, &other.target, &columns)
    }
}

/// Restriction `H^n(G, M) → H^n(H, M)`. The subgroup is viewed as a group
/// whose element `i` is `h.elements()[i]`.
pub fn restriction(x: &CohomologyGroup, h: &Subgroup) -> Result<(CohomologyGroup, CohomologyMap), CohomologyError> {
    restriction_with_bound(x, h, DEFAULT_BOUND)
}

pub fn restriction_with_bound(
    x: &CohomologyGroup,
    h: &Subgroup,
    bound: usize,
) -> Result<(CohomologyGroup, CohomologyMap), CohomologyError> {
    if **h.parent() != **x.group() {
        return Err(CohomologyError::NotASubgroup);
    }
    let restricted = x.module.restrict_module(h)?;
    let target = cohomology_with_bound(&restricted, x.degree, bound)?;
    let elements = h.elements();
    let map = x.induced_map(&target, |c| {
        Cochain::from_fn(&restricted, x.degree, |t| {
            let lifted: Vec<usize> = t.iter().map(|&i| elements[i]).collect();
            c.value(&lifted).to_vec()
        })
    });
    Ok((target, map))
}

/// Inflation `H^n(G/N, M^N) → H^n(G, M)`.
///
/// `x` is computed over the quotient group with coefficients `M^N`,
/// `projection` maps `G` onto that quotient, and `inclusion` is the matrix of
/// `M^N → M` (columns are images of the basis of `M^N`).
pub fn inflation(
    x: &CohomologyGroup,
    projection: &GroupHom,
    inclusion: &ZnMatrix,
    target: &GModule,
) -> Result<(CohomologyGroup, CohomologyMap), CohomologyError> {
    if **projection.target() != **x.group() || **projection.source() != **target.group() {
        return Err(CohomologyError::IncompatibleCoefficients("projection does not match the groups".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..target.group().order()).map(|g| (projection.apply(g), g)).collect();
    if !target.is_equivariant_map(x.module(), inclusion, &pairs) {
        return Err(CohomologyError::IncompatibleCoefficients(
            "inclusion is not an equivariant map of the coefficient modules".into(),
        ));
    }
    let big = cohomology(target, x.degree)?;
    let f = inclusion.with_modulus(target.exponent());
    let map = x.induced_map(&big, |c| {
        Cochain::from_fn(target, x.degree, |t| {
            let down: Vec<usize> = t.iter().map(|&g| projection.apply(g)).collect();
            f.mul_vec(c.value(&down))
        })
    });
    Ok((big, map))
}

/// Inflation from `G/N` with coefficients `M^N`, building the quotient and
/// the fixed module itself.
pub fn inflation_from_normal(
    module: &GModule,
    n: &Subgroup,
    degree: usize,
) -> Result<(Quotient, CohomologyGroup, CohomologyGroup, CohomologyMap), CohomologyError> {
    if **n.parent() != **module.group() {
        return Err(CohomologyError::NotASubgroup);
    }
    let q = quotient(n).map_err(|_| CohomologyError::NotNormal)?;
    let (fixed, inclusion) = module.fixed_by_normal(&q);
    let small = cohomology(&fixed, degree)?;
    let (big, map) = inflation(&small, &q.projection, &inclusion, module)?;
    Ok((q, small, big, map))
}

/// The action of `G/N` on `H^n(N, M)`, one matrix per coset (in the order of
/// `quotient.representatives`).
#[derive(Debug, Clone)]
pub struct QuotientAction {
    pub quotient: Quotient,
    pub cohomology: CohomologyGroup,
    pub matrices: Vec<CohomologyMap>,
}

impl QuotientAction {
    /// Classes fixed by every coset.
    pub fn invariant_classes(&self) -> Subquotient {
        let orders = self.cohomology.invariant_factors();
        let k = orders.len();
        let mut stacked_target = Vec::new();
        let mut stacked = Vec::new();
        for m in &self.matrices {
            for i in 0..k {
                stacked_target.push(orders[i]);
                stacked.push(
                    (0..k)
                        .map(|j| {
                            let v = m.matrix[i][j] + if i == j { orders[i] - 1 } else { 0 };
                            v % orders[i]
                        })
                        .collect(),
                );
            }
        }
        let e = orders.iter().fold(1, |acc, &d| lcm(acc, d));
        hom_kernel(e, orders, &stacked_target, &stacked).expect("shapes agree")
    }
}

/// `(g·f)(n_1, ..., n_k) = g·f(g⁻¹ n_1 g, ..., g⁻¹ n_k g)` on `H^k(N, M)`.
pub fn conjugation_on_cohomology(
    module: &GModule,
    n: &Subgroup,
    degree: usize,
) -> Result<QuotientAction, CohomologyError> {
    if **n.parent() != **module.group() {
        return Err(CohomologyError::NotASubgroup);
    }
    let q = quotient(n).map_err(|_| CohomologyError::NotNormal)?;
    let g = module.group().clone();
    let restricted = module.restrict_module(n)?;
    let h = cohomology(&restricted, degree)?;
    let elements = n.elements();
    let position = |x: usize| elements.binary_search(&x).expect("normal subgroup");
    let act_by = |x: usize| {
        let x_inv = g.inv(x);
        h.induced_map(&h, |c| {
            Cochain::from_fn(&restricted, degree, |t| {
                let conj: Vec<usize> = t.iter().map(|&i| position(g.conj(x_inv, elements[i]))).collect();
                module.act(x, c.value(&conj))
            })
        })
    };
    let identity = CohomologyMap::identity(h.invariant_factors());
    for &inner in elements {
        assert_eq!(act_by(inner), identity, "inner elements act trivially on cohomology");
    }
    let matrices = q.representatives.iter().map(|&x| act_by(x)).collect();
    Ok(QuotientAction { quotient: q, cohomology: h, matrices })
}

/// Classes of `H^1(G, M)` restricting to zero on every subgroup of `family`.
#[derive(Debug, Clone)]
pub struct LocallyTrivial {
    pub h1: CohomologyGroup,
    pub kernel: Subquotient,
}

impl LocallyTrivial {
    pub fn invariant_factors(&self) -> &[u64] {
        self.kernel.orders()
    }

    pub fn is_trivial(&self) -> bool {
        self.kernel.is_trivial()
    }

    pub fn order(&self) -> u128 {
        self.kernel.order()
    }

    pub fn representatives(&self) -> Vec<Cochain> {
        self.kernel.generators().iter().map(|c| self.h1.cochain_of(c)).collect()
    }
}

/// Cyclic subgroups together with the declared ones, without repeats.
pub fn default_family(g: &Arc<FiniteGroup>, declared: &[Subgroup]) -> Vec<Subgroup> {
    let mut family = cyclic_subgroups(g);
    for d in declared {
        if !family.contains(d) {
            family.push(d.clone());
        }
    }
    family
}

pub fn sha_finite(module: &GModule, family: &[Subgroup]) -> Result<LocallyTrivial, CohomologyError> {
    if family.is_empty() {
        return Err(CohomologyError::EmptyFamily);
    }
    let h1 = cohomology(module, 1)?;
    let mut target = Vec::new();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for h in family {
        let (_, map) = restriction(&h1, h)?;
        target.extend_from_slice(&map.target);
        rows.extend(map.matrix);
    }
    let e = h1.invariant_factors().iter().chain(&target).fold(1, |acc, &d| lcm(acc, d));
    let kernel = hom_kernel(e, h1.invariant_factors(), &target, &rows).expect("shapes agree");
    Ok(LocallyTrivial { h1, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gcd, pow_mod};
    use crate::gmodules::CyclotomicCharacter;
    use crate::groups::subgroups;

    fn grp(name: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::named(name).unwrap())
    }

    fn trivial_mod(g: &Arc<FiniteGroup>, m: u64) -> GModule {
        GModule::trivial_action(g.clone(), &[m]).unwrap()
    }

    fn factors(n: u64) -> Vec<u64> {
        if n == 1 {
            vec![]
        } else {
            vec![n]
        }
    }

    #[test]
    fn cyclic_closed_forms() {
        for n in 1..=8 {
            let g = grp(&format!("C{n}"));
            for m in [3u64, 5, 7, 9] {
                let module = trivial_mod(&g, m);
                let expected = factors(gcd(n as u64, m));
                assert_eq!(cohomology(&module, 0).unwrap().invariant_factors(), &[m]);
                assert_eq!(cohomology(&module, 1).unwrap().invariant_factors(), &expected[..], "H1 C{n} Z/{m}");
                assert_eq!(cohomology(&module, 2).unwrap().invariant_factors(), &expected[..], "H2 C{n} Z/{m}");
            }
        }
    }

    #[test]
    fn s3_with_trivial_z3() {
        let s3 = grp("S3");
        let m = trivial_mod(&s3, 3);
        assert!(cohomology(&m, 1).unwrap().is_trivial());
        assert!(cohomology(&m, 2).unwrap().is_trivial());
        let m2 = trivial_mod(&s3, 2);
        assert_eq!(cohomology(&m2, 1).unwrap().invariant_factors(), &[2]);
        assert_eq!(cohomology(&m2, 2).unwrap().invariant_factors(), &[2]);
    }

    #[test]
    fn klein_four_with_z2() {
        let v = grp("C2xC2");
        let m = trivial_mod(&v, 2);
        assert_eq!(cohomology(&m, 1).unwrap().invariant_factors(), &[2, 2]);
        assert_eq!(cohomology(&m, 2).unwrap().invariant_factors(), &[2, 2, 2]);
    }

    #[test]
    fn sign_action_on_z3() {
        // C2 acting by -1 on Z/3: both groups vanish since 2 is invertible mod 3
        let c2 = grp("C2");
        let chi = CyclotomicCharacter::new(c2.clone(), 3, vec![1, 2]).unwrap();
        let m = GModule::mu_module(c2, 3, &chi).unwrap();
        for n in 0..=2 {
            assert!(cohomology(&m, n).unwrap().is_trivial());
        }
    }

    #[test]
    fn h0_is_invariants() {
        for name in ["C4", "S3", "D4", "Q8", "C2xC2"] {
            let g = grp(name);
            for m in [3u64, 4, 5, 8, 9] {
                for chi in CyclotomicCharacter::all(&g, m) {
                    let module = GModule::mu_module(g.clone(), m, &chi).unwrap();
                    let h0 = cohomology(&module, 0).unwrap();
                    assert_eq!(h0.invariant_factors(), module.invariants().orders());
                }
            }
        }
    }

    #[test]
    fn representatives_are_independent_cocycles() {
        let g = grp("C2xC2");
        let m = GModule::trivial_action(g, &[2, 4]).unwrap();
        for n in 0..=2 {
            let h = cohomology(&m, n).unwrap();
            for (k, rep) in h.representatives().iter().enumerate() {
                assert!(h.is_cocycle(rep).unwrap());
                let class = h.class_of(rep).unwrap();
                let mut expected = vec![0u64; h.invariant_factors().len()];
                expected[k] = 1;
                assert_eq!(class.coordinates, expected);
            }
            // a combination with a nonzero coefficient below the order is not a coboundary
            for (k, &d) in h.invariant_factors().iter().enumerate() {
                for c in 1..d {
                    let mut coords = vec![0u64; h.invariant_factors().len()];
                    coords[k] = c;
                    assert!(!h.is_coboundary(&h.cochain_of(&coords)).unwrap());
                }
            }
        }
    }

    #[test]
    fn differential_matrix_agrees_with_formula() {
        let g = grp("S3");
        let chi = CyclotomicCharacter::all(&g, 7).into_iter().find(|c| !c.is_trivial()).unwrap();
        let m = GModule::mu_module(g.clone(), 7, &chi).unwrap();
        for n in 0..=2 {
            let d = coboundary_matrix(&m, n);
            let c = Cochain::from_fn(&m, n, |t| vec![t.iter().fold(3u64, |a, &x| a * 5 + x as u64)]);
            let via_matrix = Cochain::from_flat(&m, n + 1, &d.mul_vec(c.flat())).unwrap();
            assert_eq!(via_matrix, coboundary(&m, &c).unwrap());
        }
    }

    #[test]
    fn d_squared_vanishes() {
        let g = grp("D4");
        let m = GModule::new(
            g.clone(),
            &[4, 4],
            &(0..8)
                .map(|x| if x < 4 { vec![vec![1, 0], vec![0, 1]] } else { vec![vec![0, 1], vec![1, 0]] })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        for n in 0..=1 {
            let c = Cochain::from_fn(&m, n, |t| vec![t.iter().sum::<usize>() as u64 + 1, 7 * t.len() as u64 + 2]);
            let dd = coboundary(&m, &coboundary(&m, &c).unwrap()).unwrap();
            assert!(dd.is_zero());
        }
    }

    #[test]
    fn too_large_reported() {
        let g = grp("C64");
        let m = trivial_mod(&g, 3);
        assert!(matches!(cohomology(&m, 2), Err(CohomologyError::TooLarge { .. })));
        assert!(cohomology(&m, 1).is_ok());
        assert!(matches!(cohomology(&m, 3), Err(CohomologyError::DegreeOutOfRange(3))));
    }

    #[test]
    fn zero_module() {
        let g = grp("S3");
        let m = GModule::zero(g);
        for n in 0..=2 {
            assert!(cohomology(&m, n).unwrap().is_trivial());
        }
    }

    #[test]
    fn restriction_examples() {
        let s3 = grp("S3");
        let m = trivial_mod(&s3, 3);
        let h1 = cohomology(&m, 1).unwrap();
        let whole = Subgroup::whole(s3.clone());
        let (_, id) = restriction(&h1, &whole).unwrap();
        assert_eq!(id, CohomologyMap::identity(h1.invariant_factors()));
        let c3 = subgroups(&s3).into_iter().find(|h| h.order() == 3).unwrap();
        let (target, map) = restriction(&h1, &c3).unwrap();
        assert_eq!(target.invariant_factors(), &[3]);
        assert!(map.is_injective());

        let c6 = grp("C6");
        let m = trivial_mod(&c6, 3);
        let h2 = cohomology(&m, 2).unwrap();
        let sub = Subgroup::new(c6.clone(), &[0, 2, 4]).unwrap();
        let (target, map) = restriction(&h2, &sub).unwrap();
        assert_eq!((h2.invariant_factors(), target.invariant_factors()), (&[3u64][..], &[3u64][..]));
        assert!(map.is_isomorphism());
    }

    #[test]
    fn inflation_examples() {
        // C6 over C2, Z/3 trivial: H²(C3) → H²(C6) is an isomorphism
        let c6 = grp("C6");
        let m = trivial_mod(&c6, 3);
        let n = Subgroup::new(c6.clone(), &[0, 3]).unwrap();
        let (_, small, big, map) = inflation_from_normal(&m, &n, 2).unwrap();
        assert_eq!(small.invariant_factors(), &[3]);
        assert!(map.is_isomorphism());
        assert_eq!(big.invariant_factors(), &[3]);

        // trivial N gives the identity
        let n = Subgroup::trivial(c6.clone());
        for d in 0..=2 {
            let (_, small, _, map) = inflation_from_normal(&m, &n, d).unwrap();
            assert!(map.is_isomorphism());
            assert_eq!(map.source, small.invariant_factors());
        }

        // S3 over C3 with Z/3: both sides vanish
        let s3 = grp("S3");
        let m = trivial_mod(&s3, 3);
        let c3 = subgroups(&s3).into_iter().find(|h| h.order() == 3).unwrap();
        let (_, small, big, map) = inflation_from_normal(&m, &c3, 2).unwrap();
        assert!(small.is_trivial() && big.is_trivial() && map.is_zero());
    }

    #[test]
    fn inflation_rejects_non_equivariant_inclusion() {
        let c2 = grp("C2");
        let chi = CyclotomicCharacter::new(c2.clone(), 3, vec![1, 2]).unwrap();
        let twisted = GModule::mu_module(c2.clone(), 3, &chi).unwrap();
        let trivial = trivial_mod(&c2, 3);
        // identity Z/3 → Z/3 from the trivial C2-module into the sign module
        let proj = GroupHom::new(c2.clone(), c2.clone(), vec![0, 1]).unwrap();
        let small = cohomology(&trivial, 1).unwrap();
        let err = inflation(&small, &proj, &ZnMatrix::identity(1, 3), &twisted).unwrap_err();
        assert!(matches!(err, CohomologyError::IncompatibleCoefficients(_)));
    }

    #[test]
    fn conjugation_examples() {
        let s3 = grp("S3");
        let m = trivial_mod(&s3, 3);
        let c3 = subgroups(&s3).into_iter().find(|h| h.order() == 3).unwrap();
        let action = conjugation_on_cohomology(&m, &c3, 2).unwrap();
        assert_eq!(action.cohomology.invariant_factors(), &[3]);
        assert_eq!(action.matrices.len(), 2);
        assert_eq!(action.matrices[0].matrix, vec![vec![1]]);
        assert_eq!(action.matrices[1].matrix, vec![vec![2]]);
        assert!(action.invariant_classes().is_trivial());

        let whole = Subgroup::whole(s3.clone());
        let action = conjugation_on_cohomology(&trivial_mod(&s3, 2), &whole, 1).unwrap();
        assert_eq!(action.matrices.len(), 1);
        assert_eq!(action.matrices[0], CohomologyMap::identity(action.cohomology.invariant_factors()));
    }

    #[test]
    fn sha_examples() {
        let s3 = grp("S3");
        let m = trivial_mod(&s3, 2);
        let whole = Subgroup::whole(s3.clone());
        assert!(sha_finite(&m, &[whole]).unwrap().is_trivial());
        let local = sha_finite(&m, &default_family(&s3, &[])).unwrap();
        assert!(local.is_trivial());
        let all = sha_finite(&m, &[Subgroup::trivial(s3.clone())]).unwrap();
        assert_eq!(all.invariant_factors(), &[2]);
        assert_eq!(all.representatives().len(), 1);
        assert!(matches!(sha_finite(&m, &[]), Err(CohomologyError::EmptyFamily)));
    }

    #[test]
    fn exponent_divides_group_order() {
        let g = grp("Q8");
        for m in [4u64, 8] {
            for chi in CyclotomicCharacter::all(&g, m) {
                let module = GModule::mu_module(g.clone(), m, &chi).unwrap();
                for n in 1..=2 {
                    for &d in cohomology(&module, n).unwrap().invariant_factors() {
                        assert_eq!(8 % d, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn full_cyclotomic_c6_mod_9() {
        let c6 = grp("C6");
        let values: Vec<u64> = (0..6).map(|k| pow_mod(2, k, 9)).collect();
        let chi = CyclotomicCharacter::new(c6.clone(), 9, values).unwrap();
        let m = GModule::mu_module(c6, 9, &chi).unwrap();
        // H^1(C_n, M) = ker N / (σ - 1)M and H^2 = M^G / N M; here σ - 1 = 1 is invertible
        assert!(cohomology(&m, 1).unwrap().is_trivial());
        assert!(cohomology(&m, 2).unwrap().is_trivial());
    }
}
