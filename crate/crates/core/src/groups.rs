//! Finite groups given by multiplication tables.
//!
//! Element `0` is always the identity. Named families use fixed element
//! orderings, which instance files rely on:
//!
//! - `Cn`: element `k` is `r^k` for a fixed generator `r`.
//! - `Dn` (order `2n`): element `k < n` is `r^k`, element `n + k` is `r^k s`,
//!   with `s r s = r^{-1}`.
//! - `S3`, `S4`: permutations of `{0, .., n-1}` in lexicographic order of
//!   their one-line notation; the product `a·b` is the composition `a ∘ b`.
//! - `Q8`: `1, -1, i, -i, j, -j, k, -k`.
//! - `AxB` (direct product): the pair `(a, b)` has index `a·|B| + b`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest group order accepted anywhere in the crate.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    /// The table fails the Latin-square, identity or associativity checks.
    NotAGroup(String),
    TooLarge { order: usize },
    UnknownName(String),
    NotASubgroup(String),
    NotNormal,
    NotAHomomorphism(String),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NotAGroup(why) => write!(f, "not a group: {why}"),
            GroupError::TooLarge { order } => write!(f, "group order {order} exceeds {MAX_ORDER}"),
            GroupError::UnknownName(name) => write!(f, "unknown group name {name:?}"),
            GroupError::NotASubgroup(why) => write!(f, "not a subgroup: {why}"),
            GroupError::NotNormal => write!(f, "subgroup is not normal"),
            GroupError::NotAHomomorphism(why) => write!(f, "not a homomorphism: {why}"),
        }
    }
}

impl core::error::Error for GroupError {}

/// How to build a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Named(String),
    Table { table: Vec<Vec<usize>>, name: Option<String> },
    Product(Vec<GroupSpec>),
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    name: Option<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label(), self.order)
    }
}

impl FiniteGroup {
    /// Validates a multiplication table with identity `0`.
    pub fn from_table(table: Vec<Vec<usize>>, name: Option<String>) -> Result<FiniteGroup, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge { order: n });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotAGroup(format!("row {i} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::NotAGroup(format!("entry {bad} out of range in row {i}")));
            }
            flat.extend_from_slice(row);
        }
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                let r = flat[i * n + j];
                let c = flat[j * n + i];
                if seen_row[r] {
                    return Err(GroupError::NotAGroup(format!("row {i} repeats {r}")));
                }
                if seen_col[c] {
                    return Err(GroupError::NotAGroup(format!("column {i} repeats {c}")));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        for x in 0..n {
            if flat[x] != x || flat[x * n] != x {
                return Err(GroupError::NotAGroup("element 0 is not a two-sided identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(GroupError::NotAGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        let mut inverses = vec![0; n];
        for a in 0..n {
            // Latin square with identity: a unique right inverse exists
            let b = (0..n).find(|&b| flat[a * n + b] == 0).expect("latin square");
            if flat[b * n + a] != 0 {
                return Err(GroupError::NotAGroup(format!("element {a} has no two-sided inverse")));
            }
            inverses[a] = b;
        }
        Ok(FiniteGroup { order: n, table: flat, inverses, name })
    }

    fn from_fn(n: usize, name: String, mul: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup, GroupError> {
        let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        FiniteGroup::from_table(table, Some(name))
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1).expect("C1")
    }

    pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 {
            return Err(GroupError::NotAGroup("C0".into()));
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge { order: n });
        }
        FiniteGroup::from_fn(n, format!("C{n}"), |a, b| (a + b) % n)
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 {
            return Err(GroupError::NotAGroup("D0".into()));
        }
        if 2 * n > 32 {
            return Err(GroupError::TooLarge { order: 2 * n });
        }
        FiniteGroup::from_fn(2 * n, format!("D{n}"), |a, b| {
            let (ra, sa) = (a % n, a / n);
            let (rb, sb) = (b % n, b / n);
            let r = if sa == 0 { (ra + rb) % n } else { (ra + n - rb) % n };
            r + n * ((sa + sb) % 2)
        })
    }

    pub fn symmetric(k: usize) -> Result<FiniteGroup, GroupError> {
        if !(1..=4).contains(&k) {
            return Err(GroupError::UnknownName(format!("S{k}")));
        }
        let perms = permutations(k);
        let index: BTreeMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        FiniteGroup::from_fn(perms.len(), format!("S{k}"), |a, b| {
            let comp: Vec<usize> = (0..k).map(|i| perms[a][perms[b][i]]).collect();
            index[&comp]
        })
    }

    pub fn quaternion() -> FiniteGroup {
        // basis index 0..4 = 1, i, j, k; element 2*basis + sign
        const PROD: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        FiniteGroup::from_fn(8, "Q8".to_string(), |a, b| {
            let (ba, na) = (a / 2, a % 2 == 1);
            let (bb, nb) = (b / 2, b % 2 == 1);
            let (basis, neg) = PROD[ba][bb];
            2 * basis + usize::from(neg ^ na ^ nb)
        })
        .expect("Q8 table is a group")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
        let n = a.order * b.order;
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge { order: n });
        }
        let nb = b.order;
        FiniteGroup::from_fn(n, format!("{}x{}", a.label(), b.label()), |x, y| {
            a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
        })
    }

    /// Parses names such as `C6`, `D4`, `S3`, `Q8` and products `C2xC2`.
    pub fn named(name: &str) -> Result<FiniteGroup, GroupError> {
        let unknown = || GroupError::UnknownName(name.to_string());
        let parts: Vec<&str> = name.split('x').collect();
        if parts.len() > 1 {
            let mut acc = FiniteGroup::named(parts[0])?;
            for part in &parts[1..] {
                acc = FiniteGroup::direct_product(&acc, &FiniteGroup::named(part)?)?;
            }
            return Ok(acc);
        }
        if name == "Q8" {
            return Ok(FiniteGroup::quaternion());
        }
        let (head, tail) = name.split_at(name.len().min(1));
        let n: usize = tail.parse().map_err(|_| unknown())?;
        match head {
            "C" => FiniteGroup::cyclic(n),
            "D" => FiniteGroup::dihedral(n),
            "S" if n == 3 || n == 4 => FiniteGroup::symmetric(n),
            _ => Err(unknown()),
        }
    }

    pub fn build(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
        match spec {
            GroupSpec::Named(name) => FiniteGroup::named(name),
            GroupSpec::Table { table, name } => FiniteGroup::from_table(table.clone(), name.clone()),
            GroupSpec::Product(factors) => {
                let mut acc = FiniteGroup::trivial();
                let mut label: Option<String> = None;
                for f in factors {
                    let g = FiniteGroup::build(f)?;
                    label = Some(match label {
                        None => g.label(),
                        Some(l) => format!("{l}x{}", g.label()),
                    });
                    acc = FiniteGroup::direct_product(&acc, &g)?;
                }
                acc.name = label.or_else(|| Some("C1".into()));
                Ok(acc)
            }
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("G{}", self.order))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g h g^{-1}`
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    /// A small generating set, chosen greedily by element index.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut closure = 1u64;
        for x in 1..self.order {
            if closure & (1 << x) == 0 {
                gens.push(x);
                closure = close(self, closure | (1 << x));
            }
        }
        gens
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Closure of a set of elements (bitmask) under multiplication.
fn close(g: &FiniteGroup, mut mask: u64) -> u64 {
    mask |= 1;
    let mut queue: VecDeque<usize> = (0..g.order).filter(|&x| mask & (1 << x) != 0).collect();
    let mut members: Vec<usize> = queue.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        let snapshot = members.clone();
        for &y in &snapshot {
            for z in [g.mul(x, y), g.mul(y, x)] {
                if mask & (1 << z) == 0 {
                    mask |= 1 << z;
                    members.push(z);
                    queue.push_back(z);
                }
            }
        }
    }
    mask
}

fn mask_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask & (1u64 << i) != 0).collect()
}

/// A subgroup, stored as the sorted list of its elements.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup({:?} of {})", self.elements, self.parent.label())
    }
}

impl Subgroup {
    /// Checks closure, identity and Lagrange.
    pub fn new(parent: Arc<FiniteGroup>, elements: &[usize]) -> Result<Subgroup, GroupError> {
        let n = parent.order();
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&x| x >= n) {
            return Err(GroupError::NotASubgroup(format!("element {bad} out of range")));
        }
        if !set.contains(&0) {
            return Err(GroupError::NotASubgroup("missing identity".into()));
        }
        for &a in &set {
            if !set.contains(&parent.inv(a)) {
                return Err(GroupError::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &set {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(format!("{a}·{b} missing")));
                }
            }
        }
        assert_eq!(n % set.len(), 0, "Lagrange");
        Ok(Subgroup { parent, elements: set.into_iter().collect() })
    }

    pub fn whole(parent: Arc<FiniteGroup>) -> Subgroup {
        let elements = (0..parent.order()).collect();
        Subgroup { parent, elements }
    }

    pub fn trivial(parent: Arc<FiniteGroup>) -> Subgroup {
        Subgroup { parent, elements: vec![0] }
    }

    pub fn generated_by(parent: Arc<FiniteGroup>, gens: &[usize]) -> Result<Subgroup, GroupError> {
        let n = parent.order();
        if let Some(&bad) = gens.iter().find(|&&x| x >= n) {
            return Err(GroupError::NotASubgroup(format!("element {bad} out of range")));
        }
        let mask = close(&parent, gens.iter().fold(1u64, |m, &x| m | (1 << x)));
        Ok(Subgroup { elements: mask_elements(mask), parent })
    }

    fn from_mask(parent: &Arc<FiniteGroup>, mask: u64) -> Subgroup {
        Subgroup { parent: parent.clone(), elements: mask_elements(mask) }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements.iter().any(|&x| self.parent.element_order(x) == self.order())
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        (0..g.order()).all(|x| self.elements.iter().all(|&h| self.contains(g.conj(x, h))))
    }

    /// `x H x^{-1}`
    pub fn conjugate(&self, x: usize) -> Subgroup {
        let g = &self.parent;
        let mut elements: Vec<usize> = self.elements.iter().map(|&h| g.conj(x, h)).collect();
        elements.sort_unstable();
        Subgroup { parent: g.clone(), elements }
    }

    /// The subgroup as a group in its own right: element `i` is `elements()[i]`.
    /// Returns the group together with its inclusion into the parent.
    pub fn as_group(&self) -> (Arc<FiniteGroup>, GroupHom) {
        let pos: BTreeMap<usize, usize> = self.elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let table = self
            .elements
            .iter()
            .map(|&a| self.elements.iter().map(|&b| pos[&self.parent.mul(a, b)]).collect())
            .collect();
        let name = if self.is_whole() {
            self.parent.name.clone()
        } else {
            Some(format!("{}<{}", self.parent.label(), self.order()))
        };
        let sub = Arc::new(FiniteGroup::from_table(table, name).expect("subgroup table is a group"));
        let inclusion = GroupHom {
            source: sub.clone(),
            target: self.parent.clone(),
            images: self.elements.clone(),
        };
        (sub, inclusion)
    }
}

/// Every subgroup of `g`, each once, ordered by size and then by elements.
///
/// Enumeration is a breadth-first closure: starting from the trivial
/// subgroup, adjoin one element at a time. Every subgroup is reached because
/// it is the top of a chain `⟨x1⟩ ⊂ ⟨x1, x2⟩ ⊂ ...` of such steps.
pub fn subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let n = g.order();
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(1);
    queue.push_back(1u64);
    while let Some(mask) = queue.pop_front() {
        for x in 0..n {
            if mask & (1 << x) != 0 {
                continue;
            }
            let next = close(g, mask | (1 << x));
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen.into_iter().map(|m| Subgroup::from_mask(g, m)).collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    out
}

/// The cyclic subgroups `⟨x⟩`, deduplicated, in the same order as [`subgroups`].
pub fn cyclic_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let masks: BTreeSet<u64> = (0..g.order()).map(|x| close(g, 1 | (1 << x))).collect();
    let mut out: Vec<Subgroup> = masks.into_iter().map(|m| Subgroup::from_mask(g, m)).collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    out
}

pub fn normal_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    subgroups(g).into_iter().filter(Subgroup::is_normal).collect()
}

/// A group homomorphism, given by the images of all source elements.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({} -> {}: {:?})", self.source.label(), self.target.label(), self.images)
    }
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<usize>) -> Result<GroupHom, GroupError> {
        if images.len() != source.order() {
            return Err(GroupError::NotAHomomorphism("wrong number of images".into()));
        }
        if images.iter().any(|&y| y >= target.order()) {
            return Err(GroupError::NotAHomomorphism("image out of range".into()));
        }
        if images[0] != 0 {
            return Err(GroupError::NotAHomomorphism("identity not preserved".into()));
        }
        for x in 0..source.order() {
            for y in 0..source.order() {
                if images[source.mul(x, y)] != target.mul(images[x], images[y]) {
                    return Err(GroupError::NotAHomomorphism(format!("fails on ({x}, {y})")));
                }
            }
        }
        Ok(GroupHom { source, target, images })
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn kernel(&self) -> Subgroup {
        let elements = (0..self.source.order()).filter(|&x| self.images[x] == 0).collect();
        Subgroup { parent: self.source.clone(), elements }
    }

    pub fn compose(&self, after: &GroupHom) -> GroupHom {
        assert!(Arc::ptr_eq(&self.target, &after.source) || *self.target == *after.source);
        GroupHom {
            source: self.source.clone(),
            target: after.target.clone(),
            images: self.images.iter().map(|&y| after.images[y]).collect(),
        }
    }
}

/// `G/N` with its projection. Cosets are represented by their smallest
/// element index and numbered in increasing order of representative.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: Arc<FiniteGroup>,
    pub projection: GroupHom,
    pub representatives: Vec<usize>,
}

pub fn quotient(n: &Subgroup) -> Result<Quotient, GroupError> {
    if !n.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let g = n.parent().clone();
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut representatives = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let idx = representatives.len();
        representatives.push(x);
        for &h in n.elements() {
            coset_of[g.mul(x, h)] = idx;
        }
    }
    let k = representatives.len();
    let table = (0..k)
        .map(|a| (0..k).map(|b| coset_of[g.mul(representatives[a], representatives[b])]).collect())
        .collect();
    let name = format!("{}/{}", g.label(), n.order());
    let q = Arc::new(FiniteGroup::from_table(table, Some(name))?);
    let projection = GroupHom { source: g, target: q.clone(), images: coset_of };
    Ok(Quotient { group: q, projection, representatives })
}

/// For each `g`, the permutation `n ↦ g n g^{-1}` of `N`, in positions of `N.elements()`.
pub fn conjugation_action(n: &Subgroup) -> Result<Vec<Vec<usize>>, GroupError> {
    if !n.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let g = n.parent();
    Ok((0..g.order())
        .map(|x| {
            n.elements()
                .iter()
                .map(|&h| n.elements().binary_search(&g.conj(x, h)).expect("normal"))
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    /// Brute force: every subset that is closed under multiplication.
    fn brute_subgroups(g: &FiniteGroup) -> usize {
        let n = g.order();
        assert!(n <= 12);
        (0u64..(1 << n))
            .filter(|&m| m & 1 == 1)
            .filter(|&m| {
                let els = mask_elements(m);
                els.iter().all(|&a| els.iter().all(|&b| m & (1 << g.mul(a, b)) != 0))
            })
            .count()
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::named("C1").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(subgroups(&arc(g.clone())).len(), 1);
        assert_eq!(cyclic_subgroups(&arc(g)).len(), 1);
    }

    #[test]
    fn bad_table_rejected() {
        let err = FiniteGroup::from_table(vec![vec![0, 1], vec![0, 1]], None).unwrap_err();
        assert!(matches!(err, GroupError::NotAGroup(_)));
    }

    #[test]
    fn non_associative_latin_square_rejected() {
        // a loop of order 5 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(t, None), Err(GroupError::NotAGroup(_))));
    }

    #[test]
    fn subgroup_counts_match_brute_force() {
        for name in ["S3", "C4", "C6", "C2xC2", "D4", "Q8", "C8", "C2xC2xC2", "D5", "C2xC4"] {
            let g = FiniteGroup::named(name).unwrap();
            let brute = brute_subgroups(&g);
            assert_eq!(subgroups(&arc(g)).len(), brute, "{name}");
        }
    }

    #[test]
    fn s3_subgroups() {
        let g = arc(FiniteGroup::named("S3").unwrap());
        let subs = subgroups(&g);
        assert_eq!(subs.len(), 6);
        let orders: Vec<usize> = subs.iter().map(Subgroup::order).collect();
        assert_eq!(orders, [1, 2, 2, 2, 3, 6]);
        assert_eq!(subs.iter().filter(|h| h.order() == 3).count(), 1);
        let cyc = cyclic_subgroups(&g);
        assert_eq!(cyc.len(), 5);
        assert!(cyc.iter().all(|h| !h.is_whole()));
    }

    #[test]
    fn cyclic_groups_all_subgroups_cyclic() {
        let g = arc(FiniteGroup::cyclic(6).unwrap());
        assert_eq!(cyclic_subgroups(&g), subgroups(&g));
        assert_eq!(subgroups(&g).len(), 4);
        assert_eq!(subgroups(&arc(FiniteGroup::cyclic(4).unwrap())).len(), 3);
    }

    #[test]
    fn s3_normality_and_quotient() {
        let g = arc(FiniteGroup::named("S3").unwrap());
        let subs = subgroups(&g);
        let c3 = subs.iter().find(|h| h.order() == 3).unwrap();
        assert!(c3.is_normal());
        let q = quotient(c3).unwrap();
        assert_eq!(q.group.order(), 2);
        assert!(q.group.is_cyclic());
        for h in subs.iter().filter(|h| h.order() == 2) {
            assert!(!h.is_normal());
            assert_eq!(quotient(h).unwrap_err(), GroupError::NotNormal);
        }
        let whole = Subgroup::whole(g.clone());
        assert_eq!(quotient(&whole).unwrap().group.order(), 1);
    }

    #[test]
    fn transposition_inverts_c3() {
        let g = arc(FiniteGroup::named("S3").unwrap());
        let c3 = subgroups(&g).into_iter().find(|h| h.order() == 3).unwrap();
        let action = conjugation_action(&c3).unwrap();
        for x in 0..6 {
            let is_transposition = g.element_order(x) == 2;
            for (pos, &h) in c3.elements().iter().enumerate() {
                let image = c3.elements()[action[x][pos]];
                if is_transposition {
                    assert_eq!(image, g.inv(h));
                } else {
                    assert_eq!(image, h);
                }
            }
        }
    }

    #[test]
    fn abelian_conjugation_trivial() {
        let g = arc(FiniteGroup::named("C2xC4").unwrap());
        let whole = Subgroup::whole(g.clone());
        for perm in conjugation_action(&whole).unwrap() {
            assert!(perm.iter().enumerate().all(|(i, &j)| i == j));
        }
    }

    #[test]
    fn named_orderings() {
        let c5 = FiniteGroup::named("C5").unwrap();
        assert_eq!(c5.mul(2, 4), 1);
        let d4 = FiniteGroup::named("D4").unwrap();
        assert_eq!(d4.order(), 8);
        // s r s = r^{-1}
        assert_eq!(d4.mul(d4.mul(4, 1), 4), 3);
        let q8 = FiniteGroup::quaternion();
        // i*j = k, j*i = -k
        assert_eq!(q8.mul(2, 4), 6);
        assert_eq!(q8.mul(4, 2), 7);
        assert_eq!(q8.element_order(2), 4);
        let s4 = FiniteGroup::named("S4").unwrap();
        assert_eq!(s4.order(), 24);
        assert!(!s4.is_abelian());
        assert!(matches!(FiniteGroup::named("S5"), Err(GroupError::UnknownName(_))));
        assert!(matches!(FiniteGroup::named("C65"), Err(GroupError::TooLarge { .. })));
        assert!(matches!(FiniteGroup::named("D17"), Err(GroupError::TooLarge { .. })));
    }

    #[test]
    fn subgroups_closed_under_conjugation() {
        for name in ["S3", "D4", "Q8", "S4"] {
            let g = arc(FiniteGroup::named(name).unwrap());
            let subs = subgroups(&g);
            for h in &subs {
                for x in 0..g.order() {
                    assert!(subs.contains(&h.conjugate(x)), "{name}");
                }
            }
        }
    }

    #[test]
    fn quotient_orders_multiply() {
        for name in ["S4", "D4", "Q8", "C2xC2xC2", "D6"] {
            let g = arc(FiniteGroup::named(name).unwrap());
            for n in normal_subgroups(&g) {
                let q = quotient(&n).unwrap();
                assert_eq!(q.group.order() * n.order(), g.order(), "{name}");
                assert_eq!(q.projection.kernel(), n);
            }
        }
    }

    #[test]
    fn subgroup_as_group_roundtrip() {
        let g = arc(FiniteGroup::named("S4").unwrap());
        for h in subgroups(&g) {
            let (sub, inc) = h.as_group();
            assert_eq!(sub.order(), h.order());
            assert!(GroupHom::new(sub.clone(), g.clone(), inc.images().to_vec()).is_ok());
        }
    }

    #[test]
    fn generating_sets() {
        for name in ["S3", "Q8", "C2xC2xC2", "C8"] {
            let g = arc(FiniteGroup::named(name).unwrap());
            let gens = g.generators();
            assert!(Subgroup::generated_by(g.clone(), &gens).unwrap().is_whole());
        }
        assert_eq!(FiniteGroup::named("C2xC2xC2").unwrap().generators().len(), 3);
    }

    #[test]
    fn product_spec() {
        let spec = GroupSpec::Product(vec![GroupSpec::Named("C2".into()), GroupSpec::Named("C3".into())]);
        let g = FiniteGroup::build(&spec).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_cyclic());
        assert_eq!(g.name(), Some("C2xC3"));
    }
}
